//! Generated forcing grounds: an ord-transitive model around a small poset,
//! with standard names for its ordinals and a few designated names.

use std::fmt;

use crate::collapse::ordclos_model;
use crate::forcing::names::{generic_name, std_name};
use crate::forcing::poset::{preorder_shapes, Poset};
use crate::model::EpsilonModel;
use crate::term::SetTerm;

/// The gappy ordinal added by [`FrameSpec::gappy`].
pub const GAP_ORDINAL: u32 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameSpec {
    /// A closed preorder matrix on the encoded conditions.
    pub matrix: Vec<Vec<bool>>,
    /// Put every dense subset of `P` into the model (otherwise only `P`).
    pub all_dense: bool,
    /// Add `ord(9)` with its standard name; the model then misses the
    /// ordinals between `|P|` and 9.
    pub gappy: bool,
    /// Add two-condition names `{(0̌, p), (1̌, q)}`.
    pub pair_names: bool,
}

/// A generated ground model.
#[derive(Clone, Debug)]
pub struct Frame {
    pub spec: FrameSpec,
    pub model: EpsilonModel,
    pub poset: Poset,
    /// Names singled out for formula batteries, in a fixed order.
    pub designated: Vec<SetTerm>,
}

impl fmt::Display for FrameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|b| if *b { '1' } else { '0' }).collect())
            .collect();
        write!(
            f,
            "shape[{}]{}{}{}",
            rows.join("/"),
            if self.all_dense { "+dense" } else { "" },
            if self.gappy { "+gap" } else { "" },
            if self.pair_names { "+pairs" } else { "" }
        )
    }
}

/// `{(0̌, p)}`: the name that is `{∅}` exactly when `p ∈ G`.
pub fn indicator_name(p: &SetTerm) -> SetTerm {
    SetTerm::singleton(SetTerm::pair(&SetTerm::empty(), p))
}

pub fn build_frame(spec: &FrameSpec) -> Frame {
    let poset = Poset::from_matrix(&spec.matrix);
    let n = poset.len() as u32;
    let mut ords: Vec<SetTerm> = (0..=n).map(SetTerm::ord).collect();
    if spec.gappy {
        ords.push(SetTerm::ord(GAP_ORDINAL));
    }
    let base = EpsilonModel::new(
        ords.iter()
            .cloned()
            .chain(poset.conditions().iter().cloned())
            .chain([poset.term()]),
    );
    let mut extra: Vec<SetTerm> = Vec::new();
    if spec.all_dense {
        let conds = poset.conditions();
        for mask in 1u64..(1 << conds.len()) {
            let d: Vec<usize> = (0..conds.len()).filter(|i| mask >> i & 1 == 1).collect();
            let dense = (0..conds.len()).all(|q| d.iter().any(|r| poset.le(*r, q)));
            if dense {
                extra.push(SetTerm::set(d.iter().map(|i| conds[*i].clone())));
            }
        }
    }
    let mut designated: Vec<SetTerm> = Vec::new();
    for c in poset.conditions() {
        designated.push(indicator_name(c));
    }
    designated.push(generic_name(&base, &poset));
    if spec.gappy {
        designated.push(std_name(&SetTerm::ord(GAP_ORDINAL), &base, &poset));
    }
    designated.push(std_name(&SetTerm::ord(n), &base, &poset));
    if spec.pair_names {
        let conds = poset.conditions();
        let one = std_name(&SetTerm::ord(1), &base, &poset);
        for (i, p) in conds.iter().enumerate() {
            for q in &conds[i + 1..] {
                designated.push(SetTerm::set([
                    SetTerm::pair(&SetTerm::ord(0), p),
                    SetTerm::pair(&one, q),
                ]));
            }
        }
    }
    // Every ordinal of M gets its standard name.
    for o in &ords {
        extra.push(std_name(o, &base, &poset));
    }
    let model = ordclos_model(&EpsilonModel::new(
        base.elements()
            .iter()
            .cloned()
            .chain(extra)
            .chain(designated.iter().cloned()),
    ));
    Frame {
        spec: spec.clone(),
        model,
        poset,
        designated,
    }
}

/// Every preorder shape on `1..=max_points` points with every combination of
/// the frame options.
pub fn all_frame_specs(max_points: usize) -> Vec<FrameSpec> {
    let mut out = Vec::new();
    for n in 1..=max_points {
        for matrix in preorder_shapes(n) {
            for all_dense in [false, true] {
                for gappy in [false, true] {
                    for pair_names in [false, true] {
                        if pair_names && n < 2 {
                            continue;
                        }
                        out.push(FrameSpec {
                            matrix: matrix.clone(),
                            all_dense,
                            gappy,
                            pair_names,
                        });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::extension::ForcingFrame;

    #[test]
    fn frames_are_ord_transitive_grounds() {
        for spec in all_frame_specs(3) {
            let f = build_frame(&spec);
            assert!(f.model.is_ord_transitive_with(0), "{spec}: {}", f.model);
            let frame = ForcingFrame::new(f.model.clone(), f.poset.clone());
            assert!(frame.is_ok(), "{spec}: {:?}", frame.err());
        }
    }

    #[test]
    fn forcing_theorem_on_small_frames() {
        for spec in all_frame_specs(3) {
            let f = build_frame(&spec);
            let frame = ForcingFrame::new(f.model.clone(), f.poset.clone()).unwrap();
            for e in crate::forcing::theorem::check_forcing_theorem(&frame, &f.designated, &spec.to_string()) {
                assert!(e.holds, "{e:?}");
            }
        }
    }
}
