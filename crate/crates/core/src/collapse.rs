//! Ord-collapse, transitive collapse, labeled models, and `ordclos`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::KernelError;
use crate::model::EpsilonModel;
use crate::term::SetTerm;

/// A collapsing map together with its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    pub image: EpsilonModel,
    pub map: BTreeMap<SetTerm, SetTerm>,
}

impl Collapse {
    pub fn apply(&self, t: &SetTerm) -> Option<&SetTerm> {
        self.map.get(t)
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }

    pub fn is_injective(&self) -> bool {
        let values: BTreeSet<&SetTerm> = self.map.values().collect();
        values.len() == self.map.len()
    }
}

fn collapse_with(m: &EpsilonModel, fix_ordinals: bool) -> Collapse {
    fn go(
        t: &SetTerm,
        m: &EpsilonModel,
        fix: bool,
        memo: &mut HashMap<SetTerm, SetTerm>,
    ) -> SetTerm {
        if let Some(v) = memo.get(t) {
            return v.clone();
        }
        let v = if fix && t.is_ord() {
            t.clone()
        } else {
            let inner: Vec<SetTerm> = m.ext(t).iter().map(|s| go(s, m, fix, memo)).collect();
            SetTerm::set(inner)
        };
        memo.insert(t.clone(), v.clone());
        v
    }
    let mut memo = HashMap::new();
    let map: BTreeMap<SetTerm, SetTerm> = m
        .elements()
        .iter()
        .map(|t| (t.clone(), go(t, m, fix_ordinals, &mut memo)))
        .collect();
    Collapse {
        image: EpsilonModel::new(map.values().cloned()),
        map,
    }
}

/// The transitive collapse of `M` that fixes ordinals:
/// `i(α) = α`, `i(x) = {i(t) : t ∈ x ∩ M}`.
pub fn ord_collapse(m: &EpsilonModel) -> Result<Collapse, KernelError> {
    if let Some(why) = m.ord_absolute_violation(0) {
        return Err(KernelError::NotOrdAbsolute(why));
    }
    Ok(collapse_with(m, true))
}

/// The Mostowski collapse `j(t) = {j(s) : s ∈ t ∩ M}`, ordinals included.
pub fn transitive_collapse(m: &EpsilonModel) -> Collapse {
    collapse_with(m, false)
}

/// A transitive model together with a strictly monotone relabeling of its
/// ordinals.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledModel {
    carrier: EpsilonModel,
    label: BTreeMap<u32, u32>,
}

impl LabeledModel {
    /// Validates: carrier transitive, label defined exactly on the carrier's
    /// ordinals, strictly monotone, and the identity below `base`.
    pub fn new(
        carrier: EpsilonModel,
        label: BTreeMap<u32, u32>,
        base: u32,
    ) -> Result<Self, KernelError> {
        if !carrier.is_transitive() {
            return Err(KernelError::InvalidLabeledModel("carrier is not transitive".into()));
        }
        let ords = carrier.ordinals();
        if ords != label.keys().copied().collect::<Vec<_>>() {
            return Err(KernelError::InvalidLabeledModel(
                "label domain differs from the carrier's ordinals".into(),
            ));
        }
        if label.values().zip(label.values().skip(1)).any(|(a, b)| a >= b) {
            return Err(KernelError::InvalidLabeledModel("label is not strictly monotone".into()));
        }
        if let Some((k, v)) = label.iter().find(|(k, v)| **k < base && k != v) {
            return Err(KernelError::InvalidLabeledModel(format!(
                "label moves base ordinal {k} to {v}"
            )));
        }
        Ok(LabeledModel { carrier, label })
    }

    pub fn carrier(&self) -> &EpsilonModel {
        &self.carrier
    }

    pub fn label(&self) -> &BTreeMap<u32, u32> {
        &self.label
    }

    /// Does the label satisfy `f(α+1) = f(α)+1` (the labeled form of
    /// successor-absoluteness)? Finite ordinals have no limits to check.
    pub fn is_successor_preserving(&self) -> bool {
        self.label.iter().all(|(k, v)| match self.label.get(&(k + 1)) {
            Some(next) => *next == v + 1,
            None => true,
        }) && self.label.get(&0).is_none_or(|v| *v == 0)
    }
}

impl fmt::Display for LabeledModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, [", self.carrier)?;
        for (i, (k, v)) in self.label.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}->{v}")?;
        }
        f.write_str("])")
    }
}

impl fmt::Debug for LabeledModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Transitive collapse of an ord-transitive model, with the inverse of the
/// collapse on ordinals as the label.
pub fn labeled_collapse(m: &EpsilonModel, base: u32) -> Result<LabeledModel, KernelError> {
    if !m.is_ord_transitive_with(base) {
        let why = m
            .ord_absolute_violation(base)
            .unwrap_or_else(|| "a non-ordinal element has members outside the model".into());
        return Err(KernelError::NotOrdTransitive(why));
    }
    let j = transitive_collapse(m);
    let mut label = BTreeMap::new();
    for (src, dst) in &j.map {
        if let (Some(n), Some(k)) = (src.as_ord(), dst.as_ord()) {
            label.insert(k, n);
        }
    }
    LabeledModel::new(j.image, label, base)
}

/// `i(α) = f(α)`, `i(x) = {i(y) : y ∈ x}`; returns the image `i[M]`.
pub fn uncollapse(l: &LabeledModel) -> EpsilonModel {
    uncollapse_map(l).image
}

/// [`uncollapse`] with the map itself.
pub fn uncollapse_map(l: &LabeledModel) -> Collapse {
    fn go(t: &SetTerm, l: &LabeledModel, memo: &mut HashMap<SetTerm, SetTerm>) -> SetTerm {
        if let Some(v) = memo.get(t) {
            return v.clone();
        }
        let v = match t.as_ord() {
            Some(k) => SetTerm::ord(l.label.get(&k).copied().unwrap_or(k)),
            None => SetTerm::set(t.members().iter().map(|y| go(y, l, memo)).collect::<Vec<_>>()),
        };
        memo.insert(t.clone(), v.clone());
        v
    }
    let mut memo = HashMap::new();
    let map: BTreeMap<SetTerm, SetTerm> = l
        .carrier
        .elements()
        .iter()
        .map(|t| (t.clone(), go(t, l, &mut memo)))
        .collect();
    Collapse {
        image: EpsilonModel::new(map.values().cloned()),
        map,
    }
}

/// `ordclos(x) = x ∪ ⋃{ordclos(t) : t ∈ x ∖ ON}`; ordinals are atoms, so
/// `ordclos(α) = ∅`.
pub fn ordclos(x: &SetTerm) -> BTreeSet<SetTerm> {
    let mut out = BTreeSet::new();
    if x.is_ord() {
        return out;
    }
    let mut stack = vec![x.clone()];
    while let Some(t) = stack.pop() {
        for e in t.node_elements().unwrap_or(&[]) {
            if out.insert(e.clone()) && !e.is_ord() {
                stack.push(e.clone());
            }
        }
    }
    out
}

/// `ordclos` applied to a carrier: `M ∪ ⋃{ordclos(t) : t ∈ M ∖ ON}`.
pub fn ordclos_model(m: &EpsilonModel) -> EpsilonModel {
    EpsilonModel::new(
        m.elements()
            .iter()
            .cloned()
            .chain(m.elements().iter().flat_map(ordclos)),
    )
}

/// Finite stand-in for `x ∈ hco(α)`: `rank(x) < α` and
/// `|ordclos(x)| ≤ bound`.
pub fn hco_check(x: &SetTerm, alpha: u32, bound: usize) -> bool {
    x.rank() < alpha && ordclos(x).len() <= bound
}
