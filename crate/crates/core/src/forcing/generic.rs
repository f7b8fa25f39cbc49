//! Filters and genericity over ε-models.

use std::collections::BTreeSet;

use crate::error::ForcingError;
use crate::forcing::poset::{OrderedModel, Poset, PosetView};
use crate::formula::{self, Assignment, Formula};
use crate::model::EpsilonModel;
use crate::term::SetTerm;

/// Which family of subsets a generic filter must meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenseKind {
    Dense,
    OpenDense,
    Predense,
    MaximalAntichain,
}

impl DenseKind {
    pub const ALL: [DenseKind; 4] = [
        DenseKind::Dense,
        DenseKind::OpenDense,
        DenseKind::Predense,
        DenseKind::MaximalAntichain,
    ];

    /// The formula `M` uses to recognise members of the family; free
    /// variables `d` and `p`.
    pub fn formula(self) -> Formula {
        match self {
            DenseKind::Dense => formula::dense_in("d", "p"),
            DenseKind::OpenDense => formula::open_dense_in("d", "p"),
            DenseKind::Predense => formula::predense_in("d", "p"),
            DenseKind::MaximalAntichain => formula::max_antichain_in("d", "p"),
        }
    }
}

/// `M`'s view of a poset: which conditions it has, and which of its
/// elements it believes are dense (or open dense, ...).
#[derive(Clone, Debug)]
pub struct GenericityContext {
    pub view: PosetView,
    /// Each family member as a set of condition indices (`D ∩ P ∩ M`).
    pub families: Vec<BTreeSet<usize>>,
    pub kind: DenseKind,
}

impl GenericityContext {
    pub fn new(m: &EpsilonModel, p: &Poset, kind: DenseKind) -> Result<Self, ForcingError> {
        let view = PosetView::new(m, p)?;
        let phi = kind.formula();
        let structure = OrderedModel { model: m, poset: p };
        let mut asg = Assignment::new();
        asg.insert("p".into(), p.term());
        let mut families = Vec::new();
        for d in m.elements() {
            asg.insert("d".into(), d.clone());
            if formula::eval_in(&phi, &structure, &asg)? {
                let idx: BTreeSet<usize> = m
                    .ext(d)
                    .iter()
                    .filter_map(|c| p.index_of(c))
                    .collect();
                families.push(idx);
            }
        }
        families.sort();
        families.dedup();
        Ok(GenericityContext { view, families, kind })
    }

    /// `G ∩ P ∩ M` is nonempty, upward closed and directed in `P ∩ M`.
    pub fn is_filter(&self, p: &Poset, g: &BTreeSet<usize>) -> bool {
        let gm: Vec<usize> = g.iter().copied().filter(|i| self.view.contains(*i)).collect();
        if gm.is_empty() {
            return false;
        }
        let upward = gm.iter().all(|i| {
            self.view
                .present
                .iter()
                .all(|j| !p.le(*i, *j) || gm.contains(j))
        });
        let directed = gm.iter().all(|i| {
            gm.iter()
                .all(|j| gm.iter().any(|r| p.le(*r, *i) && p.le(*r, *j)))
        });
        upward && directed
    }

    pub fn is_generic(&self, p: &Poset, g: &BTreeSet<usize>) -> bool {
        self.is_filter(p, g) && self.families.iter().all(|d| d.iter().any(|i| g.contains(i)))
    }

    /// The ⊆-maximal generic filters: `up(m)` for minimal `m`, canonically
    /// sorted, one per equivalence class.
    pub fn maximal_generics(&self, p: &Poset) -> Vec<BTreeSet<usize>> {
        let mut out: Vec<BTreeSet<usize>> = self
            .view
            .minimal(p)
            .into_iter()
            .map(|m| self.view.up(p, m))
            .collect();
        out.sort_by_key(|g| to_terms(p, g));
        out.dedup();
        out
    }
}

fn to_terms(p: &Poset, g: &BTreeSet<usize>) -> BTreeSet<SetTerm> {
    g.iter().map(|i| p.conditions()[*i].clone()).collect()
}

/// Condition indices of the conditions in `g` (other terms are dropped, since
/// genericity only looks at `G ∩ P`).
pub fn indices(p: &Poset, g: &BTreeSet<SetTerm>) -> BTreeSet<usize> {
    g.iter().filter_map(|t| p.index_of(t)).collect()
}

pub fn is_generic(
    g: &BTreeSet<SetTerm>,
    m: &EpsilonModel,
    p: &Poset,
) -> Result<bool, ForcingError> {
    let ctx = GenericityContext::new(m, p, DenseKind::Dense)?;
    Ok(ctx.is_generic(p, &indices(p, g)))
}

pub fn enumerate_generics(
    m: &EpsilonModel,
    p: &Poset,
) -> Result<Vec<BTreeSet<SetTerm>>, ForcingError> {
    let ctx = GenericityContext::new(m, p, DenseKind::Dense)?;
    Ok(ctx
        .maximal_generics(p)
        .iter()
        .map(|g| to_terms(p, g))
        .collect())
}

/// Every generic filter `G ⊆ P`, maximal or not (exponential in `|P|`).
pub fn all_generic_filters(
    m: &EpsilonModel,
    p: &Poset,
) -> Result<Vec<BTreeSet<SetTerm>>, ForcingError> {
    let ctx = GenericityContext::new(m, p, DenseKind::Dense)?;
    let n = p.len();
    Ok((0u64..(1 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|g| ctx.is_generic(p, g))
        .map(|g| to_terms(p, &g))
        .collect())
}
