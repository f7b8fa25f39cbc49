//! Genericity under ord-collapse, absoluteness of the evaluation, and
//! witness searches.

use std::collections::BTreeSet;

use crate::collapse::{ord_collapse, ordclos};
use crate::error::{ForcingError, KernelError};
use crate::forcing::extension::ForcingFrame;
use crate::forcing::generic::is_generic;
use crate::forcing::names::{eval_name_v, std_name};
use crate::forcing::poset::{condition_term, OrderedModel, Poset, PosetView};
use crate::formula::{self, Assignment};
use crate::model::EpsilonModel;
use crate::term::SetTerm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferOutcome {
    /// `G` is `N`-generic.
    pub generic: bool,
    /// `i[G]` is `i[N]`-generic for the ord-collapse `i`.
    pub image_generic: bool,
    /// `i(p) = p` for every condition `p ∈ N` with `ordclos(p) ⊆ N`.
    pub identity_on_closed: bool,
}

/// Compares genericity over an ord-absolute `N` with genericity of the image
/// over the ord-collapse of `N`.
pub fn genericity_transfer(
    n: &EpsilonModel,
    p: &Poset,
    g: &BTreeSet<SetTerm>,
) -> Result<TransferOutcome, ForcingError> {
    let view = PosetView::new(n, p)?;
    let i = ord_collapse(n)?;
    let small = p.restrict(&view.present);
    let image_poset = small.map_terms(|t| i.map[t].clone())?;
    let image_g: BTreeSet<SetTerm> = g
        .iter()
        .filter(|x| n.contains(x))
        .map(|x| i.map[x].clone())
        .collect();
    let identity_on_closed = view.present.iter().all(|k| {
        let c = &p.conditions()[*k];
        !ordclos(c).iter().all(|t| n.contains(t)) || &i.map[c] == c
    });
    Ok(TransferOutcome {
        generic: is_generic(g, n, p)?,
        image_generic: is_generic(&image_g, &i.image, &image_poset)?,
        identity_on_closed,
    })
}

/// A quantity computed inside `N` and in `V`.
pub type Both<T> = (T, T);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsolutenessOutcome {
    pub ord_transitive: Both<bool>,
    pub generic: Both<bool>,
    /// `τ[G]^M`, when both computations consider `M` ord-transitive and `G`
    /// generic.
    pub value: Option<Both<SetTerm>>,
}

impl AbsolutenessOutcome {
    pub fn agrees(&self) -> bool {
        self.ord_transitive.0 == self.ord_transitive.1
            && self.generic.0 == self.generic.1
            && self.value.as_ref().is_none_or(|(a, b)| a == b)
    }
}

/// `M` is ord-transitive as judged by `N`: ordinals are `N`'s ordinals and
/// `x ⊆ M` means `x ∩ N ⊆ M`.
fn ord_transitive_inside(n: &EpsilonModel, m: &EpsilonModel) -> bool {
    m.is_extensional()
        && m.elements().iter().all(|x| {
            let n_ord = n.internally_ordinal(x);
            m.internally_ordinal(x) == n_ord && (n_ord || n.ext(x).iter().all(|y| m.contains(y)))
        })
}

/// Computes ord-transitivity of `M`, genericity of `G` and `τ[G]^M` once
/// inside `N` (seeing `M` as `M_term ∩ N`, `G` as `G_term ∩ N`) and once in
/// `V`.
pub fn eval_absoluteness_check(
    n: &EpsilonModel,
    m: &EpsilonModel,
    p: &Poset,
    g: &BTreeSet<SetTerm>,
    tau: &SetTerm,
) -> Result<AbsolutenessOutcome, ForcingError> {
    let m_term = m.to_term();
    let g_term = SetTerm::set(g.iter().cloned());
    if !n.contains(&m_term) {
        return Err(ForcingError::InvalidPoset("M is not an element of N".into()));
    }
    if !n.contains(&g_term) {
        return Err(ForcingError::InvalidPoset("G is not an element of N".into()));
    }
    let m_n = EpsilonModel::new(n.ext(&m_term));
    let g_n: BTreeSet<SetTerm> = n.ext(&g_term).into_iter().collect();
    let ord_transitive = (ord_transitive_inside(n, &m_n), m.is_ord_transitive_with(0));
    let generic = (is_generic(&g_n, &m_n, p)?, is_generic(g, m, p)?);
    let value = if ord_transitive.0 && ord_transitive.1 && generic.0 && generic.1 {
        let inside = ForcingFrame::new(m_n, p.clone())?.eval_name_m(tau, &g_n)?;
        let outside = ForcingFrame::new(m.clone(), p.clone())?.eval_name_m(tau, g)?;
        Some((inside, outside))
    } else {
        None
    };
    Ok(AbsolutenessOutcome {
        ord_transitive,
        generic,
        value,
    })
}

/// A name `τ ∈ M` and `x0 ≠ x1` with `p0 ⊩ τ = x̌0` and `p1 ⊩ τ = x̌1`.
pub fn incompatibility_witness(
    frame: &ForcingFrame,
    p0: &SetTerm,
    p1: &SetTerm,
) -> Option<(SetTerm, SetTerm, SetTerm)> {
    let (i0, i1) = (frame.poset().index_of(p0)?, frame.poset().index_of(p1)?);
    frame.names().iter().find_map(|tau| {
        let x0 = frame.forced_value(i0, tau)?;
        let x1 = frame.forced_value(i1, tau)?;
        (x0 != x1).then(|| (tau.clone(), x0, x1))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    /// The element whose standard name (in the sense of `M`) is evaluated.
    pub x: SetTerm,
    pub name: SetTerm,
    pub generic: BTreeSet<SetTerm>,
    pub modified: SetTerm,
    pub classical: SetTerm,
}

/// A standard name in `M` whose modified and classical evaluations differ.
pub fn divergence_witness(frame: &ForcingFrame) -> Option<Divergence> {
    let m = frame.model();
    for x in m.elements() {
        let name = std_name(x, m, frame.poset());
        if !frame.is_name(&name) {
            continue;
        }
        for g in frame.generics() {
            let modified = frame.eval_name_m(&name, &g).ok()?;
            let classical = eval_name_v(&name, &g);
            if modified != classical {
                return Some(Divergence {
                    x: x.clone(),
                    name,
                    generic: g,
                    modified,
                    classical,
                });
            }
        }
    }
    None
}

/// `τ[G]^{M1}` and `τ[G]^{M2}` for the same `τ`, `G`.
pub fn model_dependence(
    m1: &EpsilonModel,
    m2: &EpsilonModel,
    p: &Poset,
    tau: &SetTerm,
    g: &BTreeSet<SetTerm>,
) -> Result<Both<SetTerm>, ForcingError> {
    let a = ForcingFrame::new(m1.clone(), p.clone())?.eval_name_m(tau, g)?;
    let b = ForcingFrame::new(m2.clone(), p.clone())?.eval_name_m(tau, g)?;
    Ok((a, b))
}

#[derive(Clone, Debug)]
pub struct AntichainShowcase {
    pub small: EpsilonModel,
    pub large: EpsilonModel,
    pub poset: Poset,
    pub antichain: SetTerm,
    /// `small ⊨ "A is a maximal antichain in P"`.
    pub maximal_in_small: bool,
    pub maximal_in_large: bool,
}

/// A fan with three incompatible leaves `c1, c2, c3` below `c0`, and
/// `A = {c1, c2}`. The small model lacks `c3` and believes `A` is maximal;
/// the ord-transitive supermodel sees `c3`.
pub fn antichain_showcase() -> Result<AntichainShowcase, ForcingError> {
    let mut matrix = vec![vec![false; 4]; 4];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = true;
        row[0] = true;
    }
    let poset = Poset::from_matrix(&matrix);
    let antichain = SetTerm::set([condition_term(1), condition_term(2)]);
    let small = EpsilonModel::new(
        (0..=4)
            .map(SetTerm::ord)
            .chain((0..3).map(condition_term))
            .chain([antichain.clone(), poset.term()]),
    );
    let large = small.union(&EpsilonModel::new([condition_term(3)]));
    if !large.is_ord_transitive_with(0) {
        return Err(KernelError::NotOrdTransitive("showcase supermodel".into()).into());
    }
    let phi = formula::max_antichain_in("d", "p");
    let asg = Assignment::from([("d".to_string(), antichain.clone()), ("p".to_string(), poset.term())]);
    let judge = |m: &EpsilonModel| {
        formula::eval_in(&phi, &OrderedModel { model: m, poset: &poset }, &asg)
    };
    Ok(AntichainShowcase {
        maximal_in_small: judge(&small)?,
        maximal_in_large: judge(&large)?,
        small,
        large,
        poset,
        antichain,
    })
}
