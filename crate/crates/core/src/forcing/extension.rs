//! Forcing extensions `M[G]` of ord-transitive models.
//!
//! The forcing relation is computed through the transitive collapse: for a
//! condition `p`, `M ⊨ p ⊩ φ(τ)` holds iff `M'[H'] ⊨ φ(j(τ)[H'])` for every
//! maximal generic `H ∋ p`, where `j : M → M'` is the collapse, `H' = j[H]`
//! and evaluation in the transitive `M'` is the classical one. The modified
//! evaluation `τ[G]^M` is then computed by its own recursion and compared
//! against pulling `j(τ)[G']` back through the labeled model `(M'[G'], f')`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::collapse::{labeled_collapse, transitive_collapse, uncollapse_map, Collapse, LabeledModel};
use crate::error::{ForcingError, KernelError};
use crate::forcing::generic::{indices, DenseKind, GenericityContext};
use crate::forcing::names::{eval_name_v, is_name_in};
use crate::forcing::poset::Poset;
use crate::formula::{eval_formula, Assignment, Formula};
use crate::model::EpsilonModel;
use crate::term::SetTerm;

/// `M'[G']` and the map back to `M[G]`, for one generic filter.
#[derive(Clone, Debug)]
pub struct CollapsedExtension {
    /// `G ∩ P ∩ M` as condition indices.
    pub generic: BTreeSet<usize>,
    pub g_prime: BTreeSet<SetTerm>,
    /// `τ ↦ j(τ)[G']` for every name `τ` of `M`.
    pub values: HashMap<SetTerm, SetTerm>,
    /// `M'[G']`, a transitive model.
    pub model: EpsilonModel,
    /// `(M'[G'], f')` with `f'` the label of `M`.
    pub labeled: LabeledModel,
    /// The uncollapse `I : M'[G'] → M[G]`.
    pub pullback: Collapse,
}

/// An ord-transitive model with a poset in it and everything needed to force
/// over it.
#[derive(Clone, Debug)]
pub struct ForcingFrame {
    model: EpsilonModel,
    poset: Poset,
    genericity: GenericityContext,
    collapse: Collapse,
    inverse: HashMap<SetTerm, SetTerm>,
    label: BTreeMap<u32, u32>,
    names: Vec<SetTerm>,
    extensions: Vec<CollapsedExtension>,
}

impl ForcingFrame {
    /// Fails if `M` is not ord-transitive, `P ∉ M`, or some `M'[G']` has an
    /// ordinal outside `M'` (then `M` is too small to be a forcing ground;
    /// see [`ForcingError::Inadequate`]).
    pub fn new(model: EpsilonModel, poset: Poset) -> Result<Self, ForcingError> {
        if !model.is_ord_transitive_with(0) {
            let why = model
                .ord_absolute_violation(0)
                .unwrap_or_else(|| "a non-ordinal element has members outside the model".into());
            return Err(KernelError::NotOrdTransitive(why).into());
        }
        let genericity = GenericityContext::new(&model, &poset, DenseKind::Dense)?;
        let labeled = labeled_collapse(&model, 0)?;
        let collapse = transitive_collapse(&model);
        let inverse = collapse.map.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        let names = model
            .elements()
            .iter()
            .filter(|t| is_name_in(&model, t, &poset))
            .cloned()
            .collect();
        let mut frame = ForcingFrame {
            model,
            poset,
            genericity,
            collapse,
            inverse,
            label: labeled.label().clone(),
            names,
            extensions: Vec::new(),
        };
        let generics = frame.genericity.maximal_generics(&frame.poset);
        frame.extensions = generics
            .into_iter()
            .map(|g| frame.build_extension(g))
            .collect::<Result<_, _>>()?;
        Ok(frame)
    }

    pub fn model(&self) -> &EpsilonModel {
        &self.model
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn genericity(&self) -> &GenericityContext {
        &self.genericity
    }

    /// The elements `M` thinks are P-names, in canonical order.
    pub fn names(&self) -> &[SetTerm] {
        &self.names
    }

    pub fn is_name(&self, t: &SetTerm) -> bool {
        self.names.binary_search(t).is_ok()
    }

    /// `j`, the transitive collapse of `M`.
    pub fn collapse(&self) -> &Collapse {
        &self.collapse
    }

    /// The label `f'` of `M`.
    pub fn label(&self) -> &BTreeMap<u32, u32> {
        &self.label
    }

    /// One entry per maximal generic filter, in canonical order.
    pub fn extensions(&self) -> &[CollapsedExtension] {
        &self.extensions
    }

    pub fn generic_terms(&self, g: &BTreeSet<usize>) -> BTreeSet<SetTerm> {
        g.iter().map(|i| self.poset.conditions()[*i].clone()).collect()
    }

    /// The maximal generic filters as sets of conditions.
    pub fn generics(&self) -> Vec<BTreeSet<SetTerm>> {
        self.extensions.iter().map(|e| self.generic_terms(&e.generic)).collect()
    }

    fn j(&self, t: &SetTerm) -> SetTerm {
        self.collapse.map[t].clone()
    }

    fn build_extension(&self, generic: BTreeSet<usize>) -> Result<CollapsedExtension, ForcingError> {
        let g_prime: BTreeSet<SetTerm> = generic
            .iter()
            .map(|i| self.j(&self.poset.conditions()[*i]))
            .collect();
        let values: HashMap<SetTerm, SetTerm> = self
            .names
            .iter()
            .map(|t| (t.clone(), eval_name_v(&self.j(t), &g_prime)))
            .collect();
        let model = EpsilonModel::new(values.values().cloned());
        let mut label = BTreeMap::new();
        for k in model.ordinals() {
            match self.label.get(&k) {
                Some(v) => {
                    label.insert(k, *v);
                }
                None => {
                    return Err(ForcingError::Inadequate(format!(
                        "a name evaluates to ord({k}), which the collapse of M does not contain"
                    )))
                }
            }
        }
        let labeled = LabeledModel::new(model.clone(), label, 0)?;
        let pullback = uncollapse_map(&labeled);
        Ok(CollapsedExtension {
            generic,
            g_prime,
            values,
            model,
            labeled,
            pullback,
        })
    }

    /// The collapsed extension for an arbitrary generic `G` (maximal ones
    /// are cached).
    pub fn extension_for(&self, g: &BTreeSet<SetTerm>) -> Result<CollapsedExtension, ForcingError> {
        let idx = self.generic_indices(g)?;
        match self.extensions.iter().find(|e| e.generic == idx) {
            Some(e) => Ok(e.clone()),
            None => self.build_extension(idx),
        }
    }

    /// `G ∩ P ∩ M` as indices, after checking genericity.
    pub fn generic_indices(&self, g: &BTreeSet<SetTerm>) -> Result<BTreeSet<usize>, ForcingError> {
        let idx: BTreeSet<usize> = indices(&self.poset, g)
            .into_iter()
            .filter(|i| self.genericity.view.contains(*i))
            .collect();
        if !self.genericity.is_generic(&self.poset, &idx) {
            return Err(ForcingError::NotGeneric);
        }
        Ok(idx)
    }

    fn condition_index(&self, p: &SetTerm) -> Result<usize, ForcingError> {
        self.poset
            .index_of(p)
            .filter(|i| self.genericity.view.contains(*i))
            .ok_or_else(|| ForcingError::InvalidPoset(format!("{p} is not a condition in M")))
    }

    fn check_name(&self, t: &SetTerm) -> Result<(), ForcingError> {
        if self.is_name(t) {
            Ok(())
        } else {
            Err(ForcingError::NotAName(t.to_string()))
        }
    }

    /// `M ⊨ p ⊩ φ(τ̄)`; `names` assigns a name of `M` to every free variable.
    pub fn forces(
        &self,
        p: &SetTerm,
        phi: &Formula,
        names: &Assignment,
    ) -> Result<bool, ForcingError> {
        let pi = self.condition_index(p)?;
        for t in names.values() {
            self.check_name(t)?;
        }
        for ext in self.extensions.iter().filter(|e| e.generic.contains(&pi)) {
            let asg: Assignment = names
                .iter()
                .map(|(k, t)| (k.clone(), ext.values[t].clone()))
                .collect();
            if !eval_formula(phi, &ext.model, &asg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The `x ∈ M` with `M ⊨ p ⊩ τ = x̌`, if any. It is unique because the
    /// collapse is injective.
    pub fn forced_value(&self, p: usize, tau: &SetTerm) -> Option<SetTerm> {
        let mut vals = self
            .extensions
            .iter()
            .filter(|e| e.generic.contains(&p))
            .map(|e| &e.values[tau]);
        let first = vals.next()?;
        if vals.all(|v| v == first) {
            self.inverse.get(first).cloned()
        } else {
            None
        }
    }

    /// `τ[G]^M` by the two-clause recursion.
    pub fn eval_name_m(&self, tau: &SetTerm, g: &BTreeSet<SetTerm>) -> Result<SetTerm, ForcingError> {
        let idx = self.generic_indices(g)?;
        self.check_name(tau)?;
        let mut memo = HashMap::new();
        Ok(self.eval_rec(tau, &idx, &mut memo))
    }

    fn eval_rec(
        &self,
        tau: &SetTerm,
        g: &BTreeSet<usize>,
        memo: &mut HashMap<SetTerm, SetTerm>,
    ) -> SetTerm {
        if let Some(v) = memo.get(tau) {
            return v.clone();
        }
        let forced = g
            .iter()
            .filter_map(|p| self.forced_value(*p, tau))
            .min();
        let v = match forced {
            Some(x) => x,
            None => {
                let mut out = Vec::new();
                for e in self.model.ext(tau) {
                    if let Some((sigma, c)) = e.as_pair() {
                        if self.poset.index_of(&c).is_some_and(|i| g.contains(&i)) {
                            out.push(self.eval_rec(&sigma, g, memo));
                        }
                    }
                }
                SetTerm::set(out)
            }
        };
        memo.insert(tau.clone(), v.clone());
        v
    }

    /// `I(j(τ)[G'])`: the value read off the labeled model `(M'[G'], f')`.
    pub fn eval_name_collapse(
        &self,
        tau: &SetTerm,
        g: &BTreeSet<SetTerm>,
    ) -> Result<SetTerm, ForcingError> {
        self.check_name(tau)?;
        let ext = self.extension_for(g)?;
        Ok(ext.pullback.map[&ext.values[tau]].clone())
    }

    /// `M[G] = {τ[G]^M : τ a name in M}`.
    pub fn extend(&self, g: &BTreeSet<SetTerm>) -> Result<EpsilonModel, ForcingError> {
        let idx = self.generic_indices(g)?;
        let mut memo = HashMap::new();
        Ok(EpsilonModel::new(
            self.names.iter().map(|t| self.eval_rec(t, &idx, &mut memo)),
        ))
    }

    /// All values `τ[G]^M`, keyed by name.
    pub fn values(&self, g: &BTreeSet<SetTerm>) -> Result<BTreeMap<SetTerm, SetTerm>, ForcingError> {
        let idx = self.generic_indices(g)?;
        let mut memo = HashMap::new();
        Ok(self
            .names
            .iter()
            .map(|t| (t.clone(), self.eval_rec(t, &idx, &mut memo)))
            .collect())
    }
}

/// `M ⊨ p ⊩ φ(τ̄)`.
pub fn forces_semantic(
    m: &EpsilonModel,
    p: &Poset,
    cond: &SetTerm,
    phi: &Formula,
    names: &Assignment,
) -> Result<bool, ForcingError> {
    ForcingFrame::new(m.clone(), p.clone())?.forces(cond, phi, names)
}

/// `τ[G]^M`.
pub fn eval_name_m(
    tau: &SetTerm,
    g: &BTreeSet<SetTerm>,
    m: &EpsilonModel,
    p: &Poset,
) -> Result<SetTerm, ForcingError> {
    ForcingFrame::new(m.clone(), p.clone())?.eval_name_m(tau, g)
}

/// `M[G]`.
pub fn extend_model(
    m: &EpsilonModel,
    p: &Poset,
    g: &BTreeSet<SetTerm>,
) -> Result<EpsilonModel, ForcingError> {
    ForcingFrame::new(m.clone(), p.clone())?.extend(g)
}
