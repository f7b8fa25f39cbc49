//! Finite ε-models and their structural predicates.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::formula::{self, Assignment};
use crate::term::SetTerm;

/// A finite set of terms regarded as the ε-structure `(M, ∈)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EpsilonModel {
    elements: Vec<SetTerm>,
}

impl EpsilonModel {
    pub fn new<I: IntoIterator<Item = SetTerm>>(elements: I) -> Self {
        let set: BTreeSet<SetTerm> = elements.into_iter().collect();
        EpsilonModel {
            elements: set.into_iter().collect(),
        }
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[SetTerm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: &SetTerm) -> bool {
        self.elements.binary_search(t).is_ok()
    }

    /// `ON ∩ M`, ascending.
    pub fn ordinals(&self) -> Vec<u32> {
        self.elements.iter().filter_map(SetTerm::as_ord).collect()
    }

    /// The model's view of `t`: `t ∩ M`.
    pub fn ext(&self, t: &SetTerm) -> Vec<SetTerm> {
        match t.node_elements() {
            Some(elems) => elems.iter().filter(|e| self.contains(e)).cloned().collect(),
            None => {
                let n = t.as_ord().unwrap_or(0);
                self.elements
                    .iter()
                    .take_while(|e| e.as_ord().is_some_and(|m| m < n))
                    .cloned()
                    .collect()
            }
        }
    }

    pub fn union(&self, other: &EpsilonModel) -> EpsilonModel {
        EpsilonModel::new(self.elements.iter().chain(other.elements.iter()).cloned())
    }

    pub fn is_subset(&self, other: &EpsilonModel) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// The carrier as a single set term (used when a model is an element of
    /// another model).
    pub fn to_term(&self) -> SetTerm {
        SetTerm::set(self.elements.iter().cloned())
    }

    /// Does `M` think `x` is an ordinal (transitive and `∈`-linear)?
    pub fn internally_ordinal(&self, x: &SetTerm) -> bool {
        let ext = self.ext(x);
        let transitive = ext
            .iter()
            .all(|y| self.ext(y).iter().all(|z| x.contains(z)));
        transitive
            && ext.iter().enumerate().all(|(i, y)| {
                ext[i + 1..]
                    .iter()
                    .all(|z| y.contains(z) || z.contains(y))
            })
    }

    /// Same as [`EpsilonModel::internally_ordinal`], via the formula evaluator.
    pub fn internally_ordinal_by_formula(&self, x: &SetTerm) -> bool {
        let mut a = Assignment::new();
        a.insert("x".into(), x.clone());
        formula::eval_formula(&formula::ordinal("x"), self, &a).unwrap_or(false)
    }

    /// `ON^M`: the elements `M` believes are ordinals.
    pub fn internal_ordinals(&self) -> Vec<SetTerm> {
        self.elements
            .iter()
            .filter(|x| self.internally_ordinal(x))
            .cloned()
            .collect()
    }

    /// Distinct elements have distinct extensions inside `M`.
    pub fn is_extensional(&self) -> bool {
        let mut seen = HashSet::new();
        self.elements.iter().all(|x| seen.insert(self.ext(x)))
    }

    /// Every member of every element is an element.
    pub fn is_transitive(&self) -> bool {
        self.elements
            .iter()
            .all(|x| x.members().iter().all(|y| self.contains(y)))
    }

    /// Ord-absoluteness with base segment `0..base` that must be present.
    ///
    /// The model must be extensional, contain `ord(0..base)`, and
    /// `ON^M = M ∩ ON`.
    pub fn ord_absolute_violation(&self, base: u32) -> Option<String> {
        if let Some(k) = (0..base).find(|k| !self.contains(&SetTerm::ord(*k))) {
            return Some(format!("base ordinal ord({k}) missing"));
        }
        if !self.is_extensional() {
            return Some("not extensional".into());
        }
        for x in &self.elements {
            let internal = self.internally_ordinal(x);
            if internal != x.is_ord() {
                return Some(if internal {
                    format!("{x} is an ordinal in M but not in V")
                } else {
                    format!("ordinal {x} is not an ordinal in M")
                });
            }
        }
        None
    }

    pub fn is_ord_absolute_with(&self, base: u32) -> bool {
        self.ord_absolute_violation(base).is_none()
    }

    pub fn is_ord_transitive_with(&self, base: u32) -> bool {
        self.is_ord_absolute_with(base) && self.is_closed_modulo_ordinals()
    }

    /// `x ∈ M ∖ ON` implies `x ⊆ M`.
    pub fn is_closed_modulo_ordinals(&self) -> bool {
        self.elements.iter().all(|x| {
            x.node_elements()
                .is_none_or(|e| e.iter().all(|y| self.contains(y)))
        })
    }

    /// "α is a successor" and "α = β + 1" are absolute between `M` and `V`
    /// for ordinals of `M`.
    pub fn is_successor_absolute(&self) -> bool {
        let ords: Vec<SetTerm> = self.elements.iter().filter(|t| t.is_ord()).cloned().collect();
        let succ = formula::successor_of("a", "b");
        let mut asg = Assignment::new();
        for a in &ords {
            let an = a.as_ord().unwrap_or(0);
            let mut internal_successor = false;
            for b in &ords {
                asg.insert("a".into(), a.clone());
                asg.insert("b".into(), b.clone());
                let inside = formula::eval_formula(&succ, self, &asg).unwrap_or(false);
                let outside = an == b.as_ord().unwrap_or(0) + 1;
                if inside != outside {
                    return false;
                }
                internal_successor |= inside && a.contains(b);
            }
            if internal_successor != (an > 0) {
                return false;
            }
        }
        true
    }
}

/// Ord-absolute with the default base segment (empty).
pub fn is_ord_absolute(m: &EpsilonModel) -> bool {
    m.is_ord_absolute_with(0)
}

pub fn is_ord_transitive(m: &EpsilonModel) -> bool {
    m.is_ord_transitive_with(0)
}

impl fmt::Display for EpsilonModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for EpsilonModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
