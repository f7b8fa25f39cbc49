//! Finite preorders whose conditions are set terms.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::ForcingError;
use crate::formula::Structure;
use crate::model::EpsilonModel;
use crate::term::SetTerm;

/// A finite preorder. `le[i][j]` means `conditions[i] ≤ conditions[j]`
/// (i is stronger).
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    conditions: Vec<SetTerm>,
    le: Vec<Vec<bool>>,
    top: Option<usize>,
}

/// The default encoding of the `i`-th abstract condition: `{ord(i+1)}`.
pub fn condition_term(i: usize) -> SetTerm {
    SetTerm::singleton(SetTerm::ord(i as u32 + 1))
}

impl Poset {
    /// Builds the reflexive-transitive closure of `relation` (pairs `a ≤ b`).
    /// `top`, if given, must be above everything.
    pub fn new(
        conditions: Vec<SetTerm>,
        relation: &[(SetTerm, SetTerm)],
        top: Option<SetTerm>,
    ) -> Result<Self, ForcingError> {
        let set: BTreeSet<SetTerm> = conditions.iter().cloned().collect();
        if set.len() != conditions.len() {
            return Err(ForcingError::InvalidPoset("duplicate condition".into()));
        }
        if let Some(c) = conditions.iter().find(|c| c.is_ord()) {
            return Err(ForcingError::InvalidPoset(format!("condition {c} is an ordinal")));
        }
        let conditions: Vec<SetTerm> = set.into_iter().collect();
        let n = conditions.len();
        let index = |t: &SetTerm| {
            conditions
                .binary_search(t)
                .map_err(|_| ForcingError::InvalidPoset(format!("{t} is not a condition")))
        };
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in relation {
            le[index(a)?][index(b)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        let top = top.map(|t| index(&t)).transpose()?;
        if let Some(t) = top {
            if (0..n).any(|i| !le[i][t]) {
                return Err(ForcingError::InvalidPoset("top is not above every condition".into()));
            }
        }
        Ok(Poset { conditions, le, top })
    }

    /// A preorder on the encoded conditions `{ord(1)}, ..., {ord(n)}` given by
    /// a matrix; the closure is taken and a greatest element, if any, becomes
    /// the top.
    pub fn from_matrix(matrix: &[Vec<bool>]) -> Self {
        let conds: Vec<SetTerm> = (0..matrix.len()).map(condition_term).collect();
        let rel: Vec<(SetTerm, SetTerm)> = matrix
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                let conds = &conds;
                row.iter()
                    .enumerate()
                    .filter(|(_, b)| **b)
                    .map(move |(j, _)| (conds[i].clone(), conds[j].clone()))
            })
            .collect();
        let mut p = Poset::new(conds, &rel, None).expect("encoded conditions are valid");
        p.top = (0..p.len()).find(|t| (0..p.len()).all(|i| p.le[i][*t]));
        p
    }

    pub fn conditions(&self) -> &[SetTerm] {
        &self.conditions
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn top(&self) -> Option<&SetTerm> {
        self.top.map(|t| &self.conditions[t])
    }

    pub fn index_of(&self, t: &SetTerm) -> Option<usize> {
        self.conditions.binary_search(t).ok()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    /// `a ≤ b`; false unless both are conditions.
    pub fn le_terms(&self, a: &SetTerm, b: &SetTerm) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.le[i][j],
            _ => false,
        }
    }

    /// The set term standing for `P` inside a model: the set of conditions.
    pub fn term(&self) -> SetTerm {
        SetTerm::set(self.conditions.iter().cloned())
    }

    /// Relation pairs `(a, b)` with `a ≤ b`, `a ≠ b`.
    pub fn relation(&self) -> Vec<(SetTerm, SetTerm)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.le[i][j] {
                    out.push((self.conditions[i].clone(), self.conditions[j].clone()));
                }
            }
        }
        out
    }

    /// The suborder on the given indices, with the top kept if it survives.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let conditions: Vec<SetTerm> = keep.iter().map(|i| self.conditions[*i].clone()).collect();
        let le = keep
            .iter()
            .map(|i| keep.iter().map(|j| self.le[*i][*j]).collect())
            .collect();
        let top = self.top.and_then(|t| keep.iter().position(|i| *i == t));
        Poset { conditions, le, top }
    }

    /// The same order transported along a map on conditions.
    pub fn map_terms(&self, f: impl Fn(&SetTerm) -> SetTerm) -> Result<Poset, ForcingError> {
        let conds: Vec<SetTerm> = self.conditions.iter().map(&f).collect();
        let rel: Vec<(SetTerm, SetTerm)> =
            self.relation().iter().map(|(a, b)| (f(a), f(b))).collect();
        Poset::new(conds, &rel, self.top().map(f))
    }
}

/// `P ∩ M` together with the order, as seen by a (possibly non-transitive)
/// model; all index sets refer to the underlying [`Poset`].
#[derive(Clone, Debug)]
pub struct PosetView {
    /// Indices of conditions in `P ∩ M`.
    pub present: Vec<usize>,
}

impl PosetView {
    pub fn new(m: &EpsilonModel, p: &Poset) -> Result<Self, ForcingError> {
        if !m.contains(&p.term()) {
            return Err(ForcingError::PosetNotInModel);
        }
        let present = (0..p.len()).filter(|i| m.contains(&p.conditions[*i])).collect();
        Ok(PosetView { present })
    }

    pub fn contains(&self, i: usize) -> bool {
        self.present.binary_search(&i).is_ok()
    }

    /// `p ∥ q` inside `P ∩ M`.
    pub fn compatible(&self, p: &Poset, i: usize, j: usize) -> bool {
        self.present.iter().any(|r| p.le(*r, i) && p.le(*r, j))
    }

    /// Conditions of `P ∩ M` with nothing strictly below them.
    pub fn minimal(&self, p: &Poset) -> Vec<usize> {
        self.present
            .iter()
            .copied()
            .filter(|i| self.present.iter().all(|j| !p.le(*j, *i) || p.le(*i, *j)))
            .collect()
    }

    /// Conditions of `P ∩ M` with nothing strictly above them.
    pub fn maximal(&self, p: &Poset) -> Vec<usize> {
        self.present
            .iter()
            .copied()
            .filter(|i| self.present.iter().all(|j| !p.le(*i, *j) || p.le(*j, *i)))
            .collect()
    }

    /// Upward closure of `i` inside `P ∩ M`.
    pub fn up(&self, p: &Poset, i: usize) -> BTreeSet<usize> {
        self.present.iter().copied().filter(|j| p.le(i, *j)).collect()
    }
}

/// An ε-model that also interprets `≤` as the order of a poset.
pub struct OrderedModel<'a> {
    pub model: &'a EpsilonModel,
    pub poset: &'a Poset,
}

impl Structure for OrderedModel<'_> {
    fn carrier(&self) -> &[SetTerm] {
        self.model.elements()
    }

    fn mem(&self, a: &SetTerm, b: &SetTerm) -> bool {
        b.contains(a)
    }

    fn le(&self, a: &SetTerm, b: &SetTerm) -> Option<bool> {
        Some(self.poset.le_terms(a, b))
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("poset {")?;
        for (i, c) in self.conditions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("; ")?;
        for (i, (a, b)) in self.relation().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}<={b}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All preorders on `n` points up to isomorphism, as closed matrices.
pub fn preorder_shapes(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |j| *j != i).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, (i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                m[*i][*j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !m[i][j] || (0..n).all(|k| !m[j][k] || m[i][k]))
        });
        if !transitive {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| m[p[i]][p[j]])
                    .collect::<Vec<bool>>()
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            out.push(m);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
