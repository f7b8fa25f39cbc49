//! P-names, standard names and the classical evaluation.

use std::collections::{BTreeSet, HashMap};

use crate::forcing::poset::Poset;
use crate::model::EpsilonModel;
use crate::term::SetTerm;

/// Is `t` a P-name in `V`: every member is a pair `(σ, p)` with `p` a
/// condition and `σ` a P-name?
pub fn is_name(t: &SetTerm, p: &Poset) -> bool {
    fn go(t: &SetTerm, p: &Poset, memo: &mut HashMap<SetTerm, bool>) -> bool {
        if let Some(v) = memo.get(t) {
            return *v;
        }
        let v = t.members().iter().all(|e| match e.as_pair() {
            Some((s, c)) => p.index_of(&c).is_some() && go(&s, p, memo),
            None => false,
        });
        memo.insert(t.clone(), v);
        v
    }
    go(t, p, &mut HashMap::new())
}

/// `M`'s pair decoding: `e` is `(a, b)` for `a, b ∈ M` in the sense of `M`.
fn internal_pair(m: &EpsilonModel, e: &SetTerm) -> Option<(SetTerm, SetTerm)> {
    let outer = m.ext(e);
    let views: Vec<Vec<SetTerm>> = outer.iter().map(|x| m.ext(x)).collect();
    // {{a}, {a, b}} or, when a = b, {{a}}.
    let single = views.iter().find(|v| v.len() == 1)?;
    let a = single[0].clone();
    match views.len() {
        1 => Some((a.clone(), a)),
        2 => {
            let other = views.iter().find(|v| v.len() == 2)?;
            if !other.contains(&a) {
                return None;
            }
            let b = other.iter().find(|x| **x != a)?.clone();
            Some((a, b))
        }
        _ => None,
    }
}

/// Does `M` think `t` is a P-name? Only `t ∩ M` is visible, and pairs are
/// decoded inside `M`.
pub fn is_name_in(m: &EpsilonModel, t: &SetTerm, p: &Poset) -> bool {
    fn go(m: &EpsilonModel, t: &SetTerm, p: &Poset, memo: &mut HashMap<SetTerm, bool>) -> bool {
        if let Some(v) = memo.get(t) {
            return *v;
        }
        memo.insert(t.clone(), false);
        let v = m.ext(t).iter().all(|e| match internal_pair(m, e) {
            Some((s, c)) => p.index_of(&c).is_some() && go(m, &s, p, memo),
            None => false,
        });
        memo.insert(t.clone(), v);
        v
    }
    m.contains(t) && go(m, t, p, &mut HashMap::new())
}

/// `τ[G] = {σ[G] : (σ, p) ∈ τ, p ∈ G}`; members that are not pairs are
/// ignored.
pub fn eval_name_v(tau: &SetTerm, g: &BTreeSet<SetTerm>) -> SetTerm {
    fn go(t: &SetTerm, g: &BTreeSet<SetTerm>, memo: &mut HashMap<SetTerm, SetTerm>) -> SetTerm {
        if let Some(v) = memo.get(t) {
            return v.clone();
        }
        let vals: Vec<SetTerm> = t
            .node_elements()
            .unwrap_or(&[])
            .iter()
            .filter_map(SetTerm::as_pair)
            .filter(|(_, c)| g.contains(c))
            .map(|(s, _)| go(&s, g, memo))
            .collect();
        let v = SetTerm::set(vals);
        memo.insert(t.clone(), v.clone());
        v
    }
    // Ordinal members are never pairs, so an ordinal evaluates to ∅.
    go(tau, g, &mut HashMap::new())
}

/// The standard name of `x` relative to `M`:
/// `x̌ = {(y̌, m) : y ∈ x ∩ M, m maximal in P}`. With a top, `m` is the top.
pub fn std_name(x: &SetTerm, m: &EpsilonModel, p: &Poset) -> SetTerm {
    let tops: Vec<SetTerm> = match p.top() {
        Some(t) => vec![t.clone()],
        None => maximal_conditions(p),
    };
    let mut memo = HashMap::new();
    std_name_with(x, m, &tops, &mut memo)
}

fn maximal_conditions(p: &Poset) -> Vec<SetTerm> {
    (0..p.len())
        .filter(|i| (0..p.len()).all(|j| !p.le(*i, j) || p.le(j, *i)))
        .map(|i| p.conditions()[i].clone())
        .collect()
}

fn std_name_with(
    x: &SetTerm,
    m: &EpsilonModel,
    tops: &[SetTerm],
    memo: &mut HashMap<SetTerm, SetTerm>,
) -> SetTerm {
    if let Some(v) = memo.get(x) {
        return v.clone();
    }
    let mut pairs = Vec::new();
    for y in m.ext(x) {
        let yn = std_name_with(&y, m, tops, memo);
        pairs.extend(tops.iter().map(|t| SetTerm::pair(&yn, t)));
    }
    let v = SetTerm::set(pairs);
    memo.insert(x.clone(), v.clone());
    v
}

/// The canonical name for the generic filter: `{(p̌, p) : p ∈ P}`.
pub fn generic_name(m: &EpsilonModel, p: &Poset) -> SetTerm {
    SetTerm::set(
        p.conditions()
            .iter()
            .map(|c| SetTerm::pair(&std_name(c, m, p), c)),
    )
}

/// Name terms hereditarily below `t`, including `t` (first coordinates only).
pub fn subnames(t: &SetTerm) -> BTreeSet<SetTerm> {
    let mut out = BTreeSet::new();
    let mut stack = vec![t.clone()];
    while let Some(s) = stack.pop() {
        if out.insert(s.clone()) {
            for e in s.node_elements().unwrap_or(&[]) {
                if let Some((a, _)) = e.as_pair() {
                    stack.push(a);
                }
            }
        }
    }
    out
}
