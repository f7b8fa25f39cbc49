//! The finite core of pure decision: a downward induction that makes one
//! creature at a time homogeneous with respect to a set of positions.

use std::collections::BTreeSet;

use super::condition::ConditionPrefix;
use super::norm::{self, Creature};
use crate::error::CreatureError;

/// One level `h` of the induction: `φ_{n,h}` and `Λ_{n,h}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionLevel {
    pub h: usize,
    pub creature: Creature,
    pub lambda: BTreeSet<Vec<u32>>,
    pub refinements: usize,
}

/// Runs `h = n−1, …, h0`. At level `h`, for each `s ∈ pos(p, h)` the
/// creature is refined by the colouring `x ↦ [s⌢x ∈ Λ_{h+1}]`, then `Λ_h`
/// collects the `s` all of whose surviving extensions are in `Λ_{h+1}`.
/// Levels are returned in the order computed (top first).
pub fn pure_decision_core(
    p: &ConditionPrefix,
    h0: usize,
    n: usize,
    lambda_n: &BTreeSet<Vec<u32>>,
) -> Result<Vec<DecisionLevel>, CreatureError> {
    if h0 > n || n > p.len() {
        return Err(CreatureError::Precondition(format!(
            "need h0 ≤ n ≤ length, got h0 = {h0}, n = {n}, length = {}",
            p.len()
        )));
    }
    if lambda_n.iter().any(|s| s.len() != n || !p.in_pos(s)) {
        return Err(CreatureError::NotInPos(n));
    }
    let mut upper = lambda_n.clone();
    let mut out = Vec::new();
    for h in (h0..n).rev() {
        let positions = p.pos(h)?;
        let mut phi = p.get(h).clone();
        let mut refinements = 0;
        for s in &positions {
            let ones = colour(s, &phi, &upper);
            if ones != 0 && ones != phi.val() {
                phi = norm::refine_unchecked(&phi, ones);
                refinements += 1;
            }
        }
        let lambda: BTreeSet<Vec<u32>> = positions
            .into_iter()
            .filter(|s| colour(s, &phi, &upper) == phi.val())
            .collect();
        out.push(DecisionLevel {
            h,
            creature: phi,
            lambda: lambda.clone(),
            refinements,
        });
        upper = lambda;
    }
    Ok(out)
}

/// The elements `x ∈ val(φ)` with `s⌢x ∈ Λ`, as a mask.
pub(crate) fn colour(s: &[u32], phi: &Creature, lambda: &BTreeSet<Vec<u32>>) -> u64 {
    let mut t = s.to_vec();
    t.push(0);
    phi.val_elements().iter().fold(0, |m, x| {
        *t.last_mut().expect("nonempty") = *x;
        if lambda.contains(&t) {
            m | 1 << x
        } else {
            m
        }
    })
}
