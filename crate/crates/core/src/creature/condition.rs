//! Finite-horizon conditions: sequences of creatures along a growth profile.

use std::fmt;

use super::norm::{self, show_mask, Creature};
use crate::error::CreatureError;

/// `F(0..L)` with `k*(i) = ∏_{j<i} F(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthProfile {
    f: Vec<u32>,
}

/// `base^exp`, saturating at `u64::MAX`.
pub fn pow_sat(base: u64, exp: u64) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u64::MAX || acc == 0 || base == 1 {
            break;
        }
    }
    acc
}

impl GrowthProfile {
    pub fn new(f: Vec<u32>) -> Result<Self, CreatureError> {
        if f.contains(&0) {
            return Err(CreatureError::Invalid("F values must be positive".into()));
        }
        Ok(GrowthProfile { f })
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn f(&self, i: usize) -> u32 {
        self.f[i]
    }

    pub fn values(&self) -> &[u32] {
        &self.f
    }

    /// `k*(i)`, saturating; `k*(0) = 1`.
    pub fn kstar(&self, i: usize) -> u64 {
        self.f[..i.min(self.f.len())]
            .iter()
            .fold(1u64, |acc, x| acc.saturating_mul(*x as u64))
    }

    /// Positions where the advisory bound `F(i) > 2^(i^k*(i))` fails.
    pub fn fast_growth_lint(&self) -> Vec<usize> {
        (0..self.f.len())
            .filter(|&i| {
                let e = pow_sat(i as u64, self.kstar(i));
                let bound = if e >= 64 { u64::MAX } else { 1u64 << e };
                (self.f[i] as u64) <= bound
            })
            .collect()
    }
}

/// A finite prefix `(p(0), …, p(L−1))` of a condition.
#[derive(Clone, PartialEq, Eq)]
pub struct ConditionPrefix {
    profile: GrowthProfile,
    creatures: Vec<Creature>,
}

/// Outcome of the finite-horizon incompatibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    DisjointVal,
    Witnessed,
    NoWitnessAtHorizon,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DisjointVal => "disjoint-val",
            Verdict::Witnessed => "witnessed-incompatible",
            Verdict::NoWitnessAtHorizon => "no-witness-at-horizon",
        })
    }
}

/// Per-position evidence. This approximates the infinite criterion on the
/// positions of a prefix only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizonReport {
    pub disjoint: Vec<usize>,
    /// For each `M ≤ M_bound`: positions `n` with
    /// `nor(p(n) ∧ q(n)) < M^k*(n) ≤ min(nor p(n), nor q(n))`.
    pub witnesses: Vec<(u64, Vec<usize>)>,
    pub verdict: Verdict,
}

impl ConditionPrefix {
    /// Checks length, indices, value ranges and validity of every creature.
    pub fn new(profile: GrowthProfile, creatures: Vec<Creature>) -> Result<Self, CreatureError> {
        if creatures.len() != profile.len() {
            return Err(CreatureError::Invalid(format!(
                "{} creatures for a profile of length {}",
                creatures.len(),
                profile.len()
            )));
        }
        for (i, c) in creatures.iter().enumerate() {
            if c.index() != i {
                return Err(CreatureError::IndexMismatch(c.index(), i));
            }
            c.validate(Some(profile.f(i)))
                .map_err(|v| CreatureError::Invalid(format!("position {i}: {v}")))?;
        }
        Ok(ConditionPrefix { profile, creatures })
    }

    pub fn profile(&self) -> &GrowthProfile {
        &self.profile
    }

    pub fn creatures(&self) -> &[Creature] {
        &self.creatures
    }

    pub fn get(&self, i: usize) -> &Creature {
        &self.creatures[i]
    }

    pub fn len(&self) -> usize {
        self.creatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.creatures.is_empty()
    }

    /// The values along the maximal initial run of singleton creatures.
    pub fn trunk(&self) -> Vec<u32> {
        self.creatures
            .iter()
            .take_while(|c| c.size() == 1)
            .map(|c| c.val_elements()[0])
            .collect()
    }

    /// `nor(p(i)) ≥ m^k*(i)`, the integer form of "the k*(i)-th root of the
    /// norm is at least m".
    pub fn root_at_least(&self, i: usize, m: u64) -> bool {
        self.creatures[i].nor() as u64 >= pow_sat(m, self.profile.kstar(i))
    }

    /// The largest `m` with `nor(p(i)) ≥ m^k*(i)`.
    pub fn threshold(&self, i: usize) -> u64 {
        let mut m = 0;
        while self.root_at_least(i, m + 1) {
            m += 1;
            if m > self.creatures[i].nor() as u64 {
                break;
            }
        }
        m
    }

    /// Pointwise strengthening.
    pub fn le(&self, other: &ConditionPrefix) -> bool {
        self.len() == other.len()
            && self
                .creatures
                .iter()
                .zip(&other.creatures)
                .all(|(a, b)| norm::stronger(a, b).unwrap_or(false))
    }

    /// The pointwise join, or `None` if some position has disjoint values.
    pub fn meet(&self, other: &ConditionPrefix) -> Option<ConditionPrefix> {
        let creatures = self
            .creatures
            .iter()
            .zip(&other.creatures)
            .map(|(a, b)| norm::join(a, b).ok().flatten())
            .collect::<Option<Vec<_>>>()?;
        Some(ConditionPrefix {
            profile: self.profile.clone(),
            creatures,
        })
    }

    fn replace(&self, creatures: Vec<Creature>) -> ConditionPrefix {
        ConditionPrefix {
            profile: self.profile.clone(),
            creatures,
        }
    }

    /// `pos(p, n) = ∏_{i<n} val(p(i))` in lexicographic order.
    pub fn pos(&self, n: usize) -> Result<Vec<Vec<u32>>, CreatureError> {
        if n > self.len() {
            return Err(CreatureError::Precondition(format!(
                "n = {n} exceeds the length {}",
                self.len()
            )));
        }
        let mut out = vec![Vec::new()];
        for c in &self.creatures[..n] {
            out = out
                .into_iter()
                .flat_map(|s| {
                    c.val_elements().iter().map(move |x| {
                        let mut t = s.clone();
                        t.push(*x);
                        t
                    })
                })
                .collect();
        }
        Ok(out)
    }

    pub fn in_pos(&self, s: &[u32]) -> bool {
        s.len() <= self.len()
            && s.iter()
                .zip(&self.creatures)
                .all(|(x, c)| c.val() >> x & 1 == 1)
    }

    /// `p ∧ s`: the first `|s|` creatures restricted to the singletons of `s`.
    pub fn wedge(&self, s: &[u32]) -> Result<ConditionPrefix, CreatureError> {
        if !self.in_pos(s) {
            return Err(CreatureError::NotInPos(s.len()));
        }
        let creatures = self
            .creatures
            .iter()
            .enumerate()
            .map(|(i, c)| match s.get(i) {
                Some(x) => c.restrict(1 << x).expect("x ∈ val"),
                None => c.clone(),
            })
            .collect();
        Ok(self.replace(creatures))
    }

    /// `half` at every position.
    pub fn half(&self) -> ConditionPrefix {
        self.replace(self.creatures.iter().map(Creature::half).collect())
    }
}

/// Finite-horizon approximation of the incompatibility criterion.
pub fn incompat_horizon(
    p: &ConditionPrefix,
    q: &ConditionPrefix,
    m_bound: u64,
) -> Result<HorizonReport, CreatureError> {
    if p.profile != q.profile {
        return Err(CreatureError::Precondition("conditions have different profiles".into()));
    }
    let mut disjoint = Vec::new();
    let mut joins = Vec::new();
    for n in 0..p.len() {
        match norm::join(p.get(n), q.get(n))? {
            None => disjoint.push(n),
            Some(j) => joins.push((n, j.nor() as u64)),
        }
    }
    let mut witnesses = Vec::new();
    for m in 1..=m_bound {
        let hits: Vec<usize> = joins
            .iter()
            .filter(|(n, j)| {
                let level = pow_sat(m, p.profile.kstar(*n));
                let floor = p.get(*n).nor().min(q.get(*n).nor()) as u64;
                *j < level && level <= floor
            })
            .map(|(n, _)| *n)
            .collect();
        if !hits.is_empty() {
            witnesses.push((m, hits));
        }
    }
    let verdict = if !disjoint.is_empty() {
        Verdict::DisjointVal
    } else if !witnesses.is_empty() {
        Verdict::Witnessed
    } else {
        Verdict::NoWitnessAtHorizon
    };
    Ok(HorizonReport {
        disjoint,
        witnesses,
        verdict,
    })
}

/// The halving-based incompatible pair: `q = half(p)`, sets `a_n` with
/// `q(n)(a_n) = 2`, and `r(n) = p(n)` restricted to `a_n`.
#[derive(Clone, Debug)]
pub struct IncompatiblePair {
    pub q: ConditionPrefix,
    pub a: Vec<u64>,
    pub r: ConditionPrefix,
}

pub fn halving_incompatible_pair(p: &ConditionPrefix) -> Result<IncompatiblePair, CreatureError> {
    let q = p.half();
    let mut a = Vec::new();
    let mut r = Vec::new();
    for n in 0..p.len() {
        let qn = q.get(n);
        let mut subsets: Vec<u64> = qn.subsets().filter(|b| qn.phi(*b) == 2).collect();
        subsets.sort_by_key(|b| (b.count_ones(), *b));
        let an = *subsets.first().ok_or_else(|| {
            CreatureError::Precondition(format!("half(p)({n}) never takes the value 2"))
        })?;
        let psi = qn.restrict(an)?;
        r.push(norm::unhalve(&psi, p.get(n))?);
        a.push(an);
    }
    Ok(IncompatiblePair {
        r: p.replace(r),
        q,
        a,
    })
}

impl fmt::Display for ConditionPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F={:?} [", self.profile.f)?;
        for (i, c) in self.creatures.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "val={} nor={}", show_mask(c.val()), c.nor())?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ConditionPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
