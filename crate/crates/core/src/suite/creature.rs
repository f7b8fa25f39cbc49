//! Creature calculus invariants over exhaustive enumerations.

use std::collections::BTreeSet;

use super::{SuiteConfig, Tally};
use crate::creature::norm::{log2_plus_one_norm, show_mask};
use crate::creature::{
    bigness_refine, enumerate_creatures, halving_incompatible_pair, incompat_horizon, join,
    pure_decision_core, split_decomposition, stronger, unhalve, ConditionPrefix, Creature,
    GrowthProfile, Verdict,
};
use crate::report::Entry;

fn le(a: &Creature, b: &Creature) -> bool {
    stronger(a, b).unwrap_or(false)
}

fn same_norm(a: &Creature, b: &Creature) -> bool {
    a.val() == b.val() && a.subsets().all(|s| a.phi(s) == b.phi(s))
}

pub fn check_half(c: &Creature) -> Result<(), String> {
    let h = c.half();
    if !h.is_valid() || h.val() != c.val() || !le(&h, c) || h.nor() < c.nor().div_ceil(2) {
        return Err(format!("{c}: half = {h}"));
    }
    if c.nor() <= 1 && h != *c {
        return Err(format!("{c}: half moves a small creature"));
    }
    Ok(())
}

/// Every valid `ψ ≤ half(c)` with positive norm unhalves correctly.
pub fn check_unhalve(c: &Creature, pool: &[Creature]) -> Result<(), String> {
    let h = c.half();
    for psi in pool.iter().filter(|p| p.nor() > 0 && le(p, &h)) {
        let back = unhalve(psi, c).map_err(|e| format!("{c}, ψ = {psi}: {e}"))?;
        if back.val() != psi.val() || !le(&back, c) || back.nor() < c.nor().div_ceil(2) {
            return Err(format!("{c}, ψ = {psi}: ψ' = {back}"));
        }
    }
    Ok(())
}

pub fn check_refine(c: &Creature) -> Result<(), String> {
    if c.nor() <= 1 {
        return match bigness_refine(c, 0) {
            Err(_) => Ok(()),
            Ok(_) => Err(format!("{c}: refine accepted norm {}", c.nor())),
        };
    }
    for ones in c.subsets() {
        let r = bigness_refine(c, ones).map_err(|e| e.to_string())?;
        let homogeneous = r.val() & ones == 0 || r.val() & !ones == 0;
        if !le(&r, c) || r.nor() + 1 < c.nor() || !homogeneous {
            return Err(format!("{c}, colour {}: {r}", show_mask(ones)));
        }
    }
    Ok(())
}

/// The join is below both and above every common strengthening in `pool`.
pub fn check_join(a: &Creature, b: &Creature, pool: &[Creature]) -> Result<(), String> {
    let j = join(a, b).map_err(|e| e.to_string())?;
    let j = match j {
        None if a.val() & b.val() == 0 => return Ok(()),
        None => return Err(format!("{a} ∧ {b}: reported incompatible")),
        Some(j) => j,
    };
    if !j.is_valid() || !le(&j, a) || !le(&j, b) {
        return Err(format!("{a} ∧ {b} = {j}: not a common strengthening"));
    }
    if let Some(psi) = pool.iter().find(|p| le(p, a) && le(p, b) && !le(p, &j)) {
        return Err(format!("{a} ∧ {b} = {j}: {psi} is not below it"));
    }
    match join(b, a) {
        Ok(Some(k)) if same_norm(&j, &k) => Ok(()),
        other => Err(format!("{a} ∧ {b}: not commutative ({other:?})")),
    }
}

pub fn check_split(a: &Creature, b: &Creature) -> Result<(), String> {
    let j = match join(a, b).map_err(|e| e.to_string())? {
        Some(j) => j,
        None => return Ok(()),
    };
    for s in j.subsets() {
        let (b0, b1) = split_decomposition(a, b, s).map_err(|e| e.to_string())?;
        if b0 | b1 != s || j.phi(s) < a.phi(b0).max(b.phi(b1)) {
            return Err(format!("{a} ∧ {b} at {}: ({}, {})", show_mask(s), show_mask(b0), show_mask(b1)));
        }
    }
    Ok(())
}

pub fn check_associative(a: &Creature, b: &Creature, c: &Creature) -> Result<(), String> {
    let left = join(a, b).ok().flatten().and_then(|ab| join(&ab, c).ok().flatten());
    let right = join(b, c).ok().flatten().and_then(|bc| join(a, &bc).ok().flatten());
    match (&left, &right) {
        (None, None) => Ok(()),
        (Some(l), Some(r)) if same_norm(l, r) => Ok(()),
        _ => Err(format!("({a} ∧ {b}) ∧ {c} = {left:?} vs {right:?}")),
    }
}

/// The length-4 example with `|val| = 16` at every position.
pub fn incomp_example() -> Result<ConditionPrefix, String> {
    let g = GrowthProfile::new(vec![16; 4]).map_err(|e| e.to_string())?;
    let cs = (0..4)
        .map(|i| Creature::from_fn(i, 0xffff, log2_plus_one_norm))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    ConditionPrefix::new(g, cs).map_err(|e| e.to_string())
}

pub fn check_incomp(p: &ConditionPrefix) -> Result<String, String> {
    let pair = halving_incompatible_pair(p).map_err(|e| e.to_string())?;
    if !pair.r.le(p) {
        return Err("r is not below p".into());
    }
    for n in 0..p.len() {
        if pair.r.get(n).val() & !pair.q.get(n).val() != 0 {
            return Err(format!("val(r({n})) ⊄ val(half(p)({n}))"));
        }
    }
    let rep = incompat_horizon(&pair.r, &pair.q, 8).map_err(|e| e.to_string())?;
    if rep.verdict != Verdict::Witnessed {
        return Err(format!("verdict {}", rep.verdict));
    }
    Ok(format!("{} at {:?}", rep.verdict, rep.witnesses))
}

pub fn run(cfg: &SuiteConfig) -> Vec<Entry> {
    let f = cfg.size.clamp(1, 4) as u32;
    let jf = f.min(3);
    let instance = format!("F(i) <= {f}, i < 3; joins on |val| <= {jf}");
    let mut valid = Tally::new("creature/enumeration-valid", instance.clone());
    let mut half = Tally::new("creature/half", instance.clone());
    let mut unhalving = Tally::new("creature/unhalve", instance.clone());
    let mut refine = Tally::new("creature/bigness-refine", instance.clone());
    let mut joins = Tally::new("creature/join-weakest", instance.clone());
    let mut splits = Tally::new("creature/split-decomposition", instance.clone());
    let mut assoc = Tally::new("creature/join-associative", instance.clone());
    for i in 0..3 {
        let all = enumerate_creatures(i, f);
        for c in &all {
            valid.record(c.validate(Some(f)).map_err(|v| format!("{c}: {v}")));
            half.record(check_half(c));
            unhalving.record(check_unhalve(c, &all));
            refine.record(check_refine(c));
        }
    }
    let small = enumerate_creatures(0, jf);
    for a in &small {
        for b in &small {
            joins.record(check_join(a, b, &small));
            splits.record(check_split(a, b));
        }
    }
    let trio = enumerate_creatures(0, 2);
    for a in &trio {
        for b in &trio {
            for c in &trio {
                assoc.record(check_associative(a, b, c));
            }
        }
    }
    let mut out = vec![
        valid.entry(),
        half.entry(),
        unhalving.entry(),
        refine.entry(),
        joins.entry(),
        splits.entry(),
        assoc.entry(),
    ];
    let incomp = incomp_example().and_then(|p| check_incomp(&p));
    out.push(match incomp {
        Ok(w) => Entry::new("creature/halving-incompatible", "F = (16,16,16,16)", true).with_witness(w),
        Err(w) => Entry::new("creature/halving-incompatible", "F = (16,16,16,16)", false).with_witness(w),
    });
    out.push(decision_entry(f >= 2));
    out
}

/// Every length-3 prefix for `F = (2,2,2)` and every seed at `n = 3`, or
/// only the full-value prefixes when `exhaustive` is false.
fn decision_entry(exhaustive: bool) -> Entry {
    let mut t = Tally::new("creature/pure-decision", "F = (2,2,2)");
    let g = GrowthProfile::new(vec![2, 2, 2]).expect("positive");
    let per: Vec<Vec<Creature>> = (0..3)
        .map(|i| {
            let all = enumerate_creatures(i, 2);
            if exhaustive {
                all
            } else {
                all.into_iter().filter(|c| c.val() == 0b11).collect()
            }
        })
        .collect();
    for a in &per[0] {
        for b in &per[1] {
            for c in &per[2] {
                let p = ConditionPrefix::new(g.clone(), vec![a.clone(), b.clone(), c.clone()]).expect("valid");
                let top = p.pos(3).expect("n ≤ length");
                for mask in 0u32..1 << top.len() {
                    let seed: BTreeSet<Vec<u32>> = top
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, s)| s.clone())
                        .collect();
                    t.record(check_decision(&p, &seed));
                }
            }
        }
    }
    t.entry()
}

/// Homogeneity, `Λ` bookkeeping and the norm-loss bound at every level.
pub fn check_decision(p: &ConditionPrefix, seed: &BTreeSet<Vec<u32>>) -> Result<(), String> {
    let n = p.len();
    let levels = pure_decision_core(p, 0, n, seed).map_err(|e| e.to_string())?;
    let mut upper = seed.clone();
    for l in &levels {
        let phi = &l.creature;
        if !le(phi, p.get(l.h)) {
            return Err(format!("{p}, level {}: not a strengthening", l.h));
        }
        if (phi.nor() as u64) + p.profile().kstar(l.h) < p.get(l.h).nor() as u64 {
            return Err(format!("{p}, level {}: lost too much norm", l.h));
        }
        let mut expected = BTreeSet::new();
        for s in p.pos(l.h).map_err(|e| e.to_string())? {
            let ins = phi
                .val_elements()
                .iter()
                .filter(|x| {
                    let mut t = s.clone();
                    t.push(**x);
                    upper.contains(&t)
                })
                .count();
            if ins != 0 && ins != phi.size() {
                return Err(format!("{p}, level {}: {s:?} not homogeneous", l.h));
            }
            if ins == phi.size() {
                expected.insert(s);
            }
        }
        if expected != l.lambda {
            return Err(format!("{p}, level {}: Λ mismatch", l.h));
        }
        upper = l.lambda.clone();
    }
    Ok(())
}
