//! Collapse, labeling and closure invariants over small ε-models.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SuiteConfig, Tally};
use crate::collapse::{
    labeled_collapse, ord_collapse, ordclos, ordclos_model, transitive_collapse, uncollapse,
};
use crate::model::EpsilonModel;
use crate::report::Entry;
use crate::term::SetTerm;

/// Largest ordinal atom in generated terms.
pub const MAX_ATOM: u32 = 5;

/// The exhaustive term pool: ordinals `0..=5`, one- and two-element sets of
/// ordinals, `{{k}}`, `{k, {k}}`, and `{{{k}}}` for two values of `k`. Nesting
/// depth above the atoms is at most 3.
pub fn kernel_pool() -> Vec<SetTerm> {
    let o = SetTerm::ord;
    let s = |v: Vec<SetTerm>| SetTerm::set(v);
    let mut pool: BTreeSet<SetTerm> = (0..=MAX_ATOM).map(o).collect();
    for a in 0..=MAX_ATOM {
        pool.insert(s(vec![o(a)]));
        for b in a + 1..=MAX_ATOM {
            pool.insert(s(vec![o(a), o(b)]));
        }
    }
    for k in 1..=MAX_ATOM {
        pool.insert(s(vec![s(vec![o(k)])]));
        pool.insert(s(vec![o(k), s(vec![o(k)])]));
    }
    for k in [2, MAX_ATOM] {
        pool.insert(s(vec![s(vec![s(vec![o(k)])])]));
    }
    pool.into_iter().collect()
}

/// Every subset of `pool` with `1..=max` elements, as models.
pub fn subsets(pool: &[SetTerm], max: usize) -> Vec<EpsilonModel> {
    fn rec(pool: &[SetTerm], start: usize, max: usize, cur: &mut Vec<SetTerm>, out: &mut Vec<EpsilonModel>) {
        if !cur.is_empty() {
            out.push(EpsilonModel::new(cur.iter().cloned()));
        }
        if cur.len() == max {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i].clone());
            rec(pool, i + 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, 0, max, &mut Vec::new(), &mut out);
    out
}

/// A random term of nesting depth `≤ depth` over the atoms.
pub fn random_term(rng: &mut impl Rng, depth: u32) -> SetTerm {
    if depth == 0 || rng.gen_bool(0.35) {
        return SetTerm::ord(rng.gen_range(0..=MAX_ATOM));
    }
    let n = rng.gen_range(1..=3);
    SetTerm::set((0..n).map(|_| random_term(rng, depth - 1)).collect::<Vec<_>>())
}

/// `count` random ord-absolute models with `2..=max_card` elements, found by
/// rejection sampling (each candidate is seeded with a few base ordinals).
pub fn random_ord_absolute(seed: u64, count: usize, max_card: usize) -> Vec<EpsilonModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 2000 {
        attempts += 1;
        let size = rng.gen_range(2..=max_card);
        let base = rng.gen_range(0..=3.min(size as u32));
        let mut elems: BTreeSet<SetTerm> = (0..base).map(SetTerm::ord).collect();
        while elems.len() < size {
            elems.insert(random_term(&mut rng, 3));
        }
        let m = EpsilonModel::new(elems);
        if m.is_ord_absolute_with(0) {
            out.push(m);
        }
    }
    out
}

/// The ord-collapse facts for an ord-absolute model.
pub fn check_ord_collapse(m: &EpsilonModel) -> Result<(), String> {
    let i = ord_collapse(m).map_err(|e| e.to_string())?;
    if !i.is_injective() {
        return Err(format!("{m}: collapse not injective"));
    }
    for s in m.elements() {
        for t in m.elements() {
            if t.contains(s) != i.map[t].contains(&i.map[s]) {
                return Err(format!("{m}: membership {s} ∈ {t} not preserved"));
            }
        }
        if i.map[s].is_ord() != s.is_ord() || (s.is_ord() && &i.map[s] != s) {
            return Err(format!("{m}: ordinal status of {s} changes"));
        }
    }
    if m.ordinals() != i.image.ordinals() {
        return Err(format!("{m}: ordinals differ from the image's"));
    }
    if !i.image.is_ord_transitive_with(0) {
        return Err(format!("{m}: image {} not ord-transitive", i.image));
    }
    if i.is_identity() != m.is_ord_transitive_with(0) {
        return Err(format!("{m}: identity iff ord-transitive fails"));
    }
    let j = transitive_collapse(m);
    let j2 = transitive_collapse(&i.image);
    if m.elements().iter().any(|x| j2.map[&i.map[x]] != j.map[x]) {
        return Err(format!("{m}: transitive collapse does not commute"));
    }
    if !ord_collapse(&i.image).map_err(|e| e.to_string())?.is_identity() {
        return Err(format!("{m}: ord-collapse not idempotent"));
    }
    Ok(())
}

/// `labeled_collapse` and `uncollapse` are mutually inverse on `m` (which
/// must be ord-transitive).
pub fn check_labeled_roundtrip(m: &EpsilonModel) -> Result<(), String> {
    let l = labeled_collapse(m, 0).map_err(|e| e.to_string())?;
    let back = uncollapse(&l);
    if &back != m {
        return Err(format!("{m}: uncollapse gives {back}"));
    }
    if !back.is_ord_transitive_with(0) {
        return Err(format!("{m}: uncollapse image not ord-transitive"));
    }
    let again = labeled_collapse(&back, 0).map_err(|e| e.to_string())?;
    if again != l {
        return Err(format!("{m}: labeled collapse of the uncollapse is {again}"));
    }
    Ok(())
}

/// `ordclos(M)` contains `M`, is closed modulo ordinals, and no set strictly
/// between them is.
pub fn check_ordclos_minimality(m: &EpsilonModel) -> Result<(), String> {
    let c = ordclos_model(m);
    if !m.is_subset(&c) || !c.is_closed_modulo_ordinals() {
        return Err(format!("{m}: closure {c} not a closed superset"));
    }
    let extra: Vec<SetTerm> = c.elements().iter().filter(|t| !m.contains(t)).cloned().collect();
    if extra.len() > 20 {
        return Err(format!("{m}: closure too large to exhaust"));
    }
    for mask in 0u32..(1 << extra.len()).max(1) - 1 {
        let s = EpsilonModel::new(
            m.elements()
                .iter()
                .cloned()
                .chain(extra.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, t)| t.clone())),
        );
        if s.is_closed_modulo_ordinals() {
            return Err(format!("{m}: proper closed subset {s} of {c}"));
        }
    }
    if m.is_ord_absolute_with(0) && m.is_ord_transitive_with(0) != (c == *m) {
        return Err(format!("{m}: ord-transitive iff closure-fixed fails"));
    }
    if c.is_ord_absolute_with(0) && !c.is_ord_transitive_with(0) {
        return Err(format!("{m}: ord-absolute closure {c} not ord-transitive"));
    }
    if m.is_ord_transitive_with(0)
        && m.elements().iter().any(|x| ordclos(x).iter().any(|t| !m.contains(t)))
    {
        return Err(format!("{m}: element closure escapes the model"));
    }
    Ok(())
}

pub fn run(cfg: &SuiteConfig) -> Vec<Entry> {
    let card = cfg.size.min(4).min(cfg.max_carrier);
    let instance = format!("pool carriers <= {card}, seed {}", cfg.seed);
    let pool = kernel_pool();
    let all = subsets(&pool, card);
    let absolute: Vec<&EpsilonModel> = all.iter().filter(|m| m.is_ord_absolute_with(0)).collect();
    let random = random_ord_absolute(cfg.seed, 100, 6.min(cfg.max_carrier.max(2)));
    let mut collapse = Tally::new("kernel/ord-collapse", instance.clone());
    let mut labeled = Tally::new("kernel/labeled-roundtrip", instance.clone());
    for m in absolute.iter().copied().chain(random.iter()) {
        collapse.record(check_ord_collapse(m));
        if let Ok(i) = ord_collapse(m) {
            labeled.record(check_labeled_roundtrip(&i.image));
        }
    }
    let mut closure = Tally::new("kernel/ordclos-minimality", instance);
    for m in &all {
        closure.record(check_ordclos_minimality(m));
    }
    vec![collapse.entry(), labeled.entry(), closure.entry()]
}
