//! Oracles for creature norms, halving incompatibility and pure decision.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use ordforge::creature::condition::{
    halving_incompatible_pair, incompat_horizon, ConditionPrefix, GrowthProfile, Verdict,
};
use ordforge::creature::decision::pure_decision_core;
use ordforge::creature::norm::{
    bigness_refine, enumerate_creatures, join, split_decomposition, unhalve, Creature,
};

use crate::{Count, Outcome};

/// A norm as its values on every subset of `val`, in mask order of the
/// compressed subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Table {
    val: u64,
    values: Vec<u32>,
}

fn bits(mask: u64) -> Vec<u32> {
    (0..64).filter(|k| mask >> k & 1 == 1).collect()
}

/// Every subset of `val` as a full mask, ordered by compressed index.
fn subsets_of(val: u64) -> Vec<u64> {
    let e = bits(val);
    (0u64..1 << e.len())
        .map(|l| e.iter().enumerate().filter(|(k, _)| l >> k & 1 == 1).fold(0, |m, (_, x)| m | 1 << x))
        .collect()
}

impl Table {
    fn of(c: &Creature) -> Table {
        Table {
            val: c.val(),
            values: subsets_of(c.val()).iter().map(|b| c.phi(*b)).collect(),
        }
    }

    fn at(&self, b: u64) -> u32 {
        let e = bits(self.val);
        let local = e.iter().enumerate().filter(|(_, x)| b >> **x & 1 == 1).fold(0, |m, (k, _)| m | 1 << k);
        self.values[local]
    }

    fn nor(&self) -> u32 {
        *self.values.last().expect("nonempty")
    }

    fn valid(&self) -> bool {
        let subs = subsets_of(self.val);
        let n = |b: u64| self.at(b);
        n(0) == 0
            && subs.iter().all(|b| n(*b) <= b.count_ones())
            && subs.iter().all(|b| {
                subs.iter().all(|c| {
                    (b & !c != 0 || n(*b) <= n(*c)) && n(b | c) <= n(*b).max(n(*c)) + 1
                })
            })
    }

    /// `self ≤ other`.
    fn le(&self, other: &Table) -> bool {
        self.val & !other.val == 0 && subsets_of(self.val).iter().all(|b| self.at(*b) <= other.at(*b))
    }

    fn restrict(&self, sub: u64) -> Table {
        Table {
            val: sub,
            values: subsets_of(sub).iter().map(|b| self.at(*b)).collect(),
        }
    }
}

/// Every valid norm on `val` bounded pointwise by `cap`, by depth-first
/// search with the monotone lower bound and a final full validity check.
fn all_tables(val: u64, cap: &dyn Fn(u64) -> u32) -> Vec<Table> {
    let subs = subsets_of(val);
    let mut order: Vec<usize> = (0..subs.len()).collect();
    order.sort_by_key(|k| (subs[*k].count_ones(), *k));
    let mut values = vec![0u32; subs.len()];
    let mut out = Vec::new();
    fn rec(
        pos: usize,
        order: &[usize],
        subs: &[u64],
        values: &mut Vec<u32>,
        cap: &dyn Fn(u64) -> u32,
        val: u64,
        out: &mut Vec<Table>,
    ) {
        if pos == order.len() {
            let t = Table { val, values: values.clone() };
            if t.valid() {
                out.push(t);
            }
            return;
        }
        let k = order[pos];
        let lo = (0..subs.len())
            .filter(|j| *j != k && *j & !k == 0 && (k & !*j).count_ones() == 1)
            .map(|j| values[j])
            .max()
            .unwrap_or(0);
        let split = (1..k)
            .filter(|j| j & !k == 0)
            .map(|j| values[j].max(values[k & !j]) + 1)
            .min()
            .unwrap_or(u32::MAX);
        let hi = cap(subs[k]).min(subs[k].count_ones()).min(split);
        for v in lo..=hi {
            values[k] = v;
            rec(pos + 1, order, subs, values, cap, val, out);
        }
    }
    rec(0, &order, &subs, &mut values, cap, val, &mut out);
    out
}

/// The pointwise greatest valid norm on `val` below `cap`: lower `cap`
/// until monotonicity, bigness and the small-set bounds hold. Every step
/// keeps every valid norm below `cap` below the current table.
fn greatest_below(val: u64, cap: impl Fn(u64) -> u32) -> Table {
    let subs = subsets_of(val);
    let mut m: Vec<u32> = subs.iter().map(|b| cap(*b).min(b.count_ones())).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for b in 0..subs.len() {
            for c in 0..subs.len() {
                if b & !c == 0 && m[b] > m[c] {
                    m[b] = m[c];
                    changed = true;
                }
                let step = m[b].max(m[c]) + 1;
                if m[b | c] > step {
                    m[b | c] = step;
                    changed = true;
                }
            }
        }
    }
    Table { val, values: m }
}

fn to_creature(i: usize, t: &Table) -> Creature {
    Creature::from_fn(i, t.val, |b| t.at(b)).expect("nonempty val")
}

pub fn exhaustion() -> Outcome {
    let mut count = Count::default();
    let mut oracle_tables: HashMap<u64, Vec<Table>> = HashMap::new();
    for i in 0..3 {
        for f in 1..=4u32 {
            let lib = enumerate_creatures(i, f);
            let mut by_val: BTreeMap<u64, BTreeSet<Table>> = BTreeMap::new();
            for c in &lib {
                let t = Table::of(c);
                count.check(c.index() == i && c.val() >> f == 0 && t.valid(), || {
                    format!("F = {f}: {c} invalid by the oracle")
                });
                count.check(c.validate(Some(f)).is_ok(), || format!("F = {f}: {c} rejected"));
                by_val.entry(c.val()).or_default().insert(t);
            }
            for val in 1u64..1 << f {
                let expected: BTreeSet<Table> = oracle_tables
                    .entry(val)
                    .or_insert_with(|| all_tables(val, &|_| u32::MAX))
                    .iter()
                    .cloned()
                    .collect();
                let got = by_val.remove(&val).unwrap_or_default();
                count.check(got == expected, || {
                    format!("F = {f}, val {val:#b}: {} creatures, oracle {}", got.len(), expected.len())
                });
            }
            count.check(by_val.is_empty(), || format!("F = {f}: values outside F"));
        }
    }
    // The library validator against the oracle on arbitrary small tables.
    for val in [0b1u64, 0b11, 0b101, 0b111] {
        let subs = subsets_of(val);
        let total = 4u64.pow(subs.len() as u32);
        for code in 0..total {
            let values: Vec<u32> = (0..subs.len()).map(|k| (code / 4u64.pow(k as u32) % 4) as u32).collect();
            let t = Table { val, values };
            let c = to_creature(0, &t);
            count.check(c.is_valid() == t.valid(), || format!("validator disagrees on {t:?}"));
        }
    }

    let pool = enumerate_creatures(0, 4);
    let tables: Vec<Table> = pool.iter().map(Table::of).collect();
    let index: HashMap<&Table, usize> = tables.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let words = pool.len().div_ceil(64);
    let below: Vec<Vec<u64>> = tables
        .iter()
        .map(|a| {
            let mut set = vec![0u64; words];
            for (k, b) in tables.iter().enumerate() {
                if b.le(a) {
                    set[k / 64] |= 1 << (k % 64);
                }
            }
            set
        })
        .collect();
    let has = |set: &[u64], k: usize| set[k / 64] >> (k % 64) & 1 == 1;

    for (k, c) in pool.iter().enumerate() {
        let t = &tables[k];
        let nor = t.nor();
        let h = Table::of(&c.half());
        let expected = Table {
            val: t.val,
            values: t.values.iter().map(|v| v.saturating_sub(nor / 2)).collect(),
        };
        count.check(h == expected && h.valid() && h.nor() == nor.div_ceil(2), || {
            format!("half of {c}")
        });
        for (q, psi) in pool.iter().enumerate() {
            if tables[q].val & !t.val != 0 {
                continue;
            }
            let admissible = tables[q].le(&h) && tables[q].nor() > 0;
            match unhalve(psi, c) {
                Ok(r) => {
                    let r = Table::of(&r);
                    count.check(admissible, || format!("unhalve accepted {psi} for {c}"));
                    count.check(
                        r == t.restrict(tables[q].val) && r.le(t) && r.valid() && r.nor() >= nor.div_ceil(2),
                        || format!("unhalve {psi} for {c} gives nor {}", r.nor()),
                    );
                }
                Err(_) => count.check(!admissible, || format!("unhalve rejected {psi} for {c}")),
            }
        }
        if nor > 1 {
            for ones in subsets_of(t.val) {
                let r = match bigness_refine(c, ones) {
                    Ok(r) => Table::of(&r),
                    Err(e) => {
                        count.check(false, || format!("refine {c}: {e}"));
                        continue;
                    }
                };
                let (one, zero) = (t.val & ones, t.val & !ones);
                let best = t.at(one).max(t.at(zero));
                count.check(
                    (r.val & !ones == 0 || r.val & ones == 0)
                        && r == t.restrict(r.val)
                        && r.nor() == best
                        && r.nor() + 1 >= nor,
                    || format!("refine {c} by {ones:#b} gives nor {}", r.nor()),
                );
            }
        }
    }

    let mut joins = 0usize;
    for a in 0..pool.len() {
        for b in a..pool.len() {
            let common: Vec<u64> = below[a].iter().zip(&below[b]).map(|(x, y)| x & y).collect();
            let j = match join(&pool[a], &pool[b]) {
                Ok(j) => j,
                Err(e) => {
                    count.check(false, || format!("join: {e}"));
                    continue;
                }
            };
            let Some(j) = j else {
                count.check(common.iter().all(|w| *w == 0), || {
                    format!("{} and {} have a common strengthening but no join", pool[a], pool[b])
                });
                continue;
            };
            joins += 1;
            let jt = Table::of(&j);
            let Some(&jk) = index.get(&jt) else {
                count.check(false, || format!("join of {} and {} is not a creature", pool[a], pool[b]));
                continue;
            };
            let weakest = has(&below[a], jk)
                && has(&below[b], jk)
                && common.iter().zip(&below[jk]).all(|(x, y)| x & !y == 0);
            count.check(weakest, || format!("join of {} and {} is not the weakest", pool[a], pool[b]));
            for s in subsets_of(jt.val) {
                match split_decomposition(&pool[a], &pool[b], s) {
                    Ok((d0, d1)) => count.check(
                        d0 | d1 == s
                            && jt.at(s) >= tables[a].at(d0).max(tables[b].at(d1)),
                        || format!("split of {s:#b} for {} and {}", pool[a], pool[b]),
                    ),
                    Err(e) => count.check(false, || format!("split: {e}")),
                }
            }
        }
    }
    count.finish(format!(
        "F(i) <= 4, i < 3; {} creatures per index at F = 4, {joins} joins",
        pool.len()
    ))
}

fn log_norm(b: u64) -> u32 {
    match b.count_ones() {
        0 => 0,
        n => 32 - n.leading_zeros(),
    }
}

pub fn halving_pair() -> Outcome {
    let mut count = Count::default();
    let profile = GrowthProfile::new(vec![16; 4]).map_err(|e| e.to_string())?;
    let creatures = (0..4)
        .map(|i| Creature::from_fn(i, 0xffff, log_norm))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let p = ConditionPrefix::new(profile, creatures).map_err(|e| e.to_string())?;
    let pair = halving_incompatible_pair(&p).map_err(|e| e.to_string())?;
    for n in 0..4 {
        let pt = Table::of(p.get(n));
        let (q, r) = (Table::of(pair.q.get(n)), Table::of(pair.r.get(n)));
        let shift = pt.nor() / 2;
        let half = Table {
            val: pt.val,
            values: pt.values.iter().map(|v| v.saturating_sub(shift)).collect(),
        };
        count.check(q == half, || format!("q({n}) is not half(p)({n})"));
        count.check(r.val & !q.val == 0, || format!("val(r({n})) not inside val(half(p)({n}))"));
        count.check(r.le(&pt) && r == pt.restrict(r.val), || format!("r({n}) not below p({n})"));
        count.check(q.at(r.val) == 2, || format!("half(p)({n}) is {} on val(r({n}))", q.at(r.val)));
    }
    let rep = incompat_horizon(&pair.r, &pair.q, 8).map_err(|e| e.to_string())?;
    count.check(rep.verdict == Verdict::Witnessed, || format!("verdict {}", rep.verdict));
    let mut kstar = 1u64;
    let mut witnessed = Vec::new();
    for n in 0..4 {
        let (r, q) = (Table::of(pair.r.get(n)), Table::of(pair.q.get(n)));
        let weakest = greatest_below(r.val & q.val, |b| r.at(b).min(q.at(b)));
        let joint = weakest.nor() as u64;
        count.check(
            join(pair.r.get(n), pair.q.get(n)).ok().flatten().map(|j| Table::of(&j)) == Some(weakest),
            || format!("join at {n} is not the greatest common strengthening"),
        );
        let floor = r.nor().min(q.nor()) as u64;
        for m in 1..=8u64 {
            let level = m.checked_pow(kstar as u32).unwrap_or(u64::MAX);
            let hit = joint < level && level <= floor;
            let reported = rep.witnesses.iter().any(|(mm, ns)| *mm == m && ns.contains(&n));
            count.check(hit == reported, || format!("witness at n = {n}, M = {m}: oracle {hit}"));
            if hit {
                witnessed.push((m, n));
            }
        }
        kstar *= 16;
    }
    count.check(!witnessed.is_empty(), || "no witness".into());
    count.finish(format!("{} witnessed at (M, n) = {witnessed:?}", rep.verdict))
}

pub fn pure_decision() -> Outcome {
    let mut count = Count::default();
    let profile = GrowthProfile::new(vec![2, 2, 2]).map_err(|e| e.to_string())?;
    let per: Vec<Vec<Creature>> = (0..3).map(|i| enumerate_creatures(i, 2)).collect();
    let mut prefixes = 0;
    let mut runs = 0;
    for a in &per[0] {
        for b in &per[1] {
            for c in &per[2] {
                let p = ConditionPrefix::new(profile.clone(), vec![a.clone(), b.clone(), c.clone()])
                    .map_err(|e| e.to_string())?;
                prefixes += 1;
                let vals: Vec<u64> = vec![a.val(), b.val(), c.val()];
                for n in 0..=3 {
                    let pos_n = positions(&vals[..n]);
                    for seed_mask in 0u32..1 << pos_n.len() {
                        let seed: BTreeSet<Vec<u32>> = pos_n
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| seed_mask >> k & 1 == 1)
                            .map(|(_, s)| s.clone())
                            .collect();
                        for h0 in 0..=n {
                            runs += 1;
                            check_decision(&mut count, &p, &vals, h0, n, &seed);
                        }
                    }
                }
            }
        }
    }
    count.finish(format!("{prefixes} prefixes, {runs} runs over every seed and h0 <= n <= 3"))
}

fn positions(vals: &[u64]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for v in vals {
        out = out
            .into_iter()
            .flat_map(|s| {
                bits(*v).into_iter().map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn check_decision(
    count: &mut Count,
    p: &ConditionPrefix,
    vals: &[u64],
    h0: usize,
    n: usize,
    seed: &BTreeSet<Vec<u32>>,
) {
    let levels = match pure_decision_core(p, h0, n, seed) {
        Ok(l) => l,
        Err(e) => return count.check(false, || format!("{p}: {e}")),
    };
    count.check(levels.len() == n - h0, || format!("{p}: {} levels", levels.len()));
    let mut upper = seed.clone();
    for (level, h) in levels.iter().zip((h0..n).rev()) {
        let orig = Table::of(p.get(h));
        let pos_h = positions(&vals[..h]);
        count.check(p.pos(h).is_ok_and(|lib| lib == pos_h), || format!("{p}: pos({h}) differs"));
        let homogeneous = |b: u64| {
            pos_h.iter().all(|s| {
                let inside: Vec<bool> = bits(b)
                    .iter()
                    .map(|x| {
                        let mut t = s.clone();
                        t.push(*x);
                        upper.contains(&t)
                    })
                    .collect();
                inside.iter().all(|v| *v) || inside.iter().all(|v| !*v)
            })
        };
        let best = subsets_of(orig.val)
            .into_iter()
            .filter(|b| *b != 0 && homogeneous(*b))
            .map(|b| orig.at(b))
            .max()
            .unwrap_or(0);
        let got = Table::of(&level.creature);
        count.check(
            level.h == h && got == orig.restrict(got.val) && homogeneous(got.val) && got.nor() == best,
            || format!("{p}, n = {n}, seed {seed:?}, level {h}: nor {} vs best {best}", got.nor()),
        );
        let lambda: BTreeSet<Vec<u32>> = pos_h
            .iter()
            .filter(|s| {
                bits(got.val).iter().all(|x| {
                    let mut t = (*s).clone();
                    t.push(*x);
                    upper.contains(&t)
                })
            })
            .cloned()
            .collect();
        count.check(level.lambda == lambda, || format!("{p}, n = {n}, level {h}: Λ differs"));
        upper = lambda;
    }
}
