//! Creatures: monotone norms with bigness on subsets of a finite value set.
//!
//! Subsets of `val` are passed around as `u64` masks over the natural
//! numbers; internally the norm is a dense table indexed by the compressed
//! mask (bit `k` = the `k`-th element of `val`).

use std::fmt;

use crate::error::CreatureError;

/// Dense storage bound: `2^MAX_VAL` table entries.
pub const MAX_VAL: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Creature {
    index: usize,
    val: u64,
    elems: Vec<u32>,
    table: Vec<u8>,
}

/// Elements of a mask, ascending.
pub fn elements(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn mask_of<I: IntoIterator<Item = u32>>(it: I) -> u64 {
    it.into_iter().fold(0, |m, x| m | 1 << x)
}

/// `⌊log2(max(1, |b|))⌋`, the example norm of a valid condition.
pub fn log2_norm(b: u64) -> u32 {
    let n = b.count_ones().max(1);
    31 - n.leading_zeros()
}

/// `⌊log2 |b|⌋ + 1` for nonempty `b` (and 0 on `∅`); singletons get norm 1.
pub fn log2_plus_one_norm(b: u64) -> u32 {
    if b == 0 {
        0
    } else {
        log2_norm(b) + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    Range,
    EmptyNorm,
    Singleton,
    Monotone,
    Bigness,
    Cardinality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.clause, self.witness)
    }
}

pub fn show_mask(m: u64) -> String {
    let parts: Vec<String> = elements(m).iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl Creature {
    /// A creature with norm `phi` (given on full masks). Nothing is
    /// validated here; see [`Creature::validate`].
    pub fn from_fn(index: usize, val: u64, phi: impl Fn(u64) -> u32) -> Result<Self, CreatureError> {
        if val == 0 {
            return Err(CreatureError::Invalid("val is empty".into()));
        }
        let elems = elements(val);
        if elems.len() > MAX_VAL {
            return Err(CreatureError::TooLarge(elems.len()));
        }
        let table = (0u64..1 << elems.len())
            .map(|local| {
                let v = phi(expand(&elems, local));
                u8::try_from(v).unwrap_or(u8::MAX)
            })
            .collect();
        Ok(Creature {
            index,
            val,
            elems,
            table,
        })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn val(&self) -> u64 {
        self.val
    }

    pub fn val_elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    /// `nor(φ) = φ(val)`.
    pub fn nor(&self) -> u32 {
        *self.table.last().expect("nonempty table") as u32
    }

    fn compress(&self, b: u64) -> usize {
        self.elems
            .iter()
            .enumerate()
            .filter(|(_, x)| b >> **x & 1 == 1)
            .fold(0, |m, (k, _)| m | 1 << k)
    }

    /// `φ(b)`; `b` must be a subset of `val`.
    pub fn phi(&self, b: u64) -> u32 {
        debug_assert_eq!(b & !self.val, 0, "subset outside val");
        self.table[self.compress(b)] as u32
    }

    /// `φ(b)` or `None` if `b ⊄ val`.
    pub fn get(&self, b: u64) -> Option<u32> {
        (b & !self.val == 0).then(|| self.phi(b))
    }

    fn local(&self, local: usize) -> u32 {
        self.table[local] as u32
    }

    /// All subsets of `val` as full masks, in compressed order.
    pub fn subsets(&self) -> impl Iterator<Item = u64> + '_ {
        (0u64..1 << self.elems.len()).map(|l| expand(&self.elems, l))
    }

    /// Checks the four defining clauses (plus `φ(b) ≤ |b|`), reporting the
    /// first violation. `f_i` bounds the values when given.
    pub fn validate(&self, f_i: Option<u32>) -> Result<(), Violation> {
        let k = self.elems.len();
        if let Some(f) = f_i {
            if let Some(x) = self.elems.iter().find(|x| **x >= f) {
                return Err(Violation {
                    clause: Clause::Range,
                    witness: format!("{x} ∉ F({}) = {f}", self.index),
                });
            }
        }
        if self.local(0) != 0 {
            return Err(Violation {
                clause: Clause::EmptyNorm,
                witness: format!("φ(∅) = {}", self.local(0)),
            });
        }
        for j in 0..k {
            if self.local(1 << j) > 1 {
                return Err(Violation {
                    clause: Clause::Singleton,
                    witness: format!("φ({{{}}}) = {}", self.elems[j], self.local(1 << j)),
                });
            }
        }
        // Monotonicity along one-element extensions implies it everywhere.
        for b in 0usize..1 << k {
            for j in 0..k {
                if b >> j & 1 == 0 && self.local(b) > self.local(b | 1 << j) {
                    return Err(Violation {
                        clause: Clause::Monotone,
                        witness: format!(
                            "φ({}) = {} > φ({}) = {}",
                            show_mask(expand(&self.elems, b as u64)),
                            self.local(b),
                            show_mask(expand(&self.elems, (b | 1 << j) as u64)),
                            self.local(b | 1 << j)
                        ),
                    });
                }
            }
        }
        // Given monotonicity, bigness reduces to partitions of each set.
        for u in 0usize..1 << k {
            let mut b = u;
            loop {
                let c = u & !b;
                if self.local(u) > self.local(b).max(self.local(c)) + 1 {
                    return Err(Violation {
                        clause: Clause::Bigness,
                        witness: format!(
                            "φ({} ∪ {}) = {} > max({}, {}) + 1",
                            show_mask(expand(&self.elems, b as u64)),
                            show_mask(expand(&self.elems, c as u64)),
                            self.local(u),
                            self.local(b),
                            self.local(c)
                        ),
                    });
                }
                if b == 0 {
                    break;
                }
                b = (b - 1) & u;
            }
        }
        for b in 0usize..1 << k {
            if self.local(b) > b.count_ones() {
                return Err(Violation {
                    clause: Clause::Cardinality,
                    witness: format!(
                        "φ({}) = {} > |b|",
                        show_mask(expand(&self.elems, b as u64)),
                        self.local(b)
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate(None).is_ok()
    }

    /// `φ` restricted to subsets of `sub ⊆ val`.
    pub fn restrict(&self, sub: u64) -> Result<Creature, CreatureError> {
        if sub & !self.val != 0 {
            return Err(CreatureError::Precondition(format!(
                "{} is not a subset of val {}",
                show_mask(sub),
                show_mask(self.val)
            )));
        }
        Creature::from_fn(self.index, sub, |b| self.phi(b))
    }

    /// `half(φ)(b) = max(0, φ(b) − ⌊nor(φ)/2⌋)`.
    pub fn half(&self) -> Creature {
        let shift = self.nor() / 2;
        Creature::from_fn(self.index, self.val, |b| self.phi(b).saturating_sub(shift))
            .expect("same val")
    }
}

fn expand(elems: &[u32], local: u64) -> u64 {
    elems
        .iter()
        .enumerate()
        .filter(|(k, _)| local >> k & 1 == 1)
        .fold(0, |m, (_, x)| m | 1 << x)
}

/// `c1 ≤ c0`: `val(c1) ⊆ val(c0)` and `φ1(b) ≤ φ0(b)` on subsets of `val(c1)`.
pub fn stronger(c1: &Creature, c0: &Creature) -> Result<bool, CreatureError> {
    if c1.index != c0.index {
        return Err(CreatureError::IndexMismatch(c1.index, c0.index));
    }
    Ok(c1.val & !c0.val == 0 && c1.subsets().all(|b| c1.phi(b) <= c0.phi(b)))
}

/// Recovers half the original norm from a strengthening of `half(c)`:
/// `c` restricted to `val(ψ)`.
pub fn unhalve(psi: &Creature, c: &Creature) -> Result<Creature, CreatureError> {
    if !stronger(psi, &c.half())? {
        return Err(CreatureError::Precondition("ψ is not stronger than half(φ)".into()));
    }
    if psi.nor() == 0 {
        return Err(CreatureError::Precondition("nor(ψ) = 0".into()));
    }
    c.restrict(psi.val)
}

/// Iterates the proper nonempty subsets `b0` of `b` with `b0 < b ∖ b0` (one
/// per unordered disjoint split).
fn splits(b: usize) -> impl Iterator<Item = (usize, usize)> {
    let mut s = b;
    std::iter::from_fn(move || loop {
        if s == 0 {
            return None;
        }
        s = (s - 1) & b;
        let t = b & !s;
        if s != 0 && t != 0 && s < t {
            return Some((s, t));
        }
        if s == 0 {
            return None;
        }
    })
}

/// The weakest creature stronger than both, or `None` when the value sets
/// are disjoint.
pub fn join(c0: &Creature, c1: &Creature) -> Result<Option<Creature>, CreatureError> {
    if c0.index != c1.index {
        return Err(CreatureError::IndexMismatch(c0.index, c1.index));
    }
    let common = c0.val & c1.val;
    if common == 0 {
        return Ok(None);
    }
    let elems = elements(common);
    let k = elems.len();
    let mut psi = vec![0u32; 1 << k];
    let mut order: Vec<usize> = (0..1 << k).collect();
    order.sort_by_key(|b| b.count_ones());
    for b in order {
        let full = expand(&elems, b as u64);
        let mut v = c0.phi(full).min(c1.phi(full));
        if b.count_ones() > 1 {
            for (s, t) in splits(b) {
                v = v.min(1 + psi[s].max(psi[t]));
            }
        }
        psi[b] = v;
    }
    let out = Creature {
        index: c0.index,
        val: common,
        elems,
        table: psi.into_iter().map(|v| v as u8).collect(),
    };
    Ok(Some(out))
}

/// `b = b0 ∪ b1` with `(φ0 ∧ φ1)(b) ≥ max(φ0(b0), φ1(b1))`, found by the
/// induction on `|b|`.
pub fn split_decomposition(c0: &Creature, c1: &Creature, b: u64) -> Result<(u64, u64), CreatureError> {
    let psi = join(c0, c1)?.ok_or_else(|| CreatureError::Precondition("value sets are disjoint".into()))?;
    if b & !psi.val != 0 {
        return Err(CreatureError::Precondition(format!(
            "{} is not a subset of the joint val",
            show_mask(b)
        )));
    }
    fn go(psi: &Creature, c0: &Creature, c1: &Creature, b: u64) -> (u64, u64) {
        let v = psi.phi(b);
        if v == c0.phi(b) {
            return (b, 0);
        }
        if v == c1.phi(b) {
            return (0, b);
        }
        let local = psi.compress(b);
        let (s, t) = splits(local)
            .find(|(s, t)| v == 1 + psi.local(*s).max(psi.local(*t)))
            .expect("the minimum is attained by some clause");
        let (s, t) = (expand(&psi.elems, s as u64), expand(&psi.elems, t as u64));
        let (d00, d10) = go(psi, c0, c1, s);
        let (d01, d11) = go(psi, c0, c1, t);
        (d00 | d01, d10 | d11)
    }
    Ok(go(&psi, c0, c1, b))
}

/// Restricts to the colour class with the larger norm (ties go to colour 0).
/// `ones` is the set of elements coloured 1. Needs `nor > 1`.
pub fn bigness_refine(c: &Creature, ones: u64) -> Result<Creature, CreatureError> {
    if c.nor() <= 1 {
        return Err(CreatureError::NormTooSmall(c.nor()));
    }
    Ok(refine_unchecked(c, ones))
}

/// [`bigness_refine`] without the norm precondition; the result is
/// homogeneous but may lose more than one unit of norm if `nor ≤ 1`.
pub(crate) fn refine_unchecked(c: &Creature, ones: u64) -> Creature {
    let one = c.val & ones;
    let zero = c.val & !ones;
    let pick = if zero == 0 {
        one
    } else if one == 0 || c.phi(zero) >= c.phi(one) {
        zero
    } else {
        one
    };
    c.restrict(pick).expect("nonempty subset of val")
}

/// Every valid creature with index `index` and value set exactly `val`.
pub fn enumerate_with_val(index: usize, val: u64) -> Vec<Creature> {
    let elems = elements(val);
    let k = elems.len();
    let mut order: Vec<usize> = (0..1 << k).collect();
    order.sort_by_key(|b| (b.count_ones(), *b));
    let mut table = vec![0u8; 1 << k];
    let mut out = Vec::new();
    fn rec(
        pos: usize,
        order: &[usize],
        table: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if pos == order.len() {
            out.push(table.clone());
            return;
        }
        let b = order[pos];
        let (lo, hi) = if b == 0 {
            (0, 0)
        } else if b.count_ones() == 1 {
            (0, 1)
        } else {
            let lo = (0..usize::BITS)
                .filter(|j| b >> j & 1 == 1)
                .map(|j| table[b & !(1 << j)])
                .max()
                .unwrap_or(0);
            let hi = splits(b)
                .map(|(s, t)| table[s].max(table[t]) + 1)
                .min()
                .unwrap_or(u8::MAX);
            (lo, hi)
        };
        for v in lo..=hi {
            table[b] = v;
            rec(pos + 1, order, table, out);
        }
    }
    let mut tables = Vec::new();
    rec(0, &order, &mut table, &mut tables);
    for t in tables {
        out.push(Creature {
            index,
            val,
            elems: elems.clone(),
            table: t,
        });
    }
    out
}

/// Every valid `index`-creature with `val ⊆ {0..f-1}`.
pub fn enumerate_creatures(index: usize, f: u32) -> Vec<Creature> {
    (1u64..1 << f)
        .flat_map(|val| enumerate_with_val(index, val))
        .collect()
}

impl fmt::Display for Creature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "creature i={} val={} phi={{", self.index, show_mask(self.val))?;
        for (k, b) in self.subsets().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", show_mask(b), self.phi(b))?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Creature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
