//! Oracles for collapse, labeling and closure over small ε-models.

use std::collections::{BTreeMap, BTreeSet};

use ordforge::collapse::{
    labeled_collapse, ord_collapse, ordclos, ordclos_model, transitive_collapse, uncollapse,
};
use ordforge::model::EpsilonModel;
use ordforge::suite::kernel::{kernel_pool, random_ord_absolute, subsets};
use ordforge::term::SetTerm;

use crate::{Count, Outcome};

pub type Carrier = BTreeSet<SetTerm>;

pub fn carrier(m: &EpsilonModel) -> Carrier {
    m.elements().iter().cloned().collect()
}

fn mem(a: &SetTerm, b: &SetTerm) -> bool {
    b.members().contains(a)
}

/// `t ∩ M`.
pub fn inside(t: &SetTerm, m: &Carrier) -> Vec<SetTerm> {
    t.members().into_iter().filter(|x| m.contains(x)).collect()
}

fn internal_ordinal(x: &SetTerm, m: &Carrier) -> bool {
    let e = inside(x, m);
    let transitive = e.iter().all(|y| inside(y, m).iter().all(|z| mem(z, x)));
    let linear = e
        .iter()
        .all(|y| e.iter().all(|z| y == z || mem(y, z) || mem(z, y)));
    transitive && linear
}

pub fn ord_absolute(m: &Carrier) -> bool {
    let views: BTreeSet<Vec<SetTerm>> = m.iter().map(|x| inside(x, m)).collect();
    views.len() == m.len() && m.iter().all(|x| internal_ordinal(x, m) == x.is_ord())
}

pub fn ord_transitive(m: &Carrier) -> bool {
    ord_absolute(m)
        && m.iter()
            .filter(|x| !x.is_ord())
            .all(|x| x.members().iter().all(|y| m.contains(y)))
}

/// `x ↦ {f(y) : y ∈ x ∩ M}`, with ordinals fixed when `fix` is set.
pub fn collapse(m: &Carrier, fix: bool) -> BTreeMap<SetTerm, SetTerm> {
    fn go(t: &SetTerm, m: &Carrier, fix: bool, out: &mut BTreeMap<SetTerm, SetTerm>) -> SetTerm {
        if let Some(v) = out.get(t) {
            return v.clone();
        }
        let v = if fix && t.is_ord() {
            t.clone()
        } else {
            let inner: Vec<SetTerm> = inside(t, m).iter().map(|y| go(y, m, fix, out)).collect();
            SetTerm::set(inner)
        };
        out.insert(t.clone(), v.clone());
        v
    }
    let mut out = BTreeMap::new();
    for t in m {
        go(t, m, fix, &mut out);
    }
    out
}

fn image(map: &BTreeMap<SetTerm, SetTerm>) -> Carrier {
    map.values().cloned().collect()
}

/// Every pool model of at most four elements that the oracle calls
/// ord-absolute, then 500 random ones of at most six.
fn population(count: &mut Count) -> Vec<EpsilonModel> {
    let mut out = Vec::new();
    for m in subsets(&kernel_pool(), 4) {
        let c = carrier(&m);
        let oracle = ord_absolute(&c);
        count.check(oracle == m.is_ord_absolute_with(0), || {
            format!("{m}: ord-absolute is {} by the oracle", oracle)
        });
        if oracle {
            out.push(m);
        }
    }
    let random = random_ord_absolute(7, 500, 6);
    count.check(random.len() == 500, || format!("only {} random models", random.len()));
    for m in random {
        count.check(ord_absolute(&carrier(&m)), || format!("random {m} is not ord-absolute"));
        out.push(m);
    }
    out
}

pub fn collapse_facts() -> Outcome {
    let mut count = Count::default();
    let models = population(&mut count);
    for m in &models {
        let c = carrier(m);
        let i = collapse(&c, true);
        let lib = match ord_collapse(m) {
            Ok(l) => l,
            Err(e) => {
                count.check(false, || format!("{m}: {e}"));
                continue;
            }
        };
        count.check(lib.map == i, || format!("{m}: library map {:?}", lib.map));
        let img = image(&i);
        count.check(img.len() == c.len(), || format!("{m}: not injective"));
        for s in &c {
            for t in &c {
                count.check(mem(s, t) == mem(&i[s], &i[t]), || {
                    format!("{m}: membership of {s} in {t} changes")
                });
            }
            count.check(!s.is_ord() || &i[s] == s, || format!("{m}: moves ordinal {s}"));
            count.check(s.is_ord() || !i[s].is_ord(), || format!("{m}: {s} becomes an ordinal"));
        }
        count.check(ord_transitive(&img), || format!("{m}: image not ord-transitive"));
        let identity = i.iter().all(|(k, v)| k == v);
        count.check(identity == ord_transitive(&c), || {
            format!("{m}: identity is {identity} but ord-transitive is {}", !identity)
        });
        let j = collapse(&c, false);
        let j_img = collapse(&img, false);
        count.check(c.iter().all(|x| j_img[&i[x]] == j[x]), || {
            format!("{m}: Mostowski collapse does not factor through the ord-collapse")
        });
        count.check(transitive_collapse(m).map == j, || format!("{m}: Mostowski map differs"));
        count.check(collapse(&img, true).iter().all(|(k, v)| k == v), || {
            format!("{m}: ord-collapse not idempotent")
        });
        count.check(
            ord_collapse(&lib.image).is_ok_and(|again| again.is_identity()),
            || format!("{m}: library ord-collapse of the image is not the identity"),
        );
    }
    count.finish(format!("{} ord-absolute models", models.len()))
}

pub fn labeled_roundtrip() -> Outcome {
    let mut count = Count::default();
    let models = population(&mut count);
    for m in &models {
        let t: Carrier = image(&collapse(&carrier(m), true));
        let tm = EpsilonModel::new(t.iter().cloned());
        let l = match labeled_collapse(&tm, 0) {
            Ok(l) => l,
            Err(e) => {
                count.check(false, || format!("{tm}: {e}"));
                continue;
            }
        };
        let j = collapse(&t, false);
        count.check(carrier(l.carrier()) == image(&j), || format!("{tm}: carrier {}", l.carrier()));
        let label: BTreeMap<u32, u32> = j
            .iter()
            .filter_map(|(k, v)| Some((v.as_ord()?, k.as_ord()?)))
            .collect();
        count.check(l.label() == &label, || format!("{tm}: label {:?}", l.label()));
        let strictly = label.values().zip(label.values().skip(1)).all(|(a, b)| a < b);
        count.check(strictly, || format!("{tm}: label not monotone"));
        let transitive = image(&j)
            .iter()
            .all(|x| x.members().iter().all(|y| image(&j).contains(y)));
        count.check(transitive, || format!("{tm}: carrier not transitive"));
        count.check(carrier(&uncollapse(&l)) == t, || format!("{tm}: uncollapse differs"));
        count.check(uncollapse_oracle(&image(&j), &label) == t, || {
            format!("{tm}: oracle uncollapse differs")
        });
        count.check(
            labeled_collapse(&uncollapse(&l), 0).is_ok_and(|again| again == l),
            || format!("{tm}: collapse after uncollapse differs"),
        );
    }
    count.finish(format!("{} ord-transitive images", models.len()))
}

fn uncollapse_oracle(carrier: &Carrier, label: &BTreeMap<u32, u32>) -> Carrier {
    fn go(t: &SetTerm, label: &BTreeMap<u32, u32>) -> SetTerm {
        match t.as_ord() {
            Some(k) => SetTerm::ord(label[&k]),
            None => SetTerm::set(t.members().iter().map(|y| go(y, label)).collect::<Vec<_>>()),
        }
    }
    carrier.iter().map(|t| go(t, label)).collect()
}

fn closed(m: &Carrier) -> bool {
    m.iter()
        .filter(|x| !x.is_ord())
        .all(|x| x.members().iter().all(|y| m.contains(y)))
}

fn closure(m: &Carrier) -> Carrier {
    let mut out = m.clone();
    let mut stack: Vec<SetTerm> = m.iter().cloned().collect();
    while let Some(t) = stack.pop() {
        if t.is_ord() {
            continue;
        }
        for y in t.members() {
            if out.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    out
}

pub fn ordclos_minimality() -> Outcome {
    let mut count = Count::default();
    let pool = kernel_pool();
    for t in &pool {
        let single: Carrier = [t.clone()].into();
        let expected: BTreeSet<SetTerm> = if t.is_ord() {
            BTreeSet::new()
        } else {
            closure(&single).into_iter().filter(|x| x != t).collect()
        };
        count.check(ordclos(t) == expected, || format!("ordclos({t}) = {:?}", ordclos(t)));
    }
    let models = subsets(&pool, 5);
    for m in &models {
        let c = carrier(m);
        let cl = closure(&c);
        count.check(carrier(&ordclos_model(m)) == cl, || format!("{m}: closure differs"));
        let extra: Vec<&SetTerm> = cl.difference(&c).collect();
        for mask in 0u32..(1 << extra.len()) - 1 {
            let mut s = c.clone();
            s.extend(extra.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, t)| (*t).clone()));
            count.check(!closed(&s), || format!("{m}: proper closed superset {s:?}"));
        }
        count.check(closed(&cl), || format!("{m}: closure not closed"));
    }
    count.finish(format!("{} pool carriers of at most 5 elements", models.len()))
}
