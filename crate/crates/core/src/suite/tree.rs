//! Front, order and wedge invariants over every tree of small depth.

use std::collections::{BTreeMap, BTreeSet};

use super::{SuiteConfig, Tally};
use crate::report::Entry;
use crate::tree::{le_nu, leaf_cover, FinTree, ProductCondition};

/// The front invariants of `t` at every level that has a front.
pub fn check_fronts(t: &FinTree) -> Result<(), String> {
    let mut prev: Option<BTreeSet<String>> = None;
    for n in 0..=t.depth() {
        let front = match t.splitting_front(n) {
            Ok(f) => f,
            Err(_) => break,
        };
        for a in &front {
            for b in &front {
                if a != b && b.starts_with(a.as_str()) {
                    return Err(format!("{t}: F_{n} not an antichain ({a}, {b})"));
                }
            }
        }
        for leaf in t.leaves() {
            let hits = front.iter().filter(|v| leaf.starts_with(v.as_str())).count();
            if hits != 1 {
                return Err(format!("{t}: leaf {leaf} meets F_{n} {hits} times"));
            }
        }
        if let Some(p) = &prev {
            if !front.iter().all(|v| p.iter().any(|u| v.starts_with(u.as_str()) && u != v)) {
                return Err(format!("{t}: F_{n} not above F_{}", n - 1));
            }
        }
        prev = Some(front);
    }
    Ok(())
}

/// Every `n` with a front: the wedges above `F_n` cover the leaves once.
pub fn check_wedges(p: &ProductCondition, u: &BTreeSet<u32>) -> Result<(), String> {
    for n in 0.. {
        match leaf_cover(p, n, u) {
            Ok(true) => {}
            Ok(false) => return Err(format!("{p:?}: leaf cover fails at n = {n}")),
            Err(_) => return Ok(()),
        }
    }
    Ok(())
}

pub fn run(cfg: &SuiteConfig) -> Vec<Entry> {
    let depth = cfg.size.clamp(1, 4);
    let instance = format!("trees of depth <= {depth}");
    let mut fronts = Tally::new("tree/fronts", instance.clone());
    let mut wedges = Tally::new("tree/wedge-cover", instance.clone());
    let mut order = Tally::new("tree/le-nu", instance.clone());
    for d in 0..=depth {
        let trees = FinTree::enumerate(d);
        for t in &trees {
            fronts.record(check_fronts(t));
            let p = ProductCondition::new(BTreeMap::from([(0, t.clone())])).expect("one tree");
            wedges.record(check_wedges(&p, &BTreeSet::from([0])));
        }
        if d <= 2 {
            let u = BTreeSet::from([0]);
            for a in &trees {
                for b in &trees {
                    let (pa, pb) = (single(a), single(b));
                    for n in 0..=d {
                        let strict = le_nu(&pa, &pb, n, &u).unwrap_or(false);
                        let weak = le_nu(&pa, &pb, n, &BTreeSet::new()).unwrap_or(false);
                        order.record(if strict && !weak {
                            Err(format!("{a} vs {b}: smaller u is weaker"))
                        } else if le_nu(&pa, &pa, n, &u) != Ok(true) {
                            Err(format!("{a}: not reflexive"))
                        } else if strict != (a.is_subtree_of(b) && a.front_nodes(n) == b.front_nodes(n)) {
                            Err(format!("{a} vs {b}: definition mismatch"))
                        } else {
                            Ok(())
                        });
                    }
                }
            }
            for a in &trees {
                for b in &trees {
                    let p = ProductCondition::new(BTreeMap::from([(0, a.clone()), (1, b.clone())]))
                        .expect("same depth");
                    wedges.record(check_wedges(&p, &BTreeSet::from([0, 1])));
                }
            }
        }
    }
    vec![fronts.entry(), wedges.entry(), order.entry()]
}

fn single(t: &FinTree) -> ProductCondition {
    ProductCondition::new(BTreeMap::from([(0, t.clone())])).expect("one tree")
}
