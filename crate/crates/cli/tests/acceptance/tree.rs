//! Oracles for splitting fronts of finite binary trees.

use std::collections::{BTreeMap, BTreeSet};

use ordforge::tree::{le_nu, leaf_cover, FinTree, ProductCondition};

use crate::{Count, Outcome};

fn splitting(t: &BTreeSet<String>, v: &str) -> bool {
    t.contains(&format!("{v}0")) && t.contains(&format!("{v}1"))
}

fn splitting_prefixes(t: &BTreeSet<String>, v: &str) -> usize {
    (0..v.len()).filter(|k| splitting(t, &v[..*k])).count()
}

/// `F_n`, or `None` when some branch has at most `n` splitting nodes.
fn front(t: &BTreeSet<String>, depth: usize, n: usize) -> Option<BTreeSet<String>> {
    let leaves = t.iter().filter(|v| v.len() == depth);
    if leaves.clone().any(|l| splitting_prefixes(t, l) <= n) {
        return None;
    }
    Some(
        t.iter()
            .filter(|v| splitting(t, v) && splitting_prefixes(t, v) == n)
            .cloned()
            .collect(),
    )
}

fn is_tree(t: &BTreeSet<String>, depth: usize) -> bool {
    t.contains("")
        && t.iter().all(|v| {
            v.len() <= depth
                && v.chars().all(|c| c == '0' || c == '1')
                && (v.is_empty() || t.contains(&v[..v.len() - 1]))
                && (v.len() == depth || t.contains(&format!("{v}0")) || t.contains(&format!("{v}1")))
        })
}

pub fn fronts() -> Outcome {
    let mut count = Count::default();
    let mut total = 0;
    let mut expected_count = 1usize;
    for depth in 0..=4 {
        if depth > 0 {
            expected_count = 2 * expected_count + expected_count * expected_count;
        }
        let trees = FinTree::enumerate(depth);
        let distinct: BTreeSet<&BTreeSet<String>> = trees.iter().map(FinTree::nodes).collect();
        count.check(trees.len() == expected_count && distinct.len() == trees.len(), || {
            format!("depth {depth}: {} trees, expected {expected_count}", trees.len())
        });
        total += trees.len();
        for tree in &trees {
            let t = tree.nodes();
            count.check(is_tree(t, depth), || format!("{tree} is not a tree of depth {depth}"));
            let leaves: Vec<&String> = t.iter().filter(|v| v.len() == depth).collect();
            let mut prev: Option<BTreeSet<String>> = None;
            for n in 0..=depth + 1 {
                let oracle = front(t, depth, n);
                let lib = tree.splitting_front(n).ok();
                count.check(lib == oracle, || format!("{tree}: F_{n} is {lib:?}, oracle {oracle:?}"));
                let Some(f) = oracle else {
                    prev = None;
                    continue;
                };
                count.check(n == 0 || prev.is_some(), || format!("{tree}: F_{n} exists without F_{}", n - 1));
                for a in &f {
                    for b in &f {
                        count.check(a == b || !b.starts_with(a.as_str()), || {
                            format!("{tree}: F_{n} has {a} below {b}")
                        });
                    }
                }
                for l in &leaves {
                    let hits = f.iter().filter(|v| l.starts_with(v.as_str())).count();
                    count.check(hits == 1, || format!("{tree}: leaf {l} meets F_{n} {hits} times"));
                }
                if let Some(p) = &prev {
                    count.check(
                        f.iter().all(|v| p.iter().any(|u| v.len() > u.len() && v.starts_with(u.as_str()))),
                        || format!("{tree}: F_{n} is not above F_{}", n - 1),
                    );
                    count.check(
                        p.iter().all(|u| f.iter().any(|v| v.len() > u.len() && v.starts_with(u.as_str()))),
                        || format!("{tree}: some node of F_{} has nothing of F_{n} above it", n - 1),
                    );
                }
                count.check(tree.front_nodes(n) == f, || format!("{tree}: front nodes differ at {n}"));
                prev = Some(f);
            }
        }
    }
    let products = products(&mut count);
    count.finish(format!("{total} trees of depth <= 4, {products} product conditions"))
}

fn nested(a: &str, b: &str) -> bool {
    a.starts_with(b) || b.starts_with(a)
}

/// Two-coordinate products of every pair of trees of depth at most 3: the
/// wedges over `pos_u` split the leaf tuples of `u` into disjoint pieces.
fn products(count: &mut Count) -> usize {
    let mut seen = 0;
    for depth in 0..=3 {
        let trees = FinTree::enumerate(depth);
        for a in &trees {
            for b in &trees {
                let p = ProductCondition::new(BTreeMap::from([(0, a.clone()), (1, b.clone())])).expect("same depth");
                seen += 1;
                for n in 0..=depth {
                    for u in [vec![], vec![0], vec![1], vec![0, 1]] {
                        product_case(count, &p, depth, n, &u.into_iter().collect());
                    }
                }
            }
        }
    }
    seen
}

fn product_case(count: &mut Count, p: &ProductCondition, depth: usize, n: usize, u: &BTreeSet<u32>) {
    let tree = |i: u32| p.get(i).expect("in domain").nodes();
    let fronts: Option<Vec<(u32, BTreeSet<String>)>> = u.iter().map(|i| Some((*i, front(tree(*i), depth, n)?))).collect();
    let lib = p.pos_u(n, u);
    let Some(fronts) = fronts else {
        count.check(lib.is_err(), || format!("{p:?}: pos_u({n}, {u:?}) exists without fronts"));
        return;
    };
    let mut pos: Vec<BTreeMap<u32, String>> = vec![BTreeMap::new()];
    for (i, f) in &fronts {
        pos = pos
            .into_iter()
            .flat_map(|eta| f.iter().map(move |v| {
                let mut e = eta.clone();
                e.insert(*i, v.clone());
                e
            }))
            .collect();
    }
    let Ok(lib) = lib else {
        count.check(false, || format!("{p:?}: pos_u({n}, {u:?}) failed"));
        return;
    };
    let (a, b): (BTreeSet<_>, BTreeSet<_>) = (lib.iter().collect(), pos.iter().collect());
    count.check(lib.len() == pos.len() && a == b, || format!("{p:?}: pos_u({n}, {u:?}) differs"));
    let mut wedges = Vec::new();
    for eta in &pos {
        let Ok(w) = p.wedge_u(eta) else {
            count.check(false, || format!("{p:?}: wedge at {eta:?} failed"));
            continue;
        };
        for i in [0, 1] {
            let want: BTreeSet<String> = match eta.get(&i) {
                Some(v) => tree(i).iter().filter(|x| nested(x, v)).cloned().collect(),
                None => tree(i).clone(),
            };
            count.check(w.get(i).map(FinTree::nodes) == Some(&want), || {
                format!("{p:?}: wedge at {eta:?} differs on {i}")
            });
        }
        let fronts_kept = u.iter().all(|i| {
            let fw = w.get(*i).expect("in domain").nodes();
            let agree = |t: &BTreeSet<String>| -> BTreeSet<String> {
                t.iter().filter(|v| splitting(t, v) && splitting_prefixes(t, v) == n).cloned().collect()
            };
            agree(fw) == agree(tree(*i))
        });
        count.check(le_nu(&w, p, n, u).ok() == Some(fronts_kept), || {
            format!("{p:?}: <=_(n,u) at {eta:?} is not {fronts_kept}")
        });
        wedges.push(w);
    }
    count.check(le_nu(p, p, n, u).ok() == Some(true), || format!("{p:?}: not <=_(n,u) itself"));
    let mut tuples: Vec<Vec<(u32, String)>> = vec![Vec::new()];
    for i in u {
        let leaves: Vec<String> = tree(*i).iter().filter(|v| v.len() == depth).cloned().collect();
        tuples = tuples
            .into_iter()
            .flat_map(|t| leaves.iter().map(move |l| {
                let mut t = t.clone();
                t.push((*i, l.clone()));
                t
            }))
            .collect();
    }
    let mut covered = true;
    for t in &tuples {
        let hits = wedges
            .iter()
            .filter(|w| t.iter().all(|(i, l)| w.get(*i).is_some_and(|x| x.contains(l))))
            .count();
        covered &= hits == 1;
    }
    count.check(covered, || format!("{p:?}: wedges over pos_u({n}, {u:?}) do not partition the leaves"));
    count.check(leaf_cover(p, n, u).ok() == Some(covered), || format!("{p:?}: library leaf cover differs"));
}
