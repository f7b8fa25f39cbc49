//! Finite-depth perfect binary trees, their splitting fronts, and finite
//! product conditions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::TreeError;

/// A prefix-closed set of binary strings of length at most `depth`, every
/// maximal node of which has length exactly `depth`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinTree {
    depth: usize,
    nodes: BTreeSet<String>,
}

fn is_prefix(a: &str, b: &str) -> bool {
    b.starts_with(a)
}

fn comparable(a: &str, b: &str) -> bool {
    is_prefix(a, b) || is_prefix(b, a)
}

impl FinTree {
    pub fn new<I, S>(depth: usize, nodes: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let nodes: BTreeSet<String> = nodes.into_iter().map(Into::into).collect();
        if !nodes.contains("") {
            return Err(TreeError::Invalid("root missing".into()));
        }
        for v in &nodes {
            if v.chars().any(|c| c != '0' && c != '1') {
                return Err(TreeError::Invalid(format!("`{v}` is not a binary string")));
            }
            if v.len() > depth {
                return Err(TreeError::Invalid(format!("`{v}` is deeper than {depth}")));
            }
            if !v.is_empty() && !nodes.contains(&v[..v.len() - 1]) {
                return Err(TreeError::Invalid(format!("parent of `{v}` missing")));
            }
        }
        let t = FinTree { depth, nodes };
        if let Some(v) = t.nodes.iter().find(|v| v.len() < depth && t.children(v).is_empty()) {
            return Err(TreeError::Invalid(format!("`{v}` is a leaf above depth {depth}")));
        }
        Ok(t)
    }

    /// All strings of length ≤ `depth`.
    pub fn full(depth: usize) -> FinTree {
        let mut nodes = BTreeSet::from([String::new()]);
        let mut layer = vec![String::new()];
        for _ in 0..depth {
            layer = layer
                .iter()
                .flat_map(|v| [format!("{v}0"), format!("{v}1")])
                .collect();
            nodes.extend(layer.iter().cloned());
        }
        FinTree { depth, nodes }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn nodes(&self) -> &BTreeSet<String> {
        &self.nodes
    }

    pub fn contains(&self, v: &str) -> bool {
        self.nodes.contains(v)
    }

    pub fn children(&self, v: &str) -> Vec<String> {
        ["0", "1"]
            .iter()
            .map(|c| format!("{v}{c}"))
            .filter(|w| self.nodes.contains(w))
            .collect()
    }

    pub fn is_splitting(&self, v: &str) -> bool {
        self.children(v).len() == 2
    }

    pub fn leaves(&self) -> BTreeSet<String> {
        self.nodes.iter().filter(|v| v.len() == self.depth).cloned().collect()
    }

    /// Number of splitting proper prefixes of `v`.
    pub fn splitting_below(&self, v: &str) -> usize {
        (0..v.len()).filter(|k| self.is_splitting(&v[..*k])).count()
    }

    /// Splitting nodes with exactly `n` splitting proper prefixes (defined
    /// even when it is not a front).
    pub fn front_nodes(&self, n: usize) -> BTreeSet<String> {
        self.nodes
            .iter()
            .filter(|v| self.is_splitting(v) && self.splitting_below(v) == n)
            .cloned()
            .collect()
    }

    /// `F_n`, provided every branch passes through `n + 1` splitting nodes.
    pub fn splitting_front(&self, n: usize) -> Result<BTreeSet<String>, TreeError> {
        let short = self.leaves().into_iter().any(|l| {
            (0..l.len()).filter(|k| self.is_splitting(&l[..*k])).count() <= n
        });
        if short {
            return Err(TreeError::NoFront(n));
        }
        Ok(self.front_nodes(n))
    }

    /// The subtree of nodes comparable with `v`.
    pub fn above(&self, v: &str) -> Result<FinTree, TreeError> {
        if !self.contains(v) {
            return Err(TreeError::NotInPos(format!("`{v}` is not a node")));
        }
        Ok(FinTree {
            depth: self.depth,
            nodes: self.nodes.iter().filter(|w| comparable(v, w)).cloned().collect(),
        })
    }

    /// `self ⊆ other` (same depth).
    pub fn is_subtree_of(&self, other: &FinTree) -> bool {
        self.depth == other.depth && self.nodes.is_subset(&other.nodes)
    }

    /// The largest tree inside both, or `None` when they share no branch.
    pub fn meet(&self, other: &FinTree) -> Option<FinTree> {
        if self.depth != other.depth {
            return None;
        }
        let common: BTreeSet<&String> = self.nodes.intersection(&other.nodes).collect();
        let leaves: Vec<&&String> = common.iter().filter(|v| v.len() == self.depth).collect();
        if leaves.is_empty() {
            return None;
        }
        let nodes = common
            .iter()
            .filter(|v| leaves.iter().any(|l| is_prefix(v, l)))
            .map(|v| (*v).clone())
            .collect();
        Some(FinTree {
            depth: self.depth,
            nodes,
        })
    }

    /// Every tree of the given depth.
    pub fn enumerate(depth: usize) -> Vec<FinTree> {
        fn grow(prefix: &str, remaining: usize) -> Vec<BTreeSet<String>> {
            let here = BTreeSet::from([prefix.to_string()]);
            if remaining == 0 {
                return vec![here];
            }
            let left = grow(&format!("{prefix}0"), remaining - 1);
            let right = grow(&format!("{prefix}1"), remaining - 1);
            let mut out = Vec::new();
            for l in &left {
                out.push(here.union(l).cloned().collect());
            }
            for r in &right {
                out.push(here.union(r).cloned().collect());
            }
            for l in &left {
                for r in &right {
                    let mut s: BTreeSet<String> = here.union(l).cloned().collect();
                    s.extend(r.iter().cloned());
                    out.push(s);
                }
            }
            out
        }
        grow("", depth)
            .into_iter()
            .map(|nodes| FinTree { depth, nodes })
            .collect()
    }
}

impl fmt::Display for FinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tree depth={} nodes={{", self.depth)?;
        for (i, v) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "\"{v}\"")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite-support product condition: index ↦ tree, all of one depth.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductCondition {
    trees: BTreeMap<u32, FinTree>,
}

/// A choice of one front node per coordinate of `u`.
pub type Selection = BTreeMap<u32, String>;

impl ProductCondition {
    pub fn new(trees: BTreeMap<u32, FinTree>) -> Result<Self, TreeError> {
        let mut depths = trees.values().map(FinTree::depth);
        if let Some(d) = depths.next() {
            if depths.any(|e| e != d) {
                return Err(TreeError::DepthMismatch);
            }
        }
        Ok(ProductCondition { trees })
    }

    pub fn domain(&self) -> Vec<u32> {
        self.trees.keys().copied().collect()
    }

    pub fn get(&self, i: u32) -> Option<&FinTree> {
        self.trees.get(&i)
    }

    pub fn trees(&self) -> &BTreeMap<u32, FinTree> {
        &self.trees
    }

    /// `q ≤ p`: the domain grows and trees shrink.
    pub fn le(&self, p: &ProductCondition) -> bool {
        p.trees.iter().all(|(i, t)| self.trees.get(i).is_some_and(|s| s.is_subtree_of(t)))
    }

    fn check_u(&self, u: &BTreeSet<u32>) -> Result<(), TreeError> {
        match u.iter().find(|i| !self.trees.contains_key(i)) {
            Some(i) => Err(TreeError::NotInDomain(*i)),
            None => Ok(()),
        }
    }

    /// `pos_u(p, n) = ∏_{i∈u} F_n^{p(i)}`, lexicographic in `u` order.
    pub fn pos_u(&self, n: usize, u: &BTreeSet<u32>) -> Result<Vec<Selection>, TreeError> {
        self.check_u(u)?;
        let mut out = vec![Selection::new()];
        for i in u {
            let front = self.trees[i].splitting_front(n)?;
            out = out
                .into_iter()
                .flat_map(|eta| {
                    front.iter().map(move |v| {
                        let mut e = eta.clone();
                        e.insert(*i, v.clone());
                        e
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Restricts each selected tree to the part above the selected node.
    pub fn wedge_u(&self, eta: &Selection) -> Result<ProductCondition, TreeError> {
        let mut trees = self.trees.clone();
        for (i, v) in eta {
            let t = self.trees.get(i).ok_or(TreeError::NotInDomain(*i))?;
            trees.insert(*i, t.above(v)?);
        }
        Ok(ProductCondition { trees })
    }

    /// A common extension, if any.
    pub fn meet(&self, other: &ProductCondition) -> Option<ProductCondition> {
        let mut trees = self.trees.clone();
        for (i, t) in &other.trees {
            let m = match self.trees.get(i) {
                Some(s) => s.meet(t)?,
                None => t.clone(),
            };
            trees.insert(*i, m);
        }
        Some(ProductCondition { trees })
    }
}

/// `q ≤_{n,u} p`: `q ≤ p` and the `n`-th fronts agree on `u`.
pub fn le_nu(
    q: &ProductCondition,
    p: &ProductCondition,
    n: usize,
    u: &BTreeSet<u32>,
) -> Result<bool, TreeError> {
    p.check_u(u)?;
    Ok(q.le(p)
        && u.iter()
            .all(|i| q.trees[i].front_nodes(n) == p.trees[i].front_nodes(n)))
}

/// Every tuple of leaves (one per `u` coordinate) lies in exactly one wedge
/// `p ∧ η`, `η ∈ pos_u(p, n)`.
pub fn leaf_cover(p: &ProductCondition, n: usize, u: &BTreeSet<u32>) -> Result<bool, TreeError> {
    let wedges: Vec<ProductCondition> = p
        .pos_u(n, u)?
        .iter()
        .map(|eta| p.wedge_u(eta))
        .collect::<Result<_, _>>()?;
    let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
    for i in u {
        let leaves = p.trees[i].leaves();
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                leaves.iter().map(move |l| {
                    let mut t = t.clone();
                    t.push(l.clone());
                    t
                })
            })
            .collect();
    }
    Ok(tuples.iter().all(|tuple| {
        let hits = wedges
            .iter()
            .filter(|w| u.iter().zip(tuple).all(|(i, l)| w.trees[i].contains(l)))
            .count();
        hits == 1
    }))
}
