//! Hereditarily finite set terms with ordinal atoms.
//!
//! Every term is hash-consed through a process-wide table, so two terms are
//! equal iff they are the same allocation. The constructor keeps a single
//! canonical form: element lists are sorted and deduplicated, and a node whose
//! elements are exactly `ord(0), ..., ord(k-1)` *is* the ordinal `ord(k)`
//! (von Neumann identification; in particular `{}` is `ord(0)`).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug)]
enum Kind {
    Ord(u32),
    Node(Vec<SetTerm>),
}

#[derive(Debug)]
struct TermData {
    kind: Kind,
    rank: u32,
}

/// A canonical hereditarily finite set. Cheap to clone and compare.
#[derive(Clone)]
pub struct SetTerm(Arc<TermData>);

#[derive(PartialEq, Eq, Hash)]
enum Key {
    Ord(u32),
    Node(Vec<usize>),
}

fn table() -> &'static Mutex<HashMap<Key, SetTerm>> {
    static TABLE: OnceLock<Mutex<HashMap<Key, SetTerm>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn intern(key: Key, make: impl FnOnce() -> TermData) -> SetTerm {
    let mut table = table().lock().unwrap_or_else(|e| e.into_inner());
    table
        .entry(key)
        .or_insert_with(|| SetTerm(Arc::new(make())))
        .clone()
}

impl SetTerm {
    /// The ordinal `n`.
    pub fn ord(n: u32) -> SetTerm {
        intern(Key::Ord(n), || TermData {
            kind: Kind::Ord(n),
            rank: n,
        })
    }

    /// The empty set, which is the ordinal 0.
    pub fn empty() -> SetTerm {
        SetTerm::ord(0)
    }

    /// The set with the given elements (duplicates and order are irrelevant).
    pub fn set<I: IntoIterator<Item = SetTerm>>(elements: I) -> SetTerm {
        let mut elems: Vec<SetTerm> = elements.into_iter().collect();
        elems.sort();
        elems.dedup();
        let is_ordinal = elems
            .iter()
            .enumerate()
            .all(|(i, e)| e.as_ord() == Some(i as u32));
        if is_ordinal {
            return SetTerm::ord(elems.len() as u32);
        }
        let key = Key::Node(elems.iter().map(SetTerm::addr).collect());
        intern(key, move || {
            let rank = elems.iter().map(|e| e.rank() + 1).max().unwrap_or(0);
            TermData {
                kind: Kind::Node(elems),
                rank,
            }
        })
    }

    /// `{a}`.
    pub fn singleton(a: SetTerm) -> SetTerm {
        SetTerm::set([a])
    }

    /// Kuratowski pair `{{a}, {a, b}}`.
    pub fn pair(a: &SetTerm, b: &SetTerm) -> SetTerm {
        SetTerm::set([
            SetTerm::singleton(a.clone()),
            SetTerm::set([a.clone(), b.clone()]),
        ])
    }

    fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn as_ord(&self) -> Option<u32> {
        match self.0.kind {
            Kind::Ord(n) => Some(n),
            Kind::Node(_) => None,
        }
    }

    pub fn is_ord(&self) -> bool {
        self.as_ord().is_some()
    }

    /// Set-theoretic rank; `rank(ord(n)) = n`.
    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    /// Number of elements.
    pub fn card(&self) -> usize {
        match &self.0.kind {
            Kind::Ord(n) => *n as usize,
            Kind::Node(e) => e.len(),
        }
    }

    /// The elements, in canonical order.
    pub fn members(&self) -> Vec<SetTerm> {
        match &self.0.kind {
            Kind::Ord(n) => (0..*n).map(SetTerm::ord).collect(),
            Kind::Node(e) => e.clone(),
        }
    }

    /// Node elements without allocation; `None` for ordinals.
    pub fn node_elements(&self) -> Option<&[SetTerm]> {
        match &self.0.kind {
            Kind::Ord(_) => None,
            Kind::Node(e) => Some(e),
        }
    }

    /// Real membership `s ∈ self`.
    pub fn contains(&self, s: &SetTerm) -> bool {
        match &self.0.kind {
            Kind::Ord(n) => s.as_ord().is_some_and(|m| m < *n),
            Kind::Node(e) => e.binary_search(s).is_ok(),
        }
    }

    /// Decodes a Kuratowski pair.
    pub fn as_pair(&self) -> Option<(SetTerm, SetTerm)> {
        let elems = self.node_elements()?;
        match elems {
            [only] => {
                let inner = only.members();
                match inner.as_slice() {
                    [a] => Some((a.clone(), a.clone())),
                    _ => None,
                }
            }
            [x, y] => {
                let (single, double) = if x.card() == 1 { (x, y) } else { (y, x) };
                let a = match single.members().as_slice() {
                    [a] => a.clone(),
                    _ => return None,
                };
                let dm = double.members();
                if dm.len() != 2 || !dm.contains(&a) {
                    return None;
                }
                let b = dm.into_iter().find(|t| *t != a)?;
                Some((a, b))
            }
            _ => None,
        }
    }
}

impl PartialEq for SetTerm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for SetTerm {}

impl Hash for SetTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.addr().hash(state);
    }
}

/// Canonical term order: ordinals first (by value), then nodes by rank,
/// cardinality, and lexicographic element order. Independent of interning
/// order, so sorted output is reproducible across runs.
impl Ord for SetTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Ord(a), Kind::Ord(b)) => a.cmp(b),
            (Kind::Ord(_), Kind::Node(_)) => Ordering::Less,
            (Kind::Node(_), Kind::Ord(_)) => Ordering::Greater,
            (Kind::Node(a), Kind::Node(b)) => self
                .rank()
                .cmp(&other.rank())
                .then(a.len().cmp(&b.len()))
                .then_with(|| a.iter().cmp(b.iter())),
        }
    }
}

impl PartialOrd for SetTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Ord(n) => write!(f, "ord({n})"),
            Kind::Node(e) => {
                f.write_str("{")?;
                for (i, t) in e.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for SetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
