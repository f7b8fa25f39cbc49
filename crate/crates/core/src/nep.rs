//! Nep-parameters: hereditarily finite functions on ordinals.

use std::collections::BTreeMap;
use std::fmt;

use crate::model::EpsilonModel;
use crate::term::SetTerm;

/// A function from ordinals to parameters. Well-formed parameters have an
/// initial segment `{0..β)` as domain, hereditarily; `m_version` may leave
/// gaps.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NepParameter(pub BTreeMap<u32, NepParameter>);

impl NepParameter {
    pub fn empty() -> Self {
        NepParameter(BTreeMap::new())
    }

    /// The parameter with domain `{0..n)` and every value empty.
    pub fn flat(n: u32) -> Self {
        NepParameter((0..n).map(|k| (k, NepParameter::empty())).collect())
    }

    pub fn domain(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.keys().copied()
    }

    /// Hereditarily, every domain is an initial segment.
    pub fn is_well_formed(&self) -> bool {
        self.0.keys().enumerate().all(|(i, k)| *k == i as u32)
            && self.0.values().all(NepParameter::is_well_formed)
    }

    /// Encoded as the set of Kuratowski pairs `(ord(k), value)`.
    pub fn to_term(&self) -> SetTerm {
        SetTerm::set(
            self.0
                .iter()
                .map(|(k, v)| SetTerm::pair(&SetTerm::ord(*k), &v.to_term())),
        )
    }

    pub fn depth(&self) -> usize {
        self.0.values().map(|v| v.depth() + 1).max().unwrap_or(0)
    }
}

/// `𝔭_M`: restrict the domain to the ordinals of `M`, recursively.
pub fn m_version(p: &NepParameter, m: &EpsilonModel) -> NepParameter {
    NepParameter(
        p.0.iter()
            .filter(|(k, _)| m.contains(&SetTerm::ord(**k)))
            .map(|(k, v)| (*k, m_version(v, m)))
            .collect(),
    )
}

impl fmt::Display for NepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if v.0.is_empty() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}:{v}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for NepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ords(ns: &[u32]) -> EpsilonModel {
        EpsilonModel::new(ns.iter().map(|n| SetTerm::ord(*n)))
    }

    #[test]
    fn restriction_drops_missing_ordinals() {
        let p = NepParameter::flat(3);
        let v = m_version(&p, &ords(&[0, 2]));
        assert_eq!(v.domain().collect::<Vec<_>>(), vec![0, 2]);
        assert!(!v.is_well_formed());
    }

    #[test]
    fn empty_parameter() {
        assert_eq!(m_version(&NepParameter::empty(), &ords(&[0, 1])), NepParameter::empty());
    }

    #[test]
    fn nested_restriction_composes() {
        let inner = NepParameter::flat(3);
        let p = NepParameter((0..3).map(|k| (k, inner.clone())).collect());
        let n = ords(&[0, 1, 2]);
        let m = ords(&[1, 2]);
        assert_eq!(m_version(&m_version(&p, &n), &m), m_version(&p, &m));
        assert_eq!(p.depth(), 2);
    }
}
