//! Bounded first-order formulas over `{∈, =}` (plus an optional order symbol
//! `≤` for posets) and their Tarskian evaluation over finite structures.

use std::collections::HashMap;
use std::fmt;

use crate::error::EvalError;
use crate::model::EpsilonModel;
use crate::term::SetTerm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Mem(String, String),
    Eq(String, String),
    /// The poset order; only meaningful in structures that interpret it.
    Le(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

/// A finite structure a formula can be evaluated in.
pub trait Structure {
    fn carrier(&self) -> &[SetTerm];
    /// `a ∈ b` restricted to the carrier.
    fn mem(&self, a: &SetTerm, b: &SetTerm) -> bool;
    /// Interpretation of `≤`, if the structure has one.
    fn le(&self, _a: &SetTerm, _b: &SetTerm) -> Option<bool> {
        None
    }
    /// Carrier elements that are members of `x`; used for bounded
    /// quantifiers.
    fn members_of(&self, x: &SetTerm) -> Vec<SetTerm> {
        self.carrier().iter().filter(|t| self.mem(t, x)).cloned().collect()
    }
}

impl Structure for EpsilonModel {
    fn carrier(&self) -> &[SetTerm] {
        self.elements()
    }

    fn mem(&self, a: &SetTerm, b: &SetTerm) -> bool {
        b.contains(a)
    }

    fn members_of(&self, x: &SetTerm) -> Vec<SetTerm> {
        self.ext(x)
    }
}

pub type Assignment = HashMap<String, SetTerm>;

/// Evaluates `phi` in `model` under `assignment`. Quantifiers range over the
/// carrier; free variables must be bound.
pub fn eval_formula(
    phi: &Formula,
    model: &EpsilonModel,
    assignment: &Assignment,
) -> Result<bool, EvalError> {
    eval_in(phi, model, assignment)
}

pub fn eval_in<S: Structure + ?Sized>(
    phi: &Formula,
    structure: &S,
    assignment: &Assignment,
) -> Result<bool, EvalError> {
    let mut env: Vec<(&str, SetTerm)> = assignment
        .iter()
        .map(|(k, v)| (k.as_str(), v.clone()))
        .collect();
    Evaluator { structure }.eval(phi, &mut env)
}

/// Recognises `v ∈ x ∧ rest` (existential) or `v ∈ x → rest` (universal)
/// with `x ≠ v`, so the quantifier can range over the members of `x` only.
fn bounded<'f>(v: &str, body: &'f Formula, existential: bool) -> Option<(&'f str, &'f Formula)> {
    let (guard, rest) = match (body, existential) {
        (Formula::And(g, r), true) | (Formula::Implies(g, r), false) => (g, r),
        _ => return None,
    };
    match guard.as_ref() {
        Formula::Mem(a, x) if a == v && x != v => Some((x.as_str(), rest.as_ref())),
        _ => None,
    }
}

struct Evaluator<'s, S: ?Sized> {
    structure: &'s S,
}

impl<S: Structure + ?Sized> Evaluator<'_, S> {
    fn lookup(&self, env: &[(&str, SetTerm)], v: &str) -> Result<SetTerm, EvalError> {
        env.iter()
            .rev()
            .find(|(name, _)| *name == v)
            .map(|(_, t)| t.clone())
            .ok_or_else(|| EvalError::UnboundVariable(v.to_string()))
    }

    fn eval<'f>(&self, phi: &'f Formula, env: &mut Vec<(&'f str, SetTerm)>) -> Result<bool, EvalError> {
        Ok(match phi {
            Formula::True => true,
            Formula::False => false,
            Formula::Mem(a, b) => {
                let (a, b) = (self.lookup(env, a)?, self.lookup(env, b)?);
                self.structure.mem(&a, &b)
            }
            Formula::Eq(a, b) => self.lookup(env, a)? == self.lookup(env, b)?,
            Formula::Le(a, b) => {
                let (a, b) = (self.lookup(env, a)?, self.lookup(env, b)?);
                self.structure.le(&a, &b).ok_or(EvalError::NoOrder)?
            }
            Formula::Not(p) => !self.eval(p, env)?,
            Formula::And(p, q) => self.eval(p, env)? && self.eval(q, env)?,
            Formula::Or(p, q) => self.eval(p, env)? || self.eval(q, env)?,
            Formula::Implies(p, q) => !self.eval(p, env)? || self.eval(q, env)?,
            Formula::Iff(p, q) => self.eval(p, env)? == self.eval(q, env)?,
            Formula::Exists(v, body) => {
                if let Some((x, rest)) = bounded(v, body, true) {
                    let bound = self.lookup(env, x)?;
                    for t in self.structure.members_of(&bound) {
                        env.push((v.as_str(), t));
                        let r = self.eval(rest, env);
                        env.pop();
                        if r? {
                            return Ok(true);
                        }
                    }
                    return Ok(false);
                }
                for t in self.structure.carrier() {
                    env.push((v.as_str(), t.clone()));
                    let r = self.eval(body, env);
                    env.pop();
                    if r? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Forall(v, body) => {
                if let Some((x, rest)) = bounded(v, body, false) {
                    let bound = self.lookup(env, x)?;
                    for t in self.structure.members_of(&bound) {
                        env.push((v.as_str(), t));
                        let r = self.eval(rest, env);
                        env.pop();
                        if !r? {
                            return Ok(false);
                        }
                    }
                    return Ok(true);
                }
                for t in self.structure.carrier() {
                    env.push((v.as_str(), t.clone()));
                    let r = self.eval(body, env);
                    env.pop();
                    if !r? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }
}

impl Formula {
    pub fn mem(a: &str, b: &str) -> Formula {
        Formula::Mem(a.into(), b.into())
    }
    pub fn eq(a: &str, b: &str) -> Formula {
        Formula::Eq(a.into(), b.into())
    }
    pub fn le(a: &str, b: &str) -> Formula {
        Formula::Le(a.into(), b.into())
    }
    pub fn not(p: Formula) -> Formula {
        Formula::Not(Box::new(p))
    }
    pub fn and(p: Formula, q: Formula) -> Formula {
        Formula::And(Box::new(p), Box::new(q))
    }
    pub fn or(p: Formula, q: Formula) -> Formula {
        Formula::Or(Box::new(p), Box::new(q))
    }
    pub fn implies(p: Formula, q: Formula) -> Formula {
        Formula::Implies(Box::new(p), Box::new(q))
    }
    pub fn iff(p: Formula, q: Formula) -> Formula {
        Formula::Iff(Box::new(p), Box::new(q))
    }
    pub fn exists(v: &str, p: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(p))
    }
    pub fn forall(v: &str, p: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(p))
    }

    /// Free variables, sorted.
    pub fn free_vars(&self) -> Vec<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            let see = |v: &String, bound: &Vec<String>, out: &mut Vec<String>| {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            };
            match f {
                Formula::True | Formula::False => {}
                Formula::Mem(a, b) | Formula::Eq(a, b) | Formula::Le(a, b) => {
                    see(a, bound, out);
                    see(b, bound, out);
                }
                Formula::Not(p) => go(p, bound, out),
                Formula::And(p, q)
                | Formula::Or(p, q)
                | Formula::Implies(p, q)
                | Formula::Iff(p, q) => {
                    go(p, bound, out);
                    go(q, bound, out);
                }
                Formula::Exists(v, p) | Formula::Forall(v, p) => {
                    bound.push(v.clone());
                    go(p, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

/// Bounded shorthands: `∀y (y ∈ x → body)` and `∃y (y ∈ x ∧ body)`.
pub fn forall_in(y: &str, x: &str, body: Formula) -> Formula {
    Formula::forall(y, Formula::implies(Formula::mem(y, x), body))
}

pub fn exists_in(y: &str, x: &str, body: Formula) -> Formula {
    Formula::exists(y, Formula::and(Formula::mem(y, x), body))
}

/// `x` is transitive.
pub fn transitive(x: &str) -> Formula {
    forall_in("_t1", x, forall_in("_t2", "_t1", Formula::mem("_t2", x)))
}

/// `x` is an ordinal: transitive and linearly ordered by `∈`.
pub fn ordinal(x: &str) -> Formula {
    let linear = forall_in(
        "_l1",
        x,
        forall_in(
            "_l2",
            x,
            Formula::or(
                Formula::mem("_l1", "_l2"),
                Formula::or(Formula::eq("_l1", "_l2"), Formula::mem("_l2", "_l1")),
            ),
        ),
    );
    Formula::and(transitive(x), linear)
}

/// `x ⊆ y`.
pub fn subset(x: &str, y: &str) -> Formula {
    forall_in("_s", x, Formula::mem("_s", y))
}

/// `z = x ∪ y`.
pub fn union_is(x: &str, y: &str, z: &str) -> Formula {
    Formula::forall(
        "_u",
        Formula::iff(
            Formula::mem("_u", z),
            Formula::or(Formula::mem("_u", x), Formula::mem("_u", y)),
        ),
    )
}

/// `z = {a, b}`.
pub fn unordered_pair_is(z: &str, a: &str, b: &str) -> Formula {
    Formula::forall(
        "_p",
        Formula::iff(
            Formula::mem("_p", z),
            Formula::or(Formula::eq("_p", a), Formula::eq("_p", b)),
        ),
    )
}

/// `a = b + 1`, i.e. `a = b ∪ {b}`.
pub fn successor_of(a: &str, b: &str) -> Formula {
    Formula::forall(
        "_z",
        Formula::iff(
            Formula::mem("_z", a),
            Formula::or(Formula::mem("_z", b), Formula::eq("_z", b)),
        ),
    )
}

/// `D ⊆ P` and every element of `P` has an extension in `D`.
pub fn dense_in(d: &str, p: &str) -> Formula {
    Formula::and(
        subset(d, p),
        forall_in("_q", p, exists_in("_r", d, Formula::le("_r", "_q"))),
    )
}

/// `a` and `b` have a common extension in `p`.
pub fn compatible_in(a: &str, b: &str, p: &str) -> Formula {
    exists_in(
        "_c",
        p,
        Formula::and(Formula::le("_c", a), Formula::le("_c", b)),
    )
}

/// Dense and closed downwards inside `p`.
pub fn open_dense_in(d: &str, p: &str) -> Formula {
    Formula::and(
        dense_in(d, p),
        forall_in(
            "_o1",
            d,
            forall_in(
                "_o2",
                p,
                Formula::implies(Formula::le("_o2", "_o1"), Formula::mem("_o2", d)),
            ),
        ),
    )
}

/// `D ⊆ P` and every condition is compatible with some member of `D`.
pub fn predense_in(d: &str, p: &str) -> Formula {
    Formula::and(
        subset(d, p),
        forall_in("_q", p, exists_in("_r", d, compatible_in("_q", "_r", p))),
    )
}

/// `D ⊆ P` and distinct members of `D` are incompatible.
pub fn antichain_in(d: &str, p: &str) -> Formula {
    Formula::and(
        subset(d, p),
        forall_in(
            "_a1",
            d,
            forall_in(
                "_a2",
                d,
                Formula::or(
                    Formula::eq("_a1", "_a2"),
                    Formula::not(compatible_in("_a1", "_a2", p)),
                ),
            ),
        ),
    )
}

pub fn max_antichain_in(d: &str, p: &str) -> Formula {
    Formula::and(antichain_in(d, p), predense_in(d, p))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Mem(a, b) => write!(f, "{a} in {b}"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Le(a, b) => write!(f, "{a} <= {b}"),
            Formula::Not(p) => write!(f, "not ({p})"),
            Formula::And(p, q) => write!(f, "({p}) and ({q})"),
            Formula::Or(p, q) => write!(f, "({p}) or ({q})"),
            Formula::Implies(p, q) => write!(f, "({p}) -> ({q})"),
            Formula::Iff(p, q) => write!(f, "({p}) <-> ({q})"),
            Formula::Exists(v, p) => write!(f, "exists {v} ({p})"),
            Formula::Forall(v, p) => write!(f, "forall {v} ({p})"),
        }
    }
}
