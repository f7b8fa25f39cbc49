//! Executes a parsed script. Declarations only report failures; every
//! command yields one or more entries, emitted in script order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::collapse::{hco_check, labeled_collapse, ord_collapse, ordclos, ordclos_model, transitive_collapse, uncollapse, Collapse};
use crate::creature::norm::{log2_norm, log2_plus_one_norm, mask_of, show_mask};
use crate::creature::{
    bigness_refine, enumerate_creatures, incompat_horizon, join, pure_decision_core, split_decomposition, stronger,
    unhalve, ConditionPrefix, Creature, GrowthProfile, Verdict,
};
use crate::dsl::printer::print_arg;
use crate::dsl::{Arg, Command, Decl, ItemKind, NepLit, PhiSpec, Script, TermExpr};
use crate::forcing::theorem::{check_forcing_theorem, show_set};
use crate::forcing::{
    condition_term, divergence_witness, enumerate_generics, eval_absoluteness_check, eval_name_m, eval_name_v,
    extend_model, forces_semantic, genericity_transfer, is_generic, ForcingFrame, Poset,
};
use crate::formula::{eval_formula, Assignment, Formula};
use crate::model::EpsilonModel;
use crate::nep::{m_version, NepParameter};
use crate::report::{Entry, Report};
use crate::suite::creature::{check_half, check_incomp};
use crate::suite::{run_suite, SuiteConfig};
use crate::term::SetTerm;
use crate::tree::{le_nu, leaf_cover, FinTree, ProductCondition};

/// Largest `F` accepted by `enumerate`.
pub const MAX_ENUMERATE: u64 = 4;

/// Listings longer than this are truncated in witnesses.
const LIST_LIMIT: usize = 16;

#[derive(Clone, Debug)]
enum Value {
    Term(SetTerm),
    Model(EpsilonModel),
    Poset(Poset),
    Formula(Formula),
    Creature(Creature),
    Condition(ConditionPrefix),
    Tree(FinTree),
    Product(ProductCondition),
    Nep(NepParameter),
}

/// Runs every item of `script` under `cfg`.
pub fn run(script: &Script, cfg: &SuiteConfig) -> Report {
    let mut r = Runner {
        cfg,
        env: HashMap::new(),
        posets: Vec::new(),
        names: Vec::new(),
    };
    let mut entries = Vec::new();
    for item in &script.items {
        match &item.kind {
            ItemKind::Decl(d) => {
                if let Err(e) = r.declare(d) {
                    entries.push(
                        Entry::new("declare", format!("{} {}", d.keyword(), d.name()), false).with_witness(e.clone()),
                    );
                    r.env.insert(d.name().to_string(), Err(e));
                }
            }
            ItemKind::Command(c) => {
                let instance: Vec<String> = c.args.iter().map(print_arg).collect();
                let instance = instance.join(" ");
                match r.command(c, &instance) {
                    Ok(es) => entries.extend(es),
                    Err(e) => entries.push(Entry::new(c.name.clone(), instance, false).with_witness(e)),
                }
            }
        }
    }
    Report::new(entries)
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    env: HashMap<String, Result<Value, String>>,
    /// Poset bindings in declaration order, for inferring `P` in `eval`.
    posets: Vec<String>,
    /// Name bindings in declaration order, fed to `theorem`.
    names: Vec<String>,
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn show_list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    let mut parts: Vec<String> = items.iter().take(LIST_LIMIT).map(f).collect();
    if items.len() > LIST_LIMIT {
        parts.push(format!("... ({} more)", items.len() - LIST_LIMIT));
    }
    parts.join("; ")
}

fn show_collapse(c: &Collapse) -> String {
    let moved: Vec<String> = c.map.iter().filter(|(k, v)| k != v).map(|(k, v)| format!("{k} -> {v}")).collect();
    if moved.is_empty() {
        format!("identity; image {}", c.image)
    } else {
        format!("moves {}; image {}", moved.join(", "), c.image)
    }
}

fn small_mask(xs: &[u32]) -> Result<u64, String> {
    match xs.iter().find(|x| **x >= 64) {
        Some(x) => Err(format!("value {x} is out of range (values must be < 64)")),
        None => Ok(mask_of(xs.iter().copied())),
    }
}

fn nep_param(lit: &NepLit) -> Result<NepParameter, String> {
    let mut out = BTreeMap::new();
    for (k, v) in &lit.0 {
        let v = match v {
            Some(v) => nep_param(v)?,
            None => NepParameter::empty(),
        };
        if out.insert(*k, v).is_some() {
            return Err(format!("ordinal {k} appears twice"));
        }
    }
    Ok(NepParameter(out))
}

/// `φ(b)`: the listed value, or else the largest listed value on a subset of
/// `b` (0 if none). This is the least monotone extension of the table.
fn table_norm(table: &[(u64, u32)], b: u64) -> u32 {
    if let Some((_, v)) = table.iter().find(|(s, _)| *s == b) {
        return *v;
    }
    table.iter().filter(|(s, _)| s & !b == 0).map(|(_, v)| *v).max().unwrap_or(0)
}

impl Runner<'_> {
    fn get(&self, name: &str) -> Result<&Value, String> {
        match self.env.get(name) {
            Some(Ok(v)) => Ok(v),
            Some(Err(e)) => Err(format!("`{name}` is unavailable: {e}")),
            None => Err(format!("`{name}` is not bound")),
        }
    }

    fn term(&self, name: &str) -> Result<SetTerm, String> {
        match self.get(name)? {
            Value::Term(t) => Ok(t.clone()),
            Value::Model(m) => Ok(m.to_term()),
            Value::Poset(p) => Ok(p.term()),
            _ => Err(format!("`{name}` is not a term")),
        }
    }

    fn filter(&self, name: &str) -> Result<BTreeSet<SetTerm>, String> {
        Ok(self.term(name)?.members().into_iter().collect())
    }

    fn eval_term(&self, e: &TermExpr) -> Result<SetTerm, String> {
        Ok(match e {
            TermExpr::Ord(n) => SetTerm::ord(*n),
            TermExpr::Set(xs) => SetTerm::set(xs.iter().map(|x| self.eval_term(x)).collect::<Result<Vec<_>, _>>()?),
            TermExpr::Pair(a, b) => SetTerm::pair(&self.eval_term(a)?, &self.eval_term(b)?),
            TermExpr::Ref(s) => self.term(s)?,
        })
    }

    fn declare(&mut self, d: &Decl) -> Result<(), String> {
        let value = match d {
            Decl::Let { term, .. } => Value::Term(self.eval_term(term)?),
            Decl::Name { name, term } => {
                self.names.push(name.clone());
                Value::Term(self.eval_term(term)?)
            }
            Decl::Filter { elems, .. } => Value::Term(SetTerm::set(
                elems.iter().map(|e| self.eval_term(e)).collect::<Result<Vec<_>, _>>()?,
            )),
            Decl::Model { closure, elems, .. } => {
                let elems = elems.iter().map(|e| self.eval_term(e)).collect::<Result<Vec<_>, _>>()?;
                let mut m = EpsilonModel::new(elems);
                if *closure {
                    m = ordclos_model(&m);
                }
                if m.len() > self.cfg.max_carrier {
                    return Err(format!("carrier has {} elements, cap is {}", m.len(), self.cfg.max_carrier));
                }
                Value::Model(m)
            }
            Decl::Poset { name, elems, le } => {
                let index = |x: &String| elems.iter().position(|e| e == x).expect("parser checked poset elements");
                let mut matrix = vec![vec![false; elems.len()]; elems.len()];
                for (a, b) in le {
                    matrix[index(a)][index(b)] = true;
                }
                for (i, e) in elems.iter().enumerate() {
                    self.env.insert(e.clone(), Ok(Value::Term(condition_term(i))));
                }
                self.posets.push(name.clone());
                Value::Poset(Poset::from_matrix(&matrix))
            }
            Decl::Formula { formula, .. } => Value::Formula(formula.clone()),
            Decl::Creature { index, val, phi, .. } => Value::Creature(self.creature_decl(*index, val, phi)?),
            Decl::Condition { profile, creatures, .. } => {
                let profile = GrowthProfile::new(profile.clone()).map_err(err)?;
                let cs = creatures
                    .iter()
                    .map(|c| match self.get(c)? {
                        Value::Creature(c) => Ok(c.clone()),
                        _ => Err(format!("`{c}` is not a creature")),
                    })
                    .collect::<Result<Vec<_>, String>>()?;
                Value::Condition(ConditionPrefix::new(profile, cs).map_err(err)?)
            }
            Decl::Tree { depth, nodes, .. } => Value::Tree(FinTree::new(*depth as usize, nodes.clone()).map_err(err)?),
            Decl::Product { entries, .. } => {
                let mut trees = BTreeMap::new();
                for (i, t) in entries {
                    let Value::Tree(tree) = self.get(t)? else {
                        return Err(format!("`{t}` is not a tree"));
                    };
                    if trees.insert(*i, tree.clone()).is_some() {
                        return Err(format!("index {i} appears twice"));
                    }
                }
                Value::Product(ProductCondition::new(trees).map_err(err)?)
            }
            Decl::Nep { param, .. } => Value::Nep(nep_param(param)?),
        };
        self.env.insert(d.name().to_string(), Ok(value));
        Ok(())
    }

    fn creature_decl(&self, index: u32, val: &[u32], phi: &PhiSpec) -> Result<Creature, String> {
        let v = small_mask(val)?;
        let index = index as usize;
        match phi {
            PhiSpec::Named(n) => {
                let f: fn(u64) -> u32 = match n.as_str() {
                    "log2" => log2_norm,
                    "log2plus1" => log2_plus_one_norm,
                    "card" => u64::count_ones,
                    _ => return Err(format!("unknown norm `{n}` (expected log2, log2plus1 or card)")),
                };
                Creature::from_fn(index, v, f).map_err(err)
            }
            PhiSpec::Table(rows) => {
                let mut table: Vec<(u64, u32)> = Vec::new();
                for (b, x) in rows {
                    let m = small_mask(b)?;
                    if m & !v != 0 {
                        return Err(format!("{} is not a subset of val {}", show_mask(m), show_mask(v)));
                    }
                    if table.iter().any(|(s, _)| *s == m) {
                        return Err(format!("{} is listed twice", show_mask(m)));
                    }
                    table.push((m, *x));
                }
                Creature::from_fn(index, v, |b| table_norm(&table, b)).map_err(err)
            }
        }
    }

    fn model(&self, name: &str) -> Result<&EpsilonModel, String> {
        match self.get(name)? {
            Value::Model(m) => Ok(m),
            _ => Err(format!("`{name}` is not a model")),
        }
    }

    fn poset(&self, name: &str) -> Result<&Poset, String> {
        match self.get(name)? {
            Value::Poset(p) => Ok(p),
            _ => Err(format!("`{name}` is not a poset")),
        }
    }

    fn formula(&self, name: &str) -> Result<&Formula, String> {
        match self.get(name)? {
            Value::Formula(f) => Ok(f),
            _ => Err(format!("`{name}` is not a formula")),
        }
    }

    fn creature(&self, name: &str) -> Result<&Creature, String> {
        match self.get(name)? {
            Value::Creature(c) => Ok(c),
            _ => Err(format!("`{name}` is not a creature")),
        }
    }

    fn condition(&self, name: &str) -> Result<&ConditionPrefix, String> {
        match self.get(name)? {
            Value::Condition(p) => Ok(p),
            _ => Err(format!("`{name}` is not a condition")),
        }
    }

    fn tree(&self, name: &str) -> Result<&FinTree, String> {
        match self.get(name)? {
            Value::Tree(t) => Ok(t),
            _ => Err(format!("`{name}` is not a tree")),
        }
    }

    fn product(&self, name: &str) -> Result<&ProductCondition, String> {
        match self.get(name)? {
            Value::Product(p) => Ok(p),
            _ => Err(format!("`{name}` is not a product condition")),
        }
    }

    fn nep(&self, name: &str) -> Result<&NepParameter, String> {
        match self.get(name)? {
            Value::Nep(p) => Ok(p),
            _ => Err(format!("`{name}` is not a nep parameter")),
        }
    }

    fn assignment(&self, bs: &[(String, String)]) -> Result<Assignment, String> {
        bs.iter().map(|(v, t)| Ok((v.clone(), self.term(t)?))).collect()
    }

    /// The last declared poset represented in `m`.
    fn infer_poset(&self, m: &EpsilonModel) -> Result<&Poset, String> {
        self.posets
            .iter()
            .rev()
            .filter_map(|n| self.poset(n).ok())
            .find(|p| m.contains(&p.term()))
            .ok_or_else(|| "no declared poset is an element of the model; pass one explicitly".to_string())
    }

    fn command(&self, c: &Command, instance: &str) -> Result<Vec<Entry>, String> {
        let a = Args(&c.args);
        let ok = |w: String| Ok(vec![Entry::new(c.name.clone(), instance, true).with_witness(w)]);
        let verdict = |holds: bool, w: String| Ok(vec![Entry::new(c.name.clone(), instance, holds).with_witness(w)]);
        match c.name.as_str() {
            "check ord-absolute" => match self.model(a.ident(0)?)?.ord_absolute_violation(0) {
                None => ok("ord-absolute".into()),
                Some(w) => verdict(false, w),
            },
            "check ord-transitive" => {
                let m = self.model(a.ident(0)?)?;
                if let Some(w) = m.ord_absolute_violation(0) {
                    return verdict(false, w);
                }
                let missing = m.elements().iter().filter(|x| !x.is_ord()).find_map(|x| {
                    x.members().into_iter().find(|y| !m.contains(y)).map(|y| format!("{y} in {x} is missing"))
                });
                match missing {
                    None => ok("ord-transitive".into()),
                    Some(w) => verdict(false, w),
                }
            }
            "check successor-absolute" => {
                let holds = self.model(a.ident(0)?)?.is_successor_absolute();
                verdict(holds, if holds { "successor-absolute" } else { "some successor is misjudged" }.into())
            }
            "check generic" => {
                let g = self.filter(a.ident(0)?)?;
                let holds = is_generic(&g, self.model(a.ident(1)?)?, self.poset(a.ident(2)?)?).map_err(err)?;
                verdict(holds, format!("G = {}", show_set(&g)))
            }
            "collapse" => ok(show_collapse(&ord_collapse(self.model(a.ident(0)?)?).map_err(err)?)),
            "mostowski" => ok(show_collapse(&transitive_collapse(self.model(a.ident(0)?)?))),
            "label" => {
                let m = self.model(a.ident(0)?)?;
                let base = a.opt_num(1).unwrap_or(0);
                let base = u32::try_from(base).map_err(|_| format!("base {base} is too large"))?;
                let l = labeled_collapse(m, base).map_err(err)?;
                let back = uncollapse(&l);
                if &back == m {
                    ok(format!("{l}; uncollapse gives M back"))
                } else {
                    verdict(false, format!("{l}; uncollapse gives {back}"))
                }
            }
            "ordclos" => ok(show_set(&ordclos(&self.term(a.ident(0)?)?))),
            "hco" => {
                let t = self.term(a.ident(0)?)?;
                let alpha = u32::try_from(a.num(1)?).unwrap_or(u32::MAX);
                let bound = usize::try_from(a.num(2)?).unwrap_or(usize::MAX);
                let holds = hco_check(&t, alpha, bound);
                verdict(holds, format!("rank {}, |ordclos| = {}", t.rank(), ordclos(&t).len()))
            }
            "holds" => {
                let phi = self.formula(a.ident(0)?)?;
                let m = self.model(a.ident(1)?)?;
                let asg = self.assignment(a.bindings(2)?)?;
                let holds = eval_formula(phi, m, &asg).map_err(err)?;
                verdict(holds, format!("{phi}"))
            }
            "mversion" => {
                let v = m_version(self.nep(a.ident(0)?)?, self.model(a.ident(1)?)?);
                let wf = if v.is_well_formed() { "well-formed" } else { "has gaps" };
                ok(format!("{v} ({wf})"))
            }
            "generics" => {
                let (mn, pn) = (a.ident(0)?, a.ident(1)?);
                let gs = enumerate_generics(self.model(mn)?, self.poset(pn)?).map_err(err)?;
                let mut out =
                    vec![Entry::new(c.name.clone(), instance, true).with_witness(format!("{} maximal generic filters", gs.len()))];
                for (k, g) in gs.iter().enumerate() {
                    out.push(
                        Entry::new("generics/filter", format!("{instance} #{}", k + 1), true).with_witness(show_set(g)),
                    );
                }
                Ok(out)
            }
            "eval" => {
                let tau = self.term(a.ident(0)?)?;
                let g = self.filter(a.ident(1)?)?;
                let m = self.model(a.ident(2)?)?;
                let p = match a.opt_ident(3) {
                    Some(p) => self.poset(p)?,
                    None => self.infer_poset(m)?,
                };
                let inside = eval_name_m(&tau, &g, m, p).map_err(err)?;
                let classical = eval_name_v(&tau, &g);
                ok(format!("M-evaluation {inside}; classical {classical}"))
            }
            "forces" => {
                let m = self.model(a.ident(0)?)?;
                let p = self.poset(a.ident(1)?)?;
                let cond = self.term(a.ident(2)?)?;
                let phi = self.formula(a.ident(3)?)?;
                let asg = self.assignment(a.bindings(4)?)?;
                let holds = forces_semantic(m, p, &cond, phi, &asg).map_err(err)?;
                verdict(holds, format!("condition {cond}, formula {phi}"))
            }
            "extend" => {
                let g = self.filter(a.ident(2)?)?;
                let mg = extend_model(self.model(a.ident(0)?)?, self.poset(a.ident(1)?)?, &g).map_err(err)?;
                ok(format!("M[G] = {mg}"))
            }
            "transfer" => {
                let g = self.filter(a.ident(2)?)?;
                let t = genericity_transfer(self.model(a.ident(0)?)?, self.poset(a.ident(1)?)?, &g).map_err(err)?;
                verdict(
                    t.generic == t.image_generic && t.identity_on_closed,
                    format!(
                        "generic {}, image generic {}, identity on closed conditions {}",
                        t.generic, t.image_generic, t.identity_on_closed
                    ),
                )
            }
            "absolute" => {
                let n = self.model(a.ident(0)?)?;
                let m = self.model(a.ident(1)?)?;
                let p = self.poset(a.ident(2)?)?;
                let g = self.filter(a.ident(3)?)?;
                let tau = self.term(a.ident(4)?)?;
                let o = eval_absoluteness_check(n, m, p, &g, &tau).map_err(err)?;
                let value = match &o.value {
                    Some((x, y)) => format!("value {x} inside, {y} outside"),
                    None => "value not computed".into(),
                };
                verdict(
                    o.agrees(),
                    format!(
                        "ord-transitive {:?}, generic {:?}, {value}",
                        o.ord_transitive, o.generic
                    ),
                )
            }
            "theorem" => {
                let frame = ForcingFrame::new(self.model(a.ident(0)?)?.clone(), self.poset(a.ident(1)?)?.clone())
                    .map_err(err)?;
                let names: Vec<SetTerm> = self
                    .names
                    .iter()
                    .filter_map(|n| self.term(n).ok())
                    .filter(|t| frame.is_name(t))
                    .collect();
                Ok(check_forcing_theorem(&frame, &names, instance))
            }
            "divergence" => {
                let frame = ForcingFrame::new(self.model(a.ident(0)?)?.clone(), self.poset(a.ident(1)?)?.clone())
                    .map_err(err)?;
                match divergence_witness(&frame) {
                    Some(d) => ok(format!(
                        "standard name of {} under G = {}: M-evaluation {}, classical {}",
                        d.x,
                        show_set(&d.generic),
                        d.modified,
                        d.classical
                    )),
                    None => verdict(false, "no standard name evaluates differently".into()),
                }
            }
            "creature validate" => match self.creature(a.ident(0)?)?.validate(None) {
                Ok(()) => ok("valid".into()),
                Err(v) => verdict(false, v.to_string()),
            },
            "stronger" => {
                let holds = stronger(self.creature(a.ident(0)?)?, self.creature(a.ident(1)?)?).map_err(err)?;
                verdict(holds, if holds { "stronger" } else { "not stronger" }.into())
            }
            "half" => {
                let c = self.creature(a.ident(0)?)?;
                let h = c.half();
                match check_half(c) {
                    Ok(()) => ok(format!("{h}; nor {}", h.nor())),
                    Err(w) => verdict(false, w),
                }
            }
            "unhalve" => {
                let c = unhalve(self.creature(a.ident(0)?)?, self.creature(a.ident(1)?)?).map_err(err)?;
                ok(format!("{c}; nor {}", c.nor()))
            }
            "join" => match join(self.creature(a.ident(0)?)?, self.creature(a.ident(1)?)?).map_err(err)? {
                Some(j) => ok(format!("{j}; nor {}", j.nor())),
                None => ok("no common strengthening (disjoint values)".into()),
            },
            "split" => {
                let b = small_mask(a.num_set(2)?)?;
                let (b0, b1) =
                    split_decomposition(self.creature(a.ident(0)?)?, self.creature(a.ident(1)?)?, b).map_err(err)?;
                ok(format!("{} = {} + {}", show_mask(b), show_mask(b0), show_mask(b1)))
            }
            "refine" => {
                let c = self.creature(a.ident(0)?)?;
                let r = bigness_refine(c, small_mask(a.num_set(1)?)?).map_err(err)?;
                verdict(r.nor() + 1 >= c.nor(), format!("{r}; nor {} -> {}", c.nor(), r.nor()))
            }
            "enumerate" => {
                let (i, f) = (a.num(0)?, a.num(1)?);
                if f > MAX_ENUMERATE {
                    return verdict(false, format!("F = {f} exceeds the enumeration bound {MAX_ENUMERATE}"));
                }
                let all = enumerate_creatures(i as usize, f as u32);
                let bad = all.iter().find_map(|c| c.validate(Some(f as u32)).err().map(|v| format!("{c}: {v}")));
                match bad {
                    None => ok(format!("{} creatures, all valid", all.len())),
                    Some(w) => verdict(false, w),
                }
            }
            "growth" => {
                let p = self.condition(a.ident(0)?)?;
                let kstar: Vec<u64> = (0..p.len()).map(|i| p.profile().kstar(i)).collect();
                let lint = p.profile().fast_growth_lint();
                ok(format!("k* = {kstar:?}; positions where F(i) <= 2^(i^k*): {lint:?}"))
            }
            "pos" => {
                let seqs = self.condition(a.ident(0)?)?.pos(a.num(1)? as usize).map_err(err)?;
                ok(format!("{} sequences: {}", seqs.len(), show_list(&seqs, |s| format!("{s:?}"))))
            }
            "wedge" => ok(self.condition(a.ident(0)?)?.wedge(a.seq(1)?).map_err(err)?.to_string()),
            "incompat" => {
                let rep = incompat_horizon(self.condition(a.ident(0)?)?, self.condition(a.ident(1)?)?, a.num(2)?)
                    .map_err(err)?;
                verdict(
                    rep.verdict != Verdict::NoWitnessAtHorizon,
                    format!("{}; disjoint at {:?}; witnesses {:?}", rep.verdict, rep.disjoint, rep.witnesses),
                )
            }
            "halving" => match check_incomp(self.condition(a.ident(0)?)?) {
                Ok(w) => ok(w),
                Err(w) => verdict(false, w),
            },
            "decide" => {
                let p = self.condition(a.ident(0)?)?;
                let lambda: BTreeSet<Vec<u32>> = a.seq_set(3)?.iter().cloned().collect();
                let levels = pure_decision_core(p, a.num(1)? as usize, a.num(2)? as usize, &lambda).map_err(err)?;
                ok(show_list(&levels, |l| {
                    format!(
                        "h={}: val {}, nor {}, {} refinements, |Lambda| = {}",
                        l.h,
                        show_mask(l.creature.val()),
                        l.creature.nor(),
                        l.refinements,
                        l.lambda.len()
                    )
                }))
            }
            "front" => {
                let f = self.tree(a.ident(0)?)?.splitting_front(a.num(1)? as usize).map_err(err)?;
                let nodes: Vec<String> = f.iter().map(|v| format!("\"{v}\"")).collect();
                ok(format!("{{{}}}", nodes.join(", ")))
            }
            "le-nu" => {
                let u: BTreeSet<u32> = a.num_set(3)?.iter().copied().collect();
                let holds = le_nu(self.product(a.ident(0)?)?, self.product(a.ident(1)?)?, a.num(2)? as usize, &u)
                    .map_err(err)?;
                verdict(holds, if holds { "below with equal fronts" } else { "not below with equal fronts" }.into())
            }
            "pos-u" => {
                let u: BTreeSet<u32> = a.num_set(2)?.iter().copied().collect();
                let sel = self.product(a.ident(0)?)?.pos_u(a.num(1)? as usize, &u).map_err(err)?;
                ok(format!("{} selections: {}", sel.len(), show_list(&sel, |s| format!("{s:?}"))))
            }
            "wedge-u" => {
                let p = self.product(a.ident(0)?)?;
                let n = a.num(1)? as usize;
                let u: BTreeSet<u32> = a.num_set(2)?.iter().copied().collect();
                let count = p.pos_u(n, &u).map_err(err)?.len();
                let holds = leaf_cover(p, n, &u).map_err(err)?;
                verdict(
                    holds,
                    format!(
                        "{count} wedges; {}",
                        if holds { "each leaf tuple lies in exactly one" } else { "leaf tuples are not partitioned" }
                    ),
                )
            }
            "suite" => {
                let mut cfg = *self.cfg;
                if let Some(k) = a.flag("size") {
                    cfg.size = usize::try_from(k).map_err(err)?;
                }
                run_suite(a.ident(0)?, &cfg)
            }
            other => Err(format!("unknown command `{other}`")),
        }
    }
}

/// Positional access to validated command arguments.
struct Args<'a>(&'a [Arg]);

impl<'a> Args<'a> {
    fn missing(k: usize) -> String {
        format!("argument {} is missing or has the wrong shape", k + 1)
    }

    fn ident(&self, k: usize) -> Result<&'a str, String> {
        match self.0.get(k) {
            Some(Arg::Ident(s)) => Ok(s),
            _ => Err(Self::missing(k)),
        }
    }

    fn opt_ident(&self, k: usize) -> Option<&'a str> {
        self.ident(k).ok()
    }

    fn num(&self, k: usize) -> Result<u64, String> {
        match self.0.get(k) {
            Some(Arg::Num(n)) => Ok(*n),
            _ => Err(Self::missing(k)),
        }
    }

    fn opt_num(&self, k: usize) -> Option<u64> {
        self.num(k).ok()
    }

    fn num_set(&self, k: usize) -> Result<&'a [u32], String> {
        match self.0.get(k) {
            Some(Arg::NumSet(v)) => Ok(v),
            _ => Err(Self::missing(k)),
        }
    }

    fn seq(&self, k: usize) -> Result<&'a [u32], String> {
        match self.0.get(k) {
            Some(Arg::Seq(v)) => Ok(v),
            _ => Err(Self::missing(k)),
        }
    }

    fn seq_set(&self, k: usize) -> Result<&'a [Vec<u32>], String> {
        match self.0.get(k) {
            Some(Arg::SeqSet(v)) => Ok(v),
            _ => Err(Self::missing(k)),
        }
    }

    fn bindings(&self, k: usize) -> Result<&'a [(String, String)], String> {
        match self.0.get(k) {
            Some(Arg::Bindings(v)) => Ok(v),
            _ => Err(Self::missing(k)),
        }
    }

    fn flag(&self, name: &str) -> Option<u64> {
        self.0.iter().find_map(|a| match a {
            Arg::Flag(f, n) if f == name => Some(*n),
            _ => None,
        })
    }
}
