//! Oracles for generics, name evaluation and forcing over generated grounds.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use ordforge::collapse::labeled_collapse;
use ordforge::forcing::extension::ForcingFrame;
use ordforge::forcing::frame::{all_frame_specs, build_frame, Frame, GAP_ORDINAL};
use ordforge::forcing::theorem::battery;
use ordforge::forcing::transfer::divergence_witness;
use ordforge::formula::{Assignment, Formula};
use ordforge::term::SetTerm;

use crate::kernel::{carrier, collapse, inside, ord_transitive, Carrier};
use crate::{Count, Outcome};

type Filter = BTreeSet<SetTerm>;

/// `(a, b)` from `{{a}, {a, b}}`.
fn unpair(e: &SetTerm) -> Option<(SetTerm, SetTerm)> {
    if e.is_ord() {
        return None;
    }
    let m = e.members();
    let single = |x: &SetTerm| {
        let xm = x.members();
        (xm.len() == 1).then(|| xm[0].clone())
    };
    match m.as_slice() {
        [x] => single(x).map(|a| (a.clone(), a)),
        [x, y] => {
            for (s, d) in [(x, y), (y, x)] {
                if let Some(a) = single(s) {
                    let dm = d.members();
                    if dm.len() == 2 && dm.contains(&a) {
                        let b = dm.into_iter().find(|t| *t != a)?;
                        return Some((a, b));
                    }
                }
            }
            None
        }
        _ => None,
    }
}

fn classical(tau: &SetTerm, g: &Filter) -> SetTerm {
    fn go(t: &SetTerm, g: &Filter, memo: &mut HashMap<SetTerm, SetTerm>) -> SetTerm {
        if let Some(v) = memo.get(t) {
            return v.clone();
        }
        let v = SetTerm::set(
            t.members()
                .iter()
                .filter_map(unpair)
                .filter(|(_, c)| g.contains(c))
                .map(|(s, _)| go(&s, g, memo))
                .collect::<Vec<_>>(),
        );
        memo.insert(t.clone(), v.clone());
        v
    }
    go(tau, g, &mut HashMap::new())
}

/// Everything the oracle derives about one ground.
struct Ground {
    m: Carrier,
    conds: Vec<SetTerm>,
    le: BTreeSet<(SetTerm, SetTerm)>,
    generics: Vec<Filter>,
    names: Vec<SetTerm>,
    j: BTreeMap<SetTerm, SetTerm>,
    j_inv: BTreeMap<SetTerm, SetTerm>,
    /// Per maximal generic: `j(τ)[j[G]]` for every name.
    collapsed: Vec<BTreeMap<SetTerm, SetTerm>>,
}

impl Ground {
    fn new(f: &Frame) -> Ground {
        let m = carrier(&f.model);
        let n = f.spec.matrix.len();
        let conds: Vec<SetTerm> = (0..n)
            .map(|i| SetTerm::set([SetTerm::ord(i as u32 + 1)]))
            .collect();
        let mut rel = f.spec.matrix.clone();
        for i in 0..n {
            rel[i][i] = true;
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if rel[a][k] && rel[k][b] {
                        rel[a][b] = true;
                    }
                }
            }
        }
        let mut le = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                if rel[a][b] {
                    le.insert((conds[a].clone(), conds[b].clone()));
                }
            }
        }
        let present: Vec<SetTerm> = conds.iter().filter(|c| m.contains(c)).cloned().collect();
        let p_term = SetTerm::set(conds.clone());
        let dense: Vec<Vec<SetTerm>> = m
            .iter()
            .map(|d| inside(d, &m))
            .filter(|d| {
                d.iter().all(|s| p_term.members().contains(s))
                    && present.iter().all(|q| d.iter().any(|r| le.contains(&(r.clone(), q.clone()))))
            })
            .collect();
        let mut generic = Vec::new();
        for mask in 1u32..1 << present.len() {
            let g: Filter = present
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, c)| c.clone())
                .collect();
            let up = g.iter().all(|a| {
                present
                    .iter()
                    .all(|b| !le.contains(&(a.clone(), b.clone())) || g.contains(b))
            });
            let directed = g.iter().all(|a| {
                g.iter().all(|b| {
                    g.iter()
                        .any(|r| le.contains(&(r.clone(), a.clone())) && le.contains(&(r.clone(), b.clone())))
                })
            });
            let meets = dense.iter().all(|d| d.iter().any(|r| g.contains(r)));
            if up && directed && meets {
                generic.push(g);
            }
        }
        let generics: Vec<Filter> = generic
            .iter()
            .filter(|g| !generic.iter().any(|h| h != *g && g.is_subset(h)))
            .cloned()
            .collect();
        let mut memo = HashMap::new();
        let names = m.iter().filter(|t| is_name(t, &conds, &mut memo)).cloned().collect::<Vec<_>>();
        let j = collapse(&m, false);
        let j_inv = j.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        let collapsed = generics
            .iter()
            .map(|g| {
                let gp: Filter = g.iter().map(|c| j[c].clone()).collect();
                names.iter().map(|t| (t.clone(), classical(&j[t], &gp))).collect()
            })
            .collect();
        Ground {
            m,
            conds,
            le,
            generics,
            names,
            j,
            j_inv,
            collapsed,
        }
    }

    fn forced_value(&self, p: &SetTerm, tau: &SetTerm) -> Option<SetTerm> {
        let vals: BTreeSet<&SetTerm> = self
            .generics
            .iter()
            .zip(&self.collapsed)
            .filter(|(g, _)| g.contains(p))
            .map(|(_, v)| &v[tau])
            .collect();
        match vals.len() {
            1 => self.j_inv.get(*vals.iter().next()?).cloned(),
            _ => None,
        }
    }

    /// `τ[G]^M` by the short-circuiting recursion.
    fn modified(&self, tau: &SetTerm, g: &Filter, memo: &mut BTreeMap<SetTerm, SetTerm>) -> SetTerm {
        if let Some(v) = memo.get(tau) {
            return v.clone();
        }
        let forced: BTreeSet<SetTerm> = g.iter().filter_map(|p| self.forced_value(p, tau)).collect();
        let v = match forced.iter().next() {
            Some(x) => x.clone(),
            None => SetTerm::set(
                inside(tau, &self.m)
                    .iter()
                    .filter_map(unpair)
                    .filter(|(_, c)| g.contains(c))
                    .map(|(s, _)| self.modified(&s, g, memo))
                    .collect::<Vec<_>>(),
            ),
        };
        memo.insert(tau.clone(), v.clone());
        v
    }

    fn values(&self, g: &Filter) -> BTreeMap<SetTerm, SetTerm> {
        let mut memo = BTreeMap::new();
        self.names.iter().map(|t| (t.clone(), self.modified(t, g, &mut memo))).collect()
    }

    /// The label `j(α) ↦ α`.
    fn label(&self) -> BTreeMap<u32, u32> {
        self.j
            .iter()
            .filter_map(|(k, v)| Some((v.as_ord()?, k.as_ord()?)))
            .collect()
    }

    fn std_name(&self, x: &SetTerm) -> SetTerm {
        self.std_name_in(x, &mut HashMap::new())
    }

    fn std_name_in(&self, x: &SetTerm, memo: &mut HashMap<SetTerm, SetTerm>) -> SetTerm {
        if let Some(v) = memo.get(x) {
            return v.clone();
        }
        let top = self
            .conds
            .iter()
            .find(|t| self.conds.iter().all(|c| self.le.contains(&(c.clone(), (*t).clone()))));
        let tops: Vec<SetTerm> = match top {
            Some(t) => vec![t.clone()],
            None => self
                .conds
                .iter()
                .filter(|a| {
                    self.conds.iter().all(|b| {
                        !self.le.contains(&((*a).clone(), b.clone())) || self.le.contains(&(b.clone(), (*a).clone()))
                    })
                })
                .cloned()
                .collect(),
        };
        let mut pairs = Vec::new();
        for y in inside(x, &self.m) {
            let yn = self.std_name_in(&y, memo);
            pairs.extend(tops.iter().map(|t| SetTerm::pair(&yn, t)));
        }
        let v = SetTerm::set(pairs);
        memo.insert(x.clone(), v.clone());
        v
    }
}

fn is_name(t: &SetTerm, conds: &[SetTerm], memo: &mut HashMap<SetTerm, bool>) -> bool {
    if let Some(v) = memo.get(t) {
        return *v;
    }
    let v = t.members().iter().all(|e| match unpair(e) {
        Some((s, c)) => conds.contains(&c) && is_name(&s, conds, memo),
        None => false,
    });
    memo.insert(t.clone(), v);
    v
}

fn pull_back(v: &SetTerm, label: &BTreeMap<u32, u32>) -> Option<SetTerm> {
    match v.as_ord() {
        Some(k) => label.get(&k).map(|a| SetTerm::ord(*a)),
        None => Some(SetTerm::set(
            v.members().iter().map(|y| pull_back(y, label)).collect::<Option<Vec<_>>>()?,
        )),
    }
}

/// Tarskian truth in a carrier with real membership; `≤` is not used.
fn holds(phi: &Formula, m: &Carrier, env: &mut Vec<(String, SetTerm)>) -> bool {
    let get = |env: &Vec<(String, SetTerm)>, v: &str| {
        env.iter().rev().find(|(k, _)| k == v).map(|(_, t)| t.clone()).expect("bound variable")
    };
    match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Mem(a, b) => get(env, b).members().contains(&get(env, a)),
        Formula::Eq(a, b) => get(env, a) == get(env, b),
        Formula::Le(..) => panic!("no order in M[G]"),
        Formula::Not(p) => !holds(p, m, env),
        Formula::And(p, q) => holds(p, m, env) && holds(q, m, env),
        Formula::Or(p, q) => holds(p, m, env) || holds(q, m, env),
        Formula::Implies(p, q) => !holds(p, m, env) || holds(q, m, env),
        Formula::Iff(p, q) => holds(p, m, env) == holds(q, m, env),
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let exists = matches!(phi, Formula::Exists(..));
            // A guard `v ∈ x` first in the body limits the range to `x ∩ M`.
            let range: Vec<SetTerm> = match body.as_ref() {
                Formula::And(g, _) | Formula::Implies(g, _) => match g.as_ref() {
                    Formula::Mem(a, x) if a == v && x != v => {
                        get(env, x).members().into_iter().filter(|t| m.contains(t)).collect()
                    }
                    _ => m.iter().cloned().collect(),
                },
                _ => m.iter().cloned().collect(),
            };
            for t in range {
                env.push((v.clone(), t));
                let r = holds(body, m, env);
                env.pop();
                if r == exists {
                    return exists;
                }
            }
            !exists
        }
    }
}

fn frames() -> Vec<(Frame, ForcingFrame)> {
    all_frame_specs(4)
        .iter()
        .map(|s| {
            let f = build_frame(s);
            let ff = ForcingFrame::new(f.model.clone(), f.poset.clone()).expect("generated ground");
            (f, ff)
        })
        .collect()
}

pub fn forcing_theorem() -> Outcome {
    let mut count = Count::default();
    let all = frames();
    let phis = battery();
    let mut instances = 0;
    for (f, frame) in &all {
        let o = Ground::new(f);
        let spec = &f.spec;
        count.check(ord_transitive(&o.m), || format!("{spec}: ground not ord-transitive"));
        let lib_names: Vec<SetTerm> = frame.names().to_vec();
        count.check(lib_names == o.names, || format!("{spec}: names differ: lib {:?} oracle {:?}", lib_names.iter().filter(|t| !o.names.contains(t)).collect::<Vec<_>>(), o.names.iter().filter(|t| !lib_names.contains(t)).collect::<Vec<_>>()));
        let lib_generics: BTreeSet<Filter> = frame.generics().into_iter().collect();
        let generics: BTreeSet<Filter> = o.generics.iter().cloned().collect();
        count.check(lib_generics == generics, || format!("{spec}: maximal generics differ"));
        if lib_generics != generics || lib_names != o.names {
            continue;
        }
        let label = o.label();
        let mut extensions: Vec<(Carrier, BTreeMap<SetTerm, SetTerm>)> = Vec::new();
        for (g, coll) in o.generics.iter().zip(&o.collapsed) {
            instances += 1;
            let vals = o.values(g);
            let lib = frame.values(g).map_err(|e| format!("{spec}: {e}"))?;
            count.check(lib == vals, || format!("{spec}: recursion values differ for {g:?}"));
            for (tau, v) in &vals {
                let back = pull_back(&coll[tau], &label);
                count.check(back.as_ref() == Some(v), || {
                    format!("{spec}: {tau} gives {v} by recursion, {back:?} by collapse")
                });
                count.check(frame.eval_name_collapse(tau, g).ok().as_ref() == Some(v), || {
                    format!("{spec}: library collapse route differs on {tau}")
                });
            }
            let mg: Carrier = vals.values().cloned().collect();
            count.check(ord_transitive(&mg), || format!("{spec}: M[G] not ord-transitive"));
            let ords = |c: &Carrier| c.iter().filter_map(SetTerm::as_ord).collect::<Vec<_>>();
            count.check(ords(&mg) == ords(&o.m), || format!("{spec}: ordinals of M[G] differ"));
            for y in mg.iter().filter(|y| !o.m.contains(y)) {
                count.check(!o.m.iter().any(|x| x.members().contains(y)), || {
                    format!("{spec}: new element {y} is a member of an old one")
                });
            }
            for x in &o.m {
                if o.m.contains(&o.std_name(x)) {
                    count.check(mg.contains(x), || format!("{spec}: {x} missing from M[G]"));
                }
            }
            let mgm = ordforge::model::EpsilonModel::new(mg.iter().cloned());
            let lc = labeled_collapse(&mgm, 0).map_err(|e| format!("{spec}: {e}"))?;
            let mprime: Carrier = coll.values().cloned().collect();
            let lbl: BTreeMap<u32, u32> = mprime
                .iter()
                .filter_map(SetTerm::as_ord)
                .map(|k| (k, label[&k]))
                .collect();
            count.check(carrier(lc.carrier()) == mprime && lc.label() == &lbl, || {
                format!("{spec}: collapse of M[G] is not (M'[G'], f')")
            });
            extensions.push((mg, vals));
        }
        let designated = &f.designated;
        for (_, phi) in &phis {
            for x in designated {
                for y in designated {
                    let asg = Assignment::from([("x".to_string(), x.clone()), ("y".to_string(), y.clone())]);
                    let truth: Vec<bool> = extensions
                        .iter()
                        .map(|(mg, vals)| {
                            let mut env = vec![("x".to_string(), vals[x].clone()), ("y".to_string(), vals[y].clone())];
                            holds(phi, mg, &mut env)
                        })
                        .collect();
                    let mut forced = BTreeMap::new();
                    for p in &o.conds {
                        let lib = frame.forces(p, phi, &asg).map_err(|e| format!("{spec}: {e}"))?;
                        let semantic = o
                            .generics
                            .iter()
                            .zip(&truth)
                            .all(|(g, t)| !g.contains(p) || *t);
                        count.check(lib == semantic, || {
                            format!("{spec}: {p} forces {phi} at x = {x}, y = {y} is {lib}")
                        });
                        forced.insert(p.clone(), lib);
                    }
                    for (g, t) in o.generics.iter().zip(&truth) {
                        let some = g.iter().any(|p| forced[p]);
                        count.check(*t == some, || {
                            format!("{spec}: truth lemma fails for {phi} at x = {x}, y = {y}")
                        });
                    }
                }
            }
        }
    }
    count.finish(format!("{} grounds, {instances} (M, P, G) instances", all.len()))
}

pub fn divergence() -> Outcome {
    let mut count = Count::default();
    let mut found = 0;
    let mut gappy = 0;
    let mut shape = None;
    for (f, frame) in frames() {
        let spec = &f.spec;
        let o = Ground::new(&f);
        let d = divergence_witness(&frame);
        if !spec.gappy {
            count.check(d.is_none(), || format!("{spec}: divergence without a gap"));
            continue;
        }
        gappy += 1;
        let Some(d) = d else { continue };
        found += 1;
        count.check(d.name == o.std_name(&d.x) && o.m.contains(&d.name), || {
            format!("{spec}: {} is not the standard name of {} in M", d.name, d.x)
        });
        count.check(o.generics.contains(&d.generic), || format!("{spec}: filter not generic"));
        let modified = o.modified(&d.name, &d.generic, &mut BTreeMap::new());
        let plain = classical(&d.name, &d.generic);
        count.check(modified == d.modified && plain == d.classical && modified != plain, || {
            format!("{spec}: oracle gives {modified} and {plain}")
        });
        if d.x == SetTerm::ord(GAP_ORDINAL) && modified == d.x {
            shape.get_or_insert(format!("x = {}, modified {modified}, classical {plain}", d.x));
        }
    }
    count.check(found > 0, || "no divergence found".into());
    count.check(shape.is_some(), || "no gappy ordinal keeps its value".into());
    count.finish(format!(
        "{found} of {gappy} gappy grounds diverge; e.g. {}",
        shape.unwrap_or_default()
    ))
}
