//! The forcing theorem for ord-transitive grounds as executable checks.

use std::collections::{BTreeMap, BTreeSet};

use crate::collapse::labeled_collapse;
use crate::forcing::extension::ForcingFrame;
use crate::forcing::generic::all_generic_filters;
use crate::forcing::names::{eval_name_v, is_name, is_name_in, std_name};
use crate::formula::{self, eval_formula, Assignment, Formula};
use crate::model::EpsilonModel;
use crate::report::Entry;
use crate::term::SetTerm;

/// Formulas in the free variables `x`, `y` used for truth transfer.
pub fn battery() -> Vec<(&'static str, Formula)> {
    vec![
        ("x=y", Formula::eq("x", "y")),
        ("x∈y", Formula::mem("x", "y")),
        ("x⊆y", formula::subset("x", "y")),
        ("x≠∅", formula::exists_in("z", "x", Formula::True)),
        ("ord(x)", formula::ordinal("x")),
        ("y=x+1", formula::successor_of("y", "x")),
        (
            "∀z∈x∃w∈y z∈w",
            formula::forall_in("z", "x", formula::exists_in("w", "y", Formula::mem("z", "w"))),
        ),
    ]
}

/// The bullet names reported by [`check_forcing_theorem`].
pub const BULLETS: [&str; 8] = [
    "forcing/ord-transitive",
    "forcing/end-extension",
    "forcing/ordinals",
    "forcing/standard-names",
    "forcing/truth",
    "forcing/commutes",
    "forcing/recursion=collapse",
    "forcing/cor",
];

struct Tables {
    /// Per maximal generic: `M[G]` by the recursion and the values.
    extensions: Vec<(EpsilonModel, BTreeMap<SetTerm, SetTerm>)>,
    /// `[ext][formula][pair]`: truth in `M'[H']` of the collapsed values.
    collapsed: Vec<Vec<Vec<bool>>>,
    /// The same in `M[G]` with the recursively computed values.
    direct: Vec<Vec<Vec<bool>>>,
}

fn tables(frame: &ForcingFrame, names: &[SetTerm]) -> Result<Tables, String> {
    let phis = battery();
    let mut extensions = Vec::new();
    let mut collapsed = Vec::new();
    let mut direct = Vec::new();
    for (ext, g) in frame.extensions().iter().zip(frame.generics()) {
        let vals = frame.values(&g).map_err(|e| e.to_string())?;
        let mg = EpsilonModel::new(vals.values().cloned());
        let mut c_rows = Vec::new();
        let mut d_rows = Vec::new();
        for (_, phi) in &phis {
            let mut c = Vec::new();
            let mut d = Vec::new();
            for t in names {
                for s in names {
                    let asg_c = assignment(&ext.values[t], &ext.values[s]);
                    let asg_d = assignment(&vals[t], &vals[s]);
                    c.push(eval_formula(phi, &ext.model, &asg_c).map_err(|e| e.to_string())?);
                    d.push(eval_formula(phi, &mg, &asg_d).map_err(|e| e.to_string())?);
                }
            }
            c_rows.push(c);
            d_rows.push(d);
        }
        collapsed.push(c_rows);
        direct.push(d_rows);
        extensions.push((mg, vals));
    }
    Ok(Tables {
        extensions,
        collapsed,
        direct,
    })
}

fn assignment(x: &SetTerm, y: &SetTerm) -> Assignment {
    Assignment::from([("x".to_string(), x.clone()), ("y".to_string(), y.clone())])
}

/// Checks every bullet of the forcing theorem (and the corollary
/// characterising `⊩`) on every maximal generic of `frame`. `names` are the
/// names fed to the formula battery; all names are used for the other
/// bullets.
pub fn check_forcing_theorem(frame: &ForcingFrame, names: &[SetTerm], instance: &str) -> Vec<Entry> {
    let t = match tables(frame, names) {
        Ok(t) => t,
        Err(e) => {
            return BULLETS
                .iter()
                .map(|b| Entry::new(*b, instance, false).with_witness(e.clone()))
                .collect()
        }
    };
    let results: Vec<Result<(), String>> = vec![
        ord_transitive(&t),
        end_extension(frame, &t),
        ordinals(frame, &t),
        standard_names(frame, &t),
        truth(frame, names, &t),
        commutes(frame, &t),
        recursion_matches_collapse(frame),
        corollary(frame, names, &t),
    ];
    BULLETS
        .iter()
        .zip(results)
        .map(|(b, r)| Entry::from_result(*b, instance, r))
        .collect()
}

fn ord_transitive(t: &Tables) -> Result<(), String> {
    for (mg, _) in &t.extensions {
        if let Some(why) = mg.ord_absolute_violation(0) {
            return Err(format!("M[G] = {mg}: {why}"));
        }
        if !mg.is_closed_modulo_ordinals() {
            return Err(format!("M[G] = {mg} is not closed modulo ordinals"));
        }
    }
    Ok(())
}

fn end_extension(frame: &ForcingFrame, t: &Tables) -> Result<(), String> {
    let m = frame.model();
    for (mg, _) in &t.extensions {
        for y in mg.elements() {
            if m.contains(y) {
                continue;
            }
            if let Some(x) = m.elements().iter().find(|x| x.contains(y)) {
                return Err(format!("{y} ∈ {x} ∈ M and {y} ∈ M[G] but {y} ∉ M"));
            }
        }
    }
    Ok(())
}

fn ordinals(frame: &ForcingFrame, t: &Tables) -> Result<(), String> {
    let on_m = frame.model().ordinals();
    for (mg, _) in &t.extensions {
        if mg.ordinals() != on_m {
            return Err(format!("ON^M[G] = {:?}, ON^M = {:?}", mg.ordinals(), on_m));
        }
    }
    Ok(())
}

fn standard_names(frame: &ForcingFrame, t: &Tables) -> Result<(), String> {
    let m = frame.model();
    for x in m.elements() {
        if !m.contains(&std_name(x, m, frame.poset())) {
            continue;
        }
        for (mg, _) in &t.extensions {
            if !mg.contains(x) {
                return Err(format!("{x} has its standard name in M but is missing from M[G]"));
            }
        }
    }
    Ok(())
}

fn forced(frame: &ForcingFrame, t: &Tables, p: usize, phi: usize, k: usize) -> bool {
    frame
        .extensions()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.generic.contains(&p))
        .all(|(h, _)| t.collapsed[h][phi][k])
}

fn pair_label(names: &[SetTerm], k: usize) -> String {
    let n = names.len();
    format!("x = {}, y = {}", names[k / n], names[k % n])
}

fn truth(frame: &ForcingFrame, names: &[SetTerm], t: &Tables) -> Result<(), String> {
    let phis = battery();
    for (gi, ext) in frame.extensions().iter().enumerate() {
        for (fi, (label, _)) in phis.iter().enumerate() {
            for k in 0..names.len() * names.len() {
                let lhs = t.direct[gi][fi][k];
                let rhs = ext.generic.iter().any(|p| forced(frame, t, *p, fi, k));
                if lhs != rhs {
                    return Err(format!(
                        "{label} with {}: M[G] says {lhs}, forced by some p ∈ G: {rhs}",
                        pair_label(names, k)
                    ));
                }
            }
        }
    }
    Ok(())
}

fn corollary(frame: &ForcingFrame, names: &[SetTerm], t: &Tables) -> Result<(), String> {
    let phis = battery();
    for p in frame.genericity().view.present.clone() {
        for (fi, (label, _)) in phis.iter().enumerate() {
            for k in 0..names.len() * names.len() {
                let lhs = forced(frame, t, p, fi, k);
                let rhs = frame
                    .extensions()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.generic.contains(&p))
                    .all(|(h, _)| t.direct[h][fi][k]);
                if lhs != rhs {
                    return Err(format!(
                        "p = {}, {label} with {}: p ⊩ φ is {lhs}, all M[G] ∋ p agree: {rhs}",
                        frame.poset().conditions()[p],
                        pair_label(names, k)
                    ));
                }
            }
        }
    }
    Ok(())
}

fn commutes(frame: &ForcingFrame, t: &Tables) -> Result<(), String> {
    for (ext, (mg, _)) in frame.extensions().iter().zip(&t.extensions) {
        let lc = labeled_collapse(mg, 0).map_err(|e| e.to_string())?;
        if lc != ext.labeled {
            return Err(format!("labeled collapse of M[G] is {lc}, expected {}", ext.labeled));
        }
    }
    Ok(())
}

/// The recursion and the collapse route agree on every name, for every
/// maximal generic. (When `M` misses a dense set, a non-maximal filter can be
/// generic; the two evaluations may then differ, see
/// [`non_maximal_divergence`].)
fn recursion_matches_collapse(frame: &ForcingFrame) -> Result<(), String> {
    for g in frame.generics() {
        let ext = match frame.extension_for(&g) {
            Ok(e) => e,
            Err(e) => return Err(format!("G = {}: {e}", show_set(&g))),
        };
        let vals = frame.values(&g).map_err(|e| e.to_string())?;
        for (tau, v) in &vals {
            let via = &ext.pullback.map[&ext.values[tau]];
            if via != v {
                return Err(format!(
                    "τ = {tau}, G = {}: recursion gives {v}, collapse gives {via}",
                    show_set(&g)
                ));
            }
        }
    }
    Ok(())
}

/// A non-maximal generic filter and a name on which the recursion and the
/// collapse route disagree, if one exists.
pub fn non_maximal_divergence(frame: &ForcingFrame) -> Option<(BTreeSet<SetTerm>, SetTerm)> {
    let maximal = frame.generics();
    let gs = all_generic_filters(frame.model(), frame.poset()).ok()?;
    for g in gs.into_iter().filter(|g| !maximal.contains(g)) {
        let ext = frame.extension_for(&g).ok()?;
        let vals = frame.values(&g).ok()?;
        for (tau, v) in vals {
            if &ext.pullback.map[&ext.values[&tau]] != &v {
                return Some((g, tau));
            }
        }
    }
    None
}

/// For transitive grounds the modified evaluation is the classical one.
pub fn check_transitive_agreement(frame: &ForcingFrame) -> Result<(), String> {
    for g in frame.generics() {
        for tau in frame.names() {
            let a = frame.eval_name_m(tau, &g).map_err(|e| e.to_string())?;
            let b = eval_name_v(tau, &g);
            if a != b {
                return Err(format!("τ = {tau}: τ[G]^M = {a}, τ[G] = {b}"));
            }
        }
    }
    Ok(())
}

/// Being a P-name is absolute for the ground.
pub fn check_name_absoluteness(frame: &ForcingFrame) -> Result<(), String> {
    let m = frame.model();
    for t in m.elements() {
        let (inside, outside) = (is_name_in(m, t, frame.poset()), is_name(t, frame.poset()));
        if inside != outside {
            return Err(format!("{t}: M says {inside}, V says {outside}"));
        }
    }
    Ok(())
}

pub fn show_set(g: &BTreeSet<SetTerm>) -> String {
    let parts: Vec<String> = g.iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}
