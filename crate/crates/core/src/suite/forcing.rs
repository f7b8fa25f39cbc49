//! Forcing checks over every generated frame up to a number of conditions.

use std::collections::{BTreeMap, BTreeSet};

use super::{SuiteConfig, Tally};
use crate::collapse::ordclos_model;
use crate::forcing::theorem::{check_forcing_theorem, show_set, BULLETS};
use crate::forcing::{
    all_frame_specs, build_frame, divergence_witness, eval_absoluteness_check, genericity_transfer,
    is_generic, ForcingFrame,
};
use crate::model::EpsilonModel;
use crate::report::Entry;
use crate::term::SetTerm;

/// A node outside every frame: `{c_0, ord(20)}` (the model sees `{c_0}`).
fn junk(frame: &ForcingFrame) -> SetTerm {
    SetTerm::set([frame.poset().conditions()[0].clone(), SetTerm::ord(20)])
}

pub fn run(cfg: &SuiteConfig) -> Vec<Entry> {
    let points = cfg.size.clamp(1, 4);
    let instance = format!("frames with <= {points} conditions");
    let mut bullets: BTreeMap<&str, Tally> =
        BULLETS.iter().map(|b| (*b, Tally::new(*b, instance.clone()))).collect();
    let mut restricted = Tally::new("forcing/generic-iff-restricted", instance.clone());
    let mut transfer = Tally::new("forcing/genericity-transfer", instance.clone());
    let mut absolute = Tally::new("forcing/eval-absoluteness", instance.clone());
    let mut divergence = None;
    let mut capped = 0;
    for spec in all_frame_specs(points) {
        let f = build_frame(&spec);
        if f.model.len() > cfg.max_carrier {
            capped += 1;
            continue;
        }
        let label = spec.to_string();
        let frame = match ForcingFrame::new(f.model.clone(), f.poset.clone()) {
            Ok(fr) => fr,
            Err(e) => {
                for t in bullets.values_mut() {
                    t.record(Err(format!("{label}: {e}")));
                }
                continue;
            }
        };
        for e in check_forcing_theorem(&frame, &f.designated, &label) {
            if let Some(t) = bullets.get_mut(e.check.as_str()) {
                t.record(if e.holds {
                    Ok(())
                } else {
                    Err(format!("{label}: {}", e.witness.unwrap_or_default()))
                });
            }
        }
        if divergence.is_none() {
            divergence = divergence_witness(&frame).map(|d| {
                format!(
                    "{label}: x = {}, G = {}, modified {} vs classical {}",
                    d.x,
                    show_set(&d.generic),
                    d.modified,
                    d.classical
                )
            });
        }
        let conds = f.poset.conditions();
        if conds.len() <= 3 {
            let extra = EpsilonModel::new(f.model.elements().iter().cloned().chain([junk(&frame)]));
            for mask in 0u32..1 << conds.len() {
                let g: BTreeSet<SetTerm> =
                    (0..conds.len()).filter(|k| mask >> k & 1 == 1).map(|k| conds[k].clone()).collect();
                let mut padded = g.clone();
                padded.insert(SetTerm::ord(0));
                restricted.record(match (is_generic(&g, &f.model, &f.poset), is_generic(&padded, &f.model, &f.poset)) {
                    (Ok(a), Ok(b)) if a == b => Ok(()),
                    (a, b) => Err(format!("{label}, G = {}: {a:?} vs {b:?}", show_set(&g))),
                });
                for n in [&f.model, &extra] {
                    if !n.is_ord_absolute_with(0) {
                        continue;
                    }
                    transfer.record(match genericity_transfer(n, &f.poset, &g) {
                        Ok(o) if o.generic == o.image_generic && o.identity_on_closed => Ok(()),
                        other => Err(format!("{label}, G = {}: {other:?}", show_set(&g))),
                    });
                }
            }
        }
        if conds.len() <= 2 {
            for g in frame.generics() {
                let g_term = SetTerm::set(g.iter().cloned());
                let n = ordclos_model(&EpsilonModel::new(
                    f.model.elements().iter().cloned().chain([f.model.to_term(), g_term]),
                ));
                for tau in &f.designated {
                    absolute.record(match eval_absoluteness_check(&n, &f.model, &f.poset, &g, tau) {
                        Ok(o) if o.agrees() => Ok(()),
                        other => Err(format!("{label}, τ = {tau}: {other:?}")),
                    });
                }
            }
        }
    }
    let mut out: Vec<Entry> = bullets.into_values().map(|t| t.entry()).collect();
    out.extend([restricted.entry(), transfer.entry(), absolute.entry()]);
    let div = Entry::new("forcing/divergence-witness", instance, divergence.is_some());
    out.push(match divergence {
        Some(w) => div.with_witness(w),
        None => div.with_witness(format!("no standard name diverges ({capped} frames over the carrier cap)")),
    });
    out
}
