//! Canonical printer: `parse(print_script(s)) == s` for every parsed `s`.

use std::fmt::Write;

use super::{Arg, Command, Decl, ItemKind, NepLit, PhiSpec, Script, TermExpr};

pub fn print_script(s: &Script) -> String {
    let mut out = String::new();
    for item in &s.items {
        match &item.kind {
            ItemKind::Decl(d) => out.push_str(&print_decl(d)),
            ItemKind::Command(c) => out.push_str(&print_command(c)),
        }
        out.push('\n');
    }
    out
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

pub fn print_term(t: &TermExpr) -> String {
    match t {
        TermExpr::Ord(n) => format!("ord({n})"),
        TermExpr::Set(xs) => format!("{{{}}}", join(xs, print_term)),
        TermExpr::Pair(a, b) => format!("({}, {})", print_term(a), print_term(b)),
        TermExpr::Ref(s) => s.clone(),
    }
}

fn print_nums(xs: &[u32]) -> String {
    join(xs, |x| x.to_string())
}

fn print_nep(p: &NepLit) -> String {
    let inner = join(&p.0, |(k, v)| match v {
        Some(v) => format!("{k}:{}", print_nep(v)),
        None => k.to_string(),
    });
    format!("[{inner}]")
}

pub fn print_decl(d: &Decl) -> String {
    match d {
        Decl::Let { name, term } => format!("let {name} = {};", print_term(term)),
        Decl::Name { name, term } => format!("name {name} = {};", print_term(term)),
        Decl::Model { name, closure, elems } => format!(
            "model {name} = {}{{{}}};",
            if *closure { "closure " } else { "" },
            join(elems, print_term)
        ),
        Decl::Filter { name, elems } => format!("filter {name} = {{{}}};", join(elems, print_term)),
        Decl::Poset { name, elems, le } => {
            let mut s = format!("poset {name} {{ elems {};", elems.join(", "));
            if !le.is_empty() {
                let _ = write!(s, " le {};", join(le, |(a, b)| format!("{a} <= {b}")));
            }
            s.push_str(" }");
            s
        }
        Decl::Formula { name, formula } => format!("formula {name} = {formula};"),
        Decl::Creature { name, index, val, phi } => {
            let phi = match phi {
                PhiSpec::Named(n) => format!(" phi={n}"),
                PhiSpec::Table(t) if t.is_empty() => String::new(),
                PhiSpec::Table(t) => format!(
                    " phi={{{}}}",
                    join(t, |(b, v)| format!("{{{}}}:{v}", print_nums(b)))
                ),
            };
            format!("creature {name} i={index} val={{{}}}{phi};", print_nums(val))
        }
        Decl::Condition { name, profile, creatures } => format!(
            "condition {name} F=({}) creatures=({});",
            print_nums(profile),
            creatures.join(", ")
        ),
        Decl::Tree { name, depth, nodes } => format!(
            "tree {name} depth={depth} nodes={{{}}};",
            join(nodes, |n| format!("\"{n}\""))
        ),
        Decl::Product { name, entries } => format!(
            "product {name} = {{{}}};",
            join(entries, |(i, t)| format!("{i}: {t}"))
        ),
        Decl::Nep { name, param } => format!("nep {name} = {};", print_nep(param)),
    }
}

pub fn print_arg(a: &Arg) -> String {
    match a {
        Arg::Ident(s) => s.clone(),
        Arg::Num(n) => n.to_string(),
        Arg::NumSet(xs) => format!("{{{}}}", print_nums(xs)),
        Arg::Seq(xs) => format!("({})", print_nums(xs)),
        Arg::SeqSet(ss) => format!("{{{}}}", join(ss, |s| format!("({})", print_nums(s)))),
        Arg::Bindings(bs) => format!("({})", join(bs, |(v, t)| format!("{v} = {t}"))),
        Arg::Flag(f, n) => format!("--{f} {n}"),
    }
}

pub fn print_command(c: &Command) -> String {
    let mut s = c.name.clone();
    for a in &c.args {
        s.push(' ');
        s.push_str(&print_arg(a));
    }
    s.push(';');
    s
}
