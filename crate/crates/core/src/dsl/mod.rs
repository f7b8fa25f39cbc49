//! The batch script language: declarations of terms, models, posets,
//! names, formulas, creatures and trees, followed by commands.

pub mod commands;
pub mod lexer;
pub mod parser;
pub mod printer;

use std::fmt;

use crate::formula::Formula;
pub use commands::{CommandSpec, Param, COMMANDS};
pub use lexer::Pos;
pub use parser::parse;
pub use printer::print_script;

/// A diagnostic with a stable code: `E001` lexical, `E002` unterminated
/// string, `E101` syntax, `E102` unbound name, `E103` rebinding, `E104` wrong
/// kind of binding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub code: &'static str,
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(code: &'static str, pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            code,
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}:{}: {}", self.code, self.pos.line, self.pos.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// What a script identifier is bound to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Term,
    Name,
    Filter,
    Model,
    Poset,
    Formula,
    Creature,
    Condition,
    Tree,
    Product,
    Nep,
}

impl Kind {
    /// Kinds usable inside term expressions.
    pub fn is_term_like(self) -> bool {
        matches!(self, Kind::Term | Kind::Name | Kind::Filter | Kind::Model | Kind::Poset)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Term => "term",
            Kind::Name => "name",
            Kind::Filter => "filter",
            Kind::Model => "model",
            Kind::Poset => "poset",
            Kind::Formula => "formula",
            Kind::Creature => "creature",
            Kind::Condition => "condition",
            Kind::Tree => "tree",
            Kind::Product => "product",
            Kind::Nep => "nep parameter",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermExpr {
    Ord(u32),
    Set(Vec<TermExpr>),
    Pair(Box<TermExpr>, Box<TermExpr>),
    Ref(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiSpec {
    /// `log2`, `log2plus1` or `card`.
    Named(String),
    /// Explicit values; omitted subsets get the monotone-minimal completion.
    Table(Vec<(Vec<u32>, u32)>),
}

/// `[0, 1:[0], 2]`: a domain with optional nested values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NepLit(pub Vec<(u32, Option<NepLit>)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Let { name: String, term: TermExpr },
    Model { name: String, closure: bool, elems: Vec<TermExpr> },
    Poset { name: String, elems: Vec<String>, le: Vec<(String, String)> },
    Name { name: String, term: TermExpr },
    Filter { name: String, elems: Vec<TermExpr> },
    Formula { name: String, formula: Formula },
    Creature { name: String, index: u32, val: Vec<u32>, phi: PhiSpec },
    Condition { name: String, profile: Vec<u32>, creatures: Vec<String> },
    Tree { name: String, depth: u32, nodes: Vec<String> },
    Product { name: String, entries: Vec<(u32, String)> },
    Nep { name: String, param: NepLit },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Let { name, .. }
            | Decl::Model { name, .. }
            | Decl::Poset { name, .. }
            | Decl::Name { name, .. }
            | Decl::Filter { name, .. }
            | Decl::Formula { name, .. }
            | Decl::Creature { name, .. }
            | Decl::Condition { name, .. }
            | Decl::Tree { name, .. }
            | Decl::Product { name, .. }
            | Decl::Nep { name, .. } => name,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Decl::Let { .. } => "let",
            Decl::Model { .. } => "model",
            Decl::Poset { .. } => "poset",
            Decl::Name { .. } => "name",
            Decl::Filter { .. } => "filter",
            Decl::Formula { .. } => "formula",
            Decl::Creature { .. } => "creature",
            Decl::Condition { .. } => "condition",
            Decl::Tree { .. } => "tree",
            Decl::Product { .. } => "product",
            Decl::Nep { .. } => "nep",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Ident(String),
    Num(u64),
    NumSet(Vec<u32>),
    Seq(Vec<u32>),
    SeqSet(Vec<Vec<u32>>),
    Bindings(Vec<(String, String)>),
    Flag(String, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub name: String,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItemKind {
    Decl(Decl),
    Command(Command),
}

/// An item with its source position. Equality ignores positions.
#[derive(Clone, Debug)]
pub struct Item {
    pub pos: Pos,
    pub kind: ItemKind,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Item {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub items: Vec<Item>,
}
