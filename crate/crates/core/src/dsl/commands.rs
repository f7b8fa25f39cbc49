//! The command table: syntax, parameter kinds and the library operations
//! each command exercises.

use super::Kind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    Bound(Kind),
    /// A term, name or filter.
    TermLike,
    Num,
    NumSet,
    Seq,
    SeqSet,
    Bindings,
    Word(&'static [&'static str]),
    OptNum,
    OptBound(Kind),
    OptFlag(&'static str),
}

impl Param {
    pub fn optional(self) -> bool {
        matches!(self, Param::OptNum | Param::OptBound(_) | Param::OptFlag(_))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CommandSpec {
    pub name: &'static str,
    pub params: &'static [Param],
    pub ops: &'static [&'static str],
    pub usage: &'static str,
}

use Kind::*;
use Param::*;

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec { name: "check ord-absolute", params: &[Bound(Model)], ops: &["is_ord_absolute"], usage: "check ord-absolute M;" },
    CommandSpec { name: "check ord-transitive", params: &[Bound(Model)], ops: &["is_ord_transitive"], usage: "check ord-transitive M;" },
    CommandSpec { name: "check successor-absolute", params: &[Bound(Model)], ops: &["is_successor_absolute"], usage: "check successor-absolute M;" },
    CommandSpec { name: "check generic", params: &[TermLike, Bound(Model), Bound(Poset)], ops: &["is_generic"], usage: "check generic G M P;" },
    CommandSpec { name: "collapse", params: &[Bound(Model)], ops: &["ord_collapse"], usage: "collapse M;" },
    CommandSpec { name: "mostowski", params: &[Bound(Model)], ops: &["transitive_collapse"], usage: "mostowski M;" },
    CommandSpec { name: "label", params: &[Bound(Model), OptNum], ops: &["labeled_collapse", "uncollapse"], usage: "label M [base];" },
    CommandSpec { name: "ordclos", params: &[TermLike], ops: &["ordclos"], usage: "ordclos t;" },
    CommandSpec { name: "hco", params: &[TermLike, Num, Num], ops: &["hco_check"], usage: "hco t alpha bound;" },
    CommandSpec { name: "holds", params: &[Bound(Formula), Bound(Model), Bindings], ops: &["eval_formula"], usage: "holds phi M (x = t, ...);" },
    CommandSpec { name: "mversion", params: &[Bound(Nep), Bound(Model)], ops: &["m_version"], usage: "mversion p M;" },
    CommandSpec { name: "generics", params: &[Bound(Model), Bound(Poset)], ops: &["enumerate_generics"], usage: "generics M P;" },
    CommandSpec { name: "eval", params: &[TermLike, TermLike, Bound(Model), OptBound(Poset)], ops: &["eval_name_V", "eval_name_M"], usage: "eval tau G M [P];" },
    CommandSpec { name: "forces", params: &[Bound(Model), Bound(Poset), TermLike, Bound(Formula), Bindings], ops: &["forces_semantic"], usage: "forces M P p phi (x = tau, ...);" },
    CommandSpec { name: "extend", params: &[Bound(Model), Bound(Poset), TermLike], ops: &["extend_model"], usage: "extend M P G;" },
    CommandSpec { name: "transfer", params: &[Bound(Model), Bound(Poset), TermLike], ops: &["genericity_transfer"], usage: "transfer N P G;" },
    CommandSpec { name: "absolute", params: &[Bound(Model), Bound(Model), Bound(Poset), TermLike, TermLike], ops: &["eval_absoluteness_check"], usage: "absolute N M P G tau;" },
    CommandSpec { name: "theorem", params: &[Bound(Model), Bound(Poset)], ops: &["forces_semantic", "eval_name_M", "extend_model"], usage: "theorem M P;" },
    CommandSpec { name: "divergence", params: &[Bound(Model), Bound(Poset)], ops: &["eval_name_V", "eval_name_M"], usage: "divergence M P;" },
    CommandSpec { name: "creature validate", params: &[Bound(Creature)], ops: &["validate"], usage: "creature validate c;" },
    CommandSpec { name: "stronger", params: &[Bound(Creature), Bound(Creature)], ops: &["stronger"], usage: "stronger c1 c0;" },
    CommandSpec { name: "half", params: &[Bound(Creature)], ops: &["half"], usage: "half c;" },
    CommandSpec { name: "unhalve", params: &[Bound(Creature), Bound(Creature)], ops: &["unhalve"], usage: "unhalve psi c;" },
    CommandSpec { name: "join", params: &[Bound(Creature), Bound(Creature)], ops: &["join"], usage: "join c0 c1;" },
    CommandSpec { name: "split", params: &[Bound(Creature), Bound(Creature), NumSet], ops: &["split_decomposition"], usage: "split c0 c1 {b};" },
    CommandSpec { name: "refine", params: &[Bound(Creature), NumSet], ops: &["bigness_refine"], usage: "refine c {ones};" },
    CommandSpec { name: "enumerate", params: &[Num, Num], ops: &["validate"], usage: "enumerate i F;" },
    CommandSpec { name: "growth", params: &[Bound(Condition)], ops: &["kstar"], usage: "growth p;" },
    CommandSpec { name: "pos", params: &[Bound(Condition), Num], ops: &["pos"], usage: "pos p n;" },
    CommandSpec { name: "wedge", params: &[Bound(Condition), Seq], ops: &["wedge"], usage: "wedge p (s);" },
    CommandSpec { name: "incompat", params: &[Bound(Condition), Bound(Condition), Num], ops: &["incompat_horizon"], usage: "incompat p q M;" },
    CommandSpec { name: "halving", params: &[Bound(Condition)], ops: &["half", "unhalve", "incompat_horizon"], usage: "halving p;" },
    CommandSpec { name: "decide", params: &[Bound(Condition), Num, Num, SeqSet], ops: &["pure_decision_core"], usage: "decide p h0 n {(s), ...};" },
    CommandSpec { name: "front", params: &[Bound(Tree), Num], ops: &["splitting_front"], usage: "front T n;" },
    CommandSpec { name: "le-nu", params: &[Bound(Product), Bound(Product), Num, NumSet], ops: &["le_nu"], usage: "le-nu q p n {u};" },
    CommandSpec { name: "pos-u", params: &[Bound(Product), Num, NumSet], ops: &["pos_u"], usage: "pos-u p n {u};" },
    CommandSpec { name: "wedge-u", params: &[Bound(Product), Num, NumSet], ops: &["wedge_u"], usage: "wedge-u p n {u};" },
    CommandSpec { name: "suite", params: &[Word(&crate::suite::SUITES), OptFlag("size")], ops: &["parse", "run"], usage: "suite all --size k;" },
];

/// Looks up a command by its full name.
pub fn find(name: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.name == name)
}

/// Does some command start with the word `w` followed by a sub-word?
pub fn has_subcommands(w: &str) -> bool {
    COMMANDS.iter().any(|c| c.name.split_once(' ').is_some_and(|(a, _)| a == w))
}
