//! Recursive-descent LL(1) parser with binding checks.

use std::collections::HashMap;

use super::commands::{self, Param};
use super::lexer::{lex, Pos, Spanned, Tok};
use super::{Arg, Command, Decl, Item, ItemKind, Kind, NepLit, ParseError, PhiSpec, Script, TermExpr};
use crate::formula::Formula;

const FORMULA_WORDS: [&str; 8] = ["in", "not", "and", "or", "exists", "forall", "true", "false"];

/// Parses and binding-checks a script, stopping at the first error.
pub fn parse(src: &str) -> Result<Script, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        i: 0,
        env: HashMap::new(),
    };
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        items.push(p.item()?);
    }
    Ok(Script { items })
}

struct Parser {
    toks: Vec<Spanned>,
    i: usize,
    env: HashMap<String, Kind>,
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::new("E101", pos, msg)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn unexpected<T>(&self, what: &str) -> Result<T, ParseError> {
        Err(syntax(self.pos(), format!("expected {what}, found {}", self.peek().describe())))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{}`", tok.text()))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.unexpected(&format!("`{kw}`")),
        }
    }

    fn is_word(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn num(&mut self) -> Result<u64, ParseError> {
        match *self.peek() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("a number"),
        }
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        let n = self.num()?;
        u32::try_from(n).map_err(|_| syntax(pos, format!("number {n} is too large")))
    }

    /// `sep`-separated list of `f` up to (not including) `close`.
    fn list<T>(
        &mut self,
        close: &Tok,
        mut f: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == close {
            return Ok(out);
        }
        loop {
            out.push(f(self)?);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn bind(&mut self, name: &str, pos: Pos, kind: Kind) -> Result<(), ParseError> {
        if self.env.contains_key(name) {
            return Err(ParseError::new("E103", pos, format!("`{name}` is already bound")));
        }
        self.env.insert(name.to_string(), kind);
        Ok(())
    }

    fn lookup(&self, name: &str, pos: Pos) -> Result<Kind, ParseError> {
        self.env
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::new("E102", pos, format!("`{name}` is not bound")))
    }

    fn fresh(&mut self) -> Result<(String, Pos), ParseError> {
        let (name, pos) = self.ident()?;
        if name == "ord" || FORMULA_WORDS.contains(&name.as_str()) {
            return Err(syntax(pos, format!("`{name}` is reserved")));
        }
        if self.env.contains_key(&name) {
            return Err(ParseError::new("E103", pos, format!("`{name}` is already bound")));
        }
        Ok((name, pos))
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        let pos = self.pos();
        let word = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.unexpected("a declaration or command"),
        };
        let decl = match word.as_str() {
            "let" | "name" => {
                self.bump();
                let (name, npos) = self.fresh()?;
                self.expect(Tok::Eq)?;
                let term = self.term()?;
                self.expect(Tok::Semi)?;
                if word == "let" {
                    self.bind(&name, npos, Kind::Term)?;
                    Decl::Let { name, term }
                } else {
                    self.bind(&name, npos, Kind::Name)?;
                    Decl::Name { name, term }
                }
            }
            "model" => {
                self.bump();
                let (name, npos) = self.fresh()?;
                self.expect(Tok::Eq)?;
                let closure = self.is_word("closure");
                if closure {
                    self.bump();
                }
                let elems = self.term_set()?;
                self.expect(Tok::Semi)?;
                self.bind(&name, npos, Kind::Model)?;
                Decl::Model { name, closure, elems }
            }
            "filter" => {
                self.bump();
                let (name, npos) = self.fresh()?;
                self.expect(Tok::Eq)?;
                let elems = self.term_set()?;
                self.expect(Tok::Semi)?;
                self.bind(&name, npos, Kind::Filter)?;
                Decl::Filter { name, elems }
            }
            "poset" => self.poset()?,
            "formula" => {
                self.bump();
                let (name, npos) = self.fresh()?;
                self.expect(Tok::Eq)?;
                let formula = self.formula()?;
                self.expect(Tok::Semi)?;
                self.bind(&name, npos, Kind::Formula)?;
                Decl::Formula { name, formula }
            }
            "creature" if !matches!(self.peek_at(1), Tok::Ident(s) if s == "validate") => self.creature()?,
            "condition" => self.condition()?,
            "tree" => self.tree()?,
            "product" => self.product()?,
            "nep" => {
                self.bump();
                let (name, npos) = self.fresh()?;
                self.expect(Tok::Eq)?;
                let param = self.nep()?;
                self.expect(Tok::Semi)?;
                self.bind(&name, npos, Kind::Nep)?;
                Decl::Nep { name, param }
            }
            _ => {
                return Ok(Item {
                    pos,
                    kind: ItemKind::Command(self.command()?),
                })
            }
        };
        Ok(Item {
            pos,
            kind: ItemKind::Decl(decl),
        })
    }

    fn term(&mut self) -> Result<TermExpr, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "ord" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let n = self.small()?;
                self.expect(Tok::RParen)?;
                Ok(TermExpr::Ord(n))
            }
            Tok::Ident(s) => {
                let pos = self.pos();
                self.bump();
                let kind = self.lookup(&s, pos)?;
                if !kind.is_term_like() {
                    return Err(ParseError::new("E104", pos, format!("`{s}` is a {kind}, not a term")));
                }
                Ok(TermExpr::Ref(s))
            }
            Tok::LBrace => Ok(TermExpr::Set(self.term_set()?)),
            Tok::LParen => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(TermExpr::Pair(Box::new(a), Box::new(b)))
            }
            _ => self.unexpected("a term"),
        }
    }

    fn term_set(&mut self) -> Result<Vec<TermExpr>, ParseError> {
        self.expect(Tok::LBrace)?;
        let out = self.list(&Tok::RBrace, |p| p.term())?;
        self.expect(Tok::RBrace)?;
        Ok(out)
    }

    fn num_set(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect(Tok::LBrace)?;
        let out = self.list(&Tok::RBrace, |p| p.small())?;
        self.expect(Tok::RBrace)?;
        Ok(out)
    }

    fn seq(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect(Tok::LParen)?;
        let out = self.list(&Tok::RParen, |p| p.small())?;
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn poset(&mut self) -> Result<Decl, ParseError> {
        self.bump();
        let (name, npos) = self.fresh()?;
        self.expect(Tok::LBrace)?;
        self.keyword("elems")?;
        let mut elems = Vec::new();
        loop {
            let (e, epos) = self.fresh()?;
            if elems.contains(&e) {
                return Err(ParseError::new("E103", epos, format!("`{e}` is listed twice")));
            }
            elems.push(e);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::Semi)?;
        let mut le = Vec::new();
        if self.is_word("le") {
            self.bump();
            le = self.list(&Tok::Semi, |p| {
                let (a, apos) = p.ident()?;
                p.expect(Tok::Le)?;
                let (b, bpos) = p.ident()?;
                for (x, pos) in [(&a, apos), (&b, bpos)] {
                    if !elems.contains(x) {
                        return Err(ParseError::new("E102", pos, format!("`{x}` is not an element of this poset")));
                    }
                }
                Ok((a, b))
            })?;
            self.expect(Tok::Semi)?;
        }
        self.expect(Tok::RBrace)?;
        self.eat(&Tok::Semi);
        for e in &elems {
            self.env.insert(e.clone(), Kind::Term);
        }
        self.bind(&name, npos, Kind::Poset)?;
        Ok(Decl::Poset { name, elems, le })
    }

    fn creature(&mut self) -> Result<Decl, ParseError> {
        self.bump();
        let (name, npos) = self.fresh()?;
        self.keyword("i")?;
        self.expect(Tok::Eq)?;
        let index = self.small()?;
        self.keyword("val")?;
        self.expect(Tok::Eq)?;
        let val = self.num_set()?;
        let phi = if self.is_word("phi") {
            self.bump();
            self.expect(Tok::Eq)?;
            match self.peek() {
                Tok::Ident(_) => PhiSpec::Named(self.ident()?.0),
                Tok::LBrace => {
                    self.bump();
                    let table = self.list(&Tok::RBrace, |p| {
                        let b = p.num_set()?;
                        p.expect(Tok::Colon)?;
                        Ok((b, p.small()?))
                    })?;
                    self.expect(Tok::RBrace)?;
                    PhiSpec::Table(table)
                }
                _ => return self.unexpected("a norm table or a norm name"),
            }
        } else {
            PhiSpec::Table(Vec::new())
        };
        self.expect(Tok::Semi)?;
        self.bind(&name, npos, Kind::Creature)?;
        Ok(Decl::Creature { name, index, val, phi })
    }

    fn bound_ident(&mut self, kind: Kind) -> Result<String, ParseError> {
        let (s, pos) = self.ident()?;
        let k = self.lookup(&s, pos)?;
        if k != kind {
            return Err(ParseError::new("E104", pos, format!("`{s}` is a {k}, expected a {kind}")));
        }
        Ok(s)
    }

    fn condition(&mut self) -> Result<Decl, ParseError> {
        self.bump();
        let (name, npos) = self.fresh()?;
        self.keyword("F")?;
        self.expect(Tok::Eq)?;
        let profile = self.seq()?;
        self.keyword("creatures")?;
        self.expect(Tok::Eq)?;
        self.expect(Tok::LParen)?;
        let creatures = self.list(&Tok::RParen, |p| p.bound_ident(Kind::Creature))?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        self.bind(&name, npos, Kind::Condition)?;
        Ok(Decl::Condition { name, profile, creatures })
    }

    fn tree(&mut self) -> Result<Decl, ParseError> {
        self.bump();
        let (name, npos) = self.fresh()?;
        self.keyword("depth")?;
        self.expect(Tok::Eq)?;
        let depth = self.small()?;
        self.keyword("nodes")?;
        self.expect(Tok::Eq)?;
        self.expect(Tok::LBrace)?;
        let nodes = self.list(&Tok::RBrace, |p| match p.peek().clone() {
            Tok::Str(s) => {
                p.bump();
                Ok(s)
            }
            _ => p.unexpected("a string"),
        })?;
        self.expect(Tok::RBrace)?;
        self.expect(Tok::Semi)?;
        self.bind(&name, npos, Kind::Tree)?;
        Ok(Decl::Tree { name, depth, nodes })
    }

    fn product(&mut self) -> Result<Decl, ParseError> {
        self.bump();
        let (name, npos) = self.fresh()?;
        self.expect(Tok::Eq)?;
        self.expect(Tok::LBrace)?;
        let entries = self.list(&Tok::RBrace, |p| {
            let i = p.small()?;
            p.expect(Tok::Colon)?;
            Ok((i, p.bound_ident(Kind::Tree)?))
        })?;
        self.expect(Tok::RBrace)?;
        self.expect(Tok::Semi)?;
        self.bind(&name, npos, Kind::Product)?;
        Ok(Decl::Product { name, entries })
    }

    fn nep(&mut self) -> Result<NepLit, ParseError> {
        self.expect(Tok::LBracket)?;
        let entries = self.list(&Tok::RBracket, |p| {
            let k = p.small()?;
            let v = if p.eat(&Tok::Colon) { Some(p.nep()?) } else { None };
            Ok((k, v))
        })?;
        self.expect(Tok::RBracket)?;
        Ok(NepLit(entries))
    }

    fn var(&mut self) -> Result<String, ParseError> {
        let (s, pos) = self.ident()?;
        if FORMULA_WORDS.contains(&s.as_str()) {
            return Err(syntax(pos, format!("`{s}` is reserved in formulas")));
        }
        Ok(s)
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.eat(&Tok::DoubleArrow) {
            let rhs = self.implication()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.is_word("or") {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.is_word("and") {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "not" => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(s) if s == "exists" || s == "forall" => {
                self.bump();
                let v = self.var()?;
                let body = self.unary()?;
                Ok(if s == "exists" {
                    Formula::exists(&v, body)
                } else {
                    Formula::forall(&v, body)
                })
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(_) => {
                let a = self.var()?;
                let f = match self.peek() {
                    Tok::Ident(s) if s == "in" => {
                        self.bump();
                        Formula::mem(&a, &self.var()?)
                    }
                    Tok::Eq => {
                        self.bump();
                        Formula::eq(&a, &self.var()?)
                    }
                    Tok::Le => {
                        self.bump();
                        Formula::le(&a, &self.var()?)
                    }
                    _ => return self.unexpected("`in`, `=` or `<=`"),
                };
                Ok(f)
            }
            _ => self.unexpected("a formula"),
        }
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Arg::Ident(s))
            }
            Tok::Num(n) => {
                self.bump();
                Ok(Arg::Num(n))
            }
            Tok::Flag(f) => {
                self.bump();
                Ok(Arg::Flag(f, self.num()?))
            }
            Tok::LBrace if *self.peek_at(1) == Tok::LParen => {
                self.bump();
                let seqs = self.list(&Tok::RBrace, |p| p.seq())?;
                self.expect(Tok::RBrace)?;
                Ok(Arg::SeqSet(seqs))
            }
            Tok::LBrace => Ok(Arg::NumSet(self.num_set()?)),
            Tok::LParen if matches!(self.peek_at(1), Tok::Ident(_)) => {
                self.bump();
                let bs = self.list(&Tok::RParen, |p| {
                    let v = p.var()?;
                    p.expect(Tok::Eq)?;
                    let (t, _) = p.ident()?;
                    Ok((v, t))
                })?;
                self.expect(Tok::RParen)?;
                Ok(Arg::Bindings(bs))
            }
            Tok::LParen => Ok(Arg::Seq(self.seq()?)),
            _ => self.unexpected("a command argument"),
        }
    }

    fn command(&mut self) -> Result<Command, ParseError> {
        let (word, pos) = self.ident()?;
        let name = if commands::has_subcommands(&word) {
            let (sub, _) = self.ident()?;
            format!("{word} {sub}")
        } else {
            word
        };
        let spec = commands::find(&name).ok_or_else(|| syntax(pos, format!("unknown command `{name}`")))?;
        let mut args = Vec::new();
        let mut positions = Vec::new();
        while self.peek() != &Tok::Semi {
            if self.peek() == &Tok::Eof {
                return self.unexpected("`;`");
            }
            positions.push(self.pos());
            args.push(self.arg()?);
        }
        let end = self.pos();
        self.bump();
        self.check_args(spec, &mut args, &positions, end)?;
        Ok(Command { name, args })
    }

    fn check_args(
        &self,
        spec: &commands::CommandSpec,
        args: &mut [Arg],
        positions: &[Pos],
        end: Pos,
    ) -> Result<(), ParseError> {
        let usage = || format!("usage: {}", spec.usage);
        let mut k = 0;
        for param in spec.params {
            let Some(arg) = args.get_mut(k) else {
                if param.optional() {
                    continue;
                }
                return Err(syntax(end, format!("missing argument; {}", usage())));
            };
            let pos = positions[k];
            let ok = match (param, &*arg) {
                (Param::Bound(kind) | Param::OptBound(kind), Arg::Ident(s)) => {
                    let found = self.lookup(s, pos)?;
                    if found != *kind {
                        return Err(ParseError::new("E104", pos, format!("`{s}` is a {found}, expected a {kind}")));
                    }
                    true
                }
                (Param::TermLike, Arg::Ident(s)) => {
                    let found = self.lookup(s, pos)?;
                    if !matches!(found, Kind::Term | Kind::Name | Kind::Filter) {
                        return Err(ParseError::new("E104", pos, format!("`{s}` is a {found}, expected a term")));
                    }
                    true
                }
                (Param::Word(words), Arg::Ident(s)) => words.contains(&s.as_str()),
                (Param::Num | Param::OptNum, Arg::Num(_)) => true,
                (Param::NumSet, Arg::NumSet(_)) | (Param::Seq, Arg::Seq(_)) => true,
                (Param::SeqSet, Arg::SeqSet(_)) => true,
                (Param::SeqSet, Arg::NumSet(v)) if v.is_empty() => {
                    *arg = Arg::SeqSet(Vec::new());
                    true
                }
                (Param::Bindings, Arg::Bindings(bs)) => {
                    for (_, t) in bs {
                        let found = self.lookup(t, pos)?;
                        if !matches!(found, Kind::Term | Kind::Name | Kind::Filter) {
                            return Err(ParseError::new("E104", pos, format!("`{t}` is a {found}, expected a term")));
                        }
                    }
                    true
                }
                (Param::Bindings, Arg::Seq(v)) if v.is_empty() => {
                    *arg = Arg::Bindings(Vec::new());
                    true
                }
                (Param::OptFlag(f), Arg::Flag(g, _)) => f == g,
                (p, _) if p.optional() => continue,
                _ => false,
            };
            if !ok {
                return Err(syntax(pos, format!("unexpected argument; {}", usage())));
            }
            k += 1;
        }
        if k < args.len() {
            return Err(syntax(positions[k], format!("too many arguments; {}", usage())));
        }
        Ok(())
    }
}
