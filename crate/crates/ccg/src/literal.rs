//! Textual notation for categories and term lists, as used in lexicon files,
//! scenario fixtures and tests.
//!
//! Category syntax mirrors the derivation displays: `s(ed,+,0):E\np(3,sg):X/np(_,_):Y`
//! with left-associative slashes, uppercase names for variables, `_` for
//! anonymous variables, and a leading `-` for negated feature values. A bare
//! uppercase name in category position (as opposed to feature or index
//! position) denotes a category variable. The shorthand `vp` expands to
//! `s(s,+,0)\np(_,pl)` and never survives parsing.
//!
//! Term-list syntax is `[read(S,X), poem(X)]`; names shared with the category
//! refer to the same variables.

use crate::category::{Category, CatVar, FeatVal, Head, IdGen, SemIndex, VarId};
use crate::term::{SemTerm, TermArg, TermList};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LiteralError {
    #[error("parse error in `{input}` at byte {pos}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },
}

/// Parses category and term literals, keeping one shared variable namespace
/// so that a category and its term list can refer to the same variables.
/// Use one parser per lexical entry (or test expression).
pub struct LiteralParser<'g> {
    gen: &'g mut IdGen,
    feats: HashMap<String, VarId>,
    sems: HashMap<String, SemIndex>,
    cats: HashMap<String, CatVar>,
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && (self.bytes[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.bytes.get(self.pos).map(|b| *b as char)
    }
    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos] as char;
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos > start {
            Some(&self.src[start..self.pos])
        } else {
            None
        }
    }
    fn err<T>(&self, msg: &str) -> Result<T, LiteralError> {
        Err(LiteralError::Parse {
            input: self.src.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        })
    }
}

fn is_var_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

const TNS_ATOMS: &[&str] = &["to", "en", "ing", "plup", "ed", "s", "fut"];
const FIN_ATOMS: &[&str] = &["+", "-"];
const COMP_ATOMS: &[&str] = &["0", "that", "q"];
const NUM_ATOMS: &[&str] = &["sg", "pl"];
const PERS_ATOMS: &[&str] = &["1", "2", "3"];

/// Closed atom domains per feature slot of each head; `None` marks an open
/// domain (particles and prepositions).
fn slot_domains(head: Head) -> &'static [Option<&'static [&'static str]>] {
    match head {
        Head::N => &[Some(NUM_ATOMS)],
        Head::Np => &[Some(PERS_ATOMS), Some(NUM_ATOMS)],
        Head::S | Head::Tls => &[Some(TNS_ATOMS), Some(FIN_ATOMS), Some(COMP_ATOMS)],
        Head::Part => &[None],
        Head::Pp => &[None],
        Head::Eop => &[],
    }
}

impl<'g> LiteralParser<'g> {
    pub fn new(gen: &'g mut IdGen) -> Self {
        LiteralParser {
            gen,
            feats: HashMap::new(),
            sems: HashMap::new(),
            cats: HashMap::new(),
        }
    }

    fn feat_var(&mut self, name: &str) -> VarId {
        if let Some(v) = self.feats.get(name) {
            *v
        } else {
            let v = self.gen.var();
            self.feats.insert(name.to_string(), v);
            v
        }
    }

    fn sem_var(&mut self, name: &str) -> SemIndex {
        if let Some(v) = self.sems.get(name) {
            *v
        } else {
            let v = self.gen.sem();
            self.sems.insert(name.to_string(), v);
            v
        }
    }

    fn cat_var(&mut self, name: &str) -> CatVar {
        if let Some(v) = self.cats.get(name) {
            *v
        } else {
            let v = self.gen.cat();
            self.cats.insert(name.to_string(), v);
            v
        }
    }

    /// The indices assigned to named index variables so far, keyed by name.
    pub fn sem_names(&self) -> std::collections::BTreeMap<String, SemIndex> {
        self.sems.iter().map(|(k, v)| (k.clone(), *v)).collect()
    }

    pub fn parse_category(&mut self, input: &str) -> Result<Category, LiteralError> {
        let mut cur = Cursor::new(input);
        let cat = self.category(&mut cur)?;
        cur.skip_ws();
        if cur.pos != cur.bytes.len() {
            return cur.err("trailing input after category");
        }
        Ok(cat)
    }

    fn category(&mut self, cur: &mut Cursor) -> Result<Category, LiteralError> {
        let mut acc = self.element(cur)?;
        loop {
            match cur.peek() {
                Some('/') => {
                    cur.bump();
                    let arg = self.element(cur)?;
                    acc = Category::fwd(acc, arg);
                }
                Some('\\') => {
                    cur.bump();
                    let arg = self.element(cur)?;
                    acc = Category::bwd(acc, arg);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn element(&mut self, cur: &mut Cursor) -> Result<Category, LiteralError> {
        if cur.eat('(') {
            let inner = self.category(cur)?;
            if !cur.eat(')') {
                return cur.err("expected `)`");
            }
            return Ok(inner);
        }
        let Some(name) = cur.ident() else {
            return cur.err("expected category");
        };
        if name == "vp" {
            // Abbreviation from the part-of-speech tables.
            let s_idx = self.gen.sem();
            let np_idx = self.gen.sem();
            let np_pers = self.gen.var();
            return Ok(Category::bwd(
                Category::basic(
                    Head::S,
                    vec![FeatVal::atom("s"), FeatVal::atom("+"), FeatVal::atom("0")],
                    s_idx,
                ),
                Category::basic(
                    Head::Np,
                    vec![FeatVal::Var(np_pers), FeatVal::atom("pl")],
                    np_idx,
                ),
            ));
        }
        if let Some(head) = Head::from_name(name) {
            return self.basic(cur, head);
        }
        if is_var_name(name) {
            return Ok(Category::Var(self.cat_var(name)));
        }
        cur.err(&format!("unknown head symbol `{name}`"))
    }

    fn basic(&mut self, cur: &mut Cursor, head: Head) -> Result<Category, LiteralError> {
        let domains = slot_domains(head);
        let mut feats = Vec::new();
        if cur.peek() == Some('(') {
            cur.bump();
            loop {
                let slot = feats.len();
                let domain = domains.get(slot).copied().unwrap_or(None);
                feats.push(self.feat(cur, domain)?);
                if cur.eat(',') {
                    continue;
                }
                if cur.eat(')') {
                    break;
                }
                return cur.err("expected `,` or `)` in feature list");
            }
        }
        if feats.len() != head.arity() {
            return cur.err(&format!(
                "head `{}` takes {} feature(s), found {}",
                head.name(),
                head.arity(),
                feats.len()
            ));
        }
        let index = if cur.eat(':') {
            let Some(name) = cur.ident() else {
                return cur.err("expected index name after `:`");
            };
            if name == "_" {
                self.gen.sem()
            } else if is_var_name(name) {
                self.sem_var(name)
            } else {
                return cur.err("index names are uppercase variables or `_`");
            }
        } else {
            self.gen.sem()
        };
        Ok(Category::basic(head, feats, index))
    }

    fn feat(
        &mut self,
        cur: &mut Cursor,
        domain: Option<&'static [&'static str]>,
    ) -> Result<FeatVal, LiteralError> {
        if cur.peek() == Some('-') {
            cur.bump();
            // A bare `-` (before `,` or `)`) is the minus atom; otherwise it
            // negates the following value.
            match cur.peek() {
                Some(',') | Some(')') | None => return Ok(FeatVal::atom("-")),
                _ => {
                    let inner = self.feat(cur, domain)?;
                    if let FeatVal::Atom(a) = &inner {
                        if a == "-" || a == "+" {
                            return cur.err("cannot negate a polarity atom");
                        }
                    }
                    return Ok(FeatVal::Neg(Box::new(inner)));
                }
            }
        }
        if cur.peek() == Some('+') {
            cur.bump();
            return Ok(FeatVal::atom("+"));
        }
        let Some(name) = cur.ident() else {
            return cur.err("expected feature value");
        };
        if name == "_" {
            return Ok(FeatVal::Var(self.gen.var()));
        }
        if is_var_name(name) {
            return Ok(FeatVal::Var(self.feat_var(name)));
        }
        if let Some(atoms) = domain {
            if !atoms.contains(&name) {
                return cur.err(&format!("atom `{name}` outside its feature domain"));
            }
        }
        Ok(FeatVal::atom(name))
    }

    /// Parse a `[t1, t2, …]` term list sharing this parser's namespace.
    pub fn parse_terms(&mut self, input: &str) -> Result<TermList, LiteralError> {
        let mut cur = Cursor::new(input);
        if !cur.eat('[') {
            return cur.err("expected `[`");
        }
        let mut terms = Vec::new();
        if cur.eat(']') {
            return Ok(terms);
        }
        loop {
            terms.push(self.term(&mut cur)?);
            if cur.eat(',') {
                continue;
            }
            if cur.eat(']') {
                break;
            }
            return cur.err("expected `,` or `]` in term list");
        }
        cur.skip_ws();
        if cur.pos != cur.bytes.len() {
            return cur.err("trailing input after term list");
        }
        Ok(terms)
    }

    fn term(&mut self, cur: &mut Cursor) -> Result<SemTerm, LiteralError> {
        let Some(pred) = cur.ident() else {
            return cur.err("expected predicate name");
        };
        if is_var_name(pred) {
            return cur.err("predicate names are lowercase");
        }
        let pred = pred.to_string();
        let mut args = Vec::new();
        if cur.eat('(') {
            loop {
                args.push(self.term_arg(cur)?);
                if cur.eat(',') {
                    continue;
                }
                if cur.eat(')') {
                    break;
                }
                return cur.err("expected `,` or `)` in argument list");
            }
        }
        Ok(SemTerm { pred, args })
    }

    fn term_arg(&mut self, cur: &mut Cursor) -> Result<TermArg, LiteralError> {
        let Some(name) = cur.ident() else {
            return cur.err("expected term argument");
        };
        if name == "_" {
            return Ok(TermArg::Index(self.gen.sem()));
        }
        if is_var_name(name) {
            // Prefer an existing binding in either namespace; new names are
            // treated as semantic variables.
            if let Some(i) = self.sems.get(name) {
                return Ok(TermArg::Index(*i));
            }
            if let Some(v) = self.feats.get(name) {
                return Ok(TermArg::Val(FeatVal::Var(*v)));
            }
            return Ok(TermArg::Index(self.sem_var(name)));
        }
        Ok(TermArg::atom(name))
    }
}

/// Convenience: parse a standalone category with a private namespace.
pub fn parse_category(input: &str, gen: &mut IdGen) -> Result<Category, LiteralError> {
    LiteralParser::new(gen).parse_category(input)
}

/// Convenience: parse a standalone term list with a private namespace.
pub fn parse_terms(input: &str, gen: &mut IdGen) -> Result<TermList, LiteralError> {
    LiteralParser::new(gen).parse_terms(input)
}
