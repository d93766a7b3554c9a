//! The lexicon: expands part-of-speech rows into fully featured categories.
//!
//! Open-class words are listed in a tab-separated file as `word<TAB>label`
//! plus optional `key=value` columns (irregular forms, agreement features,
//! pronoun descriptors). Each verb label is crossed with the inflection
//! table, noun labels produce number variants, and noun-phrase entries are
//! paired with type-raised variants so a subject can compose with whatever
//! follows it before the verb phrase is complete. Closed-class words carry
//! explicit category and term literals.
//!
//! Every lookup renames an entry's variables and indices fresh, so two
//! occurrences of the same word never share bindings.

use std::collections::HashMap;

use crate::category::{Category, IdGen, Slash};
use crate::literal::{parse_category, LiteralError};
use crate::term::{rename_entry, SemTerm, TermArg, TermList};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {msg}")]
    Row { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Literal {
        line: usize,
        #[source]
        source: LiteralError,
    },
}

/// One lexical entry, ready to be instantiated.
#[derive(Clone, Debug)]
pub struct Entry {
    pub word: String,
    pub cat: Category,
    pub terms: TermList,
    pub pronoun: bool,
    /// The row label (or closed-class marker) the entry came from.
    pub label: String,
}

#[derive(Clone, Debug, Default)]
pub struct Lexicon {
    entries: HashMap<String, Vec<Entry>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Lexicon::default()
    }

    /// Parse the open-class and closed-class tables.
    pub fn from_tsv(open: &str, closed: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::new();
        lex.load_closed(closed)?;
        lex.load_open(open)?;
        Ok(lex)
    }

    /// All entries for a surface form, with fresh variables and indices.
    pub fn lookup(&self, word: &str, gen: &mut IdGen) -> Vec<Entry> {
        match self.entries.get(word) {
            None => vec![],
            Some(list) => list
                .iter()
                .map(|e| {
                    let (cat, terms) = rename_entry(&e.cat, &e.terms, gen);
                    Entry {
                        word: e.word.clone(),
                        cat,
                        terms,
                        pronoun: e.pronoun,
                        label: e.label.clone(),
                    }
                })
                .collect(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    fn push(&mut self, entry: Entry) {
        self.entries.entry(entry.word.clone()).or_default().push(entry);
    }

    fn push_src(
        &mut self,
        gen: &mut IdGen,
        line: usize,
        word: &str,
        label: &str,
        pronoun: bool,
        cat_src: &str,
        terms_src: &str,
    ) -> Result<(), LexiconError> {
        let (cat, terms) = link_entry(cat_src, terms_src, gen).map_err(|e| LexiconError::Literal {
            line,
            source: e,
        })?;
        self.push(Entry {
            word: word.to_string(),
            cat,
            terms,
            pronoun,
            label: label.to_string(),
        });
        Ok(())
    }

    fn load_closed(&mut self, text: &str) -> Result<(), LexiconError> {
        let mut gen = IdGen::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let row = raw.split('#').next().unwrap_or("").trim_end();
            if row.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = row.split('\t').collect();
            if cols.len() < 3 {
                return Err(LexiconError::Row {
                    line,
                    msg: format!("expected word, category, terms; got {} columns", cols.len()),
                });
            }
            let word = cols[0].trim();
            let cat_src = cols[1].trim();
            let terms_src = cols[2].trim();
            let flags: Vec<&str> = cols
                .get(3)
                .map(|f| f.split(',').map(str::trim).filter(|s| !s.is_empty()).collect())
                .unwrap_or_default();
            let pronoun = flags.contains(&"pronoun");
            let (cat, terms) =
                link_entry(cat_src, terms_src, &mut gen).map_err(|e| LexiconError::Literal {
                    line,
                    source: e,
                })?;
            self.push(Entry {
                word: word.to_string(),
                cat: cat.clone(),
                terms: terms.clone(),
                pronoun,
                label: "closed".into(),
            });
            if flags.contains(&"raise") {
                match raise_entry(&cat, &terms, &mut gen) {
                    Some((rc, rt)) => self.push(Entry {
                        word: word.to_string(),
                        cat: rc,
                        terms: rt,
                        pronoun,
                        label: "closed+raised".into(),
                    }),
                    None => {
                        return Err(LexiconError::Row {
                            line,
                            msg: "raise flag on a category whose target is not np".into(),
                        })
                    }
                }
            }
            if flags.contains(&"geach") {
                for (k, (gc, gt)) in geach_variants(&cat, &terms, &mut gen).into_iter().enumerate()
                {
                    self.push(Entry {
                        word: word.to_string(),
                        cat: gc,
                        terms: gt,
                        pronoun,
                        label: format!("closed+geach{}", k + 1),
                    });
                }
            }
        }
        Ok(())
    }

    fn load_open(&mut self, text: &str) -> Result<(), LexiconError> {
        let mut gen = IdGen::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let row = raw.split('#').next().unwrap_or("").trim_end();
            if row.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = row.split('\t').collect();
            if cols.len() < 2 {
                return Err(LexiconError::Row {
                    line,
                    msg: "expected at least word and label".into(),
                });
            }
            let word = cols[0].trim();
            let label = cols[1].trim();
            let mut keys: HashMap<String, String> = HashMap::new();
            for col in &cols[2..] {
                let col = col.trim();
                if col.is_empty() {
                    continue;
                }
                match col.split_once('=') {
                    Some((k, v)) => {
                        keys.insert(k.trim().to_string(), v.trim().to_string());
                    }
                    None => {
                        return Err(LexiconError::Row {
                            line,
                            msg: format!("malformed option {col:?} (expected key=value)"),
                        })
                    }
                }
            }
            self.expand_open_row(&mut gen, line, word, label, &keys)?;
        }
        Ok(())
    }

    fn expand_open_row(
        &mut self,
        gen: &mut IdGen,
        line: usize,
        word: &str,
        label: &str,
        keys: &HashMap<String, String>,
    ) -> Result<(), LexiconError> {
        match label {
            "v" | "vo" | "vpr" | "vi" | "voi" | "vc" | "voc" | "vop" => {
                self.expand_verb(gen, line, word, label, keys)
            }
            "cn" => {
                let pred = keys.get("pred").cloned().unwrap_or_else(|| word.to_string());
                self.push_src(gen, line, word, label, false, "n(sg):X", &format!("[{pred}(X)]"))?;
                let plural = keys
                    .get("plural")
                    .cloned()
                    .unwrap_or_else(|| pluralize(word));
                self.push_src(gen, line, &plural, label, false, "n(pl):X", &format!("[{pred}(X)]"))?;
                let bare = format!("[implicit_quantifier(X), {pred}(X)]");
                self.push_src(gen, line, &plural, label, false, "np(3,pl):X", &bare)?;
                self.push_raised(gen, line, &plural, label, false, "np(3,pl):X", &bare)?;
                Ok(())
            }
            "mn" => {
                let pred = keys.get("pred").cloned().unwrap_or_else(|| word.to_string());
                self.push_src(gen, line, word, label, false, "n(sg):X", &format!("[{pred}(X)]"))?;
                self.push_src(
                    gen,
                    line,
                    word,
                    label,
                    false,
                    "np(3,sg):X",
                    &format!("[exist(X), {pred}(X)]"),
                )?;
                Ok(())
            }
            "pn" => {
                let atom = keys
                    .get("pred")
                    .cloned()
                    .unwrap_or_else(|| word.to_lowercase());
                let terms = format!("[the(X), name_of(X,{atom}), phrase_closed(X)]");
                self.push_src(gen, line, word, label, false, "np(3,sg):X", &terms)?;
                self.push_raised(gen, line, word, label, false, "np(3,sg):X", &terms)?;
                Ok(())
            }
            "nom_pro" => {
                let desc = require_key(keys, "desc", line)?;
                let p = keys.get("pers").map(String::as_str).unwrap_or("P");
                let n = keys.get("num").map(String::as_str).unwrap_or("N");
                let cat = format!("s(T,F,0):S/(s(T,F,0):S\\np({p},{n}):X)");
                let terms = format!("[the(X), {desc}(X), phrase_closed(X)]");
                self.push_src(gen, line, word, label, true, &cat, &terms)
            }
            "obj_pro" => {
                let desc = require_key(keys, "desc", line)?;
                let p = keys.get("pers").map(String::as_str).unwrap_or("P");
                let n = keys.get("num").map(String::as_str).unwrap_or("N");
                let cat = format!("np({p},{n}):X");
                let terms = format!("[the(X), {desc}(X), phrase_closed(X)]");
                self.push_src(gen, line, word, label, true, &cat, &terms)
            }
            "poss_pro" => {
                let desc = require_key(keys, "desc", line)?;
                let cat = "np(3,N):X/eop:X/n(N):X";
                let terms =
                    format!("[the(Y), {desc}(Y), phrase_closed(Y), the(X), of(X,Y)]");
                self.push_src(gen, line, word, label, true, cat, &terms)?;
                self.push_raised(gen, line, word, label, true, cat, &terms)?;
                Ok(())
            }
            "det" => {
                let pred = keys.get("pred").cloned().unwrap_or_else(|| "the".into());
                let n = keys.get("num").map(String::as_str).unwrap_or("N");
                let cat = format!("np(3,{n}):X/eop:X/n({n}):X");
                let terms = format!("[{pred}(X)]");
                self.push_src(gen, line, word, label, false, &cat, &terms)?;
                self.push_raised(gen, line, word, label, false, &cat, &terms)?;
                Ok(())
            }
            "part" => self.push_src(gen, line, word, label, false, &format!("part({word}):_"), "[]"),
            "adj" => {
                let pred = keys.get("pred").cloned().unwrap_or_else(|| word.to_string());
                self.push_src(
                    gen,
                    line,
                    word,
                    label,
                    false,
                    "n(N):X/n(N):X",
                    &format!("[{pred}(X)]"),
                )
            }
            "post_vp_adv" => {
                let pred = keys.get("pred").cloned().unwrap_or_else(|| word.to_string());
                self.push_src(
                    gen,
                    line,
                    word,
                    label,
                    false,
                    "(s(T,F,0):S\\np(P,N):X)\\(s(T,F,0):S\\np(P,N):X)",
                    &format!("[{pred}(S), swa(S)]"),
                )
            }
            "post_s_adv" => {
                let pred = keys.get("pred").cloned().unwrap_or_else(|| word.to_string());
                self.push_src(
                    gen,
                    line,
                    word,
                    label,
                    false,
                    "s(T,F,0):S\\s(T,F,0):S",
                    &format!("[{pred}(S), swa(S)]"),
                )
            }
            "prep" => {
                let pred = keys.get("pred").cloned().unwrap_or_else(|| word.to_string());
                self.push_src(gen, line, word, label, false, &format!("pp({word}):X/np(_,_):X"), "[]")?;
                self.push_src(
                    gen,
                    line,
                    word,
                    label,
                    false,
                    "n(N):X\\n(N):X/np(_,_):Y",
                    &format!("[{pred}(X,Y), npmod(X)]"),
                )?;
                self.push_src(
                    gen,
                    line,
                    word,
                    label,
                    false,
                    "s(T,F,0):S\\s(T,F,0):S/np(_,_):Y",
                    &format!("[{pred}(S,Y)]"),
                )?;
                self.push_src(
                    gen,
                    line,
                    word,
                    label,
                    false,
                    "s(T,F,0):S/s(T,F,0):S/np(_,_):Y",
                    &format!("[{pred}(S,Y)]"),
                )?;
                Ok(())
            }
            "sconj" => {
                let pred = keys.get("pred").cloned().unwrap_or_else(|| word.to_string());
                self.push_src(
                    gen,
                    line,
                    word,
                    label,
                    false,
                    "s(T,F,0):Y/s(T,F,0):Y/eop:X/s(_,_,0):X",
                    &format!("[{pred}(X,Y)]"),
                )?;
                self.push_src(
                    gen,
                    line,
                    word,
                    label,
                    false,
                    "s(T,F,0):Y\\s(T,F,0):Y/eop:X/s(_,_,0):X",
                    &format!("[{pred}(X,Y)]"),
                )?;
                Ok(())
            }
            other => Err(LexiconError::Row {
                line,
                msg: format!("unknown part-of-speech label {other:?}"),
            }),
        }
    }

    fn push_raised(
        &mut self,
        gen: &mut IdGen,
        line: usize,
        word: &str,
        label: &str,
        pronoun: bool,
        cat_src: &str,
        terms_src: &str,
    ) -> Result<(), LexiconError> {
        let (cat, terms) = link_entry(cat_src, terms_src, gen).map_err(|e| LexiconError::Literal {
            line,
            source: e,
        })?;
        let (rc, rt) = raise_entry(&cat, &terms, gen).ok_or_else(|| LexiconError::Row {
            line,
            msg: "cannot raise a category whose target is not np".into(),
        })?;
        self.push(Entry {
            word: word.to_string(),
            cat: rc,
            terms: rt,
            pronoun,
            label: format!("{label}+raised"),
        });
        Ok(())
    }

    fn expand_verb(
        &mut self,
        gen: &mut IdGen,
        line: usize,
        word: &str,
        label: &str,
        keys: &HashMap<String, String>,
    ) -> Result<(), LexiconError> {
        let pred = keys.get("pred").cloned().unwrap_or_else(|| word.to_string());
        let past = keys.get("past").cloned().unwrap_or_else(|| past_form(word));
        let en = keys
            .get("en")
            .cloned()
            .unwrap_or_else(|| keys.get("past").cloned().unwrap_or_else(|| past_form(word)));
        let ing = keys.get("ing").cloned().unwrap_or_else(|| ing_form(word));
        let s_form = keys.get("s").cloned().unwrap_or_else(|| s_form_of(word));

        // (surface form, clause features, subject features, tense term value)
        let rows: Vec<(String, &str, &str, String)> = vec![
            (past.clone(), "s(ed,+,0):S", "np(_,_):X", "ed".into()),
            (en.clone(), "s(en,-,0):S", "np(_,_):X", "en".into()),
            (ing, "s(ing,-,0):S", "np(_,_):X", "ing".into()),
            (s_form, "s(s,+,0):S", "np(3,sg):X", "s".into()),
            (word.into(), "s(-T,-,0):S", "np(_,_):X", "T".into()),
            (word.into(), "s(s,+,0):S", "np(_,pl):X", "s".into()),
            (word.into(), "s(s,+,0):S", "np(1,_):X", "s".into()),
            (word.into(), "s(s,+,0):S", "np(2,_):X", "s".into()),
        ];

        let particle = keys.get("part").cloned().unwrap_or_else(|| "away".into());
        let (suffix, head_term): (String, String) = match label {
            "v" => ("".into(), format!("{pred}(S,X,_)")),
            "vo" => ("/np(_,_):Y".into(), format!("{pred}(S,X,Y)")),
            "vpr" => (
                format!("/part({particle}):_"),
                format!("{pred}_{particle}(S,X,_)"),
            ),
            "vi" => (
                "/eop:S/(s(to,-,0):Y2\\np(_,_):X)".into(),
                format!("{pred}(S,X,Y2)"),
            ),
            "voi" => (
                "/eop:S/(s(to,-,0):Y2\\np(_,_):Z)/np(_,_):Z".into(),
                format!("{pred}(S,X,Z,Y2)"),
            ),
            "vc" => ("/eop:S/s(_,+,that):Y2".into(), format!("{pred}(S,X,Y2)")),
            "voc" => (
                "/eop:S/s(_,+,that):Y2/np(_,_):Z".into(),
                format!("{pred}(S,X,Z,Y2)"),
            ),
            "vop" => ("/pp(to):Y2/np(_,_):Z".into(), format!("{pred}(S,X,Z,Y2)")),
            _ => unreachable!(),
        };

        for (form, core, subj, tns) in &rows {
            let cat_src = format!("{core}\\{subj}{suffix}");
            let terms_src = format!("[{head_term}, tns(S,{tns})]");
            self.push_src(gen, line, form, label, false, &cat_src, &terms_src)?;
        }

        // A transitive past participle also postmodifies a noun, taking the
        // clause-modifier that follows it as its argument.
        if label == "vo" {
            let cat_src = "n(N):E\\n(N):E/(s(T,F,0):E2\\s(T,F,0):E2)";
            let terms_src = format!("[{pred}(E2,_,E), tns(E2,en), npmod(E)]");
            self.push_src(gen, line, &en, "vo+nmod", false, cat_src, &terms_src)?;
        }
        Ok(())
    }
}

fn require_key(
    keys: &HashMap<String, String>,
    key: &str,
    line: usize,
) -> Result<String, LexiconError> {
    keys.get(key).cloned().ok_or_else(|| LexiconError::Row {
        line,
        msg: format!("label requires {key}= option"),
    })
}

/// Parse a category and a term list into one shared namespace.
fn link_entry(
    cat_src: &str,
    terms_src: &str,
    gen: &mut IdGen,
) -> Result<(Category, TermList), LiteralError> {
    let mut parser = crate::literal::LiteralParser::new(gen);
    let cat = parser.parse_category(cat_src)?;
    let terms = parser.parse_terms(terms_src)?;
    Ok((cat, terms))
}

/// Type raising: an entry whose target is `np` becomes a forward functor over
/// the verb phrase still to come, and marks its index as the subject.
pub fn raise_entry(cat: &Category, terms: &TermList, gen: &mut IdGen) -> Option<(Category, TermList)> {
    // Strip forward arguments down to the np core.
    let mut stripped = Vec::new();
    let mut core = cat.clone();
    while let Category::Fun { res, slash, arg } = core {
        if slash != Slash::Fwd {
            return None;
        }
        stripped.push(*arg);
        core = *res;
    }
    let basic = match &core {
        Category::Basic(b) if b.head == crate::category::Head::Np => b.clone(),
        _ => return None,
    };
    let x = basic.index;
    let s_idx = gen.sem();
    let t = crate::category::FeatVal::Var(gen.var());
    let f = crate::category::FeatVal::Var(gen.var());
    let clause = Category::Basic(crate::category::Basic {
        head: crate::category::Head::S,
        feats: vec![t.clone(), f.clone(), crate::category::FeatVal::atom("0")],
        index: s_idx,
    });
    let vp = Category::fun(clause.clone(), Slash::Bwd, core.clone());
    let mut raised = Category::fun(clause, Slash::Fwd, vp);
    for arg in stripped.into_iter().rev() {
        raised = Category::fun(raised, Slash::Fwd, arg);
    }
    let mut new_terms = vec![SemTerm::new("subj", vec![TermArg::Index(x)])];
    new_terms.extend(terms.iter().cloned());
    Some((raised, new_terms))
}

/// Division variants for an object relativizer: the clause body may still be
/// missing one or two inner arguments besides the relativized np.
pub fn geach_variants(
    cat: &Category,
    terms: &TermList,
    gen: &mut IdGen,
) -> Vec<(Category, TermList)> {
    // Expected shape: (prefix / eop) / body with body = bodyres / np.
    let Category::Fun { res, slash: Slash::Fwd, arg: body } = cat else {
        return vec![];
    };
    let Category::Fun { res: prefix, slash: Slash::Fwd, arg: eop_arg } = res.as_ref() else {
        return vec![];
    };
    let Category::Basic(e) = eop_arg.as_ref() else {
        return vec![];
    };
    if e.head != crate::category::Head::Eop {
        return vec![];
    }
    let Category::Fun { res: body_res, slash: Slash::Fwd, arg: np_arg } = body.as_ref() else {
        return vec![];
    };
    // Unlink the body's clause index: the intervening arguments mean the eop
    // no longer closes the clause the body's head describes directly.
    let fresh_body_res = match body_res.as_ref() {
        Category::Basic(b) => {
            let mut b = b.clone();
            b.index = gen.sem();
            Category::Basic(b)
        }
        other => other.clone(),
    };

    let mut out = Vec::new();
    for k in 1..=2u32 {
        let vars: Vec<Category> = (0..k).map(|_| Category::Var(gen.cat())).collect();
        let mut new_body = fresh_body_res.clone();
        for v in &vars {
            new_body = Category::fun(new_body, Slash::Fwd, v.clone());
        }
        new_body = Category::fun(new_body, Slash::Fwd, np_arg.as_ref().clone());
        let mut new_cat = prefix.as_ref().clone();
        for v in &vars {
            new_cat = Category::fun(new_cat, Slash::Fwd, v.clone());
        }
        new_cat = Category::fun(new_cat, Slash::Fwd, eop_arg.as_ref().clone());
        new_cat = Category::fun(new_cat, Slash::Fwd, new_body);
        out.push((new_cat, terms.clone()));
    }
    out
}

/// The parser's initial constituent: a completed sentence is an `s` wrapped
/// up together with its end-of-phrase marker.
pub fn initial_category(gen: &mut IdGen) -> Category {
    parse_category("tls(T,+,C):E/eop:E/s(T,+,C):E", gen).expect("initial category literal")
}

/// The empty end-of-phrase word the parser may posit.
pub fn eps_entry(gen: &mut IdGen) -> (Category, TermList) {
    link_entry("eop:X", "[phrase_closed(X)]", gen).expect("eop literal")
}

fn pluralize(word: &str) -> String {
    if let Some(stem) = word.strip_suffix("fe") {
        return format!("{stem}ves");
    }
    if word.ends_with('s') || word.ends_with('x') || word.ends_with('z')
        || word.ends_with("ch") || word.ends_with("sh")
    {
        return format!("{word}es");
    }
    if word.len() > 1 && word.ends_with('y') {
        let prev = word.as_bytes()[word.len() - 2] as char;
        if !"aeiou".contains(prev) {
            return format!("{}ies", &word[..word.len() - 1]);
        }
    }
    format!("{word}s")
}

fn past_form(word: &str) -> String {
    if word.ends_with('e') {
        return format!("{word}d");
    }
    if word.len() > 1 && word.ends_with('y') {
        let prev = word.as_bytes()[word.len() - 2] as char;
        if !"aeiou".contains(prev) {
            return format!("{}ied", &word[..word.len() - 1]);
        }
    }
    format!("{word}ed")
}

fn ing_form(word: &str) -> String {
    if let Some(stem) = word.strip_suffix("ie") {
        return format!("{stem}ying");
    }
    if word.ends_with('e') && !word.ends_with("ee") {
        return format!("{}ing", &word[..word.len() - 1]);
    }
    format!("{word}ing")
}

fn s_form_of(word: &str) -> String {
    pluralize(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{display_cat, NameCtx};
    use crate::term::terms_str;

    fn display_entry(e: &Entry) -> String {
        let mut ctx = NameCtx::new();
        let cat = ctx.cat_str(&e.cat);
        let terms = crate::term::terms_str(&mut ctx, &e.terms);
        format!("{cat} {terms}")
    }

    #[test]
    fn third_singular_verb_row() {
        let lex = Lexicon::from_tsv("walk\tv\n", "").unwrap();
        let mut gen = IdGen::new();
        let entries = lex.lookup("walks", &mut gen);
        assert_eq!(entries.len(), 1);
        assert_eq!(
            display_entry(&entries[0]),
            "s(s,+,0):e1\\np(3,sg):e2 [walk(e1,e2,e3), tns(e1,s)]"
        );
    }

    #[test]
    fn base_form_covers_untensed_and_agreeing_present() {
        let lex = Lexicon::from_tsv("walk\tv\n", "").unwrap();
        let mut gen = IdGen::new();
        let entries = lex.lookup("walk", &mut gen);
        assert_eq!(entries.len(), 4);
        let shown: Vec<String> = entries.iter().map(display_entry).collect();
        assert!(shown.contains(&"s(-s1,-,0):e1\\np(s2,s3):e2 [walk(e1,e2,e3), tns(e1,s1)]".to_string()),
            "untensed row missing: {shown:?}");
        assert!(shown.contains(&"s(s,+,0):e1\\np(s1,pl):e2 [walk(e1,e2,e3), tns(e1,s)]".to_string()));
        assert!(shown.contains(&"s(s,+,0):e1\\np(1,s1):e2 [walk(e1,e2,e3), tns(e1,s)]".to_string()));
        assert!(shown.contains(&"s(s,+,0):e1\\np(2,s1):e2 [walk(e1,e2,e3), tns(e1,s)]".to_string()));
    }

    #[test]
    fn determiner_and_its_raised_variant() {
        let lex = Lexicon::from_tsv("the\tdet\n", "").unwrap();
        let mut gen = IdGen::new();
        let entries = lex.lookup("the", &mut gen);
        assert_eq!(entries.len(), 2);
        assert_eq!(
            display_entry(&entries[0]),
            "np(3,s1):e1/eop:e1/n(s1):e1 [the(e1)]"
        );
        assert_eq!(
            display_entry(&entries[1]),
            "s(s1,s2,0):e1/(s(s1,s2,0):e1\\np(3,s3):e2)/eop:e2/n(s3):e2 [subj(e2), the(e2)]"
        );
    }

    #[test]
    fn irregular_past_shares_surface_with_base() {
        let lex = Lexicon::from_tsv("read\tv\tpast=read\nread\tvo\tpast=read\n", "").unwrap();
        let mut gen = IdGen::new();
        let entries = lex.lookup("read", &mut gen);
        // Two subcats × (past, participle, four base rows) + noun postmodifier.
        assert_eq!(entries.len(), 13);
        let tensed_trans: Vec<String> = entries
            .iter()
            .filter(|e| e.label == "vo")
            .map(display_entry)
            .filter(|s| s.starts_with("s(ed"))
            .collect();
        assert_eq!(
            tensed_trans,
            vec!["s(ed,+,0):e1\\np(s1,s2):e2/np(s3,s4):e3 [read(e1,e2,e3), tns(e1,ed)]"]
        );
        let nmod: Vec<&Entry> = entries.iter().filter(|e| e.label == "vo+nmod").collect();
        assert_eq!(nmod.len(), 1);
        assert_eq!(
            display_entry(nmod[0]),
            "n(s1):e1\\n(s1):e1/(s(s2,s3,0):e2\\s(s2,s3,0):e2) [read(e2,e3,e1), tns(e2,en), npmod(e1)]"
        );
    }

    #[test]
    fn bare_plural_noun_has_quantified_np_rows() {
        let lex = Lexicon::from_tsv("bird\tcn\n", "").unwrap();
        let mut gen = IdGen::new();
        assert_eq!(lex.lookup("bird", &mut gen).len(), 1);
        let plural = lex.lookup("birds", &mut gen);
        assert_eq!(plural.len(), 3);
        let shown: Vec<String> = plural.iter().map(display_entry).collect();
        assert_eq!(shown[0], "n(pl):e1 [bird(e1)]");
        assert_eq!(shown[1], "np(3,pl):e1 [implicit_quantifier(e1), bird(e1)]");
        assert_eq!(
            shown[2],
            "s(s1,s2,0):e1/(s(s1,s2,0):e1\\np(3,pl):e2) [subj(e2), implicit_quantifier(e2), bird(e2)]"
        );
    }

    #[test]
    fn nominative_pronoun_is_preraised_without_subject_marker() {
        let lex =
            Lexicon::from_tsv("he\tnom_pro\tdesc=male\tpers=3\tnum=sg\n", "").unwrap();
        let mut gen = IdGen::new();
        let entries = lex.lookup("he", &mut gen);
        assert_eq!(entries.len(), 1);
        assert!(entries[0].pronoun);
        assert_eq!(
            display_entry(&entries[0]),
            "s(s1,s2,0):e1/(s(s1,s2,0):e1\\np(3,sg):e2) [the(e2), male(e2), phrase_closed(e2)]"
        );
    }

    #[test]
    fn possessive_pronoun_builds_definite_of_definite() {
        let lex = Lexicon::from_tsv("her\tposs_pro\tdesc=female\n", "").unwrap();
        let mut gen = IdGen::new();
        let entries = lex.lookup("her", &mut gen);
        assert_eq!(entries.len(), 2);
        assert_eq!(
            display_entry(&entries[0]),
            "np(3,s1):e1/eop:e1/n(s1):e1 [the(e2), female(e2), phrase_closed(e2), the(e1), of(e1,e2)]"
        );
        assert!(display_entry(&entries[1]).starts_with("s(s1,s2,0):e1/(s(s1,s2,0):e1\\np(3,s3):e2)/eop:e2/n(s3):e2 [subj(e2)"));
    }

    #[test]
    fn preposition_has_four_uses() {
        let lex = Lexicon::from_tsv("in\tprep\n", "").unwrap();
        let mut gen = IdGen::new();
        let entries = lex.lookup("in", &mut gen);
        assert_eq!(entries.len(), 4);
        let shown: Vec<String> = entries.iter().map(display_entry).collect();
        assert_eq!(shown[0], "pp(in):e1/np(s1,s2):e1 []");
        assert_eq!(shown[1], "n(s1):e1\\n(s1):e1/np(s2,s3):e2 [in(e1,e2), npmod(e1)]");
        assert_eq!(shown[2], "s(s1,s2,0):e1\\s(s1,s2,0):e1/np(s3,s4):e2 [in(e1,e2)]");
        assert_eq!(shown[3], "s(s1,s2,0):e1/s(s1,s2,0):e1/np(s3,s4):e2 [in(e1,e2)]");
    }

    #[test]
    fn relativizer_division_variants() {
        let closed = "that\tn(N):E\\n(N):E/eop:S/(s(_,+,0):S/np(3,N):E)\t[npmod(E)]\tgeach\n";
        let lex = Lexicon::from_tsv("", closed).unwrap();
        let mut gen = IdGen::new();
        let entries = lex.lookup("that", &mut gen);
        assert_eq!(entries.len(), 3);
        assert_eq!(
            display_cat(&entries[0].cat),
            "n(s1):e1\\n(s1):e1/eop:e2/(s(s2,+,0):e2/np(3,s1):e1)"
        );
        assert_eq!(
            display_cat(&entries[1].cat),
            "n(s1):e1\\n(s1):e1/c1/eop:e2/(s(s2,+,0):e3/c1/np(3,s1):e1)"
        );
        assert_eq!(
            display_cat(&entries[2].cat),
            "n(s1):e1\\n(s1):e1/c1/c2/eop:e2/(s(s2,+,0):e3/c1/c2/np(3,s1):e1)"
        );
    }

    #[test]
    fn lookups_rename_apart() {
        let lex = Lexicon::from_tsv("the\tdet\n", "").unwrap();
        let mut gen = IdGen::new();
        let a = lex.lookup("the", &mut gen);
        let b = lex.lookup("the", &mut gen);
        let (mut ia, mut ib) = (Vec::new(), Vec::new());
        a[0].cat.sem_indices(&mut ia);
        b[0].cat.sem_indices(&mut ib);
        assert!(ia.iter().all(|i| !ib.contains(i)));
    }

    #[test]
    fn initial_category_shape() {
        let mut gen = IdGen::new();
        assert_eq!(
            display_cat(&initial_category(&mut gen)),
            "tls(s1,+,s2):e1/eop:e1/s(s1,+,s2):e1"
        );
        let (eps, terms) = eps_entry(&mut gen);
        assert_eq!(display_cat(&eps), "eop:e1");
        let mut ctx = NameCtx::new();
        assert_eq!(terms_str(&mut ctx, &terms), "[phrase_closed(e1)]");
    }
}
