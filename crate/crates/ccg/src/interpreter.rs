//! Interpretation of term lists against a discourse database: definite
//! reference resolution, plausibility checking, penalty detection, and the
//! disconnectedness metric.
//!
//! The interpreter reads a state's term list and buffer but never mutates
//! them; its only outputs are annotations (resolutions, accommodations) and
//! timed penalties collected in [`Interp`].

use std::collections::{BTreeMap, BTreeSet};

use crate::adjudicator::{PenaltyKind, TimedPenalty};
use crate::category::{SemIndex, Subst};
use crate::derivation::Constituent;
use crate::term::{apply_terms, is_restrictive, SemTerm, TermArg, TermList};

/// A ground fact, e.g. `horse(h2)` or `race(ev,x1,h2)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DbAtom {
    pub pred: String,
    pub args: Vec<String>,
}

impl DbAtom {
    pub fn new(pred: &str, args: &[&str]) -> DbAtom {
        DbAtom {
            pred: pred.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// The preceding discourse, read-only during a run.
#[derive(Clone, Default, Debug)]
pub struct DiscourseDb {
    pub atoms: Vec<DbAtom>,
}

impl DiscourseDb {
    pub fn new(atoms: Vec<DbAtom>) -> Self {
        DiscourseDb { atoms }
    }
}

/// Conjunctive patterns describing implausible states of affairs.
#[derive(Clone, Default, Debug)]
pub struct PlausibilityDb {
    pub patterns: Vec<TermList>,
}

/// Per-state interpretation record: annotations plus detected penalties.
#[derive(Clone, Default, Debug)]
pub struct Interp {
    /// Definite indices resolved to discourse entities.
    pub resolutions: BTreeMap<SemIndex, String>,
    /// Accommodated indices with the query that described them.
    pub accoms: BTreeMap<SemIndex, TermList>,
    pub penalties: Vec<TimedPenalty>,
}

impl Interp {
    /// Substitutions merge indices; keep the record keyed canonically.
    pub fn apply_subst(&mut self, s: &Subst) {
        let resolutions = std::mem::take(&mut self.resolutions);
        for (k, v) in resolutions {
            self.resolutions.entry(s.resolve_sem(k)).or_insert(v);
        }
        let accoms = std::mem::take(&mut self.accoms);
        for (k, q) in accoms {
            self.accoms
                .entry(s.resolve_sem(k))
                .or_insert_with(|| apply_terms(s, &q));
        }
        for p in &mut self.penalties {
            p.index = s.resolve_sem(p.index);
        }
    }

    /// Ground atoms contributed by accommodation. Each accommodated index
    /// becomes a fresh entity named after it; atoms that still contain an
    /// unknown index are skipped.
    pub fn overlay_atoms(&self) -> Vec<DbAtom> {
        let mut out = Vec::new();
        for (x, q) in &self.accoms {
            'atom: for t in q {
                let mut args = Vec::new();
                for a in &t.args {
                    match a {
                        TermArg::Index(i) => {
                            if let Some(c) = self.resolutions.get(i) {
                                args.push(c.clone());
                            } else if self.accoms.contains_key(i) {
                                args.push(accom_entity(*i));
                            } else if i == x {
                                args.push(accom_entity(*x));
                            } else {
                                continue 'atom;
                            }
                        }
                        TermArg::Val(v) => match v.as_atom() {
                            Some(name) => args.push(name.to_string()),
                            None => continue 'atom,
                        },
                    }
                }
                out.push(DbAtom {
                    pred: t.pred.clone(),
                    args,
                });
            }
        }
        out
    }

    pub fn push_penalty(&mut self, kind: PenaltyKind, index: SemIndex, now: u32) {
        if !self
            .penalties
            .iter()
            .any(|p| p.kind == kind && p.index == index)
        {
            self.penalties.push(TimedPenalty {
                kind,
                index,
                detected_at: now,
            });
        }
    }
}

fn accom_entity(x: SemIndex) -> String {
    format!("acc{}", x.0)
}

/// All ways of grounding a conjunctive query in the database, starting from
/// the given pre-bound indices.
pub fn eval_query(
    query: &[SemTerm],
    db: &[DbAtom],
    pre: &BTreeMap<SemIndex, String>,
) -> Vec<BTreeMap<SemIndex, String>> {
    fn go(
        query: &[SemTerm],
        db: &[DbAtom],
        binding: &mut BTreeMap<SemIndex, String>,
        out: &mut Vec<BTreeMap<SemIndex, String>>,
    ) {
        let Some(t) = query.first() else {
            out.push(binding.clone());
            return;
        };
        'db: for atom in db {
            if atom.pred != t.pred || atom.args.len() != t.args.len() {
                continue;
            }
            let mut added = Vec::new();
            for (qa, da) in t.args.iter().zip(&atom.args) {
                match qa {
                    TermArg::Index(i) => match binding.get(i) {
                        Some(v) if v == da => {}
                        Some(_) => {
                            for k in added {
                                binding.remove(&k);
                            }
                            continue 'db;
                        }
                        None => {
                            binding.insert(*i, da.clone());
                            added.push(*i);
                        }
                    },
                    TermArg::Val(v) => match v.as_atom() {
                        Some(name) if name == da => {}
                        Some(_) => {
                            for k in added {
                                binding.remove(&k);
                            }
                            continue 'db;
                        }
                        // An unbound feature variable matches anything.
                        None => {}
                    },
                }
            }
            go(&query[1..], db, binding, out);
            for k in added {
                binding.remove(&k);
            }
        }
    }
    let mut binding = pre.clone();
    let mut out = Vec::new();
    go(query, db, &mut binding, &mut out);
    out
}

/// Distinct entities a query assigns to `x`.
pub fn candidates(
    query: &[SemTerm],
    db: &[DbAtom],
    pre: &BTreeMap<SemIndex, String>,
    x: SemIndex,
) -> BTreeSet<String> {
    eval_query(query, db, pre)
        .into_iter()
        .filter_map(|b| b.get(&x).cloned())
        .collect()
}

fn is_closed(sem: &TermList, x: SemIndex) -> bool {
    sem.iter()
        .any(|t| t.pred == "phrase_closed" && t.args.first() == Some(&TermArg::Index(x)))
}

fn restrictive_suffix(sem: &TermList, from: usize) -> TermList {
    sem[from..]
        .iter()
        .filter(|t| is_restrictive(&t.pred))
        .cloned()
        .collect()
}

/// Definite reference resolution: scan the term list right to left for
/// `the(X)`, query the database with the restrictive description that
/// follows, and resolve, wait, or accommodate. Emits the reference-quality
/// penalties as side effects.
pub fn resolve_definites(interp: &mut Interp, sem: &TermList, db: &DiscourseDb, now: u32) {
    for i in (0..sem.len()).rev() {
        let t = &sem[i];
        if t.pred != "the" {
            continue;
        }
        let Some(&TermArg::Index(x)) = t.args.first() else {
            continue;
        };
        if interp.resolutions.contains_key(&x) || interp.accoms.contains_key(&x) {
            continue;
        }
        let q = restrictive_suffix(sem, i);
        if q.is_empty() {
            continue; // No description yet: wait.
        }
        let mut full = db.atoms.clone();
        full.extend(interp.overlay_atoms());
        let c = candidates(&q, &full, &interp.resolutions, x);
        let closed = is_closed(sem, x);
        match c.len() {
            0 => {
                if closed {
                    interp.accoms.insert(x, q);
                } else {
                    interp.push_penalty(PenaltyKind::AccomComplexDescription, x, now);
                }
            }
            1 => {
                let ent = c.into_iter().next().unwrap();
                interp.resolutions.insert(x, ent);
                if !closed {
                    interp.push_penalty(PenaltyKind::OverspecifiedRef, x, now);
                }
            }
            _ => {
                if closed {
                    let ent = c.into_iter().next().unwrap();
                    interp.resolutions.insert(x, ent);
                    interp.push_penalty(PenaltyKind::UnderspecifiedRef, x, now);
                }
                // Open with several candidates: more description may come.
            }
        }
    }
}

/// Restrictive terms carried by the lexical leaf that introduced the given
/// noun-postmodifier marker.
fn npmod_leaf_terms(buffer: &[Constituent], x: SemIndex) -> Vec<SemTerm> {
    fn visit(c: &Constituent, x: SemIndex, out: &mut Vec<SemTerm>) {
        match &c.children {
            None => {
                if c.terms
                    .iter()
                    .any(|t| t.pred == "npmod" && t.args.first() == Some(&TermArg::Index(x)))
                {
                    out.extend(c.terms.iter().filter(|t| is_restrictive(&t.pred)).cloned());
                }
            }
            Some(ch) => {
                visit(&ch.0, x, out);
                visit(&ch.1, x, out);
            }
        }
    }
    let mut out = Vec::new();
    for c in buffer {
        visit(c, x, &mut out);
    }
    out
}

/// The constituent whose combination introduced this shift marker: the right
/// operand of the crossing rule, or the newest constituent if the shift was
/// anticipated before the combination happened.
fn shift_modifier_terms(buffer: &[Constituent], marker: &SemTerm) -> Vec<SemTerm> {
    fn delta_of(c: &Constituent) -> &[SemTerm] {
        match &c.children {
            None => &[],
            Some(ch) => &c.terms[ch.0.terms.len() + ch.1.terms.len()..],
        }
    }
    fn find<'a>(c: &'a Constituent, marker: &SemTerm) -> Option<&'a Constituent> {
        if delta_of(c).contains(marker) {
            return c.children.as_ref().map(|ch| &ch.1);
        }
        let ch = c.children.as_ref()?;
        find(&ch.0, marker).or_else(|| find(&ch.1, marker))
    }
    let host = buffer.iter().find_map(|c| find(c, marker));
    let src = host.or(buffer.last());
    src.map(|c| {
        c.terms
            .iter()
            .filter(|t| is_restrictive(&t.pred))
            .cloned()
            .collect()
    })
    .unwrap_or_default()
}

/// Match an implausibility pattern against the term list. Pattern indices
/// bind to term arguments; unbound feature variables are wildcards.
fn pattern_match(pattern: &TermList, sem: &TermList) -> Option<SemIndex> {
    fn go(
        pattern: &[SemTerm],
        sem: &TermList,
        binding: &mut BTreeMap<SemIndex, TermArg>,
    ) -> bool {
        let Some(p) = pattern.first() else {
            return true;
        };
        'sem: for t in sem {
            if t.pred != p.pred || t.args.len() != p.args.len() {
                continue;
            }
            let mut added = Vec::new();
            for (pa, sa) in p.args.iter().zip(&t.args) {
                match pa {
                    TermArg::Index(i) => match binding.get(i) {
                        Some(v) if v == sa => {}
                        Some(_) => {
                            for k in added {
                                binding.remove(&k);
                            }
                            continue 'sem;
                        }
                        None => {
                            binding.insert(*i, sa.clone());
                            added.push(*i);
                        }
                    },
                    TermArg::Val(v) => match v.as_atom() {
                        Some(name) => {
                            let matches = matches!(sa, TermArg::Val(sv) if sv.as_atom() == Some(name));
                            if !matches {
                                for k in added {
                                    binding.remove(&k);
                                }
                                continue 'sem;
                            }
                        }
                        None => {}
                    },
                }
            }
            if go(&pattern[1..], sem, binding) {
                return true;
            }
            for k in added {
                binding.remove(&k);
            }
        }
        false
    }
    let mut binding = BTreeMap::new();
    if !go(pattern, sem, &mut binding) {
        return None;
    }
    // Report the index the pattern's first variable landed on.
    for p in pattern {
        for a in &p.args {
            if let TermArg::Index(i) = a {
                if let Some(TermArg::Index(target)) = binding.get(i) {
                    return Some(*target);
                }
            }
        }
    }
    Some(SemIndex(0))
}

/// Detect the remaining penalty conditions. Run after `resolve_definites`
/// for the current word.
pub fn assess_penalties(
    interp: &mut Interp,
    sem: &TermList,
    buffer: &[Constituent],
    pronoun_indices: &BTreeSet<SemIndex>,
    db: &DiscourseDb,
    plaus: &PlausibilityDb,
    now: u32,
) {
    let mut full = db.atoms.clone();
    full.extend(interp.overlay_atoms());

    // Implausibility: a known-bad pattern embeds into the term list.
    for pat in &plaus.patterns {
        if let Some(ix) = pattern_match(pat, sem) {
            interp.push_penalty(PenaltyKind::Implausibility, ix, now);
        }
    }

    // New subject: a contentful subject that is neither pronominal nor
    // identifiable in the discourse.
    for t in sem {
        if t.pred != "subj" {
            continue;
        }
        let Some(&TermArg::Index(x)) = t.args.first() else {
            continue;
        };
        if pronoun_indices.contains(&x) || interp.resolutions.contains_key(&x) {
            continue;
        }
        let about_x: TermList = sem
            .iter()
            .filter(|t| is_restrictive(&t.pred) && t.args.contains(&TermArg::Index(x)))
            .cloned()
            .collect();
        if about_x.is_empty() {
            continue;
        }
        let unfindable = interp.accoms.contains_key(&x)
            || candidates(&about_x, &full, &interp.resolutions, x).is_empty();
        if unfindable {
            interp.push_penalty(PenaltyKind::NewSubject, x, now);
        }
    }

    // Heavy argument before a light adverbial: the adverbial modifies a
    // situation whose predication took a clausal complement earlier in the
    // term list.
    for (ai, adv) in sem.iter().enumerate() {
        if adv.pred != "swa" {
            continue;
        }
        let Some(&TermArg::Index(a)) = adv.args.first() else {
            continue;
        };
        let clausal = sem[..ai].iter().any(|v| {
            is_restrictive(&v.pred)
                && v.args.first() == Some(&TermArg::Index(a))
                && v.args[1..].iter().any(|arg| match arg {
                    TermArg::Index(c) => sem.iter().any(|u| {
                        u.pred == "tns" && u.args.first() == Some(&TermArg::Index(*c))
                    }),
                    _ => false,
                })
        });
        if clausal {
            interp.push_penalty(PenaltyKind::HeavyArgLightModifier, a, now);
        }
    }

    // Shift over a non-given argument: the modifier that crossed must be
    // identifiable in the discourse, otherwise the shift is penalized.
    for t in sem {
        if t.pred != "h_shifted" || t.args.len() != 2 {
            continue;
        }
        let TermArg::Index(y) = t.args[1] else {
            continue;
        };
        let modifier = shift_modifier_terms(buffer, t);
        if modifier.is_empty() {
            continue;
        }
        if eval_query(&modifier, &full, &interp.resolutions).is_empty() {
            interp.push_penalty(PenaltyKind::ShiftedPastNonGiven, y, now);
        }
    }

    // Overspecified reference, re-checked as postmodifiers attach: if the
    // referent is unique even without the postmodifier's content, the extra
    // description was unnecessary.
    for i in 0..sem.len() {
        let t = &sem[i];
        if t.pred != "the" {
            continue;
        }
        let Some(&TermArg::Index(x)) = t.args.first() else {
            continue;
        };
        let Some(ent) = interp.resolutions.get(&x).cloned() else {
            continue;
        };
        if !sem
            .iter()
            .any(|u| u.pred == "npmod" && u.args.first() == Some(&TermArg::Index(x)))
        {
            continue;
        }
        let mod_terms = npmod_leaf_terms(buffer, x);
        if mod_terms.is_empty() {
            continue;
        }
        let q = restrictive_suffix(sem, i);
        let trimmed: TermList = q
            .iter()
            .filter(|u| !mod_terms.contains(u))
            .cloned()
            .collect();
        if trimmed.is_empty() || trimmed.len() == q.len() {
            continue;
        }
        let mut pre = interp.resolutions.clone();
        pre.remove(&x);
        let with_all = candidates(&q, &full, &pre, x);
        let without = candidates(&trimmed, &full, &pre, x);
        if with_all.len() == 1
            && with_all.contains(&ent)
            && without == with_all
        {
            interp.push_penalty(PenaltyKind::OverspecifiedRef, x, now);
        }
    }
}

/// Number of connected components of the co-argument graph, minus one.
///
/// Only content terms participate: bookkeeping markers (`the`, `npmod`,
/// `subj`, shift markers, ...) mention indices without describing them, so
/// counting them would hide genuinely unintegrated material behind
/// housekeeping links and count dangling markers as extra pieces.
pub fn disconnectedness(sem: &TermList) -> usize {
    let content: Vec<&SemTerm> = sem.iter().filter(|t| is_restrictive(&t.pred)).collect();
    let mut nodes: Vec<SemIndex> = Vec::new();
    for t in &content {
        for a in &t.args {
            if let TermArg::Index(i) = a {
                if !nodes.contains(i) {
                    nodes.push(*i);
                }
            }
        }
    }
    if nodes.is_empty() {
        return 0;
    }
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn root(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for t in &content {
        let ids: Vec<usize> = t
            .args
            .iter()
            .filter_map(|a| match a {
                TermArg::Index(i) => nodes.iter().position(|n| n == i),
                _ => None,
            })
            .collect();
        for w in ids.windows(2) {
            let (a, b) = (root(&mut parent, w[0]), root(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut roots = BTreeSet::new();
    for i in 0..nodes.len() {
        roots.insert(root(&mut parent, i));
    }
    roots.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::IdGen;
    use crate::literal::LiteralParser;

    fn atoms(rows: &[(&str, &[&str])]) -> Vec<DbAtom> {
        rows.iter().map(|(p, a)| DbAtom::new(p, a)).collect()
    }

    /// Parse a term list and return it with the parser, so tests can look up
    /// the indices bound to names.
    fn sem(gen: &mut IdGen, src: &str) -> (TermList, BTreeMap<String, SemIndex>) {
        let mut p = LiteralParser::new(gen);
        let terms = p.parse_terms(src).unwrap();
        (terms, p.sem_names())
    }

    #[test]
    fn query_empty_db_fails() {
        let mut gen = IdGen::new();
        let (q, names) = sem(&mut gen, "[horse(X)]");
        let c = candidates(&q, &[], &BTreeMap::new(), names["X"]);
        assert!(c.is_empty());
    }

    #[test]
    fn query_collects_all_candidates() {
        let mut gen = IdGen::new();
        let (q, names) = sem(&mut gen, "[horse(X)]");
        let db = atoms(&[("horse", &["h1"]), ("horse", &["h2"])]);
        let c = candidates(&q, &db, &BTreeMap::new(), names["X"]);
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec!["h1", "h2"]);
    }

    #[test]
    fn query_joins_narrow_to_one() {
        let mut gen = IdGen::new();
        let (q, names) = sem(
            &mut gen,
            "[horse(X), race(Y,Z,X), tns(Y,en), past(Y,P), barn(P)]",
        );
        let db = atoms(&[
            ("horse", &["h1"]),
            ("horse", &["h2"]),
            ("race", &["ev", "x1", "h2"]),
            ("tns", &["ev", "en"]),
            ("past", &["ev", "b"]),
            ("barn", &["b"]),
        ]);
        let c = candidates(&q, &db, &BTreeMap::new(), names["X"]);
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec!["h2"]);
    }

    #[test]
    fn closed_phrase_accommodates_when_unknown() {
        let mut gen = IdGen::new();
        let (s, names) = sem(&mut gen, "[subj(X), the(X), poet(X), phrase_closed(X)]");
        let mut interp = Interp::default();
        resolve_definites(&mut interp, &s, &DiscourseDb::default(), 2);
        let x = names["X"];
        assert!(interp.resolutions.is_empty());
        let q = interp.accoms.get(&x).expect("accommodated");
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].pred, "poet");
        assert!(interp.penalties.is_empty());
        // The accommodated entity is visible to later queries.
        let (q2, n2) = sem(&mut gen, "[poet(Z)]");
        let c = candidates(&q2, &interp.overlay_atoms(), &BTreeMap::new(), n2["Z"]);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn open_phrase_with_unknown_referent_is_penalized() {
        let mut gen = IdGen::new();
        let (s, names) = sem(&mut gen, "[subj(X), the(X), poet(X)]");
        let mut interp = Interp::default();
        resolve_definites(&mut interp, &s, &DiscourseDb::default(), 2);
        assert!(interp.accoms.is_empty());
        assert_eq!(interp.penalties.len(), 1);
        assert_eq!(interp.penalties[0].kind, PenaltyKind::AccomComplexDescription);
        assert_eq!(interp.penalties[0].index, names["X"]);
        assert_eq!(interp.penalties[0].detected_at, 2);
        // Idempotent within the word.
        resolve_definites(&mut interp, &s, &DiscourseDb::default(), 2);
        assert_eq!(interp.penalties.len(), 1);
    }

    #[test]
    fn ambiguous_closed_reference_resolves_low_with_penalty() {
        let mut gen = IdGen::new();
        let (s, names) = sem(&mut gen, "[the(X), horse(X), phrase_closed(X)]");
        let db = DiscourseDb::new(atoms(&[("horse", &["h1"]), ("horse", &["h2"])]));
        let mut interp = Interp::default();
        resolve_definites(&mut interp, &s, &db, 2);
        assert_eq!(interp.resolutions[&names["X"]], "h1");
        assert_eq!(interp.penalties.len(), 1);
        assert_eq!(interp.penalties[0].kind, PenaltyKind::UnderspecifiedRef);
    }

    #[test]
    fn ambiguous_open_reference_waits() {
        let mut gen = IdGen::new();
        let (s, _) = sem(&mut gen, "[the(X), horse(X)]");
        let db = DiscourseDb::new(atoms(&[("horse", &["h1"]), ("horse", &["h2"])]));
        let mut interp = Interp::default();
        resolve_definites(&mut interp, &s, &db, 2);
        assert!(interp.resolutions.is_empty());
        assert!(interp.penalties.is_empty());
    }

    #[test]
    fn unique_open_reference_is_overspecified() {
        let mut gen = IdGen::new();
        let (s, names) = sem(&mut gen, "[the(X), bird(X)]");
        let db = DiscourseDb::new(atoms(&[("bird", &["b1"])]));
        let mut interp = Interp::default();
        resolve_definites(&mut interp, &s, &db, 3);
        assert_eq!(interp.resolutions[&names["X"]], "b1");
        assert_eq!(interp.penalties[0].kind, PenaltyKind::OverspecifiedRef);
    }

    #[test]
    fn new_subject_fires_for_open_and_accommodated_alike() {
        let mut gen = IdGen::new();
        let db = DiscourseDb::default();
        let plaus = PlausibilityDb::default();
        let none = BTreeSet::new();

        let (open, names) = sem(&mut gen, "[subj(X), the(X), poet(X)]");
        let mut a = Interp::default();
        resolve_definites(&mut a, &open, &db, 2);
        assess_penalties(&mut a, &open, &[], &none, &db, &plaus, 2);
        assert!(a
            .penalties
            .iter()
            .any(|p| p.kind == PenaltyKind::NewSubject && p.index == names["X"]));

        let (closed, _) = sem(&mut gen, "[subj(Y), the(Y), poet(Y), phrase_closed(Y)]");
        let mut b = Interp::default();
        resolve_definites(&mut b, &closed, &db, 2);
        assess_penalties(&mut b, &closed, &[], &none, &db, &plaus, 2);
        assert!(b.penalties.iter().any(|p| p.kind == PenaltyKind::NewSubject));
    }

    #[test]
    fn known_or_pronominal_subjects_are_exempt() {
        let mut gen = IdGen::new();
        let plaus = PlausibilityDb::default();
        let db = DiscourseDb::new(atoms(&[("name_of", &["j1", "john"])]));
        let (s, names) = sem(
            &mut gen,
            "[subj(X), the(X), name_of(X,john), phrase_closed(X)]",
        );
        let mut interp = Interp::default();
        resolve_definites(&mut interp, &s, &db, 1);
        assert_eq!(interp.resolutions[&names["X"]], "j1");
        assess_penalties(&mut interp, &s, &[], &BTreeSet::new(), &db, &plaus, 1);
        assert!(interp.penalties.is_empty());

        // Same shape, empty database, but marked pronominal: still exempt.
        let (s2, n2) = sem(&mut gen, "[subj(Z), male(Z)]");
        let mut i2 = Interp::default();
        let pronouns: BTreeSet<SemIndex> = [n2["Z"]].into();
        assess_penalties(
            &mut i2,
            &s2,
            &[],
            &pronouns,
            &DiscourseDb::default(),
            &plaus,
            1,
        );
        assert!(i2.penalties.is_empty());
    }

    #[test]
    fn clausal_argument_before_adverbial_is_heavy() {
        let mut gen = IdGen::new();
        let plaus = PlausibilityDb::default();
        let db = DiscourseDb::default();
        let none = BTreeSet::new();

        let (high, names) = sem(
            &mut gen,
            "[say(S,A,C), tns(S,ed), read(C,B,P), tns(C,ed), yesterday(S), swa(S)]",
        );
        let mut a = Interp::default();
        assess_penalties(&mut a, &high, &[], &none, &db, &plaus, 7);
        assert_eq!(a.penalties.len(), 1);
        assert_eq!(a.penalties[0].kind, PenaltyKind::HeavyArgLightModifier);
        assert_eq!(a.penalties[0].index, names["S"]);

        let (low, _) = sem(
            &mut gen,
            "[say(S,A,C), tns(S,ed), read(C,B,P), tns(C,ed), yesterday(C), swa(C)]",
        );
        let mut b = Interp::default();
        assess_penalties(&mut b, &low, &[], &none, &db, &plaus, 7);
        assert!(b.penalties.is_empty());
    }

    #[test]
    fn shift_over_ungiven_modifier_is_penalized() {
        let mut gen = IdGen::new();
        let plaus = PlausibilityDb::default();
        let none = BTreeSet::new();
        let (s, names) = sem(&mut gen, "[find(S,A,B), h_shifted(B,S)]");
        let mut p = LiteralParser::new(&mut gen);
        let mod_terms = p.parse_terms("[in(M,N)]").unwrap();
        let mod_cat = crate::literal::parse_category("s(ed,+,0):M\\s(ed,+,0):M/np(3,sg):N", &mut gen).unwrap();
        let modifier = Constituent::leaf("in", mod_cat, mod_terms);
        let buffer = vec![modifier];

        let mut a = Interp::default();
        assess_penalties(&mut a, &s, &buffer, &none, &DiscourseDb::default(), &plaus, 4);
        assert_eq!(a.penalties.len(), 1);
        assert_eq!(a.penalties[0].kind, PenaltyKind::ShiftedPastNonGiven);
        assert_eq!(a.penalties[0].index, names["S"]);

        // With the modifier's content given in the discourse, no penalty.
        let db = DiscourseDb::new(atoms(&[("in", &["q1", "n1"])]));
        let mut b = Interp::default();
        assess_penalties(&mut b, &s, &buffer, &none, &db, &plaus, 4);
        assert!(b.penalties.is_empty());
    }

    #[test]
    fn pattern_matching_is_arity_strict() {
        let mut gen = IdGen::new();
        let none = BTreeSet::new();
        let db = DiscourseDb::default();
        let mut p = LiteralParser::new(&mut gen);
        let two = p.parse_terms("[read(S,X), poem(X)]").unwrap();
        let mut p2 = LiteralParser::new(&mut gen);
        let three = p2.parse_terms("[read(S,X,_), poem(X)]").unwrap();
        let plaus = PlausibilityDb {
            patterns: vec![two, three],
        };
        let (s, names) = sem(&mut gen, "[read(E,A,B), poem(A), tns(E,ed)]");
        let mut interp = Interp::default();
        assess_penalties(&mut interp, &s, &[], &none, &db, &plaus, 3);
        assert_eq!(interp.penalties.len(), 1);
        assert_eq!(interp.penalties[0].kind, PenaltyKind::Implausibility);
        assert_eq!(interp.penalties[0].index, names["E"]);
    }

    #[test]
    fn redundant_postmodifier_is_overspecified() {
        let mut gen = IdGen::new();
        let none = BTreeSet::new();
        let plaus = PlausibilityDb::default();
        // One bird in the discourse; "the bird in the nest" repeats it.
        let db = DiscourseDb::new(atoms(&[("bird", &["b1"]), ("in", &["b1", "n1"]), ("nest", &["n1"])]));
        let (s, names) = sem(
            &mut gen,
            "[the(X), bird(X), in(X,N), npmod(X), the(N), nest(N), phrase_closed(N), phrase_closed(X)]",
        );
        // The postmodifier leaf's terms, as bound after combination: the
        // sentence's own in/npmod atoms.
        let leaf_terms: TermList = s
            .iter()
            .filter(|t| t.pred == "in" || t.pred == "npmod")
            .cloned()
            .collect();
        let cat = crate::literal::parse_category("n(sg):Q\\n(sg):Q/np(3,sg):R", &mut gen).unwrap();
        let buffer = vec![Constituent::leaf("in", cat, leaf_terms)];

        let mut interp = Interp::default();
        resolve_definites(&mut interp, &s, &db, 5);
        assert_eq!(interp.resolutions[&names["X"]], "b1");
        assess_penalties(&mut interp, &s, &buffer, &none, &db, &plaus, 5);
        assert!(interp
            .penalties
            .iter()
            .any(|p| p.kind == PenaltyKind::OverspecifiedRef && p.index == names["X"]));
    }

    #[test]
    fn informative_postmodifier_is_not_overspecified() {
        let mut gen = IdGen::new();
        let none = BTreeSet::new();
        let plaus = PlausibilityDb::default();
        // Two horses; only the race clause disambiguates.
        let db = DiscourseDb::new(atoms(&[
            ("horse", &["h1"]),
            ("horse", &["h2"]),
            ("race", &["ev", "x1", "h2"]),
            ("tns", &["ev", "en"]),
        ]));
        let (s, names) = sem(
            &mut gen,
            "[the(X), horse(X), race(E,Z,X), tns(E,en), npmod(X), phrase_closed(X)]",
        );
        // The leaf's terms are the sentence's own race/tns/npmod atoms, as
        // they would be after combination bound everything together.
        let leaf_terms: TermList = s
            .iter()
            .filter(|t| t.pred == "race" || t.pred == "tns" || t.pred == "npmod")
            .cloned()
            .collect();
        let cat = crate::literal::parse_category("n(sg):Q\\n(sg):Q", &mut gen).unwrap();
        let buffer = vec![Constituent::leaf("raced", cat, leaf_terms)];

        let mut interp = Interp::default();
        resolve_definites(&mut interp, &s, &db, 5);
        assert_eq!(interp.resolutions[&names["X"]], "h2");
        assess_penalties(&mut interp, &s, &buffer, &none, &db, &plaus, 5);
        assert!(!interp
            .penalties
            .iter()
            .any(|p| p.kind == PenaltyKind::OverspecifiedRef));
    }

    #[test]
    fn disconnectedness_counts_unlinked_pieces() {
        let mut gen = IdGen::new();
        let (trans, _) = sem(
            &mut gen,
            "[whenever(C,M), the(X), cannibal(X), eat(C,X,Y), the(Y), missionary(Y)]",
        );
        assert_eq!(disconnectedness(&trans), 0);

        let (intrans, _) = sem(
            &mut gen,
            "[whenever(C,M), the(X), cannibal(X), eat(C,X,Z), the(Y), missionary(Y)]",
        );
        assert_eq!(disconnectedness(&intrans), 1);

        let (stack, _) = sem(
            &mut gen,
            "[the(A), rat(A), npmod(A), the(B), cat(B), npmod(B), the(D), dog(D)]",
        );
        assert_eq!(disconnectedness(&stack), 2);

        assert_eq!(disconnectedness(&vec![]), 0);
    }

    #[test]
    fn disconnectedness_ignores_bookkeeping_markers() {
        let mut gen = IdGen::new();
        // h_shifted mentions a fresh index (W) and also spans the two real
        // pieces; neither effect should register.
        let (marked, _) = sem(
            &mut gen,
            "[rat(A), h_shifted(W,A), h_shifted(W,B), cat(B)]",
        );
        assert_eq!(disconnectedness(&marked), 1);

        // A term list that is nothing but markers has no content graph.
        let (only_markers, _) = sem(&mut gen, "[the(A), npmod(A), subj(B)]");
        assert_eq!(disconnectedness(&only_markers), 0);
    }
}
