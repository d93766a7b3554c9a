//! The parse-state engine: one state per live analysis, advanced word by
//! word. A word is shifted in as a new rightmost constituent, the buffer is
//! closed under reduction — direct combination of the rightmost pair,
//! revealing of a constituent buried on the left neighbor's right frontier,
//! and end-of-phrase positing — and a viability filter keeps only buffers
//! that are fully reduced (no obligatory combination left undone) and still
//! combinable into a single overall analysis.

use crate::category::{
    is_backward_modifier, unify, Category, Head, IdGen, NameCtx, SemIndex, Slash,
};
use crate::derivation::{right_normal_form, rule_delta, Constituent, DRule, RewriteMode};
use crate::interpreter::Interp;
use crate::lexicon::{eps_entry, initial_category, Entry, Lexicon};
use crate::rules::{combine, is_obligatory, Combined, ALL_RULES};
use crate::term::{apply_terms, terms_str, SemTerm, TermArg, TermList};
use std::collections::{BTreeSet, HashSet, VecDeque};

/// One live analysis: the buffer of derivation trees, the flat term list
/// accumulated so far (in input order), the interpretation record, and the
/// indices introduced by pronominal entries (exempt from the new-subject
/// penalty).
#[derive(Clone, Debug)]
pub struct ParserState {
    pub buffer: Vec<Constituent>,
    pub sem: TermList,
    pub interp: Interp,
    pub pronoun_indices: BTreeSet<SemIndex>,
    pub gen: IdGen,
    /// Length of `sem` when the current word began; everything past it
    /// arrived with this word. Bookkeeping for traces only.
    pub sem_mark: usize,
}

impl ParserState {
    /// The state before the first word: a single initial constituent that
    /// turns a finite clause into a closed top-level analysis.
    pub fn start() -> ParserState {
        let mut gen = IdGen::new();
        let cat = initial_category(&mut gen);
        ParserState {
            buffer: vec![Constituent::initial(cat)],
            sem: vec![],
            interp: Interp::default(),
            pronoun_indices: BTreeSet::new(),
            gen,
            sem_mark: 0,
        }
    }

    /// Unification binds variables shared across the whole state, so a
    /// substitution applies to every buffer tree, the term list, the
    /// interpretation record, and the pronoun set alike.
    pub fn apply_subst(&mut self, s: &crate::category::Subst) {
        if s.is_empty() {
            return;
        }
        for c in &mut self.buffer {
            c.apply_subst(s);
        }
        self.sem = apply_terms(s, &self.sem);
        self.interp.apply_subst(s);
        self.pronoun_indices = self
            .pronoun_indices
            .iter()
            .map(|i| s.resolve_sem(*i))
            .collect();
    }

    /// One successor per lexical entry for the word.
    pub fn shift_word(&self, word: &str, lex: &Lexicon) -> Vec<ParserState> {
        let n = lex.lookup(word, &mut self.gen.clone()).len();
        (0..n)
            .map(|i| {
                let mut st = self.clone();
                let mut entries = lex.lookup(word, &mut st.gen);
                let e = entries.swap_remove(i);
                st.push_entry(e);
                st
            })
            .collect()
    }

    fn push_entry(&mut self, e: Entry) {
        if e.pronoun {
            for t in &e.terms {
                for a in &t.args {
                    if let TermArg::Index(i) = a {
                        self.pronoun_indices.insert(*i);
                    }
                }
            }
        }
        self.sem.extend(e.terms.iter().cloned());
        self.buffer.push(Constituent::leaf(&e.word, e.cat, e.terms));
    }

    /// A finished analysis: a single constituent reduced to a bare
    /// top-level-sentence category.
    pub fn is_completed(&self) -> bool {
        self.buffer.len() == 1
            && matches!(&self.buffer[0].cat, Category::Basic(b) if b.head == Head::Tls)
    }

    /// Record a combination's rule-introduced terms, skipping a shift
    /// marker the viability filter already anticipated.
    fn extend_sem(&mut self, c: &Combined) {
        for t in apply_terms(&c.subst, &c.extra_terms) {
            if !self.sem.contains(&t) {
                self.sem.push(t);
            }
        }
    }

    /// Alpha-canonical fingerprint: states that differ only in the spelling
    /// of variables and indices render identically.
    pub fn fingerprint(&self) -> String {
        let mut ctx = NameCtx::new();
        let mut s = String::new();
        for c in &self.buffer {
            s.push_str(&c.tree_str(&mut ctx));
            s.push('|');
        }
        s.push_str(&terms_str(&mut ctx, &self.sem));
        let mut notes: Vec<String> = Vec::new();
        for (k, v) in &self.interp.resolutions {
            notes.push(format!("res {}={}", ctx.sem_name(*k), v));
        }
        for (k, q) in &self.interp.accoms {
            notes.push(format!("acc {}:{}", ctx.sem_name(*k), terms_str(&mut ctx, q)));
        }
        for p in &self.interp.penalties {
            notes.push(format!(
                "pen {}({})@{}",
                p.kind.name(),
                ctx.sem_name(p.index),
                p.detected_at
            ));
        }
        notes.sort();
        for n in notes {
            s.push('|');
            s.push_str(&n);
        }
        s
    }
}

/// Replace the constituent `depth` steps down the right spine with its
/// combination with `y`, rebuilding the spine above it unchanged.
fn graft(
    node: &Constituent,
    depth: usize,
    y: &Constituent,
    rule: crate::rules::CombRule,
    c: &Combined,
) -> Constituent {
    if depth == 0 {
        Constituent::node(
            c.cat.clone(),
            DRule::from_comb(rule),
            node.clone(),
            y.clone(),
            c.extra_terms.clone(),
        )
    } else {
        let ch = node.children.as_ref().expect("spine node");
        let new_right = graft(&ch.1, depth - 1, y, rule, c);
        Constituent::node(
            node.cat.clone(),
            node.rule,
            ch.0.clone(),
            new_right,
            rule_delta(node),
        )
    }
}

/// Immediate successors of a buffer under one reduction step.
fn reduce_step(st: &ParserState) -> Vec<ParserState> {
    let mut out = Vec::new();
    let n = st.buffer.len();
    if n >= 2 {
        let x = &st.buffer[n - 2];
        let y = &st.buffer[n - 1];
        // Direct combination of the rightmost pair.
        for rule in ALL_RULES {
            if let Some(c) = combine(&x.cat, &y.cat, rule) {
                let mut succ = st.clone();
                let yy = succ.buffer.pop().unwrap();
                let xx = succ.buffer.pop().unwrap();
                succ.buffer.push(Constituent::node(
                    c.cat.clone(),
                    DRule::from_comb(rule),
                    xx,
                    yy,
                    c.extra_terms.clone(),
                ));
                succ.apply_subst(&c.subst);
                succ.extend_sem(&c);
                out.push(succ);
            }
        }
        // Revealing: a complete backward modifier may attach to any
        // constituent on the right frontier of its left neighbor's
        // right-branching normal form, one successor per attachment height.
        if is_backward_modifier(&y.cat) {
            let nf = right_normal_form(x, RewriteMode::Capped);
            let spine: Vec<Constituent> =
                nf.right_frontier().into_iter().cloned().collect();
            for (i, rs) in spine.iter().enumerate() {
                for rule in ALL_RULES {
                    if let Some(c) = combine(&rs.cat, &y.cat, rule) {
                        let grafted = graft(&nf, i + 1, y, rule, &c);
                        let mut succ = st.clone();
                        succ.buffer.pop();
                        succ.buffer.pop();
                        succ.buffer.push(grafted);
                        succ.apply_subst(&c.subst);
                        succ.extend_sem(&c);
                        out.push(succ);
                    }
                }
            }
        }
    }
    // End-of-phrase positing: when the rightmost constituent's outermost
    // argument can be an end-of-phrase marker, posit one. The posited
    // marker must then be consumed — the uncombined buffer is inviable
    // because consuming it is obligatory.
    if let Some(y) = st.buffer.last() {
        if let Some((_, Slash::Fwd, arg)) = y.cat.as_fun() {
            let mut succ = st.clone();
            let (ecat, eterms) = eps_entry(&mut succ.gen);
            if unify(arg, &ecat).is_some() {
                succ.sem.extend(eterms.iter().cloned());
                succ.buffer.push(Constituent::leaf("eps", ecat, eterms));
                out.push(succ);
            }
        }
    }
    out
}

/// All buffers reachable from `start` by reduction steps, including
/// `start` itself and inviable intermediates (a posited end-of-phrase
/// marker not yet consumed); the viability filter runs afterwards.
pub fn reduce_closure(start: ParserState) -> Vec<ParserState> {
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    let mut work = VecDeque::new();
    work.push_back(start);
    while let Some(st) = work.pop_front() {
        if !seen.insert(st.fingerprint()) {
            continue;
        }
        for succ in reduce_step(&st) {
            work.push_back(succ);
        }
        out.push(st);
    }
    out
}

/// How a pair of neighbors could still end up combined. `crossing` marks
/// routes that run through backward crossing composition; such a route
/// implies the argument currently being built will have been shifted past
/// the modifier, recorded by `shift` (argument index, situation index).
struct Witness {
    crossing: bool,
    shift: Option<(SemIndex, SemIndex)>,
}

fn crossing_shift_info(c: &Combined) -> Option<(SemIndex, SemIndex)> {
    c.extra_terms.iter().find(|t| t.pred == "h_shifted").map(|t| {
        match (&t.args[0], &t.args[1]) {
            (TermArg::Index(a), TermArg::Index(b)) => (*a, *b),
            _ => unreachable!("shift marker has index arguments"),
        }
    })
}

/// The category and every result of stripping forward arguments off it,
/// outermost first.
fn fwd_stages(cat: &Category) -> Vec<Category> {
    let mut out = vec![cat.clone()];
    let mut cur = cat;
    while let Some((res, Slash::Fwd, _)) = cur.as_fun() {
        out.push(res.clone());
        cur = res;
    }
    out
}

/// X can await what Y will become: X's outermost argument, stripped of
/// some forward arguments, unifies with Y stripped of some forward
/// arguments. Covers both plain forward slack (optional gap-establishing
/// rules left unapplied) and anticipation of forward composition.
fn forward_match(x: &Category, y: &Category) -> bool {
    let Some((_, Slash::Fwd, xarg)) = x.as_fun() else {
        return false;
    };
    for a in fwd_stages(xarg) {
        for b in fwd_stages(y) {
            if unify(&a, &b).is_some() {
                return true;
            }
        }
    }
    false
}

/// Every backward functor Y will become after consuming forward arguments
/// (including Y itself if it already is one).
fn bwd_cores(y: &Category) -> Vec<Category> {
    fwd_stages(y)
        .into_iter()
        .filter(|c| matches!(c.as_fun(), Some((_, Slash::Bwd, _))))
        .collect()
}

/// All routes by which the adjacent pair could ultimately combine.
fn pair_witnesses(x: &Constituent, y: &Constituent) -> Vec<Witness> {
    let mut ws = Vec::new();
    if forward_match(&x.cat, &y.cat) {
        ws.push(Witness {
            crossing: false,
            shift: None,
        });
    }
    let mut nf: Option<Constituent> = None;
    for core in bwd_cores(&y.cat) {
        // The buried backward functor may combine with X directly …
        for rule in ALL_RULES {
            if let Some(c) = combine(&x.cat, &core, rule) {
                ws.push(Witness {
                    crossing: rule == crate::rules::CombRule::BwdCross,
                    shift: crossing_shift_info(&c),
                });
            }
        }
        // … or, if it is modifier-shaped, with a constituent revealed on
        // X's right frontier.
        if is_backward_modifier(&core) {
            let nf =
                nf.get_or_insert_with(|| right_normal_form(x, RewriteMode::Capped));
            for rs in nf.right_frontier() {
                for rule in ALL_RULES {
                    if let Some(c) = combine(&rs.cat, &core, rule) {
                        ws.push(Witness {
                            crossing: rule == crate::rules::CombRule::BwdCross,
                            shift: crossing_shift_info(&c),
                        });
                    }
                }
            }
        }
    }
    ws
}

/// True when the pair must not stand uncombined: an obligatory rule
/// applies to it directly, or the right side is a complete backward
/// modifier with an obligatory attachment on the revealed right frontier.
fn pair_blocks(x: &Constituent, y: &Constituent) -> bool {
    for rule in ALL_RULES {
        if combine(&x.cat, &y.cat, rule).is_some() && is_obligatory(rule, &x.cat) {
            return true;
        }
    }
    if is_backward_modifier(&y.cat) {
        let nf = right_normal_form(x, RewriteMode::Capped);
        for rs in nf.right_frontier() {
            for rule in ALL_RULES {
                if combine(&rs.cat, &y.cat, rule).is_some() && is_obligatory(rule, &rs.cat)
                {
                    return true;
                }
            }
        }
    }
    false
}

/// The viability filter. Every adjacent pair must be free of undone
/// obligatory combinations and have at least one route to ultimate
/// combination. When a pair's only routes run through crossing
/// composition, the shift is already certain, so its marker is recorded
/// in the term list now (deduplicated, and absent entirely when the
/// crossing would be over an end-of-phrase marker).
pub fn admit(st: &mut ParserState) -> bool {
    let n = st.buffer.len();
    if n <= 1 {
        return true;
    }
    let mut anticipated: Vec<SemTerm> = Vec::new();
    for i in 0..n - 1 {
        let x = &st.buffer[i];
        let y = &st.buffer[i + 1];
        if pair_blocks(x, y) {
            return false;
        }
        let ws = pair_witnesses(x, y);
        if ws.is_empty() {
            return false;
        }
        if ws.iter().all(|w| w.crossing) {
            for w in &ws {
                if let Some((a, s)) = w.shift {
                    anticipated.push(SemTerm::new(
                        "h_shifted",
                        vec![TermArg::Index(a), TermArg::Index(s)],
                    ));
                }
            }
        }
    }
    for t in anticipated {
        if !st.sem.contains(&t) {
            st.sem.push(t);
        }
    }
    true
}

/// Shift one word into every live state, close under reduction, filter
/// for viability, and deduplicate. Interpretation and scoring happen
/// afterwards, on the survivors.
pub fn advance(live: &[ParserState], word: &str, lex: &Lexicon) -> Vec<ParserState> {
    let mut out = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for st in live {
        for shifted in st.shift_word(word, lex) {
            for mut closed in reduce_closure(shifted) {
                if admit(&mut closed) && seen.insert(closed.fingerprint()) {
                    out.push(closed);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::display_cat;

    // word <tab> label <tab> key=value columns
    const OPEN: &str = "\
the	det
poet	cn
garden	cn
read	v	past=read	en=read
read	vo	past=read	en=read
stink	v	past=stank	en=stunk
in	prep
";

    // No closed-class rows needed here.
    const CLOSED: &str = "";

    fn lex() -> Lexicon {
        Lexicon::from_tsv(OPEN, CLOSED).unwrap_or_else(|e| panic!("{e}"))
    }

    fn advance_all(words: &[&str]) -> Vec<ParserState> {
        let lex = lex();
        let mut live = vec![ParserState::start()];
        for w in words {
            live = advance(&live, w, &lex);
            live.retain(|s| !s.is_completed());
        }
        live
    }

    #[test]
    fn determiner_must_combine_with_the_start_constituent() {
        let lex = lex();
        let live = advance(&[ParserState::start()], "the", &lex);
        // Only the raised determiner combines; the plain one has no route
        // to the clause the start constituent awaits, and the uncombined
        // raised buffer is blocked because the combination is obligatory.
        assert_eq!(live.len(), 1);
        assert_eq!(live[0].buffer.len(), 1);
        assert_eq!(
            display_cat(&live[0].buffer[0].cat),
            "tls(s1,+,0):e1/eop:e1/(s(s1,+,0):e1\\np(3,s2):e2)/eop:e2/n(s2):e2"
        );
    }

    #[test]
    fn noun_yields_open_and_closed_phrase_states() {
        let live = advance_all(&["the", "poet"]);
        assert_eq!(live.len(), 2);
        let cats: Vec<String> = live
            .iter()
            .map(|s| display_cat(&s.buffer[0].cat))
            .collect();
        // One state keeps the phrase open; the other posits the
        // end-of-phrase marker and consumes it.
        assert!(cats
            .iter()
            .any(|c| c == "tls(s1,+,0):e1/eop:e1/(s(s1,+,0):e1\\np(3,sg):e2)/eop:e2"));
        assert!(cats
            .iter()
            .any(|c| c == "tls(s1,+,0):e1/eop:e1/(s(s1,+,0):e1\\np(3,sg):e2)"));
        // The closed state records the phrase boundary in its terms.
        assert!(live
            .iter()
            .any(|s| s.sem.iter().any(|t| t.pred == "phrase_closed")));
    }

    #[test]
    fn verb_keeps_three_analyses_and_a_completion() {
        let lex = lex();
        let mut live = vec![ParserState::start()];
        for w in ["the", "poet"] {
            live = advance(&live, w, &lex);
        }
        let after = advance(&live, "read", &lex);
        let (done, open): (Vec<_>, Vec<_>) =
            after.into_iter().partition(|s| s.is_completed());
        // "the poet read" is already a sentence …
        assert_eq!(done.len(), 1);
        // … and three live analyses remain: intransitive, transitive
        // awaiting an object, and the reduced-relative reading kept
        // uncombined next to the still-open subject phrase.
        assert_eq!(open.len(), 3);
        let singles = open.iter().filter(|s| s.buffer.len() == 1).count();
        let pairs = open.iter().filter(|s| s.buffer.len() == 2).count();
        assert_eq!((singles, pairs), (2, 1));
    }

    #[test]
    fn adverbial_anticipates_a_shifted_argument() {
        let lex = lex();
        let mut live = vec![ParserState::start()];
        for w in ["the", "poet", "read"] {
            live = advance(&live, w, &lex);
            live.retain(|s| !s.is_completed());
        }
        let after = advance(&live, "in", &lex);
        // The transitive analysis survives with "in" uncombined: its only
        // route to attachment is crossing composition over the awaited
        // object, so the shift marker appears immediately.
        let shifted: Vec<_> = after
            .iter()
            .filter(|s| s.sem.iter().any(|t| t.pred == "h_shifted"))
            .collect();
        assert_eq!(shifted.len(), 1);
        assert_eq!(shifted[0].buffer.len(), 2);
        // The intransitive analysis also keeps "in" uncombined, but its
        // route is plain backward attachment to the revealed clause, so
        // no marker is recorded.
        assert!(after
            .iter()
            .any(|s| s.buffer.len() == 2 && !s.sem.iter().any(|t| t.pred == "h_shifted")));
    }

    #[test]
    fn modifier_attaches_into_the_revealed_clause() {
        let live = advance_all(&["the", "poet", "read", "in", "the", "garden"]);
        // Without scoring, every structural analysis is still alive:
        // intransitive with the adverbial pending or grafted, transitive
        // with the object shifted past it, and the reduced-relative
        // readings with the subject phrase still open or closed.
        assert_eq!(live.len(), 7);
        // The intransitive graft buries the finished adverbial inside the
        // revealed clause, leaving a single constituent that only awaits
        // the final end-of-phrase marker.
        assert!(live.iter().any(|s| {
            s.buffer.len() == 1
                && display_cat(&s.buffer[0].cat) == "tls(ed,+,0):e1/eop:e1"
                && s.sem.iter().any(|t| t.pred == "in")
        }));
    }

    #[test]
    fn tensed_verb_after_the_adverbial_selects_the_relative_reading() {
        let lex = lex();
        let mut live = vec![ParserState::start()];
        let mut done = Vec::new();
        for w in ["the", "poet", "read", "in", "the", "garden", "stank"] {
            let after = advance(&live, w, &lex);
            let (d, l): (Vec<_>, Vec<_>) = after.into_iter().partition(|s| s.is_completed());
            live = l;
            done = d;
        }
        // Structurally, only the reading in which "read in the garden"
        // reduced-relativizes the subject can take a second tensed verb
        // (scoring is what turns this sentence into a garden path: the
        // relative-reading states lose to the main-verb analysis at "in"
        // and are gone long before "stank" arrives).
        assert_eq!(live.len(), 1);
        assert_eq!(done.len(), 1);
        assert_eq!(
            display_cat(&live[0].buffer[0].cat),
            "tls(ed,+,0):e1/eop:e1"
        );
    }

    #[test]
    fn states_with_identical_analyses_are_merged() {
        let lex = lex();
        let live = advance(&[ParserState::start()], "the", &lex);
        let fps: HashSet<String> = live.iter().map(|s| s.fingerprint()).collect();
        assert_eq!(fps.len(), live.len());
    }
}
