//! Derivation trees and the derivation rewrite system.
//!
//! A derivation combined purely by forward rules can be rebracketed without
//! changing its root category:
//!
//! ```text
//! (a >m b) >n c   →   a >(m+n-1) (b >n c)        (m ≥ 1)
//! (c <n b) <k a   →   c <n (b <(k-n+1) a)        (k ≥ n)
//! ```
//!
//! Repeatedly applying these rules drives a derivation toward its unique
//! right-branching normal form, whose right spine ("right frontier") exposes
//! exactly the subconstituents a later modifier may still attach to.
//!
//! Two modes are supported. [`RewriteMode::Unbounded`] admits composition of
//! any degree and harmonic backward composition; this is the full system with
//! the termination/confluence properties exercised by the property tests.
//! [`RewriteMode::Capped`] restricts every re-derived combination to the
//! rules the grammar actually has (forward degree ≤ 3; backward rotations
//! never fire because their contractum would need harmonic backward
//! composition). The parser uses Capped mode, so a blocked rotation simply
//! leaves a subtree opaque.

use crate::category::{Category, NameCtx, Slash, Subst};
use crate::rules::{combine, CombRule, MAX_FWD};
use crate::term::TermList;

/// Rule label on a derivation node.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DRule {
    /// Lexical leaf (including the posited end-of-phrase morpheme).
    Lex,
    /// The initial constituent of the parser.
    Init,
    /// Forward combination of degree `n`.
    Fwd(u8),
    /// Backward combination of degree `n`. In the grammar, degree 0 is
    /// application and degree 1 is crossing composition; higher degrees and
    /// harmonic peels arise only inside unbounded rewriting.
    Bwd(u8),
}

impl DRule {
    pub fn name(&self) -> String {
        match self {
            DRule::Lex => "lex".into(),
            DRule::Init => "init".into(),
            DRule::Fwd(n) => format!(">{n}"),
            DRule::Bwd(n) => format!("<{n}"),
        }
    }

    pub fn from_comb(r: CombRule) -> DRule {
        match r {
            CombRule::Fwd(n) => DRule::Fwd(n),
            CombRule::BwdApp => DRule::Bwd(0),
            CombRule::BwdCross => DRule::Bwd(1),
        }
    }
}

/// A derivation-tree node. Internal nodes carry the rule that combined their
/// children; every node carries its own term list (for a leaf, the lexical
/// entry's terms; for an internal node, the concatenation of its children's
/// terms plus any rule-introduced term).
#[derive(Clone, Debug)]
pub struct Constituent {
    pub cat: Category,
    pub rule: DRule,
    /// Surface word for lexical leaves.
    pub word: Option<String>,
    pub children: Option<Box<(Constituent, Constituent)>>,
    pub terms: TermList,
}

impl Constituent {
    pub fn leaf(word: &str, cat: Category, terms: TermList) -> Constituent {
        Constituent {
            cat,
            rule: DRule::Lex,
            word: Some(word.to_string()),
            children: None,
            terms,
        }
    }

    pub fn initial(cat: Category) -> Constituent {
        Constituent {
            cat,
            rule: DRule::Init,
            word: None,
            children: None,
            terms: vec![],
        }
    }

    pub fn node(
        cat: Category,
        rule: DRule,
        left: Constituent,
        right: Constituent,
        extra_terms: TermList,
    ) -> Constituent {
        let mut terms = left.terms.clone();
        terms.extend(right.terms.iter().cloned());
        terms.extend(extra_terms);
        Constituent {
            cat,
            rule,
            word: None,
            children: Some(Box::new((left, right))),
            terms,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn left(&self) -> Option<&Constituent> {
        self.children.as_ref().map(|c| &c.0)
    }

    pub fn right(&self) -> Option<&Constituent> {
        self.children.as_ref().map(|c| &c.1)
    }

    /// Apply a substitution through the whole subtree.
    pub fn apply_subst(&mut self, s: &Subst) {
        self.cat = s.apply_cat(&self.cat);
        self.terms = crate::term::apply_terms(s, &self.terms);
        if let Some(ch) = self.children.as_mut() {
            ch.0.apply_subst(s);
            ch.1.apply_subst(s);
        }
    }

    /// Number of internal (binary) nodes.
    pub fn internal_count(&self) -> usize {
        match &self.children {
            None => 0,
            Some(ch) => 1 + ch.0.internal_count() + ch.1.internal_count(),
        }
    }

    /// Depth (in edges) of the rightmost leaf.
    pub fn rightmost_depth(&self) -> usize {
        match &self.children {
            None => 0,
            Some(ch) => 1 + ch.1.rightmost_depth(),
        }
    }

    /// Proper subconstituents along the right spine, outermost first
    /// (right child, its right child, … down to the rightmost leaf).
    pub fn right_frontier(&self) -> Vec<&Constituent> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Some(r) = cur.right() {
            out.push(r);
            cur = r;
        }
        out
    }

    /// Canonical rendering of the tree shape with categories; a fresh
    /// [`NameCtx`] yields an alpha-canonical form.
    pub fn tree_str(&self, ctx: &mut NameCtx) -> String {
        match &self.children {
            None => {
                let label = match (&self.rule, &self.word) {
                    (DRule::Init, _) => "init".to_string(),
                    (_, Some(w)) => w.clone(),
                    _ => "?".to_string(),
                };
                format!("{label}:{}", ctx.cat_str(&self.cat))
            }
            Some(ch) => format!(
                "({} {} {}):{}",
                ch.0.tree_str(ctx),
                self.rule.name(),
                ch.1.tree_str(ctx),
                ctx.cat_str(&self.cat)
            ),
        }
    }
}

/// Paper-style weight: number of internal nodes of the subtree.
pub fn weight(x: &Constituent) -> usize {
    x.internal_count()
}

/// The score that strictly decreases under rewriting:
/// score(leaf) = 0; score(node) = score(l) + score(r) + weight(l).
pub fn score(x: &Constituent) -> usize {
    match &x.children {
        None => 0,
        Some(ch) => score(&ch.0) + score(&ch.1) + weight(&ch.0),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RewriteMode {
    /// All degrees admitted: the full rewrite system.
    Unbounded,
    /// Re-derived combinations must be expressible with the grammar's rules.
    Capped,
}

/// Combine two categories by an explicit rule in the given mode.
fn recombine(left: &Category, right: &Category, rule: DRule, mode: RewriteMode) -> Option<Category> {
    match (mode, rule) {
        (RewriteMode::Capped, DRule::Fwd(n)) => {
            if n > MAX_FWD {
                return None;
            }
            combine(left, right, CombRule::Fwd(n)).map(|c| c.cat)
        }
        (RewriteMode::Capped, DRule::Bwd(0)) => combine(left, right, CombRule::BwdApp).map(|c| c.cat),
        (RewriteMode::Capped, DRule::Bwd(1)) => {
            combine(left, right, CombRule::BwdCross).map(|c| c.cat)
        }
        (RewriteMode::Capped, _) => None,
        (RewriteMode::Unbounded, DRule::Fwd(n)) => {
            let (res, Slash::Fwd, arg) = left.as_fun().map(|(r, s, a)| (r, s, a))? else {
                return None;
            };
            let (stripped, core) = strip_generic(right, n)?;
            let mut subst = Subst::new();
            if !subst.unify_cat(arg, &core) {
                return None;
            }
            Some(subst.apply_cat(&reattach_generic(res.clone(), stripped)))
        }
        (RewriteMode::Unbounded, DRule::Bwd(n)) => {
            let (res, Slash::Bwd, arg) = right.as_fun().map(|(r, s, a)| (r, s, a))? else {
                return None;
            };
            let (stripped, core) = strip_generic(left, n)?;
            let mut subst = Subst::new();
            if !subst.unify_cat(arg, &core) {
                return None;
            }
            Some(subst.apply_cat(&reattach_generic(res.clone(), stripped)))
        }
        (_, DRule::Lex) | (_, DRule::Init) => None,
    }
}

fn strip_generic(cat: &Category, n: u8) -> Option<(Vec<(Slash, Category)>, Category)> {
    let mut stripped = Vec::new();
    let mut cur = cat.clone();
    for _ in 0..n {
        match cur {
            Category::Fun { res, slash, arg } => {
                stripped.push((slash, *arg));
                cur = *res;
            }
            _ => return None,
        }
    }
    Some((stripped, cur))
}

fn reattach_generic(core: Category, stripped: Vec<(Slash, Category)>) -> Category {
    let mut cur = core;
    for (slash, arg) in stripped.into_iter().rev() {
        cur = Category::fun(cur, slash, arg);
    }
    cur
}

/// If the root of `x` is a redex whose contractum is representable in `mode`,
/// return the rotated tree.
pub fn rotate_root(x: &Constituent, mode: RewriteMode) -> Option<Constituent> {
    let (left, right) = x.children.as_ref().map(|c| (&c.0, &c.1))?;
    let (ll, lr) = left.children.as_ref().map(|c| (&c.0, &c.1))?;
    match (left.rule, x.rule) {
        (DRule::Fwd(m), DRule::Fwd(n)) if m >= 1 => {
            // (a >m b) >n c → a >(m+n-1) (b >n c)
            let inner = recombine(&lr.cat, &right.cat, DRule::Fwd(n), mode)?;
            let bc = Constituent::node(inner, DRule::Fwd(n), lr.clone(), right.clone(), vec![]);
            let outer_deg = m + n - 1;
            let outer = recombine(&ll.cat, &bc.cat, DRule::Fwd(outer_deg), mode)?;
            Some(Constituent::node(
                outer,
                DRule::Fwd(outer_deg),
                ll.clone(),
                bc,
                vec![],
            ))
        }
        (DRule::Bwd(n), DRule::Bwd(k)) if k >= n => {
            // (c <n b) <k a → c <n (b <(k-n+1) a)
            let m = k - n + 1;
            let inner = recombine(&lr.cat, &right.cat, DRule::Bwd(m), mode)?;
            let ba = Constituent::node(inner, DRule::Bwd(m), lr.clone(), right.clone(), vec![]);
            let outer = recombine(&ll.cat, &ba.cat, DRule::Bwd(n), mode)?;
            Some(Constituent::node(outer, DRule::Bwd(n), ll.clone(), ba, vec![]))
        }
        _ => None,
    }
}

/// Path from the root into a subtree: `false` = left child, `true` = right.
pub type Path = Vec<bool>;

fn collect_redexes(x: &Constituent, mode: RewriteMode, here: &mut Path, out: &mut Vec<Path>) {
    if x.is_leaf() {
        return;
    }
    if rotate_root(x, mode).is_some() {
        out.push(here.clone());
    }
    if let Some(ch) = x.children.as_ref() {
        here.push(false);
        collect_redexes(&ch.0, mode, here, out);
        here.pop();
        here.push(true);
        collect_redexes(&ch.1, mode, here, out);
        here.pop();
    }
}

/// Positions of every redex in the tree.
pub fn redex_positions(x: &Constituent, mode: RewriteMode) -> Vec<Path> {
    let mut out = Vec::new();
    collect_redexes(x, mode, &mut Vec::new(), &mut out);
    out
}

/// Apply one rewrite at the given position.
pub fn rewrite_at(x: &Constituent, path: &[bool], mode: RewriteMode) -> Option<Constituent> {
    if path.is_empty() {
        return rotate_root(x, mode);
    }
    let ch = x.children.as_ref()?;
    let (new_l, new_r) = if path[0] {
        (ch.0.clone(), rewrite_at(&ch.1, &path[1..], mode)?)
    } else {
        (rewrite_at(&ch.0, &path[1..], mode)?, ch.1.clone())
    };
    Some(Constituent::node(
        x.cat.clone(),
        x.rule,
        new_l,
        new_r,
        rule_delta(x),
    ))
}

/// Terms on a node beyond its children's concatenation (the crossing rule's
/// marker), preserved across rewrites of the subtrees.
pub fn rule_delta(x: &Constituent) -> TermList {
    match x.children.as_ref() {
        None => vec![],
        Some(ch) => {
            let base = ch.0.terms.len() + ch.1.terms.len();
            x.terms[base..].to_vec()
        }
    }
}

/// The right-branching normal form reachable in `mode`.
///
/// The left child is normalized first (a rotation at the root can become
/// available only after rewriting inside the left child lowers its top-level
/// rule into redex position), then the root is rotated while possible, then
/// the right child is normalized. In Capped mode a blocked rotation leaves
/// the node as is, which is exactly the behavior the parser's revealing step
/// needs: whatever the grammar cannot rebracket stays opaque.
pub fn right_normal_form(x: &Constituent, mode: RewriteMode) -> Constituent {
    if x.is_leaf() {
        return x.clone();
    }
    let ch = x.children.as_ref().unwrap();
    let left = right_normal_form(&ch.0, mode);
    let mut cur = Constituent::node(x.cat.clone(), x.rule, left, ch.1.clone(), rule_delta(x));
    while let Some(rot) = rotate_root(&cur, mode) {
        cur = rot;
    }
    let ch = cur.children.as_ref().unwrap();
    let right = right_normal_form(&ch.1, mode);
    Constituent::node(cur.cat.clone(), cur.rule, ch.0.clone(), right, rule_delta(&cur))
}

/// One closest-to-root rewrite step, or `None` if the tree is already in
/// normal form along the closest-to-root strategy.
pub fn ctr_once(x: &Constituent, mode: RewriteMode) -> Option<Constituent> {
    if x.is_leaf() {
        return None;
    }
    let ch = x.children.as_ref().unwrap();
    if ch.0.is_leaf() {
        let r = ctr_once(&ch.1, mode)?;
        return Some(Constituent::node(
            x.cat.clone(),
            x.rule,
            ch.0.clone(),
            r,
            rule_delta(x),
        ));
    }
    rotate_root(x, mode)
}

/// Exhaustive bottom-up enumeration of derivations over a sequence of
/// categories using the grammar's rule set. Oracle for derivational-ambiguity
/// counts; exponential, test use only.
pub fn enumerate_derivations(leaves: &[Constituent]) -> Vec<Constituent> {
    let n = leaves.len();
    if n == 0 {
        return vec![];
    }
    // chart[i][j] holds derivations spanning leaves i..=i+j (j = length-1).
    let mut chart: Vec<Vec<Vec<Constituent>>> = vec![vec![Vec::new(); n]; n];
    for (i, leaf) in leaves.iter().enumerate() {
        chart[i][0].push(leaf.clone());
    }
    for len in 2..=n {
        for i in 0..=(n - len) {
            let mut cell = Vec::new();
            for split in 1..len {
                let left_cell = chart[i][split - 1].clone();
                let right_cell = chart[i + split][len - split - 1].clone();
                for l in &left_cell {
                    for r in &right_cell {
                        for rule in crate::rules::ALL_RULES {
                            if let Some(c) = combine(&l.cat, &r.cat, rule) {
                                let mut node = Constituent::node(
                                    c.cat,
                                    DRule::from_comb(rule),
                                    l.clone(),
                                    r.clone(),
                                    c.extra_terms,
                                );
                                // Bind the whole subtree consistently.
                                node.apply_subst(&c.subst);
                                cell.push(node);
                            }
                        }
                    }
                }
            }
            chart[i][len - 1] = cell;
        }
    }
    chart[0][n - 1].clone()
}
