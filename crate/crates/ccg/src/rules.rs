//! The combinatory rule set: forward application/composition up to degree 3,
//! backward application, and backward crossing composition.

use crate::category::{Category, Head, SemIndex, Slash, Subst};
use crate::term::{SemTerm, TermArg};
use serde::Serialize;
use std::fmt;

/// Maximum forward composition degree available to the parser.
pub const MAX_FWD: u8 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum CombRule {
    /// `>n`: A/B + B/C₁…/Cₙ → A/C₁…/Cₙ (n = 0 is plain application).
    Fwd(u8),
    /// `<0`: B + A\B → A.
    BwdApp,
    /// `<1`: A/B + C\A → C/B — backward crossing composition, the signature
    /// of heavy-NP shift; introduces an `h_shifted` term.
    BwdCross,
}

impl fmt::Display for CombRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombRule::Fwd(n) => write!(f, ">{n}"),
            CombRule::BwdApp => write!(f, "<0"),
            CombRule::BwdCross => write!(f, "<1x"),
        }
    }
}

pub const ALL_RULES: [CombRule; 6] = [
    CombRule::Fwd(0),
    CombRule::Fwd(1),
    CombRule::Fwd(2),
    CombRule::Fwd(3),
    CombRule::BwdApp,
    CombRule::BwdCross,
];

/// Result of a successful rule application. `subst` must be applied to the
/// whole parser state (all buffer categories, terms, and annotations), since
/// unification may bind variables shared with other constituents.
#[derive(Debug)]
pub struct Combined {
    pub cat: Category,
    pub subst: Subst,
    /// Extra semantic terms introduced by the rule itself (only backward
    /// crossing composition produces one).
    pub extra_terms: Vec<SemTerm>,
}

/// Strip up to `n` outermost forward arguments; `None` if fewer exist.
fn strip_fwd(cat: &Category, n: u8) -> Option<(Vec<Category>, Category)> {
    let mut stripped = Vec::new();
    let mut cur = cat.clone();
    for _ in 0..n {
        match cur {
            Category::Fun {
                res,
                slash: Slash::Fwd,
                arg,
            } => {
                stripped.push(*arg);
                cur = *res;
            }
            _ => return None,
        }
    }
    Some((stripped, cur))
}

/// Re-attach stripped arguments (innermost level last in `stripped`).
fn reattach_fwd(core: Category, stripped: Vec<Category>) -> Category {
    let mut cur = core;
    for arg in stripped.into_iter().rev() {
        cur = Category::fwd(cur, arg);
    }
    cur
}

/// Head index of a category: the index of its innermost result.
pub fn head_index(cat: &Category) -> Option<SemIndex> {
    match cat.target() {
        Category::Basic(b) => Some(b.index),
        _ => None,
    }
}

fn head_is_eop(cat: &Category) -> bool {
    matches!(cat, Category::Basic(b) if b.head == Head::Eop)
}

/// Attempt one combinatory rule on two adjacent categories.
pub fn combine(left: &Category, right: &Category, rule: CombRule) -> Option<Combined> {
    let mut subst = Subst::new();
    match rule {
        CombRule::Fwd(n) => {
            if n > MAX_FWD {
                return None;
            }
            let (res, Slash::Fwd, arg) = left.as_fun().map(|(r, s, a)| (r, s, a))? else {
                return None;
            };
            let (stripped, core) = strip_fwd(right, n)?;
            // Degree must be exact: `>1` on a right side whose outermost
            // argument would remain unconsumed is a different rule (`>2` …).
            if !subst.unify_cat(arg, &core) {
                return None;
            }
            let cat = subst.apply_cat(&reattach_fwd(res.clone(), stripped));
            Some(Combined {
                cat,
                subst,
                extra_terms: vec![],
            })
        }
        CombRule::BwdApp => {
            let (res, slash, arg) = right.as_fun()?;
            if slash != Slash::Bwd {
                return None;
            }
            if !subst.unify_cat(arg, left) {
                return None;
            }
            let cat = subst.apply_cat(res);
            Some(Combined {
                cat,
                subst,
                extra_terms: vec![],
            })
        }
        CombRule::BwdCross => {
            let (lres, Slash::Fwd, larg) = left.as_fun().map(|(r, s, a)| (r, s, a))? else {
                return None;
            };
            let (rres, slash, rarg) = right.as_fun()?;
            if slash != Slash::Bwd {
                return None;
            }
            if !subst.unify_cat(rarg, lres) {
                return None;
            }
            let cat = subst.apply_cat(&Category::fwd(rres.clone(), larg.clone()));
            let extra_terms = h_shift_term(&subst, larg, lres)
                .into_iter()
                .collect();
            Some(Combined {
                cat,
                subst,
                extra_terms,
            })
        }
    }
}

/// The `h_shifted(X,Y)` marker for backward crossing composition: argument X
/// (the composed-over argument's index) of situation Y was shifted past the
/// modifier. Suppressed when the composed-over argument is an end-of-phrase
/// marker — crossing over a pending phrase boundary is not heavy shift.
pub fn h_shift_term(subst: &Subst, composed_over: &Category, modified: &Category) -> Option<SemTerm> {
    if head_is_eop(composed_over) {
        return None;
    }
    let x = head_index(composed_over)?;
    let y = head_index(modified)?;
    Some(SemTerm::new(
        "h_shifted",
        vec![
            TermArg::Index(subst.resolve_sem(x)),
            TermArg::Index(subst.resolve_sem(y)),
        ],
    ))
}

/// All rules applicable to the pair, with their results.
pub fn applicable_rules(left: &Category, right: &Category) -> Vec<(CombRule, Combined)> {
    ALL_RULES
        .iter()
        .filter_map(|r| combine(left, right, *r).map(|c| (*r, c)))
        .collect()
}

/// All combinatory rules are obligatory except forward rules whose left
/// category has the shape `_/(_/np:_)` — the rules that establish filler-gap
/// relations, which must stay optional so a gap can be delayed.
pub fn is_obligatory(rule: CombRule, left: &Category) -> bool {
    match rule {
        CombRule::Fwd(_) => {
            let Some((_, Slash::Fwd, arg)) = left.as_fun() else {
                return true;
            };
            !matches!(
                arg.as_fun(),
                Some((_, Slash::Fwd, inner)) if matches!(inner, Category::Basic(b) if b.head == Head::Np)
            )
        }
        _ => true,
    }
}
