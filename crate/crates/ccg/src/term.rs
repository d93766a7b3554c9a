//! Flat term-list semantics: every analysis carries a list of predications
//! over semantic indices, built up by simple concatenation as constituents
//! combine.

use crate::category::{rename_cat, FeatVal, IdGen, NameCtx, Renaming, SemIndex, Subst};
use serde::Serialize;

/// One argument of a semantic term: either a semantic index or a plain value
/// (an atom such as a tense name or a proper-name constant, or a still-unbound
/// feature variable).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum TermArg {
    Index(SemIndex),
    Val(FeatVal),
}

impl TermArg {
    pub fn atom(s: &str) -> TermArg {
        TermArg::Val(FeatVal::atom(s))
    }
}

/// A single predication, e.g. `read(e1,e2,e3)` or `tns(e1,ed)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SemTerm {
    pub pred: String,
    pub args: Vec<TermArg>,
}

impl SemTerm {
    pub fn new(pred: &str, args: Vec<TermArg>) -> SemTerm {
        SemTerm {
            pred: pred.to_string(),
            args,
        }
    }

    /// Indices appearing in the term.
    pub fn indices(&self) -> impl Iterator<Item = SemIndex> + '_ {
        self.args.iter().filter_map(|a| match a {
            TermArg::Index(i) => Some(*i),
            _ => None,
        })
    }

    pub fn mentions(&self, i: SemIndex) -> bool {
        self.indices().any(|j| j == i)
    }
}

pub type TermList = Vec<SemTerm>;

/// Predicates that bookkeep rather than restrict: they contribute no
/// descriptive content when a definite description is resolved against the
/// discourse, and are skipped when building resolution queries.
pub fn is_restrictive(pred: &str) -> bool {
    !matches!(
        pred,
        "the"
            | "phrase_closed"
            | "subj"
            | "npmod"
            | "swa"
            | "wh"
            | "h_shifted"
            | "implicit_quantifier"
    )
}

/// Apply a substitution to a term list (indices resolve to representatives,
/// bound feature variables to their values).
pub fn apply_terms(subst: &Subst, terms: &TermList) -> TermList {
    terms
        .iter()
        .map(|t| SemTerm {
            pred: t.pred.clone(),
            args: t
                .args
                .iter()
                .map(|a| match a {
                    TermArg::Index(i) => TermArg::Index(subst.resolve_sem(*i)),
                    TermArg::Val(f) => TermArg::Val(subst.resolve_feat(f)),
                })
                .collect(),
        })
        .collect()
}

fn rename_feat_val(f: &FeatVal, ren: &mut Renaming, gen: &mut IdGen) -> FeatVal {
    match f {
        FeatVal::Atom(a) => FeatVal::Atom(a.clone()),
        FeatVal::Var(v) => FeatVal::Var(ren.feat(*v, gen)),
        FeatVal::Neg(inner) => FeatVal::Neg(Box::new(rename_feat_val(inner, ren, gen))),
    }
}

/// Rename all variables in a term list consistently with `ren`.
pub fn rename_terms(terms: &TermList, ren: &mut Renaming, gen: &mut IdGen) -> TermList {
    terms
        .iter()
        .map(|t| SemTerm {
            pred: t.pred.clone(),
            args: t
                .args
                .iter()
                .map(|a| match a {
                    TermArg::Index(i) => TermArg::Index(ren.sem(*i, gen)),
                    TermArg::Val(f) => TermArg::Val(rename_feat_val(f, ren, gen)),
                })
                .collect(),
        })
        .collect()
}

/// Rename a category and its associated term list together so shared indices
/// stay shared.
pub fn rename_entry(
    cat: &crate::category::Category,
    terms: &TermList,
    gen: &mut IdGen,
) -> (crate::category::Category, TermList) {
    let mut ren = Renaming::default();
    let c = rename_cat(cat, &mut ren, gen);
    let t = rename_terms(terms, &mut ren, gen);
    (c, t)
}

pub fn term_str(ctx: &mut NameCtx, t: &SemTerm) -> String {
    let args: Vec<String> = t
        .args
        .iter()
        .map(|a| match a {
            TermArg::Index(i) => ctx.sem_name(*i),
            TermArg::Val(f) => ctx.feat_str(f),
        })
        .collect();
    format!("{}({})", t.pred, args.join(","))
}

pub fn terms_str(ctx: &mut NameCtx, terms: &TermList) -> String {
    let parts: Vec<String> = terms.iter().map(|t| term_str(ctx, t)).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{Category, Head, IdGen};

    #[test]
    fn restrictive_classification() {
        for p in ["poet", "read", "tns", "name_of", "of", "exist", "in", "future", "masculine"] {
            assert!(is_restrictive(p), "{p} should be restrictive");
        }
        for p in ["the", "phrase_closed", "subj", "npmod", "swa", "wh", "h_shifted", "implicit_quantifier"] {
            assert!(!is_restrictive(p), "{p} should not be restrictive");
        }
    }

    #[test]
    fn rename_keeps_category_and_terms_linked() {
        let mut gen = IdGen::new();
        let e = gen.sem();
        let x = gen.sem();
        let cat = Category::bwd(
            Category::basic(
                Head::S,
                vec![FeatVal::atom("s"), FeatVal::atom("+"), FeatVal::atom("0")],
                e,
            ),
            Category::basic(Head::Np, vec![FeatVal::atom("3"), FeatVal::atom("sg")], x),
        );
        let terms = vec![SemTerm::new(
            "walk",
            vec![TermArg::Index(e), TermArg::Index(x)],
        )];
        let (c2, t2) = rename_entry(&cat, &terms, &mut gen);
        let mut idx = Vec::new();
        c2.sem_indices(&mut idx);
        assert_eq!(t2[0].args[0], TermArg::Index(idx[0]));
        assert_eq!(t2[0].args[1], TermArg::Index(idx[1]));
        assert_ne!(idx[0], e);
    }

    #[test]
    fn display_terms() {
        let mut gen = IdGen::new();
        let e = gen.sem();
        let x = gen.sem();
        let terms = vec![
            SemTerm::new("read", vec![TermArg::Index(e), TermArg::Index(x)]),
            SemTerm::new("tns", vec![TermArg::Index(e), TermArg::atom("ed")]),
        ];
        let mut ctx = NameCtx::new();
        assert_eq!(terms_str(&mut ctx, &terms), "[read(e1,e2), tns(e1,ed)]");
    }
}
