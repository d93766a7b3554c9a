//! The category algebra: feature-bearing basic categories, slashed functor
//! categories, category variables, and unification.
//!
//! All variables (feature variables, semantic indices, category variables)
//! are opaque integer ids drawn from an [`IdGen`]. Printing assigns readable
//! names (`e1`, `s1`, `c1`) in first-appearance order; see [`NameCtx`].

use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

/// A semantic index: a variable ranging over discourse entities and
/// situations (events). Indices are globally renameable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct SemIndex(pub u32);

/// A feature variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct VarId(pub u32);

/// A category variable (used by the division-rule entries of extraction
/// words, where a whole argument category is left open).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct CatVar(pub u32);

/// Source of fresh ids. One generator is threaded through a whole parse so
/// that runs are deterministic.
#[derive(Clone, Debug, Default)]
pub struct IdGen {
    next_sem: u32,
    next_var: u32,
    next_cat: u32,
}

impl IdGen {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn sem(&mut self) -> SemIndex {
        self.next_sem += 1;
        SemIndex(self.next_sem)
    }
    pub fn var(&mut self) -> VarId {
        self.next_var += 1;
        VarId(self.next_var)
    }
    pub fn cat(&mut self) -> CatVar {
        self.next_cat += 1;
        CatVar(self.next_cat)
    }
}

/// Head symbol of a basic category.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Head {
    /// Common noun.
    N,
    /// Noun phrase.
    Np,
    /// Clause.
    S,
    /// Verb particle.
    Part,
    /// Prepositional phrase.
    Pp,
    /// End-of-phrase marker (zero morpheme).
    Eop,
    /// Top-level clause wrapper used by the initial constituent. Distinct
    /// from `S`: the two never unify, which is what forces an analysis to
    /// combine with the initial constituent to count as a complete sentence.
    Tls,
}

impl Head {
    /// Number of feature slots carried by each head.
    pub fn arity(self) -> usize {
        match self {
            Head::N | Head::Part | Head::Pp => 1,
            Head::Np => 2,
            Head::S | Head::Tls => 3,
            Head::Eop => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Head::N => "n",
            Head::Np => "np",
            Head::S => "s",
            Head::Part => "part",
            Head::Pp => "pp",
            Head::Eop => "eop",
            Head::Tls => "tls",
        }
    }

    pub fn from_name(s: &str) -> Option<Head> {
        Some(match s {
            "n" => Head::N,
            "np" => Head::Np,
            "s" => Head::S,
            "part" => Head::Part,
            "pp" => Head::Pp,
            "eop" => Head::Eop,
            "tls" => Head::Tls,
            _ => return None,
        })
    }
}

/// A feature value: a domain atom, an unbound variable, or the negation of a
/// value (used by the tense system: the base verb form carries `-T`, and the
/// auxiliary `did` selects `-ed`, so unifying them binds `T` to `ed`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum FeatVal {
    Atom(String),
    Var(VarId),
    Neg(Box<FeatVal>),
}

impl FeatVal {
    pub fn atom(s: &str) -> FeatVal {
        FeatVal::Atom(s.to_string())
    }
    pub fn neg_atom(s: &str) -> FeatVal {
        FeatVal::Neg(Box::new(FeatVal::Atom(s.to_string())))
    }

    /// The plain atom name, if this value is one.
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            FeatVal::Atom(s) => Some(s),
            _ => None,
        }
    }
}

/// A basic category: head symbol, feature slots, and a semantic index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Basic {
    pub head: Head,
    pub feats: Vec<FeatVal>,
    pub index: SemIndex,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Slash {
    Fwd,
    Bwd,
}

impl fmt::Display for Slash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slash::Fwd => "/",
            Slash::Bwd => "\\",
        })
    }
}

/// A grammatical category.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Category {
    Basic(Basic),
    Fun {
        res: Box<Category>,
        slash: Slash,
        arg: Box<Category>,
    },
    /// A category variable.
    Var(CatVar),
}

impl Category {
    pub fn basic(head: Head, feats: Vec<FeatVal>, index: SemIndex) -> Category {
        debug_assert_eq!(feats.len(), head.arity());
        Category::Basic(Basic { head, feats, index })
    }

    pub fn fun(res: Category, slash: Slash, arg: Category) -> Category {
        Category::Fun {
            res: Box::new(res),
            slash,
            arg: Box::new(arg),
        }
    }

    pub fn fwd(res: Category, arg: Category) -> Category {
        Category::fun(res, Slash::Fwd, arg)
    }

    pub fn bwd(res: Category, arg: Category) -> Category {
        Category::fun(res, Slash::Bwd, arg)
    }

    /// The result/argument of a functor, if this is one.
    pub fn as_fun(&self) -> Option<(&Category, Slash, &Category)> {
        match self {
            Category::Fun { res, slash, arg } => Some((res, *slash, arg)),
            _ => None,
        }
    }

    pub fn is_basic(&self) -> bool {
        matches!(self, Category::Basic(_))
    }

    /// Number of arguments along the result spine.
    pub fn num_args(&self) -> usize {
        match self {
            Category::Fun { res, .. } => 1 + res.num_args(),
            _ => 0,
        }
    }

    /// The innermost result (target) of the category.
    pub fn target(&self) -> &Category {
        match self {
            Category::Fun { res, .. } => res.target(),
            other => other,
        }
    }

    /// Iterate over `(slash, arg)` pairs from the outermost argument inward.
    pub fn args_outermost_first(&self) -> Vec<(Slash, &Category)> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Category::Fun { res, slash, arg } = cur {
            out.push((*slash, arg.as_ref()));
            cur = res;
        }
        out
    }

    /// Collect every semantic index occurring in the category.
    pub fn sem_indices(&self, out: &mut Vec<SemIndex>) {
        match self {
            Category::Basic(b) => out.push(b.index),
            Category::Fun { res, arg, .. } => {
                res.sem_indices(out);
                arg.sem_indices(out);
            }
            Category::Var(_) => {}
        }
    }
}

/// An accumulated set of bindings produced by unification. Application is
/// idempotent: chains are followed to their ends.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    feats: HashMap<VarId, FeatVal>,
    sems: HashMap<SemIndex, SemIndex>,
    cats: HashMap<CatVar, Category>,
}

impl Subst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.feats.is_empty() && self.sems.is_empty() && self.cats.is_empty()
    }

    /// Follow semantic-index bindings to the representative.
    pub fn resolve_sem(&self, mut i: SemIndex) -> SemIndex {
        while let Some(&j) = self.sems.get(&i) {
            if j == i {
                break;
            }
            i = j;
        }
        i
    }

    fn bind_sem(&mut self, a: SemIndex, b: SemIndex) {
        let ra = self.resolve_sem(a);
        let rb = self.resolve_sem(b);
        if ra != rb {
            // Deterministic orientation: higher id points at lower id.
            if ra < rb {
                self.sems.insert(rb, ra);
            } else {
                self.sems.insert(ra, rb);
            }
        }
    }

    /// Resolve a feature value through variable bindings. Negations resolve
    /// their inner value.
    pub fn resolve_feat(&self, f: &FeatVal) -> FeatVal {
        match f {
            FeatVal::Var(v) => {
                let mut v = *v;
                let mut seen = 0usize;
                loop {
                    match self.feats.get(&v) {
                        Some(FeatVal::Var(w)) => {
                            v = *w;
                            seen += 1;
                            if seen > 10_000 {
                                return FeatVal::Var(v);
                            }
                        }
                        Some(other) => return self.resolve_feat(other),
                        None => return FeatVal::Var(v),
                    }
                }
            }
            FeatVal::Neg(inner) => FeatVal::Neg(Box::new(self.resolve_feat(inner))),
            atom => atom.clone(),
        }
    }

    fn resolve_cat_var(&self, v: CatVar) -> Option<&Category> {
        self.cats.get(&v)
    }

    /// Unify two feature values under the current bindings.
    pub fn unify_feat(&mut self, a: &FeatVal, b: &FeatVal) -> bool {
        let ra = self.resolve_feat(a);
        let rb = self.resolve_feat(b);
        match (&ra, &rb) {
            (FeatVal::Var(v), FeatVal::Var(w)) => {
                if v != w {
                    // Deterministic orientation as for indices.
                    if v < w {
                        self.feats.insert(*w, FeatVal::Var(*v));
                    } else {
                        self.feats.insert(*v, FeatVal::Var(*w));
                    }
                }
                true
            }
            (FeatVal::Var(v), other) => {
                self.feats.insert(*v, other.clone());
                true
            }
            (other, FeatVal::Var(v)) => {
                self.feats.insert(*v, other.clone());
                true
            }
            (FeatVal::Atom(x), FeatVal::Atom(y)) => x == y,
            (FeatVal::Neg(x), FeatVal::Neg(y)) => self.unify_feat(x, y),
            // A negated value never matches a plain atom: `-ed` is not `ed`.
            (FeatVal::Atom(_), FeatVal::Neg(_)) | (FeatVal::Neg(_), FeatVal::Atom(_)) => false,
        }
    }

    /// Unify two semantic indices.
    pub fn unify_sem(&mut self, a: SemIndex, b: SemIndex) -> bool {
        self.bind_sem(a, b);
        true
    }

    /// Does `needle` occur in `hay` (after resolution)? Guards category-variable
    /// bindings against cycles.
    fn occurs(&self, needle: CatVar, hay: &Category) -> bool {
        match hay {
            Category::Var(v) => {
                if *v == needle {
                    return true;
                }
                match self.resolve_cat_var(*v) {
                    Some(c) => {
                        let c = c.clone();
                        self.occurs(needle, &c)
                    }
                    None => false,
                }
            }
            Category::Fun { res, arg, .. } => self.occurs(needle, res) || self.occurs(needle, arg),
            Category::Basic(_) => false,
        }
    }

    /// Unify two categories under the current bindings, extending them.
    /// On failure the substitution may contain partial bindings; callers that
    /// need transactional behavior clone first.
    pub fn unify_cat(&mut self, a: &Category, b: &Category) -> bool {
        // Resolve outer category variables first.
        if let Category::Var(v) = a {
            if let Some(c) = self.resolve_cat_var(*v).cloned() {
                return self.unify_cat(&c, b);
            }
        }
        if let Category::Var(v) = b {
            if let Some(c) = self.resolve_cat_var(*v).cloned() {
                return self.unify_cat(a, &c);
            }
        }
        match (a, b) {
            (Category::Var(v), Category::Var(w)) if v == w => true,
            (Category::Var(v), other) => {
                if self.occurs(*v, other) {
                    return false;
                }
                self.cats.insert(*v, other.clone());
                true
            }
            (other, Category::Var(v)) => {
                if self.occurs(*v, other) {
                    return false;
                }
                self.cats.insert(*v, other.clone());
                true
            }
            (Category::Basic(x), Category::Basic(y)) => {
                if x.head != y.head {
                    return false;
                }
                for (f, g) in x.feats.iter().zip(y.feats.iter()) {
                    if !self.unify_feat(f, g) {
                        return false;
                    }
                }
                self.unify_sem(x.index, y.index)
            }
            (
                Category::Fun {
                    res: r1,
                    slash: s1,
                    arg: a1,
                },
                Category::Fun {
                    res: r2,
                    slash: s2,
                    arg: a2,
                },
            ) => s1 == s2 && self.unify_cat(a1, a2) && self.unify_cat(r1, r2),
            _ => false,
        }
    }

    /// Apply the substitution to a category, replacing bound variables.
    pub fn apply_cat(&self, c: &Category) -> Category {
        match c {
            Category::Basic(b) => Category::Basic(Basic {
                head: b.head,
                feats: b.feats.iter().map(|f| self.resolve_feat(f)).collect(),
                index: self.resolve_sem(b.index),
            }),
            Category::Fun { res, slash, arg } => Category::Fun {
                res: Box::new(self.apply_cat(res)),
                slash: *slash,
                arg: Box::new(self.apply_cat(arg)),
            },
            Category::Var(v) => match self.resolve_cat_var(*v) {
                Some(bound) => {
                    let bound = bound.clone();
                    self.apply_cat(&bound)
                }
                None => c.clone(),
            },
        }
    }

    /// Merge another substitution into this one (used when a rule match is
    /// committed to a state).
    pub fn absorb(&mut self, other: &Subst) {
        for (v, f) in &other.feats {
            if !self.feats.contains_key(v) {
                self.feats.insert(*v, f.clone());
            }
        }
        for (i, j) in &other.sems {
            self.bind_sem(*i, *j);
        }
        for (v, c) in &other.cats {
            if !self.cats.contains_key(v) {
                self.cats.insert(*v, c.clone());
            }
        }
    }
}

/// Most general unifier of two categories, or `None`.
pub fn unify(a: &Category, b: &Category) -> Option<Subst> {
    let mut s = Subst::new();
    if s.unify_cat(a, b) {
        Some(s)
    } else {
        None
    }
}

/// True iff `c` has the shape `W\W` with the two sides unifiable — i.e. a
/// complete backward modifier, the shape required of the right constituent
/// before revealing applies.
pub fn is_backward_modifier(c: &Category) -> bool {
    match c {
        Category::Fun {
            res,
            slash: Slash::Bwd,
            arg,
        } => unify(res, arg).is_some(),
        _ => false,
    }
}

/// Renaming map used by [`fresh_rename`] and friends: old variable → fresh.
#[derive(Default, Debug)]
pub struct Renaming {
    pub sems: HashMap<SemIndex, SemIndex>,
    pub feats: HashMap<VarId, VarId>,
    pub cats: HashMap<CatVar, CatVar>,
}

impl Renaming {
    pub fn sem(&mut self, old: SemIndex, gen: &mut IdGen) -> SemIndex {
        *self.sems.entry(old).or_insert_with(|| gen.sem())
    }
    pub fn feat(&mut self, old: VarId, gen: &mut IdGen) -> VarId {
        *self.feats.entry(old).or_insert_with(|| gen.var())
    }
    pub fn cat(&mut self, old: CatVar, gen: &mut IdGen) -> CatVar {
        *self.cats.entry(old).or_insert_with(|| gen.cat())
    }
}

fn rename_feat(f: &FeatVal, ren: &mut Renaming, gen: &mut IdGen) -> FeatVal {
    match f {
        FeatVal::Atom(a) => FeatVal::Atom(a.clone()),
        FeatVal::Var(v) => FeatVal::Var(ren.feat(*v, gen)),
        FeatVal::Neg(inner) => FeatVal::Neg(Box::new(rename_feat(inner, ren, gen))),
    }
}

/// Rename every variable in `c` consistently via `ren`, drawing fresh ids.
pub fn rename_cat(c: &Category, ren: &mut Renaming, gen: &mut IdGen) -> Category {
    match c {
        Category::Basic(b) => Category::Basic(Basic {
            head: b.head,
            feats: b.feats.iter().map(|f| rename_feat(f, ren, gen)).collect(),
            index: ren.sem(b.index, gen),
        }),
        Category::Fun { res, slash, arg } => Category::Fun {
            res: Box::new(rename_cat(res, ren, gen)),
            slash: *slash,
            arg: Box::new(rename_cat(arg, ren, gen)),
        },
        Category::Var(v) => Category::Var(ren.cat(*v, gen)),
    }
}

/// Naming context for printing: assigns `e1, e2, …` to semantic indices,
/// `s1, s2, …` to feature variables and `c1, c2, …` to category variables in
/// order of first appearance. Reused across one state display so shared
/// variables print identically; a fresh context yields an alpha-canonical
/// form usable as a deduplication fingerprint.
#[derive(Default)]
pub struct NameCtx {
    sems: HashMap<SemIndex, usize>,
    feats: HashMap<VarId, usize>,
    cats: HashMap<CatVar, usize>,
}

impl NameCtx {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sem_name(&mut self, i: SemIndex) -> String {
        let n = self.sems.len() + 1;
        let id = *self.sems.entry(i).or_insert(n);
        format!("e{id}")
    }

    pub fn feat_name(&mut self, v: VarId) -> String {
        let n = self.feats.len() + 1;
        let id = *self.feats.entry(v).or_insert(n);
        format!("s{id}")
    }

    pub fn cat_name(&mut self, v: CatVar) -> String {
        let n = self.cats.len() + 1;
        let id = *self.cats.entry(v).or_insert(n);
        format!("c{id}")
    }

    pub fn feat_str(&mut self, f: &FeatVal) -> String {
        match f {
            FeatVal::Atom(a) => a.clone(),
            FeatVal::Var(v) => self.feat_name(*v),
            FeatVal::Neg(inner) => format!("-{}", self.feat_str(inner)),
        }
    }

    /// Render a category in the left-associative slash notation.
    pub fn cat_str(&mut self, c: &Category) -> String {
        match c {
            Category::Basic(b) => {
                let mut s = b.head.name().to_string();
                if !b.feats.is_empty() {
                    let feats: Vec<String> = b.feats.iter().map(|f| self.feat_str(f)).collect();
                    s.push('(');
                    s.push_str(&feats.join(","));
                    s.push(')');
                }
                s.push(':');
                s.push_str(&self.sem_name(b.index));
                s
            }
            Category::Fun { res, slash, arg } => {
                let res_s = self.cat_str(res);
                let arg_s = match arg.as_ref() {
                    Category::Fun { .. } => format!("({})", self.cat_str(arg)),
                    _ => self.cat_str(arg),
                };
                format!("{res_s}{slash}{arg_s}")
            }
            Category::Var(v) => self.cat_name(*v),
        }
    }
}

/// Render a category with a throwaway naming context.
pub fn display_cat(c: &Category) -> String {
    NameCtx::new().cat_str(c)
}
