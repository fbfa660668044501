//! Terms of the finite πI-calculus with outcome literals.
//!
//! Besides the core constructs (outcome, prefix, place-holder, the two
//! parallel compositions and hiding) a term may carry three derived forms:
//! the sum `P (+) Q`, the scalar `k * P` and the linear action `lin a.P`.
//! They are kept as first-class variants so that simple terms can be
//! recognised syntactically, and are turned into core terms by
//! [`elaborate`].
//!
//! Every term handed out by this module is *hygienic*: all bound names are
//! pairwise distinct and distinct from the free names.

mod elaborate;
mod hygiene;
mod parse;
mod print;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

pub use elaborate::{elaborate, elaborate_with_provenance, Elaborated};
pub use hygiene::{normalize, FreshNames};
pub use parse::{parse_term, parse_term_internal};
pub use print::print_term;

use crate::semiring::Value;

/// A channel name. Names starting with `#` are reserved for machine-made
/// fresh names and are rejected by the public parser.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_internal(&self) -> bool {
        self.0.starts_with('#')
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn dual(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Polarity::Pos => '+',
            Polarity::Neg => '-',
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An action prefix `u^ε(x)`: subject, polarity and the bound name it
/// introduces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Action {
    pub subject: Name,
    pub polarity: Polarity,
    pub bound: Name,
}

impl Action {
    pub fn new(subject: impl Into<Name>, polarity: Polarity, bound: impl Into<Name>) -> Self {
        Action {
            subject: subject.into(),
            polarity,
            bound: bound.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Lit(Value),
    Prefix(Action, Box<Term>),
    Place(Box<Term>),
    Par(Box<Term>, Box<Term>),
    ParNi(Box<Term>, Box<Term>),
    Nu(Name, Box<Term>),
    Sum(Box<Term>, Box<Term>),
    Scalar(Value, Box<Term>),
    Lin(Action, Box<Term>),
}

impl Term {
    pub fn lit(v: Value) -> Term {
        Term::Lit(v)
    }

    pub fn int(n: u64) -> Term {
        Term::Lit(Value::int(n))
    }

    pub fn one() -> Term {
        Term::int(1)
    }

    pub fn zero() -> Term {
        Term::int(0)
    }

    pub fn omega() -> Term {
        Term::Lit(Value::Omega)
    }

    pub fn prefix(a: Action, body: Term) -> Term {
        Term::Prefix(a, Box::new(body))
    }

    pub fn lin(a: Action, body: Term) -> Term {
        Term::Lin(a, Box::new(body))
    }

    pub fn place(body: Term) -> Term {
        Term::Place(Box::new(body))
    }

    pub fn par(l: Term, r: Term) -> Term {
        Term::Par(Box::new(l), Box::new(r))
    }

    pub fn par_ni(l: Term, r: Term) -> Term {
        Term::ParNi(Box::new(l), Box::new(r))
    }

    pub fn nu(x: impl Into<Name>, body: Term) -> Term {
        Term::Nu(x.into(), Box::new(body))
    }

    pub fn sum(l: Term, r: Term) -> Term {
        Term::Sum(Box::new(l), Box::new(r))
    }

    pub fn scalar(k: Value, body: Term) -> Term {
        Term::Scalar(k, Box::new(body))
    }

    /// `|`-composition of a list, `1` when empty.
    pub fn par_all(items: impl IntoIterator<Item = Term>) -> Term {
        items.into_iter().reduce(Term::par).unwrap_or_else(Term::one)
    }

    /// `∥`-composition of a list, `1` when empty.
    pub fn par_ni_all(items: impl IntoIterator<Item = Term>) -> Term {
        items.into_iter().reduce(Term::par_ni).unwrap_or_else(Term::one)
    }

    /// True when no derived form occurs.
    pub fn is_core(&self) -> bool {
        match self {
            Term::Lit(_) => true,
            Term::Prefix(_, b) | Term::Place(b) | Term::Nu(_, b) => b.is_core(),
            Term::Par(l, r) | Term::ParNi(l, r) => l.is_core() && r.is_core(),
            Term::Sum(..) | Term::Scalar(..) | Term::Lin(..) => false,
        }
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Lit(_) => vec![],
            Term::Prefix(_, b)
            | Term::Place(b)
            | Term::Nu(_, b)
            | Term::Scalar(_, b)
            | Term::Lin(_, b) => vec![b],
            Term::Par(l, r) | Term::ParNi(l, r) | Term::Sum(l, r) => vec![l, r],
        }
    }

    /// Every outcome literal, including scalars.
    pub fn literals(&self) -> Vec<&Value> {
        let mut out = Vec::new();
        self.visit(&mut |t| match t {
            Term::Lit(v) | Term::Scalar(v, _) => out.push(v),
            _ => {}
        });
        out
    }

    /// Number of action prefixes (general or linear).
    pub fn prefix_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |t| {
            if matches!(t, Term::Prefix(..) | Term::Lin(..)) {
                n += 1;
            }
        });
        n
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub(crate) fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Every name occurring anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Prefix(a, _) | Term::Lin(a, _) => {
                out.insert(a.subject.clone());
                out.insert(a.bound.clone());
            }
            Term::Nu(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        fn go(t: &Term, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
            match t {
                Term::Lit(_) => {}
                Term::Prefix(a, b) | Term::Lin(a, b) => {
                    if !bound.contains(&a.subject) {
                        out.insert(a.subject.clone());
                    }
                    bound.push(a.bound.clone());
                    go(b, bound, out);
                    bound.pop();
                }
                Term::Nu(x, b) => {
                    bound.push(x.clone());
                    go(b, bound, out);
                    bound.pop();
                }
                Term::Place(b) | Term::Scalar(_, b) => go(b, bound, out),
                Term::Par(l, r) | Term::ParNi(l, r) | Term::Sum(l, r) => {
                    go(l, bound, out);
                    go(r, bound, out);
                }
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Capture-avoiding substitution of `to` for the free occurrences of
    /// `from`. The result is re-normalized so that hygiene holds again.
    pub fn substitute(&self, from: &Name, to: &Name) -> Term {
        if from == to {
            return self.clone();
        }
        let mut fresh = FreshNames::for_term(self);
        fresh.reserve(to.clone());
        let raw = subst_capture_avoiding(self, from, to, &mut fresh);
        normalize(&raw)
    }

    /// Replaces every occurrence of `from` (free or as a binder) by `to`.
    /// Only sound when `from` is not captured and `to` is fresh for the
    /// term, which is the situation after an interaction.
    pub(crate) fn rename_raw(&self, from: &Name, to: &Name) -> Term {
        let r = |n: &Name| if n == from { to.clone() } else { n.clone() };
        match self {
            Term::Lit(v) => Term::Lit(v.clone()),
            Term::Prefix(a, b) => Term::prefix(
                Action {
                    subject: r(&a.subject),
                    polarity: a.polarity,
                    bound: r(&a.bound),
                },
                b.rename_raw(from, to),
            ),
            Term::Lin(a, b) => Term::lin(
                Action {
                    subject: r(&a.subject),
                    polarity: a.polarity,
                    bound: r(&a.bound),
                },
                b.rename_raw(from, to),
            ),
            Term::Place(b) => Term::place(b.rename_raw(from, to)),
            Term::Nu(x, b) => Term::nu(r(x), b.rename_raw(from, to)),
            Term::Scalar(k, b) => Term::scalar(k.clone(), b.rename_raw(from, to)),
            Term::Par(l, rr) => Term::par(l.rename_raw(from, to), rr.rename_raw(from, to)),
            Term::ParNi(l, rr) => Term::par_ni(l.rename_raw(from, to), rr.rename_raw(from, to)),
            Term::Sum(l, rr) => Term::sum(l.rename_raw(from, to), rr.rename_raw(from, to)),
        }
    }

    /// A representative of the alpha-equivalence class, also insensitive to
    /// the order of adjacent restrictions.
    pub fn alpha_canonical(&self) -> Term {
        let mut counter = 0usize;
        alpha_canon(self, &HashMap::new(), &mut counter)
    }

    /// Alpha-equivalence, modulo reordering of adjacent restrictions.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        self.alpha_canonical() == other.alpha_canonical()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

fn subst_capture_avoiding(t: &Term, from: &Name, to: &Name, fresh: &mut FreshNames) -> Term {
    let rn = |n: &Name| if n == from { to.clone() } else { n.clone() };
    // Binder handling shared by prefixes, linear prefixes and restrictions.
    let bind = |x: &Name, body: &Term, fresh: &mut FreshNames| -> (Name, Term) {
        if x == from {
            (x.clone(), body.clone())
        } else if x == to && body.free_names().contains(from) {
            let y = fresh.fresh();
            let renamed = body.rename_free(x, &y);
            (y, subst_capture_avoiding(&renamed, from, to, fresh))
        } else {
            (x.clone(), subst_capture_avoiding(body, from, to, fresh))
        }
    };
    match t {
        Term::Lit(v) => Term::Lit(v.clone()),
        Term::Prefix(a, b) | Term::Lin(a, b) => {
            let (x, body) = bind(&a.bound, b, fresh);
            let act = Action {
                subject: rn(&a.subject),
                polarity: a.polarity,
                bound: x,
            };
            if matches!(t, Term::Lin(..)) {
                Term::lin(act, body)
            } else {
                Term::prefix(act, body)
            }
        }
        Term::Nu(x, b) => {
            let (x, body) = bind(x, b, fresh);
            Term::nu(x, body)
        }
        Term::Place(b) => Term::place(subst_capture_avoiding(b, from, to, fresh)),
        Term::Scalar(k, b) => Term::scalar(k.clone(), subst_capture_avoiding(b, from, to, fresh)),
        Term::Par(l, r) => Term::par(
            subst_capture_avoiding(l, from, to, fresh),
            subst_capture_avoiding(r, from, to, fresh),
        ),
        Term::ParNi(l, r) => Term::par_ni(
            subst_capture_avoiding(l, from, to, fresh),
            subst_capture_avoiding(r, from, to, fresh),
        ),
        Term::Sum(l, r) => Term::sum(
            subst_capture_avoiding(l, from, to, fresh),
            subst_capture_avoiding(r, from, to, fresh),
        ),
    }
}

impl Term {
    /// Renames free occurrences of `from` to `to`, stopping under binders of
    /// `from`. `to` must be fresh.
    fn rename_free(&self, from: &Name, to: &Name) -> Term {
        let rn = |n: &Name| if n == from { to.clone() } else { n.clone() };
        match self {
            Term::Lit(v) => Term::Lit(v.clone()),
            Term::Prefix(a, b) | Term::Lin(a, b) => {
                let act = Action {
                    subject: rn(&a.subject),
                    polarity: a.polarity,
                    bound: a.bound.clone(),
                };
                let body = if &a.bound == from {
                    (**b).clone()
                } else {
                    b.rename_free(from, to)
                };
                if matches!(self, Term::Lin(..)) {
                    Term::lin(act, body)
                } else {
                    Term::prefix(act, body)
                }
            }
            Term::Nu(x, b) => {
                if x == from {
                    self.clone()
                } else {
                    Term::nu(x.clone(), b.rename_free(from, to))
                }
            }
            Term::Place(b) => Term::place(b.rename_free(from, to)),
            Term::Scalar(k, b) => Term::scalar(k.clone(), b.rename_free(from, to)),
            Term::Par(l, r) => Term::par(l.rename_free(from, to), r.rename_free(from, to)),
            Term::ParNi(l, r) => Term::par_ni(l.rename_free(from, to), r.rename_free(from, to)),
            Term::Sum(l, r) => Term::sum(l.rename_free(from, to), r.rename_free(from, to)),
        }
    }
}

fn canon_name(i: usize) -> Name {
    Name::new(&format!("%{i}"))
}

fn alpha_canon(t: &Term, env: &HashMap<Name, Name>, counter: &mut usize) -> Term {
    let look = |n: &Name| env.get(n).cloned().unwrap_or_else(|| n.clone());
    match t {
        Term::Lit(v) => Term::Lit(v.clone()),
        Term::Prefix(a, b) | Term::Lin(a, b) => {
            let x = canon_name(*counter);
            *counter += 1;
            let mut inner = env.clone();
            inner.insert(a.bound.clone(), x.clone());
            let act = Action {
                subject: look(&a.subject),
                polarity: a.polarity,
                bound: x,
            };
            let body = alpha_canon(b, &inner, counter);
            if matches!(t, Term::Lin(..)) {
                Term::lin(act, body)
            } else {
                Term::prefix(act, body)
            }
        }
        Term::Nu(..) => {
            // Gather the whole chain of adjacent restrictions.
            let mut chain = Vec::new();
            let mut body = t;
            while let Term::Nu(x, b) = body {
                chain.push(x.clone());
                body = b;
            }
            // Number the chain by first occurrence in the body, so that the
            // order of the binders themselves is irrelevant.
            let mut order: Vec<Name> = Vec::new();
            body.visit(&mut |s| {
                let mut note = |n: &Name| {
                    if chain.contains(n) && !order.contains(n) {
                        order.push(n.clone());
                    }
                };
                match s {
                    Term::Prefix(a, _) | Term::Lin(a, _) => note(&a.subject),
                    Term::Nu(x, _) => note(x),
                    _ => {}
                }
            });
            let unused = chain.iter().filter(|n| !order.contains(n)).count();
            let mut inner = env.clone();
            let mut names = Vec::new();
            for n in &order {
                let c = canon_name(*counter);
                *counter += 1;
                inner.insert(n.clone(), c.clone());
                names.push(c);
            }
            for _ in 0..unused {
                names.push(canon_name(*counter));
                *counter += 1;
            }
            let mut out = alpha_canon(body, &inner, counter);
            for c in names.into_iter().rev() {
                out = Term::nu(c, out);
            }
            out
        }
        Term::Place(b) => Term::place(alpha_canon(b, env, counter)),
        Term::Scalar(k, b) => Term::scalar(k.clone(), alpha_canon(b, env, counter)),
        Term::Par(l, r) => {
            let l = alpha_canon(l, env, counter);
            Term::par(l, alpha_canon(r, env, counter))
        }
        Term::ParNi(l, r) => {
            let l = alpha_canon(l, env, counter);
            Term::par_ni(l, alpha_canon(r, env, counter))
        }
        Term::Sum(l, r) => {
            let l = alpha_canon(l, env, counter);
            Term::sum(l, alpha_canon(r, env, counter))
        }
    }
}
