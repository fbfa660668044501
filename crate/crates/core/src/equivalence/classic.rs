//! Classic may and must testing on the plain reduction relation, without
//! positions, runs or semirings. Used to cross-check the semiring testers.

use std::collections::{BTreeSet, HashSet};

use crate::error::Result;
use crate::syntax::{elaborate, Name, Polarity, Term};

/// How a stuck state ends: some active `0`, else some active `ω`, else
/// neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ending {
    Zero,
    One,
    Success,
}

fn ending(t: &Term) -> Ending {
    fn go(t: &Term, zero: &mut bool, omega: &mut bool) {
        match t {
            Term::Lit(v) if v.is_zero() => *zero = true,
            Term::Lit(v) if v.is_omega() => *omega = true,
            Term::Lit(_) | Term::Prefix(..) => {}
            Term::Place(b) | Term::Nu(_, b) => go(b, zero, omega),
            Term::Par(l, r) | Term::ParNi(l, r) => {
                go(l, zero, omega);
                go(r, zero, omega);
            }
            _ => unreachable!("elaborated"),
        }
    }
    let (mut zero, mut omega) = (false, false);
    go(t, &mut zero, &mut omega);
    if zero {
        Ending::Zero
    } else if omega {
        Ending::Success
    } else {
        Ending::One
    }
}

/// Renames every binder apart so that subjects can be compared globally.
fn rename_apart(t: &Term, counter: &mut usize) -> Term {
    let mut fresh = || {
        *counter += 1;
        Name::new(&format!("#c{counter}"))
    };
    match t {
        Term::Lit(_) => t.clone(),
        Term::Prefix(a, b) => {
            let x = fresh();
            let body = rename_apart(&b.substitute(&a.bound, &x), counter);
            let mut a = a.clone();
            a.bound = x;
            Term::Prefix(a, Box::new(body))
        }
        Term::Nu(y, b) => {
            let x = fresh();
            Term::nu(x.clone(), rename_apart(&b.substitute(y, &x), counter))
        }
        Term::Place(b) => Term::place(rename_apart(b, counter)),
        Term::Par(l, r) => Term::par(rename_apart(l, counter), rename_apart(r, counter)),
        Term::ParNi(l, r) => Term::par_ni(rename_apart(l, counter), rename_apart(r, counter)),
        _ => unreachable!("elaborated"),
    }
}

struct Ready {
    path: Vec<u8>,
    subject: Name,
    polarity: Polarity,
}

fn ready(t: &Term, path: &mut Vec<u8>, out: &mut Vec<Ready>) {
    match t {
        Term::Prefix(a, _) => out.push(Ready {
            path: path.clone(),
            subject: a.subject.clone(),
            polarity: a.polarity,
        }),
        Term::Place(b) | Term::Nu(_, b) => {
            path.push(0);
            ready(b, path, out);
            path.pop();
        }
        Term::Par(l, r) | Term::ParNi(l, r) => {
            path.push(1);
            ready(l, path, out);
            path.pop();
            path.push(2);
            ready(r, path, out);
            path.pop();
        }
        _ => {}
    }
}

fn node<'a>(t: &'a Term, path: &[u8]) -> &'a Term {
    match (t, path.first()) {
        (_, None) => t,
        (Term::Place(b) | Term::Nu(_, b), Some(0)) => node(b, &path[1..]),
        (Term::Par(l, _) | Term::ParNi(l, _), Some(1)) => node(l, &path[1..]),
        (Term::Par(_, r) | Term::ParNi(_, r), Some(2)) => node(r, &path[1..]),
        _ => unreachable!("path into the term"),
    }
}

/// Replaces the prefix at `path` by its body with the bound name renamed.
fn fire(t: &Term, path: &[u8], to: &Name) -> Term {
    match (t, path.first()) {
        (Term::Prefix(a, b), None) => b.substitute(&a.bound, to),
        (Term::Place(b), Some(0)) => Term::place(fire(b, &path[1..], to)),
        (Term::Nu(x, b), Some(0)) => Term::nu(x.clone(), fire(b, &path[1..], to)),
        (Term::Par(l, r), Some(1)) => Term::par(fire(l, &path[1..], to), (**r).clone()),
        (Term::Par(l, r), Some(2)) => Term::par((**l).clone(), fire(r, &path[1..], to)),
        (Term::ParNi(l, r), Some(1)) => Term::par_ni(fire(l, &path[1..], to), (**r).clone()),
        (Term::ParNi(l, r), Some(2)) => Term::par_ni((**l).clone(), fire(r, &path[1..], to)),
        _ => unreachable!("path to a prefix"),
    }
}

fn reductions(t: &Term, counter: &mut usize) -> Vec<Term> {
    let mut rs = Vec::new();
    ready(t, &mut Vec::new(), &mut rs);
    let mut out = Vec::new();
    for (i, a) in rs.iter().enumerate() {
        for b in &rs[i + 1..] {
            if a.subject != b.subject || a.polarity == b.polarity {
                continue;
            }
            let common = a.path.iter().zip(&b.path).take_while(|(x, y)| x == y).count();
            if !matches!(node(t, &a.path[..common]), Term::Par(..)) {
                continue;
            }
            *counter += 1;
            let z = Name::new(&format!("#c{counter}"));
            let s = fire(&fire(t, &a.path, &z), &b.path, &z);
            out.push(Term::nu(z, s));
        }
    }
    out
}

/// The endings of all maximal reduction sequences of `t`.
pub fn endings(t: &Term) -> Result<BTreeSet<Ending>> {
    let mut counter = 0;
    let start = rename_apart(&elaborate(t), &mut counter);
    let mut seen = HashSet::new();
    let mut out = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        if !seen.insert(s.alpha_canonical()) {
            continue;
        }
        let end = ending(&s);
        if end == Ending::Zero {
            out.insert(end);
            continue;
        }
        let next = reductions(&s, &mut counter);
        if next.is_empty() {
            out.insert(end);
        }
        stack.extend(next);
    }
    Ok(out)
}

/// Some maximal computation ends in success.
pub fn may_succeed(endings: &BTreeSet<Ending>) -> bool {
    endings.contains(&Ending::Success)
}

/// No maximal computation ends without success or failure, and some ends
/// in success.
pub fn must_succeed(endings: &BTreeSet<Ending>) -> bool {
    !endings.contains(&Ending::One) && endings.contains(&Ending::Success)
}

/// `p` may pass the test `r`.
pub fn may_pass(p: &Term, r: &Term) -> Result<bool> {
    Ok(may_succeed(&endings(&Term::par(p.clone(), r.clone()))?))
}

/// `p` must pass the test `r`.
pub fn must_pass(p: &Term, r: &Term) -> Result<bool> {
    Ok(must_succeed(&endings(&Term::par(p.clone(), r.clone()))?))
}
