//! Partial-order traces with readiness.
//!
//! A trace is a finite set of events, each with a polarity and a subject
//! (a public name or an earlier event whose bound name it uses), a partial
//! order, and a set `N` of inactions still offered once the trace is
//! consumed. Events are numbered `0..n`; [`Trace::canonicalize`] picks a
//! numbering that only depends on the isomorphism class.

mod decompose;
mod implement;
mod json;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::order::Poset;
use crate::syntax::{Name, Polarity};

pub use decompose::{decompose, trace_par_compose, LinearCombination};
pub use implement::{extract_trace, implement_trace};
pub(crate) use implement::trace_of_config;
pub use json::{TraceJson, TraceJsonEvent, TraceJsonReady, TraceJsonSubject};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subject {
    Name(Name),
    /// The private channel bound by an earlier event.
    Event(usize),
}

impl Subject {
    fn map(&self, perm: &[usize]) -> Subject {
        match self {
            Subject::Name(x) => Subject::Name(x.clone()),
            Subject::Event(e) => Subject::Event(perm[*e]),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Name(x) => write!(f, "{x}"),
            Subject::Event(e) => write!(f, "^{}", e + 1),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trace {
    pol: Vec<Polarity>,
    subj: Vec<Subject>,
    order: Poset,
    ready: BTreeSet<(Polarity, Subject)>,
}

impl Trace {
    pub fn new(
        pol: Vec<Polarity>,
        subj: Vec<Subject>,
        order: Poset,
        ready: BTreeSet<(Polarity, Subject)>,
    ) -> Result<Trace> {
        let n = pol.len();
        if subj.len() != n || order.len() != n {
            return Err(Error::InvalidTrace("event tables have different sizes".into()));
        }
        for (b, s) in subj.iter().enumerate() {
            if let Subject::Event(a) = s {
                if *a >= n {
                    return Err(Error::InvalidTrace(format!("event {} has no event {}", b + 1, a + 1)));
                }
                if !order.less(*a, b) {
                    return Err(Error::InvalidTrace(format!(
                        "event {} uses the name of event {} but is not after it",
                        b + 1,
                        a + 1
                    )));
                }
            }
        }
        for (_, s) in &ready {
            if let Subject::Event(a) = s {
                if *a >= n {
                    return Err(Error::InvalidTrace(format!("inaction on missing event {}", a + 1)));
                }
            }
        }
        Ok(Trace {
            pol,
            subj,
            order,
            ready,
        })
    }

    /// Builds a trace from events, a generating relation for the order and
    /// the inactions.
    pub fn from_parts(
        events: Vec<(Polarity, Subject)>,
        order: impl IntoIterator<Item = (usize, usize)>,
        ready: impl IntoIterator<Item = (Polarity, Subject)>,
    ) -> Result<Trace> {
        let n = events.len();
        let pairs: Vec<(usize, usize)> = order.into_iter().collect();
        if pairs.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidTrace("order mentions a missing event".into()));
        }
        let order = Poset::from_relation(n, pairs)
            .ok_or_else(|| Error::InvalidTrace("order has a cycle".into()))?;
        let (pol, subj) = events.into_iter().unzip();
        Trace::new(pol, subj, order, ready.into_iter().collect())
    }

    pub fn empty() -> Trace {
        Trace {
            pol: Vec::new(),
            subj: Vec::new(),
            order: Poset::discrete(0),
            ready: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.pol.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pol.is_empty()
    }

    pub fn polarity(&self, e: usize) -> Polarity {
        self.pol[e]
    }

    pub fn subject(&self, e: usize) -> &Subject {
        &self.subj[e]
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn ready(&self) -> &BTreeSet<(Polarity, Subject)> {
        &self.ready
    }

    /// Public names used by events or inactions.
    pub fn names(&self) -> BTreeSet<Name> {
        self.subj
            .iter()
            .chain(self.ready.iter().map(|(_, s)| s))
            .filter_map(|s| match s {
                Subject::Name(x) => Some(x.clone()),
                Subject::Event(_) => None,
            })
            .collect()
    }

    /// The same trace with event `e` renamed `perm[e]`.
    pub fn permute(&self, perm: &[usize]) -> Trace {
        let n = self.len();
        let mut pol = vec![Polarity::Pos; n];
        let mut subj = vec![Subject::Event(0); n];
        for e in 0..n {
            pol[perm[e]] = self.pol[e];
            subj[perm[e]] = self.subj[e].map(perm);
        }
        Trace {
            pol,
            subj,
            order: self.order.permute(perm),
            ready: self.ready.iter().map(|(p, s)| (*p, s.map(perm))).collect(),
        }
    }

    /// Numbering along the lexicographically least encoding over all linear
    /// extensions, each event encoded by its polarity, subject and down-set.
    pub fn canonicalize(&self) -> Trace {
        let mut best: Option<(Vec<(Polarity, Subject, Vec<usize>)>, Vec<(Polarity, Subject)>, Vec<usize>)> = None;
        for ext in self.order.linear_extensions() {
            let mut perm = vec![0; self.len()];
            for (i, &e) in ext.iter().enumerate() {
                perm[e] = i;
            }
            let events: Vec<_> = ext
                .iter()
                .map(|&e| {
                    let mut down: Vec<usize> = self.order.below(e).iter().map(|&d| perm[d]).collect();
                    down.sort_unstable();
                    (self.pol[e], self.subj[e].map(&perm), down)
                })
                .collect();
            if best.as_ref().is_some_and(|b| b.0 < events) {
                continue;
            }
            let ready: Vec<_> = self
                .ready
                .iter()
                .map(|(p, s)| (*p, s.map(&perm)))
                .sorted()
                .collect();
            if best.as_ref().is_none_or(|b| (&events, &ready) < (&b.0, &b.1)) {
                best = Some((events, ready, perm));
            }
        }
        let (_, _, perm) = best.expect("every order has a linear extension");
        self.permute(&perm)
    }

    pub fn is_canonical(&self) -> bool {
        &self.canonicalize() == self
    }

    /// Flips every polarity, of events and inactions.
    pub fn dual(&self) -> Trace {
        Trace {
            pol: self.pol.iter().map(|p| p.dual()).collect(),
            subj: self.subj.clone(),
            order: self.order.clone(),
            ready: self.ready.iter().map(|(p, s)| (p.dual(), s.clone())).collect(),
        }
    }

    /// One trace per linear extension of the order.
    pub fn total_orderings(&self) -> Vec<Trace> {
        self.order
            .linear_extensions()
            .into_iter()
            .map(|ext| Trace {
                order: Poset::chain(&ext),
                ..self.clone()
            })
            .collect()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let events = (0..self.len())
            .map(|e| format!("{}:{}{}", e + 1, self.subj[e], self.pol[e]))
            .join(" ");
        let order = self
            .order
            .hasse()
            .iter()
            .map(|(a, b)| format!("{}<{}", a + 1, b + 1))
            .join(" ");
        let ready = self.ready.iter().map(|(p, s)| format!("{s}{p}.0")).join(" ");
        write!(f, "[{events}; {order}; {ready}]")
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn canonicalize(t: &Trace) -> Trace {
    t.canonicalize()
}

pub fn dual(t: &Trace) -> Trace {
    t.dual()
}

pub fn total_orderings(t: &Trace) -> Vec<Trace> {
    t.total_orderings()
}

/// Number of synchronizations of `t` and `u`: bijections between their
/// events that flip polarities, respect subjects, keep the union of the two
/// orders acyclic, and never match an inaction with a dual inaction.
pub fn sync_count(t: &Trace, u: &Trace) -> u64 {
    let n = t.len();
    if n != u.len() {
        return 0;
    }
    let name_or = |s: &Subject, sigma: &[usize]| s.map(sigma);
    let mut count = 0;
    'perm: for sigma in (0..n).permutations(n) {
        for a in 0..n {
            if u.pol[sigma[a]] != t.pol[a].dual() || name_or(&t.subj[a], &sigma) != u.subj[sigma[a]] {
                continue 'perm;
            }
        }
        let mut inv = vec![0; n];
        for (a, &b) in sigma.iter().enumerate() {
            inv[b] = a;
        }
        let rel = t
            .order
            .pairs()
            .into_iter()
            .chain(u.order.pairs().into_iter().map(|(a, b)| (inv[a], inv[b])));
        if Poset::from_relation(n, rel).is_none() {
            continue;
        }
        for (p, s) in &t.ready {
            if u.ready.contains(&(p.dual(), name_or(s, &sigma))) {
                continue 'perm;
            }
        }
        count += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> Subject {
        Subject::Name(Name::new(s))
    }

    const P: Polarity = Polarity::Pos;
    const M: Polarity = Polarity::Neg;

    fn isomorphic(a: &Trace, b: &Trace) -> bool {
        a.len() == b.len() && (0..a.len()).permutations(a.len()).any(|p| &a.permute(&p) == b)
    }

    #[test]
    fn validation() {
        assert!(Trace::from_parts(vec![(P, name("a")), (M, Subject::Event(0))], [(0, 1)], []).is_ok());
        assert!(Trace::from_parts(vec![(P, name("a")), (M, Subject::Event(0))], [], []).is_err());
        assert!(Trace::from_parts(vec![(P, name("a"))], [(0, 0)], []).is_err());
        assert!(Trace::from_parts(vec![], [], [(P, Subject::Event(3))]).is_err());
    }

    #[test]
    fn canonical_forms() {
        let single = Trace::from_parts(vec![(P, name("a"))], [], []).unwrap();
        assert_eq!(single.canonicalize(), single);
        let t = Trace::from_parts(
            vec![(P, name("a")), (M, Subject::Event(0)), (P, name("b"))],
            [(0, 1), (2, 1)],
            [(M, Subject::Event(0))],
        )
        .unwrap();
        for perm in (0..3).permutations(3) {
            let u = t.permute(&perm);
            assert!(isomorphic(&t, &u));
            assert_eq!(u.canonicalize(), t.canonicalize());
        }
        let chain = Trace::from_parts(vec![(P, name("a")), (P, name("a"))], [(0, 1)], []).unwrap();
        let anti = Trace::from_parts(vec![(P, name("a")), (P, name("a"))], [], []).unwrap();
        assert!(!isomorphic(&chain, &anti));
        assert_ne!(chain.canonicalize(), anti.canonicalize());
    }

    #[test]
    fn orderings_and_duals() {
        let anti = Trace::from_parts(vec![(P, name("a")), (M, name("b")), (P, name("c"))], [], []).unwrap();
        assert_eq!(anti.total_orderings().len(), 6);
        let chain = Trace::from_parts(vec![(P, name("a")), (M, name("b"))], [(0, 1)], []).unwrap();
        assert_eq!(chain.total_orderings(), vec![chain.clone()]);
        assert_eq!(anti.dual().dual(), anti);
        assert_eq!(anti.dual().polarity(0), M);
    }

    #[test]
    fn sync_examples() {
        let a_plus = Trace::from_parts(vec![(P, name("a"))], [], []).unwrap();
        let a_minus = a_plus.dual();
        assert_eq!(sync_count(&a_plus, &a_minus), 1);
        assert_eq!(sync_count(&a_plus, &Trace::empty()), 0);
        assert_eq!(sync_count(&Trace::empty(), &Trace::empty()), 1);
        let t = Trace::from_parts(vec![(P, name("a")), (P, name("b"))], [(0, 1)], []).unwrap();
        let u = Trace::from_parts(vec![(M, name("b")), (M, name("a"))], [(0, 1)], []).unwrap();
        assert_eq!(sync_count(&t, &u), 0);
        assert_eq!(sync_count(&t, &t.dual()), 1);
        let clash = Trace::from_parts(vec![], [], [(P, name("a"))]).unwrap();
        assert_eq!(sync_count(&clash, &clash.dual()), 0);
        assert_eq!(sync_count(&clash, &clash), 1);
    }
}
