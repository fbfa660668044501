//! Pre-traces and runs up to homotopy, states and outcomes.
//!
//! Two interactions of the same term with the same set of labels are
//! homotopic, so a pre-trace is stored as its sorted label set together with
//! its causal order.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Deref;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::lts::net::{Config, Explore, Net};
use crate::lts::{reduct, transitions, Label};
use crate::order::Poset;
use crate::semiring::{SemiringId, Value};
use crate::syntax::{elaborate, Term};

/// A homotopy class of interactions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PreTrace {
    labels: Vec<Label>,
    order: Poset,
    origin: Term,
}

impl PreTrace {
    pub(crate) fn from_config(net: &Net, c: &Config) -> PreTrace {
        let mut steps = net.steps(c);
        steps.sort_by_key(|&s| net.label(s));
        let order = net.causal_order(&steps);
        PreTrace {
            labels: steps.into_iter().map(|s| net.label(s)).collect(),
            order,
            origin: net.term.clone(),
        }
    }

    /// The labels, sorted.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// The causal order, on indices into [`labels`](Self::labels).
    pub fn order(&self) -> &Poset {
        &self.order
    }

    /// The (core) term this pre-trace belongs to.
    pub fn origin(&self) -> &Term {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_set(&self) -> BTreeSet<Label> {
        self.labels.iter().cloned().collect()
    }

    /// One valid interaction in this class.
    pub fn linearization(&self) -> Vec<Label> {
        let mut idx: Vec<usize> = (0..self.labels.len()).collect();
        idx.sort_by_key(|&i| (self.order.below(i).len(), i));
        // sorting by down-set size is a linear extension
        idx.into_iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn linearizations(&self) -> Vec<Vec<Label>> {
        self.order
            .linear_extensions()
            .into_iter()
            .map(|e| e.into_iter().map(|i| self.labels[i].clone()).collect())
            .collect()
    }

    /// The end term `P/ρ`.
    pub fn reduct(&self) -> Result<Term> {
        reduct(&self.origin, &self.linearization())
    }

    pub fn hasse_labels(&self) -> Vec<(&Label, &Label)> {
        self.order
            .hasse()
            .into_iter()
            .map(|(a, b)| (&self.labels[a], &self.labels[b]))
            .collect()
    }
}

impl fmt::Display for PreTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.iter().join(" "))?;
        let edges = self.hasse_labels();
        if !edges.is_empty() {
            write!(
                f,
                " {}",
                edges.iter().map(|(a, b)| format!("{a}<{b}")).join(" ")
            )?;
        }
        Ok(())
    }
}

impl fmt::Debug for PreTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A homotopy class of maximal paths.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Run(PreTrace);

impl Deref for Run {
    type Target = PreTrace;
    fn deref(&self) -> &PreTrace {
        &self.0
    }
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// `a ⋈ b`: every position of one is incomparable with every position of
/// the other.
pub fn independent(a: &Label, b: &Label) -> bool {
    a.positions()
        .iter()
        .all(|p| b.positions().iter().all(|q| p.independent(q)))
}

/// Homotopy of two valid interactions of `t`.
pub fn homotopic(p: &[Label], q: &[Label], t: &Term) -> Result<bool> {
    let net = Net::new(&elaborate(t))?;
    net.replay(p)?;
    net.replay(q)?;
    let a: BTreeSet<&Label> = p.iter().collect();
    let b: BTreeSet<&Label> = q.iter().collect();
    Ok(p.len() == q.len() && a == b)
}

/// Homotopy by breadth-first search over swaps of adjacent independent
/// labels. Exponential; meant for cross-checking [`homotopic`].
pub fn homotopic_by_swaps(p: &[Label], q: &[Label]) -> bool {
    if p.len() != q.len() {
        return false;
    }
    let mut seen: HashSet<Vec<Label>> = HashSet::new();
    let mut queue = VecDeque::from([p.to_vec()]);
    seen.insert(p.to_vec());
    while let Some(cur) = queue.pop_front() {
        if cur == q {
            return true;
        }
        for i in 0..cur.len().saturating_sub(1) {
            if independent(&cur[i], &cur[i + 1]) {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

/// All pre-traces of `t` (derived forms are elaborated first), sorted by
/// label list.
pub fn pretraces(t: &Term) -> Result<Vec<PreTrace>> {
    let net = Net::new(&elaborate(t))?;
    let e = net.explore(&Explore {
        visible: true,
        ..Explore::default()
    });
    let mut out: Vec<PreTrace> = e
        .configs
        .iter()
        .map(|c| PreTrace::from_config(&net, c))
        .collect();
    out.sort_by(|a, b| a.labels.cmp(&b.labels));
    Ok(out)
}

/// All runs of `t` (derived forms are elaborated first), sorted by label
/// list.
pub fn runs(t: &Term) -> Result<Vec<Run>> {
    runs_seeded(t, None)
}

/// [`runs`] with successors explored in a seeded random order.
pub fn runs_seeded(t: &Term, seed: Option<u64>) -> Result<Vec<Run>> {
    let net = Net::new(&elaborate(t))?;
    let mut out: Vec<Run> = net
        .runs(false, seed)
        .iter()
        .map(|c| Run(PreTrace::from_config(&net, c)))
        .collect();
    out.sort_by(|a, b| a.labels.cmp(&b.labels));
    Ok(out)
}

/// Causal order of `ρ`, from the positions of the consumed prefixes.
pub fn causal_order(t: &Term, rho: &PreTrace) -> Result<Poset> {
    let net = Net::new(&elaborate(t))?;
    let c = net.replay(&rho.linearization())?;
    let mut steps = net.steps(&c);
    steps.sort_by_key(|&s| net.label(s));
    Ok(net.causal_order(&steps))
}

/// Causal order of `ρ` as the intersection of the precedence relations of
/// all valid orderings of its labels. Factorial; meant for cross-checking
/// [`causal_order`].
pub fn causal_order_by_linearizations(t: &Term, rho: &PreTrace) -> Result<Poset> {
    let t = elaborate(t);
    let n = rho.len();
    let mut before = vec![vec![true; n]; n];
    let mut any = false;
    for perm in (0..n).permutations(n) {
        let seq: Vec<Label> = perm.iter().map(|&i| rho.labels[i].clone()).collect();
        if reduct(&t, &seq).is_err() {
            continue;
        }
        any = true;
        for (x, &a) in perm.iter().enumerate() {
            for &b in &perm[..x] {
                before[a][b] = false;
            }
        }
    }
    if !any {
        return Err(Error::contract("no ordering of the labels is a valid interaction"));
    }
    let pairs = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && before[a][b])
        .collect::<Vec<_>>();
    Poset::from_relation(n, pairs).ok_or_else(|| Error::contract("cyclic precedence"))
}

/// `s(P)`: the product of the outcomes in active position.
pub fn state(t: &Term, id: SemiringId) -> Result<Value> {
    let t = elaborate(t);
    for v in t.literals() {
        id.check(v)?;
    }
    fn go(t: &Term, id: SemiringId) -> Value {
        match t {
            Term::Lit(k) => k.clone(),
            Term::Prefix(..) => id.one(),
            Term::Place(b) | Term::Nu(_, b) => go(b, id),
            Term::Par(l, r) | Term::ParNi(l, r) => id.mul_unchecked(&go(l, id), &go(r, id)),
            Term::Sum(..) | Term::Scalar(..) | Term::Lin(..) => unreachable!("elaborated"),
        }
    }
    Ok(go(&t, id))
}

/// Run counts grouped by the multiset of non-unit outcomes each run leaves
/// active. One enumeration evaluates under every semiring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    counts: BTreeMap<Vec<Value>, BigUint>,
    literals: BTreeSet<Value>,
}

impl Profile {
    pub fn evaluate(&self, id: SemiringId) -> Result<Value> {
        for v in &self.literals {
            id.check(v)?;
        }
        let mut acc = id.zero();
        for (key, n) in &self.counts {
            let s = key
                .iter()
                .fold(id.one(), |a, v| id.mul_unchecked(&a, v));
            acc = id.add_unchecked(&acc, &id.scale_unchecked(n, &s));
        }
        Ok(acc)
    }

    /// Number of runs with a nonzero state.
    pub fn nonzero_runs(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn counts(&self) -> &BTreeMap<Vec<Value>, BigUint> {
        &self.counts
    }
}

pub fn profile(t: &Term) -> Result<Profile> {
    profile_seeded(t, None)
}

pub fn profile_seeded(t: &Term, seed: Option<u64>) -> Result<Profile> {
    let t = elaborate(t);
    let net = Net::new(&t)?;
    let counts = net.profile(seed).into_iter().collect();
    Ok(Profile {
        counts,
        literals: t.literals().into_iter().cloned().collect(),
    })
}

/// `⟦P⟧ = Σ_{ρ ∈ Runs(P)} s(P/ρ)`.
pub fn outcome(t: &Term, id: SemiringId) -> Result<Value> {
    let t = elaborate(t);
    for v in t.literals() {
        id.check(v)?;
    }
    profile(&t)?.evaluate(id)
}

/// Maximal paths explored directly on terms with [`transitions`], one
/// representative per label set, with their end terms. Exponential; meant
/// for cross-checking the enumeration engine.
pub fn runs_by_paths(t: &Term) -> Result<Vec<(BTreeSet<Label>, Term)>> {
    let t = elaborate(t);
    let mut seen: HashMap<BTreeSet<Label>, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut stack = vec![(BTreeSet::new(), t)];
    while let Some((set, term)) = stack.pop() {
        let next: Vec<(Label, Term)> = transitions(&term)?
            .into_iter()
            .filter(|(l, _)| l.is_internal())
            .collect();
        if next.is_empty() {
            out.push((set, term));
            continue;
        }
        for (l, s) in next {
            let mut set2 = set.clone();
            set2.insert(l);
            if seen.insert(set2.clone(), ()).is_none() {
                stack.push((set2, s));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// [`outcome`] computed from [`runs_by_paths`] and [`state`].
pub fn outcome_by_paths(t: &Term, id: SemiringId) -> Result<Value> {
    let mut acc = id.zero();
    for (_, end) in runs_by_paths(t)? {
        acc = id.add(&acc, &state(&end, id)?)?;
    }
    Ok(acc)
}
