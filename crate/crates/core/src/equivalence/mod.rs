//! Observational equivalence: trace normal forms (sufficient) and context
//! batteries (necessary, with counterexamples).

pub mod classic;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde_json::json;

use crate::error::Result;
use crate::runs::profile;
use crate::semiring::{SemiringId, Value};
use crate::syntax::{Action, Name, Polarity, Term};
use crate::traces::{decompose, implement_trace, LinearCombination};

pub const DEFAULT_DEPTH: usize = 2;

/// What a context observes of an outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observation {
    /// The outcome itself.
    Exact,
    /// Whether the outcome is `ω`.
    Success,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Equivalent,
    Distinguished {
        context: Term,
        left: Value,
        right: Value,
    },
    Unknown,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub left: LinearCombination,
    pub right: LinearCombination,
    /// Contexts evaluated before the verdict was reached.
    pub contexts_tried: usize,
    pub battery_size: usize,
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        self.status == Status::Equivalent
    }

    pub fn is_distinguished(&self) -> bool {
        matches!(self.status, Status::Distinguished { .. })
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Equivalent => 0,
            Status::Distinguished { .. } => 1,
            Status::Unknown => 2,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let status = match &self.status {
            Status::Equivalent => json!({"verdict": "EQUIVALENT"}),
            Status::Distinguished {
                context,
                left,
                right,
            } => json!({
                "verdict": "DISTINGUISHED",
                "context": context.to_string(),
                "outcomes": [left.to_string(), right.to_string()],
            }),
            Status::Unknown => json!({"verdict": "UNKNOWN"}),
        };
        let mut v = status;
        v["normal_forms"] = json!([self.left.to_json(), self.right.to_json()]);
        v["contexts_tried"] = json!(self.contexts_tried);
        v["battery_size"] = json!(self.battery_size);
        v
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Equivalent => writeln!(f, "EQUIVALENT")?,
            Status::Distinguished {
                context,
                left,
                right,
            } => {
                writeln!(f, "DISTINGUISHED")?;
                writeln!(f, "context: {context}")?;
                writeln!(f, "outcomes: {left} vs {right}")?;
            }
            Status::Unknown => writeln!(f, "UNKNOWN")?,
        }
        writeln!(f, "left:  {}", self.left)?;
        writeln!(f, "right: {}", self.right)?;
        write!(
            f,
            "contexts: {} of {}",
            self.contexts_tried, self.battery_size
        )
    }
}

#[derive(Clone, Debug)]
pub struct EquivOptions {
    pub semiring: SemiringId,
    pub depth: usize,
    /// Names the battery acts on; the free names of both terms by default.
    pub names: Option<BTreeSet<Name>>,
    pub observation: Observation,
}

impl EquivOptions {
    pub fn new(semiring: SemiringId) -> Self {
        EquivOptions {
            semiring,
            depth: DEFAULT_DEPTH,
            names: None,
            observation: Observation::Exact,
        }
    }
}

fn threads(scope: &[Name], depth: usize, level: usize) -> Vec<Term> {
    let mut out = vec![Term::one()];
    let pols = [Polarity::Pos, Polarity::Neg];
    for u in scope {
        for p in pols {
            out.push(Term::prefix(
                Action::new(u.clone(), p, Name::new(&format!("x{level}"))),
                Term::zero(),
            ));
        }
    }
    if depth == 0 {
        return out;
    }
    let x = Name::new(&format!("y{level}"));
    let mut inner = scope.to_vec();
    inner.push(x.clone());
    let bodies = threads(&inner, depth - 1, level + 1);
    for u in scope {
        for p in pols {
            for b in &bodies {
                out.push(Term::lin(Action::new(u.clone(), p, x.clone()), b.clone()));
            }
        }
    }
    out
}

/// Simple contexts over `names`: every thread of linear actions with at
/// most `depth` nested prefixes (ending in `1` or an inaction), then every
/// `|`-pair of threads of depth `depth - 1` other than `1`. Deduplicated up
/// to renaming of bound names, in a fixed order.
pub fn enumerate_contexts(names: &BTreeSet<Name>, depth: usize) -> Vec<Term> {
    let scope: Vec<Name> = names.iter().cloned().collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |t: Term, out: &mut Vec<Term>| {
        if seen.insert(t.alpha_canonical()) {
            out.push(t);
        }
    };
    for t in threads(&scope, depth, 1) {
        push(t, &mut out);
    }
    if depth > 0 {
        let small: Vec<Term> = threads(&scope, depth - 1, 1)
            .into_iter()
            .filter(|t| t != &Term::one())
            .collect();
        for (i, a) in small.iter().enumerate() {
            for b in &small[i..] {
                push(Term::par(a.clone(), b.clone()), &mut out);
            }
        }
    }
    out
}

fn observe(v: Value, obs: Observation) -> Value {
    match obs {
        Observation::Exact => v,
        Observation::Success => {
            if v.is_omega() {
                Value::Omega
            } else {
                Value::zero()
            }
        }
    }
}

/// `⟦P | R⟧` for every context, in order.
pub fn battery_outcomes(p: &Term, contexts: &[Term], id: SemiringId) -> Result<Vec<Value>> {
    contexts
        .par_iter()
        .map(|r| profile(&Term::par(p.clone(), r.clone()))?.evaluate(id))
        .collect()
}

/// Three-valued equivalence check: equal trace normal forms give
/// `Equivalent`; otherwise the first context of the battery (followed by
/// the implementations of the duals of the normal-form traces) on which the
/// outcomes differ gives `Distinguished`; otherwise `Unknown`.
pub fn check_equiv_with(p: &Term, q: &Term, opts: &EquivOptions) -> Result<Verdict> {
    let id = opts.semiring;
    let left = decompose(p, id)?;
    let right = decompose(q, id)?;
    let names = opts.names.clone().unwrap_or_else(|| {
        let mut n = p.free_names();
        n.extend(q.free_names());
        n
    });
    let mut contexts = enumerate_contexts(&names, opts.depth);
    let mut seen: HashSet<Term> = contexts.iter().map(Term::alpha_canonical).collect();
    for t in left.traces().chain(right.traces()) {
        let c = implement_trace(&t.dual());
        if seen.insert(c.alpha_canonical()) {
            contexts.push(c);
        }
    }
    let battery_size = contexts.len();
    if left == right {
        return Ok(Verdict {
            status: Status::Equivalent,
            left,
            right,
            contexts_tried: 0,
            battery_size,
        });
    }
    let found = contexts
        .par_iter()
        .enumerate()
        .map(|(i, r)| -> Result<Option<(usize, Value, Value)>> {
            let a = observe(profile(&Term::par(p.clone(), r.clone()))?.evaluate(id)?, opts.observation);
            let b = observe(profile(&Term::par(q.clone(), r.clone()))?.evaluate(id)?, opts.observation);
            Ok((a != b).then_some((i, a, b)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    let (status, tried) = match found {
        Some((i, l, r)) => (
            Status::Distinguished {
                context: contexts[i].clone(),
                left: l,
                right: r,
            },
            i + 1,
        ),
        None => (Status::Unknown, battery_size),
    };
    Ok(Verdict {
        status,
        left,
        right,
        contexts_tried: tried,
        battery_size,
    })
}

pub fn check_equiv(p: &Term, q: &Term, id: SemiringId, depth: usize) -> Result<Verdict> {
    check_equiv_with(
        p,
        q,
        &EquivOptions {
            depth,
            ..EquivOptions::new(id)
        },
    )
}

/// Equivalence under may testing: success is an `ω` outcome in the may
/// semiring.
pub fn may_equiv(p: &Term, q: &Term, depth: usize) -> Result<Verdict> {
    check_equiv_with(
        p,
        q,
        &EquivOptions {
            depth,
            observation: Observation::Success,
            ..EquivOptions::new(SemiringId::May)
        },
    )
}

/// Equivalence under must testing: success is an `ω` outcome in the must
/// semiring.
pub fn must_equiv(p: &Term, q: &Term, depth: usize) -> Result<Verdict> {
    check_equiv_with(
        p,
        q,
        &EquivOptions {
            depth,
            observation: Observation::Success,
            ..EquivOptions::new(SemiringId::Must)
        },
    )
}
