use super::{normalize, Action, FreshNames, Name, Polarity, Term};
use crate::lts::Position;

/// A core term together with where its linear actions went.
#[derive(Clone, Debug)]
pub struct Elaborated {
    pub term: Term,
    /// Bound names of the witness actions `w.1`, one per linear action, in
    /// pre-order of the source term.
    pub witnesses: Vec<Name>,
}

impl Elaborated {
    /// Positions of the witness actions in the elaborated term.
    pub fn witness_positions(&self) -> Vec<Position> {
        self.witnesses
            .iter()
            .map(|w| {
                crate::lts::binder_position(&self.term, w)
                    .expect("witness action is present in its own encoding")
            })
            .collect()
    }
}

/// Expands the derived forms into core terms:
///
/// * `P (+) Q` becomes `new u. ((u.P | u.Q) | ~u.1)`,
/// * `k * P` becomes `k | P`,
/// * `lin a.P` becomes `new w. (a.(P | w.1) | (w.0 | ~w.1))`,
///
/// with globally fresh `u`, `w` and unused bound names. Core terms come back
/// unchanged.
pub fn elaborate(t: &Term) -> Term {
    elaborate_with_provenance(t).term
}

pub fn elaborate_with_provenance(t: &Term) -> Elaborated {
    let t = normalize(t);
    if t.is_core() {
        return Elaborated {
            term: t,
            witnesses: Vec::new(),
        };
    }
    let mut fresh = FreshNames::for_term(&t);
    let mut witnesses = Vec::new();
    let term = go(&t, &mut fresh, &mut witnesses);
    Elaborated { term, witnesses }
}

fn go(t: &Term, fresh: &mut FreshNames, witnesses: &mut Vec<Name>) -> Term {
    let act = |subject: &Name, polarity, fresh: &mut FreshNames| Action {
        subject: subject.clone(),
        polarity,
        bound: fresh.fresh(),
    };
    match t {
        Term::Lit(v) => Term::Lit(v.clone()),
        Term::Prefix(a, b) => Term::prefix(a.clone(), go(b, fresh, witnesses)),
        Term::Place(b) => Term::place(go(b, fresh, witnesses)),
        Term::Par(l, r) => {
            let l = go(l, fresh, witnesses);
            Term::par(l, go(r, fresh, witnesses))
        }
        Term::ParNi(l, r) => {
            let l = go(l, fresh, witnesses);
            Term::par_ni(l, go(r, fresh, witnesses))
        }
        Term::Nu(x, b) => Term::nu(x.clone(), go(b, fresh, witnesses)),
        Term::Scalar(k, b) => Term::par(Term::Lit(k.clone()), go(b, fresh, witnesses)),
        Term::Sum(l, r) => {
            let u = fresh.fresh();
            let l = go(l, fresh, witnesses);
            let r = go(r, fresh, witnesses);
            let left = Term::prefix(act(&u, Polarity::Pos, fresh), l);
            let right = Term::prefix(act(&u, Polarity::Pos, fresh), r);
            let trigger = Term::prefix(act(&u, Polarity::Neg, fresh), Term::one());
            Term::nu(u, Term::par(Term::par(left, right), trigger))
        }
        Term::Lin(a, b) => {
            let w = fresh.fresh();
            let witness = act(&w, Polarity::Pos, fresh);
            witnesses.push(witness.bound.clone());
            let body = go(b, fresh, witnesses);
            let guarded = Term::prefix(a.clone(), Term::par(body, Term::prefix(witness, Term::one())));
            let refusal = Term::prefix(act(&w, Polarity::Pos, fresh), Term::zero());
            let trigger = Term::prefix(act(&w, Polarity::Neg, fresh), Term::one());
            Term::nu(w, Term::par(guarded, Term::par(refusal, trigger)))
        }
    }
}
