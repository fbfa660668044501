use std::collections::BTreeSet;

use super::{Subject, Trace};
use crate::algebra::SimpleNet;
use crate::error::{Error, Result};
use crate::lts::net::{Binder, Config, Net, Step, VISIBLE};
use crate::runs::PreTrace;
use crate::syntax::{normalize, Action, FreshNames, Name, Polarity, Term};

/// The trace `ρ*` of an exhaustive pre-trace of a simple term: its visible
/// labels under the causal order, and the inactions left active on
/// observable channels.
pub fn extract_trace(s: &Term, rho: &PreTrace) -> Result<Trace> {
    let sn = SimpleNet::new(s)?;
    let c = sn.net.replay(&rho.linearization())?;
    if !sn.is_exhaustive(&c) {
        return Err(Error::contract("the pre-trace is not exhaustive"));
    }
    Ok(trace_of_config(&sn.net, &c))
}

pub(crate) fn trace_of_config(net: &Net, c: &Config) -> Trace {
    let mut steps = net.steps(c);
    steps.sort_by_key(|&s| net.label(s));
    let order = net.causal_order(&steps);
    let visible: Vec<usize> = (0..steps.len())
        .filter(|&k| matches!(steps[k], Step::Visible(_)))
        .collect();
    let event_of_site = |q: usize| {
        visible
            .iter()
            .position(|&k| steps[k] == Step::Visible(q))
            .expect("revealing prefix fired visibly")
    };
    let subject = |site: usize| match net.binder[net.sites[site].subject] {
        Binder::Free => Subject::Name(net.names[net.sites[site].subject].clone()),
        Binder::Prefix(q) => Subject::Event(event_of_site(q)),
        Binder::Nu => unreachable!("hidden subjects are filtered out"),
    };
    let mut pol = Vec::new();
    let mut subj = Vec::new();
    for &k in &visible {
        let Step::Visible(i) = steps[k] else { unreachable!() };
        pol.push(net.sites[i].polarity);
        subj.push(subject(i));
    }
    let ready: BTreeSet<(Polarity, Subject)> = (0..net.sites.len())
        .filter(|&i| {
            net.sites[i].inaction
                && net.is_active(c, i)
                && match net.binder[net.sites[i].subject] {
                    Binder::Free => true,
                    Binder::Nu => false,
                    Binder::Prefix(q) => c[q] == VISIBLE,
                }
        })
        .map(|i| (net.sites[i].polarity, subject(i)))
        .collect();
    Trace::new(pol, subj, order.restrict(&visible), ready)
        .expect("extracted traces are well formed")
        .canonicalize()
}

fn x_name(b: usize, a: usize) -> Name {
    Name::new(&format!("x{}_{}", b + 1, a + 1))
}

fn y_name(a: usize, b: usize) -> Name {
    Name::new(&format!("y{}_{}", a + 1, b + 1))
}

fn z_name(a: usize) -> Name {
    Name::new(&format!("z{}", a + 1))
}

/// A term with a unique exhaustive pre-trace whose trace is `t`.
///
/// Event `a` becomes the linear action `action(a)` on `s(a)` (or on the name
/// `z_b` bound by event `b = s(a)`), binding `z_a`. It is guarded by a
/// linear `x_ba` for every `b < a`, in ascending order of `b`, and releases
/// `~y_ac` for every `c > a`; forwarders `lin y_ac.lin ~x_ac` connect the two.
/// Events on private channels sit under the event that binds their channel.
/// The events are numbered canonically first.
pub fn implement_trace(t: &Trace) -> Term {
    let t = t.canonicalize();
    let n = t.len();
    let mut fresh = FreshNames::new();
    for x in t.names() {
        fresh.reserve(x);
    }
    for a in 0..n {
        fresh.reserve(z_name(a));
        for b in 0..n {
            fresh.reserve(x_name(a, b));
            fresh.reserve(y_name(a, b));
        }
    }
    let mut fresh_act = |subject: Name, polarity: Polarity, bound: Option<Name>| Action {
        subject,
        polarity,
        bound: bound.unwrap_or_else(|| fresh.fresh()),
    };

    fn event(t: &Trace, a: usize, act: &mut dyn FnMut(Name, Polarity, Option<Name>) -> Action) -> Term {
        let n = t.len();
        let mut body = Vec::new();
        for c in 0..n {
            if t.order().less(a, c) {
                body.push(Term::lin(act(y_name(a, c), Polarity::Neg, None), Term::one()));
            }
        }
        for c in 0..n {
            if t.subject(c) == &Subject::Event(a) {
                body.push(event(t, c, act));
            }
        }
        for (p, s) in t.ready() {
            if s == &Subject::Event(a) {
                body.push(Term::prefix(act(z_name(a), *p, None), Term::zero()));
            }
        }
        let channel = match t.subject(a) {
            Subject::Name(x) => x.clone(),
            Subject::Event(b) => z_name(*b),
        };
        let mut term = Term::lin(act(channel, t.polarity(a), Some(z_name(a))), Term::par_ni_all(body));
        for b in (0..n).rev() {
            if t.order().less(b, a) {
                term = Term::lin(act(x_name(b, a), Polarity::Pos, None), term);
            }
        }
        term
    }

    let roots: Vec<Term> = (0..n)
        .filter(|&a| matches!(t.subject(a), Subject::Name(_)))
        .map(|a| event(&t, a, &mut fresh_act))
        .collect();
    let pairs: Vec<(usize, usize)> = t.order().pairs();
    let forwarders: Vec<Term> = pairs
        .iter()
        .map(|&(a, b)| {
            Term::lin(
                fresh_act(y_name(a, b), Polarity::Pos, None),
                Term::lin(fresh_act(x_name(a, b), Polarity::Neg, None), Term::one()),
            )
        })
        .collect();
    let mut core = if forwarders.is_empty() {
        Term::par_ni_all(roots)
    } else {
        Term::par(Term::par_ni_all(roots), Term::par_ni_all(forwarders))
    };
    for &(a, b) in pairs.iter().rev() {
        core = Term::nu(x_name(a, b), Term::nu(y_name(a, b), core));
    }
    let public: Vec<Term> = t
        .ready()
        .iter()
        .filter_map(|(p, s)| match s {
            Subject::Name(x) => Some(Term::prefix(fresh_act(x.clone(), *p, None), Term::zero())),
            Subject::Event(_) => None,
        })
        .collect();
    let term = if public.is_empty() {
        core
    } else {
        Term::par_ni(core, Term::par_ni_all(public))
    };
    normalize(&term)
}
