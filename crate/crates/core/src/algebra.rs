//! Simple terms, their exhaustive pre-traces, and the affine expansion of
//! arbitrary terms into combinations of simple terms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lts::net::{Config, Explore, Net};
use crate::runs::PreTrace;
use crate::semiring::{SemiringId, Value};
use crate::syntax::{elaborate_with_provenance, normalize, Term};

/// Membership in the grammar `1 | α.0 | lin α.P | P|Q | P||Q | new x.P`.
pub fn is_simple(t: &Term) -> bool {
    match t {
        Term::Lit(v) => v.is_one(),
        Term::Prefix(_, b) => matches!(&**b, Term::Lit(v) if v.is_zero()),
        Term::Lin(_, b) | Term::Nu(_, b) => is_simple(b),
        Term::Par(l, r) | Term::ParNi(l, r) => is_simple(l) && is_simple(r),
        Term::Place(_) | Term::Sum(..) | Term::Scalar(..) => false,
    }
}

/// A finite map from terms to coefficients, without zero coefficients.
pub type Expansion = BTreeMap<Term, Value>;

/// Writes `t` as `Σ kᵢ·Sᵢ` with every `Sᵢ` simple, using
/// `α.P ≃ lin α.P (+) α.0` and the linearity of every other construct.
pub fn affine_expand(t: &Term, id: SemiringId) -> Result<Expansion> {
    let t = normalize(t);
    for v in t.literals() {
        id.check(v)?;
    }
    Ok(expand(&t, id))
}

fn single(t: Term, id: SemiringId) -> Expansion {
    BTreeMap::from([(t, id.one())])
}

fn insert(out: &mut Expansion, t: Term, k: Value, id: SemiringId) {
    let v = match out.remove(&t) {
        Some(old) => id.add_unchecked(&old, &k),
        None => k,
    };
    if !v.is_zero() {
        out.insert(t, v);
    }
}

fn map(e: Expansion, id: SemiringId, f: impl Fn(Term) -> Term) -> Expansion {
    let mut out = Expansion::new();
    for (t, k) in e {
        insert(&mut out, f(t), k, id);
    }
    out
}

fn product(a: &Expansion, b: &Expansion, id: SemiringId, f: impl Fn(Term, Term) -> Term) -> Expansion {
    let mut out = Expansion::new();
    for (s, k) in a {
        for (t, l) in b {
            insert(&mut out, f(s.clone(), t.clone()), id.mul_unchecked(k, l), id);
        }
    }
    out
}

fn expand(t: &Term, id: SemiringId) -> Expansion {
    if is_simple(t) {
        return single(t.clone(), id);
    }
    match t {
        Term::Lit(k) => {
            let mut out = Expansion::new();
            insert(&mut out, Term::one(), k.clone(), id);
            out
        }
        Term::Prefix(a, b) => {
            let mut out = map(expand(b, id), id, |s| Term::lin(a.clone(), s));
            insert(&mut out, Term::prefix(a.clone(), Term::zero()), id.one(), id);
            out
        }
        Term::Lin(a, b) => map(expand(b, id), id, |s| Term::lin(a.clone(), s)),
        Term::Place(b) => expand(b, id),
        Term::Nu(x, b) => map(expand(b, id), id, |s| Term::nu(x.clone(), s)),
        Term::Par(l, r) => product(&expand(l, id), &expand(r, id), id, Term::par),
        Term::ParNi(l, r) => product(&expand(l, id), &expand(r, id), id, Term::par_ni),
        Term::Sum(l, r) => {
            let mut out = expand(l, id);
            for (s, k) in expand(r, id) {
                insert(&mut out, s, k, id);
            }
            out
        }
        Term::Scalar(k, b) => {
            let mut out = Expansion::new();
            for (s, l) in expand(b, id) {
                insert(&mut out, s, id.mul_unchecked(k, &l), id);
            }
            out
        }
    }
}

/// The enumeration state of a simple term: its elaborated net and the
/// prefixes that witness its linear actions.
pub(crate) struct SimpleNet {
    pub net: Net,
    pub witnesses: Vec<usize>,
}

impl SimpleNet {
    pub fn new(s: &Term) -> Result<SimpleNet> {
        if !is_simple(s) {
            return Err(Error::contract(format!("`{s}` is not a simple term")));
        }
        let e = elaborate_with_provenance(s);
        let net = Net::new(&e.term)?;
        let witnesses = e
            .witness_positions()
            .iter()
            .map(|p| {
                net.sites
                    .iter()
                    .position(|site| &site.position == p)
                    .expect("witness prefix is a site")
            })
            .collect();
        Ok(SimpleNet { net, witnesses })
    }

    /// Two active inactions facing each other across a `|`.
    pub fn facing_inactions(&self, c: &Config) -> bool {
        let net = &self.net;
        let idle: Vec<usize> = (0..net.sites.len())
            .filter(|&i| net.sites[i].inaction && net.is_active(c, i))
            .collect();
        idle.iter()
            .enumerate()
            .any(|(x, &i)| idle[x + 1..].iter().any(|&j| net.can_meet(c, i, j)))
    }

    pub fn is_exhaustive(&self, c: &Config) -> bool {
        self.witnesses.iter().all(|&w| self.net.fired(c, w))
            && !(0..self.net.sites.len()).any(|i| self.net.sites[i].inaction && self.net.fired(c, i))
            && !self.facing_inactions(c)
    }

    /// Configurations of the exhaustive pre-traces. Consuming an inaction and
    /// facing inactions both persist once they happen, so they prune the
    /// search.
    pub fn exhaustive(&self) -> Vec<Config> {
        let step_ok = |net: &Net, _: &Config, s| {
            Net::step_sites(s).iter().all(|&i| !net.sites[i].inaction)
        };
        let config_ok = |_: &Net, c: &Config| !self.facing_inactions(c);
        let e = self.net.explore(&Explore {
            visible: true,
            step_ok: Some(&step_ok),
            config_ok: Some(&config_ok),
            terminal_only: true,
            ..Explore::default()
        });
        let mut out: Vec<Config> = e
            .configs
            .into_iter()
            .filter(|c| self.is_exhaustive(c))
            .collect();
        out.sort();
        out
    }
}

/// Pre-traces of a simple term that trigger every linear action, consume no
/// inaction and leave no dual inactions facing each other across a `|`.
pub fn exhaustive_pretraces(s: &Term) -> Result<Vec<PreTrace>> {
    let sn = SimpleNet::new(s)?;
    let mut out: Vec<PreTrace> = sn
        .exhaustive()
        .iter()
        .map(|c| PreTrace::from_config(&sn.net, c))
        .collect();
    out.sort_by(|a, b| a.labels().cmp(b.labels()));
    Ok(out)
}
