//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qpi::algebra::{exhaustive_pretraces, is_simple};
use qpi::equivalence::classic;
use qpi::equivalence::enumerate_contexts;
use qpi::gen::{random_simple, random_term, random_trace, TermConfig};
use qpi::lts::transitions;
use qpi::runs::{homotopic, homotopic_by_swaps, independent, outcome_by_paths, profile};
use qpi::traces::{extract_trace, implement_trace, sync_count, Subject};
use qpi::{elaborate, parse_term, Action, Label, Name, Polarity, SemiringId, Term, Trace, Value};

type Check = Result<String, String>;

fn p(s: &str) -> Term {
    parse_term(s).expect("fixed term parses")
}

fn names(ns: &[&str]) -> Vec<Name> {
    ns.iter().map(|n| Name::new(n)).collect()
}

fn pool(id: SemiringId) -> Vec<Value> {
    match id {
        SemiringId::Nat => (0..4).map(Value::int).collect(),
        SemiringId::Bool01 => vec![Value::zero(), Value::one()],
        SemiringId::May | SemiringId::Must => vec![Value::zero(), Value::one(), Value::Omega],
    }
}

fn out(t: &Term, id: SemiringId) -> Value {
    profile(t)
        .and_then(|pr| pr.evaluate(id))
        .unwrap_or_else(|e| panic!("outcome of {t}: {e}"))
}

fn in_context(t: &Term, r: &Term, id: SemiringId) -> Value {
    out(&Term::par(t.clone(), r.clone()), id)
}

/// The first context of `battery` telling `l` and `r` apart.
fn separate(l: &Term, r: &Term, battery: &[Term], id: SemiringId) -> Option<(Term, Value, Value)> {
    battery.par_iter().find_map_first(|c| {
        let a = in_context(l, c, id);
        let b = in_context(r, c, id);
        (a != b).then(|| (c.clone(), a, b))
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn motivating() -> Check {
    let ctx = p("~a.1 | ~b.1");
    let par = Term::par(p("a.1 | b.1"), ctx.clone());
    let sum = Term::par(p("a.b.1 (+) b.a.1"), ctx);
    let nat = SemiringId::Nat;
    let (a, b) = (outcome_by_paths(&par, nat).unwrap(), outcome_by_paths(&sum, nat).unwrap());
    ensure(a == Value::int(1) && b == Value::int(2), || format!("oracle gave {a} and {b}"))?;
    let (c, d) = (out(&par, nat), out(&sum, nat));
    ensure(a == c && b == d, || format!("engine gave {c} and {d}"))?;
    Ok(format!("{a} vs {b}"))
}

fn label_sequences(t: &Term, depth: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::new(), t.clone())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (seq, s) in frontier {
            for (l, s2) in transitions(&s).unwrap() {
                let mut seq2: Vec<Label> = seq.clone();
                seq2.push(l);
                out.push(seq2.clone());
                next.push((seq2, s2));
            }
        }
        frontier = next;
    }
    out
}

fn diamond() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cfg = TermConfig::new(&["a", "b"], &pool(SemiringId::Nat), 5);
    let (mut squares, mut groups) = (0usize, 0usize);
    for _ in 0..500 {
        let mut s = elaborate(&random_term(&mut rng, &cfg));
        for _ in 0..rng.gen_range(0..3) {
            let ts = transitions(&s).unwrap();
            let Some((_, next)) = ts.choose(&mut rng) else { break };
            s = next.clone();
        }
        let ts = transitions(&s).unwrap();
        for (i, (l1, s1)) in ts.iter().enumerate() {
            for (l2, s2) in &ts[i + 1..] {
                if !independent(l1, l2) {
                    continue;
                }
                let after = |x: &Term, l: &Label| {
                    transitions(x).unwrap().into_iter().find(|(m, _)| m == l).map(|(_, y)| y)
                };
                let s12 = after(s1, l2).ok_or_else(|| format!("{l2} lost after {l1} in {s}"))?;
                let s21 = after(s2, l1).ok_or_else(|| format!("{l1} lost after {l2} in {s}"))?;
                ensure(s12.alpha_eq(&s21), || format!("{s}: {l1} {l2} gives {s12} and {s21}"))?;
                squares += 1;
            }
        }
        let mut by_set: BTreeMap<BTreeSet<Label>, Vec<Vec<Label>>> = BTreeMap::new();
        for seq in label_sequences(&s, 3) {
            by_set.entry(seq.iter().cloned().collect()).or_default().push(seq);
        }
        for seqs in by_set.values().filter(|v| v.len() > 1) {
            for q in &seqs[1..] {
                ensure(homotopic_by_swaps(&seqs[0], q), || {
                    format!("{s}: {:?} and {:?} are not permutations by swaps", seqs[0], q)
                })?;
                ensure(homotopic(&seqs[0], q, &s).unwrap(), || format!("{s}: homotopy disagrees"))?;
            }
            groups += 1;
        }
    }
    Ok(format!("500 states, {squares} squares, {groups} label sets with several orders"))
}

struct Gen<'a> {
    rng: &'a mut ChaCha8Rng,
    lits: Vec<Value>,
}

impl Gen<'_> {
    fn term(&mut self, over: &[&str], prefixes: usize) -> Term {
        let cfg = TermConfig::new(over, &self.lits, prefixes);
        random_term(self.rng, &cfg)
    }

    fn lit(&mut self) -> Value {
        self.lits.choose(self.rng).unwrap().clone()
    }
}

fn basic_laws(g: &mut Gen) -> Vec<(&'static str, Term, Term)> {
    let ab = ["a", "b"];
    let (pp, q, r) = (g.term(&ab, 4), g.term(&ab, 4), g.term(&ab, 4));
    let mut laws = vec![
        ("commutativity |", Term::par(pp.clone(), q.clone()), Term::par(q.clone(), pp.clone())),
        ("commutativity ||", Term::par_ni(pp.clone(), q.clone()), Term::par_ni(q.clone(), pp.clone())),
        (
            "associativity |",
            Term::par(Term::par(pp.clone(), q.clone()), r.clone()),
            Term::par(pp.clone(), Term::par(q.clone(), r.clone())),
        ),
        (
            "associativity ||",
            Term::par_ni(Term::par_ni(pp.clone(), q.clone()), r.clone()),
            Term::par_ni(pp.clone(), Term::par_ni(q.clone(), r.clone())),
        ),
        ("neutrality |", Term::par(pp.clone(), Term::one()), pp.clone()),
        ("neutrality ||", Term::par_ni(pp.clone(), Term::one()), pp.clone()),
        ("place-holder", Term::place(pp.clone()), pp.clone()),
    ];
    let body = g.term(&["a", "b", "v", "z"], 4);
    laws.push((
        "scope commutation",
        Term::nu("v", Term::nu("z", body.clone())),
        Term::nu("z", Term::nu("v", body)),
    ));
    let qv = g.term(&["a", "b", "v"], 4);
    laws.push((
        "scope extrusion",
        Term::nu("v", Term::par(pp.clone(), qv.clone())),
        Term::par(pp.clone(), Term::nu("v", qv)),
    ));
    let k = g.lit();
    laws.push(("scope neutrality", Term::nu("v", Term::lit(k.clone())), Term::lit(k)));
    let (qa, rb) = (g.term(&["a"], 4), g.term(&["b"], 4));
    laws.push((
        "non-interaction",
        Term::par(Term::par_ni(pp.clone(), qa.clone()), rb.clone()),
        Term::par_ni(Term::par(pp.clone(), rb), qa),
    ));
    let pol = if g.rng.gen_bool(0.5) { Polarity::Pos } else { Polarity::Neg };
    let body = g.term(&["a", "b", "u", "x"], 4);
    laws.push(("inaction", Term::nu("u", Term::prefix(Action::new("u", pol, "x"), body)), Term::one()));
    let (px, qy) = (g.term(&["a", "b", "u", "x"], 3), g.term(&["a", "b", "u", "y"], 3));
    laws.push((
        "non-interference",
        Term::nu(
            "u",
            Term::par(
                Term::prefix(Action::new("u", Polarity::Pos, "x"), px.clone()),
                Term::prefix(Action::new("u", Polarity::Neg, "y"), qy.clone()),
            ),
        ),
        Term::nu("u", Term::nu("x", Term::par(px, qy.substitute(&Name::new("y"), &Name::new("x"))))),
    ));
    laws
}

fn basic() -> Check {
    let battery = enumerate_contexts(&names(&["a", "b"]).into_iter().collect(), 2);
    let mut checked = 0;
    for (s, id) in SemiringId::ALL.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(30 + s as u64);
        let mut g = Gen { rng: &mut rng, lits: pool(id) };
        for (law, l, r) in (0..3).flat_map(|_| basic_laws(&mut g)) {
            if let Some((c, a, b)) = separate(&l, &r, &battery, id) {
                return Err(format!("{law} over {}: {l} vs {r} in {c}: {a} vs {b}", id.name()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} law instances x {} contexts", battery.len()))
}

fn module_laws(g: &mut Gen, id: SemiringId) -> Vec<(&'static str, Term, Term)> {
    let ab = ["a", "b"];
    let (pp, q, r) = (g.term(&ab, 3), g.term(&ab, 3), g.term(&ab, 3));
    let (k1, k2) = (g.lit(), g.lit());
    let sum = Term::sum;
    let sc = Term::scalar;
    let pv = g.term(&["a", "b", "v"], 3);
    let qv = g.term(&["a", "b", "v"], 3);
    vec![
        ("commutativity", sum(pp.clone(), q.clone()), sum(q.clone(), pp.clone())),
        (
            "associativity",
            sum(sum(pp.clone(), q.clone()), r.clone()),
            sum(pp.clone(), sum(q.clone(), r.clone())),
        ),
        ("neutrality", sum(pp.clone(), Term::zero()), pp.clone()),
        ("unit action", sc(Value::one(), pp.clone()), pp.clone()),
        ("zero action", sc(Value::zero(), pp.clone()), Term::zero()),
        (
            "product action",
            sc(id.mul(&k1, &k2).unwrap(), pp.clone()),
            sc(k1.clone(), sc(k2.clone(), pp.clone())),
        ),
        (
            "sum action",
            sc(id.add(&k1, &k2).unwrap(), pp.clone()),
            sum(sc(k1.clone(), pp.clone()), sc(k2.clone(), pp.clone())),
        ),
        (
            "scalar distributivity",
            sc(k1.clone(), sum(pp.clone(), q.clone())),
            sum(sc(k1.clone(), pp.clone()), sc(k1.clone(), q.clone())),
        ),
        (
            "bilinearity | (+)",
            Term::par(pp.clone(), sum(q.clone(), r.clone())),
            sum(Term::par(pp.clone(), q.clone()), Term::par(pp.clone(), r.clone())),
        ),
        (
            "bilinearity | *",
            Term::par(pp.clone(), sc(k1.clone(), q.clone())),
            sc(k1.clone(), Term::par(pp.clone(), q.clone())),
        ),
        (
            "bilinearity || (+)",
            Term::par_ni(pp.clone(), sum(q.clone(), r.clone())),
            sum(Term::par_ni(pp.clone(), q.clone()), Term::par_ni(pp.clone(), r.clone())),
        ),
        (
            "bilinearity || *",
            Term::par_ni(pp.clone(), sc(k1.clone(), q.clone())),
            sc(k1.clone(), Term::par_ni(pp.clone(), q)),
        ),
        (
            "hiding (+)",
            Term::nu("v", sum(pv.clone(), qv.clone())),
            sum(Term::nu("v", pv.clone()), Term::nu("v", qv)),
        ),
        ("hiding *", Term::nu("v", sc(k1.clone(), pv.clone())), sc(k1, Term::nu("v", pv))),
    ]
}

fn module() -> Check {
    let mut total = 0;
    for (s, id) in SemiringId::ALL.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(40 + s as u64);
        for _ in 0..200 {
            let mut g = Gen { rng: &mut rng, lits: pool(id) };
            let (pp, q, r, k) = (g.term(&["a", "b"], 3), g.term(&["a", "b"], 3), g.term(&["a", "b"], 3), g.lit());
            let lhs = in_context(&Term::sum(pp.clone(), q.clone()), &r, id);
            let rhs = id.add(&in_context(&pp, &r, id), &in_context(&q, &r, id)).unwrap();
            ensure(lhs == rhs, || format!("{}: ({pp} (+) {q}) | {r}: {lhs} vs {rhs}", id.name()))?;
            let lhs = in_context(&Term::scalar(k.clone(), pp.clone()), &r, id);
            let rhs = id.mul(&k, &in_context(&pp, &r, id)).unwrap();
            ensure(lhs == rhs, || format!("{}: ({k} * {pp}) | {r}: {lhs} vs {rhs}", id.name()))?;
            let ctx = g.term(&["a", "b"], 3);
            for (law, l, rr) in module_laws(&mut g, id) {
                let (a, b) = (in_context(&l, &ctx, id), in_context(&rr, &ctx, id));
                ensure(a == b, || format!("{law} over {}: {l} vs {rr} in {ctx}: {a} vs {b}", id.name()))?;
            }
            total += 1;
        }
    }
    Ok(format!("{total} instances over 4 semirings"))
}

fn affine() -> Check {
    let mut n = 0;
    for (s, id) in SemiringId::ALL.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(50 + s as u64);
        for _ in 0..200 {
            let mut g = Gen { rng: &mut rng, lits: pool(id) };
            let subject = ["a", "b"].choose(g.rng).unwrap().to_string();
            let pol = if g.rng.gen_bool(0.5) { Polarity::Pos } else { Polarity::Neg };
            let act = Action::new(subject.as_str(), pol, "x");
            let body = g.term(&["a", "b", "x"], 3);
            let q = g.term(&["a", "b"], 4);
            let lhs = in_context(&Term::prefix(act.clone(), body.clone()), &q, id);
            let rhs = id
                .add(
                    &in_context(&Term::lin(act.clone(), body.clone()), &q, id),
                    &in_context(&Term::prefix(act, Term::zero()), &q, id),
                )
                .unwrap();
            ensure(lhs == rhs, || format!("{}: {body} in {q}: {lhs} vs {rhs}", id.name()))?;
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

fn round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let ns = names(&["a", "b"]);
    let (mut bound, mut ready) = (0, 0);
    for _ in 0..200 {
        let t = random_trace(&mut rng, &ns, 4);
        bound += usize::from((0..t.len()).any(|e| matches!(t.subject(e), Subject::Event(_))));
        ready += usize::from(!t.ready().is_empty());
        let i = implement_trace(&t);
        ensure(is_simple(&i), || format!("{t}: {i} is not simple"))?;
        let rho = exhaustive_pretraces(&i).unwrap();
        ensure(rho.len() == 1, || format!("{t}: {} exhaustive pre-traces", rho.len()))?;
        let back = extract_trace(&i, &rho[0]).unwrap();
        ensure(back == t.canonicalize(), || format!("{t} came back as {back}"))?;
    }
    ensure(bound > 0 && ready > 0, || "no bound subjects or ready sets generated".into())?;
    Ok(format!("200 traces, {bound} with bound subjects, {ready} with inactions"))
}

/// A trace over the same events with dual polarities, a random order
/// compatible with subjects, and a random part of the dual inactions.
fn partner(rng: &mut ChaCha8Rng, t: &Trace) -> Trace {
    let n = t.len();
    let events: Vec<(Polarity, Subject)> = (0..n).map(|e| (t.polarity(e).dual(), t.subject(e).clone())).collect();
    let mut order = Vec::new();
    let ext = t.order().linear_extensions().choose(rng).unwrap().clone();
    for (i, &a) in ext.iter().enumerate() {
        for &b in &ext[i + 1..] {
            if t.subject(b) == &Subject::Event(a) || rng.gen_bool(0.3) {
                order.push((a, b));
            }
        }
    }
    let ready: Vec<(Polarity, Subject)> = t
        .ready()
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|(p, s)| (p.dual(), s.clone()))
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Trace::from_parts(events, order, ready).unwrap().permute(&perm)
}

fn sync() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ns = names(&["a", "b"]);
    let mut nonzero = 0;
    for i in 0..200 {
        let t = random_trace(&mut rng, &ns, 3);
        let u = if i % 2 == 0 { partner(&mut rng, &t) } else { random_trace(&mut rng, &ns, 3) };
        let expected = sync_count(&t, &u);
        let got = out(&Term::par(implement_trace(&t), implement_trace(&u)), SemiringId::Nat);
        ensure(got == Value::int(expected), || format!("{t} and {u}: {expected} vs {got}"))?;
        nonzero += usize::from(expected > 0);
    }
    Ok(format!("200 pairs, {nonzero} with synchronizations"))
}

fn simple_decomposition() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ns = names(&["a", "b"]);
    let nat_cfg = TermConfig::new(&["a", "b"], &pool(SemiringId::Nat), 3);
    let omega_cfg = TermConfig::new(&["a", "b"], &pool(SemiringId::May), 3);
    for _ in 0..100 {
        let s = random_simple(&mut rng, &ns, 4);
        let parts: Vec<Term> = exhaustive_pretraces(&s)
            .unwrap()
            .iter()
            .map(|rho| implement_trace(&extract_trace(&s, rho).unwrap()))
            .collect();
        for k in 0..20 {
            let (q, ids) = if k % 2 == 0 {
                (random_term(&mut rng, &nat_cfg), vec![SemiringId::Nat, SemiringId::Bool01])
            } else {
                (random_term(&mut rng, &omega_cfg), vec![SemiringId::May, SemiringId::Must])
            };
            for id in ids {
                if id == SemiringId::Bool01 && q.literals().iter().any(|v| v.as_u64().is_none_or(|n| n > 1)) {
                    continue;
                }
                let direct = in_context(&s, &q, id);
                let sum = parts
                    .iter()
                    .fold(Value::zero(), |acc, i| id.add(&acc, &in_context(i, &q, id)).unwrap());
                ensure(direct == sum, || format!("{}: {s} in {q}: {direct} vs {sum}", id.name()))?;
            }
        }
    }
    Ok("100 simple terms x 20 contexts".into())
}

fn total_orders() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ns = names(&["a", "b"]);
    let base = enumerate_contexts(&ns.iter().cloned().collect(), 2);
    let id = SemiringId::Bool01;
    let mut nat_differs = 0;
    for _ in 0..100 {
        let t = random_trace(&mut rng, &ns, 4);
        let totals = t.total_orderings();
        let lhs = implement_trace(&t);
        let rhs = totals.iter().map(implement_trace).reduce(Term::sum).unwrap();
        let mut battery = base.clone();
        battery.extend(totals.iter().map(|u| implement_trace(&u.dual())));
        battery.push(implement_trace(&t.dual()));
        let rows: Vec<(Option<String>, bool)> = battery
            .par_iter()
            .map(|c| {
                let l = profile(&Term::par(lhs.clone(), c.clone())).unwrap();
                let r = profile(&Term::par(rhs.clone(), c.clone())).unwrap();
                let (a, b) = (l.evaluate(id).unwrap(), r.evaluate(id).unwrap());
                let nat = SemiringId::Nat;
                let bad = (a != b).then(|| format!("{t} in {c}: {a} vs {b}"));
                (bad, l.evaluate(nat).unwrap() != r.evaluate(nat).unwrap())
            })
            .collect();
        if let Some(why) = rows.iter().find_map(|r| r.0.clone()) {
            return Err(why);
        }
        nat_differs += usize::from(rows.iter().any(|r| r.1));
    }
    Ok(format!("100 traces, {nat_differs} told apart over nat"))
}

fn success_leaves(t: &Term) -> Term {
    match t {
        Term::Lit(v) if v.is_one() => Term::omega(),
        Term::Lit(_) => t.clone(),
        Term::Prefix(a, b) => Term::prefix(a.clone(), success_leaves(b)),
        Term::Lin(a, b) => Term::lin(a.clone(), success_leaves(b)),
        Term::Place(b) => Term::place(success_leaves(b)),
        Term::Nu(x, b) => Term::nu(x.clone(), success_leaves(b)),
        Term::Par(l, r) => Term::par(success_leaves(l), success_leaves(r)),
        Term::ParNi(l, r) => Term::par_ni(success_leaves(l), success_leaves(r)),
        Term::Sum(l, r) => Term::sum(success_leaves(l), success_leaves(r)),
        Term::Scalar(k, b) => Term::scalar(k.clone(), success_leaves(b)),
    }
}

fn may_must() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cfg = TermConfig::new(&["a", "b"], &pool(SemiringId::May), 4);
    let mut battery = enumerate_contexts(&names(&["a", "b"]).into_iter().collect(), 2);
    let with_success: Vec<Term> = battery.iter().map(success_leaves).collect();
    battery.extend(with_success);
    let corpus: Vec<Term> = (0..100).map(|_| random_term(&mut rng, &cfg)).collect();
    let (mut may, mut must) = (0usize, 0usize);
    for t in &corpus {
        let rows: Vec<(bool, bool)> = battery
            .par_iter()
            .map(|r| -> Result<(bool, bool), String> {
                let pr = profile(&Term::par(t.clone(), r.clone())).unwrap();
                let q_may = pr.evaluate(SemiringId::May).unwrap().is_omega();
                let q_must = pr.evaluate(SemiringId::Must).unwrap().is_omega();
                let ends = classic::endings(&Term::par(t.clone(), r.clone())).unwrap();
                let (c_may, c_must) = (classic::may_succeed(&ends), classic::must_succeed(&ends));
                ensure(q_may == c_may, || format!("may: {t} in {r}: {q_may} vs {c_may}"))?;
                ensure(q_must == c_must, || format!("must: {t} in {r}: {q_must} vs {c_must}"))?;
                Ok((q_may, q_must))
            })
            .collect::<Result<_, _>>()?;
        may += rows.iter().filter(|r| r.0).count();
        must += rows.iter().filter(|r| r.1).count();
    }
    Ok(format!(
        "100 processes x {} contexts, {may} may and {must} must successes",
        battery.len()
    ))
}

fn axioms_on(id: SemiringId, triples: impl Iterator<Item = (Value, Value, Value)>) -> Result<usize, String> {
    let add = |a: &Value, b: &Value| id.add(a, b).unwrap();
    let mul = |a: &Value, b: &Value| id.mul(a, b).unwrap();
    let (zero, one) = (id.zero(), id.one());
    let mut n = 0;
    for (a, b, c) in triples {
        let laws = [
            ("+ associative", add(&add(&a, &b), &c), add(&a, &add(&b, &c))),
            ("+ commutative", add(&a, &b), add(&b, &a)),
            ("0 neutral", add(&a, &zero), a.clone()),
            ("* associative", mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c))),
            ("* commutative", mul(&a, &b), mul(&b, &a)),
            ("1 neutral", mul(&a, &one), a.clone()),
            ("0 absorbing", mul(&a, &zero), zero.clone()),
            ("distributive", mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c))),
        ];
        for (law, l, r) in laws {
            ensure(l == r, || format!("{law} fails in {} on {a}, {b}, {c}", id.name()))?;
        }
        n += 1;
    }
    Ok(n)
}

fn semiring_axioms() -> Check {
    let mut counts = Vec::new();
    for id in [SemiringId::Bool01, SemiringId::May, SemiringId::Must] {
        let carrier = pool(id);
        let mut triples = Vec::new();
        for a in &carrier {
            for b in &carrier {
                for c in &carrier {
                    triples.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
        counts.push(axioms_on(id, triples.into_iter())?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pick = move || -> u64 {
        match rng.gen_range(0..3) {
            0 => rng.gen_range(0..4),
            1 => rng.gen_range(0..1 << 20),
            _ => rng.gen(),
        }
    };
    let mut triples = Vec::new();
    for _ in 0..10_000 {
        triples.push((pick(), pick(), pick()));
    }
    let big = |x: u64| BigUint::from(x);
    for &(a, b, c) in &triples {
        let got = SemiringId::Nat
            .mul(&Value::int(a), &SemiringId::Nat.add(&Value::int(b), &Value::int(c)).unwrap())
            .unwrap();
        let want = Value::Int(big(a) * (big(b) + big(c)));
        ensure(got == want, || format!("nat arithmetic on {a}, {b}, {c}"))?;
    }
    let n = axioms_on(
        SemiringId::Nat,
        triples.into_iter().map(|(a, b, c)| (Value::int(a), Value::int(b), Value::int(c))),
    )?;
    Ok(format!("bool01 {}, may {}, must {}, nat {n} triples", counts[0], counts[1], counts[2]))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("motivating discrimination", motivating),
        ("diamond and permutation", diamond),
        ("basic equivalences", basic),
        ("module laws", module),
        ("affine decomposition", affine),
        ("trace round trip", round_trip),
        ("synchronization counting", sync),
        ("simple-term decomposition", simple_decomposition),
        ("total orderings over bool01", total_orders),
        ("may/must recovery", may_must),
        ("semiring axioms", semiring_axioms),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = Duration::as_secs_f64(&start.elapsed());
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
