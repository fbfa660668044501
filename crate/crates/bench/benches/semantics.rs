use std::collections::BTreeSet;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qpi::equivalence::enumerate_contexts;
use qpi::{check_equiv, decompose, implement_trace, outcome, parse_term, sync_count, Name, SemiringId, Term, Trace};

fn p(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn trace(json: &str) -> Trace {
    Trace::from_json_str(json).unwrap()
}

fn outcomes(c: &mut Criterion) {
    let t = p("(a.b.1 (+) b.a.1) | (~a.1 | ~b.1)");
    c.bench_function("outcome/motivating", |b| b.iter(|| outcome(black_box(&t), SemiringId::Nat)));
    let t = p("(a.1 | a.1 | a.1 | a.1) | (~a.1 | ~a.1 | ~a.1 | ~a.1)");
    c.bench_function("outcome/4x4 matchings", |b| b.iter(|| outcome(black_box(&t), SemiringId::Nat)));
}

fn traces(c: &mut Criterion) {
    let t = p("a+(x).(x.1 | ~x.0) | b.2 (+) ~a.b.1");
    c.bench_function("decompose/mixed", |b| b.iter(|| decompose(black_box(&t), SemiringId::Nat)));
    let t = trace(
        r#"{"events":[{"id":1,"pol":"+","subj":{"name":"a"}},{"id":2,"pol":"-","subj":{"event":1}},{"id":3,"pol":"+","subj":{"name":"b"}}],"order":[[1,2],[2,3]]}"#,
    );
    let u = t.dual();
    c.bench_function("implement_trace/3 events", |b| b.iter(|| implement_trace(black_box(&t))));
    c.bench_function("sync_count/3 events", |b| b.iter(|| sync_count(black_box(&t), black_box(&u))));
    let composed = Term::par(implement_trace(&t), implement_trace(&u));
    c.bench_function("outcome/implementations 3+3", |b| {
        b.iter(|| outcome(black_box(&composed), SemiringId::Nat))
    });
}

fn equivalence(c: &mut Criterion) {
    let names: BTreeSet<Name> = [Name::new("a"), Name::new("b")].into_iter().collect();
    c.bench_function("enumerate_contexts/depth 2", |b| b.iter(|| enumerate_contexts(black_box(&names), 2)));
    let (l, r) = (p("a.1 | ~b.0"), p("~b.0 | a.1 (+) 0"));
    let mut g = c.benchmark_group("check_equiv");
    g.sample_size(10);
    g.bench_function("equivalent", |b| b.iter(|| check_equiv(black_box(&l), black_box(&r), SemiringId::Nat, 2)));
    let (l, r) = (p("a.1 | b.1"), p("a.b.1 (+) b.a.1 (+) 1"));
    g.bench_function("full battery", |b| b.iter(|| check_equiv(black_box(&l), black_box(&r), SemiringId::Bool01, 2)));
    g.finish();
}

criterion_group!(benches, outcomes, traces, equivalence);
criterion_main!(benches);
