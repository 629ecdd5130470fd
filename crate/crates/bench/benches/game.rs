use std::hint::black_box;

use baker_core::*;
use criterion::{criterion_group, criterion_main, Criterion};

fn spec(order: &str, p2: &str, seed: u64) -> MatchSpec {
    let order = parse_order(order).unwrap();
    let p2 = parse_player_two(&order, p2).unwrap();
    let p1 = PlayerOneDescriptor::Random { seed, width: 3, anchor: None };
    MatchSpec::new(order, p1, p2, 64, seed)
}

fn matches(c: &mut Criterion) {
    let sigma = spec("Q", "sigma(enumerated(e, 256))", 7);
    c.bench_function("run_match sigma Q h64", |b| b.iter(|| run_match(black_box(sigma.clone())).unwrap()));
    let universal = spec("lex(rev(ord(w^2)), Q)", "universal", 7);
    c.bench_function("run_match universal lex h64", |b| b.iter(|| run_match(black_box(universal.clone())).unwrap()));
}

fn verify(c: &mut Criterion) {
    let t = run_match(spec("Q", "sigma(enumerated(e, 256))", 3)).unwrap();
    let oracle = transcript_oracle(&t).unwrap();
    let bounds = standard_bounds();
    c.bench_function("check_transcript sigma h64", |b| b.iter(|| check_transcript(black_box(&t), &oracle, &bounds).unwrap()));

    let q = OrderExpr::Rationals;
    let p2 = parse_player_two(&q, "sigma(enumerated(e, 32))").unwrap();
    let oracle = p2.default_payoff().oracle(&q).unwrap();
    c.bench_function("exhaustive Q w3 d4", |b| {
        b.iter(|| exhaustive_adversary(&q, &p2, &oracle, Exhaustive::new(3, 4), &bounds).unwrap())
    });
}

fn primitives(c: &mut Criterion) {
    c.bench_function("enumeration nth 10^4", |b| b.iter(|| RationalEnumeration::nth(black_box(10_000))));
    let lex = parse_order("lex(rev(ord(w^w)), Q)").unwrap();
    let x = parse_point(&lex, "(w^3*2 + w + 5, 3/7)").unwrap();
    let y = parse_point(&lex, "(w^3*2 + w + 5, 4/9)").unwrap();
    c.bench_function("compare lex", |b| b.iter(|| compare(&lex, black_box(&x), black_box(&y)).unwrap()));
}

criterion_group!(benches, matches, verify, primitives);
criterion_main!(benches);
