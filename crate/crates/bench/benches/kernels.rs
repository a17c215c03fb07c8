use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use plfocal::checks::dyadic_bs;
use plfocal::plgroup::ball;
use plfocal::*;

fn ball_elems(radius: usize) -> Vec<PLMap> {
    ball(&dyadic_bs(), radius).into_iter().map(|e| e.elem).collect()
}

fn compose(c: &mut Criterion) {
    let elems = ball_elems(4);
    let (g, h) = (&elems[elems.len() / 3], &elems[2 * elems.len() / 3]);
    c.bench_function("compose/radius4_pair", |b| b.iter(|| black_box(g).after(black_box(h))));
    c.bench_function("ball/bs_radius4", |b| b.iter(|| ball(black_box(&dyadic_bs()), 4).len()));
}

fn jump(c: &mut Criterion) {
    let elems = ball_elems(4);
    let engine = JumpEngine::dyadic(Side::Right);
    c.bench_function("jump_sign/radius4_ball", |b| {
        b.iter(|| elems.iter().filter(|g| engine.sign(g).unwrap() == Sign::Positive).count())
    });
    c.bench_function("build_frame/jump_radius4", |b| {
        b.iter(|| build_frame(&engine, &dyadic_bs(), black_box(4)).unwrap().len())
    });
}

fn symsets(c: &mut Criterion) {
    let ctx = SymContext::new(WordPair::parse("10001", "01110").unwrap());
    let elems: Vec<PLMap> = ball(&line_f_generators(), 3).into_iter().map(|e| e.elem).collect();
    c.bench_function("orbit_point/radius3_ball", |b| {
        b.iter(|| elems.iter().map(|g| ctx.orbit_point(g).unwrap()).count())
    });
    let sets: Vec<TailSet> = elems.iter().map(|g| ctx.orbit_point(g).unwrap()).collect();
    c.bench_function("compare_sets/radius3_sort", |b| {
        b.iter_batched(
            || sets.clone(),
            |mut s| s.sort_by(|x, y| ctx.compare_sets(x, y).unwrap()),
            BatchSize::SmallInput,
        )
    });
}

fn plante(c: &mut Criterion) {
    let engine = PlanteEngine { order: PlanteOrder::standard(1, 1) };
    let gens = wreath_generators(1, 1);
    c.bench_function("build_frame/plante_radius5", |b| b.iter(|| build_frame(&engine, &gens, black_box(5)).unwrap().len()));
}

criterion_group!(benches, compose, jump, symsets, plante);
criterion_main!(benches);
