use plfocal::checks::dyadic_bs;
use plfocal::exactnum::rat;
use plfocal::plgroup::ball;
use plfocal::realize::{cf_cover_check, is_monotone, refinement_check, DEFAULT_POWER_BOUND};
use plfocal::*;
use proptest::prelude::*;

fn f_gens() -> Vec<(String, PLMap)> {
    standard_generators(&Family::ThompsonF)
}

fn coords_and_words<E>(f: &OrbitFrame<E>) -> (Vec<Dyadic>, Vec<String>) {
    (f.coords.clone(), f.points.iter().map(|p| p.word.clone()).collect())
}

#[test]
fn frames_are_deterministic() {
    let jump = JumpEngine::dyadic(Side::Right);
    let a = build_frame(&jump, &dyadic_bs(), 4).unwrap();
    let b = build_frame(&jump, &dyadic_bs(), 4).unwrap();
    assert_eq!(coords_and_words(&a), coords_and_words(&b));
    let esc = EscapingEngine { ctx: EscapingContext::standard() };
    let a = build_frame(&esc, &f_gens(), 4).unwrap();
    let b = build_frame(&esc, &f_gens(), 4).unwrap();
    assert_eq!(coords_and_words(&a), coords_and_words(&b));
    assert!(a.coords.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn induced_maps_are_monotone() {
    let jump = JumpEngine::dyadic(Side::Left);
    let frame = build_frame(&jump, &dyadic_bs(), 4).unwrap();
    for (name, g) in dyadic_bs() {
        for h in [g.clone(), g.invert()] {
            let m = induced_map(&frame, &jump, &h).unwrap();
            assert!(is_monotone(&m), "{name}");
            assert!(m.iter().flatten().count() > 0);
        }
    }
    let esc = EscapingEngine { ctx: EscapingContext::standard() };
    let frame = build_frame(&esc, &f_gens(), 4).unwrap();
    for (name, g) in f_gens() {
        assert!(is_monotone(&induced_map(&frame, &esc, &g).unwrap()), "{name}");
    }
}

#[test]
fn escaping_prediction_matches_empirical_on_f() {
    let gens = f_gens();
    let engine = EscapingEngine { ctx: EscapingContext::standard() };
    let frame = build_frame(&engine, &gens, 5).unwrap();
    let b = ball(&gens, 5);
    let mut conclusive = 0;
    for e in &b {
        let p = classify_predicted(&e.elem, Horograding::Increasing);
        let m = classify_empirical(&frame, &engine, &e.elem, DEFAULT_POWER_BOUND).unwrap();
        assert!(p.compatible(&m), "`{}`: predicted {p}, empirical {m}", e.word);
        if m != DynType::Inconclusive {
            conclusive += 1;
        }
    }
    assert!(conclusive as f64 >= 0.95 * b.len() as f64, "{conclusive} of {}", b.len());
}

#[test]
fn identity_is_not_a_homothety() {
    let engine = EscapingEngine { ctx: EscapingContext::standard() };
    let frame = build_frame(&engine, &f_gens(), 3).unwrap();
    let pts: Vec<PLMap> = frame.points.iter().map(|p| p.elem.clone()).collect();
    let id = PLMap::identity(Model::UnitInterval);
    assert!(!homothety_witness(&engine, &id, &pts[0], &pts, DEFAULT_POWER_BOUND).unwrap());
}

#[test]
fn point_engine_frames_refine() {
    let engine = PointEngine { model: Model::UnitInterval, x0: rat(1, 3) };
    let frames: Vec<_> = (2..=5).map(|r| build_frame(&engine, &f_gens(), r).unwrap()).collect();
    for w in frames.windows(2) {
        assert!(refinement_check(&w[0], &w[1], &engine).unwrap());
        assert!(w[0].len() < w[1].len());
    }
    // Points are orbit points of 1/3, so the frame is ordered by their values.
    let values: Vec<_> = frames[3].points.iter().map(|p| p.elem.eval(&rat(1, 3))).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
}

proptest! {
    #[test]
    fn cf_cover_matches_brute_force(ivs in prop::collection::vec((0usize..12, 0usize..6), 1..8)) {
        let len = 14;
        let ivs: Vec<(usize, usize)> = ivs.into_iter().map(|(a, l)| (a, (a + l).min(len - 1))).collect();
        let v = cf_cover_check(len, &ivs);
        let crosses = |p: &(usize, usize), q: &(usize, usize)| p.0 < q.0 && q.0 <= p.1 && p.1 < q.1;
        let brute = ivs.iter().any(|p| ivs.iter().any(|q| crosses(p, q)));
        prop_assert_eq!(v.cross_free, !brute);
        let covered = (0..len).all(|i| ivs.iter().any(|&(a, b)| a <= i && i <= b));
        prop_assert_eq!(v.covering, covered);
    }
}
