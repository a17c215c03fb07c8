use plfocal::exactnum::{int, rat};
use plfocal::plgroup::{crossing_pair, g_plus, rescale_into};
use plfocal::*;
use proptest::prelude::*;

type Word = Vec<(usize, i64)>;

fn word(n_gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n_gens, -2i64..=2), 0..=max_len)
}

fn eval(gens: &[(String, PLMap)], w: &Word) -> PLMap {
    w.iter().fold(PLMap::identity(gens[0].1.model()), |acc, &(i, p)| acc.after(&gens[i].1.pow(p)))
}

fn f_gens() -> Vec<(String, PLMap)> {
    standard_generators(&Family::ThompsonF)
}

fn bs_gens() -> Vec<(String, PLMap)> {
    standard_generators(&Family::BieriStrebel(SlopeGroup::dyadic()))
}

fn point() -> impl Strategy<Value = ExactRational> {
    (0i64..=64).prop_map(|n| rat(n, 64))
}

proptest! {
    #[test]
    fn composition_is_associative_and_acts(a in word(2, 5), b in word(2, 5), c in word(2, 5), x in point()) {
        let g = f_gens();
        let (f, h, k) = (eval(&g, &a), eval(&g, &b), eval(&g, &c));
        prop_assert_eq!(f.after(&h).after(&k), f.after(&h.after(&k)));
        prop_assert_eq!(f.after(&h).eval(&x), f.eval(&h.eval(&x)));
        prop_assert!(f.after(&f.invert()).is_identity());
        prop_assert_eq!(f.invert().eval(&f.eval(&x)), x.clone());
        prop_assert_eq!(f.preimage(&x), f.invert().eval(&x));
    }

    #[test]
    fn powers_add(a in word(3, 4), m in -3i64..3, n in -3i64..3) {
        let f = eval(&bs_gens(), &a);
        prop_assert_eq!(f.pow(m).after(&f.pow(n)), f.pow(m + n));
    }

    #[test]
    fn tau_is_a_homomorphism(a in word(2, 6), b in word(2, 6)) {
        let g = f_gens();
        let (f, h) = (eval(&g, &a), eval(&g, &b));
        for end in [End::Low, End::High] {
            prop_assert_eq!(f.after(&h).tau(end).unwrap(), f.tau(end).unwrap() + h.tau(end).unwrap());
        }
    }

    #[test]
    fn cocycle_on_line(a in word(3, 4), b in word(3, 4), n in -40i64..40) {
        let g = bs_gens();
        let (f, h) = (eval(&g, &a), eval(&g, &b));
        let x = rat(n, 4);
        for side in [Side::Right, Side::Left] {
            prop_assert_eq!(
                f.after(&h).jump_cocycle(&x, side),
                f.jump_cocycle(&h.eval(&x), side) * h.jump_cocycle(&x, side)
            );
        }
    }

    #[test]
    fn text_round_trip(a in word(3, 5)) {
        let f = eval(&bs_gens(), &a);
        prop_assert_eq!(PLMap::parse(&f.to_text()).unwrap(), f.clone());
        let u = eval(&f_gens(), &a.iter().map(|&(i, p)| (i % 2, p)).collect());
        prop_assert_eq!(PLMap::parse(&u.to_text()).unwrap(), u);
    }

    #[test]
    fn relators_survive_conjugation(c in word(2, 4)) {
        let g = f_gens();
        let k = eval(&g, &c);
        let conj = |x: &PLMap| k.after(x).after(&k.invert());
        prop_assert!(verify_relators(&conj(&g[0].1), &conj(&g[1].1)).unwrap().holds());
    }

    #[test]
    fn fixed_structure_is_exact(a in word(2, 6), x in point()) {
        let f = eval(&f_gens(), &a);
        let fs = f.fixed_structure();
        let moved = f.eval(&x) != x;
        prop_assert_eq!(fs.component_of(&x).is_some(), moved);
    }

    #[test]
    fn cross_free_matches_brute_force(ivs in prop::collection::vec((0i32..30, 1i32..12), 1..12)) {
        let ivs: Vec<(i32, i32)> = ivs.into_iter().map(|(a, l)| (a, a + l)).collect();
        let crosses = |p: &(i32, i32), q: &(i32, i32)| (p.0 < q.0 && q.0 < p.1 && p.1 < q.1) || (q.0 < p.0 && p.0 < q.1 && q.1 < p.1);
        let brute = ivs.iter().enumerate().any(|(i, p)| ivs[i + 1..].iter().any(|q| crosses(p, q)));
        match crossing_pair(&ivs) {
            None => prop_assert!(!brute),
            Some((i, j)) => prop_assert!(crosses(&ivs[i], &ivs[j])),
        }
    }

    #[test]
    fn two_chain_witness_is_minimal(lo in 1i64..6, hi in 10i64..15) {
        // Two bumps overlapping on [lo/16, hi/16].
        let f = rescale_into(&f0(), &int(0), &rat(hi, 16)).unwrap();
        let g = rescale_into(&f0(), &rat(lo, 16), &int(1)).unwrap();
        let n = two_chain_witness(&f, &g).unwrap();
        prop_assert!(verify_relators(&f, &g.pow(n)).unwrap().holds());
        // Oracle: iterate g on f(c) directly.
        let (c, d) = (rat(lo, 16), rat(hi, 16));
        let start = f.eval(&c);
        let hits: Vec<i64> = (1..=n).filter(|&k| g.pow(k).eval(&start) > d).collect();
        prop_assert_eq!(hits.first().copied(), Some(n));
    }
}

#[test]
fn generator_values() {
    let f = f0();
    assert_eq!(f.eval(&rat(1, 8)), rat(1, 4));
    assert_eq!(f.eval(&rat(3, 8)), rat(5, 8));
    assert_eq!(f.eval(&rat(3, 4)), rat(7, 8));
    let gp = g_plus(&int(0), &int(2)).unwrap();
    assert_eq!(gp.eval(&int(-3)), int(-3));
    assert_eq!(gp.eval(&int(3)), int(6));
    assert!(gp.has_trivial_germ(End::Low) && !gp.has_trivial_germ(End::High));
}

#[test]
fn ball_is_deterministic_and_closed_under_inverse() {
    let gens = f_gens();
    let b1 = plfocal::plgroup::ball(&gens, 4);
    let b2 = plfocal::plgroup::ball(&gens, 4);
    assert_eq!(b1.iter().map(|e| &e.word).collect::<Vec<_>>(), b2.iter().map(|e| &e.word).collect::<Vec<_>>());
    let elems: std::collections::HashSet<PLMap> = b1.iter().map(|e| e.elem.clone()).collect();
    assert!(b1.iter().all(|e| elems.contains(&e.elem.invert())));
    assert!(b1[0].elem.is_identity());
}
