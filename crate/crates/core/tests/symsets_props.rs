use plfocal::exactnum::{int, rat};
use plfocal::plgroup::ball;
use plfocal::symsets::{eventually_periodic_value, SetPoint};
use plfocal::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = ExactRational;

const W1: [u8; 5] = [1, 0, 0, 0, 1];
const W2: [u8; 5] = [0, 1, 1, 1, 0];

fn ctx() -> SymContext {
    SymContext::new(WordPair::new(W1.to_vec(), W2.to_vec()).unwrap())
}

fn cat(parts: &[&[u8]]) -> Vec<u8> {
    parts.concat()
}

/// The dyadic interval `n + [0.z, 0.z + 2^-|z|]`.
fn interval(n: i64, z: &[u8]) -> (Q, Q) {
    let a = int(n) + eventually_periodic_value(z, &[0]);
    let b = &a + rat(1, 1i64 << z.len());
    (a, b)
}

/// The affine map taking cylinder `z1` onto cylinder `z2` (both in cell `n`).
fn cylinder_map(n: i64, z1: &[u8], z2: &[u8]) -> (Q, Q, Affine) {
    let (a1, b1) = interval(n, z1);
    let (a2, b2) = interval(n, z2);
    let s = (&b2 - &a2) / (&b1 - &a1);
    let off = &a2 - &s * &a1;
    (a1, b1, Affine::new(s, off))
}

fn fixed(x: i64) -> (Q, Q, Affine) {
    (int(x), int(x), Affine::identity())
}

fn ball_elems(radius: usize) -> Vec<PLMap> {
    ball(&line_f_generators(), radius).into_iter().map(|e| e.elem).collect()
}

#[test]
fn membership_is_consistent_under_image() {
    let c = ctx();
    let k = TailSet::reference();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let members = c.sample_points(&k, -2, 4, 50, &mut rng);
    // Non-members: a block tail spoiled by a constant period.
    let strangers: Vec<SetPoint> =
        members.iter().map(|p| SetPoint { cell: p.cell, prefix: p.prefix.clone(), period: vec![0, 0, 1] }).collect();
    for g in ball_elems(3) {
        let image = c.image(&g, &k).unwrap();
        for p in &members {
            assert!(c.contains_point(&k, p));
            assert!(c.contains(&image, &g.eval(&p.value())), "g = {g}, x = {p}");
        }
        for p in &strangers {
            let x = p.value();
            assert_eq!(c.contains(&k, &x), c.contains(&image, &g.eval(&x)), "g = {g}, x = {p}");
        }
    }
}

#[test]
fn glued_stabilizer_preserves_k_and_moves_points() {
    // On [1,2]: w₂ ↦ w₂w₂, w₁w₂ ↦ w₂w₁, w₁w₁ ↦ w₁ (increasing on both sides), bridged by dyadic maps.
    let h = glue(&[
        fixed(1),
        cylinder_map(1, &W2, &cat(&[&W2, &W2])),
        cylinder_map(1, &cat(&[&W1, &W2]), &cat(&[&W2, &W1])),
        cylinder_map(1, &cat(&[&W1, &W1]), &W1),
        fixed(2),
    ])
    .unwrap();
    let c = ctx();
    let k = TailSet::reference();
    assert_eq!(c.image(&h, &k).unwrap(), k);
    assert_eq!(c.image(&h.invert(), &k).unwrap(), k);
    assert!(h.breakpoints().iter().all(|b| *b >= int(1) && *b <= int(2)));
    let x = int(1) + eventually_periodic_value(&cat(&[&W1, &W1]), &W2);
    let hx = h.eval(&x);
    assert_ne!(hx, x);
    assert_eq!(hx, int(1) + eventually_periodic_value(&W1, &W2));
    assert!(c.contains(&k, &hx));
    // Outside [1,2] nothing moves.
    for y in [int(0), rat(1, 3), int(5), int(-7)] {
        assert_eq!(h.eval(&y), y);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in c.sample_points(&k, 0, 3, 100, &mut rng) {
        assert!(c.contains(&k, &h.eval(&p.value())));
        assert!(c.contains(&k, &h.invert().eval(&p.value())));
    }
}

#[test]
fn alpha_matches_bisection_oracle() {
    // Supported in [0,1]: keeps w₂, squeezes w₁ into w₁w₁, so g(K) loses w₁w₂·K̃₀.
    let g = glue(&[fixed(0), cylinder_map(0, &W2, &W2), cylinder_map(0, &W1, &cat(&[&W1, &W1])), fixed(1)]).unwrap();
    let c = ctx();
    let k = TailSet::reference();
    let gk = c.image(&g, &k).unwrap();
    let expected = eventually_periodic_value(&cat(&[&W1, &W2]), &W1);
    assert_eq!(c.alpha(&k, &gk), Alpha::Point(expected.clone()));
    assert_eq!(c.alpha(&gk, &k), Alpha::Point(expected.clone()));
    assert!(expected <= int(1));

    // Oracle: sampled points decide membership; the symmetric difference tops out at α.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pts = c.sample_points(&k, -1, 3, 400, &mut rng);
    pts.extend(c.sample_points(&gk, -1, 3, 400, &mut rng));
    let mut diff_top: Option<Q> = None;
    for p in &pts {
        let x = p.value();
        let (a, b) = (c.contains(&k, &x), c.contains(&gk, &x));
        if a != b {
            assert!(x <= expected, "difference above alpha at {p}");
            diff_top = diff_top.max(Some(x));
        }
    }
    assert!(diff_top.is_some(), "sampling never hit the difference");
    // Bisection on dyadics: agreement holds on [x, x+3] exactly when x > α.
    let agree_above = |x: &Q| pts.iter().map(SetPoint::value).filter(|v| v >= x && *v <= x + int(3)).all(|v| c.contains(&k, &v) == c.contains(&gk, &v));
    let (mut lo, mut hi) = (int(-1), int(2));
    for _ in 0..30 {
        let mid = (&lo + &hi) / int(2);
        if agree_above(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    assert!(lo <= expected && diff_top.unwrap() <= hi);
}

#[test]
fn max_below_single_cylinder() {
    let c = ctx();
    let k = TailSet::reference();
    let z = cat(&[&W1, &W2]);
    let (a, b) = interval(1, &z);
    // Just above the cylinder: its supremum z·w₁^ω (w₁ is the larger block).
    let top = c.max_below(&k, &b, None).unwrap();
    assert_eq!(top.value(), int(1) + eventually_periodic_value(&z, &W1));
    // Just below it: the supremum of the neighbouring cylinder w₂·K̃₀.
    let below = c.max_below(&k, &a, None).unwrap();
    assert_eq!(below.value(), int(1) + eventually_periodic_value(&W2, &W1));
    // Greedy oracle: no sampled point of K lies strictly between.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in c.sample_points(&k, 1, 2, 300, &mut rng) {
        let v = p.value();
        assert!(!(v > top.value() && v < b), "{p} beats the maximum");
        assert!(!(v > below.value() && v < a), "{p} beats the maximum");
    }
    assert_eq!(c.max_below(&k, &int(1), Some(&rat(9, 10))), Err(SymError::EmptyBelow));
}

#[test]
fn alpha_balls_are_order_convex() {
    let c = ctx();
    let k = TailSet::reference();
    let mut sets: Vec<TailSet> = ball_elems(3).iter().map(|g| c.orbit_point(g).unwrap()).collect();
    sets.sort();
    sets.dedup();
    sets.sort_by(|a, b| c.compare_sets(a, b).unwrap());
    let radius: Vec<Alpha> = sets.iter().map(|s| c.alpha(&k, s)).collect();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let r = radius[i].clone().max(radius[j].clone());
            assert!(radius[i..=j].iter().all(|x| *x <= r), "ball of radius {r:?} not convex between {i} and {j}");
        }
    }
}

#[test]
fn property_o_on_ball() {
    let c = ctx();
    let k = TailSet::reference();
    for g in ball_elems(3) {
        assert!(c.property_o_spot(&g, &k).unwrap(), "{g}");
    }
}

#[test]
fn non_dyadic_maps_rejected() {
    let c = ctx();
    let g = plfocal::plgroup::homothety(&int(0), &int(3)).unwrap();
    assert_eq!(c.image(&g, &TailSet::reference()), Err(SymError::NonDyadicMap));
}
