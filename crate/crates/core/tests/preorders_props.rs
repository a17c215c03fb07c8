use std::cmp::Ordering;

use num_bigint::BigInt;
use plfocal::checks::{dyadic_bs, f_plus_generators, pl_q_generators};
use plfocal::exactnum::{int, rat};
use plfocal::plgroup::g_minus;
use plfocal::*;
use proptest::prelude::*;

type Word = Vec<(usize, i64)>;

fn word(n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n, -2i64..=2), 0..=5)
}

fn eval(gens: &[(String, PLMap)], w: &Word) -> PLMap {
    w.iter().fold(PLMap::identity(gens[0].1.model()), |acc, &(i, p)| acc.after(&gens[i].1.pow(p)))
}

/// `compare(hg₁, hg₂) = compare(g₁, g₂)` and the three-way order is a total preorder.
fn left_invariant<S: SignEngine<Elem = PLMap>>(e: &S, gens: &[(String, PLMap)], ws: [&Word; 3]) -> Result<(), TestCaseError> {
    let [g1, g2, h] = ws.map(|w| eval(gens, w));
    let c = e.compare(&g1, &g2).unwrap();
    prop_assert_eq!(e.compare(&h.after(&g1), &h.after(&g2)).unwrap(), c, "{}", e.name());
    prop_assert_eq!(e.compare(&g2, &g1).unwrap(), c.reverse());
    // Transitivity through h.
    let (a, b) = (e.compare(&g1, &h).unwrap(), e.compare(&h, &g2).unwrap());
    if a != Ordering::Greater && b != Ordering::Greater {
        prop_assert_ne!(c, Ordering::Greater);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jump_engines_left_invariant(a in word(3), b in word(3), c in word(3)) {
        for side in [Side::Right, Side::Left] {
            for order in [LatticePreorder::lex(1), LatticePreorder::lex(1).opposite()] {
                let e = JumpEngine::new(side, SlopeGroup::dyadic(), order).unwrap();
                left_invariant(&e, &dyadic_bs(), [&a, &b, &c])?;
            }
        }
    }

    #[test]
    fn restriction_left_invariant(a in word(2), b in word(2), c in word(2)) {
        let e = RestrictionEngine { k: DiscreteInvariantSet::orbit_of(rat(1, 2)).unwrap() };
        left_invariant(&e, &f_plus_generators(), [&a, &b, &c])?;
    }

    #[test]
    fn prime_engines_left_invariant(a in word(2), b in word(2), c in word(2)) {
        for q in [2, 3] {
            left_invariant(&PrimeEngine { q: BigInt::from(q) }, &pl_q_generators(), [&a, &b, &c])?;
        }
        left_invariant(&CombinedPrimeEngine, &pl_q_generators(), [&a, &b, &c])?;
    }

    #[test]
    fn escaping_and_point_left_invariant(a in word(2), b in word(2), c in word(2)) {
        let f = standard_generators(&Family::ThompsonF);
        left_invariant(&EscapingEngine { ctx: EscapingContext::standard() }, &f, [&a, &b, &c])?;
        left_invariant(&PointEngine { model: Model::UnitInterval, x0: rat(1, 2) }, &f, [&a, &b, &c])?;
    }

    #[test]
    fn restriction_sign_invariant_under_f0_conjugation(a in word(2)) {
        let k = DiscreteInvariantSet::orbit_of(rat(1, 2)).unwrap();
        let g = eval(&f_plus_generators(), &a);
        let f = f0();
        let conj = f.after(&g).after(&f.invert());
        prop_assert_eq!(restriction_sign(&g, &k).unwrap(), restriction_sign(&conj, &k).unwrap());
    }

    #[test]
    fn point_engine_matches_direct_evaluation(a in word(2)) {
        let g = eval(&standard_generators(&Family::ThompsonF), &a);
        let x0 = rat(1, 2);
        let expected = Sign::from_ordering(g.eval(&x0).cmp(&x0));
        prop_assert_eq!(PointEngine { model: Model::UnitInterval, x0 }.sign(&g).unwrap(), expected);
    }
}

#[test]
fn jump_examples() {
    let e = JumpEngine::dyadic(Side::Right);
    let gm = g_minus(&int(0), &int(2)).unwrap();
    // D⁻/D⁺ at 0 is 2: positive for the right jump preorder.
    assert_eq!(e.sign(&gm).unwrap(), Sign::Positive);
    assert_eq!(e.sign(&gm.invert()).unwrap(), Sign::Negative);
    // Translations have no breakpoints: residue.
    assert_eq!(e.sign(&plfocal::plgroup::translation(int(3))).unwrap(), Sign::Residue);
}

#[test]
fn engines_reject_foreign_elements() {
    let line = plfocal::plgroup::translation(int(1));
    assert_eq!(PrimeEngine { q: BigInt::from(2) }.sign(&line), Err(PreorderError::ModelMismatch));
    let k = DiscreteInvariantSet::orbit_of(rat(1, 2)).unwrap();
    assert_eq!(restriction_sign(&f0(), &k), Err(PreorderError::NotInFPlus));
}

#[test]
fn axiom_checker_flags_a_broken_engine() {
    // Sign by the value at 1/2 compared with 1/4: not left-invariant.
    struct Broken;
    impl SignEngine for Broken {
        type Elem = PLMap;
        fn sign(&self, g: &PLMap) -> Result<Sign, PreorderError> {
            Ok(Sign::from_ordering(g.eval(&rat(1, 2)).cmp(&rat(1, 4))))
        }
        fn name(&self) -> String {
            "broken".into()
        }
    }
    let b: Vec<PLMap> = plfocal::plgroup::ball(&standard_generators(&Family::ThompsonF), 3).into_iter().map(|e| e.elem).collect();
    let rep = axioms_report(&Broken, &b, AxiomBudget { max_pairs: 500, max_triples: 200, seed: 1 });
    assert!(rep.violation.is_some());
}
