//! Algebraic identities and monotonicity properties on random inputs.

mod common;

use accessibility::ideal::{Ideal, RealRadical};
use accessibility::immersion::{pull_back_singular, ImmersionMap};
use accessibility::lie::{lie_bracket, lie_derivative, Mode, VectorField};
use accessibility::minors::{minor_ideal, FieldMatrix};
use accessibility::module::{stabilize_chain, PolySubmodule};
use accessibility::poly::{exact_div, parse_expr, squarefree_part, Polynomial, Rational, Ring};
use accessibility::sampling;
use common::{poly_from, random_poly, random_system, ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(n: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), -4i64..=4), 0..=max_terms).prop_map(move |ts| {
        ts.into_iter()
            .map(|(mut e, c)| {
                while e.iter().sum::<u32>() > deg {
                    let i = (0..e.len()).max_by_key(|&i| e[i]).unwrap();
                    e[i] -= 1;
                }
                (e, c)
            })
            .collect()
    })
}

fn field_terms(n: usize) -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(terms(n, 3, 3), n)
}

fn field(r: &Ring, label: &str, t: &[Terms]) -> VectorField {
    VectorField::new(r, label, t.iter().map(|c| poly_from(r, c)).collect()).unwrap()
}

fn triple() -> impl Strategy<Value = (usize, Vec<Terms>, Vec<Terms>, Vec<Terms>)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), field_terms(n), field_terms(n), field_terms(n)))
}

fn bracket(x: &VectorField, y: &VectorField) -> VectorField {
    lie_bracket(x, y).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms((n, a, b, c) in (1usize..=4).prop_flat_map(|n| (Just(n), terms(n, 3, 4), terms(n, 3, 4), terms(n, 3, 4)))) {
        let r = ring(n);
        let (p, q, s) = (poly_from(&r, &a), poly_from(&r, &b), poly_from(&r, &c));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &s, &p + &(&q + &s));
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &r.one(), p.clone());
        if !p.is_zero() && !q.is_zero() {
            prop_assert_eq!((&p * &q).total_degree(), Some(p.total_degree().unwrap() + q.total_degree().unwrap()));
        }
    }

    #[test]
    fn canonical_forms((n, a) in (1usize..=4).prop_flat_map(|n| (Just(n), terms(n, 3, 6)))) {
        let r = ring(n);
        let p = poly_from(&r, &a);
        let mut rev = a.clone();
        rev.reverse();
        prop_assert_eq!(poly_from(&r, &rev), p.clone());
        prop_assert_eq!(r.parse(&p.to_string()).unwrap(), p.clone());
        let e = parse_expr(r.vars(), &p.to_string(), 1, 1).unwrap();
        prop_assert_eq!(parse_expr(r.vars(), &e.render(r.vars()), 1, 1).unwrap(), e);
    }

    #[test]
    fn lie_derivative_is_a_derivation((n, x, a, b) in (1usize..=4).prop_flat_map(|n| (Just(n), field_terms(n), terms(n, 3, 3), terms(n, 3, 3)))) {
        let r = ring(n);
        let x = field(&r, "X", &x);
        let (p, q) = (poly_from(&r, &a), poly_from(&r, &b));
        let lhs = lie_derivative(&x, &(&p * &q)).unwrap();
        let rhs = &(&p * &lie_derivative(&x, &q).unwrap()) + &(&q * &lie_derivative(&x, &p).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antisymmetry((n, x, y, _z) in triple()) {
        let r = ring(n);
        let (x, y) = (field(&r, "X", &x), field(&r, "Y", &y));
        prop_assert_eq!(bracket(&x, &y), bracket(&y, &x).scale(&Rational::from_integer((-1).into())));
        prop_assert!(bracket(&x, &x).is_zero());
    }

    #[test]
    fn bilinearity((n, x1, x2, y) in triple(), num in -5i64..=5, den in 1i64..=4) {
        let r = ring(n);
        let (x1, x2, y) = (field(&r, "X1", &x1), field(&r, "X2", &x2), field(&r, "Y", &y));
        let c = Rational::new(num.into(), den.into());
        let lhs = bracket(&x1.scale(&c).add(&x2).unwrap(), &y);
        let rhs = bracket(&x1, &y).scale(&c).add(&bracket(&x2, &y)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_of_scaled_fields((n, x, y, _z) in triple(), (a, b) in (1usize..=4).prop_flat_map(|_| (terms(4, 2, 3), terms(4, 2, 3)))) {
        // [p1 X, p2 Y] = p1 p2 [X, Y] + (L_X p2) p1 Y - (L_Y p1) p2 X
        let r = ring(n);
        let shrink = |t: &Terms| -> Terms { t.iter().map(|(e, c)| (e[..n].to_vec(), *c)).collect() };
        let (p1, p2) = (poly_from(&r, &shrink(&a)), poly_from(&r, &shrink(&b)));
        let (x, y) = (field(&r, "X", &x), field(&r, "Y", &y));
        let lhs = bracket(&x.mul_poly(&p1).unwrap(), &y.mul_poly(&p2).unwrap());
        let rhs = bracket(&x, &y)
            .mul_poly(&(&p1 * &p2))
            .unwrap()
            .add(&y.mul_poly(&(&lie_derivative(&x, &p2).unwrap() * &p1)).unwrap())
            .unwrap()
            .sub(&x.mul_poly(&(&lie_derivative(&y, &p1).unwrap() * &p2)).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi((n, x, y, z) in triple()) {
        let r = ring(n);
        let (x, y, z) = (field(&r, "X", &x), field(&r, "Y", &y), field(&r, "Z", &z));
        let sum = bracket(&x, &bracket(&y, &z))
            .add(&bracket(&y, &bracket(&z, &x)))
            .unwrap()
            .add(&bracket(&z, &bracket(&x, &y)))
            .unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bracket_is_the_commutator_of_derivations((n, x, y, a) in (1usize..=4).prop_flat_map(|n| (Just(n), field_terms(n), field_terms(n), terms(n, 3, 3)))) {
        let r = ring(n);
        let (x, y) = (field(&r, "X", &x), field(&r, "Y", &y));
        let p = poly_from(&r, &a);
        let l = |f: &VectorField, q: &Polynomial| lie_derivative(f, q).unwrap();
        prop_assert_eq!(l(&bracket(&x, &y), &p), &l(&x, &l(&y, &p)) - &l(&y, &l(&x, &p)));
    }

    #[test]
    fn squarefree_part_divides_and_is_stable((n, a, b) in (1usize..=3).prop_flat_map(|n| (Just(n), terms(n, 2, 3), terms(n, 2, 3)))) {
        let r = ring(n);
        let p = &poly_from(&r, &a) * &poly_from(&r, &b).pow(2);
        prop_assume!(!p.is_constant());
        let s = squarefree_part(&p).unwrap();
        prop_assert!(exact_div(&p, &s).is_ok());
        prop_assert_eq!(squarefree_part(&s).unwrap().monic(), s.monic());
        prop_assert_eq!(squarefree_part(&p.pow(3)).unwrap().monic(), s.monic());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chain_and_minor_ideals_ascend(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng, n, 2, 2);
        let st = stabilize_chain(&sys, Mode::Accessibility, 4);
        let depth = st.chain.depth();
        let mut prev: Option<(PolySubmodule, Ideal)> = None;
        for k in 0..=depth {
            let cols = st.chain.generators_up_to(k);
            let module = PolySubmodule::new(sys.ring(), cols.clone());
            let m = FieldMatrix::new(sys.ring(), cols, k, Mode::Accessibility).unwrap();
            let minors = if m.cols() >= n { minor_ideal(&m, n).unwrap().ideal } else { Ideal::zero(sys.ring()) };
            if let Some((pm, pi)) = &prev {
                prop_assert!(module.contains_module(pm));
                prop_assert!(minors.contains_ideal(pi));
            }
            prev = Some((module, minors));
        }
    }

    #[test]
    fn real_radical_has_the_same_real_points(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring(n);
        let p = random_poly(&mut rng, &r, 2, 3);
        let q = random_poly(&mut rng, &r, 2, 3);
        let x = r.var(0);
        let ideal = Ideal::new(&r, [&p.pow(2) + &q.pow(2), &(&x * &x) * &p]);
        let RealRadical::Computed(rad) = ideal.real_radical_restricted() else {
            return Ok(());
        };
        let mut pts = sampling::points_on_variety(&ideal, &mut rng, 20);
        pts.extend(sampling::points_on_variety(&rad, &mut rng, 20));
        for _ in 0..30 {
            pts.push(sampling::small_point(&mut rng, n));
        }
        for pt in &pts {
            prop_assert_eq!(ideal.vanishes_at(pt).unwrap(), rad.vanishes_at(pt).unwrap(), "at {:?}", pt);
        }
    }

    #[test]
    fn invariant_closure_is_invariant(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng, n, 2, 2);
        let start = Ideal::new(sys.ring(), [random_poly(&mut rng, sys.ring(), 2, 2)]);
        let ops = sys.operators();
        let closure = start.invariant_closure(&ops, 6);
        prop_assume!(!closure.capped);
        prop_assert!(closure.ideal.contains_ideal(&start));
        prop_assert!(closure.ideal.is_invariant(&ops).holds());
    }

    #[test]
    fn pull_back_is_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = ring(3);
        let z = Ring::with_names(["z1", "z2", "z3", "z4", "z5"]).unwrap();
        let exprs = ["x1", "x2", "x3", "sin(x3)", "cos(x3)"]
            .iter()
            .map(|t| parse_expr(x.vars(), t, 1, 1).unwrap())
            .collect();
        let map = ImmersionMap::new(&x, &z, exprs, vec![]).unwrap();
        let small = Ideal::new(&z, [random_poly(&mut rng, &z, 2, 2)]);
        let large = small.sum(&Ideal::new(&z, [random_poly(&mut rng, &z, 2, 2)]));
        let a = pull_back_singular(&map, &small, seed);
        let b = pull_back_singular(&map, &large, seed);
        prop_assert!(b.ideal.contains_ideal(&a.ideal));
    }
}
