use std::sync::Arc;

use chowcheck::poly::{
    check_parametrization, enumerate_monomials, multiplicity_at_point, parse_poly, poly, Coeff, Monomial,
    PolyError, PolyRing, SparsePoly,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn pencil_ring() -> Arc<PolyRing> {
    PolyRing::rational(["x0", "x1", "x2", "x3", "x", "y", "z", "lambda", "t"])
}

fn blowup(f: &SparsePoly) -> SparsePoly {
    let r = f.ring().clone();
    f.substitute(
        &[
            ("x0", poly("x + z", &r)),
            ("x1", poly("y + lambda*z", &r)),
            ("x2", poly("y - lambda*z", &r)),
            ("x3", poly("x - z", &r)),
        ],
        &r,
    )
    .unwrap()
}

#[test]
fn binomial_substitution() {
    let r = PolyRing::rational(["x0", "x", "z"]);
    let f = poly("x0^2", &r);
    let g = f.substitute(&[("x0", poly("x + z", &r))], &r).unwrap();
    assert_eq!(g, poly("x^2 + 2*x*z + z^2", &r));
}

#[test]
fn fermat_blowup_at_t_zero() {
    let r = pencil_ring();
    let f0 = poly("x0^4 + x1^4 - x2^4 - x3^4", &r);
    let img = blowup(&f0);
    assert_eq!(img, poly("8*z*(x^3 + lambda*y^3 + z^2*(x + lambda^3*y))", &r));
}

#[test]
fn symbolic_t_blowup_is_divisible_by_8z() {
    let r = pencil_ring();
    let ft = poly(
        "x0^4 + x1^4 - x2^4 - x3^4 + 2*t*(x1 - x2)*(x0 - x3)*(x1 + x3)*(x0 - x2)",
        &r,
    );
    let q8z = blowup(&ft).exact_divide(&poly("8*z", &r)).unwrap();
    let expected = poly(
        "x^3 + lambda*y^3 + z^2*(x + lambda^3*y) + lambda*t*z*(x + y + (lambda - 1)*z)*(x - y + (lambda + 1)*z)",
        &r,
    );
    assert_eq!(q8z, expected);
}

#[test]
fn tower_point_on_fprime() {
    let r = PolyRing::tower(["x", "y", "z", "lambda", "t", "a"], "a", "lambda").unwrap();
    let fp = poly(
        "x^3 + lambda*y^3 + z^2*(x + lambda^3*y) + lambda*t*z*(x + y + (lambda - 1)*z)*(x - y + (lambda + 1)*z)",
        &r,
    );
    let at = fp
        .substitute_in_place(&[("x", poly("a", &r)), ("y", poly("1", &r)), ("z", poly("0", &r))])
        .unwrap();
    assert!(at.is_zero());
}

#[test]
fn tower_reductions_are_canonical() {
    let r = PolyRing::tower(["lambda", "a"], "a", "lambda").unwrap();
    assert!(poly("a^3 + lambda", &r).is_zero());
    assert!(poly("w^2 + w + 1", &r).is_zero());
    let p = poly("a^7 + w^5*a", &r);
    assert_eq!(p, poly("lambda^2*a + (-1 - w)*a", &r));
    assert_eq!(parse_poly(&p.to_string(), &r).unwrap(), p);
}

#[test]
fn partial_derivatives() {
    let r = PolyRing::rational(["x"]);
    assert_eq!(poly("x^3", &r).partial_derivative("x").unwrap(), poly("3*x^2", &r));
    assert_eq!(
        poly("x^3", &r).partial_derivative("y"),
        Err(PolyError::UnknownVariable("y".into()))
    );

    let r = PolyRing::rational(["x", "y", "z", "lambda", "t"]);
    let l2 = "(x + y + (lambda - 1)*z)";
    let l3 = "(x - y + (lambda + 1)*z)";
    let fp = poly(&format!("x^3 + lambda*y^3 + z^2*(x + lambda^3*y) + lambda*t*z*{l2}*{l3}"), &r);
    assert_eq!(
        fp.partial_derivative("x").unwrap(),
        poly(&format!("3*x^2 + z^2 + lambda*t*z*({l2} + {l3})"), &r)
    );
    assert_eq!(
        fp.partial_derivative("y").unwrap(),
        poly(&format!("3*lambda*y^2 + lambda^3*z^2 + lambda*t*z*({l3} - {l2})"), &r)
    );
    assert_eq!(
        fp.partial_derivative("z").unwrap(),
        poly(
            &format!(
                "2*z*(x + lambda^3*y) + lambda*t*{l2}*{l3} + lambda*t*z*((lambda - 1)*{l3} + (lambda + 1)*{l2})"
            ),
            &r
        )
    );

    let r = PolyRing::rational(["x1", "x2", "x3", "t"]);
    let f = poly("x1*x2^4 + x3^5 + t*x3*x1^4", &r);
    assert_eq!(f.partial_derivative("x2").unwrap(), poly("4*x2^3*x1", &r));
}

#[test]
fn exact_division() {
    let r = PolyRing::rational(["x", "y"]);
    assert_eq!(poly("x^2 - 1", &r).exact_divide(&poly("x - 1", &r)).unwrap(), poly("x + 1", &r));
    assert!(matches!(
        poly("x^2", &r).exact_divide(&poly("y", &r)),
        Err(PolyError::NotDivisible { .. })
    ));
    assert_eq!(
        poly("x", &r).exact_divide(&SparsePoly::zero(&r)),
        Err(PolyError::DivisionByZero)
    );
}

#[test]
fn multiplicities() {
    let r = PolyRing::rational(["x1", "x2", "x3"]);
    let p = [q(1), q(0), q(0)];
    assert_eq!(multiplicity_at_point(&poly("x1*x2^4 + x3^5", &r), &p).unwrap(), 4);
    assert_eq!(multiplicity_at_point(&poly("x1*x2^4 + x3^5 + x3*x1^4", &r), &p).unwrap(), 1);
    let r = PolyRing::rational(["x0", "x1", "x2"]);
    assert_eq!(multiplicity_at_point(&poly("x0", &r), &[q(0), q(1), q(0)]).unwrap(), 1);
    assert_eq!(multiplicity_at_point(&poly("x0", &r), &[q(1), q(1), q(0)]).unwrap(), 0);
    assert_eq!(
        multiplicity_at_point(&poly("x0 + x1^2", &r), &[q(0), q(1), q(0)]),
        Err(PolyError::NotHomogeneous)
    );
}

#[test]
fn parametrizations() {
    let curve = PolyRing::rational(["x1", "x2", "x3"]);
    let line = PolyRing::rational(["t0", "t1"]);
    let f = poly("x1*x2^4 + x3^5", &curve);
    let good = [poly("-t0^5", &line), poly("t1^5", &line), poly("t1^4*t0", &line)];
    assert!(check_parametrization(&f, &good).unwrap());
    let bad = [poly("t0^5", &line), poly("t1^5", &line), poly("t1^4*t0", &line)];
    assert!(!check_parametrization(&f, &bad).unwrap());
    let lin = poly("x1", &curve);
    let zero_first = [poly("0", &line), poly("t0^2 + t1^2", &line), poly("t0*t1", &line)];
    assert!(check_parametrization(&lin, &zero_first).unwrap());
    let mixed = [poly("t0", &line), poly("t1^2", &line), poly("t0*t1", &line)];
    assert_eq!(check_parametrization(&lin, &mixed), Err(PolyError::DegreeMismatch));
}

#[test]
fn monomial_counts() {
    assert_eq!(enumerate_monomials(4, 0), vec![Monomial::one(4)]);
    assert_eq!(enumerate_monomials(4, 4).len(), 35);
    assert_eq!(enumerate_monomials(3, 5).len(), 21);
}

fn small_poly(ring: Arc<PolyRing>, max_deg: u32) -> impl Strategy<Value = SparsePoly> {
    let n = ring.nvars();
    let term = (
        prop::collection::vec(0..=max_deg, n),
        -5i64..=5,
        -3i64..=3,
    );
    prop::collection::vec(term, 0..5).prop_map(move |ts| {
        let allow_w = ring.domain().allows_w();
        SparsePoly::from_terms(
            &ring,
            ts.into_iter().map(|(e, a, b)| {
                let mut c = Coeff::int(a);
                if allow_w {
                    c = &c + &(&Coeff::int(b) * &Coeff::w());
                }
                (Monomial::new(e), c)
            }),
        )
    })
}

fn random_homogeneous(ring: Arc<PolyRing>, degree: u32) -> impl Strategy<Value = SparsePoly> {
    let mons = enumerate_monomials(ring.nvars(), degree);
    prop::collection::vec((0..mons.len(), -4i64..=4), 1..6).prop_map(move |ts| {
        SparsePoly::from_terms(&ring, ts.into_iter().map(|(i, c)| (mons[i].clone(), Coeff::int(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn distributive_over_rationals(
        (f, g, h) in {
            let r = PolyRing::rational(["x", "y", "z"]);
            (small_poly(r.clone(), 3), small_poly(r.clone(), 3), small_poly(r, 3))
        }
    ) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
    }

    #[test]
    fn distributive_in_tower(
        (f, g, h) in {
            let r = PolyRing::tower(["x", "lambda", "a"], "a", "lambda").unwrap();
            (small_poly(r.clone(), 4), small_poly(r.clone(), 4), small_poly(r, 4))
        }
    ) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        // canonical: every stored a-exponent is at most 2
        let ai = f.ring().index_of("a").unwrap();
        prop_assert!((&f * &g).terms().keys().all(|m| m.exponent(ai) <= 2));
    }

    #[test]
    fn leibniz(
        (f, g) in {
            let r = PolyRing::new(["x", "y"], chowcheck::poly::Domain::AdjoinW).unwrap();
            (small_poly(r.clone(), 4), small_poly(r, 4))
        }
    ) {
        let lhs = (&f * &g).partial_derivative("x").unwrap();
        let rhs = &(&f.partial_derivative("x").unwrap() * &g) + &(&f * &g.partial_derivative("x").unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_divides_back(
        (f, g) in {
            let r = PolyRing::rational(["x", "y", "z"]);
            (small_poly(r.clone(), 3), small_poly(r, 3))
        }
    ) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn euler_relation(
        (f, d) in (2u32..6).prop_flat_map(|d| {
            let r = PolyRing::rational(["x0", "x1", "x2", "x3"]);
            (random_homogeneous(r, d), Just(d))
        })
    ) {
        let r = f.ring().clone();
        let mut lhs = SparsePoly::zero(&r);
        for (i, g) in f.gradient().iter().enumerate() {
            lhs = &lhs + &(&SparsePoly::var_index(&r, i) * g);
        }
        prop_assert_eq!(lhs, f.scale(&Coeff::int(d as i64)));
    }
}
