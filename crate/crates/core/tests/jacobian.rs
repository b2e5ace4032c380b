use std::sync::Arc;

use chowcheck::exact::{modular_rank, rank, ExactMatrix, RankMode, DEFAULT_PRIME};
use chowcheck::jacobian::*;
use chowcheck::poly::{enumerate_monomials, poly, PolyRing, SparsePoly};
use num_rational::BigRational;
use num_traits::Zero;

fn ring4() -> Arc<PolyRing> {
    PolyRing::rational(["x0", "x1", "x2", "x3"])
}

fn fermat() -> HypersurfaceRing {
    HypersurfaceRing::new(poly("x0^4 + x1^4 - x2^4 - x3^4", &ring4())).unwrap()
}

fn shioda() -> HypersurfaceRing {
    HypersurfaceRing::new(poly("x0*x1^4 + x1*x2^4 + x2*x0^4 + x3^5", &ring4())).unwrap()
}

/// Oracle: for the ideal (x_i³) the quotient basis is the monomials with all
/// exponents at most 2.
fn bounded_exponent_count(k: u32) -> usize {
    enumerate_monomials(4, k)
        .iter()
        .filter(|m| m.exponents().iter().all(|&e| e <= 2))
        .count()
}

/// Oracle: coefficients of (1 + t + … + t^{d−2})^4.
fn complete_intersection_series(d: usize) -> Vec<usize> {
    let base = vec![1usize; d - 1];
    let mut acc = vec![1usize];
    for _ in 0..4 {
        let mut next = vec![0; acc.len() + base.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

#[test]
fn fermat_hilbert_function() {
    let oracle: Vec<usize> = (0..=8).map(bounded_exponent_count).collect();
    assert_eq!(oracle, vec![1, 4, 10, 16, 19, 16, 10, 4, 1]);
    assert_eq!(hilbert_function(&fermat()), oracle);
}

#[test]
fn shioda_hilbert_function() {
    let oracle = complete_intersection_series(5);
    assert_eq!(oracle, vec![1, 4, 10, 20, 31, 40, 44, 40, 31, 20, 10, 4, 1]);
    assert_eq!(oracle.iter().sum::<usize>(), 256);
    assert_eq!(hilbert_function(&shioda()), oracle);
}

#[test]
fn quadric_has_trivial_ring() {
    let q = HypersurfaceRing::new(poly("x0^2 + x1^2 + x2^2 + x3^2", &ring4())).unwrap();
    assert_eq!(q.socle_degree(), 0);
    assert_eq!(hilbert_function(&q), vec![1]);
}

#[test]
fn fermat_generators_are_independent() {
    // The 16 generators x_i^3 x_j are distinct monomials.
    let mut rows = Vec::new();
    let monos = enumerate_monomials(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let mut e = vec![0u32; 4];
            e[i] += 3;
            e[j] += 1;
            let m = chowcheck::poly::Monomial::new(e);
            rows.push(
                monos
                    .iter()
                    .map(|n| BigRational::from_integer(((*n == m) as i64).into()))
                    .collect::<Vec<_>>(),
            );
        }
    }
    let distinct: std::collections::HashSet<_> = rows.iter().collect();
    assert_eq!(distinct.len(), 16);
    let m = ExactMatrix::from_rows(rows).unwrap();
    assert_eq!((m.rows(), m.cols()), (16, 35));
    assert_eq!(rank(&m), 16);
}

#[test]
fn smoothness() {
    assert!(is_smooth_artinian(&fermat(), RankMode::Exact).unwrap().smooth);
    let cone = HypersurfaceRing::new(poly("x0^4", &ring4())).unwrap();
    let check = is_smooth_artinian(&cone, RankMode::Modular(DEFAULT_PRIME)).unwrap();
    assert!(!check.smooth);
    assert!(check.certificate.is_exact());

    let s = is_smooth_artinian(&shioda(), RankMode::Modular(DEFAULT_PRIME)).unwrap();
    assert!(s.smooth);
    assert_eq!(s.certificate.rank, 560);
    assert_eq!(s.certificate.mode, RankMode::Modular(DEFAULT_PRIME));
}

#[test]
fn shioda_degree_13_span_certificate() {
    let ring = shioda();
    let cert = jacobian_span_rank_mod(&ring, 13, DEFAULT_PRIME).unwrap();
    assert_eq!(cert.rank, 560);
    assert!(cert.certifies(560));
    // Cross-check the modular route against exact elimination on a smaller slice.
    let m6 = ring.jacobian_span_matrix(6);
    let exact6 = rank(&m6);
    assert_eq!(modular_rank(&m6, DEFAULT_PRIME).unwrap().rank, exact6);
    assert_eq!(m6.rows() - exact6, 44);
}

#[test]
fn multiplication_maps() {
    let f = fermat();
    let id = multiplication_map(&f, 0, 3, MapOptions::default()).unwrap();
    assert_eq!(id.matrix, ExactMatrix::identity(16));

    let m13 = multiplication_map(&f, 1, 3, MapOptions::default()).unwrap();
    assert_eq!((m13.matrix.rows(), m13.matrix.cols()), (19, 64));
    assert_eq!(rank(&m13.matrix), 19);

    let s = shioda();
    let m63 = multiplication_map(&s, 6, 3, MapOptions::default()).unwrap();
    assert_eq!(rank(&m63.matrix), 20);

    assert!(matches!(
        multiplication_map(&f, 5, 5, MapOptions::default()),
        Err(RingError::BadDegree { .. })
    ));
}

#[test]
fn left_kernels() {
    let s = shioda();
    let m33 = multiplication_map(&s, 3, 3, MapOptions::default()).unwrap();
    assert!(left_kernel(&m33).is_empty());

    let f = fermat();
    let m13 = multiplication_map(&f, 1, 3, MapOptions::default()).unwrap();
    assert!(left_kernel(&m13).is_empty());

    // Target R_9 = 0: everything is in the left kernel.
    let m45 = multiplication_map(&f, 4, 5, MapOptions::default()).unwrap();
    assert_eq!(m45.target_dim(), 0);
    assert_eq!(left_kernel(&m45).len(), 19);
}

#[test]
fn left_kernel_of_stacked_r1_maps_is_trivial() {
    // Brute force: stack the four 16-column matrices of x_i : R_3 -> R_4.
    let f = fermat();
    let p4 = f.piece(4);
    let p3 = f.piece(3);
    let r = ring4();
    let mut cols = Vec::new();
    for i in 0..4 {
        let xi = SparsePoly::var_index(&r, i);
        let mut col = Vec::new();
        for m in p3.representatives() {
            let prod = xi.mul_term(m, &chowcheck::poly::Coeff::one());
            col.extend(p4.normal_form(&prod).unwrap());
        }
        cols.push(col);
    }
    let stacked = ExactMatrix::from_rows(cols).unwrap().transpose();
    assert_eq!(rank(&stacked), 4);
}

#[test]
fn surjectivity() {
    let s = shioda();
    let m63 = multiplication_map(&s, 6, 3, MapOptions::default()).unwrap();
    let check = is_surjective(&m63, RankMode::Modular(DEFAULT_PRIME)).unwrap();
    assert!(check.surjective);
    assert_eq!(check.certificate.rank, 20);

    let f = fermat();
    let m11 = multiplication_map(&f, 1, 1, MapOptions::default()).unwrap();
    assert_eq!(m11.matrix.cols(), 16);
    let check = is_surjective(&m11, RankMode::Exact).unwrap();
    assert!(check.surjective);
    assert_eq!(check.certificate.rank, 10);
}

#[test]
fn green_gotzmann_instance() {
    let f = fermat();
    let g = poly("x0*x1*x2*x3", &ring4());
    let phi = pairing_functional(&f, &g).unwrap();
    assert!(phi.iter().any(|x| !x.is_zero()));
    let v = functional_kernel(&f, 4, &phi).unwrap();
    assert_eq!(v.len(), 18);
    let map = multiplication_map(&f, 4, 3, MapOptions { source: Some(v), quotient_by: None }).unwrap();
    let check = is_surjective(&map, RankMode::Exact).unwrap();
    assert!(check.surjective);
    assert_eq!(check.certificate.rank, 4);
}

#[test]
fn quotient_by_a_class() {
    let f = fermat();
    let g = poly("x0*x1*x2*x3", &ring4());
    let coords = f.piece(4).normal_form(&g).unwrap();
    let map = multiplication_map(&f, 1, 3, MapOptions { source: None, quotient_by: Some(vec![coords]) }).unwrap();
    assert_eq!(map.target_dim(), 18);
    assert!(left_kernel(&map).is_empty());
}

#[test]
fn macaulay_pairings() {
    let f = fermat();
    for k in 0..=8 {
        let p = macaulay_pairing_check(&f, k).unwrap();
        assert!(p.nondegenerate, "k = {k}");
    }
    let p1 = macaulay_pairing_check(&f, 1).unwrap();
    assert_eq!((p1.dim_k, p1.dim_dual, p1.rank), (4, 4, 4));
    assert_eq!(macaulay_pairing_check(&f, 4).unwrap().dim_k, 19);
    let s = macaulay_pairing_check(&shioda(), 3).unwrap();
    assert_eq!((s.dim_k, s.dim_dual), (20, 20));
    assert!(s.nondegenerate);

    let cone = HypersurfaceRing::new(poly("x0^4", &ring4())).unwrap();
    assert!(matches!(macaulay_pairing_check(&cone, 1), Err(RingError::SocleNotOneDimensional(_))));
}

#[test]
fn duality_route() {
    let s = shioda();
    let v = left_kernel_via_duality(&s, 3, 3, RankMode::Modular(DEFAULT_PRIME)).unwrap();
    assert!(v.no_left_kernel);
    assert_eq!(v.surjectivity.certificate.rank, 20);

    let f = fermat();
    let v = left_kernel_via_duality(&f, 1, 3, RankMode::Exact).unwrap();
    assert!(v.no_left_kernel);
    // a + b = σ: only the pairing matters, the first map is R_0 ⊗ R_b.
    let v = left_kernel_via_duality(&f, 4, 4, RankMode::Exact).unwrap();
    assert!(v.surjectivity.surjective && v.no_left_kernel);
    assert!(matches!(
        left_kernel_via_duality(&f, 5, 4, RankMode::Exact),
        Err(RingError::BadDegree { .. })
    ));
}

#[test]
fn uniform_bound() {
    let f = fermat();
    assert_eq!(uniform_mult_rank_bound(&f, 3).unwrap(), 13);
    assert_eq!(uniform_mult_rank_bound(&f, 0).unwrap(), 1);
    assert_eq!(uniform_mult_rank_bound(&f, 8).unwrap(), 0);
    assert_eq!(uniform_mult_rank_bound(&shioda(), 3), Err(RingError::IdealNotMonomial));

    let r = ring4();
    for b in 0..=8 {
        let bound = uniform_mult_rank_bound(&f, b).unwrap();
        for v in ["x0", "x1", "x2", "x3", "x0 + x1", "x0 - 2*x2 + x3", "x1 + x2 + x3"] {
            let rk = linear_form_rank(&f, &poly(v, &r), b).unwrap();
            assert!(bound <= rk, "b = {b}, l = {v}: {bound} > {rk}");
        }
    }
}

#[test]
fn pieces_are_consistent() {
    let s = shioda();
    for k in 0..=12 {
        let p = s.piece(k);
        assert_eq!(p.quotient_dim() + p.ideal_rank(), p.ambient_dim());
        assert_eq!(p.representatives().len(), p.quotient_dim());
        assert_eq!(rank(&p.ideal_basis()), p.ideal_rank());
    }
}
