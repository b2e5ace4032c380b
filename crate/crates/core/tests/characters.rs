use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use chowcheck::characters::*;
use chowcheck::jacobian::HypersurfaceRing;
use chowcheck::poly::{enumerate_monomials, poly, PolyRing};

fn ring4() -> Arc<PolyRing> {
    PolyRing::rational(["x0", "x1", "x2", "x3"])
}

fn shioda() -> HypersurfaceRing {
    HypersurfaceRing::new(poly("x0*x1^4 + x1*x2^4 + x2*x0^4 + x3^5", &ring4())).unwrap()
}

fn sigma() -> DiagonalAutomorphism {
    DiagonalAutomorphism::new(65, &[16, -4, 1, 0]).unwrap()
}

#[test]
fn shioda_invariance() {
    let f = shioda();
    assert!(check_invariance(f.form(), &sigma()));
    assert_eq!(invariance_character(f.form(), &sigma()), Some(0));
    for m in f.form().terms().keys() {
        assert_eq!(sigma().character(m), 0);
    }
    let fermat = poly("x0^4 + x1^4 - x2^4 - x3^4", &ring4());
    assert!(!check_invariance(&fermat, &sigma()));
    assert!(check_invariance(&fermat, &DiagonalAutomorphism::identity(4)));
}

#[test]
fn shioda_low_and_socle_spectra() {
    let r1 = character_spectrum(&shioda(), &sigma(), 1, true).unwrap();
    assert_eq!(r1.histogram, [(29, 1), (9, 1), (14, 1), (13, 1)].into());
    let r12 = character_spectrum(&shioda(), &sigma(), 12, true).unwrap();
    assert_eq!(r12.histogram.len(), 1);
    assert_eq!(r12.total(), 1);
}

#[test]
fn spectra_agree_with_representatives() {
    let ring = shioda();
    for k in 0..=13 {
        for twisted in [false, true] {
            let a = character_spectrum(&ring, &sigma(), k, twisted).unwrap();
            let b = representative_spectrum(&ring, &sigma(), k, twisted).unwrap();
            assert_eq!(a, b, "degree {k}");
            assert_eq!(a.total(), ring.dim(k));
        }
    }
}

#[test]
fn spectra_respect_duality() {
    let ring = shioda();
    let s = ring.socle_degree();
    let socle: Vec<u64> = character_spectrum(&ring, &sigma(), s, false).unwrap().characters().collect();
    assert_eq!(socle.len(), 1);
    for k in 0..=s {
        let a = character_spectrum(&ring, &sigma(), k, false).unwrap();
        let b = character_spectrum(&ring, &sigma(), s - k, false).unwrap();
        for (c, dim) in &a.histogram {
            assert_eq!(b.dim((socle[0] + 65 - c) % 65), *dim);
        }
    }
}

#[test]
fn identity_spectrum_is_concentrated() {
    let ring = shioda();
    let id = DiagonalAutomorphism::identity(4);
    for k in [0, 3, 6] {
        let s = character_spectrum(&ring, &id, k, true).unwrap();
        assert_eq!(s.histogram, [(0, ring.dim(k))].into());
    }
}

#[test]
fn shioda_picard_bound() {
    let b = picard_upper_bound(&shioda(), &sigma()).unwrap();
    assert_eq!(b.middle_degree, 6);
    assert_eq!(b.middle_dim, 44);
    assert_eq!(b.bound, 1);
    assert_eq!(b.avoid_rule_bound, 1);
    let chars: usize = b.orbits.iter().map(|o| o.middle.len()).sum();
    assert_eq!(chars, 44);
}

#[test]
fn identity_bound_is_vacuous() {
    let b = picard_upper_bound(&shioda(), &DiagonalAutomorphism::identity(4)).unwrap();
    assert_eq!(b.bound, 1 + 44);
    assert_eq!(b.orbits.len(), 1);
    assert!(b.orbits[0].meets_outer);
}

/// Oracle for Σx_i⁴: the quotient basis is the monomials with exponents ≤ 2.
fn fermat_oracle(k: u32, e: &[u64], n: u64, shift: u64) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for m in enumerate_monomials(4, k) {
        if m.exponents().iter().all(|&x| x <= 2) {
            let c = m.exponents().iter().zip(e).map(|(&a, &b)| a as u64 * b).sum::<u64>() % n;
            *h.entry((c + shift) % n).or_insert(0) += 1;
        }
    }
    h
}

#[test]
fn fermat_against_brute_force() {
    let ring = HypersurfaceRing::new(poly("x0^4 + x1^4 + x2^4 + x3^4", &ring4())).unwrap();
    let s = DiagonalAutomorphism::new(4, &[0, 1, 2, 3]).unwrap();
    assert_eq!(s.twist(), 2);
    for k in 0..=8 {
        let got = character_spectrum(&ring, &s, k, true).unwrap();
        assert_eq!(got.histogram, fermat_oracle(k, &[0, 1, 2, 3], 4, 2), "degree {k}");
    }
    // Brute-force bound from the oracle spectra.
    let mid = fermat_oracle(4, &[0, 1, 2, 3], 4, 2);
    let outer: BTreeSet<u64> = fermat_oracle(0, &[0, 1, 2, 3], 4, 2)
        .into_keys()
        .chain(fermat_oracle(8, &[0, 1, 2, 3], 4, 2).into_keys())
        .collect();
    let mut expect = 1;
    let mut expect_avoid = 1;
    let mut done = BTreeSet::new();
    for &c in mid.keys() {
        let orbit: BTreeSet<u64> = [1u64, 3].iter().map(|u| u * c % 4).collect();
        if !done.insert(orbit.clone()) {
            continue;
        }
        let dims: Vec<usize> = orbit.iter().map(|o| mid.get(o).copied().unwrap_or(0)).collect();
        expect += orbit.len() * dims.iter().min().unwrap();
        if orbit.is_disjoint(&outer) {
            expect_avoid += dims.iter().sum::<usize>();
        }
    }
    let b = picard_upper_bound(&ring, &s).unwrap();
    assert_eq!(b.bound, expect);
    assert_eq!(b.avoid_rule_bound, expect_avoid);
    assert!(b.bound >= 1);
}

#[test]
fn errors() {
    let singular = HypersurfaceRing::new(poly("x0^4 + x1^4 + x2^4", &ring4())).unwrap();
    let id = DiagonalAutomorphism::identity(4);
    assert_eq!(picard_upper_bound(&singular, &id), Err(CharacterError::NotSmooth));
    let fermat = HypersurfaceRing::new(poly("x0^4 + x1^4 - x2^4 - x3^4", &ring4())).unwrap();
    assert_eq!(
        character_spectrum(&fermat, &sigma(), 2, false),
        Err(CharacterError::NotInvariant)
    );
    let three = DiagonalAutomorphism::new(5, &[1, 2, 3]).unwrap();
    assert!(matches!(
        character_spectrum(&fermat, &three, 1, false),
        Err(CharacterError::Arity { .. })
    ));
}
