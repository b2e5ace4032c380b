//! Characters of a diagonal automorphism `x_i ↦ ζ^{e_i} x_i` (`ζ` a primitive
//! `N`-th root of unity) on graded pieces of a Jacobian ring, their Galois
//! orbits, and the Picard-number bound they give for surfaces.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{rank, ExactMatrix, RankMode};
use crate::jacobian::{is_smooth_artinian, HypersurfaceRing, RingError};
use crate::poly::{enumerate_monomials, Monomial, SparsePoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("modulus must be positive")]
    BadModulus,
    #[error("automorphism acts on {expected} variables, form has {found}")]
    Arity { expected: usize, found: usize },
    #[error("form is not an eigenvector of the automorphism")]
    NotInvariant,
    #[error("hypersurface is singular")]
    NotSmooth,
    #[error("Picard bound needs a surface in P^3 of degree at least 3, got {nvars} variables and degree {degree}")]
    NotSurface { nvars: usize, degree: u32 },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Exponents are stored reduced into `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalAutomorphism {
    modulus: u64,
    exponents: Vec<u64>,
}

impl DiagonalAutomorphism {
    pub fn new(modulus: u64, exponents: &[i64]) -> Result<Self, CharacterError> {
        if modulus == 0 {
            return Err(CharacterError::BadModulus);
        }
        let n = modulus as i128;
        let exponents = exponents.iter().map(|&e| (e as i128).rem_euclid(n) as u64).collect();
        Ok(DiagonalAutomorphism { modulus, exponents })
    }

    pub fn identity(nvars: usize) -> Self {
        DiagonalAutomorphism {
            modulus: 1,
            exponents: vec![0; nvars],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Character of the volume form, `Σ e_i mod N`.
    pub fn twist(&self) -> u64 {
        self.exponents.iter().fold(0, |acc, e| (acc + e) % self.modulus)
    }

    pub fn character(&self, m: &Monomial) -> u64 {
        self.exponents
            .iter()
            .zip(m.exponents())
            .fold(0u64, |acc, (&e, &k)| (acc + e * (k as u64 % self.modulus)) % self.modulus)
    }

    fn check_arity(&self, nvars: usize) -> Result<(), CharacterError> {
        if self.exponents.len() != nvars {
            return Err(CharacterError::Arity {
                expected: self.exponents.len(),
                found: nvars,
            });
        }
        Ok(())
    }
}

/// Common character of all monomials of `f`, if there is one.
pub fn invariance_character(f: &SparsePoly, sigma: &DiagonalAutomorphism) -> Option<u64> {
    if sigma.check_arity(f.ring().nvars()).is_err() {
        return None;
    }
    let mut chars = f.terms().keys().map(|m| sigma.character(m));
    let first = chars.next()?;
    chars.all(|c| c == first).then_some(first)
}

/// True iff `f` is mapped to a scalar multiple of itself.
pub fn check_invariance(f: &SparsePoly, sigma: &DiagonalAutomorphism) -> bool {
    f.is_zero() || invariance_character(f, sigma).is_some()
}

/// Dimensions of the eigenspaces of a graded piece, keyed by character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSpectrum {
    pub degree: u32,
    pub modulus: u64,
    pub histogram: BTreeMap<u64, usize>,
}

impl CharacterSpectrum {
    pub fn total(&self) -> usize {
        self.histogram.values().sum()
    }

    pub fn dim(&self, c: u64) -> usize {
        self.histogram.get(&(c % self.modulus)).copied().unwrap_or(0)
    }

    pub fn characters(&self) -> impl Iterator<Item = u64> + '_ {
        self.histogram.keys().copied()
    }
}

/// Shift applied to `R_k` characters when `twisted`: the volume-form
/// character, minus `q·χ_F` when `k + n = q·d` so that `R_k` carries residues
/// of forms with pole order `q`.
fn residue_shift(ring: &HypersurfaceRing, sigma: &DiagonalAutomorphism, chi_f: u64, degree: u32) -> u64 {
    let n = sigma.modulus;
    let (d, nv) = (ring.degree() as u64, ring.nvars() as u64);
    let k = degree as u64 + nv;
    let pole = if k.is_multiple_of(d) { (k / d) % n } else { 0 };
    (sigma.twist() + n - (pole * chi_f) % n) % n
}

fn prepare(ring: &HypersurfaceRing, sigma: &DiagonalAutomorphism) -> Result<u64, CharacterError> {
    sigma.check_arity(ring.nvars())?;
    invariance_character(ring.form(), sigma).ok_or(CharacterError::NotInvariant)
}

/// Eigenspace dimensions of `R_degree`, computed one character at a time as
/// (monomials of that character) − (rank of the Jacobian span restricted to
/// it). The span is generated by the eigenvectors `m·∂_iF`, whose character
/// is `char(m) + χ_F − e_i`.
pub fn character_spectrum(
    ring: &HypersurfaceRing,
    sigma: &DiagonalAutomorphism,
    degree: u32,
    twisted: bool,
) -> Result<CharacterSpectrum, CharacterError> {
    let chi_f = prepare(ring, sigma)?;
    let n = sigma.modulus;
    let nv = ring.nvars();
    let mut by_char: BTreeMap<u64, Vec<Monomial>> = BTreeMap::new();
    for m in enumerate_monomials(nv, degree) {
        by_char.entry(sigma.character(&m)).or_default().push(m);
    }
    let pd = ring.degree() - 1;
    let mut gens: BTreeMap<u64, Vec<SparsePoly>> = BTreeMap::new();
    if degree >= pd {
        for m in enumerate_monomials(nv, degree - pd) {
            for (i, p) in ring.partials().iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let c = (sigma.character(&m) + chi_f + n - sigma.exponents[i]) % n;
                gens.entry(c).or_default().push(p.mul_term(&m, &crate::poly::Coeff::one()));
            }
        }
    }
    let shift = if twisted { residue_shift(ring, sigma, chi_f, degree) } else { 0 };
    let mut histogram = BTreeMap::new();
    for (c, monos) in &by_char {
        let r = match gens.get(c) {
            Some(g) => slice_rank(monos, g),
            None => 0,
        };
        let dim = monos.len() - r;
        if dim > 0 {
            histogram.insert((c + shift) % n, dim);
        }
    }
    Ok(CharacterSpectrum {
        degree,
        modulus: n,
        histogram,
    })
}

fn slice_rank(monos: &[Monomial], gens: &[SparsePoly]) -> usize {
    let index: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<Vec<BigRational>> = gens
        .iter()
        .map(|g| {
            let mut row = vec![BigRational::zero(); monos.len()];
            for (m, c) in g.terms() {
                let q = c.as_rational().expect("rational Jacobian ring");
                row[index[m]] = q.clone();
            }
            row
        })
        .collect();
    rank(&ExactMatrix::from_rows(rows).expect("rectangular"))
}

/// Spectrum read off the monomial representatives of the quotient; agrees
/// with [`character_spectrum`] because the Jacobian ideal is a sum of
/// eigen-slices.
pub fn representative_spectrum(
    ring: &HypersurfaceRing,
    sigma: &DiagonalAutomorphism,
    degree: u32,
    twisted: bool,
) -> Result<CharacterSpectrum, CharacterError> {
    let chi_f = prepare(ring, sigma)?;
    let n = sigma.modulus;
    let shift = if twisted { residue_shift(ring, sigma, chi_f, degree) } else { 0 };
    let mut histogram = BTreeMap::new();
    for m in ring.piece(degree).representatives() {
        *histogram.entry((sigma.character(m) + shift) % n).or_insert(0) += 1;
    }
    Ok(CharacterSpectrum {
        degree,
        modulus: n,
        histogram,
    })
}

/// `{u·c mod N : gcd(u, N) = 1}`.
pub fn galois_orbit(c: u64, modulus: u64) -> BTreeSet<u64> {
    (1..=modulus.max(1))
        .filter(|u| u.gcd(&modulus) == 1)
        .map(|u| (u * (c % modulus.max(1))) % modulus.max(1))
        .collect()
}

/// One Galois orbit meeting the middle spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub orbit: Vec<u64>,
    /// `(character, dim)` of the middle piece over the orbit, zeros omitted.
    pub middle: Vec<(u64, usize)>,
    pub meets_outer: bool,
    /// `|orbit| · min over the orbit of the middle dimension`.
    pub contribution: usize,
}

/// Picard-number bounds from the character decomposition of
/// `R_{d−4} ⊕ R_{2d−4} ⊕ R_{3d−4}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardBound {
    /// `1 + Σ_O |O|·min_{c∈O} dim R_{2d−4}(c)`; a rational algebraic class
    /// spans a Galois-stable subspace with equal dimension in each eigenspace
    /// of its orbit.
    pub bound: usize,
    /// `1 + Σ dim R_{2d−4}(c)` over characters whose orbit avoids the outer
    /// spectra; equals `bound` when all eigenspaces are at most one-dimensional.
    pub avoid_rule_bound: usize,
    pub middle_degree: u32,
    pub outer_degrees: (Option<u32>, u32),
    pub middle_dim: usize,
    pub orbits: Vec<OrbitReport>,
}

pub fn picard_upper_bound(ring: &HypersurfaceRing, sigma: &DiagonalAutomorphism) -> Result<PicardBound, CharacterError> {
    let d = ring.degree();
    if ring.nvars() != 4 || d < 3 {
        return Err(CharacterError::NotSurface {
            nvars: ring.nvars(),
            degree: d,
        });
    }
    prepare(ring, sigma)?;
    if !is_smooth_artinian(ring, RankMode::Exact)?.smooth {
        return Err(CharacterError::NotSmooth);
    }
    let n = sigma.modulus;
    let low = (d >= 4).then(|| d - 4);
    let (mid, high) = (2 * d - 4, 3 * d - 4);
    let middle = character_spectrum(ring, sigma, mid, true)?;
    let mut outer: BTreeSet<u64> = character_spectrum(ring, sigma, high, true)?.characters().collect();
    if let Some(l) = low {
        outer.extend(character_spectrum(ring, sigma, l, true)?.characters());
    }
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    let (mut bound, mut avoid) = (1, 1);
    for c in middle.characters() {
        if seen.contains(&c) {
            continue;
        }
        let orbit = galois_orbit(c, n);
        seen.extend(orbit.iter().copied());
        let dims: Vec<(u64, usize)> = orbit.iter().map(|&o| (o, middle.dim(o))).collect();
        let min = dims.iter().map(|(_, k)| *k).min().unwrap_or(0);
        let total: usize = dims.iter().map(|(_, k)| k).sum();
        let meets_outer = orbit.iter().any(|o| outer.contains(o));
        let contribution = orbit.len() * min;
        bound += contribution;
        if !meets_outer {
            avoid += total;
        }
        orbits.push(OrbitReport {
            orbit: orbit.into_iter().collect(),
            middle: dims.into_iter().filter(|(_, k)| *k > 0).collect(),
            meets_outer,
            contribution,
        });
    }
    Ok(PicardBound {
        bound,
        avoid_rule_bound: avoid,
        middle_degree: mid,
        outer_degrees: (low, high),
        middle_dim: middle.total(),
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbits() {
        assert_eq!(galois_orbit(13, 65), [13, 26, 39, 52].into());
        assert_eq!(galois_orbit(1, 65).len(), 48);
        assert_eq!(galois_orbit(0, 65), [0].into());
        for c in 0..65 {
            let o = galois_orbit(c, 65);
            for &x in &o {
                assert_eq!(galois_orbit(x, 65), o);
            }
        }
    }

    #[test]
    fn exponents_reduced() {
        let s = DiagonalAutomorphism::new(65, &[16, -4, 1, 0]).unwrap();
        assert_eq!(s.exponents(), &[16, 61, 1, 0]);
        assert_eq!(s.twist(), 13);
        assert!(DiagonalAutomorphism::new(0, &[1]).is_err());
    }
}
