//! Row-style Hermite normal form and lattice membership over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::ExactError;

/// Hermite normal form of the row lattice with the unimodular transform that
/// produced it: `hnf` rows are `transform · input` rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub hnf: IntMatrix,
    /// One row per HNF row, expressing it in the input rows.
    pub transform: IntMatrix,
    pub pivots: Vec<usize>,
}

/// Row-style HNF: zero rows dropped, pivots positive, entries above a pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(l: &IntMatrix) -> IntMatrix {
    hermite_decomposition(l).hnf
}

pub fn hermite_decomposition(l: &IntMatrix) -> HermiteForm {
    let n = l.rows();
    let cols = l.cols();
    let mut a = l.to_rows();
    let mut u = IntMatrix::identity(n).to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        u.swap(r, p);
        for i in r + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let x = a[r][col].clone();
            let y = a[i][col].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let xg = &x / &g;
            let yg = &y / &g;
            // [s t; -y/g x/g] has determinant one.
            combine(&mut a, r, i, &s, &t, &yg, &xg);
            combine(&mut u, r, i, &s, &t, &yg, &xg);
        }
        if a[r][col].is_negative() {
            negate(&mut a[r]);
            negate(&mut u[r]);
        }
        let pivot = a[r][col].clone();
        for k in 0..r {
            let q = a[k][col].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            sub_multiple(&mut a, k, r, &q);
            sub_multiple(&mut u, k, r, &q);
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    u.truncate(r);
    HermiteForm {
        hnf: IntMatrix::from_rows(cols, a).unwrap(),
        transform: IntMatrix::from_rows(n, u).unwrap(),
        pivots,
    }
}

fn combine(m: &mut [Vec<BigInt>], r: usize, i: usize, s: &BigInt, t: &BigInt, yg: &BigInt, xg: &BigInt) {
    let (head, tail) = m.split_at_mut(i);
    let top = &mut head[r];
    let bottom = &mut tail[0];
    for (a, b) in top.iter_mut().zip(bottom.iter_mut()) {
        let new_top = s * &*a + t * &*b;
        let new_bottom = xg * &*b - yg * &*a;
        *a = new_top;
        *b = new_bottom;
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row {
        *x = -&*x;
    }
}

fn sub_multiple(m: &mut [Vec<BigInt>], k: usize, r: usize, q: &BigInt) {
    let src = m[r].clone();
    for (x, y) in m[k].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

/// The least `n ≥ 1` with `n·v` in a lattice, with witnesses in both the HNF
/// basis and the original generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMultiple {
    pub multiple: BigInt,
    /// `multiple·v = Σ hnf_coefficients[k] · hnf[k]`.
    pub hnf_coefficients: Vec<BigInt>,
    /// `multiple·v = Σ generator_coefficients[i] · input[i]`.
    pub generator_coefficients: Vec<BigInt>,
}

impl LatticeMultiple {
    /// Re-expands the generator witness and compares with `multiple·v`.
    pub fn check(&self, l: &IntMatrix, v: &[BigInt]) -> bool {
        let lhs = l.combine_rows(&self.generator_coefficients);
        lhs.iter().zip(v).all(|(a, b)| *a == &self.multiple * b) && lhs.len() == v.len()
    }
}

/// Smallest positive multiple of `v` in the row lattice of `l`, or `None` when
/// `v` is not even in its rational span.
///
/// Since HNF rows are a basis, `v` has unique rational coordinates `y` in it;
/// `n·v` is in the lattice exactly when `n·y` is integral, so the answer is the
/// lcm of the denominators of `y`.
pub fn minimal_multiple_in_lattice(
    l: &IntMatrix,
    v: &[BigInt],
) -> Result<Option<LatticeMultiple>, ExactError> {
    if v.len() != l.cols() {
        return Err(ExactError::Shape {
            expected: l.cols(),
            found: v.len(),
        });
    }
    let hf = hermite_decomposition(l);
    let mut rest: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
    let mut coords = Vec::with_capacity(hf.pivots.len());
    for (k, &pc) in hf.pivots.iter().enumerate() {
        let row = hf.hnf.row(k);
        let y = &rest[pc] / BigRational::from_integer(row[pc].clone());
        if !y.is_zero() {
            for (x, h) in rest.iter_mut().zip(row) {
                *x -= &y * BigRational::from_integer(h.clone());
            }
        }
        coords.push(y);
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let n = coords
        .iter()
        .fold(BigInt::one(), |acc, y| acc.lcm(y.denom()));
    let hnf_coefficients: Vec<BigInt> = coords
        .iter()
        .map(|y| (y * BigRational::from_integer(n.clone())).to_integer())
        .collect();
    let generator_coefficients = hf.transform.combine_rows(&hnf_coefficients);
    Ok(Some(LatticeMultiple {
        multiple: n,
        hnf_coefficients,
        generator_coefficients,
    }))
}
