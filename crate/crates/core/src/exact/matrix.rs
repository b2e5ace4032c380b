use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::echelon::Echelon;
use super::field::{common_denominator, Field, PrimeField};
use super::ExactError;

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from row vectors. All rows must share a length; `cols` is taken
    /// from the first row (zero when there are no rows).
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ExactError::Shape {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(ExactMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Each row scaled by the lcm of its denominators, giving an integer
    /// matrix with the same row space.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let den = common_denominator(row);
                row.iter()
                    .map(|q| q.numer() * (&den / q.denom()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from row vectors; `cols` must be given so that an empty row set
    /// still knows its ambient dimension.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, ExactError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ExactError::Shape {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer rows")
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        Self::from_rows(n, rows).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// `coeffs · self`, an integer combination of the rows.
    pub fn combine_rows(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coeffs.len(), self.rows, "coefficient count");
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(r)) {
                *o += c * x;
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankMode {
    Exact,
    Modular(u64),
}

impl fmt::Display for RankMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankMode::Exact => write!(f, "exact"),
            RankMode::Modular(p) => write!(f, "modular p={p}"),
        }
    }
}

/// A rank together with how it was obtained. A modular rank is only a lower
/// bound for the rank over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub mode: RankMode,
    pub note: String,
}

impl RankCertificate {
    pub fn exact(rank: usize) -> Self {
        RankCertificate {
            rank,
            mode: RankMode::Exact,
            note: "exact elimination over Q".to_string(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode == RankMode::Exact
    }

    /// Whether this certificate proves that the exact rank equals `max`, where
    /// `max` is an a-priori upper bound (matrix dimension or stated target).
    pub fn certifies(&self, max: usize) -> bool {
        self.rank == max
    }
}

/// Rank over Q by fraction-free (Bareiss) elimination on the integer-scaled rows.
pub fn rank(m: &ExactMatrix) -> usize {
    bareiss_rank(m.integer_rows(), m.cols())
}

pub(crate) fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let mut v = &pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                if !v.is_zero() {
                    v = v.div_floor(&prev);
                }
                row[j] = v;
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Basis of the right null space, one vector per free column of the reduced
/// row echelon form. Empty exactly when `m` has full column rank.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<BigRational>> {
    let n = m.cols();
    let mut a: Vec<Vec<BigRational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// Rank over the field with `p` elements. Never exceeds the rank over Q.
pub fn modular_rank(m: &ExactMatrix, p: u64) -> Result<RankCertificate, ExactError> {
    let field = PrimeField::new(p)?;
    let mut ech = Echelon::new(field, m.cols());
    for r in 0..m.rows() {
        let row = m
            .row(r)
            .iter()
            .map(|q| field.embed(q))
            .collect::<Result<Vec<_>, _>>()?;
        ech.insert_dense(row);
    }
    let rank = ech.rank();
    let max = m.rows().min(m.cols());
    let note = if rank == max {
        format!("rank {rank} mod {p} meets min(rows, cols); certifies exact rank")
    } else {
        format!("rank {rank} mod {p}; lower bound only")
    };
    Ok(RankCertificate {
        rank,
        mode: RankMode::Modular(p),
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_of_small_cases() {
        assert_eq!(rank(&ExactMatrix::identity(3)), 3);
        assert_eq!(rank(&ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&ExactMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&ExactMatrix::zeros(3, 2)), 0);
    }

    #[test]
    fn rank_with_fractions_and_skipped_columns() {
        let m = ExactMatrix::from_rows(vec![
            vec![q(0), BigRational::new(1.into(), 2.into()), q(1)],
            vec![q(0), q(1), q(2)],
            vec![q(0), q(0), BigRational::new(3.into(), 7.into())],
        ])
        .unwrap();
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn kernel_small_cases() {
        assert!(kernel_basis(&ExactMatrix::identity(2)).is_empty());
        let k = kernel_basis(&ExactMatrix::from_i64_rows(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn modular_rank_is_lower_bound() {
        let cert = modular_rank(&ExactMatrix::identity(3), 101).unwrap();
        assert_eq!(cert.rank, 3);
        assert!(cert.certifies(3));
        let m = ExactMatrix::from_i64_rows(&[&[101, 0], &[0, 1]]);
        let cert = modular_rank(&m, 101).unwrap();
        assert_eq!(cert.rank, 1);
        assert_eq!(rank(&m), 2);
        assert!(!cert.certifies(2));
    }

    #[test]
    fn bad_prime_is_reported() {
        let m = ExactMatrix::from_rows(vec![vec![BigRational::new(1.into(), 7.into())]]).unwrap();
        assert!(matches!(modular_rank(&m, 7), Err(ExactError::BadPrime { prime: 7, .. })));
        assert!(matches!(modular_rank(&m, 8), Err(ExactError::NotPrime(8))));
    }
}
