//! Incremental sparse row echelon form.
//!
//! Rows are stored with their leading entry normalized to one. A row's pivot is
//! its smallest nonzero column, and every stored row only has entries at or to
//! the right of its pivot. Reducing a vector by scanning columns in ascending
//! order therefore clears every pivot column, and the residue supported on the
//! free columns is the unique normal form modulo the row space.

use super::field::Field;

/// Sparse vector: `(column, value)` pairs sorted by column, values nonzero.
pub type SparseVec<E> = Vec<(usize, E)>;

#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Columns that carry no pivot, in ascending order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Pivot columns, in ascending order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    /// Reduce a dense vector in place; afterwards every pivot column is zero.
    pub fn reduce_dense(&self, acc: &mut [F::Elem]) {
        assert_eq!(acc.len(), self.ncols, "vector length");
        let f = &self.field;
        for col in 0..self.ncols {
            if f.is_zero(&acc[col]) {
                continue;
            }
            let Some(r) = self.pivot_row[col] else {
                continue;
            };
            let factor = acc[col].clone();
            for (j, v) in &self.rows[r] {
                let t = f.mul(&factor, v);
                acc[*j] = f.sub(&acc[*j], &t);
            }
        }
    }

    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc = self.densify(v);
        self.reduce_dense(&mut acc);
        self.sparsify(acc)
    }

    /// Adds a row; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let reduced = self.reduce(v);
        self.insert_reduced(reduced)
    }

    pub fn insert_dense(&mut self, mut v: Vec<F::Elem>) -> bool {
        self.reduce_dense(&mut v);
        let reduced = self.sparsify(v);
        self.insert_reduced(reduced)
    }

    fn insert_reduced(&mut self, reduced: SparseVec<F::Elem>) -> bool {
        let Some((pivot, lead)) = reduced.first().cloned() else {
            return false;
        };
        let f = &self.field;
        let scale = f.inv(&lead);
        let row: SparseVec<F::Elem> = reduced
            .into_iter()
            .map(|(j, v)| (j, f.mul(&v, &scale)))
            .collect();
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn densify(&self, v: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        let mut acc = vec![self.field.zero(); self.ncols];
        for (j, x) in v {
            acc[*j] = self.field.add(&acc[*j], x);
        }
        acc
    }

    pub fn sparsify(&self, v: Vec<F::Elem>) -> SparseVec<F::Elem> {
        v.into_iter()
            .enumerate()
            .filter(|(_, x)| !self.field.is_zero(x))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let mut e = Echelon::new(Rationals, 3);
        assert!(e.insert(&vec![(0, q(1)), (1, q(2))]));
        assert!(e.insert(&vec![(1, q(1)), (2, q(1))]));
        assert!(!e.insert(&vec![(0, q(2)), (1, q(5)), (2, q(1))]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.free_columns(), vec![2]);
    }

    #[test]
    fn normal_form_lives_on_free_columns() {
        let mut e = Echelon::new(Rationals, 3);
        e.insert(&vec![(0, q(1)), (2, q(-1))]);
        let nf = e.reduce(&vec![(0, q(3)), (1, q(1))]);
        assert_eq!(nf, vec![(1, q(1)), (2, q(3))]);
    }

    #[test]
    fn modular_rank_can_drop() {
        let f = PrimeField::new(5).unwrap();
        let mut e = Echelon::new(f, 2);
        e.insert(&vec![(0, 1), (1, 2)]);
        assert!(!e.insert(&vec![(0, 3), (1, 1)]));
    }
}
