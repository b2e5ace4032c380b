use std::collections::HashMap;

use num_rational::BigRational;

use crate::exact::{Echelon, ExactMatrix, Field, Rationals, SparseVec};
use crate::poly::{enumerate_monomials, Monomial, SparsePoly};

use super::RingError;

/// Degree-`k` slice of the Jacobian quotient ring.
///
/// Ambient monomials are ordered largest first in grevlex, so the echelon
/// pivots of the Jacobian span land on the largest monomials and the
/// remaining (free) monomials serve as quotient representatives. For a
/// monomial ideal these are exactly the standard monomials.
#[derive(Clone, Debug)]
pub struct GradedPiece<F: Field> {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Echelon<F>,
    representatives: Vec<usize>,
    normal_forms: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> GradedPiece<F> {
    pub(crate) fn build(field: F, partials: &[SparsePoly], degree: u32, partial_degree: u32) -> Result<Self, RingError> {
        let nvars = partials[0].ring().nvars();
        let monomials = enumerate_monomials(nvars, degree);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ideal = Echelon::new(field.clone(), monomials.len());
        if degree >= partial_degree {
            let multipliers = enumerate_monomials(nvars, degree - partial_degree);
            for g in partials {
                let coeffs: Vec<(Monomial, F::Elem)> = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let q = c.as_rational().ok_or(RingError::NotRational)?;
                        Ok((m.clone(), field.embed(q)?))
                    })
                    .collect::<Result<_, RingError>>()?;
                for mult in &multipliers {
                    let mut row: SparseVec<F::Elem> = coeffs
                        .iter()
                        .map(|(m, c)| (index[&m.mul(mult)], c.clone()))
                        .collect();
                    row.sort_by_key(|(j, _)| *j);
                    ideal.insert(&row);
                    if ideal.rank() == monomials.len() {
                        break;
                    }
                }
            }
        }
        let representatives = ideal.free_columns();
        let mut rep_index = vec![None; monomials.len()];
        for (k, &c) in representatives.iter().enumerate() {
            rep_index[c] = Some(k);
        }
        // Normal forms of all ambient monomials, right to left: a pivot column
        // equals minus the rest of its (monic) echelon row.
        let mut normal_forms: Vec<SparseVec<F::Elem>> = vec![Vec::new(); monomials.len()];
        let pivot_rows: HashMap<usize, usize> = ideal
            .rows()
            .iter()
            .enumerate()
            .map(|(r, row)| (row[0].0, r))
            .collect();
        for col in (0..monomials.len()).rev() {
            if let Some(k) = rep_index[col] {
                normal_forms[col] = vec![(k, field.one())];
                continue;
            }
            let row = &ideal.rows()[pivot_rows[&col]];
            let mut acc = vec![field.zero(); representatives.len()];
            for (j, v) in &row[1..] {
                for (k, x) in &normal_forms[*j] {
                    let t = field.mul(v, x);
                    acc[*k] = field.sub(&acc[*k], &t);
                }
            }
            normal_forms[col] = acc
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !field.is_zero(x))
                .collect();
        }
        Ok(GradedPiece {
            degree,
            monomials,
            index,
            ideal,
            representatives,
            normal_forms,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient_basis(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn ideal_rank(&self) -> usize {
        self.ideal.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn field(&self) -> &F {
        self.ideal.field()
    }

    /// Monomials spanning the quotient, in quotient-coordinate order.
    pub fn representatives(&self) -> Vec<&Monomial> {
        self.representatives.iter().map(|&c| &self.monomials[c]).collect()
    }

    pub fn monomial_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Quotient coordinates of an ambient monomial of this degree.
    pub fn normal_form_of_monomial(&self, m: &Monomial) -> &SparseVec<F::Elem> {
        &self.normal_forms[self.index[m]]
    }

    /// Quotient coordinates of a homogeneous polynomial of this degree.
    pub fn normal_form(&self, f: &SparsePoly) -> Result<Vec<F::Elem>, RingError> {
        let field = self.field();
        let mut acc = vec![field.zero(); self.quotient_dim()];
        for (m, c) in f.terms() {
            let idx = *self.index.get(m).ok_or(RingError::BadDegree {
                degree: m.degree(),
                reason: "term degree differs from the graded piece",
            })?;
            let q = c.as_rational().ok_or(RingError::NotRational)?;
            let c = field.embed(q)?;
            for (k, x) in &self.normal_forms[idx] {
                let t = field.mul(&c, x);
                acc[*k] = field.add(&acc[*k], &t);
            }
        }
        Ok(acc)
    }
}

impl GradedPiece<Rationals> {
    /// Echelon basis of `J_k` in monomial coordinates, one row per generator
    /// kept.
    pub fn ideal_basis(&self) -> ExactMatrix {
        let n = self.ambient_dim();
        let rows: Vec<Vec<BigRational>> = self.ideal.rows().iter().map(|r| self.ideal.densify(r)).collect();
        if rows.is_empty() {
            return ExactMatrix::zeros(0, n);
        }
        ExactMatrix::from_rows(rows).expect("uniform rows")
    }
}
