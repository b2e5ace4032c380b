use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;

use super::monomial::Monomial;
use super::ring::{PolyRing, SparsePoly};
use super::PolyError;

impl SparsePoly {
    /// Replaces variables by polynomials of `target`.
    ///
    /// Every variable occurring in `self` must either be assigned or exist
    /// under the same name in `target`, in which case it maps to itself.
    pub fn substitute(
        &self,
        assignment: &[(&str, SparsePoly)],
        target: &Arc<PolyRing>,
    ) -> Result<SparsePoly, PolyError> {
        let ring = self.ring();
        let mut images: Vec<Option<SparsePoly>> = vec![None; ring.nvars()];
        for (name, value) in assignment {
            let i = ring.index_of(name)?;
            if value.ring() != target {
                return Err(PolyError::DomainMismatch);
            }
            images[i] = Some(value.clone());
        }
        for i in self.support_variables() {
            if images[i].is_none() {
                let name = &ring.variables()[i];
                let j = target
                    .index_of(name)
                    .map_err(|_| PolyError::Unassigned(name.clone()))?;
                images[i] = Some(SparsePoly::var_index(target, j));
            }
        }
        let mut powers: HashMap<(usize, u32), SparsePoly> = HashMap::new();
        let mut out = SparsePoly::zero(target);
        for (m, c) in self.terms() {
            if !target.domain().allows_w() && !c.is_rational() {
                return Err(PolyError::DomainMismatch);
            }
            let mut term = SparsePoly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].as_ref().expect("image assigned").pow(e));
                term = &term * p;
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitutes within the same ring.
    pub fn substitute_in_place(&self, assignment: &[(&str, SparsePoly)]) -> Result<SparsePoly, PolyError> {
        let ring = self.ring().clone();
        self.substitute(assignment, &ring)
    }

    /// Sets the given variables to rational values, staying in the same ring.
    pub fn evaluate_vars(&self, values: &[(&str, BigRational)]) -> Result<SparsePoly, PolyError> {
        let ring = self.ring().clone();
        let assignment: Vec<(&str, SparsePoly)> = values
            .iter()
            .map(|(n, q)| (*n, SparsePoly::rational(&ring, q.clone())))
            .collect();
        self.substitute(&assignment, &ring)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<SparsePoly, PolyError> {
        let i = self.ring().index_of(var)?;
        Ok(self.partial_derivative_index(i))
    }

    pub fn partial_derivative_index(&self, i: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.ring());
        for (m, c) in self.terms() {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial::new(ex), c.scale(&BigRational::from_integer(e.into())));
        }
        out
    }

    pub fn gradient(&self) -> Vec<SparsePoly> {
        (0..self.ring().nvars())
            .map(|i| self.partial_derivative_index(i))
            .collect()
    }

    /// Exact quotient `f / g`. Fails with the remainder when `g` does not
    /// divide `f`; the quotient is re-multiplied and checked before returning.
    pub fn exact_divide(&self, g: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check_ring(g)?;
        let (lm, lc) = match g.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(PolyError::DivisionByZero),
        };
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(self.ring());
        // Each step cancels the current leading term; tower reductions can
        // reintroduce larger terms, so the loop carries a step budget.
        let mut budget = 16 * (self.num_terms() + 16) * (g.num_terms() + 1) + 4096;
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(qm) = lm.quotient_of(&rm) else {
                return Err(PolyError::NotDivisible { remainder: rem.to_string() });
            };
            let qc = &rc * &lc_inv;
            rem = &rem - &g.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
            budget = budget.saturating_sub(1);
            if budget == 0 {
                return Err(PolyError::NotDivisible { remainder: rem.to_string() });
            }
        }
        let back = &quot * g;
        if &back != self {
            let diff = self - &back;
            return Err(PolyError::NotDivisible { remainder: diff.to_string() });
        }
        Ok(quot)
    }
}

/// Coefficient of a fixed monomial in the variables `vars`, as a polynomial in
/// the remaining variables.
pub fn coefficient_in(f: &SparsePoly, vars: &[usize], exps: &[u32]) -> SparsePoly {
    let mut out = SparsePoly::zero(f.ring());
    for (m, c) in f.terms() {
        if vars.iter().zip(exps).all(|(&i, &e)| m.exponent(i) == e) {
            let mut ex = m.exponents().to_vec();
            for &i in vars {
                ex[i] = 0;
            }
            out.add_term(Monomial::new(ex), c.clone());
        }
    }
    out
}

