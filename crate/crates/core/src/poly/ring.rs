use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::coeff::Coeff;
use super::monomial::Monomial;
use super::PolyError;

/// Coefficient domain of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Rationals,
    /// Q(w) with `w² + w + 1 = 0`.
    AdjoinW,
    /// Q(w) plus a ring variable `cube_root` subject to `cube_root³ = −lambda`,
    /// `lambda` being another ring variable.
    Tower { cube_root: usize, lambda: usize },
}

impl Domain {
    pub fn allows_w(&self) -> bool {
        !matches!(self, Domain::Rationals)
    }
}

/// Variable names plus coefficient domain. Polynomials only combine when they
/// share an equal ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    variables: Vec<String>,
    domain: Domain,
}

impl PolyRing {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>, domain: Domain) -> Result<Arc<Self>, PolyError> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
            if domain.allows_w() && v == "w" {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        if let Domain::Tower { cube_root, lambda } = domain {
            if cube_root >= variables.len() || lambda >= variables.len() || cube_root == lambda {
                return Err(PolyError::BadTower);
            }
        }
        Ok(Arc::new(PolyRing { variables, domain }))
    }

    pub fn rational<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Arc<Self> {
        Self::new(variables, Domain::Rationals).expect("distinct variable names")
    }

    /// Tower ring: `cube_root³ = −lambda`, coefficients in Q(w).
    pub fn tower<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        cube_root: &str,
        lambda: &str,
    ) -> Result<Arc<Self>, PolyError> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        let find = |n: &str| {
            variables
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| PolyError::UnknownVariable(n.to_string()))
        };
        let domain = Domain::Tower {
            cube_root: find(cube_root)?,
            lambda: find(lambda)?,
        };
        Self::new(variables, domain)
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PolyError> {
        self.variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

/// Sparse multivariate polynomial; terms keyed by monomial in grevlex order,
/// zero coefficients never stored, tower reductions always applied.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl SparsePoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        SparsePoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial::one(ring.nvars()), c);
        p
    }

    pub fn int(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, Coeff::int(n))
    }

    pub fn rational(ring: &Arc<PolyRing>, q: BigRational) -> Self {
        Self::constant(ring, Coeff::rational(q))
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self, PolyError> {
        let i = ring.index_of(name)?;
        Ok(Self::var_index(ring, i))
    }

    pub fn var_index(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), Coeff::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    /// Builds from terms, combining duplicates and applying reductions.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest term in grevlex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree in `vars` of every term, if there is one.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree_in(vars));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        let all: Vec<usize> = (0..self.ring.nvars()).collect();
        self.homogeneous_degree_in(&all)
    }

    /// The rational constant value, if this is a constant with rational coefficient.
    pub fn as_rational_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        (m.degree() == 0).then(|| c.as_rational().cloned()).flatten()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Coeff::is_rational)
    }

    /// Variables that occur in some term.
    pub fn support_variables(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exponent(i) > 0))
            .collect()
    }

    pub fn add_term(&mut self, mut m: Monomial, mut c: Coeff) {
        if c.is_zero() {
            return;
        }
        if !self.ring.domain.allows_w() {
            assert!(c.is_rational(), "w coefficient in a rational ring");
        }
        if let Domain::Tower { cube_root, lambda } = self.ring.domain {
            let e = m.exponents_mut();
            while e[cube_root] >= 3 {
                e[cube_root] -= 3;
                e[lambda] += 1;
                c = -&c;
            }
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        SparsePoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, x) in &self.terms {
            out.add_term(k.mul(m), x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::int(&self.ring, 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub(crate) fn check_ring(&self, other: &SparsePoly) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::DomainMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &SparsePoly) -> Result<Self, PolyError> {
        self.check_ring(o)?;
        Ok(self + o)
    }

    pub fn try_sub(&self, o: &SparsePoly) -> Result<Self, PolyError> {
        self.check_ring(o)?;
        Ok(self - o)
    }

    pub fn try_mul(&self, o: &SparsePoly) -> Result<Self, PolyError> {
        self.check_ring(o)?;
        Ok(self * o)
    }

    /// Re-homes the polynomial in another ring, matching variables by name.
    /// Fails if a used variable is missing or a coefficient is not allowed.
    pub fn to_ring(&self, target: &Arc<PolyRing>) -> Result<Self, PolyError> {
        let map: Vec<Option<usize>> = self
            .ring
            .variables()
            .iter()
            .map(|v| target.index_of(v).ok())
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            if !target.domain.allows_w() && !c.is_rational() {
                return Err(PolyError::DomainMismatch);
            }
            let mut e = vec![0u32; target.nvars()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| PolyError::UnknownVariable(self.ring.variables()[i].clone()))?;
                e[j] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, o: &SparsePoly) -> SparsePoly {
        assert!(self.ring == o.ring, "polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, o: &SparsePoly) -> SparsePoly {
        assert!(self.ring == o.ring, "polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, o: &SparsePoly) -> SparsePoly {
        assert!(self.ring == o.ring, "polynomials from different rings");
        let mut out = SparsePoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&Coeff::int(-1))
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let rational_negative = c.is_rational() && c.re < BigRational::zero();
            let shown = if rational_negative { -c } else { c.clone() };
            if k == 0 {
                if rational_negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if rational_negative { "-" } else { "+" })?;
            }
            let vars: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let n = &self.ring.variables()[i];
                    if e == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            let unit = shown == Coeff::one();
            let cs = if shown.needs_parens() {
                format!("({shown})")
            } else {
                shown.to_string()
            };
            match (vars.is_empty(), unit) {
                (true, _) => write!(f, "{cs}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{cs}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}
