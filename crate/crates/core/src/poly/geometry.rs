use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::ring::{PolyRing, SparsePoly};
use super::PolyError;

/// Point of projective space with polynomial coordinates; `nonzero` names a
/// coordinate known to be a nonzero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: Vec<SparsePoly>,
    nonzero: usize,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<SparsePoly>, nonzero: usize) -> Result<Self, PolyError> {
        if nonzero >= coords.len() || coords[nonzero].is_zero() {
            return Err(PolyError::ZeroCoordinate(nonzero));
        }
        let ring = coords[0].ring().clone();
        if coords.iter().any(|c| c.ring() != &ring) {
            return Err(PolyError::DomainMismatch);
        }
        Ok(ProjectivePoint { coords, nonzero })
    }

    /// Point with rational coordinates; the first nonzero one is declared.
    pub fn rational(ring: &Arc<PolyRing>, coords: &[BigRational]) -> Result<Self, PolyError> {
        let nonzero = coords
            .iter()
            .position(|q| !q.is_zero())
            .ok_or(PolyError::ZeroCoordinate(0))?;
        let coords = coords.iter().map(|q| SparsePoly::rational(ring, q.clone())).collect();
        Self::new(coords, nonzero)
    }

    pub fn coords(&self) -> &[SparsePoly] {
        &self.coords
    }

    pub fn nonzero_index(&self) -> usize {
        self.nonzero
    }

    /// Evaluates `f` (whose variables are the point's coordinates, in order)
    /// at this point.
    pub fn evaluate(&self, f: &SparsePoly) -> Result<SparsePoly, PolyError> {
        let vars = f.ring().variables();
        if vars.len() != self.coords.len() {
            return Err(PolyError::Arity {
                expected: vars.len(),
                found: self.coords.len(),
            });
        }
        let assignment: Vec<(&str, SparsePoly)> = vars
            .iter()
            .map(String::as_str)
            .zip(self.coords.iter().cloned())
            .collect();
        f.substitute(&assignment, self.coords[0].ring())
    }
}

/// Order of vanishing of the homogeneous `f` at a rational point: the lowest
/// degree in the affine chart centred at the point. Zero means the point is
/// off the curve and one means it is a smooth point.
pub fn multiplicity_at_point(f: &SparsePoly, point: &[BigRational]) -> Result<u32, PolyError> {
    let ring = f.ring();
    if point.len() != ring.nvars() {
        return Err(PolyError::Arity {
            expected: ring.nvars(),
            found: point.len(),
        });
    }
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.homogeneous_degree().is_none() {
        return Err(PolyError::NotHomogeneous);
    }
    let chart = point
        .iter()
        .position(|q| !q.is_zero())
        .ok_or(PolyError::ZeroCoordinate(0))?;
    let scale = point[chart].clone();
    let assignment: Vec<(&str, SparsePoly)> = ring
        .variables()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let shift = SparsePoly::rational(ring, &point[i] / &scale);
            let image = if i == chart {
                shift
            } else {
                &SparsePoly::var_index(ring, i) + &shift
            };
            (v.as_str(), image)
        })
        .collect();
    let local = f.substitute(&assignment, ring)?;
    Ok(local.terms().keys().map(|m| m.degree()).min().unwrap_or(0))
}

/// Whether `f` vanishes identically on the image of `map`, a vector of binary
/// forms of a common degree (zero components allowed).
pub fn check_parametrization(f: &SparsePoly, map: &[SparsePoly]) -> Result<bool, PolyError> {
    let vars = f.ring().variables();
    if vars.len() != map.len() {
        return Err(PolyError::Arity {
            expected: vars.len(),
            found: map.len(),
        });
    }
    if f.homogeneous_degree().is_none() && !f.is_zero() {
        return Err(PolyError::NotHomogeneous);
    }
    let target = map.first().ok_or(PolyError::Arity { expected: 1, found: 0 })?.ring().clone();
    let mut degree = None;
    for c in map.iter().filter(|c| !c.is_zero()) {
        let d = c.homogeneous_degree().ok_or(PolyError::DegreeMismatch)?;
        if *degree.get_or_insert(d) != d {
            return Err(PolyError::DegreeMismatch);
        }
    }
    let assignment: Vec<(&str, SparsePoly)> = vars.iter().map(String::as_str).zip(map.iter().cloned()).collect();
    Ok(f.substitute(&assignment, &target)?.is_zero())
}
