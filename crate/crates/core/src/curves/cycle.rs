use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{minimal_multiple_in_lattice, IntMatrix, LatticeMultiple};
use crate::poly::{PolyRing, SparsePoly};

use super::univariate::UniPoly;
use super::CurveError;

/// Named points of the ambient projective space, compared projectively.
#[derive(Clone, Debug, Default)]
pub struct PointTable {
    points: Vec<(String, Vec<BigRational>)>,
}

impl PointTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: impl Into<String>, coords: Vec<BigRational>) {
        self.points.push((label.into(), coords));
    }

    pub fn with_ints(mut self, label: &str, coords: &[i64]) -> Self {
        self.insert(label, coords.iter().map(|&c| BigRational::from_integer(c.into())).collect());
        self
    }

    pub fn coords(&self, label: &str) -> Option<&[BigRational]> {
        self.points.iter().find(|(l, _)| l == label).map(|(_, c)| c.as_slice())
    }

    fn position(&self, coords: &[BigRational]) -> Option<usize> {
        self.points.iter().position(|(_, c)| proportional(c, coords))
    }

    /// Declared label, or the normalized coordinates as text.
    pub fn label_for(&self, coords: &[BigRational]) -> String {
        match self.position(coords) {
            Some(i) => self.points[i].0.clone(),
            None => {
                let norm = normalize(coords);
                let cs: Vec<String> = norm.iter().map(ToString::to_string).collect();
                format!("({})", cs.join(":"))
            }
        }
    }

    fn order_key(&self, label: &str) -> (usize, String) {
        let i = self.points.iter().position(|(l, _)| l == label).unwrap_or(usize::MAX);
        (i, label.to_string())
    }
}

fn proportional(a: &[BigRational], b: &[BigRational]) -> bool {
    a.len() == b.len()
        && a.iter().any(|x| !x.is_zero())
        && b.iter().any(|x| !x.is_zero())
        && (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn normalize(c: &[BigRational]) -> Vec<BigRational> {
    match c.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            c.iter().map(|x| x / &lead).collect()
        }
        None => c.to_vec(),
    }
}

/// Irreducible-over-the-rational-points remainder of a binary form: a
/// square-free factor without rational roots, of the given degree, occurring
/// with the given multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualFactor {
    pub degree: u32,
    pub multiplicity: u32,
}

/// Zero cycle of a binary form: rational roots `(u : v)` with multiplicities,
/// plus whatever has no rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCycle {
    pub degree: u32,
    pub roots: Vec<([BigRational; 2], u32)>,
    pub residual: Vec<ResidualFactor>,
}

impl BinaryCycle {
    /// Rational multiplicities plus residual degrees; equals `degree`.
    pub fn total_degree(&self) -> u32 {
        self.roots.iter().map(|(_, m)| m).sum::<u32>()
            + self.residual.iter().map(|r| r.degree * r.multiplicity).sum::<u32>()
    }
}

/// Sets `x_line = 0` in `f`.
pub fn restrict_to_line(f: &SparsePoly, line: &str) -> Result<SparsePoly, CurveError> {
    let i = f.ring().index_of(line)?;
    let mut out = SparsePoly::zero(f.ring());
    for (m, c) in f.terms() {
        if m.exponent(i) == 0 {
            out.add_term(m.clone(), c.clone());
        }
    }
    if out.is_zero() {
        return Err(CurveError::LineIsComponent(line.to_string()));
    }
    Ok(out)
}

/// Splits a nonzero binary form in the variables `u`, `v` over Q. Any other
/// variable occurring in `g` is an error.
pub fn binary_form_cycle(g: &SparsePoly, u: &str, v: &str) -> Result<BinaryCycle, CurveError> {
    let ring = g.ring();
    let (ui, vi) = (ring.index_of(u)?, ring.index_of(v)?);
    if g.is_zero() {
        return Err(CurveError::ZeroForm);
    }
    if let Some(p) = g.support_variables().into_iter().find(|&i| i != ui && i != vi) {
        return Err(CurveError::ParameterPresent(ring.variables()[p].clone()));
    }
    let degree = g.homogeneous_degree().ok_or(CurveError::NotHomogeneous)?;
    let mut coeffs = vec![BigRational::zero(); degree as usize + 1];
    for (m, c) in g.terms() {
        let q = c.as_rational().ok_or(CurveError::NotRational)?;
        coeffs[m.exponent(ui) as usize] = q.clone();
    }
    // Dehomogenize at v = 1; the missing degree sits at (1 : 0).
    let h = UniPoly::new(coeffs);
    let at_infinity = degree - h.degree().expect("nonzero form") as u32;
    let mut roots = Vec::new();
    if at_infinity > 0 {
        roots.push(([BigRational::one(), BigRational::zero()], at_infinity));
    }
    let mut residual = Vec::new();
    for (part, mult) in h.square_free_parts() {
        let mut rest = part.clone();
        for r in part.rational_roots() {
            roots.push(([r.clone(), BigRational::one()], mult));
            let lin = UniPoly::new(vec![-r, BigRational::one()]);
            rest = rest.div_rem(&lin).0;
        }
        if let Some(d) = rest.degree().filter(|&d| d > 0) {
            residual.push(ResidualFactor {
                degree: d as u32,
                multiplicity: mult,
            });
        }
    }
    Ok(BinaryCycle {
        degree,
        roots,
        residual,
    })
}

/// Formal sum of labeled rational points with nonzero multiplicities, plus
/// any part of the intersection without rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorCycle {
    pub entries: Vec<(String, i64)>,
    pub residual: Vec<ResidualFactor>,
    pub degree: u32,
}

impl DivisorCycle {
    pub fn multiplicity(&self, label: &str) -> i64 {
        self.entries.iter().find(|(l, _)| l == label).map_or(0, |(_, m)| *m)
    }

    pub fn total_degree(&self) -> i64 {
        self.entries.iter().map(|(_, m)| m).sum::<i64>()
            + self.residual.iter().map(|r| (r.degree * r.multiplicity) as i64).sum::<i64>()
    }

    pub fn as_map(&self) -> BTreeMap<String, i64> {
        self.entries.iter().cloned().collect()
    }
}

impl fmt::Display for DivisorCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .entries
            .iter()
            .map(|(l, m)| if *m == 1 { l.clone() } else { format!("{m}{l}") })
            .collect();
        for r in &self.residual {
            parts.push(format!("[no rational point: degree {} x{}]", r.degree, r.multiplicity));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// How a line section was evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionMode {
    /// The restricted form was free of parameters.
    Symbolic,
    /// Parameters were set to the listed sample values first.
    Sampled(Vec<(String, BigRational)>),
}

impl fmt::Display for SectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionMode::Symbolic => write!(f, "symbolic"),
            SectionMode::Sampled(vals) => {
                let s: Vec<String> = vals.iter().map(|(n, v)| format!("{n}={v}")).collect();
                write!(f, "sampled {}", s.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSection {
    pub line: String,
    pub binary_form: String,
    pub cycle: DivisorCycle,
    pub mode: SectionMode,
}

/// Plane section `F = x_plane = 0` of a surface, viewed as a plane curve.
///
/// `coordinates` names the projective coordinates of the ambient space; every
/// other ring variable is a parameter.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    pub name: String,
    pub form: SparsePoly,
    pub plane: String,
    pub coordinates: Vec<String>,
}

impl PlaneCurve {
    pub fn new(name: &str, surface: &SparsePoly, coordinates: &[&str], plane: &str) -> Result<Self, CurveError> {
        if !coordinates.contains(&plane) {
            return Err(CurveError::NotACoordinate(plane.to_string()));
        }
        let form = restrict_to_line(surface, plane).map_err(|_| CurveError::PlaneIsComponent(plane.to_string()))?;
        Ok(PlaneCurve {
            name: name.to_string(),
            form,
            plane: plane.to_string(),
            coordinates: coordinates.iter().map(|s| s.to_string()).collect(),
        })
    }

    /// The three coordinates of the plane, in ambient order.
    pub fn plane_coordinates(&self) -> Vec<&str> {
        self.coordinates
            .iter()
            .map(String::as_str)
            .filter(|c| *c != self.plane)
            .collect()
    }

    /// The curve equation in a ring of its three plane coordinates, with the
    /// given parameter values substituted.
    pub fn plane_form(&self, params: &[(String, BigRational)]) -> Result<SparsePoly, CurveError> {
        let vals: Vec<(&str, BigRational)> = params.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
        let f = self.form.evaluate_vars(&vals)?;
        let ring = PolyRing::rational(self.plane_coordinates());
        Ok(f.to_ring(&ring)?)
    }

    /// Intersection cycle with the line `x_line = 0` of the plane. Parameters
    /// surviving the restriction are replaced by `samples`.
    pub fn intersect_line(
        &self,
        line: &str,
        table: &PointTable,
        samples: &[(String, BigRational)],
    ) -> Result<LineSection, CurveError> {
        if line == self.plane || !self.coordinates.iter().any(|c| c == line) {
            return Err(CurveError::NotACoordinate(line.to_string()));
        }
        let mut g = restrict_to_line(&self.form, line)?;
        let ring = g.ring().clone();
        let coord_idx: Vec<usize> = self
            .coordinates
            .iter()
            .map(|c| ring.index_of(c))
            .collect::<Result<_, _>>()?;
        let params: Vec<String> = g
            .support_variables()
            .into_iter()
            .filter(|i| !coord_idx.contains(i))
            .map(|i| ring.variables()[i].clone())
            .collect();
        let mode = if params.is_empty() {
            SectionMode::Symbolic
        } else {
            let mut used = Vec::new();
            for p in &params {
                let (_, v) = samples
                    .iter()
                    .find(|(n, _)| n == p)
                    .ok_or_else(|| CurveError::ParameterPresent(p.clone()))?;
                used.push((p.clone(), v.clone()));
            }
            let vals: Vec<(&str, BigRational)> = used.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
            g = g.evaluate_vars(&vals)?;
            if g.is_zero() {
                return Err(CurveError::LineIsComponent(line.to_string()));
            }
            SectionMode::Sampled(used)
        };
        let free: Vec<&str> = self
            .coordinates
            .iter()
            .map(String::as_str)
            .filter(|c| *c != self.plane && *c != line)
            .collect();
        let (u, v) = (free[0], free[1]);
        let bc = binary_form_cycle(&g, u, v)?;
        let mut entries: Vec<(String, i64)> = Vec::new();
        for ([a, b], mult) in &bc.roots {
            let coords: Vec<BigRational> = self
                .coordinates
                .iter()
                .map(|c| {
                    if c == u {
                        a.clone()
                    } else if c == v {
                        b.clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            entries.push((table.label_for(&coords), *mult as i64));
        }
        entries.sort_by_key(|(l, _)| table.order_key(l));
        Ok(LineSection {
            line: line.to_string(),
            binary_form: g.to_string(),
            cycle: DivisorCycle {
                entries,
                residual: bc.residual,
                degree: bc.degree,
            },
            mode,
        })
    }
}

/// Integer relations among labeled points, one row per difference of
/// consecutive hyperplane sections.
#[derive(Clone, Debug)]
pub struct RelationLattice {
    pub basis: Vec<String>,
    pub relations: IntMatrix,
    pub sections: Vec<LineSection>,
}

pub fn hyperplane_relations(
    curve: &PlaneCurve,
    lines: &[&str],
    table: &PointTable,
    samples: &[(String, BigRational)],
) -> Result<RelationLattice, CurveError> {
    let mut sections = Vec::new();
    for l in lines {
        let s = curve.intersect_line(l, table, samples)?;
        if !s.cycle.residual.is_empty() {
            return Err(CurveError::NonRationalIntersection {
                curve: curve.name.clone(),
                line: l.to_string(),
            });
        }
        sections.push(s);
    }
    let mut basis: Vec<String> = Vec::new();
    for s in &sections {
        for (l, _) in &s.cycle.entries {
            if !basis.contains(l) {
                basis.push(l.clone());
            }
        }
    }
    basis.sort_by_key(|l| table.order_key(l));
    let rows: Vec<Vec<BigInt>> = sections
        .windows(2)
        .map(|w| {
            basis
                .iter()
                .map(|l| BigInt::from(w[0].cycle.multiplicity(l) - w[1].cycle.multiplicity(l)))
                .collect()
        })
        .collect();
    let relations = IntMatrix::from_rows(basis.len(), rows)?;
    Ok(RelationLattice {
        basis,
        relations,
        sections,
    })
}

/// `n` with `n·(p1 − p2)` in the relation lattice, plus the witness. This
/// certifies rational equivalence at `n`; it is minimal only within the
/// lattice spanned by the hyperplane relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceOrder {
    pub order: BigInt,
    pub witness: LatticeMultiple,
}

pub fn minimal_equivalence_order(lattice: &RelationLattice, p1: &str, p2: &str) -> Result<Option<EquivalenceOrder>, CurveError> {
    let target = difference_vector(lattice, p1, p2)?;
    Ok(minimal_multiple_in_lattice(&lattice.relations, &target)?.map(|w| EquivalenceOrder {
        order: w.multiple.clone(),
        witness: w,
    }))
}

/// Whether `n·(p1 − p2)` lies in the relation lattice.
pub fn holds_at(lattice: &RelationLattice, p1: &str, p2: &str, n: &BigInt) -> Result<bool, CurveError> {
    let target: Vec<BigInt> = difference_vector(lattice, p1, p2)?.into_iter().map(|x| x * n).collect();
    Ok(matches!(
        minimal_multiple_in_lattice(&lattice.relations, &target)?,
        Some(w) if w.multiple.is_one()
    ))
}

fn difference_vector(lattice: &RelationLattice, p1: &str, p2: &str) -> Result<Vec<BigInt>, CurveError> {
    let find = |l: &str| {
        lattice
            .basis
            .iter()
            .position(|b| b == l)
            .ok_or_else(|| CurveError::UnknownLabel(l.to_string()))
    };
    let (i, j) = (find(p1)?, find(p2)?);
    let mut v = vec![BigInt::zero(); lattice.basis.len()];
    v[i] += 1;
    v[j] -= 1;
    Ok(v)
}

pub fn lcm_orders<'a>(orders: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    orders.into_iter().fold(BigInt::one(), |acc, n| acc.lcm(n))
}

