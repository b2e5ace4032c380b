use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::exact::{modular_rank, ExactMatrix, PrimeField, RankCertificate, RankMode, Rationals};
use crate::poly::{enumerate_monomials, SparsePoly};

use super::piece::GradedPiece;
use super::RingError;

/// Jacobian ring `S / (∂F/∂x_0, …, ∂F/∂x_n)` of a homogeneous form `F` with
/// rational coefficients. Graded pieces are built on first use and cached.
type PieceCache<K, F> = Mutex<BTreeMap<K, Arc<GradedPiece<F>>>>;

#[derive(Debug)]
pub struct HypersurfaceRing {
    form: SparsePoly,
    degree: u32,
    partials: Vec<SparsePoly>,
    exact: PieceCache<u32, Rationals>,
    modular: PieceCache<(u64, u32), PrimeField>,
}

impl HypersurfaceRing {
    pub fn new(form: SparsePoly) -> Result<Self, RingError> {
        if !form.is_rational() {
            return Err(RingError::NotRational);
        }
        let degree = form.homogeneous_degree().ok_or(RingError::NotHomogeneous)?;
        if degree < 2 {
            return Err(RingError::DegreeTooSmall(degree));
        }
        let partials = form.gradient();
        Ok(HypersurfaceRing {
            form,
            degree,
            partials,
            exact: Mutex::new(BTreeMap::new()),
            modular: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn form(&self) -> &SparsePoly {
        &self.form
    }

    pub fn nvars(&self) -> usize {
        self.form.ring().nvars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `nvars · (d − 2)`, the top degree of a smooth hypersurface's ring.
    pub fn socle_degree(&self) -> u32 {
        self.nvars() as u32 * (self.degree - 2)
    }

    pub fn partials(&self) -> &[SparsePoly] {
        &self.partials
    }

    pub fn piece(&self, k: u32) -> Arc<GradedPiece<Rationals>> {
        let mut cache = self.exact.lock().expect("piece cache poisoned");
        cache
            .entry(k)
            .or_insert_with(|| {
                Arc::new(
                    GradedPiece::build(Rationals, &self.partials, k, self.degree - 1)
                        .expect("rational partials"),
                )
            })
            .clone()
    }

    pub fn piece_mod(&self, p: u64, k: u32) -> Result<Arc<GradedPiece<PrimeField>>, RingError> {
        if let Some(piece) = self.modular.lock().expect("piece cache poisoned").get(&(p, k)) {
            return Ok(piece.clone());
        }
        let field = PrimeField::new(p)?;
        let piece = Arc::new(GradedPiece::build(field, &self.partials, k, self.degree - 1)?);
        self.modular
            .lock()
            .expect("piece cache poisoned")
            .insert((p, k), piece.clone());
        Ok(piece)
    }

    pub fn dim(&self, k: u32) -> usize {
        self.piece(k).quotient_dim()
    }

    /// Columns are the generators `m · ∂F/∂x_i`, rows the degree-`k` monomials.
    pub fn jacobian_span_matrix(&self, k: u32) -> ExactMatrix {
        let nvars = self.nvars();
        let rows = enumerate_monomials(nvars, k);
        let index: std::collections::HashMap<_, _> = rows.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let multipliers = if k + 1 >= self.degree {
            enumerate_monomials(nvars, k + 1 - self.degree)
        } else {
            Vec::new()
        };
        let cols = multipliers.len() * self.partials.len();
        let mut m = ExactMatrix::zeros(rows.len(), cols);
        let mut col = 0;
        for g in &self.partials {
            for mult in &multipliers {
                for (mono, c) in g.terms() {
                    let q = c.as_rational().expect("rational partials").clone();
                    m.set(index[&mono.mul(mult)], col, q);
                }
                col += 1;
            }
        }
        m
    }
}

/// Dimensions of `R_0, …, R_σ`, by exact elimination.
pub fn hilbert_function(ring: &HypersurfaceRing) -> Vec<usize> {
    (0..=ring.socle_degree()).map(|k| ring.dim(k)).collect()
}

/// Same table from eliminations modulo `p`. Each entry is an upper bound for
/// the dimension over Q.
pub fn hilbert_function_mod(ring: &HypersurfaceRing, p: u64) -> Result<Vec<usize>, RingError> {
    (0..=ring.socle_degree())
        .map(|k| Ok(ring.piece_mod(p, k)?.quotient_dim()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessCheck {
    pub smooth: bool,
    /// Rank of the Jacobian span in degree `σ + 1`.
    pub certificate: RankCertificate,
    pub ambient_dim: usize,
}

/// Smooth iff the ring vanishes in degree `σ + 1`. In modular mode a full rank
/// mod `p` certifies smoothness; otherwise the exact rank decides.
pub fn is_smooth_artinian(ring: &HypersurfaceRing, mode: RankMode) -> Result<SmoothnessCheck, RingError> {
    let k = ring.socle_degree() + 1;
    if let RankMode::Modular(p) = mode {
        let piece = ring.piece_mod(p, k)?;
        let n = piece.ambient_dim();
        if piece.ideal_rank() == n {
            return Ok(SmoothnessCheck {
                smooth: true,
                certificate: RankCertificate {
                    rank: n,
                    mode,
                    note: format!("rank {n} mod {p} of the degree-{k} Jacobian span meets the monomial count"),
                },
                ambient_dim: n,
            });
        }
    }
    let piece = ring.piece(k);
    let n = piece.ambient_dim();
    let mut certificate = RankCertificate::exact(piece.ideal_rank());
    if mode != RankMode::Exact {
        certificate.note = "modular rank fell short; decided by exact elimination".into();
    }
    Ok(SmoothnessCheck {
        smooth: piece.quotient_dim() == 0,
        certificate,
        ambient_dim: n,
    })
}

/// Modular certificate for the rank of the degree-`k` Jacobian span matrix.
pub fn jacobian_span_rank_mod(ring: &HypersurfaceRing, k: u32, p: u64) -> Result<RankCertificate, RingError> {
    Ok(modular_rank(&ring.jacobian_span_matrix(k), p)?)
}
