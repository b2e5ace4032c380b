use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{kernel_basis, modular_rank, rank, Echelon, ExactMatrix, RankCertificate, RankMode, Rationals};
use crate::poly::{Monomial, SparsePoly};

use super::ring::HypersurfaceRing;
use super::RingError;

/// Optional restrictions on a multiplication map.
#[derive(Clone, Debug, Default)]
pub struct MapOptions {
    /// Spanning vectors (in `R_a` coordinates) of a subspace to use as the
    /// first factor instead of all of `R_a`.
    pub source: Option<Vec<Vec<BigRational>>>,
    /// Vectors in `R_c` coordinates whose span is divided out of the target.
    pub quotient_by: Option<Vec<Vec<BigRational>>>,
}

/// Matrix of `A ⊗ R_b → R_c` (or `R_c / U`) in quotient coordinates. Column
/// `i · dim R_b + j` is the image of `source_i ⊗ rep_j`.
#[derive(Clone, Debug)]
pub struct MultiplicationMap {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub source: Vec<Vec<BigRational>>,
    pub second_dim: usize,
    pub quotient_by: Option<Vec<Vec<BigRational>>>,
    pub matrix: ExactMatrix,
}

impl MultiplicationMap {
    pub fn source_dim(&self) -> usize {
        self.source.len()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }
}

pub fn multiplication_map(ring: &HypersurfaceRing, a: u32, b: u32, options: MapOptions) -> Result<MultiplicationMap, RingError> {
    let sigma = ring.socle_degree();
    let c = a + b;
    if c > sigma + 1 {
        return Err(RingError::BadDegree {
            degree: c,
            reason: "target degree exceeds socle degree + 1",
        });
    }
    let pa = ring.piece(a);
    let pb = ring.piece(b);
    let pc = ring.piece(c);
    let dim_a = pa.quotient_dim();
    let source = match options.source {
        Some(s) => {
            if s.iter().any(|v| v.len() != dim_a) {
                return Err(RingError::BadVector { expected: dim_a });
            }
            s
        }
        None => unit_vectors(dim_a),
    };
    let reps_a: Vec<Monomial> = pa.representatives().into_iter().cloned().collect();
    let reps_b: Vec<Monomial> = pb.representatives().into_iter().cloned().collect();

    // Optional projection R_c -> R_c / U via the free columns of U's echelon.
    let projection = match &options.quotient_by {
        Some(u) => {
            let mut ech = Echelon::new(Rationals, pc.quotient_dim());
            for v in u {
                if v.len() != pc.quotient_dim() {
                    return Err(RingError::BadVector { expected: pc.quotient_dim() });
                }
                ech.insert_dense(v.clone());
            }
            Some(ech)
        }
        None => None,
    };
    let target_cols: Vec<usize> = match &projection {
        Some(e) => e.free_columns(),
        None => (0..pc.quotient_dim()).collect(),
    };

    let mut matrix = ExactMatrix::zeros(target_cols.len(), source.len() * reps_b.len());
    for (i, s) in source.iter().enumerate() {
        for (j, mb) in reps_b.iter().enumerate() {
            let mut acc = vec![BigRational::zero(); pc.quotient_dim()];
            for (k, coeff) in s.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (t, x) in pc.normal_form_of_monomial(&reps_a[k].mul(mb)) {
                    acc[*t] += coeff * x;
                }
            }
            if let Some(e) = &projection {
                e.reduce_dense(&mut acc);
            }
            for (row, &tc) in target_cols.iter().enumerate() {
                if !acc[tc].is_zero() {
                    matrix.set(row, i * reps_b.len() + j, acc[tc].clone());
                }
            }
        }
    }
    Ok(MultiplicationMap {
        a,
        b,
        c,
        source,
        second_dim: reps_b.len(),
        quotient_by: options.quotient_by,
        matrix,
    })
}

fn unit_vectors(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            let mut v = vec![BigRational::zero(); n];
            v[i] = BigRational::from_integer(1.into());
            v
        })
        .collect()
}

/// Basis (in source coordinates) of `{ω : ω · R_b = 0}`. Always exact.
pub fn left_kernel(map: &MultiplicationMap) -> Vec<Vec<BigRational>> {
    let n = map.source_dim();
    let rows = map.target_dim() * map.second_dim;
    if n == 0 {
        return Vec::new();
    }
    // Row (j, r) collects entry r of ω · rep_j as a linear form in ω.
    let mut stacked = ExactMatrix::zeros(rows, n);
    for j in 0..map.second_dim {
        for r in 0..map.target_dim() {
            for i in 0..n {
                let x = map.matrix.get(r, i * map.second_dim + j);
                if !x.is_zero() {
                    stacked.set(j * map.target_dim() + r, i, x.clone());
                }
            }
        }
    }
    kernel_basis(&stacked)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityCheck {
    pub surjective: bool,
    pub target_dim: usize,
    pub certificate: RankCertificate,
}

/// Rank against the target dimension. A modular full rank certifies; a
/// modular shortfall falls back to exact elimination.
pub fn is_surjective(map: &MultiplicationMap, mode: RankMode) -> Result<SurjectivityCheck, RingError> {
    let target_dim = map.target_dim();
    if let RankMode::Modular(p) = mode {
        let cert = modular_rank(&map.matrix, p)?;
        if cert.rank == target_dim {
            return Ok(SurjectivityCheck {
                surjective: true,
                target_dim,
                certificate: cert,
            });
        }
    }
    let r = rank(&map.matrix);
    let mut certificate = RankCertificate::exact(r);
    if mode != RankMode::Exact {
        certificate.note = "modular rank fell short; decided by exact elimination".into();
    }
    Ok(SurjectivityCheck {
        surjective: r == target_dim,
        target_dim,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingCheck {
    pub k: u32,
    pub dim_k: usize,
    pub dim_dual: usize,
    pub rank: usize,
    pub nondegenerate: bool,
}

/// `R_k × R_{σ−k} → R_σ` is a perfect pairing: equal dimensions and a full
/// rank pairing matrix.
pub fn macaulay_pairing_check(ring: &HypersurfaceRing, k: u32) -> Result<PairingCheck, RingError> {
    let sigma = ring.socle_degree();
    if k > sigma {
        return Err(RingError::BadDegree {
            degree: k,
            reason: "pairing degree exceeds the socle degree",
        });
    }
    let socle = ring.piece(sigma);
    if socle.quotient_dim() != 1 {
        return Err(RingError::SocleNotOneDimensional(socle.quotient_dim()));
    }
    let map = multiplication_map(ring, k, sigma - k, MapOptions::default())?;
    let dim_k = map.source_dim();
    let dim_dual = map.second_dim;
    let pairing = ExactMatrix::new(dim_k, dim_dual, map.matrix.row(0).to_vec())?;
    let r = rank(&pairing);
    Ok(PairingCheck {
        k,
        dim_k,
        dim_dual,
        rank: r,
        nondegenerate: dim_k == dim_dual && r == dim_k,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityVerdict {
    pub a: u32,
    pub b: u32,
    /// `R_{σ−a−b} ⊗ R_b → R_{σ−a}`.
    pub surjectivity: SurjectivityCheck,
    pub pairing: PairingCheck,
    pub no_left_kernel: bool,
}

/// If `R_{σ−a−b} · R_b = R_{σ−a}` and `R_a × R_{σ−a}` is perfect, then
/// `ω · R_b = 0` forces `ω · R_{σ−a} = 0` and so `ω = 0`.
pub fn left_kernel_via_duality(ring: &HypersurfaceRing, a: u32, b: u32, mode: RankMode) -> Result<DualityVerdict, RingError> {
    let sigma = ring.socle_degree();
    if a + b > sigma {
        return Err(RingError::BadDegree {
            degree: a + b,
            reason: "a + b exceeds the socle degree",
        });
    }
    let map = multiplication_map(ring, sigma - a - b, b, MapOptions::default())?;
    let surjectivity = is_surjective(&map, mode)?;
    let pairing = macaulay_pairing_check(ring, a)?;
    let no_left_kernel = surjectivity.surjective && pairing.nondegenerate;
    Ok(DualityVerdict {
        a,
        b,
        surjectivity,
        pairing,
        no_left_kernel,
    })
}

/// Lower bound, uniform over all nonzero linear forms `ℓ`, for the rank of
/// `ℓ · : R_b → R_{b+1}` when the Jacobian ideal is monomial.
///
/// Writes `ℓ = Σ c_i x_i` and lets `x_i` be the largest variable with
/// `c_i ≠ 0` in the term order. For each standard monomial `m` with `x_i·m`
/// standard, the leading term of `ℓ·m` after reduction is `x_i·m` itself,
/// and these are distinct, so the rank is at least the count for `x_i`.
pub fn uniform_mult_rank_bound(ring: &HypersurfaceRing, b: u32) -> Result<usize, RingError> {
    let generators: Vec<Monomial> = ring
        .partials()
        .iter()
        .map(|g| {
            if g.num_terms() == 1 {
                Ok(g.leading_term().expect("one term").0.clone())
            } else {
                Err(RingError::IdealNotMonomial)
            }
        })
        .collect::<Result<_, _>>()?;
    let in_ideal = |m: &Monomial| generators.iter().any(|g| g.divides(m));
    let nvars = ring.nvars();
    let standard: Vec<Monomial> = crate::poly::enumerate_monomials(nvars, b)
        .into_iter()
        .filter(|m| !in_ideal(m))
        .collect();
    Ok((0..nvars)
        .map(|i| {
            let x = Monomial::var(nvars, i, 1);
            standard.iter().filter(|m| !in_ideal(&m.mul(&x))).count()
        })
        .min()
        .unwrap_or(0))
}

/// Rank of multiplication by one linear form `ℓ : R_b → R_{b+1}`.
pub fn linear_form_rank(ring: &HypersurfaceRing, linear: &SparsePoly, b: u32) -> Result<usize, RingError> {
    let p1 = ring.piece(1);
    let coords = p1.normal_form(linear)?;
    let map = multiplication_map(
        ring,
        1,
        b,
        MapOptions {
            source: Some(vec![coords]),
            quotient_by: None,
        },
    )?;
    Ok(rank(&map.matrix))
}

/// Basis of `{v ∈ R_k : φ(v) = 0}` for a nonzero functional in quotient
/// coordinates.
pub fn functional_kernel(ring: &HypersurfaceRing, k: u32, functional: &[BigRational]) -> Result<Vec<Vec<BigRational>>, RingError> {
    let dim = ring.dim(k);
    if functional.len() != dim {
        return Err(RingError::BadVector { expected: dim });
    }
    let phi = ExactMatrix::from_rows(vec![functional.to_vec()])?;
    Ok(kernel_basis(&phi))
}

/// The functional `v ↦ socle coefficient of v·g` on `R_{σ − deg g}`; the
/// kernel is the subspace dual to the line through `g`.
pub fn pairing_functional(ring: &HypersurfaceRing, g: &SparsePoly) -> Result<Vec<BigRational>, RingError> {
    let sigma = ring.socle_degree();
    let e = g.homogeneous_degree().ok_or(RingError::NotHomogeneous)?;
    if e > sigma {
        return Err(RingError::BadDegree {
            degree: e,
            reason: "representative degree exceeds the socle degree",
        });
    }
    let socle = ring.piece(sigma);
    if socle.quotient_dim() != 1 {
        return Err(RingError::SocleNotOneDimensional(socle.quotient_dim()));
    }
    let k = sigma - e;
    let pk = ring.piece(k);
    let g = g.to_ring(ring.form().ring())?;
    pk.representatives()
        .into_iter()
        .map(|m| {
            let prod = g.mul_term(m, &crate::poly::Coeff::one());
            Ok(socle.normal_form(&prod)?.remove(0))
        })
        .collect()
}

