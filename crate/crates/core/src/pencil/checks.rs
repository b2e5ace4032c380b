use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::curves::UniPoly;
use crate::poly::{coefficient_in, PolyError, SparsePoly};
use crate::report::VerificationStep;

use super::PencilScenario;

fn failure(step: &str, citation: &str, e: PolyError) -> VerificationStep {
    let witness = match e {
        PolyError::NotDivisible { remainder } => format!("not divisible, remainder {remainder}"),
        other => other.to_string(),
    };
    VerificationStep::fail(step, citation, witness)
}

/// `F_t` under the blow-up substitution equals `blowup_factor · F'`.
pub fn verify_blowup_factorization(s: &PencilScenario) -> VerificationStep {
    const NAME: &str = "blow-up factorization";
    const CITE: &str = "F_t(x+z, y+λz, y−λz, x−z) = 8z·F'(x,y,z,λ)";
    let assignment: Vec<(&str, SparsePoly)> = s.substitution.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    let pulled = match s.family.substitute(&assignment, &s.plane_ring) {
        Ok(p) => p,
        Err(e) => return failure(NAME, CITE, e),
    };
    let quotient = match pulled.exact_divide(&s.blowup_factor) {
        Ok(q) => q,
        Err(e) => return failure(NAME, CITE, e),
    };
    let diff = &quotient - &s.residual;
    VerificationStep::check(NAME, CITE, diff.is_zero(), format!("quotient − F' = {diff}"))
        .with_detail("quotient_terms", quotient.num_terms())
}

/// Declared partial derivatives of `F'` agree with the formal ones.
pub fn verify_partials(s: &PencilScenario) -> VerificationStep {
    const NAME: &str = "partial derivatives of F'";
    const CITE: &str = "∂F'/∂x, ∂F'/∂y, ∂F'/∂z as declared";
    let mut bad = Vec::new();
    for (c, declared) in s.coords.iter().zip(&s.partials) {
        match s.residual.partial_derivative(c) {
            Ok(formal) => {
                let diff = declared - &formal;
                if !diff.is_zero() {
                    bad.push(format!("∂/∂{c}: declared − formal = {diff}"));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    VerificationStep::check(NAME, CITE, bad.is_empty(), bad.join("; "))
}

/// For each base point `P_i`: membership on `F' = 0`, then agreement of the
/// declared partials at `P_i` with the declared tangent coefficients.
pub fn tangent_line_identities(s: &PencilScenario) -> Vec<VerificationStep> {
    let mut out = Vec::new();
    for i in 0..3 {
        let p = &s.base_points[i];
        let name = format!("P{} lies on F'", i + 1);
        let cite = format!("F'(P{}) = 0 using a³ = −λ", i + 1);
        out.push(match s.at_point(&s.residual, p) {
            Ok(v) => VerificationStep::check(&name, &cite, v.is_zero(), format!("F'(P{}) = {v}", i + 1)),
            Err(e) => failure(&name, &cite, e),
        });

        let name = format!("T{} is the tangent at P{}", i + 1, i + 1);
        let cite = format!("∇F'(P{}) = coefficients of T{}", i + 1, i + 1);
        let mut bad = Vec::new();
        for j in 0..3 {
            match s.at_point(&s.partials[j], p) {
                Ok(g) => {
                    let diff = &g - &s.tangents[i][j];
                    if !diff.is_zero() {
                        bad.push(format!("∂/∂{} at P{}: residual {diff}", s.coords[j], i + 1));
                    }
                }
                Err(e) => bad.push(e.to_string()),
            }
        }
        out.push(VerificationStep::check(&name, &cite, bad.is_empty(), bad.join("; ")));
    }
    out
}

/// All six tangent identities together with the partial-derivative check.
pub fn verify_tangent_lines(s: &PencilScenario) -> VerificationStep {
    const NAME: &str = "tangent lines";
    const CITE: &str = "T_i = 3a²w^{2(i−1)}x + 3λy + λt(a²w^{2(i−1)} − 1)z is tangent at P_i";
    let mut steps = tangent_line_identities(s);
    steps.push(verify_partials(s));
    let bad: Vec<String> = steps
        .iter()
        .filter_map(|st| st.witness().map(|w| format!("{}: {w}", st.name)))
        .collect();
    VerificationStep::check(NAME, CITE, bad.is_empty(), bad.join("; "))
}

fn linear_form(s: &PencilScenario, coeffs: &[SparsePoly; 3], point: &[SparsePoly; 3]) -> SparsePoly {
    let mut acc = SparsePoly::zero(&s.plane_ring);
    for (c, x) in coeffs.iter().zip(point) {
        acc = &acc + &(c * x);
    }
    acc
}

fn minors(a: &[SparsePoly; 3], b: &[SparsePoly; 3]) -> [SparsePoly; 3] {
    [
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        &(&a[0] * &b[2]) - &(&a[2] * &b[0]),
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
    ]
}

/// The three tangent lines pass through the declared point and are pairwise
/// distinct as lines.
pub fn verify_concurrency(s: &PencilScenario) -> VerificationStep {
    const NAME: &str = "tangent lines are concurrent";
    const CITE: &str = "T_1 ∩ T_2 ∩ T_3 = (−λt : t : 3)";
    let mut bad = Vec::new();
    for (i, t) in s.tangents.iter().enumerate() {
        let v = linear_form(s, t, &s.concurrency);
        if !v.is_zero() {
            bad.push(format!("T{} at the point: {v}", i + 1));
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if minors(&s.tangents[i], &s.tangents[j]).iter().all(SparsePoly::is_zero) {
            bad.push(format!("T{} and T{} coincide", i + 1, j + 1));
        }
    }
    let mut step = VerificationStep::check(NAME, CITE, bad.is_empty(), bad.join("; "));
    if let Some(d) = lambda_zero_degeneration(s) {
        step = step.with_detail("lambda_zero", d);
    }
    step
}

/// Describes the tangent configuration on the slice `λ = 0` (where `a = 0`).
pub fn lambda_zero_degeneration(s: &PencilScenario) -> Option<String> {
    let zero = SparsePoly::zero(&s.plane_ring);
    let assignment = [(s.lambda.as_str(), zero.clone()), (s.cube_root.as_str(), zero)];
    let lines: Vec<Vec<SparsePoly>> = s
        .tangents
        .iter()
        .map(|t| t.iter().map(|c| c.substitute_in_place(&assignment)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()
        .ok()?;
    let vanish: Vec<usize> = (0..3).filter(|&i| lines[i].iter().all(SparsePoly::is_zero)).collect();
    if !vanish.is_empty() {
        let names: Vec<String> = vanish.iter().map(|i| format!("T{}", i + 1)).collect();
        return Some(format!("at λ = 0 the equations of {} vanish identically", names.join(", ")));
    }
    let coincide: Vec<String> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .filter(|&&(i, j)| {
            let a: [SparsePoly; 3] = lines[i].clone().try_into().ok().unwrap();
            let b: [SparsePoly; 3] = lines[j].clone().try_into().ok().unwrap();
            minors(&a, &b).iter().all(SparsePoly::is_zero)
        })
        .map(|(i, j)| format!("T{}=T{}", i + 1, j + 1))
        .collect();
    (!coincide.is_empty()).then(|| format!("at λ = 0 the lines coincide: {}", coincide.join(", ")))
}

/// `F'` at the concurrency point divided by the declared factors equals the
/// declared `F''`.
pub fn verify_hyperelliptic_condition(s: &PencilScenario) -> VerificationStep {
    const NAME: &str = "hyperelliptic condition";
    const CITE: &str = "F'(−λt, t, 3) = tλ(λ−1)·F''_t(λ)";
    let mut value = match s.at_point(&s.residual, &s.concurrency) {
        Ok(v) => v,
        Err(e) => return failure(NAME, CITE, e),
    };
    let full = value.to_string();
    for f in &s.hyperelliptic_factors {
        value = match value.exact_divide(f) {
            Ok(q) => q,
            Err(e) => return failure(NAME, CITE, e).with_detail("value", &full),
        };
    }
    let diff = &value - &s.f_second;
    VerificationStep::check(
        NAME,
        CITE,
        diff.is_zero(),
        format!("quotient {value} differs from F'' by {diff}"),
    )
    .with_detail("value", full)
    .with_detail("quotient", value)
}

/// `den^k · F''(num/den) = 0` with `k` the λ-degree of `F''`, i.e. the
/// declared `λ(t) = num/den` is a root of the declared `F''`.
pub fn verify_lambda_identity(s: &PencilScenario) -> VerificationStep {
    const NAME: &str = "closed form of λ(t)";
    const CITE: &str = "λ(t) = −(4t²−6t−18)/(t²−18t+9) solves F''_t(λ) = 0";
    match clear_denominators(&s.f_second, &s.lambda, &s.lambda_numerator, &s.lambda_denominator) {
        Ok(v) => VerificationStep::check(NAME, CITE, v.is_zero(), format!("cleared residual {v}")),
        Err(e) => failure(NAME, CITE, e),
    }
}

/// `den^k · f(var = num/den)` where `k` is the degree of `f` in `var`.
pub fn clear_denominators(f: &SparsePoly, var: &str, num: &SparsePoly, den: &SparsePoly) -> Result<SparsePoly, PolyError> {
    let i = f.ring().index_of(var)?;
    if den.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let k = f.terms().keys().map(|m| m.exponent(i)).max().unwrap_or(0);
    let mut out = SparsePoly::zero(f.ring());
    for j in 0..=k {
        let c = coefficient_in(f, &[i], &[j]);
        if c.is_zero() {
            continue;
        }
        out = &out + &(&(&c * &num.pow(j)) * &den.pow(k - j));
    }
    Ok(out)
}

/// Euler's relation at the concurrency point: `3·F'(P) = Σ P_j ∂_j F'(P)`,
/// tying membership of the point to the tangent data.
pub fn euler_cross_check(s: &PencilScenario) -> VerificationStep {
    const NAME: &str = "Euler relation at the concurrency point";
    const CITE: &str = "deg F' · F'(P) = Σ P_j ∂F'/∂x_j(P)";
    let coord_idx: Vec<usize> = s.coords.iter().filter_map(|c| s.plane_ring.index_of(c).ok()).collect();
    let Some(d) = s.residual.homogeneous_degree_in(&coord_idx) else {
        return VerificationStep::fail(NAME, CITE, "F' is not homogeneous in the plane coordinates");
    };
    let run = || -> Result<SparsePoly, PolyError> {
        let lhs = s.at_point(&s.residual, &s.concurrency)?.scale(&crate::poly::Coeff::int(d as i64));
        let mut rhs = SparsePoly::zero(&s.plane_ring);
        for (j, c) in s.coords.iter().enumerate() {
            let g = s.at_point(&s.residual.partial_derivative(c)?, &s.concurrency)?;
            rhs = &rhs + &(&g * &s.concurrency[j]);
        }
        Ok(&lhs - &rhs)
    };
    match run() {
        Ok(diff) => VerificationStep::check(NAME, CITE, diff.is_zero(), format!("residual {diff}")),
        Err(e) => failure(NAME, CITE, e),
    }
}

/// The cycle's combinatorial shadow must be a nonzero vector.
pub fn verify_tau(tau: &[BigInt]) -> VerificationStep {
    const NAME: &str = "cycle shadow τ(Z) is nonzero";
    const CITE: &str = "τ(Z) ≠ 0 in Ker(Z^k → ⊕ Pic(Z_i)), so Z is not a sum Z_i ⊗ a_i";
    let text: Vec<String> = tau.iter().map(ToString::to_string).collect();
    let text = format!("({})", text.join(", "));
    let total: BigInt = tau.iter().sum();
    VerificationStep::check(NAME, CITE, tau.iter().any(|x| !x.is_zero()), format!("τ = {text} is zero"))
        .with_detail("tau", &text)
        .with_detail("sum", total)
}

/// A parameter condition under which the construction degenerates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneration {
    pub condition: String,
    pub reason: String,
    /// Defining polynomial in the parameter, when there is one.
    pub polynomial: Option<String>,
    pub discriminant: Option<BigRational>,
    pub rational_values: Vec<BigRational>,
}

fn univariate(p: &SparsePoly, var: &str) -> Option<UniPoly> {
    let i = p.ring().index_of(var).ok()?;
    let mut coeffs = Vec::new();
    for (m, c) in p.terms() {
        if (0..m.nvars()).any(|j| j != i && m.exponent(j) > 0) {
            return None;
        }
        let e = m.exponent(i) as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigRational::zero());
        }
        coeffs[e] = c.as_rational()?.clone();
    }
    Some(UniPoly::new(coeffs))
}

fn discriminant(u: &UniPoly) -> Option<BigRational> {
    (u.degree() == Some(2)).then(|| {
        let c = u.coeffs();
        &c[1] * &c[1] - BigRational::from_integer(4.into()) * &c[2] * &c[0]
    })
}

/// Parameter values where `λ(t)` hits a pole, `0` or `1`, plus the ends of
/// the family. Conditions without rational solutions are listed with their
/// discriminant.
pub fn report_degenerate_parameters(s: &PencilScenario) -> Vec<Degeneration> {
    let t = s.parameter.as_str();
    let mut out = vec![
        Degeneration {
            condition: format!("{t} = 0"),
            reason: "the deformation term vanishes and the condition holds for every λ".into(),
            polynomial: None,
            discriminant: None,
            rational_values: vec![BigRational::zero()],
        },
        Degeneration {
            condition: format!("{t} = ∞"),
            reason: "the family degenerates to the product of the four planes".into(),
            polynomial: None,
            discriminant: None,
            rational_values: Vec::new(),
        },
    ];
    let cases = [
        (&s.lambda_denominator, "pole of λ(t)"),
        (&s.lambda_numerator, "λ(t) = 0, where the tangent-line equations vanish"),
        (&(&s.lambda_numerator - &s.lambda_denominator), "λ(t) = 1, factor λ − 1 of the condition"),
    ];
    for (p, reason) in cases {
        let Some(u) = univariate(p, t) else {
            continue;
        };
        let monic_sign = u.coeffs().last().is_some_and(|c| c < &BigRational::zero());
        let shown = if monic_sign { -p } else { p.clone() };
        out.push(Degeneration {
            condition: format!("{shown} = 0"),
            reason: reason.into(),
            polynomial: Some(shown.to_string()),
            discriminant: discriminant(&u),
            rational_values: u.rational_roots(),
        });
    }
    out
}

/// Every pencil step in report order.
pub fn run_all(s: &PencilScenario) -> Vec<VerificationStep> {
    let mut steps = vec![verify_blowup_factorization(s), verify_partials(s)];
    steps.extend(tangent_line_identities(s));
    steps.push(verify_concurrency(s));
    steps.push(verify_hyperelliptic_condition(s));
    steps.push(verify_lambda_identity(s));
    steps.push(euler_cross_check(s));
    steps
}
