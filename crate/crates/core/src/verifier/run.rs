use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;

use crate::characters::{check_invariance, invariance_character, picard_upper_bound};
use crate::curves::{hyperplane_relations, lcm_orders, minimal_equivalence_order, holds_at, CurveError, RelationLattice};
use crate::exact::{IntMatrix, RankMode};
use crate::jacobian::{
    functional_kernel, hilbert_function, is_smooth_artinian, is_surjective, left_kernel, left_kernel_via_duality,
    macaulay_pairing_check, multiplication_map, pairing_functional, uniform_mult_rank_bound, HypersurfaceRing, MapOptions,
    RingError,
};
use crate::pencil::{self, PencilScenario};
use crate::poly::{check_parametrization, multiplicity_at_point};
use crate::report::VerificationStep;

use super::report::Report;
use super::scenario::{Check, CurveDecl, Scenario};
use super::RunOptions;

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| format!("[{}]", list(r))).collect();
    format!("[{}]", rows.join(","))
}

fn error_step(name: &str, citation: &str, e: impl ToString) -> VerificationStep {
    VerificationStep::fail(name, citation, format!("error: {}", e.to_string()))
}

/// Runs every declared check in order. Failing or erroring checks become
/// failing steps; nothing aborts the run.
pub fn run_scenario(s: &Scenario, options: &RunOptions) -> Report {
    let mut report = Report::new(&s.name, options.label());
    report.assumptions = s.assumptions.clone();
    for decl in &s.checks {
        let mode = |m: super::scenario::ModeChoice| m.resolve(options.mode, options.forced);
        match &decl.check {
            Check::Pencil => {
                let p = s.pencil.as_ref().expect("validated at load");
                let mut run = |f: &dyn Fn(&PencilScenario) -> Vec<VerificationStep>| {
                    let t = Instant::now();
                    let steps = f(p);
                    let each = t.elapsed() / steps.len().max(1) as u32;
                    for st in steps {
                        report.push(st, each);
                    }
                };
                run(&|p| vec![pencil::verify_blowup_factorization(p)]);
                run(&|p| vec![pencil::verify_partials(p)]);
                run(&pencil::tangent_line_identities);
                run(&|p| vec![pencil::verify_concurrency(p)]);
                run(&|p| vec![pencil::verify_hyperelliptic_condition(p)]);
                run(&|p| vec![pencil::verify_lambda_identity(p)]);
                run(&|p| vec![pencil::euler_cross_check(p)]);
            }
            check => {
                let t = Instant::now();
                let step = run_check(s, check, &mode);
                report.push(step, t.elapsed());
            }
        }
    }
    report
}

fn ring_of(s: &Scenario) -> &HypersurfaceRing {
    s.ring.as_deref().expect("validated at load")
}

fn lattice(s: &Scenario, c: &CurveDecl) -> Result<RelationLattice, CurveError> {
    let lines: Vec<&str> = c.lines.iter().map(String::as_str).collect();
    hyperplane_relations(&c.curve, &lines, &s.points, &c.samples)
}

fn plane_point(s: &Scenario, c: &CurveDecl, label: &str) -> Result<Vec<BigRational>, String> {
    let coords = s.points.coords(label).ok_or_else(|| format!("unknown point {label}"))?;
    let mut out = Vec::new();
    for (name, v) in s.coordinates.iter().zip(coords) {
        if name == &c.curve.plane {
            if !v.is_zero() {
                return Err(format!("{label} does not lie on the plane {name} = 0"));
            }
        } else {
            out.push(v.clone());
        }
    }
    Ok(out)
}

fn assignments_text(at: &[(String, BigRational)]) -> String {
    at.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(",")
}

fn run_check(
    s: &Scenario,
    check: &Check,
    mode: &dyn Fn(super::scenario::ModeChoice) -> RankMode,
) -> VerificationStep {
    match check {
        Check::Invariance => {
            let f = ring_of(s).form();
            let sigma = s.automorphism.as_ref().expect("validated at load");
            let name = "invariance under the diagonal automorphism";
            let cite = format!(
                "F(ζ^e x) = ζ^c F(x) for e = ({}) mod {}",
                list(sigma.exponents()),
                sigma.modulus()
            );
            let per: Vec<String> = f.terms().keys().rev().map(|m| format!("{}", sigma.character(m))).collect();
            let ok = check_invariance(f, sigma);
            VerificationStep::check(name, cite, ok, "monomials of F carry different characters")
                .with_detail("monomial_characters", per.join(","))
                .with_detail(
                    "form_character",
                    invariance_character(f, sigma).map_or("none".to_string(), |c| c.to_string()),
                )
        }
        Check::Smoothness { mode: m } => {
            let ring = ring_of(s);
            let name = "smoothness";
            let cite = format!("R_{} = 0 (quotient vanishes above the socle)", ring.socle_degree() + 1);
            match is_smooth_artinian(ring, mode(*m)) {
                Ok(c) => VerificationStep::check(
                    name,
                    cite,
                    c.smooth,
                    format!("dim R_{} = {}", ring.socle_degree() + 1, c.ambient_dim - c.certificate.rank),
                )
                .with_detail("rank", c.certificate.rank)
                .with_detail("monomials", c.ambient_dim)
                .with_detail("certificate", c.certificate.mode)
                .with_detail("note", &c.certificate.note),
                Err(e) => error_step(name, &cite, e),
            }
        }
        Check::Hilbert { expect } => {
            let ring = ring_of(s);
            let h = hilbert_function(ring);
            let name = "Hilbert function";
            let cite = "dim R_k for k = 0..σ, palindromic with one-dimensional socle";
            let palindrome = h.iter().eq(h.iter().rev());
            let socle = h.last() == Some(&1);
            let matches = expect.as_ref().is_none_or(|e| e == &h);
            let mut why = Vec::new();
            if !palindrome {
                why.push("not palindromic".to_string());
            }
            if !socle {
                why.push("socle not one-dimensional".to_string());
            }
            if !matches {
                why.push(format!("expected ({})", list(expect.as_deref().unwrap_or(&[]))));
            }
            VerificationStep::check(name, cite, why.is_empty(), format!("({}): {}", list(&h), why.join("; ")))
                .with_detail("table", list(&h))
                .with_detail("total", h.iter().sum::<usize>())
        }
        Check::Dim { k, expect } => {
            let d = ring_of(s).dim(*k);
            let name = format!("dim R_{k}");
            let ok = expect.is_none_or(|e| e == d);
            VerificationStep::check(&name, "graded piece dimension", ok, format!("dim R_{k} = {d}, expected {expect:?}"))
                .with_detail("dim", d)
        }
        Check::Duality => {
            let ring = ring_of(s);
            let name = "Macaulay duality";
            let cite = "R_k × R_{σ−k} → R_σ is a perfect pairing for every k";
            let mut ranks = Vec::new();
            let mut bad = Vec::new();
            for k in 0..=ring.socle_degree() {
                match macaulay_pairing_check(ring, k) {
                    Ok(p) => {
                        ranks.push(p.rank);
                        if !p.nondegenerate {
                            bad.push(format!("k={k}: dims {}/{} rank {}", p.dim_k, p.dim_dual, p.rank));
                        }
                    }
                    Err(e) => return error_step(name, cite, e),
                }
            }
            VerificationStep::check(name, cite, bad.is_empty(), bad.join("; ")).with_detail("pairing_ranks", list(&ranks))
        }
        Check::UniformBound { b, expect } => {
            let ring = ring_of(s);
            let name = format!("uniform rank bound for R_1 ⊗ R_{b}");
            let cite = format!(
                "every nonzero ℓ ∈ R_1 has rank ≥ 2 on R_{b} → R_{}, so R_1 ⊗ R_{b} → R_{}/C·g has no left kernel for any g",
                b + 1,
                b + 1
            );
            match uniform_mult_rank_bound(ring, *b) {
                Ok(r) => {
                    let ok = r >= 2 && expect.is_none_or(|e| e == r);
                    VerificationStep::check(&name, cite, ok, format!("bound {r}, expected {expect:?}"))
                        .with_detail("bound", r)
                }
                Err(e) => error_step(&name, &cite, e),
            }
        }
        Check::GreenGotzmann { g, b, expect_rank, mode: m } => {
            let ring = ring_of(s);
            let name = "Green–Gotzmann instance";
            let run = || -> Result<VerificationStep, RingError> {
                let k = g.homogeneous_degree().ok_or(RingError::NotHomogeneous)?;
                let cite = format!(
                    "V = ker(v ↦ ⟨v, g⟩) ⊂ R_{k}, codimension 1: V ⊗ R_{b} → R_{} is surjective",
                    k + b
                );
                let phi = pairing_functional(ring, g)?;
                if phi.iter().all(Zero::is_zero) {
                    return Ok(VerificationStep::fail(name, cite, "g is zero in the Jacobian ring"));
                }
                let v = functional_kernel(ring, k, &phi)?;
                let dim_v = v.len();
                let map = multiplication_map(ring, k, *b, MapOptions { source: Some(v), quotient_by: None })?;
                let c = is_surjective(&map, mode(*m))?;
                let ok = c.surjective && expect_rank.is_none_or(|e| e == c.certificate.rank);
                Ok(VerificationStep::check(
                    name,
                    cite,
                    ok,
                    format!("rank {} of target {}", c.certificate.rank, c.target_dim),
                )
                .with_detail("g", g)
                .with_detail("dim_V", dim_v)
                .with_detail("rank", c.certificate.rank)
                .with_detail("target_dim", c.target_dim)
                .with_detail("certificate", c.certificate.mode))
            };
            run().unwrap_or_else(|e| error_step(name, "Green–Gotzmann surjectivity", e))
        }
        Check::Surjective { a, b, quotient, expect_rank, mode: m } => {
            let ring = ring_of(s);
            let target = if *quotient { format!("R_{}/classes", a + b) } else { format!("R_{}", a + b) };
            let name = format!("R_{a} ⊗ R_{b} → {target} surjective");
            let run = || -> Result<VerificationStep, RingError> {
                let quotient_by = quotient_vectors(s, ring, a + b, *quotient)?;
                let map = multiplication_map(ring, *a, *b, MapOptions { source: None, quotient_by })?;
                let c = is_surjective(&map, mode(*m))?;
                let ok = c.surjective && expect_rank.is_none_or(|e| e == c.certificate.rank);
                Ok(VerificationStep::check(
                    &name,
                    format!("multiplication R_{a} ⊗ R_{b} → {target} is onto"),
                    ok,
                    format!("rank {} of target {}", c.certificate.rank, c.target_dim),
                )
                .with_detail("rank", c.certificate.rank)
                .with_detail("target_dim", c.target_dim)
                .with_detail("certificate", c.certificate.mode)
                .with_detail("note", &c.certificate.note))
            };
            run().unwrap_or_else(|e| error_step(&name, "surjectivity", e))
        }
        Check::LeftKernel { a, b, quotient } => {
            let ring = ring_of(s);
            let target = if *quotient { format!("R_{}/classes", a + b) } else { format!("R_{}", a + b) };
            let name = format!("R_{a} ⊗ R_{b} → {target} has no left kernel");
            let run = || -> Result<VerificationStep, RingError> {
                let quotient_by = quotient_vectors(s, ring, a + b, *quotient)?;
                let map = multiplication_map(ring, *a, *b, MapOptions { source: None, quotient_by })?;
                let k = left_kernel(&map);
                Ok(VerificationStep::check(
                    &name,
                    format!("no nonzero ω ∈ R_{a} with ω·R_{b} = 0 in {target}"),
                    k.is_empty(),
                    format!("left kernel of dimension {}", k.len()),
                )
                .with_detail("kernel_dim", k.len())
                .with_detail("certificate", RankMode::Exact))
            };
            run().unwrap_or_else(|e| error_step(&name, "left kernel", e))
        }
        Check::NoLeftKernel { a, b, mode: m } => {
            let ring = ring_of(s);
            let sig = ring.socle_degree();
            let name = format!("R_{a} ⊗ R_{b} → R_{} has no left kernel (duality)", a + b);
            let cite = format!(
                "R_{} ⊗ R_{b} → R_{} surjective and R_{a} × R_{} perfect",
                sig - (a + b).min(sig),
                sig - a.min(&sig),
                sig - a.min(&sig)
            );
            match left_kernel_via_duality(ring, *a, *b, mode(*m)) {
                Ok(v) => VerificationStep::check(
                    &name,
                    cite,
                    v.no_left_kernel,
                    format!(
                        "surjective={} (rank {} of {}), pairing nondegenerate={}",
                        v.surjectivity.surjective,
                        v.surjectivity.certificate.rank,
                        v.surjectivity.target_dim,
                        v.pairing.nondegenerate
                    ),
                )
                .with_detail("dual_map_rank", v.surjectivity.certificate.rank)
                .with_detail("dual_target_dim", v.surjectivity.target_dim)
                .with_detail("pairing_rank", v.pairing.rank)
                .with_detail("certificate", v.surjectivity.certificate.mode),
                Err(e) => error_step(&name, &cite, e),
            }
        }
        Check::Pencil => unreachable!("expanded by run_scenario"),
        Check::Degenerations => {
            let p = s.pencil.as_ref().expect("validated at load");
            let mut st = VerificationStep::pass(
                "degenerate parameters",
                "values of t where λ(t) has a pole or equals 0 or 1, and the ends of the family",
            );
            for (i, d) in pencil::report_degenerate_parameters(p).iter().enumerate() {
                let mut text = format!("{}: {}", d.condition, d.reason);
                if let Some(disc) = &d.discriminant {
                    text.push_str(&format!("; discriminant {disc}"));
                }
                if d.rational_values.is_empty() {
                    text.push_str("; no rational solutions");
                } else {
                    text.push_str(&format!("; rational solutions {}", list(&d.rational_values)));
                }
                st = st.with_detail(format!("case{i}"), text);
            }
            st
        }
        Check::Tau => {
            let tau = s
                .tau
                .clone()
                .or_else(|| s.pencil.as_ref().map(|p| p.tau.clone()))
                .expect("validated at load");
            pencil::verify_tau(&tau)
        }
        Check::Section { curve, line, expect } => {
            let (cname, c) = &s.curves[*curve];
            let name = format!("{cname} · H({line})");
            let cite = format!("intersection of {cname} with {line} = 0, multiplicities counted");
            match c.curve.intersect_line(line, &s.points, &c.samples) {
                Ok(sec) => {
                    let got = sec.cycle.as_map();
                    let conserved = sec.cycle.total_degree() == sec.cycle.degree as i64;
                    let matches = expect.as_ref().is_none_or(|e| e == &got) && sec.cycle.residual.is_empty();
                    VerificationStep::check(
                        &name,
                        cite,
                        conserved && matches,
                        format!("got {}, expected {}", sec.cycle, expect.as_ref().map_or("-".into(), cycle_text)),
                    )
                    .with_detail("cycle", &sec.cycle)
                    .with_detail("binary_form", &sec.binary_form)
                    .with_detail("evaluation", &sec.mode)
                    .with_detail("degree", sec.cycle.degree)
                }
                Err(e) => error_step(&name, &cite, e),
            }
        }
        Check::Order { curve, p, q, expect } => {
            let (cname, c) = &s.curves[*curve];
            let name = format!("equivalence order of {p} − {q} on {cname}");
            let cite = format!(
                "n({p} − {q}) lies in the lattice of hyperplane-section relations on {cname}"
            );
            let run = || -> Result<VerificationStep, CurveError> {
                let lat = lattice(s, c)?;
                let base = VerificationStep::pass(&name, &cite)
                    .with_detail("basis", lat.basis.join(","))
                    .with_detail("relations", matrix_text(&lat.relations));
                Ok(match minimal_equivalence_order(&lat, p, q)? {
                    Some(o) => {
                        let ok = expect.as_ref().is_none_or(|e| e == &o.order);
                        let mut st = base
                            .with_detail("holds_at", format!("rational equivalence holds at n = {}", o.order))
                            .with_detail("hnf_witness", list(&o.witness.hnf_coefficients))
                            .with_detail("generator_witness", list(&o.witness.generator_coefficients))
                            .with_detail("scope", "smallest n within the relation lattice, not over all functions");
                        if !ok {
                            st.status = crate::report::StepStatus::Fail(format!(
                                "order {}, expected {}",
                                o.order,
                                expect.as_ref().expect("set")
                            ));
                        }
                        st
                    }
                    None => {
                        let mut st = base;
                        st.status = crate::report::StepStatus::Fail("no multiple lies in the relation lattice".into());
                        st
                    }
                })
            };
            run().unwrap_or_else(|e| error_step(&name, &cite, e))
        }
        Check::Combined { curves, p, q, expect } => {
            let names: Vec<&str> = curves.iter().map(|&i| s.curves[i].0.as_str()).collect();
            let name = format!("common equivalence order of {p} − {q}");
            let cite = format!("n·{p} and n·{q} rationally equivalent on each of {}", names.join(", "));
            let run = || -> Result<VerificationStep, CurveError> {
                let mut orders = Vec::new();
                let mut lats = Vec::new();
                for &i in curves {
                    let lat = lattice(s, &s.curves[i].1)?;
                    match minimal_equivalence_order(&lat, p, q)? {
                        Some(o) => orders.push(o.order),
                        None => {
                            return Ok(VerificationStep::fail(
                                &name,
                                &cite,
                                format!("no multiple of {p} − {q} lies in the lattice of {}", s.curves[i].0),
                            ))
                        }
                    }
                    lats.push(lat);
                }
                let n = lcm_orders(&orders);
                let mut all = true;
                for lat in &lats {
                    all &= holds_at(lat, p, q, &n)?;
                }
                let ok = all && expect.as_ref().is_none_or(|e| e == &n);
                Ok(VerificationStep::check(&name, &cite, ok, format!("combined {n}, expected {expect:?}"))
                    .with_detail("orders", list(&orders))
                    .with_detail("holds_at", format!("rational equivalence holds at n = {n}")))
            };
            run().unwrap_or_else(|e| error_step(&name, &cite, e))
        }
        Check::Multiplicity { curve, point, at, expect } => {
            let (cname, c) = &s.curves[*curve];
            let name = format!("multiplicity of {cname} at {point}");
            let cite = format!("order of vanishing of {cname} at {point} for {}", assignments_text(at));
            let run = || -> Result<u32, String> {
                let f = c.curve.plane_form(at).map_err(|e| e.to_string())?;
                let pt = plane_point(s, c, point)?;
                multiplicity_at_point(&f, &pt).map_err(|e| e.to_string())
            };
            match run() {
                Ok(m) => VerificationStep::check(&name, cite, expect.is_none_or(|e| e == m), format!("multiplicity {m}, expected {expect:?}"))
                    .with_detail("multiplicity", m),
                Err(e) => error_step(&name, &cite, e),
            }
        }
        Check::Parametrization { curve, at, map } => {
            let (cname, c) = &s.curves[*curve];
            let name = format!("parametrization of {cname}");
            let cite = format!("{cname} at {} vanishes on ({})", assignments_text(at), list(map));
            let run = || -> Result<bool, String> {
                let f = c.curve.plane_form(at).map_err(|e| e.to_string())?;
                check_parametrization(&f, map).map_err(|e| e.to_string())
            };
            match run() {
                Ok(ok) => VerificationStep::check(&name, &cite, ok, "composition is not identically zero"),
                Err(e) => error_step(&name, &cite, e),
            }
        }
        Check::Picard { expect } => {
            let ring = ring_of(s);
            let sigma = s.automorphism.as_ref().expect("validated at load");
            let name = "Picard number bound";
            let cite = "ρ ≤ 1 + Σ over Galois orbits O of |O|·min_{c∈O} dim R_{2d−4}(c)";
            match picard_upper_bound(ring, sigma) {
                Ok(b) => {
                    let meets = b.orbits.iter().filter(|o| o.meets_outer).count();
                    let mut st = VerificationStep::pass(name, cite)
                        .with_detail("bound", b.bound)
                        .with_detail("avoid_rule_bound", b.avoid_rule_bound)
                        .with_detail("middle_degree", b.middle_degree)
                        .with_detail("middle_dim", b.middle_dim)
                        .with_detail("orbits", b.orbits.len())
                        .with_detail("orbits_meeting_outer", meets);
                    if let Some(e) = expect {
                        let verdict = if *e == b.bound {
                            "agrees".to_string()
                        } else {
                            format!("differs: computed {} against expected {e}", b.bound)
                        };
                        st = st.with_detail("expected", e).with_detail("comparison", verdict);
                    }
                    st
                }
                Err(e) => error_step(name, cite, e),
            }
        }
    }
}

fn cycle_text(m: &std::collections::BTreeMap<String, i64>) -> String {
    m.iter()
        .map(|(l, n)| if *n == 1 { l.clone() } else { format!("{n}{l}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn quotient_vectors(
    s: &Scenario,
    ring: &HypersurfaceRing,
    degree: u32,
    enabled: bool,
) -> Result<Option<Vec<Vec<BigRational>>>, RingError> {
    if !enabled {
        return Ok(None);
    }
    let piece = ring.piece(degree);
    let vs = s
        .quotient_classes
        .iter()
        .filter(|g| g.homogeneous_degree() == Some(degree))
        .map(|g| piece.normal_form(g))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(vs))
}
