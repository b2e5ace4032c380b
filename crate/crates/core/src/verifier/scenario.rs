//! Scenario files.
//!
//! ```text
//! file     := (blank | comment | header | entry)*
//! comment  := '#' anything
//! header   := '[' section ']'      section: scenario | ring | points | curve NAME
//!                                            | automorphism | cycle | pencil | checks
//! entry    := key '=' value        in every section except [checks]
//! check    := name (option)*       in [checks]; option := key '=' (word | "quoted text")
//! ```
//!
//! Polynomials use the `poly` grammar. `[ring]` declares `variables`,
//! optional `parameters`, the hypersurface `form` (no parameters) and an
//! optional `family` (may use parameters). Points are comma-separated
//! rationals. A curve is a plane section of the family: `plane`, the
//! intersecting `lines`, and optional `sample` values such as `t=1`. Keys of
//! `[pencil]` override [`PencilTexts`]; the section's presence enables the
//! pencil checks. `[scenario]` may repeat `assume` to record statements taken
//! as given.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::characters::DiagonalAutomorphism;
use crate::curves::{PlaneCurve, PointTable};
use crate::exact::{RankMode, DEFAULT_PRIME};
use crate::jacobian::HypersurfaceRing;
use crate::pencil::{PencilError, PencilScenario, PencilTexts};
use crate::poly::{parse_poly, PolyError, PolyRing, SparsePoly};

use super::ScenarioError;

/// A value together with its 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Located {
    fn error(&self, message: impl Into<String>) -> ScenarioError {
        ScenarioError::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn poly_error(&self, e: PolyError) -> ScenarioError {
        match e {
            PolyError::Parse { position, message } => ScenarioError::Parse {
                line: self.line,
                column: self.column + position,
                message,
            },
            other => self.error(other.to_string()),
        }
    }

    fn list(&self) -> Vec<Located> {
        let mut out = Vec::new();
        let mut col = self.column;
        for part in self.text.split(',') {
            let lead = part.len() - part.trim_start().len();
            let t = part.trim();
            if !t.is_empty() {
                out.push(Located {
                    text: t.to_string(),
                    line: self.line,
                    column: col + lead,
                });
            }
            col += part.chars().count() + 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Section {
    kind: String,
    arg: Option<String>,
    header: Located,
    entries: Vec<(Located, Located)>,
    checks: Vec<RawCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct RawCheck {
    name: Located,
    options: Vec<(Located, Located)>,
}

const SECTIONS: &[&str] = &["scenario", "ring", "points", "curve", "automorphism", "cycle", "pencil", "checks"];

fn tokenize_options(rest: &str, line: usize, start_col: usize) -> Result<Vec<(Located, Located)>, ScenarioError> {
    let chars: Vec<char> = rest.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let err = |col: usize, m: &str| ScenarioError::Parse {
        line,
        column: col,
        message: m.to_string(),
    };
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let kstart = i;
        while i < chars.len() && chars[i] != '=' && !chars[i].is_whitespace() {
            i += 1;
        }
        if i >= chars.len() || chars[i] != '=' {
            return Err(err(start_col + kstart, "expected key=value"));
        }
        let key: String = chars[kstart..i].iter().collect();
        i += 1;
        let (vstart, value) = if i < chars.len() && chars[i] == '"' {
            let vs = i + 1;
            let mut j = vs;
            while j < chars.len() && chars[j] != '"' {
                j += 1;
            }
            if j >= chars.len() {
                return Err(err(start_col + i, "unterminated quoted value"));
            }
            i = j + 1;
            (vs, chars[vs..j].iter().collect::<String>())
        } else {
            let vs = i;
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            (vs, chars[vs..i].iter().collect::<String>())
        };
        out.push((
            Located {
                text: key,
                line,
                column: start_col + kstart,
            },
            Located {
                text: value,
                line,
                column: start_col + vstart,
            },
        ));
    }
    Ok(out)
}

fn split_sections(text: &str) -> Result<Vec<Section>, ScenarioError> {
    let mut sections: Vec<Section> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        let lead = content.chars().count() - content.trim_start().chars().count();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        let col = lead + 1;
        if let Some(inner) = body.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or(ScenarioError::Parse {
                line,
                column: col,
                message: "section header must end with ']'".into(),
            })?;
            let mut words = inner.split_whitespace();
            let kind = words.next().unwrap_or("").to_string();
            let arg = words.next().map(str::to_string);
            if !SECTIONS.contains(&kind.as_str()) || words.next().is_some() || (kind == "curve") != arg.is_some() {
                return Err(ScenarioError::Parse {
                    line,
                    column: col,
                    message: format!("unknown section header [{inner}]"),
                });
            }
            sections.push(Section {
                kind,
                arg,
                header: Located {
                    text: inner.to_string(),
                    line,
                    column: col,
                },
                entries: Vec::new(),
                checks: Vec::new(),
            });
            continue;
        }
        let Some(section) = sections.last_mut() else {
            return Err(ScenarioError::Parse {
                line,
                column: col,
                message: "content before the first section header".into(),
            });
        };
        if section.kind == "checks" {
            let name_len = body.find(char::is_whitespace).unwrap_or(body.len());
            let name = &body[..name_len];
            let rest = &body[name_len..];
            section.checks.push(RawCheck {
                name: Located {
                    text: name.to_string(),
                    line,
                    column: col,
                },
                options: tokenize_options(rest, line, col + name.chars().count())?,
            });
        } else {
            let eq = body.find('=').ok_or(ScenarioError::Parse {
                line,
                column: col,
                message: "expected key = value".into(),
            })?;
            let key = body[..eq].trim();
            let after = &body[eq + 1..];
            let vlead = after.chars().count() - after.trim_start().chars().count();
            let vcol = col + body[..eq + 1].chars().count() + vlead;
            section.entries.push((
                Located {
                    text: key.to_string(),
                    line,
                    column: col,
                },
                Located {
                    text: after.trim().to_string(),
                    line,
                    column: vcol,
                },
            ));
        }
    }
    Ok(sections)
}

/// Rank strategy of a check: an explicit option wins over the run default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeChoice {
    Default,
    Fixed(RankMode),
}

impl ModeChoice {
    pub fn resolve(self, run_default: RankMode, forced: bool) -> RankMode {
        match self {
            ModeChoice::Fixed(m) if !forced => m,
            _ => run_default,
        }
    }
}

/// A declared check with typed options.
#[derive(Clone, Debug)]
pub enum Check {
    Invariance,
    Smoothness { mode: ModeChoice },
    Hilbert { expect: Option<Vec<usize>> },
    Dim { k: u32, expect: Option<usize> },
    Duality,
    UniformBound { b: u32, expect: Option<usize> },
    GreenGotzmann { g: SparsePoly, b: u32, expect_rank: Option<usize>, mode: ModeChoice },
    Surjective { a: u32, b: u32, quotient: bool, expect_rank: Option<usize>, mode: ModeChoice },
    LeftKernel { a: u32, b: u32, quotient: bool },
    NoLeftKernel { a: u32, b: u32, mode: ModeChoice },
    Pencil,
    Degenerations,
    Tau,
    Section { curve: usize, line: String, expect: Option<BTreeMap<String, i64>> },
    Order { curve: usize, p: String, q: String, expect: Option<BigInt> },
    Combined { curves: Vec<usize>, p: String, q: String, expect: Option<BigInt> },
    Multiplicity { curve: usize, point: String, at: Vec<(String, BigRational)>, expect: Option<u32> },
    Parametrization { curve: usize, at: Vec<(String, BigRational)>, map: Vec<SparsePoly> },
    Picard { expect: Option<usize> },
}

#[derive(Clone, Debug)]
pub struct CheckDecl {
    pub name: String,
    pub line: usize,
    pub check: Check,
}

#[derive(Clone, Debug)]
pub struct CurveDecl {
    pub curve: PlaneCurve,
    pub lines: Vec<String>,
    pub samples: Vec<(String, BigRational)>,
}

/// A loaded, validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: Option<String>,
    pub assumptions: Vec<String>,
    pub coordinates: Vec<String>,
    pub parameters: Vec<String>,
    pub ring: Option<Arc<HypersurfaceRing>>,
    pub family: Option<SparsePoly>,
    pub points: PointTable,
    pub point_labels: Vec<String>,
    pub curves: Vec<(String, CurveDecl)>,
    pub automorphism: Option<DiagonalAutomorphism>,
    pub tau: Option<Vec<BigInt>>,
    pub quotient_classes: Vec<SparsePoly>,
    pub pencil: Option<PencilScenario>,
    pub checks: Vec<CheckDecl>,
}

fn parse_rational(l: &Located) -> Result<BigRational, ScenarioError> {
    let t = l.text.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => n
            .trim()
            .parse::<BigInt>()
            .ok()
            .zip(d.trim().parse::<BigInt>().ok())
            .filter(|(_, d)| d != &BigInt::from(0))
            .map(|(n, d)| BigRational::new(n, d)),
        None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
    };
    parsed.ok_or_else(|| l.error(format!("{t:?} is not a rational number")))
}

fn parse_int<T: std::str::FromStr>(l: &Located) -> Result<T, ScenarioError> {
    l.text.trim().parse().map_err(|_| l.error(format!("{:?} is not a valid integer here", l.text)))
}

fn parse_bool(l: &Located) -> Result<bool, ScenarioError> {
    match l.text.as_str() {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        _ => Err(l.error("expected true or false")),
    }
}

/// `name=value` pairs separated by commas, e.g. `t=1, u=-1/2`.
fn parse_assignments(l: &Located) -> Result<Vec<(String, BigRational)>, ScenarioError> {
    l.list()
        .iter()
        .map(|part| {
            let (n, v) = part
                .text
                .split_once('=')
                .ok_or_else(|| part.error("expected name=value"))?;
            let offset = n.chars().count() + 1;
            let value = Located {
                text: v.trim().to_string(),
                line: part.line,
                column: part.column + offset,
            };
            Ok((n.trim().to_string(), parse_rational(&value)?))
        })
        .collect()
}

/// Cycle text such as `Q + 4P`.
fn parse_cycle(l: &Located) -> Result<BTreeMap<String, i64>, ScenarioError> {
    let mut out = BTreeMap::new();
    for term in l.text.split('+') {
        let term = term.trim();
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let (n, label) = term.split_at(digits);
        if label.is_empty() {
            return Err(l.error(format!("bad cycle term {term:?}")));
        }
        let n: i64 = if n.is_empty() { 1 } else { n.parse().map_err(|_| l.error("bad multiplicity"))? };
        *out.entry(label.trim().to_string()).or_insert(0) += n;
    }
    Ok(out)
}

struct Options<'a> {
    check: &'a RawCheck,
    used: Vec<bool>,
}

impl<'a> Options<'a> {
    fn new(check: &'a RawCheck) -> Self {
        Options {
            used: vec![false; check.options.len()],
            check,
        }
    }

    fn get(&mut self, key: &str) -> Option<&'a Located> {
        let i = self.check.options.iter().position(|(k, _)| k.text == key)?;
        self.used[i] = true;
        Some(&self.check.options[i].1)
    }

    fn require(&mut self, key: &str) -> Result<&'a Located, ScenarioError> {
        self.get(key)
            .ok_or_else(|| self.check.name.error(format!("check {} needs option {key}", self.check.name.text)))
    }

    fn mode(&mut self) -> Result<ModeChoice, ScenarioError> {
        if let Some(p) = self.get("prime") {
            return Ok(ModeChoice::Fixed(RankMode::Modular(parse_int(p)?)));
        }
        match self.get("mode") {
            None => Ok(ModeChoice::Default),
            Some(l) if l.text == "exact" => Ok(ModeChoice::Fixed(RankMode::Exact)),
            Some(l) if l.text == "modular" => Ok(ModeChoice::Fixed(RankMode::Modular(DEFAULT_PRIME))),
            Some(l) => Err(l.error("mode must be exact or modular")),
        }
    }

    fn finish(self) -> Result<(), ScenarioError> {
        match self.used.iter().position(|u| !u) {
            Some(i) => {
                let k = &self.check.options[i].0;
                Err(k.error(format!("unknown option {} for check {}", k.text, self.check.name.text)))
            }
            None => Ok(()),
        }
    }
}

pub const CHECK_NAMES: &[&str] = &[
    "invariance",
    "smoothness",
    "hilbert",
    "dim",
    "duality",
    "uniform_bound",
    "green_gotzmann",
    "surjective",
    "left_kernel",
    "no_left_kernel",
    "pencil",
    "degenerations",
    "tau",
    "section",
    "order",
    "combined",
    "multiplicity",
    "parametrization",
    "picard",
];

fn single<'a>(sections: &'a [Section], kind: &str) -> Result<Option<&'a Section>, ScenarioError> {
    let mut found = sections.iter().filter(|s| s.kind == kind);
    let first = found.next();
    if let Some(dup) = found.next() {
        return Err(dup.header.error(format!("section [{kind}] declared twice")));
    }
    Ok(first)
}

fn entries<'a>(s: &'a Section, allowed: &[&str]) -> Result<BTreeMap<&'a str, &'a Located>, ScenarioError> {
    let mut out = BTreeMap::new();
    for (k, v) in &s.entries {
        if !allowed.contains(&k.text.as_str()) {
            return Err(k.error(format!("unknown key {} in [{}]", k.text, s.header.text)));
        }
        if out.insert(k.text.as_str(), v).is_some() && k.text != "assume" {
            return Err(k.error(format!("key {} given twice", k.text)));
        }
    }
    Ok(out)
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, ScenarioError> {
        let sections = split_sections(text)?;

        let head = single(&sections, "scenario")?.ok_or(ScenarioError::Parse {
            line: 1,
            column: 1,
            message: "missing [scenario] section".into(),
        })?;
        let meta = entries(head, &["name", "description", "assume"])?;
        let name = meta
            .get("name")
            .map(|l| l.text.clone())
            .ok_or_else(|| head.header.error("[scenario] needs a name"))?;
        let description = meta.get("description").map(|l| l.text.clone());
        let assumptions = head
            .entries
            .iter()
            .filter(|(k, _)| k.text == "assume")
            .map(|(_, v)| v.text.clone())
            .collect();

        let mut coordinates = Vec::new();
        let mut parameters = Vec::new();
        let mut ring = None;
        let mut family = None;
        if let Some(rs) = single(&sections, "ring")? {
            let e = entries(rs, &["variables", "parameters", "form", "family"])?;
            let vars = e.get("variables").ok_or_else(|| rs.header.error("[ring] needs variables"))?;
            coordinates = vars.list().into_iter().map(|l| l.text).collect();
            parameters = e.get("parameters").map(|l| l.list().into_iter().map(|l| l.text).collect()).unwrap_or_default();
            let base = PolyRing::new(coordinates.clone(), crate::poly::Domain::Rationals).map_err(|e| vars.poly_error(e))?;
            let mut all = coordinates.clone();
            all.extend(parameters.iter().cloned());
            let full = PolyRing::new(all, crate::poly::Domain::Rationals).map_err(|e| vars.poly_error(e))?;
            if let Some(f) = e.get("form") {
                let p = parse_poly(&f.text, &base).map_err(|e| f.poly_error(e))?;
                ring = Some(Arc::new(HypersurfaceRing::new(p).map_err(|e| f.error(e.to_string()))?));
            }
            if let Some(f) = e.get("family") {
                family = Some(parse_poly(&f.text, &full).map_err(|e| f.poly_error(e))?);
            }
        }

        let mut points = PointTable::new();
        let mut point_labels = Vec::new();
        if let Some(ps) = single(&sections, "points")? {
            for (k, v) in &ps.entries {
                let coords: Vec<BigRational> = v.list().iter().map(parse_rational).collect::<Result<_, _>>()?;
                if coords.len() != coordinates.len() {
                    return Err(v.error(format!("point needs {} coordinates", coordinates.len())));
                }
                if point_labels.contains(&k.text) {
                    return Err(k.error("point declared twice"));
                }
                points.insert(k.text.clone(), coords);
                point_labels.push(k.text.clone());
            }
        }

        let mut curves: Vec<(String, CurveDecl)> = Vec::new();
        for cs in sections.iter().filter(|s| s.kind == "curve") {
            let cname = cs.arg.clone().expect("curve name");
            if curves.iter().any(|(n, _)| n == &cname) {
                return Err(cs.header.error("curve declared twice"));
            }
            let e = entries(cs, &["plane", "lines", "sample"])?;
            let fam = family.as_ref().ok_or_else(|| cs.header.error("curves need a [ring] family"))?;
            let plane = e.get("plane").ok_or_else(|| cs.header.error("curve needs a plane"))?;
            let coord_refs: Vec<&str> = coordinates.iter().map(String::as_str).collect();
            let curve = PlaneCurve::new(&cname, fam, &coord_refs, &plane.text).map_err(|e| plane.error(e.to_string()))?;
            let lines: Vec<String> = match e.get("lines") {
                Some(l) => {
                    let ls = l.list();
                    for x in &ls {
                        if !coordinates.contains(&x.text) || x.text == plane.text {
                            return Err(x.error(format!("{} is not a line of this plane", x.text)));
                        }
                    }
                    ls.into_iter().map(|l| l.text).collect()
                }
                None => Vec::new(),
            };
            let samples = match e.get("sample") {
                Some(s) => parse_assignments(s)?,
                None => Vec::new(),
            };
            for (p, _) in &samples {
                if !parameters.contains(p) {
                    return Err(cs.header.error(format!("sample for undeclared parameter {p}")));
                }
            }
            curves.push((cname, CurveDecl { curve, lines, samples }));
        }

        let automorphism = match single(&sections, "automorphism")? {
            Some(a) => {
                let e = entries(a, &["modulus", "exponents"])?;
                let m = e.get("modulus").ok_or_else(|| a.header.error("automorphism needs a modulus"))?;
                let ex = e.get("exponents").ok_or_else(|| a.header.error("automorphism needs exponents"))?;
                let exps: Vec<i64> = ex.list().iter().map(parse_int).collect::<Result<_, _>>()?;
                if exps.len() != coordinates.len() {
                    return Err(ex.error(format!("need {} exponents", coordinates.len())));
                }
                Some(DiagonalAutomorphism::new(parse_int(m)?, &exps).map_err(|e| m.error(e.to_string()))?)
            }
            None => None,
        };

        let mut tau = None;
        let mut quotient_classes = Vec::new();
        if let Some(c) = single(&sections, "cycle")? {
            let e = entries(c, &["tau", "classes"])?;
            if let Some(t) = e.get("tau") {
                tau = Some(t.list().iter().map(parse_int).collect::<Result<Vec<BigInt>, _>>()?);
            }
            if let Some(cl) = e.get("classes") {
                let r = ring.as_ref().ok_or_else(|| cl.error("classes need a [ring] form"))?;
                for item in cl.list() {
                    quotient_classes.push(parse_poly(&item.text, r.form().ring()).map_err(|e| item.poly_error(e))?);
                }
            }
        }

        let pencil = match single(&sections, "pencil")? {
            Some(p) => {
                let mut texts = PencilTexts::default();
                for (k, v) in &p.entries {
                    texts.set(&k.text, v.text.clone()).map_err(|e| k.error(e.to_string()))?;
                }
                Some(PencilScenario::from_texts(&texts).map_err(|e| {
                    let key = match &e {
                        PencilError::Field { key, .. } | PencilError::Arity { key, .. } | PencilError::Invalid { key, .. } => {
                            Some(key.clone())
                        }
                        PencilError::UnknownKey(_) => None,
                    };
                    let at = key
                        .and_then(|key| p.entries.iter().find(|(k, _)| k.text == key))
                        .map(|(_, v)| v)
                        .unwrap_or(&p.header);
                    match e {
                        PencilError::Field { source, .. } => at.poly_error(source),
                        other => at.error(other.to_string()),
                    }
                })?)
            }
            None => None,
        };

        let mut scenario = Scenario {
            name,
            description,
            assumptions,
            coordinates,
            parameters,
            ring,
            family,
            points,
            point_labels,
            curves,
            automorphism,
            tau,
            quotient_classes,
            pencil,
            checks: Vec::new(),
        };
        if let Some(cs) = single(&sections, "checks")? {
            for raw in &cs.checks {
                let check = scenario.typed_check(raw)?;
                scenario.checks.push(CheckDecl {
                    name: raw.name.text.clone(),
                    line: raw.name.line,
                    check,
                });
            }
        }
        Ok(scenario)
    }

    fn curve_index(&self, l: &Located) -> Result<usize, ScenarioError> {
        self.curves
            .iter()
            .position(|(n, _)| n == &l.text)
            .ok_or_else(|| l.error(format!("undeclared curve {}", l.text)))
    }

    fn point_label(&self, l: &Located) -> Result<String, ScenarioError> {
        if self.point_labels.contains(&l.text) {
            Ok(l.text.clone())
        } else {
            Err(l.error(format!("undeclared point {}", l.text)))
        }
    }

    fn need_ring(&self, at: &Located) -> Result<&Arc<HypersurfaceRing>, ScenarioError> {
        self.ring
            .as_ref()
            .ok_or_else(|| at.error(format!("check {} needs a [ring] form", at.text)))
    }

    fn typed_check(&self, raw: &RawCheck) -> Result<Check, ScenarioError> {
        let n = &raw.name;
        let mut o = Options::new(raw);
        let opt_int = |o: &mut Options, k: &str| -> Result<Option<usize>, ScenarioError> {
            o.get(k).map(parse_int).transpose()
        };
        let check = match n.text.as_str() {
            "invariance" => {
                self.need_ring(n)?;
                if self.automorphism.is_none() {
                    return Err(n.error("invariance needs an [automorphism]"));
                }
                Check::Invariance
            }
            "smoothness" => {
                self.need_ring(n)?;
                Check::Smoothness { mode: o.mode()? }
            }
            "hilbert" => {
                self.need_ring(n)?;
                let expect = match o.get("expect") {
                    Some(l) => Some(l.list().iter().map(parse_int).collect::<Result<_, _>>()?),
                    None => None,
                };
                Check::Hilbert { expect }
            }
            "dim" => {
                self.need_ring(n)?;
                Check::Dim {
                    k: parse_int(o.require("k")?)?,
                    expect: opt_int(&mut o, "expect")?,
                }
            }
            "duality" => {
                self.need_ring(n)?;
                Check::Duality
            }
            "uniform_bound" => {
                self.need_ring(n)?;
                Check::UniformBound {
                    b: parse_int(o.require("b")?)?,
                    expect: opt_int(&mut o, "expect")?,
                }
            }
            "green_gotzmann" => {
                let r = self.need_ring(n)?;
                let g = o.require("g")?;
                Check::GreenGotzmann {
                    g: parse_poly(&g.text, r.form().ring()).map_err(|e| g.poly_error(e))?,
                    b: parse_int(o.require("b")?)?,
                    expect_rank: opt_int(&mut o, "expect_rank")?,
                    mode: o.mode()?,
                }
            }
            "surjective" => {
                self.need_ring(n)?;
                Check::Surjective {
                    a: parse_int(o.require("a")?)?,
                    b: parse_int(o.require("b")?)?,
                    quotient: o.get("quotient").map(parse_bool).transpose()?.unwrap_or(false),
                    expect_rank: opt_int(&mut o, "expect_rank")?,
                    mode: o.mode()?,
                }
            }
            "left_kernel" => {
                self.need_ring(n)?;
                Check::LeftKernel {
                    a: parse_int(o.require("a")?)?,
                    b: parse_int(o.require("b")?)?,
                    quotient: o.get("quotient").map(parse_bool).transpose()?.unwrap_or(false),
                }
            }
            "no_left_kernel" => {
                self.need_ring(n)?;
                Check::NoLeftKernel {
                    a: parse_int(o.require("a")?)?,
                    b: parse_int(o.require("b")?)?,
                    mode: o.mode()?,
                }
            }
            "pencil" | "degenerations" => {
                if self.pencil.is_none() {
                    return Err(n.error(format!("check {} needs a [pencil] section", n.text)));
                }
                if n.text == "pencil" {
                    Check::Pencil
                } else {
                    Check::Degenerations
                }
            }
            "tau" => {
                let has = self.tau.is_some() || self.pencil.is_some();
                if !has {
                    return Err(n.error("tau needs a [cycle] tau vector"));
                }
                Check::Tau
            }
            "section" => {
                let curve = self.curve_index(o.require("curve")?)?;
                let line = o.require("line")?;
                if !self.coordinates.contains(&line.text) {
                    return Err(line.error(format!("{} is not a coordinate", line.text)));
                }
                Check::Section {
                    curve,
                    line: line.text.clone(),
                    expect: o.get("expect").map(parse_cycle).transpose()?,
                }
            }
            "order" => Check::Order {
                curve: self.curve_index(o.require("curve")?)?,
                p: self.point_label(o.require("p")?)?,
                q: self.point_label(o.require("q")?)?,
                expect: o.get("expect").map(parse_int).transpose()?,
            },
            "combined" => Check::Combined {
                curves: o.require("curves")?.list().iter().map(|c| self.curve_index(c)).collect::<Result<_, _>>()?,
                p: self.point_label(o.require("p")?)?,
                q: self.point_label(o.require("q")?)?,
                expect: o.get("expect").map(parse_int).transpose()?,
            },
            "multiplicity" => Check::Multiplicity {
                curve: self.curve_index(o.require("curve")?)?,
                point: self.point_label(o.require("point")?)?,
                at: o.get("at").map(parse_assignments).transpose()?.unwrap_or_default(),
                expect: o.get("expect").map(parse_int).transpose()?,
            },
            "parametrization" => {
                let curve = self.curve_index(o.require("curve")?)?;
                let at = o.get("at").map(parse_assignments).transpose()?.unwrap_or_default();
                let vars: Vec<String> = match o.get("variables") {
                    Some(v) => v.list().into_iter().map(|l| l.text).collect(),
                    None => vec!["t0".into(), "t1".into()],
                };
                let map_ring = PolyRing::new(vars, crate::poly::Domain::Rationals).map_err(|e| n.error(e.to_string()))?;
                let m = o.require("map")?;
                let map = m
                    .list()
                    .iter()
                    .map(|c| parse_poly(&c.text, &map_ring).map_err(|e| c.poly_error(e)))
                    .collect::<Result<_, _>>()?;
                Check::Parametrization { curve, at, map }
            }
            "picard" => {
                self.need_ring(n)?;
                if self.automorphism.is_none() {
                    return Err(n.error("picard needs an [automorphism]"));
                }
                Check::Picard {
                    expect: opt_int(&mut o, "expect")?,
                }
            }
            other => {
                return Err(ScenarioError::UnknownCheck {
                    name: other.to_string(),
                    line: n.line,
                    column: n.column,
                })
            }
        };
        for (_, v) in &raw.options {
            if v.text.is_empty() {
                return Err(v.error("empty option value"));
            }
        }
        o.finish()?;
        Ok(check)
    }
}
