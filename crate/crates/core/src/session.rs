//! Curve specifications and the serializable reports behind the CLI and the
//! browser demo.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveModel, CurvePoint, TernaryForm};
use crate::error::{Error, Result};
use crate::ff_linalg::{Poly, PrimeField};
use crate::green::{green_split_report_with, GreenOptions, GreenReport};
use crate::koszul::{betti_table, duality_check, hilbert_check, rcliff, BettiTable};
use crate::ribbon::{build_split_ribbon, check_projective_normality};
use crate::strata::{
    blowup_index_with, extension_ambient, generic_blowup_index, gonality_bounds, w4_witnesses_elliptic, Bound,
    ExtensionClass, GonalityBounds, SearchOptions,
};

/// Which curve to build. Missing coefficients are drawn from the session
/// generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CurveSpec {
    PlaneQuartic {
        #[serde(default)]
        coefficients: Option<Vec<u32>>,
    },
    Plane {
        degree: usize,
        #[serde(default)]
        coefficients: Option<Vec<u32>>,
    },
    Hyperelliptic {
        genus: usize,
        /// `h(x)` ascending, degree `2g + 1`.
        #[serde(default)]
        coefficients: Option<Vec<u32>>,
    },
}

impl CurveSpec {
    pub fn build(&self, field: PrimeField, rng: &mut impl Rng) -> Result<Arc<CurveModel>> {
        match self {
            CurveSpec::PlaneQuartic { coefficients } => plane(field, 4, coefficients.as_deref(), rng),
            CurveSpec::Plane {
                degree,
                coefficients,
            } => plane(field, *degree, coefficients.as_deref(), rng),
            CurveSpec::Hyperelliptic {
                genus,
                coefficients: None,
            } => CurveModel::random_hyperelliptic(field, *genus, rng),
            CurveSpec::Hyperelliptic {
                genus,
                coefficients: Some(c),
            } => {
                if c.len() != 2 * genus + 2 {
                    return Err(Error::Config(format!(
                        "genus {genus} needs {} coefficients of h(x), got {}",
                        2 * genus + 2,
                        c.len()
                    )));
                }
                CurveModel::hyperelliptic(Poly::new(field, c.clone()))
            }
        }
    }
}

fn plane(
    field: PrimeField,
    degree: usize,
    coefficients: Option<&[u32]>,
    rng: &mut impl Rng,
) -> Result<Arc<CurveModel>> {
    match coefficients {
        None => CurveModel::random_plane(field, degree, rng),
        Some(c) => CurveModel::plane(TernaryForm::from_dense(field, degree, c)?),
    }
}

/// `L = K^{-1}` when that is a negative multiple of `H`.
pub fn default_conormal(model: &CurveModel) -> Result<i64> {
    match model.canonical_multiple() {
        k if k > 0 => Ok(-k),
        _ => Err(Error::Config(
            "no default conormal bundle in genus <= 1; pass one explicitly".into(),
        )),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSummary {
    pub family: String,
    pub modulus: u32,
    pub genus: usize,
    pub gonality: usize,
    pub coefficients: Vec<u32>,
}

impl CurveSummary {
    pub fn of(model: &CurveModel) -> Self {
        CurveSummary {
            family: model.family().to_string(),
            modulus: model.field().modulus(),
            genus: model.genus(),
            gonality: model.gonality(),
            coefficients: model.coefficients(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiReport {
    pub curve: CurveSummary,
    pub conormal: i64,
    pub p_a: usize,
    pub table: BettiTable,
    pub duality: bool,
    pub hilbert: bool,
    pub projectively_normal: bool,
    pub rcliff: Option<usize>,
    pub lcliff: usize,
}

pub fn betti_report(model: &Arc<CurveModel>, conormal: i64) -> Result<BettiReport> {
    let r = build_split_ribbon(model, conormal)?;
    let table = betti_table(r.ring(), r.p_a())?;
    let dims: Vec<usize> = r.ring().dims().to_vec();
    Ok(BettiReport {
        curve: CurveSummary::of(model),
        conormal,
        p_a: r.p_a(),
        duality: duality_check(&table),
        hilbert: hilbert_check(&table, &dims),
        projectively_normal: check_projective_normality(&r, r.ring().q_max() - 1),
        rcliff: optional(rcliff(&table))?,
        lcliff: r.invariants().lcliff,
        table,
    })
}

fn optional(v: Result<usize>) -> Result<Option<usize>> {
    match v {
        Ok(v) => Ok(Some(v)),
        Err(Error::NoNonzero) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreenSession {
    pub curve: CurveSummary,
    pub conormal: i64,
    pub report: GreenReport,
}

pub fn green_session(model: &Arc<CurveModel>, conormal: i64, options: GreenOptions) -> Result<GreenSession> {
    Ok(GreenSession {
        curve: CurveSummary::of(model),
        conormal,
        report: green_split_report_with(model, conormal, options)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    /// `None` when no divisor of degree at most `b_max` was found.
    pub blowup_index: Option<usize>,
    pub bound: Option<Bound>,
    pub witnesses: Vec<CurvePoint>,
    pub gonality_bounds: Option<GonalityBounds>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct W4Entry {
    pub point: CurvePoint,
    pub ramification: Vec<CurvePoint>,
    pub span_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataReport {
    pub curve: CurveSummary,
    pub conormal: i64,
    pub p_a: usize,
    pub ambient_dim: usize,
    pub pool_size: usize,
    pub b_max: usize,
    /// Index of a general ribbon over the algebraic closure.
    pub generic_index: usize,
    /// Values for the first class; the search is over reduced divisors of
    /// rational points ("rational-reduced blow-up index").
    pub blowup_index: Option<usize>,
    pub bound: Option<Bound>,
    pub witnesses: Vec<CurvePoint>,
    /// Keys are indices, or "none" for classes not split up to `b_max`.
    pub histogram: BTreeMap<String, usize>,
    pub classes: Vec<ClassEntry>,
    pub w4: Option<Vec<W4Entry>>,
    pub w4_skipped: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct StrataOptions {
    pub b_max: usize,
    /// Number of random classes; 0 examines the split class only.
    pub sweep: usize,
    pub w4: bool,
    /// Cap on the rational point pool; `None` uses every point.
    pub pool_limit: Option<usize>,
}

impl Default for StrataOptions {
    fn default() -> Self {
        StrataOptions {
            b_max: 4,
            sweep: 1,
            w4: false,
            pool_limit: None,
        }
    }
}

pub fn strata_report(
    model: &Arc<CurveModel>,
    conormal: i64,
    options: &StrataOptions,
    rng: &mut impl Rng,
) -> Result<StrataReport> {
    if conormal >= 0 {
        return Err(Error::UnsupportedConormal(format!("t = {conormal} must be negative")));
    }
    let g = model.genus();
    let m = model.gonality();
    let p_a = (2 * g as i64 - 1 - conormal * model.polarization_degree()) as usize;
    let ambient = extension_ambient(model, conormal);
    let all = model.rational_points(usize::MAX);
    let pool: Vec<CurvePoint> = match options.pool_limit {
        Some(n) => all.iter().copied().take(n).collect(),
        None => all.clone(),
    };
    let search = SearchOptions {
        pool_complete: pool.len() == all.len(),
        ..SearchOptions::default()
    };
    let classes_in: Vec<ExtensionClass> = if options.sweep == 0 {
        vec![ExtensionClass::split(&ambient)]
    } else {
        (0..options.sweep)
            .map(|_| ExtensionClass::random(&ambient, rng))
            .collect()
    };
    let mut histogram = BTreeMap::new();
    let mut classes = Vec::with_capacity(classes_in.len());
    for e in &classes_in {
        let entry = match blowup_index_with(e, &pool, options.b_max, &search) {
            Ok(b) => ClassEntry {
                blowup_index: Some(b.index),
                bound: Some(b.bound),
                witnesses: b.witness,
                gonality_bounds: Some(gonality_bounds(b.index, g, m, p_a)),
            },
            Err(Error::NotFound(_)) => ClassEntry {
                blowup_index: None,
                bound: None,
                witnesses: Vec::new(),
                gonality_bounds: None,
            },
            Err(err) => return Err(err),
        };
        let key = entry.blowup_index.map_or("none".to_string(), |b| b.to_string());
        *histogram.entry(key).or_insert(0) += 1;
        classes.push(entry);
    }
    let (w4, w4_skipped) = if options.w4 {
        let w = w4_witnesses_elliptic(model, conormal)?;
        let entries = w
            .witnesses
            .iter()
            .map(|(q, r)| W4Entry {
                point: *q,
                ramification: r.points().to_vec(),
                span_rank: r.span_rank(),
            })
            .collect();
        (Some(entries), Some(w.skipped))
    } else {
        (None, None)
    };
    let first = classes[0].clone();
    Ok(StrataReport {
        curve: CurveSummary::of(model),
        conormal,
        p_a,
        ambient_dim: ambient.dim(),
        pool_size: pool.len(),
        b_max: options.b_max,
        generic_index: generic_blowup_index(p_a, g),
        blowup_index: first.blowup_index,
        bound: first.bound,
        witnesses: first.witnesses,
        histogram,
        classes,
        w4,
        w4_skipped,
    })
}

/// Every report the tools emit, tagged by the command that produced it.
/// Parsing a file as `Report` is the schema check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Betti(BettiReport),
    Green(GreenSession),
    Strata(StrataReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Parses `text` and checks that it re-serializes to the same JSON value.
    pub fn validate(text: &str) -> std::result::Result<Report, String> {
        let report: Report = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let original: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let again = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        if again != original {
            return Err("report does not round-trip".into());
        }
        Ok(report)
    }

    pub fn to_text(&self) -> String {
        match self {
            Report::Betti(r) => betti_text(r),
            Report::Green(r) => green_text(r),
            Report::Strata(r) => strata_text(r),
        }
    }
}

fn curve_line(c: &CurveSummary, conormal: i64, p_a: usize) -> String {
    format!(
        "{} curve over F_{}: genus {}, gonality {}, conormal {}H, p_a {}\n",
        c.family, c.modulus, c.genus, c.gonality, conormal, p_a
    )
}

fn flag(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or("-".to_string(), |v| v.to_string())
}

fn betti_text(r: &BettiReport) -> String {
    let mut s = curve_line(&r.curve, r.conormal, r.p_a);
    s.push_str(&r.table.to_string());
    let _ = writeln!(s, "duality: {}", flag(r.duality));
    let _ = writeln!(s, "hilbert: {}", flag(r.hilbert));
    let _ = writeln!(s, "projectively normal: {}", r.projectively_normal);
    let _ = writeln!(s, "RCliff: {}  LCliff: {}", opt(r.rcliff), r.lcliff);
    s
}

fn green_text(r: &GreenSession) -> String {
    let g = &r.report;
    let mut s = curve_line(&r.curve, r.conormal, g.p_a);
    let _ = writeln!(s, "RCliff: {}  LCliff: {}", opt(g.rcliff), g.lcliff);
    let _ = writeln!(s, "hypothesis gate: {}", g.gate);
    let _ = writeln!(s, "(1) RCliff = LCliff: {}", g.conditions[0]);
    let _ = writeln!(s, "(2) Phi surjective: {}", g.conditions[1]);
    for e in &g.phi {
        let _ = writeln!(
            s,
            "    Phi_{},{},1: {} -> {} {}",
            e.i,
            e.j,
            e.src,
            e.tgt,
            if e.surjective { "onto" } else { "not onto" }
        );
    }
    let _ = writeln!(s, "(3) K_i,1(M^j) = 0: {}", g.conditions[2]);
    for e in &g.m_vanishing {
        let _ = writeln!(s, "    K_{},1(M^{}) dim {}", e.i, e.j, e.dim);
    }
    let _ = writeln!(s, "consistent: {}", g.consistent);
    s
}

fn bound_name(b: Option<Bound>) -> &'static str {
    match b {
        Some(Bound::Exact) => "exact",
        Some(Bound::UpperOnly) => "upper-only",
        None => "-",
    }
}

fn strata_text(r: &StrataReport) -> String {
    let mut s = curve_line(&r.curve, r.conormal, r.p_a);
    let _ = writeln!(
        s,
        "ambient dim {}, pool {} points, b_max {}, generic index {}",
        r.ambient_dim, r.pool_size, r.b_max, r.generic_index
    );
    let _ = writeln!(
        s,
        "rational-reduced blow-up index: {} ({})",
        opt(r.blowup_index),
        bound_name(r.bound)
    );
    if !r.witnesses.is_empty() {
        let _ = writeln!(s, "witness: {}", points(&r.witnesses));
    }
    if r.classes.len() > 1 {
        s.push_str("histogram:\n");
        for (k, v) in &r.histogram {
            let _ = writeln!(s, "  {k:>4}: {v}");
        }
    }
    if let (Some(w4), Some(skipped)) = (&r.w4, r.w4_skipped) {
        let _ = writeln!(s, "W_4 witnesses: {} ({} points without rational halvings)", w4.len(), skipped);
        for w in w4 {
            let _ = writeln!(s, "  {} -> {} (rank {})", point(&w.point), points(&w.ramification), w.span_rank);
        }
    }
    s
}

fn point(p: &CurvePoint) -> String {
    match p {
        CurvePoint::Infinity => "inf".into(),
        CurvePoint::Affine(x, y) => format!("({x},{y})"),
        CurvePoint::Projective([a, b, c]) => format!("({a}:{b}:{c})"),
    }
}

fn points(ps: &[CurvePoint]) -> String {
    ps.iter().map(point).collect::<Vec<_>>().join(" ")
}
