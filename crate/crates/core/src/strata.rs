//! Ribbons with fixed conormal bundle `L` as points of `P H^0(2K − L)^*`.
//!
//! An extension class is a functional on `H^0(2K − L)`; the zero functional
//! is the split ribbon. Only reduced divisors made of rational points of the
//! model are searched, so a blow-up index found here is the
//! *rational-reduced* index, an upper bound for the index over the
//! algebraic closure.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::elliptic::{CurvePointKey, EllipticGroup};
use crate::curve::{CurveModel, CurvePoint, Monomial, SectionSpace};
use crate::error::{Error, Result};
use crate::ff_linalg::{binomial, FpMatrix, Poly, PrimeField};

/// `H^0(2K − L)` for the conormal bundle `t·H`.
pub fn extension_ambient(model: &Arc<CurveModel>, conormal_multiple: i64) -> SectionSpace {
    model.sections(2 * model.canonical_multiple() - conormal_multiple)
}

#[derive(Clone, Debug)]
pub struct ExtensionClass {
    ambient: SectionSpace,
    functional: Vec<u32>,
}

impl ExtensionClass {
    pub fn new(ambient: &SectionSpace, functional: Vec<u32>) -> Result<Self> {
        if functional.len() != ambient.dim() {
            return Err(Error::DimensionMismatch(format!(
                "functional of length {} on a space of dim {}",
                functional.len(),
                ambient.dim()
            )));
        }
        let f = ambient.model().field();
        Ok(ExtensionClass {
            ambient: ambient.clone(),
            functional: functional.into_iter().map(|v| f.reduce(v as u64)).collect(),
        })
    }

    pub fn split(ambient: &SectionSpace) -> Self {
        ExtensionClass {
            ambient: ambient.clone(),
            functional: vec![0; ambient.dim()],
        }
    }

    /// A uniformly random nonzero functional.
    pub fn random(ambient: &SectionSpace, rng: &mut impl Rng) -> Self {
        let p = ambient.model().field().modulus();
        loop {
            let v: Vec<u32> = (0..ambient.dim()).map(|_| rng.gen_range(0..p)).collect();
            if v.iter().any(|&c| c != 0) {
                return ExtensionClass {
                    ambient: ambient.clone(),
                    functional: v,
                };
            }
        }
    }

    /// The functional `s ↦ s(P)`.
    pub fn evaluation(ambient: &SectionSpace, pt: CurvePoint) -> Result<Self> {
        Ok(ExtensionClass {
            ambient: ambient.clone(),
            functional: ambient.evaluation_vector(pt)?,
        })
    }

    /// A random combination of the evaluation functionals of `w` with
    /// nonzero coefficients.
    pub fn random_in_span(w: &DivisorWitness, rng: &mut impl Rng) -> Self {
        let f = w.ambient.model().field();
        let mut v = vec![0u32; w.ambient.dim()];
        for ev in &w.vectors {
            let c = rng.gen_range(1..f.modulus());
            for (x, &y) in v.iter_mut().zip(ev) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        ExtensionClass {
            ambient: w.ambient.clone(),
            functional: v,
        }
    }

    pub fn ambient(&self) -> &SectionSpace {
        &self.ambient
    }

    pub fn functional(&self) -> &[u32] {
        &self.functional
    }

    fn pair(&self, s: &Function) -> Result<u32> {
        let f = self.ambient.model().field();
        let v = s.coordinates(&self.ambient)?;
        Ok(v.iter()
            .zip(&self.functional)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
    }

    pub fn is_split(&self) -> bool {
        self.functional.iter().all(|&v| v == 0)
    }

    /// Equality as points of the projective space (split equals only split).
    pub fn same_class(&self, other: &ExtensionClass) -> bool {
        if self.is_split() || other.is_split() {
            return self.is_split() && other.is_split();
        }
        let f = self.ambient.model().field();
        FpMatrix::from_columns(f, self.functional.len(), &[self.functional.clone(), other.functional.clone()])
            .map(|m| m.rank() == 1)
            .unwrap_or(false)
    }
}

/// A reduced divisor of distinct rational points with their evaluation
/// functionals on the ambient space.
#[derive(Clone, Debug)]
pub struct DivisorWitness {
    ambient: SectionSpace,
    points: Vec<CurvePoint>,
    vectors: Vec<Vec<u32>>,
}

impl DivisorWitness {
    pub fn new(ambient: &SectionSpace, points: &[CurvePoint]) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::InvalidWitness(format!("point {p:?} repeated")));
            }
        }
        let vectors = points
            .iter()
            .map(|&p| ambient.evaluation_vector(p))
            .collect::<Result<Vec<_>>>()?;
        if vectors.iter().any(|v| v.iter().all(|&c| c == 0)) {
            return Err(Error::InvalidWitness("zero evaluation vector".into()));
        }
        Ok(DivisorWitness {
            ambient: ambient.clone(),
            points: points.to_vec(),
            vectors,
        })
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    /// Columns are the evaluation functionals.
    pub fn span_matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.ambient.model().field(), self.ambient.dim(), &self.vectors)
            .expect("vectors have ambient length")
    }

    /// Rank of the evaluation functionals; the span is a `P^{rank−1}`.
    pub fn span_rank(&self) -> usize {
        self.span_matrix().rank()
    }

    pub fn union(&self, other: &DivisorWitness) -> Result<DivisorWitness> {
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().filter(|p| !self.points.contains(p)));
        DivisorWitness::new(&self.ambient, &pts)
    }
}

/// Whether the class lies on the span of the divisor.
pub fn span_membership(e: &ExtensionClass, w: &DivisorWitness) -> bool {
    w.span_matrix()
        .image_membership(&e.functional)
        .expect("functional has ambient length")
}

/// A class restricted to the sections vanishing on a divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedClass {
    /// Columns: a basis of `H^0(2K − L − β)` inside the ambient space.
    pub subspace: FpMatrix,
    pub functional: Vec<u32>,
}

impl RestrictedClass {
    pub fn is_zero(&self) -> bool {
        self.functional.iter().all(|&v| v == 0)
    }
}

fn vanishing_sections(w: &DivisorWitness) -> FpMatrix {
    let f = w.ambient.model().field();
    let rows = w.vectors.len();
    let eval = FpMatrix::from_fn(f, rows, w.ambient.dim(), |i, j| w.vectors[i][j]);
    eval.kernel_basis()
}

fn restrict(e: &ExtensionClass, subspace: FpMatrix) -> RestrictedClass {
    let f = e.ambient.model().field();
    let functional = (0..subspace.cols())
        .map(|c| {
            (0..subspace.rows()).fold(0u32, |acc, r| {
                f.add(acc, f.mul(e.functional[r], subspace.get(r, c)))
            })
        })
        .collect();
    RestrictedClass {
        subspace,
        functional,
    }
}

/// Image of the class in `H^0(2K − L − β)^*` pushed out along `L → L(β)`.
pub fn pushout_class(e: &ExtensionClass, w: &DivisorWitness) -> RestrictedClass {
    restrict(e, vanishing_sections(w))
}

/// Image of the class pulled back along `K(−β) → K`. The two operations
/// induce the same map on extension groups.
pub fn pullback_class(e: &ExtensionClass, w: &DivisorWitness) -> RestrictedClass {
    restrict(e, vanishing_sections(w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bound {
    /// Every smaller divisor of pool points was ruled out.
    #[serde(rename = "exact")]
    Exact,
    /// The pool is partial or some level was sampled.
    #[serde(rename = "upper-only")]
    UpperOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupIndex {
    pub index: usize,
    pub bound: Bound,
    pub witness: Vec<CurvePoint>,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// The pool holds every rational point of the model.
    pub pool_complete: bool,
    /// Prefix subsets examined per level before switching to sampling.
    pub prefix_budget: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            pool_complete: true,
            prefix_budget: 400_000,
            seed: 0,
        }
    }
}

/// Row-echelon basis used to work modulo a growing span.
#[derive(Clone, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    fn reduce(&self, f: PrimeField, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for (piv, b) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        v
    }

    /// Adds an already reduced nonzero vector.
    fn push(&mut self, f: PrimeField, v: Vec<u32>) {
        let piv = v.iter().position(|&c| c != 0).expect("nonzero vector");
        let inv = f.inv(v[piv]);
        self.rows
            .push((piv, v.into_iter().map(|c| f.mul(c, inv)).collect()));
    }
}

fn normalized(f: PrimeField, v: &[u32]) -> Option<Vec<u32>> {
    let piv = v.iter().position(|&c| c != 0)?;
    let inv = f.inv(v[piv]);
    Some(v.iter().map(|&c| f.mul(c, inv)).collect())
}

struct Search<'a> {
    f: PrimeField,
    e: &'a [u32],
    evs: &'a [Vec<u32>],
}

impl Search<'_> {
    /// A size-`k` subset, extending `chosen`, whose span contains `e`; the
    /// last two points are matched by hashing directions modulo `e`.
    fn finish(&self, chosen: &[usize], basis: &Echelon) -> Option<Vec<usize>> {
        let f = self.f;
        let start = chosen.last().map_or(0, |&i| i + 1);
        let e_red = basis.reduce(f, self.e);
        if e_red.iter().all(|&c| c == 0) {
            return Some(chosen.to_vec());
        }
        let mut with_e = basis.clone();
        with_e.push(f, e_red.clone());
        let mut seen: HashMap<Vec<u32>, Vec<(usize, Vec<u32>)>> = HashMap::new();
        for j in start..self.evs.len() {
            let v = basis.reduce(f, &self.evs[j]);
            if v.iter().all(|&c| c == 0) {
                continue;
            }
            let w = with_e.reduce(f, &v);
            let Some(key) = normalized(f, &w) else {
                let mut out = chosen.to_vec();
                out.push(j);
                return Some(out);
            };
            let piv = key.iter().position(|&c| c == 1).expect("normalized");
            if let Some(list) = seen.get(&key) {
                for (j0, v0) in list {
                    let w0 = with_e.reduce(f, v0);
                    let c = f.mul(w[piv], f.inv(w0[piv]));
                    // v − c·v0 is a multiple of e modulo the chosen span
                    if v.iter().zip(v0).any(|(&a, &b)| a != f.mul(c, b)) {
                        let mut out = chosen.to_vec();
                        out.extend([*j0, j]);
                        return Some(out);
                    }
                }
            }
            seen.entry(key).or_default().push((j, v));
        }
        None
    }

    fn prefixes(&self, chosen: &mut Vec<usize>, basis: &Echelon, depth: usize) -> Option<Vec<usize>> {
        if depth == 0 {
            return self.finish(chosen, basis);
        }
        let start = chosen.last().map_or(0, |&i| i + 1);
        for i in start..self.evs.len() {
            let v = basis.reduce(self.f, &self.evs[i]);
            if v.iter().all(|&c| c == 0) {
                continue;
            }
            let mut next = basis.clone();
            next.push(self.f, v);
            chosen.push(i);
            let found = self.prefixes(chosen, &next, depth - 1);
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn sampled(&self, k: usize, budget: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
        for _ in 0..budget {
            let mut idx = sample(rng, self.evs.len(), k - 2).into_vec();
            idx.sort_unstable();
            let mut basis = Echelon::default();
            let mut ok = true;
            for &i in &idx {
                let v = basis.reduce(self.f, &self.evs[i]);
                if v.iter().all(|&c| c == 0) {
                    ok = false;
                    break;
                }
                basis.push(self.f, v);
            }
            if ok {
                if let Some(found) = self.finish(&idx, &basis) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// Smallest `k <= b_max` such that some `k` distinct pool points span a
/// subspace containing the class.
pub fn blowup_index_bruteforce(e: &ExtensionClass, pool: &[CurvePoint], b_max: usize) -> Result<BlowupIndex> {
    blowup_index_with(e, pool, b_max, &SearchOptions::default())
}

pub fn blowup_index_with(
    e: &ExtensionClass,
    pool: &[CurvePoint],
    b_max: usize,
    opts: &SearchOptions,
) -> Result<BlowupIndex> {
    let f = e.ambient.model().field();
    let mut exact = opts.pool_complete;
    if e.is_split() {
        return Ok(BlowupIndex {
            index: 0,
            bound: Bound::Exact,
            witness: Vec::new(),
        });
    }
    let evs = pool
        .iter()
        .map(|&p| e.ambient.evaluation_vector(p))
        .collect::<Result<Vec<_>>>()?;
    let search = Search {
        f,
        e: &e.functional,
        evs: &evs,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let target = normalized(f, &e.functional);
    for k in 1..=b_max.min(pool.len()) {
        let found = if k == 1 {
            evs.iter()
                .position(|v| normalized(f, v) == target)
                .map(|i| vec![i])
        } else if binomial(pool.len(), k - 2) <= opts.prefix_budget {
            search.prefixes(&mut Vec::new(), &Echelon::default(), k - 2)
        } else {
            let r = search.sampled(k, opts.prefix_budget, &mut rng);
            exact = false;
            r
        };
        if let Some(idx) = found {
            return Ok(BlowupIndex {
                index: idx.len(),
                bound: if exact { Bound::Exact } else { Bound::UpperOnly },
                witness: idx.into_iter().map(|i| pool[i]).collect(),
            });
        }
    }
    Err(Error::NotFound(b_max))
}

/// `⌈(p_a + g − 2)/2⌉`, the index of a general ribbon.
pub fn generic_blowup_index(p_a: usize, g: usize) -> usize {
    (p_a + g - 2).div_ceil(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GonalityBounds {
    pub upper: i64,
    pub lower: i64,
    /// `p_a > 2g − 1 + 2m`; below it the upper bound is unverified.
    pub upper_valid: bool,
    pub lower_valid: bool,
}

/// `lower = b − (2g − 2) <= gonality <= min(b + 2m, ⌊(p_a + 3)/2⌋) = upper`.
pub fn gonality_bounds(b: usize, g: usize, m: usize, p_a: usize) -> GonalityBounds {
    let (b, g, m, p_a) = (b as i64, g as i64, m as i64, p_a as i64);
    GonalityBounds {
        upper: (b + 2 * m).min((p_a + 3) / 2),
        lower: b - (2 * g - 2),
        upper_valid: p_a > 2 * g - 1 + 2 * m,
        lower_valid: true,
    }
}

#[derive(Clone, Debug)]
pub struct W4Witnesses {
    /// `(Q, {T : 2T = Q})`: the ramification points of the double cover
    /// attached to the class `Q + ∞`.
    pub witnesses: Vec<(CurvePoint, DivisorWitness)>,
    /// Rational points `Q` with fewer than four rational halvings.
    pub skipped: usize,
}

/// Ramification divisors of the degree-2 maps of an elliptic model, for the
/// conormal bundle `t·H` (the spans of these divisors sweep out `W_4`).
pub fn w4_witnesses_elliptic(model: &Arc<CurveModel>, conormal_multiple: i64) -> Result<W4Witnesses> {
    if model.genus() != 1 {
        return Err(Error::Unsupported("W_4 witnesses need a genus-one model".into()));
    }
    let group = EllipticGroup::new(model)?;
    let ambient = extension_ambient(model, conormal_multiple);
    let points = model.rational_points(usize::MAX);
    let halves = group.halvings(&points);
    let mut witnesses = Vec::new();
    let mut skipped = 0;
    for &q in &points {
        match halves.get(&CurvePointKey(q)) {
            Some(ts) if ts.len() == 4 => {
                let mut ts = ts.clone();
                ts.sort_by_key(|&t| CurvePointKey(t));
                witnesses.push((q, DivisorWitness::new(&ambient, &ts)?));
            }
            _ => skipped += 1,
        }
    }
    Ok(W4Witnesses { witnesses, skipped })
}

/// `A(x) + B(x)·y` on a model `y^2 = h(x)`.
#[derive(Clone)]
struct Function {
    a: Poly,
    b: Poly,
}

impl Function {
    fn monomial(f: PrimeField, m: &Monomial) -> Function {
        let mut c = vec![0; m[0] as usize + 1];
        c[m[0] as usize] = 1;
        let x = Poly::new(f, c);
        let zero = Poly::new(f, vec![]);
        if m[1] == 0 {
            Function { a: x, b: zero }
        } else {
            Function { a: zero, b: x }
        }
    }

    fn combination(f: PrimeField, basis: &[Monomial], coeffs: &[u32]) -> Function {
        let zero = Poly::new(f, vec![]);
        basis.iter().zip(coeffs).fold(
            Function { a: zero.clone(), b: zero },
            |acc, (m, &c)| {
                let t = Function::monomial(f, m);
                Function {
                    a: acc.a.add(&t.a.scale(c)),
                    b: acc.b.add(&t.b.scale(c)),
                }
            },
        )
    }

    fn mul(&self, other: &Function, h: &Poly) -> Function {
        Function {
            a: self.a.mul(&other.a).add(&self.b.mul(&other.b).mul(h)),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.a)),
        }
    }

    fn coordinates(&self, space: &SectionSpace) -> Result<Vec<u32>> {
        let mut v = vec![0; space.dim()];
        for (e, p) in [(0, &self.a), (1, &self.b)] {
            for (i, &c) in p.coeffs().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let idx = space.index_of(&[i as u32, e, 0]).ok_or_else(|| {
                    Error::IllDefined(format!("x^{i} y^{e} exceeds the ambient pole order"))
                })?;
                v[idx] = c;
            }
        }
        Ok(v)
    }
}

/// Rational points `Q` such that some effective divisor defined over the
/// prime field in the class `(k − 1)·∞ + Q` spans a subspace containing the
/// class. Such divisors may contain conjugate irrational points, so this
/// sees secant spans the rational-point search cannot.
///
/// Works on a genus-one model with ambient `a·∞`: the divisors in `|δ|` are
/// the zero loci of `s ∈ H^0(δ)`, and `e` lies on the span of `div(s) + δ`
/// iff `e(s · H^0(a·∞ − δ)) = 0`.
pub fn elliptic_rational_secant_classes(e: &ExtensionClass, k: usize) -> Result<Vec<CurvePoint>> {
    let model = e.ambient.model();
    let CurveModel::Hyperelliptic(c) = model.as_ref() else {
        return Err(Error::Unsupported("needs a genus-one Weierstrass model".into()));
    };
    if c.genus() != 1 {
        return Err(Error::Unsupported("needs a genus-one Weierstrass model".into()));
    }
    let a = e.ambient.multiple();
    if k < 2 || k as i64 >= a {
        return Err(Error::Unsupported(format!("secant order {k} on an ambient of degree {a}")));
    }
    let f = model.field();
    let h = c.h();
    let k = k as i64;
    let pairing = |sources: &[Function], targets: &[Function]| -> Result<Vec<Vec<u32>>> {
        sources
            .iter()
            .map(|s| targets.iter().map(|u| e.pair(&s.mul(u, h))).collect())
            .collect()
    };
    let mut out = Vec::new();
    for q in model.rational_points(usize::MAX) {
        let monomials = |m: i64| -> Vec<Function> {
            model.sections(m).basis().iter().map(|b| Function::monomial(f, b)).collect()
        };
        let (rows, cols) = match q {
            CurvePoint::Infinity => {
                let targets = monomials(a - k);
                (pairing(&monomials(k), &targets)?, targets.len())
            }
            CurvePoint::Affine(x0, y0) => {
                let t = model.sections(a - k + 1);
                let kernel = t.evaluation_matrix(&[q])?.kernel_basis();
                let targets: Vec<Function> = (0..kernel.cols())
                    .map(|j| Function::combination(f, t.basis(), &kernel.column(j)))
                    .collect();
                let mut rows = pairing(&monomials(k - 1), &targets)?;
                // φ = (y + y0)/(x − x0), with simple poles at Q and ∞
                let lin = Poly::new(f, vec![f.neg(x0), 1]);
                let num = Function {
                    a: Poly::new(f, vec![y0]),
                    b: Poly::new(f, vec![1]),
                };
                let mut phi_row = Vec::with_capacity(targets.len());
                for u in &targets {
                    let p = num.mul(u, h);
                    let (qa, ra) = p.a.div_rem(&lin);
                    let (qb, rb) = p.b.div_rem(&lin);
                    if !ra.is_zero() || !rb.is_zero() {
                        return Err(Error::IllDefined("product does not vanish on x = x0".into()));
                    }
                    phi_row.push(e.pair(&Function { a: qa, b: qb })?);
                }
                rows.push(phi_row);
                (rows, targets.len())
            }
            CurvePoint::Projective(_) => unreachable!("hyperelliptic points"),
        };
        if FpMatrix::from_fn(f, rows.len(), cols, |i, j| rows[i][j]).rank() < rows.len() {
            out.push(q);
        }
    }
    Ok(out)
}

/// `e ∈ span(α) ⇒ e ∈ span(α ∪ R)`.
pub fn wd_containment_check(alpha: &DivisorWitness, r: &DivisorWitness, e: &ExtensionClass) -> Result<bool> {
    if !span_membership(e, alpha) {
        return Ok(true);
    }
    Ok(span_membership(e, &alpha.union(r)?))
}
