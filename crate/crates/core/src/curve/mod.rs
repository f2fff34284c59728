//! Concrete curve models and their section spaces.
//!
//! Every line bundle handled here is a multiple `k·H` of the model's
//! polarization: `H = O_C(1)` for a plane curve and `H = P∞` for a
//! hyperelliptic model. This is the only module that turns geometry into
//! matrices.

pub mod elliptic;
pub mod hyperelliptic;
pub mod plane;

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff_linalg::{FpMatrix, Poly, PrimeField};

pub use hyperelliptic::HyperellipticModel;
pub use plane::{PlaneCurveModel, TernaryForm};

/// Multiples of the polarization above this bound are rejected by `mult_map`.
pub const MAX_MULTIPLE: i64 = 256;

#[derive(Clone, Debug)]
pub enum CurveModel {
    Plane(PlaneCurveModel),
    Hyperelliptic(HyperellipticModel),
}

/// A rational point of a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvePoint {
    /// Homogeneous coordinates, first nonzero coordinate equal to 1.
    Projective([u32; 3]),
    /// The Weierstrass point at infinity of a hyperelliptic model.
    Infinity,
    Affine(u32, u32),
}

/// Monomial label of a basis section: plane `x^a y^b z^c`, or `[i, e, 0]`
/// for `x^i y^e` on a hyperelliptic model.
pub type Monomial = [u32; 3];

impl CurveModel {
    pub fn plane(f: TernaryForm) -> Result<Arc<Self>> {
        Ok(Arc::new(CurveModel::Plane(PlaneCurveModel::new(f)?)))
    }

    pub fn hyperelliptic(h: Poly) -> Result<Arc<Self>> {
        Ok(Arc::new(CurveModel::Hyperelliptic(HyperellipticModel::new(
            h,
        )?)))
    }

    /// A random smooth plane curve of degree `d`; resamples until the
    /// smoothness certificate passes.
    pub fn random_plane(field: PrimeField, d: usize, rng: &mut impl Rng) -> Result<Arc<Self>> {
        let n = plane::monomials(d).len();
        for _ in 0..1000 {
            let coeffs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..field.modulus())).collect();
            let f = TernaryForm::from_dense(field, d, &coeffs)?;
            match Self::plane(f) {
                Ok(c) => return Ok(c),
                Err(Error::NotSmooth(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::NotSmooth("no smooth curve after 1000 draws".into()))
    }

    /// A random model `y^2 = h(x)` with `h` monic squarefree of degree `2g+1`.
    pub fn random_hyperelliptic(
        field: PrimeField,
        genus: usize,
        rng: &mut impl Rng,
    ) -> Result<Arc<Self>> {
        for _ in 0..1000 {
            let mut coeffs: Vec<u32> = (0..2 * genus + 1)
                .map(|_| rng.gen_range(0..field.modulus()))
                .collect();
            coeffs.push(1);
            match Self::hyperelliptic(Poly::new(field, coeffs)) {
                Ok(c) => return Ok(c),
                Err(Error::NotSmooth(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::NotSmooth("no squarefree h(x) after 1000 draws".into()))
    }

    pub fn field(&self) -> PrimeField {
        match self {
            CurveModel::Plane(c) => c.field(),
            CurveModel::Hyperelliptic(c) => c.field(),
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            CurveModel::Plane(c) => c.genus(),
            CurveModel::Hyperelliptic(c) => c.genus(),
        }
    }

    /// Gonality of the model: `d - 1` for a smooth plane curve of degree
    /// `d`, 2 for hyperelliptic and elliptic models, 1 for the line.
    pub fn gonality(&self) -> usize {
        match self {
            CurveModel::Plane(c) => (c.degree() - 1).max(1),
            CurveModel::Hyperelliptic(c) if c.genus() == 0 => 1,
            CurveModel::Hyperelliptic(_) => 2,
        }
    }

    /// Degree of the polarization `H`.
    pub fn polarization_degree(&self) -> i64 {
        match self {
            CurveModel::Plane(c) => c.degree() as i64,
            CurveModel::Hyperelliptic(_) => 1,
        }
    }

    /// `K_C` as a multiple of `H`.
    pub fn canonical_multiple(&self) -> i64 {
        match self {
            CurveModel::Plane(c) => c.degree() as i64 - 3,
            CurveModel::Hyperelliptic(c) => 2 * c.genus() as i64 - 2,
        }
    }

    /// Dense coefficients: plane forms in [`plane::monomials`] order,
    /// hyperelliptic `h(x)` ascending.
    pub fn coefficients(&self) -> Vec<u32> {
        match self {
            CurveModel::Plane(c) => {
                let form = c.form();
                plane::monomials(c.degree())
                    .iter()
                    .map(|m| form.terms().iter().find(|(e, _)| e == m).map_or(0, |t| t.1))
                    .collect()
            }
            CurveModel::Hyperelliptic(c) => c.h().coeffs().to_vec(),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            CurveModel::Plane(_) => "plane",
            CurveModel::Hyperelliptic(_) => "hyperelliptic",
        }
    }

    /// Basis of `H^0(k·H)` in the model's normal form.
    pub fn sections(self: &Arc<Self>, multiple: i64) -> SectionSpace {
        let basis: Vec<Monomial> = match self.as_ref() {
            CurveModel::Plane(c) => c.basis(multiple),
            CurveModel::Hyperelliptic(c) => {
                c.basis(multiple).into_iter().map(|(i, e)| [i, e, 0]).collect()
            }
        };
        let index = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        SectionSpace {
            model: Arc::clone(self),
            multiple,
            basis,
            index,
        }
    }

    /// Distinct rational points in a deterministic order.
    pub fn rational_points(&self, max_count: usize) -> Vec<CurvePoint> {
        match self {
            CurveModel::Plane(c) => c
                .rational_points(max_count)
                .into_iter()
                .map(CurvePoint::Projective)
                .collect(),
            CurveModel::Hyperelliptic(c) => c
                .rational_points(max_count)
                .into_iter()
                .map(|p| match p {
                    None => CurvePoint::Infinity,
                    Some((x, y)) => CurvePoint::Affine(x, y),
                })
                .collect(),
        }
    }

    pub fn contains(&self, pt: CurvePoint) -> bool {
        match (self, pt) {
            (CurveModel::Plane(c), CurvePoint::Projective(x)) => {
                x != [0, 0, 0] && c.form().eval(x) == 0
            }
            (CurveModel::Hyperelliptic(_), CurvePoint::Infinity) => true,
            (CurveModel::Hyperelliptic(c), CurvePoint::Affine(x, y)) => c.contains(x, y),
            _ => false,
        }
    }
}

/// A basis of `H^0(C, k·H)`.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    model: Arc<CurveModel>,
    multiple: i64,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl SectionSpace {
    pub fn model(&self) -> &Arc<CurveModel> {
        &self.model
    }

    /// The bundle is `multiple · H`.
    pub fn multiple(&self) -> i64 {
        self.multiple
    }

    pub fn degree(&self) -> i64 {
        self.multiple * self.model.polarization_degree()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    fn field(&self) -> PrimeField {
        self.model.field()
    }

    /// Values of the basis sections at `pt` in a local trivialization.
    ///
    /// Plane curves use the normalized homogeneous coordinates; at the
    /// hyperelliptic point at infinity the trivialization is `u^m` for the
    /// uniformizer `u = x/y`, so only the basis section of exact pole order
    /// `m` survives.
    pub fn evaluation_vector(&self, pt: CurvePoint) -> Result<Vec<u32>> {
        if !self.model.contains(pt) {
            return Err(Error::PointNotOnCurve);
        }
        let f = self.field();
        Ok(match (self.model.as_ref(), pt) {
            (CurveModel::Plane(_), CurvePoint::Projective(x)) => self
                .basis
                .iter()
                .map(|&e| plane::eval_monomial(f, e, x))
                .collect(),
            (CurveModel::Hyperelliptic(c), CurvePoint::Infinity) => self
                .basis
                .iter()
                .map(|b| (c.pole_order(b[0], b[1]) == self.multiple) as u32)
                .collect(),
            (CurveModel::Hyperelliptic(_), CurvePoint::Affine(x, y)) => self
                .basis
                .iter()
                .map(|b| f.mul(f.pow(x, b[0] as u64), f.pow(y, b[1] as u64)))
                .collect(),
            _ => unreachable!("contains() rejected mismatched point"),
        })
    }

    /// Matrix (points x basis) of evaluation vectors.
    pub fn evaluation_matrix(&self, pts: &[CurvePoint]) -> Result<FpMatrix> {
        let rows = pts
            .iter()
            .map(|&p| self.evaluation_vector(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpMatrix::from_fn(self.field(), pts.len(), self.dim(), |i, j| {
            rows[i][j]
        }))
    }
}

/// The bilinear multiplication `H^0(A) ⊗ H^0(B) → H^0(A ⊗ B)`.
#[derive(Clone, Debug)]
pub struct MultMap {
    source_dims: (usize, usize),
    target: SectionSpace,
    /// `products[i * dim B + j]` is the product of basis vectors `a_i b_j`.
    products: Vec<Vec<u32>>,
}

impl MultMap {
    pub fn target(&self) -> &SectionSpace {
        &self.target
    }

    pub fn source_dims(&self) -> (usize, usize) {
        self.source_dims
    }

    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        &self.products[i * self.source_dims.1 + j]
    }

    /// Full tensor: rows index the target basis, column `i * dim B + j`.
    pub fn tensor(&self) -> FpMatrix {
        let f = self.target.field();
        FpMatrix::from_columns(f, self.target.dim(), &self.products)
            .expect("products have target length")
    }

    /// Multiplication by the basis vector `a_i` as a map `B → C`.
    pub fn left_action(&self, i: usize) -> FpMatrix {
        let f = self.target.field();
        let cols: Vec<Vec<u32>> = (0..self.source_dims.1)
            .map(|j| self.product(i, j).to_vec())
            .collect();
        FpMatrix::from_columns(f, self.target.dim(), &cols).expect("products have target length")
    }

    /// Multiplication by the basis vector `b_j` as a map `A → C`.
    pub fn right_action(&self, j: usize) -> FpMatrix {
        let f = self.target.field();
        let cols: Vec<Vec<u32>> = (0..self.source_dims.0)
            .map(|i| self.product(i, j).to_vec())
            .collect();
        FpMatrix::from_columns(f, self.target.dim(), &cols).expect("products have target length")
    }

    /// Product of arbitrary coordinate vectors.
    pub fn apply(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.target.field();
        let mut out = vec![0u32; self.target.dim()];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (o, &v) in out.iter_mut().zip(self.product(i, j)) {
                    *o = f.add(*o, f.mul(c, v));
                }
            }
        }
        out
    }
}

/// Multiplication of sections followed by reduction to normal form.
pub fn mult_map(a: &SectionSpace, b: &SectionSpace) -> Result<MultMap> {
    if !Arc::ptr_eq(&a.model, &b.model) {
        return Err(Error::DimensionMismatch(
            "section spaces live on different models".into(),
        ));
    }
    let total = a.multiple + b.multiple;
    if total > MAX_MULTIPLE {
        return Err(Error::TargetOverflow(format!("{total}·H")));
    }
    let target = a.model.sections(total);
    let f = a.field();
    let mut products = Vec::with_capacity(a.dim() * b.dim());
    match a.model.as_ref() {
        CurveModel::Plane(c) => {
            let nf = c.normal_forms(total.max(0) as usize);
            for ea in &a.basis {
                for eb in &b.basis {
                    let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                    products.push(nf[&e].clone());
                }
            }
        }
        CurveModel::Hyperelliptic(c) => {
            for ea in &a.basis {
                for eb in &b.basis {
                    let i = ea[0] + eb[0];
                    let mut v = vec![0u32; target.dim()];
                    if ea[1] + eb[1] < 2 {
                        let k = target
                            .index_of(&[i, ea[1] + eb[1], 0])
                            .ok_or_else(|| Error::TargetOverflow(format!("{total}·P∞")))?;
                        v[k] = 1;
                    } else {
                        // y^2 = h(x)
                        for (k, &hk) in c.h().coeffs().iter().enumerate() {
                            if hk == 0 {
                                continue;
                            }
                            let idx = target
                                .index_of(&[i + k as u32, 0, 0])
                                .ok_or_else(|| Error::TargetOverflow(format!("{total}·P∞")))?;
                            v[idx] = f.add(v[idx], hk);
                        }
                    }
                    products.push(v);
                }
            }
        }
    }
    Ok(MultMap {
        source_dims: (a.dim(), b.dim()),
        target,
        products,
    })
}
