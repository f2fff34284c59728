//! Graded algebras and graded modules given by finite-dimensional pieces and
//! explicit action matrices.
//!
//! Pieces are bare coordinate spaces. Geometry stays in [`crate::curve`]; a
//! module here may equally be a ring of sections or a module of cohomology
//! classes.
//!
//! A module may carry an additive *weight* on the basis of the acting space
//! and of every piece, compatible with the action (`w(x·m) = w(x) + w(m)`
//! whenever `x·m` has a nonzero coordinate). Koszul differentials then split
//! into independent blocks, one per total weight.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{mult_map, SectionSpace};
use crate::error::{Error, Result};
use crate::ff_linalg::{FpMatrix, PrimeField};

/// Basis weights for a graded module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    pub acting: Vec<u32>,
    /// `pieces[k]` weights the basis of the piece of degree `lo + k`.
    pub pieces: Vec<Vec<u32>>,
}

/// A graded module `⊕_q M_q` over `Sym V`, known on the window `lo..=hi`.
/// Pieces below `lo` are zero; pieces above `hi` are unknown.
#[derive(Clone, Debug)]
pub struct GradedModule {
    field: PrimeField,
    acting_dim: usize,
    lo: i64,
    dims: Vec<usize>,
    /// `action[k][i]` is the matrix of `x_i : M_{lo+k} → M_{lo+k+1}`.
    action: Vec<Vec<FpMatrix>>,
    weights: Option<Weights>,
}

impl GradedModule {
    pub fn new(
        field: PrimeField,
        acting_dim: usize,
        lo: i64,
        dims: Vec<usize>,
        action: Vec<Vec<FpMatrix>>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InconsistentDims("module with no pieces".into()));
        }
        if action.len() != dims.len() - 1 {
            return Err(Error::InconsistentDims(format!(
                "{} action layers for {} pieces",
                action.len(),
                dims.len()
            )));
        }
        for (k, layer) in action.iter().enumerate() {
            if layer.len() != acting_dim {
                return Err(Error::InconsistentDims(format!(
                    "degree {}: {} action matrices for an acting space of dim {acting_dim}",
                    lo + k as i64,
                    layer.len()
                )));
            }
            for m in layer {
                if m.rows() != dims[k + 1] || m.cols() != dims[k] || m.field() != field {
                    return Err(Error::InconsistentDims(format!(
                        "degree {}: action matrix is {}x{}, expected {}x{}",
                        lo + k as i64,
                        m.rows(),
                        m.cols(),
                        dims[k + 1],
                        dims[k]
                    )));
                }
            }
        }
        Ok(GradedModule {
            field,
            acting_dim,
            lo,
            dims,
            action,
            weights: None,
        })
    }

    /// Attaches basis weights after checking they are compatible with the action.
    pub fn with_weights(mut self, weights: Weights) -> Result<Self> {
        if weights.acting.len() != self.acting_dim
            || weights.pieces.len() != self.dims.len()
            || weights.pieces.iter().zip(&self.dims).any(|(w, &d)| w.len() != d)
        {
            return Err(Error::InconsistentDims("weight vector lengths".into()));
        }
        for (k, layer) in self.action.iter().enumerate() {
            for (i, m) in layer.iter().enumerate() {
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        if m.get(r, c) != 0
                            && weights.pieces[k + 1][r] != weights.acting[i] + weights.pieces[k][c]
                        {
                            return Err(Error::InconsistentDims(format!(
                                "action of x_{i} in degree {} breaks the weight grading",
                                self.lo + k as i64
                            )));
                        }
                    }
                }
            }
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn acting_dim(&self) -> usize {
        self.acting_dim
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn weights(&self) -> Option<&Weights> {
        self.weights.as_ref()
    }

    /// `dim M_q`: zero below the window, an error above it.
    pub fn dim(&self, q: i64) -> Result<usize> {
        if q < self.lo {
            Ok(0)
        } else if q > self.hi() {
            Err(Error::OutOfWindow(q))
        } else {
            Ok(self.dims[(q - self.lo) as usize])
        }
    }

    /// Matrix of `x_i : M_q → M_{q+1}`.
    pub fn action(&self, q: i64, i: usize) -> Result<&FpMatrix> {
        if q < self.lo || q >= self.hi() {
            return Err(Error::OutOfWindow(q));
        }
        Ok(&self.action[(q - self.lo) as usize][i])
    }

    pub fn piece_weights(&self, q: i64) -> Option<&[u32]> {
        let w = self.weights.as_ref()?;
        if q < self.lo || q > self.hi() {
            return None;
        }
        Some(&w.pieces[(q - self.lo) as usize])
    }

    /// `x·(y·m) = y·(x·m)` for all pairs of basis vectors of `V`.
    pub fn actions_commute(&self) -> bool {
        for layers in self.action.windows(2) {
            let (first, second) = (&layers[0], &layers[1]);
            for i in 0..self.acting_dim {
                for j in i + 1..self.acting_dim {
                    let xy = second[i].mul(&first[j]).expect("shapes checked");
                    let yx = second[j].mul(&first[i]).expect("shapes checked");
                    if xy != yx {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Restricts the action to the subspace of `V` spanned by the columns of
    /// `basis` (an `acting_dim x k` matrix of independent columns).
    pub fn restrict_action(&self, basis: &FpMatrix) -> Result<GradedModule> {
        if basis.rows() != self.acting_dim {
            return Err(Error::NotASubspace(format!(
                "basis vectors have length {}, acting space has dim {}",
                basis.rows(),
                self.acting_dim
            )));
        }
        if basis.rank() != basis.cols() {
            return Err(Error::NotASubspace("basis columns are dependent".into()));
        }
        let f = self.field;
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(k, layer)| {
                (0..basis.cols())
                    .map(|c| {
                        let mut acc = FpMatrix::zeros(f, self.dims[k + 1], self.dims[k]);
                        for (i, m) in layer.iter().enumerate() {
                            let coef = basis.get(i, c);
                            if coef == 0 {
                                continue;
                            }
                            for r in 0..m.rows() {
                                for s in 0..m.cols() {
                                    acc.add_to(r, s, f.mul(coef, m.get(r, s)));
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let out = GradedModule::new(f, basis.cols(), self.lo, self.dims.clone(), action)?;
        // weights survive when every new basis vector is a scaled coordinate vector
        let coordinate: Option<Vec<u32>> = self.weights.as_ref().and_then(|w| {
            (0..basis.cols())
                .map(|c| {
                    let nz: Vec<usize> = (0..basis.rows()).filter(|&r| basis.get(r, c) != 0).collect();
                    (nz.len() == 1).then(|| w.acting[nz[0]])
                })
                .collect()
        });
        match (coordinate, &self.weights) {
            (Some(acting), Some(w)) => out.with_weights(Weights {
                acting,
                pieces: w.pieces.clone(),
            }),
            _ => Ok(out),
        }
    }
}

/// Multiplication table between two pieces: `products[i * dim_b + j]` is the
/// product of basis vectors `e_i ∈ A_a` and `e_j ∈ A_b` in `A_{a+b}`.
pub type MultTable = Vec<Vec<u32>>;

/// A commutative graded algebra known in degrees `0..=q_max`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    field: PrimeField,
    dims: Vec<usize>,
    /// Keyed by `(a, b)` with `a <= b` and `a + b <= q_max`.
    tables: BTreeMap<(usize, usize), MultTable>,
    weights: Option<Vec<Vec<u32>>>,
}

impl GradedAlgebra {
    /// Validates shapes, the unit law, commutativity within equal degrees,
    /// and associativity on seeded random triples.
    pub fn new(
        field: PrimeField,
        dims: Vec<usize>,
        tables: BTreeMap<(usize, usize), MultTable>,
    ) -> Result<Self> {
        if dims.first() != Some(&1) {
            return Err(Error::InconsistentDims("degree-0 piece must be 1-dimensional".into()));
        }
        let q_max = dims.len() - 1;
        for a in 0..=q_max {
            for b in a..=q_max - a {
                let t = tables.get(&(a, b)).ok_or_else(|| {
                    Error::InconsistentDims(format!("missing multiplication table ({a}, {b})"))
                })?;
                if t.len() != dims[a] * dims[b] || t.iter().any(|v| v.len() != dims[a + b]) {
                    return Err(Error::InconsistentDims(format!(
                        "multiplication table ({a}, {b}) has the wrong shape"
                    )));
                }
            }
        }
        let alg = GradedAlgebra {
            field,
            dims,
            tables,
            weights: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub fn with_weights(mut self, weights: Vec<Vec<u32>>) -> Result<Self> {
        if weights.len() != self.dims.len()
            || weights.iter().zip(&self.dims).any(|(w, &d)| w.len() != d)
        {
            return Err(Error::InconsistentDims("weight vector lengths".into()));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let q_max = self.q_max();
        for b in 0..=q_max {
            for j in 0..self.dims[b] {
                let mut e = vec![0; self.dims[b]];
                e[j] = 1;
                if self.product(0, 0, b, j) != e {
                    return Err(Error::InconsistentDims(format!(
                        "unit does not act as the identity on degree {b}"
                    )));
                }
            }
        }
        for a in 1..=q_max / 2 {
            for i in 0..self.dims[a] {
                for j in 0..self.dims[a] {
                    if self.product(a, i, a, j) != self.product(a, j, a, i) {
                        return Err(Error::InconsistentDims(format!(
                            "multiplication is not commutative in degree {a}"
                        )));
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let p = self.field.modulus();
        for a in 1..=q_max {
            for b in 1..=q_max {
                for c in 1..=q_max {
                    if a + b + c > q_max {
                        continue;
                    }
                    for _ in 0..4 {
                        let u: Vec<u32> = (0..self.dims[a]).map(|_| rng.gen_range(0..p)).collect();
                        let v: Vec<u32> = (0..self.dims[b]).map(|_| rng.gen_range(0..p)).collect();
                        let w: Vec<u32> = (0..self.dims[c]).map(|_| rng.gen_range(0..p)).collect();
                        let left = self.multiply(a + b, &self.multiply(a, &u, b, &v), c, &w);
                        let right = self.multiply(a, &u, b + c, &self.multiply(b, &v, c, &w));
                        if left != right {
                            return Err(Error::InconsistentDims(format!(
                                "multiplication is not associative on degrees ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn q_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn weights(&self) -> Option<&[Vec<u32>]> {
        self.weights.as_deref()
    }

    /// Product of basis vectors `e_i ∈ A_a` and `e_j ∈ A_b`.
    pub fn product(&self, a: usize, i: usize, b: usize, j: usize) -> Vec<u32> {
        if a <= b {
            self.tables[&(a, b)][i * self.dims[b] + j].clone()
        } else {
            self.tables[&(b, a)][j * self.dims[a] + i].clone()
        }
    }

    pub fn multiply(&self, a: usize, u: &[u32], b: usize, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dims[a + b]];
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj == 0 {
                    continue;
                }
                let c = f.mul(ui, vj);
                for (o, x) in out.iter_mut().zip(self.product(a, i, b, j)) {
                    *o = f.add(*o, f.mul(c, x));
                }
            }
        }
        out
    }

    /// Matrix of `A_1 ⊗ A_k → A_{k+1}`, columns indexed `i * dim A_k + j`.
    pub fn degree_one_multiplication(&self, k: usize) -> FpMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dims[1])
            .flat_map(|i| (0..self.dims[k]).map(move |j| (i, j)))
            .map(|(i, j)| self.product(1, i, k, j))
            .collect();
        FpMatrix::from_columns(self.field, self.dims[k + 1], &cols).expect("table shapes checked")
    }

    /// Surjectivity of `A_1 ⊗ A_k → A_{k+1}` for `1 <= k <= k_max`.
    pub fn generated_in_degree_one(&self, k_max: usize) -> bool {
        (1..=k_max.min(self.q_max().saturating_sub(1)))
            .all(|k| self.degree_one_multiplication(k).rank() == self.dims[k + 1])
    }

    /// The algebra as a module over `Sym A_1`.
    pub fn as_module(&self) -> GradedModule {
        let f = self.field;
        let n = self.dims[1];
        let action = (0..self.q_max())
            .map(|q| {
                (0..n)
                    .map(|i| {
                        let cols: Vec<Vec<u32>> =
                            (0..self.dims[q]).map(|j| self.product(1, i, q, j)).collect();
                        FpMatrix::from_columns(f, self.dims[q + 1], &cols)
                            .expect("table shapes checked")
                    })
                    .collect()
            })
            .collect();
        let module = GradedModule::new(f, n, 0, self.dims.clone(), action)
            .expect("algebra tables have module shapes");
        match &self.weights {
            Some(w) => module
                .with_weights(Weights {
                    acting: w[1].clone(),
                    pieces: w.clone(),
                })
                .expect("algebra weights are multiplicative"),
            None => module,
        }
    }
}

/// The algebra `⊕_q H^0(C, L_q)` with multiplication from the curve model.
/// Requires `multiple(L_a) + multiple(L_b) = multiple(L_{a+b})`.
pub fn algebra_from_sections(pieces: &[SectionSpace]) -> Result<GradedAlgebra> {
    let Some(first) = pieces.first() else {
        return Err(Error::InconsistentDims("no pieces".into()));
    };
    let field = first.model().field();
    let q_max = pieces.len() - 1;
    let mut tables = BTreeMap::new();
    for a in 0..=q_max {
        for b in a..=q_max - a {
            if pieces[a].multiple() + pieces[b].multiple() != pieces[a + b].multiple() {
                return Err(Error::InconsistentDims(format!(
                    "pieces {a} and {b} do not multiply into piece {}",
                    a + b
                )));
            }
            let m = mult_map(&pieces[a], &pieces[b])?;
            let t: MultTable = (0..pieces[a].dim())
                .flat_map(|i| (0..pieces[b].dim()).map(move |j| (i, j)))
                .map(|(i, j)| m.product(i, j).to_vec())
                .collect();
            tables.insert((a, b), t);
        }
    }
    GradedAlgebra::new(field, pieces.iter().map(|s| s.dim()).collect(), tables)
}
