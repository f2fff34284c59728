//! Canonical rings of split ribbons, `S̃ = S ⊕ εJ` with `ε² = 0`.
//!
//! With `K` the canonical class and `L = t·H` the conormal bundle (`t < 0`):
//! `S_q = H^0(q(K − L))`, `J_q = H^0(qK − (q−1)L)`. Every basis of `S̃_q` lists
//! the `S_q` block first, then the `εJ_q` block; `εJ` carries weight 1.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{mult_map, CurveModel, SectionSpace};
use crate::error::{Error, Result};
use crate::ff_linalg::FpMatrix;
use crate::graded::{algebra_from_sections, GradedAlgebra, GradedModule, MultTable};

/// Degree window of the assembled ring. Degree 4 is included so that the
/// last Betti row is computed from a kernel rather than inferred.
pub const DEFAULT_WINDOW: usize = 4;

#[derive(Clone, Debug)]
pub struct SplitRibbonRing {
    model: Arc<CurveModel>,
    conormal_multiple: i64,
    p_a: usize,
    s_pieces: Vec<SectionSpace>,
    j_pieces: Vec<SectionSpace>,
    s: GradedAlgebra,
    j: GradedModule,
    ring: GradedAlgebra,
}

/// Multiples of `H` carrying `S_q` and `J_q`, with `K = k·H`.
fn s_multiple(k: i64, t: i64, q: usize) -> i64 {
    q as i64 * (k - t)
}

fn j_multiple(k: i64, t: i64, q: usize) -> i64 {
    q as i64 * k - (q as i64 - 1) * t
}

pub fn build_split_ribbon(model: &Arc<CurveModel>, conormal_multiple: i64) -> Result<SplitRibbonRing> {
    build_split_ribbon_with_window(model, conormal_multiple, DEFAULT_WINDOW)
}

pub fn build_split_ribbon_with_window(
    model: &Arc<CurveModel>,
    conormal_multiple: i64,
    q_max: usize,
) -> Result<SplitRibbonRing> {
    let t = conormal_multiple;
    if t >= 0 {
        return Err(Error::UnsupportedConormal(format!(
            "conormal bundle {t}·H must have negative degree"
        )));
    }
    if q_max < 2 {
        return Err(Error::DegreeWindowTooSmall {
            needed: 2,
            have: q_max,
        });
    }
    let k = model.canonical_multiple();
    let g = model.genus() as i64;
    let deg_l = t * model.polarization_degree();
    let p_a = (2 * g - 1 - deg_l) as usize;

    let s_pieces: Vec<SectionSpace> = (0..=q_max).map(|q| model.sections(s_multiple(k, t, q))).collect();
    let j_pieces: Vec<SectionSpace> = (0..=q_max).map(|q| model.sections(j_multiple(k, t, q))).collect();
    let s = algebra_from_sections(&s_pieces)?;

    // J as a module over Sym S_1
    let j_action = (0..q_max)
        .map(|q| {
            let mm = mult_map(&s_pieces[1], &j_pieces[q])?;
            Ok((0..s_pieces[1].dim()).map(|i| mm.left_action(i)).collect())
        })
        .collect::<Result<Vec<Vec<FpMatrix>>>>()?;
    let j = GradedModule::new(
        model.field(),
        s_pieces[1].dim(),
        0,
        j_pieces.iter().map(|p| p.dim()).collect(),
        j_action,
    )?;

    let ring = assemble(&s_pieces, &j_pieces)?;
    if ring.dims()[1] != p_a {
        return Err(Error::InconsistentDims(format!(
            "degree-one piece has dim {}, expected p_a = {p_a}",
            ring.dims()[1]
        )));
    }
    Ok(SplitRibbonRing {
        model: model.clone(),
        conormal_multiple: t,
        p_a,
        s_pieces,
        j_pieces,
        s,
        j,
        ring,
    })
}

/// `(s, εj)·(s′, εj′) = (ss′, ε(sj′ + s′j))`.
fn assemble(s: &[SectionSpace], j: &[SectionSpace]) -> Result<GradedAlgebra> {
    let q_max = s.len() - 1;
    let dims: Vec<usize> = (0..=q_max).map(|q| s[q].dim() + j[q].dim()).collect();
    let mut tables = BTreeMap::new();
    for a in 0..=q_max {
        for b in a..=q_max - a {
            let ss = mult_map(&s[a], &s[b])?;
            let sj = mult_map(&s[a], &j[b])?;
            let js = mult_map(&j[a], &s[b])?;
            let (sa, sb, sc) = (s[a].dim(), s[b].dim(), s[a + b].dim());
            let mut table: MultTable = Vec::with_capacity(dims[a] * dims[b]);
            for x in 0..dims[a] {
                for y in 0..dims[b] {
                    let mut v = vec![0u32; dims[a + b]];
                    match (x < sa, y < sb) {
                        (true, true) => v[..sc].copy_from_slice(ss.product(x, y)),
                        (true, false) => v[sc..].copy_from_slice(sj.product(x, y - sb)),
                        (false, true) => v[sc..].copy_from_slice(js.product(x - sa, y)),
                        (false, false) => {}
                    }
                    table.push(v);
                }
            }
            tables.insert((a, b), table);
        }
    }
    let weights = (0..=q_max)
        .map(|q| {
            let mut w = vec![0u32; s[q].dim()];
            w.resize(dims[q], 1);
            w
        })
        .collect();
    GradedAlgebra::new(s[0].model().field(), dims, tables)?.with_weights(weights)
}

impl SplitRibbonRing {
    pub fn model(&self) -> &Arc<CurveModel> {
        &self.model
    }

    pub fn conormal_multiple(&self) -> i64 {
        self.conormal_multiple
    }

    pub fn conormal_degree(&self) -> i64 {
        self.conormal_multiple * self.model.polarization_degree()
    }

    pub fn p_a(&self) -> usize {
        self.p_a
    }

    pub fn s_pieces(&self) -> &[SectionSpace] {
        &self.s_pieces
    }

    pub fn j_pieces(&self) -> &[SectionSpace] {
        &self.j_pieces
    }

    /// `S = ⊕ H^0(q(K − L))`.
    pub fn s_algebra(&self) -> &GradedAlgebra {
        &self.s
    }

    /// `J = ⊕ H^0(qK − (q−1)L)` over `Sym S_1`.
    pub fn j_module(&self) -> &GradedModule {
        &self.j
    }

    /// The assembled ring `S̃`, weighted by ε-degree.
    pub fn ring(&self) -> &GradedAlgebra {
        &self.ring
    }

    /// Coordinates of `ε J_1` inside `V = S̃_1`, as columns.
    pub fn epsilon_block(&self) -> FpMatrix {
        let s1 = self.s_pieces[1].dim();
        let j1 = self.j_pieces[1].dim();
        FpMatrix::from_fn(self.model.field(), self.p_a, j1, |r, c| (r == s1 + c) as u32)
    }

    pub fn invariants(&self) -> SplitInvariants {
        split_invariants(
            self.model.genus(),
            self.model.gonality(),
            self.conormal_degree(),
        )
    }
}

/// Surjectivity of `S̃_1 ⊗ S̃_k → S̃_{k+1}` for `1 <= k <= k_max`.
pub fn check_projective_normality(r: &SplitRibbonRing, k_max: usize) -> bool {
    r.ring.generated_in_degree_one(k_max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitInvariants {
    pub p_a: usize,
    pub gonality: usize,
    pub lcliff: usize,
}

/// Arithmetic genus `2g − 1 − deg L`, gonality `2m`, Clifford index `2m − 2`.
pub fn split_invariants(g: usize, m: usize, deg_l: i64) -> SplitInvariants {
    SplitInvariants {
        p_a: (2 * g as i64 - 1 - deg_l) as usize,
        gonality: 2 * m,
        lcliff: 2 * m - 2,
    }
}

/// `p_a >= max(2g + 2m − 1, 6g − 4)`.
pub fn hypothesis_gate(g: usize, m: usize, p_a: usize) -> bool {
    let (g, m, p_a) = (g as i64, m as i64, p_a as i64);
    p_a >= (2 * g + 2 * m - 1).max(6 * g - 4)
}
