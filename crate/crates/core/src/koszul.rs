//! Koszul differentials, Koszul cohomology and Betti tables.
//!
//! For a graded module `M` over `Sym V` the differential is
//! `d(e_S ⊗ m) = Σ_j (-1)^j e_{S \ s_j} ⊗ x_{s_j}·m` for `S = {s_0 < … < s_{p-1}}`,
//! with `∧^p V` in colex order. A coordinate of `∧^p V ⊗ M_q` is indexed by
//! `rank(S) * dim M_q + m`.
//!
//! When the module carries weights, the differential is block diagonal by
//! total weight, and ranks, kernels and images are computed block by block.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff_linalg::{binomial, FpMatrix, WedgeIndex};
use crate::graded::{GradedAlgebra, GradedModule};

/// Coordinates of `∧^p V ⊗ M_q` grouped by total weight. An unweighted
/// module has a single group.
fn weight_groups(m: &GradedModule, wedge: &WedgeIndex, q: i64) -> BTreeMap<u32, Vec<usize>> {
    let dq = m.dim(q).unwrap_or(0);
    let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    match (m.weights(), m.piece_weights(q)) {
        (Some(w), Some(pw)) => {
            for (s, subset) in wedge.subsets().iter().enumerate() {
                let ws: u32 = subset.iter().map(|&i| w.acting[i]).sum();
                for (mi, &wm) in pw.iter().enumerate() {
                    groups.entry(ws + wm).or_default().push(s * dq + mi);
                }
            }
        }
        _ => {
            if wedge.count() * dq > 0 {
                groups.insert(0, (0..wedge.count() * dq).collect());
            }
        }
    }
    groups
}

/// Checks that the differential `d_{p,q}` is defined on the known window.
fn check_window(m: &GradedModule, p: usize, q: i64) -> Result<()> {
    if p > 0 && q >= m.lo() && q >= m.hi() && p <= m.acting_dim() {
        return Err(Error::OutOfWindow(q + 1));
    }
    if q > m.hi() {
        return Err(Error::OutOfWindow(q));
    }
    Ok(())
}

/// Nonzero entries `(row, value)` of the image of one source coordinate.
fn column_image(
    m: &GradedModule,
    wedge: &WedgeIndex,
    q: i64,
    col: usize,
    out: &mut Vec<(usize, u32)>,
) {
    out.clear();
    let f = m.field();
    let dq = m.dim(q).unwrap_or(0);
    let dq1 = m.dim(q + 1).unwrap_or(0);
    let (s, mi) = (col / dq, col % dq);
    let subset = wedge.subset(s);
    let mut rest = Vec::with_capacity(subset.len());
    for (j, &x) in subset.iter().enumerate() {
        rest.clear();
        rest.extend(subset.iter().copied().filter(|&y| y != x));
        let t = WedgeIndex::rank(&rest);
        let act = m.action(q, x).expect("window checked");
        for mo in 0..dq1 {
            let c = act.get(mo, mi);
            if c != 0 {
                let v = if j % 2 == 0 { c } else { f.neg(c) };
                out.push((t * dq1 + mo, v));
            }
        }
    }
}

/// The full matrix of `d: ∧^p V ⊗ M_q → ∧^{p-1} V ⊗ M_{q+1}`.
/// `d_0` and every map out of a piece below the window are zero.
pub fn koszul_differential(m: &GradedModule, p: usize, q: i64) -> Result<FpMatrix> {
    let n = m.acting_dim();
    let f = m.field();
    let src = binomial(n, p) * m.dim(q)?;
    if p == 0 || q < m.lo() || src == 0 {
        let tgt = if p == 0 { 0 } else { binomial(n, p - 1) * m.dim(q + 1).unwrap_or(0) };
        return Ok(FpMatrix::zeros(f, tgt, src));
    }
    check_window(m, p, q)?;
    let wedge = WedgeIndex::new(n, p);
    let tgt = binomial(n, p - 1) * m.dim(q + 1)?;
    let mut d = FpMatrix::zeros(f, tgt, src);
    let mut buf = Vec::new();
    for col in 0..src {
        column_image(m, &wedge, q, col, &mut buf);
        for &(r, v) in &buf {
            d.add_to(r, col, v);
        }
    }
    Ok(d)
}

/// One weight block of a differential: global source/target coordinates and
/// the block matrix in those coordinates.
struct Block {
    weight: u32,
    sources: Vec<usize>,
    targets: Vec<usize>,
    matrix: FpMatrix,
}

fn differential_blocks(m: &GradedModule, p: usize, q: i64) -> Result<Vec<Block>> {
    let n = m.acting_dim();
    let f = m.field();
    if p == 0 || p > n || q < m.lo() || m.dim(q)? == 0 {
        return Ok(Vec::new());
    }
    check_window(m, p, q)?;
    let wedge = WedgeIndex::new(n, p);
    let lower = WedgeIndex::new(n, p - 1);
    let src_groups = weight_groups(m, &wedge, q);
    let tgt_groups = weight_groups(m, &lower, q + 1);
    let tgt_total = lower.count() * m.dim(q + 1)?;
    let mut local = vec![usize::MAX; tgt_total];
    let mut blocks = Vec::new();
    let mut buf = Vec::new();
    for (w, sources) in src_groups {
        let targets = tgt_groups.get(&w).cloned().unwrap_or_default();
        for (k, &t) in targets.iter().enumerate() {
            local[t] = k;
        }
        let mut matrix = FpMatrix::zeros(f, targets.len(), sources.len());
        for (c, &col) in sources.iter().enumerate() {
            column_image(m, &wedge, q, col, &mut buf);
            for &(r, v) in &buf {
                debug_assert!(local[r] != usize::MAX, "weight grading violated");
                matrix.add_to(local[r], c, v);
            }
        }
        blocks.push(Block {
            weight: w,
            sources,
            targets,
            matrix,
        });
    }
    Ok(blocks)
}

/// Rank of `d_{p,q}`.
pub fn differential_rank(m: &GradedModule, p: usize, q: i64) -> Result<usize> {
    let blocks = differential_blocks(m, p, q)?;
    Ok(blocks.par_iter().map(|b| b.matrix.rank()).sum())
}

/// `dim K_{p,q}` from ranks alone:
/// `dim(∧^p V ⊗ M_q) − rank d_{p,q} − rank d_{p+1,q−1}`.
pub fn koszul_dim(m: &GradedModule, p: usize, q: i64) -> Result<usize> {
    KoszulRanks::new(m).dim(p, q)
}

/// Lazily computed, cached ranks of the differentials of one module.
/// Concurrent callers may evaluate a cell twice; the value is the same.
pub struct KoszulRanks<'a> {
    module: &'a GradedModule,
    cache: Mutex<HashMap<(usize, i64), usize>>,
}

impl<'a> KoszulRanks<'a> {
    pub fn new(module: &'a GradedModule) -> Self {
        KoszulRanks {
            module,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn rank(&self, p: usize, q: i64) -> Result<usize> {
        if let Some(&r) = self.cache.lock().expect("rank cache poisoned").get(&(p, q)) {
            return Ok(r);
        }
        let r = differential_rank(self.module, p, q)?;
        self.cache
            .lock()
            .expect("rank cache poisoned")
            .insert((p, q), r);
        Ok(r)
    }

    pub fn dim(&self, p: usize, q: i64) -> Result<usize> {
        let m = self.module;
        let n = m.acting_dim();
        if q > m.hi() {
            return Err(Error::OutOfWindow(q));
        }
        if q < m.lo() || p > n {
            return Ok(0);
        }
        let total = binomial(n, p) * m.dim(q)?;
        let out = self.rank(p, q)?;
        let inc = if q > m.lo() { self.rank(p + 1, q - 1)? } else { 0 };
        Ok(total - out - inc)
    }
}

/// A computed `K_{p,q}` with representatives.
#[derive(Clone, Debug)]
pub struct KoszulGroup {
    pub p: usize,
    pub q: i64,
    pub dim: usize,
    /// Columns: a basis of `ker d_{p,q}` in `∧^p V ⊗ M_q`.
    pub cocycles: FpMatrix,
    /// Columns: a basis of `im d_{p+1,q−1}`.
    pub coboundaries: FpMatrix,
    /// Columns: cocycles whose classes form a basis of the group, chosen by
    /// pivoting in `[coboundaries | cocycles]`.
    pub complement: FpMatrix,
}

impl KoszulGroup {
    /// Coordinates of a cocycle's class in the `complement` basis.
    pub fn class_of(&self, v: &[u32]) -> Result<Vec<u32>> {
        let sys = self.coboundaries.hconcat(&self.complement)?;
        let x = sys.solve(v)?.ok_or_else(|| {
            Error::IllDefined("vector is not a cocycle of the expected group".into())
        })?;
        Ok(x[self.coboundaries.cols()..].to_vec())
    }

    /// Whether `v` is a coboundary.
    pub fn is_coboundary(&self, v: &[u32]) -> Result<bool> {
        self.coboundaries.image_membership(v)
    }
}

/// Embeds block-local column vectors into global coordinates.
fn embed(total: usize, coords: &[usize], local: &FpMatrix, out: &mut Vec<Vec<u32>>) {
    for c in 0..local.cols() {
        let mut v = vec![0u32; total];
        for (r, &g) in coords.iter().enumerate() {
            v[g] = local.get(r, c);
        }
        out.push(v);
    }
}

/// `K_{p,q}` with cocycle, coboundary and complement bases.
pub fn koszul_cohomology(m: &GradedModule, p: usize, q: i64) -> Result<KoszulGroup> {
    let f = m.field();
    let n = m.acting_dim();
    if q > m.hi() {
        return Err(Error::OutOfWindow(q));
    }
    let dq = if q < m.lo() { 0 } else { m.dim(q)? };
    let wedge = WedgeIndex::new(n, p.min(n));
    let total = if p > n { 0 } else { wedge.count() * dq };
    if total == 0 {
        let z = FpMatrix::zeros(f, 0, 0);
        return Ok(KoszulGroup {
            p,
            q,
            dim: 0,
            cocycles: z.clone(),
            coboundaries: z.clone(),
            complement: z,
        });
    }
    if p > 0 {
        check_window(m, p, q)?;
    }
    // outgoing blocks, keyed by weight, over the same coordinates as `groups`
    let groups = weight_groups(m, &wedge, q);
    let out_blocks: HashMap<u32, Block> = differential_blocks(m, p, q)?
        .into_iter()
        .map(|b| (b.weight, b))
        .collect();
    let in_blocks: HashMap<u32, Block> = if q > m.lo() && p < n {
        differential_blocks(m, p + 1, q - 1)?
            .into_iter()
            .map(|b| (b.weight, b))
            .collect()
    } else {
        HashMap::new()
    };
    let per_weight: Vec<(Vec<Vec<u32>>, Vec<Vec<u32>>, Vec<Vec<u32>>)> = groups
        .par_iter()
        .map(|(w, coords)| {
            let pos: HashMap<usize, usize> =
                coords.iter().enumerate().map(|(k, &g)| (g, k)).collect();
            let z_local = match out_blocks.get(w) {
                Some(b) => {
                    debug_assert_eq!(&b.sources, coords);
                    b.matrix.kernel_basis()
                }
                None => FpMatrix::identity(f, coords.len()),
            };
            let b_local = match in_blocks.get(w) {
                Some(b) => {
                    // rows of the incoming block are its targets; align with coords
                    let mut aligned = FpMatrix::zeros(f, coords.len(), b.matrix.cols());
                    for (r, g) in b.targets.iter().enumerate() {
                        let k = pos[g];
                        for c in 0..b.matrix.cols() {
                            aligned.set(k, c, b.matrix.get(r, c));
                        }
                    }
                    aligned.column_basis().0
                }
                None => FpMatrix::zeros(f, coords.len(), 0),
            };
            let joint = b_local.hconcat(&z_local).expect("same row count");
            let (_, pivots) = joint.rref();
            let chosen: Vec<usize> = pivots
                .iter()
                .filter(|&&c| c >= b_local.cols())
                .map(|&c| c - b_local.cols())
                .collect();
            let comp_local = z_local.select_columns(&chosen);
            let (mut z, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
            embed(total, coords, &z_local, &mut z);
            embed(total, coords, &b_local, &mut b);
            embed(total, coords, &comp_local, &mut c);
            (z, b, c)
        })
        .collect();
    let (mut z, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
    for (zz, bb, cc) in per_weight {
        z.extend(zz);
        b.extend(bb);
        c.extend(cc);
    }
    let cocycles = FpMatrix::from_columns(f, total, &z)?;
    let coboundaries = FpMatrix::from_columns(f, total, &b)?;
    let complement = FpMatrix::from_columns(f, total, &c)?;
    Ok(KoszulGroup {
        p,
        q,
        dim: complement.cols(),
        cocycles,
        coboundaries,
        complement,
    })
}

/// `β_{p,q}` for `0 <= p <= p_a − 2`, `0 <= q <= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub p_a: usize,
    /// `rows[q][p]`.
    pub rows: Vec<Vec<usize>>,
}

impl BettiTable {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.rows
            .get(q)
            .and_then(|r| r.get(p))
            .copied()
            .unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// Column sums.
    pub fn totals(&self) -> Vec<usize> {
        (0..self.width())
            .map(|p| self.rows.iter().map(|r| r[p]).sum())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain struct")
    }
}

impl fmt::Display for BettiTable {
    /// Rows `0:`..`3:` under a `total:` row, dot for zero.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let totals = self.totals();
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let widths: Vec<usize> = (0..self.width())
            .map(|p| {
                let mut w = p.to_string().len().max(totals[p].to_string().len());
                for r in &self.rows {
                    w = w.max(cell(r[p]).len());
                }
                w
            })
            .collect();
        let label = 6;
        write!(out, "{:>label$}", "")?;
        for (p, w) in widths.iter().enumerate() {
            write!(out, " {:>w$}", p)?;
        }
        writeln!(out)?;
        write!(out, "{:>label$}", "total:")?;
        for (t, w) in totals.iter().zip(&widths) {
            write!(out, " {:>w$}", t)?;
        }
        writeln!(out)?;
        for (q, r) in self.rows.iter().enumerate() {
            write!(out, "{:>label$}", format!("{q}:"))?;
            for (&v, w) in r.iter().zip(&widths) {
                write!(out, " {:>w$}", cell(v))?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Betti table of a graded algebra over its own degree-one piece. Needs the
/// algebra through degree 4, since `K_{p,3}` is the kernel of a map into
/// `∧^{p−1} V ⊗ A_4`.
pub fn betti_table(a: &GradedAlgebra, p_a: usize) -> Result<BettiTable> {
    if a.dims()[1] != p_a {
        return Err(Error::InconsistentDims(format!(
            "degree-one piece has dim {}, expected p_a = {p_a}",
            a.dims()[1]
        )));
    }
    if a.q_max() < 4 {
        return Err(Error::DegreeWindowTooSmall {
            needed: 4,
            have: a.q_max(),
        });
    }
    let m = a.as_module();
    betti_table_of_module(&m, p_a.saturating_sub(2), 3)
}

/// `rows[q][p] = dim K_{p,q}(M)` for `p <= p_max`, `q <= q_top`.
pub fn betti_table_of_module(m: &GradedModule, p_max: usize, q_top: i64) -> Result<BettiTable> {
    let ranks = KoszulRanks::new(m);
    let cells: Vec<(usize, i64)> = (0..=q_top)
        .flat_map(|q| (0..=p_max).map(move |p| (p, q)))
        .collect();
    // warm the cache for the cells concurrently, largest first
    let mut needed: Vec<(usize, i64)> = cells
        .iter()
        .flat_map(|&(p, q)| [(p, q), (p + 1, q - 1)])
        .filter(|&(p, q)| p >= 1 && p <= m.acting_dim() && q >= m.lo())
        .collect();
    needed.sort_unstable();
    needed.dedup();
    needed.sort_by_key(|&(p, q)| {
        std::cmp::Reverse(binomial(m.acting_dim(), p) * m.dim(q).unwrap_or(0))
    });
    needed
        .par_iter()
        .map(|&(p, q)| ranks.rank(p, q).map(|_| ()))
        .collect::<Result<Vec<()>>>()?;
    let mut rows = vec![vec![0usize; p_max + 1]; q_top as usize + 1];
    for (p, q) in cells {
        rows[q as usize][p] = ranks.dim(p, q)?;
    }
    Ok(BettiTable {
        p_a: p_max + 2,
        rows,
    })
}

/// `β_{p,q} = β_{p_a−2−p, 3−q}` for every cell.
pub fn duality_check(t: &BettiTable) -> bool {
    let w = t.p_a.saturating_sub(2);
    if t.rows.len() != 4 || t.rows.iter().any(|r| r.len() != w + 1) {
        return false;
    }
    (0..=3).all(|q| (0..=w).all(|p| t.rows[q][p] == t.rows[3 - q][w - p]))
}

/// Hilbert function of a canonical ribbon of arithmetic genus `p_a`:
/// `1, p_a, (2q−1)(p_a−1)` for `q >= 2`.
pub fn ribbon_hilbert_function(p_a: usize, q: usize) -> i64 {
    match q {
        0 => 1,
        1 => p_a as i64,
        _ => (2 * q as i64 - 1) * (p_a as i64 - 1),
    }
}

/// Compares `Σ_q h(q) t^q · (1−t)^{n}` with `Σ (−1)^p β_{p,q} t^{p+q}`
/// through `t^{deg}`, with `n = p_a` variables. `h` is evaluated for every
/// `q <= deg`.
pub fn hilbert_identity(t: &BettiTable, n: usize, h: impl Fn(usize) -> i64, deg: usize) -> bool {
    let mut lhs = vec![0i64; deg + 1];
    for (k, slot) in lhs.iter_mut().enumerate() {
        for j in 0..=k.min(n) {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            *slot += sign * binomial(n, j) as i64 * h(k - j);
        }
    }
    let mut rhs = vec![0i64; deg + 1];
    for (q, r) in t.rows.iter().enumerate() {
        for (p, &b) in r.iter().enumerate() {
            if p + q <= deg {
                let sign = if p % 2 == 0 { 1 } else { -1 };
                rhs[p + q] += sign * b as i64;
            }
        }
    }
    lhs == rhs
}

/// Hilbert identity for a canonical-ribbon table. `h` supplies the known
/// low-degree dims; beyond them `(2q−1)(p_a−1)` is used.
pub fn hilbert_check(t: &BettiTable, h: &[usize]) -> bool {
    let p_a = t.p_a;
    let hf = |q: usize| match h.get(q) {
        Some(&v) => v as i64,
        None => ribbon_hilbert_function(p_a, q),
    };
    hilbert_identity(t, p_a, hf, p_a + 1)
}

/// Smallest `p` with `β_{p,2} ≠ 0`.
pub fn rcliff(t: &BettiTable) -> Result<usize> {
    t.rows
        .get(2)
        .and_then(|r| r.iter().position(|&v| v != 0))
        .ok_or(Error::NoNonzero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveModel;
    use crate::ff_linalg::{Poly, PrimeField};
    use crate::graded::algebra_from_sections;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn rational_normal_curve(n: usize, q_max: i64) -> GradedAlgebra {
        let line = CurveModel::hyperelliptic(Poly::new(f101(), vec![1, 1])).unwrap();
        let pieces: Vec<_> = (0..=q_max).map(|q| line.sections(n as i64 * q)).collect();
        algebra_from_sections(&pieces).unwrap()
    }

    #[test]
    fn d_squared_is_zero() {
        let m = rational_normal_curve(3, 4).as_module();
        for p in 1..=4 {
            for q in 0..3 {
                let d1 = koszul_differential(&m, p, q).unwrap();
                let d0 = koszul_differential(&m, p - 1, q + 1).unwrap();
                assert!(d0.mul(&d1).unwrap().is_zero(), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn p_zero_is_the_zero_map() {
        let m = rational_normal_curve(2, 2).as_module();
        let d = koszul_differential(&m, 0, 1).unwrap();
        assert_eq!((d.rows(), d.cols()), (0, 3));
    }

    #[test]
    fn out_of_window_is_reported() {
        let m = rational_normal_curve(2, 2).as_module();
        assert_eq!(koszul_differential(&m, 1, 2), Err(Error::OutOfWindow(3)));
        assert!(matches!(koszul_cohomology(&m, 1, 3), Err(Error::OutOfWindow(3))));
        assert_eq!(koszul_cohomology(&m, 0, 2).unwrap().dim, 0);
    }

    #[test]
    fn twisted_cubic() {
        let m = rational_normal_curve(3, 3).as_module();
        assert_eq!(koszul_cohomology(&m, 0, 0).unwrap().dim, 1);
        assert_eq!(koszul_dim(&m, 1, 1).unwrap(), 3);
        assert_eq!(koszul_dim(&m, 2, 1).unwrap(), 2);
        assert_eq!(koszul_dim(&m, 1, 2).unwrap(), 0);
    }

    #[test]
    fn group_dims_match_rank_formula_and_reps_are_cocycles() {
        let m = rational_normal_curve(4, 3).as_module();
        for p in 0..=4 {
            for q in 0..=2 {
                let g = koszul_cohomology(&m, p, q).unwrap();
                assert_eq!(g.dim, koszul_dim(&m, p, q).unwrap());
                assert_eq!(g.dim, g.cocycles.cols() - g.coboundaries.cols());
                if g.cocycles.rows() > 0 {
                    let d = koszul_differential(&m, p, q).unwrap();
                    assert!(d.mul(&g.cocycles).unwrap().is_zero());
                    let both = g.cocycles.hconcat(&g.coboundaries).unwrap();
                    assert_eq!(both.rank(), g.cocycles.cols());
                }
            }
        }
    }

    #[test]
    fn betti_text_layout() {
        let t = BettiTable {
            p_a: 4,
            rows: vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 12, 0], vec![0, 0, 1]],
        };
        let s = t.to_string();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "       0  1 2");
        assert_eq!(lines[1], "total: 1 14 1");
        assert_eq!(lines[2], "    0: 1  . .");
        assert_eq!(lines[5], "    3: .  . 1");
    }

    #[test]
    fn duality_and_rcliff_on_hand_tables() {
        let golden = BettiTable {
            p_a: 9,
            rows: vec![
                vec![1, 0, 0, 0, 0, 0, 0, 0],
                vec![0, 21, 64, 90, 64, 20, 0, 0],
                vec![0, 0, 20, 64, 90, 64, 21, 0],
                vec![0, 0, 0, 0, 0, 0, 0, 1],
            ],
        };
        assert!(duality_check(&golden));
        assert_eq!(golden.totals(), vec![1, 21, 84, 154, 154, 84, 21, 1]);
        assert_eq!(rcliff(&golden), Ok(2));
        assert!(hilbert_check(&golden, &[1, 9, 24, 40]));
        let mut bad = golden.clone();
        bad.rows[1][3] = 91;
        assert!(!duality_check(&bad));
        assert!(!hilbert_check(&bad, &[1, 9, 24, 40]));

        let empty = BettiTable {
            p_a: 4,
            rows: vec![vec![1, 0, 0], vec![0; 3], vec![0; 3], vec![0; 3]],
        };
        assert_eq!(rcliff(&empty), Err(Error::NoNonzero));
    }

    #[test]
    fn unit_only_table_with_trivial_hilbert_function() {
        let t = BettiTable {
            p_a: 2,
            rows: vec![vec![1], vec![0], vec![0], vec![0]],
        };
        assert!(hilbert_identity(&t, 0, |q| (q == 0) as i64, 5));
    }
}
