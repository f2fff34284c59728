//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use ribbon_core::ff_linalg::{FpMatrix, PrimeField};
use ribbon_core::graded::GradedModule;

pub fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

/// Fraction-free elimination: `a_ij <- a_kk a_ij − a_ik a_kj`, no inverses.
pub fn naive_rank(p: u64, rows: &[Vec<u64>]) -> usize {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let (k, m) = (a[rank][c], a[r][c]);
                for j in 0..cols {
                    a[r][j] = (k * a[r][j] % p + p - m * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn matrix_rows(m: &FpMatrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c) as u64).collect())
        .collect()
}

pub fn random_matrix(f: PrimeField, rows: usize, cols: usize, rng: &mut impl Rng) -> FpMatrix {
    FpMatrix::from_fn(f, rows, cols, |_, _| rng.gen_range(0..f.modulus()))
}

/// A random module over an `n`-dimensional acting space with the given
/// piece dims. Each new action layer is a random solution of the linear
/// commutativity constraints against the previous layer.
pub fn random_module(f: PrimeField, n: usize, lo: i64, dims: &[usize], rng: &mut impl Rng) -> GradedModule {
    let mut action: Vec<Vec<FpMatrix>> = Vec::new();
    for k in 0..dims.len() - 1 {
        let (src, tgt) = (dims[k], dims[k + 1]);
        let layer = match action.last() {
            None => (0..n).map(|_| random_matrix(f, tgt, src, rng)).collect(),
            Some(prev) => commuting_layer(f, prev, dims[k - 1], src, tgt, rng),
        };
        action.push(layer);
    }
    GradedModule::new(f, n, lo, dims.to_vec(), action).unwrap()
}

/// Unknowns `B_i` (tgt x mid) with `B_i A_j = B_j A_i` for `A: src → mid`.
fn commuting_layer(
    f: PrimeField,
    prev: &[FpMatrix],
    src: usize,
    mid: usize,
    tgt: usize,
    rng: &mut impl Rng,
) -> Vec<FpMatrix> {
    let n = prev.len();
    let per = tgt * mid;
    let var = |i: usize, r: usize, c: usize| i * per + r * mid + c;
    let mut eqs: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for r in 0..tgt {
                for c in 0..src {
                    let mut row = vec![0u32; n * per];
                    for m in 0..mid {
                        row[var(i, r, m)] = f.add(row[var(i, r, m)], prev[j].get(m, c));
                        row[var(j, r, m)] = f.sub(row[var(j, r, m)], prev[i].get(m, c));
                    }
                    eqs.push(row);
                }
            }
        }
    }
    let sol = if eqs.is_empty() {
        FpMatrix::identity(f, n * per)
    } else {
        FpMatrix::from_fn(f, eqs.len(), n * per, |r, c| eqs[r][c]).kernel_basis()
    };
    let mut x = vec![0u32; n * per];
    for k in 0..sol.cols() {
        let c = rng.gen_range(0..f.modulus());
        for (v, s) in x.iter_mut().zip(sol.column(k)) {
            *v = f.add(*v, f.mul(c, s));
        }
    }
    (0..n)
        .map(|i| FpMatrix::from_fn(f, tgt, mid, |r, c| x[var(i, r, c)]))
        .collect()
}

/// Subsets of `0..n` of size `p` as bitmasks, in an order unrelated to the
/// engine's.
fn subsets(n: usize, p: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == p).collect()
}

/// The Koszul differential `∧^p V ⊗ M_q → ∧^{p−1} V ⊗ M_{q+1}` built from
/// scratch with bitmask wedges.
pub fn brute_differential(m: &GradedModule, p: usize, q: i64) -> Vec<Vec<u64>> {
    let f = m.field();
    let n = m.acting_dim();
    let src_dim = m.dim(q).unwrap();
    let tgt_dim = m.dim(q + 1).unwrap_or(0);
    let src = subsets(n, p);
    let tgt = subsets(n, p.wrapping_sub(1).min(n));
    let tgt_pos = |s: u32| tgt.iter().position(|&t| t == s).unwrap();
    let rows = if p == 0 { 0 } else { tgt.len() * tgt_dim };
    let mut d = vec![vec![0u64; src.len() * src_dim]; rows];
    if p == 0 || tgt_dim == 0 {
        return d;
    }
    for (si, &s) in src.iter().enumerate() {
        let mut pos = 0;
        for j in 0..n {
            if s & (1 << j) == 0 {
                continue;
            }
            let sign_neg = pos % 2 == 1;
            pos += 1;
            let ti = tgt_pos(s & !(1 << j));
            let a = m.action(q, j).unwrap();
            for c in 0..src_dim {
                for r in 0..tgt_dim {
                    let v = a.get(r, c);
                    let v = if sign_neg { f.neg(v) } else { v };
                    let row = ti * tgt_dim + r;
                    let col = si * src_dim + c;
                    d[row][col] = (d[row][col] + v as u64) % f.modulus() as u64;
                }
            }
        }
    }
    d
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim ∧^p V ⊗ M_q − rank d_{p,q} − rank d_{p+1,q−1}` from the
/// bitmask differentials and fraction-free ranks.
pub fn brute_koszul_dim(m: &GradedModule, p: usize, q: i64) -> usize {
    let pm = m.field().modulus() as u64;
    let n = m.acting_dim();
    let dim_q = if q < m.lo() { 0 } else { m.dim(q).unwrap() };
    let total = binom(n, p) * dim_q;
    let out = if dim_q == 0 || q >= m.hi() {
        0
    } else {
        naive_rank(pm, &brute_differential(m, p, q))
    };
    let inc = if p + 1 > n || q - 1 < m.lo() {
        0
    } else {
        naive_rank(pm, &brute_differential(m, p + 1, q - 1))
    };
    total - out - inc
}

pub struct SuiteCase {
    pub label: String,
    pub ribbon: ribbon_core::ribbon::SplitRibbonRing,
    pub table: ribbon_core::koszul::BettiTable,
}

/// Split ribbons with `p_a <= 10` over the quartic, elliptic, genus-two and
/// genus-zero models, computed once per test binary.
pub fn table_suite() -> &'static [SuiteCase] {
    static SUITE: std::sync::OnceLock<Vec<SuiteCase>> = std::sync::OnceLock::new();
    SUITE.get_or_init(build_suite)
}

fn build_suite() -> Vec<SuiteCase> {
    use rand::SeedableRng;
    use ribbon_core::curve::CurveModel;
    use ribbon_core::koszul::betti_table;
    use ribbon_core::ribbon::build_split_ribbon;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let f = f101();
    let quartic = CurveModel::random_plane(f, 4, &mut rng).unwrap();
    let mut inputs = vec![(quartic, -1)];
    for (g, ts) in [(0usize, -11i64..=-3), (1, -9..=-2), (2, -7..=-3)] {
        let c = CurveModel::random_hyperelliptic(f, g, &mut rng).unwrap();
        inputs.extend(ts.map(|t| (c.clone(), t)));
    }
    inputs
        .into_iter()
        .map(|(c, t)| {
            let ribbon = build_split_ribbon(&c, t).unwrap();
            let table = betti_table(ribbon.ring(), ribbon.p_a()).unwrap();
            SuiteCase {
                label: format!("{} g={} t={t} p_a={}", c.family(), c.genus(), ribbon.p_a()),
                ribbon,
                table,
            }
        })
        .collect()
}
