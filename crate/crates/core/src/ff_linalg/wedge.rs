//! Colexicographic indexing of exterior-power bases.
//!
//! The basis of `∧^p k^n` is the set of `p`-subsets of `{0..n-1}`. A subset
//! `s_0 < s_1 < ... < s_{p-1}` has colex rank `Σ binom(s_i, i + 1)`.

#[derive(Clone, Debug)]
pub struct WedgeIndex {
    n: usize,
    p: usize,
    subsets: Vec<Vec<usize>>,
}

/// `binom(n, k)` without overflow for the sizes used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

impl WedgeIndex {
    pub fn new(n: usize, p: usize) -> Self {
        let count = binomial(n, p);
        let subsets = (0..count).map(|i| unrank(p, i)).collect();
        WedgeIndex { n, p, subsets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn count(&self) -> usize {
        self.subsets.len()
    }

    /// Subsets in colex order.
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    /// Colex rank of a strictly increasing subset.
    pub fn rank(subset: &[usize]) -> usize {
        subset
            .iter()
            .enumerate()
            .map(|(i, &s)| binomial(s, i + 1))
            .sum()
    }
}

/// The `p`-subset with colex rank `i`.
pub fn unrank(p: usize, mut i: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for k in (1..=p).rev() {
        // largest s with binom(s, k) <= i
        let mut s = k - 1;
        while binomial(s + 1, k) <= i {
            s += 1;
        }
        out[k - 1] = s;
        i -= binomial(s, k);
    }
    out
}
