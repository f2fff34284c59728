//! Curves `y^2 = h(x)` with `deg h = 2g + 1`, polarized by the Weierstrass
//! point at infinity.
//!
//! `x` has a pole of order 2 at infinity and `y` a pole of order `2g + 1`, so
//! `H^0(O(m P∞))` has basis `{x^i : 2i <= m} ∪ {x^i y : 2i + 2g + 1 <= m}`.
//! A linear `h` gives the projective line, where the same basis is the space
//! of polynomials in `y` of degree at most `m`.

use crate::error::{Error, Result};
use crate::ff_linalg::{Poly, PrimeField};

#[derive(Clone, Debug)]
pub struct HyperellipticModel {
    h: Poly,
    genus: usize,
}

impl HyperellipticModel {
    pub fn new(h: Poly) -> Result<Self> {
        let field = h.field();
        if field.modulus() == 2 {
            return Err(Error::Unsupported(
                "y^2 = h(x) is never smooth in characteristic 2".into(),
            ));
        }
        let deg = h
            .degree()
            .ok_or_else(|| Error::NotSmooth("zero polynomial".into()))?;
        if deg % 2 == 0 {
            return Err(Error::WrongDegree { expected: deg + 1 });
        }
        if !h.is_squarefree() {
            return Err(Error::NotSmooth("h(x) is not squarefree".into()));
        }
        Ok(HyperellipticModel {
            genus: (deg - 1) / 2,
            h,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.h.field()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    /// Pole order of `x^i y^e` at infinity.
    pub fn pole_order(&self, i: u32, e: u32) -> i64 {
        2 * i as i64 + e as i64 * (2 * self.genus as i64 + 1)
    }

    /// Basis `[(i, e)]` of `H^0(O(m P∞))`: the `x^i` first, then the `x^i y`.
    pub fn basis(&self, m: i64) -> Vec<(u32, u32)> {
        if m < 0 {
            return Vec::new();
        }
        let mut out: Vec<(u32, u32)> = (0..).take_while(|&i| 2 * i as i64 <= m).map(|i| (i, 0)).collect();
        out.extend(
            (0..)
                .take_while(|&i| self.pole_order(i, 1) <= m)
                .map(|i| (i, 1)),
        );
        out
    }

    /// Affine point test.
    pub fn contains(&self, x: u32, y: u32) -> bool {
        let f = self.field();
        f.mul(y, y) == self.h.eval(x)
    }

    /// Rational points: `None` is the point at infinity, listed first; affine
    /// points follow sorted by `(x, y)`.
    pub fn rational_points(&self, max_count: usize) -> Vec<Option<(u32, u32)>> {
        let f = self.field();
        let mut out = Vec::new();
        if max_count == 0 {
            return out;
        }
        out.push(None);
        'outer: for x in 0..f.modulus() {
            let v = self.h.eval(x);
            if let Some(r) = f.sqrt(v) {
                let mut ys = vec![r];
                if r != 0 {
                    ys.push(f.modulus() - r);
                }
                ys.sort_unstable();
                for y in ys {
                    if out.len() >= max_count {
                        break 'outer;
                    }
                    out.push(Some((x, y)));
                }
            }
        }
        out
    }
}
