//! Group law on a genus-one model `y^2 = x^3 + a x^2 + b x + c` with the point
//! at infinity as identity.

use std::collections::BTreeMap;

use super::{CurveModel, CurvePoint};
use crate::error::{Error, Result};
use crate::ff_linalg::PrimeField;

#[derive(Clone, Debug)]
pub struct EllipticGroup {
    field: PrimeField,
    a2: u32,
    a4: u32,
}

impl EllipticGroup {
    pub fn new(model: &CurveModel) -> Result<Self> {
        let CurveModel::Hyperelliptic(c) = model else {
            return Err(Error::Unsupported("group law needs a Weierstrass model".into()));
        };
        if c.genus() != 1 || c.h().leading() != 1 {
            return Err(Error::Unsupported(
                "group law needs a monic cubic y^2 = h(x)".into(),
            ));
        }
        Ok(EllipticGroup {
            field: c.field(),
            a2: c.h().coeff(2),
            a4: c.h().coeff(1),
        })
    }

    pub fn neg(&self, p: CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x, self.field.neg(y)),
            other => other,
        }
    }

    pub fn add(&self, p: CurvePoint, q: CurvePoint) -> CurvePoint {
        let f = self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, r) | (r, CurvePoint::Infinity) => return r,
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
            _ => panic!("projective point passed to the Weierstrass group law"),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return CurvePoint::Infinity;
            }
            // (3x^2 + 2 a2 x + a4) / 2y
            let num = f.add(
                f.add(f.mul(3, f.mul(x1, x1)), f.mul(f.mul(2, self.a2), x1)),
                self.a4,
            );
            f.mul(num, f.inv(f.mul(2, y1)))
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)))
        };
        let x3 = f.sub(f.sub(f.sub(f.mul(lambda, lambda), self.a2), x1), x2);
        let y3 = f.neg(f.add(y1, f.mul(lambda, f.sub(x3, x1))));
        CurvePoint::Affine(x3, y3)
    }

    pub fn double(&self, p: CurvePoint) -> CurvePoint {
        self.add(p, p)
    }

    /// Groups the given points by their double: `2T -> [T]`.
    pub fn halvings(&self, points: &[CurvePoint]) -> BTreeMap<CurvePointKey, Vec<CurvePoint>> {
        let mut out: BTreeMap<CurvePointKey, Vec<CurvePoint>> = BTreeMap::new();
        for &t in points {
            out.entry(CurvePointKey(self.double(t))).or_default().push(t);
        }
        out
    }
}

/// Total order on points for use as a map key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurvePointKey(pub CurvePoint);

impl CurvePointKey {
    fn rank(&self) -> (u8, u32, u32, u32) {
        match self.0 {
            CurvePoint::Infinity => (0, 0, 0, 0),
            CurvePoint::Affine(x, y) => (1, x, y, 0),
            CurvePoint::Projective(v) => (2, v[0], v[1], v[2]),
        }
    }
}

impl PartialOrd for CurvePointKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CurvePointKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_linalg::Poly;

    #[test]
    fn group_axioms_on_all_points() {
        let f = PrimeField::new(31).unwrap();
        let c = CurveModel::hyperelliptic(Poly::new(f, vec![5, 2, 3, 1])).unwrap();
        let g = EllipticGroup::new(&c).unwrap();
        let pts = c.rational_points(usize::MAX);
        for &p in &pts {
            assert_eq!(g.add(p, g.neg(p)), CurvePoint::Infinity);
            for &q in pts.iter().take(12) {
                let s = g.add(p, q);
                assert!(c.contains(s));
                assert_eq!(s, g.add(q, p));
                for &r in pts.iter().take(5) {
                    assert_eq!(g.add(g.add(p, q), r), g.add(p, g.add(q, r)));
                }
            }
        }
        // Hasse bound
        let n = pts.len() as f64;
        assert!((n - 32.0).abs() <= 2.0 * 31f64.sqrt());
    }

    #[test]
    fn two_torsion_of_a_split_cubic() {
        let f = PrimeField::new(101).unwrap();
        let c = CurveModel::hyperelliptic(Poly::from_roots(f, &[0, 1, 100])).unwrap();
        let g = EllipticGroup::new(&c).unwrap();
        let halves = g.halvings(&c.rational_points(usize::MAX));
        let mut tors = halves[&CurvePointKey(CurvePoint::Infinity)].clone();
        tors.sort_by_key(|&p| CurvePointKey(p));
        assert_eq!(
            tors,
            vec![
                CurvePoint::Infinity,
                CurvePoint::Affine(0, 0),
                CurvePoint::Affine(1, 0),
                CurvePoint::Affine(100, 0)
            ]
        );
    }
}
