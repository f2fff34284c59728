//! Smooth plane curves `f(x, y, z) = 0`.
//!
//! Sections of `O_C(q)` are degree-`q` forms modulo `f`. Since the ideal is
//! principal, `{f}` is already a Gröbner basis and the normal-form basis of
//! degree `q` is the set of monomials not divisible by the leading monomial of
//! `f` in graded-lex order (`x > y > z`).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ff_linalg::{binomial, FpMatrix, PrimeField};

/// Exponent vector `x^a y^b z^c`.
pub type Exponent = [u32; 3];

/// Homogeneous polynomial in three variables, stored as sparse terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    field: PrimeField,
    degree: usize,
    terms: Vec<(Exponent, u32)>,
}

impl TernaryForm {
    /// Builds a form from `(exponent, coefficient)` terms; like terms are merged.
    pub fn new(field: PrimeField, degree: usize, terms: &[(Exponent, u32)]) -> Result<Self> {
        let mut merged: HashMap<Exponent, u32> = HashMap::new();
        for &(e, c) in terms {
            if e.iter().sum::<u32>() as usize != degree {
                return Err(Error::WrongDegree { expected: degree });
            }
            let slot = merged.entry(e).or_insert(0);
            *slot = field.add(*slot, c % field.modulus());
        }
        let mut terms: Vec<(Exponent, u32)> = merged.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        Ok(TernaryForm {
            field,
            degree,
            terms,
        })
    }

    /// Dense form from coefficients listed in [`monomials`] order.
    pub fn from_dense(field: PrimeField, degree: usize, coeffs: &[u32]) -> Result<Self> {
        let mons = monomials(degree);
        if coeffs.len() != mons.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} monomials of degree {degree}",
                coeffs.len(),
                mons.len()
            )));
        }
        let terms: Vec<_> = mons.into_iter().zip(coeffs.iter().copied()).collect();
        Self::new(field, degree, &terms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Exponent, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, pt: [u32; 3]) -> u32 {
        let f = self.field;
        self.terms.iter().fold(0, |acc, &(e, c)| {
            f.add(acc, f.mul(c, eval_monomial(f, e, pt)))
        })
    }

    pub fn partial(&self, var: usize) -> TernaryForm {
        let f = self.field;
        let terms: Vec<(Exponent, u32)> = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|&(mut e, c)| {
                let k = e[var];
                e[var] -= 1;
                (e, f.mul(c, f.reduce(k as u64)))
            })
            .collect();
        TernaryForm::new(f, self.degree.saturating_sub(1), &terms)
            .expect("partial derivative keeps homogeneity")
    }
}

pub(crate) fn eval_monomial(f: PrimeField, e: Exponent, pt: [u32; 3]) -> u32 {
    (0..3).fold(1, |acc, i| f.mul(acc, f.pow(pt[i], e[i] as u64)))
}

/// Degree-`d` monomials in descending graded-lex order.
pub fn monomials(d: usize) -> Vec<Exponent> {
    let d = d as u32;
    let mut out = Vec::with_capacity(binomial(d as usize + 2, 2));
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn divides(a: Exponent, b: Exponent) -> bool {
    (0..3).all(|i| a[i] <= b[i])
}

#[derive(Clone, Debug)]
pub struct PlaneCurveModel {
    field: PrimeField,
    f: TernaryForm,
    leading: Exponent,
}

impl PlaneCurveModel {
    /// Validates homogeneity and the Jacobian-ideal smoothness certificate.
    pub fn new(f: TernaryForm) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::NotSmooth("zero polynomial".into()));
        }
        if f.degree() == 0 {
            return Err(Error::WrongDegree { expected: 1 });
        }
        let leading = f.terms()[0].0;
        let model = PlaneCurveModel {
            field: f.field,
            f,
            leading,
        };
        model.check_smooth()?;
        Ok(model)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn genus(&self) -> usize {
        let d = self.degree();
        (d - 1) * (d.saturating_sub(2)) / 2
    }

    pub fn form(&self) -> &TernaryForm {
        &self.f
    }

    /// Leading monomial of `f` in graded-lex order.
    pub fn leading_monomial(&self) -> Exponent {
        self.leading
    }

    /// The ideal `(f, f_x, f_y, f_z)` must contain every form of degree
    /// `3(d-1)-2`; this certifies an empty singular locus.
    fn check_smooth(&self) -> Result<()> {
        let d = self.degree();
        let target = (3 * (d as i64 - 1) - 2).max(0) as usize;
        let gens = [
            self.f.clone(),
            self.f.partial(0),
            self.f.partial(1),
            self.f.partial(2),
        ];
        let tmons = monomials(target);
        let index: HashMap<Exponent, usize> =
            tmons.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut columns = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero() && g.degree() <= target) {
            for shift in monomials(target - g.degree()) {
                let mut col = vec![0u32; tmons.len()];
                for &(e, c) in g.terms() {
                    let m = [e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]];
                    col[index[&m]] = c;
                }
                columns.push(col);
            }
        }
        let m = FpMatrix::from_columns(self.field, tmons.len(), &columns)?;
        if m.rank() == tmons.len() {
            Ok(())
        } else {
            Err(Error::NotSmooth(format!(
                "Jacobian ideal misses forms of degree {target}"
            )))
        }
    }

    /// Normal-form monomial basis of `O_C(q)`.
    pub fn basis(&self, q: i64) -> Vec<Exponent> {
        if q < 0 {
            return Vec::new();
        }
        monomials(q as usize)
            .into_iter()
            .filter(|&e| !divides(self.leading, e))
            .collect()
    }

    /// For every degree-`q` monomial, its normal form as a dense vector over
    /// `basis(q)`.
    pub fn normal_forms(&self, q: usize) -> HashMap<Exponent, Vec<u32>> {
        let f = self.field;
        let basis = self.basis(q as i64);
        let bidx: HashMap<Exponent, usize> =
            basis.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let lc_inv = f.inv(self.f.terms()[0].1);
        let mut nf: HashMap<Exponent, Vec<u32>> = HashMap::new();
        // ascending order: every reduction step only refers to smaller monomials
        for u in monomials(q).into_iter().rev() {
            let mut v = vec![0u32; basis.len()];
            if let Some(&i) = bidx.get(&u) {
                v[i] = 1;
            } else {
                let quot = [
                    u[0] - self.leading[0],
                    u[1] - self.leading[1],
                    u[2] - self.leading[2],
                ];
                for &(e, c) in &self.f.terms()[1..] {
                    let w = [quot[0] + e[0], quot[1] + e[1], quot[2] + e[2]];
                    let coef = f.neg(f.mul(c, lc_inv));
                    for (x, &y) in v.iter_mut().zip(&nf[&w]) {
                        *x = f.add(*x, f.mul(coef, y));
                    }
                }
            }
            nf.insert(u, v);
        }
        nf
    }

    /// Projective rational points, normalized with first nonzero coordinate 1.
    pub fn rational_points(&self, max_count: usize) -> Vec<[u32; 3]> {
        let p = self.field.modulus();
        let mut out = Vec::new();
        let push = |pt: [u32; 3], out: &mut Vec<[u32; 3]>| {
            if out.len() < max_count && self.f.eval(pt) == 0 {
                out.push(pt);
            }
        };
        for y in 0..p {
            for z in 0..p {
                push([1, y, z], &mut out);
            }
        }
        for z in 0..p {
            push([0, 1, z], &mut out);
        }
        push([0, 0, 1], &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(f: PrimeField) -> TernaryForm {
        TernaryForm::new(f, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]).unwrap()
    }

    #[test]
    fn fermat_quartic_is_smooth_genus_three() {
        let f = PrimeField::new(101).unwrap();
        let c = PlaneCurveModel::new(fermat(f)).unwrap();
        assert_eq!(c.genus(), 3);
    }

    #[test]
    fn non_reduced_quartic_is_rejected() {
        let f = PrimeField::new(101).unwrap();
        let x4 = TernaryForm::new(f, 4, &[([4, 0, 0], 1)]).unwrap();
        assert!(matches!(PlaneCurveModel::new(x4), Err(Error::NotSmooth(_))));
        // a nodal cubic: y^2 z = x^3 + x^2 z
        let nodal = TernaryForm::new(
            f,
            3,
            &[([0, 2, 1], 1), ([3, 0, 0], 100), ([2, 0, 1], 100)],
        )
        .unwrap();
        assert!(PlaneCurveModel::new(nodal).is_err());
    }

    #[test]
    fn inhomogeneous_terms_are_rejected() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(
            TernaryForm::new(f, 4, &[([4, 0, 0], 1), ([1, 0, 0], 1)]),
            Err(Error::WrongDegree { expected: 4 })
        );
    }

    #[test]
    fn points_satisfy_the_equation_and_match_exhaustive_scan() {
        let f = PrimeField::new(31).unwrap();
        let c = PlaneCurveModel::new(fermat(f)).unwrap();
        let pts = c.rational_points(usize::MAX);
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|&pt| c.form().eval(pt) == 0));
        // exhaustive scan of the affine cone, divided by the scalars
        let mut cone = 0usize;
        for x in 0..31 {
            for y in 0..31 {
                for z in 0..31 {
                    if (x, y, z) != (0, 0, 0) && c.form().eval([x, y, z]) == 0 {
                        cone += 1;
                    }
                }
            }
        }
        assert_eq!(cone, pts.len() * 30);
    }
}
