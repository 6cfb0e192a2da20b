//! Dense integer polynomials in one variable, used by the sweep tail
//! certificates: a polynomial whose derivatives of every order are strictly
//! positive at u is strictly positive on [u, ∞).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    /// coeffs[d] is the coefficient of x^d; no trailing zeros.
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::from_coeffs(vec![c.into()])
    }

    /// a*x + b
    pub fn linear(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Poly {
        Poly::from_coeffs(vec![b.into(), a.into()])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (d, c) in self.coeffs.iter().enumerate() {
            coeffs[d] += c;
        }
        for (d, c) in other.coeffs.iter().enumerate() {
            coeffs[d] += c;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (d, c) in self.coeffs.iter().enumerate() {
            coeffs[d] += c;
        }
        for (d, c) in other.coeffs.iter().enumerate() {
            coeffs[d] -= c;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (da, ca) in self.coeffs.iter().enumerate() {
            for (db, cb) in other.coeffs.iter().enumerate() {
                coeffs[da + db] += ca * cb;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn deriv(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, c)| c * BigInt::from(d))
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

/// Smallest point found at or after `from` where the polynomial and all of
/// its derivatives are strictly positive, which makes it strictly positive
/// on the whole ray [point, ∞). Returns None when the leading coefficient is
/// not positive (no such ray exists).
pub fn positive_ray_start(p: &Poly, from: &BigInt) -> Option<BigInt> {
    if !matches!(p.leading(), Some(c) if c.is_positive()) {
        return None;
    }
    let mut chain = vec![p.clone()];
    loop {
        let d = chain.last().unwrap().deriv();
        if d.degree().is_none() {
            break;
        }
        chain.push(d);
    }
    let all_positive = |x: &BigInt| chain.iter().all(|q| q.eval(x).is_positive());

    let mut hi = from.clone();
    if !hi.is_positive() {
        hi = BigInt::from(1);
    }
    for _ in 0..256 {
        if all_positive(&hi) {
            // binary refine down toward `from`
            let mut lo = from.clone();
            while lo < hi {
                let mid = (&lo + &hi) / 2;
                if all_positive(&mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            return Some(hi);
        }
        hi = &hi * 2 + 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 2]); // 2x + 1
        let b = p(&[3, 0, 1]); // x^2 + 3
        assert_eq!(a.add(&b), p(&[4, 2, 1]));
        assert_eq!(b.sub(&a), p(&[2, -2, 1]));
        assert_eq!(a.mul(&b), p(&[3, 6, 1, 2]));
        assert_eq!(a.mul(&b).eval(&BigInt::from(5)), p(&[3, 6, 1, 2]).eval(&BigInt::from(5)));
        assert_eq!(b.deriv(), p(&[0, 2]));
        assert_eq!(p(&[7]).deriv(), Poly::zero());
    }

    #[test]
    fn ray_certificate() {
        // (x - 10)^2 - 1 is positive for x >= 12
        let q = p(&[-10, 1]).mul(&p(&[-10, 1])).sub(&p(&[1]));
        let start = positive_ray_start(&q, &BigInt::from(0)).unwrap();
        assert!(q.eval(&start).is_positive());
        // every integer from the start onward is positive (spot check)
        for x in 0..40 {
            let v = q.eval(&BigInt::from(x));
            if BigInt::from(x) >= start {
                assert!(v.is_positive());
            }
        }
        // certified start can exceed the first positive point but never
        // misses the ray: it must be <= some explicit positive point far out
        assert!(start <= BigInt::from(100));

        // negative leading coefficient has no positive ray
        assert!(positive_ray_start(&p(&[5, -1]), &BigInt::from(0)).is_none());
    }
}
