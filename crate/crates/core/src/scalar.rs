//! Exact scalars: arbitrary-precision integers for counts and binomials,
//! exact rationals for inequality values. No floating point anywhere on an
//! assertion path; decimal renderings are display-only.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// C(n, k), exactly. Out-of-range k (negative or above n) yields 0;
/// negative n is a domain error.
pub fn binomial(n: i64, k: i64) -> Result<Int> {
    if n < 0 {
        return Err(domain(format!("binomial: negative n = {n}")));
    }
    Ok(bi(n, k))
}

/// Internal binomial for call sites that guarantee n >= 0.
pub(crate) fn bi(n: i64, k: i64) -> Int {
    debug_assert!(n >= 0);
    if k < 0 || k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut res = Int::one();
    for j in 0..k {
        res *= n - j;
        res /= j + 1; // exact: the running product of j+1 consecutive integers
    }
    res
}

pub(crate) fn rat(num: Int, den: Int) -> Rat {
    debug_assert!(!den.is_zero());
    Rat::new(num, den)
}
