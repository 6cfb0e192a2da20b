//! The cross-t-intersecting predicate and the Galois closure maps alpha/beta
//! between k-families and l-families. Closed pairs are exactly the maximal
//! cross-t-intersecting pairs.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{domain, Result};
use crate::sets::{common_core, enumerate_ksubsets, GroundSize, UniformFamily};

/// Parameters (n, k, l, t) of a cross-t-intersecting instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossParams {
    pub n: GroundSize,
    pub k: u32,
    pub l: u32,
    pub t: u32,
}

impl CrossParams {
    pub fn new(n: GroundSize, k: u32, l: u32, t: u32) -> Result<CrossParams> {
        if t < 1 {
            return Err(domain("cross parameters need t >= 1".to_string()));
        }
        if t > k.min(l) || k.max(l) > n.get() {
            return Err(domain(format!(
                "cross parameters need t <= min(k,l) <= max(k,l) <= n, got n={n} k={k} l={l} t={t}"
            )));
        }
        Ok(CrossParams { n, k, l, t })
    }
}

type LevelCache = Mutex<HashMap<(u32, u32), Arc<Vec<u64>>>>;

static LEVEL_CACHE: OnceLock<LevelCache> = OnceLock::new();

/// The full level binom(`[n]`, k) as raw masks, cached per (n, k) and shared
/// read-only.
pub(crate) fn level(n: GroundSize, k: u32) -> Arc<Vec<u64>> {
    let cache = LEVEL_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((n.get(), k))
        .or_insert_with(|| {
            let fam = enumerate_ksubsets(n, k).expect("level: k <= n");
            Arc::new(fam.masks().collect())
        })
        .clone()
}

/// True iff every pair (a, b) meets in at least t elements. Vacuously true
/// when either family is empty.
pub fn is_cross_t(a: &UniformFamily, b: &UniformFamily, t: u32) -> Result<bool> {
    if a.n() != b.n() {
        return Err(domain("is_cross_t: mismatched ground sizes".to_string()));
    }
    for am in a.masks() {
        for bm in b.masks() {
            if (am & bm).count_ones() < t {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// { B in binom(`[n]`, l) : |A ∩ B| >= t for every A in `a` }. Returns the full
/// l-level when `a` is empty (the condition is vacuous).
pub fn beta(a: &UniformFamily, l: u32, t: u32) -> Result<UniformFamily> {
    let n = a.n();
    if l > n.get() || t > l {
        return Err(domain(format!("beta: need t <= l <= n, got l={l} t={t} n={n}")));
    }
    let lvl = level(n, l);
    let masks = lvl
        .iter()
        .copied()
        .filter(|&bm| a.masks().all(|am| (am & bm).count_ones() >= t));
    UniformFamily::from_masks(n, l, masks)
}

/// Dual closure: { A in binom(`[n]`, k) : |A ∩ B| >= t for every B in `b` }.
pub fn alpha(b: &UniformFamily, k: u32, t: u32) -> Result<UniformFamily> {
    beta(b, k, t)
}

/// A pair (A, B) closed under both Galois maps: a formal concept of the
/// intersection relation, equivalently a maximal cross-t-intersecting pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPair {
    params: CrossParams,
    a: UniformFamily,
    b: UniformFamily,
}

impl ClosedPair {
    pub fn new(params: CrossParams, a: UniformFamily, b: UniformFamily) -> Result<ClosedPair> {
        if a.n() != params.n || b.n() != params.n || a.k() != params.k || b.k() != params.l {
            return Err(domain("closed pair: families do not match parameters".to_string()));
        }
        if beta(&a, params.l, params.t)? != b {
            return Err(domain("closed pair: B != beta(A)".to_string()));
        }
        if alpha(&b, params.k, params.t)? != a {
            return Err(domain("closed pair: A != alpha(B)".to_string()));
        }
        Ok(ClosedPair { params, a, b })
    }

    pub(crate) fn new_unchecked(
        params: CrossParams,
        a: UniformFamily,
        b: UniformFamily,
    ) -> ClosedPair {
        debug_assert_eq!(beta(&a, params.l, params.t).unwrap(), b);
        debug_assert_eq!(alpha(&b, params.k, params.t).unwrap(), a);
        ClosedPair { params, a, b }
    }

    pub fn params(&self) -> &CrossParams {
        &self.params
    }

    pub fn a(&self) -> &UniformFamily {
        &self.a
    }

    pub fn b(&self) -> &UniformFamily {
        &self.b
    }

    pub fn product(&self) -> BigInt {
        BigInt::from(self.a.len()) * BigInt::from(self.b.len())
    }
}

/// Close a seed k-family into a maximal pair: (alpha(beta(A0)), beta(A0)).
pub fn close_pair(a0: &UniformFamily, params: &CrossParams) -> Result<ClosedPair> {
    if a0.n() != params.n || a0.k() != params.k {
        return Err(domain("close_pair: seed does not match parameters".to_string()));
    }
    let b = beta(a0, params.l, params.t)?;
    let a = alpha(&b, params.k, params.t)?;
    Ok(ClosedPair::new_unchecked(*params, a, b))
}

/// True iff all members of both families share at least 2 common elements.
pub fn is_trivial_pair(p: &ClosedPair) -> Result<bool> {
    if p.a.is_empty() || p.b.is_empty() {
        return Err(domain("is_trivial_pair: empty side".to_string()));
    }
    Ok(common_core(&[&p.a, &p.b])?.card() >= 2)
}
