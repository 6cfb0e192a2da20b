//! The named extremal families and their exact sizes and products: 2-stars,
//! the Frankl prefix-majority families, and the prefix families A, B, H, I
//! together with the products h and f used by the nontrivial bound.

use num_bigint::BigInt;

use crate::error::{domain, Result};
use crate::scalar::bi;
use crate::sets::{low_mask, GroundSize, UniformFamily};

/// Guard for explicit enumeration; level sets above this are refused.
const BUILD_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// All k-sets containing a fixed 2-element core.
    Star { core: Vec<u32> },
    /// { A : |A ∩ [t+2r]| >= t+r }.
    Frankl { t: u32, r: u32 },
    /// { A : `[s]` ⊆ A }.
    A { s: u32 },
    /// { A : |A ∩ `[s]`| >= 2 }.
    B { s: u32 },
    /// { A : `[2]` ⊆ A or |A ∩ `[s]`| >= s-1 }.
    H { s: u32 },
    /// { A : `[2]` ⊆ A and |A ∩ `[s]`| >= 3 }.
    I { s: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: u32,
    pub k: u32,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: u32, k: u32) -> Result<FamilySpec> {
        if k > n {
            return Err(domain(format!("family spec: k = {k} > n = {n}")));
        }
        match &kind {
            FamilyKind::Star { core } => {
                if core.len() != 2 || core[0] == core[1] {
                    return Err(domain("star core must be two distinct elements".to_string()));
                }
                if core.iter().any(|&e| e == 0 || e > n) {
                    return Err(domain("star core element outside [n]".to_string()));
                }
            }
            FamilyKind::Frankl { t, r } => {
                if *t < 1 {
                    return Err(domain("frankl family needs t >= 1".to_string()));
                }
                if t + 2 * r > n {
                    return Err(domain(format!(
                        "frankl family needs t + 2r <= n, got t={t} r={r} n={n}"
                    )));
                }
            }
            FamilyKind::A { s } | FamilyKind::B { s } | FamilyKind::H { s } | FamilyKind::I { s } => {
                if *s < 3 || *s > n {
                    return Err(domain(format!("prefix family needs 3 <= s <= n, got s={s}")));
                }
            }
        }
        Ok(FamilySpec { kind, n, k })
    }

    /// Membership predicate over a k-set given as a mask.
    pub fn member(&self, bits: u64) -> bool {
        match &self.kind {
            FamilyKind::Star { core } => {
                let cm = core.iter().fold(0u64, |m, &e| m | 1 << (e - 1));
                cm & !bits == 0
            }
            FamilyKind::Frankl { t, r } => {
                (bits & low_mask(t + 2 * r)).count_ones() >= t + r
            }
            FamilyKind::A { s } => low_mask(*s) & !bits == 0,
            FamilyKind::B { s } => (bits & low_mask(*s)).count_ones() >= 2,
            FamilyKind::H { s } => {
                low_mask(2) & !bits == 0 || (bits & low_mask(*s)).count_ones() >= s - 1
            }
            FamilyKind::I { s } => {
                low_mask(2) & !bits == 0 && (bits & low_mask(*s)).count_ones() >= 3
            }
        }
    }

    /// The family, by explicit enumeration over binom(`[n]`, k). Requires
    /// n <= 64 and a materializable level.
    pub fn build(&self) -> Result<UniformFamily> {
        let n = GroundSize::new(self.n)?;
        let count = bi(self.n as i64, self.k as i64);
        if count > BigInt::from(BUILD_LIMIT) {
            return Err(domain(format!(
                "build: binom({}, {}) = {count} exceeds the enumeration guard {BUILD_LIMIT}",
                self.n, self.k
            )));
        }
        let lvl = crate::relation::level(n, self.k);
        let masks = lvl.iter().copied().filter(|&m| self.member(m));
        UniformFamily::from_masks(n, self.k, masks)
    }

    /// Exact closed-form size; valid for any n (no enumeration cap).
    /// Must agree with |build()| whenever building is possible.
    pub fn size_formula(&self) -> BigInt {
        let n = self.n as i64;
        let k = self.k as i64;
        match &self.kind {
            FamilyKind::Star { .. } => bi(n - 2, k - 2),
            FamilyKind::Frankl { t, r } => {
                let t = *t as i64;
                let r = *r as i64;
                let width = t + 2 * r;
                let mut total = BigInt::from(0);
                for j in (t + r)..=k.min(width) {
                    total += bi(width, j) * bi(n - width, k - j);
                }
                total
            }
            FamilyKind::A { s } => bi(n - *s as i64, k - *s as i64),
            FamilyKind::B { s } => {
                let s = *s as i64;
                let mut total = BigInt::from(0);
                for j in 2..=k.min(s) {
                    total += bi(s, j) * bi(n - s, k - j);
                }
                total
            }
            // inclusion-exclusion over the two branches collapses to this
            FamilyKind::H { s } => bi(n - 2, k - 2) + 2 * bi(n - *s as i64, k - *s as i64 + 1),
            FamilyKind::I { s } => bi(n - 2, k - 2) - bi(n - *s as i64, k - 2),
        }
    }
}

/// |H_{n,k,s}| * |I_{n,l,s}| from the exact size formulas. The displayed
/// closed form for this product contains an unbound coefficient; see
/// `displayed_h_probe` for the diagnostic.
pub fn product_h(n: u32, k: u32, l: u32, s: u32) -> Result<BigInt> {
    let h = FamilySpec::new(FamilyKind::H { s }, n, k)?;
    let i = FamilySpec::new(FamilyKind::I { s }, n, l)?;
    Ok(h.size_formula() * i.size_formula())
}

/// |F_{n,k,2,r}| * |F_{n,l,2,r}|. At r = 0 this is the star product
/// C(n-2,k-2) * C(n-2,l-2).
pub fn product_f(n: u32, k: u32, l: u32, r: u32) -> Result<BigInt> {
    let fk = FamilySpec::new(FamilyKind::Frankl { t: 2, r }, n, k)?;
    let fl = FamilySpec::new(FamilyKind::Frankl { t: 2, r }, n, l)?;
    Ok(fk.size_formula() * fl.size_formula())
}

/// One candidate instantiation of the unbound coefficient in the displayed
/// product formula (C(n-2,k-2) + t*C(n-s,k-s+1)) * (C(n-2,l-2) - C(n-s,l-2)).
#[derive(Debug, Clone)]
pub struct HFormulaCandidate {
    pub t: i64,
    pub value: BigInt,
    pub matches: bool,
}

/// Diagnostic for the displayed h product formula: its right-hand side uses a
/// coefficient symbol with no binding, so instead of guessing, the exact
/// product is computed from sizes and every plausible instantiation of the
/// symbol is evaluated and compared.
#[derive(Debug, Clone)]
pub struct HFormulaProbe {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub s: u32,
    pub exact: BigInt,
    pub candidates: Vec<HFormulaCandidate>,
    pub note: String,
}

pub fn displayed_h_probe(n: u32, k: u32, l: u32, s: u32) -> Result<HFormulaProbe> {
    let exact = product_h(n, k, l, s)?;
    let ni = n as i64;
    let ki = k as i64;
    let li = l as i64;
    let si = s as i64;
    let second = bi(ni - 2, li - 2) - bi(ni - si, li - 2);
    let mut ts = vec![2, si - 1, si - 2];
    ts.dedup();
    ts.sort_unstable();
    ts.dedup();
    let mut candidates = Vec::new();
    for t in ts {
        let value = (bi(ni - 2, ki - 2) + t * bi(ni - si, ki - si + 1)) * second.clone();
        let matches = value == exact;
        candidates.push(HFormulaCandidate { t, value, matches });
    }
    Ok(HFormulaProbe {
        n,
        k,
        l,
        s,
        exact,
        candidates,
        note: "displayed product formula carries an unbound coefficient symbol; \
               exact sizes are authoritative and each candidate binding is reported"
            .to_string(),
    })
}
