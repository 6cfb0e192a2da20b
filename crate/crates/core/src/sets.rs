//! Ground-set arithmetic: subsets of `[n]` as single-word bitmasks, k-uniform
//! families in a canonical sorted order, and k-subset enumeration.
//!
//! Elements are 1-based to match the usual `[n]` = {1, ..., n} convention;
//! element e occupies bit e-1.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::scalar::bi;

/// Size of the ground set `[n]`, 2 <= n <= 64 (one machine word).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSize(u32);

impl GroundSize {
    pub fn new(n: u32) -> Result<GroundSize> {
        if (2..=64).contains(&n) {
            Ok(GroundSize(n))
        } else {
            Err(domain(format!("ground set size n = {n} outside 2..=64")))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Mask with bits 1..n set.
    pub fn mask(self) -> u64 {
        low_mask(self.0)
    }
}

impl fmt::Display for GroundSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Mask of the prefix `[m]` = {1, ..., m}, i.e. the low m bits.
pub(crate) fn low_mask(m: u32) -> u64 {
    debug_assert!(m <= 64);
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// A subset of `[n]` as a bitmask. Bit e-1 set means element e is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u64,
    n: GroundSize,
}

impl Subset {
    pub fn empty(n: GroundSize) -> Subset {
        Subset { bits: 0, n }
    }

    pub fn from_bits(n: GroundSize, bits: u64) -> Result<Subset> {
        if bits & !n.mask() != 0 {
            return Err(domain(format!(
                "subset mask {bits:#x} has bits above position {n}"
            )));
        }
        Ok(Subset { bits, n })
    }

    pub(crate) fn from_bits_unchecked(n: GroundSize, bits: u64) -> Subset {
        debug_assert_eq!(bits & !n.mask(), 0);
        Subset { bits, n }
    }

    pub fn from_elems(n: GroundSize, elems: &[u32]) -> Result<Subset> {
        let mut bits = 0u64;
        for &e in elems {
            if e == 0 || e > n.get() {
                return Err(domain(format!("element {e} outside 1..={n}")));
            }
            bits |= 1u64 << (e - 1);
        }
        Ok(Subset { bits, n })
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn ground(self) -> GroundSize {
        self.n
    }

    pub fn card(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, e: u32) -> bool {
        e >= 1 && e <= self.n.get() && (self.bits >> (e - 1)) & 1 == 1
    }

    /// Largest element present, if any (the s+ of the set).
    pub fn max_element(self) -> Option<u32> {
        if self.bits == 0 {
            None
        } else {
            Some(64 - self.bits.leading_zeros())
        }
    }

    pub fn with(self, e: u32) -> Subset {
        debug_assert!(e >= 1 && e <= self.n.get());
        Subset {
            bits: self.bits | 1u64 << (e - 1),
            n: self.n,
        }
    }

    pub fn without(self, e: u32) -> Subset {
        debug_assert!(e >= 1 && e <= self.n.get());
        Subset {
            bits: self.bits & !(1u64 << (e - 1)),
            n: self.n,
        }
    }

    pub fn union(self, other: Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    pub fn inter(self, other: Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    pub fn minus(self, other: Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            bits: self.bits & !other.bits,
            n: self.n,
        }
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & !other.bits == 0
    }

    /// Trace on the prefix `[m]`.
    pub fn trace(self, m: u32) -> Subset {
        Subset {
            bits: self.bits & low_mask(m.min(self.n.get())),
            n: self.n,
        }
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() + 1;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let mut first = true;
        for e in self.elements() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// |a ∩ b|; the two subsets must live on the same ground set.
pub fn intersection_size(a: &Subset, b: &Subset) -> Result<u32> {
    if a.n != b.n {
        return Err(domain(format!(
            "intersection_size: mismatched ground sizes {} vs {}",
            a.n, b.n
        )));
    }
    Ok((a.bits & b.bits).count_ones())
}

/// A deduplicated k-uniform family, sorted ascending by bitmask value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformFamily {
    n: GroundSize,
    k: u32,
    sets: Vec<Subset>,
}

impl UniformFamily {
    pub fn new(n: GroundSize, k: u32, mut sets: Vec<Subset>) -> Result<UniformFamily> {
        if k > n.get() {
            return Err(domain(format!("k = {k} exceeds ground size {n}")));
        }
        for s in &sets {
            if s.ground() != n {
                return Err(domain("family member on a different ground set".to_string()));
            }
            if s.card() != k {
                return Err(domain(format!(
                    "family member {{{s}}} has {} elements, expected {k}",
                    s.card()
                )));
            }
        }
        sets.sort_by_key(|s| s.bits());
        sets.dedup();
        Ok(UniformFamily { n, k, sets })
    }

    pub fn empty(n: GroundSize, k: u32) -> Result<UniformFamily> {
        UniformFamily::new(n, k, Vec::new())
    }

    pub fn from_masks<I: IntoIterator<Item = u64>>(
        n: GroundSize,
        k: u32,
        masks: I,
    ) -> Result<UniformFamily> {
        let sets = masks
            .into_iter()
            .map(|m| Subset::from_bits(n, m))
            .collect::<Result<Vec<_>>>()?;
        UniformFamily::new(n, k, sets)
    }

    pub fn n(&self) -> GroundSize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.sets.iter()
    }

    pub fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.sets.iter().map(|s| s.bits())
    }

    pub fn contains(&self, s: &Subset) -> bool {
        s.ground() == self.n
            && self
                .sets
                .binary_search_by_key(&s.bits(), |m| m.bits())
                .is_ok()
    }

    pub fn union_with(&self, other: &UniformFamily) -> Result<UniformFamily> {
        if self.n != other.n || self.k != other.k {
            return Err(domain("union of families with different (n, k)".to_string()));
        }
        let mut sets = self.sets.clone();
        sets.extend_from_slice(&other.sets);
        UniformFamily::new(self.n, self.k, sets)
    }

    pub fn minus(&self, other: &UniformFamily) -> Result<UniformFamily> {
        if self.n != other.n || self.k != other.k {
            return Err(domain(
                "difference of families with different (n, k)".to_string(),
            ));
        }
        let sets = self
            .sets
            .iter()
            .filter(|s| !other.contains(s))
            .copied()
            .collect();
        UniformFamily::new(self.n, self.k, sets)
    }

    /// Family text format: header `n=<n> k=<k>`, one set per line as
    /// comma-separated ascending integers. Blank lines and `#` comments
    /// are ignored.
    pub fn parse(text: &str) -> Result<UniformFamily> {
        let mut header: Option<(GroundSize, u32)> = None;
        let mut sets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match header {
                None => {
                    let mut n = None;
                    let mut k = None;
                    for tok in line.split_whitespace() {
                        if let Some(v) = tok.strip_prefix("n=") {
                            n = v.parse::<u32>().ok();
                        } else if let Some(v) = tok.strip_prefix("k=") {
                            k = v.parse::<u32>().ok();
                        } else {
                            return Err(Error::Parse {
                                line: lineno,
                                msg: format!("unexpected token {tok:?} in header"),
                            });
                        }
                    }
                    match (n, k) {
                        (Some(n), Some(k)) => {
                            let n = GroundSize::new(n).map_err(|e| Error::Parse {
                                line: lineno,
                                msg: e.to_string(),
                            })?;
                            if k > n.get() {
                                return Err(Error::Parse {
                                    line: lineno,
                                    msg: format!("k = {k} exceeds n = {n}"),
                                });
                            }
                            header = Some((n, k));
                        }
                        _ => {
                            return Err(Error::Parse {
                                line: lineno,
                                msg: "expected header `n=<n> k=<k>`".to_string(),
                            })
                        }
                    }
                }
                Some((n, k)) => {
                    let mut elems = Vec::new();
                    for tok in line.split(',') {
                        let e: u32 = tok.trim().parse().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("bad element {tok:?}"),
                        })?;
                        if let Some(&last) = elems.last() {
                            if e <= last {
                                return Err(Error::Parse {
                                    line: lineno,
                                    msg: "elements must be strictly ascending".to_string(),
                                });
                            }
                        }
                        elems.push(e);
                    }
                    let s = Subset::from_elems(n, &elems).map_err(|e| Error::Parse {
                        line: lineno,
                        msg: e.to_string(),
                    })?;
                    if s.card() != k {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("set has {} elements, expected k = {k}", s.card()),
                        });
                    }
                    sets.push(s);
                }
            }
        }
        let (n, k) = header.ok_or(Error::Parse {
            line: 1,
            msg: "missing header `n=<n> k=<k>`".to_string(),
        })?;
        UniformFamily::new(n, k, sets)
    }

    pub fn render(&self) -> String {
        let mut out = format!("n={} k={}\n", self.n, self.k);
        for s in &self.sets {
            if !s.is_empty() {
                out.push_str(&s.to_string());
                out.push('\n');
            }
        }
        out
    }
}

/// All k-subsets of the set bits of `mask`, as raw masks (no particular order
/// guaranteed to callers; families re-sort on construction).
pub(crate) fn ksubsets_of_mask(mask: u64, k: u32) -> Vec<u64> {
    let elems: Vec<u32> = (0..64).filter(|&b| (mask >> b) & 1 == 1).collect();
    let m = elems.len();
    let k = k as usize;
    if k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut bits = 0u64;
        for &i in &idx {
            bits |= 1u64 << elems[i];
        }
        out.push(bits);
        // next combination of indices
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] != pos + m - k {
                break;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All of binom(`[n]`, k) in canonical (ascending bitmask) order.
pub fn enumerate_ksubsets(n: GroundSize, k: u32) -> Result<UniformFamily> {
    if k > n.get() {
        return Err(domain(format!("enumerate_ksubsets: k = {k} > n = {n}")));
    }
    let mask = n.mask();
    let mut masks = Vec::new();
    if k == 0 {
        masks.push(0u64);
    } else {
        // Gosper's hack, ascending.
        let mut v: u64 = low_mask(k);
        loop {
            masks.push(v);
            let t = v | (v - 1);
            if t == u64::MAX {
                break;
            }
            let next = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
            if next > mask {
                break;
            }
            v = next;
        }
    }
    UniformFamily::from_masks(n, k, masks)
}

/// All k-sets containing the given core.
pub fn star(n: GroundSize, k: u32, core: &Subset) -> Result<UniformFamily> {
    if core.ground() != n {
        return Err(domain("star: core on a different ground set".to_string()));
    }
    if core.card() > k {
        return UniformFamily::empty(n, k);
    }
    let comp = n.mask() & !core.bits();
    let masks = ksubsets_of_mask(comp, k - core.card())
        .into_iter()
        .map(|m| m | core.bits());
    UniformFamily::from_masks(n, k, masks)
}

/// Intersection of all member sets across all families.
pub fn common_core(fams: &[&UniformFamily]) -> Result<Subset> {
    let n = match fams.first() {
        Some(f) => f.n(),
        None => return Err(domain("common_core: no families given".to_string())),
    };
    if fams.iter().any(|f| f.n() != n) {
        return Err(domain("common_core: mismatched ground sizes".to_string()));
    }
    let mut acc = n.mask();
    let mut any = false;
    for f in fams {
        for m in f.masks() {
            acc &= m;
            any = true;
        }
    }
    if !any {
        return Err(domain("common_core: all families empty".to_string()));
    }
    Ok(Subset::from_bits_unchecked(n, acc))
}

/// Number of k-subsets of `[n]` as an exact integer (convenience wrapper used
/// by enumeration-count checks).
pub fn level_size(n: GroundSize, k: u32) -> num_bigint::BigInt {
    bi(n.get() as i64, k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::binomial;
    use num_traits::ToPrimitive;

    fn gs(n: u32) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    fn sub(n: u32, elems: &[u32]) -> Subset {
        Subset::from_elems(gs(n), elems).unwrap()
    }

    #[test]
    fn enumerate_4_2_canonical_order() {
        let fam = enumerate_ksubsets(gs(4), 2).unwrap();
        let as_elems: Vec<Vec<u32>> = fam.iter().map(|s| s.elements().collect()).collect();
        assert_eq!(
            as_elems,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 4],
                vec![2, 4],
                vec![3, 4]
            ]
        );
    }

    #[test]
    fn enumerate_full_and_sizes() {
        let fam = enumerate_ksubsets(gs(3), 3).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.sets()[0], sub(3, &[1, 2, 3]));

        let fam = enumerate_ksubsets(gs(11), 3).unwrap();
        assert_eq!(fam.len(), 165);

        for n in 2..=16u32 {
            for k in 0..=n {
                let fam = enumerate_ksubsets(gs(n), k).unwrap();
                assert_eq!(
                    fam.len(),
                    binomial(n as i64, k as i64).unwrap().to_usize().unwrap(),
                    "count mismatch at n={n} k={k}"
                );
            }
        }
        assert!(enumerate_ksubsets(gs(4), 5).is_err());
    }

    #[test]
    fn intersection_size_cases() {
        let a = sub(5, &[1, 2, 3]);
        let b = sub(5, &[1, 3, 5]);
        assert_eq!(intersection_size(&a, &b).unwrap(), 2);
        assert_eq!(intersection_size(&a, &a).unwrap(), a.card());
        let c = sub(5, &[1, 2]);
        let d = sub(5, &[3, 4]);
        assert_eq!(intersection_size(&c, &d).unwrap(), 0);
        let e = sub(6, &[1, 2]);
        assert!(intersection_size(&c, &e).is_err());
    }

    #[test]
    fn inclusion_exclusion_on_intersection() {
        // |a ∩ b| = |a| + |b| - |a ∪ b| over a small exhaustive grid
        let n = gs(6);
        let lvl = enumerate_ksubsets(n, 3).unwrap();
        for a in lvl.iter() {
            for b in lvl.iter() {
                let together = a.union(*b).card();
                assert_eq!(
                    intersection_size(a, b).unwrap(),
                    a.card() + b.card() - together
                );
            }
        }
    }

    #[test]
    fn common_core_cases() {
        let f1 = UniformFamily::new(gs(5), 3, vec![sub(5, &[1, 2, 3])]).unwrap();
        let f2 = UniformFamily::new(gs(5), 3, vec![sub(5, &[1, 2, 4])]).unwrap();
        assert_eq!(common_core(&[&f1, &f2]).unwrap(), sub(5, &[1, 2]));

        let star6 = star(gs(6), 3, &sub(6, &[1, 2])).unwrap();
        assert_eq!(common_core(&[&star6]).unwrap(), sub(6, &[1, 2]));

        let f3 =
            UniformFamily::new(gs(5), 2, vec![sub(5, &[1, 2]), sub(5, &[3, 4])]).unwrap();
        assert!(common_core(&[&f3]).unwrap().is_empty());

        let empty = UniformFamily::empty(gs(5), 2).unwrap();
        assert!(common_core(&[&empty]).is_err());
    }

    #[test]
    fn star_size_is_binomial() {
        let s = star(gs(6), 3, &sub(6, &[1, 2])).unwrap();
        assert_eq!(s.len(), 4); // C(4,1)
        for m in s.iter() {
            assert!(sub(6, &[1, 2]).is_subset_of(*m));
        }
    }

    #[test]
    fn parse_render_roundtrip() {
        let text = "# a family\nn=6 k=3\n1,2,3\n\n2,4,6\n";
        let fam = UniformFamily::parse(text).unwrap();
        assert_eq!(fam.len(), 2);
        let rendered = fam.render();
        let fam2 = UniformFamily::parse(&rendered).unwrap();
        assert_eq!(fam, fam2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "n=6 k=3\n1,2\n";
        match UniformFamily::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad2 = "n=6 k=3\n3,2,1\n";
        assert!(matches!(
            UniformFamily::parse(bad2),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn ground_size_bounds() {
        assert!(GroundSize::new(1).is_err());
        assert!(GroundSize::new(65).is_err());
        assert!(GroundSize::new(64).is_ok());
        assert_eq!(gs(64).mask(), u64::MAX);
    }

    #[test]
    fn max_element_and_trace() {
        assert_eq!(sub(6, &[1, 2, 5]).max_element(), Some(5));
        assert_eq!(Subset::empty(gs(6)).max_element(), None);
        assert_eq!(sub(6, &[1, 3, 5]).trace(4), sub(6, &[1, 3]));
    }
}
