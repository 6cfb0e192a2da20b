//! Seeded generation of random compressed (cross-)2-intersecting instances
//! for the generating-set law suite. The generator is a tiny splitmix64 so
//! fixed seeds reproduce forever, independent of external crates.

use crate::compress::{compress_family, compress_pair, is_left_compressed};
use crate::relation::{alpha, beta, is_cross_t, CrossParams};
use crate::sets::{enumerate_ksubsets, GroundSize, UniformFamily};

pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-enough value in 0..m (m > 0).
    pub fn below(&mut self, m: u64) -> u64 {
        ((self.next_u64() as u128 * m as u128) >> 64) as u64
    }
}

/// A maximal (closed) left-compressed cross-2-intersecting pair with both
/// sides nonempty, on a small ground set.
pub struct PairInstance {
    pub params: CrossParams,
    pub a: UniformFamily,
    pub b: UniformFamily,
}

pub fn random_compressed_cross2_pair(rng: &mut SplitMix64) -> PairInstance {
    loop {
        let n = 6 + rng.below(4) as u32; // 6..=9
        let k = 2 + rng.below(3) as u32; // 2..=4
        let l = 2 + rng.below(3) as u32;
        if k + l >= n + 2 {
            continue; // the pair transforms need n > k + l - 2
        }
        let gn = GroundSize::new(n).unwrap();
        let level = enumerate_ksubsets(gn, k).unwrap();
        let mut seeds = Vec::new();
        let count = 1 + rng.below(3) as usize;
        if rng.below(2) == 0 {
            // bias toward a shared pair so beta is often nonempty
            let x = 1 + rng.below(n as u64 - 1) as u32;
            let y = 1 + rng.below(n as u64) as u32;
            let (x, y) = if x == y { (x, y + 1) } else { (x, y) };
            let shared: Vec<_> = level
                .iter()
                .filter(|s| s.contains(x.min(y)) && s.contains(x.max(y)))
                .copied()
                .collect();
            if shared.is_empty() {
                continue;
            }
            for _ in 0..count {
                seeds.push(shared[rng.below(shared.len() as u64) as usize]);
            }
        } else {
            for _ in 0..count {
                seeds.push(level.sets()[rng.below(level.len() as u64) as usize]);
            }
        }
        let a0 = UniformFamily::new(gn, k, seeds).unwrap();
        let b0 = beta(&a0, l, 2).unwrap();
        if b0.is_empty() {
            continue;
        }
        let a1 = alpha(&b0, k, 2).unwrap();

        // compress, re-close; alpha/beta preserve compression, so one round
        // lands on a closed compressed pair
        let mut a = a1;
        let mut b = b0;
        let mut done = false;
        for _ in 0..8 {
            let (ca, _) = compress_pair(&a, &b).unwrap();
            b = beta(&ca, l, 2).unwrap();
            a = alpha(&b, k, 2).unwrap();
            if is_left_compressed(&a) && is_left_compressed(&b) {
                done = true;
                break;
            }
        }
        assert!(done, "compression + closure failed to stabilize");
        if a.is_empty() || b.is_empty() {
            continue;
        }
        debug_assert!(is_cross_t(&a, &b, 2).unwrap());
        let params = CrossParams::new(gn, k, l, 2).unwrap();
        return PairInstance { params, a, b };
    }
}

/// A nonempty left-compressed 2-intersecting family on a small ground set
/// with n > 2k - 2.
pub fn random_compressed_2intersecting(rng: &mut SplitMix64) -> UniformFamily {
    loop {
        let n = 6 + rng.below(4) as u32; // 6..=9
        let kmax = n.div_ceil(2).min(4);
        if kmax < 2 {
            continue;
        }
        let k = 2 + rng.below(kmax as u64 - 1) as u32; // 2..=kmax
        let gn = GroundSize::new(n).unwrap();
        let level = enumerate_ksubsets(gn, k).unwrap();
        let target = 1 + rng.below(8) as usize;
        let mut picked: Vec<crate::sets::Subset> = Vec::new();
        for _ in 0..level.len() * 2 {
            if picked.len() >= target {
                break;
            }
            let cand = level.sets()[rng.below(level.len() as u64) as usize];
            if picked.iter().all(|p| p.inter(cand).card() >= 2) && !picked.contains(&cand) {
                picked.push(cand);
            }
        }
        if picked.is_empty() {
            continue;
        }
        let fam = UniformFamily::new(gn, k, picked).unwrap();
        let compressed = compress_family(&fam);
        assert!(is_left_compressed(&compressed));
        assert_eq!(compressed.len(), fam.len());
        return compressed;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = SplitMix64::new(43);
        assert_ne!(SplitMix64::new(42).next_u64(), c.next_u64());
    }

    #[test]
    fn pair_instances_are_valid() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..20 {
            let inst = random_compressed_cross2_pair(&mut rng);
            assert!(is_cross_t(&inst.a, &inst.b, 2).unwrap());
            assert!(is_left_compressed(&inst.a));
            assert!(is_left_compressed(&inst.b));
            assert_eq!(&beta(&inst.a, inst.params.l, 2).unwrap(), &inst.b);
            assert_eq!(&alpha(&inst.b, inst.params.k, 2).unwrap(), &inst.a);
        }
    }

    #[test]
    fn single_family_instances_are_valid() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..20 {
            let f = random_compressed_2intersecting(&mut rng);
            assert!(!f.is_empty());
            assert!(is_left_compressed(&f));
            for a in f.iter() {
                for b in f.iter() {
                    assert!(a.inter(*b).card() >= 2);
                }
            }
            assert!(f.n().get() > 2 * f.k() - 2);
        }
    }
}
