//! The shift operator s_ij on sets and families, left-compression testing,
//! and simultaneous compression of a pair to a left-compressed fixpoint.

use crate::error::{domain, Result};
use crate::sets::{Subset, UniformFamily};

/// A shift s_ij with 1 <= i < j; mass always moves toward smaller indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftIndex {
    i: u32,
    j: u32,
}

impl ShiftIndex {
    pub fn new(i: u32, j: u32) -> Result<ShiftIndex> {
        if i >= 1 && i < j {
            Ok(ShiftIndex { i, j })
        } else {
            Err(domain(format!("shift index needs 1 <= i < j, got i={i} j={j}")))
        }
    }

    pub fn i(self) -> u32 {
        self.i
    }

    pub fn j(self) -> u32 {
        self.j
    }
}

fn shift_mask(bits: u64, i: u32, j: u32) -> u64 {
    (bits & !(1u64 << (j - 1))) | 1u64 << (i - 1)
}

/// s_ij(A) relative to a family: replaces j by i when j is present, i absent,
/// and the shifted set is not already in the family.
pub fn shift_set(a: &Subset, ij: ShiftIndex, context: &UniformFamily) -> Result<Subset> {
    if !context.contains(a) {
        return Err(domain("shift_set: set not a member of its context".to_string()));
    }
    if ij.j > a.ground().get() {
        return Err(domain(format!(
            "shift_set: j = {} exceeds ground size {}",
            ij.j,
            a.ground()
        )));
    }
    if a.contains(ij.j) && !a.contains(ij.i) {
        let target = Subset::from_bits_unchecked(a.ground(), shift_mask(a.bits(), ij.i, ij.j));
        if !context.contains(&target) {
            return Ok(target);
        }
    }
    Ok(*a)
}

/// s_ij applied to a whole family. Always size-preserving: the membership
/// guard makes the map injective on the family.
pub fn shift_family(f: &UniformFamily, ij: ShiftIndex) -> Result<UniformFamily> {
    if ij.j > f.n().get() {
        return Err(domain(format!(
            "shift_family: j = {} exceeds ground size {}",
            ij.j,
            f.n()
        )));
    }
    let masks: Vec<u64> = f
        .masks()
        .map(|m| {
            let jbit = 1u64 << (ij.j - 1);
            let ibit = 1u64 << (ij.i - 1);
            if m & jbit != 0 && m & ibit == 0 {
                let target = shift_mask(m, ij.i, ij.j);
                if f.masks().all(|x| x != target) {
                    return target;
                }
            }
            m
        })
        .collect();
    let out = UniformFamily::from_masks(f.n(), f.k(), masks)?;
    debug_assert_eq!(out.len(), f.len());
    Ok(out)
}

/// True iff s_ij(F) = F for every 1 <= i < j <= n; equivalently, for every
/// member with j present and i absent, the shifted set is also a member.
pub fn is_left_compressed(f: &UniformFamily) -> bool {
    let n = f.n().get();
    for m in f.masks() {
        for j in 2..=n {
            if (m >> (j - 1)) & 1 == 0 {
                continue;
            }
            for i in 1..j {
                if (m >> (i - 1)) & 1 == 1 {
                    continue;
                }
                let target = shift_mask(m, i, j);
                if !f
                    .contains(&Subset::from_bits_unchecked(f.n(), target))
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Compress a single family to a left-compressed fixpoint, sweeping (i, j)
/// in lexicographic order and restarting after any change.
pub fn compress_family(f: &UniformFamily) -> UniformFamily {
    let (out, _) = compress_steps(f.clone(), None);
    out
}

/// Simultaneous compression of a pair: the same s_ij is applied to both
/// families at every step, which preserves the cross-t property and both
/// sizes. Terminates because every non-identity shift strictly decreases
/// the total element sum.
pub fn compress_pair(
    a: &UniformFamily,
    b: &UniformFamily,
) -> Result<(UniformFamily, UniformFamily)> {
    if a.n() != b.n() {
        return Err(domain("compress_pair: mismatched ground sizes".to_string()));
    }
    let n = a.n().get();
    let mut fa = a.clone();
    let mut fb = b.clone();
    'restart: loop {
        for i in 1..n {
            for j in i + 1..=n {
                let ij = ShiftIndex::new(i, j).unwrap();
                let na = shift_family(&fa, ij)?;
                let nb = shift_family(&fb, ij)?;
                if na != fa || nb != fb {
                    fa = na;
                    fb = nb;
                    continue 'restart;
                }
            }
        }
        return Ok((fa, fb));
    }
}

fn compress_steps(mut f: UniformFamily, max_rounds: Option<usize>) -> (UniformFamily, usize) {
    let n = f.n().get();
    let mut rounds = 0;
    'restart: loop {
        if let Some(cap) = max_rounds {
            if rounds >= cap {
                return (f, rounds);
            }
        }
        for i in 1..n {
            for j in i + 1..=n {
                let ij = ShiftIndex::new(i, j).unwrap();
                let nf = shift_family(&f, ij).expect("j <= n by loop bounds");
                if nf != f {
                    f = nf;
                    rounds += 1;
                    continue 'restart;
                }
            }
        }
        return (f, rounds);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::is_cross_t;
    use crate::sets::{enumerate_ksubsets, star, GroundSize};

    fn gs(n: u32) -> GroundSize {
        GroundSize::new(n).unwrap()
    }

    fn fam(n: u32, k: u32, sets: &[&[u32]]) -> UniformFamily {
        let n = gs(n);
        UniformFamily::new(
            n,
            k,
            sets.iter()
                .map(|s| Subset::from_elems(n, s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn shift_set_branches() {
        let ctx = fam(3, 2, &[&[2, 3]]);
        let a = ctx.sets()[0];
        let s12 = ShiftIndex::new(1, 2).unwrap();
        assert_eq!(
            shift_set(&a, s12, &ctx).unwrap(),
            Subset::from_elems(gs(3), &[1, 3]).unwrap()
        );

        let ctx2 = fam(3, 2, &[&[1, 3], &[2, 3]]);
        let a2 = *ctx2.iter().find(|s| s.contains(2)).unwrap();
        assert_eq!(shift_set(&a2, s12, &ctx2).unwrap(), a2); // target already present

        let ctx3 = fam(3, 2, &[&[1, 3]]);
        let a3 = ctx3.sets()[0];
        assert_eq!(shift_set(&a3, s12, &ctx3).unwrap(), a3); // j not in A

        let stranger = Subset::from_elems(gs(3), &[1, 2]).unwrap();
        assert!(shift_set(&stranger, s12, &ctx3).is_err());
    }

    #[test]
    fn shift_family_guard_keeps_both() {
        let f = fam(3, 2, &[&[1, 3], &[2, 3]]);
        let s12 = ShiftIndex::new(1, 2).unwrap();
        assert_eq!(shift_family(&f, s12).unwrap(), f);

        let g = fam(3, 2, &[&[2, 3]]);
        let s13 = ShiftIndex::new(1, 3).unwrap();
        assert_eq!(shift_family(&g, s13).unwrap(), fam(3, 2, &[&[1, 2]]));
    }

    #[test]
    fn shift_star_tail_only() {
        let core = Subset::from_elems(gs(6), &[1, 2]).unwrap();
        let s = star(gs(6), 3, &core).unwrap();
        for i in 3..6u32 {
            for j in i + 1..=6 {
                let ij = ShiftIndex::new(i, j).unwrap();
                let shifted = shift_family(&s, ij).unwrap();
                assert_eq!(shifted, s);
                assert_eq!(shifted.len(), s.len());
            }
        }
    }

    #[test]
    fn size_preservation_exhaustive_small() {
        // the guard makes s_ij injective on any family
        let lvl = enumerate_ksubsets(gs(5), 2).unwrap();
        let all: Vec<_> = lvl.sets().to_vec();
        // a handful of subfamilies picked by bit patterns of an index
        for pick in 0u32..64 {
            let sets: Vec<_> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| (pick >> (i % 6)) & 1 == 1 || *i % 3 == (pick as usize) % 3)
                .map(|(_, s)| *s)
                .collect();
            let f = UniformFamily::new(gs(5), 2, sets).unwrap();
            for i in 1..5u32 {
                for j in i + 1..=5 {
                    let ij = ShiftIndex::new(i, j).unwrap();
                    assert_eq!(shift_family(&f, ij).unwrap().len(), f.len());
                }
            }
        }
    }

    #[test]
    fn left_compressed_examples() {
        let core = Subset::from_elems(gs(6), &[1, 2]).unwrap();
        assert!(is_left_compressed(&star(gs(6), 3, &core).unwrap()));
        assert!(!is_left_compressed(&fam(3, 2, &[&[2, 3]])));
    }

    #[test]
    fn compress_pair_cascade() {
        let a = fam(5, 2, &[&[2, 3]]);
        let b = fam(5, 3, &[&[2, 3, 4]]);
        assert!(is_cross_t(&a, &b, 2).unwrap());
        let (ca, cb) = compress_pair(&a, &b).unwrap();
        assert_eq!(ca, fam(5, 2, &[&[1, 2]]));
        assert_eq!(cb, fam(5, 3, &[&[1, 2, 3]]));
        assert!(is_left_compressed(&ca) && is_left_compressed(&cb));
        assert_eq!(ca.len(), a.len());
        assert_eq!(cb.len(), b.len());
        assert!(is_cross_t(&ca, &cb, 2).unwrap());
    }

    #[test]
    fn compress_pair_fixed_on_stars() {
        let core = Subset::from_elems(gs(6), &[1, 2]).unwrap();
        let a = star(gs(6), 3, &core).unwrap();
        let b = star(gs(6), 4, &core).unwrap();
        let (ca, cb) = compress_pair(&a, &b).unwrap();
        assert_eq!(ca, a);
        assert_eq!(cb, b);
    }

    #[test]
    fn compress_pair_vacuous_side() {
        let a = UniformFamily::empty(gs(5), 2).unwrap();
        let b = fam(5, 3, &[&[2, 3, 4]]);
        let (ca, cb) = compress_pair(&a, &b).unwrap();
        assert!(ca.is_empty());
        assert_eq!(cb, compress_family(&b));
        assert!(is_left_compressed(&cb));
    }
}
