//! Property tests for the Galois laws, the shift/compression invariants, and
//! the text-format round trip.

use num_bigint::BigInt;
use proptest::prelude::*;

use crossfam::compress::{compress_pair, is_left_compressed, shift_family, ShiftIndex};
use crossfam::genset::sperner_shadow_ratio;
use crossfam::relation::{alpha, beta, is_cross_t, CrossParams};
use crossfam::search::{enumerate_concepts, max_product, SearchConfig};
use crossfam::sets::{enumerate_ksubsets, GroundSize, Subset, UniformFamily};

fn family_from_picks(n: u32, k: u32, picks: &[usize]) -> UniformFamily {
    let gn = GroundSize::new(n).unwrap();
    let level = enumerate_ksubsets(gn, k).unwrap();
    let sets: Vec<Subset> = picks
        .iter()
        .map(|&i| level.sets()[i % level.len()])
        .collect();
    UniformFamily::new(gn, k, sets).unwrap()
}

/// (n, k, index picks) for a random small family.
fn small_family() -> impl Strategy<Value = (u32, u32, Vec<usize>)> {
    (4u32..=9, 1u32..=4).prop_flat_map(|(n, k)| {
        let k = k.min(n - 1);
        (
            Just(n),
            Just(k),
            prop::collection::vec(0usize..200, 0..8),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn galois_laws((n, k, picks) in small_family(), l in 1u32..=4, t in 1u32..=2) {
        let l = l.min(n - 1);
        let t = t.min(k.min(l));
        let a = family_from_picks(n, k, &picks);

        let b = beta(&a, l, t).unwrap();
        let closed = alpha(&b, k, t).unwrap();
        // extensivity
        for s in a.iter() {
            prop_assert!(closed.contains(s));
        }
        // (A, beta(A)) is always cross-t
        prop_assert!(is_cross_t(&a, &b, t).unwrap());
        // beta(alpha(beta(A))) = beta(A)
        let b2 = beta(&closed, l, t).unwrap();
        prop_assert_eq!(&b2, &b);
    }

    #[test]
    fn beta_is_antitone((n, k, picks) in small_family(), l in 1u32..=4, t in 1u32..=2, cut in 0usize..8) {
        let l = l.min(n - 1);
        let t = t.min(k.min(l));
        let a2 = family_from_picks(n, k, &picks);
        // a1 ⊆ a2 by dropping a suffix of the picks
        let fewer = &picks[..picks.len().saturating_sub(cut)];
        let a1 = family_from_picks(n, k, fewer);
        if a1.iter().all(|s| a2.contains(s)) {
            let b1 = beta(&a1, l, t).unwrap();
            let b2 = beta(&a2, l, t).unwrap();
            for s in b2.iter() {
                prop_assert!(b1.contains(s));
            }
        }
    }

    #[test]
    fn closed_pairs_are_maximal((n, k, picks) in small_family(), t in 1u32..=2) {
        // a closed pair admits no strict cross-t superpair on either side
        let t = t.min(k);
        let a0 = family_from_picks(n, k, &picks);
        let b = beta(&a0, k, t).unwrap();
        let a = alpha(&b, k, t).unwrap();
        let gn = GroundSize::new(n).unwrap();
        let level = enumerate_ksubsets(gn, k).unwrap();
        if !b.is_empty() {
            for x in level.iter() {
                if !a.contains(x) {
                    let grown = UniformFamily::new(gn, k, vec![*x]).unwrap();
                    prop_assert!(!is_cross_t(&grown, &b, t).unwrap());
                }
            }
        }
    }

    #[test]
    fn shifts_preserve_size_and_cross((n, k, picks) in small_family(), t in 1u32..=2) {
        let t = t.min(k);
        let a = family_from_picks(n, k, &picks);
        let b0 = beta(&a, k, t).unwrap();
        for i in 1..n {
            for j in i + 1..=n {
                let ij = ShiftIndex::new(i, j).unwrap();
                let sa = shift_family(&a, ij).unwrap();
                prop_assert_eq!(sa.len(), a.len());
                if !b0.is_empty() {
                    let sb = shift_family(&b0, ij).unwrap();
                    prop_assert!(is_cross_t(&sa, &sb, t).unwrap());
                }
            }
        }
    }

    #[test]
    fn compress_pair_reaches_fixpoint((n, k, picks) in small_family(), t in 1u32..=2) {
        let t = t.min(k);
        let a = family_from_picks(n, k, &picks);
        let b = beta(&a, k, t).unwrap();
        let (ca, cb) = compress_pair(&a, &b).unwrap();
        prop_assert!(is_left_compressed(&ca));
        prop_assert!(is_left_compressed(&cb));
        prop_assert_eq!(ca.len(), a.len());
        prop_assert_eq!(cb.len(), b.len());
        prop_assert!(is_cross_t(&ca, &cb, t).unwrap());
    }

    #[test]
    fn family_text_roundtrip((n, k, picks) in small_family()) {
        let a = family_from_picks(n, k, &picks);
        let text = a.render();
        let back = UniformFamily::parse(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn sperner_bound_on_random_slices(s in 4u32..=10, i in 2u32..=5, picks in prop::collection::vec(0usize..300, 1..6)) {
        let i = i.min(s - 1);
        // random nonempty slice inside binom([s-1], i-1); ground set can be
        // anything at least s-1, use s
        let gn = GroundSize::new(s.max(2)).unwrap();
        let inner = enumerate_ksubsets(gn, i - 1).unwrap();
        let members: Vec<Subset> = inner
            .iter()
            .filter(|x| x.bits() & !((1u64 << (s - 1)) - 1) == 0)
            .copied()
            .collect();
        if !members.is_empty() {
            let slice: Vec<Subset> = picks.iter().map(|&p| members[p % members.len()]).collect();
            let mut slice = slice;
            slice.sort_by_key(|x| x.bits());
            slice.dedup();
            // sperner_shadow_ratio errors if the normalized matching bound fails
            sperner_shadow_ratio(&slice, s, i).unwrap();
        }
    }
}

#[test]
fn max_product_invariant_under_compression() {
    // on exhaustive small instances the maximum over all closed pairs equals
    // the maximum over pairs with both sides left-compressed
    for (n, k, l, t) in [(6u32, 3u32, 3u32, 2u32), (6, 2, 3, 2), (7, 3, 3, 2), (5, 2, 2, 1)] {
        let params = CrossParams::new(GroundSize::new(n).unwrap(), k, l, t).unwrap();
        let mut all_max = BigInt::from(0);
        let mut compressed_max = BigInt::from(0);
        enumerate_concepts(&params, 2000, |c| {
            if c.a().is_empty() || c.b().is_empty() {
                return;
            }
            let p = c.product();
            if p > all_max {
                all_max = p.clone();
            }
            if is_left_compressed(c.a()) && is_left_compressed(c.b()) && p > compressed_max {
                compressed_max = p;
            }
        })
        .unwrap();
        assert_eq!(all_max, compressed_max, "at (n={n}, k={k}, l={l}, t={t})");
    }
}

#[test]
fn monotone_star_ratio_data_check() {
    // at and above the threshold the ratio max / star^2 is exactly 1; below
    // it can only exceed 1 when a non-star pair wins
    use crossfam::scalar::binomial;
    for n in 6u32..=11 {
        let params = CrossParams::new(GroundSize::new(n).unwrap(), 3, 3, 2).unwrap();
        let r = max_product(&SearchConfig::new(params)).unwrap();
        let star = binomial(n as i64 - 2, 1).unwrap();
        let star_sq = &star * &star;
        assert!(r.max_product >= star_sq, "star pair is always closed");
        if n >= 11 {
            assert_eq!(r.max_product, star_sq, "above threshold at n={n}");
        } else if r.max_product > star_sq {
            let has_non_star = r.witnesses.iter().any(|w| {
                crossfam::sets::common_core(&[w.a(), w.b()])
                    .map(|c| c.card() != 2)
                    .unwrap_or(true)
            });
            assert!(has_non_star, "ratio above 1 needs a non-star winner at n={n}");
        }
    }
}
