//! Exact maximum of |A|·|B| over cross-t-intersecting pairs.
//!
//! Maximal pairs are exactly the pairs closed under the two Galois maps, so
//! the search space is the concept lattice of the bipartite relation
//! R(a, b) <=> |a ∩ b| >= t between the k-level and the l-level. Concepts are
//! enumerated in lectic order for the streaming API; the maximum-product
//! search walks a close-by-one tree with a sound optimistic bound
//! (|A ∪ remaining| · |beta(A_partial)|) and deterministic pruning.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::construct::{product_f, product_h, FamilyKind, FamilySpec};
use crate::error::{domain, Error, Result};
use crate::relation::{level, ClosedPair, CrossParams};
use crate::scalar::bi;
use crate::sets::{common_core, GroundSize, Subset, UniformFamily};

/// Fixed-width bitset over level indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    fn empty(len: usize) -> Bits {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn full(len: usize) -> Bits {
        let mut b = Bits {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        let spare = b.words.len() * 64 - len;
        if spare > 0 {
            let last = b.words.len() - 1;
            b.words[last] >>= spare;
        }
        b
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    #[inline]
    fn test(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    /// self ⊆ other
    fn subset_of(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Equality of the prefixes {0, .., upto-1}.
    fn prefix_eq(&self, other: &Bits, upto: usize) -> bool {
        let full_words = upto / 64;
        if self.words[..full_words] != other.words[..full_words] {
            return false;
        }
        let rem = upto % 64;
        if rem == 0 {
            return true;
        }
        let m = (1u64 << rem) - 1;
        (self.words[full_words] ^ other.words[full_words]) & m == 0
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// The bipartite intersection relation on materialized level sets.
struct Rel {
    params: CrossParams,
    a_masks: Vec<u64>,
    b_masks: Vec<u64>,
    /// rows[i] = { j : |a_i ∩ b_j| >= t }
    rows: Vec<Bits>,
}

impl Rel {
    fn build(params: &CrossParams, level_limit: usize) -> Result<Rel> {
        let a_masks: Vec<u64> = level(params.n, params.k).to_vec();
        let b_masks: Vec<u64> = level(params.n, params.l).to_vec();
        if a_masks.len() > level_limit || b_masks.len() > level_limit {
            return Err(Error::ScaleGuard {
                a_level: a_masks.len(),
                b_level: b_masks.len(),
                limit: level_limit,
            });
        }
        let t = params.t;
        let rows: Vec<Bits> = a_masks
            .iter()
            .map(|&am| {
                let mut row = Bits::empty(b_masks.len());
                for (j, &bm) in b_masks.iter().enumerate() {
                    if (am & bm).count_ones() >= t {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        Ok(Rel {
            params: *params,
            a_masks,
            b_masks,
            rows,
        })
    }

    fn na(&self) -> usize {
        self.a_masks.len()
    }

    fn nb(&self) -> usize {
        self.b_masks.len()
    }

    /// beta on index sets: intersection of rows over the members of `a`.
    fn beta_bits(&self, a: &Bits) -> Bits {
        let mut out = Bits::full(self.nb());
        for i in a.ones() {
            out = out.and(&self.rows[i]);
        }
        out
    }

    /// alpha on index sets: every a-index whose row covers `b`.
    fn alpha_bits(&self, b: &Bits) -> Bits {
        let mut out = Bits::empty(self.na());
        for i in 0..self.na() {
            if b.subset_of(&self.rows[i]) {
                out.set(i);
            }
        }
        out
    }

    fn close(&self, seed: &Bits) -> (Bits, Bits) {
        let b = self.beta_bits(seed);
        let a = self.alpha_bits(&b);
        (a, b)
    }

    fn family_a(&self, a: &Bits) -> UniformFamily {
        UniformFamily::from_masks(self.params.n, self.params.k, a.ones().map(|i| self.a_masks[i]))
            .expect("level masks are valid")
    }

    fn family_b(&self, b: &Bits) -> UniformFamily {
        UniformFamily::from_masks(self.params.n, self.params.l, b.ones().map(|j| self.b_masks[j]))
            .expect("level masks are valid")
    }

    fn pair(&self, a: &Bits, b: &Bits) -> ClosedPair {
        ClosedPair::new_unchecked(self.params, self.family_a(a), self.family_b(b))
    }

    /// Ground-set core (as a mask over [n]) of an index set on the A side.
    fn core_a(&self, a: &Bits) -> u64 {
        let mut acc = self.params.n.mask();
        for i in a.ones() {
            acc &= self.a_masks[i];
        }
        acc
    }

    fn core_b(&self, b: &Bits) -> u64 {
        let mut acc = self.params.n.mask();
        for j in b.ones() {
            acc &= self.b_masks[j];
        }
        acc
    }
}

/// Visits every Galois-closed pair exactly once, in lectic order of the
/// A-side characteristic vector over the canonical k-level ordering.
/// Returns the number of concepts visited.
pub fn enumerate_concepts(
    params: &CrossParams,
    level_limit: usize,
    mut visit: impl FnMut(ClosedPair),
) -> Result<u64> {
    let rel = Rel::build(params, level_limit)?;
    let m = rel.na();
    let (mut a, mut b) = rel.close(&Bits::empty(m));
    let mut count = 0u64;
    loop {
        visit(rel.pair(&a, &b));
        count += 1;
        // next closed set in lectic order
        let mut cur = a.clone();
        let mut advanced = false;
        for i in (0..m).rev() {
            if cur.test(i) {
                cur.clear(i);
            } else {
                let mut seed = cur.clone();
                seed.set(i);
                let (ca, cb) = rel.close(&seed);
                if ca.prefix_eq(&cur, i) {
                    a = ca;
                    b = cb;
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            return Ok(count);
        }
    }
}

/// Search configuration. `product_floor` is a pruning threshold: subtrees
/// whose optimistic bound falls strictly below the running best (which is
/// never below the floor) are skipped.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub params: CrossParams,
    pub nontrivial_only: bool,
    pub use_compression_reduction: bool,
    pub product_floor: BigInt,
    pub level_limit: usize,
}

impl SearchConfig {
    pub fn new(params: CrossParams) -> SearchConfig {
        SearchConfig {
            params,
            nontrivial_only: false,
            use_compression_reduction: false,
            product_floor: BigInt::from(0),
            level_limit: DEFAULT_LEVEL_LIMIT,
        }
    }
}

pub const DEFAULT_LEVEL_LIMIT: usize = 2000;

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub max_product: BigInt,
    pub witnesses: Vec<ClosedPair>,
    pub explored: u64,
    pub pruned: u64,
}

struct SubtreeOut {
    best: u128,
    /// A-side index sets of concepts attaining `best`.
    witnesses: Vec<(Bits, Bits)>,
    explored: u64,
    pruned: u64,
}

struct SearchCtx<'a> {
    rel: &'a Rel,
    nontrivial_only: bool,
    /// Deterministic pruning floor; subtree-local bests start here.
    floor: u128,
}

impl SearchCtx<'_> {
    fn eligible(&self, a: &Bits, b: &Bits) -> bool {
        if !self.nontrivial_only {
            return true;
        }
        (self.rel.core_a(a) & self.rel.core_b(b)).count_ones() < 2
    }

    /// Record a concept with both sides nonempty.
    fn consider(&self, a: &Bits, b: &Bits, prod: u128, out: &mut SubtreeOut) {
        if prod < out.best || prod < self.floor {
            return;
        }
        if !self.eligible(a, b) {
            return;
        }
        if prod > out.best {
            out.best = prod;
            out.witnesses.clear();
        }
        out.witnesses.push((a.clone(), b.clone()));
    }

    /// Depth-first close-by-one under node (a, b). `cand` holds the viable
    /// branching indexes (> last added, not in a, rows still meeting b).
    fn dfs(&self, a: &Bits, b: &Bits, cand: &[u32], out: &mut SubtreeOut) {
        let pa = a.count() as u128;

        // overlap of each candidate's row with the current B side
        let mut vals: Vec<(u32, u32)> = Vec::with_capacity(cand.len()); // (index, |row ∩ b|)
        for &j in cand {
            let mut v = 0u32;
            for (wa, wb) in self.rel.rows[j as usize].words.iter().zip(&b.words) {
                v += (wa & wb).count_ones();
            }
            vals.push((j, v));
        }

        // Subtree bound: adding r candidates keeps |A| = pa + r and forces
        // B inside each chosen row, so |B| <= r-th largest overlap. Take the
        // max over r. Sound for every descendant concept.
        let cutoff = out.best.max(self.floor);
        {
            let mut overlaps: Vec<u32> = vals.iter().map(|&(_, v)| v).filter(|&v| v > 0).collect();
            overlaps.sort_unstable_by(|x, y| y.cmp(x));
            let mut ub = 0u128;
            for (r, &v) in overlaps.iter().enumerate() {
                ub = ub.max((pa + r as u128 + 1) * v as u128);
            }
            if ub < cutoff {
                out.pruned += vals.iter().filter(|&&(_, v)| v > 0).count() as u64;
                return;
            }
        }

        let live: u128 = vals.iter().filter(|&&(_, v)| v > 0).count() as u128;
        let mut seen = 0u128;
        for idx in 0..vals.len() {
            let (i, v) = vals[idx];
            if v == 0 {
                continue; // descendants would have B = ∅
            }
            seen += 1;
            let i = i as usize;
            let remaining = live - seen; // candidates after this one
            let ub = (pa + 1 + remaining) * v as u128;
            if ub < out.best.max(self.floor) {
                out.pruned += 1;
                continue;
            }
            let b2 = b.and(&self.rel.rows[i]);
            // closure with canonicity test: no index < i may enter
            let mut a2 = a.clone();
            a2.set(i);
            let mut canonical = true;
            for j in 0..i {
                if !a2.test(j) && b2.subset_of(&self.rel.rows[j]) {
                    canonical = false;
                    break;
                }
            }
            if !canonical {
                continue;
            }
            // indexes with zero overlap against b (hence against b2) can
            // never rejoin, so the closure completes within vals[idx+1..]
            let mut child_cand: Vec<u32> = Vec::new();
            for &(j, vj) in &vals[idx + 1..] {
                if vj == 0 {
                    continue;
                }
                if b2.subset_of(&self.rel.rows[j as usize]) {
                    a2.set(j as usize);
                } else {
                    child_cand.push(j);
                }
            }
            out.explored += 1;
            let pa2 = a2.count() as u128;
            let pb2 = b2.count() as u128;
            if pa2 > 0 && pb2 > 0 {
                self.consider(&a2, &b2, pa2 * pb2, out);
            }
            self.dfs(&a2, &b2, &child_cand, out);
        }
    }
}

/// Deterministic incumbent seeds: closures of 2-stars, of every singleton,
/// and of the candidate constructions. All are genuine concepts, so seeding
/// never affects exactness, only pruning strength.
fn seed_families(params: &CrossParams) -> Vec<UniformFamily> {
    let n = params.n;
    let mut seeds = Vec::new();
    // every 2-star on the A side
    if params.k >= 2 {
        let pairs = level(n, 2);
        for &pm in pairs.iter() {
            let core = Subset::from_bits_unchecked(n, pm);
            if let Ok(f) = crate::sets::star(n, params.k, &core) {
                if !f.is_empty() {
                    seeds.push(f);
                }
            }
        }
    }
    if params.t == 2 {
        // candidate extremal constructions on the A side, both orientations
        let mut kinds: Vec<FamilyKind> = Vec::new();
        for s in [3, params.k + 1, params.l + 1] {
            if s >= 3 && s <= n.get() {
                kinds.push(FamilyKind::H { s });
                kinds.push(FamilyKind::I { s });
                kinds.push(FamilyKind::A { s });
                kinds.push(FamilyKind::B { s });
            }
        }
        for r in 1..=2 {
            if 2 + 2 * r <= n.get() {
                kinds.push(FamilyKind::Frankl { t: 2, r });
            }
        }
        for kind in kinds {
            if let Ok(spec) = FamilySpec::new(kind, n.get(), params.k) {
                if let Ok(f) = spec.build() {
                    if !f.is_empty() {
                        seeds.push(f);
                    }
                }
            }
        }
    }
    seeds
}

/// Exact maximum of |A|·|B| over closed pairs with both sides nonempty
/// (restricted to pairs with small common core when `nontrivial_only`).
/// Results, including the explored/pruned counters, are independent of the
/// rayon worker count.
pub fn max_product(cfg: &SearchConfig) -> Result<SearchResult> {
    let rel = Rel::build(&cfg.params, cfg.level_limit)?;
    let m = rel.na();

    // Deterministic incumbents.
    let nontrivial = cfg.nontrivial_only;
    let seed_ctx = SearchCtx {
        rel: &rel,
        nontrivial_only: nontrivial,
        floor: 0,
    };
    let mut seed_out = SubtreeOut {
        best: 0,
        witnesses: Vec::new(),
        explored: 0,
        pruned: 0,
    };
    for fam in seed_families(&cfg.params) {
        let mut seed = Bits::empty(m);
        for am in fam.masks() {
            if let Ok(idx) = rel.a_masks.binary_search(&am) {
                seed.set(idx);
            }
        }
        let (a, b) = rel.close(&seed);
        let (pa, pb) = (a.count() as u128, b.count() as u128);
        if pa > 0 && pb > 0 {
            seed_ctx.consider(&a, &b, pa * pb, &mut seed_out);
        }
    }
    let mut best = seed_out.best;
    let mut witnesses = seed_out.witnesses;
    let floor_cfg = cfg.product_floor.to_u128().unwrap_or(u128::MAX);
    let floor = best.max(floor_cfg);

    let ctx = SearchCtx {
        rel: &rel,
        nontrivial_only: nontrivial,
        floor,
    };

    // Root concept and its children.
    let (a0, b0) = rel.close(&Bits::empty(m));
    let mut root_out = SubtreeOut {
        best: floor,
        witnesses: Vec::new(),
        explored: 1,
        pruned: 0,
    };
    {
        let (pa, pb) = (a0.count() as u128, b0.count() as u128);
        if pa > 0 && pb > 0 {
            ctx.consider(&a0, &b0, pa * pb, &mut root_out);
        }
    }

    // Children of the root, explored as independent deterministic subtrees.
    let root_cand: Vec<u32> = (0..m as u32)
        .filter(|&i| !a0.test(i as usize))
        .filter(|&i| rel.rows[i as usize].words.iter().zip(&b0.words).any(|(x, y)| x & y != 0))
        .collect();
    let mut children: Vec<(Bits, Bits, Vec<u32>)> = Vec::new();
    for (pos, &i) in root_cand.iter().enumerate() {
        let i = i as usize;
        let b2 = b0.and(&rel.rows[i]);
        if b2.is_empty() {
            continue;
        }
        let mut a2 = a0.clone();
        a2.set(i);
        let mut canonical = true;
        for j in 0..i {
            if !a2.test(j) && b2.subset_of(&rel.rows[j]) {
                canonical = false;
                break;
            }
        }
        if !canonical {
            continue;
        }
        let mut child_cand: Vec<u32> = Vec::new();
        for &j in &root_cand[pos + 1..] {
            if b2.subset_of(&rel.rows[j as usize]) {
                a2.set(j as usize);
            } else {
                child_cand.push(j);
            }
        }
        children.push((a2, b2, child_cand));
    }
    if cfg.use_compression_reduction {
        // The lectic-first child closes the unique left-compressed singleton
        // {[k]}; every relabeling class of concepts has a representative in
        // its subtree (or inside the root closure), so the maximum is exact.
        children.truncate(1);
    }

    let subtree_results: Vec<SubtreeOut> = children
        .into_par_iter()
        .map(|(a2, b2, child_cand)| {
            let mut out = SubtreeOut {
                best: floor,
                witnesses: Vec::new(),
                explored: 1,
                pruned: 0,
            };
            let (pa, pb) = (a2.count() as u128, b2.count() as u128);
            if pa > 0 && pb > 0 {
                ctx.consider(&a2, &b2, pa * pb, &mut out);
            }
            ctx.dfs(&a2, &b2, &child_cand, &mut out);
            out
        })
        .collect();

    // Deterministic merge in canonical child order.
    let mut explored = root_out.explored;
    let mut pruned = root_out.pruned;
    if root_out.best > best {
        best = root_out.best;
        witnesses.clear();
    }
    if root_out.best == best {
        witnesses.extend(root_out.witnesses);
    }
    for out in subtree_results {
        explored += out.explored;
        pruned += out.pruned;
        if out.best > best {
            best = out.best;
            witnesses.clear();
        }
        if out.best == best {
            witnesses.extend(out.witnesses);
        }
    }

    // Dedup by A-side index set (seeds can coincide with traversal finds),
    // then order canonically.
    witnesses.sort_by(|(a1, _), (a2, _)| a1.words.cmp(&a2.words));
    witnesses.dedup_by(|(a1, _), (a2, _)| a1 == a2);
    let witnesses: Vec<ClosedPair> = witnesses
        .into_iter()
        .filter(|(a, b)| !a.is_empty() && !b.is_empty())
        .map(|(a, b)| rel.pair(&a, &b))
        .collect();
    let max_product = if witnesses.is_empty() {
        BigInt::from(0)
    } else {
        BigInt::from(best)
    };
    Ok(SearchResult {
        max_product,
        witnesses,
        explored,
        pruned,
    })
}

/// Verdict of the star product bound check: the maximum equals
/// C(n-2,k-2)·C(n-2,l-2) and every witness is a co-star pair over a common
/// 2-set.
#[derive(Debug, Clone)]
pub struct StarBoundVerdict {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub bound: BigInt,
    pub max: BigInt,
    pub bound_attained: bool,
    pub witness_count: usize,
    pub expected_witnesses: BigInt,
    pub all_costar: bool,
    pub pass: bool,
    pub result: SearchResult,
}

/// Threshold n >= ceil(3.38 * max(k, l)), exactly (169/50).
pub fn threshold_n(k: u32, l: u32) -> u32 {
    let m = k.max(l) as u64;
    ((169 * m).div_ceil(50)) as u32
}

fn costar_witness(p: &ClosedPair) -> bool {
    let params = p.params();
    let core = match common_core(&[p.a(), p.b()]) {
        Ok(c) => c,
        Err(_) => return false,
    };
    if core.card() != 2 {
        return false;
    }
    let n = params.n.get() as i64;
    BigInt::from(p.a().len()) == bi(n - 2, params.k as i64 - 2)
        && BigInt::from(p.b().len()) == bi(n - 2, params.l as i64 - 2)
}

pub fn verify_product_bound(
    n: u32,
    k: u32,
    l: u32,
    force: bool,
    level_limit: usize,
) -> Result<StarBoundVerdict> {
    if !force && n < threshold_n(k, l) {
        return Err(domain(format!(
            "n = {n} is below the threshold ceil(3.38*max(k,l)) = {}; pass force to explore anyway",
            threshold_n(k, l)
        )));
    }
    let params = CrossParams::new(GroundSize::new(n)?, k, l, 2)?;
    let mut cfg = SearchConfig::new(params);
    cfg.level_limit = level_limit;
    let result = max_product(&cfg)?;
    let bound = bi(n as i64 - 2, k as i64 - 2) * bi(n as i64 - 2, l as i64 - 2);
    let bound_attained = result.max_product == bound;
    let all_costar = result.witnesses.iter().all(costar_witness);
    let expected_witnesses = bi(n as i64, 2);
    let witness_count = result.witnesses.len();
    let pass = bound_attained
        && all_costar
        && BigInt::from(witness_count) == expected_witnesses;
    Ok(StarBoundVerdict {
        n,
        k,
        l,
        bound,
        max: result.max_product.clone(),
        bound_attained,
        witness_count,
        expected_witnesses,
        all_costar,
        pass,
        result,
    })
}

/// Shape identified for a witness of the nontrivial bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessShape {
    /// ({ |a ∩ T| >= 2 }, { b ⊇ T }) for a 3-set T, possibly with sides swapped.
    PrefixStar3 { t: Vec<u32>, swapped: bool },
    /// (H(T2, S), I(T2, S)) for a 2-set T2 inside an s-set S, possibly swapped.
    HiPair { t2: Vec<u32>, s: Vec<u32>, swapped: bool },
    /// (F, F) on a 4-element kernel (prefix-majority on both sides).
    FranklPair { kernel: Vec<u32> },
}

#[derive(Debug, Clone)]
pub struct NontrivialVerdict {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    /// (label, exact product) for each candidate construction.
    pub candidates: Vec<(String, BigInt)>,
    pub best_candidate: BigInt,
    pub max: BigInt,
    pub max_equals_candidates: bool,
    pub witness_shapes: Vec<Option<WitnessShape>>,
    pub all_witnesses_shaped: bool,
    pub pass: bool,
    pub result: SearchResult,
}

fn level_filter(
    n: GroundSize,
    k: u32,
    pred: impl Fn(u64) -> bool,
) -> UniformFamily {
    let lvl = level(n, k);
    UniformFamily::from_masks(n, k, lvl.iter().copied().filter(|&mask| pred(mask)))
        .expect("level masks are valid")
}

/// Try to recognize a witness pair as one of the candidate shapes, deriving
/// the defining element sets from the witness itself (no isomorphism search).
pub fn match_witness_shape(p: &ClosedPair) -> Option<WitnessShape> {
    let params = *p.params();
    for swapped in [false, true] {
        let (fa, fb, ka, kb) = if swapped {
            (p.b(), p.a(), params.l, params.k)
        } else {
            (p.a(), p.b(), params.k, params.l)
        };
        if fa.is_empty() || fb.is_empty() {
            continue;
        }
        let n = params.n;
        let core_b = common_core(&[fb]).ok()?;

        // star over a 3-set against the 2-of-3 family
        if core_b.card() == 3 {
            let tm = core_b.bits();
            let want_b = level_filter(n, kb, |m| tm & !m == 0);
            let want_a = level_filter(n, ka, |m| (m & tm).count_ones() >= 2);
            if &want_b == fb && &want_a == fa {
                return Some(WitnessShape::PrefixStar3 {
                    t: core_b.elements().collect(),
                    swapped,
                });
            }
        }

        // H/I with the 2-core and the s-set derived from the B side
        if core_b.card() == 2 {
            let t2 = core_b.bits();
            // non-members of the containment star over t2 avoid S \ T2 entirely
            let mut avoided = 0u64;
            let b_star = level_filter(n, kb, |m| t2 & !m == 0);
            for m in b_star.masks() {
                if !fb.contains(&Subset::from_bits_unchecked(n, m)) {
                    avoided |= m & !t2;
                }
            }
            let s_mask = (n.mask() & !avoided) | t2;
            let s_card = s_mask.count_ones();
            if s_card >= 3 {
                let want_b =
                    level_filter(n, kb, |m| t2 & !m == 0 && (m & s_mask).count_ones() >= 3);
                let want_a = level_filter(n, ka, |m| {
                    t2 & !m == 0 || (m & s_mask).count_ones() >= s_card - 1
                });
                if &want_b == fb && &want_a == fa {
                    return Some(WitnessShape::HiPair {
                        t2: core_b.elements().collect(),
                        s: Subset::from_bits_unchecked(n, s_mask).elements().collect(),
                        swapped,
                    });
                }
            }
        }
    }

    // Frankl pair: 4-element kernel of top-degree elements on the A side
    let n = params.n;
    let mut degrees = vec![0usize; n.get() as usize + 1];
    for s in p.a().iter() {
        for e in s.elements() {
            degrees[e as usize] += 1;
        }
    }
    let mut order: Vec<u32> = (1..=n.get()).collect();
    order.sort_by_key(|&e| std::cmp::Reverse(degrees[e as usize]));
    if order.len() >= 5 && degrees[order[3] as usize] > degrees[order[4] as usize] {
        let kernel: Vec<u32> = {
            let mut k4 = order[..4].to_vec();
            k4.sort_unstable();
            k4
        };
        let km = kernel.iter().fold(0u64, |m, &e| m | 1 << (e - 1));
        let want_a = level_filter(n, params.k, |m| (m & km).count_ones() >= 3);
        let want_b = level_filter(n, params.l, |m| (m & km).count_ones() >= 3);
        if &want_a == p.a() && &want_b == p.b() {
            return Some(WitnessShape::FranklPair { kernel });
        }
    }
    None
}

pub fn verify_nontrivial_bound(
    n: u32,
    k: u32,
    l: u32,
    force: bool,
    level_limit: usize,
) -> Result<NontrivialVerdict> {
    if !force && n < threshold_n(k, l) {
        return Err(domain(format!(
            "n = {n} is below the threshold ceil(3.38*max(k,l)) = {}; pass force to explore anyway",
            threshold_n(k, l)
        )));
    }
    let params = CrossParams::new(GroundSize::new(n)?, k, l, 2)?;
    let mut cfg = SearchConfig::new(params);
    cfg.level_limit = level_limit;
    cfg.nontrivial_only = true;
    let result = max_product(&cfg)?;

    let mut candidates = vec![
        ("h(s=3)".to_string(), product_h(n, k, l, 3)?),
        ("f(r=1)".to_string(), product_f(n, k, l, 1)?),
    ];
    if k < n {
        candidates.push((format!("h(s=k+1={})", k + 1), product_h(n, k, l, k + 1)?));
    }
    let best_candidate = candidates
        .iter()
        .map(|(_, v)| v.clone())
        .max()
        .unwrap_or_else(BigInt::one);
    let max_equals_candidates = result.max_product == best_candidate;

    let witness_shapes: Vec<Option<WitnessShape>> =
        result.witnesses.iter().map(match_witness_shape).collect();
    let all_witnesses_shaped = witness_shapes.iter().all(|s| s.is_some());
    let pass = max_equals_candidates && all_witnesses_shaped && !result.witnesses.is_empty();
    Ok(NontrivialVerdict {
        n,
        k,
        l,
        candidates,
        best_candidate,
        max: result.max_product.clone(),
        max_equals_candidates,
        witness_shapes,
        all_witnesses_shaped,
        pass,
        result,
    })
}

/// Brute-force concept set for tiny instances: closures of every subfamily.
/// Test oracle for enumerate_concepts; exponential in the level size.
pub fn brute_force_concepts(params: &CrossParams, limit: usize) -> Result<Vec<(Vec<u64>, Vec<u64>)>> {
    let rel = Rel::build(params, limit)?;
    let m = rel.na();
    if m > 20 {
        return Err(domain(format!(
            "brute_force_concepts: 2^{m} subfamilies is too many"
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    for pick in 0u32..(1u32 << m) {
        let mut seed = Bits::empty(m);
        for i in 0..m {
            if (pick >> i) & 1 == 1 {
                seed.set(i);
            }
        }
        let (a, b) = rel.close(&seed);
        let am: Vec<u64> = a.ones().map(|i| rel.a_masks[i]).collect();
        let bm: Vec<u64> = b.ones().map(|j| rel.b_masks[j]).collect();
        seen.insert((am, bm));
    }
    Ok(seen.into_iter().collect())
}
