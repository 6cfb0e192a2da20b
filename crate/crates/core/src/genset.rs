//! Generating-set machinery: the canonical generating upset and its minimal
//! elements, s+, size slices, the D(E) block decomposition, push-up/push-down
//! pair transforms with exact size formulas, and the normalized upper-shadow
//! ratio bound.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::relation::is_cross_t;
use crate::scalar::{bi, rat, Rat};
use crate::sets::{ksubsets_of_mask, low_mask, GroundSize, Subset, UniformFamily};

/// Minimal elements of the canonical generating upset
/// U(A) = { E : |E| <= k and every k-superset of E lies in A }.
/// The upset they generate meets the k-level in exactly A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAntichain {
    n: GroundSize,
    k: u32,
    gens: Vec<Subset>,
    source: UniformFamily,
}

impl GeneratorAntichain {
    pub fn n(&self) -> GroundSize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn gens(&self) -> &[Subset] {
        &self.gens
    }

    pub fn source(&self) -> &UniformFamily {
        &self.source
    }

    /// Largest ground element appearing in any generator.
    pub fn s_plus(&self) -> Result<u32> {
        self.gens
            .iter()
            .filter_map(|g| g.max_element())
            .max()
            .ok_or_else(|| domain("s_plus: antichain has no nonempty generator".to_string()))
    }
}

/// Largest element of a nonempty set.
pub fn s_plus_set(e: &Subset) -> Result<u32> {
    e.max_element()
        .ok_or_else(|| domain("s_plus: empty set".to_string()))
}

/// Minimal elements of the canonical generating upset of a nonempty family.
pub fn canonical_generators(a: &UniformFamily) -> Result<GeneratorAntichain> {
    if a.is_empty() {
        return Err(domain("canonical_generators: empty family".to_string()));
    }
    let n = a.n();
    let k = a.k();
    let members: HashSet<u64> = a.masks().collect();

    // Every candidate generator is a subset of some member.
    let mut candidates: BTreeSet<u64> = BTreeSet::new();
    for m in a.masks() {
        let mut sub = m;
        loop {
            candidates.insert(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & m;
        }
    }

    let mut by_size: Vec<u64> = candidates.into_iter().collect();
    by_size.sort_by_key(|&c| (c.count_ones(), c));

    let comp_all = n.mask();
    let mut accepted: Vec<u64> = Vec::new();
    'cand: for c in by_size {
        for &g in &accepted {
            if g & !c == 0 {
                continue 'cand; // a smaller generator is already below it
            }
        }
        let need = k - c.count_ones();
        let comp = comp_all & !c;
        let generates = ksubsets_of_mask(comp, need)
            .into_iter()
            .all(|x| members.contains(&(c | x)));
        if generates {
            accepted.push(c);
        }
    }
    accepted.sort();
    let gens = accepted
        .into_iter()
        .map(|m| Subset::from_bits_unchecked(n, m))
        .collect();
    Ok(GeneratorAntichain {
        n,
        k,
        gens,
        source: a.clone(),
    })
}

/// Generators containing s+, grouped by cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceView {
    pub s_plus: u32,
    pub slices: BTreeMap<u32, Vec<Subset>>,
}

impl SliceView {
    pub fn get(&self, i: u32) -> &[Subset] {
        self.slices.get(&i).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

pub fn slice(g: &GeneratorAntichain) -> Result<SliceView> {
    let s = g.s_plus()?;
    let mut slices: BTreeMap<u32, Vec<Subset>> = BTreeMap::new();
    for e in g.gens() {
        if e.contains(s) {
            slices.entry(e.card()).or_default().push(*e);
        }
    }
    Ok(SliceView { s_plus: s, slices })
}

/// { B in binom(`[n]`, k) : B ∩ `[bound]` = trace }.
pub fn expand_trace(n: GroundSize, k: u32, bound: u32, trace: &Subset) -> Result<UniformFamily> {
    if trace.ground() != n {
        return Err(domain(
            "expand_trace: trace on a different ground set".to_string(),
        ));
    }
    if bound > n.get() || trace.bits() & !low_mask(bound) != 0 {
        return Err(domain(format!("expand_trace: trace not inside [{bound}]")));
    }
    if trace.card() > k {
        return UniformFamily::empty(n, k);
    }
    let high = n.mask() & !low_mask(bound);
    let masks = ksubsets_of_mask(high, k - trace.card())
        .into_iter()
        .map(|m| m | trace.bits());
    UniformFamily::from_masks(n, k, masks)
}

/// D(E): all k-sets whose intersection with `[s+(E)]` is exactly E.
/// |D(E)| = C(n - s+(E), k - |E|).
pub fn expand_d(e: &Subset, k: u32) -> Result<UniformFamily> {
    let bound = e.max_element().unwrap_or(0);
    expand_trace(e.ground(), k, bound, e)
}

/// Checks that the D(E) blocks over the antichain are pairwise disjoint and
/// union to the source family exactly.
pub fn verify_decomposition(a: &UniformFamily, g: &GeneratorAntichain) -> bool {
    let mut seen: HashSet<u64> = HashSet::new();
    let mut total = 0usize;
    for e in g.gens() {
        let block = match expand_d(e, a.k()) {
            Ok(b) => b,
            Err(_) => return false,
        };
        for m in block.masks() {
            if !seen.insert(m) {
                return false; // blocks overlap
            }
            total += 1;
        }
    }
    total == a.len() && a.masks().all(|m| seen.contains(&m))
}

/// Outcome of the push-up/push-down pair transform at slice i: A grows by the
/// primed D-blocks of its i-slice, B loses the D-blocks of its (s+t-i)-slice.
/// Sizes obey closed formulas, checked against enumeration.
#[derive(Debug, Clone)]
pub struct PushOutcome {
    pub a1: UniformFamily,
    pub b1: UniformFamily,
    pub size_a1: BigInt,
    pub size_b1: BigInt,
    pub s: u32,
    pub slice_a: usize,
    pub slice_b: usize,
}

pub fn push_transforms(
    a: &UniformFamily,
    b: &UniformFamily,
    i: u32,
    t: u32,
) -> Result<PushOutcome> {
    if a.n() != b.n() {
        return Err(domain("push_transforms: mismatched ground sizes".to_string()));
    }
    let n = a.n();
    let ga = canonical_generators(a)?;
    let gb = canonical_generators(b)?;
    let s = ga.s_plus()?.max(gb.s_plus()?);

    let slice_a: Vec<Subset> = ga
        .gens()
        .iter()
        .filter(|e| e.contains(s) && e.card() == i)
        .copied()
        .collect();
    if slice_a.is_empty() {
        return Err(domain(format!(
            "push_transforms: g*_{i}(A) is empty at s = {s}"
        )));
    }
    if s + t < i {
        return Err(domain(format!(
            "push_transforms: s + t - i negative (s={s} t={t} i={i})"
        )));
    }
    let dual = s + t - i;
    let slice_b: Vec<Subset> = gb
        .gens()
        .iter()
        .filter(|e| e.contains(s) && e.card() == dual)
        .copied()
        .collect();

    let mut a1 = a.clone();
    for e in &slice_a {
        let primed = e.without(s);
        let block = expand_trace(n, a.k(), s, &primed)?;
        a1 = a1.union_with(&block)?;
    }
    let mut b1 = b.clone();
    for f in &slice_b {
        let block = expand_trace(n, b.k(), s, f)?;
        b1 = b1.minus(&block)?;
    }

    let size_a1 = BigInt::from(a.len())
        + BigInt::from(slice_a.len()) * bi(n.get() as i64 - s as i64, a.k() as i64 - i as i64 + 1);
    let size_b1 = BigInt::from(b.len())
        - BigInt::from(slice_b.len()) * bi(n.get() as i64 - s as i64, b.k() as i64 - dual as i64);

    if BigInt::from(a1.len()) != size_a1 {
        return Err(domain(format!(
            "push_transforms: |A1| = {} disagrees with the closed formula {}",
            a1.len(),
            size_a1
        )));
    }
    if BigInt::from(b1.len()) != size_b1 {
        return Err(domain(format!(
            "push_transforms: |B1| = {} disagrees with the closed formula {}",
            b1.len(),
            size_b1
        )));
    }
    if !is_cross_t(&a1, &b1, t)? {
        return Err(domain(
            "push_transforms: transformed pair is not cross-t-intersecting \
             (input pair not maximal left-compressed?)"
                .to_string(),
        ));
    }

    Ok(PushOutcome {
        a1,
        b1,
        size_a1,
        size_b1,
        s,
        slice_a: slice_a.len(),
        slice_b: slice_b.len(),
    })
}

/// Slice duality between the two sides of a maximal left-compressed pair:
/// g*_i(A) nonempty iff g*_{s+t-i}(B) nonempty, and each generator on one
/// side has a partner meeting it in exactly t with union `[s]`.
#[derive(Debug, Clone)]
pub struct SliceDuality {
    pub s: u32,
    /// (i, A-slice nonempty, B-slice nonempty, partners found)
    pub per_slice: Vec<(u32, bool, bool, bool)>,
    pub ok: bool,
}

pub fn slice_duality(a: &UniformFamily, b: &UniformFamily, t: u32) -> Result<SliceDuality> {
    let ga = canonical_generators(a)?;
    let gb = canonical_generators(b)?;
    let s = ga.s_plus()?.max(gb.s_plus()?);
    let full = Subset::from_bits_unchecked(a.n(), low_mask(s));

    let star_slice = |g: &GeneratorAntichain, size: u32| -> Vec<Subset> {
        g.gens()
            .iter()
            .filter(|e| e.contains(s) && e.card() == size)
            .copied()
            .collect()
    };

    let mut per_slice = Vec::new();
    let mut ok = true;
    for i in t..=a.k() {
        if s + t < i {
            continue;
        }
        let dual = s + t - i;
        let ai = star_slice(&ga, i);
        let bj = star_slice(&gb, dual);
        let a_ne = !ai.is_empty();
        let b_ne = !bj.is_empty();
        let mut partners = a_ne == b_ne;
        if a_ne && b_ne {
            partners = ai
                .iter()
                .all(|e| bj.iter().any(|f| e.inter(*f).card() == t && e.union(*f) == full));
        }
        if a_ne != b_ne || !partners {
            ok = false;
        }
        per_slice.push((i, a_ne, b_ne, partners));
    }
    Ok(SliceDuality { s, per_slice, ok })
}

/// Exact checks of the three maximality inequalities tying a pair's sizes to
/// its slice counts; they hold at pairs of globally maximum product.
/// Everything is cross-multiplied, so no division is performed.
#[derive(Debug, Clone)]
pub struct MaximalityCheck {
    pub s: u32,
    pub push_up_ok: bool,
    pub push_down_ok: bool,
    pub combined_ok: bool,
}

pub fn maximality_inequalities(
    a: &UniformFamily,
    b: &UniformFamily,
    i: u32,
    t: u32,
) -> Result<MaximalityCheck> {
    let ga = canonical_generators(a)?;
    let gb = canonical_generators(b)?;
    let s = ga.s_plus()?.max(gb.s_plus()?);
    if s + t < i {
        return Err(domain(
            "maximality_inequalities: s + t - i negative".to_string(),
        ));
    }
    let dual = s + t - i;
    let count = |g: &GeneratorAntichain, size: u32| -> usize {
        g.gens()
            .iter()
            .filter(|e| e.contains(s) && e.card() == size)
            .count()
    };
    let ga_i = BigInt::from(count(&ga, i));
    let gb_d = BigInt::from(count(&gb, dual));
    if ga_i.is_zero() || gb_d.is_zero() {
        return Err(domain(format!(
            "maximality_inequalities: empty slice (|g*_{i}(A)| = {ga_i}, |g*_{dual}(B)| = {gb_d})"
        )));
    }
    let nn = a.n().get() as i64;
    let ca = bi(nn - s as i64, a.k() as i64 - i as i64 + 1); // C(n-s, k-i+1)
    let ca_p = bi(nn - s as i64, a.k() as i64 - i as i64); // C(n-s, k-i)
    let cb = bi(nn - s as i64, b.k() as i64 - dual as i64); // C(n-s, l-(s+t-i))
    let cb_p = bi(nn - s as i64, b.k() as i64 - dual as i64 + 1); // C(n-s, l-(s+t-i)+1)
    let na = BigInt::from(a.len());
    let nb = BigInt::from(b.len());

    // |B| * gA*CA <= (|A| + gA*CA) * gB*CB
    let push_up_ok = &nb * &ga_i * &ca <= (&na + &ga_i * &ca) * &gb_d * &cb;
    // |A| * gB*CB' <= (|B| + gB*CB') * gA*CA'
    let push_down_ok = &na * &gb_d * &cb_p <= (&nb + &gb_d * &cb_p) * &ga_i * &ca_p;
    // |A||B| * CA*CB' <= (|A| + gA*CA)(|B| + gB*CB') * CA'*CB
    let combined_ok =
        &na * &nb * &ca * &cb_p <= (&na + &ga_i * &ca) * (&nb + &gb_d * &cb_p) * &ca_p * &cb;

    Ok(MaximalityCheck {
        s,
        push_up_ok,
        push_down_ok,
        combined_ok,
    })
}

/// Exact |upper shadow| / |slice| for a primed slice inside binom(`[s-1]`, i-1),
/// checked against the normalized-matching lower bound
/// C(s-1, i) / C(s-1, i-1).
pub fn sperner_shadow_ratio(gslice: &[Subset], s: u32, i: u32) -> Result<Rat> {
    if gslice.is_empty() {
        return Err(domain("sperner_shadow_ratio: empty slice".to_string()));
    }
    if i < 1 || s < 2 {
        return Err(domain(
            "sperner_shadow_ratio: need i >= 1 and s >= 2".to_string(),
        ));
    }
    let inner = low_mask(s - 1);
    for e in gslice {
        if e.card() != i - 1 || e.bits() & !inner != 0 {
            return Err(domain(format!(
                "sperner_shadow_ratio: slice member {{{e}}} not an (i-1)-subset of [s-1]"
            )));
        }
    }
    let shadow = ksubsets_of_mask(inner, i)
        .into_iter()
        .filter(|&f| gslice.iter().any(|e| e.bits() & !f == 0))
        .count();
    let ratio = rat(BigInt::from(shadow), BigInt::from(gslice.len()));
    let bound = rat(bi(s as i64 - 1, i as i64), bi(s as i64 - 1, i as i64 - 1));
    if ratio < bound {
        return Err(domain(format!(
            "sperner_shadow_ratio: normalized matching bound violated ({ratio} < {bound})"
        )));
    }
    Ok(ratio)
}
