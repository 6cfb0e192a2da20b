//! Exact-rational evaluation and grid verification of the auxiliary
//! inequalities behind the product bound: the slice ratio f(n,k,s,i) in two
//! algebraic forms, its lower-bound inequality, the product inequality via
//! the factored quantity T, the case polynomials from the proof, and the
//! four scaling ratio constants.
//!
//! Every grid check is exact (BigInt / BigRational); each (k,l,s,i) tuple
//! additionally gets a tail certificate covering all n beyond the window:
//! the cross-multiplied margin is a polynomial in n whose derivatives of all
//! orders are verified positive from a computed point on, and the gap up to
//! that point is checked explicitly.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::poly::{positive_ray_start, Poly};
use crate::scalar::{bi, rat, Rat};

/// Slice pairs excluded from the product inequality's claim.
pub const EXCEPTION_SLICES: [(i64, i64); 4] = [(4, 3), (5, 3), (5, 4), (6, 4)];

/// Smallest admissible n: ceil(3.38 * max(k, l)), with 3.38 = 169/50 exact.
pub fn n_min(k: i64, l: i64) -> i64 {
    let m = k.max(l);
    (169 * m + 49) / 50
}

/// One checked grid point: the margin value (exact rational) and verdict.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub n: i64,
    pub k: i64,
    pub l: Option<i64>,
    pub s: Option<i64>,
    pub i: Option<i64>,
    pub num: BigInt,
    pub den: BigInt,
    pub pass: bool,
}

/// Tail certificate for one parameter tuple: all side conditions and the
/// margin polynomial are positive from `ray_start` on; integers in
/// (window_end, ray_start) were checked explicitly.
#[derive(Debug, Clone)]
pub struct TailCert {
    pub k: i64,
    pub l: Option<i64>,
    pub s: i64,
    pub i: i64,
    pub window_end: i64,
    pub ray_start: BigInt,
    pub gap_checked: u64,
    pub ok: bool,
}

/// Exception-hunt record: a point where the claim is withdrawn; the outcome
/// is reported, never asserted.
#[derive(Debug, Clone)]
pub struct ExceptionRow {
    pub n: i64,
    pub k: i64,
    pub l: i64,
    pub s: i64,
    pub i: i64,
    /// Exact margin of the inequality at the excluded point.
    pub num: BigInt,
    pub den: BigInt,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub name: String,
    pub grid: String,
    pub checked: u64,
    pub failures: u64,
    pub rows: Vec<SweepRow>,
    pub exceptions: Vec<ExceptionRow>,
    pub tails: Vec<TailCert>,
    /// Smallest margin seen across the grid, with its location.
    pub min_slack: Option<(SweepRow, Rat)>,
    pub notes: Vec<String>,
}

impl SweepReport {
    fn new(name: &str, grid: String) -> SweepReport {
        SweepReport {
            name: name.to_string(),
            grid,
            checked: 0,
            failures: 0,
            rows: Vec::new(),
            exceptions: Vec::new(),
            tails: Vec::new(),
            min_slack: None,
            notes: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0 && self.tails.iter().all(|t| t.ok)
    }

    fn push_margin(&mut self, row: SweepRow, margin: &Rat) {
        self.checked += 1;
        if !row.pass {
            self.failures += 1;
        }
        let better = match &self.min_slack {
            Some((_, best)) => margin < best,
            None => true,
        };
        if better {
            self.min_slack = Some((row.clone(), margin.clone()));
        }
        self.rows.push(row);
    }

    /// CSV with the fixed column set (n,k,l,s,i,value_num,value_den,pass).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,l,s,i,value_num,value_den,pass\n");
        for r in &self.rows {
            let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.n,
                r.k,
                opt(r.l),
                opt(r.s),
                opt(r.i),
                r.num,
                r.den,
                u8::from(r.pass)
            ));
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: checked {} points, {} failures; {} tail certificates ({} ok)",
            self.name,
            self.checked,
            self.failures,
            self.tails.len(),
            self.tails.iter().filter(|t| t.ok).count()
        );
        if let Some((row, slack)) = &self.min_slack {
            s.push_str(&format!(
                "; min slack {} at (n={}, k={}, l={:?}, s={:?}, i={:?})",
                slack, row.n, row.k, row.l, row.s, row.i
            ));
        }
        for note in &self.notes {
            s.push_str("\n  note: ");
            s.push_str(note);
        }
        s
    }
}

fn check_i64(v: i64) -> BigInt {
    BigInt::from(v)
}

/// f(n,k,s,i) evaluated by both of its algebraic forms, which must agree:
///   binomial:  (C(s-1,i-1)C(n-s,k-i) + C(s-1,i)C(n-s+1,k-i))
///            / (C(s-1,i-1)C(n-s+1,k-i+1) + C(s-1,i)C(n-s+1,k-i))
///   rational:  (k-i+1)(s(n-s+1) - i(k-i))
///            / ((n-s+1)(i(n+2i-2k-2s) + s(k+1)))
pub fn f_value(n: i64, k: i64, s: i64, i: i64) -> Result<Rat> {
    if !(1 <= i && i <= k && i < s && s >= 2 && n >= s) {
        return Err(domain(format!(
            "f_value: need 1 <= i <= min(k, s-1) and n >= s >= 2, got n={n} k={k} s={s} i={i}"
        )));
    }
    let num_b = bi(s - 1, i - 1) * bi(n - s, k - i) + bi(s - 1, i) * bi(n - s + 1, k - i);
    let den_b = bi(s - 1, i - 1) * bi(n - s + 1, k - i + 1) + bi(s - 1, i) * bi(n - s + 1, k - i);
    if den_b.is_zero() {
        return Err(domain(format!(
            "f_value: zero denominator in the binomial form at n={n} k={k} s={s} i={i}"
        )));
    }
    let num_r = check_i64(k - i + 1) * (check_i64(s) * (n - s + 1) - check_i64(i) * (k - i));
    let inner = check_i64(i) * (n + 2 * i - 2 * k - 2 * s) + check_i64(s) * (k + 1);
    let den_r = check_i64(n - s + 1) * &inner;
    if den_r.is_zero() {
        return Err(domain(format!(
            "f_value: zero factor (n-s+1)(i(n+2i-2k-2s)+s(k+1)) at n={n} k={k} s={s} i={i}"
        )));
    }
    let fb = rat(num_b, den_b);
    let fr = rat(num_r, den_r);
    if fb != fr {
        return Err(domain(format!(
            "f_value: dual forms disagree at n={n} k={k} s={s} i={i}: {fb} vs {fr}"
        )));
    }
    Ok(fb)
}

/// Witness values for the f-versus-shadow-ratio check.
#[derive(Debug, Clone)]
pub struct FRatioWitness {
    pub f: Rat,
    pub rhs: Rat,
    pub direct_holds: bool,
    pub poly_value: BigInt,
    pub poly_holds: bool,
}

/// Checks f(n,k,s,i) > C(n-s,k-i)/C(n-s,k-i+1) at an admissible point with
/// s >= k+1, by direct exact comparison and by the equivalent integer
/// positivity (n-s+1)(s-i)(n-2k-s+2i-1) - i(n-s-k+i+1)(k-i+1) > 0.
/// Both routes must agree.
pub fn f_ratio_check(n: i64, k: i64, s: i64, i: i64) -> Result<(bool, FRatioWitness)> {
    if n < n_min(k, k) {
        return Err(domain(format!("f_ratio_check: n = {n} below ceil(3.38k)")));
    }
    if s < k + 1 {
        return Err(domain(format!("f_ratio_check: need s >= k+1, got s={s} k={k}")));
    }
    if i < (s + 2 - k).max(3) || i > (s - 1).min(k) {
        return Err(domain(format!(
            "f_ratio_check: i = {i} outside [max(s+2-k,3), min(s-1,k)]"
        )));
    }
    let f = f_value(n, k, s, i)?;
    let rhs_den = bi(n - s, k - i + 1);
    if rhs_den.is_zero() {
        return Err(domain(format!(
            "f_ratio_check: C(n-s, k-i+1) = 0 at n={n} k={k} s={s} i={i}"
        )));
    }
    let rhs = rat(bi(n - s, k - i), rhs_den);
    let direct_holds = f > rhs;
    let poly_value = check_i64(n - s + 1) * (s - i) * (n - 2 * k - s + 2 * i - 1)
        - check_i64(i) * (n - s - k + i + 1) * (k - i + 1);
    let poly_holds = poly_value.is_positive();
    if direct_holds != poly_holds {
        return Err(domain(format!(
            "f_ratio_check: routes disagree at n={n} k={k} s={s} i={i}"
        )));
    }
    Ok((
        direct_holds,
        FRatioWitness {
            f,
            rhs,
            direct_holds,
            poly_value,
            poly_holds,
        },
    ))
}

/// The factored quantity T(n,s,k,l,i) whose exceeding 1 is equivalent to the
/// product inequality; denominator factors must be positive.
pub fn t_value(n: i64, s: i64, k: i64, l: i64, i: i64) -> Result<Rat> {
    let f1 = check_i64(s) * (n - s + 1) - check_i64(i) * (k - i);
    let f2 = check_i64(s) * (n - s + 1) - check_i64(s - i + 2) * (l + i - s - 2);
    let f3 = check_i64(n - s - k + i);
    let f4 = check_i64(n - l - i + 2);
    let d1 = check_i64(i) * (n - 2 * k - s + 2 * i) + check_i64(s) * (k - i + 1);
    let d2 = check_i64(s - i + 2) * (n - 2 * l - 2 * i + s + 4)
        + check_i64(s) * (l + i - s - 1);
    let d3 = check_i64(n - s + 1) * (n - s + 1);
    for (name, v) in [
        ("i(n-2k-s+2i)+s(k-i+1)", &d1),
        ("(s-i+2)(n-2l-2i+s+4)+s(l+i-s-1)", &d2),
        ("(n-s+1)^2", &d3),
    ] {
        if !v.is_positive() {
            return Err(domain(format!(
                "t_value: denominator factor {name} = {v} not positive at n={n} s={s} k={k} l={l} i={i}"
            )));
        }
    }
    Ok(rat(f1 * f2 * f3 * f4, d1 * d2 * d3))
}

fn admissible_i_range(k: i64, l: i64, s: i64) -> impl Iterator<Item = i64> {
    let lo = (s + 2 - l).max(3);
    let hi = k.min(s - 1);
    lo..=hi
}

/// Exact margin of the product inequality at one admissible point:
/// f(n,k,s,i) f(n,l,s,s+2-i) - C(n-s,k-i)C(n-s,l+i-s-2)/(C(n-s,k-i+1)C(n-s,l+i-s-1)).
pub fn product_inequality_margin(n: i64, k: i64, l: i64, s: i64, i: i64) -> Result<Rat> {
    let lhs = f_value(n, k, s, i)? * f_value(n, l, s, s + 2 - i)?;
    let den = bi(n - s, k - i + 1) * bi(n - s, l + i - s - 1);
    if den.is_zero() {
        return Err(domain(format!(
            "product_inequality_margin: zero RHS denominator at n={n} k={k} l={l} s={s} i={i}"
        )));
    }
    let rhs = rat(bi(n - s, k - i) * bi(n - s, l + i - s - 2), den);
    Ok(lhs - rhs)
}

/// Linear factors (as polynomials in n) that must be positive for the margin
/// polynomial to decide the product inequality, plus the margin N - D itself.
fn t_margin_polys(k: i64, l: i64, s: i64, i: i64) -> (Vec<Poly>, Poly) {
    let lin = |a: i64, b: i64| Poly::linear(a, b);
    let f1 = lin(s, s * (1 - s) - i * (k - i));
    let f2 = lin(s, s * (1 - s) - (s - i + 2) * (l + i - s - 2));
    let f3 = lin(1, i - s - k);
    let f4 = lin(1, 2 - l - i);
    let d1 = lin(i, i * (2 * i - 2 * k - s) + s * (k - i + 1));
    let d2 = lin(s - i + 2, (s - i + 2) * (s + 4 - 2 * l - 2 * i) + s * (l + i - s - 1));
    let d3s = lin(1, 1 - s);
    let numer = f1.mul(&f2).mul(&f3).mul(&f4);
    let denom = d1.mul(&d2).mul(&d3s).mul(&d3s);
    let margin = numer.sub(&denom);
    // side conditions: D1 > 0, D2 > 0, n-s+1 > 0, the two RHS denominators
    // positive as binomials: n-s >= k-i+1 and n-s >= l+i-s-1, and the
    // numerators' factors nonnegative swallow into the margin itself.
    let conditions = vec![
        d1,
        d2,
        d3s,
        lin(1, -(s + k - i + 1) + 1), // n - s - (k-i+1) >= 0, strict via +1 shift: n-s-(k-i+1)+1 > 0
        lin(1, -(l + i - 1) + 1),     // n - s - (l+i-s-1) + 1 > 0
    ];
    (conditions, margin)
}

/// Tail certificate for one (k,l,s,i): returns the certified ray start and
/// verifies every integer between window_end+1 and the start explicitly.
#[allow(clippy::too_many_arguments)]
fn certify_tail(
    k: i64,
    l: Option<i64>,
    s: i64,
    i: i64,
    window_end: i64,
    conditions: &[Poly],
    margin: &Poly,
    explicit_check: impl Fn(i64) -> bool,
) -> TailCert {
    let from = BigInt::from(window_end + 1);
    let mut start = from.clone();
    let mut ok = true;
    for p in conditions.iter().chain(std::iter::once(margin)) {
        match positive_ray_start(p, &from) {
            Some(u) => {
                if u > start {
                    start = u;
                }
            }
            None => {
                ok = false;
            }
        }
    }
    let mut gap_checked = 0u64;
    if ok {
        let mut n = window_end + 1;
        let cap = window_end + 200_000; // certified starts are tiny in practice
        loop {
            let nb = BigInt::from(n);
            if nb >= start || n > cap {
                if n > cap && nb < start {
                    ok = false;
                }
                break;
            }
            if !explicit_check(n) {
                ok = false;
                break;
            }
            gap_checked += 1;
            n += 1;
        }
    }
    TailCert {
        k,
        l,
        s,
        i,
        window_end,
        ray_start: start,
        gap_checked,
        ok,
    }
}

/// Grid sweep of the f-versus-shadow-ratio inequality over
/// 3 <= k <= kmax, k+1 <= s <= 2k-1, admissible i, an n-window, plus a tail
/// certificate per (k,s,i).
pub fn sweep_f(kmax: i64, nwindow: i64) -> SweepReport {
    let mut report = SweepReport::new(
        "sweep-f",
        format!("3 <= k <= {kmax}, k+1 <= s <= 2k-1, admissible i, n-window {nwindow}"),
    );

    type KOut = (Vec<(SweepRow, Rat)>, Vec<TailCert>);
    let per_k: Vec<KOut> = (3..=kmax)
        .into_par_iter()
        .map(|k| {
            let mut rows = Vec::new();
            let mut tails = Vec::new();
            let n0 = n_min(k, k);
            for s in k + 1..=2 * k - 1 {
                for i in (s + 2 - k).max(3)..=(s - 1).min(k) {
                    for n in n0..=n0 + nwindow {
                        let (holds, w) = f_ratio_check(n, k, s, i)
                            .unwrap_or_else(|e| panic!("inadmissible grid point: {e}"));
                        let margin = &w.f - &w.rhs;
                        rows.push((
                            SweepRow {
                                n,
                                k,
                                l: None,
                                s: Some(s),
                                i: Some(i),
                                num: margin.numer().clone(),
                                den: margin.denom().clone(),
                                pass: holds,
                            },
                            margin,
                        ));
                    }
                    // tail: cross-multiplied direct difference,
                    // f - rhs > 0 <=> fnum*(n+i-k-s) - (k-i+1)*den_r > 0
                    // given den_r's factors and the ratio form valid
                    let lin = |a: i64, b: i64| Poly::linear(a, b);
                    let fnum = lin(s, s * (1 - s) - i * (k - i)).scale(&BigInt::from(k - i + 1));
                    let den_inner = lin(i, 2 * i * i - 2 * i * k - 2 * i * s + s * (k + 1));
                    let den_r = lin(1, 1 - s).mul(&den_inner);
                    let diff = fnum
                        .mul(&lin(1, i - k - s))
                        .sub(&den_r.scale(&BigInt::from(k - i + 1)));
                    let conditions = vec![
                        lin(1, 1 - s),        // n - s + 1 > 0
                        den_inner,            // rational-form inner factor > 0
                        lin(1, -(s + k - i)), // n - s - (k-i) > 0: ratio form of the RHS is valid
                    ];
                    tails.push(certify_tail(
                        k,
                        None,
                        s,
                        i,
                        n0 + nwindow,
                        &conditions,
                        &diff,
                        |n| matches!(f_ratio_check(n, k, s, i), Ok((true, _))),
                    ));
                }
            }
            (rows, tails)
        })
        .collect();

    for (rows, tails) in per_k {
        for (row, margin) in rows {
            report.push_margin(row, &margin);
        }
        report.tails.extend(tails);
    }
    report
        .notes
        .push("both evaluation routes (direct ratio, integer positivity) agreed at every point".to_string());
    report
}

/// Grid sweep of the product inequality over k,l <= bounds, all admissible
/// (s,i) outside the exception list, an n-window, and a tail certificate per
/// tuple. Exception slices are hunted and reported, never asserted.
pub fn sweep_product_inequality(kmax: i64, lmax: i64, nwindow: i64) -> SweepReport {
    let mut report = SweepReport::new(
        "sweep-T",
        format!("3 <= k <= {kmax}, 3 <= l <= {lmax}, admissible (s,i), n-window {nwindow}"),
    );

    let pairs: Vec<(i64, i64)> = (3..=kmax).flat_map(|k| (3..=lmax).map(move |l| (k, l))).collect();
    type PairOut = (Vec<(SweepRow, Rat)>, Vec<ExceptionRow>, Vec<TailCert>, bool);
    let per_pair: Vec<PairOut> = pairs
        .into_par_iter()
        .map(|(k, l)| {
            let mut rows = Vec::new();
            let mut exceptions = Vec::new();
            let mut tails = Vec::new();
            let mut routes_agree = true;
            let n0 = n_min(k, l);
            for s in 4..=(k + l - 2) {
                for i in admissible_i_range(k, l, s) {
                    let excluded = EXCEPTION_SLICES.contains(&(s, i));
                    for n in n0..=n0 + nwindow {
                        let margin = product_inequality_margin(n, k, l, s, i)
                            .unwrap_or_else(|e| panic!("inadmissible grid point: {e}"));
                        let holds = margin.numer().is_positive();
                        if excluded {
                            exceptions.push(ExceptionRow {
                                n,
                                k,
                                l,
                                s,
                                i,
                                num: margin.numer().clone(),
                                den: margin.denom().clone(),
                                holds,
                            });
                            continue;
                        }
                        // route agreement with T where T's preconditions hold
                        if let Ok(t) = t_value(n, s, k, l, i) {
                            let one = rat(BigInt::from(1), BigInt::from(1));
                            if (t > one) != holds {
                                routes_agree = false;
                            }
                        }
                        rows.push((
                            SweepRow {
                                n,
                                k,
                                l: Some(l),
                                s: Some(s),
                                i: Some(i),
                                num: margin.numer().clone(),
                                den: margin.denom().clone(),
                                pass: holds,
                            },
                            margin,
                        ));
                    }
                    if !excluded {
                        let (conditions, margin_poly) = t_margin_polys(k, l, s, i);
                        tails.push(certify_tail(
                            k,
                            Some(l),
                            s,
                            i,
                            n0 + nwindow,
                            &conditions,
                            &margin_poly,
                            |n| {
                                product_inequality_margin(n, k, l, s, i)
                                    .map(|m| m.numer().is_positive())
                                    .unwrap_or(false)
                            },
                        ));
                    }
                }
            }
            (rows, exceptions, tails, routes_agree)
        })
        .collect();

    let mut all_routes_agree = true;
    for (rows, exceptions, tails, routes_agree) in per_pair {
        for (row, margin) in rows {
            report.push_margin(row, &margin);
        }
        report.exceptions.extend(exceptions);
        report.tails.extend(tails);
        all_routes_agree &= routes_agree;
    }
    if !all_routes_agree {
        report.failures += 1;
        report
            .notes
            .push("ROUTE DISAGREEMENT: T > 1 differed from the direct margin somewhere".to_string());
    }
    let violated = report.exceptions.iter().filter(|e| !e.holds).count();
    report.notes.push(format!(
        "exception hunt: {} excluded points checked, {} violate the inequality (reported, not asserted)",
        report.exceptions.len(),
        violated
    ));
    for (s, i) in EXCEPTION_SLICES {
        let total = report
            .exceptions
            .iter()
            .filter(|e| e.s == s && e.i == i)
            .count();
        let bad = report
            .exceptions
            .iter()
            .filter(|e| e.s == s && e.i == i && !e.holds)
            .count();
        if total > 0 {
            report.notes.push(format!(
                "  excluded slice (s={s}, i={i}): {bad} of {total} points violate"
            ));
        }
    }
    report
}

/// The four scaling ratio bounds, checked at the minimal admissible n for
/// every k (resp. l), with monotonicity in n verified on a window and the
/// whole tail certified via the closed forms.
pub fn sweep_ratio_bounds(kmax: i64, lmax: i64) -> SweepReport {
    let mut report = SweepReport::new(
        "sweep-ratios",
        format!("2 <= k <= {kmax}, 2 <= l <= {lmax}, n from ceil(3.38*max) on"),
    );
    const WINDOW: i64 = 20;

    // ratio index, bound, binomial form, closed cross-multiplied poly builder
    struct Ratio {
        id: i64,
        k_side: bool,
        bound_num: i64,
        bound_den: i64,
        value: fn(i64, i64) -> (BigInt, BigInt), // (num, den) binomials at (n, k-or-l)
        tail_poly: fn(i64) -> Poly,              // bound*den - bound_den*num as poly in n
    }

    let ratios = [
        Ratio {
            id: 1,
            k_side: true,
            bound_num: 3,
            bound_den: 10,
            value: |n, k| (bi(n - 3, k - 3), bi(n - 2, k - 2)),
            // 3(n-2) - 10(k-2) > 0 certifies (k-2)/(n-2) < 3/10
            tail_poly: |k| Poly::linear(3, -6 - 10 * (k - 2)),
        },
        Ratio {
            id: 2,
            k_side: true,
            bound_num: 21,
            bound_den: 100,
            value: |n, k| (bi(n - 4, k - 3), bi(n - 2, k - 2)),
            // 21(n-2)(n-3) - 100(k-2)(n-k) > 0
            tail_poly: |k| {
                Poly::linear(1, -2)
                    .mul(&Poly::linear(1, -3))
                    .scale(&BigInt::from(21))
                    .sub(&Poly::linear(1, -k).scale(&BigInt::from(100 * (k - 2))))
            },
        },
        Ratio {
            id: 3,
            k_side: false,
            bound_num: 9,
            bound_den: 100,
            value: |n, l| (bi(n - 4, l - 4), bi(n - 2, l - 2)),
            // 9(n-2)(n-3) - 100(l-2)(l-3) > 0
            tail_poly: |l| {
                Poly::linear(1, -2)
                    .mul(&Poly::linear(1, -3))
                    .scale(&BigInt::from(9))
                    .sub(&Poly::constant(100 * (l - 2) * (l - 3)))
            },
        },
        Ratio {
            id: 4,
            k_side: false,
            bound_num: 63,
            bound_den: 1000,
            value: |n, l| (bi(n - 5, l - 4), bi(n - 2, l - 2)),
            // 63(n-2)(n-3)(n-4) - 1000(l-2)(l-3)(n-l) > 0
            tail_poly: |l| {
                Poly::linear(1, -2)
                    .mul(&Poly::linear(1, -3))
                    .mul(&Poly::linear(1, -4))
                    .scale(&BigInt::from(63))
                    .sub(&Poly::linear(1, -l).scale(&BigInt::from(1000 * (l - 2) * (l - 3))))
            },
        },
    ];

    let mut monotone_ok = true;
    for r in &ratios {
        let top = if r.k_side { kmax } else { lmax };
        for param in 2..=top {
            let n0 = n_min(param, param);
            let bound = rat(BigInt::from(r.bound_num), BigInt::from(r.bound_den));
            let mut prev: Option<Rat> = None;
            for n in n0..=n0 + WINDOW {
                let (num, den) = (r.value)(n, param);
                let value = rat(num.clone(), den.clone());
                let pass = value < bound;
                if let Some(p) = &prev {
                    if &value > p {
                        monotone_ok = false;
                    }
                }
                prev = Some(value.clone());
                let margin = bound.clone() - value;
                let (kcol, lcol) = if r.k_side {
                    (param, None)
                } else {
                    (0, Some(param))
                };
                report.push_margin(
                    SweepRow {
                        n,
                        k: kcol,
                        l: lcol,
                        s: None,
                        i: Some(r.id),
                        num,
                        den,
                        pass,
                    },
                    &margin,
                );
            }
            // certified tail from the closed forms (valid for n >= param + 1)
            let tail = certify_tail(
                if r.k_side { param } else { 0 },
                if r.k_side { None } else { Some(param) },
                0,
                r.id,
                n0 + WINDOW,
                &[],
                &(r.tail_poly)(param),
                |n| {
                    let (num, den) = (r.value)(n, param);
                    rat(num, den) < bound
                },
            );
            report.tails.push(tail);
        }
    }
    if !monotone_ok {
        report.failures += 1;
        report
            .notes
            .push("MONOTONICITY VIOLATION: some ratio increased in n on the window".to_string());
    } else {
        report
            .notes
            .push("all four ratios verified monotone nonincreasing in n on the window".to_string());
    }
    report
}

/// The named case polynomials from the product-inequality proof, evaluated
/// in exact (scaled) integer arithmetic at admissible grid points of their
/// case regions; the claimed strict positivity is asserted per point.
pub fn sweep_case_polynomials(kmax: i64, lmax: i64, nwindow: i64) -> SweepReport {
    let mut report = SweepReport::new(
        "sweep-polys",
        format!("3 <= k <= {kmax}, 3 <= l <= {lmax}, case regions, n-window {nwindow}"),
    );

    type I = i128;
    let case1_g = |n: I, s: I, k: I, l: I, i: I| -> I {
        (n - s - k + i) * (s * (n - s + 1) - (s - i + 2) * (l + i - s - 2))
            - (n - s + 1) * (i * (n - 2 * k - s + 2 * i) + s * (k - i + 1))
    };
    let case1_h = |n: I, s: I, k: I, l: I, i: I| -> I {
        (n - l - i + 2) * (s * (n - s + 1) - i * (k - i))
            - (n - s + 1) * ((s - i + 2) * (n - 2 * l - 2 * i + s + 4) + s * (l + i - s - 1))
    };
    // case 2 (i = 4, s >= 7), l >= k branch, scaled by 50 (0.38 = 19/50)
    let case2_p = |n: I, s: I, k: I, l: I| -> I {
        50 * (s * (n - s + 1) - (s - 2) * (l - s + 2)) * (n - s - k + 4)
            - (50 * (4 * (n - 2 * k - s + 8) + s * (k - 3)) + 19 * l) * (n - s + 1)
    };
    let case2_q = |n: I, s: I, k: I, l: I| -> I {
        50 * (s * (n - s + 1) - 4 * (k - 4)) * (n - l - 2)
            - (50 * ((s - 2) * (n - 2 * l + s - 4) + s * (l - s + 3)) - 19 * l) * (n - s + 1)
    };
    // case 2, k >= l branch, scaled by 10 (0.1k)
    let case2_s = |n: I, s: I, k: I, l: I| -> I {
        (s * (n - s + 1) - (s - 2) * (l - s + 2)) * (10 * (n - s - k + 4) - k)
            - 10 * (4 * (n - 2 * k - s + 8) + s * (k - 3)) * (n - s + 1)
    };
    let case2_t = |n: I, s: I, k: I, l: I| -> I {
        (s * (n - s + 1) - 4 * (k - 4)) * (10 * (n - l - 2) + k)
            - 10 * ((s - 2) * (n - 2 * l + s - 4) + s * (l - s + 3)) * (n - s + 1)
    };
    // case 3 (i = 3, s >= 7), l >= k branch, scaled by 100 (0.27, 0.31)
    let case3_p = |n: I, s: I, k: I, l: I| -> I {
        100 * (s * (n - s + 1) - 3 * (k - 3)) * (n - l - 1)
            - ((s - 1) * (n - 2 * l + s - 2) + s * (l - s + 2)) * (100 * (n - s + 1) - 27 * l)
    };
    let case3_q = |n: I, s: I, k: I, l: I| -> I {
        100 * (s * (n - s + 1) - (s - 1) * (l - s + 1)) * (n - s - k + 3)
            - (3 * (n - 2 * k - s + 6) + s * (k - 2)) * (100 * (n - s + 1) + 31 * l)
    };
    // case 3, k > l branch, scaled by 100 (0.12k)
    let case3_pk = |n: I, s: I, k: I, l: I| -> I {
        (s * (n - s + 1) - 3 * (k - 3)) * (100 * (n - l - 1) + 12 * k)
            - 100 * ((s - 1) * (n - 2 * l + s - 2) + s * (l - s + 2)) * (n - s + 1)
    };
    let case3_qk = |n: I, s: I, k: I, l: I| -> I {
        (s * (n - s + 1) - (s - 1) * (l - s + 1)) * (100 * (n - s - k + 3) - 12 * k)
            - 100 * (3 * (n - 2 * k - s + 6) + s * (k - 2)) * (n - s + 1)
    };
    // case 3, s = 6 final display bounds, l >= k branch scaled by 1000
    let s6_u = |n: I, k: I, l: I, c: I| -> I {
        1000 * (n - k - 3) * (6 * (n - 5) - 5 * (l - 5))
            - (n - 5) * (1000 * (3 * (n - 2 * k) + 6 * (k - 2)) + 619 * c)
    };
    let s6_v = |n: I, k: I, l: I, c: I| -> I {
        1000 * (n - l - 1) * (6 * (n - 5) - 3 * (k - 3))
            - (n - 5) * (1000 * (5 * (n - 2 * l + 4) + 6 * (l - 4)) - 733 * c)
    };

    let push = |report: &mut SweepReport,
                    n: i64,
                    k: i64,
                    l: i64,
                    s: i64,
                    i: i64,
                    label_value: I| {
        let pass = label_value > 0;
        let num = BigInt::from(label_value);
        let margin = rat(num.clone(), BigInt::from(1));
        report.push_margin(
            SweepRow {
                n,
                k,
                l: Some(l),
                s: Some(s),
                i: Some(i),
                num,
                den: BigInt::from(1),
                pass,
            },
            &margin,
        );
    };

    for k in 3..=kmax {
        for l in 3..=lmax {
            let n0 = n_min(k, l);
            for s in 4..=(k + l - 2) {
                if s > k.max(l) {
                    continue; // the factored route only covers s <= max(k,l)
                }
                for i in admissible_i_range(k, l, s) {
                    if EXCEPTION_SLICES.contains(&(s, i)) {
                        continue;
                    }
                    // reduce i > s+2-i cases through the symmetric tuple
                    let (ik, il, ii) = if i > s + 2 - i { (l, k, s + 2 - i) } else { (k, l, i) };
                    for n in n0..=n0 + nwindow {
                        let (ni, si, ki, li, iii) =
                            (n as I, s as I, ik as I, il as I, ii as I);
                        if ii >= 5 && ii <= s - 3 {
                            push(&mut report, n, k, l, s, i, case1_g(ni, si, ki, li, iii));
                            push(&mut report, n, k, l, s, i, case1_h(ni, si, li, ki, iii));
                        } else if ii == 4 && s >= 7 {
                            if li >= ki {
                                push(&mut report, n, k, l, s, i, case2_p(ni, si, ki, li));
                                push(&mut report, n, k, l, s, i, case2_q(ni, si, ki, li));
                            }
                            if ki >= li {
                                push(&mut report, n, k, l, s, i, case2_s(ni, si, ki, li));
                                push(&mut report, n, k, l, s, i, case2_t(ni, si, ki, li));
                            }
                        } else if ii == 3 && s >= 7 {
                            if li >= ki {
                                push(&mut report, n, k, l, s, i, case3_p(ni, si, ki, li));
                                push(&mut report, n, k, l, s, i, case3_q(ni, si, ki, li));
                            }
                            if ki > li {
                                push(&mut report, n, k, l, s, i, case3_pk(ni, si, ki, li));
                                push(&mut report, n, k, l, s, i, case3_qk(ni, si, ki, li));
                            }
                        } else if ii == 3 && s == 6 {
                            if li >= ki {
                                push(&mut report, n, k, l, s, i, s6_u(ni, ki, li, ki));
                                push(&mut report, n, k, l, s, i, s6_v(ni, ki, li, ki));
                            }
                            if ki > li {
                                push(&mut report, n, k, l, s, i, s6_u(ni, ki, li, li));
                                push(&mut report, n, k, l, s, i, s6_v(ni, ki, li, li));
                            }
                        }
                    }
                }
            }
        }
    }
    report.notes.push(
        "slice values above (s+2)/2 are checked through the symmetric tuple (l,k,s+2-i)".to_string(),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn r(n: i64, d: i64) -> Rat {
        rat(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn f_value_matches_both_forms() {
        // 1960/5600 = 252/720 = 7/20
        assert_eq!(f_value(20, 5, 6, 3).unwrap(), r(7, 20));
    }

    #[test]
    fn f_value_dual_form_grid() {
        // both forms agree at every admissible integer point on a dense grid
        for k in 3..=12i64 {
            for s in 4..=2 * k {
                for i in (s + 2 - k).max(3)..=(s - 1).min(k) {
                    let n0 = n_min(k, k);
                    for n in n0..=n0 + 8 {
                        f_value(n, k, s, i).unwrap();
                    }
                }
            }
        }
        // a far larger spot grid
        for k in [20i64, 30] {
            for s in [k + 1, 2 * k - 1] {
                for n in [200i64, 150] {
                    for i in (s + 2 - k).max(3)..=(s - 1).min(k) {
                        f_value(n, k, s, i).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn f_ratio_at_spec_points() {
        let (holds, w) = f_ratio_check(20, 5, 6, 3).unwrap();
        assert!(holds);
        assert_eq!(w.f, r(7, 20));
        assert_eq!(w.rhs, r(1, 4)); // C(14,2)/C(14,3) = 91/364
        assert_eq!(w.poly_value, BigInt::from(288));

        let (holds, _) = f_ratio_check(17, 5, 6, 5).unwrap();
        assert!(holds);
    }

    #[test]
    fn t_value_at_spec_point() {
        let t = t_value(24, 7, 7, 7, 4).unwrap();
        assert_eq!(t, r(2777040, 2006208));
        assert!(t > Rat::one());
    }

    #[test]
    fn t_symmetry_computed_not_asserted() {
        // (k,l,i) -> (l,k,s+2-i) gives the swapped tuple; both values are
        // computed and compared informally, equality is not asserted
        let a = t_value(24, 7, 7, 7, 4).unwrap();
        let c = t_value(24, 7, 7, 7, 5).unwrap();
        assert!(a > Rat::one() && c > Rat::one());
    }

    #[test]
    fn exception_slice_violates_somewhere() {
        // (s,i) = (4,3) is excluded for a reason: hunt for a violation
        let mut violated = false;
        for k in 3..=6i64 {
            for l in 3..=6 {
                if (s_ok(4, k, l)) && admissible_i_range(k, l, 4).any(|i| i == 3) {
                    let n0 = n_min(k, l);
                    for n in n0..=n0 + 10 {
                        if let Ok(m) = product_inequality_margin(n, k, l, 4, 3) {
                            if !m.numer().is_positive() {
                                violated = true;
                            }
                        }
                    }
                }
            }
        }
        assert!(violated, "the (4,3) exclusion should be witnessed by some violation");
    }

    fn s_ok(s: i64, k: i64, l: i64) -> bool {
        s <= k + l - 2
    }

    #[test]
    fn small_product_sweep_clean() {
        let rep = sweep_product_inequality(6, 6, 6);
        assert!(rep.pass(), "summary: {}", rep.summary());
        assert!(rep.checked > 0);
        assert!(!rep.exceptions.is_empty());
    }

    #[test]
    fn small_f_sweep_clean() {
        let rep = sweep_f(8, 10);
        assert!(rep.pass(), "summary: {}", rep.summary());
        // slack is strictly positive everywhere (no equality at integer points)
        let (_, slack) = rep.min_slack.as_ref().unwrap();
        assert!(slack > &Rat::zero());
    }


    #[test]
    fn ratio_bounds_examples() {
        let rep = sweep_ratio_bounds(8, 8);
        assert!(rep.pass(), "summary: {}", rep.summary());
        // k = 5, n = 17: (k-2)/(n-2) = 1/5 < 3/10
        let row = rep
            .rows
            .iter()
            .find(|r| r.k == 5 && r.i == Some(1) && r.n == 17)
            .unwrap();
        assert!(row.pass);
        assert_eq!(rat(row.num.clone(), row.den.clone()), r(1, 5));
        // l = 4, n = 14: C(10,0)/C(12,2) = 1/66 < 9/100
        let row = rep
            .rows
            .iter()
            .find(|r| r.l == Some(4) && r.i == Some(3) && r.n == 14)
            .unwrap();
        assert_eq!(rat(row.num.clone(), row.den.clone()), r(1, 66));
        // k = 2 degenerate: zero numerator rows pass
        assert!(rep.rows.iter().filter(|r| r.k == 2).all(|r| r.pass));
    }

    #[test]
    fn case_polynomials_at_anchor_points() {
        // hand-computed anchors
        let rep = sweep_case_polynomials(10, 10, 2);
        assert!(rep.checked > 0);
        assert!(rep.pass(), "summary: {}", rep.summary());
        // case 1 g at (n=34, s=8, k=l=10, i=5) is 555
        let row = rep
            .rows
            .iter()
            .find(|r| r.n == 34 && r.k == 10 && r.l == Some(10) && r.s == Some(8) && r.i == Some(5))
            .unwrap();
        assert_eq!(row.num, BigInt::from(555));
        assert!(row.pass);
    }

    #[test]
    fn case2_anchor_values() {
        // k = l = 7, n = 24, s = 7: scaled p, q values computed by hand
        type I = i128;
        let p = |n: I, s: I, k: I, l: I| -> I {
            50 * (s * (n - s + 1) - (s - 2) * (l - s + 2)) * (n - s - k + 4)
                - (50 * (4 * (n - 2 * k - s + 8) + s * (k - 3)) + 19 * l) * (n - s + 1)
        };
        assert_eq!(p(24, 7, 7, 7), 14006);
        let q = |n: I, s: I, k: I, l: I| -> I {
            50 * (s * (n - s + 1) - 4 * (k - 4)) * (n - l - 2)
                - (50 * ((s - 2) * (n - 2 * l + s - 4) + s * (l - s + 3)) - 19 * l) * (n - s + 1)
        };
        assert_eq!(q(24, 7, 7, 7), 10494);
    }

    #[test]
    fn case3_s6_anchor_values() {
        type I = i128;
        let u = |n: I, k: I, l: I, c: I| -> I {
            1000 * (n - k - 3) * (6 * (n - 5) - 5 * (l - 5))
                - (n - 5) * (1000 * (3 * (n - 2 * k) + 6 * (k - 2)) + 619 * c)
        };
        let v = |n: I, k: I, l: I, c: I| -> I {
            1000 * (n - l - 1) * (6 * (n - 5) - 3 * (k - 3))
                - (n - 5) * (1000 * (5 * (n - 2 * l + 4) + 6 * (l - 4)) - 733 * c)
        };
        assert_eq!(u(21, 6, 6, 6), 216_576);
        assert_eq!(v(21, 6, 6, 6), 56_368);
    }

    #[test]
    fn csv_is_deterministic() {
        let a = sweep_ratio_bounds(6, 6);
        let b = sweep_ratio_bounds(6, 6);
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.summary(), b.summary());
    }

    #[test]
    fn n_min_values() {
        assert_eq!(n_min(3, 3), 11); // ceil(10.14)
        assert_eq!(n_min(5, 5), 17); // ceil(16.9)
        assert_eq!(n_min(2, 4), 14); // ceil(13.52)
        assert_eq!(n_min(50, 50), 169); // exactly 3.38*50
    }
}
