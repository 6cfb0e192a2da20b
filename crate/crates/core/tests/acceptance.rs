//! Acceptance suite: every criterion prints one PASS/FAIL line and is
//! enforced exactly (integer/rational arithmetic, no tolerances).

use num_bigint::BigInt;

use crossfam::construct::{displayed_h_probe, product_f, product_h, FamilyKind, FamilySpec};
use crossfam::genset::{
    canonical_generators, maximality_inequalities, push_transforms, slice_duality,
    verify_decomposition,
};
use crossfam::ineq::{sweep_f, sweep_product_inequality, sweep_ratio_bounds};
use crossfam::randgen::{
    random_compressed_2intersecting, random_compressed_cross2_pair, SplitMix64,
};
use crossfam::relation::{is_cross_t, CrossParams};
use crossfam::scalar::binomial;
use crossfam::search::{
    brute_force_concepts, enumerate_concepts, max_product, verify_nontrivial_bound,
    verify_product_bound, SearchConfig,
};
use crossfam::sets::{common_core, enumerate_ksubsets, GroundSize, UniformFamily};

fn report(id: u32, name: &str, violations: &[String]) {
    if violations.is_empty() {
        println!("ACCEPTANCE {id} ({name}): PASS");
    } else {
        println!("ACCEPTANCE {id} ({name}): FAIL");
        for v in violations {
            println!("  - {v}");
        }
    }
    assert!(violations.is_empty(), "criterion {id} failed: {violations:?}");
}

#[test]
fn criterion_1_star_bound_desk_scale() {
    let mut violations = Vec::new();
    for (n, k, l) in [(7u32, 2u32, 2u32), (11, 2, 3), (14, 2, 4), (11, 3, 3)] {
        match verify_product_bound(n, k, l, false, 2000) {
            Ok(v) => {
                let expect =
                    binomial(n as i64 - 2, k as i64 - 2).unwrap() * binomial(n as i64 - 2, l as i64 - 2).unwrap();
                if v.max != expect {
                    violations.push(format!("({n},{k},{l}): max {} != bound {expect}", v.max));
                }
                if !v.pass {
                    violations.push(format!(
                        "({n},{k},{l}): witnesses {} (expected {}), costar = {}",
                        v.witness_count, v.expected_witnesses, v.all_costar
                    ));
                }
            }
            Err(e) => violations.push(format!("({n},{k},{l}): {e}")),
        }
    }
    // spot value from the statement: 81 at (11,3,3)
    let v = verify_product_bound(11, 3, 3, false, 2000).unwrap();
    if v.max != BigInt::from(81) {
        violations.push(format!("(11,3,3): max {} != 81", v.max));
    }
    report(1, "star product bound at desk scale", &violations);
}

#[test]
fn criterion_2_f_ratio_sweep() {
    let rep = sweep_f(12, 20);
    let mut violations = Vec::new();
    if rep.failures != 0 {
        violations.push(format!("{} grid failures", rep.failures));
    }
    let bad_tails = rep.tails.iter().filter(|t| !t.ok).count();
    if bad_tails != 0 {
        violations.push(format!("{bad_tails} tail certificates failed"));
    }
    if rep.checked == 0 {
        violations.push("empty grid".to_string());
    }
    println!("  {}", rep.summary());
    report(2, "slice-ratio inequality sweep with tail certificates", &violations);
}

#[test]
fn criterion_3_product_inequality_sweep() {
    let rep = sweep_product_inequality(10, 10, 20);
    let mut violations = Vec::new();
    if rep.failures != 0 {
        violations.push(format!("{} grid failures", rep.failures));
    }
    let bad_tails = rep.tails.iter().filter(|t| !t.ok).count();
    if bad_tails != 0 {
        violations.push(format!("{bad_tails} tail certificates failed"));
    }
    if rep.exceptions.is_empty() {
        violations.push("exception hunt produced no report".to_string());
    }
    println!("  {}", rep.summary());
    report(3, "product inequality sweep outside the exception slices", &violations);
}

#[test]
fn criterion_4_ratio_constants() {
    let rep = sweep_ratio_bounds(60, 60);
    let mut violations = Vec::new();
    if rep.failures != 0 {
        violations.push(format!("{} grid failures", rep.failures));
    }
    let bad_tails = rep.tails.iter().filter(|t| !t.ok).count();
    if bad_tails != 0 {
        violations.push(format!("{bad_tails} tail certificates failed"));
    }
    println!("  {}", rep.summary());
    report(4, "four scaling ratio bounds", &violations);
}

#[test]
fn criterion_5_formula_vs_enumeration() {
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for n in 4u32..=13 {
        for k in 2u32..=5.min(n) {
            let mut specs: Vec<FamilySpec> = Vec::new();
            if let Ok(s) = FamilySpec::new(FamilyKind::Star { core: vec![1, 2] }, n, k) {
                specs.push(s);
            }
            let mut r = 0;
            while 2 + 2 * r <= n {
                if let Ok(s) = FamilySpec::new(FamilyKind::Frankl { t: 2, r }, n, k) {
                    specs.push(s);
                }
                r += 1;
            }
            for s in 3..=n {
                for kind in [
                    FamilyKind::A { s },
                    FamilyKind::B { s },
                    FamilyKind::H { s },
                    FamilyKind::I { s },
                ] {
                    if let Ok(spec) = FamilySpec::new(kind, n, k) {
                        specs.push(spec);
                    }
                }
            }
            for spec in specs {
                let built = spec.build().unwrap();
                if BigInt::from(built.len()) != spec.size_formula() {
                    violations.push(format!(
                        "{spec:?}: built {} != formula {}",
                        built.len(),
                        spec.size_formula()
                    ));
                }
                checked += 1;
            }
        }
    }
    // candidate pairs: cross-2-intersecting and nontrivial
    for n in 5u32..=13 {
        for k in 2u32..=5.min(n) {
            for l in 2u32..=5.min(n) {
                // (H(s) on k, I(s) on l) with both sides meaningful
                if l >= 3 && n > k {
                    for s in 3..=(k + 1).min(n) {
                        let h = FamilySpec::new(FamilyKind::H { s }, n, k).unwrap().build().unwrap();
                        let i = FamilySpec::new(FamilyKind::I { s }, n, l).unwrap().build().unwrap();
                        if h.is_empty() || i.is_empty() {
                            continue;
                        }
                        if !is_cross_t(&h, &i, 2).unwrap() {
                            violations.push(format!("(H({s}),I({s})) at (n={n},k={k},l={l}) not cross-2"));
                        }
                        if common_core(&[&h, &i]).unwrap().card() >= 2 {
                            violations.push(format!("(H({s}),I({s})) at (n={n},k={k},l={l}) trivial"));
                        }
                        checked += 1;
                    }
                }
                // (F(r), F(r)) for r >= 1; n = max(k,l) is fully degenerate
                // (the only member is [n] itself), so require room above
                let mut r = 1;
                while 2 + 2 * r <= n && 2 + r <= k.min(l) && n > k.max(l) {
                    let fk = FamilySpec::new(FamilyKind::Frankl { t: 2, r }, n, k).unwrap().build().unwrap();
                    let fl = FamilySpec::new(FamilyKind::Frankl { t: 2, r }, n, l).unwrap().build().unwrap();
                    if !fk.is_empty() && !fl.is_empty() {
                        if !is_cross_t(&fk, &fl, 2).unwrap() {
                            violations.push(format!("(F,F) r={r} at (n={n},k={k},l={l}) not cross-2"));
                        }
                        if common_core(&[&fk, &fl]).unwrap().card() >= 2 {
                            violations.push(format!("(F,F) r={r} at (n={n},k={k},l={l}) trivial"));
                        }
                        checked += 1;
                    }
                    r += 1;
                }
            }
        }
    }
    println!("  formula-vs-enumeration and pair checks: {checked} instances");
    report(5, "construction sizes and candidate pairs", &violations);
}

#[test]
fn criterion_6_generating_set_laws() {
    let mut violations = Vec::new();
    let mut rng = SplitMix64::new(0xC0FFEE);

    // 100 maximal left-compressed cross-2 pairs: round trip, D-partition,
    // slice duality, push transform size formulas
    for case in 0..100 {
        let inst = random_compressed_cross2_pair(&mut rng);
        for (side, fam) in [("A", &inst.a), ("B", &inst.b)] {
            let g = match canonical_generators(fam) {
                Ok(g) => g,
                Err(e) => {
                    violations.push(format!("case {case}: generators on {side}: {e}"));
                    continue;
                }
            };
            // antichain + exact regeneration
            for (x, e) in g.gens().iter().enumerate() {
                for (y, f) in g.gens().iter().enumerate() {
                    if x != y && e.is_subset_of(*f) {
                        violations.push(format!("case {case}: {side} generators not an antichain"));
                    }
                }
            }
            let lvl = enumerate_ksubsets(fam.n(), fam.k()).unwrap();
            let regen = UniformFamily::from_masks(
                fam.n(),
                fam.k(),
                lvl.masks()
                    .filter(|&m| g.gens().iter().any(|e| e.bits() & !m == 0)),
            )
            .unwrap();
            if &regen != fam {
                violations.push(format!("case {case}: {side} round trip failed"));
            }
            if !verify_decomposition(fam, &g) {
                violations.push(format!("case {case}: {side} D-partition failed"));
            }
        }
        if inst.a.is_empty() || inst.b.is_empty() {
            continue;
        }
        let dual = match slice_duality(&inst.a, &inst.b, 2) {
            Ok(d) => d,
            Err(e) => {
                violations.push(format!("case {case}: slice duality: {e}"));
                continue;
            }
        };
        if !dual.ok {
            violations.push(format!(
                "case {case}: slice duality failed: {:?}",
                dual.per_slice
            ));
        }
        // push transforms at every populated slice index: the closed-form
        // sizes and the cross property are checked inside
        for (i, a_ne, _, _) in &dual.per_slice {
            if *a_ne {
                if let Err(e) = push_transforms(&inst.a, &inst.b, *i, 2) {
                    violations.push(format!("case {case}: push transform at i={i}: {e}"));
                }
            }
        }
    }

    // 100 left-compressed 2-intersecting families: generator antichain is
    // 2-intersecting, D-partition holds
    for case in 0..100 {
        let fam = random_compressed_2intersecting(&mut rng);
        let g = canonical_generators(&fam).unwrap();
        for e in g.gens() {
            for f in g.gens() {
                if e.inter(*f).card() < 2 {
                    violations.push(format!(
                        "single case {case}: generators {e} and {f} meet in < 2"
                    ));
                }
            }
        }
        if !verify_decomposition(&fam, &g) {
            violations.push(format!("single case {case}: D-partition failed"));
        }
    }
    report(6, "generating-set laws on 200 randomized instances", &violations);
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut violations = Vec::new();
    let mut instances = 0u64;
    for n in 2u32..=20 {
        let ks: Vec<u32> = (1..=n)
            .filter(|&k| binomial(n as i64, k as i64).unwrap() <= BigInt::from(20))
            .collect();
        for &k in &ks {
            for &l in &ks {
                for t in 1..=k.min(l) {
                    let params = CrossParams::new(GroundSize::new(n).unwrap(), k, l, t).unwrap();
                    let brute = brute_force_concepts(&params, 2000).unwrap();
                    let mut seen = Vec::new();
                    enumerate_concepts(&params, 2000, |c| {
                        seen.push((
                            c.a().masks().collect::<Vec<_>>(),
                            c.b().masks().collect::<Vec<_>>(),
                        ));
                    })
                    .unwrap();
                    let emitted = seen.len();
                    let mut sorted = seen;
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != emitted {
                        violations.push(format!("({n},{k},{l},{t}): duplicate concepts emitted"));
                    }
                    if sorted != brute {
                        violations.push(format!("({n},{k},{l},{t}): concept sets differ"));
                    }
                    // pruning neutrality and reduction soundness against the
                    // enumerated maximum
                    let mut best = BigInt::from(0);
                    for (am, bm) in &sorted {
                        if !am.is_empty() && !bm.is_empty() {
                            let p = BigInt::from(am.len()) * BigInt::from(bm.len());
                            if p > best {
                                best = p;
                            }
                        }
                    }
                    let r = max_product(&SearchConfig::new(params)).unwrap();
                    if r.max_product != best {
                        violations.push(format!(
                            "({n},{k},{l},{t}): pruned max {} != enumerated {best}",
                            r.max_product
                        ));
                    }
                    let mut cfg = SearchConfig::new(params);
                    cfg.use_compression_reduction = true;
                    let r2 = max_product(&cfg).unwrap();
                    if r2.max_product != best {
                        violations.push(format!(
                            "({n},{k},{l},{t}): reduced max {} != enumerated {best}",
                            r2.max_product
                        ));
                    }
                    instances += 1;
                }
            }
        }
    }
    println!("  oracle equivalence over {instances} instances");
    report(7, "concept enumeration against brute-force closures", &violations);
}

#[test]
fn criterion_8_nontrivial_bound_cross_check() {
    let mut violations = Vec::new();
    for (n, k, l) in [(12u32, 3u32, 3u32), (14, 3, 4)] {
        match verify_nontrivial_bound(n, k, l, false, 2000) {
            Ok(v) => {
                if !v.max_equals_candidates {
                    violations.push(format!(
                        "({n},{k},{l}): search max {} != best candidate {}",
                        v.max, v.best_candidate
                    ));
                }
                if !v.all_witnesses_shaped {
                    let unshaped = v.witness_shapes.iter().filter(|s| s.is_none()).count();
                    violations.push(format!("({n},{k},{l}): {unshaped} witnesses match no shape"));
                }
                println!(
                    "  ({n},{k},{l}): max {} over {} witnesses; candidates {:?}",
                    v.max,
                    v.result.witnesses.len(),
                    v.candidates
                        .iter()
                        .map(|(s, v)| format!("{s}={v}"))
                        .collect::<Vec<_>>()
                );
            }
            Err(e) => violations.push(format!("({n},{k},{l}): {e}")),
        }
    }
    // the displayed-formula diagnostic must flag the unbound symbol and
    // report candidate matches rather than silently picking one
    for (n, k, l, s) in [(12u32, 3u32, 3u32, 3u32), (14, 3, 4, 3), (14, 3, 4, 4)] {
        let probe = displayed_h_probe(n, k, l, s).unwrap();
        if probe.note.is_empty() {
            violations.push("h-formula diagnostic carries no inconsistency note".to_string());
        }
        if !probe.candidates.iter().any(|c| c.matches) {
            violations.push(format!(
                "h-formula diagnostic at (n={n},k={k},l={l},s={s}): no candidate matches"
            ));
        }
        if probe.exact != product_h(n, k, l, s).unwrap() {
            violations.push("h-formula diagnostic disagrees with product_h".to_string());
        }
    }
    // sanity anchor: the candidate products at (12,3,3)
    assert_eq!(product_h(12, 3, 3, 3).unwrap(), BigInt::from(28));
    assert_eq!(product_f(12, 3, 3, 1).unwrap(), BigInt::from(16));
    report(8, "nontrivial bound against candidate products", &violations);
}

#[test]
fn maximality_inequalities_at_search_certified_maxima() {
    // the push inequalities hold at pairs of globally maximum product; take
    // the search-certified maxima, compress, re-close, and check every
    // populated slice index
    use crossfam::compress::compress_pair;
    use crossfam::relation::{alpha, beta};
    let mut checked = 0;
    for (n, k, l) in [(9u32, 3u32, 3u32), (11, 3, 3), (10, 2, 3)] {
        let params = CrossParams::new(GroundSize::new(n).unwrap(), k, l, 2).unwrap();
        let r = max_product(&SearchConfig::new(params)).unwrap();
        let w = &r.witnesses[0];
        let (ca, _) = compress_pair(w.a(), w.b()).unwrap();
        let b = beta(&ca, l, 2).unwrap();
        let a = alpha(&b, k, 2).unwrap();
        assert_eq!(
            BigInt::from(a.len()) * BigInt::from(b.len()),
            r.max_product,
            "compress + close preserves the maximum product"
        );
        let dual = slice_duality(&a, &b, 2).unwrap();
        for (i, a_ne, b_ne, _) in &dual.per_slice {
            if *a_ne && *b_ne {
                let m = maximality_inequalities(&a, &b, *i, 2).unwrap();
                assert!(
                    m.push_up_ok && m.push_down_ok && m.combined_ok,
                    "maximality inequalities failed at (n={n},k={k},l={l}), i={i}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}
