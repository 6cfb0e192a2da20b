//! crossfam: exact verification toolkit for cross-t-intersecting families.
//!
//! Exit codes: 0 success/PASS, 1 verification FAIL (with machine-readable
//! counterexample data), 2 usage or domain errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crossfam::compress::compress_pair;
use crossfam::construct::{displayed_h_probe, FamilyKind, FamilySpec};
use crossfam::genset::{canonical_generators, slice};
use crossfam::ineq::{
    sweep_case_polynomials, sweep_f, sweep_product_inequality, sweep_ratio_bounds, SweepReport,
};
use crossfam::relation::{is_cross_t, CrossParams};
use crossfam::search::{
    max_product, verify_nontrivial_bound, verify_product_bound, SearchConfig, SearchResult,
    DEFAULT_LEVEL_LIMIT,
};
use crossfam::sets::{GroundSize, UniformFamily};
use crossfam::Error;

#[derive(Parser)]
#[command(
    name = "crossfam",
    version,
    about = "Exact search and verification for products of cross-t-intersecting set families"
)]
struct Cli {
    /// Worker threads for parallel sections (0 = library default).
    /// All outputs are identical for every value.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Star,
    Frankl,
    A,
    B,
    H,
    I,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact maximum of |A|*|B| over cross-t-intersecting pairs.
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Restrict to nontrivial pairs (no 2 elements common to all members).
        #[arg(long)]
        nontrivial: bool,
        /// Explore only the lectic-first subtree (exact maximum, fewer witnesses).
        #[arg(long)]
        compress_reduce: bool,
        /// Pruning floor for the product (decimal integer).
        #[arg(long, default_value = "0")]
        floor: String,
        /// Scale guard: refuse level sets larger than this.
        #[arg(long, default_value_t = DEFAULT_LEVEL_LIMIT)]
        limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a product bound: --theorem 1.4 (star bound) or 5.1 (nontrivial).
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        /// Run below the n >= ceil(3.38 max(k,l)) threshold anyway.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = DEFAULT_LEVEL_LIMIT)]
        limit: usize,
        /// Write the verdict (or counterexamples) as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simultaneously compress a pair of family files to a left-compressed pair.
    Compress {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long)]
        out_a: PathBuf,
        #[arg(long)]
        out_b: PathBuf,
    },
    /// Print the canonical generator antichain, s+, and the slice table.
    Genset {
        #[arg(long)]
        family: PathBuf,
    },
    /// Build a named family; print its size and the closed-form size.
    Construct {
        #[arg(long, value_enum, ignore_case = true)]
        kind: Kind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Prefix parameter for a/b/h/i kinds.
        #[arg(long)]
        s: Option<u32>,
        /// Frankl parameter r.
        #[arg(long)]
        r: Option<u32>,
        /// Frankl intersection parameter t.
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Star core, e.g. "1,2".
        #[arg(long, default_value = "1,2")]
        core: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the slice-ratio inequality with tail certificates.
    #[command(name = "sweep-f")]
    SweepF {
        #[arg(long, default_value_t = 12)]
        kmax: i64,
        #[arg(long, default_value_t = 20)]
        nwindow: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the product inequality (T > 1) with exception hunt and tails.
    #[command(name = "sweep-T")]
    SweepT {
        #[arg(long, default_value_t = 10)]
        kmax: i64,
        #[arg(long, default_value_t = 10)]
        lmax: i64,
        #[arg(long, default_value_t = 20)]
        nwindow: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the four scaling ratio bounds exactly.
    #[command(name = "sweep-ratios")]
    SweepRatios {
        #[arg(long, default_value_t = 60)]
        kmax: i64,
        #[arg(long)]
        lmax: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the proof's case polynomials at integer grid points.
    #[command(name = "sweep-polys")]
    SweepPolys {
        #[arg(long, default_value_t = 10)]
        kmax: i64,
        #[arg(long, default_value_t = 10)]
        lmax: i64,
        #[arg(long, default_value_t = 20)]
        nwindow: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn family_json(f: &UniformFamily) -> Value {
    json!({
        "n": f.n().get(),
        "k": f.k(),
        "sets": f.iter().map(|s| s.elements().collect::<Vec<u32>>()).collect::<Vec<_>>(),
    })
}

fn result_json(r: &SearchResult, wall_ms: u128) -> Value {
    json!({
        "max_product": r.max_product.to_string(),
        "witnesses": r
            .witnesses
            .iter()
            .map(|w| json!([family_json(w.a()), family_json(w.b())]))
            .collect::<Vec<_>>(),
        "explored": r.explored,
        "pruned": r.pruned,
        "wall_time_ms": wall_ms as u64,
    })
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn read_family(path: &PathBuf) -> Result<UniformFamily, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    UniformFamily::parse(&text)
}

fn finish_sweep(rep: &SweepReport, out: Option<PathBuf>) -> Result<ExitCode, Error> {
    println!("{}", rep.summary());
    let violated: Vec<_> = rep.exceptions.iter().filter(|e| !e.holds).collect();
    if !violated.is_empty() {
        println!("excluded slice points violating the inequality (reported, not asserted):");
        for e in violated {
            println!(
                "  n={} k={} l={} s={} i={} margin={}/{}",
                e.n, e.k, e.l, e.s, e.i, e.num, e.den
            );
        }
    }
    if let Some(path) = out {
        fs::write(&path, rep.to_csv())
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
        println!("csv written to {}", path.display());
    }
    if rep.pass() {
        println!("PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        // machine-readable counterexamples on stdout when not already filed
        let failing: String = rep
            .to_csv()
            .lines()
            .enumerate()
            .filter(|(i, line)| *i == 0 || line.ends_with(",0"))
            .map(|(_, line)| format!("{line}\n"))
            .collect();
        println!("FAIL");
        print!("{failing}");
        Ok(ExitCode::from(1))
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Search {
            n,
            k,
            l,
            t,
            nontrivial,
            compress_reduce,
            floor,
            limit,
            out,
        } => {
            let params = CrossParams::new(GroundSize::new(n)?, k, l, t)?;
            let mut cfg = SearchConfig::new(params);
            cfg.nontrivial_only = nontrivial;
            cfg.use_compression_reduction = compress_reduce;
            cfg.product_floor = floor
                .parse::<BigInt>()
                .map_err(|_| Error::Domain(format!("bad --floor value {floor:?}")))?;
            cfg.level_limit = limit;
            let start = Instant::now();
            let result = max_product(&cfg)?;
            let doc = result_json(&result, start.elapsed().as_millis());
            write_or_print(&out, &serde_json::to_string_pretty(&doc).unwrap())?;
            if out.is_some() {
                println!(
                    "max product {} with {} witnesses ({} explored, {} pruned)",
                    result.max_product,
                    result.witnesses.len(),
                    result.explored,
                    result.pruned
                );
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Verify {
            theorem,
            n,
            k,
            l,
            force,
            limit,
            out,
        } => match theorem.as_str() {
            "1.4" => {
                let v = verify_product_bound(n, k, l, force, limit)?;
                println!(
                    "product bound (n={n}, k={k}, l={l}): max = {}, bound = {} [{}]",
                    v.max,
                    v.bound,
                    if v.bound_attained { "attained" } else { "NOT attained" }
                );
                println!(
                    "witnesses: {} (expected {}), co-star pairs over a common 2-set: {}",
                    v.witness_count,
                    v.expected_witnesses,
                    if v.all_costar { "all" } else { "NOT all" }
                );
                let doc = json!({
                    "theorem": "1.4",
                    "n": n, "k": k, "l": l,
                    "bound": v.bound.to_string(),
                    "max": v.max.to_string(),
                    "bound_attained": v.bound_attained,
                    "witness_count": v.witness_count,
                    "expected_witnesses": v.expected_witnesses.to_string(),
                    "all_costar": v.all_costar,
                    "pass": v.pass,
                    "witnesses": v.result.witnesses.iter()
                        .map(|w| json!([family_json(w.a()), family_json(w.b())]))
                        .collect::<Vec<_>>(),
                });
                if let Some(path) = out {
                    fs::write(&path, serde_json::to_string_pretty(&doc).unwrap())
                        .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
                }
                if v.pass {
                    println!("PASS");
                    Ok(ExitCode::SUCCESS)
                } else {
                    println!("FAIL");
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    Ok(ExitCode::from(1))
                }
            }
            "5.1" => {
                let v = verify_nontrivial_bound(n, k, l, force, limit)?;
                println!(
                    "nontrivial bound (n={n}, k={k}, l={l}): max = {} [{}]",
                    v.max,
                    if v.max_equals_candidates {
                        "equals best candidate"
                    } else {
                        "DIFFERS from candidates"
                    }
                );
                for (label, value) in &v.candidates {
                    println!("  candidate {label} = {value}");
                }
                println!(
                    "witnesses: {}, matching candidate shapes: {}",
                    v.result.witnesses.len(),
                    if v.all_witnesses_shaped { "all" } else { "NOT all" }
                );
                let probe = displayed_h_probe(n, k, l, 3)?;
                println!("h-formula diagnostic (s=3): {}", probe.note);
                for c in &probe.candidates {
                    println!(
                        "  displayed RHS with t = {}: {} [{}]",
                        c.t,
                        c.value,
                        if c.matches { "matches" } else { "differs" }
                    );
                }
                let doc = json!({
                    "theorem": "5.1",
                    "n": n, "k": k, "l": l,
                    "max": v.max.to_string(),
                    "candidates": v.candidates.iter()
                        .map(|(s, v)| json!({"label": s, "value": v.to_string()}))
                        .collect::<Vec<_>>(),
                    "max_equals_candidates": v.max_equals_candidates,
                    "witness_count": v.result.witnesses.len(),
                    "all_witnesses_shaped": v.all_witnesses_shaped,
                    "h_formula_note": probe.note,
                    "pass": v.pass,
                });
                if let Some(path) = out {
                    fs::write(&path, serde_json::to_string_pretty(&doc).unwrap())
                        .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
                }
                if v.pass {
                    println!("PASS");
                    Ok(ExitCode::SUCCESS)
                } else {
                    println!("FAIL");
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    Ok(ExitCode::from(1))
                }
            }
            other => Err(Error::Domain(format!(
                "unknown theorem id {other:?}; use 1.4 or 5.1"
            ))),
        },

        Cmd::Compress {
            a,
            b,
            t,
            out_a,
            out_b,
        } => {
            let fa = read_family(&a)?;
            let fb = read_family(&b)?;
            if !is_cross_t(&fa, &fb, t)? {
                return Err(Error::Domain(format!(
                    "input families are not cross-{t}-intersecting"
                )));
            }
            let (ca, cb) = compress_pair(&fa, &fb)?;
            fs::write(&out_a, ca.render())
                .map_err(|e| Error::Domain(format!("cannot write {}: {e}", out_a.display())))?;
            fs::write(&out_b, cb.render())
                .map_err(|e| Error::Domain(format!("cannot write {}: {e}", out_b.display())))?;
            println!(
                "compressed: |A| = {} -> {}, |B| = {} -> {} (sizes preserved)",
                fa.len(),
                ca.len(),
                fb.len(),
                cb.len()
            );
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Genset { family } => {
            let f = read_family(&family)?;
            let g = canonical_generators(&f)?;
            println!("family: n={} k={} with {} members", f.n(), f.k(), f.len());
            println!("generators ({}):", g.gens().len());
            for e in g.gens() {
                println!("  {e}");
            }
            let view = slice(&g)?;
            println!("s+ = {}", view.s_plus);
            println!("slices containing s+:");
            for (size, gens) in &view.slices {
                let rendered: Vec<String> = gens.iter().map(|e| e.to_string()).collect();
                println!("  g*_{size}: {}", rendered.join("  "));
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Construct {
            kind,
            n,
            k,
            s,
            r,
            t,
            core,
            out,
        } => {
            let need_s =
                || s.ok_or_else(|| Error::Domain("this kind needs --s".to_string()));
            let kind = match kind {
                Kind::Star => {
                    let elems: Vec<u32> = core
                        .split(',')
                        .map(|x| x.trim().parse::<u32>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| Error::Domain(format!("bad --core value {core:?}")))?;
                    FamilyKind::Star { core: elems }
                }
                Kind::Frankl => FamilyKind::Frankl {
                    t,
                    r: r.ok_or_else(|| Error::Domain("frankl needs --r".to_string()))?,
                },
                Kind::A => FamilyKind::A { s: need_s()? },
                Kind::B => FamilyKind::B { s: need_s()? },
                Kind::H => FamilyKind::H { s: need_s()? },
                Kind::I => FamilyKind::I { s: need_s()? },
            };
            let spec = FamilySpec::new(kind, n, k)?;
            let fam = spec.build()?;
            let formula = spec.size_formula();
            let agree = BigInt::from(fam.len()) == formula;
            println!(
                "size = {}, formula = {}, agreement = {}",
                fam.len(),
                formula,
                if agree { "yes" } else { "NO" }
            );
            if let Some(path) = out {
                fs::write(&path, fam.render())
                    .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
                println!("family written to {}", path.display());
            }
            if agree {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }

        Cmd::SweepF { kmax, nwindow, out } => finish_sweep(&sweep_f(kmax, nwindow), out),
        Cmd::SweepT {
            kmax,
            lmax,
            nwindow,
            out,
        } => finish_sweep(&sweep_product_inequality(kmax, lmax, nwindow), out),
        Cmd::SweepRatios { kmax, lmax, out } => {
            finish_sweep(&sweep_ratio_bounds(kmax, lmax.unwrap_or(kmax)), out)
        }
        Cmd::SweepPolys {
            kmax,
            lmax,
            nwindow,
            out,
        } => finish_sweep(&sweep_case_polynomials(kmax, lmax, nwindow), out),
    }
}
