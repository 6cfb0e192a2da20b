//! Timing probe for the maximum-product search on the demonstration
//! instances. Run with `cargo run --release --example bench_search`.

use std::time::Instant;

use crossfam::relation::CrossParams;
use crossfam::search::{max_product, SearchConfig};
use crossfam::sets::GroundSize;

fn main() {
    let instances = [
        (11u32, 3u32, 3u32, false),
        (14, 2, 4, false),
        (12, 3, 3, true),
        (14, 3, 4, true),
    ];
    for (n, k, l, nontrivial) in instances {
        let start = Instant::now();
        let params = CrossParams::new(GroundSize::new(n).unwrap(), k, l, 2).unwrap();
        let mut cfg = SearchConfig::new(params);
        cfg.nontrivial_only = nontrivial;
        let r = max_product(&cfg).unwrap();
        println!(
            "(n={n} k={k} l={l} nontrivial={nontrivial}): max={} witnesses={} explored={} pruned={} in {:?}",
            r.max_product,
            r.witnesses.len(),
            r.explored,
            r.pruned,
            start.elapsed()
        );
    }
}
