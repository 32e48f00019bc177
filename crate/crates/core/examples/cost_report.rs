//! Operation counts and message sizes next to the published cost tables.
//!
//! ```text
//! cargo run --release --example cost_report -- 6 6 2 3
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use olbsq::bench::run_report;
use olbsq::group::ParameterSet;

fn main() -> olbsq::error::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let point = match args[..] {
        [m, n, l, k] => (m, n, l, k),
        _ => (6, 6, 2, 3),
    };
    let report = run_report(ParameterSet::default(), point, &mut ChaCha20Rng::seed_from_u64(1))?;
    print!("{report}");
    Ok(())
}
