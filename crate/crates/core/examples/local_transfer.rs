//! One complete transfer in a single process.
//!
//! The provider encrypts a 5x4 grid of services, the user asks for the 2x2
//! rectangle starting after cell (2, 1) and gets exactly those four services.
//!
//! ```text
//! cargo run --example local_transfer
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use olbsq::catalog::setup;
use olbsq::grid::Grid;
use olbsq::group::ParameterSet;
use olbsq::transfer::{ProviderSession, UserSession};

fn main() -> olbsq::error::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let services = Grid::from_fn(5, 4, |col, row| format!("cafe at column {col}, row {row}").into_bytes());
    let (sk, pp, catalog) = setup(ParameterSet::default(), &services, &mut rng)?;

    let mut provider = ProviderSession::new(&sk, &pp, 64);
    let mut user = UserSession::new(&pp);

    let provider_proof = provider.open(&mut rng)?;
    user.accept_provider_proof(&provider_proof)?;

    let (query, query_proof) = user.make_query(2, 1, 2, 2, &mut rng)?;
    // All the provider learns: the rectangle is 2x2.
    println!("provider sees a {}x{} query", query.l, query.k);

    let (keys, key_proof) = provider.answer(&query, &query_proof, &mut rng)?;
    user.accept_keys(keys, &key_proof)?;

    for (cell, bytes) in user.recover(&catalog)?.iter() {
        println!("{cell}: {}", String::from_utf8_lossy(bytes));
    }
    Ok(())
}
