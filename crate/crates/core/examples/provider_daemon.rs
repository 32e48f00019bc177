//! A provider daemon on a local port serving a few users at once.
//!
//! ```text
//! cargo run --example provider_daemon
//! ```

use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use olbsq::catalog::setup;
use olbsq::client::run_query;
use olbsq::grid::Grid;
use olbsq::group::ParameterSet;
use olbsq::server::{ProviderState, Server};

fn main() -> olbsq::error::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let services = Grid::from_fn(4, 4, |col, row| format!("pharmacy {col}-{row}").into_bytes());
    let (sk, pp, catalog) = setup(ParameterSet::default(), &services, &mut rng)?;

    let server = Server::bind("127.0.0.1:0", ProviderState::new(sk, pp.clone(), 16)?)?;
    let addr = server.local_addr()?;
    let stop = server.shutdown_handle()?;
    let stats = server.stats();
    let daemon = thread::spawn(move || server.run());
    println!("provider listening on {addr}");

    thread::scope(|s| {
        for (n, (i, j, l, k)) in [(1, 1, 2, 2), (2, 3, 1, 1), (1, 2, 3, 2)].into_iter().enumerate() {
            let (pp, catalog) = (&pp, &catalog);
            s.spawn(move || {
                let mut rng = ChaCha20Rng::from_entropy();
                match run_query(addr, pp, catalog, i, j, l, k, &mut rng) {
                    Ok(got) => println!("user {n}: {} cells starting after {:?}", got.len(), got.origin()),
                    Err(e) => println!("user {n}: {e}"),
                }
            });
        }
    });

    stop.shutdown();
    daemon.join().expect("daemon thread")?;
    println!("{:?}", stats.snapshot());
    Ok(())
}
