//! A provider that cheats is caught.
//!
//! Swapping one derived key, or answering with keys for a different query,
//! makes the key proof fail and the user recovers nothing.
//!
//! ```text
//! cargo run --example tampered_keys
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use olbsq::catalog::setup;
use olbsq::grid::Grid;
use olbsq::group::{LeftElement, ParameterSet};
use olbsq::transfer::{derive_keys, recover_services};
use olbsq::zkp::{build_query, prove_sp2, verify_query};

fn main() -> olbsq::error::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let services = Grid::from_fn(4, 4, |col, row| vec![col as u8, row as u8]);
    let (sk, pp, catalog) = setup(ParameterSet::default(), &services, &mut rng)?;

    let (state, query, query_proof) = build_query(&pp, 1, 1, 2, 2, &mut rng)?;
    verify_query(&pp, &query, &query_proof)?;
    let keys = derive_keys(&sk, &pp, &query)?;
    let proof = prove_sp2(&sk, &pp, &query, &keys, &mut rng);
    let honest = recover_services(&state, &pp, &keys, &proof, &catalog)?;
    println!("honest answer: {} cells recovered", honest.len());

    // The provider replaces one key after proving.
    let mut swapped = keys.clone();
    *swapped.k_keys.get_mut(2, 1).expect("cell") = LeftElement::random(&mut rng);
    match recover_services(&state, &pp, &swapped, &proof, &catalog) {
        Ok(_) => println!("swapped key accepted (unexpected)"),
        Err(e) => println!("swapped key: {e}"),
    }

    // Keys and proof for someone else's query.
    let (_, other, _) = build_query(&pp, 2, 2, 2, 2, &mut rng)?;
    let other_keys = derive_keys(&sk, &pp, &other)?;
    let other_proof = prove_sp2(&sk, &pp, &other, &other_keys, &mut rng);
    match recover_services(&state, &pp, &other_keys, &other_proof, &catalog) {
        Ok(_) => println!("foreign keys accepted (unexpected)"),
        Err(e) => println!("foreign keys: {e}"),
    }
    Ok(())
}
