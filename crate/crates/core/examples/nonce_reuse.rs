//! Why provers draw independent randomness.
//!
//! With nonces shared across relations as originally published, two
//! responses of one query proof give away the start column, and two cells of
//! one key proof give away the provider's `x`. The default policy leaks
//! neither.
//!
//! ```text
//! cargo run --example nonce_reuse
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use olbsq::catalog::setup;
use olbsq::grid::Grid;
use olbsq::group::{ParameterSet, Scalar};
use olbsq::transfer::derive_keys;
use olbsq::zkp::{build_query_with, prove_sp2_with, Blinding, QueryWitness};

fn main() -> olbsq::error::Result<()> {
    let mut rng = ChaCha20Rng::from_entropy();
    let services = Grid::from_fn(6, 6, |_, _| Vec::new());
    let (sk, pp, _) = setup(ParameterSet::default(), &services, &mut rng)?;
    let secret_column = 4;

    for blinding in [Blinding::Literal, Blinding::Independent] {
        let witness = QueryWitness::honest(&pp, secret_column, 2, 1, 2)?;
        let (_, query, proof) = build_query_with(&pp, witness, blinding, &mut rng);
        // A shared nonce gives z2 - z6 = (c3 - c1) * i.
        let guess = (proof.z[1] - proof.z[5]) * (proof.c[2] - proof.c[0]).invert().expect("distinct challenges");
        let column = (1..=pp.m).find(|&i| Scalar::from(i as u64) == guess);

        let keys = derive_keys(&sk, &pp, &query)?;
        let key_proof = prove_sp2_with(&sk, &pp, &query, &keys, blinding, &mut rng);
        let (a, b) = (key_proof.cells.at(1, 1), key_proof.cells.at(1, 2));
        let x_guess = (a.z1 - b.z1) * (b.c1 - a.c1).invert().expect("distinct challenges");

        println!("{blinding:?}:");
        println!("  start column recovered from the query proof: {column:?}");
        println!("  provider x recovered from the key proof:     {}", x_guess == sk.x);
    }
    Ok(())
}
