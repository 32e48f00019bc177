//! The three non-interactive proofs of the transfer protocol.
//!
//! * [`provider_key`]: the provider knows `hfrak` with `H = e(gfrak, hfrak)`.
//! * [`query`]: the user's commitments are well formed and the queried rectangle
//!   lies inside the grid.
//! * [`key_derivation`]: the provider derived every `(K, L)` pair honestly.
//!
//! Every challenge transcript starts with the public statement it speaks about
//! (the query commitments, and for key derivation the cell index), followed by
//! the commitments listed for that challenge and the prover's nonce message.
//!
//! Provers take a [`Blinding`] policy. [`Blinding::Independent`] is the default
//! and draws fresh randomness for every relation. [`Blinding::Literal`] reuses
//! nonces across relations exactly as in the original construction. It verifies
//! the same way but its transcripts leak witness values (see the `literal_blinding_leaks_*` tests),
//! so it is kept for cost comparison and analysis only.

pub mod key_derivation;
pub mod provider_key;
pub mod query;
pub(crate) mod transcript;

pub use key_derivation::{prove_sp2, prove_sp2_with, verify_sp2, CellProof, ProofSP2};
pub use provider_key::{prove_sp1, verify_sp1, ProofSP1};
pub use query::{
    build_query, build_query_with, check_query_range, prove_query, verify_query, ProofU, QueryCommitments,
    QueryWitness, UserQueryState,
};

use rand::{CryptoRng, RngCore};

/// Wire-format version written at the start of every encoded proof.
pub const PROOF_VERSION: u8 = 1;
/// Length of the nonce message honest provers attach.
pub const NONCE_MSG_LEN: usize = 32;
/// Longest nonce message accepted when decoding.
pub const MAX_MSG_LEN: usize = 1024;

/// Randomness policy for provers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Blinding {
    /// Fresh nonces per relation, randomized splits of shared commitments.
    #[default]
    Independent,
    /// Nonces shared across relations as originally published. Leaks witnesses.
    Literal,
}

pub(crate) fn nonce_message<R: RngCore + CryptoRng>(rng: &mut R) -> Vec<u8> {
    let mut msg = vec![0u8; NONCE_MSG_LEN];
    rng.fill_bytes(&mut msg);
    msg
}
