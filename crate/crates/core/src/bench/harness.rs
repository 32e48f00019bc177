//! Runs the protocol in-process with every phase traced.

use rand::{CryptoRng, RngCore};

use super::{trace, OpCounts, Region};
use crate::catalog::{self, EncryptedCatalog, PublicParams, SecretKey};
use crate::codec::{ElementTally, Writer};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::group::ParameterSet;
use crate::transfer::{derive_keys, ideal_functionality, unmask_cells};
use crate::zkp::{
    build_query_with, prove_sp1, prove_sp2_with, verify_query, verify_sp1, verify_sp2, Blinding, QueryWitness,
};

/// Encoded size of one protocol message or artifact.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Traffic {
    pub elements: ElementTally,
    pub bytes: u64,
}

impl Traffic {
    fn of(w: &Writer) -> Self {
        Traffic {
            elements: w.tally(),
            bytes: w.byte_len() as u64,
        }
    }
}

/// Counts for one traced transfer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferCounts {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub k: usize,
    pub blinding: Blinding,
    /// Checking the provider proof, committing and proving the query.
    pub user_query: OpCounts,
    /// Provider proof, query verification, key derivation and key proof.
    pub provider: OpCounts,
    /// Key-proof verification and unmasking.
    pub user_retrieve: OpCounts,
    /// The unmasking part of `user_retrieve` alone.
    pub unmask: OpCounts,
    /// Query commitments and proof.
    pub user_to_provider: Traffic,
    /// Provider proof, key bundle and key proof.
    pub provider_to_user: Traffic,
}

/// A traced setup plus the material to trace transfers against it.
pub struct Bench {
    services: Grid<Vec<u8>>,
    sk: SecretKey,
    pp: PublicParams,
    cat: EncryptedCatalog,
    pub setup: OpCounts,
    /// Public parameters plus the `(A, B)` grid, without payload bodies.
    pub setup_traffic: Traffic,
}

impl Bench {
    /// Traced setup over an `m x n` grid of short synthetic services.
    pub fn new<R: RngCore + CryptoRng>(params: ParameterSet, m: usize, n: usize, rng: &mut R) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::argument("grid dimensions must be positive"));
        }
        let services = Grid::from_fn(m, n, |i, j| format!("service ({i}, {j})").into_bytes());
        Self::with_services(params, services, rng)
    }

    pub fn with_services<R: RngCore + CryptoRng>(
        params: ParameterSet,
        services: Grid<Vec<u8>>,
        rng: &mut R,
    ) -> Result<Self> {
        let (out, setup) = trace(Region::Setup, || catalog::setup(params, &services, rng))?;
        let (sk, pp, cat) = out?;
        let mut w = Writer::new();
        pp.encode_into(&mut w);
        for ((i, j), a) in cat.a.iter() {
            w.left(a).target(cat.b.at(i, j));
        }
        let setup_traffic = Traffic::of(&w);
        Ok(Bench {
            services,
            sk,
            pp,
            cat,
            setup,
            setup_traffic,
        })
    }

    pub fn public_params(&self) -> &PublicParams {
        &self.pp
    }

    /// Runs one traced transfer for the rectangle `(i, j, l, k)` and checks the
    /// recovered payloads against the ideal functionality.
    pub fn transfer<R: RngCore + CryptoRng>(
        &self,
        (i, j, l, k): (usize, usize, usize, usize),
        blinding: Blinding,
        rng: &mut R,
    ) -> Result<TransferCounts> {
        let pp = &self.pp;
        let witness = QueryWitness::honest(pp, i, j, l, k)?;

        let (sp1, provider_open) = trace(Region::Provider, || prove_sp1(&self.sk.h_frak, pp, rng))?;

        let (out, user_query) = trace(Region::UserQuery, || {
            verify_sp1(pp, &sp1)?;
            Ok::<_, Error>(build_query_with(pp, witness, blinding, rng))
        })?;
        let (state, omega, proof) = out?;

        let (out, provider_answer) = trace(Region::Provider, || {
            verify_query(pp, &omega, &proof)?;
            let keys = derive_keys(&self.sk, pp, &omega)?;
            let key_proof = prove_sp2_with(&self.sk, pp, &omega, &keys, blinding, rng);
            Ok::<_, Error>((keys, key_proof))
        })?;
        let (keys, key_proof) = out?;

        let (verified, verify) = trace(Region::UserRetrieve, || verify_sp2(pp, &omega, &keys, &key_proof))?;
        verified?;
        let (recovered, unmask) = trace(Region::UserRetrieve, || unmask_cells(&state, pp, &keys, &self.cat))?;
        let recovered = recovered?;
        if Some(&recovered) != ideal_functionality(&self.services, i, j, l, k, true).as_ref() {
            return Err(Error::Usage("traced transfer recovered the wrong payloads"));
        }

        let mut up = Writer::new();
        omega.encode_into(&mut up);
        proof.encode_into(&mut up);
        let mut down = Writer::new();
        sp1.encode_into(&mut down);
        keys.encode_into(&mut down);
        key_proof.encode_into(&mut down);
        let (user_to_provider, provider_to_user) = (Traffic::of(&up), Traffic::of(&down));

        let mut user_query = user_query;
        user_query.bytes_sent_user = user_to_provider.bytes;
        let mut provider = provider_open + provider_answer;
        provider.bytes_sent_provider = provider_to_user.bytes;

        Ok(TransferCounts {
            i,
            j,
            l,
            k,
            blinding,
            user_query,
            provider,
            user_retrieve: verify + unmask,
            unmask,
            user_to_provider,
            provider_to_user,
        })
    }
}
