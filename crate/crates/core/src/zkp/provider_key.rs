use rand::{CryptoRng, RngCore};

use super::transcript::Transcript;
use super::{nonce_message, MAX_MSG_LEN, PROOF_VERSION};
use crate::catalog::PublicParams;
use crate::codec::{Reader, Writer};
use crate::error::{DecodeError, Rejection, Result};
use crate::group::{pair, RightElement, Scalar, TargetElement};

const SYSTEM: &str = "PiSP1";

/// Proof that the provider knows `hfrak` behind `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofSP1 {
    /// `H' = e(gfrak, hfrak')`.
    pub h_prime: TargetElement,
    pub c: Scalar,
    /// `hfrak' * hfrak^(-c)`.
    pub h_hat: RightElement,
    pub msg: Vec<u8>,
}

fn challenge(big_h: &TargetElement, h_prime: &TargetElement, msg: &[u8]) -> Scalar {
    Transcript::new()
        .target(big_h)
        .target(h_prime)
        .message(msg)
        .challenge(SYSTEM, "c")
}

pub fn prove_sp1<R: RngCore + CryptoRng>(h_frak: &RightElement, pp: &PublicParams, rng: &mut R) -> ProofSP1 {
    let h_rand = RightElement::random(rng);
    let msg = nonce_message(rng);
    let h_prime = pair(&pp.g_frak, &h_rand);
    let c = challenge(&pp.big_h, &h_prime, &msg);
    ProofSP1 {
        h_prime,
        c,
        h_hat: h_rand * h_frak.pow(&-c),
        msg,
    }
}

pub fn verify_sp1(pp: &PublicParams, proof: &ProofSP1) -> Result<(), Rejection> {
    if proof.c != challenge(&pp.big_h, &proof.h_prime, &proof.msg) {
        return Err(Rejection::Challenge("c"));
    }
    if proof.h_prime != pair(&pp.g_frak, &proof.h_hat) * pp.big_h.pow(&proof.c) {
        return Err(Rejection::Equation("H'"));
    }
    Ok(())
}

impl ProofSP1 {
    /// `version || H' || c || h_hat || u32 len || msg`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.encode_into(&mut w);
        w.finish()
    }

    pub(crate) fn encode_into(&self, w: &mut Writer) {
        w.u8(PROOF_VERSION)
            .target(&self.h_prime)
            .scalar(&self.c)
            .right(&self.h_hat)
            .bytes(&self.msg);
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = Reader::new(bytes);
        let version = r.u8("proof version")?;
        if version != PROOF_VERSION {
            return Err(DecodeError::Version {
                what: "provider proof",
                version,
            });
        }
        let proof = ProofSP1 {
            h_prime: r.target()?,
            c: r.scalar()?,
            h_hat: r.right()?,
            msg: r.bytes("nonce message", MAX_MSG_LEN)?.to_vec(),
        };
        r.finish()?;
        Ok(proof)
    }
}
