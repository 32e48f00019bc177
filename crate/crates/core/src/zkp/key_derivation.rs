//! Proof that every `(K, L)` in a key bundle was derived with the provider's
//! `x^mu`, `y^nu` and `hfrak`.
//!
//! For each cell `(mu, nu)` the provider shows knowledge of `x^mu, y^nu` with
//! `K / (E1 g1^mu E2 h1^nu) = F1^(x^mu) J1^(y^nu)`, ties `x^mu` to the published
//! signature `C_{mu,2}` (and `y^nu` to `D_{nu,2}`), and shows `L = e(K, hfrak)`
//! for the same `hfrak` behind `H`.

use rand::{CryptoRng, RngCore};

use super::transcript::Transcript;
use super::{nonce_message, Blinding, QueryCommitments, MAX_MSG_LEN, PROOF_VERSION};
use crate::catalog::{powers, running_powers, PublicParams, SecretKey};
use crate::codec::{Reader, Writer};
use crate::error::{DecodeError, Rejection};
use crate::grid::Grid;
use crate::group::{pair, LeftElement, RightElement, Scalar, TargetElement};
use crate::transfer::KeyBundle;

const SYSTEM: &str = "PiSP2";
/// Largest `l * k` accepted when decoding.
pub const MAX_PROOF_CELLS: usize = 1 << 16;

/// Per-cell part of [`ProofSP2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellProof {
    /// `F1^omega J1^psi`.
    pub upsilon1: LeftElement,
    /// `e(C_{mu,2}, g2)^(-omega)`.
    pub upsilon2: TargetElement,
    /// `e(D_{nu,2}, h2)^(-psi)`.
    pub upsilon3: TargetElement,
    pub c1: Scalar,
    pub c2: Scalar,
    pub z1: Scalar,
    pub z2: Scalar,
    /// `htilde * hfrak^(-c2)`.
    pub h_mu_nu: RightElement,
    /// `e(K, htilde)`.
    pub l_prime: TargetElement,
    /// `e(gfrak, htilde)`.
    pub h_tilde: TargetElement,
}

/// `cells` is `l x k`, cell `(mu, nu)` at grid position `(mu, nu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofSP2 {
    pub cells: Grid<CellProof>,
    pub msg: Vec<u8>,
}

#[allow(clippy::too_many_arguments)]
fn challenge_c1(
    statement: &[u8],
    mu: usize,
    nu: usize,
    k_cell: &LeftElement,
    u1: &LeftElement,
    u2: &TargetElement,
    u3: &TargetElement,
    msg: &[u8],
) -> Scalar {
    Transcript::new()
        .statement(statement)
        .index(mu)
        .index(nu)
        .left(k_cell)
        .left(u1)
        .target(u2)
        .target(u3)
        .message(msg)
        .challenge(SYSTEM, "c1")
}

#[allow(clippy::too_many_arguments)]
fn challenge_c2(
    statement: &[u8],
    mu: usize,
    nu: usize,
    l_cell: &TargetElement,
    big_h: &TargetElement,
    h_tilde: &TargetElement,
    l_prime: &TargetElement,
    msg: &[u8],
) -> Scalar {
    Transcript::new()
        .statement(statement)
        .index(mu)
        .index(nu)
        .target(l_cell)
        .target(big_h)
        .target(h_tilde)
        .target(l_prime)
        .message(msg)
        .challenge(SYSTEM, "c2")
}

pub fn prove_sp2<R: RngCore + CryptoRng>(
    sk: &SecretKey,
    pp: &PublicParams,
    omega: &QueryCommitments,
    keys: &KeyBundle,
    rng: &mut R,
) -> ProofSP2 {
    prove_sp2_with(sk, pp, omega, keys, Blinding::Independent, rng)
}

/// Under [`Blinding::Literal`], `omega_mu`, `psi_nu` and `htilde` are shared
/// across cells, which lets the verifier solve for `x^mu` and `hfrak` from two
/// cells. [`Blinding::Independent`] draws all three per cell.
///
/// Panics if `keys` does not match `omega`'s rectangle or exceeds the grid.
pub fn prove_sp2_with<R: RngCore + CryptoRng>(
    sk: &SecretKey,
    pp: &PublicParams,
    omega: &QueryCommitments,
    keys: &KeyBundle,
    blinding: Blinding,
    rng: &mut R,
) -> ProofSP2 {
    let (l, k) = (keys.l(), keys.k());
    assert!(l == omega.l && k == omega.k, "key bundle does not match the query");
    assert!(l < pp.m && k < pp.n, "query exceeds the grid");
    let statement = omega.to_bytes();
    let msg = nonce_message(rng);
    let x_pows = powers(&sk.x, l);
    let y_pows = powers(&sk.y, k);
    let c_pairs: Vec<TargetElement> = (1..=l).map(|mu| pair(&pp.g2.left, &pp.c(mu).signature)).collect();
    let d_pairs: Vec<TargetElement> = (1..=k).map(|nu| pair(&pp.h2.left, &pp.d(nu).signature)).collect();

    let shared = match blinding {
        Blinding::Literal => {
            let omegas: Vec<Scalar> = (0..l).map(|_| Scalar::random(rng)).collect();
            let psis: Vec<Scalar> = (0..k).map(|_| Scalar::random(rng)).collect();
            let h_tilde = RightElement::random(rng);
            Some((omegas, psis, h_tilde, pair(&pp.g_frak, &h_tilde)))
        }
        Blinding::Independent => None,
    };

    let cells = Grid::from_fn(l, k, |mu, nu| {
        let (w, p, h_tilde, big_h_tilde) = match &shared {
            Some((omegas, psis, ht, bht)) => (omegas[mu - 1], psis[nu - 1], *ht, *bht),
            None => {
                let ht = RightElement::random(rng);
                (Scalar::random(rng), Scalar::random(rng), ht, pair(&pp.g_frak, &ht))
            }
        };
        let k_cell = keys.k_cell(mu, nu);
        let l_cell = keys.l_cell(mu, nu);
        let upsilon1 = omega.f1.pow(&w) * omega.j1.pow(&p);
        let upsilon2 = c_pairs[mu - 1].pow(&-w);
        let upsilon3 = d_pairs[nu - 1].pow(&-p);
        let c1 = challenge_c1(&statement, mu, nu, k_cell, &upsilon1, &upsilon2, &upsilon3, &msg);
        let l_prime = pair(k_cell, &h_tilde);
        let c2 = challenge_c2(&statement, mu, nu, l_cell, &pp.big_h, &big_h_tilde, &l_prime, &msg);
        CellProof {
            upsilon1,
            upsilon2,
            upsilon3,
            c1,
            c2,
            z1: w - c1 * x_pows[mu - 1],
            z2: p - c1 * y_pows[nu - 1],
            h_mu_nu: h_tilde * sk.h_frak.pow(&-c2),
            l_prime,
            h_tilde: big_h_tilde,
        }
    });
    ProofSP2 { cells, msg }
}

/// Checks every cell: both challenges, the `Upsilon1..3` relations and the
/// `L'`, `Htilde` relations.
pub fn verify_sp2(
    pp: &PublicParams,
    omega: &QueryCommitments,
    keys: &KeyBundle,
    proof: &ProofSP2,
) -> Result<(), Rejection> {
    let (l, k) = (omega.l, omega.k);
    if l == 0 || k == 0 || l >= pp.m || k >= pp.n {
        return Err(Rejection::Shape("query size does not fit the grid"));
    }
    if (keys.l(), keys.k()) != (l, k) {
        return Err(Rejection::Shape("key bundle size differs from the query"));
    }
    if (proof.cells.cols(), proof.cells.rows()) != (l, k) {
        return Err(Rejection::Shape("proof cell count differs from the query"));
    }
    if keys.big_h != pp.big_h {
        return Err(Rejection::KeyEcho);
    }
    let statement = omega.to_bytes();
    let g2g2 = pp.g2.self_pairing();
    let h2h2 = pp.h2.self_pairing();
    // e(C_{mu,2}, g2) and e(C_{mu,2}, W2) / e(g2, g2), once per column; same for rows.
    let cols: Vec<(TargetElement, TargetElement)> = (1..=l)
        .map(|mu| {
            let sig = &pp.c(mu).signature;
            (pair(&pp.g2.left, sig), pair(&pp.w2, sig) / g2g2)
        })
        .collect();
    let rows: Vec<(TargetElement, TargetElement)> = (1..=k)
        .map(|nu| {
            let sig = &pp.d(nu).signature;
            (pair(&pp.h2.left, sig), pair(&pp.w2p, sig) / h2h2)
        })
        .collect();
    let col_base: Vec<LeftElement> = running_powers(&pp.g1.left, l)
        .into_iter()
        .map(|g| omega.e1 * g)
        .collect();
    let row_base: Vec<LeftElement> = running_powers(&pp.h1.left, k)
        .into_iter()
        .map(|h| omega.e2 * h)
        .collect();

    for ((mu, nu), cell) in proof.cells.iter() {
        let k_cell = keys.k_cell(mu, nu);
        let l_cell = keys.l_cell(mu, nu);
        let c1 = challenge_c1(
            &statement,
            mu,
            nu,
            k_cell,
            &cell.upsilon1,
            &cell.upsilon2,
            &cell.upsilon3,
            &proof.msg,
        );
        if c1 != cell.c1 {
            return Err(Rejection::Challenge("c1"));
        }
        let c2 = challenge_c2(
            &statement,
            mu,
            nu,
            l_cell,
            &pp.big_h,
            &cell.h_tilde,
            &cell.l_prime,
            &proof.msg,
        );
        if c2 != cell.c2 {
            return Err(Rejection::Challenge("c2"));
        }
        let quotient = *k_cell / (col_base[mu - 1] * row_base[nu - 1]);
        if cell.upsilon1 != omega.f1.pow(&cell.z1) * omega.j1.pow(&cell.z2) * quotient.pow(&cell.c1) {
            return Err(Rejection::Equation("Upsilon1"));
        }
        let (c_pair, c_ratio) = &cols[mu - 1];
        if cell.upsilon2 != c_pair.pow(&-cell.z1) * c_ratio.pow(&cell.c1) {
            return Err(Rejection::Equation("Upsilon2"));
        }
        let (d_pair, d_ratio) = &rows[nu - 1];
        if cell.upsilon3 != d_pair.pow(&-cell.z2) * d_ratio.pow(&cell.c1) {
            return Err(Rejection::Equation("Upsilon3"));
        }
        if cell.l_prime != pair(k_cell, &cell.h_mu_nu) * l_cell.pow(&cell.c2) {
            return Err(Rejection::Equation("L'"));
        }
        if cell.h_tilde != pair(&pp.g_frak, &cell.h_mu_nu) * pp.big_h.pow(&cell.c2) {
            return Err(Rejection::Equation("Htilde"));
        }
    }
    Ok(())
}

impl ProofSP2 {
    /// `version || u32 l || u32 k || cells (row-major) || u32 len || msg`, each
    /// cell as `Upsilon1 Upsilon2 Upsilon3 c1 c2 z1 z2 h_mu_nu L' Htilde`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.encode_into(&mut w);
        w.finish()
    }

    pub(crate) fn encode_into(&self, w: &mut Writer) {
        w.u8(PROOF_VERSION).len(self.cells.cols()).len(self.cells.rows());
        for c in self.cells.values() {
            w.left(&c.upsilon1).target(&c.upsilon2).target(&c.upsilon3);
            w.scalar(&c.c1).scalar(&c.c2).scalar(&c.z1).scalar(&c.z2);
            w.right(&c.h_mu_nu).target(&c.l_prime).target(&c.h_tilde);
        }
        w.bytes(&self.msg);
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = Reader::new(bytes);
        let proof = Self::decode_from(&mut r)?;
        r.finish()?;
        Ok(proof)
    }

    pub(crate) fn decode_from(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let version = r.u8("proof version")?;
        if version != PROOF_VERSION {
            return Err(DecodeError::Version {
                what: "key proof",
                version,
            });
        }
        let (l, k) = read_rectangle(r)?;
        let cells = Grid::try_from_fn(l, k, |_, _| {
            Ok::<_, DecodeError>(CellProof {
                upsilon1: r.left()?,
                upsilon2: r.target()?,
                upsilon3: r.target()?,
                c1: r.scalar()?,
                c2: r.scalar()?,
                z1: r.scalar()?,
                z2: r.scalar()?,
                h_mu_nu: r.right()?,
                l_prime: r.target()?,
                h_tilde: r.target()?,
            })
        })?;
        let msg = r.bytes("nonce message", MAX_MSG_LEN)?.to_vec();
        Ok(ProofSP2 { cells, msg })
    }
}

/// Reads `u32 l || u32 k` with `l * k <= MAX_PROOF_CELLS`.
pub(crate) fn read_rectangle(r: &mut Reader<'_>) -> Result<(usize, usize), DecodeError> {
    let l = r.len("rectangle width", MAX_PROOF_CELLS)?;
    let k = r.len("rectangle height", MAX_PROOF_CELLS)?;
    if l * k > MAX_PROOF_CELLS {
        return Err(DecodeError::TooLarge {
            what: "rectangle",
            value: (l * k) as u64,
        });
    }
    Ok((l, k))
}
