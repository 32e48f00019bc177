//! The user's query: commitments to the start point and the proof that they are
//! well formed and that the rectangle fits inside the grid.
//!
//! Commitments (`i`, `j` the start point, `l x k` the rectangle):
//!
//! ```text
//! E1 = gfrak^(-r1) g1^i        E2 = gfrak^(-r2) h1^j
//! F1 = gfrak^(r3) C_{i,1}      F2 = C_{i,2}^(r4)
//! J1 = gfrak^(r5) D_{j,1}      J2 = D_{j,2}^(r6)
//! I1 = Gamma1[i]^(r7)          I2 = Gamma2[j]^(r8)
//! I3 = Gamma1[i+l]^(r9)        I4 = Gamma2[j+k]^(r10)
//! ```
//!
//! `I1..I4` are randomized Boneh-Boyen signatures: only indices in `1..=m`
//! (resp. `1..=n`) carry one, which is what keeps `i + l` and `j + k` in range.
//!
//! The proof has twelve relations, each with its own challenge `c1..c12`,
//! responses `z1..z24` and commitments `E1', E2', Theta1..Theta16`. Relation
//! `c3` for instance checks
//! `Theta5 Theta6 = e(g1, I1)^z6 e(g1, g1)^z5 e(W1^-1, I1)^c3`.

use rand::{CryptoRng, RngCore};

use super::transcript::Transcript;
use super::{nonce_message, Blinding, MAX_MSG_LEN, PROOF_VERSION};
use crate::catalog::PublicParams;
use crate::codec::{Reader, Writer};
use crate::error::{DecodeError, Error, Rejection, Result};
use crate::group::{pair, LeftElement, RightElement, Scalar, TargetElement};

const SYSTEM: &str = "PiU";
const LABELS: [&str; 12] = [
    "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9", "c10", "c11", "c12",
];
/// `(challenge, first Theta, second Theta)` for the target-group relations, 1-based.
const TARGET_RELATIONS: [(usize, usize, usize); 10] = [
    (3, 5, 6),
    (4, 7, 8),
    (5, 9, 15),
    (6, 10, 16),
    (7, 1, 2),
    (8, 3, 4),
    (9, 6, 11),
    (10, 8, 12),
    (11, 9, 13),
    (12, 10, 14),
];

/// The witness elements a user picks from the public parameters.
///
/// [`QueryWitness::honest`] is the only constructor that guarantees a proof
/// will verify. The fields are public so tests and analysis tools can build
/// deliberately invalid witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryWitness {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub k: usize,
    pub c_i1: LeftElement,
    pub c_i2: RightElement,
    pub d_j1: LeftElement,
    pub d_j2: RightElement,
    pub gamma1_i: RightElement,
    pub gamma2_j: RightElement,
    pub gamma1_il: RightElement,
    pub gamma2_jk: RightElement,
}

/// Checks `1 <= i`, `1 <= j`, `l, k >= 1`, `i + l <= m`, `j + k <= n`.
pub fn check_query_range(m: usize, n: usize, i: usize, j: usize, l: usize, k: usize) -> Result<()> {
    if i == 0 || j == 0 {
        return Err(Error::argument("start point coordinates are 1-based"));
    }
    if l == 0 || k == 0 {
        return Err(Error::argument("query rectangle must be at least 1x1"));
    }
    if i.checked_add(l).is_none_or(|v| v > m) {
        return Err(Error::argument(format!("i + l = {i} + {l} exceeds grid width {m}")));
    }
    if j.checked_add(k).is_none_or(|v| v > n) {
        return Err(Error::argument(format!("j + k = {j} + {k} exceeds grid height {n}")));
    }
    Ok(())
}

impl QueryWitness {
    pub fn honest(pp: &PublicParams, i: usize, j: usize, l: usize, k: usize) -> Result<Self> {
        check_query_range(pp.m, pp.n, i, j, l, k)?;
        Ok(QueryWitness {
            i,
            j,
            l,
            k,
            c_i1: pp.c(i).power,
            c_i2: pp.c(i).signature,
            d_j1: pp.d(j).power,
            d_j2: pp.d(j).signature,
            gamma1_i: *pp.gamma1(i),
            gamma2_j: *pp.gamma2(j),
            gamma1_il: *pp.gamma1(i + l),
            gamma2_jk: *pp.gamma2(j + k),
        })
    }
}

/// The user's secret side of a query: the witness and `r1..r10`.
#[derive(Clone)]
pub struct UserQueryState {
    witness: QueryWitness,
    r: [Scalar; 10],
    omega: QueryCommitments,
}

impl std::fmt::Debug for UserQueryState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UserQueryState")
            .field("l", &self.witness.l)
            .field("k", &self.witness.k)
            .finish_non_exhaustive()
    }
}

impl UserQueryState {
    pub fn i(&self) -> usize {
        self.witness.i
    }

    pub fn j(&self) -> usize {
        self.witness.j
    }

    pub fn l(&self) -> usize {
        self.witness.l
    }

    pub fn k(&self) -> usize {
        self.witness.k
    }

    /// `r_n`, 1-based.
    pub fn r(&self, n: usize) -> &Scalar {
        &self.r[n - 1]
    }

    pub fn witness(&self) -> &QueryWitness {
        &self.witness
    }

    /// The commitments sent for this state.
    pub fn commitments(&self) -> &QueryCommitments {
        &self.omega
    }
}

/// What the provider sees of a query: the rectangle size and ten commitments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryCommitments {
    pub l: usize,
    pub k: usize,
    pub e1: LeftElement,
    pub e2: LeftElement,
    pub f1: LeftElement,
    pub f2: RightElement,
    pub j1: LeftElement,
    pub j2: RightElement,
    pub i1: RightElement,
    pub i2: RightElement,
    pub i3: RightElement,
    pub i4: RightElement,
}

impl QueryCommitments {
    /// `version || u32 l || u32 k || E1 E2 F1 F2 J1 J2 I1 I2 I3 I4`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.encode_into(&mut w);
        w.finish()
    }

    pub(crate) fn encode_into(&self, w: &mut Writer) {
        w.u8(PROOF_VERSION).len(self.l).len(self.k);
        w.left(&self.e1).left(&self.e2).left(&self.f1).right(&self.f2);
        w.left(&self.j1).right(&self.j2);
        w.right(&self.i1).right(&self.i2).right(&self.i3).right(&self.i4);
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = Reader::new(bytes);
        let omega = Self::decode_from(&mut r)?;
        r.finish()?;
        Ok(omega)
    }

    pub(crate) fn decode_from(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let version = r.u8("query version")?;
        if version != PROOF_VERSION {
            return Err(DecodeError::Version {
                what: "query commitments",
                version,
            });
        }
        Ok(QueryCommitments {
            l: r.len("query width", u32::MAX as usize)?,
            k: r.len("query height", u32::MAX as usize)?,
            e1: r.left()?,
            e2: r.left()?,
            f1: r.left()?,
            f2: r.right()?,
            j1: r.left()?,
            j2: r.right()?,
            i1: r.right()?,
            i2: r.right()?,
            i3: r.right()?,
            i4: r.right()?,
        })
    }
}

/// The query proof. `theta`, `c` and `z` hold `Theta1..16`, `c1..12`, `z1..24`
/// at index `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofU {
    pub e1p: LeftElement,
    pub e2p: LeftElement,
    pub theta: [TargetElement; 16],
    pub c: [Scalar; 12],
    pub z: [Scalar; 24],
    pub msg: Vec<u8>,
}

impl ProofU {
    /// `version || E1' || E2' || Theta1..16 || c1..12 || z1..24 || u32 len || msg`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.encode_into(&mut w);
        w.finish()
    }

    pub(crate) fn encode_into(&self, w: &mut Writer) {
        w.u8(PROOF_VERSION).left(&self.e1p).left(&self.e2p);
        for t in &self.theta {
            w.target(t);
        }
        for s in self.c.iter().chain(&self.z) {
            w.scalar(s);
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
                what: "query proof",
                version,
            });
        }
        let e1p = r.left()?;
        let e2p = r.left()?;
        let theta = (0..16).map(|_| r.target()).collect::<Result<Vec<_>, _>>()?;
        let scalars = (0..36).map(|_| r.scalar()).collect::<Result<Vec<_>, _>>()?;
        let msg = r.bytes("nonce message", MAX_MSG_LEN)?.to_vec();
        Ok(ProofU {
            e1p,
            e2p,
            theta: theta.try_into().expect("16 elements"),
            c: scalars[..12].try_into().expect("12 scalars"),
            z: scalars[12..].try_into().expect("24 scalars"),
            msg,
        })
    }
}

fn challenges(
    omega: &QueryCommitments,
    e1p: &LeftElement,
    e2p: &LeftElement,
    theta: &[TargetElement; 16],
    msg: &[u8],
) -> [Scalar; 12] {
    let statement = omega.to_bytes();
    let base = || {
        let mut t = Transcript::new();
        t.statement(&statement);
        t
    };
    let mut c = [Scalar::zero(); 12];
    c[0] = base()
        .left(&omega.e1)
        .left(e1p)
        .message(msg)
        .challenge(SYSTEM, LABELS[0]);
    c[1] = base()
        .left(&omega.e2)
        .left(e2p)
        .message(msg)
        .challenge(SYSTEM, LABELS[1]);
    for (ci, a, b) in TARGET_RELATIONS {
        c[ci - 1] = base()
            .target(&theta[a - 1])
            .target(&theta[b - 1])
            .message(msg)
            .challenge(SYSTEM, LABELS[ci - 1]);
    }
    c
}

/// Pairings the user needs for the commitments, each computed once.
struct UserPairings {
    g_f2: TargetElement,
    g2g2: TargetElement,
    g_j2: TargetElement,
    h2h2: TargetElement,
    g1_i1: TargetElement,
    g1g1: TargetElement,
    h1_i2: TargetElement,
    h1h1: TargetElement,
    g_i1: TargetElement,
    g_i2: TargetElement,
    g_i3: TargetElement,
    g_i4: TargetElement,
    g1_i3: TargetElement,
    h1_i4: TargetElement,
}

impl UserPairings {
    fn new(pp: &PublicParams, o: &QueryCommitments) -> Self {
        let g = &pp.g_frak;
        UserPairings {
            g_f2: pair(g, &o.f2),
            g2g2: pp.g2.self_pairing(),
            g_j2: pair(g, &o.j2),
            h2h2: pp.h2.self_pairing(),
            g1_i1: pair(&pp.g1.left, &o.i1),
            g1g1: pp.g1.self_pairing(),
            h1_i2: pair(&pp.h1.left, &o.i2),
            h1h1: pp.h1.self_pairing(),
            g_i1: pair(g, &o.i1),
            g_i2: pair(g, &o.i2),
            g_i3: pair(g, &o.i3),
            g_i4: pair(g, &o.i4),
            g1_i3: pair(&pp.g1.left, &o.i3),
            h1_i4: pair(&pp.h1.left, &o.i4),
        }
    }
}

fn random_scalars<R: RngCore + CryptoRng, const N: usize>(rng: &mut R) -> [Scalar; N] {
    std::array::from_fn(|_| Scalar::random(rng))
}

/// Draws `r1..r10` and computes the commitments for `witness`.
pub fn commit<R: RngCore + CryptoRng>(
    pp: &PublicParams,
    witness: QueryWitness,
    rng: &mut R,
) -> (UserQueryState, QueryCommitments) {
    let r: [Scalar; 10] = std::array::from_fn(|_| Scalar::random_nonzero(rng));
    let w = &witness;
    let g = &pp.g_frak;
    let omega = QueryCommitments {
        l: w.l,
        k: w.k,
        e1: g.pow(&-r[0]) * pp.g1.left.pow(&Scalar::from(w.i as u64)),
        e2: g.pow(&-r[1]) * pp.h1.left.pow(&Scalar::from(w.j as u64)),
        f1: g.pow(&r[2]) * w.c_i1,
        f2: w.c_i2.pow(&r[3]),
        j1: g.pow(&r[4]) * w.d_j1,
        j2: w.d_j2.pow(&r[5]),
        i1: w.gamma1_i.pow(&r[6]),
        i2: w.gamma2_j.pow(&r[7]),
        i3: w.gamma1_il.pow(&r[8]),
        i4: w.gamma2_jk.pow(&r[9]),
    };
    (UserQueryState { witness, r, omega }, omega)
}

/// Proves the relations for committed `state`.
pub fn prove_query<R: RngCore + CryptoRng>(
    pp: &PublicParams,
    state: &UserQueryState,
    omega: &QueryCommitments,
    blinding: Blinding,
    rng: &mut R,
) -> ProofU {
    match blinding {
        Blinding::Independent => prove_independent(pp, state, omega, rng),
        Blinding::Literal => prove_literal(pp, state, omega, rng),
    }
}

fn prove_literal<R: RngCore + CryptoRng>(
    pp: &PublicParams,
    state: &UserQueryState,
    omega: &QueryCommitments,
    rng: &mut R,
) -> ProofU {
    let [r, s, s1, s2, s3, s4, s5, s6, s7, s8, s9, s10] = random_scalars::<_, 12>(rng);
    let msg = nonce_message(rng);
    let g = &pp.g_frak;
    let e1p = g.pow(&s1) * pp.g1.left.pow(&r);
    let e2p = g.pow(&s2) * pp.h1.left.pow(&s);
    let p = UserPairings::new(pp, omega);
    let theta = [
        p.g_f2.pow(&s3),
        p.g2g2.pow(&s4),
        p.g_j2.pow(&s5),
        p.h2h2.pow(&s6),
        p.g1_i1.pow(&r),
        p.g1g1.pow(&s7),
        p.h1_i2.pow(&s),
        p.h1h1.pow(&s8),
        p.g1g1.pow(&s9),
        p.h1h1.pow(&s10),
        p.g_i1.pow(&s1),
        p.g_i2.pow(&s2),
        p.g_i3.pow(&s1),
        p.g_i4.pow(&s2),
        p.g1_i3.pow(&r),
        p.h1_i4.pow(&s),
    ];
    let c = challenges(omega, &e1p, &e2p, &theta, &msg);
    let (i, j) = witness_indices(state);
    let rr = |n| *state.r(n);
    let z = [
        s1 + c[0] * rr(1),
        r - c[0] * i,
        s2 + c[1] * rr(2),
        s - c[1] * j,
        s7 + c[2] * rr(7),
        r - c[2] * i,
        s - c[3] * j,
        s8 + c[3] * rr(8),
        s9 + c[4] * rr(9),
        r - c[4] * i,
        s10 + c[5] * rr(10),
        s - c[5] * j,
        s3 - c[6] * rr(3),
        s4 - c[6] * rr(4),
        s5 - c[7] * rr(5),
        s6 - c[7] * rr(6),
        s7 - c[8] * rr(7),
        s1 + c[8] * rr(1),
        s8 - c[9] * rr(8),
        s2 + c[9] * rr(2),
        s9 - c[10] * rr(9),
        s1 + c[10] * rr(1),
        s10 - c[11] * rr(10),
        s2 + c[11] * rr(2),
    ];
    ProofU {
        e1p,
        e2p,
        theta,
        c,
        z,
        msg,
    }
}

fn witness_indices(state: &UserQueryState) -> (Scalar, Scalar) {
    (Scalar::from(state.i() as u64), Scalar::from(state.j() as u64))
}

/// Each relation gets its own nonces, so no two responses share a blinder.
/// The verifier only ever multiplies the two Thetas of a relation together, so
/// each relation's commitment is computed as one product and split into the
/// published pair with a uniformly random factor; `Theta6, 8, 9, 10` (each used
/// by two relations) and `Theta2, Theta4` are the random factors.
fn prove_independent<R: RngCore + CryptoRng>(
    pp: &PublicParams,
    state: &UserQueryState,
    omega: &QueryCommitments,
    rng: &mut R,
) -> ProofU {
    // Nonce pairs in response order: (z1, z2), (z3, z4), ..., (z23, z24).
    let n = random_scalars::<_, 24>(rng);
    let msg = nonce_message(rng);
    let g = &pp.g_frak;
    let e1p = g.pow(&n[0]) * pp.g1.left.pow(&n[1]);
    let e2p = g.pow(&n[2]) * pp.h1.left.pow(&n[3]);
    let p = UserPairings::new(pp, omega);
    // Relation commitments, written as base^(nonce) for each response in order.
    let rel3 = p.g1g1.pow(&n[4]) * p.g1_i1.pow(&n[5]);
    let rel4 = p.h1_i2.pow(&n[6]) * p.h1h1.pow(&n[7]);
    let rel5 = p.g1g1.pow(&n[8]) * p.g1_i3.pow(&n[9]);
    let rel6 = p.h1h1.pow(&n[10]) * p.h1_i4.pow(&n[11]);
    let rel7 = p.g_f2.pow(&n[12]) * p.g2g2.pow(&n[13]);
    let rel8 = p.g_j2.pow(&n[14]) * p.h2h2.pow(&n[15]);
    let rel9 = p.g1g1.pow(&n[16]) * p.g_i1.pow(&n[17]);
    let rel10 = p.h1h1.pow(&n[18]) * p.g_i2.pow(&n[19]);
    let rel11 = p.g1g1.pow(&n[20]) * p.g_i3.pow(&n[21]);
    let rel12 = p.h1h1.pow(&n[22]) * p.g_i4.pow(&n[23]);

    let gt = TargetElement::generator();
    let [u2, u4, u6, u8, u9, u10] = random_scalars::<_, 6>(rng).map(|u| gt.pow(&u));
    let theta = [
        rel7 / u2,
        u2,
        rel8 / u4,
        u4,
        rel3 / u6,
        u6,
        rel4 / u8,
        u8,
        u9,
        u10,
        rel9 / u6,
        rel10 / u8,
        rel11 / u9,
        rel12 / u10,
        rel5 / u9,
        rel6 / u10,
    ];
    let c = challenges(omega, &e1p, &e2p, &theta, &msg);
    let (i, j) = witness_indices(state);
    let rr = |k| *state.r(k);
    let z = [
        n[0] + c[0] * rr(1),
        n[1] - c[0] * i,
        n[2] + c[1] * rr(2),
        n[3] - c[1] * j,
        n[4] + c[2] * rr(7),
        n[5] - c[2] * i,
        n[6] - c[3] * j,
        n[7] + c[3] * rr(8),
        n[8] + c[4] * rr(9),
        n[9] - c[4] * i,
        n[10] + c[5] * rr(10),
        n[11] - c[5] * j,
        n[12] - c[6] * rr(3),
        n[13] - c[6] * rr(4),
        n[14] - c[7] * rr(5),
        n[15] - c[7] * rr(6),
        n[16] - c[8] * rr(7),
        n[17] + c[8] * rr(1),
        n[18] - c[9] * rr(8),
        n[19] + c[9] * rr(2),
        n[20] - c[10] * rr(9),
        n[21] + c[10] * rr(1),
        n[22] - c[11] * rr(10),
        n[23] + c[11] * rr(2),
    ];
    ProofU {
        e1p,
        e2p,
        theta,
        c,
        z,
        msg,
    }
}

/// Commits to the honest witness for `(i, j, l, k)` and proves it with
/// [`Blinding::Independent`]. Fails with an argument error when the rectangle
/// does not fit: an out-of-range query cannot be proven.
pub fn build_query<R: RngCore + CryptoRng>(
    pp: &PublicParams,
    i: usize,
    j: usize,
    l: usize,
    k: usize,
    rng: &mut R,
) -> Result<(UserQueryState, QueryCommitments, ProofU)> {
    let witness = QueryWitness::honest(pp, i, j, l, k)?;
    Ok(build_query_with(pp, witness, Blinding::Independent, rng))
}

/// [`build_query`] for an arbitrary witness and blinding policy.
pub fn build_query_with<R: RngCore + CryptoRng>(
    pp: &PublicParams,
    witness: QueryWitness,
    blinding: Blinding,
    rng: &mut R,
) -> (UserQueryState, QueryCommitments, ProofU) {
    let (state, omega) = commit(pp, witness, rng);
    let proof = prove_query(pp, &state, &omega, blinding, rng);
    (state, omega, proof)
}

fn holds(ok: bool, what: &'static str) -> Result<(), Rejection> {
    if ok {
        Ok(())
    } else {
        Err(Rejection::Equation(what))
    }
}

/// Checks all twelve challenges and all twelve relations.
pub fn verify_query(pp: &PublicParams, omega: &QueryCommitments, proof: &ProofU) -> Result<(), Rejection> {
    let o = omega;
    if o.l == 0 || o.k == 0 || o.l >= pp.m || o.k >= pp.n {
        return Err(Rejection::Shape("query size does not fit the grid"));
    }
    if [o.f2, o.j2, o.i1, o.i2, o.i3, o.i4]
        .iter()
        .any(RightElement::is_identity)
    {
        return Err(Rejection::Shape("degenerate commitment"));
    }
    let expected = challenges(o, &proof.e1p, &proof.e2p, &proof.theta, &proof.msg);
    for (n, (got, want)) in proof.c.iter().zip(&expected).enumerate() {
        if got != want {
            return Err(Rejection::Challenge(LABELS[n]));
        }
    }
    let c = |n: usize| &proof.c[n - 1];
    let z = |n: usize| &proof.z[n - 1];
    let t = |n: usize| proof.theta[n - 1];
    let g = &pp.g_frak;
    let (g1, h1) = (&pp.g1.left, &pp.h1.left);

    holds(proof.e1p == g.pow(z(1)) * g1.pow(z(2)) * o.e1.pow(c(1)), "E1'")?;
    holds(proof.e2p == g.pow(z(3)) * h1.pow(z(4)) * o.e2.pow(c(2)), "E2'")?;

    let p = UserPairings::new(pp, o);
    let l = Scalar::from(o.l as u64);
    let k = Scalar::from(o.k as u64);

    let rhs = p.g1_i1.pow(z(6)) * p.g1g1.pow(z(5)) * pair(&pp.w1, &o.i1).inverse().pow(c(3));
    holds(t(5) * t(6) == rhs, "Theta5 Theta6")?;

    let rhs = p.h1_i2.pow(z(7)) * p.h1h1.pow(z(8)) * pair(&pp.w1p, &o.i2).inverse().pow(c(4));
    holds(t(7) * t(8) == rhs, "Theta7 Theta8")?;

    let shifted = pair(&pp.w1, &o.i3) * p.g1_i3.pow(&l);
    let rhs = p.g1g1.pow(z(9)) * p.g1_i3.pow(z(10)) * shifted.inverse().pow(c(5));
    holds(t(9) * t(15) == rhs, "Theta9 Theta15")?;

    let shifted = pair(&pp.w1p, &o.i4) * p.h1_i4.pow(&k);
    let rhs = p.h1h1.pow(z(11)) * p.h1_i4.pow(z(12)) * shifted.inverse().pow(c(6));
    holds(t(10) * t(16) == rhs, "Theta10 Theta16")?;

    let rhs = p.g_f2.pow(z(13)) * p.g2g2.pow(z(14)) * pair(&(o.f1 * pp.w2), &o.f2).pow(c(7));
    holds(t(1) * t(2) == rhs, "Theta1 Theta2")?;

    let rhs = p.g_j2.pow(z(15)) * p.h2h2.pow(z(16)) * pair(&(o.j1 * pp.w2p), &o.j2).pow(c(8));
    holds(t(3) * t(4) == rhs, "Theta3 Theta4")?;

    let rhs = p.g1g1.pow(z(17)) * p.g_i1.pow(z(18)) * pair(&(o.e1 * pp.w1), &o.i1).pow(c(9));
    holds(t(6) * t(11) == rhs, "Theta6 Theta11")?;

    let rhs = p.h1h1.pow(z(19)) * p.g_i2.pow(z(20)) * pair(&(o.e2 * pp.w1p), &o.i2).pow(c(10));
    holds(t(8) * t(12) == rhs, "Theta8 Theta12")?;

    let base = o.e1 * g1.pow(&l) * pp.w1;
    let rhs = p.g1g1.pow(z(21)) * p.g_i3.pow(z(22)) * pair(&base, &o.i3).pow(c(11));
    holds(t(9) * t(13) == rhs, "Theta9 Theta13")?;

    let base = o.e2 * h1.pow(&k) * pp.w1p;
    let rhs = p.h1h1.pow(z(23)) * p.g_i4.pow(z(24)) * pair(&base, &o.i4).pow(c(12));
    holds(t(10) * t(14) == rhs, "Theta10 Theta14")
}
