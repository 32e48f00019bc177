//! Provider setup: secret key, public parameters and the encrypted service grid.
//!
//! Cell `(i, j)` (column `i`, row `j`, both 1-based) is blinded as
//!
//! ```text
//! A_ij = g1^i * h1^j * g2^(x^i) * h2^(y^j)        (left slot)
//! B_ij = e(A_ij, hfrak) * M_ij                     (target group)
//! ```
//!
//! where `M_ij` is a fresh random target-group mask. The service bytes themselves
//! are sealed under a key derived from `M_ij`, so recovering the mask recovers the
//! payload.

use chacha20poly1305::aead::{Aead, KeyInit};
use chacha20poly1305::{ChaCha20Poly1305, Key, Nonce};
use hkdf::Hkdf;
use rand::{CryptoRng, RngCore};
use sha2::Sha256;

use crate::codec::{Reader, Writer};
use crate::error::{Cell, DecodeError, Error, Result};
use crate::grid::Grid;
use crate::group::{pair, DualElement, LeftElement, ParameterSet, RightElement, Scalar, TargetElement};

const CATALOG_MAGIC: &[u8; 8] = b"OLBSQCAT";
const SECRET_KEY_MAGIC: &[u8; 8] = b"OLBSQSK\0";
const FORMAT_VERSION: u8 = 1;
const PAYLOAD_KDF_INFO: &[u8] = b"olbsq/v1/cell-payload";
const NONCE_LEN: usize = 12;

/// Largest grid side accepted when decoding.
pub const MAX_GRID_SIDE: usize = 1 << 16;
/// Largest single payload accepted when decoding.
pub const MAX_PAYLOAD_LEN: usize = 1 << 24;
/// Largest plaintext service that still seals within [`MAX_PAYLOAD_LEN`].
pub const MAX_SERVICE_LEN: usize = MAX_PAYLOAD_LEN - NONCE_LEN - 16;

/// The provider's trapdoor. Keep it on the provider host only.
#[derive(Clone, PartialEq, Eq)]
pub struct SecretKey {
    pub alpha1: Scalar,
    pub alpha2: Scalar,
    pub beta1: Scalar,
    pub beta2: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub h_frak: RightElement,
}

impl std::fmt::Debug for SecretKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("SecretKey(..)")
    }
}

/// `(base^(t), base^(1/(a + t)), H^(t))` for one power `t` of `x` or `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerTriple {
    /// `C_{i,1}` / `D_{j,1}`.
    pub power: LeftElement,
    /// `C_{i,2}` / `D_{j,2}`: a Boneh-Boyen signature on the power.
    pub signature: RightElement,
    /// `C_{i,3}` / `D_{j,3}`.
    pub target: TargetElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicParams {
    pub params: ParameterSet,
    pub m: usize,
    pub n: usize,
    pub g1: DualElement,
    pub g2: DualElement,
    pub h1: DualElement,
    pub h2: DualElement,
    pub g_frak: LeftElement,
    /// `H = e(gfrak, hfrak)`.
    pub big_h: TargetElement,
    /// `W1 = g1^alpha1`.
    pub w1: LeftElement,
    /// `W2 = g2^alpha2`.
    pub w2: LeftElement,
    /// `W1' = h1^beta1`.
    pub w1p: LeftElement,
    /// `W2' = h2^beta2`.
    pub w2p: LeftElement,
    /// `Gamma1[i] = g1^(1/(alpha1 + i))`, stored at `i - 1`.
    pub gamma1: Vec<RightElement>,
    /// `Gamma2[j] = h1^(1/(beta1 + j))`, stored at `j - 1`.
    pub gamma2: Vec<RightElement>,
    /// Column triples over `g2`, `x`, stored at `i - 1`.
    pub c: Vec<PowerTriple>,
    /// Row triples over `h2`, `y`, stored at `j - 1`.
    pub d: Vec<PowerTriple>,
}

impl PublicParams {
    /// `Gamma1[i]`, 1-based. Panics outside `1..=m`.
    pub fn gamma1(&self, i: usize) -> &RightElement {
        &self.gamma1[i - 1]
    }

    pub fn gamma2(&self, j: usize) -> &RightElement {
        &self.gamma2[j - 1]
    }

    pub fn c(&self, i: usize) -> &PowerTriple {
        &self.c[i - 1]
    }

    pub fn d(&self, j: usize) -> &PowerTriple {
        &self.d[j - 1]
    }

    /// Structural checks a user can run on downloaded parameters: list lengths,
    /// non-degenerate `H`, and that every dual base shares one exponent.
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::argument("grid must be at least 1x1"));
        }
        if self.gamma1.len() != self.m || self.c.len() != self.m {
            return Err(Error::argument("column parameter lists do not match m"));
        }
        if self.gamma2.len() != self.n || self.d.len() != self.n {
            return Err(Error::argument("row parameter lists do not match n"));
        }
        if self.big_h.is_identity() {
            return Err(Error::argument("H is the identity"));
        }
        for (name, base) in [("g1", &self.g1), ("g2", &self.g2), ("h1", &self.h1), ("h2", &self.h2)] {
            if base.left.is_identity() || !base.is_consistent() {
                return Err(Error::argument(format!("dual base {name} is inconsistent")));
            }
        }
        Ok(())
    }

    pub(crate) fn encode_into(&self, w: &mut Writer) {
        for base in [&self.g1, &self.g2, &self.h1, &self.h2] {
            w.left(&base.left).right(&base.right);
        }
        w.left(&self.g_frak).target(&self.big_h);
        w.left(&self.w1).left(&self.w2).left(&self.w1p).left(&self.w2p);
        for g in self.gamma1.iter().chain(&self.gamma2) {
            w.right(g);
        }
        for t in self.c.iter().chain(&self.d) {
            w.left(&t.power).right(&t.signature).target(&t.target);
        }
    }

    pub(crate) fn decode_from(
        r: &mut Reader<'_>,
        params: ParameterSet,
        m: usize,
        n: usize,
    ) -> Result<Self, DecodeError> {
        let mut dual = || -> Result<DualElement, DecodeError> {
            Ok(DualElement {
                left: r.left()?,
                right: r.right()?,
            })
        };
        let (g1, g2, h1, h2) = (dual()?, dual()?, dual()?, dual()?);
        let g_frak = r.left()?;
        let big_h = r.target()?;
        let (w1, w2, w1p, w2p) = (r.left()?, r.left()?, r.left()?, r.left()?);
        let gamma1 = (0..m).map(|_| r.right()).collect::<Result<Vec<_>, _>>()?;
        let gamma2 = (0..n).map(|_| r.right()).collect::<Result<Vec<_>, _>>()?;
        let mut triple = || -> Result<PowerTriple, DecodeError> {
            Ok(PowerTriple {
                power: r.left()?,
                signature: r.right()?,
                target: r.target()?,
            })
        };
        let c = (0..m).map(|_| triple()).collect::<Result<Vec<_>, _>>()?;
        let d = (0..n).map(|_| triple()).collect::<Result<Vec<_>, _>>()?;
        Ok(PublicParams {
            params,
            m,
            n,
            g1,
            g2,
            h1,
            h2,
            g_frak,
            big_h,
            w1,
            w2,
            w1p,
            w2p,
            gamma1,
            gamma2,
            c,
            d,
        })
    }
}

/// The published `(A, B)` grid plus sealed payloads, all `m x n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncryptedCatalog {
    pub a: Grid<LeftElement>,
    pub b: Grid<TargetElement>,
    pub payload: Grid<Vec<u8>>,
}

impl EncryptedCatalog {
    pub fn m(&self) -> usize {
        self.a.cols()
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }
}

/// A decrypted cell: its mask and application bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceCell {
    pub mask: TargetElement,
    pub payload: Vec<u8>,
}

fn sample_secret_key<R: RngCore + CryptoRng>(m: usize, n: usize, rng: &mut R) -> SecretKey {
    'resample: loop {
        let sk = SecretKey {
            alpha1: Scalar::random_nonzero(rng),
            alpha2: Scalar::random_nonzero(rng),
            beta1: Scalar::random_nonzero(rng),
            beta2: Scalar::random_nonzero(rng),
            x: Scalar::random_nonzero(rng),
            y: Scalar::random_nonzero(rng),
            h_frak: RightElement::random(rng),
        };
        if sk.h_frak.is_identity() {
            continue;
        }
        for i in 1..=m as u64 {
            let xi = sk.x.pow_u64(i);
            if (sk.alpha1 + Scalar::from(i)).is_zero() || (sk.alpha2 + xi).is_zero() {
                continue 'resample;
            }
        }
        for j in 1..=n as u64 {
            let yj = sk.y.pow_u64(j);
            if (sk.beta1 + Scalar::from(j)).is_zero() || (sk.beta2 + yj).is_zero() {
                continue 'resample;
            }
        }
        return sk;
    }
}

fn invert(s: Scalar) -> Scalar {
    s.invert()
        .expect("denominators are checked nonzero when the key is sampled")
}

/// Builds a fresh key, public parameters and encrypted catalog for an `m x n`
/// grid. `services` must be `m x n`; cell `(i, j)` of it is sealed into cell
/// `(i, j)` of the catalog.
pub fn setup<R: RngCore + CryptoRng>(
    params: ParameterSet,
    services: &Grid<Vec<u8>>,
    rng: &mut R,
) -> Result<(SecretKey, PublicParams, EncryptedCatalog)> {
    let (m, n) = (services.cols(), services.rows());
    if m == 0 || n == 0 {
        return Err(Error::argument("grid dimensions must be positive"));
    }
    let sk = sample_secret_key(m, n, rng);
    let (pp, cat) = setup_with_key(params, &sk, services, rng)?;
    Ok((sk, pp, cat))
}

/// [`setup`] for a given secret key.
pub fn setup_with_key<R: RngCore + CryptoRng>(
    params: ParameterSet,
    sk: &SecretKey,
    services: &Grid<Vec<u8>>,
    rng: &mut R,
) -> Result<(PublicParams, EncryptedCatalog)> {
    let (m, n) = (services.cols(), services.rows());
    if m == 0 || n == 0 || m > MAX_GRID_SIDE || n > MAX_GRID_SIDE {
        return Err(Error::argument(format!("grid sides must lie in 1..={MAX_GRID_SIDE}")));
    }
    if let Some(((i, j), _)) = services.iter().find(|(_, p)| p.len() > MAX_SERVICE_LEN) {
        return Err(Error::argument(format!(
            "service ({i}, {j}) exceeds {MAX_SERVICE_LEN} bytes"
        )));
    }
    let g1 = DualElement::random(rng);
    let g2 = DualElement::random(rng);
    let h1 = DualElement::random(rng);
    let h2 = DualElement::random(rng);
    let g_frak = LeftElement::random(rng);
    let big_h = pair(&g_frak, &sk.h_frak);

    let x_powers: Vec<Scalar> = powers(&sk.x, m);
    let y_powers: Vec<Scalar> = powers(&sk.y, n);

    let gamma1 = (1..=m as u64)
        .map(|i| g1.right.pow(&invert(sk.alpha1 + Scalar::from(i))))
        .collect();
    let gamma2 = (1..=n as u64)
        .map(|j| h1.right.pow(&invert(sk.beta1 + Scalar::from(j))))
        .collect();
    let c: Vec<PowerTriple> = x_powers
        .iter()
        .map(|xi| PowerTriple {
            power: g2.left.pow(xi),
            signature: g2.right.pow(&invert(sk.alpha2 + *xi)),
            target: big_h.pow(xi),
        })
        .collect();
    let d: Vec<PowerTriple> = y_powers
        .iter()
        .map(|yj| PowerTriple {
            power: h2.left.pow(yj),
            signature: h2.right.pow(&invert(sk.beta2 + *yj)),
            target: big_h.pow(yj),
        })
        .collect();

    // g1^i and h1^j by repeated multiplication; g2^(x^i), h2^(y^j) are C_{i,1}, D_{j,1}.
    let col_terms: Vec<LeftElement> = running_powers(&g1.left, m)
        .into_iter()
        .zip(&c)
        .map(|(g1i, t)| g1i * t.power)
        .collect();
    let row_terms: Vec<LeftElement> = running_powers(&h1.left, n)
        .into_iter()
        .zip(&d)
        .map(|(h1j, t)| h1j * t.power)
        .collect();

    let pp = PublicParams {
        params,
        m,
        n,
        g1,
        g2,
        h1,
        h2,
        g_frak,
        big_h,
        w1: g1.left.pow(&sk.alpha1),
        w2: g2.left.pow(&sk.alpha2),
        w1p: h1.left.pow(&sk.beta1),
        w2p: h2.left.pow(&sk.beta2),
        gamma1,
        gamma2,
        c,
        d,
    };

    let a = Grid::from_fn(m, n, |i, j| col_terms[i - 1] * row_terms[j - 1]);
    let mut b_cells = Vec::with_capacity(m * n);
    let mut sealed = Vec::with_capacity(m * n);
    for ((i, j), a_ij) in a.iter() {
        let mask = TargetElement::random(rng);
        b_cells.push(pair(a_ij, &sk.h_frak) * mask);
        sealed.push(wrap_payload(&mask, services.at(i, j), rng));
    }
    let cat = EncryptedCatalog {
        b: Grid::from_row_major(m, n, b_cells)?,
        payload: Grid::from_row_major(m, n, sealed)?,
        a,
    };
    Ok((pp, cat))
}

/// `[s^1, s^2, ..., s^count]` by repeated multiplication.
pub(crate) fn powers(s: &Scalar, count: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(count);
    let mut acc = *s;
    for _ in 0..count {
        out.push(acc);
        acc = acc * *s;
    }
    out
}

/// `[b^1, ..., b^count]` by repeated group multiplication.
pub(crate) fn running_powers(base: &LeftElement, count: usize) -> Vec<LeftElement> {
    let mut out = Vec::with_capacity(count);
    let mut acc = *base;
    for _ in 0..count {
        out.push(acc);
        acc = acc * *base;
    }
    out
}

/// Opens cell `(i, j)` directly with the secret key. A reference path for tests
/// and provider-side audits; users go through the transfer protocol instead.
pub fn decrypt_direct(sk: &SecretKey, cat: &EncryptedCatalog, i: usize, j: usize) -> Result<ServiceCell> {
    let (Some(a), Some(b), Some(ct)) = (cat.a.get(i, j), cat.b.get(i, j), cat.payload.get(i, j)) else {
        return Err(Error::argument(format!(
            "cell ({i}, {j}) outside the {}x{} grid",
            cat.m(),
            cat.n()
        )));
    };
    let mask = *b / pair(a, &sk.h_frak);
    let payload = unwrap_payload(&mask, ct).map_err(|_| Error::Integrity(Cell { col: i, row: j }))?;
    Ok(ServiceCell { mask, payload })
}

fn payload_cipher(mask: &TargetElement) -> ChaCha20Poly1305 {
    let hk = Hkdf::<Sha256>::new(None, &mask.to_bytes());
    let mut key = [0u8; 32];
    hk.expand(PAYLOAD_KDF_INFO, &mut key)
        .expect("32 bytes is a valid HKDF-SHA256 output length");
    ChaCha20Poly1305::new(Key::from_slice(&key))
}

/// Seals `payload` under a key derived from `mask`. Output is
/// `nonce (12 bytes) || ciphertext || tag (16 bytes)`.
pub fn wrap_payload<R: RngCore + CryptoRng>(mask: &TargetElement, payload: &[u8], rng: &mut R) -> Vec<u8> {
    let mut nonce = [0u8; NONCE_LEN];
    rng.fill_bytes(&mut nonce);
    let sealed = payload_cipher(mask)
        .encrypt(Nonce::from_slice(&nonce), payload)
        .expect("in-memory encryption does not fail");
    let mut out = Vec::with_capacity(NONCE_LEN + sealed.len());
    out.extend_from_slice(&nonce);
    out.extend_from_slice(&sealed);
    out
}

pub fn unwrap_payload(mask: &TargetElement, ct: &[u8]) -> Result<Vec<u8>> {
    if ct.len() < NONCE_LEN {
        return Err(Error::PayloadIntegrity);
    }
    let (nonce, sealed) = ct.split_at(NONCE_LEN);
    payload_cipher(mask)
        .decrypt(Nonce::from_slice(nonce), sealed)
        .map_err(|_| Error::PayloadIntegrity)
}

fn write_header(w: &mut Writer, magic: &[u8; 8], params: ParameterSet) {
    w.raw(magic).u8(FORMAT_VERSION).u8(params.id);
}

fn read_header(r: &mut Reader<'_>, magic: &[u8; 8], what: &'static str) -> Result<ParameterSet, DecodeError> {
    if r.take(8, what)? != magic {
        return Err(DecodeError::Magic(what));
    }
    let version = r.u8(what)?;
    if version != FORMAT_VERSION {
        return Err(DecodeError::Version { what, version });
    }
    ParameterSet::by_id(r.u8(what)?)
}

/// Catalog file: header (`"OLBSQCAT"`, version, curve id, `m`, `n` as `u32`),
/// the public parameters in declaration order, then each cell in row-major order
/// as `A || B || u32 payload length || payload`.
pub fn encode_catalog(pp: &PublicParams, cat: &EncryptedCatalog) -> Vec<u8> {
    let mut w = Writer::new();
    encode_catalog_into(&mut w, pp, cat);
    w.finish()
}

pub(crate) fn encode_catalog_into(w: &mut Writer, pp: &PublicParams, cat: &EncryptedCatalog) {
    write_header(w, CATALOG_MAGIC, pp.params);
    w.len(pp.m).len(pp.n);
    pp.encode_into(w);
    for ((i, j), a) in cat.a.iter() {
        w.left(a).target(cat.b.at(i, j)).bytes(cat.payload.at(i, j));
    }
}

pub fn decode_catalog(bytes: &[u8]) -> Result<(PublicParams, EncryptedCatalog), DecodeError> {
    let mut r = Reader::new(bytes);
    let params = read_header(&mut r, CATALOG_MAGIC, "catalog")?;
    let m = r.len("grid columns", MAX_GRID_SIDE)?;
    let n = r.len("grid rows", MAX_GRID_SIDE)?;
    if m == 0 || n == 0 {
        return Err(DecodeError::Invalid("grid dimensions"));
    }
    let pp = PublicParams::decode_from(&mut r, params, m, n)?;
    let mut a = Vec::with_capacity(m * n);
    let mut b = Vec::with_capacity(m * n);
    let mut payload = Vec::with_capacity(m * n);
    for _ in 0..m * n {
        a.push(r.left()?);
        b.push(r.target()?);
        payload.push(r.bytes("payload", MAX_PAYLOAD_LEN)?.to_vec());
    }
    r.finish()?;
    let bad = |_| DecodeError::Invalid("catalog grid");
    let cat = EncryptedCatalog {
        a: Grid::from_row_major(m, n, a).map_err(bad)?,
        b: Grid::from_row_major(m, n, b).map_err(bad)?,
        payload: Grid::from_row_major(m, n, payload).map_err(bad)?,
    };
    Ok((pp, cat))
}

/// Secret-key file: `"OLBSQSK\0"`, version, curve id, then
/// `alpha1, alpha2, beta1, beta2, x, y` (32 bytes each) and `hfrak` (96 bytes).
/// Store it readable by the provider account only (mode 0600).
pub fn encode_secret_key(params: ParameterSet, sk: &SecretKey) -> Vec<u8> {
    let mut w = Writer::new();
    write_header(&mut w, SECRET_KEY_MAGIC, params);
    for s in [&sk.alpha1, &sk.alpha2, &sk.beta1, &sk.beta2, &sk.x, &sk.y] {
        w.scalar(s);
    }
    w.right(&sk.h_frak);
    w.finish()
}

pub fn decode_secret_key(bytes: &[u8]) -> Result<(ParameterSet, SecretKey), DecodeError> {
    let mut r = Reader::new(bytes);
    let params = read_header(&mut r, SECRET_KEY_MAGIC, "secret key")?;
    let sk = SecretKey {
        alpha1: r.scalar()?,
        alpha2: r.scalar()?,
        beta1: r.scalar()?,
        beta2: r.scalar()?,
        x: r.scalar()?,
        y: r.scalar()?,
        h_frak: r.right()?,
    };
    r.finish()?;
    Ok((params, sk))
}
