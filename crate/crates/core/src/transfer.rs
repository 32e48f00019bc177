//! Service transfer: the provider's oblivious key derivation, the user's
//! recovery of the queried rectangle, the session state machines that enforce
//! message order, and the ideal-functionality reference.

use rand::{CryptoRng, RngCore};

use crate::catalog::{powers, running_powers, unwrap_payload, EncryptedCatalog, PublicParams, SecretKey};
use crate::codec::{Reader, Writer};
use crate::error::{Cell, DecodeError, Error, Rejection, Result};
use crate::grid::Grid;
use crate::group::{pair, LeftElement, TargetElement};
use crate::zkp::{
    build_query, key_derivation::read_rectangle, prove_sp1, prove_sp2, verify_query, verify_sp1, verify_sp2, ProofSP1,
    ProofSP2, ProofU, QueryCommitments, UserQueryState, PROOF_VERSION,
};

/// The provider's reply: `K` and `L` for every cell of the `l x k` rectangle,
/// plus `H` echoed back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyBundle {
    /// `K_{mu,nu} = E1 g1^mu E2 h1^nu F1^(x^mu) J1^(y^nu)`.
    pub k_keys: Grid<LeftElement>,
    /// `L_{mu,nu} = e(K_{mu,nu}, hfrak)`.
    pub l_keys: Grid<TargetElement>,
    pub big_h: TargetElement,
}

impl KeyBundle {
    pub fn l(&self) -> usize {
        self.k_keys.cols()
    }

    pub fn k(&self) -> usize {
        self.k_keys.rows()
    }

    pub fn k_cell(&self, mu: usize, nu: usize) -> &LeftElement {
        self.k_keys.at(mu, nu)
    }

    pub fn l_cell(&self, mu: usize, nu: usize) -> &TargetElement {
        self.l_keys.at(mu, nu)
    }

    fn is_well_formed(&self) -> bool {
        (self.l_keys.cols(), self.l_keys.rows()) == (self.l(), self.k())
    }

    /// `version || u32 l || u32 k || K cells || L cells || H`, cells row-major.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.encode_into(&mut w);
        w.finish()
    }

    pub(crate) fn encode_into(&self, w: &mut Writer) {
        w.u8(PROOF_VERSION).len(self.l()).len(self.k());
        for kc in self.k_keys.values() {
            w.left(kc);
        }
        for lc in self.l_keys.values() {
            w.target(lc);
        }
        w.target(&self.big_h);
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = Reader::new(bytes);
        let keys = Self::decode_from(&mut r)?;
        r.finish()?;
        Ok(keys)
    }

    pub(crate) fn decode_from(r: &mut Reader<'_>) -> Result<Self, DecodeError> {
        let version = r.u8("key bundle version")?;
        if version != PROOF_VERSION {
            return Err(DecodeError::Version {
                what: "key bundle",
                version,
            });
        }
        let (l, k) = read_rectangle(r)?;
        let k_keys = Grid::try_from_fn(l, k, |_, _| r.left())?;
        let l_keys = Grid::try_from_fn(l, k, |_, _| r.target())?;
        Ok(KeyBundle {
            k_keys,
            l_keys,
            big_h: r.target()?,
        })
    }
}

/// Derives the keys for a query using only `(x, y, hfrak)` and the public
/// commitments. The start point is not an input.
///
/// Row and column factors are built once (`l + k` exponentiations; powers of
/// `x`, `y`, `g1`, `h1` by repeated multiplication) and combined per cell.
pub fn derive_keys(sk: &SecretKey, pp: &PublicParams, omega: &QueryCommitments) -> Result<KeyBundle> {
    let (l, k) = (omega.l, omega.k);
    if l == 0 || k == 0 {
        return Err(Error::argument("query rectangle is empty"));
    }
    if l >= pp.m || k >= pp.n {
        return Err(Error::argument(format!(
            "a {l}x{k} rectangle cannot fit a {}x{} grid",
            pp.m, pp.n
        )));
    }
    let cols: Vec<LeftElement> = running_powers(&pp.g1.left, l)
        .iter()
        .zip(powers(&sk.x, l))
        .map(|(g1_mu, x_mu)| omega.e1 * *g1_mu * omega.f1.pow(&x_mu))
        .collect();
    let rows: Vec<LeftElement> = running_powers(&pp.h1.left, k)
        .iter()
        .zip(powers(&sk.y, k))
        .map(|(h1_nu, y_nu)| omega.e2 * *h1_nu * omega.j1.pow(&y_nu))
        .collect();
    let k_keys = Grid::from_fn(l, k, |mu, nu| cols[mu - 1] * rows[nu - 1]);
    let l_keys = k_keys.map(|kc| pair(kc, &sk.h_frak));
    Ok(KeyBundle {
        k_keys,
        l_keys,
        big_h: pp.big_h,
    })
}

/// Payloads of a retrieved rectangle, addressed by absolute grid cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredServices {
    origin: (usize, usize),
    cells: Grid<Vec<u8>>,
}

impl RecoveredServices {
    /// The start point `(i, j)`; cells run from `(i + 1, j + 1)` to `(i + l, j + k)`.
    pub fn origin(&self) -> (usize, usize) {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Payload of absolute cell `(col, row)`, if inside the rectangle.
    pub fn get(&self, col: usize, row: usize) -> Option<&[u8]> {
        let mu = col.checked_sub(self.origin.0)?;
        let nu = row.checked_sub(self.origin.1)?;
        self.cells.get(mu, nu).map(Vec::as_slice)
    }

    /// `(absolute cell, payload)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, &[u8])> {
        let (i, j) = self.origin;
        self.cells.iter().map(move |((mu, nu), p)| {
            (
                Cell {
                    col: i + mu,
                    row: j + nu,
                },
                p.as_slice(),
            )
        })
    }
}

/// Removes the user's blinding from verified keys and opens each payload:
/// `P = L / (H^(-(r1+r2)) C_{mu,3}^(r3) D_{nu,3}^(r5))`, `M = B / P`.
///
/// `H^(-(r1+r2))` is computed once per session, the other two factors per cell.
/// Does not check the key proof; [`recover_services`] does.
pub fn unmask_cells(
    state: &UserQueryState,
    pp: &PublicParams,
    keys: &KeyBundle,
    cat: &EncryptedCatalog,
) -> Result<RecoveredServices> {
    let (i, j, l, k) = (state.i(), state.j(), state.l(), state.k());
    if (keys.l(), keys.k()) != (l, k) || !keys.is_well_formed() {
        return Err(Rejection::Shape("key bundle size differs from the query").into());
    }
    if (cat.m(), cat.n()) != (pp.m, pp.n) {
        return Err(Error::argument("catalog and public parameters disagree on grid size"));
    }
    let session = pp.big_h.pow(&-(*state.r(1) + *state.r(2)));
    let (r3, r5) = (state.r(3), state.r(5));
    let cells = Grid::try_from_fn(l, k, |mu, nu| {
        let blind = session * pp.c(mu).target.pow(r3) * pp.d(nu).target.pow(r5);
        let p = *keys.l_cell(mu, nu) / blind;
        let (col, row) = (i + mu, j + nu);
        let mask = *cat.b.at(col, row) / p;
        unwrap_payload(&mask, cat.payload.at(col, row)).map_err(|_| Error::Integrity(Cell { col, row }))
    })?;
    Ok(RecoveredServices { origin: (i, j), cells })
}

/// Verifies the key proof, then unmasks. Nothing is returned if any check fails.
pub fn recover_services(
    state: &UserQueryState,
    pp: &PublicParams,
    keys: &KeyBundle,
    proof: &ProofSP2,
    cat: &EncryptedCatalog,
) -> Result<RecoveredServices> {
    verify_sp2(pp, state.commitments(), keys, proof)?;
    unmask_cells(state, pp, keys, cat)
}

/// The trusted-party reference: the payloads of cells `(i + mu, j + nu)` for
/// `mu in 1..=l`, `nu in 1..=k`, or `None` if the provider refuses or the
/// rectangle does not fit.
pub fn ideal_functionality(
    plain: &Grid<Vec<u8>>,
    i: usize,
    j: usize,
    l: usize,
    k: usize,
    provider_accepts: bool,
) -> Option<RecoveredServices> {
    if !provider_accepts {
        return None;
    }
    crate::zkp::query::check_query_range(plain.cols(), plain.rows(), i, j, l, k).ok()?;
    Some(RecoveredServices {
        origin: (i, j),
        cells: Grid::from_fn(l, k, |mu, nu| plain.at(i + mu, j + nu).clone()),
    })
}

/// Phase of a user session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UserPhase {
    Init,
    ProviderProven,
    QuerySent,
    KeysReceived,
    Done,
    Aborted,
}

impl UserPhase {
    fn name(self) -> &'static str {
        match self {
            UserPhase::Init => "Init",
            UserPhase::ProviderProven => "ProviderProven",
            UserPhase::QuerySent => "QuerySent",
            UserPhase::KeysReceived => "KeysReceived",
            UserPhase::Done => "Done",
            UserPhase::Aborted => "Aborted",
        }
    }
}

/// User side of one transfer. Every step checks the current phase; any
/// verification failure moves the session to `Aborted` for good.
#[derive(Debug)]
pub struct UserSession<'a> {
    pp: &'a PublicParams,
    phase: UserPhase,
    query: Option<UserQueryState>,
    keys: Option<KeyBundle>,
}

impl<'a> UserSession<'a> {
    pub fn new(pp: &'a PublicParams) -> Self {
        UserSession {
            pp,
            phase: UserPhase::Init,
            query: None,
            keys: None,
        }
    }

    pub fn phase(&self) -> UserPhase {
        self.phase
    }

    fn expect(&self, phase: UserPhase, action: &'static str) -> Result<()> {
        if self.phase == phase {
            Ok(())
        } else {
            Err(Error::Transition {
                state: self.phase.name(),
                action,
            })
        }
    }

    fn fail<T>(&mut self, err: impl Into<Error>) -> Result<T> {
        self.phase = UserPhase::Aborted;
        self.query = None;
        self.keys = None;
        Err(err.into())
    }

    pub fn abort(&mut self) {
        self.phase = UserPhase::Aborted;
        self.query = None;
        self.keys = None;
    }

    pub fn accept_provider_proof(&mut self, proof: &ProofSP1) -> Result<()> {
        self.expect(UserPhase::Init, "accept the provider proof")?;
        match verify_sp1(self.pp, proof) {
            Ok(()) => {
                self.phase = UserPhase::ProviderProven;
                Ok(())
            }
            Err(e) => self.fail(e),
        }
    }

    /// Builds the query. A rectangle that does not fit is an argument error and
    /// leaves the session where it was.
    pub fn make_query<R: RngCore + CryptoRng>(
        &mut self,
        i: usize,
        j: usize,
        l: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<(QueryCommitments, ProofU)> {
        self.expect(UserPhase::ProviderProven, "send a query")?;
        let (state, omega, proof) = build_query(self.pp, i, j, l, k, rng)?;
        self.query = Some(state);
        self.phase = UserPhase::QuerySent;
        Ok((omega, proof))
    }

    pub fn accept_keys(&mut self, keys: KeyBundle, proof: &ProofSP2) -> Result<()> {
        self.expect(UserPhase::QuerySent, "accept keys")?;
        let state = self.query.as_ref().expect("query is stored once sent");
        if !keys.is_well_formed() {
            return self.fail(Rejection::Shape("key bundle grids differ in size"));
        }
        match verify_sp2(self.pp, state.commitments(), &keys, proof) {
            Ok(()) => {
                self.keys = Some(keys);
                self.phase = UserPhase::KeysReceived;
                Ok(())
            }
            Err(e) => self.fail(e),
        }
    }

    pub fn recover(&mut self, cat: &EncryptedCatalog) -> Result<RecoveredServices> {
        self.expect(UserPhase::KeysReceived, "recover services")?;
        let state = self.query.as_ref().expect("query is stored once sent");
        let keys = self.keys.as_ref().expect("keys are stored once accepted");
        match unmask_cells(state, self.pp, keys, cat) {
            Ok(out) => {
                self.phase = UserPhase::Done;
                Ok(out)
            }
            Err(e) => self.fail(e),
        }
    }
}

/// Phase of a provider session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProviderPhase {
    Init,
    ProofSent,
    Done,
    Aborted,
}

impl ProviderPhase {
    fn name(self) -> &'static str {
        match self {
            ProviderPhase::Init => "Init",
            ProviderPhase::ProofSent => "ProofSent",
            ProviderPhase::Done => "Done",
            ProviderPhase::Aborted => "Aborted",
        }
    }
}

/// Provider side of one transfer.
#[derive(Debug)]
pub struct ProviderSession<'a> {
    sk: &'a SecretKey,
    pp: &'a PublicParams,
    max_cells: usize,
    phase: ProviderPhase,
}

impl<'a> ProviderSession<'a> {
    /// `max_cells` caps `l * k` per query.
    pub fn new(sk: &'a SecretKey, pp: &'a PublicParams, max_cells: usize) -> Self {
        ProviderSession {
            sk,
            pp,
            max_cells,
            phase: ProviderPhase::Init,
        }
    }

    pub fn phase(&self) -> ProviderPhase {
        self.phase
    }

    pub fn abort(&mut self) {
        self.phase = ProviderPhase::Aborted;
    }

    fn expect(&self, phase: ProviderPhase, action: &'static str) -> Result<()> {
        if self.phase == phase {
            Ok(())
        } else {
            Err(Error::Transition {
                state: self.phase.name(),
                action,
            })
        }
    }

    pub fn open<R: RngCore + CryptoRng>(&mut self, rng: &mut R) -> Result<ProofSP1> {
        self.expect(ProviderPhase::Init, "send the provider proof")?;
        self.phase = ProviderPhase::ProofSent;
        Ok(prove_sp1(&self.sk.h_frak, self.pp, rng))
    }

    /// Verifies the query, then derives and proves the keys.
    pub fn answer<R: RngCore + CryptoRng>(
        &mut self,
        omega: &QueryCommitments,
        proof: &ProofU,
        rng: &mut R,
    ) -> Result<(KeyBundle, ProofSP2)> {
        self.expect(ProviderPhase::ProofSent, "answer a query")?;
        self.phase = ProviderPhase::Aborted;
        let cells = omega.l as u64 * omega.k as u64;
        if cells > self.max_cells as u64 {
            return Err(Error::QueryTooLarge {
                cells,
                max: self.max_cells as u64,
            });
        }
        verify_query(self.pp, omega, proof)?;
        let keys = derive_keys(self.sk, self.pp, omega)?;
        let key_proof = prove_sp2(self.sk, self.pp, omega, &keys, rng);
        self.phase = ProviderPhase::Done;
        Ok((keys, key_proof))
    }
}
