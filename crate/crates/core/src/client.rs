//! User side of the wire protocol.

use std::net::{TcpStream, ToSocketAddrs};
use std::time::Duration;

use rand::{CryptoRng, RngCore};

use crate::catalog::{EncryptedCatalog, PublicParams};
use crate::error::{Error, Result};
use crate::transfer::{RecoveredServices, UserSession};
use crate::wire::{self, AbortReason, Frame, FrameError, MsgType, SessionId, DEFAULT_MAX_FRAME};
use crate::zkp::{check_query_range, ProofSP1};

#[derive(Debug, Clone, Copy)]
pub struct ClientOptions {
    pub timeout: Option<Duration>,
    pub max_frame: usize,
}

impl Default for ClientOptions {
    fn default() -> Self {
        ClientOptions {
            timeout: Some(Duration::from_secs(60)),
            max_frame: DEFAULT_MAX_FRAME,
        }
    }
}

/// Runs one transfer against the provider at `addr` with default options.
#[allow(clippy::too_many_arguments)]
pub fn run_query<A: ToSocketAddrs, R: RngCore + CryptoRng>(
    addr: A,
    pp: &PublicParams,
    cat: &EncryptedCatalog,
    i: usize,
    j: usize,
    l: usize,
    k: usize,
    rng: &mut R,
) -> Result<RecoveredServices> {
    run_query_with(addr, pp, cat, (i, j, l, k), &ClientOptions::default(), rng)
}

/// Runs one transfer. The rectangle `(i, j, l, k)` is checked before connecting.
pub fn run_query_with<A: ToSocketAddrs, R: RngCore + CryptoRng>(
    addr: A,
    pp: &PublicParams,
    cat: &EncryptedCatalog,
    (i, j, l, k): (usize, usize, usize, usize),
    opts: &ClientOptions,
    rng: &mut R,
) -> Result<RecoveredServices> {
    check_query_range(pp.m, pp.n, i, j, l, k)?;
    if (cat.m(), cat.n()) != (pp.m, pp.n) {
        return Err(Error::argument("catalog grid does not match the public parameters"));
    }

    let mut stream = TcpStream::connect(addr)?;
    stream.set_read_timeout(opts.timeout)?;
    stream.set_write_timeout(opts.timeout)?;
    let mut sid: SessionId = [0; wire::SESSION_ID_LEN];
    rng.fill_bytes(&mut sid);
    let mut session = UserSession::new(pp);

    Frame::new(sid, MsgType::ProviderProof, Vec::new()).write_to(&mut stream)?;
    let body = expect(&mut stream, sid, MsgType::ProviderProof, opts.max_frame)?;
    let verified = ProofSP1::from_bytes(&body)
        .map_err(Error::from)
        .and_then(|p| session.accept_provider_proof(&p));
    if let Err(e) = verified {
        send_abort(&mut stream, sid, AbortReason::ProviderProofInvalid, &e.to_string());
        return Err(e);
    }

    let (omega, proof) = session.make_query(i, j, l, k, rng)?;
    Frame::new(sid, MsgType::Query, wire::encode_query(&omega, &proof)).write_to(&mut stream)?;

    let body = expect(&mut stream, sid, MsgType::KeyBundle, opts.max_frame)?;
    let accepted = wire::decode_keys(&body)
        .map_err(Error::from)
        .and_then(|(keys, proof)| session.accept_keys(keys, &proof));
    if let Err(e) = accepted {
        send_abort(&mut stream, sid, AbortReason::KeyProofInvalid, &e.to_string());
        return Err(e);
    }
    session.recover(cat)
}

fn send_abort(stream: &mut TcpStream, sid: SessionId, reason: AbortReason, message: &str) {
    let _ = Frame::new(sid, MsgType::Abort, wire::encode_abort(reason, message)).write_to(stream);
}

/// Reads the next frame and returns its body if it has the wanted type.
fn expect(stream: &mut TcpStream, sid: SessionId, want: MsgType, max_frame: usize) -> Result<Vec<u8>> {
    let frame = match Frame::read_from(stream, max_frame) {
        Ok(f) => f,
        Err(FrameError::Io(e)) => return Err(Error::Io(e)),
        Err(e) => return Err(Error::Aborted(e.to_string())),
    };
    if frame.msg_type == MsgType::Abort {
        let (reason, message) = wire::decode_abort(&frame.body)?;
        return Err(Error::PeerAborted { reason, message });
    }
    if frame.session_id != sid {
        send_abort(
            stream,
            sid,
            AbortReason::SessionMismatch,
            "reply carries a different session id",
        );
        return Err(Error::Aborted("provider replied with a different session id".into()));
    }
    if frame.msg_type != want {
        send_abort(stream, sid, AbortReason::UnexpectedMessage, "unexpected reply");
        return Err(Error::Aborted(format!("expected {want:?}, got {:?}", frame.msg_type)));
    }
    Ok(frame.body)
}
