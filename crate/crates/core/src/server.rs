//! Provider daemon: one session per TCP connection, one thread per session.
//!
//! A session reads the opening frame, answers with the provider proof, reads the
//! query and answers with the key bundle. Any failure is reported with an Abort
//! frame and ends the session; nothing a peer sends can take the daemon down.

use std::io::{self, Read};
use std::net::{Shutdown, SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::thread::{self, JoinHandle};
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::catalog::{PublicParams, SecretKey};
use crate::error::{Error, Rejection, Result};
use crate::files;
use crate::group::{pair, TargetElement};
use crate::transfer::ProviderSession;
use crate::wire::{self, AbortReason, Frame, FrameError, MsgType, SessionId, DEFAULT_MAX_FRAME};

pub const DEFAULT_MAX_CELLS: usize = 1024;
pub const DEFAULT_READ_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Clone)]
pub struct ProviderConfig {
    pub listen: String,
    pub catalog: PathBuf,
    pub secret_key: PathBuf,
    /// Largest `l * k` answered. At least 1.
    pub max_cells: usize,
    /// `log` filter such as `info` or `olbsq=debug`. Applied by the binary.
    pub log_level: String,
    pub max_frame: usize,
    pub read_timeout: Option<Duration>,
}

impl ProviderConfig {
    pub fn new(listen: impl Into<String>, catalog: impl Into<PathBuf>, secret_key: impl Into<PathBuf>) -> Self {
        ProviderConfig {
            listen: listen.into(),
            catalog: catalog.into(),
            secret_key: secret_key.into(),
            max_cells: DEFAULT_MAX_CELLS,
            log_level: "info".into(),
            max_frame: DEFAULT_MAX_FRAME,
            read_timeout: Some(DEFAULT_READ_TIMEOUT),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_cells == 0 {
            return Err(Error::argument("max cells per query must be at least 1"));
        }
        if self.max_frame < wire::HEADER_LEN {
            return Err(Error::argument("max frame size is smaller than a frame header"));
        }
        Ok(())
    }
}

/// Read-only material shared by every session.
#[derive(Debug)]
pub struct ProviderState {
    sk: SecretKey,
    pp: PublicParams,
    max_cells: usize,
    max_frame: usize,
    read_timeout: Option<Duration>,
}

impl ProviderState {
    /// Loads and cross-checks the catalog and secret key named in `config`.
    pub fn load(config: &ProviderConfig) -> Result<Self> {
        config.validate()?;
        let (pp, _) = files::load_catalog(&config.catalog)?;
        let (params, sk) = files::load_secret_key(&config.secret_key)?;
        if params != pp.params {
            return Err(Error::argument("secret key and catalog use different curves"));
        }
        let mut state = ProviderState::new(sk, pp, config.max_cells)?;
        state.max_frame = config.max_frame;
        state.read_timeout = config.read_timeout;
        Ok(state)
    }

    /// Fails if `sk` does not belong to `pp`.
    pub fn new(sk: SecretKey, pp: PublicParams, max_cells: usize) -> Result<Self> {
        if max_cells == 0 {
            return Err(Error::argument("max cells per query must be at least 1"));
        }
        let h: TargetElement = pair(&pp.g_frak, &sk.h_frak);
        if h != pp.big_h {
            return Err(Error::argument("secret key does not match the public parameters"));
        }
        Ok(ProviderState {
            sk,
            pp,
            max_cells,
            max_frame: DEFAULT_MAX_FRAME,
            read_timeout: Some(DEFAULT_READ_TIMEOUT),
        })
    }

    pub fn with_read_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.read_timeout = timeout;
        self
    }

    pub fn with_max_frame(mut self, max_frame: usize) -> Self {
        self.max_frame = max_frame;
        self
    }

    pub fn public_params(&self) -> &PublicParams {
        &self.pp
    }
}

/// How a session ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Completed,
    /// We sent an Abort frame.
    Aborted(AbortReason),
    /// The peer sent an Abort frame.
    PeerAborted,
    /// The peer went away or the socket failed.
    Disconnected,
}

#[derive(Debug, Default)]
pub struct ServerStats {
    accepted: AtomicU64,
    completed: AtomicU64,
    aborted: AtomicU64,
    peer_aborted: AtomicU64,
    disconnected: AtomicU64,
    panicked: AtomicU64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StatsSnapshot {
    pub accepted: u64,
    pub completed: u64,
    pub aborted: u64,
    pub peer_aborted: u64,
    pub disconnected: u64,
    pub panicked: u64,
}

impl StatsSnapshot {
    pub fn finished(&self) -> u64 {
        self.completed + self.aborted + self.peer_aborted + self.disconnected + self.panicked
    }
}

impl ServerStats {
    pub fn snapshot(&self) -> StatsSnapshot {
        StatsSnapshot {
            accepted: self.accepted.load(Ordering::SeqCst),
            completed: self.completed.load(Ordering::SeqCst),
            aborted: self.aborted.load(Ordering::SeqCst),
            peer_aborted: self.peer_aborted.load(Ordering::SeqCst),
            disconnected: self.disconnected.load(Ordering::SeqCst),
            panicked: self.panicked.load(Ordering::SeqCst),
        }
    }

    fn record(&self, outcome: Option<Outcome>) {
        let counter = match outcome {
            Some(Outcome::Completed) => &self.completed,
            Some(Outcome::Aborted(_)) => &self.aborted,
            Some(Outcome::PeerAborted) => &self.peer_aborted,
            Some(Outcome::Disconnected) => &self.disconnected,
            None => &self.panicked,
        };
        counter.fetch_add(1, Ordering::SeqCst);
    }
}

/// Stops a running [`Server`] from another thread.
#[derive(Debug, Clone)]
pub struct ShutdownHandle {
    flag: Arc<AtomicBool>,
    addr: SocketAddr,
}

impl ShutdownHandle {
    pub fn shutdown(&self) {
        self.flag.store(true, Ordering::SeqCst);
        // Wake the accept loop.
        let _ = TcpStream::connect_timeout(&self.addr, Duration::from_secs(1));
    }
}

pub struct Server {
    listener: TcpListener,
    state: Arc<ProviderState>,
    stats: Arc<ServerStats>,
    stop: Arc<AtomicBool>,
}

impl Server {
    pub fn bind(addr: impl ToSocketAddrs, state: ProviderState) -> Result<Self> {
        let listener = TcpListener::bind(addr)?;
        Ok(Server {
            listener,
            state: Arc::new(state),
            stats: Arc::default(),
            stop: Arc::default(),
        })
    }

    pub fn local_addr(&self) -> Result<SocketAddr> {
        Ok(self.listener.local_addr()?)
    }

    pub fn shutdown_handle(&self) -> Result<ShutdownHandle> {
        let mut addr = self.local_addr()?;
        if addr.ip().is_unspecified() {
            addr.set_ip(if addr.is_ipv4() {
                std::net::Ipv4Addr::LOCALHOST.into()
            } else {
                std::net::Ipv6Addr::LOCALHOST.into()
            });
        }
        Ok(ShutdownHandle {
            flag: self.stop.clone(),
            addr,
        })
    }

    pub fn stats(&self) -> Arc<ServerStats> {
        self.stats.clone()
    }

    /// Accepts connections until shut down, then waits for open sessions.
    pub fn run(self) -> Result<()> {
        let mut workers: Vec<JoinHandle<()>> = Vec::new();
        for conn in self.listener.incoming() {
            if self.stop.load(Ordering::SeqCst) {
                break;
            }
            let stream = match conn {
                Ok(s) => s,
                Err(e) => {
                    log::warn!("accept failed: {e}");
                    continue;
                }
            };
            self.stats.accepted.fetch_add(1, Ordering::SeqCst);
            let state = self.state.clone();
            let stats = self.stats.clone();
            workers.retain(|w| !w.is_finished());
            workers.push(thread::spawn(move || serve_connection(stream, &state, &stats)));
        }
        for w in workers {
            let _ = w.join();
        }
        Ok(())
    }
}

/// Loads the configured files, binds and serves until the process ends.
pub fn serve(config: &ProviderConfig) -> Result<()> {
    let state = ProviderState::load(config)?;
    let server = Server::bind(config.listen.as_str(), state)?;
    log::info!(
        "serving {}x{} catalog on {}",
        server.state.pp.m,
        server.state.pp.n,
        server.local_addr()?
    );
    server.run()
}

fn serve_connection(mut stream: TcpStream, state: &ProviderState, stats: &ServerStats) {
    let peer = stream.peer_addr().map(|a| a.to_string()).unwrap_or_else(|_| "?".into());
    let _ = stream.set_read_timeout(state.read_timeout);
    let _ = stream.set_write_timeout(state.read_timeout);
    let result = panic::catch_unwind(AssertUnwindSafe(|| run_session(&mut stream, state)));
    let outcome = match result {
        Ok(o) => Some(o),
        Err(_) => {
            log::error!("session with {peer} panicked");
            send_abort(&mut stream, [0; 16], AbortReason::Internal, "internal error");
            None
        }
    };
    log::debug!("session with {peer} ended: {outcome:?}");
    stats.record(outcome);
    linger(&mut stream);
}

/// Half-closes and drains what the peer still sends, so that unread input does
/// not turn our close into a reset that discards the final frame in flight.
fn linger(stream: &mut TcpStream) {
    const LIMIT: usize = 1 << 20;
    let _ = stream.shutdown(Shutdown::Write);
    let _ = stream.set_read_timeout(Some(Duration::from_millis(500)));
    let mut buf = [0u8; 8192];
    let mut drained = 0;
    while drained < LIMIT {
        match stream.read(&mut buf) {
            Ok(0) | Err(_) => break,
            Ok(n) => drained += n,
        }
    }
}

fn send_abort(stream: &mut TcpStream, sid: SessionId, reason: AbortReason, message: &str) {
    let frame = Frame::new(sid, MsgType::Abort, wire::encode_abort(reason, message));
    let _ = frame.write_to(stream);
}

fn abort(stream: &mut TcpStream, sid: SessionId, reason: AbortReason, message: &str) -> Outcome {
    log::info!("aborting session: {reason}: {message}");
    send_abort(stream, sid, reason, message);
    Outcome::Aborted(reason)
}

fn read_failure(stream: &mut TcpStream, sid: SessionId, err: FrameError) -> Outcome {
    match err {
        FrameError::Io(ref e) if matches!(e.kind(), io::ErrorKind::WouldBlock | io::ErrorKind::TimedOut) => {
            abort(stream, sid, AbortReason::MalformedFrame, "read timed out")
        }
        e => match e.abort_reason() {
            Some(reason) => abort(stream, sid, reason, &e.to_string()),
            None => Outcome::Disconnected,
        },
    }
}

/// Maps a provider-side protocol error to the reason sent to the user.
pub fn abort_reason_for(err: &Error) -> AbortReason {
    match err {
        Error::QueryTooLarge { .. } => AbortReason::QueryTooLarge,
        Error::Argument(_) | Error::Rejected(Rejection::Shape(_)) => AbortReason::QueryOutOfRange,
        Error::Rejected(_) => AbortReason::QueryProofInvalid,
        Error::Decode(_) => AbortReason::MalformedFrame,
        _ => AbortReason::Internal,
    }
}

fn run_session(stream: &mut TcpStream, state: &ProviderState) -> Outcome {
    let mut rng = ChaCha20Rng::from_entropy();

    let hello = match Frame::read_from(stream, state.max_frame) {
        Ok(f) => f,
        Err(e) => return read_failure(stream, [0; 16], e),
    };
    let sid = hello.session_id;
    match hello.msg_type {
        MsgType::Abort => return Outcome::PeerAborted,
        MsgType::ProviderProof if hello.body.is_empty() => {}
        MsgType::ProviderProof => {
            return abort(
                stream,
                sid,
                AbortReason::MalformedFrame,
                "session request carries a body",
            )
        }
        other => {
            return abort(
                stream,
                sid,
                AbortReason::UnexpectedMessage,
                &format!("{other:?} before session start"),
            )
        }
    }

    let mut session = ProviderSession::new(&state.sk, &state.pp, state.max_cells);
    let proof = match session.open(&mut rng) {
        Ok(p) => p,
        Err(e) => return abort(stream, sid, AbortReason::Internal, &e.to_string()),
    };
    if Frame::new(sid, MsgType::ProviderProof, proof.to_bytes())
        .write_to(stream)
        .is_err()
    {
        return Outcome::Disconnected;
    }

    let query = match Frame::read_from(stream, state.max_frame) {
        Ok(f) => f,
        Err(e) => return read_failure(stream, sid, e),
    };
    if query.session_id != sid {
        return abort(
            stream,
            sid,
            AbortReason::SessionMismatch,
            "query carries a different session id",
        );
    }
    match query.msg_type {
        MsgType::Query => {}
        MsgType::Abort => return Outcome::PeerAborted,
        other => {
            return abort(
                stream,
                sid,
                AbortReason::UnexpectedMessage,
                &format!("expected Query, got {other:?}"),
            )
        }
    }
    let (omega, proof) = match wire::decode_query(&query.body) {
        Ok(q) => q,
        Err(e) => return abort(stream, sid, AbortReason::MalformedFrame, &e.to_string()),
    };
    let (keys, key_proof) = match session.answer(&omega, &proof, &mut rng) {
        Ok(r) => r,
        Err(e) => return abort(stream, sid, abort_reason_for(&e), &e.to_string()),
    };
    let body = wire::encode_keys(&keys, &key_proof);
    match Frame::new(sid, MsgType::KeyBundle, body).write_to(stream) {
        Ok(()) => Outcome::Completed,
        Err(_) => Outcome::Disconnected,
    }
}
