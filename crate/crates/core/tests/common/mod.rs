#![allow(dead_code)]

pub mod criteria;
pub mod identities;

use std::net::SocketAddr;
use std::sync::Arc;
use std::thread::JoinHandle;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use olbsq::catalog::{setup, EncryptedCatalog, PublicParams, SecretKey};
use olbsq::grid::Grid;
use olbsq::group::ParameterSet;
use olbsq::server::{ProviderState, Server, ServerStats, ShutdownHandle, StatsSnapshot};
use olbsq::transfer::{derive_keys, KeyBundle};
use olbsq::zkp::{build_query, ProofU, QueryCommitments, UserQueryState};

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Payloads of random length, tagged with their cell so mix-ups are visible.
pub fn random_services(m: usize, n: usize, rng: &mut ChaCha20Rng) -> Grid<Vec<u8>> {
    Grid::from_fn(m, n, |i, j| {
        let mut p = format!("({i},{j})").into_bytes();
        let extra = rng.gen_range(0..24);
        p.extend((0..extra).map(|_| rng.gen::<u8>()));
        p
    })
}

/// A random valid `(i, j, l, k)` on an `m x n` grid. Needs `m, n >= 2`.
pub fn random_query(m: usize, n: usize, rng: &mut ChaCha20Rng) -> (usize, usize, usize, usize) {
    let l = rng.gen_range(1..m);
    let k = rng.gen_range(1..n);
    let i = rng.gen_range(1..=m - l);
    let j = rng.gen_range(1..=n - k);
    (i, j, l, k)
}

/// Every valid `(i, l)` pair along one axis of length `m`.
pub fn axis_queries(m: usize) -> Vec<(usize, usize)> {
    (1..m).flat_map(|i| (1..=m - i).map(move |l| (i, l))).collect()
}

pub struct World {
    pub sk: SecretKey,
    pub pp: PublicParams,
    pub cat: EncryptedCatalog,
    pub services: Grid<Vec<u8>>,
}

impl World {
    pub fn new(m: usize, n: usize, rng: &mut ChaCha20Rng) -> World {
        let services = random_services(m, n, rng);
        let (sk, pp, cat) = setup(ParameterSet::default(), &services, rng).expect("setup");
        World { sk, pp, cat, services }
    }
}

/// A setup plus one honest query and its keys.
pub struct Instance {
    pub world: World,
    pub state: UserQueryState,
    pub omega: QueryCommitments,
    pub proof: ProofU,
    pub keys: KeyBundle,
}

impl Instance {
    /// Grid sides in `2..=4`, random rectangle.
    pub fn random(seed: u64) -> Instance {
        let mut rng = rng(seed);
        let m = rng.gen_range(2..=4);
        let n = rng.gen_range(2..=4);
        let world = World::new(m, n, &mut rng);
        let (i, j, l, k) = random_query(m, n, &mut rng);
        let (state, omega, proof) = build_query(&world.pp, i, j, l, k, &mut rng).expect("valid query");
        let keys = derive_keys(&world.sk, &world.pp, &omega).expect("keys");
        Instance {
            world,
            state,
            omega,
            proof,
            keys,
        }
    }
}

/// A provider daemon on an ephemeral local port.
pub struct TestServer {
    pub addr: SocketAddr,
    pub world: World,
    shutdown: ShutdownHandle,
    stats: Arc<ServerStats>,
    thread: Option<JoinHandle<olbsq::error::Result<()>>>,
}

impl TestServer {
    pub fn start(m: usize, n: usize, max_cells: usize, seed: u64) -> TestServer {
        let mut rng = rng(seed);
        let world = World::new(m, n, &mut rng);
        let state = ProviderState::new(world.sk.clone(), world.pp.clone(), max_cells)
            .expect("state")
            .with_read_timeout(Some(Duration::from_secs(5)));
        let server = Server::bind("127.0.0.1:0", state).expect("bind");
        let addr = server.local_addr().unwrap();
        let shutdown = server.shutdown_handle().unwrap();
        let stats = server.stats();
        let thread = std::thread::spawn(move || server.run());
        TestServer {
            addr,
            world,
            shutdown,
            stats,
            thread: Some(thread),
        }
    }

    pub fn stats(&self) -> StatsSnapshot {
        self.stats.snapshot()
    }

    /// Stops accepting, waits for open sessions, returns the final counters.
    pub fn stop(mut self) -> StatsSnapshot {
        self.shutdown.shutdown();
        if let Some(t) = self.thread.take() {
            t.join().expect("server thread").expect("server run");
        }
        self.stats.snapshot()
    }
}

impl Drop for TestServer {
    fn drop(&mut self) {
        if self.thread.is_some() {
            self.shutdown.shutdown();
        }
    }
}
