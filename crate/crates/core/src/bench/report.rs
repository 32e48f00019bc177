//! Measured costs next to the published cost tables.
//!
//! Published formulas are transcribed as functions of `(m, n, l, k)` below. The
//! report evaluates them at the measured point, and over a small sweep fits both
//! the measured counters and the formulas to the same monomials so that shape
//! differences show up as differing coefficients.

use std::fmt;

use rand::{CryptoRng, RngCore};

use super::fit::{fit_affine, AffineFit};
use super::harness::{Bench, Traffic, TransferCounts};
use super::{OpCounts, Region};
use crate::error::{Error, Result};
use crate::group::ParameterSet;
use crate::zkp::Blinding;

/// Published computation cost of one phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedCost {
    pub exp_source: u64,
    pub exp_target: u64,
    pub pairings: u64,
    pub hashes: u64,
}

pub fn published_cost(region: Region, m: usize, n: usize, l: usize, k: usize) -> PublishedCost {
    let [m, n, l, k] = [m, n, l, k].map(|v| v as u64);
    let (exp_source, exp_target, pairings, hashes) = match region {
        Region::Setup => (4 + 3 * m + 3 * n + 4 * m * n, m + n, 1 + m * n, 0),
        Region::UserQuery => (16, 17, 15, 13),
        Region::UserRetrieve => (3 * k * l, 2 * (l + k + l * k), 2 * (l + k + l * k), 2 * k * l),
        Region::Provider => (11 + 3 * k * l, 33 + 2 * k * l, 27 + 4 * k * l, 13 + 2 * k * l),
    };
    PublishedCost {
        exp_source,
        exp_target,
        pairings,
        hashes,
    }
}

/// Published communication cost, in elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedTraffic {
    pub source: u64,
    pub target: u64,
    pub scalar: u64,
}

/// `link` is one of `setup`, `user->provider`, `provider->user`.
pub fn published_traffic(link: &str, m: usize, n: usize, l: usize, k: usize) -> Option<PublishedTraffic> {
    let [m, n, l, k] = [m, n, l, k].map(|v| v as u64);
    let (source, target, scalar) = match link {
        "setup" => (10 + 3 * m + 3 * n + m * n, 1 + m + n + m * n, 0),
        "user->provider" => (12, 16, 36),
        "provider->user" => (1 + 3 * k * l, 2 + 2 * k * l + l + k, 1 + 4 * k * l),
        _ => return None,
    };
    Some(PublishedTraffic { source, target, scalar })
}

/// One measured quantity and its published value, if the tables give one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub key: String,
    pub measured: u64,
    pub published: Option<u64>,
}

impl Row {
    pub fn matches(&self) -> Option<bool> {
        self.published.map(|p| p == self.measured)
    }
}

/// A counter fitted over a sweep, next to the published formula fitted over the
/// same points.
#[derive(Debug, Clone)]
pub struct SweepFit {
    pub key: String,
    pub points: usize,
    pub measured: Option<AffineFit>,
    pub published: Option<AffineFit>,
}

impl SweepFit {
    pub fn exact(&self) -> bool {
        self.measured.as_ref().is_some_and(AffineFit::is_exact)
    }

    pub fn matches_published(&self) -> Option<bool> {
        let m = self.measured.as_ref()?.integer_coefficients()?;
        let p = self.published.as_ref()?.integer_coefficients()?;
        Some(m == p)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub k: usize,
    pub rows: Vec<Row>,
    pub fits: Vec<SweepFit>,
    /// Whether every user-query counter and the query size stayed identical
    /// over the transfer sweep.
    pub query_constant: bool,
}

impl Report {
    pub fn get(&self, key: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.key == key)
    }

    pub fn fit(&self, key: &str) -> Option<&SweepFit> {
        self.fits.iter().find(|f| f.key == key)
    }

    /// One `key=value` line per quantity.
    pub fn key_values(&self) -> String {
        let mut out = format!("m={}\nn={}\nl={}\nk={}\n", self.m, self.n, self.l, self.k);
        for r in &self.rows {
            out += &format!("{}={}\n", r.key, r.measured);
            if let Some(p) = r.published {
                out += &format!("published.{}={p}\n", r.key);
            }
        }
        for f in &self.fits {
            let compact = |fit: &Option<AffineFit>| match fit {
                Some(fit) => fit.to_string().replace(' ', ""),
                None => "underdetermined".into(),
            };
            out += &format!("fit.{}={}\n", f.key, compact(&f.measured));
            if let Some(fit) = &f.measured {
                out += &format!("fit.{}.residual={:.2e}\n", f.key, fit.max_residual);
            }
            if f.published.is_some() {
                out += &format!("published.fit.{}={}\n", f.key, compact(&f.published));
            }
        }
        out += &format!("constant(user-query)={}\n", self.query_constant);
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cost report for m={} n={} l={} k={}", self.m, self.n, self.l, self.k)?;
        writeln!(f)?;
        writeln!(f, "{:<40} {:>10} {:>10}", "quantity", "measured", "published")?;
        for r in &self.rows {
            let (published, flag) = match r.published {
                Some(p) if p == r.measured => (p.to_string(), "match"),
                Some(p) => (p.to_string(), "differs"),
                None => ("-".into(), ""),
            };
            writeln!(f, "{:<40} {:>10} {:>10}  {flag}", r.key, r.measured, published)?;
        }
        writeln!(f)?;
        writeln!(f, "fitted over the sweep:")?;
        for s in &self.fits {
            let measured = s
                .measured
                .as_ref()
                .map_or("underdetermined".into(), |fit| fit.to_string());
            let exact = if s.exact() { "exact" } else { "not affine" };
            write!(f, "  {:<38} {measured}  ({exact}, {} points)", s.key, s.points)?;
            if let Some(published) = &s.published {
                let flag = match s.matches_published() {
                    Some(true) => "match",
                    _ => "differs",
                };
                write!(f, "  published {published}  {flag}")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "user-query cost constant over the sweep: {}",
            if self.query_constant { "yes" } else { "NO" }
        )
    }
}

type Counter = fn(&OpCounts) -> u64;

const COUNTERS: [(&str, Counter); 4] = [
    ("exp", |c| c.exp_source),
    ("exp_target", |c| c.exp_target),
    ("pairings", |c| c.pairings),
    ("hashes", |c| c.hashes),
];

const PUBLISHED_COUNTERS: [fn(&PublishedCost) -> u64; 4] =
    [|c| c.exp_source, |c| c.exp_target, |c| c.pairings, |c| c.hashes];

fn cost_rows(rows: &mut Vec<Row>, label: &str, counts: &OpCounts, published: PublishedCost) {
    for ((name, get), published_get) in COUNTERS.iter().zip(PUBLISHED_COUNTERS) {
        rows.push(Row {
            key: format!("{name}({label})"),
            measured: get(counts),
            published: Some(published_get(&published)),
        });
    }
    rows.push(Row {
        key: format!("exp_physical({label})"),
        measured: counts.exp_source_physical,
        published: None,
    });
}

fn traffic_rows(rows: &mut Vec<Row>, link: &str, t: &Traffic, published: Option<PublishedTraffic>) {
    let e = &t.elements;
    let entries = [
        ("source", e.source(), published.map(|p| p.source)),
        ("target", e.target, published.map(|p| p.target)),
        ("scalar", e.scalar, published.map(|p| p.scalar)),
        ("bytes", t.bytes, None),
    ];
    for (name, measured, published) in entries {
        rows.push(Row {
            key: format!("{name}({link})"),
            measured,
            published,
        });
    }
}

/// Measured vs published values for one setup and one transfer.
pub fn compare_tables(bench: &Bench, t: &TransferCounts) -> Vec<Row> {
    let (m, n) = (bench.public_params().m, bench.public_params().n);
    let (l, k) = (t.l, t.k);
    let mut rows = Vec::new();
    cost_rows(
        &mut rows,
        "setup",
        &bench.setup,
        published_cost(Region::Setup, m, n, l, k),
    );
    cost_rows(
        &mut rows,
        "user-query",
        &t.user_query,
        published_cost(Region::UserQuery, m, n, l, k),
    );
    cost_rows(
        &mut rows,
        "user-retrieve",
        &t.user_retrieve,
        published_cost(Region::UserRetrieve, m, n, l, k),
    );
    cost_rows(
        &mut rows,
        "provider",
        &t.provider,
        published_cost(Region::Provider, m, n, l, k),
    );
    rows.push(Row {
        key: "exp_target(unmask)".into(),
        measured: t.unmask.exp_target,
        published: None,
    });
    traffic_rows(
        &mut rows,
        "setup",
        &bench.setup_traffic,
        published_traffic("setup", m, n, l, k),
    );
    traffic_rows(
        &mut rows,
        "user->provider",
        &t.user_to_provider,
        published_traffic("user->provider", m, n, l, k),
    );
    traffic_rows(
        &mut rows,
        "provider->user",
        &t.provider_to_user,
        published_traffic("provider->user", m, n, l, k),
    );
    rows
}

type Sample = (Vec<f64>, f64);

fn fit_series(key: String, terms: &[&'static str], measured: &[Sample], published: Option<&[Sample]>) -> SweepFit {
    SweepFit {
        key,
        points: measured.len(),
        measured: fit_affine(terms, measured),
        published: published.and_then(|p| fit_affine(terms, p)),
    }
}

const SETUP_SWEEP: [(usize, usize); 6] = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3)];

/// Setup counters fitted in `1, m, n, mn` over a fixed small sweep.
pub fn setup_fits<R: RngCore + CryptoRng>(params: ParameterSet, rng: &mut R) -> Result<Vec<SweepFit>> {
    let terms = ["1", "m", "n", "mn"];
    let mut runs = Vec::new();
    for (m, n) in SETUP_SWEEP {
        let b = Bench::new(params, m, n, rng)?;
        runs.push((m, n, b.setup));
    }
    let x = |m: usize, n: usize| vec![1.0, m as f64, n as f64, (m * n) as f64];
    Ok(COUNTERS
        .iter()
        .zip(PUBLISHED_COUNTERS)
        .map(|((name, get), published_get)| {
            let measured: Vec<Sample> = runs.iter().map(|(m, n, c)| (x(*m, *n), get(c) as f64)).collect();
            let published: Vec<Sample> = runs
                .iter()
                .map(|(m, n, _)| {
                    (
                        x(*m, *n),
                        published_get(&published_cost(Region::Setup, *m, *n, 1, 1)) as f64,
                    )
                })
                .collect();
            fit_series(format!("{name}(setup)"), &terms, &measured, Some(&published))
        })
        .collect())
}

/// Transfer counters fitted in `1, l, k, lk` over the given runs on one grid.
pub fn transfer_fits(m: usize, n: usize, runs: &[TransferCounts]) -> Vec<SweepFit> {
    let terms = ["1", "l", "k", "lk"];
    let x = |t: &TransferCounts| vec![1.0, t.l as f64, t.k as f64, (t.l * t.k) as f64];
    let mut fits = Vec::new();
    type PickRegion = fn(&TransferCounts) -> &OpCounts;
    let regions: [(&str, Region, PickRegion); 2] = [
        ("user-retrieve", Region::UserRetrieve, |t| &t.user_retrieve),
        ("provider", Region::Provider, |t| &t.provider),
    ];
    for (label, region, pick) in regions {
        for ((name, get), published_get) in COUNTERS.iter().zip(PUBLISHED_COUNTERS) {
            let measured: Vec<Sample> = runs.iter().map(|t| (x(t), get(pick(t)) as f64)).collect();
            let published: Vec<Sample> = runs
                .iter()
                .map(|t| (x(t), published_get(&published_cost(region, m, n, t.l, t.k)) as f64))
                .collect();
            fits.push(fit_series(
                format!("{name}({label})"),
                &terms,
                &measured,
                Some(&published),
            ));
        }
    }
    let unmask: Vec<Sample> = runs.iter().map(|t| (x(t), t.unmask.exp_target as f64)).collect();
    fits.push(fit_series("exp_target(unmask)".into(), &terms, &unmask, None));

    type Pick = fn(&Traffic) -> u64;
    type PickPublished = fn(&PublishedTraffic) -> u64;
    let parts: [(&str, Pick, PickPublished); 3] = [
        ("source", |t| t.elements.source(), |p| p.source),
        ("target", |t| t.elements.target, |p| p.target),
        ("scalar", |t| t.elements.scalar, |p| p.scalar),
    ];
    for (name, get, published_get) in parts {
        let measured: Vec<Sample> = runs.iter().map(|t| (x(t), get(&t.provider_to_user) as f64)).collect();
        let published: Vec<Sample> = runs
            .iter()
            .filter_map(|t| {
                Some((
                    x(t),
                    published_get(&published_traffic("provider->user", m, n, t.l, t.k)?) as f64,
                ))
            })
            .collect();
        fits.push(fit_series(
            format!("{name}(provider->user)"),
            &terms,
            &measured,
            Some(&published),
        ));
    }
    let bytes: Vec<Sample> = runs.iter().map(|t| (x(t), t.provider_to_user.bytes as f64)).collect();
    fits.push(fit_series("bytes(provider->user)".into(), &terms, &bytes, None));
    fits
}

/// True if every user-query counter and the query encoding are identical across `runs`.
pub fn query_cost_constant(runs: &[TransferCounts]) -> bool {
    runs.windows(2)
        .all(|w| w[0].user_query == w[1].user_query && w[0].user_to_provider == w[1].user_to_provider)
}

/// `(l, k)` points with `l < m`, `k < n`, up to 3 each, plus `(l, k)` itself.
fn transfer_sweep(m: usize, n: usize, l: usize, k: usize) -> Vec<(usize, usize)> {
    let mut pts: Vec<(usize, usize)> = (1..m.min(4)).flat_map(|a| (1..n.min(4)).map(move |b| (a, b))).collect();
    if !pts.contains(&(l, k)) {
        pts.push((l, k));
    }
    pts
}

/// Full report for the point `(m, n, l, k)`: setup and one transfer at that
/// point, setup fits over a fixed sweep, transfer fits over small rectangles on
/// the same grid, and the query cost with nonces reused as published.
pub fn run_report<R: RngCore + CryptoRng>(
    params: ParameterSet,
    (m, n, l, k): (usize, usize, usize, usize),
    rng: &mut R,
) -> Result<Report> {
    if l == 0 || k == 0 || l >= m || k >= n {
        return Err(Error::argument(format!(
            "a {l}x{k} query does not fit a {m}x{n} grid (need 1 <= l < m and 1 <= k < n)"
        )));
    }
    let bench = Bench::new(params, m, n, rng)?;
    let main = bench.transfer((1, 1, l, k), Blinding::Independent, rng)?;
    let mut rows = compare_tables(&bench, &main);

    let literal = bench.transfer((1, 1, l, k), Blinding::Literal, rng)?;
    cost_rows(
        &mut rows,
        "user-query,literal",
        &literal.user_query,
        published_cost(Region::UserQuery, m, n, l, k),
    );

    let mut runs = Vec::new();
    for (a, b) in transfer_sweep(m, n, l, k) {
        // Vary the start point too; costs must not depend on it.
        let (i, j) = (m - a, n - b);
        runs.push(bench.transfer((i, j, a, b), Blinding::Independent, rng)?);
    }
    let mut fits = setup_fits(params, rng)?;
    fits.extend(transfer_fits(m, n, &runs));
    let query_constant = query_cost_constant(&runs);

    Ok(Report {
        m,
        n,
        l,
        k,
        rows,
        fits,
        query_constant,
    })
}
