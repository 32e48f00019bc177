//! The acceptance criteria, one function each. `Ok` carries a one-line summary
//! of what was measured, `Err` the first violation found.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha20Rng;

use olbsq::bench::{query_cost_constant, transfer_fits, Bench, Region, TransferCounts};
use olbsq::catalog::PublicParams;
use olbsq::client::run_query;
use olbsq::error::Error;
use olbsq::group::{LeftElement, ParameterSet, RightElement, Scalar, TargetElement};
use olbsq::transfer::{ideal_functionality, KeyBundle, ProviderSession, UserSession};
use olbsq::zkp::{
    build_query, build_query_with, prove_sp1, prove_sp2, verify_query, verify_sp1, verify_sp2, Blinding, ProofSP1,
    ProofSP2, ProofU, QueryCommitments, QueryWitness,
};

use super::fuzz::{check_reply, corpus, exchange};
use super::{axis_queries, identities, random_query, rng, Instance, TestServer, World};

pub type Outcome = Result<String, String>;

/// Time budget for the end-to-end sweep.
pub const E2E_BUDGET: Duration = Duration::from_secs(300);
pub const IDENTITY_RUNS: usize = 100;
pub const COMPLETENESS_RUNS: usize = 100;
pub const MUTATIONS_PER_FIELD: usize = 10;
pub const FORGERY_TRIALS: usize = 100;
pub const FUZZ_CASES: usize = 1000;
/// Sampled queries on the 8x8 grid.
pub const LARGE_GRID_SAMPLES: usize = 12;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Full in-process run through both session state machines.
fn full_protocol(
    world: &World,
    (i, j, l, k): (usize, usize, usize, usize),
    rng: &mut ChaCha20Rng,
) -> Result<(), String> {
    let mut provider = ProviderSession::new(&world.sk, &world.pp, usize::MAX);
    let mut user = UserSession::new(&world.pp);
    let mut run = || -> olbsq::error::Result<_> {
        let sp1 = provider.open(rng)?;
        user.accept_provider_proof(&sp1)?;
        let (omega, proof) = user.make_query(i, j, l, k, rng)?;
        let (keys, key_proof) = provider.answer(&omega, &proof, rng)?;
        user.accept_keys(keys, &key_proof)?;
        user.recover(&world.cat)
    };
    let got = run().map_err(|e| format!("({i},{j},{l},{k}) on {}x{}: {e}", world.pp.m, world.pp.n))?;
    let want = ideal_functionality(&world.services, i, j, l, k, true);
    ensure(want.as_ref() == Some(&got), || {
        format!(
            "({i},{j},{l},{k}) on {}x{}: payloads differ from the ideal functionality",
            world.pp.m, world.pp.n
        )
    })
}

/// End-to-end correctness against the ideal functionality.
pub fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(1);
    let mut summary = Vec::new();

    // A 1x1 grid admits no rectangle: the only cell is the start point.
    let world = World::new(1, 1, &mut rng);
    ensure(axis_queries(1).is_empty(), || "1x1 grid has a valid query".into())?;
    for (i, j, l, k) in [(1, 1, 1, 1), (0, 0, 1, 1), (1, 1, 0, 0)] {
        let mut user = UserSession::new(&world.pp);
        let sp1 = prove_sp1(&world.sk.h_frak, &world.pp, &mut rng);
        user.accept_provider_proof(&sp1).map_err(|e| e.to_string())?;
        let refused = matches!(user.make_query(i, j, l, k, &mut rng), Err(Error::Argument(_)));
        ensure(
            refused && ideal_functionality(&world.services, i, j, l, k, true).is_none(),
            || format!("({i},{j},{l},{k}) on 1x1 was not refused"),
        )?;
    }
    summary.push("1x1: 0 valid queries, all refused".to_string());

    for side in [2usize, 4] {
        let world = World::new(side, side, &mut rng);
        let axis = axis_queries(side);
        let mut count = 0;
        for &(i, l) in &axis {
            for &(j, k) in &axis {
                full_protocol(&world, (i, j, l, k), &mut rng)?;
                count += 1;
            }
        }
        summary.push(format!("{side}x{side}: {count} exhaustive"));
    }

    let world = World::new(8, 8, &mut rng);
    let mut queries: Vec<_> = axis_queries(8)
        .iter()
        .flat_map(|&(i, l)| axis_queries(8).into_iter().map(move |(j, k)| (i, j, l, k)))
        .collect();
    queries.shuffle(&mut rng);
    // Always include the corners of the parameter space.
    let corners = [(1, 1, 7, 7), (7, 7, 1, 1), (1, 7, 7, 1)];
    let mut sample = corners.to_vec();
    sample.extend(
        queries
            .into_iter()
            .filter(|q| !corners.contains(q))
            .take(LARGE_GRID_SAMPLES - corners.len()),
    );
    for q in &sample {
        full_protocol(&world, *q, &mut rng)?;
    }
    summary.push(format!("8x8: {} sampled", sample.len()));

    let elapsed = start.elapsed();
    ensure(elapsed < E2E_BUDGET, || {
        format!("took {elapsed:.1?}, budget {E2E_BUDGET:?}")
    })?;
    Ok(format!("{} in {elapsed:.1?}", summary.join(", ")))
}

/// Every correctness identity over independent random instantiations.
pub fn criterion_2() -> Outcome {
    let mut failures = vec![0usize; identities::ALL.len()];
    for seed in 0..IDENTITY_RUNS as u64 {
        let inst = Instance::random(1000 + seed);
        for (n, (_, check)) in identities::ALL.iter().enumerate() {
            if !check(&inst) {
                failures[n] += 1;
            }
        }
    }
    let broken: Vec<String> = identities::ALL
        .iter()
        .zip(&failures)
        .filter(|(_, &f)| f > 0)
        .map(|((name, _), f)| format!("{name} failed {f}/{IDENTITY_RUNS}"))
        .collect();
    ensure(broken.is_empty(), || broken.join("; "))?;
    Ok(format!(
        "{} identities x {IDENTITY_RUNS} instantiations",
        identities::ALL.len()
    ))
}

/// Honest proofs are always accepted.
pub fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let mut world = World::new(4, 4, &mut rng);
    for run in 0..COMPLETENESS_RUNS {
        if run % 10 == 0 {
            let (m, n) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
            world = World::new(m, n, &mut rng);
        }
        let sp1 = prove_sp1(&world.sk.h_frak, &world.pp, &mut rng);
        verify_sp1(&world.pp, &sp1).map_err(|e| format!("provider proof, run {run}: {e}"))?;
        let (i, j, l, k) = random_query(world.pp.m, world.pp.n, &mut rng);
        let (_, omega, proof) = build_query(&world.pp, i, j, l, k, &mut rng).map_err(|e| e.to_string())?;
        verify_query(&world.pp, &omega, &proof).map_err(|e| format!("query proof, run {run}: {e}"))?;
        let keys = olbsq::transfer::derive_keys(&world.sk, &world.pp, &omega).map_err(|e| e.to_string())?;
        let key_proof = prove_sp2(&world.sk, &world.pp, &omega, &keys, &mut rng);
        verify_sp2(&world.pp, &omega, &keys, &key_proof).map_err(|e| format!("key proof, run {run}: {e}"))?;
    }
    Ok(format!(
        "{COMPLETENESS_RUNS} runs each of the provider, query and key proofs accepted"
    ))
}

/// A field value that can be perturbed. `semantic` replaces it by another
/// valid value; otherwise one bit of its encoding is flipped, and `None`
/// means the result no longer decodes.
trait Mutate: Sized {
    fn mutate(&self, semantic: bool, rng: &mut ChaCha20Rng) -> Option<Self>;
}

fn flip_bit(mut bytes: Vec<u8>, rng: &mut ChaCha20Rng) -> Vec<u8> {
    let at = rng.gen_range(0..bytes.len());
    bytes[at] ^= 1 << rng.gen_range(0..8);
    bytes
}

macro_rules! mutate_element {
    ($t:ty) => {
        impl Mutate for $t {
            fn mutate(&self, semantic: bool, rng: &mut ChaCha20Rng) -> Option<Self> {
                if semantic {
                    Some(*self * <$t>::generator().pow(&Scalar::random_nonzero(rng)))
                } else {
                    <$t>::from_bytes(&flip_bit(self.to_bytes().to_vec(), rng)).ok()
                }
            }
        }
    };
}
mutate_element!(LeftElement);
mutate_element!(RightElement);
mutate_element!(TargetElement);

impl Mutate for Scalar {
    fn mutate(&self, semantic: bool, rng: &mut ChaCha20Rng) -> Option<Self> {
        if semantic {
            Some(*self + Scalar::random_nonzero(rng))
        } else {
            Scalar::from_bytes(&flip_bit(self.to_bytes().to_vec(), rng)).ok()
        }
    }
}

impl Mutate for Vec<u8> {
    fn mutate(&self, semantic: bool, rng: &mut ChaCha20Rng) -> Option<Self> {
        let mut out = self.clone();
        if semantic {
            match rng.gen_range(0..3) {
                0 => out.push(rng.gen()),
                1 if !out.is_empty() => {
                    out.pop();
                }
                _ => out = (0..self.len().max(1)).map(|_| rng.gen()).collect(),
            }
            (out != *self).then_some(out)
        } else if out.is_empty() {
            Some(vec![1])
        } else {
            Some(flip_bit(out, rng))
        }
    }
}

impl Mutate for usize {
    fn mutate(&self, semantic: bool, rng: &mut ChaCha20Rng) -> Option<Self> {
        Some(if semantic {
            self + rng.gen_range(1..3)
        } else {
            // Flip within the 32-bit wire field.
            (*self as u32 ^ (1 << rng.gen_range(0..32))) as usize
        })
    }
}

/// Mutates one field `MUTATIONS_PER_FIELD` times; every variant must be rejected.
/// Returns the number of mutations tried.
fn tamper_field<T: Clone, F: Mutate + Clone>(
    name: &str,
    original: &T,
    field: impl Fn(&mut T) -> &mut F,
    rejects: impl Fn(&T) -> bool,
    rng: &mut ChaCha20Rng,
) -> Result<usize, String> {
    for n in 0..MUTATIONS_PER_FIELD {
        let semantic = n % 2 == 0;
        let mut t = original.clone();
        let slot = field(&mut t);
        match slot.mutate(semantic, rng) {
            // Fails to decode, so it never reaches the verifier.
            None => continue,
            Some(v) => *slot = v,
        }
        if !rejects(&t) {
            let kind = if semantic { "semantic" } else { "bit-flip" };
            return Err(format!("{kind} mutation {n} of {name} was accepted"));
        }
    }
    Ok(MUTATIONS_PER_FIELD)
}

fn tamper_sp1(pp: &PublicParams, proof: &ProofSP1, rng: &mut ChaCha20Rng) -> Result<usize, String> {
    let rejects = |p: &ProofSP1| verify_sp1(pp, p).is_err();
    let mut n = 0;
    n += tamper_field("h'", proof, |p| &mut p.h_prime, rejects, rng)?;
    n += tamper_field("c", proof, |p| &mut p.c, rejects, rng)?;
    n += tamper_field("h^", proof, |p| &mut p.h_hat, rejects, rng)?;
    n += tamper_field("msg", proof, |p| &mut p.msg, rejects, rng)?;
    Ok(n)
}

type QueryPair = (QueryCommitments, ProofU);

fn tamper_query(pp: &PublicParams, pair: &QueryPair, rng: &mut ChaCha20Rng) -> Result<usize, String> {
    let rejects = |(o, p): &QueryPair| verify_query(pp, o, p).is_err();
    let mut n = 0;
    macro_rules! omega {
        ($($f:ident),*) => {$(
            n += tamper_field(concat!("omega.", stringify!($f)), pair, |q| &mut q.0.$f, rejects, rng)?;
        )*};
    }
    omega!(l, k, e1, e2, f1, f2, j1, j2, i1, i2, i3, i4);
    n += tamper_field("E1'", pair, |q| &mut q.1.e1p, rejects, rng)?;
    n += tamper_field("E2'", pair, |q| &mut q.1.e2p, rejects, rng)?;
    for t in 0..16 {
        n += tamper_field(&format!("theta[{t}]"), pair, |q| &mut q.1.theta[t], rejects, rng)?;
    }
    for t in 0..12 {
        n += tamper_field(&format!("c[{t}]"), pair, |q| &mut q.1.c[t], rejects, rng)?;
    }
    for t in 0..24 {
        n += tamper_field(&format!("z[{t}]"), pair, |q| &mut q.1.z[t], rejects, rng)?;
    }
    n += tamper_field("msg", pair, |q| &mut q.1.msg, rejects, rng)?;
    Ok(n)
}

type KeyPair = (KeyBundle, ProofSP2);

fn tamper_sp2(
    pp: &PublicParams,
    omega: &QueryCommitments,
    pair: &KeyPair,
    rng: &mut ChaCha20Rng,
) -> Result<usize, String> {
    let rejects = |(keys, p): &KeyPair| verify_sp2(pp, omega, keys, p).is_err();
    let (l, k) = (omega.l, omega.k);
    let mut n = 0;
    for _ in 0..2 {
        let (mu, nu) = (rng.gen_range(1..=l), rng.gen_range(1..=k));
        macro_rules! cell {
            ($($f:ident),*) => {$(
                n += tamper_field(
                    &format!("cell({mu},{nu}).{}", stringify!($f)),
                    pair,
                    |q| &mut q.1.cells.get_mut(mu, nu).expect("cell in range").$f,
                    rejects,
                    rng,
                )?;
            )*};
        }
        cell!(upsilon1, upsilon2, upsilon3, c1, c2, z1, z2, h_mu_nu, l_prime, h_tilde);
        n += tamper_field(
            &format!("K({mu},{nu})"),
            pair,
            |q| q.0.k_keys.get_mut(mu, nu).unwrap(),
            rejects,
            rng,
        )?;
        n += tamper_field(
            &format!("L({mu},{nu})"),
            pair,
            |q| q.0.l_keys.get_mut(mu, nu).unwrap(),
            rejects,
            rng,
        )?;
    }
    n += tamper_field("H", pair, |q| &mut q.0.big_h, rejects, rng)?;
    n += tamper_field("msg", pair, |q| &mut q.1.msg, rejects, rng)?;
    Ok(n)
}

/// Every serialized field of every proof, mutated independently, is rejected.
pub fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    let world = World::new(3, 3, &mut rng);
    let pp = &world.pp;

    let sp1 = prove_sp1(&world.sk.h_frak, pp, &mut rng);
    let n1 = tamper_sp1(pp, &sp1, &mut rng).map_err(|e| format!("provider proof: {e}"))?;

    let (_, omega, proof) = build_query(pp, 1, 1, 2, 2, &mut rng).map_err(|e| e.to_string())?;
    let nu = tamper_query(pp, &(omega, proof), &mut rng).map_err(|e| format!("query proof: {e}"))?;

    let keys = olbsq::transfer::derive_keys(&world.sk, pp, &omega).map_err(|e| e.to_string())?;
    let key_proof = prove_sp2(&world.sk, pp, &omega, &keys, &mut rng);
    let n2 = tamper_sp2(pp, &omega, &(keys, key_proof), &mut rng).map_err(|e| format!("key proof: {e}"))?;

    Ok(format!(
        "rejected all mutations: provider {n1}, query {nu}, keys {n2} ({MUTATIONS_PER_FIELD} per field)"
    ))
}

/// Out-of-range queries cannot be built, and forged range witnesses are rejected.
pub fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    let world = World::new(4, 4, &mut rng);
    let pp = &world.pp;

    let mut refused = 0;
    for i in 1..=5 {
        for j in 1..=5 {
            for l in 1..=5 {
                for k in 1..=5 {
                    if i + l <= 4 && j + k <= 4 {
                        continue;
                    }
                    match build_query(pp, i, j, l, k, &mut rng) {
                        Err(Error::Argument(_)) => refused += 1,
                        Err(e) => return Err(format!("({i},{j},{l},{k}): wrong error {e}")),
                        Ok(_) => return Err(format!("({i},{j},{l},{k}) out of range but built")),
                    }
                }
            }
        }
    }

    // The user claims a rectangle past the edge and, lacking the signature on
    // the end index, substitutes a random power of the generator.
    let mut rejected = 0;
    for trial in 0..FORGERY_TRIALS {
        let (i, j, l, k) = (3, 3, 2, 2);
        let mut w = QueryWitness::honest(pp, 1, 1, 1, 1).expect("in range");
        (w.i, w.j, w.l, w.k) = (i, j, l, k);
        w.c_i1 = pp.c(i).power;
        w.c_i2 = pp.c(i).signature;
        w.d_j1 = pp.d(j).power;
        w.d_j2 = pp.d(j).signature;
        w.gamma1_i = *pp.gamma1(i);
        w.gamma2_j = *pp.gamma2(j);
        // Only one of the two end points is forged; the other is in range.
        if trial % 2 == 0 {
            w.gamma1_il = pp.g1.right.pow(&Scalar::random_nonzero(&mut rng));
            w.gamma2_jk = *pp.gamma2(j + k - 1);
            w.k = 1;
        } else {
            w.gamma2_jk = pp.h1.right.pow(&Scalar::random_nonzero(&mut rng));
            w.gamma1_il = *pp.gamma1(i + l - 1);
            w.l = 1;
        }
        let blinding = if trial % 4 < 2 {
            Blinding::Independent
        } else {
            Blinding::Literal
        };
        let (_, omega, proof) = build_query_with(pp, w, blinding, &mut rng);
        if verify_query(pp, &omega, &proof).is_err() {
            rejected += 1;
        }
    }
    ensure(rejected == FORGERY_TRIALS, || {
        format!("only {rejected}/{FORGERY_TRIALS} forgeries rejected")
    })?;
    Ok(format!(
        "{refused} out-of-range queries refused, {rejected}/{FORGERY_TRIALS} forged I3/I4 rejected"
    ))
}

const QUERY_SHAPES: [(usize, usize); 3] = [(1, 1), (2, 3), (5, 5)];

fn query_costs(blinding: Blinding, rng: &mut ChaCha20Rng) -> Result<Vec<TransferCounts>, String> {
    let mut runs = Vec::new();
    for side in [6, 8] {
        let bench = Bench::new(ParameterSet::default(), side, side, rng).map_err(|e| e.to_string())?;
        for (l, k) in QUERY_SHAPES {
            runs.push(bench.transfer((1, 1, l, k), blinding, rng).map_err(|e| e.to_string())?);
        }
    }
    Ok(runs)
}

fn describe_query(t: &TransferCounts) -> String {
    let c = &t.user_query;
    let e = &t.user_to_provider.elements;
    format!(
        "{}E+{}Et+{}P+{}H, {}/{}/{} elements, {} bytes",
        c.exp_source,
        c.exp_target,
        c.pairings,
        c.hashes,
        e.source(),
        e.target,
        e.scalar,
        t.user_to_provider.bytes
    )
}

/// The user's query cost does not depend on the grid or the rectangle.
pub fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    let mut notes = Vec::new();
    for blinding in [Blinding::Independent, Blinding::Literal] {
        let runs = query_costs(blinding, &mut rng)?;
        ensure(query_cost_constant(&runs), || {
            let all: Vec<String> = runs.iter().map(describe_query).collect();
            format!("{blinding:?} query cost varies: {}", all.join(" | "))
        })?;
        let published = olbsq::bench::published_cost(Region::UserQuery, 0, 0, 0, 0);
        let c = &runs[0].user_query;
        let same = (c.exp_source, c.exp_target, c.pairings, c.hashes)
            == (
                published.exp_source,
                published.exp_target,
                published.pairings,
                published.hashes,
            );
        notes.push(format!(
            "{blinding:?}: {} ({} vs published 16E+17Et+15P+13H)",
            describe_query(&runs[0]),
            if same { "matches" } else { "differs" }
        ));
    }
    Ok(format!("constant over 6x6/8x8 and 1x1/2x3/5x5; {}", notes.join("; ")))
}

/// Setup performs exactly `1 + mn` pairings.
pub fn criterion_7() -> Outcome {
    let mut rng = rng(7);
    let mut seen = Vec::new();
    for (m, n) in [(1, 1), (2, 3), (4, 4), (8, 8)] {
        let bench = Bench::new(ParameterSet::default(), m, n, &mut rng).map_err(|e| e.to_string())?;
        let want = 1 + (m * n) as u64;
        ensure(bench.setup.pairings == want, || {
            format!("{m}x{n}: {} pairings, expected {want}", bench.setup.pairings)
        })?;
        seen.push(format!("{m}x{n}:{want}"));
    }
    Ok(format!("pairings = 1+mn at {}", seen.join(" ")))
}

/// Retrieval cost is affine in `(l, k, lk)`, three target exponentiations per
/// cell with the session factor shared.
pub fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    let (m, n) = (5, 5);
    let bench = Bench::new(ParameterSet::default(), m, n, &mut rng).map_err(|e| e.to_string())?;
    let mut runs = Vec::new();
    for l in 1..=3 {
        for k in 1..=3 {
            let (i, j) = (m - l, n - k);
            runs.push(
                bench
                    .transfer((i, j, l, k), Blinding::Independent, &mut rng)
                    .map_err(|e| e.to_string())?,
            );
        }
    }
    let fits = transfer_fits(m, n, &runs);
    let mut shown = Vec::new();
    for name in ["exp", "exp_target", "pairings", "hashes"] {
        let key = format!("{name}(user-retrieve)");
        let fit = fits.iter().find(|f| f.key == key).and_then(|f| f.measured.clone());
        let fit = fit.ok_or_else(|| format!("{key}: sweep does not determine a fit"))?;
        ensure(fit.is_exact() && fit.integer_coefficients().is_some(), || {
            format!("{key}: residual {:.2e} over {} runs", fit.max_residual, runs.len())
        })?;
        shown.push(format!("{name}={fit}"));
    }
    let unmask = fits
        .iter()
        .find(|f| f.key == "exp_target(unmask)")
        .and_then(|f| f.measured.clone())
        .ok_or("unmask fit missing")?;
    // One shared H^-(r1+r2) per session, then C^r3 and D^r5 per cell.
    let want = [1, 0, 0, 2];
    ensure(
        unmask.is_exact() && unmask.integer_coefficients().as_deref() == Some(&want[..]),
        || format!("unmask target exponentiations fit {unmask}, expected 1 + 2*lk"),
    )?;
    Ok(format!("exact fits: {}; unmask Et = {unmask}", shown.join(", ")))
}

/// The daemon survives a malformed-frame corpus and still serves honest users.
pub fn criterion_9() -> Outcome {
    let server = TestServer::start(3, 3, 64, 9);
    let mut rng = rng(9);
    let cases = corpus(&server.world.pp, FUZZ_CASES, &mut rng);
    for (n, case) in cases.iter().enumerate() {
        let frames = exchange(server.addr, &case.bytes).map_err(|e| format!("case {n} ({:?}): {e}", case.category))?;
        check_reply(case, &frames).map_err(|e| format!("case {n} ({:?}): {e}", case.category))?;
    }
    let got = run_query(server.addr, &server.world.pp, &server.world.cat, 1, 1, 2, 2, &mut rng)
        .map_err(|e| format!("honest session after the corpus: {e}"))?;
    let want = ideal_functionality(&server.world.services, 1, 1, 2, 2, true);
    ensure(want.as_ref() == Some(&got), || {
        "honest session after the corpus recovered the wrong payloads".into()
    })?;

    let stats = server.stop();
    let clean = stats.panicked == 0
        && stats.disconnected == 0
        && stats.completed == 1
        && stats.aborted + stats.peer_aborted == FUZZ_CASES as u64
        && stats.accepted == FUZZ_CASES as u64 + 1;
    ensure(clean, || format!("daemon counters after the corpus: {stats:?}"))?;
    Ok(format!(
        "{FUZZ_CASES} cases: {} aborted by the daemon, {} by the client, 0 panics; honest session ok",
        stats.aborted, stats.peer_aborted
    ))
}

pub type Criterion = fn() -> Outcome;

pub const ALL: [(&str, Criterion); 9] = [
    ("end-to-end correctness", criterion_1),
    ("correctness identities", criterion_2),
    ("proof completeness", criterion_3),
    ("tamper rejection", criterion_4),
    ("range enforcement", criterion_5),
    ("constant query cost", criterion_6),
    ("setup pairing count", criterion_7),
    ("retrieve cost shape", criterion_8),
    ("wire robustness", criterion_9),
];
