//! Operation counting and cost reports.
//!
//! Counting is logical: one count per exponentiation, pairing or transcript hash
//! that appears in a protocol formula. Multi-exponentiations count as their
//! constituent exponentiations. Building a dual base (one exponent applied in both
//! pairing slots) is one logical exponentiation and two physical ones; that is the
//! only place the two conventions differ.

mod fit;
mod harness;
mod report;

pub use fit::{fit_affine, AffineFit};
pub use harness::{Bench, Traffic, TransferCounts};
pub use report::{
    compare_tables, published_cost, published_traffic, query_cost_constant, run_report, setup_fits, transfer_fits,
    PublishedCost, PublishedTraffic, Report, Row, SweepFit,
};

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

/// Protocol phase being measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Setup,
    UserQuery,
    UserRetrieve,
    Provider,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Setup => "setup",
            Region::UserQuery => "user-query",
            Region::UserRetrieve => "user-retrieve",
            Region::Provider => "provider",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    /// Source-group exponentiations (logical).
    pub exp_source: u64,
    /// Source-group exponentiations performed by the backend.
    pub exp_source_physical: u64,
    pub exp_target: u64,
    pub pairings: u64,
    pub hashes: u64,
    pub bytes_sent_user: u64,
    pub bytes_sent_provider: u64,
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, o: OpCounts) {
        self.exp_source += o.exp_source;
        self.exp_source_physical += o.exp_source_physical;
        self.exp_target += o.exp_target;
        self.pairings += o.pairings;
        self.hashes += o.hashes;
        self.bytes_sent_user += o.bytes_sent_user;
        self.bytes_sent_provider += o.bytes_sent_provider;
    }
}

impl Add for OpCounts {
    type Output = OpCounts;
    fn add(mut self, o: OpCounts) -> OpCounts {
        self += o;
        self
    }
}

pub(crate) mod tally {
    use super::OpCounts;
    use std::cell::Cell;

    thread_local! {
        pub(super) static ACTIVE: Cell<Option<OpCounts>> = const { Cell::new(None) };
    }

    fn bump(f: impl FnOnce(&mut OpCounts)) {
        ACTIVE.with(|slot| {
            if let Some(mut c) = slot.get() {
                f(&mut c);
                slot.set(Some(c));
            }
        });
    }

    pub(crate) fn exp_source(logical: u64, physical: u64) {
        bump(|c| {
            c.exp_source += logical;
            c.exp_source_physical += physical;
        });
    }

    pub(crate) fn exp_target(n: u64) {
        bump(|c| c.exp_target += n);
    }

    pub(crate) fn pairing() {
        bump(|c| c.pairings += 1);
    }

    pub(crate) fn hash() {
        bump(|c| c.hashes += 1);
    }
}

/// Runs `thunk` with counting enabled on this thread and returns its result with
/// the counts. Tracing regions do not nest.
pub fn trace<T>(region: Region, thunk: impl FnOnce() -> T) -> Result<(T, OpCounts)> {
    let _ = region;
    struct Reset;
    impl Drop for Reset {
        fn drop(&mut self) {
            tally::ACTIVE.with(|slot: &Cell<Option<OpCounts>>| slot.set(None));
        }
    }
    let nested = tally::ACTIVE.with(|slot| slot.get().is_some());
    if nested {
        return Err(Error::Usage("trace regions cannot be nested"));
    }
    tally::ACTIVE.with(|slot| slot.set(Some(OpCounts::default())));
    let reset = Reset;
    let out = thunk();
    let counts = tally::ACTIVE.with(|slot| slot.get()).unwrap_or_default();
    drop(reset);
    Ok((out, counts))
}
