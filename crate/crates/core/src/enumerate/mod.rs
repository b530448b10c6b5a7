//! Isomorph-free generation of graphs with a degree cap, and the exhaustive
//! harnesses built on it.

mod sweep;
mod verify;

pub use sweep::{consistency_sweep, SweepConfig, SweepReport, Tally, UnitSummary};
pub use verify::{expected_extremal, verify_main, verify_main_range, verify_on, VerificationReport};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{canonical_form, CanonicalForm, Graph};

/// Largest `n` accepted by [`generate`].
pub const GENERATION_LIMIT: usize = 12;

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool
/// when `workers` is `None`.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::domain(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Canonical forms of every graph on `m + 1` vertices with `Δ <= r` that
/// has a vertex whose deletion leaves a graph in `level`.
fn augment(level: &[CanonicalForm], r: usize) -> Vec<CanonicalForm> {
    let mut next: Vec<CanonicalForm> = level
        .par_iter()
        .flat_map_iter(|form| {
            let parent = form.graph();
            let m = parent.n();
            let open = (0..m).filter(|&v| parent.degree(v) < r).fold(0u64, |acc, v| acc | 1 << v);
            let mut children = Vec::new();
            // every submask of `open`, including the empty one
            let mut sub = open;
            loop {
                if sub.count_ones() as usize <= r {
                    let mut rows = parent.rows().to_vec();
                    for (v, row) in rows.iter_mut().enumerate() {
                        if sub >> v & 1 == 1 {
                            *row |= 1 << m;
                        }
                    }
                    rows.push(sub);
                    children.push(canonical_form(&Graph::from_rows_unchecked(rows)));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & open;
            }
            children.sort_unstable();
            children.dedup();
            children
        })
        .collect();
    next.par_sort_unstable();
    next.dedup();
    next
}

fn check_limit(n: usize) -> Result<()> {
    if n > GENERATION_LIMIT {
        return Err(Error::Limit { what: format!("exhaustive generation on {n} vertices"), limit: GENERATION_LIMIT });
    }
    Ok(())
}

/// Canonical forms of all graphs on `m` vertices with `Δ <= r`, for
/// `m = 0..=n_max`, each level sorted.
pub fn generate_levels(n_max: usize, r: usize) -> Result<Vec<Vec<CanonicalForm>>> {
    check_limit(n_max)?;
    let mut levels = vec![vec![canonical_form(&Graph::from_rows_unchecked(Vec::new()))]];
    for _ in 0..n_max {
        let next = augment(levels.last().expect("level 0 exists"), r);
        levels.push(next);
    }
    Ok(levels)
}

/// One canonical representative per isomorphism class of graphs on `n`
/// vertices with `Δ <= r`, sorted by canonical form. `r >= n` is treated
/// as `r = n - 1`.
pub fn generate(n: usize, r: usize) -> Result<Vec<Graph>> {
    Ok(generate_forms(n, r)?.iter().map(CanonicalForm::graph).collect())
}

pub fn generate_forms(n: usize, r: usize) -> Result<Vec<CanonicalForm>> {
    let mut levels = generate_levels(n, r.min(n.saturating_sub(1)))?;
    Ok(levels.pop().expect("n + 1 levels"))
}

/// The `d`-regular members of [`generate`]`(n, d)`; empty when `nd` is odd.
pub fn generate_regular(n: usize, d: usize) -> Result<Vec<Graph>> {
    check_limit(n)?;
    if n * d % 2 == 1 || (n > 0 && d >= n) {
        return Ok(Vec::new());
    }
    Ok(generate(n, d)?.into_iter().filter(|g| g.is_regular(d)).collect())
}
