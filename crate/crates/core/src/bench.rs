//! Werner-state discord sweep and the naive-vs-optimized timing benchmark.

use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bloch::{bloch_of_subsystem, bloch_of_subsystem_naive, corrmat_naive_until, corrmat_opt};
use crate::discord::discord_hs;
use crate::error::{Error, Result};
use crate::states::{random_density, werner_state, RandomStateParams, WernerParams};
use crate::Side;

/// Closed-form ameliorated discord of a Werner state,
/// `(d w - 1)^2 / ((d - 1)(d + 1)^2)`.
pub fn werner_hsa_analytic(d: usize, w: f64) -> f64 {
    let d = d as f64;
    (d * w - 1.0).powi(2) / ((d - 1.0) * (d + 1.0).powi(2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub d: usize,
    pub w: f64,
    pub hs_numeric: f64,
    pub hsa_numeric: f64,
    pub hsa_analytic: f64,
}

/// `steps` evenly spaced points of `[-1, 1]`, both ends included.
pub fn w_grid(steps: usize) -> Vec<f64> {
    (0..steps).map(|i| -1.0 + 2.0 * i as f64 / (steps - 1) as f64).collect()
}

/// Side-a discords of Werner states for every `d` in `dmin..=dmax` and
/// `wsteps` values of `w`. Rows come out ordered by `(d, w)` whether or not
/// `parallel` is set.
pub fn werner_sweep(dmin: usize, dmax: usize, wsteps: usize, parallel: bool) -> Result<Vec<SweepRow>> {
    if dmin < 2 || dmax < dmin {
        return Err(Error::Argument(format!("need 2 <= dmin <= dmax, got dmin={dmin} dmax={dmax}")));
    }
    if wsteps < 2 {
        return Err(Error::Argument(format!("need at least 2 w steps, got {wsteps}")));
    }
    let grid = w_grid(wsteps);
    let points: Vec<(usize, f64)> = (dmin..=dmax).flat_map(|d| grid.iter().map(move |&w| (d, w))).collect();
    let eval = |&(d, w): &(usize, f64)| -> Result<SweepRow> {
        let rho = werner_state(WernerParams::new(d, w)?);
        let r = discord_hs(&rho, d, d, Side::A)?;
        Ok(SweepRow { d, w, hs_numeric: r.hs_value, hsa_numeric: r.hsa_value, hsa_analytic: werner_hsa_analytic(d, w) })
    };
    if parallel {
        points.par_iter().map(eval).collect()
    } else {
        points.iter().map(eval).collect()
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub dims: Vec<(usize, usize)>,
    pub trials: usize,
    pub seed: u64,
    /// Wall-clock budget for a single naive evaluation.
    pub naive_cap: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            dims: vec![(2, 2), (3, 3), (4, 4), (5, 5), (6, 6)],
            trials: 5,
            seed: 0,
            naive_cap: Duration::from_secs(300),
        }
    }
}

/// Median per-call timings of the full naive and optimized pipelines (both
/// coherence vectors plus the correlation matrix) on one random state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub da: usize,
    pub db: usize,
    pub trials: usize,
    pub t_naive_ns: u64,
    pub t_opt_ns: u64,
    /// `t_naive_ns / t_opt_ns`; a lower bound when `censored`.
    pub speedup: f64,
    /// The naive route hit the wall-clock cap; `t_naive_ns` is the time at
    /// which it was abandoned.
    pub censored: bool,
}

/// Parses `"2x2,3x4"`.
pub fn parse_dims(spec: &str) -> Result<Vec<(usize, usize)>> {
    spec.split(',')
        .map(|item| {
            let item = item.trim();
            let bad = || Error::Argument(format!("dimension pair '{item}' is not of the form DAxDB"));
            let (a, b) = item.split_once(['x', 'X']).ok_or_else(bad)?;
            let da: usize = a.trim().parse().map_err(|_| bad())?;
            let db: usize = b.trim().parse().map_err(|_| bad())?;
            if da < 2 || db < 2 {
                return Err(Error::Argument(format!("dimensions in '{item}' must be at least 2")));
            }
            Ok((da, db))
        })
        .collect()
}

/// Shortest batch worth timing; cheap calls are repeated until a batch
/// reaches it so the per-call figure is above timer resolution.
const MIN_BATCH: Duration = Duration::from_micros(500);

fn median(xs: &mut [u64]) -> u64 {
    xs.sort_unstable();
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2
    }
}

fn per_call_ns(elapsed: Duration, reps: u32) -> u64 {
    ((elapsed.as_nanos() / reps as u128) as u64).max(1)
}

/// One discarded warmup call, then `trials` timed batches; returns the median
/// per-call time in nanoseconds.
pub fn time_median(trials: usize, mut f: impl FnMut()) -> u64 {
    let start = Instant::now();
    f();
    let once = start.elapsed();
    let reps =
        if once >= MIN_BATCH { 1 } else { (MIN_BATCH.as_nanos() / once.as_nanos().max(1)).clamp(1, 1_000_000) as u32 };
    let mut samples: Vec<u64> = (0..trials.max(1))
        .map(|_| {
            let t = Instant::now();
            for _ in 0..reps {
                f();
            }
            per_call_ns(t.elapsed(), reps)
        })
        .collect();
    median(&mut samples)
}

fn bench_one(da: usize, db: usize, cfg: &BenchConfig) -> Result<BenchRecord> {
    let rho = random_density(RandomStateParams::new(da * db, cfg.seed)?);

    let t_opt_ns = time_median(cfg.trials, || {
        let a = bloch_of_subsystem(&rho, da, db, Side::A).expect("validated shape");
        let b = bloch_of_subsystem(&rho, da, db, Side::B).expect("validated shape");
        let c = corrmat_opt(&rho, da, db).expect("validated shape");
        std::hint::black_box((a, b, c));
    });

    let naive_once = |deadline: Option<Instant>| -> Result<bool> {
        let a = bloch_of_subsystem_naive(&rho, da, db, Side::A)?;
        let b = bloch_of_subsystem_naive(&rho, da, db, Side::B)?;
        let c = corrmat_naive_until(&rho, da, db, deadline)?;
        let done = c.is_some();
        std::hint::black_box((a, b, c));
        Ok(done)
    };

    // warmup doubles as the censoring probe
    let start = Instant::now();
    let finished = naive_once(Some(start + cfg.naive_cap))?;
    if !finished {
        let abandoned_ns = (start.elapsed().as_nanos() as u64).max(1);
        return Ok(BenchRecord {
            da,
            db,
            trials: cfg.trials,
            t_naive_ns: abandoned_ns,
            t_opt_ns,
            speedup: abandoned_ns as f64 / t_opt_ns as f64,
            censored: true,
        });
    }
    let once = start.elapsed();
    let reps = if once >= MIN_BATCH { 1 } else { (MIN_BATCH.as_nanos() / once.as_nanos().max(1)).max(1) as u32 };
    let mut samples = Vec::with_capacity(cfg.trials);
    for _ in 0..cfg.trials {
        let t = Instant::now();
        for _ in 0..reps {
            naive_once(None)?;
        }
        samples.push(per_call_ns(t.elapsed(), reps));
    }
    let t_naive_ns = median(&mut samples);
    Ok(BenchRecord {
        da,
        db,
        trials: cfg.trials,
        t_naive_ns,
        t_opt_ns,
        speedup: t_naive_ns as f64 / t_opt_ns as f64,
        censored: false,
    })
}

/// Benchmarks every dimension pair, sorted by `da * db` ascending.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if cfg.trials == 0 {
        return Err(Error::Argument("trials must be at least 1".into()));
    }
    let mut dims = cfg.dims.clone();
    dims.sort_by_key(|&(da, db)| da * db);
    dims.iter().map(|&(da, db)| bench_one(da, db, cfg)).collect()
}

/// Writes rows as CSV with a header line.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
