//! Assembles `M(x) = 2·M(u) - (non-free part) - (free part)` with `u = ⌊√x⌋`.

use std::time::{Duration, Instant};

use crate::arith::{isqrt_u128, overflow_bound_log2, overflow_guard};
use crate::free::{large_free_with, FreeConfig};
use crate::nonfree::{brute_m, large_nonfree_with, NonfreeOptions};
use crate::{Error, Result};

/// Default tuning constant for [`choose_v`].
pub const DEFAULT_C: f64 = 2.121_320_343_559_642_6;

/// Each automatic retry multiplies `c` by this.
const SHRINK: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Elementary,
    Brute,
    /// Elementary and brute force, compared.
    Verify,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub x: u128,
    pub c: f64,
    /// Lower `c` until the overflow guard passes instead of refusing.
    pub auto_shrink: bool,
    /// Worker threads; 0 uses rayon's default.
    pub threads: usize,
    pub mode: Mode,
    pub nonfree: NonfreeOptions,
    pub free: FreeConfig,
    /// Largest `x` accepted by verify mode.
    pub verify_limit: u128,
}

impl RunConfig {
    pub fn new(x: u128) -> Self {
        RunConfig {
            x,
            c: DEFAULT_C,
            auto_shrink: true,
            threads: 0,
            mode: Mode::Elementary,
            nonfree: NonfreeOptions::default(),
            free: FreeConfig::default(),
            verify_limit: 1_000_000_000,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub x: u128,
    pub value: i128,
    /// Zero in brute mode.
    pub v: u64,
    pub u: u64,
    /// The `c` actually used, after any automatic shrinking.
    pub c: f64,
    pub t_nonfree: Duration,
    pub t_free: Duration,
    pub t_brute_u: Duration,
    /// Brute-force run, in brute and verify modes.
    pub t_brute_x: Duration,
    pub threads: usize,
}

impl RunReport {
    pub fn c_adjusted(&self, requested: f64) -> bool {
        self.c != requested
    }
}

/// `⌊c·x^{2/5}(ln ln x / ln x)^{3/5}⌋` clamped to `[1, ⌊√x⌋]`; `⌊x^{2/5}⌋`
/// below 16.
pub fn choose_v(x: u128, c: f64) -> u64 {
    let u = isqrt_u128(x) as u64;
    let xf = x as f64;
    let raw = if x < 16 {
        xf.powf(0.4)
    } else {
        let l = xf.ln();
        c * xf.powf(0.4) * (l.ln() / l).powf(0.6)
    };
    (raw.floor() as u64).clamp(1, u.max(1))
}

/// Computes `M(x)` as configured.
pub fn mertens(config: &RunConfig) -> Result<RunReport> {
    if config.x < 1 {
        return Err(Error::domain("x must be at least 1"));
    }
    if config.c.is_nan() || config.c <= 0.0 {
        return Err(Error::domain(format!(
            "c must be positive, got {}",
            config.c
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::Range(format!("cannot start worker pool: {e}")))?;
    let threads = pool.current_num_threads();
    pool.install(|| match config.mode {
        Mode::Elementary => elementary(config, threads),
        Mode::Brute => {
            let (value, t) = brute(config.x)?;
            Ok(RunReport {
                x: config.x,
                value,
                v: 0,
                u: isqrt_u128(config.x) as u64,
                c: config.c,
                t_nonfree: Duration::ZERO,
                t_free: Duration::ZERO,
                t_brute_u: Duration::ZERO,
                t_brute_x: t,
                threads,
            })
        }
        Mode::Verify => {
            if config.x > config.verify_limit {
                return Err(Error::Range(format!(
                    "verify mode is limited to x <= {}",
                    config.verify_limit
                )));
            }
            let mut report = elementary(config, threads)?;
            let (value, t) = brute(config.x)?;
            report.t_brute_x = t;
            if value != report.value {
                return Err(Error::Mismatch {
                    x: config.x,
                    elementary: report.value,
                    brute: value,
                });
            }
            Ok(report)
        }
    })
}

fn brute(x: u128) -> Result<(i128, Duration)> {
    let x = u64::try_from(x)
        .map_err(|_| Error::Range(format!("brute force needs x < 2^64, got {x}")))?;
    let start = Instant::now();
    let value = brute_m(x) as i128;
    Ok((value, start.elapsed()))
}

fn elementary(config: &RunConfig, threads: usize) -> Result<RunReport> {
    let x = config.x;
    let u = isqrt_u128(x) as u64;
    let mut c = config.c;
    let mut v = choose_v(x, c);
    while !overflow_guard(x, v) {
        if !config.auto_shrink || v == 1 {
            return Err(Error::OverflowGuard {
                x,
                v,
                log2_bound: overflow_bound_log2(x, v),
            });
        }
        c *= SHRINK;
        v = choose_v(x, c);
    }

    let start = Instant::now();
    let m_u = brute_m(u) as i128;
    let t_brute_u = start.elapsed();

    let start = Instant::now();
    let nonfree = large_nonfree_with(x, v, u, config.nonfree)?.total();
    let t_nonfree = start.elapsed();

    let start = Instant::now();
    let free = large_free_with(x, v, &config.free)?;
    let t_free = start.elapsed();

    Ok(RunReport {
        x,
        value: 2 * m_u - nonfree - free,
        v,
        u,
        c,
        t_nonfree,
        t_free,
        t_brute_u,
        t_brute_x: Duration::ZERO,
        threads,
    })
}

/// Least-squares slope of `log₂ seconds` against `log₂ x`; `None` with fewer
/// than two distinct `x`.
pub fn log_log_slope(points: &[(u128, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, t)| ((x as f64).log2(), t.max(1e-9).log2()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}
