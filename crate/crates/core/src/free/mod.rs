//! Pairs `(m, n)` with both `m, n <= v`: `Σ μ(m)μ(n)⌊x/(m·n)⌋`.
//!
//! The square `[1, v]²` is cut into boxes. Boxes far from the axes are
//! tiled with neighborhoods summed by [`sum_by_lin`]; the rest is summed
//! term by term.

mod linear;
mod patch;
mod tables;

use std::ops::Range;

use rayon::prelude::*;

pub use linear::linear_sum;
pub use patch::{sum_by_lin, Patch, RowTerm};
pub use tables::{ray_sum, sum_table, CongruenceTables};

use crate::arith::{icbrt_u128, isqrt_u64, overflow_bound_log2, overflow_guard, WideInt};
use crate::sieve::{MuSieve, SieveOptions};
use crate::{Error, Result};

/// Half-widths `(a, b)` of neighborhoods placed inside `m >= lo_m`,
/// `n >= lo_n`: `a = ⌊∛(lo_m⁴/6x)⌋`, `b = ⌊∛(lo_m·lo_n³/6x)⌋`.
pub fn neighborhood(x: u128, lo_m: u64, lo_n: u64) -> Result<(u64, u64)> {
    let (am, bn) = (lo_m as u128, lo_n as u128);
    let overflow = || Error::Range(format!("neighborhood sizes overflow at ({lo_m}, {lo_n})"));
    let six_x = x.checked_mul(6).ok_or_else(overflow)?;
    let a4 = am.checked_pow(4).ok_or_else(overflow)?;
    let ab3 = bn
        .checked_pow(3)
        .and_then(|c| c.checked_mul(am))
        .ok_or_else(overflow)?;
    Ok((
        icbrt_u128(a4 / six_x) as u64,
        icbrt_u128(ab3 / six_x) as u64,
    ))
}

/// `Σ_{m ∈ ms} Σ_{n ∈ ns} f(m)g(n)⌊x/(m·n)⌋` term by term, with `f[i]` the
/// weight of `ms.start + i`.
pub fn brute_double_sum(x: u128, ms: Range<u64>, ns: Range<u64>, f: &[i8], g: &[i8]) -> WideInt {
    let mut s: WideInt = 0;
    for (m, &fm) in ms.zip(f) {
        if fm == 0 {
            continue;
        }
        let xm = x / m as u128;
        let row: i64 = if xm <= u64::MAX as u128 {
            let xm = xm as u64;
            ns.clone()
                .zip(g)
                .map(|(n, &gn)| gn as i64 * (xm / n) as i64)
                .sum()
        } else {
            ns.clone()
                .zip(g)
                .map(|(n, &gn)| gn as i64 * (xm / n as u128) as i64)
                .sum()
        };
        s += fm as WideInt * row as WideInt;
    }
    s
}

/// Same sum as [`brute_double_sum`], tiled by neighborhoods of half-widths at
/// most `(a, b)`. Needs `ms.end <= 2·ms.start`, `ns.end <= 2·ns.start` and
/// even range lengths; `(a, b)` must satisfy the size rule for the lower
/// corner.
pub fn double_sum(
    x: u128,
    ms: Range<u64>,
    ns: Range<u64>,
    a: u64,
    b: u64,
    f: &[i8],
    g: &[i8],
) -> Result<WideInt> {
    for (r, name) in [(&ms, "m"), (&ns, "n")] {
        if r.start < 1 || r.end > 2 * r.start || (r.end - r.start) % 2 != 0 {
            return Err(Error::domain(format!("{name}-range {r:?} must start at 1 or later, have even length and end within twice its start")));
        }
    }
    if a < 1 || b < 1 {
        return Err(Error::domain("half-widths must be positive"));
    }
    let mut s = 0;
    for m_lo in ms.clone().step_by(2 * a as usize) {
        let m_hi = (m_lo + 2 * a).min(ms.end);
        let ma = (m_hi - m_lo) / 2;
        let fw = &f[(m_lo - ms.start) as usize..(m_hi - ms.start) as usize];
        for n_lo in ns.clone().step_by(2 * b as usize) {
            let n_hi = (n_lo + 2 * b).min(ns.end);
            let nb = (n_hi - n_lo) / 2;
            let gw = &g[(n_lo - ns.start) as usize..(n_hi - ns.start) as usize];
            s += sum_by_lin(
                fw,
                gw,
                x as WideInt,
                (m_lo + ma) as WideInt,
                (n_lo + nb) as WideInt,
                ma as WideInt,
                nb as WideInt,
            )?;
        }
    }
    Ok(s)
}

/// How a box is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxMethod {
    Brute,
    /// Neighborhood half-widths.
    Linear {
        a: u64,
        b: u64,
    },
}

/// `Σ_{m ∈ ms} Σ_{n ∈ ns} μ(m)μ(n)⌊x/(m·n)⌋`, split into `window × window`
/// pieces that are sieved and summed in parallel.
pub fn dd_sum(
    x: u128,
    ms: Range<u64>,
    ns: Range<u64>,
    window: u64,
    method: BoxMethod,
    sieve: &MuSieve,
) -> Result<WideInt> {
    if window == 0 || ms.start < 1 || ns.start < 1 {
        return Err(Error::domain(
            "windows must be positive and ranges start at 1 or later",
        ));
    }
    if let BoxMethod::Linear { .. } = method {
        if !window.is_multiple_of(2)
            || !(ms.end - ms.start).is_multiple_of(2)
            || !(ns.end - ns.start).is_multiple_of(2)
        {
            return Err(Error::domain(
                "the linear method needs even windows and range lengths",
            ));
        }
    }
    let pieces = |r: &Range<u64>| -> Vec<Range<u64>> {
        r.clone()
            .step_by(window as usize)
            .map(|lo| lo..(lo + window).min(r.end))
            .collect()
    };
    let (mp, np) = (pieces(&ms), pieces(&ns));
    let tasks: Vec<(Range<u64>, Range<u64>)> = mp
        .iter()
        .flat_map(|m| np.iter().map(move |n| (m.clone(), n.clone())))
        .collect();
    tasks
        .into_par_iter()
        .map(|(mw, nw)| {
            let mut f = vec![0i8; (mw.end - mw.start) as usize];
            let mut g = vec![0i8; (nw.end - nw.start) as usize];
            sieve.fill(mw.start, &mut f);
            sieve.fill(nw.start, &mut g);
            match method {
                BoxMethod::Brute => Ok(brute_double_sum(x, mw, nw, &f, &g)),
                BoxMethod::Linear { a, b } => double_sum(x, mw, nw, a, b, &f, &g),
            }
        })
        .try_reduce(|| 0, |p, q| Ok(p + q))
}

/// Tuning of the box layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeConfig {
    /// Boxes whose neighborhoods would be narrower than about this are
    /// summed term by term.
    pub min_width: f64,
    /// Each box spans about `1/shrink` of its outer coordinate.
    pub shrink: u64,
}

impl Default for FreeConfig {
    fn default() -> Self {
        FreeConfig {
            min_width: 10.0,
            shrink: 8,
        }
    }
}

/// `Σ_{m, n <= v} μ(m)μ(n)⌊x/(m·n)⌋`.
pub fn large_free(x: u128, v: u64) -> Result<WideInt> {
    large_free_with(x, v, &FreeConfig::default())
}

pub fn large_free_with(x: u128, v: u64, cfg: &FreeConfig) -> Result<WideInt> {
    if v == 0 {
        return Ok(0);
    }
    if !overflow_guard(x, v) {
        return Err(Error::OverflowGuard {
            x,
            v,
            log2_bound: overflow_bound_log2(x, v),
        });
    }
    if cfg.min_width <= 0.0 || cfg.shrink == 0 {
        return Err(Error::domain("box layout parameters must be positive"));
    }
    let sieve = MuSieve::new(v, SieveOptions::FAST);
    let root_v = isqrt_u64(v) + u64::from(isqrt_u64(v).pow(2) != v);
    let step = 2 * cfg.shrink;
    let c3x = 6.0 * cfg.min_width.powi(3) * x as f64;
    let floor_limit = root_v.max(step);
    let outer_limit = ((2.0 * c3x.powf(0.25)).ceil() as u64).max(floor_limit);
    let inner_limit =
        |lo_m: u64| ((2.0 * (c3x / lo_m as f64).cbrt()).ceil() as u64).max(floor_limit);
    let brute =
        |ms: Range<u64>, ns: Range<u64>| dd_sum(x, ms, ns, root_v, BoxMethod::Brute, &sieve);

    let mut total: WideInt = 0;
    let mut m_end = v + 1;
    while m_end >= outer_limit {
        let m_lo = m_end - 2 * (m_end / step);
        let mut n_end = m_end;
        while n_end >= inner_limit(m_lo) {
            let n_lo = n_end - 2 * (n_end / step);
            let weight = if n_lo == m_lo { 1 } else { 2 };
            let (a, b) = neighborhood(x, m_lo, n_lo)?;
            let part = if a >= 1 && b >= 1 {
                let w = 2 * a.max(b);
                let window = root_v.div_ceil(w) * w;
                dd_sum(
                    x,
                    m_lo..m_end,
                    n_lo..n_end,
                    window,
                    BoxMethod::Linear { a, b },
                    &sieve,
                )?
            } else {
                brute(m_lo..m_end, n_lo..n_end)?
            };
            total += weight * part;
            n_end = n_lo;
        }
        if n_end == m_end {
            total += brute(m_lo..m_end, m_lo..m_end)?;
            n_end = m_lo;
        }
        total += 2 * brute(m_lo..m_end, 1..n_end)?;
        m_end = m_lo;
    }
    total += brute(1..m_end, 1..m_end)?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::seg_mu;

    fn direct(x: u128, v: u64) -> i128 {
        let mu = seg_mu(1, v - 1).mu;
        let mut s = 0i128;
        for m in 1..=v {
            for n in 1..=v {
                s += (mu[m as usize - 1] * mu[n as usize - 1]) as i128
                    * (x / (m as u128 * n as u128)) as i128;
            }
        }
        s
    }

    #[test]
    fn neighborhood_example() {
        assert_eq!(neighborhood(1_000_000, 100, 60).unwrap(), (2, 1));
        assert_eq!(neighborhood(1_000_000, 10, 10).unwrap(), (0, 0));
    }

    #[test]
    fn brute_block_example() {
        let g = [1i8, -1, -1];
        assert_eq!(brute_double_sum(100, 1..4, 1..4, &g, &g), direct(100, 3));
    }

    #[test]
    fn double_sum_matches_brute() {
        let x = 10u128.pow(9);
        let (ms, ns) = (900u64..1100, 700u64..900);
        let sieve = MuSieve::new(2000, SieveOptions::FAST);
        let mut f = vec![0; 200];
        let mut g = vec![0; 200];
        sieve.fill(ms.start, &mut f);
        sieve.fill(ns.start, &mut g);
        let (a, b) = neighborhood(x, ms.start, ns.start).unwrap();
        assert!(a >= 2 && b >= 2);
        let want = brute_double_sum(x, ms.clone(), ns.clone(), &f, &g);
        assert_eq!(double_sum(x, ms, ns, a, b, &f, &g).unwrap(), want);
    }

    #[test]
    fn double_sum_rejects_wide_ranges() {
        assert!(matches!(
            double_sum(1000, 10..30, 10..12, 1, 1, &[0; 20], &[0; 2]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            double_sum(1000, 10..13, 10..12, 1, 1, &[0; 3], &[0; 2]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn large_free_matches_direct() {
        for x in [
            1u128,
            2,
            10,
            100,
            1000,
            12_345,
            10u128.pow(6),
            10u128.pow(7),
        ] {
            let v = ((x as f64).powf(0.4) as u64).max(1);
            assert_eq!(large_free(x, v).unwrap(), direct(x, v), "x = {x}");
        }
    }

    #[test]
    fn narrow_boxes_use_the_linear_path() {
        let cfg = FreeConfig {
            min_width: 1.0,
            shrink: 8,
        };
        for (x, v) in [
            (10u128.pow(6), 400u64),
            (10u128.pow(7), 1500),
            (123_456_789, 3000),
            (10u128.pow(9), 900),
        ] {
            assert_eq!(
                large_free_with(x, v, &cfg).unwrap(),
                direct(x, v),
                "x = {x}, v = {v}"
            );
        }
        let cfg = FreeConfig {
            min_width: 2.0,
            shrink: 4,
        };
        assert_eq!(
            large_free_with(10u128.pow(8), 2500, &cfg).unwrap(),
            direct(10u128.pow(8), 2500)
        );
    }

    #[test]
    fn guard_refuses_oversized_v() {
        let x = 1u128 << 75;
        assert!(matches!(
            large_free(x, 1 << 40),
            Err(Error::OverflowGuard { .. })
        ));
    }
}
