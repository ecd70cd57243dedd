//! `Σ f(m)g(n)⌊x/(m·n)⌋` over one small neighborhood, through the linear
//! approximation of `x/(m·n)` at its center plus exact corrections.
//!
//! Offsets `m ∈ [-a, a)`, `n ∈ [-b, b)` are measured from the center
//! `(mc, nc)`. Writing `R0(m) = x(mc - m)/(mc²·nc)` and `α2 = -x/(mc·nc²)`:
//!
//! * `L0 = ⌊R0⌋ + ⌊α2·n⌋` is what [`linear_sum`] adds up,
//! * `L1 = ⌊R0 + α2·n⌋`,
//! * `L2 = ⌊x/((mc + m)(nc + n))⌋` is the target.
//!
//! With `α2 ≈ a0/q` and `{R0} ≈ r0/q`, the differences `L1 - L0` and
//! `L2 - L1` are 0 or 1 and depend on `n` only through its residue class
//! and a few half-lines cut out by linear or quadratic inequalities.

use super::linear::linear_sum;
use super::tables::{ray_sum, sum_table, CongruenceTables};
use crate::arith::{
    dioph_appr, floor_div, quad_ineq_z, sgn, DiophApprox, IntInterval, Ratio, WideInt,
};
use crate::{Error, Result};

/// Everything about one neighborhood that does not depend on `m`.
#[derive(Debug, Clone)]
pub struct Patch {
    x: WideInt,
    mc: WideInt,
    nc: WideInt,
    a: WideInt,
    b: WideInt,
    /// `mc²·nc`, denominator of `R0`
    d1: WideInt,
    /// `mc·nc²`, denominator of `α2`
    d2: WideInt,
    dioph: DiophApprox,
    /// Numerator of `δ = α2 - a0/q` over `q·d2`.
    delta_num: WideInt,
    tables: CongruenceTables,
    ray: i64,
}

/// The `m`-dependent quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowTerm {
    /// `mc + m`
    pub m_abs: WideInt,
    /// `⌊R0⌋`
    pub floor_r0: WideInt,
    /// `⌊q·{R0} + 1/2⌋ ∈ [0, q]`; `q` is kept as is so that `floor_r0` stays
    /// the true floor.
    pub r0: WideInt,
    /// Sign of `β = {R0} - r0/q`.
    pub sign_beta: i32,
    /// `(⌊β/δ⌋, ⌈β/δ⌉)`, when `δ ≠ 0`.
    pub ratio_bounds: Option<(WideInt, WideInt)>,
}

impl Patch {
    /// `g[i]` is the weight of offset `i - b`. Needs `a, b >= 1`,
    /// `mc > a` and `nc > b`.
    pub fn new(
        g: &[i8],
        x: WideInt,
        mc: WideInt,
        nc: WideInt,
        a: WideInt,
        b: WideInt,
    ) -> Result<Self> {
        if a < 1 || b < 1 || mc <= a || nc <= b || x < 1 {
            return Err(Error::domain(format!(
                "neighborhood needs a, b >= 1 inside the positive quadrant, got x = {x}, center ({mc}, {nc}), half-widths ({a}, {b})"
            )));
        }
        if g.len() as WideInt != 2 * b {
            return Err(Error::domain(format!(
                "expected {} weights, got {}",
                2 * b,
                g.len()
            )));
        }
        let d1 = mc * mc * nc;
        let d2 = mc * nc * nc;
        let dioph = dioph_appr(Ratio::new(-x, d2), 2 * b);
        let delta_num = -x * dioph.q - dioph.a0 * d2;
        debug_assert_eq!(sgn(delta_num), dioph.sign);
        let tables = sum_table(g, b, dioph.a0, dioph.q)?;
        let ray = ray_sum(g, dioph.q, b, dioph.sign);
        Ok(Patch {
            x,
            mc,
            nc,
            a,
            b,
            d1,
            d2,
            dioph,
            delta_num,
            tables,
            ray,
        })
    }

    pub fn dioph(&self) -> &DiophApprox {
        &self.dioph
    }

    pub fn half_widths(&self) -> (WideInt, WideInt) {
        (self.a, self.b)
    }

    /// Linear model coefficients `(α0, α1, α2)`.
    pub fn alphas(&self) -> (Ratio, Ratio, Ratio) {
        (
            Ratio::new(self.x * self.mc, self.d1),
            Ratio::new(-self.x, self.d1),
            Ratio::new(-self.x, self.d2),
        )
    }

    pub fn row(&self, m: WideInt) -> RowTerm {
        let q = self.dioph.q;
        let num = self.x * (self.mc - m);
        let floor_r0 = num.div_euclid(self.d1);
        let frac = num.rem_euclid(self.d1);
        let r0 = (2 * frac * q + self.d1) / (2 * self.d1);
        // β = beta_num / (q·d1)
        let beta_num = frac * q - r0 * self.d1;
        let ratio_bounds = (self.delta_num != 0).then(|| {
            let (n, d) = (beta_num * self.nc, self.delta_num * self.mc);
            (floor_div(n, d), -floor_div(-n, d))
        });
        RowTerm {
            m_abs: self.mc + m,
            floor_r0,
            r0,
            sign_beta: sgn(beta_num),
            ratio_bounds,
        }
    }

    /// `Σ_n g(n)(L1 - L0)` for this row.
    pub fn linear_correction(&self, t: &RowTerm) -> i64 {
        let q = self.dioph.q;
        let mut s = self.tables.sigma(t.r0) + self.special0a(t);
        if 0 < t.r0 && t.r0 < q {
            s += self.ray;
        }
        s
    }

    /// `Σ_n g(n)(L2 - L1)` for this row.
    pub fn quadratic_correction(&self, t: &RowTerm) -> Result<i64> {
        if self.dioph.q > 1 {
            Ok(self.special1(t)? + self.special0b(t)?)
        } else {
            self.special00(t)
        }
    }

    fn residue(&self, k: WideInt) -> WideInt {
        (k * self.dioph.a0_inv).rem_euclid(self.dioph.q)
    }

    fn sum_class(&self, r: WideInt, iv: &IntInterval) -> i64 {
        self.tables.sum_inter(r, iv)
    }

    fn ratio_bounds(t: &RowTerm) -> (WideInt, WideInt) {
        t.ratio_bounds.expect("δ ≠ 0 on this branch")
    }

    /// Offsets where `x/(m'·n') < K + a0·n/q` fails to hold, i.e. where the
    /// quadratic `-a0·m'·n'² + (-K·q + a0·nc)·m'·n' + x·q` is negative, for
    /// `K·q = floor_r0·q + shift`. Needs `a0 ≠ 0`.
    fn below_curve(&self, t: &RowTerm, shift: WideInt) -> Result<IntInterval> {
        let (a0, q) = (self.dioph.a0, self.dioph.q);
        let gamma1 = (-t.floor_r0 * q - shift + a0 * self.nc) * t.m_abs;
        Ok(quad_ineq_z(-a0 * t.m_abs, gamma1, self.x * q)?.translate(-self.nc))
    }

    /// `{n : β + δ·n < 0}`.
    fn negative_tail(&self, t: &RowTerm) -> IntInterval {
        match self.dioph.sign {
            s if s > 0 => IntInterval::AtMost(-Self::ratio_bounds(t).0 - 1),
            s if s < 0 => IntInterval::AtLeast(-Self::ratio_bounds(t).1 + 1),
            _ if t.sign_beta < 0 => IntInterval::All,
            _ => IntInterval::Empty,
        }
    }

    /// `L2 - L1` on the class `a0·n + r0 ≡ -1 (mod q)`, `q > 1`.
    pub fn special1(&self, t: &RowTerm) -> Result<i64> {
        let r = self.residue(-1 - t.r0);
        let below = self.below_curve(t, t.r0 + 1)?;
        Ok(self.sum_class(r, &IntInterval::All) - self.sum_class(r, &below))
    }

    /// `L1 - L0` on the class `a0·n + r0 ≡ 0 (mod q)`.
    pub fn special0a(&self, t: &RowTerm) -> i64 {
        let r = self.residue(-t.r0);
        let (q, sd, sb) = (self.dioph.q, self.dioph.sign, t.sign_beta);
        let iv = if 0 < t.r0 && t.r0 < q {
            match sd {
                s if s > 0 => IntInterval::AtLeast(-Self::ratio_bounds(t).0),
                s if s < 0 => IntInterval::AtMost(-Self::ratio_bounds(t).1),
                _ if sb >= 0 => IntInterval::All,
                _ => IntInterval::Empty,
            }
        } else if sd == 0 || sb == 0 {
            IntInterval::Empty
        } else {
            let (lo, hi) = Self::ratio_bounds(t);
            match (sb < 0, sd < 0) {
                (true, true) => {
                    return self.sum_class(r, &IntInterval::AtMost(-hi))
                        + self.sum_class(r, &IntInterval::AtLeast(1))
                }
                (true, false) => {
                    return self.sum_class(r, &IntInterval::AtMost(-1))
                        + self.sum_class(r, &IntInterval::AtLeast(-lo))
                }
                (false, false) => IntInterval::bounded(-lo, -1),
                (false, true) => IntInterval::bounded(1, -hi),
            }
        };
        self.sum_class(r, &iv)
    }

    /// `L2 - L1` on the class `a0·n + r0 ≡ 0 (mod q)`, `q > 1`.
    pub fn special0b(&self, t: &RowTerm) -> Result<i64> {
        let r = self.residue(-t.r0);
        let tail = self.negative_tail(t);
        let below = self.below_curve(t, t.r0)?;
        Ok(self.sum_class(r, &tail) - self.sum_class(r, &below.intersect(&tail)))
    }

    /// `L2 - L1` when `q = 1`.
    pub fn special00(&self, t: &RowTerm) -> Result<i64> {
        let tail = self.negative_tail(t);
        let fails = |j: WideInt| -> Result<IntInterval> {
            if self.dioph.a0 != 0 {
                return self.below_curve(t, t.r0 + j);
            }
            let k = t.floor_r0 + t.r0 + j;
            Ok(if k <= 0 {
                IntInterval::Empty
            } else {
                IntInterval::AtLeast(self.x / (t.m_abs * k) + 1 - self.nc)
            })
        };
        let missed = self.sum_class(0, &fails(0)?.intersect(&tail))
            + self.sum_class(0, &fails(1)?.intersect(&tail.complement_of_ray()));
        Ok(self.sum_class(0, &IntInterval::All) - missed)
    }
}

/// `Σ_{m ∈ [-a, a)} Σ_{n ∈ [-b, b)} f(m)g(n)⌊x/((mc + m)(nc + n))⌋`.
///
/// Exact provided `x/(m'n')` stays within `1/(2b)` above its tangent plane
/// at the center over the whole neighborhood.
pub fn sum_by_lin(
    f: &[i8],
    g: &[i8],
    x: WideInt,
    mc: WideInt,
    nc: WideInt,
    a: WideInt,
    b: WideInt,
) -> Result<WideInt> {
    if f.len() as WideInt != 2 * a {
        return Err(Error::domain(format!(
            "expected {} weights, got {}",
            2 * a,
            f.len()
        )));
    }
    let patch = Patch::new(g, x, mc, nc, a, b)?;
    let (alpha0, alpha1, alpha2) = patch.alphas();
    let mut s = linear_sum(f, g, a, b, alpha0, alpha1, alpha2);
    for (i, &w) in f.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let t = patch.row(i as WideInt - a);
        s += w as WideInt
            * (patch.linear_correction(&t) + patch.quadratic_correction(&t)?) as WideInt;
    }
    Ok(s)
}
