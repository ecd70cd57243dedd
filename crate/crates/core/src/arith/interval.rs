use super::WideInt;

/// A set of consecutive integers, possibly empty or unbounded on either side.
///
/// All endpoints are inclusive; open real endpoints are converted with the
/// appropriate floor/ceil before they get here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntInterval {
    Empty,
    Bounded {
        lo: WideInt,
        hi: WideInt,
    },
    /// `(-∞, hi]`
    AtMost(WideInt),
    /// `[lo, ∞)`
    AtLeast(WideInt),
    All,
}

impl IntInterval {
    /// `[lo, hi]`, or empty when `lo > hi`.
    pub fn bounded(lo: WideInt, hi: WideInt) -> Self {
        if lo <= hi {
            IntInterval::Bounded { lo, hi }
        } else {
            IntInterval::Empty
        }
    }

    fn from_bounds(lo: Option<WideInt>, hi: Option<WideInt>) -> Self {
        match (lo, hi) {
            (Some(lo), Some(hi)) => Self::bounded(lo, hi),
            (None, Some(hi)) => IntInterval::AtMost(hi),
            (Some(lo), None) => IntInterval::AtLeast(lo),
            (None, None) => IntInterval::All,
        }
    }

    /// `(lower, upper)` with `None` meaning unbounded; `None` for the empty set.
    pub fn bounds(&self) -> Option<(Option<WideInt>, Option<WideInt>)> {
        match *self {
            IntInterval::Empty => None,
            IntInterval::Bounded { lo, hi } => Some((Some(lo), Some(hi))),
            IntInterval::AtMost(hi) => Some((None, Some(hi))),
            IntInterval::AtLeast(lo) => Some((Some(lo), None)),
            IntInterval::All => Some((None, None)),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, IntInterval::Empty)
    }

    pub fn contains(&self, n: WideInt) -> bool {
        match self.bounds() {
            None => false,
            Some((lo, hi)) => lo.is_none_or(|lo| lo <= n) && hi.is_none_or(|hi| n <= hi),
        }
    }

    /// `{n + k : n ∈ self}`.
    pub fn translate(&self, k: WideInt) -> Self {
        match self.bounds() {
            None => IntInterval::Empty,
            Some((lo, hi)) => Self::from_bounds(lo.map(|v| v + k), hi.map(|v| v + k)),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (Some((alo, ahi)), Some((blo, bhi))) = (self.bounds(), other.bounds()) else {
            return IntInterval::Empty;
        };
        let lo = match (alo, blo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (ahi, bhi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Self::from_bounds(lo, hi)
    }

    /// Complement within ℤ, defined only when the result is again an interval
    /// (the empty set, a half-line or everything).
    pub fn complement_of_ray(&self) -> Self {
        match *self {
            IntInterval::Empty => IntInterval::All,
            IntInterval::All => IntInterval::Empty,
            IntInterval::AtMost(hi) => IntInterval::AtLeast(hi + 1),
            IntInterval::AtLeast(lo) => IntInterval::AtMost(lo - 1),
            IntInterval::Bounded { .. } => {
                panic!("complement of a bounded interval is not an interval")
            }
        }
    }
}
