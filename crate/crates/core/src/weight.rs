//! Edge weights and path distances.
//!
//! Both carry an infinity sentinel at the top of their range. Edge weights are
//! stored as `u32` cells in the adjacency matrix; path distances widen to `u64`
//! so that a distance plus any finite edge weight can never wrap, even on paths
//! that traverse every vertex.

use std::fmt;

/// A single adjacency-matrix cell: a non-negative edge weight or [`Weight::INF`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(u32);

impl Weight {
    /// "No edge."
    pub const INF: Weight = Weight(u32::MAX);
    /// Largest finite edge weight accepted anywhere in the crate.
    pub const MAX_FINITE: u32 = u32::MAX - 1;
    pub const ZERO: Weight = Weight(0);

    /// Returns `None` for values that collide with the sentinel.
    pub const fn new(value: u32) -> Option<Weight> {
        if value <= Self::MAX_FINITE {
            Some(Weight(value))
        } else {
            None
        }
    }

    #[inline]
    pub const fn is_finite(self) -> bool {
        self.0 != u32::MAX
    }

    #[inline]
    pub const fn get(self) -> Option<u32> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(w) => write!(f, "{w}"),
            None => f.write_str("INF"),
        }
    }
}

/// Length of a path, or [`Distance::INF`] when no path exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distance(u64);

impl Distance {
    pub const INF: Distance = Distance(u64::MAX);
    pub const ZERO: Distance = Distance(0);

    /// Returns `None` for the sentinel value.
    pub const fn new(value: u64) -> Option<Distance> {
        if value != u64::MAX {
            Some(Distance(value))
        } else {
            None
        }
    }

    #[inline]
    pub const fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    #[inline]
    pub const fn get(self) -> Option<u64> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }

    /// Distance of the path extended by one edge; `INF` if either side is `INF`.
    #[inline]
    pub fn extend(self, w: Weight) -> Distance {
        if self.is_finite() && w.is_finite() {
            // self < 2^64 - 1 and every reachable distance is bounded by
            // n * MAX_FINITE, far below u64::MAX for any addressable n.
            Distance(self.0.saturating_add(u64::from(w.0)).min(u64::MAX - 1))
        } else {
            Distance::INF
        }
    }

    #[inline]
    pub const fn to_bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn from_bits(bits: u64) -> Distance {
        Distance(bits)
    }
}

impl From<Weight> for Distance {
    fn from(w: Weight) -> Distance {
        match w.get() {
            Some(v) => Distance(u64::from(v)),
            None => Distance::INF,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(d) => write!(f, "{d}"),
            None => f.write_str("INF"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinel_is_rejected_as_finite_value() {
        assert!(Weight::new(u32::MAX).is_none());
        assert_eq!(
            Weight::new(Weight::MAX_FINITE).unwrap().get(),
            Some(u32::MAX - 1)
        );
        assert!(Distance::new(u64::MAX).is_none());
    }

    #[test]
    fn extend_is_guarded() {
        let w = Weight::new(7).unwrap();
        assert_eq!(Distance::INF.extend(w), Distance::INF);
        assert_eq!(Distance::ZERO.extend(Weight::INF), Distance::INF);
        assert_eq!(
            Distance::new(5).unwrap().extend(w),
            Distance::new(12).unwrap()
        );
        let max = Weight::new(Weight::MAX_FINITE).unwrap();
        let d = Distance::from(max).extend(max);
        assert!(d.is_finite());
        assert!(d < Distance::INF);
    }

    #[test]
    fn inf_orders_above_everything() {
        assert!(Weight::new(Weight::MAX_FINITE).unwrap() < Weight::INF);
        assert!(Distance::new(u64::MAX - 1).unwrap() < Distance::INF);
        assert_eq!(Weight::INF.to_string(), "INF");
        assert_eq!(Distance::new(3).unwrap().to_string(), "3");
    }
}
