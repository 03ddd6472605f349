use serde::{Deserialize, Serialize};

/// Open interval `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// A finite union of disjoint open intervals, sorted by left endpoint.
/// Adjacent intervals sharing an endpoint stay separate: the shared point
/// is excluded from the set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    /// Builds a set from intervals that must be disjoint; empty ones are
    /// dropped.
    pub fn from_disjoint(mut intervals: Vec<Interval>) -> Self {
        intervals.retain(|i| i.hi > i.lo);
        intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        debug_assert!(intervals.windows(2).all(|w| w[0].hi <= w[1].lo));
        Self { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(Interval::len).sum()
    }

    /// Every interval of `self` lies inside one interval of `other`.
    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.intervals
            .iter()
            .all(|i| other.intervals.iter().any(|o| o.lo <= i.lo && i.hi <= o.hi))
    }

    /// `(lo, hi)` minus the listed points is contained in the set.
    pub fn covers_except(&self, lo: f64, hi: f64, excluded: &[f64]) -> bool {
        let mut cuts: Vec<f64> = excluded.iter().copied().filter(|&p| p > lo && p < hi).collect();
        cuts.sort_by(f64::total_cmp);
        let mut edges = vec![lo];
        edges.extend(cuts);
        edges.push(hi);
        edges
            .windows(2)
            .all(|w| self.intervals.iter().any(|o| o.lo <= w[0] && w[1] <= o.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let a = IntervalSet::from_disjoint(vec![
            Interval::new(1.0, 2.0),
            Interval::new(0.0, 0.5),
            Interval::new(3.0, 3.0),
        ]);
        assert_eq!(a.intervals().len(), 2);
        assert_eq!(a.intervals()[0].lo, 0.0);
        assert!(a.contains(0.25) && !a.contains(0.5) && !a.contains(2.5));
        assert!((a.measure() - 1.5).abs() < 1e-15);
        let b = IntervalSet::from_disjoint(vec![Interval::new(-1.0, 0.7), Interval::new(0.9, 2.0)]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(IntervalSet::default().is_subset_of(&a));
    }

    #[test]
    fn split_at_excluded_point() {
        let s = IntervalSet::from_disjoint(vec![Interval::new(0.0, 1.0), Interval::new(1.0, 2.0)]);
        assert!(!s.contains(1.0));
        assert!(s.covers_except(0.2, 1.8, &[1.0]));
        assert!(!s.covers_except(0.2, 1.8, &[]));
        assert!(!s.covers_except(0.2, 2.5, &[1.0]));
    }
}
