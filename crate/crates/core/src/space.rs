//! The N-point uniform probability space and exact measures on it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_rational::Ratio;

/// Exact rational used for every measure, cost and distance.
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("space must have at least one point")]
    EmptySpace,
    #[error("space size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("point {point} out of range for a space of {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("images do not form a bijection: point {point} is hit twice")]
    NotBijective { point: usize },
    #[error("partial injection has source {point} listed twice")]
    RepeatedSource { point: usize },
    #[error("partial injection has target {point} listed twice")]
    RepeatedTarget { point: usize },
    #[error("partial injections overlap at point {point}")]
    OverlappingUnion { point: usize },
}

/// `{0, …, N−1}` with every atom of measure `1/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    n_points: usize,
}

impl FiniteSpace {
    pub fn new(n_points: usize) -> Result<Self, SpaceError> {
        if n_points == 0 {
            return Err(SpaceError::EmptySpace);
        }
        Ok(FiniteSpace { n_points })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Measure of a set with `count` points.
    pub fn measure_of(&self, count: usize) -> Rational {
        measure(count, self.n_points)
    }

    pub fn points(&self) -> core::ops::Range<usize> {
        0..self.n_points
    }
}

/// `count / n` as an exact rational.
pub fn measure(count: usize, n: usize) -> Rational {
    Ratio::new(count as i64, n as i64)
}

/// Formats a rational as `"num/den"`, keeping the denominator even when it is 1.
pub fn format_rational(value: &Rational) -> String {
    let mut out = String::new();
    let _ = write!(out, "{}/{}", value.numer(), value.denom());
    out
}

pub(crate) fn check_same_size(left: usize, right: usize) -> Result<(), SpaceError> {
    if left != right {
        return Err(SpaceError::SizeMismatch { left, right });
    }
    Ok(())
}

/// Sorts and deduplicates a point list.
pub fn normalize_points(mut points: Vec<usize>) -> Vec<usize> {
    points.sort_unstable();
    points.dedup();
    points
}

/// Intersection of two sorted point lists.
pub fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_space_rejected() {
        assert_eq!(FiniteSpace::new(0), Err(SpaceError::EmptySpace));
    }

    #[test]
    fn rational_format_keeps_denominator() {
        assert_eq!(format_rational(&measure(0, 4)), "0/1");
        assert_eq!(format_rational(&measure(4, 4)), "1/1");
        assert_eq!(format_rational(&measure(6, 20)), "3/10");
    }

    #[test]
    fn sorted_intersection() {
        assert_eq!(intersect_sorted(&[0, 2, 4, 6], &[1, 2, 3, 6]), [2, 6]);
        assert!(intersect_sorted(&[], &[1]).is_empty());
    }
}
