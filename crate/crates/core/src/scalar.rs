//! Filtration scalars.
//!
//! Every filtered object in this crate is generic over the type used for its
//! filtration values. Any IEEE float works; `-inf` and `+inf` are first-class
//! values (an unfiltered object is a filtered one with every value at `-inf`).

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::Float;

/// Extended-real filtration value.
pub trait Filtration: Float + FromStr + Display + Debug + Default + Send + Sync + 'static {
    /// Total order used for sorting. NaN never reaches this point because
    /// validation rejects it, but it sorts last rather than panicking.
    fn total_cmp_ext(&self, other: &Self) -> Ordering {
        match self.partial_cmp(other) {
            Some(ord) => ord,
            None => self.is_nan().cmp(&other.is_nan()),
        }
    }

    fn max_ext(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_ext(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl<T> Filtration for T where T: Float + FromStr + Display + Debug + Default + Send + Sync + 'static {}

/// Parses a filtration literal. Accepts anything `FromStr` accepts for the
/// float type, which includes `inf`, `-inf` and `infinity`.
pub fn parse_filtration<T: Filtration>(text: &str) -> Option<T> {
    let value = text.parse::<T>().ok()?;
    if value.is_nan() {
        None
    } else {
        Some(value)
    }
}

/// Formats a filtration value; infinities print as `inf` / `-inf`.
pub fn format_filtration<T: Filtration>(value: T) -> String {
    if value == T::infinity() {
        "inf".to_string()
    } else if value == T::neg_infinity() {
        "-inf".to_string()
    } else {
        format!("{value}")
    }
}

/// Maximum over an iterator, `-inf` when empty.
pub fn max_of<T: Filtration>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::neg_infinity(), T::max_ext)
}

/// Sorted, deduplicated copy of `values`.
pub fn distinct_sorted<T: Filtration>(mut values: Vec<T>) -> Vec<T> {
    values.sort_by(|a, b| a.total_cmp_ext(b));
    values.dedup();
    values
}
