//! Scalar types usable as vertex weights.
//!
//! The solvers only add weights and compare sums, so any ordered additive
//! monoid works: machine integers, `f64`, or exact rationals.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Add;

use num_traits::Zero;

/// Ordered additive weight. Blanket-implemented for every type with the
/// required operations.
pub trait Weight:
    Copy + PartialOrd + Zero + Add<Output = Self> + Sum + Debug + Display + Send + Sync + 'static
{
    /// Sum of `weights[v]` over the given vertices.
    fn sum_over<I: IntoIterator<Item = usize>>(weights: &[Self], vertices: I) -> Self {
        vertices.into_iter().map(|v| weights[v]).sum()
    }
}

impl<T> Weight for T where
    T: Copy + PartialOrd + Zero + Add<Output = T> + Sum + Debug + Display + Send + Sync + 'static
{
}
