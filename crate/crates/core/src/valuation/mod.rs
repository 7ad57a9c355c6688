//! Newton polygons over `F_{p^d}((t))` and valuation bounds for periodic points.

mod bounds;
mod newton;

pub use bounds::{
    cycle_valuations, periodic_valuation_bound, BoundBranch, BoundCertificate, CycleReport,
};
pub use newton::{newton_polygon, NewtonPolygon, Segment};

/// Exact rational valuations.
pub type Rational = num_rational::Ratio<i64>;

#[cfg(test)]
mod tests;
