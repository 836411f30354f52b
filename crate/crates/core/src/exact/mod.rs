//! Exact arithmetic: rational polynomials, Sturm root isolation and
//! truncated q-series on the `q^(1/8)` grid.

pub mod poly;
pub mod roots;
pub mod series;

use rug::Rational;

pub use poly::RationalPolynomial;
pub use roots::{refine_root, strictly_interlace, sturm_isolate, IsolatedRoot, SturmChain};
pub use series::{FracQSeries, GRID};

/// `i^unit_power * scalar * series`, for q-expansions that carry a fixed
/// complex unit in front of a rational series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSeries {
    unit_power: u8,
    scalar: Rational,
    series: FracQSeries,
}

impl ScaledSeries {
    /// `unit_power` is reduced mod 4; `scalar` must be nonzero.
    pub fn new(unit_power: i64, scalar: Rational, series: FracQSeries) -> Self {
        assert!(scalar != 0, "scalar of a ScaledSeries must be nonzero");
        Self {
            unit_power: unit_power.rem_euclid(4) as u8,
            scalar,
            series,
        }
    }

    pub fn real(series: FracQSeries) -> Self {
        Self::new(0, Rational::from(1), series)
    }

    pub fn unit_power(&self) -> u8 {
        self.unit_power
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn series(&self) -> &FracQSeries {
        &self.series
    }

    /// `scalar * series`, i.e. the value with the unit `i^m` dropped.
    pub fn unscaled(&self) -> FracQSeries {
        self.series.scale(&self.scalar)
    }
}

/// Render a rational as `num/den` (or `num` for integers).
pub fn rational_string(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
