//! Exact and certified numerics for level-2 Eisenstein series: the cn
//! polynomials `p_{2k+1}(λ)`, their q-series oracles, zero counting on the
//! arc `|z + 1/2| = 1/2`, and the associated weight identities.

pub mod arc;
pub mod cn;
pub mod error;
pub mod exact;
pub mod identities;
pub mod lambda_poly;
pub mod numeric;
pub mod qforms;

pub use error::{Error, Result};
pub use arc::{ArcEvaluation, ErrorBudget, InterlaceReport, LatticeSumSpec, ScanResult};
pub use exact::{FracQSeries, IsolatedRoot, RationalPolynomial, ScaledSeries, SturmChain};
pub use identities::{IdentityKind, IdentityReport};
pub use lambda_poly::{Basis, LambdaPolynomialResult};
pub use qforms::{EisensteinSeries, EvenReading, Sign};
