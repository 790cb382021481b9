//! Periodic orthogonal wavelet transform.
//!
//! The transform matrix `W` is never formed; [`dwt`] and [`idwt`] run the
//! O(n) pyramid algorithm with circular boundary handling, which keeps `W`
//! exactly orthogonal for every supported filter and every `n = 2^J`.

mod filters;
mod transform;

pub use filters::{build_filter, Family, FilterBank};
pub use transform::{
    default_j0, detail_levels, dwt, idwt, transform_design, CoefficientSet,
};
pub(crate) use transform::dyadic_log2;
