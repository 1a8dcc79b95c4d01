//! Pyramidal fast transform in 2D: closed-form filter taps and the
//! convolution recursions between adjacent levels.

pub mod bank;
pub mod conv;
pub mod pyramid;
pub mod taps;

pub use bank::{FilterBank, CACHE_ENV, DEFAULT_RADIUS};
pub use conv::{convolve, Mode};
pub use pyramid::{fwt_analyze, fwt_forward, fwt_inverse, fwt_synthesize};
pub use taps::{compute_taps, TapKind, Taps};
