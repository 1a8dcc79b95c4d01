//! Two-dimensional divergence-free frame.

pub mod spatial;
pub mod spec;
pub mod transform;

pub use spatial::{mother_wavelet_2d, scaling_hat_2d, wavelet_hat_2d, wavelet_spatial_2d};
pub use spec::FrameSpec2D;
pub use transform::{analyze_2d, finest_scaling_2d, synthesize_finest_2d, synthesize_2d, tangential_spectrum, Band, CoefficientPyramid2D, SynthesisReport};
