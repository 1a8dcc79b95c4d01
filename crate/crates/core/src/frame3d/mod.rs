//! Three-dimensional divergence-free frame.

pub mod hedgehog;
pub mod spatial;
pub mod spec;
pub mod transform;

pub use hedgehog::{hedgehog, tau, HedgehogVectors};
pub use spatial::{mother_wavelet_3d, scaling_hat_3d, wavelet_hat_3d, wavelet_spatial_3d};
pub use spec::FrameSpec3D;
pub use transform::{analyze_3d, hedgehog_spectra, synthesize_3d, CoefficientPyramid3D};
