//! Divergence-free polar wavelet frames.
//!
//! Tight frames of vector-valued wavelets whose every element is
//! divergence free, in two and three dimensions. Analysis and synthesis
//! run on periodic grids through the DFT; a separate spatial-domain
//! filter pyramid gives an FFT-free fast transform in 2D.
//!
//! ```
//! use divfree::frame2d::{FrameSpec2D, analyze_2d, synthesize_2d};
//! use divfree::fields::{make_eigenfield, EigenfieldRecipe};
//!
//! let spec = FrameSpec2D::isotropic(64, 0, 2).unwrap();
//! let u = make_eigenfield(&EigenfieldRecipe::single(2, 1, 1.0), 64).unwrap();
//! let pyr = analyze_2d(&u, &spec).unwrap();
//! let (back, _) = synthesize_2d(&pyr, &spec).unwrap();
//! assert!(divfree::fields::error_metrics(&u, &back, 0).l2_relative < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod fast_transform;
pub mod fields;
pub mod frame2d;
pub mod frame3d;
pub mod grid;
pub mod special_fn;
pub mod windows;

pub use error::{Error, Result};
pub use num_complex::Complex64;
