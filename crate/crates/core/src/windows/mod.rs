//! Radial and angular windows and the frame configuration they come from.

pub mod angular2d;
pub mod angular3d;
pub mod config;
pub mod radial;

pub use angular2d::{gaussian_profile, make_angular_window_2d, validate_tightness_2d, AngularWindow2D, Parity, TightnessReport2D};
pub use angular3d::{
    make_angular_window_3d, validate_tightness_3d, zonal_window, AngularWindow3D, OrientationSet, TightnessReport3D,
};
pub use config::{FrameConfig, WindowConfig2D, WindowConfig3D};
pub use radial::{radial_window, scaling_window, RadialProfile};
