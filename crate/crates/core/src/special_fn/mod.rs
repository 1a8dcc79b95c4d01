//! Special functions: Bessel families, spherical harmonics, coupling
//! coefficients, rotation matrices and quadrature.

pub mod bessel;
pub mod clebsch;
pub mod quadrature;
pub mod sph_bessel;
pub mod sph_harm;
pub mod wigner;

pub use bessel::{bessel_j, bessel_j_orders};
pub use clebsch::{clebsch_gordan, gaunt, GauntTable};
pub use quadrature::{gauss_legendre, Integrator};
pub use sph_bessel::{sph_bessel_j, sph_bessel_orders};
pub use sph_harm::{lm_index, sph_harm, sph_harm_all, sph_harm_all_vec, SphericalDirection};
pub use wigner::{rotate_coefficients, wigner_d, wigner_d_euler, Rotation};
