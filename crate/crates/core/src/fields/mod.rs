//! Test fields, projections, error metrics and file formats.

pub mod container;
pub mod field;
pub mod generators;
pub mod ingest;
pub mod leray;
pub mod metrics;

pub use field::{VectorField2D, VectorField3D};
pub use generators::{
    make_eigenfield, make_eigenfield_3d, make_random_field, make_shear_layer, make_vortex_street, make_vortices, EigenfieldRecipe, Mode,
    Vortex, VortexStreet,
};
pub use ingest::{ingest_csv, ingest_csv_path, IngestReport};
pub use leray::{divergence_spectral, divergence_spectral_3d, leray_project, leray_project_3d};
pub use metrics::{error_metrics, error_metrics_3d, ErrorMetrics};
