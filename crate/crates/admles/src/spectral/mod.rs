//! Fourier representation of periodic fields on the 3D torus: grids,
//! coefficient storage, transforms, spectral calculus, projection,
//! dealiasing, and the `H_s` norms.

pub mod field;
pub mod grid;
pub mod transform;

pub use field::{
    PhysicalScalarField, PhysicalVectorField, SpectralScalarField, SpectralVectorField,
};
pub use grid::{TorusSpec, WaveVector};
pub use transform::{to_physical, to_spectral, SpectralTransform};
