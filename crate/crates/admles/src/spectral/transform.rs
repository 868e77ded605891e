use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::{fp, Scalar};
use crate::spectral::field::{
    PhysicalScalarField, PhysicalVectorField, SpectralScalarField, SpectralVectorField,
};
use crate::spectral::grid::TorusSpec;

/// FFT plans and scratch storage for one torus grid.
///
/// The spectral convention is `w(x) = sum_n c_n e^{i k.x}` with
/// `c_n = (1/|T3|) \int w e^{-i k.x}`; on the collocation grid this is an
/// unnormalized inverse DFT for synthesis and a `1/(2m+1)^3`-scaled forward
/// DFT for analysis. Lattice index `n` maps to DFT bin `n mod (2m+1)`.
///
/// Transforms are deterministic and single-threaded; callers that want
/// concurrency run one transform per simulation.
pub struct SpectralTransform<T: Scalar> {
    size: usize,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
    buf: Vec<Complex<T>>,
    rot: Vec<Complex<T>>,
    scratch: Vec<Complex<T>>,
    /// storage index (n + m) -> DFT bin (n mod M)
    perm: Vec<usize>,
}

impl<T: Scalar> SpectralTransform<T> {
    pub fn new(grid: &TorusSpec<T>) -> Self {
        let size = grid.points_per_axis();
        let total = grid.mode_count();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(size);
        let inverse = planner.plan_fft_inverse(size);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        let m = grid.max_mode() as usize;
        let perm = (0..size).map(|s| (s + m + 1) % size).collect();
        SpectralTransform {
            size,
            forward,
            inverse,
            buf: vec![Complex::new(T::zero(), T::zero()); total],
            rot: vec![Complex::new(T::zero(), T::zero()); total],
            scratch: vec![Complex::new(T::zero(), T::zero()); scratch_len],
            perm,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// In-place 3D FFT over `self.buf`: one contiguous-axis pass per axis,
    /// with an axis rotation in between; three rotations restore the layout.
    fn fft3(&mut self, forward: bool) {
        let s = self.size;
        for _ in 0..3 {
            if forward {
                self.forward
                    .process_with_scratch(&mut self.buf, &mut self.scratch);
            } else {
                self.inverse
                    .process_with_scratch(&mut self.buf, &mut self.scratch);
            }
            // rot[(c, a, b)] = buf[(a, b, c)]
            for a in 0..s {
                for b in 0..s {
                    let row = (a * s + b) * s;
                    for c in 0..s {
                        self.rot[(c * s + a) * s + b] = self.buf[row + c];
                    }
                }
            }
            std::mem::swap(&mut self.buf, &mut self.rot);
        }
    }

    /// Synthesis of one component: spectral coefficients (storage order)
    /// to collocation values.
    pub fn synthesize_into(&mut self, coeffs: &[Complex<T>], out: &mut [T]) {
        let s = self.size;
        debug_assert_eq!(coeffs.len(), s * s * s);
        debug_assert_eq!(out.len(), s * s * s);
        for i in 0..s {
            let bi = self.perm[i] * s;
            for j in 0..s {
                let bij = (bi + self.perm[j]) * s;
                let src = (i * s + j) * s;
                for l in 0..s {
                    self.buf[bij + self.perm[l]] = coeffs[src + l];
                }
            }
        }
        self.fft3(false);
        for (o, b) in out.iter_mut().zip(&self.buf) {
            *o = b.re;
        }
    }

    /// Analysis of one component: collocation values to spectral
    /// coefficients (storage order), mean-value normalization.
    pub fn analyze_into(&mut self, values: &[T], out: &mut [Complex<T>]) {
        let s = self.size;
        debug_assert_eq!(values.len(), s * s * s);
        debug_assert_eq!(out.len(), s * s * s);
        for (b, &v) in self.buf.iter_mut().zip(values) {
            *b = Complex::new(v, T::zero());
        }
        self.fft3(true);
        let scale = T::one() / fp::<T>((s * s * s) as f64);
        for i in 0..s {
            let bi = self.perm[i] * s;
            for j in 0..s {
                let bij = (bi + self.perm[j]) * s;
                let dst = (i * s + j) * s;
                for l in 0..s {
                    out[dst + l] = self.buf[bij + self.perm[l]] * scale;
                }
            }
        }
    }

    pub fn scalar_to_physical(&mut self, f: &SpectralScalarField<T>) -> PhysicalScalarField<T> {
        let mut values = vec![T::zero(); f.grid().mode_count()];
        self.synthesize_into(f.coeffs(), &mut values);
        PhysicalScalarField {
            grid: *f.grid(),
            values,
        }
    }

    pub fn vector_to_physical(&mut self, f: &SpectralVectorField<T>) -> PhysicalVectorField<T> {
        let mut out = PhysicalVectorField::zeros(*f.grid());
        for comp in 0..3 {
            self.synthesize_into(f.component(comp), &mut out.values[comp]);
        }
        out
    }

    pub fn scalar_to_spectral(&mut self, f: &PhysicalScalarField<T>) -> SpectralScalarField<T> {
        let mut out = SpectralScalarField::zeros(f.grid);
        self.analyze_into(&f.values, out.coeffs_mut());
        out
    }

    pub fn vector_to_spectral(&mut self, f: &PhysicalVectorField<T>) -> SpectralVectorField<T> {
        let mut out = SpectralVectorField::zeros(f.grid);
        for comp in 0..3 {
            self.analyze_into(&f.values[comp], out.component_mut(comp));
        }
        out
    }
}

/// One-shot synthesis; experiments and tests that do not hold a transform.
pub fn to_physical<T: Scalar>(f: &SpectralVectorField<T>) -> PhysicalVectorField<T> {
    SpectralTransform::new(f.grid()).vector_to_physical(f)
}

/// One-shot analysis.
pub fn to_spectral<T: Scalar>(f: &PhysicalVectorField<T>) -> SpectralVectorField<T> {
    SpectralTransform::new(&f.grid).vector_to_spectral(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid(m: u32) -> TorusSpec<f64> {
        TorusSpec::new(std::f64::consts::TAU, m).unwrap()
    }

    #[test]
    fn single_mode_synthesizes_to_cosine() {
        // Hermitian pair of amplitude a at n = (1,0,0) gives 2 a cos(2 pi x / L).
        let g = grid(4);
        let a = 0.7;
        let f = SpectralVectorField::single_mode(
            g,
            [1, 0, 0],
            [
                Complex::new(0.0, 0.0),
                Complex::new(a, 0.0),
                Complex::new(0.0, 0.0),
            ],
        );
        let phys = to_physical(&f);
        let s = g.points_per_axis();
        for j in 0..s {
            let x = g.length() * (j as f64) / (s as f64);
            let expected = 2.0 * a * (2.0 * std::f64::consts::PI * x / g.length()).cos();
            let got = phys.values[1][(j * s) * s];
            assert_relative_eq!(got, expected, epsilon = 1e-13);
            assert!(phys.values[0][(j * s) * s].abs() < 1e-14);
        }
    }

    #[test]
    fn zero_field_synthesizes_to_zero() {
        let phys = to_physical(&SpectralVectorField::<f64>::zeros(grid(3)));
        assert!(phys.values.iter().all(|c| c.iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn round_trip_is_tight() {
        let g = grid(8);
        let f = SpectralVectorField::random(g, 42, 8);
        let back = to_spectral(&to_physical(&f));
        let scale = f.max_abs();
        for comp in 0..3 {
            for (a, b) in f.component(comp).iter().zip(back.component(comp)) {
                assert!((a - b).norm() < 1e-13 * scale);
            }
        }
    }

    #[test]
    fn parseval_under_mean_value_convention() {
        let g = grid(6);
        let mut f = SpectralVectorField::random(g, 5, 6);
        f.zero_mean_in_place();
        let phys = to_physical(&f);
        let spectral_sq = f.sobolev_norm(0.0).powi(2);
        assert_relative_eq!(phys.mean_square(), spectral_sq, max_relative = 1e-12);
    }

    #[test]
    fn odd_grid_has_no_unpaired_nyquist_mode() {
        // every retained mode has its conjugate partner on the grid
        let g = grid(5);
        let f = SpectralVectorField::random(g, 2, 5);
        assert!(f.hermitian_error() < 1e-15);
        let back = to_spectral(&to_physical(&f));
        assert!(back.hermitian_error() < 1e-13 * (1.0 + f.max_abs()));
    }
}
