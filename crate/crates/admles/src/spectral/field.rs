use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{fp, Scalar};
use crate::spectral::grid::TorusSpec;

/// Scalar periodic field stored as Fourier coefficients over the retained
/// lattice, `n1` outermost / `n3` innermost, the mean-value convention
/// `c_n = (1/|T3|) \int f e^{-i k.x}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralScalarField<T> {
    grid: TorusSpec<T>,
    coeffs: Vec<Complex<T>>,
}

/// Vector periodic field; one coefficient block per component.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVectorField<T> {
    grid: TorusSpec<T>,
    coeffs: [Vec<Complex<T>>; 3],
}

/// Collocation values on the `(2m+1)^3` grid, `x_j = j L / (2m+1)`,
/// same row-major ordering as the coefficient storage.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalScalarField<T> {
    pub grid: TorusSpec<T>,
    pub values: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalVectorField<T> {
    pub grid: TorusSpec<T>,
    pub values: [Vec<T>; 3],
}

impl<T: Scalar> PhysicalVectorField<T> {
    pub fn zeros(grid: TorusSpec<T>) -> Self {
        let n = grid.mode_count();
        PhysicalVectorField {
            grid,
            values: [vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n]],
        }
    }

    /// Largest pointwise speed `max_x |u(x)|`.
    pub fn max_speed(&self) -> T {
        let mut best = T::zero();
        for g in 0..self.values[0].len() {
            let s2 = self.values[0][g] * self.values[0][g]
                + self.values[1][g] * self.values[1][g]
                + self.values[2][g] * self.values[2][g];
            if s2 > best {
                best = s2;
            }
        }
        best.sqrt()
    }

    /// Mean of `|u|^2` over the collocation grid, i.e. `(1/|T3|) \int |u|^2`.
    pub fn mean_square(&self) -> T {
        let mut acc = T::zero();
        for c in 0..3 {
            for &v in &self.values[c] {
                acc = acc + v * v;
            }
        }
        acc / fp::<T>(self.values[0].len() as f64)
    }
}

impl<T: Scalar> SpectralScalarField<T> {
    pub fn zeros(grid: TorusSpec<T>) -> Self {
        SpectralScalarField {
            grid,
            coeffs: vec![Complex::new(T::zero(), T::zero()); grid.mode_count()],
        }
    }

    pub fn from_coeffs(grid: TorusSpec<T>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != grid.mode_count() {
            return Err(Error::GridMismatch(format!(
                "coefficient count {} does not match grid ({} modes)",
                coeffs.len(),
                grid.mode_count()
            )));
        }
        Ok(SpectralScalarField { grid, coeffs })
    }

    pub fn grid(&self) -> &TorusSpec<T> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coeffs
    }

    pub fn coeff(&self, n: [i64; 3]) -> Complex<T> {
        self.coeffs[self.grid.flat_index(n)]
    }

    pub fn set_coeff(&mut self, n: [i64; 3], value: Complex<T>) {
        let idx = self.grid.flat_index(n);
        self.coeffs[idx] = value;
    }

    /// In-place multiplication by a real symbol of `|k|^2`.
    pub fn scale_by_symbol(&mut self, symbol: impl Fn(T) -> T) {
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            let s = symbol(wv.k2);
            self.coeffs[idx] = self.coeffs[idx] * s;
        }
    }

    /// `grad(f)`: coefficients multiplied by `i k`.
    pub fn gradient(&self) -> SpectralVectorField<T> {
        let mut out = SpectralVectorField::zeros(self.grid);
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            let c = self.coeffs[idx];
            for comp in 0..3 {
                out.coeffs[comp][idx] = Complex::new(-c.im * wv.k[comp], c.re * wv.k[comp]);
            }
        }
        out
    }

    /// `lap(f)`: coefficients multiplied by `-|k|^2`.
    pub fn laplacian(&self) -> Self {
        let mut out = self.clone();
        out.scale_by_symbol(|k2| -k2);
        out
    }

    pub fn sobolev_norm(&self, s: T) -> T {
        let mut acc = T::zero();
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            if wv.is_zero() {
                continue;
            }
            acc = acc + wv.k2.powf(s) * self.coeffs[idx].norm_sqr();
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |m, c| m.max(c.re.abs()).max(c.im.abs()))
    }
}

impl<T: Scalar> SpectralVectorField<T> {
    pub fn zeros(grid: TorusSpec<T>) -> Self {
        let z = vec![Complex::new(T::zero(), T::zero()); grid.mode_count()];
        SpectralVectorField {
            grid,
            coeffs: [z.clone(), z.clone(), z],
        }
    }

    pub fn from_components(
        grid: TorusSpec<T>,
        coeffs: [Vec<Complex<T>>; 3],
    ) -> Result<Self> {
        for c in &coeffs {
            if c.len() != grid.mode_count() {
                return Err(Error::GridMismatch(format!(
                    "component length {} does not match grid ({} modes)",
                    c.len(),
                    grid.mode_count()
                )));
            }
        }
        Ok(SpectralVectorField { grid, coeffs })
    }

    /// Deterministic band-limited random field with a mild `1/(1+|n|^2)`
    /// spectral decay. Hermitian by construction; not projected.
    pub fn random(grid: TorusSpec<T>, seed: u64, band: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Self::zeros(grid);
        let b = band.min(grid.max_mode()) as i64;
        for n1 in -b..=b {
            for n2 in -b..=b {
                for n3 in -b..=b {
                    let n = [n1, n2, n3];
                    if !lex_positive(n) {
                        continue;
                    }
                    let decay = 1.0 / (1.0 + (n1 * n1 + n2 * n2 + n3 * n3) as f64);
                    for comp in 0..3 {
                        let re = fp::<T>(rng.gen_range(-1.0..1.0) * decay);
                        let im = fp::<T>(rng.gen_range(-1.0..1.0) * decay);
                        let c = Complex::new(re, im);
                        let idx = grid.flat_index(n);
                        let idn = grid.flat_index([-n1, -n2, -n3]);
                        out.coeffs[comp][idx] = c;
                        out.coeffs[comp][idn] = c.conj();
                    }
                }
            }
        }
        out
    }

    /// Field with a single Hermitian conjugate pair at `+/-n`.
    pub fn single_mode(grid: TorusSpec<T>, n: [i64; 3], amplitude: [Complex<T>; 3]) -> Self {
        let mut out = Self::zeros(grid);
        let idx = grid.flat_index(n);
        let idn = grid.flat_index([-n[0], -n[1], -n[2]]);
        for comp in 0..3 {
            out.coeffs[comp][idx] = amplitude[comp];
            out.coeffs[comp][idn] = amplitude[comp].conj();
        }
        out
    }

    pub fn grid(&self) -> &TorusSpec<T> {
        &self.grid
    }

    pub fn component(&self, comp: usize) -> &[Complex<T>] {
        &self.coeffs[comp]
    }

    pub fn component_mut(&mut self, comp: usize) -> &mut [Complex<T>] {
        &mut self.coeffs[comp]
    }

    pub fn coeff(&self, comp: usize, n: [i64; 3]) -> Complex<T> {
        self.coeffs[comp][self.grid.flat_index(n)]
    }

    pub fn set_coeff(&mut self, comp: usize, n: [i64; 3], value: Complex<T>) {
        let idx = self.grid.flat_index(n);
        self.coeffs[comp][idx] = value;
    }

    pub fn set_mode(&mut self, n: [i64; 3], value: [Complex<T>; 3]) {
        let idx = self.grid.flat_index(n);
        for comp in 0..3 {
            self.coeffs[comp][idx] = value[comp];
        }
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(
                "fields live on different torus grids".to_string(),
            ));
        }
        Ok(())
    }

    // ---- linear algebra helpers -------------------------------------------------

    pub fn scaled(&self, a: T) -> Self {
        let mut out = self.clone();
        for comp in 0..3 {
            for c in &mut out.coeffs[comp] {
                *c = *c * a;
            }
        }
        out
    }

    pub fn add_scaled(&mut self, a: T, other: &Self) {
        debug_assert_eq!(self.grid, other.grid);
        for comp in 0..3 {
            for (c, o) in self.coeffs[comp].iter_mut().zip(&other.coeffs[comp]) {
                *c = *c + *o * a;
            }
        }
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same_grid(other)?;
        let mut out = self.clone();
        for comp in 0..3 {
            for (c, o) in out.coeffs[comp].iter_mut().zip(&other.coeffs[comp]) {
                *c = *c - *o;
            }
        }
        Ok(out)
    }

    /// In-place multiplication of every component by a real symbol of `|k|^2`.
    pub fn scale_by_symbol(&mut self, symbol: impl Fn(T) -> T) {
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            let s = symbol(wv.k2);
            for comp in 0..3 {
                self.coeffs[comp][idx] = self.coeffs[comp][idx] * s;
            }
        }
    }

    /// In-place multiplication by a per-mode table in flat order.
    pub fn scale_by_table(&mut self, table: &[T]) {
        debug_assert_eq!(table.len(), self.grid.mode_count());
        for comp in 0..3 {
            for (c, &s) in self.coeffs[comp].iter_mut().zip(table) {
                *c = *c * s;
            }
        }
    }

    // ---- calculus ---------------------------------------------------------------

    /// `div(w)`: `i k . w_k` per mode.
    pub fn divergence(&self) -> SpectralScalarField<T> {
        let mut out = SpectralScalarField::zeros(self.grid);
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            let mut re = T::zero();
            let mut im = T::zero();
            for comp in 0..3 {
                let c = self.coeffs[comp][idx];
                // i * k * c = (-k*c.im, k*c.re)
                re = re - wv.k[comp] * c.im;
                im = im + wv.k[comp] * c.re;
            }
            out.coeffs[idx] = Complex::new(re, im);
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        let mut out = self.clone();
        out.scale_by_symbol(|k2| -k2);
        out
    }

    /// Largest `|k . w_k|` over the grid; zero for exactly divergence-free fields.
    pub fn max_divergence(&self) -> T {
        let mut best = T::zero();
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            let mut re = T::zero();
            let mut im = T::zero();
            for comp in 0..3 {
                let c = self.coeffs[comp][idx];
                re = re + wv.k[comp] * c.re;
                im = im + wv.k[comp] * c.im;
            }
            let mag = (re * re + im * im).sqrt();
            if mag > best {
                best = mag;
            }
        }
        best
    }

    /// Leray projection onto divergence-free, zero-mean fields:
    /// `w_k <- (I - k k^T / |k|^2) w_k`, zero mode annihilated.
    pub fn leray_project(&self) -> Self {
        let mut out = self.clone();
        out.leray_project_in_place();
        out
    }

    pub fn leray_project_in_place(&mut self) {
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            if wv.is_zero() {
                for comp in 0..3 {
                    self.coeffs[comp][idx] = Complex::new(T::zero(), T::zero());
                }
                continue;
            }
            let mut dot = Complex::new(T::zero(), T::zero());
            for comp in 0..3 {
                dot = dot + self.coeffs[comp][idx] * wv.k[comp];
            }
            let inv_k2 = T::one() / wv.k2;
            for comp in 0..3 {
                self.coeffs[comp][idx] =
                    self.coeffs[comp][idx] - dot * (wv.k[comp] * inv_k2);
            }
        }
    }

    /// Zero every coefficient with `max_i |n_i|` above the 2/3-rule cutoff.
    pub fn dealias(&self) -> Self {
        let mut out = self.clone();
        out.dealias_in_place();
        out
    }

    pub fn dealias_in_place(&mut self) {
        let cut = self.grid.dealias_cutoff();
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            let sup = wv.n[0].abs().max(wv.n[1].abs()).max(wv.n[2].abs());
            if sup > cut {
                for comp in 0..3 {
                    self.coeffs[comp][idx] = Complex::new(T::zero(), T::zero());
                }
            }
        }
    }

    // ---- norms and inner products -----------------------------------------------

    /// `H_s` norm: `sqrt(sum_{k != 0} |k|^{2s} |w_k|^2)`, components summed.
    pub fn sobolev_norm(&self, s: T) -> T {
        self.symbol_weighted_norm(s, |_| T::one())
    }

    /// `sqrt(sum_{k != 0} |k|^{2s} g(|k|^2)^2 |w_k|^2)`: the `H_s` norm of the
    /// diagonal operator with symbol `g` applied to this field.
    pub fn symbol_weighted_norm(&self, s: T, symbol: impl Fn(T) -> T) -> T {
        let mut acc = T::zero();
        let zero_s = s == T::zero();
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            if wv.is_zero() {
                continue;
            }
            let g = symbol(wv.k2);
            let weight = if zero_s { g * g } else { wv.k2.powf(s) * g * g };
            for comp in 0..3 {
                acc = acc + weight * self.coeffs[comp][idx].norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `H_s` inner product `sum |k|^{2s} w_k . conj(v_k)`, real part.
    ///
    /// For Hermitian fields the imaginary part vanishes; it is asserted to be
    /// below `1e-12` of the accumulated magnitude.
    pub fn hs_inner(&self, other: &Self, s: T) -> Result<T> {
        self.check_same_grid(other)?;
        let zero_s = s == T::zero();
        let mut re = T::zero();
        let mut im = T::zero();
        let mut scale = T::zero();
        for (idx, wv) in self.grid.wavevectors().enumerate() {
            if wv.is_zero() {
                continue;
            }
            let weight = if zero_s { T::one() } else { wv.k2.powf(s) };
            for comp in 0..3 {
                let p = self.coeffs[comp][idx] * other.coeffs[comp][idx].conj();
                re = re + weight * p.re;
                im = im + weight * p.im;
                scale = scale + weight * (p.re.abs() + p.im.abs());
            }
        }
        assert!(
            im.abs() <= fp::<T>(1e-12) * (scale + T::one()),
            "hs_inner: imaginary part {:?} exceeds 1e-12 of scale; fields not Hermitian?",
            im.to_f64()
        );
        Ok(re)
    }

    // ---- structure maintenance ----------------------------------------------------

    /// Worst deviation from `c(-n) = conj(c(n))` over all modes and components.
    pub fn hermitian_error(&self) -> T {
        let mut worst = T::zero();
        let m = self.grid.max_mode() as i64;
        for n1 in -m..=m {
            for n2 in -m..=m {
                for n3 in -m..=m {
                    let n = [n1, n2, n3];
                    if !lex_positive(n) && n != [0, 0, 0] {
                        continue;
                    }
                    let idx = self.grid.flat_index(n);
                    let idn = self.grid.flat_index([-n1, -n2, -n3]);
                    for comp in 0..3 {
                        let d = self.coeffs[comp][idx] - self.coeffs[comp][idn].conj();
                        worst = worst.max(d.re.abs()).max(d.im.abs());
                    }
                }
            }
        }
        worst
    }

    /// Restore exact Hermitian symmetry by averaging conjugate pairs, and
    /// zero the mean mode.
    pub fn hermitian_symmetrize(&mut self) {
        let m = self.grid.max_mode() as i64;
        let half = fp::<T>(0.5);
        for n1 in -m..=m {
            for n2 in -m..=m {
                for n3 in -m..=m {
                    let n = [n1, n2, n3];
                    if !lex_positive(n) {
                        continue;
                    }
                    let idx = self.grid.flat_index(n);
                    let idn = self.grid.flat_index([-n1, -n2, -n3]);
                    for comp in 0..3 {
                        let avg = (self.coeffs[comp][idx] + self.coeffs[comp][idn].conj()) * half;
                        self.coeffs[comp][idx] = avg;
                        self.coeffs[comp][idn] = avg.conj();
                    }
                }
            }
        }
        let zero = self.grid.flat_index([0, 0, 0]);
        for comp in 0..3 {
            self.coeffs[comp][zero] = Complex::new(T::zero(), T::zero());
        }
    }

    pub fn zero_mean_in_place(&mut self) {
        let zero = self.grid.flat_index([0, 0, 0]);
        for comp in 0..3 {
            self.coeffs[comp][zero] = Complex::new(T::zero(), T::zero());
        }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, comp| {
            comp.iter()
                .fold(m, |m, c| m.max(c.re.abs()).max(c.im.abs()))
        })
    }

    /// Re-embed the coefficients on a grid with a different band limit
    /// (same box length). Modes outside the target band are dropped; new
    /// modes are zero.
    pub fn reband(&self, target: TorusSpec<T>) -> Result<Self> {
        if target.length() != self.grid.length() {
            return Err(Error::GridMismatch(
                "reband requires identical box length".to_string(),
            ));
        }
        let mut out = Self::zeros(target);
        let m = self.grid.max_mode().min(target.max_mode()) as i64;
        for n1 in -m..=m {
            for n2 in -m..=m {
                for n3 in -m..=m {
                    let src = self.grid.flat_index([n1, n2, n3]);
                    let dst = target.flat_index([n1, n2, n3]);
                    for comp in 0..3 {
                        out.coeffs[comp][dst] = self.coeffs[comp][src];
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Lexicographic positivity picks one representative of each `+/-n` pair.
pub(crate) fn lex_positive(n: [i64; 3]) -> bool {
    if n[0] != 0 {
        return n[0] > 0;
    }
    if n[1] != 0 {
        return n[1] > 0;
    }
    n[2] > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::TorusSpec;
    use approx::assert_relative_eq;

    fn grid(m: u32) -> TorusSpec<f64> {
        TorusSpec::new(std::f64::consts::TAU, m).unwrap()
    }

    fn random_projected(m: u32, seed: u64) -> SpectralVectorField<f64> {
        let mut f = SpectralVectorField::random(grid(m), seed, m);
        f.zero_mean_in_place();
        f.leray_project_in_place();
        f
    }

    #[test]
    fn leray_fixes_divergence_free_fields() {
        let f = random_projected(6, 7);
        let again = f.leray_project();
        for comp in 0..3 {
            for (a, b) in f.component(comp).iter().zip(again.component(comp)) {
                assert!((a - b).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn leray_annihilates_gradients() {
        let g = grid(6);
        let mut phi = SpectralScalarField::zeros(g);
        let mut rng_seeded = SpectralVectorField::random(g, 3, 6);
        rng_seeded.zero_mean_in_place();
        // borrow one component as a Hermitian scalar field
        phi.coeffs_mut().copy_from_slice(rng_seeded.component(0));
        let grad = phi.gradient();
        let projected = grad.leray_project();
        assert!(projected.max_abs() < 1e-14 * (1.0 + grad.max_abs()));
    }

    #[test]
    fn leray_output_is_divergence_free() {
        let f = SpectralVectorField::random(grid(8), 11, 8).leray_project();
        let scale = f.sobolev_norm(1.0);
        assert!(f.max_divergence() < 1e-14 * (1.0 + scale));
    }

    #[test]
    fn dealias_thresholds_modes() {
        let g = grid(8);
        assert_eq!(g.dealias_cutoff(), 5);
        let one = Complex::new(1.0, 0.0);
        let mut f = SpectralVectorField::zeros(g);
        f.set_mode([6, 0, 0], [one, one, one]);
        f.set_mode([-6, 0, 0], [one, one, one]);
        f.set_mode([5, 3, 1], [one, one, one]);
        let d = f.dealias();
        assert_eq!(d.coeff(0, [6, 0, 0]), Complex::new(0.0, 0.0));
        assert_eq!(d.coeff(0, [-6, 0, 0]), Complex::new(0.0, 0.0));
        assert_eq!(d.coeff(1, [5, 3, 1]), one);
    }

    #[test]
    fn dealias_keeps_low_band_untouched() {
        let g = grid(9);
        let f = SpectralVectorField::random(g, 5, g.dealias_cutoff() as u32);
        let d = f.dealias();
        assert_eq!(f, d);
    }

    #[test]
    fn sobolev_norm_single_pair() {
        // conjugate pair at |k| = 2, |w_k| = 1 each, s = 1:
        // norm^2 = 2 * 2^2 = 8
        let g = grid(8);
        let f = SpectralVectorField::single_mode(
            g,
            [2, 0, 0],
            [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
        );
        assert_relative_eq!(f.sobolev_norm(1.0), 8.0_f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn sobolev_norm_two_shells_s2() {
        // unit pairs at |k| = 1 and |k| = 2, s = 2: norm^2 = 2*1 + 2*16 = 34
        let g = grid(8);
        let e2 = [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)];
        let mut f = SpectralVectorField::single_mode(g, [1, 0, 0], e2);
        let other = SpectralVectorField::single_mode(g, [2, 0, 0], e2);
        f.add_scaled(1.0, &other);
        assert_relative_eq!(f.sobolev_norm(2.0), 34.0_f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn hs_inner_matches_norm_and_is_symmetric() {
        let f = random_projected(6, 21);
        let g = random_projected(6, 22);
        let s = 1.0;
        let n2 = f.hs_inner(&f, s).unwrap();
        assert_relative_eq!(n2, f.sobolev_norm(s).powi(2), max_relative = 1e-13);
        let fg = f.hs_inner(&g, s).unwrap();
        let gf = g.hs_inner(&f, s).unwrap();
        assert_relative_eq!(fg, gf, max_relative = 1e-14);
    }

    #[test]
    fn hs_inner_orthogonal_modes() {
        let g = grid(6);
        let e = [Complex::new(1.0, 0.5), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)];
        let a = SpectralVectorField::single_mode(g, [1, 0, 0], e);
        let b = SpectralVectorField::single_mode(g, [0, 2, 0], e);
        assert_eq!(a.hs_inner(&b, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn hs_inner_rejects_grid_mismatch() {
        let a = SpectralVectorField::<f64>::zeros(grid(6));
        let b = SpectralVectorField::<f64>::zeros(grid(8));
        assert!(a.hs_inner(&b, 0.0).is_err());
    }

    #[test]
    fn laplacian_scales_single_mode() {
        let g = grid(8);
        let e = [Complex::new(0.3, -0.1), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)];
        let f = SpectralVectorField::single_mode(g, [0, 2, 0], e);
        let lap = f.laplacian();
        assert_relative_eq!(lap.coeff(0, [0, 2, 0]).re, -4.0 * 0.3, max_relative = 1e-14);
        assert_relative_eq!(lap.coeff(0, [0, 2, 0]).im, -4.0 * -0.1, max_relative = 1e-14);
    }

    #[test]
    fn divergence_of_gradient_is_laplacian() {
        let g = grid(6);
        let mut phi = SpectralScalarField::zeros(g);
        let noise = SpectralVectorField::random(g, 9, 6);
        phi.coeffs_mut().copy_from_slice(noise.component(1));
        let via_grad = phi.gradient().divergence();
        let via_lap = phi.laplacian();
        let scale = phi.max_abs() * g.k2_max();
        for (a, b) in via_grad.coeffs().iter().zip(via_lap.coeffs()) {
            assert!((a - b).norm() <= 1e-14 * (1.0 + scale));
        }
    }

    #[test]
    fn divergence_free_field_has_tiny_divergence() {
        let f = random_projected(8, 33);
        assert!(f.max_divergence() < 1e-14 * (1.0 + f.sobolev_norm(1.0)));
    }

    #[test]
    fn hermitian_error_detects_breakage() {
        let g = grid(4);
        let mut f = SpectralVectorField::random(g, 1, 4);
        assert!(f.hermitian_error() < 1e-15);
        let idx = g.flat_index([1, 2, 0]);
        f.component_mut(0)[idx] = f.component_mut(0)[idx] + Complex::new(1e-3, 0.0);
        assert!(f.hermitian_error() > 1e-4);
        f.hermitian_symmetrize();
        assert!(f.hermitian_error() < 1e-15);
    }

    #[test]
    fn reband_preserves_shared_modes() {
        let f = SpectralVectorField::random(grid(4), 17, 4);
        let up = f.reband(grid(7)).unwrap();
        let back = up.reband(grid(4)).unwrap();
        assert_eq!(f, back);
    }
}
