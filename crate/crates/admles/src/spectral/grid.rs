use crate::error::{Error, Result};
use crate::scalar::{fp, Scalar};

/// The periodic box `[0, L]^3` together with the retained Fourier band.
///
/// Modes are lattice points `n` with `|n_i| <= m` per axis, so the grid keeps
/// `(2m+1)^3` coefficients and the collocation grid has `2m+1` points per
/// axis. Physical wavevectors are `k = (2*pi/L) * n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusSpec<T> {
    length: T,
    max_mode: u32,
}

impl<T: Scalar> TorusSpec<T> {
    pub fn new(length: T, max_mode: u32) -> Result<Self> {
        if !(length > T::zero()) {
            return Err(Error::invalid("L", "box edge length must be positive"));
        }
        if max_mode < 2 {
            return Err(Error::invalid("m", "need at least two modes per axis (m >= 2)"));
        }
        Ok(TorusSpec { length, max_mode })
    }

    /// Box edge length `L`.
    pub fn length(&self) -> T {
        self.length
    }

    /// Largest retained lattice index `m`.
    pub fn max_mode(&self) -> u32 {
        self.max_mode
    }

    /// Points per axis on the collocation grid, `2m + 1`.
    pub fn points_per_axis(&self) -> usize {
        2 * self.max_mode as usize + 1
    }

    /// Total retained modes (and collocation points), `(2m+1)^3`.
    pub fn mode_count(&self) -> usize {
        let n = self.points_per_axis();
        n * n * n
    }

    /// 2/3-rule cutoff: products of fields supported on `|n_i| <= cutoff`
    /// are alias-free on that same band when evaluated on the `(2m+1)^3`
    /// collocation grid, because `2m + 1 > 3 * floor(2m/3)`.
    pub fn dealias_cutoff(&self) -> i64 {
        (2 * self.max_mode as i64) / 3
    }

    /// Fundamental wavenumber `2*pi/L`.
    pub fn k_base(&self) -> T {
        (T::PI() + T::PI()) / self.length
    }

    /// Collocation spacing `L / (2m+1)`.
    pub fn dx(&self) -> T {
        self.length / fp::<T>(self.points_per_axis() as f64)
    }

    /// Box volume `L^3`.
    pub fn volume(&self) -> T {
        self.length * self.length * self.length
    }

    pub fn wavevector(&self, n: [i64; 3]) -> WaveVector<T> {
        let kb = self.k_base();
        let k = [
            kb * fp::<T>(n[0] as f64),
            kb * fp::<T>(n[1] as f64),
            kb * fp::<T>(n[2] as f64),
        ];
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        WaveVector { n, k, k2 }
    }

    /// Flat storage index of lattice point `n`; `n1` outermost, `n3` innermost.
    pub fn flat_index(&self, n: [i64; 3]) -> usize {
        let m = self.max_mode as i64;
        debug_assert!(n.iter().all(|c| c.abs() <= m));
        let s = self.points_per_axis();
        (((n[0] + m) as usize * s) + (n[1] + m) as usize) * s + (n[2] + m) as usize
    }

    pub fn mode_at(&self, idx: usize) -> [i64; 3] {
        let s = self.points_per_axis();
        let m = self.max_mode as i64;
        let n3 = (idx % s) as i64 - m;
        let n2 = ((idx / s) % s) as i64 - m;
        let n1 = (idx / (s * s)) as i64 - m;
        [n1, n2, n3]
    }

    /// All retained wavevectors in flat storage order.
    pub fn wavevectors(&self) -> impl Iterator<Item = WaveVector<T>> + '_ {
        let m = self.max_mode as i64;
        (-m..=m).flat_map(move |n1| {
            (-m..=m).flat_map(move |n2| (-m..=m).map(move |n3| self.wavevector([n1, n2, n3])))
        })
    }

    /// Largest retained `|k|^2` on this grid, `3 (k_base * m)^2`.
    pub fn k2_max(&self) -> T {
        let km = self.k_base() * fp::<T>(self.max_mode as f64);
        fp::<T>(3.0) * km * km
    }
}

/// A single lattice mode: integer index `n`, physical wavevector
/// `k = 2*pi*n/L`, and its Euclidean squared magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector<T> {
    pub n: [i64; 3],
    pub k: [T; 3],
    pub k2: T,
}

impl<T: Scalar> WaveVector<T> {
    pub fn is_zero(&self) -> bool {
        self.n == [0, 0, 0]
    }
}
