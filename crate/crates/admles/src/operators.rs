//! The filter/deconvolution operator algebra as diagonal Fourier multipliers.
//!
//! All operators here are isotropic: their symbols depend on the wavevector
//! only through `|k|^2`, written `x = alpha^2 |k|^2` below. The algebra:
//!
//! * Helmholtz filter      `G`:       symbol `1 / (1 + x)`
//! * its inverse           `A`:       symbol `1 + x`
//! * Van Cittert order N   `D_N`:     symbol `(1 + x) rho_N` with
//!   `rho_N = 1 - (x/(1+x))^{N+1}`, equal to the truncated geometric series
//!   `sum_{n=0}^{N} (x/(1+x))^n`
//! * Yosida order N        `A_{1/N}`: symbol `(1 + x) N / (N + 1 + x)`
//!
//! plus real powers and products of the above. Every symbol is strictly
//! positive on the whole lattice, so powers are well-defined and the
//! operators are simultaneously diagonalized by the Fourier basis: they are
//! self-adjoint and commute with differentiation and with each other.

use crate::error::{Error, Result};
use crate::scalar::{fp, Scalar};
use crate::spectral::{SpectralScalarField, SpectralVectorField, TorusSpec, WaveVector};

/// Symbol of the Helmholtz filter `G = (I - alpha^2 Lap)^{-1}`.
pub fn helmholtz_symbol<T: Scalar>(alpha: T, k2: T) -> T {
    assert!(alpha > T::zero(), "filter radius alpha must be positive");
    T::one() / (T::one() + alpha * alpha * k2)
}

/// `rho_{N,k} = 1 - (x/(1+x))^{N+1}` computed cancellation-free via `exp_m1`.
///
/// On any finite grid the ratio `r = x/(1+x)` is strictly below one, so
/// `r^{N+1}` never reaches zero loss; evaluating it as
/// `exp((N+1) ln r)` keeps full relative accuracy for large `N` and the
/// `exp_m1` form keeps `1 - r^{N+1}` accurate when `r^{N+1}` is close to one.
pub fn vancittert_rho<T: Scalar>(order: u32, alpha: T, k2: T) -> T {
    assert!(alpha > T::zero(), "filter radius alpha must be positive");
    let x = alpha * alpha * k2;
    if x == T::zero() {
        return T::one();
    }
    let r = x / (T::one() + x);
    let np1 = fp::<T>(order as f64 + 1.0);
    -(np1 * r.ln()).exp_m1()
}

/// Closed-form Van Cittert symbol `(1 + x) rho_{N,k}`.
pub fn deconvolution_symbol<T: Scalar>(order: u32, alpha: T, k2: T) -> T {
    let x = alpha * alpha * k2;
    (T::one() + x) * vancittert_rho(order, alpha, k2)
}

/// Term-by-term geometric sum `sum_{n=0}^{N} (x/(1+x))^n`.
///
/// Mathematically identical to [`deconvolution_symbol`]; kept as the
/// independent oracle the closed form is checked against.
pub fn deconvolution_symbol_series<T: Scalar>(order: u32, alpha: T, k2: T) -> T {
    assert!(alpha > T::zero(), "filter radius alpha must be positive");
    let x = alpha * alpha * k2;
    let r = x / (T::one() + x);
    let mut acc = T::one();
    let mut term = T::one();
    for _ in 0..order {
        term = term * r;
        acc = acc + term;
    }
    acc
}

/// Yosida symbol `(1 + x) sigma_{N,k}`, `sigma_{N,k} = N / (N + 1 + x)`.
pub fn yosida_symbol<T: Scalar>(order: u32, alpha: T, k2: T) -> T {
    assert!(alpha > T::zero(), "filter radius alpha must be positive");
    assert!(order >= 1, "Yosida approximation needs order >= 1");
    let x = alpha * alpha * k2;
    let n = fp::<T>(order as f64);
    (T::one() + x) * n / (n + T::one() + x)
}

/// Symbol of `A - D_N`, `(1 + x)(1 - rho_{N,k}) = (1 + x) r^{N+1}`.
pub fn gap_symbol<T: Scalar>(order: u32, alpha: T, k2: T) -> T {
    let x = alpha * alpha * k2;
    (T::one() + x) * (T::one() - vancittert_rho(order, alpha, k2))
}

/// A diagonal Fourier multiplier with a strictly positive isotropic symbol.
#[derive(Debug, Clone, PartialEq)]
pub enum Multiplier<T> {
    Identity,
    /// Helmholtz filter `G`.
    Helmholtz { alpha: T },
    /// `A = G^{-1} = I - alpha^2 Lap`.
    HelmholtzInverse { alpha: T },
    /// Van Cittert deconvolution `D_N`.
    VanCittert { alpha: T, order: u32 },
    /// Yosida approximation `A_{1/N}`.
    Yosida { alpha: T, order: u32 },
    /// Real power of a positive multiplier.
    Power { base: Box<Multiplier<T>>, exponent: T },
    /// Composition (symbols multiply).
    Product(Vec<Multiplier<T>>),
}

impl<T: Scalar> Multiplier<T> {
    pub fn identity() -> Self {
        Multiplier::Identity
    }

    pub fn helmholtz(alpha: T) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Multiplier::Helmholtz { alpha })
    }

    pub fn helmholtz_inverse(alpha: T) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Multiplier::HelmholtzInverse { alpha })
    }

    pub fn van_cittert(alpha: T, order: u32) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Multiplier::VanCittert { alpha, order })
    }

    pub fn yosida(alpha: T, order: u32) -> Result<Self> {
        check_alpha(alpha)?;
        if order == 0 {
            return Err(Error::invalid("N", "Yosida approximation needs N >= 1"));
        }
        Ok(Multiplier::Yosida { alpha, order })
    }

    /// `power_symbol`: pointwise real power of the (positive) symbol.
    pub fn power(self, exponent: T) -> Self {
        if exponent == T::one() {
            return self;
        }
        if exponent == T::zero() {
            return Multiplier::Identity;
        }
        Multiplier::Power {
            base: Box::new(self),
            exponent,
        }
    }

    /// Composition `self o other`.
    pub fn then(self, other: Self) -> Self {
        match (self, other) {
            (Multiplier::Identity, b) => b,
            (a, Multiplier::Identity) => a,
            (Multiplier::Product(mut v), Multiplier::Product(w)) => {
                v.extend(w);
                Multiplier::Product(v)
            }
            (Multiplier::Product(mut v), b) => {
                v.push(b);
                Multiplier::Product(v)
            }
            (a, Multiplier::Product(mut w)) => {
                w.insert(0, a);
                Multiplier::Product(w)
            }
            (a, b) => Multiplier::Product(vec![a, b]),
        }
    }

    /// Symbol value as a function of `|k|^2`.
    pub fn symbol_k2(&self, k2: T) -> T {
        match self {
            Multiplier::Identity => T::one(),
            Multiplier::Helmholtz { alpha } => helmholtz_symbol(*alpha, k2),
            Multiplier::HelmholtzInverse { alpha } => T::one() + *alpha * *alpha * k2,
            Multiplier::VanCittert { alpha, order } => deconvolution_symbol(*order, *alpha, k2),
            Multiplier::Yosida { alpha, order } => yosida_symbol(*order, *alpha, k2),
            Multiplier::Power { base, exponent } => base.symbol_k2(k2).powf(*exponent),
            Multiplier::Product(parts) => parts
                .iter()
                .fold(T::one(), |acc, p| acc * p.symbol_k2(k2)),
        }
    }

    pub fn symbol(&self, k: &WaveVector<T>) -> T {
        self.symbol_k2(k.k2)
    }

    /// Diagonal action on a vector field; preserves Hermitian symmetry,
    /// zero mean, and divergence-freeness because the symbol is real and
    /// isotropic.
    pub fn apply(&self, f: &SpectralVectorField<T>) -> SpectralVectorField<T> {
        let mut out = f.clone();
        out.scale_by_symbol(|k2| self.symbol_k2(k2));
        out
    }

    pub fn apply_scalar(&self, f: &SpectralScalarField<T>) -> SpectralScalarField<T> {
        let mut out = f.clone();
        out.scale_by_symbol(|k2| self.symbol_k2(k2));
        out
    }

    /// `||M f||_s` evaluated through the symbol without materializing `M f`.
    pub fn weighted_norm(&self, f: &SpectralVectorField<T>, s: T) -> T {
        f.symbol_weighted_norm(s, |k2| self.symbol_k2(k2))
    }

    /// Precompute the symbol over a grid; the table applies faster and must
    /// agree exactly with the lazy path (it is filled from it).
    pub fn tabulate(&self, grid: &TorusSpec<T>) -> SymbolTable<T> {
        let values = grid.wavevectors().map(|wv| self.symbol_k2(wv.k2)).collect();
        SymbolTable {
            grid: *grid,
            values,
        }
    }
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if !(alpha > T::zero()) {
        return Err(Error::invalid("alpha", "filter radius must be positive"));
    }
    Ok(())
}

/// Cached per-grid symbol table (read-only after construction).
#[derive(Debug, Clone)]
pub struct SymbolTable<T> {
    grid: TorusSpec<T>,
    values: Vec<T>,
}

impl<T: Scalar> SymbolTable<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn grid(&self) -> &TorusSpec<T> {
        &self.grid
    }

    pub fn apply_in_place(&self, f: &mut SpectralVectorField<T>) {
        debug_assert_eq!(*f.grid(), self.grid);
        f.scale_by_table(&self.values);
    }
}

/// `||(A - D_N) f||_s` evaluated through the gap symbol
/// `(1 + x)(1 - rho_{N,k})`.
pub fn operator_gap<T: Scalar>(
    order: u32,
    alpha: T,
    f: &SpectralVectorField<T>,
    s: T,
) -> T {
    f.symbol_weighted_norm(s, |k2| gap_symbol(order, alpha, k2))
}
