//! Physical flux functions `f(k, u)`.

use alloc::boxed::Box;
use alloc::sync::Arc;

/// A flux `f(k, u)` together with what the schemes need to know about it.
pub trait FluxModel: Send + Sync {
    fn flux(&self, k: f64, u: f64) -> f64;

    /// `∂f/∂u`
    fn flux_derivative(&self, k: f64, u: f64) -> f64;

    /// Admissible solution range `[a, b]`.
    fn bounds(&self) -> (f64, f64);

    /// True when `f(k, u) = k f(1, u)`.
    fn is_multiplicative(&self) -> bool {
        false
    }

    /// Sorted points where `∂f/∂u (k, ·)` changes sign, when known in closed
    /// form. Lets the Engquist-Osher integral be evaluated exactly.
    fn speed_zeros(&self, _k: f64) -> Option<&[f64]> {
        None
    }

    /// `max |∂f/∂u (k, s)|` for `s` in `[lo, hi]`.
    fn max_abs_speed(&self, k: f64, lo: f64, hi: f64) -> f64 {
        const SAMPLES: usize = 32;
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mut m = self
            .flux_derivative(k, lo)
            .abs()
            .max(self.flux_derivative(k, hi).abs());
        for i in 1..SAMPLES {
            let s = lo + (hi - lo) * i as f64 / SAMPLES as f64;
            m = m.max(self.flux_derivative(k, s).abs());
        }
        m
    }

    /// Diffusion weight `g₁(u)` of the generalized capillarity model.
    fn g1(&self, _u: f64) -> Option<f64> {
        None
    }

    /// Dynamic-capillarity weight `h₁(u)` of the generalized model.
    fn h1(&self, _u: f64) -> Option<f64> {
        None
    }

    fn has_capillarity_weights(&self) -> bool {
        false
    }
}

macro_rules! forward_model {
    ($($ptr:ty),*) => {$(
        impl<T: FluxModel + ?Sized> FluxModel for $ptr {
            #[inline]
            fn flux(&self, k: f64, u: f64) -> f64 { (**self).flux(k, u) }
            #[inline]
            fn flux_derivative(&self, k: f64, u: f64) -> f64 { (**self).flux_derivative(k, u) }
            fn bounds(&self) -> (f64, f64) { (**self).bounds() }
            fn is_multiplicative(&self) -> bool { (**self).is_multiplicative() }
            fn speed_zeros(&self, k: f64) -> Option<&[f64]> { (**self).speed_zeros(k) }
            #[inline]
            fn max_abs_speed(&self, k: f64, lo: f64, hi: f64) -> f64 { (**self).max_abs_speed(k, lo, hi) }
            fn g1(&self, u: f64) -> Option<f64> { (**self).g1(u) }
            fn h1(&self, u: f64) -> Option<f64> { (**self).h1(u) }
            fn has_capillarity_weights(&self) -> bool { (**self).has_capillarity_weights() }
        }
    )*};
}

forward_model!(&T, Box<T>, Arc<T>);

/// Linear advection `f(k, u) = k u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linear {
    pub bounds: (f64, f64),
}

impl FluxModel for Linear {
    #[inline]
    fn flux(&self, k: f64, u: f64) -> f64 {
        k * u
    }

    #[inline]
    fn flux_derivative(&self, k: f64, _u: f64) -> f64 {
        k
    }

    fn bounds(&self) -> (f64, f64) {
        self.bounds
    }

    fn is_multiplicative(&self) -> bool {
        true
    }

    fn speed_zeros(&self, _k: f64) -> Option<&[f64]> {
        Some(&[])
    }

    fn max_abs_speed(&self, k: f64, _lo: f64, _hi: f64) -> f64 {
        k.abs()
    }
}

/// Burgers flux `f(k, u) = k u²/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Burgers {
    pub bounds: (f64, f64),
}

impl FluxModel for Burgers {
    #[inline]
    fn flux(&self, k: f64, u: f64) -> f64 {
        0.5 * k * u * u
    }

    #[inline]
    fn flux_derivative(&self, k: f64, u: f64) -> f64 {
        k * u
    }

    fn bounds(&self) -> (f64, f64) {
        self.bounds
    }

    fn is_multiplicative(&self) -> bool {
        true
    }

    fn speed_zeros(&self, _k: f64) -> Option<&[f64]> {
        Some(&[0.0])
    }

    fn max_abs_speed(&self, k: f64, lo: f64, hi: f64) -> f64 {
        k.abs() * lo.abs().max(hi.abs())
    }
}

const INV_SQRT3: f64 = 0.577_350_269_189_625_8;

/// Cubic flux `f(k, u) = k (u³ - u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    pub bounds: (f64, f64),
}

impl FluxModel for Cubic {
    #[inline]
    fn flux(&self, k: f64, u: f64) -> f64 {
        k * (u * u * u - u)
    }

    #[inline]
    fn flux_derivative(&self, k: f64, u: f64) -> f64 {
        k * (3.0 * u * u - 1.0)
    }

    fn bounds(&self) -> (f64, f64) {
        self.bounds
    }

    fn is_multiplicative(&self) -> bool {
        true
    }

    fn speed_zeros(&self, _k: f64) -> Option<&[f64]> {
        Some(&[-INV_SQRT3, INV_SQRT3])
    }

    fn max_abs_speed(&self, k: f64, lo: f64, hi: f64) -> f64 {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        // 3s² - 1 is convex with its minimum -1 at s = 0.
        let mut m = (3.0 * lo * lo - 1.0).abs().max((3.0 * hi * hi - 1.0).abs());
        if lo <= 0.0 && hi >= 0.0 {
            m = m.max(1.0);
        }
        k.abs() * m
    }
}

/// Two-phase porous-media flux with permeability `k`:
///
/// ```text
/// f(k, u) = z_w (1 - k z_o) / (z_w + z_o),   z_w = u²,  z_o = (1 - u)²
/// g₁(u)   = z_w z_o / (z_w + z_o) · |P'(u)|,  P(u) = (u^{-4/3} - 1)^{1/4}
/// h₁(u)   = z_w z_o / (z_w + z_o)
/// ```
///
/// `g₁` and `h₁` vanish at `u ∈ {0, 1}` and `P'` is singular there, so both
/// weights are evaluated on `u` clamped to `clamp`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhase {
    pub clamp: (f64, f64),
}

impl Default for TwoPhase {
    fn default() -> Self {
        Self {
            clamp: (0.05, 0.95),
        }
    }
}

impl TwoPhase {
    fn mobility_product(u: f64) -> f64 {
        let zw = u * u;
        let zo = (1.0 - u) * (1.0 - u);
        zw * zo / (zw + zo)
    }

    /// `|P'(u)| = (1/3) u^{-7/3} (u^{-4/3} - 1)^{-3/4}`
    pub fn capillary_pressure_slope(u: f64) -> f64 {
        let inner = libm::pow(u, -4.0 / 3.0) - 1.0;
        libm::pow(u, -7.0 / 3.0) * libm::pow(inner, -0.75) / 3.0
    }

    /// `P(u) = (u^{-4/3} - 1)^{1/4}`
    pub fn capillary_pressure(u: f64) -> f64 {
        libm::pow(libm::pow(u, -4.0 / 3.0) - 1.0, 0.25)
    }

    #[inline]
    fn clamped(&self, u: f64) -> f64 {
        u.clamp(self.clamp.0, self.clamp.1)
    }
}

impl FluxModel for TwoPhase {
    #[inline]
    fn flux(&self, k: f64, u: f64) -> f64 {
        let zw = u * u;
        let zo = (1.0 - u) * (1.0 - u);
        zw * (1.0 - k * zo) / (zw + zo)
    }

    fn flux_derivative(&self, k: f64, u: f64) -> f64 {
        let zw = u * u;
        let zo = (1.0 - u) * (1.0 - u);
        let num = zw * (1.0 - k * zo);
        let den = zw + zo;
        let dnum = 2.0 * u * (1.0 - k * zo) + 2.0 * k * zw * (1.0 - u);
        let dden = 4.0 * u - 2.0;
        (dnum * den - num * dden) / (den * den)
    }

    fn bounds(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn g1(&self, u: f64) -> Option<f64> {
        let u = self.clamped(u);
        Some(Self::mobility_product(u) * Self::capillary_pressure_slope(u))
    }

    fn h1(&self, u: f64) -> Option<f64> {
        Some(Self::mobility_product(self.clamped(u)))
    }

    fn has_capillarity_weights(&self) -> bool {
        true
    }
}
