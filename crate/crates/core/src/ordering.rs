//! Ordering parameter algebra, unit conventions and wavenumbers.

use num_complex::Complex64;

use crate::error::{require_finite, require_positive, Result};

/// Unit system. Every formula carries `hbar` explicitly; the default is the
/// natural-unit choice `hbar = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64) -> Result<Self> {
        Ok(Self {
            hbar: require_positive("hbar", hbar)?,
        })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `2m / hbar^2`, the factor converting kinetic energy into `k^2`.
    pub fn kinetic_factor(&self, mass: f64) -> f64 {
        2.0 * mass / (self.hbar * self.hbar)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { hbar: 1.0 }
    }
}

/// A member of the kinetic-operator family `(m^α p m^β p m^α) / 2`.
///
/// Only `β` is free: `α = γ = -(1 + β)/2` so that `2α + β = -1` holds by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingScheme {
    beta: f64,
    alpha: f64,
}

impl OrderingScheme {
    /// `p m^{-1} p / 2`.
    pub const BEN_DANIEL_DUKE: OrderingScheme = OrderingScheme { beta: -1.0, alpha: 0.0 };

    /// `m^{-1/4} p m^{-1/2} p m^{-1/4} / 2`, the ordering for which σ = 1
    /// for every mass ratio.
    pub const FLAT: OrderingScheme = OrderingScheme {
        beta: -0.5,
        alpha: -0.25,
    };

    pub fn new(beta: f64) -> Result<Self> {
        let beta = require_finite("beta", beta)?;
        Ok(Self {
            beta,
            alpha: -(1.0 + beta) / 2.0,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Outer exponent on the right of the kinetic operator; always equal to α.
    pub fn gamma(&self) -> f64 {
        self.alpha
    }

    /// `σ(μ) = μ^(β + 1/2)` for the mass ratio `μ = m1/m2`.
    pub fn sigma(&self, mass_ratio: f64) -> Result<f64> {
        sigma(mass_ratio, self.beta)
    }
}

/// `σ = μ^(β + 1/2)` with `μ = m1/m2 > 0`.
///
/// Evaluated as `exp((β + 1/2) ln μ)` so that `μ = 1` and `β = -1/2` give
/// exactly 1.
pub fn sigma(mass_ratio: f64, beta: f64) -> Result<f64> {
    let mass_ratio = require_positive("mass ratio", mass_ratio)?;
    let beta = require_finite("beta", beta)?;
    Ok(((beta + 0.5) * mass_ratio.ln()).exp())
}

/// `k^2 = 2m(E - V)/hbar^2`; negative below the local potential.
pub fn wavenumber_squared(energy: f64, mass: f64, potential: f64, constants: &PhysicalConstants) -> f64 {
    constants.kinetic_factor(mass) * (energy - potential)
}

/// `k = sqrt(2m(E - V))/hbar` on the branch `Im k >= 0` (and `Re k >= 0` on
/// the real axis), so `e^{ikx}` decays to the right below the potential.
pub fn wavenumber(energy: f64, mass: f64, potential: f64, constants: &PhysicalConstants) -> Complex64 {
    let k2 = wavenumber_squared(energy, mass, potential, constants);
    if k2 >= 0.0 {
        Complex64::new(k2.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-k2).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(1.0, -1.0).unwrap(), 1.0);
        // 0.25^(-1/2) = 2
        assert_relative_eq!(sigma(0.25, -1.0).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(sigma(4.0, -1.0).unwrap(), 0.5, max_relative = 1e-15);
        assert_eq!(sigma(7.3, -0.5).unwrap(), 1.0);
    }

    #[test]
    fn sigma_rejects_non_positive_ratio() {
        assert!(sigma(0.0, -1.0).is_err());
        assert!(sigma(-2.0, -1.0).is_err());
        assert!(sigma(f64::NAN, -1.0).is_err());
    }

    #[test]
    fn scheme_constraint() {
        for beta in [-1.5, -1.0, -0.5, 0.0, 0.5] {
            let s = OrderingScheme::new(beta).unwrap();
            assert_eq!(2.0 * s.alpha() + s.beta(), -1.0);
            assert_eq!(s.gamma(), s.alpha());
        }
        assert_eq!(OrderingScheme::new(-1.0).unwrap(), OrderingScheme::BEN_DANIEL_DUKE);
        assert_eq!(OrderingScheme::new(-0.5).unwrap(), OrderingScheme::FLAT);
        assert!(OrderingScheme::new(f64::INFINITY).is_err());
        assert!(PhysicalConstants::new(0.0).is_err());
    }

    #[test]
    fn wavenumber_examples() {
        let c = PhysicalConstants::default();
        assert_eq!(wavenumber(2.0, 1.0, 0.0, &c), Complex64::new(2.0, 0.0));
        let k = wavenumber(0.5, 2.0, 1.0, &c);
        assert_eq!(k.re, 0.0);
        assert_relative_eq!(k.im, 2f64.sqrt(), max_relative = 1e-15);
        // e^{ikx} decays to the right
        assert!((Complex64::i() * k * 10.0).exp().norm() < 1e-6);
        assert_eq!(wavenumber(1.0, 3.0, 1.0, &c), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn wavenumber_carries_hbar() {
        let c = PhysicalConstants::new(0.5).unwrap();
        assert_relative_eq!(wavenumber(2.0, 1.0, 0.0, &c).re, 4.0, max_relative = 1e-15);
    }

    proptest! {
        #[test]
        fn sigma_reciprocal(log_mu in -8.0f64..8.0, beta in -3.0f64..3.0) {
            let mu = log_mu.exp();
            let product = sigma(mu, beta).unwrap() * sigma(1.0 / mu, beta).unwrap();
            prop_assert!((product - 1.0).abs() <= 1e-14);
        }

        #[test]
        fn sigma_flat_is_one(log_mu in -20.0f64..20.0) {
            prop_assert_eq!(sigma(log_mu.exp(), -0.5).unwrap(), 1.0);
        }

        #[test]
        fn wavenumber_branch_and_square(
            energy in -50.0f64..50.0,
            mass in 0.01f64..20.0,
            potential in -50.0f64..50.0,
            hbar in 0.1f64..3.0,
        ) {
            let c = PhysicalConstants::new(hbar).unwrap();
            let k = wavenumber(energy, mass, potential, &c);
            prop_assert!(k.im >= 0.0);
            if k.im == 0.0 {
                prop_assert!(k.re >= 0.0);
            }
            let expected = 2.0 * mass * (energy - potential) / (hbar * hbar);
            let got = (k * k).re;
            prop_assert!((got - expected).abs() <= 1e-13 * expected.abs().max(1e-300));
        }
    }
}
