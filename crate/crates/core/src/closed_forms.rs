//! Analytic transmission through the abrupt step and the rectangular barrier.
//!
//! Everything is expressed through `σ = (m1/m2)^(β+1/2)`. With `σ = 1` the
//! results coincide with the constant-mass textbook formulas evaluated with
//! the mass of the right region (step) or the barrier (rectangle).

use std::ops::{Add, Div, Mul, Sub};

use crate::error::{require_finite, require_positive, Error, Result};
use crate::ordering::{sigma, OrderingScheme, PhysicalConstants};
use crate::roots::bisect;

/// Step at `x = 0`: mass `m1`, potential 0 on the left; mass `m2`, potential
/// `v0` on the right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepParams {
    pub m1: f64,
    pub m2: f64,
    pub v0: f64,
    pub scheme: OrderingScheme,
    pub constants: PhysicalConstants,
}

impl StepParams {
    pub fn new(m1: f64, m2: f64, v0: f64, scheme: OrderingScheme, constants: PhysicalConstants) -> Result<Self> {
        Ok(Self {
            m1: require_positive("m1", m1)?,
            m2: require_positive("m2", m2)?,
            v0: require_finite("V0", v0)?,
            scheme,
            constants,
        })
    }

    pub fn sigma(&self) -> f64 {
        sigma(self.m1 / self.m2, self.scheme.beta()).expect("masses validated on construction")
    }
}

/// Layer of mass `m2` and potential `v0` on `0 < x < a` in a medium of mass
/// `m1`. `v0 < 0` describes a well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierParams {
    pub m1: f64,
    pub m2: f64,
    pub v0: f64,
    pub a: f64,
    pub scheme: OrderingScheme,
    pub constants: PhysicalConstants,
}

impl BarrierParams {
    pub fn new(
        m1: f64,
        m2: f64,
        v0: f64,
        a: f64,
        scheme: OrderingScheme,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        let step = StepParams::new(m1, m2, v0, scheme, constants)?;
        Ok(Self {
            m1: step.m1,
            m2: step.m2,
            v0: step.v0,
            a: require_positive("a", a)?,
            scheme,
            constants,
        })
    }

    pub fn step(&self) -> StepParams {
        StepParams {
            m1: self.m1,
            m2: self.m2,
            v0: self.v0,
            scheme: self.scheme,
            constants: self.constants,
        }
    }

    pub fn sigma(&self) -> f64 {
        self.step().sigma()
    }
}

fn require_energy(energy: f64) -> Result<f64> {
    if energy.is_finite() && energy > 0.0 {
        Ok(energy)
    } else {
        Err(Error::domain("E", energy, "must be finite and > 0"))
    }
}

/// `(σ√E, √(E - V0))` above the step; `None` when the right side is closed.
fn step_terms(p: &StepParams, energy: f64) -> Option<(f64, f64)> {
    if energy <= p.v0 {
        None
    } else {
        Some((p.sigma() * energy.sqrt(), (energy - p.v0).sqrt()))
    }
}

/// `T = 4σ√(E(E - V0)) / (σ√E + √(E - V0))^2`, and 0 when `E <= V0`.
pub fn step_transmission(p: &StepParams, energy: f64) -> Result<f64> {
    let energy = require_energy(energy)?;
    Ok(match step_terms(p, energy) {
        Some((a, b)) => 4.0 * a * b / ((a + b) * (a + b)),
        None => 0.0,
    })
}

/// `R = ((σ√E - √(E - V0)) / (σ√E + √(E - V0)))^2`, and 1 when `E <= V0`.
pub fn step_reflection(p: &StepParams, energy: f64) -> Result<f64> {
    let energy = require_energy(energy)?;
    Ok(match step_terms(p, energy) {
        Some((a, b)) => ((a - b) / (a + b)).powi(2),
        None => 1.0,
    })
}

/// High-energy limit of the step transmission, `4σ/(σ + 1)^2`.
pub fn step_asymptote(p: &StepParams) -> f64 {
    let s = p.sigma();
    4.0 * s / ((s + 1.0) * (s + 1.0))
}

/// Energy at which the step reflects nothing, `V0/(1 - σ^2)`.
///
/// Exists for an up-step with `σ^2 < 1` or a down-step with `σ^2 > 1`; never
/// for `β = -1/2` or a flat potential.
pub fn transparency_energy(p: &StepParams) -> Option<f64> {
    let s2 = p.sigma().powi(2);
    let open = (p.v0 > 0.0 && s2 < 1.0) || (p.v0 < 0.0 && s2 > 1.0);
    open.then(|| p.v0 / (1.0 - s2))
}

/// Searches `(e_lo, e_hi]` for a zero of the reflected amplitude
/// `σ√E - √(E - V0)` on a logarithmic grid of `points` samples and refines it
/// by bisection. Independent of [`transparency_energy`].
pub fn scan_transparency(p: &StepParams, e_lo: f64, e_hi: f64, points: usize) -> Result<Option<f64>> {
    require_positive("e_lo", e_lo)?;
    require_positive("e_hi", e_hi)?;
    // the right side must be open; V0 itself is excluded
    let start = if e_lo > p.v0 { e_lo } else { p.v0 * (1.0 + 1e-12) };
    if e_hi <= start || points < 2 {
        return Err(Error::domain(
            "e_hi",
            e_hi,
            "needs e_hi > max(e_lo, V0) and at least 2 points",
        ));
    }
    let s = p.sigma();
    let amplitude = |e: f64| s * e.sqrt() - (e - p.v0).sqrt();
    let log_span = (e_hi / start).ln();
    let at = |i: usize| {
        if i + 1 == points {
            e_hi
        } else {
            start * (log_span * i as f64 / (points - 1) as f64).exp()
        }
    };
    for i in 0..points - 1 {
        let (lo, hi) = (at(i), at(i + 1));
        if let Some(root) = bisect(amplitude, lo, hi, 1e-15) {
            return Ok(Some(root));
        }
    }
    Ok(None)
}

/// `g(E, β) = ((σ^2 - 1)E + V0)^2 / (4σ^2 E (E - V0))` for `E > V0`.
pub fn g_factor(p: &BarrierParams, energy: f64) -> Result<f64> {
    let energy = require_energy(energy)?;
    if energy <= p.v0 {
        return Err(Error::domain("E", energy, "g is defined above the barrier top only"));
    }
    let s2 = p.sigma().powi(2);
    let d = (s2 - 1.0) * energy + p.v0;
    Ok(d * d / (4.0 * s2 * energy * (energy - p.v0)))
}

/// `lim_{E→∞} g = ((σ^2 - 1)/(2σ))^2`.
pub fn g_factor_limit(p: &BarrierParams) -> f64 {
    let s = p.sigma();
    ((s * s - 1.0) / (2.0 * s)).powi(2)
}

/// Exact rectangular-barrier transmission.
///
/// Above the top `T = 1/(1 + g sin^2(k2 a))`; below it `sin → sinh` with the
/// positive continued factor; at `E = V0` the finite limit. All three are the
/// single expression `1/(1 + N (2 m2 a^2/ħ^2) sinc^2(k2 a))` with
/// `N = ((σ^2-1)E + V0)^2 / (4σ^2 E)`, evaluated in log space once
/// `sinh(κ2 a)` would overflow.
pub fn barrier_transmission(p: &BarrierParams, energy: f64) -> Result<f64> {
    let energy = require_energy(energy)?;
    let s2 = p.sigma().powi(2);
    let d = (s2 - 1.0) * energy + p.v0;
    let n = d * d / (4.0 * s2 * energy);
    if n == 0.0 {
        return Ok(1.0);
    }
    let kin = p.constants.kinetic_factor(p.m2) * p.a * p.a;
    let theta_sq = kin * (energy - p.v0);
    if theta_sq >= 0.0 {
        let theta = theta_sq.sqrt();
        let sinc = if theta < 1e-6 {
            1.0 - theta_sq / 6.0
        } else {
            theta.sin() / theta
        };
        Ok(1.0 / (1.0 + n * kin * sinc * sinc))
    } else {
        let y = (-theta_sq).sqrt();
        if y < 300.0 {
            let shc = if y < 1e-6 { 1.0 + y * y / 6.0 } else { y.sinh() / y };
            Ok(1.0 / (1.0 + n * kin * shc * shc))
        } else {
            // ln sinh y = y + ln(1 - e^{-2y}) - ln 2
            let ln_shc = y + (-(-2.0 * y).exp()).ln_1p() - std::f64::consts::LN_2 - y.ln();
            let ln_x = n.ln() + kin.ln() + 2.0 * ln_shc;
            Ok((-softplus(ln_x)).exp())
        }
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// Sub-barrier asymptote `16σ^2 E (V0 - E)/((σ^2-1)E + V0)^2 · e^{-2 κ2 a}`
/// with `κ2 = √(2 m2 (V0 - E))/ħ`; accurate once `κ2 a ≫ 1`.
pub fn thick_barrier_transmission(p: &BarrierParams, energy: f64) -> Result<f64> {
    let energy = require_energy(energy)?;
    if energy >= p.v0 || energy.is_nan() {
        return Err(Error::domain("E", energy, "thick-barrier form needs 0 < E < V0"));
    }
    let kappa_a = (p.constants.kinetic_factor(p.m2) * (p.v0 - energy)).sqrt() * p.a;
    Ok(tunnel_prefactor(p, energy) * (-2.0 * kappa_a).exp())
}

/// The factor in front of `e^{-2 κ2 a}` in [`thick_barrier_transmission`].
pub fn tunnel_prefactor(p: &BarrierParams, energy: f64) -> f64 {
    let s2 = p.sigma().powi(2);
    let d = (s2 - 1.0) * energy + p.v0;
    16.0 * s2 * energy * (p.v0 - energy) / (d * d)
}

/// `κ2 a` for a sub-barrier energy.
pub fn kappa_a(p: &BarrierParams, energy: f64) -> f64 {
    (p.constants.kinetic_factor(p.m2) * (p.v0 - energy)).max(0.0).sqrt() * p.a
}

#[derive(Debug, Clone, Copy)]
struct Dual {
    value: f64,
    slope: f64,
}

impl Dual {
    fn constant(value: f64) -> Self {
        Self { value, slope: 0.0 }
    }

    fn variable(value: f64) -> Self {
        Self { value, slope: 1.0 }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual {
            value: self.value + o.value,
            slope: self.slope + o.slope,
        }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual {
            value: self.value - o.value,
            slope: self.slope - o.slope,
        }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual {
            value: self.value * o.value,
            slope: self.slope * o.value + self.value * o.slope,
        }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual {
            value: self.value / o.value,
            slope: (self.slope * o.value - self.value * o.slope) / (o.value * o.value),
        }
    }
}

/// Energy in `(0, V0)` maximising `E (V0 - E) / ((σ^2-1)E + V0)^2`, the
/// energy dependence of [`tunnel_prefactor`].
///
/// The slope is obtained by forward-mode differentiation and its sign change
/// is bisected to machine precision.
pub fn prefactor_max_energy(p: &BarrierParams) -> Result<f64> {
    let v0 = require_positive("V0", p.v0)?;
    let s2 = Dual::constant(p.sigma().powi(2));
    let v = Dual::constant(v0);
    let one = Dual::constant(1.0);
    let slope = |e: f64| {
        let e = Dual::variable(e);
        let d = (s2 - one) * e + v;
        (e * (v - e) / (d * d)).slope
    };
    bisect(slope, 0.0, v0, 1e-15)
        .ok_or_else(|| Error::Numerical("prefactor slope does not change sign on (0, V0)".into()))
}

/// Above-barrier energies with `sin(k2 a) = 0`, `V0 + n^2 π^2 ħ^2/(2 m2 a^2)`,
/// up to `e_max`.
pub fn ramsauer_energies(p: &BarrierParams, e_max: f64) -> Vec<f64> {
    let unit = std::f64::consts::PI.powi(2) / (p.constants.kinetic_factor(p.m2) * p.a * p.a);
    (1..)
        .map(|n: u32| p.v0 + (n as f64).powi(2) * unit)
        .take_while(|&e| e <= e_max)
        .collect()
}
