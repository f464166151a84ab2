//! Connection rules across abrupt heterojunctions and a general scattering
//! solver for layered structures.
//!
//! Across an interface the quantities `m^α ψ` and `m^{α+β} ψ'` are continuous.
//! Writing `φ = m^α ψ`, inside a uniform region the second quantity is
//! `Y φ'` with the admittance `Y = m^β`, so a region is characterised by
//! `Z = k Y` and the conserved current is `Im(φ* Y φ') = Im(ψ* ψ')/m`.
//!
//! Two routes are provided:
//!
//! - [`interface_matrix`] and [`propagation_matrix`] build textbook 2x2
//!   plane-wave transfer matrices; [`naive_transfer_matrix`] multiplies them.
//!   This overflows for thick evanescent layers and is kept for comparison.
//! - [`scatter`] composes per-layer scattering matrices (Redheffer star
//!   product) built from the real state-transfer matrix of each layer. Every
//!   layer matrix is analytic in `k^2`, so thresholds `E = V` need no special
//!   casing, and evanescent growth is factored out before it can overflow.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ordering::{wavenumber, wavenumber_squared, OrderingScheme, PhysicalConstants};
use crate::structure::Structure;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Maps the amplitude pair `(A, B)` of `A e^{ikx} + B e^{-ikx}` on one side
/// to the pair on the other: `left = M · right`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
        (self.m11 * a + self.m12 * b, self.m21 * a + self.m22 * b)
    }
}

impl Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, o: TransferMatrix) -> TransferMatrix {
        TransferMatrix {
            m11: self.m11 * o.m11 + self.m12 * o.m21,
            m12: self.m11 * o.m12 + self.m12 * o.m22,
            m21: self.m21 * o.m11 + self.m22 * o.m21,
            m22: self.m21 * o.m12 + self.m22 * o.m22,
        }
    }
}

/// Interface matrix at `x0` between a region `(m_left, k_left)` and a region
/// `(m_right, k_right)`, both written in the global plane-wave basis
/// `e^{±ikx}`.
///
/// Solves `m_L^α ψ_L = m_R^α ψ_R` and `m_L^{α+β} ψ_L' = m_R^{α+β} ψ_R'` at `x0`
/// for the left amplitudes. Both wavenumbers must be non-zero.
pub fn interface_matrix(
    m_left: f64,
    k_left: Complex64,
    m_right: f64,
    k_right: Complex64,
    x0: f64,
    scheme: &OrderingScheme,
) -> Result<TransferMatrix> {
    crate::error::require_positive("left mass", m_left)?;
    crate::error::require_positive("right mass", m_right)?;
    if k_left == ZERO || k_right == ZERO {
        return Err(Error::ThresholdDegeneracy);
    }
    let ratio = m_right / m_left;
    let value_ratio = ratio.powf(scheme.alpha());
    let slope_ratio = (k_right / k_left) * ratio.powf(scheme.alpha() + scheme.beta());
    let plus = (value_ratio + slope_ratio) * 0.5;
    let minus = (value_ratio - slope_ratio) * 0.5;
    Ok(TransferMatrix {
        m11: plus * (I * (k_right - k_left) * x0).exp(),
        m12: minus * (-I * (k_right + k_left) * x0).exp(),
        m21: minus * (I * (k_right + k_left) * x0).exp(),
        m22: plus * (-I * (k_right - k_left) * x0).exp(),
    })
}

/// Moves the basis origin of a uniform region across `width`: amplitudes
/// referenced at the right edge map to amplitudes referenced at the left edge.
pub fn propagation_matrix(k: Complex64, width: f64) -> TransferMatrix {
    let phase = (I * k * width).exp();
    TransferMatrix::new(phase.inv(), ZERO, ZERO, phase)
}

/// Plain product of interface and propagation matrices for a structure,
/// mapping right-lead amplitudes to left-lead amplitudes. Each region's basis
/// is referenced to its left edge (the left lead to `x = 0`).
///
/// Entries grow like `e^{κ w}` in evanescent layers; use [`scatter`] for
/// anything but thin structures.
pub fn naive_transfer_matrix(
    structure: &Structure,
    energy: f64,
    scheme: &OrderingScheme,
    constants: &PhysicalConstants,
) -> Result<TransferMatrix> {
    let regions = structure.regions();
    let ks: Vec<Complex64> = regions
        .iter()
        .map(|&(m, v)| wavenumber(energy, m, v, constants))
        .collect();
    let mut total = TransferMatrix::identity();
    for j in 0..regions.len() - 1 {
        if j > 0 {
            let width = structure.layers()[j - 1].width();
            total = total * propagation_matrix(ks[j], width);
        }
        total = total * interface_matrix(regions[j].0, ks[j], regions[j + 1].0, ks[j + 1], 0.0, scheme)?;
    }
    Ok(total)
}

/// Transmission from [`naive_transfer_matrix`], flux-normalised like
/// [`scatter`]. Returns 0 for a closed right lead.
pub fn naive_transmission(
    structure: &Structure,
    energy: f64,
    scheme: &OrderingScheme,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let left = structure.left_lead();
    let right = structure.right_lead();
    if energy <= left.potential() {
        return Err(Error::NoOpenChannel {
            energy,
            lead_potential: left.potential(),
        });
    }
    if energy <= right.potential() {
        return Ok(0.0);
    }
    let m = naive_transfer_matrix(structure, energy, scheme, constants)?;
    let k_left = wavenumber(energy, left.mass(), left.potential(), constants).re;
    let k_right = wavenumber(energy, right.mass(), right.potential(), constants).re;
    let t = m.m11.inv();
    Ok((k_right / right.mass()) / (k_left / left.mass()) * t.norm_sqr())
}

/// Real 2x2 matrix carrying the continuous pair `(m^α ψ, m^{α+β} ψ')` from the
/// left edge of a uniform layer to its right edge.
///
/// Entries are `cos θ`, `w sinc θ / Y`, `-k^2 Y w sinc θ` with `θ = k w`, which
/// stay finite and analytic through `k = 0`.
pub fn layer_state_matrix(
    mass: f64,
    potential: f64,
    width: f64,
    energy: f64,
    scheme: &OrderingScheme,
    constants: &PhysicalConstants,
) -> [[f64; 2]; 2] {
    let s = ScaledStateMatrix::new(mass, potential, width, energy, scheme, constants);
    let scale = s.log_scale.exp();
    [
        [s.p[0][0] * scale, s.p[0][1] * scale],
        [s.p[1][0] * scale, s.p[1][1] * scale],
    ]
}

/// `cos θ` and `sin θ / θ` for real `θ^2` (imaginary `θ` when negative),
/// both multiplied by `e^{-log_scale}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PhaseFactors {
    pub cos: f64,
    pub sinc: f64,
    pub log_scale: f64,
}

const SERIES_THRESHOLD: f64 = 1e-6;

impl PhaseFactors {
    pub fn new(theta_sq: f64) -> Self {
        if theta_sq >= 0.0 {
            let theta = theta_sq.sqrt();
            if theta < SERIES_THRESHOLD {
                Self {
                    cos: 1.0 - theta_sq / 2.0,
                    sinc: 1.0 - theta_sq / 6.0,
                    log_scale: 0.0,
                }
            } else {
                Self {
                    cos: theta.cos(),
                    sinc: theta.sin() / theta,
                    log_scale: 0.0,
                }
            }
        } else {
            let y = (-theta_sq).sqrt();
            if y < SERIES_THRESHOLD {
                Self {
                    cos: 1.0 + y * y / 2.0,
                    sinc: 1.0 + y * y / 6.0,
                    log_scale: 0.0,
                }
            } else if y < 1.0 {
                Self {
                    cos: y.cosh(),
                    sinc: y.sinh() / y,
                    log_scale: 0.0,
                }
            } else {
                let decay = (-2.0 * y).exp();
                Self {
                    cos: 0.5 * (1.0 + decay),
                    sinc: -0.5 * (-2.0 * y).exp_m1() / y,
                    log_scale: y,
                }
            }
        }
    }
}

/// State-transfer matrix divided by `e^{log_scale}`.
struct ScaledStateMatrix {
    p: [[f64; 2]; 2],
    log_scale: f64,
}

impl ScaledStateMatrix {
    fn new(
        mass: f64,
        potential: f64,
        width: f64,
        energy: f64,
        scheme: &OrderingScheme,
        constants: &PhysicalConstants,
    ) -> Self {
        let k_sq = wavenumber_squared(energy, mass, potential, constants);
        let admittance = mass.powf(scheme.beta());
        let f = PhaseFactors::new(k_sq * width * width);
        Self {
            p: [
                [f.cos, width * f.sinc / admittance],
                [-k_sq * admittance * width * f.sinc, f.cos],
            ],
            log_scale: f.log_scale,
        }
    }
}

/// Scattering matrix of a segment embedded in the reference medium:
/// `[b_left, a_right] = [[r, t'], [t, r']] [a_left, b_right]`.
#[derive(Debug, Clone, Copy)]
struct SegmentS {
    r: Complex64,
    t: Complex64,
    rp: Complex64,
    tp: Complex64,
}

impl SegmentS {
    fn identity() -> Self {
        Self {
            r: ZERO,
            t: ONE,
            rp: ZERO,
            tp: ONE,
        }
    }

    /// Redheffer star product, `self` on the left.
    fn star(&self, right: &SegmentS) -> SegmentS {
        let d = ONE - self.rp * right.r;
        SegmentS {
            r: self.r + self.tp * right.r * self.t / d,
            t: right.t * self.t / d,
            rp: right.rp + right.t * self.rp * right.tp / d,
            tp: self.tp * right.tp / d,
        }
    }

    /// Layer between two copies of a reference medium with real `z0`.
    fn from_state(s: &ScaledStateMatrix, z0: f64) -> Self {
        let [[p11, p12], [p21, p22]] = s.p;
        let iz = I * z0;
        let w22 = 0.5 * (p11 + p22 - iz * p12 + I * p21 / z0);
        let w21 = 0.5 * (p11 - p22 + iz * p12 + I * p21 / z0);
        let w12 = 0.5 * (p11 - p22 - iz * p12 - I * p21 / z0);
        let t = (-s.log_scale).exp() / w22;
        SegmentS {
            r: -w21 / w22,
            t,
            rp: w12 / w22,
            tp: t,
        }
    }

    /// Zero-width junction from the reference medium `z0` into a lead `z`.
    fn junction(z0: f64, z: Complex64) -> Self {
        let sum = z0 + z;
        SegmentS {
            r: (z0 - z) / sum,
            t: 2.0 * z0 / sum,
            rp: (z - z0) / sum,
            tp: 2.0 * z / sum,
        }
    }
}

/// Forward/backward amplitudes of `ψ = A e^{ik(x - x_l)} + B e^{-ik(x - x_l)}`,
/// referenced to the region's left edge `x_l` (the left lead uses `x = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionAmplitudes {
    pub forward: Complex64,
    pub backward: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringSolution {
    pub energy: f64,
    pub transmission: f64,
    pub reflection: f64,
    /// One entry per region, leads included. `None` where `k = 0` and the
    /// plane-wave pair is not a basis.
    pub amplitudes: Vec<Option<RegionAmplitudes>>,
    pub wavenumbers: Vec<Complex64>,
}

impl ScatteringSolution {
    /// Ratio `C/A` of transmitted to incident amplitude.
    pub fn transmitted_amplitude(&self) -> Option<Complex64> {
        self.amplitudes.last().copied().flatten().map(|a| a.forward)
    }

    pub fn reflected_amplitude(&self) -> Complex64 {
        self.amplitudes[0].map(|a| a.backward).unwrap_or(ZERO)
    }
}

/// Scattering of a unit wave incident from the left.
///
/// `T = (k_R/m_R)/(k_L/m_L) |C/A|^2` and `R = |B/A|^2`, the ratios of the
/// conserved current `Im(ψ* ψ')/m`. A closed right lead gives `T = 0, R = 1`.
pub fn scatter(
    structure: &Structure,
    energy: f64,
    scheme: &OrderingScheme,
    constants: &PhysicalConstants,
) -> Result<ScatteringSolution> {
    crate::error::require_finite("energy", energy)?;
    let left = structure.left_lead();
    let right = structure.right_lead();
    if energy <= left.potential() {
        return Err(Error::NoOpenChannel {
            energy,
            lead_potential: left.potential(),
        });
    }
    let beta = scheme.beta();
    let alpha = scheme.alpha();

    let regions = structure.regions();
    let wavenumbers: Vec<Complex64> = regions
        .iter()
        .map(|&(m, v)| wavenumber(energy, m, v, constants))
        .collect();
    let admittance: Vec<f64> = regions.iter().map(|&(m, _)| m.powf(beta)).collect();

    let z0 = wavenumbers[0].re * admittance[0];
    let last = regions.len() - 1;
    let z_right = wavenumbers[last] * admittance[last];

    let mut segments: Vec<SegmentS> = structure
        .layers()
        .iter()
        .map(|l| {
            let s = ScaledStateMatrix::new(l.mass(), l.potential(), l.width(), energy, scheme, constants);
            SegmentS::from_state(&s, z0)
        })
        .collect();
    segments.push(SegmentS::junction(z0, z_right));

    // prefix[j] covers segments[..j], suffix[j] covers segments[j..]
    let n = segments.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(SegmentS::identity());
    for s in &segments {
        let next = prefix.last().unwrap().star(s);
        prefix.push(next);
    }
    let mut suffix = vec![SegmentS::identity(); n + 1];
    for j in (0..n).rev() {
        suffix[j] = segments[j].star(&suffix[j + 1]);
    }
    let total = prefix[n];

    // reference-medium amplitude of the incident wave, A = 1
    let a_in = left.mass().powf(alpha);

    let mut amplitudes = Vec::with_capacity(regions.len());
    amplitudes.push(Some(RegionAmplitudes {
        forward: ONE,
        backward: total.r,
    }));
    for j in 1..last {
        // gap j sits at the left edge of region j
        let gap = j - 1;
        let forward = prefix[gap].t * a_in / (ONE - prefix[gap].rp * suffix[gap].r);
        let backward = suffix[gap].r * forward;
        let value = forward + backward;
        let flux_term = I * z0 * (forward - backward);
        let k = wavenumbers[j];
        amplitudes.push(if k == ZERO {
            None
        } else {
            let z = k * admittance[j];
            let scale = regions[j].0.powf(-alpha);
            Some(RegionAmplitudes {
                forward: 0.5 * scale * (value + flux_term / (I * z)),
                backward: 0.5 * scale * (value - flux_term / (I * z)),
            })
        });
    }
    amplitudes.push(if wavenumbers[last] == ZERO {
        None
    } else {
        Some(RegionAmplitudes {
            forward: total.t * a_in * right.mass().powf(-alpha),
            backward: ZERO,
        })
    });

    let (transmission, reflection) = if energy <= right.potential() {
        (0.0, 1.0)
    } else {
        (z_right.re / z0 * total.t.norm_sqr(), total.r.norm_sqr())
    };

    Ok(ScatteringSolution {
        energy,
        transmission,
        reflection,
        amplitudes,
        wavenumbers,
    })
}
