//! Bound states of the symmetric rectangular well with a mass jump.
//!
//! The well occupies `|x| < a/2` with mass `m2` and potential `-V0`; outside
//! the mass is `m1` and the potential 0. Continuity of `m^α ψ` and
//! `m^{α+β} ψ'` makes `m^β ψ'/ψ` continuous at each wall, which gives
//!
//! - even: `tan(p2 a/2) = (m1/m2)^β κ1/p2`
//! - odd: `-cot(p2 a/2) = (m1/m2)^β κ1/p2`
//!
//! with `p2 = √(2 m2 (E + V0))/ħ` and `κ1 = √(-2 m1 E)/ħ`.

use crate::error::{require_positive, Error, Result};
use crate::ordering::{OrderingScheme, PhysicalConstants};
use crate::roots::bisect;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellParams {
    pub m1: f64,
    pub m2: f64,
    /// Depth; the potential inside is `-v0`.
    pub v0: f64,
    pub a: f64,
    pub scheme: OrderingScheme,
    pub constants: PhysicalConstants,
}

impl WellParams {
    pub fn new(
        m1: f64,
        m2: f64,
        v0: f64,
        a: f64,
        scheme: OrderingScheme,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        Ok(Self {
            m1: require_positive("m1", m1)?,
            m2: require_positive("m2", m2)?,
            v0: require_positive("depth", v0)?,
            a: require_positive("a", a)?,
            scheme,
            constants,
        })
    }

    /// `(m1/m2)^β`, the weight on the outside log-derivative.
    pub fn weight(&self) -> f64 {
        (self.scheme.beta() * (self.m1 / self.m2).ln()).exp()
    }

    pub fn p2(&self, energy: f64) -> f64 {
        (self.constants.kinetic_factor(self.m2) * (energy + self.v0))
            .max(0.0)
            .sqrt()
    }

    pub fn kappa1(&self, energy: f64) -> f64 {
        (self.constants.kinetic_factor(self.m1) * -energy).max(0.0).sqrt()
    }

    /// Largest inside wavenumber, reached at `E = 0`.
    fn p2_max(&self) -> f64 {
        (self.constants.kinetic_factor(self.m2) * self.v0).sqrt()
    }

    /// Number of levels of the same well with infinitely heavy walls below
    /// `E = 0`, plus one; the exact count for every β.
    pub fn expected_count(&self) -> usize {
        1 + (self.p2_max() * self.a / std::f64::consts::PI).floor() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundLevel {
    pub energy: f64,
    pub parity: Parity,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum {
    pub levels: Vec<BoundLevel>,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Lowest level even, parities alternating, energies strictly increasing.
    pub fn is_well_ordered(&self) -> bool {
        let starts_even = self.levels.first().is_none_or(|l| l.parity == Parity::Even);
        starts_even
            && self
                .levels
                .windows(2)
                .all(|w| w[1].energy > w[0].energy && w[1].parity != w[0].parity)
    }
}

/// Pole-free form of the matching condition; zero exactly at bound states.
fn condition(p: &WellParams, parity: Parity, energy: f64) -> f64 {
    let p2 = p.p2(energy);
    let outside = p.weight() * p.kappa1(energy);
    let (s, c) = (p2 * p.a / 2.0).sin_cos();
    match parity {
        Parity::Even => outside * c - p2 * s,
        Parity::Odd => outside * s + p2 * c,
    }
}

/// Matching condition normalised to be dimensionless and `O(1)`.
pub fn matching_residual(p: &WellParams, level: &BoundLevel) -> f64 {
    let p2 = p.p2(level.energy);
    let outside = p.weight() * p.kappa1(level.energy);
    condition(p, level.parity, level.energy) / outside.hypot(p2)
}

/// All bound states with `-V0 < E < 0`.
///
/// Both conditions are sampled on a grid uniform in `p2`, sign changes are
/// bisected to machine precision, and the grid is doubled whenever the merged
/// levels fail to alternate in parity.
pub fn well_spectrum(p: &WellParams) -> Result<Spectrum> {
    let mut samples = 16 * (p.expected_count() + 1);
    for _ in 0..8 {
        let spectrum = scan_levels(p, samples);
        if !spectrum.is_empty() && spectrum.is_well_ordered() {
            return Ok(spectrum);
        }
        samples *= 2;
    }
    Err(Error::Numerical(format!(
        "could not resolve an alternating well spectrum with {samples} samples"
    )))
}

fn scan_levels(p: &WellParams, samples: usize) -> Spectrum {
    let p2_max = p.p2_max();
    let kin = p.constants.kinetic_factor(p.m2);
    let energy_at = |i: usize| {
        if i == samples {
            0.0
        } else {
            let p2 = p2_max * i as f64 / samples as f64;
            p2 * p2 / kin - p.v0
        }
    };
    let mut levels = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let f = |e: f64| condition(p, parity, e);
        for i in 1..samples {
            let (lo, hi) = (energy_at(i), energy_at(i + 1));
            if f(lo).signum() == f(hi).signum() && f(hi) != 0.0 {
                continue;
            }
            if let Some(energy) = bisect(f, lo, hi, 1e-16) {
                if energy > -p.v0 && energy < 0.0 {
                    levels.push(BoundLevel { energy, parity });
                }
            }
        }
    }
    levels.sort_by(|x, y| x.energy.total_cmp(&y.energy));
    levels.dedup_by(|x, y| x.energy == y.energy && x.parity == y.parity);
    Spectrum { levels }
}

/// Constant-mass well spectrum in the dimensionless textbook form
/// `z tan z = √(z0^2 - z^2)` (even) and `-z cot z = √(z0^2 - z^2)` (odd),
/// with `z = p a/2` and `z0 = (a/2)√(2 m V0)/ħ`. Each branch
/// `(nπ/2, (n+1)π/2)` holds at most one root.
pub fn constant_mass_well_spectrum(mass: f64, v0: f64, a: f64, constants: &PhysicalConstants) -> Result<Spectrum> {
    require_positive("mass", mass)?;
    require_positive("depth", v0)?;
    require_positive("a", a)?;
    let kin = constants.kinetic_factor(mass);
    let z0 = 0.5 * a * (kin * v0).sqrt();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut levels = Vec::new();
    let mut n = 0usize;
    while (n as f64) * half_pi < z0 {
        let lo = n as f64 * half_pi;
        let hi = ((n + 1) as f64 * half_pi).min(z0);
        let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        let f = |z: f64| {
            let rest = (z0 * z0 - z * z).max(0.0).sqrt();
            match parity {
                Parity::Even => z * z.sin() - rest * z.cos(),
                Parity::Odd => -z * z.cos() - rest * z.sin(),
            }
        };
        if let Some(z) = bisect(f, lo, hi, 1e-16) {
            let energy = (2.0 * z / a).powi(2) / kin - v0;
            if energy > -v0 && energy < 0.0 {
                levels.push(BoundLevel { energy, parity });
            }
        }
        n += 1;
    }
    Ok(Spectrum { levels })
}

/// Left minus right side of
/// `cos(p2 a/2) = p2^2 / (p2^2 [1 - μ^(2β+1)] + (2 m2 V0/ħ^2) μ^(2β+1))`,
/// `μ = m1/m2`. Diagnostic only: its zeros are compared with
/// [`well_spectrum`], not used to build it.
pub fn cosine_condition_residual(p: &WellParams, energy: f64) -> f64 {
    let p2 = p.p2(energy);
    let mu_power = ((2.0 * p.scheme.beta() + 1.0) * (p.m1 / p.m2).ln()).exp();
    let scale = p.constants.kinetic_factor(p.m2) * p.v0;
    let rhs = p2 * p2 / (p2 * p2 * (1.0 - mu_power) + scale * mu_power);
    (p2 * p.a / 2.0).cos() - rhs
}

/// Zeros of [`cosine_condition_residual`] in `(-V0, 0)` found by a sign scan over
/// `points` samples. Sign flips across poles are discarded.
pub fn cosine_condition_roots(p: &WellParams, points: usize) -> Vec<f64> {
    let f = |e: f64| cosine_condition_residual(p, e);
    let grid: Vec<f64> = (1..points).map(|i| -p.v0 + p.v0 * i as f64 / points as f64).collect();
    grid.windows(2)
        .filter_map(|w| bisect(f, w[0], w[1], 1e-16))
        .filter(|&e| f(e).abs() < 1e-8)
        .collect()
}
