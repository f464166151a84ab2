//! Band structure of the periodic potential-and-mass multibarrier.
//!
//! One period is a barrier (mass `m2`, potential `V0`, width `a`) followed by
//! a well (mass `m1`, potential 0, width `b`). Bloch states satisfy
//!
//! `cos(p d) = cos(k1 b) cos(k2 a) - h sin(k1 b) sin(k2 a)`, `d = a + b`,
//!
//! with `h = √(1 + g)` and `g` the rectangular-barrier factor. Below the
//! barrier top the right-hand side is continued to `cosh`/`sinh` and stays real.

use crate::closed_forms::{g_factor, BarrierParams};
use crate::error::{require_finite, require_positive, Error, Result};
use crate::ordering::{OrderingScheme, PhysicalConstants};
use crate::roots::{bisect, golden_max};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    /// Well mass.
    pub m1: f64,
    /// Barrier mass.
    pub m2: f64,
    pub v0: f64,
    /// Barrier width.
    pub a: f64,
    /// Well width.
    pub b: f64,
    pub scheme: OrderingScheme,
    pub constants: PhysicalConstants,
}

impl LatticeParams {
    pub fn new(
        m1: f64,
        m2: f64,
        v0: f64,
        a: f64,
        b: f64,
        scheme: OrderingScheme,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        Ok(Self {
            m1: require_positive("m1", m1)?,
            m2: require_positive("m2", m2)?,
            v0: require_finite("V0", v0)?,
            a: require_positive("a", a)?,
            b: require_positive("b", b)?,
            scheme,
            constants,
        })
    }

    pub fn period(&self) -> f64 {
        self.a + self.b
    }

    pub fn barrier(&self) -> BarrierParams {
        BarrierParams {
            m1: self.m1,
            m2: self.m2,
            v0: self.v0,
            a: self.a,
            scheme: self.scheme,
            constants: self.constants,
        }
    }

    /// `k1 b + Re(k2) a`; grows by about π per band.
    fn phase(&self, energy: f64) -> f64 {
        let k1 = (self.constants.kinetic_factor(self.m1) * energy).max(0.0).sqrt();
        let k2 = (self.constants.kinetic_factor(self.m2) * (energy - self.v0))
            .max(0.0)
            .sqrt();
        k1 * self.b + k2 * self.a
    }
}

fn require_energy(energy: f64) -> Result<f64> {
    if energy.is_finite() && energy > 0.0 {
        Ok(energy)
    } else {
        Err(Error::domain("E", energy, "must be finite and > 0"))
    }
}

/// Right-hand side of the Bloch condition.
///
/// Evaluated as `cos(k1 b) C - (1/2) sin(k1 b) [k2^2 Y2 a S / Z1 + Z1 a S / Y2]`
/// with `C = cos(k2 a)`, `S = sin(k2 a)/(k2 a)`, `Y = m^β`, `Z1 = k1 Y1`; this is
/// real for real `k2^2` of either sign and smooth through `E = V0`.
pub fn dispersion_rhs(p: &LatticeParams, energy: f64) -> Result<f64> {
    let energy = require_energy(energy)?;
    let beta = p.scheme.beta();
    let y1 = p.m1.powf(beta);
    let y2 = p.m2.powf(beta);
    let k1 = (p.constants.kinetic_factor(p.m1) * energy).sqrt();
    let z1 = k1 * y1;
    let k2_sq = p.constants.kinetic_factor(p.m2) * (energy - p.v0);
    let theta_sq = k2_sq * p.a * p.a;
    let (c, s) = if theta_sq >= 0.0 {
        let t = theta_sq.sqrt();
        if t < 1e-6 {
            (1.0 - theta_sq / 2.0, 1.0 - theta_sq / 6.0)
        } else {
            (t.cos(), t.sin() / t)
        }
    } else {
        let y = (-theta_sq).sqrt();
        if y < 1e-6 {
            (1.0 + y * y / 2.0, 1.0 + y * y / 6.0)
        } else {
            (y.cosh(), y.sinh() / y)
        }
    };
    let (sin1, cos1) = (k1 * p.b).sin_cos();
    let coupling = k2_sq * y2 * p.a * s / z1 + z1 * p.a * s / y2;
    Ok(cos1 * c - 0.5 * sin1 * coupling)
}

/// `h(E, β) = √(1 + g(E, β))` above the barrier top.
pub fn h_factor(p: &LatticeParams, energy: f64) -> Result<f64> {
    Ok((1.0 + g_factor(&p.barrier(), energy)?).sqrt())
}

/// High-energy limit `(σ^2 + 1)/(2σ)` of [`h_factor`].
pub fn h_factor_limit(p: &LatticeParams) -> f64 {
    let s = p.barrier().sigma();
    (s * s + 1.0) / (2.0 * s)
}

/// Amount by which `|rhs|` may exceed 1 from rounding alone; touching band
/// edges (closed gaps) evaluate to within this of 1.
pub const EDGE_TOLERANCE: f64 = 1e-12;

/// Bloch wavenumber `arccos(rhs)/d ∈ [0, π/d]`, or `None` inside a gap.
pub fn quasimomentum(p: &LatticeParams, energy: f64) -> Result<Option<f64>> {
    let rhs = dispersion_rhs(p, energy)?;
    Ok(if rhs.abs() <= 1.0 + EDGE_TOLERANCE {
        Some(rhs.clamp(-1.0, 1.0).acos() / p.period())
    } else {
        None
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, energy: f64) -> bool {
        energy >= self.lower && energy <= self.upper
    }
}

/// Allowed bands within `[e_min, e_max]` and the gaps between consecutive
/// bands. The first and last band may be clipped by the range.
#[derive(Debug, Clone, PartialEq)]
pub struct BandDiagram {
    pub e_min: f64,
    pub e_max: f64,
    pub bands: Vec<Interval>,
    pub gaps: Vec<Interval>,
}

/// Largest phase advance tolerated between neighbouring samples; keeps at
/// least four samples per band.
const MAX_PHASE_STEP: f64 = std::f64::consts::FRAC_PI_4;

/// Scans `|rhs| - 1` on `grid` uniform samples, bisects every sign change,
/// and probes local extrema of `|rhs|` between samples for gaps or bands too
/// narrow to contain a sample.
pub fn band_diagram(p: &LatticeParams, e_min: f64, e_max: f64, grid: usize) -> Result<BandDiagram> {
    let e_min = require_energy(e_min)?;
    let e_max = require_energy(e_max)?;
    if e_max <= e_min {
        return Err(Error::domain("E_max", e_max, "must exceed E_min"));
    }
    if grid < 2 {
        return Err(Error::domain("grid", grid as f64, "needs at least 2 points"));
    }
    let energy_at = |i: usize| {
        if i + 1 == grid {
            e_max
        } else {
            e_min + (e_max - e_min) * i as f64 / (grid - 1) as f64
        }
    };
    let energies: Vec<f64> = (0..grid).map(energy_at).collect();

    let max_step = energies
        .windows(2)
        .map(|w| p.phase(w[1]) - p.phase(w[0]))
        .fold(0.0, f64::max);
    if max_step > MAX_PHASE_STEP {
        // the phase grows like √(E - V0) just above the barrier top
        let required = ((grid - 1) as f64 * (max_step / MAX_PHASE_STEP).powi(2)).ceil() as usize + 1;
        return Err(Error::Resolution {
            grid,
            required,
            e_min,
            e_max,
        });
    }

    let excess = |e: f64| {
        dispersion_rhs(p, e)
            .map(|r| r.abs() - 1.0 - EDGE_TOLERANCE)
            .unwrap_or(f64::NAN)
    };
    let f: Vec<f64> = energies.iter().map(|&e| excess(e)).collect();
    let allowed = |v: f64| v <= 0.0;

    let mut edges = Vec::new();
    for i in 0..grid - 1 {
        if allowed(f[i]) != allowed(f[i + 1]) {
            if let Some(e) = bisect(excess, energies[i], energies[i + 1], 1e-15) {
                edges.push(e);
            }
        }
    }
    for i in 1..grid - 1 {
        let (l, c, r) = (f[i - 1], f[i], f[i + 1]);
        let (lo, hi) = (energies[i - 1], energies[i + 1]);
        if allowed(l) && allowed(c) && allowed(r) && c >= l && c >= r {
            let (peak, top) = golden_max(excess, lo, hi, 80);
            if top > 0.0 {
                edges.extend(bisect(excess, lo, peak, 1e-15));
                edges.extend(bisect(excess, peak, hi, 1e-15));
            }
        } else if !allowed(l) && !allowed(c) && !allowed(r) && c <= l && c <= r {
            let (dip, bottom) = golden_max(|e| -excess(e), lo, hi, 80);
            if bottom >= 0.0 {
                edges.extend(bisect(excess, lo, dip, 1e-15));
                edges.extend(bisect(excess, dip, hi, 1e-15));
            }
        }
    }
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut bands = Vec::new();
    let mut inside = allowed(f[0]);
    let mut start = e_min;
    for &edge in &edges {
        if inside && edge > start {
            bands.push(Interval {
                lower: start,
                upper: edge,
            });
        }
        inside = !inside;
        start = edge;
    }
    if inside && start < e_max {
        bands.push(Interval {
            lower: start,
            upper: e_max,
        });
    }
    let gaps = bands
        .windows(2)
        .map(|w| Interval {
            lower: w[0].upper,
            upper: w[1].lower,
        })
        .collect();
    Ok(BandDiagram {
        e_min,
        e_max,
        bands,
        gaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lattice(m1: f64, m2: f64, v0: f64, beta: f64) -> LatticeParams {
        LatticeParams::new(
            m1,
            m2,
            v0,
            1.0,
            1.0,
            OrderingScheme::new(beta).unwrap(),
            PhysicalConstants::default(),
        )
        .unwrap()
    }

    #[test]
    fn free_lattice_is_free_dispersion() {
        let p = LatticeParams::new(
            1.5,
            1.5,
            0.0,
            0.7,
            1.1,
            OrderingScheme::BEN_DANIEL_DUKE,
            PhysicalConstants::default(),
        )
        .unwrap();
        for e in [0.01f64, 0.3, 2.0, 17.0] {
            let k1 = (3.0 * e).sqrt();
            assert!((dispersion_rhs(&p, e).unwrap() - (k1 * 1.8).cos()).abs() < 1e-13);
        }
        // first zone: p = k1
        let e: f64 = 0.5;
        let k1 = (3.0 * e).sqrt();
        assert!(k1 * 1.8 < std::f64::consts::PI);
        assert_relative_eq!(quasimomentum(&p, e).unwrap().unwrap(), k1, max_relative = 1e-12);
        let d = band_diagram(&p, 0.01, 50.0, 4000).unwrap();
        assert_eq!(d.bands.len(), 1);
        assert!(d.gaps.is_empty());
    }

    #[test]
    fn h_factor_values() {
        let free = lattice(1.0, 1.0, 0.0, -1.0);
        assert_eq!(h_factor(&free, 3.0).unwrap(), 1.0);
        let p = lattice(1.0, 1.0, 2.0, -0.5);
        assert_relative_eq!(h_factor(&p, 4.0).unwrap(), (9.0f64 / 8.0).sqrt(), max_relative = 1e-15);
        let p = lattice(0.25, 1.0, 1.0, -1.0);
        assert_relative_eq!(h_factor_limit(&p), 1.25, max_relative = 1e-15);
        assert!((h_factor(&p, 1e8).unwrap() - 1.25).abs() < 1e-3);
        assert!(h_factor(&p, 0.5).is_err());
    }

    #[test]
    fn h_is_impedance_mean() {
        // √(1 + g) = (q + 1/q)/2 with q = k2 m2^β / (k1 m1^β)
        let p = lattice(1.0, 3.0, 1.0, -0.8);
        for e in [1.2f64, 2.0, 10.0] {
            let q = (3.0 * (e - 1.0) / e).sqrt() * (3f64).powf(-0.8);
            assert_relative_eq!(h_factor(&p, e).unwrap(), 0.5 * (q + 1.0 / q), max_relative = 1e-13);
        }
    }

    #[test]
    fn continuous_through_barrier_top() {
        let p = lattice(1.0, 2.0, 1.0, -1.0);
        let lo = dispersion_rhs(&p, 1.0 - 1e-9).unwrap();
        let at = dispersion_rhs(&p, 1.0).unwrap();
        let hi = dispersion_rhs(&p, 1.0 + 1e-9).unwrap();
        assert!((lo - at).abs() < 1e-7 && (hi - at).abs() < 1e-7);
    }

    #[test]
    fn rejects_bad_ranges() {
        let p = lattice(1.0, 2.0, 1.0, -1.0);
        assert!(dispersion_rhs(&p, 0.0).is_err());
        assert!(band_diagram(&p, 2.0, 1.0, 100).is_err());
        assert!(band_diagram(&p, 0.1, 1.0, 1).is_err());
        assert!(matches!(band_diagram(&p, 0.1, 500.0, 3), Err(Error::Resolution { .. })));
    }

    #[test]
    fn diagram_interiors_respect_rhs() {
        let p = lattice(1.0, 2.0, 1.0, -1.0);
        let d = band_diagram(&p, 0.01, 60.0, 3000).unwrap();
        assert!(d.gaps.len() >= 5);
        for band in &d.bands {
            for j in 1..10 {
                let e = band.lower + band.width() * j as f64 / 10.0;
                assert!(dispersion_rhs(&p, e).unwrap().abs() <= 1.0);
            }
        }
        for gap in &d.gaps {
            assert!(gap.width() > 0.0);
            for j in 1..10 {
                let e = gap.lower + gap.width() * j as f64 / 10.0;
                assert!(dispersion_rhs(&p, e).unwrap().abs() > 1.0);
                assert_eq!(quasimomentum(&p, e).unwrap(), None);
            }
        }
    }

    #[test]
    fn narrow_gaps_between_samples_are_found() {
        // flat ordering: high gaps are far narrower than a coarse grid step
        let p = lattice(1.0, 2.0, 1.0, -0.5);
        let coarse = band_diagram(&p, 0.01, 200.0, 4000).unwrap();
        let fine = band_diagram(&p, 0.01, 200.0, 400_000).unwrap();
        assert_eq!(coarse.gaps.len(), fine.gaps.len());
        for (x, y) in coarse.gaps.iter().zip(&fine.gaps) {
            assert!((x.lower - y.lower).abs() < 1e-9 && (x.upper - y.upper).abs() < 1e-9);
        }
    }
}
