//! High-energy diagnostics per ordering parameter: the step asymptote, the
//! barrier transmission envelope, and the width of high-index lattice gaps.
//! Only an ordering for which all three become trivial can describe a
//! transmission that tends to one.

use flatmass_core::bands::{band_diagram, LatticeParams};
use flatmass_core::closed_forms::{step_asymptote, BarrierParams};
use flatmass_core::matching::scatter;
use flatmass_core::roots::golden_max;
use flatmass_core::{Error as CoreError, OrderingScheme, PhysicalConstants, Structure};
use serde_json::Value;

use crate::args::BetaSweepArgs;
use crate::error::{CliError, CliResult};
use crate::output::{number, Table};

/// Gap indices (1-based) averaged for the high-index estimate.
pub const HIGH_GAPS: std::ops::RangeInclusive<usize> = 15..=25;
const MAX_GRID: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub beta: f64,
    pub sigma: f64,
    pub asymptote: f64,
    pub envelope_min: f64,
    pub gap_ratio: Option<f64>,
    pub viable: bool,
}

fn energy_scale(v0: f64) -> f64 {
    if v0 == 0.0 {
        1.0
    } else {
        v0.abs()
    }
}

/// Minimum of the numerically scattered barrier transmission over one period
/// of `sin^2(k2 a)` near `E = 1e6 |V0|`.
pub fn envelope_minimum(p: &BarrierParams) -> CliResult<f64> {
    let structure = Structure::barrier(p.m1, p.m2, p.v0, p.a)?;
    let kin = p.constants.kinetic_factor(p.m2) * p.a * p.a;
    let e_high = 1e6 * energy_scale(p.v0);
    let n = ((kin * (e_high - p.v0)).sqrt() / std::f64::consts::PI).floor();
    let energy = |theta: f64| p.v0 + theta * theta / kin;
    let transmission = |theta: f64| {
        scatter(&structure, energy(theta), &p.scheme, &p.constants)
            .map(|s| s.transmission)
            .unwrap_or(f64::NAN)
    };
    let pi = std::f64::consts::PI;
    let (_, neg_min) = golden_max(|theta| -transmission(theta), n * pi, (n + 1.0) * pi, 200);
    let min = -neg_min;
    if min.is_finite() {
        Ok(min)
    } else {
        Err(CliError::Numeric("barrier envelope scan failed".into()))
    }
}

/// `k1 b + k2 a` at energy `e`, the phase that advances by about π per band.
fn lattice_phase(p: &LatticeParams, e: f64) -> f64 {
    let k1 = (p.constants.kinetic_factor(p.m1) * e).max(0.0).sqrt();
    let k2 = (p.constants.kinetic_factor(p.m2) * (e - p.v0)).max(0.0).sqrt();
    k1 * p.b + k2 * p.a
}

/// Widths of the first `count` gaps, scanning an energy window wide enough to
/// hold them and refining the grid until the band search accepts it.
pub fn gap_widths(p: &LatticeParams, count: usize) -> CliResult<Vec<f64>> {
    let scale = energy_scale(p.v0);
    let target = (count as f64 + 2.0) * std::f64::consts::PI;
    let mut e_max = scale.max(p.v0);
    while lattice_phase(p, e_max) < target {
        e_max *= 2.0;
    }
    let e_min = 1e-9 * scale;
    let mut grid = 1000;
    let diagram = loop {
        match band_diagram(p, e_min, e_max, grid) {
            Ok(d) => break d,
            Err(CoreError::Resolution { required, .. }) if required <= MAX_GRID && required > grid => grid = required,
            Err(e) => return Err(e.into()),
        }
    };
    Ok(diagram.gaps.iter().take(count).map(|g| g.width()).collect())
}

/// Mean width of gaps [`HIGH_GAPS`] relative to the first gap; `None` when
/// the lattice has no gaps at all, zero when the high gaps are closed.
pub fn high_gap_ratio(widths: &[f64]) -> Option<f64> {
    let first = *widths.first()?;
    let high: Vec<f64> = HIGH_GAPS.filter_map(|i| widths.get(i - 1).copied()).collect();
    let sum: f64 = high.iter().sum();
    Some(sum / HIGH_GAPS.count() as f64 / first)
}

pub fn sweep_row(beta: f64, args: &BetaSweepArgs, constants: PhysicalConstants) -> CliResult<SweepRow> {
    let scheme = OrderingScheme::new(beta)?;
    let barrier = BarrierParams::new(args.m1, args.m2, args.v0, args.a, scheme, constants)?;
    let lattice = LatticeParams::new(args.m1, args.m2, args.v0, args.a, args.b, scheme, constants)?;
    let asymptote = step_asymptote(&barrier.step());
    let envelope_min = envelope_minimum(&barrier)?;
    let gap_ratio = high_gap_ratio(&gap_widths(&lattice, *HIGH_GAPS.end())?);
    let viable =
        (asymptote - 1.0).abs() <= 1e-6 && (envelope_min - 1.0).abs() <= 1e-6 && gap_ratio.is_none_or(|r| r < 0.05);
    Ok(SweepRow {
        beta,
        sigma: barrier.sigma(),
        asymptote,
        envelope_min,
        gap_ratio,
        viable,
    })
}

pub fn run(args: &BetaSweepArgs, constants: PhysicalConstants) -> CliResult<Table> {
    use rayon::prelude::*;
    let rows: Vec<SweepRow> = args
        .betas
        .par_iter()
        .map(|&b| sweep_row(b, args, constants))
        .collect::<CliResult<_>>()?;
    let mut table = Table::new([
        "beta",
        "sigma",
        "step_asymptote",
        "barrier_envelope_min",
        "high_gap_ratio",
        "viable",
    ]);
    for r in rows {
        table.rows.push(vec![
            number(r.beta),
            number(r.sigma),
            number(r.asymptote),
            number(r.envelope_min),
            r.gap_ratio.map_or(Value::Null, number),
            Value::Bool(r.viable),
        ]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args() -> BetaSweepArgs {
        BetaSweepArgs {
            betas: vec![-1.0, -0.75, -0.5, -0.25, 0.0],
            m1: 1.0,
            m2: 4.0,
            v0: 1.0,
            a: 1.0,
            b: 1.0,
        }
    }

    #[test]
    fn only_flat_ordering_is_viable() {
        let c = PhysicalConstants::default();
        for &beta in &args().betas {
            let row = sweep_row(beta, &args(), c).unwrap();
            assert_eq!(row.viable, beta == -0.5, "beta {beta}: {row:?}");
        }
    }

    #[test]
    fn envelope_tracks_g_limit() {
        // σ = 2: min T = 1/(1 + g) with g → 9/16
        let p = BarrierParams::new(
            1.0,
            4.0,
            1.0,
            1.0,
            OrderingScheme::BEN_DANIEL_DUKE,
            PhysicalConstants::default(),
        )
        .unwrap();
        let min = envelope_minimum(&p).unwrap();
        assert!((min - 16.0 / 25.0).abs() < 1e-5, "{min}");
    }

    #[test]
    fn gap_ratio_handles_missing_gaps() {
        assert_eq!(high_gap_ratio(&[]), None);
        assert_eq!(high_gap_ratio(&[2.0]), Some(0.0));
        let widths = vec![1.0; 30];
        assert_eq!(high_gap_ratio(&widths), Some(1.0));
    }
}
