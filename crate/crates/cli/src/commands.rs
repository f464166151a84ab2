//! Scenario subcommands. Each returns a [`Table`]; rows are computed in
//! parallel and collected in input order.

use flatmass_core::bands::{band_diagram, dispersion_rhs, quasimomentum, LatticeParams};
use flatmass_core::bound_states::{constant_mass_well_spectrum, well_spectrum, WellParams};
use flatmass_core::closed_forms::{
    barrier_transmission, prefactor_max_energy, ramsauer_energies, step_asymptote, step_reflection, step_transmission,
    transparency_energy, BarrierParams, StepParams,
};
use flatmass_core::matching::scatter;
use flatmass_core::{OrderingScheme, PhysicalConstants};
use rayon::prelude::*;
use serde_json::Value;

use crate::args::{BarrierArgs, MaterialArgs, MultibarrierArgs, ScatterArgs, StepArgs, SweepArgs, WellArgs};
use crate::error::{CliError, CliResult};
use crate::output::{number, numbers, Table};
use crate::structure_file;

pub fn constants(hbar: Option<f64>) -> CliResult<PhysicalConstants> {
    Ok(PhysicalConstants::new(hbar.unwrap_or(1.0))?)
}

fn scheme(beta: f64) -> CliResult<OrderingScheme> {
    Ok(OrderingScheme::new(beta)?)
}

/// The energies requested by the sweep flags, in output order.
pub fn energies(sweep: &SweepArgs) -> CliResult<Vec<f64>> {
    if let Some(list) = &sweep.energies {
        if list.is_empty() || list.iter().any(|e| !e.is_finite()) {
            return Err(CliError::Usage("--energies needs finite values".into()));
        }
        return Ok(list.clone());
    }
    let (lo, hi) = match (sweep.e_min, sweep.e_max) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(CliError::Usage("give --e-min and --e-max, or --energies".into())),
    };
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!(
            "need finite --e-min < --e-max, got {lo} and {hi}"
        )));
    }
    let n = sweep.points;
    if n < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if sweep.log && lo <= 0.0 {
        return Err(CliError::Usage("--log needs --e-min > 0".into()));
    }
    let span = if sweep.log { (hi / lo).ln() } else { hi - lo };
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                return hi;
            }
            let t = i as f64 / (n - 1) as f64;
            if sweep.log {
                lo * (span * t).exp()
            } else {
                lo + span * t
            }
        })
        .collect())
}

fn rows<F>(energies: &[f64], row: F) -> CliResult<Vec<Vec<Value>>>
where
    F: Fn(f64) -> CliResult<Vec<Value>> + Sync,
{
    energies.par_iter().map(|&e| row(e)).collect()
}

fn optional_number(x: Option<f64>) -> Value {
    x.map_or(Value::Null, number)
}

fn step_params(m: &MaterialArgs, v0: f64, hbar: Option<f64>) -> CliResult<StepParams> {
    Ok(StepParams::new(m.m1, m.m2, v0, scheme(m.beta)?, constants(hbar)?)?)
}

pub fn step(args: &StepArgs, hbar: Option<f64>) -> CliResult<Table> {
    let p = step_params(&args.material, args.v0, hbar)?;
    let energies = energies(&args.sweep)?;
    let mut table = Table::new(["energy", "transmission", "reflection"]);
    table.rows = rows(&energies, |e| {
        Ok(vec![
            number(e),
            number(step_transmission(&p, e)?),
            number(step_reflection(&p, e)?),
        ])
    })?;
    table.push_footer("asymptote", number(step_asymptote(&p)));
    table.push_footer("transparency_energy", optional_number(transparency_energy(&p)));
    Ok(table)
}

pub fn barrier(args: &BarrierArgs, hbar: Option<f64>) -> CliResult<Table> {
    let m = &args.material;
    let p = BarrierParams::new(m.m1, m.m2, args.v0, args.a, scheme(m.beta)?, constants(hbar)?)?;
    let energies = energies(&args.sweep)?;
    let mut table = Table::new(["energy", "transmission", "reflection"]);
    table.rows = rows(&energies, |e| {
        let t = barrier_transmission(&p, e)?;
        Ok(vec![number(e), number(t), number(1.0 - t)])
    })?;
    let e_top = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    table.push_footer("asymptote", number(step_asymptote(&p.step())));
    table.push_footer("transparency_energy", optional_number(transparency_energy(&p.step())));
    table.push_footer("ramsauer_energies", numbers(&ramsauer_energies(&p, e_top)));
    let prefactor_max = if p.v0 > 0.0 {
        Some(prefactor_max_energy(&p)?)
    } else {
        None
    };
    table.push_footer("prefactor_max_energy", optional_number(prefactor_max));
    Ok(table)
}

pub fn well(args: &WellArgs, hbar: Option<f64>) -> CliResult<Table> {
    let m = &args.material;
    let c = constants(hbar)?;
    let p = WellParams::new(m.m1, m.m2, args.depth, args.a, scheme(m.beta)?, c)?;
    let spectrum = well_spectrum(&p)?;
    if spectrum.is_empty() {
        return Err(CliError::Numeric(
            "no bound state found; a symmetric well always binds".into(),
        ));
    }
    let oracle = if args.oracle {
        Some(constant_mass_well_spectrum(m.m2, args.depth, args.a, &c)?)
    } else {
        None
    };
    let mut columns = vec!["index", "parity", "energy"];
    if oracle.is_some() {
        columns.push("oracle_energy");
    }
    let mut table = Table::new(columns);
    for (i, level) in spectrum.levels.iter().enumerate() {
        let mut row = vec![
            Value::from(i as u64),
            Value::from(level.parity.as_str()),
            number(level.energy),
        ];
        if let Some(o) = &oracle {
            row.push(optional_number(o.levels.get(i).map(|l| l.energy)));
        }
        table.rows.push(row);
    }
    table.push_footer("expected_count", Value::from(p.expected_count() as u64));
    Ok(table)
}

pub fn multibarrier(args: &MultibarrierArgs, hbar: Option<f64>) -> CliResult<Table> {
    let m = &args.material;
    let p = LatticeParams::new(m.m1, m.m2, args.v0, args.a, args.b, scheme(m.beta)?, constants(hbar)?)?;
    let energies = energies(&args.sweep)?;
    let mut table = Table::new(["energy", "dispersion_rhs", "quasimomentum"]);
    table.rows = rows(&energies, |e| {
        Ok(vec![
            number(e),
            number(dispersion_rhs(&p, e)?),
            optional_number(quasimomentum(&p, e)?),
        ])
    })?;
    let lo = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        let diagram = band_diagram(&p, lo, hi, args.grid.unwrap_or(1000))?;
        for (i, band) in diagram.bands.iter().enumerate() {
            table.push_footer(format!("band_{}", i + 1), numbers(&[band.lower, band.upper]));
        }
        for (i, gap) in diagram.gaps.iter().enumerate() {
            table.push_footer(format!("gap_{}", i + 1), numbers(&[gap.lower, gap.upper, gap.width()]));
        }
        table.push_footer("gap_count", Value::from(diagram.gaps.len() as u64));
    }
    Ok(table)
}

pub fn scatter_file(args: &ScatterArgs, hbar: Option<f64>) -> CliResult<Table> {
    let file = structure_file::load(&args.structure)?;
    let beta = args
        .beta
        .or(file.beta)
        .ok_or_else(|| CliError::Usage("no ordering parameter: pass --beta or set beta in the file".into()))?;
    let scheme = scheme(beta)?;
    let c = constants(hbar.or(file.hbar))?;
    let structure = &file.structure;
    let energies = energies(&args.sweep)?;
    let regions = structure.regions().len();

    let mut columns = vec!["energy".to_string(), "transmission".into(), "reflection".into()];
    if args.amplitudes {
        for j in 0..regions {
            for part in ["forward_re", "forward_im", "backward_re", "backward_im"] {
                columns.push(format!("region{j}_{part}"));
            }
        }
    }
    let mut table = Table::new(columns);
    table.rows = rows(&energies, |e| {
        let sol = scatter(structure, e, &scheme, &c)?;
        let mut row = vec![number(e), number(sol.transmission), number(sol.reflection)];
        if args.amplitudes {
            for amp in &sol.amplitudes {
                match amp {
                    Some(a) => row.extend([a.forward.re, a.forward.im, a.backward.re, a.backward.im].map(number)),
                    None => row.extend([Value::Null, Value::Null, Value::Null, Value::Null]),
                }
            }
        }
        Ok(row)
    })?;
    Ok(table)
}
