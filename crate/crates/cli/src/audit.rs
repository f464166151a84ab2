//! Printed closed forms compared with values recomputed from the connection
//! rules. Each entry reports both numbers; disagreement is data, not an error.

use flatmass_core::bands::{h_factor, LatticeParams};
use flatmass_core::bound_states::{cosine_condition_roots, well_spectrum, WellParams};
use flatmass_core::closed_forms::{g_factor, prefactor_max_energy, BarrierParams, StepParams};
use flatmass_core::matching::scatter;
use flatmass_core::{OrderingScheme, PhysicalConstants, Structure};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::output::{number, numbers, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct AuditEntry {
    pub claim: &'static str,
    pub printed: Value,
    pub computed: Value,
    pub agrees: bool,
    pub note: String,
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

/// Mass ratio 1/4 with β = -1 gives σ = 2.
fn sigma_two() -> CliResult<BarrierParams> {
    Ok(BarrierParams::new(
        1.0,
        4.0,
        1.0,
        1.0,
        OrderingScheme::BEN_DANIEL_DUKE,
        PhysicalConstants::default(),
    )?)
}

/// Transmission with the velocity ratio inverted, `(k1/m1)(m2/k2)|C/A|^2`,
/// against the conserved-current value `(k2/m2)(m1/k1)|C/A|^2`.
fn transmission_normalization() -> CliResult<AuditEntry> {
    let (m1, m2, v0, e) = (1.0, 4.0, 1.0, 2.0);
    let c = PhysicalConstants::default();
    let scheme = OrderingScheme::BEN_DANIEL_DUKE;
    let sol = scatter(&Structure::step(m1, m2, v0)?, e, &scheme, &c)?;
    let transmitted = sol
        .transmitted_amplitude()
        .ok_or_else(|| CliError::Numeric("no transmitted wave".into()))?;
    let k1 = sol.wavenumbers[0].re;
    let k2 = sol.wavenumbers[sol.wavenumbers.len() - 1].re;
    let inverted = (k1 / m1) * (m2 / k2) * transmitted.norm_sqr();
    let ratio = (m2 / m1) * e / (e - v0);
    let step = StepParams::new(m1, m2, v0, scheme, c)?;
    let closed = flatmass_core::closed_forms::step_transmission(&step, e)?;
    Ok(AuditEntry {
        claim: "transmission_normalization",
        printed: number(inverted),
        computed: number(sol.transmission),
        agrees: close(inverted, sol.transmission, 1e-12),
        note: format!(
            "step m1=1 m2=4 V0=1 beta=-1 E=2; current-based value equals the closed form {closed:.11e}; \
             ratio printed/computed = (m2/m1) E/(E-V0) = {ratio}"
        ),
    })
}

fn g_limit() -> CliResult<AuditEntry> {
    let p = sigma_two()?;
    let s = p.sigma();
    let literal = (s * s - 1.0) / (4.0 * s * s);
    let computed = g_factor(&p, 1e8 * p.v0)?;
    let squared = ((s * s - 1.0) / (2.0 * s)).powi(2);
    Ok(AuditEntry {
        claim: "g_high_energy_limit",
        printed: number(literal),
        computed: number(computed),
        agrees: close(literal, computed, 1e-6),
        note: format!(
            "sigma=2; g at E=1e8 V0; printed (s^2-1)/4s^2, exact limit ((s^2-1)/(2s))^2 = {squared}; \
             the reading (s^2-1)/4 gives 0.75"
        ),
    })
}

fn h_limit() -> CliResult<AuditEntry> {
    let b = sigma_two()?;
    let p = LatticeParams::new(b.m1, b.m2, b.v0, b.a, 1.0, b.scheme, b.constants)?;
    let s = b.sigma();
    let printed = (s * s + 1.0).powi(2) / (4.0 * s * s);
    let computed = h_factor(&p, 1e8 * p.v0)?;
    Ok(AuditEntry {
        claim: "h_high_energy_limit",
        printed: number(printed),
        computed: number(computed),
        agrees: close(printed, computed, 1e-6),
        note: format!(
            "sigma=2; h at E=1e8 V0; printed (s^2+1)^2/4s^2 is the square of the exact limit (s^2+1)/(2s) = {}",
            (s * s + 1.0) / (2.0 * s)
        ),
    })
}

fn prefactor_maximum() -> CliResult<AuditEntry> {
    let p = sigma_two()?;
    let s = p.sigma();
    let printed = p.v0 / (1.0 + s);
    let computed = prefactor_max_energy(&p)?;
    Ok(AuditEntry {
        claim: "tunnel_prefactor_maximum",
        printed: number(printed),
        computed: number(computed),
        agrees: close(printed, computed, 1e-9),
        note: format!(
            "sigma=2 V0=1; printed V0/(1+s), candidate V0/(1+s^2) = {}",
            p.v0 / (1.0 + s * s)
        ),
    })
}

fn well_condition(beta: f64) -> CliResult<AuditEntry> {
    let p = WellParams::new(
        2.0,
        1.0,
        50.0,
        1.0,
        OrderingScheme::new(beta)?,
        PhysicalConstants::default(),
    )?;
    let roots = cosine_condition_roots(&p, 20_000);
    let levels = well_spectrum(&p)?.energies();
    let agrees = roots.len() == levels.len() && roots.iter().zip(&levels).all(|(r, l)| (r - l).abs() <= 1e-6);
    Ok(AuditEntry {
        claim: if beta == -0.5 {
            "well_cosine_condition_flat"
        } else {
            "well_cosine_condition_bdd"
        },
        printed: numbers(&roots),
        computed: numbers(&levels),
        agrees,
        note: format!(
            "well m1=2 m2=1 depth=50 a=1 beta={beta}; printed: roots of the single cosine condition \
             (with 2 m2 V0/hbar^2), computed: parity-resolved matching"
        ),
    })
}

pub fn entries() -> CliResult<Vec<AuditEntry>> {
    Ok(vec![
        transmission_normalization()?,
        g_limit()?,
        h_limit()?,
        prefactor_maximum()?,
        well_condition(-0.5)?,
        well_condition(-1.0)?,
    ])
}

pub fn run() -> CliResult<Table> {
    let mut table = Table::new(["claim", "printed", "computed", "agrees", "note"]);
    for e in entries()? {
        table.rows.push(vec![
            Value::from(e.claim),
            e.printed,
            e.computed,
            Value::Bool(e.agrees),
            Value::String(e.note),
        ]);
    }
    Ok(table)
}
