//! TOML structure descriptions.
//!
//! ```toml
//! hbar = 1.0          # optional
//! beta = -0.5         # optional, --beta overrides
//!
//! [left_lead]
//! mass = 1.0
//! potential = 0.0
//!
//! [[layers]]          # zero or more, left to right
//! width = 2.0
//! mass = 2.0
//! potential = 1.0
//!
//! [right_lead]
//! mass = 1.0
//! potential = 0.0
//! ```
//!
//! Errors name the offending field, e.g. `layers[2].width`.

use std::path::Path;

use flatmass_core::{Layer, Lead, Structure};
use toml::{Table, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct StructureFile {
    pub hbar: Option<f64>,
    pub beta: Option<f64>,
    pub structure: Structure,
}

fn invalid(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{path}: {msg}"))
}

fn reject_unknown(table: &Table, allowed: &[&str], prefix: &str) -> CliResult<()> {
    match table.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(key) => Err(invalid(&format!("{prefix}{key}"), "unknown field")),
        None => Ok(()),
    }
}

fn number(value: &Value, path: &str) -> CliResult<f64> {
    let x = match value {
        Value::Float(x) => *x,
        Value::Integer(i) => *i as f64,
        other => return Err(invalid(path, format!("expected a number, found {}", other.type_str()))),
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(path, "must be finite"))
    }
}

fn required(table: &Table, key: &str, prefix: &str) -> CliResult<f64> {
    let path = format!("{prefix}{key}");
    table
        .get(key)
        .ok_or_else(|| invalid(&path, "missing field"))
        .and_then(|v| number(v, &path))
}

fn required_positive(table: &Table, key: &str, prefix: &str) -> CliResult<f64> {
    let x = required(table, key, prefix)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(invalid(&format!("{prefix}{key}"), format!("must be > 0, got {x}")))
    }
}

fn optional(table: &Table, key: &str) -> CliResult<Option<f64>> {
    table.get(key).map(|v| number(v, key)).transpose()
}

fn subtable<'a>(table: &'a Table, key: &str) -> CliResult<&'a Table> {
    match table.get(key) {
        Some(Value::Table(t)) => Ok(t),
        Some(other) => Err(invalid(key, format!("expected a table, found {}", other.type_str()))),
        None => Err(invalid(key, "missing table")),
    }
}

fn lead(table: &Table, key: &str) -> CliResult<Lead> {
    let t = subtable(table, key)?;
    let prefix = format!("{key}.");
    reject_unknown(t, &["mass", "potential"], &prefix)?;
    let mass = required_positive(t, "mass", &prefix)?;
    let potential = required(t, "potential", &prefix)?;
    Lead::new(mass, potential).map_err(|e| invalid(key, e))
}

fn layers(table: &Table) -> CliResult<Vec<Layer>> {
    let items = match table.get("layers") {
        None => return Ok(Vec::new()),
        Some(Value::Array(items)) => items,
        Some(other) => {
            return Err(invalid(
                "layers",
                format!("expected an array of tables, found {}", other.type_str()),
            ))
        }
    };
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let path = format!("layers[{i}]");
            let t = item
                .as_table()
                .ok_or_else(|| invalid(&path, format!("expected a table, found {}", item.type_str())))?;
            let prefix = format!("{path}.");
            reject_unknown(t, &["width", "mass", "potential"], &prefix)?;
            let width = required_positive(t, "width", &prefix)?;
            let mass = required_positive(t, "mass", &prefix)?;
            let potential = required(t, "potential", &prefix)?;
            Layer::new(width, mass, potential).map_err(|e| invalid(&path, e))
        })
        .collect()
}

pub fn parse(text: &str) -> CliResult<StructureFile> {
    let root: Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Usage(format!("malformed structure file: {e}")))?;
    reject_unknown(&root, &["hbar", "beta", "left_lead", "layers", "right_lead"], "")?;
    let hbar = optional(&root, "hbar")?;
    if let Some(h) = hbar {
        if h <= 0.0 {
            return Err(invalid("hbar", "must be > 0"));
        }
    }
    Ok(StructureFile {
        hbar,
        beta: optional(&root, "beta")?,
        structure: Structure::new(lead(&root, "left_lead")?, layers(&root)?, lead(&root, "right_lead")?),
    })
}

pub fn load(path: &Path) -> CliResult<StructureFile> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        CliError::Usage(msg) => CliError::Usage(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const STEP: &str = "
beta = -1
[left_lead]
mass = 1
potential = 0.0
[right_lead]
mass = 4.0
potential = 1.0
";

    fn usage_message(text: &str) -> String {
        match parse(text) {
            Err(CliError::Usage(msg)) => msg,
            other => panic!("expected a usage error, got {other:?}"),
        }
    }

    #[test]
    fn parses_leads_and_layers() {
        let f = parse(STEP).unwrap();
        assert_eq!(f.beta, Some(-1.0));
        assert_eq!(f.hbar, None);
        assert!(f.structure.layers().is_empty());
        assert_eq!(f.structure.right_lead().mass(), 4.0);

        let text = format!("{STEP}\n[[layers]]\nwidth = 2\nmass = 2\npotential = 1\n[[layers]]\nwidth = 0.5\nmass = 1\npotential = 0\n");
        let f = parse(&text).unwrap();
        assert_eq!(f.structure.layers().len(), 2);
        assert_eq!(f.structure.layers()[1].width(), 0.5);
    }

    #[test]
    fn errors_name_the_field() {
        let bad_width = format!(
            "{STEP}\n[[layers]]\nwidth = 1\nmass = 1\npotential = 0\n[[layers]]\nwidth = -1\nmass = 1\npotential = 0\n"
        );
        assert_eq!(usage_message(&bad_width), "layers[1].width: must be > 0, got -1");
        let missing = format!("{STEP}\n[[layers]]\nmass = 1\npotential = 0\n");
        assert_eq!(usage_message(&missing), "layers[0].width: missing field");
        let wrong_type = STEP.replace("mass = 4.0", "mass = \"heavy\"");
        assert_eq!(
            usage_message(&wrong_type),
            "right_lead.mass: expected a number, found string"
        );
        let typo = STEP.replace("potential = 1.0", "potental = 1.0");
        assert_eq!(usage_message(&typo), "right_lead.potental: unknown field");
        assert_eq!(
            usage_message("beta = -0.5\n[left_lead]\nmass = 1\npotential = 0\n"),
            "right_lead: missing table"
        );
        assert_eq!(usage_message(&format!("hbar = 0\n{STEP}")), "hbar: must be > 0");
        assert!(usage_message("[left_lead\n").starts_with("malformed structure file"));
    }
}
