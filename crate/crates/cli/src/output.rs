//! Tabular output as CSV or JSON lines.
//!
//! Numbers are written with 12 significant digits in CSV and in serde_json's
//! shortest round-trip form in JSON; both are locale independent.

use std::io::Write;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Summary entries written after the rows.
    pub footer: Vec<(String, Value)>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn push_footer(&mut self, key: impl Into<String>, value: Value) {
        self.footer.push((key.into(), value));
    }
}

/// Non-finite values become `null`, printed as an empty CSV cell.
pub fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn numbers(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(number).collect())
}

fn format_cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.to_string(),
            (_, Some(u)) => u.to_string(),
            _ => format!("{:.11e}", n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(format_cell).collect::<Vec<_>>().join(" "),
        Value::Object(_) => value.to_string(),
    }
}

pub fn write_csv(table: &Table, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{}", table.columns.join(","))?;
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(format_cell).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    for (key, value) in &table.footer {
        let text = match value {
            Value::Null => "none".to_string(),
            Value::Array(items) if items.is_empty() => "none".to_string(),
            other => format_cell(other),
        };
        writeln!(out, "# {key} = {text}")?;
    }
    Ok(())
}

pub fn write_json_lines(table: &Table, out: &mut impl Write) -> std::io::Result<()> {
    for row in &table.rows {
        let record: Map<String, Value> = table.columns.iter().cloned().zip(row.iter().cloned()).collect();
        writeln!(out, "{}", Value::Object(record))?;
    }
    for (key, value) in &table.footer {
        let mut record = Map::new();
        record.insert("summary".into(), Value::String(key.clone()));
        record.insert("value".into(), value.clone());
        writeln!(out, "{}", Value::Object(record))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(table: &Table, json: bool) -> String {
        let mut buf = Vec::new();
        if json {
            write_json_lines(table, &mut buf).unwrap();
        } else {
            write_csv(table, &mut buf).unwrap();
        }
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_uses_twelve_significant_digits() {
        let mut t = Table::new(["energy", "transmission", "note"]);
        t.rows
            .push(vec![number(2.0), number(0.771_906_1), Value::String("a,b".into())]);
        t.rows.push(vec![Value::from(3u64), number(f64::NAN), Value::Null]);
        t.push_footer("transparency_energy", Value::Null);
        t.push_footer("ramsauer_energies", numbers(&[1.5, 2.5]));
        let text = render(&t, false);
        assert_eq!(
            text,
            "energy,transmission,note\n\
             2.00000000000e0,7.71906100000e-1,\"a,b\"\n\
             3,,\n\
             # transparency_energy = none\n\
             # ramsauer_energies = 1.50000000000e0 2.50000000000e0\n"
        );
    }

    #[test]
    fn json_keeps_column_order() {
        let mut t = Table::new(["z", "a"]);
        t.rows.push(vec![number(1.5), Value::Bool(true)]);
        t.push_footer("asymptote", number(1.0));
        let text = render(&t, true);
        assert_eq!(
            text,
            "{\"z\":1.5,\"a\":true}\n{\"summary\":\"asymptote\",\"value\":1.0}\n"
        );
    }
}
