use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde_json::Value;

use crate::args::{Format, OutputArgs};

/// Formats a float with 17 significant digits.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub struct Table {
    pub title: &'static str,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// A rendered run: the structured payload and its tabular views.
pub struct Payload {
    pub json: Value,
    /// The first table is the CSV view; markdown prints all of them.
    pub tables: Vec<Table>,
}

pub fn render(payload: &Payload, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut out = String::new();
            write_json(&mut out, &payload.json, 0);
            out.push('\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(t) = payload.tables.first() {
                w.write_record(&t.headers)?;
                for row in &t.rows {
                    w.write_record(row)?;
                }
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Markdown => {
            let mut out = String::new();
            for (i, t) in payload.tables.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                if payload.tables.len() > 1 {
                    out.push_str(&format!("### {}\n\n", t.title));
                }
                markdown_table(&mut out, t);
            }
            Ok(out)
        }
    }
}

fn markdown_table(out: &mut String, t: &Table) {
    let line = |cells: &mut dyn Iterator<Item = String>| {
        let cells: Vec<String> = cells.collect();
        format!("| {} |\n", cells.join(" | "))
    };
    out.push_str(&line(&mut t.headers.iter().map(|h| h.to_string())));
    out.push_str(&line(&mut t.headers.iter().map(|_| "---".to_string())));
    for row in &t.rows {
        out.push_str(&line(&mut row.iter().map(|c| c.replace('|', "\\|"))));
    }
}

/// Pretty JSON with every float written by [`num`]; integers stay integers.
fn write_json(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.push_str(&"  ".repeat(d));
    match v {
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) if !n.is_f64() => out.push_str(&u.to_string()),
            (_, Some(i), _) if !n.is_f64() => out.push_str(&i.to_string()),
            (_, _, Some(f)) => out.push_str(&num(f)),
            _ => out.push_str(&n.to_string()),
        },
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_json(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Writes to `--output` via a temporary file in the same directory, or to stdout.
pub fn emit(text: &str, args: &OutputArgs) -> Result<()> {
    let mut body = String::new();
    if args.timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        body.push_str(&format!("# generated-at-unix: {secs}\n"));
    }
    body.push_str(text);
    match &args.output {
        Some(path) => write_atomic(path, body.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temp file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
