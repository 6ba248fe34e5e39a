//! CSV form of experiment records.
//!
//! `rows` holds a header of column names and one line per sample. `summary`
//! holds `key,value` pairs: `experiment_id`, `seed`, then `input.*`, `summary.*`
//! and `counter.*` entries in record order. Reals use 17 significant digits.

use super::ExperimentRecord;
use crate::error::{Error, Result};

/// `x` with 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("writing to memory cannot fail");
    String::from_utf8(bytes).expect("CSV output is UTF-8")
}

pub fn rows_csv(record: &ExperimentRecord) -> String {
    let mut w = writer();
    w.write_record(&record.columns).expect("in-memory write");
    for row in &record.rows {
        w.write_record(row.iter().map(|&x| format_real(x)))
            .expect("in-memory write");
    }
    finish(w)
}

pub fn summary_csv(record: &ExperimentRecord) -> String {
    let mut w = writer();
    {
        let mut put = |k: &str, v: &str| w.write_record([k, v]).expect("in-memory write");
        put("key", "value");
        put("experiment_id", &record.experiment_id);
        put("seed", &record.seed.to_string());
        for (k, v) in &record.inputs {
            put(&format!("input.{k}"), v);
        }
        for (k, v) in &record.summary {
            put(&format!("summary.{k}"), &format_real(*v));
        }
        for (k, v) in &record.counters {
            put(&format!("counter.{k}"), &format_real(*v));
        }
    }
    finish(w)
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes())
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::parse(line, e.to_string())
}

fn real(line: usize, s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("`{s}` is not a number")))
}

/// Rebuilds a record from its two CSV files without recomputing anything.
pub fn record_from_csv(rows: &str, summary: &str) -> Result<ExperimentRecord> {
    let mut rec = ExperimentRecord::new("", 0, Vec::new(), &[]);
    let mut seen_id = false;
    for (i, entry) in reader(summary).records().enumerate() {
        let entry = entry.map_err(csv_error)?;
        let line = i + 1;
        if entry.len() != 2 {
            return Err(Error::parse(
                line,
                format!("expected 2 fields, found {}", entry.len()),
            ));
        }
        let (k, v) = (&entry[0], &entry[1]);
        if line == 1 {
            if (k, v) != ("key", "value") {
                return Err(Error::parse(line, "expected header `key,value`"));
            }
            continue;
        }
        if k == "experiment_id" {
            rec.experiment_id = v.to_string();
            seen_id = true;
        } else if k == "seed" {
            rec.seed = v
                .parse()
                .map_err(|_| Error::parse(line, format!("bad seed `{v}`")))?;
        } else if let Some(name) = k.strip_prefix("input.") {
            rec.inputs.push((name.to_string(), v.to_string()));
        } else if let Some(name) = k.strip_prefix("summary.") {
            rec.summary.push((name.to_string(), real(line, v)?));
        } else if let Some(name) = k.strip_prefix("counter.") {
            rec.counters.push((name.to_string(), real(line, v)?));
        } else {
            return Err(Error::parse(line, format!("unknown key `{k}`")));
        }
    }
    if !seen_id {
        return Err(Error::parse(0, "summary lacks `experiment_id`"));
    }
    let mut it = reader(rows).into_records();
    let header = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing header"))?
        .map_err(csv_error)?;
    rec.columns = header.iter().map(str::to_string).collect();
    for (i, entry) in it.enumerate() {
        let entry = entry.map_err(csv_error)?;
        let line = i + 2;
        if entry.len() != rec.columns.len() {
            return Err(Error::parse(
                line,
                format!(
                    "expected {} fields, found {}",
                    rec.columns.len(),
                    entry.len()
                ),
            ));
        }
        rec.rows
            .push(entry.iter().map(|s| real(line, s)).collect::<Result<_>>()?);
    }
    Ok(rec)
}
