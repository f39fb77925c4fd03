//! CSV ingestion of functional samples and report writers.
//!
//! Two input layouts are understood. *Wide*: header `id,t1,..,tk`, one row
//! per scalar curve. *Long*: header `id,t,x1,..,xd`, one row per curve and
//! time point. Missing values are never imputed.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use crate::band::{Curve, FunctionalSample, TimeGrid};
use crate::depth::{DepthEntry, DepthReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Schema {
    Wide,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    #[value(name = "jsonl")]
    JsonLines,
}

pub fn load_sample(path: impl AsRef<Path>, schema: Schema) -> Result<FunctionalSample> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::data(format!("cannot open {}: {e}", path.display())))?;
    read_sample(BufReader::new(file), schema)
}

pub fn read_sample<R: Read>(reader: R, schema: Schema) -> Result<FunctionalSample> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header.first().map(String::as_str) != Some("id") {
        return Err(Error::data("first header column must be `id`"));
    }
    match schema {
        Schema::Wide => read_wide(rdr, header),
        Schema::Long => read_long(rdr, header),
    }
}

fn parse_value(cell: &str, curve: &str, time: &str, line: u64, column: usize) -> Result<f64> {
    if cell.is_empty() {
        return Err(Error::data(format!(
            "missing value for curve {curve:?} at time {time:?} (line {line}, column {column})"
        )));
    }
    let v: f64 = cell.parse().map_err(|_| {
        Error::data(format!(
            "non-numeric value {cell:?} for curve {curve:?} at time {time:?} (line {line}, column {column})"
        ))
    })?;
    if !v.is_finite() {
        return Err(Error::data(format!(
            "non-finite value {cell:?} for curve {curve:?} at time {time:?} (line {line}, column {column})"
        )));
    }
    Ok(v)
}

fn parse_time(label: &str) -> Result<f64> {
    label
        .parse::<f64>()
        .ok()
        .filter(|t| t.is_finite())
        .ok_or_else(|| Error::data(format!("time label {label:?} is not a real number")))
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn read_wide<R: Read>(mut rdr: csv::Reader<R>, header: Vec<String>) -> Result<FunctionalSample> {
    let labels: Vec<String> = header[1..].to_vec();
    if labels.is_empty() {
        return Err(Error::data("wide header has no time columns"));
    }
    let coords = labels.iter().map(|l| parse_time(l)).collect::<Result<Vec<f64>>>()?;
    if coords.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::data("time labels must be strictly increasing"));
    }
    let grid = TimeGrid::new(labels.clone(), Some(coords)).map_err(|e| Error::data(e.to_string()))?;

    let mut seen = HashSet::new();
    let mut curves = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        if record.len() != header.len() {
            return Err(Error::data(format!(
                "line {line} has {} fields, header has {}",
                record.len(),
                header.len()
            )));
        }
        let id = record[0].to_owned();
        if id.is_empty() {
            return Err(Error::data(format!("missing id on line {line}")));
        }
        if !seen.insert(id.clone()) {
            return Err(Error::data(format!("duplicate curve {id:?} on line {line}")));
        }
        let values = (0..labels.len())
            .map(|c| parse_value(&record[c + 1], &id, &labels[c], line, c + 2))
            .collect::<Result<Vec<f64>>>()?;
        curves.push(Curve::scalar(id, values)?);
    }
    if curves.is_empty() {
        return Err(Error::data("file contains no curves"));
    }
    FunctionalSample::new(grid, curves)
}

fn read_long<R: Read>(mut rdr: csv::Reader<R>, header: Vec<String>) -> Result<FunctionalSample> {
    if header.len() < 3 || header[1] != "t" {
        return Err(Error::data("long header must be `id,t,x1,..,xd`"));
    }
    let d = header.len() - 2;

    // (time label, coordinate) keyed by coordinate bits is fragile; keep the
    // first label seen for each distinct numeric time instead.
    let mut times: Vec<(f64, String)> = Vec::new();
    let mut order: Vec<String> = Vec::new();
    let mut rows: HashMap<String, BTreeMap<usize, Vec<f64>>> = HashMap::new();
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        if record.len() != header.len() {
            return Err(Error::data(format!(
                "line {line} has {} fields, header has {}",
                record.len(),
                header.len()
            )));
        }
        let id = record[0].to_owned();
        if id.is_empty() {
            return Err(Error::data(format!("missing id on line {line}")));
        }
        let label = &record[1];
        if label.is_empty() {
            return Err(Error::data(format!("missing time for curve {id:?} (line {line}, column 2)")));
        }
        let t = parse_time(label)?;
        let slot = match times.iter().position(|(x, _)| *x == t) {
            Some(p) => p,
            None => {
                times.push((t, label.to_owned()));
                times.len() - 1
            }
        };
        let values = (0..d)
            .map(|q| parse_value(&record[q + 2], &id, label, line, q + 3))
            .collect::<Result<Vec<f64>>>()?;
        let entry = rows.entry(id.clone()).or_insert_with(|| {
            order.push(id.clone());
            BTreeMap::new()
        });
        if entry.insert(slot, values).is_some() {
            return Err(Error::data(format!("duplicate row for curve {id:?} at time {label:?} (line {line})")));
        }
    }
    if order.is_empty() {
        return Err(Error::data("file contains no curves"));
    }

    let mut sorted: Vec<usize> = (0..times.len()).collect();
    sorted.sort_by(|&a, &b| times[a].0.total_cmp(&times[b].0));
    let grid = TimeGrid::new(
        sorted.iter().map(|&s| times[s].1.clone()).collect(),
        Some(sorted.iter().map(|&s| times[s].0).collect()),
    )
    .map_err(|e| Error::data(e.to_string()))?;

    let mut curves = Vec::with_capacity(order.len());
    for id in order {
        let mut by_slot = rows.remove(&id).expect("recorded id");
        let mut values = Vec::with_capacity(sorted.len() * d);
        for &s in &sorted {
            let row = by_slot
                .remove(&s)
                .ok_or_else(|| Error::data(format!("missing value for curve {id:?} at time {:?}", times[s].1)))?;
            values.extend(row);
        }
        curves.push(Curve::new(id, d, values)?);
    }
    FunctionalSample::new(grid, curves)
}

/// Writes a sample in the given layout. Values use the shortest decimal
/// that round-trips, so reloading is lossless.
pub fn write_sample(sample: &FunctionalSample, path: impl AsRef<Path>, schema: Schema) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_sample_to(sample, &mut w, schema)?;
    w.flush()?;
    Ok(())
}

pub fn write_sample_to<W: Write>(sample: &FunctionalSample, w: W, schema: Schema) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let labels = sample.grid().labels();
    match schema {
        Schema::Wide => {
            if sample.dim() != 1 {
                return Err(Error::config("the wide layout holds scalar curves only; use long"));
            }
            out.write_record(std::iter::once("id").chain(labels.iter().map(String::as_str)))?;
            for c in sample.curves() {
                let mut rec = vec![c.id.clone()];
                rec.extend(c.values().iter().map(|v| v.to_string()));
                out.write_record(&rec)?;
            }
        }
        Schema::Long => {
            let mut head = vec!["id".to_owned(), "t".to_owned()];
            head.extend((1..=sample.dim()).map(|q| format!("x{q}")));
            out.write_record(&head)?;
            for c in sample.curves() {
                for (label, row) in labels.iter().zip(c.rows()) {
                    let mut rec = vec![c.id.clone(), label.clone()];
                    rec.extend(row.iter().map(|v| v.to_string()));
                    out.write_record(&rec)?;
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// `x` rounded to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn write_report(
    report: &DepthReport,
    path: impl AsRef<Path>,
    format: Format,
    flagged: Option<&[String]>,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_report_to(report, &mut w, format, flagged)?;
    w.flush()?;
    Ok(())
}

/// Serializes a report. CSV gets columns `id,depth,rank` (plus `flagged`
/// when a flag list is given); JSON Lines starts with a config object,
/// then one object per curve, then the flag list if any.
pub fn write_report_to<W: Write>(
    report: &DepthReport,
    mut w: W,
    format: Format,
    flagged: Option<&[String]>,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut w);
            let mut head = vec!["id", "depth", "rank"];
            if flagged.is_some() {
                head.push("flagged");
            }
            out.write_record(&head)?;
            for e in &report.entries {
                let mut rec = vec![e.id.clone(), round_sig12(e.depth).to_string(), e.rank.to_string()];
                if let Some(f) = flagged {
                    rec.push(f.contains(&e.id).to_string());
                }
                out.write_record(&rec)?;
            }
            out.flush()?;
        }
        Format::JsonLines => {
            let head = json!({ "config": report.config, "subset_count": report.subset_count });
            writeln!(w, "{head}")?;
            for e in &report.entries {
                let line = json!({ "id": e.id, "depth": round_sig12(e.depth), "rank": e.rank });
                writeln!(w, "{line}")?;
            }
            if let Some(f) = flagged {
                writeln!(w, "{}", json!({ "flagged": f }))?;
            }
        }
    }
    Ok(())
}

/// Reads back the per-curve entries of a report.
pub fn read_report(path: impl AsRef<Path>, format: Format) -> Result<Vec<DepthEntry>> {
    let file = File::open(path)?;
    let mut entries = Vec::new();
    match format {
        Format::Csv => {
            let mut rdr = csv::Reader::from_reader(file);
            for record in rdr.records() {
                let record = record?;
                let depth = record[1].parse().map_err(|_| Error::data(format!("bad depth {:?}", &record[1])))?;
                let rank = record[2].parse().map_err(|_| Error::data(format!("bad rank {:?}", &record[2])))?;
                entries.push(DepthEntry { id: record[0].to_owned(), depth, rank, hits: 0 });
            }
        }
        Format::JsonLines => {
            for line in BufReader::new(file).lines() {
                let v: serde_json::Value = serde_json::from_str(&line?).map_err(|e| Error::data(e.to_string()))?;
                if v.get("id").is_some() {
                    entries.push(serde_json::from_value(v).map_err(|e| Error::data(e.to_string()))?);
                }
            }
        }
    }
    Ok(entries)
}

/// Reads explicit check tuples: one tuple per line, 1-based time indices
/// separated by commas or whitespace. Blank lines and `#` comments are
/// skipped. Returns 0-based tuples.
pub fn load_tuples(path: impl AsRef<Path>) -> Result<Vec<Vec<usize>>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::data(format!("cannot open {}: {e}", path.display())))?;
    let mut tuples = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tuple = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| match s.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::data(format!("line {}: {s:?} is not a 1-based time index", n + 1))),
            })
            .collect::<Result<Vec<usize>>>()?;
        tuples.push(tuple);
    }
    if tuples.is_empty() {
        return Err(Error::data(format!("{} lists no tuples", path.display())));
    }
    Ok(tuples)
}
