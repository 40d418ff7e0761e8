//! Survey data: interval responses keyed by group, respondent and term.
//!
//! The CSV layout is a fixed header `group,respondent,term,lo,hi` followed by
//! one interval per row. Lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};

use crate::error::{Error, Result, RowError, RowErrors};
use crate::interval::Interval;

pub const CSV_HEADER: [&str; 5] = ["group", "respondent", "term", "lo", "hi"];

/// Response scale used when none is given.
pub const DEFAULT_SCALE: (f64, f64) = (0.0, 10.0);

pub fn default_scale() -> Interval {
    Interval::new(DEFAULT_SCALE.0, DEFAULT_SCALE.1).expect("valid default scale")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub group: String,
    pub respondent: String,
    pub term: String,
    pub interval: Interval,
}

/// Intervals of one term, grouped and ordered by group name.
pub type TermGroups = BTreeMap<String, Vec<Interval>>;

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyDataset {
    scale: Interval,
    records: Vec<Record>,
}

impl SurveyDataset {
    /// Fails if any record falls outside `scale`.
    pub fn new(scale: Interval, records: Vec<Record>) -> Result<Self> {
        if let Some(r) = records.iter().find(|r| !scale.contains_interval(&r.interval)) {
            return Err(Error::InvalidArgument(format!(
                "interval {} of {}/{}/{} lies outside scale {scale}",
                r.interval, r.group, r.respondent, r.term
            )));
        }
        Ok(Self { scale, records })
    }

    pub fn scale(&self) -> Interval {
        self.scale
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    /// Term name -> group name -> intervals, all in lexical order.
    pub fn by_term(&self) -> BTreeMap<String, TermGroups> {
        let mut out: BTreeMap<String, TermGroups> = BTreeMap::new();
        for r in &self.records {
            out.entry(r.term.clone())
                .or_default()
                .entry(r.group.clone())
                .or_default()
                .push(r.interval);
        }
        out
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = WriterBuilder::new().from_writer(writer);
        let csv_err = |e: csv::Error| Error::InvalidArgument(format!("writing CSV: {e}"));
        w.write_record(CSV_HEADER).map_err(csv_err)?;
        for r in &self.records {
            w.write_record([
                r.group.as_str(),
                r.respondent.as_str(),
                r.term.as_str(),
                &r.interval.lo().to_string(),
                &r.interval.hi().to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush()
            .map_err(|e| Error::InvalidArgument(format!("writing CSV: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("CSV writer emits UTF-8"))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IngestOptions {
    pub scale: Interval,
    /// Drop invalid rows and report them as warnings instead of failing.
    pub skip_invalid: bool,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            scale: default_scale(),
            skip_invalid: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub dataset: SurveyDataset,
    /// Rows dropped under `skip_invalid`.
    pub skipped: Vec<RowError>,
}

pub fn ingest_csv(path: impl AsRef<Path>, options: &IngestOptions) -> Result<Ingested> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, options).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

pub fn read_csv<R: Read>(reader: R, options: &IngestOptions) -> Result<Ingested> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(Trim::All)
        .flexible(true)
        .from_reader(reader);

    let header = rdr.headers().map_err(csv_read_error)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::BadHeader(header.iter().collect::<Vec<_>>().join(",")));
    }

    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut row = StringRecord::new();
    loop {
        match rdr.read_record(&mut row) {
            Ok(false) => break,
            Ok(true) => {
                let line = row.position().map_or(0, |p| p.line());
                match parse_row(&row, options.scale) {
                    Ok(r) => records.push(r),
                    Err(message) => errors.push(RowError { line, message }),
                }
            }
            Err(e) => match e.kind() {
                csv::ErrorKind::Io(_) => return Err(csv_read_error(e)),
                _ => errors.push(RowError {
                    line: e.position().map_or(0, |p| p.line()),
                    message: e.to_string(),
                }),
            },
        }
    }

    if !errors.is_empty() && !options.skip_invalid {
        return Err(Error::Rows(RowErrors(errors)));
    }
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    Ok(Ingested {
        dataset: SurveyDataset {
            scale: options.scale,
            records,
        },
        skipped: errors,
    })
}

fn csv_read_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io("<input>", io),
        other => Error::BadHeader(format!("{other:?}")),
    }
}

fn parse_row(row: &StringRecord, scale: Interval) -> std::result::Result<Record, String> {
    if row.len() != CSV_HEADER.len() {
        return Err(format!("expected 5 fields, found {}", row.len()));
    }
    for (i, name) in CSV_HEADER.iter().enumerate().take(3) {
        if row[i].is_empty() {
            return Err(format!("empty `{name}`"));
        }
    }
    let number = |i: usize| -> std::result::Result<f64, String> {
        let raw = &row[i];
        raw.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("`{}` is not a finite number: {raw:?}", CSV_HEADER[i]))
    };
    let (lo, hi) = (number(3)?, number(4)?);
    if lo > hi {
        return Err(format!("lo > hi ({lo} > {hi})"));
    }
    let interval = Interval::new(lo, hi).map_err(|e| e.to_string())?;
    if !scale.contains_interval(&interval) {
        return Err(format!("interval {interval} outside scale {scale}"));
    }
    Ok(Record {
        group: row[0].to_string(),
        respondent: row[1].to_string(),
        term: row[2].to_string(),
        interval,
    })
}

/// Parses `"2,5;4,5;3,6"` into intervals.
pub fn parse_inline_intervals(spec: &str) -> Result<Vec<Interval>> {
    let bad = |part: &str| Error::InvalidArgument(format!("cannot parse interval `{part}`, expected `lo,hi`"));
    spec.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|part| {
            let (lo, hi) = part.split_once(',').ok_or_else(|| bad(part))?;
            let lo: f64 = lo.trim().parse().map_err(|_| bad(part))?;
            let hi: f64 = hi.trim().parse().map_err(|_| bad(part))?;
            Interval::new(lo, hi)
        })
        .collect::<Result<Vec<_>>>()
        .and_then(|v| if v.is_empty() { Err(Error::NoIntervals) } else { Ok(v) })
}
