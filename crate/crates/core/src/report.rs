//! Per-term agreement reports.
//!
//! For each term, every group's intervals become a type-1 set, the group sets
//! become the zSlices of a type-2 set, and both agreement ratios are reported
//! along with support, centroid and height. Output is deterministic: terms and
//! groups are ordered by name and every real number is printed with four
//! decimals.

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::agreement::{self, LevelSimilarity, Mode, SetStats};
use crate::dataset::{SurveyDataset, TermGroups};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::{build_t1, build_zgt2};

pub const SINGLE_GROUP_FLAG: &str = "degenerate: single group";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub scale: Interval,
    /// Sampling step for discretized measurement; `None` measures exactly.
    pub discretize: Option<f64>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn exact(scale: Interval) -> Self {
        Self {
            scale,
            discretize: None,
            format: OutputFormat::Json,
        }
    }

    pub fn mode(&self) -> Result<Mode> {
        match self.discretize {
            None => Ok(Mode::Exact),
            Some(step) => Mode::discretized(self.scale, step),
        }
    }
}

/// A real number printed with four decimals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed4(pub f64);

impl Fixed4 {
    pub fn text(self) -> String {
        // Adding 0.0 turns -0.0 into 0.0.
        format!("{:.4}", self.0 + 0.0)
    }
}

impl Serialize for Fixed4 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

fn fixed_pair(i: Interval) -> [Fixed4; 2] {
    [Fixed4(i.lo()), Fixed4(i.hi())]
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub gamma_t1: Fixed4,
    pub n_intervals: usize,
    pub degenerate: bool,
    pub support: Option<[Fixed4; 2]>,
    pub centroid: Option<Fixed4>,
    pub height: Fixed4,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub weight: Fixed4,
    pub similarity: Fixed4,
}

impl From<&LevelSimilarity> for LevelReport {
    fn from(l: &LevelSimilarity) -> Self {
        Self {
            level: l.level,
            weight: Fixed4(l.weight),
            similarity: Fixed4(l.similarity),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZSliceReport {
    pub zslice: usize,
    pub z: Fixed4,
    pub support: Option<[Fixed4; 2]>,
    pub centroid: Option<Fixed4>,
    pub height: Fixed4,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermReport {
    pub term: String,
    pub groups: Vec<GroupReport>,
    pub gamma_intergroup: Fixed4,
    pub flags: Vec<String>,
    pub per_level: Vec<LevelReport>,
    pub support: Option<[Fixed4; 2]>,
    pub centroid: Option<Fixed4>,
    pub height: Fixed4,
    pub zslices: Vec<ZSliceReport>,
    pub mode: &'static str,
    pub step: Option<Fixed4>,
}

fn term_report(term: &str, groups: &TermGroups, mode: Mode) -> Result<TermReport> {
    let mut sets = Vec::with_capacity(groups.len());
    let mut group_reports = Vec::with_capacity(groups.len());
    for (name, intervals) in groups {
        let set = build_t1(intervals)?;
        let r = agreement::gamma_t1(&set, mode)?;
        group_reports.push(GroupReport {
            group: name.clone(),
            gamma_t1: Fixed4(r.gamma),
            n_intervals: intervals.len(),
            degenerate: r.degenerate,
            support: r.stats.support.map(fixed_pair),
            centroid: r.stats.centroid.map(Fixed4),
            height: Fixed4(r.stats.height),
        });
        sets.push(set);
    }
    let gt2 = build_zgt2(&sets)?;
    let r = agreement::gamma_gt2(&gt2, mode)?;
    let flags = if r.degenerate {
        vec![SINGLE_GROUP_FLAG.to_string()]
    } else {
        Vec::new()
    };
    let zslices = r
        .zslice_stats
        .iter()
        .zip(gt2.z_levels())
        .enumerate()
        .map(|(i, (s, z)): (usize, (&SetStats, f64))| ZSliceReport {
            zslice: i + 1,
            z: Fixed4(z),
            support: s.support.map(fixed_pair),
            centroid: s.centroid.map(Fixed4),
            height: Fixed4(s.height),
        })
        .collect();
    Ok(TermReport {
        term: term.to_string(),
        groups: group_reports,
        gamma_intergroup: Fixed4(r.gamma),
        flags,
        per_level: r.per_level.iter().map(LevelReport::from).collect(),
        support: r.stats.support.map(fixed_pair),
        centroid: r.stats.centroid.map(Fixed4),
        height: Fixed4(r.stats.height),
        zslices,
        mode: mode.name(),
        step: mode.step().map(Fixed4),
    })
}

/// Builds one report per term, ordered by term name. Terms are evaluated in
/// parallel on the current rayon pool.
pub fn compute_reports(data: &SurveyDataset, config: &RunConfig) -> Result<Vec<TermReport>> {
    let mode = config.mode()?;
    let terms: Vec<(String, TermGroups)> = data.by_term().into_iter().collect();
    terms
        .par_iter()
        .map(|(term, groups)| {
            term_report(term, groups, mode).map_err(|e| Error::Term {
                term: term.clone(),
                source: Box::new(e),
            })
        })
        .collect()
}

/// Serialized report in the configured format.
pub fn run_report(data: &SurveyDataset, config: &RunConfig) -> Result<String> {
    let reports = compute_reports(data, config)?;
    Ok(match config.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&reports).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => reports_to_csv(&reports),
    })
}

fn opt_text(v: Option<Fixed4>) -> String {
    v.map(Fixed4::text).unwrap_or_default()
}

fn support_text(s: Option<[Fixed4; 2]>) -> (String, String) {
    s.map(|[lo, hi]| (lo.text(), hi.text())).unwrap_or_default()
}

/// One row per group (scope `group:<name>`) and one inter-group row per term.
fn reports_to_csv(reports: &[TermReport]) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut write = |fields: [&str; 9]| w.write_record(fields).expect("in-memory write");
    write([
        "term",
        "scope",
        "gamma",
        "n_intervals",
        "support_lo",
        "support_hi",
        "centroid",
        "height",
        "mode",
    ]);
    for t in reports {
        for g in &t.groups {
            let (lo, hi) = support_text(g.support);
            write([
                &t.term,
                &format!("group:{}", g.group),
                &g.gamma_t1.text(),
                &g.n_intervals.to_string(),
                &lo,
                &hi,
                &opt_text(g.centroid),
                &g.height.text(),
                t.mode,
            ]);
        }
        let (lo, hi) = support_text(t.support);
        let n: usize = t.groups.iter().map(|g| g.n_intervals).sum();
        write([
            &t.term,
            "intergroup",
            &t.gamma_intergroup.text(),
            &n.to_string(),
            &lo,
            &hi,
            &opt_text(t.centroid),
            &t.height.text(),
            t.mode,
        ]);
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8")
}
