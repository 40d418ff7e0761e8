//! Sampled membership functions for plotting.

use std::fmt::Write as _;

use crate::dataset::SurveyDataset;
use crate::error::Result;
use crate::model::{build_t1, build_zgt2};
use crate::report::Fixed4;
use crate::step::{self, StepFunction};

/// Fraction of the scale span used as the grid step when none is given.
pub const DEFAULT_STEP_FRACTION: f64 = 0.01;

/// Long-format CSV `term,series,x,membership` for every group set
/// (`group:<name>`) and every zSlice (`zslice:<j>`) of every term, sampled
/// over the dataset scale.
pub fn export_samples(data: &SurveyDataset, step: Option<f64>) -> Result<String> {
    let scale = data.scale();
    let step = step.unwrap_or(DEFAULT_STEP_FRACTION * scale.length());
    let grid = step::grid(scale.lo(), scale.hi(), step)?;

    let mut out = String::from("term,series,x,membership\n");
    let mut emit = |term: &str, series: &str, mf: &StepFunction| {
        for &x in &grid {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                csv_field(term),
                csv_field(series),
                tidy(x),
                Fixed4(mf.eval(x)).text()
            );
        }
    };
    for (term, groups) in data.by_term() {
        let mut sets = Vec::with_capacity(groups.len());
        for (name, intervals) in &groups {
            let set = build_t1(intervals)?;
            emit(&term, &format!("group:{name}"), set.mf());
            sets.push(set);
        }
        let gt2 = build_zgt2(&sets)?;
        for (j, z) in gt2.zslices().iter().enumerate() {
            emit(&term, &format!("zslice:{}", j + 1), z.mf());
        }
    }
    Ok(out)
}

/// Strips accumulated floating-point noise from a grid abscissa.
fn tidy(x: f64) -> f64 {
    (x * 1e9).round() / 1e9 + 0.0
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
