//! Seeded synthetic survey data with controllable inter-group overlap.
//!
//! The scale `[0, 10]` is split into one band of width `D = 10 / G` per group.
//! Each respondent's interval is drawn inside `[0, 0.9 D]`. Group `g` is shifted
//! by `(1 - θ) g D` and its intervals are blended between a shared draw (weight
//! `θ`) and a group-specific draw (weight `1 - θ`). With `θ = 1` every group
//! answers identically; with `θ = 0` the groups occupy disjoint bands.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{default_scale, Record, SurveyDataset};
use crate::error::{Error, Result};
use crate::interval::Interval;

pub const SYNTHETIC_TERM: &str = "synthetic";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub groups: usize,
    pub respondents: usize,
    /// Overlap in `[0, 1]`: 0 gives disjoint groups, 1 identical groups.
    pub theta: f64,
    pub seed: u64,
}

/// Local interval inside a band of width `band`, as `(lo, hi)`.
fn draw(rng: &mut ChaCha8Rng, band: f64) -> (f64, f64) {
    let lo = 0.6 * band * rng.random::<f64>();
    let width = band * (0.1 + 0.2 * rng.random::<f64>());
    (lo, lo + width)
}

pub fn generate_synthetic(spec: &SynthSpec) -> Result<SurveyDataset> {
    if spec.groups == 0 || spec.respondents == 0 {
        return Err(Error::InvalidSynthetic(format!(
            "groups and respondents must be at least 1, got {} and {}",
            spec.groups, spec.respondents
        )));
    }
    if !(0.0..=1.0).contains(&spec.theta) {
        return Err(Error::InvalidSynthetic(format!(
            "theta must lie in [0, 1], got {}",
            spec.theta
        )));
    }
    let scale = default_scale();
    let band = scale.length() / spec.groups as f64;
    let theta = spec.theta;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let shared: Vec<(f64, f64)> = (0..spec.respondents).map(|_| draw(&mut rng, band)).collect();
    let mut records = Vec::with_capacity(spec.groups * spec.respondents);
    for g in 0..spec.groups {
        let offset = scale.lo() + (1.0 - theta) * g as f64 * band;
        for (r, &(shared_lo, shared_hi)) in shared.iter().enumerate() {
            let (own_lo, own_hi) = draw(&mut rng, band);
            let lo = offset + theta * shared_lo + (1.0 - theta) * own_lo;
            let hi = offset + theta * shared_hi + (1.0 - theta) * own_hi;
            records.push(Record {
                group: format!("g{}", g + 1),
                respondent: format!("r{}", r + 1),
                term: SYNTHETIC_TERM.to_string(),
                interval: Interval::new(lo, hi.min(scale.hi()))?,
            });
        }
    }
    SurveyDataset::new(scale, records)
}
