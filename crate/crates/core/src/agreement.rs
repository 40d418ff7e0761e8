//! Agreement ratios and descriptive statistics.
//!
//! The type-1 ratio compares the lengths of consecutive alpha-cuts of an
//! interval-built set; the type-2 ratio compares the masses of consecutive
//! nested zSlices. Both weight level `k` of `n` by `k / n` and normalise by the
//! sum of weights, so the result always lies in `[0, 1]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::{Type1FuzzySet, ZGT2FuzzySet};
use crate::step::{self, MERGE_TOLERANCE};

/// How lengths and masses are measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// Exact lengths and integrals of the step functions.
    Exact,
    /// Sampled on `scale` every `step` units: cut lengths by scanning for runs
    /// of samples above the level, masses by summing samples.
    Discretized { scale: Interval, step: f64 },
}

impl Mode {
    pub fn discretized(scale: Interval, step: f64) -> Result<Self> {
        // Validates step and range up front.
        step::grid(scale.lo(), scale.hi(), step)?;
        Ok(Mode::Discretized { scale, step })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Discretized { .. } => "discretized",
        }
    }

    pub fn step(&self) -> Option<f64> {
        match self {
            Mode::Exact => None,
            Mode::Discretized { step, .. } => Some(*step),
        }
    }

    fn grid(&self) -> Result<Option<Vec<f64>>> {
        match self {
            Mode::Exact => Ok(None),
            Mode::Discretized { scale, step } => step::grid(scale.lo(), scale.hi(), *step).map(Some),
        }
    }
}

/// Similarity between one agreement level and the one below it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelSimilarity {
    pub level: usize,
    pub weight: f64,
    pub similarity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SetStats {
    /// `None` for the zero set.
    pub support: Option<Interval>,
    /// `None` when the set carries no mass.
    pub centroid: Option<f64>,
    pub height: f64,
}

impl SetStats {
    pub fn of(set: &Type1FuzzySet) -> Self {
        Self {
            support: support(set).ok(),
            centroid: centroid(set).ok(),
            height: height(set),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub gamma: f64,
    pub per_level: Vec<LevelSimilarity>,
    /// Statistics of the set itself, or of the base zSlice for type-2 sets.
    pub stats: SetStats,
    /// Per-zSlice statistics, base first. Empty for type-1 reports.
    pub zslice_stats: Vec<SetStats>,
    /// Only one source: gamma is 1 by convention.
    pub degenerate: bool,
}

fn weighted_mean(levels: &[LevelSimilarity]) -> f64 {
    let (num, den) = levels
        .iter()
        .fold((0.0, 0.0), |(n, d), l| (n + l.weight * l.similarity, d + l.weight));
    num / den
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        (num / den).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

/// Agreement ratio of an interval-built type-1 set.
///
/// Level `k` (for `k = 2..n`) contributes `(k/n) * |X_k| / |X_{k-1}|`, where
/// `X_k` is the cut at `k/n`; a level whose lower cut has zero length
/// contributes 0. A set built from one interval has gamma 1.
pub fn gamma_t1(set: &Type1FuzzySet, mode: Mode) -> Result<AgreementReport> {
    let n = set.n_sources().ok_or(Error::UnknownSourceCount)?;
    let stats = SetStats::of(set);
    if n == 1 {
        return Ok(AgreementReport {
            gamma: 1.0,
            per_level: Vec::new(),
            stats,
            zslice_stats: Vec::new(),
            degenerate: true,
        });
    }
    let grid = mode.grid()?;
    let lengths = (1..=n)
        .map(|k| {
            let alpha = k as f64 / n as f64;
            match &grid {
                None => set.mf().alpha_cut_length(alpha),
                Some(g) => set.mf().discretized_cut_length(alpha, g),
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let per_level: Vec<LevelSimilarity> = (2..=n)
        .map(|k| LevelSimilarity {
            level: k,
            weight: k as f64 / n as f64,
            similarity: ratio(lengths[k - 1], lengths[k - 2]),
        })
        .collect();
    Ok(AgreementReport {
        gamma: weighted_mean(&per_level),
        per_level,
        stats,
        zslice_stats: Vec::new(),
        degenerate: false,
    })
}

/// Jaccard similarity of `inner ⊆ outer`, which reduces to `|inner| / |outer|`.
///
/// Fails if `inner` exceeds `outer` anywhere by more than the merge tolerance.
/// Returns 0 when `outer` has no mass.
pub fn jaccard_nested(inner: &Type1FuzzySet, outer: &Type1FuzzySet, mode: Mode) -> Result<f64> {
    if let Some((excess, at)) = inner.mf().max_excess_over(outer.mf()) {
        if excess > MERGE_TOLERANCE {
            return Err(Error::NestingViolation { excess, at });
        }
    }
    Ok(match mode.grid()? {
        None => ratio(inner.mf().integral(), outer.mf().integral()),
        Some(g) => ratio(inner.mf().discretized_sum(&g), outer.mf().discretized_sum(&g)),
    })
}

/// Inter-group agreement ratio of a zSlice type-2 set.
///
/// zSlice `j` (for `j = 2..N`) contributes `(j/N) * S(Z_j, Z_{j-1})`. A set
/// with a single zSlice has gamma 1.
pub fn gamma_gt2(set: &ZGT2FuzzySet, mode: Mode) -> Result<AgreementReport> {
    let n = set.len();
    let zslice_stats: Vec<SetStats> = set.zslices().iter().map(SetStats::of).collect();
    let stats = zslice_stats.first().copied().ok_or(Error::NoGroupSets)?;
    if n == 1 {
        return Ok(AgreementReport {
            gamma: 1.0,
            per_level: Vec::new(),
            stats,
            zslice_stats,
            degenerate: true,
        });
    }
    let slices = set.zslices();
    let per_level = (2..=n)
        .map(|j| {
            Ok(LevelSimilarity {
                level: j,
                weight: j as f64 / n as f64,
                similarity: jaccard_nested(&slices[j - 1], &slices[j - 2], mode)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AgreementReport {
        gamma: weighted_mean(&per_level),
        per_level,
        stats,
        zslice_stats,
        degenerate: false,
    })
}

/// Smallest closed interval containing all points of positive membership.
pub fn support(set: &Type1FuzzySet) -> Result<Interval> {
    set.mf().support().ok_or(Error::EmptySet("support"))
}

/// Membership-weighted mean abscissa, `∫ x μ(x) dx / ∫ μ(x) dx`.
pub fn centroid(set: &Type1FuzzySet) -> Result<f64> {
    let mass = set.mf().integral();
    if mass > 0.0 {
        Ok(set.mf().first_moment() / mass)
    } else {
        Err(Error::EmptySet("centroid"))
    }
}

/// Largest attained membership, including isolated points.
pub fn height(set: &Type1FuzzySet) -> f64 {
    set.mf().height()
}
