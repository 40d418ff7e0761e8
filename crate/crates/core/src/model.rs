//! Interval Agreement Approach models.
//!
//! A [`Type1FuzzySet`] is built from `n` crisp intervals: the membership at `x`
//! is the fraction of intervals containing `x`, which is the same as taking
//! level `k/n` on the union of all `k`-wise intersections. A [`ZGT2FuzzySet`]
//! stacks `N` nested zSlices built from `N` type-1 sets in the same way, with
//! zSlice `j` at secondary level `j/N`.

use std::num::NonZeroUsize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::step::StepFunction;

/// A type-1 fuzzy set together with the number of intervals that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Type1FuzzySet {
    mf: StepFunction,
    n_sources: Option<NonZeroUsize>,
}

impl Type1FuzzySet {
    /// Wraps a membership function that was not built from intervals.
    pub fn synthetic(mf: StepFunction) -> Self {
        Self { mf, n_sources: None }
    }

    pub fn mf(&self) -> &StepFunction {
        &self.mf
    }

    /// Number of source intervals, when interval-built.
    pub fn n_sources(&self) -> Option<usize> {
        self.n_sources.map(NonZeroUsize::get)
    }

    pub fn membership(&self, x: f64) -> f64 {
        self.mf.eval(x)
    }

    /// The same set under `x -> scale * x + shift`.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        Ok(Self {
            mf: self.mf.affine(scale, shift)?,
            n_sources: self.n_sources,
        })
    }
}

/// Builds the type-1 set whose membership at `x` is `#{i : x in intervals[i]} / n`.
pub fn build_t1(intervals: &[Interval]) -> Result<Type1FuzzySet> {
    let n = NonZeroUsize::new(intervals.len()).ok_or(Error::NoIntervals)?;
    let indicators: Vec<StepFunction> = intervals.iter().copied().map(StepFunction::indicator).collect();
    let refs: Vec<&StepFunction> = indicators.iter().collect();
    let denom = n.get() as f64;
    let mf = StepFunction::pointwise(&refs, |covered| {
        let count = covered.iter().filter(|&&v| v > 0.0).count();
        count as f64 / denom
    });
    Ok(Type1FuzzySet { mf, n_sources: Some(n) })
}

/// A zSlice-based general type-2 fuzzy set with `N` nested zSlices.
#[derive(Debug, Clone, PartialEq)]
pub struct ZGT2FuzzySet {
    zslices: Vec<Type1FuzzySet>,
}

impl ZGT2FuzzySet {
    /// Number of zSlices `N`.
    pub fn len(&self) -> usize {
        self.zslices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zslices.is_empty()
    }

    /// Secondary level `z_j = j / N` of zSlice `j` (1-based).
    pub fn z_level(&self, j: usize) -> Result<f64> {
        self.check_index(j)?;
        Ok(j as f64 / self.len() as f64)
    }

    pub fn z_levels(&self) -> Vec<f64> {
        let n = self.len() as f64;
        (1..=self.len()).map(|j| j as f64 / n).collect()
    }

    /// zSlice `j`, 1-based: `1` is the widest, `N` the innermost.
    pub fn zslice(&self, j: usize) -> Result<&Type1FuzzySet> {
        self.check_index(j)?;
        Ok(&self.zslices[j - 1])
    }

    pub fn zslices(&self) -> &[Type1FuzzySet] {
        &self.zslices
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.len() {
            return Err(Error::ZSliceOutOfRange {
                index: j,
                count: self.len(),
            });
        }
        Ok(())
    }
}

/// Builds the zSlices of the type-2 set from `N` group-level type-1 sets.
///
/// zSlice `j` at `x` is the `j`-th largest of the group memberships at `x`,
/// which equals the union over all `j`-subsets of their intersections. The
/// result does not depend on the order of `group_sets`.
pub fn build_zgt2(group_sets: &[Type1FuzzySet]) -> Result<ZGT2FuzzySet> {
    if group_sets.is_empty() {
        return Err(Error::NoGroupSets);
    }
    let refs: Vec<&StepFunction> = group_sets.iter().map(|s| &s.mf).collect();
    let mut sorted = vec![0.0; refs.len()];
    let zslices = (1..=refs.len())
        .map(|j| {
            let mf = StepFunction::pointwise(&refs, |values| {
                sorted.copy_from_slice(values);
                sorted.sort_by(|a, b| b.total_cmp(a));
                sorted[j - 1]
            });
            Type1FuzzySet::synthetic(mf)
        })
        .collect();
    Ok(ZGT2FuzzySet { zslices })
}
