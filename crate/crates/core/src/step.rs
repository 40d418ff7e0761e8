//! Exact piecewise-constant membership functions.
//!
//! A [`StepFunction`] is zero outside `[x_0, x_m]`, takes the value `v_k` on each
//! open gap `(x_k, x_{k+1})` and the value `p_k` exactly at each breakpoint `x_k`.
//! Point values are kept separately because intersections of closed intervals
//! can collapse to a single point, e.g. `[1,4] ∩ [4,6] = {4}`.
//!
//! Every constructor and operation returns the canonical form: a breakpoint is
//! kept only when the function changes across it or its point value differs
//! from both neighbouring gap values. Breakpoints closer than
//! [`MERGE_TOLERANCE`] are treated as the same abscissa.

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Breakpoints closer than this (in scale units) are merged.
pub const MERGE_TOLERANCE: f64 = 1e-9;

/// Slack used when comparing a membership value against an alpha level.
const LEVEL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    segments: Vec<f64>,
    points: Vec<f64>,
}

fn check_value(v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::MalformedStepFunction(format!(
            "membership value {v} outside [0, 1]"
        )))
    }
}

impl StepFunction {
    /// The identically-zero function.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `value` on the closed interval, zero elsewhere.
    pub fn constant_on(interval: Interval, value: f64) -> Result<Self> {
        check_value(value)?;
        if value == 0.0 {
            return Ok(Self::zero());
        }
        if interval.length() < MERGE_TOLERANCE {
            return Ok(Self {
                breakpoints: vec![interval.lo()],
                segments: vec![],
                points: vec![value],
            });
        }
        Ok(Self {
            breakpoints: vec![interval.lo(), interval.hi()],
            segments: vec![value],
            points: vec![value, value],
        })
    }

    pub fn indicator(interval: Interval) -> Self {
        Self::constant_on(interval, 1.0).expect("1 is a valid membership value")
    }

    /// Builds a function from raw parts and canonicalizes it.
    ///
    /// `segments[k]` holds on `(breakpoints[k], breakpoints[k + 1])` and
    /// `points[k]` exactly at `breakpoints[k]`.
    pub fn new(breakpoints: Vec<f64>, segments: Vec<f64>, points: Vec<f64>) -> Result<Self> {
        let m = breakpoints.len();
        if points.len() != m || segments.len() != m.saturating_sub(1) {
            return Err(Error::MalformedStepFunction(format!(
                "{m} breakpoints need {} segment values and {m} point values, got {} and {}",
                m.saturating_sub(1),
                segments.len(),
                points.len()
            )));
        }
        if let Some(x) = breakpoints.iter().find(|x| !x.is_finite()) {
            return Err(Error::MalformedStepFunction(format!("non-finite breakpoint {x}")));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[1] - w[0] < MERGE_TOLERANCE) {
            return Err(Error::MalformedStepFunction(format!(
                "breakpoints must increase by at least {MERGE_TOLERANCE}: {} then {}",
                w[0], w[1]
            )));
        }
        for &v in segments.iter().chain(points.iter()) {
            check_value(v)?;
        }
        Ok(Self::canonical(breakpoints, segments, points))
    }

    /// Drops removable breakpoints. Inputs must already be well-formed.
    fn canonical(breakpoints: Vec<f64>, segments: Vec<f64>, points: Vec<f64>) -> Self {
        let m = breakpoints.len();
        let mut out = Self::zero();
        for k in 0..m {
            let left = if k == 0 { 0.0 } else { segments[k - 1] };
            let right = if k + 1 == m { 0.0 } else { segments[k] };
            if left == right && right == points[k] {
                continue;
            }
            if !out.breakpoints.is_empty() {
                out.segments.push(left);
            }
            out.breakpoints.push(breakpoints[k]);
            out.points.push(points[k]);
        }
        out
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Values on the open gaps between consecutive breakpoints.
    pub fn segment_values(&self) -> &[f64] {
        &self.segments
    }

    /// Values exactly at each breakpoint.
    pub fn point_values(&self) -> &[f64] {
        &self.points
    }

    pub fn is_zero(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// Membership at `x`. Abscissae within [`MERGE_TOLERANCE`] of a breakpoint
    /// take that breakpoint's point value.
    pub fn eval(&self, x: f64) -> f64 {
        let bp = &self.breakpoints;
        let j = bp.partition_point(|&b| b < x);
        if j < bp.len() && bp[j] - x < MERGE_TOLERANCE {
            return self.points[j];
        }
        if j > 0 && x - bp[j - 1] < MERGE_TOLERANCE {
            return self.points[j - 1];
        }
        if j == 0 || j == bp.len() {
            0.0
        } else {
            self.segments[j - 1]
        }
    }

    /// Applies `op` to the values of all `fns` at every abscissa.
    ///
    /// `op` receives one value per input function, in input order. It must map
    /// all-zero inputs to zero and return values in `[0, 1]`.
    pub fn pointwise<F>(fns: &[&StepFunction], mut op: F) -> StepFunction
    where
        F: FnMut(&[f64]) -> f64,
    {
        let grid = merged_grid(fns);
        if grid.is_empty() {
            return Self::zero();
        }
        let lifted: Vec<Lifted> = fns.iter().map(|f| f.lift(&grid)).collect();
        let mut scratch = vec![0.0; fns.len()];
        let mut eval = |pick: &dyn Fn(&Lifted) -> f64| {
            for (s, l) in scratch.iter_mut().zip(&lifted) {
                *s = pick(l);
            }
            op(&scratch)
        };
        let points: Vec<f64> = (0..grid.len()).map(|g| eval(&|l| l.points[g])).collect();
        let segments: Vec<f64> = (0..grid.len() - 1).map(|g| eval(&|l| l.segments[g])).collect();
        Self::canonical(grid, segments, points)
    }

    pub fn pointwise_min(&self, other: &StepFunction) -> StepFunction {
        Self::pointwise(&[self, other], |v| v[0].min(v[1]))
    }

    pub fn pointwise_max(&self, other: &StepFunction) -> StepFunction {
        Self::pointwise(&[self, other], |v| v[0].max(v[1]))
    }

    /// Maximal closed intervals covering `{x : f(x) >= alpha}`, in order.
    ///
    /// Isolated points show up as degenerate intervals. When a single point is
    /// missing from the cut, the two sides are reported as separate intervals
    /// sharing that endpoint.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Vec<Interval>> {
        check_alpha(alpha)?;
        let inside = |v: f64| v + LEVEL_EPS >= alpha;
        let bp = &self.breakpoints;
        let mut cuts = Vec::new();
        let mut run: Option<(f64, f64)> = None;
        let mut close = |run: &mut Option<(f64, f64)>| {
            if let Some((lo, hi)) = run.take() {
                cuts.push(Interval::new(lo, hi).expect("breakpoints are ordered"));
            }
        };
        for k in 0..bp.len() {
            if inside(self.points[k]) {
                let start = run.map_or(bp[k], |r| r.0);
                run = Some((start, bp[k]));
            } else {
                close(&mut run);
            }
            if k + 1 < bp.len() {
                if inside(self.segments[k]) {
                    let start = run.map_or(bp[k], |r| r.0);
                    run = Some((start, bp[k + 1]));
                } else {
                    close(&mut run);
                }
            }
        }
        close(&mut run);
        Ok(cuts)
    }

    /// Total length of the alpha-cut; isolated points contribute nothing.
    pub fn alpha_cut_length(&self, alpha: f64) -> Result<f64> {
        Ok(self.alpha_cut(alpha)?.iter().fold(0.0, |acc, iv| acc + iv.length()))
    }

    /// Cut length measured on a sampled grid, scanning for runs of samples at or
    /// above `alpha` and summing `last - first` over each run.
    pub fn discretized_cut_length(&self, alpha: f64, grid: &[f64]) -> Result<f64> {
        check_alpha(alpha)?;
        let mut length = 0.0;
        let mut start: Option<usize> = None;
        for (i, &x) in grid.iter().enumerate() {
            if self.eval(x) + LEVEL_EPS < alpha {
                if let Some(l) = start.take() {
                    length += grid[i - 1] - grid[l];
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(l) = start {
            length += grid[grid.len() - 1] - grid[l];
        }
        Ok(length)
    }

    /// Lebesgue integral; point values carry no mass.
    pub fn integral(&self) -> f64 {
        self.breakpoints
            .windows(2)
            .zip(&self.segments)
            .map(|(w, v)| v * (w[1] - w[0]))
            .sum()
    }

    /// `∫ x f(x) dx`.
    pub fn first_moment(&self) -> f64 {
        self.breakpoints
            .windows(2)
            .zip(&self.segments)
            .map(|(w, v)| v * (w[1] - w[0]) * 0.5 * (w[0] + w[1]))
            .sum()
    }

    /// Largest attained value, counting isolated points.
    pub fn height(&self) -> f64 {
        self.points.iter().chain(&self.segments).fold(0.0, |acc, &v| acc.max(v))
    }

    /// Smallest closed interval containing every `x` with `f(x) > 0`.
    pub fn support(&self) -> Option<Interval> {
        let bp = &self.breakpoints;
        let m = bp.len();
        let first = (0..m).find(|&k| self.points[k] > 0.0 || (k + 1 < m && self.segments[k] > 0.0))?;
        let last = (0..m)
            .rev()
            .find(|&k| self.points[k] > 0.0 || (k > 0 && self.segments[k - 1] > 0.0))?;
        Some(Interval::new(bp[first], bp[last]).expect("ordered breakpoints"))
    }

    /// Sum of `f(x)` over the grid abscissae.
    pub fn discretized_sum(&self, grid: &[f64]) -> f64 {
        grid.iter().map(|&x| self.eval(x)).sum()
    }

    /// Samples `f` at `x_min, x_min + step, ...`, always ending exactly at `x_max`.
    pub fn sample(&self, x_min: f64, x_max: f64, step: f64) -> Result<Vec<(f64, f64)>> {
        Ok(grid(x_min, x_max, step)?
            .into_iter()
            .map(|x| (x, self.eval(x)))
            .collect())
    }

    /// Composition with `x -> (x - shift) / scale`, i.e. the graph moved by the
    /// affine map `x -> scale * x + shift`.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<StepFunction> {
        if !scale.is_finite() || scale <= 0.0 || !shift.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "affine map needs finite scale > 0 and finite shift, got {scale}, {shift}"
            )));
        }
        Self::new(
            self.breakpoints.iter().map(|x| scale * x + shift).collect(),
            self.segments.clone(),
            self.points.clone(),
        )
    }

    /// Largest `self(x) - other(x)` and where it occurs, or `None` when
    /// `self <= other` everywhere.
    pub fn max_excess_over(&self, other: &StepFunction) -> Option<(f64, f64)> {
        let grid = merged_grid(&[self, other]);
        let (a, b) = (self.lift(&grid), other.lift(&grid));
        let mut worst: Option<(f64, f64)> = None;
        let mut consider = |excess: f64, at: f64| {
            if excess > 0.0 && worst.is_none_or(|w| excess > w.0) {
                worst = Some((excess, at));
            }
        };
        for g in 0..grid.len() {
            consider(a.points[g] - b.points[g], grid[g]);
            if g + 1 < grid.len() {
                consider(a.segments[g] - b.segments[g], 0.5 * (grid[g] + grid[g + 1]));
            }
        }
        worst
    }

    /// Same shape up to `tol` in both abscissae and values.
    pub fn approx_eq(&self, other: &StepFunction, tol: f64) -> bool {
        let close = |a: &[f64], b: &[f64]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol);
        close(&self.breakpoints, &other.breakpoints)
            && close(&self.segments, &other.segments)
            && close(&self.points, &other.points)
    }

    fn lift(&self, grid: &[f64]) -> Lifted {
        let mut lifted = Lifted {
            points: vec![0.0; grid.len()],
            segments: vec![0.0; grid.len().saturating_sub(1)],
        };
        let index: Vec<usize> = self
            .breakpoints
            .iter()
            .map(|&x| grid.partition_point(|&g| g <= x) - 1)
            .collect();
        for (k, &g) in index.iter().enumerate() {
            lifted.points[g] = self.points[k];
        }
        for k in 0..self.segments.len() {
            let v = self.segments[k];
            let (from, to) = (index[k], index[k + 1]);
            lifted.segments[from..to].fill(v);
            lifted.points[from + 1..to].fill(v);
        }
        lifted
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

/// A function re-expressed on a finer common grid.
struct Lifted {
    points: Vec<f64>,
    segments: Vec<f64>,
}

/// Sorted union of all breakpoints with near-duplicates collapsed onto the
/// smallest member of each cluster.
fn merged_grid(fns: &[&StepFunction]) -> Vec<f64> {
    let mut all: Vec<f64> = fns.iter().flat_map(|f| f.breakpoints.iter().copied()).collect();
    all.sort_by(f64::total_cmp);
    let mut grid: Vec<f64> = Vec::with_capacity(all.len());
    for x in all {
        match grid.last() {
            Some(&g) if x - g < MERGE_TOLERANCE => {}
            _ => grid.push(x),
        }
    }
    grid
}

/// Abscissae `x_min + i * step` strictly below `x_max`, followed by `x_max`.
pub fn grid(x_min: f64, x_max: f64, step: f64) -> Result<Vec<f64>> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidStep(step));
    }
    if !x_min.is_finite() || !x_max.is_finite() || x_min >= x_max {
        return Err(Error::InvalidRange { lo: x_min, hi: x_max });
    }
    let count = ((x_max - x_min) / step - MERGE_TOLERANCE).ceil().max(1.0) as usize;
    let mut xs: Vec<f64> = (0..count).map(|i| x_min + i as f64 * step).collect();
    xs.push(x_max);
    Ok(xs)
}
