//! Continuous Z-periodic piecewise-linear functions with rational data.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::io::FunctionJson;
use crate::rational::{self, frac, grid, int, lcm_denominators, on_grid, Rational, Show};

/// A continuous Z-periodic piecewise-linear function, stored on one period.
///
/// Breakpoints run from `0` to `1` inclusive with the endpoint value
/// duplicated. Values in between are linear interpolation. The canonical form
/// has a slope change at every interior breakpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(into = "FunctionJson", try_from = "FunctionJson")]
pub struct PwlPeriodic {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
    f: Rational,
}

/// An element `index / modulus` of the cyclic group `(1/N)Z/Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    pub index: usize,
    pub modulus: usize,
}

impl GridPoint {
    pub fn new(index: usize, modulus: usize) -> Self {
        assert!(modulus > 0, "grid modulus must be positive");
        GridPoint {
            index: index % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> Rational {
        grid(self.index, self.modulus)
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.modulus)
    }
}

impl PwlPeriodic {
    /// Validates and canonicalizes a function given by its breakpoints on `[0, 1]`.
    pub fn from_breakpoints(
        breakpoints: Vec<Rational>,
        values: Vec<Rational>,
        f: Rational,
    ) -> Result<Self> {
        if breakpoints.len() != values.len() {
            return Err(Error::LengthMismatch {
                breakpoints: breakpoints.len(),
                values: values.len(),
            });
        }
        if breakpoints.len() < 2 {
            return Err(Error::TooFewBreakpoints);
        }
        if let Some(k) = breakpoints.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing(k + 1));
        }
        if !breakpoints[0].is_zero() || breakpoints[breakpoints.len() - 1] != int(1) {
            return Err(Error::NotSpanning);
        }
        if values[0] != values[values.len() - 1] {
            return Err(Error::NotPeriodic);
        }
        if !(f.is_positive() && f < int(1)) {
            return Err(Error::FOutOfRange);
        }
        let mut pi = PwlPeriodic {
            breakpoints,
            values,
            f,
        };
        pi.canonicalize();
        Ok(pi)
    }

    /// Linear interpolation through `values[i]` at `i/N`, closed up periodically.
    pub(crate) fn from_grid_values(values: &[Rational], f: Rational) -> Result<Self> {
        let n = values.len();
        let mut bps: Vec<Rational> = (0..=n).map(|i| grid(i, n)).collect();
        let mut vals: Vec<Rational> = values.to_vec();
        vals.push(values[0].clone());
        if n == 0 {
            bps = vec![int(0), int(1)];
            vals = vec![int(0), int(0)];
        }
        PwlPeriodic::from_breakpoints(bps, vals, f)
    }

    /// Removes interior breakpoints where the slope does not change.
    pub fn canonicalize(&mut self) {
        let n = self.breakpoints.len();
        let mut bps = Vec::with_capacity(n);
        let mut vals = Vec::with_capacity(n);
        bps.push(self.breakpoints[0].clone());
        vals.push(self.values[0].clone());
        for k in 1..n - 1 {
            let (x0, y0) = (bps.last().unwrap(), vals.last().unwrap());
            let (x1, y1) = (&self.breakpoints[k], &self.values[k]);
            let (x2, y2) = (&self.breakpoints[k + 1], &self.values[k + 1]);
            // collinear iff (y1-y0)(x2-x1) == (y2-y1)(x1-x0)
            if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0) {
                bps.push(x1.clone());
                vals.push(y1.clone());
            }
        }
        bps.push(self.breakpoints[n - 1].clone());
        vals.push(self.values[n - 1].clone());
        self.breakpoints = bps;
        self.values = vals;
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn f(&self) -> &Rational {
        &self.f
    }

    pub fn num_segments(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// Same function with a different right-hand side.
    pub fn with_f(&self, f: Rational) -> Result<Self> {
        PwlPeriodic::from_breakpoints(self.breakpoints.clone(), self.values.clone(), f)
    }

    /// Index `k` of the segment `[b_k, b_{k+1}]` containing `x` in `[0, 1)`.
    fn segment_of(&self, x: &Rational) -> usize {
        let k = self.breakpoints.partition_point(|b| b <= x);
        k.saturating_sub(1).min(self.num_segments() - 1)
    }

    fn segment_slope(&self, k: usize) -> Rational {
        (&self.values[k + 1] - &self.values[k]) / (&self.breakpoints[k + 1] - &self.breakpoints[k])
    }

    /// Slopes of all segments, in order.
    pub fn slopes(&self) -> Vec<Rational> {
        (0..self.num_segments()).map(|k| self.segment_slope(k)).collect()
    }

    /// Exact value at `x`, reduced modulo 1 first.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        let x = frac(x);
        let k = self.segment_of(&x);
        if x == self.breakpoints[k] {
            return self.values[k].clone();
        }
        &self.values[k] + self.segment_slope(k) * (&x - &self.breakpoints[k])
    }

    /// Derivative at a non-breakpoint.
    pub fn slope_on(&self, x: &Rational) -> Result<Rational> {
        let x = frac(x);
        let k = self.segment_of(&x);
        if x == self.breakpoints[k] {
            return Err(Error::AtBreakpoint(Show(&x).to_string()));
        }
        Ok(self.segment_slope(k))
    }

    /// `(pi'(0+), pi'(1-))`.
    pub fn limiting_slopes(&self) -> Result<(Rational, Rational)> {
        if self.num_segments() < 2 {
            return Err(Error::DegenerateFunction);
        }
        Ok((self.segment_slope(0), self.segment_slope(self.num_segments() - 1)))
    }

    /// True when the limiting slopes are the largest and smallest slopes overall.
    pub fn limiting_slopes_are_extreme(&self) -> bool {
        let Ok((sp, sm)) = self.limiting_slopes() else {
            return false;
        };
        let set = self.slope_values();
        set.first() == Some(&sm) && set.last() == Some(&sp)
    }

    /// Distinct slope values.
    pub fn slope_values(&self) -> BTreeSet<Rational> {
        self.slopes().into_iter().collect()
    }

    /// Least `N` with every breakpoint and `f` in `(1/N)Z`.
    pub fn grid_modulus(&self) -> Result<usize> {
        lcm_denominators(self.breakpoints.iter().chain(std::iter::once(&self.f)))
            .ok_or(Error::GridTooLarge)
    }

    /// Least `q` with every breakpoint in `(1/q)Z`.
    pub fn breakpoint_modulus(&self) -> Result<usize> {
        lcm_denominators(self.breakpoints.iter()).ok_or(Error::GridTooLarge)
    }

    pub fn breakpoints_on_grid(&self, n: usize) -> bool {
        self.breakpoints.iter().all(|b| on_grid(b, n))
    }

    /// Values at `i/n` for `0 <= i < n`, by a single sweep over the segments.
    pub fn sample_grid(&self, n: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(n);
        let mut k = 0;
        let nb = BigInt::from(n);
        for i in 0..n {
            let x = Rational::new(BigInt::from(i), nb.clone());
            while k + 1 < self.num_segments() && self.breakpoints[k + 1] <= x {
                k += 1;
            }
            if x == self.breakpoints[k] {
                out.push(self.values[k].clone());
            } else {
                out.push(&self.values[k] + self.segment_slope(k) * (&x - &self.breakpoints[k]));
            }
        }
        out
    }

    /// Exact `sup |a - b|`. `a - b` is piecewise linear on the union of the
    /// breakpoint sets, so the maximum sits on one of those points.
    pub fn sup_norm_diff(&self, other: &PwlPeriodic) -> Rational {
        let pts: BTreeSet<&Rational> = self.breakpoints.iter().chain(other.breakpoints.iter()).collect();
        pts.into_iter()
            .map(|x| (self.evaluate(x) - other.evaluate(x)).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Smallest value over the period (attained at a breakpoint).
    pub fn min_value(&self) -> Rational {
        self.values.iter().min().cloned().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for PwlPeriodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f={} [", Show(&self.f))?;
        for (k, (x, y)) in self.breakpoints.iter().zip(&self.values).enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", Show(x), Show(y))?;
        }
        f.write_str("]")
    }
}

impl From<PwlPeriodic> for FunctionJson {
    fn from(pi: PwlPeriodic) -> Self {
        FunctionJson::from(&pi)
    }
}

// Free-function aliases matching the operation names used in the CLI and docs.

pub fn evaluate(pi: &PwlPeriodic, x: &Rational) -> Rational {
    pi.evaluate(x)
}

pub fn sup_norm_diff(a: &PwlPeriodic, b: &PwlPeriodic) -> Rational {
    a.sup_norm_diff(b)
}

pub use rational::{ceil_grid, floor_grid, frac_part};
