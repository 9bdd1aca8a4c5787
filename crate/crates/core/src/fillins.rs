//! Two-slope fill-ins.
//!
//! [`injective_2_slope_fill_in`] turns a minimal piecewise-linear `pi` with
//! breakpoints in `(1/q)Z` into a two-slope function `phi` that agrees with
//! `pi` on `(1/mq)Z`, has breakpoints in `(1/Dmq)Z`, is within `epsilon` of
//! `pi` in sup norm, and is extreme. On each cell `[i/mq, (i+1)/mq]` the
//! function either rises with the steepest slope `s+` and then falls with
//! `s-` (a tent above `pi`, where `pi < 1/2`), or the other way round (a
//! valley below `pi`, where `pi > 1/2`). At value exactly `1/2` the choice is
//! made by whether `{x}` lies in `[f/2, (f+1)/2]`, which keeps `phi`
//! symmetric.
//!
//! [`two_slope_fill_in`] is the classic extension of a subadditive group
//! function by the two extreme slopes. It is subadditive but generally not
//! symmetric.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::FiniteGroupFunction;
use crate::minimality::{grid_minimality, minimality_test, subadditive_on_grid};
use crate::pwl::PwlPeriodic;
use crate::rational::{ceil_usize, frac, frac_part, grid, half, int, on_grid, Rational, Show};
use crate::slack::GridValues;
use crate::scan::Exec;

/// The data the construction computes from `pi` and `epsilon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillInParameters {
    pub q: usize,
    pub r: usize,
    #[serde(with = "crate::io::rational_str")]
    pub delta: Rational,
    pub m: usize,
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(with = "crate::io::rational_str")]
    pub s_plus: Rational,
    #[serde(with = "crate::io::rational_str")]
    pub s_minus: Rational,
    #[serde(with = "crate::io::rational_str")]
    pub epsilon: Rational,
    /// `m / r`
    #[serde(skip)]
    pub n: usize,
}

impl FillInParameters {
    /// `mq`, the grid on which `phi` agrees with `pi`.
    pub fn coarse(&self) -> usize {
        self.m * self.q
    }

    /// `Dmq`, the grid containing every breakpoint of `phi`.
    pub fn fine(&self) -> usize {
        self.d * self.m * self.q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// tent above `pi`: slope `s+` first, then `s-`
    CaseM,
    /// valley below `pi`: slope `s-` first, then `s+`
    CaseW,
}

/// `true` iff `{x}` lies in the closed interval `[f/2, (f+1)/2]`.
fn in_middle(x: &Rational, f: &Rational) -> bool {
    let fx = frac(x);
    let lo = f * half();
    let hi = (f + int(1)) * half();
    lo <= fx && fx <= hi
}

fn case_from_value(value: &Rational, x: &Rational, f: &Rational) -> CaseTag {
    let h = half();
    if *value < h || (*value == h && !in_middle(x, f)) {
        CaseTag::CaseM
    } else {
        CaseTag::CaseW
    }
}

pub fn classify_case(pi: &PwlPeriodic, x: &Rational) -> CaseTag {
    case_from_value(&pi.evaluate(x), x, pi.f())
}

fn require_minimal(pi: &PwlPeriodic) -> Result<()> {
    minimality_test(pi).into_result()
}

fn require_on_grid(pi: &PwlPeriodic, q: usize) -> Result<()> {
    if q == 0 || !pi.breakpoints_on_grid(q) || !on_grid(pi.f(), q) {
        return Err(Error::BreakpointsNotOnGrid(q));
    }
    Ok(())
}

/// Points `x` in `(0, 1)` strictly inside a sloped segment with `pi(x) = 1/2`.
pub fn half_crossings(pi: &PwlPeriodic) -> Vec<Rational> {
    let h = half();
    let bps = pi.breakpoints();
    let vals = pi.values();
    (0..pi.num_segments())
        .filter_map(|k| {
            let (a, b) = (&bps[k], &bps[k + 1]);
            let (va, vb) = (&vals[k], &vals[k + 1]);
            if va == vb {
                return None;
            }
            let t = (&h - va) / (vb - va);
            (t.is_positive() && t < int(1)).then(|| a + t * (b - a))
        })
        .collect()
}

/// Smallest `r` with `f/2`, `(f+1)/2` and every isolated solution of
/// `pi(x) = 1/2` in `(1/rq)Z`. Plateaus at `1/2` end at breakpoints, which
/// are already on the grid.
pub fn compute_r(pi: &PwlPeriodic, q: usize) -> Result<usize> {
    require_minimal(pi)?;
    require_on_grid(pi, q)?;
    let f = pi.f();
    let targets = [f * half(), (f + int(1)) * half()]
        .into_iter()
        .chain(half_crossings(pi));
    let qb = BigInt::from(q);
    let mut r = BigInt::one();
    for y in targets {
        r = r.lcm((y * &qb).denom());
    }
    r.to_usize().ok_or(Error::GridTooLarge)
}

/// Smallest positive slack on `(1/rq)Z`.
pub fn compute_delta(pi: &PwlPeriodic, r: usize, q: usize) -> Result<Rational> {
    crate::minimality::min_positive_slack(pi, r * q)
}

/// `3(s+ - s-) / (4q min{3 epsilon, delta, 1})`.
pub fn m_lower_bound(
    s_plus: &Rational,
    s_minus: &Rational,
    q: usize,
    epsilon: &Rational,
    delta: &Rational,
) -> Rational {
    let three_eps = epsilon * int(3);
    let denom_min = three_eps.min(delta.clone()).min(int(1));
    (s_plus - s_minus) * int(3) / (denom_min * int(4) * BigInt::from(q))
}

fn smallest_multiple_at_least(r: usize, bound: &Rational) -> Result<usize> {
    let k = ceil_usize(&(bound / BigInt::from(r))).ok_or(Error::GridTooLarge)?;
    r.checked_mul(k.max(1)).ok_or(Error::GridTooLarge)
}

/// Smallest multiple of `r` that is at least the lower bound on `m`.
pub fn compute_m(pi: &PwlPeriodic, epsilon: &Rational, r: usize, q: usize) -> Result<usize> {
    if !epsilon.is_positive() {
        return Err(Error::ParamOutOfRange("epsilon must be positive".into()));
    }
    let (sp, sm) = pi.limiting_slopes()?;
    let delta = compute_delta(pi, r, q)?;
    smallest_multiple_at_least(r, &m_lower_bound(&sp, &sm, q, epsilon, &delta))
}

/// Least `D` such that `(pi' - s-)/(s+ - s-)` is a multiple of `1/D` on every segment.
#[allow(non_snake_case)]
pub fn compute_D(pi: &PwlPeriodic) -> Result<usize> {
    let (sp, sm) = pi.limiting_slopes()?;
    if sp == sm {
        return Err(Error::DegenerateFunction);
    }
    let width = &sp - &sm;
    let mut d = BigInt::one();
    for s in pi.slope_values() {
        d = d.lcm(((s - &sm) / &width).denom());
    }
    d.to_usize().ok_or(Error::GridTooLarge)
}

fn d_parts(pi: &PwlPeriodic, x: &Rational, mq: usize) -> Result<(Rational, Rational)> {
    let (sp, sm) = pi.limiting_slopes()?;
    if sp == sm {
        return Err(Error::DegenerateFunction);
    }
    let s = pi.slope_on(x)?;
    let cell = Rational::new(BigInt::one(), BigInt::from(mq));
    let width = &sp - &sm;
    let plus = &cell * (&s - &sm) / &width;
    let minus = cell * (sp - s) / width;
    Ok((plus, minus))
}

/// Length of the `s+` piece in the `1/mq` cell containing `x`.
pub fn d_plus(pi: &PwlPeriodic, x: &Rational, mq: usize) -> Result<Rational> {
    d_parts(pi, x, mq).map(|p| p.0)
}

/// Length of the `s-` piece in the `1/mq` cell containing `x`.
pub fn d_minus(pi: &PwlPeriodic, x: &Rational, mq: usize) -> Result<Rational> {
    d_parts(pi, x, mq).map(|p| p.1)
}

/// One named property of a constructed function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{mark} {}", c.name)?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillIn {
    pub phi: PwlPeriodic,
    pub params: FillInParameters,
    pub checks: VerificationReport,
}

/// Fill-in on the base grid `q = lcm` of the denominators of the breakpoints
/// and `f`.
pub fn injective_2_slope_fill_in(
    pi: &PwlPeriodic,
    epsilon: &Rational,
    m: Option<usize>,
) -> Result<FillIn> {
    let q = pi.grid_modulus()?;
    injective_2_slope_fill_in_on_grid(pi, epsilon, m, q)
}

/// Computes the parameters of the fill-in without building `phi`.
pub fn fill_in_parameters(
    pi: &PwlPeriodic,
    epsilon: &Rational,
    m: Option<usize>,
    q: usize,
) -> Result<FillInParameters> {
    if !epsilon.is_positive() {
        return Err(Error::ParamOutOfRange("epsilon must be positive".into()));
    }
    require_minimal(pi)?;
    require_on_grid(pi, q)?;
    if let Some(k) = pi.breakpoints()[1..pi.num_segments()]
        .iter()
        .zip(&pi.values()[1..pi.num_segments()])
        .find(|(_, v)| v.is_zero())
    {
        return Err(Error::StrictPositivityRequired(Show(k.0).to_string()));
    }
    let (s_plus, s_minus) = pi.limiting_slopes()?;
    let r = compute_r(pi, q)?;
    let delta = compute_delta(pi, r, q)?;
    let bound = m_lower_bound(&s_plus, &s_minus, q, epsilon, &delta);
    let m = match m {
        Some(m) => {
            if m == 0 || m % r != 0 {
                return Err(Error::BadM(format!("m = {m} is not a positive multiple of r = {r}")));
            }
            if Rational::from_integer(BigInt::from(m)) < bound {
                return Err(Error::BadM(format!(
                    "m = {m} is below the lower bound {}",
                    Show(&bound)
                )));
            }
            m
        }
        None => smallest_multiple_at_least(r, &bound)?,
    };
    let d = compute_D(pi)?;
    Ok(FillInParameters {
        q,
        r,
        delta,
        m,
        d,
        s_plus,
        s_minus,
        epsilon: epsilon.clone(),
        n: m / r,
    })
}

/// Fill-in relative to an explicit base grid `(1/q)Z` containing the
/// breakpoints and `f`; `phi` then agrees with `pi` on `(1/mq)Z`.
pub fn injective_2_slope_fill_in_on_grid(
    pi: &PwlPeriodic,
    epsilon: &Rational,
    m: Option<usize>,
    q: usize,
) -> Result<FillIn> {
    let params = fill_in_parameters(pi, epsilon, m, q)?;
    let phi = build_phi(pi, &params)?;
    let checks = verify_fill_in(pi, &phi, &params)?;
    if !checks.all_passed() {
        return Err(Error::VerificationFailed(checks.failures()));
    }
    Ok(FillIn { phi, params, checks })
}

/// One interior breakpoint per `1/mq` cell, at offset `d+` (tent) or `d-`
/// (valley).
fn build_phi(pi: &PwlPeriodic, params: &FillInParameters) -> Result<PwlPeriodic> {
    let p = params.coarse();
    let pb = BigInt::from(p);
    let cell = Rational::new(BigInt::one(), pb.clone());
    let width = &params.s_plus - &params.s_minus;
    let vals = pi.sample_grid(p);
    let mut bps = Vec::with_capacity(2 * p + 1);
    let mut out = Vec::with_capacity(2 * p + 1);
    for i in 0..p {
        let a = grid(i, p);
        let va = &vals[i];
        let vb = &vals[(i + 1) % p];
        let slope = (vb - va) * &pb;
        let mid = &a + &cell * half();
        let case = case_from_value(&((va + vb) * half()), &mid, pi.f());
        let (len, rise) = match case {
            CaseTag::CaseM => {
                let d = &cell * (&slope - &params.s_minus) / &width;
                let rise = &params.s_plus * &d;
                (d, rise)
            }
            CaseTag::CaseW => {
                let d = &cell * (&params.s_plus - &slope) / &width;
                let rise = &params.s_minus * &d;
                (d, rise)
            }
        };
        bps.push(a.clone());
        out.push(va.clone());
        if len.is_positive() && len < cell {
            bps.push(&a + &len);
            out.push(va + rise);
        }
    }
    bps.push(int(1));
    out.push(vals[0].clone());
    PwlPeriodic::from_breakpoints(bps, out, pi.f().clone())
}

/// The casewise closed-form value of the fill-in at `x`, evaluated directly
/// from `pi`, `pi'` and the parameters rather than from the built function.
pub fn phi_casewise(pi: &PwlPeriodic, params: &FillInParameters, x: &Rational) -> Rational {
    let p = params.coarse();
    let t = frac_part(x, p);
    let px = pi.evaluate(x);
    if t.is_zero() {
        return px;
    }
    let cell = Rational::new(BigInt::one(), BigInt::from(p));
    let rest = &cell - &t;
    let (sp, sm) = (&params.s_plus, &params.s_minus);
    let ds = pi.slope_on(x).expect("breakpoints of pi lie on the coarse grid");
    let width = sp - sm;
    let d_plus = &cell * (&ds - sm) / &width;
    let d_minus = &cell * (sp - &ds) / &width;
    let h = half();
    if px < h {
        if t <= d_plus {
            px + (sp - &ds) * t
        } else {
            px + (&ds - sm) * rest
        }
    } else if px > h {
        if t <= d_minus {
            px - (&ds - sm) * t
        } else {
            px - (sp - &ds) * rest
        }
    } else if !in_middle(x, pi.f()) {
        if t <= d_plus {
            h + sp * t
        } else {
            h - sm * rest
        }
    } else if t <= d_minus {
        h + sm * t
    } else {
        h - sp * rest
    }
}

/// Checks every advertised property of `phi` against `pi`.
pub fn verify_fill_in(
    pi: &PwlPeriodic,
    phi: &PwlPeriodic,
    params: &FillInParameters,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::default();
    let coarse = params.coarse();
    let fine = params.fine();
    let (sp, sm) = (&params.s_plus, &params.s_minus);

    let off_grid: Vec<&Rational> = phi.breakpoints().iter().filter(|b| !on_grid(b, fine)).collect();
    rep.push(
        "breakpoints_on_fine_grid",
        off_grid.is_empty(),
        format!("grid 1/{fine}"),
    );

    let slopes = phi.slope_values();
    let expected: BTreeSet<Rational> = [sp.clone(), sm.clone()].into_iter().collect();
    rep.push(
        "two_slopes",
        slopes == expected,
        slopes.iter().map(|s| Show(s).to_string()).collect::<Vec<_>>().join(", "),
    );

    let dist = phi.sup_norm_diff(pi);
    rep.push(
        "sup_norm_within_epsilon",
        dist <= params.epsilon,
        format!("{} <= {}", Show(&dist), Show(&params.epsilon)),
    );
    let cell_bound = (sp - sm) / (int(4) * BigInt::from(coarse));
    rep.push(
        "sup_norm_within_cell_bound",
        dist <= cell_bound,
        format!("{} <= {}", Show(&dist), Show(&cell_bound)),
    );

    let phi_c = phi.sample_grid(coarse);
    let pi_c = pi.sample_grid(coarse);
    let mismatch = (0..coarse).find(|&i| phi_c[i] != pi_c[i]);
    rep.push(
        "agrees_on_coarse_grid",
        mismatch.is_none(),
        match mismatch {
            Some(i) => format!("differs at {i}/{coarse}"),
            None => format!("grid 1/{coarse}"),
        },
    );

    let min = phi.min_value();
    rep.push("nonnegative", !min.is_negative(), format!("min {}", Show(&min)));

    // one scan decides both subadditivity and minimality once the breakpoints
    // are known to lie on the fine grid; a separate subadditivity scan is only
    // needed to report a failure
    let minimal = if off_grid.is_empty() {
        let f_fine = (phi.f() * BigInt::from(fine))
            .to_integer()
            .to_usize()
            .ok_or(Error::GridTooLarge)?;
        grid_minimality(&GridValues::new(&phi.sample_grid(fine)), f_fine, Exec::default())
    } else {
        minimality_test(phi)
    };
    let sub = if minimal.minimal {
        minimal.clone()
    } else {
        subadditive_on_grid(phi, fine)?
    };
    rep.push(
        "subadditive_on_fine_grid",
        sub.minimal,
        sub.witness.map(|w| w.to_string()).unwrap_or_default(),
    );

    let twice = 2 * fine;
    let sym = GridValues::new(&phi.sample_grid(twice));
    let f_index = (phi.f() * BigInt::from(twice))
        .to_integer()
        .to_usize()
        .ok_or(Error::GridTooLarge)?;
    let asym = sym.first_asymmetric(Exec::default(), f_index);
    rep.push(
        "symmetric_on_half_fine_grid",
        asym.is_none() && sym.value(f_index) == int(1),
        asym.map(|x| format!("fails at {x}/{twice}")).unwrap_or_default(),
    );

    rep.push(
        "minimal",
        minimal.minimal,
        minimal.witness.map(|w| w.to_string()).unwrap_or_default(),
    );
    rep.push(
        "extreme_by_two_slope_theorem",
        minimal.minimal && slopes.len() == 2,
        "",
    );

    let periodic = quasi_periodic_on_cells(pi, phi, params);
    rep.push(
        "difference_periodic_on_rq_cells",
        periodic.is_none(),
        periodic.map(|k| format!("fails at {k}/{fine}")).unwrap_or_default(),
    );
    Ok(rep)
}

/// First `k` such that `(phi - pi)(k/Dmq) != (phi - pi)(k/Dmq + 1/mq)` with
/// both points in one closed `1/rq` cell.
fn quasi_periodic_on_cells(pi: &PwlPeriodic, phi: &PwlPeriodic, params: &FillInParameters) -> Option<usize> {
    let fine = params.fine();
    let step = params.d;
    let rq_cell = fine / (params.r * params.q);
    let a = phi.sample_grid(fine);
    let b = pi.sample_grid(fine);
    let diff = |k: usize| &a[k % fine] - &b[k % fine];
    (0..fine).find(|&k| {
        let cell_end = (k / rq_cell + 1) * rq_cell;
        k + step <= cell_end && diff(k) != diff(k + step)
    })
}

/// The sign of `pi - 1/2` is constant on every open `1/rq` cell, and any
/// interior point with value `1/2` sits on a flat segment.
pub fn affine_same_sign_holds(pi: &PwlPeriodic, r: usize, q: usize) -> bool {
    let n = r * q;
    let h = half();
    (0..n).all(|i| {
        let a = grid(i, n);
        let w = Rational::new(BigInt::one(), BigInt::from(4 * n));
        let samples: Vec<Rational> = (1..4)
            .map(|k| pi.evaluate(&(&a + &w * int(k))) - &h)
            .collect();
        let same_sign = samples.iter().all(|s| s.signum() == samples[1].signum());
        let flat_if_half = !samples.iter().any(Zero::is_zero)
            || pi.slope_on(&(&a + &w * int(2))).map(|s| s.is_zero()).unwrap_or(false);
        same_sign && flat_if_half
    })
}

/// Classic fill-in: on each cell `[g, g + 1/N]` the minimum of the forward
/// ray of slope `s+` from `h(g)` and the backward ray of slope `s-` into
/// `h(g + 1/N)`, with `s+`/`s-` the extreme slopes of the interpolation.
pub fn two_slope_fill_in(h: &FiniteGroupFunction) -> Result<PwlPeriodic> {
    let n = h.order();
    if !h.value(0).is_zero() {
        return Err(Error::InvalidGroupFunction("h(0) must be 0".into()));
    }
    let g = GridValues::new(h.values());
    if let Some((i, j)) = g.first_negative(Exec::default()) {
        return Err(Error::NotSubadditive(i, j));
    }
    let interp = crate::groups::interpolate_to_infinite_group(h);
    let slopes = interp.slope_values();
    let (Some(sm), Some(sp)) = (slopes.first().cloned(), slopes.last().cloned()) else {
        unreachable!("a function has at least one slope");
    };
    if sp == sm {
        return Ok(interp);
    }
    let cell = Rational::new(BigInt::one(), BigInt::from(n));
    let mut bps = Vec::with_capacity(2 * n + 1);
    let mut out = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        let a = h.value(i);
        let b = h.value(i + 1);
        let x0 = grid(i, n);
        // a + s+ t = b - s- (cell - t)
        let t = (b - a - &sm * &cell) / (&sp - &sm);
        bps.push(x0.clone());
        out.push(a.clone());
        if t.is_positive() && t < cell {
            out.push(a + &sp * &t);
            bps.push(x0 + t);
        }
    }
    bps.push(int(1));
    out.push(h.value(0).clone());
    PwlPeriodic::from_breakpoints(bps, out, h.f())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{interpolate_to_infinite_group, restrict_to_finite_group};
    use crate::rational::rat;

    fn gj() -> PwlPeriodic {
        PwlPeriodic::from_breakpoints(
            vec![int(0), rat(1, 6), rat(1, 3), rat(1, 2), int(1)],
            vec![int(0), rat(2, 3), rat(1, 3), int(1), int(0)],
            rat(1, 2),
        )
        .unwrap()
    }

    fn h8() -> FiniteGroupFunction {
        restrict_to_finite_group(&gj(), 8).unwrap()
    }

    fn pi8() -> PwlPeriodic {
        interpolate_to_infinite_group(&h8())
    }

    fn gmic_half() -> PwlPeriodic {
        PwlPeriodic::from_breakpoints(vec![int(0), rat(1, 2), int(1)], vec![int(0), int(1), int(0)], rat(1, 2))
            .unwrap()
    }

    #[test]
    fn r_examples() {
        assert_eq!(compute_r(&gj(), 6).unwrap(), 4);
        assert_eq!(compute_r(&pi8(), 8).unwrap(), 1);
        assert_eq!(compute_r(&gmic_half(), 2).unwrap(), 2);
        assert_eq!(compute_r(&gj(), 4), Err(Error::BreakpointsNotOnGrid(4)));
    }

    #[test]
    fn delta_and_m_examples() {
        assert_eq!(compute_delta(&pi8(), 1, 8).unwrap(), rat(1, 4));
        assert!(compute_delta(&gmic_half(), 2, 2).unwrap().is_positive());
        assert_eq!(compute_m(&pi8(), &rat(1, 16), 1, 8).unwrap(), 3);
        assert_eq!(compute_m(&pi8(), &int(1), 1, 8).unwrap(), 3);
        assert_eq!(m_lower_bound(&int(4), &int(-2), 8, &int(1), &rat(1, 4)), rat(9, 4));
        let m = compute_m(&gj(), &rat(1, 100), 4, 6).unwrap();
        assert_eq!(m % 4, 0);
    }

    #[test]
    fn big_d_examples() {
        assert_eq!(compute_D(&gj()).unwrap(), 1);
        assert_eq!(compute_D(&pi8()).unwrap(), 3);
        let zero =
            PwlPeriodic::from_breakpoints(vec![int(0), int(1)], vec![int(0), int(0)], rat(1, 2)).unwrap();
        assert_eq!(compute_D(&zero), Err(Error::DegenerateFunction));
    }

    #[test]
    fn d_examples() {
        let pi = pi8();
        assert_eq!(d_plus(&pi, &rat(1, 16), 24).unwrap(), rat(1, 24));
        assert_eq!(d_minus(&pi, &rat(1, 16), 24).unwrap(), int(0));
        assert_eq!(d_plus(&pi, &rat(1, 5), 24).unwrap(), rat(1, 72));
        assert_eq!(d_minus(&pi, &rat(1, 5), 24).unwrap(), rat(1, 36));
        assert!(matches!(d_plus(&pi, &rat(1, 8), 24), Err(Error::AtBreakpoint(_))));
    }

    #[test]
    fn case_examples() {
        let pi = pi8();
        assert_eq!(classify_case(&pi, &rat(1, 16)), CaseTag::CaseM);
        assert_eq!(classify_case(&pi, &rat(5, 16)), CaseTag::CaseW);
        assert_eq!(classify_case(&pi, &rat(9, 16)), CaseTag::CaseW);
        assert_eq!(classify_case(&pi, &rat(3, 16)), CaseTag::CaseM);
        // boundary of the closed middle interval
        assert_eq!(classify_case(&pi, &rat(1, 4)), CaseTag::CaseW);
    }

    #[test]
    fn fill_in_pi8_values() {
        let out = injective_2_slope_fill_in(&pi8(), &rat(1, 16), Some(3)).unwrap();
        let phi = &out.phi;
        assert_eq!(phi.evaluate(&(rat(1, 8) + rat(1, 72))), rat(5, 9));
        assert_eq!(phi.evaluate(&(rat(1, 4) + rat(1, 36))), rat(4, 9));
        for i in 0..24 {
            assert_eq!(phi.evaluate(&grid(i, 24)), pi8().evaluate(&grid(i, 24)));
        }
        let p = &out.params;
        assert_eq!((p.q, p.r, p.m, p.d), (8, 1, 3, 3));
        assert_eq!(p.delta, rat(1, 4));
        assert!(out.checks.all_passed(), "{}", out.checks);
    }

    #[test]
    fn fill_in_is_identity_on_two_slope_input() {
        let out = injective_2_slope_fill_in(&gj(), &rat(1, 100), None).unwrap();
        assert_eq!(out.phi, gj());
    }

    #[test]
    fn bad_m_and_non_minimal_inputs() {
        assert!(matches!(
            injective_2_slope_fill_in(&pi8(), &rat(1, 16), Some(2)),
            Err(Error::BadM(_))
        ));
        let gj_m = injective_2_slope_fill_in(&gj(), &rat(1, 16), Some(6));
        assert!(matches!(gj_m, Err(Error::BadM(_))), "r = 4 does not divide 6");
        let bad = gj().with_f(rat(1, 4)).unwrap();
        assert!(matches!(
            injective_2_slope_fill_in(&bad, &rat(1, 16), None),
            Err(Error::NotMinimal(_))
        ));
    }

    #[test]
    fn casewise_formula_matches_construction() {
        let out = injective_2_slope_fill_in(&pi8(), &rat(1, 16), None).unwrap();
        let fine = out.params.fine();
        for k in 0..4 * fine {
            let x = grid(k, 4 * fine);
            assert_eq!(phi_casewise(&pi8(), &out.params, &x), out.phi.evaluate(&x), "at {k}/{}", 4 * fine);
        }
    }

    #[test]
    fn affine_same_sign_examples() {
        assert!(affine_same_sign_holds(&gj(), 4, 6));
        assert!(!affine_same_sign_holds(&gj(), 1, 6));
        assert!(affine_same_sign_holds(&pi8(), 1, 8));
    }

    #[test]
    fn classic_fill_in_h8() {
        let fill = two_slope_fill_in(&h8()).unwrap();
        let x = rat(1, 8) + rat(1, 24);
        assert_eq!(fill.evaluate(&x), rat(2, 3));
        for i in 0..8 {
            assert_eq!(fill.evaluate(&grid(i, 8)), *h8().value(i));
        }
        assert_eq!(fill.slope_values(), [int(-2), int(4)].into_iter().collect());
        let h24 = restrict_to_finite_group(&gj(), 24).unwrap();
        assert_eq!(two_slope_fill_in(&h24).unwrap(), gj());
    }
}
