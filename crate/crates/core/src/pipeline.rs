//! End-to-end runs: extending a finite facet to the infinite group problem,
//! and sequences of fill-ins converging to a non-extreme function.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fillins::{
    fill_in_parameters, injective_2_slope_fill_in_on_grid, m_lower_bound, FillIn,
};
use crate::groups::{
    finite_extremality_test, interpolate_to_infinite_group, restrict_to_finite_group,
    ExtremalityCertificate, FiniteGroupFunction,
};
use crate::pwl::PwlPeriodic;
use crate::rational::{ceil_usize, lcm, on_grid, Rational};

#[derive(Debug, Clone, Serialize)]
pub struct MasterPipelineReport {
    pub input: ExtremalityCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interpolation: Option<PwlPeriodic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fill_in: Option<FillIn>,
    pub phi_extreme: bool,
    pub restriction_matches: bool,
}

impl MasterPipelineReport {
    pub fn success(&self) -> bool {
        self.input.extreme && self.phi_extreme && self.restriction_matches
    }
}

/// Extends an extreme function on `C_q` to a two-slope extreme function on
/// R/Z whose restriction to `C_q` is the input.
///
/// Runs interpolation, then the injective fill-in on base grid `q` (default
/// `epsilon = 1/q`), then checks the restriction. If the input is not extreme
/// the report stops after the first step.
pub fn master_pipeline(
    h: &FiniteGroupFunction,
    epsilon: Option<Rational>,
) -> Result<MasterPipelineReport> {
    let input = finite_extremality_test(h)?;
    if !input.extreme {
        return Ok(MasterPipelineReport {
            input,
            interpolation: None,
            fill_in: None,
            phi_extreme: false,
            restriction_matches: false,
        });
    }
    let q = h.order();
    let pi = interpolate_to_infinite_group(h);
    let eps = epsilon.unwrap_or_else(|| Rational::new(BigInt::one(), BigInt::from(q)));
    let fill = injective_2_slope_fill_in_on_grid(&pi, &eps, None, q)?;
    let phi_extreme = fill
        .checks
        .get("extreme_by_two_slope_theorem")
        .is_some_and(|c| c.passed);
    let restriction_matches = restrict_to_finite_group(&fill.phi, q)? == *h;
    Ok(MasterPipelineReport {
        input,
        interpolation: Some(pi),
        fill_in: Some(fill),
        phi_extreme,
        restriction_matches,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceStep {
    pub i: usize,
    #[serde(with = "crate::io::rational_str")]
    pub epsilon: Rational,
    pub m: usize,
    #[serde(with = "crate::io::rational_str")]
    pub sup_norm: Rational,
    pub within_epsilon: bool,
    #[serde(with = "crate::io::rational_vec")]
    pub probe_values: Vec<Rational>,
    /// whether each probe lies on `(1/(m q))Z`
    pub probe_on_grid: Vec<bool>,
    #[serde(skip)]
    pub phi: PwlPeriodic,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeSummary {
    #[serde(with = "crate::io::rational_str")]
    pub x: Rational,
    #[serde(with = "crate::io::rational_str")]
    pub target: Rational,
    /// first index from which `phi_i(x) = pi(x)` for every later step
    pub stable_from: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub q: usize,
    pub r: usize,
    pub steps: Vec<SequenceStep>,
    pub probes: Vec<ProbeSummary>,
}

/// Builds `phi_1, ..., phi_k` with `epsilon_i = 2^-i` and `m_i` the smallest
/// multiple of `lcm(r, 1, ..., i)` above the lower bound, so every rational
/// `a/b` is eventually on the agreement grid.
pub fn fill_in_sequence(pi: &PwlPeriodic, count: usize, probes: &[Rational]) -> Result<SequenceReport> {
    let q = pi.grid_modulus()?;
    let base = fill_in_parameters(pi, &Rational::one(), None, q)?;
    let r = base.r;
    let mut steps = Vec::with_capacity(count);
    let mut step_lcm = r;
    for i in 1..=count {
        step_lcm = lcm(step_lcm, i);
        let eps = Rational::new(BigInt::one(), BigInt::from(2u8).pow(i as u32));
        let bound = m_lower_bound(&base.s_plus, &base.s_minus, q, &eps, &base.delta);
        let k = ceil_usize(&(bound / BigInt::from(step_lcm))).ok_or(Error::GridTooLarge)?;
        let m = step_lcm.checked_mul(k.max(1)).ok_or(Error::GridTooLarge)?;
        let FillIn { phi, params, .. } = injective_2_slope_fill_in_on_grid(pi, &eps, Some(m), q)?;
        let sup_norm = phi.sup_norm_diff(pi);
        steps.push(SequenceStep {
            i,
            within_epsilon: sup_norm <= eps,
            epsilon: eps,
            m: params.m,
            sup_norm,
            probe_values: probes.iter().map(|x| phi.evaluate(x)).collect(),
            probe_on_grid: probes.iter().map(|x| on_grid(x, params.coarse())).collect(),
            phi,
        });
    }
    let probes = probes
        .iter()
        .enumerate()
        .map(|(j, x)| {
            let target = pi.evaluate(x);
            let mut stable_from = None;
            for step in steps.iter().rev() {
                if step.probe_values[j] != target {
                    break;
                }
                stable_from = Some(step.i);
            }
            ProbeSummary {
                x: x.clone(),
                target,
                stable_from,
            }
        })
        .collect();
    Ok(SequenceReport { q, r, steps, probes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gj_2_slope, gmic};
    use crate::rational::{int, rat};

    #[test]
    fn pipeline_on_h24_and_h8() {
        let gj = gj_2_slope(&rat(1, 2), &rat(1, 3)).unwrap();
        let h24 = restrict_to_finite_group(&gj, 24).unwrap();
        let rep = master_pipeline(&h24, None).unwrap();
        assert!(rep.success());
        let h8 = restrict_to_finite_group(&gj, 8).unwrap();
        let rep = master_pipeline(&h8, None).unwrap();
        assert!(!rep.input.extreme);
        assert!(!rep.success());
    }

    #[test]
    fn pipeline_on_gmic_c2() {
        let h = restrict_to_finite_group(&gmic(&rat(1, 2)).unwrap(), 2).unwrap();
        assert!(master_pipeline(&h, None).unwrap().success());
    }

    #[test]
    fn sequence_on_pi8() {
        let gj = gj_2_slope(&rat(1, 2), &rat(1, 3)).unwrap();
        let pi8 = interpolate_to_infinite_group(&restrict_to_finite_group(&gj, 8).unwrap());
        let rep = fill_in_sequence(&pi8, 4, &[rat(1, 3), int(0)]).unwrap();
        assert_eq!(rep.steps.len(), 4);
        for s in &rep.steps {
            assert!(s.within_epsilon);
            assert_eq!(s.m % (1..=s.i).fold(1, lcm), 0);
        }
        assert!(rep.probes[0].stable_from.unwrap() <= 3);
        assert_eq!(rep.probes[1].stable_from, Some(1));
    }
}
