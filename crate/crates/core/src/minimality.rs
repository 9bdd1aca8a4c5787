//! Subadditivity slack, exhaustive grid checks and the minimality test.
//!
//! For a continuous piecewise-linear `pi` whose breakpoints lie in `(1/N)Z`,
//! the slack `Delta pi(x, y) = pi(x) + pi(y) - pi(x + y)` is affine on every
//! triangle cut out of the unit square by the lines `x = i/N`, `y = j/N` and
//! `x + y = k/N`. All vertices of that complex are grid points, so checking
//! the sign of the slack on the `N x N` grid decides global subadditivity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pwl::{GridPoint, PwlPeriodic};
use crate::rational::{grid, int, Rational, Show};
use crate::scan::Exec;
use crate::slack::GridValues;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Nonneg,
    Origin,
    AtF,
    Subadd,
    Symmetry,
}

/// A point (or pair) where one of the minimality conditions fails.
///
/// `slack` is the offending quantity: `pi(x)` for `Nonneg`, `pi(0)` for
/// `Origin`, `pi(f) - 1` for `AtF`, and `Delta pi(x, y)` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "crate::io::rational_str")]
    pub x: Rational,
    #[serde(with = "crate::io::rational_str")]
    pub y: Rational,
    pub condition: Condition,
    #[serde(with = "crate::io::rational_str")]
    pub slack: Rational,
}

impl Witness {
    /// Recomputes the offending quantity from `eval`.
    pub fn reevaluate(&self, eval: impl Fn(&Rational) -> Rational, f: &Rational) -> Rational {
        match self.condition {
            Condition::Nonneg => eval(&self.x),
            Condition::Origin => eval(&int(0)),
            Condition::AtF => eval(f) - int(1),
            Condition::Subadd | Condition::Symmetry => {
                eval(&self.x) + eval(&self.y) - eval(&(&self.x + &self.y))
            }
        }
    }

    /// True when the recomputed quantity still violates its condition.
    pub fn reproduces(&self, eval: impl Fn(&Rational) -> Rational, f: &Rational) -> bool {
        let v = self.reevaluate(eval, f);
        v == self.slack
            && match self.condition {
                Condition::Nonneg | Condition::Subadd => v < int(0),
                Condition::Origin | Condition::AtF | Condition::Symmetry => v != int(0),
            }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} fails at ({}, {}) with {}",
            self.condition,
            Show(&self.x),
            Show(&self.y),
            Show(&self.slack)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityVerdict {
    pub minimal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl MinimalityVerdict {
    pub fn pass() -> Self {
        MinimalityVerdict {
            minimal: true,
            witness: None,
        }
    }

    pub fn fail(w: Witness) -> Self {
        MinimalityVerdict {
            minimal: false,
            witness: Some(w),
        }
    }

    pub fn into_result(self) -> Result<()> {
        match self.witness {
            Some(w) => Err(Error::NotMinimal(Box::new(w))),
            None => Ok(()),
        }
    }
}

/// The full table `slack[i][j] = Delta pi(i/N, j/N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackGrid {
    n: usize,
    slack: Vec<Vec<Rational>>,
}

impl SlackGrid {
    pub fn build(pi: &PwlPeriodic, n: usize) -> Self {
        let g = GridValues::new(&pi.sample_grid(n));
        let slack = (0..n)
            .map(|i| (0..n).map(|j| g.slack(i, j)).collect())
            .collect();
        SlackGrid { n, slack }
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.slack[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.slack
    }
}

/// `Delta pi(x, y) = pi(x) + pi(y) - pi(x + y)`.
pub fn delta_pi(pi: &PwlPeriodic, x: &Rational, y: &Rational) -> Rational {
    pi.evaluate(x) + pi.evaluate(y) - pi.evaluate(&(x + y))
}

fn grid_table(pi: &PwlPeriodic, n: usize) -> Result<GridValues> {
    if n == 0 || !pi.breakpoints_on_grid(n) {
        return Err(Error::BreakpointsNotOnGrid(n));
    }
    Ok(GridValues::new(&pi.sample_grid(n)))
}

fn subadd_witness(g: &GridValues, n: usize, exec: Exec) -> Option<Witness> {
    g.first_negative(exec).map(|(i, j)| Witness {
        x: grid(i, n),
        y: grid(j, n),
        condition: Condition::Subadd,
        slack: g.slack(i, j),
    })
}

/// Grid-exhaustive subadditivity check; see the module docs for soundness.
pub fn subadditive_on_grid(pi: &PwlPeriodic, n: usize) -> Result<MinimalityVerdict> {
    subadditive_on_grid_with(pi, n, Exec::default())
}

pub fn subadditive_on_grid_with(pi: &PwlPeriodic, n: usize, exec: Exec) -> Result<MinimalityVerdict> {
    let g = grid_table(pi, n)?;
    Ok(match subadd_witness(&g, n, exec) {
        Some(w) => MinimalityVerdict::fail(w),
        None => MinimalityVerdict::pass(),
    })
}

/// Checks the minimality conditions of a group function given by its values
/// on `(1/N)Z/Z` and the index of `f`. Conditions are tried in the order
/// nonnegativity, origin, value at `f`, subadditivity, symmetry.
pub(crate) fn grid_minimality(g: &GridValues, f_index: usize, exec: Exec) -> MinimalityVerdict {
    let n = g.len();
    let zero = int(0);
    if let Some(i) = (0..n).find(|&i| g.is_negative_at(i)) {
        return MinimalityVerdict::fail(Witness {
            x: grid(i, n),
            y: zero.clone(),
            condition: Condition::Nonneg,
            slack: g.value(i),
        });
    }
    let at0 = g.value(0);
    if at0 != zero {
        return MinimalityVerdict::fail(Witness {
            x: zero.clone(),
            y: zero,
            condition: Condition::Origin,
            slack: at0,
        });
    }
    let at_f = g.value(f_index);
    if at_f != int(1) {
        return MinimalityVerdict::fail(Witness {
            x: grid(f_index, n),
            y: zero,
            condition: Condition::AtF,
            slack: at_f - int(1),
        });
    }
    if let Some(w) = subadd_witness(g, n, exec) {
        return MinimalityVerdict::fail(w);
    }
    if let Some(x) = g.first_asymmetric(exec, f_index) {
        let y = (f_index + n - x) % n;
        return MinimalityVerdict::fail(Witness {
            x: grid(x, n),
            y: grid(y, n),
            condition: Condition::Symmetry,
            slack: g.slack(x, y),
        });
    }
    MinimalityVerdict::pass()
}

/// Minimality test on the grid `N = lcm` of the denominators of the
/// breakpoints and `f`.
pub fn minimality_test(pi: &PwlPeriodic) -> MinimalityVerdict {
    minimality_test_with(pi, Exec::default())
}

pub fn minimality_test_with(pi: &PwlPeriodic, exec: Exec) -> MinimalityVerdict {
    let n = pi
        .grid_modulus()
        .expect("grid modulus of a function exceeds usize");
    let f_index = (pi.f() * num_bigint::BigInt::from(n))
        .to_integer()
        .try_into()
        .expect("f index fits in usize");
    let g = GridValues::new(&pi.sample_grid(n));
    grid_minimality(&g, f_index, exec)
}

/// All grid pairs `(i, j)`, `i <= j`, with zero slack.
pub fn additive_pairs(pi: &PwlPeriodic, n: usize) -> Result<Vec<(GridPoint, GridPoint)>> {
    let g = grid_table(pi, n)?;
    Ok(g
        .zero_pairs(Exec::default())
        .into_iter()
        .map(|(i, j)| (GridPoint::new(i, n), GridPoint::new(j, n)))
        .collect())
}

/// Smallest strictly positive slack on the grid.
pub fn min_positive_slack(pi: &PwlPeriodic, n: usize) -> Result<Rational> {
    let g = grid_table(pi, n)?;
    g.min_positive(Exec::default()).ok_or(Error::AllSlacksZero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn gj() -> PwlPeriodic {
        PwlPeriodic::from_breakpoints(
            vec![int(0), rat(1, 6), rat(1, 3), rat(1, 2), int(1)],
            vec![int(0), rat(2, 3), rat(1, 3), int(1), int(0)],
            rat(1, 2),
        )
        .unwrap()
    }

    fn pi8() -> PwlPeriodic {
        PwlPeriodic::from_breakpoints(
            vec![int(0), rat(1, 8), rat(3, 8), rat(1, 2), int(1)],
            vec![int(0), rat(1, 2), rat(1, 2), int(1), int(0)],
            rat(1, 2),
        )
        .unwrap()
    }

    fn gmic_half() -> PwlPeriodic {
        PwlPeriodic::from_breakpoints(vec![int(0), rat(1, 2), int(1)], vec![int(0), int(1), int(0)], rat(1, 2))
            .unwrap()
    }

    #[test]
    fn delta_examples() {
        let pi = gj();
        assert_eq!(delta_pi(&pi, &rat(3, 7), &int(0)), int(0));
        assert_eq!(delta_pi(&pi, &rat(1, 6), &rat(1, 3)), int(0));
        assert_eq!(delta_pi(&pi8(), &rat(2, 8), &rat(3, 8)), rat(1, 4));
    }

    #[test]
    fn grid_subadditivity_examples() {
        assert!(subadditive_on_grid(&gj(), 6).unwrap().minimal);
        assert!(subadditive_on_grid(&gmic_half(), 2).unwrap().minimal);
        assert_eq!(subadditive_on_grid(&gj(), 4), Err(Error::BreakpointsNotOnGrid(4)));
    }

    #[test]
    fn minimality_examples() {
        assert_eq!(minimality_test(&gj()), MinimalityVerdict::pass());
        assert_eq!(minimality_test(&pi8()), MinimalityVerdict::pass());
        let bad = gj().with_f(rat(1, 4)).unwrap();
        let v = minimality_test(&bad);
        let w = v.witness.clone().unwrap();
        assert_eq!(w.condition, Condition::AtF);
        assert_eq!(w.slack, rat(-1, 2));
        assert!(w.reproduces(|x| bad.evaluate(x), bad.f()));
    }

    #[test]
    fn subadditivity_witness_is_lexicographically_first() {
        // a bump that breaks subadditivity: pi(1/4)=1/8 but pi(1/2)=1
        let pi = PwlPeriodic::from_breakpoints(
            vec![int(0), rat(1, 4), rat(1, 2), int(1)],
            vec![int(0), rat(1, 8), int(1), int(0)],
            rat(1, 2),
        )
        .unwrap();
        let v = minimality_test(&pi);
        let w = v.witness.unwrap();
        assert_eq!(w.condition, Condition::Subadd);
        assert_eq!((w.x.clone(), w.y.clone()), (rat(1, 4), rat(1, 4)));
        assert_eq!(w.slack, rat(-3, 4));
        assert!(w.reproduces(|x| pi.evaluate(x), pi.f()));
    }

    #[test]
    fn negative_and_symmetry_witnesses() {
        let neg = PwlPeriodic::from_breakpoints(
            vec![int(0), rat(1, 4), rat(1, 2), int(1)],
            vec![int(0), rat(-1, 4), int(1), int(0)],
            rat(1, 2),
        )
        .unwrap();
        assert_eq!(minimality_test(&neg).witness.unwrap().condition, Condition::Nonneg);
        // subadditive, pi(f)=1, but not symmetric
        let asym = PwlPeriodic::from_breakpoints(
            vec![int(0), rat(1, 4), rat(1, 2), rat(3, 4), int(1)],
            vec![int(0), rat(1, 2), int(1), rat(3, 4), int(0)],
            rat(1, 2),
        )
        .unwrap();
        let w = minimality_test(&asym).witness.unwrap();
        assert_eq!(w.condition, Condition::Symmetry);
        assert_eq!((w.x.clone(), w.y.clone(), w.slack.clone()), (rat(3, 4), rat(3, 4), rat(1, 2)));
        assert!(w.reproduces(|x| asym.evaluate(x), asym.f()));
    }

    #[test]
    fn additive_pairs_pi8() {
        let pairs: Vec<(usize, usize)> = additive_pairs(&pi8(), 8)
            .unwrap()
            .into_iter()
            .map(|(a, b)| (a.index, b.index))
            .collect();
        for p in [(1, 3), (2, 2), (6, 6), (7, 7), (5, 7), (6, 7)] {
            assert!(pairs.contains(&p), "{p:?}");
        }
        for j in 0..8 {
            assert!(pairs.contains(&(0, j)));
        }
        let gj_pairs = additive_pairs(&gj(), 6).unwrap();
        assert!(!gj_pairs.iter().any(|(a, b)| a.index == 1 && b.index == 1));
    }

    #[test]
    fn min_positive_examples() {
        assert_eq!(min_positive_slack(&pi8(), 8).unwrap(), rat(1, 4));
        assert_eq!(min_positive_slack(&gmic_half(), 2).unwrap(), int(2));
        let zero =
            PwlPeriodic::from_breakpoints(vec![int(0), int(1)], vec![int(0), int(0)], rat(1, 2)).unwrap();
        assert_eq!(min_positive_slack(&zero, 3), Err(Error::AllSlacksZero));
    }

    #[test]
    fn slack_grid_shape() {
        let t = SlackGrid::build(&gj(), 6);
        for i in 0..6 {
            assert_eq!(t.get(0, i), &int(0));
            for j in 0..6 {
                assert_eq!(t.get(i, j), t.get(j, i));
                assert_eq!(*t.get(i, j), delta_pi(&gj(), &grid(i, 6), &grid(j, 6)));
            }
        }
    }
}
