//! Finite cyclic group problems: restriction, interpolation, pullback and
//! extremality with explicit decomposition certificates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::GroupJson;
use crate::linalg::RowEchelon;
use crate::minimality::{grid_minimality, minimality_test, MinimalityVerdict};
use crate::pwl::PwlPeriodic;
use crate::rational::{grid, half, Rational};
use crate::scan::Exec;
use crate::slack::GridValues;

/// A function on `G = (1/N)Z/Z`; `values[i]` is the value at `i/N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GroupJson", try_from = "GroupJson")]
pub struct FiniteGroupFunction {
    values: Vec<Rational>,
    f_index: usize,
}

impl FiniteGroupFunction {
    pub fn new(values: Vec<Rational>, f_index: usize) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::InvalidGroupFunction(format!("group order {n} < 2")));
        }
        if f_index == 0 || f_index >= n {
            return Err(Error::InvalidGroupFunction(format!(
                "f_index {f_index} outside 1..{}",
                n - 1
            )));
        }
        Ok(FiniteGroupFunction { values, f_index })
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn f_index(&self) -> usize {
        self.f_index
    }

    pub fn f(&self) -> Rational {
        grid(self.f_index, self.order())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i % self.order()]
    }

    /// `h(x) + h(y) - h(x + y)` on indices.
    pub fn delta(&self, i: usize, j: usize) -> Rational {
        self.value(i) + self.value(j) - self.value(i + j)
    }

    fn combine(&self, other: &FiniteGroupFunction, t: &Rational) -> FiniteGroupFunction {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + t * b)
            .collect();
        FiniteGroupFunction {
            values,
            f_index: self.f_index,
        }
    }

    /// Pointwise average of two functions on the same group.
    pub fn midpoint(&self, other: &FiniteGroupFunction) -> FiniteGroupFunction {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a + b) * half())
            .collect();
        FiniteGroupFunction {
            values,
            f_index: self.f_index,
        }
    }
}

impl From<FiniteGroupFunction> for GroupJson {
    fn from(h: FiniteGroupFunction) -> Self {
        GroupJson::from(&h)
    }
}

/// Outcome of the finite extremality test.
///
/// When `extreme` is false, `perturbation` is a nonzero `theta` with
/// `theta(0) = theta(f) = 0` that is additive on every tight pair, and
/// `plus`/`minus` are the minimal functions `h +- epsilon * theta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalityCertificate {
    pub extreme: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<FiniteGroupFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub epsilon: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus: Option<FiniteGroupFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus: Option<FiniteGroupFunction>,
}

mod opt_rational {
    use super::Rational;
    use crate::rational::{format_rational, parse_rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&format_rational(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(de::Error::custom))
            .transpose()
    }
}

/// Samples `pi` on `(1/N)Z/Z`. `f` must belong to the group.
pub fn restrict_to_finite_group(pi: &PwlPeriodic, n: usize) -> Result<FiniteGroupFunction> {
    if n == 0 {
        return Err(Error::FNotInGroup(n));
    }
    let scaled = pi.f() * BigInt::from(n);
    if !scaled.is_integer() {
        return Err(Error::FNotInGroup(n));
    }
    let f_index = usize::try_from(scaled.to_integer()).map_err(|_| Error::GridTooLarge)?;
    FiniteGroupFunction::new(pi.sample_grid(n), f_index)
}

/// Piecewise-linear interpolation through the group values.
pub fn interpolate_to_infinite_group(h: &FiniteGroupFunction) -> PwlPeriodic {
    PwlPeriodic::from_grid_values(&h.values, h.f())
        .expect("interpolation of a group function is well formed")
}

/// Exhaustive check of nonnegativity, `h(0) = 0`, `h(f) = 1`,
/// subadditivity and symmetry over the group.
pub fn finite_minimality_test(h: &FiniteGroupFunction) -> MinimalityVerdict {
    grid_minimality(&GridValues::new(&h.values), h.f_index, Exec::default())
}

/// Decides extremality via the tight-additivity nullspace and, if `h` is
/// not extreme, returns an explicit decomposition `h = (plus + minus) / 2`.
pub fn finite_extremality_test(h: &FiniteGroupFunction) -> Result<ExtremalityCertificate> {
    finite_extremality_test_with(h, Exec::default())
}

pub fn finite_extremality_test_with(
    h: &FiniteGroupFunction,
    exec: Exec,
) -> Result<ExtremalityCertificate> {
    finite_minimality_test(h).into_result()?;
    let n = h.order();
    let g = GridValues::new(&h.values);
    // unknowns theta(1/N), ..., theta((N-1)/N) in columns 0..N-1
    let col = |i: usize| (i % n).checked_sub(1);
    let mut system = RowEchelon::new(n - 1);
    system.insert([(h.f_index - 1, BigInt::one())]);
    for (i, j) in g.zero_pairs(exec) {
        if system.is_full_rank() {
            break;
        }
        let terms = [(col(i), 1), (col(j), 1), (col(i + j), -1)];
        system.insert(
            terms
                .into_iter()
                .filter_map(|(c, v)| c.map(|c| (c, BigInt::from(v)))),
        );
    }
    if system.is_full_rank() {
        return Ok(ExtremalityCertificate {
            extreme: true,
            perturbation: None,
            epsilon: None,
            plus: None,
            minus: None,
        });
    }

    let basis = system.nullspace();
    let mut theta: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(basis[0].iter().cloned())
        .collect();
    let lead = theta
        .iter()
        .find(|t| !t.is_zero())
        .cloned()
        .expect("nullspace vector is nonzero");
    for t in &mut theta {
        *t = &*t / &lead;
    }
    let theta = FiniteGroupFunction {
        values: theta,
        f_index: h.f_index,
    };
    let epsilon = perturbation_step(h, &theta, exec);
    Ok(ExtremalityCertificate {
        extreme: false,
        plus: Some(h.combine(&theta, &epsilon)),
        minus: Some(h.combine(&theta, &-&epsilon)),
        perturbation: Some(theta),
        epsilon: Some(epsilon),
    })
}

/// Half the largest step keeping `h +- t*theta` nonnegative and subadditive.
fn perturbation_step(h: &FiniteGroupFunction, theta: &FiniteGroupFunction, exec: Exec) -> Rational {
    let n = h.order();
    let hg = GridValues::new(&h.values);
    let tg = GridValues::new(&theta.values);
    let pair_bound = crate::scan::min_over_pairs(exec, n, |i, j| {
        let dt = tg.slack(i, j);
        if dt.is_zero() {
            return None;
        }
        let dh = hg.slack(i, j);
        dh.is_positive().then(|| dh / dt.abs())
    });
    let point_bound = (0..n)
        .filter(|&i| !theta.values[i].is_zero() && h.values[i].is_positive())
        .map(|i| &h.values[i] / theta.values[i].abs())
        .min();
    let bound = match (pair_bound, point_bound) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!("a nonzero theta moves some positive value"),
    };
    bound * half()
}

/// Pulls `h` on `C_M` back along the quotient `C_N -> C_M`, `i -> i mod M`.
///
/// `f_index` selects the preimage of `f`; by default the smallest one.
pub fn pullback_to_refinement(
    h: &FiniteGroupFunction,
    n: usize,
    f_index: Option<usize>,
) -> Result<FiniteGroupFunction> {
    let m = h.order();
    if n == 0 || !n.is_multiple_of(m) {
        return Err(Error::NotADivisor(n, m));
    }
    let f = match f_index {
        None => h.f_index,
        Some(fi) if fi >= n => return Err(Error::FNotPreimage(fi)),
        Some(fi) if fi % m == 0 => return Err(Error::FInKernel),
        Some(fi) if fi % m != h.f_index => return Err(Error::FNotPreimage(fi)),
        Some(fi) => fi,
    };
    let values = (0..n).map(|i| h.values[i % m].clone()).collect();
    FiniteGroupFunction::new(values, f)
}

/// Extremality of a piecewise-linear minimal function via its restriction to
/// the four-times refined grid `(1/4q)Z`.
pub fn interpolation_extremality_test(pi: &PwlPeriodic) -> Result<bool> {
    Ok(interpolation_extremality_certificate(pi)?.extreme)
}

pub fn interpolation_extremality_certificate(pi: &PwlPeriodic) -> Result<ExtremalityCertificate> {
    minimality_test(pi).into_result()?;
    let q = pi.grid_modulus()?;
    let h = restrict_to_finite_group(pi, 4 * q)?;
    finite_extremality_test(&h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

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

    #[test]
    fn restriction_examples() {
        assert_eq!(
            h8().values(),
            &[int(0), rat(1, 2), rat(1, 2), rat(1, 2), int(1), rat(3, 4), rat(1, 2), rat(1, 4)]
        );
        assert_eq!(h8().f_index(), 4);
        assert_eq!(restrict_to_finite_group(&gj(), 5), Err(Error::FNotInGroup(5)));
        let h24 = restrict_to_finite_group(&gj(), 24).unwrap();
        assert_eq!(h24.value(4), &rat(2, 3));
    }

    #[test]
    fn interpolation_examples() {
        let pi8 = interpolate_to_infinite_group(&h8());
        assert_eq!(pi8.breakpoints(), &[int(0), rat(1, 8), rat(3, 8), rat(1, 2), int(1)]);
        assert_eq!(pi8.slope_values(), [int(-2), int(0), int(4)].into_iter().collect());
        assert_eq!(pi8.limiting_slopes().unwrap(), (int(4), int(-2)));
        let h24 = restrict_to_finite_group(&gj(), 24).unwrap();
        assert_eq!(interpolate_to_infinite_group(&h24), gj());
    }

    #[test]
    fn finite_minimality_examples() {
        assert!(finite_minimality_test(&h8()).minimal);
        assert!(finite_minimality_test(&restrict_to_finite_group(&gj(), 24).unwrap()).minimal);
        let mut v = h8().values().to_vec();
        v[4] = int(2);
        let bad = FiniteGroupFunction::new(v, 4).unwrap();
        let verdict = finite_minimality_test(&bad);
        assert!(!verdict.minimal);
        assert_eq!(verdict.witness.unwrap().condition, crate::minimality::Condition::AtF);
    }

    #[test]
    fn extremality_h8_certificate() {
        let cert = finite_extremality_test(&h8()).unwrap();
        assert!(!cert.extreme);
        let plus = cert.plus.unwrap();
        let minus = cert.minus.unwrap();
        assert_ne!(plus, minus);
        assert!(finite_minimality_test(&plus).minimal);
        assert!(finite_minimality_test(&minus).minimal);
        assert_eq!(plus.midpoint(&minus), h8());
        let theta = cert.perturbation.unwrap();
        assert_eq!(theta.value(0), &int(0));
        assert_eq!(theta.value(4), &int(0));
    }

    #[test]
    fn extremality_small_cases() {
        let c2 = FiniteGroupFunction::new(vec![int(0), int(1)], 1).unwrap();
        assert!(finite_extremality_test(&c2).unwrap().extreme);
        assert!(finite_extremality_test(&restrict_to_finite_group(&gj(), 24).unwrap())
            .unwrap()
            .extreme);
        let mut v = h8().values().to_vec();
        v[4] = int(2);
        let bad = FiniteGroupFunction::new(v, 4).unwrap();
        assert!(matches!(finite_extremality_test(&bad), Err(Error::NotMinimal(_))));
    }

    #[test]
    fn pullback_examples() {
        let c2 = FiniteGroupFunction::new(vec![int(0), int(1)], 1).unwrap();
        let p = pullback_to_refinement(&c2, 4, None).unwrap();
        assert_eq!(p.values(), &[int(0), int(1), int(0), int(1)]);
        assert_eq!(p.f_index(), 1);
        assert_eq!(pullback_to_refinement(&c2, 4, Some(2)), Err(Error::FInKernel));
        assert_eq!(pullback_to_refinement(&c2, 4, Some(3)).unwrap().f_index(), 3);
        assert_eq!(pullback_to_refinement(&h8(), 12, None), Err(Error::NotADivisor(12, 8)));
        let p24 = pullback_to_refinement(&h8(), 24, None).unwrap();
        for i in 0..24 {
            assert_eq!(p24.value(i), h8().value(i % 8));
        }
        assert!(finite_minimality_test(&p24).minimal);
    }

    #[test]
    fn interpolation_extremality_examples() {
        assert!(interpolation_extremality_test(&gj()).unwrap());
        let pi8 = interpolate_to_infinite_group(&h8());
        assert!(!interpolation_extremality_test(&pi8).unwrap());
    }
}
