//! Named example functions and a seeded generator of minimal functions.

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::{interpolate_to_infinite_group, restrict_to_finite_group};
use crate::minimality::minimality_test;
use crate::pwl::PwlPeriodic;
use crate::rational::{half, int, rat, Rational};

fn check_f(f: &Rational) -> Result<()> {
    if f.is_positive() && *f < int(1) {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange(format!(
            "f = {} must lie in (0, 1)",
            crate::rational::format_rational(f)
        )))
    }
}

/// Gomory-Johnson's two-slope family with breakpoints
/// `0, f(1-lambda)/2, f(1+lambda)/2, f, 1`.
///
/// The negative slope `-1/(1-f)` is used on the middle and last segments and
/// the positive slope is fixed by `pi(f) = 1`.
pub fn gj_2_slope(f: &Rational, lambda: &Rational) -> Result<PwlPeriodic> {
    check_f(f)?;
    if !(lambda.is_positive() && *lambda <= int(1)) {
        return Err(Error::ParamOutOfRange("lambda must lie in (0, 1]".into()));
    }
    if *lambda == int(1) {
        return gmic(f);
    }
    let one = Rational::one();
    let s_minus = -(&one / (&one - f));
    let s_plus = (&one - &s_minus * f * lambda) / (f * (&one - lambda));
    let b1 = f * (&one - lambda) * half();
    let b2 = f * (&one + lambda) * half();
    let v1 = &s_plus * &b1;
    let v2 = &v1 + &s_minus * (&b2 - &b1);
    let bps = vec![int(0), b1, b2, f.clone(), int(1)];
    let vals = vec![int(0), v1, v2, int(1), int(0)];
    let pi = PwlPeriodic::from_breakpoints(bps, vals, f.clone())?;
    if let Some(w) = minimality_test(&pi).witness {
        return Err(Error::ParamOutOfRange(format!("result is not minimal: {w}")));
    }
    Ok(pi)
}

/// The Gomory mixed-integer cut function: rises to 1 at `f`, falls back to 0.
pub fn gmic(f: &Rational) -> Result<PwlPeriodic> {
    check_f(f)?;
    PwlPeriodic::from_breakpoints(vec![int(0), f.clone(), int(1)], vec![int(0), int(1), int(0)], f.clone())
}

/// Pointwise convex combination `t * a + (1 - t) * b` of two functions with
/// the same `f`.
pub fn convex_combination(a: &PwlPeriodic, b: &PwlPeriodic, t: &Rational) -> Result<PwlPeriodic> {
    if a.f() != b.f() {
        return Err(Error::ParamOutOfRange("right-hand sides differ".into()));
    }
    let mut xs: Vec<Rational> = a.breakpoints().iter().chain(b.breakpoints()).cloned().collect();
    xs.sort();
    xs.dedup();
    let s = Rational::one() - t;
    let vals = xs.iter().map(|x| t * a.evaluate(x) + &s * b.evaluate(x)).collect();
    PwlPeriodic::from_breakpoints(xs, vals, a.f().clone())
}

fn random_f(rng: &mut ChaCha8Rng, q_max: usize) -> Rational {
    let den = rng.gen_range(2..=q_max) as i64;
    let num = rng.gen_range(1..den);
    rat(num, den)
}

fn random_base(rng: &mut ChaCha8Rng, f: &Rational) -> Result<PwlPeriodic> {
    if rng.gen_bool(0.25) {
        return gmic(f);
    }
    let den = rng.gen_range(2..=6);
    let num = rng.gen_range(1..den);
    gj_2_slope(f, &rat(num, den))
}

/// Restricts to a random group of order at most `q_max` containing `f` and
/// interpolates back; always done when `pi` lives on too fine a grid.
fn coarsen(rng: &mut ChaCha8Rng, pi: PwlPeriodic, q_max: usize) -> PwlPeriodic {
    let fits = pi.grid_modulus().map(|q| q <= q_max).unwrap_or(false);
    if fits && rng.gen_bool(0.5) {
        return pi;
    }
    let fden = usize::try_from(pi.f().denom().clone()).expect("small denominator");
    let choices: Vec<usize> = (1..=q_max / fden).map(|k| k * fden).collect();
    let n = choices[rng.gen_range(0..choices.len())];
    interpolate_to_infinite_group(&restrict_to_finite_group(&pi, n).expect("f lies in the group"))
}

/// Deterministic minimal function with breakpoints and `f` in `(1/q)Z` for
/// some `q <= q_max`, strictly positive away from the integers.
///
/// Built from two-slope and GMIC functions by restriction and interpolation
/// on random grids and by convex combination; unsuitable candidates are
/// redrawn, and plain GMIC functions mostly are too.
pub fn random_minimal(seed: u64, q_max: usize) -> PwlPeriodic {
    assert!(q_max >= 2, "q_max must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let f = random_f(&mut rng, q_max);
        let Ok(base) = random_base(&mut rng, &f) else {
            continue;
        };
        let mut pi = coarsen(&mut rng, base, q_max);
        if rng.gen_bool(0.4) {
            let Ok(other) = random_base(&mut rng, &f) else {
                continue;
            };
            let other = coarsen(&mut rng, other, q_max);
            let t = rat(rng.gen_range(1..4), 4);
            pi = convex_combination(&pi, &other, &t).expect("same f");
        }
        let fits = pi.grid_modulus().map(|q| q <= q_max).unwrap_or(false);
        let positive = pi.values()[1..pi.num_segments()].iter().all(|v| v.is_positive());
        // GMIC itself is kept only occasionally so the corpus is not dominated by it
        let shape = pi.num_segments() > 2 || rng.gen_bool(0.1);
        if fits && positive && shape && minimality_test(&pi).minimal {
            return pi;
        }
    }
}
