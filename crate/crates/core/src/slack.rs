//! Grid values over a common denominator, for fast exact slack scans.
//!
//! `Delta(i/n, j/n) = v[i] + v[j] - v[(i+j) mod n]`. The values are scaled by
//! the lcm of their denominators so scans only touch integers; machine `i128`
//! is used whenever every scaled value is small enough that no sum of three
//! can overflow.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;
use crate::scan::{self, Exec};

#[derive(Debug, Clone)]
pub struct GridValues {
    scale: BigInt,
    nums: Nums,
}

#[derive(Debug, Clone)]
enum Nums {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

trait Num: Clone + Ord + Zero + Send + Sync
where
    for<'a> &'a Self: Add<&'a Self, Output = Self> + Sub<&'a Self, Output = Self>,
{
}

impl Num for i128 {}
impl Num for BigInt {}

fn slack_of<T: Num>(v: &[T], i: usize, j: usize) -> T
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = v.len();
    &(&v[i] + &v[j]) - &v[(i + j) % n]
}

fn first_negative<T: Num>(exec: Exec, v: &[T]) -> Option<(usize, usize)>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    scan::first_pair(exec, v.len(), |i, j| slack_of(v, i, j) < T::zero())
}

fn min_positive<T: Num>(exec: Exec, v: &[T]) -> Option<T>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    scan::min_over_pairs(exec, v.len(), |i, j| {
        let s = slack_of(v, i, j);
        (s > T::zero()).then_some(s)
    })
}

fn zero_pairs<T: Num>(exec: Exec, v: &[T]) -> Vec<(usize, usize)>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    scan::collect_pairs(exec, v.len(), |i, j| slack_of(v, i, j).is_zero())
}

fn first_asymmetric<T: Num>(exec: Exec, v: &[T], f: usize) -> Option<usize>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = v.len();
    scan::first_index(exec, n, |x| {
        let y = (f + n - x) % n;
        &v[x] + &v[y] != v[f]
    })
}

impl GridValues {
    /// `values[i]` is the value at `i/n`, `n = values.len()`.
    pub fn new(values: &[Rational]) -> Self {
        let scale = values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let big: Vec<BigInt> = values
            .iter()
            .map(|v| v.numer() * (&scale / v.denom()))
            .collect();
        let fits = big.iter().all(|b| b.bits() < 120);
        let nums = if fits {
            Nums::Small(big.iter().map(|b| b.to_i128().expect("checked bit length")).collect())
        } else {
            Nums::Big(big)
        };
        GridValues { scale, nums }
    }

    pub fn len(&self) -> usize {
        match &self.nums {
            Nums::Small(v) => v.len(),
            Nums::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn unscale(&self, x: BigInt) -> Rational {
        Rational::new(x, self.scale.clone())
    }

    pub fn value(&self, i: usize) -> Rational {
        match &self.nums {
            Nums::Small(v) => self.unscale(BigInt::from(v[i])),
            Nums::Big(v) => self.unscale(v[i].clone()),
        }
    }

    pub fn slack(&self, i: usize, j: usize) -> Rational {
        match &self.nums {
            Nums::Small(v) => self.unscale(BigInt::from(slack_of(v, i, j))),
            Nums::Big(v) => self.unscale(slack_of(v, i, j)),
        }
    }

    pub fn is_negative_at(&self, i: usize) -> bool {
        match &self.nums {
            Nums::Small(v) => v[i] < 0,
            Nums::Big(v) => v[i].is_negative(),
        }
    }

    /// Lexicographically smallest `(i, j)`, `i <= j`, with negative slack.
    pub fn first_negative(&self, exec: Exec) -> Option<(usize, usize)> {
        match &self.nums {
            Nums::Small(v) => first_negative(exec, v),
            Nums::Big(v) => first_negative(exec, v),
        }
    }

    /// Smallest strictly positive slack over `i <= j`.
    pub fn min_positive(&self, exec: Exec) -> Option<Rational> {
        match &self.nums {
            Nums::Small(v) => min_positive(exec, v).map(|s| self.unscale(BigInt::from(s))),
            Nums::Big(v) => min_positive(exec, v).map(|s| self.unscale(s)),
        }
    }

    /// All `(i, j)`, `i <= j`, with zero slack, sorted.
    pub fn zero_pairs(&self, exec: Exec) -> Vec<(usize, usize)> {
        match &self.nums {
            Nums::Small(v) => zero_pairs(exec, v),
            Nums::Big(v) => zero_pairs(exec, v),
        }
    }

    /// Smallest `x` with `v[x] + v[f - x] != v[f]`.
    pub fn first_asymmetric(&self, exec: Exec, f_index: usize) -> Option<usize> {
        match &self.nums {
            Nums::Small(v) => first_asymmetric(exec, v, f_index),
            Nums::Big(v) => first_asymmetric(exec, v, f_index),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn h8() -> Vec<Rational> {
        vec![int(0), rat(1, 2), rat(1, 2), rat(1, 2), int(1), rat(3, 4), rat(1, 2), rat(1, 4)]
    }

    #[test]
    fn slack_matches_direct_arithmetic() {
        let g = GridValues::new(&h8());
        assert_eq!(g.slack(2, 3), rat(1, 4));
        assert_eq!(g.slack(1, 3), int(0));
        assert_eq!(g.value(5), rat(3, 4));
        assert_eq!(g.min_positive(Exec::default()), Some(rat(1, 4)));
        assert_eq!(g.first_negative(Exec::default()), None);
        assert_eq!(g.first_asymmetric(Exec::default(), 4), None);
    }

    #[test]
    fn big_path_agrees_with_small_path() {
        let tiny = Rational::new(BigInt::from(1), BigInt::from(1) << 200);
        let small = GridValues::new(&h8());
        assert!(matches!(small.nums, Nums::Small(_)));
        let mut skew = h8();
        skew[7] = &skew[7] + &tiny;
        let big = GridValues::new(&skew);
        assert!(matches!(big.nums, Nums::Big(_)));
        assert_eq!(big.slack(3, 4), small.slack(3, 4) - &tiny);
        assert_eq!(big.slack(2, 3), small.slack(2, 3));
        assert_eq!(big.min_positive(Exec::Sequential), big.min_positive(Exec::default()));
        assert_eq!(big.zero_pairs(Exec::Sequential), big.zero_pairs(Exec::default()));
    }
}
