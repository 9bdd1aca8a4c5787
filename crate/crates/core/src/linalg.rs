//! Fraction-free row reduction of sparse integer systems and exact nullspaces.
//!
//! Rows are kept as primitive integer vectors (gcd of entries 1, pivot entry
//! positive). The echelon form is fully reduced: a pivot row has no entries
//! in any other pivot column, so a new row is reduced in one pass and the
//! nullspace can be read off directly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

type Row = BTreeMap<usize, BigInt>;

#[derive(Debug, Clone, Default)]
pub struct RowEchelon {
    ncols: usize,
    pivots: BTreeMap<usize, Row>,
}

fn normalize(row: &mut Row) {
    row.retain(|_, v| !v.is_zero());
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let negate = row.values().next().is_some_and(|v| v.is_negative());
    if !(g.is_zero() || g.is_one()) {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
    if negate {
        for v in row.values_mut() {
            *v = -&*v;
        }
    }
}

/// `a*x - b*y`, normalized.
fn combine(x: &Row, a: &BigInt, y: &Row, b: &BigInt) -> Row {
    let mut out: Row = x.iter().map(|(&k, v)| (k, v * a)).collect();
    for (&k, v) in y {
        let e = out.entry(k).or_insert_with(BigInt::zero);
        *e -= v * b;
    }
    normalize(&mut out);
    out
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ncols
    }

    /// Adds the equation `sum coeff * x[col] = 0`. Returns true if the rank grew.
    pub fn insert<I>(&mut self, entries: I) -> bool
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        let mut row: Row = Row::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            *row.entry(c).or_insert_with(BigInt::zero) += v;
        }
        normalize(&mut row);
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.pivots.contains_key(c))
            .collect();
        for c in hits {
            let Some(rc) = row.get(&c).cloned() else {
                continue;
            };
            let p = &self.pivots[&c];
            row = combine(&row, &p[&c], p, &rc);
        }
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        let lead_val = lead_val.clone();
        for p in self.pivots.values_mut() {
            if let Some(pc) = p.get(&lead).cloned() {
                *p = combine(p, &lead_val, &row, &pc);
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    /// A basis of the nullspace, one vector per free column in increasing
    /// order; each vector has a 1 in its own free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .collect();
        free.iter()
            .map(|&j| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[j] = Rational::one();
                for (&c, p) in &self.pivots {
                    if let Some(pj) = p.get(&j) {
                        v[c] = -Rational::new(pj.clone(), p[&c].clone());
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn rank_and_nullspace_small() {
        // x0 + x1 - x2 = 0, 2x0 + 2x1 - 2x2 = 0, x1 = 0
        let mut e = RowEchelon::new(3);
        assert!(e.insert([(0, b(1)), (1, b(1)), (2, b(-1))]));
        assert!(!e.insert([(0, b(2)), (1, b(2)), (2, b(-2))]));
        assert!(e.insert([(1, b(1))]));
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns, vec![vec![int(1), int(0), int(1)]]);
    }

    #[test]
    fn nullspace_vectors_solve_every_row() {
        let rows: Vec<Vec<(usize, i64)>> = vec![
            vec![(0, 3), (2, -2), (4, 1)],
            vec![(1, 5), (3, 7)],
            vec![(0, 6), (2, -4), (4, 2)],
            vec![(2, 1), (3, -1), (4, 3)],
        ];
        let mut e = RowEchelon::new(5);
        for r in &rows {
            e.insert(r.iter().map(|&(c, v)| (c, b(v))));
        }
        assert_eq!(e.rank(), 3);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                let s: Rational = r.iter().map(|&(c, x)| &v[c] * int(x)).sum();
                assert_eq!(s, int(0));
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let mut e = RowEchelon::new(2);
        e.insert([(0, b(1)), (1, b(1))]);
        e.insert([(0, b(1)), (1, b(-1))]);
        assert!(e.is_full_rank());
        assert!(e.nullspace().is_empty());
    }
}
