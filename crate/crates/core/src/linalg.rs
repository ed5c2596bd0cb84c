//! Exact sparse linear algebra over the Gaussian rationals.

use std::collections::BTreeMap;

use crate::arith::GaussianRational;

/// Sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, GaussianRational)>;

/// `a - c * b`, both sorted.
fn axpy(a: &SparseRow, c: &GaussianRational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|t| t.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|t| t.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -&(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form with monic pivot rows keyed by leading column.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            if let Some(p) = self.pivots.get(&col) {
                let c = row[k].1.clone();
                row = axpy(&row, &c, p);
                // Entries before position k are unchanged; position k was cancelled.
            } else {
                k += 1;
            }
        }
        row
    }

    /// Adds a row; returns its leading column if it was independent.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let row = self.reduce(row);
        let (lead, lc) = row.first()?.clone();
        let inv = lc.inv().expect("nonzero pivot");
        let row = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.pivots.insert(lead, row);
        Some(lead)
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Back substitution for the augmented system whose right-hand side is
    /// column `rhs_col` (greater than every unknown). Free unknowns are 0.
    pub fn solve(&self, rhs_col: usize) -> Option<BTreeMap<usize, GaussianRational>> {
        if self.pivots.contains_key(&rhs_col) {
            return None;
        }
        let mut x: BTreeMap<usize, GaussianRational> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut v = GaussianRational::zero();
            for (c, a) in row.iter().skip(1) {
                if *c == rhs_col {
                    v += a;
                } else if let Some(xc) = x.get(c) {
                    v -= &(a * xc);
                }
            }
            if !v.is_zero() {
                x.insert(col, v);
            }
        }
        Some(x)
    }
}

/// Rank of a dense matrix.
pub fn rank(mat: Vec<Vec<GaussianRational>>) -> usize {
    let mut e = Echelon::new();
    for row in mat {
        let sparse: SparseRow = row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        e.insert(sparse);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from_integer(v)
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![vec![g(1), g(2)], vec![g(2), g(4)]]), 1);
        assert_eq!(rank(vec![vec![g(0), g(1)], vec![g(1), g(0)]]), 2);
        let i = GaussianRational::i();
        assert_eq!(rank(vec![vec![g(1), i.clone()], vec![i.clone(), g(-1)]]), 1);
        assert_eq!(rank(vec![]), 0);
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        // x + y = 3, x - y = 1
        let mut e = Echelon::new();
        e.insert(vec![(0, g(1)), (1, g(1)), (2, g(3))]);
        e.insert(vec![(0, g(1)), (1, g(-1)), (2, g(1))]);
        let x = e.solve(2).unwrap();
        assert_eq!(x[&0], g(2));
        assert_eq!(x[&1], g(1));
        let mut bad = Echelon::new();
        bad.insert(vec![(0, g(1)), (1, g(1))]);
        bad.insert(vec![(0, g(1)), (1, g(2))]);
        assert!(bad.solve(1).is_none());
    }
}
