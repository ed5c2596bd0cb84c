use crate::arith::{GaussianRational, Poly};
use crate::error::{Error, Result};

/// An `r × m` matrix of holomorphic polynomials, `f: E → Q`.
///
/// Row `j` is the covector `f_j` on `E`; column `k` has declared degree
/// `coldeg[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    n: usize,
    m: usize,
    r: usize,
    entries: Vec<Vec<Poly>>,
    coldeg: Vec<u32>,
}

/// Hard limit from the bitmask representation of exterior words.
pub const MAX_RANK: usize = 31;

impl MorphismData {
    pub fn new(n: usize, entries: Vec<Vec<Poly>>, coldeg: Vec<u32>) -> Result<Self> {
        let r = entries.len();
        if r == 0 {
            return Err(Error::Input("morphism needs at least one row (r ≥ 1)".into()));
        }
        let m = entries[0].len();
        if entries.iter().any(|row| row.len() != m) {
            return Err(Error::Input("ragged morphism rows".into()));
        }
        if r > m {
            return Err(Error::Input(format!("r = {r} exceeds m = {m}")));
        }
        if m > MAX_RANK || n > MAX_RANK {
            return Err(Error::Input(format!("ranks above {MAX_RANK} are not supported")));
        }
        if coldeg.len() != m {
            return Err(Error::Input(format!("{} column degrees for {m} columns", coldeg.len())));
        }
        for (j, row) in entries.iter().enumerate() {
            for (k, p) in row.iter().enumerate() {
                if p.nvars() != n {
                    return Err(Error::Input(format!("entry ({},{}) has {} variables, expected {n}", j + 1, k + 1, p.nvars())));
                }
                if !p.is_holomorphic() {
                    return Err(Error::Input(format!("entry ({},{}) depends on a conjugate variable", j + 1, k + 1)));
                }
                if p.z_degree().unwrap_or(0) > coldeg[k] {
                    return Err(Error::Input(format!(
                        "entry ({},{}) has degree {} above the declared column degree {}",
                        j + 1,
                        k + 1,
                        p.z_degree().unwrap_or(0),
                        coldeg[k]
                    )));
                }
            }
        }
        Ok(Self { n, m, r, entries, coldeg })
    }

    /// Column degrees taken as the actual maximal degree of each column.
    pub fn with_actual_degrees(n: usize, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let m = entries.first().map(|row| row.len()).unwrap_or(0);
        let coldeg = (0..m)
            .map(|k| entries.iter().filter_map(|row| row.get(k).and_then(|p| p.z_degree())).max().unwrap_or(0))
            .collect();
        Self::new(n, entries, coldeg)
    }

    /// Builds from polynomial text, one string per entry, row by row.
    pub fn parse(n: usize, rows: &[&[&str]]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|s| crate::arith::parse_poly(s, n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::with_actual_degrees(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entry(&self, j: usize, k: usize) -> &Poly {
        &self.entries[j][k]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    /// Row `f_j` as a covector on `E`.
    pub fn row(&self, j: usize) -> &[Poly] {
        &self.entries[j]
    }

    pub fn column(&self, k: usize) -> Vec<Poly> {
        self.entries.iter().map(|row| row[k].clone()).collect()
    }

    pub fn coldeg(&self) -> &[u32] {
        &self.coldeg
    }

    /// Column degrees sorted descending.
    pub fn sorted_degrees(&self) -> Vec<u32> {
        let mut d = self.coldeg.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// `f ψ` for an `E`-column `ψ`.
    pub fn apply(&self, psi: &[Poly]) -> Result<Vec<Poly>> {
        if psi.len() != self.m {
            return Err(Error::Input(format!("column of length {} for m = {}", psi.len(), self.m)));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().zip(psi).fold(Poly::zero(self.n), |acc, (a, b)| &acc + &(a * b)))
            .collect())
    }

    /// Entries evaluated at a point, as constants in the same ring.
    pub fn at_point(&self, point: &[GaussianRational]) -> Result<MorphismData> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| Ok(Poly::constant(self.n, p.evaluate(point)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(MorphismData { n: self.n, m: self.m, r: self.r, entries, coldeg: vec![0; self.m] })
    }

    pub fn transposed_entries(&self) -> Vec<Vec<Poly>> {
        (0..self.m).map(|k| self.column(k)).collect()
    }
}

/// `f = [[z1, z2, 0], [0, z1, z2]]` over two variables.
pub fn running_example() -> MorphismData {
    MorphismData::parse(2, &[&["z1", "z2", "0"], &["0", "z1", "z2"]]).expect("valid morphism")
}
