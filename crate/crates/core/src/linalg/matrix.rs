use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::int::Int;

/// Matrices below this fraction of nonzero entries are stored sparsely.
pub const SPARSE_DENSITY_THRESHOLD: f64 = 0.10;

/// Integer matrix with dense or row-sparse storage chosen by density.
///
/// Both storages expose the same dense view through [`IntMatrix::get`] and
/// compare equal whenever their entries agree.
#[derive(Clone)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

#[derive(Clone)]
enum Storage {
    Dense(Vec<Int>),
    /// Per row, `(column, value)` pairs sorted by column with no zero values.
    Sparse(Vec<Vec<(usize, Int)>>),
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, storage: Storage::Sparse(vec![Vec::new(); rows]) }
    }

    pub fn identity(n: usize) -> IntMatrix {
        IntMatrix::from_triplets(n, n, (0..n).map(|i| (i, i, Int::ONE)))
    }

    /// Builds from dense rows; every row must have the same length.
    ///
    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Int>>) -> IntMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix rows");
        let data: Vec<Int> = rows.into_iter().flatten().collect();
        IntMatrix { rows: nrows, cols: ncols, storage: Storage::Dense(data) }.with_natural_storage()
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter().map(|r| r.as_ref().iter().map(|&v| Int::from(v)).collect()).collect(),
        )
    }

    /// Sums duplicate positions. Panics if a position is out of bounds.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Int)>,
    ) -> IntMatrix {
        let mut acc: Vec<BTreeMap<usize, Int>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            let slot = acc[r].entry(c).or_insert(Int::ZERO);
            *slot = &*slot + &v;
        }
        let sparse = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        IntMatrix { rows, cols, storage: Storage::Sparse(sparse) }.with_natural_storage()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|v| !v.is_zero()).count(),
            Storage::Sparse(s) => s.iter().map(Vec::len).sum(),
        }
    }

    pub fn density(&self) -> f64 {
        let cells = self.rows * self.cols;
        if cells == 0 {
            0.0
        } else {
            self.nnz() as f64 / cells as f64
        }
    }

    fn with_natural_storage(self) -> IntMatrix {
        if self.density() < SPARSE_DENSITY_THRESHOLD {
            self.to_sparse()
        } else {
            self.to_dense()
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) outside {}x{}", self.rows, self.cols);
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols + c].clone(),
            Storage::Sparse(s) => match s[r].binary_search_by_key(&c, |(col, _)| *col) {
                Ok(k) => s[r][k].1.clone(),
                Err(_) => Int::ZERO,
            },
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let data = match &self.storage {
            Storage::Dense(d) => d.clone(),
            Storage::Sparse(s) => {
                let mut d = vec![Int::ZERO; self.rows * self.cols];
                for (r, row) in s.iter().enumerate() {
                    for (c, v) in row {
                        d[r * self.cols + c] = v.clone();
                    }
                }
                d
            }
        };
        IntMatrix { rows: self.rows, cols: self.cols, storage: Storage::Dense(data) }
    }

    pub fn to_sparse(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, storage: Storage::Sparse(self.sparse_rows()) }
    }

    /// Row-sparse copy of the entries: per row, sorted `(column, value)` pairs.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, Int)>> {
        match &self.storage {
            Storage::Sparse(s) => s.clone(),
            Storage::Dense(d) => (0..self.rows)
                .map(|r| {
                    (0..self.cols)
                        .filter_map(|c| {
                            let v = &d[r * self.cols + c];
                            (!v.is_zero()).then(|| (c, v.clone()))
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn dense_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn row_entries(&self, r: usize) -> Vec<(usize, Int)> {
        match &self.storage {
            Storage::Sparse(s) => s[r].clone(),
            Storage::Dense(d) => (0..self.cols)
                .filter_map(|c| {
                    let v = &d[r * self.cols + c];
                    (!v.is_zero()).then(|| (c, v.clone()))
                })
                .collect(),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut triplets = Vec::with_capacity(self.nnz());
        for (r, row) in self.sparse_rows().into_iter().enumerate() {
            for (c, v) in row {
                triplets.push((c, r, v));
            }
        }
        IntMatrix::from_triplets(self.cols, self.rows, triplets)
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let rhs_rows = rhs.sparse_rows();
        let mut out = Vec::with_capacity(self.rows);
        for row in self.sparse_rows() {
            let mut acc: BTreeMap<usize, Int> = BTreeMap::new();
            for (k, a) in &row {
                for (c, b) in &rhs_rows[*k] {
                    let slot = acc.entry(*c).or_insert(Int::ZERO);
                    *slot = &*slot + &(a * b);
                }
            }
            out.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        IntMatrix { rows: self.rows, cols: rhs.cols, storage: Storage::Sparse(out) }
            .with_natural_storage()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.sparse_rows() == other.sparse_rows()
    }
}

impl Eq for IntMatrix {}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.dense_rows()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Int>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixWire { rows: self.rows, cols: self.cols, entries: self.dense_rows() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        if wire.entries.len() != wire.rows || wire.entries.iter().any(|r| r.len() != wire.cols) {
            return Err(serde::de::Error::custom("matrix entries do not match declared shape"));
        }
        if wire.rows == 0 {
            return Ok(IntMatrix::zeros(0, wire.cols));
        }
        Ok(IntMatrix::from_rows(wire.entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_follows_density() {
        let dense = IntMatrix::from_i64_rows(&[[1, 2], [3, 0]]);
        assert!(!dense.is_sparse());
        let mut rows = vec![vec![0i64; 20]; 20];
        rows[3][7] = 5;
        let sparse = IntMatrix::from_i64_rows(&rows);
        assert!(sparse.is_sparse());
        assert_eq!(sparse.get(3, 7), Int::from(5));
        assert_eq!(sparse.to_dense(), sparse);
        assert_eq!(sparse.to_dense().get(3, 7), Int::from(5));
        assert_eq!(dense.to_sparse().get(1, 0), Int::from(3));
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64_rows(&[[1, 2, 0], [0, -1, 3]]);
        let b = IntMatrix::from_i64_rows(&[[2, 0], [1, 1], [0, 4]]);
        assert_eq!(a.mul(&b), IntMatrix::from_i64_rows(&[[4, 2], [-1, 11]]));
        assert_eq!(a.transpose(), IntMatrix::from_i64_rows(&[[1, 0], [2, -1], [0, 3]]));
        assert!(IntMatrix::zeros(2, 3).mul(&b).is_zero());
    }

    #[test]
    fn triplets_sum_duplicates() {
        let m = IntMatrix::from_triplets(2, 2, [(0, 0, Int::ONE), (0, 0, Int::ONE), (1, 1, Int::ONE), (1, 1, -Int::ONE)]);
        assert_eq!(m, IntMatrix::from_i64_rows(&[[2, 0], [0, 0]]));
    }

    #[test]
    fn json_roundtrip() {
        let m = IntMatrix::from_i64_rows(&[[1, -2], [0, 7]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"entries":[[1,-2],[0,7]]}"#);
        assert_eq!(serde_json::from_str::<IntMatrix>(&s).unwrap(), m);
    }
}
