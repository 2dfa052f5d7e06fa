use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Sparse unsigned incidence matrix `R` (N rows, L columns, 0/1 entries),
/// stored column-major: column `i` lists the rows (communities) of
/// individual `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
}

impl IncidenceMatrix {
    /// Builds `R` from per-column row lists. Duplicate rows within a column
    /// are merged.
    pub fn from_columns<'a, I>(rows: usize, columns: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        let mut col_ptr = vec![0];
        let mut row_idx = Vec::new();
        for (i, col) in columns.into_iter().enumerate() {
            let start = row_idx.len();
            for &r in col {
                if r as usize >= rows {
                    return Err(Error::NodeOutOfRange {
                        link: i,
                        node: r as usize,
                        node_count: rows,
                    });
                }
                row_idx.push(r);
            }
            row_idx[start..].sort_unstable();
            let mut tail = row_idx.split_off(start);
            tail.dedup();
            row_idx.extend(tail);
            col_ptr.push(row_idx.len());
        }
        Ok(Self {
            rows,
            col_ptr,
            row_idx,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.col_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    pub fn column(&self, i: usize) -> &[u32] {
        &self.row_idx[self.col_ptr[i]..self.col_ptr[i + 1]]
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.column(col).binary_search(&(row as u32)).is_ok()
    }

    /// Column sums: the overlapping depth of each individual.
    pub fn column_sums(&self) -> Vec<usize> {
        self.col_ptr.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Row sums: the size of each community.
    pub fn row_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.rows];
        for &r in &self.row_idx {
            sums[r as usize] += 1;
        }
        sums
    }

    pub fn max_column_sum(&self) -> usize {
        self.column_sums().into_iter().max().unwrap_or(0)
    }

    pub fn to_dense(&self) -> DMatrix<i64> {
        let mut m = DMatrix::zeros(self.rows, self.cols());
        for i in 0..self.cols() {
            for &r in self.column(i) {
                m[(r as usize, i)] = 1;
            }
        }
        m
    }
}
