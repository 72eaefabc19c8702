use crate::error::{Error, Result};

/// An `n × p` grid of observations. Columns are the variables being
/// clustered, rows are the observations.
///
/// Storage is column-major since every consumer works one variable at a time.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    n: usize,
    p: usize,
    columns: Vec<f64>,
    col_names: Vec<String>,
}

/// `X1..Xp`.
pub fn default_labels(p: usize) -> Vec<String> {
    (1..=p).map(|j| format!("X{j}")).collect()
}

impl DataMatrix {
    /// Builds a matrix from its columns, labelled `X1..Xp`.
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let p = columns.len();
        Self::from_columns_named(columns, default_labels(p))
    }

    pub fn from_columns_named(columns: Vec<Vec<f64>>, col_names: Vec<String>) -> Result<Self> {
        let p = columns.len();
        if p < 2 {
            return Err(Error::Structural(format!("need at least 2 columns, got {p}")));
        }
        if col_names.len() != p {
            return Err(Error::Structural(format!(
                "{} column labels for {p} columns",
                col_names.len()
            )));
        }
        let n = columns[0].len();
        if n < 2 {
            return Err(Error::Structural(format!("need at least 2 rows, got {n}")));
        }
        let mut flat = Vec::with_capacity(n * p);
        for (j, col) in columns.into_iter().enumerate() {
            if col.len() != n {
                return Err(Error::Structural(format!(
                    "column {} has {} rows, expected {n}",
                    col_names[j],
                    col.len()
                )));
            }
            if let Some(i) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::Structural(format!(
                    "non-finite value at row {}, column {}",
                    i + 1,
                    col_names[j]
                )));
            }
            flat.extend(col);
        }
        Ok(Self {
            n,
            p,
            columns: flat,
            col_names,
        })
    }

    /// Builds a matrix from row-major rows.
    pub fn from_rows(rows: &[Vec<f64>], col_names: Option<Vec<String>>) -> Result<Self> {
        let p = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != p) {
            return Err(Error::Structural(format!(
                "row {} has {} values, expected {p}",
                i + 1,
                rows[i].len()
            )));
        }
        let columns = (0..p).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Self::from_columns_named(columns, col_names.unwrap_or_else(|| default_labels(p)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j * self.n..(j + 1) * self.n]
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.columns[col * self.n + row]
    }

    pub fn col_names(&self) -> &[String] {
        &self.col_names
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.p).map(move |j| self.get(i, j))
    }
}
