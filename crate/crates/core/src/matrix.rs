//! Dense matrices over a [`Field`] with exact elimination.

use crate::error::{Error, Result};
use crate::field::{Element, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&e| self.field.format(e)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    /// Product of the pivots met during elimination, with row-swap signs.
    pub det_factor: Element,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Element>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for &e in &data {
            field.check(e)?;
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Element>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "ragged rows: {} vs {cols} entries",
                r.len()
            )));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    /// `rows x cols` matrix with no entries checked; `cols` kept for empty row sets.
    pub fn with_cols(field: &Field, cols: usize, rows: Vec<Vec<Element>>) -> Result<Matrix> {
        if rows.is_empty() {
            return Ok(Matrix::zeros(field, 0, cols));
        }
        let m = Matrix::from_rows(field, &rows)?;
        if m.cols != cols {
            return Err(Error::Dimension(format!(
                "expected {cols} columns, got {}",
                m.cols
            )));
        }
        Ok(m)
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Element::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Element::ONE;
        }
        m
    }

    /// Entry `(i, j)` is `points[j]^i`.
    pub fn vandermonde(field: &Field, points: &[Element], num_rows: usize) -> Result<Matrix> {
        if num_rows == 0 {
            return Err(Error::Dimension(
                "Vandermonde matrix needs at least one row".into(),
            ));
        }
        check_distinct(points)?;
        let mut m = Matrix::zeros(field, num_rows, points.len());
        for (j, &x) in points.iter().enumerate() {
            field.check(x)?;
            let mut power = Element::ONE;
            for i in 0..num_rows {
                m.data[i * points.len() + j] = power;
                power = field.mul(power, x);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Element {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Element) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Element] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Element> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Element>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix> {
        check_subset(cols, self.cols)?;
        let mut m = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.data[i * cols.len() + jj] = self.get(i, j);
            }
        }
        Ok(m)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Matrix> {
        check_subset(rows, self.rows)?;
        let data = rows
            .iter()
            .flat_map(|&i| self.row(i).iter().copied())
            .collect();
        Ok(Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            data,
        })
    }

    pub fn remove_column(&self, j: usize) -> Result<Matrix> {
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                limit: self.cols,
            });
        }
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select_columns(&keep)
    }

    pub fn append_column(&self, col: &[Element]) -> Result<Matrix> {
        if col.len() != self.rows {
            return Err(Error::Dimension(format!(
                "column of length {} for {} rows",
                col.len(),
                self.rows
            )));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.push(self.field.check(col[i])?);
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols + 1,
            data,
        })
    }

    pub fn append_row(&self, row: &[Element]) -> Result<Matrix> {
        if row.len() != self.cols {
            return Err(Error::Dimension(format!(
                "row of length {} for {} columns",
                row.len(),
                self.cols
            )));
        }
        for &e in row {
            self.field.check(e)?;
        }
        let mut m = self.clone();
        m.data.extend_from_slice(row);
        m.rows += 1;
        Ok(m)
    }

    /// `M x^T` as a vector of length `rows`.
    pub fn mul_vec(&self, x: &[Element]) -> Result<Vec<Element>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| dot(&self.field, self.row(i), x))
            .collect())
    }

    /// `x M` for a row vector `x` of length `rows`.
    pub fn vec_mul(&self, x: &[Element]) -> Result<Vec<Element>> {
        if x.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} rows",
                x.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut out = vec![Element::ZERO; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(xi, a));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            out.extend(other.vec_mul(self.row(i))?);
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting.
    pub fn echelon(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut det = Element::ONE;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
                det = f.neg(det);
            }
            let pivot = m.get(r, c);
            det = f.mul(det, pivot);
            let pinv = f.inv(pivot).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, pinv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            reduced: m,
            pivots,
            det_factor: det,
        }
    }

    /// Rank of the whole matrix, or of the given column subset.
    pub fn rank(&self, column_subset: Option<&[usize]>) -> Result<usize> {
        match column_subset {
            None => Ok(self.echelon().pivots.len()),
            Some(cols) => Ok(self.select_columns(cols)?.echelon().pivots.len()),
        }
    }

    pub fn determinant(&self) -> Result<Element> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let e = self.echelon();
        Ok(if e.pivots.len() == self.rows {
            e.det_factor
        } else {
            Element::ZERO
        })
    }

    /// Basis (as rows) of the right null space `{x : M x^T = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let f = &self.field;
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.set(b, fc, Element::ONE);
            for (r, &pc) in e.pivots.iter().enumerate() {
                basis.set(b, pc, f.neg(e.reduced.get(r, fc)));
            }
        }
        basis
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space_basis(&self) -> Matrix {
        let e = self.echelon();
        let keep: Vec<usize> = (0..e.pivots.len()).collect();
        e.reduced
            .select_rows(&keep)
            .expect("pivot rows are in range")
    }

    /// Indices of a maximal linearly independent set of rows, chosen greedily
    /// in order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut rank = 0;
        for i in 0..self.rows {
            let mut trial = chosen.clone();
            trial.push(i);
            let r = self
                .select_rows(&trial)
                .expect("rows in range")
                .echelon()
                .pivots
                .len();
            if r > rank {
                rank = r;
                chosen = trial;
            }
        }
        chosen
    }

    pub fn entries_formatted(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&e| self.field.format(e)).collect())
            .collect()
    }
}

pub fn dot(field: &Field, a: &[Element], b: &[Element]) -> Element {
    a.iter().zip(b).fold(Element::ZERO, |acc, (&x, &y)| {
        field.add(acc, field.mul(x, y))
    })
}

pub(crate) fn check_distinct(points: &[Element]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::RepeatedPoint(i, j));
            }
        }
    }
    Ok(())
}

fn check_subset(idx: &[usize], limit: usize) -> Result<()> {
    for (a, &i) in idx.iter().enumerate() {
        if i >= limit {
            return Err(Error::IndexOutOfRange { index: i, limit });
        }
        if idx[..a].contains(&i) {
            return Err(Error::Dimension(format!("index {i} repeated")));
        }
    }
    Ok(())
}
