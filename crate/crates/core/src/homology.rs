//! Exact integer matrices, Smith normal form and the order of H1.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::diagram::LinkDiagram;
use crate::error::Result;
use crate::pipeline::{analyze, Options};
use crate::presentation::{abelianization_matrix, GroupPresentation};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// `cols` is needed to describe matrices with no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = IntegerMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Removes one row and one column.
    pub fn minor(&self, row: usize, col: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows - 1, self.cols - 1);
        for (i, si) in (0..self.rows).filter(|&i| i != row).enumerate() {
            for (j, sj) in (0..self.cols).filter(|&j| j != col).enumerate() {
                m[(i, j)] = self[(si, sj)].clone();
            }
        }
        m
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_i64()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self[(src, j)] * q;
            self[(dst, j)] -= t;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = &self[(i, src)] * q;
            self[(i, dst)] -= t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Diagonal of the Smith normal form, `min(rows, cols)` entries long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

/// Position of the smallest nonzero |entry| in the block `[t.., t..]`.
fn smallest_pivot(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let x = &m[(i, j)];
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(matrix: &IntegerMatrix) -> SnfResult {
    let mut m = matrix.clone();
    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = smallest_pivot(&m, t) else {
            break;
        };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        // Clear row and column t. A nonzero remainder is a strictly smaller
        // entry, which becomes the next pivot.
        let mut dirty = false;
        for i in t + 1..m.rows {
            if !m[(i, t)].is_zero() {
                let q = m[(i, t)].div_floor(&m[(t, t)]);
                m.sub_row(i, t, &q);
                dirty |= !m[(i, t)].is_zero();
            }
        }
        for j in t + 1..m.cols {
            if !m[(t, j)].is_zero() {
                let q = m[(t, j)].div_floor(&m[(t, t)]);
                m.sub_col(j, t, &q);
                dirty |= !m[(t, j)].is_zero();
            }
        }
        if dirty {
            continue;
        }
        // Divisibility: fold an offending row into row t and retry.
        let pivot = m[(t, t)].clone();
        let offending =
            (t + 1..m.rows).find(|&i| (t + 1..m.cols).any(|j| !m[(i, j)].is_multiple_of(&pivot)));
        if let Some(i) = offending {
            let minus_one = -BigInt::one();
            m.sub_row(t, i, &minus_one);
            continue;
        }
        if m[(t, t)].is_negative() {
            m[(t, t)] = -m[(t, t)].clone();
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..n).map(|i| m[(i, i)].abs()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    SnfResult { diagonal, rank }
}

/// Structure of H1 as the cokernel of the abelianized relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1 {
    /// `None` when H1 is infinite.
    pub order: Option<BigInt>,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl H1 {
    pub fn is_infinite(&self) -> bool {
        self.order.is_none()
    }

    /// The determinant reading of the order: 0 for infinite H1.
    pub fn determinant(&self) -> BigInt {
        self.order.clone().unwrap_or_default()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "determinant": bigint_json(&self.determinant()),
            "invariant_factors": self.torsion.iter().map(bigint_json).collect::<Vec<_>>(),
            "free_rank": self.free_rank,
            "infinite": self.is_infinite(),
        })
    }
}

/// JSON number when the value fits in an `i64`, decimal string otherwise.
pub fn bigint_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

pub fn h1_from_matrix(m: &IntegerMatrix) -> H1 {
    let snf = smith_normal_form(m);
    let free_rank = m.cols() - snf.rank;
    let torsion: Vec<BigInt> = snf
        .diagonal
        .iter()
        .filter(|d| **d > BigInt::one())
        .cloned()
        .collect();
    let order = (free_rank == 0).then(|| torsion.iter().product());
    H1 {
        order,
        torsion,
        free_rank,
    }
}

pub fn h1_order(p: &GroupPresentation) -> H1 {
    h1_from_matrix(&abelianization_matrix(p))
}

/// |H1| of the branched double cover of a connected diagram.
pub fn determinant(d: &LinkDiagram) -> Result<H1> {
    determinant_with(d, &Options::default())
}

pub fn determinant_with(d: &LinkDiagram, options: &Options) -> Result<H1> {
    Ok(h1_order(&analyze(d, options)?.presentation))
}
