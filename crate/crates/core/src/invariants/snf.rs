//! Smith normal form over the integers.
//!
//! Runs on `i64` with every operation overflow-checked and restarts on
//! `BigInt` if any step would overflow. Pivot rule: smallest nonzero absolute
//! value in the remaining block, ties broken by row-major position.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl Matrix<BigInt> {
    pub fn mul(&self, other: &Matrix<BigInt>) -> Matrix<BigInt> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Integer entries with overflow reporting.
trait Entry: Clone + PartialEq + Zero + One + Debug {
    fn sub_(&self, o: &Self) -> Option<Self>;
    fn mul_(&self, o: &Self) -> Option<Self>;
    fn div_(&self, o: &Self) -> Option<Self>;
    fn abs_(&self) -> Option<Self>;
    fn divides(&self, o: &Self) -> bool;
    fn negative(&self) -> bool;
    fn lt_(&self, o: &Self) -> bool;
    fn big(&self) -> BigInt;
}

impl Entry for i64 {
    fn sub_(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn abs_(&self) -> Option<Self> {
        self.checked_abs()
    }
    fn divides(&self, o: &Self) -> bool {
        o.checked_rem(*self) == Some(0)
    }
    fn negative(&self) -> bool {
        *self < 0
    }
    fn lt_(&self, o: &Self) -> bool {
        self < o
    }
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn sub_(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        // Truncating division, matching i64.
        let (q, _) = self.div_rem(o);
        Some(q)
    }
    fn abs_(&self) -> Option<Self> {
        Some(self.abs())
    }
    fn divides(&self, o: &Self) -> bool {
        o.is_multiple_of(self)
    }
    fn negative(&self) -> bool {
        self.is_negative()
    }
    fn lt_(&self, o: &Self) -> bool {
        self < o
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    /// Nonzero invariant factors, each dividing the next.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    /// Unimodular `left` and `right` with `left · A · right = D`.
    pub left: Matrix<BigInt>,
    pub right: Matrix<BigInt>,
    pub diagonal: Matrix<BigInt>,
    /// Whether the `i64` pass overflowed and the result came from `BigInt`.
    pub promoted: bool,
}

struct Work<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
}

impl<T: Entry> Work<T> {
    /// row[dst] -= q * row[src], on A and U.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols {
                let d = m.get(dst, j).sub_(&q.mul_(m.get(src, j))?)?;
                m.set(dst, j, d);
            }
        }
        Some(())
    }

    /// col[dst] -= q * col[src], on A and V.
    fn col_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for m in [&mut self.a, &mut self.v] {
            for i in 0..m.rows {
                let d = m.get(i, dst).sub_(&q.mul_(m.get(i, src))?)?;
                m.set(i, dst, d);
            }
        }
        Some(())
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols {
                let d = T::zero().sub_(m.get(r, j))?;
                m.set(r, j, d);
            }
        }
        Some(())
    }
}

fn reduce<T: Entry>(a: Matrix<T>) -> Option<Work<T>> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work { a, u: Matrix::identity(m), v: Matrix::identity(n) };
    for t in 0..m.min(n) {
        // Smallest nonzero |entry| in the block, row-major tie-break.
        let mut pivot: Option<(usize, usize, T)> = None;
        for i in t..m {
            for j in t..n {
                let x = w.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs_()?;
                if pivot.as_ref().is_none_or(|(_, _, best)| ax.lt_(best)) {
                    pivot = Some((i, j, ax));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a.get(t, t).clone();
            for i in t + 1..m {
                if !w.a.get(i, t).is_zero() {
                    let q = w.a.get(i, t).div_(&p)?;
                    w.row_axpy(i, t, &q)?;
                }
            }
            for j in t + 1..n {
                if !w.a.get(t, j).is_zero() {
                    let q = w.a.get(t, j).div_(&p)?;
                    w.col_axpy(j, t, &q)?;
                }
            }
            // Any remainder is smaller than the pivot; move the smallest in.
            let mut best: Option<(bool, usize, T)> = None;
            for i in t + 1..m {
                let x = w.a.get(i, t);
                if !x.is_zero() {
                    let ax = x.abs_()?;
                    if best.as_ref().is_none_or(|(_, _, b)| ax.lt_(b)) {
                        best = Some((true, i, ax));
                    }
                }
            }
            for j in t + 1..n {
                let x = w.a.get(t, j);
                if !x.is_zero() {
                    let ax = x.abs_()?;
                    if best.as_ref().is_none_or(|(_, _, b)| ax.lt_(b)) {
                        best = Some((false, j, ax));
                    }
                }
            }
            match best {
                Some((true, i, _)) => {
                    w.swap_rows(t, i);
                    continue;
                }
                Some((false, j, _)) => {
                    w.swap_cols(t, j);
                    continue;
                }
                None => {}
            }
            // Row and column are clear; enforce divisibility of the block.
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !p.divides(w.a.get(i, j)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // row[t] += row[i]
                    let minus_one = T::zero().sub_(&T::one())?;
                    w.row_axpy(t, i, &minus_one)?;
                }
                None => break,
            }
        }
        if w.a.get(t, t).negative() {
            w.negate_row(t)?;
        }
    }
    Some(w)
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(matrix: &Matrix<i64>) -> SmithNormalForm {
    let (work, promoted) = match reduce(matrix.clone()) {
        Some(w) => (Work { a: w.a.map(Entry::big), u: w.u.map(Entry::big), v: w.v.map(Entry::big) }, false),
        None => (reduce(matrix.map(|x| BigInt::from(*x))).expect("BigInt never overflows"), true),
    };
    let k = work.a.rows().min(work.a.cols());
    let factors: Vec<BigInt> = (0..k).map(|i| work.a.get(i, i).clone()).take_while(|d| !d.is_zero()).collect();
    SmithNormalForm { rank: factors.len(), factors, left: work.u, right: work.v, diagonal: work.a, promoted }
}
