use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gf2::{Gf2Matrix, Gf2Vector};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics if `rows` is ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but with an explicit column count, so that
    /// matrices with zero rows keep their shape.
    pub fn from_rows_with_cols<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / self.cols.max(1), k % self.cols.max(1), v))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mod2(&self) -> Gf2Matrix {
        let rows = (0..self.rows)
            .map(|i| {
                let mut v = Gf2Vector::zeros(self.cols);
                for j in 0..self.cols {
                    if self.get(i, j).is_odd() {
                        v.set(j, true);
                    }
                }
                v
            })
            .collect();
        Gf2Matrix::new(self.cols, rows)
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

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt, from_col: usize) {
        for j in from_col..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let d = s * q;
                self.data[dst * self.cols + j] -= d;
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt, from_row: usize) {
        for i in from_row..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let d = s * q;
                self.data[i * self.cols + dst] -= d;
            }
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form summary: the diagonal `d_1 | d_2 | ...` padded with
/// zeros to `min(rows, cols)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<BigInt>,
}

impl SmithForm {
    pub(crate) fn from_invariants(rows: usize, cols: usize, mut nonzero: Vec<BigInt>) -> Self {
        nonzero.sort();
        let mut diag = nonzero;
        diag.resize(rows.min(cols), BigInt::zero());
        Self { rows, cols, diag }
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }

    /// Free rank of the cokernel of the map `Z^cols -> Z^rows`.
    pub fn cokernel_free_rank(&self) -> usize {
        self.rows - self.rank()
    }

    pub fn divisibility_holds(&self) -> bool {
        let nz: Vec<&BigInt> = self.diag.iter().filter(|d| !d.is_zero()).collect();
        nz.windows(2).all(|w| (w[1] % w[0]).is_zero())
            && self.diag.iter().skip(nz.len()).all(Zero::is_zero)
            && self.diag.iter().all(|d| !d.is_negative())
    }
}

/// Smith normal form by unimodular row and column operations, always pivoting
/// on the entry of smallest nonzero absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&a, t, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let x = a.get(i, t);
                if !x.is_zero() {
                    let q = x.div_floor(&p);
                    a.sub_row(i, t, &q, t);
                    dirty |= !a.get(i, t).is_zero();
                }
            }
            for j in t + 1..cols {
                let x = a.get(t, j);
                if !x.is_zero() {
                    let q = x.div_floor(&p);
                    a.sub_col(j, t, &q, t);
                    dirty |= !a.get(t, j).is_zero();
                }
            }
            if dirty {
                // a smaller remainder appeared in the pivot row or column
                let (bi, bj) = smallest_in_cross(&a, t);
                a.swap_rows(t, bi);
                a.swap_cols(t, bj);
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(a.get(i, j) % &p).is_zero());
            match bad {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    a.sub_row(t, i, &minus_one, t);
                }
                None => break,
            }
        }
        t += 1;
    }
    let nonzero: Vec<BigInt> = (0..rows.min(cols))
        .map(|i| a.get(i, i).abs())
        .filter(|d| !d.is_zero())
        .collect();
    SmithForm::from_invariants(rows, cols, nonzero)
}

fn smallest_entry(a: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in r0..a.rows {
        for j in c0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| &ax < b) {
                let unit = ax.is_one();
                best = Some((i, j, ax));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, a.get(t, t).abs());
    let mut consider = |i: usize, j: usize| {
        let x = a.get(i, j);
        if !x.is_zero() && (x.abs() < best.2 || best.2.is_zero()) {
            best = (i, j, x.abs());
        }
    };
    for i in t..a.rows {
        consider(i, t);
    }
    for j in t..a.cols {
        consider(t, j);
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(s: &SmithForm) -> Vec<i64> {
        s.diag.iter().map(|d| d.try_into().unwrap()).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(diag(&smith_normal_form(&IntMatrix::identity(2))), vec![1, 1]);
        let col = IntMatrix::from_rows(&[vec![2], vec![2], vec![2], vec![2]]);
        let s = smith_normal_form(&col);
        assert_eq!(diag(&s), vec![2]);
        assert_eq!(s.cokernel_free_rank(), 3);
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(diag(&smith_normal_form(&d)), vec![2, 2]);
    }

    #[test]
    fn needs_divisibility_fixup() {
        let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(diag(&smith_normal_form(&d)), vec![1, 6]);
        let m = IntMatrix::from_rows(&[vec![4, 6, 0], vec![6, 9, 0], vec![0, 0, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag(&s), vec![1, 0, 0]);
        assert!(s.divisibility_holds());
    }

    #[test]
    fn degenerate_shapes() {
        let s = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert!(s.diag.is_empty());
        assert_eq!(s.rank(), 0);
        let s = smith_normal_form(&IntMatrix::zeros(3, 0));
        assert_eq!(s.cokernel_free_rank(), 3);
    }
}
