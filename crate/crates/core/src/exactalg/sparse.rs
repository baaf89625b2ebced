use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::intmat::{smith_normal_form, IntMatrix, SmithForm};

/// Column-major sparse integer matrix, used for the large boundary matrices of
/// the quotient triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    /// Sets column `c`; entries are summed per row and zeros dropped.
    pub fn set_column(&mut self, c: usize, entries: impl IntoIterator<Item = (usize, i64)>) {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (r, v) in entries {
            assert!(r < self.nrows, "row {r} out of range");
            *acc.entry(r).or_default() += v;
        }
        self.cols[c] = acc.into_iter().filter(|&(_, v)| v != 0).collect();
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.nrows, self.ncols);
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                m.set(r, c, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let mut s = Self::new(m.nrows(), m.ncols());
        for c in 0..m.ncols() {
            let entries: Vec<(usize, i64)> = (0..m.nrows())
                .filter_map(|r| {
                    let v = m.get(r, c);
                    (!v.is_zero()).then(|| {
                        (r, i64::try_from(v).expect("entry does not fit in i64"))
                    })
                })
                .collect();
            s.cols[c] = entries;
        }
        s
    }

    /// Product `self * rhs`, checked for overflow.
    pub fn mul(&self, rhs: &SparseIntMatrix) -> Option<SparseIntMatrix> {
        assert_eq!(self.ncols, rhs.nrows);
        let mut out = SparseIntMatrix::new(self.nrows, rhs.ncols);
        for (c, col) in rhs.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(k, b) in col {
                for &(r, a) in &self.cols[k] {
                    let e = acc.entry(r).or_default();
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            out.cols[c] = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Smith normal form. Unit pivots are eliminated sparsely (cheapest first);
    /// whatever remains is handed to the dense routine. Entries are `i64` with
    /// overflow checks and the whole run is repeated with big integers if any
    /// check fails.
    pub fn smith_form(&self) -> SmithForm {
        match eliminate_units::<i64>(self, |v| v) {
            Some(res) => res.finish(self.nrows, self.ncols),
            None => eliminate_units::<BigInt>(self, BigInt::from)
                .expect("big integer elimination cannot overflow")
                .finish(self.nrows, self.ncols),
        }
    }

    /// Rank of the reduction modulo 2.
    pub fn rank_mod2(&self) -> usize {
        let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut rank = 0;
        for col in &self.cols {
            let mut v: Vec<usize> = col
                .iter()
                .filter(|&&(_, x)| x.rem_euclid(2) == 1)
                .map(|&(r, _)| r)
                .collect();
            while let Some(&low) = v.last() {
                match pivots.get(&low) {
                    Some(p) => v = xor_sorted(&v, p),
                    None => {
                        pivots.insert(low, v);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

trait Entry: Clone + Zero + PartialEq {
    fn is_unit(&self) -> bool;
    fn is_neg(&self) -> bool;
    /// `self - k * other`
    fn sub_mul(&self, k: &Self, other: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn sub_mul(&self, k: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(k.checked_mul(*other)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn sub_mul(&self, k: &Self, other: &Self) -> Option<Self> {
        Some(self - k * other)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Eliminated<T> {
    unit_pivots: usize,
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Entry> Eliminated<T> {
    fn finish(self, nrows: usize, ncols: usize) -> SmithForm {
        let live: Vec<usize> = (0..self.rows.len())
            .filter(|&r| !self.rows[r].is_empty())
            .collect();
        let mut col_ids: Vec<usize> = live
            .iter()
            .flat_map(|&r| self.rows[r].keys().copied())
            .collect();
        col_ids.sort_unstable();
        col_ids.dedup();
        let col_pos: HashMap<usize, usize> =
            col_ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut rest = IntMatrix::zeros(live.len(), col_ids.len());
        for (i, &r) in live.iter().enumerate() {
            for (c, v) in &self.rows[r] {
                rest.set(i, col_pos[c], v.to_big());
            }
        }
        let tail = smith_normal_form(&rest);
        let mut nonzero = vec![BigInt::one(); self.unit_pivots];
        nonzero.extend(tail.diag.into_iter().filter(|d| !d.is_zero()));
        SmithForm::from_invariants(nrows, ncols, nonzero)
    }
}

fn eliminate_units<T: Entry>(
    m: &SparseIntMatrix,
    conv: impl Fn(i64) -> T,
) -> Option<Eliminated<T>> {
    let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); m.nrows];
    let mut col_rows: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); m.ncols];
    for (c, col) in m.cols.iter().enumerate() {
        for &(r, v) in col {
            rows[r].insert(c, conv(v));
            col_rows[c].insert(r, ());
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..m.ncols)
        .filter(|&c| !col_rows[c].is_empty())
        .map(|c| Reverse((col_rows[c].len(), c)))
        .collect();
    let mut unit_pivots = 0;
    while let Some(Reverse((len, c))) = heap.pop() {
        if col_rows[c].len() != len || len == 0 {
            continue;
        }
        // cheapest unit entry in this column
        let pivot_row = col_rows[c]
            .keys()
            .copied()
            .filter(|&r| rows[r][&c].is_unit())
            .min_by_key(|&r| rows[r].len());
        let Some(pr) = pivot_row else {
            continue;
        };
        let prow = std::mem::take(&mut rows[pr]);
        let negate = prow[&c].is_neg();
        let others: Vec<usize> = col_rows[c].keys().copied().filter(|&r| r != pr).collect();
        for &r in &others {
            let mut k = rows[r][&c].clone();
            if negate {
                k = T::zero().sub_mul(&k, &conv(1))?;
            }
            for (j, pv) in &prow {
                let cur = rows[r].get(j).cloned().unwrap_or_else(T::zero);
                let nv = cur.sub_mul(&k, pv)?;
                if nv.is_zero() {
                    rows[r].remove(j);
                    col_rows[*j].remove(&r);
                } else {
                    rows[r].insert(*j, nv);
                    col_rows[*j].insert(r, ());
                }
            }
            debug_assert!(!rows[r].contains_key(&c));
        }
        for j in prow.keys() {
            col_rows[*j].remove(&pr);
        }
        col_rows[c].clear();
        unit_pivots += 1;
        let mut touched: Vec<usize> = prow.keys().copied().filter(|&j| j != c).collect();
        touched.sort_unstable();
        touched.dedup();
        for j in touched {
            if !col_rows[j].is_empty() {
                heap.push(Reverse((col_rows[j].len(), j)));
            }
        }
    }
    Some(Eliminated { unit_pivots, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_dense_on_small_cases() {
        let d = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = SparseIntMatrix::from_dense(&d);
        assert_eq!(s.smith_form(), smith_normal_form(&d));
        let diag: Vec<i64> = s.smith_form().diag.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(diag, vec![2, 6, 12]);
    }

    #[test]
    fn rank_mod2_counts_odd_entries() {
        let d = IntMatrix::from_rows(&[vec![2, 1], vec![0, 1], vec![2, 0]]);
        let s = SparseIntMatrix::from_dense(&d);
        assert_eq!(s.rank_mod2(), 1);
        assert_eq!(s.smith_form().rank(), 2);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let d = IntMatrix::from_rows(&[
            vec![1, big, 0],
            vec![big, 0, 3],
            vec![0, 5, big],
        ]);
        let s = SparseIntMatrix::from_dense(&d);
        assert_eq!(s.smith_form(), smith_normal_form(&d));
    }
}
