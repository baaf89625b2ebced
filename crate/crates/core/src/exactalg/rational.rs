use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Sparse rational vector keyed by coordinate index.
pub type RationalVector = BTreeMap<usize, BigRational>;

/// Any `x` with `a x = b`, or `None` when the system is inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.len(),
            b.len()
        )));
    }
    let ncols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch("ragged coefficient matrix".into()));
    }
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let pivots = rref(&mut m, ncols);
    // a pivot in the augmented column means 0 = nonzero
    if pivots.iter().any(|&(_, c)| c == ncols) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); ncols];
    for &(r, c) in &pivots {
        x[c] = m[r][ncols].clone();
    }
    Ok(Some(x))
}

/// Rank over `Q` by Gaussian elimination.
pub fn rational_rank(a: &[Vec<BigRational>]) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    rref(&mut m, ncols).len()
}

/// Reduced row echelon form on the first `ncols` columns (the remaining
/// columns are carried along). Returns (row, col) pivot positions.
fn rref(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<(usize, usize)> {
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width.max(ncols) {
        if r == m.len() || c >= width {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (x, p) in m[i][c..width].iter_mut().zip(&pivot[c..width]) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

fn axpy(y: &mut RationalVector, a: &BigRational, x: &RationalVector) {
    for (k, v) in x {
        let e = y.entry(*k).or_insert_with(BigRational::zero);
        *e -= a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Echelon basis of the span of a family of sparse vectors, each normalized
/// so that its largest index carries coefficient one. Used to reduce vectors
/// modulo an image (e.g. the boundaries of a chain complex).
#[derive(Clone, Debug, Default)]
pub struct ImageReducer {
    pivots: HashMap<usize, RationalVector>,
}

impl ImageReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a RationalVector>) -> Self {
        let mut r = Self::new();
        for v in vs {
            r.insert(v.clone());
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds `v` to the span; returns `false` if it was already dependent.
    pub fn insert(&mut self, mut v: RationalVector) -> bool {
        while let Some((&low, c)) = v.iter().next_back() {
            match self.pivots.get(&low) {
                Some(p) => {
                    let c = c.clone();
                    axpy(&mut v, &c, p);
                }
                None => {
                    let inv = c.recip();
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    self.pivots.insert(low, v);
                    return true;
                }
            }
        }
        false
    }

    /// Canonical representative of `v` modulo the span: every pivot
    /// coordinate is cleared. Linear in `v`, with kernel exactly the span.
    pub fn reduce(&self, v: &RationalVector) -> RationalVector {
        let mut v = v.clone();
        let mut cursor: Option<usize> = None;
        loop {
            let next = match cursor {
                None => v.iter().next_back(),
                Some(k) => v.range(..k).next_back(),
            };
            let Some((&k, c)) = next else {
                break;
            };
            if let Some(p) = self.pivots.get(&k) {
                let c = c.clone();
                axpy(&mut v, &c, p);
            }
            cursor = Some(k);
        }
        v
    }
}

/// Basis of the kernel of the map whose columns are `cols`, as sparse vectors
/// over the column indices.
pub(crate) fn nullspace(cols: &[RationalVector]) -> Vec<RationalVector> {
    // column reduction, tracking the combination that produced each column
    let mut pivots: HashMap<usize, (RationalVector, RationalVector)> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut combo: RationalVector = BTreeMap::new();
        combo.insert(j, BigRational::one());
        loop {
            let Some((&low, c)) = v.iter().next_back() else {
                kernel.push(combo);
                break;
            };
            match pivots.get(&low) {
                Some((pv, pc)) => {
                    let c = c.clone();
                    axpy(&mut v, &c, pv);
                    axpy(&mut combo, &c, pc);
                }
                None => {
                    let inv = c.recip();
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    for x in combo.values_mut() {
                        *x *= &inv;
                    }
                    pivots.insert(low, (v, combo));
                    break;
                }
            }
        }
    }
    kernel
}

/// Scales a rational vector to coprime integers whose first nonzero entry is
/// positive.
pub(crate) fn primitive_integer(v: &RationalVector) -> BTreeMap<usize, BigInt> {
    use num_integer::Integer;
    let lcm = v
        .values()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: BTreeMap<usize, BigInt> = v
        .iter()
        .map(|(k, x)| (*k, (x * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect();
    let g = ints.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign_neg = ints.values().next().is_some_and(|x| x < &BigInt::zero());
    ints.into_iter()
        .map(|(k, x)| {
            let y = if g.is_zero() { x } else { x / &g };
            (k, if sign_neg { -y } else { y })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qrow(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn solve_examples() {
        let id = vec![qrow(&[1, 0]), qrow(&[0, 1])];
        let b = vec![q(3, 4), q(-5, 1)];
        assert_eq!(solve_rational(&id, &b).unwrap(), Some(b.clone()));
        let a = vec![qrow(&[1, 1]), qrow(&[1, 1])];
        assert_eq!(solve_rational(&a, &qrow(&[1, 0])).unwrap(), None);
        assert_eq!(
            solve_rational(&[qrow(&[2])], &qrow(&[1])).unwrap(),
            Some(vec![q(1, 2)])
        );
        assert!(solve_rational(&id, &qrow(&[1])).is_err());
    }

    #[test]
    fn underdetermined_solution_satisfies_system() {
        let a = vec![qrow(&[1, 2, 3]), qrow(&[2, 4, 7])];
        let b = qrow(&[1, 3]);
        let x = solve_rational(&a, &b).unwrap().unwrap();
        for (row, rhs) in a.iter().zip(&b) {
            let lhs: BigRational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            assert_eq!(&lhs, rhs);
        }
        assert_eq!(rational_rank(&a), 2);
    }

    fn sv(entries: &[(usize, i64)]) -> RationalVector {
        entries.iter().map(|&(k, v)| (k, q(v, 1))).collect()
    }

    #[test]
    fn reducer_kills_exactly_the_span() {
        let r = ImageReducer::from_vectors(&[sv(&[(0, 1), (1, -1)]), sv(&[(1, 1), (2, -1)])]);
        assert_eq!(r.rank(), 2);
        assert!(r.reduce(&sv(&[(0, 1), (2, -1)])).is_empty());
        let a = r.reduce(&sv(&[(0, 1)]));
        let b = r.reduce(&sv(&[(2, 1)]));
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn nullspace_of_cycle_graph() {
        // boundary of a triangle: edges 01, 12, 02
        let cols = vec![sv(&[(0, -1), (1, 1)]), sv(&[(1, -1), (2, 1)]), sv(&[(0, -1), (2, 1)])];
        let k = nullspace(&cols);
        assert_eq!(k.len(), 1);
        let p = primitive_integer(&k[0]);
        let vals: Vec<i64> = p.values().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(vals, vec![1, 1, -1]);
    }
}
