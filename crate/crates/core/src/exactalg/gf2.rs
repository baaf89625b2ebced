use std::cmp::Ordering;
use std::fmt;

const BLOCK: usize = 64;

/// A fixed-length vector over `F_2`, packed into 64-bit blocks.
///
/// Ordering is lexicographic on the coordinate sequence, so in dimension two
/// `(0,1) < (1,0) < (1,1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    blocks: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            blocks: vec![0; len.div_ceil(BLOCK)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector from 0/1 entries; any nonzero entry counts as 1.
    pub fn from_bits<T: Copy + Into<u64>>(bits: &[T]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b.into() != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Decodes a mask in which coordinate 0 is the most significant of `len` bits.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        for i in 0..len {
            if mask >> (len - 1 - i) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Inverse of [`Gf2Vector::from_mask`]: integer order of masks equals the
    /// lexicographic order of vectors.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= 64, "mask encoding needs length <= 64");
        (0..self.len).fold(0u64, |m, i| (m << 1) | self.get(i) as u64)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.blocks[i / BLOCK] >> (i % BLOCK) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let bit = 1u64 << (i % BLOCK);
        if value {
            self.blocks[i / BLOCK] |= bit;
        } else {
            self.blocks[i / BLOCK] &= !bit;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn add_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "length mismatch in F_2 addition");
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.bits().map(u8::from).collect()
    }

    fn leading(&self) -> Option<usize> {
        (0..self.len).find(|&i| self.get(i))
    }
}

impl std::ops::Add for &Gf2Vector {
    type Output = Gf2Vector;

    fn add(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Ord for Gf2Vector {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.bits().zip(other.bits()) {
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Gf2Vector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.bits().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b as u8)?;
        }
        write!(f, ")")
    }
}

/// A rectangular matrix over `F_2` stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn new(cols: usize, rows: Vec<Gf2Vector>) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "all rows must have length {cols}"
        );
        Self { cols, rows }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(cols, vec![Gf2Vector::zeros(cols); rows])
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| Gf2Vector::unit(n, i)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }
}

/// Rank over `F_2` by row elimination.
pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    let mut basis: Vec<(usize, Gf2Vector)> = Vec::new();
    for row in m.rows() {
        let mut r = row.clone();
        for (p, b) in &basis {
            if r.get(*p) {
                r.add_assign(b);
            }
        }
        if let Some(p) = r.leading() {
            for (_, b) in basis.iter_mut() {
                if b.get(p) {
                    b.add_assign(&r);
                }
            }
            basis.push((p, r));
        }
    }
    basis.len()
}

/// Rank of a set of vectors encoded as bit masks (the search hot path).
pub fn mask_rank(vectors: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &v in vectors {
        let mut x = v;
        while x != 0 {
            let top = 63 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                rank += 1;
                break;
            }
            x ^= basis[top];
        }
    }
    rank
}

/// True iff `vecs` is a basis of `F_2^d`.
pub fn is_basis(vecs: &[Gf2Vector], d: usize) -> bool {
    if vecs.len() != d || vecs.iter().any(|v| v.len() != d) {
        return false;
    }
    gf2_rank(&Gf2Matrix::new(d, vecs.to_vec())) == d
}
