//! The quotient `(Z_2^{n-1} × P)/~` triangulated as a Δ-complex over the
//! order complex of the face poset. Used as an independent oracle.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::characteristic::{face_subgroup_masks, SCharFunction};
use crate::exactalg::{nullspace, primitive_integer, solve_rational, ImageReducer, RationalVector, SparseIntMatrix};
use crate::homology::{homology_triple, Coefficients, HomologyProfile, HomologyTriple, SparseChainComplex};
use crate::polytope::{FaceId, SimplePolytope};
use crate::{Error, Result};

/// A flag `F_0 ⊊ ... ⊊ F_k` with a coset of `G_{F_k}`, stored by its
/// lexicographically least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientSimplex {
    pub flag: Vec<FaceId>,
    pub coset: u64,
}

impl QuotientSimplex {
    pub fn dim(&self) -> usize {
        self.flag.len() - 1
    }

    pub fn top(&self) -> FaceId {
        *self.flag.last().expect("nonempty flag")
    }
}

/// An integral chain in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub dim: usize,
    pub coeffs: BTreeMap<usize, BigInt>,
}

impl Chain {
    pub fn to_rational(&self) -> RationalVector {
        self.coeffs
            .iter()
            .map(|(&i, c)| (i, BigRational::from_integer(c.clone())))
            .collect()
    }
}

pub struct DeltaComplex {
    value_dim: usize,
    subgroups: Vec<Vec<u64>>,
    simplices: Vec<Vec<QuotientSimplex>>,
    index: Vec<HashMap<QuotientSimplex, usize>>,
    complex: SparseChainComplex,
    reducers: Vec<OnceLock<ImageReducer>>,
}

fn canonical(g: u64, group: &[u64]) -> u64 {
    group.iter().map(|&h| g ^ h).min().expect("group contains 0")
}

/// Builds every `(flag, coset)` simplex and the signed face maps.
pub fn build_quotient_complex(p: &SimplePolytope, theta: &SCharFunction) -> Result<DeltaComplex> {
    let lattice = p.lattice();
    let n = p.dim();
    let d = theta.value_dim();
    if d >= 20 {
        return Err(Error::Oracle("value dimension too large for the oracle".into()));
    }
    let subgroups = face_subgroup_masks(p, theta);
    let up: Vec<Vec<FaceId>> = (0..lattice.len())
        .map(|f| {
            (0..lattice.len())
                .filter(|&g| g != f && lattice.contains(g, f))
                .collect()
        })
        .collect();
    let reps: Vec<Vec<u64>> = subgroups
        .iter()
        .map(|grp| (0..1u64 << d).filter(|&g| canonical(g, grp) == g).collect())
        .collect();

    let mut flags: Vec<Vec<Vec<FaceId>>> = vec![(0..lattice.len()).map(|f| vec![f]).collect()];
    for k in 1..=n {
        let next: Vec<Vec<FaceId>> = flags[k - 1]
            .iter()
            .flat_map(|fl| {
                up[*fl.last().unwrap()].iter().map(move |&g| {
                    let mut x = fl.clone();
                    x.push(g);
                    x
                })
            })
            .collect();
        flags.push(next);
    }
    let mut simplices = Vec::with_capacity(n + 1);
    let mut index = Vec::with_capacity(n + 1);
    for fl in &flags {
        let mut list: Vec<QuotientSimplex> = fl
            .iter()
            .flat_map(|flag| {
                reps[*flag.last().unwrap()]
                    .iter()
                    .map(move |&c| QuotientSimplex { flag: flag.clone(), coset: c })
            })
            .collect();
        list.sort();
        let map: HashMap<QuotientSimplex, usize> =
            list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        simplices.push(list);
        index.push(map);
    }

    let ranks: Vec<usize> = simplices.iter().map(Vec::len).collect();
    let mut dmaps = vec![SparseIntMatrix::new(0, ranks[0])];
    for k in 1..=n {
        let mut m = SparseIntMatrix::new(ranks[k - 1], ranks[k]);
        for (j, s) in simplices[k].iter().enumerate() {
            let mut col: BTreeMap<usize, i64> = BTreeMap::new();
            for i in 0..=k {
                let mut flag = s.flag.clone();
                flag.remove(i);
                let coset = canonical(s.coset, &subgroups[*flag.last().unwrap()]);
                let face = QuotientSimplex { flag, coset };
                let row = *index[k - 1]
                    .get(&face)
                    .ok_or_else(|| Error::Internal("face of a simplex is missing".into()))?;
                *col.entry(row).or_insert(0) += if i % 2 == 0 { 1 } else { -1 };
            }
            m.set_column(j, col.into_iter().filter(|&(_, c)| c != 0));
        }
        dmaps.push(m);
    }
    let complex = SparseChainComplex { ranks, d: dmaps };
    if !complex.is_complex() {
        return Err(Error::Internal("∂∂ ≠ 0 in the quotient complex".into()));
    }
    Ok(DeltaComplex {
        value_dim: d,
        subgroups,
        simplices,
        index,
        complex,
        reducers: (0..=n).map(|_| OnceLock::new()).collect(),
    })
}

impl DeltaComplex {
    pub fn top_dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, k: usize) -> &[QuotientSimplex] {
        &self.simplices[k]
    }

    pub fn counts(&self) -> Vec<usize> {
        self.complex.ranks.clone()
    }

    pub fn total_simplices(&self) -> usize {
        self.complex.ranks.iter().sum()
    }

    pub fn find(&self, s: &QuotientSimplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn boundary(&self, k: usize) -> &SparseIntMatrix {
        &self.complex.d[k]
    }

    pub fn chain_complex(&self) -> &SparseChainComplex {
        &self.complex
    }

    /// Order of `G_F` for each face.
    pub fn subgroup_order(&self, face: FaceId) -> usize {
        self.subgroups[face].len()
    }

    /// 0-simplices lying over vertices of `P`.
    pub fn orbifold_points(&self, p: &SimplePolytope) -> usize {
        self.simplices[0]
            .iter()
            .filter(|s| p.lattice().face(s.flag[0]).dim == 0)
            .count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex
            .ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub fn homology(&self) -> HomologyTriple {
        homology_triple(&self.complex)
    }

    /// `∂` of a chain of degree `k >= 1`.
    pub fn apply_boundary(&self, c: &RationalVector, k: usize) -> RationalVector {
        let mut out = RationalVector::new();
        if k == 0 {
            return out;
        }
        for (&j, x) in c {
            for &(i, e) in self.complex.d[k].column(j) {
                let v = out.entry(i).or_insert_with(BigRational::zero);
                *v += x * BigRational::from_integer(BigInt::from(e));
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn boundary_column(&self, k: usize, j: usize) -> RationalVector {
        self.complex.d[k]
            .column(j)
            .iter()
            .map(|&(i, e)| (i, BigRational::from_integer(BigInt::from(e))))
            .collect()
    }

    /// Echelon basis of the boundaries in degree `k`, built on first use.
    fn image_reducer(&self, k: usize) -> &ImageReducer {
        self.reducers[k].get_or_init(|| {
            let mut r = ImageReducer::new();
            if k < self.top_dim() {
                for j in 0..self.complex.ranks[k + 1] {
                    r.insert(self.boundary_column(k + 1, j));
                }
            }
            r
        })
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }
}

pub fn simplicial_homology(dc: &DeltaComplex, coeff: Coefficients) -> HomologyProfile {
    dc.homology().get(coeff).clone()
}

/// The class of the suborbifold over `face`: a primitive integral cycle on
/// the top simplices whose flags end at `face`.
pub fn face_fundamental_cycle(dc: &DeltaComplex, p: &SimplePolytope, face: FaceId) -> Result<Chain> {
    let k = p.lattice().face(face).dim;
    let support: Vec<usize> = dc.simplices[k]
        .iter()
        .enumerate()
        .filter(|(_, s)| s.top() == face)
        .map(|(j, _)| j)
        .collect();
    let cols: Vec<RationalVector> = support.iter().map(|&j| dc.boundary_column(k, j)).collect();
    let cols = if k == 0 { vec![RationalVector::new(); support.len()] } else { cols };
    let kernel = nullspace(&cols);
    if kernel.len() != 1 {
        return Err(Error::Oracle(format!(
            "cycle space over face {face} has dimension {}, expected 1",
            kernel.len()
        )));
    }
    let local = primitive_integer(&kernel[0]);
    Ok(Chain {
        dim: k,
        coeffs: local.into_iter().map(|(i, c)| (support[i], c)).collect(),
    })
}

/// Coefficients `λ` with `cycle - Σ λ_i basis_i` a boundary.
pub fn express_in_basis(dc: &DeltaComplex, cycle: &Chain, basis: &[Chain]) -> Result<Vec<BigRational>> {
    let k = cycle.dim;
    if basis.iter().any(|b| b.dim != k) {
        return Err(Error::DimensionMismatch("basis cycles must share the degree of the cycle".into()));
    }
    for c in std::iter::once(cycle).chain(basis) {
        if !dc.apply_boundary(&c.to_rational(), k).is_empty() {
            return Err(Error::Oracle("input chain is not a cycle".into()));
        }
    }
    let reducer = dc.image_reducer(k);
    let target = reducer.reduce(&cycle.to_rational());
    let residues: Vec<RationalVector> = basis.iter().map(|b| reducer.reduce(&b.to_rational())).collect();
    let mut coords: Vec<usize> = residues
        .iter()
        .chain(std::iter::once(&target))
        .flat_map(|r| r.keys().copied())
        .collect();
    coords.sort_unstable();
    coords.dedup();
    let a: Vec<Vec<BigRational>> = coords
        .iter()
        .map(|c| {
            residues
                .iter()
                .map(|r| r.get(c).cloned().unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect();
    let b: Vec<BigRational> = coords
        .iter()
        .map(|c| target.get(c).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    if crate::exactalg::rational_rank(&a) < basis.len() {
        return Err(Error::Oracle("basis classes are linearly dependent in homology".into()));
    }
    if coords.is_empty() {
        return Ok(vec![BigRational::zero(); basis.len()]);
    }
    solve_rational(&a, &b)?
        .ok_or_else(|| Error::Oracle("cycle is not in the span of the basis classes".into()))
}

/// Unit vector helper for comparing coefficient vectors.
pub fn unit_vector(len: usize, i: usize) -> Vec<BigRational> {
    (0..len)
        .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
        .collect()
}
