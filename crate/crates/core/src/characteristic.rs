//! s-characteristic functions, face subgroups, restriction to faces and
//! integral isotropy functions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{mask_rank, Gf2Vector};
use crate::polytope::{FaceId, SimplePolytope};
use crate::{Error, Result};

/// A map from facets to nonzero vectors of `F_2^{n-1}` satisfying the
/// omission-basis condition at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SCharFunction {
    values: Vec<Gf2Vector>,
    d: usize,
}

impl SCharFunction {
    /// Validates `values` against `p` and wraps them.
    pub fn new(p: &SimplePolytope, values: Vec<Gf2Vector>) -> Result<Self> {
        let check = validate_schar(p, &values)?;
        if let Some(v) = check.violation {
            return Err(Error::InvalidCharacteristic(v.to_string()));
        }
        Ok(Self { d: p.dim() - 1, values })
    }

    pub fn from_masks(p: &SimplePolytope, masks: &[u64]) -> Result<Self> {
        let d = p.dim().saturating_sub(1);
        Self::new(p, masks.iter().map(|&m| Gf2Vector::from_mask(m, d)).collect())
    }

    fn from_masks_unchecked(masks: &[u64], d: usize) -> Self {
        Self {
            values: masks.iter().map(|&m| Gf2Vector::from_mask(m, d)).collect(),
            d,
        }
    }

    /// Dimension `n - 1` of the value space.
    pub fn value_dim(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Gf2Vector] {
        &self.values
    }

    pub fn value(&self, facet: usize) -> &Gf2Vector {
        &self.values[facet]
    }

    pub fn mask(&self, facet: usize) -> u64 {
        self.values[facet].to_mask()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.values.iter().map(Gf2Vector::to_mask).collect()
    }

    /// Values as 0/1 rows, the document encoding.
    pub fn to_bit_rows(&self) -> Vec<Vec<u8>> {
        self.values.iter().map(Gf2Vector::to_bits).collect()
    }
}

impl fmt::Display for SCharFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "F{}:{}", i, v)?;
        }
        Ok(())
    }
}

/// The first vertex at which omitting one incident value fails to leave a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmissionFailure {
    pub vertex: usize,
    pub omitted_facet: usize,
}

impl fmt::Display for OmissionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at vertex {}, omitting the value of facet {} does not leave a basis",
            self.vertex, self.omitted_facet
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCharCheck {
    pub valid: bool,
    pub violation: Option<OmissionFailure>,
}

fn omission_failure(masks: &[u64], d: usize) -> Option<usize> {
    let mut rest = Vec::with_capacity(masks.len());
    for skip in 0..masks.len() {
        rest.clear();
        rest.extend(masks.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &m)| m));
        if mask_rank(&rest) != d {
            return Some(skip);
        }
    }
    None
}

/// Runs all `n |V(P)|` omission checks, reporting the first failure in vertex order.
pub fn validate_schar(p: &SimplePolytope, values: &[Gf2Vector]) -> Result<SCharCheck> {
    let n = p.dim();
    if n < 2 {
        return Err(Error::DimensionMismatch("s-characteristic functions need n >= 2".into()));
    }
    let d = n - 1;
    if values.len() != p.facet_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} values given for {} facets",
            values.len(),
            p.facet_count()
        )));
    }
    if let Some(i) = values.iter().position(|v| v.len() != d) {
        return Err(Error::DimensionMismatch(format!(
            "value of facet {i} has length {}, expected {d}",
            values[i].len()
        )));
    }
    let masks: Vec<u64> = values.iter().map(Gf2Vector::to_mask).collect();
    let lattice = p.lattice();
    for v in 0..p.vertex_count() {
        let fs = lattice.vertex_facets(v);
        let local: Vec<u64> = fs.iter().map(|&f| masks[f]).collect();
        if let Some(k) = omission_failure(&local, d) {
            return Ok(SCharCheck {
                valid: false,
                violation: Some(OmissionFailure { vertex: v, omitted_facet: fs[k] }),
            });
        }
    }
    Ok(SCharCheck { valid: true, violation: None })
}

/// Outcome of an exhaustive search, with counters that certify coverage.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub results: Vec<SCharFunction>,
    /// Partial assignments tried (search-tree nodes below the root).
    pub nodes_visited: u64,
    /// Nodes cut off by a failing fully assigned vertex.
    pub pruned: u64,
    /// Complete assignments reached and checked.
    pub complete_candidates: u64,
    /// Size of the full candidate space, `(2^{n-1} - 1)^m`.
    pub candidate_space: BigInt,
    /// True when the search ran to completion (no result limit was hit).
    pub exhaustive: bool,
}

/// Depth-first search over facets in input order with values in increasing
/// lexicographic order, pruning as soon as a fully assigned vertex fails.
/// Results come out in lexicographic order of the value sequence.
pub fn search_schar(p: &SimplePolytope, limit: Option<usize>) -> Result<SearchOutcome> {
    let n = p.dim();
    if n < 2 {
        return Err(Error::DimensionMismatch("search needs n >= 2".into()));
    }
    if n > 63 {
        return Err(Error::DimensionMismatch("value dimension too large for mask search".into()));
    }
    let d = n - 1;
    let m = p.facet_count();
    let lattice = p.lattice();
    // vertices completed once facet i is assigned
    let mut completes: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 0..p.vertex_count() {
        if let Some(&last) = lattice.vertex_facets(v).iter().max() {
            completes[last].push(v);
        }
    }
    let mut st = SearchState {
        p,
        d,
        completes,
        assignment: vec![0; m],
        limit,
        out: SearchOutcome {
            results: Vec::new(),
            nodes_visited: 0,
            pruned: 0,
            complete_candidates: 0,
            candidate_space: BigInt::from((1u64 << d) - 1).pow(m as u32),
            exhaustive: true,
        },
    };
    st.descend(0);
    Ok(st.out)
}

struct SearchState<'a> {
    p: &'a SimplePolytope,
    d: usize,
    completes: Vec<Vec<usize>>,
    assignment: Vec<u64>,
    limit: Option<usize>,
    out: SearchOutcome,
}

impl SearchState<'_> {
    /// Returns false once the result limit stops the search.
    fn descend(&mut self, facet: usize) -> bool {
        if facet == self.assignment.len() {
            self.out.complete_candidates += 1;
            self.out
                .results
                .push(SCharFunction::from_masks_unchecked(&self.assignment, self.d));
            if self.limit.is_some_and(|l| self.out.results.len() >= l) {
                self.out.exhaustive = false;
                return false;
            }
            return true;
        }
        let lattice = self.p.lattice();
        let mut local = Vec::with_capacity(self.d + 1);
        for value in 1..(1u64 << self.d) {
            self.assignment[facet] = value;
            self.out.nodes_visited += 1;
            let ok = self.completes[facet].iter().all(|&v| {
                local.clear();
                local.extend(lattice.vertex_facets(v).iter().map(|&f| self.assignment[f]));
                omission_failure(&local, self.d).is_none()
            });
            if !ok {
                self.out.pruned += 1;
                if facet + 1 == self.assignment.len() {
                    self.out.complete_candidates += 1;
                }
                continue;
            }
            if !self.descend(facet + 1) {
                return false;
            }
        }
        true
    }
}

/// All elements of the span of `gens`, sorted.
pub fn span_masks(gens: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &g in gens {
        let r = basis.iter().fold(g, |x, &b| x.min(x ^ b));
        if r != 0 {
            basis.push(r);
        }
    }
    let mut out = vec![0u64];
    for b in basis {
        let ext: Vec<u64> = out.iter().map(|&x| x ^ b).collect();
        out.extend(ext);
    }
    out.sort_unstable();
    out
}

/// The subgroup `G_F` spanned by the values of the facets containing `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSubgroup {
    pub face: FaceId,
    pub generators: Vec<Gf2Vector>,
    pub members: BTreeSet<Gf2Vector>,
}

impl FaceSubgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        self.members.contains(v)
    }
}

pub fn face_subgroup(p: &SimplePolytope, theta: &SCharFunction, face: FaceId) -> FaceSubgroup {
    let facet_ids = &p.lattice().face(face).facet_ids;
    let generators: Vec<Gf2Vector> = facet_ids.iter().map(|&i| theta.value(i).clone()).collect();
    let masks: Vec<u64> = facet_ids.iter().map(|&i| theta.mask(i)).collect();
    let members = span_masks(&masks)
        .into_iter()
        .map(|m| Gf2Vector::from_mask(m, theta.value_dim()))
        .collect();
    FaceSubgroup { face, generators, members }
}

/// Mask form of `G_F` for every face, indexed by face id.
pub fn face_subgroup_masks(p: &SimplePolytope, theta: &SCharFunction) -> Vec<Vec<u64>> {
    p.lattice()
        .faces()
        .iter()
        .map(|f| span_masks(&f.facet_ids.iter().map(|&i| theta.mask(i)).collect::<Vec<_>>()))
        .collect()
}

/// Lexicographically first set of standard coordinates whose span complements `g`.
fn complement_coordinates(g: &[u64], d: usize) -> Vec<usize> {
    let k = mask_rank(g);
    let want = d - k;
    let bit = |j: usize| 1u64 << (d - 1 - j);
    let mut combo: Vec<usize> = (0..want).collect();
    loop {
        let mut all: Vec<u64> = g.to_vec();
        all.extend(combo.iter().map(|&j| bit(j)));
        if mask_rank(&all) == d {
            return combo;
        }
        // next combination in lexicographic order
        let mut i = want;
        loop {
            if i == 0 {
                unreachable!("a complement always exists");
            }
            i -= 1;
            if combo[i] < d - want + i {
                combo[i] += 1;
                for j in i + 1..want {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The s-characteristic function induced on a face `F` of codimension
/// `0 < k < n-1`, together with the face as a polytope and the global facet
/// behind each of its facets.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub face_polytope: SimplePolytope,
    pub vertex_map: Vec<usize>,
    pub facet_map: Vec<usize>,
    /// Coordinates spanning the chosen complement of `G_F`.
    pub complement: Vec<usize>,
    pub theta: SCharFunction,
}

pub fn restrict_to_face(p: &SimplePolytope, theta: &SCharFunction, face: FaceId) -> Result<Restriction> {
    let n = p.dim();
    let d = n - 1;
    let codim = p.lattice().face(face).codim();
    if codim == 0 || codim + 1 >= n {
        return Err(Error::CodimOutOfRange { codim, n });
    }
    let gens: Vec<u64> = p.lattice().face(face).facet_ids.iter().map(|&i| theta.mask(i)).collect();
    let group = span_masks(&gens);
    let complement = complement_coordinates(&gens, d);
    let support: u64 = complement.iter().map(|&j| 1u64 << (d - 1 - j)).sum();
    let project = |x: u64| -> u64 {
        let y = group
            .iter()
            .map(|&h| x ^ h)
            .find(|&y| y & !support == 0)
            .expect("coset meets the complement");
        complement
            .iter()
            .fold(0u64, |acc, &j| (acc << 1) | (y >> (d - 1 - j) & 1))
    };
    let (face_polytope, vertex_map, facet_map) = p.face_polytope(face)?;
    let values: Vec<u64> = facet_map.iter().map(|&g| project(theta.mask(g))).collect();
    let theta = SCharFunction::from_masks(&face_polytope, &values)?;
    Ok(Restriction { face_polytope, vertex_map, facet_map, complement, theta })
}

/// Integer analogue of an s-characteristic function, taking values in `Z^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyCheck {
    /// Every omission at every vertex leaves a unimodular matrix.
    pub valid: bool,
    /// The weaker reading that only omits the interior positions `1 < k < n`
    /// of each vertex's (sorted) facet list.
    pub valid_interior_only: bool,
    pub violation: Option<OmissionFailure>,
}

impl IsotropyCheck {
    /// True when `psi` passes the weaker reading but not the full condition.
    pub fn passes_looser_reading_only(&self) -> bool {
        self.valid_interior_only && !self.valid
    }
}

/// Determinant by fraction-free elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn validate_isotropy(p: &SimplePolytope, psi: &[Vec<i64>]) -> Result<IsotropyCheck> {
    let n = p.dim();
    if n < 2 {
        return Err(Error::DimensionMismatch("isotropy functions need n >= 2".into()));
    }
    if psi.len() != p.facet_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} values given for {} facets",
            psi.len(),
            p.facet_count()
        )));
    }
    if let Some(i) = psi.iter().position(|v| v.len() != n - 1) {
        return Err(Error::DimensionMismatch(format!(
            "value of facet {i} has length {}, expected {}",
            psi[i].len(),
            n - 1
        )));
    }
    let mut valid = true;
    let mut valid_interior_only = true;
    let mut violation = None;
    for v in 0..p.vertex_count() {
        let fs = p.lattice().vertex_facets(v);
        for (k, &omit) in fs.iter().enumerate() {
            let rows: Vec<Vec<BigInt>> = fs
                .iter()
                .filter(|&&f| f != omit)
                .map(|&f| psi[f].iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            if determinant(&rows).abs().is_one() {
                continue;
            }
            valid = false;
            if violation.is_none() {
                violation = Some(OmissionFailure { vertex: v, omitted_facet: omit });
            }
            if k > 0 && k + 1 < n {
                valid_interior_only = false;
            }
        }
    }
    Ok(IsotropyCheck { valid, valid_interior_only, violation })
}

/// Reduction of an isotropy function modulo 2.
pub fn reduce_mod2(psi: &[Vec<i64>]) -> Vec<Gf2Vector> {
    psi.iter()
        .map(|row| Gf2Vector::from_bits(&row.iter().map(|x| (x.rem_euclid(2)) as u8).collect::<Vec<_>>()))
        .collect()
}
