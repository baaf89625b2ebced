//! Rational cohomology ring of even-dimensional small orbifolds, presented as
//! `Q[w_1..w_r]/I` with generators indexed by vertices of index `n-2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::characteristic::SCharFunction;
use crate::cwstruct::IndexedSkeleton;
use crate::exactalg::rational_rank;
use crate::polytope::{FaceId, FaceLattice, SimplePolytope};
use crate::quotient::{build_quotient_complex, express_in_basis, face_fundamental_cycle, DeltaComplex};
use crate::{Error, Result};

/// `codim(F ∩ G) = codim F + codim G` with `F ∩ G` nonempty.
pub fn transverse(lattice: &FaceLattice, f: FaceId, g: FaceId) -> bool {
    let Some(m) = lattice.meet(f, g) else {
        return false;
    };
    lattice.face(m).codim() == lattice.face(f).codim() + lattice.face(g).codim()
}

/// The smallest face containing the inward edges at `v`; its dimension is the index of `v`.
pub fn face_hat(p: &SimplePolytope, skel: &IndexedSkeleton, v: usize) -> Result<FaceId> {
    let lattice = p.lattice();
    let mut span: Vec<usize> = skel
        .edges
        .iter()
        .filter(|&&(_, head, _)| head == v)
        .map(|&(tail, _, _)| tail)
        .collect();
    span.push(v);
    let f = lattice
        .face_spanned_by(&span)
        .ok_or_else(|| Error::Internal(format!("inward edges at {v} span no face")))?;
    if lattice.face(f).dim != skel.index[v] || skel.top(&lattice.face(f).vertex_ids) != v {
        return Err(Error::Internal(format!(
            "face spanned by the inward edges at {v} has the wrong dimension or top vertex"
        )));
    }
    Ok(f)
}

/// Vertices of index `j`, in ascending objective order.
pub fn index_set(skel: &IndexedSkeleton, j: usize) -> Vec<usize> {
    skel.order.iter().copied().filter(|&v| skel.index[v] == j).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransversalityReport {
    pub property1_checked: usize,
    pub property2_checked: usize,
    /// Faces `F = F̂_v` tested for a decomposition into generator faces.
    pub hat_form_checked: usize,
    pub failures: Vec<String>,
}

impl TransversalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn require_even(n: usize) -> Result<()> {
    if n % 2 == 1 {
        Err(Error::OddDimension(n))
    } else {
        Ok(())
    }
}

/// Exact covers of `target` (a facet set) by `k` pairwise disjoint members of `pool`.
fn decompositions(lattice: &FaceLattice, target: &[usize], pool: &[FaceId], k: usize) -> Vec<Vec<FaceId>> {
    fn go(
        lattice: &FaceLattice,
        remaining: &BTreeSet<usize>,
        pool: &[FaceId],
        start: usize,
        k: usize,
        acc: &mut Vec<FaceId>,
        out: &mut Vec<Vec<FaceId>>,
    ) {
        if acc.len() == k {
            if remaining.is_empty() {
                out.push(acc.clone());
            }
            return;
        }
        for i in start..pool.len() {
            let fs = &lattice.face(pool[i]).facet_ids;
            if fs.iter().all(|x| remaining.contains(x)) {
                let rest: BTreeSet<usize> = remaining.iter().filter(|x| !fs.contains(x)).copied().collect();
                acc.push(pool[i]);
                go(lattice, &rest, pool, i + 1, k, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    let remaining: BTreeSet<usize> = target.iter().copied().collect();
    go(lattice, &remaining, pool, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Checks the two transversality properties on proper faces (`0 < codim < n`).
pub fn check_transversality_properties(p: &SimplePolytope, skel: &IndexedSkeleton) -> Result<TransversalityReport> {
    let n = p.dim();
    require_even(n)?;
    let lattice = p.lattice();
    let mut rep = TransversalityReport::default();
    for k in 1..n / 2 {
        // Property 1: a 2k-face and each of its vertices
        for &f in lattice.faces_of_dim(2 * k) {
            for &u in &lattice.face(f).vertex_ids {
                rep.property1_checked += 1;
                let partners: Vec<FaceId> = lattice
                    .faces_of_dim(n - 2 * k)
                    .iter()
                    .copied()
                    .filter(|&g| {
                        transverse(lattice, f, g) && lattice.meet(f, g) == Some(lattice.vertex_face(u))
                    })
                    .collect();
                if partners.len() != 1 {
                    rep.failures.push(format!(
                        "property 1: {}-face {f} at vertex {u} has {} transverse complementary faces",
                        2 * k,
                        partners.len()
                    ));
                }
            }
        }
        // Property 2: a codim-2k face as a transverse intersection of k codim-2 faces
        let codim2: Vec<FaceId> = lattice.faces_of_dim(n - 2).to_vec();
        for &f in lattice.faces_of_dim(n - 2 * k) {
            rep.property2_checked += 1;
            let target = &lattice.face(f).facet_ids;
            let pool: Vec<FaceId> = codim2.iter().copied().filter(|&g| lattice.contains(g, f)).collect();
            if decompositions(lattice, target, &pool, k).is_empty() {
                rep.failures.push(format!(
                    "property 2: codimension-{} face {f} is not a transverse intersection of {k} codimension-2 faces",
                    2 * k
                ));
            }
        }
        // the form used for products: F̂_v with v of index n-2k splits into generator faces
        let gens: Vec<FaceId> = index_set(skel, n - 2)
            .into_iter()
            .map(|v| face_hat(p, skel, v))
            .collect::<Result<_>>()?;
        for v in index_set(skel, n - 2 * k) {
            rep.hat_form_checked += 1;
            let f = face_hat(p, skel, v)?;
            let pool: Vec<FaceId> = gens.iter().copied().filter(|&g| lattice.contains(g, f)).collect();
            if decompositions(lattice, &lattice.face(f).facet_ids, &pool, k).is_empty() {
                rep.failures.push(format!(
                    "property 2 (F̂ form): F̂ of vertex {v} is not an intersection of {k} generator faces F̂_w, ind w = {}",
                    n - 2
                ));
            }
        }
    }
    Ok(rep)
}

/// A product value: zero, or coordinates over the classes `[v]`, `v ∈ A_{n-2l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MuValue {
    Zero,
    Class(Vec<BigRational>),
}

impl MuValue {
    pub fn is_zero(&self) -> bool {
        match self {
            MuValue::Zero => true,
            MuValue::Class(c) => c.iter().all(Zero::is_zero),
        }
    }
}

impl fmt::Display for MuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuValue::Zero => f.write_str("0"),
            MuValue::Class(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vertex: usize,
    pub face: FaceId,
}

/// Everything needed to evaluate intersection products through the oracle.
pub struct RingContext<'a> {
    p: &'a SimplePolytope,
    skel: &'a IndexedSkeleton,
    dc: DeltaComplex,
    pub generators: Vec<Generator>,
    class_cache: std::cell::RefCell<BTreeMap<FaceId, Vec<BigRational>>>,
    basis_cache: std::cell::RefCell<BTreeMap<usize, Vec<crate::quotient::Chain>>>,
}

impl<'a> RingContext<'a> {
    pub fn new(p: &'a SimplePolytope, theta: &SCharFunction, skel: &'a IndexedSkeleton) -> Result<Self> {
        let n = p.dim();
        require_even(n)?;
        let dc = build_quotient_complex(p, theta)?;
        let generators = index_set(skel, n - 2)
            .into_iter()
            .map(|v| Ok(Generator { vertex: v, face: face_hat(p, skel, v)? }))
            .collect::<Result<_>>()?;
        Ok(Self {
            p,
            skel,
            dc,
            generators,
            class_cache: Default::default(),
            basis_cache: Default::default(),
        })
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.dc
    }

    /// Basis vertices `A_j`, ascending.
    pub fn basis_vertices(&self, j: usize) -> Vec<usize> {
        index_set(self.skel, j)
    }

    /// Coordinates of `[X(F)]` over `{[v] : v ∈ A_{dim F}}`.
    pub fn face_class(&self, face: FaceId) -> Result<Vec<BigRational>> {
        if let Some(c) = self.class_cache.borrow().get(&face) {
            return Ok(c.clone());
        }
        let j = self.p.lattice().face(face).dim;
        if !self.basis_cache.borrow().contains_key(&j) {
            let basis = self
                .basis_vertices(j)
                .into_iter()
                .map(|u| face_fundamental_cycle(&self.dc, self.p, face_hat(self.p, self.skel, u)?))
                .collect::<Result<Vec<_>>>()?;
            self.basis_cache.borrow_mut().insert(j, basis);
        }
        let cycle = face_fundamental_cycle(&self.dc, self.p, face)?;
        let coords = express_in_basis(&self.dc, &cycle, &self.basis_cache.borrow()[&j])?;
        self.class_cache.borrow_mut().insert(face, coords.clone());
        Ok(coords)
    }

    /// Iterated transverse intersection of faces; zero as soon as a step is
    /// not transverse.
    pub fn mu_faces(&self, faces: &[FaceId]) -> Result<MuValue> {
        let lattice = self.p.lattice();
        let mut current = lattice.whole();
        for &f in faces {
            if !transverse(lattice, current, f) {
                return Ok(MuValue::Zero);
            }
            current = lattice.meet(current, f).expect("transverse faces meet");
        }
        Ok(MuValue::Class(self.face_class(current)?))
    }

    /// `μ([v_{i_1}], ..., [v_{i_l}])` for generator indices.
    pub fn mu_product(&self, gens: &[usize]) -> Result<MuValue> {
        let faces: Vec<FaceId> = gens.iter().map(|&i| self.generators[i].face).collect();
        self.mu_faces(&faces)
    }

    /// The pairing `H^2 × H^{n-2} -> H^n` on the bases `A_{n-2}` and `A_2`.
    pub fn pairing_matrix(&self) -> Result<Vec<Vec<BigRational>>> {
        let right: Vec<FaceId> = self
            .basis_vertices(2)
            .into_iter()
            .map(|u| face_hat(self.p, self.skel, u))
            .collect::<Result<_>>()?;
        self.generators
            .iter()
            .map(|g| {
                right
                    .iter()
                    .map(|&f| {
                        Ok(match self.mu_faces(&[g.face, f])? {
                            MuValue::Zero => BigRational::zero(),
                            MuValue::Class(c) => c[0].clone(),
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

/// Multiset of generator indices, sorted.
pub type Monomial = Vec<usize>;

fn monomials(r: usize, degree: usize) -> Vec<Monomial> {
    fn go(r: usize, left: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..r {
            acc.push(i);
            go(r, left - 1, i, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(r, degree, 0, &mut Vec::new(), &mut out);
    out
}

pub fn format_monomial(m: &[usize]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let e = m[i..].iter().take_while(|&&x| x == m[i]).count();
        parts.push(if e == 1 { format!("w{}", m[i] + 1) } else { format!("w{}^{}", m[i] + 1, e) });
        i += e;
    }
    parts.join("*")
}

/// `Q[w_1..w_r]/I`; monomial degrees count generators (cohomological degree is twice that).
#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub n: usize,
    pub generators: Vec<Generator>,
    /// Product value of every monomial of degree `<= n/2`.
    pub products: BTreeMap<Monomial, MuValue>,
    pub relation_monomials: Vec<Monomial>,
    pub relation_binomials: Vec<(Monomial, Monomial)>,
}

impl RingPresentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Monomials of this many generators or more vanish for degree reasons.
    pub fn implied_zero_degree(&self) -> usize {
        self.n / 2 + 1
    }

    /// Relations as strings, for reports.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relation_monomials
            .iter()
            .map(|m| format_monomial(m))
            .chain(
                self.relation_binomials
                    .iter()
                    .map(|(a, b)| format!("{} - {}", format_monomial(a), format_monomial(b))),
            )
            .chain(std::iter::once(format!(
                "every monomial of degree {}",
                self.implied_zero_degree()
            )))
            .collect()
    }
}

/// Evaluates every monomial of degree `<= n/2` and records the relations of `I`.
pub fn ring_presentation(ctx: &RingContext<'_>) -> Result<RingPresentation> {
    let n = ctx.p.dim();
    let r = ctx.generators.len();
    let mut products = BTreeMap::new();
    let mut relation_monomials = Vec::new();
    let mut relation_binomials = Vec::new();
    for l in 1..=n / 2 {
        let mut classes: Vec<(MuValue, Monomial)> = Vec::new();
        for m in monomials(r, l) {
            let v = ctx.mu_product(&m)?;
            if v.is_zero() {
                relation_monomials.push(m.clone());
            } else if let Some((_, first)) = classes.iter().find(|(c, _)| *c == v) {
                relation_binomials.push((m.clone(), first.clone()));
            } else {
                classes.push((v.clone(), m.clone()));
            }
            products.insert(m, v);
        }
    }
    Ok(RingPresentation { n, generators: ctx.generators.clone(), products, relation_monomials, relation_binomials })
}

/// Dimensions of the graded pieces of `Q[w]/I` in cohomological degrees `0..=n`.
/// Degree `2l` is the monomial count minus the rank of `I` in that degree,
/// where `I` is spanned by all multiples of the recorded relations.
pub fn graded_dimensions(ring: &RingPresentation) -> Vec<usize> {
    let n = ring.n;
    let r = ring.rank();
    let mut dims = vec![0; n + 1];
    dims[0] = 1;
    let relations: Vec<(Monomial, Option<Monomial>)> = ring
        .relation_monomials
        .iter()
        .map(|m| (m.clone(), None))
        .chain(ring.relation_binomials.iter().map(|(a, b)| (a.clone(), Some(b.clone()))))
        .collect();
    for l in 1..=n / 2 {
        let basis = monomials(r, l);
        let pos: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (a, b) in &relations {
            if a.len() > l {
                continue;
            }
            for cofactor in monomials(r, l - a.len()) {
                let times = |m: &Monomial| {
                    let mut x = m.clone();
                    x.extend(&cofactor);
                    x.sort_unstable();
                    x
                };
                let mut row = vec![BigRational::zero(); basis.len()];
                row[pos[&times(a)]] += BigRational::from_integer(1.into());
                if let Some(b) = b {
                    row[pos[&times(b)]] -= BigRational::from_integer(1.into());
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        dims[2 * l] = basis.len() - rational_rank(&rows);
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::generate;
    use crate::cwstruct::MorseData;

    fn poly(d: crate::polytope::PolytopeData) -> SimplePolytope {
        SimplePolytope::new(d).unwrap()
    }

    #[test]
    fn transversality_examples() {
        let c = poly(generate::cube(3).unwrap());
        let l = c.lattice();
        assert!(transverse(l, l.facet_face(0), l.facet_face(1)));
        assert!(!transverse(l, l.facet_face(0), l.facet_face(0)));
        assert!(!transverse(l, l.facet_face(0), l.facet_face(5)));
        assert!(transverse(l, l.whole(), l.facet_face(2)));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(6, 2).len(), 21);
        assert_eq!(monomials(1, 3), vec![vec![0, 0, 0]]);
        assert_eq!(format_monomial(&[0, 0, 2]), "w1^2*w3");
    }

    #[test]
    fn square_ring() {
        let sq = poly(generate::polygon(4).unwrap());
        let theta = SCharFunction::from_masks(&sq, &[1, 1, 1, 1]).unwrap();
        let m = MorseData::random(&sq, 0).unwrap();
        let ctx = RingContext::new(&sq, &theta, &m.skeleton).unwrap();
        assert_eq!(ctx.generators.len(), 1);
        let ring = ring_presentation(&ctx).unwrap();
        assert!(ring.relation_monomials.is_empty());
        assert_eq!(ring.relation_strings(), vec!["every monomial of degree 2".to_string()]);
        assert_eq!(graded_dimensions(&ring), vec![1, 0, 1]);
        assert_eq!(ctx.mu_product(&[0, 0]).unwrap(), MuValue::Zero);
        assert_eq!(ctx.mu_product(&[]).unwrap(), MuValue::Class(vec![BigRational::from_integer(1.into())]));
        let rep = check_transversality_properties(&sq, &m.skeleton).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn odd_dimension_is_rejected() {
        let c = poly(generate::cube(3).unwrap());
        let theta = SCharFunction::from_masks(&c, &[0b10, 0b01, 0b11, 0b11, 0b01, 0b10]).unwrap();
        let m = MorseData::random(&c, 0).unwrap();
        assert!(matches!(RingContext::new(&c, &theta, &m.skeleton), Err(Error::OddDimension(3))));
        assert!(check_transversality_properties(&c, &m.skeleton).is_err());
    }

    #[test]
    fn face_hats_have_index_dimension() {
        let c = poly(generate::cube(4).unwrap());
        let m = MorseData::random(&c, 5).unwrap();
        for v in 0..16 {
            let f = face_hat(&c, &m.skeleton, v).unwrap();
            assert_eq!(c.lattice().face(f).dim, m.skeleton.index[v]);
        }
        let rep = check_transversality_properties(&c, &m.skeleton).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.property1_checked > 0 && rep.property2_checked > 0 && rep.hat_form_checked > 0);
    }
}
