//! Combinatorial simple polytopes given by facet–vertex incidence.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;

use crate::{Error, Result};

pub type FaceId = usize;

/// Raw incidence data as read from a document, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeData {
    pub name: String,
    pub dim: usize,
    pub vertex_count: usize,
    /// Vertex indices of each facet.
    pub facets: Vec<Vec<usize>>,
    /// Optional coordinates, one row of length `dim` per vertex.
    pub coords: Option<Vec<Vec<BigRational>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroDimension,
    VertexOutOfRange { facet: usize, vertex: usize },
    WrongFacetCount { vertex: usize, found: usize, expected: usize },
    EmptyFacet { facet: usize },
    NestedFacets { inner: usize, outer: usize },
    Disconnected { components: usize },
    CoordinateShape { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroDimension => write!(f, "dimension must be positive"),
            Violation::VertexOutOfRange { facet, vertex } => {
                write!(f, "facet {facet} lists vertex {vertex}, which does not exist")
            }
            Violation::WrongFacetCount { vertex, found, expected } => write!(
                f,
                "vertex {vertex} lies in {found} facets, expected exactly {expected}"
            ),
            Violation::EmptyFacet { facet } => write!(f, "facet {facet} is empty"),
            Violation::NestedFacets { inner, outer } => {
                write!(f, "facet {inner} is contained in facet {outer}")
            }
            Violation::Disconnected { components } => {
                write!(f, "1-skeleton has {components} connected components")
            }
            Violation::CoordinateShape { vertex } => {
                write!(f, "coordinates of vertex {vertex} have the wrong length")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn vertex_facet_lists(data: &PolytopeData) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); data.vertex_count];
    for (i, f) in data.facets.iter().enumerate() {
        for &v in f {
            if v < data.vertex_count {
                inc[v].push(i);
            }
        }
    }
    for l in inc.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }
    inc
}

/// Checks simplicity, the antichain condition and connectivity of the
/// 1-skeleton. Every violation found is reported; the scan never stops early.
pub fn validate_simple(data: &PolytopeData) -> ValidationReport {
    let mut violations = Vec::new();
    let n = data.dim;
    if n == 0 {
        violations.push(Violation::ZeroDimension);
    }
    for (i, f) in data.facets.iter().enumerate() {
        if f.is_empty() {
            violations.push(Violation::EmptyFacet { facet: i });
        }
        for &v in f {
            if v >= data.vertex_count {
                violations.push(Violation::VertexOutOfRange { facet: i, vertex: v });
            }
        }
    }
    let inc = vertex_facet_lists(data);
    for (v, l) in inc.iter().enumerate() {
        if l.len() != n {
            violations.push(Violation::WrongFacetCount {
                vertex: v,
                found: l.len(),
                expected: n,
            });
        }
    }
    let sets: Vec<BTreeSet<usize>> = data
        .facets
        .iter()
        .map(|f| f.iter().copied().collect())
        .collect();
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if i != j && !sets[i].is_empty() && sets[i].is_subset(&sets[j]) && (sets[i] != sets[j] || i > j)
            {
                violations.push(Violation::NestedFacets { inner: i, outer: j });
            }
        }
    }
    if data.vertex_count > 0 && n > 0 {
        let components = count_components(data.vertex_count, |u, v| {
            shared(&inc[u], &inc[v]) + 1 >= n
        });
        if components != 1 {
            violations.push(Violation::Disconnected { components });
        }
    }
    if let Some(coords) = &data.coords {
        for v in 0..data.vertex_count {
            if coords.get(v).is_none_or(|c| c.len() != n) {
                violations.push(Violation::CoordinateShape { vertex: v });
            }
        }
    }
    ValidationReport { violations }
}

fn shared(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

fn count_components(nv: usize, adjacent: impl Fn(usize, usize) -> bool) -> usize {
    let mut seen = vec![false; nv];
    let mut components = 0;
    for s in 0..nv {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let next: Vec<usize> = (0..nv).filter(|&w| !seen[w] && adjacent(u, w)).collect();
            for w in next {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    components
}

/// A face, identified by the maximal set of facets containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub facet_ids: Vec<usize>,
    pub vertex_ids: Vec<usize>,
    pub dim: usize,
}

impl Face {
    pub fn codim(&self) -> usize {
        self.facet_ids.len()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertex_ids.binary_search(&v).is_ok()
    }
}

/// The face poset of a simple polytope, faces grouped by dimension.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    n: usize,
    faces: Vec<Face>,
    by_dim: Vec<Vec<FaceId>>,
    index: HashMap<Vec<usize>, FaceId>,
    vertex_face: Vec<FaceId>,
    facet_face: Vec<FaceId>,
    children: Vec<Vec<FaceId>>,
    parents: Vec<Vec<FaceId>>,
    vertex_facets: Vec<Vec<usize>>,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Enumerates one face per distinct nonempty intersection of facets (plus `P`
/// itself), keyed by its maximal facet set.
pub fn build_face_lattice(data: &PolytopeData) -> Result<FaceLattice> {
    let n = data.dim;
    let inc = vertex_facet_lists(data);
    let facet_sets: Vec<Vec<usize>> = data
        .facets
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            f
        })
        .collect();
    let all_vertices: Vec<usize> = (0..data.vertex_count).collect();
    let mut found: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (v, vf) in inc.iter().enumerate() {
        if vf.len() > 20 {
            return Err(Error::InvalidPolytope(format!(
                "vertex {v} lies in {} facets",
                vf.len()
            )));
        }
        for mask in 0u32..(1 << vf.len()) {
            let subset: Vec<usize> = (0..vf.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| vf[i])
                .collect();
            let verts = subset
                .iter()
                .fold(all_vertices.clone(), |acc, &f| intersect_sorted(&acc, &facet_sets[f]));
            // maximal facet set with this vertex set
            let maximal: Vec<usize> = (0..facet_sets.len())
                .filter(|&f| verts.iter().all(|x| facet_sets[f].binary_search(x).is_ok()))
                .collect();
            if maximal.len() > n {
                return Err(Error::InvalidPolytope(format!(
                    "vertex set {verts:?} is cut out by {} facets, more than the dimension {n}",
                    maximal.len()
                )));
            }
            found.entry(maximal).or_insert(verts);
        }
    }
    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|(facet_ids, vertex_ids)| Face {
            dim: n - facet_ids.len(),
            facet_ids,
            vertex_ids,
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.facet_ids.cmp(&b.facet_ids)));
    let mut by_dim = vec![Vec::new(); n + 1];
    let mut index = HashMap::new();
    for (id, f) in faces.iter().enumerate() {
        by_dim[f.dim].push(id);
        index.insert(f.facet_ids.clone(), id);
    }
    let mut vertex_face = vec![usize::MAX; data.vertex_count];
    for &id in &by_dim[0] {
        for &v in &faces[id].vertex_ids {
            vertex_face[v] = id;
        }
    }
    if by_dim[0].len() != data.vertex_count || vertex_face.contains(&usize::MAX) {
        return Err(Error::InvalidPolytope(
            "vertices are not in bijection with the 0-dimensional faces".into(),
        ));
    }
    let mut facet_face = vec![usize::MAX; facet_sets.len()];
    for (i, slot) in facet_face.iter_mut().enumerate() {
        if let Some(&id) = index.get(&vec![i]) {
            *slot = id;
        }
    }
    if facet_face.contains(&usize::MAX) {
        return Err(Error::InvalidPolytope(
            "some facet is not a codimension-one face".into(),
        ));
    }
    let mut children = vec![Vec::new(); faces.len()];
    let mut parents = vec![Vec::new(); faces.len()];
    for (id, f) in faces.iter().enumerate() {
        for skip in 0..f.facet_ids.len() {
            let mut up = f.facet_ids.clone();
            up.remove(skip);
            if let Some(&pid) = index.get(&up) {
                parents[id].push(pid);
                children[pid].push(id);
            }
        }
    }
    Ok(FaceLattice {
        n,
        faces,
        by_dim,
        index,
        vertex_face,
        facet_face,
        children,
        parents,
        vertex_facets: inc,
    })
}

impl FaceLattice {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, d: usize) -> &[FaceId] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    /// The whole polytope as a face.
    pub fn whole(&self) -> FaceId {
        self.by_dim[self.n][0]
    }

    pub fn vertex_face(&self, v: usize) -> FaceId {
        self.vertex_face[v]
    }

    pub fn facet_face(&self, i: usize) -> FaceId {
        self.facet_face[i]
    }

    pub fn vertex_facets(&self, v: usize) -> &[usize] {
        &self.vertex_facets[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_face.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facet_face.len()
    }

    pub fn find(&self, facet_ids: &[usize]) -> Option<FaceId> {
        let mut key = facet_ids.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).copied()
    }

    /// Codimension-one faces of `id`.
    pub fn children(&self, id: FaceId) -> &[FaceId] {
        &self.children[id]
    }

    /// Faces having `id` as a codimension-one face.
    pub fn parents(&self, id: FaceId) -> &[FaceId] {
        &self.parents[id]
    }

    /// `small ⊆ big`.
    pub fn contains(&self, big: FaceId, small: FaceId) -> bool {
        let s = &self.faces[small].facet_ids;
        self.faces[big]
            .facet_ids
            .iter()
            .all(|f| s.binary_search(f).is_ok())
    }

    /// All faces contained in `id` (including itself).
    pub fn subfaces(&self, id: FaceId) -> Vec<FaceId> {
        let mut out = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(f) = stack.pop() {
            if out.insert(f) {
                stack.extend(self.children[f].iter().copied());
            }
        }
        out.into_iter().collect()
    }

    /// The face `a ∩ b`, or `None` if the intersection is empty.
    pub fn meet(&self, a: FaceId, b: FaceId) -> Option<FaceId> {
        let mut union: Vec<usize> = self.faces[a]
            .facet_ids
            .iter()
            .chain(&self.faces[b].facet_ids)
            .copied()
            .collect();
        union.sort_unstable();
        union.dedup();
        if let Some(&id) = self.index.get(&union) {
            return Some(id);
        }
        let verts = intersect_sorted(&self.faces[a].vertex_ids, &self.faces[b].vertex_ids);
        self.face_spanned_by(&verts)
    }

    /// Smallest face containing all of `verts`.
    pub fn face_spanned_by(&self, verts: &[usize]) -> Option<FaceId> {
        let (&first, rest) = verts.split_first()?;
        let common = rest
            .iter()
            .fold(self.vertex_facets[first].clone(), |acc, &v| {
                intersect_sorted(&acc, &self.vertex_facets[v])
            });
        self.index.get(&common).copied()
    }

    /// The edge joining `u` and `v`, if they are adjacent.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<FaceId> {
        let f = self.face_spanned_by(&[u, v])?;
        (self.faces[f].dim == 1).then_some(f)
    }

    pub fn f_vector(&self) -> Vec<u64> {
        f_vector(self)
    }

    pub fn h_vector(&self) -> Vec<i64> {
        h_vector(self.n, &self.f_vector())
    }
}

/// `f_j` = number of faces of codimension `j + 1`, for `j = 0..n-1`.
pub fn f_vector(lattice: &FaceLattice) -> Vec<u64> {
    let n = lattice.dim();
    (0..n)
        .map(|j| lattice.faces_of_dim(n - j - 1).len() as u64)
        .collect()
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `h_k = Σ_{i=0}^{k} (-1)^{k-i} C(n-i, k-i) f_{i-1}` with `f_{-1} = 1`.
pub fn h_vector(n: usize, f: &[u64]) -> Vec<i64> {
    assert_eq!(f.len(), n, "f-vector of an n-polytope has n entries");
    let n = n as i64;
    let fi = |i: i64| if i == 0 { 1 } else { f[(i - 1) as usize] as i64 };
    (0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(n - i, k - i) * fi(i)
                })
                .sum()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeletonEdge {
    pub u: usize,
    pub v: usize,
    pub face: FaceId,
}

/// Undirected 1-skeleton.
#[derive(Clone, Debug)]
pub struct SkeletonGraph {
    pub edges: Vec<SkeletonEdge>,
    pub neighbors: Vec<Vec<(usize, FaceId)>>,
}

impl SkeletonGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }
}

pub fn skeleton_graph(lattice: &FaceLattice) -> Result<SkeletonGraph> {
    let mut edges = Vec::new();
    let mut neighbors = vec![Vec::new(); lattice.vertex_count()];
    for &e in lattice.faces_of_dim(1) {
        let vs = &lattice.face(e).vertex_ids;
        if vs.len() != 2 {
            return Err(Error::InvalidPolytope(format!(
                "edge face {e} has {} vertices",
                vs.len()
            )));
        }
        edges.push(SkeletonEdge { u: vs[0], v: vs[1], face: e });
        neighbors[vs[0]].push((vs[1], e));
        neighbors[vs[1]].push((vs[0], e));
    }
    Ok(SkeletonGraph { edges, neighbors })
}

/// A validated simple polytope together with its face lattice.
#[derive(Clone, Debug)]
pub struct SimplePolytope {
    data: PolytopeData,
    lattice: FaceLattice,
    skeleton: SkeletonGraph,
}

impl SimplePolytope {
    pub fn new(data: PolytopeData) -> Result<Self> {
        let report = validate_simple(&data);
        if !report.is_ok() {
            return Err(Error::NotSimple(report.violations));
        }
        let lattice = build_face_lattice(&data)?;
        let skeleton = skeleton_graph(&lattice)?;
        Ok(Self { data, lattice, skeleton })
    }

    pub fn data(&self) -> &PolytopeData {
        &self.data
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.data.vertex_count
    }

    pub fn facet_count(&self) -> usize {
        self.data.facets.len()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.data.facets
    }

    pub fn coords(&self) -> Option<&[Vec<BigRational>]> {
        self.data.coords.as_deref()
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn skeleton(&self) -> &SkeletonGraph {
        &self.skeleton
    }

    pub fn f_vector(&self) -> Vec<u64> {
        self.lattice.f_vector()
    }

    pub fn h_vector(&self) -> Vec<i64> {
        self.lattice.h_vector()
    }

    /// The face `id` as a simple polytope in its own right. Local facets are
    /// the codimension-one faces of `id`, ordered by the global facet that cuts
    /// them out; that global facet index is returned alongside. Vertices are
    /// renumbered in increasing global order.
    pub fn face_polytope(&self, id: FaceId) -> Result<(SimplePolytope, Vec<usize>, Vec<usize>)> {
        let face = self.lattice.face(id);
        if face.dim == 0 {
            return Err(Error::InvalidPolytope("a vertex is not a polytope of positive dimension".into()));
        }
        let verts = face.vertex_ids.clone();
        let local = |v: usize| verts.binary_search(&v).expect("vertex of face");
        let mut sub: Vec<(usize, Vec<usize>)> = self
            .lattice
            .children(id)
            .iter()
            .map(|&c| {
                let cf = self.lattice.face(c);
                let extra = cf
                    .facet_ids
                    .iter()
                    .copied()
                    .find(|f| face.facet_ids.binary_search(f).is_err())
                    .expect("child face has one more facet");
                (extra, cf.vertex_ids.iter().map(|&v| local(v)).collect())
            })
            .collect();
        sub.sort();
        let data = PolytopeData {
            name: format!("{}[face {}]", self.data.name, id),
            dim: face.dim,
            vertex_count: verts.len(),
            facets: sub.iter().map(|(_, f)| f.clone()).collect(),
            coords: None,
        };
        let global_facets = sub.into_iter().map(|(g, _)| g).collect();
        Ok((SimplePolytope::new(data)?, verts, global_facets))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn square() -> PolytopeData {
        PolytopeData {
            name: "square".into(),
            dim: 2,
            vertex_count: 4,
            facets: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
            coords: None,
        }
    }

    pub(crate) fn cube3() -> PolytopeData {
        // facets F1..F6 of the unit cube with v1..v8 numbered 0..7
        PolytopeData {
            name: "I3".into(),
            dim: 3,
            vertex_count: 8,
            facets: vec![
                vec![0, 1, 2, 3],
                vec![0, 1, 5, 4],
                vec![0, 4, 7, 3],
                vec![1, 5, 2, 6],
                vec![3, 2, 6, 7],
                vec![4, 5, 6, 7],
            ],
            coords: None,
        }
    }

    fn simplex(n: usize) -> PolytopeData {
        // facet i omits vertex i
        PolytopeData {
            name: format!("simplex{n}"),
            dim: n,
            vertex_count: n + 1,
            facets: (0..=n).map(|i| (0..=n).filter(|&v| v != i).collect()).collect(),
            coords: None,
        }
    }

    fn cube4() -> PolytopeData {
        let mut facets = Vec::new();
        for j in 0..4 {
            for bit in 0..2 {
                facets.push((0..16).filter(|v| (v >> j) & 1 == bit).collect());
            }
        }
        PolytopeData {
            name: "I4".into(),
            dim: 4,
            vertex_count: 16,
            facets,
            coords: None,
        }
    }

    fn polygon(m: usize) -> PolytopeData {
        PolytopeData {
            name: format!("{m}-gon"),
            dim: 2,
            vertex_count: m,
            facets: (0..m).map(|i| vec![i, (i + 1) % m]).collect(),
            coords: None,
        }
    }

    #[test]
    fn validation_examples() {
        assert!(validate_simple(&cube3()).is_ok());
        assert!(validate_simple(&square()).is_ok());
        let mut bad = square();
        bad.facets[2] = vec![2, 3, 0];
        let r = validate_simple(&bad);
        assert!(r.violations.contains(&Violation::WrongFacetCount {
            vertex: 0,
            found: 3,
            expected: 2
        }));
    }

    #[test]
    fn validation_reports_every_problem() {
        let mut bad = square();
        bad.facets.push(vec![]);
        bad.facets.push(vec![0, 1]);
        bad.facets[0].push(9);
        let r = validate_simple(&bad);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::EmptyFacet { facet: 4 })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::VertexOutOfRange { vertex: 9, .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NestedFacets { .. })));
    }

    #[test]
    fn disconnected_skeleton_is_reported() {
        // two disjoint triangles
        let data = PolytopeData {
            name: "two".into(),
            dim: 2,
            vertex_count: 6,
            facets: vec![
                vec![0, 1],
                vec![1, 2],
                vec![2, 0],
                vec![3, 4],
                vec![4, 5],
                vec![5, 3],
            ],
            coords: None,
        };
        let r = validate_simple(&data);
        assert_eq!(r.violations, vec![Violation::Disconnected { components: 2 }]);
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(build_face_lattice(&cube3()).unwrap().len(), 27);
        assert_eq!(build_face_lattice(&square()).unwrap().len(), 9);
        assert_eq!(build_face_lattice(&simplex(3)).unwrap().len(), 15);
    }

    #[test]
    fn f_and_h_vectors() {
        let c3 = SimplePolytope::new(cube3()).unwrap();
        assert_eq!(c3.f_vector(), vec![6, 12, 8]);
        assert_eq!(c3.h_vector(), vec![1, 3, 3, 1]);
        let c4 = SimplePolytope::new(cube4()).unwrap();
        assert_eq!(c4.f_vector(), vec![8, 24, 32, 16]);
        assert_eq!(c4.h_vector(), vec![1, 4, 6, 4, 1]);
        for m in 3..9 {
            let p = SimplePolytope::new(polygon(m)).unwrap();
            assert_eq!(p.f_vector(), vec![m as u64, m as u64]);
            assert_eq!(p.h_vector(), vec![1, m as i64 - 2, 1]);
        }
    }

    #[test]
    fn skeletons() {
        let c3 = SimplePolytope::new(cube3()).unwrap();
        let g = c3.skeleton();
        assert_eq!(g.edges.len(), 12);
        assert!((0..8).all(|v| g.degree(v) == 3));
        let d4 = SimplePolytope::new(simplex(4)).unwrap();
        assert_eq!(d4.skeleton().edges.len(), 10);
        let hex = SimplePolytope::new(polygon(6)).unwrap();
        assert!((0..6).all(|v| hex.skeleton().degree(v) == 2));
    }

    #[test]
    fn lattice_queries() {
        let c3 = SimplePolytope::new(cube3()).unwrap();
        let l = c3.lattice();
        let f1 = l.facet_face(0);
        let f6 = l.facet_face(5);
        assert_eq!(l.meet(f1, f6), None);
        let e = l.meet(f1, l.facet_face(1)).unwrap();
        assert_eq!(l.face(e).vertex_ids, vec![0, 1]);
        assert!(l.contains(f1, e));
        assert!(!l.contains(e, f1));
        assert_eq!(l.edge_between(0, 1), Some(e));
        assert_eq!(l.edge_between(0, 2), None);
        assert_eq!(l.subfaces(f1).len(), 9);
        assert_eq!(l.children(l.whole()).len(), 6);
        let (sq, verts, glob) = c3.face_polytope(f1).unwrap();
        assert_eq!(sq.dim(), 2);
        assert_eq!(verts, vec![0, 1, 2, 3]);
        assert_eq!(glob, vec![1, 2, 3, 4]);
    }

    #[test]
    fn non_simple_input_is_rejected() {
        // square pyramid: apex in four facets
        let data = PolytopeData {
            name: "pyramid".into(),
            dim: 3,
            vertex_count: 5,
            facets: vec![
                vec![0, 1, 2, 3],
                vec![0, 1, 4],
                vec![1, 2, 4],
                vec![2, 3, 4],
                vec![3, 0, 4],
            ],
            coords: None,
        };
        assert!(matches!(SimplePolytope::new(data), Err(Error::NotSimple(_))));
    }
}
