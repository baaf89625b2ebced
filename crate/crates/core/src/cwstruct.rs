//! Morse-indexed CW structure on the small orbifold: oriented 1-skeleton,
//! the nested subcomplexes `Q^k`, cell records and integer chain complexes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::IntMatrix;
use crate::polytope::{FaceId, SimplePolytope};
use crate::{Error, Result};

/// How vertices are ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objective {
    /// A linear functional evaluated on vertex coordinates.
    Functional(Vec<BigRational>),
    /// Vertices listed in ascending order.
    Order(Vec<usize>),
}

/// The 1-skeleton oriented toward increasing objective value.
#[derive(Clone, Debug)]
pub struct IndexedSkeleton {
    /// Vertices in ascending order.
    pub order: Vec<usize>,
    /// Position of each vertex in `order`.
    pub rank: Vec<usize>,
    /// In-degree of each vertex.
    pub index: Vec<usize>,
    /// Directed edges `(tail, head, edge face)` with `rank[tail] < rank[head]`.
    pub edges: Vec<(usize, usize, FaceId)>,
}

impl IndexedSkeleton {
    /// Number of vertices of each index `0..=n`.
    pub fn index_counts(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n + 1];
        for &i in &self.index {
            c[i] += 1;
        }
        c
    }

    /// Vertices of a face, highest first.
    pub fn descending(&self, verts: &[usize]) -> Vec<usize> {
        let mut v = verts.to_vec();
        v.sort_by_key(|&x| std::cmp::Reverse(self.rank[x]));
        v
    }

    pub fn top(&self, verts: &[usize]) -> usize {
        *verts.iter().max_by_key(|&&x| self.rank[x]).expect("nonempty face")
    }
}

fn vertex_order(p: &SimplePolytope, obj: &Objective) -> Result<Vec<usize>> {
    let nv = p.vertex_count();
    match obj {
        Objective::Order(order) => {
            let distinct: BTreeSet<usize> = order.iter().copied().collect();
            if order.len() != nv || distinct.len() != nv || distinct.iter().any(|&v| v >= nv) {
                return Err(Error::NonGenericObjective(
                    "explicit order must list every vertex exactly once".into(),
                ));
            }
            Ok(order.clone())
        }
        Objective::Functional(c) => {
            let coords = p.coords().ok_or_else(|| {
                Error::NonGenericObjective("a functional needs vertex coordinates".into())
            })?;
            if c.len() != p.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "functional has length {}, expected {}",
                    c.len(),
                    p.dim()
                )));
            }
            let values: Vec<BigRational> = coords
                .iter()
                .map(|x| x.iter().zip(c).map(|(a, b)| a * b).sum())
                .collect();
            let mut order: Vec<usize> = (0..nv).collect();
            order.sort_by(|&a, &b| values[a].cmp(&values[b]));
            if let Some(w) = order.windows(2).find(|w| values[w[0]] == values[w[1]]) {
                return Err(Error::NonGenericObjective(format!(
                    "vertices {} and {} have equal value {}",
                    w[0], w[1], values[w[0]]
                )));
            }
            Ok(order)
        }
    }
}

/// Orients every edge toward its larger endpoint and checks the index
/// distribution against the reversed h-vector and the top-two adjacency of
/// every face.
pub fn orient_skeleton(p: &SimplePolytope, obj: &Objective) -> Result<IndexedSkeleton> {
    let n = p.dim();
    let order = vertex_order(p, obj)?;
    let mut rank = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut index = vec![0; order.len()];
    let mut edges = Vec::new();
    for e in &p.skeleton().edges {
        let (tail, head) = if rank[e.u] < rank[e.v] { (e.u, e.v) } else { (e.v, e.u) };
        index[head] += 1;
        edges.push((tail, head, e.face));
    }
    let skel = IndexedSkeleton { order, rank, index, edges };
    let counts = skel.index_counts(n);
    let h = p.h_vector();
    if (0..=n).any(|i| counts[i] as i64 != h[n - i]) {
        return Err(Error::NonGenericObjective(format!(
            "index distribution {counts:?} differs from the reversed h-vector of {h:?}"
        )));
    }
    let lattice = p.lattice();
    for (id, f) in lattice.faces().iter().enumerate() {
        if f.dim == 0 {
            continue;
        }
        let d = skel.descending(&f.vertex_ids);
        if lattice.edge_between(d[0], d[1]).is_none() {
            return Err(Error::NonGenericObjective(format!(
                "top two vertices {} and {} of face {id} are not adjacent",
                d[0], d[1]
            )));
        }
    }
    Ok(skel)
}

/// One cell `(v, e_v, F_v^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellRecord {
    pub dim: usize,
    pub vertex: usize,
    /// Second-highest vertex `y_v` of the carrier and the edge joining it to `v`;
    /// absent for 0-cells.
    pub edge: Option<(usize, FaceId)>,
    pub carrier: FaceId,
}

/// Cells grouped by dimension together with the subcomplexes `Q^n ⊃ ... ⊃ Q^0`.
#[derive(Clone, Debug)]
pub struct CellStructure {
    pub n: usize,
    pub cells: Vec<Vec<CellRecord>>,
    /// `q[k]` lists the `k`-faces whose union is `Q^k`.
    pub q: Vec<Vec<FaceId>>,
}

impl CellStructure {
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn chain_complex(&self, p: &SimplePolytope) -> Result<ChainComplexZ> {
        build_chain_complex(p, self)
    }
}

fn construction(level: usize, reason: String) -> Error {
    Error::Construction { level, reason }
}

/// Runs the recursion from `Q^n = P` down to `Q^0 = V(P)`, asserting at every
/// level that the face description and the index description of the cells agree.
pub fn build_cell_structure(p: &SimplePolytope, skel: &IndexedSkeleton) -> Result<CellStructure> {
    let n = p.dim();
    let lattice = p.lattice();
    let h = p.h_vector();
    let nv = p.vertex_count();
    let mut cells: Vec<Vec<CellRecord>> = vec![Vec::new(); n + 1];
    let mut q: Vec<Vec<FaceId>> = vec![Vec::new(); n + 1];
    q[n] = vec![lattice.whole()];
    // every cell of dimension >= current level, with its edge face
    let mut removed_by: Vec<(FaceId, FaceId)> = Vec::new();

    for k in (1..=n).rev() {
        let level = &q[k];
        let expected: i64 = h[k..].iter().sum();
        if level.len() as i64 != expected {
            return Err(construction(
                k,
                format!("Q^{k} has {} faces, expected {expected}", level.len()),
            ));
        }
        // edges of Q^k and indices within it
        let mut q_edges: BTreeSet<FaceId> = BTreeSet::new();
        for &g in level {
            for s in lattice.subfaces(g) {
                if lattice.face(s).dim == 1 {
                    q_edges.insert(s);
                }
            }
        }
        let mut ind_q = vec![0usize; nv];
        let mut inward: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &e in &q_edges {
            let vs = &lattice.face(e).vertex_ids;
            let (lo, hi) = if skel.rank[vs[0]] < skel.rank[vs[1]] { (vs[0], vs[1]) } else { (vs[1], vs[0]) };
            ind_q[hi] += 1;
            inward[hi].push(lo);
        }
        let mut tops = BTreeSet::new();
        for &g in level {
            let d = skel.descending(&lattice.face(g).vertex_ids);
            let (v, y) = (d[0], d[1]);
            let e = lattice
                .edge_between(v, y)
                .ok_or_else(|| construction(k, format!("top edge of face {g} missing")))?;
            if !tops.insert(v) {
                return Err(construction(k, format!("vertex {v} tops two {k}-faces of Q^{k}")));
            }
            if ind_q[v] != k {
                return Err(construction(
                    k,
                    format!("top vertex {v} of face {g} has index {} in Q^{k}", ind_q[v]),
                ));
            }
            let mut span = inward[v].clone();
            span.push(v);
            if lattice.face_spanned_by(&span) != Some(g) {
                return Err(construction(
                    k,
                    format!("inward edges at {v} do not span face {g}"),
                ));
            }
            cells[k].push(CellRecord { dim: k, vertex: v, edge: Some((y, e)), carrier: g });
            removed_by.push((g, e));
        }
        let index_k: BTreeSet<usize> = (0..nv).filter(|&v| ind_q[v] == k).collect();
        if index_k != tops {
            return Err(construction(
                k,
                format!("vertices of index {k} in Q^{k} are {index_k:?}, face tops are {tops:?}"),
            ));
        }
        cells[k].sort_by_key(|c| skel.rank[c.vertex]);

        // Q^{k-1}: faces of Q^k whose interiors avoid every removed open star
        let mut survivors: BTreeSet<FaceId> = BTreeSet::new();
        for &g in level {
            for s in lattice.subfaces(g) {
                if s == g {
                    continue;
                }
                let hit = removed_by
                    .iter()
                    .any(|&(big, e)| lattice.contains(big, s) && lattice.contains(s, e));
                if !hit {
                    survivors.insert(s);
                }
            }
        }
        let next: Vec<FaceId> = survivors
            .iter()
            .copied()
            .filter(|&s| lattice.face(s).dim == k - 1)
            .collect();
        if let Some(&stray) = survivors
            .iter()
            .find(|&&s| !next.iter().any(|&t| lattice.contains(t, s)))
        {
            return Err(construction(
                k - 1,
                format!("surviving face {stray} lies in no ({})-face, Q^{} is not pure", k - 1, k - 1),
            ));
        }
        let covered: BTreeSet<usize> = next
            .iter()
            .flat_map(|&t| lattice.face(t).vertex_ids.iter().copied())
            .collect();
        if covered.len() != nv {
            return Err(construction(k - 1, format!("Q^{} misses some vertices", k - 1)));
        }
        if k >= 2 && !connected(p, &next) {
            return Err(construction(k - 1, format!("Q^{} is disconnected", k - 1)));
        }
        if k == 2 && next.len() + 1 != nv {
            return Err(construction(1, format!("Q^1 has {} edges, not a spanning tree", next.len())));
        }
        q[k - 1] = next;
    }
    if q[0].len() != nv {
        return Err(construction(0, "Q^0 is not the vertex set".into()));
    }
    let mut zero: Vec<CellRecord> = q[0]
        .iter()
        .map(|&f| CellRecord {
            dim: 0,
            vertex: lattice.face(f).vertex_ids[0],
            edge: None,
            carrier: f,
        })
        .collect();
    zero.sort_by_key(|c| skel.rank[c.vertex]);
    cells[0] = zero;
    Ok(CellStructure { n, cells, q })
}

/// Connectivity of the union of the given faces of dimension >= 1.
fn connected(p: &SimplePolytope, faces: &[FaceId]) -> bool {
    let lattice = p.lattice();
    let mut parent: Vec<usize> = (0..p.vertex_count()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut used = BTreeSet::new();
    for &f in faces {
        let vs = &lattice.face(f).vertex_ids;
        for &v in vs {
            used.insert(v);
            let (a, b) = (find(&mut parent, vs[0]), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let roots: BTreeSet<usize> = used.iter().map(|&v| find(&mut parent, v)).collect();
    roots.len() == 1
}

/// Degree of the attaching composite between a `k`-cell and a `(k-1)`-cell.
pub fn boundary_degree(p: &SimplePolytope, v: &CellRecord, w: &CellRecord) -> Result<i64> {
    if v.dim < 2 || w.dim + 1 != v.dim {
        return Err(Error::DimensionMismatch(format!(
            "boundary degree needs cells of dimensions k >= 2 and k-1, got {} and {}",
            v.dim, w.dim
        )));
    }
    let is_facet = p.lattice().children(v.carrier).contains(&w.carrier);
    Ok(if v.dim % 2 == 1 && is_facet { 2 } else { 0 })
}

/// Integer chain complex with `d[k]: C_k -> C_{k-1}` (so `d[0]` has no rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexZ {
    pub ranks: Vec<usize>,
    pub d: Vec<IntMatrix>,
}

impl ChainComplexZ {
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Checks `d[k-1] d[k] = 0` for every `k`.
    pub fn is_complex(&self) -> bool {
        (2..self.ranks.len()).all(|k| self.d[k - 1].mul(&self.d[k]).is_zero())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

pub fn build_chain_complex(p: &SimplePolytope, cells: &CellStructure) -> Result<ChainComplexZ> {
    let n = cells.n;
    let ranks = cells.counts();
    let skel_free = |k: usize| -> Result<IntMatrix> {
        let mut m = IntMatrix::zeros(ranks[k - 1], ranks[k]);
        for (j, v) in cells.cells[k].iter().enumerate() {
            for (i, w) in cells.cells[k - 1].iter().enumerate() {
                let deg = boundary_degree(p, v, w)?;
                if deg != 0 {
                    m.set(i, j, BigInt::from(deg));
                }
            }
        }
        Ok(m)
    };
    let mut d = vec![IntMatrix::zeros(0, ranks[0])];
    if n >= 1 {
        d.push(edge_incidence(cells));
    }
    for k in 2..=n {
        d.push(skel_free(k)?);
    }
    let c = ChainComplexZ { ranks, d };
    if !c.is_complex() {
        return Err(Error::Internal("d∘d ≠ 0 in the cellular complex".into()));
    }
    Ok(c)
}

fn edge_incidence(cells: &CellStructure) -> IntMatrix {
    let zero = &cells.cells[0];
    let pos = |v: usize| zero.iter().position(|c| c.vertex == v).expect("0-cell");
    let mut d1 = IntMatrix::zeros(zero.len(), cells.cells[1].len());
    for (j, c) in cells.cells[1].iter().enumerate() {
        let (y, _) = c.edge.expect("1-cell has an edge");
        d1.set(pos(c.vertex), j, BigInt::from(1));
        d1.set(pos(y), j, BigInt::from(-1));
    }
    d1
}

/// Chain complex of the toric analogue: cells in dimensions `0, 1, 3, ..., 2n-1`,
/// all boundaries zero except the tree incidence `d_1`.
pub fn build_toric_chain_complex(p: &SimplePolytope, cells: &CellStructure) -> Result<ChainComplexZ> {
    let n = p.dim();
    let h = p.h_vector();
    let tail = |l: usize| h[l..].iter().sum::<i64>() as usize;
    let mut ranks = vec![0usize; 2 * n];
    ranks[0] = tail(0);
    ranks[1] = tail(1);
    for l in 2..=n {
        ranks[2 * l - 1] = tail(l);
    }
    let mut d = vec![IntMatrix::zeros(0, ranks[0]), edge_incidence(cells)];
    for k in 2..2 * n {
        d.push(IntMatrix::zeros(ranks[k - 1], ranks[k]));
    }
    let c = ChainComplexZ { ranks, d };
    if !c.is_complex() {
        return Err(Error::Internal("d∘d ≠ 0 in the toric complex".into()));
    }
    Ok(c)
}

/// Everything derived from a chosen objective.
#[derive(Clone, Debug)]
pub struct MorseData {
    pub objective: Objective,
    /// Seed used to draw the objective, if it was random.
    pub seed: Option<u64>,
    pub attempts: usize,
    pub skeleton: IndexedSkeleton,
    pub cells: CellStructure,
}

impl MorseData {
    /// Uses an explicit objective, failing loudly if any assertion breaks.
    pub fn with_objective(p: &SimplePolytope, objective: Objective) -> Result<Self> {
        let skeleton = orient_skeleton(p, &objective)?;
        let cells = build_cell_structure(p, &skeleton)?;
        Ok(Self { objective, seed: None, attempts: 1, skeleton, cells })
    }

    /// Draws integer functionals from a growing box until every structural
    /// assertion passes. Needs coordinates.
    pub fn random(p: &SimplePolytope, seed: u64) -> Result<Self> {
        if p.coords().is_none() {
            return Err(Error::NonGenericObjective(
                "no coordinates: supply an explicit vertex order".into(),
            ));
        }
        const MAX_ATTEMPTS: usize = 400;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bound: i64 = 8;
        let mut last = None;
        for attempt in 1..=MAX_ATTEMPTS {
            if attempt % 8 == 0 {
                bound = bound.saturating_mul(2).min(1 << 40);
            }
            let c: Vec<BigRational> = (0..p.dim())
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
                .collect();
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            let objective = Objective::Functional(c);
            match Self::with_objective(p, objective) {
                Ok(mut m) => {
                    m.seed = Some(seed);
                    m.attempts = attempt;
                    return Ok(m);
                }
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::NonGenericObjective("no objective found".into())))
    }

    /// Explicit objective if given, otherwise a seeded random one.
    pub fn resolve(p: &SimplePolytope, objective: Option<Objective>, seed: u64) -> Result<Self> {
        match objective {
            Some(o) => Self::with_objective(p, o),
            None => Self::random(p, seed),
        }
    }

    pub fn chain_complex(&self, p: &SimplePolytope) -> Result<ChainComplexZ> {
        build_chain_complex(p, &self.cells)
    }

    pub fn toric_chain_complex(&self, p: &SimplePolytope) -> Result<ChainComplexZ> {
        build_toric_chain_complex(p, &self.cells)
    }
}
