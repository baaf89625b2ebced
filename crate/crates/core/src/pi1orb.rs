//! Right-angled Coxeter group of a simple polytope, the map `ξ_ϑ` onto
//! `Z_2^{n-1}`, and a Reidemeister–Schreier presentation of its kernel.

use std::collections::{BTreeSet, VecDeque};

use crate::characteristic::SCharFunction;
use crate::exactalg::mask_rank;
use crate::polytope::SimplePolytope;
use crate::{Error, Result};

/// A word in the Coxeter generators `a_i`; every generator is an involution,
/// so inverses are read as reversals.
pub type Word = Vec<usize>;

/// Free reduction modulo `a_i a_i = 1`.
pub fn reduce_involutive(w: &[usize]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterPresentation {
    pub generators: usize,
    /// Pairs `i < j` of facets meeting in a codimension-2 face.
    pub commuting_pairs: Vec<(usize, usize)>,
    /// `a_i^2` for each `i`, then `(a_i a_j)^2` for each commuting pair.
    pub relators: Vec<Word>,
}

pub fn coxeter_presentation(p: &SimplePolytope) -> CoxeterPresentation {
    let lattice = p.lattice();
    let m = p.facet_count();
    let commuting_pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .filter(|&(i, j)| lattice.find(&[i, j]).is_some())
        .collect();
    let relators = (0..m)
        .map(|i| vec![i, i])
        .chain(commuting_pairs.iter().map(|&(i, j)| vec![i, j, i, j]))
        .collect();
    CoxeterPresentation { generators: m, commuting_pairs, relators }
}

/// `a_i ↦ ϑ_i`, factoring through the abelianization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiMap {
    pub value_dim: usize,
    pub images: Vec<u64>,
}

impl XiMap {
    pub fn eval(&self, w: &[usize]) -> u64 {
        w.iter().fold(0, |acc, &i| acc ^ self.images[i])
    }
}

pub fn xi_map(gamma: &CoxeterPresentation, theta: &SCharFunction) -> Result<XiMap> {
    if theta.values().len() != gamma.generators {
        return Err(Error::DimensionMismatch("one value per Coxeter generator is required".into()));
    }
    let xi = XiMap { value_dim: theta.value_dim(), images: theta.masks() };
    if mask_rank(&xi.images) != xi.value_dim {
        return Err(Error::Internal("ξ is not surjective".into()));
    }
    if let Some(r) = gamma.relators.iter().find(|r| xi.eval(r) != 0) {
        return Err(Error::Internal(format!("relator {r:?} does not map to zero")));
    }
    Ok(xi)
}

/// A Schreier generator `t_c a_i t_{c+ϑ_i}^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGenerator {
    pub coset: u64,
    pub generator: usize,
    pub word: Word,
}

#[derive(Clone, Debug)]
pub struct KernelPresentation {
    pub value_dim: usize,
    /// Cosets in breadth-first discovery order.
    pub cosets: Vec<u64>,
    /// `table[c][i]` is the coset `c + ϑ_i`; cosets are indexed by mask.
    pub table: Vec<Vec<u64>>,
    /// Transversal word of each coset, indexed by mask.
    pub transversal: Vec<Word>,
    /// All non-tree pairs, in coset discovery order then generator order.
    pub schreier_generators: Vec<SchreierGenerator>,
    /// Indices of Schreier generators whose word does not reduce to the identity.
    pub nontrivial: Vec<usize>,
    /// For each transversal element `t_c` and Γ-relator `R`, the rewriting of
    /// `t_c R t_c^{-1}` as a sequence of Schreier generator indices.
    pub rewritten_relators: Vec<Vec<usize>>,
}

impl KernelPresentation {
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    /// The rewritten relators with identity generators deleted.
    pub fn reduced_relators(&self) -> Vec<Vec<usize>> {
        let keep: BTreeSet<usize> = self.nontrivial.iter().copied().collect();
        self.rewritten_relators
            .iter()
            .map(|r| r.iter().copied().filter(|i| keep.contains(i)).collect::<Vec<_>>())
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Expands a rewritten word back into Coxeter generators.
    pub fn expand(&self, w: &[usize]) -> Word {
        w.iter()
            .flat_map(|&s| self.schreier_generators[s].word.iter().copied())
            .collect()
    }
}

/// Coset table by breadth-first closure, Schreier transversal, generators
/// and relator rewriting.
pub fn kernel_presentation(gamma: &CoxeterPresentation, xi: &XiMap) -> Result<KernelPresentation> {
    let d = xi.value_dim;
    if d >= 24 {
        return Err(Error::DimensionMismatch("coset space too large".into()));
    }
    let size = 1usize << d;
    let m = gamma.generators;
    let table: Vec<Vec<u64>> = (0..size as u64)
        .map(|c| xi.images.iter().map(|&t| c ^ t).collect())
        .collect();
    let mut transversal: Vec<Option<Word>> = vec![None; size];
    let mut tree = vec![vec![false; m]; size];
    transversal[0] = Some(Vec::new());
    let mut cosets = vec![0u64];
    let mut queue = VecDeque::from([0u64]);
    while let Some(c) = queue.pop_front() {
        for i in 0..m {
            let t = table[c as usize][i];
            if transversal[t as usize].is_none() {
                let mut w = transversal[c as usize].clone().expect("visited");
                w.push(i);
                transversal[t as usize] = Some(w);
                tree[c as usize][i] = true;
                cosets.push(t);
                queue.push_back(t);
            }
        }
    }
    if cosets.len() != size {
        return Err(Error::Internal(format!(
            "coset closure reached {} of {size} cosets",
            cosets.len()
        )));
    }
    let transversal: Vec<Word> = transversal.into_iter().map(|w| w.expect("closed")).collect();

    let mut schreier_generators = Vec::new();
    let mut slot = vec![vec![None; m]; size];
    for &c in &cosets {
        for i in 0..m {
            if tree[c as usize][i] {
                continue;
            }
            let t = table[c as usize][i];
            let mut word = transversal[c as usize].clone();
            word.push(i);
            word.extend(transversal[t as usize].iter().rev());
            slot[c as usize][i] = Some(schreier_generators.len());
            schreier_generators.push(SchreierGenerator { coset: c, generator: i, word });
        }
    }
    let nontrivial = schreier_generators
        .iter()
        .enumerate()
        .filter(|(_, s)| !reduce_involutive(&s.word).is_empty())
        .map(|(k, _)| k)
        .collect();

    let mut rewritten_relators = Vec::new();
    for &c in &cosets {
        for r in &gamma.relators {
            let mut x = c;
            let mut out = Vec::new();
            for &i in r {
                if let Some(s) = slot[x as usize][i] {
                    out.push(s);
                }
                x = table[x as usize][i];
            }
            if x != c {
                return Err(Error::Internal("relator does not close up in the coset table".into()));
            }
            rewritten_relators.push(out);
        }
    }
    Ok(KernelPresentation {
        value_dim: d,
        cosets,
        table,
        transversal,
        schreier_generators,
        nontrivial,
        rewritten_relators,
    })
}

/// Structural checks on a kernel presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelAudit {
    pub coset_count_ok: bool,
    pub generator_count_ok: bool,
    pub generators_in_kernel: bool,
    pub action_is_involutive: bool,
    pub relators_are_words: bool,
    pub rewriting_sound: bool,
}

impl KernelAudit {
    pub fn passed(&self) -> bool {
        self.coset_count_ok
            && self.generator_count_ok
            && self.generators_in_kernel
            && self.action_is_involutive
            && self.relators_are_words
            && self.rewriting_sound
    }
}

pub fn audit_kernel(gamma: &CoxeterPresentation, xi: &XiMap, k: &KernelPresentation) -> KernelAudit {
    let n_cosets = 1usize << xi.value_dim;
    let m = gamma.generators;
    let expected = n_cosets * m - (n_cosets - 1);
    let count = k.schreier_generators.len();
    let action_is_involutive = (0..n_cosets)
        .all(|c| (0..m).all(|i| k.table[k.table[c][i] as usize][i] == c as u64));
    let relators_are_words = k.rewritten_relators.iter().flatten().all(|&s| s < count);
    // t_c R t_c^{-1} and the expansion of its rewriting must agree in the
    // free product of the Z/2's generated by the a_i
    let mut sound = k.rewritten_relators.len() == k.cosets.len() * gamma.relators.len();
    let mut it = k.rewritten_relators.iter();
    for &c in &k.cosets {
        for r in &gamma.relators {
            let Some(rw) = it.next() else { break };
            let t = &k.transversal[c as usize];
            let mut lhs = t.clone();
            lhs.extend(r);
            lhs.extend(t.iter().rev());
            if reduce_involutive(&lhs) != reduce_involutive(&k.expand(rw)) {
                sound = false;
            }
        }
    }
    KernelAudit {
        coset_count_ok: k.cosets.len() == n_cosets,
        generator_count_ok: count == expected,
        generators_in_kernel: k.schreier_generators.iter().all(|s| xi.eval(&s.word) == 0),
        action_is_involutive,
        relators_are_words,
        rewriting_sound: sound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::generate;

    fn poly(d: crate::polytope::PolytopeData) -> SimplePolytope {
        SimplePolytope::new(d).unwrap()
    }

    #[test]
    fn coxeter_examples() {
        let sq = coxeter_presentation(&poly(generate::polygon(4).unwrap()));
        assert_eq!(sq.generators, 4);
        assert_eq!(sq.commuting_pairs, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let c = coxeter_presentation(&poly(generate::cube(3).unwrap()));
        assert_eq!(c.commuting_pairs.len(), 12);
        assert!(!c.commuting_pairs.contains(&(0, 5)));
        let s = coxeter_presentation(&poly(generate::simplex(3).unwrap()));
        assert_eq!(s.commuting_pairs.len(), 6);
    }

    #[test]
    fn square_kernel() {
        let p = poly(generate::polygon(4).unwrap());
        let theta = SCharFunction::from_masks(&p, &[1, 1, 1, 1]).unwrap();
        let g = coxeter_presentation(&p);
        let xi = xi_map(&g, &theta).unwrap();
        assert_eq!(xi.images, vec![1, 1, 1, 1]);
        assert_eq!(xi.eval(&[0, 1, 0, 1]), 0);
        let k = kernel_presentation(&g, &xi).unwrap();
        assert_eq!(k.index(), 2);
        assert_eq!(k.schreier_generators.len(), 7);
        assert!(audit_kernel(&g, &xi, &k).passed());
    }

    #[test]
    fn cube_kernel() {
        let p = poly(generate::cube(3).unwrap());
        let theta = SCharFunction::from_masks(&p, &[0b10, 0b01, 0b11, 0b11, 0b01, 0b10]).unwrap();
        let g = coxeter_presentation(&p);
        let xi = xi_map(&g, &theta).unwrap();
        let k = kernel_presentation(&g, &xi).unwrap();
        assert_eq!(k.index(), 4);
        assert_eq!(k.schreier_generators.len(), 21);
        let audit = audit_kernel(&g, &xi, &k);
        assert!(audit.passed(), "{audit:?}");
        // the reverse tree pairs are exactly the ones that vanish
        assert_eq!(k.nontrivial.len(), 21 - 3);
        assert_eq!(k.rewritten_relators.len(), 4 * (6 + 12));
    }

    #[test]
    fn tampered_rewriting_is_caught() {
        let p = poly(generate::cube(3).unwrap());
        let theta = SCharFunction::from_masks(&p, &[0b10, 0b01, 0b11, 0b11, 0b01, 0b10]).unwrap();
        let g = coxeter_presentation(&p);
        let xi = xi_map(&g, &theta).unwrap();
        let mut k = kernel_presentation(&g, &xi).unwrap();
        let target = k.rewritten_relators.iter().position(|r| !r.is_empty()).unwrap();
        k.rewritten_relators[target].push(k.nontrivial[0]);
        assert!(!audit_kernel(&g, &xi, &k).rewriting_sound);
    }

    #[test]
    fn involutive_reduction() {
        assert_eq!(reduce_involutive(&[1, 2, 2, 1, 3]), vec![3]);
        assert!(reduce_involutive(&[0, 1, 1, 0]).is_empty());
    }
}
