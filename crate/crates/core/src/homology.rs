//! Homology of integer chain complexes over `Z`, `Q` and `Z/2`, and the
//! closed-form homology of small orbifolds and their toric analogues.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cwstruct::ChainComplexZ;
use crate::exactalg::{gf2_rank, smith_normal_form, SmithForm, SparseIntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Z,
    Q,
    Z2,
}

impl Coefficients {
    pub const ALL: [Coefficients; 3] = [Coefficients::Z, Coefficients::Q, Coefficients::Z2];
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficients::Z => "Z",
            Coefficients::Q => "Q",
            Coefficients::Z2 => "Z2",
        })
    }
}

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s`, torsion
/// kept as sorted invariant factors `d_1 | d_2 | ...`, each `> 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `Z^rank ⊕ (Z/2)^twos`.
    pub fn with_twos(rank: usize, twos: usize) -> Self {
        Self { free_rank: rank, torsion: vec![BigInt::from(2); twos] }
    }

    /// Normalizes arbitrary cyclic orders into invariant factors.
    pub fn from_cyclic(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut powers: Vec<(BigInt, u32)> = orders.iter().flat_map(prime_powers).collect();
        powers.sort();
        // group by prime, largest powers go into the last invariant factors
        let mut by_prime: Vec<(BigInt, Vec<u32>)> = Vec::new();
        for (p, e) in powers {
            match by_prime.last_mut() {
                Some((q, es)) if *q == p => es.push(e),
                _ => by_prime.push((p, vec![e])),
            }
        }
        let len = by_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
        let mut factors = vec![BigInt::one(); len];
        for (p, es) in &by_prime {
            let offset = len - es.len();
            for (i, &e) in es.iter().enumerate() {
                factors[offset + i] *= p.pow(e);
            }
        }
        Self { free_rank, torsion: factors }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of invariant factors divisible by 2, i.e. `dim (T ⊗ Z/2)`.
    pub fn two_rank_of_torsion(&self) -> usize {
        self.torsion.iter().filter(|d| d.is_even()).count()
    }

    /// Torsion as prime powers, for display.
    pub fn primary_torsion(&self) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self
            .torsion
            .iter()
            .flat_map(prime_powers)
            .map(|(p, e)| p.pow(e))
            .collect();
        out.sort();
        out
    }
}

fn prime_powers(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let prim = self.primary_torsion();
        let mut i = 0;
        while i < prim.len() {
            let j = prim[i..].iter().take_while(|x| **x == prim[i]).count();
            parts.push(if j == 1 { format!("Z{}", prim[i]) } else { format!("Z{}^{}", prim[i], j) });
            i += j;
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Homology in every degree with a coefficient tag. Over `Q` and `Z/2` the
/// groups are vector spaces and only `free_rank` (the dimension) is used.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    pub coeff: Coefficients,
    pub groups: Vec<AbelianGroup>,
}

impl HomologyProfile {
    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.free_rank).collect()
    }

    /// Alternating sum of ranks (Betti numbers for field coefficients).
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) })
            .sum()
    }

    /// Drops trailing zero groups so complexes of different top dimension compare.
    pub fn trimmed(&self) -> HomologyProfile {
        let mut groups = self.groups.clone();
        while groups.len() > 1 && groups.last().is_some_and(AbelianGroup::is_zero) {
            groups.pop();
        }
        HomologyProfile { coeff: self.coeff, groups }
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|g| match self.coeff {
                Coefficients::Z => g.to_string(),
                Coefficients::Q => vector_space("Q", g.free_rank),
                Coefficients::Z2 => vector_space("Z2", g.free_rank),
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn vector_space(field: &str, dim: usize) -> String {
    match dim {
        0 => "0".into(),
        1 => field.into(),
        d => format!("{field}^{d}"),
    }
}

/// Boundary data consumed by the homology routines. `k` ranges over `1..=top`;
/// the map in degree `k` goes from `C_k` to `C_{k-1}`.
pub trait BoundaryMaps {
    fn ranks(&self) -> Vec<usize>;
    fn smith(&self, k: usize) -> SmithForm;
    fn rank_mod2(&self, k: usize) -> usize;
}

impl BoundaryMaps for ChainComplexZ {
    fn ranks(&self) -> Vec<usize> {
        self.ranks.clone()
    }

    fn smith(&self, k: usize) -> SmithForm {
        smith_normal_form(&self.d[k])
    }

    fn rank_mod2(&self, k: usize) -> usize {
        gf2_rank(&self.d[k].mod2())
    }
}

/// A chain complex with sparse machine-integer boundaries.
#[derive(Clone, Debug)]
pub struct SparseChainComplex {
    pub ranks: Vec<usize>,
    /// `d[k]: C_k -> C_{k-1}`; `d[0]` has no rows.
    pub d: Vec<SparseIntMatrix>,
}

impl SparseChainComplex {
    pub fn is_complex(&self) -> bool {
        (2..self.ranks.len()).all(|k| {
            self.d[k - 1]
                .mul(&self.d[k])
                .is_some_and(|m| m.is_zero())
        })
    }
}

impl BoundaryMaps for SparseChainComplex {
    fn ranks(&self) -> Vec<usize> {
        self.ranks.clone()
    }

    fn smith(&self, k: usize) -> SmithForm {
        self.d[k].smith_form()
    }

    fn rank_mod2(&self, k: usize) -> usize {
        self.d[k].rank_mod2()
    }
}

/// Homology over all three coefficient rings. The `Z/2` computation uses the
/// mod-2 reduction of the boundaries and is independent of the integral one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTriple {
    pub z: HomologyProfile,
    pub q: HomologyProfile,
    pub z2: HomologyProfile,
}

impl HomologyTriple {
    pub fn get(&self, c: Coefficients) -> &HomologyProfile {
        match c {
            Coefficients::Z => &self.z,
            Coefficients::Q => &self.q,
            Coefficients::Z2 => &self.z2,
        }
    }
}

pub fn homology_triple(c: &impl BoundaryMaps) -> HomologyTriple {
    let ranks = c.ranks();
    let top = ranks.len() - 1;
    let snf: Vec<Option<SmithForm>> = (0..=top + 1)
        .map(|k| (1..=top).contains(&k).then(|| c.smith(k)))
        .collect();
    let rank_z = |k: usize| snf[k].as_ref().map_or(0, SmithForm::rank);
    let rank_2: Vec<usize> = (0..=top + 1)
        .map(|k| if (1..=top).contains(&k) { c.rank_mod2(k) } else { 0 })
        .collect();
    let mut z = Vec::new();
    let mut q = Vec::new();
    let mut z2 = Vec::new();
    for k in 0..=top {
        let free = ranks[k] - rank_z(k) - rank_z(k + 1);
        let torsion = snf[k + 1].as_ref().map_or_else(Vec::new, SmithForm::torsion);
        z.push(AbelianGroup::from_cyclic(free, &torsion));
        q.push(AbelianGroup::free(free));
        z2.push(AbelianGroup::free(ranks[k] - rank_2[k] - rank_2[k + 1]));
    }
    HomologyTriple {
        z: HomologyProfile { coeff: Coefficients::Z, groups: z },
        q: HomologyProfile { coeff: Coefficients::Q, groups: q },
        z2: HomologyProfile { coeff: Coefficients::Z2, groups: z2 },
    }
}

pub fn homology_from_chain(c: &impl BoundaryMaps, coeff: Coefficients) -> HomologyProfile {
    homology_triple(c).get(coeff).clone()
}

fn tail(h: &[i64], from: usize) -> usize {
    h.get(from..).map_or(0, |t| t.iter().sum::<i64>()) as usize
}

/// Closed-form homology of the small orbifold over an `n`-polytope with h-vector `h`.
pub fn theorem_homology(h: &[i64], n: usize, coeff: Coefficients) -> HomologyProfile {
    let groups = (0..=n)
        .map(|k| match coeff {
            Coefficients::Z | Coefficients::Q => {
                if k == 0 || (k == n && n.is_multiple_of(2)) {
                    AbelianGroup::free(1)
                } else if k % 2 == 0 && k < n {
                    let twos = if coeff == Coefficients::Z { tail(h, k + 1) } else { 0 };
                    AbelianGroup::with_twos(h[k] as usize, twos)
                } else {
                    AbelianGroup::zero()
                }
            }
            Coefficients::Z2 => {
                if k == 0 || k == n {
                    AbelianGroup::free(1)
                } else if k == 1 {
                    AbelianGroup::zero()
                } else {
                    AbelianGroup::free(tail(h, k))
                }
            }
        })
        .collect();
    HomologyProfile { coeff, groups }
}

/// `Σ h_{2i}`, the mod-2 Euler characteristic.
pub fn euler_mod2(h: &[i64], n: usize) -> i64 {
    (0..=n).step_by(2).map(|i| h[i]).sum()
}

/// Closed-form integral homology of the toric analogue, degrees `0..=2n-1`.
pub fn theorem_toric_homology(h: &[i64], n: usize) -> HomologyProfile {
    let top = 2 * n - 1;
    let groups = (0..=top)
        .map(|k| {
            if k == 0 || k == top {
                AbelianGroup::free(1)
            } else if k % 2 == 1 && k > 1 {
                AbelianGroup::free(tail(h, k.div_ceil(2)))
            } else {
                AbelianGroup::zero()
            }
        })
        .collect();
    HomologyProfile { coeff: Coefficients::Z, groups }
}

/// `h_0 - Σ_{i>=2} (i-1) h_i`.
pub fn toric_euler(h: &[i64]) -> i64 {
    h[0] - h.iter().enumerate().skip(2).map(|(i, &x)| (i as i64 - 1) * x).sum::<i64>()
}

/// Per-degree check of `dim H_k(Z/2) = rank H_k + t_2(H_k) + t_2(H_{k-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalCoefficientCheck {
    pub predicted: Vec<usize>,
    pub actual: Vec<usize>,
}

impl UniversalCoefficientCheck {
    pub fn holds(&self) -> bool {
        self.predicted == self.actual
    }
}

pub fn universal_coefficients(z: &HomologyProfile, z2: &HomologyProfile) -> UniversalCoefficientCheck {
    let predicted = (0..z.groups.len())
        .map(|k| {
            z.groups[k].free_rank
                + z.groups[k].two_rank_of_torsion()
                + if k > 0 { z.groups[k - 1].two_rank_of_torsion() } else { 0 }
        })
        .collect();
    UniversalCoefficientCheck { predicted, actual: z2.dims() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntMatrix;

    fn cube_like() -> ChainComplexZ {
        // the X(I^3) complex: d3 = (2,2,2,2)^T, d2 = 0, d1 a path tree
        let mut d1 = IntMatrix::zeros(8, 7);
        for j in 0..7 {
            d1.set(j + 1, j, BigInt::from(1));
            d1.set(j, j, BigInt::from(-1));
        }
        ChainComplexZ {
            ranks: vec![8, 7, 4, 1],
            d: vec![
                IntMatrix::zeros(0, 8),
                d1,
                IntMatrix::zeros(7, 4),
                IntMatrix::from_rows(&[vec![2], vec![2], vec![2], vec![2]]),
            ],
        }
    }

    #[test]
    fn cube_homology() {
        let t = homology_triple(&cube_like());
        assert_eq!(t.z.groups, vec![AbelianGroup::free(1), AbelianGroup::zero(), AbelianGroup::with_twos(3, 1), AbelianGroup::zero()]);
        assert_eq!(t.z, theorem_homology(&[1, 3, 3, 1], 3, Coefficients::Z));
        assert_eq!(t.q, theorem_homology(&[1, 3, 3, 1], 3, Coefficients::Q));
        assert_eq!(t.z2.dims(), vec![1, 0, 4, 1]);
        assert_eq!(t.z2, theorem_homology(&[1, 3, 3, 1], 3, Coefficients::Z2));
        assert!(universal_coefficients(&t.z, &t.z2).holds());
        assert_eq!(t.z.to_string(), "(Z, 0, Z^3 ⊕ Z2, 0)");
    }

    #[test]
    fn theorem_values() {
        let z = theorem_homology(&[1, 4, 6, 4, 1], 4, Coefficients::Z);
        assert_eq!(z.to_string(), "(Z, 0, Z^6 ⊕ Z2^5, 0, Z)");
        assert_eq!(theorem_homology(&[1, 2, 1], 2, Coefficients::Z).to_string(), "(Z, 0, Z)");
        assert_eq!(euler_mod2(&[1, 3, 3, 1], 3), 4);
        assert_eq!(euler_mod2(&[1, 2, 1], 2), 2);
        assert_eq!(euler_mod2(&[1, 4, 6, 4, 1], 4), 8);
        let z2 = theorem_homology(&[1, 4, 6, 4, 1], 4, Coefficients::Z2);
        assert_eq!(z2.euler_characteristic(), 8);
    }

    #[test]
    fn toric_values() {
        let t = theorem_toric_homology(&[1, 3, 3, 1], 3);
        assert_eq!(t.to_string(), "(Z, 0, 0, Z^4, 0, Z)");
        assert_eq!(toric_euler(&[1, 3, 3, 1]), -4);
        assert_eq!(t.euler_characteristic(), -4);
        assert_eq!(theorem_toric_homology(&[1, 2, 1], 2).to_string(), "(Z, 0, 0, Z)");
    }

    #[test]
    fn invariant_factor_normalization() {
        let g = AbelianGroup::from_cyclic(0, &[BigInt::from(6), BigInt::from(4), BigInt::from(3)]);
        assert_eq!(g.torsion, vec![BigInt::from(6), BigInt::from(12)]);
        assert_eq!(g.primary_torsion(), vec![BigInt::from(2), BigInt::from(3), BigInt::from(3), BigInt::from(4)]);
        assert_eq!(g.two_rank_of_torsion(), 2);
        assert_eq!(g.to_string(), "Z2 ⊕ Z3^2 ⊕ Z4");
    }

    #[test]
    fn sparse_and_dense_agree() {
        let dense = cube_like();
        let sparse = SparseChainComplex {
            ranks: dense.ranks.clone(),
            d: dense.d.iter().map(SparseIntMatrix::from_dense).collect(),
        };
        assert!(sparse.is_complex());
        assert_eq!(homology_triple(&sparse), homology_triple(&dense));
    }

    #[test]
    fn rp2_universal_coefficients() {
        // RP^2: one cell in each dimension, d2 = 2, d1 = 0
        let c = ChainComplexZ {
            ranks: vec![1, 1, 1],
            d: vec![IntMatrix::zeros(0, 1), IntMatrix::zeros(1, 1), IntMatrix::from_rows(&[vec![2]])],
        };
        let t = homology_triple(&c);
        assert_eq!(t.z.to_string(), "(Z, Z2, 0)");
        assert_eq!(t.z2.dims(), vec![1, 1, 1]);
        assert!(universal_coefficients(&t.z, &t.z2).holds());
    }
}
