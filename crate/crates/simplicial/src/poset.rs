//! Finite posets, the nonempty-subset lattice of a linear order, and nerves.

use std::collections::BTreeMap;

use crate::complex::{FiniteSimplicialSet, SemiSimplicialComplex, SsetError};

/// Default bound on the size of the ground linear order for subset lattices.
pub const SUBSET_BOUND: usize = 8;

/// A finite poset on elements `0..n`, stored as a dense `leq` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds from a full relation matrix; reflexivity, antisymmetry and
    /// transitivity are checked exhaustively.
    pub fn from_relation(leq: Vec<Vec<bool>>) -> Result<Self, SsetError> {
        let n = leq.len();
        if leq.iter().any(|row| row.len() != n) {
            return Err(SsetError::Other("leq matrix is not square".into()));
        }
        let p = FinitePoset { n, leq };
        p.check()?;
        Ok(p)
    }

    /// Builds the reflexive-transitive closure of a set of `i <= j` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, SsetError> {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(SsetError::Other(format!(
                    "relation pair ({i},{j}) out of range for {n} elements"
                )));
            }
            leq[i][j] = true;
        }
        // Floyd-Warshall style transitive closure
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(leq)
    }

    /// A linear order on `0..n`.
    pub fn linear(n: usize) -> Self {
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        FinitePoset { n, leq }
    }

    fn check(&self) -> Result<(), SsetError> {
        for i in 0..self.n {
            if !self.leq[i][i] {
                return Err(SsetError::Other(format!("not reflexive at {i}")));
            }
            for j in 0..self.n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(SsetError::Other(format!("not antisymmetric at ({i},{j})")));
                }
                for k in 0..self.n {
                    if self.leq[i][j] && self.leq[j][k] && !self.leq[i][k] {
                        return Err(SsetError::Other(format!(
                            "not transitive at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..self.n)
                    .any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// All nonempty subsets of a linear order `I = {0, .., ground-1}`, each with
/// its cached maximum, ordered by inclusion. Elements are listed in the
/// (cardinality, lexicographic) linear extension used everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetLattice {
    ground: usize,
    subsets: Vec<u32>,
    max: Vec<usize>,
    poset: FinitePoset,
}

impl SubsetLattice {
    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, idx: usize) -> u32 {
        self.subsets[idx]
    }

    pub fn members(&self, idx: usize) -> Vec<usize> {
        let m = self.subsets[idx];
        (0..self.ground).filter(|i| m & (1 << i) != 0).collect()
    }

    /// Cached order-maximum of the subset.
    pub fn max(&self, idx: usize) -> usize {
        self.max[idx]
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn index_of(&self, mask: u32) -> Option<usize> {
        self.subsets.iter().position(|&m| m == mask)
    }
}

/// The poset `P'(I)` of nonempty subsets of the linear order `{0, .., k-1}`.
pub fn nonempty_subsets_poset(card: usize, bound: usize) -> Result<SubsetLattice, SsetError> {
    if card == 0 {
        return Err(SsetError::EmptyLinearOrder);
    }
    if card > bound {
        return Err(SsetError::SubsetBoundExceeded { got: card, bound });
    }
    let mut subsets: Vec<u32> = (1u32..(1 << card)).collect();
    let elems = |m: u32| -> Vec<usize> { (0..card).filter(|i| m & (1 << i) != 0).collect() };
    subsets.sort_by_key(|&m| (m.count_ones(), elems(m)));
    let max: Vec<usize> = subsets
        .iter()
        .map(|&m| (31 - m.leading_zeros()) as usize)
        .collect();
    let n = subsets.len();
    let leq = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| subsets[a] & !subsets[b] == 0)
                .collect()
        })
        .collect();
    let poset = FinitePoset::from_relation(leq)?;
    Ok(SubsetLattice {
        ground: card,
        subsets,
        max,
        poset,
    })
}

/// The nerve of a finite poset, truncated at `top_dim`, with the chain
/// underlying each simplex retained for lookups and map construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerveComplex {
    poset: FinitePoset,
    sset: FiniteSimplicialSet,
    /// `chains[n][idx]` = weakly ascending chain of poset elements.
    chains: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl NerveComplex {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn sset(&self) -> &FiniteSimplicialSet {
        &self.sset
    }

    pub fn chain(&self, n: usize, idx: usize) -> &[usize] {
        &self.chains[n][idx]
    }

    pub fn index_of_chain(&self, chain: &[usize]) -> Option<usize> {
        self.index
            .get(chain.len() - 1)
            .and_then(|m| m.get(chain).copied())
    }

    /// Indices of the strictly ascending (nondegenerate) chains in dimension `n`.
    pub fn strict_chain_indices(&self, n: usize) -> Vec<usize> {
        (0..self.chains[n].len())
            .filter(|&i| {
                let c = &self.chains[n][i];
                c.windows(2).all(|w| w[0] != w[1])
            })
            .collect()
    }
}

/// Builds the nerve of `p` truncated at `top_dim`. Simplices in dimension `k`
/// are the weakly ascending chains of length `k + 1`, in lexicographic order.
pub fn nerve(p: &FinitePoset, top_dim: usize) -> NerveComplex {
    let n = p.len();
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::with_capacity(top_dim + 1);
    chains.push((0..n).map(|i| vec![i]).collect());
    for d in 1..=top_dim {
        let mut level = Vec::new();
        for c in &chains[d - 1] {
            let last = *c.last().unwrap();
            for next in 0..n {
                if p.leq(last, next) {
                    let mut ext = c.clone();
                    ext.push(next);
                    level.push(ext);
                }
            }
        }
        level.sort();
        chains.push(level);
    }
    let index: Vec<BTreeMap<Vec<usize>, usize>> = chains
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i))
                .collect()
        })
        .collect();

    let faces: Vec<Vec<Vec<usize>>> = chains
        .iter()
        .enumerate()
        .map(|(d, level)| {
            level
                .iter()
                .map(|c| {
                    if d == 0 {
                        return Vec::new();
                    }
                    (0..=d)
                        .map(|i| {
                            let mut f = c.clone();
                            f.remove(i);
                            index[d - 1][&f]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let degen: Vec<Vec<Vec<usize>>> = chains
        .iter()
        .take(top_dim)
        .enumerate()
        .map(|(d, level)| {
            level
                .iter()
                .map(|c| {
                    (0..=d)
                        .map(|i| {
                            let mut s = c.clone();
                            s.insert(i, c[i]);
                            index[d + 1][&s]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let underlying = SemiSimplicialComplex::from_faces(faces).expect("nerve face tables");
    let sset = FiniteSimplicialSet::from_parts(underlying, degen).expect("nerve degeneracies");
    NerveComplex {
        poset: p.clone(),
        sset,
        chains,
        index,
    }
}
