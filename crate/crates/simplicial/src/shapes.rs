//! Standard simplices, boundaries, and horns.

use std::collections::BTreeMap;

use crate::complex::{FiniteSimplicialSet, SemiSimplicialComplex, SsetError};
use crate::poset::{nerve, FinitePoset, NerveComplex};

/// A semisimplicial complex whose simplices are vertex subsets, closed under
/// faces. Carrier for boundaries, horns, and other non-singular shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetComplex {
    vertex_count: usize,
    /// `cells[n][idx]` = sorted vertex list of size `n + 1`.
    cells: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
    sset: SemiSimplicialComplex,
}

impl SubsetComplex {
    /// Builds from a family of vertex sets; the family is closed under
    /// subsets automatically.
    pub fn from_cells(vertex_count: usize, family: &[Vec<usize>]) -> Result<Self, SsetError> {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<usize>>> = Vec::new();
        let push = |by_dim: &mut Vec<std::collections::BTreeSet<Vec<usize>>>, c: Vec<usize>| {
            let d = c.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(Default::default());
            }
            by_dim[d].insert(c);
        };
        for cell in family {
            let mut c = cell.clone();
            c.sort_unstable();
            c.dedup();
            if c.len() != cell.len() {
                return Err(SsetError::Other(format!(
                    "cell {cell:?} has repeated vertices"
                )));
            }
            if c.iter().any(|&v| v >= vertex_count) {
                return Err(SsetError::Other(format!("cell {cell:?} vertex out of range")));
            }
            push(&mut by_dim, c);
        }
        // close under faces
        for d in (1..by_dim.len()).rev() {
            let faces: Vec<Vec<usize>> = by_dim[d]
                .iter()
                .flat_map(|c| {
                    (0..c.len()).map(move |i| {
                        let mut f = c.clone();
                        f.remove(i);
                        f
                    })
                })
                .collect();
            for f in faces {
                push(&mut by_dim, f);
            }
        }
        let cells: Vec<Vec<Vec<usize>>> = by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let index: Vec<BTreeMap<Vec<usize>, usize>> = cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c.clone(), i))
                    .collect()
            })
            .collect();
        let faces: Vec<Vec<Vec<usize>>> = cells
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
        let sset = SemiSimplicialComplex::from_faces(faces)?;
        Ok(SubsetComplex {
            vertex_count,
            cells,
            index,
            sset,
        })
    }

    pub fn sset(&self) -> &SemiSimplicialComplex {
        &self.sset
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn cell(&self, n: usize, idx: usize) -> &[usize] {
        &self.cells[n][idx]
    }

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        self.index
            .get(vertices.len() - 1)
            .and_then(|m| m.get(vertices).copied())
    }

    pub fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }
}

/// The nerve of the linear order on `card` elements, truncated at `top_dim`;
/// chains are retained for building maps in and out.
pub fn standard_simplex_nerve(card: usize, top_dim: usize) -> Result<NerveComplex, SsetError> {
    if card == 0 {
        return Err(SsetError::EmptyLinearOrder);
    }
    Ok(nerve(&FinitePoset::linear(card), top_dim))
}

/// The standard simplex on a linear order with `card` elements; `k`-simplices
/// are weakly ascending chains, degenerate ones flagged.
pub fn standard_simplex(card: usize, top_dim: usize) -> Result<FiniteSimplicialSet, SsetError> {
    Ok(standard_simplex_nerve(card, top_dim)?.sset().clone())
}

/// The boundary of the `n`-simplex: every proper nonempty vertex subset.
pub fn boundary(n: usize) -> Result<SubsetComplex, SsetError> {
    if n == 0 {
        return Err(SsetError::DimensionTooSmall);
    }
    let family: Vec<Vec<usize>> = (0..=n)
        .map(|i| (0..=n).filter(|&v| v != i).collect())
        .collect();
    SubsetComplex::from_cells(n + 1, &family)
}

/// The horn that deletes the interior and the face opposite vertex `j`.
pub fn horn(n: usize, j: usize) -> Result<SubsetComplex, SsetError> {
    if n == 0 {
        return Err(SsetError::DimensionTooSmall);
    }
    if j > n {
        return Err(SsetError::HornIndexOutOfRange { n, j });
    }
    let family: Vec<Vec<usize>> = (0..=n)
        .filter(|&i| i != j)
        .map(|i| (0..=n).filter(|&v| v != i).collect())
        .collect();
    SubsetComplex::from_cells(n + 1, &family)
}

#[cfg(test)]
fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
