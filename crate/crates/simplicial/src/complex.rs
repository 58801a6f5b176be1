//! Dense-table carriers for finite semisimplicial and simplicial sets.
//!
//! Simplices are stored explicitly per dimension; face and degeneracy maps are
//! dense index tables. All values are immutable after construction, so every
//! operation in this crate may read them concurrently.

use std::fmt;

use thiserror::Error;

/// Position of a simplex: its dimension and its index within that dimension's
/// simplex list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub fn new(dim: usize, index: usize) -> Self {
        SimplexId { dim, index }
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dim, self.index)
    }
}

#[derive(Debug, Error)]
pub enum SsetError {
    #[error("empty linear order")]
    EmptyLinearOrder,
    #[error("dimension must be at least 1")]
    DimensionTooSmall,
    #[error("horn index {j} out of range for dimension {n}")]
    HornIndexOutOfRange { n: usize, j: usize },
    #[error("subset bound exceeded: |I| = {got} > {bound}")]
    SubsetBoundExceeded { got: usize, bound: usize },
    #[error("complex is singular at simplex {0}: {1}")]
    Singular(SimplexId, String),
    #[error("face index {index} out of range in dimension {dim} (count {count})")]
    FaceIndexOutOfRange { dim: usize, index: usize, count: usize },
    #[error("structural validation failed:\n{0}")]
    InvalidStructure(ViolationReport),
    #[error("enumeration budget {budget} exceeded (partial count {partial})")]
    BudgetExceeded { budget: usize, partial: usize },
    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error("{0}")]
    Other(String),
}

/// A single violated simplicial identity, with the witnessing simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub witness: SimplexId,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.witness, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport(pub Vec<Violation>);

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A finite semisimplicial set: simplices per dimension with face tables.
///
/// `faces[n][idx][i]` is the index of `d_i` of simplex `idx` in dimension
/// `n - 1`; `faces[0]` is a list of empty vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiSimplicialComplex {
    top_dim: usize,
    faces: Vec<Vec<Vec<usize>>>,
}

impl SemiSimplicialComplex {
    /// Builds a complex from raw face tables. Index ranges are checked here;
    /// the semisimplicial identities are checked by [`Self::validate`].
    pub fn from_faces(faces: Vec<Vec<Vec<usize>>>) -> Result<Self, SsetError> {
        if faces.is_empty() {
            return Err(SsetError::Other("complex must have dimension 0".into()));
        }
        let top_dim = faces.len() - 1;
        for (n, level) in faces.iter().enumerate() {
            for (idx, fs) in level.iter().enumerate() {
                if n == 0 {
                    if !fs.is_empty() {
                        return Err(SsetError::Other(format!(
                            "vertex {idx} has face entries"
                        )));
                    }
                    continue;
                }
                if fs.len() != n + 1 {
                    return Err(SsetError::Other(format!(
                        "simplex ({n},{idx}) has {} faces, expected {}",
                        fs.len(),
                        n + 1
                    )));
                }
                let below = faces[n - 1].len();
                for &f in fs {
                    if f >= below {
                        return Err(SsetError::FaceIndexOutOfRange {
                            dim: n - 1,
                            index: f,
                            count: below,
                        });
                    }
                }
            }
        }
        Ok(SemiSimplicialComplex { top_dim, faces })
    }

    pub fn top_dim(&self) -> usize {
        self.top_dim
    }

    /// Number of simplices in dimension `n` (zero above the truncation).
    pub fn count(&self, n: usize) -> usize {
        self.faces.get(n).map_or(0, |l| l.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(|l| l.len()).collect()
    }

    /// `d_i` of the simplex `(n, idx)`.
    pub fn face(&self, n: usize, idx: usize, i: usize) -> usize {
        self.faces[n][idx][i]
    }

    pub fn faces_of(&self, n: usize, idx: usize) -> &[usize] {
        &self.faces[n][idx]
    }

    /// Vertex indices of a simplex, obtained by iterated faces. The `k`-th
    /// vertex is reached by deleting every other position.
    pub fn vertices_of(&self, id: SimplexId) -> Vec<usize> {
        (0..=id.dim)
            .map(|k| {
                let mut cur = id;
                // delete positions above k, then those below
                while cur.dim > 0 {
                    let drop = if cur.dim > k { cur.dim } else { 0 };
                    cur = SimplexId::new(cur.dim - 1, self.face(cur.dim, cur.index, drop));
                }
                cur.index
            })
            .collect()
    }

    /// Checks the semisimplicial identity `d_i d_j = d_{j-1} d_i` (i < j) on
    /// every simplex. Empty report iff the complex is well formed.
    pub fn validate(&self) -> ViolationReport {
        let mut out = Vec::new();
        for n in 2..=self.top_dim {
            for idx in 0..self.count(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(n - 1, self.face(n, idx, j), i);
                        let rhs = self.face(n - 1, self.face(n, idx, i), j - 1);
                        if lhs != rhs {
                            out.push(Violation {
                                witness: SimplexId::new(n, idx),
                                detail: format!(
                                    "d_{i} d_{j} = {lhs} but d_{} d_{i} = {rhs}",
                                    j - 1
                                ),
                            });
                        }
                    }
                }
            }
        }
        ViolationReport(out)
    }

    /// Test-support hook: overwrite one face-table entry.
    pub fn corrupt_face_entry(&mut self, n: usize, idx: usize, i: usize, value: usize) {
        self.faces[n][idx][i] = value;
    }

    /// Applies an injective monotone operator `alpha: [d] -> [n]` to a
    /// simplex of dimension `n = id.dim`, producing its `alpha`-indexed face.
    /// Omitted vertices are removed from the top down, so the face index of a
    /// value is the value itself.
    pub fn act_injective(&self, id: SimplexId, alpha: &[usize]) -> SimplexId {
        assert!(!alpha.is_empty() && alpha.len() <= id.dim + 1);
        let mut cur = id;
        for v in (0..=id.dim).rev() {
            if !alpha.contains(&v) {
                cur = SimplexId::new(cur.dim - 1, self.face(cur.dim, cur.index, v));
            }
        }
        cur
    }
}

/// A finite simplicial set: a semisimplicial complex truncated at `top_dim`
/// plus degeneracy tables up to `top_dim - 1`, and a stored degeneracy flag
/// per simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    underlying: SemiSimplicialComplex,
    /// `degen[n][idx][i]` = index of `s_i` of `(n, idx)` in dimension `n + 1`;
    /// defined for `n < top_dim`.
    degen: Vec<Vec<Vec<usize>>>,
    degenerate: Vec<Vec<bool>>,
}

impl FiniteSimplicialSet {
    pub fn from_parts(
        underlying: SemiSimplicialComplex,
        degen: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, SsetError> {
        let top = underlying.top_dim();
        if degen.len() != top {
            return Err(SsetError::Other(format!(
                "degeneracy tables cover {} dimensions, expected {}",
                degen.len(),
                top
            )));
        }
        for (n, level) in degen.iter().enumerate() {
            if level.len() != underlying.count(n) {
                return Err(SsetError::Other(format!(
                    "degeneracy table in dimension {n} has {} rows, expected {}",
                    level.len(),
                    underlying.count(n)
                )));
            }
            for (idx, ss) in level.iter().enumerate() {
                if ss.len() != n + 1 {
                    return Err(SsetError::Other(format!(
                        "simplex ({n},{idx}) has {} degeneracies, expected {}",
                        ss.len(),
                        n + 1
                    )));
                }
                let above = underlying.count(n + 1);
                for &s in ss {
                    if s >= above {
                        return Err(SsetError::FaceIndexOutOfRange {
                            dim: n + 1,
                            index: s,
                            count: above,
                        });
                    }
                }
            }
        }
        // a simplex is degenerate iff it lies in the image of some s_i
        let mut degenerate: Vec<Vec<bool>> = (0..=top)
            .map(|n| vec![false; underlying.count(n)])
            .collect();
        for (n, level) in degen.iter().enumerate() {
            for ss in level {
                for &s in ss {
                    degenerate[n + 1][s] = true;
                }
            }
        }
        Ok(FiniteSimplicialSet {
            underlying,
            degen,
            degenerate,
        })
    }

    pub fn underlying(&self) -> &SemiSimplicialComplex {
        &self.underlying
    }

    pub fn top_dim(&self) -> usize {
        self.underlying.top_dim()
    }

    pub fn count(&self, n: usize) -> usize {
        self.underlying.count(n)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.underlying.counts()
    }

    pub fn face(&self, n: usize, idx: usize, i: usize) -> usize {
        self.underlying.face(n, idx, i)
    }

    /// `s_i` of `(n, idx)`; only defined below the truncation.
    pub fn degeneracy(&self, n: usize, idx: usize, i: usize) -> usize {
        self.degen[n][idx][i]
    }

    pub fn is_degenerate(&self, id: SimplexId) -> bool {
        self.degenerate[id.dim][id.index]
    }

    pub fn nondegenerate_count(&self, n: usize) -> usize {
        self.degenerate
            .get(n)
            .map_or(0, |l| l.iter().filter(|d| !**d).count())
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.top_dim())
            .map(|n| self.nondegenerate_count(n))
            .collect()
    }

    pub fn degen_tables(&self) -> &Vec<Vec<Vec<usize>>> {
        &self.degen
    }

    /// Checks the full set of simplicial identities within the truncation.
    pub fn validate(&self) -> ViolationReport {
        let mut out = self.underlying.validate().0;
        let top = self.top_dim();
        for n in 0..top {
            for idx in 0..self.count(n) {
                let w = SimplexId::new(n, idx);
                // s_i s_j = s_{j+1} s_i for i <= j (needs dim n+2 available)
                if n + 2 <= top {
                    for j in 0..=n {
                        for i in 0..=j {
                            let lhs = self.degeneracy(n + 1, self.degeneracy(n, idx, j), i);
                            let rhs = self.degeneracy(n + 1, self.degeneracy(n, idx, i), j + 1);
                            if lhs != rhs {
                                out.push(Violation {
                                    witness: w,
                                    detail: format!("s_{i} s_{j} != s_{} s_{i}", j + 1),
                                });
                            }
                        }
                    }
                }
                for j in 0..=n {
                    let sj = self.degeneracy(n, idx, j);
                    // d_j s_j = d_{j+1} s_j = id
                    if self.face(n + 1, sj, j) != idx {
                        out.push(Violation {
                            witness: w,
                            detail: format!("d_{j} s_{j} is not the identity"),
                        });
                    }
                    if self.face(n + 1, sj, j + 1) != idx {
                        out.push(Violation {
                            witness: w,
                            detail: format!("d_{} s_{j} is not the identity", j + 1),
                        });
                    }
                    if n >= 1 {
                        for i in 0..=n + 1 {
                            if i == j || i == j + 1 {
                                continue;
                            }
                            // d_i s_j = s_{j-1} d_i (i < j) or s_j d_{i-1} (i > j+1)
                            let lhs = self.face(n + 1, sj, i);
                            let rhs = if i < j {
                                self.degeneracy(n - 1, self.face(n, idx, i), j - 1)
                            } else {
                                self.degeneracy(n - 1, self.face(n, idx, i - 1), j)
                            };
                            if lhs != rhs {
                                out.push(Violation {
                                    witness: w,
                                    detail: format!("d_{i} s_{j} mismatch"),
                                });
                            }
                        }
                    }
                }
            }
        }
        ViolationReport(out)
    }

    /// Applies a monotone operator `alpha: [d] -> [k]` (`k = id.dim`) to a
    /// simplex, using the face tables for omitted values and the degeneracy
    /// tables for repeats. Requires `d <= top_dim`.
    pub fn act(&self, id: SimplexId, alpha: &[usize]) -> SimplexId {
        assert!(!alpha.is_empty());
        debug_assert!(alpha.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(*alpha.last().unwrap() <= id.dim);
        // strip values missing from the image, largest first
        let k = id.dim;
        let mut missing: Vec<usize> = (0..=k).filter(|v| !alpha.contains(v)).collect();
        let mut cur = id;
        while let Some(v) = missing.pop() {
            cur = SimplexId::new(cur.dim - 1, self.face(cur.dim, cur.index, v));
        }
        // now apply the surjective part: duplicate positions become s_i
        let img: Vec<usize> = {
            let mut v: Vec<usize> = alpha.to_vec();
            v.dedup();
            v
        };
        let beta: Vec<usize> = alpha
            .iter()
            .map(|a| img.binary_search(a).unwrap())
            .collect();
        self.act_surjective(cur, &beta)
    }

    fn act_surjective(&self, id: SimplexId, beta: &[usize]) -> SimplexId {
        // beta: [d] ->> [m], m = id.dim; if injective it is the identity
        if beta.len() == id.dim + 1 {
            return id;
        }
        let i = (0..beta.len() - 1).find(|&i| beta[i] == beta[i + 1]).unwrap();
        let shorter: Vec<usize> = beta
            .iter()
            .enumerate()
            .filter_map(|(j, &b)| (j != i + 1).then_some(b))
            .collect();
        let inner = self.act_surjective(id, &shorter);
        SimplexId::new(inner.dim + 1, self.degeneracy(inner.dim, inner.index, i))
    }
}

/// Per-dimension index functions of a map between complexes.
///
/// The carrier stays small by not owning its endpoints; commutation with the
/// face (and degeneracy) tables is checked by [`validate_semisimplicial_map`]
/// and [`validate_simplicial_map`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimplicialMapData {
    /// `levels[n][idx]` = image index in dimension `n` of the target.
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMapData {
    pub fn apply(&self, id: SimplexId) -> SimplexId {
        SimplexId::new(id.dim, self.levels[id.dim][id.index])
    }

    /// Composition `other . self` up to the shared truncation.
    pub fn then(&self, other: &SimplicialMapData) -> SimplicialMapData {
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(n, l)| l.iter().map(|&i| other.levels[n][i]).collect())
            .collect();
        SimplicialMapData { levels }
    }

    pub fn identity(counts: &[usize]) -> SimplicialMapData {
        SimplicialMapData {
            levels: counts.iter().map(|&c| (0..c).collect()).collect(),
        }
    }
}

/// Checks that `map` commutes with every face map of `src` / `dst`.
pub fn validate_semisimplicial_map(
    src: &SemiSimplicialComplex,
    dst: &SemiSimplicialComplex,
    map: &SimplicialMapData,
) -> ViolationReport {
    let mut out = Vec::new();
    let max_n = map.levels.len().saturating_sub(1);
    for n in 1..=max_n.min(src.top_dim()) {
        for idx in 0..src.count(n) {
            for i in 0..=n {
                let lhs = map.levels[n - 1][src.face(n, idx, i)];
                let rhs = dst.face(n, map.levels[n][idx], i);
                if lhs != rhs {
                    out.push(Violation {
                        witness: SimplexId::new(n, idx),
                        detail: format!("image does not commute with d_{i}"),
                    });
                }
            }
        }
    }
    ViolationReport(out)
}

/// Checks face and degeneracy commutation for a map of simplicial sets.
pub fn validate_simplicial_map(
    src: &FiniteSimplicialSet,
    dst: &FiniteSimplicialSet,
    map: &SimplicialMapData,
) -> ViolationReport {
    let mut out = validate_semisimplicial_map(src.underlying(), dst.underlying(), map).0;
    let max_n = map.levels.len().saturating_sub(1);
    for n in 0..max_n.min(src.top_dim()) {
        for idx in 0..src.count(n) {
            for i in 0..=n {
                let lhs = map.levels[n + 1][src.degeneracy(n, idx, i)];
                let rhs = dst.degeneracy(n, map.levels[n][idx], i);
                if lhs != rhs {
                    out.push(Violation {
                        witness: SimplexId::new(n, idx),
                        detail: format!("image does not commute with s_{i}"),
                    });
                }
            }
        }
    }
    ViolationReport(out)
}
