//! Horn enumeration, filler search, bounded (inner-)Kan verification, and
//! the idempotent-equivalence criterion for edges of semisimplicial sets.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{SemiSimplicialComplex, SsetError};
use crate::shapes::{horn, SubsetComplex};

/// Default budget on horn maps enumerated per `(n, j)`.
pub const HORN_BUDGET: usize = 1_000_000;

/// A map from the horn `Lambda^n_j` into a complex, stored as per-dimension
/// index assignments over the horn's cells.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HornMap {
    pub n: usize,
    pub j: usize,
    /// `assignment[d][cell]` = image index in dimension `d` of the target.
    pub assignment: Vec<Vec<usize>>,
}

impl HornMap {
    /// Image of the horn cell spanned by `vertices` (sorted).
    pub fn image_of(&self, domain: &SubsetComplex, vertices: &[usize]) -> Option<usize> {
        let idx = domain.index_of(vertices)?;
        Some(self.assignment[vertices.len() - 1][idx])
    }
}

/// Checks and counts for one `(n, j)` horn family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornCheck {
    pub n: usize,
    pub j: usize,
    pub total: usize,
    pub filled: usize,
    pub unique: usize,
    /// Enumeration hit its budget; counts are lower bounds.
    pub incomplete: bool,
}

/// Aggregated report over a range of horn families.
#[derive(Debug, Clone, Default)]
pub struct KanReport {
    pub checks: Vec<HornCheck>,
    /// Unfillable horn maps kept as witnesses, capped per `(n, j)`.
    pub witnesses: Vec<HornMap>,
}

impl KanReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.filled == c.total && !c.incomplete)
    }

    pub fn all_unique(&self) -> bool {
        self.checks.iter().all(|c| c.unique == c.total)
    }
}

impl fmt::Display for KanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "horn {} {} total {} filled {}", c.n, c.j, c.total, c.filled)?;
        }
        Ok(())
    }
}

/// Enumerates every map `Lambda^n_j -> x`, in deterministic cell order.
/// Exceeding `budget` yields an error carrying the partial count.
pub fn enumerate_horns(
    x: &SemiSimplicialComplex,
    n: usize,
    j: usize,
    budget: usize,
) -> Result<Vec<HornMap>, SsetError> {
    let domain = horn(n, j)?;
    if x.top_dim() + 1 < n {
        return Err(SsetError::Other(format!(
            "target truncated at {} cannot receive {n}-horns",
            x.top_dim()
        )));
    }
    let top = domain.top_dim();
    let mut by_faces: Vec<BTreeMap<Vec<usize>, Vec<usize>>> = vec![BTreeMap::new(); top + 1];
    for (d, level) in by_faces.iter_mut().enumerate().skip(1) {
        for idx in 0..x.count(d) {
            let key: Vec<usize> = (0..=d).map(|i| x.face(d, idx, i)).collect();
            level.entry(key).or_default().push(idx);
        }
    }

    let mut out: Vec<HornMap> = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    search(x, &domain, 0, 0, &by_faces, &mut stack, &mut out, n, j, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    x: &SemiSimplicialComplex,
    domain: &SubsetComplex,
    d: usize,
    idx: usize,
    by_faces: &[BTreeMap<Vec<usize>, Vec<usize>>],
    assigned: &mut Vec<Vec<usize>>,
    out: &mut Vec<HornMap>,
    n: usize,
    j: usize,
    budget: usize,
) -> Result<(), SsetError> {
    let top = domain.top_dim();
    if d > top {
        if out.len() >= budget {
            return Err(SsetError::BudgetExceeded {
                budget,
                partial: out.len(),
            });
        }
        out.push(HornMap {
            n,
            j,
            assignment: assigned.clone(),
        });
        return Ok(());
    }
    if idx == domain.sset().count(d) {
        return search(x, domain, d + 1, 0, by_faces, assigned, out, n, j, budget);
    }
    let candidates: Vec<usize> = if d == 0 {
        (0..x.count(0)).collect()
    } else {
        let key: Vec<usize> = (0..=d)
            .map(|i| assigned[d - 1][domain.sset().face(d, idx, i)])
            .collect();
        by_faces[d].get(&key).cloned().unwrap_or_default()
    };
    for c in candidates {
        assigned[d].push(c);
        search(x, domain, d, idx + 1, by_faces, assigned, out, n, j, budget)?;
        assigned[d].pop();
    }
    Ok(())
}

/// Finds the first `n`-simplex of `x` whose faces restrict to `h`, in stored
/// simplex order.
pub fn find_filler(x: &SemiSimplicialComplex, h: &HornMap) -> Option<usize> {
    fillers(x, h).next()
}

pub fn count_fillers(x: &SemiSimplicialComplex, h: &HornMap) -> usize {
    fillers(x, h).count()
}

fn fillers<'a>(x: &'a SemiSimplicialComplex, h: &'a HornMap) -> impl Iterator<Item = usize> + 'a {
    let n = h.n;
    (0..x.count(n)).filter(move |&idx| {
        (0..=n).all(|i| {
            if i == h.j {
                return true;
            }
            let cell: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
            let pos = cell_position(n, h.j, &cell);
            x.face(n, idx, i) == h.assignment[n - 1][pos]
        })
    })
}

// Top cells of Lambda^n_j in sorted order are [0..n] \ {i} for i != j,
// and removing vertex i yields the cell at sorted position of that subset.
fn cell_position(n: usize, j: usize, cell: &[usize]) -> usize {
    // cells of dimension n-1 are sorted lexicographically; [0..n] \ {i} is
    // lexicographically increasing in... the omitted vertex i reversed.
    // Rather than reason it out, recompute the sorted list.
    let mut cells: Vec<Vec<usize>> = (0..=n)
        .filter(|&i| i != j)
        .map(|i| (0..=n).filter(|&v| v != i).collect())
        .collect();
    cells.sort();
    cells.iter().position(|c| c == cell).unwrap()
}

fn check_range(
    x: &SemiSimplicialComplex,
    max_n: usize,
    inner_only: bool,
    budget: usize,
    witness_cap: usize,
) -> KanReport {
    let pairs: Vec<(usize, usize)> = (1..=max_n)
        .flat_map(|n| {
            let range = if inner_only {
                (1..n).collect::<Vec<_>>()
            } else {
                (0..=n).collect()
            };
            range.into_iter().map(move |j| (n, j))
        })
        .collect();

    let results: Vec<(HornCheck, Vec<HornMap>)> = map_pairs(&pairs, |&(n, j)| {
        check_one(x, n, j, budget, witness_cap)
    });

    let mut report = KanReport::default();
    for (check, ws) in results {
        report.checks.push(check);
        report.witnesses.extend(ws);
    }
    report
}

#[cfg(feature = "parallel")]
fn map_pairs<T: Send, F: Fn(&(usize, usize)) -> T + Sync + Send>(
    pairs: &[(usize, usize)],
    f: F,
) -> Vec<T> {
    use rayon::prelude::*;
    pairs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_pairs<T, F: Fn(&(usize, usize)) -> T>(pairs: &[(usize, usize)], f: F) -> Vec<T> {
    pairs.iter().map(f).collect()
}

fn check_one(
    x: &SemiSimplicialComplex,
    n: usize,
    j: usize,
    budget: usize,
    witness_cap: usize,
) -> (HornCheck, Vec<HornMap>) {
    match enumerate_horns(x, n, j, budget) {
        Ok(horns) => {
            let mut filled = 0;
            let mut unique = 0;
            let mut witnesses = Vec::new();
            for h in &horns {
                match count_fillers(x, h) {
                    0 => {
                        if witnesses.len() < witness_cap {
                            witnesses.push(h.clone());
                        }
                    }
                    1 => {
                        filled += 1;
                        unique += 1;
                    }
                    _ => filled += 1,
                }
            }
            (
                HornCheck {
                    n,
                    j,
                    total: horns.len(),
                    filled,
                    unique,
                    incomplete: false,
                },
                witnesses,
            )
        }
        Err(SsetError::BudgetExceeded { partial, .. }) => (
            HornCheck {
                n,
                j,
                total: partial,
                filled: 0,
                unique: 0,
                incomplete: true,
            },
            Vec::new(),
        ),
        Err(_) => (
            HornCheck {
                n,
                j,
                total: 0,
                filled: 0,
                unique: 0,
                incomplete: true,
            },
            Vec::new(),
        ),
    }
}

/// Weak Kan check: every inner horn `0 < j < n <= max_n` must fill.
pub fn check_inner_kan(x: &SemiSimplicialComplex, max_n: usize, budget: usize) -> KanReport {
    check_range(x, max_n, true, budget, 4)
}

/// Full Kan check over all `0 <= j <= n <= max_n`.
pub fn check_kan(x: &SemiSimplicialComplex, max_n: usize, budget: usize) -> KanReport {
    check_range(x, max_n, false, budget, 4)
}

/// True iff some 2-simplex has all three boundary edges equal to `e`.
pub fn is_idempotent_edge(x: &SemiSimplicialComplex, e: usize) -> bool {
    (0..x.count(2)).any(|z| (0..=2).all(|i| x.face(2, z, i) == e))
}

/// Outcome of the bounded equivalence check for an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeStatus {
    /// All outer horns with this edge in final (resp. initial) position fill,
    /// for every `n` up to the stated bound.
    Certified { up_to: usize },
    /// A counterexample horn at `(n, j)`.
    Refuted { witness: Box<HornMap> },
}

/// Checks Steimle's outer-horn condition for `e` up to dimension `max_n`:
/// every `Lambda^n_n` horn whose last edge is `e` and every `Lambda^n_0`
/// horn whose first edge is `e` must admit a filler.
pub fn is_equivalence_edge_bounded(
    x: &SemiSimplicialComplex,
    e: usize,
    max_n: usize,
    budget: usize,
) -> Result<EdgeStatus, SsetError> {
    for n in 2..=max_n {
        for (j, edge_vertices) in [(n, vec![n - 1, n]), (0, vec![0, 1])] {
            let domain = horn(n, j)?;
            let horns = enumerate_horns(x, n, j, budget)?;
            for h in horns {
                if h.image_of(&domain, &edge_vertices) != Some(e) {
                    continue;
                }
                if find_filler(x, &h).is_none() {
                    return Ok(EdgeStatus::Refuted {
                        witness: Box::new(h),
                    });
                }
            }
        }
    }
    Ok(EdgeStatus::Certified { up_to: max_n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplexId;
    use crate::shapes::{boundary, standard_simplex};

    #[test]
    fn horns_into_a_point() {
        let pt = standard_simplex(1, 3).unwrap();
        for n in 1..=3 {
            for j in 0..=n {
                let horns = enumerate_horns(pt.underlying(), n, j, HORN_BUDGET).unwrap();
                assert_eq!(horns.len(), 1, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn inner_horns_of_triangle_count_composable_pairs() {
        // maps Lambda^2_1 -> Delta^2 are pairs of edges sharing a middle
        // vertex: chains a<=b, b<=c in {0,1,2}, i.e. 10 triples a<=b<=c
        let tri = standard_simplex(3, 2).unwrap();
        let horns = enumerate_horns(tri.underlying(), 2, 1, HORN_BUDGET).unwrap();
        assert_eq!(horns.len(), 10);
        // nerve: every inner horn has a unique filler
        for h in &horns {
            assert_eq!(count_fillers(tri.underlying(), h), 1);
        }
    }

    #[test]
    fn boundary_two_truncated_fails_inner_kan() {
        let b = boundary(2).unwrap();
        let report = check_inner_kan(b.sset(), 2, HORN_BUDGET);
        assert!(!report.passes());
        assert!(!report.witnesses.is_empty());
        // the identity-shaped horn (0->1, 1->2) appears among the horns
        let domain = horn(2, 1).unwrap();
        let horns = enumerate_horns(b.sset(), 2, 1, HORN_BUDGET).unwrap();
        let e01 = b.index_of(&[0, 1]).unwrap();
        let e12 = b.index_of(&[1, 2]).unwrap();
        assert!(horns.iter().any(|h| {
            h.image_of(&domain, &[0, 1]) == Some(e01) && h.image_of(&domain, &[1, 2]) == Some(e12)
        }));
    }

    #[test]
    fn nerve_of_arrow_fails_kan_at_two_zero() {
        let interval = standard_simplex(2, 3).unwrap();
        let report = check_kan(interval.underlying(), 2, HORN_BUDGET);
        assert!(!report.passes());
        let failing: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.filled < c.total)
            .collect();
        assert!(failing.iter().any(|c| (c.n, c.j) == (2, 0)));
        // inner check passes
        assert!(check_inner_kan(interval.underlying(), 3, HORN_BUDGET).passes());
    }

    #[test]
    fn degenerate_horn_fills_with_degenerate_simplex() {
        let interval = standard_simplex(2, 2).unwrap();
        // constant horn at vertex 0
        let v0 = 0usize;
        let e00 = (0..interval.count(1))
            .find(|&i| {
                interval.face(1, i, 0) == v0
                    && interval.face(1, i, 1) == v0
                    && interval.is_degenerate(SimplexId::new(1, i))
            })
            .unwrap();
        let h = HornMap {
            n: 2,
            j: 1,
            assignment: vec![vec![v0, v0, v0], vec![e00, e00]],
        };
        assert!(find_filler(interval.underlying(), &h).is_some());
    }

    #[test]
    fn idempotent_edges() {
        let interval = standard_simplex(2, 2).unwrap();
        for e in 0..interval.count(1) {
            let degen = interval.is_degenerate(SimplexId::new(1, e));
            assert_eq!(is_idempotent_edge(interval.underlying(), e), degen);
        }
    }

    #[test]
    fn nondegenerate_edge_of_interval_is_refuted() {
        let interval = standard_simplex(2, 2).unwrap();
        let e = (0..interval.count(1))
            .find(|&i| !interval.is_degenerate(SimplexId::new(1, i)))
            .unwrap();
        let status =
            is_equivalence_edge_bounded(interval.underlying(), e, 2, HORN_BUDGET).unwrap();
        assert!(matches!(status, EdgeStatus::Refuted { .. }));
        // monotone: still refuted at a larger bound
        let status3 =
            is_equivalence_edge_bounded(interval.underlying(), e, 3, HORN_BUDGET).unwrap();
        assert!(matches!(status3, EdgeStatus::Refuted { .. }));
    }

    #[test]
    fn degenerate_edge_of_interval_is_certified() {
        let interval = standard_simplex(2, 3).unwrap();
        let e = (0..interval.count(1))
            .find(|&i| interval.is_degenerate(SimplexId::new(1, i)))
            .unwrap();
        let status =
            is_equivalence_edge_bounded(interval.underlying(), e, 3, HORN_BUDGET).unwrap();
        assert!(matches!(status, EdgeStatus::Certified { up_to: 3 }));
    }
}
