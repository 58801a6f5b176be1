//! Bounded Ex enumeration: simplicial maps out of barycentric subdivisions,
//! the equivalence-restricted sublists, and the comparison map `m`.

use std::collections::BTreeMap;

use crate::complex::{FiniteSimplicialSet, SimplexId, SimplicialMapData, SsetError};
use crate::subdivision::SdComplex;

/// Default level bound for Ex enumeration.
pub const EX_LEVEL_BOUND: usize = 3;

/// Default backtracking budget (visited search nodes).
pub const EX_BUDGET: usize = 1_000_000;

/// A simplicial set with a distinguished set of edges; every degenerate edge
/// is marked on construction.
#[derive(Debug, Clone)]
pub struct MarkedEdgeSet {
    marked: Vec<bool>,
}

impl MarkedEdgeSet {
    pub fn new(base: &FiniteSimplicialSet, marked_edges: impl IntoIterator<Item = usize>) -> Self {
        let mut marked = vec![false; base.count(1)];
        for e in marked_edges {
            marked[e] = true;
        }
        for e in 0..base.count(1) {
            if base.is_degenerate(SimplexId::new(1, e)) {
                marked[e] = true;
            }
        }
        MarkedEdgeSet { marked }
    }

    pub fn all(base: &FiniteSimplicialSet) -> Self {
        MarkedEdgeSet {
            marked: vec![true; base.count(1)],
        }
    }

    pub fn degenerate_only(base: &FiniteSimplicialSet) -> Self {
        Self::new(base, std::iter::empty())
    }

    pub fn is_marked(&self, edge: usize) -> bool {
        self.marked[edge]
    }
}

/// Enumerates every simplicial map from the nerve of a subdivision to `x`.
///
/// A map is determined by its values on strict chains; the search assigns
/// them in (dimension, chain order) and backtracks on face mismatches. The
/// chain list of `sd` is ordered along the (cardinality, lexicographic)
/// linear extension of the subset lattice, so output order is deterministic.
pub fn ex_level(
    x: &FiniteSimplicialSet,
    k: usize,
    budget: usize,
) -> Result<Vec<SimplicialMapData>, SsetError> {
    ex_level_trunc(x, k, k, budget)
}

/// As [`ex_level`], with the subdivision nerve truncated at `trunc` so that
/// maps at different levels share a common truncation.
pub fn ex_level_trunc(
    x: &FiniteSimplicialSet,
    k: usize,
    trunc: usize,
    budget: usize,
) -> Result<Vec<SimplicialMapData>, SsetError> {
    let sd = SdComplex::new(k + 1, trunc.max(1))?;
    if x.top_dim() < k {
        return Err(SsetError::Other(format!(
            "target truncated at {} but level {k} requested",
            x.top_dim()
        )));
    }
    poset_nerve_maps(&sd, x, budget)
}

/// The members of `ex_level` sending every max-localizing edge of the
/// subdivision to a marked edge of `x`.
pub fn ex_eq_level(
    x: &FiniteSimplicialSet,
    k: usize,
    equiv: &MarkedEdgeSet,
    budget: usize,
) -> Result<Vec<SimplicialMapData>, SsetError> {
    let sd = SdComplex::new(k + 1, k.max(1))?;
    let all = ex_level(x, k, budget)?;
    Ok(all
        .into_iter()
        .filter(|m| sends_localizing_to_marked(&sd, m, equiv))
        .collect())
}

pub fn sends_localizing_to_marked(
    sd: &SdComplex,
    map: &SimplicialMapData,
    equiv: &MarkedEdgeSet,
) -> bool {
    (0..sd.nerve().sset().count(1)).all(|e| {
        !sd.is_max_localizing_edge(e) || equiv.is_marked(map.levels[1][e])
    })
}

/// The comparison map at level `k`: each `k`-simplex of `x` precomposed with
/// the max projection, yielding a member of `ex_eq_level`.
pub fn m_map(x: &FiniteSimplicialSet, k: usize) -> Result<Vec<SimplicialMapData>, SsetError> {
    let sd = SdComplex::new(k + 1, k.max(1))?;
    if x.top_dim() < k {
        return Err(SsetError::Other(format!(
            "target truncated at {} but level {k} requested",
            x.top_dim()
        )));
    }
    let top = sd.nerve().sset().top_dim();
    Ok((0..x.count(k))
        .map(|sigma| {
            let levels = (0..=top)
                .map(|n| {
                    (0..sd.nerve().sset().count(n))
                        .map(|idx| {
                            let alpha: Vec<usize> = sd
                                .nerve()
                                .chain(n, idx)
                                .iter()
                                .map(|&e| sd.lattice().max(e))
                                .collect();
                            x.act(SimplexId::new(k, sigma), &alpha).index
                        })
                        .collect()
                })
                .collect();
            SimplicialMapData { levels }
        })
        .collect())
}

/// Enumerates simplicial maps `nerve(sd) -> x` by backtracking over strict
/// chains, then extends each complete assignment to all chains.
pub fn poset_nerve_maps(
    sd: &SdComplex,
    x: &FiniteSimplicialSet,
    budget: usize,
) -> Result<Vec<SimplicialMapData>, SsetError> {
    let nerve = sd.nerve();
    let top = nerve.sset().top_dim().min(x.top_dim());
    // cells in assignment order: (dim, stored index)
    let mut cells: Vec<SimplexId> = Vec::new();
    for n in 0..=top {
        for idx in nerve.strict_chain_indices(n) {
            cells.push(SimplexId::new(n, idx));
        }
    }
    // candidate x-simplices by dimension, and face lookups keyed by face tuples
    let mut by_faces: Vec<BTreeMap<Vec<usize>, Vec<usize>>> = vec![BTreeMap::new(); top + 1];
    for (n, level) in by_faces.iter_mut().enumerate().skip(1) {
        for idx in 0..x.count(n) {
            let key: Vec<usize> = (0..=n).map(|i| x.face(n, idx, i)).collect();
            level.entry(key).or_default().push(idx);
        }
    }

    let mut assigned: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out = Vec::new();
    let mut nodes = 0usize;
    backtrack(
        sd,
        x,
        &cells,
        0,
        &by_faces,
        &mut assigned,
        &mut out,
        &mut nodes,
        budget,
    )?;
    Ok(out
        .into_iter()
        .map(|assignment| extend_assignment(sd, x, top, &assignment))
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    sd: &SdComplex,
    x: &FiniteSimplicialSet,
    cells: &[SimplexId],
    pos: usize,
    by_faces: &[BTreeMap<Vec<usize>, Vec<usize>>],
    assigned: &mut BTreeMap<(usize, usize), usize>,
    out: &mut Vec<BTreeMap<(usize, usize), usize>>,
    nodes: &mut usize,
    budget: usize,
) -> Result<(), SsetError> {
    *nodes += 1;
    if *nodes > budget {
        return Err(SsetError::BudgetExceeded {
            budget,
            partial: out.len(),
        });
    }
    if pos == cells.len() {
        out.push(assigned.clone());
        return Ok(());
    }
    let cell = cells[pos];
    let candidates: Vec<usize> = if cell.dim == 0 {
        (0..x.count(0)).collect()
    } else {
        let nerve = sd.nerve();
        let key: Vec<usize> = (0..=cell.dim)
            .map(|i| {
                let f = nerve.sset().face(cell.dim, cell.index, i);
                assigned[&(cell.dim - 1, f)]
            })
            .collect();
        by_faces[cell.dim].get(&key).cloned().unwrap_or_default()
    };
    for c in candidates {
        assigned.insert((cell.dim, cell.index), c);
        backtrack(sd, x, cells, pos + 1, by_faces, assigned, out, nodes, budget)?;
        assigned.remove(&(cell.dim, cell.index));
    }
    Ok(())
}

/// Extends an assignment on strict chains to every chain: a weakly ascending
/// chain is a degeneracy of its deduplication, so its image is the matching
/// degeneracy of the assigned simplex.
fn extend_assignment(
    sd: &SdComplex,
    x: &FiniteSimplicialSet,
    top: usize,
    assignment: &BTreeMap<(usize, usize), usize>,
) -> SimplicialMapData {
    let nerve = sd.nerve();
    let levels = (0..=top)
        .map(|n| {
            (0..nerve.sset().count(n))
                .map(|idx| {
                    let chain = nerve.chain(n, idx);
                    let mut strict: Vec<usize> = chain.to_vec();
                    strict.dedup();
                    let beta: Vec<usize> = chain
                        .iter()
                        .map(|e| strict.iter().position(|s| s == e).unwrap())
                        .collect();
                    let strict_idx = nerve.index_of_chain(&strict).unwrap();
                    let base = assignment[&(strict.len() - 1, strict_idx)];
                    x.act(SimplexId::new(strict.len() - 1, base), &beta).index
                })
                .collect()
        })
        .collect();
    SimplicialMapData { levels }
}

/// The Ex truncation of a simplicial set: level-`k` simplices are the maps
/// `sd(Delta^k) -> base`, stored for `k <= max_level`.
#[derive(Debug)]
pub struct ExTruncation {
    pub max_level: usize,
    pub levels: Vec<Vec<SimplicialMapData>>,
}

impl ExTruncation {
    pub fn build(
        base: &FiniteSimplicialSet,
        max_level: usize,
        budget: usize,
    ) -> Result<Self, SsetError> {
        let levels = (0..=max_level)
            .map(|k| ex_level_trunc(base, k, max_level, budget))
            .collect::<Result<_, _>>()?;
        Ok(ExTruncation { max_level, levels })
    }

    /// Checks that precomposition with the poset maps induced by cofaces and
    /// codegeneracies sends stored level-`k` members into the adjacent
    /// stored lists.
    pub fn check_closure(&self) -> Result<(), SsetError> {
        let trunc = self.max_level.max(1);
        for k in 0..=self.max_level {
            let sd_k = SdComplex::new(k + 1, trunc)?;
            // cofaces [k-1] -> [k]
            if k >= 1 {
                let sd_km1 = SdComplex::new(k, trunc)?;
                for i in 0..=k {
                    let delta_i: Vec<usize> = (0..k).map(|v| if v < i { v } else { v + 1 }).collect();
                    let induced = sd_km1.induced(&delta_i, &sd_k);
                    for member in &self.levels[k] {
                        let restricted = restrict(&induced, member, sd_km1.nerve().sset().top_dim());
                        if !self.levels[k - 1].contains(&restricted) {
                            return Err(SsetError::Other(format!(
                                "face action d_{i} leaves level {k}"
                            )));
                        }
                    }
                }
            }
            // codegeneracies [k+1] -> [k]
            if k + 1 <= self.max_level {
                let sd_kp1 = SdComplex::new(k + 2, trunc)?;
                for i in 0..=k {
                    let sigma_i: Vec<usize> =
                        (0..=k + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
                    let induced = sd_kp1.induced(&sigma_i, &sd_k);
                    for member in &self.levels[k] {
                        let lifted = restrict(&induced, member, sd_kp1.nerve().sset().top_dim());
                        if !self.levels[k + 1].contains(&lifted) {
                            return Err(SsetError::Other(format!(
                                "degeneracy action s_{i} leaves level {k}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Precomposition `member . induced`, truncated to the source's dimensions.
fn restrict(induced: &SimplicialMapData, member: &SimplicialMapData, top: usize) -> SimplicialMapData {
    let levels = (0..=top)
        .map(|n| {
            induced.levels[n]
                .iter()
                .map(|&img| member.levels[n][img])
                .collect()
        })
        .collect();
    SimplicialMapData { levels }
}
