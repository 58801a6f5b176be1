//! Barycentric subdivision, the max projection, and its right adjoint.

use crate::complex::{SemiSimplicialComplex, SimplexId, SimplicialMapData, SsetError};
use crate::poset::{nerve, nonempty_subsets_poset, FinitePoset, NerveComplex, SubsetLattice, SUBSET_BOUND};

/// The barycentric subdivision of a standard simplex: the nerve of the
/// nonempty-subset lattice of its vertex order.
#[derive(Debug, Clone)]
pub struct SdComplex {
    lattice: SubsetLattice,
    nerve: NerveComplex,
}

impl SdComplex {
    /// `sd` of the simplex on `card` vertices, truncated at `top_dim`.
    pub fn new(card: usize, top_dim: usize) -> Result<Self, SsetError> {
        let lattice = nonempty_subsets_poset(card, SUBSET_BOUND)?;
        let nerve = nerve(lattice.poset(), top_dim);
        Ok(SdComplex { lattice, nerve })
    }

    pub fn lattice(&self) -> &SubsetLattice {
        &self.lattice
    }

    pub fn nerve(&self) -> &NerveComplex {
        &self.nerve
    }

    /// Whether the edge `idx` (a chain `A <= B`) has `max A = max B`.
    pub fn is_max_localizing_edge(&self, idx: usize) -> bool {
        let chain = self.nerve.chain(1, idx);
        self.lattice.max(chain[0]) == self.lattice.max(chain[1])
    }

    /// Pair form, for callers holding raw subsets; errors unless `a` is
    /// included in `b`.
    pub fn is_max_localizing_pair(&self, a: u32, b: u32) -> Result<bool, SsetError> {
        if a & !b != 0 {
            return Err(SsetError::Other(format!(
                "edge {a:#b} -> {b:#b} is not an inclusion"
            )));
        }
        let ai = self.lattice.index_of(a).ok_or_else(|| {
            SsetError::Other(format!("{a:#b} is not a nonempty subset of the ground order"))
        })?;
        let bi = self.lattice.index_of(b).unwrap();
        Ok(self.lattice.max(ai) == self.lattice.max(bi))
    }

    /// The simplicial map `sd(Delta^I) -> Delta^I` induced by `A -> max A`.
    /// `delta` must be the standard simplex nerve on the same ground order
    /// with the same truncation.
    pub fn max_projection(&self, delta: &NerveComplex) -> SimplicialMapData {
        assert_eq!(delta.poset().len(), self.lattice.ground());
        self.induced_into_nerve(delta, |elem| self.lattice.max(elem))
    }

    /// The simplicial map `Delta^I -> sd(Delta^I)` sending `i` to the initial
    /// interval `[min I, i]`.
    pub fn max_adjoint(&self, delta: &NerveComplex) -> SimplicialMapData {
        assert_eq!(delta.poset().len(), self.lattice.ground());
        let levels = (0..=delta.sset().top_dim())
            .map(|n| {
                (0..delta.sset().count(n))
                    .map(|idx| {
                        let image: Vec<usize> = delta
                            .chain(n, idx)
                            .iter()
                            .map(|&i| {
                                let mask = (1u32 << (i + 1)) - 1;
                                self.lattice.index_of(mask).unwrap()
                            })
                            .collect();
                        self.nerve.index_of_chain(&image).unwrap()
                    })
                    .collect()
            })
            .collect();
        SimplicialMapData { levels }
    }

    /// The map `sd(Delta^I) -> sd(Delta^J)` induced by a function
    /// `f: I -> J` on ground orders, acting on subsets by direct image.
    pub fn induced(&self, f: &[usize], dst: &SdComplex) -> SimplicialMapData {
        assert_eq!(f.len(), self.lattice.ground());
        let levels = (0..=self.nerve.sset().top_dim())
            .map(|n| {
                (0..self.nerve.sset().count(n))
                    .map(|idx| {
                        let image: Vec<usize> = self
                            .nerve
                            .chain(n, idx)
                            .iter()
                            .map(|&elem| {
                                let mut mask = 0u32;
                                for m in self.lattice.members(elem) {
                                    mask |= 1 << f[m];
                                }
                                dst.lattice.index_of(mask).unwrap()
                            })
                            .collect();
                        dst.nerve.index_of_chain(&image).unwrap()
                    })
                    .collect()
            })
            .collect();
        SimplicialMapData { levels }
    }

    fn induced_into_nerve(
        &self,
        dst: &NerveComplex,
        elem_map: impl Fn(usize) -> usize,
    ) -> SimplicialMapData {
        let levels = (0..=self.nerve.sset().top_dim())
            .map(|n| {
                (0..self.nerve.sset().count(n))
                    .map(|idx| {
                        let image: Vec<usize> =
                            self.nerve.chain(n, idx).iter().map(|&e| elem_map(e)).collect();
                        dst.index_of_chain(&image).unwrap()
                    })
                    .collect()
            })
            .collect();
        SimplicialMapData { levels }
    }
}

/// Subdivision of a non-singular semisimplicial complex: the nerve of its
/// face poset, together with the simplex underlying each poset element.
#[derive(Debug, Clone)]
pub struct FacePosetSubdivision {
    nerve: NerveComplex,
    /// Poset element `e` corresponds to the simplex `elements[e]` of the
    /// original complex.
    elements: Vec<SimplexId>,
    vertex_sets: Vec<Vec<usize>>,
}

impl FacePosetSubdivision {
    pub fn nerve(&self) -> &NerveComplex {
        &self.nerve
    }

    pub fn element(&self, e: usize) -> SimplexId {
        self.elements[e]
    }

    /// Max vertex criterion on an edge of the subdivision.
    pub fn is_max_localizing_edge(&self, idx: usize) -> bool {
        let chain = self.nerve.chain(1, idx);
        let max_of = |e: usize| *self.vertex_sets[e].iter().max().unwrap();
        max_of(chain[0]) == max_of(chain[1])
    }
}

/// Barycentric subdivision of a non-singular complex via its face poset.
///
/// Requires every simplex to have pairwise-distinct vertices and to be
/// determined by its vertex set; otherwise the face-poset nerve would not
/// agree with the colimit formula and the offending simplex is reported.
pub fn sd_nonsingular(
    x: &SemiSimplicialComplex,
    top_dim: usize,
) -> Result<FacePosetSubdivision, SsetError> {
    let mut elements = Vec::new();
    let mut vertex_sets: Vec<Vec<usize>> = Vec::new();
    for n in 0..=x.top_dim() {
        for idx in 0..x.count(n) {
            let id = SimplexId::new(n, idx);
            let mut vs = x.vertices_of(id);
            vs.sort_unstable();
            let before = vs.len();
            vs.dedup();
            if vs.len() != before {
                return Err(SsetError::Singular(id, "repeated vertices".into()));
            }
            if let Some(prev) = vertex_sets.iter().position(|w| w == &vs) {
                return Err(SsetError::Singular(
                    id,
                    format!("shares its vertex set with simplex {}", elements[prev]),
                ));
            }
            elements.push(id);
            vertex_sets.push(vs);
        }
    }
    let m = elements.len();
    let leq = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| vertex_sets[a].iter().all(|v| vertex_sets[b].contains(v)))
                .collect()
        })
        .collect();
    let poset = FinitePoset::from_relation(leq)?;
    Ok(FacePosetSubdivision {
        nerve: nerve(&poset, top_dim),
        elements,
        vertex_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{validate_semisimplicial_map, validate_simplicial_map};
    use crate::shapes::{boundary, horn, standard_simplex_nerve};

    #[test]
    fn sd_vertex_and_flag_counts() {
        for n in 0..=4usize {
            let sd = SdComplex::new(n + 1, n.max(1)).unwrap();
            assert_eq!(sd.nerve().sset().count(0), (1 << (n + 1)) - 1);
            if n >= 1 {
                let mut fact = 1usize;
                for i in 2..=n + 1 {
                    fact *= i;
                }
                assert_eq!(sd.nerve().sset().nondegenerate_count(n), fact);
            }
        }
    }

    #[test]
    fn sd_interval_counts() {
        let sd = SdComplex::new(2, 1).unwrap();
        assert_eq!(sd.nerve().sset().count(0), 3);
        assert_eq!(sd.nerve().sset().nondegenerate_count(1), 2);
    }

    #[test]
    fn max_projection_on_vertices() {
        let sd = SdComplex::new(2, 1).unwrap();
        let delta = standard_simplex_nerve(2, 1).unwrap();
        let proj = sd.max_projection(&delta);
        for v in 0..3 {
            let members = sd.lattice().members(v);
            assert_eq!(proj.levels[0][v], *members.iter().max().unwrap());
        }
        assert!(validate_simplicial_map(sd.nerve().sset(), delta.sset(), &proj).is_empty());
    }

    #[test]
    fn max_after_adjoint_is_identity() {
        for card in 1..=4usize {
            let top = card; // one above the geometric dimension
            let sd = SdComplex::new(card, top).unwrap();
            let delta = standard_simplex_nerve(card, top).unwrap();
            let proj = sd.max_projection(&delta);
            let adj = sd.max_adjoint(&delta);
            assert!(validate_simplicial_map(delta.sset(), sd.nerve().sset(), &adj).is_empty());
            let composite = adj.then(&proj);
            let id = SimplicialMapData::identity(&delta.sset().counts());
            assert_eq!(composite, id);
        }
    }

    #[test]
    fn adjoint_vertex_values() {
        let sd = SdComplex::new(3, 2).unwrap();
        let delta = standard_simplex_nerve(3, 2).unwrap();
        let adj = sd.max_adjoint(&delta);
        // 2 -> {0,1,2}
        let full = sd.lattice().index_of(0b111).unwrap();
        assert_eq!(adj.levels[0][2], full);
        // 0 -> {0}
        let zero = sd.lattice().index_of(0b001).unwrap();
        assert_eq!(adj.levels[0][0], zero);
    }

    #[test]
    fn localizing_edges_map_to_degenerate_edges() {
        for card in 1..=4usize {
            let top = (card.saturating_sub(1)).max(1);
            let sd = SdComplex::new(card, top).unwrap();
            let delta = standard_simplex_nerve(card, top).unwrap();
            let proj = sd.max_projection(&delta);
            for e in 0..sd.nerve().sset().count(1) {
                if sd.is_max_localizing_edge(e) {
                    let img = proj.levels[1][e];
                    assert!(delta.sset().is_degenerate(SimplexId::new(1, img)));
                }
            }
        }
    }

    #[test]
    fn localizing_pair_examples() {
        let sd = SdComplex::new(2, 1).unwrap();
        assert!(sd.is_max_localizing_pair(0b10, 0b11).unwrap());
        assert!(!sd.is_max_localizing_pair(0b01, 0b11).unwrap());
        assert!(sd.is_max_localizing_pair(0b01, 0b01).unwrap());
        assert!(sd.is_max_localizing_pair(0b10, 0b01).is_err());
    }

    #[test]
    fn top_flag_images_cover_top_simplex() {
        for n in 1..=3usize {
            let sd = SdComplex::new(n + 1, n).unwrap();
            let delta = standard_simplex_nerve(n + 1, n).unwrap();
            let proj = sd.max_projection(&delta);
            for &flag in &sd.nerve().strict_chain_indices(n) {
                let img = proj.levels[n][flag];
                // images are the top chain or one of its degeneracies;
                // the top chain ends at the maximal vertex
                let chain = delta.chain(n, img);
                assert_eq!(*chain.last().unwrap(), n);
            }
        }
    }

    #[test]
    fn sd_nonsingular_matches_sd_on_simplices() {
        for n in 0..=3usize {
            let delta_semi = crate::shapes::SubsetComplex::from_cells(
                n + 1,
                &[(0..=n).collect::<Vec<_>>()],
            )
            .unwrap();
            let fp = sd_nonsingular(delta_semi.sset(), n.max(1)).unwrap();
            let sd = SdComplex::new(n + 1, n.max(1)).unwrap();
            assert_eq!(
                fp.nerve().sset().counts(),
                sd.nerve().sset().counts()
            );
            assert_eq!(
                fp.nerve().sset().nondegenerate_counts(),
                sd.nerve().sset().nondegenerate_counts()
            );
        }
    }

    #[test]
    fn sd_nonsingular_of_boundary_and_horn() {
        let b2 = boundary(2).unwrap();
        let fp = sd_nonsingular(b2.sset(), 1).unwrap();
        assert_eq!(fp.nerve().sset().count(0), 6);
        assert_eq!(fp.nerve().sset().nondegenerate_count(1), 6);

        let h = horn(2, 1).unwrap();
        let fp = sd_nonsingular(h.sset(), 1).unwrap();
        assert_eq!(fp.nerve().sset().count(0), 5);
    }

    #[test]
    fn sd_functoriality_for_injections() {
        // every injection [I] -> [J], |J| <= 4: induced map commutes with
        // faces and with max up to the order embedding
        for card_j in 1..=4usize {
            let top = card_j - 1;
            let dst = SdComplex::new(card_j, top.max(1)).unwrap();
            let delta_j = standard_simplex_nerve(card_j, top.max(1)).unwrap();
            let proj_j = dst.max_projection(&delta_j);
            for card_i in 1..=card_j {
                let src = SdComplex::new(card_i, top.max(1)).unwrap();
                let delta_i = standard_simplex_nerve(card_i, top.max(1)).unwrap();
                let proj_i = src.max_projection(&delta_i);
                for f in injections(card_i, card_j) {
                    let induced = src.induced(&f, &dst);
                    assert!(validate_simplicial_map(
                        src.nerve().sset(),
                        dst.nerve().sset(),
                        &induced
                    )
                    .is_empty());
                    // max . induced = embedding . max on every simplex
                    let embed = {
                        let levels = (0..=delta_i.sset().top_dim())
                            .map(|n| {
                                (0..delta_i.sset().count(n))
                                    .map(|idx| {
                                        let image: Vec<usize> = delta_i
                                            .chain(n, idx)
                                            .iter()
                                            .map(|&i| f[i])
                                            .collect();
                                        delta_j.index_of_chain(&image).unwrap()
                                    })
                                    .collect()
                            })
                            .collect();
                        SimplicialMapData { levels }
                    };
                    assert!(validate_semisimplicial_map(
                        delta_i.sset().underlying(),
                        delta_j.sset().underlying(),
                        &embed
                    )
                    .is_empty());
                    assert_eq!(induced.then(&proj_j), proj_i.then(&embed));
                }
            }
        }
    }

    fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
        // strictly increasing maps {0..k-1} -> {0..n-1}
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(v + 1, k, n, cur, out);
                cur.pop();
            }
        }
        rec(0, k, n, &mut cur, &mut out);
        out
    }
}
