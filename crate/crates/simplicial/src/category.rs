//! Finite category presentations materialized by word closure, nerves,
//! homotopy categories of truncated quasi-categories, small-scale
//! localization, and the enumerative max-localization verifier.

use std::collections::BTreeMap;

use crate::complex::{FiniteSimplicialSet, SemiSimplicialComplex, SimplexId, SsetError};
use crate::kan::{check_inner_kan, HORN_BUDGET};
use crate::poset::SubsetLattice;

/// Default word-length bound for composition-table closure.
pub const WORD_BOUND: usize = 8;

/// Cap on enumerated words during closure.
const WORD_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowGen {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A pair of parallel words declared equal; an empty word is the identity at
/// `src` (and then `src == dst`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub src: usize,
    pub dst: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategoryPresentation {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowGen>,
    pub relations: Vec<Relation>,
}

impl FiniteCategoryPresentation {
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<ArrowGen>,
        relations: Vec<Relation>,
    ) -> Result<Self, SsetError> {
        let p = FiniteCategoryPresentation {
            objects,
            arrows,
            relations,
        };
        for a in &p.arrows {
            if a.src >= p.objects.len() || a.dst >= p.objects.len() {
                return Err(SsetError::Other(format!(
                    "arrow {} endpoints out of range",
                    a.name
                )));
            }
        }
        for r in &p.relations {
            for side in [&r.lhs, &r.rhs] {
                let (s, d) = p.word_endpoints(side, r.src)?;
                if s != r.src || d != r.dst {
                    return Err(SsetError::Other("relation side endpoints mismatch".into()));
                }
            }
        }
        Ok(p)
    }

    fn word_endpoints(&self, word: &[usize], empty_obj: usize) -> Result<(usize, usize), SsetError> {
        if word.is_empty() {
            return Ok((empty_obj, empty_obj));
        }
        let mut cur = self.arrows[word[0]].src;
        let src = cur;
        for &g in word {
            let a = &self.arrows[g];
            if a.src != cur {
                return Err(SsetError::Other(format!(
                    "word not composable at arrow {}",
                    a.name
                )));
            }
            cur = a.dst;
        }
        Ok((src, cur))
    }

    pub fn arrow_id(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morph {
    pub src: usize,
    pub dst: usize,
    /// Minimal representative word over the presentation's generators.
    pub rep: Vec<usize>,
}

/// A materialized finite category: morphism classes with a total composition
/// table (total on composable pairs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morph>,
    pub identities: Vec<usize>,
    /// `compose[f][g]` = "f then g", defined when `dst f == src g`.
    compose: Vec<Vec<Option<usize>>>,
    /// Class of each generating arrow.
    pub gen_class: Vec<usize>,
}

impl FiniteCategory {
    /// "f then g" in diagrammatic order; panics if not composable.
    pub fn then(&self, f: usize, g: usize) -> usize {
        self.compose[f][g].expect("morphisms not composable")
    }

    pub fn composable(&self, f: usize, g: usize) -> bool {
        self.morphisms[f].dst == self.morphisms[g].src
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == x && self.morphisms[m].dst == y)
            .collect()
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].src] == m && self.morphisms[m].src == self.morphisms[m].dst
    }

    pub fn eval_word(&self, word: &[usize], empty_obj: usize) -> usize {
        let mut cur = self.identities[if word.is_empty() {
            empty_obj
        } else {
            self.morphisms[self.gen_class[word[0]]].src
        }];
        for &g in word {
            cur = self.then(cur, self.gen_class[g]);
        }
        cur
    }

    /// Evaluates a word of morphism classes (not generators).
    pub fn eval_class_word(&self, word: &[usize], empty_obj: usize) -> usize {
        let mut cur = self.identities[if word.is_empty() {
            empty_obj
        } else {
            self.morphisms[word[0]].src
        }];
        for &m in word {
            cur = self.then(cur, m);
        }
        cur
    }

    pub fn is_iso(&self, m: usize) -> bool {
        let (x, y) = (self.morphisms[m].src, self.morphisms[m].dst);
        self.hom(y, x).iter().any(|&g| {
            self.then(m, g) == self.identities[x] && self.then(g, m) == self.identities[y]
        })
    }

    /// Presentation with one generator per non-identity morphism and the
    /// full composition table as relations.
    pub fn to_presentation(&self) -> (FiniteCategoryPresentation, Vec<Option<usize>>) {
        let mut gen_of_class: Vec<Option<usize>> = vec![None; self.morphisms.len()];
        let mut arrows = Vec::new();
        for (m, mo) in self.morphisms.iter().enumerate() {
            if self.is_identity(m) {
                continue;
            }
            gen_of_class[m] = Some(arrows.len());
            arrows.push(ArrowGen {
                name: format!("m{m}"),
                src: mo.src,
                dst: mo.dst,
            });
        }
        let mut relations = Vec::new();
        for f in 0..self.morphisms.len() {
            for g in 0..self.morphisms.len() {
                if !self.composable(f, g) || self.is_identity(f) || self.is_identity(g) {
                    continue;
                }
                let h = self.then(f, g);
                let lhs = vec![gen_of_class[f].unwrap(), gen_of_class[g].unwrap()];
                let rhs = match gen_of_class[h] {
                    Some(gh) => vec![gh],
                    None => Vec::new(),
                };
                relations.push(Relation {
                    src: self.morphisms[f].src,
                    dst: self.morphisms[g].dst,
                    lhs,
                    rhs,
                });
            }
        }
        (
            FiniteCategoryPresentation {
                objects: self.objects.clone(),
                arrows,
                relations,
            },
            gen_of_class,
        )
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Materializes a presentation into a finite category by enumerating words
/// up to `word_bound` and closing the congruence generated by the relations.
///
/// Closure is computed inside the bounded word set; a relation only
/// applicable in longer contexts would be missed, which the associativity
/// and identity checks on the resulting table would then surface.
pub fn materialize(
    c: &FiniteCategoryPresentation,
    word_bound: usize,
) -> Result<FiniteCategory, SsetError> {
    // words keyed by (source object, generator sequence)
    let mut words: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut word_idx: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let mut dst_of: Vec<usize> = Vec::new();
    for o in 0..c.objects.len() {
        word_idx.insert((o, Vec::new()), words.len());
        words.push((o, Vec::new()));
        dst_of.push(o);
    }
    let mut frontier: Vec<usize> = (0..words.len()).collect();
    for _ in 0..word_bound {
        let mut next = Vec::new();
        for &w in &frontier {
            let (src, seq) = words[w].clone();
            let end = dst_of[w];
            for (g, a) in c.arrows.iter().enumerate() {
                if a.src != end {
                    continue;
                }
                let mut seq2 = seq.clone();
                seq2.push(g);
                let key = (src, seq2);
                if !word_idx.contains_key(&key) {
                    word_idx.insert(key.clone(), words.len());
                    words.push(key);
                    dst_of.push(a.dst);
                    next.push(words.len() - 1);
                    if words.len() > WORD_CAP {
                        return Err(SsetError::Other(
                            "word enumeration exceeded cap; simplify the presentation".into(),
                        ));
                    }
                }
            }
        }
        frontier = next;
    }

    let mut uf = UnionFind::new(words.len());
    for r in &c.relations {
        let l = word_idx
            .get(&(r.src, r.lhs.clone()))
            .copied()
            .ok_or_else(|| SsetError::Other("relation word exceeds bound".into()))?;
        let rr = word_idx
            .get(&(r.src, r.rhs.clone()))
            .copied()
            .ok_or_else(|| SsetError::Other("relation word exceeds bound".into()))?;
        uf.union(l, rr);
    }

    // congruence closure within the bounded word set
    loop {
        let mut changed = false;
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for w in 0..words.len() {
            let r = uf.find(w);
            by_root.entry(r).or_default().push(w);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
        for group in groups.iter_mut() {
            // each member is unioned with the shortest representative; by
            // transitivity this covers every same-class pair, and the
            // pivot's extensions always fit the bound when the member's do
            group.sort_by_key(|&w| words[w].1.len());
            let p = group[0];
            for &b in &group[1..] {
                // right extension by one generator
                for g in 0..c.arrows.len() {
                    if c.arrows[g].src != dst_of[b] {
                        continue;
                    }
                    let ka = extend_right(&words[p], g);
                    let kb = extend_right(&words[b], g);
                    if let (Some(&ia), Some(&ib)) = (word_idx.get(&ka), word_idx.get(&kb)) {
                        changed |= uf.union(ia, ib);
                    }
                }
                // left extension by one generator
                for g in 0..c.arrows.len() {
                    if c.arrows[g].dst != words[b].0 {
                        continue;
                    }
                    let ka = extend_left(&c.arrows, &words[p], g);
                    let kb = extend_left(&c.arrows, &words[b], g);
                    if let (Some(&ia), Some(&ib)) = (word_idx.get(&ka), word_idx.get(&kb)) {
                        changed |= uf.union(ia, ib);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    // collect classes, minimal representative first
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for w in 0..words.len() {
        let r = uf.find(w);
        members.entry(r).or_default().push(w);
    }
    let mut classes: Vec<Vec<usize>> = members.into_values().collect();
    for group in classes.iter_mut() {
        group.sort_by_key(|&w| (words[w].1.len(), words[w].1.clone()));
    }
    classes.sort_by_key(|g| {
        let w = g[0];
        (
            words[w].0,
            dst_of[w],
            words[w].1.len(),
            words[w].1.clone(),
        )
    });
    let class_of_word = {
        let mut m = vec![0usize; words.len()];
        for (ci, group) in classes.iter().enumerate() {
            for &w in group {
                m[w] = ci;
            }
        }
        m
    };

    let morphisms: Vec<Morph> = classes
        .iter()
        .map(|g| Morph {
            src: words[g[0]].0,
            dst: dst_of[g[0]],
            rep: words[g[0]].1.clone(),
        })
        .collect();
    let identities: Vec<usize> = (0..c.objects.len())
        .map(|o| class_of_word[word_idx[&(o, Vec::new())]])
        .collect();
    let gen_class: Vec<usize> = (0..c.arrows.len())
        .map(|g| class_of_word[word_idx[&(c.arrows[g].src, vec![g])]])
        .collect();

    let n = morphisms.len();
    let mut compose = vec![vec![None; n]; n];
    for f in 0..n {
        for g in 0..n {
            if morphisms[f].dst != morphisms[g].src {
                continue;
            }
            let mut seq = morphisms[f].rep.clone();
            seq.extend_from_slice(&morphisms[g].rep);
            if seq.len() > word_bound {
                return Err(SsetError::Other(format!(
                    "composition table not closed at word bound {word_bound}; increase word bound"
                )));
            }
            let idx = word_idx[&(morphisms[f].src, seq)];
            compose[f][g] = Some(class_of_word[idx]);
        }
    }

    let cat = FiniteCategory {
        objects: c.objects.clone(),
        morphisms,
        identities,
        compose,
        gen_class,
    };
    check_category_laws(&cat)?;
    Ok(cat)
}

fn extend_right(word: &(usize, Vec<usize>), g: usize) -> (usize, Vec<usize>) {
    let mut seq = word.1.clone();
    seq.push(g);
    (word.0, seq)
}

fn extend_left(arrows: &[ArrowGen], word: &(usize, Vec<usize>), g: usize) -> (usize, Vec<usize>) {
    let mut seq = vec![g];
    seq.extend_from_slice(&word.1);
    (arrows[g].src, seq)
}

fn check_category_laws(cat: &FiniteCategory) -> Result<(), SsetError> {
    let n = cat.morphisms.len();
    for f in 0..n {
        let (x, y) = (cat.morphisms[f].src, cat.morphisms[f].dst);
        if cat.then(cat.identities[x], f) != f || cat.then(f, cat.identities[y]) != f {
            return Err(SsetError::Other("identity law fails in closure".into()));
        }
    }
    for f in 0..n {
        for g in 0..n {
            if !cat.composable(f, g) {
                continue;
            }
            for h in 0..n {
                if !cat.composable(g, h) {
                    continue;
                }
                if cat.then(cat.then(f, g), h) != cat.then(f, cat.then(g, h)) {
                    return Err(SsetError::Other("associativity fails in closure".into()));
                }
            }
        }
    }
    Ok(())
}

/// A functor out of a presentation: object assignment plus a target morphism
/// class per generating arrow.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Functor {
    pub obj: Vec<usize>,
    pub gens: Vec<usize>,
}

/// All functors from the presentation `c` into the materialized category `d`,
/// by generator assignment with relation checking.
pub fn enumerate_functors(c: &FiniteCategoryPresentation, d: &FiniteCategory) -> Vec<Functor> {
    let mut out = Vec::new();
    let n_obj = c.objects.len();
    let mut obj = vec![0usize; n_obj];
    enumerate_objects(c, d, 0, &mut obj, &mut out);
    out.sort();
    out
}

fn enumerate_objects(
    c: &FiniteCategoryPresentation,
    d: &FiniteCategory,
    pos: usize,
    obj: &mut Vec<usize>,
    out: &mut Vec<Functor>,
) {
    if pos == c.objects.len() {
        let mut gens = vec![0usize; c.arrows.len()];
        enumerate_gens(c, d, 0, obj, &mut gens, out);
        return;
    }
    for o in 0..d.objects.len() {
        obj[pos] = o;
        enumerate_objects(c, d, pos + 1, obj, out);
    }
}

fn enumerate_gens(
    c: &FiniteCategoryPresentation,
    d: &FiniteCategory,
    pos: usize,
    obj: &[usize],
    gens: &mut Vec<usize>,
    out: &mut Vec<Functor>,
) {
    if pos == c.arrows.len() {
        if relations_hold(c, d, obj, gens) {
            out.push(Functor {
                obj: obj.to_vec(),
                gens: gens.clone(),
            });
        }
        return;
    }
    let a = &c.arrows[pos];
    for m in d.hom(obj[a.src], obj[a.dst]) {
        gens[pos] = m;
        enumerate_gens(c, d, pos + 1, obj, gens, out);
    }
}

fn relations_hold(
    c: &FiniteCategoryPresentation,
    d: &FiniteCategory,
    obj: &[usize],
    gens: &[usize],
) -> bool {
    c.relations.iter().all(|r| {
        let eval = |word: &[usize]| -> usize {
            let mut cur = d.identities[obj[r.src]];
            for &g in word {
                cur = d.then(cur, gens[g]);
            }
            cur
        };
        eval(&r.lhs) == eval(&r.rhs)
    })
}

/// Exhaustive isomorphism search between two materialized categories.
pub fn categories_isomorphic(a: &FiniteCategory, b: &FiniteCategory) -> bool {
    if a.objects.len() != b.objects.len() || a.morphisms.len() != b.morphisms.len() {
        return false;
    }
    let (pres_a, gen_of_class) = a.to_presentation();
    enumerate_functors(&pres_a, b).into_iter().any(|f| {
        // bijective on objects
        let mut objs = f.obj.clone();
        objs.sort_unstable();
        objs.dedup();
        if objs.len() != b.objects.len() {
            return false;
        }
        // induced map on all morphism classes is bijective
        let mut images: Vec<usize> = (0..a.morphisms.len())
            .map(|m| match gen_of_class[m] {
                Some(g) => f.gens[g],
                None => b.identities[f.obj[a.morphisms[m].src]],
            })
            .collect();
        images.sort_unstable();
        images.dedup();
        images.len() == b.morphisms.len()
    })
}

/// The nerve of a materialized category: `k`-simplices are composable
/// `k`-chains of morphism classes.
#[derive(Debug, Clone)]
pub struct CategoryNerve {
    pub cat: FiniteCategory,
    sset: FiniteSimplicialSet,
    /// `(start object, morphism chain)` per simplex.
    chains: Vec<Vec<(usize, Vec<usize>)>>,
    index: Vec<BTreeMap<(usize, Vec<usize>), usize>>,
}

impl CategoryNerve {
    pub fn sset(&self) -> &FiniteSimplicialSet {
        &self.sset
    }

    pub fn chain(&self, n: usize, idx: usize) -> &(usize, Vec<usize>) {
        &self.chains[n][idx]
    }

    pub fn index_of_chain(&self, start: usize, morphisms: &[usize]) -> Option<usize> {
        self.index
            .get(morphisms.len())
            .and_then(|m| m.get(&(start, morphisms.to_vec())).copied())
    }
}

/// Builds the nerve of the category presented by `c`, truncated at `top_dim`.
pub fn nerve_of_presentation(
    c: &FiniteCategoryPresentation,
    top_dim: usize,
    word_bound: usize,
) -> Result<CategoryNerve, SsetError> {
    let cat = materialize(c, word_bound)?;
    Ok(nerve_of_category(&cat, top_dim))
}

pub fn nerve_of_category(cat: &FiniteCategory, top_dim: usize) -> CategoryNerve {
    let mut chains: Vec<Vec<(usize, Vec<usize>)>> = Vec::with_capacity(top_dim + 1);
    chains.push((0..cat.objects.len()).map(|o| (o, Vec::new())).collect());
    for d in 1..=top_dim {
        let mut level = Vec::new();
        for (start, seq) in &chains[d - 1] {
            let end = seq
                .last()
                .map(|&m| cat.morphisms[m].dst)
                .unwrap_or(*start);
            for m in 0..cat.morphisms.len() {
                if cat.morphisms[m].src == end {
                    let mut seq2 = seq.clone();
                    seq2.push(m);
                    level.push((*start, seq2));
                }
            }
        }
        level.sort();
        chains.push(level);
    }
    let index: Vec<BTreeMap<(usize, Vec<usize>), usize>> = chains
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i))
                .collect()
        })
        .collect();

    let face_of = |d: usize, chain: &(usize, Vec<usize>), i: usize| -> (usize, Vec<usize>) {
        let (start, seq) = chain;
        let mut seq2 = seq.clone();
        if i == 0 {
            let new_start = cat.morphisms[seq2.remove(0)].dst;
            (new_start, seq2)
        } else if i == d {
            seq2.pop();
            (*start, seq2)
        } else {
            let merged = cat.then(seq2[i - 1], seq2[i]);
            seq2[i - 1] = merged;
            seq2.remove(i);
            (*start, seq2)
        }
    };

    let faces: Vec<Vec<Vec<usize>>> = chains
        .iter()
        .enumerate()
        .map(|(d, level)| {
            level
                .iter()
                .map(|chain| {
                    if d == 0 {
                        return Vec::new();
                    }
                    (0..=d)
                        .map(|i| index[d - 1][&face_of(d, chain, i)])
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
                .map(|(start, seq)| {
                    (0..=d)
                        .map(|i| {
                            let obj_at = if i == 0 {
                                *start
                            } else {
                                cat.morphisms[seq[i - 1]].dst
                            };
                            let mut seq2 = seq.clone();
                            seq2.insert(i, cat.identities[obj_at]);
                            index[d + 1][&(*start, seq2)]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let underlying = SemiSimplicialComplex::from_faces(faces).expect("nerve face tables");
    let sset = FiniteSimplicialSet::from_parts(underlying, degen).expect("nerve degeneracies");
    CategoryNerve {
        cat: cat.clone(),
        sset,
        chains,
        index,
    }
}

/// Objects are vertices, morphisms are edges modulo the 2-simplex homotopy
/// relation, with composition witnessed by 2-simplices.
#[derive(Debug, Clone)]
pub struct HomotopyCategoryData {
    pub object_count: usize,
    pub edge_class: Vec<usize>,
    pub class_src: Vec<usize>,
    pub class_dst: Vec<usize>,
    pub identities: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
}

impl HomotopyCategoryData {
    pub fn class_count(&self) -> usize {
        self.class_src.len()
    }

    pub fn is_invertible(&self, c: usize) -> bool {
        let (x, y) = (self.class_src[c], self.class_dst[c]);
        (0..self.class_count()).any(|g| {
            self.class_src[g] == y
                && self.class_dst[g] == x
                && self.compose[c][g] == Some(self.identities[x])
                && self.compose[g][c] == Some(self.identities[y])
        })
    }

    /// Rebuilds an ordinary materialized category from the class data.
    pub fn to_category(&self) -> Result<FiniteCategory, SsetError> {
        let objects: Vec<String> = (0..self.object_count).map(|o| format!("v{o}")).collect();
        let morphisms: Vec<Morph> = (0..self.class_count())
            .map(|c| Morph {
                src: self.class_src[c],
                dst: self.class_dst[c],
                rep: vec![c],
            })
            .collect();
        let cat = FiniteCategory {
            objects,
            morphisms,
            identities: self.identities.clone(),
            compose: self.compose.clone(),
            gen_class: (0..self.class_count()).collect(),
        };
        check_category_laws(&cat)?;
        Ok(cat)
    }
}

/// Extracts the homotopy category of a truncated quasi-category; errors if
/// the inner-Kan precondition fails or the quotient is not well defined.
pub fn homotopy_category(x: &FiniteSimplicialSet) -> Result<HomotopyCategoryData, SsetError> {
    let max_n = x.top_dim().min(3);
    if max_n < 2 {
        return Err(SsetError::Other(
            "truncation below 2 cannot witness composition".into(),
        ));
    }
    if !check_inner_kan(x.underlying(), max_n, HORN_BUDGET).passes() {
        return Err(SsetError::Other("inner-Kan check failed".into()));
    }

    let n_edges = x.count(1);
    let mut uf = UnionFind::new(n_edges);
    for z in 0..x.count(2) {
        let (d0, d1, d2) = (x.face(2, z, 0), x.face(2, z, 1), x.face(2, z, 2));
        if x.is_degenerate(SimplexId::new(1, d0)) {
            uf.union(d2, d1);
        }
        if x.is_degenerate(SimplexId::new(1, d2)) {
            uf.union(d1, d0);
        }
    }
    let mut roots: Vec<usize> = (0..n_edges).map(|e| uf.find(e)).collect();
    let mut uniq = roots.clone();
    uniq.sort_unstable();
    uniq.dedup();
    let edge_class: Vec<usize> = roots
        .iter_mut()
        .map(|r| uniq.binary_search(r).unwrap())
        .collect();
    let n_classes = uniq.len();
    let class_src: Vec<usize> = uniq.iter().map(|&e| x.face(1, e, 1)).collect();
    let class_dst: Vec<usize> = uniq.iter().map(|&e| x.face(1, e, 0)).collect();
    // parallel-edge sanity inside classes
    for e in 0..n_edges {
        let c = edge_class[e];
        if x.face(1, e, 1) != class_src[c] || x.face(1, e, 0) != class_dst[c] {
            return Err(SsetError::Other(
                "homotopy relation identified non-parallel edges".into(),
            ));
        }
    }
    let identities: Vec<usize> = (0..x.count(0))
        .map(|v| edge_class[x.degeneracy(0, v, 0)])
        .collect();

    let mut compose: Vec<Vec<Option<usize>>> = vec![vec![None; n_classes]; n_classes];
    for z in 0..x.count(2) {
        let f = edge_class[x.face(2, z, 2)];
        let g = edge_class[x.face(2, z, 0)];
        let h = edge_class[x.face(2, z, 1)];
        match compose[f][g] {
            None => compose[f][g] = Some(h),
            Some(prev) if prev == h => {}
            Some(_) => {
                return Err(SsetError::Other(format!(
                    "composition of classes {f} and {g} is not well defined"
                )))
            }
        }
    }
    for f in 0..n_classes {
        for g in 0..n_classes {
            if class_dst[f] == class_src[g] && compose[f][g].is_none() {
                return Err(SsetError::Other(format!(
                    "no 2-simplex witnesses the composite of classes {f} and {g}"
                )));
            }
        }
    }

    let data = HomotopyCategoryData {
        object_count: x.count(0),
        edge_class,
        class_src,
        class_dst,
        identities,
        compose,
    };
    // associativity and identity laws, exhaustively
    data.to_category()?;
    Ok(data)
}

/// Adjoins a formal two-sided inverse for each arrow in `invert`.
pub fn localize_category(
    c: &FiniteCategoryPresentation,
    invert: &[usize],
) -> Result<FiniteCategoryPresentation, SsetError> {
    let mut arrows = c.arrows.clone();
    let mut relations = c.relations.clone();
    for &s in invert {
        let a = &c.arrows[s];
        let inv = arrows.len();
        arrows.push(ArrowGen {
            name: format!("{}_inv", a.name),
            src: a.dst,
            dst: a.src,
        });
        relations.push(Relation {
            src: a.src,
            dst: a.src,
            lhs: vec![s, inv],
            rhs: Vec::new(),
        });
        relations.push(Relation {
            src: a.dst,
            dst: a.dst,
            lhs: vec![inv, s],
            rhs: Vec::new(),
        });
    }
    FiniteCategoryPresentation::new(c.objects.clone(), arrows, relations)
}

/// A functor from a finite poset into a materialized category: object per
/// element, morphism per comparable pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PosetFunctor {
    pub obj: Vec<usize>,
    /// `mor[(a, b)]` for every `a <= b` in the poset.
    pub mor: BTreeMap<(usize, usize), usize>,
}

/// All functors from the subset lattice into `d` whose max-localizing edges
/// land on isomorphisms (pass `localizing_only = false` to drop the filter).
pub fn enumerate_lattice_functors(
    lattice: &SubsetLattice,
    d: &FiniteCategory,
    localizing_only: bool,
) -> Vec<PosetFunctor> {
    let p = lattice.poset();
    let n = p.len();
    let is_iso: Vec<bool> = (0..d.morphisms.len()).map(|m| d.is_iso(m)).collect();
    // elements are already listed along a linear extension
    let covers_of: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            p.covers()
                .iter()
                .filter(|&&(_, b)| b == a)
                .map(|&(x, _)| x)
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut obj = vec![0usize; n];
    let mut mor: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    fn rec(
        lattice: &SubsetLattice,
        d: &FiniteCategory,
        covers_of: &[Vec<usize>],
        is_iso: &[bool],
        localizing_only: bool,
        pos: usize,
        obj: &mut Vec<usize>,
        mor: &mut BTreeMap<(usize, usize), usize>,
        out: &mut Vec<PosetFunctor>,
    ) {
        let p = lattice.poset();
        let n = p.len();
        if pos == n {
            out.push(PosetFunctor {
                obj: obj.clone(),
                mor: mor.clone(),
            });
            return;
        }
        for o in 0..d.objects.len() {
            obj[pos] = o;
            // choose morphisms for each cover into pos
            let covers = &covers_of[pos];
            let choices: Vec<Vec<usize>> =
                covers.iter().map(|&b| d.hom(obj[b], o)).collect();
            let mut pick = vec![0usize; covers.len()];
            assign_covers(
                lattice,
                d,
                covers,
                &choices,
                is_iso,
                localizing_only,
                0,
                pos,
                obj,
                mor,
                &mut pick,
                |lattice, d, covers_of, is_iso, localizing_only, obj, mor, out| {
                    rec(
                        lattice,
                        d,
                        covers_of,
                        is_iso,
                        localizing_only,
                        pos + 1,
                        obj,
                        mor,
                        out,
                    )
                },
                covers_of,
                out,
            );
        }
    }
    rec(
        lattice,
        d,
        &covers_of,
        &is_iso,
        localizing_only,
        0,
        &mut obj,
        &mut mor,
        &mut out,
    );
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn assign_covers<F>(
    lattice: &SubsetLattice,
    d: &FiniteCategory,
    covers: &[usize],
    choices: &[Vec<usize>],
    is_iso: &[bool],
    localizing_only: bool,
    k: usize,
    elem: usize,
    obj: &mut Vec<usize>,
    mor: &mut BTreeMap<(usize, usize), usize>,
    pick: &mut Vec<usize>,
    cont: F,
    covers_of: &[Vec<usize>],
    out: &mut Vec<PosetFunctor>,
) where
    F: Fn(
            &SubsetLattice,
            &FiniteCategory,
            &[Vec<usize>],
            &[bool],
            bool,
            &mut Vec<usize>,
            &mut BTreeMap<(usize, usize), usize>,
            &mut Vec<PosetFunctor>,
        ) + Copy,
{
    let p = lattice.poset();
    if k == covers.len() {
        // derive all F(x <= elem) and check path independence + localizing
        let mut derived: Vec<(usize, usize)> = Vec::new();
        let mut ok = true;
        mor.insert((elem, elem), d.identities[obj[elem]]);
        derived.push((elem, elem));
        for x in 0..p.len() {
            if x == elem || !p.leq(x, elem) {
                continue;
            }
            let mut value: Option<usize> = None;
            for (ci, &b) in covers.iter().enumerate() {
                if !p.leq(x, b) {
                    continue;
                }
                let via = d.then(mor[&(x, b)], choices[ci][pick[ci]]);
                match value {
                    None => value = Some(via),
                    Some(v) if v == via => {}
                    Some(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            let Some(v) = value else {
                ok = false;
                break;
            };
            if !ok {
                break;
            }
            if localizing_only && lattice.max(x) == lattice.max(elem) && !is_iso[v] {
                ok = false;
                break;
            }
            mor.insert((x, elem), v);
            derived.push((x, elem));
        }
        if ok {
            // also record the cover morphisms themselves (already derived
            // above since covers are among the x's)
            cont(
                lattice,
                d,
                covers_of,
                is_iso,
                localizing_only,
                obj,
                mor,
                out,
            );
        }
        for key in derived {
            mor.remove(&key);
        }
        return;
    }
    if choices[k].is_empty() {
        return;
    }
    for i in 0..choices[k].len() {
        pick[k] = i;
        assign_covers(
            lattice,
            d,
            covers,
            choices,
            is_iso,
            localizing_only,
            k + 1,
            elem,
            obj,
            mor,
            pick,
            cont,
            covers_of,
            out,
        );
    }
}

/// Functors from the linear order on `card` elements into `d`: composable
/// `(card - 1)`-chains of morphisms, rendered as full lattice restrictions
/// along max for comparison purposes.
pub fn chain_functors(card: usize, d: &FiniteCategory) -> Vec<(Vec<usize>, Vec<usize>)> {
    // (objects o_0..o_{card-1}, morphisms m_1..m_{card-1})
    let mut out = Vec::new();
    let mut objs = Vec::new();
    let mut mors = Vec::new();
    fn rec(
        card: usize,
        d: &FiniteCategory,
        objs: &mut Vec<usize>,
        mors: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if objs.len() == card {
            out.push((objs.clone(), mors.clone()));
            return;
        }
        if objs.is_empty() {
            for o in 0..d.objects.len() {
                objs.push(o);
                rec(card, d, objs, mors, out);
                objs.pop();
            }
            return;
        }
        let prev = *objs.last().unwrap();
        for o in 0..d.objects.len() {
            for m in d.hom(prev, o) {
                objs.push(o);
                mors.push(m);
                rec(card, d, objs, mors, out);
                objs.pop();
                mors.pop();
            }
        }
    }
    rec(card, d, &mut objs, &mut mors, &mut out);
    out.sort();
    out
}

/// Restriction of a chain functor along max: the lattice functor with
/// `F(A) = G(max A)` and morphisms given by composing the chain.
pub fn restrict_along_max(
    lattice: &SubsetLattice,
    d: &FiniteCategory,
    chain: &(Vec<usize>, Vec<usize>),
) -> PosetFunctor {
    let (objs, mors) = chain;
    let seg = |a: usize, b: usize| -> usize {
        // composite of mors[a+1..=b] (identity when a == b)
        let mut cur = d.identities[objs[a]];
        for m in &mors[a..b] {
            cur = d.then(cur, *m);
        }
        cur
    };
    let p = lattice.poset();
    let n = p.len();
    let obj: Vec<usize> = (0..n).map(|e| objs[lattice.max(e)]).collect();
    let mut mor = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) {
                mor.insert((a, b), seg(lattice.max(a), lattice.max(b)));
            }
        }
    }
    PosetFunctor { obj, mor }
}

/// Natural transformations between two chain functors: a component per
/// element of the linear order, natural against each consecutive step.
pub fn nat_trans_chain(
    d: &FiniteCategory,
    g: &(Vec<usize>, Vec<usize>),
    g2: &(Vec<usize>, Vec<usize>),
) -> Vec<Vec<usize>> {
    let card = g.0.len();
    let mut out = Vec::new();
    let mut comps: Vec<usize> = Vec::new();
    fn rec(
        d: &FiniteCategory,
        g: &(Vec<usize>, Vec<usize>),
        g2: &(Vec<usize>, Vec<usize>),
        card: usize,
        comps: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = comps.len();
        if i == card {
            out.push(comps.clone());
            return;
        }
        for c in d.hom(g.0[i], g2.0[i]) {
            if i > 0 {
                let left = d.then(g.1[i - 1], c);
                let right = d.then(comps[i - 1], g2.1[i - 1]);
                if left != right {
                    continue;
                }
            }
            comps.push(c);
            rec(d, g, g2, card, comps, out);
            comps.pop();
        }
    }
    rec(d, g, g2, card, &mut comps, &mut out);
    out.sort();
    out
}

/// Natural transformations between two lattice functors: a component per
/// subset, natural against every comparable pair.
pub fn nat_trans_lattice(
    lattice: &SubsetLattice,
    d: &FiniteCategory,
    f: &PosetFunctor,
    f2: &PosetFunctor,
) -> Vec<Vec<usize>> {
    let p = lattice.poset();
    let n = p.len();
    let mut out = Vec::new();
    let mut comps: Vec<usize> = Vec::new();
    fn rec(
        p: &crate::poset::FinitePoset,
        d: &FiniteCategory,
        f: &PosetFunctor,
        f2: &PosetFunctor,
        n: usize,
        comps: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let e = comps.len();
        if e == n {
            out.push(comps.clone());
            return;
        }
        'cand: for c in d.hom(f.obj[e], f2.obj[e]) {
            for x in 0..e {
                if p.leq(x, e) {
                    let left = d.then(f.mor[&(x, e)], c);
                    let right = d.then(comps[x], f2.mor[&(x, e)]);
                    if left != right {
                        continue 'cand;
                    }
                }
            }
            comps.push(c);
            rec(p, d, f, f2, n, comps, out);
            comps.pop();
        }
    }
    rec(p, d, f, f2, n, &mut comps, &mut out);
    out.sort();
    out
}

fn naturally_isomorphic_lattice(
    lattice: &SubsetLattice,
    d: &FiniteCategory,
    f: &PosetFunctor,
    f2: &PosetFunctor,
) -> bool {
    // backtracks over iso components only and stops at the first complete
    // natural transformation
    fn rec(
        p: &crate::poset::FinitePoset,
        d: &FiniteCategory,
        f: &PosetFunctor,
        f2: &PosetFunctor,
        n: usize,
        comps: &mut Vec<usize>,
    ) -> bool {
        let e = comps.len();
        if e == n {
            return true;
        }
        'cand: for c in d.hom(f.obj[e], f2.obj[e]) {
            if !d.is_iso(c) {
                continue;
            }
            for x in 0..e {
                if p.leq(x, e)
                    && d.then(f.mor[&(x, e)], c) != d.then(comps[x], f2.mor[&(x, e)])
                {
                    continue 'cand;
                }
            }
            comps.push(c);
            if rec(p, d, f, f2, n, comps) {
                return true;
            }
            comps.pop();
        }
        false
    }
    let p = lattice.poset();
    rec(p, d, f, f2, p.len(), &mut Vec::new())
}

/// Checks that restriction along max is an equivalence onto the lattice
/// functors inverting every max-localizing edge: it must land in that class,
/// be fully faithful (restriction is a bijection on natural transformations
/// for every pair of chain functors), and be essentially surjective onto it.
/// Both sides are enumerated independently.
pub fn verify_max_localization(
    card: usize,
    d_pres: &FiniteCategoryPresentation,
    word_bound: usize,
) -> Result<bool, SsetError> {
    if card == 0 {
        return Err(SsetError::EmptyLinearOrder);
    }
    if card > 3 {
        return Err(SsetError::SubsetBoundExceeded { got: card, bound: 3 });
    }
    let d = materialize(d_pres, word_bound)?;
    if d.objects.len() > 3 || d.morphisms.len() > 12 {
        return Err(SsetError::Other(
            "category too large for the localization oracle".into(),
        ));
    }
    let lattice = crate::poset::nonempty_subsets_poset(card, crate::poset::SUBSET_BOUND)?;
    let localizing = enumerate_lattice_functors(&lattice, &d, true);
    let chains = chain_functors(card, &d);
    let images: Vec<PosetFunctor> = chains
        .iter()
        .map(|c| restrict_along_max(&lattice, &d, c))
        .collect();

    // image lands in the localizing class
    for img in &images {
        if localizing.binary_search(img).is_err() {
            return Ok(false);
        }
    }

    // fully faithful: restriction maps natural transformations bijectively
    for (gi, g) in chains.iter().enumerate() {
        for (gj, g2) in chains.iter().enumerate() {
            let upstairs = nat_trans_chain(&d, g, g2);
            let downstairs = nat_trans_lattice(&lattice, &d, &images[gi], &images[gj]);
            // restriction of a component list: component at subset A is the
            // component at max A
            let mut restricted: Vec<Vec<usize>> = upstairs
                .iter()
                .map(|comps| {
                    (0..lattice.poset().len())
                        .map(|e| comps[lattice.max(e)])
                        .collect()
                })
                .collect();
            restricted.sort();
            let before = restricted.len();
            restricted.dedup();
            if restricted.len() != before || restricted != downstairs {
                return Ok(false);
            }
        }
    }

    // essentially surjective: every localizing functor is naturally
    // isomorphic to a restriction
    for f in &localizing {
        if !images
            .iter()
            .any(|img| naturally_isomorphic_lattice(&lattice, &d, f, img))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Endofunctor data on a presentation: an object map and a word per
/// generating arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndofunctorData {
    pub obj_map: Vec<usize>,
    pub gen_words: Vec<Vec<usize>>,
}

impl EndofunctorData {
    pub fn identity(c: &FiniteCategoryPresentation) -> Self {
        EndofunctorData {
            obj_map: (0..c.objects.len()).collect(),
            gen_words: (0..c.arrows.len()).map(|g| vec![g]).collect(),
        }
    }
}

/// Checks that localization commutes with stabilization under `t`:
/// `localize(colim) = colim(localize)` up to isomorphism, where the colimit
/// is along the iterates of `t` and must stabilize within `stages`.
pub fn verify_stab_commutes_with_localization(
    c: &FiniteCategoryPresentation,
    invert: &[usize],
    t: &EndofunctorData,
    stages: usize,
    word_bound: usize,
) -> Result<bool, SsetError> {
    validate_endofunctor(c, t)?;
    // marked arrows must be carried into marked arrows, as single generators
    for &s in invert {
        let w = &t.gen_words[s];
        match w.len() {
            0 => {}
            1 if invert.contains(&w[0]) => {}
            _ => {
                return Err(SsetError::Other(
                    "endofunctor does not carry marked arrows to marked arrows".into(),
                ))
            }
        }
    }

    // side one: localize the stabilized category
    let cat = materialize(c, word_bound)?;
    let colim = stabilized_image(&cat, c, t, stages, word_bound)?;
    let (colim_pres, gen_of_class) = colim.cat.to_presentation();
    let mut s_colim: Vec<usize> = invert
        .iter()
        .filter_map(|&s| {
            let cls = colim.class_map[cat.gen_class[s]];
            gen_of_class[cls] // identity classes need no inverse
        })
        .collect();
    s_colim.sort_unstable();
    s_colim.dedup();
    let l1 = materialize(&localize_category(&colim_pres, &s_colim)?, word_bound)?;

    // side two: stabilize the localized category
    let cl = localize_category(c, invert)?;
    let mut obj_map = t.obj_map.clone();
    let _ = &mut obj_map;
    let mut gen_words = t.gen_words.clone();
    for (k, &s) in invert.iter().enumerate() {
        let w = &t.gen_words[s];
        let inv_gen = c.arrows.len() + k;
        let image = match w.len() {
            0 => Vec::new(),
            1 => vec![c.arrows.len() + invert.iter().position(|&x| x == w[0]).unwrap()],
            _ => unreachable!(),
        };
        debug_assert_eq!(cl.arrows[inv_gen].name, format!("{}_inv", c.arrows[s].name));
        gen_words.push(image);
    }
    let t_loc = EndofunctorData {
        obj_map: t.obj_map.clone(),
        gen_words,
    };
    validate_endofunctor(&cl, &t_loc)?;
    let cl_cat = materialize(&cl, word_bound)?;
    let colim_loc = stabilized_image(&cl_cat, &cl, &t_loc, stages, word_bound)?;
    let l2 = colim_loc.cat;

    Ok(categories_isomorphic(&l1, &l2))
}

fn validate_endofunctor(
    c: &FiniteCategoryPresentation,
    t: &EndofunctorData,
) -> Result<(), SsetError> {
    if t.obj_map.len() != c.objects.len() || t.gen_words.len() != c.arrows.len() {
        return Err(SsetError::Other("endofunctor data has wrong arity".into()));
    }
    for (g, w) in t.gen_words.iter().enumerate() {
        let a = &c.arrows[g];
        let (s, d) = c.word_endpoints(w, t.obj_map[a.src])?;
        if s != t.obj_map[a.src] || d != t.obj_map[a.dst] {
            return Err(SsetError::Other(format!(
                "endofunctor image of {} has wrong endpoints",
                a.name
            )));
        }
    }
    Ok(())
}

struct StabilizedImage {
    cat: FiniteCategory,
    /// Original morphism class -> class in the image category.
    class_map: Vec<usize>,
}

/// Computes the colimit of `cat -> cat -> ...` along the induced maps of
/// `t`, requiring the induced object and class maps to become idempotent
/// within `stages` iterations; the colimit is then the image subcategory.
fn stabilized_image(
    cat: &FiniteCategory,
    c: &FiniteCategoryPresentation,
    t: &EndofunctorData,
    stages: usize,
    _word_bound: usize,
) -> Result<StabilizedImage, SsetError> {
    // induced maps on objects and morphism classes
    let t_obj: Vec<usize> = t.obj_map.clone();
    let t_cls: Vec<usize> = (0..cat.morphisms.len())
        .map(|m| {
            let rep = &cat.morphisms[m].rep;
            let mut word: Vec<usize> = Vec::new();
            for &g in rep {
                word.extend_from_slice(&t.gen_words[g]);
            }
            cat.eval_word(&word, t_obj[cat.morphisms[m].src])
        })
        .collect();

    let apply = |o: &Vec<usize>, m: &Vec<usize>| -> (Vec<usize>, Vec<usize>) {
        (
            o.iter().map(|&x| t_obj[x]).collect(),
            m.iter().map(|&x| t_cls[x]).collect(),
        )
    };
    let mut cur: (Vec<usize>, Vec<usize>) = (
        (0..cat.objects.len()).collect(),
        (0..cat.morphisms.len()).collect(),
    );
    let mut found = None;
    for _ in 0..=stages {
        let next = apply(&cur.0, &cur.1);
        let next2 = apply(&next.0, &next.1);
        if next == next2 {
            found = Some(next);
            break;
        }
        cur = next;
    }
    let Some((obj_im, cls_im)) = found else {
        return Err(SsetError::Other(format!(
            "colimit does not stabilize within {stages} stages"
        )));
    };
    let _ = c;

    let mut objects: Vec<usize> = obj_im.clone();
    objects.sort_unstable();
    objects.dedup();
    let mut classes: Vec<usize> = cls_im.clone();
    classes.sort_unstable();
    classes.dedup();
    let obj_index = |o: usize| objects.binary_search(&o).unwrap();
    let cls_index = |m: usize| classes.binary_search(&m).unwrap();

    let morphisms: Vec<Morph> = classes
        .iter()
        .map(|&m| Morph {
            src: obj_index(cat.morphisms[m].src),
            dst: obj_index(cat.morphisms[m].dst),
            rep: vec![m],
        })
        .collect();
    let identities: Vec<usize> = objects
        .iter()
        .map(|&o| cls_index(cat.identities[o]))
        .collect();
    let n = morphisms.len();
    let mut compose = vec![vec![None; n]; n];
    for (fi, &f) in classes.iter().enumerate() {
        for (gi, &g) in classes.iter().enumerate() {
            if cat.composable(f, g) {
                compose[fi][gi] = Some(cls_index(cat.then(f, g)));
            }
        }
    }
    let image_cat = FiniteCategory {
        objects: objects.iter().map(|&o| cat.objects[o].clone()).collect(),
        morphisms,
        identities,
        compose,
        gen_class: Vec::new(),
    };
    check_category_laws(&image_cat)?;
    let class_map: Vec<usize> = cls_im.iter().map(|&m| cls_index(m)).collect();
    Ok(StabilizedImage {
        cat: image_cat,
        class_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn poset_arrow() -> FiniteCategoryPresentation {
        FiniteCategoryPresentation::new(
            vec!["0".into(), "1".into()],
            vec![ArrowGen {
                name: "f".into(),
                src: 0,
                dst: 1,
            }],
            vec![],
        )
        .unwrap()
    }

    fn free_two_step() -> FiniteCategoryPresentation {
        FiniteCategoryPresentation::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![
                ArrowGen {
                    name: "f".into(),
                    src: 0,
                    dst: 1,
                },
                ArrowGen {
                    name: "g".into(),
                    src: 1,
                    dst: 2,
                },
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn materialize_poset_arrow() {
        let cat = materialize(&poset_arrow(), WORD_BOUND).unwrap();
        assert_eq!(cat.morphisms.len(), 3); // two identities and f
        assert_eq!(cat.hom(0, 1).len(), 1);
        assert_eq!(cat.hom(1, 0).len(), 0);
    }

    #[test]
    fn materialize_free_two_step() {
        let cat = materialize(&free_two_step(), WORD_BOUND).unwrap();
        assert_eq!(cat.morphisms.len(), 6); // 3 ids, f, g, gf
        assert_eq!(cat.hom(0, 2).len(), 1);
    }

    #[test]
    fn free_endomorphism_fails_closure() {
        let c = FiniteCategoryPresentation::new(
            vec!["0".into()],
            vec![ArrowGen {
                name: "e".into(),
                src: 0,
                dst: 0,
            }],
            vec![],
        )
        .unwrap();
        assert!(materialize(&c, 4).is_err());
    }

    #[test]
    fn idempotent_endomorphism_closes() {
        let c = FiniteCategoryPresentation::new(
            vec!["0".into()],
            vec![ArrowGen {
                name: "e".into(),
                src: 0,
                dst: 0,
            }],
            vec![Relation {
                src: 0,
                dst: 0,
                lhs: vec![0, 0],
                rhs: vec![0],
            }],
        )
        .unwrap();
        let cat = materialize(&c, 4).unwrap();
        assert_eq!(cat.morphisms.len(), 2); // id and e
    }

    #[test]
    fn nerve_of_presentations() {
        // one object, identity only
        let trivial = FiniteCategoryPresentation::new(vec!["x".into()], vec![], vec![]).unwrap();
        let nv = nerve_of_presentation(&trivial, 3, WORD_BOUND).unwrap();
        assert_eq!(nv.sset().nondegenerate_counts(), vec![1, 0, 0, 0]);

        // poset 0 < 1 gives the interval
        let nv = nerve_of_presentation(&poset_arrow(), 2, WORD_BOUND).unwrap();
        assert_eq!(nv.sset().nondegenerate_counts(), vec![2, 1, 0]);
        assert!(nv.sset().validate().is_empty());

        // free category on 0 -> 1 -> 2: one nondegenerate 2-simplex
        let nv = nerve_of_presentation(&free_two_step(), 3, WORD_BOUND).unwrap();
        assert_eq!(nv.sset().nondegenerate_count(2), 1);
        assert!(nv.sset().validate().is_empty());
    }

    #[test]
    fn homotopy_category_round_trip() {
        for pres in [poset_arrow(), free_two_step()] {
            let nv = nerve_of_presentation(&pres, 3, WORD_BOUND).unwrap();
            let ho = homotopy_category(nv.sset()).unwrap();
            let cat = materialize(&pres, WORD_BOUND).unwrap();
            assert_eq!(ho.object_count, cat.objects.len());
            assert_eq!(ho.class_count(), cat.morphisms.len());
            assert!(categories_isomorphic(&ho.to_category().unwrap(), &cat));
        }
    }

    #[test]
    fn homotopy_category_of_groupoid_is_invertible() {
        let iso = localize_category(&poset_arrow(), &[0]).unwrap();
        let nv = nerve_of_presentation(&iso, 3, WORD_BOUND).unwrap();
        let ho = homotopy_category(nv.sset()).unwrap();
        for c in 0..ho.class_count() {
            assert!(ho.is_invertible(c));
        }
    }

    #[test]
    fn homotopy_category_of_point() {
        let trivial = FiniteCategoryPresentation::new(vec!["x".into()], vec![], vec![]).unwrap();
        let nv = nerve_of_presentation(&trivial, 3, WORD_BOUND).unwrap();
        let ho = homotopy_category(nv.sset()).unwrap();
        assert_eq!(ho.object_count, 1);
        assert_eq!(ho.class_count(), 1);
    }

    #[test]
    fn localize_poset_arrow_gives_iso_category() {
        let loc = localize_category(&poset_arrow(), &[0]).unwrap();
        let cat = materialize(&loc, WORD_BOUND).unwrap();
        assert_eq!(cat.morphisms.len(), 4);
        for m in 0..cat.morphisms.len() {
            assert!(cat.is_iso(m));
        }
    }

    #[test]
    fn localize_identities_only_is_noop() {
        let cat0 = materialize(&free_two_step(), WORD_BOUND).unwrap();
        let loc = localize_category(&free_two_step(), &[]).unwrap();
        let cat1 = materialize(&loc, WORD_BOUND).unwrap();
        assert!(categories_isomorphic(&cat0, &cat1));
    }

    #[test]
    fn localize_last_arrow_of_free_two_step() {
        let loc = localize_category(&free_two_step(), &[1]).unwrap();
        let cat = materialize(&loc, WORD_BOUND).unwrap();
        assert_eq!(cat.hom(2, 1).len(), 1);
    }

    #[test]
    fn localization_universal_property_small() {
        // functors out of localize(C, S) correspond to functors out of C
        // sending S to isomorphisms
        let c = poset_arrow();
        let loc = localize_category(&c, &[0]).unwrap();
        let iso_cat = materialize(&loc, WORD_BOUND).unwrap();
        for target in [
            materialize(&poset_arrow(), WORD_BOUND).unwrap(),
            materialize(&localize_category(&poset_arrow(), &[0]).unwrap(), WORD_BOUND).unwrap(),
        ] {
            let from_loc = enumerate_functors(&loc, &target).len();
            let inverting = enumerate_functors(&c, &target)
                .into_iter()
                .filter(|f| target.is_iso(f.gens[0]))
                .count();
            assert_eq!(from_loc, inverting);
            let _ = &iso_cat;
        }
    }

    #[test]
    fn max_localization_small_cases() {
        // I = {0}: both sides are the objects
        assert!(verify_max_localization(1, &poset_arrow(), WORD_BOUND).unwrap());
        // I = {0,1}, D = poset arrow: both sides have 3 elements
        assert!(verify_max_localization(2, &poset_arrow(), WORD_BOUND).unwrap());
        // I = {0,1,2}, D = the 2-object isomorphism category
        let iso = localize_category(&poset_arrow(), &[0]).unwrap();
        assert!(verify_max_localization(3, &iso, WORD_BOUND).unwrap());
    }

    #[test]
    fn stab_commutes_identity_endofunctor() {
        let c = poset_arrow();
        let t = EndofunctorData::identity(&c);
        assert!(
            verify_stab_commutes_with_localization(&c, &[0], &t, 3, WORD_BOUND).unwrap()
        );
    }

    #[test]
    fn stab_commutes_summand_collapse() {
        // two disjoint arrows; T carries the first summand onto the second
        let c = FiniteCategoryPresentation::new(
            vec!["a0".into(), "a1".into(), "b0".into(), "b1".into()],
            vec![
                ArrowGen {
                    name: "f".into(),
                    src: 0,
                    dst: 1,
                },
                ArrowGen {
                    name: "g".into(),
                    src: 2,
                    dst: 3,
                },
            ],
            vec![],
        )
        .unwrap();
        let t = EndofunctorData {
            obj_map: vec![2, 3, 2, 3],
            gen_words: vec![vec![1], vec![1]],
        };
        assert!(
            verify_stab_commutes_with_localization(&c, &[1], &t, 3, WORD_BOUND).unwrap()
        );
    }

    #[test]
    fn stab_commutes_object_collapse_no_marked() {
        // T collapses 0 < 1 onto the object 1
        let c = poset_arrow();
        let t = EndofunctorData {
            obj_map: vec![1, 1],
            gen_words: vec![vec![]],
        };
        assert!(
            verify_stab_commutes_with_localization(&c, &[], &t, 3, WORD_BOUND).unwrap()
        );
    }
}
