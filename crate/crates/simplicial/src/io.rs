//! Textual interchange formats: `sset`/`ssset` complexes, posets, and
//! category presentations. Parsers validate on load and report line numbers.

use std::fmt::Write as _;

use crate::category::{ArrowGen, FiniteCategoryPresentation, Relation};
use crate::complex::{FiniteSimplicialSet, SemiSimplicialComplex, SsetError};
use crate::poset::FinitePoset;

fn parse_err(line: usize, msg: impl Into<String>) -> SsetError {
    SsetError::Parse {
        line,
        detail: msg.into(),
    }
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("");
                let toks: Vec<&str> = body.split_whitespace().collect();
                if toks.is_empty() {
                    None
                } else {
                    Some((i + 1, toks))
                }
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<&(usize, Vec<&'a str>)> {
        let it = self.items.get(self.pos);
        if it.is_some() {
            self.pos += 1;
        }
        it
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.pos)
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, SsetError> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected integer, got `{tok}`")))
}

/// Parses a document in the `sset`/`ssset` format. Returns either a full
/// simplicial set or, for `ssset` headers, a semisimplicial complex.
#[derive(Debug)]
pub enum ParsedComplex {
    Simplicial(FiniteSimplicialSet),
    Semisimplicial(SemiSimplicialComplex),
}

impl ParsedComplex {
    pub fn underlying(&self) -> &SemiSimplicialComplex {
        match self {
            ParsedComplex::Simplicial(x) => x.underlying(),
            ParsedComplex::Semisimplicial(x) => x,
        }
    }
}

pub fn parse_complex(text: &str) -> Result<ParsedComplex, SsetError> {
    let mut lines = Lines::new(text);
    let Some((hline, header)) = lines.next().cloned() else {
        return Err(parse_err(0, "empty document"));
    };
    let simplicial = match header[0] {
        "sset" => true,
        "ssset" => false,
        other => return Err(parse_err(hline, format!("unknown header `{other}`"))),
    };
    if header.len() != 2 {
        return Err(parse_err(hline, "header needs exactly one dimension argument"));
    }
    let top_dim = parse_usize(hline, header[1])?;

    let mut counts: Vec<usize> = Vec::new();
    let mut faces: Vec<Vec<Option<Vec<usize>>>> = Vec::new();
    let mut degen: Vec<Vec<Option<Vec<usize>>>> = Vec::new();
    while let Some((lno, toks)) = lines.peek().cloned() {
        match toks[0] {
            "dim" => {
                lines.next();
                if toks.len() != 3 {
                    return Err(parse_err(lno, "dim line needs `dim <n> <count>`"));
                }
                let n = parse_usize(lno, toks[1])?;
                if n != counts.len() || n > top_dim {
                    return Err(parse_err(lno, format!("unexpected dimension {n}")));
                }
                let count = parse_usize(lno, toks[2])?;
                counts.push(count);
                faces.push(vec![None; count]);
                degen.push(vec![None; count]);
            }
            "face" => {
                lines.next();
                if toks.len() < 3 {
                    return Err(parse_err(lno, "face line needs `face <n> <index> <entries>`"));
                }
                let n = parse_usize(lno, toks[1])?;
                let idx = parse_usize(lno, toks[2])?;
                if n >= counts.len() || idx >= counts[n] {
                    return Err(parse_err(lno, format!("face ({n}, {idx}) out of range")));
                }
                if toks.len() != 3 + n + 1 {
                    return Err(parse_err(lno, format!("face line needs {} entries", n + 1)));
                }
                let entries = toks[3..]
                    .iter()
                    .map(|t| parse_usize(lno, t))
                    .collect::<Result<Vec<_>, _>>()?;
                if faces[n][idx].is_some() {
                    return Err(parse_err(lno, format!("duplicate face line for ({n}, {idx})")));
                }
                faces[n][idx] = Some(entries);
            }
            "degen" => {
                lines.next();
                if !simplicial {
                    return Err(parse_err(lno, "degen lines are not allowed under `ssset`"));
                }
                if toks.len() < 3 {
                    return Err(parse_err(lno, "degen line needs `degen <n> <index> <entries>`"));
                }
                let n = parse_usize(lno, toks[1])?;
                let idx = parse_usize(lno, toks[2])?;
                if n >= counts.len() || idx >= counts[n] {
                    return Err(parse_err(lno, format!("degen ({n}, {idx}) out of range")));
                }
                if toks.len() != 3 + n + 1 {
                    return Err(parse_err(lno, format!("degen line needs {} entries", n + 1)));
                }
                let entries = toks[3..]
                    .iter()
                    .map(|t| parse_usize(lno, t))
                    .collect::<Result<Vec<_>, _>>()?;
                if degen[n][idx].is_some() {
                    return Err(parse_err(lno, format!("duplicate degen line for ({n}, {idx})")));
                }
                degen[n][idx] = Some(entries);
            }
            other => return Err(parse_err(lno, format!("unknown directive `{other}`"))),
        }
    }
    if counts.len() != top_dim + 1 {
        return Err(parse_err(
            0,
            format!("expected {} dim lines, found {}", top_dim + 1, counts.len()),
        ));
    }

    let face_tables: Vec<Vec<Vec<usize>>> = faces
        .into_iter()
        .enumerate()
        .map(|(n, level)| {
            level
                .into_iter()
                .enumerate()
                .map(|(idx, entry)| match entry {
                    Some(e) => Ok(e),
                    None if n == 0 => Ok(Vec::new()),
                    None => Err(parse_err(0, format!("missing face line for ({n}, {idx})"))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let underlying = SemiSimplicialComplex::from_faces(face_tables)?;
    let report = underlying.validate();
    if !report.is_empty() {
        return Err(SsetError::InvalidStructure(report));
    }
    if !simplicial {
        return Ok(ParsedComplex::Semisimplicial(underlying));
    }
    let degen_tables: Vec<Vec<Vec<usize>>> = degen
        .into_iter()
        .take(top_dim)
        .enumerate()
        .map(|(n, level)| {
            level
                .into_iter()
                .enumerate()
                .map(|(idx, entry)| {
                    entry.ok_or_else(|| parse_err(0, format!("missing degen line for ({n}, {idx})")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if top_dim < degen_tables.len() {
        // unreachable by construction; the take() above bounds it
    }
    let x = FiniteSimplicialSet::from_parts(underlying, degen_tables)?;
    let report = x.validate();
    if !report.is_empty() {
        return Err(SsetError::InvalidStructure(report));
    }
    Ok(ParsedComplex::Simplicial(x))
}

pub fn print_semisimplicial(x: &SemiSimplicialComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ssset {}", x.top_dim());
    for n in 0..=x.top_dim() {
        let _ = writeln!(out, "dim {} {}", n, x.count(n));
    }
    for n in 1..=x.top_dim() {
        for idx in 0..x.count(n) {
            let entries: Vec<String> = x.faces_of(n, idx).iter().map(|f| f.to_string()).collect();
            let _ = writeln!(out, "face {} {} {}", n, idx, entries.join(" "));
        }
    }
    out
}

pub fn print_simplicial(x: &FiniteSimplicialSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sset {}", x.top_dim());
    for n in 0..=x.top_dim() {
        let _ = writeln!(out, "dim {} {}", n, x.count(n));
    }
    for n in 1..=x.top_dim() {
        for idx in 0..x.count(n) {
            let entries: Vec<String> = x
                .underlying()
                .faces_of(n, idx)
                .iter()
                .map(|f| f.to_string())
                .collect();
            let _ = writeln!(out, "face {} {} {}", n, idx, entries.join(" "));
        }
    }
    for n in 0..x.top_dim() {
        for idx in 0..x.count(n) {
            let entries: Vec<String> = (0..=n).map(|i| x.degeneracy(n, idx, i).to_string()).collect();
            let _ = writeln!(out, "degen {} {} {}", n, idx, entries.join(" "));
        }
    }
    out
}

/// Parses `poset <n>` followed by `le <i> <j>` lines for the covering (or
/// any generating) relation; the transitive closure is taken.
pub fn parse_poset(text: &str) -> Result<FinitePoset, SsetError> {
    let mut lines = Lines::new(text);
    let Some((hline, header)) = lines.next().cloned() else {
        return Err(parse_err(0, "empty document"));
    };
    if header[0] != "poset" || header.len() != 2 {
        return Err(parse_err(hline, "expected header `poset <n>`"));
    }
    let n = parse_usize(hline, header[1])?;
    let mut pairs = Vec::new();
    while let Some((lno, toks)) = lines.next().cloned() {
        if toks[0] != "le" || toks.len() != 3 {
            return Err(parse_err(lno, "expected `le <i> <j>`"));
        }
        let i = parse_usize(lno, toks[1])?;
        let j = parse_usize(lno, toks[2])?;
        if i >= n || j >= n {
            return Err(parse_err(lno, format!("element out of range in `le {i} {j}`")));
        }
        pairs.push((i, j));
    }
    FinitePoset::from_pairs(n, &pairs)
}

pub fn print_poset(p: &FinitePoset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "poset {}", p.len());
    for (i, j) in p.covers() {
        let _ = writeln!(out, "le {i} {j}");
    }
    out
}

/// Parses `cat`, `obj <name>`, `arr <name> <src> <dst>`, and
/// `rel <word> = <word>` lines; a word is a whitespace-separated sequence of
/// arrow names in diagrammatic order, or the single token `id`.
pub fn parse_category(text: &str) -> Result<FiniteCategoryPresentation, SsetError> {
    let mut lines = Lines::new(text);
    let Some((hline, header)) = lines.next().cloned() else {
        return Err(parse_err(0, "empty document"));
    };
    if header[0] != "cat" || header.len() != 1 {
        return Err(parse_err(hline, "expected header `cat`"));
    }
    let mut objects: Vec<String> = Vec::new();
    let mut arrows: Vec<ArrowGen> = Vec::new();
    let mut raw_relations: Vec<(usize, Vec<String>, Vec<String>)> = Vec::new();
    while let Some((lno, toks)) = lines.next().cloned() {
        match toks[0] {
            "obj" => {
                if toks.len() != 2 {
                    return Err(parse_err(lno, "expected `obj <name>`"));
                }
                if objects.iter().any(|o| o == toks[1]) {
                    return Err(parse_err(lno, format!("duplicate object `{}`", toks[1])));
                }
                objects.push(toks[1].to_string());
            }
            "arr" => {
                if toks.len() != 4 {
                    return Err(parse_err(lno, "expected `arr <name> <src> <dst>`"));
                }
                if arrows.iter().any(|a| a.name == toks[1]) {
                    return Err(parse_err(lno, format!("duplicate arrow `{}`", toks[1])));
                }
                let find = |name: &str| {
                    objects
                        .iter()
                        .position(|o| o == name)
                        .ok_or_else(|| parse_err(lno, format!("unknown object `{name}`")))
                };
                arrows.push(ArrowGen {
                    name: toks[1].to_string(),
                    src: find(toks[2])?,
                    dst: find(toks[3])?,
                });
            }
            "rel" => {
                let eq = toks
                    .iter()
                    .position(|&t| t == "=")
                    .ok_or_else(|| parse_err(lno, "relation needs an `=`"))?;
                let lhs: Vec<String> = toks[1..eq].iter().map(|t| t.to_string()).collect();
                let rhs: Vec<String> = toks[eq + 1..].iter().map(|t| t.to_string()).collect();
                if lhs.is_empty() || rhs.is_empty() {
                    return Err(parse_err(lno, "relation sides must be nonempty"));
                }
                raw_relations.push((lno, lhs, rhs));
            }
            other => return Err(parse_err(lno, format!("unknown directive `{other}`"))),
        }
    }
    let mut relations = Vec::new();
    for (lno, lhs, rhs) in raw_relations {
        let to_word = |side: &[String]| -> Result<Vec<usize>, SsetError> {
            if side.len() == 1 && side[0] == "id" {
                return Ok(Vec::new());
            }
            side.iter()
                .map(|name| {
                    arrows
                        .iter()
                        .position(|a| &a.name == name)
                        .ok_or_else(|| parse_err(lno, format!("unknown arrow `{name}`")))
                })
                .collect()
        };
        let lw = to_word(&lhs)?;
        let rw = to_word(&rhs)?;
        let endpoints = |word: &[usize]| -> Option<(usize, usize)> {
            let first = *word.first()?;
            let mut cur = arrows[first].src;
            let src = cur;
            for &g in word {
                if arrows[g].src != cur {
                    return None;
                }
                cur = arrows[g].dst;
            }
            Some((src, cur))
        };
        let (src, dst) = match (endpoints(&lw), endpoints(&rw)) {
            (Some(l), Some(r)) if l == r => l,
            (Some((s, d)), None) if rw.is_empty() && s == d => (s, d),
            (None, Some((s, d))) if lw.is_empty() && s == d => (s, d),
            _ => return Err(parse_err(lno, "relation sides are not parallel composable words")),
        };
        relations.push(Relation {
            src,
            dst,
            lhs: lw,
            rhs: rw,
        });
    }
    FiniteCategoryPresentation::new(objects, arrows, relations)
}

pub fn print_category(c: &FiniteCategoryPresentation) -> String {
    let mut out = String::from("cat\n");
    for o in &c.objects {
        let _ = writeln!(out, "obj {o}");
    }
    for a in &c.arrows {
        let _ = writeln!(out, "arr {} {} {}", a.name, c.objects[a.src], c.objects[a.dst]);
    }
    let word = |w: &[usize]| -> String {
        if w.is_empty() {
            "id".to_string()
        } else {
            w.iter()
                .map(|&g| c.arrows[g].name.clone())
                .collect::<Vec<_>>()
                .join(" ")
        }
    };
    for r in &c.relations {
        let _ = writeln!(out, "rel {} = {}", word(&r.lhs), word(&r.rhs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{horn, standard_simplex};

    #[test]
    fn simplicial_round_trip() {
        let x = standard_simplex(3, 2).unwrap();
        let text = print_simplicial(&x);
        match parse_complex(&text).unwrap() {
            ParsedComplex::Simplicial(y) => {
                assert_eq!(print_simplicial(&y), text);
            }
            _ => panic!("expected simplicial"),
        }
    }

    #[test]
    fn semisimplicial_round_trip() {
        let h = horn(3, 1).unwrap();
        let text = print_semisimplicial(h.sset());
        match parse_complex(&text).unwrap() {
            ParsedComplex::Semisimplicial(y) => {
                assert_eq!(print_semisimplicial(&y), text);
            }
            _ => panic!("expected semisimplicial"),
        }
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# point\nssset 0\ndim 0 1  # one vertex\n\n";
        let parsed = parse_complex(text).unwrap();
        assert_eq!(parsed.underlying().count(0), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "ssset 1\ndim 0 2\ndim 1 1\nface 1 0 0 7\n";
        match parse_complex(bad) {
            Err(SsetError::Parse { .. }) | Err(SsetError::FaceIndexOutOfRange { .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        let bad = "ssset 1\ndim 0 2\nbogus 1\n";
        match parse_complex(bad) {
            Err(SsetError::Parse { line: 3, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn identity_violation_is_reported() {
        // a 2-simplex whose faces break d_i d_j = d_{j-1} d_i
        let bad = "ssset 2\ndim 0 3\ndim 1 3\ndim 2 1\n\
                   face 1 0 1 0\nface 1 1 2 0\nface 1 2 2 1\n\
                   face 2 0 2 0 1\n";
        assert!(matches!(
            parse_complex(bad),
            Err(SsetError::InvalidStructure(_))
        ));
    }

    #[test]
    fn poset_round_trip() {
        let text = "poset 3\nle 0 1\nle 1 2\n";
        let p = parse_poset(text).unwrap();
        assert!(p.leq(0, 2));
        let text2 = print_poset(&p);
        let p2 = parse_poset(&text2).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn category_round_trip() {
        let text = "cat\nobj a\nobj b\narr f a b\narr g b a\nrel f g = id\nrel g f = id\n";
        let c = parse_category(text).unwrap();
        assert_eq!(c.objects.len(), 2);
        assert_eq!(c.relations.len(), 2);
        assert_eq!(c.relations[0].rhs, Vec::<usize>::new());
        let c2 = parse_category(&print_category(&c)).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn category_rejects_non_parallel_relation() {
        let text = "cat\nobj a\nobj b\narr f a b\nrel f = id\n";
        assert!(parse_category(text).is_err());
    }
}
