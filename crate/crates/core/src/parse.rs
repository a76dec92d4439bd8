//! Text formats shared by the CLI and library loaders.
//!
//! Diagrams: `B3`, `B3(mark=3)`, `name=B3;mark=3`, `gcm=[[2,-1],[-1,2]];mark=2`.
//! Marks are 1-based and default to the last node.
//! Pairs: two diagram specs separated by a top-level comma.
//! Weights: `101`, `[1,0,1]` or `1,0,1`; two-sided weights `[1,0],[2]`.

use crate::diagram::{DynkinDiagram, MarkedDiagram, MarkedPair};
use crate::error::{Error, Result};
use crate::hweights::TwoSidedWeight;
use crate::lattice::Weight;

fn bad(what: &str, s: &str) -> Error {
    Error::Parse(format!("{what}: {s:?}"))
}

/// Splits on commas that are not nested in brackets or parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_standard(name: &str) -> Result<DynkinDiagram> {
    let mut chars = name.trim().chars();
    let family = chars.next().ok_or_else(|| bad("empty diagram name", name))?;
    let n: usize = chars.as_str().parse().map_err(|_| bad("bad diagram name", name))?;
    DynkinDiagram::standard(family.to_ascii_uppercase(), n)
}

/// Parses a marked diagram spec.
pub fn diagram_spec(s: &str) -> Result<MarkedDiagram> {
    let s = s.trim();
    // `B3(mark=3)` is sugar for `name=B3;mark=3`
    let normalized = match s.find('(') {
        Some(i) if s.ends_with(')') && !s.starts_with("gcm") => {
            format!("name={};{}", &s[..i], &s[i + 1..s.len() - 1])
        }
        _ if !s.contains('=') => format!("name={s}"),
        _ => s.to_string(),
    };
    let mut diagram = None;
    let mut mark = None;
    for field in normalized.split(';').map(str::trim).filter(|f| !f.is_empty()) {
        let (key, value) = field.split_once('=').ok_or_else(|| bad("expected key=value", field))?;
        match key.trim() {
            "name" => diagram = Some(parse_standard(value)?),
            "gcm" => {
                let m: Vec<Vec<i64>> =
                    serde_json::from_str(value.trim()).map_err(|e| Error::Parse(format!("gcm: {e}")))?;
                diagram = Some(DynkinDiagram::new(m)?);
            }
            "mark" => mark = Some(value.trim().parse::<usize>().map_err(|_| bad("bad mark", value))?),
            _ => return Err(bad("unknown key", key)),
        }
    }
    let diagram = diagram.ok_or_else(|| bad("missing name= or gcm=", s))?;
    let mark = mark.unwrap_or(diagram.rank());
    if mark == 0 || mark > diagram.rank() {
        return Err(Error::BadNode { node: mark, rank: diagram.rank() });
    }
    MarkedDiagram::new(diagram, mark - 1)
}

/// Canonical `gcm=...;mark=...` text for `md`; [`diagram_spec`] inverts it.
pub fn format_diagram(md: &MarkedDiagram) -> String {
    let gcm = serde_json::to_string(md.diagram.cartan()).expect("integer matrix serializes");
    format!("gcm={gcm};mark={}", md.mark + 1)
}

/// Unmarked diagram spec; a `mark` field is accepted and ignored.
pub fn plain_diagram(s: &str) -> Result<DynkinDiagram> {
    Ok(diagram_spec(s)?.diagram)
}

pub fn pair_spec(s: &str) -> Result<MarkedPair> {
    match split_top(s).as_slice() {
        [a, b] => Ok(MarkedPair::new(diagram_spec(a)?, diagram_spec(b)?)),
        _ => Err(bad("a pair needs exactly two diagram specs", s)),
    }
}

fn int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad("bad integer", x))).collect()
}

/// A weight on a single diagram in fundamental-weight coordinates.
pub fn weight(s: &str) -> Result<Weight> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        return Ok(Weight(int_list(inner)?));
    }
    if s.contains(',') || s.starts_with('-') {
        return Ok(Weight(int_list(s)?));
    }
    s.chars()
        .map(|c| c.to_digit(10).map(i64::from).ok_or_else(|| bad("bad digit string", s)))
        .collect::<Result<Vec<_>>>()
        .map(Weight)
}

/// A weight of `H₂`, `[x1,..],[y1,..]`.
pub fn two_sided(s: &str) -> Result<TwoSidedWeight> {
    let parts = split_top(s.trim());
    let [x, y] = parts.as_slice() else { return Err(bad("expected [x..],[y..]", s)) };
    let strip = |t: &str| -> Result<Vec<i64>> {
        let t = t.trim();
        let inner = t.strip_prefix('[').and_then(|u| u.strip_suffix(']')).ok_or_else(|| bad("expected brackets", t))?;
        int_list(inner)
    };
    Ok(TwoSidedWeight::from_vecs(strip(x)?, strip(y)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_forms_agree() {
        let a = diagram_spec("B3(mark=3)").unwrap();
        let b = diagram_spec("name=B3;mark=3").unwrap();
        let c = diagram_spec("B3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let g = diagram_spec("gcm=[[2,-1],[-1,2]];mark=1").unwrap();
        assert_eq!(g.mark, 0);
        assert_eq!(g.diagram.det(), 3);
    }

    #[test]
    fn format_round_trips() {
        for spec in ["A1", "B3(mark=1)", "E6", "G2(mark=1)", "gcm=[[2,-3],[-3,2]];mark=2"] {
            let md = diagram_spec(spec).unwrap();
            assert_eq!(diagram_spec(&format_diagram(&md)).unwrap().diagram.cartan(), md.diagram.cartan());
            assert_eq!(diagram_spec(&format_diagram(&md)).unwrap().mark, md.mark);
        }
    }

    #[test]
    fn rejects() {
        assert!(diagram_spec("B3(mark=4)").is_err());
        assert!(diagram_spec("Q3").is_err());
        assert!(diagram_spec("gcm=[[2,-1],[0,2]]").is_err());
        assert!(pair_spec("A1").is_err());
    }

    #[test]
    fn pairs_split_at_top_level() {
        let p = pair_spec("gcm=[[2,-1],[-1,2]];mark=2,A1").unwrap();
        assert_eq!((p.d1, p.d2), (2, 1));
        let p = pair_spec("B3(mark=3),A1").unwrap();
        assert!(!p.is_extensible_pair());
    }

    #[test]
    fn weights() {
        assert_eq!(weight("101").unwrap(), Weight(vec![1, 0, 1]));
        assert_eq!(weight("[1,0,1]").unwrap(), Weight(vec![1, 0, 1]));
        assert_eq!(weight("1,0,12").unwrap(), Weight(vec![1, 0, 12]));
        assert_eq!(two_sided("[1],[0,1]").unwrap(), TwoSidedWeight::from_vecs(vec![1], vec![0, 1]));
        assert_eq!(two_sided("[],[]").unwrap(), TwoSidedWeight::zero());
        assert!(two_sided("[1]").is_err());
    }
}
