//! Littelmann paths over exact rationals, the root operators `e_p`, `f_p`,
//! crystal generation by breadth-first search and the path-counting
//! formulas for tensor product and branching multiplicities.
//!
//! A path is stored by its breakpoints `0 = t_0 < … < t_r = 1` and the
//! coroot values `π(t_i)(α̌_p)` there; it is linear in between.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{DynkinDiagram, ZkDiagram};
use crate::error::{Error, Result};
use crate::hweights::{self, TwoSidedWeight};
use crate::lattice::{self, Weight};
use crate::linalg::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    times: Vec<Q>,
    values: Vec<Vec<Q>>,
}

fn qi(x: i64) -> Q {
    Q::from_integer(x)
}

fn lerp(a: &[Q], b: &[Q], c: Q) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| *x + (*y - *x) * c).collect()
}

/// Fractions in `(0,1)` at which the segment `h0 → h1` crosses a level.
fn crossings(h0: Q, h1: Q, levels: &[Q]) -> Vec<Q> {
    let mut cuts: Vec<Q> = levels
        .iter()
        .filter(|&&l| (h0 < l && l < h1) || (h1 < l && l < h0))
        .map(|&l| (l - h0) / (h1 - h0))
        .collect();
    cuts.sort();
    cuts.dedup();
    cuts
}

impl Path {
    /// `π_λ(t) = tλ`.
    pub fn straight(w: &Weight) -> Path {
        let n = w.rank();
        Path {
            times: vec![Q::zero(), Q::one()],
            values: vec![vec![Q::zero(); n], w.0.iter().map(|&x| qi(x)).collect()],
        }
    }

    /// Builds a path from breakpoints; requires `t_0 = 0`, `t_r = 1`,
    /// strictly increasing times and `π(0) = 0`.
    pub fn from_breakpoints(times: Vec<Q>, values: Vec<Vec<Q>>) -> Result<Path> {
        let ok = times.len() >= 2
            && times.len() == values.len()
            && times[0].is_zero()
            && times.last() == Some(&Q::one())
            && times.windows(2).all(|w| w[0] < w[1])
            && values.iter().all(|v| v.len() == values[0].len())
            && values[0].iter().all(Zero::is_zero);
        if !ok {
            return Err(Error::Invalid("malformed path breakpoints".into()));
        }
        Ok(Path { times, values }.canonical())
    }

    /// Segment list `(increment, duration)`.
    pub fn segments(&self) -> Vec<(Vec<Q>, Q)> {
        self.times
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(t, v)| (v[1].iter().zip(&v[0]).map(|(b, a)| b - a).collect(), t[1] - t[0]))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.values[0].len()
    }

    pub fn times(&self) -> &[Q] {
        &self.times
    }

    pub fn values(&self) -> &[Vec<Q>] {
        &self.values
    }

    pub fn endpoint(&self) -> &[Q] {
        self.values.last().expect("nonempty path")
    }

    pub fn endpoint_weight(&self) -> Option<Weight> {
        self.endpoint().iter().map(|x| x.is_integer().then(|| x.to_integer())).collect::<Option<_>>().map(Weight)
    }

    /// `(t, π_p(t))` at every breakpoint.
    pub fn profile(&self, p: usize) -> Vec<(Q, Q)> {
        self.times.iter().zip(&self.values).map(|(t, v)| (*t, v[p])).collect()
    }

    /// `m_p = min_t π_p(t)`, attained at a breakpoint.
    pub fn min_value(&self, p: usize) -> Q {
        self.values.iter().map(|v| v[p]).min().expect("nonempty path")
    }

    /// Merges adjacent segments of equal velocity.
    pub fn canonical(self) -> Path {
        let mut times = vec![self.times[0]];
        let mut values = vec![self.values[0].clone()];
        for i in 1..self.times.len() {
            if self.times[i] == *times.last().unwrap() {
                continue;
            }
            let len = times.len();
            if len >= 2 {
                let (t0, t1, t2) = (times[len - 2], times[len - 1], self.times[i]);
                let (v0, v1, v2) = (&values[len - 2], &values[len - 1], &self.values[i]);
                let same = (0..v0.len()).all(|q| (v1[q] - v0[q]) * (t2 - t1) == (v2[q] - v1[q]) * (t1 - t0));
                if same {
                    times[len - 1] = t2;
                    values[len - 1] = v2.clone();
                    continue;
                }
            }
            times.push(self.times[i]);
            values.push(self.values[i].clone());
        }
        Path { times, values }
    }

    /// Inserts breakpoints where the `p` profile crosses the per-segment
    /// levels.
    fn refine(&self, p: usize, levels: impl Fn(usize) -> Vec<Q>) -> (Vec<Q>, Vec<Vec<Q>>) {
        let mut times = vec![self.times[0]];
        let mut values = vec![self.values[0].clone()];
        for i in 0..self.times.len() - 1 {
            let (t0, t1) = (self.times[i], self.times[i + 1]);
            let (a, b) = (&self.values[i], &self.values[i + 1]);
            for c in crossings(a[p], b[p], &levels(i)) {
                times.push(t0 + (t1 - t0) * c);
                values.push(lerp(a, b, c));
            }
            times.push(t1);
            values.push(b.clone());
        }
        (times, values)
    }

    fn shifted(times: Vec<Q>, mut values: Vec<Vec<Q>>, coef: &[Q], col: &[i64], sign: i64) -> Path {
        for (v, &c) in values.iter_mut().zip(coef) {
            for (x, &a) in v.iter_mut().zip(col) {
                *x += c * qi(sign * a);
            }
        }
        Path { times, values }.canonical()
    }

    /// `f_p π = π − a(t) α_p` with `a(t) = min(1, min_{s ≥ t} π_p(s) − m_p)`;
    /// `None` when `π_p(1) − m_p < 1`.
    pub fn f(&self, d: &DynkinDiagram, p: usize) -> Option<Path> {
        let m = self.min_value(p);
        let one = Q::one();
        if self.endpoint()[p] - m < one {
            return None;
        }
        let r = self.times.len();
        let mut suffix: Vec<Q> = self.values.iter().map(|v| v[p]).collect();
        for i in (0..r - 1).rev() {
            suffix[i] = suffix[i].min(suffix[i + 1]);
        }
        let (times, values) = self.refine(p, |i| vec![suffix[i + 1], m + one]);
        let mut g: Vec<Q> = values.iter().map(|v| v[p]).collect();
        for i in (0..g.len() - 1).rev() {
            g[i] = g[i].min(g[i + 1]);
        }
        let a: Vec<Q> = g.into_iter().map(|x| (x - m).min(one)).collect();
        let col: Vec<i64> = (0..d.rank()).map(|q| d.entry(q, p)).collect();
        Some(Self::shifted(times, values, &a, &col, -1))
    }

    /// `e_p π = π + b(t) α_p` with `b(t) = max(0, 1 − (min_{s ≤ t} π_p(s) − m_p))`;
    /// `None` when `m_p > −1`.
    pub fn e(&self, d: &DynkinDiagram, p: usize) -> Option<Path> {
        let m = self.min_value(p);
        let one = Q::one();
        if m > -one {
            return None;
        }
        let mut prefix: Vec<Q> = self.values.iter().map(|v| v[p]).collect();
        for i in 1..prefix.len() {
            prefix[i] = prefix[i].min(prefix[i - 1]);
        }
        let (times, values) = self.refine(p, |i| vec![prefix[i], m + one]);
        let mut g: Vec<Q> = values.iter().map(|v| v[p]).collect();
        for i in 1..g.len() {
            g[i] = g[i].min(g[i - 1]);
        }
        let b: Vec<Q> = g.into_iter().map(|x| (one + m - x).max(Q::zero())).collect();
        let col: Vec<i64> = (0..d.rank()).map(|q| d.entry(q, p)).collect();
        Some(Self::shifted(times, values, &b, &col, 1))
    }

    /// `μ + π(t)` dominant for all `t`; checked at breakpoints.
    pub fn is_dominant_shifted(&self, mu: &Weight) -> bool {
        self.values.iter().all(|v| v.iter().zip(&mu.0).all(|(x, &m)| *x + qi(m) >= Q::zero()))
    }

    /// `e_p π = 0` for every `p` in `nodes`.
    pub fn is_highest_on(&self, nodes: &[usize]) -> bool {
        nodes.iter().all(|&p| self.min_value(p) > -Q::one())
    }
}

/// Path generated from `π_shape` by the lowering word `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsPath {
    pub path: Path,
    pub shape: Weight,
    pub word: Vec<usize>,
    /// Number of occurrences of each node in `word`.
    pub letters: Vec<i64>,
}

impl LsPath {
    /// Replays `word` from the straight path.
    pub fn replay(d: &DynkinDiagram, shape: &Weight, word: &[usize]) -> Option<Path> {
        word.iter().try_fold(Path::straight(shape), |pi, &p| pi.f(d, p))
    }

    pub fn endpoint_weight(&self) -> Weight {
        self.path.endpoint_weight().expect("LS path endpoints are integral")
    }
}

#[derive(Clone, Debug)]
pub struct Crystal {
    pub nodes: Vec<LsPath>,
    /// `(source, target, node)`.
    pub edges: Vec<(usize, usize, usize)>,
    pub expanded: usize,
}

impl Crystal {
    /// Graphviz rendering, nodes named by their lowering words.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let word = if node.word.is_empty() {
                "hw".to_string()
            } else {
                node.word.iter().map(|p| format!("f{}", p + 1)).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(out, "  n{i} [label=\"{word}\"];");
        }
        for (s, t, p) in &self.edges {
            let _ = writeln!(out, "  n{s} -> n{t} [label=\"{}\"];", p + 1);
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first generation of the paths of shape `shape`, deduplicated by
/// canonical path. With `cap`, letters of node `p` never exceed `cap[p]`.
/// At most `budget` paths are created.
pub fn generate_crystal(
    d: &DynkinDiagram,
    shape: &Weight,
    cap: Option<&[i64]>,
    budget: usize,
) -> Result<Crystal> {
    let n = d.rank();
    if shape.rank() != n {
        return Err(Error::DimensionMismatch { expected: n, got: shape.rank() });
    }
    let root = LsPath { path: Path::straight(shape), shape: shape.clone(), word: vec![], letters: vec![0; n] };
    let mut nodes = vec![root];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut expanded = 0usize;
    while !frontier.is_empty() {
        expanded += frontier.len();
        let children: Vec<(usize, usize, Path)> = frontier
            .par_iter()
            .flat_map_iter(|&i| {
                let node = &nodes[i];
                (0..n)
                    .filter(move |&p| cap.is_none_or(|c| node.letters[p] < c[p]))
                    .filter_map(move |p| node.path.f(d, p).map(|c| (i, p, c)))
            })
            .collect();
        let mut seen: HashMap<Path, usize> = HashMap::new();
        let mut next = Vec::new();
        for (parent, p, path) in children {
            let idx = match seen.get(&path) {
                Some(&idx) => idx,
                None => {
                    if nodes.len() >= budget {
                        return Err(Error::BudgetExceeded { limit: budget });
                    }
                    let mut word = nodes[parent].word.clone();
                    word.push(p);
                    let mut letters = nodes[parent].letters.clone();
                    letters[p] += 1;
                    nodes.push(LsPath { path: path.clone(), shape: shape.clone(), word, letters });
                    seen.insert(path, nodes.len() - 1);
                    next.push(nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            edges.push((parent, idx, p));
        }
        frontier = next;
    }
    Ok(Crystal { nodes, edges, expanded })
}

/// Root coordinates of `λ − β` as nonnegative integers; `Ok(None)` when
/// some coordinate is negative.
fn root_gap(d: &DynkinDiagram, l: &Weight, b: &Weight) -> Result<Option<Vec<i64>>> {
    let x = lattice::weight_to_root_basis(d, &l.sub(b))?;
    let ints = x.to_integers().ok_or_else(|| {
        Error::NotInRootCone(format!("λ − β has non-integral root coordinates {:?}", x.0))
    })?;
    Ok(ints.iter().all(|&c| c >= 0).then_some(ints))
}

/// LS paths of shape `λ` ending at `β`.
pub fn generate_paths_to(d: &DynkinDiagram, l: &Weight, b: &Weight, budget: usize) -> Result<Vec<LsPath>> {
    Ok(paths_to(d, l, b, budget)?.0)
}

fn paths_to(d: &DynkinDiagram, l: &Weight, b: &Weight, budget: usize) -> Result<(Vec<LsPath>, usize)> {
    if !l.is_dominant() {
        return Err(Error::NotDominant);
    }
    let Some(target) = root_gap(d, l, b)? else { return Ok((vec![], 0)) };
    let crystal = generate_crystal(d, l, Some(&target), budget)?;
    let hits = crystal.nodes.into_iter().filter(|p| p.letters == target).collect();
    Ok((hits, crystal.expanded))
}

/// A count with the number of paths expanded to obtain it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counted {
    pub count: i64,
    pub expanded: usize,
}

/// Multiplicity of `L(ν)` in `L(λ) ⊗ L(μ)`: paths of shape `λ` ending at
/// `ν − μ` with `μ + π` dominant.
pub fn tensor_count(d: &DynkinDiagram, l: &Weight, m: &Weight, nu: &Weight, budget: usize) -> Result<Counted> {
    if !m.is_dominant() || !nu.is_dominant() {
        return Err(Error::NotDominant);
    }
    let (paths, expanded) = paths_to(d, l, &nu.sub(m), budget)?;
    let count = paths.iter().filter(|p| p.path.is_dominant_shifted(m)).count() as i64;
    Ok(Counted { count, expanded })
}

/// Full decomposition of `L(λ) ⊗ L(μ)` from the whole crystal of `L(λ)`;
/// terminates only for finite type (the budget guards the rest).
pub fn tensor_decompose_paths(
    d: &DynkinDiagram,
    l: &Weight,
    m: &Weight,
    budget: usize,
) -> Result<BTreeMap<Weight, i64>> {
    let crystal = generate_crystal(d, l, None, budget)?;
    let mut out = BTreeMap::new();
    for p in crystal.nodes.iter().filter(|p| p.path.is_dominant_shifted(m)) {
        *out.entry(m.add(&p.endpoint_weight())).or_insert(0) += 1;
    }
    Ok(out)
}

/// Weight multiplicities of `L(λ)` read off the crystal.
pub fn character_from_paths(d: &DynkinDiagram, l: &Weight, budget: usize) -> Result<BTreeMap<Weight, i64>> {
    let crystal = generate_crystal(d, l, None, budget)?;
    let mut out = BTreeMap::new();
    for p in &crystal.nodes {
        *out.entry(p.endpoint_weight()).or_insert(0) += 1;
    }
    Ok(out)
}

/// `b^λ_β(k)`: paths of shape `λ^(k)` ending at `β^(k)` killed by every
/// `e_p` on the chain.
pub fn branching_count(zk: &ZkDiagram, l: &TwoSidedWeight, b: &TwoSidedWeight, budget: usize) -> Result<Counted> {
    let lw = hweights::specialize(&zk.pair, l, zk.k)?;
    let bw = hweights::specialize(&zk.pair, b, zk.k)?;
    let (paths, expanded) = paths_to(&zk.diagram, &lw, &bw, budget)?;
    let chain = zk.chain();
    let count = paths.iter().filter(|p| p.path.is_highest_on(&chain)).count() as i64;
    Ok(Counted { count, expanded })
}

/// Tensor multiplicity for two-sided weights on `Z_k`.
pub fn tensor_count_h2(
    zk: &ZkDiagram,
    l: &TwoSidedWeight,
    m: &TwoSidedWeight,
    nu: &TwoSidedWeight,
    budget: usize,
) -> Result<Counted> {
    let sp = |w| hweights::specialize(&zk.pair, w, zk.k);
    tensor_count(&zk.diagram, &sp(l)?, &sp(m)?, &sp(nu)?, budget)
}

/// `φ_{kk'}`: reinterprets the coroot values on `X₁(s) ∪ X₂(s)` of `Z_k` as
/// values on `Z_{k'}`. The path must vanish on `Y_k(s,s)`.
pub fn phi_transport(pi: &Path, from: &ZkDiagram, to: &ZkDiagram, s: usize) -> Result<Path> {
    if from.pair != to.pair {
        return Err(Error::Invalid("transport between different pairs".into()));
    }
    if from.k <= 2 * s || to.k <= 2 * s {
        return Err(Error::Invalid(format!("need k, k' > 2s = {}", 2 * s)));
    }
    if pi.rank() != from.n() {
        return Err(Error::DimensionMismatch { expected: from.n(), got: pi.rank() });
    }
    let middle = from.middle(s, s);
    if pi.values.iter().any(|v| middle.iter().any(|&p| !v[p].is_zero())) {
        return Err(Error::NotSupported);
    }
    let mut map: Vec<(usize, usize)> = from.x1_part(s).into_iter().map(|p| (p, p)).collect();
    for p in from.x2_part(s) {
        map.push((p, to.node_of_ibar(from.numbering_ibar(p))));
    }
    let values = pi
        .values
        .iter()
        .map(|v| {
            let mut w = vec![Q::zero(); to.n()];
            for &(a, b) in &map {
                w[b] = v[a];
            }
            w
        })
        .collect();
    Ok(Path { times: pi.times.clone(), values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> DynkinDiagram {
        DynkinDiagram::standard('A', n).unwrap()
    }

    #[test]
    fn sl2_string() {
        let d = a(1);
        let pi = Path::straight(&Weight(vec![1]));
        let f1 = pi.f(&d, 0).unwrap();
        assert_eq!(f1.endpoint(), &[qi(-1)]);
        assert!(f1.f(&d, 0).is_none());
        assert_eq!(f1.e(&d, 0).unwrap(), pi);
        assert!(pi.e(&d, 0).is_none());
        let two = Path::straight(&Weight(vec![2]));
        let f = two.f(&d, 0).unwrap();
        assert_eq!(f.profile(0), vec![(qi(0), qi(0)), (Q::new(1, 2), qi(-1)), (qi(1), qi(0))]);
        assert_eq!(f1.profile(0), vec![(qi(0), qi(0)), (qi(1), qi(-1))]);
    }

    #[test]
    fn canonical_merges_only_equal_velocity() {
        let t = vec![qi(0), Q::new(1, 2), qi(1)];
        let merged = Path::from_breakpoints(t.clone(), vec![vec![qi(0)], vec![qi(1)], vec![qi(2)]]).unwrap();
        assert_eq!(merged, Path::straight(&Weight(vec![2])));
        let kink = Path::from_breakpoints(t, vec![vec![qi(0)], vec![qi(1)], vec![qi(3)]]).unwrap();
        assert_eq!(kink.times().len(), 3);
    }

    #[test]
    fn adjoint_a2_zero_weight() {
        let d = a(2);
        assert_eq!(generate_paths_to(&d, &Weight(vec![1, 1]), &Weight(vec![0, 0]), 1000).unwrap().len(), 2);
        assert_eq!(generate_paths_to(&a(1), &Weight(vec![2]), &Weight(vec![0]), 1000).unwrap().len(), 1);
    }

    #[test]
    fn clebsch_gordan() {
        let d = a(1);
        let w = Weight(vec![1]);
        assert_eq!(tensor_count(&d, &w, &w, &Weight(vec![2]), 100).unwrap().count, 1);
        assert_eq!(tensor_count(&d, &w, &w, &Weight(vec![0]), 100).unwrap().count, 1);
    }

    #[test]
    fn non_integral_gap_is_reported() {
        let d = a(1);
        assert!(matches!(
            generate_paths_to(&d, &Weight(vec![1]), &Weight(vec![0]), 100),
            Err(Error::NotInRootCone(_))
        ));
    }

    #[test]
    fn dot_export_lists_edges() {
        let c = generate_crystal(&a(2), &Weight(vec![1, 0]), None, 100).unwrap();
        assert_eq!(c.nodes.len(), 3);
        let dot = c.to_dot();
        assert!(dot.contains("n0 -> n1 [label=\"1\"]"));
    }
}
