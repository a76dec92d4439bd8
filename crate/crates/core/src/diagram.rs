//! Dynkin diagrams given by symmetrizable generalized Cartan matrices,
//! marked diagrams, chain attachment and the composite diagrams `Z_k`.
//!
//! Convention: `cartan[p][q] = α_q(α̌_p)`. Weights are written in the
//! fundamental-weight basis, so a weight `w` has root coordinates `x` with
//! `C x = w`, and `(α_p|α_q) = d_p C[p][q]` for the symmetrizer `d`.

use std::collections::VecDeque;
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinDiagram {
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeClass {
    Finite,
    Affine,
    Indefinite,
}

/// Checks the generalized Cartan matrix axioms and symmetrizability.
pub fn validate_gcm(matrix: &[Vec<i64>]) -> Result<DynkinDiagram> {
    let n = matrix.len();
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare { rows: n, row, len: r.len() });
        }
    }
    for p in 0..n {
        if matrix[p][p] != 2 {
            return Err(Error::NotGcm(format!("diagonal entry {} is {}", p + 1, matrix[p][p])));
        }
        for q in 0..n {
            if p == q {
                continue;
            }
            if matrix[p][q] > 0 {
                return Err(Error::NotGcm(format!("positive entry at ({}, {})", p + 1, q + 1)));
            }
            if (matrix[p][q] == 0) != (matrix[q][p] == 0) {
                return Err(Error::NotGcm(format!("asymmetric zero at ({}, {})", p + 1, q + 1)));
            }
        }
    }
    let symmetrizer = symmetrize(matrix)?;
    Ok(DynkinDiagram { cartan: matrix.to_vec(), symmetrizer, labels: None })
}

/// Spanning-tree propagation of `d_q = d_p C[p][q] / C[q][p]`, verified on
/// every edge, then scaled to the minimal positive integer vector.
fn symmetrize(c: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = c.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Q::from_integer(1));
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            let dp = d[p].unwrap();
            for qn in 0..n {
                if qn == p || c[p][qn] == 0 {
                    continue;
                }
                let want = dp * Q::new(c[p][qn], c[qn][p]);
                match d[qn] {
                    None => {
                        d[qn] = Some(want);
                        queue.push_back(qn);
                    }
                    Some(x) if x != want => return Err(Error::NotSymmetrizable),
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(Option::unwrap).collect();
    let l = d.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * Q::from_integer(l)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x)).max(1);
    Ok(ints.into_iter().map(|x| x / g).collect())
}

impl DynkinDiagram {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        validate_gcm(&matrix)
    }

    pub fn empty() -> Self {
        DynkinDiagram { cartan: vec![], symmetrizer: vec![], labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Standard finite diagrams. Node 1 of `B_n` is short, node 1 of `C_n`
    /// is long, nodes 1 and 2 of `D_n` form the fork, `E_n` is the chain
    /// 1-2-3-5-6-…-n with node 4 hung on node 3, `F4` and `G2` follow
    /// Bourbaki (short nodes last in `F4`, node 1 short in `G2`).
    pub fn standard(family: char, n: usize) -> Result<Self> {
        let bad = || Error::Invalid(format!("no standard diagram {family}{n}"));
        let mut c = vec![vec![0i64; n]; n];
        for (p, row) in c.iter_mut().enumerate() {
            row[p] = 2;
        }
        let edge = |c: &mut Vec<Vec<i64>>, p: usize, q: usize, cpq: i64, cqp: i64| {
            c[p][q] = cpq;
            c[q][p] = cqp;
        };
        match family.to_ascii_uppercase() {
            'A' if n >= 1 => (0..n.saturating_sub(1)).for_each(|p| edge(&mut c, p, p + 1, -1, -1)),
            'B' if n >= 2 => {
                edge(&mut c, 0, 1, -2, -1);
                (1..n - 1).for_each(|p| edge(&mut c, p, p + 1, -1, -1));
            }
            'C' if n >= 2 => {
                edge(&mut c, 0, 1, -1, -2);
                (1..n - 1).for_each(|p| edge(&mut c, p, p + 1, -1, -1));
            }
            'D' if n >= 3 => {
                edge(&mut c, 0, 2, -1, -1);
                edge(&mut c, 1, 2, -1, -1);
                (2..n - 1).for_each(|p| edge(&mut c, p, p + 1, -1, -1));
            }
            'E' if n >= 4 => {
                edge(&mut c, 0, 1, -1, -1);
                edge(&mut c, 1, 2, -1, -1);
                edge(&mut c, 2, 3, -1, -1);
                if n >= 5 {
                    edge(&mut c, 2, 4, -1, -1);
                    (4..n - 1).for_each(|p| edge(&mut c, p, p + 1, -1, -1));
                }
            }
            'F' if n == 4 => {
                edge(&mut c, 0, 1, -1, -1);
                edge(&mut c, 1, 2, -1, -2);
                edge(&mut c, 2, 3, -1, -1);
            }
            'G' if n == 2 => edge(&mut c, 0, 1, -3, -1),
            _ => return Err(bad()),
        }
        validate_gcm(&c)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn entry(&self, p: usize, q: usize) -> i64 {
        self.cartan[p][q]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `(α_p|α_q)` for the normalized symmetrizer.
    pub fn form(&self, p: usize, q: usize) -> i64 {
        self.symmetrizer[p] * self.cartan[p][q]
    }

    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|p| (0..self.rank()).map(|q| self.form(p, q)).collect()).collect()
    }

    pub fn det(&self) -> i64 {
        linalg::det(&self.cartan)
    }

    pub fn neighbors(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&q| q != p && self.cartan[p][q] != 0)
    }

    pub fn is_indecomposable(&self) -> bool {
        let n = self.rank();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(p) = stack.pop() {
            for q in self.neighbors(p) {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Principal subdiagram on the given nodes, in the given order.
    pub fn subdiagram(&self, nodes: &[usize]) -> DynkinDiagram {
        let cartan: Vec<Vec<i64>> =
            nodes.iter().map(|&p| nodes.iter().map(|&q| self.cartan[p][q]).collect()).collect();
        let g = nodes.iter().fold(0i64, |acc, &p| acc.gcd(&self.symmetrizer[p])).max(1);
        DynkinDiagram {
            cartan,
            symmetrizer: nodes.iter().map(|&p| self.symmetrizer[p] / g).collect(),
            labels: self.labels.as_ref().map(|l| nodes.iter().map(|&p| l[p].clone()).collect()),
        }
    }

    /// Classification by definiteness of `D·C`.
    pub fn classify(&self) -> Result<TypeClass> {
        if !self.is_indecomposable() {
            return Err(Error::Decomposable);
        }
        let s = self.symmetrized();
        if linalg::leading_minors(&s).iter().all(|&m| m > 0) {
            return Ok(TypeClass::Finite);
        }
        if linalg::det(&s) == 0 {
            let n = self.rank();
            let all_finite = (0..n).all(|drop| {
                let keep: Vec<usize> = (0..n).filter(|&p| p != drop).collect();
                let sub: Vec<Vec<i64>> =
                    keep.iter().map(|&p| keep.iter().map(|&q| s[p][q]).collect()).collect();
                linalg::leading_minors(&sub).iter().all(|&m| m > 0)
            });
            if all_finite {
                return Ok(TypeClass::Affine);
            }
        }
        Ok(TypeClass::Indefinite)
    }

    /// Block-diagonal sum with a chain edge joining `p` in `self` to `q` in
    /// `other` (entries −1 both ways).
    fn join(&self, other: &DynkinDiagram, link: Option<(usize, usize)>) -> DynkinDiagram {
        let (a, b) = (self.rank(), other.rank());
        let mut c = vec![vec![0i64; a + b]; a + b];
        for p in 0..a {
            c[p][..a].copy_from_slice(&self.cartan[p]);
        }
        for p in 0..b {
            c[a + p][a..].copy_from_slice(&other.cartan[p]);
        }
        if let Some((p, q)) = link {
            c[p][a + q] = -1;
            c[a + q][p] = -1;
        }
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            _ => {
                let name = |l: &Option<Vec<String>>, i: usize, pre: &str| {
                    l.as_ref().map(|v| v[i].clone()).unwrap_or_else(|| format!("{pre}{}", i + 1))
                };
                Some(
                    (0..a)
                        .map(|i| name(&self.labels, i, "x"))
                        .chain((0..b).map(|i| name(&other.labels, i, "y")))
                        .collect(),
                )
            }
        };
        validate_gcm(&c)
            .map(|mut d| {
                d.labels = labels;
                d
            })
            .expect("joining symmetrizable diagrams along a simple edge stays symmetrizable")
    }

    fn chain(m: usize, prefix: &str) -> DynkinDiagram {
        let mut d = DynkinDiagram::standard('A', m.max(1)).expect("chain");
        if m == 0 {
            return DynkinDiagram::empty();
        }
        d.labels = Some((1..=m).map(|i| format!("{prefix}{i}")).collect());
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedDiagram {
    pub diagram: DynkinDiagram,
    pub mark: usize,
}

impl MarkedDiagram {
    pub fn new(diagram: DynkinDiagram, mark: usize) -> Result<Self> {
        if mark >= diagram.rank() {
            return Err(Error::BadNode { node: mark + 1, rank: diagram.rank() });
        }
        Ok(MarkedDiagram { diagram, mark })
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    /// Node indices in ε order: unmarked nodes by index, then the mark.
    pub fn epsilon_order(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&p| p != self.mark).chain(std::iter::once(self.mark)).collect()
    }

    /// ε(p) in 1..=d.
    pub fn epsilon(&self, p: usize) -> usize {
        if p == self.mark {
            self.rank()
        } else if p < self.mark {
            p + 1
        } else {
            p
        }
    }

    /// The diagram with the mark and its edges removed.
    pub fn without_mark(&self) -> DynkinDiagram {
        let keep: Vec<usize> = (0..self.rank()).filter(|&p| p != self.mark).collect();
        self.diagram.subdiagram(&keep)
    }

    /// `X(m)` for `m ≥ 0`: nodes relisted in ε order, then a chain of `m`
    /// nodes; the new mark is the far end of the chain. Node `j` of the
    /// result (0-based) carries `j(p) = j + 1`.
    pub fn attach_chain(&self, m: usize) -> MarkedDiagram {
        let ordered = self.diagram.subdiagram(&self.epsilon_order());
        let d = self.rank();
        if m == 0 {
            return MarkedDiagram { diagram: ordered, mark: d - 1 };
        }
        let diagram = ordered.join(&DynkinDiagram::chain(m, "c"), Some((d - 1, 0)));
        MarkedDiagram { diagram, mark: d + m - 1 }
    }

    /// `det X(m)` for `m ≥ −1`, with `det X(−1)` the determinant of the
    /// diagram without its mark (1 when that is empty).
    pub fn det_extended(&self, m: i64) -> i64 {
        match m {
            m if m < -1 => panic!("chain length {m} below -1"),
            -1 => self.without_mark().det(),
            m => self.attach_chain(m as usize).diagram.det(),
        }
    }

    pub fn det(&self) -> i64 {
        self.diagram.det()
    }

    /// `Δ = det X − det X(−1)`.
    pub fn delta(&self) -> i64 {
        self.det() - self.det_extended(-1)
    }

    pub fn is_extensible(&self) -> bool {
        let (det, delta) = (self.det(), self.delta());
        det != 0 && delta != 0 && det.gcd(&delta) == 1
    }

    /// `a_1..a_count`, checked against a residue scan and across two chain
    /// lengths.
    pub fn a_sequence(&self, count: usize) -> Result<Vec<i64>> {
        if !self.is_extensible() {
            return Err(Error::NotExtensible);
        }
        let d = self.rank();
        let base = count.saturating_sub(d);
        let ms: Vec<usize> =
            (base..base + 3).filter(|&m| self.det_extended(m as i64) != 0).take(2).collect();
        if ms.len() < 2 {
            return Err(Error::NoAdmissibleM);
        }
        let seqs: Vec<Vec<i64>> =
            ms.iter().map(|&m| self.a_sequence_at(m, count)).collect::<Result<_>>()?;
        if seqs[0] != seqs[1] {
            return Err(Error::Verification("a-sequence differs between chain lengths".into()));
        }
        Ok(seqs.into_iter().next().unwrap())
    }

    /// Reads `a_{j(p)} = det X(m) · (C⁻¹)[end][p]` on `X(m)` and verifies
    /// that `a` is the residue for which `−Δω_p − a ω̄` lies in the root
    /// lattice.
    fn a_sequence_at(&self, m: usize, count: usize) -> Result<Vec<i64>> {
        let xm = self.attach_chain(m);
        let dm = xm.det();
        let inv = linalg::inverse(xm.diagram.cartan()).ok_or(Error::SingularCartan)?;
        let end = xm.mark;
        let delta = Q::from_integer(self.delta());
        let mut out = Vec::with_capacity(count);
        for p in 0..count.min(xm.rank()) {
            let a = Q::from_integer(dm) * inv[end][p];
            if !a.is_integer() {
                return Err(Error::Verification("non-integral a-sequence entry".into()));
            }
            let a = a.to_integer();
            let modulus = dm.abs();
            let in_lattice = |r: i64| {
                (0..xm.rank()).all(|row| {
                    (-delta * inv[row][p] - Q::from_integer(r) * inv[row][end]).is_integer()
                })
            };
            let hits: Vec<i64> = (0..modulus).filter(|&r| in_lattice(r)).collect();
            if hits != [a.rem_euclid(modulus)] {
                return Err(Error::Verification(format!("residue scan disagrees at node {}", p + 1)));
            }
            out.push(a);
        }
        Ok(out)
    }
}

/// Two marked diagrams with cached invariants and a lazily grown a-sequence
/// table per side.
#[derive(Debug, Serialize, Deserialize)]
pub struct MarkedPair {
    pub x1: MarkedDiagram,
    pub x2: MarkedDiagram,
    pub d1: usize,
    pub d2: usize,
    pub delta1: i64,
    pub delta2: i64,
    pub det1: i64,
    pub det2: i64,
    #[serde(skip)]
    a_cache: Arc<RwLock<[Vec<i64>; 2]>>,
}

impl Clone for MarkedPair {
    fn clone(&self) -> Self {
        MarkedPair { a_cache: Arc::clone(&self.a_cache), ..self.shallow() }
    }
}

impl PartialEq for MarkedPair {
    fn eq(&self, other: &Self) -> bool {
        self.x1 == other.x1 && self.x2 == other.x2
    }
}

impl Eq for MarkedPair {}

impl MarkedPair {
    pub fn new(x1: MarkedDiagram, x2: MarkedDiagram) -> Self {
        MarkedPair {
            d1: x1.rank(),
            d2: x2.rank(),
            delta1: x1.delta(),
            delta2: x2.delta(),
            det1: x1.det(),
            det2: x2.det(),
            x1,
            x2,
            a_cache: Arc::default(),
        }
    }

    fn shallow(&self) -> Self {
        MarkedPair {
            x1: self.x1.clone(),
            x2: self.x2.clone(),
            d1: self.d1,
            d2: self.d2,
            delta1: self.delta1,
            delta2: self.delta2,
            det1: self.det1,
            det2: self.det2,
            a_cache: Arc::default(),
        }
    }

    pub fn side(&self, which: usize) -> &MarkedDiagram {
        if which == 0 {
            &self.x1
        } else {
            &self.x2
        }
    }

    pub fn is_extensible_pair(&self) -> bool {
        self.x1.is_extensible() && self.x2.is_extensible() && self.delta1.gcd(&self.delta2) == 1
    }

    pub fn require_extensible(&self) -> Result<()> {
        if self.is_extensible_pair() {
            Ok(())
        } else {
            Err(Error::NotExtensiblePair)
        }
    }

    /// `det Z_k = (k−1)Δ₁Δ₂ + det X₁·Δ₂ + det X₂·Δ₁`.
    pub fn det_zk_formula(&self, k: i64) -> i64 {
        (k - 1) * self.delta1 * self.delta2 + self.det1 * self.delta2 + self.det2 * self.delta1
    }

    /// The unique `k ≥ 1` with `det Z_k = 0`, if any.
    pub fn singular_k(&self) -> Option<i64> {
        let slope = self.delta1 * self.delta2;
        let at1 = self.det_zk_formula(1);
        if slope == 0 {
            return None;
        }
        let k = 1 - at1 / slope;
        (k >= 1 && at1 % slope == 0).then_some(k)
    }

    /// `a_1..a_count` of side 0 or 1, served from the cache when possible.
    pub fn a_seq(&self, which: usize, count: usize) -> Result<Vec<i64>> {
        {
            let cache = self.a_cache.read().expect("a-sequence cache poisoned");
            if cache[which].len() >= count {
                return Ok(cache[which][..count].to_vec());
            }
        }
        let want = count.max(2 * self.side(which).rank() + 8);
        let seq = self.side(which).a_sequence(want)?;
        let mut cache = self.a_cache.write().expect("a-sequence cache poisoned");
        if cache[which].len() < seq.len() {
            cache[which] = seq.clone();
        }
        Ok(seq[..count].to_vec())
    }

    pub fn build_zk(&self, k: usize) -> Result<ZkDiagram> {
        ZkDiagram::new(self.clone(), k)
    }
}

/// `Z_k(X₁, X₂)`. Nodes are stored so that node index `j` has `i = j + 1`
/// and `ī = N − j`: X₁ in ε₁ order, the chain, X₂ in reverse ε₂ order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZkDiagram {
    pub pair: MarkedPair,
    pub k: usize,
    pub diagram: DynkinDiagram,
}

impl ZkDiagram {
    pub fn new(pair: MarkedPair, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("chain length k must be at least 1".into()));
        }
        let x1 = pair.x1.attach_chain(k);
        let mut rev = pair.x2.epsilon_order();
        rev.reverse();
        let x2 = pair.x2.diagram.subdiagram(&rev);
        let diagram = x1.diagram.join(&x2, Some((x1.mark, 0)));
        Ok(ZkDiagram { pair, k, diagram })
    }

    pub fn n(&self) -> usize {
        self.pair.d1 + self.pair.d2 + self.k
    }

    pub fn numbering_i(&self, node: usize) -> usize {
        node + 1
    }

    pub fn numbering_ibar(&self, node: usize) -> usize {
        self.n() - node
    }

    pub fn node_of_i(&self, i: usize) -> usize {
        i - 1
    }

    pub fn node_of_ibar(&self, ib: usize) -> usize {
        self.n() - ib
    }

    pub fn xi1(&self) -> usize {
        self.pair.d1 - 1
    }

    pub fn xi2(&self) -> usize {
        self.pair.d1 + self.k
    }

    /// `{ξ₁} ∪ chain ∪ {ξ₂}`, ordered by `i`.
    pub fn bridge(&self) -> Vec<usize> {
        (self.xi1()..=self.xi2()).collect()
    }

    /// Chain nodes, `Y_k(0,0)`.
    pub fn chain(&self) -> Vec<usize> {
        self.middle(0, 0)
    }

    /// `X₁` with the first `s` chain nodes.
    pub fn x1_part(&self, s: usize) -> Vec<usize> {
        (0..(self.pair.d1 + s).min(self.n())).collect()
    }

    /// `X₂` with the last `s` chain nodes.
    pub fn x2_part(&self, s: usize) -> Vec<usize> {
        let n = self.n();
        (n.saturating_sub(self.pair.d2 + s)..n).collect()
    }

    /// `Y_k(l, r)`: chain nodes after the first `l` and before the last `r`.
    pub fn middle(&self, l: usize, r: usize) -> Vec<usize> {
        let lo = self.pair.d1 + l;
        let hi = (self.pair.d1 + self.k).saturating_sub(r);
        (lo..hi.max(lo)).collect()
    }

    /// Nodes with `i > l` and `ī > r` in the absolute numbering.
    pub fn band(&self, l: usize, r: usize) -> Vec<usize> {
        (0..self.n()).filter(|&p| self.numbering_i(p) > l && self.numbering_ibar(p) > r).collect()
    }

    pub fn det(&self) -> i64 {
        self.diagram.det()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> MarkedDiagram {
        MarkedDiagram::new(DynkinDiagram::standard('A', 1).unwrap(), 0).unwrap()
    }

    #[test]
    fn g2_symmetrizer_solves_invariant() {
        let d = validate_gcm(&[vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(d.symmetrizer(), &[3, 1]);
        let std = DynkinDiagram::standard('G', 2).unwrap();
        assert_eq!(std.symmetrizer(), &[1, 3]);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(validate_gcm(&[vec![2, 1], vec![1, 2]]), Err(Error::NotGcm(_))));
        assert!(matches!(validate_gcm(&[vec![2, 0], vec![-1, 2]]), Err(Error::NotGcm(_))));
        assert!(matches!(validate_gcm(&[vec![3]]), Err(Error::NotGcm(_))));
        let cyc = vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]];
        assert_eq!(validate_gcm(&cyc), Err(Error::NotSymmetrizable));
    }

    #[test]
    fn standard_determinants() {
        for n in 1..=12 {
            assert_eq!(DynkinDiagram::standard('A', n).unwrap().det(), n as i64 + 1);
        }
        for n in 3..=10 {
            assert_eq!(DynkinDiagram::standard('B', n).unwrap().det(), 2);
            assert_eq!(DynkinDiagram::standard('C', n).unwrap().det(), 2);
            assert_eq!(DynkinDiagram::standard('D', n).unwrap().det(), 4);
        }
        for n in 6..=10 {
            assert_eq!(DynkinDiagram::standard('E', n).unwrap().det(), 9 - n as i64);
        }
        assert_eq!(DynkinDiagram::standard('F', 4).unwrap().det(), 1);
        assert_eq!(DynkinDiagram::standard('G', 2).unwrap().det(), 1);
    }

    #[test]
    fn chain_attachment() {
        let a3 = a1().attach_chain(2);
        assert_eq!(a3.diagram.cartan(), DynkinDiagram::standard('A', 3).unwrap().cartan());
        assert_eq!(a3.mark, 2);
        let b3 = MarkedDiagram::new(DynkinDiagram::standard('B', 3).unwrap(), 2).unwrap();
        for n in 3..8 {
            let bn = b3.attach_chain(n - 3);
            assert_eq!(bn.diagram.cartan(), DynkinDiagram::standard('B', n).unwrap().cartan());
        }
        assert_eq!(a1().det_extended(-1), 1);
        assert_eq!(a1().delta(), 1);
        assert_eq!(b3.delta(), 0);
        assert!(!b3.is_extensible());
    }

    #[test]
    fn zk_of_a1_pair_is_a_chain() {
        let pair = MarkedPair::new(a1(), a1());
        let z = pair.build_zk(3).unwrap();
        assert_eq!(z.diagram.cartan(), DynkinDiagram::standard('A', 5).unwrap().cartan());
        assert_eq!(z.bridge(), vec![0, 1, 2, 3, 4]);
        assert_eq!(z.chain(), vec![1, 2, 3]);
        assert_eq!(pair.det_zk_formula(3), 6);
    }

    #[test]
    fn classification() {
        assert_eq!(DynkinDiagram::standard('A', 5).unwrap().classify(), Ok(TypeClass::Finite));
        let aff = DynkinDiagram::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(aff.classify(), Ok(TypeClass::Affine));
        let ind = DynkinDiagram::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert_eq!(ind.classify(), Ok(TypeClass::Indefinite));
        assert_eq!(DynkinDiagram::standard('E', 9).unwrap().classify(), Ok(TypeClass::Affine));
        assert_eq!(DynkinDiagram::standard('E', 10).unwrap().classify(), Ok(TypeClass::Indefinite));
        let dec = DynkinDiagram::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(dec.classify(), Err(Error::Decomposable));
    }

    #[test]
    fn a_sequence_of_a1_is_identity() {
        assert_eq!(a1().a_sequence(6).unwrap(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn e6_pair_with_g2_is_extensible() {
        let e6 = MarkedDiagram::new(DynkinDiagram::standard('E', 6).unwrap(), 5).unwrap();
        let g2 = MarkedDiagram::new(DynkinDiagram::standard('G', 2).unwrap(), 1).unwrap();
        assert_eq!((e6.det(), e6.delta()), (3, -1));
        assert_eq!((g2.det(), g2.delta()), (1, -1));
        assert!(MarkedPair::new(e6, g2).is_extensible_pair());
    }
}
