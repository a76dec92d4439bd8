//! Two-sided weights `H₂ = H₁ × H₁`, their specializations `γ^(k)`, the
//! order `≽`, the height functional of an indefinite diagram and the finite
//! intervals `U(γ)`, `U(γ, s)`, `I(λ₁, λ₂)`.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{DynkinDiagram, MarkedPair, TypeClass};
use crate::error::{Error, Result};
use crate::lattice::{self, Weight};
use crate::linalg::{self, Q};

/// Finitely supported integer sequence `x₁, x₂, …`, stored without trailing
/// zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct HVector(Vec<i64>);

impl From<Vec<i64>> for HVector {
    fn from(v: Vec<i64>) -> Self {
        HVector::new(v)
    }
}

impl From<HVector> for Vec<i64> {
    fn from(h: HVector) -> Self {
        h.0
    }
}

impl HVector {
    pub fn new(mut v: Vec<i64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        HVector(v)
    }

    /// `ε_i`.
    pub fn unit(i: usize) -> Self {
        let mut v = vec![0; i];
        v[i - 1] = 1;
        HVector(v)
    }

    /// `x_i` for `i ≥ 1`.
    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// `ℓ(x)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    fn zip_with(&self, other: &HVector, f: impl Fn(i64, i64) -> i64) -> HVector {
        let n = self.len().max(other.len());
        HVector::new((1..=n).map(|i| f(self.get(i), other.get(i))).collect())
    }

    pub fn add(&self, other: &HVector) -> HVector {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &HVector) -> HVector {
        self.zip_with(other, |a, b| a - b)
    }

    /// `Σ i·x_i`.
    pub fn weighted_sum(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, x)| (i as i64 + 1) * x).sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoSidedWeight {
    pub left: HVector,
    pub right: HVector,
}

impl TwoSidedWeight {
    pub fn new(left: HVector, right: HVector) -> Self {
        TwoSidedWeight { left, right }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_vecs(x: Vec<i64>, y: Vec<i64>) -> Self {
        TwoSidedWeight::new(HVector::new(x), HVector::new(y))
    }

    /// `ls(γ) = max(ℓ(x), d₁)`.
    pub fn ls(&self, d1: usize) -> i64 {
        self.left.len().max(d1) as i64
    }

    /// `rs(γ) = max(ℓ(y), d₂)`.
    pub fn rs(&self, d2: usize) -> i64 {
        self.right.len().max(d2) as i64
    }

    pub fn add(&self, o: &Self) -> Self {
        TwoSidedWeight::new(self.left.add(&o.left), self.right.add(&o.right))
    }

    pub fn sub(&self, o: &Self) -> Self {
        TwoSidedWeight::new(self.left.sub(&o.left), self.right.sub(&o.right))
    }

    pub fn is_dominant(&self) -> bool {
        self.left.is_nonnegative() && self.right.is_nonnegative()
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

impl std::fmt::Display for TwoSidedWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let j = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "[{}],[{}]", j(self.left.entries()), j(self.right.entries()))
    }
}

/// `γ^(k)`: coordinate `x_{i(p)} + y_{ī(p)}` at node `p` of `Z_k`.
pub fn specialize(pair: &MarkedPair, g: &TwoSidedWeight, k: usize) -> Result<Weight> {
    let need = lattice::min_k(pair, g);
    if k < need {
        return Err(Error::SupportTooWide { need: need as i64, k: k as i64 });
    }
    let n = pair.d1 + pair.d2 + k;
    Ok(Weight((0..n).map(|p| g.left.get(p + 1) + g.right.get(n - p)).collect()))
}

/// Inverse of [`specialize`] for weights vanishing on nodes with `i > l`
/// and `ī > r`; `None` if the weight does not.
pub fn pull_back(w: &Weight, l: usize, r: usize) -> Option<TwoSidedWeight> {
    let n = w.rank();
    if l + r > n {
        return None;
    }
    let x: Vec<i64> = (0..l).map(|p| w.0[p]).collect();
    let y: Vec<i64> = (0..r).map(|j| w.0[n - 1 - j]).collect();
    if w.0[l..n - r].iter().any(|&c| c != 0) {
        return None;
    }
    Some(TwoSidedWeight::from_vecs(x, y))
}

/// `λ₁ ≽ λ₂`.
pub fn po_geq(pair: &MarkedPair, l1: &TwoSidedWeight, l2: &TwoSidedWeight) -> Result<bool> {
    let g = l1.sub(l2);
    if lattice::number_of_boxes(pair, &g)? != 0 {
        return Ok(false);
    }
    let k = lattice::min_k(pair, &g);
    Ok(lattice::bici_decomposition(pair, &g, k)?.is_nonnegative())
}

/// `ξ = Σ u_p α_p` with `u > 0` and `(ξ|α_p) < 0` for every `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HtFunctional {
    pub u: Vec<Q>,
    sym: Vec<i64>,
    cu: Vec<Q>,
}

impl HtFunctional {
    /// `(λ|ξ) = Σ λ_p u_p d_p`.
    pub fn ht_weight(&self, w: &Weight) -> Q {
        w.0.iter().zip(&self.u).zip(&self.sym).map(|((&x, u), &d)| u * Q::from_integer(x * d)).sum()
    }

    /// `(Σ x_p α_p | ξ) = Σ x_p d_p (C u)_p`.
    pub fn ht_root(&self, x: &[Q]) -> Q {
        x.iter().zip(&self.cu).zip(&self.sym).map(|((x, cu), &d)| x * cu * Q::from_integer(d)).sum()
    }

    /// `(C u)_p = ξ(α̌_p)`, all negative.
    pub fn coroot_values(&self) -> &[Q] {
        &self.cu
    }

    /// Per-node weight `u_p d_p` of `ht` on fundamental weights.
    pub fn node_costs(&self) -> Vec<Q> {
        self.u.iter().zip(&self.sym).map(|(u, &d)| u * Q::from_integer(d)).collect()
    }
}

fn try_functional(d: &DynkinDiagram, u: Vec<Q>) -> Option<HtFunctional> {
    let n = d.rank();
    let cu: Vec<Q> = (0..n).map(|p| (0..n).map(|q| Q::from_integer(d.entry(p, q)) * u[q]).sum()).collect();
    let zero = Q::zero();
    (u.iter().all(|x| *x > zero) && cu.iter().all(|x| *x < zero))
        .then(|| HtFunctional { u, sym: d.symmetrizer().to_vec(), cu })
}

/// Perron vector of `2I − C` by power iteration, rounded to a rational
/// grid of the given resolution.
fn perron_guess(d: &DynkinDiagram, resolution: i64) -> Vec<Q> {
    let n = d.rank();
    let mut v = vec![1.0f64; n];
    for _ in 0..5000 {
        let mut w = vec![0.0f64; n];
        for p in 0..n {
            for q in 0..n {
                let b = if p == q { 2.0 - d.entry(p, q) as f64 } else { -(d.entry(p, q) as f64) };
                w[p] += b * v[q];
            }
            // damping keeps bipartite diagrams from oscillating
            w[p] += v[p];
        }
        let norm = w.iter().cloned().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / norm).collect();
    }
    v.into_iter().map(|x| Q::new((x * resolution as f64).round() as i64, resolution)).collect()
}

/// Height functional of an indecomposable indefinite diagram.
pub fn ht_functional(d: &DynkinDiagram) -> Result<HtFunctional> {
    if d.classify()? != TypeClass::Indefinite {
        return Err(Error::NotIndefinite);
    }
    let n = d.rank();
    if let Some(u) = linalg::solve(d.cartan(), &vec![Q::from_integer(-1); n]) {
        if let Some(h) = try_functional(d, u) {
            return Ok(h);
        }
    }
    for res in [1_000i64, 100_000, 10_000_000] {
        if let Some(h) = try_functional(d, perron_guess(d, res)) {
            return Ok(h);
        }
    }
    Err(Error::Verification("no height functional found".into()))
}

/// `Σ a_p c_p ≤ budget` over nonnegative integer vectors `a`.
fn knapsack(costs: &[Q], budget: Q) -> Vec<Vec<i64>> {
    fn go(costs: &[Q], idx: usize, left: Q, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if idx == costs.len() {
            out.push(cur.clone());
            return;
        }
        let mut a = 0i64;
        let mut rem = left;
        while rem >= Q::zero() {
            cur.push(a);
            go(costs, idx + 1, rem, cur, out);
            cur.pop();
            a += 1;
            rem -= costs[idx];
        }
    }
    let mut out = Vec::new();
    go(costs, 0, budget, &mut Vec::new(), &mut out);
    out
}

/// `U(γ) = {λ ∈ P⁺ : λ − γ ∈ Q⁺}` on an indefinite diagram.
pub fn interval_up(d: &DynkinDiagram, g: &Weight) -> Result<Vec<Weight>> {
    if !g.is_dominant() {
        return Err(Error::NotDominant);
    }
    let inv = linalg::inverse(d.cartan()).ok_or(Error::SingularCartan)?;
    let h = ht_functional(d)?;
    let budget = h.ht_weight(g);
    let n = d.rank();
    let mut out: Vec<Weight> = knapsack(&h.node_costs(), budget)
        .into_par_iter()
        .filter(|a| {
            (0..n).all(|r| {
                let x: Q = (0..n).map(|c| inv[r][c] * Q::from_integer(a[c] - g.0[c])).sum();
                x.is_integer() && x >= Q::zero()
            })
        })
        .map(Weight)
        .collect();
    out.sort();
    Ok(out)
}

/// True when both sides have `Δ = 1` and `a_i = i`, the type A situation.
fn is_a_type_pair(pair: &MarkedPair, len: usize) -> Result<bool> {
    let ident: Vec<i64> = (1..=len as i64).collect();
    Ok(pair.delta1 == 1
        && pair.delta2 == 1
        && pair.a_seq(0, len)? == ident
        && pair.a_seq(1, len)? == ident)
}

/// Nonnegative vectors `z` with `Σ i z_i = total`.
fn weighted_compositions(total: i64) -> Vec<HVector> {
    fn go(i: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<HVector>) {
        if left == 0 {
            out.push(HVector::new(cur.clone()));
            return;
        }
        if i > left {
            return;
        }
        for z in (0..=left / i).rev() {
            cur.push(z);
            go(i + 1, left - z * i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= 0 {
        go(1, total, &mut Vec::new(), &mut out);
    }
    out
}

/// `U(γ, s) = {λ ∈ H₂⁺ : λ ≽ γ, dep(λ − γ) = s}`.
pub fn interval_up_h2(pair: &MarkedPair, g: &TwoSidedWeight, s: i64) -> Result<Vec<TwoSidedWeight>> {
    pair.require_extensible()?;
    if !g.is_dominant() {
        return Err(Error::NotDominant);
    }
    if s < 0 {
        return Ok(vec![]);
    }
    let big_l = (g.ls(pair.d1) + s) as usize;
    let big_r = (g.rs(pair.d2) + s) as usize;
    let mut found: BTreeSet<TwoSidedWeight> = BTreeSet::new();
    if is_a_type_pair(pair, big_l.max(big_r))? {
        let lefts = weighted_compositions(g.left.weighted_sum() + s);
        let rights = weighted_compositions(g.right.weighted_sum() + s);
        for z in &lefts {
            for w in &rights {
                let cand = TwoSidedWeight::new(z.clone(), w.clone());
                if po_geq(pair, &cand, g)? {
                    found.insert(cand);
                }
            }
        }
        return Ok(found.into_iter().collect());
    }
    let base = (big_l + big_r).saturating_sub(pair.d1 + pair.d2).max(1);
    let k = (base..base + 24)
        .find(|&k| {
            pair.build_zk(k)
                .map(|z| z.det() != 0 && z.diagram.classify() == Ok(TypeClass::Indefinite))
                .unwrap_or(false)
        })
        .ok_or(Error::NotIndefinite)?;
    let zk = pair.build_zk(k)?;
    for w in interval_up(&zk.diagram, &specialize(pair, g, k)?)? {
        let Some(cand) = pull_back(&w, big_l, big_r) else { continue };
        let diff = cand.sub(g);
        if lattice::number_of_boxes(pair, &diff)? == 0
            && lattice::depth(pair, &diff)? == s
            && po_geq(pair, &cand, g)?
        {
            found.insert(cand);
        }
    }
    Ok(found.into_iter().collect())
}

/// `I(λ₁, λ₂) = {γ : λ₁ ≽ γ ≽ λ₂}`, cross-checked against a root-coordinate
/// scan on two chain lengths.
pub fn interval_between(
    pair: &MarkedPair,
    l1: &TwoSidedWeight,
    l2: &TwoSidedWeight,
) -> Result<Vec<TwoSidedWeight>> {
    if !po_geq(pair, l1, l2)? {
        return Err(Error::NotComparable);
    }
    let total = lattice::depth(pair, &l1.sub(l2))?;
    let mut found = BTreeSet::new();
    for t in 0..=total {
        for c in interval_up_h2(pair, l2, t)? {
            if po_geq(pair, l1, &c)? {
                found.insert(c);
            }
        }
    }
    let out: Vec<TwoSidedWeight> = found.into_iter().collect();
    let mut k = interval_k(pair, l1, l2, total);
    for _ in 0..2 {
        k = lattice::nonsingular_k(pair, k);
        let spec: BTreeSet<Weight> =
            out.iter().map(|g| specialize(pair, g, k)).collect::<Result<_>>()?;
        let scan: BTreeSet<Weight> = interval_between_at_k(pair, l1, l2, k)?.into_iter().collect();
        if spec != scan {
            return Err(Error::Verification(format!("interval differs from the scan at k = {k}")));
        }
        k += 1;
    }
    Ok(out)
}

fn interval_k(pair: &MarkedPair, l1: &TwoSidedWeight, l2: &TwoSidedWeight, s: i64) -> usize {
    let l = l1.ls(pair.d1).max(l2.ls(pair.d1) + s);
    let r = l1.rs(pair.d2).max(l2.rs(pair.d2) + s);
    ((l + r) as usize).saturating_sub(pair.d1 + pair.d2).max(1)
}

/// Dominant weights `μ` on `Z_k` with `λ₁^(k) − μ` and `μ − λ₂^(k)` in
/// `Q⁺`, by a scan of the root-coordinate box.
pub fn interval_between_at_k(
    pair: &MarkedPair,
    l1: &TwoSidedWeight,
    l2: &TwoSidedWeight,
    k: usize,
) -> Result<Vec<Weight>> {
    let zk = pair.build_zk(k)?;
    let top = specialize(pair, l1, k)?;
    let bottom = specialize(pair, l2, k)?;
    let span = lattice::weight_to_root_basis(&zk.diagram, &top.sub(&bottom))?
        .to_integers()
        .filter(|x| x.iter().all(|&c| c >= 0))
        .ok_or(Error::NotComparable)?;
    let mut out = Vec::new();
    let mut x = vec![0i64; span.len()];
    loop {
        let mu = bottom.add(&Weight::from_root_coords(&zk.diagram, &x));
        if mu.is_dominant() {
            out.push(mu);
        }
        let Some(p) = (0..x.len()).find(|&p| x[p] < span[p]) else { break };
        x[p] += 1;
        x[..p].iter_mut().for_each(|c| *c = 0);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::MarkedDiagram;

    fn a1_pair() -> MarkedPair {
        let a1 = MarkedDiagram::new(DynkinDiagram::standard('A', 1).unwrap(), 0).unwrap();
        MarkedPair::new(a1.clone(), a1)
    }

    #[test]
    fn hvector_trims() {
        assert_eq!(HVector::new(vec![1, 0, 0]).len(), 1);
        assert_eq!(HVector::new(vec![0, 0]), HVector::default());
        let j = serde_json::to_string(&TwoSidedWeight::from_vecs(vec![1], vec![0, 2])).unwrap();
        assert_eq!(j, r#"{"left":[1],"right":[0,2]}"#);
    }

    #[test]
    fn specialize_a1_pair() {
        let p = a1_pair();
        let g = TwoSidedWeight::from_vecs(vec![1], vec![1]);
        assert_eq!(specialize(&p, &g, 3).unwrap(), Weight(vec![1, 0, 0, 0, 1]));
        assert_eq!(pull_back(&Weight(vec![1, 0, 0, 0, 1]), 1, 1), Some(g));
        let wide = TwoSidedWeight::from_vecs(vec![0, 0, 1], vec![]);
        assert!(matches!(specialize(&p, &wide, 1), Err(Error::SupportTooWide { .. })));
    }

    #[test]
    fn ht_functional_on_rank2() {
        let d = DynkinDiagram::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        let h = ht_functional(&d).unwrap();
        assert_eq!(h.u, vec![Q::from_integer(1), Q::from_integer(1)]);
        let fin = DynkinDiagram::standard('A', 3).unwrap();
        assert_eq!(ht_functional(&fin), Err(Error::NotIndefinite));
    }

    #[test]
    fn weighted_compositions_are_partitions() {
        assert_eq!(weighted_compositions(4).len(), 5);
        assert_eq!(weighted_compositions(0), vec![HVector::default()]);
    }

    #[test]
    fn u_gamma_s_a1_pair() {
        let p = a1_pair();
        let zero = TwoSidedWeight::zero();
        assert_eq!(interval_up_h2(&p, &zero, 1).unwrap(), vec![TwoSidedWeight::from_vecs(vec![1], vec![1])]);
        assert_eq!(interval_up_h2(&p, &zero, 0).unwrap(), vec![zero.clone()]);
        assert!(interval_up_h2(&p, &zero, -1).unwrap().is_empty());
    }
}
