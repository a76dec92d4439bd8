//! Depth-truncated computations in the stable representation ring
//! `R(X₁|X₂)` with basis `v_λ`, `λ ∈ H₂⁺`, and product
//! `v_λ * v_μ = Σ_ν c^ν_{λμ}(∞) v_ν`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::diagram::MarkedPair;
use crate::error::{Error, Result};
use crate::hweights::{self, HVector, TwoSidedWeight};
use crate::lattice::{self, Weight};
use crate::linalg::{self, Q};
use crate::paths;
use crate::stab::{self, StabOptions};

/// Finite combination `Σ c_λ v_λ`, exact up to terms of depth `depth_bound`
/// below the products that produced it (`None` for exact elements).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    pub terms: BTreeMap<TwoSidedWeight, Q>,
    pub depth_bound: Option<i64>,
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            weight: &'a TwoSidedWeight,
            coeff: String,
        }
        let terms: Vec<Term> =
            self.terms.iter().map(|(w, c)| Term { weight: w, coeff: linalg::q_string(c) }).collect();
        let mut st = s.serialize_struct("RingElement", 2)?;
        st.serialize_field("depth_bound", &self.depth_bound)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl RingElement {
    pub fn basis(w: TwoSidedWeight) -> Self {
        RingElement { terms: BTreeMap::from([(w, Q::one())]), depth_bound: None }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeff(&self, w: &TwoSidedWeight) -> Q {
        self.terms.get(w).copied().unwrap_or_else(Q::zero)
    }

    fn push(&mut self, w: TwoSidedWeight, c: Q) {
        let e = self.terms.entry(w.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.push(w.clone(), *c);
        }
        out.depth_bound = min_bound(self.depth_bound, other.depth_bound);
        out
    }

    pub fn scale(&self, c: Q) -> RingElement {
        let mut out = RingElement { terms: BTreeMap::new(), depth_bound: self.depth_bound };
        for (w, x) in &self.terms {
            out.push(w.clone(), *x * c);
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&TwoSidedWeight) -> bool) -> RingElement {
        RingElement {
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), *c)).collect(),
            depth_bound: self.depth_bound,
        }
    }
}

fn min_bound(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

/// Structure constants of `R(X₁|X₂)` with a shared memo table.
pub struct StarRing {
    pair: MarkedPair,
    opts: StabOptions,
    cache: RwLock<HashMap<(TwoSidedWeight, TwoSidedWeight, i64), RingElement>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssocReport {
    pub equal: bool,
    pub compared: usize,
    pub left: RingElement,
    pub right: RingElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub k: usize,
    /// `(γ, Σ_δ c^δ_{λμ} c^γ_{δν}, direct three-factor count)`.
    pub rows: Vec<(TwoSidedWeight, String, i64)>,
    pub equal: bool,
}

impl StarRing {
    pub fn new(pair: MarkedPair, opts: StabOptions) -> Result<Self> {
        pair.require_extensible()?;
        Ok(StarRing { pair, opts, cache: RwLock::default() })
    }

    pub fn pair(&self) -> &MarkedPair {
        &self.pair
    }

    /// `a_i / Δ` up to the first index where it exceeds `bound`; every
    /// entry must be positive.
    fn scaled_a(&self, side: usize, bound: Q, at_least: usize) -> Result<Vec<Q>> {
        let delta = if side == 0 { self.pair.delta1 } else { self.pair.delta2 };
        let d = self.pair.side(side).rank();
        let mut len = (at_least + 4).max(2 * d + 4);
        loop {
            let a: Vec<Q> = self.pair.a_seq(side, len)?.into_iter().map(|x| Q::new(x, delta)).collect();
            if let Some(bad) = a.iter().position(|x| *x <= Q::zero()) {
                return Err(Error::Invalid(format!("a-sequence entry {} is not positive", bad + 1)));
            }
            // past the chain start the sequence is increasing
            if let Some(cut) = (d..len).find(|&i| a[i] > bound && a[i..].windows(2).all(|w| w[0] < w[1])) {
                let mut a = a;
                a.truncate(cut.max(at_least));
                return Ok(a);
            }
            len *= 2;
        }
    }

    /// Nonnegative `z` with `Σ z_i a_i = target`.
    fn vectors_with_sum(a: &[Q], target: Q) -> Vec<HVector> {
        fn go(a: &[Q], i: usize, left: Q, cur: &mut Vec<i64>, out: &mut Vec<HVector>) {
            if left.is_zero() {
                out.push(HVector::new(cur.clone()));
                return;
            }
            if i == a.len() || left < Q::zero() {
                return;
            }
            let mut z = 0;
            let mut rem = left;
            while rem >= Q::zero() {
                cur.push(z);
                go(a, i + 1, rem, cur, out);
                cur.pop();
                z += 1;
                rem -= a[i];
            }
        }
        let mut out = Vec::new();
        go(a, 0, target, &mut Vec::new(), &mut out);
        out
    }

    /// `ν ∈ H₂⁺` with `λ+μ ≽ ν` and `dep(λ+μ−ν) ≤ depth_bound`.
    pub fn candidates(&self, sum: &TwoSidedWeight, depth_bound: i64) -> Result<Vec<TwoSidedWeight>> {
        let (b1, b2) = lattice::b_values(&self.pair, sum)?;
        let a1 = self.scaled_a(0, b1, sum.left.len())?;
        let a2 = self.scaled_a(1, b2, sum.right.len())?;
        let mut out = BTreeSet::new();
        for t in 0..=depth_bound {
            let t = Q::from_integer(t);
            for z in Self::vectors_with_sum(&a1, b1 - t) {
                for w in Self::vectors_with_sum(&a2, b2 - t) {
                    let nu = TwoSidedWeight::new(z.clone(), w);
                    if hweights::po_geq(&self.pair, sum, &nu)? {
                        out.insert(nu);
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// `v_λ * v_μ` restricted to `dep(λ+μ−ν) ≤ depth_bound`.
    pub fn star_basis(&self, l: &TwoSidedWeight, m: &TwoSidedWeight, depth_bound: i64) -> Result<RingElement> {
        if !(l.is_dominant() && m.is_dominant()) {
            return Err(Error::NotDominant);
        }
        let key = (l.clone(), m.clone(), depth_bound);
        if let Some(hit) = self.cache.read().expect("star cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let sum = l.add(m);
        let cands = self.candidates(&sum, depth_bound)?;
        let mut weights: Vec<&TwoSidedWeight> = vec![l, m];
        weights.extend(cands.iter());
        let k = lattice::nonsingular_k(&self.pair, stab::threshold(&self.pair, &weights, depth_bound));
        let counts = count_many(&self.pair, k, l, m, &cands, self.opts.budget)?;
        let mut out = RingElement { terms: BTreeMap::new(), depth_bound: Some(depth_bound) };
        for (nu, c) in cands.into_iter().zip(counts) {
            if c != 0 {
                out.push(nu, Q::from_integer(c));
            }
        }
        self.cache.write().expect("star cache poisoned").insert(key, out.clone());
        Ok(out)
    }

    /// Bilinear extension of [`StarRing::star_basis`].
    pub fn star(&self, x: &RingElement, y: &RingElement, depth_bound: i64) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (l, a) in &x.terms {
            for (m, b) in &y.terms {
                out = out.add(&self.star_basis(l, m, depth_bound)?.scale(*a * *b));
            }
        }
        out.depth_bound = min_bound(Some(depth_bound), min_bound(x.depth_bound, y.depth_bound));
        Ok(out)
    }

    fn total_depth_ok(&self, top: &TwoSidedWeight, g: &TwoSidedWeight, depth_bound: i64) -> bool {
        let diff = top.sub(g);
        lattice::number_of_boxes(&self.pair, &diff) == Ok(0)
            && lattice::depth(&self.pair, &diff).is_ok_and(|d| d <= depth_bound)
    }

    /// Compares `(v_λ*v_μ)*v_ν` with `v_λ*(v_μ*v_ν)` on the terms with
    /// `dep(λ+μ+ν−γ) ≤ depth_bound`.
    pub fn associativity_check(
        &self,
        l: &TwoSidedWeight,
        m: &TwoSidedWeight,
        n: &TwoSidedWeight,
        depth_bound: i64,
    ) -> Result<AssocReport> {
        let top = l.add(m).add(n);
        let keep = |g: &TwoSidedWeight| self.total_depth_ok(&top, g, depth_bound);
        let left = self
            .star(&self.star_basis(l, m, depth_bound)?, &RingElement::basis(n.clone()), depth_bound)?
            .filter(keep);
        let right = self
            .star(&RingElement::basis(l.clone()), &self.star_basis(m, n, depth_bound)?, depth_bound)?
            .filter(keep);
        Ok(AssocReport { equal: left.terms == right.terms, compared: left.terms.len().max(right.terms.len()), left, right })
    }

    /// Coefficients of `(v_λ*v_μ)*v_ν` against a direct count of highest
    /// weight vectors in `L(λ)⊗L(μ)⊗L(ν)` on one `Z_k`.
    pub fn triple_check(
        &self,
        l: &TwoSidedWeight,
        m: &TwoSidedWeight,
        n: &TwoSidedWeight,
        depth_bound: i64,
    ) -> Result<TripleReport> {
        let top = l.add(m).add(n);
        let lhs = self
            .star(&self.star_basis(l, m, depth_bound)?, &RingElement::basis(n.clone()), depth_bound)?
            .filter(|g| self.total_depth_ok(&top, g, depth_bound));
        let gammas: Vec<TwoSidedWeight> = self.candidates(&top, depth_bound)?;
        let mut weights: Vec<&TwoSidedWeight> = vec![l, m, n];
        weights.extend(gammas.iter());
        let k = lattice::nonsingular_k(&self.pair, stab::threshold(&self.pair, &weights, depth_bound) + 2);
        let mut rows = Vec::new();
        let mut equal = true;
        for g in &gammas {
            let direct = triple_count(&self.pair, k, l, m, n, g, self.opts.budget)?;
            let via = lhs.coeff(g);
            equal &= via == Q::from_integer(direct);
            rows.push((g.clone(), linalg::q_string(&via), direct));
        }
        equal &= lhs.terms.keys().all(|g| gammas.contains(g));
        Ok(TripleReport { k, rows, equal })
    }
}

/// `c^ν_{λμ}(k)` for every candidate `ν` from one capped crystal of `λ^(k)`.
fn count_many(
    pair: &MarkedPair,
    k: usize,
    l: &TwoSidedWeight,
    m: &TwoSidedWeight,
    cands: &[TwoSidedWeight],
    budget: usize,
) -> Result<Vec<i64>> {
    if cands.is_empty() {
        return Ok(vec![]);
    }
    let zk = pair.build_zk(k)?;
    let lw = hweights::specialize(pair, l, k)?;
    let mw = hweights::specialize(pair, m, k)?;
    let top = lw.add(&mw);
    let mut by_letters: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut cap = vec![0i64; zk.n()];
    for (i, nu) in cands.iter().enumerate() {
        let gap = lattice::weight_to_root_basis(&zk.diagram, &top.sub(&hweights::specialize(pair, nu, k)?))?
            .to_integers()
            .ok_or_else(|| Error::Verification("candidate outside the root lattice".into()))?;
        for (c, g) in cap.iter_mut().zip(&gap) {
            *c = (*c).max(*g);
        }
        by_letters.insert(gap, i);
    }
    let crystal = paths::generate_crystal(&zk.diagram, &lw, Some(&cap), budget)?;
    let mut counts = vec![0i64; cands.len()];
    for p in &crystal.nodes {
        if let Some(&i) = by_letters.get(&p.letters) {
            if p.path.is_dominant_shifted(&mw) {
                counts[i] += 1;
            }
        }
    }
    Ok(counts)
}

/// Highest weight vectors of weight `γ^(k)` in `L(λ)⊗L(μ)⊗L(ν)`: paths
/// `π₂` of shape `μ` with `ν + π₂` dominant, followed by paths `π₁` of
/// shape `λ` with `ν + π₂(1) + π₁` dominant.
pub fn triple_count(
    pair: &MarkedPair,
    k: usize,
    l: &TwoSidedWeight,
    m: &TwoSidedWeight,
    n: &TwoSidedWeight,
    g: &TwoSidedWeight,
    budget: usize,
) -> Result<i64> {
    let zk = pair.build_zk(k)?;
    let sp = |w| hweights::specialize(pair, w, k);
    let (lw, mw, nw, gw) = (sp(l)?, sp(m)?, sp(n)?, sp(g)?);
    let gap = lattice::weight_to_root_basis(&zk.diagram, &lw.add(&mw).add(&nw).sub(&gw))?;
    let Some(cap) = gap.to_integers().filter(|c| c.iter().all(|&x| x >= 0)) else { return Ok(0) };
    let inner = paths::generate_crystal(&zk.diagram, &mw, Some(&cap), budget)?;
    let mut total = 0;
    for p in inner.nodes.iter().filter(|p| p.path.is_dominant_shifted(&nw)) {
        let w2: Weight = nw.add(&p.endpoint_weight());
        let gap2 = lattice::weight_to_root_basis(&zk.diagram, &lw.add(&w2).sub(&gw))?;
        if gap2.in_positive_cone() {
            total += paths::tensor_count(&zk.diagram, &lw, &w2, &gw, budget)?.count;
        }
    }
    Ok(total)
}
