//! Finite-type characters: positive roots, Freudenthal multiplicities,
//! Weyl orbits, the Brauer–Klimyk tensor product rule and the Weyl
//! dimension formula. Independent of the path model.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use crate::diagram::{DynkinDiagram, TypeClass};
use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::linalg::Q;

#[derive(Clone, Debug)]
pub struct WeylContext {
    pub diagram: DynkinDiagram,
    pub rho: Weight,
    /// Positive roots in root coordinates, by increasing height.
    pub positive_roots: Vec<Vec<i64>>,
}

impl WeylContext {
    pub fn new(diagram: &DynkinDiagram) -> Result<Self> {
        if diagram.classify()? != TypeClass::Finite {
            return Err(Error::NotFiniteType);
        }
        let n = diagram.rank();
        let positive_roots = positive_roots(diagram);
        Ok(WeylContext { diagram: diagram.clone(), rho: Weight(vec![1; n]), positive_roots })
    }

    fn n(&self) -> usize {
        self.diagram.rank()
    }

    /// `(w | Σ x_j α_j) = Σ x_j d_j w_j`.
    pub fn pair_root(&self, w: &Weight, x: &[i64]) -> i64 {
        let d = self.diagram.symmetrizer();
        (0..self.n()).map(|j| x[j] * d[j] * w.0[j]).sum()
    }

    fn root_as_weight(&self, x: &[i64]) -> Weight {
        Weight::from_root_coords(&self.diagram, x)
    }

    /// `s_p(w) = w − w_p α_p`.
    pub fn reflect(&self, w: &Weight, p: usize) -> Weight {
        let c = w.0[p];
        Weight((0..self.n()).map(|q| w.0[q] - c * self.diagram.entry(q, p)).collect())
    }

    /// Dominant representative of `w` and the parity of the reflections used.
    pub fn to_dominant(&self, w: &Weight) -> (Weight, i64) {
        let mut w = w.clone();
        let mut sign = 1;
        while let Some(p) = (0..self.n()).find(|&p| w.0[p] < 0) {
            w = self.reflect(&w, p);
            sign = -sign;
        }
        (w, sign)
    }

    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen = BTreeSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(x) = queue.pop_front() {
            for p in 0..self.n() {
                let y = self.reflect(&x, p);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Dominant weights `μ ≤ λ` with `λ − μ ∈ Q⁺`, keyed by the root
    /// coordinates of `λ − μ`.
    fn dominant_below(&self, l: &Weight) -> BTreeMap<Weight, Vec<i64>> {
        let mut out = BTreeMap::from([(l.clone(), vec![0i64; self.n()])]);
        let mut queue = VecDeque::from([l.clone()]);
        while let Some(mu) = queue.pop_front() {
            let gap = out[&mu].clone();
            for r in &self.positive_roots {
                let nu = mu.sub(&self.root_as_weight(r));
                if nu.is_dominant() && !out.contains_key(&nu) {
                    out.insert(nu.clone(), gap.iter().zip(r).map(|(a, b)| a + b).collect());
                    queue.push_back(nu);
                }
            }
        }
        out
    }

    /// Multiplicities of the dominant weights of `L(λ)`.
    pub fn dominant_character(&self, l: &Weight) -> Result<BTreeMap<Weight, i64>> {
        if !l.is_dominant() {
            return Err(Error::NotDominant);
        }
        let below = self.dominant_below(l);
        let mut order: Vec<(&Weight, &Vec<i64>)> = below.iter().collect();
        order.sort_by_key(|(w, gap)| (gap.iter().sum::<i64>(), (*w).clone()));
        let lr = l.add(&self.rho);
        let d = self.diagram.symmetrizer();
        let mut mult: HashMap<Weight, i64> = HashMap::new();
        for (mu, gap) in order {
            if gap.iter().all(|&g| g == 0) {
                mult.insert(mu.clone(), 1);
                continue;
            }
            // (λ+ρ|λ+ρ) − (μ+ρ|μ+ρ) = (λ−μ | λ+μ+2ρ)
            let s = lr.add(&mu.add(&self.rho));
            let denom: i64 = (0..self.n()).map(|j| gap[j] * d[j] * s.0[j]).sum();
            let mut num = 0i64;
            for r in &self.positive_roots {
                let a = self.root_as_weight(r);
                let mut w = mu.add(&a);
                loop {
                    let (dom, _) = self.to_dominant(&w);
                    let Some(&m) = mult.get(&dom) else { break };
                    num += 2 * m * self.pair_root(&w, r);
                    w = w.add(&a);
                }
            }
            let q = Q::new(num, denom);
            if !q.is_integer() {
                return Err(Error::Verification("Freudenthal quotient is not integral".into()));
            }
            mult.insert(mu.clone(), q.to_integer());
        }
        Ok(mult.into_iter().filter(|(_, m)| *m != 0).collect())
    }

    /// All weight multiplicities of `L(λ)`.
    pub fn freudenthal(&self, l: &Weight) -> Result<BTreeMap<Weight, i64>> {
        let mut out = BTreeMap::new();
        for (mu, m) in self.dominant_character(l)? {
            for w in self.orbit(&mu) {
                out.insert(w, m);
            }
        }
        Ok(out)
    }

    /// `L(λ) ⊗ L(μ)` by reflecting `β + μ + ρ` into the dominant chamber.
    pub fn tensor_decompose(&self, l: &Weight, m: &Weight) -> Result<BTreeMap<Weight, i64>> {
        if !m.is_dominant() {
            return Err(Error::NotDominant);
        }
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (beta, mult) in self.freudenthal(l)? {
            let w = beta.add(m).add(&self.rho);
            let (dom, sign) = self.to_dominant(&w);
            if dom.0.iter().any(|&x| x == 0) {
                continue;
            }
            *acc.entry(dom.sub(&self.rho)).or_insert(0) += sign * mult;
        }
        Ok(acc.into_iter().filter(|(_, c)| *c != 0).collect())
    }

    /// `Π_{α>0} (λ+ρ|α)/(ρ|α)`.
    pub fn dimension(&self, l: &Weight) -> Result<i64> {
        if !l.is_dominant() {
            return Err(Error::NotDominant);
        }
        let lr = l.add(&self.rho);
        let mut q = Q::from_integer(1);
        for r in &self.positive_roots {
            q *= Q::new(self.pair_root(&lr, r), self.pair_root(&self.rho, r));
        }
        debug_assert!(q.is_integer() && !q.is_zero());
        Ok(q.to_integer())
    }
}

/// Positive roots by root strings: `β + α_p` is a root iff
/// `q = r − ⟨β, α̌_p⟩ > 0`, `r` the length of the downward `p`-string.
fn positive_roots(d: &DynkinDiagram) -> Vec<Vec<i64>> {
    let n = d.rank();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|p| {
            let mut e = vec![0; n];
            e[p] = 1;
            e
        })
        .collect();
    let mut out = Vec::new();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for b in &layer {
            roots.insert(b.clone());
        }
        for b in &layer {
            for p in 0..n {
                let pairing: i64 = (0..n).map(|j| b[j] * d.entry(p, j)).sum();
                let mut r = 0;
                let mut down = b.clone();
                loop {
                    down[p] -= 1;
                    if roots.contains(&down) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                if r - pairing > 0 {
                    let mut up = b.clone();
                    up[p] += 1;
                    next.insert(up);
                }
            }
        }
        out.extend(layer);
        layer = next.into_iter().collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(f: char, n: usize) -> WeylContext {
        WeylContext::new(&DynkinDiagram::standard(f, n).unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        let cases = [('A', 3, 6), ('B', 3, 9), ('C', 3, 9), ('D', 4, 12), ('G', 2, 6), ('F', 4, 24), ('E', 6, 36), ('E', 8, 120)];
        for (f, n, want) in cases {
            assert_eq!(ctx(f, n).positive_roots.len(), want, "{f}{n}");
        }
    }

    #[test]
    fn sl2_and_adjoint() {
        let a1 = ctx('A', 1);
        let ch = a1.freudenthal(&Weight(vec![2])).unwrap();
        assert_eq!(ch.len(), 3);
        assert!(ch.values().all(|&m| m == 1));
        let a2 = ctx('A', 2);
        assert_eq!(a2.freudenthal(&Weight(vec![1, 1])).unwrap()[&Weight(vec![0, 0])], 2);
    }

    #[test]
    fn dimensions_match_characters() {
        for (f, n) in [('A', 2), ('B', 3), ('C', 3), ('D', 4), ('G', 2)] {
            let c = ctx(f, n);
            for w in [vec![1; n], {
                let mut v = vec![0; n];
                v[0] = 2;
                v
            }] {
                let w = Weight(w);
                let total: i64 = c.freudenthal(&w).unwrap().values().sum();
                assert_eq!(total, c.dimension(&w).unwrap(), "{f}{n} {w:?}");
            }
        }
        assert_eq!(ctx('A', 1).dimension(&Weight(vec![5])).unwrap(), 6);
    }

    #[test]
    fn clebsch_gordan() {
        let a1 = ctx('A', 1);
        let t = a1.tensor_decompose(&Weight(vec![1]), &Weight(vec![1])).unwrap();
        assert_eq!(t, BTreeMap::from([(Weight(vec![0]), 1), (Weight(vec![2]), 1)]));
    }

    #[test]
    fn rejects_infinite_type() {
        let e9 = DynkinDiagram::standard('E', 9).unwrap();
        assert!(matches!(WeylContext::new(&e9), Err(Error::NotFiniteType)));
    }
}
