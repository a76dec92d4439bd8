use std::collections::BTreeSet;

use num_integer::Integer;

use dynkin_stab::diagram::{DynkinDiagram, MarkedDiagram};
use dynkin_stab::hweights::{self, TwoSidedWeight};
use dynkin_stab::lattice::{self, Weight};
use dynkin_stab::linalg::Q;
use dynkin_stab::oracle::WeylContext;
use dynkin_stab::parse;
use dynkin_stab::paths;
use dynkin_stab::stab::{self, BcdSeries, StabOptions};

const BUDGET: usize = 1_000_000;

fn tw(x: &[i64], y: &[i64]) -> TwoSidedWeight {
    TwoSidedWeight::from_vecs(x.to_vec(), y.to_vec())
}

#[test]
fn a_sequence_residues_hold_at_several_chain_lengths() {
    for spec in ["E6", "A3", "G2", "B3(mark=1)"] {
        let md = parse::diagram_spec(spec).unwrap();
        let d = md.rank();
        let a = md.a_sequence(d + 4).unwrap();
        for m in 0..5usize {
            if md.det_extended(m as i64) == 0 {
                continue;
            }
            let xm = md.attach_chain(m);
            let n = xm.rank();
            let end = Weight::fundamental(n, n - 1);
            for q in 0..n {
                // node q of X(m) has index q + 1 in ε order
                let w = Weight::fundamental(n, q).scale(-md.delta()).sub(&end.scale(a[q]));
                assert!(lattice::in_root_lattice(&xm.diagram, &w).unwrap(), "{spec} m={m} node {q}");
            }
        }
    }
}

#[test]
fn cu_cv_numerator_is_coprime_to_det() {
    for spec in ["A1,A1", "A2,A1", "E6,A1", "G2,A1", "A3,A2"] {
        let p = parse::pair_spec(spec).unwrap();
        for k in 1..8 {
            let det = p.det_zk_formula(k);
            if det == 0 {
                continue;
            }
            let num = p.det1 * p.delta2 + p.det2 * p.delta1 + (k - 2) * p.delta1 * p.delta2;
            assert_eq!(num.gcd(&det), 1, "{spec} k={k}");
            let zk = p.build_zk(k as usize).unwrap();
            let (u, v) = lattice::bridge_uv(&zk);
            assert_eq!(lattice::cu_minus_cv(&zk, u, v).unwrap(), Q::new(num, det));
            assert_eq!(lattice::order_uv(&zk).unwrap(), det.abs());
        }
    }
}

#[test]
fn root_lattice_membership() {
    let a1 = DynkinDiagram::standard('A', 1).unwrap();
    assert!(!lattice::in_root_lattice(&a1, &Weight(vec![1])).unwrap());
    assert!(lattice::in_root_lattice(&a1, &Weight(vec![2])).unwrap());
    let a2 = DynkinDiagram::standard('A', 2).unwrap();
    assert!(lattice::in_root_lattice(&a2, &Weight(vec![1, 1])).unwrap());
    // the spin weight sits on the short node, node 1 here
    let b3 = DynkinDiagram::standard('B', 3).unwrap();
    assert!(!lattice::in_root_lattice(&b3, &Weight(vec![1, 0, 0])).unwrap());
    assert!(lattice::in_root_lattice(&b3, &Weight(vec![0, 0, 1])).unwrap());
}

#[test]
fn equivalence_example_has_one_box() {
    let p = parse::pair_spec("A1,A1").unwrap();
    let (l, m) = (tw(&[1], &[]), tw(&[], &[1]));
    assert_eq!(lattice::number_of_boxes(&p, &l.sub(&m)).unwrap(), 2);
    assert!(!lattice::equivalent(&p, &l, &m).unwrap());
    // ω₁ − ω_N is never in the root lattice of A_N
    for k in 1..6 {
        let zk = p.build_zk(k).unwrap();
        let w = hweights::specialize(&p, &l.sub(&m), k).unwrap();
        assert!(!lattice::in_root_lattice(&zk.diagram, &w).unwrap());
    }
    assert!(lattice::equivalent(&p, &l, &l).unwrap());
}

#[test]
fn interval_between_two_ways() {
    let p = parse::pair_spec("A1,A1").unwrap();
    let top = tw(&[2], &[2]);
    let bottom = TwoSidedWeight::zero();
    let direct: BTreeSet<_> = hweights::interval_between(&p, &top, &bottom).unwrap().into_iter().collect();
    let dep = lattice::depth(&p, &top).unwrap();
    let mut via_up = BTreeSet::new();
    for s in 0..=dep {
        for g in hweights::interval_up_h2(&p, &bottom, s).unwrap() {
            if hweights::po_geq(&p, &top, &g).unwrap() {
                via_up.insert(g);
            }
        }
    }
    assert_eq!(direct, via_up);
    assert!(direct.contains(&top) && direct.contains(&bottom));
    assert_eq!(hweights::interval_between(&p, &top, &top).unwrap(), vec![top.clone()]);
}

#[test]
fn u_gamma_s_small_cases() {
    let p = parse::pair_spec("A1,A1").unwrap();
    let zero = TwoSidedWeight::zero();
    assert_eq!(hweights::interval_up_h2(&p, &zero, 1).unwrap(), vec![tw(&[1], &[1])]);
    assert!(hweights::interval_up_h2(&p, &zero, -1).unwrap().is_empty());
    let g = tw(&[0, 1], &[1]);
    assert!(hweights::interval_up_h2(&p, &g, 0).unwrap().contains(&g));
}

#[test]
fn branching_examples() {
    let p = parse::pair_spec("A1,A1").unwrap();
    let l = tw(&[1], &[1]);
    for k in [3, 4] {
        let zk = p.build_zk(k).unwrap();
        assert_eq!(paths::branching_count(&zk, &l, &l, BUDGET).unwrap().count, 1);
    }
    let zero = TwoSidedWeight::zero();
    let c3 = paths::branching_count(&p.build_zk(3).unwrap(), &l, &zero, BUDGET).unwrap().count;
    let c4 = paths::branching_count(&p.build_zk(4).unwrap(), &l, &zero, BUDGET).unwrap().count;
    assert_eq!(c3, c4);
    let r = stab::stable_branching(&p, &l, &zero, StabOptions::default()).unwrap();
    assert_eq!(r.value, c3);
}

/// Every `ν` with `c^ν_{λμ}(k) > 0` on `A_{k+2}` pulls back below `λ + μ`.
#[test]
fn nonzero_coefficients_are_below_the_sum() {
    let p = parse::pair_spec("A1,A1").unwrap();
    let k = 5;
    let d = DynkinDiagram::standard('A', k + 2).unwrap();
    let ctx = WeylContext::new(&d).unwrap();
    for (l, m) in [(tw(&[1], &[1]), tw(&[1], &[1])), (tw(&[0, 1], &[1]), tw(&[1], &[]))] {
        let (lw, mw) = (hweights::specialize(&p, &l, k).unwrap(), hweights::specialize(&p, &m, k).unwrap());
        for nu in ctx.tensor_decompose(&lw, &mw).unwrap().keys() {
            let split = (nu.rank() + 1) / 2;
            let Some(pulled) = hweights::pull_back(nu, split, nu.rank() - split) else { continue };
            assert!(hweights::po_geq(&p, &l.add(&m), &pulled).unwrap(), "{l} {m} -> {pulled}");
        }
    }
}

#[test]
fn bcd_counts_match_the_oracle() {
    let l = tw(&[1], &[1]);
    for series in [BcdSeries::B, BcdSeries::C, BcdSeries::D] {
        for n in 4..=6 {
            let d = series.diagram(n).unwrap();
            let lw = stab::bcd_specialize(series, &l, n).unwrap();
            let want = WeylContext::new(&d).unwrap().tensor_decompose(&lw, &lw).unwrap();
            let mut checked = 0;
            for (nw, &c) in &want {
                let Some(nu) = hweights::pull_back(nw, 2, 1) else { continue };
                let got = stab::bcd_count(series, &l, &l, &nu, n, BUDGET).unwrap().count;
                assert_eq!(got, c, "{series:?}{n} {nu}");
                checked += 1;
            }
            assert!(checked > 0);
        }
    }
}

#[test]
fn bcd_stabilization_under_height_condition() {
    // ht_C(λ) + ht_C(μ) = ht_C(ν)
    let (l, m, nu) = (tw(&[1], &[1]), tw(&[1], &[1]), tw(&[2], &[]));
    assert_eq!(stab::height(BcdSeries::C, &l) + stab::height(BcdSeries::C, &m), stab::height(BcdSeries::C, &nu));
    let r = stab::bcd_stable_tensor(BcdSeries::C, &l, &m, &nu, StabOptions::default()).unwrap();
    let seen = stab::bcd_observe(BcdSeries::C, &l, &m, &nu, &[r.threshold_k, r.threshold_k + 2], BUDGET).unwrap();
    assert!(seen.iter().all(|&(_, v)| v == r.value));
}

#[test]
fn hyperbolic_rank_two_functional() {
    let d = DynkinDiagram::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
    let h = hweights::ht_functional(&d).unwrap();
    assert_eq!(h.u, vec![Q::from_integer(1), Q::from_integer(1)]);
    assert_eq!(h.coroot_values(), &[Q::from_integer(-1), Q::from_integer(-1)]);
    let g = Weight(vec![0, 0]);
    assert_eq!(hweights::interval_up(&d, &g).unwrap(), vec![g]);
}

#[test]
fn e6_a_sequence_agrees_across_chain_lengths() {
    let md = MarkedDiagram::new(DynkinDiagram::standard('E', 6).unwrap(), 5).unwrap();
    assert!(md.is_extensible());
    assert_eq!((md.det(), md.delta()), (3, -1));
    let short = md.a_sequence(8).unwrap();
    let long = md.a_sequence(12).unwrap();
    assert_eq!(&long[..8], &short[..]);
}
