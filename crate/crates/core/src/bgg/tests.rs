use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::algebra::{binomial, Algebra};
use crate::grmodule::{construct_free, construct_simple, direct_sum, random_module, shift, truncate, DegreewiseModule};
use crate::qlinalg::Rat;
use crate::stablecat::{omega_power, tau};

fn ext(n: usize) -> Algebra {
    Algebra::exterior(n)
}

/// `k(d)`, concentrated in degree `-d`.
fn k(nv: usize, d: i32) -> DegreewiseModule {
    shift(&construct_simple(ext(nv), 0), d)
}

fn free(nv: usize) -> DegreewiseModule {
    construct_free(ext(nv), &[0], None).unwrap()
}

fn xi(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_int(*x)).collect()
}

/// `h^q(P^n, O(d))` from the classical formulas.
fn line_bundle_h(n: usize, q: i32, d: i32) -> usize {
    let n64 = n as i64;
    let d = d as i64;
    if q == 0 && d >= 0 {
        binomial((d + n64) as u64, n64 as u64) as usize
    } else if q == n as i32 && d <= -n64 - 1 {
        binomial((-d - 1) as u64, n64 as u64) as usize
    } else {
        0
    }
}

#[test]
fn lxi_examples() {
    let h = lxi_homology(&k(3, 0), &xi(&[1, 2, 3])).unwrap();
    assert_eq!(h.dims, BTreeMap::from([(0, 1)]));
    assert_eq!(lxi_homology(&free(3), &xi(&[0, 1, 0])).unwrap().total(), 0);
    let m = direct_sum(&k(3, 0), &k(3, 1)).unwrap();
    let h = lxi_homology(&m, &xi(&[1, 0, 0])).unwrap();
    assert_eq!(h.dims, BTreeMap::from([(-1, 1), (0, 1)]));
    assert!(lxi_homology(&m, &xi(&[0, 0, 0])).is_err());
    assert!(lxi_homology(&m, &xi(&[1, 0])).is_err());
}

#[test]
fn nice_examples() {
    assert!(is_nice(&k(3, 0), 5, 0).unwrap().is_certified());
    assert!(is_nice(&free(3), 5, 0).unwrap().is_certified());
    let m = direct_sum(&k(3, 0), &k(3, 1)).unwrap();
    assert!(is_nice(&m, 5, 0).unwrap().is_not_nice());
    assert!(matches!(is_nice(&k(2, 0), 0, 0).unwrap(), NiceVerdict::Inconclusive { .. }));
}

#[test]
fn special_samples_find_rank_drops() {
    // k (+) k(1) glued along x_0 only: the homology at xi = e_1 lives in two degrees.
    let a = Algebra::exterior(2);
    let mut action = BTreeMap::new();
    action.insert((0, -1), crate::qlinalg::RatMatrix::from_i64(&[&[1]]));
    let dims = BTreeMap::from([(-1, 1), (0, 1)]);
    let m = DegreewiseModule::from_parts(a, (-1, 0), &dims, action).unwrap();
    assert!(is_nice(&m, 1, 7).unwrap().is_not_nice());
}

#[test]
fn phi_examples() {
    let p = phi_complex(&k(2, 0)).unwrap();
    assert_eq!(
        p.terms,
        vec![PhiTerm {
            position: 0,
            twist: 0,
            multiplicity: 1
        }]
    );
    let p = phi_complex(&free(2)).unwrap();
    let mults: Vec<(i32, usize)> = p.terms.iter().map(|t| (t.twist, t.multiplicity)).collect();
    assert_eq!(mults, vec![(0, 1), (1, 2), (2, 1)]);
    assert!(p.delta_squared_vanishes());
    let s = phi_complex(&shift(&free(2), 3)).unwrap();
    assert_eq!(s.terms[0].position, -3);
    assert_eq!(s.differentials.values().collect::<Vec<_>>(), p.differentials.values().collect::<Vec<_>>());
}

#[test]
fn twist_modules() {
    assert_eq!(sheaf_module_for_twist(ext(2), 0).unwrap().dims(), k(2, 0).dims());
    let j = sheaf_module_for_twist(ext(2), -1).unwrap();
    assert_eq!(j.dims(), BTreeMap::from([(0, 2), (1, 1)]));
    let c = sheaf_module_for_twist(ext(2), 1).unwrap();
    assert_eq!(c.dims(), BTreeMap::from([(-1, 1), (0, 2)]));
    let j1 = shift(&truncate(&free(2), 1), 1);
    assert!(crate::grmodule::is_isomorphic_0(&j, &j1).unwrap());
}

#[test]
fn line_bundle_tables() {
    for nv in [2usize, 3] {
        let n = nv - 1;
        let t = cohomology_table(&k(nv, 0), (-5, 3), (-1, n as i32 + 1)).unwrap();
        for q in -1..=n as i32 + 1 {
            for d in -5..=3 {
                assert_eq!(t.get(q, d), line_bundle_h(n, q, d), "nv={nv} q={q} d={d}");
            }
        }
    }
}

#[test]
fn twisted_line_bundles() {
    let twists = TwistModules::new(ext(3)).unwrap();
    for t in [-2, 1] {
        let m = twists.module(t).unwrap().0.clone();
        let table = cohomology_table_with(&twists, &m, (-4, 2), (0, 2)).unwrap();
        for q in 0..=2 {
            for d in -4..=2 {
                assert_eq!(table.get(q, d), line_bundle_h(2, q, d + t), "t={t} q={q} d={d}");
            }
        }
    }
}

#[test]
fn free_table_vanishes() {
    let t = cohomology_table(&free(3), (-3, 3), (-1, 3)).unwrap();
    assert!(t.grid.is_empty());
}

#[test]
fn table_rendering() {
    let t = cohomology_table(&k(2, 0), (-2, 1), (0, 1)).unwrap();
    let lines = t.machine_lines();
    assert_eq!(lines[0], "h 1 -2 1");
    assert!(lines.contains(&"h 0 1 2".to_string()));
    let grid = t.render();
    assert!(grid.lines().next().unwrap().starts_with("q=1"));
}

#[test]
fn ranks() {
    assert_eq!(sheaf_rank(&k(3, 0), 4, 0).unwrap(), 1);
    assert_eq!(sheaf_rank(&free(3), 4, 0).unwrap(), 0);
    let j = sheaf_module_for_twist(ext(3), -1).unwrap();
    assert_eq!(sheaf_rank(&j, 4, 0).unwrap(), 1);
    for d in -2..=2 {
        assert_eq!(sheaf_rank(&k(3, d), 4, 0).unwrap(), 1);
    }
    let s = direct_sum(&k(3, 0), &j).unwrap();
    assert_eq!(sheaf_rank(&s, 4, 0).unwrap(), 2);
}

#[test]
fn rigidity_examples() {
    let r = rigidity_report(&k(3, 0), 2).unwrap();
    assert_eq!(r.end_stable_dim, 1);
    assert!(r.ext_self_dims.values().all(|v| *v == 0));
    assert!(r.indecomposable);
    let kk = direct_sum(&k(3, 0), &k(3, 0)).unwrap();
    let r = rigidity_report(&kk, 1).unwrap();
    assert_eq!(r.end_stable_dim, 4);
    assert!(!r.indecomposable);
    let j = sheaf_module_for_twist(ext(3), -1).unwrap();
    let r = rigidity_report(&j, 1).unwrap();
    assert_eq!((r.end_stable_dim, r.ext1()), (1, 0));
}

#[test]
fn theorem15_examples() {
    for d in -2..=2 {
        assert!(matches!(theorem15_check(&k(3, d)).unwrap(), Theorem15Verdict::Verified { .. }), "d={d}");
    }
    let kk = direct_sum(&k(3, 0), &k(3, 0)).unwrap();
    assert_eq!(
        theorem15_check(&kk).unwrap(),
        Theorem15Verdict::HypothesisNotMet {
            reason: "decomposable".into()
        }
    );
    let m = direct_sum(&k(3, 0), &k(3, 1)).unwrap();
    assert_eq!(
        theorem15_check(&m).unwrap(),
        Theorem15Verdict::HypothesisNotMet {
            reason: "not nice".into()
        }
    );
    assert_eq!(theorem15_check(&free(3)).unwrap().label(), "hypothesis-not-met");
}

#[test]
fn ar_vanishing_examples() {
    let rows = ar_vanishing_check(&k(3, 0), &k(3, 0), 2).unwrap();
    assert!(rows.iter().all(|r| r.pass));
    let c = sheaf_module_for_twist(ext(3), 1).unwrap();
    let rows = ar_vanishing_check(&k(3, 0), &c, 3).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.pass));
    let rows = ar_vanishing_check(&free(3), &k(3, 0), 2).unwrap();
    assert!(rows.iter().all(|r| r.stable_dim == 0));
    assert!(ar_vanishing_check(&k(2, 0), &k(2, 0), 1).is_err());
}

#[test]
fn component_examples() {
    assert_eq!(component_scan(&k(3, 0), &k(3, 0), 2).unwrap(), ComponentVerdict::SameComponent(0));
    let j = sheaf_module_for_twist(ext(3), -1).unwrap();
    assert_eq!(component_scan(&k(3, 0), &j, 4).unwrap(), ComponentVerdict::DistinctComponents);
    let t2 = tau(&k(3, 0), 2).unwrap();
    assert_eq!(component_scan(&k(3, 0), &t2, 3).unwrap(), ComponentVerdict::SameComponent(2));
    assert!(component_scan(&k(2, 0), &k(2, 0), 1).is_err());
}

fn small_module() -> impl Strategy<Value = DegreewiseModule> {
    (1usize..=2, 1usize..=2, 0usize..=2, any::<u64>()).prop_map(|(a, b, c, seed)| {
        let dims = BTreeMap::from([(0, a), (1, b), (2, c)]);
        random_module(ext(3), &dims, seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lxi_euler(m in small_module(), a in -3i64..=3, b in -3i64..=3) {
        let h = lxi_homology(&m, &xi(&[a, b, 1])).unwrap();
        let e: i64 = m.dims().iter().map(|(i, n)| if i % 2 == 0 { *n as i64 } else { -(*n as i64) }).sum();
        prop_assert_eq!(h.euler(), e);
    }

    #[test]
    fn phi_delta_squared(m in small_module()) {
        prop_assert!(phi_complex(&m).unwrap().delta_squared_vanishes());
    }

    #[test]
    fn table_shift_and_omega(m in small_module(), i in -1i32..=1) {
        let twists = TwistModules::new(ext(3)).unwrap();
        let base = cohomology_table_with(&twists, &m, (-4, 4), (-3, 5)).unwrap();
        let shifted = cohomology_table_with(&twists, &shift(&m, i), (-3, 3), (-2, 4)).unwrap();
        for q in -2..=4 {
            for d in -3..=3 {
                prop_assert_eq!(shifted.get(q, d), base.get(q + i, d - i));
            }
        }
        let om = omega_power(&m, 1).unwrap();
        let omt = cohomology_table_with(&twists, &om, (-3, 3), (-2, 4)).unwrap();
        for q in -2..=4 {
            for d in -3..=3 {
                prop_assert_eq!(omt.get(q, d), base.get(q - 1, d));
            }
        }
    }
}
