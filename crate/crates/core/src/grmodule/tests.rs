use std::collections::BTreeMap;

use super::*;
use crate::algebra::Algebra;

fn ext(n: usize) -> Algebra {
    Algebra::exterior(n)
}

fn k0(n: usize) -> DegreewiseModule {
    construct_simple(ext(n), 0)
}

fn free0(n: usize) -> DegreewiseModule {
    construct_free(ext(n), &[0], None).unwrap()
}

/// Twostep module with `M_0 = Q^2`, `M_1 = Q`, `x_0 = [1 0]`, `x_1 = [0 1]`.
fn loewy2() -> DegreewiseModule {
    let a = Algebra::twostep(2);
    let mut action = BTreeMap::new();
    action.insert((0, 0), RatMatrix::from_i64(&[&[1, 0]]));
    action.insert((1, 0), RatMatrix::from_i64(&[&[0, 1]]));
    DegreewiseModule::from_dims_and_action(a, &BTreeMap::from([(0, 2), (1, 1)]), action).unwrap()
}

fn dims(m: &DegreewiseModule) -> Vec<(i32, usize)> {
    m.dims().into_iter().collect()
}

#[test]
fn validate_examples() {
    assert!(validate(&free0(2)).is_ok());
    assert!(validate(&free0(3)).is_ok());
    let mut action = BTreeMap::new();
    action.insert((0, 0), RatMatrix::from_i64(&[&[1]]));
    action.insert((0, 1), RatMatrix::from_i64(&[&[1]]));
    let bad = DegreewiseModule::from_dims_and_action(ext(2), &BTreeMap::from([(0, 1), (1, 1), (2, 1)]), action).unwrap();
    let v = validate(&bad).unwrap_err();
    assert_eq!(v.relation, "square-zero");
    assert_eq!(v.to_string(), "violation=square-zero var=0 degree=0");
    let s = construct_free(Algebra::symmetric(2), &[0], Some(4)).unwrap();
    assert!(validate(&s).is_ok());
}

#[test]
fn free_module_dims() {
    assert_eq!(dims(&free0(2)), vec![(0, 1), (1, 2), (2, 1)]);
    assert_eq!(dims(&free0(3)), vec![(0, 1), (1, 3), (2, 3), (3, 1)]);
    let s = construct_free(Algebra::symmetric(2), &[0], Some(3)).unwrap();
    assert_eq!(dims(&s), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    assert!(construct_free(Algebra::symmetric(2), &[0], None).is_err());
}

#[test]
fn simple_shift_truncate_sum() {
    let k = k0(2);
    assert!(validate(&k).is_ok());
    assert_eq!(dims(&shift(&k, 3)), vec![(-3, 1)]);
    let m = free0(3);
    assert_eq!(shift(&shift(&m, 2), -2), m);
    assert_eq!(shift(&m, 1), construct_free(ext(3), &[-1], None).unwrap());
    let j = truncate(&free0(2), 1);
    assert_eq!(dims(&j), vec![(1, 2), (2, 1)]);
    assert_eq!(truncate(&m, m.lo()), m);
    assert!(truncate(&k, 1).is_zero());
    assert_eq!(direct_sum(&m, &DegreewiseModule::zero(ext(3))).unwrap(), m);
    let pair = direct_sum(&k, &shift(&k, 1)).unwrap();
    assert_eq!(dims(&pair), vec![(-1, 1), (0, 1)]);
    assert!(validate(&direct_sum(&free0(2), &j).unwrap()).is_ok());
    assert!(direct_sum(&k, &construct_simple(Algebra::twostep(2), 0)).is_err());
    let s2 = construct_simple(Algebra::symmetric(2), 2);
    assert_eq!(dims(&s2), vec![(2, 1)]);
}

#[test]
fn dual_examples() {
    let k = k0(2);
    assert_eq!(graded_dual(&k).unwrap(), k);
    let d = graded_dual(&free0(2)).unwrap();
    assert_eq!(dims(&d), vec![(-2, 1), (-1, 2), (0, 1)]);
    assert!(validate(&d).is_ok());
    let f = construct_free(ext(2), &[-2], None).unwrap();
    assert!(is_isomorphic_0(&d, &f).unwrap());
    let m = random_module(ext(3), &BTreeMap::from([(0, 2), (1, 3), (2, 2)]), 7);
    assert!(is_isomorphic_0(&graded_dual(&graded_dual(&m).unwrap()).unwrap(), &m).unwrap());
    assert!(graded_dual(&construct_simple(Algebra::twostep(2), 0)).is_err());
}

#[test]
fn hom_examples() {
    assert_eq!(hom0(&k0(2), &k0(2)).unwrap().dim(), 1);
    assert_eq!(hom0(&free0(2), &k0(2)).unwrap().dim(), 1);
    assert_eq!(hom0(&k0(2), &free0(2)).unwrap().dim(), 0);
    let h = hom0(&free0(3), &free0(3)).unwrap();
    for f in h.maps() {
        assert!(f.is_homomorphism(&free0(3), &free0(3)));
    }
    assert_eq!(h.dim(), 1);
}

#[test]
fn ext_examples() {
    assert_eq!(ext1_0(&k0(2), &k0(2)).unwrap().dim(), 0);
    // k(1) sits in degree -1, below k: no room to glue it in as a submodule.
    let k1 = shift(&k0(2), 1);
    assert_eq!(ext1_0(&k0(2), &k1).unwrap().dim(), 0);
    assert_eq!(ext1_0(&k0(2), &shift(&k0(2), -1)).unwrap().dim(), 2);
    let e = ext1_0(&k1, &k0(2)).unwrap();
    assert_eq!(e.dim(), 2);
    for c in e.classes() {
        let mid = c.realize(&k1, &k0(2)).unwrap();
        assert!(validate(&mid).is_ok());
        assert!(!is_isomorphic_0(&mid, &direct_sum(&k0(2), &k1).unwrap()).unwrap());
        assert!(!e.is_trivial(&c));
    }
    assert!(e.is_trivial(&ExtensionClass::zero()));
    assert_eq!(ext1_0(&loewy2(), &loewy2()).unwrap().dim(), 0);
}

#[test]
fn end_examples() {
    let r = end0_is_local(&k0(2)).unwrap();
    assert!(r.indecomposable());
    assert_eq!(r.residue_dim, 1);
    let kk = direct_sum(&k0(2), &k0(2)).unwrap();
    let r = end0_is_local(&kk).unwrap();
    assert_eq!(r.dim, 4);
    assert!(!r.indecomposable());
    let r = end0_is_local(&loewy2()).unwrap();
    assert_eq!((r.dim, r.residue_dim, r.division), (1, 1, true));
    assert!(end0_is_local(&DegreewiseModule::zero(ext(2))).is_err());
    let j = truncate(&free0(2), 1);
    assert!(!end0_is_local(&direct_sum(&j, &k0(2)).unwrap()).unwrap().indecomposable());
}

#[test]
fn strip_examples() {
    let f2 = construct_free(ext(2), &[0, 1], None).unwrap();
    let s = strip_free_summands(&f2).unwrap();
    assert!(s.core.is_zero());
    assert_eq!(s.free_part, vec![0, 1]);
    let s = strip_free_summands(&k0(2)).unwrap();
    assert_eq!(s.core, k0(2));
    assert!(s.free_part.is_empty());
    let s = strip_free_summands(&direct_sum(&k0(3), &free0(3)).unwrap()).unwrap();
    assert!(is_isomorphic_0(&s.core, &k0(3)).unwrap());
    assert_eq!(s.free_part, vec![0]);
    assert!(strip_free_summands(&s.core).unwrap().free_part.is_empty());
}

#[test]
fn iso_examples() {
    let m = random_module(ext(2), &BTreeMap::from([(0, 2), (1, 2)]), 3);
    assert!(is_isomorphic_0(&m, &shift(&shift(&m, 1), -1)).unwrap());
    assert!(!is_isomorphic_0(&k0(2), &shift(&k0(2), 1)).unwrap());
    // J has dims (2, 1) and its dual (1, 2), so no shift identifies them.
    let j = truncate(&free0(2), 1);
    for i in -4..=4 {
        assert!(!is_isomorphic_0(&j, &shift(&graded_dual(&j).unwrap(), i)).unwrap());
    }
    let f = free0(3);
    assert!(is_isomorphic_0(&f, &shift(&graded_dual(&f).unwrap(), -3)).unwrap());
}

#[test]
fn random_examples() {
    for seed in 0..5 {
        assert_eq!(random_module(ext(2), &BTreeMap::from([(0, 1)]), seed), k0(2));
    }
    for seed in 1..=100 {
        let m = random_module(Algebra::twostep(2), &BTreeMap::from([(0, 2), (1, 1)]), seed);
        assert!(validate(&m).is_ok());
    }
    let p = BTreeMap::from([(0, 2), (1, 3), (2, 2)]);
    assert_eq!(random_module(ext(3), &p, 11), random_module(ext(3), &p, 11));
    for kind in [Algebra::exterior(3), Algebra::symmetric(3), Algebra::twostep(3)] {
        for seed in 0..20 {
            assert!(validate(&random_module(kind, &p, seed)).is_ok());
        }
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn profile() -> impl Strategy<Value = BTreeMap<i32, usize>> {
        (prop::collection::vec(0usize..3, 1..4), -2i32..2).prop_map(|(v, lo)| {
            v.into_iter().enumerate().map(|(i, n)| (lo + i as i32, n)).collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn hom_dim_shift_invariant(p in profile(), q in profile(), s1 in 0u64..1000, s2 in 0u64..1000, i in -3i32..3) {
            let m = random_module(ext(3), &p, s1);
            let n = random_module(ext(3), &q, s2);
            prop_assert_eq!(hom0(&m, &n).unwrap().dim(), hom0(&shift(&m, i), &shift(&n, i)).unwrap().dim());
        }

        #[test]
        fn ext_into_free_vanishes(p in profile(), s in 0u64..1000, g in -2i32..2) {
            let m = random_module(ext(2), &p, s);
            let f = construct_free(ext(2), &[g], None).unwrap();
            prop_assert_eq!(ext1_0(&m, &f).unwrap().dim(), 0);
        }

        #[test]
        fn ext_classes_realize(p in profile(), q in profile(), s1 in 0u64..1000, s2 in 0u64..1000) {
            let m = random_module(ext(2), &p, s1);
            let n = random_module(ext(2), &q, s2);
            let e = ext1_0(&m, &n).unwrap();
            for c in e.classes() {
                prop_assert!(c.is_cocycle(&m, &n));
            }
        }

        #[test]
        fn strip_is_idempotent(p in profile(), s in 0u64..1000) {
            let m = random_module(ext(2), &p, s);
            let st = strip_free_summands(&m).unwrap();
            prop_assert!(strip_free_summands(&st.core).unwrap().free_part.is_empty());
            let mut back = st.core.clone();
            for g in &st.free_part {
                back = direct_sum(&back, &construct_free(ext(2), &[*g], None).unwrap()).unwrap();
            }
            prop_assert!(is_isomorphic_0(&back, &m).unwrap());
        }

        #[test]
        fn sums_are_decomposable(p in profile(), q in profile(), s1 in 0u64..1000, s2 in 0u64..1000) {
            let m = random_module(ext(2), &p, s1);
            let n = random_module(ext(2), &q, s2);
            prop_assume!(!m.is_zero() && !n.is_zero());
            prop_assert!(!end0_is_local(&direct_sum(&m, &n).unwrap()).unwrap().indecomposable());
        }
    }
}
