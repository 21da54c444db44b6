use std::collections::BTreeMap;

use super::*;
use crate::algebra::Algebra;
use crate::grmodule::{
    construct_free, construct_simple, direct_sum, is_isomorphic_0, random_module, shift, strip_free_summands,
    truncate, validate,
};

fn ext(n: usize) -> Algebra {
    Algebra::exterior(n)
}

fn k0(n: usize) -> DegreewiseModule {
    construct_simple(ext(n), 0)
}

fn free(n: usize, gens: &[i32]) -> DegreewiseModule {
    construct_free(ext(n), gens, None).unwrap()
}

fn dims(m: &DegreewiseModule) -> Vec<(i32, usize)> {
    m.dims().into_iter().collect()
}

#[test]
fn cover_examples() {
    let c = projective_cover(&k0(2)).unwrap();
    assert_eq!(c.gens(), &[0]);
    assert!(c.map().is_homomorphism(&c.module(), &k0(2)));
    let j = truncate(&free(2, &[0]), 1);
    let c = projective_cover(&j).unwrap();
    assert_eq!(c.gens(), &[1, 1]);
    assert!(c.map().is_homomorphism(&c.module(), &j));
    let f = free(3, &[0, 2]);
    let c = projective_cover(&f).unwrap();
    assert_eq!(c.gens(), &[0, 2]);
    assert!(c.map().is_isomorphism(&c.module(), &f));
}

#[test]
fn syzygy_examples() {
    let s = syzygy(&k0(2)).unwrap();
    assert_eq!(dims(&s), vec![(1, 2), (2, 1)]);
    assert!(is_isomorphic_0(&s, &truncate(&free(2, &[0]), 1)).unwrap());
    assert!(syzygy(&free(2, &[0, 1])).unwrap().is_zero());
    assert_eq!(dims(&syzygy(&s).unwrap()), vec![(2, 3), (3, 2)]);
}

#[test]
fn cosyzygy_examples() {
    let back = cosyzygy(&syzygy(&k0(3)).unwrap()).unwrap();
    let core = strip_free_summands(&back).unwrap().core;
    assert!(is_isomorphic_0(&core, &k0(3)).unwrap());
    assert!(cosyzygy(&free(2, &[0])).unwrap().is_zero());
    assert_eq!(dims(&cosyzygy(&k0(2)).unwrap()), vec![(-2, 1), (-1, 2)]);
    assert!(cosyzygy(&construct_simple(Algebra::twostep(2), 0)).is_err());
}

#[test]
fn betti_examples() {
    let t = betti_table(&k0(2), 3).unwrap();
    for i in 0..=3usize {
        for j in -1..6 {
            let want = if j == i as i32 { i + 1 } else { 0 };
            assert_eq!(t.get(i, j), want);
        }
    }
    let t = betti_table(&free(3, &[0, 1]), 3).unwrap();
    assert_eq!((t.get(0, 0), t.get(0, 1), t.rank(1), t.rank(2)), (1, 1, 0, 0));
    let t = betti_table(&k0(3), 2).unwrap();
    assert_eq!((t.get(0, 0), t.get(1, 1), t.get(2, 2)), (1, 3, 6));
    assert!(t.render().contains("0:"));
}

#[test]
fn linearity_examples() {
    for b in 1..5 {
        assert!(is_linear(&k0(2), b).unwrap().is_linear());
    }
    let j1 = shift(&truncate(&free(2, &[0]), 1), 1);
    assert!(is_linear(&j1, 3).unwrap().is_linear());
    // R / soc(R) over two variables.
    let r = free(2, &[0]);
    let quot = {
        let mut action = BTreeMap::new();
        for j in 0..2 {
            action.insert((j, 0), r.act(j, 0).into_owned());
        }
        DegreewiseModule::from_dims_and_action(ext(2), &BTreeMap::from([(0, 1), (1, 2)]), action).unwrap()
    };
    assert!(validate(&quot).is_ok());
    assert_eq!(
        is_linear(&quot, 2).unwrap(),
        Linearity::NotLinear { row: 1, degree: 2, value: 1 }
    );
    let pair = direct_sum(&k0(2), &shift(&k0(2), 1)).unwrap();
    assert!(matches!(is_linear(&pair, 2), Err(BggError::NotSingleDegree(_))));
}

#[test]
fn resolution_is_minimal_and_exact() {
    let m = random_module(ext(3), &BTreeMap::from([(0, 2), (1, 2)]), 5);
    let res = resolve(&m, 3).unwrap();
    for i in 0..3 {
        let p = &res.covers[i].free;
        for (g, v) in res.differential_images(i) {
            // No unit entries: every image lies in J P_i.
            for (pos, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    assert!(!p.basis(g)[pos].1.is_empty());
                }
            }
        }
    }
    let lin = resolve(&k0(3), 3).unwrap();
    for i in 0..3 {
        let cs = lin.linear_coefficients(i).unwrap();
        assert_eq!(cs.len(), 3);
    }
}

#[test]
fn injective_envelope_embeds() {
    for m in [k0(2), truncate(&free(3, &[0]), 1), random_module(ext(3), &BTreeMap::from([(0, 2), (1, 3)]), 2)] {
        let env = InjectiveEnvelope::new(&m).unwrap();
        let i_mod = graded_dual(&env.dual_cover.module()).unwrap();
        let mut mats = BTreeMap::new();
        for d in m.degrees() {
            let iota = env.iota(d).unwrap();
            assert_eq!(iota.rank(), m.dim(d));
            mats.insert(d, iota);
        }
        assert!(GradedMap::from_mats(mats).is_homomorphism(&m, &i_mod));
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn omega_inverts_cosyzygy(a in 0usize..3, b in 0usize..3, seed in 0u64..500) {
            let m = random_module(ext(2), &BTreeMap::from([(0, a.max(1)), (1, b)]), seed);
            let core = strip_free_summands(&m).unwrap().core;
            prop_assume!(!core.is_zero());
            let there = strip_free_summands(&syzygy(&cosyzygy(&core).unwrap()).unwrap()).unwrap().core;
            prop_assert!(is_isomorphic_0(&there, &core).unwrap());
            let back = strip_free_summands(&cosyzygy(&syzygy(&core).unwrap()).unwrap()).unwrap().core;
            prop_assert!(is_isomorphic_0(&back, &core).unwrap());
        }

        #[test]
        fn betti_rows_match_syzygy_generators(a in 1usize..3, b in 0usize..3, seed in 0u64..500) {
            let m = random_module(ext(3), &BTreeMap::from([(0, a), (1, b)]), seed);
            let t = betti_table(&m, 2).unwrap();
            let mut cur = m.clone();
            for i in 0..=2 {
                let gens = projective_cover(&cur).unwrap().gens().to_vec();
                prop_assert_eq!(gens.len(), t.rank(i));
                for g in gens {
                    prop_assert!(t.get(i, g) > 0);
                }
                cur = syzygy(&cur).unwrap();
            }
        }
    }
}
