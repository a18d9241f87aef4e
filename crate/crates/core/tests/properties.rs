use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use gassmann::arith::{splitting_pattern, LocalDatum};
use gassmann::equivalence::{equivalent, Relation, Triple};
use gassmann::group::{coset_action, normal_core};
use gassmann::homdet::{bareiss, det_mod};
use gassmann::{EnumeratedGroup, GroupSpec, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn gens(n: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(n), 1..4)
}

fn s5() -> EnumeratedGroup {
    EnumeratedGroup::from_spec(GroupSpec::from_cycles(5, &["(1 2 3 4 5)", "(1 2)"]).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spec_text_round_trips(g in gens(7)) {
        let spec = GroupSpec::new(7, g).unwrap();
        prop_assert_eq!(GroupSpec::parse(&spec.to_text()).unwrap(), spec);
    }

    #[test]
    fn element_set_ignores_generator_order(g in gens(6)) {
        let a = EnumeratedGroup::from_spec(GroupSpec::new(6, g.clone()).unwrap()).unwrap();
        let rev: Vec<Permutation> = g.into_iter().rev().collect();
        let b = EnumeratedGroup::from_spec(GroupSpec::new(6, rev).unwrap()).unwrap();
        prop_assert_eq!(720 % a.order(), 0);
        let mut x: Vec<Vec<u32>> = a.elements().iter().map(|p| p.images().to_vec()).collect();
        let mut y: Vec<Vec<u32>> = b.elements().iter().map(|p| p.images().to_vec()).collect();
        x.sort();
        y.sort();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn lagrange_and_core(g in gens(5)) {
        let s5 = s5();
        let h = s5.subgroup_from_perms(&g).unwrap();
        let action = coset_action(&s5, &h);
        prop_assert_eq!(action.degree() * h.order(), 120);
        let core = normal_core(&s5, &h);
        prop_assert!(core.is_subgroup_of(&h) && s5.is_normal(&core));
        prop_assert!(action.kernel(&s5) == core);
    }

    #[test]
    fn bareiss_matches_elimination_mod_p(n in 1usize..6, seed in prop::collection::vec(-9i64..10, 25)) {
        let a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(seed[i * 5 + j])).collect()).collect();
        let d = bareiss(a.clone());
        for p in [7u64, 101, 65537] {
            let m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| (x.to_i64().unwrap().rem_euclid(p as i64)) as u64).collect()).collect();
            let want = (d.clone() % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
            prop_assert_eq!(BigInt::from(det_mod(m, p)), want);
        }
    }

    #[test]
    fn splitting_degree_is_the_index(h in gens(5), x in 0usize..120) {
        let s5 = s5();
        let h = s5.subgroup_from_perms(&h).unwrap();
        let datum = LocalDatum::unramified(&s5, x);
        let p = splitting_pattern(&s5, &h, &datum).unwrap();
        prop_assert_eq!(p.degree() as usize * h.order(), 120);
        prop_assert_eq!(p.sum_e() as usize, p.primes().len());
    }

    #[test]
    fn relations_are_monotone(a in 0usize..120, b in 0usize..120) {
        let s5 = s5();
        let (h1, h2) = (s5.subgroup(&[a]), s5.subgroup(&[b]));
        let t = Triple::InGroup { g: &s5, h1: &h1, h2: &h2 };
        let r = equivalent(&t, Relation::Rational).unwrap().verdict;
        let li = equivalent(&t, Relation::LocalIntegral).unwrap().verdict;
        let sv = equivalent(&t, Relation::Solvable).unwrap().verdict;
        prop_assert!(!sv || li);
        prop_assert!(!li || r);
        // cyclic subgroups of S5 are rationally equivalent only when conjugate
        prop_assert_eq!(r, sv);
    }
}
