use proptest::prelude::*;
use syzlab_core::criteria::no_summand_audit;
use syzlab_core::field::{Field, Fp};
use syzlab_core::homology::{length_over_k, tor_range};
use syzlab_core::invariants::module_hilbert;
use syzlab_core::module::PresentedModule;
use syzlab_core::monomial::Monomial;
use syzlab_core::poly::Polynomial;
use syzlab_core::resolve::minimal_free_resolution;
use syzlab_core::ring::GradedRing;

const NV: usize = 2;

fn fp() -> Fp {
    Fp::new(32003).unwrap()
}

fn poly_of(terms: Vec<(Monomial, u64)>) -> Polynomial<Fp> {
    Polynomial::from_terms(&fp(), NV, terms)
}

fn arb_mono(maxdeg: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=maxdeg, NV).prop_map(|e| Monomial::from_exps(&e))
}

fn arb_positive_mono(maxdeg: u32) -> impl Strategy<Value = Monomial> {
    arb_mono(maxdeg).prop_filter("degree at least one", |m| m.degree() >= 1)
}

fn arb_poly() -> impl Strategy<Value = Polynomial<Fp>> {
    prop::collection::vec((arb_mono(2), 1u64..32003), 0..5).prop_map(poly_of)
}

/// Artinian quotients of F_p[x,y]: pure powers plus an optional
/// homogeneous binomial x^d - c y^d.
fn arb_ring() -> impl Strategy<Value = GradedRing<Fp>> {
    (2u32..=3, 2u32..=3, prop::option::of((1u32..=2, 1i64..100))).prop_map(|(a, b, bin)| {
        let k = fp();
        let mut gens = vec![
            poly_of(vec![(Monomial::from_exps(&[a, 0]), 1)]),
            poly_of(vec![(Monomial::from_exps(&[0, b]), 1)]),
        ];
        if let Some((d, c)) = bin {
            gens.push(Polynomial::from_terms(
                &k,
                NV,
                vec![
                    (Monomial::from_exps(&[d, 0]), 1),
                    (Monomial::from_exps(&[0, d]), k.from_i64(-c)),
                ],
            ));
        }
        GradedRing::define(k, vec!["x".into(), "y".into()], gens).unwrap()
    })
}

fn arb_cyclic() -> impl Strategy<Value = (GradedRing<Fp>, PresentedModule<Fp>)> {
    (arb_ring(), prop::collection::vec(arb_positive_mono(2), 0..=2)).prop_map(|(ring, monos)| {
        let gens: Vec<Polynomial<Fp>> =
            monos.iter().map(|m| poly_of(vec![(m.clone(), 1)])).collect();
        let m = PresentedModule::cyclic(ring.clone(), &gens).unwrap();
        (ring, m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_arithmetic_satisfies_ring_axioms(
        f in arb_poly(),
        g in arb_poly(),
        h in arb_poly(),
    ) {
        let k = fp();
        prop_assert_eq!(f.add(&k, &g), g.add(&k, &f));
        prop_assert_eq!(f.mul(&k, &g), g.mul(&k, &f));
        prop_assert_eq!(
            f.add(&k, &g).mul(&k, &h),
            f.mul(&k, &h).add(&k, &g.mul(&k, &h))
        );
        prop_assert_eq!(f.mul(&k, &g).mul(&k, &h), f.mul(&k, &g.mul(&k, &h)));
        prop_assert!(f.sub(&k, &f).is_zero());
        prop_assert_eq!(f.mul(&k, &Polynomial::one(&k, NV)), f.clone());
    }

    #[test]
    fn degrevlex_is_total_and_multiplicative(
        a in arb_mono(3),
        b in arb_mono(3),
        c in arb_mono(2),
    ) {
        use std::cmp::Ordering;
        match a.cmp(&b) {
            Ordering::Equal => prop_assert_eq!(&a, &b),
            ord => {
                prop_assert_eq!(b.cmp(&a), ord.reverse());
                prop_assert_eq!(a.mul(&c).cmp(&b.mul(&c)), ord);
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_linear_and_kills_members(
        ring in arb_ring(),
        f in arb_poly(),
        g in arb_poly(),
    ) {
        let k = ring.field();
        let nf = ring.nf(&f);
        prop_assert_eq!(ring.nf(&nf), nf.clone());
        for gen in ring.ideal_gens() {
            prop_assert!(ring.nf(&gen.mul(k, &g)).is_zero());
        }
        let direct = ring.nf(&f.add(k, &g));
        let piecewise = ring.nf(&ring.nf(&f).add(k, &ring.nf(&g)));
        prop_assert_eq!(direct, piecewise);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_basis_ignores_generator_order(
        (ring, perm) in arb_ring().prop_flat_map(|r| {
            let n = r.ideal_gens().len();
            let idx: Vec<usize> = (0..n).collect();
            (Just(r), Just(idx).prop_shuffle())
        })
    ) {
        let gens: Vec<Polynomial<Fp>> =
            perm.iter().map(|&i| ring.ideal_gens()[i].clone()).collect();
        let re = GradedRing::define(fp(), vec!["x".into(), "y".into()], gens).unwrap();
        prop_assert_eq!(ring.gb(), re.gb());
    }

    #[test]
    fn resolution_differentials_compose_to_zero((ring, m) in arb_cyclic()) {
        let res = minimal_free_resolution(&m, 3);
        for i in 0..res.diff.len().saturating_sub(1) {
            let comp = res.diff[i].compose(ring.field(), &res.diff[i + 1]);
            prop_assert!(comp.map_entries(|f| ring.nf(f)).is_zero());
        }
    }

    #[test]
    fn tor_lengths_are_symmetric(
        ((ring, m), extra) in (arb_cyclic(), prop::collection::vec(arb_positive_mono(2), 0..=2))
    ) {
        let gens: Vec<Polynomial<Fp>> =
            extra.iter().map(|mo| poly_of(vec![(mo.clone(), 1)])).collect();
        let n = PresentedModule::cyclic(ring.clone(), &gens).unwrap();
        let mn = tor_range(&m, &n, 3);
        let nm = tor_range(&n, &m, 3);
        for i in 0..=3 {
            prop_assert_eq!(length_over_k(&mn[i]), length_over_k(&nm[i]));
        }
    }

    #[test]
    fn hilbert_function_adds_over_direct_sums(
        ((ring, m), extra) in (arb_cyclic(), prop::collection::vec(arb_positive_mono(2), 0..=2))
    ) {
        let gens: Vec<Polynomial<Fp>> =
            extra.iter().map(|mo| poly_of(vec![(mo.clone(), 1)])).collect();
        let n = PresentedModule::cyclic(ring, &gens).unwrap();
        let s = PresentedModule::direct_sum(&[&m, &n]).unwrap();
        let hm = module_hilbert(&m);
        let hn = module_hilbert(&n);
        let hs = module_hilbert(&s);
        for d in 0..=6 {
            prop_assert_eq!(hs.value(d), hm.value(d) + hn.value(d));
        }
    }

    #[test]
    fn syzygies_over_artinian_rings_never_split_free((_, m) in arb_cyclic()) {
        let audit = no_summand_audit(&m, 4);
        prop_assert!(audit.holds, "violations at {:?}", audit.violations);
    }
}
