mod common;

use proptest::prelude::*;
use qhom::algebra::{Polynomial, Ring};
use qhom::complexes::koszul::koszul_complex;
use qhom::complexes::ChainComplex;
use qhom::duality::matlis_dual;
use qhom::invariants::corpus::random_artinian_modules;
use qhom::invariants::depth;
use qhom::modules::GradedModule;
use qhom::quasires::dimension::VerdictOptions;
use qhom::quasires::qid_certified;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn quotient() -> Ring {
    ring(&["x", "y", "z"], &["x^2 - y*z", "y^3", "x*z^2"])
}

fn random_poly(r: &Ring, rng: &mut ChaCha8Rng) -> Polynomial {
    let pr = r.poly();
    let mut p = pr.zero();
    for d in 0..=4 {
        if rng.gen_bool(0.5) {
            p = p.add(&random_form(pr, d, 0.4, rng), pr);
        }
    }
    p
}

fn random_resolution(seed: u64) -> ChainComplex {
    let m = &random_artinian_modules(seed, 1)[0];
    ChainComplex::free_resolution(m, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_linear_and_idempotent(seed in any::<u64>()) {
        let r = quotient();
        let pr = r.poly();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = (random_poly(&r, &mut rng), random_poly(&r, &mut rng));
        let nf = r.reduce(&f);
        prop_assert_eq!(r.reduce(&nf), nf.clone());
        prop_assert_eq!(r.reduce(&f.add(&g, pr)), nf.add(&r.reduce(&g), pr));
        prop_assert_eq!(r.reduce(&f.mul(&g, pr)), r.reduce(&nf.mul(&r.reduce(&g), pr)));
    }

    #[test]
    fn shifts_compose(seed in any::<u64>(), a in -3i32..3, b in -3i32..3) {
        let c = random_resolution(seed);
        let (x, y) = (c.shift(a).shift(b), c.shift(a + b));
        prop_assert_eq!(x.lo, y.lo);
        for i in x.lo..=x.hi() + 1 {
            prop_assert_eq!(x.differential(i), y.differential(i));
        }
        prop_assert!(c.shift(a).validate().is_ok());
    }

    #[test]
    fn double_dual_agrees_up_to_sign(seed in any::<u64>()) {
        let c = random_resolution(seed);
        let d = c.dual();
        prop_assert!(d.validate().is_ok());
        let dd = d.dual();
        prop_assert_eq!(dd.lo, c.lo);
        for i in c.lo..=c.hi() {
            prop_assert_eq!(dd.component(i), c.component(i));
            let (x, y) = (dd.differential(i), c.differential(i));
            prop_assert!(x == y || x == y.neg());
        }
    }

    #[test]
    fn cones_of_multiplication_are_complexes(seed in any::<u64>()) {
        let c = random_resolution(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let f = random_form(c.ring.poly(), rng.gen_range(1..=2), 0.5, &mut rng);
        let cone = c.multiplication_map(&f).cone().unwrap();
        prop_assert!(cone.validate().is_ok());
        prop_assert!(cone.euler_identity_holds(&cone.homology_table()));
    }

    #[test]
    fn hilbert_series_is_additive(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m = random_artinian_modules(s1, 1).remove(0);
        let n = GradedModule::residue_field(m.ring.clone()).twist(s2 as i32 % 3);
        let sum = m.direct_sum(&n).unwrap();
        prop_assert_eq!(sum.hilbert_series(), m.hilbert_series().add(&n.hilbert_series()));
    }

    #[test]
    fn matlis_dual_reverses_degrees(seed in any::<u64>()) {
        let m = random_artinian_modules(seed, 1).remove(0);
        let d = matlis_dual(&m).unwrap().module;
        for deg in -4..=4 {
            prop_assert_eq!(d.dim(deg), m.dim(-deg));
        }
    }

    #[test]
    fn koszul_complexes_are_complexes(seed in any::<u64>(), len in 1usize..=3) {
        let r = quotient();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs: Vec<Polynomial> = (0..len).map(|_| random_form(r.poly(), rng.gen_range(1..=2), 0.5, &mut rng)).collect();
        let k = koszul_complex(&fs, &r).unwrap();
        prop_assert!(k.validate().is_ok());
        prop_assert!(k.euler_identity_holds(&k.homology_table()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn direct_sums_keep_depth_and_qid(seed in any::<u64>()) {
        let m = random_artinian_modules(seed, 1).remove(0);
        let mm = m.power(2);
        prop_assert_eq!(depth(&m).unwrap(), depth(&mm).unwrap());
        let a = qid_certified(&m, VerdictOptions::default()).unwrap();
        let b = qid_certified(&mm, VerdictOptions::default()).unwrap();
        prop_assert_eq!(a.finite_value(), b.finite_value());
    }
}
