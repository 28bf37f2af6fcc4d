use gamble_algebra::algebra::{combine, extract, is_support};
use gamble_algebra::cone::MeasurableSubspace;
use gamble_algebra::partition::{cond_independent, independent};
use gamble_algebra::phi::{closure, natural_extension};
use gamble_algebra::random::Sampler;
use gamble_algebra::{ConeV, Gamble, Partition, PhiElement, PossibilitySpace, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn space(n: usize) -> PossibilitySpace {
    PossibilitySpace::new(n).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(48)
}

/// Worlds ω, ω′ equivalent under `given` always admit a ω″ equivalent to ω
/// under `x ∨ given` and to ω′ under `y ∨ given`.
fn oracle_ci(x: &Partition, y: &Partition, given: &Partition) -> bool {
    let xz = x.join(given).unwrap();
    let yz = y.join(given).unwrap();
    let n = x.space().size();
    (0..n).all(|a| {
        (0..n)
            .filter(|&b| given.equivalent(a, b))
            .all(|b| (0..n).any(|c| xz.equivalent(a, c) && yz.equivalent(b, c)))
    })
}

fn random_partition(s: &mut Sampler, n: usize) -> Partition {
    let blocks = 1 + s.below(n);
    s.partition(space(n), blocks)
}

fn combination_of(gs: &[Gamble], weights: &[Rational], n: usize) -> Vec<Rational> {
    let mut sum = vec![Rational::zero(); n];
    for (g, w) in gs.iter().zip(weights) {
        for (s, v) in sum.iter_mut().zip(g.values()) {
            *s += w * v;
        }
    }
    sum
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn v_and_h_forms_describe_the_same_cone(seed in any::<u64>(), n in 2usize..5, k in 0usize..6) {
        let mut s = Sampler::new(seed);
        let gens = s.gamble_set::<Rational>(space(n), k);
        let v = ConeV::new(space(n), gens).unwrap();
        let back = v.to_h().to_v();
        prop_assert!(v.same_set(&back).unwrap());
        for _ in 0..5 {
            let f = s.gamble::<Rational>(space(n));
            prop_assert_eq!(v.contains(&f).unwrap(), v.to_h().contains(&f).unwrap());
        }
    }

    #[test]
    fn closure_is_a_closure_operator(seed in any::<u64>(), n in 2usize..5, k in 1usize..5) {
        let mut s = Sampler::new(seed);
        let a = s.gamble_set::<Rational>(space(n), k);
        let mut b = a.clone();
        b.extend(s.gamble_set::<Rational>(space(n), 2));
        let ca = closure(space(n), &a).unwrap();
        let cb = closure(space(n), &b).unwrap();
        for g in &a {
            prop_assert!(ca.contains(g).unwrap());
        }
        prop_assert!(ca.leq(&cb).unwrap());
        if let Ok(gens) = ca.generators() {
            let again = closure(space(n), gens).unwrap();
            prop_assert!(again.same(&ca).unwrap());
        }
    }

    #[test]
    fn coherent_closures_satisfy_the_rationality_axioms(seed in any::<u64>(), n in 2usize..5, k in 1usize..4) {
        let mut s = Sampler::new(seed);
        let d = s.coherent::<Rational>(space(n), k);
        prop_assume!(!d.is_top());
        for _ in 0..6 {
            let f = s.nonzero_gamble::<Rational>(space(n));
            let pos: Vec<Rational> = f.values().iter().map(|v| v.abs()).collect();
            let pos = Gamble::new(pos).unwrap();
            prop_assert!(d.contains(&pos).unwrap(), "accepting partial gains");
            prop_assert!(!d.contains(&pos.scale(&Rational::from_integer((-1).into()))).unwrap(), "avoiding partial loss");
        }
        let gens = d.generators().unwrap().to_vec();
        for g in &gens {
            let c = s.rational::<Rational>().abs() + Rational::new(1.into(), 7.into());
            prop_assert!(d.contains(&g.scale(&c)).unwrap(), "positive homogeneity");
        }
        for (g, h) in gens.iter().zip(gens.iter().skip(1)) {
            let sum: Vec<Rational> = g.values().iter().zip(h.values()).map(|(a, b)| a + b).collect();
            let sum = Gamble::new(sum).unwrap();
            if !sum.is_zero() {
                prop_assert!(d.contains(&sum).unwrap(), "additivity");
            }
        }
    }

    #[test]
    fn zero_weights_are_a_certificate(seed in any::<u64>(), n in 2usize..5, k in 1usize..5) {
        let mut s = Sampler::new(seed);
        let mut gens = s.gamble_set::<Rational>(space(n), k);
        gens.extend((0..n).map(|w| Gamble::indicator(space(n), w)));
        let cone = ConeV::new(space(n), gens).unwrap();
        let top = natural_extension(space(n), cone.generators()).unwrap().is_top();
        match cone.nontrivial_zero_weights() {
            Some(w) => {
                prop_assert!(top);
                let gs = cone.generators();
                prop_assert_eq!(w.len(), gs.len());
                prop_assert!(w.iter().all(|x| !x.is_negative()));
                prop_assert_eq!(w.iter().fold(Rational::zero(), |a, b| a + b), Rational::from_integer(1.into()));
                prop_assert!(combination_of(gs, &w, n).iter().all(Zero::is_zero));
            }
            None => prop_assert!(!top),
        }
    }

    #[test]
    fn measurable_subspaces_follow_the_partition_order(seed in any::<u64>(), n in 2usize..7) {
        let mut s = Sampler::new(seed);
        let x = random_partition(&mut s, n);
        let y = random_partition(&mut s, n);
        let lx = MeasurableSubspace::<Rational>::new(&x);
        let ly = MeasurableSubspace::<Rational>::new(&y);
        prop_assert_eq!(lx.is_subspace_of(&ly).unwrap(), x.leq(&y).unwrap());
    }

    #[test]
    fn conditional_independence_matches_the_world_oracle(seed in any::<u64>(), n in 2usize..8) {
        let mut s = Sampler::new(seed);
        let x = random_partition(&mut s, n);
        let y = random_partition(&mut s, n);
        let z = random_partition(&mut s, n);
        prop_assert_eq!(cond_independent(&[&x, &y], &z).unwrap(), oracle_ci(&x, &y, &z));
        let bottom = Partition::bottom(space(n));
        prop_assert_eq!(independent(&[&x, &y]).unwrap(), oracle_ci(&x, &y, &bottom));
    }

    #[test]
    fn extraction_is_supported_and_absorbed(seed in any::<u64>(), n in 2usize..5) {
        let mut s = Sampler::new(seed);
        let d: PhiElement = s.coherent(space(n), 3);
        let x = random_partition(&mut s, n);
        let e = extract(&x, &d).unwrap();
        prop_assert!(e.leq(&d).unwrap());
        prop_assert!(is_support(&x, &e).unwrap());
        prop_assert!(combine(&d, &e).unwrap().same(&d).unwrap());
        prop_assert!(extract(&x, &e).unwrap().same(&e).unwrap());
    }
}
