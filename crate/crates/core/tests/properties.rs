mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{q, random_bundle, random_bundle_on, random_complex, Q};
use twovec::bundle::{
    compose_changes, gerbe_class, identity_change, pullback, refine, swap_change, validate_bundle, validate_change,
    whitney_sum, OrderedComplex, PhaseCocycle, SimplicialMap,
};
use twovec::io::{bundle_to_json, parse_bundle};

/// A complex over `0..count` whose simplices map to simplices of `target`
/// under a weakly increasing vertex map.
fn random_map_into(rng: &mut ChaCha8Rng, target: &OrderedComplex, count: usize) -> SimplicialMap {
    let tv = target.vertices();
    let mut images: Vec<usize> = (0..count).map(|_| tv[rng.gen_range(0..tv.len())]).collect();
    images.sort_unstable();
    let map: BTreeMap<usize, usize> = images.iter().copied().enumerate().collect();
    let mut facets: Vec<Vec<usize>> = (0..count).map(|v| vec![v]).collect();
    for _ in 0..8 {
        let size = rng.gen_range(2..=4usize.min(count.max(2)));
        let mut f: Vec<usize> = (0..size).map(|_| rng.gen_range(0..count)).collect();
        f.sort_unstable();
        f.dedup();
        let mut image: Vec<usize> = f.iter().map(|v| map[v]).collect();
        image.dedup();
        if target.contains(&image) {
            facets.push(f);
        }
    }
    SimplicialMap {
        source: OrderedComplex::from_facets(&facets).unwrap(),
        map,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_bundles_validate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_bundle(&mut rng);
        let report = validate_bundle(&b);
        prop_assert!(report.is_valid(), "{}", report);
    }

    #[test]
    fn whitney_sum_is_valid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_bundle(&mut rng);
        let rank = rng.gen_range(1..=2);
        let f = random_bundle_on(&mut rng, e.base(), rank);
        let ef = whitney_sum(&e, &f).unwrap();
        prop_assert_eq!(ef.rank(), e.rank() + f.rank());
        prop_assert!(validate_bundle(&ef).is_valid());
        let fe = whitney_sum(&f, &e).unwrap();
        let swap = swap_change(&e, &f).unwrap();
        prop_assert!(validate_change(&swap, &ef, &fe).unwrap().is_valid());
    }

    #[test]
    fn identity_change_is_valid_and_neutral(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_bundle(&mut rng);
        let f = random_bundle_on(&mut rng, e.base(), 1);
        let id = identity_change(&e);
        prop_assert!(validate_change(&id, &e, &e).unwrap().is_valid());
        let ef = whitney_sum(&e, &f).unwrap();
        let fe = whitney_sum(&f, &e).unwrap();
        let swap = swap_change(&e, &f).unwrap();
        let left = compose_changes(&identity_change(&ef), &swap, &ef, &ef, &fe).unwrap();
        prop_assert!(validate_change(&left, &ef, &fe).unwrap().is_valid());
        let right = compose_changes(&swap, &identity_change(&fe), &ef, &fe, &fe).unwrap();
        prop_assert!(validate_change(&right, &ef, &fe).unwrap().is_valid());
        // swapping twice returns to E ⊕ F
        let back = swap_change(&f, &e).unwrap();
        let twice = compose_changes(&swap, &back, &ef, &fe, &ef).unwrap();
        prop_assert!(validate_change(&twice, &ef, &ef).unwrap().is_valid());
    }

    #[test]
    fn pullback_and_refinement_preserve_validity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_bundle(&mut rng);
        let count = rng.gen_range(1..=7);
        let f = random_map_into(&mut rng, b.base(), count);
        let pulled = pullback(&b, &f).unwrap();
        prop_assert!(validate_bundle(&pulled).is_valid());
        let refined = refine(&b, &f).unwrap();
        prop_assert_eq!(&refined, &pulled);
        let same = pullback(&b, &SimplicialMap::identity(b.base())).unwrap();
        prop_assert_eq!(same, b);
    }

    #[test]
    fn bundle_files_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_bundle(&mut rng);
        let text = bundle_to_json(&b);
        prop_assert_eq!(parse_bundle(&text).unwrap(), b);
    }

    #[test]
    fn gerbe_class_is_additive(seed in any::<u64>(), a in 0u8..2, b in 0u8..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = suspended_rp2();
        let gen = generator(&k);
        let cocycle = |rng: &mut ChaCha8Rng, times: u8| {
            let psi: BTreeMap<[usize; 2], Q> = k
                .simplices_of_dim(1)
                .iter()
                .map(|e| ([e[0], e[1]], q(rng.gen_range(-9..9), rng.gen_range(1..7))))
                .collect();
            let mut phi = PhaseCocycle::coboundary(k.clone(), &psi);
            for _ in 0..times {
                phi = phi.add(&gen).unwrap();
            }
            phi
        };
        let x = cocycle(&mut rng, a);
        let y = cocycle(&mut rng, b);
        let cx = gerbe_class(&x).unwrap();
        let cy = gerbe_class(&y).unwrap();
        let cxy = gerbe_class(&x.add(&y).unwrap()).unwrap();
        let two = num_bigint::BigInt::from(2);
        let expected = (&cx.0.coordinates[0] + &cy.0.coordinates[0]) % &two;
        prop_assert_eq!(&cxy.0.coordinates[0], &expected);
        prop_assert_eq!(cx.is_zero(), a == 0);
    }

    #[test]
    fn random_complexes_have_euler_characteristic_from_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = rng.gen_range(2..=6);
        let c = random_complex(&mut rng, count);
        let dim = c.dimension().unwrap();
        let h = twovec::bar_homology::simplicial_homology(&c, dim);
        let chi_cells: i64 = (0..=dim).map(|k| if k % 2 == 0 { c.count(k) as i64 } else { -(c.count(k) as i64) }).sum();
        let chi_betti: i64 = (0..=dim).map(|k| if k % 2 == 0 { h.betti(k) as i64 } else { -(h.betti(k) as i64) }).sum();
        prop_assert_eq!(chi_cells, chi_betti);
    }
}

fn suspended_rp2() -> OrderedComplex {
    let rp2: Vec<Vec<usize>> = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [1, 3, 4], [1, 3, 5], [2, 3, 5], [2, 4, 5],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect();
    OrderedComplex::from_facets(&rp2).unwrap().suspension()
}

fn generator(k: &OrderedComplex) -> PhaseCocycle {
    let phases = [[1, 3, 7], [1, 4, 7], [2, 4, 7], [2, 5, 7], [3, 5, 7]]
        .into_iter()
        .map(|t| (t, q(1, 2)))
        .collect();
    PhaseCocycle::new(k.clone(), phases).unwrap()
}
