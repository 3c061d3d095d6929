use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use threefold::algebra::{linalg, HomForm};
use threefold::census::{census_run, line_count, reconstruct, CensusConfig, LineSpace, Task};
use threefold::field::{Gf, Rationals};
use threefold::io::{format_cubic, parse_cubic};
use threefold::ring::CubicContext;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_smooth(f: &Gf, seed: u64) -> CubicContext<Gf> {
    let mut r = rng(seed);
    loop {
        let ctx = CubicContext::new(f, &HomForm::random(f, 5, 3, &mut r)).unwrap();
        if ctx.is_smooth() {
            return ctx;
        }
    }
}

fn random_invertible(f: &Gf, r: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    loop {
        let m: Vec<Vec<u32>> = (0..5).map(|_| (0..5).map(|_| rand::Rng::gen_range(r, 0..f.q())).collect()).collect();
        if linalg::rank(f, &m) == 5 {
            return m;
        }
    }
}

#[test]
fn line_stream_is_exhaustive_and_duplicate_free() {
    for q in [2u32, 3, 5] {
        let f = Gf::prime(q).unwrap();
        for n in 1..=4 {
            let space = LineSpace::new(&f, n).unwrap();
            let seen: HashSet<Vec<u32>> = space.iter().map(|l| l.pluecker().to_vec()).collect();
            assert_eq!(space.len() as u64, line_count(q as u64, n));
            assert_eq!(seen.len(), space.len(), "duplicate line over F_{q}, n = {n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = HomForm::random(&Rationals, 5, 3, &mut r);
        prop_assert_eq!(parse_cubic(&Rationals, &format_cubic(&Rationals, &g)).unwrap(), g);
        let f = Gf::prime(101).unwrap();
        let h = HomForm::random(&f, 5, 3, &mut r);
        prop_assert_eq!(parse_cubic(&f, &format_cubic(&f, &h)).unwrap(), h);
        let f = Gf::new(5, 3).unwrap();
        let h = HomForm::random(&f, 5, 3, &mut r);
        prop_assert_eq!(parse_cubic(&f, &format_cubic(&f, &h)).unwrap(), h);
    }

    #[test]
    fn rank_lemma_and_pairing(seed in any::<u64>()) {
        let f = Gf::prime(31).unwrap();
        let ctx = random_smooth(&f, seed);
        let mut r = rng(seed ^ 0x5eed);
        let coords: Vec<u32> = (0..10).map(|_| rand::Rng::gen_range(&mut r, 0..31)).collect();
        prop_assume!(coords.iter().any(|&c| c != 0));
        let xi = ctx.xi_from_coords(coords).unwrap();
        prop_assert!(xi.rank >= 2);
        prop_assert_eq!(xi.k2.dim(), 9);
        for i in 0..=5 {
            prop_assert_eq!(linalg::rank(&f, &ctx.pairing_matrix(i).unwrap()), ctx.dims()[i]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn census_counts_invariant_under_coordinate_change(seed in any::<u64>()) {
        let f = Gf::prime(5).unwrap();
        let ctx = random_smooth(&f, seed);
        let m = random_invertible(&f, &mut rng(seed.wrapping_add(1)));
        let moved = CubicContext::new(&f, &ctx.form().substitute_linear(&f, &m).unwrap()).unwrap();
        let config = CensusConfig { tasks: [Task::Lines, Task::Sigma, Task::Double, Task::Eckardt].into_iter().collect(), ..Default::default() };
        let a = census_run(&ctx, &config).unwrap().counts;
        let b = census_run(&moved, &config).unwrap().counts;
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.double_by_type, a.double_by_witness);
    }

    #[test]
    fn reconstruction_contains_the_source(seed in any::<u64>()) {
        let f = Gf::prime(5).unwrap();
        let ctx = random_smooth(&f, seed);
        let lines: Vec<_> = LineSpace::new(&f, 4).unwrap().iter().filter(|l| ctx.cubic().contains_line(l)).collect();
        prop_assume!(!lines.is_empty());
        let r = reconstruct(&f, &lines).unwrap();
        prop_assert!(r.contains(&f, ctx.form()));
    }
}
