use holegames::board::{Owner, PointSet};
use holegames::oracle::{all_k_holes, count_k_holes, find_k_hole, verify_hole, HoleRule};
use holegames::sample::random_general_position;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn naive_count(set: &PointSet, k: usize, rule: HoleRule) -> u64 {
    combinations(set.len(), k)
        .into_iter()
        .filter(|c| {
            let h: Vec<_> = c.iter().map(|&i| set.point(i).clone()).collect();
            verify_hole(set, &h, k, rule).unwrap()
        })
        .count() as u64
}

fn labeled(seed: u64, n: usize) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = random_general_position(&mut rng, n, 30);
    let mut s = PointSet::new();
    for p in pts {
        let owner = if rng.gen_bool(0.6) { Owner::Maker } else { Owner::Breaker };
        s.push(p, owner);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn find_agrees_with_count(seed in any::<u64>(), n in 3usize..=12, k in 3usize..=6) {
        let s = labeled(seed, n);
        for rule in [HoleRule::Monochromatic, HoleRule::Bichromatic] {
            let c = count_k_holes(&s, k, rule);
            let f = find_k_hole(&s, k, rule);
            prop_assert_eq!(f.is_none(), c == 0);
            if let Some(cert) = f {
                prop_assert!(cert.verify(&s));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pruned_count_matches_exhaustive(seed in any::<u64>(), n in 3usize..=10, k in 3usize..=5) {
        let s = labeled(seed, n);
        for rule in [HoleRule::Monochromatic, HoleRule::Bichromatic] {
            prop_assert_eq!(count_k_holes(&s, k, rule), naive_count(&s, k, rule));
        }
    }

    #[test]
    fn bichromatic_never_exceeds_monochromatic(seed in any::<u64>(), n in 3usize..=12, k in 3usize..=5) {
        let s = labeled(seed, n);
        prop_assert!(
            count_k_holes(&s, k, HoleRule::Bichromatic) <= count_k_holes(&s, k, HoleRule::Monochromatic)
        );
    }

    #[test]
    fn adding_a_point_only_destroys_holes(seed in any::<u64>(), n in 4usize..=11, k in 3usize..=5) {
        let s = labeled(seed, n);
        let before = s.prefix(n - 1);
        for hole in all_k_holes(&s, k, HoleRule::Monochromatic) {
            if hole.contains(&(n - 1)) {
                continue;
            }
            let h: Vec<_> = hole.iter().map(|&i| s.point(i).clone()).collect();
            prop_assert!(verify_hole(&before, &h, k, HoleRule::Monochromatic).unwrap());
        }
    }
}
