//! Randomized property tests for the parser and poset machinery.

use proptest::prelude::*;

use reflchar::euler::quotient_euler;
use reflchar::euler::{chi_character, QuotientMode};
use reflchar::groups::{classify, degree_profile, parse_group, GroupId};
use reflchar::springer::{poset_mobius, maximal_poset, regular_data, roundup};

proptest! {
    // Display and parse are inverse on both group families.
    #[test]
    fn parse_round_trips_infinite(r in 1u64..=30, p_idx in 0usize..8, l in 1u64..=10) {
        let divisors: Vec<u64> = (1..=r).filter(|p| r % p == 0).collect();
        let p = divisors[p_idx % divisors.len()];
        let g = GroupId::Infinite { r, p, l };
        prop_assert_eq!(parse_group(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn parse_round_trips_exceptional(n in 4u64..=37) {
        let g = GroupId::Exceptional { n };
        prop_assert_eq!(parse_group(&g.to_string()).unwrap(), g);
    }

    // Moebius function of the poset: sums over closed intervals vanish.
    #[test]
    fn mobius_interval_sums_vanish(r in 2u64..=12, p_idx in 0usize..6, l in 2u64..=6) {
        let divisors: Vec<u64> = (1..=r).filter(|p| r % p == 0).collect();
        let p = divisors[p_idx % divisors.len()];
        let g = GroupId::Infinite { r, p, l };
        prop_assume!(classify(g).unwrap().irreducible);
        let profile = degree_profile(g).unwrap();
        let poset = maximal_poset(&profile);
        let mu = poset_mobius(&poset);
        for &a in &poset {
            for &b in poset.iter().filter(|&&b| b % a == 0 && b != a) {
                let total: i64 = poset
                    .iter()
                    .filter(|&&c| c % a == 0 && b % c == 0)
                    .map(|&c| mu.get(a, c).unwrap())
                    .sum();
                prop_assert_eq!(total, 0, "interval [{}, {}]", a, b);
            }
        }
    }

    // roundup is idempotent and lands in the poset.
    #[test]
    fn roundup_idempotent(r in 2u64..=12, p_idx in 0usize..6, l in 2u64..=6) {
        let divisors: Vec<u64> = (1..=r).filter(|p| r % p == 0).collect();
        let p = divisors[p_idx % divisors.len()];
        let g = GroupId::Infinite { r, p, l };
        prop_assume!(classify(g).unwrap().irreducible);
        let profile = degree_profile(g).unwrap();
        let data = regular_data(&profile).unwrap();
        for &d in &data.regular {
            let up = roundup(&profile, d).unwrap();
            prop_assert!(data.poset.contains(&up));
            prop_assert_eq!(roundup(&profile, up).unwrap(), up);
        }
    }

    // The internally cross-checked quotient computation never errors on
    // irreducible groups, and U/G matches the coefficient sum.
    #[test]
    fn quotient_euler_total_is_consistent(r in 2u64..=12, p_idx in 0usize..6, l in 2u64..=6) {
        let divisors: Vec<u64> = (1..=r).filter(|p| r % p == 0).collect();
        let p = divisors[p_idx % divisors.len()];
        let g = GroupId::Infinite { r, p, l };
        prop_assume!(classify(g).unwrap().irreducible);
        let chi = chi_character(g, None).unwrap();
        let plain = quotient_euler(&chi, QuotientMode::UModG).unwrap();
        let direct: i128 = chi.coeffs.values().map(|&a| a as i128).sum();
        prop_assert_eq!(plain, direct);
    }
}
