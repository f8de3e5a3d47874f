mod common;

use common::code;
use optcol::construct::{construct, construct_extended, construct_rate_1_n};
use optcol::optsearch::{best_profile_bruteforce, verify_optimal};
use optcol::simplex::column_permutation_equivalent;
use optcol::{BitMatrix, BitVec, ConvCode};

#[test]
fn small_constructions_are_optimal() {
    let v = verify_optimal(&construct_rate_1_n(1, 1).unwrap(), 6).unwrap();
    assert!(v.optimal && v.witness.is_none() && !v.inconclusive());
    assert_eq!(v.candidate_profile, vec![2, 3, 3, 3, 3, 3, 3]);
    assert_eq!(v.maximal_classes, 1);

    let v = verify_optimal(&construct(2, 1, 2).unwrap().code, 8).unwrap();
    assert!(v.optimal);
    assert_eq!(v.maximal_classes, 1);

    let v = verify_optimal(&construct_rate_1_n(1, 2).unwrap(), 8).unwrap();
    assert!(v.optimal);
}

#[test]
fn repeated_block_is_beaten() {
    let c = code(2, 1, &[&["11"], &["11"]]);
    let v = verify_optimal(&c, 6).unwrap();
    assert!(!v.optimal);
    assert_eq!(v.candidate_profile, vec![2; 7]);
    let w = v.witness.unwrap();
    let wp = w.trellis_profile(6).unwrap();
    assert!(wp > v.candidate_profile);
    assert_eq!(wp[..2], [2, 3]);
}

#[test]
fn bruteforce_examples() {
    let b = best_profile_bruteforce(2, 1, 1, 6).unwrap();
    assert_eq!(b.profile.values, vec![2, 3, 3, 3, 3, 3, 3]);
    assert_eq!(b.enumerated, 16);
    let w = b.witness.stacked();
    assert!(column_permutation_equivalent(
        &w,
        &BitMatrix::parse(&["11", "10"]).unwrap()
    ));

    let b = best_profile_bruteforce(3, 1, 1, 6).unwrap();
    assert_eq!(
        b.profile.values,
        construct_extended(3, 1)
            .unwrap()
            .trellis_profile(6)
            .unwrap()
    );

    let b = best_profile_bruteforce(2, 1, 0, 4).unwrap();
    assert_eq!(b.profile.values, vec![2; 5]);
}

// every (2,1,2) code, enumerated without the library's index layout
#[test]
fn bruteforce_dominates_every_code() {
    let best = best_profile_bruteforce(2, 1, 2, 6).unwrap().profile.values;
    let mut seen = 0;
    for g0 in 1u64..4 {
        for g1 in 0u64..4 {
            for g2 in 1u64..4 {
                let blocks = [g0, g1, g2]
                    .iter()
                    .map(|&g| BitMatrix::from_rows(2, vec![BitVec::from_u64(g, 2)]).unwrap())
                    .collect();
                let c = ConvCode::derive(2, 1, blocks).unwrap();
                assert!(c.trellis_profile(6).unwrap() <= best);
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 36);
}

#[test]
fn verdict_is_permutation_invariant() {
    let c = construct(4, 1, 2).unwrap().code;
    let p = c.permute_columns(&[2, 0, 3, 1]).unwrap();
    let (a, b) = (
        verify_optimal(&c, 7).unwrap(),
        verify_optimal(&p, 7).unwrap(),
    );
    assert_eq!(
        (a.optimal, a.ties_at_horizon, a.unresolved_ties),
        (b.optimal, b.ties_at_horizon, b.unresolved_ties)
    );
    assert_eq!(a.candidate_profile, b.candidate_profile);
    assert!(a.optimal);
}

#[test]
fn guard() {
    assert!(best_profile_bruteforce(5, 1, 4, 6).is_err());
}
