use std::collections::HashSet;

use hecke_bc::parabolic::all_intervals;
use hecke_bc::{bruhat_leq, SignedPermutation};

/// Every product of a subword of a reduced word of `w`.
fn subword_closure(w: &SignedPermutation) -> HashSet<SignedPermutation> {
    let word = w.reduced_word();
    let n = w.rank();
    (0u32..1 << word.len())
        .map(|mask| {
            let sub: Vec<usize> =
                word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
            SignedPermutation::from_word(n, &sub).unwrap()
        })
        .collect()
}

#[test]
fn bruhat_order_matches_subword_closure() {
    for n in 2..=3 {
        let all = SignedPermutation::all(n).unwrap();
        for w in &all {
            let below = subword_closure(w);
            for v in &all {
                assert_eq!(bruhat_leq(v, w).unwrap(), below.contains(v), "{v} <= {w}");
            }
        }
    }
}

#[test]
fn bruhat_rejects_rank_mismatch() {
    let a = SignedPermutation::identity(2).unwrap();
    let b = SignedPermutation::identity(3).unwrap();
    assert!(bruhat_leq(&a, &b).is_err());
}

#[test]
fn length_formulas_agree() {
    let sizes = [2, 8, 48, 384];
    for n in 1..=4 {
        let all = SignedPermutation::all(n).unwrap();
        assert_eq!(all.len(), sizes[n - 1]);
        for w in &all {
            assert_eq!(w.length(), w.length_via_long());
        }
    }
}

#[test]
fn min_rep_criteria_and_decomposition() {
    for n in 1..=3 {
        for iv in all_intervals(n) {
            for w in SignedPermutation::all(n).unwrap() {
                assert_eq!(iv.is_min_coset_rep(&w), iv.is_min_coset_rep_by_definition(&w), "{w} {iv}");
                let (rep, tail) = iv.coset_decompose(&w);
                assert!(iv.is_min_coset_rep(&rep));
                assert!(iv.contains_element(&tail));
                assert_eq!(&rep * &tail, w);
                assert_eq!(rep.length() + tail.length(), w.length());
            }
        }
    }
}

#[test]
fn coset_order_criteria_agree() {
    let n = 3;
    let all = SignedPermutation::all(n).unwrap();
    for iv in all_intervals(n) {
        let reps: Vec<_> = all.iter().filter(|w| iv.is_min_coset_rep(w)).collect();
        for v in &reps {
            for w in &reps {
                let by_min = iv.coset_leq(v, w).unwrap();
                assert_eq!(by_min, iv.coset_leq_by_max(v, w).unwrap());
                assert_eq!(by_min, iv.coset_leq_by_elements(v, w).unwrap());
            }
        }
    }
}

#[test]
fn smoothness_of_reversals() {
    for n in 1..=4 {
        for iv in all_intervals(n) {
            assert!(iv.reversal().avoids_3412_4231(), "{iv}");
        }
    }
    assert!(!"3 4 1 2".parse::<SignedPermutation>().unwrap().avoids_3412_4231());
}
