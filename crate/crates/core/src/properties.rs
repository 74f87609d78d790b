//! Property tests that cut across modules, checked against brute force where one exists.

use itertools::Itertools;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::encoding::{graph_edge, order_leq};
use crate::envelope::{dim_bound, is_canonical_type, is_envelope, minimal_envelope, tau};
use crate::gr::{pull_back, verify_gr, CopyColoring, GrParams};
use crate::grn::{copy_word_graph, copy_word_poset, embed_poset_grn, is_interval_copy};
use crate::structure::{all_posets_with_linext, Structure};
use crate::words::{random_word, substitute, ParameterWord, Space};

/// A word from a seed, so proptest shrinks toward short, simple words.
fn word(seed: u64, sigma: usize, len: usize, k: usize) -> ParameterWord {
    random_word(&mut ChaCha8Rng::seed_from_u64(seed), sigma, len.max(k), k).unwrap()
}

fn sigma_strategy() -> impl Strategy<Value = usize> {
    prop_oneof![Just(1usize), Just(2), Just(3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn substitution_composes(sigma in sigma_strategy(), n in 0usize..6, m in 0usize..5, seeds in any::<[u64; 3]>(), lens in any::<[usize; 3]>()) {
        let w = word(seeds[0], sigma, n + lens[0] % 5, n);
        let u_len = m.max(lens[1] % (n + 1));
        prop_assume!(u_len <= n);
        let u = word(seeds[1], sigma, u_len, m);
        let v = word(seeds[2], sigma, lens[2] % (m + 1), 0);
        let left = substitute(&substitute(&w, &u).unwrap(), &v).unwrap();
        let right = substitute(&w, &substitute(&u, &v).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn substitution_is_injective(sigma in sigma_strategy(), n in 1usize..6, seeds in any::<[u64; 3]>(), lens in any::<[usize; 2]>()) {
        let w = word(seeds[0], sigma, n + 2, n);
        let u = word(seeds[1], sigma, lens[0] % (n + 1), 0);
        let v = word(seeds[2], sigma, lens[1] % (n + 1), 0);
        prop_assert_eq!(u == v, substitute(&w, &u).unwrap() == substitute(&w, &v).unwrap());
    }

    #[test]
    fn envelope_is_sound_and_bounded(sigma in sigma_strategy(), k in 0usize..3, seeds in prop::collection::vec(any::<u64>(), 1..4), lens in prop::collection::vec(0usize..7, 3)) {
        let set: Vec<ParameterWord> = seeds.iter().zip(&lens).map(|(&s, &l)| word(s, sigma, l, k)).collect();
        let env = minimal_envelope(&set);
        prop_assert!(is_envelope(env.word(), &set));
        let t = tau(&set);
        let mut rebuilt: Vec<ParameterWord> = t.elements().iter().map(|u| substitute(env.word(), u).unwrap()).collect();
        rebuilt.sort();
        let mut expected = set.clone();
        expected.sort();
        expected.dedup();
        prop_assert_eq!(rebuilt, expected);
        prop_assert!(env.dim() as u128 <= dim_bound(sigma, k, t.elements().len()).unwrap());
    }

    #[test]
    fn tau_is_idempotent_and_canonical(sigma in sigma_strategy(), k in 0usize..3, seeds in prop::collection::vec(any::<u64>(), 1..4), lens in prop::collection::vec(0usize..7, 3)) {
        let set: Vec<ParameterWord> = seeds.iter().zip(&lens).map(|(&s, &l)| word(s, sigma, l, k)).collect();
        let t = tau(&set);
        prop_assert!(is_canonical_type(t.elements()));
        prop_assert_eq!(tau(t.elements()), t);
    }

    #[test]
    fn order_axioms(seeds in any::<[u64; 3]>(), lens in any::<[usize; 3]>()) {
        let [a, b, c] = [0, 1, 2].map(|i| word(seeds[i], 3, lens[i] % 7, 0));
        let ab = order_leq(&a, &b);
        let ba = order_leq(&b, &a);
        prop_assert!(order_leq(&a, &a).holds);
        prop_assert!(!(ab.holds && ba.holds) || a == b);
        let bc = order_leq(&b, &c);
        if ab.holds && bc.holds {
            let ac = order_leq(&a, &c);
            prop_assert!(ac.holds);
            if let (Some(i), Some(j), Some(l)) = (ab.witness, bc.witness, ac.witness) {
                prop_assert!(l <= i.min(j));
            }
        }
    }

    #[test]
    fn graph_words_are_triangle_free(seeds in any::<[u64; 3]>(), lens in any::<[usize; 3]>()) {
        let [a, b, c] = [0, 1, 2].map(|i| word(seeds[i], 1, 1 + lens[i] % 8, 1));
        prop_assert_eq!(graph_edge(&a, &b), graph_edge(&b, &a));
        prop_assert!(!(graph_edge(&a, &b) && graph_edge(&b, &c) && graph_edge(&a, &c)));
    }

    #[test]
    fn pull_back_is_associative(seed in any::<u64>(), zlen in 0usize..3, bits in any::<u64>()) {
        // χ on vertex copies of [{0}](≤4 choose 0), pulled through W ∈ [{0}](4 choose 2) and Z of length ≤ 2
        let domain = Space::at_most(1, 4, 0).words().unwrap();
        let chi = CopyColoring::new(domain.iter().enumerate().map(|(i, w)| (vec![w.clone()], (bits >> i & 1) as usize)));
        let w = word(seed, 1, 4, 2);
        let z = word(seed ^ 1, 1, 2.max(zlen), zlen.min(2));
        let shapes: Vec<Vec<ParameterWord>> =
            Space::at_most(1, z.params(), 0).words().unwrap().into_iter().map(|u| vec![u]).collect();
        let mid: Vec<Vec<ParameterWord>> =
            shapes.iter().map(|s| vec![substitute(&z, &s[0]).unwrap()]).collect();
        let once = pull_back(&chi, &substitute(&w, &z).unwrap(), &shapes).unwrap();
        let twice = pull_back(&pull_back(&chi, &w, &mid).unwrap(), &z, &shapes).unwrap();
        prop_assert_eq!(once, twice);
    }
}

#[test]
fn gr_is_monotone_in_n() {
    let cases = [
        GrParams { sigma: 1, k: 0, n: 1, r: 2 },
        GrParams { sigma: 2, k: 0, n: 1, r: 2 },
        GrParams { sigma: 1, k: 1, n: 2, r: 2 },
        GrParams { sigma: 1, k: 0, n: 2, r: 2 },
        GrParams { sigma: 1, k: 1, n: 1, r: 3 },
    ];
    for p in cases {
        let verdicts: Vec<bool> = (0..=4).map(|n| verify_gr(p, n).unwrap().holds()).collect();
        for (a, b) in verdicts.iter().tuple_windows() {
            assert!(!a || *b, "{p}: {verdicts:?}");
        }
    }
}

/// All words of length `len` with `k` parameters mapping each template word onto its target.
fn brute_force_copy_words(
    templates: &[ParameterWord],
    targets: &[ParameterWord],
    k: usize,
    max_len: usize,
) -> Vec<ParameterWord> {
    (k..=max_len)
        .flat_map(|len| Space::exact(3, len, k).words().unwrap())
        .filter(|w| templates.iter().zip(targets).all(|(u, t)| substitute(w, u).as_ref() == Ok(t)))
        .collect()
}

#[test]
fn gapped_chain_copy_has_no_copy_word() {
    let b = Structure::poset_linext(3, &[(0, 1), (1, 2), (0, 2)]);
    let a = Structure::poset_linext(2, &[(0, 1)]);
    let phi = embed_poset_grn(&b).unwrap().words;
    let phi_a = embed_poset_grn(&a).unwrap().words;
    let k = phi_a.len() + 4;
    assert_eq!(k, 6);
    // φ(2) has length 7; no longer prefix matters for words this short
    let gapped = brute_force_copy_words(&phi_a, &[phi[0].clone(), phi[2].clone()], k, 9);
    assert!(gapped.is_empty());
    for copy in [[0, 1], [1, 2]] {
        let found = brute_force_copy_words(&phi_a, &[phi[copy[0]].clone(), phi[copy[1]].clone()], k, 9);
        assert!(!found.is_empty());
        assert!(copy_word_poset(&b, &a, &copy).is_ok());
    }
}

#[test]
fn poset_copy_words_exist_exactly_on_interval_copies() {
    for n in 1..=4 {
        for b in all_posets_with_linext(n) {
            for size in 1..=n.min(3) {
                for copy in (0..n).combinations(size) {
                    let a = b.induced(&copy);
                    assert_eq!(copy_word_poset(&b, &a, &copy).is_ok(), is_interval_copy(&copy), "{b:?} {copy:?}");
                }
            }
        }
    }
}

#[test]
fn graph_copy_words_exist_on_every_copy() {
    for n in 1..=4 {
        for b in crate::structure::all_triangle_free_graphs(n, true) {
            for size in 1..=n.min(3) {
                for copy in (0..n).combinations(size) {
                    let a = b.induced(&copy);
                    assert!(copy_word_graph(&b, &a, &copy).is_ok(), "{b:?} {copy:?}");
                }
            }
        }
    }
}
