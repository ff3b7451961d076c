//! Word-problem checks against independent group models.

mod common;

use common::*;

#[test]
fn infinite_dihedral_words() {
    assert_words_match_model(&dinf(), line_id(), line_step, 8);
}

#[test]
fn symmetric_group_words() {
    assert_words_match_model(&a2(), perm3_id(), perm3_step, 8);
}

#[test]
fn square_symmetry_words() {
    assert_words_match_model(&b2(), mat2_id(), mat2_step, 8);
}

#[test]
fn affine_triangle_words() {
    assert_words_match_model(&affine_a2(), aff3_id(), aff3_step, 6);
}

#[test]
fn reduced_word_sets_agree_with_the_model() {
    // every reduced word of an element reaches the same model token, and the
    // enumeration finds exactly the words the model admits at that length
    let sys = affine_a2();
    let dist = cayley_distances(aff3_id(), 3, aff3_step, 6);
    for word in [vec![0u8, 1, 0], vec![0, 1, 2, 0], vec![2, 0, 1, 2, 0]] {
        let e = sys.element(&asdim_core::coxeter::Word::from_indices(&word));
        let words = sys.reduced_words(&e, 10_000).unwrap();
        assert!(!words.is_empty());
        let mut tokens = std::collections::HashSet::new();
        for w in &words {
            let mut t = aff3_id();
            for &g in &w.0 {
                t = aff3_step(&t, g.0);
            }
            assert_eq!(dist[&t], w.len());
            tokens.insert(t);
        }
        assert_eq!(tokens.len(), 1);
    }
}
