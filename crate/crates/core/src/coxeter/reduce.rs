//! The two reduction engines behind `CoxeterSystem::reduce`.
//!
//! `saturation_canonical` implements Tits' solution of the word problem
//! directly: braid moves connect all reduced words of an element, and a word
//! is non-reduced exactly when some braid-equivalent word carries an adjacent
//! equal pair. Exploration stops early on the first such pair; only genuinely
//! reduced words pay for full class saturation. Results are memoized per
//! input word behind a read-write lock.
//!
//! `ra_canonical` is the right-angled shortcut: with every off-diagonal bond
//! 2 or infinite, braid classes are exactly commutation-shuffle classes, so
//! deletion pairs can be found by scanning for equal letters separated only
//! by commuting ones, and the ShortLex form is the greedy least-available-
//! letter linearization. Both engines agree wherever both apply; that
//! equivalence is pinned by tests.

use super::{Bond, CoxeterSystem, GeneratorId};
use std::collections::{HashSet, VecDeque};

/// Hard cap on braid-class exploration per word. Words at desk scale stay far
/// below this; blowing it means the input is outside the intended regime.
const CLASS_CAP: usize = 4_000_000;

/// All words obtained from `w` by a single braid move, with the position the
/// move was applied at.
pub(crate) fn braid_neighbors(sys: &CoxeterSystem, w: &[u8]) -> Vec<(usize, Vec<u8>)> {
    let mut out = Vec::new();
    for pos in 0..w.len().saturating_sub(1) {
        let a = w[pos];
        let b = w[pos + 1];
        if a == b {
            continue;
        }
        let m = match sys.matrix().bond(GeneratorId(a), GeneratorId(b)) {
            Bond::Finite(m) => m as usize,
            Bond::Infinite => continue,
        };
        if pos + m > w.len() {
            continue;
        }
        let alternating = (0..m).all(|k| w[pos + k] == if k % 2 == 0 { a } else { b });
        if !alternating {
            continue;
        }
        let mut y = w.to_vec();
        for k in 0..m {
            y[pos + k] = if k % 2 == 0 { b } else { a };
        }
        out.push((pos, y));
    }
    out
}

enum Explore {
    /// Some braid-equivalent word has an adjacent equal pair at this index.
    Double(Vec<u8>, usize),
    /// The word is reduced; this is the lexicographically least class member.
    Reduced(Vec<u8>),
}

fn explore_class(sys: &CoxeterSystem, start: &[u8]) -> Explore {
    if let Some(i) = adjacent_double(start) {
        return Explore::Double(start.to_vec(), i);
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
    let mut best = start.to_vec();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    while let Some(x) = queue.pop_front() {
        for (_, y) in braid_neighbors(sys, &x) {
            if seen.contains(&y) {
                continue;
            }
            if let Some(i) = adjacent_double(&y) {
                return Explore::Double(y, i);
            }
            if y < best {
                best = y.clone();
            }
            assert!(
                seen.len() < CLASS_CAP,
                "braid class exceeded {CLASS_CAP} words; word length {}",
                x.len()
            );
            seen.insert(y.clone());
            queue.push_back(y);
        }
    }
    Explore::Reduced(best)
}

fn adjacent_double(w: &[u8]) -> Option<usize> {
    (0..w.len().saturating_sub(1)).find(|&i| w[i] == w[i + 1])
}

pub(crate) fn saturation_canonical(sys: &CoxeterSystem, word: Vec<u8>) -> Vec<u8> {
    if let Some(hit) = sys.reduce_memo.read().unwrap().get(&word) {
        return hit.clone();
    }
    let mut trail: Vec<Vec<u8>> = vec![word.clone()];
    let mut current = word;
    let canonical = loop {
        match explore_class(sys, &current) {
            Explore::Double(mut x, i) => {
                x.drain(i..i + 2);
                if let Some(hit) = sys.reduce_memo.read().unwrap().get(&x) {
                    break hit.clone();
                }
                trail.push(x.clone());
                current = x;
            }
            Explore::Reduced(best) => break best,
        }
    };
    let mut memo = sys.reduce_memo.write().unwrap();
    for t in trail {
        memo.insert(t, canonical.clone());
    }
    canonical
}

/// Deletes one removable pair if any exists: two equal letters with only
/// commuting letters in between. Returns true when a deletion happened.
fn ra_delete_pair(sys: &CoxeterSystem, w: &mut Vec<u8>) -> bool {
    for i in 0..w.len() {
        // Only the next occurrence can pair with position i: a non-commuting
        // letter in between blocks every later occurrence as well.
        for j in i + 1..w.len() {
            if w[j] == w[i] {
                if (i + 1..j).all(|k| sys.commutes(GeneratorId(w[k]), GeneratorId(w[i]))) {
                    w.remove(j);
                    w.remove(i);
                    return true;
                }
                break;
            }
            if !sys.commutes(GeneratorId(w[j]), GeneratorId(w[i])) && w[j] != w[i] {
                // w[j] neither pairs nor commutes; nothing past it can pair with i.
                break;
            }
        }
    }
    false
}

pub(crate) fn ra_canonical(sys: &CoxeterSystem, word: &[u8]) -> Vec<u8> {
    let mut w = word.to_vec();
    while ra_delete_pair(sys, &mut w) {}
    // Greedy least-available-letter linearization of the shuffle class.
    let mut rest = w;
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let movable = (0..p).all(|k| sys.commutes(GeneratorId(rest[k]), GeneratorId(rest[p])));
            if movable && best.map_or(true, |b| rest[p] < rest[b]) {
                best = Some(p);
            }
        }
        out.push(rest.remove(best.expect("position 0 is always available")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterMatrix, Word};

    fn ra_rank3() -> CoxeterSystem {
        // a-b infinite, b-c infinite, a-c commute
        CoxeterSystem::new(
            CoxeterMatrix::new(3, vec![vec![1, 0, 2], vec![0, 1, 0], vec![2, 0, 1]]).unwrap(),
        )
    }

    #[test]
    fn ra_deletion_across_commuting_letters() {
        let sys = ra_rank3();
        // a c a = c because a and c commute
        assert_eq!(ra_canonical(&sys, &[0, 2, 0]), vec![2]);
        // b a c a b = b c b, irreducible
        assert_eq!(ra_canonical(&sys, &[1, 0, 2, 0, 1]), vec![1, 2, 1]);
    }

    #[test]
    fn ra_lexmin_pulls_commuting_letters_forward() {
        let sys = ra_rank3();
        // c a is a shuffle of a c; ShortLex picks a c
        assert_eq!(ra_canonical(&sys, &[2, 0]), vec![0, 2]);
        // b blocks the shuffle
        assert_eq!(ra_canonical(&sys, &[2, 1, 0]), vec![2, 1, 0]);
    }

    #[test]
    fn engines_agree_on_right_angled_systems() {
        let sys = ra_rank3();
        // every word over {a,b,c} of length <= 7, both routes
        let rank = 3u8;
        for len in 0..=7usize {
            let mut idx = vec![0u8; len];
            loop {
                let sat = saturation_canonical(&sys, idx.clone());
                let ra = ra_canonical(&sys, &idx);
                assert_eq!(sat, ra, "word {:?}", idx);
                // increment base-rank counter
                let mut k = 0;
                while k < len {
                    idx[k] += 1;
                    if idx[k] < rank {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == len {
                    break;
                }
            }
        }
    }

    #[test]
    fn b2_saturation() {
        let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(4).unwrap());
        // (st)^4 = 1
        assert_eq!(
            saturation_canonical(&sys, vec![0, 1, 0, 1, 0, 1, 0, 1]),
            Vec::<u8>::new()
        );
        // stst and tsts are the two reduced words of the longest element
        assert_eq!(saturation_canonical(&sys, vec![1, 0, 1, 0]), vec![0, 1, 0, 1]);
        assert!(sys.is_reduced(&Word::from_indices(&[0, 1, 0, 1])));
    }
}
