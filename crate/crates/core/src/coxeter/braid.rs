//! Braid-move sequences between reduced words.
//!
//! Any two reduced words of the same element are connected by braid moves
//! alone. The walk below is the constructive form of that statement: match
//! first letters and recurse, and when the two words start with different
//! generators s and t, both are descents, so the element factors through the
//! longest element of the finite {s,t} parabolic; rewriting through the two
//! alternating prefixes costs exactly one move. Every intermediate word is a
//! reduced word of the same element.

use super::reduce;
use super::{Bond, CoxeterError, CoxeterSystem, GeneratorId, Word};

/// One braid move: at `pos`, the alternating run `from to from ...` of length
/// `m(from, to)` is replaced by the run starting with `to`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BraidMove {
    pub pos: usize,
    pub from: GeneratorId,
    pub to: GeneratorId,
}

fn alternating(a: u8, b: u8, m: usize) -> Vec<u8> {
    (0..m).map(|k| if k % 2 == 0 { a } else { b }).collect()
}

impl CoxeterSystem {
    /// Applies a single braid move, verifying the alternating run is present.
    pub fn apply_braid_move(&self, w: &Word, mv: &BraidMove) -> Result<Word, CoxeterError> {
        self.check_word(w);
        let m = match self.matrix().bond(mv.from, mv.to) {
            Bond::Finite(m) => m as usize,
            Bond::Infinite => return Err(CoxeterError::BadBraidMove { pos: mv.pos }),
        };
        let bytes = w.bytes();
        if mv.pos + m > bytes.len()
            || bytes[mv.pos..mv.pos + m] != alternating(mv.from.0, mv.to.0, m)[..]
        {
            return Err(CoxeterError::BadBraidMove { pos: mv.pos });
        }
        let mut out = bytes;
        out.splice(mv.pos..mv.pos + m, alternating(mv.to.0, mv.from.0, m));
        Ok(Word::from_bytes(out))
    }

    /// A braid-move sequence turning the reduced word `r1` into `r2`.
    ///
    /// Errors when either word is not reduced or the words represent
    /// different elements. Every intermediate word is reduced; tests replay
    /// the sequence to pin that down.
    pub fn braid_move_sequence(&self, r1: &Word, r2: &Word) -> Result<Vec<BraidMove>, CoxeterError> {
        self.check_word(r1);
        self.check_word(r2);
        if !self.is_reduced(r1) {
            return Err(CoxeterError::NotReduced(r1.to_string()));
        }
        if !self.is_reduced(r2) {
            return Err(CoxeterError::NotReduced(r2.to_string()));
        }
        if self.reduce(r1) != self.reduce(r2) {
            return Err(CoxeterError::DifferentElements(r1.to_string(), r2.to_string()));
        }
        let mut out = Vec::new();
        self.connect(&r1.bytes(), &r2.bytes(), 0, &mut out);
        Ok(out)
    }

    fn connect(&self, a: &[u8], b: &[u8], offset: usize, out: &mut Vec<BraidMove>) {
        debug_assert_eq!(a.len(), b.len());
        if a == b {
            return;
        }
        if a[0] == b[0] {
            self.connect(&a[1..], &b[1..], offset + 1, out);
            return;
        }
        let (s, t) = (a[0], b[0]);
        let m = match self.matrix().bond(GeneratorId(s), GeneratorId(t)) {
            Bond::Finite(m) => m as usize,
            // Two distinct left descents always span a finite parabolic.
            Bond::Infinite => unreachable!("reduced words of one element with infinite bond heads"),
        };
        // Factor the element as (longest of <s,t>) * u.
        let mut tail_word: Vec<u8> = alternating(s, t, m);
        tail_word.reverse();
        tail_word.extend_from_slice(a);
        let u = if self.is_right_angled() {
            reduce::ra_canonical(self, &tail_word)
        } else {
            reduce::saturation_canonical(self, tail_word)
        };
        debug_assert_eq!(u.len() + m, a.len(), "descent pair must factor through the parabolic");
        let mut r3 = alternating(s, t, m);
        r3.extend_from_slice(&u);
        self.connect(a, &r3, offset, out);
        out.push(BraidMove {
            pos: offset,
            from: GeneratorId(s),
            to: GeneratorId(t),
        });
        let mut r3b = alternating(t, s, m);
        r3b.extend_from_slice(&u);
        self.connect(&r3b, b, offset, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn replay(sys: &CoxeterSystem, start: &Word, moves: &[BraidMove]) -> Word {
        let mut w = start.clone();
        for mv in moves {
            assert!(sys.is_reduced(&w), "intermediate {w} must stay reduced");
            w = sys.apply_braid_move(&w, mv).unwrap();
        }
        assert!(sys.is_reduced(&w));
        w
    }

    #[test]
    fn b2_longest_element_single_move() {
        let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(4).unwrap());
        let r1 = Word::from_indices(&[0, 1, 0, 1]);
        let r2 = Word::from_indices(&[1, 0, 1, 0]);
        let moves = sys.braid_move_sequence(&r1, &r2).unwrap();
        assert_eq!(moves.len(), 1);
        assert_eq!(replay(&sys, &r1, &moves), r2);
    }

    #[test]
    fn a2_all_reduced_word_pairs_connect() {
        let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(3).unwrap());
        let words = [
            Word::from_indices(&[0, 1, 0]),
            Word::from_indices(&[1, 0, 1]),
        ];
        for r1 in &words {
            for r2 in &words {
                let moves = sys.braid_move_sequence(r1, r2).unwrap();
                assert_eq!(&replay(&sys, r1, &moves), r2);
            }
        }
    }

    #[test]
    fn rejects_unreduced_and_unequal() {
        let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(3).unwrap());
        let bad = Word::from_indices(&[0, 0]);
        let ok = Word::from_indices(&[0, 1]);
        assert!(matches!(
            sys.braid_move_sequence(&bad, &ok),
            Err(CoxeterError::NotReduced(_))
        ));
        let other = Word::from_indices(&[1, 0]);
        assert!(matches!(
            sys.braid_move_sequence(&ok, &other),
            Err(CoxeterError::DifferentElements(..))
        ));
    }

    #[test]
    fn commuting_shuffle_sequence() {
        // rank 3 right-angled: moves are transpositions of commuting letters
        let sys = CoxeterSystem::new(
            CoxeterMatrix::new(3, vec![vec![1, 0, 2], vec![0, 1, 0], vec![2, 0, 1]]).unwrap(),
        );
        let r1 = Word::from_indices(&[0, 2, 1]);
        let r2 = Word::from_indices(&[2, 0, 1]);
        let moves = sys.braid_move_sequence(&r1, &r2).unwrap();
        assert_eq!(replay(&sys, &r1, &moves), r2);
    }
}
