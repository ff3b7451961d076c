//! Reflections, walls, balls, hulls, and weak-order gates.

use super::{CoxeterError, CoxeterSystem, Element, GeneratorId, Word};
use std::collections::{BTreeSet, HashMap, HashSet};

/// A reflection: a conjugate of a standard generator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Reflection {
    element: Element,
}

impl Reflection {
    /// Validates that `e` is a conjugate of a generator. The check walks a
    /// length-reducing conjugation chain: a reflection of length > 1 always
    /// has a descent s with l(s e s) = l(e) - 2, and the chain bottoms out at
    /// a generator exactly for reflections.
    pub fn new(sys: &CoxeterSystem, e: Element) -> Result<Self, CoxeterError> {
        if is_reflection_element(sys, &e) {
            Ok(Reflection { element: e })
        } else {
            Err(CoxeterError::NotReflection(e.to_string()))
        }
    }

    pub(crate) fn from_known(element: Element) -> Self {
        Reflection { element }
    }

    pub fn element(&self) -> &Element {
        &self.element
    }
}

fn is_reflection_element(sys: &CoxeterSystem, e: &Element) -> bool {
    if e.length() % 2 == 0 {
        return false;
    }
    if e.length() == 1 {
        return true;
    }
    for s in sys.left_descents(e) {
        let mut letters = vec![s];
        letters.extend_from_slice(&e.word().0);
        letters.push(s);
        let c = sys.element(&Word(letters));
        if c.length() == e.length() - 2 {
            return is_reflection_element(sys, &c);
        }
    }
    false
}

/// Greedy common-descent gate of a set in left weak order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakOrderGate {
    /// Reduced word of the gate; its prefixes spell the gallery from the identity.
    pub gallery_word: Word,
    pub gate: Element,
}

impl CoxeterSystem {
    /// Which side of the wall of `t` the element `u` lies on.
    pub fn wall_side(&self, t: &Reflection, u: &Element) -> bool {
        let mut letters = t.element.word().0.clone();
        letters.extend_from_slice(&u.word().0);
        self.length(&Word(letters)) < u.length()
    }

    /// True when the wall of `t` has `u` and `v` strictly on opposite sides.
    pub fn reflection_separates(&self, t: &Reflection, u: &Element, v: &Element) -> bool {
        self.wall_side(t, u) != self.wall_side(t, v)
    }

    /// The reflections whose walls are crossed by a minimal gallery from `u`
    /// to `v`; there are exactly `distance(u, v)` of them and they are the
    /// walls separating `u` from `v`.
    pub fn wall_crossings(&self, u: &Element, v: &Element) -> Vec<Reflection> {
        let r = self.delta_w(u, v);
        let mut out = Vec::with_capacity(r.length());
        let mut prefix: Vec<GeneratorId> = u.word().0.clone();
        for (i, &g) in r.word().0.iter().enumerate() {
            // reflection through the wall crossed at step i+1: p g p^{-1}
            let mut letters = prefix.clone();
            letters.push(g);
            letters.extend(prefix.iter().rev().copied());
            let t = self.element(&Word(letters));
            debug_assert_eq!(t.length() % 2, 1);
            out.push(Reflection::from_known(t));
            prefix.push(r.word().0[i]);
        }
        out
    }

    /// Ball of the given radius in the gallery metric, sorted in ShortLex
    /// order. Fails once more than `cap` elements are discovered.
    pub fn ball(
        &self,
        center: &Element,
        radius: usize,
        cap: usize,
    ) -> Result<Vec<Element>, CoxeterError> {
        let mut seen: HashSet<Element> = HashSet::new();
        seen.insert(center.clone());
        let mut frontier = vec![center.clone()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for s in self.generators() {
                    let n = self.mul_gen(w, s);
                    if seen.insert(n.clone()) {
                        if seen.len() > cap {
                            return Err(CoxeterError::ResourceLimit {
                                what: "enumerating a ball",
                                cap,
                            });
                        }
                        next.push(n);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let mut out: Vec<Element> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Gallery hull of a finite set: the elements no wall separates from the
    /// whole of `xs`, restricted to a finite ball that provably contains
    /// them. Every wall separating a hull member from the anchor must
    /// separate the anchor from some member of `xs`, which bounds the search
    /// radius by the number of such walls.
    pub fn gallery_hull(
        &self,
        xs: &[Element],
        cap: usize,
    ) -> Result<BTreeSet<Element>, CoxeterError> {
        if xs.is_empty() {
            return Err(CoxeterError::EmptyInput("gallery_hull of an empty set"));
        }
        let anchor = xs.iter().min().unwrap().clone();
        let mut walls: BTreeSet<Element> = BTreeSet::new();
        for x in xs {
            for t in self.wall_crossings(&anchor, x) {
                walls.insert(t.element().clone());
            }
        }
        let radius = walls.len();
        let ball = self.ball(&anchor, radius, cap)?;
        // None: the wall has members of xs on both sides and excludes nothing.
        let mut uniform_side: HashMap<Element, Option<bool>> = HashMap::new();
        let mut hull = BTreeSet::new();
        'cand: for c in ball {
            for t in self.wall_crossings(&c, &anchor) {
                let side = uniform_side
                    .entry(t.element().clone())
                    .or_insert_with(|| {
                        let first = self.wall_side(&t, &xs[0]);
                        for x in &xs[1..] {
                            if self.wall_side(&t, x) != first {
                                return None;
                            }
                        }
                        Some(first)
                    })
                    .clone();
                if let Some(side_of_xs) = side {
                    if self.wall_side(&t, &c) != side_of_xs {
                        continue 'cand;
                    }
                }
            }
            hull.insert(c);
        }
        Ok(hull)
    }

    /// Strips common left descents greedily (least generator first) and
    /// returns the resulting gate with its gallery word. Every element of
    /// `xs` has a reduced word beginning with the gate word.
    pub fn weak_order_gate(&self, xs: &[Element]) -> Result<WeakOrderGate, CoxeterError> {
        if xs.is_empty() {
            return Err(CoxeterError::EmptyInput("weak_order_gate of an empty set"));
        }
        let mut remainders: Vec<Element> = xs.to_vec();
        let mut gallery_word = Word::default();
        loop {
            let mut common: Option<BTreeSet<GeneratorId>> = None;
            for r in &remainders {
                let d: BTreeSet<GeneratorId> = self.left_descents(r).into_iter().collect();
                common = Some(match common {
                    None => d,
                    Some(c) => c.intersection(&d).copied().collect(),
                });
                if common.as_ref().unwrap().is_empty() {
                    break;
                }
            }
            let common = common.unwrap();
            match common.iter().next() {
                None => break,
                Some(&s) => {
                    gallery_word.0.push(s);
                    for r in remainders.iter_mut() {
                        let mut letters = vec![s];
                        letters.extend_from_slice(&r.word().0);
                        *r = self.element(&Word(letters));
                        debug_assert_eq!(r.length() + gallery_word.len(), {
                            // the stripped element still extends the gate
                            let mut full = gallery_word.0.clone();
                            full.extend_from_slice(&r.word().0);
                            self.length(&Word(full))
                        });
                    }
                }
            }
        }
        let gate = self.element(&gallery_word);
        debug_assert_eq!(gate.length(), gallery_word.len(), "gate word stays reduced");
        Ok(WeakOrderGate { gallery_word, gate })
    }
}

/// True for the rank-2 system with an infinite bond.
pub fn is_infinite_dihedral(sys: &CoxeterSystem) -> bool {
    sys.rank() == 2 && sys.matrix().entry(0, 1) == 0
}

/// Positions of infinite-dihedral elements on their Cayley line: the identity
/// sits at 0, words starting with generator 0 on the positive side.
pub fn line_position(e: &Element) -> i64 {
    match e.word().0.first() {
        None => 0,
        Some(GeneratorId(0)) => e.length() as i64,
        Some(_) => -(e.length() as i64),
    }
}

/// Inverse of [`line_position`].
pub fn line_element(sys: &CoxeterSystem, n: i64) -> Element {
    assert!(is_infinite_dihedral(sys), "line coordinates need the infinite dihedral system");
    let first = if n >= 0 { 0u8 } else { 1u8 };
    let len = n.unsigned_abs() as usize;
    let bytes: Vec<u8> = (0..len).map(|k| (first + (k % 2) as u8) % 2).collect();
    sys.element(&Word::from_bytes(bytes))
}

/// Splits a word over a block-diagonal product system into the two factor
/// subwords (letters below and above `left_rank`).
pub fn split_product_word(w: &Word, left_rank: usize) -> (Word, Word) {
    let mut left = Word::default();
    let mut right = Word::default();
    for &g in &w.0 {
        if (g.0 as usize) < left_rank {
            left.0.push(g);
        } else {
            right.0.push(GeneratorId(g.0 - left_rank as u8));
        }
    }
    (left, right)
}

/// Joins factor words into a word over the product system.
pub fn join_product_word(left: &Word, right: &Word, left_rank: usize) -> Word {
    let mut out = left.clone();
    out.0
        .extend(right.0.iter().map(|g| GeneratorId(g.0 + left_rank as u8)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::dihedral(3).unwrap())
    }

    fn d_inf() -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::dihedral_infinite())
    }

    #[test]
    fn reflection_validation() {
        let sys = a2();
        for w in [vec![0], vec![1], vec![0, 1, 0], vec![1, 0, 1]] {
            let e = sys.element(&Word::from_indices(&w));
            assert!(Reflection::new(&sys, e).is_ok());
        }
        for w in [vec![], vec![0, 1]] {
            let e = sys.element(&Word::from_indices(&w));
            assert!(Reflection::new(&sys, e).is_err());
        }
        let d = d_inf();
        // s t s t s is a reflection on the line, s t is a translation
        assert!(Reflection::new(&d, d.element(&Word::from_indices(&[0, 1, 0, 1, 0]))).is_ok());
        assert!(Reflection::new(&d, d.element(&Word::from_indices(&[0, 1]))).is_err());
    }

    #[test]
    fn wall_crossings_count_and_separate() {
        let sys = d_inf();
        let u = sys.element(&Word::from_indices(&[1, 0]));
        let v = sys.element(&Word::from_indices(&[0, 1, 0]));
        let walls = sys.wall_crossings(&u, &v);
        assert_eq!(walls.len(), sys.distance(&u, &v));
        for t in &walls {
            assert!(sys.reflection_separates(t, &u, &v));
        }
    }

    #[test]
    fn ball_sizes() {
        let d = d_inf();
        let b = d.ball(&d.identity(), 3, 10_000).unwrap();
        assert_eq!(b.len(), 7, "identity plus two arcs of length 3");

        let sys = a2();
        let b = sys.ball(&sys.identity(), 3, 10_000).unwrap();
        assert_eq!(b.len(), 6, "all of A2");
        let b2 = sys.ball(&sys.identity(), 17, 10_000).unwrap();
        assert_eq!(b2.len(), 6);
    }

    #[test]
    fn ball_cap_fails_loudly() {
        let d = d_inf();
        assert!(matches!(
            d.ball(&d.identity(), 50, 10),
            Err(CoxeterError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn hull_of_line_pair_is_the_interval() {
        let d = d_inf();
        let xs = vec![d.identity(), d.element(&Word::from_indices(&[0, 1, 0]))];
        let hull = d.gallery_hull(&xs, 10_000).unwrap();
        let expect: BTreeSet<Element> = [0i64, 1, 2, 3]
            .iter()
            .map(|&n| line_element(&d, n))
            .collect();
        assert_eq!(hull, expect);
    }

    #[test]
    fn weak_order_gate_examples() {
        let d = d_inf();
        let xs = vec![
            d.element(&Word::from_indices(&[0, 1])),
            d.element(&Word::from_indices(&[0, 1, 0])),
        ];
        let g = d.weak_order_gate(&xs).unwrap();
        assert_eq!(g.gallery_word, Word::from_indices(&[0, 1]));
        assert_eq!(g.gate, d.element(&Word::from_indices(&[0, 1])));

        let sys = a2();
        let xs = vec![
            sys.element(&Word::from_indices(&[0])),
            sys.element(&Word::from_indices(&[0, 1])),
        ];
        let g = sys.weak_order_gate(&xs).unwrap();
        assert_eq!(g.gallery_word, Word::from_indices(&[0]));
        assert_eq!(g.gate, sys.generator(GeneratorId(0)));

        // sets through the identity gate at the identity
        let xs = vec![sys.identity(), sys.generator(GeneratorId(1))];
        let g = sys.weak_order_gate(&xs).unwrap();
        assert!(g.gallery_word.is_empty());
        assert!(g.gate.is_identity());
    }

    #[test]
    fn line_coordinates_round_trip() {
        let d = d_inf();
        for n in -9i64..=9 {
            let e = line_element(&d, n);
            assert_eq!(line_position(&e), n);
            assert_eq!(e.length() as i64, n.abs());
        }
        // adjacent positions are gallery-adjacent
        for n in -5i64..5 {
            let a = line_element(&d, n);
            let b = line_element(&d, n + 1);
            assert_eq!(d.distance(&a, &b), 1);
        }
    }

    #[test]
    fn product_word_split_join() {
        let m = CoxeterMatrix::product(
            &CoxeterMatrix::dihedral_infinite(),
            &CoxeterMatrix::dihedral_infinite(),
        )
        .unwrap();
        let sys = CoxeterSystem::new(m);
        assert!(sys.is_right_angled());
        let w = sys.element(&Word::from_indices(&[2, 0, 3, 1, 0]));
        let (a, b) = split_product_word(w.word(), 2);
        assert_eq!(sys.length(&join_product_word(&a, &b, 2)), w.length());
        // factor subwords of a reduced product word are reduced
        let d = d_inf();
        assert!(d.is_reduced(&a));
        assert!(d.is_reduced(&b));
    }
}
