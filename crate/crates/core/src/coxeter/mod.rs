//! Coxeter systems and the word problem.
//!
//! Elements are kept in a ShortLex canonical form (shortest length, then
//! lexicographically least over generator indices). Reduction is exact for
//! every Coxeter matrix: the general engine saturates braid classes, and
//! right-angled systems (every off-diagonal bond 2 or infinite) take an
//! equivalent syllable-shuffle path that stays polynomial on long words.

mod braid;
mod geometry;
mod reduce;

pub use braid::BraidMove;
pub use geometry::{
    is_infinite_dihedral, join_product_word, line_element, line_position, split_product_word,
    Reflection, WeakOrderGate,
};

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::RwLock;
use thiserror::Error;

/// Index of a standard generator. Valid indices are `0..rank`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorId(pub u8);

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", gen_name(*self))
    }
}

/// Display name for a generator: `s, t, u, v, ...` for low ranks, `g9, g10, ...` past that.
pub fn gen_name(s: GeneratorId) -> String {
    const NAMES: &[u8] = b"stuvwxyz";
    match NAMES.get(s.0 as usize) {
        Some(&c) => (c as char).to_string(),
        None => format!("g{}", s.0),
    }
}

/// Bond order between two distinct generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

/// Symmetric Coxeter matrix. Diagonal entries are 1; off-diagonal entries are
/// at least 2 or infinite. In serialized form infinity is encoded as 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>, // row-major, 0 = infinity
}

#[derive(Error, Debug)]
pub enum CoxeterError {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("generator index {index} out of range for rank {rank}")]
    UnknownGenerator { index: u8, rank: usize },
    #[error("resource limit exceeded while {what} (cap {cap})")]
    ResourceLimit { what: &'static str, cap: usize },
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("words represent different elements: {0} vs {1}")]
    DifferentElements(String, String),
    #[error("element is not a reflection: {0}")]
    NotReflection(String),
    #[error("braid move does not apply at position {pos}")]
    BadBraidMove { pos: usize },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("no reduced word of {element} extends the prefix {prefix}")]
    NoSuchPrefix { element: String, prefix: String },
}

impl CoxeterMatrix {
    /// Builds a matrix from entries with 0 standing for an infinite bond.
    pub fn new(rank: usize, rows: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        if rank == 0 || rank > u8::MAX as usize {
            return Err(CoxeterError::InvalidMatrix(format!(
                "rank {rank} out of supported range 1..=255"
            )));
        }
        if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
            return Err(CoxeterError::InvalidMatrix(format!(
                "expected {rank}x{rank} entries"
            )));
        }
        let mut entries = vec![0u32; rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                let m = rows[i][j];
                if i == j && m != 1 {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "diagonal entry m({i},{i}) = {m}, must be 1"
                    )));
                }
                if i != j && m == 1 {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "off-diagonal entry m({i},{j}) = 1, must be >= 2 or 0 (infinite)"
                    )));
                }
                if m != rows[j][i] {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
                entries[i * rank + j] = m;
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bond(&self, a: GeneratorId, b: GeneratorId) -> Bond {
        match self.entries[a.0 as usize * self.rank + b.0 as usize] {
            0 => Bond::Infinite,
            m => Bond::Finite(m),
        }
    }

    /// Raw entry with the 0-for-infinity encoding.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.rank + j]
    }

    pub fn is_right_angled(&self) -> bool {
        (0..self.rank).all(|i| {
            (0..self.rank).all(|j| i == j || matches!(self.entry(i, j), 0 | 2))
        })
    }

    /// Infinite dihedral matrix: rank 2, single infinite bond.
    pub fn dihedral_infinite() -> Self {
        CoxeterMatrix::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap()
    }

    /// Rank-2 matrix with a finite bond m(s,t) = m.
    pub fn dihedral(m: u32) -> Result<Self, CoxeterError> {
        CoxeterMatrix::new(2, vec![vec![1, m], vec![m, 1]])
    }

    /// Block-diagonal join of two matrices; generators of the two blocks commute.
    pub fn product(a: &CoxeterMatrix, b: &CoxeterMatrix) -> Result<Self, CoxeterError> {
        let rank = a.rank + b.rank;
        let mut rows = vec![vec![2u32; rank]; rank];
        for i in 0..a.rank {
            for j in 0..a.rank {
                rows[i][j] = a.entry(i, j);
            }
        }
        for i in 0..b.rank {
            for j in 0..b.rank {
                rows[a.rank + i][a.rank + j] = b.entry(i, j);
            }
        }
        CoxeterMatrix::new(rank, rows)
    }
}

/// A word in the standard generators; not necessarily reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<GeneratorId>);

impl Word {
    pub fn from_indices(ix: &[u8]) -> Self {
        Word(ix.iter().map(|&i| GeneratorId(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn bytes(&self) -> Vec<u8> {
        self.0.iter().map(|g| g.0).collect()
    }

    pub(crate) fn from_bytes(b: Vec<u8>) -> Self {
        Word(b.into_iter().map(GeneratorId).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|g| gen_name(*g)).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// A group element, stored as its ShortLex canonical word. Ordering is
/// ShortLex as well: by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    word: Word,
}

impl Element {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Wraps a word already known to be canonical. Callers outside the word
    /// problem engines must go through `CoxeterSystem::element`.
    pub(crate) fn from_canonical(word: Word) -> Self {
        Element { word }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word.0).cmp(&(other.word.len(), &other.word.0))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

/// A Coxeter system: a matrix plus memoized word-problem state.
///
/// All operations take `&self`; the memo table is guarded for concurrent use,
/// so a system can be shared across worker threads.
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    right_angled: bool,
    pub(crate) reduce_memo: RwLock<HashMap<Vec<u8>, Vec<u8>>>,
    spherical_memo: RwLock<Option<Vec<Vec<GeneratorId>>>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("rank", &self.matrix.rank())
            .finish()
    }
}

/// Default cap for ball, hull, and closure enumerations.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let right_angled = matrix.is_right_angled();
        CoxeterSystem {
            matrix,
            right_angled,
            reduce_memo: RwLock::new(HashMap::new()),
            spherical_memo: RwLock::new(None),
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_right_angled(&self) -> bool {
        self.right_angled
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> {
        (0..self.rank() as u8).map(GeneratorId)
    }

    pub(crate) fn check_word(&self, w: &Word) {
        for g in &w.0 {
            assert!(
                (g.0 as usize) < self.rank(),
                "generator {} out of range for rank {}",
                g.0,
                self.rank()
            );
        }
    }

    pub fn commutes(&self, a: GeneratorId, b: GeneratorId) -> bool {
        a != b && self.matrix.bond(a, b) == Bond::Finite(2)
    }

    /// ShortLex canonical form of the element represented by `w`.
    pub fn reduce(&self, w: &Word) -> Word {
        self.check_word(w);
        if self.right_angled {
            Word::from_bytes(reduce::ra_canonical(self, &w.bytes()))
        } else {
            Word::from_bytes(reduce::saturation_canonical(self, w.bytes()))
        }
    }

    pub fn length(&self, w: &Word) -> usize {
        self.reduce(w).len()
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        self.length(w) == w.len()
    }

    pub fn elements_equal(&self, a: &Word, b: &Word) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    /// Every reduced word of an element, sorted. Braid moves reach them all
    /// from the canonical word.
    pub fn reduced_words(&self, e: &Element, cap: usize) -> Result<Vec<Word>, CoxeterError> {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let start = e.word().bytes();
        seen.insert(start.clone());
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for (_, y) in reduce::braid_neighbors(self, &x) {
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(CoxeterError::ResourceLimit {
                            what: "enumerating reduced words",
                            cap,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
        let mut out: Vec<Vec<u8>> = seen.into_iter().collect();
        out.sort();
        Ok(out.into_iter().map(Word::from_bytes).collect())
    }

    pub fn element(&self, w: &Word) -> Element {
        Element::from_canonical(self.reduce(w))
    }

    pub fn identity(&self) -> Element {
        Element::from_canonical(Word::default())
    }

    pub fn generator(&self, s: GeneratorId) -> Element {
        assert!((s.0 as usize) < self.rank());
        Element::from_canonical(Word(vec![s]))
    }

    /// Right multiplication by a generator.
    pub fn mul_gen(&self, w: &Element, s: GeneratorId) -> Element {
        let mut letters = w.word.clone();
        letters.0.push(s);
        self.element(&letters)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut letters = a.word.clone();
        letters.0.extend_from_slice(&b.word.0);
        self.element(&letters)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let mut letters = a.word.clone();
        letters.0.reverse();
        self.element(&letters)
    }

    /// W-valued distance `u^{-1} v`.
    pub fn delta_w(&self, u: &Element, v: &Element) -> Element {
        let mut letters: Vec<GeneratorId> = u.word.0.iter().rev().copied().collect();
        letters.extend_from_slice(&v.word.0);
        self.element(&Word(letters))
    }

    /// Gallery distance in the Cayley graph, the length of `delta_w`.
    pub fn distance(&self, u: &Element, v: &Element) -> usize {
        self.delta_w(u, v).length()
    }

    pub fn left_descents(&self, w: &Element) -> Vec<GeneratorId> {
        let mut out = Vec::new();
        for s in self.generators() {
            let mut letters = vec![s];
            letters.extend_from_slice(&w.word.0);
            if self.length(&Word(letters)) < w.length() {
                out.push(s);
            }
        }
        out
    }

    pub fn right_descents(&self, w: &Element) -> Vec<GeneratorId> {
        let mut out = Vec::new();
        for s in self.generators() {
            if self.mul_gen(w, s).length() < w.length() {
                out.push(s);
            }
        }
        out
    }

    /// True when the standard parabolic subgroup on `types` is finite,
    /// equivalently when the cosine form restricted to `types` is positive
    /// definite.
    pub fn parabolic_is_spherical(&self, types: &[GeneratorId]) -> bool {
        let n = types.len();
        let mut g = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..n {
                g[i * n + j] = if types[i] == types[j] {
                    1.0
                } else {
                    match self.matrix.bond(types[i], types[j]) {
                        Bond::Infinite => -1.0,
                        Bond::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                    }
                };
            }
        }
        // Cholesky pivots: affine diagrams are exactly singular, so the
        // tolerance only has to absorb rounding.
        for k in 0..n {
            let mut d = g[k * n + k];
            for j in 0..k {
                d -= g[k * n + j] * g[k * n + j];
            }
            if d < 1e-9 {
                return false;
            }
            let d = d.sqrt();
            g[k * n + k] = d;
            for i in (k + 1)..n {
                let mut v = g[i * n + k];
                for j in 0..k {
                    v -= g[i * n + j] * g[k * n + j];
                }
                g[i * n + k] = v / d;
            }
        }
        true
    }

    /// Maximal subsets of generators spanning a finite parabolic. Memoized.
    pub fn maximal_spherical_subsets(&self) -> Vec<Vec<GeneratorId>> {
        if let Some(cached) = self.spherical_memo.read().unwrap().as_ref() {
            return cached.clone();
        }
        let n = self.rank();
        let mut spherical: Vec<Vec<GeneratorId>> = Vec::new();
        for mask in 1u64..(1u64 << n) {
            let types: Vec<GeneratorId> = (0..n as u8)
                .filter(|i| mask & (1 << i) != 0)
                .map(GeneratorId)
                .collect();
            if self.parabolic_is_spherical(&types) {
                spherical.push(types);
            }
        }
        let maximal: Vec<Vec<GeneratorId>> = spherical
            .iter()
            .filter(|a| {
                !spherical.iter().any(|b| {
                    b.len() > a.len() && a.iter().all(|x| b.contains(x))
                })
            })
            .cloned()
            .collect();
        *self.spherical_memo.write().unwrap() = Some(maximal.clone());
        maximal
    }
}
