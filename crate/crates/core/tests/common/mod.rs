//! Exact arithmetic models of small Coxeter groups. Word lengths come from
//! breadth-first search over the model tokens, so the library's reduction
//! machinery is checked from the outside.
#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

use asdim_core::coxeter::{CoxeterMatrix, CoxeterSystem, Word};

pub fn system(rank: usize, rows: Vec<Vec<u32>>) -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::new(rank, rows).unwrap())
}

pub fn dinf() -> CoxeterSystem {
    system(2, vec![vec![1, 0], vec![0, 1]])
}

pub fn a2() -> CoxeterSystem {
    system(2, vec![vec![1, 3], vec![3, 1]])
}

pub fn b2() -> CoxeterSystem {
    system(2, vec![vec![1, 4], vec![4, 1]])
}

pub fn affine_a2() -> CoxeterSystem {
    system(3, vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]])
}

/// Isometry x -> sign*x + shift of the integer line; the generators reflect
/// at 0 and at 1.
pub type LineIso = (i64, i64);

pub fn line_id() -> LineIso {
    (1, 0)
}

pub fn line_step(t: &LineIso, g: u8) -> LineIso {
    let (gs, gb) = if g == 0 { (-1, 0) } else { (-1, 2) };
    (t.0 * gs, t.0 * gb + t.1)
}

/// Permutation of three points; generators swap (0 1) and (1 2).
pub type Perm3 = [u8; 3];

pub fn perm3_id() -> Perm3 {
    [0, 1, 2]
}

pub fn perm3_step(p: &Perm3, g: u8) -> Perm3 {
    let gp: Perm3 = if g == 0 { [1, 0, 2] } else { [0, 2, 1] };
    [p[gp[0] as usize], p[gp[1] as usize], p[gp[2] as usize]]
}

/// Symmetry of the square as an integer matrix; generators are the diagonal
/// reflection and the reflection negating x.
pub type Mat2 = [i64; 4];

pub fn mat2_id() -> Mat2 {
    [1, 0, 0, 1]
}

pub fn mat2_step(m: &Mat2, g: u8) -> Mat2 {
    let gm: Mat2 = if g == 0 {
        [0, 1, 1, 0]
    } else {
        [-1, 0, 0, 1]
    };
    [
        m[0] * gm[0] + m[1] * gm[2],
        m[0] * gm[1] + m[1] * gm[3],
        m[2] * gm[0] + m[3] * gm[2],
        m[2] * gm[1] + m[3] * gm[3],
    ]
}

/// Affine permutation (sigma, t) acting on integer triples by
/// x -> (x_{sigma(i)} + t_i); generators are the two adjacent swaps and the
/// affine reflection swapping the outer coordinates with unit shifts.
pub type Aff3 = ([u8; 3], [i64; 3]);

pub fn aff3_id() -> Aff3 {
    ([0, 1, 2], [0, 0, 0])
}

fn aff3_gen(g: u8) -> Aff3 {
    match g {
        0 => ([1, 0, 2], [0, 0, 0]),
        1 => ([0, 2, 1], [0, 0, 0]),
        _ => ([2, 1, 0], [1, 0, -1]),
    }
}

pub fn aff3_step(f: &Aff3, g: u8) -> Aff3 {
    // composite (f then after g on the right): apply g first, then f
    let (sigma, t) = f;
    let (tau, u) = aff3_gen(g);
    let mut rho = [0u8; 3];
    let mut v = [0i64; 3];
    for i in 0..3 {
        rho[i] = tau[sigma[i] as usize];
        v[i] = u[sigma[i] as usize] + t[i];
    }
    (rho, v)
}

/// BFS distances over the model's Cayley graph out to `max_len`.
pub fn cayley_distances<T, F>(id: T, rank: u8, step: F, max_len: usize) -> HashMap<T, usize>
where
    T: Eq + Hash + Clone,
    F: Fn(&T, u8) -> T,
{
    let mut dist = HashMap::new();
    dist.insert(id.clone(), 0);
    let mut frontier = vec![id];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for t in &frontier {
            for g in 0..rank {
                let n = step(t, g);
                if !dist.contains_key(&n) {
                    dist.insert(n.clone(), len);
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// The model must realize the declared bond orders before it is trusted.
fn validate_model<T, F>(sys: &CoxeterSystem, id: &T, step: &F)
where
    T: Eq + Hash + Clone + std::fmt::Debug,
    F: Fn(&T, u8) -> T,
{
    let rank = sys.rank() as u8;
    for a in 0..rank {
        assert_eq!(step(&step(id, a), a), *id, "generator {a} is not an involution");
        for b in 0..rank {
            if a == b {
                continue;
            }
            let m = sys.matrix().entry(a as usize, b as usize) as usize;
            let mut t = id.clone();
            let mut order = None;
            for k in 1..=12 {
                t = step(&step(&t, a), b);
                if t == *id {
                    order = Some(k);
                    break;
                }
            }
            match m {
                0 => assert_eq!(order, None, "bond ({a},{b}) should be infinite"),
                m => assert_eq!(order, Some(m), "bond ({a},{b}) should have order {m}"),
            }
        }
    }
}

/// Checks every word of length at most `max_len`: the reduced length must
/// equal the BFS distance of the word's token, and words with equal tokens
/// must share their canonical form.
pub fn assert_words_match_model<T, F>(sys: &CoxeterSystem, id: T, step: F, max_len: usize)
where
    T: Eq + Hash + Clone + std::fmt::Debug,
    F: Fn(&T, u8) -> T,
{
    validate_model(sys, &id, &step);
    let rank = sys.rank() as u8;
    let dist = cayley_distances(id.clone(), rank, &step, max_len);
    let mut canon_by_token: HashMap<T, Word> = HashMap::new();
    let mut stack: Vec<(Vec<u8>, T)> = vec![(Vec::new(), id)];
    while let Some((prefix, token)) = stack.pop() {
        let canon = sys.reduce(&Word::from_indices(&prefix));
        let expected = dist[&token];
        assert_eq!(
            canon.len(),
            expected,
            "word {prefix:?} reduces to length {} but the model puts it at {expected}",
            canon.len()
        );
        match canon_by_token.get(&token) {
            None => {
                canon_by_token.insert(token.clone(), canon);
            }
            Some(seen) => assert_eq!(
                seen, &canon,
                "words with the same model token got different canonical forms"
            ),
        }
        if prefix.len() < max_len {
            for g in 0..rank {
                let mut next = prefix.clone();
                next.push(g);
                stack.push((next, step(&token, g)));
            }
        }
    }
}
