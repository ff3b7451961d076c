//! Edges of the (q+1)-regular tree as a building over the infinite dihedral
//! group. Chambers are edges; the two panels of an edge are its endpoints.
//!
//! A chamber is keyed by its path from the base edge: the first byte packs
//! the side of the base it leaves through together with the first child
//! index, each later byte picks a child. W-distances come straight from this
//! path structure, so no search is involved.

use super::{check_generator, Building, BuildingError, ChamberId, Interner, PairExtremum};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Element, GeneratorId, Word};
use std::collections::BTreeMap;

fn lcp(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count()
}

/// Largest common prefix over pairs drawn from two sorted key lists. The
/// maximum is attained next to an insertion point, so neighbours suffice.
fn max_cross_lcp(a: &[Vec<u8>], b: &[Vec<u8>]) -> usize {
    let mut best = 0;
    for x in a {
        let i = b.partition_point(|y| y < x);
        if i < b.len() {
            best = best.max(lcp(x, &b[i]));
        }
        if i > 0 {
            best = best.max(lcp(x, &b[i - 1]));
        }
    }
    best
}

/// Smallest common prefix over pairs drawn from two sorted key lists. Equals
/// the smallest adjacent lcp over boundaries of the merged order that have
/// members of both lists on opposite sides.
fn min_cross_lcp(a: &[Vec<u8>], b: &[Vec<u8>]) -> usize {
    let mut merged: Vec<(&[u8], bool)> = a
        .iter()
        .map(|k| (k.as_slice(), true))
        .chain(b.iter().map(|k| (k.as_slice(), false)))
        .collect();
    merged.sort();
    let n = merged.len();
    let mut a_after = vec![false; n + 1];
    let mut b_after = vec![false; n + 1];
    for i in (0..n).rev() {
        a_after[i] = a_after[i + 1] || merged[i].1;
        b_after[i] = b_after[i + 1] || !merged[i].1;
    }
    let (mut a_seen, mut b_seen) = (false, false);
    let mut best = usize::MAX;
    for i in 0..n.saturating_sub(1) {
        a_seen |= merged[i].1;
        b_seen |= !merged[i].1;
        if (a_seen && b_after[i + 1]) || (b_seen && a_after[i + 1]) {
            best = best.min(lcp(merged[i].0, merged[i + 1].0));
        }
    }
    best
}

pub struct TreeBuilding {
    sys: CoxeterSystem,
    q: u32,
    chambers: Interner<Vec<u8>>,
    base: ChamberId,
}

/// Tree building with branching `q`: every panel has `q + 1` chambers and
/// exactly `q^l` chambers lie at each W-distance of length `l`. `q = 1`
/// reproduces the thin line.
pub fn tree_building(q: u32) -> Result<TreeBuilding, BuildingError> {
    if q == 0 || q > 120 {
        return Err(BuildingError::InvalidParameter(format!(
            "tree branching q = {q} outside 1..=120"
        )));
    }
    let sys = CoxeterSystem::new(CoxeterMatrix::dihedral_infinite());
    let chambers = Interner::new();
    let base = chambers.intern(Vec::new());
    Ok(TreeBuilding {
        sys,
        q,
        chambers,
        base,
    })
}

impl TreeBuilding {
    pub fn q(&self) -> u32 {
        self.q
    }

    fn key_of(&self, c: ChamberId) -> Result<Vec<u8>, BuildingError> {
        self.chambers.key(c).ok_or(BuildingError::UnknownChamber(c))
    }

    fn side(&self, key: &[u8]) -> u8 {
        key[0] / self.q as u8
    }

    /// Panel type between levels `j` and `j + 1` on the given side.
    fn step_type(side: u8, j: usize) -> u8 {
        (side as usize + j) as u8 % 2
    }
}

impl Building for TreeBuilding {
    fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    fn base(&self) -> ChamberId {
        self.base
    }

    fn w_distance(&self, a: ChamberId, b: ChamberId) -> Result<Element, BuildingError> {
        let ka = self.key_of(a)?;
        let kb = self.key_of(b)?;
        let (la, lb) = (ka.len(), kb.len());
        let mut types: Vec<u8> = Vec::new();
        if !ka.is_empty() && !kb.is_empty() && self.side(&ka) != self.side(&kb) {
            // through the base edge: descend, cross both base panels, ascend
            let (sa, sb) = (self.side(&ka), self.side(&kb));
            for j in (1..la).rev() {
                types.push(Self::step_type(sa, j));
            }
            types.push(sa);
            types.push(sb);
            for j in 1..lb {
                types.push(Self::step_type(sb, j));
            }
        } else {
            let side = if ka.is_empty() {
                if kb.is_empty() {
                    return Ok(self.sys.identity());
                }
                self.side(&kb)
            } else {
                self.side(&ka)
            };
            let p = ka
                .iter()
                .zip(kb.iter())
                .take_while(|(x, y)| x == y)
                .count();
            if p == la {
                // ancestor: ascend only
                for j in la..lb {
                    types.push(Self::step_type(side, j));
                }
            } else if p == lb {
                for j in (lb..la).rev() {
                    types.push(Self::step_type(side, j));
                }
            } else {
                // descend to the divergence panel, hop, ascend
                for j in (p + 1..la).rev() {
                    types.push(Self::step_type(side, j));
                }
                types.push(Self::step_type(side, p));
                for j in p + 1..lb {
                    types.push(Self::step_type(side, j));
                }
            }
        }
        let word = Word::from_bytes(types);
        debug_assert!(self.sys.is_reduced(&word));
        Ok(Element::from_canonical(word))
    }

    fn s_panel(&self, c: ChamberId, s: GeneratorId) -> Result<Vec<ChamberId>, BuildingError> {
        check_generator(&self.sys, s)?;
        let key = self.key_of(c)?;
        let q = self.q as u8;
        let mut keys: Vec<Vec<u8>> = Vec::with_capacity(self.q as usize + 1);
        if key.is_empty() {
            keys.push(Vec::new());
            for i in 0..q {
                keys.push(vec![s.0 * q + i]);
            }
        } else {
            let side = self.side(&key);
            let l = key.len();
            let far = Self::step_type(side, l);
            if s.0 == far {
                keys.push(key.clone());
                for i in 0..q {
                    let mut child = key.clone();
                    child.push(i);
                    keys.push(child);
                }
            } else {
                // near panel: parent plus all siblings of c
                keys.push(key[..l - 1].to_vec());
                if l == 1 {
                    for i in 0..q {
                        keys.push(vec![side * q + i]);
                    }
                } else {
                    for i in 0..q {
                        let mut sib = key[..l - 1].to_vec();
                        sib.push(i);
                        keys.push(sib);
                    }
                }
            }
        }
        keys.sort();
        Ok(keys.into_iter().map(|k| self.chambers.intern(k)).collect())
    }

    fn chamber_key(&self, c: ChamberId) -> Result<Vec<u8>, BuildingError> {
        self.key_of(c)
    }

    /// Exact in the tree: group chambers by side and depth, then each pair of
    /// groups has a closed form in the extremal common path prefix.
    fn list_distance(
        &self,
        xs: &[ChamberId],
        ys: &[ChamberId],
        ext: PairExtremum,
    ) -> Result<Option<usize>, BuildingError> {
        let group = |cs: &[ChamberId]| -> Result<_, BuildingError> {
            let mut by: BTreeMap<(u8, usize), Vec<Vec<u8>>> = BTreeMap::new();
            let mut has_base = false;
            for &c in cs {
                let k = self.key_of(c)?;
                if k.is_empty() {
                    has_base = true;
                } else {
                    by.entry((self.side(&k), k.len())).or_default().push(k);
                }
            }
            for v in by.values_mut() {
                v.sort();
            }
            Ok((by, has_base))
        };
        let (gx, base_x) = group(xs)?;
        let (gy, base_y) = group(ys)?;
        let mut best: Option<usize> = None;
        let mut take = |v: usize| {
            best = Some(match (best, ext) {
                (None, _) => v,
                (Some(b), PairExtremum::Min) => b.min(v),
                (Some(b), PairExtremum::Max) => b.max(v),
            });
        };
        if base_x && base_y {
            take(0);
        }
        if base_x {
            for (_, l) in gy.keys() {
                take(*l);
            }
        }
        if base_y {
            for (_, l) in gx.keys() {
                take(*l);
            }
        }
        for ((s1, l1), a) in &gx {
            for ((s2, l2), b) in &gy {
                if s1 != s2 {
                    take(l1 + l2);
                    continue;
                }
                let p = match ext {
                    PairExtremum::Min => max_cross_lcp(a, b),
                    PairExtremum::Max => min_cross_lcp(a, b),
                };
                take(if p == *l1.min(l2) {
                    l1.abs_diff(*l2)
                } else {
                    l1 + l2 - 2 * p - 1
                });
            }
        }
        Ok(best)
    }
}
