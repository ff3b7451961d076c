//! Right-angled buildings realised as graph products of finite cyclic
//! groups. Chambers are group elements in a reduced syllable normal form;
//! the panel of type `i` through a chamber is its coset under the cyclic
//! factor `i`, so its size is exactly `params[i]`.

use super::{check_generator, Building, BuildingError, ChamberId, Interner};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Element, GeneratorId, Word};

/// A syllable is a nonzero power of one cyclic generator.
type Syllable = (u8, u32);

pub struct RightAngledBuilding {
    sys: CoxeterSystem,
    params: Vec<u32>,
    chambers: Interner<Vec<u8>>,
    base: ChamberId,
}

/// Right-angled building over `matrix` where the panel of type `i` holds
/// `params[i]` chambers. All `params[i] == 2` gives the thin building.
pub fn right_angled_building(
    matrix: CoxeterMatrix,
    params: Vec<u32>,
) -> Result<RightAngledBuilding, BuildingError> {
    if !matrix.is_right_angled() {
        return Err(BuildingError::InvalidParameter(
            "matrix has a finite off-diagonal bond other than 2".into(),
        ));
    }
    if params.len() != matrix.rank() {
        return Err(BuildingError::InvalidParameter(format!(
            "expected {} panel sizes, got {}",
            matrix.rank(),
            params.len()
        )));
    }
    if let Some(p) = params.iter().find(|&&p| !(2..=255).contains(&p)) {
        return Err(BuildingError::InvalidParameter(format!(
            "panel size {p} outside 2..=255"
        )));
    }
    let sys = CoxeterSystem::new(matrix);
    let chambers = Interner::new();
    let base = chambers.intern(Vec::new());
    Ok(RightAngledBuilding {
        sys,
        params,
        chambers,
        base,
    })
}

impl RightAngledBuilding {
    pub fn params(&self) -> &[u32] {
        &self.params
    }

    fn commutes(&self, a: u8, b: u8) -> bool {
        self.sys.matrix().entry(a as usize, b as usize) == 2
    }

    /// Append one syllable on the right, merging with the rightmost syllable
    /// of the same generator when everything in between commutes with it.
    fn push_syllable(&self, sylls: &mut Vec<Syllable>, g: u8, e: u32) {
        let e = e % self.params[g as usize];
        if e == 0 {
            return;
        }
        let mut i = sylls.len();
        while i > 0 {
            let (h, f) = sylls[i - 1];
            if h == g {
                let ne = (f + e) % self.params[g as usize];
                if ne == 0 {
                    sylls.remove(i - 1);
                } else {
                    sylls[i - 1].1 = ne;
                }
                return;
            }
            if !self.commutes(h, g) {
                break;
            }
            i -= 1;
        }
        sylls.push((g, e));
    }

    /// Canonical order for a reduced syllable list: repeatedly emit the least
    /// generator whose syllable commutes past everything before it.
    fn canonicalize(&self, mut sylls: Vec<Syllable>) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(sylls.len());
        while !sylls.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..sylls.len() {
                let g = sylls[i].0;
                let free = sylls[..i]
                    .iter()
                    .all(|&(h, _)| h != g && self.commutes(h, g));
                if free && best.is_none_or(|b| g < sylls[b].0) {
                    best = Some(i);
                }
            }
            out.push(sylls.remove(best.expect("a first syllable is always free")));
        }
        out
    }

    fn encode(sylls: &[Syllable]) -> Vec<u8> {
        let mut key = Vec::with_capacity(2 * sylls.len());
        for &(g, e) in sylls {
            key.push(g);
            key.push(e as u8);
        }
        key
    }

    fn decode(key: &[u8]) -> Vec<Syllable> {
        key.chunks_exact(2).map(|c| (c[0], c[1] as u32)).collect()
    }

    fn syllables_of(&self, c: ChamberId) -> Result<Vec<Syllable>, BuildingError> {
        Ok(Self::decode(
            &self.chambers.key(c).ok_or(BuildingError::UnknownChamber(c))?,
        ))
    }

}

impl Building for RightAngledBuilding {
    fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    fn base(&self) -> ChamberId {
        self.base
    }

    fn w_distance(&self, a: ChamberId, b: ChamberId) -> Result<Element, BuildingError> {
        let sa = self.syllables_of(a)?;
        let sb = self.syllables_of(b)?;
        // reduced form of a^-1 b, then project each syllable to its generator
        let mut acc: Vec<Syllable> = Vec::with_capacity(sa.len() + sb.len());
        for &(g, e) in sa.iter().rev() {
            self.push_syllable(&mut acc, g, self.params[g as usize] - e);
        }
        for &(g, e) in &sb {
            self.push_syllable(&mut acc, g, e);
        }
        let word = Word::from_bytes(self.canonicalize(acc).iter().map(|&(g, _)| g).collect());
        debug_assert!(self.sys.is_reduced(&word));
        Ok(Element::from_canonical(word))
    }

    fn s_panel(&self, c: ChamberId, s: GeneratorId) -> Result<Vec<ChamberId>, BuildingError> {
        check_generator(&self.sys, s)?;
        let sylls = self.syllables_of(c)?;
        let mut keys: Vec<Vec<u8>> = (0..self.params[s.0 as usize])
            .map(|e| {
                let mut cur = sylls.clone();
                self.push_syllable(&mut cur, s.0, e);
                Self::encode(&self.canonicalize(cur))
            })
            .collect();
        keys.sort();
        keys.dedup();
        debug_assert_eq!(keys.len(), self.params[s.0 as usize] as usize);
        Ok(keys.into_iter().map(|k| self.chambers.intern(k)).collect())
    }

    fn chamber_key(&self, c: ChamberId) -> Result<Vec<u8>, BuildingError> {
        self.chambers.key(c).ok_or(BuildingError::UnknownChamber(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::ops::ball;

    #[test]
    fn rejects_bad_parameters() {
        let a2 = CoxeterMatrix::dihedral(3).unwrap();
        assert!(right_angled_building(a2, vec![2, 2]).is_err());
        let m = CoxeterMatrix::dihedral_infinite();
        assert!(right_angled_building(m.clone(), vec![2]).is_err());
        assert!(right_angled_building(m, vec![1, 2]).is_err());
    }

    #[test]
    fn thin_parameters_give_thin_panels() {
        let b =
            right_angled_building(CoxeterMatrix::dihedral_infinite(), vec![2, 2]).unwrap();
        let ball5 = ball(&b, b.base(), 5, 1000).unwrap();
        assert_eq!(ball5.len(), 11);
        for c in ball5 {
            for s in b.system().generators() {
                assert_eq!(b.s_panel(c, s).unwrap().len(), 2);
            }
        }
    }

    #[test]
    fn ball_growth_matches_tree() {
        // panels of size 3 over the infinite dihedral group branch like the
        // 3-regular tree: 1 + 2(2 + 4 + 8) chambers within radius 3
        let b =
            right_angled_building(CoxeterMatrix::dihedral_infinite(), vec![3, 3]).unwrap();
        assert_eq!(ball(&b, b.base(), 3, 1000).unwrap().len(), 29);
    }

    #[test]
    fn fold_length_counts_syllables() {
        let b =
            right_angled_building(CoxeterMatrix::dihedral_infinite(), vec![3, 4]).unwrap();
        let mut c = b.base();
        c = b.s_panel(c, GeneratorId(0)).unwrap()[1];
        c = b.s_panel(c, GeneratorId(1)).unwrap()[1];
        let w = b.w_distance(b.base(), c).unwrap();
        assert_eq!(w.length(), 2);
        assert_eq!(b.w_distance(c, c).unwrap().length(), 0);
    }

    #[test]
    fn commuting_generators_collapse() {
        // rank 3, generators 0 and 2 commute, everything else is unbonded
        let m = CoxeterMatrix::new(3, vec![vec![1, 0, 2], vec![0, 1, 0], vec![2, 0, 1]]).unwrap();
        let b = right_angled_building(m, vec![3, 3, 3]).unwrap();
        let c0 = b.s_panel(b.base(), GeneratorId(0)).unwrap()[1];
        let c2 = b.s_panel(c0, GeneratorId(2)).unwrap()[1];
        let w = b.w_distance(b.base(), c2).unwrap();
        assert_eq!(w.length(), 2);
        assert_eq!(w.word().bytes(), vec![0, 2]);
    }
}
