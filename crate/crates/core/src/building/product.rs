//! Product of two buildings over the product of their Coxeter systems.
//! Chambers are pairs, W-distances are computed factorwise and joined, and a
//! panel moves in exactly one factor.

use std::collections::HashMap;
use std::sync::RwLock;

use super::{check_generator, Building, BuildingError, ChamberId, Interner};
use crate::coxeter::{join_product_word, CoxeterMatrix, CoxeterSystem, Element, GeneratorId};

pub struct ProductBuilding {
    sys: CoxeterSystem,
    left: Box<dyn Building>,
    right: Box<dyn Building>,
    left_rank: usize,
    chambers: Interner<Vec<u8>>,
    pairs: RwLock<HashMap<ChamberId, (ChamberId, ChamberId)>>,
    base: ChamberId,
}

/// Product building with generator types `0..left_rank` acting on the left
/// factor and the rest on the right factor.
pub fn product_building(
    left: Box<dyn Building>,
    right: Box<dyn Building>,
) -> Result<ProductBuilding, BuildingError> {
    let matrix = CoxeterMatrix::product(left.system().matrix(), right.system().matrix())
        .map_err(BuildingError::Coxeter)?;
    let left_rank = left.system().rank();
    let mut b = ProductBuilding {
        sys: CoxeterSystem::new(matrix),
        left,
        right,
        left_rank,
        chambers: Interner::new(),
        pairs: RwLock::new(HashMap::new()),
        base: ChamberId(0),
    };
    b.base = b.chamber_of_pair(b.left.base(), b.right.base())?;
    Ok(b)
}

impl ProductBuilding {
    pub fn left(&self) -> &dyn Building {
        self.left.as_ref()
    }

    pub fn right(&self) -> &dyn Building {
        self.right.as_ref()
    }

    pub fn left_rank(&self) -> usize {
        self.left_rank
    }

    /// Chamber of this building holding the given factor chambers.
    pub fn chamber_of_pair(
        &self,
        lc: ChamberId,
        rc: ChamberId,
    ) -> Result<ChamberId, BuildingError> {
        let lk = self.left.chamber_key(lc)?;
        let rk = self.right.chamber_key(rc)?;
        let mut key = Vec::with_capacity(4 + lk.len() + rk.len());
        key.extend_from_slice(&(lk.len() as u32).to_be_bytes());
        key.extend_from_slice(&lk);
        key.extend_from_slice(&rk);
        let id = self.chambers.intern(key);
        self.pairs.write().unwrap().entry(id).or_insert((lc, rc));
        Ok(id)
    }

    /// Factor chambers of a product chamber.
    pub fn factors(&self, c: ChamberId) -> Result<(ChamberId, ChamberId), BuildingError> {
        self.pairs
            .read()
            .unwrap()
            .get(&c)
            .copied()
            .ok_or(BuildingError::UnknownChamber(c))
    }
}

impl Building for ProductBuilding {
    fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    fn base(&self) -> ChamberId {
        self.base
    }

    fn w_distance(&self, a: ChamberId, b: ChamberId) -> Result<Element, BuildingError> {
        let (la, ra) = self.factors(a)?;
        let (lb, rb) = self.factors(b)?;
        let wl = self.left.w_distance(la, lb)?;
        let wr = self.right.w_distance(ra, rb)?;
        let joined = join_product_word(wl.word(), wr.word(), self.left_rank);
        Ok(self.sys.element(&joined))
    }

    fn s_panel(&self, c: ChamberId, s: GeneratorId) -> Result<Vec<ChamberId>, BuildingError> {
        check_generator(&self.sys, s)?;
        let (lc, rc) = self.factors(c)?;
        let members = if (s.0 as usize) < self.left_rank {
            self.left
                .s_panel(lc, s)?
                .into_iter()
                .map(|l| self.chamber_of_pair(l, rc))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            self.right
                .s_panel(rc, GeneratorId(s.0 - self.left_rank as u8))?
                .into_iter()
                .map(|r| self.chamber_of_pair(lc, r))
                .collect::<Result<Vec<_>, _>>()?
        };
        let mut keyed: Vec<(Vec<u8>, ChamberId)> = members
            .into_iter()
            .map(|m| Ok((self.chamber_key(m)?, m)))
            .collect::<Result<Vec<_>, BuildingError>>()?;
        keyed.sort();
        Ok(keyed.into_iter().map(|(_, m)| m).collect())
    }

    fn chamber_key(&self, c: ChamberId) -> Result<Vec<u8>, BuildingError> {
        self.chambers.key(c).ok_or(BuildingError::UnknownChamber(c))
    }

    fn as_product(&self) -> Option<&ProductBuilding> {
        Some(self)
    }
}
