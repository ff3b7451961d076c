//! The thin building: the group itself, one chamber per element.

use super::{check_generator, Building, BuildingError, ChamberId, Interner};
use crate::coxeter::{CoxeterSystem, Element, GeneratorId};
use std::sync::Arc;

pub struct ThinBuilding {
    sys: Arc<CoxeterSystem>,
    chambers: Interner<Element>,
    base: ChamberId,
}

/// Chambers are the group elements; panels are the pairs `{w, ws}`.
pub fn thin_building(sys: Arc<CoxeterSystem>) -> ThinBuilding {
    let chambers = Interner::new();
    let base = chambers.intern(sys.identity());
    ThinBuilding { sys, chambers, base }
}

impl ThinBuilding {
    pub fn chamber_for(&self, e: &Element) -> ChamberId {
        self.chambers.intern(e.clone())
    }

    pub fn element_of(&self, c: ChamberId) -> Result<Element, BuildingError> {
        self.chambers.key(c).ok_or(BuildingError::UnknownChamber(c))
    }
}

impl Building for ThinBuilding {
    fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    fn base(&self) -> ChamberId {
        self.base
    }

    fn w_distance(&self, a: ChamberId, b: ChamberId) -> Result<Element, BuildingError> {
        let u = self.element_of(a)?;
        let v = self.element_of(b)?;
        Ok(self.sys.delta_w(&u, &v))
    }

    fn s_panel(&self, c: ChamberId, s: GeneratorId) -> Result<Vec<ChamberId>, BuildingError> {
        check_generator(&self.sys, s)?;
        let w = self.element_of(c)?;
        let ws = self.sys.mul_gen(&w, s);
        let mut pair = [w, ws];
        pair.sort_by_key(|e| e.word().bytes());
        Ok(pair.map(|e| self.chambers.intern(e)).to_vec())
    }

    fn chamber_key(&self, c: ChamberId) -> Result<Vec<u8>, BuildingError> {
        Ok(self.element_of(c)?.word().bytes())
    }
}
