//! A window is a materialised ball of chambers with cached folds (distances
//! to the base chamber) and a canonical numbering: chambers sort by fold
//! length, then by key. Serialisation and reports index chambers through
//! windows, never through raw discovery ids.

use std::collections::HashMap;

use super::{ops, Building, BuildingError, ChamberId};
use crate::coxeter::Element;

pub struct Window {
    center: ChamberId,
    radius: usize,
    chambers: Vec<ChamberId>,
    folds: Vec<Element>,
    keys: Vec<Vec<u8>>,
    index: HashMap<ChamberId, usize>,
}

impl Window {
    /// Materialises the ball of the given radius around `center`, capped at
    /// `cap` chambers.
    pub fn build(
        bld: &dyn Building,
        center: ChamberId,
        radius: usize,
        cap: usize,
    ) -> Result<Window, BuildingError> {
        let raw = ops::ball(bld, center, radius, cap)?;
        let mut rows: Vec<(usize, Vec<u8>, ChamberId, Element)> = raw
            .into_iter()
            .map(|c| {
                let fold = bld.w_distance(bld.base(), c)?;
                Ok((fold.length(), bld.chamber_key(c)?, c, fold))
            })
            .collect::<Result<Vec<_>, BuildingError>>()?;
        rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut chambers = Vec::with_capacity(rows.len());
        let mut folds = Vec::with_capacity(rows.len());
        let mut keys = Vec::with_capacity(rows.len());
        let mut index = HashMap::with_capacity(rows.len());
        for (i, (_, key, c, fold)) in rows.into_iter().enumerate() {
            index.insert(c, i);
            chambers.push(c);
            folds.push(fold);
            keys.push(key);
        }
        Ok(Window {
            center,
            radius,
            chambers,
            folds,
            keys,
            index,
        })
    }

    pub fn center(&self) -> ChamberId {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    /// Chambers in canonical window order.
    pub fn chambers(&self) -> &[ChamberId] {
        &self.chambers
    }

    pub fn chamber(&self, i: usize) -> ChamberId {
        self.chambers[i]
    }

    pub fn contains(&self, c: ChamberId) -> bool {
        self.index.contains_key(&c)
    }

    pub fn index_of(&self, c: ChamberId) -> Option<usize> {
        self.index.get(&c).copied()
    }

    /// Cached distance from the building base to chamber `i`.
    pub fn fold(&self, i: usize) -> &Element {
        &self.folds[i]
    }

    pub fn fold_of(&self, c: ChamberId) -> Option<&Element> {
        self.index_of(c).map(|i| &self.folds[i])
    }

    pub fn key(&self, i: usize) -> &[u8] {
        &self.keys[i]
    }
}
