//! W-metric chamber complexes.
//!
//! A building here is anything implementing [`Building`]: a set of chambers
//! with a W-valued distance and panels (rank-1 residues) per generator.
//! Chambers are discovered lazily and handed out as opaque [`ChamberId`]s;
//! every chamber also carries a stable byte key, and all derived operations
//! order chambers by that key, so results never depend on discovery order.

mod fano;
pub mod ops;
mod product;
mod rab;
mod thin;
mod tree;
pub mod window;

pub use fano::{fano_building, FanoBuilding};
pub use product::{product_building, ProductBuilding};
pub use rab::{right_angled_building, RightAngledBuilding};
pub use thin::{thin_building, ThinBuilding};
pub use tree::{tree_building, TreeBuilding};
pub use window::Window;

use crate::coxeter::{CoxeterError, CoxeterSystem, Element, GeneratorId, Word};
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;
use thiserror::Error;

/// Opaque chamber handle, valid only for the building that produced it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChamberId(pub(crate) u32);

impl fmt::Display for ChamberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Error, Debug)]
pub enum BuildingError {
    #[error("unknown chamber {0}")]
    UnknownChamber(ChamberId),
    #[error("generator index {index} out of range for rank {rank}")]
    UnknownGenerator { index: u8, rank: usize },
    #[error("resource limit exceeded while {what} (cap {cap})")]
    ResourceLimit { what: &'static str, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no such gallery: {0}")]
    NoGallery(String),
    #[error("axiom violation: {0}")]
    AxiomViolation(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// Which end of the pairwise distance range is being computed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairExtremum {
    Min,
    Max,
}

/// A chamber complex over a fixed Coxeter system.
///
/// Implementations must be thread-safe; operations may run from several
/// workers at once. `s_panel` returns the full panel including the argument,
/// sorted by chamber key.
pub trait Building: Send + Sync {
    fn system(&self) -> &CoxeterSystem;

    fn base(&self) -> ChamberId;

    /// W-valued distance from `a` to `b`.
    fn w_distance(&self, a: ChamberId, b: ChamberId) -> Result<Element, BuildingError>;

    /// All chambers of the panel of type `s` through `c`, `c` included.
    fn s_panel(&self, c: ChamberId, s: GeneratorId) -> Result<Vec<ChamberId>, BuildingError>;

    /// Stable canonical key of a chamber. Keys are unique within a building
    /// and independent of discovery order.
    fn chamber_key(&self, c: ChamberId) -> Result<Vec<u8>, BuildingError>;

    /// Exact extremal gallery distance over all pairs of the two lists, for
    /// instances with a faster-than-quadratic way to compute it. `None`
    /// means no fast path; callers fall back to scanning.
    fn list_distance(
        &self,
        _xs: &[ChamberId],
        _ys: &[ChamberId],
        _ext: PairExtremum,
    ) -> Result<Option<usize>, BuildingError> {
        Ok(None)
    }

    /// The product structure, for buildings that are products.
    fn as_product(&self) -> Option<&product::ProductBuilding> {
        None
    }
}

/// Gallery distance: the length of the W-valued distance.
pub fn gallery_distance(
    bld: &dyn Building,
    a: ChamberId,
    b: ChamberId,
) -> Result<usize, BuildingError> {
    Ok(bld.w_distance(a, b)?.length())
}

/// A pre-validated gallery: chambers plus the reduced word of panel types
/// stepped through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gallery {
    pub chambers: Vec<ChamberId>,
    pub types: Word,
}

impl Gallery {
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn start(&self) -> ChamberId {
        self.chambers[0]
    }

    pub fn end(&self) -> ChamberId {
        *self.chambers.last().unwrap()
    }

    /// Chamber after the first `k` steps.
    pub fn prefix_chamber(&self, k: usize) -> Option<ChamberId> {
        self.chambers.get(k).copied()
    }
}

/// A residue: everything reachable from the anchor through panels whose type
/// lies in `types`.
#[derive(Clone, Debug)]
pub struct Residue {
    pub anchor: ChamberId,
    pub types: Vec<GeneratorId>,
}

/// Shared key-interning table used by the lazy instances.
pub(crate) struct Interner<K> {
    inner: RwLock<InternerInner<K>>,
}

struct InternerInner<K> {
    ids: HashMap<K, u32>,
    keys: Vec<K>,
}

impl<K: Clone + Eq + std::hash::Hash> Interner<K> {
    pub(crate) fn new() -> Self {
        Interner {
            inner: RwLock::new(InternerInner {
                ids: HashMap::new(),
                keys: Vec::new(),
            }),
        }
    }

    pub(crate) fn intern(&self, key: K) -> ChamberId {
        if let Some(&id) = self.inner.read().unwrap().ids.get(&key) {
            return ChamberId(id);
        }
        let mut inner = self.inner.write().unwrap();
        if let Some(&id) = inner.ids.get(&key) {
            return ChamberId(id);
        }
        let id = inner.keys.len() as u32;
        inner.keys.push(key.clone());
        inner.ids.insert(key, id);
        ChamberId(id)
    }

    pub(crate) fn key(&self, id: ChamberId) -> Option<K> {
        self.inner.read().unwrap().keys.get(id.0 as usize).cloned()
    }
}

/// Wrapper that corrupts the W-distance of one unordered chamber pair.
/// A diagnostic instrument: the axiom checker must catch the corruption.
pub struct TamperedBuilding {
    inner: std::sync::Arc<dyn Building>,
    pair: (ChamberId, ChamberId),
    wrong: Element,
}

impl TamperedBuilding {
    pub fn new(
        inner: std::sync::Arc<dyn Building>,
        pair: (ChamberId, ChamberId),
        wrong: Element,
    ) -> Self {
        TamperedBuilding { inner, pair, wrong }
    }
}

impl Building for TamperedBuilding {
    fn system(&self) -> &CoxeterSystem {
        self.inner.system()
    }

    fn base(&self) -> ChamberId {
        self.inner.base()
    }

    fn w_distance(&self, a: ChamberId, b: ChamberId) -> Result<Element, BuildingError> {
        if (a, b) == self.pair || (b, a) == self.pair {
            return Ok(self.wrong.clone());
        }
        self.inner.w_distance(a, b)
    }

    fn s_panel(&self, c: ChamberId, s: GeneratorId) -> Result<Vec<ChamberId>, BuildingError> {
        self.inner.s_panel(c, s)
    }

    fn chamber_key(&self, c: ChamberId) -> Result<Vec<u8>, BuildingError> {
        self.inner.chamber_key(c)
    }
}

pub(crate) fn check_generator(sys: &CoxeterSystem, s: GeneratorId) -> Result<(), BuildingError> {
    if (s.0 as usize) < sys.rank() {
        Ok(())
    } else {
        Err(BuildingError::UnknownGenerator {
            index: s.0,
            rank: sys.rank(),
        })
    }
}
