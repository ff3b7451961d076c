//! Flags of the seven-point projective plane as a spherical building of
//! rank 2. Lines are the triples {i, i+1, i+3} mod 7. A type-0 panel keeps
//! the line and varies the point, a type-1 panel keeps the point and varies
//! the line, so every panel holds 3 chambers.

use super::{check_generator, Building, BuildingError, ChamberId};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Element, GeneratorId, Word};

pub struct FanoBuilding {
    sys: CoxeterSystem,
    flags: Vec<(u8, u8)>,
    table: Vec<Element>,
}

fn on_line(p: u8, l: u8) -> bool {
    p == l || p == (l + 1) % 7 || p == (l + 3) % 7
}

/// Building of all 21 point-line flags of the seven-point plane. The base
/// chamber is the flag (point 0, line 0).
pub fn fano_building() -> FanoBuilding {
    let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(3).expect("valid bond"));
    let mut flags = Vec::with_capacity(21);
    for p in 0..7u8 {
        for l in 0..7u8 {
            if on_line(p, l) {
                flags.push((p, l));
            }
        }
    }
    flags.sort();
    let n = flags.len();

    // adjacency by panel type, then one breadth-first sweep per chamber to
    // read off every W-distance from the gallery type word
    let neighbors = |i: usize, t: u8| -> Vec<usize> {
        let (p, l) = flags[i];
        flags
            .iter()
            .enumerate()
            .filter(|&(j, &(p2, l2))| {
                j != i && if t == 0 { l2 == l && p2 != p } else { p2 == p && l2 != l }
            })
            .map(|(j, _)| j)
            .collect()
    };
    let mut table = vec![sys.identity(); n * n];
    for start in 0..n {
        let mut words: Vec<Option<Vec<u8>>> = vec![None; n];
        words[start] = Some(Vec::new());
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &i in &frontier {
                let w = words[i].clone().unwrap();
                for t in 0..2u8 {
                    for j in neighbors(i, t) {
                        if words[j].is_none() {
                            let mut wj = w.clone();
                            wj.push(t);
                            words[j] = Some(wj);
                            next.push(j);
                        }
                    }
                }
            }
            frontier = next;
        }
        for (end, w) in words.into_iter().enumerate() {
            let w = w.expect("flag complex is gallery connected");
            table[start * n + end] = sys.element(&Word::from_bytes(w));
        }
    }
    FanoBuilding { sys, flags, table }
}

impl FanoBuilding {
    pub fn flag_of(&self, c: ChamberId) -> Result<(u8, u8), BuildingError> {
        self.flags
            .get(c.0 as usize)
            .copied()
            .ok_or(BuildingError::UnknownChamber(c))
    }

    pub fn chamber_count(&self) -> usize {
        self.flags.len()
    }
}

impl Building for FanoBuilding {
    fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    fn base(&self) -> ChamberId {
        ChamberId(0)
    }

    fn w_distance(&self, a: ChamberId, b: ChamberId) -> Result<Element, BuildingError> {
        self.flag_of(a)?;
        self.flag_of(b)?;
        Ok(self.table[a.0 as usize * self.flags.len() + b.0 as usize].clone())
    }

    fn s_panel(&self, c: ChamberId, s: GeneratorId) -> Result<Vec<ChamberId>, BuildingError> {
        check_generator(&self.sys, s)?;
        let (p, l) = self.flag_of(c)?;
        Ok(self
            .flags
            .iter()
            .enumerate()
            .filter(|&(_, &(p2, l2))| if s.0 == 0 { l2 == l } else { p2 == p })
            .map(|(j, _)| ChamberId(j as u32))
            .collect())
    }

    fn chamber_key(&self, c: ChamberId) -> Result<Vec<u8>, BuildingError> {
        let (p, l) = self.flag_of(c)?;
        Ok(vec![p, l])
    }
}
