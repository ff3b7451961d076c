//! Colored covers at a fixed integer scale and their lifts through the
//! folding of a building onto its base apartment.
//!
//! A cover starts on the group: blocks on the infinite dihedral line, or
//! bricks on a product of two lines. Lifting pulls each set back through the
//! folding map, after thickening and hulling so that nearby fibers end up in
//! the same piece, then splits the pullback into gallery components and clips
//! to the window. The verifier recomputes every claimed property from the
//! chambers alone; nothing in its report is copied from the construction.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::building::{ops, Building, BuildingError, ChamberId, PairExtremum, Window};
use crate::coxeter::{
    is_infinite_dihedral, join_product_word, CoxeterSystem, Element, WeakOrderGate, Word,
};
use crate::retraction::FoldingMap;

/// Default bound on the number of chambers the lifting stage may materialize.
pub const DEFAULT_CHAMBER_CAP: usize = 2_000_000;

const ELEMENT_CAP: usize = 1_000_000;

/// One set of a group-level cover, tagged with where it came from.
#[derive(Clone, Debug)]
pub struct ApartmentSet {
    pub members: Vec<Element>,
    pub label: String,
}

/// Colored cover of a ball in the group. Families are indexed by color,
/// distinct sets of one color stay far apart, and `mesh` is the largest
/// pairwise distance within any single set.
#[derive(Clone, Debug)]
pub struct ApartmentCover {
    pub scale_d: usize,
    pub mesh: usize,
    pub families: Vec<Vec<ApartmentSet>>,
}

impl ApartmentCover {
    /// All sets with their color and index within the color.
    pub fn sets(&self) -> impl Iterator<Item = (usize, usize, &ApartmentSet)> {
        self.families
            .iter()
            .enumerate()
            .flat_map(|(color, fam)| fam.iter().enumerate().map(move |(i, s)| (color, i, s)))
    }
}

fn line_word(n: i64) -> Word {
    let first = if n >= 0 { 0u8 } else { 1u8 };
    let bytes: Vec<u8> = (0..n.unsigned_abs() as usize)
        .map(|k| (first + (k % 2) as u8) % 2)
        .collect();
    Word::from_bytes(bytes)
}

/// Two-color cover of the positions `-window_radius ..= window_radius` on the
/// infinite dihedral line by runs of `2d` consecutive elements: color 0 holds
/// the runs starting at multiples of `4d`, color 1 the runs in between. Runs
/// of one color are `2d + 1` apart and each run has diameter at most
/// `2d - 1`.
pub fn interval_cover(
    sys: &CoxeterSystem,
    d: usize,
    window_radius: i64,
) -> Result<ApartmentCover, BuildingError> {
    if !is_infinite_dihedral(sys) {
        return Err(BuildingError::InvalidParameter(
            "interval covers need the infinite dihedral system".into(),
        ));
    }
    if d == 0 {
        return Err(BuildingError::InvalidParameter(
            "the scale must be positive".into(),
        ));
    }
    if window_radius < 0 {
        return Err(BuildingError::InvalidParameter(
            "the window radius must not be negative".into(),
        ));
    }
    let r = window_radius;
    let period = 4 * d as i64;
    let half = 2 * d as i64;
    let mut families = vec![Vec::new(), Vec::new()];
    let mut mesh = 0;
    for k in (-r - period).div_euclid(period)..=r.div_euclid(period) + 1 {
        for color in 0..2i64 {
            let start = period * k + half * color;
            let lo = start.max(-r);
            let hi = (start + half - 1).min(r);
            if lo > hi {
                continue;
            }
            let members: Vec<Element> = (lo..=hi).map(|n| sys.element(&line_word(n))).collect();
            mesh = mesh.max((hi - lo) as usize);
            families[color as usize].push(ApartmentSet {
                members,
                label: format!("line color {color} run {k}"),
            });
        }
    }
    Ok(ApartmentCover {
        scale_d: d,
        mesh,
        families,
    })
}

/// How to color a cover of a product of two lines.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoverMode {
    /// Three colors of `4d`-sided boxes, each row of boxes shifted by half a
    /// period against the previous row.
    Brick,
    /// One color per pair of factor colors; sets are pairwise products of the
    /// factor sets.
    ProductColors,
}

fn is_product_of_lines(sys: &CoxeterSystem) -> bool {
    sys.rank() == 4
        && sys.matrix().entry(0, 1) == 0
        && sys.matrix().entry(2, 3) == 0
        && [(0, 2), (0, 3), (1, 2), (1, 3)]
            .iter()
            .all(|&(a, b)| sys.matrix().entry(a, b) == 2)
}

fn pair_element(sys: &CoxeterSystem, x: i64, y: i64) -> Element {
    sys.element(&join_product_word(&line_word(x), &line_word(y), 2))
}

/// Cover of a product of two infinite dihedral groups assembled from covers
/// of the factors. Brick mode lays `4d`-sided boxes in staggered rows and
/// needs three colors; product mode crosses the factor covers set by set and
/// multiplies their color counts. Both keep distinct sets of one color at
/// distance at least `2d`.
pub fn brick_cover_product(
    sys: &CoxeterSystem,
    cov1: &ApartmentCover,
    cov2: &ApartmentCover,
    mode: CoverMode,
) -> Result<ApartmentCover, BuildingError> {
    if !is_product_of_lines(sys) {
        return Err(BuildingError::InvalidParameter(
            "brick covers need a product of two infinite dihedral systems".into(),
        ));
    }
    if cov1.scale_d != cov2.scale_d {
        return Err(BuildingError::InvalidParameter(format!(
            "factor covers use different scales {} and {}",
            cov1.scale_d, cov2.scale_d
        )));
    }
    let d = cov1.scale_d as i64;
    let span = |cov: &ApartmentCover| {
        cov.families
            .iter()
            .flatten()
            .flat_map(|s| &s.members)
            .map(|e| e.length() as i64)
            .max()
            .unwrap_or(0)
    };
    let (r1, r2) = (span(cov1), span(cov2));
    match mode {
        CoverMode::Brick => {
            let period = 4 * d;
            let half = 2 * d;
            let mut families = vec![Vec::new(), Vec::new(), Vec::new()];
            let mut mesh = 0;
            for k in (-r2 - period).div_euclid(period)..=r2.div_euclid(period) + 1 {
                let ylo = (period * k).max(-r2);
                let yhi = (period * k + period - 1).min(r2);
                if ylo > yhi {
                    continue;
                }
                let shift = half * k;
                for j in (-r1 - period - shift).div_euclid(period)
                    ..=(r1 - shift).div_euclid(period) + 1
                {
                    let xlo = (period * j + shift).max(-r1);
                    let xhi = (period * j + shift + period - 1).min(r1);
                    if xlo > xhi {
                        continue;
                    }
                    let color = (j + 2 * k).rem_euclid(3) as usize;
                    let mut members =
                        Vec::with_capacity(((xhi - xlo + 1) * (yhi - ylo + 1)) as usize);
                    for x in xlo..=xhi {
                        for y in ylo..=yhi {
                            members.push(pair_element(sys, x, y));
                        }
                    }
                    mesh = mesh.max((xhi - xlo + yhi - ylo) as usize);
                    families[color].push(ApartmentSet {
                        members,
                        label: format!("brick j={j} k={k}"),
                    });
                }
            }
            Ok(ApartmentCover {
                scale_d: cov1.scale_d,
                mesh,
                families,
            })
        }
        CoverMode::ProductColors => {
            let n2 = cov2.families.len();
            let mut families = vec![Vec::new(); cov1.families.len() * n2];
            let mut mesh = 0;
            for (c1, i1, s1) in cov1.sets() {
                for (c2, i2, s2) in cov2.sets() {
                    let mut members = Vec::with_capacity(s1.members.len() * s2.members.len());
                    for m1 in &s1.members {
                        for m2 in &s2.members {
                            members
                                .push(sys.element(&join_product_word(m1.word(), m2.word(), 2)));
                        }
                    }
                    let diam = |ms: &[Element]| {
                        let ps: Vec<i64> = ms.iter().map(crate::coxeter::line_position).collect();
                        (ps.iter().max().unwrap() - ps.iter().min().unwrap()) as usize
                    };
                    mesh = mesh.max(diam(&s1.members) + diam(&s2.members));
                    families[c1 * n2 + c2].push(ApartmentSet {
                        members,
                        label: format!("product ({i1},{i2}) of {} and {}", s1.label, s2.label),
                    });
                }
            }
            Ok(ApartmentCover {
                scale_d: cov1.scale_d,
                mesh,
                families,
            })
        }
    }
}

/// Everything at distance strictly below `d` from the set: empty at `d = 0`,
/// the set itself at `d = 1`, one more Cayley step per further unit.
pub fn thicken_nd(sys: &CoxeterSystem, us: &[Element], d: usize) -> BTreeSet<Element> {
    let mut out: BTreeSet<Element> = BTreeSet::new();
    if d == 0 {
        return out;
    }
    out.extend(us.iter().cloned());
    let mut frontier: Vec<Element> = us.to_vec();
    for _ in 1..d {
        let mut next = Vec::new();
        for u in &frontier {
            for s in sys.generators() {
                let v = sys.mul_gen(u, s);
                if out.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Union of all maximal finite-parabolic cosets meeting the set; the
/// group-level counterpart of thickening a chamber set through its residues.
pub fn thicken_elements(
    sys: &CoxeterSystem,
    xs: &BTreeSet<Element>,
    cap: usize,
) -> Result<BTreeSet<Element>, BuildingError> {
    let mut parabolics: Vec<Vec<Element>> = Vec::new();
    for types in sys.maximal_spherical_subsets() {
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        seen.insert(sys.identity());
        let mut frontier = vec![sys.identity()];
        while let Some(w) = frontier.pop() {
            for &s in &types {
                let v = sys.mul_gen(&w, s);
                if seen.insert(v.clone()) {
                    if seen.len() > cap {
                        return Err(BuildingError::ResourceLimit {
                            what: "enumerating a finite parabolic subgroup",
                            cap,
                        });
                    }
                    frontier.push(v);
                }
            }
        }
        parabolics.push(seen.into_iter().collect());
    }
    let mut out = xs.clone();
    for x in xs {
        for par in &parabolics {
            for p in par {
                out.insert(sys.mul(x, p));
                if out.len() > cap {
                    return Err(BuildingError::ResourceLimit {
                        what: "thickening a set of elements",
                        cap,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Caps for the lifting stage. `max_chambers` bounds the ball that components
/// are searched in; growth stops after the last complete radius that fits,
/// and the result records how far it got.
#[derive(Clone, Copy, Debug)]
pub struct LiftOptions {
    pub max_chambers: usize,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            max_chambers: DEFAULT_CHAMBER_CAP,
        }
    }
}

/// One lifted set: the chambers of a single gallery component of the pulled
/// back thickened hull that fold into the source set, clipped to the window.
#[derive(Clone, Debug)]
pub struct LiftedSet {
    pub chambers: Vec<ChamberId>,
    pub color: usize,
    pub u_index: usize,
    pub component: usize,
    pub source: String,
}

/// Cover of a chamber window by lifted sets, one family per color.
#[derive(Clone, Debug)]
pub struct LiftedCover {
    pub scale_d: usize,
    pub families: Vec<Vec<LiftedSet>>,
    pub window_radius: usize,
    /// Radius of the enlarged ball the components were computed in.
    pub enlarged_radius: usize,
    /// Radius that would hold every pulled back thickened hull completely.
    pub support_radius: usize,
    /// Whether the enlarged ball reached `support_radius`. When false, sets
    /// near the window boundary may be split more finely than in the full
    /// building, but never merged, so separation checks stay meaningful.
    pub support_covered: bool,
}

/// Pulls a group cover back through the folding map. Per source set: thicken
/// within the scale, close under minimal galleries, thicken through residues,
/// take the chamber preimage inside an enlarged ball, split into gallery
/// components, and keep each component's chambers that fold into the source
/// and lie in the window. Empty intersections are dropped.
pub fn build_lifted_cover(
    fm: &FoldingMap,
    cov: &ApartmentCover,
    window: &Window,
    opts: LiftOptions,
) -> Result<LiftedCover, BuildingError> {
    let bld = fm.building();
    let sys = bld.system();

    struct Prepared {
        color: usize,
        u_index: usize,
        label: String,
        members: BTreeSet<Element>,
        t_hull: BTreeSet<Element>,
    }
    let mut prepared = Vec::new();
    let mut support_radius = window.radius();
    for (color, u_index, set) in cov.sets() {
        if set.members.is_empty() {
            continue;
        }
        let nd: Vec<Element> = thicken_nd(sys, &set.members, cov.scale_d)
            .into_iter()
            .collect();
        let hull = sys.gallery_hull(&nd, ELEMENT_CAP)?;
        let t_hull = thicken_elements(sys, &hull, ELEMENT_CAP)?;
        support_radius =
            support_radius.max(t_hull.iter().map(|w| w.length()).max().unwrap_or(0));
        prepared.push(Prepared {
            color,
            u_index,
            label: set.label.clone(),
            members: set.members.iter().cloned().collect(),
            t_hull,
        });
    }

    // one shared ball around the window center, grown a complete layer at a
    // time toward the radius that contains every pulled back hull
    let center = window.center();
    let mut seen: HashMap<ChamberId, Element> = HashMap::new();
    seen.insert(center, fm.fold(center)?);
    let mut frontier = vec![center];
    let mut reached = 0usize;
    while reached < support_radius && !frontier.is_empty() {
        let mut next: Vec<ChamberId> = Vec::new();
        let mut fresh: HashSet<ChamberId> = HashSet::new();
        for &c in &frontier {
            for nb in ops::adjacent(bld, c)? {
                if !seen.contains_key(&nb) && fresh.insert(nb) {
                    next.push(nb);
                }
            }
        }
        if seen.len() + next.len() > opts.max_chambers {
            break;
        }
        for &c in &next {
            let f = fm.fold(c)?;
            seen.insert(c, f);
        }
        frontier = next;
        reached += 1;
    }
    if reached < window.radius() {
        return Err(BuildingError::ResourceLimit {
            what: "growing the component search ball",
            cap: opts.max_chambers,
        });
    }

    let mut families: Vec<Vec<LiftedSet>> = vec![Vec::new(); cov.families.len()];
    for p in &prepared {
        let pre: BTreeSet<ChamberId> = seen
            .iter()
            .filter(|(_, f)| p.t_hull.contains(f))
            .map(|(&c, _)| c)
            .collect();
        if pre.is_empty() {
            continue;
        }
        for (ci, comp) in ops::components(bld, &pre)?.iter().enumerate() {
            let chambers: Vec<ChamberId> = comp
                .iter()
                .copied()
                .filter(|c| window.contains(*c) && p.members.contains(&seen[c]))
                .collect();
            if chambers.is_empty() {
                continue;
            }
            families[p.color].push(LiftedSet {
                chambers,
                color: p.color,
                u_index: p.u_index,
                component: ci,
                source: p.label.clone(),
            });
        }
    }
    Ok(LiftedCover {
        scale_d: cov.scale_d,
        families,
        window_radius: window.radius(),
        enlarged_radius: reached,
        support_radius,
        support_covered: reached >= support_radius,
    })
}

/// Measurements of one lifted set, in family order.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct SetStat {
    pub color: usize,
    pub u_index: usize,
    pub component: usize,
    pub source: String,
    pub size: usize,
    pub diameter: usize,
}

/// Everything the cover claims, recomputed from the chambers alone.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub scale_d: usize,
    pub covered: bool,
    pub uncovered: Vec<ChamberId>,
    /// Exact smallest gallery distance between distinct sets of one color,
    /// absent when no color has two sets.
    pub min_same_color_distance: Option<usize>,
    pub separation_ok: bool,
    pub max_set_diameter: usize,
    pub colors_used: usize,
    pub window_radius: usize,
    /// Number of sets per exact diameter.
    pub diameter_histogram: BTreeMap<usize, usize>,
    pub set_stats: Vec<SetStat>,
}

/// Measures a lifted cover against the window it claims to cover: coverage,
/// exact same-color separation, exact set diameters and the color count.
/// Distance work is pruned only through bounds that hold for every pair, so
/// the extremes are exact.
pub fn verify_cover(
    bld: &dyn Building,
    lc: &LiftedCover,
    window: &Window,
    d: usize,
) -> Result<CoverReport, BuildingError> {
    let mut covered_set: HashSet<ChamberId> = HashSet::new();
    for set in lc.families.iter().flatten() {
        covered_set.extend(set.chambers.iter().copied());
    }
    let uncovered: Vec<ChamberId> = window
        .chambers()
        .iter()
        .copied()
        .filter(|c| !covered_set.contains(c))
        .collect();

    let sets: Vec<&LiftedSet> = lc.families.iter().flatten().collect();
    let diameters = sets
        .par_iter()
        .map(|s| ops::set_diameter(bld, &s.chambers))
        .collect::<Result<Vec<_>, _>>()?;
    let mut diameter_histogram = BTreeMap::new();
    for &dia in &diameters {
        *diameter_histogram.entry(dia).or_insert(0usize) += 1;
    }
    let set_stats: Vec<SetStat> = sets
        .iter()
        .zip(&diameters)
        .map(|(s, &diameter)| SetStat {
            color: s.color,
            u_index: s.u_index,
            component: s.component,
            source: s.source.clone(),
            size: s.chambers.len(),
            diameter,
        })
        .collect();

    let mut pairs = Vec::new();
    for fam in &lc.families {
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                pairs.push((&fam[i], &fam[j]));
            }
        }
    }
    let mins = pairs
        .par_iter()
        .map(|(a, b)| ops::set_pair_distance(bld, &a.chambers, &b.chambers, PairExtremum::Min))
        .collect::<Result<Vec<_>, _>>()?;
    let min_same_color_distance = mins.into_iter().min();

    Ok(CoverReport {
        scale_d: d,
        covered: uncovered.is_empty(),
        uncovered,
        min_same_color_distance,
        separation_ok: min_same_color_distance.is_none_or(|m| m >= d),
        max_set_diameter: diameters.into_iter().max().unwrap_or(0),
        colors_used: lc.families.iter().filter(|f| !f.is_empty()).count(),
        window_radius: window.radius(),
        diameter_histogram,
        set_stats,
    })
}

/// Outcome of checking one lifted component against the radius and diameter
/// bounds derived from its gate.
#[derive(Clone, Debug)]
pub struct BoundCheck {
    /// Largest pairwise distance within the source element set.
    pub u_diameter: usize,
    pub gate_length: usize,
    /// Largest gallery distance from the gate chamber to an entry chamber.
    pub entry_spread: usize,
    /// Largest gallery distance from the gate chamber over the component.
    pub max_from_gate: usize,
    pub v_diameter: usize,
    pub radius_ok: bool,
    pub diameter_ok: bool,
}

/// Checks that a component stays within the reach of its gate: every chamber
/// within `entry_spread + u_diameter` of the gate chamber, and the diameter
/// strictly below twice that, with singletons exempt from strictness. Entry
/// chambers are the component's fiber over the gate element, falling back to
/// the chambers with weak-order minimal folds when the gate is not hit.
pub fn diameter_bound_check(
    bld: &dyn Building,
    fm: &FoldingMap,
    u: &[Element],
    gate: &WeakOrderGate,
    measured_v: &[ChamberId],
) -> Result<BoundCheck, BuildingError> {
    if u.is_empty() || measured_v.is_empty() {
        return Err(BuildingError::InvalidParameter(
            "bound checks need a nonempty source set and component".into(),
        ));
    }
    let sys = bld.system();
    let mut u_diameter = 0;
    for a in u {
        for b in u {
            u_diameter = u_diameter.max(sys.distance(a, b));
        }
    }

    let folds = measured_v
        .iter()
        .map(|&c| fm.fold(c))
        .collect::<Result<Vec<Element>, _>>()?;
    let mut entries: Vec<(usize, ChamberId)> = measured_v
        .iter()
        .zip(&folds)
        .filter(|(_, f)| **f == gate.gate)
        .map(|(&c, f)| (f.length(), c))
        .collect();
    if entries.is_empty() {
        let fold_set: BTreeSet<&Element> = folds.iter().collect();
        entries = measured_v
            .iter()
            .zip(&folds)
            .filter(|(_, f)| {
                fold_set
                    .iter()
                    .all(|g| *g == *f || g.length() + sys.distance(g, f) != f.length())
            })
            .map(|(&c, f)| (f.length(), c))
            .collect();
    }
    let mut keyed = entries
        .into_iter()
        .map(|(l, c)| Ok(((l, bld.chamber_key(c)?), c)))
        .collect::<Result<Vec<_>, BuildingError>>()?;
    keyed.sort();
    let gate_chamber = keyed[0].1;
    let entry_chambers: Vec<ChamberId> = keyed.into_iter().map(|(_, c)| c).collect();

    let entry_spread =
        ops::set_pair_distance(bld, &[gate_chamber], &entry_chambers, PairExtremum::Max)?;
    let max_from_gate =
        ops::set_pair_distance(bld, &[gate_chamber], measured_v, PairExtremum::Max)?;
    let v_diameter = ops::set_diameter(bld, measured_v)?;
    let reach = entry_spread + u_diameter;
    Ok(BoundCheck {
        u_diameter,
        gate_length: gate.gate.length(),
        entry_spread,
        max_from_gate,
        v_diameter,
        radius_ok: max_from_gate <= reach,
        diameter_ok: v_diameter == 0 || v_diameter < 2 * reach,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::{thin_building, tree_building};
    use crate::coxeter::{line_element, line_position, CoxeterMatrix};
    use std::sync::Arc;

    fn line_system() -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::dihedral_infinite())
    }

    fn positions(set: &ApartmentSet) -> Vec<i64> {
        set.members.iter().map(line_position).collect()
    }

    #[test]
    fn interval_cover_partitions_the_line() {
        let sys = line_system();
        let cov = interval_cover(&sys, 1, 8).unwrap();
        assert_eq!(cov.families.len(), 2);
        assert!(cov.mesh <= 1);
        let mut all: Vec<i64> = cov
            .families
            .iter()
            .flatten()
            .flat_map(|s| positions(s))
            .collect();
        all.sort();
        assert_eq!(all, (-8..=8).collect::<Vec<_>>());
        // runs of one color never come closer than 2d + 1
        for fam in &cov.families {
            for i in 0..fam.len() {
                for j in i + 1..fam.len() {
                    let gap = positions(&fam[i])
                        .iter()
                        .flat_map(|a| positions(&fam[j]).iter().map(|b| (a - b).abs()).min())
                        .min()
                        .unwrap();
                    assert!(gap >= 3, "gap {gap}");
                }
            }
        }
    }

    #[test]
    fn narrow_windows_truncate_blocks() {
        let sys = line_system();
        let cov = interval_cover(&sys, 5, 3).unwrap();
        let sizes: Vec<usize> = cov.families.iter().map(|f| f.len()).collect();
        assert_eq!(sizes, vec![1, 1]);
        assert_eq!(positions(&cov.families[0][0]), (0..=3).collect::<Vec<_>>());
        assert_eq!(
            positions(&cov.families[1][0]),
            (-3..=-1).collect::<Vec<_>>()
        );
    }

    #[test]
    fn thickening_walks_the_line() {
        let sys = line_system();
        let us: Vec<Element> = (5..=8).map(|n| line_element(&sys, n)).collect();
        assert!(thicken_nd(&sys, &us, 0).is_empty());
        assert_eq!(thicken_nd(&sys, &us, 1).len(), 4);
        let wide: Vec<i64> = thicken_nd(&sys, &us, 2)
            .iter()
            .map(line_position)
            .collect();
        let mut wide = wide;
        wide.sort();
        assert_eq!(wide, (4..=9).collect::<Vec<_>>());
    }

    fn product_line_system() -> CoxeterSystem {
        let m = CoxeterMatrix::product(
            &CoxeterMatrix::dihedral_infinite(),
            &CoxeterMatrix::dihedral_infinite(),
        )
        .unwrap();
        CoxeterSystem::new(m)
    }

    fn grid_position(e: &Element) -> (i64, i64) {
        let (l, r) = crate::coxeter::split_product_word(e.word(), 2);
        let pos = |w: &Word| match w.0.first() {
            None => 0,
            Some(g) if g.0 == 0 => w.0.len() as i64,
            Some(_) => -(w.0.len() as i64),
        };
        (pos(&l), pos(&r))
    }

    #[test]
    fn bricks_cover_the_box_with_three_colors() {
        let line = line_system();
        let prod = product_line_system();
        let cov1 = interval_cover(&line, 1, 10).unwrap();
        let cov2 = interval_cover(&line, 1, 10).unwrap();
        let cov = brick_cover_product(&prod, &cov1, &cov2, CoverMode::Brick).unwrap();
        assert_eq!(cov.families.len(), 3);
        assert!(cov.mesh <= 8);
        let mut grid: BTreeSet<(i64, i64)> = BTreeSet::new();
        for (_, _, s) in cov.sets() {
            grid.extend(s.members.iter().map(|e| grid_position(e)));
        }
        for x in -10..=10 {
            for y in -10..=10 {
                assert!(grid.contains(&(x, y)), "({x},{y}) uncovered");
            }
        }
        // distinct same-color bricks stay at least 2d apart in the grid metric
        for fam in &cov.families {
            for i in 0..fam.len() {
                for j in i + 1..fam.len() {
                    let a: Vec<_> = fam[i]
                        .members
                        .iter()
                        .map(|e| grid_position(e))
                        .collect();
                    let gap = fam[j]
                        .members
                        .iter()
                        .map(|e| grid_position(e))
                        .flat_map(|(x2, y2)| {
                            a.iter()
                                .map(move |(x1, y1)| (x1 - x2).abs() + (y1 - y2).abs())
                                .min()
                        })
                        .min()
                        .unwrap();
                    assert!(gap >= 2, "bricks {} and {} at gap {gap}", fam[i].label, fam[j].label);
                }
            }
        }
    }

    #[test]
    fn product_colors_collapse_on_a_trivial_factor() {
        let line = line_system();
        let prod = product_line_system();
        let cov1 = interval_cover(&line, 2, 9).unwrap();
        let point = interval_cover(&line, 2, 0).unwrap();
        let cov = brick_cover_product(&prod, &cov1, &point, CoverMode::ProductColors).unwrap();
        assert_eq!(cov.families.len(), 4);
        let nonempty: Vec<usize> = cov.families.iter().map(|f| f.len()).collect();
        // the trivial factor has one set of color 0, so half the colors die
        assert_eq!(nonempty, vec![3, 0, 3, 0]);
        let total: usize = cov.sets().map(|(_, _, s)| s.members.len()).sum();
        let original: usize = cov1.sets().map(|(_, _, s)| s.members.len()).sum();
        assert_eq!(total, original);
    }

    #[test]
    fn thin_line_lift_reproduces_the_cover() {
        let sys = Arc::new(line_system());
        let bld = thin_building(sys.clone());
        let fm = FoldingMap::new(&bld);
        let window = Window::build(&bld, bld.base(), 8, 10_000).unwrap();
        let cov = interval_cover(&sys, 2, 8).unwrap();
        let lifted = build_lifted_cover(&fm, &cov, &window, LiftOptions::default()).unwrap();
        assert!(lifted.support_covered);
        // folding is the identity here, so each set lifts to one piece
        for (fam, lfam) in cov.families.iter().zip(&lifted.families) {
            let expected = fam.iter().filter(|s| !s.members.is_empty()).count();
            assert_eq!(lfam.len(), expected);
        }
        for set in lifted.families.iter().flatten() {
            let folds: BTreeSet<Element> = set
                .chambers
                .iter()
                .map(|&c| fm.fold(c).unwrap())
                .collect();
            let src: BTreeSet<Element> = cov.families[set.color][set.u_index]
                .members
                .iter()
                .cloned()
                .collect();
            assert!(folds.is_subset(&src));
        }
        let report = verify_cover(&bld, &lifted, &window, 2).unwrap();
        assert!(report.covered, "uncovered: {:?}", report.uncovered);
        assert!(report.separation_ok);
        assert_eq!(report.min_same_color_distance, Some(5));
        assert_eq!(report.colors_used, 2);
        assert_eq!(report.max_set_diameter, cov.mesh);
    }

    #[test]
    fn tree_lift_covers_and_separates() {
        let t = tree_building(2).unwrap();
        let fm = FoldingMap::new(&t);
        let window = Window::build(&t, t.base(), 6, 100_000).unwrap();
        let cov = interval_cover(t.system(), 2, 6).unwrap();
        let lifted = build_lifted_cover(&fm, &cov, &window, LiftOptions::default()).unwrap();
        assert!(lifted.support_covered);
        assert!(lifted.enlarged_radius >= lifted.window_radius);
        for set in lifted.families.iter().flatten() {
            let src: BTreeSet<Element> = cov.families[set.color][set.u_index]
                .members
                .iter()
                .cloned()
                .collect();
            for &c in &set.chambers {
                assert!(src.contains(&fm.fold(c).unwrap()));
            }
        }
        let report = verify_cover(&t, &lifted, &window, 2).unwrap();
        assert!(report.covered, "uncovered: {:?}", report.uncovered);
        assert!(report.separation_ok, "{:?}", report.min_same_color_distance);
        assert_eq!(report.colors_used, 2);
    }

    #[test]
    fn pointlike_window_lifts_to_the_base() {
        let t = tree_building(2).unwrap();
        let fm = FoldingMap::new(&t);
        let window = Window::build(&t, t.base(), 0, 10).unwrap();
        let cov = interval_cover(t.system(), 2, 4).unwrap();
        let lifted = build_lifted_cover(&fm, &cov, &window, LiftOptions::default()).unwrap();
        let sets: Vec<&LiftedSet> = lifted.families.iter().flatten().collect();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].chambers, vec![t.base()]);
        // the base folds to the identity, which lives in the color 0 run at 0
        assert_eq!(sets[0].color, 0);
    }

    #[test]
    fn corrupted_cover_fails_verification() {
        let t = tree_building(2).unwrap();
        let fm = FoldingMap::new(&t);
        let window = Window::build(&t, t.base(), 6, 100_000).unwrap();
        let cov = interval_cover(t.system(), 2, 6).unwrap();
        let mut lifted = build_lifted_cover(&fm, &cov, &window, LiftOptions::default()).unwrap();
        // move one chamber into a set of the same color far away
        let moved = lifted.families[0][0].chambers[0];
        let last = lifted.families[0].len() - 1;
        lifted.families[0][last].chambers.push(moved);
        let report = verify_cover(&t, &lifted, &window, 2).unwrap();
        assert!(!report.separation_ok);
        assert_eq!(report.min_same_color_distance, Some(0));
    }

    #[test]
    fn bound_check_on_tree_components() {
        let t = tree_building(2).unwrap();
        let fm = FoldingMap::new(&t);
        let window = Window::build(&t, t.base(), 4, 100_000).unwrap();
        let sys = t.system();
        let st = sys.element(&Word::from_indices(&[0, 1]));
        let gate = sys.weak_order_gate(&[st.clone()]).unwrap();
        let pre: BTreeSet<ChamberId> = fm.preimage(&st, &window).into_iter().collect();
        assert_eq!(pre.len(), 4);
        let comps = ops::components(&t, &pre).unwrap();
        assert_eq!(comps.len(), 2);
        for comp in &comps {
            assert_eq!(comp.len(), 2);
            let check = diameter_bound_check(&t, &fm, &[st.clone()], &gate, comp).unwrap();
            assert_eq!(check.u_diameter, 0);
            assert_eq!(check.v_diameter, 1);
            assert_eq!(check.entry_spread, 1);
            assert!(check.radius_ok);
            assert!(check.diameter_ok);
        }
    }

    #[test]
    fn bound_check_on_the_identity() {
        let t = tree_building(2).unwrap();
        let fm = FoldingMap::new(&t);
        let sys = t.system();
        let id = sys.identity();
        let gate = sys.weak_order_gate(&[id.clone()]).unwrap();
        let check = diameter_bound_check(&t, &fm, &[id], &gate, &[t.base()]).unwrap();
        assert_eq!(check.u_diameter, 0);
        assert_eq!(check.v_diameter, 0);
        assert_eq!(check.max_from_gate, 0);
        assert!(check.radius_ok && check.diameter_ok);
    }
}
