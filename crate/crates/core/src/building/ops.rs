//! Operations over any [`Building`]: adjacency, balls, components, residues,
//! minimal galleries and the axiom checker. Everything returns chambers in
//! key order so results are reproducible.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{Building, BuildingError, ChamberId, Gallery, PairExtremum, Residue};
use crate::coxeter::{Element, Word};

fn sort_by_key(bld: &dyn Building, mut cs: Vec<ChamberId>) -> Result<Vec<ChamberId>, BuildingError> {
    let mut keyed = cs
        .drain(..)
        .map(|c| Ok((bld.chamber_key(c)?, c)))
        .collect::<Result<Vec<_>, BuildingError>>()?;
    keyed.sort();
    keyed.dedup();
    Ok(keyed.into_iter().map(|(_, c)| c).collect())
}

/// All chambers sharing a panel with `c`, excluding `c`.
pub fn adjacent(bld: &dyn Building, c: ChamberId) -> Result<Vec<ChamberId>, BuildingError> {
    let mut out = Vec::new();
    for s in bld.system().generators() {
        out.extend(bld.s_panel(c, s)?.into_iter().filter(|&d| d != c));
    }
    sort_by_key(bld, out)
}

/// Chambers within gallery distance `radius` of `center`, in key order.
/// Fails with a resource error once more than `cap` chambers are reached.
pub fn ball(
    bld: &dyn Building,
    center: ChamberId,
    radius: usize,
    cap: usize,
) -> Result<Vec<ChamberId>, BuildingError> {
    neighborhood(bld, &[center], radius, cap)
}

/// Chambers within gallery distance `radius` of the set, in key order.
pub fn neighborhood(
    bld: &dyn Building,
    xs: &[ChamberId],
    radius: usize,
    cap: usize,
) -> Result<Vec<ChamberId>, BuildingError> {
    let mut seen: HashSet<ChamberId> = xs.iter().copied().collect();
    let mut frontier: Vec<ChamberId> = seen.iter().copied().collect();
    for _ in 0..radius {
        let mut next = Vec::new();
        for &c in &frontier {
            for d in adjacent(bld, c)? {
                if seen.insert(d) {
                    if seen.len() > cap {
                        return Err(BuildingError::ResourceLimit {
                            what: "growing a chamber neighborhood",
                            cap,
                        });
                    }
                    next.push(d);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    sort_by_key(bld, seen.into_iter().collect())
}

/// Connected components of the set under panel adjacency restricted to the
/// set. Components come back in key order of their least chamber, each
/// component in key order.
pub fn components(
    bld: &dyn Building,
    xs: &BTreeSet<ChamberId>,
) -> Result<Vec<Vec<ChamberId>>, BuildingError> {
    let mut remaining = xs.clone();
    let mut comps: Vec<(Vec<u8>, Vec<ChamberId>)> = Vec::new();
    while let Some(&seed) = remaining.iter().next() {
        remaining.remove(&seed);
        let mut comp = vec![seed];
        let mut frontier = vec![seed];
        while let Some(c) = frontier.pop() {
            for d in adjacent(bld, c)? {
                if remaining.remove(&d) {
                    comp.push(d);
                    frontier.push(d);
                }
            }
        }
        let comp = sort_by_key(bld, comp)?;
        comps.push((bld.chamber_key(comp[0])?, comp));
    }
    comps.sort();
    Ok(comps.into_iter().map(|(_, c)| c).collect())
}

/// All chambers of the residue of the given types through the anchor.
pub fn residue_chambers(
    bld: &dyn Building,
    residue: &Residue,
    cap: usize,
) -> Result<Vec<ChamberId>, BuildingError> {
    let mut seen: HashSet<ChamberId> = HashSet::new();
    seen.insert(residue.anchor);
    let mut frontier = vec![residue.anchor];
    while let Some(c) = frontier.pop() {
        for &s in &residue.types {
            for d in bld.s_panel(c, s)? {
                if seen.insert(d) {
                    if seen.len() > cap {
                        return Err(BuildingError::ResourceLimit {
                            what: "enumerating a residue",
                            cap,
                        });
                    }
                    frontier.push(d);
                }
            }
        }
    }
    sort_by_key(bld, seen.into_iter().collect())
}

/// Union of all maximal spherical residues meeting the set. The result
/// contains the set and is gallery connected whenever the set is.
pub fn thicken(
    bld: &dyn Building,
    xs: &BTreeSet<ChamberId>,
    cap: usize,
) -> Result<BTreeSet<ChamberId>, BuildingError> {
    let spherical = bld.system().maximal_spherical_subsets();
    let mut out: BTreeSet<ChamberId> = xs.clone();
    for &c in xs {
        for types in &spherical {
            let res = Residue {
                anchor: c,
                types: types.clone(),
            };
            for d in residue_chambers(bld, &res, cap)? {
                out.insert(d);
                if out.len() > cap {
                    return Err(BuildingError::ResourceLimit {
                        what: "thickening a chamber set",
                        cap,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// One minimal gallery from `from` to `to`, stepping along the canonical
/// reduced word of their W-distance.
pub fn minimal_gallery(
    bld: &dyn Building,
    from: ChamberId,
    to: ChamberId,
) -> Result<Gallery, BuildingError> {
    let w = bld.w_distance(from, to)?;
    gallery_of_type_to(bld, from, w.word(), to)
}

/// The unique gallery of the given reduced type from `from` to `to`. The
/// type must be a reduced word for the W-distance of the pair.
pub fn gallery_of_type_to(
    bld: &dyn Building,
    from: ChamberId,
    types: &Word,
    to: ChamberId,
) -> Result<Gallery, BuildingError> {
    let sys = bld.system();
    if !sys.is_reduced(types) {
        return Err(BuildingError::NoGallery(format!(
            "type word {types} is not reduced"
        )));
    }
    if sys.element(types) != bld.w_distance(from, to)? {
        return Err(BuildingError::NoGallery(format!(
            "type word {types} does not spell the distance from {from} to {to}"
        )));
    }
    let mut chambers = vec![from];
    let mut cur = from;
    for (i, &s) in types.0.iter().enumerate() {
        let rest = Word(types.0[i + 1..].to_vec());
        let target = sys.element(&rest);
        let mut found = None;
        for d in bld.s_panel(cur, s)? {
            if d != cur && bld.w_distance(d, to)? == target {
                found = Some(d);
                break;
            }
        }
        cur = found.ok_or_else(|| {
            BuildingError::NoGallery(format!("no step of type {} from {cur}", s.0))
        })?;
        chambers.push(cur);
    }
    Ok(Gallery {
        chambers,
        types: types.clone(),
    })
}

/// Every gallery of the given reduced type starting at `from`. Ends are
/// exactly the chambers at W-distance spelled by the word, one gallery each.
pub fn galleries_of_type(
    bld: &dyn Building,
    from: ChamberId,
    types: &Word,
    cap: usize,
) -> Result<Vec<Gallery>, BuildingError> {
    let sys = bld.system();
    if !sys.is_reduced(types) {
        return Err(BuildingError::NoGallery(format!(
            "type word {types} is not reduced"
        )));
    }
    let mut partial: Vec<Vec<ChamberId>> = vec![vec![from]];
    for &s in &types.0 {
        let mut next = Vec::new();
        for g in &partial {
            let cur = *g.last().unwrap();
            for d in bld.s_panel(cur, s)? {
                if d != cur {
                    let mut g2 = g.clone();
                    g2.push(d);
                    next.push(g2);
                }
            }
            if next.len() > cap {
                return Err(BuildingError::ResourceLimit {
                    what: "enumerating galleries of a type",
                    cap,
                });
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|chambers| Gallery {
            chambers,
            types: types.clone(),
        })
        .collect())
}

/// Checks the local W-metric laws on every ordered pair from the sample:
/// the distance vanishes exactly on equal chambers, stepping across a panel
/// moves the distance by at most the panel type with the lengthening case
/// forced, and every lengthened distance is realised inside the panel.
pub fn check_axioms(bld: &dyn Building, sample: &[ChamberId]) -> Result<(), BuildingError> {
    let sys = bld.system();
    let fail = |msg: String| Err(BuildingError::AxiomViolation(msg));
    for &x in sample {
        for &y in sample {
            let w = bld.w_distance(x, y)?;
            if (w.length() == 0) != (x == y) {
                return fail(format!("distance between {x} and {y} is {w}"));
            }
            if bld.w_distance(y, x)? != sys.inverse(&w) {
                return fail(format!("distance from {y} to {x} is not the inverse of {w}"));
            }
            for s in sys.generators() {
                let ws = sys.mul_gen(&w, s);
                let lengthens = ws.length() > w.length();
                let mut realized = false;
                for d in bld.s_panel(y, s)? {
                    if d == y {
                        continue;
                    }
                    let wd = bld.w_distance(x, d)?;
                    if wd == ws {
                        realized = true;
                    } else if lengthens || wd != w {
                        return fail(format!(
                            "distance {wd} from {x} across the {}-panel of {y}, expected {ws}{}",
                            s.0,
                            if lengthens { "" } else { " or the unchanged value" },
                        ));
                    }
                }
                if !realized {
                    return fail(format!(
                        "no chamber at distance {ws} from {x} in the {}-panel of {y}",
                        s.0
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Multiset of W-distances from `from` to the given chambers, grouped.
pub fn fold_histogram(
    bld: &dyn Building,
    from: ChamberId,
    xs: &[ChamberId],
) -> Result<BTreeMap<Element, usize>, BuildingError> {
    let mut out = BTreeMap::new();
    for &c in xs {
        *out.entry(bld.w_distance(from, c)?).or_insert(0) += 1;
    }
    Ok(out)
}

/// Largest pairwise gallery distance within the set.
pub fn set_diameter(bld: &dyn Building, xs: &[ChamberId]) -> Result<usize, BuildingError> {
    if xs.len() <= 1 {
        return Ok(0);
    }
    set_pair_distance(bld, xs, xs, PairExtremum::Max)
}

fn fold_groups(
    bld: &dyn Building,
    cs: &[ChamberId],
) -> Result<BTreeMap<Element, Vec<ChamberId>>, BuildingError> {
    let mut out: BTreeMap<Element, Vec<ChamberId>> = BTreeMap::new();
    for &c in cs {
        out.entry(bld.w_distance(bld.base(), c)?).or_default().push(c);
    }
    Ok(out)
}

/// Exact extremal gallery distance over all pairs from two nonempty chamber
/// lists. Chambers are blocked by their W-distance from the base; the fold
/// distance bounds each block from the right side, so sorted blocks can be
/// abandoned early. Product buildings whose blocks split as rectangles of
/// factor chambers recurse factorwise, and buildings with a list fast path
/// never scan pairs at all.
pub fn set_pair_distance(
    bld: &dyn Building,
    xs: &[ChamberId],
    ys: &[ChamberId],
    ext: PairExtremum,
) -> Result<usize, BuildingError> {
    if xs.is_empty() || ys.is_empty() {
        return Err(BuildingError::InvalidParameter(
            "extremal distance over an empty chamber list".into(),
        ));
    }
    if let Some(v) = bld.list_distance(xs, ys, ext)? {
        return Ok(v);
    }
    let sys = bld.system();
    let gx = fold_groups(bld, xs)?;
    let gy = fold_groups(bld, ys)?;
    let mut blocks: Vec<(usize, &[ChamberId], &[ChamberId])> = Vec::new();
    for (fa, a) in &gx {
        for (fb, b) in &gy {
            let bound = match ext {
                // any gallery between the fibers folds onto one between the folds
                PairExtremum::Min => sys.distance(fa, fb),
                PairExtremum::Max => fa.length() + fb.length(),
            };
            blocks.push((bound, a, b));
        }
    }
    match ext {
        PairExtremum::Min => blocks.sort_by_key(|&(bound, ..)| bound),
        PairExtremum::Max => blocks.sort_by_key(|&(bound, ..)| Reverse(bound)),
    }
    let mut best: Option<usize> = None;
    for (bound, a, b) in blocks {
        if let Some(v) = best {
            let done = match ext {
                PairExtremum::Min => bound >= v,
                PairExtremum::Max => bound <= v,
            };
            if done {
                break;
            }
        }
        let v = block_extremum(bld, a, b, ext, bound)?;
        best = Some(match (best, ext) {
            (None, _) => v,
            (Some(w), PairExtremum::Min) => w.min(v),
            (Some(w), PairExtremum::Max) => w.max(v),
        });
    }
    Ok(best.expect("nonempty lists produce at least one block"))
}

/// Extremum over one pair of equal-fold fibers. `bound` is unbeatable in the
/// direction of the extremum, so hitting it stops the scan.
fn block_extremum(
    bld: &dyn Building,
    a: &[ChamberId],
    b: &[ChamberId],
    ext: PairExtremum,
    bound: usize,
) -> Result<usize, BuildingError> {
    if let Some(p) = bld.as_product() {
        let split = |cs: &[ChamberId]| -> Result<_, BuildingError> {
            let mut ls = Vec::with_capacity(cs.len());
            let mut rs = Vec::with_capacity(cs.len());
            for &c in cs {
                let (l, r) = p.factors(c)?;
                ls.push(l);
                rs.push(r);
            }
            Ok((sort_by_key(p.left(), ls)?, sort_by_key(p.right(), rs)?))
        };
        let (al, ar) = split(a)?;
        let (bl, br) = split(b)?;
        if al.len() * ar.len() == a.len() && bl.len() * br.len() == b.len() {
            let l = set_pair_distance(p.left(), &al, &bl, ext)?;
            let r = set_pair_distance(p.right(), &ar, &br, ext)?;
            return Ok(l + r);
        }
    }
    if let Some(v) = bld.list_distance(a, b, ext)? {
        return Ok(v);
    }
    let mut best: Option<usize> = None;
    'scan: for &x in a {
        for &y in b {
            let d = bld.w_distance(x, y)?.length();
            best = Some(match (best, ext) {
                (None, _) => d,
                (Some(w), PairExtremum::Min) => w.min(d),
                (Some(w), PairExtremum::Max) => w.max(d),
            });
            if best == Some(bound) {
                break 'scan;
            }
        }
    }
    Ok(best.expect("nonempty block"))
}
