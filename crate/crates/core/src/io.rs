//! Stable JSON, DOT and CSV forms of buildings, windows, covers and reports.
//!
//! Chambers cross the process boundary as indices into the canonical window
//! order, never as raw ids, so identical configurations produce identical
//! bytes. Coxeter matrix rows encode an infinite bond as 0.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::building::{
    fano_building, product_building, right_angled_building, thin_building, tree_building,
    Building, BuildingError, Window,
};
use crate::cover::{ApartmentCover, CoverReport, LiftedCover, LiftedSet, SetStat};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Word};

/// Recipe for a building instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BuildingDescriptor {
    Thin {
        matrix: Vec<Vec<u32>>,
    },
    Tree {
        q: u32,
    },
    RightAngled {
        matrix: Vec<Vec<u32>>,
        params: Vec<u32>,
    },
    Product {
        left: Box<BuildingDescriptor>,
        right: Box<BuildingDescriptor>,
    },
    Fano,
}

pub fn build_building(desc: &BuildingDescriptor) -> Result<Box<dyn Building>, BuildingError> {
    match desc {
        BuildingDescriptor::Thin { matrix } => {
            let m = CoxeterMatrix::new(matrix.len(), matrix.clone())?;
            Ok(Box::new(thin_building(Arc::new(CoxeterSystem::new(m)))))
        }
        BuildingDescriptor::Tree { q } => Ok(Box::new(tree_building(*q)?)),
        BuildingDescriptor::RightAngled { matrix, params } => {
            let m = CoxeterMatrix::new(matrix.len(), matrix.clone())?;
            Ok(Box::new(right_angled_building(m, params.clone())?))
        }
        BuildingDescriptor::Product { left, right } => Ok(Box::new(product_building(
            build_building(left)?,
            build_building(right)?,
        )?)),
        BuildingDescriptor::Fano => Ok(Box::new(fano_building())),
    }
}

fn hex(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

/// One chamber of a serialized window. `id` is the position in canonical
/// window order; `panels` lists, per generator type, the ids of the other
/// panel members that fall inside the window.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowChamber {
    pub id: usize,
    pub key: String,
    pub delta_to_base: Vec<u8>,
    pub panels: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowFile {
    pub building: BuildingDescriptor,
    pub radius: usize,
    pub chamber_count: usize,
    pub chambers: Vec<WindowChamber>,
}

pub fn window_to_file(
    bld: &dyn Building,
    window: &Window,
    desc: &BuildingDescriptor,
) -> Result<WindowFile, BuildingError> {
    let mut chambers = Vec::with_capacity(window.len());
    for i in 0..window.len() {
        let c = window.chamber(i);
        let mut panels = Vec::with_capacity(bld.system().rank());
        for s in bld.system().generators() {
            let mut members: Vec<usize> = bld
                .s_panel(c, s)?
                .into_iter()
                .filter(|&d| d != c)
                .filter_map(|d| window.index_of(d))
                .collect();
            members.sort_unstable();
            panels.push(members);
        }
        chambers.push(WindowChamber {
            id: i,
            key: hex(window.key(i)),
            delta_to_base: window.fold(i).word().bytes(),
            panels,
        });
    }
    Ok(WindowFile {
        building: desc.clone(),
        radius: window.radius(),
        chamber_count: window.len(),
        chambers,
    })
}

/// Lift construction context carried alongside a serialized lifted cover.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftInfo {
    pub enlarged_radius: usize,
    pub support_radius: usize,
    pub support_covered: bool,
}

/// One serialized cover set: group-level sets carry `elements` (words over
/// generator indices), lifted sets carry `chambers` (window ids).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverSetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chambers: Option<Vec<usize>>,
    pub source: SetSource,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetSource {
    pub label: String,
    pub u_index: usize,
    pub component: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverFile {
    pub d: usize,
    pub building: BuildingDescriptor,
    pub window_radius: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftInfo>,
    pub families: Vec<Vec<CoverSetFile>>,
}

pub fn apartment_cover_to_file(
    cov: &ApartmentCover,
    desc: &BuildingDescriptor,
    window_radius: usize,
) -> CoverFile {
    let families = cov
        .families
        .iter()
        .map(|fam| {
            fam.iter()
                .enumerate()
                .map(|(u_index, set)| CoverSetFile {
                    elements: Some(set.members.iter().map(|e| e.word().bytes()).collect()),
                    chambers: None,
                    source: SetSource {
                        label: set.label.clone(),
                        u_index,
                        component: 0,
                    },
                })
                .collect()
        })
        .collect();
    CoverFile {
        d: cov.scale_d,
        building: desc.clone(),
        window_radius,
        lift: None,
        families,
    }
}

pub fn lifted_cover_to_file(
    lc: &LiftedCover,
    window: &Window,
    desc: &BuildingDescriptor,
) -> Result<CoverFile, BuildingError> {
    let mut families = Vec::with_capacity(lc.families.len());
    for fam in &lc.families {
        let mut out = Vec::with_capacity(fam.len());
        for set in fam {
            let mut ids = Vec::with_capacity(set.chambers.len());
            for &c in &set.chambers {
                ids.push(
                    window
                        .index_of(c)
                        .ok_or(BuildingError::UnknownChamber(c))?,
                );
            }
            ids.sort_unstable();
            out.push(CoverSetFile {
                elements: None,
                chambers: Some(ids),
                source: SetSource {
                    label: set.source.clone(),
                    u_index: set.u_index,
                    component: set.component,
                },
            });
        }
        families.push(out);
    }
    Ok(CoverFile {
        d: lc.scale_d,
        building: desc.clone(),
        window_radius: lc.window_radius,
        lift: Some(LiftInfo {
            enlarged_radius: lc.enlarged_radius,
            support_radius: lc.support_radius,
            support_covered: lc.support_covered,
        }),
        families,
    })
}

/// Rebuilds a lifted cover from its file form against a freshly built
/// window. Chamber lists come back in key order.
pub fn cover_file_to_lifted(
    cf: &CoverFile,
    window: &Window,
) -> Result<LiftedCover, BuildingError> {
    let mut families = Vec::with_capacity(cf.families.len());
    for (color, fam) in cf.families.iter().enumerate() {
        let mut out = Vec::with_capacity(fam.len());
        for set in fam {
            let ids = set.chambers.as_ref().ok_or_else(|| {
                BuildingError::InvalidParameter(
                    "cover file holds group elements, not chambers".into(),
                )
            })?;
            let mut keyed = Vec::with_capacity(ids.len());
            for &i in ids {
                if i >= window.len() {
                    return Err(BuildingError::InvalidParameter(format!(
                        "chamber id {i} outside the window"
                    )));
                }
                keyed.push((window.key(i).to_vec(), window.chamber(i)));
            }
            keyed.sort();
            out.push(LiftedSet {
                chambers: keyed.into_iter().map(|(_, c)| c).collect(),
                color,
                u_index: set.source.u_index,
                component: set.source.component,
                source: set.source.label.clone(),
            });
        }
        families.push(out);
    }
    let lift = cf.lift.clone().unwrap_or(LiftInfo {
        enlarged_radius: cf.window_radius,
        support_radius: cf.window_radius,
        support_covered: true,
    });
    Ok(LiftedCover {
        scale_d: cf.d,
        families,
        window_radius: cf.window_radius,
        enlarged_radius: lift.enlarged_radius,
        support_radius: lift.support_radius,
        support_covered: lift.support_covered,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub scale_d: usize,
    pub covered: bool,
    pub uncovered: Vec<usize>,
    pub min_same_color_distance: Option<usize>,
    pub separation_ok: bool,
    pub max_set_diameter: usize,
    pub colors_used: usize,
    pub window_radius: usize,
    pub diameter_histogram: BTreeMap<usize, usize>,
    pub set_stats: Vec<SetStat>,
}

pub fn report_to_file(
    report: &CoverReport,
    window: &Window,
) -> Result<ReportFile, BuildingError> {
    let mut uncovered = Vec::with_capacity(report.uncovered.len());
    for &c in &report.uncovered {
        uncovered.push(
            window
                .index_of(c)
                .ok_or(BuildingError::UnknownChamber(c))?,
        );
    }
    uncovered.sort_unstable();
    Ok(ReportFile {
        scale_d: report.scale_d,
        covered: report.covered,
        uncovered,
        min_same_color_distance: report.min_same_color_distance,
        separation_ok: report.separation_ok,
        max_set_diameter: report.max_set_diameter,
        colors_used: report.colors_used,
        window_radius: report.window_radius,
        diameter_histogram: report.diameter_histogram.clone(),
        set_stats: report.set_stats.clone(),
    })
}

/// Pretty JSON with a trailing newline; map keys are ordered, so equal values
/// give equal bytes.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

/// One row per set, quoted labels, header first.
pub fn report_to_csv(report: &CoverReport) -> String {
    let mut out = String::from("color,u_index,component,source,size,diameter\n");
    for s in &report.set_stats {
        writeln!(
            out,
            "{},{},{},\"{}\",{},{}",
            s.color,
            s.u_index,
            s.component,
            s.source.replace('"', "\"\""),
            s.size,
            s.diameter
        )
        .unwrap();
    }
    out
}

/// DOT graph of the window: nodes are chambers labeled by their distance
/// from the base, edges are shared panels labeled by type. The base chamber
/// gets a double border. With a cover, each set fills its chambers in its
/// own hue.
pub fn window_to_dot(
    bld: &dyn Building,
    window: &Window,
    cover: Option<&LiftedCover>,
) -> Result<String, BuildingError> {
    let mut fill: HashMap<usize, String> = HashMap::new();
    if let Some(lc) = cover {
        let mut counter = 0usize;
        for set in lc.families.iter().flatten() {
            // hues stepped by the golden ratio stay distinguishable
            let hue = (counter as f64 * 0.618_033_988_75).fract();
            for &c in &set.chambers {
                if let Some(i) = window.index_of(c) {
                    fill.insert(i, format!("{hue:.4} 0.45 0.95"));
                }
            }
            counter += 1;
        }
    }
    let mut out = String::from("graph window {\n  node [style=filled, fillcolor=white];\n");
    for i in 0..window.len() {
        let marks = if window.chamber(i) == bld.base() {
            ", peripheries=2"
        } else {
            ""
        };
        let fc = fill
            .get(&i)
            .map(|c| format!(", fillcolor=\"{c}\""))
            .unwrap_or_default();
        writeln!(out, "  w{i} [label=\"{}\"{fc}{marks}];", window.fold(i)).unwrap();
    }
    for i in 0..window.len() {
        for s in bld.system().generators() {
            for d in bld.s_panel(window.chamber(i), s)? {
                if let Some(j) = window.index_of(d) {
                    if j > i {
                        writeln!(out, "  w{i} -- w{j} [label=\"{}\"];", s.0).unwrap();
                    }
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Parses a generator word from its serialized index list.
pub fn word_from_indices(ix: &[u8]) -> Word {
    Word::from_indices(ix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{build_lifted_cover, interval_cover, verify_cover, LiftOptions};
    use crate::retraction::FoldingMap;

    #[test]
    fn descriptors_build_expected_windows() {
        let tree = BuildingDescriptor::Tree { q: 2 };
        let bld = build_building(&tree).unwrap();
        let window = Window::build(bld.as_ref(), bld.base(), 3, 1000).unwrap();
        let file = window_to_file(bld.as_ref(), &window, &tree).unwrap();
        assert_eq!(file.chamber_count, 29);
        assert_eq!(file.chambers[0].delta_to_base, Vec::<u8>::new());
        // panels listed per generator, never containing the chamber itself
        for ch in &file.chambers {
            assert_eq!(ch.panels.len(), 2);
            for members in &ch.panels {
                assert!(!members.contains(&ch.id));
            }
        }

        let a2 = BuildingDescriptor::Thin {
            matrix: vec![vec![1, 3], vec![3, 1]],
        };
        let bld = build_building(&a2).unwrap();
        let window = Window::build(bld.as_ref(), bld.base(), 5, 100).unwrap();
        assert_eq!(window.len(), 6);
    }

    #[test]
    fn descriptor_round_trips_through_json() {
        let desc = BuildingDescriptor::Product {
            left: Box::new(BuildingDescriptor::Tree { q: 2 }),
            right: Box::new(BuildingDescriptor::RightAngled {
                matrix: vec![vec![1, 0], vec![0, 1]],
                params: vec![3, 3],
            }),
        };
        let json = to_json_string(&desc);
        let back: BuildingDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, desc);
    }

    #[test]
    fn cover_files_round_trip_and_reports_are_stable() {
        let desc = BuildingDescriptor::Tree { q: 2 };
        let bld = build_building(&desc).unwrap();
        let fm = FoldingMap::new(bld.as_ref());
        let window = Window::build(bld.as_ref(), bld.base(), 5, 100_000).unwrap();
        let cov = interval_cover(bld.system(), 2, 5).unwrap();
        let lifted = build_lifted_cover(&fm, &cov, &window, LiftOptions::default()).unwrap();

        let file = lifted_cover_to_file(&lifted, &window, &desc).unwrap();
        let json1 = to_json_string(&file);
        let json2 = to_json_string(&lifted_cover_to_file(&lifted, &window, &desc).unwrap());
        assert_eq!(json1, json2);

        let parsed: CoverFile = serde_json::from_str(&json1).unwrap();
        let rebuilt = cover_file_to_lifted(&parsed, &window).unwrap();
        let r1 = verify_cover(bld.as_ref(), &lifted, &window, 2).unwrap();
        let r2 = verify_cover(bld.as_ref(), &rebuilt, &window, 2).unwrap();
        let f1 = to_json_string(&report_to_file(&r1, &window).unwrap());
        let f2 = to_json_string(&report_to_file(&r2, &window).unwrap());
        assert_eq!(f1, f2);
        assert!(r1.covered);

        let csv = report_to_csv(&r1);
        assert!(csv.starts_with("color,u_index,component,source,size,diameter\n"));
        assert_eq!(csv.lines().count(), 1 + r1.set_stats.len());
    }

    #[test]
    fn dot_output_shapes() {
        let desc = BuildingDescriptor::Tree { q: 2 };
        let bld = build_building(&desc).unwrap();
        let tiny = Window::build(bld.as_ref(), bld.base(), 0, 10).unwrap();
        let dot = window_to_dot(bld.as_ref(), &tiny, None).unwrap();
        assert_eq!(dot.matches(" [label=").count(), 1);
        assert!(dot.contains("peripheries=2"));

        let window = Window::build(bld.as_ref(), bld.base(), 2, 1000).unwrap();
        let dot = window_to_dot(bld.as_ref(), &window, None).unwrap();
        let nodes = dot
            .lines()
            .filter(|l| l.contains("[label=\"") && !l.contains("--"))
            .count();
        assert_eq!(nodes, 13);
        // each panel inside the window contributes its full clique
        let edges = dot.lines().filter(|l| l.contains("--")).count();
        assert!(edges >= 12);
    }
}
