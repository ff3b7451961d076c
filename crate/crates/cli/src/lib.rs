//! Drives the pipeline end to end: build a chamber window, run a colored
//! cover through the lift and the verifier, re-check stored covers, and
//! export DOT or CSV artifacts. Every command is deterministic, so equal
//! configurations give byte-identical outputs.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use asdim_core::building::{ops, Building, Window};
use asdim_core::cover::{
    brick_cover_product, build_lifted_cover, interval_cover, verify_cover, ApartmentCover,
    CoverMode, CoverReport, LiftOptions, DEFAULT_CHAMBER_CAP,
};
use asdim_core::coxeter::{gen_name, Element, Word};
use asdim_core::io::{
    build_building, cover_file_to_lifted, lifted_cover_to_file, report_to_csv, report_to_file,
    to_json_string, window_to_dot, window_to_file, BuildingDescriptor, CoverFile,
};
use asdim_core::retraction::{lift_with_prefix, FoldingMap};

pub const DEFAULT_MAX_CHAMBERS: usize = DEFAULT_CHAMBER_CAP;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverKind {
    Interval,
    Brick,
    Product,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Everything one invocation depends on. Two runs with equal configs write
/// equal bytes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub building: BuildingDescriptor,
    pub radius: usize,
    pub d: usize,
    pub cover_mode: CoverKind,
    pub max_chambers: usize,
    pub out_dir: PathBuf,
    pub format: ReportFormat,
}

/// Pins the worker count. Results never depend on it; only wall time does.
pub fn set_workers(n: usize) {
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
}

/// Resolves a building argument: a shorthand name, inline JSON, or `@file`
/// holding a JSON descriptor. `q` feeds the shorthands that take a
/// branching parameter.
pub fn parse_building(arg: &str, q: u32) -> Result<BuildingDescriptor> {
    let line = vec![vec![1, 0], vec![0, 1]];
    let desc = match arg {
        "tree" => BuildingDescriptor::Tree { q },
        "fano" => BuildingDescriptor::Fano,
        "thin-line" => BuildingDescriptor::Thin { matrix: line },
        "thin-a2" => BuildingDescriptor::Thin {
            matrix: vec![vec![1, 3], vec![3, 1]],
        },
        "thin-b2" => BuildingDescriptor::Thin {
            matrix: vec![vec![1, 4], vec![4, 1]],
        },
        "ra-line" => BuildingDescriptor::RightAngled {
            matrix: line,
            params: vec![q + 1, q + 1],
        },
        "tree-product" => BuildingDescriptor::Product {
            left: Box::new(BuildingDescriptor::Tree { q }),
            right: Box::new(BuildingDescriptor::Tree { q }),
        },
        "thin-line-product" => BuildingDescriptor::Product {
            left: Box::new(BuildingDescriptor::Thin {
                matrix: line.clone(),
            }),
            right: Box::new(BuildingDescriptor::Thin { matrix: line }),
        },
        s if s.starts_with('{') => {
            serde_json::from_str(s).context("parsing the inline building descriptor")?
        }
        s if s.starts_with('@') => {
            let text = fs::read_to_string(&s[1..])
                .with_context(|| format!("reading descriptor file {}", &s[1..]))?;
            serde_json::from_str(&text).context("parsing the building descriptor file")?
        }
        other => bail!(
            "unknown building {other:?}; use tree, fano, thin-line, thin-a2, thin-b2, \
             ra-line, tree-product, thin-line-product, inline JSON, or @file"
        ),
    };
    Ok(desc)
}

fn open_window(cfg: &RunConfig) -> Result<(Box<dyn Building>, Window)> {
    let bld = build_building(&cfg.building)?;
    let window = Window::build(bld.as_ref(), bld.base(), cfg.radius, cfg.max_chambers)?;
    Ok((bld, window))
}

/// Writes every file or none: on any failure the paths written so far are
/// removed again.
fn write_outputs(files: &[(&Path, &str)]) -> Result<()> {
    let mut written: Vec<&Path> = Vec::new();
    for (path, text) in files {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).ok();
        }
        match fs::write(path, text) {
            Ok(()) => written.push(path),
            Err(e) => {
                for p in written {
                    let _ = fs::remove_file(p);
                }
                return Err(e).with_context(|| format!("writing {}", path.display()));
            }
        }
    }
    Ok(())
}

/// Builds the window and stores it as JSON. Returns the path and the
/// chamber count.
pub fn cmd_build(cfg: &RunConfig) -> Result<(PathBuf, usize)> {
    let (bld, window) = open_window(cfg)?;
    let file = window_to_file(bld.as_ref(), &window, &cfg.building)?;
    let path = cfg.out_dir.join("window.json");
    write_outputs(&[(&path, &to_json_string(&file))])?;
    Ok((path, window.len()))
}

fn apartment_cover(bld: &dyn Building, cfg: &RunConfig) -> Result<ApartmentCover> {
    match cfg.cover_mode {
        CoverKind::Interval => Ok(interval_cover(bld.system(), cfg.d, cfg.radius as i64)?),
        CoverKind::Brick | CoverKind::Product => {
            let p = bld
                .as_product()
                .ok_or_else(|| anyhow::anyhow!("brick and product covers need a product building"))?;
            let c1 = interval_cover(p.left().system(), cfg.d, cfg.radius as i64)?;
            let c2 = interval_cover(p.right().system(), cfg.d, cfg.radius as i64)?;
            let mode = match cfg.cover_mode {
                CoverKind::Brick => CoverMode::Brick,
                _ => CoverMode::ProductColors,
            };
            Ok(brick_cover_product(bld.system(), &c1, &c2, mode)?)
        }
    }
}

pub struct CoverOutcome {
    pub cover_path: PathBuf,
    pub report_path: PathBuf,
    pub report: CoverReport,
}

impl CoverOutcome {
    /// Whether the stored report is free of violations.
    pub fn clean(&self) -> bool {
        self.report.covered && self.report.separation_ok
    }
}

/// Runs the full pipeline and stores the cover and its report. Nothing is
/// written until all computation has succeeded.
pub fn cmd_cover(cfg: &RunConfig) -> Result<CoverOutcome> {
    if cfg.d == 0 {
        bail!("the scale d must be positive");
    }
    let (bld, window) = open_window(cfg)?;
    let cov = apartment_cover(bld.as_ref(), cfg)?;
    let fm = FoldingMap::new(bld.as_ref());
    let lifted = build_lifted_cover(
        &fm,
        &cov,
        &window,
        LiftOptions {
            max_chambers: cfg.max_chambers,
        },
    )?;
    let report = verify_cover(bld.as_ref(), &lifted, &window, cfg.d)?;

    let cover_text = to_json_string(&lifted_cover_to_file(&lifted, &window, &cfg.building)?);
    let (report_path, report_text) = report_artifact(&report, &window, cfg)?;
    let cover_path = cfg.out_dir.join("cover.json");
    write_outputs(&[(&cover_path, &cover_text), (&report_path, &report_text)])?;
    Ok(CoverOutcome {
        cover_path,
        report_path,
        report,
    })
}

fn report_artifact(
    report: &CoverReport,
    window: &Window,
    cfg: &RunConfig,
) -> Result<(PathBuf, String)> {
    Ok(match cfg.format {
        ReportFormat::Json => (
            cfg.out_dir.join("report.json"),
            to_json_string(&report_to_file(report, window)?),
        ),
        ReportFormat::Csv => (cfg.out_dir.join("report.csv"), report_to_csv(report)),
    })
}

/// Re-verifies a stored cover against a freshly rebuilt window. The building
/// and window radius come from the file itself; `d_override` rechecks at a
/// different scale.
pub fn cmd_verify(
    cfg: &RunConfig,
    cover_path: &Path,
    d_override: Option<usize>,
) -> Result<(String, CoverReport)> {
    let text = fs::read_to_string(cover_path)
        .with_context(|| format!("reading {}", cover_path.display()))?;
    let cf: CoverFile = serde_json::from_str(&text).context("parsing the cover file")?;
    let bld = build_building(&cf.building)?;
    let window = Window::build(bld.as_ref(), bld.base(), cf.window_radius, cfg.max_chambers)?;
    let lifted = cover_file_to_lifted(&cf, &window)?;
    let d = d_override.unwrap_or(cf.d);
    let report = verify_cover(bld.as_ref(), &lifted, &window, d)?;
    let (_, report_text) = report_artifact(&report, &window, cfg)?;
    Ok((report_text, report))
}

fn parse_word(arg: &str) -> Result<Word> {
    let squeezed: String = arg.chars().filter(|c| !c.is_whitespace()).collect();
    if squeezed.is_empty() || squeezed == "1" || squeezed == "e" {
        return Ok(Word::from_indices(&[]));
    }
    let mut out = Vec::with_capacity(squeezed.len());
    for c in squeezed.chars() {
        let idx = match c {
            's'..='z' => c as u8 - b's',
            '0'..='9' => c as u8 - b'0',
            _ => bail!("cannot read {arg:?} as a generator word; use letters from s or digits"),
        };
        out.push(idx);
    }
    Ok(Word::from_indices(&out))
}

fn type_names(w: &Word) -> String {
    w.0.iter()
        .map(|&g| gen_name(g))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Lowest-keyed window chamber folding onto the element.
fn chamber_for(fm: &FoldingMap, window: &Window, e: &Element) -> Result<asdim_core::building::ChamberId> {
    fm.preimage(e, window)
        .into_iter()
        .next()
        .ok_or_else(|| anyhow::anyhow!("no chamber in the window folds onto {e}"))
}

#[derive(Serialize)]
struct GalleryStep {
    window_id: Option<usize>,
    key: String,
}

#[derive(Serialize)]
struct GalleryFile {
    from: usize,
    to: usize,
    length: usize,
    types: Vec<u8>,
    type_names: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    prefix_end: Option<usize>,
    chambers: Vec<GalleryStep>,
}

fn hex(bytes: &[u8]) -> String {
    use std::fmt::Write as _;
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

/// Prints a minimal gallery between two folds of the window as JSON. With a
/// prefix, the gallery runs from the base and its first steps spell the
/// prefix; `from` must then be the identity.
pub fn cmd_gallery(cfg: &RunConfig, from: &str, to: &str, prefix: Option<&str>) -> Result<String> {
    let (bld, window) = open_window(cfg)?;
    let sys = bld.system();
    let fm = FoldingMap::new(bld.as_ref());
    let from_e = sys.element(&parse_word(from)?);
    let to_e = sys.element(&parse_word(to)?);
    let to_c = chamber_for(&fm, &window, &to_e)?;

    let (gallery, prefix_end) = match prefix {
        None => {
            let from_c = chamber_for(&fm, &window, &from_e)?;
            (ops::minimal_gallery(bld.as_ref(), from_c, to_c)?, None)
        }
        Some(p) => {
            if from_e.length() != 0 {
                bail!("prefix galleries start at the base; leave --from at the identity");
            }
            let prefix_e = sys.element(&parse_word(p)?);
            let (y, g) = lift_with_prefix(bld.as_ref(), to_c, &prefix_e)?;
            (g, Some(y))
        }
    };

    let chambers = gallery
        .chambers
        .iter()
        .map(|&c| {
            Ok(GalleryStep {
                window_id: window.index_of(c),
                key: hex(&bld.chamber_key(c)?),
            })
        })
        .collect::<Result<Vec<_>, asdim_core::building::BuildingError>>()?;
    let file = GalleryFile {
        from: window
            .index_of(gallery.start())
            .ok_or_else(|| anyhow::anyhow!("gallery start left the window"))?,
        to: window
            .index_of(gallery.end())
            .ok_or_else(|| anyhow::anyhow!("gallery end left the window"))?,
        length: gallery.len(),
        types: gallery.types.0.iter().map(|g| g.0).collect(),
        type_names: type_names(&gallery.types),
        prefix_end: prefix_end.and_then(|c| window.index_of(c)),
        chambers,
    };
    Ok(to_json_string(&file))
}

/// DOT text of the window, optionally tinted by a stored cover.
pub fn cmd_export_dot(cfg: &RunConfig, cover_path: Option<&Path>) -> Result<String> {
    let (bld, window) = open_window(cfg)?;
    let lifted = match cover_path {
        None => None,
        Some(p) => {
            let text =
                fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let cf: CoverFile = serde_json::from_str(&text).context("parsing the cover file")?;
            Some(cover_file_to_lifted(&cf, &window)?)
        }
    };
    Ok(window_to_dot(bld.as_ref(), &window, lifted.as_ref())?)
}
