use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

use asdim_cli::{
    cmd_build, cmd_cover, cmd_export_dot, cmd_gallery, cmd_verify, parse_building, set_workers,
    CoverKind, ReportFormat, RunConfig, DEFAULT_MAX_CHAMBERS,
};

#[derive(Parser)]
#[command(name = "asdim", about = "Chamber windows, colored covers, and their verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverModeArg {
    Interval,
    Brick,
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Building: tree, fano, thin-line, thin-a2, thin-b2, ra-line,
    /// tree-product, thin-line-product, inline JSON, or @file
    #[arg(long, default_value = "tree")]
    building: String,
    /// Branching parameter for the tree and ra-line shorthands
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Window radius around the base chamber
    #[arg(long, default_value_t = 3)]
    radius: usize,
    /// Cap on materialized chambers
    #[arg(long = "max-chambers", default_value_t = DEFAULT_MAX_CHAMBERS)]
    max_chambers: usize,
    /// Worker threads; outputs are identical for every value
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Materialize the window and store it as JSON
    Build {
        #[command(flatten)]
        common: Common,
    },
    /// Build a cover, lift it, verify it, and store cover and report
    Cover {
        #[command(flatten)]
        common: Common,
        /// Scale the cover is built at
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long = "cover-mode", value_enum, default_value_t = CoverModeArg::Interval)]
        cover_mode: CoverModeArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Print a minimal gallery between two folds of the window
    Gallery {
        #[command(flatten)]
        common: Common,
        /// Start fold as a word (letters from s, digits, or 1 for the identity)
        #[arg(long, default_value = "1")]
        from: String,
        /// End fold as a word
        #[arg(long)]
        to: String,
        /// Reduced word the gallery type must start with
        #[arg(long)]
        prefix: Option<String>,
    },
    /// Recompute the report of a stored cover
    Verify {
        #[command(flatten)]
        common: Common,
        /// Stored cover file
        #[arg(long)]
        cover: PathBuf,
        /// Verify at this scale instead of the one stored in the file
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Write the report next to the cover instead of printing it
        #[arg(long)]
        save: bool,
    },
    /// Emit the window as a DOT graph, optionally tinted by a cover
    ExportDot {
        #[command(flatten)]
        common: Common,
        /// Stored cover file used for node fills
        #[arg(long)]
        cover: Option<PathBuf>,
    },
}

fn config(common: &Common, d: usize, mode: CoverModeArg, format: FormatArg) -> Result<RunConfig> {
    Ok(RunConfig {
        building: parse_building(&common.building, common.q)?,
        radius: common.radius,
        d,
        cover_mode: match mode {
            CoverModeArg::Interval => CoverKind::Interval,
            CoverModeArg::Brick => CoverKind::Brick,
            CoverModeArg::Product => CoverKind::Product,
        },
        max_chambers: common.max_chambers,
        out_dir: common.out.clone(),
        format: match format {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        },
    })
}

/// Ok(true) is a clean run, Ok(false) a run whose report shows a violation.
fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Build { common } => {
            apply_workers(&common);
            let cfg = config(&common, 1, CoverModeArg::Interval, FormatArg::Json)?;
            let (path, n) = cmd_build(&cfg)?;
            println!("wrote {} ({n} chambers)", path.display());
            Ok(true)
        }
        Cmd::Cover {
            common,
            d,
            cover_mode,
            format,
        } => {
            apply_workers(&common);
            let cfg = config(&common, d, cover_mode, format)?;
            let outcome = cmd_cover(&cfg)?;
            println!(
                "wrote {} and {} (covered: {}, separation_ok: {}, max diameter: {})",
                outcome.cover_path.display(),
                outcome.report_path.display(),
                outcome.report.covered,
                outcome.report.separation_ok,
                outcome.report.max_set_diameter,
            );
            Ok(outcome.clean())
        }
        Cmd::Gallery {
            common,
            from,
            to,
            prefix,
        } => {
            apply_workers(&common);
            let cfg = config(&common, 1, CoverModeArg::Interval, FormatArg::Json)?;
            let text = cmd_gallery(&cfg, &from, &to, prefix.as_deref())?;
            print!("{text}");
            Ok(true)
        }
        Cmd::Verify {
            common,
            cover,
            d,
            format,
            save,
        } => {
            apply_workers(&common);
            let cfg = config(&common, 1, CoverModeArg::Interval, format)?;
            let (text, report) = cmd_verify(&cfg, &cover, d)?;
            if save {
                let name = match cfg.format {
                    ReportFormat::Json => "report.json",
                    ReportFormat::Csv => "report.csv",
                };
                let path = common.out.join(name);
                std::fs::create_dir_all(&common.out)?;
                std::fs::write(&path, &text)?;
                println!("wrote {}", path.display());
            } else {
                print!("{text}");
            }
            Ok(report.covered && report.separation_ok)
        }
        Cmd::ExportDot { common, cover } => {
            apply_workers(&common);
            let cfg = config(&common, 1, CoverModeArg::Interval, FormatArg::Json)?;
            let text = cmd_export_dot(&cfg, cover.as_deref())?;
            print!("{text}");
            Ok(true)
        }
    }
}

fn apply_workers(common: &Common) {
    if let Some(n) = common.workers {
        set_workers(n);
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
