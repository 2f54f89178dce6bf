//! `grigrow`: runs the experiments of the `grigrow` library and writes
//! versioned CSV/JSON tables.
//!
//! Exit status: 0 when every verification passes, 1 when one fails (the
//! first counterexample goes to stderr), 2 on usage or runtime errors.

mod cmd;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "grigrow", version, about = "Grigorchuk-group growth workbench")]
struct Cli {
    /// Radius cap for ball enumerations; each subcommand has its own default.
    #[arg(long, global = true)]
    max_radius: Option<usize>,
    /// Element cap for ball enumerations.
    #[arg(long, global = true, default_value_t = 4_000_000)]
    budget: usize,
    /// Seed for sampled modes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; outputs do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the artifact to DIR/<subcommand>.<ext> and the summary to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dot,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distances between designated points; DOT output draws a marked ball.
    Schreier(cmd::SchreierArgs),
    /// Ball and sphere sizes of a marked group.
    Growth(cmd::GrowthArgs),
    /// Exact and sampled maximal inverted-orbit sizes.
    InvertedOrbit(cmd::InvertedOrbitArgs),
    /// Rectifying transports between designated points.
    Rectify(cmd::RectifyArgs),
    /// Exact commutator witnesses for the rational imbedding.
    Imbed(cmd::ImbedArgs),
    /// Balanced words in a two-generated wreath product.
    TwoGen(cmd::TwoGenArgs),
    /// Schedule, ball agreement and commutator checks for the limit group.
    Wlimit(cmd::WlimitArgs),
}

#[derive(Clone, Debug)]
pub struct Common {
    pub max_radius: Option<usize>,
    pub budget: usize,
    pub seed: u64,
    pub format: Format,
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    let common = Common {
        max_radius: cli.max_radius,
        budget: cli.budget,
        seed: cli.seed,
        format: cli.format,
    };
    if common.budget == 0 || common.max_radius == Some(0) {
        anyhow::bail!("caps must be positive");
    }
    match cli.command {
        Command::Schreier(a) => cmd::schreier(&common, &a),
        Command::Growth(a) => cmd::growth(&common, &a),
        Command::InvertedOrbit(a) => cmd::inverted_orbit(&common, &a),
        Command::Rectify(a) => cmd::rectify(&common, &a),
        Command::Imbed(a) => cmd::imbed(&common, &a),
        Command::TwoGen(a) => cmd::two_gen(&common, &a),
        Command::Wlimit(a) => cmd::wlimit(&common, &a),
    }
}

/// Writes the artifact and summary; returns the exit status.
fn emit(report: &Report, format: Format, out: Option<&Path>) -> u8 {
    let Some(body) = report.artifact(format) else {
        eprintln!("error: {} has no {} output", report.name, format.ext());
        return 2;
    };
    match out {
        Some(dir) => {
            let path = dir.join(format!("{}.{}", report.name, format.ext()));
            if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, body)) {
                eprintln!("error: writing {}: {e}", path.display());
                return 2;
            }
            println!("{}", report.summary);
            println!("wrote {}", path.display());
        }
        None => {
            print!("{body}");
            eprintln!("{}", report.summary);
        }
    }
    match &report.failure {
        Some(c) => {
            eprintln!("FAILED: {c}");
            1
        }
        None => 0,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = cli.format;
    let out = cli.out.clone();
    match run(cli) {
        Ok(r) => ExitCode::from(emit(&r, format, out.as_deref())),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(args: &[&str]) -> anyhow::Result<Report> {
        run(Cli::try_parse_from(std::iter::once("grigrow").chain(args.iter().copied()))?)
    }

    fn body(args: &[&str], format: Format) -> String {
        report(args).unwrap().artifact(format).unwrap()
    }

    fn on_threads<T: Send>(n: usize, f: impl FnOnce() -> T + Send) -> T {
        rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap().install(f)
    }

    #[test]
    fn outputs_do_not_depend_on_thread_count() {
        let runs: &[(&[&str], Format)] = &[
            (&["growth", "--group", "grig", "--max-radius", "7"], Format::Csv),
            (&["growth", "--group", "z-wr-grig", "--max-radius", "4"], Format::Json),
            (&["inverted-orbit", "--max-n", "7", "--samples", "300", "--seed", "3"], Format::Csv),
            (&["imbed", "--samples", "10", "--seed", "9"], Format::Json),
            (&["two-gen", "--words", "5", "--seed", "11"], Format::Csv),
        ];
        for (args, format) in runs {
            let one = on_threads(1, || body(args, *format));
            let four = on_threads(4, || body(args, *format));
            assert_eq!(one, four, "{args:?}");
        }
    }

    #[test]
    fn seed_changes_sampled_output() {
        let a = body(&["two-gen", "--words", "4", "--seed", "1"], Format::Csv);
        let b = body(&["two-gen", "--words", "4", "--seed", "2"], Format::Csv);
        assert_ne!(a, b);
    }

    #[test]
    fn trivial_group_ball_column_is_one() {
        let out = body(&["growth", "--group", "trivial", "--max-radius", "5"], Format::Csv);
        assert!(out.starts_with("# grigrow growth v1\n"));
        let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
        assert_eq!(rows.len(), 6);
        for row in rows {
            assert_eq!(row.split(',').nth(1), Some("1"), "{row}");
        }
    }

    #[test]
    fn schreier_laws_and_exit_status() {
        let line = report(&["schreier", "--max-i", "6"]).unwrap();
        assert!(line.failure.is_none());
        assert!(line.csv.contains("\n2,3,3,3,true\n"));

        let power = report(&["schreier", "--max-i", "6", "--law", "power"]).unwrap();
        let c = power.failure.clone().unwrap();
        assert!(c.starts_with("d(x_0, x_2) = 2"), "{c}");
        assert_eq!(emit(&power, Format::Json, None), 1);
    }

    #[test]
    fn dot_and_json_formats() {
        let dot = body(&["schreier", "--max-i", "2", "--max-radius", "2"], Format::Dot);
        assert!(dot.contains("graph"));

        let json = body(&["rectify", "--max-i", "2"], Format::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["witnesses"].as_array().unwrap().len(), 6);

        let growth = report(&["growth", "--max-radius", "1"]).unwrap();
        assert!(growth.artifact(Format::Dot).is_none());
        assert_eq!(emit(&growth, Format::Dot, None), 2);
    }

    #[test]
    fn out_dir_receives_artifact() {
        let dir = std::env::temp_dir().join(format!("grigrow-cli-test-{}", std::process::id()));
        let r = report(&["imbed", "--samples", "3"]).unwrap();
        assert_eq!(emit(&r, Format::Csv, Some(&dir)), 0);
        let written = std::fs::read_to_string(dir.join("imbed.csv")).unwrap();
        assert!(written.starts_with("# grigrow imbed v1\n"));
        assert!(r.summary.contains("all exact"));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn invalid_caps_rejected() {
        assert!(report(&["--budget", "0", "growth"]).is_err());
        assert!(report(&["--max-radius", "0", "growth"]).is_err());
        assert!(report(&["wlimit", "--levels", "0"]).is_err());
    }

    #[test]
    fn wlimit_small_run() {
        let r = report(&["wlimit", "--levels", "1", "--epsilon", "4", "--no-commutators"]).unwrap();
        assert!(r.failure.is_none(), "{:?}", r.failure);
        assert_eq!(r.json["schedule"]["schema_version"], 1);
        assert_eq!(r.json["agreement"][0]["agrees"], true);
    }
}
