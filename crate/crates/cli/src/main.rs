use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use snarklab::commands::{self, CountingArg, FamilyArg, KindArg};
use snarklab::manifest::RunManifest;
use snarklab::verify::{self, Options};
use snarklab::{CliError, Report, Result};
use snarklab_core::par::{with_jobs, Exec};

#[derive(Parser, Debug)]
#[command(name = "snarklab", version, about = "Snark, reducibility and discharging experiments")]
struct Cli {
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a JSON run manifest here.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// 3-edge-color a cubic graph or name its obstruction.
    Color { file: PathBuf },
    /// Cyclic edge connectivity and every cyclic cut up to --k-max.
    Cuts {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
    },
    /// Whether the graph reduces to the Petersen graph along low cuts.
    PetersenLike { file: PathBuf },
    /// Size of the Kempe table for ring size 2r.
    Kempe {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "planar")]
        kind: KindArg,
    },
    /// D-/C-reducibility of a configuration.
    ReduceCheck {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "projective")]
        kind: KindArg,
        #[arg(long, default_value_t = 6)]
        max_contraction: usize,
    },
    /// Verdict table for a family of projective islands.
    Families {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        y: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "planar")]
        kind: KindArg,
        #[arg(long, default_value_t = 6)]
        max_contraction: usize,
    },
    /// Lemma checks on random plane sides behind a 4- or 5-cut.
    CutAnalysis {
        #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
        cut_size: u8,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Apply discharging rules to a triangulation, or enumerate cartwheels.
    Discharge {
        #[arg(long)]
        rules: PathBuf,
        /// Triangulation, or a cubic graph standing for its dual.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Hub degree for cartwheel enumeration.
        #[arg(long)]
        cartwheel: Option<usize>,
        /// Configurations that prune cartwheels.
        #[arg(long)]
        confs: Option<PathBuf>,
    },
    /// Distance-5 adjacency check for a configuration.
    Dist5 {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "loose")]
        counting: CountingArg,
    },
    /// Whether a contraction of the configuration could leave a K6.
    Safety {
        file: PathBuf,
        /// Pairs like "0-4 1-6"; defaults to the file's contract line or a search.
        #[arg(long)]
        contraction: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_contraction: usize,
    },
    /// Run every acceptance criterion.
    VerifyAll {
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Include the large Π₅ rows.
        #[arg(long)]
        heavy: bool,
    },
}

impl Cmd {
    fn inputs(&self) -> Vec<&Path> {
        match self {
            Cmd::Color { file } | Cmd::Cuts { file, .. } | Cmd::PetersenLike { file } => vec![file],
            Cmd::ReduceCheck { file, .. } | Cmd::Dist5 { file, .. } | Cmd::Safety { file, .. } => vec![file],
            Cmd::Discharge { rules, graph, confs, .. } => {
                let mut v: Vec<&Path> = vec![rules];
                v.extend(graph.as_deref());
                v.extend(confs.as_deref());
                v
            }
            Cmd::VerifyAll { .. } | Cmd::Kempe { .. } | Cmd::Families { .. } | Cmd::CutAnalysis { .. } => Vec::new(),
        }
    }
}

fn fixtures_dir(given: Option<&Path>) -> PathBuf {
    match given {
        Some(p) => p.to_path_buf(),
        None if Path::new("fixtures").is_dir() => PathBuf::from("fixtures"),
        None => verify::default_fixtures(),
    }
}

fn execute(cli: &Cli, exec: Exec) -> Result<Report> {
    match &cli.cmd {
        Cmd::Color { file } => commands::color(file, exec),
        Cmd::Cuts { file, k_max } => commands::cuts(file, *k_max, exec),
        Cmd::PetersenLike { file } => commands::petersen_like(file, exec),
        Cmd::Kempe { r, kind } => {
            let cache = std::env::var_os("SNARKLAB_CACHE").map(PathBuf::from);
            commands::kempe(*r, (*kind).into(), cache.as_deref())
        }
        Cmd::ReduceCheck { file, kind, max_contraction } => commands::reduce_check(file, (*kind).into(), *max_contraction, exec),
        Cmd::Families { family, y, k, kind, max_contraction } => {
            let (report, summary) = commands::families(*family, *y, *k, (*kind).into(), *max_contraction, exec)?;
            eprintln!("{summary}");
            Ok(report)
        }
        Cmd::CutAnalysis { cut_size, count } => commands::cut_analysis(*cut_size as usize, *count, cli.seed, exec),
        Cmd::Discharge { rules, graph, cartwheel, confs } => {
            commands::discharge(rules, graph.as_deref(), *cartwheel, confs.as_deref(), exec)
        }
        Cmd::Dist5 { file, counting } => commands::dist5(file, (*counting).into(), exec),
        Cmd::Safety { file, contraction, max_contraction } => commands::safety(file, contraction.as_deref(), *max_contraction, exec),
        Cmd::VerifyAll { fixtures, heavy } => {
            let dir = fixtures_dir(fixtures.as_deref());
            if !dir.is_dir() {
                return Err(CliError::Usage(format!("fixture directory {} not found", dir.display())));
            }
            let opts = Options { fixtures: dir, heavy: *heavy, seed: cli.seed, exec };
            let mut outs = Vec::new();
            for i in 1..=verify::CRITERIA.len() {
                let o = verify::run(i, &opts);
                eprintln!("{}", o.line());
                outs.push(o);
            }
            Ok(verify::summary(&outs))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let exec = if cli.jobs == Some(1) { Exec::Sequential } else { Exec::Parallel };
    let start = Instant::now();
    let res = with_jobs(cli.jobs, || execute(&cli, exec));
    let report = match res {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &report.text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{}", report.text);
            Ok(())
        }
    };
    let manifest = cli.manifest.as_ref().map(|p| {
        let argv: Vec<String> = std::env::args().skip(1).collect();
        RunManifest::new(argv, &cli.cmd.inputs(), cli.seed, &report.text, start.elapsed().as_millis())
            .and_then(|m| std::fs::write(p, m.to_json()).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))))
    });
    if let Err(e) = written.and(manifest.unwrap_or(Ok(()))) {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
