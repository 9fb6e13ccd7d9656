use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nearforge::census::{census_audit, CensusFilter, CensusOptions};
use nearforge::families::{build, example1_suite, Carrier, FamilySpec, Variant};
use nearforge::io;
use nearforge::iso::classify;
use nearforge::properties::PropertyReport;
use nearforge::report::{self, Outcome, RunManifest, EXIT_ERROR, EXIT_MISMATCH, EXIT_OK};
use nearforge::{Error, GroupDescriptor, Result};

#[derive(Parser)]
#[command(name = "nearforge", version, about = "Build, check and count finite nearrings of order p^3")]
struct Cli {
    /// Worker threads for every parallel stage.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write a run manifest with sha256 digests of the outputs.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the commutator and power identities of the Heisenberg group.
    VerifyIdentities {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3, 5, 7, 11, 13])]
        primes: Vec<u32>,
    },
    /// Build one explicit construction and optionally write its table.
    Family {
        #[arg(long)]
        group: Carrier,
        #[arg(long)]
        p: u32,
        /// power:i=K, constant, quadratic, non-zero-sym, zero-sym or twisted.
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Evaluate the six displayed multiplications on the group of order 125.
    Example1 {
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Full property report on a table file.
    Check { file: PathBuf },
    /// Partition table files into isomorphism classes.
    Classify {
        files: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate nearrings with identity on a group of order 8 or 27.
    Census {
        #[arg(long)]
        group: GroupDescriptor,
        #[arg(long, default_value = "all")]
        filter: CensusFilter,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        no_normalize_identity: bool,
        /// Stop after this many seconds, leaving a checkpoint.
        #[arg(long)]
        time_budget: Option<u64>,
        #[arg(long)]
        prune_nonlocal: bool,
        #[arg(long)]
        allow_large: bool,
        /// Also run the structural audit on every local class.
        #[arg(long)]
        audit: bool,
    },
    /// Check the p + 1 lower bound on G1 and G3.
    Theorems {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3, 5, 7])]
        primes: Vec<u32>,
    },
    /// Regenerate the published counts of local nearrings.
    Tables,
    /// Convert a table file to CSV or JSON.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Run {
    json: bool,
    artifacts: Vec<(String, Vec<u8>)>,
    params: Vec<(String, String)>,
}

impl Run {
    fn print<T: Outcome>(&self, r: &T) -> i32 {
        if self.json {
            println!("{}", r.json());
        } else {
            print!("{}", r.text());
        }
        r.exit_code()
    }

    fn write(&mut self, path: &Path, bytes: Vec<u8>) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, &bytes)?;
        self.artifacts.push((path.display().to_string(), bytes));
        Ok(())
    }
}

fn print_json_or(json: bool, value: &serde_json::Value, text: &str) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("values serialise"));
    } else {
        print!("{text}");
    }
}

fn run(cli: Cli, run: &mut Run) -> Result<i32> {
    match cli.command {
        Command::VerifyIdentities { primes } => {
            run.params.push(("p".into(), format!("{primes:?}")));
            let r = report::verify_identities(&primes)?;
            Ok(run.print(&r))
        }
        Command::Family {
            group,
            p,
            variant,
            emit,
        } => {
            let spec = FamilySpec::new(group, variant);
            run.params.push(("spec".into(), spec.to_string()));
            let r = build(spec, p)?;
            let rep = PropertyReport::compute(&r);
            if let Some(path) = emit {
                run.write(&path, io::to_json(&r).into_bytes())?;
            }
            print_json_or(run.json, &serde_json::to_value(&rep)?, &format!("{spec} p={p}: {}\n", rep.summary()));
            Ok(if rep.is_nearring() && rep.local { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Example1 { emit_dir } => {
            let (rep, tables) = example1_suite(5)?;
            if let Some(dir) = &emit_dir {
                for (name, r) in &tables {
                    run.write(&dir.join(format!("{name}.json")), io::to_json(r).into_bytes())?;
                }
                run.write(&dir.join("report.json"), serde_json::to_vec_pretty(&rep)?)?;
            }
            let mut text = String::new();
            for i in &rep.items {
                text += &format!(
                    "item ({}) {:?}: {}\n    left-distributive {}, associative {}, identity {}, local {}, zero-symmetric {}; matches {}\n",
                    i.item,
                    i.reading,
                    i.formula,
                    i.left_distributive,
                    i.associative,
                    i.identity.map_or("none".into(), |e| e.to_string()),
                    i.local,
                    i.zero_symmetric,
                    if i.matches.is_empty() { "no construction".into() } else { i.matches.join(", ") }
                );
            }
            print_json_or(run.json, &serde_json::to_value(&rep)?, &text);
            Ok(EXIT_OK)
        }
        Command::Check { file } => {
            let r = io::read_table(&file)?;
            let rep = PropertyReport::compute(&r);
            print_json_or(run.json, &serde_json::to_value(&rep)?, &format!("{}\n", rep.summary()));
            Ok(EXIT_OK)
        }
        Command::Classify { files, out } => {
            let rs = files.iter().map(|f| io::read_table(f)).collect::<Result<Vec<_>>>()?;
            let part = classify(&rs)?;
            let name = |i: usize| files[i].display().to_string();
            let classes: Vec<_> = part
                .classes
                .iter()
                .map(|members| {
                    json!({
                        "representative": name(members[0]),
                        "members": members.iter().map(|&m| json!({
                            "file": name(m),
                            "witness": part.witnesses[m].generator_images,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let value = json!({
                "schema": "classes/1",
                "group": rs.first().map(|r| r.descriptor().to_string()),
                "classes": classes,
            });
            if let Some(path) = out {
                run.write(&path, serde_json::to_vec_pretty(&value)?)?;
            }
            let mut text = format!("{} classes among {} tables\n", part.classes.len(), rs.len());
            for m in &part.classes {
                text += &format!("  {}\n", m.iter().map(|&i| name(i)).collect::<Vec<_>>().join(", "));
            }
            print_json_or(run.json, &value, &text);
            Ok(EXIT_OK)
        }
        Command::Census {
            group,
            filter,
            out,
            checkpoint,
            no_normalize_identity,
            time_budget,
            prune_nonlocal,
            allow_large,
            audit,
        } => {
            run.params.push(("group".into(), group.to_string()));
            let opts = CensusOptions {
                normalize_identity: !no_normalize_identity,
                filter,
                jobs: None,
                checkpoint,
                time_budget: time_budget.map(Duration::from_secs),
                prune_nonlocal,
                allow_large,
            };
            let result = if opts.checkpoint.is_some() || opts.time_budget.is_some() {
                nearforge::census::census(group, &opts)?
            } else {
                report::cached_census(group, &opts)?
            };
            let bytes = serde_json::to_vec_pretty(&result)?;
            if let Some(path) = out {
                run.write(&path, bytes)?;
            }
            let c = &result.counts;
            let mut text = format!(
                "{group}: {} classes with identity, {} local, {} local zero-symmetric ({} tables searched)\n",
                c.with_identity, c.local, c.local_zero_symmetric, result.tables_found
            );
            let mut code = EXIT_OK;
            let mut value = serde_json::to_value(&result)?;
            if audit {
                let a = census_audit(&result)?;
                text += &format!(
                    "audit: {} local classes, {} violations\n",
                    a.classes_checked,
                    a.violations.len()
                );
                for v in &a.violations {
                    text += &format!("  {v}\n");
                }
                if !a.passed() {
                    code = EXIT_MISMATCH;
                }
                value = json!({ "census": value, "audit": a });
            }
            print_json_or(run.json, &value, &text);
            Ok(code)
        }
        Command::Theorems { primes } => {
            run.params.push(("p".into(), format!("{primes:?}")));
            let r = report::theorems(&primes)?;
            Ok(run.print(&r))
        }
        Command::Tables => {
            let r = report::tables(None)?;
            Ok(run.print(&r))
        }
        Command::Export { file, format, out } => {
            let r = io::read_table(&file)?;
            let bytes = match format {
                ExportFormat::Csv => io::to_csv(&r)?.into_bytes(),
                ExportFormat::Json => io::to_json(&r).into_bytes(),
            };
            run.write(&out, bytes)?;
            Ok(EXIT_OK)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyIdentities { .. } => "verify-identities",
        Command::Family { .. } => "family",
        Command::Example1 { .. } => "example1",
        Command::Check { .. } => "check",
        Command::Classify { .. } => "classify",
        Command::Census { .. } => "census",
        Command::Theorems { .. } => "theorems",
        Command::Tables => "tables",
        Command::Export { .. } => "export",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    }
    let name = command_name(&cli.command);
    let manifest = cli.manifest.clone();
    let mut state = Run {
        json: cli.json,
        artifacts: Vec::new(),
        params: Vec::new(),
    };
    let code = match run(cli, &mut state) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Timeout { .. } = e {
                eprintln!("rerun with the same --checkpoint to resume");
            }
            EXIT_ERROR
        }
    };
    if let Some(path) = manifest {
        let mut m = RunManifest::new(name, started, rayon::current_num_threads());
        for (k, v) in &state.params {
            m = m.parameter(k, v);
        }
        m = m.parameter("exit_code", code);
        for (k, bytes) in &state.artifacts {
            m = m.digest(k, bytes);
        }
        let written = serde_json::to_vec_pretty(&m)
            .map_err(Error::from)
            .and_then(|b| fs::write(&path, b).map_err(Error::from));
        if let Err(e) = written {
            eprintln!("error: manifest: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    }
    ExitCode::from(code as u8)
}
