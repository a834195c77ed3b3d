use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use semistable_replay::cft_data::{load_certified_data, DataSources};
use semistable_replay::dataset::ODLYZKO_FILE;
use semistable_replay::factored_real::ComparePolicy;
use semistable_replay::odlyzko::{shipped_table, OdlyzkoTable};
use semistable_replay::replay::{builtin_script, run, ProofScript, RunContext};

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    N6,
    N10,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Replay the N=6 and N=10 proof chains against certified data.
#[derive(Parser)]
#[command(name = "verify", version)]
struct Args {
    #[arg(long, value_enum, default_value = "all")]
    case: Case,
    /// Directory holding fields.json, rayclass.json, unit_images.json,
    /// splitting.json and optionally odlyzko_grh.csv.
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Odlyzko table CSV; overrides the one in --data-dir.
    #[arg(long)]
    odlyzko: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Initial working precision of exact comparisons, in bits.
    #[arg(long, default_value_t = 64)]
    precision: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run a JSON script instead of the built-in ones.
    #[arg(long, conflicts_with = "export")]
    script: Option<PathBuf>,
    /// Write the selected built-in scripts as JSON to this path and exit.
    #[arg(long)]
    export: Option<PathBuf>,
}

fn scripts(args: &Args) -> Result<Vec<ProofScript>, String> {
    if let Some(path) = &args.script {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let script = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(vec![script]);
    }
    let names: &[&str] = match args.case {
        Case::N6 => &["n6"],
        Case::N10 => &["n10"],
        Case::All => &["n6", "n10"],
    };
    Ok(names
        .iter()
        .map(|n| builtin_script(n).expect("built-in"))
        .collect())
}

fn context(args: &Args) -> Result<RunContext, String> {
    let data = match &args.data_dir {
        Some(dir) => DataSources::from_dir(dir).map_err(|e| e.to_string())?,
        None => DataSources::shipped(),
    };
    let data = load_certified_data(&data).map_err(|e| e.to_string())?;
    let table_path = args.odlyzko.clone().or_else(|| {
        args.data_dir
            .as_ref()
            .map(|d| d.join(ODLYZKO_FILE))
            .filter(|p| p.exists())
    });
    let odlyzko = match table_path {
        Some(p) => {
            let file = std::fs::File::open(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            OdlyzkoTable::load(file).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => shipped_table(),
    };
    if args.precision == 0 {
        return Err("--precision must be positive".into());
    }
    Ok(RunContext {
        data,
        odlyzko,
        policy: ComparePolicy {
            start_bits: args.precision,
            ..ComparePolicy::default()
        },
        seed: args.seed,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let scripts = match scripts(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &args.export {
        let json = if scripts.len() == 1 {
            serde_json::to_string_pretty(&scripts[0])
        } else {
            serde_json::to_string_pretty(&scripts)
        }
        .expect("scripts serialize");
        return match std::fs::write(path, json + "\n") {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                ExitCode::from(2)
            }
        };
    }
    let ctx = match context(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut reports = Vec::new();
    for script in &scripts {
        match run(script, &ctx) {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    match args.format {
        Format::Text => {
            for r in &reports {
                print!("{}", r.to_text());
            }
        }
        Format::Json if reports.len() == 1 => println!("{}", reports[0].to_json()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        ),
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
