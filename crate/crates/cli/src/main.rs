//! bentforge: rational-trace bent functions over binary fields from the
//! command line — reproduce the built-in worked examples, sweep parameter
//! spaces with deterministic sampling, emit Kloosterman tables, Walsh
//! spectra, polynomial expansions and equivalence fingerprints.

mod parse;
mod sweep;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use bentforge::boolfun::{rational_block, TruthTable};
use bentforge::constructions::{
    build_combined, check_majority, check_product, check_single, CombinerF, RationalParams,
};
use bentforge::eainv::fingerprint;
use bentforge::expsums::KloostermanTable;
use bentforge::gf2m::{parse_poly_hex, BinaryField, FieldElement, FieldSpec};
use bentforge::polyform::expand_block;

use parse::{parse_combiner, parse_element, parse_scope};

#[derive(Parser)]
#[command(name = "bentforge", version, about)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the built-in example parameter sets end to end
    VerifyExamples {
        /// Output format: text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Sweep the (a_1..a_t, b) parameter space of a combiner
    Sweep {
        /// Extension degree m = 2n
        #[arg(long)]
        m: u32,
        /// Reduction polynomial as hex (default: built-in table)
        #[arg(long)]
        poly: Option<String>,
        /// Combiner: x1, x1x2, maj3, x1x2x3 or <arity>:<hex-table>
        #[arg(long)]
        combiner: String,
        /// exhaustive or sample:<count>
        #[arg(long, default_value = "exhaustive")]
        scope: String,
        /// Seed for deterministic sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output format: json or csv
        #[arg(long, default_value = "json")]
        format: String,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Flush records and write a resume checkpoint every N examined sets
        #[arg(long, default_value_t = 1_000_000)]
        checkpoint_every: u64,
        /// Resume an interrupted sweep from <out>.ckpt
        #[arg(long)]
        resume: bool,
        /// Stop after this many chunks without finalizing (testing aid)
        #[arg(long, hide = true)]
        max_chunks: Option<u64>,
    },
    /// Compute the Kloosterman table of GF(2^n)
    Kloosterman {
        /// Field degree n
        #[arg(long)]
        n: u32,
        /// Reduction polynomial as hex (default: built-in table)
        #[arg(long)]
        poly: Option<String>,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand a rational block into its Dillon-exponent polynomial form
    Expand {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        poly: Option<String>,
        /// Numerator coefficient (w^k, 0xHEX or decimal)
        #[arg(long)]
        a: String,
        /// Denominator shift (w^k, 0xHEX or decimal)
        #[arg(long)]
        b: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Walsh spectrum of a rational block or a truth-table file
    Spectrum {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// Truth-table file (header `m=<int>` plus a 0/1 line)
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equivalence-invariant fingerprint of a function
    Fingerprint {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("bentforge: could not configure {jobs} worker threads: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli.command) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("bentforge: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<bool, String> {
    match command {
        Command::VerifyExamples { format } => cmd_verify_examples(&format),
        Command::Sweep {
            m,
            poly,
            combiner,
            scope,
            seed,
            format,
            out,
            checkpoint_every,
            resume,
            max_chunks,
        } => {
            let field = open_field(m, poly.as_deref())?;
            let combiner = parse_combiner(&combiner)?;
            let scope = parse_scope(&scope)?;
            sweep::run(sweep::SweepArgs {
                field,
                combiner,
                scope,
                seed,
                format,
                out,
                checkpoint_every,
                resume,
                max_chunks,
            })?;
            Ok(true)
        }
        Command::Kloosterman { n, poly, out } => cmd_kloosterman(n, poly.as_deref(), out),
        Command::Expand { m, poly, a, b, out } => {
            let field = open_field(m, poly.as_deref())?;
            let a = parse_element(&field, &a)?;
            let b = parse_element(&field, &b)?;
            let poly = expand_block(&field, a, b).map_err(|e| e.to_string())?;
            with_output(out, |w| poly.write_csv(w).map_err(|e| e.to_string()))?;
            Ok(true)
        }
        Command::Spectrum { m, poly, a, b, table, out } => {
            let field = open_field(m, poly.as_deref())?;
            let t = load_function(&field, a.as_deref(), b.as_deref(), table.as_deref())?;
            let spectrum = t.walsh();
            with_output(out, |w| spectrum.write_csv(w).map_err(|e| e.to_string()))?;
            Ok(true)
        }
        Command::Fingerprint { m, poly, a, b, table, out } => {
            let field = open_field(m, poly.as_deref())?;
            let t = load_function(&field, a.as_deref(), b.as_deref(), table.as_deref())?;
            let line = fingerprint(&t).canonical_string();
            with_output(out, |w| writeln!(w, "{line}").map_err(|e| e.to_string()))?;
            Ok(true)
        }
    }
}

fn open_field(m: u32, poly: Option<&str>) -> Result<Arc<FieldSpec>, String> {
    let poly = poly.map(parse_poly_hex).transpose().map_err(|e| e.to_string())?;
    FieldSpec::shared(m, poly).map_err(|e| e.to_string())
}

fn with_output<F>(out: Option<PathBuf>, f: F) -> Result<(), String>
where
    F: FnOnce(&mut dyn Write) -> Result<(), String>,
{
    match out {
        Some(path) => {
            let file = File::create(&path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush().map_err(|e| e.to_string())
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)?;
            w.flush().map_err(|e| e.to_string())
        }
    }
}

fn load_function(
    field: &Arc<FieldSpec>,
    a: Option<&str>,
    b: Option<&str>,
    table: Option<&std::path::Path>,
) -> Result<TruthTable, String> {
    match (a, b, table) {
        (Some(a), Some(b), None) => {
            let a = parse_element(field, a)?;
            let b = parse_element(field, b)?;
            rational_block(field, a, b).map_err(|e| e.to_string())
        }
        (None, None, Some(path)) => {
            let file =
                File::open(path).map_err(|e| format!("cannot open {}: {e}", path.display()))?;
            TruthTable::read_from(field.clone(), BufReader::new(file)).map_err(|e| e.to_string())
        }
        _ => Err("pass either --a and --b, or --table".to_string()),
    }
}

fn cmd_kloosterman(n: u32, poly: Option<&str>, out: Option<PathBuf>) -> Result<bool, String> {
    let poly_bits = poly.map(parse_poly_hex).transpose().map_err(|e| e.to_string())?;
    let field = match poly_bits {
        Some(p) => BinaryField::new(n, p),
        None => BinaryField::with_default_poly(n),
    }
    .map_err(|e| e.to_string())?;

    // tables over the default polynomial are cached under BENTFORGE_TABLE_DIR
    let cache_path = match (poly_bits, std::env::var_os("BENTFORGE_TABLE_DIR")) {
        (None, Some(dir)) => Some(PathBuf::from(dir).join(format!("kloosterman_n{n}.csv"))),
        _ => None,
    };
    let cached = cache_path.as_ref().and_then(|p| {
        let file = File::open(p).ok()?;
        match KloostermanTable::read_csv(BufReader::new(file)) {
            Ok(t) if t.n() == n => Some(t),
            _ => None,
        }
    });
    let table = match cached {
        Some(t) => t,
        None => {
            let t = KloostermanTable::compute(&field);
            if let Some(p) = &cache_path {
                let write_cache = || -> io::Result<()> {
                    if let Some(dir) = p.parent() {
                        std::fs::create_dir_all(dir)?;
                    }
                    let mut w = BufWriter::new(File::create(p)?);
                    t.write_csv(&mut w)
                        .map_err(|e| io::Error::other(e.to_string()))?;
                    w.flush()
                };
                if let Err(e) = write_cache() {
                    eprintln!("bentforge: could not cache table at {}: {e}", p.display());
                }
            }
            t
        }
    };
    table.validate().map_err(|e| e.to_string())?;
    with_output(out, |w| table.write_csv(w).map_err(|e| e.to_string()))?;
    Ok(true)
}

struct ExampleOutcome {
    label: String,
    params: String,
    condition: String,
    bent: bool,
    condition_ok: bool,
}

impl ExampleOutcome {
    fn ok(&self) -> bool {
        self.bent && self.condition_ok
    }
}

fn cmd_verify_examples(format: &str) -> Result<bool, String> {
    let mut outcomes = Vec::new();

    // example 1: single blocks on GF(2^6), conditions (1) and (2)
    let f6 = FieldSpec::shared(6, Some(0x5B)).map_err(|e| e.to_string())?;
    for (i, (b_str, expect)) in [("w^7", 1u8), ("w", 2u8)].iter().enumerate() {
        let b = parse_element(&f6, b_str)?;
        let t = rational_block(&f6, FieldElement::ONE, b).map_err(|e| e.to_string())?;
        let got = check_single(&f6, FieldElement::ONE, b).map_err(|e| e.to_string())?;
        outcomes.push(ExampleOutcome {
            label: format!("example 1 set {}", i + 1),
            params: format!("a1=0x1 b={b_str}"),
            condition: format!("({expect})"),
            bent: t.walsh().values.iter().all(|v| v.abs() == 8),
            condition_ok: got == Some(*expect),
        });
    }

    // example 2: product pairs on GF(2^12), conditions (1)-(3)
    let f12 = FieldSpec::shared(12, Some(0x10EB)).map_err(|e| e.to_string())?;
    let triples = [("w^195", "w", "0x1", 1u8), ("0x1", "w^258", "w^63", 2), ("0x1", "w^60", "w^63", 3)];
    for (i, (a1s, a2s, bs, expect)) in triples.iter().enumerate() {
        let a1 = parse_element(&f12, a1s)?;
        let a2 = parse_element(&f12, a2s)?;
        let b = parse_element(&f12, bs)?;
        let p = RationalParams::new(vec![a1, a2], b, CombinerF::product2())
            .map_err(|e| e.to_string())?;
        let t = build_combined(&f12, &p).map_err(|e| e.to_string())?;
        let got = check_product(&f12, a1, a2, b).map_err(|e| e.to_string())?;
        outcomes.push(ExampleOutcome {
            label: format!("example 2 set {}", i + 1),
            params: format!("a1={a1s} a2={a2s} b={bs}"),
            condition: format!("({expect})"),
            bent: t.walsh().values.iter().all(|v| v.abs() == 64),
            condition_ok: got == Some(*expect),
        });
    }

    // example 3: majority quadruples on GF(2^6), conditions (1)-(6)
    let quads = [
        ("w^27", "w^9", "w", "0x1", 1u8),
        ("w^27", "w", "w^5", "0x1", 2),
        ("w^27", "w^16", "w^34", "w^7", 3),
        ("w^27", "w^16", "w^11", "w^7", 4),
        ("w^27", "w", "w^3", "w^7", 5),
        ("w^27", "w^3", "w^9", "w", 6),
    ];
    for (i, (a1s, a2s, a3s, bs, expect)) in quads.iter().enumerate() {
        let a1 = parse_element(&f6, a1s)?;
        let a2 = parse_element(&f6, a2s)?;
        let a3 = parse_element(&f6, a3s)?;
        let b = parse_element(&f6, bs)?;
        let p = RationalParams::new(vec![a1, a2, a3], b, CombinerF::majority3())
            .map_err(|e| e.to_string())?;
        let t = build_combined(&f6, &p).map_err(|e| e.to_string())?;
        let got = check_majority(&f6, a1, a2, a3, b).map_err(|e| e.to_string())?;
        outcomes.push(ExampleOutcome {
            label: format!("example 3 set {}", i + 1),
            params: format!("a1={a1s} a2={a2s} a3={a3s} b={bs}"),
            condition: format!("({expect})"),
            bent: t.is_bent(),
            condition_ok: got == Some(*expect),
        });
    }

    let all_ok = outcomes.iter().all(|o| o.ok());
    if format == "json" {
        let report = serde_json::json!({
            "tool": "bentforge",
            "version": env!("CARGO_PKG_VERSION"),
            "sets": outcomes.iter().map(|o| serde_json::json!({
                "label": o.label,
                "params": o.params,
                "condition": o.condition,
                "bent": o.bent,
                "condition_ok": o.condition_ok,
            })).collect::<Vec<_>>(),
            "verified": outcomes.iter().filter(|o| o.ok()).count(),
            "total": outcomes.len(),
            "ok": all_ok,
        });
        println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
    } else {
        for o in &outcomes {
            println!(
                "{}: {} -> condition {}, {}{}",
                o.label,
                o.params,
                o.condition,
                if o.bent { "bent" } else { "NOT BENT" },
                if o.condition_ok { "" } else { " (CONDITION MISMATCH)" },
            );
        }
        println!(
            "verify-examples: {}/{} parameter sets verified",
            outcomes.iter().filter(|o| o.ok()).count(),
            outcomes.len()
        );
        if !all_ok {
            for o in outcomes.iter().filter(|o| !o.ok()) {
                eprintln!("bentforge: mismatch in {}", o.label);
            }
        }
    }
    Ok(all_ok)
}
