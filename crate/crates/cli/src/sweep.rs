//! The sweep command: deterministic chunked execution with periodic
//! checkpoints, resumable from the checkpoint plus a partial record log.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use bentforge::constructions::{
    canonicalize_records, plan_sweep, run_sweep_chunk, CombinerF, SweepRecord, SweepScope,
    SweepSummary,
};
use bentforge::gf2m::{poly_hex, FieldSpec};

use crate::parse::scope_tag;

pub struct SweepArgs {
    pub field: Arc<FieldSpec>,
    pub combiner: CombinerF,
    pub scope: SweepScope,
    pub seed: u64,
    pub format: String,
    pub out: Option<PathBuf>,
    pub checkpoint_every: u64,
    pub resume: bool,
    pub max_chunks: Option<u64>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
struct Checkpoint {
    m: u32,
    poly_hex: String,
    combiner_table_hex: String,
    scope: String,
    seed: u64,
    chunks_done: u64,
    examined: u64,
    bent_found: u64,
}

#[derive(Serialize)]
struct Metadata<'a> {
    tool: &'a str,
    version: &'a str,
    m: u32,
    poly_hex: String,
    combiner_table_hex: String,
    arity: u32,
    scope: String,
    seed: u64,
}

pub fn run(args: SweepArgs) -> Result<(), String> {
    if args.format != "json" && args.format != "csv" {
        return Err(format!("unknown format `{}`: use json or csv", args.format));
    }
    let plan = plan_sweep(&args.field, &args.combiner, args.scope, args.seed, args.checkpoint_every)
        .map_err(|e| e.to_string())?;

    let ckpt_path = args.out.as_ref().map(|p| sibling(p, "ckpt"));
    let partial_path = args.out.as_ref().map(|p| sibling(p, "partial"));
    let checkpointing = ckpt_path.is_some();

    let expected_ckpt = |done: u64, s: &SweepSummary| Checkpoint {
        m: args.field.m(),
        poly_hex: poly_hex(args.field.poly()),
        combiner_table_hex: args.combiner.table_hex(),
        scope: scope_tag(args.scope),
        seed: args.seed,
        chunks_done: done,
        examined: s.examined,
        bent_found: s.bent_found,
    };

    // resume state
    let mut records: Vec<SweepRecord> = Vec::new();
    let mut summary = SweepSummary::default();
    let mut start_chunk = 0u64;
    if args.resume {
        let (ckpt_path, partial_path) = match (&ckpt_path, &partial_path) {
            (Some(c), Some(p)) => (c, p),
            _ => return Err("--resume requires --out".to_string()),
        };
        let ckpt: Checkpoint = serde_json::from_reader(BufReader::new(
            File::open(ckpt_path)
                .map_err(|e| format!("cannot open checkpoint {}: {e}", ckpt_path.display()))?,
        ))
        .map_err(|e| format!("bad checkpoint: {e}"))?;
        let probe = expected_ckpt(ckpt.chunks_done, &SweepSummary {
            examined: ckpt.examined,
            bent_found: ckpt.bent_found,
        });
        if ckpt != probe {
            return Err("checkpoint does not match this sweep's configuration".to_string());
        }
        records = read_partial(partial_path)?;
        if records.len() as u64 != ckpt.bent_found {
            return Err(format!(
                "partial log has {} records but checkpoint says {}",
                records.len(),
                ckpt.bent_found
            ));
        }
        summary = SweepSummary { examined: ckpt.examined, bent_found: ckpt.bent_found };
        start_chunk = ckpt.chunks_done;
        eprintln!(
            "bentforge: resuming at chunk {}/{} ({} examined)",
            start_chunk, plan.chunks, summary.examined
        );
    } else if let Some(p) = &partial_path {
        // a fresh run starts a fresh log
        let _ = std::fs::remove_file(p);
    }

    let mut ran = 0u64;
    for chunk in start_chunk..plan.chunks {
        if args.max_chunks.is_some_and(|limit| ran >= limit) {
            eprintln!(
                "bentforge: stopping after {ran} chunks as requested; resume with --resume"
            );
            return Ok(());
        }
        let (mut part, s) = run_sweep_chunk(&args.field, &args.combiner, &plan, chunk)
            .map_err(|e| e.to_string())?;
        summary.examined += s.examined;
        summary.bent_found += s.bent_found;
        if checkpointing {
            append_partial(partial_path.as_ref().unwrap(), &part)?;
            write_checkpoint(ckpt_path.as_ref().unwrap(), &expected_ckpt(chunk + 1, &summary))?;
        }
        records.append(&mut part);
        ran += 1;
    }

    canonicalize_records(&mut records);
    summary.bent_found = records.len() as u64;

    let metadata = Metadata {
        tool: "bentforge",
        version: env!("CARGO_PKG_VERSION"),
        m: args.field.m(),
        poly_hex: poly_hex(args.field.poly()),
        combiner_table_hex: args.combiner.table_hex(),
        arity: args.combiner.arity(),
        scope: scope_tag(args.scope),
        seed: args.seed,
    };

    let write_all = |w: &mut dyn Write| -> Result<(), String> {
        match args.format.as_str() {
            "json" => {
                let doc = serde_json::json!({
                    "metadata": metadata,
                    "records": records,
                    "summary": summary,
                });
                serde_json::to_writer_pretty(&mut *w, &doc).map_err(|e| e.to_string())?;
                writeln!(w).map_err(|e| e.to_string())
            }
            _ => {
                writeln!(w, "# tool={} version={}", metadata.tool, metadata.version)
                    .map_err(|e| e.to_string())?;
                writeln!(
                    w,
                    "# m={} poly={} combiner={} scope={} seed={}",
                    metadata.m, metadata.poly_hex, metadata.combiner_table_hex, metadata.scope,
                    metadata.seed
                )
                .map_err(|e| e.to_string())?;
                writeln!(w, "m,combiner_table_hex,a_list_hex,b_hex,bent,matched_condition,walsh_verified")
                    .map_err(|e| e.to_string())?;
                for r in &records {
                    writeln!(
                        w,
                        "{},{},{},{},{},{},{}",
                        r.m,
                        r.combiner_table_hex,
                        r.a_list_hex.join(";"),
                        r.b_hex,
                        r.bent,
                        r.matched_condition,
                        r.walsh_verified
                    )
                    .map_err(|e| e.to_string())?;
                }
                writeln!(w, "# examined={} bent={}", summary.examined, summary.bent_found)
                    .map_err(|e| e.to_string())
            }
        }
    };

    match &args.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_all(&mut w)?;
            w.flush().map_err(|e| e.to_string())?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write_all(&mut w)?;
            w.flush().map_err(|e| e.to_string())?;
        }
    }

    // completed: the intermediate state is no longer needed
    if let (Some(c), Some(p)) = (&ckpt_path, &partial_path) {
        let _ = std::fs::remove_file(c);
        let _ = std::fs::remove_file(p);
    }
    eprintln!(
        "bentforge: sweep complete — examined {} parameter sets, {} bent",
        summary.examined, summary.bent_found
    );
    Ok(())
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let mut name = path.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(format!(".{ext}"));
    path.with_file_name(name)
}

fn append_partial(path: &Path, records: &[SweepRecord]) -> Result<(), String> {
    let file = File::options()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| format!("cannot open {}: {e}", path.display()))?;
    let mut w = BufWriter::new(file);
    for r in records {
        serde_json::to_writer(&mut w, r).map_err(|e| e.to_string())?;
        writeln!(w).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

fn read_partial(path: &Path) -> Result<Vec<SweepRecord>, String> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let file = File::open(path).map_err(|e| format!("cannot open {}: {e}", path.display()))?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| e.to_string())?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| format!("bad partial log line: {e}"))?);
    }
    Ok(out)
}

fn write_checkpoint(path: &Path, ckpt: &Checkpoint) -> Result<(), String> {
    let tmp = sibling(path, "tmp");
    {
        let mut w = BufWriter::new(
            File::create(&tmp).map_err(|e| format!("cannot create {}: {e}", tmp.display()))?,
        );
        serde_json::to_writer(&mut w, ckpt).map_err(|e| e.to_string())?;
        w.flush().map_err(|e| e.to_string())?;
    }
    std::fs::rename(&tmp, path).map_err(|e| e.to_string())
}
