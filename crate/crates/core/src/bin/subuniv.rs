use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subuniv::analysis::{matches_family, narrows, Core};
use subuniv::catalog::{build_named, CATALOG_IDS};
use subuniv::dot::to_dot;
use subuniv::enumerate::{enumerate_semilattices_with_ceiling, DEFAULT_CEILING};
use subuniv::io::{load_structure, structure_to_json, LoadedStructure};
use subuniv::order::elements;
use subuniv::subuniverse::{count_subuniverses_bruteforce, Structure};
use subuniv::verify::{rank, verify_lemmas, verify_theorem, LemmaConfig};
use subuniv::{Dyadic, Error, DEFAULT_K};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "subuniv", version, about = "Subuniverse counts of finite join-semilattices")]
struct Cli {
    /// Worker threads for enumeration and verification (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Largest size accepted by enumeration-based commands.
    #[arg(long, global = true, env = "SUBUNIV_CEILING", default_value_t = DEFAULT_CEILING as u32,
          value_parser = clap::value_parser!(u32).range(1..=32))]
    ceiling: u32,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Catalog id, e.g. H5, K3, U14 or C7.
    #[arg(long)]
    named: Option<String>,
    /// Structure file (`{"labels", "covers"}` or `{"n", "joins"}`).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of subuniverses and σ_k.
    Count {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_K, value_parser = clap::value_parser!(i32).range(1..))]
        k: i32,
    },
    /// Exact σ_k = |Sub| · 2^(k - n).
    Sigma {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_K, value_parser = clap::value_parser!(i32).range(1..))]
        k: i32,
    },
    /// All n-element join-semilattices up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Directory for one JSON file per structure plus `manifest.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also report the count as the number of (n+1)-element lattices.
        #[arg(long)]
        as_lattice_count: bool,
    },
    /// Distinct subuniverse counts over all n-element semilattices, descending.
    Rank {
        #[arg(long)]
        n: usize,
    },
    /// Narrows and family membership for the three theorem cores.
    Classify {
        #[command(flatten)]
        source: Source,
    },
    /// Checks the 4th, 5th and 6th largest counts and their witnesses.
    VerifyTheorem {
        #[arg(long)]
        n: usize,
    },
    /// Catalog values, proof splits, reconstructions and lemma properties.
    VerifyLemmas {
        #[arg(long, default_value_t = LemmaConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = LemmaConfig::default().samples)]
        samples: usize,
    },
    /// Every named structure with its computed and reported σ_5.
    Catalog,
    /// Graphviz rendering.
    ExportDot {
        #[command(flatten)]
        source: Source,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    /// A verification ran and reported failing checks.
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn load(source: &Source) -> Result<(String, LoadedStructure), Failure> {
    if let Some(id) = &source.named {
        let named = build_named(id)?;
        return Ok((
            named.id,
            LoadedStructure {
                labels: named.labels,
                structure: named.structure,
            },
        ));
    }
    let path = source.input.as_deref().expect("clap requires a source");
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok((name, load_structure(path)?))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialise")
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

fn sigma_fields(count: u64, n: usize, k: i32) -> (Dyadic, String) {
    let s = Dyadic::new(count, k - n as i32);
    (s, s.to_decimal_string())
}

fn cmd_count(source: &Source, k: i32, format: Format) -> Outcome {
    let (name, loaded) = load(source)?;
    let n = loaded.labels.len();
    let count = count_subuniverses_bruteforce(&loaded.structure)?.count;
    let (s, decimal) = sigma_fields(count, n, k);
    Ok(match format {
        Format::Json => pretty(&json!({"count": count, "sigma": s, "k": k, "decimal": decimal, "n": n})),
        Format::Csv => format!("name,n,count,k,sigma,decimal\n{name},{n},{count},{k},{s},{decimal}\n"),
        Format::Table => format!("{name}: n = {n}, |Sub| = {count}, σ_{k} = {s} ({decimal})\n"),
    })
}

fn cmd_sigma(source: &Source, k: i32, format: Format) -> Outcome {
    let (_, loaded) = load(source)?;
    let n = loaded.labels.len();
    let count = count_subuniverses_bruteforce(&loaded.structure)?.count;
    let (s, decimal) = sigma_fields(count, n, k);
    Ok(match format {
        Format::Json => pretty(&json!({"sigma": s, "decimal": decimal, "k": k})),
        Format::Csv => format!("k,sigma,decimal\n{k},{s},{decimal}\n"),
        Format::Table => format!("{s}\n"),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_enumerate(n: usize, out: Option<&Path>, as_lattice: bool, ceiling: usize, format: Format) -> Outcome {
    let run = enumerate_semilattices_with_ceiling(n, ceiling)?;
    let mut files = Vec::new();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        for (i, (form, l)) in run.iter().enumerate() {
            let file = format!("L{n}_{i:05}.json");
            let mut v = structure_to_json(&Structure::Total(l.clone()), &labels);
            v["code"] = json!(form.code_string());
            write_file(&dir.join(&file), &pretty(&v))?;
            files.push(file);
        }
    }
    let mut report = json!({"n": n, "count": run.len(), "levels": run.levels});
    if as_lattice {
        report["lattice_size"] = json!(n + 1);
        report["lattices"] = json!(run.len());
    }
    if let Some(dir) = out {
        let mut manifest = report.clone();
        manifest["files"] = json!(files);
        write_file(&dir.join("manifest.json"), &pretty(&manifest))?;
    }
    Ok(match format {
        Format::Json => pretty(&report),
        Format::Csv => {
            let mut s = String::from("size,candidates,duplicates,distinct\n");
            for l in &run.levels {
                writeln!(s, "{},{},{},{}", l.size, l.candidates, l.duplicates, l.distinct).unwrap();
            }
            s
        }
        Format::Table => {
            let mut s = format!("{} join-semilattices with {n} elements\n", run.len());
            if as_lattice {
                writeln!(s, "= {} lattices with {} elements", run.len(), n + 1).unwrap();
            }
            if let Some(dir) = out {
                writeln!(s, "wrote {} files to {}", files.len() + 1, dir.display()).unwrap();
            }
            s
        }
    })
}

fn cmd_rank(n: usize, ceiling: usize, format: Format) -> Outcome {
    let report = rank(n, ceiling)?;
    Ok(match format {
        Format::Json => pretty(&to_value(&report)),
        Format::Csv => {
            let mut s = String::from("rank,count,sigma5,witnesses\n");
            for v in &report.values {
                writeln!(s, "{},{},{},{}", v.rank, v.count, v.sigma5, v.witnesses.len()).unwrap();
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "n = {n}: {} structures, {} distinct counts\n",
                report.structures,
                report.values.len()
            );
            writeln!(s, "{:>5} {:>8} {:>12} {:>9}", "rank", "count", "σ_5", "witnesses").unwrap();
            for v in &report.values {
                writeln!(
                    s,
                    "{:>5} {:>8} {:>12} {:>9}",
                    v.rank,
                    v.count,
                    v.sigma5.to_string(),
                    v.witnesses.len()
                )
                .unwrap();
            }
            s
        }
    })
}

fn cmd_classify(source: &Source, format: Format) -> Outcome {
    let (name, loaded) = load(source)?;
    let Structure::Total(l) = &loaded.structure else {
        return Err(Failure::Usage(
            "classify needs a join-semilattice, not a partial algebra".into(),
        ));
    };
    let nar: Vec<&String> = elements(narrows(l)).map(|i| &loaded.labels[i]).collect();
    let families = Core::ALL
        .iter()
        .map(|&c| matches_family(l, c))
        .collect::<Result<Vec<_>, _>>()?;
    let count = count_subuniverses_bruteforce(l)?.count;
    let (s, _) = sigma_fields(count, l.len(), DEFAULT_K);
    Ok(match format {
        Format::Json => pretty(&json!({
            "name": name, "n": l.len(), "count": count, "sigma5": s,
            "narrows": nar, "narrows_free": nar.is_empty(), "families": families,
        })),
        Format::Csv => {
            let mut out = String::from("core,matched,c0_len,c1_len\n");
            for f in &families {
                writeln!(out, "{},{},{},{}", f.core_id, f.matched, f.c0_len, f.c1_len).unwrap();
            }
            out
        }
        Format::Table => {
            let mut out = format!(
                "{name}: n = {}, |Sub| = {count}, σ_5 = {s}\nnarrows: {nar:?}\n",
                l.len()
            );
            for f in &families {
                if f.matched {
                    writeln!(out, "{}: member (c0 = {}, c1 = {})", f.core_id, f.c0_len, f.c1_len).unwrap();
                } else {
                    writeln!(out, "{}: not a member", f.core_id).unwrap();
                }
            }
            out
        }
    })
}

fn cmd_verify_theorem(n: usize, ceiling: usize, format: Format) -> Outcome {
    let report = verify_theorem(n, ceiling)?;
    let text = match format {
        Format::Json => pretty(&to_value(&report)),
        Format::Csv | Format::Table => {
            let mut s = format!(
                "n = {n}: {} structures, {} distinct counts\n",
                report.structures, report.distinct_values
            );
            for c in &report.claims {
                writeln!(
                    s,
                    "claim ({}) {} σ_5 = {}: {:?} (expected rank {:?}, actual {:?}, {} witnesses, {} family members)",
                    c.claim, c.core, c.sigma5, c.status, c.expected_rank, c.actual_rank, c.witnesses, c.family_members
                )
                .unwrap();
            }
            writeln!(s, "gap violations: {:?}", report.gap_violations).unwrap();
            let top: Vec<String> = report
                .context_top3
                .entries
                .iter()
                .map(|e| format!("{:?}", e.actual))
                .collect();
            writeln!(s, "top three (informational): {}", top.join(", ")).unwrap();
            writeln!(s, "{}", if report.passed { "PASS" } else { "FAIL" }).unwrap();
            s
        }
    };
    if report.passed {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn cmd_verify_lemmas(seed: u64, samples: usize, format: Format) -> Outcome {
    let config = LemmaConfig {
        seed,
        samples,
        ..LemmaConfig::default()
    };
    let report = verify_lemmas(&config)?;
    let text = match format {
        Format::Json => pretty(&to_value(&report)),
        Format::Csv => {
            let mut s = String::from("location,reported_value,computed_value,decimal,classification\n");
            for e in &report.discrepancies.entries {
                let class = to_value(&e.classification);
                writeln!(
                    s,
                    "{},\"{}\",{},{},{}",
                    e.location,
                    e.reported_value,
                    e.computed_value,
                    e.computed_decimal,
                    class.as_str().unwrap_or_default()
                )
                .unwrap();
            }
            s
        }
        Format::Table => {
            let mut s = format!("{:<6} {:>14} {:>12} {:>14}\n", "id", "reported", "computed", "class");
            for e in &report.discrepancies.entries {
                let class = to_value(&e.classification);
                writeln!(
                    s,
                    "{:<6} {:>14} {:>12} {:>14}",
                    e.location,
                    e.reported_value,
                    e.computed_decimal,
                    class.as_str().unwrap_or_default()
                )
                .unwrap();
            }
            for r in &report.reconstructions {
                writeln!(
                    s,
                    "{}: {} match(es), unique = {}",
                    r.id, r.matches, r.unique_up_to_isomorphism
                )
                .unwrap();
            }
            for (name, t) in [
                ("monotonicity", &report.monotonicity),
                ("trace bound", &report.trace_bound),
                ("chain attachment", &report.chain_attachment),
                ("family converse", &report.converse),
            ] {
                writeln!(s, "{name}: {} checked, {} violations", t.checked, t.violations).unwrap();
            }
            writeln!(s, "{}", if report.passed { "PASS" } else { "FAIL" }).unwrap();
            s
        }
    };
    if report.passed {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn cmd_catalog(format: Format) -> Outcome {
    let mut rows = Vec::new();
    for id in CATALOG_IDS {
        let named = build_named(id)?;
        let count = count_subuniverses_bruteforce(&named.structure)?.count;
        let (s, decimal) = sigma_fields(count, named.len(), DEFAULT_K);
        rows.push(json!({
            "id": named.id, "kind": named.structure.kind(), "n": named.len(),
            "description": named.description, "count": count, "sigma5": s, "decimal": decimal,
            "reported": named.expected_sigma5.reported(), "accepted": named.expected_sigma5.accepts(s),
            "provenance": named.provenance,
        }));
    }
    Ok(match format {
        Format::Json => pretty(&Value::Array(rows)),
        Format::Csv => {
            let mut s = String::from("id,kind,n,count,sigma5,reported,accepted\n");
            for r in &rows {
                writeln!(
                    s,
                    "{},{},{},{},{},\"{}\",{}",
                    r["id"].as_str().unwrap(),
                    r["kind"].as_str().unwrap(),
                    r["n"],
                    r["count"],
                    r["sigma5"].as_str().unwrap(),
                    r["reported"].as_str().unwrap(),
                    r["accepted"]
                )
                .unwrap();
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "{:<6} {:<8} {:>3} {:>6} {:>10} {:>12}  description\n",
                "id", "kind", "n", "|Sub|", "σ_5", "reported"
            );
            for r in &rows {
                writeln!(
                    s,
                    "{:<6} {:<8} {:>3} {:>6} {:>10} {:>12}  {}",
                    r["id"].as_str().unwrap(),
                    r["kind"].as_str().unwrap(),
                    r["n"],
                    r["count"],
                    r["decimal"].as_str().unwrap(),
                    r["reported"].as_str().unwrap(),
                    r["description"].as_str().unwrap()
                )
                .unwrap();
            }
            s
        }
    })
}

fn cmd_export_dot(source: &Source, out: Option<&Path>) -> Outcome {
    let (name, loaded) = load(source)?;
    let dot = to_dot(&name, &loaded.structure, &loaded.labels);
    match out {
        Some(path) => {
            write_file(path, &dot)?;
            Ok(String::new())
        }
        None => Ok(dot),
    }
}

fn run(cli: Cli) -> Outcome {
    let format = if cli.json { Format::Json } else { cli.format };
    let ceiling = cli.ceiling as usize;
    match &cli.command {
        Command::Count { source, k } => cmd_count(source, *k, format),
        Command::Sigma { source, k } => cmd_sigma(source, *k, format),
        Command::Enumerate {
            n,
            out,
            as_lattice_count,
        } => cmd_enumerate(*n, out.as_deref(), *as_lattice_count, ceiling, format),
        Command::Rank { n } => cmd_rank(*n, ceiling, format),
        Command::Classify { source } => cmd_classify(source, format),
        Command::VerifyTheorem { n } => cmd_verify_theorem(*n, ceiling, format),
        Command::VerifyLemmas { seed, samples } => cmd_verify_lemmas(*seed, *samples, format),
        Command::Catalog => cmd_catalog(format),
        Command::ExportDot { source, out } => cmd_export_dot(source, out.as_deref()),
    }
}

fn print(text: &str) {
    if text.ends_with('\n') || text.is_empty() {
        print!("{text}");
    } else {
        println!("{text}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(text) => {
            print(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(text)) => {
            print(&text);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
