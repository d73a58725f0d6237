use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use smoothfront::indicators::{ghss, hv2d, ReferencePoint};
use smoothfront_harness::{
    compute_hv_reference, export_navigator_bundle, run_experiment, summarize, HvReferenceStore,
    ResultBundle, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "smoothfront",
    version,
    about = "Bi-objective set optimization experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration file and write one bundle and trace per repetition.
    Run {
        config: PathBuf,
        /// Output directory; overrides the config's `output`.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Reference store used for ΔHV when the config has no `hv-star`.
        #[arg(long, default_value = "configs/hv-reference.json")]
        hv_store: PathBuf,
    },
    /// Estimate the optimal hypervolume of p points with long UHVEA-gb runs.
    HvRef {
        problem: String,
        p: usize,
        #[arg(long, default_value = "11,11", value_parser = parse_r)]
        r: [f64; 2],
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, default_value = "configs/hv-reference.json")]
        store: PathBuf,
    },
    /// Greedy hypervolume subset of a point list (a bundle, or CSV rows `f1,f2`).
    Subset {
        input: PathBuf,
        #[arg(short)]
        p: usize,
        #[arg(long, default_value = "11,11", value_parser = parse_r)]
        r: [f64; 2],
    },
    /// Table of mean ± std, ranks and rank-sum p-values over bundle files.
    Summarize {
        /// Bundle files or glob patterns.
        #[arg(required = true)]
        patterns: Vec<String>,
        /// Algorithm label to test against; defaults to the best cell per problem.
        #[arg(long)]
        baseline: Option<String>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Convert a bundle to navigator JSON.
    ExportNav {
        bundle: PathBuf,
        #[arg(long, default_value_t = 200)]
        dense: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_r(s: &str) -> Result<[f64; 2], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [a, b] => Ok([*a, *b]),
        _ => Err("expected two comma-separated values".into()),
    }
}

fn read_points(path: &Path) -> Result<Vec<[f64; 2]>> {
    if path.extension().is_some_and(|e| e == "json") {
        let bundle = ResultBundle::read_json(path)?;
        return Ok(bundle.points.iter().map(|p| p.f).collect());
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut points = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let parse = |k: usize| -> Result<f64> {
            rec.get(k)
                .with_context(|| format!("row {}: missing column {}", i + 1, k + 1))?
                .parse()
                .with_context(|| format!("row {}: not a number", i + 1))
        };
        match (parse(0), parse(1)) {
            (Ok(a), Ok(b)) => points.push([a, b]),
            // header row
            _ if i == 0 => {}
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(points)
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run {
            config,
            output,
            hv_store,
        } => {
            let mut cfg = RunConfig::from_file(&config)?;
            if cfg.hv_star.is_none() {
                let store = HvReferenceStore::load(&hv_store)?;
                cfg.hv_star = store
                    .get(&cfg.benchmark()?.id(), cfg.p, cfg.r)
                    .map(|e| e.value);
            }
            let dir = output
                .or_else(|| cfg.output.clone())
                .unwrap_or_else(|| PathBuf::from("results"));
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            for bundle in run_experiment(&cfg)? {
                let stem = bundle.file_stem();
                bundle.write_json(&dir.join(format!("{stem}.json")))?;
                let trace = dir.join(format!("{stem}-trace.csv"));
                let file = std::fs::File::create(&trace)
                    .with_context(|| format!("creating {}", trace.display()))?;
                bundle.write_trace_csv(file)?;
                let m = &bundle.metrics;
                println!(
                    "{stem}: hv {:.6} sm {} nav {}/{} fevals {} ({:.1} s)",
                    m.hv,
                    m.sm.map_or("-".into(), |s| format!("{s:.4}")),
                    m.nav_len,
                    bundle.points.len(),
                    bundle.fevals,
                    bundle.wall_clock_secs
                );
                if m.delta_hv.is_some_and(|d| d < 0.0) {
                    eprintln!("warning: {stem} exceeds the reference HV; refresh the store");
                }
            }
        }
        Command::HvRef {
            problem,
            p,
            r,
            budget,
            seeds,
            store,
        } => {
            let entry = compute_hv_reference(&problem, p, r, budget, seeds)?;
            let mut s = HvReferenceStore::load(&store)?;
            let value = entry.value;
            let changed = s.insert(entry);
            s.save(&store)?;
            let kept = s
                .get(
                    &problem.parse::<smoothfront::benchmarks::Benchmark>()?.id(),
                    p,
                    r,
                )
                .map(|e| e.value);
            println!(
                "{problem} p={p}: {value:.6} ({})",
                if changed { "stored" } else { "kept existing" }
            );
            if let Some(v) = kept {
                println!("reference: {v:.6}");
            }
        }
        Command::Subset { input, p, r } => {
            let points = read_points(&input)?;
            if points.is_empty() {
                bail!("{}: no points", input.display());
            }
            let r = ReferencePoint::new(r[0], r[1])?;
            let chosen = ghss(&points, &r, p)?;
            let subset: Vec<[f64; 2]> = chosen.iter().map(|&i| points[i]).collect();
            for (&i, f) in chosen.iter().zip(&subset) {
                println!("{i},{},{}", f[0], f[1]);
            }
            println!("# hv {:.6}", hv2d(&subset, &r)?);
        }
        Command::Summarize {
            patterns,
            baseline,
            csv,
        } => {
            let mut bundles = Vec::new();
            for pattern in &patterns {
                let mut matched = false;
                for path in glob::glob(pattern).with_context(|| format!("bad pattern {pattern}"))? {
                    let path = path?;
                    if path.extension().is_some_and(|e| e == "json") {
                        bundles.push(ResultBundle::read_json(&path)?);
                        matched = true;
                    }
                }
                if !matched {
                    bail!("{pattern}: no bundle files");
                }
            }
            let summary = summarize(&bundles, baseline.as_deref())?;
            print!("{}", summary.to_text());
            if let Some(path) = csv {
                let file = std::fs::File::create(&path)
                    .with_context(|| format!("creating {}", path.display()))?;
                summary.write_csv(file)?;
            }
        }
        Command::ExportNav { bundle, dense, out } => {
            let b = ResultBundle::read_json(&bundle)?;
            b.check_consistency()?;
            let nav = export_navigator_bundle(&b, dense)?;
            let out = out.unwrap_or_else(|| bundle.with_extension("nav.json"));
            nav.write(&out)?;
            println!("{}", out.display());
        }
    }
    Ok(())
}
