use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use frustra::appkits::{
    bipartite_edge_frustration, frames_to_csv, ising_generate, parse_correlation_csv, portfolio_graph, temporal_series,
    FrameReport, IsingSpec,
};
use frustra::graph::{frustrated_edges, read_edge_list};
use frustra::measures::{normalized_frustration, MeasureReport};
use frustra::nullmodel::{ensemble, EnsembleMode};
use frustra::solver::{solve_exact, SolverConfig};
use frustra::SignedGraph;

use crate::report::*;
use crate::{Cli, Command, Common, Format, Mode, Outcome};

/// Gap used by `zscore --mode bounds` when no `--gap` is given.
const DEFAULT_BOUNDS_GAP: f64 = 0.15;

pub fn run(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    let cfg = common.solver_config()?;
    match &cli.command {
        Command::Analyze { graph } => analyze(common, &cfg, graph),
        Command::Zscore { graph, runs, mode } => zscore(common, &cfg, graph, *runs, *mode),
        Command::Partition { graph, labels } => partition(common, &cfg, graph, labels.as_deref()),
        Command::Portfolio { inputs, threshold, format } => portfolio(common, &cfg, inputs, *threshold, *format),
        Command::Series { input } => series(common, &cfg, input),
        Command::Ising { dim, side, hypercube, negative_fractions, instances } => {
            ising(common, &cfg, *dim, *side, *hypercube, negative_fractions, *instances)
        }
        Command::Bipartivity { graphs } => bipartivity(common, &cfg, graphs),
    }
}

fn load(path: &Path) -> Result<SignedGraph> {
    read_edge_list(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: serde::Serialize>(common: &Common, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(common, &text)
}

fn outcome(exact: bool) -> Outcome {
    if exact {
        Outcome::Exact
    } else {
        Outcome::Bounds
    }
}

fn analyze(common: &Common, cfg: &SolverConfig, path: &Path) -> Result<Outcome> {
    let started = Instant::now();
    let g = load(path)?;
    let result = solve_exact(&g, cfg);
    let measures = MeasureReport::new(&g, &result, true)?;
    let report = AnalysisReport {
        tool: TOOL,
        version: VERSION,
        command: "analyze",
        input: Input::new(path, &g),
        seed: common.seed,
        config: cfg.into(),
        measures,
        result: (&result).into(),
        partition: Groups::new(&g, &result.colouring),
        ensemble: None,
        timing: Timing { elapsed_seconds: started.elapsed().as_secs_f64() },
    };
    emit_json(common, &report)?;
    Ok(outcome(result.exact))
}

fn zscore(common: &Common, cfg: &SolverConfig, path: &Path, runs: usize, mode: Mode) -> Result<Outcome> {
    let started = Instant::now();
    let g = load(path)?;
    let (mode, cfg) = match mode {
        Mode::Exact => (EnsembleMode::Exact, cfg.clone()),
        Mode::Bounds => {
            let mut c = cfg.clone();
            if c.target_gap == 0.0 && c.time_limit.is_none() {
                c.target_gap = DEFAULT_BOUNDS_GAP;
            }
            (EnsembleMode::LowerBound, c)
        }
    };
    let result = solve_exact(&g, &cfg);
    let stats = ensemble(&g, runs, &cfg, mode)?;
    let report = AnalysisReport {
        tool: TOOL,
        version: VERSION,
        command: "zscore",
        input: Input::new(path, &g),
        seed: common.seed,
        config: (&cfg).into(),
        measures: MeasureReport::new(&g, &result, false)?,
        result: (&result).into(),
        partition: Groups::new(&g, &result.colouring),
        ensemble: Some(stats),
        timing: Timing { elapsed_seconds: started.elapsed().as_secs_f64() },
    };
    emit_json(common, &report)?;
    Ok(outcome(mode == EnsembleMode::Exact))
}

/// `node group` lines; `#` starts a comment.
fn read_side_labels(path: &Path) -> Result<HashMap<String, String>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            bail!("{}:{}: expected `node group`", path.display(), i + 1);
        }
        out.insert(fields[0].to_string(), fields[1].to_string());
    }
    Ok(out)
}

/// Compares groups A/B with the two most frequent categories, complementing
/// the partition only when that strictly increases the agreement.
fn match_labels(g: &SignedGraph, groups: &frustra::Colouring, sides: &HashMap<String, String>) -> Result<LabelMatch> {
    let mut freq: HashMap<&str, usize> = HashMap::new();
    for v in 0..g.node_count() {
        if let Some(c) = sides.get(g.label(v)) {
            *freq.entry(c.as_str()).or_default() += 1;
        }
    }
    let mut ranked: Vec<(&str, usize)> = freq.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    if ranked.len() < 2 {
        bail!("the label file must assign at least two groups to nodes of the graph");
    }
    let mut cats = [ranked[0].0.to_string(), ranked[1].0.to_string()];
    cats.sort();
    let (mut same, mut flipped, mut compared) = (0, 0, 0);
    for v in 0..g.node_count() {
        let Some(c) = sides.get(g.label(v)) else { continue };
        let want_b = if *c == cats[0] {
            false
        } else if *c == cats[1] {
            true
        } else {
            continue;
        };
        compared += 1;
        if groups.get(v) == want_b {
            same += 1;
        } else {
            flipped += 1;
        }
    }
    let complemented = flipped > same;
    Ok(LabelMatch { categories: cats, compared, matches: same.max(flipped), complemented })
}

fn partition(common: &Common, cfg: &SolverConfig, path: &Path, labels: Option<&Path>) -> Result<Outcome> {
    let started = Instant::now();
    let g = load(path)?;
    let result = solve_exact(&g, cfg);
    let frustrated = frustrated_edges(&g, &result.colouring)
        .map(|e| FrustratedEdge { u: g.label(e.u).to_string(), v: g.label(e.v).to_string(), sign: e.sign.value() })
        .collect();
    let label_match = match labels {
        Some(p) => Some(match_labels(&g, &result.colouring, &read_side_labels(p)?)?),
        None => None,
    };
    let report = PartitionReport {
        tool: TOOL,
        version: VERSION,
        command: "partition",
        input: Input::new(path, &g),
        seed: common.seed,
        result: (&result).into(),
        partition: Groups::new(&g, &result.colouring),
        frustrated_edges: frustrated,
        label_match,
        timing: Timing { elapsed_seconds: started.elapsed().as_secs_f64() },
    };
    emit_json(common, &report)?;
    Ok(outcome(result.exact))
}

/// Regular, non-hidden files of a directory in lexicographic order, or the
/// paths themselves when they are files.
fn expand_inputs(inputs: &[PathBuf], extension: Option<&str>) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(input)
                .with_context(|| format!("listing {}", input.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .filter(|p| !p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with('.')))
                .filter(|p| extension.is_none_or(|x| p.extension().and_then(|e| e.to_str()) == Some(x)))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(input.clone());
        }
    }
    if files.is_empty() {
        bail!("no input files found");
    }
    Ok(files)
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn portfolio(common: &Common, cfg: &SolverConfig, inputs: &[PathBuf], threshold: f64, format: Format) -> Result<Outcome> {
    let files = expand_inputs(inputs, Some("csv"))?;
    let loaded: Vec<(PathBuf, Result<SignedGraph>)> = files
        .into_iter()
        .map(|f| {
            let g = fs::read_to_string(&f)
                .with_context(|| format!("reading {}", f.display()))
                .and_then(|text| Ok(parse_correlation_csv(&text)?))
                .and_then(|m| Ok(portfolio_graph(&m, threshold)?));
            (f, g)
        })
        .collect();
    let mut frames = Vec::new();
    let mut errors = Vec::new();
    for (f, g) in loaded {
        match g {
            Ok(g) => frames.push((stem(&f), g)),
            Err(e) => errors.push(FrameError { file: f.display().to_string(), message: format!("{e:#}") }),
        }
    }
    let reports = if frames.is_empty() { Vec::new() } else { temporal_series(&frames, cfg)? };
    let all_exact = reports.iter().all(|r| r.exact);
    match format {
        Format::Csv => emit(common, &frames_to_csv(&reports)?)?,
        Format::Json => emit_json(
            common,
            &PortfolioReport {
                tool: TOOL,
                version: VERSION,
                command: "portfolio",
                threshold,
                seed: common.seed,
                frames: reports.iter().map(FrameSummary::from).collect(),
                counts: StateCounts::tally(&reports),
                errors,
            },
        )?,
    }
    Ok(outcome(all_exact))
}

/// Frames from a directory (file stem as label) or a manifest of
/// `label path` lines, with paths relative to the manifest.
fn read_frames(input: &Path) -> Result<Vec<(String, SignedGraph)>> {
    if input.is_dir() {
        return expand_inputs(&[input.to_path_buf()], None)?
            .into_iter()
            .map(|p| Ok((stem(&p), load(&p)?)))
            .collect();
    }
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let base = input.parent().unwrap_or(Path::new("."));
    let mut frames = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((label, path)) = line.split_once(char::is_whitespace) else {
            bail!("{}:{}: expected `label path`", input.display(), i + 1);
        };
        frames.push((label.to_string(), load(&base.join(path.trim()))?));
    }
    if frames.is_empty() {
        bail!("{} lists no frames", input.display());
    }
    Ok(frames)
}

fn series(common: &Common, cfg: &SolverConfig, input: &Path) -> Result<Outcome> {
    let frames = read_frames(input)?;
    let reports: Vec<FrameReport> = temporal_series(&frames, cfg)?;
    emit(common, &frames_to_csv(&reports)?)?;
    Ok(outcome(reports.iter().all(|r| r.exact)))
}

fn ising(
    common: &Common,
    cfg: &SolverConfig,
    dim: Option<usize>,
    side: Option<usize>,
    hypercube: Option<usize>,
    fractions: &[f64],
    instances: usize,
) -> Result<Outcome> {
    if instances == 0 {
        bail!("--instances must be at least 1");
    }
    let (dimension, side) = match (dim, hypercube) {
        (Some(d), None) => (d, Some(side.context("--dim needs --side")?)),
        (None, Some(d)) => (d, None),
        _ => bail!("give either --dim with --side, or --hypercube"),
    };
    let mut out = String::from("lattice,dim,side,n,m,neg_fraction,instances,mean_L,sd_L,exact,mean_seconds\n");
    let mut all_exact = true;
    for &q in fractions {
        let specs: Vec<IsingSpec> = (0..instances as u64)
            .map(|i| IsingSpec { dimension, side, negative_fraction: q, seed: common.seed.wrapping_add(i) })
            .collect();
        let graphs = specs.iter().map(ising_generate).collect::<frustra::Result<Vec<_>>>()?;
        let results: Vec<_> = graphs.par_iter().map(|g| solve_exact(g, cfg)).collect();
        let values: Vec<f64> = results.iter().map(|r| r.upper_bound as f64).collect();
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let sd = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
        } else {
            0.0
        };
        let exact = results.iter().filter(|r| r.exact).count();
        all_exact &= exact == results.len();
        let seconds = results.iter().map(|r| r.elapsed.as_secs_f64()).sum::<f64>() / k;
        let (kind, side_text) = match side {
            Some(s) => ("grid", s.to_string()),
            None => ("hypercube", String::new()),
        };
        let g = &graphs[0];
        writeln!(
            out,
            "{kind},{dimension},{side_text},{},{},{q},{instances},{mean:.2},{sd:.2},{exact},{seconds:.4}",
            g.node_count(),
            g.edge_count()
        )?;
    }
    emit(common, &out)?;
    Ok(outcome(all_exact))
}

fn bipartivity(common: &Common, cfg: &SolverConfig, paths: &[PathBuf]) -> Result<Outcome> {
    let mut out = String::from("graph,n,m,L,F,beta,bs,exact\n");
    let mut all_exact = true;
    for path in paths {
        let g = load(path)?;
        let result = bipartite_edge_frustration(&g, cfg).with_context(|| format!("{}", path.display()))?;
        let report = MeasureReport::new(&g, &result, true)?;
        all_exact &= result.exact;
        let l = if result.exact {
            result.upper_bound.to_string()
        } else {
            format!("{}..{}", result.lower_bound, result.upper_bound)
        };
        let f = match normalized_frustration(result.upper_bound, g.edge_count()) {
            Ok(r) if result.exact => format!("{:.5}", *r.numer() as f64 / *r.denom() as f64),
            _ => String::new(),
        };
        let spectral = |x: Option<f64>| x.map_or_else(String::new, |v| format!("{v:.5}"));
        writeln!(
            out,
            "{},{},{},{l},{f},{},{},{}",
            stem(path),
            g.node_count(),
            g.edge_count(),
            spectral(report.beta),
            spectral(report.bs),
            result.exact
        )?;
    }
    emit(common, &out)?;
    Ok(outcome(all_exact))
}
