use serde::Serialize;

use frustra::appkits::{FrameReport, FrameState};
use frustra::measures::{Interval, MeasureReport};
use frustra::nullmodel::EnsembleStats;
use frustra::solver::{FrustrationResult, SolverConfig};
use frustra::{Colouring, SignedGraph};

pub const TOOL: &str = "frustra";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Input {
    pub path: String,
    pub n: usize,
    pub m: usize,
    pub m_minus: usize,
}

impl Input {
    pub fn new(path: &std::path::Path, g: &SignedGraph) -> Self {
        Input {
            path: path.display().to_string(),
            n: g.node_count(),
            m: g.edge_count(),
            m_minus: g.negative_edge_count(),
        }
    }
}

#[derive(Serialize)]
pub struct ConfigSummary {
    pub time_limit_seconds: Option<f64>,
    pub target_gap: f64,
    pub heuristic_restarts: usize,
}

impl From<&SolverConfig> for ConfigSummary {
    fn from(cfg: &SolverConfig) -> Self {
        ConfigSummary {
            time_limit_seconds: cfg.time_limit.map(|t| t.as_secs_f64()),
            target_gap: cfg.target_gap,
            heuristic_restarts: cfg.heuristic_restarts,
        }
    }
}

#[derive(Serialize)]
pub struct ResultSummary {
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub exact: bool,
    pub gap: f64,
    pub nodes_explored: u64,
}

impl From<&FrustrationResult> for ResultSummary {
    fn from(r: &FrustrationResult) -> Self {
        ResultSummary {
            lower_bound: r.lower_bound,
            upper_bound: r.upper_bound,
            exact: r.exact,
            gap: r.gap(),
            nodes_explored: r.nodes_explored,
        }
    }
}

/// Nodes coloured 0 form group A.
#[derive(Serialize)]
pub struct Groups {
    pub group_a: Vec<String>,
    pub group_b: Vec<String>,
}

impl Groups {
    pub fn new(g: &SignedGraph, x: &Colouring) -> Self {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (v, label) in g.labels().iter().enumerate() {
            if x.get(v) {
                b.push(label.clone());
            } else {
                a.push(label.clone());
            }
        }
        Groups { group_a: a, group_b: b }
    }
}

#[derive(Serialize)]
pub struct Timing {
    pub elapsed_seconds: f64,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: Input,
    pub seed: u64,
    pub config: ConfigSummary,
    pub measures: MeasureReport,
    pub result: ResultSummary,
    pub partition: Groups,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<EnsembleStats>,
    pub timing: Timing,
}

#[derive(Serialize)]
pub struct FrustratedEdge {
    pub u: String,
    pub v: String,
    pub sign: i32,
}

#[derive(Serialize)]
pub struct LabelMatch {
    /// Group A is compared with the first category unless `complemented`.
    pub categories: [String; 2],
    pub compared: usize,
    pub matches: usize,
    pub complemented: bool,
}

#[derive(Serialize)]
pub struct PartitionReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: Input,
    pub seed: u64,
    pub result: ResultSummary,
    pub partition: Groups,
    pub frustrated_edges: Vec<FrustratedEdge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label_match: Option<LabelMatch>,
    pub timing: Timing,
}

#[derive(Serialize)]
pub struct FrameSummary {
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub m_minus: usize,
    pub frustration: Interval<usize>,
    pub exact: bool,
    pub normalized: Option<Interval<f64>>,
    pub state: FrameState,
}

impl From<&FrameReport> for FrameSummary {
    fn from(r: &FrameReport) -> Self {
        FrameSummary {
            label: r.label.clone(),
            n: r.n,
            m: r.m,
            m_minus: r.m_minus,
            frustration: r.frustration,
            exact: r.exact,
            normalized: r.normalized,
            state: r.state,
        }
    }
}

#[derive(Serialize, Default)]
pub struct StateCounts {
    pub all_positive: usize,
    pub balanced: usize,
    pub unbalanced: usize,
}

impl StateCounts {
    pub fn tally(frames: &[FrameReport]) -> Self {
        let mut c = StateCounts::default();
        for f in frames {
            match f.state {
                FrameState::AllPositive => c.all_positive += 1,
                FrameState::Balanced => c.balanced += 1,
                FrameState::Unbalanced => c.unbalanced += 1,
            }
        }
        c
    }
}

#[derive(Serialize)]
pub struct FrameError {
    pub file: String,
    pub message: String,
}

#[derive(Serialize)]
pub struct PortfolioReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub threshold: f64,
    pub seed: u64,
    pub frames: Vec<FrameSummary>,
    pub counts: StateCounts,
    pub errors: Vec<FrameError>,
}
