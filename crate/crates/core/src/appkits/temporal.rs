use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_balanced, Colouring, SignedGraph};
use crate::measures::{normalized_frustration, Interval};
use crate::solver::{solve_exact, FrustrationResult, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameState {
    AllPositive,
    Balanced,
    Unbalanced,
}

impl FrameState {
    /// Balance is decided exactly even when the solve only produced bounds.
    pub fn classify(g: &SignedGraph, result: &FrustrationResult) -> FrameState {
        if g.negative_edge_count() == 0 {
            FrameState::AllPositive
        } else if result.upper_bound == 0 {
            FrameState::Balanced
        } else if result.lower_bound > 0 || !is_balanced(g).is_balanced() {
            FrameState::Unbalanced
        } else {
            FrameState::Balanced
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FrameState::AllPositive => "all_positive",
            FrameState::Balanced => "balanced",
            FrameState::Unbalanced => "unbalanced",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub m_minus: usize,
    pub frustration: Interval<usize>,
    pub exact: bool,
    /// Absent for frames without edges.
    pub normalized: Option<Interval<f64>>,
    pub state: FrameState,
    /// Node labels of the frame, parallel to `partition`.
    pub nodes: Vec<String>,
    pub partition: Colouring,
}

impl FrameReport {
    pub fn new(label: impl Into<String>, g: &SignedGraph, result: &FrustrationResult) -> Self {
        let m = g.edge_count();
        let f = |l: usize| normalized_frustration(l, m).ok().map(|r| *r.numer() as f64 / *r.denom() as f64);
        let normalized = match (f(result.upper_bound), f(result.lower_bound)) {
            (Some(lower), Some(upper)) => Some(Interval { lower, upper }),
            _ => None,
        };
        FrameReport {
            label: label.into(),
            n: g.node_count(),
            m,
            m_minus: g.negative_edge_count(),
            frustration: Interval { lower: result.lower_bound, upper: result.upper_bound },
            exact: result.exact,
            normalized,
            state: FrameState::classify(g, result),
            nodes: g.labels().to_vec(),
            partition: result.colouring.clone(),
        }
    }
}

/// Solves each frame and reports it in input order.
pub fn temporal_series(frames: &[(String, SignedGraph)], cfg: &SolverConfig) -> Result<Vec<FrameReport>> {
    if frames.is_empty() {
        return Err(Error::Contract("a series needs at least one frame".into()));
    }
    Ok(frames
        .par_iter()
        .map(|(label, g)| FrameReport::new(label.clone(), g, &solve_exact(g, cfg)))
        .collect())
}

/// One row per frame: `label,n,m,m_minus,L,F,state,exact`. Bounded values
/// are written as `lower..upper`.
pub fn frames_to_csv(reports: &[FrameReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Data(e.to_string());
    w.write_record(["label", "n", "m", "m_minus", "L", "F", "state", "exact"]).map_err(io)?;
    for r in reports {
        let l = if r.frustration.is_point() {
            r.frustration.lower.to_string()
        } else {
            format!("{}..{}", r.frustration.lower, r.frustration.upper)
        };
        let f = match r.normalized {
            None => String::new(),
            Some(f) if f.is_point() => format!("{:.5}", f.lower),
            Some(f) => format!("{:.5}..{:.5}", f.lower, f.upper),
        };
        w.write_record([
            r.label.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.m_minus.to_string(),
            l,
            f,
            r.state.as_str().to_string(),
            r.exact.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Data(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeStability {
    pub label: String,
    pub frames_present: usize,
    /// Frames in which the node sits on its more frequent side.
    pub majority: usize,
}

impl NodeStability {
    pub fn is_stable(&self) -> bool {
        self.majority == self.frames_present
    }
}

/// Aligns each frame's partition with the previous (aligned) frame by
/// complementing it when that agrees on more shared labels, then counts how
/// often each label stays on its majority side. Labels are reported in
/// order of first appearance.
pub fn partition_stability(reports: &[FrameReport]) -> Vec<NodeStability> {
    let mut order: Vec<String> = Vec::new();
    let mut tallies: HashMap<String, [usize; 2]> = HashMap::new();
    let mut previous: HashMap<&str, bool> = HashMap::new();
    for r in reports {
        let sides: HashMap<&str, bool> = r.nodes.iter().map(String::as_str).zip(r.partition.bits().iter().copied()).collect();
        let (agree, disagree) = sides.iter().fold((0, 0), |(a, d), (label, &side)| match previous.get(label) {
            Some(&p) if p == side => (a + 1, d),
            Some(_) => (a, d + 1),
            None => (a, d),
        });
        let flip = disagree > agree;
        let aligned: HashMap<&str, bool> = sides.into_iter().map(|(l, s)| (l, s ^ flip)).collect();
        for label in &r.nodes {
            let side = aligned[label.as_str()];
            let t = tallies.entry(label.clone()).or_insert_with(|| {
                order.push(label.clone());
                [0, 0]
            });
            t[side as usize] += 1;
        }
        previous = aligned;
    }
    order
        .into_iter()
        .map(|label| {
            let t = tallies[&label];
            NodeStability { label, frames_present: t[0] + t[1], majority: t[0].max(t[1]) }
        })
        .collect()
}
