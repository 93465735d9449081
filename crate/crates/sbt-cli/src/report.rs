//! Text renderers for the CLI reports.  The JSON side serializes the
//! library types directly; everything here is presentation only and must
//! show exactly the same numbers.

use std::fmt::Write;

use serde::Serialize;

use sbt_core::bounds::{min_ratio, palisade_distance, BoundsReport};
use sbt_core::cycle_graph::CycleGraph;
use sbt_core::search::{Method, SearchResult};
use sbt_core::structure::{ComponentKind, StructureReport};
use sbt_core::ExtendedPermutation;

/// Two-column layout with the labels padded to a common width.
fn two_column(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(label, _)| label.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (label, value) in rows {
        let pad = width - label.chars().count();
        let _ = writeln!(out, "  {label}{}  {value}", " ".repeat(pad));
    }
    out
}

fn opt(value: Option<usize>) -> String {
    value.map_or_else(|| "—".to_string(), |v| v.to_string())
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::BfsTable => "bfs-table",
        Method::Ida => "ida",
    }
}

pub(crate) fn render_analysis(
    pi: &ExtendedPermutation,
    s: &StructureReport,
    b: &BoundsReport,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "permutation  {}   (n + 1 = {} symbols)",
        pi.one_line_string(),
        pi.size()
    );
    let _ = writeln!(out, "π̂            {}", pi.cycle_string());
    let _ = writeln!(out, "σ̂π̂⁻¹         {}", s.cycles().to_string_with_fixed());
    out.push('\n');

    let cycles = s.cycles().cycles();
    let _ = writeln!(out, "cycles of σ̂π̂⁻¹ ({}):", cycles.len());
    for (i, cycle) in cycles.iter().enumerate() {
        let orientation = if cycle.len() == 1 {
            "fixed"
        } else if s.oriented()[i] {
            "oriented"
        } else {
            "unoriented"
        };
        let _ = writeln!(out, "  #{i}  {cycle}  len {}  {orientation}", cycle.len());
    }

    let _ = writeln!(out, "components ({}):", s.components().len());
    for (c, comp) in s.components().iter().enumerate() {
        let members: Vec<String> = comp.iter().map(|i| format!("#{i}")).collect();
        let kind = match s.component_kind()[c] {
            ComponentKind::SingleOrientedCycle => "single oriented cycle",
            ComponentKind::ConnectedConfiguration if s.uip()[c] => "unoriented interleaving pair",
            ComponentKind::ConnectedConfiguration => "connected configuration",
        };
        let _ = writeln!(out, "  {{{}}}  {kind}", members.join(" "));
    }

    let class = if s.is_palisade() {
        format!("palisade with φ = {}", s.phi())
    } else {
        "not a palisade".to_string()
    };
    let suffix = if s.is_3perm() { "; 3-permutation" } else { "" };
    let _ = writeln!(out, "classification: {class}{suffix}");
    out.push('\n');

    let ratio = b.min_ratio.map_or_else(
        || "—".to_string(),
        |r| format!("{}/{} = {:.3}", r.numer(), r.denom(), *r.numer() as f64 / *r.denom() as f64),
    );
    let rows = vec![
        ("3-norm (lower bound)".to_string(), b.norm3.to_string()),
        ("hurdle lower bound".to_string(), opt(b.hurdle_lower)),
        ("palisade distance (exact)".to_string(), opt(b.palisade_distance)),
        ("norm upper bound".to_string(), b.upper.to_string()),
        ("3-permutation class diameter".to_string(), opt(b.td3)),
        ("distance : lower bound".to_string(), ratio),
    ];
    let _ = writeln!(out, "bounds:");
    out.push_str(&two_column(&rows));
    out
}

pub(crate) fn render_distance(
    pi: &ExtendedPermutation,
    result: &SearchResult,
    steps: &[String],
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "permutation  {}   (n + 1 = {} symbols)",
        pi.one_line_string(),
        pi.size()
    );
    let _ = writeln!(
        out,
        "distance     {}   ({}, {} nodes, witness replay verified)",
        result.distance,
        method_name(result.method),
        result.nodes_expanded
    );
    if result.witness.is_empty() {
        let _ = writeln!(out, "witness      none needed — already sorted");
    } else {
        let _ = writeln!(out, "witness");
        for (i, (tau, line)) in result.witness.iter().zip(steps).enumerate() {
            let _ = writeln!(out, "  {}. {tau}  →  {line}", i + 1);
        }
    }
    out
}

pub(crate) fn render_indeterminate(pi: &ExtendedPermutation, result: &SearchResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "permutation  {}   (n + 1 = {} symbols)",
        pi.one_line_string(),
        pi.size()
    );
    let _ = writeln!(
        out,
        "status       indeterminate — budget exhausted after {} node expansions",
        result.nodes_expanded
    );
    let _ = writeln!(out, "proven       distance ≥ {}", result.distance);
    out
}

pub(crate) fn render_graph(pi: &ExtendedPermutation, graph: &CycleGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "cycle graph  {}   ({} black edges)",
        pi.one_line_string(),
        pi.size()
    );
    for (i, cycle) in graph.cycles().iter().enumerate() {
        let positions: Vec<String> =
            cycle.black_positions().iter().map(|p| p.to_string()).collect();
        let _ = writeln!(
            out,
            "  cycle #{i}  κ = {}  {}  black edges {}",
            cycle.kappa(),
            if cycle.is_odd() { "odd " } else { "even" },
            positions.join(" ")
        );
    }
    let _ = writeln!(out, "odd cycles   {} of {}", graph.odd_cycle_count(), graph.cycles().len());
    let _ = writeln!(
        out,
        "lower bound  ({} − {}) / 2 = {}",
        pi.size(),
        graph.odd_cycle_count(),
        graph.bp_bound()
    );
    out
}

/// One line of the palisade ratio table.
#[derive(Serialize)]
pub(crate) struct RatioRow {
    pub phi: usize,
    pub distance: usize,
    pub lower: usize,
    pub num: u64,
    pub den: u64,
    pub decimal: f64,
}

impl RatioRow {
    pub fn at(phi: usize) -> RatioRow {
        let ratio = min_ratio(phi);
        let (num, den) = (*ratio.numer(), *ratio.denom());
        RatioRow {
            phi,
            distance: palisade_distance(phi),
            lower: 2 * phi,
            num,
            den,
            decimal: num as f64 / den as f64,
        }
    }

    /// Fraction order without floats: a/b vs c/d by cross-multiplication.
    pub fn cmp_ratio(&self, other: &RatioRow) -> std::cmp::Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

pub(crate) fn render_ratio(rows: &[RatioRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "   φ  distance  lower  ratio   decimal");
    for row in rows {
        let _ = writeln!(
            out,
            "{:4}  {:8}  {:5}  {:>5}  {:8.3}",
            row.phi,
            row.distance,
            row.lower,
            format!("{}/{}", row.num, row.den),
            row.decimal
        );
    }
    let floor = rows.iter().min_by(|a, b| a.cmp_ratio(b)).expect("at least one row");
    let attained: Vec<String> = rows
        .iter()
        .filter(|r| r.cmp_ratio(floor).is_eq())
        .map(|r| r.phi.to_string())
        .collect();
    let _ = writeln!(
        out,
        "minimum      {}/{} = {:.3} at φ ∈ {{{}}}",
        floor.num,
        floor.den,
        floor.decimal,
        attained.join(", ")
    );
    out
}
