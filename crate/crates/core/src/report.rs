//! Text and structured renderings of analysis results.

use serde::Serialize;

use crate::analysis::{render_ideal, canonical_generators, AnalysisReport, IndexKind, Route, SampleDiagnostics, Verdict};
use crate::immersion::{Emptiness, ImmersionMap, PullBack, Verification};
use crate::lie::{SystemSpec, VectorField};
use crate::module::ChainStatus;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct FieldText {
    pub label: String,
    pub components: Vec<String>,
}

impl FieldText {
    fn of(f: &VectorField) -> Self {
        FieldText {
            label: f.label().to_string(),
            components: f.components().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ImmersionSection {
    pub target_variables: Vec<String>,
    pub entries: Vec<String>,
    pub relations: Vec<String>,
    pub fields: Vec<FieldText>,
    /// Independent check of the derived pushforwards, when requested.
    pub derived: Option<Verification>,
    /// Check of the pushforwards written in the file, if any.
    pub claimed: Option<Verification>,
}

impl ImmersionSection {
    pub fn new(map: &ImmersionMap, derived_system: &SystemSpec, derived: Option<Verification>, claimed: Option<Verification>) -> Self {
        let src = map.source().vars();
        ImmersionSection {
            target_variables: map.target().vars().names().to_vec(),
            entries: map
                .expressions()
                .iter()
                .zip(map.target().vars().names())
                .map(|(e, z)| format!("{z} = {}", e.render(src)))
                .collect(),
            relations: canonical_generators(map.relations()).iter().map(ToString::to_string).collect(),
            fields: std::iter::once(derived_system.drift())
                .chain(derived_system.inputs())
                .map(FieldText::of)
                .collect(),
            derived,
            claimed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PullBackSection {
    /// Generators of `singular + R`.
    pub ideal: Vec<String>,
    pub emptiness: Emptiness,
    pub accessible_everywhere: bool,
}

impl PullBackSection {
    pub fn new(pb: &PullBack) -> Self {
        PullBackSection {
            ideal: canonical_generators(&pb.ideal).iter().map(ToString::to_string).collect(),
            emptiness: pb.emptiness.clone(),
            accessible_everywhere: matches!(pb.emptiness, Emptiness::Empty { .. }),
        }
    }
}

/// Everything one command produced.
#[derive(Clone, Debug, Serialize)]
pub struct Document {
    pub schema: u32,
    pub command: String,
    pub variables: Vec<String>,
    pub order: String,
    pub analyses: Vec<AnalysisReport>,
    pub immersion: Option<ImmersionSection>,
    pub pull_back: Option<PullBackSection>,
    pub diagnostics: Option<SampleDiagnostics>,
}

impl Document {
    pub fn new(command: &str, sys: &SystemSpec) -> Self {
        Document {
            schema: SCHEMA,
            command: command.into(),
            variables: sys.ring().vars().names().to_vec(),
            order: sys.ring().order().kind().name().into(),
            analyses: Vec::new(),
            immersion: None,
            pull_back: None,
            diagnostics: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    /// A depth cap stopped an analysis before it produced an index or a set.
    pub fn cap_reached_without_result(&self) -> bool {
        self.analyses.iter().any(|a| {
            matches!(a.chain_status, Some(ChainStatus::CapReached(_))) && a.index_value.is_none()
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for a in &self.analyses {
            analysis_text(a, &mut out);
        }
        if let Some(imm) = &self.immersion {
            immersion_text(imm, &mut out);
        }
        if let Some(pb) = &self.pull_back {
            let ideal = format!("⟨{}⟩", pb.ideal.join(", "));
            let verdict = match &pb.emptiness {
                Emptiness::Empty { grade, certificate } => format!(
                    "empty intersection with im T ({}: {certificate}); accessible everywhere",
                    grade.name()
                ),
                Emptiness::NonEmpty { witness } => format!(
                    "singular points on im T, e.g. z = ({}); not accessible everywhere",
                    witness.join(", ")
                ),
            };
            out.push_str(&format!("[pull-back] singular + relations = {ideal}\n  {verdict}\n"));
        }
        if let Some(d) = &self.diagnostics {
            out.push_str(&format!(
                "[diagnostics] {} sample points, {} on the singular set, {} mismatches (depth {})\n",
                d.points,
                d.on_variety,
                d.mismatches.len(),
                d.depth
            ));
        }
        out
    }
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::GenericTest => "generic rank test",
        Route::Algorithm1 => "exact index (real radicals)",
        Route::Algorithm2 => "invariant closure",
        Route::ModuleBound => "module bound",
        Route::RankL => "rank-l singular set",
        Route::Strong => "strong accessibility",
    }
}

fn set_name(a: &AnalysisReport) -> String {
    let star = if a.route == Route::Strong { "*" } else { "" };
    if a.threshold < a.variables.len() {
        format!("S{star}_∞^<{}", a.threshold)
    } else {
        format!("S{star}_∞")
    }
}

fn analysis_text(a: &AnalysisReport, out: &mut String) {
    out.push_str(&format!(
        "[{}] mode {}, rank threshold {}\n",
        route_name(a.route),
        a.mode.name(),
        a.threshold
    ));
    match a.generic_depth {
        Some(d) => out.push_str(&format!("  generic rank {} reached at depth {d}\n", a.generic_rank)),
        None => out.push_str(&format!("  generic rank {} only\n", a.generic_rank)),
    }
    for d in &a.depths {
        let mut line = format!(
            "  depth {}: {} columns, {} minors, I = ⟨{}⟩",
            d.depth,
            d.columns,
            d.minors,
            d.minor_ideal.join(", ")
        );
        if let Some(r) = &d.real_radical {
            line.push_str(&format!(", real radical ⟨{}⟩", r.join(", ")));
        }
        match (d.invariant, &d.witness) {
            (Some(true), _) => line.push_str(", invariant"),
            (Some(false), Some(w)) => line.push_str(&format!(", not invariant under {}", w.field)),
            _ => {}
        }
        out.push_str(&line);
        out.push('\n');
    }
    for (k, round) in a.closure_rounds.iter().enumerate() {
        out.push_str(&format!("  closure round {}: added {}\n", k + 1, round.join(", ")));
    }
    if !a.module_trace.is_empty() {
        let ranks: Vec<String> = a
            .module_trace
            .iter()
            .map(|s| format!("{}:{}", s.depth, s.generic_rank))
            .collect();
        out.push_str(&format!("  module chain (depth:rank) {}\n", ranks.join(" ")));
    }
    let set = set_name(a);
    let ideal = a
        .singular_ideal
        .as_ref()
        .map(render_ideal)
        .unwrap_or_else(|| "not determined".into());
    let strong = a.route == Route::Strong;
    let summary = match (a.verdict, a.index_kind, a.index_value) {
        (Verdict::NowhereAccessible, ..) => format!(
            "nowhere {}accessible: generic rank {} < {}",
            if strong { "strongly " } else { "" },
            a.generic_rank,
            a.threshold
        ),
        (_, IndexKind::ExactR, Some(k)) => format!("r* = {k}; {set}: {ideal}"),
        (_, IndexKind::ExactL, Some(k)) => format!("l* = {k}; {set}: {ideal}"),
        (_, IndexKind::UpperR, Some(k)) => format!("r̂ = {k} (upper bound on r*); {set}: {ideal}"),
        (_, IndexKind::UpperL, Some(k)) => format!("l̂ = {k} (upper bound on l*); {set}: {ideal}"),
        _ => format!("index undecided; {set}: {ideal}"),
    };
    out.push_str(&format!("  {summary}\n"));
    if let (Some(b), Some(k)) = (a.planar_bound, a.exact_index()) {
        out.push_str(&format!("  planar bound 6d^2 - 2d + 2 = {b}; index {k} ≤ {b}\n"));
    }
    for c in &a.checks {
        out.push_str(&format!(
            "  check {}: {} ({})\n",
            c.name,
            if c.passed { "ok" } else { "FAILED" },
            c.detail
        ));
    }
    for n in &a.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
}

fn verification_text(v: &Verification) -> String {
    match &v.witness {
        None => "holds".into(),
        Some(w) => format!(
            "fails at field {}, component {}: residue {}",
            w.field, w.component, w.residue
        ),
    }
}

fn immersion_text(imm: &ImmersionSection, out: &mut String) {
    out.push_str("[immersion] ");
    out.push_str(&imm.entries.join(", "));
    out.push('\n');
    out.push_str(&format!("  relations: ⟨{}⟩\n", imm.relations.join(", ")));
    for f in &imm.fields {
        out.push_str(&format!("  {}^ = [{}]\n", f.label, f.components.join(", ")));
    }
    if let Some(d) = &imm.derived {
        out.push_str(&format!("  derived pushforwards: {}\n", verification_text(d)));
    }
    if let Some(c) = &imm.claimed {
        out.push_str(&format!("  declared pushforwards: {}\n", verification_text(c)));
    }
}
