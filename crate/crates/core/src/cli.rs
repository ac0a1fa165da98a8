//! Command dispatch behind the binary: parse a system file, run the
//! requested analyses, collect a [`Document`].

use crate::analysis::{
    algorithm1, algorithm2, rank_l_analysis, sample_check, strong_analysis, Options, DEFAULT_SEED,
};
use crate::error::{Error, Result};
use crate::immersion::{pull_back_singular, verify_immersion};
use crate::poly::OrderKind;
use crate::report::{Document, ImmersionSection, PullBackSection};
use crate::sysfile::{Model, SystemFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Index,
    Singular,
    Bound,
    Strong,
    Rank { l: usize },
    Immerse { check: bool },
    Full,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Index => "index",
            Command::Singular => "singular",
            Command::Bound => "bound",
            Command::Strong => "strong",
            Command::Rank { .. } => "rank",
            Command::Immerse { .. } => "immerse",
            Command::Full => "full",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub order: Option<OrderKind>,
    pub max_depth: Option<usize>,
    pub seed: Option<u64>,
    pub strict: bool,
}

/// Sample points for the numeric cross-check run by `full`.
pub const DIAGNOSTIC_POINTS: usize = 60;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Exit status for a finished document.
pub fn exit_code(doc: &Document, flags: &Flags) -> i32 {
    if flags.strict && doc.cap_reached_without_result() {
        EXIT_CAP
    } else {
        EXIT_OK
    }
}

pub fn run(cmd: Command, text: &str, flags: &Flags) -> Result<Document> {
    let file = SystemFile::parse(text)?;
    let model = file.load(flags.order)?;
    let sys = &model.system;
    let source_n = model.source.ring.nvars();
    let mode = file.mode();
    let threshold = file.options.l.unwrap_or(source_n);
    let opts = Options {
        max_depth: flags.max_depth.or(file.options.max_depth),
        seed: flags.seed.or(file.options.seed).unwrap_or(DEFAULT_SEED),
        threshold: Some(threshold),
        ..Options::default()
    };
    let mut doc = Document::new(cmd.name(), sys);
    match cmd {
        Command::Index => doc.analyses.push(algorithm1(sys, mode, &opts)?),
        Command::Singular => doc.analyses.push(algorithm2(sys, mode, &opts)?),
        Command::Bound => doc.analyses.push(rank_l_analysis(sys, threshold, mode, &opts)?),
        Command::Strong => doc.analyses.push(strong_analysis(sys, &opts)?),
        Command::Rank { l } => doc.analyses.push(rank_l_analysis(sys, l, mode, &opts)?),
        Command::Immerse { check } => {
            if model.immersion.is_none() {
                return Err(Error::InvalidImmersion("the file declares no immersion".into()));
            }
            immersion_section(&mut doc, &model, check);
            return Ok(doc);
        }
        Command::Full => {
            if model.immersion.is_some() {
                doc.analyses.push(rank_l_analysis(sys, threshold, mode, &opts)?);
            } else {
                let a1 = algorithm1(sys, mode, &opts)?;
                doc.diagnostics = Some(sample_check(&a1, sys, DIAGNOSTIC_POINTS, &opts));
                doc.analyses.push(a1);
                doc.analyses.push(algorithm2(sys, mode, &opts)?);
                doc.analyses.push(rank_l_analysis(sys, threshold, mode, &opts)?);
                doc.analyses.push(strong_analysis(sys, &opts)?);
            }
        }
    }
    if let Some(imm) = &model.immersion {
        if cmd == Command::Full {
            immersion_section(&mut doc, &model, true);
        }
        // the pull-back characterises the source set only at threshold n
        let singular = doc
            .analyses
            .iter()
            .find(|a| a.threshold == source_n)
            .and_then(|a| a.singular_ideal.clone());
        if let Some(s) = singular {
            doc.pull_back = Some(PullBackSection::new(&pull_back_singular(&imm.map, &s, opts.seed)));
        }
    }
    Ok(doc)
}

fn immersion_section(doc: &mut Document, model: &Model, check: bool) {
    let imm = model.immersion.as_ref().expect("caller checked");
    let derived = check.then(|| verify_immersion(&model.source, &imm.map, &imm.derived.system));
    let claimed = imm
        .claimed
        .as_ref()
        .filter(|_| check)
        .map(|c| verify_immersion(&model.source, &imm.map, c));
    doc.immersion = Some(ImmersionSection::new(&imm.map, &imm.derived.system, derived, claimed));
}
