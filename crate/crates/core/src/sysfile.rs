//! System description files.
//!
//! ```text
//! # comment
//! vars x1 x2 x3
//! drift: 0, x2^2 + x3^2 - 1, 0
//! input g: x2, x2*x3, -x2^2
//! immersion z1 z2 z3 z4 z5
//! map z4 = sin(x3)
//! map z5 = cos(x3)
//! relation z4^2 + z5^2 - 1
//! pushforward g: ...
//! options order=lex max_depth=8 seed=7 mode=strong l=3
//! ```
//!
//! `map` lines for the first `n` target variables may be omitted; they
//! default to the source variables. `relation` and `pushforward` rows are
//! over the target variables. Every error carries a line and column.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::immersion::{derive_immersed, AnalyticField, AnalyticSystem, ImmersedSystem, ImmersionMap};
use crate::lie::{Mode, SystemSpec, VectorField};
use crate::poly::{parse_expr, Expr, MonomialOrder, OrderKind, Ring, VarTable};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub order: Option<OrderKind>,
    pub max_depth: Option<usize>,
    pub seed: Option<u64>,
    pub mode: Option<Mode>,
    pub l: Option<usize>,
}

impl FileOptions {
    fn is_empty(&self) -> bool {
        *self == FileOptions::default()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImmersionBlock {
    pub targets: Vec<String>,
    /// `(target index, expression over the source variables)` for every
    /// entry past the identity prefix, in target order.
    pub maps: Vec<(usize, Expr)>,
    pub relations: Vec<Expr>,
    /// Claimed pushforwards, keyed by field label.
    pub pushforwards: Vec<(String, Vec<Expr>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemFile {
    pub vars: Vec<String>,
    pub drift: Option<Vec<Expr>>,
    pub inputs: Vec<(String, Vec<Expr>)>,
    pub immersion: Option<ImmersionBlock>,
    pub options: FileOptions,
}

/// Immersion data of a loaded file.
#[derive(Clone, Debug)]
pub struct Immersion {
    pub map: ImmersionMap,
    pub derived: ImmersedSystem,
    /// The system spelled out by `pushforward` rows, if any.
    pub claimed: Option<SystemSpec>,
}

/// A file turned into rings and systems.
#[derive(Clone, Debug)]
pub struct Model {
    pub source: AnalyticSystem,
    pub immersion: Option<Immersion>,
    /// The polynomial system to analyse: the source itself, or the derived
    /// immersed system.
    pub system: SystemSpec,
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, column: usize, msg: impl Into<String>) -> Error {
        Error::Parse(ParseError::new(self.no, column, msg))
    }

    /// Column (1-based, in characters) of byte offset `at`.
    fn column(&self, at: usize) -> usize {
        self.text[..at].chars().count() + 1
    }
}

/// Splits on whitespace, keeping byte offsets.
fn words(text: &str, start: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut begin = None;
    for (i, c) in text[start..].char_indices() {
        match (c.is_whitespace(), begin) {
            (false, None) => begin = Some(i),
            (true, Some(b)) => {
                out.push((start + b, &text[start + b..start + i]));
                begin = None;
            }
            _ => {}
        }
    }
    if let Some(b) = begin {
        out.push((start + b, &text[start + b..]));
    }
    out
}

/// Comma-separated components with their byte offsets, splitting only
/// outside parentheses.
fn components(text: &str, start: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut from = start;
    for (i, c) in text[start..].char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((from, &text[from..start + i]));
                from = start + i + 1;
            }
            _ => {}
        }
    }
    out.push((from, &text[from..]));
    out
}

/// Parses `a, b, c` over `vars`, checking the count.
fn expr_row(line: &Line, start: usize, vars: &VarTable, arity: usize) -> Result<Vec<Expr>> {
    let parts = components(line.text, start);
    if parts.len() != arity {
        let at = if parts.len() < arity { line.text.len() } else { parts[arity].0 };
        return Err(line.err(
            line.column(at),
            format!("expected {arity} components, found {}", parts.len()),
        ));
    }
    parts
        .iter()
        .map(|(at, text)| expr_at(line, *at, text, vars))
        .collect()
}

fn expr_at(line: &Line, at: usize, text: &str, vars: &VarTable) -> Result<Expr> {
    if text.trim().is_empty() {
        return Err(line.err(line.column(at), "missing component"));
    }
    Ok(parse_expr(vars, text, line.no, line.column(at))?)
}

/// `name:` prefix of an `input` or `pushforward` row.
fn labelled<'a>(line: &Line<'a>, start: usize, keyword: &str) -> Result<(String, usize)> {
    let Some(colon) = line.text[start..].find(':').map(|c| start + c) else {
        return Err(line.err(line.column(line.text.len()), format!("expected `{keyword} <name>: ...`")));
    };
    let name = line.text[start..colon].trim();
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(line.err(line.column(start), format!("invalid field name `{name}`")));
    }
    Ok((name.to_string(), colon + 1))
}

fn var_table(line: &Line, list: &[(usize, &str)]) -> Result<VarTable> {
    for (k, (at, name)) in list.iter().enumerate() {
        if list[..k].iter().any(|(_, n)| n == name) {
            return Err(line.err(line.column(*at), format!("duplicate variable name `{name}`")));
        }
    }
    VarTable::new(list.iter().map(|(_, n)| n.to_string())).map_err(|e| line.err(line.column(list[0].0), e.to_string()))
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: &Line, at: usize, key: &str) -> Result<()> {
    if slot.is_some() {
        return Err(line.err(line.column(at), format!("option `{key}` given twice")));
    }
    *slot = Some(value);
    Ok(())
}

fn parse_options(line: &Line, start: usize, opts: &mut FileOptions) -> Result<()> {
    let toks = words(line.text, start);
    if toks.is_empty() {
        return Err(line.err(line.column(start), "expected `key=value` after `options`"));
    }
    for (at, tok) in toks {
        let Some((key, value)) = tok.split_once('=') else {
            return Err(line.err(line.column(at), format!("expected `key=value`, found `{tok}`")));
        };
        let vat = at + key.len() + 1;
        let bad = |what: &str| line.err(line.column(vat), format!("invalid {what} `{value}`"));
        let int = || value.parse::<usize>().map_err(|_| bad("integer"));
        match key {
            "order" => set_once(&mut opts.order, value.parse().map_err(|_| bad("order"))?, line, at, key)?,
            "max_depth" => set_once(&mut opts.max_depth, int()?, line, at, key)?,
            "seed" => set_once(&mut opts.seed, value.parse().map_err(|_| bad("seed"))?, line, at, key)?,
            "l" => set_once(&mut opts.l, int()?, line, at, key)?,
            "mode" => {
                let mode = match value {
                    "accessibility" => Mode::Accessibility,
                    "strong" => Mode::Strong,
                    _ => return Err(bad("mode")),
                };
                set_once(&mut opts.mode, mode, line, at, key)?
            }
            _ => return Err(line.err(line.column(at), format!("unknown option `{key}`"))),
        }
    }
    Ok(())
}

/// A parsed but not yet validated immersion block.
struct RawImmersion {
    targets: VarTable,
    line: usize,
    maps: Vec<(usize, Expr, usize, usize)>,
    relations: Vec<(Expr, usize, usize)>,
    pushforwards: Vec<(String, Vec<Expr>, usize)>,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<SystemFile> {
        let mut vars: Option<VarTable> = None;
        let mut drift = None;
        let mut inputs: Vec<(String, Vec<Expr>)> = Vec::new();
        let mut imm: Option<RawImmersion> = None;
        let mut options = FileOptions::default();
        let mut last_line = 0;
        for (no, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            let line = Line { no: no + 1, text: content };
            last_line = no + 1;
            let toks = words(content, 0);
            let Some(&(at, head)) = toks.first() else { continue };
            let rest = at + head.len();
            let need_vars = |vars: &Option<VarTable>| -> Result<VarTable> {
                vars.clone().ok_or_else(|| line.err(line.column(at), "`vars` must come first"))
            };
            match head {
                "vars" => {
                    if vars.is_some() {
                        return Err(line.err(line.column(at), "`vars` given twice"));
                    }
                    if toks.len() < 2 {
                        return Err(line.err(line.column(rest), "expected at least one variable"));
                    }
                    vars = Some(var_table(&line, &toks[1..])?);
                }
                "drift:" | "drift" => {
                    let vt = need_vars(&vars)?;
                    let start = if head == "drift" {
                        let after = content[rest..].trim_start();
                        if !after.starts_with(':') {
                            return Err(line.err(line.column(rest), "expected `:` after `drift`"));
                        }
                        content.len() - after.len() + 1
                    } else {
                        rest
                    };
                    if drift.is_some() {
                        return Err(line.err(line.column(at), "`drift` given twice"));
                    }
                    drift = Some(expr_row(&line, start, &vt, vt.len())?);
                }
                "input" => {
                    let vt = need_vars(&vars)?;
                    let (name, start) = labelled(&line, rest, "input")?;
                    if name == "f" || inputs.iter().any(|(n, _)| *n == name) {
                        return Err(line.err(line.column(rest), format!("duplicate field name `{name}`")));
                    }
                    inputs.push((name, expr_row(&line, start, &vt, vt.len())?));
                }
                "immersion" => {
                    need_vars(&vars)?;
                    if imm.is_some() {
                        return Err(line.err(line.column(at), "`immersion` given twice"));
                    }
                    if toks.len() < 2 {
                        return Err(line.err(line.column(rest), "expected target variables"));
                    }
                    imm = Some(RawImmersion {
                        targets: var_table(&line, &toks[1..])?,
                        line: line.no,
                        maps: Vec::new(),
                        relations: Vec::new(),
                        pushforwards: Vec::new(),
                    });
                }
                "map" | "relation" | "pushforward" => {
                    let vt = need_vars(&vars)?;
                    let Some(block) = imm.as_mut() else {
                        return Err(line.err(line.column(at), format!("`{head}` outside an immersion block")));
                    };
                    match head {
                        "map" => {
                            let Some(eq) = content[rest..].find('=').map(|e| rest + e) else {
                                return Err(line.err(line.column(content.len()), "expected `map <target> = <expr>`"));
                            };
                            let name = content[rest..eq].trim();
                            let Some(j) = block.targets.index_of(name) else {
                                return Err(line.err(line.column(rest), format!("unknown target variable `{name}`")));
                            };
                            if block.maps.iter().any(|m| m.0 == j) {
                                return Err(line.err(line.column(rest), format!("`{name}` mapped twice")));
                            }
                            let e = expr_at(&line, eq + 1, &content[eq + 1..], &vt)?;
                            block.maps.push((j, e, line.no, line.column(eq + 1)));
                        }
                        "relation" => {
                            let e = expr_at(&line, rest, &content[rest..], &block.targets)?;
                            block.relations.push((e, line.no, line.column(rest)));
                        }
                        _ => {
                            let (name, start) = labelled(&line, rest, "pushforward")?;
                            if block.pushforwards.iter().any(|p| p.0 == name) {
                                return Err(line.err(line.column(rest), format!("duplicate pushforward `{name}`")));
                            }
                            let n = block.targets.len();
                            let row = expr_row(&line, start, &block.targets, n)?;
                            block.pushforwards.push((name, row, line.no));
                        }
                    }
                }
                "options" => parse_options(&line, rest, &mut options)?,
                other => {
                    return Err(line.err(
                        line.column(at),
                        format!("unknown section `{other}`; expected vars, drift, input, immersion, map, relation, pushforward or options"),
                    ))
                }
            }
        }
        let Some(vars) = vars else {
            return Err(Error::Parse(ParseError::new(last_line.max(1), 1, "missing `vars` line")));
        };
        if inputs.is_empty() {
            return Err(Error::Parse(ParseError::new(last_line.max(1), 1, "expected at least one `input` row")));
        }
        let immersion = match imm {
            None => None,
            Some(raw) => Some(finish_immersion(raw, &vars, &drift, &inputs)?),
        };
        let file = SystemFile {
            vars: vars.names().to_vec(),
            drift,
            inputs,
            immersion,
            options,
        };
        file.validate(text)?;
        Ok(file)
    }

    /// Checks that needs the whole file: transcendental parts must be
    /// declared, and the immersion must be consistent.
    fn validate(&self, text: &str) -> Result<()> {
        let locate = |needle: &str| -> (usize, usize) {
            for (no, line) in text.lines().enumerate() {
                let content = line.split('#').next().unwrap_or("");
                let toks = words(content, 0);
                if let Some(&(_, head)) = toks.first() {
                    let hit = match needle {
                        "f" => head.starts_with("drift"),
                        "immersion" => head == "immersion",
                        _ => head == "input" && labelled_name(content) == Some(needle),
                    };
                    if hit {
                        return (no + 1, 1);
                    }
                }
            }
            (1, 1)
        };
        let positioned = |e: Error, (line, col): (usize, usize)| match e {
            Error::Parse(p) => Error::Parse(p),
            other => Error::Parse(ParseError::new(line, col, other.to_string())),
        };
        let source = self.analytic(OrderKind::DegRevLex).map_err(|e| positioned(e, (1, 1)))?;
        match &self.immersion {
            None => {
                for field in source.fields() {
                    for c in &field.components {
                        c.to_polynomial(&source.ring).map_err(|e| positioned(e, locate(&field.label)))?;
                    }
                }
            }
            Some(_) => {
                let map = self
                    .immersion_map(&source.ring)
                    .map_err(|e| positioned(e, locate("immersion")))?;
                for field in source.fields() {
                    for c in &field.components {
                        map.rewrite(c).map_err(|e| positioned(e, locate(&field.label)))?;
                    }
                }
            }
        }
        Ok(())
    }

    fn ring(&self, names: &[String], order: OrderKind) -> Ring {
        Ring::new(VarTable::new(names.to_vec()).expect("validated"), MonomialOrder::new(order))
    }

    /// The source system over the given order.
    pub fn analytic(&self, order: OrderKind) -> Result<AnalyticSystem> {
        let ring = self.ring(&self.vars, order);
        let field = |label: &str, comps: &[Expr]| AnalyticField {
            label: label.into(),
            components: comps.to_vec(),
        };
        Ok(AnalyticSystem {
            drift: self.drift.as_ref().map(|d| field("f", d)),
            inputs: self.inputs.iter().map(|(n, c)| field(n, c)).collect(),
            ring,
        })
    }

    fn immersion_map(&self, source: &Ring) -> Result<ImmersionMap> {
        let block = self.immersion.as_ref().expect("caller checked");
        let target = self.ring(&block.targets, source.order().kind());
        let mut exprs: Vec<Expr> = (0..block.targets.len()).map(Expr::Var).collect();
        for (j, e) in &block.maps {
            exprs[*j] = e.clone();
        }
        let relations = block
            .relations
            .iter()
            .map(|r| r.to_polynomial(&target))
            .collect::<Result<Vec<_>>>()?;
        ImmersionMap::new(source, &target, exprs, relations)
    }

    /// Rings, the immersion and the system to analyse. `order` overrides
    /// the file's own `order` option.
    pub fn load(&self, order: Option<OrderKind>) -> Result<Model> {
        let order = order.or(self.options.order).unwrap_or(OrderKind::DegRevLex);
        let source = self.analytic(order)?;
        let Some(block) = &self.immersion else {
            let system = source.to_polynomial()?;
            return Ok(Model {
                source,
                immersion: None,
                system,
            });
        };
        let map = self.immersion_map(&source.ring)?;
        let derived = derive_immersed(&source, &map)?;
        let claimed = if block.pushforwards.is_empty() {
            None
        } else {
            let target = map.target();
            let field = |label: &str| -> Result<VectorField> {
                match block.pushforwards.iter().find(|p| p.0 == label) {
                    Some((_, row)) => VectorField::new(
                        target,
                        label,
                        row.iter().map(|e| e.to_polynomial(target)).collect::<Result<Vec<_>>>()?,
                    ),
                    None => Ok(VectorField::zero(target, label)),
                }
            };
            let inputs = self.inputs.iter().map(|(n, _)| field(n)).collect::<Result<Vec<_>>>()?;
            Some(SystemSpec::new(target, field("f")?, inputs)?)
        };
        let system = derived.system.clone();
        Ok(Model {
            source,
            immersion: Some(Immersion { map, derived, claimed }),
            system,
        })
    }

    /// Effective mode, from the file or the default.
    pub fn mode(&self) -> Mode {
        self.options.mode.unwrap_or(Mode::Accessibility)
    }
}

fn labelled_name(content: &str) -> Option<&str> {
    let rest = content.trim_start().strip_prefix("input")?;
    Some(rest.split(':').next()?.trim())
}

fn finish_immersion(
    raw: RawImmersion,
    vars: &VarTable,
    drift: &Option<Vec<Expr>>,
    inputs: &[(String, Vec<Expr>)],
) -> Result<ImmersionBlock> {
    let n = vars.len();
    let nt = raw.targets.len();
    let at_block = |msg: String| Error::Parse(ParseError::new(raw.line, 1, msg));
    if nt < n {
        return Err(at_block(format!("{nt} target variables cannot immerse {n} source variables")));
    }
    let mut maps = Vec::new();
    for (j, e, line, col) in raw.maps {
        if j < n {
            if e != Expr::Var(j) {
                return Err(Error::Parse(ParseError::new(
                    line,
                    col,
                    format!("`{}` must map to the source variable `{}`", raw.targets.name(j), vars.name(j)),
                )));
            }
            continue;
        }
        maps.push((j, e));
    }
    maps.sort_by_key(|m| m.0);
    for j in n..nt {
        if !maps.iter().any(|m| m.0 == j) {
            return Err(at_block(format!("no `map` line for `{}`", raw.targets.name(j))));
        }
    }
    let labels: Vec<&str> = drift
        .iter()
        .map(|_| "f")
        .chain(inputs.iter().map(|(name, _)| name.as_str()))
        .collect();
    for (name, _, line) in &raw.pushforwards {
        if !labels.contains(&name.as_str()) && name != "f" {
            return Err(Error::Parse(ParseError::new(*line, 1, format!("pushforward of unknown field `{name}`"))));
        }
    }
    if !raw.pushforwards.is_empty() {
        for label in &labels {
            if !raw.pushforwards.iter().any(|p| p.0 == *label) {
                return Err(at_block(format!("no `pushforward` row for `{label}`")));
            }
        }
    }
    for (r, line, col) in &raw.relations {
        if !r.is_polynomial() {
            return Err(Error::Parse(ParseError::new(*line, *col, "relations must be polynomials")));
        }
    }
    Ok(ImmersionBlock {
        targets: raw.targets.names().to_vec(),
        maps,
        relations: raw.relations.into_iter().map(|r| r.0).collect(),
        pushforwards: raw.pushforwards.into_iter().map(|p| (p.0, p.1)).collect(),
    })
}

fn row(exprs: &[Expr], vars: &VarTable) -> String {
    exprs.iter().map(|e| e.render(vars)).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for SystemFile {
    /// Canonical text; parsing it gives back an equal file.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = VarTable::new(self.vars.clone()).expect("validated");
        writeln!(f, "vars {}", self.vars.join(" "))?;
        if let Some(d) = &self.drift {
            writeln!(f, "drift: {}", row(d, &vars))?;
        }
        for (name, comps) in &self.inputs {
            writeln!(f, "input {name}: {}", row(comps, &vars))?;
        }
        if let Some(block) = &self.immersion {
            let targets = VarTable::new(block.targets.clone()).expect("validated");
            writeln!(f, "immersion {}", block.targets.join(" "))?;
            for (j, e) in &block.maps {
                writeln!(f, "map {} = {}", targets.name(*j), e.render(&vars))?;
            }
            for r in &block.relations {
                writeln!(f, "relation {}", r.render(&targets))?;
            }
            for (name, comps) in &block.pushforwards {
                writeln!(f, "pushforward {name}: {}", row(comps, &targets))?;
            }
        }
        if !self.options.is_empty() {
            let o = &self.options;
            let mut parts = Vec::new();
            if let Some(k) = o.order {
                parts.push(format!("order={}", k.name()));
            }
            if let Some(d) = o.max_depth {
                parts.push(format!("max_depth={d}"));
            }
            if let Some(s) = o.seed {
                parts.push(format!("seed={s}"));
            }
            if let Some(m) = o.mode {
                parts.push(format!("mode={}", m.name()));
            }
            if let Some(l) = o.l {
                parts.push(format!("l={l}"));
            }
            writeln!(f, "options {}", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX41: &str = "vars x1 x2\ndrift: 0, 0\ninput g1: x2, 0\ninput g2: 0, x1^2\n";

    const UNICYCLE: &str = "\
# unicycle
vars x1 x2 x3
input g1: cos(x3), sin(x3), 0
input g2: 0, 0, 1
immersion z1 z2 z3 z4 z5
map z4 = sin(x3)
map z5 = cos(x3)
relation z4^2 + z5^2 - 1
options l=3
";

    fn err_at(text: &str) -> (usize, usize, String) {
        match SystemFile::parse(text) {
            Err(Error::Parse(p)) => (p.position.line, p.position.column, p.message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn ex41_file() {
        let file = SystemFile::parse(EX41).unwrap();
        let model = file.load(None).unwrap();
        let r = model.system.ring();
        assert!(model.system.is_driftless());
        assert_eq!(model.system.inputs()[1], VectorField::parse(r, "g2", &["0", "x1^2"]).unwrap());
    }

    #[test]
    fn missing_component_is_positioned() {
        let (line, col, msg) = err_at("vars x1 x2\ninput g1: x2\n");
        assert_eq!((line, col), (2, 13));
        assert!(msg.contains("expected 2 components"), "{msg}");
        let (line, col, _) = err_at("vars x1 x2\ninput g1: x2, \n");
        assert_eq!((line, col), (2, 14));
    }

    #[test]
    fn other_errors_are_positioned() {
        assert_eq!(err_at("vars x1 x1\ninput g: 1, 1\n").0, 1);
        assert_eq!(err_at("vars x1\ninput g: y\n").1, 10);
        assert_eq!(err_at("vars x1\ninput g: 1\noptions speed=3\n").0, 3);
        assert_eq!(err_at("input g: 1\n").0, 1);
        let (line, _, msg) = err_at("vars x1 x2\ninput g: sin(x1), 0\n");
        assert_eq!(line, 2);
        assert!(msg.contains("undeclared transcendental"), "{msg}");
    }

    #[test]
    fn unicycle_file() {
        let file = SystemFile::parse(UNICYCLE).unwrap();
        assert_eq!(file.options.l, Some(3));
        let model = file.load(None).unwrap();
        let imm = model.immersion.unwrap();
        let z = imm.map.target();
        assert_eq!(
            model.system.inputs()[1],
            VectorField::parse(z, "g2", &["0", "0", "1", "z5", "-z4"]).unwrap()
        );
    }

    #[test]
    fn identity_maps_are_checked() {
        let bad = UNICYCLE.replace("map z4", "map z1 = x2\nmap z4");
        assert_eq!(err_at(&bad).0, 6);
        let fine = UNICYCLE.replace("map z4", "map z1 = x1\nmap z4");
        assert_eq!(SystemFile::parse(&fine).unwrap(), SystemFile::parse(UNICYCLE).unwrap());
    }

    #[test]
    fn round_trip() {
        for text in [EX41, UNICYCLE, "vars a b\ndrift: a*b - 1/2, -(a - b)^3\ninput u: 1, 0\noptions order=lex mode=strong seed=9 max_depth=4\n"] {
            let file = SystemFile::parse(text).unwrap();
            let printed = file.to_string();
            let again = SystemFile::parse(&printed).unwrap();
            assert_eq!(file, again, "{printed}");
            assert_eq!(
                file.load(None).unwrap().system,
                again.load(None).unwrap().system
            );
        }
    }

    #[test]
    fn order_option_and_override() {
        let file = SystemFile::parse(&format!("{EX41}options order=lex\n")).unwrap();
        assert_eq!(file.load(None).unwrap().system.ring().order().kind(), OrderKind::Lex);
        assert_eq!(
            file.load(Some(OrderKind::DegLex)).unwrap().system.ring().order().kind(),
            OrderKind::DegLex
        );
    }
}
