//! Polynomial immersion of analytic systems.
//!
//! An [`ImmersionMap`] `z = T(x)` names every transcendental subexpression
//! of a system (`sin v`, `cos v`, `1/p`) by a companion variable. The first
//! `n` entries are the identity, so `z_i = x_i` for every source variable.
//! Pushforwards are derived with the chain rule on companions, and checked
//! by an independent route through symbolic differentiation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lie::{SystemSpec, VectorField};
use crate::poly::{ratio, Expr, Func, Polynomial, Rational, Ring};
use crate::sampling;

/// What a companion variable stands for, with arguments already rewritten
/// into the target ring.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Identity,
    Polynomial(Polynomial),
    Sin(Polynomial),
    Cos(Polynomial),
    Reciprocal(Polynomial),
}

/// A vector field of an analytic system, one expression per component.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticField {
    pub label: String,
    pub components: Vec<Expr>,
}

/// `x' = f(x) + sum u_i g_i(x)` with analytic right-hand sides.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticSystem {
    pub ring: Ring,
    /// `None` for a driftless system.
    pub drift: Option<AnalyticField>,
    pub inputs: Vec<AnalyticField>,
}

impl AnalyticSystem {
    /// Fields in the order `f, g_1, ..., g_m`, the drift defaulting to zero.
    pub fn fields(&self) -> Vec<AnalyticField> {
        let drift = self.drift.clone().unwrap_or_else(|| AnalyticField {
            label: "f".into(),
            components: vec![Expr::num(0); self.ring.nvars()],
        });
        std::iter::once(drift).chain(self.inputs.iter().cloned()).collect()
    }

    /// The system itself when every component is polynomial.
    pub fn to_polynomial(&self) -> Result<SystemSpec> {
        let field = |f: &AnalyticField| -> Result<VectorField> {
            let comps = f
                .components
                .iter()
                .map(|c| c.to_polynomial(&self.ring))
                .collect::<Result<Vec<_>>>()?;
            VectorField::new(&self.ring, f.label.clone(), comps)
        };
        let fields = self.fields();
        SystemSpec::new(
            &self.ring,
            field(&fields[0])?,
            fields[1..].iter().map(field).collect::<Result<Vec<_>>>()?,
        )
    }
}

#[derive(Clone, Debug)]
pub struct ImmersionMap {
    source: Ring,
    target: Ring,
    expressions: Vec<Expr>,
    entries: Vec<Entry>,
    relations: Ideal,
    declared: Vec<Polynomial>,
}

/// Whether a missing companion is reported as undeclared (it occurs in the
/// input) or as a closure violation (differentiation produced it).
#[derive(Clone, Copy)]
enum Missing {
    Undeclared,
    Closure,
}

impl Missing {
    fn error(self, what: String) -> Error {
        match self {
            Missing::Undeclared => Error::UndeclaredTranscendental(what),
            Missing::Closure => Error::ClosureViolation(what),
        }
    }
}

impl ImmersionMap {
    /// Builds the map `z_j = T_j(x)`. Relations implied by the entries are
    /// generated here (`s^2 + c^2 - 1` for every sin/cos pair, `r p - 1` for
    /// every reciprocal, `z_j - p` for polynomial entries); `declared`
    /// relations must follow from them.
    pub fn new(source: &Ring, target: &Ring, expressions: Vec<Expr>, declared: Vec<Polynomial>) -> Result<Self> {
        let n = source.nvars();
        let nt = target.nvars();
        let invalid = |msg: String| Err(Error::InvalidImmersion(msg));
        if expressions.len() != nt {
            return invalid(format!("{} entries for {nt} target variables", expressions.len()));
        }
        if nt < n {
            return invalid(format!("{nt} target variables cannot immerse {n} source variables"));
        }
        for (i, e) in expressions.iter().enumerate().take(n) {
            if *e != Expr::Var(i) {
                return invalid(format!(
                    "entry {} must be the source variable {}, found {}",
                    target.vars().name(i),
                    source.vars().name(i),
                    e.render(source.vars())
                ));
            }
        }
        let mut map = ImmersionMap {
            source: source.clone(),
            target: target.clone(),
            expressions,
            entries: vec![Entry::Identity; nt],
            relations: Ideal::zero(target),
            declared: Vec::new(),
        };
        // arguments may mention other companions, so resolve in passes
        let mut pending: Vec<usize> = (n..nt).collect();
        while !pending.is_empty() {
            let mut left = Vec::new();
            for &j in &pending {
                match map.classify(j) {
                    Ok(entry) => map.entries[j] = entry,
                    Err(Error::UndeclaredTranscendental(_)) => left.push(j),
                    Err(e) => return Err(e),
                }
            }
            if left.len() == pending.len() {
                let j = left[0];
                return invalid(format!(
                    "entry {} = {} refers to subexpressions with no companion variable",
                    target.vars().name(j),
                    map.expressions[j].render(source.vars())
                ));
            }
            pending = left;
        }
        for a in n..nt {
            for b in n..a {
                if map.entries[a] == map.entries[b] {
                    return invalid(format!(
                        "{} and {} name the same expression",
                        target.vars().name(b),
                        target.vars().name(a)
                    ));
                }
            }
        }
        map.relations = Ideal::new(target, map.implied_relations());
        for r in &declared {
            if r.ring() != target {
                return Err(Error::RingMismatch);
            }
            if !map.relations.member(r) {
                return invalid(format!("relation {r} does not vanish on the image of the map"));
            }
        }
        map.declared = declared;
        Ok(map)
    }

    /// The identity immersion of an `n`-variable ring.
    pub fn identity(source: &Ring) -> Self {
        let exprs = (0..source.nvars()).map(Expr::Var).collect();
        ImmersionMap::new(source, source, exprs, Vec::new()).expect("identity is valid")
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn expressions(&self) -> &[Expr] {
        &self.expressions
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Relation ideal `R`, vanishing on the image of the map.
    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn declared_relations(&self) -> &[Polynomial] {
        &self.declared
    }

    fn classify(&self, j: usize) -> Result<Entry> {
        let e = &self.expressions[j];
        let name = self.target.vars().name(j);
        Ok(match e {
            Expr::Call(Func::Sin, a) => Entry::Sin(self.rewrite_as(a, Missing::Undeclared)?),
            Expr::Call(Func::Cos, a) => Entry::Cos(self.rewrite_as(a, Missing::Undeclared)?),
            Expr::Div(num, den) if den.constant_value().is_none() => {
                if num.constant_value() != Some(Rational::one()) {
                    return Err(Error::InvalidImmersion(format!("entry {name} must be 1/(p) with numerator 1")));
                }
                Entry::Reciprocal(self.rewrite_as(den, Missing::Undeclared)?)
            }
            _ if e.is_polynomial() => Entry::Polynomial(self.rewrite_as(e, Missing::Undeclared)?),
            _ => {
                return Err(Error::InvalidImmersion(format!(
                    "entry {name} = {} is not a polynomial, sin(v), cos(v) or 1/(p)",
                    e.render(self.source.vars())
                )))
            }
        })
    }

    fn implied_relations(&self) -> Vec<Polynomial> {
        let z = |j: usize| self.target.var(j);
        let mut out = Vec::new();
        for (j, entry) in self.entries.iter().enumerate() {
            match entry {
                Entry::Identity => {}
                Entry::Polynomial(p) => out.push(&z(j) - p),
                Entry::Reciprocal(p) => out.push(&(&z(j) * p) - &self.target.one()),
                Entry::Sin(a) => {
                    if let Some(c) = self.find(|e| *e == Entry::Cos(a.clone())) {
                        out.push(&(&(&z(j) * &z(j)) + &(&z(c) * &z(c))) - &self.target.one());
                    }
                }
                Entry::Cos(_) => {}
            }
        }
        out
    }

    fn find(&self, pred: impl Fn(&Entry) -> bool) -> Option<usize> {
        // unresolved slots hold `Identity` while the map is built
        self.entries.iter().position(|e| *e != Entry::Identity && pred(e))
    }

    /// Rewrites a source expression into a polynomial over the target ring.
    pub fn rewrite(&self, e: &Expr) -> Result<Polynomial> {
        self.rewrite_as(e, Missing::Undeclared)
    }

    fn rewrite_as(&self, e: &Expr, missing: Missing) -> Result<Polynomial> {
        let t = &self.target;
        Ok(match e {
            Expr::Num(c) => Polynomial::constant(t, c.clone()),
            Expr::Var(i) => t.var(*i),
            Expr::Add(a, b) => self.rewrite_as(a, missing)? + self.rewrite_as(b, missing)?,
            Expr::Sub(a, b) => self.rewrite_as(a, missing)? - self.rewrite_as(b, missing)?,
            Expr::Mul(a, b) => self.rewrite_as(a, missing)? * self.rewrite_as(b, missing)?,
            Expr::Neg(a) => -self.rewrite_as(a, missing)?,
            Expr::Pow(a, k) => self.rewrite_as(a, missing)?.pow(*k),
            Expr::Div(a, b) => self.rewrite_as(a, missing)? * self.reciprocal(b, missing)?,
            Expr::Call(func, a) => {
                let arg = self.rewrite_as(a, missing)?;
                if arg.is_zero() {
                    return Ok(match func {
                        Func::Sin => t.zero(),
                        Func::Cos => t.one(),
                    });
                }
                let want = match func {
                    Func::Sin => Entry::Sin(arg),
                    Func::Cos => Entry::Cos(arg),
                };
                match self.find(|x| *x == want) {
                    Some(j) => t.var(j),
                    None => return Err(missing.error(e.render(self.source.vars()))),
                }
            }
        })
    }

    /// `1/b` as `c * z_r^k` when `b = c^-1 p^k` for a declared reciprocal `1/p`.
    fn reciprocal(&self, b: &Expr, missing: Missing) -> Result<Polynomial> {
        let t = &self.target;
        let den = self.rewrite_as(b, missing)?;
        if let Some(c) = den.constant_value() {
            if c.is_zero() {
                return Err(Error::InvalidImmersion("division by zero".into()));
            }
            return Ok(Polynomial::constant(t, c.recip()));
        }
        let deg = den.total_degree().unwrap_or(0);
        for (j, entry) in self.entries.iter().enumerate() {
            let Entry::Reciprocal(p) = entry else { continue };
            let pd = p.total_degree().unwrap_or(0);
            if pd == 0 || deg % pd != 0 {
                continue;
            }
            let pk = p.pow(deg / pd);
            let scale = den.leading_coeff().unwrap() / pk.leading_coeff().unwrap();
            if pk.scale(&scale) == den {
                return Ok(t.var(j).pow(deg / pd).scale(&scale.recip()));
            }
        }
        Err(missing.error(format!("1/({})", b.render(self.source.vars()))))
    }

    /// `L_h T_j` rewritten, by the chain rule through companion variables.
    fn chain_rule(&self, e: &Expr, h: &[Polynomial]) -> Result<Polynomial> {
        let t = &self.target;
        let rw = |x: &Expr| self.rewrite_as(x, Missing::Closure);
        Ok(match e {
            Expr::Num(_) => t.zero(),
            Expr::Var(i) => h[*i].clone(),
            Expr::Add(a, b) => self.chain_rule(a, h)? + self.chain_rule(b, h)?,
            Expr::Sub(a, b) => self.chain_rule(a, h)? - self.chain_rule(b, h)?,
            Expr::Mul(a, b) => self.chain_rule(a, h)? * rw(b)? + rw(a)? * self.chain_rule(b, h)?,
            Expr::Neg(a) => -self.chain_rule(a, h)?,
            Expr::Pow(_, 0) => t.zero(),
            Expr::Pow(a, k) => {
                rw(a)?.pow(k - 1).scale(&Rational::from_integer((*k).into())) * self.chain_rule(a, h)?
            }
            Expr::Div(a, b) => {
                // (a/b)' = a' (1/b) - a (1/b)^2 b'
                let r = self.reciprocal(b, Missing::Closure)?;
                self.chain_rule(a, h)? * &r - rw(a)? * r.pow(2) * self.chain_rule(b, h)?
            }
            Expr::Call(Func::Sin, a) => rw(&Expr::Call(Func::Cos, a.clone()))? * self.chain_rule(a, h)?,
            Expr::Call(Func::Cos, a) => -(rw(&Expr::Call(Func::Sin, a.clone()))? * self.chain_rule(a, h)?),
        })
    }

    /// Pushforward of one source field through symbolic differentiation of
    /// the entries: component `j` is the rewrite of `sum_i dT_j/dx_i h_i`.
    pub fn pushforward(&self, field: &AnalyticField) -> Result<Vec<Polynomial>> {
        self.check_arity(field)?;
        self.expressions
            .iter()
            .map(|tj| {
                let mut acc = self.target.zero();
                for (i, hi) in field.components.iter().enumerate() {
                    let term = Expr::Mul(Box::new(tj.derivative(i)), Box::new(hi.clone()));
                    acc = acc + self.rewrite_as(&term, Missing::Closure)?;
                }
                Ok(acc)
            })
            .collect()
    }

    fn check_arity(&self, field: &AnalyticField) -> Result<()> {
        if field.components.len() != self.source.nvars() {
            return Err(Error::FieldArity {
                expected: self.source.nvars(),
                got: field.components.len(),
            });
        }
        Ok(())
    }

    /// Reduces modulo the relation ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.relations.normal_form(p)
    }

    /// A rational point of `V(R)`: source coordinates and sin/cos pairs are
    /// chosen freely (pairs on the unit circle), the other companions follow.
    pub fn sample_relation_point(&self, rng: &mut ChaCha8Rng) -> Option<Vec<Rational>> {
        let nt = self.target.nvars();
        let mut pt: Vec<Option<Rational>> = vec![None; nt];
        for slot in pt.iter_mut().take(self.source.nvars()) {
            *slot = Some(if rng.gen_bool(0.3) { Rational::zero() } else { sampling::small_rational(rng) });
        }
        for (j, entry) in self.entries.iter().enumerate() {
            let Entry::Sin(a) = entry else { continue };
            let (s, c) = circle_point(rng);
            pt[j] = Some(s);
            if let Some(k) = self.find(|e| *e == Entry::Cos(a.clone())) {
                pt[k] = Some(c);
            }
        }
        for (j, entry) in self.entries.iter().enumerate() {
            if matches!(entry, Entry::Cos(_)) && pt[j].is_none() {
                pt[j] = Some(circle_point(rng).1);
            }
        }
        // polynomial and reciprocal companions, in dependency order
        loop {
            let mut progress = false;
            for (j, entry) in self.entries.iter().enumerate() {
                if pt[j].is_some() {
                    continue;
                }
                let p = match entry {
                    Entry::Polynomial(p) | Entry::Reciprocal(p) => p,
                    _ => continue,
                };
                let vals: Vec<Option<Rational>> = pt.clone();
                let rest = p.evaluate_partial(&vals);
                let Some(v) = rest.constant_value() else { continue };
                pt[j] = Some(match entry {
                    Entry::Reciprocal(_) if v.is_zero() => return None,
                    Entry::Reciprocal(_) => v.recip(),
                    _ => v,
                });
                progress = true;
            }
            if pt.iter().all(Option::is_some) {
                return Some(pt.into_iter().map(Option::unwrap).collect());
            }
            if !progress {
                return None;
            }
        }
    }
}

fn circle_point(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
    const AXES: [(i64, i64); 4] = [(0, 1), (0, -1), (1, 0), (-1, 0)];
    const TRIPLES: [(i64, i64, i64); 4] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)];
    if rng.gen_bool(0.4) {
        let (s, c) = *AXES.choose(rng).unwrap();
        return (ratio(s, 1), ratio(c, 1));
    }
    let (a, b, h) = *TRIPLES.choose(rng).unwrap();
    let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
    let sa = if rng.gen_bool(0.5) { 1 } else { -1 };
    let sb = if rng.gen_bool(0.5) { 1 } else { -1 };
    (ratio(sa * a, h), ratio(sb * b, h))
}

/// The polynomial system obtained from an analytic one, with its map.
#[derive(Clone, Debug)]
pub struct ImmersedSystem {
    pub source: AnalyticSystem,
    pub map: ImmersionMap,
    pub system: SystemSpec,
}

/// Pushforwards `f̂, ĝ_i` by the chain rule on companion variables.
pub fn derive_immersed(sys: &AnalyticSystem, map: &ImmersionMap) -> Result<ImmersedSystem> {
    if sys.ring != *map.source() {
        return Err(Error::RingMismatch);
    }
    let target = map.target();
    // every input expression is rewritten before any derivative is taken,
    // so undeclared subexpressions are reported ahead of closure violations
    let source = sys.fields();
    let mut rewritten = Vec::with_capacity(source.len());
    for field in &source {
        map.check_arity(field)?;
        let h = field
            .components
            .iter()
            .map(|c| map.rewrite(c))
            .collect::<Result<Vec<_>>>()?;
        rewritten.push(h);
    }
    let mut fields = Vec::new();
    for (field, h) in source.iter().zip(&rewritten) {
        let comps = map
            .expressions()
            .iter()
            .map(|tj| map.chain_rule(tj, h))
            .collect::<Result<Vec<_>>>()?;
        fields.push(VectorField::new(target, field.label.clone(), comps)?);
    }
    let drift = fields.remove(0);
    Ok(ImmersedSystem {
        source: sys.clone(),
        map: map.clone(),
        system: SystemSpec::new(target, drift, fields)?,
    })
}

/// First component where a claimed pushforward disagrees with the source.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub field: String,
    /// Target variable whose derivative disagrees.
    pub component: String,
    /// Normal form of the difference modulo the relations, or the reason
    /// the pushforward could not be formed.
    pub residue: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub holds: bool,
    pub witness: Option<Mismatch>,
}

/// Checks `L_h T_j = ĥ_j(T)` modulo the relations for `h = f, g_1, ...`
/// against the claimed polynomial system.
pub fn verify_immersion(sys: &AnalyticSystem, map: &ImmersionMap, claimed: &SystemSpec) -> Verification {
    let fail = |field: &str, component: &str, residue: String| Verification {
        holds: false,
        witness: Some(Mismatch {
            field: field.into(),
            component: component.into(),
            residue,
        }),
    };
    if claimed.ring() != map.target() {
        return fail("", "", "claimed system lives over another ring".into());
    }
    let fields = sys.fields();
    let targets: Vec<&VectorField> = std::iter::once(claimed.drift()).chain(claimed.inputs()).collect();
    if fields.len() != targets.len() {
        return fail(
            "",
            "",
            format!("{} source fields against {} claimed", fields.len(), targets.len()),
        );
    }
    for (h, hat) in fields.iter().zip(targets) {
        let push = match map.pushforward(h) {
            Ok(p) => p,
            Err(e) => return fail(&h.label, "", e.to_string()),
        };
        for (j, (p, q)) in push.iter().zip(hat.components()).enumerate() {
            let r = map.normal_form(&(p - q));
            if !r.is_zero() {
                return fail(&h.label, map.target().vars().name(j), r.to_string());
            }
        }
    }
    Verification {
        holds: true,
        witness: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grade {
    AlgebraicProof,
    Sampled,
}

impl Grade {
    pub fn name(self) -> &'static str {
        match self {
            Grade::AlgebraicProof => "algebraic proof",
            Grade::Sampled => "sampled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Emptiness {
    Empty { grade: Grade, certificate: String },
    NonEmpty { witness: Vec<String> },
}

#[derive(Clone, Debug)]
pub struct PullBack {
    /// `singular + R`, defining the singular set on the image of the map.
    pub ideal: Ideal,
    pub emptiness: Emptiness,
}

/// Sampling attempts before emptiness is reported at grade `Sampled`.
const PULL_BACK_SAMPLES: usize = 2000;

/// Intersects a singular set of the immersed system (rank threshold = source
/// dimension) with the relation variety.
pub fn pull_back_singular(map: &ImmersionMap, singular: &Ideal, seed: u64) -> PullBack {
    let ideal = singular.sum(map.relations()).reduced();
    if !ideal.is_proper() {
        return PullBack {
            ideal,
            emptiness: Emptiness::Empty {
                grade: Grade::AlgebraicProof,
                certificate: "1 lies in the ideal".into(),
            },
        };
    }
    if let Some(g) = ideal.groebner_basis().iter().find(|g| positive_definite(g)) {
        let certificate = format!("{g} is positive everywhere");
        return PullBack {
            ideal,
            emptiness: Emptiness::Empty {
                grade: Grade::AlgebraicProof,
                certificate,
            },
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PULL_BACK_SAMPLES {
        let Some(pt) = map.sample_relation_point(&mut rng) else { continue };
        if ideal.vanishes_at(&pt).expect("point length") {
            return PullBack {
                ideal,
                emptiness: Emptiness::NonEmpty {
                    witness: pt.iter().map(ToString::to_string).collect(),
                },
            };
        }
    }
    PullBack {
        ideal,
        emptiness: Emptiness::Empty {
            grade: Grade::Sampled,
            certificate: format!("no point of the relation variety among {PULL_BACK_SAMPLES} samples"),
        },
    }
}

/// Every monomial is a square with a positive coefficient, and the constant
/// term is positive.
fn positive_definite(p: &Polynomial) -> bool {
    let n = p.ring().nvars();
    p.constant_value().is_none()
        && p.coefficient(&crate::poly::Monomial::one()).is_positive()
        && p
            .terms()
            .iter()
            .all(|(m, c)| c.is_positive() && (0..n).all(|i| m.exponent(i) % 2 == 0))
}
