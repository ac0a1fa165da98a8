//! Vector fields, Lie derivatives, Lie brackets and the bracket families
//! generated from a control-affine system.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::poly::{Polynomial, Rational, Ring};

/// Polynomial vector field with a bracket-word label such as `[g1,[g1,g2]]`.
#[derive(Clone, Debug)]
pub struct VectorField {
    components: Vec<Polynomial>,
    label: String,
}

impl PartialEq for VectorField {
    /// Fields compare by components; labels are provenance only.
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl Eq for VectorField {}

impl VectorField {
    pub fn new(ring: &Ring, label: impl Into<String>, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != ring.nvars() {
            return Err(Error::FieldArity {
                expected: ring.nvars(),
                got: components.len(),
            });
        }
        if components.iter().any(|c| c.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(VectorField {
            components,
            label: label.into(),
        })
    }

    /// Parses one expression per component.
    pub fn parse(ring: &Ring, label: &str, components: &[&str]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|c| ring.parse(c))
            .collect::<Result<Vec<_>>>()?;
        VectorField::new(ring, label, comps)
    }

    pub fn zero(ring: &Ring, label: impl Into<String>) -> Self {
        VectorField {
            components: vec![ring.zero(); ring.nvars()],
            label: label.into(),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.components[0].ring()
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Moves every component to `ring` (same variables, possibly another order).
    pub fn with_ring(&self, ring: &Ring) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|c| c.with_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField {
            components,
            label: self.label.clone(),
        })
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.zip(other, |a, b| a.try_add(b), format!("{}+{}", self.label, other.label))
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.zip(other, |a, b| a.try_sub(b), format!("{}-{}", self.label, other.label))
    }

    fn zip(
        &self,
        other: &VectorField,
        op: impl Fn(&Polynomial, &Polynomial) -> Result<Polynomial>,
        label: String,
    ) -> Result<VectorField> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch);
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| op(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField { components, label })
    }

    /// Pointwise product `p * self`.
    pub fn mul_poly(&self, p: &Polynomial) -> Result<VectorField> {
        let components = self
            .components
            .iter()
            .map(|c| p.try_mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField {
            components,
            label: format!("({p})*{}", self.label),
        })
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
            label: self.label.clone(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    pub fn to_vector(&self) -> Vector {
        Vector::from_polys(&self.components)
    }

    /// The field divided by the leading coefficient of its first nonzero
    /// component, so scalar multiples share one representative.
    pub fn projective_normal_form(&self) -> Vec<Polynomial> {
        match self.components.iter().find(|c| !c.is_zero()) {
            None => self.components.clone(),
            Some(c) => {
                let inv = c.leading_coeff().unwrap().recip();
                self.components.iter().map(|p| p.scale(&inv)).collect()
            }
        }
    }

    pub fn is_scalar_multiple_of(&self, other: &VectorField) -> bool {
        self.projective_normal_form() == other.projective_normal_form()
    }

    /// Component strings joined by `, `.
    pub fn render(&self) -> String {
        self.components
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ({})", self.label, self.render())
    }
}

/// `L_X p = sum_i dp/dx_i * X_i`.
pub fn lie_derivative(x: &VectorField, p: &Polynomial) -> Result<Polynomial> {
    if x.ring() != p.ring() {
        return Err(Error::RingMismatch);
    }
    let mut acc = p.ring().zero();
    for (i, xi) in x.components.iter().enumerate() {
        if xi.is_zero() || !p.uses_var(i) {
            continue;
        }
        acc = &acc + &(&p.partial_derivative(i) * xi);
    }
    Ok(acc)
}

/// `[X, Y]_i = L_X(Y_i) - L_Y(X_i)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch);
    }
    let components = (0..x.dim())
        .map(|i| Ok(lie_derivative(x, &y.components[i])? - lie_derivative(y, &x.components[i])?))
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorField {
        components,
        label: format!("[{},{}]", x.label, y.label),
    })
}

/// Which family of brackets is generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Generators `f, g_1..g_m`.
    Accessibility,
    /// Generators `g_1..g_m`, still closed under `ad_f`.
    Strong,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Accessibility => "accessibility",
            Mode::Strong => "strong",
        }
    }
}

/// Control-affine system `x' = f(x) + sum_i u_i g_i(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    ring: Ring,
    drift: VectorField,
    inputs: Vec<VectorField>,
}

impl SystemSpec {
    pub fn new(ring: &Ring, drift: VectorField, inputs: Vec<VectorField>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::NoInputs);
        }
        for field in std::iter::once(&drift).chain(&inputs) {
            if field.dim() != ring.nvars() {
                return Err(Error::FieldArity {
                    expected: ring.nvars(),
                    got: field.dim(),
                });
            }
            if field.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(SystemSpec {
            ring: ring.clone(),
            drift,
            inputs,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn drift(&self) -> &VectorField {
        &self.drift
    }

    pub fn inputs(&self) -> &[VectorField] {
        &self.inputs
    }

    pub fn is_driftless(&self) -> bool {
        self.drift.is_zero()
    }

    /// Fields used as bracketing operators: the drift unless it is zero,
    /// then the inputs.
    pub fn operators(&self) -> Vec<&VectorField> {
        let mut ops = Vec::with_capacity(self.inputs.len() + 1);
        if !self.drift.is_zero() {
            ops.push(&self.drift);
        }
        ops.extend(self.inputs.iter());
        ops
    }

    /// Depth-zero fields of the family in the given mode.
    pub fn seeds(&self, mode: Mode) -> Vec<VectorField> {
        match mode {
            Mode::Accessibility => self.operators().into_iter().cloned().collect(),
            Mode::Strong => self.inputs.clone(),
        }
    }

    /// The same system over another monomial order.
    pub fn with_ring(&self, ring: &Ring) -> Result<Self> {
        SystemSpec::new(
            ring,
            self.drift.with_ring(ring)?,
            self.inputs
                .iter()
                .map(|g| g.with_ring(ring))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    fn field_named(&self, name: &str) -> Option<&VectorField> {
        std::iter::once(&self.drift)
            .chain(&self.inputs)
            .find(|f| f.label == name)
    }

    /// Re-evaluates a bracket word such as `[g2,[g1,g2]]`.
    pub fn eval_label(&self, word: &str) -> Result<VectorField> {
        let word = word.trim();
        if let Some(inner) = word.strip_prefix('[').and_then(|w| w.strip_suffix(']')) {
            let mut depth = 0usize;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '[' => depth += 1,
                    ']' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        let x = self.eval_label(&inner[..i])?;
                        let y = self.eval_label(&inner[i + 1..])?;
                        return lie_bracket(&x, &y);
                    }
                    _ => {}
                }
            }
        }
        self.field_named(word)
            .cloned()
            .ok_or_else(|| Error::InvalidVariable(word.to_string()))
    }
}

/// Left-normed bracket family: every stored field and the depth of the
/// newest generation.
///
/// Depth counts bracketings, so depth 0 holds the generators themselves.
#[derive(Clone, Debug)]
pub struct BracketFamily {
    mode: Mode,
    depth: usize,
    fields: Vec<VectorField>,
    frontier_start: usize,
    seen: HashSet<Vec<Polynomial>>,
}

impl BracketFamily {
    pub fn new(sys: &SystemSpec, mode: Mode) -> Self {
        let mut fam = BracketFamily {
            mode,
            depth: 0,
            fields: Vec::new(),
            frontier_start: 0,
            seen: HashSet::new(),
        };
        for seed in sys.seeds(mode) {
            fam.push(seed);
        }
        fam
    }

    fn push(&mut self, field: VectorField) -> bool {
        if field.is_zero() {
            return false;
        }
        if !self.seen.insert(field.projective_normal_form()) {
            return false;
        }
        self.fields.push(field);
        true
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    /// Fields added at the current depth.
    pub fn frontier(&self) -> &[VectorField] {
        &self.fields[self.frontier_start..]
    }

    /// Applies every operator `ad_X` to the current frontier. Zero brackets
    /// and scalar multiples of stored fields are dropped.
    pub fn extend(&self, sys: &SystemSpec) -> BracketFamily {
        let mut next = self.clone();
        next.depth += 1;
        next.frontier_start = next.fields.len();
        for x in sys.operators() {
            for h in self.frontier() {
                let b = lie_bracket(x, h).expect("family and system share a ring");
                next.push(b);
            }
        }
        next
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex41() -> SystemSpec {
        let r = Ring::with_names(["x1", "x2"]).unwrap();
        SystemSpec::new(
            &r,
            VectorField::zero(&r, "f"),
            vec![
                VectorField::parse(&r, "g1", &["x2", "0"]).unwrap(),
                VectorField::parse(&r, "g2", &["0", "x1^2"]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn derivative_examples() {
        let sys = ex41();
        let r = sys.ring();
        let g = sys.inputs();
        assert_eq!(lie_derivative(&g[0], &r.parse("x1*x2").unwrap()).unwrap(), r.parse("x2^2").unwrap());
        assert_eq!(
            lie_derivative(&g[1], &r.parse("x2^3").unwrap()).unwrap(),
            r.parse("3*x1^2*x2^2").unwrap()
        );
        assert!(lie_derivative(&g[1], &r.parse("7").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let sys = ex41();
        let g = sys.inputs();
        let b = lie_bracket(&g[0], &g[1]).unwrap();
        assert_eq!(b, VectorField::parse(sys.ring(), "", &["-x1^2", "2*x1*x2"]).unwrap());
        assert_eq!(b.label(), "[g1,g2]");
        assert!(lie_bracket(&g[0], &g[0]).unwrap().is_zero());
        assert_eq!(sys.eval_label("[g1,g2]").unwrap(), b);
    }

    #[test]
    fn family_growth() {
        let sys = ex41();
        let r = sys.ring();
        let f0 = BracketFamily::new(&sys, Mode::Accessibility);
        assert_eq!(f0.len(), 2);
        let f1 = f0.extend(&sys);
        assert_eq!(f1.frontier().len(), 1);
        assert_eq!(f1.frontier()[0], VectorField::parse(r, "", &["-x1^2", "2*x1*x2"]).unwrap());
        let f2 = f1.extend(&sys);
        let gained: Vec<_> = f2.frontier().to_vec();
        assert_eq!(
            gained,
            vec![
                VectorField::parse(r, "", &["-4*x1*x2", "2*x2^2"]).unwrap(),
                VectorField::parse(r, "", &["0", "4*x1^3"]).unwrap(),
            ]
        );
        for f in f2.fields() {
            assert_eq!(&sys.eval_label(f.label()).unwrap(), f);
        }
    }

    #[test]
    fn unicycle_brackets() {
        let r = Ring::with_names(["z1", "z2", "z3", "z4", "z5"]).unwrap();
        let g1 = VectorField::parse(&r, "g1", &["z5", "z4", "0", "0", "0"]).unwrap();
        let g2 = VectorField::parse(&r, "g2", &["0", "0", "1", "z5", "-z4"]).unwrap();
        let b = lie_bracket(&g1, &g2).unwrap();
        assert_eq!(b, VectorField::parse(&r, "", &["z4", "-z5", "0", "0", "0"]).unwrap());
        assert!(lie_bracket(&g1, &b).unwrap().is_zero());
        assert_eq!(lie_bracket(&g2, &b).unwrap(), g1);
        let sys = SystemSpec::new(&r, VectorField::zero(&r, "f"), vec![g1, g2]).unwrap();
        let fam = BracketFamily::new(&sys, Mode::Accessibility).extend(&sys).extend(&sys);
        assert_eq!(fam.len(), 3);
        assert!(fam.frontier().is_empty());
    }

    #[test]
    fn arity_is_checked() {
        let r = Ring::with_names(["x1", "x2"]).unwrap();
        assert_eq!(
            VectorField::parse(&r, "g", &["x1"]),
            Err(Error::FieldArity { expected: 2, got: 1 })
        );
        assert_eq!(
            SystemSpec::new(&r, VectorField::zero(&r, "f"), vec![]),
            Err(Error::NoInputs)
        );
    }
}
