//! Polynomial ideals: membership, equality, radicals over the reals for a
//! few certified classes, Lie-derivative invariance and invariant closure.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{Groebner, Vector};
use crate::lie::{lie_derivative, VectorField};
use crate::poly::{self, Monomial, MonomialOrder, OrderKind, Polynomial, Rational, Ring, VarTable};

/// Finitely generated ideal with a lazily computed reduced Gröbner basis.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GbCache>>,
}

struct GbCache {
    state: Groebner,
    reduced: Vec<Polynomial>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}

impl PartialEq for Ideal {
    /// Equality of ideals, not of generator lists.
    fn eq(&self, other: &Self) -> bool {
        ideal_equal(self, other)
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens))
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal::new(ring, [])
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal::new(ring, [ring.one()])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn cache(&self) -> &GbCache {
        self.gb.get_or_init(|| {
            // small generators first, completing after each, so that
            // redundant ones reduce to zero before they spawn pairs
            let mut order: Vec<&Polynomial> = self.gens.iter().collect();
            order.sort_by_key(|g| (g.total_degree(), g.len()));
            let mut state = Groebner::new(&self.ring, 1);
            for g in order {
                if state.add(Vector::from_poly(g)) {
                    state.complete();
                }
            }
            let reduced = state.reduced().iter().map(|v| v.to_poly(&self.ring)).collect();
            Arc::new(GbCache { state, reduced })
        })
    }

    /// Reduced Gröbner basis under the ring's order; `[1]` iff improper.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.cache().reduced
    }

    /// The same ideal generated by its reduced Gröbner basis.
    pub fn reduced(&self) -> Ideal {
        Ideal::new(&self.ring, self.groebner_basis().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.groebner_basis().first().is_some_and(Polynomial::is_constant)
    }

    pub fn member(&self, p: &Polynomial) -> bool {
        assert!(p.ring() == &self.ring, "polynomial and ideal over different rings");
        p.is_zero() || self.cache().state.contains(&Vector::from_poly(p))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.cache().state.normal_form(&Vector::from_poly(p)).to_poly(&self.ring)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.member(g))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert!(self.ring == other.ring, "ideals over different rings");
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(Polynomial::is_monomial)
    }

    /// Do all generators vanish at `point`?
    pub fn vanishes_at(&self, point: &[Rational]) -> Result<bool> {
        for g in &self.gens {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Radical of a monomial ideal: squarefree parts of the generators.
    pub fn radical_monomial(&self) -> Result<Ideal> {
        let mut out = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            if !g.is_monomial() {
                return Err(Error::NotMonomial(g.to_string()));
            }
            let m = g.leading_monomial().unwrap().squarefree();
            out.push(Polynomial::term(&self.ring, m, Rational::one()));
        }
        Ok(minimal_monomial_ideal(&self.ring, out))
    }

    /// Real radical for the certified classes, or the reason it is out of reach.
    pub fn real_radical_restricted(&self) -> RealRadical {
        if self.gens.is_empty() {
            return RealRadical::Computed(self.clone());
        }
        if self.gens.iter().any(Polynomial::is_constant) {
            return RealRadical::Computed(Ideal::unit(&self.ring));
        }
        if self.is_monomial() {
            return RealRadical::Computed(self.radical_monomial().unwrap());
        }
        if let [p] = self.gens.as_slice() {
            return principal_real_radical(p);
        }
        // a common factor h splits the set: V(hK) = V(h) ∪ V(K)
        let h = self.gens.iter().fold(self.ring.zero(), |acc, g| poly::gcd(&acc, g));
        if !h.is_constant() {
            let rest = Ideal::new(
                &self.ring,
                self.gens.iter().map(|g| poly::exact_div(g, &h).expect("gcd divides")),
            );
            let RealRadical::Computed(rh) = principal_real_radical(&h) else {
                return principal_real_radical(&h);
            };
            if rest.radical_member(&h) {
                return RealRadical::Computed(rh);
            }
            return match rest.real_radical_restricted() {
                RealRadical::Computed(rk) => RealRadical::Computed(rh.intersection(&rk).reduced()),
                unsupported => unsupported,
            };
        }
        // each generator separately, then certify the sum
        let mut parts = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            match principal_real_radical(g) {
                RealRadical::Computed(j) => parts.push(j),
                unsupported => return unsupported,
            }
        }
        let mut sum = Ideal::zero(&self.ring);
        for p in &parts {
            sum = sum.sum(p);
        }
        let sum = sum.reduced();
        match certify_real_radical(&sum) {
            Ok(()) => RealRadical::Computed(sum),
            Err(reason) => RealRadical::Unsupported(reason),
        }
    }

    /// Is `L_X g` in the ideal for every generator `g` and field `X`?
    pub fn is_invariant(&self, fields: &[&VectorField]) -> Invariance {
        for g in &self.gens {
            for x in fields {
                let d = lie_derivative(x, g).expect("field and ideal share a ring");
                if !self.member(&d) {
                    return Invariance::Witness {
                        generator: g.clone(),
                        field: x.label().to_string(),
                        derivative: d,
                    };
                }
            }
        }
        Invariance::Invariant
    }

    /// Smallest ideal containing `self` and closed under every `L_X`,
    /// built breadth-first: each round adds the derivatives of the previous
    /// round's new generators that are not in the previous ideal.
    pub fn invariant_closure(&self, fields: &[&VectorField], max_rounds: usize) -> Closure {
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in &self.gens {
            let g = g.monic();
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        let mut current = Ideal::new(&self.ring, gens.clone());
        let mut frontier = gens.clone();
        let mut rounds = Vec::new();
        let mut capped = false;
        loop {
            let mut added: Vec<Polynomial> = Vec::new();
            for p in &frontier {
                for x in fields {
                    let d = lie_derivative(x, p).expect("field and ideal share a ring");
                    if current.member(&d) {
                        continue;
                    }
                    let d = d.monic();
                    if !added.contains(&d) {
                        added.push(d);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            if rounds.len() == max_rounds {
                capped = true;
                break;
            }
            gens.extend(added.iter().cloned());
            current = Ideal::new(&self.ring, gens.clone());
            if !current.is_proper() {
                rounds.push(added);
                break;
            }
            frontier = added.clone();
            rounds.push(added);
        }
        Closure {
            ideal: current,
            rounds,
            capped,
        }
    }

    /// `self ∩ other`, by eliminating `t` from `t*self + (1 - t)*other`.
    pub fn intersection(&self, other: &Ideal) -> Ideal {
        assert!(self.ring == other.ring, "ideals over different rings");
        let ring = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(ring);
        }
        if !self.is_proper() {
            return other.clone();
        }
        if !other.is_proper() {
            return self.clone();
        }
        if self.is_monomial() && other.is_monomial() {
            let mut out = Vec::new();
            for a in &self.gens {
                for b in &other.gens {
                    let m = a.leading_monomial().unwrap().lcm(b.leading_monomial().unwrap());
                    out.push(Polynomial::term(ring, m, Rational::one()));
                }
            }
            return minimal_monomial_ideal(ring, out);
        }
        let n = ring.nvars();
        let (big, shift) = with_fresh_var(ring, OrderKind::Lex);
        let t = big.var(0);
        let one_minus_t = &big.one() - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.rename_vars(&big, &shift));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.rename_vars(&big, &shift));
        }
        let elim = Ideal::new(&big, gens);
        let back: Vec<Polynomial> = elim
            .groebner_basis()
            .iter()
            .filter(|g| !g.uses_var(0))
            .map(|g| {
                let mut images = vec![ring.zero()];
                images.extend((0..n).map(|i| ring.var(i)));
                g.compose(ring, &images)
            })
            .collect();
        Ideal::new(ring, back).reduced()
    }

    /// Whether some power of `p` lies in the ideal: `1 ∈ I + ⟨1 - t p⟩`.
    pub fn radical_member(&self, p: &Polynomial) -> bool {
        assert!(self.ring == *p.ring(), "ideal and polynomial over different rings");
        if p.is_zero() || !self.is_proper() {
            return true;
        }
        let (big, shift) = with_fresh_var(&self.ring, OrderKind::DegRevLex);
        let t = big.var(0);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.rename_vars(&big, &shift)).collect();
        gens.push(&big.one() - &(&t * &p.rename_vars(&big, &shift)));
        !Ideal::new(&big, gens).is_proper()
    }

    /// Smallest `m ≤ max_m` with `r^(2m)` in the ideal.
    pub fn even_power_certificate(&self, r: &Polynomial, max_m: u32) -> Option<u32> {
        let sq = r * r;
        let mut pow = sq.clone();
        for m in 1..=max_m {
            if self.member(&pow) {
                return Some(m);
            }
            pow = &pow * &sq;
        }
        None
    }
}

/// Equal radicals, hence equal complex (and real) zero sets: every
/// generator of each ideal has a power in the other.
pub fn radical_equal(a: &Ideal, b: &Ideal) -> bool {
    assert!(a.ring == b.ring, "ideals over different rings");
    a.gens.iter().all(|g| b.radical_member(g)) && b.gens.iter().all(|g| a.radical_member(g))
}

/// `ring` with a fresh leading variable `t`, and the index map into it.
fn with_fresh_var(ring: &Ring, kind: OrderKind) -> (Ring, Vec<usize>) {
    let mut name = String::from("t");
    while ring.vars().index_of(&name).is_some() {
        name.push('t');
    }
    let mut names = vec![name];
    names.extend(ring.vars().names().iter().cloned());
    let big = Ring::new(VarTable::new(names).expect("fresh variable name"), MonomialOrder::new(kind));
    (big, (1..=ring.nvars()).collect())
}

/// Two ideals are equal iff their reduced Gröbner bases coincide.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> bool {
    assert!(a.ring == b.ring, "ideals over different rings");
    a.groebner_basis() == b.groebner_basis()
}

fn minimal_monomial_ideal(ring: &Ring, mut gens: Vec<Polynomial>) -> Ideal {
    gens.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    gens.dedup();
    let lms: Vec<Monomial> = gens.iter().map(|g| *g.leading_monomial().unwrap()).collect();
    let keep = (0..gens.len())
        .filter(|&i| !(0..gens.len()).any(|j| j != i && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i)))
        .map(|i| gens[i].clone());
    Ideal::new(ring, keep.collect::<Vec<_>>())
}

/// Outcome of the restricted real radical.
#[derive(Clone, Debug)]
pub enum RealRadical {
    Computed(Ideal),
    /// Not a failure: the caller routes to invariant closure or the module bound.
    Unsupported(String),
}

impl RealRadical {
    pub fn ideal(&self) -> Option<&Ideal> {
        match self {
            RealRadical::Computed(i) => Some(i),
            RealRadical::Unsupported(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Invariance {
    Invariant,
    Witness {
        generator: Polynomial,
        field: String,
        derivative: Polynomial,
    },
}

impl Invariance {
    pub fn holds(&self) -> bool {
        matches!(self, Invariance::Invariant)
    }
}

/// Result of [`Ideal::invariant_closure`]; `rounds[k]` lists the generators
/// added in enlargement round `k + 1`.
#[derive(Clone, Debug)]
pub struct Closure {
    pub ideal: Ideal,
    pub rounds: Vec<Vec<Polynomial>>,
    pub capped: bool,
}

/// Real radical of a principal ideal, through its coprime squarefree pieces.
fn principal_real_radical(p: &Polynomial) -> RealRadical {
    let ring = p.ring();
    if p.is_constant() {
        return RealRadical::Computed(Ideal::unit(ring));
    }
    let pieces = match poly::squarefree_pieces(p) {
        Ok(pieces) => pieces,
        Err(e) => return RealRadical::Unsupported(e.to_string()),
    };
    // radicals of coprime factors intersect
    let mut principal = ring.one();
    let mut others: Vec<Ideal> = Vec::new();
    for q in pieces {
        match piece_real_radical(&q) {
            PieceRadical::Principal => principal = &principal * &q,
            PieceRadical::Ideal(j) => {
                if !j.is_proper() {
                    continue;
                }
                others.push(j);
            }
            PieceRadical::Empty => {}
            PieceRadical::Unsupported(reason) => return RealRadical::Unsupported(reason),
        }
    }
    let mut result = Ideal::new(ring, [principal.monic()]);
    for j in others {
        result = result.intersection(&j);
    }
    RealRadical::Computed(result.reduced())
}

enum PieceRadical {
    /// `⟨q⟩` is already real radical.
    Principal,
    Ideal(Ideal),
    /// No real zeros.
    Empty,
    Unsupported(String),
}

/// Real radical of one squarefree piece.
fn piece_real_radical(q: &Polynomial) -> PieceRadical {
    let ring = q.ring();
    if let Some(roots) = even_sum_roots(q) {
        return match roots {
            None => PieceRadical::Empty,
            Some(roots) => PieceRadical::Ideal(
                Ideal::new(ring, roots).radical_monomial().expect("monomial roots"),
            ),
        };
    }
    let irreducible = linear_in_some_variable(q) || irreducible_quadric(q);
    if !irreducible {
        return PieceRadical::Unsupported(format!("cannot certify the real radical of ⟨{q}⟩"));
    }
    // an irreducible polynomial generates a real radical ideal iff it changes sign
    if changes_sign(q) {
        PieceRadical::Principal
    } else {
        PieceRadical::Unsupported(format!("no sign change found for {q}"))
    }
}

/// For `q = sum c_i m_i^2 (+ c)` with every `c_i > 0`: `Some(None)` when a
/// positive constant makes `q` zero-free, else `Some(Some(roots m_i))`.
fn even_sum_roots(q: &Polynomial) -> Option<Option<Vec<Polynomial>>> {
    if q.len() < 2 {
        return None;
    }
    let sign_ok = |c: &Rational| c.is_positive();
    let all_pos = q.terms().iter().all(|(_, c)| sign_ok(c));
    let all_neg = q.terms().iter().all(|(_, c)| c.is_negative());
    if !all_pos && !all_neg {
        return None;
    }
    let mut roots = Vec::new();
    let mut has_constant = false;
    for (m, _) in q.terms() {
        if m.is_one() {
            has_constant = true;
            continue;
        }
        roots.push(Polynomial::term(q.ring(), m.sqrt()?, Rational::one()));
    }
    if has_constant {
        Some(None)
    } else {
        Some(Some(roots))
    }
}

/// `q = a*x_v + b` with `a, b` free of `x_v` and coprime, hence irreducible.
fn linear_in_some_variable(q: &Polynomial) -> bool {
    let ring = q.ring();
    (0..ring.nvars()).any(|v| {
        if q.degree_in(v) != 1 {
            return false;
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (m, c) in q.terms() {
            if m.exponent(v) == 1 {
                a.push((m.lower(v), c.clone()));
            } else {
                b.push((*m, c.clone()));
            }
        }
        let a = Polynomial::from_terms(ring, a);
        let b = Polynomial::from_terms(ring, b);
        a.is_constant() || poly::gcd(&a, &b).is_constant()
    })
}

/// A quadric is irreducible over ℂ iff its homogenised symmetric matrix has rank ≥ 3.
fn irreducible_quadric(q: &Polynomial) -> bool {
    if q.total_degree() != Some(2) {
        return false;
    }
    let n = q.ring().nvars();
    let mut mat = vec![vec![Rational::zero(); n + 1]; n + 1];
    let half = poly::ratio(1, 2);
    for (m, c) in q.terms() {
        let vars: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat(i).take(m.exponent(i) as usize)).collect();
        match vars.as_slice() {
            [] => mat[n][n] += c,
            [i] => {
                mat[*i][n] += c * &half;
                mat[n][*i] += c * &half;
            }
            [i, j] if i == j => mat[*i][*i] += c,
            [i, j] => {
                mat[*i][*j] += c * &half;
                mat[*j][*i] += c * &half;
            }
            _ => unreachable!("degree two"),
        }
    }
    rational_rank(mat) >= 3
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rational_rank(mut mat: Vec<Vec<Rational>>) -> usize {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = mat[rank][col].recip();
        for r in rank + 1..rows {
            if mat[r][col].is_zero() {
                continue;
            }
            let k = &mat[r][col] * &inv;
            for c in col..cols {
                let delta = &k * &mat[rank][c];
                mat[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Searches small integer points, then seeded random ones, for both signs.
fn changes_sign(q: &Polynomial) -> bool {
    let n = q.ring().nvars();
    let (mut pos, mut neg) = (false, false);
    let mut check = |pt: &[Rational]| {
        let v = q.evaluate(pt).expect("point has ring length");
        pos |= v.is_positive();
        neg |= v.is_negative();
        pos && neg
    };
    let radix = 5u64;
    let total = radix.saturating_pow(n as u32).min(4096);
    for k in 0..total {
        let mut code = k;
        let pt: Vec<Rational> = (0..n)
            .map(|_| {
                let d = (code % radix) as i64 - 2;
                code /= radix;
                poly::rat(d)
            })
            .collect();
        if check(&pt) {
            return true;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5157_u64);
    for _ in 0..2000 {
        let pt: Vec<Rational> = (0..n).map(|_| poly::ratio(rng.gen_range(-1000..=1000), rng.gen_range(1..=50))).collect();
        if check(&pt) {
            return true;
        }
    }
    false
}

/// Checks that an ideal (given by its reduced basis) is real radical.
fn certify_real_radical(j: &Ideal) -> std::result::Result<(), String> {
    let gb = j.groebner_basis();
    if gb.is_empty() || gb[0].is_constant() {
        return Ok(());
    }
    if gb.iter().all(|g| g.is_monomial()) {
        if gb.iter().all(|g| g.leading_monomial().unwrap().squarefree() == *g.leading_monomial().unwrap()) {
            return Ok(());
        }
        return Err(format!("monomial ideal {j} is not radical"));
    }
    // leading terms in distinct single variables: a graph over the other coordinates
    let mut lead_vars = Vec::new();
    for g in gb {
        let lm = g.leading_monomial().unwrap();
        if lm.degree() != 1 {
            break;
        }
        let v = (0..j.ring().nvars()).find(|&v| lm.exponent(v) == 1).unwrap();
        lead_vars.push(v);
    }
    if lead_vars.len() == gb.len() {
        let mut sorted = lead_vars.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == lead_vars.len() {
            return Ok(());
        }
    }
    if let [p] = gb {
        if let RealRadical::Computed(r) = principal_real_radical(p) {
            if ideal_equal(&r, j) {
                return Ok(());
            }
        }
    }
    Err(format!("cannot certify that {j} is real radical"))
}
