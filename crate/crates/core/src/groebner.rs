//! Buchberger's algorithm for submodules of a free module `R^r`, with
//! position-over-term order. An ideal is the case `r = 1`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::poly::{Monomial, Polynomial, Rational, Ring};

/// One term of a module element: position, monomial, coefficient.
pub type VTerm = (usize, Monomial, Rational);

/// Position-over-term comparison. Position 0 ranks highest.
#[inline]
pub fn pot_compare(ring: &Ring, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    match a.0.cmp(&b.0) {
        Ordering::Equal => ring.compare(a.1, b.1),
        other => other.reverse(),
    }
}

/// Element of `R^r`, stored as a term list sorted strictly descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    terms: Vec<VTerm>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_polys(polys: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (pos, p) in polys.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(m, c)| (pos, *m, c.clone())));
        }
        Vector { terms }
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        Vector::from_polys(std::slice::from_ref(p))
    }

    pub fn to_polys(&self, ring: &Ring, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for (p, m, c) in &self.terms {
            buckets[*p].push((*m, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Polynomial::from_sorted(ring, t))
            .collect()
    }

    pub fn to_poly(&self, ring: &Ring) -> Polynomial {
        self.to_polys(ring, 1).pop().unwrap()
    }

    pub fn terms(&self) -> &[VTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, _, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.recip();
                for t in self.terms.iter_mut() {
                    t.2 = &t.2 * &inv;
                }
            }
        }
        self
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|(p, t, k)| (*p, t.mul(m), k * c))
                .collect(),
        }
    }

    /// Replaces the terms from index `start` on by `tail - c * m * other`.
    /// Terms before `start` must all rank above the product's leading term.
    fn sub_mul_from(&mut self, ring: &Ring, start: usize, c: &Rational, m: &Monomial, other: &Vector) {
        let tail = self.terms.split_off(start);
        let b = &other.terms;
        let mut out = Vec::with_capacity(tail.len() + b.len());
        let mut tail = tail.into_iter().peekable();
        let mut j = 0;
        while j < b.len() {
            let bm = b[j].1.mul(m);
            let Some(a) = tail.peek() else { break };
            match pot_compare(ring, (a.0, &a.1), (b[j].0, &bm)) {
                Ordering::Greater => out.push(tail.next().unwrap()),
                Ordering::Less => {
                    out.push((b[j].0, bm, -(&b[j].2 * c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let a = tail.next().unwrap();
                    let s = a.2 - &b[j].2 * c;
                    if !s.is_zero() {
                        out.push((a.0, bm, s));
                    }
                    j += 1;
                }
            }
        }
        out.extend(tail);
        out.extend(b[j..].iter().map(|(p, t, k)| (*p, t.mul(m), -(k * c))));
        self.terms.extend(out);
    }

    pub fn sub(&self, ring: &Ring, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.sub_mul_from(ring, 0, &Rational::one(), &Monomial::one(), other);
        out
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
}

/// Incremental Buchberger state with Gebauer-Moeller pair pruning.
///
/// Elements are kept monic. Generators may be added at any time; after
/// [`Groebner::complete`] the non-redundant elements form a Gröbner basis.
#[derive(Clone, Debug)]
pub struct Groebner {
    ring: Ring,
    rank: usize,
    elems: Vec<Vector>,
    redundant: Vec<bool>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    trivial: bool,
}

impl Groebner {
    pub fn new(ring: &Ring, rank: usize) -> Self {
        Groebner {
            ring: ring.clone(),
            rank,
            elems: Vec::new(),
            redundant: Vec::new(),
            by_pos: vec![Vec::new(); rank],
            pairs: Vec::new(),
            trivial: false,
        }
    }

    /// Gröbner basis of the module generated by `gens`.
    pub fn from_generators(ring: &Ring, rank: usize, gens: impl IntoIterator<Item = Vector>) -> Self {
        let mut gb = Groebner::new(ring, rank);
        for g in gens {
            gb.add(g);
        }
        gb.complete();
        gb
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds a generator. Returns whether it enlarged the current span
    /// (only meaningful once the state is complete).
    pub fn add(&mut self, v: Vector) -> bool {
        let r = self.normal_form(&v);
        if r.is_zero() {
            return false;
        }
        self.insert(r.monic());
        true
    }

    /// Runs the pair queue to completion.
    pub fn complete(&mut self) {
        while let Some(pair) = self.next_pair() {
            let s = self.s_vector(&pair);
            let r = self.normal_form(&s);
            if !r.is_zero() {
                self.insert(r.monic());
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        self.pairs.is_empty()
    }

    /// True once the span contains a constant in every position.
    pub fn is_whole(&self) -> bool {
        (0..self.rank).all(|p| {
            self.by_pos[p]
                .iter()
                .any(|&i| !self.redundant[i] && self.elems[i].terms[0].1.is_one())
        })
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = a
                .lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| pot_compare(ring, (a.pos, &a.lcm), (b.pos, &b.lcm)).reverse());
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn s_vector(&self, pair: &Pair) -> Vector {
        let (a, b) = (&self.elems[pair.i], &self.elems[pair.j]);
        let ma = pair.lcm.div(&a.terms[0].1).unwrap();
        let mb = pair.lcm.div(&b.terms[0].1).unwrap();
        let mut s = a.mul_term(&Rational::one(), &ma);
        // the leading terms cancel, so the merge may start at the front
        s.sub_mul_from(&self.ring, 0, &Rational::one(), &mb, b);
        s
    }

    fn insert(&mut self, h: Vector) {
        let t = self.elems.len();
        let (pos, lm) = (h.terms[0].0, h.terms[0].1);
        if lm.is_one() {
            self.trivial = true;
        }
        let product_criterion = self.rank == 1;
        let lcm_of = |me: &Self, i: usize| me.elems[i].terms[0].1.lcm(&lm);

        // candidate pairs with the new element
        let cands: Vec<usize> = self.by_pos[pos]
            .iter()
            .copied()
            .filter(|&i| !self.redundant[i])
            .collect();
        let lcms: Vec<Monomial> = cands.iter().map(|&i| lcm_of(self, i)).collect();
        let coprime: Vec<bool> = cands
            .iter()
            .map(|&i| product_criterion && self.elems[i].terms[0].1.is_coprime(&lm))
            .collect();
        let mut keep = vec![false; cands.len()];
        let mut removed = vec![false; cands.len()];
        for a in 0..cands.len() {
            if coprime[a] {
                keep[a] = true;
                continue;
            }
            // drop when another surviving pair has an lcm dividing this one
            let dominated = (0..cands.len()).any(|b| {
                b != a
                    && !removed[b]
                    && lcms[b].divides(&lcms[a])
                    && (lcms[b] != lcms[a] || b < a)
            });
            if dominated {
                removed[a] = true;
            } else {
                keep[a] = true;
            }
        }
        // old pairs made superfluous by the new leading term
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.pos != pos || !lm.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].terms[0].1.lcm(&lm);
            let lj = elems[p.j].terms[0].1.lcm(&lm);
            li == p.lcm || lj == p.lcm
        });
        for a in 0..cands.len() {
            if keep[a] && !coprime[a] {
                self.pairs.push(Pair {
                    i: cands[a],
                    j: t,
                    pos,
                    lcm: lcms[a],
                });
            }
        }
        for &i in &self.by_pos[pos] {
            if !self.redundant[i] && lm.divides(&self.elems[i].terms[0].1) {
                self.redundant[i] = true;
            }
        }
        self.elems.push(h);
        self.redundant.push(false);
        self.by_pos[pos].push(t);
    }

    fn find_reducer(&self, pos: usize, m: &Monomial, skip: usize) -> Option<usize> {
        self.by_pos[pos]
            .iter()
            .copied()
            .find(|&i| i != skip && !self.redundant[i] && self.elems[i].terms[0].1.divides(m))
    }

    /// Full normal form with respect to the current elements.
    pub fn normal_form(&self, v: &Vector) -> Vector {
        self.normal_form_skipping(v, usize::MAX)
    }

    fn normal_form_skipping(&self, v: &Vector, skip: usize) -> Vector {
        let mut rem = v.clone();
        let mut i = 0;
        while i < rem.terms.len() {
            let (pos, m) = (rem.terms[i].0, rem.terms[i].1);
            match self.find_reducer(pos, &m, skip) {
                Some(g) => {
                    let g = &self.elems[g];
                    let q = m.div(&g.terms[0].1).unwrap();
                    let c = rem.terms[i].2.clone();
                    rem.sub_mul_from(&self.ring, i, &c, &q, g);
                }
                None => i += 1,
            }
        }
        rem
    }

    /// Membership test by top reduction; requires a complete state.
    pub fn contains(&self, v: &Vector) -> bool {
        debug_assert!(self.is_complete());
        let mut rem = v.clone();
        while let Some((pos, m, c)) = rem.terms.first().cloned() {
            match self.find_reducer(pos, &m, usize::MAX) {
                Some(g) => {
                    let g = &self.elems[g];
                    let q = m.div(&g.terms[0].1).unwrap();
                    rem.sub_mul_from(&self.ring, 0, &c, &q, g);
                }
                None => return false,
            }
        }
        true
    }

    /// Reduced Gröbner basis, sorted by ascending leading term.
    pub fn reduced(&self) -> Vec<Vector> {
        debug_assert!(self.is_complete());
        if self.trivial && self.rank == 1 {
            return vec![Vector::from_poly(&self.ring.one())];
        }
        let live: Vec<usize> = (0..self.elems.len()).filter(|&i| !self.redundant[i]).collect();
        let mut out = Vec::with_capacity(live.len());
        for &i in &live {
            // reduce the tail by the other minimal elements
            let g = &self.elems[i];
            let rest = Vector {
                terms: g.terms[1..].to_vec(),
            };
            let rest = self.normal_form_skipping(&rest, i);
            let mut terms = vec![g.terms[0].clone()];
            terms.extend(rest.terms);
            out.push(Vector { terms });
        }
        let ring = &self.ring;
        out.sort_by(|a, b| {
            pot_compare(ring, (a.terms[0].0, &a.terms[0].1), (b.terms[0].0, &b.terms[0].1))
        });
        out
    }

    /// Leading positions of the basis; their count is the generic rank of the span.
    pub fn lead_positions(&self) -> Vec<usize> {
        (0..self.rank)
            .filter(|&p| self.by_pos[p].iter().any(|&i| !self.redundant[i]))
            .collect()
    }

    /// Number of non-redundant basis elements.
    pub fn size(&self) -> usize {
        self.redundant.iter().filter(|r| !**r).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::with_names(["x1", "x2", "x3"]).unwrap()
    }

    fn ideal_gb(r: &Ring, gens: &[&str]) -> Vec<Polynomial> {
        let gb = Groebner::from_generators(r, 1, gens.iter().map(|g| Vector::from_poly(&r.parse(g).unwrap())));
        gb.reduced().iter().map(|v| v.to_poly(r)).collect()
    }

    #[test]
    fn cyclic_three() {
        let r = ring();
        let gb = ideal_gb(&r, &["x1 + x2 + x3", "x1*x2 + x2*x3 + x3*x1", "x1*x2*x3 - 1"]);
        let expect = ["x1 + x2 + x3", "x2^2 + x2*x3 + x3^2", "x3^3 - 1"];
        let expect: Vec<Polynomial> = expect.iter().map(|s| r.parse(s).unwrap()).collect();
        assert_eq!(gb, expect);
    }

    #[test]
    fn improper_ideal() {
        let r = ring();
        assert_eq!(ideal_gb(&r, &["x1", "1 - x1"]), vec![r.one()]);
        assert!(ideal_gb(&r, &["0"]).is_empty());
    }

    #[test]
    fn module_membership_and_rank() {
        let r = Ring::with_names(["x1", "x2"]).unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let gens = [
            Vector::from_polys(&[p("x2"), p("0")]),
            Vector::from_polys(&[p("0"), p("x1^2")]),
            Vector::from_polys(&[p("-x1^2"), p("2*x1*x2")]),
        ];
        let gb = Groebner::from_generators(&r, 2, gens.clone());
        for g in &gens {
            assert!(gb.contains(g));
        }
        assert!(!gb.contains(&Vector::from_polys(&[p("0"), p("1")])));
        assert!(!gb.contains(&Vector::from_polys(&[p("-4*x1*x2"), p("2*x2^2")])));
        assert!(gb.contains(&Vector::from_polys(&[p("x1*x2 + x2^3"), p("x1^3")])));
        assert_eq!(gb.lead_positions(), vec![0, 1]);
    }
}
