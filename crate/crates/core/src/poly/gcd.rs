//! Multivariate gcd by recursive subresultant pseudo-remainder sequences,
//! exact division and squarefree parts.

use num_traits::One;

use super::{Monomial, Polynomial, Rational, Ring};
use crate::error::{Error, Result};

/// `a / b` when `b` divides `a` exactly.
pub fn exact_div(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial("division"));
    }
    let ring = a.ring();
    let (lm, lc) = b.leading_term().unwrap();
    let lc_inv = lc.recip();
    let mut q = Vec::new();
    let mut r = a.clone();
    while let Some((m, c)) = r.leading_term() {
        let t = m.div(lm).ok_or(Error::InexactDivision)?;
        let k = c * &lc_inv;
        r = r.sub_mul_term(&k, &t, b);
        q.push((t, k));
    }
    // quotient terms were produced in strictly descending order
    Ok(Polynomial::from_sorted(ring, q))
}

/// Coefficients of `p` viewed as a polynomial in `v`; entry `i` multiplies `v^i`.
fn coeffs_in(p: &Polynomial, v: usize) -> Vec<Polynomial> {
    let ring = p.ring();
    let deg = p.degree_in(v) as usize;
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exponent(v) as usize;
        let mut exps: Vec<u32> = (0..ring.nvars()).map(|i| m.exponent(i)).collect();
        exps[v] = 0;
        buckets[e].push((Monomial::from_exponents(&exps), c.clone()));
    }
    buckets
        .into_iter()
        .map(|t| Polynomial::from_terms(ring, t))
        .collect()
}

fn from_coeffs(ring: &Ring, v: usize, coeffs: &[Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero(ring);
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0u32; ring.nvars()];
        exps[v] = i as u32;
        out = &out + &c.mul_term(&Rational::one(), &Monomial::from_exponents(&exps));
    }
    out
}

fn trim(c: &mut Vec<Polynomial>) {
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
}

fn degree(c: &[Polynomial]) -> usize {
    c.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let db = degree(b);
    let lcb = b.last().unwrap();
    let mut r = a.to_vec();
    let delta = degree(a) + 1 - db;
    let mut steps = 0;
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = degree(&r);
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = &r[idx] - &(&lcr * bc);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        if r.is_empty() {
            r.push(Polynomial::zero(lcb.ring()));
        }
        trim(&mut r);
        steps += 1;
    }
    if steps < delta {
        let k = lcb.pow((delta - steps) as u32);
        for c in r.iter_mut() {
            *c = &*c * &k;
        }
    }
    r
}

fn content_of(coeffs: &[Polynomial]) -> Polynomial {
    let ring = coeffs[0].ring();
    let mut g = Polynomial::zero(ring);
    for c in coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(coeffs: &[Polynomial]) -> (Polynomial, Vec<Polynomial>) {
    let cont = content_of(coeffs);
    let pp = coeffs
        .iter()
        .map(|c| exact_div(c, &cont).expect("content divides coefficients"))
        .collect();
    (cont, pp)
}

/// Greatest common divisor, normalised to be monic (zero only if both inputs are).
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert!(a.ring() == b.ring(), "polynomials over different rings");
    let ring = a.ring();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return ring.one();
    }
    // monomial factors are cheap to split off and keep the recursion small
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    if !ma.is_one() || !mb.is_one() {
        let g = ma.gcd(&mb);
        let rest = gcd(&a.div_monomial(&ma), &b.div_monomial(&mb));
        return rest.mul_term(&Rational::one(), &g);
    }
    let n = ring.nvars();
    let v = match (0..n).rev().find(|&v| a.uses_var(v) && b.uses_var(v)) {
        Some(v) => v,
        None => {
            // no shared variable: reduce through the content of either side
            let v = (0..n).rev().find(|&v| a.uses_var(v)).unwrap();
            let ca = content_of(&coeffs_in(a, v));
            return gcd(&ca, b);
        }
    };
    let (ca, pa) = primitive_part(&coeffs_in(a, v));
    let (cb, pb) = primitive_part(&coeffs_in(b, v));
    let cont = gcd(&ca, &cb);
    let g = subresultant_gcd(pa, pb);
    let (_, gp) = primitive_part(&g);
    (&from_coeffs(ring, v, &gp) * &cont).monic()
}

/// Gcd of two primitive polynomials in one main variable (up to a content factor).
fn subresultant_gcd(a: Vec<Polynomial>, b: Vec<Polynomial>) -> Vec<Polynomial> {
    let ring = a[0].ring().clone();
    let (mut a, mut b) = if degree(&a) >= degree(&b) { (a, b) } else { (b, a) };
    let mut g = ring.one();
    let mut h = ring.one();
    loop {
        let delta = degree(&a) - degree(&b);
        let r = prem(&a, &b);
        if r.len() == 1 && r[0].is_zero() {
            return b;
        }
        if degree(&r) == 0 {
            return vec![ring.one()];
        }
        let divisor = &g * &h.pow(delta as u32);
        let next: Vec<Polynomial> = r
            .iter()
            .map(|c| exact_div(c, &divisor).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = next;
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta as u32);
            let den = h.pow(delta as u32 - 1);
            exact_div(&num, &den).expect("subresultant h update is exact")
        };
    }
}

/// Product of the distinct irreducible factors of `p`, monic.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial> {
    let pieces = squarefree_pieces(p)?;
    let mut out = p.ring().one();
    for piece in &pieces {
        out = &out * piece;
    }
    Ok(out.monic())
}

/// Splits the squarefree part of `p` into pairwise coprime monic pieces:
/// each variable dividing `p`, then for every variable the product of the
/// remaining distinct factors that involve it.
pub fn squarefree_pieces(p: &Polynomial) -> Result<Vec<Polynomial>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree part"));
    }
    let ring = p.ring();
    let mut pieces = Vec::new();
    let content = p.monomial_content();
    for v in 0..ring.nvars() {
        if content.exponent(v) > 0 {
            pieces.push(ring.var(v));
        }
    }
    let mut rem = p.div_monomial(&content);
    for v in 0..ring.nvars() {
        if !rem.uses_var(v) {
            continue;
        }
        let d = rem.partial_derivative(v);
        let g = gcd(&rem, &d);
        let h = exact_div(&rem, &g)?.monic();
        loop {
            let g2 = gcd(&rem, &h);
            if g2.is_constant() {
                break;
            }
            rem = exact_div(&rem, &g2)?;
        }
        pieces.push(h);
    }
    debug_assert!(rem.is_constant());
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::with_names(["x1", "x2", "x3"]).unwrap()
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let a = r.parse("(x1 + x2)*(x1 - x3^2)").unwrap();
        let b = r.parse("x1 - x3^2").unwrap();
        assert_eq!(exact_div(&a, &b).unwrap(), r.parse("x1 + x2").unwrap());
        assert_eq!(exact_div(&a, &r.parse("x1").unwrap()), Err(Error::InexactDivision));
    }

    #[test]
    fn gcd_of_products() {
        let r = ring();
        let f = r.parse("x1^2 + x2*x3 + 1").unwrap();
        let g = r.parse("x1 - x2 + 3*x3").unwrap();
        let h = r.parse("x2^2 - x3").unwrap();
        let a = &(&f * &g) * &g;
        let b = &(&f * &h) * &g;
        assert_eq!(gcd(&a, &b), (&f * &g).monic());
        assert!(gcd(&f, &h).is_one());
        assert_eq!(gcd(&r.parse("2*x1^2*x2").unwrap(), &r.parse("4*x1*x2^3").unwrap()), r.parse("x1*x2").unwrap());
    }

    #[test]
    fn squarefree_examples() {
        let r = ring();
        let sf = |s: &str| squarefree_part(&r.parse(s).unwrap()).unwrap();
        assert_eq!(sf("x1^2*x2"), r.parse("x1*x2").unwrap());
        assert_eq!(sf("x1*x2"), r.parse("x1*x2").unwrap());
        assert_eq!(sf("x1^4"), r.parse("x1").unwrap());
        assert_eq!(sf("3*(x1 + x2)^3*(x2^2 + x3^2)^2"), r.parse("(x1 + x2)*(x2^2 + x3^2)").unwrap().monic());
        assert!(squarefree_part(&r.zero()).is_err());
        assert!(sf("5").is_one());
    }

    #[test]
    fn pieces_split_monomial_content() {
        let r = ring();
        let pieces = squarefree_pieces(&r.parse("x3^3*(x1^2 + x2^2)").unwrap()).unwrap();
        assert_eq!(pieces, vec![r.parse("x3").unwrap(), r.parse("x1^2 + x2^2").unwrap()]);
    }
}
