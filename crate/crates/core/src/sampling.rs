//! Exact rational sample points, on and off an algebraic set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::ideal::Ideal;
use crate::poly::{Polynomial, Rational};

/// Numerators and denominators of rational points on the unit circle are
/// favoured, so quadrics like `x^2 + y^2 - 1` have rational solutions in reach.
const PYTHAGOREAN: [(i64, i64); 8] = [(3, 5), (4, 5), (5, 13), (12, 13), (8, 17), (15, 17), (7, 25), (24, 25)];

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// A small rational: an integer in `[-5, 5]`, a fraction with denominator
/// at most 6, or a Pythagorean ratio.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    match rng.gen_range(0..3) {
        0 => q(rng.gen_range(-5..=5), 1),
        1 => q(rng.gen_range(-6..=6), rng.gen_range(1..=6)),
        _ => {
            let (n, d) = *PYTHAGOREAN.choose(rng).unwrap();
            if rng.gen_bool(0.5) {
                q(n, d)
            } else {
                q(-n, d)
            }
        }
    }
}

pub fn small_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Rational roots of `sum c_i t^i` by the rational root theorem. Gives up
/// (returns what it has) when the extreme coefficients exceed `10^12`.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let shift = c.iter().position(|x| !x.is_zero()).unwrap();
    if shift > 0 {
        roots.push(Rational::zero());
        c.drain(..shift);
    }
    if c.len() <= 1 {
        return roots;
    }
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64()) else {
        return roots;
    };
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
        return roots;
    }
    let eval = |t: &Rational| {
        let mut acc = Rational::zero();
        for x in c.iter().rev() {
            acc = acc * t + x;
        }
        acc
    };
    let ps = divisors(a0);
    let qs = divisors(an);
    for p in &ps {
        for d in &qs {
            for sign in [1i64, -1] {
                let t = Rational::new(BigInt::from(*p) * sign, BigInt::from(*d));
                if !roots.contains(&t) && eval(&t).is_zero() {
                    roots.push(t);
                }
            }
        }
    }
    roots
}

/// Univariate coefficients of `p` in `v` once every other variable is fixed.
fn univariate(p: &Polynomial, values: &[Option<Rational>], v: usize) -> Vec<Rational> {
    let rest = p.evaluate_partial(values);
    let mut out = vec![Rational::zero(); rest.degree_in(v) as usize + 1];
    for (m, c) in rest.terms() {
        out[m.exponent(v) as usize] += c;
    }
    out
}

/// Up to `want` distinct rational points of `V(I)`, found by zeroing random
/// coordinate subsets and by solving for one coordinate after fixing the rest.
pub fn points_on_variety(ideal: &Ideal, rng: &mut ChaCha8Rng, want: usize) -> Vec<Vec<Rational>> {
    let n = ideal.ring().nvars();
    let gens: Vec<Polynomial> = ideal.groebner_basis().to_vec();
    let mut found: Vec<Vec<Rational>> = Vec::new();
    if !ideal.is_proper() {
        return found;
    }
    let push = |pt: Vec<Rational>, found: &mut Vec<Vec<Rational>>| {
        if !found.contains(&pt) && gens.iter().all(|g| g.evaluate(&pt).unwrap().is_zero()) {
            found.push(pt);
        }
    };
    for attempt in 0..want * 60 {
        if found.len() >= want {
            break;
        }
        let mut pt = small_point(rng, n);
        for x in pt.iter_mut() {
            if rng.gen_bool(0.3) {
                *x = Rational::zero();
            }
        }
        if attempt % 2 == 0 {
            let zeros = rng.gen_range(1..=n);
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(rng);
            for &i in &idx[..zeros] {
                pt[i] = Rational::zero();
            }
            push(pt, &mut found);
            continue;
        }
        let v = rng.gen_range(0..n);
        let mut values: Vec<Option<Rational>> = pt.iter().cloned().map(Some).collect();
        values[v] = None;
        let Some(uni) = gens
            .iter()
            .map(|g| univariate(g, &values, v))
            .find(|c| c.iter().any(|x| !x.is_zero()))
        else {
            // every generator vanishes whatever the free coordinate is
            push(pt, &mut found);
            continue;
        };
        for root in rational_roots(&uni) {
            let mut cand = pt.clone();
            cand[v] = root;
            push(cand, &mut found);
        }
    }
    found.truncate(want);
    found
}
