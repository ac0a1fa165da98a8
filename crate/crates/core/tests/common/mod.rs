#![allow(dead_code)]

use accessibility::lie::{SystemSpec, VectorField};
use accessibility::poly::{Monomial, Polynomial, Rational, Ring, VarTable};
use accessibility::sysfile::SystemFile;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ring(n: usize) -> Ring {
    Ring::new(VarTable::numbered("x", n).unwrap(), Default::default())
}

pub fn poly_from(ring: &Ring, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|(e, c)| (Monomial::from_exponents(e), Rational::from_integer((*c).into())))
            .collect(),
    )
}

/// Random polynomial with up to `terms` terms of total degree at most `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring, deg: u32, terms: usize) -> Polynomial {
    let n = ring.nvars();
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(0..=terms) {
        let mut e = vec![0u32; n];
        let mut budget = rng.gen_range(0..=deg);
        while budget > 0 {
            e[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        out.push((e, rng.gen_range(-3..=3)));
    }
    poly_from(ring, &out)
}

/// Random sparse control-affine system: `m` inputs, degree at most `deg`,
/// about half the components zero, drift present with probability 1/2.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize, m: usize, deg: u32) -> SystemSpec {
    let r = ring(n);
    let field = |label: &str, rng: &mut ChaCha8Rng| {
        let comps = (0..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    r.zero()
                } else {
                    random_poly(rng, &r, deg, 2)
                }
            })
            .collect();
        VectorField::new(&r, label, comps).unwrap()
    };
    let drift = if rng.gen_bool(0.5) {
        field("f", rng)
    } else {
        VectorField::zero(&r, "f")
    };
    let inputs = (1..=m).map(|i| field(&format!("g{i}"), rng)).collect();
    SystemSpec::new(&r, drift, inputs).unwrap()
}

pub fn system_file(name: &str) -> String {
    let path = format!("{}/systems/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn load(name: &str) -> SystemSpec {
    SystemFile::parse(&system_file(name)).unwrap().load(None).unwrap().system
}
