//! Bracket matrices `M_k`, their minor ideals and generic rank.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lie::{BracketFamily, Mode, VectorField};
use crate::module::PolySubmodule;
use crate::poly::{exact_div, Polynomial, Rational, Ring};

/// Matrix whose columns are vector fields.
#[derive(Clone, Debug)]
pub struct FieldMatrix {
    ring: Ring,
    columns: Vec<VectorField>,
    depth: usize,
    mode: Mode,
}

impl FieldMatrix {
    pub fn new(ring: &Ring, columns: Vec<VectorField>, depth: usize, mode: Mode) -> Result<Self> {
        if columns.iter().any(|c| c.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(FieldMatrix {
            ring: ring.clone(),
            columns,
            depth,
            mode,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn columns(&self) -> &[VectorField] {
        &self.columns
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rows(&self) -> usize {
        self.ring.nvars()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        self.columns[col].component(row)
    }

    /// Entries at a rational point, row-major.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        let cols: Vec<Vec<Rational>> = self
            .columns
            .iter()
            .map(|c| c.evaluate(point))
            .collect::<Result<_>>()?;
        Ok((0..self.rows())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect())
    }

    pub fn numeric_rank(&self, point: &[Rational]) -> Result<usize> {
        Ok(rank_profile(self.evaluate(point)?).rank())
    }

    /// The `l x l` submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Polynomial>> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.entry(r, c).clone()).collect())
            .collect()
    }
}

/// `M_k` for a bracket family: one column per stored field, in family order.
pub fn build_matrix(fam: &BracketFamily) -> FieldMatrix {
    let fields = fam.fields();
    let ring = fields[0].ring().clone();
    FieldMatrix {
        ring,
        columns: fields.to_vec(),
        depth: fam.depth(),
        mode: fam.mode(),
    }
}

/// Ideal generated by the `size x size` minors of a matrix at `depth`.
#[derive(Clone, Debug)]
pub struct MinorIdeal {
    pub ideal: Ideal,
    pub size: usize,
    pub depth: usize,
}

/// All `l x l` minors, made monic, with zeros and duplicates dropped and
/// sorted by their printed form.
pub fn minor_ideal(m: &FieldMatrix, l: usize) -> Result<MinorIdeal> {
    let max = m.rows().min(m.cols());
    if l == 0 || l > max {
        return Err(Error::MinorSize { size: l, max });
    }
    let mut minors: BTreeMap<String, Polynomial> = BTreeMap::new();
    for rows in (0..m.rows()).combinations(l) {
        for cols in (0..m.cols()).combinations(l) {
            let d = determinant(&m.submatrix(&rows, &cols));
            if !d.is_zero() {
                let d = d.monic();
                minors.entry(d.to_string()).or_insert(d);
            }
        }
    }
    Ok(MinorIdeal {
        ideal: Ideal::new(m.ring(), minors.into_values()),
        size: l,
        depth: m.depth(),
    })
}

/// Determinant of a square polynomial matrix: cofactor expansion up to
/// size 3, fraction-free Bareiss elimination beyond.
pub fn determinant(mat: &[Vec<Polynomial>]) -> Polynomial {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "square matrix expected");
    match n {
        0 => panic!("empty matrix"),
        1 => mat[0][0].clone(),
        2 => &(&mat[0][0] * &mat[1][1]) - &(&mat[0][1] * &mat[1][0]),
        3 => {
            let mut det = mat[0][0].ring().zero();
            for c in 0..3 {
                if mat[0][c].is_zero() {
                    continue;
                }
                let (a, b) = match c {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let minor = &(&mat[1][a] * &mat[2][b]) - &(&mat[1][b] * &mat[2][a]);
                let term = &mat[0][c] * &minor;
                det = if c == 1 { &det - &term } else { &det + &term };
            }
            det
        }
        _ => bareiss(mat.to_vec()),
    }
}

fn bareiss(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    let ring = a[0][0].ring().clone();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // prefer the sparsest available pivot
            let Some(p) = (k + 1..n).filter(|&r| !a[r][k].is_zero()).min_by_key(|&r| a[r][k].len()) else {
                return ring.zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Rank of a rational matrix together with the rows and columns of a
/// nonsingular maximal submatrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl RankProfile {
    pub fn rank(&self) -> usize {
        self.cols.len()
    }
}

pub fn rank_profile(mut mat: Vec<Vec<Rational>>) -> RankProfile {
    let nrows = mat.len();
    let ncols = mat.first().map_or(0, Vec::len);
    let mut order: Vec<usize> = (0..nrows).collect();
    let mut cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        order.swap(rank, pivot);
        let inv = mat[rank][col].recip();
        for r in rank + 1..nrows {
            if mat[r][col].is_zero() {
                continue;
            }
            let k = &mat[r][col] * &inv;
            for c in col..ncols {
                let delta = &k * &mat[rank][c];
                mat[r][c] -= delta;
            }
        }
        cols.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    let mut rows = order[..rank].to_vec();
    rows.sort_unstable();
    RankProfile { rows, cols }
}

/// Seeded random rational point with integer entries in `[-1000, 1000]`.
pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_integer(rng.gen_range(-1000i64..=1000).into()))
        .collect()
}

/// Generic rank with its two certificates.
#[derive(Clone, Debug, Serialize)]
pub struct GenericRank {
    pub rank: usize,
    /// Rows and columns of a minor of size `rank` that is a nonzero polynomial.
    pub witness_rows: Vec<usize>,
    pub witness_cols: Vec<usize>,
    /// Rendered witness minor.
    pub witness_minor: String,
    /// Sample points tried before the witness was found.
    pub samples: usize,
}

/// Generic rank of `M`. The upper bound is the number of distinct lead
/// positions of the column module's Gröbner basis (its rank over the
/// fraction field); sampling finds a nonzero minor of that size, which is
/// then recomputed symbolically.
pub fn generic_rank(m: &FieldMatrix, seed: u64) -> GenericRank {
    let module = PolySubmodule::new(m.ring(), m.columns().iter().cloned());
    let upper = module.generic_rank();
    if upper == 0 {
        return GenericRank {
            rank: 0,
            witness_rows: Vec::new(),
            witness_cols: Vec::new(),
            witness_minor: "1".into(),
            samples: 0,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = 0;
    loop {
        samples += 1;
        let point = random_point(&mut rng, m.rows());
        let profile = rank_profile(m.evaluate(&point).expect("point has ring length"));
        assert!(profile.rank() <= upper, "sampled rank exceeds module rank");
        if profile.rank() == upper {
            let minor = determinant(&m.submatrix(&profile.rows, &profile.cols));
            assert!(!minor.is_zero(), "witness minor vanished symbolically");
            return GenericRank {
                rank: upper,
                witness_rows: profile.rows,
                witness_cols: profile.cols,
                witness_minor: minor.to_string(),
                samples,
            };
        }
    }
}

/// Whether `point` lies in `V(I^{<l})`, i.e. the matrix drops below rank `l` there.
pub fn rank_below(m: &FieldMatrix, point: &[Rational], l: usize) -> Result<bool> {
    Ok(m.numeric_rank(point)? < l)
}
