//! Submodules of `R[x]^n` generated by vector fields, and the ascending
//! chain of bracket modules whose stabilisation bounds the index.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::groebner::Groebner;
use crate::lie::{lie_bracket, Mode, SystemSpec, VectorField};
use crate::poly::{Polynomial, Ring};

/// Module generated by a list of vector fields, with a lazily computed
/// position-over-term Gröbner basis.
#[derive(Clone, Debug)]
pub struct PolySubmodule {
    ring: Ring,
    gens: Vec<VectorField>,
    gb: OnceLock<Arc<Groebner>>,
}

impl PolySubmodule {
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = VectorField>) -> Self {
        PolySubmodule {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank_of_ambient(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[VectorField] {
        &self.gens
    }

    pub fn groebner(&self) -> &Groebner {
        self.gb.get_or_init(|| {
            Arc::new(Groebner::from_generators(
                &self.ring,
                self.ring.nvars(),
                self.gens.iter().map(VectorField::to_vector),
            ))
        })
    }

    pub fn member(&self, x: &VectorField) -> bool {
        x.is_zero() || self.groebner().contains(&x.to_vector())
    }

    /// `other ⊆ self`.
    pub fn contains_module(&self, other: &PolySubmodule) -> bool {
        other.gens.iter().all(|g| self.member(g))
    }

    /// Reduced basis as lists of components.
    pub fn reduced_basis(&self) -> Vec<Vec<Polynomial>> {
        let n = self.ring.nvars();
        self.groebner()
            .reduced()
            .iter()
            .map(|v| v.to_polys(&self.ring, n))
            .collect()
    }

    /// Rank over the fraction field: the number of leading positions.
    pub fn generic_rank(&self) -> usize {
        self.groebner().lead_positions().len()
    }
}

/// Equal iff the reduced bases coincide.
pub fn module_equal(a: &PolySubmodule, b: &PolySubmodule) -> bool {
    assert!(a.ring == b.ring, "modules over different rings");
    a.groebner().reduced() == b.groebner().reduced()
}

/// One depth of the module chain.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub depth: usize,
    /// Nonzero brackets formed at this depth (the seeds at depth 0).
    pub candidates: usize,
    /// Labels of the fields that enlarged the module.
    pub accepted: Vec<String>,
    /// Module generators kept so far.
    pub generators: usize,
    /// Size of the module Gröbner basis.
    pub basis_size: usize,
    /// Rank of the module over the fraction field.
    pub generic_rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "depth", rename_all = "snake_case")]
pub enum ChainStatus {
    /// `C#k = C#(k+1)` at this depth.
    Stabilized(usize),
    /// The module still grew at the cap.
    CapReached(usize),
}

/// Incremental chain `C#0 ⊆ C#1 ⊆ ...` of modules generated by the
/// bracket families. Only fields that enlarge the module are kept; brackets
/// are taken of those fields alone, which spans the same modules.
#[derive(Clone, Debug)]
pub struct ModuleChain {
    mode: Mode,
    depth: usize,
    gb: Groebner,
    gens: Vec<VectorField>,
    depths: Vec<usize>,
    frontier_start: usize,
    trace: Vec<ChainStep>,
    closed: bool,
}

impl ModuleChain {
    pub fn new(sys: &SystemSpec, mode: Mode) -> Self {
        let n = sys.nvars();
        let mut chain = ModuleChain {
            mode,
            depth: 0,
            gb: Groebner::new(sys.ring(), n),
            gens: Vec::new(),
            depths: Vec::new(),
            frontier_start: 0,
            trace: Vec::new(),
            closed: false,
        };
        let seeds: Vec<VectorField> = sys.seeds(mode).into_iter().filter(|s| !s.is_zero()).collect();
        let count = seeds.len();
        let accepted = chain.offer(seeds);
        chain.record(count, accepted);
        chain
    }

    fn offer(&mut self, fields: Vec<VectorField>) -> Vec<String> {
        let mut accepted = Vec::new();
        for field in fields {
            if self.gb.add(field.to_vector()) {
                self.gb.complete();
                accepted.push(field.label().to_string());
                self.gens.push(field);
                self.depths.push(self.depth);
            }
        }
        accepted
    }

    fn record(&mut self, candidates: usize, accepted: Vec<String>) {
        self.trace.push(ChainStep {
            depth: self.depth,
            candidates,
            accepted,
            generators: self.gens.len(),
            basis_size: self.gb.size(),
            generic_rank: self.gb.lead_positions().len(),
        });
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Depth of the current module.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Generators of the current module, in acceptance order.
    pub fn generators(&self) -> &[VectorField] {
        &self.gens
    }

    /// Generators of `C#k` for an already computed depth `k`.
    pub fn generators_up_to(&self, k: usize) -> Vec<VectorField> {
        self.gens
            .iter()
            .zip(&self.depths)
            .filter(|(_, d)| **d <= k)
            .map(|(g, _)| g.clone())
            .collect()
    }

    pub fn groebner(&self) -> &Groebner {
        &self.gb
    }

    pub fn generic_rank(&self) -> usize {
        self.gb.lead_positions().len()
    }

    pub fn trace(&self) -> &[ChainStep] {
        &self.trace
    }

    /// True once a step added nothing, so the module is closed under every `ad_X`.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn module(&self) -> PolySubmodule {
        PolySubmodule::new(self.gb.ring(), self.gens.clone())
    }

    /// Brackets the newest generators with every operator. Returns whether
    /// the module grew; if not, the chain has stabilised at the current depth.
    pub fn step(&mut self, sys: &SystemSpec) -> bool {
        if self.closed {
            return false;
        }
        let frontier: Vec<VectorField> = self.gens[self.frontier_start..].to_vec();
        let mut candidates = Vec::new();
        for x in sys.operators() {
            for h in &frontier {
                let b = lie_bracket(x, h).expect("system and chain share a ring");
                if !b.is_zero() {
                    candidates.push(b);
                }
            }
        }
        // decide closure before committing to a new depth
        let grows = candidates.iter().any(|c| !self.gb.contains(&c.to_vector()));
        if !grows {
            self.closed = true;
            return false;
        }
        self.depth += 1;
        self.frontier_start = self.gens.len();
        let count = candidates.len();
        let accepted = self.offer(candidates);
        self.record(count, accepted);
        true
    }

    /// Runs to stabilisation or until the module of depth `cap` is built
    /// and still grows.
    pub fn run(&mut self, sys: &SystemSpec, cap: usize) -> ChainStatus {
        loop {
            if self.depth >= cap {
                // one more test decides whether the cap depth is already closed
                let frontier: Vec<VectorField> = self.gens[self.frontier_start..].to_vec();
                let closed = sys.operators().iter().all(|x| {
                    frontier.iter().all(|h| {
                        let b = lie_bracket(x, h).expect("shared ring");
                        self.gb.contains(&b.to_vector())
                    })
                });
                if closed {
                    self.closed = true;
                    return ChainStatus::Stabilized(self.depth);
                }
                return ChainStatus::CapReached(cap);
            }
            if !self.step(sys) {
                return ChainStatus::Stabilized(self.depth);
            }
        }
    }

    /// Closure certificate: every bracket of a generator with an operator
    /// lies in the module.
    pub fn verify_closed(&self, sys: &SystemSpec) -> bool {
        sys.operators().iter().all(|x| {
            self.gens.iter().all(|h| {
                let b = lie_bracket(x, h).expect("shared ring");
                self.gb.contains(&b.to_vector())
            })
        })
    }
}

/// Result of [`stabilize_chain`].
#[derive(Clone, Debug)]
pub struct Stabilized {
    pub status: ChainStatus,
    pub chain: ModuleChain,
}

impl Stabilized {
    /// `k̂` when the chain stabilised.
    pub fn bound(&self) -> Option<usize> {
        match self.status {
            ChainStatus::Stabilized(k) => Some(k),
            ChainStatus::CapReached(_) => None,
        }
    }
}

/// Smallest `k̂` with `C#k̂ = C#(k̂+1)`, or the cap.
pub fn stabilize_chain(sys: &SystemSpec, mode: Mode, cap: usize) -> Stabilized {
    let mut chain = ModuleChain::new(sys, mode);
    let status = chain.run(sys, cap);
    Stabilized { status, chain }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unicycle() -> SystemSpec {
        let r = Ring::with_names(["z1", "z2", "z3", "z4", "z5"]).unwrap();
        SystemSpec::new(
            &r,
            VectorField::zero(&r, "f"),
            vec![
                VectorField::parse(&r, "g1", &["z5", "z4", "0", "0", "0"]).unwrap(),
                VectorField::parse(&r, "g2", &["0", "0", "1", "z5", "-z4"]).unwrap(),
            ],
        )
        .unwrap()
    }

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
    fn membership_examples() {
        let sys = unicycle();
        let g = sys.inputs();
        let b = lie_bracket(&g[0], &g[1]).unwrap();
        let m = PolySubmodule::new(sys.ring(), [g[0].clone(), g[1].clone(), b.clone()]);
        assert!(m.member(&g[0]));
        assert!(m.member(&lie_bracket(&g[1], &b).unwrap()));
        let bigger = PolySubmodule::new(
            sys.ring(),
            [g[0].clone(), g[1].clone(), b.clone(), lie_bracket(&g[1], &b).unwrap()],
        );
        assert!(module_equal(&m, &bigger));
        let with_zero = PolySubmodule::new(sys.ring(), [g[0].clone(), VectorField::zero(sys.ring(), "0")]);
        assert!(module_equal(&with_zero, &PolySubmodule::new(sys.ring(), [g[0].clone()])));

        let r = Ring::with_names(["x1", "x2"]).unwrap();
        let m = PolySubmodule::new(&r, [VectorField::parse(&r, "a", &["x1", "0"]).unwrap()]);
        assert!(!m.member(&VectorField::parse(&r, "b", &["0", "1"]).unwrap()));
    }

    #[test]
    fn unicycle_stabilizes_at_one() {
        let sys = unicycle();
        let s = stabilize_chain(&sys, Mode::Accessibility, 10);
        assert_eq!(s.status, ChainStatus::Stabilized(1));
        assert!(s.chain.verify_closed(&sys));
        assert_eq!(s.chain.generators().len(), 3);
    }

    #[test]
    fn ex41_chain() {
        let sys = ex41();
        let s = stabilize_chain(&sys, Mode::Accessibility, 10);
        let k = s.bound().unwrap();
        assert!(k >= 2);
        assert!(s.chain.verify_closed(&sys));
        let c1 = PolySubmodule::new(sys.ring(), s.chain.generators_up_to(1));
        let c2 = PolySubmodule::new(sys.ring(), s.chain.generators_up_to(2));
        assert!(c2.contains_module(&c1));
        assert!(!module_equal(&c1, &c2));
        // capped run reports the cap instead of a bound
        let capped = stabilize_chain(&sys, Mode::Accessibility, 1);
        assert_eq!(capped.status, ChainStatus::CapReached(1));
    }
}
