//! Acceptance suite: one line per criterion, then a non-zero exit if any
//! criterion failed. Runs without the libtest harness so the lines show up
//! in plain `cargo test` output.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use accessibility::analysis::{
    algorithm1, algorithm2, planar_bound, rank_l_analysis, same_variety, sample_check, IndexKind, Options,
};
use accessibility::cli::{self, Flags};
use accessibility::ideal::{ideal_equal, radical_equal, Ideal, RealRadical};
use accessibility::immersion::{pull_back_singular, verify_immersion, Emptiness, Grade};
use accessibility::lie::{lie_bracket, lie_derivative, Mode, SystemSpec, VectorField};
use accessibility::module::stabilize_chain;
use accessibility::poly::{Polynomial, Rational};
use accessibility::sysfile::{Model, SystemFile};
use common::{load, random_poly, random_system, ring, system_file};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_EX41: Duration = Duration::from_secs(1);
const BUDGET_EX31: Duration = Duration::from_secs(10);
const BUDGET_UNICYCLE: Duration = Duration::from_secs(5);
const BUDGET_PENDULUM: Duration = Duration::from_secs(600);
/// Points for the sampling fallback of the cylinder comparison.
const EX31_SAMPLES: usize = 200;
const RANDOM_SYSTEMS: usize = 20;
/// Seeds tried before giving up on collecting enough completed systems.
const RANDOM_SEED_LIMIT: u64 = 400;
const TRIPLES: usize = 100;
const ORACLE_POINTS: usize = 50;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ideal(sys: &SystemSpec, gens: &[&str]) -> Ideal {
    Ideal::parse(sys.ring(), gens).unwrap()
}

fn from_strings(sys: &SystemSpec, gens: &[String]) -> Ideal {
    Ideal::new(sys.ring(), gens.iter().map(|g| sys.ring().parse(g).unwrap()))
}

fn model(name: &str) -> Model {
    SystemFile::parse(&system_file(name)).unwrap().load(None).unwrap()
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < budget, format!("took {t:.2?}, budget {budget:?}"))?;
    Ok(t)
}

fn c1_two_state_index() -> Outcome {
    let sys = load("ex41.sys");
    let start = Instant::now();
    let rep = algorithm1(&sys, Mode::Accessibility, &Options::default()).map_err(|e| e.to_string())?;
    let t = within(start, BUDGET_EX41)?;
    ensure(rep.index_kind == IndexKind::ExactR && rep.index_value == Some(2), format!("index {:?}", rep.index_value))?;
    let s = rep.singular_ideal.as_ref().ok_or("no singular ideal")?;
    ensure(ideal_equal(s, &ideal(&sys, &["x1", "x2"])), "singular ideal is not <x1, x2>")?;
    Ok(format!("r* = 2, singular ideal <x1, x2>, {t:.2?}"))
}

fn c2_two_state_ledger() -> Outcome {
    let sys = load("ex41.sys");
    let rep = algorithm1(&sys, Mode::Accessibility, &Options::default()).map_err(|e| e.to_string())?;
    let expected: [(Option<&[&str]>, &[&str]); 3] = [
        (Some(&["x1^2*x2"]), &["x1*x2"]),
        (Some(&["x1^2*x2", "x1*x2^2", "x1^4"]), &["x1"]),
        (None, &["x1", "x2"]),
    ];
    ensure(rep.depths.len() == 3, format!("{} depths recorded", rep.depths.len()))?;
    for (rec, (minors, radical)) in rep.depths.iter().zip(expected) {
        if let Some(m) = minors {
            ensure(
                ideal_equal(&from_strings(&sys, &rec.minor_ideal), &ideal(&sys, m)),
                format!("I_M{} = {:?}", rec.depth, rec.minor_ideal),
            )?;
        }
        let rr = rec.real_radical.as_ref().ok_or(format!("no real radical at depth {}", rec.depth))?;
        ensure(
            ideal_equal(&from_strings(&sys, rr), &ideal(&sys, radical)),
            format!("real radical at depth {} = {rr:?}", rec.depth),
        )?;
    }
    Ok("I_M0, I_M1 and the real radicals at depths 0..2 match".into())
}

fn c3_closure_rounds() -> Outcome {
    let sys = load("ex42.sys");
    let rep = algorithm2(&sys, Mode::Accessibility, &Options::default()).map_err(|e| e.to_string())?;
    ensure(rep.closure_rounds.len() == 2, format!("{} rounds", rep.closure_rounds.len()))?;
    let s = rep.singular_ideal.as_ref().ok_or("no singular ideal")?;
    let want = ideal(&sys, &["x1^2*x2", "x1*x2^2", "x1^4", "x2^3"]);
    ensure(ideal_equal(s, &want), "closure differs")?;
    ensure(s.is_invariant(&sys.operators()).holds(), "closure not invariant")?;
    Ok("two rounds to <x1^2 x2, x1 x2^2, x1^4, x2^3>, invariant".into())
}

fn c4_cylinder() -> Outcome {
    let sys = load("ex31.sys");
    let start = Instant::now();
    let rep = algorithm2(&sys, Mode::Accessibility, &Options::default()).map_err(|e| e.to_string())?;
    let s = rep.singular_ideal.clone().ok_or("no singular ideal")?;
    let want = ideal(&sys, &["x2^2 + x3^2 - 1"]);
    let how = match s.real_radical_restricted() {
        RealRadical::Computed(rr) => {
            ensure(ideal_equal(&rr, &want), format!("real radical {rr:?}"))?;
            "real radicals equal".to_string()
        }
        RealRadical::Unsupported(_) => {
            let (same, how) = same_variety(&s, &want, &sys, 31);
            ensure(same, format!("sampling disagreement ({how})"))?;
            let points: usize = how
                .split_whitespace()
                .find_map(|w| w.parse().ok())
                .unwrap_or(0);
            ensure(points >= EX31_SAMPLES, format!("only {points} sample points"))?;
            how
        }
    };
    let t = within(start, BUDGET_EX31)?;
    Ok(format!("V(x2^2 + x3^2 - 1), {how}, {t:.2?}"))
}

fn c5_unicycle() -> Outcome {
    let start = Instant::now();
    let m = model("unicycle.sys");
    let imm = m.immersion.as_ref().unwrap();
    let v = verify_immersion(&m.source, &imm.map, imm.claimed.as_ref().unwrap());
    ensure(v.holds, format!("immersion check failed: {:?}", v.witness))?;
    let sys = &m.system;
    let st = stabilize_chain(sys, Mode::Accessibility, 2 * sys.nvars());
    ensure(st.bound() == Some(1), format!("k̂ = {:?}", st.status))?;
    let rep = rank_l_analysis(sys, 3, Mode::Accessibility, &Options::default()).map_err(|e| e.to_string())?;
    let s = rep.singular_ideal.as_ref().ok_or("no singular ideal")?;
    ensure(ideal_equal(s, &ideal(sys, &["z4^2 + z5^2"])), "I^<3 differs")?;
    let pb = pull_back_singular(&imm.map, s, 5);
    ensure(
        matches!(pb.emptiness, Emptiness::Empty { grade: Grade::AlgebraicProof, .. }),
        format!("{:?}", pb.emptiness),
    )?;
    let doc = cli::run(cli::Command::Rank { l: 3 }, &system_file("unicycle.sys"), &Flags::default())
        .map_err(|e| e.to_string())?;
    let text = doc.to_text();
    ensure(text.contains("accessible everywhere") && !text.contains("not accessible"), text.clone())?;
    let t = within(start, BUDGET_UNICYCLE)?;
    Ok(format!("k̂ = 1, I^<3 = <z4^2 + z5^2>, empty at grade algebraic proof, {t:.2?}"))
}

fn c6_pendulum() -> Outcome {
    let start = Instant::now();
    let m = model("pendulum.sys");
    let sys = &m.system;
    let imm = m.immersion.as_ref().unwrap();
    let st = stabilize_chain(sys, Mode::Accessibility, 8);
    let ranks: Vec<String> = st.chain.trace().iter().map(|s| format!("{}:{}", s.depth, s.generic_rank)).collect();
    // k̂ = 5 means C#5 = C#6: depth 6 is the first that adds nothing
    ensure(st.bound() == Some(5), format!("chain status {:?}, ranks {}", st.status, ranks.join(" ")))?;
    let rep = rank_l_analysis(sys, 4, Mode::Accessibility, &Options::default()).map_err(|e| e.to_string())?;
    let s = rep.singular_ideal.as_ref().ok_or("no singular ideal")?;
    ensure(
        radical_equal(s, &ideal(sys, &["z4*z6*z7", "z5*z7"])),
        "singular set differs from V(z4 z6 z7, z5 z7)",
    )?;
    let pb = pull_back_singular(&imm.map, s, 5);
    let target = ideal(sys, &["z4", "z5"]).sum(imm.map.relations());
    ensure(radical_equal(&pb.ideal, &target), "pull-back is not z4 = z5 = 0 on im T")?;
    ensure(matches!(pb.emptiness, Emptiness::NonEmpty { .. }), "pull-back reported empty")?;
    let t = within(start, BUDGET_PENDULUM)?;
    Ok(format!(
        "chain ranks {}, stabilised C#5 = C#6, V(z4 z6 z7, z5 z7), pull-back z4 = z5 = 0, {t:.2?}",
        ranks.join(" ")
    ))
}

fn c7_bound_dominance() -> Outcome {
    let opts = Options::default();
    let check = |sys: &SystemSpec| -> Result<Option<(usize, usize)>, String> {
        let rep = algorithm1(sys, Mode::Accessibility, &opts).map_err(|e| e.to_string())?;
        let (IndexKind::ExactR, Some(r)) = (rep.index_kind, rep.index_value) else {
            return Ok(None);
        };
        let Some(k) = stabilize_chain(sys, Mode::Accessibility, opts.cap(sys)).bound() else {
            return Ok(None);
        };
        ensure(k >= r, format!("k̂ = {k} < r* = {r} for {sys:?}"))?;
        Ok(Some((r, k)))
    };
    ensure(check(&load("ex41.sys"))?.is_some(), "two-state example did not complete")?;
    let mut done = 0;
    let mut tried = 0;
    let mut strict = 0;
    for seed in 0..RANDOM_SEED_LIMIT {
        if done >= RANDOM_SYSTEMS {
            break;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        let deg = rng.gen_range(1..=3);
        let sys = random_system(&mut rng, n, m, deg);
        tried += 1;
        if let Some((r, k)) = check(&sys)? {
            done += 1;
            strict += (k > r) as usize;
        }
    }
    ensure(done >= RANDOM_SYSTEMS, format!("only {done} of {tried} random systems completed"))?;
    Ok(format!("k̂ ≥ r* on the two-state example and {done} random systems ({tried} tried, {strict} strict)"))
}

fn c8_planar_bound() -> Outcome {
    let sys = load("ex41.sys");
    let rep = algorithm1(&sys, Mode::Accessibility, &Options::default()).map_err(|e| e.to_string())?;
    ensure(planar_bound(&sys) == Some(22), format!("{:?}", planar_bound(&sys)))?;
    ensure(rep.planar_bound == Some(22) && rep.index_value == Some(2), "report lacks the bound")?;
    let doc = cli::run(cli::Command::Index, &system_file("ex41.sys"), &Flags::default()).map_err(|e| e.to_string())?;
    ensure(doc.to_text().contains("index 2 ≤ 22"), "text report lacks the comparison")?;
    Ok("r* = 2 ≤ 22 = 6d^2 - 2d + 2".into())
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, label: &str) -> VectorField {
    let r = ring(n);
    let comps = (0..n).map(|_| random_poly(rng, &r, 3, 3)).collect();
    VectorField::new(&r, label, comps).unwrap()
}

fn c9_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let br = |a: &VectorField, b: &VectorField| lie_bracket(a, b).unwrap();
    for t in 0..TRIPLES {
        let n = rng.gen_range(1..=4);
        let (f, g, h) = (random_field(&mut rng, n, "f"), random_field(&mut rng, n, "g"), random_field(&mut rng, n, "h"));
        let r = ring(n);
        let (p1, p2): (Polynomial, Polynomial) = (random_poly(&mut rng, &r, 2, 3), random_poly(&mut rng, &r, 2, 3));
        let c = Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into());
        let minus_one = Rational::from_integer((-1).into());
        ensure(br(&f, &g) == br(&g, &f).scale(&minus_one), format!("antisymmetry fails on triple {t}"))?;
        let lhs = br(&f.scale(&c).add(&h).unwrap(), &g);
        let rhs = br(&f, &g).scale(&c).add(&br(&h, &g)).unwrap();
        ensure(lhs == rhs, format!("bilinearity fails on triple {t}"))?;
        let lhs = br(&f.mul_poly(&p1).unwrap(), &g.mul_poly(&p2).unwrap());
        let rhs = br(&f, &g)
            .mul_poly(&(&p1 * &p2))
            .unwrap()
            .add(&g.mul_poly(&(&lie_derivative(&f, &p2).unwrap() * &p1)).unwrap())
            .unwrap()
            .sub(&f.mul_poly(&(&lie_derivative(&g, &p1).unwrap() * &p2)).unwrap())
            .unwrap();
        ensure(lhs == rhs, format!("product rule fails on triple {t}"))?;
        let jacobi = br(&f, &br(&g, &h))
            .add(&br(&g, &br(&h, &f)))
            .unwrap()
            .add(&br(&h, &br(&f, &g)))
            .unwrap();
        ensure(jacobi.is_zero(), format!("Jacobi fails on triple {t}"))?;
    }
    Ok(format!("antisymmetry, bilinearity, product rule and Jacobi on {TRIPLES} triples"))
}

fn c10_oracle() -> Outcome {
    let opts = Options::default();
    let mut lines = Vec::new();
    for name in ["ex41.sys", "ex42.sys", "ex31.sys", "unicycle.sys", "sincos.sys", "pendulum.sys"] {
        let m = model(name);
        let sys = &m.system;
        let rep = if m.immersion.is_some() {
            let l = m.source.ring.nvars();
            rank_l_analysis(sys, l, Mode::Accessibility, &opts)
        } else if name == "ex42.sys" {
            algorithm2(sys, Mode::Accessibility, &opts)
        } else {
            algorithm1(sys, Mode::Accessibility, &opts)
        }
        .map_err(|e| e.to_string())?;
        let d = sample_check(&rep, sys, ORACLE_POINTS, &opts);
        ensure(d.points >= ORACLE_POINTS, format!("{name}: {} points", d.points))?;
        ensure(d.mismatches.is_empty(), format!("{name}: mismatches at {:?}", d.mismatches))?;
        lines.push(format!("{name} {}/{}", d.on_variety, d.points));
    }
    Ok(format!("zero mismatches (on variety/points: {})", lines.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("two-state example: exact index and singular set", c1_two_state_index),
        ("two-state example: intermediate minor ideals and real radicals", c2_two_state_ledger),
        ("invariant closure in two rounds", c3_closure_rounds),
        ("three-state example: singular set is the cylinder", c4_cylinder),
        ("unicycle accessible everywhere", c5_unicycle),
        ("pendulum chain, singular set and pull-back", c6_pendulum),
        ("bound dominance k̂ ≥ r*", c7_bound_dominance),
        ("planar comparison bound", c8_planar_bound),
        ("bracket identities", c9_identities),
        ("numeric rank oracle", c10_oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{:.2?}]", i + 1, start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{:.2?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
