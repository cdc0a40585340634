//! Acceptance criteria 1 to 10, one line each. Runs without the libtest harness
//! so the lines always reach stdout.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use starlab::analysis::AnalysisConfig;
use starlab::check::CheckConfig;
use starlab::decomposition::{decompositions, verify, DecompositionKind};
use starlab::equivalence::{perp_cancellation_failure, projection_closure_collision, Equivalence, EquivalenceSuite};
use starlab::fuzz::fuzz;
use starlab::gallery::gallery;
use starlab::polarity::{closed_lattice, OrthoSystem, RelationKind, DEFAULT_LATTICE_CAP};
use starlab::semigroup::{from_spec, gen_boolean_matrices, gen_matrix_ring, gen_zn_mult, power_product_zero_pattern, validate};
use starlab::structure::structure_checks;
use starlab::subsets::{correspondence_hereditary, correspondence_rooted_ideals, positive_part_inclusion_check, Enumeration};
use starlab::{ElementSubset, StarSemigroup};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn instances() -> Vec<(&'static str, StarSemigroup)> {
    gallery().iter().map(|e| (e.spec, e.build().expect("gallery builds"))).collect()
}

fn system(s: &StarSemigroup) -> OrthoSystem {
    OrthoSystem::build(s, DEFAULT_LATTICE_CAP).expect("lattices build")
}

// Brute-force oracles over bitmasks, independent of the library's lattice code.

fn mask(t: &ElementSubset) -> u64 {
    t.iter().fold(0, |m, x| m | 1 << x)
}

fn perp_polar(s: &StarSemigroup, t: u64) -> u64 {
    let z = s.zero();
    (0..s.len())
        .filter(|&x| (0..s.len()).filter(|&y| t >> y & 1 == 1).all(|y| s.mul(y, s.star(x)) == z && s.mul(y, x) == z))
        .fold(0, |m, x| m | 1 << x)
}

struct Oracle {
    family: HashSet<u64>,
    singleton_polars: HashSet<u64>,
    sim: HashSet<(u64, u64)>,
}

impl Oracle {
    fn new(s: &StarSemigroup) -> Oracle {
        let n = s.len();
        let family = (0..1u64 << n).map(|t| perp_polar(s, t)).collect();
        let singleton_polars = (0..n).map(|x| perp_polar(s, 1 << x)).collect();
        let cl = |x: usize| perp_polar(s, perp_polar(s, 1 << x));
        let sim = (0..n).map(|x| (cl(x), cl(s.star(x)))).collect();
        Oracle { family, singleton_polars, sim }
    }

    fn reflexive(&self) -> bool {
        self.family.iter().all(|a| self.singleton_polars.contains(a))
    }

    fn below(&self, a: u64, b: u64) -> bool {
        self.family.iter().any(|&c| c & !b == 0 && self.sim.contains(&(a, c)))
    }
}

fn criterion_1() -> Outcome {
    let v = power_product_zero_pattern(6).map_err(|e| e.to_string())?;
    let zero_at: Vec<usize> = v.iter().enumerate().filter(|(_, &z)| z).map(|(n, _)| n).collect();
    ensure(zero_at == [1], || format!("q p^n s = 0 exactly at n in {zero_at:?}"))?;
    Ok("q p^n s = 0 only at n = 1 for n = 0..6".into())
}

fn squarefree(n: usize) -> bool {
    (2..=n).take_while(|p| p * p <= n).all(|p| n % (p * p) != 0)
}

fn criterion_2() -> Outcome {
    let mut gens: Vec<StarSemigroup> = (2..=30).map(|n| gen_zn_mult(n).unwrap()).collect();
    gens.push(gen_boolean_matrices(2).unwrap());
    gens.push(gen_boolean_matrices(3).unwrap());
    gens.push(gen_matrix_ring(2, 2).unwrap());
    for s in &gens {
        validate(s.to_raw()).map_err(|e| format!("{}: {e}", s.name()))?;
    }
    for n in 1..=100 {
        let proper = gen_zn_mult(n).unwrap().is_proper().proper;
        ensure(proper == squarefree(n), || format!("Z_{n}: proper = {proper}"))?;
    }
    Ok(format!("{} generated instances validate; Z_n proper iff squarefree for n <= 100", gens.len()))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for (spec, s) in instances().into_iter().filter(|(_, s)| s.len() <= 12) {
        let rooted = correspondence_rooted_ideals(&s, Enumeration::Exhaustive).map_err(|e| e.to_string())?;
        let hered = correspondence_hereditary(&s, Enumeration::Exhaustive).map_err(|e| e.to_string())?;
        let pos = positive_part_inclusion_check(&s, Enumeration::Exhaustive).map_err(|e| e.to_string())?;
        for r in [&rooted.check, &hered.check, &pos] {
            ensure(r.passed(), || format!("{spec}: {r}"))?;
        }
        count += 1;
    }
    Ok(format!("both correspondences and the positive-part check pass exhaustively on {count} instances"))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for (spec, s) in instances().into_iter().filter(|(_, s)| s.is_proper().proper) {
        let sys = system(&s);
        for p in [&sys.perp, &sys.left, &sys.right, &sys.nabla, &sys.bot4] {
            ensure(p.axioms_verified(), || format!("{spec}: {} axioms not asserted", p.kind()))?;
        }
        let cfg = CheckConfig::default();
        for r in [sys.polar_laws_check(cfg.samples, cfg.seed), sys.left_annihilator_isomorphism_check()] {
            ensure(r.passed(), || format!("{spec}: {r}"))?;
        }
        count += 1;
    }
    Ok(format!("lattice axioms, both-sided polar laws and left/two-sided correspondence pass on {count} proper instances"))
}

const Z6_DOT: &str = "digraph lattice {
  label=\"perp\";
  rankdir=BT;
  node [shape=box];
  n0 [label=\"{0}\"];
  n1 [label=\"{0,3}\"];
  n2 [label=\"{0,2,4}\"];
  n3 [label=\"{0,1,2,3,4,5}\"];
  n0 -> n1;
  n0 -> n2;
  n1 -> n3;
  n2 -> n3;
}
";

fn criterion_5() -> Outcome {
    let s = gen_zn_mult(6).unwrap();
    let p = closed_lattice(&s, RelationKind::Perp, DEFAULT_LATTICE_CAP).map_err(|e| e.to_string())?;
    let l = p.lattice();
    let sets: HashSet<Vec<usize>> = l.sets().iter().map(|x| x.to_vec()).collect();
    let expected: HashSet<Vec<usize>> = [vec![0], vec![0, 2, 4], vec![0, 3], vec![0, 1, 2, 3, 4, 5]].into_iter().collect();
    ensure(sets == expected, || format!("closed sets {sets:?}"))?;
    ensure(l.is_orthomodular() && l.is_modular(), || "not orthomodular and modular".into())?;
    ensure(l.centre().len() == 4, || "centre is not the whole lattice".into())?;
    ensure(l.to_dot() == Z6_DOT, || format!("DOT differs:\n{}", l.to_dot()))?;
    let again = closed_lattice(&s, RelationKind::Perp, DEFAULT_LATTICE_CAP).unwrap();
    ensure(again.lattice().to_dot() == Z6_DOT, || "DOT not stable".into())?;
    Ok("4 closed sets, orthomodular, modular, full centre, golden DOT".into())
}

fn criterion_6() -> Outcome {
    let (mut pass, mut unmet) = (0, 0);
    for (spec, s) in instances() {
        let sys = system(&s);
        for r in structure_checks(&sys, &CheckConfig::default()).map_err(|e| format!("{spec}: {e}"))? {
            ensure(!r.failed(), || format!("{spec}: {r}"))?;
            if r.passed() {
                pass += 1;
            } else {
                unmet += 1;
            }
        }
    }
    Ok(format!("no failures across the gallery ({pass} passes, {unmet} gated)"))
}

const REFLEXIVE_GATED: &[&str] = &[
    "divisibility",
    "central cutdowns",
    "perspectivity implies equivalence",
    "mutual subequivalence",
    "generalized comparability",
    "equivalence restricts to annihilators",
    "modularity from finiteness",
];

const ALWAYS_ON_PROPER: &[&str] = &[
    "equivalence witnesses",
    "reflexivity criterion",
    "transitivity of equivalence and subequivalence",
    "product closure identities",
    "equivalence respects nabla polars",
];

fn criterion_7() -> Outcome {
    let cfg = CheckConfig::default();
    let (mut pass, mut unmet, mut oracles) = (0, 0, 0);
    for (spec, s) in instances() {
        let sys = system(&s);
        let fam = starlab::structure::StructureFamilies::collect(&sys, &cfg).map_err(|e| e.to_string())?;
        let suite = EquivalenceSuite::new(&sys, &cfg).map_err(|e| e.to_string())?;
        let (_, checks) = starlab::equivalence::equivalence_checks(&suite, &cfg, &fam).map_err(|e| format!("{spec}: {e}"))?;
        let proper = sys.is_proper();
        for r in &checks {
            ensure(!r.failed(), || format!("{spec}: {r}"))?;
            if ALWAYS_ON_PROPER.contains(&r.name.as_str()) && proper {
                ensure(r.passed(), || format!("{spec}: {r}"))?;
            }
            if !proper && r.name != "equivalence witnesses" {
                ensure(r.hypothesis_not_met(), || format!("{spec}: {} ran on a non-proper semigroup", r.name))?;
            }
            if proper && !suite.eq.is_reflexive() && REFLEXIVE_GATED.contains(&r.name.as_str()) {
                ensure(r.hypothesis_not_met(), || format!("{spec}: {} passed without reflexivity", r.name))?;
            }
            if r.passed() {
                pass += 1;
            } else {
                unmet += 1;
            }
        }
        if proper && s.len() <= 12 {
            let o = Oracle::new(&s);
            let eq = &suite.eq;
            let l = eq.lattice();
            let lib: HashSet<u64> = l.sets().iter().map(mask).collect();
            ensure(lib == o.family, || format!("{spec}: *-annihilator family differs from brute force"))?;
            ensure(eq.is_reflexive() == o.reflexive(), || format!("{spec}: reflexivity differs from brute force"))?;
            for a in 0..l.len() {
                for b in 0..l.len() {
                    let (ma, mb) = (mask(l.set(a)), mask(l.set(b)));
                    ensure(eq.related(a, b) == o.sim.contains(&(ma, mb)), || format!("{spec}: ~ differs at {a},{b}"))?;
                    ensure(eq.below(a, b) == o.below(ma, mb), || format!("{spec}: subequivalence differs at {a},{b}"))?;
                }
            }
            oracles += 1;
        }
    }
    Ok(format!("{pass} passes, {unmet} gated, no failures; relations match brute force on {oracles} instances"))
}

fn criterion_8() -> Outcome {
    let cfg = CheckConfig::default();
    let mut ran = Vec::new();
    for spec in ["matring:2,3", "znring:2", "znring:3", "znring:5", "znring:6", "znring:10", "znring:15", "znring:30"] {
        let s = from_spec(spec).unwrap();
        let sys = system(&s);
        let suite = EquivalenceSuite::new(&sys, &cfg).map_err(|e| e.to_string())?;
        let r = suite.ring_check();
        ensure(r.passed(), || format!("{spec}: {r}"))?;
        ran.push(spec);
    }
    for spec in ["znring:4", "matring:2,2"] {
        let s = from_spec(spec).unwrap();
        let sys = system(&s);
        let suite = EquivalenceSuite::new(&sys, &cfg).map_err(|e| e.to_string())?;
        ensure(suite.ring_check().hypothesis_not_met(), || format!("{spec}: ring check not gated"))?;
    }
    // the literal instance: M_2(Z_2) admits no proper involution, and the clauses fail there
    let m22 = gen_matrix_ring(2, 2).unwrap();
    ensure(!m22.is_proper().proper, || "M_2(Z_2) unexpectedly proper".into())?;
    let sys = system(&m22);
    let eq = Equivalence::new(&m22, &sys.perp).map_err(|e| e.to_string())?;
    let l = eq.lattice();
    let z = m22.zero();
    let (mut pairs, mut bad) = (0, 0);
    for a in m22.elements() {
        for b in m22.elements() {
            if m22.mul(m22.star(a), b) == z && m22.mul(m22.star(b), a) == z {
                pairs += 1;
                bad += (eq.closure_index(m22.add(a, b)) != l.join(eq.closure_index(a), eq.closure_index(b))) as usize;
            }
        }
    }
    let cancel = perp_cancellation_failure(&m22, &sys.perp).is_none();
    let inj = projection_closure_collision(&eq).is_none();
    Err(format!(
        "NOT MET AS WRITTEN: M_2(Z_2) is not proper and has no proper involution; ungated, the sum rule fails on {bad}/{pairs} pairs \
         (cancellative {cancel}, projection injective {inj}). Clauses pass exhaustively on {}",
        ran.join(", ")
    ))
}

fn criterion_9() -> Outcome {
    let cfg = CheckConfig::default();
    let mut found = 0;
    for (spec, s) in instances() {
        let sys = system(&s);
        let suite = EquivalenceSuite::new(&sys, &cfg).map_err(|e| e.to_string())?;
        let d = decompositions(&suite);
        for c in &d.checks {
            ensure(!c.failed(), || format!("{spec}: {c}"))?;
        }
        for r in &d.results {
            ensure(r.unique && verify(&suite, r).passed(), || format!("{spec}: {} not re-verified", r.kind))?;
        }
        for kind in DecompositionKind::ALL {
            let gate = sys.is_proper()
                && (!matches!(kind, DecompositionKind::TypeIII | DecompositionKind::Finite)
                    || (suite.eq.is_reflexive() && suite.additivity().nabla_additive()));
            let has = d.results.iter().any(|r| r.kind == kind);
            ensure(gate == has, || format!("{spec}: {kind} gate {gate} but result {has}"))?;
        }
        found += d.results.len();
    }
    Ok(format!("{found} decompositions found, all unique and re-verified"))
}

const UNCONDITIONAL: &[&str] = &[
    "closed lattice axioms",
    "transitivity of equivalence and subequivalence",
    "product closure identities",
    "equivalence respects nabla polars",
    "translation maps preserve joins",
    "complementary closures are equivalent",
    "reflexivity criterion",
    "left and two-sided annihilator lattices",
    "typeI decomposition",
    "typeI1 decomposition",
];

fn criterion_10() -> Outcome {
    let r = fuzz(1000, 6, 0, 1, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{} failures, first {:?}", r.failures.len(), r.failures.first()))?;
    ensure(r.proper > 0 && r.sizes.keys().all(|&n| n <= 6), || "bad instance mix".into())?;
    for name in UNCONDITIONAL {
        let rate = r.rates.get(*name).ok_or_else(|| format!("{name} never ran"))?;
        ensure(rate.pass == r.proper, || format!("{name} passed on {} of {} proper instances", rate.pass, r.proper))?;
    }
    Ok(format!("1000 instances ({} proper), sizes {:?}, no failures", r.proper, r.sizes))
}

fn main() {
    let criteria: [(u8, &str, Duration, fn() -> Outcome); 10] = [
        (1, "integer matrix counterexample", Duration::from_millis(1), criterion_1),
        (2, "gallery validity and properness", Duration::from_secs(5), criterion_2),
        (3, "subset correspondences", Duration::from_secs(30), criterion_3),
        (4, "lattice suite", Duration::from_secs(300), criterion_4),
        (5, "Z_6 golden lattice", Duration::from_millis(100), criterion_5),
        (6, "structure suite", Duration::from_secs(120), criterion_6),
        (7, "equivalence suite", Duration::from_secs(300), criterion_7),
        (8, "ring suite", Duration::from_secs(60), criterion_8),
        (9, "decompositions", Duration::from_secs(120), criterion_9),
        (10, "fuzz harness", Duration::from_secs(300), criterion_10),
    ];
    let mut failed = 0;
    for (n, title, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let slow = took > limit;
        let (status, detail) = match (&out, n) {
            (Ok(d), _) if !slow => ("PASS", d.clone()),
            (Ok(d), _) => ("FAIL", format!("over time limit; {d}")),
            (Err(d), 8) if d.starts_with("NOT MET AS WRITTEN") && !slow => ("NOT MET", d["NOT MET AS WRITTEN: ".len()..].to_string()),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {n:>2} {status:<7} {title}: {detail} [{took:.2?} / limit {limit:?}]");
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
