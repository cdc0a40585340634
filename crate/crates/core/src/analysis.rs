//! One-call analysis of a semigroup: every check family, the lattices, the
//! equivalence summary and the decompositions, gathered into a JSON report.

use std::time::Instant;

use serde::Serialize;

use crate::check::{CheckConfig, CheckResult, Outcome};
use crate::decomposition::{decompositions, Decompositions};
use crate::equivalence::{equivalence_checks, EquivalenceSuite, EquivalenceSummary};
use crate::error::Result;
use crate::polarity::{OrthoSystem, Polarity};
use crate::semigroup::{ElementClasses, Properness, StarSemigroup};
use crate::structure::{structure_checks_over, StructureFamilies};
use crate::subsets::{correspondence_hereditary, correspondence_rooted_ideals, positive_part_inclusion_check, subset_laws_check, Enumeration};

pub const SCHEMA_VERSION: u32 = 1;

/// Lattices larger than this skip the cubic modularity test.
const MODULARITY_CAP: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub checks: CheckConfig,
    /// Record wall-clock time per section (makes the report nondeterministic).
    pub timing: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            checks: CheckConfig::default(),
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SemigroupInfo {
    pub name: String,
    pub size: usize,
    pub zero: usize,
    pub commutative: bool,
    pub ring: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSummary {
    pub relation: String,
    pub size: usize,
    pub axioms_verified: bool,
    pub orthomodular: bool,
    /// `None` when the lattice is too large for the cubic test.
    pub modular: Option<bool>,
    pub centre_size: usize,
}

impl LatticeSummary {
    pub fn of(p: &Polarity) -> Self {
        let l = p.lattice();
        LatticeSummary {
            relation: p.kind().to_string(),
            size: l.len(),
            axioms_verified: p.axioms_verified(),
            orthomodular: l.is_orthomodular(),
            modular: (l.len() <= MODULARITY_CAP).then(|| l.is_modular()),
            centre_size: l.centre().len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Tallies {
    pub pass: usize,
    pub fail: usize,
    pub hypothesis_not_met: usize,
}

impl Tallies {
    fn add(&mut self, r: &CheckResult) {
        match r.outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail { .. } => self.fail += 1,
            Outcome::HypothesisNotMet { .. } => self.hypothesis_not_met += 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub section: String,
    pub millis: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub semigroup: SemigroupInfo,
    pub validation: &'static str,
    pub properness: Properness,
    pub element_classes: ElementClasses,
    pub lattices: Vec<LatticeSummary>,
    pub sections: Vec<Section>,
    pub equivalence: EquivalenceSummary,
    pub decompositions: Decompositions,
    pub totals: Tallies,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<Timing>>,
}

impl AnalysisReport {
    pub fn checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.sections.iter().flat_map(|s| s.checks.iter()).chain(self.decompositions.checks.iter())
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks().filter(|c| c.failed()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

// Instant::now panics on wasm32-unknown-unknown, so the clock is only read when timing is on.
struct Clock {
    start: Option<Instant>,
    out: Vec<Timing>,
}

impl Clock {
    fn lap(&mut self, section: &str) {
        if let Some(start) = self.start {
            let now = Instant::now();
            self.out.push(Timing {
                section: section.to_string(),
                millis: (now - start).as_secs_f64() * 1e3,
            });
            self.start = Some(now);
        }
    }
}

/// Subset correspondences and subset laws.
pub fn subset_section(s: &StarSemigroup, cfg: &CheckConfig) -> Result<Section> {
    let mode = Enumeration::auto(s.len(), cfg.exhaustive_cap, cfg.samples, cfg.seed);
    Ok(Section {
        name: "subsets".into(),
        checks: vec![
            correspondence_rooted_ideals(s, mode)?.check,
            correspondence_hereditary(s, mode)?.check,
            positive_part_inclusion_check(s, mode)?,
            subset_laws_check(s, cfg.samples, cfg.seed),
        ],
    })
}

/// Relations, polars and the five closed-set lattices.
pub fn lattice_section(sys: &OrthoSystem, cfg: &CheckConfig) -> Section {
    let mut axioms = crate::check::Tally::new();
    for p in [&sys.nabla, &sys.left, &sys.right, &sys.perp, &sys.bot4] {
        if sys.is_proper() {
            axioms.case(p.axioms_verified(), || format!("{} lattice axioms not verified", p.kind()));
        }
    }
    let axioms = if sys.is_proper() {
        axioms.finish("closed lattice axioms")
    } else {
        CheckResult::unmet("closed lattice axioms", vec!["semigroup is proper".into()])
    };
    Section {
        name: "lattices".into(),
        checks: vec![
            axioms,
            sys.relation_inclusions_check(),
            sys.zero_product_laws_check(),
            sys.left_annihilator_isomorphism_check(),
            sys.polar_laws_check(cfg.samples, cfg.seed),
            sys.nabla_sup_check(),
            sys.del_relation_check(),
        ],
    }
}

pub fn analyze(s: &StarSemigroup, cfg: &AnalysisConfig) -> Result<AnalysisReport> {
    let mut clock = Clock { start: cfg.timing.then(Instant::now), out: Vec::new() };
    let c = &cfg.checks;
    let mut sections = vec![subset_section(s, c)?];
    clock.lap("subsets");
    let sys = OrthoSystem::build(s, c.lattice_cap)?;
    sections.push(lattice_section(&sys, c));
    clock.lap("lattices");
    let fam = StructureFamilies::collect(&sys, c)?;
    sections.push(Section { name: "structure".into(), checks: structure_checks_over(&sys, c, &fam)? });
    clock.lap("structure");
    let suite = EquivalenceSuite::new(&sys, c)?;
    let (equivalence, eq_checks) = equivalence_checks(&suite, c, &fam)?;
    sections.push(Section { name: "equivalence".into(), checks: eq_checks });
    clock.lap("equivalence");
    let decompositions = decompositions(&suite);
    clock.lap("decompositions");
    let mut totals = Tallies::default();
    for r in sections.iter().flat_map(|s| s.checks.iter()).chain(decompositions.checks.iter()) {
        totals.add(r);
    }
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        semigroup: SemigroupInfo {
            name: s.name().to_string(),
            size: s.len(),
            zero: s.zero(),
            commutative: s.is_commutative(),
            ring: s.ring().is_some(),
        },
        validation: "ok",
        properness: s.is_proper(),
        element_classes: s.classify_elements(),
        lattices: [&sys.perp, &sys.left, &sys.right, &sys.nabla, &sys.bot4].into_iter().map(LatticeSummary::of).collect(),
        sections,
        equivalence,
        decompositions,
        totals,
        timing: cfg.timing.then_some(clock.out),
    })
}

/// Maps `f` over `items` on up to `threads` scoped threads, keeping input order.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items.chunks(chunk).map(|part| scope.spawn(|| part.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}
