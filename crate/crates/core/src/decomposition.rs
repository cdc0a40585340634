//! Type decompositions: the unique `∇`-closed set splitting the lattice into a
//! part generated by finite pieces and a part containing none.

use std::fmt;

use serde::Serialize;

use crate::check::{CheckResult, Tally};
use crate::equivalence::EquivalenceSuite;
use crate::error::{Error, Result};
use crate::subset::ElementSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecompositionKind {
    /// Generated by a `∇`-finite *-annihilator.
    #[serde(rename = "typeI")]
    TypeI,
    /// Itself `∇`-finite.
    #[serde(rename = "typeI1")]
    TypeI1,
    /// Generated by a `~`-finite *-annihilator.
    #[serde(rename = "typeIII")]
    TypeIII,
    /// Itself `~`-finite.
    #[serde(rename = "typefin")]
    Finite,
}

impl DecompositionKind {
    pub const ALL: [DecompositionKind; 4] = [Self::TypeI, Self::TypeI1, Self::TypeIII, Self::Finite];

    pub fn name(self) -> &'static str {
        match self {
            Self::TypeI => "typeI",
            Self::TypeI1 => "typeI1",
            Self::TypeIII => "typeIII",
            Self::Finite => "typefin",
        }
    }

    /// Whether `A` must be the `∇`-closure of a finite piece (rather than finite itself).
    fn generated(self) -> bool {
        matches!(self, Self::TypeI | Self::TypeIII)
    }

    fn uses_sim(self) -> bool {
        matches!(self, Self::TypeIII | Self::Finite)
    }
}

impl fmt::Display for DecompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionResult {
    pub kind: DecompositionKind,
    /// The `∇`-closed part.
    pub a: ElementSubset,
    /// `A^⊥`, the part with no nonzero finite pieces.
    pub complement: ElementSubset,
    /// The finite `B` with `A = B^∇∇` (or `A` itself for the unsplit kinds).
    pub certificate: ElementSubset,
    pub unique: bool,
}

/// Lattice indices of the *-annihilators that are finite in the sense of `kind`.
fn finite_members(suite: &EquivalenceSuite<'_>, kind: DecompositionKind) -> Vec<bool> {
    let m = suite.eq.len();
    (0..m)
        .map(|a| if kind.uses_sim() { suite.eq.sim_finite(a) } else { suite.nabla_finite(a) })
        .collect()
}

fn gate(suite: &EquivalenceSuite<'_>, kind: DecompositionKind) -> Result<()> {
    let mut unmet = Vec::new();
    if !suite.sys.is_proper() {
        unmet.push("semigroup is proper".to_string());
    }
    if kind.uses_sim() {
        if !suite.eq.is_reflexive() {
            unmet.push("~ is reflexive".to_string());
        }
        if !suite.additivity().nabla_additive() {
            unmet.push("~ is ∇-additive".to_string());
        }
    }
    if unmet.is_empty() {
        Ok(())
    } else {
        Err(Error::HypothesisNotMet(unmet))
    }
}

/// All candidates with their certificates, by lattice index.
fn candidates(suite: &EquivalenceSuite<'_>, kind: DecompositionKind) -> Vec<(usize, usize)> {
    let l = suite.sys.perp.lattice();
    let finite = finite_members(suite, kind);
    let nabla = suite.nabla_members();
    let allowed: Vec<usize> = if kind.generated() {
        (0..l.len()).collect()
    } else {
        nabla.to_vec()
    };
    let mut out = Vec::new();
    for &a in nabla {
        let cert = if kind.generated() {
            (0..l.len()).find(|&b| finite[b] && suite.nabla_closure(b) == a)
        } else {
            finite[a].then_some(a)
        };
        let Some(b) = cert else { continue };
        let below = l.ortho(a);
        let clean = allowed.iter().all(|&c| c == l.bottom() || !finite[c] || !l.leq(c, below));
        if clean {
            out.push((a, b));
        }
    }
    out
}

/// The unique decomposition of the given kind, found by sweeping `P(S)^∇`.
pub fn decompose(suite: &EquivalenceSuite<'_>, kind: DecompositionKind) -> Result<DecompositionResult> {
    gate(suite, kind)?;
    let l = suite.sys.perp.lattice();
    let found = candidates(suite, kind);
    if found.len() != 1 {
        return Err(Error::UniquenessViolation {
            kind: kind.name(),
            candidates: found.iter().map(|&(a, _)| l.set(a).iter().collect()).collect(),
        });
    }
    let (a, b) = found[0];
    Ok(DecompositionResult {
        kind,
        a: l.set(a).clone(),
        complement: l.set(l.ortho(a)).clone(),
        certificate: l.set(b).clone(),
        unique: true,
    })
}

pub fn type_i_decomposition(suite: &EquivalenceSuite<'_>) -> Result<DecompositionResult> {
    decompose(suite, DecompositionKind::TypeI)
}

pub fn type_i1_decomposition(suite: &EquivalenceSuite<'_>) -> Result<DecompositionResult> {
    decompose(suite, DecompositionKind::TypeI1)
}

pub fn type_iii_decomposition(suite: &EquivalenceSuite<'_>) -> Result<DecompositionResult> {
    decompose(suite, DecompositionKind::TypeIII)
}

pub fn finite_decomposition(suite: &EquivalenceSuite<'_>) -> Result<DecompositionResult> {
    decompose(suite, DecompositionKind::Finite)
}

/// Re-checks a result from its sets alone.
pub fn verify(suite: &EquivalenceSuite<'_>, r: &DecompositionResult) -> CheckResult {
    let sys = suite.sys;
    let l = sys.perp.lattice();
    let mut t = Tally::new();
    t.case(sys.nabla.lattice().contains(&r.a), || format!("{} is not ∇-closed", r.a));
    t.case(sys.perp.polar(&r.a) == r.complement, || format!("{} is not the polar of {}", r.complement, r.a));
    let finite = |x: &ElementSubset| -> bool {
        let Some(i) = l.find(x) else { return false };
        if r.kind.uses_sim() {
            suite.eq.sim_finite(i)
        } else {
            suite.nabla_finite(i)
        }
    };
    t.case(finite(&r.certificate), || format!("certificate {} is not finite", r.certificate));
    if r.kind.generated() {
        t.case(sys.nabla.closure(&r.certificate) == r.a, || format!("certificate does not generate {}", r.a));
    } else {
        t.case(r.certificate == r.a, || "certificate differs from the part".to_string());
    }
    let zero = sys.semigroup().zero_set();
    for c in l.sets() {
        if *c == zero || !c.is_subset(&r.complement) || !finite(c) {
            continue;
        }
        let forbidden = r.kind.generated() || sys.nabla.lattice().contains(c);
        t.case(!forbidden, || format!("finite {c} lies below {}", r.complement));
    }
    t.case(r.unique, || "not unique".to_string());
    t.finish(format!("{} decomposition", r.kind))
}

/// Every decomposition kind as a check, the results found, and recorded findings.
#[derive(Debug, Clone, Serialize)]
pub struct Decompositions {
    pub results: Vec<DecompositionResult>,
    pub checks: Vec<CheckResult>,
    /// Observations that are reported rather than asserted.
    pub findings: Vec<String>,
}

pub fn decompositions(suite: &EquivalenceSuite<'_>) -> Decompositions {
    let mut out = Decompositions { results: Vec::new(), checks: Vec::new(), findings: Vec::new() };
    let name = |k: DecompositionKind| format!("{k} decomposition");
    for kind in DecompositionKind::ALL {
        match decompose(suite, kind) {
            Ok(r) => {
                out.checks.push(verify(suite, &r));
                out.results.push(r);
            }
            Err(Error::HypothesisNotMet(unmet)) => out.checks.push(CheckResult::unmet(name(kind), unmet)),
            Err(e) => out.checks.push(CheckResult::fail(name(kind), e.to_string())),
        }
    }
    let get = |k| out.results.iter().find(|r| r.kind == k);
    if let (Some(i), Some(i1)) = (get(DecompositionKind::TypeI), get(DecompositionKind::TypeI1)) {
        if !i1.a.is_subset(&i.a) {
            out.findings.push(format!("typeI1 part {} is not inside typeI part {}", i1.a, i.a));
        }
    }
    if let (Some(iii), Some(fin)) = (get(DecompositionKind::TypeIII), get(DecompositionKind::Finite)) {
        if !fin.a.is_subset(&iii.a) {
            out.findings.push(format!("typefin part {} is not inside typeIII part {}", fin.a, iii.a));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::CheckConfig;
    use crate::polarity::{OrthoSystem, DEFAULT_LATTICE_CAP};
    use crate::semigroup::from_spec;

    fn system(spec: &str) -> OrthoSystem {
        OrthoSystem::build(&from_spec(spec).unwrap(), DEFAULT_LATTICE_CAP).unwrap()
    }

    #[test]
    fn z6_everything_is_the_finite_part() {
        let sys = system("zn:6");
        let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
        let full = sys.semigroup().full_set();
        for kind in DecompositionKind::ALL {
            let r = decompose(&suite, kind).unwrap();
            assert_eq!(r.a, full, "{kind}");
            assert_eq!(r.complement, sys.semigroup().zero_set());
            assert!(verify(&suite, &r).passed());
        }
    }

    #[test]
    fn trivial_semigroup() {
        let sys = system("zn:1");
        let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
        for kind in DecompositionKind::ALL {
            let r = decompose(&suite, kind).unwrap();
            assert_eq!(r.a.len(), 1);
            assert!(r.a.contains(0));
        }
    }

    #[test]
    fn gallery_decompositions_are_unique() {
        for spec in ["bool:2", "brandt:2", "unit:brandt:2", "semilattice:3", "znring:6", "matring:2,3", "zn:30"] {
            let sys = system(spec);
            let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
            let d = decompositions(&suite);
            for c in &d.checks {
                assert!(!c.failed(), "{spec}: {c}");
            }
        }
    }

    #[test]
    fn sim_kinds_are_gated_without_reflexivity() {
        let sys = system("brandt:2");
        let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
        assert!(matches!(type_iii_decomposition(&suite), Err(Error::HypothesisNotMet(_))));
        assert!(type_i_decomposition(&suite).is_ok());
    }

    #[test]
    fn tampered_result_fails_verification() {
        let sys = system("zn:6");
        let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
        let mut r = type_i_decomposition(&suite).unwrap();
        r.a = sys.semigroup().zero_set();
        assert!(verify(&suite, &r).failed());
    }
}
