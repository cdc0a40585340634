//! The *-equivalence `A ~ B ⟺ ∃s ({s}^⊥⊥ = A, {s*}^⊥⊥ = B)` on *-annihilators,
//! its subequivalence, and the comparison results built on them.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::check::{combine, CheckConfig, CheckResult, Coverage, Tally};
use crate::error::{Error, Result};
use crate::polarity::{relative_lattice, OrthoSystem, PolarLattice, Polarity, RelationKind};
use crate::semigroup::StarSemigroup;
use crate::structure::StructureFamilies;
use crate::subset::ElementSubset;

/// Largest *-annihilator lattice for which the equivalence tables are built.
pub const SIM_LATTICE_CAP: usize = 4096;

/// Bound on quadruples and families visited by the additivity sweeps.
const ADDITIVITY_BUDGET: usize = 4_000_000;
const FAMILY_BUDGET: usize = 200_000;
/// Largest family size in the finite additivity sweep.
const MAX_FAMILY: usize = 4;

const NONE: u32 = u32::MAX;

/// `s` with `{s}^⊥⊥ = a` and `{s*}^⊥⊥ = b` (for `≾`, `b` is the closure of `s*`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivWitness {
    pub s: usize,
    pub a: ElementSubset,
    pub b: ElementSubset,
}

/// `I ∈ P(S)^∇` with `A ∩ I ≾ B ∩ I` and `B ∩ I^⊥ ≾ A ∩ I^⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparabilityCertificate {
    pub ideal: ElementSubset,
    pub left: EquivWitness,
    pub right: EquivWitness,
}

/// The `~` and `≾` tables over a *-annihilator lattice, computed inside the
/// members of a `⊥` polarity (the whole semigroup or a *-subsemigroup).
#[derive(Debug, Clone)]
pub struct Equivalence<'a> {
    s: &'a StarSemigroup,
    perp: &'a Polarity,
    m: usize,
    /// Lattice index of `{x}^⊥⊥` for each member `x`; `usize::MAX` outside.
    cl: Vec<usize>,
    sim: Vec<u32>,
    sub: Vec<u32>,
}

impl<'a> Equivalence<'a> {
    pub fn new(s: &'a StarSemigroup, perp: &'a Polarity) -> Result<Equivalence<'a>> {
        if *perp.kind() != RelationKind::Perp {
            return Err(Error::HypothesisNotMet(vec!["polarity is ⊥".into()]));
        }
        let lat = perp.lattice();
        let m = lat.len();
        if m > SIM_LATTICE_CAP {
            return Err(Error::CapExceeded {
                what: "*-annihilator lattice for equivalence tables",
                size: m,
                cap: SIM_LATTICE_CAP,
            });
        }
        let mut cl = vec![usize::MAX; s.len()];
        for x in perp.members().iter() {
            let c = perp.polar(&perp.polar_of(x));
            cl[x] = lat.find(&c).ok_or_else(|| Error::OrtholatticeAxiomFailure {
                axiom: "double polar is closed",
                witness: format!("{{{x}}}"),
            })?;
        }
        let upsets: Vec<Vec<usize>> = (0..m).map(|c| (0..m).filter(|&b| lat.leq(c, b)).collect()).collect();
        let mut sim = vec![NONE; m * m];
        let mut sub = vec![NONE; m * m];
        for x in perp.members().iter() {
            let (a, b) = (cl[x], cl[s.star(x)]);
            if sim[a * m + b] == NONE {
                sim[a * m + b] = x as u32;
            }
            for &up in &upsets[b] {
                if sub[a * m + up] == NONE {
                    sub[a * m + up] = x as u32;
                }
            }
        }
        Ok(Equivalence { s, perp, m, cl, sim, sub })
    }

    pub fn lattice(&self) -> &'a PolarLattice {
        self.perp.lattice()
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// Lattice index of `{x}^⊥⊥`.
    pub fn closure_index(&self, x: usize) -> usize {
        self.cl[x]
    }

    /// `{x}^⊥⊥`
    pub fn element_closure(&self, x: usize) -> &'a ElementSubset {
        self.lattice().set(self.cl[x])
    }

    /// First `s` (ascending) witnessing `a ~ b`, by lattice index.
    pub fn sim_witness(&self, a: usize, b: usize) -> Option<usize> {
        let w = self.sim[a * self.m + b];
        (w != NONE).then_some(w as usize)
    }

    /// First `s` witnessing `a ≾ b`.
    pub fn sub_witness(&self, a: usize, b: usize) -> Option<usize> {
        let w = self.sub[a * self.m + b];
        (w != NONE).then_some(w as usize)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.sim[a * self.m + b] != NONE
    }

    pub fn below(&self, a: usize, b: usize) -> bool {
        self.sub[a * self.m + b] != NONE
    }

    fn witness(&self, s: usize) -> EquivWitness {
        EquivWitness {
            s,
            a: self.element_closure(s).clone(),
            b: self.element_closure(self.s.star(s)).clone(),
        }
    }

    pub fn sim(&self, a: &ElementSubset, b: &ElementSubset) -> Result<Option<EquivWitness>> {
        let (i, j) = (self.lattice().position(a)?, self.lattice().position(b)?);
        Ok(self.sim_witness(i, j).map(|s| self.witness(s)))
    }

    pub fn subequiv(&self, a: &ElementSubset, b: &ElementSubset) -> Result<Option<EquivWitness>> {
        let (i, j) = (self.lattice().position(a)?, self.lattice().position(b)?);
        Ok(self.sub_witness(i, j).map(|s| self.witness(s)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.m).all(|a| self.related(a, a))
    }

    /// Every closed set is the polar of a single element.
    pub fn singleton_polars_exhaust(&self) -> bool {
        let polars: HashSet<&ElementSubset> = self.perp.members().iter().map(|x| self.lattice().set(self.lattice().ortho(self.cl[x]))).collect();
        self.lattice().sets().iter().all(|a| polars.contains(a))
    }

    /// A common complement of `a` and `b`, first by index.
    pub fn perspective(&self, a: usize, b: usize) -> Option<usize> {
        let l = self.lattice();
        let (bot, top) = (l.bottom(), l.top());
        (0..self.m).find(|&r| {
            l.meet(a, r) == bot && l.meet(b, r) == bot && l.join(a, r) == top && l.join(b, r) == top
        })
    }

    /// `A ~ B ⊆ A ⇒ A = B`
    pub fn sim_finite(&self, a: usize) -> bool {
        let l = self.lattice();
        (0..self.m).all(|b| b == a || !l.leq(b, a) || !self.related(a, b))
    }

    /// Lattice indices of the closures `{x}^⊥⊥` that occur.
    pub fn achieved(&self) -> BTreeSet<usize> {
        self.perp.members().iter().map(|x| self.cl[x]).collect()
    }
}

/// Evaluation of the three hypotheses of the projection comparison.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MvnHypotheses {
    pub polar_decomposition: bool,
    pub perp_cancellative: bool,
    pub projection_closure_injective: bool,
}

impl MvnHypotheses {
    pub fn all(&self) -> bool {
        self.polar_decomposition && self.perp_cancellative && self.projection_closure_injective
    }

    fn unmet(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.polar_decomposition {
            out.push("polar decomposition".to_string());
        }
        if !self.perp_cancellative {
            out.push("⊥-cancellative".to_string());
        }
        if !self.projection_closure_injective {
            out.push("closure injective on projections".to_string());
        }
        out
    }
}

/// `p = p* = p²`
pub fn projections(s: &StarSemigroup) -> Vec<usize> {
    s.elements().filter(|&p| s.star(p) == p && s.mul(p, p) == p).collect()
}

/// First `a` with no self-adjoint `b` such that `a*a = b²` and `a ∈ Sb`.
pub fn polar_decomposition_failure(s: &StarSemigroup) -> Option<usize> {
    let n = s.len();
    let sa: Vec<usize> = s.elements().filter(|&b| s.star(b) == b).collect();
    let mut by_square: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &b in &sa {
        by_square[s.mul(b, b)].push(b);
    }
    let mut left_multiples: Vec<Option<ElementSubset>> = vec![None; n];
    s.elements().find(|&a| {
        !by_square[s.norm(a)].iter().any(|&b| {
            left_multiples[b]
                .get_or_insert_with(|| ElementSubset::from_indices(n, s.elements().map(|x| s.mul(x, b))))
                .contains(a)
        })
    })
}

/// First `(a, b)` with `{a}^⊥ = {b}^⊥` where `as = at` does not force `bs = bt`.
pub fn perp_cancellation_failure(s: &StarSemigroup, perp: &Polarity) -> Option<(usize, usize)> {
    let n = s.len();
    // kernel of x ↦ ax, labelled by first preimage
    let kernel = |a: usize| -> Vec<usize> {
        let mut first = vec![usize::MAX; n];
        s.elements()
            .map(|x| {
                let y = s.mul(a, x);
                if first[y] == usize::MAX {
                    first[y] = x;
                }
                first[y]
            })
            .collect()
    };
    let mut groups: std::collections::HashMap<&ElementSubset, (usize, Vec<usize>)> = Default::default();
    for a in s.elements() {
        let row = perp.relation().row(a);
        match groups.get(row) {
            Some((b, kb)) => {
                if kernel(a) != *kb {
                    return Some((*b, a));
                }
            }
            None => {
                groups.insert(row, (a, kernel(a)));
            }
        }
    }
    None
}

/// First pair of distinct projections with the same closure.
pub fn projection_closure_collision(eq: &Equivalence<'_>) -> Option<(usize, usize)> {
    let proj = projections(eq.s);
    for (i, &p) in proj.iter().enumerate() {
        for &q in &proj[i + 1..] {
            if eq.closure_index(p) == eq.closure_index(q) {
                return Some((p, q));
            }
        }
    }
    None
}

/// Outcome of the pairwise and finite-family additivity sweeps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Additivity {
    /// First counterexample to pairwise `⊥`-additivity, if any.
    pub perp_pairwise: Option<String>,
    pub nabla_pairwise: Option<String>,
    /// First counterexample among matched families of up to four members.
    pub perp_families: Option<String>,
    pub nabla_families: Option<String>,
    pub exhaustive: bool,
}

impl Additivity {
    pub fn perp_additive(&self) -> bool {
        self.perp_pairwise.is_none() && self.perp_families.is_none()
    }

    pub fn nabla_additive(&self) -> bool {
        self.nabla_pairwise.is_none() && self.nabla_families.is_none()
    }
}

/// Everything the report shows about `~` on one semigroup.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceSummary {
    pub reflexive: bool,
    pub singleton_polars_exhaust: bool,
    pub perp_additive: bool,
    pub nabla_additive: bool,
    /// Classes of mutually equivalent self-equivalent *-annihilators.
    pub classes: Vec<Vec<ElementSubset>>,
    /// *-annihilators not equivalent to themselves.
    pub non_reflexive: Vec<ElementSubset>,
    pub sim_finite: Vec<ElementSubset>,
    pub nabla_finite: Vec<ElementSubset>,
    /// One witness per related pair, capped.
    pub witnesses: Vec<EquivWitness>,
    pub mvn_hypotheses: MvnHypotheses,
    /// An `s` and `A ⊥ B` with `(As)^⊥⊥` and `(Bs)^⊥⊥` not orthogonal, if one exists.
    pub orthogonality_break: Option<String>,
}

const WITNESS_LIST_CAP: usize = 4096;

/// The equivalence tables plus the whole-semigroup data the checks need.
pub struct EquivalenceSuite<'a> {
    pub sys: &'a OrthoSystem,
    pub eq: Equivalence<'a>,
    /// `A^∇` for each *-annihilator `A`.
    nabla_of: Vec<ElementSubset>,
    /// Indices in `P(S)^⊥` of the `∇`-closed sets.
    nabla_members: Vec<usize>,
    additivity: Additivity,
    mvn: MvnHypotheses,
}

fn unmet(name: &str, why: &[&str]) -> CheckResult {
    CheckResult::unmet(name, why.iter().map(|s| s.to_string()).collect())
}

impl<'a> EquivalenceSuite<'a> {
    pub fn new(sys: &'a OrthoSystem, cfg: &CheckConfig) -> Result<EquivalenceSuite<'a>> {
        let s = sys.semigroup();
        let eq = Equivalence::new(s, &sys.perp)?;
        let pp = sys.perp.lattice();
        let nabla_of = pp.sets().iter().map(|a| sys.nabla.polar(a)).collect();
        let nabla_members = sys.nabla.lattice().sets().iter().filter_map(|x| pp.find(x)).collect();
        let mvn = MvnHypotheses {
            polar_decomposition: polar_decomposition_failure(s).is_none(),
            perp_cancellative: perp_cancellation_failure(s, &sys.perp).is_none(),
            projection_closure_injective: projection_closure_collision(&eq).is_none(),
        };
        let mut suite = EquivalenceSuite {
            sys,
            eq,
            nabla_of,
            nabla_members,
            additivity: Additivity {
                perp_pairwise: None,
                nabla_pairwise: None,
                perp_families: None,
                nabla_families: None,
                exhaustive: true,
            },
            mvn,
        };
        suite.additivity = suite.compute_additivity(cfg);
        Ok(suite)
    }

    fn lat(&self) -> &'a PolarLattice {
        self.sys.perp.lattice()
    }

    fn m(&self) -> usize {
        self.eq.len()
    }

    pub fn additivity(&self) -> &Additivity {
        &self.additivity
    }

    pub fn mvn_hypotheses(&self) -> &MvnHypotheses {
        &self.mvn
    }

    /// Lattice indices in `P(S)^⊥` of the `∇`-closed sets.
    pub fn nabla_members(&self) -> &[usize] {
        &self.nabla_members
    }

    /// Lattice index in `P(S)^⊥` of `A^∇∇`.
    pub fn nabla_closure(&self, a: usize) -> usize {
        let l = self.lat();
        l.find(&self.sys.nabla.polar(&self.nabla_of[a])).unwrap_or(usize::MAX)
    }

    /// `A ⊥ B` in the lattice: `A ≤ B^⊥`.
    fn perp_rel(&self, a: usize, b: usize) -> bool {
        self.lat().leq(a, self.lat().ortho(b))
    }

    /// `A ∇ B`: every element of `A` is `∇`-related to every element of `B`.
    fn nabla_rel(&self, a: usize, b: usize) -> bool {
        self.lat().set(b).is_subset(&self.nabla_of[a])
    }

    pub fn nabla_finite(&self, a: usize) -> bool {
        let l = self.lat();
        (0..self.m()).all(|b| b == a || !l.leq(b, a) || self.nabla_of[b] != self.nabla_of[a])
    }

    fn sim_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.m();
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .filter(|&(a, b)| self.eq.related(a, b))
            .collect()
    }

    fn compute_additivity(&self, cfg: &CheckConfig) -> Additivity {
        let pairs = self.sim_pairs();
        let l = self.lat();
        let total = pairs.len() * pairs.len();
        let stride = total.div_ceil(ADDITIVITY_BUDGET).max(1);
        let mut out = Additivity {
            perp_pairwise: None,
            nabla_pairwise: None,
            perp_families: None,
            nabla_families: None,
            exhaustive: stride == 1,
        };
        let show = |i: usize| format!("{}", l.set(i));
        let mut k = 0usize;
        for &(p, p2) in &pairs {
            for &(q, q2) in &pairs {
                k += 1;
                if k % stride != 0 {
                    continue;
                }
                let ok = |rel: &dyn Fn(usize, usize) -> bool| {
                    !(rel(p, q) && rel(p2, q2)) || self.eq.related(l.join(p, q), l.join(p2, q2))
                };
                let witness = || format!("{} ~ {}, {} ~ {}", show(p), show(p2), show(q), show(q2));
                if out.perp_pairwise.is_none() && !ok(&|a, b| self.perp_rel(a, b)) {
                    out.perp_pairwise = Some(witness());
                }
                if out.nabla_pairwise.is_none() && !ok(&|a, b| self.nabla_rel(a, b)) {
                    out.nabla_pairwise = Some(witness());
                }
            }
        }
        let _ = cfg;
        let mut budget = FAMILY_BUDGET;
        out.perp_families = self.family_sweep(&pairs, &|a, b| self.perp_rel(a, b), &mut budget);
        let mut budget_n = FAMILY_BUDGET;
        out.nabla_families = self.family_sweep(&pairs, &|a, b| self.nabla_rel(a, b), &mut budget_n);
        if budget == 0 || budget_n == 0 {
            out.exhaustive = false;
        }
        out
    }

    /// Matched `R`-subsets of size up to four: the joins must be equivalent.
    fn family_sweep(
        &self,
        pairs: &[(usize, usize)],
        rel: &dyn Fn(usize, usize) -> bool,
        budget: &mut usize,
    ) -> Option<String> {
        let l = self.lat();
        let mut stack: Vec<usize> = Vec::new();
        fn go(
            suite: &EquivalenceSuite<'_>,
            l: &PolarLattice,
            pairs: &[(usize, usize)],
            rel: &dyn Fn(usize, usize) -> bool,
            stack: &mut Vec<usize>,
            start: usize,
            budget: &mut usize,
        ) -> Option<String> {
            if stack.len() >= 2 {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                let left: Vec<usize> = stack.iter().map(|&i| pairs[i].0).collect();
                let right: Vec<usize> = stack.iter().map(|&i| pairs[i].1).collect();
                if !suite.eq.related(l.sup(&left), l.sup(&right)) {
                    let show = |v: &[usize]| v.iter().map(|&i| format!("{}", l.set(i))).collect::<Vec<_>>().join(", ");
                    return Some(format!("[{}] matched with [{}]", show(&left), show(&right)));
                }
            }
            if stack.len() == MAX_FAMILY {
                return None;
            }
            for i in start..pairs.len() {
                let (a, b) = pairs[i];
                let fits = stack.iter().all(|&j| {
                    let (c, d) = pairs[j];
                    c != a && d != b && rel(a, c) && rel(c, a) && rel(b, d) && rel(d, b)
                });
                if !fits {
                    continue;
                }
                stack.push(i);
                let r = go(suite, l, pairs, rel, stack, i + 1, budget);
                stack.pop();
                if r.is_some() {
                    return r;
                }
            }
            None
        }
        go(self, l, pairs, rel, &mut stack, 0, budget)
    }

    fn proper_or_unmet(&self, name: &str) -> Option<CheckResult> {
        (!self.sys.is_proper()).then(|| unmet(name, &["semigroup is proper"]))
    }

    fn reflexive_or_unmet(&self, name: &str) -> Option<CheckResult> {
        self.proper_or_unmet(name)
            .or_else(|| (!self.eq.is_reflexive()).then(|| unmet(name, &["~ is reflexive"])))
    }

    /// Every stored witness satisfies its closure equations, and `s*` witnesses the reverse.
    pub fn witness_check(&self) -> CheckResult {
        let name = "equivalence witnesses";
        let s = self.sys.semigroup();
        let m = self.m();
        let mut t = Tally::new();
        for a in 0..m {
            for b in 0..m {
                if let Some(x) = self.eq.sim_witness(a, b) {
                    t.case(self.eq.closure_index(x) == a && self.eq.closure_index(s.star(x)) == b, || {
                        format!("witness {x} for {} ~ {}", self.lat().set(a), self.lat().set(b))
                    });
                    t.case(self.eq.related(b, a), || format!("{x}* does not reverse the pair"));
                }
                if let Some(x) = self.eq.sub_witness(a, b) {
                    let c = self.eq.closure_index(s.star(x));
                    t.case(self.eq.closure_index(x) == a && self.lat().leq(c, b), || {
                        format!("witness {x} for {} ≾ {}", self.lat().set(a), self.lat().set(b))
                    });
                }
            }
        }
        t.finish(name)
    }

    /// Reflexivity of `~` and of `≾` each coincide with every closed set being a singleton polar.
    pub fn reflexivity_check(&self) -> CheckResult {
        let name = "reflexivity criterion";
        if let Some(r) = self.proper_or_unmet(name) {
            return r;
        }
        let m = self.m();
        let exhaust = self.eq.singleton_polars_exhaust();
        let sub_reflexive = (0..m).all(|a| self.eq.below(a, a));
        let mut t = Tally::new();
        t.case(self.eq.is_reflexive() == exhaust, || {
            format!("~ reflexive = {}, singleton polars exhaust = {exhaust}", self.eq.is_reflexive())
        });
        t.case(sub_reflexive == exhaust, || {
            format!("≾ reflexive = {sub_reflexive}, singleton polars exhaust = {exhaust}")
        });
        t.finish(name)
    }

    pub fn transitivity_check(&self) -> CheckResult {
        let name = "transitivity of equivalence and subequivalence";
        if let Some(r) = self.proper_or_unmet(name) {
            return r;
        }
        let m = self.m();
        let rows = |f: &dyn Fn(usize, usize) -> bool| -> Vec<ElementSubset> {
            (0..m).map(|a| ElementSubset::from_predicate(m, |b| f(a, b))).collect()
        };
        let sim = rows(&|a, b| self.eq.related(a, b));
        let sub = rows(&|a, b| self.eq.below(a, b));
        let mut t = Tally::new();
        for (rel, label) in [(&sim, "~"), (&sub, "≾")] {
            for a in 0..m {
                for b in rel[a].iter() {
                    let w = rel[b].difference(&rel[a]).first();
                    t.case(w.is_none(), || {
                        let l = self.lat();
                        format!("{} {label} {} {label} {}", l.set(a), l.set(b), l.set(w.unwrap()))
                    });
                }
            }
        }
        t.finish(name)
    }

    /// `{ab}^⊥⊥ = ({a}^⊥⊥ b)^⊥⊥`, and `{b*a*}^⊥⊥ = {a*}^⊥⊥` when `{a}^⊥⊥ ⊆ {b*}^⊥⊥`.
    pub fn product_closure_check(&self) -> CheckResult {
        let name = "product closure identities";
        if let Some(r) = self.proper_or_unmet(name) {
            return r;
        }
        let s = self.sys.semigroup();
        let l = self.lat();
        let n = s.len();
        let mut memo: std::collections::HashMap<(usize, usize), usize> = Default::default();
        let mut t = Tally::new();
        for a in 0..n {
            let ca = self.eq.closure_index(a);
            for b in 0..n {
                let rhs = *memo.entry((ca, b)).or_insert_with(|| {
                    let prod = ElementSubset::from_indices(n, l.set(ca).iter().map(|x| s.mul(x, b)));
                    l.find(&self.sys.perp.closure(&prod)).unwrap_or(usize::MAX)
                });
                t.case(self.eq.closure_index(s.mul(a, b)) == rhs, || format!("a = {a}, b = {b}"));
                if l.leq(ca, self.eq.closure_index(s.star(b))) {
                    let lhs = self.eq.closure_index(s.mul(s.star(b), s.star(a)));
                    t.case(lhs == self.eq.closure_index(s.star(a)), || format!("a = {a}, b = {b}: b*a*"));
                }
            }
        }
        t.finish(name)
    }

    /// `A ≾ B ⇒ B^∇ ⊆ A^∇` and `A ~ B ⇒ A^∇ = B^∇`.
    pub fn nabla_polar_invariance_check(&self) -> CheckResult {
        let name = "equivalence respects nabla polars";
        if let Some(r) = self.proper_or_unmet(name) {
            return r;
        }
        let m = self.m();
        let mut t = Tally::new();
        for a in 0..m {
            for b in 0..m {
                if self.eq.below(a, b) {
                    t.case(self.nabla_of[b].is_subset(&self.nabla_of[a]), || {
                        format!("{} ≾ {}", self.lat().set(a), self.lat().set(b))
                    });
                }
                if self.eq.related(a, b) {
                    t.case(self.nabla_of[a] == self.nabla_of[b], || {
                        format!("{} ~ {}", self.lat().set(a), self.lat().set(b))
                    });
                }
            }
        }
        t.finish(name)
    }

    /// `A ↦ (As)^⊥⊥` on every closed set, by lattice index.
    fn translate_row(&self, s_el: usize) -> Vec<usize> {
        let s = self.sys.semigroup();
        let l = self.lat();
        l.sets()
            .iter()
            .map(|a| {
                let prod = ElementSubset::from_indices(s.len(), a.iter().map(|x| s.mul(x, s_el)));
                l.find(&self.sys.perp.closure(&prod)).unwrap_or(usize::MAX)
            })
            .collect()
    }

    /// `A ↦ (As)^⊥⊥` preserves joins of pairs and of families of up to four, and the bottom.
    pub fn translation_join_check(&self) -> CheckResult {
        let name = "translation maps preserve joins";
        if let Some(r) = self.proper_or_unmet(name) {
            return r;
        }
        let l = self.lat();
        let m = self.m();
        let families = small_families(m, MAX_FAMILY, FAMILY_BUDGET / self.sys.semigroup().len().max(1));
        let mut t = Tally::new();
        for x in self.sys.semigroup().elements() {
            let f = self.translate_row(x);
            t.case(f[l.bottom()] == l.bottom(), || format!("s = {x}: bottom not preserved"));
            for fam in &families {
                let lhs = f[l.sup(fam)];
                let image: Vec<usize> = fam.iter().map(|&a| f[a]).collect();
                t.case(lhs == l.sup(&image), || {
                    format!("s = {x}, family {:?}", fam.iter().map(|&a| l.set(a).to_string()).collect::<Vec<_>>())
                });
            }
        }
        let complete = families.len() == count_families(m, MAX_FAMILY);
        t.finish(name)
            .with_coverage(if complete { Coverage::Exhaustive } else { Coverage::Curated })
    }

    /// For families up to three and every `s` with `{s*}^⊥⊥ = ⋁𝒜`, the map
    /// `A ↦ (As)^⊥⊥` splits `{s}^⊥⊥` into pieces equivalent to the members.
    pub fn divisibility_check(&self) -> CheckResult {
        let name = "divisibility";
        if let Some(r) = self.reflexive_or_unmet(name) {
            return r;
        }
        let s = self.sys.semigroup();
        let l = self.lat();
        let m = self.m();
        let families = small_families(m, 3, FAMILY_BUDGET);
        let mut by_sup: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); m];
        for fam in &families {
            by_sup[l.sup(fam)].push(fam);
        }
        let mut t = Tally::new();
        for x in s.elements() {
            let sup = self.eq.closure_index(s.star(x));
            if by_sup[sup].is_empty() {
                continue;
            }
            let b = self.eq.closure_index(x);
            let f = self.translate_row(x);
            for fam in &by_sup[sup] {
                let image: Vec<usize> = fam.iter().map(|&a| f[a]).collect();
                t.case(l.sup(&image) == b, || format!("s = {x}: pieces do not join to {}", l.set(b)));
                for (&a, &fa) in fam.iter().zip(&image) {
                    t.case(self.eq.related(a, fa), || format!("s = {x}: {} ≁ {}", l.set(a), l.set(fa)));
                }
            }
        }
        t.finish(name)
    }

    /// `A ~ B ⇒ A ∩ I ~ B ∩ I` and `A ≾ B ⇒ A ∩ I ≾ B ∩ I` for `I ∈ P(S)^∇`.
    pub fn central_cutdown_check(&self) -> CheckResult {
        let name = "central cutdowns";
        if let Some(r) = self.reflexive_or_unmet(name) {
            return r;
        }
        let l = self.lat();
        let m = self.m();
        let mut t = Tally::new();
        for a in 0..m {
            for b in 0..m {
                let (sim, sub) = (self.eq.related(a, b), self.eq.below(a, b));
                if !sim && !sub {
                    continue;
                }
                for &i in &self.nabla_members {
                    let (ai, bi) = (l.meet(a, i), l.meet(b, i));
                    let show = || format!("A = {}, B = {}, I = {}", l.set(a), l.set(b), l.set(i));
                    if sim {
                        t.case(self.eq.related(ai, bi), || format!("~: {}", show()));
                    }
                    if sub {
                        t.case(self.eq.below(ai, bi), || format!("≾: {}", show()));
                    }
                }
            }
        }
        t.finish(name)
    }

    /// `{a}^⊥ ∩ {b}^⊥⊥ = {0} = {a}^⊥⊥ ∩ {b}^⊥ ⇒ {a}^⊥⊥ ~ {b}^⊥⊥`.
    pub fn complementary_closures_check(&self) -> CheckResult {
        let name = "complementary closures are equivalent";
        if let Some(r) = self.proper_or_unmet(name) {
            return r;
        }
        let l = self.lat();
        let achieved: Vec<usize> = self.eq.achieved().into_iter().collect();
        let mut t = Tally::new();
        for &a in &achieved {
            for &b in &achieved {
                if l.meet(l.ortho(a), b) == l.bottom() && l.meet(a, l.ortho(b)) == l.bottom() {
                    t.case(self.eq.related(a, b), || format!("{} and {}", l.set(a), l.set(b)));
                }
            }
        }
        t.finish(name)
    }

    /// Perspective *-annihilators are equivalent.
    pub fn perspectivity_check(&self) -> CheckResult {
        let name = "perspectivity implies equivalence";
        if let Some(r) = self.reflexive_or_unmet(name) {
            return r;
        }
        let l = self.lat();
        let m = self.m();
        let mut t = Tally::new();
        for a in 0..m {
            for b in 0..m {
                if let Some(r) = self.eq.perspective(a, b) {
                    t.case(self.eq.related(a, b), || {
                        format!("{} and {} share complement {}", l.set(a), l.set(b), l.set(r))
                    });
                }
            }
        }
        t.finish(name)
    }

    /// `A ≾ B ≾ A ⇒ A ~ B`.
    pub fn mutual_subequivalence_check(&self) -> CheckResult {
        let name = "mutual subequivalence";
        if let Some(r) = self.reflexive_or_unmet(name) {
            return r;
        }
        if !self.additivity.perp_additive() {
            return unmet(name, &["~ is ⊥-additive"]);
        }
        let l = self.lat();
        let m = self.m();
        let mut t = Tally::new();
        for a in 0..m {
            for b in 0..m {
                if self.eq.below(a, b) && self.eq.below(b, a) {
                    t.case(self.eq.related(a, b), || format!("{} and {}", l.set(a), l.set(b)));
                }
            }
        }
        t.finish(name)
    }

    /// A certificate for `A` and `B` by search over `P(S)^∇`.
    pub fn comparability(&self, a: usize, b: usize) -> Result<ComparabilityCertificate> {
        let l = self.lat();
        for &i in &self.nabla_members {
            let ic = l.ortho(i);
            let (ai, bi, aic, bic) = (l.meet(a, i), l.meet(b, i), l.meet(a, ic), l.meet(b, ic));
            if let (Some(x), Some(y)) = (self.eq.sub_witness(ai, bi), self.eq.sub_witness(bic, aic)) {
                return Ok(ComparabilityCertificate {
                    ideal: l.set(i).clone(),
                    left: self.eq.witness(x),
                    right: self.eq.witness(y),
                });
            }
        }
        Err(Error::NoCertificateFound(format!("{} and {}", l.set(a), l.set(b))))
    }

    pub fn comparability_check(&self) -> CheckResult {
        let name = "generalized comparability";
        if let Some(r) = self.reflexive_or_unmet(name) {
            return r;
        }
        if !self.additivity.perp_additive() {
            return unmet(name, &["~ is ⊥-additive"]);
        }
        let m = self.m();
        let mut t = Tally::new();
        for a in 0..m {
            for b in 0..m {
                let r = self.comparability(a, b);
                t.case(r.is_ok(), || r.unwrap_err().to_string());
            }
        }
        t.finish(name)
    }

    /// `~` computed inside each *-annihilator agrees with `~` on its closed sets.
    pub fn restriction_to_annihilators_check(&self, lattice_cap: usize) -> Result<CheckResult> {
        let name = "equivalence restricts to annihilators";
        if let Some(r) = self.reflexive_or_unmet(name) {
            return Ok(r);
        }
        let s = self.sys.semigroup();
        let l = self.lat();
        let mut t = Tally::new();
        for a in l.sets() {
            let rel = relative_lattice(s, a, RelationKind::Perp, lattice_cap)?;
            let inner = Equivalence::new(s, &rel)?;
            let k = inner.len();
            let outer: Vec<Option<usize>> = rel.lattice().sets().iter().map(|b| l.find(b)).collect();
            for (i, o) in outer.iter().enumerate() {
                t.case(o.is_some(), || format!("A = {a}: {} not a *-annihilator", rel.lattice().set(i)));
            }
            for i in 0..k {
                for j in 0..k {
                    let whole = matches!((outer[i], outer[j]), (Some(x), Some(y)) if self.eq.related(x, y));
                    t.case(inner.related(i, j) == whole, || {
                        format!("A = {a}: {} and {}", rel.lattice().set(i), rel.lattice().set(j))
                    });
                }
            }
        }
        Ok(t.finish(name))
    }

    /// For self-adjoint bi-ideals `I` whose traces are relatively closed and
    /// whose own `~` is reflexive: `B ~_I C ⟺ B^⊥⊥ ~ C^⊥⊥`.
    pub fn restriction_to_bi_ideals_check(&self, bi_ideals: &[ElementSubset], lattice_cap: usize) -> Result<CheckResult> {
        let name = "equivalence restricts to bi-ideals";
        if let Some(r) = self.proper_or_unmet(name) {
            return Ok(r);
        }
        let s = self.sys.semigroup();
        let l = self.lat();
        let mut t = Tally::new();
        let mut applicable = 0;
        for i in bi_ideals {
            if s.induced(i).is_none() {
                continue;
            }
            let rel = relative_lattice(s, i, RelationKind::Perp, lattice_cap)?;
            if !l.sets().iter().all(|a| rel.lattice().contains(&a.intersection(i))) {
                continue;
            }
            let inner = Equivalence::new(s, &rel)?;
            if !inner.is_reflexive() {
                continue;
            }
            applicable += 1;
            let lift: Vec<usize> = rel
                .lattice()
                .sets()
                .iter()
                .map(|b| l.find(&self.sys.perp.closure(b)).unwrap_or(usize::MAX))
                .collect();
            for b in 0..inner.len() {
                for c in 0..inner.len() {
                    t.case(inner.related(b, c) == self.eq.related(lift[b], lift[c]), || {
                        format!("I = {i}: {} and {}", rel.lattice().set(b), rel.lattice().set(c))
                    });
                }
            }
        }
        if applicable == 0 {
            return Ok(unmet(name, &["some bi-ideal has closed traces and reflexive ~"]));
        }
        Ok(t.finish(name))
    }

    /// Reflexive, everything `~`-finite and the `∇`-closed sets forming the whole
    /// centre force a modular lattice on which `~` is perspectivity.
    pub fn modularity_theorem_check(&self) -> CheckResult {
        let name = "modularity from finiteness";
        if let Some(r) = self.reflexive_or_unmet(name) {
            return r;
        }
        let l = self.lat();
        let m = self.m();
        let mut missing = Vec::new();
        if !(0..m).all(|a| self.eq.sim_finite(a)) {
            missing.push("every *-annihilator is ~-finite");
        }
        let centre: BTreeSet<usize> = l.centre().into_iter().collect();
        let nabla: BTreeSet<usize> = self.nabla_members.iter().copied().collect();
        if centre != nabla {
            missing.push("nabla-closed sets form the whole centre");
        }
        if !missing.is_empty() {
            return unmet(name, &missing);
        }
        let mut t = Tally::new();
        let w = l.modular_witness();
        t.case(w.is_none(), || {
            let (p, q, r) = w.unwrap();
            format!("not modular at {}, {}, {}", l.set(p), l.set(q), l.set(r))
        });
        for a in 0..m {
            for b in 0..m {
                t.case(self.eq.perspective(a, b).is_some() == self.eq.related(a, b), || {
                    format!("perspectivity and ~ differ at {}, {}", l.set(a), l.set(b))
                });
            }
        }
        t.finish(name)
    }

    /// Murray-von Neumann equivalence of projections against `~` of their closures.
    pub fn mvn_check(&self) -> CheckResult {
        let name = "projection equivalence";
        if let Some(r) = self.proper_or_unmet(name) {
            return r;
        }
        let s = self.sys.semigroup();
        let proj = projections(s);
        let is_proj: HashSet<usize> = proj.iter().copied().collect();
        let mut mvn: HashSet<(usize, usize)> = HashSet::new();
        let mut t = Tally::new();
        for x in s.elements() {
            let (p, q) = (s.norm(x), s.norm(s.star(x)));
            if is_proj.contains(&p) && is_proj.contains(&q) {
                mvn.insert((p, q));
                // a partial isometry witnesses ~ of the closures without further hypotheses
                t.case(
                    self.eq.closure_index(x) == self.eq.closure_index(p)
                        && self.eq.closure_index(s.star(x)) == self.eq.closure_index(q),
                    || format!("partial isometry {x} between {p} and {q}"),
                );
            }
        }
        let forward = t.finish("partial isometries witness equivalence");
        if !self.mvn.all() {
            let mut r = CheckResult::unmet(name, self.mvn.unmet());
            r.cases = forward.cases;
            return if forward.failed() { forward } else { r };
        }
        let mut t = Tally::new();
        for &p in &proj {
            for &q in &proj {
                let lhs = mvn.contains(&(p, q));
                let rhs = self.eq.related(self.eq.closure_index(p), self.eq.closure_index(q));
                t.case(lhs == rhs, || format!("p = {p}, q = {q}: MvN {lhs}, closures {rhs}"));
            }
        }
        combine(name, &[forward, t.finish(name)])
    }

    /// The finite-family additivity sweep agrees with pairwise additivity.
    pub fn additivity_reduction_check(&self) -> CheckResult {
        let name = "finite additivity from pairwise additivity";
        if let Some(r) = self.proper_or_unmet(name) {
            return r;
        }
        let a = &self.additivity;
        if a.perp_pairwise.is_some() && a.nabla_pairwise.is_some() {
            return unmet(name, &["~ is pairwise ⊥-additive or ∇-additive"]);
        }
        let mut t = Tally::new();
        if a.perp_pairwise.is_none() {
            t.case(a.perp_families.is_none(), || format!("⊥: {}", a.perp_families.clone().unwrap()));
        }
        if a.nabla_pairwise.is_none() {
            t.case(a.nabla_families.is_none(), || format!("∇: {}", a.nabla_families.clone().unwrap()));
        }
        let cov = if a.exhaustive { Coverage::Exhaustive } else { Coverage::Curated };
        t.finish(name).with_coverage(cov)
    }

    /// In a proper *-ring: sums of mutually annihilating elements close to the
    /// join, `~` is `⊥`-additive, `⊥`-cancellation holds, and projections are
    /// determined by their closures.
    pub fn ring_check(&self) -> CheckResult {
        let name = "ring sum and cancellation laws";
        let s = self.sys.semigroup();
        let mut missing = Vec::new();
        if s.ring().is_none() {
            missing.push("semigroup is a *-ring");
        }
        if !self.sys.is_proper() {
            missing.push("semigroup is proper");
        }
        if !missing.is_empty() {
            return unmet(name, &missing);
        }
        let l = self.lat();
        let z = s.zero();
        let mut t = Tally::new();
        for a in s.elements() {
            for b in s.elements() {
                if s.mul(s.star(a), b) == z && s.mul(s.star(b), a) == z {
                    let lhs = self.eq.closure_index(s.add(a, b));
                    let rhs = l.join(self.eq.closure_index(a), self.eq.closure_index(b));
                    t.case(lhs == rhs, || format!("a = {a}, b = {b}: closure of the sum"));
                }
            }
        }
        let add = &self.additivity;
        t.case(add.perp_pairwise.is_none(), || format!("⊥-additivity: {}", add.perp_pairwise.clone().unwrap()));
        let c = perp_cancellation_failure(s, &self.sys.perp);
        t.case(c.is_none(), || format!("⊥-cancellation fails at {:?}", c.unwrap()));
        let p = projection_closure_collision(&self.eq);
        t.case(p.is_none(), || format!("projections {:?} share a closure", p.unwrap()));
        t.finish(name)
    }

    /// An `s` and orthogonal `A, B` whose translates are not orthogonal.
    pub fn orthogonality_break(&self) -> Option<String> {
        let l = self.lat();
        let m = self.m();
        for x in self.sys.semigroup().elements() {
            let f = self.translate_row(x);
            for a in 0..m {
                for b in 0..m {
                    if self.perp_rel(a, b) && !self.perp_rel(f[a], f[b]) {
                        return Some(format!("s = {x}, A = {}, B = {}", l.set(a), l.set(b)));
                    }
                }
            }
        }
        None
    }

    pub fn summary(&self) -> EquivalenceSummary {
        let l = self.lat();
        let m = self.m();
        let mut seen = vec![false; m];
        let mut classes = Vec::new();
        let mut non_reflexive = Vec::new();
        for a in 0..m {
            if !self.eq.related(a, a) {
                non_reflexive.push(l.set(a).clone());
                continue;
            }
            if seen[a] {
                continue;
            }
            let class: Vec<usize> = (0..m).filter(|&b| self.eq.related(a, b)).collect();
            for &b in &class {
                seen[b] = true;
            }
            classes.push(class.iter().map(|&b| l.set(b).clone()).collect());
        }
        let mut witnesses = Vec::new();
        'outer: for a in 0..m {
            for b in 0..m {
                if let Some(x) = self.eq.sim_witness(a, b) {
                    if witnesses.len() == WITNESS_LIST_CAP {
                        break 'outer;
                    }
                    witnesses.push(self.eq.witness(x));
                }
            }
        }
        EquivalenceSummary {
            reflexive: self.eq.is_reflexive(),
            singleton_polars_exhaust: self.eq.singleton_polars_exhaust(),
            perp_additive: self.additivity.perp_additive(),
            nabla_additive: self.additivity.nabla_additive(),
            classes,
            non_reflexive,
            sim_finite: (0..m).filter(|&a| self.eq.sim_finite(a)).map(|a| l.set(a).clone()).collect(),
            nabla_finite: (0..m).filter(|&a| self.nabla_finite(a)).map(|a| l.set(a).clone()).collect(),
            witnesses,
            mvn_hypotheses: self.mvn.clone(),
            orthogonality_break: self.orthogonality_break(),
        }
    }
}

/// Sets of distinct lattice indices of size 1 to `max`, ascending, at most `budget` of them.
fn small_families(m: usize, max: usize, budget: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(m: usize, max: usize, budget: usize, start: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..m {
            if out.len() >= budget {
                return;
            }
            stack.push(i);
            out.push(stack.clone());
            if stack.len() < max {
                go(m, max, budget, i + 1, stack, out);
            }
            stack.pop();
        }
    }
    go(m, max, budget.max(1), 0, &mut stack, &mut out);
    out
}

fn count_families(m: usize, max: usize) -> usize {
    let mut total = 0usize;
    let mut c = 1usize;
    for k in 1..=max.min(m) {
        c = c * (m - k + 1) / k;
        total = total.saturating_add(c);
    }
    total
}

/// All equivalence checks, in report order.
pub fn equivalence_checks(
    suite: &EquivalenceSuite<'_>,
    cfg: &CheckConfig,
    fam: &StructureFamilies,
) -> Result<(EquivalenceSummary, Vec<CheckResult>)> {
    let checks = vec![
        suite.witness_check(),
        suite.reflexivity_check(),
        suite.transitivity_check(),
        suite.product_closure_check(),
        suite.nabla_polar_invariance_check(),
        suite.translation_join_check(),
        suite.divisibility_check(),
        suite.central_cutdown_check(),
        suite.complementary_closures_check(),
        suite.perspectivity_check(),
        suite.mutual_subequivalence_check(),
        suite.comparability_check(),
        suite.restriction_to_annihilators_check(cfg.lattice_cap)?,
        suite
            .restriction_to_bi_ideals_check(&fam.bi_ideals, cfg.lattice_cap)?
            .with_coverage(fam.coverage),
        suite.modularity_theorem_check(),
        suite.mvn_check(),
        suite.additivity_reduction_check(),
        suite.ring_check(),
    ];
    Ok((suite.summary(), checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarity::DEFAULT_LATTICE_CAP;
    use crate::semigroup::{from_spec, gen_zn_mult};

    fn set(n: usize, xs: &[usize]) -> ElementSubset {
        ElementSubset::from_indices(n, xs.iter().copied())
    }

    fn system(spec: &str) -> OrthoSystem {
        OrthoSystem::build(&from_spec(spec).unwrap(), DEFAULT_LATTICE_CAP).unwrap()
    }

    #[test]
    fn z6_closures_and_sim() {
        let sys = system("zn:6");
        let eq = Equivalence::new(sys.semigroup(), &sys.perp).unwrap();
        assert_eq!(eq.element_closure(2), &set(6, &[0, 2, 4]));
        assert_eq!(eq.element_closure(0), &set(6, &[0]));
        assert_eq!(eq.element_closure(1), &set(6, &[0, 1, 2, 3, 4, 5]));
        // commutative with trivial involution: A ~ B only when A = B
        let even = set(6, &[0, 2, 4]);
        let three = set(6, &[0, 3]);
        assert!(eq.sim(&even, &three).unwrap().is_none());
        let w = eq.sim(&even, &even).unwrap().unwrap();
        assert_eq!(w.s, 2);
        assert_eq!(eq.sim(&set(6, &[0]), &set(6, &[0])).unwrap().unwrap().s, 0);
        assert!(eq.is_reflexive());
        assert!(eq.singleton_polars_exhaust());
        assert!(matches!(eq.sim(&set(6, &[0, 2]), &even), Err(Error::ForeignElement(_))));
    }

    #[test]
    fn brandt_corners_are_equivalent() {
        // 0, e11 = 1, e12 = 2, e21 = 3, e22 = 4
        let sys = system("brandt:2");
        let eq = Equivalence::new(sys.semigroup(), &sys.perp).unwrap();
        let w = eq.sim(&set(5, &[0, 1]), &set(5, &[0, 4])).unwrap().unwrap();
        assert_eq!(eq.element_closure(w.s), &set(5, &[0, 1]));
        assert_eq!(w.b, set(5, &[0, 4]));
        assert_eq!(eq.element_closure(2), &set(5, &[0, 4]));
    }

    #[test]
    fn perspective_cases() {
        let sys = system("zn:6");
        let eq = Equivalence::new(sys.semigroup(), &sys.perp).unwrap();
        let l = eq.lattice();
        let top = l.top();
        for a in 0..l.len() {
            assert_eq!(l.set(eq.perspective(a, a).unwrap()), l.set(l.ortho(a)));
            if a != top {
                assert!(eq.perspective(top, a).is_none());
            }
        }
    }

    #[test]
    fn full_suite_on_small_gallery() {
        let cfg = CheckConfig::default();
        for spec in ["zn:6", "zn:30", "bool:2", "brandt:2", "brandt:3", "semilattice:3", "znring:6", "matring:2,3", "unit:brandt:2"] {
            let sys = system(spec);
            let fam = StructureFamilies::collect(&sys, &cfg).unwrap();
            let suite = EquivalenceSuite::new(&sys, &cfg).unwrap();
            let (_, checks) = equivalence_checks(&suite, &cfg, &fam).unwrap();
            for r in checks {
                assert!(!r.failed(), "{spec}: {r}");
            }
        }
    }

    #[test]
    fn unconditional_checks_apply_on_proper_instances() {
        let cfg = CheckConfig::default();
        let sys = system("bool:2");
        let suite = EquivalenceSuite::new(&sys, &cfg).unwrap();
        for r in [suite.transitivity_check(), suite.product_closure_check(), suite.nabla_polar_invariance_check(), suite.complementary_closures_check()] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn non_proper_is_gated() {
        let sys = OrthoSystem::build(&gen_zn_mult(4).unwrap(), 100).unwrap();
        let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
        assert!(suite.transitivity_check().hypothesis_not_met());
        assert!(suite.mutual_subequivalence_check().hypothesis_not_met());
    }

    #[test]
    fn comparability_certificate_on_z6() {
        let sys = system("zn:6");
        let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
        let l = sys.perp.lattice();
        let a = l.find(&set(6, &[0, 2, 4])).unwrap();
        let b = l.find(&set(6, &[0, 3])).unwrap();
        let cert = suite.comparability(a, b).unwrap();
        assert!(sys.nabla.lattice().contains(&cert.ideal));
        assert_eq!(cert.left.a, cert.left.a.intersection(&cert.ideal));
    }

    #[test]
    fn family_enumeration_counts() {
        assert_eq!(small_families(5, 3, usize::MAX).len(), 5 + 10 + 10);
        assert_eq!(count_families(5, 3), 25);
        assert_eq!(small_families(5, 3, 7).len(), 7);
    }

    #[test]
    fn ring_laws_on_z6_ring() {
        let sys = system("znring:6");
        let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
        let r = suite.ring_check();
        assert!(r.passed(), "{r}");
        assert!(suite.mvn_hypotheses().perp_cancellative);
    }
}
