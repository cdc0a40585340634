//! Lattices inside *-subsemigroups and the transfer results between them and the whole semigroup.

use std::collections::BTreeSet;

use crate::check::{CheckConfig, CheckResult, Coverage, Tally};
use crate::error::Result;
use crate::polarity::{relative_lattice, OrthoSystem, RelationKind, RelationMatrix};
use crate::semigroup::StarSemigroup;
use crate::subset::ElementSubset;
use crate::subsets::{Enumeration, Family, SubsetAlgebra, SubsetPredicate};

/// Upper bound on right ideals listed per subsemigroup.
const RIGHT_IDEAL_CAP: usize = 512;

/// Upper bound on `(A, I)` pairs visited by the centre identity check.
const PAIR_BUDGET: usize = 60_000;

/// The subset families the structure checks quantify over.
#[derive(Debug, Clone)]
pub struct StructureFamilies {
    /// Bi-hereditary *-subsemigroups.
    pub bihereditary: Vec<ElementSubset>,
    /// Two-sided ideals containing the zero.
    pub ideals: Vec<ElementSubset>,
    /// Self-adjoint bi-ideals.
    pub bi_ideals: Vec<ElementSubset>,
    pub coverage: Coverage,
}

impl StructureFamilies {
    /// Every member for small carriers; above `cfg.exhaustive_cap`, closures of
    /// random seeds plus the annihilators that qualify.
    pub fn collect(sys: &OrthoSystem, cfg: &CheckConfig) -> Result<StructureFamilies> {
        let s = sys.semigroup();
        let alg = SubsetAlgebra::new(s);
        let n = s.len();
        if cfg.is_exhaustive(n) {
            return Ok(StructureFamilies {
                bihereditary: alg.family(Family::BiHereditaryStar, Enumeration::Exhaustive)?,
                ideals: alg.family(Family::Ideals, Enumeration::Exhaustive)?,
                bi_ideals: alg.family(Family::SelfAdjointBiIdeals, Enumeration::Exhaustive)?,
                coverage: Coverage::Exhaustive,
            });
        }
        let mode = Enumeration::Sampled {
            samples: cfg.samples,
            seed: cfg.seed,
        };
        let extra: Vec<&ElementSubset> = sys
            .perp
            .lattice()
            .sets()
            .iter()
            .chain(sys.nabla.lattice().sets())
            .collect();
        let grow = |family: Family| -> Result<Vec<ElementSubset>> {
            let mut out: BTreeSet<ElementSubset> = alg.family(family, mode)?.into_iter().collect();
            for x in &extra {
                if alg.holds_all(family.predicates(), x) {
                    out.insert((*x).clone());
                }
            }
            Ok(out.into_iter().collect())
        };
        Ok(StructureFamilies {
            bihereditary: grow(Family::BiHereditaryStar)?,
            ideals: grow(Family::Ideals)?,
            bi_ideals: grow(Family::SelfAdjointBiIdeals)?,
            coverage: Coverage::Curated,
        })
    }
}

/// Right ideals of the subsemigroup `a` (each containing the zero), as unions
/// of principal ones. The flag is false when the listing was cut off at `cap`.
pub fn right_ideals_within(s: &StarSemigroup, a: &ElementSubset, cap: usize) -> (Vec<ElementSubset>, bool) {
    let n = s.len();
    let principal: Vec<ElementSubset> = a
        .iter()
        .map(|x| {
            let mut p = ElementSubset::from_indices(n, a.iter().map(|y| s.mul(x, y)));
            p.insert(x);
            p.insert(s.zero());
            p
        })
        .collect();
    let mut found: BTreeSet<ElementSubset> = BTreeSet::new();
    found.insert(s.zero_set());
    let mut frontier = vec![s.zero_set()];
    while let Some(f) = frontier.pop() {
        for p in &principal {
            if p.is_subset(&f) {
                continue;
            }
            let u = f.union(p);
            if found.insert(u.clone()) {
                if found.len() >= cap {
                    return (found.into_iter().collect(), false);
                }
                frontier.push(u);
            }
        }
    }
    (found.into_iter().collect(), true)
}

/// `s ∇_I t ⟺ s ∇ t` for `s, t` in a self-adjoint bi-ideal `I`.
pub fn tri_restriction_check(sys: &OrthoSystem, i: &ElementSubset) -> CheckResult {
    let name = "nabla restricts to bi-ideals";
    let s = sys.semigroup();
    let alg = SubsetAlgebra::new(s);
    if !sys.is_proper() {
        return CheckResult::unmet(name, vec!["semigroup is proper".into()]);
    }
    if !alg.holds_all(&[SubsetPredicate::SelfAdjoint, SubsetPredicate::BiIdeal], i) || !i.contains(s.zero()) {
        return CheckResult::unmet(name, vec![format!("{i} is a self-adjoint bi-ideal")]);
    }
    let Some((view, to_owner)) = s.induced(i) else {
        return CheckResult::unmet(name, vec![format!("{i} is a *-subsemigroup")]);
    };
    let inner = RelationMatrix::build(&view, RelationKind::Nabla);
    let outer = sys.nabla.relation();
    let mut t = Tally::new();
    for a in 0..view.len() {
        for b in 0..view.len() {
            let (x, y) = (to_owner[a], to_owner[b]);
            t.case(inner.holds(a, b) == outer.holds(x, y), || format!("I = {i}, s = {x}, t = {y}"));
        }
    }
    t.finish(name)
}

/// `A^L = (A ∩ I)^L ∩ (A ∩ I^L)^L` and the same with `⊥`, for a bi-hereditary
/// *-subsemigroup `A` and an ideal `I`.
pub fn ideal_splitting_check(sys: &OrthoSystem, a: &ElementSubset, i: &ElementSubset) -> CheckResult {
    let name = "annihilator splitting along an ideal";
    let s = sys.semigroup();
    let alg = SubsetAlgebra::new(s);
    let mut unmet = Vec::new();
    if !sys.is_proper() {
        unmet.push("semigroup is proper".to_string());
    }
    if !alg.holds_all(Family::BiHereditaryStar.predicates(), a) {
        unmet.push(format!("{a} is a bi-hereditary *-subsemigroup"));
    }
    if !alg.holds(SubsetPredicate::Ideal, i) {
        unmet.push(format!("{i} is an ideal"));
    }
    if !unmet.is_empty() {
        return CheckResult::unmet(name, unmet);
    }
    let mut t = Tally::new();
    for p in [&sys.left, &sys.perp] {
        let lhs = p.polar(a);
        let mut rhs = p.polar(&a.intersection(i));
        rhs.intersect_with(&p.polar(&a.intersection(&p.polar(i))));
        t.case(lhs == rhs, || format!("{}: A = {a}, I = {i}: {lhs} vs {rhs}", p.kind()));
    }
    t.finish(name)
}

/// Every `∇`-closed set is central in the *-annihilator lattice.
pub fn annihilator_ideal_centre_check(sys: &OrthoSystem) -> CheckResult {
    let name = "nabla-closed sets are central";
    if !sys.is_proper() {
        return CheckResult::unmet(name, vec!["semigroup is proper".into()]);
    }
    let pp = sys.perp.lattice();
    let mut t = Tally::new();
    for z in sys.nabla.lattice().sets() {
        let Some(zi) = pp.find(z) else {
            t.case(false, || format!("{z} is not a *-annihilator"));
            continue;
        };
        let zc = pp.ortho(zi);
        for p in 0..pp.len() {
            t.case(pp.join(pp.meet(p, zi), pp.meet(p, zc)) == p, || {
                format!("z = {z}, p = {}", pp.set(p))
            });
        }
    }
    t.finish(name)
}

/// `J ↦ J^∇∇` and `I ↦ A ∩ I` between the relative `∇`-lattice of a
/// self-adjoint bi-ideal `A` and the `∇`-closed sets below `A^∇∇`.
///
/// When `A` is only a bi-hereditary *-subsemigroup, checks that `I ↦ A ∩ I` is
/// an injective complement-preserving map into the relative lattice.
pub fn relative_centre_check(sys: &OrthoSystem, a: &ElementSubset, lattice_cap: usize) -> Result<CheckResult> {
    let name = "relative centre correspondence";
    let s = sys.semigroup();
    let alg = SubsetAlgebra::new(s);
    if !sys.is_proper() {
        return Ok(CheckResult::unmet(name, vec!["semigroup is proper".into()]));
    }
    let bi_ideal = alg.holds_all(&[SubsetPredicate::SelfAdjoint, SubsetPredicate::BiIdeal], a);
    if !bi_ideal && !alg.holds_all(Family::BiHereditaryStar.predicates(), a) {
        return Ok(CheckResult::unmet(name, vec![format!("{a} is a self-adjoint bi-ideal")]));
    }
    let rel = relative_lattice(s, a, RelationKind::Nabla, lattice_cap)?;
    let inner = rel.lattice();
    let pn = sys.nabla.lattice();
    let hull = sys.nabla.closure(a);
    let target: Vec<&ElementSubset> = pn.sets().iter().filter(|x| x.is_subset(&hull)).collect();
    let mut t = Tally::new();
    let mut images = BTreeSet::new();
    for i in &target {
        let g = a.intersection(i);
        t.case(inner.contains(&g), || format!("A = {a}: A ∩ {i} = {g} is not relatively closed"));
        let comp = rel.polar(&g);
        let want = a.intersection(&sys.nabla.polar(i));
        t.case(comp == want, || format!("A = {a}, I = {i}: complement {comp} vs {want}"));
        t.case(images.insert(g.clone()), || format!("A = {a}: A ∩ I repeats {g}"));
        if bi_ideal {
            let back = sys.nabla.closure(&g);
            t.case(back == **i, || format!("A = {a}: (A ∩ {i})^∇∇ = {back}"));
        }
    }
    if bi_ideal {
        for j in inner.sets() {
            let f = sys.nabla.closure(j);
            t.case(f.is_subset(&hull), || format!("A = {a}: {j}^∇∇ = {f} escapes A^∇∇"));
            t.case(a.intersection(&f) == *j, || format!("A = {a}: A ∩ {j}^∇∇ ≠ {j}"));
        }
        t.case(inner.len() == target.len(), || {
            format!("A = {a}: sizes {} and {}", inner.len(), target.len())
        });
    }
    Ok(t.finish(name))
}

/// The relative `⊥`-lattice of a commutative bi-hereditary *-subsemigroup is
/// `{A ∩ I : I ∈ P(S)^⊥}`, and the interval below `A` when `A` is itself closed.
pub fn comann_check(sys: &OrthoSystem, a: &ElementSubset, lattice_cap: usize) -> Result<CheckResult> {
    let name = "commutative subsemigroup annihilators";
    let s = sys.semigroup();
    let alg = SubsetAlgebra::new(s);
    let mut unmet = Vec::new();
    if !sys.is_proper() {
        unmet.push("semigroup is proper".to_string());
    }
    if !s.is_commutative_on(a) {
        unmet.push(format!("{a} is commutative"));
    }
    if !alg.holds_all(Family::BiHereditaryStar.predicates(), a) {
        unmet.push(format!("{a} is a bi-hereditary *-subsemigroup"));
    }
    if !unmet.is_empty() {
        return Ok(CheckResult::unmet(name, unmet));
    }
    let rel = relative_lattice(s, a, RelationKind::Perp, lattice_cap)?;
    let inner: BTreeSet<&ElementSubset> = rel.lattice().sets().iter().collect();
    let traces: BTreeSet<ElementSubset> = sys.perp.lattice().sets().iter().map(|i| a.intersection(i)).collect();
    let traces_ref: BTreeSet<&ElementSubset> = traces.iter().collect();
    let mut t = Tally::new();
    let w = inner.symmetric_difference(&traces_ref).next().cloned();
    t.case(w.is_none(), || format!("A = {a}: families differ at {}", w.unwrap()));
    if sys.perp.lattice().contains(a) {
        let interval: BTreeSet<&ElementSubset> =
            sys.perp.lattice().sets().iter().filter(|b| b.is_subset(a)).collect();
        let w = inner.symmetric_difference(&interval).next().cloned();
        t.case(w.is_none(), || format!("A = {a}: interval differs at {}", w.unwrap()));
    }
    Ok(t.finish(name))
}

/// A commutative *-annihilator has no proper closed subset with the same `∇`-polar.
pub fn nabla_finite_check(sys: &OrthoSystem) -> CheckResult {
    let name = "commutative annihilators are nabla-finite";
    if !sys.is_proper() {
        return CheckResult::unmet(name, vec!["semigroup is proper".into()]);
    }
    let s = sys.semigroup();
    let pp = sys.perp.lattice();
    let mut t = Tally::new();
    for a in pp.sets().iter().filter(|a| s.is_commutative_on(a)) {
        let an = sys.nabla.polar(a);
        for b in pp.sets().iter().filter(|b| b.is_subset(a) && *b != a) {
            t.case(sys.nabla.polar(b) != an, || format!("A = {a}, B = {b}"));
        }
    }
    t.finish(name)
}

fn is_essential(sys: &OrthoSystem, t: &ElementSubset) -> bool {
    sys.perp.polar(t) == sys.semigroup().zero_set()
}

/// Essential right ideals of bi-hereditary *-subsemigroups share all three polars.
pub fn essential_right_ideal_check(sys: &OrthoSystem, fam: &StructureFamilies) -> CheckResult {
    let name = "essential right ideals share polars";
    if !sys.is_proper() {
        return CheckResult::unmet(name, vec!["semigroup is proper".into()]);
    }
    let s = sys.semigroup();
    let zero = s.zero_set();
    let mut t = Tally::new();
    let mut complete = true;
    for a in &fam.bihereditary {
        let (ideals, all) = right_ideals_within(s, a, RIGHT_IDEAL_CAP);
        complete &= all;
        for i in ideals.iter().filter(|i| a.intersection(&sys.perp.polar(i)) == zero) {
            for p in [&sys.left, &sys.perp, &sys.nabla] {
                t.case(p.polar(i) == p.polar(a), || format!("{}: A = {a}, I = {i}", p.kind()));
            }
        }
    }
    let r = t.finish(name);
    if complete {
        r.with_coverage(fam.coverage)
    } else {
        r.with_coverage(Coverage::Curated)
    }
}

/// An essential ideal meets every bi-hereditary *-subsemigroup essentially.
pub fn essential_intersection_check(sys: &OrthoSystem, fam: &StructureFamilies) -> CheckResult {
    let name = "essential ideals stay essential";
    if !sys.is_proper() {
        return CheckResult::unmet(name, vec!["semigroup is proper".into()]);
    }
    let zero = sys.semigroup().zero_set();
    let mut t = Tally::new();
    for i in fam.ideals.iter().filter(|i| is_essential(sys, i)) {
        for a in &fam.bihereditary {
            let ai = a.intersection(i);
            t.case(a.intersection(&sys.perp.polar(&ai)) == zero, || format!("I = {i}, A = {a}"));
        }
    }
    t.finish(name).with_coverage(fam.coverage)
}

/// For a self-adjoint essential ideal `I`, `B ↦ B^⊥⊥` and `A ↦ A ∩ I` are
/// inverse complement-preserving bijections for both `⊥` and `∇`.
pub fn essential_ideal_iso_check(sys: &OrthoSystem, i: &ElementSubset, lattice_cap: usize) -> Result<CheckResult> {
    let name = "essential ideal lattice isomorphism";
    let s = sys.semigroup();
    let alg = SubsetAlgebra::new(s);
    let mut unmet = Vec::new();
    if !sys.is_proper() {
        unmet.push("semigroup is proper".to_string());
    }
    if !alg.holds_all(&[SubsetPredicate::Ideal, SubsetPredicate::SelfAdjoint], i) {
        unmet.push(format!("{i} is a self-adjoint ideal"));
    }
    if !unmet.is_empty() || !is_essential(sys, i) {
        unmet.push(format!("{i} is essential"));
        return Ok(CheckResult::unmet(name, unmet));
    }
    let mut t = Tally::new();
    for (whole, kind) in [(&sys.perp, RelationKind::Perp), (&sys.nabla, RelationKind::Nabla)] {
        let rel = relative_lattice(s, i, kind, lattice_cap)?;
        for b in rel.lattice().sets() {
            let f = sys.perp.closure(b);
            t.case(whole.lattice().contains(&f), || format!("{}: {b}^⊥⊥ = {f} not closed", whole.kind()));
            t.case(f.intersection(i) == *b, || format!("{}: {b}^⊥⊥ ∩ I ≠ {b}", whole.kind()));
            let fc = sys.perp.closure(&rel.polar(b));
            let cf = whole.polar(&f);
            t.case(fc == cf, || format!("{}: complement of {b} maps to {fc}, expected {cf}", whole.kind()));
        }
        for a in whole.lattice().sets() {
            let g = a.intersection(i);
            t.case(rel.lattice().contains(&g), || format!("{}: {a} ∩ I = {g} not relatively closed", whole.kind()));
            t.case(sys.perp.closure(&g) == *a, || format!("{}: ({a} ∩ I)^⊥⊥ ≠ {a}", whole.kind()));
        }
        t.case(rel.lattice().len() == whole.lattice().len(), || {
            format!("{}: sizes {} and {}", whole.kind(), rel.lattice().len(), whole.lattice().len())
        });
    }
    Ok(t.finish(name))
}

/// Folds one check over a family; unmet everywhere becomes unmet overall.
fn over_family<'a>(
    name: &str,
    coverage: Coverage,
    items: impl IntoIterator<Item = &'a ElementSubset>,
    mut f: impl FnMut(&ElementSubset) -> Result<CheckResult>,
) -> Result<CheckResult> {
    let mut cases = 0;
    let mut applicable = 0;
    let mut first_unmet = None;
    for x in items {
        let r = f(x)?;
        cases += r.cases;
        if r.failed() {
            let mut out = CheckResult::fail(name, format!("{r}"));
            out.cases = cases;
            return Ok(out.with_coverage(coverage));
        }
        if r.hypothesis_not_met() {
            first_unmet.get_or_insert(format!("{r}"));
        } else {
            applicable += 1;
        }
    }
    if applicable == 0 {
        let why = first_unmet.unwrap_or_else(|| "no instance in family".into());
        return Ok(CheckResult::unmet(name, vec![why]));
    }
    Ok(CheckResult::pass(name, cases).with_coverage(coverage))
}

/// All structure checks over the families of `sys`.
pub fn structure_checks(sys: &OrthoSystem, cfg: &CheckConfig) -> Result<Vec<CheckResult>> {
    structure_checks_over(sys, cfg, &StructureFamilies::collect(sys, cfg)?)
}

/// [`structure_checks`] over families collected beforehand.
pub fn structure_checks_over(sys: &OrthoSystem, cfg: &CheckConfig, fam: &StructureFamilies) -> Result<Vec<CheckResult>> {
    let cov = fam.coverage;
    let s = sys.semigroup();
    let mut out = Vec::new();
    out.push(over_family("nabla restricts to bi-ideals", cov, &fam.bi_ideals, |i| {
        Ok(tri_restriction_check(sys, i))
    })?);
    let pairs = fam.bihereditary.len() * fam.ideals.len();
    let stride = pairs.div_ceil(PAIR_BUDGET).max(1);
    let mut t = Tally::new();
    let mut applicable = 0;
    for (k, (a, i)) in fam
        .bihereditary
        .iter()
        .flat_map(|a| fam.ideals.iter().map(move |i| (a, i)))
        .enumerate()
    {
        if k % stride != 0 {
            continue;
        }
        let r = ideal_splitting_check(sys, a, i);
        if !r.hypothesis_not_met() {
            applicable += 1;
        }
        t.case(!r.failed(), || format!("{r}"));
    }
    let ideal_splitting = if applicable == 0 {
        CheckResult::unmet("annihilator splitting along an ideal", vec!["semigroup is proper".into()])
    } else {
        let cov = if stride > 1 { Coverage::Curated } else { cov };
        t.finish("annihilator splitting along an ideal").with_coverage(cov)
    };
    out.push(ideal_splitting);
    out.push(annihilator_ideal_centre_check(sys));
    let relative_centre_family: BTreeSet<&ElementSubset> = fam.bi_ideals.iter().chain(&fam.bihereditary).collect();
    out.push(over_family("relative centre correspondence", cov, relative_centre_family, |a| {
        relative_centre_check(sys, a, cfg.lattice_cap)
    })?);
    let commutative: BTreeSet<&ElementSubset> = fam
        .bihereditary
        .iter()
        .chain(sys.perp.lattice().sets())
        .filter(|a| s.is_commutative_on(a))
        .collect();
    out.push(over_family("commutative subsemigroup annihilators", cov, commutative, |a| {
        comann_check(sys, a, cfg.lattice_cap)
    })?);
    out.push(nabla_finite_check(sys));
    out.push(essential_right_ideal_check(sys, &fam));
    out.push(essential_intersection_check(sys, &fam));
    out.push(over_family("essential ideal lattice isomorphism", cov, &fam.ideals, |i| {
        essential_ideal_iso_check(sys, i, cfg.lattice_cap)
    })?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarity::{closed_lattice, DEFAULT_LATTICE_CAP};
    use crate::semigroup::{from_spec, gen_boolean_matrices, gen_zn_mult};

    fn set(n: usize, xs: &[usize]) -> ElementSubset {
        ElementSubset::from_indices(n, xs.iter().copied())
    }

    fn z6() -> OrthoSystem {
        OrthoSystem::build(&gen_zn_mult(6).unwrap(), DEFAULT_LATTICE_CAP).unwrap()
    }

    #[test]
    fn relative_lattice_of_whole_matches() {
        for spec in ["zn:6", "bool:2", "brandt:2"] {
            let s = from_spec(spec).unwrap();
            for kind in [RelationKind::Perp, RelationKind::Nabla, RelationKind::L] {
                let a = relative_lattice(&s, &s.full_set(), kind.clone(), 1000).unwrap();
                let b = closed_lattice(&s, kind, 1000).unwrap();
                assert_eq!(a.lattice().sets(), b.lattice().sets());
            }
        }
    }

    #[test]
    fn z6_named_instances() {
        let sys = z6();
        let even = set(6, &[0, 2, 4]);
        let three = set(6, &[0, 3]);
        assert!(tri_restriction_check(&sys, &even).passed());
        assert!(tri_restriction_check(&sys, &sys.semigroup().full_set()).passed());
        assert!(tri_restriction_check(&sys, &set(6, &[0])).passed());
        assert!(ideal_splitting_check(&sys, &set(6, &[0, 1, 2, 3, 4, 5]), &even).passed());
        assert!(ideal_splitting_check(&sys, &even, &set(6, &[0])).passed());
        assert!(annihilator_ideal_centre_check(&sys).passed());
        assert!(relative_centre_check(&sys, &three, 1000).unwrap().passed());
        assert!(relative_centre_check(&sys, &sys.semigroup().full_set(), 1000).unwrap().passed());
        assert!(comann_check(&sys, &even, 1000).unwrap().passed());
        assert!(comann_check(&sys, &set(6, &[0]), 1000).unwrap().passed());
        assert!(nabla_finite_check(&sys).passed());
    }

    #[test]
    fn hypotheses_are_reported() {
        let sys = z6();
        // {0,2} is not closed under products
        assert!(ideal_splitting_check(&sys, &set(6, &[0, 2]), &set(6, &[0])).hypothesis_not_met());
        assert!(ideal_splitting_check(&sys, &sys.semigroup().full_set(), &set(6, &[0, 1])).hypothesis_not_met());
        let b = OrthoSystem::build(&gen_boolean_matrices(2).unwrap(), 1000).unwrap();
        let full = b.semigroup().full_set();
        assert!(comann_check(&b, &full, 1000).unwrap().hypothesis_not_met());
    }

    #[test]
    fn right_ideals_of_z6() {
        let s = gen_zn_mult(6).unwrap();
        let (ideals, complete) = right_ideals_within(&s, &s.full_set(), 100);
        assert!(complete);
        // ideals of Z_6 under multiplication: unions of {0}, {0,3}, {0,2,4}, S
        let brute: Vec<ElementSubset> = (0..64u64)
            .map(|m| ElementSubset::from_mask(6, m))
            .filter(|t| t.contains(0) && SubsetAlgebra::new(&s).holds(SubsetPredicate::RightIdeal, t))
            .collect();
        assert_eq!(ideals, brute);
    }

    #[test]
    fn all_structure_checks_on_small_gallery() {
        for spec in ["zn:6", "zn:10", "bool:2", "brandt:2", "semilattice:3", "znring:6", "unit:brandt:2"] {
            let s = from_spec(spec).unwrap();
            let sys = OrthoSystem::build(&s, DEFAULT_LATTICE_CAP).unwrap();
            for r in structure_checks(&sys, &CheckConfig::default()).unwrap() {
                assert!(!r.failed(), "{spec}: {r}");
            }
        }
    }

    #[test]
    fn essential_ideals_of_z6() {
        let sys = z6();
        let s = sys.semigroup();
        // {0,2,3,4} is essential: its polar is {0}
        let i = set(6, &[0, 2, 3, 4]);
        let r = essential_ideal_iso_check(&sys, &i, 1000).unwrap();
        assert!(r.passed(), "{r}");
        assert!(essential_ideal_iso_check(&sys, &s.full_set(), 1000).unwrap().passed());
        assert!(essential_ideal_iso_check(&sys, &set(6, &[0, 3]), 1000).unwrap().hypothesis_not_met());
    }

    #[test]
    fn boolean_diagonal_is_commutative_and_checked() {
        let s = gen_boolean_matrices(2).unwrap();
        let sys = OrthoSystem::build(&s, 1000).unwrap();
        let alg = SubsetAlgebra::new(&s);
        let diag = sys
            .perp
            .lattice()
            .sets()
            .iter()
            .find(|a| a.len() == 2 && s.is_commutative_on(a) && alg.holds_all(Family::BiHereditaryStar.predicates(), a))
            .cloned()
            .expect("a rank-one diagonal corner");
        assert!(comann_check(&sys, &diag, 1000).unwrap().passed());
    }

    #[test]
    fn non_proper_is_unmet() {
        let s = gen_zn_mult(4).unwrap();
        let sys = OrthoSystem::build(&s, 1000).unwrap();
        let rs = structure_checks(&sys, &CheckConfig::default()).unwrap();
        assert!(rs.iter().all(|r| !r.failed()));
        assert!(annihilator_ideal_centre_check(&sys).hypothesis_not_met());
    }
}
