//! Subset algebra over a *-semigroup: square roots, positive parts, the
//! rooted/hereditary predicates and the two correspondences between
//! left-rooted left ideals and their positive or self-adjoint parts.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::{CheckResult, Coverage, Tally};
use crate::error::{Error, Result};
use crate::semigroup::StarSemigroup;
use crate::subset::ElementSubset;

/// Largest carrier for which subset families are enumerated by a full sweep.
pub const EXHAUSTIVE_SUBSET_CAP: usize = 16;

/// Carrier bound for the all-subsets law sweeps.
pub const SUBSET_LAW_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetPredicate {
    Subsemigroup,
    LeftIdeal,
    RightIdeal,
    Ideal,
    QuasiIdeal,
    BiIdeal,
    SelfAdjoint,
    StarSubsemigroup,
    LeftRooted,
    RightRooted,
    Rooted,
    QuasiRooted,
    PositiveRooted,
    Hereditary,
    PositiveHereditary,
    BiHereditary,
}

impl SubsetPredicate {
    pub const ALL: [SubsetPredicate; 16] = [
        SubsetPredicate::Subsemigroup,
        SubsetPredicate::LeftIdeal,
        SubsetPredicate::RightIdeal,
        SubsetPredicate::Ideal,
        SubsetPredicate::QuasiIdeal,
        SubsetPredicate::BiIdeal,
        SubsetPredicate::SelfAdjoint,
        SubsetPredicate::StarSubsemigroup,
        SubsetPredicate::LeftRooted,
        SubsetPredicate::RightRooted,
        SubsetPredicate::Rooted,
        SubsetPredicate::QuasiRooted,
        SubsetPredicate::PositiveRooted,
        SubsetPredicate::Hereditary,
        SubsetPredicate::PositiveHereditary,
        SubsetPredicate::BiHereditary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubsetPredicate::Subsemigroup => "subsemigroup",
            SubsetPredicate::LeftIdeal => "left_ideal",
            SubsetPredicate::RightIdeal => "right_ideal",
            SubsetPredicate::Ideal => "ideal",
            SubsetPredicate::QuasiIdeal => "quasi_ideal",
            SubsetPredicate::BiIdeal => "bi_ideal",
            SubsetPredicate::SelfAdjoint => "self_adjoint",
            SubsetPredicate::StarSubsemigroup => "star_subsemigroup",
            SubsetPredicate::LeftRooted => "left_rooted",
            SubsetPredicate::RightRooted => "right_rooted",
            SubsetPredicate::Rooted => "rooted",
            SubsetPredicate::QuasiRooted => "quasi_rooted",
            SubsetPredicate::PositiveRooted => "positive_rooted",
            SubsetPredicate::Hereditary => "hereditary",
            SubsetPredicate::PositiveHereditary => "positive_hereditary",
            SubsetPredicate::BiHereditary => "bi_hereditary",
        }
    }
}

impl fmt::Display for SubsetPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Subset families that the correspondence and structure checks range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    LeftRootedLeftIdeals,
    /// Positive-rooted, positive-hereditary subsets of the positive elements.
    PositiveRootedPositiveHereditary,
    QuasiRootedHereditaryStar,
    QuasiRootedStar,
    BiHereditaryStar,
    Ideals,
    SelfAdjointBiIdeals,
}

impl Family {
    pub fn predicates(self) -> &'static [SubsetPredicate] {
        use SubsetPredicate::*;
        match self {
            Family::LeftRootedLeftIdeals => &[LeftRooted, LeftIdeal],
            Family::PositiveRootedPositiveHereditary => &[PositiveRooted, PositiveHereditary],
            Family::QuasiRootedHereditaryStar => &[QuasiRooted, Hereditary, StarSubsemigroup],
            Family::QuasiRootedStar => &[QuasiRooted, StarSubsemigroup],
            Family::BiHereditaryStar => &[BiHereditary, StarSubsemigroup],
            Family::Ideals => &[Ideal],
            Family::SelfAdjointBiIdeals => &[SelfAdjoint, BiIdeal],
        }
    }

    fn within_positives(self) -> bool {
        self == Family::PositiveRootedPositiveHereditary
    }
}

/// How a family is listed: a full sweep, or random seeds closed up into members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl Enumeration {
    /// Exhaustive when the carrier is at most `cap`, otherwise sampled.
    pub fn auto(n: usize, cap: usize, samples: usize, seed: u64) -> Self {
        if n <= cap.min(EXHAUSTIVE_SUBSET_CAP) {
            Enumeration::Exhaustive
        } else {
            Enumeration::Sampled { samples, seed }
        }
    }

    pub fn coverage(self) -> Coverage {
        match self {
            Enumeration::Exhaustive => Coverage::Exhaustive,
            Enumeration::Sampled { samples, seed } => Coverage::Sampled { samples, seed },
        }
    }
}

/// Subset operations bound to one semigroup, with its positive elements cached.
#[derive(Debug, Clone)]
pub struct SubsetAlgebra<'a> {
    s: &'a StarSemigroup,
    positives: ElementSubset,
}

impl<'a> SubsetAlgebra<'a> {
    pub fn new(s: &'a StarSemigroup) -> Self {
        let positives = ElementSubset::from_indices(s.len(), s.elements().map(|t| s.norm(t)));
        SubsetAlgebra { s, positives }
    }

    pub fn semigroup(&self) -> &'a StarSemigroup {
        self.s
    }

    pub fn positives(&self) -> &ElementSubset {
        &self.positives
    }

    /// `{s : s*s ∈ T}`
    pub fn sqrt(&self, t: &ElementSubset) -> ElementSubset {
        ElementSubset::from_predicate(self.s.len(), |x| t.contains(self.s.norm(x)))
    }

    /// `T ∩ S_+`
    pub fn positive_part(&self, t: &ElementSubset) -> ElementSubset {
        t.intersection(&self.positives)
    }

    /// `{t*t : t ∈ T}`
    pub fn t_squared(&self, t: &ElementSubset) -> ElementSubset {
        t.map(self.s.len(), |x| self.s.norm(x))
    }

    pub fn star_image(&self, t: &ElementSubset) -> ElementSubset {
        t.map(self.s.len(), |x| self.s.star(x))
    }

    /// `T ∩ T*`
    pub fn sa_part(&self, t: &ElementSubset) -> ElementSubset {
        t.intersection(&self.star_image(t))
    }

    /// `ST`
    pub fn left_product(&self, t: &ElementSubset) -> ElementSubset {
        let mut out = self.s.empty_set();
        for x in t {
            for a in self.s.elements() {
                out.insert(self.s.mul(a, x));
            }
        }
        out
    }

    /// `TS`
    pub fn right_product(&self, t: &ElementSubset) -> ElementSubset {
        let mut out = self.s.empty_set();
        for x in t {
            for a in self.s.elements() {
                out.insert(self.s.mul(x, a));
            }
        }
        out
    }

    /// `{ts : t ∈ T}`
    pub fn times(&self, t: &ElementSubset, s: usize) -> ElementSubset {
        t.map(self.s.len(), |x| self.s.mul(x, s))
    }

    fn closed_under_products(&self, t: &ElementSubset) -> bool {
        t.iter().all(|a| t.iter().all(|b| t.contains(self.s.mul(a, b))))
    }

    pub fn holds(&self, predicate: SubsetPredicate, t: &ElementSubset) -> bool {
        use SubsetPredicate::*;
        let s = self.s;
        match predicate {
            Subsemigroup => self.closed_under_products(t),
            LeftIdeal => t.iter().all(|x| s.elements().all(|a| t.contains(s.mul(a, x)))),
            RightIdeal => t.iter().all(|x| s.elements().all(|a| t.contains(s.mul(x, a)))),
            Ideal => self.holds(LeftIdeal, t) && self.holds(RightIdeal, t),
            QuasiIdeal => {
                self.closed_under_products(t)
                    && self
                        .right_product(t)
                        .intersection(&self.left_product(t))
                        .is_subset(t)
            }
            BiIdeal => {
                self.closed_under_products(t) && {
                    let ts = self.right_product(t);
                    ts.iter().all(|x| t.iter().all(|c| t.contains(s.mul(x, c))))
                }
            }
            SelfAdjoint => self.star_image(t) == *t,
            StarSubsemigroup => self.holds(SelfAdjoint, t) && self.closed_under_products(t),
            LeftRooted => self.sqrt(t).is_subset(t),
            RightRooted => self.star_image(&self.sqrt(t)).is_subset(t),
            Rooted => self.holds(LeftRooted, t) && self.holds(RightRooted, t),
            QuasiRooted => {
                let r = self.sqrt(t);
                r.intersection(&self.star_image(&r)).is_subset(t)
            }
            PositiveRooted => self.positive_part(&self.sqrt(t)).is_subset(t),
            Hereditary => self.sqrt(t).iter().all(|x| {
                let xs = s.star(x);
                s.elements().all(|a| t.contains(s.mul(s.mul(xs, a), x)))
            }),
            PositiveHereditary => self.sqrt(t).iter().all(|x| {
                let xs = s.star(x);
                self.positives.iter().all(|p| t.contains(s.mul(s.mul(xs, p), x)))
            }),
            BiHereditary => self.positive_part(t).iter().all(|x| {
                self.positives.iter().all(|p| t.contains(s.mul(s.mul(x, p), x)))
            }),
        }
    }

    pub fn holds_all(&self, predicates: &[SubsetPredicate], t: &ElementSubset) -> bool {
        predicates.iter().all(|&p| self.holds(p, t))
    }

    /// Every subset containing the zero that satisfies all `predicates`, in
    /// numeric bitmask order. The empty set is never listed.
    pub fn enumerate_with(&self, predicates: &[SubsetPredicate], cap: usize) -> Result<Vec<ElementSubset>> {
        let n = self.s.len();
        let cap = cap.min(EXHAUSTIVE_SUBSET_CAP);
        if n > cap {
            return Err(Error::CapExceeded {
                what: "exhaustive subset enumeration carrier",
                size: n,
                cap,
            });
        }
        let z = 1u64 << self.s.zero();
        Ok((0..1u64 << n)
            .filter(|m| m & z != 0)
            .map(|m| ElementSubset::from_mask(n, m))
            .filter(|t| self.holds_all(predicates, t))
            .collect())
    }

    /// Members of `family`, either all of them or a sample built from random seeds.
    pub fn family(&self, family: Family, mode: Enumeration) -> Result<Vec<ElementSubset>> {
        match mode {
            Enumeration::Exhaustive if family.within_positives() => {
                let n = self.s.len();
                if n > EXHAUSTIVE_SUBSET_CAP {
                    return Err(Error::CapExceeded {
                        what: "exhaustive subset enumeration carrier",
                        size: n,
                        cap: EXHAUSTIVE_SUBSET_CAP,
                    });
                }
                let others: Vec<usize> = self.positives.iter().filter(|&p| p != self.s.zero()).collect();
                let mut out: Vec<ElementSubset> = (0..1u64 << others.len())
                    .map(|m| {
                        let mut t = self.s.zero_set();
                        for (i, &p) in others.iter().enumerate() {
                            if m >> i & 1 == 1 {
                                t.insert(p);
                            }
                        }
                        t
                    })
                    .filter(|t| self.holds_all(family.predicates(), t))
                    .collect();
                out.sort();
                Ok(out)
            }
            Enumeration::Exhaustive => self.enumerate_with(family.predicates(), EXHAUSTIVE_SUBSET_CAP),
            Enumeration::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let pool: Vec<usize> = if family.within_positives() {
                    self.positives.to_vec()
                } else {
                    self.s.elements().collect()
                };
                let mut found = BTreeSet::new();
                found.insert(self.closure(family, &self.s.zero_set()));
                let pool_set = ElementSubset::from_indices(self.s.len(), pool.iter().copied());
                found.insert(self.closure(family, &pool_set));
                for _ in 0..samples {
                    let k = rng.gen_range(1..=3);
                    let seed_set = ElementSubset::from_indices(
                        self.s.len(),
                        (0..k).map(|_| pool[rng.gen_range(0..pool.len())]),
                    );
                    found.insert(self.closure(family, &seed_set));
                }
                Ok(found.into_iter().collect())
            }
        }
    }

    /// The smallest member of `family` containing `seed` (and the zero).
    pub fn closure(&self, family: Family, seed: &ElementSubset) -> ElementSubset {
        let s = self.s;
        let mut t = seed.clone();
        t.insert(s.zero());
        loop {
            let mut next = t.clone();
            match family {
                Family::LeftRootedLeftIdeals => {
                    next.union_with(&self.left_product(&t));
                    next.union_with(&self.sqrt(&t));
                }
                Family::PositiveRootedPositiveHereditary => {
                    next.intersect_with(&self.positives);
                    for x in self.sqrt(&t).iter() {
                        for p in self.positives.iter() {
                            next.insert(s.mul(s.mul(s.star(x), p), x));
                        }
                    }
                    next.union_with(&self.positive_part(&self.sqrt(&t)));
                }
                Family::QuasiRootedHereditaryStar | Family::QuasiRootedStar => {
                    next.union_with(&self.star_image(&t));
                    for a in t.iter() {
                        for b in t.iter() {
                            next.insert(s.mul(a, b));
                        }
                    }
                    let r = self.sqrt(&t);
                    next.union_with(&r.intersection(&self.star_image(&r)));
                    if family == Family::QuasiRootedHereditaryStar {
                        for x in r.iter() {
                            for a in s.elements() {
                                next.insert(s.mul(s.mul(s.star(x), a), x));
                            }
                        }
                    }
                }
                Family::BiHereditaryStar => {
                    next.union_with(&self.star_image(&t));
                    for a in t.iter() {
                        for b in t.iter() {
                            next.insert(s.mul(a, b));
                        }
                    }
                    for x in self.positive_part(&t).iter() {
                        for p in self.positives.iter() {
                            next.insert(s.mul(s.mul(x, p), x));
                        }
                    }
                }
                Family::Ideals => {
                    next.union_with(&self.left_product(&t));
                    let r = self.right_product(&next);
                    next.union_with(&r);
                }
                Family::SelfAdjointBiIdeals => {
                    next.union_with(&self.star_image(&t));
                    for a in t.iter() {
                        for b in t.iter() {
                            next.insert(s.mul(a, b));
                        }
                    }
                    let ts = self.right_product(&t);
                    for x in ts.iter() {
                        for c in t.iter() {
                            next.insert(s.mul(x, c));
                        }
                    }
                }
            }
            if next == t {
                return t;
            }
            t = next;
        }
    }
}

/// Outcome of verifying a pair of maps as mutually inverse order isomorphisms.
#[derive(Debug, Clone, Serialize)]
pub struct BijectionReport {
    pub check: CheckResult,
    pub left_size: usize,
    pub right_size: usize,
    /// Matched pairs (left member, its image).
    pub pairs: Vec<(ElementSubset, ElementSubset)>,
}

fn verify_bijection(
    name: &str,
    left: &[ElementSubset],
    right: &[ElementSubset],
    in_left: impl Fn(&ElementSubset) -> bool,
    in_right: impl Fn(&ElementSubset) -> bool,
    forward: impl Fn(&ElementSubset) -> ElementSubset,
    backward: impl Fn(&ElementSubset) -> ElementSubset,
    mode: Enumeration,
) -> BijectionReport {
    let mut tally = Tally::new();
    let mut pairs = Vec::with_capacity(left.len());
    for i in left {
        let f = forward(i);
        tally.case(in_right(&f), || format!("image {f} of {i} leaves the target family"));
        let back = backward(&f);
        tally.case(back == *i, || format!("{i} maps to {f} and back to {back}"));
        pairs.push((i.clone(), f));
    }
    for j in right {
        let g = backward(j);
        tally.case(in_left(&g), || format!("image {g} of {j} leaves the source family"));
        let back = forward(&g);
        tally.case(back == *j, || format!("{j} maps back to {g} and then to {back}"));
    }
    for (a, fa) in &pairs {
        for (b, fb) in &pairs {
            tally.case(a.is_subset(b) == fa.is_subset(fb), || {
                format!("order not preserved between {a} and {b}")
            });
        }
    }
    if mode == Enumeration::Exhaustive {
        let (l, r) = (left.len(), right.len());
        tally.case(l == r, || format!("family sizes differ: {l} vs {r}"));
    }
    BijectionReport {
        check: tally.finish(name).with_coverage(mode.coverage()),
        left_size: left.len(),
        right_size: right.len(),
        pairs,
    }
}

/// `I ↦ I_+` and `J ↦ √J` between left-rooted left ideals and positive-rooted
/// positive-hereditary subsets of `S_+`; also checks `I_+ = I²`.
pub fn correspondence_rooted_ideals(s: &StarSemigroup, mode: Enumeration) -> Result<BijectionReport> {
    let alg = SubsetAlgebra::new(s);
    let left = alg.family(Family::LeftRootedLeftIdeals, mode)?;
    let right = alg.family(Family::PositiveRootedPositiveHereditary, mode)?;
    let mut report = verify_bijection(
        "rooted ideal correspondence",
        &left,
        &right,
        |t| t.contains(s.zero()) && alg.holds_all(Family::LeftRootedLeftIdeals.predicates(), t),
        |t| {
            t.contains(s.zero())
                && t.is_subset(alg.positives())
                && alg.holds_all(Family::PositiveRootedPositiveHereditary.predicates(), t)
        },
        |t| alg.positive_part(t),
        |t| alg.sqrt(t),
        mode,
    );
    if report.check.passed() {
        if let Some(i) = left.iter().find(|i| alg.positive_part(i) != alg.t_squared(i)) {
            report.check = CheckResult::fail(report.check.name.clone(), format!("I_+ differs from I² at {i}"))
                .with_coverage(mode.coverage());
        }
    }
    Ok(report)
}

/// `I ↦ I ∩ I*` and `J ↦ √J` between left-rooted left ideals and quasi-rooted
/// hereditary *-subsemigroups; also checks each of the latter is a quasi-ideal.
pub fn correspondence_hereditary(s: &StarSemigroup, mode: Enumeration) -> Result<BijectionReport> {
    let alg = SubsetAlgebra::new(s);
    let left = alg.family(Family::LeftRootedLeftIdeals, mode)?;
    let right = alg.family(Family::QuasiRootedHereditaryStar, mode)?;
    let mut report = verify_bijection(
        "hereditary correspondence",
        &left,
        &right,
        |t| t.contains(s.zero()) && alg.holds_all(Family::LeftRootedLeftIdeals.predicates(), t),
        |t| t.contains(s.zero()) && alg.holds_all(Family::QuasiRootedHereditaryStar.predicates(), t),
        |t| alg.sa_part(t),
        |t| alg.sqrt(t),
        mode,
    );
    if report.check.passed() {
        if let Some(j) = right.iter().find(|j| !alg.holds(SubsetPredicate::QuasiIdeal, j)) {
            report.check = CheckResult::fail(report.check.name.clone(), format!("{j} is not a quasi-ideal"))
                .with_coverage(mode.coverage());
        }
    }
    Ok(report)
}

/// `I ⊆ J ⟺ I_+ ⊆ J_+` within left-rooted left ideals and within quasi-rooted *-subsemigroups.
pub fn positive_part_inclusion_check(s: &StarSemigroup, mode: Enumeration) -> Result<CheckResult> {
    let alg = SubsetAlgebra::new(s);
    let mut tally = Tally::new();
    for family in [Family::LeftRootedLeftIdeals, Family::QuasiRootedStar] {
        let members = alg.family(family, mode)?;
        let plus: Vec<ElementSubset> = members.iter().map(|m| alg.positive_part(m)).collect();
        for (a, pa) in members.iter().zip(&plus) {
            for (b, pb) in members.iter().zip(&plus) {
                tally.case(a.is_subset(b) == pa.is_subset(pb), || {
                    format!("{a}, {b} in {family:?}")
                });
            }
        }
    }
    Ok(tally.finish("positive part determines inclusion").with_coverage(mode.coverage()))
}

/// The implications about `√T`, `T_+` and `T ∩ T*` that hold for every subset `T`.
///
/// Sweeps all subsets when the carrier has at most [`SUBSET_LAW_CAP`] elements,
/// otherwise `samples` random subsets.
pub fn subset_laws_check(s: &StarSemigroup, samples: usize, seed: u64) -> CheckResult {
    use SubsetPredicate::*;
    let alg = SubsetAlgebra::new(s);
    let n = s.len();
    let mut tally = Tally::new();
    let mut check = |t: &ElementSubset| {
        let r = alg.sqrt(t);
        if alg.holds(PositiveHereditary, t) {
            tally.case(alg.holds(LeftIdeal, &r), || format!("sqrt of positive hereditary {t} is no left ideal"));
        }
        if alg.holds(PositiveRooted, t) {
            tally.case(alg.holds(LeftRooted, &r), || format!("sqrt of positive rooted {t} is not left rooted"));
        }
        let plus = alg.positive_part(t);
        let sa = alg.sa_part(t);
        tally.case(alg.holds(SelfAdjoint, &sa), || format!("T ∩ T* not self-adjoint for {t}"));
        let left_rooted = alg.holds(LeftRooted, t);
        let left_ideal = alg.holds(LeftIdeal, t);
        if left_rooted {
            tally.case(alg.holds(PositiveRooted, &plus), || format!("T_+ not positive rooted for {t}"));
            tally.case(alg.holds(QuasiRooted, &sa), || format!("T ∩ T* not quasi-rooted for {t}"));
        }
        if left_ideal {
            tally.case(alg.holds(QuasiIdeal, &sa), || format!("T ∩ T* not a quasi-ideal for {t}"));
        }
        if left_rooted && left_ideal {
            tally.case(plus == alg.t_squared(t), || format!("T_+ ≠ T² for {t}"));
            tally.case(alg.holds(PositiveHereditary, &plus), || format!("T_+ not positive hereditary for {t}"));
            tally.case(alg.holds(Hereditary, &sa), || format!("T ∩ T* not hereditary for {t}"));
        }
    };
    if n <= SUBSET_LAW_CAP {
        for m in 0..1u64 << n {
            check(&ElementSubset::from_mask(n, m));
        }
        tally.finish("subset laws")
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let density: f64 = rng.gen_range(0.0..1.0);
            let t = ElementSubset::from_predicate(n, |_| rng.gen_bool(density));
            check(&t);
        }
        tally
            .finish("subset laws")
            .with_coverage(Coverage::Sampled { samples, seed })
    }
}
