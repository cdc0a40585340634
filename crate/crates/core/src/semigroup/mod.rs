//! Finite *-semigroups given by Cayley tables.

mod counterexample;
mod format;
mod generators;

pub use counterexample::{power_product_zero_pattern, IntMatrix2};
pub use format::{canonicalize, parse, parse_raw, serialize, SemigroupJson};
pub use generators::{
    direct_product, from_spec, gen_boolean_matrices, gen_brandt, gen_matrix_ring, gen_semilattice,
    gen_zn_mult, gen_zn_ring, DEFAULT_CARRIER_CAP,
};

use serde::Serialize;

use crate::error::{Axiom, AxiomViolation, Error, Result, ValidationReport};
use crate::subset::ElementSubset;

/// Additive structure turning the semigroup into a *-ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingExtension {
    add: Vec<usize>,
    neg: Vec<usize>,
}

impl RingExtension {
    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }
}

/// Unvalidated input tables, as read from a file or built by a generator.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawTables {
    pub name: String,
    pub mul: Vec<Vec<usize>>,
    pub star: Vec<usize>,
    pub zero: usize,
    pub add: Option<Vec<Vec<usize>>>,
    pub neg: Option<Vec<usize>>,
}

/// A validated finite *-semigroup with a designated absorbing zero.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSemigroup {
    name: String,
    n: usize,
    mul: Vec<usize>,
    star: Vec<usize>,
    zero: usize,
    ring: Option<RingExtension>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Properness {
    pub proper: bool,
    /// A nonzero `s` with `s*s = 0` when not proper.
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementClasses {
    pub positives: ElementSubset,
    pub self_adjoints: ElementSubset,
    pub idempotents: ElementSubset,
    pub projections: ElementSubset,
    /// Additive closure of the positives; only for *-rings.
    pub additive_positives: Option<ElementSubset>,
}

fn check_table(table: &'static str, rows: &[Vec<usize>], n: usize) -> Result<Vec<usize>> {
    if rows.len() != n {
        return Err(Error::Shape {
            table,
            detail: format!("{} rows, expected {n}", rows.len()),
        });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Shape {
                table,
                detail: format!("row {i} has {} entries, expected {n}", row.len()),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::IndexOutOfRange {
                    table,
                    position: vec![i, j],
                    value: v,
                    n,
                });
            }
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

fn check_map(table: &'static str, map: &[usize], n: usize) -> Result<()> {
    if map.len() != n {
        return Err(Error::Shape {
            table,
            detail: format!("{} entries, expected {n}", map.len()),
        });
    }
    if let Some((i, &v)) = map.iter().enumerate().find(|(_, &v)| v >= n) {
        return Err(Error::IndexOutOfRange {
            table,
            position: vec![i],
            value: v,
            n,
        });
    }
    Ok(())
}

/// Validates raw tables, returning the semigroup or every violated axiom.
pub fn validate(raw: RawTables) -> Result<StarSemigroup> {
    let n = raw.mul.len();
    if n == 0 {
        return Err(Error::Shape {
            table: "mul",
            detail: "carrier must be nonempty".into(),
        });
    }
    let mul = check_table("mul", &raw.mul, n)?;
    check_map("star", &raw.star, n)?;
    if raw.zero >= n {
        return Err(Error::IndexOutOfRange {
            table: "zero",
            position: vec![],
            value: raw.zero,
            n,
        });
    }
    let ring = match (raw.add, raw.neg) {
        (None, None) => None,
        (Some(add), Some(neg)) => {
            let add = check_table("add", &add, n)?;
            check_map("neg", &neg, n)?;
            Some(RingExtension { add, neg })
        }
        _ => {
            return Err(Error::Shape {
                table: "add",
                detail: "add and neg must be given together".into(),
            })
        }
    };
    let s = StarSemigroup {
        name: raw.name,
        n,
        mul,
        star: raw.star,
        zero: raw.zero,
        ring,
    };
    let report = s.axiom_report();
    if report.violations.is_empty() {
        Ok(s)
    } else {
        Err(Error::AxiomViolation(report))
    }
}

impl StarSemigroup {
    /// Builds a semigroup from tables known to satisfy every axiom.
    pub(crate) fn from_trusted(
        name: String,
        n: usize,
        mul: Vec<usize>,
        star: Vec<usize>,
        zero: usize,
        ring: Option<RingExtension>,
    ) -> Self {
        debug_assert_eq!(mul.len(), n * n);
        StarSemigroup {
            name,
            n,
            mul,
            star,
            zero,
            ring,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    pub fn ring(&self) -> Option<&RingExtension> {
        self.ring.as_ref()
    }

    /// Sum in the ring extension. Panics if there is none.
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.ring.as_ref().expect("no ring extension").add[a * self.n + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.ring.as_ref().expect("no ring extension").neg[a]
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn star_table(&self) -> &[usize] {
        &self.star
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn empty_set(&self) -> ElementSubset {
        ElementSubset::empty(self.n)
    }

    pub fn full_set(&self) -> ElementSubset {
        ElementSubset::full(self.n)
    }

    pub fn zero_set(&self) -> ElementSubset {
        ElementSubset::singleton(self.n, self.zero)
    }

    /// `s* s`
    #[inline]
    pub fn norm(&self, s: usize) -> usize {
        self.mul(self.star(s), s)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_commutative_on(&self, set: &ElementSubset) -> bool {
        set.iter()
            .all(|a| set.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn axiom_report(&self) -> ValidationReport {
        let n = self.n;
        let mut violations = Vec::new();
        let mut first = |axiom: Axiom, found: Option<Vec<usize>>| {
            if let Some(witness) = found {
                violations.push(AxiomViolation { axiom, witness });
            }
        };
        first(Axiom::Associativity, self.find_triple(|a, b, c| {
            self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
        }));
        first(
            Axiom::Involution,
            (0..n).find(|&a| self.star(self.star(a)) != a).map(|a| vec![a]),
        );
        first(Axiom::Antihomomorphism, self.find_pair(|a, b| {
            self.star(self.mul(a, b)) != self.mul(self.star(b), self.star(a))
        }));
        let z = self.zero;
        first(
            Axiom::Absorbing,
            (0..n)
                .find(|&s| self.mul(z, s) != z || self.mul(s, z) != z)
                .map(|s| vec![s]),
        );
        if let Some(ring) = &self.ring {
            let add = |a: usize, b: usize| ring.add[a * n + b];
            first(Axiom::AddAssociativity, self.find_triple(|a, b, c| {
                add(add(a, b), c) != add(a, add(b, c))
            }));
            first(Axiom::AddCommutativity, self.find_pair(|a, b| add(a, b) != add(b, a)));
            first(
                Axiom::AddIdentity,
                (0..n).find(|&a| add(z, a) != a).map(|a| vec![a]),
            );
            first(
                Axiom::AddInverse,
                (0..n).find(|&a| add(a, ring.neg[a]) != z).map(|a| vec![a]),
            );
            first(Axiom::LeftDistributivity, self.find_triple(|a, b, c| {
                self.mul(a, add(b, c)) != add(self.mul(a, b), self.mul(a, c))
            }));
            first(Axiom::RightDistributivity, self.find_triple(|a, b, c| {
                self.mul(add(a, b), c) != add(self.mul(a, c), self.mul(b, c))
            }));
            first(Axiom::StarAdditive, self.find_pair(|a, b| {
                self.star(add(a, b)) != add(self.star(a), self.star(b))
            }));
        }
        ValidationReport { violations }
    }

    fn find_pair(&self, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
        for a in 0..self.n {
            for b in 0..self.n {
                if bad(a, b) {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    }

    fn find_triple(&self, bad: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
        for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    if bad(a, b, c) {
                        return Some(vec![a, b, c]);
                    }
                }
            }
        }
        None
    }

    /// Proper: the zero is absorbing and `s*s = 0` forces `s = 0`.
    pub fn is_proper(&self) -> Properness {
        let z = self.zero;
        let absorbing = (0..self.n).all(|s| self.mul(z, s) == z && self.mul(s, z) == z);
        let witness = (0..self.n).find(|&s| s != z && self.norm(s) == z);
        Properness {
            proper: absorbing && witness.is_none(),
            witness,
        }
    }

    pub fn classify_elements(&self) -> ElementClasses {
        let n = self.n;
        let positives = ElementSubset::from_indices(n, (0..n).map(|t| self.norm(t)));
        let self_adjoints = ElementSubset::from_predicate(n, |s| self.star(s) == s);
        let idempotents = ElementSubset::from_predicate(n, |s| self.mul(s, s) == s);
        let projections = self_adjoints.intersection(&idempotents);
        let additive_positives = self.ring.as_ref().map(|_| self.additive_closure(&positives));
        ElementClasses {
            positives,
            self_adjoints,
            idempotents,
            projections,
            additive_positives,
        }
    }

    fn additive_closure(&self, seed: &ElementSubset) -> ElementSubset {
        let mut closed = seed.clone();
        let mut frontier: Vec<usize> = seed.to_vec();
        while let Some(x) = frontier.pop() {
            for y in seed.iter() {
                let s = self.add(x, y);
                if !closed.contains(s) {
                    closed.insert(s);
                    frontier.push(s);
                }
            }
        }
        closed
    }

    /// Every power of a positive element is positive.
    pub fn check_positive_powers(&self) -> bool {
        let positives = self.classify_elements().positives;
        positives.iter().all(|s| {
            let mut seen = ElementSubset::empty(self.n);
            let mut p = s;
            while !seen.contains(p) {
                if !positives.contains(p) {
                    return false;
                }
                seen.insert(p);
                p = self.mul(p, s);
            }
            true
        })
    }

    /// `aa* = ab* = bb*` implies `a = b`.
    pub fn check_star_cancellation(&self) -> bool {
        (0..self.n).all(|a| {
            let aa = self.mul(a, self.star(a));
            (0..self.n).all(|b| {
                a == b
                    || !(self.mul(a, self.star(b)) == aa && self.mul(b, self.star(b)) == aa)
            })
        })
    }

    /// The literal unitization: always adjoins a fresh identity at index `n`.
    pub fn unitize(&self) -> StarSemigroup {
        let n = self.n;
        let m = n + 1;
        let mut mul = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = if a == n {
                    b
                } else if b == n {
                    a
                } else {
                    self.mul(a, b)
                };
            }
        }
        let mut star = self.star.clone();
        star.push(n);
        StarSemigroup::from_trusted(format!("unit({})", self.name), m, mul, star, self.zero, None)
    }

    /// The *-subsemigroup generated by `seed` together with the zero.
    pub fn star_closure(&self, seed: &ElementSubset) -> ElementSubset {
        let mut set = seed.clone();
        set.insert(self.zero);
        for x in seed.iter() {
            set.insert(self.star(x));
        }
        loop {
            let mut grown = set.clone();
            for a in set.iter() {
                for b in set.iter() {
                    grown.insert(self.mul(a, b));
                }
            }
            if grown == set {
                return set;
            }
            set = grown;
        }
    }

    /// Restricts the structure to a *-subsemigroup containing the zero.
    ///
    /// Returns the relabelled semigroup and the map from new to old indices.
    pub fn induced(&self, members: &ElementSubset) -> Option<(StarSemigroup, Vec<usize>)> {
        if !members.contains(self.zero) {
            return None;
        }
        let to_owner = members.to_vec();
        let mut from_owner = vec![usize::MAX; self.n];
        for (i, &x) in to_owner.iter().enumerate() {
            from_owner[x] = i;
        }
        let m = to_owner.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &to_owner {
            for &b in &to_owner {
                let p = from_owner[self.mul(a, b)];
                if p == usize::MAX {
                    return None;
                }
                mul.push(p);
            }
        }
        let mut star = Vec::with_capacity(m);
        for &a in &to_owner {
            let p = from_owner[self.star(a)];
            if p == usize::MAX {
                return None;
            }
            star.push(p);
        }
        let zero = from_owner[self.zero];
        let sub = StarSemigroup::from_trusted(format!("{}|{}", self.name, members), m, mul, star, zero, None);
        Some((sub, to_owner))
    }

    /// Relabels elements by the permutation `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> StarSemigroup {
        let n = self.n;
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let table = |t: &[usize]| {
            let mut out = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    out[a * n + b] = perm[t[inv[a] * n + inv[b]]];
                }
            }
            out
        };
        let mul = table(&self.mul);
        let star = (0..n).map(|a| perm[self.star[inv[a]]]).collect();
        let ring = self.ring.as_ref().map(|r| RingExtension {
            add: table(&r.add),
            neg: (0..n).map(|a| perm[r.neg[inv[a]]]).collect(),
        });
        StarSemigroup::from_trusted(self.name.clone(), n, mul, star, perm[self.zero], ring)
    }

    pub fn to_raw(&self) -> RawTables {
        let n = self.n;
        let rows = |t: &[usize]| t.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>();
        RawTables {
            name: self.name.clone(),
            mul: rows(&self.mul),
            star: self.star.clone(),
            zero: self.zero,
            add: self.ring.as_ref().map(|r| rows(&r.add)),
            neg: self.ring.as_ref().map(|r| r.neg.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_element_bad() -> RawTables {
        RawTables {
            name: "bad".into(),
            mul: vec![vec![0, 0], vec![0, 1]],
            star: vec![1, 0],
            zero: 0,
            add: None,
            neg: None,
        }
    }

    #[test]
    fn z6_valid_and_proper() {
        let s = gen_zn_mult(6).unwrap();
        assert!(validate(s.to_raw()).is_ok());
        assert!(s.is_proper().proper);
    }

    #[test]
    fn swapped_star_violates_antihomomorphism() {
        let err = validate(two_element_bad()).unwrap_err();
        let Error::AxiomViolation(report) = err else { panic!("wrong error") };
        // star(0*1) = star(0) = 1 but star(1)*star(0) = 0*1 = 0
        assert!(report.violates(Axiom::Antihomomorphism));
    }

    #[test]
    fn non_involution_reported() {
        let raw = RawTables {
            name: "x".into(),
            mul: vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]],
            star: vec![0, 2, 2],
            zero: 0,
            add: None,
            neg: None,
        };
        let Error::AxiomViolation(report) = validate(raw).unwrap_err() else { panic!() };
        assert_eq!(report.violations[0].axiom, Axiom::Involution);
        assert_eq!(report.violations[0].witness, vec![1]);
    }

    #[test]
    fn out_of_range_and_ragged_tables() {
        let mut raw = two_element_bad();
        raw.mul[1][1] = 7;
        assert!(matches!(validate(raw), Err(Error::IndexOutOfRange { .. })));
        let mut raw = two_element_bad();
        raw.mul[0].push(0);
        assert!(matches!(validate(raw), Err(Error::Shape { .. })));
    }

    #[test]
    fn z4_not_proper_witness_two() {
        let p = gen_zn_mult(4).unwrap().is_proper();
        assert!(!p.proper);
        assert_eq!(p.witness, Some(2));
    }

    #[test]
    fn z6_classes() {
        let c = gen_zn_mult(6).unwrap().classify_elements();
        assert_eq!(c.positives.to_vec(), vec![0, 1, 3, 4]);
        assert_eq!(c.self_adjoints.len(), 6);
        assert_eq!(c.idempotents.to_vec(), vec![0, 1, 3, 4]);
        assert_eq!(c.projections.to_vec(), vec![0, 1, 3, 4]);
    }

    #[test]
    fn trivial_semigroup() {
        let s = gen_zn_mult(1).unwrap();
        let c = s.classify_elements();
        for class in [&c.positives, &c.self_adjoints, &c.idempotents, &c.projections] {
            assert_eq!(class.to_vec(), vec![0]);
        }
        assert!(s.is_proper().proper);
        assert!(s.check_star_cancellation());
        assert!(s.check_positive_powers());
        let u = s.unitize();
        assert_eq!(u.len(), 2);
        assert_eq!(u.mul(1, 1), 1);
        assert_eq!(u.mul(1, 0), 0);
        assert_eq!(u.star(1), 1);
    }

    #[test]
    fn boolean_projections_are_symmetric_idempotents() {
        let s = gen_boolean_matrices(2).unwrap();
        let c = s.classify_elements();
        // Brute force over entries: bits are row-major (0,0),(0,1),(1,0),(1,1).
        let entry = |m: usize, i: usize, j: usize| m >> (2 * i + j) & 1 == 1;
        let expected: Vec<usize> = (0..16)
            .filter(|&m| {
                let sym = entry(m, 0, 1) == entry(m, 1, 0);
                let sq = (0..4).all(|e| {
                    let (i, j) = (e / 2, e % 2);
                    let v = (0..2).any(|k| entry(m, i, k) && entry(m, k, j));
                    v == entry(m, i, j)
                });
                sym && sq
            })
            .collect();
        assert_eq!(c.projections.to_vec(), expected);
        assert!(s.check_positive_powers());
    }

    #[test]
    fn unitize_validates_and_adds_fresh_identity() {
        let s = gen_zn_mult(6).unwrap();
        let u = s.unitize();
        assert_eq!(u.len(), 7);
        assert!(validate(u.to_raw()).is_ok());
        assert!((0..7).all(|x| u.mul(6, x) == x && u.mul(x, 6) == x));
        let uu = u.unitize();
        assert_eq!(uu.len(), 8);
        assert_eq!(uu.mul(7, 6), 6);
        assert_eq!(uu.mul(6, 3), 3);
    }

    #[test]
    fn star_cancellation_reported_separately_from_properness() {
        let z4 = gen_zn_mult(4).unwrap();
        // a = 0, b = 2: 0 = 0 = 4 mod 4
        assert!(!z4.check_star_cancellation());
        assert!(!z4.is_proper().proper);
        assert!(gen_zn_mult(6).unwrap().check_star_cancellation());
    }

    #[test]
    fn induced_subsemigroup() {
        let s = gen_zn_mult(6).unwrap();
        let a = ElementSubset::from_indices(6, [0, 2, 4]);
        let (sub, map) = s.induced(&a).unwrap();
        assert_eq!(map, vec![0, 2, 4]);
        assert_eq!(sub.len(), 3);
        assert!(validate(sub.to_raw()).is_ok());
        assert!(s.induced(&ElementSubset::from_indices(6, [0, 2])).is_none());
    }
}
