//! Orthogonality relations, their polarities and the lattices of closed sets.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::{combine, CheckResult, Coverage, Tally};
use crate::error::{Error, Result};
use crate::semigroup::StarSemigroup;
use crate::subset::ElementSubset;
use crate::subsets::{SubsetAlgebra, SubsetPredicate};

/// Default bound on the number of closed sets a lattice may have.
pub const DEFAULT_LATTICE_CAP: usize = 100_000;

/// Carrier bound for sweeping every subset in the per-subset polar checks.
pub const POLAR_SWEEP_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `sSt = {0}`
    Nabla,
    /// `st* = 0`
    L,
    /// `s*t = 0`
    R,
    /// `st* = st = 0`
    Perp,
    /// `st* = st = s*t = s*t* = 0`
    Bot4,
    /// `sTt* = {0}` for `T` a subset of the unitization; index `n` is the adjoined identity.
    LT(ElementSubset),
}

impl RelationKind {
    pub fn name(&self) -> String {
        match self {
            RelationKind::Nabla => "nabla".into(),
            RelationKind::L => "L".into(),
            RelationKind::R => "R".into(),
            RelationKind::Perp => "perp".into(),
            RelationKind::Bot4 => "bot4".into(),
            RelationKind::LT(t) => format!("L_{t}"),
        }
    }

    /// Parses the names accepted on the command line.
    pub fn parse(name: &str) -> Option<RelationKind> {
        match name {
            "nabla" => Some(RelationKind::Nabla),
            "L" | "l" => Some(RelationKind::L),
            "R" | "r" => Some(RelationKind::R),
            "perp" => Some(RelationKind::Perp),
            "bot4" => Some(RelationKind::Bot4),
            _ => None,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for RelationKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

/// A binary relation on the carrier, stored by rows: `row(t) = {s : t R s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    kind: RelationKind,
    n: usize,
    rows: Vec<ElementSubset>,
}

/// `{y : xy = 0}` and `{y : xy* = 0}` for every `x`.
fn zero_sets(s: &StarSemigroup) -> (Vec<ElementSubset>, Vec<ElementSubset>) {
    let n = s.len();
    let z = s.zero();
    let right: Vec<ElementSubset> = s
        .elements()
        .map(|x| ElementSubset::from_predicate(n, |y| s.mul(x, y) == z))
        .collect();
    let right_star = s
        .elements()
        .map(|x| ElementSubset::from_predicate(n, |y| s.mul(x, s.star(y)) == z))
        .collect();
    (right, right_star)
}

fn intersect_all<'a>(n: usize, sets: impl Iterator<Item = &'a ElementSubset>) -> ElementSubset {
    let mut out = ElementSubset::full(n);
    for x in sets {
        out.intersect_with(x);
    }
    out
}

impl RelationMatrix {
    pub fn build(s: &StarSemigroup, kind: RelationKind) -> RelationMatrix {
        let n = s.len();
        let (zr, zrs) = zero_sets(s);
        let rows: Vec<ElementSubset> = match &kind {
            RelationKind::Nabla => s
                .elements()
                .map(|t| {
                    let ts = ElementSubset::from_indices(n, s.elements().map(|u| s.mul(t, u)));
                    intersect_all(n, ts.iter().map(|x| &zr[x]))
                })
                .collect(),
            RelationKind::L => zrs.clone(),
            RelationKind::R => s.elements().map(|t| zr[s.star(t)].clone()).collect(),
            RelationKind::Perp => s.elements().map(|t| zrs[t].intersection(&zr[t])).collect(),
            RelationKind::Bot4 => s
                .elements()
                .map(|t| {
                    let ts = s.star(t);
                    let mut r = zrs[t].intersection(&zr[t]);
                    r.intersect_with(&zr[ts]);
                    r.intersect_with(&zrs[ts]);
                    r
                })
                .collect(),
            RelationKind::LT(middle) => s
                .elements()
                .map(|t| {
                    let tt = ElementSubset::from_indices(
                        n,
                        middle.iter().map(|u| if u == n { t } else { s.mul(t, u) }),
                    );
                    intersect_all(n, tt.iter().map(|x| &zrs[x]))
                })
                .collect(),
        };
        RelationMatrix { kind, n, rows }
    }

    pub fn kind(&self) -> &RelationKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `s R t`
    #[inline]
    pub fn holds(&self, s: usize, t: usize) -> bool {
        self.rows[s].contains(t)
    }

    /// `{s : t R s}`, the polar of `{t}`.
    pub fn row(&self, t: usize) -> &ElementSubset {
        &self.rows[t]
    }

    /// `{s : t R s for all t ∈ T}`
    pub fn polar(&self, t: &ElementSubset) -> ElementSubset {
        intersect_all(self.n, t.iter().map(|x| &self.rows[x]))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|s| self.rows[s].iter().all(|t| self.holds(t, s)))
    }

    /// First pair related here but not in `other`.
    pub fn first_pair_outside(&self, other: &RelationMatrix) -> Option<(usize, usize)> {
        (0..self.n).find_map(|s| {
            self.rows[s]
                .difference(&other.rows[s])
                .first()
                .map(|t| (s, t))
        })
    }
}

/// The closed sets of a polarity, in numeric bitmask order, with the
/// orthocomplement wired by index.
#[derive(Debug, Clone)]
pub struct PolarLattice {
    kind: RelationKind,
    sets: Vec<ElementSubset>,
    index: HashMap<ElementSubset, usize>,
    ortho: Vec<usize>,
}

impl PolarLattice {
    /// Intersection closure of the relation's rows together with the full carrier.
    fn from_relation(rel: &RelationMatrix, cap: usize) -> Result<PolarLattice> {
        let n = rel.len();
        let top = ElementSubset::full(n);
        let mut seen: HashSet<ElementSubset> = HashSet::new();
        let mut list = vec![top.clone()];
        seen.insert(top);
        for t in 0..n {
            let r = rel.row(t);
            if seen.contains(r) {
                continue;
            }
            let existing = list.len();
            for i in 0..existing {
                let g = list[i].intersection(r);
                if !seen.contains(&g) {
                    seen.insert(g.clone());
                    list.push(g);
                    if list.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "closed-set family",
                            size: list.len(),
                            cap,
                        });
                    }
                }
            }
        }
        list.sort();
        let index: HashMap<ElementSubset, usize> =
            list.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let mut ortho = Vec::with_capacity(list.len());
        for x in &list {
            let p = rel.polar(x);
            let i = *index.get(&p).ok_or_else(|| Error::OrtholatticeAxiomFailure {
                axiom: "polar of a closed set is closed",
                witness: format!("{x}"),
            })?;
            ortho.push(i);
        }
        Ok(PolarLattice {
            kind: rel.kind().clone(),
            sets: list,
            index,
            ortho,
        })
    }

    /// Same lattice with every set pushed through `f` (which must preserve order).
    fn relabel(&self, universe: usize, f: &[usize]) -> PolarLattice {
        let sets: Vec<ElementSubset> = self.sets.iter().map(|x| x.map(universe, |i| f[i])).collect();
        let index = sets.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        PolarLattice {
            kind: self.kind.clone(),
            sets,
            index,
            ortho: self.ortho.clone(),
        }
    }

    pub fn kind(&self) -> &RelationKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[ElementSubset] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &ElementSubset {
        &self.sets[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn find(&self, x: &ElementSubset) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &ElementSubset) -> bool {
        self.index.contains_key(x)
    }

    pub fn position(&self, x: &ElementSubset) -> Result<usize> {
        self.find(x).ok_or_else(|| Error::ForeignElement(format!("{x}")))
    }

    pub fn ortho(&self, i: usize) -> usize {
        self.ortho[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.sets[i].is_subset(&self.sets[j])
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[&self.sets[i].intersection(&self.sets[j])]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.ortho[self.meet(self.ortho[i], self.ortho[j])]
    }

    /// Intersection of a family; the top for an empty family.
    pub fn inf(&self, family: &[usize]) -> usize {
        let mut acc = self.sets[self.top()].clone();
        for &i in family {
            acc.intersect_with(&self.sets[i]);
        }
        self.index[&acc]
    }

    /// `(⋂ 𝒯^⊥)^⊥`; the bottom for an empty family.
    pub fn sup(&self, family: &[usize]) -> usize {
        let orthos: Vec<usize> = family.iter().map(|&i| self.ortho[i]).collect();
        self.ortho[self.inf(&orthos)]
    }

    pub fn meet_sets(&self, a: &ElementSubset, b: &ElementSubset) -> Result<ElementSubset> {
        let (i, j) = (self.position(a)?, self.position(b)?);
        Ok(self.sets[self.meet(i, j)].clone())
    }

    pub fn join_sets(&self, a: &ElementSubset, b: &ElementSubset) -> Result<ElementSubset> {
        let (i, j) = (self.position(a)?, self.position(b)?);
        Ok(self.sets[self.join(i, j)].clone())
    }

    pub fn ortho_set(&self, a: &ElementSubset) -> Result<ElementSubset> {
        Ok(self.sets[self.ortho[self.position(a)?]].clone())
    }

    pub fn leq_sets(&self, a: &ElementSubset, b: &ElementSubset) -> Result<bool> {
        let (i, j) = (self.position(a)?, self.position(b)?);
        Ok(self.leq(i, j))
    }

    pub fn sup_sets(&self, family: &[ElementSubset]) -> Result<ElementSubset> {
        let idx = family.iter().map(|x| self.position(x)).collect::<Result<Vec<_>>>()?;
        Ok(self.sets[self.sup(&idx)].clone())
    }

    pub fn inf_sets(&self, family: &[ElementSubset]) -> Result<ElementSubset> {
        let idx = family.iter().map(|x| self.position(x)).collect::<Result<Vec<_>>>()?;
        Ok(self.sets[self.inf(&idx)].clone())
    }

    /// First complete-ortholattice axiom that fails, with a witness.
    pub fn ortholattice_violation(&self, zero: &ElementSubset) -> Option<(&'static str, String)> {
        let m = self.len();
        if self.sets[self.bottom()] != *zero {
            return Some(("bottom is {0}", format!("{}", self.sets[0])));
        }
        for i in 0..m {
            if self.ortho[self.ortho[i]] != i {
                return Some(("complement is an involution", format!("{}", self.sets[i])));
            }
            if self.meet(i, self.ortho[i]) != self.bottom() {
                return Some(("A ∧ A^⊥ = {0}", format!("{}", self.sets[i])));
            }
            if self.join(i, self.ortho[i]) != self.top() {
                return Some(("A ∨ A^⊥ = S", format!("{}", self.sets[i])));
            }
        }
        if m <= 4096 {
            for i in 0..m {
                for j in 0..m {
                    if self.leq(i, j) && !self.leq(self.ortho[j], self.ortho[i]) {
                        return Some((
                            "complement reverses order",
                            format!("{} ⊆ {}", self.sets[i], self.sets[j]),
                        ));
                    }
                    if !self.leq(i, self.join(i, j)) || !self.leq(j, self.join(i, j)) {
                        return Some(("join is an upper bound", format!("{} {}", self.sets[i], self.sets[j])));
                    }
                }
            }
        }
        None
    }

    /// Elements `z` with `p = (p ∧ z) ∨ (p ∧ z^⊥)` for every `p`.
    pub fn centre(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&z| {
                let zc = self.ortho[z];
                (0..self.len()).all(|p| self.join(self.meet(p, z), self.meet(p, zc)) == p)
            })
            .collect()
    }

    /// `None` if orthomodular, else the first `(q, p)` with `q ≤ p` and `p ≠ q ∨ (p ∧ q^⊥)`.
    pub fn orthomodular_witness(&self) -> Option<(usize, usize)> {
        for q in 0..self.len() {
            for p in 0..self.len() {
                if self.leq(q, p) && self.join(q, self.meet(p, self.ortho[q])) != p {
                    return Some((q, p));
                }
            }
        }
        None
    }

    pub fn is_orthomodular(&self) -> bool {
        self.orthomodular_witness().is_none()
    }

    /// `None` if modular, else the first `(p, q, r)` with `p ≤ q`, `p ∨ r = q ∨ r`,
    /// `p ∧ r = q ∧ r` and `p ≠ q`.
    pub fn modular_witness(&self) -> Option<(usize, usize, usize)> {
        let m = self.len();
        for p in 0..m {
            for q in 0..m {
                if p == q || !self.leq(p, q) {
                    continue;
                }
                for r in 0..m {
                    if self.join(p, r) == self.join(q, r) && self.meet(p, r) == self.meet(q, r) {
                        return Some((p, q, r));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modular_witness().is_none()
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut out = Vec::new();
        for i in 0..m {
            let above: Vec<usize> = (0..m).filter(|&j| j != i && self.leq(i, j)).collect();
            for &j in &above {
                if !above.iter().any(|&k| k != j && self.leq(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Hasse diagram in Graphviz DOT, bottom at the bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph lattice {{");
        let _ = writeln!(out, "  label=\"{}\";", self.kind);
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        for (i, x) in self.sets.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{x}\"];");
        }
        for (i, j) in self.covers() {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// A polarity on a semigroup or on a *-subsemigroup of it, with its lattice.
///
/// Sets going in and out are always in the owner's coordinates; a relative
/// polarity computes products and the middle quantifier of `∇` inside the
/// subsemigroup only.
#[derive(Debug, Clone)]
pub struct Polarity {
    owner_n: usize,
    members: ElementSubset,
    to_owner: Vec<usize>,
    from_owner: Vec<usize>,
    identity_view: bool,
    view: Arc<StarSemigroup>,
    relation: RelationMatrix,
    lattice: PolarLattice,
    proper: bool,
    axioms_verified: bool,
}

fn is_ortho_kind(kind: &RelationKind, s: &StarSemigroup) -> bool {
    match kind {
        RelationKind::LT(t) => t.iter().all(|u| t.contains(if u == s.len() { u } else { s.star(u) })),
        _ => true,
    }
}

/// The polar lattice of `kind` on the whole semigroup.
///
/// When `s` is proper and the relation is one of the orthogonality relations
/// (or `L_T` with `T` self-adjoint), the complete-ortholattice axioms are
/// checked and a failure is an error.
pub fn closed_lattice(s: &StarSemigroup, kind: RelationKind, cap: usize) -> Result<Polarity> {
    let n = s.len();
    Polarity::assemble(
        Arc::new(s.clone()),
        n,
        s.full_set(),
        (0..n).collect(),
        true,
        kind,
        cap,
    )
}

/// The polar lattice of `kind` computed inside the *-subsemigroup `members`.
pub fn relative_lattice(
    s: &StarSemigroup,
    members: &ElementSubset,
    kind: RelationKind,
    cap: usize,
) -> Result<Polarity> {
    if members.is_full() {
        return closed_lattice(s, kind, cap);
    }
    let (view, to_owner) = s
        .induced(members)
        .ok_or_else(|| Error::NotSubsemigroup(format!("{members}")))?;
    let kind = match kind {
        RelationKind::LT(t) => {
            let m = view.len();
            let mut local = ElementSubset::empty(m + 1);
            for (i, &x) in to_owner.iter().enumerate() {
                if t.contains(x) {
                    local.insert(i);
                }
            }
            if t.contains(s.len()) {
                local.insert(m);
            }
            RelationKind::LT(local)
        }
        k => k,
    };
    Polarity::assemble(Arc::new(view), s.len(), members.clone(), to_owner, false, kind, cap)
}

impl Polarity {
    fn assemble(
        view: Arc<StarSemigroup>,
        owner_n: usize,
        members: ElementSubset,
        to_owner: Vec<usize>,
        identity_view: bool,
        kind: RelationKind,
        cap: usize,
    ) -> Result<Polarity> {
        let relation = RelationMatrix::build(&view, kind.clone());
        let local = PolarLattice::from_relation(&relation, cap)?;
        let lattice = if identity_view {
            local
        } else {
            local.relabel(owner_n, &to_owner)
        };
        let mut from_owner = vec![usize::MAX; owner_n];
        for (i, &x) in to_owner.iter().enumerate() {
            from_owner[x] = i;
        }
        let proper = view.is_proper().proper;
        let mut p = Polarity {
            owner_n,
            members,
            to_owner,
            from_owner,
            identity_view,
            view,
            relation,
            lattice,
            proper,
            axioms_verified: false,
        };
        if proper && is_ortho_kind(&kind, &p.view) {
            let zero = ElementSubset::singleton(owner_n, p.to_owner[p.view.zero()]);
            if let Some((axiom, witness)) = p.lattice.ortholattice_violation(&zero) {
                return Err(Error::OrtholatticeAxiomFailure { axiom, witness });
            }
            p.axioms_verified = true;
        }
        Ok(p)
    }

    pub fn kind(&self) -> &RelationKind {
        self.relation.kind()
    }

    pub fn lattice(&self) -> &PolarLattice {
        &self.lattice
    }

    /// The relation in the subsemigroup's own coordinates.
    pub fn relation(&self) -> &RelationMatrix {
        &self.relation
    }

    pub fn members(&self) -> &ElementSubset {
        &self.members
    }

    /// The semigroup the relation is computed in.
    pub fn view(&self) -> &StarSemigroup {
        &self.view
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn axioms_verified(&self) -> bool {
        self.axioms_verified
    }

    fn to_view(&self, t: &ElementSubset) -> ElementSubset {
        if self.identity_view {
            return t.clone();
        }
        ElementSubset::from_indices(
            self.view.len(),
            t.iter().filter(|&x| self.from_owner[x] != usize::MAX).map(|x| self.from_owner[x]),
        )
    }

    fn from_view(&self, t: ElementSubset) -> ElementSubset {
        if self.identity_view {
            return t;
        }
        t.map(self.owner_n, |i| self.to_owner[i])
    }

    /// The polar of `T ∩ members`, as a subset of the owner.
    pub fn polar(&self, t: &ElementSubset) -> ElementSubset {
        self.from_view(self.relation.polar(&self.to_view(t)))
    }

    /// Polar of a single element of the subsemigroup.
    pub fn polar_of(&self, x: usize) -> ElementSubset {
        if self.identity_view {
            return self.relation.row(x).clone();
        }
        self.from_view(self.relation.row(self.from_owner[x]).clone())
    }

    /// Double polar.
    pub fn closure(&self, t: &ElementSubset) -> ElementSubset {
        self.polar(&self.polar(t))
    }

    /// `s R t` for owner elements inside the subsemigroup.
    pub fn related(&self, s: usize, t: usize) -> bool {
        if self.identity_view {
            self.relation.holds(s, t)
        } else {
            self.relation.holds(self.from_owner[s], self.from_owner[t])
        }
    }
}

/// The five orthogonality polarities of one semigroup.
#[derive(Debug, Clone)]
pub struct OrthoSystem {
    s: Arc<StarSemigroup>,
    proper: bool,
    pub nabla: Polarity,
    pub left: Polarity,
    pub right: Polarity,
    pub perp: Polarity,
    pub bot4: Polarity,
}

impl OrthoSystem {
    pub fn build(s: &StarSemigroup, cap: usize) -> Result<OrthoSystem> {
        Ok(OrthoSystem {
            s: Arc::new(s.clone()),
            proper: s.is_proper().proper,
            nabla: closed_lattice(s, RelationKind::Nabla, cap)?,
            left: closed_lattice(s, RelationKind::L, cap)?,
            right: closed_lattice(s, RelationKind::R, cap)?,
            perp: closed_lattice(s, RelationKind::Perp, cap)?,
            bot4: closed_lattice(s, RelationKind::Bot4, cap)?,
        })
    }

    pub fn semigroup(&self) -> &StarSemigroup {
        &self.s
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    fn not_proper(&self, name: &str) -> CheckResult {
        CheckResult::unmet(name, vec!["semigroup is proper".into()])
    }

    /// Basic facts relating `∇`, `L` and `⊥`, plus the proper and commutative strengthenings.
    pub fn relation_inclusions_check(&self) -> CheckResult {
        let s = &*self.s;
        let n = s.len();
        let (nb, l, pp) = (self.nabla.relation(), self.left.relation(), self.perp.relation());
        let mut t = Tally::new();
        for a in 0..n {
            for b in 0..n {
                t.case(nb.holds(a, b) == nb.holds(s.star(b), s.star(a)), || {
                    format!("{a} ∇ {b} vs {}* ∇ {}*", b, a)
                });
                t.case(pp.holds(a, b) == pp.holds(a, s.star(b)), || format!("{a} ⊥ {b} vs {a} ⊥ {b}*"));
                t.case(!pp.holds(a, b) || l.holds(a, b), || format!("{a} ⊥ {b} but not {a} L {b}"));
                t.case(l.holds(a, b) == l.holds(b, a), || format!("L not symmetric at {a}, {b}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t.case(
                        l.holds(a, s.mul(b, c)) == l.holds(s.mul(a, s.star(c)), b),
                        || format!("{a} L {b}{c} vs {a}{c}* L {b}"),
                    );
                }
            }
        }
        let general = t.finish("relation basics");
        if !self.proper {
            return combine("relation facts", &[general, self.not_proper("proper relation facts")]);
        }
        let mut t = Tally::new();
        for a in 0..n {
            for b in 0..n {
                let base = nb.holds(a, b);
                t.case(nb.holds(s.norm(a), b) == base, || format!("{a}*{a} ∇ {b} differs from {a} ∇ {b}"));
                t.case(nb.holds(s.star(a), b) == base, || format!("{a}* ∇ {b} differs from {a} ∇ {b}"));
                t.case(nb.holds(b, a) == base, || format!("∇ not symmetric at {a}, {b}"));
                t.case(!base || pp.holds(a, b), || format!("{a} ∇ {b} but not {a} ⊥ {b}"));
            }
            t.case(pp.holds(a, a) == (a == s.zero()), || format!("{a} ⊥ {a} for nonzero {a}"));
        }
        // ∇ = L_S and L = L_{1} over the unitization
        let l_s = RelationMatrix::build(s, RelationKind::LT(ElementSubset::from_indices(n + 1, 0..n)));
        let l_1 = RelationMatrix::build(s, RelationKind::LT(ElementSubset::singleton(n + 1, n)));
        let w = l_s.first_pair_outside(nb).or_else(|| nb.first_pair_outside(&l_s));
        t.case(w.is_none(), || format!("∇ differs from L_S at {w:?}"));
        let w = l_1.first_pair_outside(l).or_else(|| l.first_pair_outside(&l_1));
        t.case(w.is_none(), || format!("L differs from L_1 at {w:?}"));
        let proper = t.finish("proper relation facts");
        let mut parts = vec![general, proper];
        if s.is_commutative() {
            let mut t = Tally::new();
            for a in 0..n {
                for b in 0..n {
                    let prod = s.mul(a, b) == s.zero();
                    t.case(
                        nb.holds(a, b) == prod && pp.holds(a, b) == prod && l.holds(a, b) == prod,
                        || format!("commutative collapse fails at {a}, {b}"),
                    );
                }
            }
            parts.push(t.finish("commutative relation facts"));
        }
        combine("relation facts", &parts)
    }

    /// `st = 0 ⟺ s*st = 0`, and the three positive-element cancellation laws.
    pub fn zero_product_laws_check(&self) -> CheckResult {
        let name = "zero product cancellation";
        if !self.proper {
            return self.not_proper(name);
        }
        let s = &*self.s;
        let z = s.zero();
        let n = s.len();
        let mut t = Tally::new();
        for a in 0..n {
            for b in 0..n {
                t.case((s.mul(a, b) == z) == (s.mul(s.norm(a), b) == z), || format!("s = {a}, t = {b}"));
            }
        }
        let pos = SubsetAlgebra::new(s).positives().to_vec();
        for &p in &pos {
            for x in 0..n {
                let px = s.mul(p, x);
                t.case((s.mul(p, px) == z) == (px == z), || format!("p = {p}, s = {x}: p²s vs ps"));
            }
            for &q in &pos {
                let qp = s.mul(q, p);
                t.case((s.mul(p, qp) == z) == (qp == z), || format!("p = {p}, q = {q}: pqp vs qp"));
                for x in 0..n {
                    let qpx = s.mul(qp, x);
                    t.case((s.mul(p, qpx) == z) == (qpx == z), || {
                        format!("p = {p}, q = {q}, s = {x}: pqps vs qps")
                    });
                }
            }
        }
        t.finish(name)
    }

    /// `P^L ≅ P^⊥` via `T ↦ T ∩ T*` and `√T`, the three descriptions of `P^∇`,
    /// and `P^⊥ = P^{bot4}`.
    pub fn left_annihilator_isomorphism_check(&self) -> CheckResult {
        let name = "left and two-sided annihilator lattices";
        if !self.proper {
            return self.not_proper(name);
        }
        let s = &*self.s;
        let alg = SubsetAlgebra::new(s);
        let (pl, pp, pn) = (self.left.lattice(), self.perp.lattice(), self.nabla.lattice());
        let mut t = Tally::new();
        // (a) the orthoisomorphism
        let image: Vec<usize> = (0..pl.len())
            .map(|i| pp.find(&alg.sa_part(pl.set(i))).unwrap_or(usize::MAX))
            .collect();
        for i in 0..pl.len() {
            let a = pl.set(i);
            t.case(image[i] != usize::MAX, || format!("{a} ∩ {a}* is not a *-annihilator"));
            if image[i] == usize::MAX {
                continue;
            }
            let back = alg.sqrt(pp.set(image[i]));
            t.case(back == *a, || format!("√({a} ∩ {a}*) = {back}"));
            t.case(image[pl.ortho(i)] == pp.ortho(image[i]), || format!("complement not preserved at {a}"));
        }
        for j in 0..pp.len() {
            let b = pp.set(j);
            let r = alg.sqrt(b);
            t.case(pl.contains(&r) && alg.sa_part(&r) == *b, || format!("√{b} does not map back"));
        }
        for i in 0..pl.len() {
            for j in 0..pl.len() {
                if image[i] != usize::MAX && image[j] != usize::MAX {
                    t.case(pl.leq(i, j) == pp.leq(image[i], image[j]), || {
                        format!("order differs at {}, {}", pl.set(i), pl.set(j))
                    });
                }
            }
        }
        t.case(pl.len() == pp.len(), || format!("sizes {} and {}", pl.len(), pp.len()));
        // (b) P^∇ described three ways
        let nabla: HashSet<&ElementSubset> = pn.sets().iter().collect();
        let both: HashSet<&ElementSubset> = pl.sets().iter().filter(|x| pp.contains(x)).collect();
        let sa_left: HashSet<&ElementSubset> =
            pl.sets().iter().filter(|x| alg.holds(SubsetPredicate::SelfAdjoint, x)).collect();
        let ideal_perp: HashSet<&ElementSubset> = pp
            .sets()
            .iter()
            .filter(|x| alg.left_product(x).is_subset(x))
            .collect();
        t.case(nabla == both, || "P^∇ ≠ P^L ∩ P^⊥".into());
        t.case(nabla == sa_left, || "P^∇ ≠ self-adjoint members of P^L".into());
        t.case(nabla == ideal_perp, || "P^∇ ≠ left-ideal members of P^⊥".into());
        // (c) the four-product relation gives the same closed sets and polars on them
        let pb = self.bot4.lattice();
        t.case(pb.sets() == pp.sets(), || "P^⊥ ≠ P^{bot4}".into());
        for x in pp.sets() {
            let (a, b) = (self.perp.polar(x), self.bot4.polar(x));
            t.case(a == b, || format!("polars differ on {x}: {a} vs {b}"));
        }
        t.finish(name)
    }

    /// The per-subset polar facts: rootedness and ideal properties of `T^∇`,
    /// `T^L`, `T^⊥`, their mutual identities, and additive closure in *-rings.
    ///
    /// Every subset is visited when the carrier has at most [`POLAR_SWEEP_CAP`]
    /// elements; otherwise all singletons, all lattice members and `samples`
    /// random subsets.
    pub fn polar_laws_check(&self, samples: usize, seed: u64) -> CheckResult {
        let name = "polar subset properties";
        if !self.proper {
            return self.not_proper(name);
        }
        use SubsetPredicate::*;
        let s = &*self.s;
        let n = s.len();
        let alg = SubsetAlgebra::new(s);
        let ring = s.ring().is_some();
        let mut tally = Tally::new();
        let mut visit = |t: &ElementSubset| {
            let nb = self.nabla.polar(t);
            let lp = self.left.polar(t);
            let pp = self.perp.polar(t);
            tally.case(alg.holds_all(&[Rooted, Ideal, SelfAdjoint], &nb), || format!("(1) T^∇ = {nb} for T = {t}"));
            let sq = alg.sqrt(&pp);
            let t2 = self.left.polar(&alg.t_squared(t));
            tally.case(lp == sq && lp == t2, || format!("(2) T^L = {lp}, √T^⊥ = {sq}, T²^L = {t2} for T = {t}"));
            tally.case(alg.holds_all(&[LeftRooted, LeftIdeal], &lp), || format!("(2) T^L = {lp} for T = {t}"));
            tally.case(pp == alg.sa_part(&lp), || format!("(3) T^⊥ ≠ T^L ∩ T^L* for T = {t}"));
            tally.case(
                alg.holds_all(&[SelfAdjoint, QuasiRooted, Hereditary, QuasiIdeal], &pp),
                || format!("(3) T^⊥ = {pp} for T = {t}"),
            );
            let ll = self.left.polar(&lp);
            let pl = self.left.polar(&pp);
            tally.case(ll == pl, || format!("(4) T^LL = {ll}, T^⊥L = {pl} for T = {t}"));
            if alg.holds(RightIdeal, t) {
                tally.case(nb == pp && pp == lp, || format!("(5) right ideal {t}: {nb}, {pp}, {lp}"));
            }
            if ring {
                for x in [&nb, &pp, &lp] {
                    let closed = x.iter().all(|a| x.iter().all(|b| x.contains(s.add(a, b))));
                    tally.case(closed, || format!("(6) {x} not additively closed, T = {t}"));
                }
            }
        };
        if n <= POLAR_SWEEP_CAP {
            for m in 0..1u64 << n {
                visit(&ElementSubset::from_mask(n, m));
            }
            return tally.finish(name);
        }
        for x in 0..n {
            visit(&ElementSubset::singleton(n, x));
        }
        for x in self.perp.lattice().sets() {
            visit(x);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let density: f64 = rng.gen_range(0.0..0.2);
            let t = ElementSubset::from_predicate(n, |_| rng.gen_bool(density));
            visit(&t);
        }
        tally
            .finish(name)
            .with_coverage(Coverage::Sampled { samples, seed })
    }

    /// Suprema of `∇`-closed sets agree whether taken in `P^∇` or in `P^⊥`.
    pub fn nabla_sup_check(&self) -> CheckResult {
        let name = "nabla suprema agree";
        if !self.proper {
            return self.not_proper(name);
        }
        let (pn, pp) = (self.nabla.lattice(), self.perp.lattice());
        let mut t = Tally::new();
        let idx: Vec<usize> = (0..pn.len()).filter_map(|i| pp.find(pn.set(i))).collect();
        t.case(idx.len() == pn.len(), || "some ∇-closed set is not a *-annihilator".into());
        if idx.len() != pn.len() {
            return t.finish(name);
        }
        let mut families: Vec<Vec<usize>> = Vec::new();
        for i in 0..pn.len() {
            for j in i..pn.len() {
                families.push(vec![i, j]);
            }
        }
        families.push((0..pn.len()).collect());
        families.push(vec![]);
        for fam in families {
            let a = pn.set(pn.sup(&fam));
            let b = pp.set(pp.sup(&fam.iter().map(|&i| idx[i]).collect::<Vec<_>>()));
            t.case(a == b, || format!("family {fam:?}: {a} vs {b}"));
        }
        t.finish(name)
    }

    /// `A ∇ B ⇒ (A ∨ C) ∧ B = C ∧ B` for all `A, B, C ∈ P^⊥`.
    pub fn del_relation_check(&self) -> CheckResult {
        let name = "del relation";
        if !self.proper {
            return self.not_proper(name);
        }
        let pp = self.perp.lattice();
        let m = pp.len();
        let nab: Vec<ElementSubset> = (0..m).map(|a| self.nabla.polar(pp.set(a))).collect();
        let mut t = Tally::new();
        for a in 0..m {
            for b in 0..m {
                if !pp.set(b).is_subset(&nab[a]) {
                    continue;
                }
                for c in 0..m {
                    let lhs = pp.meet(pp.join(a, c), b);
                    t.case(lhs == pp.meet(c, b), || {
                        format!("A = {}, B = {}, C = {}", pp.set(a), pp.set(b), pp.set(c))
                    });
                }
            }
        }
        t.finish(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{from_spec, gen_boolean_matrices, gen_zn_mult};

    fn set(n: usize, xs: &[usize]) -> ElementSubset {
        ElementSubset::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn z6_relations_coincide() {
        let s = gen_zn_mult(6).unwrap();
        let nb = RelationMatrix::build(&s, RelationKind::Nabla);
        let pp = RelationMatrix::build(&s, RelationKind::Perp);
        let l = RelationMatrix::build(&s, RelationKind::L);
        assert_eq!(nb.rows, pp.rows);
        assert_eq!(pp.rows, l.rows);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(pp.holds(a, b), a * b % 6 == 0);
            }
        }
    }

    #[test]
    fn z6_polars() {
        let s = gen_zn_mult(6).unwrap();
        let p = closed_lattice(&s, RelationKind::Perp, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(p.polar(&set(6, &[2])), set(6, &[0, 3]));
        assert_eq!(p.polar(&s.empty_set()), s.full_set());
        assert_eq!(p.polar(&s.full_set()), s.zero_set());
    }

    #[test]
    fn z6_golden_lattice() {
        let s = gen_zn_mult(6).unwrap();
        let p = closed_lattice(&s, RelationKind::Perp, DEFAULT_LATTICE_CAP).unwrap();
        let l = p.lattice();
        let masks: Vec<u64> = l.sets().iter().map(|x| x.low_mask()).collect();
        assert_eq!(masks, vec![0b1, 0b1001, 0b10101, 0b111111]);
        assert!(l.is_orthomodular());
        assert!(l.is_modular());
        assert_eq!(l.centre().len(), 4);
        let even = set(6, &[0, 2, 4]);
        let three = set(6, &[0, 3]);
        assert_eq!(l.join_sets(&even, &three).unwrap(), s.full_set());
        assert_eq!(l.meet_sets(&even, &l.ortho_set(&even).unwrap()).unwrap(), s.zero_set());
        assert_eq!(l.join_sets(&even, &s.zero_set()).unwrap(), even);
        assert!(matches!(l.join_sets(&set(6, &[0, 2]), &even), Err(Error::ForeignElement(_))));
        let dot = l.to_dot();
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("n0 -> n1;\n  n0 -> n2;\n  n1 -> n3;\n  n2 -> n3;"));
    }

    #[test]
    fn trivial_lattice() {
        let s = gen_zn_mult(1).unwrap();
        let p = closed_lattice(&s, RelationKind::Perp, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(p.lattice().len(), 1);
        assert_eq!(p.lattice().set(0), &s.full_set());
    }

    #[test]
    fn boolean_two_lattices_and_checks() {
        let s = gen_boolean_matrices(2).unwrap();
        let sys = OrthoSystem::build(&s, DEFAULT_LATTICE_CAP).unwrap();
        assert!(sys.left.relation().is_symmetric());
        // supports inside Y x Y for Y ⊆ {0,1}
        assert_eq!(sys.perp.lattice().len(), 4);
        assert_eq!(sys.nabla.lattice().len(), 2);
        for r in [
            sys.relation_inclusions_check(),
            sys.zero_product_laws_check(),
            sys.left_annihilator_isomorphism_check(),
            sys.polar_laws_check(0, 0),
            sys.nabla_sup_check(),
            sys.del_relation_check(),
        ] {
            assert!(r.passed(), "{r}");
        }
        let centre = sys.perp.lattice().centre();
        for x in sys.nabla.lattice().sets() {
            assert!(centre.contains(&sys.perp.lattice().find(x).unwrap()));
        }
    }

    #[test]
    fn brandt_lattice_by_hand() {
        // 0, e11 = 1, e12 = 2, e21 = 3, e22 = 4
        let s = from_spec("brandt:2").unwrap();
        let sys = OrthoSystem::build(&s, DEFAULT_LATTICE_CAP).unwrap();
        let sets: Vec<Vec<usize>> = sys.perp.lattice().sets().iter().map(|x| x.to_vec()).collect();
        assert_eq!(sets, vec![vec![0], vec![0, 1], vec![0, 4], vec![0, 1, 2, 3, 4]]);
        assert_eq!(sys.nabla.lattice().len(), 2);
        assert!(sys.left_annihilator_isomorphism_check().passed());
    }

    #[test]
    fn relative_lattice_of_even_residues() {
        let s = gen_zn_mult(6).unwrap();
        let a = set(6, &[0, 2, 4]);
        let rel = relative_lattice(&s, &a, RelationKind::Perp, DEFAULT_LATTICE_CAP).unwrap();
        // {0,2,4} is a copy of Z_3 under multiplication: lattice {0} < A
        let sets: Vec<Vec<usize>> = rel.lattice().sets().iter().map(|x| x.to_vec()).collect();
        assert_eq!(sets, vec![vec![0], vec![0, 2, 4]]);
        assert_eq!(rel.polar(&set(6, &[2])), set(6, &[0]));
        let whole = relative_lattice(&s, &s.full_set(), RelationKind::Perp, 100).unwrap();
        assert_eq!(whole.lattice().sets(), closed_lattice(&s, RelationKind::Perp, 100).unwrap().lattice().sets());
        let zero = relative_lattice(&s, &s.zero_set(), RelationKind::Perp, 100).unwrap();
        assert_eq!(zero.lattice().len(), 1);
        assert!(matches!(
            relative_lattice(&s, &set(6, &[0, 2]), RelationKind::Perp, 100),
            Err(Error::NotSubsemigroup(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let s = gen_boolean_matrices(2).unwrap();
        assert!(matches!(
            closed_lattice(&s, RelationKind::Perp, 2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn ring_clause_on_znring() {
        let s = from_spec("znring:6").unwrap();
        let sys = OrthoSystem::build(&s, DEFAULT_LATTICE_CAP).unwrap();
        assert!(sys.polar_laws_check(0, 0).passed());
    }

    #[test]
    fn non_proper_reports_unmet() {
        let s = gen_zn_mult(4).unwrap();
        let sys = OrthoSystem::build(&s, DEFAULT_LATTICE_CAP).unwrap();
        assert!(sys.left_annihilator_isomorphism_check().hypothesis_not_met());
        assert!(sys.relation_inclusions_check().passed());
    }

    #[test]
    fn pentagon_free_orthomodular_witness_order() {
        // MO2-like check on the boolean matrices' L lattice stays orthomodular
        let s = gen_boolean_matrices(2).unwrap();
        let p = closed_lattice(&s, RelationKind::L, 100).unwrap();
        assert!(p.lattice().orthomodular_witness().is_none());
    }
}
