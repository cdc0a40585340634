use std::sync::OnceLock;

use proptest::prelude::*;
use starlab::check::CheckConfig;
use starlab::decomposition::decompositions;
use starlab::equivalence::EquivalenceSuite;
use starlab::fuzz::{random_instance, HOSTS};
use starlab::polarity::{closed_lattice, OrthoSystem, RelationKind, DEFAULT_LATTICE_CAP};
use starlab::semigroup::{canonicalize, from_spec, parse, serialize};
use starlab::{ElementSubset, StarSemigroup};

fn hosts() -> &'static [StarSemigroup] {
    static HOSTS_BUILT: OnceLock<Vec<StarSemigroup>> = OnceLock::new();
    HOSTS_BUILT.get_or_init(|| HOSTS.iter().map(|s| from_spec(s).unwrap()).collect())
}

fn instance(seed: u64) -> StarSemigroup {
    random_instance(hosts(), 6, seed).0
}

fn subset(n: usize, bits: u64) -> ElementSubset {
    ElementSubset::from_mask(n, bits & ((1u64 << n) - 1))
}

fn kinds() -> [RelationKind; 5] {
    [RelationKind::Nabla, RelationKind::L, RelationKind::R, RelationKind::Perp, RelationKind::Bot4]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polars_form_a_galois_connection(seed in any::<u64>(), t in any::<u64>(), u in any::<u64>()) {
        let s = instance(seed);
        let n = s.len();
        let (t, u) = (subset(n, t), subset(n, u));
        let tu = t.union(&u);
        for kind in kinds() {
            let p = closed_lattice(&s, kind.clone(), DEFAULT_LATTICE_CAP).unwrap();
            // order reversing
            prop_assert!(p.polar(&tu).is_subset(&p.polar(&t)));
            // perp is one-sided; the other relations are symmetric on proper instances
            if s.is_proper().proper && kind != RelationKind::Perp {
                prop_assert!(p.relation().is_symmetric(), "{:?}", kind);
            }
            if !p.relation().is_symmetric() {
                continue;
            }
            // extensive closure
            prop_assert!(t.is_subset(&p.closure(&t)));
            // triple polar
            let once = p.polar(&t);
            prop_assert_eq!(p.polar(&p.polar(&once)), once.clone());
            // closed sets are lattice members
            prop_assert!(p.lattice().contains(&once));
        }
    }

    #[test]
    fn annihilator_lattice_is_an_ortholattice_when_proper(seed in any::<u64>()) {
        let s = instance(seed);
        prop_assume!(s.is_proper().proper);
        let p = closed_lattice(&s, RelationKind::Perp, DEFAULT_LATTICE_CAP).unwrap();
        let l = p.lattice();
        prop_assert!(l.ortholattice_violation(&s.zero_set()).is_none());
        for a in 0..l.len() {
            prop_assert_eq!(l.ortho(l.ortho(a)), a);
            prop_assert_eq!(l.meet(a, l.ortho(a)), l.bottom());
            prop_assert_eq!(l.join(a, l.ortho(a)), l.top());
            for b in 0..l.len() {
                if l.leq(a, b) {
                    prop_assert!(l.leq(l.ortho(b), l.ortho(a)));
                }
            }
        }
    }

    #[test]
    fn equivalence_is_symmetric_with_valid_witnesses(seed in any::<u64>()) {
        let s = instance(seed);
        prop_assume!(s.is_proper().proper);
        let sys = OrthoSystem::build(&s, DEFAULT_LATTICE_CAP).unwrap();
        let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
        let eq = &suite.eq;
        for a in 0..eq.len() {
            for b in 0..eq.len() {
                if let Some(x) = eq.sim_witness(a, b) {
                    prop_assert_eq!(eq.closure_index(x), a);
                    prop_assert_eq!(eq.closure_index(s.star(x)), b);
                    prop_assert!(eq.related(b, a));
                    prop_assert!(eq.below(a, b));
                }
            }
        }
    }

    #[test]
    fn decompositions_live_in_the_nabla_lattice(seed in any::<u64>()) {
        let s = instance(seed);
        let sys = OrthoSystem::build(&s, DEFAULT_LATTICE_CAP).unwrap();
        let suite = EquivalenceSuite::new(&sys, &CheckConfig::default()).unwrap();
        let d = decompositions(&suite);
        for c in &d.checks {
            prop_assert!(!c.failed(), "{}", c);
        }
        for r in &d.results {
            prop_assert!(sys.nabla.lattice().contains(&r.a));
            prop_assert_eq!(sys.perp.polar(&r.a), r.complement.clone());
        }
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let s = instance(seed);
        let text = serialize(&s);
        let back = parse(&text).unwrap();
        prop_assert_eq!(serialize(&back), text);
        let canon = canonicalize(&s);
        prop_assert_eq!(back.mul_table(), canon.mul_table());
        prop_assert_eq!(back.zero(), 0);
    }

    #[test]
    fn lattice_shape_ignores_relabelling(seed in any::<u64>(), shift in 0usize..6) {
        let s = instance(seed);
        let n = s.len();
        let perm: Vec<usize> = (0..n).map(|x| (x + shift) % n).collect();
        let t = s.relabel(&perm);
        for kind in kinds() {
            let a = closed_lattice(&s, kind.clone(), DEFAULT_LATTICE_CAP).unwrap();
            let b = closed_lattice(&t, kind, DEFAULT_LATTICE_CAP).unwrap();
            prop_assert_eq!(a.lattice().len(), b.lattice().len());
            let mut sa: Vec<usize> = a.lattice().sets().iter().map(|x| x.len()).collect();
            let mut sb: Vec<usize> = b.lattice().sets().iter().map(|x| x.len()).collect();
            sa.sort();
            sb.sort();
            prop_assert_eq!(sa, sb);
        }
    }

    #[test]
    fn subset_operations_match_bitmasks(n in 1usize..=64, a in any::<u64>(), b in any::<u64>()) {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let (a, b) = (a & full, b & full);
        let (x, y) = (ElementSubset::from_mask(n, a), ElementSubset::from_mask(n, b));
        let as_mask = |s: &ElementSubset| s.iter().fold(0u64, |m, i| m | 1 << i);
        prop_assert_eq!(as_mask(&x.union(&y)), a | b);
        prop_assert_eq!(as_mask(&x.intersection(&y)), a & b);
        prop_assert_eq!(as_mask(&x.difference(&y)), a & !b);
        prop_assert_eq!(as_mask(&x.complement()), !a & full);
        prop_assert_eq!(x.is_subset(&y), a & !b == 0);
        prop_assert_eq!(x.len(), a.count_ones() as usize);
    }
}
