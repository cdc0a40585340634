//! Seeded random small *-semigroups and a harness running every check on them.
//!
//! Random tables are almost never associative, so instances are drawn as
//! *-subsemigroups generated by a few random elements of a larger known
//! semigroup, then relabelled at random.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{analyze, parallel_map, AnalysisConfig};
use crate::check::Outcome;
use crate::error::Result;
use crate::semigroup::{from_spec, validate, StarSemigroup};
use crate::subset::ElementSubset;

/// Semigroups the random instances are cut out of.
pub const HOSTS: &[&str] = &[
    "bool:2",
    "brandt:3",
    "unit:brandt:2",
    "zn:30",
    "zn:12",
    "zn:8",
    "semilattice:3",
    "matring:2,2",
    "matring:2,3",
    "zn:2*brandt:2",
    "unit:semilattice:2",
    "zn:3*zn:4",
];

const ATTEMPTS: usize = 64;

/// A random *-semigroup with at most `max_n` elements, determined by `seed`.
pub fn random_instance(hosts: &[StarSemigroup], max_n: usize, seed: u64) -> (StarSemigroup, usize, ElementSubset) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let h = rng.gen_range(0..hosts.len());
        let host = &hosts[h];
        let k = rng.gen_range(1..=3);
        let gens = ElementSubset::from_indices(host.len(), (0..k).map(|_| rng.gen_range(0..host.len())));
        let members = host.star_closure(&gens);
        if members.len() > max_n {
            continue;
        }
        let (sub, _) = host.induced(&members).expect("star closure is a *-subsemigroup");
        let mut perm: Vec<usize> = (0..sub.len()).collect();
        perm.shuffle(&mut rng);
        let name = format!("{}|{}", host.name(), members);
        return (sub.relabel(&perm).with_name(name), h, members);
    }
    let host = &hosts[0];
    let zero = host.zero_set();
    (host.induced(&zero).unwrap().0, 0, zero)
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzFailure {
    pub index: usize,
    pub instance: String,
    pub check: String,
    pub witness: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Rates {
    pub pass: usize,
    pub hypothesis_not_met: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub instances: usize,
    pub proper: usize,
    /// Instance counts by carrier size.
    pub sizes: BTreeMap<usize, usize>,
    pub failures: Vec<FuzzFailure>,
    /// Per check, how often it passed and how often its hypotheses failed.
    pub rates: BTreeMap<String, Rates>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the full analysis on `count` random instances of at most `max_n` elements.
pub fn fuzz(count: usize, max_n: usize, seed: u64, threads: usize, cfg: &AnalysisConfig) -> Result<FuzzReport> {
    let hosts: Vec<StarSemigroup> = HOSTS.iter().map(|s| from_spec(s)).collect::<Result<_>>()?;
    let indices: Vec<usize> = (0..count).collect();
    let per_instance = parallel_map(&indices, threads, |&i| {
        let (s, _, _) = random_instance(&hosts, max_n, seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
        let mut failures = Vec::new();
        // re-validate from raw tables
        if let Err(e) = validate(s.to_raw()) {
            failures.push(FuzzFailure { index: i, instance: s.name().into(), check: "validation".into(), witness: e.to_string() });
        }
        let report = analyze(&s, cfg);
        (i, s.len(), s.is_proper().proper, s.name().to_string(), report, failures)
    });
    let mut out = FuzzReport {
        seed,
        instances: count,
        proper: 0,
        sizes: BTreeMap::new(),
        failures: Vec::new(),
        rates: BTreeMap::new(),
    };
    for (i, n, proper, name, report, failures) in per_instance {
        out.failures.extend(failures);
        *out.sizes.entry(n).or_default() += 1;
        out.proper += proper as usize;
        match report {
            Err(e) => out.failures.push(FuzzFailure { index: i, instance: name, check: "analysis".into(), witness: e.to_string() }),
            Ok(r) => {
                for c in r.checks() {
                    let rate = out.rates.entry(c.name.clone()).or_default();
                    match &c.outcome {
                        Outcome::Pass => rate.pass += 1,
                        Outcome::HypothesisNotMet { .. } => rate.hypothesis_not_met += 1,
                        Outcome::Fail { witness } => out.failures.push(FuzzFailure {
                            index: i,
                            instance: name.clone(),
                            check: c.name.clone(),
                            witness: witness.clone(),
                        }),
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_small_valid_and_seeded() {
        let hosts: Vec<StarSemigroup> = HOSTS.iter().map(|s| from_spec(s).unwrap()).collect();
        for seed in 0..50 {
            let (a, _, _) = random_instance(&hosts, 6, seed);
            let (b, _, _) = random_instance(&hosts, 6, seed);
            assert!(a.len() <= 6);
            assert_eq!(a.mul_table(), b.mul_table());
            validate(a.to_raw()).unwrap();
        }
    }

    #[test]
    fn small_fuzz_run_is_clean() {
        let r = fuzz(40, 6, 7, 1, &AnalysisConfig::default()).unwrap();
        assert_eq!(r.instances, 40);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.sizes.len() > 2);
    }
}
