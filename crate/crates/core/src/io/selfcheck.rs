//! The property suite over seeded random instances.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::category::{fixed_data, poset_reflection_map, Functor};
use crate::homology::{betti, chain_complex, euler_char, euler_from_homology};
use crate::io::format::{instance_digest, CategoryDoc};
use crate::io::generate::{generate_random, GenerateError};
use crate::layers::fixed_morphism_report_with;
use crate::lefschetz::{fixed_object_report, IdentityCheck};
use crate::nerve::{nerve, order_complex, subdivision, TrispMap};

/// Instances with more objects skip the subdivision Betti comparison.
pub const SD_BETTI_MAX_OBJECTS: usize = 5;
pub const CUTOFFS: [usize; 2] = [0, 1];
pub const COLLAPSE_PROBABILITIES: [f64; 2] = [0.0, 0.2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfcheckConfig {
    pub seed: u64,
    pub count: usize,
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl SelfcheckConfig {
    pub fn new(seed: u64, count: usize) -> SelfcheckConfig {
        SelfcheckConfig {
            seed,
            count,
            max_objects: 6,
            max_morphisms: 14,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub index: usize,
    pub seed: u64,
    pub digest: String,
    pub n_objects: usize,
    pub n_morphisms: usize,
    pub strict: bool,
    pub lefschetz: Option<i64>,
    pub r_lefschetz: Option<i64>,
    pub layered_lefschetz: Vec<i64>,
    pub checks: Vec<IdentityCheck>,
    pub error: Option<String>,
}

impl InstanceOutcome {
    pub fn failed(&self) -> Vec<String> {
        let mut failed: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.clone())
            .collect();
        failed.extend(self.error.iter().map(|e| format!("error: {e}")));
        failed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub seed: u64,
    pub digest: String,
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub name: String,
    pub evaluated: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfcheckSummary {
    pub config: SelfcheckConfig,
    pub instances: usize,
    pub strict_instances: usize,
    pub nonzero_lefschetz: usize,
    pub nonzero_layered_lefschetz: usize,
    pub checks: Vec<CheckTally>,
    pub violations: Vec<Violation>,
    /// SHA-256 over the instance digests in order.
    pub corpus_digest: String,
}

impl SelfcheckSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Seed of every instance, drawn from a stream keyed by the base seed.
pub fn instance_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.next_u64()).collect()
}

pub fn collapse_probability(index: usize) -> f64 {
    COLLAPSE_PROBABILITIES[index % COLLAPSE_PROBABILITIES.len()]
}

fn check(name: impl Into<String>, holds: bool) -> IdentityCheck {
    IdentityCheck {
        name: name.into(),
        holds,
    }
}

/// Every identity of the suite on one endofunctor, in a fixed order.
pub fn check_instance(f: &Functor) -> Result<(Vec<IdentityCheck>, InstanceValues), String> {
    let c = f.source();
    let mut checks = vec![check(
        "composition is associative",
        c.check_associativity().is_ok(),
    )];
    checks.push(check(
        "fixed subcategory is a category",
        fixed_data(f).is_ok(),
    ));

    let r = poset_reflection_map(f);
    let ff = f.after(f).map_err(|e| e.to_string())?;
    checks.push(check(
        "R preserves composition",
        poset_reflection_map(&ff) == r.after(&r).map_err(|e| e.to_string())?,
    ));

    let t = nerve(c);
    checks.push(check(
        "nerve satisfies the simplicial identities",
        t.check_simplicial_identities(),
    ));
    let cc = chain_complex(&t);
    checks.push(check(
        "boundary of boundary is zero",
        cc.boundary_squares_to_zero(),
    ));
    checks.push(check(
        "chi(C) cells = homology",
        euler_char(&t) == euler_from_homology(&t),
    ));
    let once = TrispMap::induced(f, &t, &t);
    checks.push(check(
        "nerve map preserves composition",
        TrispMap::induced(&ff, &t, &t) == once.then(&once),
    ));

    let sd = subdivision(c);
    if c.n_objects() <= SD_BETTI_MAX_OBJECTS {
        let sd_complex = order_complex(&sd.poset);
        checks.push(check(
            "betti(sd C) = betti(C)",
            betti(&sd_complex) == betti(&t),
        ));
        checks.push(check(
            "chi(sd C) cells = homology",
            euler_char(&sd_complex) == euler_from_homology(&sd_complex),
        ));
    }

    let report = fixed_object_report(f).map_err(|e| e.to_string())?;
    checks.extend(report.identities.iter().cloned());

    let sd_map = sd.map(f);
    let mut layered = Vec::new();
    for cutoff in CUTOFFS {
        let fm =
            fixed_morphism_report_with(f, &sd, &sd_map, cutoff, 0).map_err(|e| e.to_string())?;
        layered.push(fm.layered_lefschetz);
        checks.extend(fm.identities.into_iter().map(|c| IdentityCheck {
            name: format!("cutoff {cutoff}: {}", c.name),
            holds: c.holds,
        }));
    }
    Ok((
        checks,
        InstanceValues {
            lefschetz: report.lefschetz,
            r_lefschetz: report.r_lefschetz,
            layered_lefschetz: layered,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceValues {
    pub lefschetz: i64,
    pub r_lefschetz: i64,
    pub layered_lefschetz: Vec<i64>,
}

pub fn run_instance(
    index: usize,
    seed: u64,
    config: &SelfcheckConfig,
) -> Result<InstanceOutcome, GenerateError> {
    let (c, f) = generate_random(
        seed,
        config.max_objects,
        config.max_morphisms,
        collapse_probability(index),
    )?;
    let digest = instance_digest(&CategoryDoc::with_default_names(c.clone()), &f);
    let (checks, values, error) = match check_instance(&f) {
        Ok((checks, values)) => (checks, Some(values), None),
        Err(e) => (Vec::new(), None, Some(e)),
    };
    Ok(InstanceOutcome {
        index,
        seed,
        digest,
        n_objects: c.n_objects(),
        n_morphisms: c.n_morphisms(),
        strict: f.is_strict(),
        lefschetz: values.as_ref().map(|v| v.lefschetz),
        r_lefschetz: values.as_ref().map(|v| v.r_lefschetz),
        layered_lefschetz: values.map(|v| v.layered_lefschetz).unwrap_or_default(),
        checks,
        error,
    })
}

/// Runs every instance, concurrently; results are in instance order.
pub fn run_instances(config: &SelfcheckConfig) -> Result<Vec<InstanceOutcome>, GenerateError> {
    instance_seeds(config.seed, config.count)
        .into_par_iter()
        .enumerate()
        .map(|(i, seed)| run_instance(i, seed, config))
        .collect()
}

pub fn summarize(config: &SelfcheckConfig, outcomes: &[InstanceOutcome]) -> SelfcheckSummary {
    use sha2::{Digest, Sha256};

    let mut checks: Vec<CheckTally> = Vec::new();
    for o in outcomes {
        for c in &o.checks {
            let tally = match checks.iter_mut().find(|t| t.name == c.name) {
                Some(t) => t,
                None => {
                    checks.push(CheckTally {
                        name: c.name.clone(),
                        evaluated: 0,
                        failed: 0,
                    });
                    checks.last_mut().unwrap()
                }
            };
            tally.evaluated += 1;
            tally.failed += usize::from(!c.holds);
        }
    }
    let violations = outcomes
        .iter()
        .filter_map(|o| {
            let failed = o.failed();
            (!failed.is_empty()).then(|| Violation {
                index: o.index,
                seed: o.seed,
                digest: o.digest.clone(),
                failed,
            })
        })
        .collect();
    let mut hasher = Sha256::new();
    for o in outcomes {
        hasher.update(o.digest.as_bytes());
        hasher.update(b"\n");
    }
    SelfcheckSummary {
        config: config.clone(),
        instances: outcomes.len(),
        strict_instances: outcomes.iter().filter(|o| o.strict).count(),
        nonzero_lefschetz: outcomes
            .iter()
            .filter(|o| o.lefschetz.is_some_and(|l| l != 0))
            .count(),
        nonzero_layered_lefschetz: outcomes
            .iter()
            .filter(|o| o.layered_lefschetz.iter().any(|&l| l != 0))
            .count(),
        checks,
        violations,
        corpus_digest: hex::encode(hasher.finalize()),
    }
}

pub fn selfcheck(config: &SelfcheckConfig) -> Result<SelfcheckSummary, GenerateError> {
    Ok(summarize(config, &run_instances(config)?))
}
