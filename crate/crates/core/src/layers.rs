//! Layers of graded posets, restricted self-maps of the subdivision and a
//! verifier for the fixed-morphism theorem.

use serde::{Deserialize, Serialize};

use crate::category::{Functor, FunctorError, MorphismId};
use crate::io::format::instance_text;
use crate::lefschetz::{
    fixed_subposet_euler, poset_lefschetz_value, IdentityCheck, LefschetzError, LefschetzValue,
};
use crate::nerve::{subdivision, Simplex, Subdivision, Trisp};
use crate::poset::{GradedPoset, PosetMap};

/// Elements of degree exactly `i`.
pub fn layer(p: &GradedPoset, i: usize) -> Vec<usize> {
    p.layer(i)
}

/// An induced subposet together with the ambient indices of its elements.
#[derive(Clone, Debug)]
pub struct SubPoset {
    pub elements: Vec<usize>,
    pub poset: GradedPoset,
}

fn keep(p: &GradedPoset, pred: impl Fn(usize) -> bool) -> SubPoset {
    let elements: Vec<usize> = (0..p.len()).filter(|&x| pred(p.degree(x))).collect();
    SubPoset {
        poset: p.induced(&elements),
        elements,
    }
}

/// Removes the `i`-th layer. Degrees are not shifted.
pub fn delete_layer(p: &GradedPoset, i: usize) -> SubPoset {
    keep(p, |d| d != i)
}

/// Removes every layer of degree `<= i`; `i < 0` removes nothing.
/// Degrees are not shifted.
pub fn delete_layers_leq(p: &GradedPoset, i: i64) -> SubPoset {
    keep(p, |d| d as i64 > i)
}

/// The part of `sd(C)` above a cutoff on which `sd(F)` restricts to a self-map.
#[derive(Clone, Debug)]
pub struct LayeredDomain {
    pub cutoff: usize,
    /// Elements of `sd(C)`, increasing.
    pub elements: Vec<usize>,
    pub poset: GradedPoset,
    /// `sd(F)` restricted, in positions of `elements`.
    pub map: PosetMap,
    /// Elements of degree `> cutoff` whose image also has degree `> cutoff`.
    pub literal_elements: Vec<usize>,
    /// Whether `sd(F)` maps `literal_elements` into itself.
    pub literal_is_invariant: bool,
}

impl LayeredDomain {
    pub fn literal_differs(&self) -> bool {
        self.literal_elements != self.elements
    }
}

/// Restricts `sd_map` to the greatest subset of elements of degree
/// `> cutoff` that it maps into itself.
pub fn restrict(sd: &Subdivision, sd_map: &PosetMap, cutoff: usize) -> LayeredDomain {
    let p = &sd.poset;
    let above = |x: usize| p.degree(x) > cutoff;
    let literal_elements: Vec<usize> = (0..p.len())
        .filter(|&x| above(x) && above(sd_map.image(x)))
        .collect();
    let mut member: Vec<bool> = (0..p.len()).map(above).collect();
    loop {
        let drop: Vec<usize> = (0..p.len())
            .filter(|&x| member[x] && !member[sd_map.image(x)])
            .collect();
        if drop.is_empty() {
            break;
        }
        for x in drop {
            member[x] = false;
        }
    }
    let elements: Vec<usize> = (0..p.len()).filter(|&x| member[x]).collect();
    let mut position = vec![usize::MAX; p.len()];
    for (i, &x) in elements.iter().enumerate() {
        position[x] = i;
    }
    let poset = p.induced(&elements);
    let images = elements
        .iter()
        .map(|&x| position[sd_map.image(x)])
        .collect();
    let map = PosetMap::new(&poset, images).expect("restriction of an order-preserving map");
    let literal_is_invariant = literal_elements
        .iter()
        .all(|&x| literal_elements.binary_search(&sd_map.image(x)).is_ok());
    LayeredDomain {
        cutoff,
        elements,
        poset,
        map,
        literal_elements,
        literal_is_invariant,
    }
}

pub fn restricted_map(f: &Functor, cutoff: usize) -> Result<LayeredDomain, FunctorError> {
    if !f.is_endofunctor() {
        return Err(FunctorError::NotEndofunctor);
    }
    let sd = subdivision(f.source());
    let map = sd.map(f);
    Ok(restrict(&sd, &map, cutoff))
}

/// Lefschetz number of the restricted map by both methods, and `χ` of its
/// fixed subposet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredLefschetz {
    pub methods: LefschetzValue,
    pub chi_fixed: i64,
}

impl LayeredLefschetz {
    pub fn consistent(&self) -> bool {
        self.methods.agrees() && self.methods.hopf == self.chi_fixed
    }
}

pub fn domain_lefschetz(domain: &LayeredDomain) -> Result<LayeredLefschetz, LefschetzError> {
    Ok(LayeredLefschetz {
        methods: poset_lefschetz_value(&domain.poset, &domain.map)?,
        chi_fixed: fixed_subposet_euler(&domain.poset, &domain.map),
    })
}

pub fn layered_lefschetz(f: &Functor, cutoff: usize) -> Result<i64, LefschetzError> {
    let value = domain_lefschetz(&restricted_map(f, cutoff)?)?;
    if value.consistent() {
        Ok(value.chi_fixed)
    } else {
        Err(LefschetzError::MethodMismatch {
            what: "layered L",
            hopf: value.methods.hopf,
            homology: value.methods.homology,
        })
    }
}

fn is_fixed_chain(f: &Functor, chain: &[MorphismId]) -> bool {
    chain
        .iter()
        .all(|&m| f.morphism(m).non_identity() == Some(m))
}

/// Every composable `k`-chain whose morphisms are all fixed, in
/// lexicographic order.
pub fn fixed_chain_search(f: &Functor, k: usize) -> Vec<Vec<MorphismId>> {
    fixed_chains_in(f, &crate::nerve::nerve(f.source()), k)
}

fn fixed_chains_in(f: &Functor, nerve: &Trisp, k: usize) -> Vec<Vec<MorphismId>> {
    if k == 0 {
        return Vec::new();
    }
    nerve
        .simplices(k)
        .iter()
        .map(Simplex::morphisms)
        .filter(|chain| is_fixed_chain(f, chain))
        .map(<[MorphismId]>::to_vec)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWitnesses {
    pub length: usize,
    pub total: usize,
    /// The first chains in lexicographic order, at most the witness limit.
    pub chains: Vec<Vec<MorphismId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedMorphismReport {
    pub cutoff: usize,
    pub layered_lefschetz: i64,
    pub layered_methods: LefschetzValue,
    pub chi_fixed_domain: i64,
    pub domain_size: usize,
    pub literal_domain_size: usize,
    pub literal_domain_differs: bool,
    pub literal_domain_invariant: bool,
    pub strict: bool,
    pub fixed_chains: Vec<ChainWitnesses>,
    pub identities: Vec<IdentityCheck>,
}

impl FixedMorphismReport {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }

    pub fn failed(&self) -> Vec<String> {
        self.identities
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.clone())
            .collect()
    }
}

pub const DEFAULT_WITNESS_LIMIT: usize = 8;

/// All quantities of the fixed-morphism theorem at one cutoff, reusing a
/// subdivision and its map.
pub fn fixed_morphism_report_with(
    f: &Functor,
    sd: &Subdivision,
    sd_map: &PosetMap,
    cutoff: usize,
    witness_limit: usize,
) -> Result<FixedMorphismReport, LefschetzError> {
    let domain = restrict(sd, sd_map, cutoff);
    let value = domain_lefschetz(&domain)?;
    let fixed_chains: Vec<ChainWitnesses> = (1..=cutoff + 1)
        .map(|k| {
            let chains = fixed_chains_in(f, &sd.nerve, k);
            ChainWitnesses {
                length: k,
                total: chains.len(),
                chains: chains.into_iter().take(witness_limit).collect(),
            }
        })
        .collect();
    let downward_closed = (1..=sd.nerve.dim().unwrap_or(0)).all(|k| {
        (0..sd.nerve.count(k)).all(|i| {
            let s = sd.nerve.simplex(k, i);
            !is_fixed_chain(f, s.morphisms())
                || sd.nerve.faces(k, i).iter().all(|&j| {
                    let face = sd.nerve.simplex(k - 1, j);
                    match face {
                        Simplex::Vertex(x) => f.object(*x) == *x,
                        Simplex::Chain(ms) => is_fixed_chain(f, ms),
                    }
                })
        })
    });
    let layered = value.methods.hopf;
    let strict = f.is_strict();
    let checks = [
        (
            "layered L chain level = homology level",
            value.methods.agrees(),
        ),
        (
            "layered L = chi(fixed subposet)",
            value.methods.hopf == value.chi_fixed,
        ),
        (
            "layered L != 0 implies fixed k-chains for 1 <= k <= cutoff+1",
            layered == 0 || fixed_chains.iter().all(|w| w.total > 0),
        ),
        (
            "strict functor keeps the whole layered domain",
            !strict
                || domain.elements.len()
                    == (0..sd.poset.len())
                        .filter(|&x| sd.poset.degree(x) > cutoff)
                        .count(),
        ),
        ("faces of fixed chains are fixed", downward_closed),
    ];
    Ok(FixedMorphismReport {
        cutoff,
        layered_lefschetz: layered,
        layered_methods: value.methods,
        chi_fixed_domain: value.chi_fixed,
        domain_size: domain.elements.len(),
        literal_domain_size: domain.literal_elements.len(),
        literal_domain_differs: domain.literal_differs(),
        literal_domain_invariant: domain.literal_is_invariant,
        strict,
        fixed_chains,
        identities: checks
            .into_iter()
            .map(|(name, holds)| IdentityCheck {
                name: name.to_string(),
                holds,
            })
            .collect(),
    })
}

pub fn fixed_morphism_report(
    f: &Functor,
    cutoff: usize,
    witness_limit: usize,
) -> Result<FixedMorphismReport, LefschetzError> {
    if !f.is_endofunctor() {
        return Err(FunctorError::NotEndofunctor.into());
    }
    let sd = subdivision(f.source());
    let map = sd.map(f);
    fixed_morphism_report_with(f, &sd, &map, cutoff, witness_limit)
}

/// Like [`fixed_morphism_report`], but a violated identity is an error.
pub fn check_fixed_morphism_theorem(
    f: &Functor,
    cutoff: usize,
) -> Result<FixedMorphismReport, LefschetzError> {
    let report = fixed_morphism_report(f, cutoff, DEFAULT_WITNESS_LIMIT)?;
    if report.holds() {
        Ok(report)
    } else {
        Err(LefschetzError::TheoremViolated {
            failed: report.failed(),
            instance: instance_text(f),
        })
    }
}
