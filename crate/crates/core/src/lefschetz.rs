//! Lefschetz and R-Lefschetz numbers of endofunctors, and a verifier for
//! the fixed-object theorem.
//!
//! Every Lefschetz number is computed twice: as the alternating sum of
//! chain-level traces (which counts fixed simplices) and as the alternating
//! sum of traces on rational homology. The two must agree.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{
    fixed_data, poset_reflection, poset_reflection_map, Functor, FunctorError, MorphismId, ObjectId,
};
use crate::homology::{
    chain_complex, chain_map_unchecked, euler_char, euler_from_homology, homology_lefschetz,
    hopf_lefschetz, HomologyError,
};
use crate::io::format::instance_text;
use crate::nerve::{nerve, order_complex, subdivision, Simplex, Subdivision, TrispMap};
use crate::poset::{GradedPoset, PosetMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("{what}: chain-level value {hopf} differs from homology value {homology}")]
    MethodMismatch {
        what: &'static str,
        hopf: i64,
        homology: i64,
    },
    #[error("theorem violated ({}); instance:\n{instance}", failed.join(", "))]
    TheoremViolated {
        failed: Vec<String>,
        instance: String,
    },
}

/// A Lefschetz number evaluated by both methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzValue {
    pub hopf: i64,
    pub homology: i64,
}

impl LefschetzValue {
    pub fn agrees(&self) -> bool {
        self.hopf == self.homology
    }

    fn checked(self, what: &'static str) -> Result<i64, LefschetzError> {
        if self.agrees() {
            Ok(self.hopf)
        } else {
            Err(LefschetzError::MethodMismatch {
                what,
                hopf: self.hopf,
                homology: self.homology,
            })
        }
    }
}

/// Lefschetz number of `Δ(F)` on the nerve of `F`'s source, by both methods.
pub fn lefschetz_value(f: &Functor) -> Result<LefschetzValue, LefschetzError> {
    if !f.is_endofunctor() {
        return Err(FunctorError::NotEndofunctor.into());
    }
    let t = nerve(f.source());
    let images = TrispMap::induced(f, &t, &t);
    let cc = chain_complex(&t);
    let map = chain_map_unchecked(&images, &t);
    map.commutes_with(&cc)?;
    Ok(LefschetzValue {
        hopf: hopf_lefschetz(&map)?,
        homology: homology_lefschetz(&cc, &map)?,
    })
}

pub fn lefschetz_number(f: &Functor) -> Result<i64, LefschetzError> {
    lefschetz_value(f)?.checked("L(F)")
}

/// Lefschetz number of `R(F)` on the order complex of `R(C)`.
pub fn r_lefschetz_value(f: &Functor) -> Result<LefschetzValue, LefschetzError> {
    if !f.is_endofunctor() {
        return Err(FunctorError::NotEndofunctor.into());
    }
    lefschetz_value(&poset_reflection_map(f))
}

pub fn r_lefschetz_number(f: &Functor) -> Result<i64, LefschetzError> {
    r_lefschetz_value(f)?.checked("L_R(F)")
}

/// Lefschetz number of an order-preserving self-map, on the order complex.
pub fn poset_lefschetz_value(
    p: &GradedPoset,
    map: &PosetMap,
) -> Result<LefschetzValue, LefschetzError> {
    let thin = Arc::new(p.to_category());
    lefschetz_value(&map.to_functor(thin))
}

/// `χ` of the order complex of the subposet of fixed points.
pub fn fixed_subposet_euler(p: &GradedPoset, map: &PosetMap) -> i64 {
    euler_char(&order_complex(&p.induced(&map.fixed_points())))
}

/// Lefschetz number of `sd(F)` acting on `sd(C)`.
pub fn subdivision_lefschetz_value(f: &Functor) -> Result<LefschetzValue, LefschetzError> {
    if !f.is_endofunctor() {
        return Err(FunctorError::NotEndofunctor.into());
    }
    let sd = subdivision(f.source());
    poset_lefschetz_value(&sd.poset, &sd.map(f))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub lefschetz: i64,
    pub r_lefschetz: i64,
    pub lefschetz_methods: LefschetzValue,
    pub r_lefschetz_methods: LefschetzValue,
    pub subdivision_lefschetz_methods: LefschetzValue,
    pub chi_fixed_subcategory: i64,
    pub chi_fixed_poset: i64,
    pub fixed_objects: Vec<ObjectId>,
    pub fixed_morphisms: Vec<MorphismId>,
    pub strict: bool,
    pub identities: Vec<IdentityCheck>,
}

impl LefschetzReport {
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

/// Elements of `sd(C)` fixed by `sd(F)` whose faces are not all fixed.
pub fn fixed_simplices_not_downward_closed(sd: &Subdivision, map: &PosetMap) -> Vec<usize> {
    let fixed = map.fixed_points();
    fixed
        .iter()
        .copied()
        .filter(|&s| (0..sd.poset.len()).any(|t| sd.poset.less(t, s) && map.image(t) != t))
        .collect()
}

/// Computes every quantity of the fixed-object theorem and records which
/// identities hold. Never fails on a violated identity; see
/// [`check_fixed_object_theorem`].
pub fn fixed_object_report(f: &Functor) -> Result<LefschetzReport, LefschetzError> {
    let fixed = fixed_data(f)?;
    let c = f.source();

    let l = lefschetz_value(f)?;
    let lr = r_lefschetz_value(f)?;

    let sd = subdivision(c);
    let sd_map = sd.map(f);
    let lsd = poset_lefschetz_value(&sd.poset, &sd_map)?;

    let fixed_nerve = nerve(&fixed.subcategory);
    let chi_fixed = euler_char(&fixed_nerve);
    let chi_fixed_homological = euler_from_homology(&fixed_nerve);

    let reflection = poset_reflection(c);
    let fixed_poset = reflection.full_subcategory(&fixed.fixed_objects);
    let chi_fixed_poset = euler_char(&nerve(&fixed_poset));

    let sd_fixed: BTreeSet<Simplex> = sd_map
        .fixed_points()
        .into_iter()
        .map(|e| sd.simplex(e).clone())
        .collect();
    let sd_of_fixed: BTreeSet<Simplex> = (0..=fixed_nerve.dim().unwrap_or(0))
        .flat_map(|k| fixed_nerve.simplices(k).iter())
        .map(|s| match s {
            Simplex::Vertex(x) => Simplex::Vertex(fixed.object_embedding[x.0]),
            Simplex::Chain(ms) => {
                Simplex::Chain(ms.iter().map(|m| fixed.morphism_embedding[m.0]).collect())
            }
        })
        .collect();

    let has_fixed_object = c.objects().any(|x| f.object(x) == x);
    let checks = [
        ("L(F) chain level = homology level", l.agrees()),
        ("L_R(F) chain level = homology level", lr.agrees()),
        ("L(sd F) chain level = homology level", lsd.agrees()),
        (
            "chi(C^F) cells = homology",
            chi_fixed == chi_fixed_homological,
        ),
        (
            "L(F) = chi(C^F)",
            l.hopf == chi_fixed && l.homology == chi_fixed,
        ),
        (
            "L_R(F) = chi(R(C)^R(F))",
            lr.hopf == chi_fixed_poset && lr.homology == chi_fixed_poset,
        ),
        (
            "L(F) = L(sd F)",
            l.homology == lsd.homology && l.hopf == lsd.hopf,
        ),
        ("sd(C)^sd(F) = sd(C^F)", sd_fixed == sd_of_fixed),
        (
            "sd(F) fixes every face of a fixed simplex",
            fixed_simplices_not_downward_closed(&sd, &sd_map).is_empty(),
        ),
        (
            "L(F) != 0 or L_R(F) != 0 implies a fixed object",
            (l.hopf == 0 && lr.hopf == 0) || has_fixed_object,
        ),
    ];
    Ok(LefschetzReport {
        lefschetz: l.hopf,
        r_lefschetz: lr.hopf,
        lefschetz_methods: l,
        r_lefschetz_methods: lr,
        subdivision_lefschetz_methods: lsd,
        chi_fixed_subcategory: chi_fixed,
        chi_fixed_poset,
        fixed_objects: fixed.fixed_objects,
        fixed_morphisms: fixed.fixed_morphisms,
        strict: f.is_strict(),
        identities: checks
            .into_iter()
            .map(|(name, holds)| IdentityCheck {
                name: name.to_string(),
                holds,
            })
            .collect(),
    })
}

/// Like [`fixed_object_report`], but a violated identity is an error
/// carrying the offending instance.
pub fn check_fixed_object_theorem(f: &Functor) -> Result<LefschetzReport, LefschetzError> {
    let report = fixed_object_report(f)?;
    if report.holds() {
        Ok(report)
    } else {
        Err(LefschetzError::TheoremViolated {
            failed: report.failed(),
            instance: instance_text(f),
        })
    }
}
