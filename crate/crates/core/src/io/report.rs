//! Report documents: canonical JSON plus a text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::homology::{betti, euler_char, euler_from_homology};
use crate::io::selfcheck::SelfcheckSummary;
use crate::layers::FixedMorphismReport;
use crate::lefschetz::{IdentityCheck, LefschetzReport};
use crate::nerve::nerve;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub simplex_counts: Vec<usize>,
    pub betti: Vec<usize>,
    pub euler_from_cells: i64,
    pub euler_from_homology: i64,
}

pub fn invariants_report(c: &Category) -> InvariantsReport {
    let t = nerve(c);
    InvariantsReport {
        simplex_counts: t.counts(),
        betti: betti(&t),
        euler_from_cells: euler_char(&t),
        euler_from_homology: euler_from_homology(&t),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<LefschetzReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_morphism: Option<FixedMorphismReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selfcheck: Option<SelfcheckSummary>,
}

impl ReportDoc {
    pub fn new(command: &str, instance_digest: Option<String>) -> ReportDoc {
        ReportDoc {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command: command.to_string(),
            instance_digest,
            invariants: None,
            lefschetz: None,
            fixed_morphism: None,
            selfcheck: None,
        }
    }

    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_structured(text: &str) -> Result<ReportDoc, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// SHA-256 of the structured encoding.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.to_structured().as_bytes()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {} {}", self.tool, self.version, self.command).unwrap();
        if let Some(d) = &self.instance_digest {
            writeln!(out, "instance digest: {d}").unwrap();
        }
        if let Some(inv) = &self.invariants {
            writeln!(out, "simplex counts: {:?}", inv.simplex_counts).unwrap();
            writeln!(out, "betti numbers: {:?}", inv.betti).unwrap();
            writeln!(
                out,
                "euler characteristic: {} (cells), {} (homology)",
                inv.euler_from_cells, inv.euler_from_homology
            )
            .unwrap();
        }
        if let Some(r) = &self.lefschetz {
            writeln!(out, "L = {}", r.lefschetz).unwrap();
            writeln!(out, "L_R = {}", r.r_lefschetz).unwrap();
            for (name, v) in [
                ("L", r.lefschetz_methods),
                ("L_R", r.r_lefschetz_methods),
                ("L(sd F)", r.subdivision_lefschetz_methods),
            ] {
                writeln!(
                    out,
                    "{name}: chain level {}, homology level {}",
                    v.hopf, v.homology
                )
                .unwrap();
            }
            writeln!(out, "chi(C^F) = {}", r.chi_fixed_subcategory).unwrap();
            writeln!(out, "chi(R(C)^R(F)) = {}", r.chi_fixed_poset).unwrap();
            let objects: Vec<String> = r.fixed_objects.iter().map(|x| x.to_string()).collect();
            writeln!(out, "fixed objects: [{}]", objects.join(", ")).unwrap();
            let morphisms: Vec<String> = r.fixed_morphisms.iter().map(|m| m.to_string()).collect();
            writeln!(out, "fixed morphisms: [{}]", morphisms.join(", ")).unwrap();
            writeln!(out, "strict: {}", r.strict).unwrap();
            write_checks(&mut out, &r.identities);
        }
        if let Some(r) = &self.fixed_morphism {
            writeln!(out, "cutoff: {}", r.cutoff).unwrap();
            writeln!(out, "layered L = {}", r.layered_lefschetz).unwrap();
            writeln!(
                out,
                "layered L: chain level {}, homology level {}",
                r.layered_methods.hopf, r.layered_methods.homology
            )
            .unwrap();
            writeln!(out, "chi(fixed subposet) = {}", r.chi_fixed_domain).unwrap();
            writeln!(
                out,
                "domain size: {} (one-step deletion: {}, invariant: {})",
                r.domain_size, r.literal_domain_size, r.literal_domain_invariant
            )
            .unwrap();
            if r.literal_domain_differs {
                writeln!(
                    out,
                    "note: the one-step deletion domain differs from the invariant domain"
                )
                .unwrap();
            }
            for w in &r.fixed_chains {
                let shown: Vec<String> = w
                    .chains
                    .iter()
                    .map(|ch| {
                        ch.iter()
                            .map(|m| m.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                writeln!(
                    out,
                    "fixed {}-chains: {} [{}]",
                    w.length,
                    w.total,
                    shown.join("; ")
                )
                .unwrap();
            }
            if r.fixed_chains.iter().all(|w| w.total == 0) {
                writeln!(out, "note: no fixed composable chains").unwrap();
            }
            write_checks(&mut out, &r.identities);
        }
        if let Some(s) = &self.selfcheck {
            writeln!(
                out,
                "selfcheck: {} instances from seed {} (objects <= {}, morphisms <= {})",
                s.instances, s.config.seed, s.config.max_objects, s.config.max_morphisms
            )
            .unwrap();
            writeln!(
                out,
                "strict: {}, L != 0: {}, layered L != 0: {}",
                s.strict_instances, s.nonzero_lefschetz, s.nonzero_layered_lefschetz
            )
            .unwrap();
            for t in &s.checks {
                writeln!(
                    out,
                    "  {:>4}/{:<4} failed  {}",
                    t.failed, t.evaluated, t.name
                )
                .unwrap();
            }
            for v in &s.violations {
                writeln!(
                    out,
                    "violation: instance {} seed {} digest {}",
                    v.index, v.seed, v.digest
                )
                .unwrap();
                for name in &v.failed {
                    writeln!(out, "  {name}").unwrap();
                }
            }
            writeln!(out, "corpus digest: {}", s.corpus_digest).unwrap();
        }
        out
    }
}

fn write_checks(out: &mut String, checks: &[IdentityCheck]) {
    for c in checks {
        writeln!(
            out,
            "  [{}] {}",
            if c.holds { "ok" } else { "FAIL" },
            c.name
        )
        .unwrap();
    }
}
