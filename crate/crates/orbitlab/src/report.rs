//! Versioned JSON reports.

use orbitlab_core::group::GenerationCertificate;
use orbitlab_core::pipeline::{Check, NamedCertificate, PipelineReport};
use orbitlab_core::space::format_rational;
use orbitlab_core::Rational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::formats::{CertificateJson, GraphingJson, PartialInjectionJson, PermutationJson};

pub const SCHEMA_VERSION: &str = "orbitlab.report/1";

/// How generation claims are read at finite size.
pub const MODEL: &str =
    "finite uniform space; topological generation is exact generation (d_u is discrete)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledCertificate {
    pub label: String,
    #[serde(flatten)]
    pub certificate: CertificateJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckJson {
    pub label: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub model: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub certificates: Vec<LabeledCertificate>,
    pub checks: Vec<CheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            model: MODEL,
            command: command.into(),
            inputs,
            results: Value::Null,
            certificates: Vec::new(),
            checks: Vec::new(),
            error: None,
            timing_ms: 0,
        }
    }

    pub fn certify(&mut self, label: impl Into<String>, cert: &GenerationCertificate) {
        self.certificates.push(LabeledCertificate {
            label: label.into(),
            certificate: cert.into(),
        });
    }

    pub fn check(&mut self, label: impl Into<String>, holds: bool) {
        self.checks.push(CheckJson {
            label: label.into(),
            holds,
        });
    }

    /// True iff every certificate generates and every check holds.
    pub fn all_hold(&self) -> bool {
        self.error.is_none()
            && self.certificates.iter().all(|c| c.certificate.generates)
            && self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Serialization with the timing field zeroed, for determinism checks.
    pub fn to_json_without_timing(&self) -> String {
        let mut copy = self.clone();
        copy.timing_ms = 0;
        copy.to_json()
    }
}

pub fn rational(value: &Rational) -> Value {
    Value::String(format_rational(value))
}

pub fn perms(list: &[orbitlab_core::Permutation]) -> Value {
    json!(list.iter().map(PermutationJson::from).collect::<Vec<_>>())
}

fn push_named(report: &mut Report, certs: &[NamedCertificate], checks: &[Check]) {
    for c in certs {
        report.certify(c.label.clone(), &c.certificate);
    }
    for c in checks {
        report.check(c.label.clone(), c.holds);
    }
}

/// Fills the results, certificates and checks of a pipeline report.
pub fn fill_pipeline(report: &mut Report, run: &PipelineReport) {
    let ledger = &run.ledger;
    report.results = json!({
        "mode": run.mode.name(),
        "conjugation": run.conjugation,
        "seed": Value::Null,
        "reserved": run.reserved,
        "blocks": run.blocks,
        "psi": PartialInjectionJson::from(&run.psi),
        "cycles": run.cycles.iter().map(GraphingJson::from).collect::<Vec<_>>(),
        "generators": {
            "T0": PermutationJson::from(&run.t0),
            "U0": PermutationJson::from(&run.u0),
            "U1": PermutationJson::from(&run.u1),
            "C": perms(&run.cycle_permutations),
            "claim_set": perms(&run.claim_generators),
            "final_set": perms(&run.final_generators),
            "stress_set": perms(&run.stress_generators),
        },
        "generator_counts": {
            "claim": run.claim_generators.len(),
            "final": run.final_generators.len(),
        },
        "cost_ledger": {
            "c": rational(&ledger.c),
            "budget": rational(&ledger.budget),
            "epsilon": rational(&ledger.epsilon),
            "u0_support": rational(&ledger.u0_support),
            "graphing_cost": rational(&ledger.graphing_cost),
            "relation_cost": rational(&ledger.relation_cost),
            "claim_support_sum": rational(&ledger.claim_support_sum),
            "final_support_sum": rational(&ledger.final_support_sum),
        },
    });
    push_named(report, &run.certificates, &run.checks);
}
