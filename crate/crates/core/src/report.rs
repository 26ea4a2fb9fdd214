//! JSON and CSV renderings of checks and scans.

use serde::{Deserialize, Serialize};

use crate::etgrs::{
    ConditionReport, ConditionResult, EtgrsParams, EtgrsTemplate, ScanResult, ScanTarget,
};
use crate::field::{Element, Field};

pub const SCHEMA: &str = "tgrs-lab/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub n: usize,
    pub k: usize,
    pub h: usize,
    pub alpha: Vec<String>,
    pub v: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub eta: String,
    pub delta: String,
    pub verdict: bool,
    pub conditions: Vec<ConditionResult>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub brute_force: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub field_description: String,
    pub modulus_source: String,
    pub target: String,
    pub params: ParamsJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<String>,
    /// Number of pairs examined (scans only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scanned: Option<usize>,
    pub pairs: Vec<PairJson>,
}

fn strings(f: &Field, xs: &[Element]) -> Vec<String> {
    xs.iter().map(|&x| f.format(x)).collect()
}

fn header(t: &EtgrsTemplate, target: ScanTarget) -> RunReport {
    let f = &t.field;
    let (a, b) = match target {
        ScanTarget::DeepHole { a, b } => (Some(f.format(a)), Some(f.format(b))),
        _ => (None, None),
    };
    RunReport {
        schema: SCHEMA.into(),
        field_description: f.description(),
        modulus_source: f.modulus_source().as_str().into(),
        target: target.name().into(),
        params: ParamsJson {
            n: t.n,
            k: t.k,
            h: t.h,
            alpha: strings(f, &t.alpha),
            v: strings(f, &t.v),
        },
        a,
        b,
        scanned: None,
        pairs: Vec::new(),
    }
}

impl RunReport {
    /// Report for a single `(eta, delta)`.
    pub fn from_check(
        p: &EtgrsParams,
        target: ScanTarget,
        report: &ConditionReport,
        brute_force: Option<bool>,
    ) -> RunReport {
        let f = &p.field;
        let mut r = header(&p.template(), target);
        r.pairs.push(PairJson {
            eta: f.format(p.eta),
            delta: f.format(p.delta),
            verdict: report.verdict,
            conditions: report.conditions.clone(),
            brute_force,
        });
        r
    }

    /// Report listing the hits of a scan.
    pub fn from_scan(scan: &ScanResult) -> RunReport {
        let f = &scan.template.field;
        let mut r = header(&scan.template, scan.target);
        r.scanned = Some(scan.scanned);
        r.pairs = scan
            .hits
            .iter()
            .map(|h| PairJson {
                eta: f.format(h.eta),
                delta: f.format(h.delta),
                verdict: h.report.verdict,
                conditions: h.report.conditions.clone(),
                brute_force: h.brute_force,
            })
            .collect();
        r
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    /// One line per pair: `eta,delta,verdict,first_failing_condition`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eta,delta,verdict,first_failing_condition\n");
        for p in &self.pairs {
            let failing = p
                .conditions
                .iter()
                .find(|c| !c.holds)
                .map(|c| c.id.as_str())
                .unwrap_or("");
            out.push_str(&format!(
                "{},{},{},{}\n",
                p.eta, p.delta, p.verdict, failing
            ));
        }
        out
    }
}
