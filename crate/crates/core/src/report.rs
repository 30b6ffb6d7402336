//! The aggregated report for one tuple and its JSON shape.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::blocks::{DiscEuler, JoinParams};
use crate::fgab::{FgAbGroup, QzGroup};
use crate::linking::LinkingForm;
use crate::zmatrix::IntMatrix;

pub const SCHEMA: &str = "join-invariants/1";

/// Serializes an integer as a JSON number when it fits in `i64`, otherwise
/// as a decimal string.
pub struct BigJson<'a>(pub &'a BigInt);

impl Serialize for BigJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => serializer.serialize_i64(x),
            None => serializer.collect_str(self.0),
        }
    }
}

pub fn ser_bigint<S: Serializer>(x: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    BigJson(x).serialize(serializer)
}

pub fn ser_matrix<S: Serializer>(m: &IntMatrix, serializer: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<BigJson<'_>>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(BigJson).collect())
        .collect();
    rows.serialize(serializer)
}

/// `{"h0": ..., "h5": ...}`.
pub fn degree_map<G: Clone>(groups: &[G]) -> BTreeMap<String, G> {
    groups
        .iter()
        .enumerate()
        .map(|(q, g)| (format!("h{q}"), g.clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// A check comparing two rendered values.
    pub fn equal<T: PartialEq + fmt::Display>(name: impl Into<String>, assembled: &T, expected: &T) -> Self {
        let passed = assembled == expected;
        let detail = if passed {
            format!("{assembled}")
        } else {
            format!("assembled {assembled}, expected {expected}")
        };
        Check::new(name, passed, detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationStrings {
    pub join: String,
    pub join_reduced: String,
    pub b1: String,
    pub b2: String,
    pub boundary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerClasses {
    #[serde(serialize_with = "ser_bigint")]
    pub c1: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub c2: BigInt,
    pub disc_bundles: Vec<DiscEuler>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinkingForms {
    pub lambda1: LinkingForm,
    pub lambda2: LinkingForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvSummary {
    pub degree: usize,
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    #[serde(serialize_with = "ser_matrix")]
    pub map: IntMatrix,
    pub kernel: FgAbGroup,
    pub cokernel: FgAbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub degree: usize,
    pub assembled: String,
    pub closed_form: String,
}

/// Everything computed for one tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub schema: &'static str,
    pub params: JoinParams,
    pub h_integral: BTreeMap<String, FgAbGroup>,
    pub h_rational_betti: Vec<usize>,
    pub h_qz: BTreeMap<String, QzGroup>,
    pub homology: BTreeMap<String, FgAbGroup>,
    pub presentations: PresentationStrings,
    pub euler_classes: EulerClasses,
    pub linking: LinkingForms,
    pub mv: Vec<MvSummary>,
    pub checks: Vec<Check>,
    pub provenance: Vec<Provenance>,
}

/// The parts of a report that must not depend on auxiliary choices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinalInvariants {
    pub cohomology: Vec<FgAbGroup>,
    pub homology: Vec<FgAbGroup>,
    pub qz: Vec<QzGroup>,
    pub betti: Vec<usize>,
    pub linking: LinkingForms,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn cohomology(&self) -> Vec<FgAbGroup> {
        self.h_integral.values().cloned().collect()
    }

    pub fn homology_groups(&self) -> Vec<FgAbGroup> {
        self.homology.values().cloned().collect()
    }

    pub fn qz(&self) -> Vec<QzGroup> {
        self.h_qz.values().cloned().collect()
    }

    pub fn final_invariants(&self) -> FinalInvariants {
        FinalInvariants {
            cohomology: self.cohomology(),
            homology: self.homology_groups(),
            qz: self.qz(),
            betti: self.h_rational_betti.clone(),
            linking: self.linking.clone(),
        }
    }

    /// Plain-text rendering used by the `table` output format.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let (g, n, w1, w2, l2) = self.params.tuple();
        out.push_str(&format!(
            "tuple      g={g} n={n} w1={w1} w2={w2} l2={l2}  r={} s={} d={}\n",
            self.params.r(),
            self.params.s(),
            self.params.d()
        ));
        out.push_str("degree  H^q(M;Z)             H_q(M;Z)             H^q(M;Q/Z)           b_q\n");
        let coh = self.cohomology();
        let hom = self.homology_groups();
        let qz = self.qz();
        for q in 0..coh.len() {
            out.push_str(&format!(
                "{q:<7} {:<20} {:<20} {:<20} {}\n",
                coh[q].to_string(),
                hom[q].to_string(),
                qz[q].to_string(),
                self.h_rational_betti[q]
            ));
        }
        out.push_str(&format!("pi1        {}\n", self.presentations.join_reduced));
        out.push_str(&format!(
            "euler      c1={} c2={}\n",
            self.euler_classes.c1, self.euler_classes.c2
        ));
        for (name, form) in [("lambda1", &self.linking.lambda1), ("lambda2", &self.linking.lambda2)] {
            let rows: Vec<String> = form
                .matrix
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            out.push_str(&format!(
                "{name:<10} on {}: [{}]\n",
                form.torsion_group,
                rows.join("; ")
            ));
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!("checks     {passed}/{} passed\n", self.checks.len()));
        for c in self.checks.iter().filter(|c| !c.passed) {
            out.push_str(&format!("FAILED     {}: {}\n", c.name, c.detail));
        }
        out
    }
}
