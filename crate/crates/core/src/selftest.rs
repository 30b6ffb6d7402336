//! Parameter grids and the bounded self-validation run.

use std::fmt;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use crate::blocks::{validate, JoinParams};
use crate::error::Error;
use crate::linking::fingerprint;
use crate::mvengine::{cross_validate, cross_validate_with, ClosedForm};

/// Inclusive ranges for each parameter. Only admissible tuples are produced,
/// in lexicographic order of `(g, n, w1, w2, l2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleGrid {
    pub g: RangeInclusive<i64>,
    pub n: RangeInclusive<i64>,
    pub w1: RangeInclusive<i64>,
    pub w2: RangeInclusive<i64>,
    pub l2: RangeInclusive<i64>,
}

impl TupleGrid {
    /// `g <= g_max`, `n, l2 <= nl_max`, `w1, w2 <= w_max`.
    pub fn bounded(g_max: i64, nl_max: i64, w_max: i64) -> Self {
        TupleGrid {
            g: 1..=g_max,
            n: 1..=nl_max,
            w1: 1..=w_max,
            w2: 1..=w_max,
            l2: 1..=nl_max,
        }
    }

    pub fn tuples(&self) -> Vec<JoinParams> {
        let mut out = Vec::new();
        for g in self.g.clone() {
            for n in self.n.clone() {
                for w1 in self.w1.clone() {
                    for w2 in self.w2.clone() {
                        for l2 in self.l2.clone() {
                            if let Ok(p) = validate(g, n, w1, w2, l2) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl Default for TupleGrid {
    fn default() -> Self {
        TupleGrid::bounded(2, 5, 4)
    }
}

/// Deliberate faults for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Compare against closed forms with `d` replaced by `d + 1`.
    TamperClosedForm,
    /// Use auxiliary integers that violate `r l2 - s w1 w2 = 1`.
    PerturbAux,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestSummary {
    pub tuples: usize,
    pub assertions: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestFailure {
    pub assertion: String,
    pub tuple: String,
    pub detail: String,
    pub assertions_before: usize,
}

impl fmt::Display for SelftestFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "assertion `{}` failed at {}: {}", self.assertion, self.tuple, self.detail)
    }
}

/// Whether `x -> w x` from `Z/n` to `Z/(n w)` is injective, by listing the
/// whole source.
pub fn cyclic_map_injective_by_enumeration(n: u64, w: u64) -> bool {
    let target = n * w;
    (1..n).all(|x| !(x * w).is_multiple_of(target))
}

/// Runs every per-tuple property over the grid, stopping at the first
/// failure.
pub fn run_selftest(grid: &TupleGrid, fault: Option<Fault>) -> Result<SelftestSummary, SelftestFailure> {
    let start = Instant::now();
    let tuples = grid.tuples();
    let mut assertions = 0usize;
    for p in &tuples {
        let fail = |assertion: &str, detail: String, before: usize| SelftestFailure {
            assertion: assertion.to_string(),
            tuple: p.to_string(),
            detail,
            assertions_before: before,
        };
        let run = match fault {
            Some(Fault::TamperClosedForm) => {
                let mut closed = ClosedForm::for_params(p);
                closed.d += 1;
                cross_validate_with(p, &closed)
            }
            Some(Fault::PerturbAux) => {
                let q = p.with_unchecked_aux(p.r().clone(), p.s() + 1);
                cross_validate(&q)
            }
            None => cross_validate(p),
        };
        let report = match run {
            Ok(r) => r,
            Err(Error::ValidationFailure { check, detail }) => return Err(fail(&check, detail, assertions)),
            Err(e) => return Err(fail("pipeline", e.to_string(), assertions)),
        };
        assertions += report.checks.len();

        let base = report.final_invariants();
        for k in -2..=2 {
            let shifted = cross_validate(&p.with_aux_shift(k))
                .map_err(|e| fail("aux choice invariance", e.to_string(), assertions))?;
            if shifted.final_invariants() != base {
                return Err(fail("aux choice invariance", format!("shift {k}"), assertions));
            }
            assertions += 1;
        }

        let (g, n, w1, w2, l2) = p.tuple();
        let swapped = validate(g as i64, n as i64, w2 as i64, w1 as i64, l2 as i64)
            .and_then(|q| fingerprint(&q))
            .map_err(|e| fail("weight swap", e.to_string(), assertions))?;
        let own = fingerprint(p).map_err(|e| fail("weight swap", e.to_string(), assertions))?;
        if own != swapped {
            return Err(fail("weight swap", format!("{own} vs {swapped}"), assertions));
        }
        assertions += 1;

        for w in [w1, w2] {
            if n * w <= 10_000 {
                if !cyclic_map_injective_by_enumeration(n, w) {
                    return Err(fail("torsion injectivity", format!("Z/{n} -> Z/{}", n * w), assertions));
                }
                assertions += 1;
            }
        }
    }
    Ok(SelftestSummary {
        tuples: tuples.len(),
        assertions,
        elapsed: start.elapsed(),
    })
}
