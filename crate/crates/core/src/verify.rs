//! Independent re-check of a serialized trace against its input vector.
//!
//! Works from the raw step matrices only: descriptors are never consulted,
//! and every pushforward goes through the compound-matrix formula.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::plucker::{compute_plucker, plucker_gcd, PluckerVector};
use crate::reconstruct::assemble;
use crate::transforms::{push_compound, StageLabel, Trace, TraceJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, passed, detail: detail.into() });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

pub fn verify_trace(trace: &TraceJson, original: &PluckerVector) -> Result<VerificationReport> {
    if trace.k != original.k() || trace.n != original.n() {
        return Err(Error::Dimension(format!(
            "trace is for G({},{}) but the vector is in G({},{})",
            trace.k,
            trace.n,
            original.k(),
            original.n()
        )));
    }
    let (k, n) = (trace.k, trace.n);
    let steps = Trace::raw_matrices(trace)?;
    let mut report = VerificationReport::default();

    let bad: Vec<usize> = steps
        .iter()
        .enumerate()
        .filter(|(_, (_, _, m))| m.det().map_or(true, |d| d.abs() != BigInt::one()))
        .map(|(i, _)| i)
        .collect();
    report.push(
        "unimodular",
        bad.is_empty(),
        if bad.is_empty() { format!("{} matrices with determinant ±1", steps.len()) } else { format!("steps {bad:?}") },
    );

    let mut ambient = n;
    let mut shape_ok = true;
    for (label, step_n, _) in &steps {
        if *step_n != ambient {
            shape_ok = false;
        }
        if *label == StageLabel::CoordinateDrop {
            ambient = ambient.saturating_sub(1);
        }
    }
    shape_ok &= ambient == k;
    report.push("dimensions", shape_ok, format!("{} coordinate drops, from n = {n} to {ambient}", n - ambient));

    // push the input through every raw matrix; after a drop at ambient
    // dimension m, every coordinate involving slot m must vanish
    let mut p = original.clone();
    let mut push_ok = true;
    let mut detail = String::from("every drop removes a zero column");
    for (i, (label, step_n, m)) in steps.iter().enumerate() {
        p = push_compound(&p, &m.pad_identity(n))?;
        if *label == StageLabel::CoordinateDrop {
            let leftover = p.iter().any(|(idx, v)| !v.is_zero() && idx.iter().any(|&c| c >= *step_n));
            if leftover {
                push_ok = false;
                detail = format!("step {i} drops a non-zero column");
                break;
            }
        }
    }
    if push_ok {
        let tail_zero = p.entries()[1..].iter().all(Zero::is_zero);
        let head_matches = trace.p_hat.as_deref().map(|s| s.parse::<BigInt>().ok()) == Some(Some(p.entries()[0].clone()));
        if !tail_zero || !head_matches {
            push_ok = false;
            detail = format!("final vector {p} is not (p_hat, 0, …, 0)");
        }
    }
    report.push("pushforward", push_ok, detail);

    let p_hat = trace.p_hat.as_deref().and_then(|s| s.parse::<BigInt>().ok());
    let gcd = plucker_gcd(original)?;
    let gcd_ok = p_hat.as_ref().is_some_and(|ph| ph.abs() == gcd);
    report.push(
        "gcd",
        gcd_ok,
        format!("|p_hat| = {} vs gcd = {gcd}", p_hat.as_ref().map_or("missing".into(), |p| p.abs().to_string())),
    );

    let recon = Trace::from_json(trace)
        .and_then(|t| assemble(&t, original))
        .and_then(|r| compute_plucker(&r.matrix).map(|q| (r, q)));
    match recon {
        Ok((r, q)) if &q == original => report.push("reconstruction", true, format!("matrix {:?}", r.matrix.to_rows())),
        Ok((_, q)) => report.push("reconstruction", false, format!("matrix realizes {q}")),
        Err(e) => report.push("reconstruction", false, e.to_string()),
    }
    Ok(report)
}

/// Verifies independent (trace, vector) pairs on separate threads.
pub fn verify_batch(jobs: &[(TraceJson, PluckerVector)]) -> Vec<Result<VerificationReport>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = jobs.iter().map(|(t, p)| scope.spawn(move || verify_trace(t, p))).collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mee::{mee_run, MeeOptions};

    fn golden() -> (TraceJson, PluckerVector) {
        let p = PluckerVector::from_i64(2, 4, &[10, 10, 12, -15, 3, 21]).unwrap();
        (mee_run(&p, MeeOptions::default()).unwrap().to_json(), p)
    }

    #[test]
    fn clean_trace_passes() {
        let (t, p) = golden();
        let r = verify_trace(&t, &p).unwrap();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn corrupted_diagonal_fails() {
        let (mut t, p) = golden();
        t.steps[0].matrix[0][0] = "2".into();
        let r = verify_trace(&t, &p).unwrap();
        assert!(!r.all_passed());
        assert!(!r.checks.iter().find(|c| c.name == "unimodular").unwrap().passed);
    }

    #[test]
    fn shifted_p_hat_fails_gcd() {
        let (mut t, p) = golden();
        let ph: BigInt = t.p_hat.as_ref().unwrap().parse().unwrap();
        t.p_hat = Some((ph + BigInt::from(1)).to_string());
        let r = verify_trace(&t, &p).unwrap();
        assert!(!r.checks.iter().find(|c| c.name == "gcd").unwrap().passed);
    }

    #[test]
    fn mismatched_dimensions() {
        let (t, _) = golden();
        let other = PluckerVector::from_i64(2, 3, &[1, 2, 3]).unwrap();
        assert!(verify_trace(&t, &other).is_err());
    }
}
