use crate::automaton::AcceptanceFunction;
use crate::error::{Error, Result};
use crate::Rational;

/// How well a cutpoint separates a sample of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub accepted: usize,
    pub rejected: usize,
    pub min_accepted: Option<Rational>,
    pub max_rejected: Option<Rational>,
    /// `min_accepted - max_rejected`; absent when one side is empty. Not
    /// positive means the sample shows no isolation.
    pub gap: Option<Rational>,
}

impl GapReport {
    pub fn is_one_sided(&self) -> bool {
        self.accepted == 0 || self.rejected == 0
    }
}

pub fn isolation_gap<A, S>(a: &A, lambda: &Rational, words: &[S]) -> Result<GapReport>
where
    A: AcceptanceFunction + ?Sized,
    S: AsRef<str>,
{
    if words.is_empty() {
        return Err(Error::EmptyWordList);
    }
    let mut report = GapReport {
        accepted: 0,
        rejected: 0,
        min_accepted: None,
        max_rejected: None,
        gap: None,
    };
    for w in words {
        let v = a.accept_value(w.as_ref())?;
        if v > *lambda {
            report.accepted += 1;
            if report.min_accepted.as_ref().is_none_or(|m| v < *m) {
                report.min_accepted = Some(v);
            }
        } else {
            report.rejected += 1;
            if report.max_rejected.as_ref().is_none_or(|m| v > *m) {
                report.max_rejected = Some(v);
            }
        }
    }
    if let (Some(lo), Some(hi)) = (&report.min_accepted, &report.max_rejected) {
        report.gap = Some(lo - hi);
    }
    Ok(report)
}
