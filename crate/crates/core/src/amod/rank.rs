//! Rank by majority vote of torsion dimensions over small primes.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::structure::AModule;
use crate::coeffs::APoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct PrimeEstimate {
    pub prime: APoly,
    pub dim_fq: usize,
    /// dim_fq / deg π.
    pub estimate: usize,
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub estimates: Vec<PrimeEstimate>,
    /// Primes of the budget lying in ker δ.
    pub skipped: Vec<APoly>,
    pub rank: usize,
    pub bad_primes: Vec<APoly>,
    pub method: &'static str,
}

/// All primes of degree ≤ 2, or the first five primes if there are fewer.
pub fn default_primes(fq: &std::sync::Arc<crate::coeffs::Fq>) -> Vec<APoly> {
    let small = APoly::primes_up_to(fq, 2);
    if small.len() >= 5 {
        small
    } else {
        APoly::first_primes(fq, 5)
    }
}

impl AModule {
    /// Majority rank over the first `budget` primes (the default list when
    /// `None`); primes in ker δ are skipped.
    pub fn rank(&self, budget: Option<usize>) -> Result<RankReport> {
        let fq = self.field().fq().clone();
        let primes = match budget {
            Some(b) => APoly::first_primes(&fq, b),
            None => default_primes(&fq),
        };
        let (skipped, used): (Vec<APoly>, Vec<APoly>) = primes.into_iter().partition(|p| self.in_ker_delta(p));
        let estimates = used
            .par_iter()
            .map(|p| {
                let rep = self.torsion(p, None)?;
                let deg = p.degree().expect("prime");
                if rep.infinite || rep.dim_fq % deg != 0 {
                    return Err(Error::Invariant(format!(
                        "dim_fq Tor({p}) = {} is not a multiple of deg {p}",
                        rep.dim_fq
                    )));
                }
                Ok(PrimeEstimate { prime: p.clone(), dim_fq: rep.dim_fq, estimate: rep.dim_fq / deg })
            })
            .collect::<Result<Vec<_>>>()?;
        let rank = majority(&estimates)?;
        let bad_primes = estimates.iter().filter(|e| e.estimate != rank).map(|e| e.prime.clone()).collect();
        Ok(RankReport { estimates, skipped, rank, bad_primes, method: "torsion-majority" })
    }
}

/// A strict majority value; failing that, among values tied for the most
/// votes, the one seen at the largest-degree prime (latest in the list).
fn majority(est: &[PrimeEstimate]) -> Result<usize> {
    if est.is_empty() {
        return Err(Error::InsufficientPrimes("no prime outside ker δ in the budget".into()));
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in est {
        *counts.entry(e.estimate).or_default() += 1;
    }
    let top = *counts.values().max().expect("nonempty");
    if top * 2 > est.len() {
        return Ok(*counts.iter().find(|c| *c.1 == top).expect("present").0);
    }
    let tied: Vec<usize> = counts.iter().filter(|c| *c.1 == top).map(|c| *c.0).collect();
    if tied.len() < 2 {
        return Err(Error::InsufficientPrimes(format!(
            "no majority among {} estimates; enlarge the budget",
            est.len()
        )));
    }
    let last = est.iter().rev().find(|e| tied.contains(&e.estimate)).expect("tied value present");
    Ok(last.estimate)
}
