use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{indicator_vector, IndicatorVector};
use crate::center::CategorySpec;
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::qforms::TOLERANCE;

/// Smallest `k` at which two classes' indicators differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub class_a: usize,
    pub class_b: usize,
    pub k: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    /// Common period: lcm of the individual indicator periods.
    pub period: u64,
    /// Comparisons covered `k = 1..=horizon`; equal to `period` by default.
    pub horizon: u64,
    /// Classes of spec indices, each sorted, ordered by first member.
    pub classes: Vec<Vec<usize>>,
    pub separations: Vec<Separation>,
    pub vectors: Vec<IndicatorVector>,
}

impl RigidityReport {
    pub fn class_of(&self, spec: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&spec)).expect("every spec belongs to a class")
    }

    pub fn separator(&self, a: usize, b: usize) -> Option<u64> {
        let (ca, cb) = (self.class_of(a), self.class_of(b));
        self.separations.iter().find(|s| (s.class_a, s.class_b) == (ca.min(cb), ca.max(cb))).map(|s| s.k)
    }
}

fn first_difference(a: &IndicatorVector, b: &IndicatorVector, horizon: u64) -> Option<u64> {
    (1..=horizon).find(|&k| (a.at(k) - b.at(k)).norm() >= TOLERANCE)
}

/// Partitions specs sharing one Grothendieck ring by full-period indicator
/// vectors. The ring defaults to the first spec's.
pub fn rigidity_report(specs: &[CategorySpec], same_ring: Option<&FusionRing>) -> Result<RigidityReport> {
    rigidity_report_upto(specs, same_ring, None)
}

/// As [`rigidity_report`], comparing only `k <= horizon` when one is given.
pub fn rigidity_report_upto(
    specs: &[CategorySpec],
    same_ring: Option<&FusionRing>,
    horizon: Option<u64>,
) -> Result<RigidityReport> {
    let Some(first) = specs.first() else {
        return Ok(RigidityReport {
            period: 1,
            horizon: horizon.unwrap_or(1),
            classes: Vec::new(),
            separations: Vec::new(),
            vectors: Vec::new(),
        });
    };
    let ring = match same_ring {
        Some(r) => r.clone(),
        None => first.base_ring(),
    };
    for (i, s) in specs.iter().enumerate() {
        s.validate()?;
        if s.base_ring() != ring {
            return Err(Error::RingMismatch(i));
        }
    }

    let vectors = specs.par_iter().map(indicator_vector).collect::<Result<Vec<_>>>()?;
    let period = vectors.iter().fold(1u64, |acc, v| acc.lcm(&v.period));
    let horizon = horizon.unwrap_or(period);

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..vectors.len() {
        match classes.iter_mut().find(|c| first_difference(&vectors[c[0]], &vectors[i], horizon).is_none()) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }

    let mut separations = Vec::new();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            let k = first_difference(&vectors[classes[a][0]], &vectors[classes[b][0]], horizon)
                .expect("distinct classes differ somewhere");
            separations.push(Separation { class_a: a, class_b: b, k });
        }
    }
    Ok(RigidityReport { period, horizon, classes, separations, vectors })
}
