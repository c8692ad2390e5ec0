//! Isomer classes and the canonical tablecode representative.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::code::TablecodeLine;
use crate::dissection::{Dissection, Symmetry};
use crate::subrect::{find_subrectangles, reorient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("dissection is not a valid tiling")]
    InvalidTiling,
    #[error("isomer class exceeds {0} members")]
    TooManyIsomers(usize),
}

/// Upper bound on the isomer closure; heavily imperfect inputs can explode.
pub const MAX_ISOMERS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub tablecode: TablecodeLine,
    pub dissection: Dissection,
}

/// Number of decimal digits in `v` (at least one).
pub fn digits(v: u64) -> usize {
    v.checked_ilog10().map_or(1, |d| d as usize + 1)
}

/// The highest tablecode over the eight orientations of `d`.
pub fn best_orientation(d: &Dissection) -> Canonical {
    let mut best: Option<(Vec<u64>, TablecodeLine, Dissection)> = None;
    for s in Symmetry::ALL {
        let t = d.transform(s).reading_order();
        let code = TablecodeLine::of(&t);
        let key = code.key();
        if best.as_ref().map_or(true, |(k, _, _)| key > *k) {
            best = Some((key, code, t));
        }
    }
    let (_, tablecode, dissection) = best.expect("eight orientations");
    Canonical { tablecode, dissection }
}

/// Members of the isomer class, each once in its own best orientation,
/// sorted by descending tablecode.
pub fn enumerate_isomers(d: &Dissection) -> Result<Vec<Canonical>, CanonError> {
    if !d.validate().ok() {
        return Err(CanonError::InvalidTiling);
    }
    let start = best_orientation(d);
    let mut seen: BTreeMap<Vec<u64>, Canonical> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.tablecode.key(), start.clone());
    queue.push_back(start.dissection);
    while let Some(cur) = queue.pop_front() {
        for region in find_subrectangles(&cur) {
            for &sym in region.orientations() {
                if sym == Symmetry::IDENTITY {
                    continue;
                }
                let next = reorient(&cur, &region, sym).expect("admissible orientation");
                let c = best_orientation(&next);
                let key = c.tablecode.key();
                if !seen.contains_key(&key) {
                    if seen.len() >= MAX_ISOMERS {
                        return Err(CanonError::TooManyIsomers(MAX_ISOMERS));
                    }
                    queue.push_back(c.dissection.clone());
                    seen.insert(key, c);
                }
            }
        }
    }
    Ok(seen.into_values().rev().collect())
}

/// The lexicographically highest zero-padded tablecode over every isomer and
/// orientation.
pub fn canonicalize(d: &Dissection) -> Result<Canonical, CanonError> {
    let isomers = enumerate_isomers(d)?;
    let digits = digits(d.width().max(d.height()));
    let limit = 10u64.checked_pow(digits as u32);
    let mut best: Option<(String, &Canonical)> = None;
    for c in &isomers {
        assert!(
            c.tablecode.sizes.iter().all(|&s| limit.map_or(true, |l| s < l)),
            "element wider than the padding"
        );
        let padded = c.tablecode.padded(digits);
        match &best {
            Some((p, prev)) if *p == padded => assert_eq!(prev.tablecode, c.tablecode, "padded tie"),
            Some((p, _)) if *p > padded => {}
            _ => best = Some((padded, c)),
        }
    }
    Ok(best.expect("at least one isomer").1.clone())
}
