//! Squared subrectangles and re-orienting them.

use thiserror::Error;

use crate::dissection::{Dissection, Element, Symmetry};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubrectangleRegion {
    pub x: u64,
    pub y: u64,
    pub w: u64,
    pub h: u64,
    /// Indices into the dissection's element list, ascending.
    pub members: Vec<usize>,
    /// Not contained in any other reported region.
    pub maximal: bool,
}

impl SubrectangleRegion {
    pub fn is_square(&self) -> bool {
        self.w == self.h
    }

    pub fn contains_region(&self, other: &SubrectangleRegion) -> bool {
        self.x <= other.x && self.y <= other.y && other.x + other.w <= self.x + self.w && other.y + other.h <= self.y + self.h
    }

    fn contains(&self, e: &Element) -> bool {
        self.x <= e.x && self.y <= e.y && e.right() <= self.x + self.w && e.bottom() <= self.y + self.h
    }

    /// Orientations that keep the slot's shape.
    pub fn orientations(&self) -> &'static [Symmetry] {
        if self.is_square() {
            &Symmetry::ALL
        } else {
            &Symmetry::OBLONG
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubrectError {
    #[error("dissection is not a valid tiling")]
    InvalidTiling,
    #[error("no subrectangle with index {0}")]
    NoSuchRegion(usize),
    #[error("orientation {0} does not fit an oblong slot")]
    BadSelector(&'static str),
}

/// Every proper squared subrectangle with at least two elements, ordered by
/// `(y, x, w, h)`. Nested regions are included; the outermost are flagged.
pub fn find_subrectangles(d: &Dissection) -> Vec<SubrectangleRegion> {
    let els = d.elements();
    let total = d.width() as u128 * d.height() as u128;
    let mut found: Vec<SubrectangleRegion> = Vec::new();
    let mut lefts: Vec<(u64, u64)> = els.iter().map(|e| (e.x, e.y)).collect();
    lefts.sort_unstable();
    lefts.dedup();
    let mut rights: Vec<(u64, u64)> = els.iter().map(|e| (e.right(), e.bottom())).collect();
    rights.sort_unstable();
    rights.dedup();
    for &(x, y) in &lefts {
        for &(r, b) in &rights {
            if r <= x || b <= y {
                continue;
            }
            let (w, h) = (r - x, b - y);
            let area = w as u128 * h as u128;
            if area >= total {
                continue;
            }
            let mut region = SubrectangleRegion { x, y, w, h, members: Vec::new(), maximal: false };
            let mut covered: u128 = 0;
            for (i, e) in els.iter().enumerate() {
                if region.contains(e) {
                    covered += e.area() as u128;
                    region.members.push(i);
                }
            }
            if covered == area && region.members.len() >= 2 {
                found.push(region);
            }
        }
    }
    found.sort_unstable_by_key(|r| (r.y, r.x, r.w, r.h));
    let flags: Vec<bool> = found
        .iter()
        .enumerate()
        .map(|(i, r)| !found.iter().enumerate().any(|(j, o)| j != i && o.contains_region(r)))
        .collect();
    for (r, m) in found.iter_mut().zip(flags) {
        r.maximal = m;
    }
    found
}

/// Re-orients the contents of one region in place. Element order is kept.
pub fn reorient(d: &Dissection, region: &SubrectangleRegion, sym: Symmetry) -> Result<Dissection, SubrectError> {
    if !region.orientations().contains(&sym) {
        return Err(SubrectError::BadSelector(sym.name()));
    }
    let mut elements = d.elements().to_vec();
    for &i in &region.members {
        let local = Element::new(elements[i].x - region.x, elements[i].y - region.y, elements[i].size);
        let t = sym.apply(&local, region.w, region.h);
        elements[i] = Element::new(t.x + region.x, t.y + region.y, t.size);
    }
    Ok(Dissection::new(d.width(), d.height(), elements))
}

/// Selects a region by its index in [`find_subrectangles`] order.
pub fn transform_subrectangle(d: &Dissection, region: usize, sym: Symmetry) -> Result<Dissection, SubrectError> {
    if !d.validate().ok() {
        return Err(SubrectError::InvalidTiling);
    }
    let regions = find_subrectangles(d);
    let r = regions.get(region).ok_or(SubrectError::NoSuchRegion(region))?;
    reorient(d, r, sym)
}
