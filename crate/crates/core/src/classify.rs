//! Perfect/imperfect, simple/compound and the deficient-square type labels.

use std::fmt;

use thiserror::Error;

use crate::dissection::Dissection;
use crate::subrect::{find_subrectangles, SubrectangleRegion};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Perfection {
    Perfect,
    Imperfect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    Simple,
    Compound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Square,
    Oblong,
}

/// Type label of a compound squared square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeCode {
    /// One subrectangle with `n` elements outside it.
    D(usize),
    /// Two disjoint subrectangles with `n` elements outside both.
    DD(usize),
    /// Two rectangles that together make up the square; the letter counts
    /// how many of them are trivially compound (a, b, c for 0, 1, 2).
    T2(char),
}

impl fmt::Display for TypeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeCode::D(n) => write!(f, "D{n}"),
            TypeCode::DD(n) => write!(f, "DD{n}"),
            TypeCode::T2(c) => write!(f, "T2({c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid type code {0:?}")]
pub struct TypeCodeError(pub String);

impl std::str::FromStr for TypeCode {
    type Err = TypeCodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || TypeCodeError(s.to_string());
        if let Some(rest) = s.strip_prefix("T2(") {
            let c = rest.strip_suffix(')').ok_or_else(err)?;
            return match c {
                "a" | "b" | "c" => Ok(TypeCode::T2(c.chars().next().expect("one char"))),
                _ => Err(err()),
            };
        }
        if let Some(n) = s.strip_prefix("DD") {
            return n.parse().map(TypeCode::DD).map_err(|_| err());
        }
        if let Some(n) = s.strip_prefix('D') {
            return n.parse().map(TypeCode::D).map_err(|_| err());
        }
        Err(err())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Classification {
    pub perfection: Perfection,
    pub structure: Structure,
    pub shape: Shape,
    pub type_code: Option<TypeCode>,
}

impl Classification {
    /// Short flag string such as `CPSS`, `SISR` or `SPSR`.
    pub fn flags(&self) -> String {
        let s = match self.structure {
            Structure::Simple => 'S',
            Structure::Compound => 'C',
        };
        let p = match self.perfection {
            Perfection::Perfect => 'P',
            Perfection::Imperfect => 'I',
        };
        let sh = match self.shape {
            Shape::Square => "SS",
            Shape::Oblong => "SR",
        };
        format!("{s}{p}{sh}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("dissection is not a valid tiling")]
pub struct InvalidTiling;

pub fn classify(d: &Dissection) -> Result<Classification, InvalidTiling> {
    if !d.validate().ok() {
        return Err(InvalidTiling);
    }
    let regions = find_subrectangles(d);
    let perfection = if d.is_perfect() { Perfection::Perfect } else { Perfection::Imperfect };
    let structure = if regions.is_empty() { Structure::Simple } else { Structure::Compound };
    let shape = if d.is_square() { Shape::Square } else { Shape::Oblong };
    let type_code = match (structure, shape) {
        (Structure::Compound, Shape::Square) => type_code(d, &regions),
        _ => None,
    };
    Ok(Classification { perfection, structure, shape, type_code })
}

fn disjoint(a: &SubrectangleRegion, b: &SubrectangleRegion) -> bool {
    a.x + a.w <= b.x || b.x + b.w <= a.x || a.y + a.h <= b.y || b.y + b.h <= a.y
}

/// `r` is a smaller subrectangle plus exactly one element.
fn trivially_compound(r: &SubrectangleRegion, regions: &[SubrectangleRegion]) -> bool {
    regions.iter().any(|s| s.members.len() + 1 == r.members.len() && r.contains_region(s))
}

fn type_code(d: &Dissection, regions: &[SubrectangleRegion]) -> Option<TypeCode> {
    let n = d.order();
    // Two complementary rectangles make up the whole square.
    for (i, a) in regions.iter().enumerate() {
        for b in &regions[i + 1..] {
            if disjoint(a, b) && a.members.len() + b.members.len() == n {
                let trivial = [a, b].iter().filter(|r| trivially_compound(r, regions)).count();
                return Some(TypeCode::T2((b'a' + trivial as u8) as char));
            }
        }
    }
    let maximal: Vec<&SubrectangleRegion> = regions.iter().filter(|r| r.maximal).collect();
    match maximal.as_slice() {
        [r] => Some(TypeCode::D(n - r.members.len())),
        [a, b] if disjoint(a, b) => Some(TypeCode::DD(n - a.members.len() - b.members.len())),
        _ => None,
    }
}
