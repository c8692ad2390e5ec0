//! Placed square dissections of a rectangle and their symmetries.
//!
//! Coordinates have their origin at the top-left corner with `y` growing
//! downwards, matching the top-to-bottom reading order of Bouwkampcode.

use std::fmt;

/// One square of a dissection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub x: u64,
    pub y: u64,
    pub size: u64,
}

impl Element {
    pub const fn new(x: u64, y: u64, size: u64) -> Self {
        Element { x, y, size }
    }

    pub fn right(&self) -> u64 {
        self.x + self.size
    }

    pub fn bottom(&self) -> u64 {
        self.y + self.size
    }

    pub fn area(&self) -> u64 {
        self.size * self.size
    }

    fn overlaps(&self, other: &Element) -> bool {
        self.x < other.right() && other.x < self.right() && self.y < other.bottom() && other.y < self.bottom()
    }
}

/// A rectangle together with the squares that tile it.
///
/// Construction does not validate; use [`Dissection::validate`] (or
/// [`validate_tiling`]) before relying on the tiling invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dissection {
    width: u64,
    height: u64,
    elements: Vec<Element>,
}

impl Dissection {
    pub fn new(width: u64, height: u64, elements: Vec<Element>) -> Self {
        Dissection { width, height, elements }
    }

    pub fn width(&self) -> u64 {
        self.width
    }

    pub fn height(&self) -> u64 {
        self.height
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Element> {
        self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_square(&self) -> bool {
        self.width == self.height
    }

    /// Element sizes in stored order.
    pub fn sizes(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.iter().map(|e| e.size)
    }

    /// Sorted multiset of element sizes.
    pub fn size_multiset(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.sizes().collect();
        v.sort_unstable();
        v
    }

    pub fn is_perfect(&self) -> bool {
        self.size_multiset().windows(2).all(|w| w[0] != w[1])
    }

    /// Copy with elements sorted in reading order: by `y`, then `x`.
    pub fn reading_order(&self) -> Dissection {
        let mut elements = self.elements.clone();
        elements.sort_unstable_by_key(|e| (e.y, e.x));
        Dissection { width: self.width, height: self.height, elements }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_tiling(self)
    }

    pub fn transform(&self, sym: Symmetry) -> Dissection {
        let (width, height) = sym.dims(self.width, self.height);
        let elements = self.elements.iter().map(|e| sym.apply(e, self.width, self.height)).collect();
        Dissection { width, height, elements }
    }
}

impl fmt::Display for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} [", self.width, self.height)?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}@({},{})", e.size, e.x, e.y)?;
        }
        f.write_str("]")
    }
}

/// A single broken tiling invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyRectangle,
    TooFewElements { count: usize },
    ZeroSize { index: usize },
    OutOfBounds { index: usize },
    Overlap { first: usize, second: usize },
    /// An uncovered region; `(x, y)` is a point strictly inside it.
    Gap { x: u64, y: u64 },
    AreaMismatch { elements: u128, rectangle: u128 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyRectangle => write!(f, "rectangle has zero width or height"),
            Violation::TooFewElements { count } => write!(f, "a dissection needs at least two elements, found {count}"),
            Violation::ZeroSize { index } => write!(f, "element {index} has size zero"),
            Violation::OutOfBounds { index } => write!(f, "element {index} extends outside the rectangle"),
            Violation::Overlap { first, second } => write!(f, "elements {first} and {second} overlap"),
            Violation::Gap { x, y } => write!(f, "uncovered area near ({x}, {y})"),
            Violation::AreaMismatch { elements, rectangle } => {
                write!(f, "element area {elements} differs from rectangle area {rectangle}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every tiling invariant and reports each violation found.
pub fn validate_tiling(d: &Dissection) -> ValidationReport {
    let mut violations = Vec::new();
    if d.width == 0 || d.height == 0 {
        violations.push(Violation::EmptyRectangle);
        return ValidationReport { violations };
    }
    if d.elements.len() < 2 {
        violations.push(Violation::TooFewElements { count: d.elements.len() });
    }
    for (index, e) in d.elements.iter().enumerate() {
        if e.size == 0 {
            violations.push(Violation::ZeroSize { index });
        } else if e.right() > d.width || e.bottom() > d.height {
            violations.push(Violation::OutOfBounds { index });
        }
    }
    for i in 0..d.elements.len() {
        for j in i + 1..d.elements.len() {
            let (a, b) = (&d.elements[i], &d.elements[j]);
            if a.size > 0 && b.size > 0 && a.overlaps(b) {
                violations.push(Violation::Overlap { first: i, second: j });
            }
        }
    }
    let element_area: u128 = d.elements.iter().map(|e| e.area() as u128).sum();
    let rect_area = d.width as u128 * d.height as u128;
    if element_area != rect_area {
        violations.push(Violation::AreaMismatch { elements: element_area, rectangle: rect_area });
    }
    if let Some((x, y)) = first_gap(d) {
        violations.push(Violation::Gap { x, y });
    }
    ValidationReport { violations }
}

/// Sweeps the grid induced by element edges and returns a point inside the
/// first uncovered cell, if any.
fn first_gap(d: &Dissection) -> Option<(u64, u64)> {
    let clip = |v: u64, max: u64| v.min(max);
    let mut xs = vec![0, d.width];
    let mut ys = vec![0, d.height];
    for e in &d.elements {
        xs.extend([clip(e.x, d.width), clip(e.right(), d.width)]);
        ys.extend([clip(e.y, d.height), clip(e.bottom(), d.height)]);
    }
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    for yw in ys.windows(2) {
        // Elements crossing this horizontal band, sorted by left edge.
        let mut spans: Vec<(u64, u64)> = d
            .elements
            .iter()
            .filter(|e| e.size > 0 && e.y <= yw[0] && e.bottom() >= yw[1])
            .map(|e| (e.x, e.right()))
            .collect();
        spans.sort_unstable();
        let mut covered = 0;
        for (l, r) in spans {
            if l > covered {
                return Some((covered, yw[0]));
            }
            covered = covered.max(r);
        }
        if covered < d.width {
            return Some((covered, yw[0]));
        }
    }
    let _ = xs;
    None
}

/// One of the eight symmetries of a rectangle's bounding square.
///
/// Applied as: optional horizontal mirror, optional vertical mirror, then an
/// optional transpose (swap of the axes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    pub flip_x: bool,
    pub flip_y: bool,
    pub transpose: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { flip_x: false, flip_y: false, transpose: false };
    /// Quarter turn clockwise (with `y` pointing down).
    pub const ROTATE_90: Symmetry = Symmetry { flip_x: false, flip_y: true, transpose: true };
    pub const ROTATE_180: Symmetry = Symmetry { flip_x: true, flip_y: true, transpose: false };
    pub const ROTATE_270: Symmetry = Symmetry { flip_x: true, flip_y: false, transpose: true };
    pub const MIRROR_X: Symmetry = Symmetry { flip_x: true, flip_y: false, transpose: false };
    pub const MIRROR_Y: Symmetry = Symmetry { flip_x: false, flip_y: true, transpose: false };
    pub const TRANSPOSE: Symmetry = Symmetry { flip_x: false, flip_y: false, transpose: true };
    pub const ANTI_TRANSPOSE: Symmetry = Symmetry { flip_x: true, flip_y: true, transpose: true };

    pub const ALL: [Symmetry; 8] = [
        Symmetry::IDENTITY,
        Symmetry::ROTATE_90,
        Symmetry::ROTATE_180,
        Symmetry::ROTATE_270,
        Symmetry::MIRROR_X,
        Symmetry::MIRROR_Y,
        Symmetry::TRANSPOSE,
        Symmetry::ANTI_TRANSPOSE,
    ];

    /// The four symmetries that keep an oblong slot's orientation.
    pub const OBLONG: [Symmetry; 4] =
        [Symmetry::IDENTITY, Symmetry::ROTATE_180, Symmetry::MIRROR_X, Symmetry::MIRROR_Y];

    pub fn dims(self, width: u64, height: u64) -> (u64, u64) {
        if self.transpose {
            (height, width)
        } else {
            (width, height)
        }
    }

    pub fn apply(self, e: &Element, width: u64, height: u64) -> Element {
        let x = if self.flip_x { width - e.x - e.size } else { e.x };
        let y = if self.flip_y { height - e.y - e.size } else { e.y };
        if self.transpose {
            Element { x: y, y: x, size: e.size }
        } else {
            Element { x, y, size: e.size }
        }
    }

    /// `self.then(next)` applies `self` first, then `next`.
    pub fn then(self, next: Symmetry) -> Symmetry {
        if self.transpose {
            Symmetry {
                flip_x: self.flip_x ^ next.flip_y,
                flip_y: self.flip_y ^ next.flip_x,
                transpose: !next.transpose,
            }
        } else {
            Symmetry {
                flip_x: self.flip_x ^ next.flip_x,
                flip_y: self.flip_y ^ next.flip_y,
                transpose: next.transpose,
            }
        }
    }

    pub fn inverse(self) -> Symmetry {
        *Symmetry::ALL.iter().find(|s| self.then(**s) == Symmetry::IDENTITY).expect("group closure")
    }

    pub fn name(self) -> &'static str {
        match (self.flip_x, self.flip_y, self.transpose) {
            (false, false, false) => "identity",
            (false, true, true) => "rot90",
            (true, true, false) => "rot180",
            (true, false, true) => "rot270",
            (true, false, false) => "mirror-x",
            (false, true, false) => "mirror-y",
            (false, false, true) => "transpose",
            (true, true, true) => "anti-transpose",
        }
    }
}
