//! Bouwkampcode and tablecode: parsing, placement and emission.

use std::fmt;

use thiserror::Error;

use crate::dissection::{Dissection, Element, Symmetry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

impl SyntaxError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        SyntaxError { position, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlacementError {
    #[error("code has no elements")]
    Empty,
    #[error("element {index} (size {size}) does not fit the segment at x={x}, y={y}")]
    DoesNotFit { index: usize, size: u64, x: u64, y: u64 },
    #[error("element {index} (size {size}) exceeds the rectangle height {height}")]
    TooTall { index: usize, size: u64, height: u64 },
    #[error("group {group} overruns its segment at x={x}, y={y}")]
    GroupOverrun { group: usize, x: u64, y: u64 },
    #[error("first group spans {found}, not the declared width {width}")]
    WidthMismatch { width: u64, found: u64 },
    #[error("placement left an uneven top edge (gap at x={x})")]
    Gap { x: u64 },
    #[error("placement finished at height {found}, expected {height}")]
    HeightMismatch { height: u64, found: u64 },
    #[error("declared order {declared} but the code has {found} elements")]
    OrderMismatch { declared: usize, found: usize },
}

/// Optional fields that may accompany a code in extended or catalog form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extended {
    pub order: Option<usize>,
    pub width: Option<u64>,
    pub height: Option<u64>,
    pub id: Option<String>,
    pub isomer_count: Option<usize>,
    pub type_code: Option<String>,
    pub discoverer: Option<String>,
    pub years: Option<String>,
    /// Unrecognized `key=value` pairs, kept in input order.
    pub extra: Vec<(String, String)>,
}

impl Extended {
    pub fn is_empty(&self) -> bool {
        *self == Extended::default()
    }

    pub(crate) fn set(&mut self, key: &str, value: &str) {
        match key {
            "id" => self.id = Some(value.to_string()),
            "isomers" => match value.parse() {
                Ok(n) => self.isomer_count = Some(n),
                Err(_) => self.extra.push((key.to_string(), value.to_string())),
            },
            "type" => self.type_code = Some(value.to_string()),
            "discoverer" => self.discoverer = Some(value.to_string()),
            "years" | "year" => self.years = Some(value.to_string()),
            _ => self.extra.push((key.to_string(), value.to_string())),
        }
    }

    /// The metadata part as `key=value` pairs (dimensions excluded).
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        if let Some(v) = &self.id {
            out.push(("id".to_string(), v.clone()));
        }
        if let Some(v) = self.isomer_count {
            out.push(("isomers".to_string(), v.to_string()));
        }
        if let Some(v) = &self.type_code {
            out.push(("type".to_string(), v.clone()));
        }
        if let Some(v) = &self.discoverer {
            out.push(("discoverer".to_string(), v.clone()));
        }
        if let Some(v) = &self.years {
            out.push(("years".to_string(), v.clone()));
        }
        out.extend(self.extra.iter().cloned());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BouwkampCode {
    pub groups: Vec<Vec<u64>>,
    pub extended: Extended,
}

impl BouwkampCode {
    pub fn new(groups: Vec<Vec<u64>>) -> Self {
        BouwkampCode { groups, extended: Extended::default() }
    }

    pub fn order(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> impl Iterator<Item = u64> + '_ {
        self.groups.iter().flatten().copied()
    }
}

impl fmt::Display for BouwkampCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.groups {
            f.write_str("(")?;
            for (i, s) in g.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{s}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            return Err(SyntaxError::new(start, "sizes must be positive integers"));
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.bytes.get(self.pos) {
                None => SyntaxError::new(start, "unexpected end of input, expected a number"),
                Some(c) => SyntaxError::new(start, format!("expected a number, found {:?}", *c as char)),
            });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let value: u64 = text.parse().map_err(|_| SyntaxError::new(start, "number too large"))?;
        if value == 0 {
            return Err(SyntaxError::new(start, "sizes must be positive integers"));
        }
        Ok(value)
    }
}

/// Parses a Bouwkampcode, optionally preceded by `order width height`.
///
/// Anything after a `#` is read as `key=value` metadata.
pub fn parse_bouwkampcode(text: &str) -> Result<BouwkampCode, SyntaxError> {
    let (body, meta) = split_comment(text);
    let mut lx = Lexer { bytes: body.as_bytes(), pos: 0 };
    let mut prefix = Vec::new();
    while let Some(c) = lx.peek() {
        if c == b'(' {
            break;
        }
        prefix.push(lx.number()?);
    }
    if lx.peek().is_none() {
        return Err(SyntaxError::new(lx.pos, "expected '('"));
    }
    let mut extended = Extended::default();
    match prefix.as_slice() {
        [] => {}
        [o, w, h] => {
            extended.order = Some(*o as usize);
            extended.width = Some(*w);
            extended.height = Some(*h);
        }
        _ => return Err(SyntaxError::new(0, "prefix must be exactly: order width height")),
    }
    let mut groups = Vec::new();
    while let Some(c) = lx.peek() {
        if c != b'(' {
            return Err(SyntaxError::new(lx.pos, format!("expected '(', found {:?}", c as char)));
        }
        let open = lx.pos;
        lx.pos += 1;
        if lx.peek() == Some(b')') {
            return Err(SyntaxError::new(open, "empty group"));
        }
        let mut group = Vec::new();
        loop {
            group.push(lx.number()?);
            match lx.peek() {
                Some(b',') => lx.pos += 1,
                Some(b')') => {
                    lx.pos += 1;
                    break;
                }
                None => return Err(SyntaxError::new(lx.pos, "unexpected end of input, unbalanced '('")),
                Some(c) => {
                    return Err(SyntaxError::new(lx.pos, format!("expected ',' or ')', found {:?}", c as char)))
                }
            }
        }
        groups.push(group);
    }
    parse_metadata(meta, body.len(), &mut extended)?;
    Ok(BouwkampCode { groups, extended })
}

fn split_comment(text: &str) -> (&str, Option<&str>) {
    match text.find('#') {
        Some(i) => (&text[..i], Some(&text[i + 1..])),
        None => (text, None),
    }
}

fn parse_metadata(meta: Option<&str>, offset: usize, ext: &mut Extended) -> Result<(), SyntaxError> {
    let Some(meta) = meta else { return Ok(()) };
    for token in meta.split_whitespace() {
        let Some((k, v)) = token.split_once('=') else {
            let at = offset + 1 + meta.find(token).unwrap_or(0);
            return Err(SyntaxError::new(at, format!("metadata token {token:?} is not key=value")));
        };
        ext.set(k, v);
    }
    Ok(())
}

/// Tablecode: `order width height` followed by the sizes in reading order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TablecodeLine {
    pub order: usize,
    pub width: u64,
    pub height: u64,
    pub sizes: Vec<u64>,
}

impl TablecodeLine {
    pub fn parse(text: &str) -> Result<TablecodeLine, SyntaxError> {
        let mut lx = Lexer { bytes: text.as_bytes(), pos: 0 };
        let mut fields = Vec::new();
        while lx.peek().is_some() {
            fields.push(lx.number()?);
        }
        if fields.len() < 3 {
            return Err(SyntaxError::new(text.len(), "tablecode needs order, width and height"));
        }
        let order = fields[0] as usize;
        if fields.len() - 3 != order {
            return Err(SyntaxError::new(
                text.len(),
                format!("order field says {order} but {} sizes follow", fields.len() - 3),
            ));
        }
        Ok(TablecodeLine { order, width: fields[1], height: fields[2], sizes: fields[3..].to_vec() })
    }

    pub fn of(d: &Dissection) -> TablecodeLine {
        let r = d.reading_order();
        TablecodeLine { order: r.order(), width: r.width(), height: r.height(), sizes: r.sizes().collect() }
    }

    pub fn place(&self) -> Result<Dissection, PlacementError> {
        let groups: Vec<Vec<u64>> = self.sizes.iter().map(|&s| vec![s]).collect();
        place_groups(&groups, Some(self.width), Some(self.height))
    }

    /// All fields as one vector; lexicographic order on it matches the
    /// zero-padded string order for equal-length codes.
    pub fn key(&self) -> Vec<u64> {
        let mut k = Vec::with_capacity(self.sizes.len() + 3);
        k.extend([self.order as u64, self.width, self.height]);
        k.extend_from_slice(&self.sizes);
        k
    }

    /// Zero-padded concatenation with every field `digits` wide.
    pub fn padded(&self, digits: usize) -> String {
        let mut s = String::new();
        for v in self.key() {
            s.push_str(&format!("{v:0digits$}"));
        }
        s
    }
}

impl fmt::Display for TablecodeLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.order, self.width, self.height)?;
        for s in &self.sizes {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

pub fn to_tablecode(d: &Dissection) -> TablecodeLine {
    TablecodeLine::of(d)
}

/// Places a parsed code. Declared dimensions are enforced when present.
pub fn place_elements(code: &BouwkampCode) -> Result<Dissection, PlacementError> {
    if let Some(order) = code.extended.order {
        if order != code.order() {
            return Err(PlacementError::OrderMismatch { declared: order, found: code.order() });
        }
    }
    place_groups(&code.groups, code.extended.width, code.extended.height)
}

/// A maximal run of the skyline at one height.
#[derive(Debug, Clone, Copy)]
struct Segment {
    x: u64,
    width: u64,
    y: u64,
}

fn place_groups(groups: &[Vec<u64>], width: Option<u64>, height: Option<u64>) -> Result<Dissection, PlacementError> {
    let first: u64 = groups.first().map(|g| g.iter().sum()).ok_or(PlacementError::Empty)?;
    let width = match width {
        Some(w) => w,
        None => first,
    };
    if first > width {
        return Err(PlacementError::WidthMismatch { width, found: first });
    }
    let mut sky = vec![Segment { x: 0, width, y: 0 }];
    let mut elements = Vec::with_capacity(groups.iter().map(Vec::len).sum());
    for (gi, group) in groups.iter().enumerate() {
        let si = lowest_segment(&sky);
        let seg = sky[si];
        let mut x = seg.x;
        let mut placed = Vec::with_capacity(group.len());
        for &size in group {
            let index = elements.len() + placed.len();
            if x + size > seg.x + seg.width {
                return Err(if placed.is_empty() {
                    PlacementError::DoesNotFit { index, size, x, y: seg.y }
                } else {
                    PlacementError::GroupOverrun { group: gi, x: seg.x, y: seg.y }
                });
            }
            if let Some(h) = height {
                if seg.y + size > h {
                    return Err(PlacementError::TooTall { index, size, height: h });
                }
            }
            placed.push(Element::new(x, seg.y, size));
            x += size;
        }
        let mut replacement: Vec<Segment> =
            placed.iter().map(|e| Segment { x: e.x, width: e.size, y: e.bottom() }).collect();
        if x < seg.x + seg.width {
            replacement.push(Segment { x, width: seg.x + seg.width - x, y: seg.y });
        }
        sky.splice(si..=si, replacement);
        merge_equal(&mut sky);
        elements.extend(placed);
    }
    if sky.len() != 1 {
        let x = sky[lowest_segment(&sky)].x;
        return Err(PlacementError::Gap { x });
    }
    let found = sky[0].y;
    if let Some(h) = height {
        if h != found {
            return Err(PlacementError::HeightMismatch { height: h, found });
        }
    }
    Ok(Dissection::new(width, found, elements))
}

fn lowest_segment(sky: &[Segment]) -> usize {
    let mut best = 0;
    for (i, s) in sky.iter().enumerate() {
        if s.y < sky[best].y {
            best = i;
        }
    }
    best
}

fn merge_equal(sky: &mut Vec<Segment>) {
    let mut out: Vec<Segment> = Vec::with_capacity(sky.len());
    for s in sky.drain(..) {
        match out.last_mut() {
            Some(last) if last.y == s.y => last.width += s.width,
            _ => out.push(s),
        }
    }
    *sky = out;
}

/// The Bouwkampcode of `d` as oriented, with abutting elements on a common
/// top edge gathered into one group.
pub fn emit_code(d: &Dissection) -> BouwkampCode {
    let r = d.reading_order();
    let mut groups: Vec<Vec<u64>> = Vec::new();
    let mut prev: Option<Element> = None;
    for e in r.elements() {
        match prev {
            Some(p) if p.y == e.y && p.right() == e.x => groups.last_mut().expect("open group").push(e.size),
            _ => groups.push(vec![e.size]),
        }
        prev = Some(*e);
    }
    BouwkampCode { groups, extended: Extended::default() }
}

/// One code per square symmetry, in the order of [`Symmetry::ALL`].
pub fn emit_all_codes(d: &Dissection) -> Vec<(Symmetry, String)> {
    Symmetry::ALL.iter().map(|&s| (s, emit_code(&d.transform(s)).to_string())).collect()
}
