//! Catalog records: one dissection per line with optional metadata.
//!
//! A record is either a tablecode (`order width height sizes...`) or a
//! Bouwkampcode with an optional `order width height` prefix, optionally
//! followed by `# key=value ...`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::canon::{canonicalize, enumerate_isomers, CanonError};
use crate::classify::{classify, Classification, Structure, TypeCode};
use crate::code::{parse_bouwkampcode, place_elements, BouwkampCode, Extended, PlacementError, SyntaxError, TablecodeLine};
use crate::dissection::Dissection;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordBody {
    Bouwkamp(BouwkampCode),
    Tablecode(TablecodeLine),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub body: RecordBody,
    pub meta: Extended,
}

impl Record {
    pub fn place(&self) -> Result<Dissection, PlacementError> {
        match &self.body {
            RecordBody::Bouwkamp(c) => place_elements(c),
            RecordBody::Tablecode(t) => t.place(),
        }
    }
}

/// Parses one non-empty record line.
pub fn parse_record(line: &str) -> Result<Record, SyntaxError> {
    if line.split('#').next().unwrap_or("").contains('(') {
        let code = parse_bouwkampcode(line)?;
        let meta = code.extended.clone();
        return Ok(Record { body: RecordBody::Bouwkamp(code), meta });
    }
    let (body, comment) = match line.find('#') {
        Some(i) => (&line[..i], Some(&line[i + 1..])),
        None => (line, None),
    };
    let table = TablecodeLine::parse(body)?;
    let mut meta = Extended { order: Some(table.order), width: Some(table.width), height: Some(table.height), ..Default::default() };
    if let Some(c) = comment {
        for token in c.split_whitespace() {
            let (k, v) = token.split_once('=').ok_or_else(|| SyntaxError {
                position: body.len() + 1 + c.find(token).unwrap_or(0),
                message: format!("metadata token {token:?} is not key=value"),
            })?;
            meta.set(k, v);
        }
    }
    Ok(Record { body: RecordBody::Tablecode(table), meta })
}

/// Lines that carry records: blank lines and `#` comment lines are skipped.
pub fn record_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub tablecode: TablecodeLine,
    pub id: Option<String>,
    pub isomer_count: usize,
    pub classification: Classification,
    /// Free-form metadata such as discoverer and years.
    pub provenance: Vec<(String, String)>,
}

#[derive(Debug, Error)]
pub enum EntryError {
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error("dissection is not a valid tiling")]
    InvalidTiling,
}

impl CatalogEntry {
    /// Canonical entry for a dissection, with isomer count and class.
    pub fn from_dissection(d: &Dissection) -> Result<CatalogEntry, EntryError> {
        let classification = classify(d).map_err(|_| EntryError::InvalidTiling)?;
        let isomer_count = enumerate_isomers(d)?.len();
        let tablecode = canonicalize(d)?.tablecode;
        Ok(CatalogEntry { tablecode, id: None, isomer_count, classification, provenance: Vec::new() })
    }

    /// Catalog order: by size, then by tablecode.
    pub fn sort_key(&self) -> (u64, u64, Vec<u64>) {
        (self.tablecode.width.max(self.tablecode.height), self.tablecode.width.min(self.tablecode.height), self.tablecode.key())
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} #", self.tablecode)?;
        if let Some(id) = &self.id {
            write!(f, " id={id}")?;
        }
        write!(f, " isomers={}", self.isomer_count)?;
        if let Some(t) = self.classification.type_code {
            write!(f, " type={t}")?;
        }
        write!(f, " class={}", self.classification.flags())?;
        for (k, v) in &self.provenance {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Letter suffix for the `i`-th entry of one size: a..z, aa, ab, ...
fn letters(mut i: usize, upper: bool) -> String {
    let base = if upper { b'A' } else { b'a' };
    let mut out = Vec::new();
    loop {
        out.push(base + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// Assigns IDs: side length plus a letter, lowercase for compound and
/// uppercase for simple; within one size the numerically lower tablecode
/// gets the earlier letter. Oblong entries get `WxH` prefixes.
pub fn assign_ids(entries: &mut [CatalogEntry]) {
    let mut groups: BTreeMap<(u64, u64, bool), Vec<usize>> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        let simple = e.classification.structure == Structure::Simple;
        groups.entry((e.tablecode.width, e.tablecode.height, simple)).or_default().push(i);
    }
    for ((w, h, simple), mut idx) in groups {
        idx.sort_by(|&a, &b| entries[a].tablecode.key().cmp(&entries[b].tablecode.key()));
        for (k, i) in idx.into_iter().enumerate() {
            let size = if w == h { w.to_string() } else { format!("{w}x{h}") };
            entries[i].id = Some(format!("{size}{}", letters(k, simple)));
        }
    }
}

/// Declared fields of a record checked against recomputed values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordCheck {
    pub entry: CatalogEntry,
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl RecordCheck {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Places, validates, classifies and canonicalizes one record.
pub fn check_record(record: &Record) -> Result<RecordCheck, String> {
    let d = record.place().map_err(|e| format!("placement failed: {e}"))?;
    let report = d.validate();
    if !report.ok() {
        let list: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(format!("invalid tiling: {}", list.join("; ")));
    }
    let entry = CatalogEntry::from_dissection(&d).map_err(|e| e.to_string())?;
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    let m = &record.meta;
    if let Some(o) = m.order {
        if o != d.order() {
            errors.push(format!("order {o} declared, {} found", d.order()));
        }
    }
    if let (Some(w), Some(h)) = (m.width, m.height) {
        if (w, h) != (d.width(), d.height()) {
            errors.push(format!("size {w}x{h} declared, {}x{} found", d.width(), d.height()));
        }
    }
    if let Some(n) = m.isomer_count {
        if n != entry.isomer_count {
            errors.push(format!("{n} isomers declared, {} found", entry.isomer_count));
        }
    }
    if let Some(t) = &m.type_code {
        let found = entry.classification.type_code;
        match t.parse::<TypeCode>() {
            Ok(t) if Some(t) == found => {}
            Ok(_) | Err(_) => {
                let shown = found.map_or("none".to_string(), |x| x.to_string());
                errors.push(format!("type {t} declared, {shown} found"));
            }
        }
    }
    if let Some(id) = &m.id {
        let size = d.width().to_string();
        let letter_ok = match entry.classification.structure {
            Structure::Compound => id.chars().last().is_some_and(|c| c.is_ascii_lowercase()),
            Structure::Simple => id.chars().last().is_some_and(|c| c.is_ascii_uppercase()),
        };
        if !id.starts_with(&size) || !letter_ok {
            warnings.push(format!("id {id} does not follow the size-letter convention"));
        }
    }
    let listed = TablecodeLine::of(&d);
    if listed != entry.tablecode {
        warnings.push("listed orientation is not the canonical representative".to_string());
    }
    Ok(RecordCheck { entry, errors, warnings })
}
