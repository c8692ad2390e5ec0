//! Resumable enumeration state: graphs done per input file plus the partial
//! tally, as plain text.

use std::fmt::Write as _;
use std::time::Duration;

use squaring::pipeline::Found;
use squaring::{Tally, TablecodeLine};

const MAGIC: &str = "# squaring checkpoint v1";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Checkpoint {
    /// Input path and the number of graphs already consumed from it.
    pub inputs: Vec<(String, u64)>,
    pub tally: Tally,
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let mut out = format!("{MAGIC}\n");
        for (i, (path, done)) in self.inputs.iter().enumerate() {
            let _ = writeln!(out, "input {i} {done} {path}");
        }
        let s = &self.tally.stats;
        for (k, v) in s.fields() {
            let _ = writeln!(out, "stat {k} {v}");
        }
        for f in self.tally.found.values() {
            let (file, graph, branch) = f.first;
            let _ = writeln!(out, "found {file} {graph} {branch} {} {}", f.occurrences, f.tablecode);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Checkpoint, String> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l == MAGIC => {}
            _ => return Err("not a checkpoint file".into()),
        }
        let mut cp = Checkpoint::default();
        for (n, line) in lines {
            let bad = |m: &str| format!("line {}: {m}", n + 1);
            let mut parts = line.splitn(2, ' ');
            let tag = parts.next().unwrap_or("");
            let rest = parts.next().unwrap_or("");
            match tag {
                "input" => {
                    let f: Vec<&str> = rest.splitn(3, ' ').collect();
                    if f.len() != 3 || f[0].parse::<usize>().ok() != Some(cp.inputs.len()) {
                        return Err(bad("malformed input line"));
                    }
                    let done = f[1].parse().map_err(|_| bad("bad graph count"))?;
                    cp.inputs.push((f[2].to_string(), done));
                }
                "stat" => {
                    let (k, v) = rest.split_once(' ').ok_or_else(|| bad("malformed stat line"))?;
                    let v: u64 = v.parse().map_err(|_| bad("bad stat value"))?;
                    let s = &mut cp.tally.stats;
                    match k {
                        "graphs_processed" => s.graphs_processed = v,
                        "graphs_filtered" => s.graphs_filtered = v,
                        "rows_solved" => s.rows_solved = v,
                        "crossed_rows" => s.crossed_rows = v,
                        "squares_found" => s.squares_found = v,
                        "perfect_squares" => s.perfect_squares = v,
                        "compound_perfect" => s.compound_perfect = v,
                        "distinct_after_dedup" => s.distinct_after_dedup = v,
                        "elapsed_ms" => s.elapsed = Duration::from_millis(v),
                        _ => return Err(bad("unknown stat")),
                    }
                }
                "found" => {
                    let f: Vec<&str> = rest.splitn(5, ' ').collect();
                    if f.len() != 5 {
                        return Err(bad("malformed found line"));
                    }
                    let num = |s: &str| s.parse::<u64>().map_err(|_| bad("bad number"));
                    let first = (num(f[0])? as usize, num(f[1])?, num(f[2])? as usize);
                    let occurrences = num(f[3])?;
                    let tablecode = TablecodeLine::parse(f[4]).map_err(|e| bad(&e.to_string()))?;
                    cp.tally.record(tablecode.key(), Found { tablecode, first, occurrences });
                }
                "" => {}
                _ => return Err(bad("unknown record")),
            }
        }
        cp.tally.stats.distinct_after_dedup = cp.tally.found.len() as u64;
        Ok(cp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut cp = Checkpoint { inputs: vec![("a b.pc".into(), 7), ("c.pc".into(), 0)], ..Default::default() };
        cp.tally.stats.graphs_processed = 7;
        cp.tally.stats.elapsed = Duration::from_millis(1500);
        let t = TablecodeLine::parse("2 2 1 1 1").unwrap();
        cp.tally.record(t.key(), Found { tablecode: t, first: (0, 3, 1), occurrences: 2 });
        cp.tally.stats.distinct_after_dedup = 1;
        let back = Checkpoint::parse(&cp.to_text()).unwrap();
        assert_eq!(back, cp);
    }

    #[test]
    fn rejects_foreign_text() {
        assert!(Checkpoint::parse("hello").is_err());
        assert!(Checkpoint::parse(&format!("{MAGIC}\nbogus 1")).is_err());
    }
}
