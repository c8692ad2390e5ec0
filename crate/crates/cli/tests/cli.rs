use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use squaring::fixtures::{nine_square_cnet, APPENDIX};
use squaring::{network_of, parse_record, record_lines, write_planar_code, PlanarEmbedding};
use tempfile::TempDir;

fn squaring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squaring")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_graphs(dir: &Path, name: &str, graphs: &[PlanarEmbedding]) -> PathBuf {
    let mut bytes = Vec::new();
    write_planar_code(&mut bytes, graphs).unwrap();
    let path = dir.join(name);
    fs::write(&path, bytes).unwrap();
    path
}

fn corpus_networks() -> Vec<PlanarEmbedding> {
    record_lines(APPENDIX).map(|(_, l)| network_of(&parse_record(l).unwrap().place().unwrap()).unwrap().0).collect()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_lists_the_three_rectangles() {
    let dir = TempDir::new().unwrap();
    let f = write_graphs(dir.path(), "g.pc", &[nine_square_cnet()]);
    let o = squaring(&["solve", p(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    for want in ["33x32 class=SPSR", "69x61 class=SPSR", "15x11 class=SISR"] {
        assert!(out.contains(want), "{want} missing from\n{out}");
    }
    assert!(out.contains("complexity=130"));
    assert!(out.ends_with("# graphs=1\n"));
}

#[test]
fn solve_reads_an_embedding_argument() {
    let o = squaring(&["solve", "--embedding", "2 3 4; 1 4 3; 1 2 4; 1 3 2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("complexity=16"));
}

#[test]
fn empty_input_is_not_an_error() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("empty.pc");
    fs::write(&f, b"").unwrap();
    let o = squaring(&["solve", p(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("# graphs=0"));
    let o = squaring(&["enumerate", p(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn truncated_input_fails_with_byte_offset() {
    let dir = TempDir::new().unwrap();
    let f = write_graphs(dir.path(), "g.pc", &[nine_square_cnet()]);
    let bytes = fs::read(&f).unwrap();
    fs::write(&f, &bytes[..bytes.len() - 5]).unwrap();
    for cmd in ["solve", "enumerate"] {
        let o = squaring(&[cmd, p(&f)]);
        assert_eq!(o.status.code(), Some(2), "{cmd}");
        assert!(stderr(&o).contains("byte"), "{}", stderr(&o));
    }
}

#[test]
fn order_mismatch_exits_3() {
    let dir = TempDir::new().unwrap();
    let f = write_graphs(dir.path(), "g.pc", &[nine_square_cnet()]);
    let o = squaring(&["enumerate", p(&f), "--order", "21"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("order 21 needs 22"), "{}", stderr(&o));
    let o = squaring(&["enumerate", p(&f), "--order", "21", "--no-check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn enumerate_is_deterministic_and_resumable() {
    let dir = TempDir::new().unwrap();
    let nets = corpus_networks();
    let (a, b) = nets.split_at(100);
    let fa = write_graphs(dir.path(), "a.pc", a);
    let fb = write_graphs(dir.path(), "b.pc", b);
    let run = |jobs: &str, batch: &str, out: &str| {
        let out = dir.path().join(out);
        let o = squaring(&["enumerate", p(&fa), p(&fb), "--jobs", jobs, "--batch", batch, "-o", p(&out)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stderr(&o).contains("distinct_after_dedup"));
        fs::read_to_string(out).unwrap()
    };
    let one = run("1", "4096", "one.txt");
    assert_eq!(one.lines().count(), 208);
    assert_eq!(run("4", "7", "four.txt"), one);

    // A checkpoint saved part way through the second file picks up where it stopped.
    let out = dir.path().join("resumed.txt");
    let ckpt = dir.path().join("resumed.txt.ckpt");
    let part = write_graphs(dir.path(), "b.pc", &b[..30]);
    let o = squaring(&["enumerate", p(&fa), p(&part), "--batch", "16", "-o", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(fs::read_to_string(&ckpt).unwrap().contains(&format!("input 1 30 {}", p(&part))));
    write_graphs(dir.path(), "b.pc", b);
    let o = squaring(&["enumerate", p(&fa), p(&fb), "--batch", "16", "-o", p(&out), "--resume"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&out).unwrap(), one);
    assert!(fs::read_to_string(&ckpt).unwrap().contains(&format!("input 1 {} {}", b.len(), p(&fb))));

    // The catalog is its own fixed point under validation and canonicalization.
    let o = squaring(&["validate", p(&out)]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("# records=208 failed=0 warnings=0"), "{}", stdout(&o));
    let stats = squaring(&["stats", p(&out), "--kv"]);
    assert!(stats.status.success());
    let text = stdout(&stats);
    let isomers: Vec<&str> = text.lines().filter_map(|l| l.split(' ').nth(2)).collect();
    assert_eq!(isomers, ["isomers=4", "isomers=12", "isomers=100", "isomers=220", "isomers=948"]);
}

#[test]
fn validate_appendix_and_a_perturbed_code() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("appendix.txt");
    fs::write(&f, APPENDIX).unwrap();
    let o = squaring(&["validate", p(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("# records=208 failed=0 warnings=5"), "{}", stdout(&o));

    let first = record_lines(APPENDIX).next().unwrap().1;
    let bad = first.replacen("(81,56,38)", "(81,56,39)", 1);
    assert_ne!(bad, first);
    fs::write(&f, format!("{bad}\n")).unwrap();
    let o = squaring(&["validate", p(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("line 1: FAIL"), "{}", stdout(&o));
}

#[test]
fn canon_and_isomers() {
    let code = "(81,56,38)(18,20)(55,16,3)(1,5,14)(4)(9)(39)(51,30)(29,31,64)(43,8)(35,2)(33)";
    let o = squaring(&["canon", code]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "24 175 175 81 56 38 18 20 55 16 3 1 5 14 4 9 39 51 30 29 31 64 43 8 35 2 33");
    let o = squaring(&["isomers", code]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = squaring(&["canon", "(1,2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn render_is_well_formed_svg() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("175a.svg");
    let code = "(81,56,38)(18,20)(55,16,3)(1,5,14)(4)(9)(39)(51,30)(29,31,64)(43,8)(35,2)(33)";
    let o = squaring(&["render", code, "-o", p(&f), "--svg-scale", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&f).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let rects = doc.descendants().filter(|n| n.has_tag_name("rect")).count();
    assert_eq!(rects, 24 + 1);
    let labels = doc.descendants().filter(|n| n.has_tag_name("text")).count();
    assert_eq!(labels, 24);
}
