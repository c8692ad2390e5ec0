//! `squaring`: solve planar graphs as electrical networks, enumerate and
//! catalog perfect squared squares, validate and render Bouwkampcodes.

mod checkpoint;

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use squaring::canon::enumerate_isomers;
use squaring::{
    assign_ids, canonicalize, check_record, emit_code, enumerate_batch, parse_record, read_planar_code, record_lines,
    render_svg, solve_graph, ClassFilter, Classification, Connectivity, Datum, Dissection, EnumerateOptions,
    PlanarEmbedding, Shape, Structure, SvgOptions, Tally, TablecodeLine,
};

use checkpoint::Checkpoint;

#[derive(Parser)]
#[command(name = "squaring", version, about = "Squared rectangles and perfect squared squares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tablecode,
    Bouwkamp,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Exactly2,
    Atleast2,
    Three,
}

#[derive(Subcommand)]
enum Command {
    /// List every battery-edge solution of each graph in planar_code files.
    Solve {
        /// planar_code files; `-` reads standard input.
        files: Vec<PathBuf>,
        /// A single embedding as 1-based clockwise neighbor lists, e.g. "2 3 4; 1 4 3; 1 2 4; 1 3 2".
        #[arg(long)]
        embedding: Option<String>,
        /// Grounded node: `last` or a 0-based node index.
        #[arg(long, default_value = "last")]
        datum: String,
        #[arg(long, value_enum, default_value = "tablecode")]
        format: Format,
    },
    /// Catalog the distinct perfect squared squares of planar_code files.
    Enumerate {
        files: Vec<PathBuf>,
        /// Required square order; graphs must have order + 1 edges.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value = "exactly2")]
        filter: FilterArg,
        #[arg(long, default_value_t = 3)]
        min_degree: usize,
        /// Also solve graphs whose parallel edges do not share a face.
        #[arg(long)]
        keep_separated_multi_edges: bool,
        #[arg(long, default_value = "last")]
        datum: String,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Catalog output path; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Checkpoint path; defaults to the output path with `.ckpt` appended.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from the checkpoint, skipping graphs already recorded.
        #[arg(long)]
        resume: bool,
        /// Graphs per parallel batch (and per checkpoint).
        #[arg(long, default_value_t = 4096)]
        batch: usize,
        /// Skip the edge-count check against --order.
        #[arg(long)]
        no_check: bool,
        /// Write run statistics as key=value lines to this path.
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "tablecode")]
        format: Format,
    },
    /// Check every record of a catalog or Bouwkampcode file.
    Validate { file: PathBuf },
    /// Canonical tablecode of each code given (or read from standard input).
    Canon {
        code: Option<String>,
        #[arg(long, value_enum, default_value = "tablecode")]
        format: Format,
    },
    /// All isomers of a code, each in its canonical orientation.
    Isomers {
        code: Option<String>,
        #[arg(long, value_enum, default_value = "tablecode")]
        format: Format,
    },
    /// Draw a code as SVG.
    Render {
        code: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 4.0)]
        svg_scale: f64,
        #[arg(long, default_value_t = 1.0)]
        stroke: f64,
        #[arg(long)]
        font_size: Option<f64>,
    },
    /// Per-order counts of a catalog file.
    Stats {
        file: PathBuf,
        /// key=value lines instead of a table.
        #[arg(long)]
        kv: bool,
    },
}

/// A failure with its exit status.
struct Fail(u8, String);

impl Fail {
    fn io(path: &Path, e: io::Error) -> Fail {
        Fail(2, format!("{}: {e}", path.display()))
    }
}

type Run = Result<ExitCode, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { files, embedding, datum, format } => solve(&files, embedding.as_deref(), &datum, format),
        Command::Enumerate {
            files,
            order,
            filter,
            min_degree,
            keep_separated_multi_edges,
            datum,
            jobs,
            output,
            checkpoint,
            resume,
            batch,
            no_check,
            stats,
            format,
        } => {
            let connectivity = match filter {
                FilterArg::Exactly2 => Connectivity::Exactly2,
                FilterArg::Atleast2 => Connectivity::AtLeast2,
                FilterArg::Three => Connectivity::Three,
            };
            parse_datum(&datum).and_then(|datum| {
                let opts = EnumerateOptions {
                    filter: ClassFilter { min_degree, connectivity, edges: None },
                    exclude_separated_multi_edges: !keep_separated_multi_edges,
                    datum,
                };
                let ckpt = checkpoint.or_else(|| output.as_ref().map(|o| PathBuf::from(format!("{}.ckpt", o.display()))));
                let run = EnumerateRun { files, order, opts, jobs, output, checkpoint: ckpt, resume, batch, no_check, stats, format };
                run.run()
            })
        }
        Command::Validate { file } => validate(&file),
        Command::Canon { code, format } => for_each_code(code, |d| {
            let c = canonicalize(&d).map_err(|e| Fail(2, e.to_string()))?;
            Ok(vec![show(&c.dissection, &c.tablecode, format)])
        }),
        Command::Isomers { code, format } => for_each_code(code, |d| {
            let all = enumerate_isomers(&d).map_err(|e| Fail(2, e.to_string()))?;
            Ok(all.iter().map(|c| show(&c.dissection, &c.tablecode, format)).collect())
        }),
        Command::Render { code, output, svg_scale, stroke, font_size } => {
            let opts = SvgOptions { scale: svg_scale, stroke, font_size, ..Default::default() };
            render(code, output.as_deref(), &opts)
        }
        Command::Stats { file, kv } => stats(&file, kv),
    };
    match result {
        Ok(code) => code,
        Err(Fail(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn parse_datum(s: &str) -> Result<Datum, Fail> {
    if s == "last" {
        return Ok(Datum::Last);
    }
    s.parse().map(Datum::Node).map_err(|_| Fail(2, format!("--datum expects `last` or a node index, got {s:?}")))
}

fn show(d: &Dissection, t: &TablecodeLine, format: Format) -> String {
    match format {
        Format::Tablecode => t.to_string(),
        Format::Bouwkamp => format!("{} {} {} {}", t.order, t.width, t.height, emit_code(d)),
    }
}

fn open_input(path: &Path) -> Result<Box<dyn Read>, Fail> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(io::stdin()));
    }
    File::open(path).map(|f| Box::new(f) as Box<dyn Read>).map_err(|e| Fail::io(path, e))
}

fn parse_embedding(spec: &str) -> Result<PlanarEmbedding, Fail> {
    let bad = |m: String| Fail(2, format!("--embedding: {m}"));
    let lists: Vec<Vec<usize>> = spec
        .split(';')
        .map(|v| {
            v.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(bad(format!("bad neighbor {t:?}"))),
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    PlanarEmbedding::from_neighbors(&lists).map_err(|e| bad(e.to_string()))
}

fn solve(files: &[PathBuf], embedding: Option<&str>, datum: &str, format: Format) -> Run {
    let datum = parse_datum(datum)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut sources: Vec<(String, Vec<PlanarEmbedding>)> = Vec::new();
    if let Some(spec) = embedding {
        sources.push(("embedding".into(), vec![parse_embedding(spec)?]));
    }
    let mut total = 0u64;
    let emit = |name: &str, index: u64, e: &PlanarEmbedding, out: &mut dyn Write| -> Result<(), Fail> {
        let r = solve_graph(e, datum).map_err(|err| Fail(4, format!("{name}: graph {}: {err}", index + 1)))?;
        let w = |r: io::Result<()>| r.map_err(|e| Fail(2, e.to_string()));
        w(writeln!(out, "graph {} n={} m={} f={} complexity={}", index + 1, e.n(), e.m(), e.f(), r.complexity))?;
        let mut branches: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, row) in r.rows.iter().enumerate() {
            branches.entry(row.duplicate_of.unwrap_or(i)).or_default().push(row.polar_branch);
        }
        for (i, row) in r.rows.iter().enumerate().filter(|(_, r)| r.duplicate_of.is_none()) {
            let list: Vec<String> = branches[&i].iter().map(|b| b.to_string()).collect();
            let d = row.canonical.place().expect("canonical tablecode places");
            let cross = if r.rows.iter().enumerate().any(|(j, s)| (j == i || s.duplicate_of == Some(i)) && s.cross) {
                " cross"
            } else {
                ""
            };
            w(writeln!(
                out,
                "  {} # {}x{} class={}{} branches={}",
                show(&d, &row.canonical, format),
                row.canonical.width,
                row.canonical.height,
                row.classification.flags(),
                cross,
                list.join(",")
            ))?;
        }
        let skipped: Vec<String> = r.skipped.iter().map(|(b, _)| b.to_string()).collect();
        if !skipped.is_empty() {
            w(writeln!(out, "  # zero-current branches={}", skipped.join(",")))?;
        }
        Ok(())
    };
    for (name, list) in &sources {
        for (i, e) in list.iter().enumerate() {
            emit(name, i as u64, e, &mut out)?;
            total += 1;
        }
    }
    for path in files {
        let name = path.display().to_string();
        for (i, e) in read_planar_code(open_input(path)?).enumerate() {
            let e = e.map_err(|err| Fail(2, format!("{name}: {err}")))?;
            emit(&name, i as u64, &e, &mut out)?;
            total += 1;
        }
    }
    writeln!(out, "# graphs={total}").map_err(|e| Fail(2, e.to_string()))?;
    out.flush().map_err(|e| Fail(2, e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}

struct EnumerateRun {
    files: Vec<PathBuf>,
    order: Option<usize>,
    opts: EnumerateOptions,
    jobs: usize,
    output: Option<PathBuf>,
    checkpoint: Option<PathBuf>,
    resume: bool,
    batch: usize,
    no_check: bool,
    stats: Option<PathBuf>,
    format: Format,
}

impl EnumerateRun {
    fn run(self) -> Run {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Fail(2, format!("thread pool: {e}")))?;
        pool.install(|| self.drive())
    }

    fn save(&self, cp: &Checkpoint) -> Result<(), Fail> {
        let Some(path) = &self.checkpoint else { return Ok(()) };
        let tmp = PathBuf::from(format!("{}.tmp", path.display()));
        fs::write(&tmp, cp.to_text()).map_err(|e| Fail::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Fail::io(path, e))
    }

    fn drive(&self) -> Run {
        let names: Vec<String> = self.files.iter().map(|p| p.display().to_string()).collect();
        let mut cp = Checkpoint { inputs: names.iter().map(|n| (n.clone(), 0)).collect(), tally: Tally::default() };
        if self.resume {
            let path = self.checkpoint.as_ref().ok_or_else(|| Fail(2, "--resume needs --output or --checkpoint".into()))?;
            match fs::read_to_string(path) {
                Ok(text) => {
                    let saved = Checkpoint::parse(&text).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
                    let saved_names: Vec<&String> = saved.inputs.iter().map(|(n, _)| n).collect();
                    if saved_names != names.iter().collect::<Vec<_>>() {
                        return Err(Fail(2, format!("{}: checkpoint lists different input files", path.display())));
                    }
                    cp = saved;
                }
                Err(e) if e.kind() == io::ErrorKind::NotFound => {}
                Err(e) => return Err(Fail::io(path, e)),
            }
        }
        let batch = self.batch.max(1);
        for (fi, path) in self.files.iter().enumerate() {
            let skip = cp.inputs[fi].1;
            let mut reader = read_planar_code(open_input(path)?).enumerate().skip(skip as usize).peekable();
            while reader.peek().is_some() {
                let start = Instant::now();
                let mut graphs = Vec::with_capacity(batch);
                for (i, e) in reader.by_ref().take(batch) {
                    let e = e.map_err(|err| Fail(2, format!("{}: {err}", path.display())))?;
                    if let (Some(order), false) = (self.order, self.no_check) {
                        if e.m() != order + 1 {
                            return Err(Fail(
                                3,
                                format!(
                                    "{}: graph {} has {} edges; order {order} needs {}",
                                    path.display(),
                                    i + 1,
                                    e.m(),
                                    order + 1
                                ),
                            ));
                        }
                    }
                    graphs.push((i as u64, e));
                }
                let n = graphs.len() as u64;
                let mut part = enumerate_batch(fi, &graphs, &self.opts)
                    .map_err(|(i, err)| Fail(4, format!("{}: graph {}: {err}", path.display(), i + 1)))?;
                part.stats.elapsed = start.elapsed();
                cp.tally = std::mem::take(&mut cp.tally).merge(part);
                cp.inputs[fi].1 += n;
                self.save(&cp)?;
            }
        }
        self.finish(&cp)
    }

    fn finish(&self, cp: &Checkpoint) -> Run {
        let mut entries = cp.tally.entries().map_err(|e| Fail(4, e.to_string()))?;
        assign_ids(&mut entries);
        let mut text = String::new();
        for e in &entries {
            let line = match self.format {
                Format::Tablecode => e.to_string(),
                Format::Bouwkamp => {
                    let d = e.tablecode.place().expect("canonical tablecode places");
                    let full = e.to_string();
                    let meta = full.split_once(" #").map(|(_, m)| m).unwrap_or("");
                    format!("{}#{meta}", show(&d, &e.tablecode, Format::Bouwkamp) + " ")
                }
            };
            text.push_str(&line);
            text.push('\n');
        }
        match &self.output {
            Some(p) => fs::write(p, &text).map_err(|e| Fail::io(p, e))?,
            None => io::stdout().write_all(text.as_bytes()).map_err(|e| Fail(2, e.to_string()))?,
        }
        let stats = &cp.tally.stats;
        eprint!("{}", stats.table());
        if let Some(p) = &self.stats {
            fs::write(p, stats.key_values()).map_err(|e| Fail::io(p, e))?;
        }
        Ok(ExitCode::SUCCESS)
    }
}

fn validate(path: &Path) -> Run {
    let text = fs::read_to_string(path).map_err(|e| Fail::io(path, e))?;
    let mut failed = 0usize;
    let mut total = 0usize;
    let mut warned = 0usize;
    for (n, line) in record_lines(&text) {
        total += 1;
        let outcome = parse_record(line).map_err(|e| format!("syntax: {e}")).and_then(|r| check_record(&r));
        match outcome {
            Err(msg) => {
                failed += 1;
                println!("line {n}: FAIL {msg}");
            }
            Ok(c) => {
                let id = parse_record(line).ok().and_then(|r| r.meta.id).unwrap_or_default();
                let label = if id.is_empty() { String::new() } else { format!(" {id}") };
                if c.ok() {
                    println!("line {n}: ok{label} {}", c.entry);
                } else {
                    failed += 1;
                    println!("line {n}: FAIL{label} {}", c.errors.join("; "));
                }
                for w in &c.warnings {
                    warned += 1;
                    println!("line {n}: warning{label} {w}");
                }
            }
        }
    }
    println!("# records={total} failed={failed} warnings={warned}");
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Runs `f` on the code argument, or on every record line of standard input.
fn for_each_code(code: Option<String>, f: impl Fn(Dissection) -> Result<Vec<String>, Fail>) -> Run {
    let lines: Vec<String> = match code {
        Some(c) => vec![c],
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Fail(2, e.to_string()))?;
            record_lines(&s).map(|(_, l)| l.to_string()).collect()
        }
    };
    let mut out = String::new();
    for line in &lines {
        for l in f(place(line)?)? {
            out.push_str(&l);
            out.push('\n');
        }
    }
    io::stdout().write_all(out.as_bytes()).map_err(|e| Fail(2, e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}

fn place(line: &str) -> Result<Dissection, Fail> {
    let r = parse_record(line.trim()).map_err(|e| Fail(2, format!("syntax: {e}")))?;
    let d = r.place().map_err(|e| Fail(2, format!("placement: {e}")))?;
    let report = d.validate();
    if !report.ok() {
        let v: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Fail(2, format!("invalid tiling: {}", v.join("; "))));
    }
    Ok(d)
}

fn render(code: Option<String>, output: Option<&Path>, opts: &SvgOptions) -> Run {
    let code = match code {
        Some(c) => c,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Fail(2, e.to_string()))?;
            let first = record_lines(&s).next().map(|(_, l)| l.to_string());
            first.ok_or_else(|| Fail(2, "no code given".into()))?
        }
    };
    let svg = render_svg(&place(&code)?, opts);
    match output {
        Some(p) => fs::write(p, svg).map_err(|e| Fail::io(p, e))?,
        None => io::stdout().write_all(svg.as_bytes()).map_err(|e| Fail(2, e.to_string()))?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Default)]
struct OrderCounts {
    entries: u64,
    isomers: u64,
    simple: u64,
    compound: u64,
    squares: u64,
}

fn stats(path: &Path, kv: bool) -> Run {
    let text = fs::read_to_string(path).map_err(|e| Fail::io(path, e))?;
    let mut by_order: BTreeMap<usize, OrderCounts> = BTreeMap::new();
    for (n, line) in record_lines(&text) {
        let r = parse_record(line).map_err(|e| Fail(2, format!("{}: line {n}: {e}", path.display())))?;
        let c = check_record(&r).map_err(|e| Fail(2, format!("{}: line {n}: {e}", path.display())))?;
        let cl: &Classification = &c.entry.classification;
        let o = by_order.entry(c.entry.tablecode.order).or_default();
        o.entries += 1;
        o.isomers += c.entry.isomer_count as u64;
        match cl.structure {
            Structure::Simple => o.simple += 1,
            Structure::Compound => o.compound += 1,
        }
        if cl.shape == Shape::Square {
            o.squares += 1;
        }
    }
    let mut out = String::new();
    if kv {
        for (order, c) in &by_order {
            out.push_str(&format!(
                "order={order} entries={} isomers={} simple={} compound={} squares={}\n",
                c.entries, c.isomers, c.simple, c.compound, c.squares
            ));
        }
    } else {
        out.push_str(&format!("{:>5} {:>8} {:>8} {:>8} {:>8} {:>8}\n", "order", "entries", "isomers", "simple", "compound", "squares"));
        for (order, c) in &by_order {
            out.push_str(&format!(
                "{order:>5} {:>8} {:>8} {:>8} {:>8} {:>8}\n",
                c.entries, c.isomers, c.simple, c.compound, c.squares
            ));
        }
    }
    io::stdout().write_all(out.as_bytes()).map_err(|e| Fail(2, e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}
