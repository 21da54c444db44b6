use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bggkit::bgg::{
    ar_vanishing_check, cohomology_table, component_scan, is_nice, rigidity_report, sheaf_rank, theorem15_check_with,
    ComponentVerdict, NiceVerdict, Theorem15Verdict, CHECK_SEED, CHECK_TRIALS,
};
use bggkit::corpus::{builtin, recompute};
use bggkit::homres::{betti_table, is_linear, Linearity};
use bggkit::koszul::{gamma_reduce, koszul_dual, lemma11_check, lemma12_check, lemma13_check, lemma14_check, Lemma13Verdict, Lemma14Verdict};
use bggkit::modfile::{export_module, parse_extension, parse_module};
use bggkit::stablecat::{serre_check, tau};
use bggkit::sweep::run_sweep;
use bggkit::{BggError, DegreewiseModule, Rat};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bggkit", version, about = "Exact computations with graded modules over exterior and symmetric algebras")]
struct Cli {
    /// Output style; `machine` prints sorted `key=value` records only.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a module file and check the algebra relations.
    Validate { file: PathBuf },
    /// Graded Betti numbers of a minimal free resolution.
    Betti {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
    /// Whether the resolution is linear through a bound.
    Linear {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Randomized test that the fiber homology sits in degree 0.
    Nice {
        file: PathBuf,
        #[arg(long, default_value_t = CHECK_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hypercohomology table of the associated complex of sheaves.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        dmin: i32,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        dmax: i32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        qmin: i32,
        /// Defaults to the dimension of projective space.
        #[arg(long, allow_hyphen_values = true)]
        qmax: Option<i32>,
    },
    /// Rank of the associated bundle.
    Rank {
        file: PathBuf,
        #[arg(long, default_value_t = CHECK_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Stable endomorphisms and self-extensions.
    Rigid {
        file: PathBuf,
        /// Defaults to the dimension of projective space.
        #[arg(long)]
        extbound: Option<usize>,
    },
    /// Rigid indecomposable bundles have one-dimensional stable endomorphisms.
    Theorem15 {
        file: PathBuf,
        #[arg(long, default_value_t = CHECK_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = CHECK_SEED)]
        seed: u64,
    },
    /// Compare both sides of Serre duality in the stable category.
    Serre {
        filex: PathBuf,
        filey: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
    },
    /// Auslander-Reiten translate.
    Tau {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Print the resulting module file only.
        #[arg(long)]
        export: bool,
    },
    /// Vanishing of stable Hom from translates of B to C.
    Arvanish {
        fileb: PathBuf,
        filec: PathBuf,
        #[arg(long, default_value_t = 3)]
        imax: u32,
    },
    /// Whether C lies on the translate orbit of B.
    Scan {
        fileb: PathBuf,
        filec: PathBuf,
        #[arg(long, default_value_t = 4)]
        imax: u32,
    },
    /// Koszul dual of a linear exterior module on the window [0, hi].
    Dual {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        hi: usize,
        #[arg(long)]
        export: bool,
    },
    /// Reduction of a symmetric module modulo the square of the maximal ideal.
    Gamma {
        file: PathBuf,
        #[arg(long)]
        export: bool,
    },
    /// Splitting of an extension before and after reduction.
    Lemma11 { file: PathBuf },
    /// Hom from a truncation into a simple module.
    Lemma12 {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Self-extensions of a truncation.
    Lemma13 {
        file: PathBuf,
        #[arg(long)]
        i: i32,
    },
    /// Indecomposable rigid two-step modules have trivial endomorphisms.
    Lemma14 { file: PathBuf },
    /// Built-in corpus entry with its recomputed expectations.
    Corpus {
        name: String,
        #[arg(long, default_value_t = 3)]
        nvars: usize,
        #[arg(long)]
        export: bool,
    },
    /// Seeded batch verification run.
    Sweep {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

type Record = BTreeMap<String, String>;

#[derive(Default)]
struct Report {
    human: String,
    records: Vec<Record>,
    code: u8,
}

impl Report {
    fn new(command: &str) -> Report {
        let mut r = Report::default();
        r.records.push(Record::from([("command".into(), command.into())]));
        r
    }

    /// Adds a field to the summary record.
    fn set(&mut self, key: &str, value: impl ToString) {
        self.records[0].insert(key.into(), value.to_string());
    }

    fn push(&mut self, fields: &[(&str, String)]) {
        self.records.push(fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect());
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.human.push_str(s.as_ref());
        self.human.push('\n');
    }

    fn fail_if(&mut self, failed: bool) {
        self.code = u8::from(failed);
    }
}

fn render_value(v: &str) -> String {
    if v.is_empty() || v.chars().any(|c| c.is_whitespace() || c == '=' || c == '"') {
        format!("{v:?}")
    } else {
        v.to_string()
    }
}

fn render_records(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        let line: Vec<String> = r.iter().map(|(k, v)| format!("{k}={}", render_value(v))).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn dims_text(m: &DegreewiseModule) -> String {
    join(m.dims().into_iter().map(|(d, n)| format!("{d}:{n}")))
}

fn point_text(xi: &[Rat]) -> String {
    join(xi)
}

fn read(path: &Path) -> Result<String, BggError> {
    std::fs::read_to_string(path).map_err(|e| BggError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<DegreewiseModule, BggError> {
    parse_module(&read(path)?)
}

fn error_code(e: &BggError) -> u8 {
    match e {
        BggError::Inconsistent(_) | BggError::NotABundle { .. } => 1,
        _ => 2,
    }
}

fn error_kind(e: &BggError) -> &'static str {
    match e {
        BggError::Shape(_) => "shape",
        BggError::NotContained => "not-contained",
        BggError::Parse(_) => "parse",
        BggError::KindMismatch(_) => "kind-mismatch",
        BggError::WindowMismatch(_) => "window-mismatch",
        BggError::Input(_) => "input",
        BggError::ZeroModule => "zero-module",
        BggError::NotSingleDegree(_) => "not-single-degree",
        BggError::NotLinear { .. } => "not-linear",
        BggError::Violation(_) => "violation",
        BggError::NotABundle { .. } => "not-a-bundle",
        BggError::Inconsistent(_) => "inconsistent",
        BggError::Io(_) => "io",
    }
}

fn error_report(command: &str, e: &BggError) -> Report {
    let mut r = Report::new(command);
    r.code = error_code(e);
    match e {
        BggError::Violation(v) => {
            let (j, k) = v.vars;
            r.set("violation", v.relation);
            r.set("var", if j == k { j.to_string() } else { format!("{j},{k}") });
            r.set("degree", v.degree);
        }
        BggError::NotABundle { first, other } => {
            r.set("fiber_dim", first);
            r.set("fiber_dim_other", other);
        }
        _ => {}
    }
    r.set("error", error_kind(e));
    r.set("message", e);
    r.human = format!("error: {e}\n");
    r
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Betti { .. } => "betti",
        Command::Linear { .. } => "linear",
        Command::Nice { .. } => "nice",
        Command::Cohomology { .. } => "cohomology",
        Command::Rank { .. } => "rank",
        Command::Rigid { .. } => "rigid",
        Command::Theorem15 { .. } => "theorem15",
        Command::Serre { .. } => "serre",
        Command::Tau { .. } => "tau",
        Command::Arvanish { .. } => "arvanish",
        Command::Scan { .. } => "scan",
        Command::Dual { .. } => "dual",
        Command::Gamma { .. } => "gamma",
        Command::Lemma11 { .. } => "lemma11",
        Command::Lemma12 { .. } => "lemma12",
        Command::Lemma13 { .. } => "lemma13",
        Command::Lemma14 { .. } => "lemma14",
        Command::Corpus { .. } => "corpus",
        Command::Sweep { .. } => "sweep",
    }
}

/// Summary fields and human text for a module result; with `export` the human
/// output is the module file alone.
fn module_output(r: &mut Report, m: &DegreewiseModule, export: bool) {
    r.set("kind", m.kind());
    r.set("nvars", m.nvars());
    r.set("window", format!("{},{}", m.lo(), m.hi()));
    r.set("dims", dims_text(m));
    if export {
        r.human = export_module(m);
        r.human.push('\n');
    } else {
        r.line(format!("{m:?}"));
        r.line(export_module(m));
    }
}

fn run(c: &Command) -> Result<Report, BggError> {
    let mut r = Report::new(command_name(c));
    match c {
        Command::Validate { file } => {
            let m = load(file)?;
            r.set("valid", true);
            r.set("dims", dims_text(&m));
            r.line(format!("ok: {m:?}"));
        }
        Command::Betti { file, length } => {
            let b = betti_table(&load(file)?, *length)?;
            r.set("length", length);
            for ((i, j), v) in b.entries() {
                r.push(&[("kind", "betti".into()), ("i", i.to_string()), ("j", j.to_string()), ("value", v.to_string())]);
            }
            r.human = b.render();
        }
        Command::Linear { file, bound } => {
            r.set("bound", bound);
            let lin = match is_linear(&load(file)?, *bound) {
                Err(BggError::NotSingleDegree(gens)) => {
                    r.set("linear", false);
                    r.set("generators", join(&gens));
                    r.line(format!("not linear: generators in degrees {gens:?}"));
                    r.fail_if(true);
                    return Ok(r);
                }
                other => other?,
            };
            match lin {
                Linearity::LinearThroughBound => {
                    r.set("linear", true);
                    r.line(format!("linear through homological degree {bound}"));
                }
                Linearity::NotLinear { row, degree, value } => {
                    r.set("linear", false);
                    r.set("row", row);
                    r.set("degree", degree);
                    r.set("value", value);
                    r.line(format!("not linear: beta[{row}][{degree}] = {value}"));
                    r.fail_if(true);
                }
            }
        }
        Command::Nice { file, trials, seed } => {
            if *trials == 0 {
                return Err(BggError::Input("--trials must be at least 1".into()));
            }
            r.set("trials", trials);
            r.set("seed", seed);
            match is_nice(&load(file)?, *trials, *seed)? {
                NiceVerdict::NiceCertifiedRandomized { samples } | NiceVerdict::Inconclusive { samples } => {
                    r.set("nice", true);
                    r.set("samples", samples);
                    r.line(format!("nice (randomized certificate, {samples} sample points)"));
                }
                NiceVerdict::NotNice { witness, degree } => {
                    r.set("nice", false);
                    r.set("witness", point_text(&witness));
                    r.set("degree", degree);
                    r.line(format!("not nice: homology in degree {degree} at xi = ({})", point_text(&witness)));
                    r.fail_if(true);
                }
            }
        }
        Command::Cohomology { file, dmin, dmax, qmin, qmax } => {
            let m = load(file)?;
            let qmax = qmax.unwrap_or(m.algebra().n() as i32);
            if dmin > dmax || *qmin > qmax {
                return Err(BggError::Input("empty degree range".into()));
            }
            let t = cohomology_table(&m, (*dmin, *dmax), (*qmin, qmax))?;
            r.set("n", t.n);
            r.set("drange", format!("{dmin},{dmax}"));
            r.set("qrange", format!("{qmin},{qmax}"));
            for q in (*qmin..=qmax).rev() {
                for d in *dmin..=*dmax {
                    r.push(&[("kind", "h".into()), ("q", q.to_string()), ("d", d.to_string()), ("value", t.get(q, d).to_string())]);
                }
            }
            r.human = t.render();
            for l in t.machine_lines() {
                r.line(l);
            }
        }
        Command::Rank { file, trials, seed } => {
            r.set("trials", trials);
            r.set("seed", seed);
            let rank = sheaf_rank(&load(file)?, *trials, *seed)?;
            r.set("rank", rank);
            r.line(format!("rank {rank}"));
        }
        Command::Rigid { file, extbound } => {
            let m = load(file)?;
            let bound = extbound.unwrap_or(m.algebra().n());
            let rep = rigidity_report(&m, bound)?;
            let rigid = rep.ext_self_dims.values().all(|v| *v == 0);
            r.set("extbound", bound);
            r.set("end", rep.end_stable_dim);
            for (i, v) in &rep.ext_self_dims {
                r.set(&format!("ext{i}"), v);
            }
            r.set("indecomposable", rep.indecomposable);
            r.set("residue_dim", rep.residue_dim);
            r.set("rigid", rigid);
            r.set("exceptional", rigid && rep.indecomposable && rep.end_stable_dim == 1);
            r.line(format!("stable End dim {}", rep.end_stable_dim));
            for (i, v) in &rep.ext_self_dims {
                r.line(format!("stable Ext^{i} dim {v}"));
            }
            r.line(format!("indecomposable {} (residue dim {})", rep.indecomposable, rep.residue_dim));
            r.fail_if(!rigid);
        }
        Command::Theorem15 { file, trials, seed } => {
            let v = theorem15_check_with(&load(file)?, *trials, *seed)?;
            r.set("trials", trials);
            r.set("seed", seed);
            r.set("verdict", v.label());
            r.set("verified", matches!(v, Theorem15Verdict::Verified { .. }));
            match &v {
                Theorem15Verdict::Verified { end_stable_dim } => {
                    r.set("end", end_stable_dim);
                    r.set("ext1", 0);
                    r.line(format!("verified=true end={end_stable_dim} ext1=0"));
                }
                Theorem15Verdict::HypothesisNotMet { reason } => {
                    r.set("end", "na");
                    r.set("ext1", "na");
                    r.set("reason", reason);
                    r.line(format!("verified=false (hypothesis not met: {reason})"));
                }
                Theorem15Verdict::Counterexample { end_stable_dim, ext1 } => {
                    r.set("end", end_stable_dim);
                    r.set("ext1", ext1);
                    r.line(format!("counterexample: end={end_stable_dim} ext1={ext1}"));
                    r.fail_if(true);
                }
            }
        }
        Command::Serre { filex, filey, m } => {
            let c = serre_check(&load(filex)?, &load(filey)?, *m)?;
            r.set("m", m);
            r.set("lhs", c.lhs);
            r.set("rhs", c.rhs);
            r.set("equal", c.equal);
            r.line(format!("stHom(X, Omega^{} Y) = {}, stHom(Y, Omega^{} X (n+1)) = {}", -m, c.lhs, m + 1, c.rhs));
            r.fail_if(!c.equal);
        }
        Command::Tau { file, power, export } => {
            let t = tau(&load(file)?, *power)?;
            r.set("power", power);
            module_output(&mut r, &t, *export);
        }
        Command::Arvanish { fileb, filec, imax } => {
            let rows = ar_vanishing_check(&load(fileb)?, &load(filec)?, *imax)?;
            let all = rows.iter().all(|x| x.pass);
            r.set("imax", imax);
            r.set("trials", CHECK_TRIALS);
            r.set("seed", CHECK_SEED);
            r.set("vanishes", all);
            for x in &rows {
                r.push(&[("kind", "ar".into()), ("i", x.i.to_string()), ("stable_dim", x.stable_dim.to_string()), ("pass", x.pass.to_string())]);
                r.line(format!("i={} stHom(tau^i B, C) = {}", x.i, x.stable_dim));
            }
            r.fail_if(!all);
        }
        Command::Scan { fileb, filec, imax } => {
            r.set("imax", imax);
            match component_scan(&load(fileb)?, &load(filec)?, *imax)? {
                ComponentVerdict::DistinctComponents => {
                    r.set("verdict", "distinct");
                    r.line(format!("C is not tau^i B for 0 <= i <= {imax}"));
                }
                ComponentVerdict::SameComponent(i) => {
                    r.set("verdict", "same");
                    r.set("i", i);
                    r.line(format!("C is stably isomorphic to tau^{i} B"));
                }
            }
        }
        Command::Dual { file, hi, export } => {
            let c = koszul_dual(&load(file)?, *hi)?;
            r.set("hi", hi);
            r.set("round_trip", c.round_trip_ok);
            module_output(&mut r, &c.dual, *export);
            if !export {
                r.line(format!("round trip {}", c.round_trip_ok));
            }
            r.fail_if(!c.round_trip_ok);
        }
        Command::Gamma { file, export } => {
            let g = gamma_reduce(&load(file)?)?;
            module_output(&mut r, &g, *export);
        }
        Command::Lemma11 { file } => {
            let e = parse_extension(&read(file)?)?;
            let s = lemma11_check(&e.source, &e.target, &e.class)?;
            r.set("split_s", s.split_s);
            r.set("split_gamma", s.split_gamma);
            r.set("agree", s.agree);
            r.line(format!("split over S: {}, split over Gamma: {}", s.split_s, s.split_gamma));
            r.fail_if(!s.agree);
        }
        Command::Lemma12 { file, m, r: rr } => {
            let ok = lemma12_check(&load(file)?, *m, *rr)?;
            r.set("m", m);
            r.set("r", rr);
            r.set("holds", ok);
            r.line(format!("holds {ok}"));
            r.fail_if(!ok);
        }
        Command::Lemma13 { file, i } => {
            let v = lemma13_check(&load(file)?, *i)?;
            let (a, b) = match v {
                Lemma13Verdict::Verified { a, b } | Lemma13Verdict::HypothesisFails { a, b } | Lemma13Verdict::ConclusionFails { a, b } => (a, b),
            };
            r.set("i", i);
            r.set("verdict", v.label());
            r.set("ext_into", a);
            r.set("ext_self", b);
            r.line(format!("{}: Ext^1(C>=i, C) = {a}, Ext^1(C>=i, C>=i) = {b}", v.label()));
            r.fail_if(v.is_failure());
        }
        Command::Lemma14 { file } => {
            let v = lemma14_check(&load(file)?)?;
            r.set("verdict", v.label());
            match &v {
                Lemma14Verdict::Verified => r.line("verified"),
                Lemma14Verdict::HypothesisNotMet { reason } => {
                    r.set("reason", reason);
                    r.line(format!("hypothesis not met: {reason}"));
                }
                Lemma14Verdict::ConclusionFails { end_dim } => {
                    r.set("end_dim", end_dim);
                    r.line(format!("conclusion fails: End dim {end_dim}"));
                    r.fail_if(true);
                }
            }
        }
        Command::Corpus { name, nvars, export } => {
            let entry = builtin(name, *nvars)?;
            r.set("name", name);
            if *export {
                module_output(&mut r, &entry.module, true);
                return Ok(r);
            }
            r.set("trials", CHECK_TRIALS);
            r.set("seed", CHECK_SEED);
            module_output(&mut r, &entry.module, false);
            r.human.clear();
            r.line(format!("{}: {:?}", entry.name, entry.module));
            let mut all = true;
            for (prop, want, got) in recompute(&entry)? {
                all &= want == got;
                r.push(&[("kind", "property".into()), ("property", prop.into()), ("expected", want.to_string()), ("actual", got.to_string())]);
                r.line(format!("  {prop}: expected {want}, computed {got}"));
            }
            r.set("match", all);
            r.fail_if(!all);
        }
        Command::Sweep { suite, seed, count } => {
            let s = run_sweep(suite, *seed, *count)?;
            r.set("suite", &s.suite);
            r.set("seed", s.seed);
            r.set("count", s.count);
            r.set("passed", s.passed);
            r.set("skipped", s.skipped);
            r.set("failed", s.failures.len());
            let _ = writeln!(
                r.human,
                "{} seed={} count={}: {} passed, {} outside hypotheses, {} failed",
                s.suite,
                s.seed,
                s.count,
                s.passed,
                s.skipped,
                s.failures.len()
            );
            for w in &s.failures {
                r.push(&[("kind", "failure".into()), ("witness", w.clone())]);
                r.line(format!("  failure: {w}"));
            }
            r.fail_if(!s.ok());
        }
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli.command).unwrap_or_else(|e| error_report(command_name(&cli.command), &e));
    match cli.format {
        Format::Machine => print!("{}", render_records(&report.records)),
        Format::Human if report.human.starts_with("error:") => eprint!("{}", report.human),
        Format::Human => print!("{}", report.human),
    }
    ExitCode::from(report.code)
}
