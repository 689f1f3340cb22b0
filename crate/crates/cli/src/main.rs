use std::collections::BTreeSet;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use chowq_core::correspondence::{compose, derivative};
use chowq_core::diagram::{pyramid_symbols, render_pyramid};
use chowq_core::holes::{
    check_min_splitting, dim_in_set, forced_witt_sequence, gap_certificate, single_case,
    small_splitting_pattern, target, verify_contradiction, vishik_pattern, Certificate, GapVerdict,
    HoleParams, Method,
};
use chowq_core::ring::mul;
use chowq_core::steenrod::{steenrod_k, steenrod_total};
use chowq_core::structure::{
    check_all, check_known, closure, primordial_cycles, splitting_readoff, witt_index_readoff,
    CheckResult, FamilyFile, RationalFamily, SplittingData,
};
use chowq_core::{parse_cycle_any, Cycle, Error, Quadric};

#[derive(Parser)]
#[command(
    name = "chowq",
    version,
    about = "Rational cycles on powers of a projective quadric over GF(2)"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Geom {
    /// Dimension of the quadric.
    #[arg(short = 'D', long = "dim")]
    dim: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Product of two cycles of the same arity.
    Mul {
        #[command(flatten)]
        geom: Geom,
        a: String,
        b: String,
    },
    /// Total Steenrod operation, or `S^k` with `-k`.
    Steenrod {
        #[command(flatten)]
        geom: Geom,
        #[arg(short = 'k')]
        k: Option<u32>,
        a: String,
    },
    /// Composition `b ∘ a` of correspondences.
    Compose {
        #[command(flatten)]
        geom: Geom,
        a: String,
        b: String,
    },
    /// `a · (h^i x h^j)` for a cycle on X².
    Derive {
        #[command(flatten)]
        geom: Geom,
        #[arg(short = 'i')]
        i: u32,
        #[arg(short = 'j')]
        j: u32,
        a: String,
    },
    /// The pyramid of basis elements of Ch(X̄²) in dimensions at least D.
    Diagram {
        #[command(flatten)]
        geom: Geom,
        /// Cycle on X² whose terms are marked.
        cycle: Option<String>,
        /// Higher Witt indices, comma separated; marks the shell triangles.
        #[arg(long, value_delimiter = ',')]
        splitting: Option<Vec<u32>>,
    },
    /// Closes a family and runs every applicable check.
    Check {
        family: PathBuf,
        /// Family over the function field, for the supplement check.
        inner: Option<PathBuf>,
    },
    /// Certifies that no form of the given dimension lies in I^n.
    Verify(VerifyArgs),
    /// Dimension sets and splitting patterns.
    Pattern {
        #[command(subcommand)]
        kind: PatternCmd,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Optional literal `contradiction`.
    #[arg(value_parser = ["contradiction"])]
    what: Option<String>,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    p: u32,
    #[arg(long, default_value = "auto")]
    method: Method,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Print `μ` and `ξ(μ)` for one selection mask instead.
    #[arg(long)]
    case: Option<u64>,
}

#[derive(Subcommand)]
enum PatternCmd {
    /// Known dimensions of anisotropic forms in I^n, up to `cap`.
    DimIn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        cap: u32,
    },
    Vishik {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    Small {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Binary-size test on the jumps of a pattern.
    Gap {
        #[arg(value_delimiter = ',')]
        pattern: Vec<u32>,
    },
    /// Higher Witt indices forced on a form of dimension `dim` in I^n.
    Forced {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dim: u32,
    },
    /// Least positive element of the pattern is a power of two, at least 2^n.
    MinSplitting {
        #[arg(long)]
        n: u32,
        #[arg(value_delimiter = ',')]
        pattern: Vec<u32>,
    },
}

struct Out {
    json: bool,
    color: bool,
}

impl Out {
    fn print<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> anyhow::Result<()> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value)?);
        } else {
            print!("{}", text());
        }
        Ok(())
    }

    fn verdict(&self, passed: bool) -> String {
        let (word, code) = if passed {
            ("PASS", "32")
        } else {
            ("FAIL", "31")
        };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let color =
        std::io::stdout().is_terminal() && !std::env::var("CHOWQ_COLOR").is_ok_and(|v| v == "0");
    let out = Out {
        json: cli.json,
        color,
    };
    match run(cli.cmd, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn parse(text: &str, q: Quadric) -> anyhow::Result<Option<Cycle>> {
    parse_cycle_any(text, q).with_context(|| format!("cannot parse {text:?}"))
}

fn print_cycle(out: &Out, c: Option<&Cycle>, q: Quadric, r: usize) -> anyhow::Result<bool> {
    let zero = Cycle::zero(q, r);
    let c = c.unwrap_or(&zero);
    out.print(&c.to_json(), || {
        if c.is_zero() {
            "0\n".to_string()
        } else {
            format!("{}\n", c.render())
        }
    })?;
    Ok(true)
}

fn run(cmd: Cmd, out: &Out) -> anyhow::Result<bool> {
    match cmd {
        Cmd::Mul { geom, a, b } => {
            let q = Quadric::new(geom.dim);
            let (x, y) = (parse(&a, q)?, parse(&b, q)?);
            match (x, y) {
                (Some(x), Some(y)) => print_cycle(out, Some(&mul(&x, &y)?), q, x.arity()),
                (Some(x), None) | (None, Some(x)) => print_cycle(out, None, q, x.arity()),
                (None, None) => print_cycle(out, None, q, 1),
            }
        }
        Cmd::Steenrod { geom, k, a } => {
            let q = Quadric::new(geom.dim);
            match parse(&a, q)? {
                Some(x) => {
                    let s = match k {
                        Some(k) => steenrod_k(&x, k)?,
                        None => steenrod_total(&x),
                    };
                    print_cycle(out, Some(&s), q, x.arity())
                }
                None => print_cycle(out, None, q, 1),
            }
        }
        Cmd::Compose { geom, a, b } => {
            let q = Quadric::new(geom.dim);
            match (parse(&a, q)?, parse(&b, q)?) {
                (Some(x), Some(y)) => {
                    let c = compose(&x, &y)?;
                    print_cycle(out, Some(&c), q, c.arity())
                }
                _ => print_cycle(out, None, q, 2),
            }
        }
        Cmd::Derive { geom, i, j, a } => {
            let q = Quadric::new(geom.dim);
            let x = parse(&a, q)?.unwrap_or_else(|| Cycle::zero(q, 2));
            print_cycle(out, Some(&derivative(&x, i, j)?), q, 2)
        }
        Cmd::Diagram {
            geom,
            cycle,
            splitting,
        } => diagram(out, Quadric::new(geom.dim), cycle, splitting),
        Cmd::Check { family, inner } => check(out, &family, inner.as_deref()),
        Cmd::Verify(v) => verify(out, v),
        Cmd::Pattern { kind } => pattern(out, kind),
    }
}

#[derive(Serialize)]
struct DiagramJson {
    #[serde(rename = "D")]
    dim: u32,
    rows: Vec<String>,
}

fn diagram(
    out: &Out,
    q: Quadric,
    cycle: Option<String>,
    splitting: Option<Vec<u32>>,
) -> anyhow::Result<bool> {
    let c = match cycle {
        Some(t) => parse(&t, q)?,
        None => None,
    };
    let s = splitting
        .map(|w| SplittingData::for_quadric(q, w))
        .transpose()?;
    let rows = pyramid_symbols(q, c.as_ref(), s.as_ref())?;
    let text = render_pyramid(q, c.as_ref(), s.as_ref())?;
    out.print(&DiagramJson { dim: q.dim(), rows }, || text)?;
    Ok(true)
}

fn load_family(path: &Path) -> anyhow::Result<(FamilyFile, RationalFamily)> {
    let raw =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let file: FamilyFile = serde_json::from_str(&raw)
        .with_context(|| format!("{} is not a family file", path.display()))?;
    let family = file
        .build()
        .with_context(|| format!("bad generator in {}", path.display()))?;
    Ok((file, closure(&family)))
}

#[derive(Serialize)]
struct PrimordialJson {
    cycles: Vec<String>,
    f_map: Vec<usize>,
    minimal_cycles: usize,
}

#[derive(Serialize)]
struct CheckReport {
    #[serde(rename = "D")]
    dim: u32,
    max_arity: usize,
    witt_index: u32,
    splitting_readoff: Option<Vec<u32>>,
    readoff_note: Option<String>,
    primordial: Option<PrimordialJson>,
    checks: Vec<CheckResult>,
    passed: bool,
}

fn check(out: &Out, path: &Path, inner: Option<&Path>) -> anyhow::Result<bool> {
    let (file, family) = load_family(path)?;
    let inner = inner.map(load_family).transpose()?;
    let mut checks = check_all(&family, inner.as_ref().map(|(_, f)| f))?;

    let (splitting_readoff, readoff_note) = match splitting_readoff(&family) {
        Ok(s) => (Some(s.witt_indices().to_vec()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    if let (Some(found), Some(declared)) = (&splitting_readoff, &file.splitting) {
        checks.push(CheckResult {
            name: "readoff",
            passed: found == declared,
            detail: if found == declared {
                String::new()
            } else {
                format!("read off {found:?}, declared {declared:?}")
            },
        });
    }

    let mut primordial = None;
    if let (Some(s), true) = (family.splitting(), family.max_arity() >= 2) {
        match primordial_cycles(&family, s) {
            Ok(r) => {
                primordial = Some(PrimordialJson {
                    cycles: r.primordial.iter().map(Cycle::render).collect(),
                    f_map: r.f_map.clone(),
                    minimal_cycles: r.minimal_cycles.len(),
                });
                checks.push(CheckResult {
                    name: "primordial",
                    passed: true,
                    detail: String::new(),
                });
            }
            Err(Error::FamilyInconsistent(msg)) => checks.push(CheckResult {
                name: "primordial",
                passed: false,
                detail: msg,
            }),
            Err(e) => return Err(e.into()),
        }
        if file.small {
            checks.push(check_known(&family, s));
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    let report = CheckReport {
        dim: family.geometry().dim(),
        max_arity: family.max_arity(),
        witt_index: witt_index_readoff(&family),
        splitting_readoff,
        readoff_note,
        primordial,
        checks,
        passed,
    };
    out.print(&report, || {
        let mut t = format!(
            "D = {}, arity <= {}, Witt index {}\n",
            report.dim, report.max_arity, report.witt_index
        );
        match (&report.splitting_readoff, &report.readoff_note) {
            (Some(j), _) => t.push_str(&format!("splitting read off: {j:?}\n")),
            (None, Some(n)) => t.push_str(&format!("splitting read off: {n}\n")),
            _ => {}
        }
        if let Some(p) = &report.primordial {
            for (c, q) in p.cycles.iter().zip(&p.f_map) {
                t.push_str(&format!("primordial (shell {q}): {c}\n"));
            }
        }
        for c in &report.checks {
            t.push_str(&format!("{} {}", out.verdict(c.passed), c.name));
            if !c.detail.is_empty() {
                t.push_str(&format!(": {}", c.detail));
            }
            t.push('\n');
        }
        t
    })?;
    Ok(passed)
}

#[derive(Serialize)]
struct CaseJson {
    mask: u64,
    mu: String,
    xi: String,
    target: String,
    contains_target: bool,
}

fn verify(out: &Out, v: VerifyArgs) -> anyhow::Result<bool> {
    let p = HoleParams::new(v.n, v.m, v.p)?;
    if let Some(mask) = v.case {
        let (mu, xi) = single_case(&p, mask)?;
        let t = target(&p);
        let case = CaseJson {
            mask,
            mu: mu.render(),
            xi: xi.render(),
            target: chowq_core::basis::render_monomial(&t),
            contains_target: xi.contains(&t),
        };
        out.print(&case, || {
            format!(
                "mu = {}\nxi = {}\n{} contains {}\n",
                case.mu,
                case.xi,
                out.verdict(case.contains_target),
                case.target
            )
        })?;
        return Ok(case.contains_target);
    }
    let cert = verify_contradiction(&p, v.method, v.jobs)?;
    out.print(&cert, || certificate_text(out, &cert))?;
    Ok(cert.certified)
}

fn certificate_text(out: &Out, c: &Certificate) -> String {
    let s = &c.params;
    let mut t = format!(
        "(n, m, p) = ({}, {}, {}): dim = {}, D = {}, a = {}, b = {}, c = {}\n",
        s.n,
        s.m,
        s.p,
        s.dim + 2,
        s.dim,
        s.a,
        s.b,
        s.c
    );
    t.push_str(&format!("target {}\n", c.target));
    t.push_str(&format!("mu0 = {}\n", c.mu_zero));
    t.push_str(&format!("{} generators of mu'\n", c.generators.len()));
    t.push_str(&format!(
        "target in xi(mu0): {}\nblocks with mu' vanish: {}\n",
        c.constant_term, c.per_block_zero
    ));
    if let Some(b) = &c.brute {
        t.push_str(&format!(
            "brute force: {} cases, {} failures",
            b.cases, b.failures
        ));
        if !b.failing_masks.is_empty() {
            t.push_str(&format!(" (masks {:?})", b.failing_masks));
        }
        t.push('\n');
    }
    t.push_str(&format!("bilinear: {}\n", c.bilinear_certified));
    t.push_str(&format!("{} certified\n", out.verdict(c.certified)));
    t
}

#[derive(Serialize)]
struct PatternJson {
    kind: &'static str,
    pattern: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    height: Option<usize>,
}

#[derive(Serialize)]
struct ForcedJson {
    kind: &'static str,
    witt_indices: Vec<u32>,
}

#[derive(Serialize)]
struct VerdictJson<T: Serialize> {
    kind: &'static str,
    passed: bool,
    detail: T,
}

fn set_text(s: &BTreeSet<u32>) -> String {
    let v: Vec<String> = s.iter().map(u32::to_string).collect();
    format!("{{{}}}\n", v.join(", "))
}

fn pattern(out: &Out, kind: PatternCmd) -> anyhow::Result<bool> {
    let show = |kind: &'static str, s: BTreeSet<u32>, height: Option<usize>| {
        let j = PatternJson {
            kind,
            pattern: s.iter().copied().collect(),
            height,
        };
        out.print(&j, || match height {
            Some(h) => format!("{}height {h}\n", set_text(&s)),
            None => set_text(&s),
        })
        .map(|_| true)
    };
    match kind {
        PatternCmd::DimIn { n, cap } => show("dim_in", dim_in_set(n, cap)?, None),
        PatternCmd::Vishik { n, m } => show("vishik", vishik_pattern(n, m)?, None),
        PatternCmd::Small { n, m } => {
            let s = small_splitting_pattern(n, m)?;
            let h = s.len() - 1;
            show("small", s, Some(h))
        }
        PatternCmd::Gap { pattern } => {
            let s = as_pattern(pattern)?;
            let v = gap_certificate(&s);
            let passed = v == GapVerdict::Pass;
            out.print(
                &VerdictJson {
                    kind: "gap",
                    passed,
                    detail: &v,
                },
                || match &v {
                    GapVerdict::Pass => format!("{}\n", out.verdict(true)),
                    GapVerdict::Fail { b, c, witness } => format!(
                        "{} jump {b} -> {c}: {witness} is not a power of two\n",
                        out.verdict(false)
                    ),
                },
            )?;
            Ok(passed)
        }
        PatternCmd::Forced { n, dim } => {
            let s = forced_witt_sequence(n, dim)?;
            let j = ForcedJson {
                kind: "forced",
                witt_indices: s.witt_indices().to_vec(),
            };
            out.print(&j, || format!("{:?}\n", j.witt_indices))?;
            Ok(true)
        }
        PatternCmd::MinSplitting { n, pattern } => {
            let s = as_pattern(pattern)?;
            let passed = check_min_splitting(n, &s);
            out.print(
                &VerdictJson {
                    kind: "min_splitting",
                    passed,
                    detail: (),
                },
                || format!("{}\n", out.verdict(passed)),
            )?;
            Ok(passed)
        }
    }
}

fn as_pattern(v: Vec<u32>) -> anyhow::Result<BTreeSet<u32>> {
    if v.is_empty() {
        bail!("empty pattern");
    }
    Ok(v.into_iter().collect())
}
