//! The `latfm` command line.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 search budget
//! exhausted. Degrees on the command line are the geometric degree `2d`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::finite_form::{DiscriminantGroup, FiniteQuadraticModule};
use crate::fm_count::{distinct_prime_count, fm_count_rho1, fm_count_rho1_via_cosets, PolarizationDegree};
use crate::json::{matrix_to_json, parse_lattice, JsonInt};
use crate::lattice::{Lattice, Signature};
use crate::mukai::{distinct_classes, embed_polarized, mukai_partitions, ShadowSummary, SwapClass};
use crate::oracle::{find_isometry_bounded, InvariantMismatch, IsometrySearch, SearchBudget};
use crate::rank2::{build_family, polarization_orbits_in_u, Ambient};
use crate::selftest::{run_selftest, SelftestOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable holding the worker count. Output never depends on it.
pub const THREADS_ENV: &str = "LATFM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "latfm", version, about = "Lattice computations for Fourier-Mukai partners of K3 surfaces")]
struct Cli {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of Fourier-Mukai partners for Picard number one.
    FmCount {
        /// Geometric degree 2d.
        #[arg(long, required_unless_present = "range")]
        degree: Option<u64>,
        /// Inclusive range a..b of geometric degrees; odd values are skipped.
        #[arg(long, conflicts_with = "degree")]
        range: Option<String>,
    },
    /// Discriminant form of a lattice given as JSON.
    Disc {
        /// Lattice JSON, either {"rank":n,"gram":[...]} or a bare Gram matrix.
        #[arg(long, required_unless_present = "file")]
        gram: Option<String>,
        /// File holding the lattice JSON.
        #[arg(long, conflicts_with = "gram")]
        file: Option<std::path::PathBuf>,
    },
    /// Mukai vectors (r, h, s) with rs = d.
    Mukai {
        /// Geometric degree 2d.
        #[arg(long)]
        degree: u64,
        /// Also print the swap classes.
        #[arg(long)]
        classes: bool,
        /// Also compute the moduli lattice shadow of every vector.
        #[arg(long)]
        shadow: bool,
    },
    /// A family of N rank-2 lattices with one discriminant form.
    Family {
        /// Number of members N.
        #[arg(long)]
        count: u64,
        /// Geometric degree 2d of the first member.
        #[arg(long)]
        degree: u64,
        /// Lattice the members embed into.
        #[arg(long, default_value = "k3", value_parser = ["k3", "abelian"])]
        ambient: String,
    },
    /// Bounded isometry search between two lattices.
    Isometry {
        /// Source Gram matrix as JSON.
        #[arg(long)]
        gram1: String,
        /// Target Gram matrix as JSON.
        #[arg(long)]
        gram2: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Orbits of primitive degree-2d vectors of U under O(U).
    Orbits {
        /// Geometric degree 2d.
        #[arg(long)]
        degree: u64,
    },
    /// Runs the invariant suite.
    Selftest {
        /// Upper end of the d range for the counting checks.
        #[arg(long, default_value_t = 200)]
        range_d: u64,
        #[arg(long, hide = true)]
        corrupt_builtin: bool,
    },
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Sup-norm bound on the entries of a candidate matrix.
    #[arg(long, default_value_t = SearchBudget::default().entry_bound)]
    budget_entries: u64,
    /// Candidate vectors visited before giving up.
    #[arg(long, default_value_t = SearchBudget::default().node_limit)]
    budget_nodes: u64,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) | Error::Parse(m) => Failure::Usage(m),
            e => Failure::Domain(e),
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

fn degree(two_d: u64) -> std::result::Result<PolarizationDegree, Failure> {
    PolarizationDegree::from_degree(two_d).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult {
    let text = serde_json::to_string(value).map_err(|e| Failure::Domain(Error::Parse(e.to_string())))?;
    writeln!(out, "{text}").map_err(|e| Failure::Domain(Error::InvalidArgument(e.to_string())))
}

fn line(out: &mut dyn Write, s: impl AsRef<str>) -> CliResult {
    writeln!(out, "{}", s.as_ref()).map_err(|e| Failure::Domain(Error::InvalidArgument(e.to_string())))
}

/// Left-aligned text table.
fn table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> CliResult {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let fmt = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    line(out, fmt(header.iter().map(|h| h.to_string()).collect()))?;
    for r in rows {
        line(out, fmt(r.clone()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct FmRow {
    degree: u64,
    d: u64,
    p: u32,
    count: u64,
    double_cosets: u64,
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), Failure> {
    let bad = || Failure::Usage(format!("range must look like a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn fm_count(out: &mut dyn Write, json: bool, deg: Option<u64>, range: Option<String>) -> CliResult {
    let degrees: Vec<PolarizationDegree> = match (deg, range) {
        (Some(x), _) => vec![degree(x)?],
        (None, Some(r)) => {
            let (a, b) = parse_range(&r)?;
            (a.max(2)..=b)
                .filter(|x| x % 2 == 0)
                .map(degree)
                .collect::<std::result::Result<_, _>>()?
        }
        (None, None) => return Err(Failure::Usage("one of --degree, --range is required".into())),
    };
    let rows: Vec<FmRow> = degrees
        .par_iter()
        .map(|&d| {
            Ok(FmRow {
                degree: d.degree(),
                d: d.d(),
                p: distinct_prime_count(d.d()),
                count: fm_count_rho1(d),
                double_cosets: fm_count_rho1_via_cosets(d)?,
            })
        })
        .collect::<crate::error::Result<_>>()?;
    if json {
        return emit_json(out, &rows);
    }
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.degree.to_string(),
                r.d.to_string(),
                r.p.to_string(),
                r.count.to_string(),
                r.double_cosets.to_string(),
            ]
        })
        .collect();
    table(out, &["degree", "d", "p(d)", "|FM|", "cosets"], &body)
}

#[derive(Serialize)]
struct DiscOutput {
    rank: usize,
    determinant: JsonInt,
    signature: Signature,
    even: bool,
    order: JsonInt,
    ell: usize,
    factors: Vec<JsonInt>,
    module: Option<FiniteQuadraticModule>,
}

fn read_lattice(gram: Option<String>, file: Option<std::path::PathBuf>) -> std::result::Result<Lattice, Failure> {
    let text = match (gram, file) {
        (Some(g), _) => g,
        (None, Some(f)) => {
            std::fs::read_to_string(&f).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", f.display())))?
        }
        (None, None) => return Err(Failure::Usage("one of --gram, --file is required".into())),
    };
    match parse_lattice(&text) {
        Err(Error::Parse(m)) => Err(Failure::Usage(m)),
        other => Ok(other?),
    }
}

fn disc(out: &mut dyn Write, json: bool, lattice: Lattice) -> CliResult {
    let group = DiscriminantGroup::of(&lattice);
    let module = group.module().ok();
    let o = DiscOutput {
        rank: lattice.rank(),
        determinant: JsonInt(lattice.determinant()),
        signature: lattice.signature(),
        even: lattice.is_even(),
        order: JsonInt(group.order()),
        ell: group.factors().len(),
        factors: group.factors().iter().cloned().map(JsonInt).collect(),
        module,
    };
    if json {
        return emit_json(out, &o);
    }
    line(out, format!("rank       {}", o.rank))?;
    line(out, format!("det        {}", o.determinant.0))?;
    line(out, format!("signature  {}", o.signature))?;
    line(out, format!("even       {}", o.even))?;
    let factors: Vec<String> = o.factors.iter().map(|f| f.0.to_string()).collect();
    line(out, format!("A_L        order {}, factors [{}]", o.order.0, factors.join(", ")))?;
    if let Some(m) = &o.module {
        let q: Vec<String> = m.q_values().iter().map(|x| x.to_string()).collect();
        line(out, format!("q          [{}]", q.join(", ")))?;
        for (i, row) in m.b_values().iter().enumerate() {
            let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            line(out, format!("b[{i}]       [{}]", row.join(", ")))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct MukaiRow {
    r: i64,
    s: i64,
    i: Vec<u64>,
    j: Vec<u64>,
    square: i128,
    primitive: bool,
}

#[derive(Serialize)]
struct MukaiOutput {
    degree: u64,
    d: u64,
    vectors: Vec<MukaiRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<SwapClass>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shadows: Option<Vec<ShadowSummary>>,
}

fn mukai(out: &mut dyn Write, json: bool, deg: u64, classes: bool, shadow: bool) -> CliResult {
    let d = degree(deg)?;
    let parts = mukai_partitions(d);
    let vectors: Vec<_> = parts.iter().map(|(_, v)| *v).collect();
    let rows = parts
        .iter()
        .map(|(p, v)| MukaiRow {
            r: v.r,
            s: v.s,
            i: p.i.iter().map(|&k| p.blocks[k]).collect(),
            j: p.j.iter().map(|&k| p.blocks[k]).collect(),
            square: v.square(),
            primitive: v.is_primitive(),
        })
        .collect();
    let shadows = if shadow {
        let polarized = embed_polarized(d);
        let s = vectors
            .par_iter()
            .map(|v| polarized.shadow(v).map(|s| s.summary()))
            .collect::<crate::error::Result<Vec<_>>>()?;
        Some(s)
    } else {
        None
    };
    let o = MukaiOutput {
        degree: d.degree(),
        d: d.d(),
        vectors: rows,
        classes: classes.then(|| distinct_classes(&vectors)),
        shadows,
    };
    if json {
        return emit_json(out, &o);
    }
    let fmt_blocks = |b: &[u64]| format!("{{{}}}", b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    let body: Vec<Vec<String>> = o
        .vectors
        .iter()
        .map(|r| {
            vec![
                format!("({}, h, {})", r.r, r.s),
                fmt_blocks(&r.i),
                fmt_blocks(&r.j),
                r.square.to_string(),
                r.primitive.to_string(),
            ]
        })
        .collect();
    table(out, &["vector", "I", "J", "v^2", "primitive"], &body)?;
    if let Some(cs) = &o.classes {
        line(out, "")?;
        line(out, format!("{} swap classes", cs.len()))?;
        let body: Vec<Vec<String>> = cs
            .iter()
            .map(|c| {
                vec![
                    c.representative.to_string(),
                    c.members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
                ]
            })
            .collect();
        table(out, &["representative", "members"], &body)?;
    }
    if let Some(ss) = &o.shadows {
        line(out, "")?;
        let body: Vec<Vec<String>> = ss
            .iter()
            .map(|s| {
                vec![
                    s.vector.to_string(),
                    s.rank.to_string(),
                    s.determinant.0.to_string(),
                    s.even.to_string(),
                    s.signature.to_string(),
                    s.ns_square.0.to_string(),
                    (s.complement_matches && s.gram_matches).to_string(),
                ]
            })
            .collect();
        table(out, &["vector", "rank", "det", "even", "signature", "ns^2", "T matches"], &body)?;
    }
    Ok(())
}

fn family(out: &mut dyn Write, json: bool, count: u64, deg: u64, ambient: &str) -> CliResult {
    let d = degree(deg)?;
    let ambient: Ambient = ambient.parse()?;
    let f = build_family(count, d, ambient)?;
    if json {
        return emit_json(out, &f);
    }
    line(out, format!("n = {} ({} members, ambient {:?})", f.n, f.members.len(), f.ambient))?;
    let body: Vec<Vec<String>> = f
        .members
        .iter()
        .enumerate()
        .map(|(k, m)| vec![(k + 1).to_string(), m.d().to_string(), m.lattice().gram().to_string()])
        .collect();
    table(out, &["member", "d", "gram"], &body)?;
    line(out, "")?;
    let body: Vec<Vec<String>> = f
        .witnesses
        .iter()
        .zip(&f.attestations)
        .map(|(w, a)| {
            vec![
                format!("{}-{}", w.i, w.j),
                w.witness.alpha.to_string(),
                "non-isometric".to_string(),
                format!("rank {} {} l={}", a.attestation.rank, a.attestation.signature, a.attestation.ell),
            ]
        })
        .collect();
    table(out, &["pair", "alpha", "certificate", "complements"], &body)
}

#[derive(Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
enum IsometryOutput {
    Isometric { witness: Vec<Vec<JsonInt>> },
    NotIsometric { reason: InvariantMismatch },
    NotFound { budget: SearchBudget },
}

fn isometry(out: &mut dyn Write, json: bool, g1: String, g2: String, b: BudgetArgs) -> CliResult {
    let l1 = read_lattice(Some(g1), None)?;
    let l2 = read_lattice(Some(g2), None)?;
    let budget = SearchBudget::new(b.budget_entries, b.budget_nodes)?;
    let search = find_isometry_bounded(&l1, &l2, budget)?;
    if !json {
        return match &search {
            IsometrySearch::Found(w) => line(out, format!("isometric, witness {}", w.matrix())),
            IsometrySearch::NotIsometric(reason) => line(out, format!("not isometric: {reason:?} differs")),
            IsometrySearch::NotFoundWithinBounds => line(
                out,
                format!("no isometry with entries <= {} (not a proof of non-isometry)", budget.entry_bound),
            ),
        };
    }
    let o = match search {
        IsometrySearch::Found(w) => IsometryOutput::Isometric {
            witness: matrix_to_json(w.matrix()),
        },
        IsometrySearch::NotIsometric(reason) => IsometryOutput::NotIsometric { reason },
        IsometrySearch::NotFoundWithinBounds => IsometryOutput::NotFound { budget },
    };
    emit_json(out, &o)
}

fn orbits(out: &mut dyn Write, json: bool, deg: u64) -> CliResult {
    let o = polarization_orbits_in_u(degree(deg)?)?;
    if json {
        return emit_json(out, &o);
    }
    line(out, format!("{} orbits", o.count))?;
    let body: Vec<Vec<String>> = o
        .orbits
        .iter()
        .zip(&o.representatives)
        .map(|(orb, rep)| {
            vec![
                format!("{rep:?}"),
                orb.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(" "),
            ]
        })
        .collect();
    table(out, &["representative", "orbit"], &body)
}

fn selftest(out: &mut dyn Write, json: bool, range_d: u64, corrupt: bool) -> std::result::Result<bool, Failure> {
    if range_d == 0 {
        return Err(Failure::Usage("--range-d must be positive".into()));
    }
    let report = run_selftest(&SelftestOptions {
        range_d,
        corrupt_builtin: corrupt,
        ..SelftestOptions::default()
    });
    if json {
        emit_json(out, &report)?;
    } else {
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            line(out, format!("{status}  {:<28} {}  [{}]", c.name, c.claim, c.detail))?;
        }
    }
    Ok(report.passed())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let json = cli.json;
    match cli.command {
        Command::FmCount { degree, range } => fm_count(out, json, degree, range)?,
        Command::Disc { gram, file } => disc(out, json, read_lattice(gram, file)?)?,
        Command::Mukai {
            degree,
            classes,
            shadow,
        } => mukai(out, json, degree, classes, shadow)?,
        Command::Family {
            count,
            degree,
            ambient,
        } => family(out, json, count, degree, &ambient)?,
        Command::Isometry { gram1, gram2, budget } => isometry(out, json, gram1, gram2, budget)?,
        Command::Orbits { degree } => orbits(out, json, degree)?,
        Command::Selftest {
            range_d,
            corrupt_builtin,
        } => {
            return Ok(if selftest(out, json, range_d, corrupt_builtin)? {
                EXIT_OK
            } else {
                EXIT_DOMAIN
            })
        }
    }
    Ok(EXIT_OK)
}

fn thread_count() -> std::result::Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got {s:?}")),
        },
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let threads = match thread_count() {
        Ok(t) => t,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_DOMAIN;
        }
    };
    let mut buffer = Vec::new();
    let result = pool.install(|| dispatch(cli, &mut buffer));
    if out.write_all(&buffer).and_then(|_| out.flush()).is_err() {
        return EXIT_DOMAIN;
    }
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e @ Error::BudgetExhausted { .. })) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_BUDGET
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}
