//! Command-line front end. Exit codes: 0 decision reached, 1 internal
//! error, 2 invalid input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::algebra::{invariants, realize};
use crate::classify::{cross_check, enumerate, DEFAULT_PAIR_BUDGET, DEFAULT_TUPLE_BUDGET};
use crate::division::DivisionAlgebra;
use crate::error::Error;
use crate::flag::FlagPresentation;
use crate::group::{build_abelian, Group};
use crate::io::{
    build_division, build_group, class_lines, load_presentation, load_witness_file, resolve_witness, witness_to_json,
    DivisionSpec, GroupSpec, LoadError,
};
use crate::iso::{
    check_relation, equiv_check, equiv_elementary, induced_map, iso_algebras, verify_map, verify_witness, Verdict,
};

pub const BUDGET_ENV: &str = "FLAGISO_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "flagiso",
    version,
    about = "Graded isomorphism of upper block triangular matrix algebras"
)]
struct Cli {
    /// Worker threads for parallel searches (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a presentation file.
    Validate { file: PathBuf },
    /// Dimension of every homogeneous component.
    Dims {
        file: PathBuf,
        /// Also print the components of the powers of the radical.
        #[arg(long)]
        radical: bool,
    },
    /// Decide graded isomorphism.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Write the witness of an isomorphism to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Necessary conditions for graded equivalence.
    EquivCheck { a: PathBuf, b: PathBuf },
    /// Decide graded equivalence of elementary gradings.
    EquivElementary { a: PathBuf, b: PathBuf },
    /// Enumerate isomorphism classes of degree tuples.
    Classify {
        /// `2,2`, `Z2xZ2`, `S3`, or a JSON file holding a group object.
        #[arg(long)]
        group: String,
        /// Block sizes, e.g. `1,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<usize>,
        /// `trivial`, `pauli:T:U,V`, or a JSON file holding a division object.
        #[arg(long, default_value = "trivial")]
        division: String,
        /// Maximum number of tuples `|G|^n` to enumerate.
        #[arg(long)]
        budget: Option<u128>,
        /// Maximum number of pairwise isomorphism calls in cross-checks.
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        pair_budget: u128,
    },
    /// Re-check a witness file against two presentations.
    VerifyWitness { a: PathBuf, b: PathBuf, witness: PathBuf },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Failure {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Internal(msg) => Failure::Internal(format!("internal error: {msg}")),
            other => Failure::Input(format!("error: {other}")),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Internal(format!("internal error: output failed: {e}"))
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "internal error: cannot start worker threads: {e}");
            return 1;
        }
    };
    let mut buffer = Vec::new();
    let outcome = pool.install(|| dispatch(cli.command, &mut buffer));
    if out.write_all(&buffer).and_then(|_| out.flush()).is_err() {
        return 1;
    }
    match outcome {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "{msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { file } => cmd_validate(&file, out),
        Command::Dims { file, radical } => cmd_dims(&file, radical, out),
        Command::Iso { a, b, witness } => cmd_iso(&a, &b, witness.as_deref(), out),
        Command::EquivCheck { a, b } => {
            let (p, p2) = (load_presentation(&a)?, load_presentation(&b)?);
            render(&equiv_check(&p, &p2)?, &p, &p2, out)
        }
        Command::EquivElementary { a, b } => {
            let (p, p2) = (load_presentation(&a)?, load_presentation(&b)?);
            render(&equiv_elementary(&p, &p2)?, &p, &p2, out)
        }
        Command::Classify {
            group,
            blocks,
            division,
            budget,
            pair_budget,
        } => cmd_classify(&group, blocks, &division, budget, pair_budget, out),
        Command::VerifyWitness { a, b, witness } => cmd_verify_witness(&a, &b, &witness, out),
    }
}

fn cmd_validate(file: &Path, out: &mut dyn Write) -> Outcome {
    let p = load_presentation(file)?;
    let group = p.group();
    let support: Vec<&str> = p
        .division()
        .support()
        .members()
        .iter()
        .map(|&h| group.name(h))
        .collect();
    writeln!(out, "VALID")?;
    writeln!(out, "group order: {}", group.order())?;
    writeln!(
        out,
        "division support: {{{}}} (roots of order {})",
        support.join(", "),
        p.division().root_order()
    )?;
    writeln!(out, "blocks: {:?}", p.shape().blocks())?;
    writeln!(out, "tuple: ({})", p.tuple_names().join(", "))?;
    Ok(0)
}

fn cmd_dims(file: &Path, radical: bool, out: &mut dyn Write) -> Outcome {
    let p = load_presentation(file)?;
    let inv = invariants(&realize(&p));
    let group = p.group();
    for (u, d) in inv.dim_by_degree.iter().enumerate() {
        writeln!(out, "{}: {d}", group.name(group.elem(u)?))?;
    }
    if radical {
        for (c, level) in inv.radical_dims.iter().enumerate() {
            writeln!(out, "J^{}:", c + 1)?;
            for (u, d) in level.iter().enumerate() {
                writeln!(out, "  {}: {d}", group.name(group.elem(u)?))?;
            }
        }
    }
    Ok(0)
}

fn names(group: &Group, xs: impl IntoIterator<Item = crate::group::GroupElem>) -> String {
    xs.into_iter()
        .map(|x| group.name(x).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn render(verdict: &Verdict, p: &FlagPresentation, p2: &FlagPresentation, out: &mut dyn Write) -> Outcome {
    writeln!(out, "{}", verdict.token())?;
    match verdict {
        Verdict::Isomorphic(w) => {
            let group = p.group();
            let sigma: Vec<String> = w.sigma.iter().map(|s| (s + 1).to_string()).collect();
            writeln!(out, "shift g: {}", group.name(w.shift))?;
            writeln!(out, "sigma: [{}]", sigma.join(", "))?;
            writeln!(out, "h: [{}]", names(group, w.h.iter().copied()))?;
            writeln!(
                out,
                "map: {} basis elements, roots of unity of order {}",
                w.map.images.len(),
                w.map.root_order
            )?;
        }
        Verdict::NotIsomorphic(cert) => writeln!(out, "{cert}")?,
        Verdict::Equivalent(w) => {
            let (g1, g2) = (p.group(), p2.group());
            for (x, y) in &w.lambda {
                writeln!(out, "lambda: {} -> {}", g1.name(*x), g2.name(*y))?;
            }
            let sigma: Vec<String> = w.sigma.iter().map(|s| (s + 1).to_string()).collect();
            writeln!(out, "sigma: [{}]", sigma.join(", "))?;
            for (x, y) in &w.components {
                writeln!(out, "component: A_{} -> A'_{}", g1.name(*x), g2.name(*y))?;
            }
        }
        Verdict::NotEquivalent(reason) => writeln!(out, "{reason}")?,
        Verdict::Inconclusive(reason) => writeln!(out, "{reason}")?,
    }
    Ok(0)
}

fn cmd_iso(a: &Path, b: &Path, witness: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let (p, p2) = (load_presentation(a)?, load_presentation(b)?);
    let verdict = iso_algebras(&p, &p2)?;
    if let Verdict::Isomorphic(w) = &verdict {
        let (alg, alg2) = (realize(&p), realize(&p2));
        let report = verify_witness(&alg, &alg2, w);
        if !report.passed() {
            return Err(Failure::Internal(format!(
                "internal error: witness failed verification: {report}"
            )));
        }
        if let Some(path) = witness {
            std::fs::write(path, witness_to_json(w, &p, &alg, &alg2) + "\n")
                .map_err(|e| Failure::Input(format!("file error: {}: {e}", path.display())))?;
        }
    }
    render(&verdict, &p, &p2, out)
}

fn cmd_verify_witness(a: &Path, b: &Path, w: &Path, out: &mut dyn Write) -> Outcome {
    let (p, p2) = (load_presentation(a)?, load_presentation(b)?);
    if p.group() != p2.group() {
        return Err(Error::GroupMismatch("presentations are graded by different groups".into()).into());
    }
    let file = load_witness_file(w)?;
    let (alg, alg2) = (realize(&p), realize(&p2));
    let loaded = match resolve_witness(&file, &p, &alg, &alg2) {
        Ok(x) => x,
        Err(e) => {
            writeln!(out, "WITNESS_INVALID")?;
            writeln!(out, "{e}")?;
            return Ok(2);
        }
    };
    let report = verify_map(&alg, &alg2, &loaded.map);
    let relation = check_relation(&p, &p2, &loaded.data);
    let consistent =
        relation.is_ok() && induced_map(&p, &p2, &alg, &alg2, &loaded.data).is_ok_and(|m| m.same_map(&loaded.map));
    let valid = report.passed() && relation.is_ok() && consistent;
    writeln!(out, "{}", if valid { "WITNESS_VALID" } else { "WITNESS_INVALID" })?;
    writeln!(out, "{report}")?;
    for example in &report.examples {
        writeln!(out, "  {example}")?;
    }
    match &relation {
        Ok(()) => writeln!(out, "witness data satisfies the degree relation")?,
        Err(e) => writeln!(out, "witness data: {e}")?,
    }
    if relation.is_ok() {
        writeln!(
            out,
            "map {} the data",
            if consistent {
                "agrees with"
            } else {
                "differs from the map induced by"
            }
        )?;
    }
    Ok(if valid { 0 } else { 2 })
}

/// `2,2` / `Z2xZ2` / `Z4` / `S3`, or a JSON file.
fn parse_group_arg(arg: &str) -> std::result::Result<Group, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("file error: {arg}: {e}")))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("parse error: {arg}: {e}")))?;
        let value = value.get("group").cloned().unwrap_or(value);
        let spec: GroupSpec =
            serde_json::from_value(value).map_err(|e| Failure::Input(format!("parse error: {arg}: {e}")))?;
        return Ok(build_group(&spec)?);
    }
    let s = arg.trim();
    if let Some(n) = s.strip_prefix('S').and_then(|n| n.parse::<usize>().ok()) {
        return Ok(Group::symmetric(n)?);
    }
    let factors: Option<Vec<usize>> = s
        .split([',', 'x', '×'])
        .map(|part| part.trim().trim_start_matches('Z').parse().ok())
        .collect();
    match factors {
        Some(f) if !f.is_empty() => Ok(build_abelian(&f)?),
        _ => Err(Failure::Input(format!(
            "error: cannot read group {arg:?}; use e.g. 2,2 or Z2xZ2 or S3 or a JSON file"
        ))),
    }
}

/// `trivial` / `pauli:T:U,V`, or a JSON file.
fn parse_division_arg(arg: &str, group: Arc<Group>) -> std::result::Result<DivisionAlgebra, Failure> {
    let spec = if arg == "trivial" {
        DivisionSpec::Trivial
    } else if let Some(rest) = arg.strip_prefix("pauli:") {
        let (t, images) = rest
            .split_once(':')
            .ok_or_else(|| Failure::Input("error: expected pauli:T:U,V".into()))?;
        let t = t
            .parse()
            .map_err(|_| Failure::Input(format!("error: bad Pauli degree {t:?}")))?;
        DivisionSpec::Pauli {
            t,
            images: split_top_level(images),
        }
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("file error: {arg}: {e}")))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("parse error: {arg}: {e}")))?;
        let value = value.get("division").cloned().unwrap_or(value);
        serde_json::from_value(value).map_err(|e| Failure::Input(format!("parse error: {arg}: {e}")))?
    };
    Ok(build_division(group, &spec)?)
}

/// Split on commas outside parentheses, so `(1,0),(0,1)` gives two names.
fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = vec![String::new()];
    let mut depth = 0usize;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(String::new());
                continue;
            }
            _ => {}
        }
        parts.last_mut().unwrap().push(c);
    }
    parts
}

fn env_budget() -> std::result::Result<Option<u128>, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Input(format!("error: {BUDGET_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn cmd_classify(
    group: &str,
    blocks: Vec<usize>,
    division: &str,
    budget: Option<u128>,
    pair_budget: u128,
    out: &mut dyn Write,
) -> Outcome {
    let group = Arc::new(parse_group_arg(group)?);
    let d = parse_division_arg(division, group.clone())?;
    let budget = match budget {
        Some(b) => b,
        None => env_budget()?.unwrap_or(DEFAULT_TUPLE_BUDGET),
    };
    let table = enumerate(&d, blocks, budget)?;
    let check = cross_check(&d, &table, pair_budget)?;
    writeln!(out, "group: {}", table.group)?;
    writeln!(out, "blocks: {:?}", table.blocks)?;
    writeln!(out, "division: {}", table.division)?;
    writeln!(out, "tuples: {}", table.tuples)?;
    writeln!(out, "classes: {}", table.count())?;
    for (k, c) in table.classes.iter().enumerate() {
        writeln!(
            out,
            "{:>4}  ({})  orbit {}",
            k + 1,
            names(&group, c.representative.iter().copied()),
            c.orbit_size
        )?;
    }
    write!(
        out,
        "cross-check: {} representative pairs, {} members",
        check.representative_pairs, check.members_checked
    )?;
    match check.union_find_count {
        Some(n) => writeln!(out, ", union-find count {n}")?,
        None => writeln!(out, ", union-find skipped (pair budget)")?,
    }
    for line in class_lines(&table, &group) {
        writeln!(out, "{line}")?;
    }
    Ok(0)
}
