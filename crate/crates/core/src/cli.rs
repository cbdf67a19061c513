//! Command-line front end. `main` forwards to [`run`].

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::alt::{AltComplex, AltGroup, EvenLeaf, Flavor, TableRow};
use crate::coxsys::CoxeterSystem;
use crate::engine::Caps;
use crate::error::{Error, Result};
use crate::experiment::{run_experiment, Question};
use crate::genfun::{
    affine_series, compare, gf_enumerated, type_a_plus, type_b_length, type_b_plus, Affine,
    MultiPoly, Statistic,
};
use crate::verify::verify;

#[derive(Parser, Debug)]
#[command(
    name = "coxalt",
    version,
    about = "Alternating subgroups of finite Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Node class of s0 and, for an even leaf, the derived system.
    Classify { file: PathBuf },
    /// Group orders, maximal lengths and layer sizes.
    Enumerate { file: PathBuf },
    /// Side-by-side TSV of W' and W+ (even leaf required).
    Table { file: PathBuf },
    /// Cover relations of one of the four orders.
    Poset {
        file: PathBuf,
        #[arg(long, value_parser = parse_flavor)]
        flavor: Flavor,
        /// Emit DOT: weak covers solid, strong-only covers dotted.
        #[arg(long)]
        dot: bool,
    },
    /// Facets and reduced homology ranks of the coset complex.
    Complex {
        file: PathBuf,
        /// Colors to keep, e.g. `r1,r3`.
        #[arg(long, value_delimiter = ',')]
        select: Option<Vec<String>>,
    },
    /// Enumerated generating function, optionally compared with a closed form.
    Series {
        file: PathBuf,
        #[arg(long, default_value = "ellR", value_parser = parse_stat)]
        stat: Statistic,
        #[arg(long)]
        closed: Option<Closed>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 8)]
        trunc: usize,
    },
    /// Runs every named check; several files are checked concurrently.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Reports on an open question without asserting an answer.
    Experiment {
        file: PathBuf,
        #[arg(long, value_parser = parse_question)]
        question: Question,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Closed {
    #[value(name = "typeA")]
    TypeA,
    #[value(name = "Bn")]
    Bn,
    #[value(name = "Bn_plus")]
    BnPlus,
    #[value(name = "affine-C")]
    AffineC,
    #[value(name = "affine-B")]
    AffineB,
}

fn parse_flavor(s: &str) -> std::result::Result<Flavor, String> {
    Flavor::parse(s)
        .ok_or_else(|| "expected left-weak, right-weak, left-strong or right-strong".into())
}

fn parse_stat(s: &str) -> std::result::Result<Statistic, String> {
    Statistic::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Statistic::ALL.iter().map(|s| s.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_question(s: &str) -> std::result::Result<Question, String> {
    Question::parse(s)
        .ok_or_else(|| "expected pl-unique, pl-implies-weak, graded or semilattice".into())
}

/// Parses `argv` (program name first), writes results to `out` and
/// diagnostics to `err`. Exit code: 0 success, 1 a check failed, 2 usage or
/// precondition error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            i32::from(!ok)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load(path: &Path) -> Result<CoxeterSystem> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(CoxeterSystem::parse(&text)?)
}

fn alt(path: &Path) -> Result<AltGroup> {
    AltGroup::with_caps(&load(path)?, Caps::from_env()?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Output text and whether every check passed.
fn execute(cmd: Command) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut ok = true;
    match cmd {
        Command::Classify { file } => {
            let sys = load(&file)?;
            let c = sys.classify_node();
            let _ = writeln!(out, "evenly-laced\t{}", yes(c.evenly_laced));
            let _ = writeln!(out, "leaf\t{}", yes(c.leaf));
            let _ = writeln!(out, "even-leaf\t{}", yes(c.even_leaf));
            if let Some(nb) = c.neighbor {
                let _ = writeln!(out, "neighbor\t{}", sys.label(nb));
            }
            if c.even_leaf {
                out.push_str("# derived system\n");
                out.push_str(&sys.derive_prime()?.serialize());
            }
        }
        Command::Enumerate { file } => {
            let a = alt(&file)?;
            let g = a.group();
            let mut layers = Vec::new();
            for &w in a.members() {
                let l = a.ell(w);
                if layers.len() <= l {
                    layers.resize(l + 1, 0);
                }
                layers[l] += 1;
            }
            let _ = writeln!(out, "order\t{}", g.order());
            let _ = writeln!(out, "alternating-order\t{}", a.order());
            let _ = writeln!(out, "max-length\t{}", g.max_length());
            let _ = writeln!(out, "max-alternating-length\t{}", layers.len() - 1);
            let _ = writeln!(out, "layers\t{}", join(g.layer_sizes()));
            let _ = writeln!(out, "alternating-layers\t{}", join(&layers));
        }
        Command::Table { file } => {
            let leaf = EvenLeaf::with_caps(&load(&file)?, Caps::from_env()?)?;
            let _ = writeln!(out, "{}", TableRow::HEADER);
            for row in leaf.table() {
                let _ = writeln!(out, "{}", row.to_tsv());
            }
        }
        Command::Poset { file, flavor, dot } => {
            let a = alt(&file)?;
            if dot {
                out.push_str(&a.orders_dot(flavor.is_left()));
            } else {
                let r = a.order_report(flavor);
                let _ = writeln!(out, "flavor\t{}", flavor.name());
                let _ = writeln!(out, "graded\t{}", yes(r.graded_by_length && r.graded));
                let _ = writeln!(out, "meet-semilattice\t{}", yes(r.meet_semilattice));
                let _ = writeln!(out, "thin\t{}", yes(r.thin));
                let max = r.unique_maximum.map_or("none".into(), |m| a.display(m));
                let _ = writeln!(out, "maximum\t{max}");
                for (u, v) in a.cover_edges(flavor) {
                    let _ = writeln!(out, "{u}\t{v}");
                }
            }
        }
        Command::Complex { file, select } => {
            let a = alt(&file)?;
            let mut c = AltComplex::build(&a)?;
            if let Some(names) = select {
                let j = names
                    .iter()
                    .map(|s| parse_color(s, a.rank()))
                    .collect::<Result<Vec<_>>>()?;
                c = c.type_select(&a, &j);
            }
            let _ = writeln!(
                out,
                "colors\t{}",
                join(c.colors().iter().map(|i| format!("r{i}")))
            );
            let _ = writeln!(out, "dimension\t{}", c.dimension());
            let _ = writeln!(out, "f-vector\t{}", join(c.f_vector()));
            let _ = writeln!(out, "homology\t{}", join(c.homology_ranks()?));
            out.push_str(&c.facet_listing());
        }
        Command::Series {
            file,
            stat,
            closed,
            n,
            trunc,
        } => {
            ok = series(&mut out, &file, stat, closed, n, trunc)?;
        }
        Command::Verify { files } => {
            let results: Vec<Result<String>> = std::thread::scope(|s| {
                let handles: Vec<_> = files
                    .iter()
                    .map(|f| s.spawn(move || verify_file(f)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("verify thread panicked"))
                    .collect()
            });
            for (file, r) in files.iter().zip(results) {
                let text = r?;
                ok &= !text.lines().any(|l| l.starts_with("FAIL"));
                if files.len() > 1 {
                    let _ = writeln!(out, "# {}", file.display());
                }
                out.push_str(&text);
            }
        }
        Command::Experiment { file, question } => {
            let a = alt(&file)?;
            let _ = writeln!(out, "question\t{}", question.name());
            for line in run_experiment(&a, question) {
                let _ = writeln!(out, "{line}");
            }
        }
    }
    Ok((out, ok))
}

fn verify_file(path: &Path) -> Result<String> {
    let checks = verify(&load(path)?, Caps::from_env()?)?;
    let mut out = String::new();
    for c in checks {
        let _ = writeln!(out, "{c}");
    }
    Ok(out)
}

/// Accepts `r2` or `2`.
fn parse_color(s: &str, n: usize) -> Result<usize> {
    let digits = s.trim().trim_start_matches('r');
    match digits.parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => Ok(i),
        _ => Err(Error::Invalid(format!("unknown color {s}"))),
    }
}

fn series(
    out: &mut String,
    file: &Path,
    stat: Statistic,
    closed: Option<Closed>,
    n: Option<u32>,
    trunc: usize,
) -> Result<bool> {
    let sys = load(file)?;
    let rank = sys.rank() as u32;
    let affine = match closed {
        Some(Closed::AffineC) => Some((Affine::CPlus, rank - 1)),
        Some(Closed::AffineB) => Some((Affine::BPlus, rank - 1)),
        _ => None,
    };
    if let Some((kind, default_n)) = affine {
        // the affine groups are infinite, so only the product is expanded
        let s = affine_series(kind, n.unwrap_or(default_n), trunc)?;
        let _ = writeln!(out, "closed\t{}", s.to_poly());
        return Ok(true);
    }
    let a = AltGroup::with_caps(&sys, Caps::from_env()?)?;
    let p = gf_enumerated(&a, stat)?;
    let _ = writeln!(out, "{}\t{p}", stat.name());
    let Some(kind) = closed else {
        return Ok(true);
    };
    let q: MultiPoly = match kind {
        Closed::TypeA => type_a_plus(n.unwrap_or(rank + 1))?,
        Closed::Bn => type_b_length(n.unwrap_or(rank)),
        Closed::BnPlus => type_b_plus(n.unwrap_or(rank)),
        Closed::AffineC | Closed::AffineB => unreachable!("handled above"),
    };
    let verdict = compare(&p, &q);
    let _ = writeln!(out, "closed\t{q}");
    let _ = writeln!(out, "{verdict}");
    Ok(verdict.is_equal())
}
