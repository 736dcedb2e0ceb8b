use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use artin_growth::census::{count_graph, CountTable, Method, DEFAULT_GUARD};
use artin_growth::charpoly::{a_script, d_script, e_script, k_script};
use artin_growth::coxeter::{build_family, CoxeterGraph, Family};
use artin_growth::hilbert::{mobius_denominator, series_from_charpoly, RationalSeries};
use artin_growth::spectra::{
    growth_bound, growth_bound_graph, isolate_all, GrowthBound, RootCertificate,
};
use artin_growth::verify::run_battery;
use artin_growth::IntPolynomial;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "artin-growth",
    version,
    about = "Growth of Artin monoids: counts, Hilbert series, certified root bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of monoid elements of each length.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Ceiling on n^k for brute-force enumeration.
        #[arg(long, env = "ARTIN_GROWTH_GUARD", default_value_t = DEFAULT_GUARD)]
        guard: u64,
        /// Also print counts split by first letter (recurrence only).
        #[arg(long)]
        starts: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rational Hilbert series of the right-angled companion.
    Series {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Certified isolation of the real roots of the characteristic polynomial.
    Roots {
        #[command(flatten)]
        input: Input,
        /// Isolation width: `2^-N`, `p/q` or an integer.
        #[arg(long, default_value = "2^-40")]
        width: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Certified upper bound below 4 on the growth rate.
    Growth {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the identity and certification battery.
    Verify {
        /// Largest rank used by the rank-indexed checks.
        #[arg(long, default_value_t = 40)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Clone)]
#[group(skip)]
#[command(group = ArgGroup::new("source").required(true).args(["family", "graph"]))]
struct Input {
    /// A, B, D, E, F4, G2, H, I2 (or I2:p), Kinf, free, freeabelian.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, requires = "family")]
    rank: Option<usize>,
    /// Label of the I2 diagram.
    #[arg(long, requires = "family")]
    p: Option<u32>,
    /// Graph file: first line `n`, then lines `i j label` (label an integer or `inf`).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Replace every label >= 3 by infinity.
    #[arg(long)]
    rightangled: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Recurrence,
    Canonical,
    Brute,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Recurrence => Method::Recurrence,
            MethodArg::Canonical => Method::Canonical,
            MethodArg::Brute => Method::Brute,
        }
    }
}

struct Resolved {
    family: Option<Family>,
    graph: CoxeterGraph,
    description: Value,
}

impl Input {
    fn resolve(&self) -> Result<Resolved> {
        let (family, graph, mut description) = match (&self.family, &self.graph) {
            (Some(name), None) => {
                let family = Family::from_parts(name, self.rank, self.p)?;
                (
                    Some(family),
                    build_family(family)?,
                    json!({ "family": family.to_string() }),
                )
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                (
                    None,
                    CoxeterGraph::from_text(&text)?,
                    json!({ "graph": path.display().to_string() }),
                )
            }
            _ => bail!("give exactly one of --family or --graph"),
        };
        description["rightangled"] = json!(self.rightangled);
        let graph = if self.rightangled {
            graph.right_angled()
        } else {
            graph
        };
        Ok(Resolved {
            family,
            graph,
            description,
        })
    }
}

fn metadata(command: &str, input: Value) -> Value {
    json!({
        "tool": "artin-growth",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input": input,
    })
}

fn parse_width(s: &str) -> Result<BigRational> {
    let w = if let Some(exp) = s.strip_prefix("2^-") {
        let e: u32 = exp
            .parse()
            .with_context(|| format!("bad exponent in width {s:?}"))?;
        BigRational::new(BigInt::from(1), BigInt::from(1) << e)
    } else {
        s.parse::<BigRational>()
            .map_err(|_| anyhow::anyhow!("width {s:?} is not 2^-N, p/q or an integer"))?
    };
    if w <= BigRational::from_integer(BigInt::from(0)) {
        bail!("width must be positive");
    }
    Ok(w)
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn cmd_count(
    input: &Input,
    max_k: usize,
    method: MethodArg,
    guard: u64,
    starts: bool,
    format: Format,
) -> Result<()> {
    let r = input.resolve()?;
    let table: CountTable = count_graph(r.family, &r.graph, max_k, method.into(), guard)?;
    let starts = if starts {
        match &table.starts {
            Some(s) => Some(s),
            None => bail!(
                "per-start counts need the recurrence; the {:?} route was used",
                table.method
            ),
        }
    } else {
        None
    };
    let n = r.graph.rank();
    match format {
        Format::Json => {
            let mut rows = Vec::new();
            for (k, total) in table.totals.iter().enumerate() {
                let mut row = json!({ "k": k, "count": total.to_string() });
                if let Some(s) = starts {
                    row["starts"] = json!(strings(&s[k]));
                }
                rows.push(row);
            }
            let mut meta = metadata("count", r.description);
            meta["method"] = json!(table.method);
            meta["guard"] = json!(guard);
            print_json(&json!({ "metadata": meta, "rows": rows }))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            let mut header = vec!["k".to_string(), "count".to_string()];
            if starts.is_some() {
                header.extend((1..=n).map(|i| format!("start_{i}")));
            }
            w.write_record(&header)?;
            for (k, total) in table.totals.iter().enumerate() {
                let mut rec = vec![k.to_string(), total.to_string()];
                if let Some(s) = starts {
                    rec.extend(strings(&s[k]));
                }
                w.write_record(&rec)?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            let mut out = format!("# method: {:?}\n", table.method).to_lowercase();
            for (k, total) in table.totals.iter().enumerate() {
                write!(out, "{k:>4}  {total}")?;
                if let Some(s) = starts {
                    write!(out, "  [{}]", strings(&s[k]).join(" "))?;
                }
                out.push('\n');
            }
            print!("{out}");
            Ok(())
        }
    }
}

/// Characteristic polynomial of the counting recurrence of the right-angled
/// companion, where a named ladder exists.
fn ladder_polynomial(family: Family) -> Result<Option<IntPolynomial>> {
    let n = family.rank();
    Ok(match family {
        Family::KInf(_) => Some(k_script(n)),
        Family::A(_) | Family::B(_) | Family::F4 | Family::G2 | Family::H(_) | Family::I2(_) => {
            Some(a_script(n))
        }
        Family::D(_) => Some(d_script(n)?),
        Family::E(_) => Some(e_script(n)?),
        Family::Free(_) | Family::FreeAbelian(_) => None,
    })
}

/// `(source, characteristic polynomial)`; falls back to the reversed Möbius
/// polynomial of the right-angled companion.
fn characteristic(r: &Resolved) -> Result<(&'static str, IntPolynomial)> {
    if let Some(p) = r.family.map(ladder_polynomial).transpose()?.flatten() {
        return Ok(("recurrence", p));
    }
    Ok((
        "mobius",
        mobius_denominator(&r.graph.right_angled())?.reciprocal(),
    ))
}

fn series_text(s: &RationalSeries) -> String {
    let num = s.numerator().display_in("t");
    let den = s.denominator().display_in("t");
    if num == "1" {
        format!("1/({den})")
    } else {
        format!("({num})/({den})")
    }
}

fn cmd_series(input: &Input, max_k: usize, format: Format) -> Result<()> {
    let r = input.resolve()?;
    let (source, p) = characteristic(&r)?;
    let series = series_from_charpoly(&p)?;
    match format {
        Format::Json => {
            let mut meta = metadata("series", r.description);
            meta["source"] = json!(source);
            let mut v = series.to_json(max_k)?;
            v["metadata"] = meta;
            print_json(&v)
        }
        Format::Text => {
            println!("H(t) = {}", series_text(&series));
            println!("{}", strings(&series.coefficients(max_k)?).join(", "));
            Ok(())
        }
        Format::Csv => bail!("CSV output covers count tables only"),
    }
}

fn certificate_text(cert: &RootCertificate) -> String {
    use num_traits::ToPrimitive;
    let mut out = format!(
        "polynomial: {}\nzero multiplicity: {}\n",
        cert.polynomial, cert.zero_multiplicity
    );
    for iv in &cert.intervals {
        let (lo, hi) = (
            iv.lo.to_f64().unwrap_or(f64::NAN),
            iv.hi.to_f64().unwrap_or(f64::NAN),
        );
        let _ = writeln!(
            out,
            "root in [{lo:.12}, {hi:.12}]  exact [{}, {}]",
            iv.lo, iv.hi
        );
    }
    let _ = writeln!(out, "not certified real: {}", cert.uncertified_count);
    out
}

fn cmd_roots(input: &Input, width: &str, format: Format) -> Result<()> {
    let r = input.resolve()?;
    let width = parse_width(width)?;
    let (source, p) = characteristic(&r)?;
    let cert = isolate_all(&p, &width)?;
    if !cert.verify() {
        bail!("certificate failed re-verification");
    }
    match format {
        Format::Json => {
            let mut meta = metadata("roots", r.description);
            meta["source"] = json!(source);
            meta["width"] = json!([width.numer().to_string(), width.denom().to_string()]);
            print_json(&json!({ "metadata": meta, "certificate": cert }))
        }
        Format::Text => {
            print!("{}", certificate_text(&cert));
            Ok(())
        }
        Format::Csv => bail!("CSV output covers count tables only"),
    }
}

fn cmd_growth(input: &Input, format: Format) -> Result<()> {
    let r = input.resolve()?;
    let bound: GrowthBound = match (r.family, input.graph.is_some()) {
        (Some(f), false) => growth_bound(f)?,
        _ => growth_bound_graph(&r.graph)?,
    };
    match format {
        Format::Json => {
            print_json(&json!({ "metadata": metadata("growth", r.description), "growth": bound }))
        }
        Format::Text => {
            use num_traits::ToPrimitive;
            println!(
                "growth rate < {} ({:.12})",
                bound.bound,
                bound.bound.to_f64().unwrap_or(f64::NAN)
            );
            for c in &bound.components {
                let routes: Vec<String> = c
                    .routes
                    .iter()
                    .map(|o| match (&o.bound, &o.error) {
                        (Some(b), _) => format!("{:?}: {b}", o.route),
                        (None, Some(e)) => format!("{:?}: failed ({e})", o.route),
                        (None, None) => format!("{:?}", o.route),
                    })
                    .collect();
                println!("  {}: {}  [{}]", c.label, c.bound, routes.join("; "));
            }
            Ok(())
        }
        Format::Csv => bail!("CSV output covers count tables only"),
    }
}

fn cmd_verify(max_n: usize, format: Format) -> Result<bool> {
    if max_n < 8 {
        bail!("--max-n must be at least 8");
    }
    let checks = run_battery(max_n);
    let ok = checks.iter().all(|c| c.passed);
    match format {
        Format::Json => print_json(&json!({
            "metadata": metadata("verify", json!({ "max_n": max_n })),
            "passed": ok,
            "checks": checks,
        }))?,
        Format::Text => {
            for c in &checks {
                println!(
                    "{} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
        }
        Format::Csv => bail!("CSV output covers count tables only"),
    }
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Count {
            input,
            max_k,
            method,
            guard,
            starts,
            format,
        } => cmd_count(&input, max_k, method, guard, starts, format).map(|_| true),
        Command::Series {
            input,
            max_k,
            format,
        } => cmd_series(&input, max_k, format).map(|_| true),
        Command::Roots {
            input,
            width,
            format,
        } => cmd_roots(&input, &width, format).map(|_| true),
        Command::Growth { input, format } => cmd_growth(&input, format).map(|_| true),
        Command::Verify { max_n, format } => cmd_verify(max_n, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
