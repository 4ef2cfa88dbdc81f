use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qprofile::counting::{
    orbit_stabilizer_identity_check, partitions_of, q_binomial, sigma_column_sum, sigma_poly, sigma_value,
    splitting_count, whittaker_coefficient,
};
use qprofile::ffield::{field_of_order, is_prime, prime_power};
use qprofile::fqlinalg::Vector;
use qprofile::fqpoly::{invariant_factors, smallest_irreducible};
use qprofile::oracle::{self, VerificationReport, DEFAULT_BUDGET};
use qprofile::profiles::profile;
use qprofile::{Error, FieldCtx, MatrixFq, PartialMap, Partition, PolyFq, Subspace};

#[derive(Parser)]
#[command(name = "qprofile", version, about = "Subspace profiles and exact subspace counts over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Upper bound on the number of objects an enumeration may visit.
    #[arg(long, global = true, env = "QPROFILE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Number of subspaces with profile MU under a simple operator.
    Sigma {
        #[arg(long)]
        mu: Partition,
        #[arg(long, value_parser = parse_q)]
        q: Option<u64>,
    },
    /// All partitions of N with their counts, plus the column-sum check.
    SigmaTable {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_q)]
        q: Option<u64>,
    },
    /// Brute-force check of the subspace counts for companion(POLY).
    Verify {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Coefficient codes, constant term first, or @file.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Number of m-dimensional splitting subspaces of F_{q^{md}}.
    Splitting {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_q)]
        q: u64,
        /// Cross-check by enumeration.
        #[arg(long)]
        brute: bool,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Signed coefficients of the q-Whittaker functions in p_n.
    Whittaker {
        #[arg(long)]
        n: usize,
    },
    /// Profile of a subspace under an operator.
    Profile {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        /// Square matrix, rows separated by `;`, or @file.
        #[arg(long)]
        matrix: String,
        /// Generators of the subspace, one per row, or @file.
        #[arg(long)]
        subspace: String,
    },
    /// Defect dimensions, invariant factors and simplicity of a partial map.
    Defect {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        /// `GENERATORS|IMAGES`, both in matrix format, or @file.
        #[arg(long)]
        map: String,
        /// Ambient dimension; needed only when there are no generators.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Every k-dimensional subspace of F_q^n, one RREF basis per line.
    Enumerate {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Orbit-stabilizer, duality and polynomiality checks.
    Selftest,
}

fn parse_q(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let q = match s.split_once('^') {
        Some((p, e)) => {
            let p: u64 = p.trim().parse().map_err(|_| format!("bad prime {p:?}"))?;
            let e: u32 = e.trim().parse().map_err(|_| format!("bad exponent {e:?}"))?;
            if !is_prime(p) {
                return Err(format!("{p} is not prime"));
            }
            if e == 0 {
                return Err("exponent must be positive".into());
            }
            p.checked_pow(e).ok_or("field order overflows")?
        }
        None => s.parse().map_err(|_| format!("bad field order {s:?}"))?,
    };
    prime_power(q).map(|_| q).ok_or(format!("{q} is not a prime power"))
}

/// Reads `@path` arguments from disk; anything else is taken literally.
fn inline_or_file(arg: &str) -> Result<String, Error> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn field(q: u64) -> Result<FieldCtx, Error> {
    field_of_order(q)
}

fn parse_poly(field: &FieldCtx, arg: Option<&String>) -> Result<Option<PolyFq>, Error> {
    arg.map(|a| PolyFq::parse_codes(field, &inline_or_file(a)?)).transpose()
}

/// What a subcommand produced: rendered output and whether every check held.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn report_output(report: &VerificationReport) -> Output {
    Output { text: report.to_table(), json: serde_json::to_value(report).expect("reports serialize"), ok: report.pass }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Sigma { mu, q } => {
            let poly = sigma_poly(mu)?;
            let mut text = String::new();
            let mut doc = json!({ "mu": mu, "poly": poly.to_string() });
            if let Some(q) = *q {
                let v = sigma_value(mu, q)?;
                let _ = writeln!(text, "{v}");
                doc["q"] = json!(q);
                doc["value"] = json!(v.to_string());
            }
            let _ = writeln!(text, "{poly}");
            Ok(Output::new(text, doc))
        }
        Command::SigmaTable { n, q } => {
            if *n == 0 {
                return Err(Error::Precondition("n must be positive".into()));
            }
            let mut text = String::new();
            let mut rows = Vec::new();
            for mu in partitions_of(*n) {
                let poly = sigma_poly(&mu)?;
                let mut row = json!({ "mu": mu, "poly": poly.to_string() });
                match q {
                    Some(q) => {
                        let v = sigma_value(&mu, *q)?;
                        let _ = writeln!(text, "{:<16} {v:>12}  {poly}", mu.to_string());
                        row["value"] = json!(v.to_string());
                    }
                    None => {
                        let _ = writeln!(text, "{:<16} {poly}", mu.to_string());
                    }
                }
                rows.push(row);
            }
            let mut ok = true;
            let mut sums = Vec::new();
            for m in 1..=*n {
                let sum = sigma_column_sum(*n, m)?;
                let expected = q_binomial(*n, m);
                let good = sum == expected;
                ok &= good;
                let _ = writeln!(
                    text,
                    "column mu_1={m}: {}  [{n} {m}]_q = {expected}",
                    if good { "ok" } else { "MISMATCH" }
                );
                sums.push(json!({ "m": m, "sum": sum.to_string(), "expected": expected.to_string(), "ok": good }));
            }
            let doc = json!({ "n": n, "q": q, "rows": rows, "column_sums": sums, "pass": ok });
            Ok(Output { text, json: doc, ok })
        }
        Command::Verify { q, n, poly } => {
            let f = field(*q)?;
            let poly = parse_poly(&f, poly.as_ref())?;
            let report = oracle::verify_sigma(&f, *n, poly.as_ref(), cli.budget, cli.threads)?;
            Ok(report_output(&report))
        }
        Command::Splitting { m, d, q, brute, poly } => {
            let value = splitting_count(*m, *d, *q)?;
            let mut text = format!("{value}\n");
            let mut doc = json!({ "m": m, "d": d, "q": q, "value": value.to_string() });
            let mut ok = true;
            if *brute {
                let f = field(*q)?;
                let poly = parse_poly(&f, poly.as_ref())?;
                let count = oracle::splitting_brute(&f, *m, *d, poly.as_ref(), cli.budget)?;
                ok = count == value;
                let _ = writeln!(text, "brute force {count}: {}", if ok { "ok" } else { "MISMATCH" });
                doc["brute"] = json!(count.to_string());
                doc["pass"] = json!(ok);
            }
            Ok(Output { text, json: doc, ok })
        }
        Command::Whittaker { n } => {
            if *n == 0 {
                return Err(Error::Precondition("n must be positive".into()));
            }
            let mut text = String::new();
            let mut rows = Vec::new();
            for mu in partitions_of(*n) {
                let c = whittaker_coefficient(&mu)?;
                let _ = writeln!(text, "{:<16} {c}", mu.to_string());
                rows.push(json!({ "mu": mu, "coefficient": c.to_string() }));
            }
            Ok(Output::new(text, json!({ "n": n, "rows": rows })))
        }
        Command::Profile { q, matrix, subspace } => {
            let f = field(*q)?;
            let t = MatrixFq::parse(&f, &inline_or_file(matrix)?, None)?;
            if !t.is_square() {
                return Err(Error::NotSquare { rows: t.nrows(), cols: t.ncols() });
            }
            let gens = MatrixFq::parse(&f, &inline_or_file(subspace)?, Some(t.ncols()))?;
            let w = Subspace::row_space(&gens);
            let mu = profile(&t, &w)?;
            let doc = json!({ "q": q, "matrix": t.to_string(), "subspace": w.to_string(), "profile": mu });
            Ok(Output::new(format!("{mu}\n"), doc))
        }
        Command::Defect { q, map, n } => {
            let f = field(*q)?;
            let text = inline_or_file(map)?;
            let (gens, images) =
                text.split_once('|').ok_or_else(|| Error::Parse("map must look like GENERATORS|IMAGES".into()))?;
            let gens = MatrixFq::parse(&f, gens, *n)?;
            let n = gens.ncols();
            let images = MatrixFq::parse(&f, images, Some(n))?;
            let gens: Vec<Vector> = gens.rows().map(|r| r.to_vec()).collect();
            let images: Vec<Vector> = images.rows().map(|r| r.to_vec()).collect();
            let pm = PartialMap::from_generators(&f, n, &gens, &images)?;
            let chain = pm.defect_chain()?;
            let mu = pm.defect_dimensions()?;
            let factors = invariant_factors(&pm)?;
            let simple = pm.is_simple()?;
            let mut out = String::new();
            let _ = writeln!(out, "defect dimensions {mu}");
            let _ = writeln!(out, "chain {:?}", chain.dims);
            let _ = writeln!(out, "ell {}", chain.ell);
            let shown: Vec<String> = factors.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "invariant factors [{}]", shown.join(", "));
            let _ = writeln!(out, "{}", if simple { "simple" } else { "not simple" });
            let doc = json!({
                "q": q,
                "n": n,
                "domain": pm.domain().to_string(),
                "chain": chain.dims,
                "ell": chain.ell,
                "defect_dimensions": mu,
                "invariant_factors": factors.iter().map(|p| p.to_codes()).collect::<Vec<_>>(),
                "simple": simple,
            });
            Ok(Output::new(out, doc))
        }
        Command::Enumerate { q, n, k } => {
            let f = field(*q)?;
            let all: Vec<String> =
                oracle::enumerate_subspaces(&f, *n, *k, cli.budget)?.map(|w| w.to_string()).collect();
            let text = all.iter().map(|w| format!("{w}\n")).collect();
            Ok(Output::new(text, json!({ "q": q, "n": n, "k": k, "count": all.len(), "subspaces": all })))
        }
        Command::Selftest => selftest(cli),
    }
}

fn selftest(cli: &Cli) -> Result<Output, Error> {
    let mut checks = Vec::new();

    let bad: Vec<String> = (0..=10usize)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .filter(|&(n, k)| !orbit_stabilizer_identity_check(n, k))
        .map(|(n, k)| format!("({n},{k})"))
        .collect();
    checks.push(("orbit-stabilizer", bad.is_empty(), format!("0 <= k <= n <= 10, failures: {}", bad.len())));

    let f2 = field(2)?;
    let mut duality_ok = true;
    let mut operators = 0;
    for n in 1..=3 {
        let report = oracle::verify_duality(&f2, n, 20, cli.seed, cli.budget)?;
        duality_ok &= report.pass;
        operators += report.rows.len();
    }
    checks.push(("duality", duality_ok, format!("{operators} operators over F_2^n, n <= 3, seed {}", cli.seed)));

    let mut poly_ok = true;
    let mut seen = 0;
    for n in 1..=8 {
        for mu in partitions_of(n) {
            poly_ok &= sigma_poly(&mu).is_ok() && whittaker_coefficient(&mu).is_ok();
            seen += 1;
        }
        for m in 1..=n {
            poly_ok &= sigma_column_sum(n, m).map(|s| s == q_binomial(n, m)).unwrap_or(false);
        }
    }
    checks.push(("polynomiality", poly_ok, format!("{seen} partitions of n <= 8, exact divisions and column sums")));

    let mut sigma_ok = true;
    for (q, n) in [(2, 3), (2, 4), (3, 3)] {
        sigma_ok &=
            oracle::verify_sigma(&field(q)?, n, Some(&smallest_irreducible(&field(q)?, n)?), cli.budget, 1)?.pass;
    }
    checks.push(("subspace counts", sigma_ok, "(q,n) in (2,3), (2,4), (3,3)".to_string()));

    let ok = checks.iter().all(|c| c.1);
    let mut text = String::new();
    for (name, pass, detail) in &checks {
        let _ = writeln!(text, "{:<18} {}  {detail}", name, if *pass { "PASS" } else { "FAIL" });
    }
    let doc = json!({
        "checks": checks.iter().map(|(name, pass, detail)| json!({ "name": name, "pass": pass, "detail": detail })).collect::<Vec<_>>(),
        "pass": ok,
    });
    Ok(Output { text, json: doc, ok })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            let cause: Vec<&str> =
                msg.lines().map(str::trim).take_while(|l| !l.starts_with("Usage:")).filter(|l| !l.is_empty()).collect();
            eprintln!("{}", cause.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json values serialize")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("qprofile: {e}");
            ExitCode::from(2)
        }
    }
}
