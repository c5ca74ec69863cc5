//! Command-line front end: compute counting polynomials and their limits,
//! render tables, tabulate character families, take moments of factorization
//! statistics, run the verification suites, and run the brute-force census.
//!
//! Exit codes: 0 on success (and all checks passing), 1 on computation
//! errors or failed verification, 2 on usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use liminal::rational::parse_rat;
use liminal::{
    carlitz_degree_check, census, irr_count, liminal_irr, verify_against_closed_forms,
    verify_character_identities, verify_congruence, verify_dimension_identities,
    verify_liminal_reciprocity, verify_zeta_identities, CharKind, ClassFunction, Error, Fq,
    MonomialOrder, Partition, PolyQ, RatFuncQ, Report, Result, SeriesQ, Statistic, Vars,
};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "liminal",
    about = "Exact counts of monic polynomials over finite fields, their liminal limits, and the identities relating them",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count monic irreducible polynomials: M_{d,n}(q), or M_{d,inf}(q) for --n inf.
    Necklace {
        /// Total degree d >= 1.
        #[arg(long)]
        d: u32,
        /// Number of variables, or "inf" for the liminal limit.
        #[arg(long)]
        n: String,
        /// Print the expansion at q = 0 through q^N instead of the closed
        /// form; N defaults to n+7 (finite n) or 16 (liminal).
        #[arg(long, value_name = "N", num_args = 0..=1, default_missing_value = "default")]
        series: Option<String>,
    },

    /// Render a coefficient table: M_{3,n} rows or the scaled linear-factor
    /// moment rows.
    Table {
        #[arg(long, value_enum)]
        which: Which,
        /// Last row to print.
        #[arg(long, default_value_t = 5)]
        n_max: u32,
    },

    /// Run a verification suite; exit 0 only if every identity passes.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest degree d (suite-specific default).
        #[arg(long)]
        d_max: Option<u32>,
        /// Largest variable count n (congruence and degree suites).
        #[arg(long)]
        n_max: Option<u32>,
        /// Truncation order in t (zeta suite).
        #[arg(long, default_value_t = 10)]
        t_order: usize,
        /// Field size (oracle suite).
        #[arg(long)]
        q: Option<u32>,
        /// Variable count: a number, or "inf" (zeta and oracle suites).
        #[arg(long)]
        n: Option<String>,
    },

    /// Tabulate a character family psi, phi, or sigma.
    Chars {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        kind: String,
    },

    /// First moment of a factorization statistic over monic degree-d
    /// polynomials (or its liminal limit for --n inf).
    Moment {
        /// one | linear | sign | ell | indicator:<partition> | file:<path>.
        #[arg(long)]
        stat: String,
        #[arg(long)]
        d: u32,
        /// Number of variables, or "inf".
        #[arg(long)]
        n: String,
        /// Restrict to squarefree polynomials.
        #[arg(long)]
        squarefree: bool,
        /// Divide by the matching total count.
        #[arg(long)]
        expected: bool,
    },

    /// Exhaustive census of monic degree-d polynomials over F_q by
    /// factorization type.
    Census {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u8,
        #[arg(long)]
        d: u16,
        /// Monomial order used for "monic": gradedlex | lex.
        #[arg(long, default_value = "gradedlex")]
        order: String,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Which {
    M3n,
    Lmoment,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Suite {
    Reciprocity,
    Congruence,
    Zeta,
    Characters,
    Dimensions,
    Oracle,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Returns whether every check passed (always true for non-verify commands
/// that produce output).
fn run(cli: &Cli) -> Result<bool> {
    let (text, all_pass) = match &cli.command {
        Command::Necklace { d, n, series } => {
            (cmd_necklace(*d, n, series.as_deref(), cli.format)?, true)
        }
        Command::Table { which, n_max } => (cmd_table(*which, *n_max, cli.format)?, true),
        Command::Verify {
            suite,
            d_max,
            n_max,
            t_order,
            q,
            n,
        } => {
            let report = run_suite(*suite, *d_max, *n_max, *t_order, *q, n.as_deref())?;
            let pass = report.all_pass();
            (render_report(&report, cli.format)?, pass)
        }
        Command::Chars { d, kind } => (cmd_chars(*d, kind, cli.format)?, true),
        Command::Moment {
            stat,
            d,
            n,
            squarefree,
            expected,
        } => (
            cmd_moment(stat, *d, n, *squarefree, *expected, cli.format)?,
            true,
        ),
        Command::Census { q, n, d, order } => (cmd_census(*q, *n, *d, order, cli.format)?, true),
    };

    match &cli.out {
        Some(path) => fs::write(path, text.as_bytes())
            .map_err(|e| Error::Parse(format!("cannot write {path}: {e}")))?,
        None => print!("{text}"),
    }
    Ok(all_pass)
}

fn csv_string(rows: &[Vec<String>]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for row in rows {
        wtr.write_record(row)
            .map_err(|e| Error::Parse(format!("csv: {e}")))?;
    }
    let bytes = wtr
        .into_inner()
        .map_err(|e| Error::Parse(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

fn json_string(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Long-format CSV of one polynomial: exponent, coefficient.
fn poly_csv_rows(label: Option<&str>, poly: &PolyQ) -> Vec<Vec<String>> {
    poly.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut row = Vec::new();
            if let Some(l) = label {
                row.push(l.to_string());
            }
            row.push(i.to_string());
            row.push(c.to_string());
            row
        })
        .collect()
}

fn cmd_necklace(d: u32, n: &str, series: Option<&str>, format: Format) -> Result<String> {
    let vars = Vars::from_str(n)?;
    let func = match vars {
        Vars::Finite(nv) => RatFuncQ::from_poly(irr_count(d, nv)?),
        Vars::Infinite => liminal_irr(d)?,
    };
    let series_order = match series {
        None => None,
        Some("default") => Some(match vars {
            Vars::Finite(nv) => nv as usize + 7,
            Vars::Infinite => liminal::DEFAULT_ORDER,
        }),
        Some(s) => Some(
            s.parse::<usize>()
                .map_err(|e| Error::Parse(format!("--series {s:?}: {e}")))?,
        ),
    };

    if let Some(order) = series_order {
        let s = SeriesQ::at_zero(&func, order)?;
        return Ok(match format {
            Format::Table => format!("{s}\n"),
            Format::Json => json_string(&serde_json::to_value(&s).expect("series")),
            Format::Csv => {
                let mut rows = vec![vec!["exponent".into(), "coefficient".into()]];
                for (i, c) in s.coeffs().iter().enumerate() {
                    rows.push(vec![i.to_string(), c.to_string()]);
                }
                csv_string(&rows)?
            }
        });
    }

    Ok(match format {
        Format::Table => match func.as_poly() {
            Some(p) => format!("{p}\n"),
            None => format!("{func}\n"),
        },
        Format::Json => match func.as_poly() {
            Some(p) => json_string(&serde_json::to_value(p).expect("poly")),
            None => json_string(&serde_json::to_value(&func).expect("ratfunc")),
        },
        Format::Csv => match func.as_poly() {
            Some(p) => {
                let mut rows = vec![vec!["exponent".into(), "coefficient".into()]];
                rows.extend(poly_csv_rows(None, p));
                csv_string(&rows)?
            }
            None => {
                let mut rows = vec![vec!["part".into(), "exponent".into(), "coefficient".into()]];
                rows.extend(poly_csv_rows(Some("num"), func.num()));
                rows.extend(poly_csv_rows(Some("den"), func.den()));
                csv_string(&rows)?
            }
        },
    })
}

/// Rows of the m3n table: M_{3,n} printed through q^7 with an ellipsis when
/// the polynomial continues, matching the way the rows stabilize.
fn m3n_row(n: u32) -> Result<(PolyQ, bool)> {
    let m = irr_count(3, n)?;
    let shown = m.truncated(7);
    let truncated = m.degree() > Some(7);
    Ok((shown, truncated))
}

fn lmoment_row(n: u32) -> Result<PolyQ> {
    let linear = Statistic::linear(3)?;
    let scale = PolyQ::from_i64_coeffs(&[1, -1]).pow(3);
    Ok(&liminal::first_moment(&linear, n, true)? * &scale)
}

fn cmd_table(which: Which, n_max: u32, format: Format) -> Result<String> {
    if n_max == 0 || n_max > 8 {
        return Err(Error::OutOfRange(format!(
            "table rows support 1 <= n_max <= 8, got {n_max}"
        )));
    }
    let mut rows: Vec<(u32, PolyQ, bool)> = Vec::new();
    for n in 1..=n_max {
        match which {
            Which::M3n => {
                let (poly, truncated) = m3n_row(n)?;
                rows.push((n, poly, truncated));
            }
            Which::Lmoment => rows.push((n, lmoment_row(n)?, false)),
        }
    }
    let title = match which {
        Which::M3n => "M_{3,n}(q)",
        Which::Lmoment => "(1-q)^3 * sum of L over squarefree monic cubics",
    };

    Ok(match format {
        Format::Table => {
            let mut out = format!("n | {title}\n");
            for (n, poly, truncated) in &rows {
                let suffix = if *truncated { " + ..." } else { "" };
                out.push_str(&format!("{n} | {poly}{suffix}\n"));
            }
            out
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, poly, truncated)| {
                    serde_json::json!({
                        "n": n,
                        "coeffs": serde_json::to_value(poly).expect("poly"),
                        "truncated": truncated,
                    })
                })
                .collect();
            json_string(
                &serde_json::json!({ "which": format!("{which:?}").to_lowercase(), "rows": rows }),
            )
        }
        Format::Csv => {
            let mut out = vec![vec!["n".into(), "exponent".into(), "coefficient".into()]];
            for (n, poly, _) in &rows {
                out.extend(poly_csv_rows(Some(&n.to_string()), poly));
            }
            csv_string(&out)?
        }
    })
}

fn run_suite(
    suite: Suite,
    d_max: Option<u32>,
    n_max: Option<u32>,
    t_order: usize,
    q: Option<u32>,
    n: Option<&str>,
) -> Result<Report> {
    let mut report = Report::new();
    match suite {
        Suite::Reciprocity => report.extend(verify_liminal_reciprocity(d_max.unwrap_or(7))?),
        Suite::Congruence => {
            report.extend(verify_congruence(d_max.unwrap_or(6), n_max.unwrap_or(6))?)
        }
        Suite::Zeta => match n {
            Some(s) => report.extend(verify_zeta_identities(Vars::from_str(s)?, t_order)?),
            None => {
                for vars in [
                    Vars::Finite(1),
                    Vars::Finite(2),
                    Vars::Finite(3),
                    Vars::Infinite,
                ] {
                    report.extend(verify_zeta_identities(vars, t_order)?);
                }
            }
        },
        Suite::Characters => report.extend(verify_character_identities(d_max.unwrap_or(6))?),
        Suite::Dimensions => report.extend(verify_dimension_identities(d_max.unwrap_or(8))?),
        Suite::Oracle => {
            let q = q.unwrap_or(2);
            let nv = match n {
                Some(s) => match Vars::from_str(s)? {
                    Vars::Finite(v) => v,
                    Vars::Infinite => {
                        return Err(Error::OutOfRange(
                            "the census needs a finite variable count".into(),
                        ))
                    }
                },
                None => 2,
            };
            let field = Fq::make_field(q)?;
            for d in 1..=d_max.unwrap_or(4) {
                report.extend(verify_against_closed_forms(&field, nv as u8, d as u16)?);
            }
        }
        Suite::All => {
            report.extend(verify_liminal_reciprocity(d_max.unwrap_or(7))?);
            report.extend(verify_congruence(6, 6)?);
            for vars in [
                Vars::Finite(1),
                Vars::Finite(2),
                Vars::Finite(3),
                Vars::Infinite,
            ] {
                report.extend(verify_zeta_identities(vars, t_order)?);
            }
            report.extend(verify_character_identities(6)?);
            report.extend(verify_dimension_identities(8)?);
            report.extend(carlitz_degree_check(5, 4)?);
            for (q, nv, d_top) in [
                (2u32, 2u8, 4u16),
                (3, 2, 3),
                (2, 3, 3),
                (4, 1, 4),
                (5, 1, 3),
            ] {
                let field = Fq::make_field(q)?;
                for d in 1..=d_top {
                    report.extend(verify_against_closed_forms(&field, nv, d)?);
                }
            }
        }
    }
    Ok(report)
}

fn render_report(report: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Table => {
            let mut out = String::new();
            for e in report.entries() {
                let status = if e.pass { "pass" } else { "FAIL" };
                out.push_str(&format!("[{status}] {} {}", e.identity, e.params));
                if !e.pass {
                    out.push_str(&format!("\n       lhs = {}\n       rhs = {}", e.lhs, e.rhs));
                }
                out.push('\n');
            }
            let (total, failed) = (report.len(), report.failures().count());
            out.push_str(&format!("{}/{} identities hold\n", total - failed, total));
            out
        }
        Format::Json => json_string(&serde_json::to_value(report).expect("report")),
        Format::Csv => {
            let mut rows = vec![vec![
                "identity".into(),
                "params".into(),
                "pass".into(),
                "lhs".into(),
                "rhs".into(),
            ]];
            for e in report.entries() {
                rows.push(vec![
                    e.identity.clone(),
                    e.params.to_string(),
                    e.pass.to_string(),
                    e.lhs.clone(),
                    e.rhs.clone(),
                ]);
            }
            csv_string(&rows)?
        }
    })
}

fn cmd_chars(d: u32, kind: &str, format: Format) -> Result<String> {
    let kind = CharKind::from_str(kind)?;
    let family = match kind {
        CharKind::Psi => liminal::psi_family(d)?,
        CharKind::Phi => liminal::phi_family(d)?,
        CharKind::Sigma => liminal::sigma_family(d)?,
    };
    Ok(match format {
        Format::Table => {
            let mut out = format!("{kind}_{d}^k for k = 0..{}\n", d - 1);
            for lam in liminal::partitions_of(d)? {
                let vals: Vec<String> = (0..d).map(|k| family.value(k, &lam).to_string()).collect();
                out.push_str(&format!("({lam}): {}\n", vals.join(", ")));
            }
            out
        }
        Format::Json => json_string(&serde_json::to_value(&family).expect("family")),
        Format::Csv => {
            let mut header = vec!["partition".to_string()];
            header.extend((0..d).map(|k| format!("k{k}")));
            let mut rows = vec![header];
            for lam in liminal::partitions_of(d)? {
                let mut row = vec![lam.to_string()];
                row.extend((0..d).map(|k| family.value(k, &lam).to_string()));
                rows.push(row);
            }
            csv_string(&rows)?
        }
    })
}

fn resolve_statistic(name: &str, d: u32) -> Result<Statistic> {
    if let Some(path) = name.strip_prefix("file:") {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::BadStatistic(format!("cannot read {path}: {e}")))?;
        let table: BTreeMap<String, String> =
            serde_json::from_str(&text).map_err(|e| Error::BadStatistic(format!("{path}: {e}")))?;
        let values = table
            .iter()
            .map(|(k, v)| Ok((k.parse::<Partition>()?, parse_rat(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let cf = ClassFunction::new(d, values)?;
        Ok(Statistic::from_class_function(format!("file:{path}"), cf))
    } else {
        Statistic::builtin(name, d)
    }
}

fn cmd_moment(
    stat_name: &str,
    d: u32,
    n: &str,
    squarefree: bool,
    expected: bool,
    format: Format,
) -> Result<String> {
    let stat = resolve_statistic(stat_name, d)?;
    let vars = Vars::from_str(n)?;
    let value: RatFuncQ = if expected {
        liminal::expected_moment(&stat, vars, squarefree)?
    } else {
        match vars {
            Vars::Finite(nv) => RatFuncQ::from_poly(liminal::first_moment(&stat, nv, squarefree)?),
            Vars::Infinite => liminal::liminal_first_moment(&stat, squarefree)?,
        }
    };
    render_value(&value, format)
}

fn render_value(value: &RatFuncQ, format: Format) -> Result<String> {
    Ok(match format {
        Format::Table => match value.as_poly() {
            Some(p) => format!("{p}\n"),
            None => format!("{value}\n"),
        },
        Format::Json => match value.as_poly() {
            Some(p) => json_string(&serde_json::to_value(p).expect("poly")),
            None => json_string(&serde_json::to_value(value).expect("ratfunc")),
        },
        Format::Csv => match value.as_poly() {
            Some(p) => {
                let mut rows = vec![vec!["exponent".into(), "coefficient".into()]];
                rows.extend(poly_csv_rows(None, p));
                csv_string(&rows)?
            }
            None => {
                let mut rows = vec![vec!["part".into(), "exponent".into(), "coefficient".into()]];
                rows.extend(poly_csv_rows(Some("num"), value.num()));
                rows.extend(poly_csv_rows(Some("den"), value.den()));
                csv_string(&rows)?
            }
        },
    })
}

fn cmd_census(q: u32, n: u8, d: u16, order: &str, format: Format) -> Result<String> {
    let order = MonomialOrder::from_str(order)?;
    let field = Fq::make_field(q)?;
    let result = census(&field, n, d, order)?;
    Ok(match format {
        Format::Table => {
            let mut out = format!("monic degree-{d} polynomials in {n} variable(s) over F_{q}\n");
            out.push_str(&format!("irreducible: {}\n", result.irreducible));
            out.push_str("type | total | squarefree\n");
            for lam in liminal::partitions_of(d as u32)? {
                let counts = &result.types[&lam];
                out.push_str(&format!(
                    "({lam}) | {} | {}\n",
                    counts.total, counts.squarefree
                ));
            }
            out
        }
        Format::Json => json_string(&serde_json::to_value(&result).expect("census")),
        Format::Csv => {
            let mut rows = vec![vec![
                "q".into(),
                "n".into(),
                "d".into(),
                "partition".into(),
                "total".into(),
                "squarefree".into(),
            ]];
            for lam in liminal::partitions_of(d as u32)? {
                let counts = &result.types[&lam];
                rows.push(vec![
                    q.to_string(),
                    n.to_string(),
                    d.to_string(),
                    lam.to_string(),
                    counts.total.to_string(),
                    counts.squarefree.to_string(),
                ]);
            }
            csv_string(&rows)?
        }
    })
}
