//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text destined for stdout and stderr, so it can be tested
//! without spawning a process.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::charpoly::{
    a_poly, a_poly_checked, d_n, d_tilde, e_poly, euler_char_pgl, h_bar, mhp_conj, pure_part, untwisted_series,
    verify, Check,
    ARoute, Variant,
};
use crate::error::Error;
use crate::exact::{poly_to_json, series_to_json, LaurentPoly};
use crate::gloracle;
use crate::n2ring;

/// Exit code for success or a passing check.
pub const EXIT_OK: i32 = 0;
/// Exit code for a failed check or identity.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for bad arguments or requests over budget.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "charvar", version, about = "Exact invariants of twisted GL_n character varieties")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Report failed checks as WARN and exit 0.
    #[arg(long, global = true)]
    pub report: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Both routes, failing if they differ.
    Both,
    Specialize,
    Hua,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    G0,
    G0u,
    G1,
    Gh,
    Duality,
    TMinusOne,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::G0 => Check::G0,
            CheckArg::G0u => Check::G0Univariate,
            CheckArg::G1 => Check::G1,
            CheckArg::Gh => Check::Gh,
            CheckArg::Duality => Check::Duality,
            CheckArg::TMinusOne => Check::TMinusOne,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Twisted,
    Untwisted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum M2What {
    Ring,
    Closed,
    Lefschetz,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// E-polynomial E_n(q) of the twisted GL_n character variety.
    Epoly {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        g: u32,
    },
    /// H̄_n(z, w).
    Hbar {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        g: u32,
    },
    /// Conjectural mixed Hodge polynomial H(q, t).
    Mhp {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        g: u32,
        /// Divide out (1+qt)^{2g}.
        #[arg(long)]
        pgl: bool,
        /// Print only the pure part, as a polynomial in t.
        #[arg(long)]
        pure: bool,
    },
    /// A-polynomial A_n(q).
    Apoly {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        g: u32,
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Euler characteristic of the PGL_n variety.
    Euler {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        g: u32,
    },
    /// Series whose T^n coefficient counts Hom(Γ_g, GL_n(F_q)).
    Untwisted {
        #[arg(short)]
        g: u32,
        #[arg(short = 'N')]
        order: u32,
    },
    /// Checks a generating-function identity.
    Verify {
        #[arg(long, value_enum)]
        check: CheckArg,
        /// Series order or largest n.
        #[arg(long, short = 'n', visible_alias = "order-n")]
        order: u32,
        #[arg(short, default_value_t = 2)]
        g: u32,
    },
    /// Brute-force count in GL_n(F_q) compared against the formulas.
    Oracle {
        #[arg(long, value_enum)]
        mode: OracleMode,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        q: u32,
        #[arg(short)]
        g: u32,
    },
    /// The n = 2 cohomology ring.
    M2 {
        #[arg(long, value_enum)]
        what: M2What,
        #[arg(short)]
        g: u32,
    },
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Payload {
    Ok { text: String, json: Value },
    Check { passed: bool, text: String, json: Value, failure: Option<String> },
}

/// Largest `n` for the univariate pipelines.
const MAX_N_Q: u32 = 10;
/// Largest `n` for the bivariate pipelines.
const MAX_N_ZW: u32 = 6;
const MAX_G: u32 = 12;

fn partition_count(n: u32) -> u64 {
    crate::partitions::partition_counts(n).iter().sum::<u64>()
}

fn budget(n: u32, g: u32, max_n: u32) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::Usage("n must be at least 1".into()));
    }
    if n > max_n || g > MAX_G {
        return Err(Error::Budget(format!(
            "n = {n}, g = {g} needs about {} hook products and a size-{n} plethystic log (limits n ≤ {max_n}, g ≤ {MAX_G})",
            partition_count(n)
        )));
    }
    Ok(())
}

fn poly_result(n: u32, g: u32, p: &LaurentPoly) -> Payload {
    Payload::Ok {
        text: p.to_string(),
        json: json!({ "n": n, "g": g, "d_n": d_n(n, g), "d_tilde": d_tilde(n, g), "payload": poly_to_json(p) }),
    }
}

fn dispatch(cmd: &Command) -> Result<Payload, Error> {
    match *cmd {
        Command::Epoly { n, g } => {
            budget(n, g, MAX_N_Q)?;
            Ok(poly_result(n, g, &e_poly(n, g)?))
        }
        Command::Hbar { n, g } => {
            budget(n, g, MAX_N_ZW)?;
            Ok(poly_result(n, g, &h_bar(n, g)?))
        }
        Command::Mhp { n, g, pgl, pure } => {
            budget(n, g, MAX_N_ZW)?;
            let h = mhp_conj(n, g, if pgl { Variant::Pgl } else { Variant::Gl })?;
            Ok(poly_result(n, g, &if pure { pure_part(&h) } else { h }))
        }
        Command::Apoly { n, g, route } => {
            budget(n, g, MAX_N_Q)?;
            let a = match route {
                Route::Both => a_poly_checked(n, g)?,
                Route::Specialize => a_poly(n, g, ARoute::Specialize)?,
                Route::Hua => a_poly(n, g, ARoute::Hua)?,
            };
            Ok(poly_result(n, g, &a))
        }
        Command::Euler { n, g } => {
            budget(n, g, MAX_N_Q)?;
            let chi = euler_char_pgl(n, g)?;
            Ok(Payload::Ok { text: chi.to_string(), json: json!({ "n": n, "g": g, "euler": chi }) })
        }
        Command::Untwisted { g, order } => {
            budget(order, g, MAX_N_Q)?;
            let s = untwisted_series(g, order)?;
            let text = s.coeffs().iter().enumerate().map(|(k, c)| format!("T^{k}: {c}")).collect::<Vec<_>>().join("\n");
            Ok(Payload::Ok { text, json: json!({ "g": g, "order": order, "series": series_to_json(s.coeffs()) }) })
        }
        Command::Verify { check, order, g } => {
            let check = Check::from(check);
            let max = match check {
                Check::G0Univariate | Check::Duality | Check::TMinusOne => MAX_N_Q,
                _ => MAX_N_ZW,
            };
            budget(order, g, max)?;
            let r = verify(check, order, g)?;
            let mut text = r.lines.join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            text.push_str(if r.passed { "PASS" } else { "FAIL" });
            let json = json!({
                "check": check.name(), "order": order, "g": g, "passed": r.passed,
                "lines": r.lines, "failure": r.failure,
            });
            Ok(Payload::Check { passed: r.passed, text, json, failure: r.failure })
        }
        Command::Oracle { mode, n, q, g } => oracle(mode, n, q, g),
        Command::M2 { what, g } => m2(what, g),
    }
}

fn oracle(mode: OracleMode, n: u32, q: u32, g: u32) -> Result<Payload, Error> {
    if g == 0 {
        return Err(Error::Usage("g must be at least 1".into()));
    }
    let order = gloracle::gl_order(n, q as u64);
    let (count, expected) = match mode {
        OracleMode::Twisted => {
            let count = gloracle::twisted_count(n, q, g)?;
            let e = e_poly(n, g)?.eval_int(&[q as i64])?;
            (count, e * crate::exact::rat((order / (q as u64 - 1)) as i64))
        }
        OracleMode::Untwisted => {
            let count = gloracle::hom_count(n, q, g)?;
            let c = untwisted_series(g, n)?.coeff(n as usize).eval_int(&[q as i64])?;
            let scale = crate::exact::rat(q as i64).pow(((g - 1) * n * n) as i32) * crate::exact::rat(order as i64);
            (count, c * scale)
        }
    };
    let count_r = crate::exact::Rational::from_integer(count.clone().into());
    let passed = count_r == expected;
    let failure = (!passed).then(|| format!("brute force {count} != formula {expected}"));
    let text = format!("count: {count}\nformula: {expected}\n{}", if passed { "PASS" } else { "FAIL" });
    let json = json!({
        "mode": match mode { OracleMode::Twisted => "twisted", OracleMode::Untwisted => "untwisted" },
        "n": n, "q": q, "g": g, "count": count.to_string(), "formula": expected.to_string(), "passed": passed,
    });
    Ok(Payload::Check { passed, text, json, failure })
}

fn m2(what: M2What, g: u32) -> Result<Payload, Error> {
    if g == 0 || g > 6 {
        return Err(if g == 0 {
            Error::Usage("g must be at least 1".into())
        } else {
            Error::Budget(format!("g = {g}: about {} basis monomials (limit g ≤ 6)", n2ring::skg_enumerate(g, 0).len()))
        });
    }
    match what {
        M2What::Ring => Ok(poly_result(2, g, &n2ring::mhp_m2_ring(g))),
        M2What::Closed => Ok(poly_result(2, g, &n2ring::mhp2_closed(g)?)),
        M2What::Lefschetz => {
            if g < 2 {
                return Err(Error::Usage("the Lefschetz check needs g ≥ 2".into()));
            }
            let pieces = n2ring::lefschetz_sweep(g)?;
            let bad = pieces.iter().find(|p| !p.is_isomorphism());
            let passed = bad.is_none();
            let mut lines: Vec<String> = pieces
                .iter()
                .map(|p| format!("l={} i={}: dim {} -> {}, rank {}", p.l, p.i, p.domain_dim, p.codomain_dim, p.rank))
                .collect();
            lines.push(if passed { "PASS".into() } else { "FAIL".into() });
            let json = json!({
                "g": g,
                "passed": passed,
                "pieces": pieces.iter().map(|p| json!({
                    "l": p.l, "i": p.i, "domain_dim": p.domain_dim, "codomain_dim": p.codomain_dim, "rank": p.rank,
                })).collect::<Vec<_>>(),
            });
            Ok(Payload::Check {
                passed,
                text: lines.join("\n"),
                json,
                failure: bad.map(|p| format!("l={} i={} is not an isomorphism", p.l, p.i)),
            })
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Budget(_) | Error::Parse(_) | Error::VarMismatch { .. } => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn render(format: Format, text: &str, json: &Value) -> String {
    match format {
        Format::Text => format!("{text}\n"),
        Format::Json => format!("{json}\n"),
    }
}

fn check_outcome(stdout: String, passed: bool, failure: Option<String>, report: bool) -> Outcome {
    let mut out = Outcome { code: EXIT_OK, stdout, stderr: String::new() };
    if !passed {
        let why = failure.unwrap_or_default();
        if report {
            out.stderr = format!("WARN: check failed: {why}\n");
        } else {
            out.code = EXIT_FAIL;
            out.stderr = format!("check failed: {why}\n");
        }
    }
    out
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let msg = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(Payload::Ok { text, json }) => Outcome { code: EXIT_OK, stdout: render(cli.format, &text, &json), stderr: String::new() },
        Ok(Payload::Check { passed, text, json, failure }) => {
            check_outcome(render(cli.format, &text, &json), passed, failure, cli.report)
        }
        Err(e) => {
            let code = exit_code(&e);
            if code == EXIT_FAIL && cli.report {
                Outcome { code: EXIT_OK, stdout: String::new(), stderr: format!("WARN: {e}\n") }
            } else {
                Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
            }
        }
    }
}
