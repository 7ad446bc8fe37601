use serde::Serialize;
use serde_json::json;

use nrgit::binary_forms::{classify_h, classify_sl2, classify_u, Divisor, LinParam};
use nrgit::envelope::{
    group_status, n_threshold, restrict_to_x, strong_envelope_report, table1, torus_case_status, unipotent_status,
    EnvParams,
};
use nrgit::oracle::{diff_report, unipotent_diff_report};
use nrgit::polytope::{int, rat, Rational};
use nrgit::vgit::{chamber_profile, flip_data, walls};
use nrgit::{Error, Exec};

use crate::report::Report;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::ScanExhausted(_) => CliError::Internal(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub disagreement: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, disagreement: false }
    }
}

pub type CmdResult = Result<Outcome, CliError>;

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim().parse::<Rational>().map_err(|_| CliError::Usage(format!("not a rational number: '{s}'")))
}

#[derive(Serialize)]
struct Thresholds {
    n_minus_tau_half: String,
    n_plus_tau_half: String,
    n_half: String,
}

fn thresholds(n: u32, lin: &LinParam) -> Thresholds {
    let n = int(n as i64);
    let tau = lin.tau();
    Thresholds {
        n_minus_tau_half: ((&n - &tau) / int(2)).to_string(),
        n_plus_tau_half: ((&n + &tau) / int(2)).to_string(),
        n_half: (n / int(2)).to_string(),
    }
}

pub fn cmd_classify(n: u32, m: i64, r: i64, profile: &str) -> CmdResult {
    let lin = LinParam::new(m, r)?;
    let d = Divisor::parse_profile(n, profile)?;
    let params = EnvParams::new(n, lin)?;
    let x = restrict_to_x(&d);
    let report = Report::new("classify")
        .input("n", n)
        .input("m", m)
        .input("r", r)
        .input("profile", profile)
        .field("divisor", &d, "multiplicity profile: at [1:0], at [0:1], generic roots")
        .field("tau", lin.tau().to_string(), "slope r/m")
        .field("status_h", classify_h(&d, &lin), "stability for the Borel subgroup under L_{m,r}")
        .field("status_sl2", classify_sl2(&d), "classical SL(2) stability")
        .field("status_u", classify_u(&d), "unipotent baseline: coincidence count against n/2")
        .field(
            "envelope",
            json!({
                "point": x.to_string(),
                "group_status": group_status(&x, &params),
                "torus_case_status": torus_case_status(&x, &params),
                "unipotent_status": unipotent_status(&x),
            }),
            "statuses of ([1:1:0], σ) in the envelope P² × P(V)",
        )
        .field("thresholds", thresholds(n, &lin), "(n − τ)/2 bounds the root at [1:0], (n + τ)/2 every other root");
    Ok(report.into())
}

pub fn cmd_table1(n: u32, m: i64, r: i64) -> CmdResult {
    let params = EnvParams::new(n, LinParam::new(m, r)?)?;
    let rows: Vec<_> = table1(&params)
        .into_iter()
        .map(|row| {
            json!({
                "family": row.family,
                "i": row.i,
                "fixed_point": row.label,
                "weight": row.weight.to_string(),
            })
        })
        .collect();
    let report = Report::new("table1")
        .input("n", n)
        .input("m", m)
        .input("r", r)
        .field("row_count", rows.len(), "3(n+1) torus-fixed points of P² × P(V)")
        .field("rows", rows, "T1 × T2 weight of each fixed point, symbolic in N");
    Ok(report.into())
}

pub fn cmd_walls(n: u32) -> CmdResult {
    let pieces = walls(n)?;
    let wall_values: Vec<String> = pieces.iter().filter(|w| w.is_wall()).map(|w| w.lo.to_string()).collect();
    let chambers: Vec<String> = pieces.iter().filter(|w| !w.is_wall()).map(|w| w.to_string()).collect();
    let report = Report::new("walls")
        .input("n", n)
        .field("walls", wall_values, "slopes 0, n and every q in (0, n) with n − q even")
        .field("chambers", chambers, "open intervals of constant stability");
    Ok(report.into())
}

pub fn cmd_chamber(n: u32, tau: &str) -> CmdResult {
    let tau = parse_rational(tau)?;
    let profile = chamber_profile(n, &tau)?;
    let report = Report::new("chamber").input("n", n).input("tau", &tau).field(
        "profile",
        profile,
        "kind and dimension of the quotient at this slope",
    );
    Ok(report.into())
}

pub fn cmd_flips(n: u32, tau: &str) -> CmdResult {
    let tau = parse_rational(tau)?;
    let f = flip_data(n, &tau)?;
    let flip = json!({
        "s": f.s,
        "e_plus": f.e_plus(),
        "e_minus": f.e_minus(),
        "slice_weights": f.slice_weights,
    });
    let report = Report::new("flips").input("n", n).input("tau", &tau).field(
        "flip",
        flip,
        "exceptional loci of the flip and the T1 weights on the normal slice",
    );
    Ok(report.into())
}

pub fn cmd_census(n: u32, m: i64, r: i64, exec: Exec) -> CmdResult {
    let lin = LinParam::new(m, r)?;
    let envelope = strong_envelope_report(n, &lin, exec)?;
    let diff = diff_report(n, &lin, exec)?;
    let disagreement = !diff.is_empty() || !envelope.holds();
    let report = Report::new("census")
        .input("n", n)
        .input("m", m)
        .input("r", r)
        .field("checked", diff.checked, "closed-form versus oracle comparisons performed")
        .field("census_diff", &diff.entries, "closed-form classifiers disagreeing with the brute-force oracle")
        .field("strong_envelope", &envelope, "intrinsic loci against the completely (semi)stable loci");
    Ok(Outcome { report, disagreement })
}

pub fn cmd_unipotent(n: u32, exec: Exec) -> CmdResult {
    let diff = unipotent_diff_report(n, exec)?;
    let disagreement = !diff.is_empty();
    let report = Report::new("unipotent")
        .input("n", n)
        .field("checked", diff.checked, "closed-form versus oracle comparisons performed")
        .field("census_diff", &diff.entries, "unipotent classifiers disagreeing with the SL(2)-only envelope oracle");
    Ok(Outcome { report, disagreement })
}

pub fn cmd_threshold(n: u32, m: i64, r: i64, exec: Exec) -> CmdResult {
    let lin = LinParam::new(m, r)?;
    let rep = n_threshold(n, &lin, exec)?;
    let report = Report::new("threshold")
        .input("n", n)
        .input("m", m)
        .input("r", r)
        .field("n0", rep.n0, "least N₀ of the doubling scan with concrete = symbolic on [N₀, 4N₀]")
        .field("last_disagreement", rep.last_disagreement, "largest N seen below N₀ where the answers differ");
    Ok(report.into())
}

pub fn positive_display_n(s: &str) -> Result<Rational, CliError> {
    let q = parse_rational(s)?;
    if q <= rat(0, 1) {
        return Err(CliError::Usage(format!("display value of N must be positive, got {q}")));
    }
    Ok(q)
}
