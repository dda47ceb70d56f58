use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use royal_gamma::blaschke::{build_parametrization, Parametrization, ParametrizationDiagnostics};
use royal_gamma::gamma::{
    extract_royal_data, generate_h_nu, verify_royal_solution, GammaInnerFn, S0P0Kind, S0P0Solution,
    VerificationReport,
};
use royal_gamma::par::Exec;
use royal_gamma::pick::{
    build_pick_matrix, check_positive_definite, choose_tau_from, exceptional_set, BlaschkeData,
    Definiteness, ExceptionalSet, PdCheck,
};
use royal_gamma::pipeline::{
    self, Candidate, Rejection, SolveFailure, SolveOptions, SolveOutcome, MATCH_TOL,
};
use royal_gamma::{Complex64, Error, TolerancePolicy};

use crate::{plot, Cli, Command, Generator, SEED_TAU_VAR};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_UNSOLVABLE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// A failure carrying its exit code and a message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn unsolvable(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_UNSOLVABLE,
            message: message.into(),
        }
    }
}

impl From<SolveFailure> for Failure {
    fn from(f: SolveFailure) -> Self {
        Failure::unsolvable(f.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

pub fn run(cli: &Cli) -> u8 {
    let result = match cli.command {
        Command::Solve => solve(cli),
        Command::Verify => verify(cli),
        Command::Sweep => sweep(cli),
        Command::Blaschke => blaschke(cli),
        Command::Roundtrip => roundtrip(cli),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn options(cli: &Cli) -> Result<SolveOptions, Failure> {
    let mut tol = TolerancePolicy::default();
    if let Some(t) = cli.tol {
        tol.residual_tol = t;
    }
    if !tol.is_valid() {
        return Err(Failure::input("--tol must be a positive finite number"));
    }
    let tau_start = match std::env::var(SEED_TAU_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&i| i >= 1)
            .ok_or_else(|| Failure::input(format!("{SEED_TAU_VAR} must be a positive integer, got {v:?}")))?,
        Err(_) => 1,
    };
    Ok(SolveOptions {
        tol,
        omega_grid: cli.omega_grid,
        tau_start,
        exec: Exec::default(),
    })
}

fn read_input(cli: &Cli) -> Result<(String, String), Failure> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure::input("missing --input PATH"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok((path.display().to_string(), text))
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::input(format!("{name}: {e}")))
}

fn read_data(cli: &Cli) -> Result<BlaschkeData, Failure> {
    let (name, text) = read_input(cli)?;
    parse(&name, &text)
}

fn write_output(cli: &Cli, bytes: &[u8]) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::input(format!("cannot write to stdout: {e}"))),
    }
}

fn write_json<T: Serialize>(cli: &Cli, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    write_output(cli, text.as_bytes())
}

#[derive(Serialize)]
struct SolveReport<'a> {
    tau: Complex64,
    pick: &'a PdCheck,
    parametrization: &'a Parametrization,
    s0p0: &'a S0P0Solution,
    verified: usize,
    solutions: &'a [Candidate],
    rejections: &'a [Rejection],
}

fn solve(cli: &Cli) -> CmdResult {
    let opts = options(cli)?;
    let data = read_data(cli)?;
    let out = pipeline::solve(&data, &opts)?;
    let verified = out.verified().count();
    write_json(
        cli,
        &SolveReport {
            tau: out.tau,
            pick: &out.pick,
            parametrization: &out.param,
            s0p0: &out.s0p0,
            verified,
            solutions: &out.candidates,
            rejections: &out.rejections,
        },
    )?;
    eprintln!(
        "solve: {} candidate(s), {} verified, {} rejected",
        out.candidates.len(),
        verified,
        out.rejections.len()
    );
    Ok(if verified > 0 { EXIT_OK } else { EXIT_VERIFY })
}

#[derive(Deserialize)]
struct VerifyInput {
    h: GammaInnerFn,
    #[serde(default)]
    data: Option<BlaschkeData>,
}

fn failed_report(tol: &TolerancePolicy, flag: &str) -> VerificationReport {
    VerificationReport {
        tolerance: tol.residual_tol,
        residuals: Default::default(),
        metrics: Default::default(),
        flags: vec![flag.to_string()],
        pass: false,
    }
}

fn verify(cli: &Cli) -> CmdResult {
    let opts = options(cli)?;
    let tol = &opts.tol;
    let (name, text) = read_input(cli)?;
    let raw: Value = parse(&name, &text)?;
    let input: VerifyInput = if raw.get("h").is_some() {
        parse(&name, &text)?
    } else {
        VerifyInput {
            h: parse(&name, &text)?,
            data: None,
        }
    };
    let data = match input.data {
        Some(d) => Ok(d),
        None => extract_royal_data(&input.h, tol),
    };
    let report = match data {
        Ok(d) => verify_royal_solution(&input.h, &d, tol),
        Err(Error::RoyalRange) => failed_report(tol, "royal_range"),
        Err(Error::MultiplicityAboveOne(..)) => failed_report(tol, "multiplicity_above_one"),
        Err(e) => {
            eprintln!("verify: cannot extract royal data: {e}");
            failed_report(tol, "royal_data_unavailable")
        }
    };
    write_json(cli, &report)?;
    if report.pass {
        Ok(EXIT_OK)
    } else {
        eprintln!("verify: FAIL (flags: {:?}, max residual {:e})", report.flags, report.max_residual());
        Ok(EXIT_VERIFY)
    }
}

fn poly_json<T: Serialize>(p: &T) -> String {
    serde_json::to_string(p).expect("values serialize")
}

fn sweep(cli: &Cli) -> CmdResult {
    let opts = options(cli)?;
    let data = read_data(cli)?;
    let out = pipeline::solve(&data, &opts)?;
    if out.family().is_none() {
        return Err(Failure::unsolvable(
            "the (s0, p0) solution is unique, so there is no family to sweep",
        ));
    }
    let svg_path = if cli.plot {
        let path = cli
            .output
            .as_ref()
            .ok_or_else(|| Failure::input("--plot requires --output"))?;
        Some(path.with_extension("svg"))
    } else {
        None
    };

    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "omega_index", "omega_re", "omega_im", "t", "s0_re", "s0_im", "p0_re", "p0_im", "s_num",
        "s_den", "p_num", "p_den", "max_residual", "pass",
    ];
    let csv_err = |e: csv::Error| Failure::input(format!("csv: {e}"));
    w.write_record(header).map_err(csv_err)?;
    for c in &out.candidates {
        let m = &c.member;
        let (s, p) = (c.h.s(), c.h.p());
        w.write_record([
            c.omega_index.map_or(String::new(), |i| i.to_string()),
            m.omega.re.to_string(),
            m.omega.im.to_string(),
            m.t.to_string(),
            m.s0.re.to_string(),
            m.s0.im.to_string(),
            m.p0.re.to_string(),
            m.p0.im.to_string(),
            poly_json(&s.num),
            poly_json(&s.den),
            poly_json(&p.num),
            poly_json(&p.den),
            c.report.max_residual().to_string(),
            c.report.pass.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::input(format!("csv: {e}")))?;
    write_output(cli, &bytes)?;
    if let Some(path) = svg_path {
        let svg = plot::sweep_svg(&out);
        write_file(&path, svg.as_bytes())?;
    }
    eprintln!("sweep: {} accepted ω of {}", out.candidates.len(), opts.omega_grid);
    Ok(EXIT_OK)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

#[derive(Serialize)]
struct BlaschkeReport {
    tau: Complex64,
    pick: PdCheck,
    parametrization: Parametrization,
    diagnostics: ParametrizationDiagnostics,
    exceptional_set: ExceptionalSet,
}

fn blaschke(cli: &Cli) -> CmdResult {
    let opts = options(cli)?;
    let tol = &opts.tol;
    let data = read_data(cli)?;
    let numerical = |e: Error| Failure::unsolvable(format!("numerical failure: {e}"));
    let m = build_pick_matrix(&data, tol).map_err(numerical)?;
    let pick = check_positive_definite(&m, tol);
    if pick.class != Definiteness::Definite {
        return Err(Failure::unsolvable(format!(
            "not solvable (step 1): Pick matrix is {:?}",
            pick.class
        )));
    }
    let tau = choose_tau_from(&m, &data, opts.tau_start, tol).map_err(numerical)?;
    let param = build_parametrization(&m, &data, tau, tol).map_err(numerical)?;
    let report = BlaschkeReport {
        tau,
        pick,
        diagnostics: param.diagnostics(tol),
        exceptional_set: exceptional_set(&m, &data, tau, tol).map_err(numerical)?,
        parametrization: param,
    };
    write_json(cli, &report)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RoundTripReport<'a> {
    data: &'a BlaschkeData,
    tau: Complex64,
    kind: &'static str,
    matched: bool,
    distance: Option<f64>,
    omega: Option<Complex64>,
    match_tolerance: f64,
}

fn kind_name(out: &SolveOutcome) -> &'static str {
    match out.s0p0.kind {
        S0P0Kind::Unique(_) => "unique",
        S0P0Kind::Family(_) => "family",
        S0P0Kind::NoSolution => "no_solution",
    }
}

fn roundtrip(cli: &Cli) -> CmdResult {
    let opts = options(cli)?;
    let h = match cli.generator {
        Some(Generator::HNu) => generate_h_nu(cli.nu, cli.r).map_err(|e| Failure::input(e.to_string()))?,
        None => {
            let (name, text) = read_input(cli)?;
            parse(&name, &text)?
        }
    };
    let rt = match pipeline::roundtrip(&h, &opts) {
        Ok(rt) => rt,
        Err(SolveFailure::Numerical(e @ Error::MultiplicityAboveOne(..))) => {
            return Err(Failure::unsolvable(format!("inapplicable: {e}")));
        }
        Err(f) => return Err(f.into()),
    };
    let matched = rt.matched();
    write_json(
        cli,
        &RoundTripReport {
            data: &rt.data,
            tau: rt.outcome.tau,
            kind: kind_name(&rt.outcome),
            matched,
            distance: Some(rt.found.distance).filter(|d| d.is_finite()),
            omega: rt.found.omega,
            match_tolerance: MATCH_TOL,
        },
    )?;
    if matched {
        Ok(EXIT_OK)
    } else {
        eprintln!("roundtrip: no solution matches (best distance {:e})", rt.found.distance);
        Ok(EXIT_VERIFY)
    }
}
