use std::fmt::Write as _;
use std::fs;

use brody_core::ensembles::catalog;
use brody_core::sim::{self, gof, histogram, lln_trace};
use brody_core::verify::{check_condition_8, check_condition_gencond, DISCRIMINANT_TOL};
use brody_core::{discriminant_constant, validate as validate_spec, Complex64, Driver, Error, SimConfig, SpacingLaw};
use serde::Serialize;

use crate::settings::Settings;
use crate::{CliError, LlnArgs, PdfArgs, Result, RunArgs};

const SAMPLE_N: usize = 100_000;
const VALIDATE_N: usize = 10_000;
const LLN_CHECKPOINTS: [usize; 4] = [10_000, 100_000, 1_000_000, 10_000_000];
const LAW_POINTS: usize = 401;

#[derive(Debug, Serialize)]
struct Summary {
    model: String,
    q: f64,
    seed: u64,
    n: usize,
    driver: Driver,
    law: String,
    k: Option<Complex64>,
    sample_mean: f64,
    mu_s: Option<f64>,
    ks: f64,
    ks_threshold: f64,
    chi2: f64,
    dof: usize,
    pass: bool,
    real_pairs: usize,
    conjugate_pairs: usize,
    discriminant_violations: usize,
    overflow: u64,
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// Seventeen significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn require_valid(s: &Settings) -> Result<brody_core::ValidationReport> {
    let report = validate_spec(&s.spec);
    if report.ok {
        Ok(report)
    } else {
        Err(CliError::Validation { model: s.spec.id.clone(), report: report.summary() })
    }
}

fn defined_k(s: &Settings) -> Result<Option<Complex64>> {
    match discriminant_constant(&s.spec) {
        Ok(k) => Ok(Some(k)),
        Err(Error::KUndefined(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn sample(args: &RunArgs) -> Result<()> {
    let s = Settings::resolve(args, SAMPLE_N)?;
    require_valid(&s)?;
    let law = s.gof_law()?;
    let config = SimConfig { bins: s.bins, z_max: s.zmax, law, ..SimConfig::new(s.spec.clone(), s.n, s.seed) };
    let set = s.in_pool(|| sim::run(&config))??;
    let hist = histogram(&set.scaled, s.bins, s.zmax)?;
    let report = gof(&set, &hist, &law)?;
    let k = defined_k(&s)?;

    let mut csv = String::from("bin_left,bin_right,density\n");
    for (e, d) in hist.edges.windows(2).zip(&hist.densities) {
        let _ = writeln!(csv, "{},{},{}", num(e[0]), num(e[1]), num(*d));
    }
    fs::write(s.out_path("histogram.csv")?, csv)?;

    let mut curve = String::from("z,pdf\n");
    for i in 0..LAW_POINTS {
        let z = s.zmax * i as f64 / (LAW_POINTS - 1) as f64;
        let _ = writeln!(curve, "{},{}", num(z), num(law.pdf(z)));
    }
    fs::write(s.out_path("law.csv")?, curve)?;

    let summary = Summary {
        model: s.spec.id.clone(),
        q: s.spec.q,
        seed: s.seed,
        n: s.n,
        driver: s.spec.driver,
        law: law.name(),
        k,
        sample_mean: set.sample_mean,
        mu_s: k.map(|k| s.spec.driver.mean_spacing(k.re, s.spec.q)),
        ks: report.ks,
        ks_threshold: report.ks_threshold,
        chi2: report.chi2,
        dof: report.dof,
        pass: report.pass,
        real_pairs: set.real_pairs,
        conjugate_pairs: set.conjugate_pairs,
        discriminant_violations: set.discriminant_violations,
        overflow: hist.overflow,
    };
    let json = serde_json::to_string_pretty(&summary)? + "\n";
    fs::write(s.out_path("summary.json")?, &json)?;
    fs::write(s.out_path("manifest.conf")?, s.manifest("sample"))?;
    print!("{json}");
    if s.gate && !report.pass {
        return Err(CliError::Gof {
            ks: report.ks,
            threshold: report.ks_threshold,
            violations: report.discriminant_violations,
        });
    }
    Ok(())
}

pub fn validate(args: &RunArgs) -> Result<()> {
    let s = Settings::resolve(args, VALIDATE_N)?;
    let report = validate_spec(&s.spec);
    println!("model: {} ({})", s.spec.id, s.spec.family.name());
    println!("q: {}", s.spec.q);
    println!("case: {}", report.case_label);
    match report.k {
        Some(k) => println!("k: {}", fmt_complex(k)),
        None => println!("k: undefined"),
    }
    if let Some(m) = report.mode {
        println!("mode: {}", serde_json::to_value(m)?.as_str().unwrap_or_default());
    }
    for v in &report.violations {
        println!("violation: {} (residual {:e})", v.condition, v.residual);
    }
    for note in &report.notes {
        println!("note: {note}");
    }
    if !report.ok {
        return Err(CliError::Validation { model: s.spec.id.clone(), report: report.summary() });
    }
    let (out, extra) = if report.k.is_some() {
        (s.in_pool(|| check_condition_8(&s.spec, s.n, s.seed, DISCRIMINANT_TOL))??, None)
    } else {
        let g = s.in_pool(|| check_condition_gencond(&s.spec, s.n, s.seed))??;
        let ks = (g.ks, g.ks_threshold);
        (g.discriminant, Some(ks))
    };
    println!(
        "discriminant: n={} max_relative_residual={:e} tolerance={:e} violations={}",
        out.checked,
        out.max_relative_residual,
        out.tolerance,
        out.violations.len()
    );
    if let Some((ks, th)) = extra {
        println!("weibull ks: {ks:e} (threshold {th:e})");
        if ks >= th {
            return Err(CliError::Verification(format!("ks {ks:e} exceeds {th:e}")));
        }
    }
    if !out.passed() {
        return Err(CliError::Verification(format!(
            "{} of {} samples exceed the discriminant tolerance (max residual {:e})",
            out.violations.len(),
            out.checked,
            out.max_relative_residual
        )));
    }
    Ok(())
}

fn checkpoints(s: &Settings) -> Result<Vec<usize>> {
    let mut list = match &s.checkpoints {
        Some(text) => text
            .split(',')
            .map(|v| v.trim().parse::<f64>().map(|x| x as usize))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| CliError::Usage(format!("bad checkpoint list `{text}`")))?,
        None => LLN_CHECKPOINTS.to_vec(),
    };
    if let Some(max) = s.max {
        list.retain(|&c| c <= max);
        if list.is_empty() {
            list.push(max);
        }
    }
    Ok(list)
}

pub fn lln(args: &LlnArgs) -> Result<()> {
    let s = Settings::resolve_with(&args.run, args.max, args.checkpoints.clone(), 0)?;
    require_valid(&s)?;
    let marks = checkpoints(&s)?;
    let config = SimConfig::new(s.spec.clone(), *marks.last().unwrap_or(&1), s.seed);
    let trace = s.in_pool(|| lln_trace(&config, &marks))??;
    let mut csv = String::from("n,ratio\n");
    for (n, r) in trace {
        let _ = writeln!(csv, "{n},{}", num(r));
    }
    fs::write(s.out_path("lln.csv")?, &csv)?;
    fs::write(s.out_path("manifest.conf")?, s.manifest("lln"))?;
    print!("{csv}");
    Ok(())
}

pub fn pdf(args: &PdfArgs) -> Result<()> {
    let law = SpacingLaw::parse(&args.law, args.q, args.sigma, args.tau)?;
    if args.points < 2 || !(args.zmax > 0.0) {
        return Err(CliError::Usage("--points must be at least 2 and --zmax positive".into()));
    }
    let mut csv = String::from("z,pdf,cdf\n");
    for i in 0..args.points {
        let z = args.zmax * i as f64 / (args.points - 1) as f64;
        let _ = writeln!(csv, "{},{},{}", num(z), num(law.pdf(z)), num(law.cdf(z)));
    }
    match &args.out_dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("pdf.csv"), csv)?;
        }
        None => print!("{csv}"),
    }
    Ok(())
}

pub fn catalog() -> Result<()> {
    for e in catalog::ENTRIES {
        match catalog::fixed_q(e.id) {
            Some(q) => println!("{:<10} {} (q = {q} only)", e.id, e.description),
            None => println!("{:<10} {}", e.id, e.description),
        }
    }
    Ok(())
}
