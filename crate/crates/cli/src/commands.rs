use std::collections::BTreeMap;
use std::path::Path;

use loggas::electrostatics::{
    equilibrium_superpotential, solve_equilibrium, EquilibriumOptions, Superpotential,
};
use loggas::numerics::{Ellipse, Interval, QuadratureRule, RandomStream};
use loggas::orthopoly::{OrthogonalFamily, PointConfiguration};
use loggas::qhj::{contour_quantization, polynomial_spectrum, schrodinger_spectrum, susy_partners};
use loggas::rmt::{
    dyson_flow_with, empirical_cdf, histogram, ks_distance, log_jpdf, metropolis_run,
    metropolis_sample, pooled_scaled, replicate, sample_gaussian_ensemble,
    sample_tridiagonal_beta, semicircle_cdf, EnsembleSpec, JpdfForm, MetropolisConfig,
    MetropolisDiagnostics, SpectralSample,
};
use loggas::xpoly::{
    deformed_weight, exceptional_log_jpdf, exceptional_qmf, isospectral_check,
    ExceptionalLaguerreFamily, ExceptionalTarget, PoleKind,
};
use serde::Serialize;
use serde_json::Value;

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Report, Table};

/// Stringly-typed copy of a command's parameters for the run envelope.
pub fn params_of(args: &impl Serialize) -> BTreeMap<String, String> {
    let Ok(Value::Object(map)) = serde_json::to_value(args) else {
        return BTreeMap::new();
    };
    map.into_iter()
        .filter(|(_, v)| !v.is_null())
        .map(|(k, v)| {
            let s = match v {
                Value::String(s) => s,
                other => other.to_string(),
            };
            (k, s)
        })
        .collect()
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(domain(format!("--{name} must be positive, got {v}")))
    }
}

fn nonzero(name: &str, v: usize) -> CliResult<usize> {
    if v > 0 {
        Ok(v)
    } else {
        Err(domain(format!("--{name} must be at least 1")))
    }
}

fn family(args: &FamilyArgs) -> CliResult<OrthogonalFamily> {
    Ok(match args.family {
        FamilyName::Hermite => OrthogonalFamily::hermite(),
        FamilyName::Laguerre => OrthogonalFamily::laguerre(args.alpha)?,
        FamilyName::Jacobi => OrthogonalFamily::jacobi(args.a, args.b)?,
    })
}

fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn zeros(args: &ZerosArgs) -> CliResult<Report> {
    let fam = family(&args.family)?;
    let n = nonzero("n", args.n)?;
    let eig = || fam.zeros(n);
    let equilibrium = || -> CliResult<(PointConfiguration, Report)> {
        let w = equilibrium_superpotential(&fam);
        let res = solve_equilibrium(n, &w, None, EquilibriumOptions::default())?;
        let mut diag = Report::default()
            .diagnostic("iterations", res.iterations)
            .diagnostic("residual_norm", res.residual_norm)
            .diagnostic("converged", res.converged);
        if !res.converged {
            diag.convergence_failure = Some(format!(
                "equilibrium solver stopped after {} iterations at residual {:e}",
                res.iterations, res.residual_norm
            ));
        }
        Ok((res.points, diag))
    };
    let mut report = match args.method {
        ZerosMethod::Eig => {
            let mut t = Table::new(&["k", "x"]);
            for (k, &x) in eig()?.iter().enumerate() {
                t.push(vec![k.into(), x.into()]);
            }
            Report::new(t)
        }
        ZerosMethod::Equilibrium => {
            let (pts, extra) = equilibrium()?;
            let mut t = Table::new(&["k", "x"]);
            for (k, &x) in pts.iter().enumerate() {
                t.push(vec![k.into(), x.into()]);
            }
            Report { table: t, ..extra }
        }
        ZerosMethod::Both => {
            let a = eig()?;
            let (b, extra) = equilibrium()?;
            let mut t = Table::new(&["k", "eig", "equilibrium", "abs_diff"]);
            for (k, (&x, &y)) in a.iter().zip(b.iter()).enumerate() {
                t.push(vec![k.into(), x.into(), y.into(), (x - y).abs().into()]);
            }
            let worst = max_abs(a.iter().zip(b.iter()).map(|(x, y)| x - y));
            Report { table: t, ..extra }.summary("max_discrepancy", worst)
        }
    };
    report.diagnostics.insert("family".into(), fam.name().into());
    Ok(report)
}

pub fn equilibrium(args: &EquilibriumArgs) -> CliResult<Report> {
    let fam = family(&args.family)?;
    let n = nonzero("n", args.n)?;
    let w = equilibrium_superpotential(&fam);
    let opts = EquilibriumOptions {
        tol: positive("tol", args.tol)?,
        max_iter: args.max_iter,
    };
    let res = solve_equilibrium(n, &w, None, opts)?;
    let r = loggas::electrostatics::residual(&res.points, &w)?;
    let mut t = Table::new(&["k", "x", "residual"]);
    for (k, (&x, &rk)) in res.points.iter().zip(&r).enumerate() {
        t.push(vec![k.into(), x.into(), rk.into()]);
    }
    let mut report = Report::new(t)
        .diagnostic("iterations", res.iterations)
        .diagnostic("residual_norm", res.residual_norm)
        .diagnostic("converged", res.converged);
    if !res.converged {
        report.convergence_failure = Some(format!(
            "no convergence within {} iterations (residual {:e})",
            res.iterations, res.residual_norm
        ));
    }
    Ok(report)
}

pub fn qhj_spectrum(args: &QhjSpectrumArgs) -> CliResult<Report> {
    let omega = positive("omega", args.omega)?;
    let w = Superpotential::oscillator(0.5 * omega);
    let states = polynomial_spectrum(&w, nonzero("nmax", args.nmax)?)?;
    let grid: Vec<f64> = (0..=40).map(|i| -2.0 + 0.1 * i as f64).collect();
    let mut t = Table::new(&["n", "lambda", "exact", "leading_coefficient", "operator_residual"]);
    for s in &states {
        t.push(vec![
            s.n.into(),
            s.lambda.into(),
            (omega * s.n as f64).into(),
            s.f.leading().into(),
            s.operator_residual(&w, &grid).into(),
        ]);
    }
    let worst = max_abs(states.iter().map(|s| s.lambda - omega * s.n as f64));
    Ok(Report::new(t).summary("max_eigenvalue_error", worst))
}

pub fn quantize(args: &QuantizeArgs) -> CliResult<Report> {
    let fam = family(&args.family)?;
    let n = nonzero("n", args.n)?;
    let w = equilibrium_superpotential(&fam);
    let zeros = fam.zeros(n)?;
    let contour = Ellipse::enclosing_real(&zeros, &w.pole_locations())?;
    let j = contour_quantization(&fam.polynomial(n), &w, &contour)?;
    let mut t = Table::new(&["n", "J"]);
    t.push(vec![n.into(), j.into()]);
    Ok(Report::new(t)
        .summary("J", j)
        .diagnostic("family", fam.name())
        .diagnostic("semi_axes", vec![contour.semi_axes.0, contour.semi_axes.1]))
}

pub fn susy(args: &SusyArgs) -> CliResult<Report> {
    let omega = positive("omega", args.omega)?;
    let levels = nonzero("levels", args.levels)?;
    let w = Superpotential::oscillator(0.5 * omega);
    let partners = susy_partners(&w, 0.0);
    // Ground-state width is √(2/ω); eight widths on each side.
    let half = 8.0 * (2.0 / omega).sqrt();
    let plus = schrodinger_spectrum(|x| partners.plus(x), (-half, half), args.grid, levels + 1)?;
    let minus = schrodinger_spectrum(|x| partners.minus(x), (-half, half), args.grid, levels)?;
    let mut t = Table::new(&["level", "v_plus", "exact_plus", "v_minus", "exact_minus"]);
    for k in 0..levels {
        let kf = k as f64;
        t.push(vec![
            k.into(),
            plus[k].into(),
            (omega * kf).into(),
            minus[k].into(),
            (omega * (kf + 1.0)).into(),
        ]);
    }
    Ok(Report::new(t)
        .summary("max_error_plus", max_abs((0..levels).map(|k| plus[k] - omega * k as f64)))
        .summary("max_partner_shift_error", max_abs((0..levels).map(|k| minus[k] - plus[k + 1])))
        .diagnostic("interval", vec![-half, half]))
}

fn draw_samples(
    ensemble: EnsembleName,
    beta: Option<f64>,
    dim: usize,
    replicas: usize,
    seed: u64,
) -> CliResult<Vec<SpectralSample>> {
    let implied = match ensemble {
        EnsembleName::Goe => Some(1.0),
        EnsembleName::Gue => Some(2.0),
        EnsembleName::Gse => Some(4.0),
        EnsembleName::Tridiag => None,
    };
    let beta = match (implied, beta) {
        (Some(b), Some(given)) if b != given => {
            return Err(domain(format!("this ensemble has beta = {b}, got --beta {given}")))
        }
        (Some(b), _) => b,
        (None, Some(given)) => given,
        (None, None) => return Err(CliError::Usage("--beta is required for the tridiagonal model".into())),
    };
    let dim = nonzero("dim", dim)?;
    let replicas = nonzero("replicas", replicas)?;
    let out = if implied.is_some() {
        let spec = EnsembleSpec::hermite(beta, dim)?;
        replicate(seed, replicas, |s| sample_gaussian_ensemble(&spec, s))?
    } else {
        replicate(seed, replicas, |s| sample_tridiagonal_beta(dim, beta, s))?
    };
    Ok(out)
}

pub fn sample(args: &SampleArgs) -> CliResult<Report> {
    let samples = draw_samples(args.ensemble, args.beta, args.dim, args.replicas, args.seed)?;
    let factor = if args.scale { 1.0 / (args.dim as f64).sqrt() } else { 1.0 };
    let table = match args.bins {
        Some(bins) => {
            let mut pooled: Vec<f64> = samples
                .iter()
                .flat_map(|s| s.eigenvalues.iter().map(|x| x * factor))
                .collect();
            pooled.sort_by(f64::total_cmp);
            let (lo, hi) = (pooled[0], pooled[pooled.len() - 1]);
            let (lo, hi) = if lo < hi { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
            let mut t = Table::new(&["left", "right", "density"]);
            for (l, r, d) in histogram(&pooled, nonzero("bins", bins)?, lo, hi)? {
                t.push(vec![l.into(), r.into(), d.into()]);
            }
            t
        }
        None => {
            let mut t = Table::new(&["replica", "index", "eigenvalue"]);
            for s in &samples {
                for (i, &x) in s.eigenvalues.iter().enumerate() {
                    t.push(vec![(s.replica as usize).into(), i.into(), (x * factor).into()]);
                }
            }
            t
        }
    };
    Ok(Report::new(table)
        .diagnostic("method", samples[0].method.as_str())
        .diagnostic("beta", samples[0].spec.beta))
}

pub fn semicircle_test(args: &SemicircleArgs) -> CliResult<Report> {
    let ensemble = match args.beta {
        b if b == 1.0 => EnsembleName::Goe,
        b if b == 2.0 => EnsembleName::Gue,
        b if b == 4.0 => EnsembleName::Gse,
        b => return Err(domain(format!("dense ensembles need beta in {{1, 2, 4}}, got {b}"))),
    };
    let samples = draw_samples(ensemble, Some(args.beta), args.dim, args.replicas, args.seed)?;
    let pooled = pooled_scaled(&samples);
    let ks = ks_distance(&pooled, |x| semicircle_cdf(x, 2.0))?;
    let points = nonzero("points", args.points)?.max(2);
    let mut t = Table::new(&["x", "empirical_cdf", "semicircle_cdf"]);
    for i in 0..points {
        let x = -2.5 + 5.0 * i as f64 / (points - 1) as f64;
        t.push(vec![x.into(), empirical_cdf(&pooled, x).into(), semicircle_cdf(x, 2.0).into()]);
    }
    Ok(Report::new(t).summary("ks", ks).summary("pooled_count", pooled.len()))
}

fn acceptance_contract(report: &mut Report, diag: &MetropolisDiagnostics) {
    let rate = diag.acceptance_rate();
    report.diagnostics.insert("acceptance_rate".into(), rate.into());
    report.diagnostics.insert("proposals".into(), diag.proposals.into());
    if !(rate > 0.1 && rate < 0.9) {
        report.convergence_failure = Some(format!(
            "acceptance rate {rate:.4} outside (0.1, 0.9); adjust --step-scale"
        ));
    }
}

fn configuration_table(n: usize) -> Table {
    let mut cols = vec!["sample".to_string()];
    cols.extend((1..=n).map(|k| format!("x{k}")));
    cols.push("sum_sq".into());
    Table { columns: cols, rows: Vec::new() }
}

fn push_configuration(t: &mut Table, index: usize, x: &[f64]) -> f64 {
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let sum_sq: f64 = sorted.iter().map(|v| v * v).sum();
    let mut row: Vec<Cell> = vec![index.into()];
    row.extend(sorted.iter().map(|&v| Cell::from(v)));
    row.push(sum_sq.into());
    t.push(row);
    sum_sq
}

pub fn mcmc(args: &McmcArgs) -> CliResult<Report> {
    let n = nonzero("n", args.n)?;
    let config = MetropolisConfig {
        steps: nonzero("steps", args.steps)?,
        burn_in: args.burn_in,
        step_scale: match args.step_scale {
            Some(h) => positive("step-scale", h)?,
            None => MetropolisConfig::default_step_scale(n),
        },
        thin: nonzero("thin", args.thin)?,
    };
    let mut stream = RandomStream::new(args.seed);
    let mut t = configuration_table(n);
    let mut total = 0.0;
    let diag = if args.deformation.exceptional {
        if args.beta != 2.0 {
            return Err(domain(format!("the deformed gas is defined at beta = 2, got {}", args.beta)));
        }
        let fam = ExceptionalLaguerreFamily::new(args.deformation.g, args.deformation.l)?;
        // Start at the square roots of classical Laguerre zeros: positive and distinct.
        let start = OrthogonalFamily::laguerre(fam.delta + 1.0)?.zeros(n)?;
        let init: Vec<f64> = start.iter().map(|z| z.sqrt()).collect();
        let target = ExceptionalTarget { family: fam };
        let mut k = 0;
        metropolis_run(&target, &init, &config, &mut stream, |x| {
            total += push_configuration(&mut t, k, x);
            k += 1;
        })?
    } else {
        let spec = EnsembleSpec::new(args.beta, n, Superpotential::oscillator(positive("c", args.c)?))?;
        let (samples, diag) = metropolis_sample(&spec, &config, &mut stream)?;
        for (k, s) in samples.iter().enumerate() {
            total += push_configuration(&mut t, k, s);
        }
        diag
    };
    let count = t.rows.len();
    let mut report = Report::new(t).summary("mean_sum_sq", total / count as f64);
    acceptance_contract(&mut report, &diag);
    Ok(report)
}

pub fn dyson(args: &DysonArgs) -> CliResult<Report> {
    let n = nonzero("n", args.n)?;
    let c = positive("c", args.c)?;
    let every = nonzero("every", args.every)?;
    let beta = if args.deterministic { 0.0 } else { positive("beta", args.beta)? };
    let dt = positive("dt", args.dt)?;
    let w = Superpotential::oscillator(c);
    // Twice the equilibrium spread, shifted off-centre.
    let eq = OrthogonalFamily::hermite().zeros(n)?;
    let init: Vec<f64> = eq.iter().map(|z| (2.0 * z + 1.0) / c.sqrt()).collect();
    let init = PointConfiguration::new(init)?;

    let mut cols = vec!["step".to_string(), "time".to_string()];
    cols.extend((1..=n).map(|k| format!("x{k}")));
    cols.push("residual_norm".into());
    let mut t = Table { columns: cols, rows: Vec::new() };
    let emit = |t: &mut Table, step: usize, x: &[f64]| -> f64 {
        let r = loggas::electrostatics::residual(x, &w).map(max_abs).unwrap_or(f64::NAN);
        let mut row: Vec<Cell> = vec![step.into(), (step as f64 * dt).into()];
        row.extend(x.iter().map(|&v| Cell::from(v)));
        row.push(r.into());
        t.push(row);
        r
    };
    emit(&mut t, 0, &init);
    let burn = args.steps / 10;
    let (mut acc, mut count) = (0.0, 0usize);
    let mut last = f64::NAN;
    let mut stream = RandomStream::new(args.seed);
    let end = dyson_flow_with(&init, &w, beta, dt, args.steps, &mut stream, |step, x| {
        let k = step + 1;
        if k > burn {
            acc += x.iter().map(|v| v * v).sum::<f64>();
            count += 1;
        }
        if k % every == 0 || k == args.steps {
            last = emit(&mut t, k, x);
        }
    })?;
    if args.steps == 0 {
        last = max_abs(loggas::electrostatics::residual(&end, &w)?);
    }
    let mut report = Report::new(t).summary("final_residual_norm", last);
    if count > 0 {
        report = report.summary("time_avg_sum_sq", acc / count as f64);
    }
    Ok(report.diagnostic("beta", beta))
}

fn read_configurations(path: &Path) -> CliResult<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        match parsed {
            Ok(row) => out.push(row),
            Err(_) if out.is_empty() && i == 0 => continue,
            Err(e) => {
                return Err(CliError::Usage(format!("{}:{}: {e}", path.display(), i + 1)));
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("{}: no configurations", path.display())));
    }
    Ok(out)
}

pub fn jpdf(args: &JpdfArgs) -> CliResult<Report> {
    let configs = read_configurations(&args.points)?;
    if args.deformation.exceptional {
        if args.beta != 2.0 {
            return Err(domain(format!("the deformed gas is defined at beta = 2, got {}", args.beta)));
        }
        let fam = ExceptionalLaguerreFamily::new(args.deformation.g, args.deformation.l)?;
        let mut t = Table::new(&["row", "log_jpdf"]);
        for (k, x) in configs.iter().enumerate() {
            t.push(vec![k.into(), exceptional_log_jpdf(x, &fam)?.into()]);
        }
        return Ok(Report::new(t));
    }
    let w = Superpotential::oscillator(positive("c", args.c)?);
    let mut t = Table::new(&["row", "potential_form", "weight_form"]);
    for (k, x) in configs.iter().enumerate() {
        t.push(vec![
            k.into(),
            log_jpdf(x, args.beta, &w, JpdfForm::Potential)?.into(),
            log_jpdf(x, args.beta, &w, JpdfForm::Weight)?.into(),
        ]);
    }
    Ok(Report::new(t))
}

pub fn xlag(args: &XlagArgs) -> CliResult<Report> {
    let fam = ExceptionalLaguerreFamily::new(args.g, args.l)?;
    let first = if args.l == 0 { 0 } else { 1 };
    if args.nmax < first {
        return Err(domain(format!("--nmax must be at least {first}")));
    }
    let labels: Vec<usize> = (first..=args.nmax).collect();
    match args.task {
        XlagTask::Gram => {
            let gram = fam.gram_matrix(&labels)?;
            let mut t = Table::new(&["i", "j", "value", "relative"]);
            let mut worst = 0.0f64;
            for (a, row) in gram.iter().enumerate() {
                for (b, &v) in row.iter().enumerate() {
                    let rel = v / (gram[a][a] * gram[b][b]).sqrt();
                    if a != b {
                        worst = worst.max(rel.abs());
                    }
                    t.push(vec![labels[a].into(), labels[b].into(), v.into(), rel.into()]);
                }
            }
            Ok(Report::new(t).summary("max_offdiag_relative", worst))
        }
        XlagTask::Weight => {
            let mut t = Table::new(&["x", "weight"]);
            for i in 0..=120 {
                let x = 0.05 * i as f64;
                t.push(vec![x.into(), deformed_weight(x, &fam).into()]);
            }
            let rule = QuadratureRule::composite(Interval::half_line(0.0))?;
            Ok(Report::new(t).summary("mass", rule.integrate(|x| deformed_weight(x, &fam))))
        }
        XlagTask::Qmf => {
            let mut t = Table::new(&[
                "n", "kind", "re", "im", "residue_re", "residue_im", "numeric_re", "numeric_im", "abs_error",
            ]);
            let mut worst = 0.0f64;
            for &n in &labels {
                let (p, catalog) = exceptional_qmf(n, &fam)?;
                for c in catalog {
                    let r = p.numeric_residue_at(c.location)?;
                    let err = (r - c.residue).norm();
                    worst = worst.max(err);
                    let kind = match c.kind {
                        PoleKind::Moving => "moving",
                        PoleKind::Deformation => "deformation",
                        PoleKind::Origin => "origin",
                    };
                    t.push(vec![
                        n.into(),
                        kind.into(),
                        c.location.re.into(),
                        c.location.im.into(),
                        c.residue.re.into(),
                        c.residue.im.into(),
                        r.re.into(),
                        r.im.into(),
                        err.into(),
                    ]);
                }
            }
            Ok(Report::new(t).summary("max_residue_error", worst))
        }
        XlagTask::Isospectral => {
            let grid: Vec<f64> = (0..200).map(|i| 0.05 + 0.02 * i as f64).collect();
            let mut t = Table::new(&["n1", "n2", "spread", "gap", "expected_gap"]);
            let mut worst = 0.0f64;
            for &n2 in &labels {
                let (spread, gap) = isospectral_check(first, n2, &fam, &grid)?;
                if gap != 0.0 {
                    worst = worst.max(spread / gap.abs());
                }
                let expected = fam.energy(n2)? - fam.energy(first)?;
                t.push(vec![first.into(), n2.into(), spread.into(), gap.into(), expected.into()]);
            }
            Ok(Report::new(t).summary("max_relative_spread", worst))
        }
    }
}
