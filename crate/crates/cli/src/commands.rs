//! The four subcommands: profile, discharge, pressure, validate.

use rayon::prelude::*;

use sgflow_core::couette::{
    self, pressure_classical, PressureProblem, PressureSolve,
};
use sgflow_core::material::{
    check_dissipativity, ellipticity_indicator, etas_from_lengths, lengths_from_etas,
    BarusViscosity, LengthScales, Stretching,
};
use sgflow_core::numerics::{adaptive_quad, linspace};
use sgflow_core::poiseuille::{self, phi_strong, phi_weak, u_classical, u_strong, u_weak};
use sgflow_core::types::{FlowKind, ProfileMeta, RadialProfile};
use sgflow_core::{Adherence, Error as CoreError};

use crate::config::{Flow, OutFormat, RawConfig, RunConfig};
use crate::output::{fmt_f64, write_json, write_plot_stub, write_text, Table};
use crate::CliError;

/// Every emitted profile must satisfy its flow's ODE residual at this level
/// (checked on an 801-node resample before anything is written).
const RESIDUAL_GATE: f64 = 1e-3;
const RESIDUAL_GATE_NODES: usize = 801;
/// Discharge closed form and quadrature must agree to this level (exit 4).
const DISCHARGE_GATE: f64 = 1e-8;
/// Sanity bound on the dual-solver pressure gap (exit 4 beyond it); the
/// documented agreement of the two routes is ~1e-4 at N = 1600.
const PRESSURE_GATE: f64 = 1e-3;

fn core_err(e: CoreError) -> CliError {
    CliError::Solver(e.to_string())
}

fn dimensionless_u(flow: Flow, bc: Adherence, lam: &[f64; 5], sigma: f64) -> Result<f64, CoreError> {
    match (flow, bc) {
        (Flow::Poiseuille, Adherence::Strong) => {
            if lam[1] == 0.0 {
                Ok(u_classical(sigma))
            } else {
                u_strong(sigma, lam[1])
            }
        }
        (Flow::Poiseuille, Adherence::Weak) => u_weak(sigma, lam[1], lam[2], lam[3], lam[4]),
        (Flow::Couette, Adherence::Strong) => {
            if lam[1] == 0.0 {
                Ok(couette::u_classical_tc(sigma))
            } else {
                couette::u_strong_tc(sigma, lam[1])
            }
        }
        (Flow::Couette, Adherence::Weak) => Ok(couette::u_weak_tc(sigma)),
    }
}

fn sample_profile(
    flow: Flow,
    bc: Adherence,
    lam: &[f64; 5],
    n: usize,
) -> Result<RadialProfile, CliError> {
    let sigma = linspace(0.0, 1.0, n);
    let u = sigma
        .iter()
        .map(|s| dimensionless_u(flow, bc, lam, *s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(core_err)?;
    let kind = match flow {
        Flow::Poiseuille => FlowKind::Poiseuille,
        Flow::Couette => FlowKind::TaylorCouette,
    };
    RadialProfile::new(sigma, u, ProfileMeta {
        kind,
        bc,
        lambdas: *lam,
    })
    .map_err(core_err)
}

/// Fail fast if an 801-node resample violates the flow's field equation.
fn residual_gate(flow: Flow, bc: Adherence, lam: &[f64; 5]) -> Result<f64, CliError> {
    let probe = sample_profile(flow, bc, lam, RESIDUAL_GATE_NODES)?;
    let residual = match flow {
        Flow::Poiseuille => poiseuille::ode_residual(&probe, lam[1]),
        Flow::Couette => couette::tc_ode_residual(&probe, lam[1]),
    }
    .map_err(core_err)?;
    let sup = residual.sup();
    if sup > RESIDUAL_GATE {
        return Err(CliError::Solver(format!(
            "profile fails its field-equation residual check: sup {sup:e} > {RESIDUAL_GATE:e}"
        )));
    }
    Ok(sup)
}

fn profile_table(profile: &RadialProfile) -> Table {
    let mut table = Table::new(vec!["sigma", "u"]);
    for (s, u) in profile.sigma.iter().zip(&profile.u) {
        table.push(vec![*s, *u]);
    }
    table
}

fn lambda_json(lam: &[f64; 5]) -> serde_json::Value {
    serde_json::json!({
        "lambda0": lam[0],
        "lambda1": lam[1],
        "lambda2": lam[2],
        "lambda3": lam[3],
        "lambda4": lam[4],
    })
}

pub fn cmd_profile(cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.sweep {
        None => {
            let residual_sup = residual_gate(cfg.flow, cfg.bc, &cfg.lambdas)?;
            let profile = sample_profile(cfg.flow, cfg.bc, &cfg.lambdas, cfg.grid_n)?;
            let path = profile_table(&profile).write(&cfg.out_dir, "profile", cfg.format)?;
            let meta = serde_json::json!({
                "flow": cfg.flow.as_str(),
                "bc": cfg.bc.as_str(),
                "lambdas": lambda_json(&cfg.lambdas),
                "grid_n": cfg.grid_n,
                "residual_sup": residual_sup,
                "no_slip_value": profile.u.last(),
                "data_file": path.file_name().and_then(|s| s.to_str()),
            });
            write_json(&cfg.out_dir.join("meta.json"), &meta)?;
            if cfg.format == OutFormat::Csv {
                write_plot_stub(&cfg.out_dir, "profile", "profile.csv", "sigma", "u")?;
            }
            println!("wrote {}", path.display());
            Ok(())
        }
        Some(sweep) => {
            let entries: Vec<[f64; 5]> = sweep.iter().map(|l1| cfg.sweep_lambdas(*l1)).collect();
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.jobs)
                .build()
                .map_err(|e| CliError::Solver(format!("thread pool: {e}")))?;
            let results: Result<Vec<(f64, f64)>, CliError> = pool.install(|| {
                entries
                    .par_iter()
                    .map(|lam| {
                        residual_gate(cfg.flow, cfg.bc, lam)?;
                        let profile = sample_profile(cfg.flow, cfg.bc, lam, cfg.grid_n)?;
                        let stem = format!("profile_lambda1_{}", lam[1]);
                        profile_table(&profile).write(&cfg.out_dir, &stem, cfg.format)?;
                        // sup-norm distance from the classical profile
                        let sup_err = profile
                            .sigma
                            .iter()
                            .zip(&profile.u)
                            .map(|(s, u)| {
                                let u0 = match cfg.flow {
                                    Flow::Poiseuille => u_classical(*s),
                                    Flow::Couette => *s,
                                };
                                (u - u0).abs()
                            })
                            .fold(0.0f64, f64::max);
                        let phi = match (cfg.flow, cfg.bc) {
                            (Flow::Poiseuille, Adherence::Strong) => {
                                phi_strong(lam[1]).map_err(core_err)?
                            }
                            (Flow::Poiseuille, Adherence::Weak) => {
                                phi_weak(lam[1], lam[2], lam[3], lam[4]).map_err(core_err)?
                            }
                            // no discharge rate for the rotating flow
                            (Flow::Couette, _) => f64::NAN,
                        };
                        Ok((sup_err, phi))
                    })
                    .collect()
            });
            let results = results?;
            // summary after the join barrier, in the caller's sweep order
            let mut table = if cfg.flow == Flow::Poiseuille {
                Table::new(vec!["lambda1", "sup_error", "phi"])
            } else {
                Table::new(vec!["lambda1", "sup_error"])
            };
            for (l1, (sup_err, phi)) in sweep.iter().zip(&results) {
                let mut row = vec![*l1, *sup_err];
                if cfg.flow == Flow::Poiseuille {
                    row.push(*phi);
                }
                table.push(row);
            }
            let path = table.write(&cfg.out_dir, "sweep_summary", cfg.format)?;
            println!("wrote {} profiles and {}", sweep.len(), path.display());
            Ok(())
        }
    }
}

pub fn cmd_discharge(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.flow != Flow::Poiseuille {
        return Err(CliError::Config(
            "discharge rates are defined for the tube flow (flow = poiseuille)".into(),
        ));
    }
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("discharge requires a sweep list".into()))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Solver(format!("thread pool: {e}")))?;
    let rows: Result<Vec<[f64; 4]>, CliError> = pool.install(|| {
        sweep
            .par_iter()
            .map(|&l1| {
                let lam = cfg.sweep_lambdas(l1);
                let phi_closed = match cfg.bc {
                    Adherence::Strong => phi_strong(l1).map_err(core_err)?,
                    Adherence::Weak => {
                        phi_weak(lam[1], lam[2], lam[3], lam[4]).map_err(core_err)?
                    }
                };
                let quad = adaptive_quad(
                    |s| {
                        4.0 * s
                            * dimensionless_u(cfg.flow, cfg.bc, &lam, s)
                                .expect("validated lambdas")
                    },
                    0.0,
                    1.0,
                    1e-11,
                )
                .map_err(core_err)?;
                let gap = (phi_closed - quad.value).abs();
                Ok([l1, phi_closed, quad.value, gap])
            })
            .collect()
    });
    let rows = rows?;
    let mut table = Table::new(vec!["lambda1", "phi_closed", "phi_quadrature", "gap"]);
    for row in &rows {
        table.push(row.to_vec());
    }
    let path = table.write(&cfg.out_dir, "phi", cfg.format)?;
    if cfg.format == OutFormat::Csv {
        write_plot_stub(&cfg.out_dir, "phi", "phi.csv", "lambda1", "phi")?;
    }
    println!("wrote {}", path.display());

    if let Some(bad) = rows.iter().find(|r| r[3] > DISCHARGE_GATE) {
        return Err(CliError::CrossCheck(format!(
            "discharge gap {:e} at lambda1 = {} exceeds {DISCHARGE_GATE:e}",
            bad[3], bad[0]
        )));
    }
    Ok(())
}

fn pressure_rows(solve: &PressureSolve) -> Vec<String> {
    let method = solve.method.as_str();
    solve
        .sigma
        .iter()
        .zip(solve.pi_prime.iter().zip(&solve.pi))
        .map(|(s, (gp, g))| format!("{},{},{},{method}", fmt_f64(*s), fmt_f64(*gp), fmt_f64(*g)))
        .collect()
}

pub fn cmd_pressure(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.flow != Flow::Couette {
        return Err(CliError::Config(
            "the radial pressure problem is the rotating flow's (flow = couette)".into(),
        ));
    }
    let [l0, l1, ..] = cfg.lambdas;
    let mut solves: Vec<PressureSolve> = Vec::new();
    let report;
    if l1 == 0.0 {
        if l0 != 0.0 {
            return Err(CliError::Config(
                "lambda1 = 0 is the classical run and requires lambda0 = 0".into(),
            ));
        }
        let classical = pressure_classical(cfg.grid_n).map_err(core_err)?;
        report = serde_json::json!({
            "method": "classical",
            "sup_residual": classical.report.sup_residual,
            "bc_residuals": classical.report.bc_residuals,
            "dual_solver_gap": serde_json::Value::Null,
            "grid_n": classical.report.grid_n,
        });
        solves.push(classical);
    } else {
        if cfg.grid_n < 402 {
            return Err(CliError::Config(format!(
                "pressure solves need grid_n >= 402 (400 interior nodes), got {}",
                cfg.grid_n
            )));
        }
        let problem = PressureProblem::new(cfg.bc, l0, l1).map_err(core_err)?;
        let (closed, fd) = problem.solve_both(cfg.grid_n).map_err(core_err)?;
        let gap = fd
            .report
            .dual_solver_gap
            .expect("fd route records the cross-check");
        report = serde_json::json!({
            "sup_residual": fd.report.sup_residual,
            "bc_residuals": fd.report.bc_residuals,
            "dual_solver_gap": gap,
            "grid_n": fd.report.grid_n,
            "closed_form": {
                "sup_residual": closed.report.sup_residual,
                "bc_residuals": closed.report.bc_residuals,
            },
        });
        solves.push(closed);
        solves.push(fd);
    }

    match cfg.format {
        OutFormat::Csv => {
            let mut body = String::from("sigma,pi_prime,pi,method\n");
            for solve in &solves {
                for line in pressure_rows(solve) {
                    body.push_str(&line);
                    body.push('\n');
                }
            }
            write_text(&cfg.out_dir.join("pressure.csv"), &body)?;
            write_plot_stub(&cfg.out_dir, "pressure", "pressure.csv", "sigma", "pi_prime")?;
        }
        OutFormat::Json => {
            let rows: Vec<serde_json::Value> = solves
                .iter()
                .flat_map(|solve| {
                    let method = solve.method.as_str();
                    solve
                        .sigma
                        .iter()
                        .zip(solve.pi_prime.iter().zip(&solve.pi))
                        .map(move |(s, (gp, g))| {
                            serde_json::json!({
                                "sigma": s, "pi_prime": gp, "pi": g, "method": method,
                            })
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&rows).expect("json encoding");
            text.push('\n');
            write_text(&cfg.out_dir.join("pressure.json"), &text)?;
        }
    }
    let full_report = serde_json::json!({
        "flow": cfg.flow.as_str(),
        "bc": cfg.bc.as_str(),
        "lambdas": lambda_json(&cfg.lambdas),
        "report": report,
    });
    write_json(&cfg.out_dir.join("report.json"), &full_report)?;
    println!("wrote {}", cfg.out_dir.join("pressure.csv").display());

    if let Some(gap) = solves.last().and_then(|s| s.report.dual_solver_gap) {
        if gap > PRESSURE_GATE {
            return Err(CliError::CrossCheck(format!(
                "dual-solver pressure gap {gap:e} exceeds {PRESSURE_GATE:e}"
            )));
        }
    }
    Ok(())
}

pub fn cmd_validate(raw: &RawConfig) -> Result<(), CliError> {
    let mu = raw
        .parse_f64("mu")?
        .ok_or_else(|| CliError::Config("validate requires mu".into()))?;
    if !(mu.is_finite() && mu > 0.0) {
        return Err(CliError::Config(format!("mu must be positive, got {mu}")));
    }
    let etas: Vec<Option<f64>> = ["eta1", "eta2", "eta3"]
        .iter()
        .map(|k| raw.parse_f64(k))
        .collect::<Result<_, _>>()?;
    let lams: Vec<Option<f64>> = ["lambda2", "lambda3", "lambda4"]
        .iter()
        .map(|k| raw.parse_f64(k))
        .collect::<Result<_, _>>()?;
    let has_etas = etas.iter().any(Option::is_some);
    let has_lams = lams.iter().any(Option::is_some);
    if has_etas && has_lams {
        return Err(CliError::Config(
            "give either (mu, eta1..eta3) or (mu, lambda2..lambda4), never both".into(),
        ));
    }
    if !has_etas && !has_lams {
        return Err(CliError::Config(
            "validate requires eta1..eta3 or lambda2..lambda4".into(),
        ));
    }
    let ell0 = raw.parse_f64("lambda0")?.unwrap_or(0.0);

    let (eta1, eta2, eta3, lengths) = if has_etas {
        let e1 = etas[0].unwrap_or(0.0);
        let e2 = etas[1].unwrap_or(0.0);
        let e3 = etas[2].unwrap_or(0.0);
        let lengths = lengths_from_etas(mu, e1, e2, e3, ell0);
        (e1, e2, e3, lengths)
    } else {
        let lengths = LengthScales::new(
            ell0,
            lams[0].unwrap_or(0.0),
            lams[1].unwrap_or(0.0),
            lams[2].unwrap_or(0.0),
        )
        .map_err(core_err)?;
        let (e1, e2, e3) = etas_from_lengths(mu, &lengths).map_err(core_err)?;
        (e1, e2, e3, Ok(lengths))
    };

    let report = check_dissipativity(eta1, eta2, eta3);
    println!(
        "dissipativity: eta1 - 2|eta2| = {}, (3 eta1 - 10 eta2 - 32 eta3)/8 = {}",
        fmt_f64(report.margins.0),
        fmt_f64(report.margins.1)
    );
    match &lengths {
        Ok(l) => {
            println!(
                "lengths: ell1 = {}, ell2 = {}, ell3 = {}, ell4 = {} (identity ell1^2 = (3/4)ell2^2 + (1/2)ell3^2 + 2 ell4^2 holds by construction)",
                fmt_f64(l.ell1()),
                fmt_f64(l.ell2()),
                fmt_f64(l.ell3()),
                fmt_f64(l.ell4())
            );
        }
        Err(e) => println!("lengths: not representable ({e})"),
    }

    // optional pressure-dependent-viscosity block
    if let Some(mu0) = raw.parse_f64("barus_mu0")? {
        let alpha = raw.parse_f64("barus_alpha")?.unwrap_or(0.0);
        let p0 = raw.parse_f64("barus_p0")?.unwrap_or(0.0);
        let p = raw.parse_f64("pressure")?.unwrap_or(p0);
        let gamma = raw.parse_f64("shear_rate")?.unwrap_or(0.0);
        let barus = BarusViscosity::new(mu0, alpha, p0).map_err(core_err)?;
        let ell1 = lengths.as_ref().map(|l| l.ell1()).unwrap_or(0.0);
        let rep = ellipticity_indicator(&barus, p, &Stretching::simple_shear(gamma), ell1)
            .map_err(core_err)?;
        println!(
            "ellipticity at p = {p}, shear rate {gamma}: classical_elliptic = {}, second_gradient_elliptic = {}, min_eigenvalue = {}",
            rep.classical_elliptic,
            rep.second_gradient_elliptic,
            fmt_f64(rep.min_eigenvalue)
        );
    }

    if !report.satisfied {
        let name = if report.margins.0 < 0.0 {
            "eta1 >= 2|eta2|"
        } else {
            "3*eta1 - 10*eta2 - 32*eta3 >= 0"
        };
        return Err(CliError::Constraint(format!("violated: {name}")));
    }
    println!("constraints satisfied");
    Ok(())
}
