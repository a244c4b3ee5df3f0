//! One function per subcommand. Each computes in parallel and returns the
//! finished files; writing happens afterwards in a fixed order.

use dispersion_core::densities::{density_coeffs, emit_density_grid, write_density_csv, DensityKind, Grid};
use dispersion_core::dft::{
    ansatz_density, ansatz_optimize, dft_solve, sk_zeroth_energy, AdaptiveOptions, AnsatzOptions, AnsatzResult,
    Estimate,
};
use dispersion_core::exact::rational;
use dispersion_core::sk::record::{ParametersJson, ValueJson};
use dispersion_core::sk::{exact_record, ChannelTag, Method, RecordJson, SolutionRecord};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Command, Format, RunConfig};
use crate::error::CliError;
use crate::output::{csv_document, json_document, render, render_f64, OutputFile, Provenance};

pub fn run(cfg: &RunConfig) -> Result<Vec<OutputFile>, CliError> {
    match cfg.command {
        Command::Tables => tables(cfg),
        Command::Densities => densities(cfg),
        Command::Dft => dft(cfg),
        Command::Ansatz => ansatz(cfg),
        Command::R0 => r0(cfg),
    }
}

fn orders_label(cfg: &RunConfig) -> String {
    cfg.orders.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Records for every (channel, order) pair, grouped by channel.
fn solve_all<F>(cfg: &RunConfig, solve: F) -> Result<Vec<Vec<SolutionRecord>>, CliError>
where
    F: Fn(ChannelTag, u32) -> dispersion_core::Result<SolutionRecord> + Sync,
{
    let pairs: Vec<(ChannelTag, u32)> =
        cfg.channels.iter().flat_map(|&c| cfg.orders.iter().map(move |&k| (c, k))).collect();
    let flat = pairs.par_iter().map(|&(c, k)| solve(c, k)).collect::<Result<Vec<_>, _>>()?;
    Ok(cfg
        .channels
        .iter()
        .map(|&c| flat.iter().filter(|r| r.channel == c).cloned().collect())
        .collect())
}

fn record_files(cfg: &RunConfig, stem: &str, method: Method, groups: &[Vec<SolutionRecord>]) -> Vec<OutputFile> {
    let mut files = Vec::new();
    for records in groups {
        let Some(first) = records.first() else { continue };
        let ch = first.channel;
        let p = Provenance::new(&cfg.command.to_string(), &method.to_string())
            .with("channel", ch)
            .with("orders", orders_label(cfg))
            .with("digits", cfg.digits);
        if cfg.format == Format::Csv {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.order.to_string(),
                        render(&r.energy_constant, cfg.digits),
                        render(&r.normalization_constant, cfg.digits),
                    ]
                })
                .collect();
            files.push(OutputFile {
                name: format!("{stem}_{ch}.csv"),
                contents: csv_document(&p, &["order", "energy_constant", "normalization_constant"], &rows),
            });
        }
        // exact fractions always go to the JSON file
        let json: Vec<RecordJson> = records.iter().map(|r| r.to_json(cfg.digits)).collect();
        files.push(OutputFile {
            name: format!("{stem}_{ch}.json"),
            contents: json_document(&p, serde_json::to_value(json).expect("serializable")),
        });
    }
    files
}

fn tables(cfg: &RunConfig) -> Result<Vec<OutputFile>, CliError> {
    let groups = solve_all(cfg, exact_record)?;
    Ok(record_files(cfg, "tables", Method::Exact, &groups))
}

fn dft(cfg: &RunConfig) -> Result<Vec<OutputFile>, CliError> {
    let groups = solve_all(cfg, |c, k| dft_solve(c, k).map(|s| s.record))?;
    let mut files = record_files(cfg, "dft", Method::Dft, &groups);
    files.extend(ansatz_table(cfg, &optimize_all(cfg)?));
    Ok(files)
}

fn kinds(cfg: &RunConfig) -> Vec<DensityKind> {
    DensityKind::ALL.into_iter().filter(|k| cfg.channels.contains(&k.channel())).collect()
}

fn regimes() -> [(&'static str, Grid); 2] {
    [("short", Grid::short_range()), ("long", Grid::long_range())]
}

fn densities(cfg: &RunConfig) -> Result<Vec<OutputFile>, CliError> {
    let jobs: Vec<(DensityKind, u32)> =
        kinds(cfg).into_iter().flat_map(|k| cfg.orders.iter().map(move |&o| (k, o))).collect();
    let per_job = jobs
        .par_iter()
        .map(|&(kind, order)| -> Result<Vec<OutputFile>, CliError> {
            let record = exact_record(kind.channel(), order)?;
            let f = density_coeffs(&record.expansion, kind)?;
            let mut out = Vec::new();
            for (regime, grid) in regimes() {
                let rows = emit_density_grid(&f, &grid)?;
                let p = Provenance::new("densities", "exact")
                    .with("channel", kind.channel())
                    .with("density", kind.label())
                    .with("order", order)
                    .with("regime", regime);
                let stem = format!("density_{}_order{order:02}_{regime}", kind.label());
                let (name, contents) = match cfg.format {
                    Format::Csv => {
                        let mut buf = p.comment().into_bytes();
                        write_density_csv(&rows, &mut buf).expect("in-memory write");
                        (format!("{stem}.csv"), String::from_utf8(buf).expect("utf-8"))
                    }
                    Format::Json => {
                        let data: Vec<Value> = rows
                            .iter()
                            .map(|r| {
                                json!({
                                    "xi": dispersion_core::densities::render_abscissa(&r.xi),
                                    "f": rational::to_significant(&r.f, 12),
                                })
                            })
                            .collect();
                        (format!("{stem}.json"), json_document(&p, Value::Array(data)))
                    }
                };
                out.push(OutputFile { name, contents });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

fn optimize_all(cfg: &RunConfig) -> Result<Vec<AnsatzResult>, CliError> {
    let opts = AnsatzOptions::default();
    Ok(cfg.channels.par_iter().map(|&c| ansatz_optimize(c, &opts)).collect::<Result<Vec<_>, _>>()?)
}

fn ansatz_table(cfg: &RunConfig, results: &[AnsatzResult]) -> Vec<OutputFile> {
    let d = cfg.digits;
    let p = Provenance::new(&cfg.command.to_string(), "ansatz").with("digits", d);
    match cfg.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        r.channel.to_string(),
                        render_f64(r.params.lambda, d),
                        render_f64(r.params.nu, d),
                        render_f64(r.energy.value, d),
                        format!("{:.3e}", r.energy.error),
                    ]
                })
                .collect();
            vec![OutputFile {
                name: "ansatz.csv".into(),
                contents: csv_document(&p, &["channel", "lambda", "nu", "energy_constant", "error_estimate"], &rows),
            }]
        }
        Format::Json => {
            let data: Vec<RecordJson> = results
                .iter()
                .map(|r| RecordJson {
                    method: Method::Ansatz,
                    channel: r.channel,
                    order: None,
                    energy_constant: ValueJson::approximate(r.energy.value, d),
                    normalization_constant: None,
                    coefficients: None,
                    parameters: Some(ParametersJson { lambda: r.params.lambda, nu: r.params.nu }),
                })
                .collect();
            vec![OutputFile {
                name: "ansatz.json".into(),
                contents: json_document(&p, serde_json::to_value(data).expect("serializable")),
            }]
        }
    }
}

/// Ansatz table plus, per density, the optimal ansatz density next to the
/// exact one at the highest requested order.
fn ansatz(cfg: &RunConfig) -> Result<Vec<OutputFile>, CliError> {
    let results = optimize_all(cfg)?;
    let mut files = ansatz_table(cfg, &results);
    let order = cfg.max_order();
    let comparisons = kinds(cfg)
        .par_iter()
        .map(|&kind| -> Result<Vec<OutputFile>, CliError> {
            let params = results.iter().find(|r| r.channel == kind.channel()).expect("optimized").params;
            let exact = density_coeffs(&exact_record(kind.channel(), order)?.expansion, kind)?;
            let mut out = Vec::new();
            for (regime, grid) in regimes() {
                let exact_rows = emit_density_grid(&exact, &grid)?;
                let approx = ansatz_density(params, kind, &grid)?;
                let rows: Vec<Vec<String>> = exact_rows
                    .iter()
                    .zip(&approx)
                    .map(|(e, (_, a))| {
                        vec![
                            dispersion_core::densities::render_abscissa(&e.xi),
                            rational::to_significant(&e.f, 12),
                            format!("{a:.11e}"),
                        ]
                    })
                    .collect();
                let p = Provenance::new("ansatz", "ansatz")
                    .with("channel", kind.channel())
                    .with("density", kind.label())
                    .with("exact_order", order)
                    .with("regime", regime);
                let stem = format!("ansatz_density_{}_{regime}", kind.label());
                out.push(match cfg.format {
                    Format::Csv => OutputFile {
                        name: format!("{stem}.csv"),
                        contents: csv_document(&p, &["xi", "f_exact", "f_ansatz"], &rows),
                    },
                    Format::Json => {
                        let data: Vec<Value> =
                            rows.iter().map(|r| json!({ "xi": r[0], "f_exact": r[1], "f_ansatz": r[2] })).collect();
                        OutputFile { name: format!("{stem}.json"), contents: json_document(&p, Value::Array(data)) }
                    }
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, _>>()?;
    files.extend(comparisons.into_iter().flatten());
    Ok(files)
}

fn r0(cfg: &RunConfig) -> Result<Vec<OutputFile>, CliError> {
    let opts = AdaptiveOptions::default();
    let estimates: Vec<(ChannelTag, Estimate)> = cfg
        .channels
        .par_iter()
        .map(|&c| sk_zeroth_energy(c, &opts).map(|e| (c, e)))
        .collect::<Result<_, _>>()?;
    let d = cfg.digits;
    let p = Provenance::new("r0", "r0").with("digits", d);
    Ok(vec![match cfg.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = estimates
                .iter()
                .map(|(c, e)| vec![c.to_string(), render_f64(e.value, d), format!("{:.3e}", e.error), e.nodes.to_string()])
                .collect();
            OutputFile {
                name: "r0.csv".into(),
                contents: csv_document(&p, &["channel", "energy_constant", "error_estimate", "nodes"], &rows),
            }
        }
        Format::Json => {
            let data: Vec<RecordJson> = estimates
                .iter()
                .map(|(c, e)| RecordJson {
                    method: Method::R0,
                    channel: *c,
                    order: None,
                    energy_constant: ValueJson::approximate(e.value, d),
                    normalization_constant: None,
                    coefficients: None,
                    parameters: None,
                })
                .collect();
            OutputFile { name: "r0.json".into(), contents: json_document(&p, serde_json::to_value(data).expect("serializable")) }
        }
    }])
}
