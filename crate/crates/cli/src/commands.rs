use std::fs;

use nomafair::channel::dbm_to_mw;
use nomafair::config::{parse_config, parse_p0_grid, render_config};
use nomafair::experiments::{
    default_p0_grid, distribution_config, run_distribution, run_fairness_sweep, sweep_config,
    AccessScheme, DistributionResult, SweepResult, CDF_POINTS, HISTOGRAM_BINS,
};
use nomafair::region::{noma_boundary, oma_boundary, RegionBoundary};
use nomafair::{noma_more_fair, FairnessThreshold, SimConfig, UserChannels};
use serde::Serialize;
use serde_json::json;

use crate::output::{fmt_num, OutputRecord, OutputSet, Table};
use crate::{CliError, Experiment, MetricArgs, RegionArgs, SimulateArgs};

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be positive, got {v}"
        )))
    }
}

fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("--{name} must be finite")))
    }
}

#[derive(Serialize)]
struct MetricReport {
    gamma: f64,
    beta: f64,
    beta_high_snr: f64,
    ratio_threshold: f64,
    ratio_threshold_high_snr: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    gain_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noma_more_fair: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
}

pub fn metric(args: &MetricArgs) -> Result<(), CliError> {
    let report = if let Some(gamma) = args.gamma {
        let t = FairnessThreshold::new(positive("gamma", gamma)?)?;
        MetricReport {
            gamma,
            beta: t.beta,
            beta_high_snr: t.beta_high_snr,
            ratio_threshold: t.ratio_threshold,
            ratio_threshold_high_snr: t.ratio_threshold_high_snr(),
            gain_ratio: None,
            noma_more_fair: None,
            verdict: None,
        }
    } else {
        let (Some(g1), Some(g2), Some(p0_dbm)) = (args.g1, args.g2, args.p0_dbm) else {
            return Err(CliError::Usage(
                "either --gamma or --g1, --g2 and --p0-dbm are required".into(),
            ));
        };
        let gains = [positive("g1", g1)?, positive("g2", g2)?];
        let p0 = dbm_to_mw(finite("p0-dbm", p0_dbm)?);
        let noise = dbm_to_mw(finite("noise-dbm", args.noise_dbm)?);
        let ch =
            UserChannels::new(&gains, p0, noise).map_err(|e| CliError::Usage(e.to_string()))?;
        let gamma = p0 / noise * (g1 + g2);
        let t = FairnessThreshold::new(gamma)?;
        let d = noma_more_fair(&ch)?;
        MetricReport {
            gamma,
            beta: d.beta,
            beta_high_snr: d.beta_high_snr,
            ratio_threshold: d.ratio_threshold,
            ratio_threshold_high_snr: t.ratio_threshold_high_snr(),
            gain_ratio: Some(d.gain_ratio),
            noma_more_fair: Some(d.noma_more_fair),
            verdict: Some(if d.noma_more_fair { "NOMA" } else { "OMA" }),
        }
    };
    let text = serde_json::to_string(&report).map_err(|e| CliError::Io(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn boundary_table(b: &RegionBoundary) -> Table {
    let mut t = Table::new(&["r1_bps_hz", "r2_bps_hz"]);
    for p in &b.samples {
        t.push_nums(&[p.r1, p.r2]);
    }
    t
}

pub fn region(args: &RegionArgs) -> Result<(), CliError> {
    let noise = dbm_to_mw(finite("noise-dbm", args.noise_dbm)?);
    let p0 = dbm_to_mw(finite("p0-dbm", args.p0_dbm)?);
    let gains = match (args.g1, args.g2, args.gain1_db, args.gain2_db) {
        (Some(g1), Some(g2), _, _) => [positive("g1", g1)?, positive("g2", g2)?],
        (_, _, Some(d1), Some(d2)) => [
            dbm_to_mw(finite("gain1-db", d1)?) * noise,
            dbm_to_mw(finite("gain2-db", d2)?) * noise,
        ],
        _ => return Err(CliError::Usage("a two-user channel is required".into())),
    };
    let ch = UserChannels::new(&gains, p0, noise).map_err(|e| CliError::Usage(e.to_string()))?;
    let n = args.samples as usize;
    let noma = noma_boundary(&ch, n)?;
    let oma = oma_boundary(&ch, n)?;

    let mut corners = Table::new(&["label", "r1_bps_hz", "r2_bps_hz"]);
    for c in noma
        .corner_points
        .iter()
        .chain(oma.corner_points.iter().take(1))
    {
        corners.push(vec![
            c.label.clone(),
            fmt_num(c.point.r1),
            fmt_num(c.point.r2),
        ]);
    }

    let mut out = OutputSet::create(&args.out)?;
    let result = (|| {
        out.write("noma_boundary.csv", &boundary_table(&noma).render())?;
        out.write("oma_boundary.csv", &boundary_table(&oma).render())?;
        out.write("corners.csv", &corners.render())
    })();
    if let Err(e) = result {
        out.rollback();
        return Err(e.into());
    }
    Ok(())
}

/// Configuration after merging defaults, the config file and flags.
struct ResolvedRun {
    sim: SimConfig,
    p0_grid: Vec<f64>,
    config_text: String,
}

fn resolve(args: &SimulateArgs) -> Result<ResolvedRun, CliError> {
    let base = match args.experiment {
        Experiment::Sweep => sweep_config(),
        Experiment::Distribution => distribution_config(),
    };
    let (mut sim, file_grid) = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let parsed = parse_config(&text, base)?;
            (parsed.sim, parsed.p0_grid)
        }
        None => (base, None),
    };
    if let Some(seed) = args.seed {
        sim.seed = seed;
    }
    if let Some(trials) = args.trials {
        sim.trials = trials;
    }
    if let Some(p0) = args.p0_dbm {
        sim.p0_dbm = p0;
    }
    if let Some(f) = args.fading {
        sim.fading = f.into();
    }
    sim.validate()?;
    let p0_grid = match &args.p0_grid {
        Some(spec) => parse_p0_grid(spec)?,
        None => file_grid.unwrap_or_else(default_p0_grid),
    };
    let config_text = match args.experiment {
        Experiment::Sweep => render_config(&sim, Some(&p0_grid)),
        Experiment::Distribution => render_config(&sim, None),
    };
    Ok(ResolvedRun {
        sim,
        p0_grid,
        config_text,
    })
}

fn sweep_table(res: &SweepResult) -> Table {
    let mut t = Table::new(&[
        "p0_dbm",
        "prob_metric",
        "prob_metric_hsnr",
        "prob_actual",
        "n_trials",
        "n_ties",
    ]);
    for p in &res.points {
        t.push(vec![
            fmt_num(p.p0_dbm),
            fmt_num(p.prob_metric),
            fmt_num(p.prob_metric_hsnr),
            fmt_num(p.prob_actual),
            p.n_trials.to_string(),
            p.n_ties.to_string(),
        ]);
    }
    t
}

fn write_distribution(out: &mut OutputSet, res: &DistributionResult) -> std::io::Result<()> {
    for s in &res.schemes {
        let mut pdf = Table::new(&[
            "bin_lo_bps_hz",
            "bin_hi_bps_hz",
            "probability_mass",
            "density",
        ]);
        let density = s.histogram.density();
        for (i, (&m, &d)) in s.histogram.mass.iter().zip(&density).enumerate() {
            pdf.push_nums(&[s.histogram.edges[i], s.histogram.edges[i + 1], m, d]);
        }
        out.write(&format!("pdf_{}.csv", s.scheme), &pdf.render())?;

        let mut cdf = Table::new(&["rate_bps_hz", "cdf"]);
        for (&x, &c) in s.cdf_grid.iter().zip(&s.cdf) {
            cdf.push_nums(&[x, c]);
        }
        out.write(&format!("cdf_{}.csv", s.scheme), &cdf.render())?;
    }
    let per_scheme = |f: fn(&nomafair::experiments::SchemeDistribution) -> f64| {
        AccessScheme::ALL
            .iter()
            .map(|&s| (s.name().to_string(), json!(f(res.scheme(s)))))
            .collect::<serde_json::Map<_, _>>()
    };
    let summary = json!({
        "jain": per_scheme(|s| s.jain),
        "p10_bps_hz": per_scheme(|s| s.p10),
        "mean_bps_hz": per_scheme(|s| s.mean),
        "noma_selection_fraction": res.noma_selection_fraction,
        "max_sum_rate_gap": res.max_sum_rate_gap,
        "n_drops": res.n_drops,
        "n_pairs": res.n_pairs,
        "n_users": res.schemes[0].samples.len(),
        "histogram_bins": HISTOGRAM_BINS,
        "cdf_points": CDF_POINTS,
    });
    out.write_json("summary.json", &summary)
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    experiment: &'static str,
    seed: u64,
    threads: u64,
    config: &'a SimConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    p0_grid_dbm: Option<&'a [f64]>,
    /// Re-parseable config reproducing this run.
    config_text: &'a str,
    /// Choices not fixed by the model and applied by default.
    defaults: serde_json::Value,
    diagnostics: serde_json::Value,
    started_at: String,
    finished_at: String,
    outputs: &'a [OutputRecord],
}

pub fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let run = resolve(args)?;
    let threads = args.threads as usize;
    let started_at = chrono::Utc::now().to_rfc3339();

    let mut out = OutputSet::create(&args.out)?;
    let outcome: Result<(&'static str, serde_json::Value), CliError> = (|| match args.experiment {
        Experiment::Sweep => {
            let res = run_fairness_sweep(&run.sim, &run.p0_grid, threads)?;
            out.write("sweep.csv", &sweep_table(&res).render())?;
            Ok((
                "sweep",
                json!({ "metric_disagreements_on_non_ties": res.total_disagreements() }),
            ))
        }
        Experiment::Distribution => {
            let res = run_distribution(&run.sim, threads)?;
            write_distribution(&mut out, &res)?;
            Ok((
                "distribution",
                json!({ "max_sum_rate_gap": res.max_sum_rate_gap }),
            ))
        }
    })();

    let (experiment, diagnostics) = match outcome {
        Ok(v) => v,
        Err(e) => {
            out.rollback();
            return Err(e);
        }
    };
    let records = out.records().to_vec();
    let manifest = Manifest {
        tool: "nomafair",
        version: env!("CARGO_PKG_VERSION"),
        experiment,
        seed: run.sim.seed,
        threads: args.threads,
        config: &run.sim,
        p0_grid_dbm: (args.experiment == Experiment::Sweep).then_some(run.p0_grid.as_slice()),
        config_text: &run.config_text,
        defaults: json!({
            "histogram_bins": HISTOGRAM_BINS,
            "histogram_range": "[0, max pooled rate]",
            "cdf_points": CDF_POINTS,
            "path_loss": "128.1 + 37.6 log10(d/km) dB",
            "jain_pooling": "all user rates of all drops",
            "hybrid_tie": "OMA",
            "sweep_trial": "one freshly dropped pair per trial",
        }),
        diagnostics,
        started_at,
        finished_at: chrono::Utc::now().to_rfc3339(),
        outputs: &records,
    };
    if let Err(e) = out.write_json("manifest.json", &manifest) {
        out.rollback();
        return Err(e.into());
    }
    Ok(())
}
