//! Acceptance suite: one check per criterion, each printing a PASS/FAIL line.
//! Exits non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use chrono::NaiveDate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thermoplan::calibration::nsga2::{fast_nondominated_sort, hypervolume_2d, nsga2, Nsga2Settings};
use thermoplan::calibration::{calibrate, CalibrationSettings, Calibration};
use thermoplan::clock::{format_minutes, ClockTime};
use thermoplan::evaluation::{energy_savings, error_summary, period_summary, DailyError, DailySavings, SavingsWindow};
use thermoplan::model::network::{step, StepInputs};
use thermoplan::model::{simulate, state_after_history, Mode, ParameterBounds, RcParameters, ThermalState};
use thermoplan::scheduler::{
    optimize_schedule, Comfort, DayAheadProblem, DecisionBounds, DecisionSpace, DecisionVector, SearchSettings,
    Variable,
};
use thermoplan::synthetic::Scenario;

type Check = Result<String, String>;

fn close(value: f64, reported: f64, tol: f64) -> bool {
    // Reported digits are decimal; allow for binary rounding.
    (value - reported).abs() <= tol + 1e-9
}

// ---------------------------------------------------------------- 1

fn savings_rows(kwh: &[f64], pct: &[f64]) -> Vec<DailySavings> {
    let d0 = NaiveDate::from_ymd_opt(2017, 8, 9).unwrap();
    kwh.iter()
        .zip(pct)
        .enumerate()
        .map(|(i, (k, p))| DailySavings {
            date: d0 + chrono::Days::new(i as u64),
            savings_kwh: *k,
            savings_percent: *p,
        })
        .collect()
}

fn error_rows(kw: &[f64], pct: &[f64], temp: &[f64]) -> Vec<DailyError> {
    let d0 = NaiveDate::from_ymd_opt(2017, 8, 9).unwrap();
    (0..kw.len())
        .map(|i| DailyError {
            date: d0 + chrono::Days::new(i as u64),
            power_err_kw: kw[i],
            power_err_percent: pct[i],
            temp_err_percent: temp[i],
        })
        .collect()
}

fn reported_aggregates() -> Check {
    let mut entries: Vec<(String, f64, f64)> = Vec::new();
    let mut add = |report: &str, column: &str, mean: (f64, f64), sd: (f64, f64)| {
        entries.push((format!("{report} {column} mean"), mean.0, mean.1));
        entries.push((format!("{report} {column} S.D."), sd.0, sd.1));
    };

    let t5 = period_summary(&savings_rows(
        &[971., 1235., 1640., 2033., 542., 906., 1418., 1952., 1418., 1508.],
        &[6.6, 10.2, 10.9, 11.1, 2.5, 3.6, 9.5, 10.2, 9.9, 11.6],
    ))
    .map_err(|e| e.to_string())?;
    add("cooling savings", "kWh", (t5.kwh.mean, 1362.3), (t5.kwh.sd, 441.9));
    add("cooling savings", "%", (t5.percent.mean, 8.6), (t5.percent.sd, 3.1));

    let t6 = error_summary(&error_rows(
        &[38.75, 61.25, 37.75, 42.25, 37.75, 37.25, 43.75, 37.75, 45.5, 41.],
        &[11., 21., 11., 9., 10., 8., 13., 11., 12., 16.],
        &[2.6, 1.9, 2.3, 2.8, 3., 2.9, 0.9, 3.1, 2.6, 2.4],
    ))
    .map_err(|e| e.to_string())?;
    add("cooling error", "kW", (t6.power_err_kw.mean, 42.3), (t6.power_err_kw.sd, 6.8));
    add("cooling error", "%", (t6.power_err_percent.mean, 12.2), (t6.power_err_percent.sd, 3.6));
    add("cooling error", "temp %", (t6.temp_err_percent.mean, 2.4), (t6.temp_err_percent.sd, 0.6));

    let t8 = period_summary(&savings_rows(
        &[
            2310., 1738., 2248., 1533., 1129., 397., 636., 1797., 714., 1062., 1290., 384., 1725., 813., 1179., 40.,
            1375.,
        ],
        &[
            20.1, 14.5, 17.3, 13.0, 9.7, 3.3, 4.4, 15.3, 6.0, 10.6, 13.1, 5.2, 19.6, 8.4, 16.5, 0.6, 20.3,
        ],
    ))
    .map_err(|e| e.to_string())?;
    add("heating savings", "kWh", (t8.kwh.mean, 1198.2), (t8.kwh.sd, 631.8));
    add("heating savings", "%", (t8.percent.mean, 11.7), (t8.percent.sd, 6.0));

    let t9 = error_summary(&error_rows(
        &[
            221.7, 114.3, 154.6, 89., 125.4, 89., 143.2, 138.1, 67.1, 56.7, 37.7, 89., 72.5, 93., 56.8, 63.7, 57.6,
        ],
        &[
            15.6, 7.9, 11.0, 7.2, 10.1, 6.4, 12.0, 9.6, 5.2, 4.6, 2.7, 12.2, 5.3, 12.3, 4.2, 5.6, 7.2,
        ],
        &[
            4.0, 2.7, 2.9, 1.3, 2.1, 2.5, 4.5, 3.2, 3.2, 1.1, 1.3, 0.8, 1.5, 1.1, 0.8, 3.9, 3.4,
        ],
    ))
    .map_err(|e| e.to_string())?;
    add("heating error", "kW", (t9.power_err_kw.mean, 98.2), (t9.power_err_kw.sd, 45.3));
    add("heating error", "%", (t9.power_err_percent.mean, 8.2), (t9.power_err_percent.sd, 3.5));
    add("heating error", "temp %", (t9.temp_err_percent.mean, 2.4), (t9.temp_err_percent.sd, 1.2));

    let misses: Vec<String> = entries
        .iter()
        .filter(|(_, v, p)| !close(*v, *p, 0.05))
        .map(|(name, v, p)| format!("{name}: computed {v:.4}, reported {p}"))
        .collect();
    if misses.is_empty() {
        Ok(format!("{} reported aggregates reproduced within 0.05", entries.len()))
    } else {
        Err(format!(
            "{} of {} aggregates outside 0.05: {}",
            misses.len(),
            entries.len(),
            misses.join("; ")
        ))
    }
}

// ---------------------------------------------------------------- 2

fn parameter_recovery() -> Check {
    let scenario = Scenario::winter_office(7).map_err(|e| e.to_string())?;
    let b = &scenario.building;
    let settings = CalibrationSettings::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for noise in [0.0, 0.01] {
        let history = scenario.history(noise, 11).map_err(|e| e.to_string())?;
        let cal = calibrate(&history, &b.config, &ParameterBounds::default(), &settings, 2024)
            .map_err(|e| e.to_string())?;
        let a = cal.accuracy;
        ok &= a.pass;
        lines.push(format!(
            "noise {:.0}%: median |dT| {:.4} C, f1 {:.3}%, P_error {:.3}% -> {}",
            noise * 100.0,
            a.median_abs_temp_error,
            a.relative_temp_error,
            a.relative_power_error,
            if a.pass { "gate passed" } else { "gate failed" }
        ));
    }
    if ok {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

// ---------------------------------------------------------------- 3

fn day_problem(scenario: &Scenario, config_tweak: impl FnOnce(&mut thermoplan::model::BuildingConfig)) -> Result<DayAheadProblem, String> {
    let b = &scenario.building;
    let history = scenario.history(0.0, 0).map_err(|e| e.to_string())?;
    let mut config = b.config.clone();
    config_tweak(&mut config);
    let initial = state_after_history(&b.params, &config, &history).map_err(|e| e.to_string())?;
    DayAheadProblem::new(
        b.params,
        config,
        scenario.forecast_inputs().map_err(|e| e.to_string())?,
        initial,
        Comfort::default_for(Mode::Heating),
    )
    .map_err(|e| e.to_string())
}

fn optimizer_vs_oracle() -> Check {
    let scenario = Scenario::winter_office(7).map_err(|e| e.to_string())?;
    let problem = day_problem(&scenario, |_| {})?;
    let fixed = DecisionVector::from_config(problem.config());
    let bounds = DecisionBounds::default();
    let space = DecisionSpace::new(vec![Variable::DayStart], bounds, fixed).map_err(|e| e.to_string())?;

    let (lo, hi) = (bounds.day_start[0].minutes(), bounds.day_start[1].minutes());
    let mut best: Option<(f64, f64)> = None;
    for m in lo..=hi {
        let e = problem.evaluate(&DecisionVector {
            day_start: m as f64,
            ..fixed
        });
        if e.feasible() && best.is_none_or(|(v, _)| e.objective < v) {
            best = Some((e.objective, m as f64));
        }
    }
    let (opt_value, opt_time) = best.ok_or("the grid has no feasible day start")?;

    let mut lines = vec![format!("grid optimum {} ({:.1} kWh)", format_minutes(opt_time), opt_value * 0.25 / 1000.0)];
    let mut ok = true;
    for seed in 1..=5u64 {
        let sol = optimize_schedule(&problem, &space, &SearchSettings::default(), seed).map_err(|e| e.to_string())?;
        let gap = (sol.objective - opt_value) / opt_value;
        let dt = (sol.theta.day_start - opt_time).abs();
        let pass = sol.feasible && gap.abs() <= 0.005 && dt <= 15.0;
        ok &= pass;
        lines.push(format!(
            "seed {seed}: {} ({:+.3}%, {:.1} min)",
            format_minutes(sol.theta.day_start),
            100.0 * gap,
            dt
        ));
    }
    if ok {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

// ---------------------------------------------------------------- 4

fn synthetic_savings() -> Check {
    let scenario = Scenario::winter_office(7).map_err(|e| e.to_string())?;
    let four = ClockTime::from_hm(4, 0).unwrap();
    let problem = day_problem(&scenario, |c| {
        c.day_start = four;
        c.night_setpoint = 20.0;
    })?;
    let config = problem.config().clone();
    let wasteful = DecisionVector::from_config(&config);
    let space = DecisionSpace::new(
        vec![Variable::DayStart, Variable::NightSetpoint, Variable::NightStart],
        DecisionBounds::default(),
        wasteful,
    )
    .map_err(|e| e.to_string())?;
    let sol = optimize_schedule(&problem, &space, &SearchSettings::default(), 42).map_err(|e| e.to_string())?;

    // Independent re-simulation of both schedules.
    let b = &scenario.building;
    let inputs = problem.inputs();
    let base = simulate(&b.params, &config, inputs, problem.initial(), Some(&wasteful)).map_err(|e| e.to_string())?;
    let opt = simulate(&b.params, &config, inputs, problem.initial(), Some(&sol.theta)).map_err(|e| e.to_string())?;
    let comfort = problem.comfort();
    let mut worst = f64::NEG_INFINITY;
    for k in 0..opt.len() {
        let c = ClockTime::of(&opt.indoor_temp.timestamp(k));
        if comfort.window[0] <= c && c <= comfort.window[1] {
            worst = worst.max(comfort.temperature - opt.indoor_temp.values()[k]);
        }
    }
    let es = energy_savings(&base.power, &opt.power, &SavingsWindow::default_for(Mode::Heating))
        .map_err(|e| e.to_string())?;
    let band = if (5.0..=20.0).contains(&es.percent) { "inside" } else { "outside" };
    let detail = format!(
        "baseline {:.0} kWh -> optimised {:.0} kWh; ES {:.1} kWh = {:.2}% ({band} the 5-20% band); \
         day from {}, night {:.2} C from {}; worst comfort gap {:+.4} C",
        base.energy_kwh(),
        opt.energy_kwh(),
        es.kwh,
        es.percent,
        format_minutes(sol.theta.day_start),
        sol.theta.night_setpoint.unwrap_or(config.night_setpoint),
        format_minutes(sol.theta.night_start),
        worst
    );
    if es.percent > 0.0 && worst <= 0.0 && sol.feasible {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- 5

fn integrator_order() -> Check {
    // Air node alone, coupled only to outdoors through r_f: T' = -(T - T_e)/(r_f c_i).
    let dt = 900.0;
    let params = RcParameters {
        r_i: 1e-5,
        r_m: 1e-4,
        r_s: 1e300,
        r_f: 1e-4,
        r_v: 1e300,
        r_e: 1e-4,
        c_i: dt / (0.8 * 1e-4),
        c_m: 1e9,
        g: 0.0,
        alpha: 0.0,
        a: 0.0,
    };
    let mut config = Scenario::winter_office(1).map_err(|e| e.to_string())?.building.config;
    config.p_min = 0.0;
    config.p_max = 0.0;
    let state = ThermalState::new(20.0, 20.0);
    let inputs = StepInputs::default();
    let exact = 20.0 * (-0.8f64).exp();
    let errors: Vec<f64> = [1u32, 2, 4, 8]
        .iter()
        .map(|&n| {
            config.substeps = n;
            (step(&params, &config, &state, &inputs, 20.0, dt).0.t_i - exact).abs()
        })
        .collect();
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    let detail = format!(
        "errors {:?}, ratios {}",
        errors.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>(),
        ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>().join(", ")
    );
    if ratios.iter().all(|r| *r >= 14.0) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- 6

/// Ranks by repeated peeling of the non-dominated set, straight from the definition.
fn brute_force_ranks(points: &[Vec<f64>]) -> Vec<usize> {
    let dominates = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y);
    let mut rank = vec![usize::MAX; points.len()];
    let mut level = 0;
    while rank.contains(&usize::MAX) {
        let remaining: Vec<usize> = (0..points.len()).filter(|&i| rank[i] == usize::MAX).collect();
        let layer: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| !remaining.iter().any(|&j| dominates(&points[j], &points[i])))
            .collect();
        for i in layer {
            rank[i] = level;
        }
        level += 1;
    }
    rank
}

fn nsga2_verification() -> Check {
    let settings = Nsga2Settings {
        population: 40,
        generations: 100,
        ..Nsga2Settings::default()
    };
    let run = nsga2(|x: &[f64]| vec![x[0] * x[0], (x[0] - 2.0).powi(2)], &[-5.0], &[5.0], &settings, 3)
        .map_err(|e| e.to_string())?;
    let reference = [25.0, 49.0];
    let front: Vec<[f64; 2]> = run.front.iter().map(|i| [i.objectives[0], i.objectives[1]]).collect();
    let hv = hypervolume_2d(&front, reference);

    // Exact dominated area: the reference box minus the region under the
    // front f2 = (sqrt(f1) - 2)^2 on [0, 4], by composite Simpson.
    let n = 20_000;
    let h = 4.0 / n as f64;
    let g = |f1: f64| (f1.sqrt() - 2.0).powi(2);
    let under: f64 = (0..=n)
        .map(|i| {
            let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            w * g(i as f64 * h)
        })
        .sum::<f64>()
        * h
        / 3.0;
    let exact = reference[0] * reference[1] - under;
    let hv_gap = (hv - exact).abs() / exact;

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut mismatches = 0;
    for _ in 0..100 {
        let size = rng.random_range(1..=200);
        let m = rng.random_range(2..=3);
        // Coarse values force ties and duplicates.
        let points: Vec<Vec<f64>> = (0..size)
            .map(|_| (0..m).map(|_| rng.random_range(0..12) as f64).collect())
            .collect();
        let mut rank = vec![usize::MAX; size];
        for (level, front) in fast_nondominated_sort(&points).iter().enumerate() {
            for &i in front {
                rank[i] = level;
            }
        }
        if rank != brute_force_ranks(&points) {
            mismatches += 1;
        }
    }
    let detail = format!(
        "hypervolume {hv:.3} vs exact {exact:.3} ({:.3}% gap, {} front points); sort mismatches {mismatches}/100",
        100.0 * hv_gap,
        front.len()
    );
    if hv_gap <= 0.02 && mismatches == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- 7

fn constraint_aggregation() -> Check {
    let scenario = Scenario::winter_office(7).map_err(|e| e.to_string())?;
    let problem = day_problem(&scenario, |_| {})?;
    let bounds = DecisionBounds::default();
    let comfort = problem.comfort();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut feasible, mut disagreements) = (0, 0);
    for _ in 0..50 {
        let span = |b: [ClockTime; 2]| b[0].minutes() as f64..=b[1].minutes() as f64;
        let theta = DecisionVector {
            day_start: rng.random_range(span(bounds.day_start)),
            night_setpoint: Some(rng.random_range(bounds.night_setpoint[0]..=bounds.night_setpoint[1])),
            night_start: rng.random_range(span(bounds.night_start)),
        };
        let aggregated = problem.constraint_comfort(&theta).map_err(|e| e.to_string())? <= 0.0;
        let run = problem.simulate(&theta).map_err(|e| e.to_string())?;
        let per_instant = (0..run.len()).all(|k| {
            let c = ClockTime::of(&run.indoor_temp.timestamp(k));
            let inside = comfort.window[0] <= c && c <= comfort.window[1];
            !inside || run.indoor_temp.values()[k] >= comfort.temperature
        });
        feasible += per_instant as usize;
        disagreements += (aggregated != per_instant) as usize;
    }
    let detail = format!("50 random schedules, {feasible} feasible, {disagreements} disagreements");
    if disagreements == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- 8

fn files_equal(a: &Path, b: &Path) -> Result<usize, String> {
    let mut names: Vec<_> = std::fs::read_dir(a)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().file_name())
        .filter(|n| n != "manifest.json")
        .collect();
    names.sort();
    for n in &names {
        let (x, y) = (std::fs::read(a.join(n)), std::fs::read(b.join(n)));
        if x.map_err(|e| e.to_string())? != y.map_err(|e| e.to_string())? {
            return Err(format!("{} differs", n.to_string_lossy()));
        }
    }
    Ok(names.len())
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let root = dir.path();
    let scenario = Scenario::winter_office(7).map_err(|e| e.to_string())?;
    let files = scenario.write_files(root.join("data"), 0.01, 3).map_err(|e| e.to_string())?;
    let p = |x: &Path| x.to_str().unwrap().to_string();
    let bin = env!("CARGO_BIN_EXE_thermoplan");

    let mut compared = 0;
    for run in ["a", "b"] {
        let out = root.join(run);
        let c = |args: &[String]| -> Result<(), String> {
            let status = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
            match status.status.code() {
                Some(0) => Ok(()),
                other => Err(format!("{args:?} exited {other:?}: {}", String::from_utf8_lossy(&status.stderr))),
            }
        };
        let common = |sub: &str, name: &str| {
            vec![sub.to_string(), "--config".into(), p(&files.config), "--out".into(), p(&out.join(name))]
        };
        let mut cal = common("calibrate", "cal");
        cal.extend(["--history".into(), p(&files.history)]);
        c(&cal)?;
        let params = p(&out.join("cal/params.json"));
        for (sub, name) in [("forecast", "fc"), ("optimize", "opt")] {
            let mut args = common(sub, name);
            args.extend([
                "--params".into(),
                params.clone(),
                "--history".into(),
                p(&files.history),
                "--weather".into(),
                p(&files.weather),
            ]);
            c(&args)?;
        }
        let mut sim = common("simulate", "sim");
        sim.extend([
            "--params".into(),
            params.clone(),
            "--history".into(),
            p(&files.history),
            "--weather".into(),
            p(&files.weather),
        ]);
        c(&sim)?;
        let mut ev = common("evaluate", "ev");
        ev.extend([
            "--history".into(),
            p(&files.history),
            "--forecast".into(),
            p(&files.history),
        ]);
        c(&ev)?;
    }
    for stage in ["cal", "fc", "opt", "sim", "ev"] {
        compared += files_equal(&root.join("a").join(stage), &root.join("b").join(stage))?;
    }

    // Same calibration on one worker thread and on four.
    let history = scenario.history(0.01, 3).map_err(|e| e.to_string())?;
    let settings = CalibrationSettings {
        algorithm: Nsga2Settings {
            population: 40,
            generations: 30,
            ..Nsga2Settings::default()
        },
        ..CalibrationSettings::default()
    };
    let on = |threads: usize| -> Result<String, String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        let cal: Calibration = pool
            .install(|| calibrate(&history, &scenario.building.config, &ParameterBounds::default(), &settings, 5))
            .map_err(|e| e.to_string())?;
        serde_json::to_string(&cal).map_err(|e| e.to_string())
    };
    if on(1)? != on(4)? {
        return Err("calibration differs between 1 and 4 threads".into());
    }
    Ok(format!(
        "{compared} artifacts byte-identical across two CLI runs; calibration identical on 1 and 4 threads"
    ))
}

// ----------------------------------------------------------------

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("reported aggregates", reported_aggregates),
        ("parameter recovery", parameter_recovery),
        ("optimizer vs grid oracle", optimizer_vs_oracle),
        ("synthetic savings", synthetic_savings),
        ("integrator order", integrator_order),
        ("NSGA-II verification", nsga2_verification),
        ("constraint aggregation", constraint_aggregation),
        ("determinism", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = format!("{}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| *f == id || name.contains(f.as_str())) {
            continue;
        }
        let started = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = fmt_duration(started.elapsed());
        match result {
            Ok(detail) => println!("criterion {id} {name}: PASS ({took}) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} {name}: FAIL ({took}) {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}

fn fmt_duration(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}
