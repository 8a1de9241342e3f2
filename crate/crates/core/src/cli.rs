//! Command-line pipeline: simulate, calibrate, forecast, optimize, evaluate.
//!
//! Exit codes: 0 success, 1 error, 2 quality failure (accuracy gate failed or
//! no feasible schedule).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use chrono::{NaiveDateTime, TimeDelta};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::calibration::{
    accuracy_gate, calibrate, evaluate_candidate, read_parameters, write_parameters, AccuracyReport, Calibration,
    ObjectiveScores,
};
use crate::error::{Error, Result};
use crate::evaluation::{
    daily_error_report, daily_savings, error_summary, period_summary, weather_error_stats, write_plot_data,
    ErrorReport, SavingsReport, WeatherReport,
};
use crate::format::{csv_writer, fmt_sig, write_json};
use crate::model::{simulate, Mode, RcParameters, ThermalState};
use crate::scheduler::{optimize_schedule, DayAheadProblem, DecisionSpace, DecisionVector, ScheduleSolution, SolutionFile};
use crate::settings::Settings;
use crate::timeseries::{
    align, align_inputs, align_series, ingest_csv, ColumnSpec, InputBundle, ModelInputs, RawBundle, Role, TimeSeries,
    Window, STEPS_PER_DAY,
};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "thermoplan", version, about = "Building thermal model calibration and set-point scheduling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Overrides the building mode of the config (heating|cooling).
    #[arg(long)]
    pub mode: Option<Mode>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate the configured schedule over the days of a weather file.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        weather: PathBuf,
        /// Measured history ending where the weather starts; sets the initial state.
        #[arg(long)]
        history: Option<PathBuf>,
        /// Initial indoor temperature when no history is given.
        #[arg(long)]
        initial_temp: Option<f64>,
    },
    /// Fit the model to measured history and check its accuracy.
    Calibrate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        history: PathBuf,
    },
    /// Forecast the days after the history under the configured schedule.
    Forecast {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        history: PathBuf,
        #[arg(long)]
        weather: PathBuf,
    },
    /// Optimise the next day's set-point schedule.
    Optimize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        history: PathBuf,
        #[arg(long)]
        weather: PathBuf,
        /// Calibration report holding the gate verdict; defaults to
        /// `calibration.json` next to the parameters.
        #[arg(long)]
        calibration: Option<PathBuf>,
        /// Run even if the calibration failed the accuracy gate or is missing.
        #[arg(long)]
        force: bool,
    },
    /// Compare forecasts with what was measured.
    Evaluate {
        #[command(flatten)]
        common: Common,
        /// Measured data for the evaluated days.
        #[arg(long)]
        history: PathBuf,
        /// Forecast of the schedule that was applied.
        #[arg(long)]
        forecast: PathBuf,
        /// Forecast under the configured (non-optimised) schedule.
        #[arg(long)]
        baseline: Option<PathBuf>,
        /// Weather forecast the predictions were made with.
        #[arg(long)]
        weather: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Simulate { .. } => "simulate",
            Command::Calibrate { .. } => "calibrate",
            Command::Forecast { .. } => "forecast",
            Command::Optimize { .. } => "optimize",
            Command::Evaluate { .. } => "evaluate",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Simulate { common, .. }
            | Command::Calibrate { common, .. }
            | Command::Forecast { common, .. }
            | Command::Optimize { common, .. }
            | Command::Evaluate { common, .. } => common,
        }
    }

    fn inputs(&self) -> BTreeMap<&'static str, PathBuf> {
        let mut m = BTreeMap::new();
        let mut put = |k, v: &PathBuf| {
            m.insert(k, v.clone());
        };
        match self {
            Command::Simulate { params, weather, history, .. } => {
                put("params", params);
                put("weather", weather);
                history.iter().for_each(|h| put("history", h));
            }
            Command::Calibrate { history, .. } => put("history", history),
            Command::Forecast { params, history, weather, .. } => {
                put("params", params);
                put("history", history);
                put("weather", weather);
            }
            Command::Optimize { params, history, weather, calibration, .. } => {
                put("params", params);
                put("history", history);
                put("weather", weather);
                calibration.iter().for_each(|c| put("calibration", c));
            }
            Command::Evaluate { history, forecast, baseline, weather, .. } => {
                put("history", history);
                put("forecast", forecast);
                baseline.iter().for_each(|b| put("baseline", b));
                weather.iter().for_each(|w| put("weather", w));
            }
        }
        m
    }
}

/// Result of a subcommand that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// Artifacts were written but the result did not meet its quality bar.
    QualityFailure,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::QualityFailure => 2,
        }
    }
}

/// Record of one invocation, written as `manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub inputs: BTreeMap<String, PathBuf>,
    pub config: Option<PathBuf>,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub version: String,
    pub duration_seconds: f64,
    pub exit_code: i32,
    pub error: Option<String>,
}

/// Parses `args` and runs; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let started = Instant::now();
    let result = execute(&cli.command);
    let (code, error) = match &result {
        Ok(outcome) => (outcome.exit_code(), None),
        Err(e) => {
            eprintln!("error: {e}");
            (1, Some(e.to_string()))
        }
    };
    let common = cli.command.common();
    let manifest = RunManifest {
        subcommand: cli.command.name().into(),
        inputs: cli.command.inputs().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        config: common.config.clone(),
        seed: common.seed,
        out_dir: common.out.clone(),
        version: env!("CARGO_PKG_VERSION").into(),
        duration_seconds: started.elapsed().as_secs_f64(),
        exit_code: code,
        error,
    };
    if let Err(e) = write_json(&common.out.join("manifest.json"), &manifest) {
        eprintln!("error: {e}");
        return 1;
    }
    code
}

pub fn execute(command: &Command) -> Result<Outcome> {
    let common = command.common();
    let settings = load_settings(common)?;
    std::fs::create_dir_all(&common.out).map_err(|e| Error::io(&common.out, e))?;
    match command {
        Command::Simulate {
            params,
            weather,
            history,
            initial_temp,
            ..
        } => cmd_simulate(&settings, common, params, weather, history.as_deref(), *initial_temp),
        Command::Calibrate { history, .. } => cmd_calibrate(&settings, common, history),
        Command::Forecast {
            params, history, weather, ..
        } => cmd_forecast(&settings, common, params, history, weather),
        Command::Optimize {
            params,
            history,
            weather,
            calibration,
            force,
            ..
        } => cmd_optimize(&settings, common, params, history, weather, calibration.as_deref(), *force),
        Command::Evaluate {
            history,
            forecast,
            baseline,
            weather,
            ..
        } => cmd_evaluate(&settings, common, history, forecast, baseline.as_deref(), weather.as_deref()),
    }
}

fn load_settings(common: &Common) -> Result<Settings> {
    let mut s = match &common.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    if let Some(mode) = common.mode {
        s.set_mode(mode);
        s.validate()?;
    }
    Ok(s)
}

fn midnight_floor(t: NaiveDateTime) -> NaiveDateTime {
    t.date().and_hms_opt(0, 0, 0).expect("midnight exists")
}

/// The whole days inside `[first, end)`.
fn whole_days(first: NaiveDateTime, end: NaiveDateTime, what: &str) -> Result<Window> {
    let start = if first == midnight_floor(first) {
        first
    } else {
        midnight_floor(first) + TimeDelta::days(1)
    };
    let end = midnight_floor(end);
    if end <= start {
        return Err(Error::InsufficientData(format!("{what} does not span a whole day")));
    }
    Window::new(start, end)
}

/// Instant after the last sample of `role`, once resampled to the grid.
fn covered_until(raw: &RawBundle, role: Role) -> Result<(NaiveDateTime, NaiveDateTime)> {
    let s = raw
        .series(role)
        .ok_or_else(|| Error::Config(format!("no {role} column mapped")))?;
    Ok((s.origin(), s.last_timestamp() + TimeDelta::minutes(15)))
}

fn with_schedules(settings: &Settings, raw: RawBundle, window: &Window) -> Result<RawBundle> {
    match settings.weekly_schedule()? {
        Some(template) => raw.with_template_schedules(&template, window),
        None => Ok(raw),
    }
}

/// Reads the measured history over its whole days. Cooling power is stored
/// with a negative sign.
pub fn load_history(settings: &Settings, path: &Path) -> Result<InputBundle> {
    let raw = ingest_csv(path, &settings.columns)?;
    let (first, end) = covered_until(&raw, Role::Power)?;
    let window = whole_days(first, end, "the history")?;
    let raw = with_schedules(settings, raw, &window)?;
    let bundle = align(&raw, &window, settings.timeseries.dst)?;
    match settings.mode() {
        Mode::Heating => Ok(bundle),
        Mode::Cooling => {
            let p = bundle.power();
            let negated = p.with_values(p.values().iter().map(|v| -v.abs()).collect())?;
            InputBundle::new(negated, bundle.indoor_temp().clone(), bundle.inputs().clone())
        }
    }
}

fn weather_columns(settings: &Settings) -> ColumnSpec {
    settings
        .columns
        .restricted_to(&[Role::ExternalTemp, Role::SolarIrradiance, Role::Occupancy, Role::Ventilation])
}

fn read_weather(settings: &Settings, path: &Path) -> Result<RawBundle> {
    ingest_csv(path, &weather_columns(settings))
}

fn weather_inputs(settings: &Settings, raw: RawBundle, window: &Window) -> Result<ModelInputs> {
    let raw = with_schedules(settings, raw, window)?;
    align_inputs(&raw, window, settings.timeseries.dst)
}

/// Whole days of weather starting right after the history.
fn days_after(history: &InputBundle, raw: &RawBundle, max_days: Option<usize>) -> Result<Window> {
    let start = history.origin() + TimeDelta::minutes(15) * history.len() as i32;
    let (_, end) = covered_until(raw, Role::ExternalTemp)?;
    let mut days = ((midnight_floor(end) - start).num_days()).max(0) as usize;
    if let Some(m) = max_days {
        days = days.min(m);
    }
    if days == 0 {
        return Err(Error::Coverage {
            series: Role::ExternalTemp.to_string(),
            missing: format!("the day starting {start}"),
        });
    }
    Ok(Window::steps_from(start, days * STEPS_PER_DAY))
}

fn cmd_simulate(
    settings: &Settings,
    common: &Common,
    params: &Path,
    weather: &Path,
    history: Option<&Path>,
    initial_temp: Option<f64>,
) -> Result<Outcome> {
    let params = read_parameters(params)?;
    let config = settings.building_config();
    let raw = read_weather(settings, weather)?;
    let (window, initial) = match (history, initial_temp) {
        (Some(h), _) => {
            let history = load_history(settings, h)?;
            let window = days_after(&history, &raw, None)?;
            (window, settings.optimization.initial_state.state(&params, &config, &history)?)
        }
        (None, Some(t_i)) => {
            let (first, end) = covered_until(&raw, Role::ExternalTemp)?;
            let window = whole_days(first, end, "the weather")?;
            let t_e = align_series(&raw, Role::ExternalTemp, &window)?.values()[0];
            (window, ThermalState::new(t_i, (t_i + t_e) / 2.0))
        }
        (None, None) => {
            return Err(Error::Config("simulate needs --history or --initial-temp".into()));
        }
    };
    let inputs = weather_inputs(settings, raw, &window)?;
    let run = simulate(&params, &config, &inputs, initial, None)?;
    run.write_csv(common.out.join("simulation.csv"))?;
    println!(
        "simulated {} steps from {}: {:.1} kWh",
        run.len(),
        window.start,
        run.energy_kwh()
    );
    Ok(Outcome::Success)
}

fn cmd_calibrate(settings: &Settings, common: &Common, history: &Path) -> Result<Outcome> {
    let bundle = load_history(settings, history)?;
    let config = settings.building_config();
    let cal = calibrate(&bundle, &config, &settings.bounds, &settings.calibration, common.seed)?;
    cal.write_report(common.out.join("calibration.json"))?;
    cal.front.write_csv(common.out.join("pareto.csv"))?;
    write_parameters(common.out.join("params.json"), &cal.selected.params)?;
    let a = &cal.accuracy;
    println!(
        "front of {} candidates; selected f1 {:.3} %, f2 {:.1} W",
        cal.front.len(),
        cal.selected.scores.f1,
        cal.selected.scores.f2
    );
    println!(
        "gate {}: median |dT| {:.3} C, temperature error {:.3} %, power error {:.3} %",
        if a.pass { "passed" } else { "FAILED" },
        a.median_abs_temp_error,
        a.relative_temp_error,
        a.relative_power_error
    );
    Ok(if a.pass { Outcome::Success } else { Outcome::QualityFailure })
}

/// Fit of a parameter set on the calibration window of a history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub window_start: NaiveDateTime,
    pub window_steps: usize,
    pub scores: ObjectiveScores,
    pub accuracy: AccuracyReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastReport {
    pub fit: FitReport,
    pub forecast_start: NaiveDateTime,
    pub forecast_steps: usize,
    pub predicted_energy_kwh: f64,
    /// Fuel volume for the predicted energy, m³, when efficiency and LHV are set.
    pub fuel_volume_m3: Option<f64>,
}

fn fit_report(settings: &Settings, params: &RcParameters, history: &InputBundle) -> Result<FitReport> {
    let steps = (settings.calibration.window_days as usize * STEPS_PER_DAY).min(history.len());
    let window = history.tail(steps)?;
    let config = settings.building_config();
    Ok(FitReport {
        window_start: window.origin(),
        window_steps: window.len(),
        scores: evaluate_candidate(params, &config, &window),
        accuracy: accuracy_gate(params, &config, &window, settings.calibration.thresholds)?,
    })
}

fn cmd_forecast(settings: &Settings, common: &Common, params: &Path, history: &Path, weather: &Path) -> Result<Outcome> {
    let params = read_parameters(params)?;
    let config = settings.building_config();
    let history = load_history(settings, history)?;
    let raw = read_weather(settings, weather)?;
    let window = days_after(&history, &raw, None)?;
    let inputs = weather_inputs(settings, raw, &window)?;
    let initial = settings.optimization.initial_state.state(&params, &config, &history)?;
    let run = simulate(&params, &config, &inputs, initial, None)?;
    run.write_csv(common.out.join("forecast.csv"))?;
    let energy = run.energy_kwh();
    let report = ForecastReport {
        fit: fit_report(settings, &params, &history)?,
        forecast_start: window.start,
        forecast_steps: window.len(),
        predicted_energy_kwh: energy,
        fuel_volume_m3: config.fuel_volume(energy),
    };
    write_json(&common.out.join("forecast.json"), &report)?;
    println!("forecast {} steps from {}: {:.1} kWh", window.len(), window.start, energy);
    Ok(Outcome::Success)
}

fn check_gate(report: Option<&Path>, params: &Path, force: bool) -> Result<Option<Outcome>> {
    let path = match report {
        Some(p) => p.to_path_buf(),
        None => params.with_file_name("calibration.json"),
    };
    let cal: Calibration = match std::fs::read_to_string(&path) {
        Ok(text) => serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?,
        Err(_) if force => {
            eprintln!("warning: no calibration report at {}; continuing (--force)", path.display());
            return Ok(None);
        }
        Err(e) => return Err(Error::io(&path, e)),
    };
    if cal.accuracy.pass {
        Ok(None)
    } else if force {
        eprintln!("warning: calibration failed the accuracy gate; continuing (--force)");
        Ok(None)
    } else {
        eprintln!("calibration failed the accuracy gate; rerun with --force to optimise anyway");
        Ok(Some(Outcome::QualityFailure))
    }
}

fn write_starts(path: &Path, solution: &ScheduleSolution) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record([
        "start_day_start",
        "start_night_setpoint",
        "start_night_start",
        "end_day_start",
        "end_night_setpoint",
        "end_night_start",
        "energy_kWh",
        "constraint",
        "evaluations",
    ])?;
    let opt = |v: Option<f64>| v.map(fmt_sig).unwrap_or_default();
    for s in &solution.starts {
        w.write_record([
            fmt_sig(s.start.day_start),
            opt(s.start.night_setpoint),
            fmt_sig(s.start.night_start),
            fmt_sig(s.end.day_start),
            opt(s.end.night_setpoint),
            fmt_sig(s.end.night_start),
            fmt_sig(crate::scheduler::watt_sum_to_kwh(s.value.objective)),
            fmt_sig(s.value.constraint),
            s.evaluations.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn cmd_optimize(
    settings: &Settings,
    common: &Common,
    params_path: &Path,
    history: &Path,
    weather: &Path,
    calibration: Option<&Path>,
    force: bool,
) -> Result<Outcome> {
    if let Some(stop) = check_gate(calibration, params_path, force)? {
        return Ok(stop);
    }
    let params = read_parameters(params_path)?;
    let config = settings.building_config();
    let history = load_history(settings, history)?;
    let raw = read_weather(settings, weather)?;
    let window = days_after(&history, &raw, Some(1))?;
    let inputs = weather_inputs(settings, raw, &window)?;
    let initial = settings.optimization.initial_state.state(&params, &config, &history)?;
    let problem = DayAheadProblem::new(params, config.clone(), inputs, initial, settings.comfort()?)?;
    let configured = DecisionVector::from_config(&config);
    let space = DecisionSpace::new(
        settings.optimization.variables.clone(),
        settings.optimization.bounds,
        configured,
    )?;
    let solution = optimize_schedule(&problem, &space, &settings.optimization.search, common.seed)?;
    let file = SolutionFile::new(&solution, config.day_setpoint, config.night_setpoint);
    file.write(common.out.join("solution.json"))?;
    write_starts(&common.out.join("starts.csv"), &solution)?;
    problem.simulate(&solution.theta)?.write_csv(common.out.join("predicted.csv"))?;
    let baseline = problem.simulate(&configured)?;
    baseline.write_csv(common.out.join("baseline.csv"))?;

    println!(
        "schedule for {}: day from {}, night from {} at {} C",
        window.start.date(),
        file.day_start,
        file.night_start,
        fmt_sig(file.night_setpoint)
    );
    println!(
        "predicted {:.1} kWh (configured schedule {:.1} kWh), comfort margin {:.3} C, {} simulations",
        solution.predicted_energy_kwh,
        baseline.energy_kwh(),
        -solution.constraint_value,
        solution.evaluations_used
    );
    if solution.feasible {
        Ok(Outcome::Success)
    } else {
        eprintln!("no schedule satisfies the comfort constraint");
        Ok(Outcome::QualityFailure)
    }
}

/// Power and indoor temperature of a forecast file: either a simulation
/// export (`power_kW`, `T_i`) or a file in the configured column layout.
fn read_forecast(settings: &Settings, path: &Path) -> Result<RawBundle> {
    let export = ColumnSpec {
        power: Some("power_kW".into()),
        indoor_temp: Some("T_i".into()),
        ..Default::default()
    };
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Config(format!("{}: {other:?}", path.display())),
    })?;
    let header = reader.headers()?;
    let is_export = header.iter().any(|h| h == "power_kW") && header.iter().any(|h| h == "T_i");
    let columns = if is_export {
        export
    } else {
        settings.columns.restricted_to(&[Role::Power, Role::IndoorTemp])
    };
    ingest_csv(path, &columns)
}

fn magnitude(s: TimeSeries) -> Result<TimeSeries> {
    s.with_values(s.values().iter().map(|v| v.abs()).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub errors: ErrorReport,
    pub savings: Option<SavingsReport>,
    pub weather: Option<WeatherReport>,
}

fn cmd_evaluate(
    settings: &Settings,
    common: &Common,
    history: &Path,
    forecast: &Path,
    baseline: Option<&Path>,
    weather: Option<&Path>,
) -> Result<Outcome> {
    let forecast = read_forecast(settings, forecast)?;
    let (first, end) = covered_until(&forecast, Role::Power)?;
    let window = Window::new(first, end)?;
    let measured_columns = settings.columns.restricted_to(&[
        Role::Power,
        Role::IndoorTemp,
        Role::ExternalTemp,
        Role::SolarIrradiance,
    ]);
    let actual = ingest_csv(history, &measured_columns)?;
    let series = |raw: &RawBundle, role| align_series(raw, role, &window);

    let actual_power = magnitude(series(&actual, Role::Power)?)?;
    let forecast_power = magnitude(series(&forecast, Role::Power)?)?;
    let errors = error_summary(&daily_error_report(
        &forecast_power,
        &series(&forecast, Role::IndoorTemp)?,
        &actual_power,
        &series(&actual, Role::IndoorTemp)?,
    )?)?;
    errors.write_csv(common.out.join("errors.csv"))?;
    println!(
        "power error {:.2} kW ({:.2} %), temperature error {:.2} % over {} day(s)",
        errors.power_err_kw.mean,
        errors.power_err_percent.mean,
        errors.temp_err_percent.mean,
        errors.days.len()
    );

    let savings = match baseline {
        Some(path) => {
            let base = magnitude(series(&read_forecast(settings, path)?, Role::Power)?)?;
            let report = period_summary(&daily_savings(&base, &actual_power, &settings.savings_window()?)?)?;
            report.write_csv(common.out.join("savings.csv"))?;
            write_plot_data(common.out.join("plot.csv"), &actual_power, &forecast_power, &base)?;
            println!(
                "savings {:.1} kWh ({:.2} %) per day",
                report.kwh.mean, report.percent.mean
            );
            Some(report)
        }
        None => None,
    };

    let weather = match weather {
        Some(path) => {
            let predicted = read_weather(settings, path)?;
            let stats = |role| -> Result<_> { weather_error_stats(&series(&predicted, role)?, &series(&actual, role)?) };
            let report = WeatherReport {
                temperature: stats(Role::ExternalTemp)?,
                irradiance: stats(Role::SolarIrradiance)?,
            };
            report.write_csv(common.out.join("weather.csv"))?;
            Some(report)
        }
        None => None,
    };

    write_json(
        &common.out.join("evaluation.json"),
        &EvaluationReport {
            errors,
            savings,
            weather,
        },
    )?;
    Ok(Outcome::Success)
}
