//! Synthetic office building and winter weather for demonstrations and
//! tests. Data come from the model itself with known parameters, so a
//! calibration can be checked against ground truth.

use std::path::{Path, PathBuf};

use chrono::{NaiveDate, NaiveDateTime, TimeDelta};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::clock::ClockTime;
use crate::error::{Error, Result};
use crate::model::{simulate, BuildingConfig, Mode, RcParameters, ThermalState};
use crate::scheduler::DecisionVector;
use crate::settings::Settings;
use crate::timeseries::{
    align_inputs, write_csv, DstRule, InputBundle, ModelInputs, RawBundle, Role, TimeSeries, Unit, WeeklySchedule, Window,
    STEPS_PER_DAY,
};

/// Hourly winter weather. Temperature cycles daily on a slowly drifting base
/// with AR(1) noise; clear-sky irradiance is dimmed by daily cloudiness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WinterWeather {
    pub mean_temp: f64,
    pub daily_amplitude: f64,
    /// Day-to-day standard deviation of the base temperature random walk.
    pub drift_sd: f64,
    pub noise_sd: f64,
    pub peak_irradiance: f64,
}

impl Default for WinterWeather {
    fn default() -> Self {
        WinterWeather {
            mean_temp: 3.0,
            daily_amplitude: 4.0,
            drift_sd: 1.5,
            noise_sd: 0.4,
            peak_irradiance: 450.0,
        }
    }
}

impl WinterWeather {
    /// External temperature and solar irradiance, hourly from `start`.
    pub fn generate(&self, start: NaiveDateTime, hours: usize, seed: u64) -> Result<(TimeSeries, TimeSeries)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let unit_normal = Normal::new(0.0, 1.0).expect("valid normal");
        let days = hours / 24 + 2;
        let mut base = Vec::with_capacity(days);
        let mut level = self.mean_temp;
        let mut clouds = Vec::with_capacity(days);
        for _ in 0..days {
            base.push(level);
            // Mean-reverting walk keeps long runs near the seasonal mean.
            level += 0.3 * (self.mean_temp - level) + self.drift_sd * unit_normal.sample(&mut rng);
            clouds.push(0.25 + 0.75 * rand::Rng::random::<f64>(&mut rng));
        }
        let mut noise = 0.0;
        let mut temp = Vec::with_capacity(hours);
        let mut solar = Vec::with_capacity(hours);
        for h in 0..hours {
            let t = start + TimeDelta::hours(h as i64);
            let day = h / 24;
            let hour = ClockTime::of(&t).minutes() as f64 / 60.0;
            let frac = (h % 24) as f64 / 24.0;
            // Interpolate the base between days to avoid steps at midnight.
            let b = base[day] + (base[day + 1] - base[day]) * frac;
            noise = 0.8 * noise + self.noise_sd * unit_normal.sample(&mut rng);
            let cycle = -self.daily_amplitude * (2.0 * std::f64::consts::PI * (hour - 3.0) / 24.0).cos();
            temp.push(b + cycle + noise);
            let sun = if (8.0..=17.0).contains(&hour) {
                (std::f64::consts::PI * (hour - 8.0) / 9.0).sin().max(0.0)
            } else {
                0.0
            };
            solar.push(self.peak_irradiance * clouds[day] * sun);
        }
        Ok((
            TimeSeries::new(start, TimeDelta::hours(1), temp, Unit::Celsius)?,
            TimeSeries::new(start, TimeDelta::hours(1), solar, Unit::WattPerSquareMetre)?,
        ))
    }
}

/// A large office with known network parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticBuilding {
    pub params: RcParameters,
    pub config: BuildingConfig,
    pub schedule: WeeklySchedule,
}

impl SyntheticBuilding {
    pub fn office() -> Self {
        let t = |h, m| ClockTime::from_hm(h, m).expect("valid time");
        SyntheticBuilding {
            params: RcParameters {
                r_i: 6.7e-6,
                r_m: 5.0e-5,
                r_s: 1.0e-5,
                r_f: 5.0e-5,
                r_v: 6.7e-5,
                r_e: 1.0e-5,
                c_i: 2.0e8,
                c_m: 5.0e9,
                g: 8.0e4,
                alpha: 60.0,
                a: 0.4,
            },
            config: BuildingConfig {
                mode: Mode::Heating,
                p_min: 0.0,
                p_max: 1.635e6,
                day_setpoint: 24.0,
                night_setpoint: 16.0,
                day_start: t(6, 0),
                day_end: t(21, 0),
                volume: 75_000.0,
                machine_efficiency: 0.9,
                lhv: 10.5,
                substeps: 1,
            },
            schedule: WeeklySchedule::weekdays([t(7, 0), t(21, 0)], [t(6, 0), t(20, 0)]),
        }
    }
}

/// A building with a history window and the day after it. Weather covers both.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub building: SyntheticBuilding,
    pub first_day: NaiveDate,
    pub history_days: u32,
    /// Hourly weather from `first_day` through the end of the forecast day.
    pub weather: RawBundle,
}

/// Indoor temperature the synthetic history starts from.
pub const INITIAL_INDOOR_TEMP: f64 = 16.0;

impl Scenario {
    pub fn new(
        building: SyntheticBuilding,
        first_day: NaiveDate,
        history_days: u32,
        weather: &WinterWeather,
        seed: u64,
    ) -> Result<Self> {
        let start = first_day.and_hms_opt(0, 0, 0).expect("midnight");
        let hours = (history_days as usize + 1) * 24 + 1;
        let (t_e, solar) = weather.generate(start, hours, seed)?;
        Ok(Scenario {
            building,
            first_day,
            history_days,
            weather: RawBundle::new()
                .with_series(Role::ExternalTemp, t_e)
                .with_series(Role::SolarIrradiance, solar),
        })
    }

    /// The office over 28 winter days starting Monday 2018-01-08.
    pub fn winter_office(seed: u64) -> Result<Self> {
        let first = NaiveDate::from_ymd_opt(2018, 1, 8).expect("valid date");
        Scenario::new(SyntheticBuilding::office(), first, 28, &WinterWeather::default(), seed)
    }

    pub fn history_window(&self) -> Window {
        Window::days(self.first_day, self.history_days)
    }

    pub fn forecast_day(&self) -> NaiveDate {
        self.first_day + TimeDelta::days(self.history_days as i64)
    }

    pub fn forecast_window(&self) -> Window {
        Window::days(self.forecast_day(), 1)
    }

    pub fn inputs(&self, window: &Window) -> Result<ModelInputs> {
        let raw = self.weather.clone().with_template_schedules(&self.building.schedule, window)?;
        align_inputs(&raw, window, DstRule::EuropeanUnion)
    }

    pub fn forecast_inputs(&self) -> Result<ModelInputs> {
        self.inputs(&self.forecast_window())
    }

    /// Simulated measurements over the history window. Power carries
    /// multiplicative Gaussian noise with standard deviation `power_noise`
    /// (0.01 is 1 %).
    pub fn history(&self, power_noise: f64, noise_seed: u64) -> Result<InputBundle> {
        let inputs = self.inputs(&self.history_window())?;
        let t_e0 = inputs.external_temp().values()[0];
        let initial = ThermalState::new(INITIAL_INDOOR_TEMP, (INITIAL_INDOOR_TEMP + t_e0) / 2.0);
        let run = simulate(&self.building.params, &self.building.config, &inputs, initial, None)?;
        let mut power = run.power.into_values();
        if power_noise > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(noise_seed);
            let normal = Normal::new(0.0, power_noise).expect("valid noise level");
            for p in &mut power {
                *p *= 1.0 + normal.sample(&mut rng);
            }
        }
        let origin = inputs.origin();
        InputBundle::new(
            TimeSeries::on_grid(origin, power, Unit::Watt)?,
            run.indoor_temp,
            inputs,
        )
    }

    /// What the building would log on the forecast day when run with
    /// `decision` (the configured schedule when `None`), continuing from the
    /// true state at the end of the history.
    pub fn measured_day(&self, decision: Option<&DecisionVector>) -> Result<InputBundle> {
        let b = &self.building;
        let history = self.inputs(&self.history_window())?;
        let t_e0 = history.external_temp().values()[0];
        let initial = ThermalState::new(INITIAL_INDOOR_TEMP, (INITIAL_INDOOR_TEMP + t_e0) / 2.0);
        let end = simulate(&b.params, &b.config, &history, initial, None)?.final_state;
        let inputs = self.forecast_inputs()?;
        let run = simulate(&b.params, &b.config, &inputs, end, decision)?;
        InputBundle::new(run.power, run.indoor_temp, inputs)
    }

    pub fn history_steps(&self) -> usize {
        self.history_days as usize * STEPS_PER_DAY
    }

    /// Run settings describing this building, with schedule columns read
    /// from the CSV files.
    pub fn settings(&self) -> Settings {
        let mut s = Settings::default().with_building(&self.building.config);
        s.columns.occupancy = Some(Role::Occupancy.name().into());
        s.columns.ventilation = Some(Role::Ventilation.name().into());
        s
    }

    /// Writes `history.csv`, `weather.csv` (the forecast day) and
    /// `config.toml` into `dir`.
    pub fn write_files(&self, dir: impl AsRef<Path>, power_noise: f64, noise_seed: u64) -> Result<ScenarioFiles> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let files = ScenarioFiles {
            history: dir.join("history.csv"),
            weather: dir.join("weather.csv"),
            config: dir.join("config.toml"),
        };
        write_csv(&RawBundle::from(&self.history(power_noise, noise_seed)?), &files.history)?;
        write_csv(&RawBundle::from(&self.forecast_inputs()?), &files.weather)?;
        self.settings().write(&files.config)?;
        Ok(files)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioFiles {
    pub history: PathBuf,
    pub weather: PathBuf,
    pub config: PathBuf,
}
