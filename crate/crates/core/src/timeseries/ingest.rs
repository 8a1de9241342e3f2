use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use chrono::NaiveDateTime;
use serde::{Deserialize, Serialize};

use super::{ScheduleSeries, TimeSeries, Unit};
use crate::error::{Error, Result};

/// Longest run of missing rows (in native steps) that is filled rather than rejected.
pub const MAX_FILLED_GAP: i64 = 4;

pub(crate) const TIMESTAMP_FORMAT: &str = "%Y-%m-%dT%H:%M";

/// What a CSV column means to the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Power,
    IndoorTemp,
    ExternalTemp,
    SolarIrradiance,
    Occupancy,
    Ventilation,
}

impl Role {
    pub const ALL: [Role; 6] = [
        Role::Power,
        Role::IndoorTemp,
        Role::ExternalTemp,
        Role::SolarIrradiance,
        Role::Occupancy,
        Role::Ventilation,
    ];

    pub fn is_schedule(self) -> bool {
        matches!(self, Role::Occupancy | Role::Ventilation)
    }

    /// Unit of the column as it appears in input files.
    pub fn file_unit(self) -> Unit {
        match self {
            Role::Power => Unit::Kilowatt,
            Role::IndoorTemp | Role::ExternalTemp => Unit::Celsius,
            Role::SolarIrradiance => Unit::WattPerSquareMetre,
            Role::Occupancy | Role::Ventilation => Unit::Dimensionless,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Role::Power => "power",
            Role::IndoorTemp => "indoor_temp",
            Role::ExternalTemp => "external_temp",
            Role::SolarIrradiance => "solar_irradiance",
            Role::Occupancy => "occupancy",
            Role::Ventilation => "ventilation",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Maps roles to CSV header names. Unmapped roles are not read.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnSpec {
    pub power: Option<String>,
    pub indoor_temp: Option<String>,
    pub external_temp: Option<String>,
    pub solar_irradiance: Option<String>,
    pub occupancy: Option<String>,
    pub ventilation: Option<String>,
}

impl ColumnSpec {
    pub fn get(&self, role: Role) -> Option<&str> {
        match role {
            Role::Power => self.power.as_deref(),
            Role::IndoorTemp => self.indoor_temp.as_deref(),
            Role::ExternalTemp => self.external_temp.as_deref(),
            Role::SolarIrradiance => self.solar_irradiance.as_deref(),
            Role::Occupancy => self.occupancy.as_deref(),
            Role::Ventilation => self.ventilation.as_deref(),
        }
    }

    pub fn mapped(&self) -> Vec<(Role, &str)> {
        Role::ALL
            .iter()
            .filter_map(|r| self.get(*r).map(|c| (*r, c)))
            .collect()
    }

    /// Keeps only the given roles.
    pub fn restricted_to(&self, roles: &[Role]) -> ColumnSpec {
        let keep = |r: Role, v: &Option<String>| if roles.contains(&r) { v.clone() } else { None };
        ColumnSpec {
            power: keep(Role::Power, &self.power),
            indoor_temp: keep(Role::IndoorTemp, &self.indoor_temp),
            external_temp: keep(Role::ExternalTemp, &self.external_temp),
            solar_irradiance: keep(Role::SolarIrradiance, &self.solar_irradiance),
            occupancy: keep(Role::Occupancy, &self.occupancy),
            ventilation: keep(Role::Ventilation, &self.ventilation),
        }
    }
}

/// Series as read from files, each on its own native sampling.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawBundle {
    measured: BTreeMap<Role, TimeSeries>,
    schedules: BTreeMap<Role, ScheduleSeries>,
}

impl RawBundle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_series(mut self, role: Role, series: TimeSeries) -> Self {
        debug_assert!(!role.is_schedule());
        self.measured.insert(role, series);
        self
    }

    pub fn with_schedule(mut self, role: Role, series: ScheduleSeries) -> Self {
        debug_assert!(role.is_schedule());
        self.schedules.insert(role, series);
        self
    }

    pub fn series(&self, role: Role) -> Option<&TimeSeries> {
        self.measured.get(&role)
    }

    pub fn schedule(&self, role: Role) -> Option<&ScheduleSeries> {
        self.schedules.get(&role)
    }

    pub fn has(&self, role: Role) -> bool {
        self.measured.contains_key(&role) || self.schedules.contains_key(&role)
    }

    /// Combines two bundles; roles present in `other` replace ours.
    pub fn merge(mut self, other: RawBundle) -> Self {
        self.measured.extend(other.measured);
        self.schedules.extend(other.schedules);
        self
    }

    pub fn roles(&self) -> Vec<Role> {
        Role::ALL.iter().copied().filter(|r| self.has(*r)).collect()
    }
}

/// Writes the bundle in the ingestion format, one column per role named
/// after the role, power in kW. Every series must share one sampling.
pub fn write_csv(raw: &RawBundle, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let roles = raw.roles();
    let Some(first) = roles.first() else {
        return Err(Error::InsufficientData("nothing to write".into()));
    };
    let shape = |r: Role| match (raw.series(r), raw.schedule(r)) {
        (Some(s), _) => (s.origin(), s.step(), s.len()),
        (None, Some(s)) => (s.origin(), s.step(), s.len()),
        (None, None) => unreachable!("role listed by roles()"),
    };
    let (origin, step, len) = shape(*first);
    if let Some(r) = roles.iter().find(|r| shape(**r) != (origin, step, len)) {
        return Err(Error::Config(format!("{r} does not share the sampling of {first}")));
    }
    let mut w = crate::format::csv_writer(path)?;
    let mut header = vec!["timestamp"];
    header.extend(roles.iter().map(|r| r.name()));
    w.write_record(&header)?;
    for k in 0..len {
        let mut row = vec![(origin + step * k as i32).format(TIMESTAMP_FORMAT).to_string()];
        for r in &roles {
            row.push(match (raw.series(*r), raw.schedule(*r)) {
                (Some(s), _) if *r == Role::Power => crate::format::fmt_sig(s.values()[k] / 1000.0),
                (Some(s), _) => crate::format::fmt_sig(s.values()[k]),
                (None, Some(s)) => (s.values()[k] as u8).to_string(),
                (None, None) => unreachable!(),
            });
        }
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn parse_timestamp(text: &str, line: u64) -> Result<NaiveDateTime> {
    NaiveDateTime::parse_from_str(text.trim(), TIMESTAMP_FORMAT).map_err(|_| Error::Ingestion {
        line,
        message: format!("unparseable timestamp `{text}` (expected YYYY-MM-DDTHH:MM)"),
    })
}

fn parse_cell(text: &str, role: Role, column: &str, line: u64) -> Result<f64> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Ingestion {
            line,
            message: format!("empty `{column}` cell ({role})"),
        });
    }
    let value: f64 = text.parse().map_err(|_| Error::Ingestion {
        line,
        message: format!("`{text}` in column `{column}` is not a number"),
    })?;
    if !value.is_finite() {
        return Err(Error::Ingestion {
            line,
            message: format!("non-finite value in column `{column}`"),
        });
    }
    if role.is_schedule() && value != 0.0 && value != 1.0 {
        return Err(Error::Ingestion {
            line,
            message: format!("schedule column `{column}` must be 0 or 1, got {value}"),
        });
    }
    Ok(value)
}

/// Reads a CSV whose first column is a local `YYYY-MM-DDTHH:MM` timestamp and
/// whose other columns are mapped to roles by `columns`.
///
/// Series keep the file's native sampling. Power is converted from kW to W.
/// Missing rows up to [`MAX_FILLED_GAP`] consecutive steps are filled by
/// linear interpolation (hold for schedules); longer gaps reject the file.
pub fn ingest_csv(path: impl AsRef<Path>, columns: &ColumnSpec) -> Result<RawBundle> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let headers = reader.headers()?.clone();
    let wanted = columns.mapped();
    if wanted.is_empty() {
        return Err(Error::Config("no columns mapped for ingestion".into()));
    }
    let mut indices = Vec::with_capacity(wanted.len());
    for (role, name) in &wanted {
        let hits: Vec<usize> = headers
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, h)| h == name)
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [] => {
                return Err(Error::Config(format!(
                    "column `{name}` for {role} not found in {}",
                    path.display()
                )))
            }
            [i] => indices.push(*i),
            _ => {
                return Err(Error::Config(format!(
                    "column `{name}` for {role} appears more than once in {}",
                    path.display()
                )))
            }
        }
    }

    let mut stamps: Vec<(NaiveDateTime, u64)> = Vec::new();
    let mut columns_data: Vec<Vec<f64>> = vec![Vec::new(); wanted.len()];
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let t = parse_timestamp(record.get(0).unwrap_or(""), line)?;
        if let Some((prev, _)) = stamps.last() {
            if t <= *prev {
                return Err(Error::Ingestion {
                    line,
                    message: format!("non-monotone timestamp {t} follows {prev}"),
                });
            }
        }
        for (k, ((role, name), idx)) in wanted.iter().zip(&indices).enumerate() {
            let cell = record.get(*idx).ok_or_else(|| Error::Ingestion {
                line,
                message: format!("row is missing column `{name}`"),
            })?;
            columns_data[k].push(parse_cell(cell, *role, name, line)?);
        }
        stamps.push((t, line));
    }
    if stamps.is_empty() {
        return Err(Error::InsufficientData(format!(
            "{} has no data rows",
            path.display()
        )));
    }

    let step = stamps
        .windows(2)
        .map(|w| w[1].0 - w[0].0)
        .min()
        .unwrap_or_else(super::grid_step);
    if step.num_seconds() % 60 != 0 {
        return Err(Error::Ingestion {
            line: stamps[1].1,
            message: "sampling interval is not a whole number of minutes".into(),
        });
    }

    // Slot of each row on the regular grid; gaps are validated here.
    let mut slots = Vec::with_capacity(stamps.len());
    for (i, (t, line)) in stamps.iter().enumerate() {
        let offset = *t - stamps[0].0;
        if offset.num_seconds() % step.num_seconds() != 0 {
            return Err(Error::Ingestion {
                line: *line,
                message: format!("timestamp {t} is off the {}-minute sampling grid", step.num_minutes()),
            });
        }
        let slot = offset.num_seconds() / step.num_seconds();
        if i > 0 {
            let missing = slot - slots[i - 1] - 1;
            if missing > MAX_FILLED_GAP {
                return Err(Error::Ingestion {
                    line: *line,
                    message: format!(
                        "gap of {missing} missing steps before {t} exceeds the {MAX_FILLED_GAP}-step fill limit"
                    ),
                });
            }
        }
        slots.push(slot);
    }

    let origin = stamps[0].0;
    let mut bundle = RawBundle::new();
    for ((role, _), data) in wanted.iter().zip(columns_data) {
        let filled = fill_gaps(&slots, &data, role.is_schedule());
        if role.is_schedule() {
            let values = filled.iter().map(|v| *v == 1.0).collect();
            bundle = bundle.with_schedule(*role, ScheduleSeries::new(origin, step, values)?);
        } else {
            let series = TimeSeries::new(origin, step, filled, role.file_unit())?.into_watts();
            bundle = bundle.with_series(*role, series);
        }
    }
    Ok(bundle)
}

fn fill_gaps(slots: &[i64], data: &[f64], hold: bool) -> Vec<f64> {
    let total = (slots[slots.len() - 1] + 1) as usize;
    let mut out = Vec::with_capacity(total);
    for i in 0..data.len() {
        if i > 0 {
            let gap = slots[i] - slots[i - 1];
            for j in 1..gap {
                let v = if hold {
                    data[i - 1]
                } else {
                    let w = j as f64 / gap as f64;
                    data[i - 1] + (data[i] - data[i - 1]) * w
                };
                out.push(v);
            }
        }
        out.push(data[i]);
    }
    out
}
