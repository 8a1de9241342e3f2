//! Wall-clock times of day (`HH:MM`).

use std::fmt;
use std::str::FromStr;

use chrono::{NaiveDateTime, Timelike};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MINUTES_PER_DAY: u32 = 24 * 60;

/// A time of day with minute resolution, stored as minutes since midnight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClockTime(u32);

impl ClockTime {
    pub const MIDNIGHT: ClockTime = ClockTime(0);

    pub fn from_minutes(minutes: u32) -> Result<Self> {
        if minutes > MINUTES_PER_DAY {
            return Err(Error::Config(format!(
                "clock time {minutes} min is beyond the end of the day"
            )));
        }
        Ok(ClockTime(minutes))
    }

    pub fn from_hm(hour: u32, minute: u32) -> Result<Self> {
        if minute >= 60 {
            return Err(Error::Config(format!("invalid minute {minute}")));
        }
        Self::from_minutes(hour * 60 + minute)
    }

    pub fn minutes(self) -> u32 {
        self.0
    }

    pub fn of(t: &NaiveDateTime) -> Self {
        ClockTime(t.hour() * 60 + t.minute())
    }
}

/// Formats fractional minutes since midnight as `HH:MM` (rounded to the minute).
pub fn format_minutes(minutes: f64) -> String {
    let total = minutes.round().clamp(0.0, MINUTES_PER_DAY as f64) as u32;
    format!("{:02}:{:02}", total / 60, total % 60)
}

impl FromStr for ClockTime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (h, m) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("expected HH:MM, got `{s}`")))?;
        let hour: u32 = h
            .parse()
            .map_err(|_| Error::Config(format!("invalid hour in `{s}`")))?;
        let minute: u32 = m
            .parse()
            .map_err(|_| Error::Config(format!("invalid minute in `{s}`")))?;
        if m.len() != 2 || hour > 24 || (hour == 24 && minute != 0) {
            return Err(Error::Config(format!("invalid clock time `{s}`")));
        }
        ClockTime::from_hm(hour, minute)
    }
}

impl fmt::Display for ClockTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}:{:02}", self.0 / 60, self.0 % 60)
    }
}

impl Serialize for ClockTime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClockTime {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let t: ClockTime = "06:30".parse().unwrap();
        assert_eq!(t.minutes(), 390);
        assert_eq!(t.to_string(), "06:30");
        assert_eq!("24:00".parse::<ClockTime>().unwrap().minutes(), 1440);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["6", "25:00", "06:60", "ab:cd", "06:5"] {
            assert!(bad.parse::<ClockTime>().is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_fractional_minutes() {
        assert_eq!(format_minutes(389.6), "06:30");
        assert_eq!(format_minutes(0.0), "00:00");
    }
}
