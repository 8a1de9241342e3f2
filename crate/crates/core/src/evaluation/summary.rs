use serde::{Deserialize, Serialize};

/// Mean and standard deviation of a column of daily values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Population standard deviation; 0 for a single value.
    pub sd: f64,
    pub count: usize,
    pub single_sample: bool,
}

/// Mean and population (divide by n) standard deviation.
pub fn summarize(values: &[f64]) -> Option<Summary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = if values.len() == 1 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
    };
    Some(Summary {
        mean,
        sd,
        count: values.len(),
        single_sample: values.len() == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn population_deviation() {
        let s = summarize(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]).unwrap();
        assert_eq!(s.mean, 5.0);
        assert_eq!(s.sd, 2.0);
        assert!(!s.single_sample);
    }

    #[test]
    fn single_value_is_flagged() {
        let s = summarize(&[3.5]).unwrap();
        assert_eq!((s.mean, s.sd, s.single_sample), (3.5, 0.0, true));
        assert!(summarize(&[]).is_none());
    }
}
