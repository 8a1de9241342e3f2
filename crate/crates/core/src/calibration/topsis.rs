//! Compromise selection on a biobjective front.

/// Closeness of each point to the ideal: `d- / (d+ + d-)` after min-max
/// normalisation of both (cost) objectives with equal weights.
pub fn topsis_scores(points: &[[f64; 2]]) -> Vec<f64> {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let norm = |p: &[f64; 2]| -> [f64; 2] {
        std::array::from_fn(|k| if hi[k] > lo[k] { (p[k] - lo[k]) / (hi[k] - lo[k]) } else { 0.0 })
    };
    let normalised: Vec<[f64; 2]> = points.iter().map(norm).collect();
    let mut ideal = [f64::INFINITY; 2];
    let mut anti = [f64::NEG_INFINITY; 2];
    for n in &normalised {
        for k in 0..2 {
            ideal[k] = ideal[k].min(n[k]);
            anti[k] = anti[k].max(n[k]);
        }
    }
    normalised
        .iter()
        .map(|n| {
            let d_plus = ((n[0] - ideal[0]).powi(2) + (n[1] - ideal[1]).powi(2)).sqrt();
            let d_minus = ((n[0] - anti[0]).powi(2) + (n[1] - anti[1]).powi(2)).sqrt();
            if d_plus + d_minus > 0.0 {
                d_minus / (d_plus + d_minus)
            } else {
                0.0
            }
        })
        .collect()
}

/// Index of the best compromise. Ties go to the lower second objective, then
/// the lower first objective, then the earlier index.
pub fn topsis_select(points: &[[f64; 2]]) -> Option<usize> {
    let scores = topsis_scores(points);
    (0..points.len()).min_by(|&a, &b| {
        scores[b]
            .total_cmp(&scores[a])
            .then(points[a][1].total_cmp(&points[b][1]))
            .then(points[a][0].total_cmp(&points[b][0]))
            .then(a.cmp(&b))
    })
}
