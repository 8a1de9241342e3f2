use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Latin hypercube sample of `count` points in the unit cube of dimension
/// `dim`: each axis is cut into `count` equal strata and every stratum holds
/// exactly one point, placed uniformly inside it.
pub fn lhs_unit(dim: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut points = vec![vec![0.0; dim]; count];
    let mut strata: Vec<usize> = (0..count).collect();
    for j in 0..dim {
        strata.shuffle(rng);
        for (i, &s) in strata.iter().enumerate() {
            points[i][j] = (s as f64 + rng.random::<f64>()) / count as f64;
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn strata_hit(points: &[Vec<f64>], j: usize) -> Vec<usize> {
        let n = points.len();
        let mut s: Vec<usize> = points.iter().map(|p| ((p[j] * n as f64).floor() as usize).min(n - 1)).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn one_point_per_quarter() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = lhs_unit(1, 4, &mut rng);
        assert_eq!(strata_hit(&p, 0), vec![0, 1, 2, 3]);
    }

    #[test]
    fn every_marginal_is_stratified() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = lhs_unit(3, 10, &mut rng);
        for j in 0..3 {
            assert_eq!(strata_hit(&p, j), (0..10).collect::<Vec<_>>());
        }
    }

    #[test]
    fn seeded() {
        let a = lhs_unit(3, 10, &mut ChaCha8Rng::seed_from_u64(3));
        let b = lhs_unit(3, 10, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }
}
