//! Elitist non-dominated sorting genetic algorithm over a box.
//!
//! Genes are real-coded. Offspring come from binary tournaments on
//! (rank, crowding), simulated binary crossover and polynomial mutation, all
//! clamped to the box. Evaluation runs on the rayon pool; results are
//! collected in candidate order so the outcome depends on the seed only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Score substituted for non-finite objective values.
pub const PENALTY: f64 = 1e30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Nsga2Settings {
    pub population: usize,
    pub generations: usize,
    pub crossover_probability: f64,
    pub crossover_eta: f64,
    /// Per-gene mutation probability; `None` means `1 / genes`.
    pub mutation_probability: Option<f64>,
    pub mutation_eta: f64,
}

impl Default for Nsga2Settings {
    fn default() -> Self {
        Nsga2Settings {
            population: 80,
            generations: 150,
            crossover_probability: 0.9,
            crossover_eta: 15.0,
            mutation_probability: None,
            mutation_eta: 20.0,
        }
    }
}

impl Nsga2Settings {
    pub fn validate(&self) -> Result<()> {
        if self.population < 4 || !self.population.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "population must be even and at least 4, got {}",
                self.population
            )));
        }
        if self.generations < 1 {
            return Err(Error::Config("generations must be at least 1".into()));
        }
        let prob_ok = |p: f64| (0.0..=1.0).contains(&p);
        if !prob_ok(self.crossover_probability) || !self.mutation_probability.is_none_or(prob_ok) {
            return Err(Error::Config("operator probabilities must lie in [0, 1]".into()));
        }
        if !(self.crossover_eta >= 0.0 && self.mutation_eta >= 0.0) {
            return Err(Error::Config("distribution indices must be non-negative".into()));
        }
        Ok(())
    }
}

/// A scored point of the search box.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genes: Vec<f64>,
    pub objectives: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Nsga2Result {
    /// Non-dominated members of the final population.
    pub front: Vec<Individual>,
    pub population: Vec<Individual>,
    /// Lowest value of each objective in the population, one entry per
    /// generation (index 0 is the initial population).
    pub best_per_generation: Vec<Vec<f64>>,
}

/// `a` dominates `b`: no worse everywhere, strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Partitions indices into successive non-domination levels.
pub fn fast_nondominated_sort(objectives: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let n = objectives.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut count = vec![0usize; n];
    for p in 0..n {
        for q in (p + 1)..n {
            if dominates(&objectives[p], &objectives[q]) {
                dominated_by_me[p].push(q);
                count[q] += 1;
            } else if dominates(&objectives[q], &objectives[p]) {
                dominated_by_me[q].push(p);
                count[p] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by_me[p] {
                count[q] -= 1;
                if count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Crowding distance of each member of `front` (indices into `objectives`).
/// Extremes of an objective get infinity; an objective with zero range adds
/// nothing.
pub fn crowding_distance(objectives: &[Vec<f64>], front: &[usize]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n == 0 {
        return dist;
    }
    let m = objectives[front[0]].len();
    for k in 0..m {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| objectives[front[a]][k].total_cmp(&objectives[front[b]][k]));
        let lo = objectives[front[order[0]]][k];
        let hi = objectives[front[order[n - 1]]][k];
        let range = hi - lo;
        if !(range > 0.0) {
            continue;
        }
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        for w in 1..n.saturating_sub(1) {
            let gap = objectives[front[order[w + 1]]][k] - objectives[front[order[w - 1]]][k];
            dist[order[w]] += gap / range;
        }
    }
    dist
}

/// Keeps `n` of the given candidates: whole fronts first, then the most
/// isolated members of the front that does not fit. Returns indices with
/// their rank and crowding distance.
pub fn environmental_selection(objectives: &[Vec<f64>], n: usize) -> Vec<(usize, usize, f64)> {
    let mut chosen = Vec::with_capacity(n);
    for (rank, front) in fast_nondominated_sort(objectives).into_iter().enumerate() {
        if chosen.len() >= n {
            break;
        }
        let dist = crowding_distance(objectives, &front);
        let mut members: Vec<(usize, usize, f64)> =
            front.iter().zip(&dist).map(|(&i, &d)| (i, rank, d)).collect();
        if chosen.len() + members.len() > n {
            members.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.0.cmp(&b.0)));
            members.truncate(n - chosen.len());
        }
        chosen.extend(members);
    }
    chosen
}

fn sanitize(mut objectives: Vec<f64>) -> Vec<f64> {
    for v in &mut objectives {
        if !v.is_finite() {
            *v = PENALTY;
        }
    }
    objectives
}

fn sbx_pair(rng: &mut ChaCha8Rng, a: f64, b: f64, lo: f64, hi: f64, eta: f64) -> (f64, f64) {
    if (a - b).abs() <= 1e-14 || hi <= lo {
        return (a, b);
    }
    let (y1, y2) = if a < b { (a, b) } else { (b, a) };
    let u: f64 = rng.random();
    let spread = |beta: f64| {
        let alpha = 2.0 - beta.powf(-(eta + 1.0));
        if u <= 1.0 / alpha {
            (u * alpha).powf(1.0 / (eta + 1.0))
        } else {
            (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
        }
    };
    let bq1 = spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
    let bq2 = spread(1.0 + 2.0 * (hi - y2) / (y2 - y1));
    let c1 = (0.5 * ((y1 + y2) - bq1 * (y2 - y1))).clamp(lo, hi);
    let c2 = (0.5 * ((y1 + y2) + bq2 * (y2 - y1))).clamp(lo, hi);
    if rng.random_bool(0.5) {
        (c2, c1)
    } else {
        (c1, c2)
    }
}

fn polynomial_mutation(rng: &mut ChaCha8Rng, y: f64, lo: f64, hi: f64, eta: f64) -> f64 {
    if hi <= lo {
        return y;
    }
    let d1 = (y - lo) / (hi - lo);
    let d2 = (hi - y) / (hi - lo);
    let r: f64 = rng.random();
    let pow = 1.0 / (eta + 1.0);
    let dq = if r < 0.5 {
        let v = 2.0 * r + (1.0 - 2.0 * r) * (1.0 - d1).powf(eta + 1.0);
        v.powf(pow) - 1.0
    } else {
        let v = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * (1.0 - d2).powf(eta + 1.0);
        1.0 - v.powf(pow)
    };
    (y + dq * (hi - lo)).clamp(lo, hi)
}

fn evaluate_all<F>(genes: Vec<Vec<f64>>, evaluate: &F) -> Vec<Individual>
where
    F: Fn(&[f64]) -> Vec<f64> + Sync,
{
    genes
        .into_par_iter()
        .map(|g| {
            let objectives = sanitize(evaluate(&g));
            Individual { genes: g, objectives }
        })
        .collect()
}

fn best_of(pop: &[Individual]) -> Vec<f64> {
    let m = pop[0].objectives.len();
    (0..m)
        .map(|k| pop.iter().map(|i| i.objectives[k]).fold(f64::INFINITY, f64::min))
        .collect()
}

/// Minimises the objectives returned by `evaluate` over the box
/// `[lower, upper]`. Non-finite objective values are replaced by [`PENALTY`].
pub fn nsga2<F>(evaluate: F, lower: &[f64], upper: &[f64], settings: &Nsga2Settings, seed: u64) -> Result<Nsga2Result>
where
    F: Fn(&[f64]) -> Vec<f64> + Sync,
{
    settings.validate()?;
    let dim = lower.len();
    if dim == 0 || upper.len() != dim || lower.iter().zip(upper).any(|(l, u)| !(l <= u)) {
        return Err(Error::Config("search box must be non-empty with lower <= upper".into()));
    }
    let n = settings.population;
    let p_mut = settings.mutation_probability.unwrap_or(1.0 / dim as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let initial: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|j| lower[j] + rng.random::<f64>() * (upper[j] - lower[j])).collect())
        .collect();
    let mut population = evaluate_all(initial, &evaluate);
    let objs: Vec<Vec<f64>> = population.iter().map(|i| i.objectives.clone()).collect();
    let mut ranked = environmental_selection(&objs, n);
    let mut history = vec![best_of(&population)];

    for _ in 0..settings.generations {
        // (rank, crowding) per population slot, in the order kept by selection.
        let pool: Vec<(usize, f64)> = ranked.iter().map(|&(_, r, d)| (r, d)).collect();
        let parents: Vec<&Individual> = ranked.iter().map(|&(i, _, _)| &population[i]).collect();
        let tournament = |rng: &mut ChaCha8Rng| {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            match pool[a].0.cmp(&pool[b].0) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal if pool[a].1 > pool[b].1 => a,
                std::cmp::Ordering::Equal if pool[b].1 > pool[a].1 => b,
                _ => a.min(b),
            }
        };

        let mut children = Vec::with_capacity(n);
        while children.len() < n {
            let p1 = parents[tournament(&mut rng)];
            let p2 = parents[tournament(&mut rng)];
            let (mut c1, mut c2) = (p1.genes.clone(), p2.genes.clone());
            if rng.random_bool(settings.crossover_probability) {
                for j in 0..dim {
                    if rng.random_bool(0.5) {
                        let (x, y) = sbx_pair(&mut rng, c1[j], c2[j], lower[j], upper[j], settings.crossover_eta);
                        c1[j] = x;
                        c2[j] = y;
                    }
                }
            }
            for child in [&mut c1, &mut c2] {
                for j in 0..dim {
                    if rng.random_bool(p_mut) {
                        child[j] = polynomial_mutation(&mut rng, child[j], lower[j], upper[j], settings.mutation_eta);
                    }
                }
            }
            children.push(c1);
            children.push(c2);
        }

        let offspring = evaluate_all(children, &evaluate);
        let mut combined: Vec<Individual> = ranked.iter().map(|&(i, _, _)| population[i].clone()).collect();
        combined.extend(offspring);
        let objs: Vec<Vec<f64>> = combined.iter().map(|i| i.objectives.clone()).collect();
        let selected = environmental_selection(&objs, n);
        population = selected.iter().map(|&(i, _, _)| combined[i].clone()).collect();
        ranked = selected
            .iter()
            .enumerate()
            .map(|(slot, &(_, r, d))| (slot, r, d))
            .collect();
        history.push(best_of(&population));
    }

    let final_pop: Vec<Individual> = ranked.iter().map(|&(i, _, _)| population[i].clone()).collect();
    let objs: Vec<Vec<f64>> = final_pop.iter().map(|i| i.objectives.clone()).collect();
    let front = fast_nondominated_sort(&objs)
        .first()
        .map(|f| f.iter().map(|&i| final_pop[i].clone()).collect())
        .unwrap_or_default();
    Ok(Nsga2Result {
        front,
        population: final_pop,
        best_per_generation: history,
    })
}

/// Area dominated by a set of biobjective points, bounded by `reference`.
pub fn hypervolume_2d(points: &[[f64; 2]], reference: [f64; 2]) -> f64 {
    let mut pts: Vec<[f64; 2]> = points
        .iter()
        .copied()
        .filter(|p| p[0] < reference[0] && p[1] < reference[1])
        .collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = reference[1];
    for p in pts {
        if p[1] < ceiling {
            area += (reference[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    area
}
