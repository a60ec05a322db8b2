//! Monte Carlo ground truth.
//!
//! Each drop places the typical UE at the origin, samples both BS processes
//! on a disc, realizes the caches, draws the requested file and evaluates
//! the SINR of the nearest caching BS of each tier. Drop `d` uses the
//! ChaCha stream `d` of the user seed, and results are reduced in fixed
//! chunks, so estimates do not depend on the number of threads.

use std::f64::consts::{LN_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use crate::analytic::Scheme;
use crate::error::{invalid, Result};
use crate::model::{array_gain, CacheModel, FadingSampler, NetworkModel, Tier};

/// Drops per reduction chunk.
const CHUNK: u64 = 256;

/// z-value of a two-sided 95% interval.
const Z95: f64 = 1.96;

/// Points of a homogeneous PPP of `density` on the disc of `radius` about
/// the origin.
pub fn sample_ppp<R: Rng + ?Sized>(density: f64, radius: f64, rng: &mut R) -> Result<Vec<[f64; 2]>> {
    if !(density >= 0.0) || !(radius > 0.0) {
        return invalid(format!("PPP needs density >= 0 and radius > 0, got {density}, {radius}"));
    }
    let mean = density * PI * radius * radius;
    if mean == 0.0 {
        return Ok(Vec::new());
    }
    let poisson = Poisson::new(mean).map_err(|e| crate::Error::InvalidParameter(e.to_string()))?;
    let n = poisson.sample(rng) as usize;
    Ok((0..n)
        .map(|_| {
            let rho = radius * rng.random::<f64>().sqrt();
            let theta = 2.0 * PI * rng.random::<f64>();
            [rho * theta.cos(), rho * theta.sin()]
        })
        .collect())
}

/// Cumulative placement `c_f = Σ_{g ≤ f} p_g` with `c_0 = 0`.
fn cumulative(placement: &[f64]) -> Vec<f64> {
    let mut c = Vec::with_capacity(placement.len() + 1);
    c.push(0.0);
    let mut acc = 0.0;
    for &p in placement {
        acc += p;
        c.push(acc);
    }
    c
}

/// Whether the BS with decision value `u` caches `file` under the block
/// scheme: the placement probabilities are laid end to end over `storage`
/// unit blocks and block `b` holds the file whose interval contains `u + b`.
fn block_caches(cum: &[f64], storage: usize, u: f64, file: usize) -> bool {
    if file == 0 || file >= cum.len() {
        return false;
    }
    let (lo, hi) = (cum[file - 1], cum[file]);
    let b = (lo - u).ceil().max(0.0);
    b < storage as f64 && u + b < hi
}

/// Files cached by one BS with decision value `u`, in increasing order.
pub fn cache_set_from_offset(placement: &[f64], storage: usize, u: f64) -> Vec<usize> {
    let cum = cumulative(placement);
    let mut files = Vec::with_capacity(storage);
    for b in 0..storage {
        let point = u + b as f64;
        // first file whose interval ends after the point
        let f = cum[1..].partition_point(|&c| c <= point) + 1;
        if f < cum.len() && files.last() != Some(&f) {
            files.push(f);
        }
    }
    files
}

/// Cache sets of `n_bs` independent BSs of `tier`.
pub fn realize_caches<R: Rng + ?Sized>(tier: Tier, n_bs: usize, cache: &CacheModel, rng: &mut R) -> Vec<Vec<usize>> {
    let placement = cache.placement(tier);
    let storage = cache.storage(tier);
    (0..n_bs)
        .map(|_| cache_set_from_offset(placement, storage, rng.random::<f64>()))
        .collect()
}

/// Simulator switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    pub include_noise: bool,
    /// Add NLOS pico interferers beyond the LOS ball.
    pub include_nlos: bool,
    /// Request this file in every drop instead of drawing from the Zipf law.
    pub forced_file: Option<usize>,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            include_noise: true,
            include_nlos: false,
            forced_file: None,
        }
    }
}

/// What a drop is scored on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// `SINR > τ` at the nearest `tier` BS caching `file`, ignoring association.
    Coverage { tier: Tier, file: usize },
    /// Delivered rate above `R_th`.
    Success,
    /// Area spectral efficiency at `R_th`.
    Ase,
    /// Fraction of requests for head files served by `tier`.
    Association { tier: Tier },
}

impl Metric {
    fn is_probability(self) -> bool {
        !matches!(self, Metric::Ase)
    }
}

/// Sample mean with its 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub half_width_95: f64,
    pub n_samples: u64,
}

impl Estimate {
    /// Binomial estimate from a success count.
    pub fn from_count(successes: u64, n: u64) -> Self {
        let mean = successes as f64 / n as f64;
        Self {
            mean,
            half_width_95: Z95 * (mean * (1.0 - mean) / n as f64).sqrt(),
            n_samples: n,
        }
    }

    fn from_moments(sum: f64, sum_sq: f64, n: u64) -> Self {
        let nf = n as f64;
        let mean = sum / nf;
        let var = if n > 1 {
            ((sum_sq / nf - mean * mean) * nf / (nf - 1.0)).max(0.0)
        } else {
            0.0
        };
        Self {
            mean,
            half_width_95: Z95 * (var / nf).sqrt(),
            n_samples: n,
        }
    }

    pub fn contains(&self, value: f64) -> bool {
        (self.mean - value).abs() <= self.half_width_95
    }
}

/// One network realization around the typical UE at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct DropRealization {
    /// `[macro, pico]` positions in meters.
    pub bs_positions: [Vec<[f64; 2]>; 2],
    /// Per-BS cache decision values in `[0, 1)`; the cache set of a BS is
    /// [`cache_set_from_offset`] of its value.
    pub cache_offsets: [Vec<f64>; 2],
    /// Spatial offset `ω ∈ [−d/λ, d/λ]` of every pico BS's beam.
    pub beam_offsets: Vec<f64>,
    /// `|h|²` of every BS's link to the UE.
    pub fading: [Vec<f64>; 2],
    pub requested_file: usize,
}

/// Serving candidate of one tier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub distance: f64,
    pub sinr: f64,
    /// `b^P P C N G₀ L(r)`.
    pub biased_power: f64,
}

/// Everything a metric needs from one drop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DropOutcome {
    pub file: usize,
    /// Nearest caching BS per tier; `None` if there is none (pico: none in the LOS ball).
    pub candidates: [Option<Candidate>; 2],
    /// SINR at the nearest macro BS, used for files outside the head.
    pub server_sinr: Option<f64>,
}

/// Radius of the macro simulation disc, 20 mean nearest-neighbour
/// distances. At five the truncated far field still lifts macro coverage
/// by ~0.016 at 0 dB; at twenty the bias is below 10⁻³.
pub fn window_radius(model: &NetworkModel) -> f64 {
    (5.0 * model.los_radius).max(20.0 / (PI * model.tier(Tier::Macro).density).sqrt())
}

/// Radius of the pico disc with NLOS interferers on. Beyond `5 R_L` their
/// `d^{−4}` power is negligible next to the LOS ball.
pub fn nlos_window_radius(model: &NetworkModel) -> f64 {
    5.0 * model.los_radius
}

fn distance(p: &[f64; 2]) -> f64 {
    p[0].hypot(p[1])
}

struct Samplers {
    macro_fading: FadingSampler,
    los_fading: FadingSampler,
    nlos_fading: FadingSampler,
    popularity_cdf: Vec<f64>,
    cumulative: [Vec<f64>; 2],
    window: f64,
    nlos_window: f64,
}

impl Samplers {
    fn new(model: &NetworkModel) -> Result<Self> {
        let mut acc = 0.0;
        let popularity_cdf = model
            .cache
            .popularities()
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(Self {
            macro_fading: FadingSampler::new(model.tier(Tier::Macro).fading_order)?,
            los_fading: FadingSampler::new(model.tier(Tier::Pico).fading_order)?,
            nlos_fading: FadingSampler::new(model.nlos.fading_order)?,
            popularity_cdf,
            cumulative: [
                cumulative(model.cache.placement(Tier::Macro)),
                cumulative(model.cache.placement(Tier::Pico)),
            ],
            window: window_radius(model),
            nlos_window: nlos_window_radius(model),
        })
    }

    fn draw_file<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let i = self.popularity_cdf.partition_point(|&c| c <= u);
        (i + 1).min(self.popularity_cdf.len())
    }
}

impl DropRealization {
    /// Samples a drop; an empty macro tier is resampled.
    pub fn sample<R: Rng + ?Sized>(model: &NetworkModel, options: &SimOptions, rng: &mut R) -> Result<Self> {
        let samplers = Samplers::new(model)?;
        Self::sample_with(model, options, &samplers, rng)
    }

    fn sample_with<R: Rng + ?Sized>(
        model: &NetworkModel,
        options: &SimOptions,
        samplers: &Samplers,
        rng: &mut R,
    ) -> Result<Self> {
        let macros = loop {
            let pts = sample_ppp(model.tier(Tier::Macro).density, samplers.window, rng)?;
            if !pts.is_empty() {
                break pts;
            }
            log::debug!("empty macro tier, resampling the drop");
        };
        let mut picos = sample_ppp(model.tier(Tier::Pico).density, model.los_radius, rng)?;

        let macro_offsets = macros.iter().map(|_| rng.random::<f64>()).collect();
        let mut pico_offsets: Vec<f64> = picos.iter().map(|_| rng.random::<f64>()).collect();
        let spacing = model.antenna_spacing_ratio;
        let mut beam_offsets: Vec<f64> = picos
            .iter()
            .map(|_| spacing * (2.0 * rng.random::<f64>() - 1.0))
            .collect();
        let macro_fading = macros.iter().map(|_| samplers.macro_fading.sample(rng)).collect();
        let mut pico_fading: Vec<f64> = picos.iter().map(|_| samplers.los_fading.sample(rng)).collect();
        let requested_file = match options.forced_file {
            Some(f) => f,
            None => samplers.draw_file(rng),
        };
        // drawn on every drop so the LOS part is identical with NLOS on or off
        let nlos_seed: u64 = rng.random();
        if options.include_nlos {
            let mut nlos_rng = ChaCha8Rng::seed_from_u64(nlos_seed);
            let outer = sample_ppp(model.tier(Tier::Pico).density, samplers.nlos_window, &mut nlos_rng)?;
            for p in outer.into_iter().filter(|p| distance(p) > model.los_radius) {
                picos.push(p);
                pico_offsets.push(nlos_rng.random());
                beam_offsets.push(spacing * (2.0 * nlos_rng.random::<f64>() - 1.0));
                pico_fading.push(samplers.nlos_fading.sample(&mut nlos_rng));
            }
        }
        Ok(Self {
            bs_positions: [macros, picos],
            cache_offsets: [macro_offsets, pico_offsets],
            beam_offsets,
            fading: [macro_fading, pico_fading],
            requested_file,
        })
    }

    /// Files cached at BS `index` of `tier`.
    pub fn cache_set(&self, tier: Tier, index: usize, cache: &CacheModel) -> Vec<usize> {
        cache_set_from_offset(
            cache.placement(tier),
            cache.storage(tier),
            self.cache_offsets[tier.index()][index],
        )
    }

    /// Cache sets of every BS, `[macro, pico]`.
    pub fn cache_sets(&self, cache: &CacheModel) -> [Vec<Vec<usize>>; 2] {
        Tier::ALL.map(|tier| {
            (0..self.cache_offsets[tier.index()].len())
                .map(|i| self.cache_set(tier, i, cache))
                .collect()
        })
    }

    /// Received power `P C N L(d) |h|² G` from BS `index` of `tier`.
    fn received_power(&self, model: &NetworkModel, tier: Tier, index: usize, desired: bool) -> f64 {
        let t = model.tier(tier);
        let d = distance(&self.bs_positions[tier.index()][index]);
        let h = self.fading[tier.index()][index];
        let gain = match (tier, desired) {
            (_, true) => model.beam_peak_gain,
            (Tier::Macro, false) => 1.0,
            (Tier::Pico, false) => array_gain(self.beam_offsets[index], t.antennas),
        };
        let path = match tier {
            Tier::Pico if d > model.los_radius => model.nlos.intercept * d.powf(-model.nlos.pathloss_exp),
            _ => t.intercept * d.powf(-t.pathloss_exp),
        };
        t.tx_power * path * f64::from(t.antennas) * h * gain
    }

    fn sinr(&self, model: &NetworkModel, tier: Tier, serving: usize, include_noise: bool) -> f64 {
        let signal = self.received_power(model, tier, serving, true);
        let mut interference = 0.0;
        for j in 0..self.bs_positions[tier.index()].len() {
            if j != serving {
                interference += self.received_power(model, tier, j, false);
            }
        }
        if include_noise {
            interference += model.tier(tier).noise_power;
        }
        signal / interference
    }

    fn nearest(&self, tier: Tier, filter: impl Fn(usize) -> bool) -> Option<(usize, f64)> {
        self.bs_positions[tier.index()]
            .iter()
            .enumerate()
            .filter(|(i, _)| filter(*i))
            .map(|(i, p)| (i, distance(p)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    fn outcome_with(&self, model: &NetworkModel, options: &SimOptions, cum: &[Vec<f64>; 2]) -> DropOutcome {
        let f = self.requested_file;
        let cache = &model.cache;
        let mut candidates = [None, None];
        let mut server_sinr = None;
        if f <= cache.head() {
            for tier in Tier::ALL {
                let storage = cache.storage(tier);
                let offsets = &self.cache_offsets[tier.index()];
                let c = &cum[tier.index()];
                let found = self.nearest(tier, |i| block_caches(c, storage, offsets[i], f));
                if let Some((i, d)) = found {
                    if tier == Tier::Pico && d > model.los_radius {
                        continue;
                    }
                    let t = model.tier(tier);
                    candidates[tier.index()] = Some(Candidate {
                        distance: d,
                        sinr: self.sinr(model, tier, i, options.include_noise),
                        biased_power: model.biased_power_gain(tier) * d.powf(-t.pathloss_exp),
                    });
                }
            }
        } else if let Some((i, _)) = self.nearest(Tier::Macro, |_| true) {
            server_sinr = Some(self.sinr(model, Tier::Macro, i, options.include_noise));
        }
        DropOutcome {
            file: f,
            candidates,
            server_sinr,
        }
    }

    /// Evaluates the per-tier candidates of this drop.
    pub fn outcome(&self, model: &NetworkModel, options: &SimOptions) -> DropOutcome {
        let cum = [
            cumulative(model.cache.placement(Tier::Macro)),
            cumulative(model.cache.placement(Tier::Pico)),
        ];
        self.outcome_with(model, options, &cum)
    }
}

impl DropOutcome {
    /// Serving tier of a head-file request; ties go to the macro tier.
    pub fn associate(&self, scheme: Scheme, model: &NetworkModel) -> Option<Tier> {
        match (self.candidates[0], self.candidates[1]) {
            (None, None) => None,
            (Some(_), None) => Some(Tier::Macro),
            (None, Some(_)) => Some(Tier::Pico),
            (Some(m), Some(p)) => {
                let pico_wins = match scheme {
                    Scheme::MaxRp => p.biased_power > m.biased_power,
                    Scheme::MaxRate => {
                        let rate = |tier: Tier, c: Candidate| {
                            let t = model.tier(tier);
                            t.bias_rate * t.bandwidth * c.sinr.ln_1p()
                        };
                        rate(Tier::Pico, p) > rate(Tier::Macro, m)
                    }
                };
                Some(if pico_wins { Tier::Pico } else { Tier::Macro })
            }
        }
    }

    /// Score of this drop for `metric` at axis value `x` (τ for coverage,
    /// `R_th` otherwise).
    pub fn score(&self, metric: Metric, scheme: Scheme, x: f64, model: &NetworkModel) -> f64 {
        let indicator = |b: bool| if b { 1.0 } else { 0.0 };
        let rate = |tier: Tier, sinr: f64| model.tier(tier).bandwidth * (1.0 + sinr).log2();
        match metric {
            Metric::Coverage { tier, .. } => {
                indicator(self.candidates[tier.index()].is_some_and(|c| c.sinr > x))
            }
            Metric::Association { tier } => indicator(self.associate(scheme, model) == Some(tier)),
            Metric::Success | Metric::Ase => {
                if self.file <= model.cache.head() {
                    let Some(tier) = self.associate(scheme, model) else {
                        return 0.0;
                    };
                    let c = self.candidates[tier.index()].expect("associated tier has a candidate");
                    if rate(tier, c.sinr) <= x {
                        return 0.0;
                    }
                    match metric {
                        Metric::Success => 1.0,
                        _ => {
                            let t = model.tier(tier);
                            let p = model.cache.placement(tier)[self.file - 1];
                            p * t.density * x / t.bandwidth
                        }
                    }
                } else {
                    let Some(sinr) = self.server_sinr else {
                        return 0.0;
                    };
                    let delivered = rate(Tier::Macro, sinr).min(model.backhaul);
                    if delivered <= x {
                        return 0.0;
                    }
                    match metric {
                        Metric::Success => 1.0,
                        _ => {
                            let t = model.tier(Tier::Macro);
                            t.density * x / t.bandwidth
                        }
                    }
                }
            }
        }
    }
}

fn drop_rng(seed: u64, drop: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(drop);
    rng
}

fn check_inputs(metric: Metric, model: &NetworkModel, n_drops: u64, options: &SimOptions) -> Result<()> {
    model.validate()?;
    if n_drops == 0 {
        return invalid("n_drops must be at least 1");
    }
    if let Some(f) = options.forced_file {
        if f == 0 || f > model.cache.catalog() {
            return invalid(format!("forced file {f} outside 1..={}", model.cache.catalog()));
        }
    }
    if let Metric::Coverage { file, .. } = metric {
        if file == 0 || file > model.cache.head() {
            return invalid(format!("coverage file {file} outside the cached head"));
        }
    }
    Ok(())
}

/// Runs `n_drops` drops and hands each outcome to `visit`, in chunks whose
/// results are returned in drop order.
fn run_chunks<T, F>(model: &NetworkModel, options: &SimOptions, n_drops: u64, seed: u64, visit: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&DropOutcome, &mut T) + Sync,
    T: Default,
{
    let samplers = Samplers::new(model)?;
    let n_chunks = n_drops.div_ceil(CHUNK);
    (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = T::default();
            for d in c * CHUNK..((c + 1) * CHUNK).min(n_drops) {
                let mut rng = drop_rng(seed, d);
                let drop = DropRealization::sample_with(model, options, &samplers, &mut rng)?;
                let outcome = drop.outcome_with(model, options, &samplers.cumulative);
                visit(&outcome, &mut acc);
            }
            Ok(acc)
        })
        .collect()
}

/// Estimates `metric` at every axis value from one shared set of drops.
pub fn simulate_curve(
    metric: Metric,
    scheme: Scheme,
    axis: &[f64],
    model: &NetworkModel,
    n_drops: u64,
    seed: u64,
    options: &SimOptions,
) -> Result<Vec<Estimate>> {
    check_inputs(metric, model, n_drops, options)?;
    let mut options = *options;
    if let Metric::Coverage { file, .. } = metric {
        options.forced_file = Some(file);
    }
    let k = axis.len();
    let chunks: Vec<Vec<(f64, f64)>> = run_chunks(model, &options, n_drops, seed, |outcome, acc: &mut Vec<(f64, f64)>| {
        if acc.is_empty() {
            acc.resize(k, (0.0, 0.0));
        }
        for (slot, &x) in acc.iter_mut().zip(axis) {
            let v = outcome.score(metric, scheme, x, model);
            slot.0 += v;
            slot.1 += v * v;
        }
    })?;
    let mut totals = vec![(0.0, 0.0); k];
    for chunk in &chunks {
        for (t, c) in totals.iter_mut().zip(chunk) {
            t.0 += c.0;
            t.1 += c.1;
        }
    }
    Ok(totals
        .into_iter()
        .map(|(sum, sum_sq)| {
            if metric.is_probability() {
                Estimate::from_count(sum as u64, n_drops)
            } else {
                Estimate::from_moments(sum, sum_sq, n_drops)
            }
        })
        .collect())
}

/// Estimates `metric` at a single axis value.
pub fn simulate_metric(
    metric: Metric,
    scheme: Scheme,
    axis_value: f64,
    model: &NetworkModel,
    n_drops: u64,
    seed: u64,
    options: &SimOptions,
) -> Result<Estimate> {
    Ok(simulate_curve(metric, scheme, &[axis_value], model, n_drops, seed, options)?[0])
}

/// Serving tier and distance of every drop requesting `file` under `scheme`;
/// `None` where no BS caches it.
pub fn serving_distances(
    scheme: Scheme,
    file: usize,
    model: &NetworkModel,
    n_drops: u64,
    seed: u64,
    options: &SimOptions,
) -> Result<Vec<Option<(Tier, f64)>>> {
    check_inputs(Metric::Coverage { tier: Tier::Macro, file }, model, n_drops, options)?;
    let options = SimOptions {
        forced_file: Some(file),
        ..*options
    };
    let chunks = run_chunks(model, &options, n_drops, seed, |outcome, acc: &mut Vec<Option<(Tier, f64)>>| {
        let served = outcome
            .associate(scheme, model)
            .map(|t| (t, outcome.candidates[t.index()].expect("candidate").distance));
        acc.push(served);
    })?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Shannon rate in bits/s.
pub fn shannon_rate(bandwidth: f64, sinr: f64) -> f64 {
    bandwidth * sinr.ln_1p() / LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PlacementPolicy;

    #[test]
    fn ppp_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_ppp(0.0, 10.0, &mut rng).unwrap().is_empty());
        assert!(sample_ppp(1.0, 0.0, &mut rng).is_err());
        let pts = sample_ppp(1e-3, 100.0, &mut rng).unwrap();
        assert!(pts.iter().all(|p| distance(p) <= 100.0));
    }

    #[test]
    fn block_scheme_policy_one() {
        let cache = CacheModel::with_policy(10, 8, [3, 5], 0.6, PlacementPolicy::MostPopular).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for set in realize_caches(Tier::Macro, 20, &cache, &mut rng) {
            assert_eq!(set, vec![1, 2, 3]);
        }
    }

    #[test]
    fn block_membership_matches_sets() {
        let placement = vec![0.9, 0.5, 0.3, 0.2, 0.1];
        let cum = cumulative(&placement);
        for k in 0..50 {
            let u = k as f64 / 50.0;
            let set = cache_set_from_offset(&placement, 2, u);
            assert_eq!(set.len(), 2);
            for f in 1..=5 {
                assert_eq!(block_caches(&cum, 2, u, f), set.contains(&f), "u={u} f={f}");
            }
        }
    }

    #[test]
    fn chunked_runs_are_reproducible() {
        let model = NetworkModel::table1();
        let opts = SimOptions::default();
        let a = simulate_curve(Metric::Success, Scheme::MaxRate, &[1e8], &model, 600, 7, &opts).unwrap();
        let b = simulate_curve(Metric::Success, Scheme::MaxRate, &[1e8], &model, 600, 7, &opts).unwrap();
        assert_eq!(a, b);
    }
}
