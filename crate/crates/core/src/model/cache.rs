use crate::error::{invalid, Result};

use super::Tier;

const PLACEMENT_SUM_TOLERANCE: f64 = 1e-9;

/// Built-in placement strategies for the cacheable head of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlacementPolicy {
    /// `p_{i,f} = 1` for the `M_i` most popular files.
    MostPopular,
    /// `p_{i,f} = M_i / H_c` for every file in the head.
    Uniform,
}

/// Zipf catalog plus the probabilistic placement of each tier.
///
/// Files are 1-based. Only files `1..=head` are ever cached; the placement
/// vectors have length `head` and each sums to the tier's storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CacheModel {
    catalog: usize,
    head: usize,
    storage: [usize; 2],
    skew: f64,
    placement: [Vec<f64>; 2],
    popularity: Vec<f64>,
}

impl CacheModel {
    /// Explicit placement probabilities, `placement[i][f − 1] = p_{i+1,f}`.
    pub fn new(
        catalog: usize,
        head: usize,
        storage: [usize; 2],
        skew: f64,
        placement: [Vec<f64>; 2],
    ) -> Result<Self> {
        if catalog == 0 {
            return invalid("catalog size must be at least 1");
        }
        if head == 0 || head > catalog {
            return invalid(format!("head size must lie in 1..={catalog}, got {head}"));
        }
        if !(skew >= 0.0) || !skew.is_finite() {
            return invalid(format!("Zipf skew must be finite and >= 0, got {skew}"));
        }
        for (i, p) in placement.iter().enumerate() {
            let tier = i + 1;
            if storage[i] > head {
                return invalid(format!(
                    "tier {tier} storage {} exceeds the head size {head}",
                    storage[i]
                ));
            }
            if p.len() != head {
                return invalid(format!(
                    "tier {tier} placement has {} entries, expected {head}",
                    p.len()
                ));
            }
            if let Some(bad) = p.iter().find(|&&x| !(0.0..=1.0).contains(&x)) {
                return invalid(format!("tier {tier} placement probability {bad} outside [0, 1]"));
            }
            let total: f64 = p.iter().sum();
            if (total - storage[i] as f64).abs() > PLACEMENT_SUM_TOLERANCE {
                return invalid(format!(
                    "tier {tier} placement sums to {total}, expected {}",
                    storage[i]
                ));
            }
        }
        let weights: Vec<f64> = (1..=catalog).map(|f| (f as f64).powf(-skew)).collect();
        let norm: f64 = weights.iter().sum();
        let popularity = weights.into_iter().map(|w| w / norm).collect();
        Ok(Self {
            catalog,
            head,
            storage,
            skew,
            placement,
            popularity,
        })
    }

    /// Placement generated by one of the built-in policies.
    pub fn with_policy(
        catalog: usize,
        head: usize,
        storage: [usize; 2],
        skew: f64,
        policy: PlacementPolicy,
    ) -> Result<Self> {
        if head == 0 {
            return invalid("head size must be at least 1");
        }
        let build = |m: usize| -> Vec<f64> {
            match policy {
                PlacementPolicy::MostPopular => {
                    (1..=head).map(|f| if f <= m { 1.0 } else { 0.0 }).collect()
                }
                PlacementPolicy::Uniform => vec![m as f64 / head as f64; head],
            }
        };
        let placement = [build(storage[0]), build(storage[1])];
        Self::new(catalog, head, storage, skew, placement)
    }

    pub fn catalog(&self) -> usize {
        self.catalog
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn storage(&self, tier: Tier) -> usize {
        self.storage[tier.index()]
    }

    pub fn skew(&self) -> f64 {
        self.skew
    }

    /// Placement vector of `tier`, indexed by `f − 1`.
    pub fn placement(&self, tier: Tier) -> &[f64] {
        &self.placement[tier.index()]
    }

    /// `p_{i,f}`; zero for files outside the head.
    pub fn placement_prob(&self, tier: Tier, file: usize) -> Result<f64> {
        self.check_file(file)?;
        Ok(self
            .placement(tier)
            .get(file - 1)
            .copied()
            .unwrap_or(0.0))
    }

    /// Zipf probability of requesting `file`.
    pub fn popularity(&self, file: usize) -> Result<f64> {
        self.check_file(file)?;
        Ok(self.popularity[file - 1])
    }

    /// All request probabilities, indexed by `f − 1`.
    pub fn popularities(&self) -> &[f64] {
        &self.popularity
    }

    fn check_file(&self, file: usize) -> Result<()> {
        if file == 0 || file > self.catalog {
            return invalid(format!("file index must lie in 1..={}, got {file}", self.catalog));
        }
        Ok(())
    }
}
