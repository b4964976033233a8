//! Seeded random instances for property checks and the verification table.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::partition::{Color, EpPartition};
use crate::pinf::ScPartition;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random coloring with prefix length `<= max_prefix` and period length in
/// `1..=max_period`, canonicalized.
pub fn random_ep<R: Rng>(rng: &mut R, max_prefix: usize, max_period: usize) -> EpPartition {
    let period_len = rng.gen_range(1..=max_period.max(1));
    let colors = rng.gen_range(1..=period_len) as Color;
    let mut period: Vec<Color> = (0..period_len).map(|_| rng.gen_range(0..colors)).collect();
    period.shuffle(rng);
    let prefix_len = rng.gen_range(0..=max_prefix);
    let prefix = (0..prefix_len)
        .map(|_| *period.choose(rng).expect("period is nonempty"))
        .collect();
    EpPartition::new(prefix, period).expect("prefix colors drawn from the period")
}

/// Like [`random_ep`] but never the one-block partition.
pub fn random_nontrivial_ep<R: Rng>(
    rng: &mut R,
    max_prefix: usize,
    max_period: usize,
) -> EpPartition {
    assert!(max_period >= 2);
    loop {
        let p = random_ep(rng, max_prefix, max_period);
        if !p.is_trivial() {
            return p;
        }
    }
}

/// Random column segmentation with run lengths in `1..=max_run`.
pub fn random_sc<R: Rng>(
    rng: &mut R,
    max_prefix_runs: usize,
    max_periodic_runs: usize,
    max_run: usize,
) -> ScPartition {
    let prefix_len = rng.gen_range(0..=max_prefix_runs);
    let periodic_len = rng.gen_range(1..=max_periodic_runs.max(1));
    let prefix = (0..prefix_len)
        .map(|_| rng.gen_range(1..=max_run))
        .collect();
    let periodic = (0..periodic_len)
        .map(|_| rng.gen_range(1..=max_run))
        .collect();
    ScPartition::new(prefix, periodic).expect("runs are positive")
}
