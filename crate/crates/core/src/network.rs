//! Linear (Wyner-type) network topology and per-block erasure realizations.
//!
//! Users, receivers and transmitters are 1-indexed. Transmitter `j` can only
//! reach receivers `j` and `j + 1`, so a `K`-user network has exactly `2K - 1`
//! potential links. Links are stored in a flat bitset with the stable layout
//!
//! ```text
//! (1,1) (2,1) (2,2) (3,2) (3,3) ...
//!   0     1     2     3     4
//! ```
//!
//! i.e. link `(i, i)` lives at `2(i - 1)` and link `(i, i - 1)` at `2i - 3`.
//! This is also the scan order used by the partitioner.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Mixes a master seed with a stream index (SplitMix64 finalizer).
///
/// Used wherever independent, reproducible sub-streams are derived from one
/// seed, so results do not depend on how work is scheduled.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NetworkTopology {
    k: usize,
    last_tx_deactivated: bool,
}

impl NetworkTopology {
    /// # Panics
    /// If `k == 0`.
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "a network needs at least one user");
        NetworkTopology {
            k,
            last_tx_deactivated: false,
        }
    }

    /// Topology with transmitter `K` switched off, as used by the simulations.
    pub fn with_last_tx_deactivated(k: usize) -> Self {
        NetworkTopology {
            last_tx_deactivated: true,
            ..Self::new(k)
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn last_tx_deactivated(&self) -> bool {
        self.last_tx_deactivated
    }

    pub fn num_links(&self) -> usize {
        2 * self.k - 1
    }

    /// Flat index of link `(rx, tx)`.
    ///
    /// # Panics
    /// If `(rx, tx)` is not a potential link of this topology.
    pub fn link_index(&self, rx: usize, tx: usize) -> usize {
        assert!(
            (1..=self.k).contains(&rx) && tx >= 1 && (tx == rx || tx + 1 == rx),
            "({rx},{tx}) is not a potential link of a {}-user linear network",
            self.k
        );
        if tx == rx {
            2 * (rx - 1)
        } else {
            2 * rx - 3
        }
    }

    /// Inverse of [`link_index`](Self::link_index).
    pub fn link_at(&self, index: usize) -> (usize, usize) {
        assert!(index < self.num_links());
        if index % 2 == 0 {
            let i = index / 2 + 1;
            (i, i)
        } else {
            let i = (index + 3) / 2;
            (i, i - 1)
        }
    }

    pub fn is_potential_link(&self, rx: usize, tx: usize) -> bool {
        (1..=self.k).contains(&rx) && tx >= 1 && (tx == rx || tx + 1 == rx)
    }
}

/// Which potential links survived erasure in one block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NetworkRealization {
    topology: NetworkTopology,
    present: Vec<bool>,
}

impl NetworkRealization {
    /// # Panics
    /// If `present.len() != 2K - 1`.
    pub fn from_bits(topology: NetworkTopology, present: Vec<bool>) -> Self {
        assert_eq!(
            present.len(),
            topology.num_links(),
            "bitset length mismatch"
        );
        NetworkRealization { topology, present }
    }

    pub fn all_present(topology: NetworkTopology) -> Self {
        Self::from_bits(topology, vec![true; topology.num_links()])
    }

    pub fn all_erased(topology: NetworkTopology) -> Self {
        Self::from_bits(topology, vec![false; topology.num_links()])
    }

    /// Builds a realization with every link present except those listed.
    pub fn with_erased(topology: NetworkTopology, erased: &[(usize, usize)]) -> Self {
        let mut r = Self::all_present(topology);
        for &(rx, tx) in erased {
            let idx = topology.link_index(rx, tx);
            r.present[idx] = false;
        }
        r
    }

    pub fn topology(&self) -> &NetworkTopology {
        &self.topology
    }

    pub fn k(&self) -> usize {
        self.topology.k
    }

    /// Raw bitset; ignores transmitter deactivation.
    pub fn bits(&self) -> &[bool] {
        &self.present
    }

    /// Whether the link survived erasure and its transmitter is active.
    ///
    /// # Panics
    /// If `(rx, tx)` is not a potential link.
    pub fn link_present(&self, rx: usize, tx: usize) -> bool {
        let idx = self.topology.link_index(rx, tx);
        self.present[idx] && !(self.topology.last_tx_deactivated && tx == self.topology.k)
    }

    /// Like [`link_present`](Self::link_present) but returns `false` for any
    /// pair that is not a potential link (including transmitter 0).
    pub fn connected(&self, rx: usize, tx: usize) -> bool {
        self.topology.is_potential_link(rx, tx) && self.link_present(rx, tx)
    }

    /// Presence of the link at a flat index, deactivation applied.
    pub fn present_at(&self, index: usize) -> bool {
        let (rx, tx) = self.topology.link_at(index);
        self.link_present(rx, tx)
    }

    pub fn count_present(&self) -> usize {
        (0..self.present.len())
            .filter(|&i| self.present_at(i))
            .count()
    }
}

/// Draws one erasure realization: each potential link is absent with
/// probability `p`, independently. Deterministic in `seed`.
pub fn sample_realization(topology: NetworkTopology, p: f64, seed: u64) -> NetworkRealization {
    debug_assert!((0.0..=1.0).contains(&p));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let present = (0..topology.num_links())
        .map(|_| !rng.gen_bool(p))
        .collect();
    NetworkRealization::from_bits(topology, present)
}

/// Exact integer channel gains for the present links of a realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelCoefficients {
    realization: NetworkRealization,
    values: Vec<i64>,
}

/// Upper bound (exclusive) of the coefficient draw.
pub const COEFFICIENT_BOUND: i64 = 1 << 31;

impl ChannelCoefficients {
    pub fn realization(&self) -> &NetworkRealization {
        &self.realization
    }

    /// Gain of link `(rx, tx)`; exactly zero when the link is absent, and also
    /// for pairs outside the potential link set.
    pub fn get(&self, rx: usize, tx: usize) -> i64 {
        if self.realization.connected(rx, tx) {
            self.values[self.realization.topology.link_index(rx, tx)]
        } else {
            0
        }
    }
}

/// Draws a uniform integer in `[1, 2^31)` for every present link.
pub fn sample_coefficients(r: &NetworkRealization, seed: u64) -> ChannelCoefficients {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..r.topology.num_links())
        .map(|i| {
            let v = rng.gen_range(1..COEFFICIENT_BOUND);
            if r.present_at(i) {
                v
            } else {
                0
            }
        })
        .collect();
    ChannelCoefficients {
        realization: r.clone(),
        values,
    }
}
