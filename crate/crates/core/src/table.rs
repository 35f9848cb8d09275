//! Resampling tables: pre-committed, seeded randomness indexed by
//! `(vertex, draw number)`.
//!
//! Every vertex owns two independent ChaCha8 streams keyed by the table
//! seed, one for neighbor choices and one for auxiliary coins. Draws are
//! consumed strictly in order, so entry `(v, j)` is the `j`-th value read
//! from `v`'s stream and depends only on the seed, `v`, `j` and `deg(v)`.
//! Two engines that redraw the same vertices the same number of times see
//! exactly the same values, whatever order they visit the vertices in.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from a master seed and a path of indices, e.g.
/// `(level, sample)`. Distinct paths give unrelated seeds.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    let mut h = mix64(master.wrapping_add(GOLDEN));
    for &p in path {
        h = mix64(h ^ mix64(p.wrapping_add(GOLDEN).wrapping_mul(0xd6e8_feb8_6659_fd93)));
    }
    h
}

/// Uniform integer in `0..range` by Lemire's widening-multiply rejection;
/// no modulo bias.
#[inline]
pub(crate) fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, range: u64) -> u64 {
    debug_assert!(range > 0);
    let threshold = range.wrapping_neg() % range;
    loop {
        let m = u128::from(rng.next_u64()) * u128::from(range);
        if (m as u64) >= threshold {
            return (m >> 64) as u64;
        }
    }
}

/// Uniform real in `[0, 1)` with 53 random bits.
#[inline]
pub(crate) fn unit_interval<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

#[derive(Clone, Debug)]
pub struct ResamplingTable {
    seed: u64,
    neighbor_streams: Vec<Option<ChaCha8Rng>>,
    coin_streams: Vec<Option<ChaCha8Rng>>,
    frontier: Vec<u64>,
    coin_frontier: Vec<u64>,
}

impl ResamplingTable {
    pub fn new(seed: u64, n: usize) -> Self {
        ResamplingTable {
            seed,
            neighbor_streams: vec![None; n],
            coin_streams: vec![None; n],
            frontier: vec![0; n],
            coin_frontier: vec![0; n],
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of neighbor entries consumed for each vertex.
    pub fn frontier(&self) -> &[u64] {
        &self.frontier
    }

    /// Number of coin entries consumed for each vertex.
    pub fn coin_frontier(&self) -> &[u64] {
        &self.coin_frontier
    }

    /// Reads the next neighbor entry of `v`; returns `(neighbor, edge id)`.
    #[inline]
    pub fn draw_neighbor(&mut self, g: &Graph, v: usize) -> (usize, usize) {
        let seed = self.seed;
        let rng = self.neighbor_streams[v].get_or_insert_with(|| stream(seed, 2 * v as u64));
        let i = uniform_below(rng, g.degree(v) as u64) as usize;
        self.frontier[v] += 1;
        (g.neighbors(v)[i], g.incident_edges(v)[i])
    }

    /// Reads the next auxiliary coin of `v`, uniform in `[0, 1)`.
    #[inline]
    pub fn draw_coin(&mut self, v: usize) -> f64 {
        let seed = self.seed;
        let rng = self.coin_streams[v].get_or_insert_with(|| stream(seed, 2 * v as u64 + 1));
        self.coin_frontier[v] += 1;
        unit_interval(rng)
    }

    /// Entry `(v, j)` of the neighbor table, computed from scratch without
    /// touching any table state.
    pub fn neighbor_entry(seed: u64, g: &Graph, v: usize, j: u64) -> usize {
        let mut rng = stream(seed, 2 * v as u64);
        let mut i = 0;
        for _ in 0..=j {
            i = uniform_below(&mut rng, g.degree(v) as u64) as usize;
        }
        g.neighbors(v)[i]
    }

    /// Entry `(v, j)` of the coin table, computed from scratch.
    pub fn coin_entry(seed: u64, v: usize, j: u64) -> f64 {
        let mut rng = stream(seed, 2 * v as u64 + 1);
        let mut c = 0.0;
        for _ in 0..=j {
            c = unit_interval(&mut rng);
        }
        c
    }
}
