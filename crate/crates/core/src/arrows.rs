//! Arrow configurations (one out-arc per vertex) and their bad events.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{closed_walk_sign, DirectedCycle, Graph};
use crate::table::ResamplingTable;

/// One out-neighbor per vertex: `heads[v]` is the head of the arc `a_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ArrowConfig(Vec<usize>);

impl ArrowConfig {
    pub fn new(g: &Graph, heads: Vec<usize>) -> Result<ArrowConfig> {
        if heads.len() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "{} arrows for {} vertices",
                heads.len(),
                g.n()
            )));
        }
        for (v, &w) in heads.iter().enumerate() {
            if g.edge_between(v, w).is_none() {
                return Err(Error::InvalidParameter(format!("arrow {v}->{w} is not an edge")));
            }
        }
        Ok(ArrowConfig(heads))
    }

    pub(crate) fn from_heads_unchecked(heads: Vec<usize>) -> ArrowConfig {
        ArrowConfig(heads)
    }

    pub fn head(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn heads(&self) -> &[usize] {
        &self.0
    }

    /// Index of this configuration in the mixed-radix enumeration of all
    /// configurations (vertex 0 is the least significant digit, digit `v`
    /// is the position of the head within `v`'s sorted neighbor list).
    pub fn enumeration_index(&self, g: &Graph) -> usize {
        let mut idx = 0;
        for v in (0..g.n()).rev() {
            let pos = g.neighbors(v).binary_search(&self.0[v]).expect("valid arrow");
            idx = idx * g.degree(v) + pos;
        }
        idx
    }

    /// `(C2, C)`: number of 2-cycles and of cycles of length at least 3.
    pub fn cycle_counts(&self) -> (usize, usize) {
        let mut scan = CycleScan::new(self.0.len());
        let (mut two, mut long) = (0, 0);
        scan.for_each_cycle(&self.0, |c| {
            if c.len() == 2 {
                two += 1
            } else {
                long += 1
            }
        });
        (two, long)
    }
}

/// Reusable buffers for listing the cycles of a functional graph.
#[derive(Clone, Debug)]
pub(crate) struct CycleScan {
    stamp: Vec<u32>,
    path: Vec<usize>,
    round: u32,
}

impl CycleScan {
    pub(crate) fn new(n: usize) -> Self {
        CycleScan { stamp: vec![0; n], path: Vec::with_capacity(n), round: 0 }
    }

    /// Calls `f` once per directed cycle of `heads`, with the cycle's
    /// vertices in arc order. Cycles are vertex-disjoint. O(n).
    pub(crate) fn for_each_cycle(&mut self, heads: &[usize], mut f: impl FnMut(&[usize])) {
        let n = heads.len();
        if self.round > u32::MAX - n as u32 - 1 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.round = 0;
        }
        let base = self.round;
        for s in 0..n {
            if self.stamp[s] > base {
                continue;
            }
            self.round += 1;
            let mark = self.round;
            self.path.clear();
            let mut v = s;
            while self.stamp[v] <= base {
                self.stamp[v] = mark;
                self.path.push(v);
                v = heads[v];
            }
            if self.stamp[v] == mark {
                let pos = self.path.iter().rposition(|&x| x == v).expect("on path");
                f(&self.path[pos..]);
            }
        }
    }
}

/// Weights of the Gibbs family `rho(S) ~ gamma2^C2(S) * gamma^C(S)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GibbsParams {
    gamma2: f64,
    gamma: f64,
}

impl GibbsParams {
    /// Requires `gamma2` in `[0, 1]` and `gamma` in `(0, 1]`.
    pub fn new(gamma2: f64, gamma: f64) -> Result<GibbsParams> {
        if !(0.0..=1.0).contains(&gamma2) {
            return Err(Error::InvalidParameter(format!("gamma2 = {gamma2} not in [0, 1]")));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::InvalidParameter(format!("gamma = {gamma} not in (0, 1]")));
        }
        Ok(GibbsParams { gamma2, gamma })
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Probability that a freshly formed cycle of length `len` is kept.
    #[inline]
    pub fn retention(&self, len: usize) -> f64 {
        if len == 2 {
            self.gamma2
        } else {
            self.gamma
        }
    }

    /// Unnormalised weight of a configuration with the given cycle counts,
    /// with `0^0 = 1`.
    pub fn weight(&self, two_cycles: usize, long_cycles: usize) -> f64 {
        self.gamma2.powi(two_cycles as i32) * self.gamma.powi(long_cycles as i32)
    }
}

/// A cycle is popped when its auxiliary coin lands at or above the
/// retention probability.
#[inline]
pub(crate) fn coin_rejects(coin: f64, retention: f64) -> bool {
    coin >= retention
}

/// Which cycles count as bad.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Variant {
    /// 2-cycles are always bad; longer cycles are bad iff their orientation
    /// sign is `+1`. Targets the uniform distribution on bases.
    Orientation,
    /// Cycles are bad when their auxiliary coin rejects them. Targets the
    /// Gibbs distribution with these parameters.
    Gibbs(GibbsParams),
}

/// Decides whether the cycle `cycle` (vertices in arc order) is bad under
/// the orientation rule.
#[inline]
pub(crate) fn orientation_rejects(g: &Graph, cycle: &[usize], edge_buf: &mut Vec<usize>) -> bool {
    if cycle.len() == 2 {
        return true;
    }
    edge_buf.clear();
    let len = cycle.len();
    for i in 0..len {
        let next = if i + 1 == len { cycle[0] } else { cycle[i + 1] };
        edge_buf.push(g.edge_between(cycle[i], next).expect("arrow follows an edge"));
    }
    closed_walk_sign(cycle, edge_buf) == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BadEvent {
    /// Both orientations of `edge` are present.
    TwoCycle { edge: usize, vertices: [usize; 2] },
    /// A cycle of length at least 3 that is present and rejected.
    Cycle(DirectedCycle),
}

impl BadEvent {
    pub fn vertices(&self) -> &[usize] {
        match self {
            BadEvent::TwoCycle { vertices, .. } => vertices,
            BadEvent::Cycle(c) => c.vertices(),
        }
    }
}

/// How [`occurring_bad_events`] judges cycles.
pub enum EventRule<'t> {
    Orientation,
    /// Every cycle present is treated as newly formed: a fresh coin is
    /// drawn from the coin stream of its lowest vertex.
    Gibbs(GibbsParams, &'t mut ResamplingTable),
}

/// All bad events occurring in `sigma`. Their vertex sets are pairwise
/// disjoint.
pub fn occurring_bad_events(g: &Graph, sigma: &ArrowConfig, rule: EventRule<'_>) -> Vec<BadEvent> {
    let mut scan = CycleScan::new(g.n());
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    scan.for_each_cycle(sigma.heads(), |c| cycles.push(c.to_vec()));
    let mut buf = Vec::new();
    let mut out = Vec::new();
    let mut rule = rule;
    for c in cycles {
        let bad = match &mut rule {
            EventRule::Orientation => orientation_rejects(g, &c, &mut buf),
            EventRule::Gibbs(params, table) => {
                let anchor = *c.iter().min().expect("non-empty");
                coin_rejects(table.draw_coin(anchor), params.retention(c.len()))
            }
        };
        if bad {
            out.push(to_event(g, &c));
        }
    }
    out
}

fn to_event(g: &Graph, cycle: &[usize]) -> BadEvent {
    if cycle.len() == 2 {
        let (u, v) = (cycle[0].min(cycle[1]), cycle[0].max(cycle[1]));
        BadEvent::TwoCycle { edge: g.edge_between(u, v).expect("edge"), vertices: [u, v] }
    } else {
        BadEvent::Cycle(DirectedCycle::rotated(cycle))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn triangle_events() {
        let g = cycle(3);
        let good = ArrowConfig::new(&g, vec![1, 2, 0]).unwrap();
        assert!(occurring_bad_events(&g, &good, EventRule::Orientation).is_empty());
        let bad = ArrowConfig::new(&g, vec![2, 0, 1]).unwrap();
        let events = occurring_bad_events(&g, &bad, EventRule::Orientation);
        assert_eq!(events, vec![BadEvent::Cycle(DirectedCycle::new(&g, &[0, 2, 1]).unwrap())]);
    }

    #[test]
    fn two_cycle_is_bad() {
        let g = complete(4);
        let s = ArrowConfig::new(&g, vec![1, 0, 0, 0]).unwrap();
        let events = occurring_bad_events(&g, &s, EventRule::Orientation);
        assert_eq!(events, vec![BadEvent::TwoCycle { edge: 0, vertices: [0, 1] }]);
    }

    #[test]
    fn gibbs_extremes() {
        let g = complete(4);
        let s = ArrowConfig::new(&g, vec![1, 0, 3, 2]).unwrap();
        let mut t = ResamplingTable::new(1, 4);
        let keep_all = GibbsParams::new(1.0, 1.0).unwrap();
        assert!(occurring_bad_events(&g, &s, EventRule::Gibbs(keep_all, &mut t)).is_empty());
        let drop_two = GibbsParams::new(0.0, 1.0).unwrap();
        assert_eq!(occurring_bad_events(&g, &s, EventRule::Gibbs(drop_two, &mut t)).len(), 2);
        assert_eq!(t.coin_frontier(), &[2, 0, 2, 0]);
    }

    #[test]
    fn params_validated() {
        assert!(GibbsParams::new(0.0, 0.0).is_err());
        assert!(GibbsParams::new(1.5, 1.0).is_err());
        assert!(GibbsParams::new(f64::NAN, 1.0).is_err());
        assert!(GibbsParams::new(0.0, 0.5).is_ok());
        assert_eq!(GibbsParams::new(0.0, 0.5).unwrap().weight(0, 2), 0.25);
        assert_eq!(GibbsParams::new(0.0, 0.5).unwrap().weight(1, 0), 0.0);
    }

    #[test]
    fn cycle_counts_and_index() {
        let g = complete(4);
        let s = ArrowConfig::new(&g, vec![1, 0, 3, 2]).unwrap();
        assert_eq!(s.cycle_counts(), (2, 0));
        let t = ArrowConfig::new(&g, vec![1, 2, 0, 0]).unwrap();
        assert_eq!(t.cycle_counts(), (0, 1));
        // digits: v0 -> pos 0, v1 -> pos 1 (neighbors 0,2,3), v2 -> pos 0, v3 -> 0
        assert_eq!(t.enumeration_index(&g), 3);
    }
}
