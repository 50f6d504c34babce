//! The stratification of the two-unit maximizer set.
//!
//! An element of the poset `S` is a map `π : Ω_2 → Ω_1 ∪ {0}` whose image
//! covers `Ω_1`. The stratum `M_π` consists of the distributions positive
//! exactly on the graph of `π` with every fiber `π^{-1}(ω_1)` carrying mass
//! `1/n_1`; it has dimension `|π^{-1}(Ω_1)| − n_1`. Strata are ordered by
//! fiber inclusion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use petgraph::algo::connected_components;
use petgraph::dot::{Config, Dot};
use petgraph::graph::{NodeIndex, UnGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::probspace::{Distribution, ProductSpace};

/// Budget on `|S|` for [`cover_graph`].
pub const COVER_GRAPH_LIMIT: u128 = 100_000;

/// `π : Ω_2 → Ω_1 ∪ {0}`; `values[ω_2]` is `0` for the adjoined element
/// and `1..=n1` for the real labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetMap {
    n1: usize,
    values: Vec<usize>,
}

impl PosetMap {
    pub fn new(n1: usize, values: Vec<usize>) -> Result<Self> {
        if n1 < 2 || values.len() < n1 {
            return Err(Error::InvalidPosetMap(format!(
                "need 2 ≤ n1 ≤ n2, got n1 = {n1}, n2 = {}",
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v > n1) {
            return Err(Error::InvalidPosetMap(format!("label {v} exceeds n1 = {n1}")));
        }
        let map = PosetMap { n1, values };
        if !map.covers() {
            return Err(Error::InvalidPosetMap(format!(
                "image of {map} does not contain every label 1..={n1}"
            )));
        }
        Ok(map)
    }

    fn covers(&self) -> bool {
        (1..=self.n1).all(|l| self.values.contains(&l))
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn zeros(&self) -> usize {
        self.values.iter().filter(|&&v| v == 0).count()
    }

    /// `π^{-1}(label)` for `label ∈ 1..=n1`.
    pub fn fiber(&self, label: usize) -> Vec<usize> {
        (0..self.n2()).filter(|&w| self.values[w] == label).collect()
    }

    /// Labels shifted to 0-based, with `-1` for the adjoined element.
    pub fn to_signed(&self) -> Vec<i64> {
        self.values.iter().map(|&v| v as i64 - 1).collect()
    }

    pub fn from_signed(n1: usize, values: &[i64]) -> Result<Self> {
        let shifted = values
            .iter()
            .map(|&v| {
                usize::try_from(v + 1)
                    .map_err(|_| Error::InvalidPosetMap(format!("label {v} below -1")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n1, shifted)
    }
}

impl fmt::Display for PosetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_dims(n1: usize, n2: usize) -> Result<()> {
    if n1 < 2 {
        return Err(Error::InvalidArgument(format!("n1 must be at least 2, got {n1}")));
    }
    if n1 > n2 {
        return Err(Error::InvalidArgument(format!(
            "n1 = {n1} exceeds n2 = {n2}: no map covers Ω_1"
        )));
    }
    Ok(())
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Stirling numbers of the second kind, `S(l, k)`.
pub fn stirling2(l: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for n in 1..=l {
        for j in (1..=k.min(n)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `|S| = Σ_{l=n1}^{n2} C(n2, l) · n1! · S(l, n1)`.
pub fn poset_size(n1: usize, n2: usize) -> Result<u128> {
    Ok(count_strata_by_dim(n1, n2)?.values().sum())
}

/// Number of strata of each dimension `l − n1`, by the closed formula.
pub fn count_strata_by_dim(n1: usize, n2: usize) -> Result<BTreeMap<usize, u128>> {
    check_dims(n1, n2)?;
    Ok((n1..=n2)
        .map(|l| (l - n1, factorial(n1) * binomial(n2, l) * stirling2(l, n1)))
        .collect())
}

/// Every element of `S`, in lexicographic order of `values`.
pub fn enumerate_poset(n1: usize, n2: usize) -> Result<Vec<PosetMap>> {
    check_dims(n1, n2)?;
    let base = n1 + 1;
    let total = (base as u128).pow(n2 as u32);
    if total > 1u128 << 32 {
        return Err(Error::Budget {
            what: "maps Ω_2 → Ω_1 ∪ {0}",
            size: total,
            limit: 1u128 << 32,
        });
    }
    let mut out = Vec::new();
    let mut values = vec![0usize; n2];
    for _ in 0..total {
        let map = PosetMap {
            n1,
            values: values.clone(),
        };
        if map.covers() {
            out.push(map);
        }
        for pos in (0..n2).rev() {
            values[pos] += 1;
            if values[pos] < base {
                break;
            }
            values[pos] = 0;
        }
    }
    Ok(out)
}

/// `σ ⪯ π` iff `σ^{-1}(ω_1) ⊆ π^{-1}(ω_1)` for every `ω_1`.
pub fn leq(sigma: &PosetMap, pi: &PosetMap) -> Result<bool> {
    if sigma.n1 != pi.n1 || sigma.n2() != pi.n2() {
        return Err(Error::InvalidPosetMap(format!(
            "cannot compare maps of shape ({}, {}) and ({}, {})",
            sigma.n1,
            sigma.n2(),
            pi.n1,
            pi.n2()
        )));
    }
    Ok(sigma
        .values
        .iter()
        .zip(&pi.values)
        .all(|(&s, &p)| s == 0 || s == p))
}

/// `dim M_π = |π^{-1}(Ω_1)| − n1`.
pub fn stratum_dim(pi: &PosetMap) -> usize {
    pi.n2() - pi.zeros() - pi.n1
}

/// The Hasse diagram of `S`. Edge `(σ, π)` stores node indices with
/// `σ ≺· π`.
#[derive(Clone, Debug)]
pub struct CoverGraph {
    pub nodes: Vec<PosetMap>,
    pub edges: Vec<(usize, usize)>,
    graph: UnGraph<usize, ()>,
}

#[derive(Serialize)]
struct NodeJson {
    index: usize,
    map: Vec<i64>,
    dim: usize,
}

impl CoverGraph {
    pub fn is_connected(&self) -> bool {
        connected_components(&self.graph) <= 1
    }

    pub fn components(&self) -> usize {
        connected_components(&self.graph)
    }

    /// One `"σ_index π_index"` line per covering pair.
    pub fn edge_list(&self) -> String {
        self.edges
            .iter()
            .map(|(s, p)| format!("{s} {p}\n"))
            .collect()
    }

    /// `[{"index":…,"map":[…],"dim":…},…]` with 0-based labels and `-1` for
    /// the adjoined element.
    pub fn node_table_json(&self) -> String {
        let rows: Vec<NodeJson> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(index, m)| NodeJson {
                index,
                map: m.to_signed(),
                dim: stratum_dim(m),
            })
            .collect();
        serde_json::to_string(&rows).expect("node table serializes")
    }

    pub fn to_dot(&self) -> String {
        let labelled = self
            .graph
            .map(|_, &i| format!("{}", self.nodes[i]), |_, _| "");
        format!(
            "{:?}",
            Dot::with_config(&labelled, &[Config::EdgeNoLabel])
        )
    }
}

/// Builds the cover graph. `σ ≺· π` exactly when `σ` is `π` with one more
/// point sent to `0`, so covers are found by zeroing single points.
pub fn cover_graph(n1: usize, n2: usize) -> Result<CoverGraph> {
    cover_graph_with(n1, n2, Exec::default())
}

pub fn cover_graph_with(n1: usize, n2: usize, exec: Exec) -> Result<CoverGraph> {
    let size = poset_size(n1, n2)?;
    if size > COVER_GRAPH_LIMIT {
        return Err(Error::Budget {
            what: "poset size",
            size,
            limit: COVER_GRAPH_LIMIT,
        });
    }
    let nodes = enumerate_poset(n1, n2)?;
    let index: HashMap<&PosetMap, usize> = nodes.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let per_node: Vec<Vec<(usize, usize)>> = exec.map(nodes.len(), |p| {
        let pi = &nodes[p];
        let mut below = Vec::new();
        for w in 0..pi.n2() {
            if pi.values[w] == 0 {
                continue;
            }
            let mut values = pi.values.clone();
            values[w] = 0;
            let sigma = PosetMap { n1, values };
            if let Some(&s) = index.get(&sigma) {
                below.push((s, p));
            }
        }
        below
    });
    let mut edges: Vec<(usize, usize)> = per_node.into_iter().flatten().collect();
    edges.sort_unstable();
    let mut graph = UnGraph::with_capacity(nodes.len(), edges.len());
    for i in 0..nodes.len() {
        graph.add_node(i);
    }
    for &(s, p) in &edges {
        graph.add_edge(NodeIndex::new(s), NodeIndex::new(p), ());
    }
    Ok(CoverGraph {
        nodes,
        edges,
        graph,
    })
}

/// A random point of `M_π` on the space `n1 × n2`: each fiber's masses are
/// uniform on the simplex (sorted-uniform gaps) scaled to `1/n1`.
pub fn sample_stratum(pi: &PosetMap, seed: u64) -> Distribution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = ProductSpace::new(vec![pi.n1, pi.n2()]).expect("n1, n2 ≥ 2");
    let mut probs = vec![0.0; space.total()];
    let scale = 1.0 / pi.n1 as f64;
    for label in 1..=pi.n1 {
        let fiber = pi.fiber(label);
        let gaps = loop {
            let mut cuts: Vec<f64> = (1..fiber.len()).map(|_| rng.random::<f64>()).collect();
            cuts.push(0.0);
            cuts.push(1.0);
            cuts.sort_by(f64::total_cmp);
            let gaps: Vec<f64> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
            if gaps.iter().all(|&g| g > 0.0) {
                break gaps;
            }
        };
        for (&w, g) in fiber.iter().zip(gaps) {
            probs[space.encode(&[label - 1, w])] = g * scale;
        }
    }
    Distribution::from_floats(space, probs).expect("fiber masses sum to one")
}
