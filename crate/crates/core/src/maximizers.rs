//! Global maximizers of the multi-information.
//!
//! A distribution attains the bound `Σ_{i<N} ln n_i` exactly when it is the
//! push-forward of a distribution on the largest unit (the hub) through
//! surjections onto every other unit, each fiber carrying mass `1/n_i`.
//! Such a surjection family exists iff the hub has at least `n_min` states,
//! where `n_min` counts the union of the grids `{j/n_i : 1 ≤ j ≤ n_i}`.
//!
//! Everything here is exact; float input is accepted by [`is_maximizer`]
//! with an explicit tolerance.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lp::{LinearSystem, VarKind};
use crate::probspace::{self, Distribution, Probs, ProductSpace, UnitSet};
use crate::rational::{self, Rational};

/// Enumeration budget of [`exists_maximizer_exhaustive`]: product of the
/// non-hub cardinalities.
pub const EXHAUSTIVE_HEAD_LIMIT: usize = 12;
/// Enumeration budget of [`exists_maximizer_exhaustive`]: hub cardinality.
pub const EXHAUSTIVE_HUB_LIMIT: usize = 8;
/// Default cap of [`enumerate_equal_unit_maximizers`].
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000;

fn check_head(cards: &[usize]) -> Result<()> {
    if cards.is_empty() {
        return Err(Error::InvalidArgument(
            "n_min needs at least one cardinality".into(),
        ));
    }
    if cards.len() > 24 {
        return Err(Error::InvalidArgument(format!(
            "n_min supports at most 24 cardinalities, got {}",
            cards.len()
        )));
    }
    if let Some(&c) = cards.iter().find(|&&c| c < 2) {
        return Err(Error::InvalidArgument(format!(
            "cardinalities must be at least 2, got {c}"
        )));
    }
    Ok(())
}

/// `n_min(n_1, …, n_{N-1}) = Σ_{∅≠A} (−1)^{|A|−1} gcd(n_A)`.
///
/// `cards` are the cardinalities of the non-hub units, in any order.
pub fn n_min(cards: &[usize]) -> Result<usize> {
    check_head(cards)?;
    let mut total: i128 = 0;
    for mask in 1u32..(1u32 << cards.len()) {
        let set = UnitSet::from_bits(mask);
        let g = set.iter().fold(0usize, |g, i| g.gcd(&cards[i]));
        if set.len() % 2 == 1 {
            total += g as i128;
        } else {
            total -= g as i128;
        }
    }
    Ok(total as usize)
}

/// The bounds `max ≤ n_min ≤ min(1 + Σ(n_i − 1), lcm)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NminBounds {
    pub max: usize,
    pub coprime: usize,
    pub lcm: usize,
}

pub fn n_min_bounds(cards: &[usize]) -> Result<NminBounds> {
    check_head(cards)?;
    Ok(NminBounds {
        max: *cards.iter().max().expect("nonempty"),
        coprime: 1 + cards.iter().map(|n| n - 1).sum::<usize>(),
        lcm: cards.iter().fold(1usize, |l, n| l.lcm(n)),
    })
}

/// The union of the grids `{j/n_i : 1 ≤ j ≤ n_i}`, sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct TSet {
    pub denominators: Vec<usize>,
    pub points: Vec<Rational>,
}

impl TSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.points.iter().map(rational::format).collect();
        format!("{{{}}}", parts.join(","))
    }
}

pub fn build_tset(cards: &[usize]) -> Result<TSet> {
    check_head(cards)?;
    let set: BTreeSet<Rational> = cards
        .iter()
        .flat_map(|&n| (1..=n).map(move |j| rational::ratio(j as i64, n as i64)))
        .collect();
    Ok(TSet {
        denominators: cards.to_vec(),
        points: set.into_iter().collect(),
    })
}

/// Builds the exact maximizer `Σ_j (d_j − d_{j−1}) δ_{Φ(d_j)}` where
/// `Φ(d_j)_i = ⌈d_j n_i⌉` (1-based) for the non-hub units and `j` on the hub.
///
/// Unsorted cards are sorted for the construction and the result is mapped
/// back to the original unit order.
pub fn construct_maximizer(space: &ProductSpace) -> Result<Distribution> {
    let (sorted, perm) = space.sorted();
    let units = sorted.units();
    let head = &sorted.cards()[..units - 1];
    let hub_card = sorted.card(units - 1);
    let tset = build_tset(head)?;
    if hub_card < tset.len() {
        return Err(Error::NoMaximizer {
            hub: hub_card,
            n_min: tset.len(),
            deficit: tset.len() - hub_card,
        });
    }
    let mut points = Vec::with_capacity(tset.len());
    let mut prev = rational::zero();
    for (j, d) in tset.points.iter().enumerate() {
        let mut config: Vec<usize> = head
            .iter()
            .map(|&n| {
                let label = rational::ceil(&(d * rational::int(n as i64)));
                label.to_usize().expect("label fits") - 1
            })
            .collect();
        config.push(j);
        points.push((config, d - &prev));
        prev = d.clone();
    }
    let built = Distribution::from_points(sorted, &points)?;
    let mut inverse = vec![0; units];
    for (j, &u) in perm.iter().enumerate() {
        inverse[u] = j;
    }
    built.permute_units(&inverse)
}

/// Surjections `π_i : Ω_hub → Ω_i` for every non-hub unit `i` (ascending
/// unit order) together with a base distribution on the hub.
#[derive(Clone, Debug, PartialEq)]
pub struct SurjectionFamily {
    space: ProductSpace,
    hub: usize,
    maps: Vec<Vec<usize>>,
    base: Distribution,
}

impl SurjectionFamily {
    /// Validates surjectivity and the uniform pullback condition (exactly
    /// for a rational base, within `tol` for a float base).
    pub fn new(
        space: ProductSpace,
        maps: Vec<Vec<usize>>,
        base: Distribution,
        tol: f64,
    ) -> Result<Self> {
        let hub = space.hub();
        let fam = SurjectionFamily {
            space,
            hub,
            maps,
            base,
        };
        fam.validate(tol)?;
        Ok(fam)
    }

    fn validate(&self, tol: f64) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        let n_hub = self.space.card(self.hub);
        if self.base.space().cards() != [n_hub] {
            return bad(format!("base must live on the {n_hub} hub states"));
        }
        if self.maps.len() != self.space.units() - 1 {
            return bad(format!("need {} maps", self.space.units() - 1));
        }
        for (map, unit) in self.maps.iter().zip(self.others()) {
            let n = self.space.card(unit);
            if map.len() != n_hub || map.iter().any(|&l| l >= n) {
                return bad(format!("map for unit {} is malformed", unit + 1));
            }
            if (0..n).any(|l| !map.contains(&l)) {
                return bad(format!("map for unit {} is not surjective", unit + 1));
            }
            for l in 0..n {
                let hub_states = (0..n_hub).filter(|&h| map[h] == l);
                let ok = match self.base.rationals() {
                    Some(r) => {
                        hub_states.map(|h| r[h].clone()).sum::<Rational>()
                            == rational::ratio(1, n as i64)
                    }
                    None => {
                        let m: f64 = hub_states.map(|h| self.base.value(h)).sum();
                        (m - 1.0 / n as f64).abs() <= tol
                    }
                };
                if !ok {
                    return bad(format!(
                        "fiber {} of unit {} does not carry mass 1/{n}",
                        l + 1,
                        unit + 1
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn hub(&self) -> usize {
        self.hub
    }

    /// Non-hub units in ascending order, matching [`SurjectionFamily::maps`].
    pub fn others(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.space.units()).filter(move |&u| u != self.hub)
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn base(&self) -> &Distribution {
        &self.base
    }

    /// The configuration `(π_1(h), …, h, …)` carried by hub state `h`.
    pub fn graph_point(&self, h: usize) -> Vec<usize> {
        let mut config = vec![0; self.space.units()];
        config[self.hub] = h;
        for (map, unit) in self.maps.iter().zip(self.others()) {
            config[unit] = map[h];
        }
        config
    }

    /// The distribution represented by this family.
    pub fn distribution(&self) -> Distribution {
        let n_hub = self.space.card(self.hub);
        match self.base.probs() {
            Probs::Rational(r) => {
                let points: Vec<_> = (0..n_hub)
                    .map(|h| (self.graph_point(h), r[h].clone()))
                    .collect();
                Distribution::from_points(self.space.clone(), &points)
                    .expect("validated family is normalized")
            }
            Probs::Float(v) => {
                let mut probs = vec![0.0; self.space.total()];
                for (h, &m) in v.iter().enumerate() {
                    probs[self.space.encode(&self.graph_point(h))] += m;
                }
                Distribution::from_floats(self.space.clone(), probs)
                    .expect("validated family is normalized")
            }
        }
    }

    /// `{"pi":[[…],…],"base":[…]}` with 0-based labels; the hub is the last
    /// unit of maximal cardinality.
    pub fn to_json(&self) -> String {
        let base = match self.base.probs() {
            Probs::Rational(r) => r
                .iter()
                .map(|x| serde_json::Value::String(rational::format(x)))
                .collect(),
            Probs::Float(v) => v.iter().map(|&x| serde_json::json!(x)).collect(),
        };
        serde_json::to_string(&WitnessJson {
            pi: self.maps.clone(),
            base,
        })
        .expect("witness serializes")
    }

    pub fn from_json(space: ProductSpace, text: &str, tol: f64) -> Result<Self> {
        let raw: WitnessJson = serde_json::from_str(text)?;
        let hub_space = ProductSpace::with_units(vec![space.card(space.hub())])?;
        let base = if raw.base.iter().all(|v| v.is_string()) {
            let r = raw
                .base
                .iter()
                .map(|v| rational::parse(v.as_str().expect("string")))
                .collect::<Result<Vec<_>>>()?;
            Distribution::from_rationals(hub_space, r)?
        } else {
            let f = raw
                .base
                .iter()
                .map(|v| {
                    v.as_f64()
                        .ok_or_else(|| Error::InvalidArgument(format!("bad base entry {v}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Distribution::from_floats(hub_space, f)?
        };
        Self::new(space, raw.pi, base, tol)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    pi: Vec<Vec<usize>>,
    base: Vec<serde_json::Value>,
}

/// Structural maximizer test. Returns the witness family on success.
///
/// The support must define a function of the hub state, that function must
/// be surjective onto every other unit, and every fiber must carry mass
/// `1/n_i`. Rational input is checked exactly. For float input an entry
/// counts as support when it exceeds `tol`, and masses are compared within
/// `tol`.
///
/// Hub states outside the support are assigned to the currently smallest
/// fiber of each map, so fibers are as balanced as the support allows.
pub fn is_maximizer(p: &Distribution, tol: f64) -> Option<SurjectionFamily> {
    let space = p.space();
    let hub = space.hub();
    let n_hub = space.card(hub);
    let others: Vec<usize> = (0..space.units()).filter(|&u| u != hub).collect();
    let exact = p.rationals();
    let in_support = |k: usize| match exact {
        Some(r) => r[k].is_positive(),
        None => p.value(k) > tol,
    };

    let mut assigned: Vec<Option<Vec<usize>>> = vec![None; n_hub];
    let mut config = vec![0; space.units()];
    let mut stray = 0.0;
    for k in 0..p.len() {
        if !in_support(k) {
            stray += p.value(k);
            continue;
        }
        space.decode_into(k, &mut config);
        let labels: Vec<usize> = others.iter().map(|&u| config[u]).collect();
        match &assigned[config[hub]] {
            Some(prev) if *prev != labels => return None,
            _ => assigned[config[hub]] = Some(labels),
        }
    }
    if exact.is_none() && stray > tol {
        return None;
    }

    let hub_marginal = probspace::marginal(p, UnitSet::singleton(hub)).ok()?;
    let mut maps: Vec<Vec<usize>> = vec![vec![usize::MAX; n_hub]; others.len()];
    for (h, labels) in assigned.iter().enumerate() {
        if let Some(labels) = labels {
            for (map, &l) in maps.iter_mut().zip(labels) {
                map[h] = l;
            }
        }
    }
    for (map, &unit) in maps.iter_mut().zip(&others) {
        let n = space.card(unit);
        let mut fiber = vec![0usize; n];
        for &l in map.iter().filter(|&&l| l != usize::MAX) {
            fiber[l] += 1;
        }
        for slot in map.iter_mut().filter(|l| **l == usize::MAX) {
            let l = (0..n).min_by_key(|&l| (fiber[l], l)).expect("n >= 2");
            *slot = l;
            fiber[l] += 1;
        }
    }
    SurjectionFamily::new(space.clone(), maps, hub_marginal, tol).ok()
}

/// Whether nonnegative masses on the given cells of `Ω_1 × … × Ω_k` can
/// give every unit a uniform marginal. Exact.
///
/// One unit: the cells must cover every label. Two units: a transportation
/// problem, decided by Gale's condition `supply(X) ≤ demand(N(X))` over the
/// subsets `X` of the first unit's labels. More units: exact LP.
pub fn uniform_pullback_feasible(head: &[usize], cells: &[Vec<usize>]) -> bool {
    match head.len() {
        1 => (0..head[0]).all(|l| cells.iter().any(|c| c[0] == l)),
        2 => transport_feasible(head, cells),
        _ => uniform_pullback_feasible_lp(head, cells),
    }
}

fn transport_feasible(head: &[usize], cells: &[Vec<usize>]) -> bool {
    let (a, b) = (head[0], head[1]);
    // supplies 1/a and demands 1/b, scaled by a·b
    for mask in 1u32..(1u32 << a) {
        let chosen = UnitSet::from_bits(mask);
        let mut hit = vec![false; b];
        for c in cells.iter().filter(|c| chosen.contains(c[0])) {
            hit[c[1]] = true;
        }
        let supply = chosen.len() * b;
        let demand = hit.iter().filter(|&&x| x).count() * a;
        if supply > demand {
            return false;
        }
    }
    true
}

/// The same question decided by the exact rational LP, for any number of
/// units.
pub fn uniform_pullback_feasible_lp(head: &[usize], cells: &[Vec<usize>]) -> bool {
    let mut sys = LinearSystem::new(vec![VarKind::NonNegative; cells.len()]);
    for (i, &n) in head.iter().enumerate() {
        for l in 0..n {
            let row = cells
                .iter()
                .map(|c| if c[i] == l { rational::one() } else { rational::zero() })
                .collect();
            sys.add_eq(row, rational::ratio(1, n as i64));
        }
    }
    sys.feasible_point().is_some()
}

/// Exact existence oracle for a global maximizer on a small space.
///
/// A surjection tuple is determined, up to relabelling hub states, by the
/// set of cells of `Ω_{<hub}` it hits; feasibility only grows with that
/// set. So the oracle enumerates every cell set of size
/// `min(n_hub, |Ω_{<hub}|)` and asks whether uniform marginals can be
/// carried on it.
pub fn exists_maximizer_exhaustive(space: &ProductSpace) -> Result<bool> {
    exists_maximizer_exhaustive_with(space, Exec::default())
}

pub fn exists_maximizer_exhaustive_with(space: &ProductSpace, exec: Exec) -> Result<bool> {
    let (sorted, _) = space.sorted();
    let units = sorted.units();
    let head = &sorted.cards()[..units - 1];
    let n_hub = sorted.card(units - 1);
    let head_total: usize = head.iter().product();
    if head_total > EXHAUSTIVE_HEAD_LIMIT {
        return Err(Error::Budget {
            what: "product of non-hub cardinalities",
            size: head_total as u128,
            limit: EXHAUSTIVE_HEAD_LIMIT as u128,
        });
    }
    if n_hub > EXHAUSTIVE_HUB_LIMIT {
        return Err(Error::Budget {
            what: "hub cardinality",
            size: n_hub as u128,
            limit: EXHAUSTIVE_HUB_LIMIT as u128,
        });
    }
    let head_space = ProductSpace::with_units(head.to_vec())?;
    let all_cells: Vec<Vec<usize>> = (0..head_total).map(|k| head_space.decode(k)).collect();
    let size = n_hub.min(head_total);
    let candidates: Vec<Vec<usize>> = (0..head_total).combinations(size).collect();
    Ok(exec.any(&candidates, |chosen| {
        let cells: Vec<Vec<usize>> = chosen.iter().map(|&k| all_cells[k].clone()).collect();
        uniform_pullback_feasible(head, &cells)
    }))
}

/// `(n!)^{N−1}`, or `None` on overflow.
pub fn equal_unit_count(n: usize, units: usize) -> Option<u128> {
    let fact = (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))?;
    (1..units).try_fold(1u128, |acc, _| acc.checked_mul(fact))
}

/// Every global maximizer for `units` units with `n` states each: the
/// uniform distributions on the graphs of `N−1` bijections onto the hub.
pub fn enumerate_equal_unit_maximizers(
    n: usize,
    units: usize,
    cap: u128,
) -> Result<Vec<Distribution>> {
    let space = ProductSpace::new(vec![n; units])?;
    let count = equal_unit_count(n, units).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::Budget {
            what: "number of equal-unit maximizers",
            size: count,
            limit: cap,
        });
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mass = rational::ratio(1, n as i64);
    let out = (0..units - 1)
        .map(|_| perms.iter())
        .multi_cartesian_product()
        .map(|tuple| {
            let points: Vec<_> = (0..n)
                .map(|h| {
                    let mut config: Vec<usize> = tuple.iter().map(|sigma| sigma[h]).collect();
                    config.push(h);
                    (config, mass.clone())
                })
                .collect();
            Distribution::from_points(space.clone(), &points).expect("uniform on n points")
        })
        .collect();
    Ok(out)
}

/// Exact rational probability helper used by tests and the CLI.
pub fn rational_mass(p: &Distribution, config: &[usize]) -> Option<Rational> {
    p.rationals().map(|r| r[p.space().encode(config)].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn space(cards: &[usize]) -> ProductSpace {
        ProductSpace::new(cards.to_vec()).unwrap()
    }

    #[test]
    fn n_min_examples() {
        assert_eq!(n_min(&[2]).unwrap(), 2);
        assert_eq!(n_min(&[2, 3]).unwrap(), 4);
        assert_eq!(n_min(&[2, 3, 5]).unwrap(), 8);
        assert_eq!(n_min(&[4, 6]).unwrap(), 8);
        assert!(n_min(&[]).is_err());
        assert!(n_min(&[1, 3]).is_err());
    }

    #[test]
    fn tset_examples() {
        assert_eq!(build_tset(&[2]).unwrap().points, vec![ratio(1, 2), ratio(1, 1)]);
        assert_eq!(build_tset(&[2, 3]).unwrap().format(), "{1/3,1/2,2/3,1}");
        assert_eq!(build_tset(&[4, 6]).unwrap().len(), 8);
    }

    #[test]
    fn bounds_examples() {
        let b = n_min_bounds(&[2, 3, 5]).unwrap();
        assert_eq!(b, NminBounds { max: 5, coprime: 8, lcm: 30 });
    }

    #[test]
    fn construct_two_binary_units() {
        let p = construct_maximizer(&space(&[2, 2])).unwrap();
        assert_eq!(
            p.rationals().unwrap(),
            &[ratio(1, 2), ratio(0, 1), ratio(0, 1), ratio(1, 2)]
        );
    }

    #[test]
    fn construct_2_3_6() {
        let p = construct_maximizer(&space(&[2, 3, 6])).unwrap();
        // 1-based Φ-points (1,1,1),(1,2,2),(2,2,3),(2,3,4)
        let expect = [
            ([0, 0, 0], ratio(1, 3)),
            ([0, 1, 1], ratio(1, 6)),
            ([1, 1, 2], ratio(1, 6)),
            ([1, 2, 3], ratio(1, 3)),
        ];
        assert_eq!(p.support().len(), 4);
        for (config, mass) in expect {
            assert_eq!(rational_mass(&p, &config).unwrap(), mass);
        }
    }

    #[test]
    fn construct_reports_deficit() {
        match construct_maximizer(&space(&[2, 3, 3])) {
            Err(Error::NoMaximizer { hub, n_min, deficit }) => {
                assert_eq!((hub, n_min, deficit), (3, 4, 1));
            }
            other => panic!("expected NoMaximizer, got {other:?}"),
        }
    }

    #[test]
    fn construct_unsorted_permutes_back() {
        let p = construct_maximizer(&space(&[6, 2, 3])).unwrap();
        assert_eq!(p.space().cards(), &[6, 2, 3]);
        assert!(is_maximizer(&p, 0.0).is_some());
        let sorted = construct_maximizer(&space(&[2, 3, 6])).unwrap();
        assert_eq!(p.permute_units(&[1, 2, 0]).unwrap(), sorted);
    }

    #[test]
    fn is_maximizer_examples() {
        let diag = construct_maximizer(&space(&[2, 2])).unwrap();
        let w = is_maximizer(&diag, 0.0).unwrap();
        assert_eq!(w.maps(), &[vec![0, 1]]);
        assert_eq!(w.distribution(), diag);

        assert!(is_maximizer(&Distribution::uniform_rational(space(&[2, 2])), 0.0).is_none());
        assert!(is_maximizer(&Distribution::uniform(space(&[2, 2])), 1e-9).is_none());
    }

    #[test]
    fn perturbation_breaks_maximality() {
        let p = construct_maximizer(&space(&[2, 3, 6])).unwrap();
        let s = p.space().clone();
        let mut r = p.rationals().unwrap().to_vec();
        r[s.encode(&[0, 0, 0])] -= ratio(1, 100);
        r[s.encode(&[1, 0, 0])] += ratio(1, 100);
        let q = Distribution::from_rationals(s, r).unwrap();
        assert!(is_maximizer(&q, 0.0).is_none());
    }

    #[test]
    fn witness_extension_balances_fibers() {
        let p = construct_maximizer(&space(&[2, 3, 6])).unwrap();
        let w = is_maximizer(&p, 0.0).unwrap();
        for (map, n) in w.maps().iter().zip([2, 3]) {
            for l in 0..n {
                assert_eq!(map.iter().filter(|&&x| x == l).count(), 6 / n);
            }
        }
    }

    #[test]
    fn witness_json_round_trip() {
        let p = construct_maximizer(&space(&[2, 3, 4])).unwrap();
        let w = is_maximizer(&p, 0.0).unwrap();
        let text = w.to_json();
        assert!(text.starts_with(r#"{"pi":[[0,0,1,1],[0,1,1,2]],"base":["1/3","1/6","1/6","1/3"]"#));
        let back = SurjectionFamily::from_json(p.space().clone(), &text, 0.0).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn witness_validation() {
        let s = space(&[2, 2]);
        let base = Distribution::from_rationals(
            ProductSpace::with_units(vec![2]).unwrap(),
            vec![ratio(1, 2), ratio(1, 2)],
        )
        .unwrap();
        assert!(SurjectionFamily::new(s.clone(), vec![vec![0, 0]], base.clone(), 0.0).is_err());
        let skew = Distribution::from_rationals(
            ProductSpace::with_units(vec![2]).unwrap(),
            vec![ratio(1, 3), ratio(2, 3)],
        )
        .unwrap();
        assert!(SurjectionFamily::new(s.clone(), vec![vec![0, 1]], skew, 0.0).is_err());
        assert!(SurjectionFamily::new(s, vec![vec![1, 0]], base, 0.0).is_ok());
    }

    #[test]
    fn exhaustive_examples() {
        assert!(exists_maximizer_exhaustive(&space(&[2, 2, 2])).unwrap());
        assert!(!exists_maximizer_exhaustive(&space(&[2, 3, 3])).unwrap());
        assert!(exists_maximizer_exhaustive(&space(&[2, 3, 4])).unwrap());
        assert!(matches!(
            exists_maximizer_exhaustive(&space(&[4, 4, 4])),
            Err(Error::Budget { .. })
        ));
        assert!(matches!(
            exists_maximizer_exhaustive(&space(&[2, 9])),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_equal_unit_maximizers(2, 2, 100).unwrap().len(), 2);
        assert_eq!(enumerate_equal_unit_maximizers(2, 4, 100).unwrap().len(), 8);
        assert_eq!(enumerate_equal_unit_maximizers(3, 2, 100).unwrap().len(), 6);
        assert!(matches!(
            enumerate_equal_unit_maximizers(3, 3, 35),
            Err(Error::Budget { size: 36, .. })
        ));
    }
}
