//! Product configuration spaces, distributions on them and the entropic
//! quantities built from marginals: entropy, KL divergence and the
//! multi-information.
//!
//! # Index layout
//!
//! Configurations `ω = (ω_0, …, ω_{N-1})` are stored densely in lexicographic
//! order with unit 0 varying slowest and unit `N-1` fastest. Labels are
//! 0-based. This layout is part of the JSON format and never changes.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Tolerance on the total mass of a float distribution.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Default max-norm tolerance for [`is_factorizable`] in float mode.
pub const FACTORIZABLE_TOL: f64 = 1e-9;

const MAX_TOTAL: usize = 1 << 26;

/// A set of units, stored as a bitmask over unit indices `0..N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnitSet(u32);

impl UnitSet {
    pub const MAX_UNITS: usize = 31;

    pub fn empty() -> Self {
        UnitSet(0)
    }

    pub fn full(units: usize) -> Self {
        assert!(units <= Self::MAX_UNITS);
        UnitSet(((1u64 << units) - 1) as u32)
    }

    pub fn singleton(unit: usize) -> Self {
        assert!(unit < Self::MAX_UNITS);
        UnitSet(1 << unit)
    }

    pub fn from_units(units: &[usize]) -> Self {
        units.iter().fold(UnitSet(0), |s, &u| s.with(u))
    }

    pub fn from_bits(bits: u32) -> Self {
        UnitSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn with(self, unit: usize) -> Self {
        assert!(unit < Self::MAX_UNITS);
        UnitSet(self.0 | (1 << unit))
    }

    pub fn contains(self, unit: usize) -> bool {
        unit < Self::MAX_UNITS && self.0 & (1 << unit) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: UnitSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn difference(self, other: UnitSet) -> UnitSet {
        UnitSet(self.0 & !other.0)
    }

    pub fn complement(self, units: usize) -> UnitSet {
        UnitSet::full(units).difference(self)
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..Self::MAX_UNITS).filter(move |&u| self.contains(u))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets `B ⊆ self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = UnitSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(UnitSet(cur))
        })
    }

    /// Canonical ordering key: size first, then lexicographic member list.
    pub fn order_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.to_vec())
    }
}

impl fmt::Display for UnitSet {
    /// 1-based labels, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, u) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u + 1)?;
        }
        write!(f, "}}")
    }
}

/// The configuration space `Ω_0 × … × Ω_{N-1}` with `|Ω_i| = cards[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductSpace {
    cards: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl ProductSpace {
    /// A model space: at least two units, each with at least two states.
    pub fn new(cards: Vec<usize>) -> Result<Self> {
        if cards.len() < 2 {
            return Err(Error::InvalidSpace(format!(
                "need at least 2 units, got {}",
                cards.len()
            )));
        }
        Self::with_units(cards)
    }

    /// Like [`ProductSpace::new`] but also accepts a single unit; used for
    /// marginal spaces.
    pub fn with_units(cards: Vec<usize>) -> Result<Self> {
        if cards.is_empty() || cards.len() > UnitSet::MAX_UNITS {
            return Err(Error::InvalidSpace(format!(
                "unit count {} out of range",
                cards.len()
            )));
        }
        if let Some(&c) = cards.iter().find(|&&c| c < 2) {
            return Err(Error::InvalidSpace(format!(
                "every unit needs at least 2 states, got {c}"
            )));
        }
        let total = cards
            .iter()
            .try_fold(1usize, |acc, &c| acc.checked_mul(c))
            .filter(|&t| t <= MAX_TOTAL)
            .ok_or_else(|| Error::InvalidSpace(format!("space {cards:?} is too large")))?;
        let mut strides = vec![1; cards.len()];
        for i in (0..cards.len() - 1).rev() {
            strides[i] = strides[i + 1] * cards[i + 1];
        }
        Ok(ProductSpace {
            cards,
            strides,
            total,
        })
    }

    pub fn cards(&self) -> &[usize] {
        &self.cards
    }

    pub fn card(&self, unit: usize) -> usize {
        self.cards[unit]
    }

    pub fn units(&self) -> usize {
        self.cards.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn all_units(&self) -> UnitSet {
        UnitSet::full(self.units())
    }

    pub fn check_units(&self, set: UnitSet) -> Result<()> {
        match set.iter().find(|&u| u >= self.units()) {
            Some(unit) => Err(Error::UnitOutOfRange {
                unit,
                units: self.units(),
            }),
            None => Ok(()),
        }
    }

    pub fn encode(&self, config: &[usize]) -> usize {
        debug_assert_eq!(config.len(), self.units());
        config
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c * s)
            .sum()
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.units()];
        self.decode_into(index, &mut out);
        out
    }

    pub fn decode_into(&self, index: usize, out: &mut [usize]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = (index / self.strides[i]) % self.cards[i];
        }
    }

    pub fn coord(&self, index: usize, unit: usize) -> usize {
        (index / self.strides[unit]) % self.cards[unit]
    }

    /// The space `Ω_A` of the units in `set`, in ascending unit order.
    pub fn sub(&self, set: UnitSet) -> Result<ProductSpace> {
        if set.is_empty() {
            return Err(Error::EmptyUnitSet);
        }
        self.check_units(set)?;
        ProductSpace::with_units(set.iter().map(|u| self.cards[u]).collect())
    }

    /// Index of the restriction `ω_A` inside `Ω_A` (row-major over `set`).
    pub fn restrict_index(&self, index: usize, set: UnitSet) -> usize {
        let mut out = 0;
        for u in set.iter() {
            out = out * self.cards[u] + self.coord(index, u);
        }
        out
    }

    /// Number of configurations of the units in `set` (1 for the empty set).
    pub fn size_of(&self, set: UnitSet) -> usize {
        set.iter().map(|u| self.cards[u]).product()
    }

    /// The last unit of maximal cardinality. With ascending cards this is
    /// unit `N-1`.
    pub fn hub(&self) -> usize {
        let max = *self.cards.iter().max().expect("nonempty");
        self.cards.iter().rposition(|&c| c == max).expect("max exists")
    }

    /// Stable ascending sort of the units. Returns the sorted space and the
    /// permutation `perm` with `sorted.cards[j] == self.cards[perm[j]]`.
    pub fn sorted(&self) -> (ProductSpace, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.units()).collect();
        perm.sort_by_key(|&u| self.cards[u]);
        let cards = perm.iter().map(|&u| self.cards[u]).collect();
        (
            ProductSpace::with_units(cards).expect("permutation of a valid space"),
            perm,
        )
    }

    pub fn is_sorted(&self) -> bool {
        self.cards.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cards.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Numeric payload of a [`Distribution`].
#[derive(Clone, Debug, PartialEq)]
pub enum Probs {
    Float(Vec<f64>),
    Rational(Vec<Rational>),
}

/// A normalized nonnegative vector over a [`ProductSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    space: ProductSpace,
    probs: Probs,
}

impl Distribution {
    pub fn from_floats(space: ProductSpace, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != space.total() {
            return Err(Error::InvalidDistribution(format!(
                "expected {} entries, got {}",
                space.total(),
                probs.len()
            )));
        }
        if let Some(x) = probs.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "entries must be finite and nonnegative, got {x}"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL * (probs.len() as f64).max(1.0) {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(Distribution {
            space,
            probs: Probs::Float(probs),
        })
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(space: ProductSpace, weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if sum.is_nan() || sum <= 0.0 || !sum.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "weights must have a finite positive sum, got {sum}"
            )));
        }
        let probs: Vec<f64> = weights.iter().map(|w| w / sum).collect();
        Self::from_floats(space, probs)
    }

    pub fn from_rationals(space: ProductSpace, probs: Vec<Rational>) -> Result<Self> {
        if probs.len() != space.total() {
            return Err(Error::InvalidDistribution(format!(
                "expected {} entries, got {}",
                space.total(),
                probs.len()
            )));
        }
        if probs.iter().any(|x| x.is_negative()) {
            return Err(Error::InvalidDistribution(
                "entries must be nonnegative".into(),
            ));
        }
        let sum: Rational = probs.iter().sum();
        if sum != rational::one() {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {}, not 1",
                rational::format(&sum)
            )));
        }
        Ok(Distribution {
            space,
            probs: Probs::Rational(probs),
        })
    }

    /// Exact distribution from sparse `(configuration, mass)` pairs;
    /// repeated configurations accumulate.
    pub fn from_points(space: ProductSpace, points: &[(Vec<usize>, Rational)]) -> Result<Self> {
        let mut probs = vec![rational::zero(); space.total()];
        for (config, mass) in points {
            if config.len() != space.units()
                || config.iter().zip(space.cards()).any(|(&c, &n)| c >= n)
            {
                return Err(Error::InvalidDistribution(format!(
                    "configuration {config:?} is not in {space}"
                )));
            }
            probs[space.encode(config)] += mass;
        }
        Self::from_rationals(space, probs)
    }

    pub fn uniform(space: ProductSpace) -> Self {
        let n = space.total();
        Distribution {
            space,
            probs: Probs::Float(vec![1.0 / n as f64; n]),
        }
    }

    pub fn uniform_rational(space: ProductSpace) -> Self {
        let n = space.total();
        Distribution {
            space,
            probs: Probs::Rational(vec![rational::ratio(1, n as i64); n]),
        }
    }

    pub fn point_mass(space: ProductSpace, config: &[usize]) -> Result<Self> {
        Self::from_points(space, &[(config.to_vec(), rational::one())])
    }

    /// Outer product of one float vector per unit.
    pub fn product(space: ProductSpace, marginals: &[Vec<f64>]) -> Result<Self> {
        check_marginal_shapes(&space, marginals.iter().map(Vec::len))?;
        let mut config = vec![0; space.units()];
        let probs = (0..space.total())
            .map(|k| {
                space.decode_into(k, &mut config);
                config
                    .iter()
                    .zip(marginals)
                    .map(|(&c, m)| m[c])
                    .product::<f64>()
            })
            .collect();
        Self::from_floats(space, probs)
    }

    pub fn product_rational(space: ProductSpace, marginals: &[Vec<Rational>]) -> Result<Self> {
        check_marginal_shapes(&space, marginals.iter().map(Vec::len))?;
        let mut config = vec![0; space.units()];
        let probs = (0..space.total())
            .map(|k| {
                space.decode_into(k, &mut config);
                config
                    .iter()
                    .zip(marginals)
                    .map(|(&c, m)| m[c].clone())
                    .product::<Rational>()
            })
            .collect();
        Self::from_rationals(space, probs)
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn probs(&self) -> &Probs {
        &self.probs
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.probs, Probs::Rational(_))
    }

    pub fn len(&self) -> usize {
        self.space.total()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, index: usize) -> f64 {
        match &self.probs {
            Probs::Float(v) => v[index],
            Probs::Rational(v) => rational::to_f64(&v[index]),
        }
    }

    pub fn is_positive_at(&self, index: usize) -> bool {
        match &self.probs {
            Probs::Float(v) => v[index] > 0.0,
            Probs::Rational(v) => v[index].is_positive(),
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        match &self.probs {
            Probs::Float(v) => v.clone(),
            Probs::Rational(v) => v.iter().map(rational::to_f64).collect(),
        }
    }

    /// The exact entries, if this is a rational distribution.
    pub fn rationals(&self) -> Option<&[Rational]> {
        match &self.probs {
            Probs::Rational(v) => Some(v),
            Probs::Float(_) => None,
        }
    }

    /// Explicit conversion to float mode.
    pub fn to_float(&self) -> Distribution {
        Distribution {
            space: self.space.clone(),
            probs: Probs::Float(self.to_f64_vec()),
        }
    }

    /// Indices with positive mass, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.is_positive_at(k)).collect()
    }

    /// Reorders units: unit `j` of the result is unit `perm[j]` of `self`.
    pub fn permute_units(&self, perm: &[usize]) -> Result<Distribution> {
        let n = self.space.units();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&u| u >= n || std::mem::replace(&mut seen[u], true))
        {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of {n} units"
            )));
        }
        let space = ProductSpace::with_units(perm.iter().map(|&u| self.space.card(u)).collect())?;
        let mut old = vec![0; n];
        let mut new = vec![0; n];
        let target = |k: usize, old: &mut Vec<usize>, new: &mut Vec<usize>| {
            self.space.decode_into(k, old);
            for (j, &u) in perm.iter().enumerate() {
                new[j] = old[u];
            }
            space.encode(new)
        };
        let probs = match &self.probs {
            Probs::Float(v) => {
                let mut out = vec![0.0; v.len()];
                for (k, x) in v.iter().enumerate() {
                    out[target(k, &mut old, &mut new)] = *x;
                }
                Probs::Float(out)
            }
            Probs::Rational(v) => {
                let mut out = vec![rational::zero(); v.len()];
                for (k, x) in v.iter().enumerate() {
                    out[target(k, &mut old, &mut new)] = x.clone();
                }
                Probs::Rational(out)
            }
        };
        Ok(Distribution { space, probs })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("distribution serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn check_marginal_shapes(
    space: &ProductSpace,
    lens: impl ExactSizeIterator<Item = usize>,
) -> Result<()> {
    if lens.len() != space.units() {
        return Err(Error::InvalidDistribution(format!(
            "need one marginal per unit ({})",
            space.units()
        )));
    }
    for (i, len) in lens.enumerate() {
        if len != space.card(i) {
            return Err(Error::InvalidDistribution(format!(
                "marginal {i} has {len} entries, expected {}",
                space.card(i)
            )));
        }
    }
    Ok(())
}

/// The image measure `p_A` of `p` under the restriction to the units in `set`.
pub fn marginal(p: &Distribution, set: UnitSet) -> Result<Distribution> {
    let sub = p.space.sub(set)?;
    let space = &p.space;
    let probs = match &p.probs {
        Probs::Float(v) => {
            let mut out = vec![0.0; sub.total()];
            for (k, x) in v.iter().enumerate() {
                out[space.restrict_index(k, set)] += x;
            }
            Probs::Float(out)
        }
        Probs::Rational(v) => {
            let mut out = vec![rational::zero(); sub.total()];
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    out[space.restrict_index(k, set)] += x;
                }
            }
            Probs::Rational(out)
        }
    };
    Ok(Distribution { space: sub, probs })
}

/// One-unit marginal as a float vector.
pub fn unit_marginal(p: &Distribution, unit: usize) -> Vec<f64> {
    let mut out = vec![0.0; p.space.card(unit)];
    for k in 0..p.len() {
        out[p.space.coord(k, unit)] += p.value(k);
    }
    out
}

/// Shannon entropy (nats) of a probability vector, with `0 ln 0 = 0`.
pub fn entropy_of(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

pub fn entropy(p: &Distribution) -> f64 {
    entropy_of(&p.to_f64_vec())
}

/// `H(X_target | X_given)` evaluated directly from the conditional laws.
pub fn conditional_entropy(p: &Distribution, target: UnitSet, given: UnitSet) -> Result<f64> {
    p.space.check_units(target.difference(given))?;
    p.space.check_units(given)?;
    let target = target.difference(given);
    if target.is_empty() {
        return Ok(0.0);
    }
    let given_size = p.space.size_of(given);
    let target_size = p.space.size_of(target);
    let mut joint = vec![0.0; given_size * target_size];
    for k in 0..p.len() {
        let g = p.space.restrict_index(k, given);
        let t = p.space.restrict_index(k, target);
        joint[g * target_size + t] += p.value(k);
    }
    let mut h = 0.0;
    for row in joint.chunks(target_size) {
        let mass: f64 = row.iter().sum();
        if mass > 0.0 {
            let cond: Vec<f64> = row.iter().map(|x| x / mass).collect();
            h += mass * entropy_of(&cond);
        }
    }
    Ok(h)
}

/// Value of `D(p‖q)`: finite, or the distinguished infinite value when the
/// support of `p` is not contained in the support of `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Divergence {
    Finite(f64),
    Infinite,
}

impl Divergence {
    pub fn is_finite(self) -> bool {
        matches!(self, Divergence::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Divergence::Finite(x) => Some(x),
            Divergence::Infinite => None,
        }
    }

    /// Maps the infinite value to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::Finite(x) => write!(f, "{x}"),
            Divergence::Infinite => write!(f, "inf"),
        }
    }
}

pub fn kl_divergence(p: &Distribution, q: &Distribution) -> Result<Divergence> {
    if p.space != q.space {
        return Err(Error::SpaceMismatch {
            left: p.space.cards().to_vec(),
            right: q.space.cards().to_vec(),
        });
    }
    let mut sum = 0.0;
    for k in 0..p.len() {
        if !p.is_positive_at(k) {
            continue;
        }
        if !q.is_positive_at(k) {
            return Ok(Divergence::Infinite);
        }
        let (a, b) = (p.value(k), q.value(k));
        sum += a * (a / b).ln();
    }
    // rounding can leave a tiny negative value for p == q
    Ok(Divergence::Finite(sum.max(0.0)))
}

/// `Σ_i H(p_i) − H(p)`.
pub fn multi_information(p: &Distribution) -> f64 {
    let marginal_sum: f64 = (0..p.space.units())
        .map(|i| entropy_of(&unit_marginal(p, i)))
        .sum();
    (marginal_sum - entropy(p)).max(0.0)
}

/// Sum of `ln n_i` over the `N-1` smallest cardinalities.
pub fn upper_bound(space: &ProductSpace) -> f64 {
    let mut cards = space.cards().to_vec();
    cards.sort_unstable();
    cards[..cards.len() - 1]
        .iter()
        .map(|&n| (n as f64).ln())
        .sum()
}

/// The product of the one-unit marginals of `p`, in the same numeric mode.
pub fn product_of_marginals(p: &Distribution) -> Distribution {
    let space = p.space.clone();
    match &p.probs {
        Probs::Float(_) => {
            let m: Vec<Vec<f64>> = (0..space.units()).map(|i| unit_marginal(p, i)).collect();
            let mut config = vec![0; space.units()];
            let probs = (0..space.total())
                .map(|k| {
                    space.decode_into(k, &mut config);
                    config.iter().zip(&m).map(|(&c, mi)| mi[c]).product()
                })
                .collect();
            Distribution {
                space,
                probs: Probs::Float(probs),
            }
        }
        Probs::Rational(_) => {
            let m: Vec<Vec<Rational>> = (0..space.units())
                .map(|i| {
                    let d = marginal(p, UnitSet::singleton(i)).expect("unit in range");
                    d.rationals().expect("rational mode").to_vec()
                })
                .collect();
            Distribution::product_rational(space, &m).expect("product of marginals is normalized")
        }
    }
}

/// Whether `p` equals the product of its marginals: exactly in rational
/// mode, within `tol` in max-norm in float mode.
pub fn is_factorizable(p: &Distribution, tol: f64) -> bool {
    let prod = product_of_marginals(p);
    match (&p.probs, &prod.probs) {
        (Probs::Rational(a), Probs::Rational(b)) => a == b,
        _ => (0..p.len()).all(|k| (p.value(k) - prod.value(k)).abs() <= tol),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeJson {
    Float,
    Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueJson {
    Num(f64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct DistributionJson {
    cards: Vec<usize>,
    mode: ModeJson,
    probs: Vec<ValueJson>,
}

impl Serialize for Distribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (mode, probs) = match &self.probs {
            Probs::Float(v) => (ModeJson::Float, v.iter().map(|&x| ValueJson::Num(x)).collect()),
            Probs::Rational(v) => (
                ModeJson::Rational,
                v.iter().map(|x| ValueJson::Text(rational::format(x))).collect(),
            ),
        };
        DistributionJson {
            cards: self.space.cards().to_vec(),
            mode,
            probs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DistributionJson::deserialize(d)?;
        let space = ProductSpace::new(raw.cards).map_err(D::Error::custom)?;
        let dist = match raw.mode {
            ModeJson::Float => {
                let probs = raw
                    .probs
                    .into_iter()
                    .map(|v| match v {
                        ValueJson::Num(x) => Ok(x),
                        ValueJson::Text(t) => Err(D::Error::custom(format!(
                            "float mode expects numbers, got {t:?}"
                        ))),
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Distribution::from_floats(space, probs)
            }
            ModeJson::Rational => {
                let probs = raw
                    .probs
                    .into_iter()
                    .map(|v| match v {
                        ValueJson::Text(t) => rational::parse(&t),
                        ValueJson::Num(x) if x.fract() == 0.0 && x.abs() < 1e15 => {
                            Ok(rational::int(x as i64))
                        }
                        ValueJson::Num(x) => Err(Error::InvalidDistribution(format!(
                            "rational mode expects \"num/den\" strings, got {x}"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()
                    .map_err(D::Error::custom)?;
                Distribution::from_rationals(space, probs)
            }
        };
        dist.map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use std::f64::consts::LN_2;

    fn space(cards: &[usize]) -> ProductSpace {
        ProductSpace::new(cards.to_vec()).unwrap()
    }

    fn diagonal() -> Distribution {
        Distribution::from_points(
            space(&[2, 2]),
            &[(vec![0, 0], ratio(1, 2)), (vec![1, 1], ratio(1, 2))],
        )
        .unwrap()
    }

    #[test]
    fn space_validation() {
        assert!(ProductSpace::new(vec![2]).is_err());
        assert!(ProductSpace::new(vec![2, 1]).is_err());
        assert!(ProductSpace::new(vec![]).is_err());
        assert_eq!(space(&[2, 3, 4]).total(), 24);
    }

    #[test]
    fn layout_is_last_unit_fastest() {
        let s = space(&[2, 3]);
        assert_eq!(s.encode(&[0, 1]), 1);
        assert_eq!(s.encode(&[1, 0]), 3);
        assert_eq!(s.decode(5), vec![1, 2]);
    }

    #[test]
    fn unit_set_subsets() {
        let a = UnitSet::from_units(&[0, 2]);
        let subs: Vec<u32> = a.subsets().map(UnitSet::bits).collect();
        assert_eq!(subs, vec![0, 1, 4, 5]);
        assert_eq!(UnitSet::empty().subsets().count(), 1);
        assert_eq!(a.to_string(), "{1,3}");
    }

    #[test]
    fn marginal_of_diagonal_is_uniform() {
        let m = marginal(&diagonal(), UnitSet::singleton(0)).unwrap();
        assert_eq!(m.rationals().unwrap(), &[ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn marginal_of_uniform() {
        let m = marginal(&Distribution::uniform_rational(space(&[2, 3])), UnitSet::singleton(1)).unwrap();
        assert_eq!(m.rationals().unwrap(), &[ratio(1, 3), ratio(1, 3), ratio(1, 3)]);
    }

    #[test]
    fn empty_marginal_rejected() {
        assert!(matches!(
            marginal(&diagonal(), UnitSet::empty()),
            Err(Error::EmptyUnitSet)
        ));
    }

    #[test]
    fn entropy_examples() {
        let s = space(&[2, 2]);
        assert_eq!(entropy(&Distribution::point_mass(s.clone(), &[1, 0]).unwrap()), 0.0);
        assert!((entropy(&Distribution::uniform(s)) - 4f64.ln()).abs() < 1e-15);
        assert!((entropy_of(&[0.5, 0.25, 0.25]) - 1.5 * LN_2).abs() < 1e-15);
    }

    #[test]
    fn kl_examples() {
        let s = space(&[2, 2]);
        let u = Distribution::uniform(s.clone());
        assert_eq!(kl_divergence(&u, &u).unwrap(), Divergence::Finite(0.0));

        let p = Distribution::point_mass(s.clone(), &[0, 0]).unwrap();
        let q = Distribution::from_points(
            s.clone(),
            &[(vec![1, 0], ratio(1, 2)), (vec![0, 1], ratio(1, 2))],
        )
        .unwrap();
        assert_eq!(kl_divergence(&p, &q).unwrap(), Divergence::Infinite);

        // (1/2, 1/2) vs (1/4, 3/4) embedded as product with a point mass
        let p = Distribution::product(s.clone(), &[vec![0.5, 0.5], vec![1.0, 0.0]]).unwrap();
        let q = Distribution::product(s, &[vec![0.25, 0.75], vec![1.0, 0.0]]).unwrap();
        let expected = 0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln();
        let d = kl_divergence(&p, &q).unwrap().finite().unwrap();
        assert!((d - expected).abs() < 1e-15);
    }

    #[test]
    fn kl_space_mismatch() {
        let a = Distribution::uniform(space(&[2, 2]));
        let b = Distribution::uniform(space(&[2, 3]));
        assert!(matches!(kl_divergence(&a, &b), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn multi_information_examples() {
        assert_eq!(multi_information(&Distribution::uniform(space(&[2, 2]))), 0.0);
        assert!((multi_information(&diagonal()) - LN_2).abs() < 1e-15);
    }

    #[test]
    fn upper_bound_examples() {
        assert!((upper_bound(&space(&[2, 2])) - LN_2).abs() < 1e-15);
        assert!((upper_bound(&space(&[2, 3, 6])) - 6f64.ln()).abs() < 1e-15);
        assert!((upper_bound(&space(&[6, 2, 3])) - 6f64.ln()).abs() < 1e-15);
        assert!((upper_bound(&space(&[3, 3, 3])) - 2.0 * 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn factorizable_examples() {
        assert!(is_factorizable(&Distribution::uniform(space(&[2, 2])), FACTORIZABLE_TOL));
        assert!(!is_factorizable(&diagonal(), FACTORIZABLE_TOL));
        let p = Distribution::product_rational(
            space(&[2, 2]),
            &[vec![ratio(1, 3), ratio(2, 3)], vec![ratio(1, 4), ratio(3, 4)]],
        )
        .unwrap();
        assert!(is_factorizable(&p, 0.0));
    }

    #[test]
    fn validation_rejects_bad_mass() {
        assert!(Distribution::from_floats(space(&[2, 2]), vec![0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(Distribution::from_floats(space(&[2, 2]), vec![0.3; 4]).is_err());
        assert!(Distribution::from_rationals(space(&[2, 2]), vec![ratio(1, 3); 4]).is_err());
    }

    #[test]
    fn permute_units_moves_axes() {
        let s = space(&[2, 3]);
        let p = Distribution::point_mass(s, &[1, 2]).unwrap();
        let q = p.permute_units(&[1, 0]).unwrap();
        assert_eq!(q.space().cards(), &[3, 2]);
        assert_eq!(q.support(), vec![q.space().encode(&[2, 1])]);
        assert!(p.permute_units(&[0, 0]).is_err());
    }

    #[test]
    fn json_formats() {
        let text = diagonal().to_json();
        assert_eq!(
            text,
            r#"{"cards":[2,2],"mode":"rational","probs":["1/2","0","0","1/2"]}"#
        );
        assert_eq!(Distribution::from_json(&text).unwrap(), diagonal());

        let f = Distribution::uniform(space(&[2, 2]));
        assert_eq!(Distribution::from_json(&f.to_json()).unwrap(), f);
        assert!(Distribution::from_json(r#"{"cards":[2,2],"mode":"float","probs":[1,0,0]}"#).is_err());
        assert!(Distribution::from_json(r#"{"cards":[2,2],"mode":"rational","probs":["1/2","1/2","1/2","0"]}"#).is_err());
    }
}
