//! Interaction decomposition of real functions on a product space.
//!
//! `Π_A` averages out the units outside `A`; the pure projections
//! `Π̃_A = Σ_{B⊆A} (−1)^{|A∖B|} Π_B` split `R^Ω` into mutually orthogonal
//! pieces, one per subset of units. Exponential families are generated by
//! direct sums of pure pieces and fitted to a target by information
//! projection.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::probspace::{self, Distribution, Divergence, ProductSpace, UnitSet};
use crate::rational::{self, Rational};

/// A real function on `Ω_V`, stored in the space's index layout.
#[derive(Clone, Debug, PartialEq)]
pub struct RealFunction {
    space: ProductSpace,
    values: Vec<f64>,
}

impl RealFunction {
    pub fn new(space: ProductSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.total() {
            return Err(Error::InvalidArgument(format!(
                "function on {space} needs {} values, got {}",
                space.total(),
                values.len()
            )));
        }
        Ok(RealFunction { space, values })
    }

    pub fn zeros(space: ProductSpace) -> Self {
        let n = space.total();
        RealFunction {
            space,
            values: vec![0.0; n],
        }
    }

    pub fn from_fn(space: ProductSpace, f: impl Fn(&[usize]) -> f64) -> Self {
        let mut config = vec![0; space.units()];
        let values = (0..space.total())
            .map(|k| {
                space.decode_into(k, &mut config);
                f(&config)
            })
            .collect();
        RealFunction { space, values }
    }

    /// `ln p`, for strictly positive `p`.
    pub fn log_of(p: &Distribution) -> Result<Self> {
        let values: Vec<f64> = p.to_f64_vec();
        if values.iter().any(|&x| x <= 0.0) {
            return Err(Error::InvalidArgument(
                "log of a distribution needs full support".into(),
            ));
        }
        Ok(RealFunction {
            space: p.space().clone(),
            values: values.into_iter().map(f64::ln).collect(),
        })
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn dot(&self, other: &RealFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn scaled(&self, c: f64) -> RealFunction {
        self.map(|x| c * x)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> RealFunction {
        RealFunction {
            space: self.space.clone(),
            values: self.values.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn add(&self, other: &RealFunction) -> RealFunction {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RealFunction) -> RealFunction {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &RealFunction, f: impl Fn(f64, f64) -> f64) -> RealFunction {
        debug_assert_eq!(self.space, other.space);
        RealFunction {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn axpy(&mut self, a: f64, x: &RealFunction) {
        for (y, xv) in self.values.iter_mut().zip(&x.values) {
            *y += a * xv;
        }
    }
}

/// `Π_A f`: the average of `f` over the units outside `set`.
pub fn project_onto_ia(f: &RealFunction, set: UnitSet) -> RealFunction {
    let space = &f.space;
    let cells = space.size_of(set);
    let mut sums = vec![0.0; cells];
    for (k, v) in f.values.iter().enumerate() {
        sums[space.restrict_index(k, set)] += v;
    }
    let fiber = (space.total() / cells) as f64;
    for s in sums.iter_mut() {
        *s /= fiber;
    }
    RealFunction {
        space: space.clone(),
        values: (0..space.total())
            .map(|k| sums[space.restrict_index(k, set)])
            .collect(),
    }
}

/// `Π̃_A f` by Möbius inversion over the subsets of `set`.
pub fn project_onto_pure_ia(f: &RealFunction, set: UnitSet) -> RealFunction {
    let mut out = RealFunction::zeros(f.space.clone());
    for b in set.subsets() {
        let sign = if set.difference(b).len().is_multiple_of(2) { 1.0 } else { -1.0 };
        out.axpy(sign, &project_onto_ia(f, b));
    }
    out
}

/// All pure components `(A, Π̃_A f)` in canonical order of `A`.
pub fn decompose(f: &RealFunction) -> Vec<(UnitSet, RealFunction)> {
    let units = f.space.units();
    let mut sets: Vec<UnitSet> = UnitSet::full(units).subsets().collect();
    sets.sort_by_key(|s| s.order_key());
    sets.into_iter()
        .map(|a| (a, project_onto_pure_ia(f, a)))
        .collect()
}

/// `dim Ĩ_A = Π_{i∈A} (n_i − 1)`; 1 for the empty set.
pub fn pure_dim(space: &ProductSpace, set: UnitSet) -> usize {
    set.iter().map(|u| space.card(u) - 1).product()
}

/// A collection of distinct unit subsets generating `Ĩ_𝐀 = ⊕_{A∈𝐀} Ĩ_A`.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionFamilySpec {
    space: ProductSpace,
    sets: Vec<UnitSet>,
}

impl InteractionFamilySpec {
    /// Sets are stored in canonical order (size, then lexicographic).
    pub fn new(space: ProductSpace, mut sets: Vec<UnitSet>) -> Result<Self> {
        for &s in &sets {
            space
                .check_units(s)
                .map_err(|e| Error::InvalidFamily(e.to_string()))?;
        }
        sets.sort_by_key(|s| s.order_key());
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidFamily(format!("duplicate set {}", w[0])));
        }
        Ok(InteractionFamilySpec { space, sets })
    }

    /// `I^(k)`: every nonempty set of at most `k` units.
    pub fn order(space: ProductSpace, k: usize) -> Self {
        Self::by_size(space, |len| len >= 1 && len <= k)
    }

    /// `Ĩ^(k)`: every set of exactly `k` units.
    pub fn pure_order(space: ProductSpace, k: usize) -> Self {
        Self::by_size(space, |len| len == k)
    }

    fn by_size(space: ProductSpace, keep: impl Fn(usize) -> bool) -> Self {
        let sets = UnitSet::full(space.units())
            .subsets()
            .filter(|s| keep(s.len()))
            .collect();
        Self::new(space, sets).expect("subsets are distinct and in range")
    }

    /// Pure pair interactions of `hub` with every other unit.
    pub fn star(space: ProductSpace, hub: usize) -> Result<Self> {
        if hub >= space.units() {
            return Err(Error::UnitOutOfRange {
                unit: hub,
                units: space.units(),
            });
        }
        let sets = (0..space.units())
            .filter(|&i| i != hub)
            .map(|i| UnitSet::from_units(&[i, hub]))
            .collect();
        Self::new(space, sets)
    }

    /// Star family around the largest unit.
    pub fn default_star(space: ProductSpace) -> Self {
        let hub = space.hub();
        Self::star(space, hub).expect("hub is in range")
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn sets(&self) -> &[UnitSet] {
        &self.sets
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyJson {
            cards: self.space.cards().to_vec(),
            sets: self
                .sets
                .iter()
                .map(|s| s.iter().map(|u| u + 1).collect())
                .collect(),
        })
        .expect("family serializes")
    }

    /// Parses `{"cards":[…],"sets":[[1,4],…]}` with 1-based unit labels.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FamilyJson = serde_json::from_str(text)?;
        let space = ProductSpace::new(raw.cards)?;
        let sets = raw
            .sets
            .iter()
            .map(|members| {
                let mut set = UnitSet::empty();
                for &m in members {
                    if m == 0 || m > space.units() {
                        return Err(Error::InvalidFamily(format!(
                            "unit label {m} outside 1..={}",
                            space.units()
                        )));
                    }
                    if set.contains(m - 1) {
                        return Err(Error::InvalidFamily(format!("unit {m} repeated")));
                    }
                    set = set.with(m - 1);
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, sets)
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    cards: Vec<usize>,
    sets: Vec<Vec<usize>>,
}

/// `Σ_{A∈𝐀, A≠∅} dim Ĩ_A`; constants are absorbed by normalization.
pub fn family_dim(spec: &InteractionFamilySpec) -> usize {
    spec.sets
        .iter()
        .filter(|s| !s.is_empty())
        .map(|&s| pure_dim(&spec.space, s))
        .sum()
}

/// Tensor products of centered indicator contrasts `e_j − 1/n_i`
/// (`j < n_i − 1`), spanning `Ĩ_A`. Exact and unnormalized.
pub fn contrast_products(space: &ProductSpace, set: UnitSet) -> Vec<Vec<Rational>> {
    let members = set.to_vec();
    let choices: Vec<usize> = members.iter().map(|&u| space.card(u) - 1).collect();
    let count: usize = choices.iter().product();
    let mut config = vec![0; space.units()];
    let mut out = Vec::with_capacity(count);
    let mut pick = vec![0usize; members.len()];
    for _ in 0..count {
        let values = (0..space.total())
            .map(|k| {
                space.decode_into(k, &mut config);
                members
                    .iter()
                    .zip(&pick)
                    .map(|(&u, &j)| {
                        let n = space.card(u) as i64;
                        let hit = if config[u] == j { 1 } else { 0 };
                        rational::ratio(hit * n - 1, n)
                    })
                    .product::<Rational>()
            })
            .collect();
        out.push(values);
        // odometer over contrast indices, last member fastest
        for pos in (0..pick.len()).rev() {
            pick[pos] += 1;
            if pick[pos] < choices[pos] {
                break;
            }
            pick[pos] = 0;
        }
    }
    out
}

/// An orthonormal basis of `Ĩ_𝐀`, ordered by set (canonical order) and then
/// by contrast index. Each element lies in a single `Ĩ_A`.
pub fn basis_of_family(spec: &InteractionFamilySpec) -> Vec<RealFunction> {
    let mut basis = Vec::with_capacity(family_dim(spec));
    for &set in spec.sets.iter().filter(|s| !s.is_empty()) {
        let start = basis.len();
        for raw in contrast_products(&spec.space, set) {
            let mut v = RealFunction {
                space: spec.space.clone(),
                values: raw.iter().map(rational::to_f64).collect(),
            };
            // two passes of modified Gram-Schmidt; pieces for different
            // sets are orthogonal already
            for _ in 0..2 {
                for b in &basis[start..] {
                    let c = v.dot(b);
                    v.axpy(-c, b);
                }
            }
            let n = v.norm();
            basis.push(v.scaled(1.0 / n));
        }
    }
    basis
}

/// Max-norm of the part of `f` outside `R·1 ⊕ Ĩ_𝐀`.
pub fn family_residual(f: &RealFunction, spec: &InteractionFamilySpec) -> f64 {
    let mut rest = f.map(|x| x - f.mean());
    for &set in spec.sets.iter().filter(|s| !s.is_empty()) {
        rest = rest.sub(&project_onto_pure_ia(f, set));
    }
    rest.max_abs()
}

/// The Gibbs distribution `exp(X)/Σ exp(X)`, computed after subtracting
/// `max X`.
pub fn gibbs(x: &RealFunction) -> Result<Distribution> {
    if x.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "gibbs needs finite energies".into(),
        ));
    }
    let max = x.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = x.values.iter().map(|v| (v - max).exp()).collect();
    let z: f64 = w.iter().sum();
    Distribution::from_floats(x.space.clone(), w.into_iter().map(|v| v / z).collect())
}

fn log_partition(x: &[f64]) -> f64 {
    let max = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    max + x.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

#[derive(Clone, Copy, Debug)]
pub struct ProjectionOptions {
    /// Stop when the moment gap `max |E_p[b] − E_q[b]|` is at most this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions {
            tol: 1e-8,
            max_iter: 10_000,
        }
    }
}

/// Result of an information projection.
#[derive(Clone, Debug)]
pub struct Projection {
    pub q: Distribution,
    pub divergence: Divergence,
    /// Natural parameters with respect to [`basis_of_family`].
    pub theta: Vec<f64>,
    pub iterations: usize,
    /// Final moment gap (max-norm of the log-likelihood gradient).
    pub residual: f64,
}

/// Minimizes `D(p‖q)` over `q ∈ exp(Ĩ_𝐀)` by damped Newton ascent on
/// `Σ p ln q` in natural parameters, with Armijo backtracking.
///
/// Targets on the boundary of the family's closure drive the parameters to
/// infinity; the iteration then stops on the moment gap or reports
/// [`Error::NotConverged`] carrying the best iterate.
pub fn info_projection(
    p: &Distribution,
    spec: &InteractionFamilySpec,
    opts: ProjectionOptions,
) -> Result<Projection> {
    if p.space() != spec.space() {
        return Err(Error::SpaceMismatch {
            left: p.space().cards().to_vec(),
            right: spec.space().cards().to_vec(),
        });
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let basis = basis_of_family(spec);
    let d = basis.len();
    let total = p.len();
    let pv = p.to_f64_vec();
    let b = DMatrix::from_fn(d, total, |i, k| basis[i].values[k]);
    let target = &b * DVector::from_column_slice(&pv);

    let energies = |theta: &DVector<f64>| -> Vec<f64> { (b.tr_mul(theta)).iter().copied().collect() };
    let loglik = |theta: &DVector<f64>, e: &[f64]| theta.dot(&target) - log_partition(e);

    let mut theta = DVector::zeros(d);
    let mut e = energies(&theta);
    let mut ll = loglik(&theta, &e);
    let mut iterations = 0;
    let mut residual;
    let mut stalled = false;

    loop {
        let q = softmax(&e);
        let qv = DVector::from_column_slice(&q);
        let mean = &b * &qv;
        let grad = &target - &mean;
        residual = grad.amax();
        if residual <= opts.tol || iterations >= opts.max_iter || stalled {
            break;
        }
        iterations += 1;

        let weighted = DMatrix::from_fn(d, total, |i, k| b[(i, k)] * q[k]);
        let hess = &weighted * b.transpose() - &mean * mean.transpose();
        let scale = hess.diagonal().amax().max(1e-300);
        let mut ridge = 1e-12 * scale;
        let dir = loop {
            let mut h = hess.clone();
            for i in 0..d {
                h[(i, i)] += ridge;
            }
            match h.cholesky() {
                Some(c) => break c.solve(&grad),
                None => {
                    ridge *= 100.0;
                    if ridge > scale {
                        break grad.clone();
                    }
                }
            }
        };

        let slope = grad.dot(&dir);
        let mut step = 1.0;
        let mut accepted = false;
        while step > 1e-16 {
            let cand = &theta + &dir * step;
            let ce = energies(&cand);
            let cll = loglik(&cand, &ce);
            if cll.is_finite() && cll >= ll + 1e-4 * step * slope {
                theta = cand;
                e = ce;
                ll = cll;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            stalled = true;
        }
    }

    let q = Distribution::from_floats(p.space().clone(), softmax(&e))?;
    let divergence = probspace::kl_divergence(p, &q)?;
    let result = Projection {
        q,
        divergence,
        theta: theta.iter().copied().collect(),
        iterations,
        residual,
    };
    if residual <= opts.tol {
        Ok(result)
    } else {
        Err(Error::NotConverged {
            iterations,
            residual,
            best: Box::new(result),
        })
    }
}

fn softmax(e: &[f64]) -> Vec<f64> {
    let max = e.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = e.iter().map(|v| (v - max).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|v| v / z).collect()
}
