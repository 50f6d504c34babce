//! Approximating global maximizers inside low-dimensional exponential
//! families.
//!
//! Two constructions:
//! - the pure pair-interaction sequence `q^(m)` in the star family through
//!   the hub unit;
//! - the quadratic-energy family `exp(−β (a·φ − b)²)` for equal units,
//!   where `φ` puts the configurations in general position.
//!
//! Also a heuristic mirror-ascent search for local maximizers of the
//! multi-information, and a dimension report.

use std::fmt::Write as _;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::interactions::{
    contrast_products, family_dim, family_residual, gibbs, project_onto_pure_ia,
    InteractionFamilySpec, RealFunction,
};
use crate::lp::{LinearSystem, VarKind};
use crate::maximizers::{is_maximizer, SurjectionFamily};
use crate::probspace::{
    kl_divergence, multi_information, unit_marginal, upper_bound, Distribution, ProductSpace,
};
use crate::rational::{self, Rational};

/// Support threshold used when a float target is checked for maximality.
pub const MAXIMIZER_TOL: f64 = 1e-9;

/// How `f^(m)` is lifted into the star family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairLift {
    /// Orthogonal projection of
    /// `f^(m)(ω) = Π_i δ_{ω_i, π_i(ω_hub)} · (m + ln(p_hub(ω_hub) + 1/m)) / (N − 1)`
    /// onto `⊕_i Ĩ_{i,hub}`. The discarded components grow with `m`, so this
    /// can fail to converge once a hub state is shared by several labels.
    Orthogonal,
    /// `m·g + h_m`, where `g ∈ ⊕_i Ĩ_{i,hub}` vanishes on `supp p` and is
    /// `≤ −1` elsewhere, and `h_m` interpolates `ln(p_hub(ω_hub) + 1/m)` on
    /// `supp p`. On-support ratios equal `(p_hub(ω_hub)+1/m)/(p_hub(ω'_hub)+1/m)`
    /// and off-support mass decays like `e^{−m}`.
    #[default]
    Exposed,
}

/// One term of the pair sequence.
#[derive(Clone, Debug)]
pub struct PairElement {
    pub m: usize,
    pub q: Distribution,
    /// Max-norm of the part of `ln q` outside the star family.
    pub family_residual: f64,
    /// Max-norm of what the lift could not carry: the discarded components
    /// for [`PairLift::Orthogonal`], the on-support interpolation error for
    /// [`PairLift::Exposed`].
    pub lift_error: f64,
}

/// Precomputed data for evaluating `q^(m)` at many `m`.
#[derive(Clone, Debug)]
pub struct PairSequence {
    target: Distribution,
    witness: SurjectionFamily,
    spec: InteractionFamilySpec,
    lift: PairLift,
    exposed: Option<ExposedLift>,
}

#[derive(Clone, Debug)]
struct ExposedLift {
    /// `g`, zero on the support and `≤ −1` off it.
    direction: Vec<f64>,
    support: Vec<usize>,
    /// Columns of the spanning set restricted to the support, plus a
    /// constant column; pseudo-inverse for the interpolation.
    columns: DMatrix<f64>,
    pinv: DMatrix<f64>,
}

impl PairSequence {
    pub fn new(p: &Distribution, lift: PairLift) -> Result<Self> {
        let witness = is_maximizer(p, MAXIMIZER_TOL).ok_or(Error::NotMaximizer)?;
        let space = p.space().clone();
        let spec = InteractionFamilySpec::star(space, witness.hub())?;
        let exposed = match lift {
            PairLift::Orthogonal => None,
            PairLift::Exposed => Some(ExposedLift::new(p, &spec)?),
        };
        Ok(PairSequence {
            target: p.clone(),
            witness,
            spec,
            lift,
            exposed,
        })
    }

    pub fn witness(&self) -> &SurjectionFamily {
        &self.witness
    }

    pub fn family(&self) -> &InteractionFamilySpec {
        &self.spec
    }

    pub fn lift(&self) -> PairLift {
        self.lift
    }

    fn hub_mass(&self, h: usize) -> f64 {
        self.witness.base().value(h)
    }

    /// The unprojected `f^(m)`.
    pub fn raw_function(&self, m: usize) -> RealFunction {
        let space = self.target.space().clone();
        let hub = self.witness.hub();
        let others: Vec<usize> = self.witness.others().collect();
        let scale = 1.0 / (space.units() - 1) as f64;
        let mf = m as f64;
        RealFunction::from_fn(space, |config| {
            let h = config[hub];
            let on_graph = others
                .iter()
                .zip(self.witness.maps())
                .all(|(&u, map)| config[u] == map[h]);
            if on_graph {
                (mf + (self.hub_mass(h) + 1.0 / mf).ln()) * scale
            } else {
                0.0
            }
        })
    }

    pub fn element(&self, m: usize) -> Result<PairElement> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let (energy, lift_error) = match &self.exposed {
            None => {
                let f = self.raw_function(m);
                let mut lifted = RealFunction::zeros(f.space().clone());
                for &set in self.spec.sets() {
                    lifted = lifted.add(&project_onto_pure_ia(&f, set));
                }
                let discarded = f.map(|x| x - f.mean()).sub(&lifted).max_abs();
                (lifted, discarded)
            }
            Some(ex) => {
                let hub = self.witness.hub();
                let space = self.target.space();
                let target: Vec<f64> = ex
                    .support
                    .iter()
                    .map(|&k| (self.hub_mass(space.coord(k, hub)) + 1.0 / m as f64).ln())
                    .collect();
                let target = DVector::from_vec(target);
                let coef = &ex.pinv * &target;
                let fitted = &ex.columns * &coef;
                let err = (&fitted - &target).amax();
                let interp = self.span_function(&coef);
                let values: Vec<f64> = ex
                    .direction
                    .iter()
                    .zip(interp.values())
                    .map(|(g, h)| m as f64 * g + h)
                    .collect();
                (RealFunction::new(space.clone(), values)?, err)
            }
        };
        Ok(PairElement {
            m,
            q: gibbs(&energy)?,
            family_residual: family_residual(&energy, &self.spec),
            lift_error,
        })
    }

    /// `Σ_d coef_d c_d` over the spanning set (constant column last).
    fn span_function(&self, coef: &DVector<f64>) -> RealFunction {
        let space = self.target.space().clone();
        let mut values = vec![coef[coef.len() - 1]; space.total()];
        let mut d = 0;
        for &set in self.spec.sets() {
            for c in contrast_products(&space, set) {
                for (v, x) in values.iter_mut().zip(&c) {
                    *v += coef[d] * rational::to_f64(x);
                }
                d += 1;
            }
        }
        RealFunction::new(space, values).expect("length matches")
    }
}

impl ExposedLift {
    fn new(p: &Distribution, spec: &InteractionFamilySpec) -> Result<Self> {
        let space = p.space();
        let spanning: Vec<Vec<Rational>> = spec
            .sets()
            .iter()
            .flat_map(|&s| contrast_products(space, s))
            .collect();
        let dim = spanning.len();
        let support = p.support();

        // unknowns: one coefficient per spanning function, then a constant
        let mut sys = LinearSystem::new(vec![VarKind::Free; dim + 1]);
        for k in 0..space.total() {
            let mut row: Vec<Rational> = spanning.iter().map(|c| c[k].clone()).collect();
            row.push(rational::one());
            if support.binary_search(&k).is_ok() {
                sys.add_eq(row, rational::zero());
            } else {
                sys.add_le(row, rational::int(-1));
            }
        }
        let coef = sys.feasible_point().ok_or_else(|| {
            Error::NotInClosure(format!(
                "no star-family direction separates the {} support points",
                support.len()
            ))
        })?;
        let direction: Vec<f64> = (0..space.total())
            .map(|k| {
                let v: Rational = spanning
                    .iter()
                    .zip(&coef)
                    .map(|(c, x)| &c[k] * x)
                    .sum::<Rational>()
                    + &coef[dim];
                rational::to_f64(&v)
            })
            .collect();

        let columns = DMatrix::from_fn(support.len(), dim + 1, |r, d| {
            if d == dim {
                1.0
            } else {
                rational::to_f64(&spanning[d][support[r]])
            }
        });
        let pinv = columns
            .clone()
            .pseudo_inverse(1e-12)
            .map_err(|e| Error::Degenerate(e.to_string()))?;
        Ok(ExposedLift {
            direction,
            support,
            columns,
            pinv,
        })
    }
}

/// `q^(m)` with the default lift.
pub fn pair_sequence_element(p: &Distribution, m: usize) -> Result<Distribution> {
    Ok(PairSequence::new(p, PairLift::default())?.element(m)?.q)
}

/// KL values along an approximation schedule.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ApproxTrace {
    /// `m` for the pair sequence, `β` for the quadratic family.
    pub schedule: Vec<f64>,
    pub kl: Vec<f64>,
    pub residual: Vec<f64>,
    #[serde(skip)]
    pub iterates: Option<Vec<Distribution>>,
}

impl ApproxTrace {
    pub fn last_kl(&self) -> Option<f64> {
        self.kl.last().copied()
    }

    /// Columns `m_or_beta,kl,projection_residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m_or_beta,kl,projection_residual\n");
        for ((s, k), r) in self.schedule.iter().zip(&self.kl).zip(&self.residual) {
            writeln!(out, "{s},{k:e},{r:e}").expect("write to string");
        }
        out
    }

    fn check(self, threshold: f64) -> Result<ApproxTrace> {
        let last = self.last_kl().unwrap_or(f64::INFINITY);
        if last < threshold {
            Ok(self)
        } else {
            Err(Error::ThresholdNotReached {
                threshold,
                last,
                trace: Box::new(self),
            })
        }
    }
}

fn check_schedule<T: PartialOrd + Copy>(schedule: &[T], positive: impl Fn(T) -> bool) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidArgument("empty schedule".into()));
    }
    if !schedule.iter().all(|&x| positive(x)) || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "schedule must be positive and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Evaluates `D(p‖q^(m))` along `schedule` with the default lift and fails
/// with the trace if the last value is not below `threshold`.
pub fn pair_sequence_converges(
    p: &Distribution,
    schedule: &[usize],
    threshold: f64,
) -> Result<ApproxTrace> {
    pair_sequence_trace(p, schedule, PairLift::default(), false, Exec::default())?.check(threshold)
}

/// The pair-sequence trace without a threshold check.
pub fn pair_sequence_trace(
    p: &Distribution,
    schedule: &[usize],
    lift: PairLift,
    keep_iterates: bool,
    exec: Exec,
) -> Result<ApproxTrace> {
    check_schedule(schedule, |m| m >= 1)?;
    let seq = PairSequence::new(p, lift)?;
    let elements = exec
        .map_slice(schedule, |&m| seq.element(m))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut trace = ApproxTrace::default();
    for e in &elements {
        trace.schedule.push(e.m as f64);
        trace.kl.push(kl_divergence(p, &e.q)?.to_f64());
        trace.residual.push(e.family_residual);
    }
    if keep_iterates {
        trace.iterates = Some(elements.into_iter().map(|e| e.q).collect());
    }
    Ok(trace)
}

/// `φ : Ω_V → R^n` on an equal-unit space with `n` states per unit.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralPositionMap {
    space: ProductSpace,
    points: Vec<Vec<f64>>,
    seed: u64,
}

/// Subsets tested exhaustively by [`make_general_position`]; above this the
/// check happens per support when the hyperplane is solved.
pub const GENERAL_POSITION_CHECK_LIMIT: u128 = 2_000_000;
const AFFINE_TOL: f64 = 1e-9;

fn equal_card(space: &ProductSpace) -> Result<usize> {
    let n = space.card(0);
    if space.cards().iter().any(|&c| c != n) {
        return Err(Error::InvalidArgument(format!(
            "the quadratic family needs equal cardinalities, got {space}"
        )));
    }
    Ok(n)
}

impl GeneralPositionMap {
    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.space.card(0)
    }

    /// Whether every `min(n+1, |Ω|)`-subset of the points is affinely
    /// independent, hence every smaller subset too.
    pub fn is_general_position(&self) -> bool {
        let k = (self.dim() + 1).min(self.points.len());
        (0..self.points.len())
            .combinations(k)
            .all(|idx| affinely_independent(&idx.iter().map(|&i| &self.points[i][..]).collect::<Vec<_>>()))
    }

    /// `{φ_i} ∪ {φ_i φ_j : i ≤ j}`, the energies spanning the family.
    pub fn quadratic_generators(&self) -> Vec<RealFunction> {
        let n = self.dim();
        let coord = |i: usize| -> Vec<f64> { self.points.iter().map(|x| x[i]).collect() };
        let mut out = Vec::with_capacity(quadratic_generating_set_size(n));
        for i in 0..n {
            out.push(RealFunction::new(self.space.clone(), coord(i)).expect("length"));
        }
        for i in 0..n {
            for j in i..n {
                let v = self.points.iter().map(|x| x[i] * x[j]).collect();
                out.push(RealFunction::new(self.space.clone(), v).expect("length"));
            }
        }
        out
    }
}

fn affinely_independent(points: &[&[f64]]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let d = points[0].len();
    let diffs = DMatrix::from_fn(points.len() - 1, d, |r, c| points[r + 1][c] - points[0][c]);
    diffs.rank(AFFINE_TOL) == points.len() - 1
}

/// Random points in `[−1, 1]^n`, reseeded until in general position.
pub fn make_general_position(
    space: &ProductSpace,
    seed: u64,
    max_retries: usize,
) -> Result<GeneralPositionMap> {
    let n = equal_card(space)?;
    let k = (n + 1).min(space.total());
    let subsets = crate::poset::binomial(space.total(), k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..=max_retries {
        let points: Vec<Vec<f64>> = (0..space.total())
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let map = GeneralPositionMap {
            space: space.clone(),
            points,
            seed,
        };
        if subsets > GENERAL_POSITION_CHECK_LIMIT || map.is_general_position() {
            return Ok(map);
        }
    }
    Err(Error::Degenerate(format!(
        "no general-position map after {} draws from seed {seed}",
        max_retries + 1
    )))
}

/// A unit-norm `(a, b)` with `a·φ(ω) = b` exactly on `support`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
    /// `max |a·φ − b|` over the support.
    pub on_support: f64,
    /// `min |a·φ − b|` off the support.
    pub margin: f64,
}

pub const ON_SUPPORT_TOL: f64 = 1e-10;
pub const OFF_SUPPORT_MARGIN: f64 = 1e-6;

impl Hyperplane {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.normal.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() - self.offset
    }
}

/// The hyperplane through `φ(support)`, from the null vector of the rows
/// `[φ(s), −1]`.
pub fn support_hyperplane(phi: &GeneralPositionMap, support: &[usize]) -> Result<Hyperplane> {
    let n = phi.dim();
    if support.len() != n {
        return Err(Error::InvalidArgument(format!(
            "the hyperplane needs exactly {n} support points, got {}",
            support.len()
        )));
    }
    // square up with a zero row so the SVD returns a full V
    let m = DMatrix::from_fn(n + 1, n + 1, |r, c| {
        if r == n {
            0.0
        } else if c == n {
            -1.0
        } else {
            phi.points[support[r]][c]
        }
    });
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smallest = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    let v: Vec<f64> = vt.row(smallest).iter().copied().collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut plane = Hyperplane {
        normal: v[..n].iter().map(|x| x / norm).collect(),
        offset: v[n] / norm,
        on_support: 0.0,
        margin: f64::INFINITY,
    };
    for (k, x) in phi.points.iter().enumerate() {
        let r = plane.eval(x).abs();
        if support.contains(&k) {
            plane.on_support = plane.on_support.max(r);
        } else {
            plane.margin = plane.margin.min(r);
        }
    }
    if plane.on_support > ON_SUPPORT_TOL || plane.margin < OFF_SUPPORT_MARGIN {
        return Err(Error::Degenerate(format!(
            "hyperplane carves the support badly (on-support {:.1e}, margin {:.1e}); reseed φ",
            plane.on_support, plane.margin
        )));
    }
    Ok(plane)
}

/// `gibbs(−β (a·φ − b)²)` for the hyperplane through `φ(supp p)`.
pub fn quadratic_family_element(
    p: &Distribution,
    phi: &GeneralPositionMap,
    beta: f64,
) -> Result<Distribution> {
    let plane = quadratic_target_plane(p, phi)?;
    quadratic_with_plane(phi, &plane, beta)
}

fn quadratic_target_plane(p: &Distribution, phi: &GeneralPositionMap) -> Result<Hyperplane> {
    if p.space() != phi.space() {
        return Err(Error::SpaceMismatch {
            left: p.space().cards().to_vec(),
            right: phi.space().cards().to_vec(),
        });
    }
    support_hyperplane(phi, &p.support())
}

fn quadratic_with_plane(phi: &GeneralPositionMap, plane: &Hyperplane, beta: f64) -> Result<Distribution> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidArgument(format!("beta must be finite and ≥ 0, got {beta}")));
    }
    let values = phi
        .points
        .iter()
        .map(|x| {
            let r = plane.eval(x);
            -beta * r * r
        })
        .collect();
    gibbs(&RealFunction::new(phi.space.clone(), values)?)
}

/// KL trace of the quadratic family along increasing `betas`.
pub fn quadratic_trace(
    p: &Distribution,
    phi: &GeneralPositionMap,
    betas: &[f64],
    exec: Exec,
) -> Result<ApproxTrace> {
    check_schedule(betas, |b| b >= 0.0 && b.is_finite())?;
    let plane = quadratic_target_plane(p, phi)?;
    let qs = exec
        .map_slice(betas, |&b| quadratic_with_plane(phi, &plane, b))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut trace = ApproxTrace::default();
    for (&b, q) in betas.iter().zip(&qs) {
        trace.schedule.push(b);
        trace.kl.push(kl_divergence(p, q)?.to_f64());
        trace.residual.push(plane.on_support);
    }
    Ok(trace)
}

/// `β_k = 2^k` for `k = 0..=max_exp`.
pub fn doubling_betas(max_exp: u32) -> Vec<f64> {
    (0..=max_exp.min(1000)).map(|k| 2f64.powi(k as i32)).collect()
}

/// `(n² + 3n) / 2`.
pub fn quadratic_generating_set_size(n: usize) -> usize {
    (n * n + 3 * n) / 2
}

/// Dimension of the quadratic family: the rank of its generators modulo
/// constants.
pub fn quadratic_family_dim(phi: &GeneralPositionMap) -> usize {
    let gens = phi.quadratic_generators();
    let total = phi.space.total();
    let m = DMatrix::from_fn(total, gens.len(), |k, j| {
        let g = &gens[j];
        g.values()[k] - g.mean()
    });
    m.rank(1e-9)
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub iters: usize,
    pub restarts: usize,
    pub step: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            iters: 2000,
            restarts: 20,
            step: 0.1,
        }
    }
}

/// Entries of `ln p` are clamped here so the iteration stays finite.
const LOG_FLOOR: f64 = -700.0;

/// `ln p(ω) − Σ_i ln p_i(ω_i)`, the gradient of the multi-information up to
/// an additive constant. Entries with `p(ω) = 0` use a floor of `e^{−700}`.
pub fn mi_gradient(p: &Distribution) -> RealFunction {
    let space = p.space().clone();
    let marginals: Vec<Vec<f64>> = (0..space.units()).map(|i| unit_marginal(p, i)).collect();
    let pv = p.to_f64_vec();
    let mut config = vec![0; space.units()];
    let values = (0..space.total())
        .map(|k| {
            space.decode_into(k, &mut config);
            let lp = pv[k].ln().max(LOG_FLOOR);
            let lm: f64 = config
                .iter()
                .zip(&marginals)
                .map(|(&c, m)| m[c].ln().max(LOG_FLOOR))
                .sum();
            lp - lm
        })
        .collect();
    RealFunction::new(space, values).expect("length")
}

/// Mirror ascent of the multi-information from `start`:
/// `p ← p · exp(η ∇I) / Z`.
pub fn search_from(start: &Distribution, opts: SearchOptions) -> (Distribution, f64) {
    let space = start.space().clone();
    let mut logp: Vec<f64> = start.to_f64_vec().iter().map(|x| x.ln().max(LOG_FLOOR)).collect();
    let mut p = start.to_float();
    let mut value = multi_information(&p);
    for _ in 0..opts.iters {
        let grad = mi_gradient(&p);
        let cand: Vec<f64> = logp
            .iter()
            .zip(grad.values())
            .map(|(l, g)| l + opts.step * g)
            .collect();
        let q = gibbs(&RealFunction::new(space.clone(), cand).expect("length"))
            .expect("finite energies");
        let qv = multi_information(&q);
        let moved = q
            .to_f64_vec()
            .iter()
            .zip(p.to_f64_vec())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        logp = q.to_f64_vec().iter().map(|x| x.ln().max(LOG_FLOOR)).collect();
        p = q;
        value = qv;
        if moved < 1e-15 {
            break;
        }
    }
    let bound = upper_bound(&space);
    assert!(
        value <= bound + 1e-9,
        "multi-information {value} exceeds the bound {bound}"
    );
    (p, value)
}

/// Best of `opts.restarts` mirror-ascent runs from random starting points.
pub fn search_local_maximizer(
    space: &ProductSpace,
    seed: u64,
    opts: SearchOptions,
) -> (Distribution, f64) {
    search_local_maximizer_with(space, seed, opts, Exec::default())
}

pub fn search_local_maximizer_with(
    space: &ProductSpace,
    seed: u64,
    opts: SearchOptions,
    exec: Exec,
) -> (Distribution, f64) {
    let runs = exec.map(opts.restarts.max(1), |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let w: Vec<f64> = (0..space.total()).map(|_| rng.random_range(0.05..1.0)).collect();
        let start = Distribution::from_weights(space.clone(), w).expect("positive weights");
        search_from(&start, opts)
    });
    runs.into_iter()
        .reduce(|best, run| if run.1 > best.1 { run } else { best })
        .expect("at least one restart")
}

/// Dimension bookkeeping for a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub cards: Vec<usize>,
    /// `|Ω| − 1`, the dimension of the open simplex.
    pub simplex: usize,
    pub hub: usize,
    /// Dimension of the star family, computed from the pure spaces.
    pub star: usize,
    /// `(n_hub − 1) Σ_{i≠hub} (n_i − 1)`.
    pub star_formula: usize,
    /// `3 Σ (n_i − 1) + 2`, over the non-hub units.
    pub general_bound: usize,
    /// `(n² + 3n) / 2` for equal units.
    pub quadratic_bound: Option<usize>,
}

pub fn dimension_report(space: &ProductSpace) -> DimensionReport {
    let hub = space.hub();
    let head: usize = (0..space.units())
        .filter(|&u| u != hub)
        .map(|u| space.card(u) - 1)
        .sum();
    let star = family_dim(&InteractionFamilySpec::default_star(space.clone()));
    let quadratic_bound = equal_card(space).ok().map(quadratic_generating_set_size);
    DimensionReport {
        cards: space.cards().to_vec(),
        simplex: space.total() - 1,
        hub: hub + 1,
        star,
        star_formula: (space.card(hub) - 1) * head,
        general_bound: 3 * head + 2,
        quadratic_bound,
    }
}
