//! Acceptance suite. Prints one PASS/FAIL line per criterion with the
//! measured values and the pinned tolerance and runtime bound, then exits
//! nonzero if any criterion failed.

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multiinfo::approx::{
    dimension_report, make_general_position, pair_sequence_trace, quadratic_family_dim,
    quadratic_family_element, quadratic_generating_set_size, quadratic_trace, PairLift,
};
use multiinfo::interactions::{
    decompose, family_dim, info_projection, pure_dim, InteractionFamilySpec, ProjectionOptions,
    RealFunction,
};
use multiinfo::maximizers::{
    construct_maximizer, enumerate_equal_unit_maximizers, exists_maximizer_exhaustive,
    is_maximizer, n_min, n_min_bounds, SurjectionFamily,
};
use multiinfo::poset::{count_strata_by_dim, cover_graph, enumerate_poset, stratum_dim};
use multiinfo::probspace::{kl_divergence, multi_information, product_of_marginals};
use multiinfo::rational::Rational;
use multiinfo::{Distribution, Error, Exec, ProductSpace, UnitSet};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn space(cards: &[usize]) -> ProductSpace {
    ProductSpace::new(cards.to_vec()).unwrap()
}

/// `Σ ln n_i` over all but one largest cardinality.
fn bound_oracle(cards: &[usize]) -> f64 {
    let mut c = cards.to_vec();
    c.sort_unstable();
    c.pop();
    c.iter().map(|&n| (n as f64).ln()).sum()
}

fn random_distribution(s: &ProductSpace, rng: &mut ChaCha8Rng) -> Distribution {
    // mix of dense, sparse and peaked draws
    let style = rng.random_range(0..3);
    let w: Vec<f64> = (0..s.total())
        .map(|_| match style {
            0 => rng.random_range(0.0..1.0),
            1 => {
                if rng.random_bool(0.3) {
                    rng.random_range(0.0..1.0)
                } else {
                    0.0
                }
            }
            _ => rng.random_range(0.0f64..1.0).powi(8),
        })
        .collect();
    let w = if w.iter().all(|&x| x == 0.0) {
        vec![1.0; s.total()]
    } else {
        w
    };
    Distribution::from_weights(s.clone(), w).unwrap()
}

fn c1_bound_and_attainment() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_attain: f64 = 0.0;
    let mut worst_excess = f64::NEG_INFINITY;
    for cards in [vec![2, 2], vec![2, 3], vec![3, 3, 3], vec![2, 3, 6]] {
        let s = space(&cards);
        let bound = bound_oracle(&cards);
        let p = construct_maximizer(&s).unwrap();
        worst_attain = worst_attain.max((multi_information(&p) - bound).abs());
        for _ in 0..10_000 {
            let q = random_distribution(&s, &mut rng);
            worst_excess = worst_excess.max(multi_information(&q) - bound);
        }
    }
    outcome(
        worst_attain <= TOL && worst_excess <= TOL,
        format!(
            "max |I(constructed) - bound| = {worst_attain:.2e} (tol {TOL:e}); max I - bound over 4x10^4 random = {worst_excess:.2e}"
        ),
    )
}

fn c2_threshold_theorem() -> Outcome {
    let mut cases = Vec::new();
    for a in 2..=5 {
        for hub in a..=8 {
            cases.push(vec![a, hub]);
        }
        for b in a..=5 {
            if a * b > 12 {
                continue;
            }
            for hub in b..=8 {
                cases.push(vec![a, b, hub]);
            }
        }
    }
    let mut mismatches = Vec::new();
    let mut exist = 0;
    for cards in &cases {
        let head = &cards[..cards.len() - 1];
        let expected = cards[cards.len() - 1] >= n_min(head).unwrap();
        let got = exists_maximizer_exhaustive(&space(cards)).unwrap();
        exist += got as usize;
        if got != expected {
            mismatches.push(cards.clone());
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{} tuples ({exist} admit a maximizer); mismatches {mismatches:?}",
            cases.len()
        ),
    )
}

fn c3_nmin_formula() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for len in 1..=4 {
        for tuple in (0..len).map(|_| 2..=8usize).collect::<Vec<_>>().into_iter().fold(
            vec![vec![]],
            |acc: Vec<Vec<usize>>, r| {
                acc.iter()
                    .flat_map(|p| r.clone().map(move |x| [p.clone(), vec![x]].concat()))
                    .collect()
            },
        ) {
            let mut seen = HashSet::new();
            for &n in &tuple {
                for j in 1..=n {
                    let g = j.gcd(&n);
                    seen.insert((j / g, n / g));
                }
            }
            let n = n_min(&tuple).unwrap();
            let b = n_min_bounds(&tuple).unwrap();
            if n != seen.len() || !(b.max <= n && n <= b.coprime.min(b.lcm)) {
                bad.push(tuple.clone());
            }
            checked += 1;
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} ordered tuples; failures {bad:?}"),
    )
}

fn c4_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    for _ in 0..50 {
        let units = rng.random_range(2..=4);
        let mut cards: Vec<usize> = (0..units - 1).map(|_| rng.random_range(2..=6)).collect();
        cards.push(n_min(&cards).unwrap() + rng.random_range(0..=2));
        let r = rng.random_range(0..units);
        cards.rotate_left(r);
        let s = space(&cards);
        let p = construct_maximizer(&s).unwrap();
        let witness_ok = match is_maximizer(&p, 0.0) {
            Some(w) => {
                w.distribution() == p
                    && SurjectionFamily::from_json(s.clone(), &w.to_json(), 0.0)
                        .map(|back| back == w)
                        .unwrap_or(false)
            }
            None => false,
        };
        // raise one cell by 1% of the total mass, then renormalize
        let mut probs: Vec<Rational> = p.rationals().unwrap().to_vec();
        let k = rng.random_range(0..s.total());
        probs[k] += Rational::new(1.into(), 100.into());
        let z: Rational = probs.iter().sum();
        let probs = probs.into_iter().map(|x| x / &z).collect();
        let perturbed = Distribution::from_rationals(s.clone(), probs).unwrap();
        let flipped = is_maximizer(&perturbed, 0.0).is_none();
        if !witness_ok || !flipped {
            failures.push((cards.clone(), witness_ok, flipped));
        }
    }
    outcome(
        failures.is_empty(),
        format!("50 spaces; failures (cards, witness ok, flipped) {failures:?}"),
    )
}

fn c5_two_unit_structure() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let s23 = enumerate_poset(2, 3).unwrap();
    let mut dims = BTreeMap::new();
    for m in &s23 {
        *dims.entry(stratum_dim(m)).or_insert(0u128) += 1;
    }
    let g23 = cover_graph(2, 3).unwrap();
    let hexagon = dims == BTreeMap::from([(0, 6), (1, 6)])
        && s23.len() == 12
        && g23.is_connected()
        && (0..12).all(|i| g23.edges.iter().filter(|e| e.0 == i || e.1 == i).count() == 2);
    ok &= hexagon;
    notes.push(format!("(2,3): |S| = {}, dims {dims:?}, connected {}", s23.len(), g23.is_connected()));

    let disconnected22 = !cover_graph(2, 2).unwrap().is_connected();
    ok &= disconnected22;
    notes.push(format!("(2,2) disconnected {disconnected22}"));

    let mut conn_bad = Vec::new();
    for n2 in 2..=6 {
        for n1 in 2..=n2 {
            if cover_graph(n1, n2).unwrap().is_connected() != (n1 < n2) {
                conn_bad.push((n1, n2));
            }
        }
    }
    ok &= conn_bad.is_empty();
    notes.push(format!("connectivity mismatches {conn_bad:?}"));

    let mut count_bad = Vec::new();
    for n2 in 2..=7 {
        for n1 in 2..=n2 {
            let mut dims = BTreeMap::new();
            for m in enumerate_poset(n1, n2).unwrap() {
                *dims.entry(stratum_dim(&m)).or_insert(0u128) += 1;
            }
            // independent closed form via inclusion-exclusion for surjections
            let formula: BTreeMap<usize, u128> = (n1..=n2)
                .map(|l| {
                    let surj: i128 = (0..=n1)
                        .map(|j| {
                            let sign = if j % 2 == 0 { 1 } else { -1 };
                            sign * choose(n1, j) as i128 * ((n1 - j) as i128).pow(l as u32)
                        })
                        .sum();
                    (l - n1, choose(n2, l) * surj as u128)
                })
                .collect();
            if dims != formula || dims != count_strata_by_dim(n1, n2).unwrap() {
                count_bad.push((n1, n2));
            }
        }
    }
    ok &= count_bad.is_empty();
    notes.push(format!("stratum-count mismatches for n2 <= 7: {count_bad:?}"));
    outcome(ok, notes.join("; "))
}

fn choose(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn c6_equal_unit_census() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, units) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let all = enumerate_equal_unit_maximizers(n, units, 10_000).unwrap();
        let fact: usize = (1..=n).product();
        let expected = fact.pow(units as u32 - 1);
        let distinct: HashSet<Vec<usize>> = all.iter().map(|p| p.support()).collect();
        let target = (units - 1) as f64 * (n as f64).ln();
        let shape_ok = all.iter().all(|p| {
            p.support().len() == n
                && (multi_information(p) - target).abs() <= TOL
                && is_maximizer(p, 0.0).is_some()
        });
        let case_ok = all.len() == expected && distinct.len() == expected && shape_ok;
        ok &= case_ok;
        notes.push(format!("({n},{units}): {} of {expected}", all.len()));
    }
    outcome(ok, notes.join(", "))
}

fn seeded_function(s: &ProductSpace, rng: &mut ChaCha8Rng) -> RealFunction {
    let values = (0..s.total()).map(|_| rng.random_range(-1.0..1.0)).collect();
    RealFunction::new(s.clone(), values).unwrap()
}

/// `Π_A f` by direct averaging over the configurations that agree on `A`.
fn average_oracle(f: &RealFunction, set: UnitSet) -> Vec<f64> {
    let s = f.space();
    (0..s.total())
        .map(|k| {
            let ck = s.decode(k);
            let (sum, count) = (0..s.total())
                .filter(|&j| {
                    let cj = s.decode(j);
                    set.iter().all(|u| cj[u] == ck[u])
                })
                .fold((0.0, 0usize), |(acc, c), j| (acc + f.values()[j], c + 1));
            sum / count as f64
        })
        .collect()
}

fn c7_interaction_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut recon, mut ortho, mut mobius): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut dims_ok = true;
    for cards in [vec![2, 2, 2], vec![2, 3, 4]] {
        let s = space(&cards);
        let full = UnitSet::full(s.units());
        dims_ok &= full.subsets().map(|a| pure_dim(&s, a)).sum::<usize>() == s.total();
        for _ in 0..20 {
            let f = seeded_function(&s, &mut rng);
            let parts = decompose(&f);
            let mut sum = RealFunction::zeros(s.clone());
            for (_, g) in &parts {
                sum = sum.add(g);
            }
            recon = recon.max(sum.sub(&f).max_abs());
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    ortho = ortho.max(parts[i].1.dot(&parts[j].1).abs());
                }
            }
            for a in full.subsets() {
                let direct = average_oracle(&f, a);
                let mut via = vec![0.0; s.total()];
                for (b, g) in &parts {
                    if b.is_subset_of(a) {
                        for (v, x) in via.iter_mut().zip(g.values()) {
                            *v += x;
                        }
                    }
                }
                let err = direct.iter().zip(&via).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                mobius = mobius.max(err);
            }
        }
    }
    outcome(
        recon <= 1e-12 && ortho <= 1e-10 && mobius <= 1e-10 && dims_ok,
        format!(
            "reconstruction {recon:.1e} (tol 1e-12), orthogonality {ortho:.1e} (tol 1e-10), Möbius {mobius:.1e} (tol 1e-10), dimension sums exact {dims_ok}"
        ),
    )
}

fn c8_pair_sufficiency(notes_out: &mut Vec<String>) -> Outcome {
    const KL_TOL: f64 = 1e-3;
    const PROJ_TOL: f64 = 1e-2;
    let schedule: Vec<usize> = (0..=7).map(|k| 1 << k).collect();
    let mut ok = true;
    let mut notes = Vec::new();
    for cards in [vec![2, 2], vec![2, 3, 6], vec![3, 3, 3]] {
        let s = space(&cards);
        let p = construct_maximizer(&s).unwrap();
        let trace = pair_sequence_trace(&p, &schedule, PairLift::Exposed, false, Exec::default()).unwrap();
        let reached = trace
            .schedule
            .iter()
            .zip(&trace.kl)
            .find(|(_, &k)| k < KL_TOL)
            .map(|(m, _)| *m as usize);
        let max_res = trace.residual.iter().cloned().fold(0.0, f64::max);
        let spec = InteractionFamilySpec::default_star(s.clone());
        let proj = match info_projection(&p, &spec, ProjectionOptions::default()) {
            Ok(r) => r,
            Err(Error::NotConverged { best, .. }) => *best,
            Err(e) => panic!("{e}"),
        };
        let d = proj.divergence.to_f64();
        ok &= reached.is_some() && max_res <= 1e-9 && d < PROJ_TOL;
        notes.push(format!(
            "{cards:?}: KL<{KL_TOL:e} at m={reached:?}, final KL {:.1e}, residual {max_res:.1e}, projection D {d:.1e}",
            trace.last_kl().unwrap()
        ));
        // the literal orthogonal projection, reported for comparison only
        let literal = pair_sequence_trace(&p, &schedule, PairLift::Orthogonal, false, Exec::default()).unwrap();
        notes_out.push(format!(
            "literal projection lift on {cards:?}: KL at m=128 is {:.3e}",
            literal.last_kl().unwrap()
        ));
    }
    let mut dims_bad = Vec::new();
    for cards in [
        vec![2, 2],
        vec![2, 2, 2, 2, 2],
        vec![3, 3, 3],
        vec![4, 4, 4, 4],
        vec![2, 3, 6],
        vec![5, 2, 3],
        vec![2, 4, 3, 7],
    ] {
        let s = space(&cards);
        let hub = s.hub();
        let sum: usize = (0..s.units()).filter(|&u| u != hub).map(|u| s.card(u) - 1).sum();
        let formula = (s.card(hub) - 1) * sum;
        let dim = family_dim(&InteractionFamilySpec::default_star(s.clone()));
        let n = cards[0];
        let special = if cards.iter().all(|&c| c == 2) {
            dim == cards.len() - 1
        } else if cards.iter().all(|&c| c == n) {
            dim == (cards.len() - 1) * (n - 1) * (n - 1)
        } else {
            true
        };
        if dim != formula || !special || dimension_report(&s).star != formula {
            dims_bad.push(cards.clone());
        }
    }
    ok &= dims_bad.is_empty();
    notes.push(format!("dim F* mismatches {dims_bad:?}"));
    outcome(ok, notes.join("; "))
}

fn c9_quadratic_family() -> Outcome {
    const KL_TOL: f64 = 1e-2;
    let beta = 2f64.powi(20);
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [2usize, 3] {
        let s = space(&[n, n]);
        let targets = enumerate_equal_unit_maximizers(n, 2, 100).unwrap();
        let phi = make_general_position(&s, 0, 16).unwrap();
        let mut worst: f64 = 0.0;
        let mut monotone = true;
        for p in &targets {
            let q = quadratic_family_element(p, &phi, beta).unwrap();
            worst = worst.max(kl_divergence(p, &q).unwrap().to_f64());
            let t = quadratic_trace(p, &phi, &multiinfo::approx::doubling_betas(20), Exec::default()).unwrap();
            monotone &= t.kl.windows(2).all(|w| w[1] <= w[0] + 1e-15);
        }
        let size = quadratic_generating_set_size(n);
        let dim = quadratic_family_dim(&phi);
        ok &= worst < KL_TOL && size == (n * n + 3 * n) / 2 && dim <= size && monotone;
        notes.push(format!(
            "{n}x{n}: {} targets, max KL {worst:.1e} at beta=2^20 (tol {KL_TOL:e}), generators {size}, rank {dim}, monotone {monotone}",
            targets.len()
        ));
    }
    outcome(ok, notes.join("; "))
}

fn c10_projection_sanity() -> Outcome {
    const TOL: f64 = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let s = space(&[2, 3]);
    let spec = InteractionFamilySpec::order(s.clone(), 1);
    let (mut dq, mut dd): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let w: Vec<f64> = (0..s.total()).map(|_| rng.random_range(0.01..1.0)).collect();
        let p = Distribution::from_weights(s.clone(), w).unwrap();
        let r = info_projection(&p, &spec, ProjectionOptions::default()).unwrap();
        let prod = product_of_marginals(&p);
        for k in 0..p.len() {
            dq = dq.max((r.q.value(k) - prod.value(k)).abs());
        }
        dd = dd.max((r.divergence.to_f64() - multi_information(&p)).abs());
    }
    outcome(
        dq <= TOL && dd <= TOL,
        format!("100 draws: max |q - product| = {dq:.1e}, max |D - I| = {dd:.1e} (tol {TOL:e})"),
    )
}

type Criterion<'a> = (&'static str, u64, Box<dyn FnMut() -> Outcome + 'a>);

fn main() -> ExitCode {
    let mut notes = Vec::new();
    let mut c8 = || c8_pair_sufficiency(&mut notes);
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 bound and attainment", 10, Box::new(c1_bound_and_attainment)),
        ("2 threshold theorem", 60, Box::new(c2_threshold_theorem)),
        ("3 n_min formula", 5, Box::new(c3_nmin_formula)),
        ("4 characterization round trip", 10, Box::new(c4_round_trip)),
        ("5 two-unit structure", 30, Box::new(c5_two_unit_structure)),
        ("6 equal-unit census", 10, Box::new(c6_equal_unit_census)),
        ("7 interaction algebra", 5, Box::new(c7_interaction_algebra)),
        ("8 pair-interaction sufficiency", 60, Box::new(&mut c8)),
        ("9 quadratic family", 10, Box::new(c9_quadratic_family)),
        ("10 projection sanity", 30, Box::new(c10_projection_sanity)),
    ];
    let mut failed = 0;
    for (name, limit, mut run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = out.ok && in_time;
        failed += !pass as usize;
        println!(
            "acceptance {name}: {} [{:.2}s, limit {limit}s] {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    for n in &notes {
        println!("note: {n}");
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
