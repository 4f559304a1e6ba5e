//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eccn_core::bounds::{
    op_count_multi, param_count_multi, sample_complexity_multi, sample_complexity_single,
    BoundReport, RnnShape, LOG2_8E,
};
use eccn_core::eccn::{exact_eccn, kellerman_cover, maximal_cliques, verify_cover};
use eccn_core::harness::{
    bounds_output, generate_dataset, kellerman_predictions, run_cell, split_samples,
    BoundsRequest, CellSpec, ExperimentManifest, Scenario,
};
use eccn_core::learn::{gradient, majority_vote_baseline, mse, ModelKind, TrainConfig};
use eccn_core::rnn::{
    forward_multi, init_ffn, init_multi, init_single, Constrained, Mode, Model, MultiLayerRnnParams,
    Network, ParamBlocks, SingleLayerRnnParams,
};
use eccn_core::{er_generate, Graph};

use common::{all_cliques_eccn, finite_difference_check, figure_left, k8_minus_matching, Counter};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(t: Duration, limit_s: f64) -> bool {
    t.as_secs_f64() < limit_s
}

/// Break-even percentage printed by the bounds pipeline, to three
/// significant figures.
fn breakeven_percent(n: usize) -> String {
    let csv = bounds_output(&BoundsRequest::Graph { n, d: 1 }, 0.1, 0.1, true).unwrap();
    let ratio: f64 = csv.lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    format!("{:.2e}", 100.0 * ratio)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let n10 = breakeven_percent(10);
    let n11 = breakeven_percent(11);
    let t = start.elapsed();
    let ok10 = n10 == "5.82e0";
    let ok11 = n11 == "9.63e-4";
    outcome(
        ok10 && ok11 && within(t, 1.0),
        format!(
            "n=10: {n10} % (want 5.82e0) {}; n=11: {n11} % (want 0.963e-3 = 9.63e-4) {}; {:.3}s",
            if ok10 { "ok" } else { "MISMATCH" },
            if ok11 { "ok" } else { "MISMATCH" },
            t.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let left = exact_eccn(&figure_left(), None).eccn();
    let t_left = start.elapsed();
    let start = Instant::now();
    let die = k8_minus_matching();
    let right = exact_eccn(&die, None).eccn();
    let cliques = maximal_cliques(&die).len();
    let t_right = start.elapsed();
    outcome(
        left == Some(3) && right == Some(5) && cliques == 16 && within(t_left, 1.0) && within(t_right, 1.0),
        format!(
            "left ECCN {left:?}, K8 minus matching ECCN {right:?} with {cliques} maximal cliques; {:.3}s / {:.3}s",
            t_left.as_secs_f64(),
            t_right.as_secs_f64()
        ),
    )
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut checked = 0;
    for n in 1..=5usize {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            checked += 1;
            if exact_eccn(&g, None).eccn() != Some(all_cliques_eccn(&g)) {
                mismatches += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.random_range(6..=7);
        let p = rng.random_range(0.1..0.9);
        let g = er_generate(n, p, rng.random()).unwrap();
        checked += 1;
        if exact_eccn(&g, None).eccn() != Some(all_cliques_eccn(&g)) {
            mismatches += 1;
        }
    }
    let t = start.elapsed();
    outcome(
        mismatches == 0 && within(t, 300.0),
        format!("{mismatches} mismatches over {checked} graphs (all 1024 on 5 vertices); {:.1}s", t.as_secs_f64()),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut invalid, mut below, mut compared) = (0, 0, 0);
    for i in 0..1000 {
        let n = rng.random_range(1..=12);
        let p = [0.1, 0.5, 0.9][i % 3];
        let g = er_generate(n, p, rng.random()).unwrap();
        let k = kellerman_cover(&g);
        if !verify_cover(&g, &k).is_valid() {
            invalid += 1;
        }
        if n <= 9 {
            compared += 1;
            if k.size() < exact_eccn(&g, None).eccn().unwrap() {
                below += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        invalid == 0 && below == 0 && within(t, 300.0),
        format!(
            "{invalid} invalid covers of 1000; {below} below exact of {compared} compared; {:.1}s",
            t.as_secs_f64()
        ),
    )
}

fn composed_bound(params: u128, ops: u128, eps: f64, delta: f64) -> f64 {
    let pdim = 2.0 * (params as f64 + 2.0) * (2.0 * ops as f64 + LOG2_8E);
    128.0 / (eps * eps) * (2.0 * pdim * (34.0 / eps).ln() + (16.0 / delta).ln())
}

fn instrumented_ops(widths: &[usize], b: usize, rng: &mut ChaCha8Rng) -> (u128, f64, f64) {
    let p = init_multi(widths, rng.random(), Mode::Unconstrained);
    let x: Vec<f64> = (0..b).map(|_| f64::from(rng.random::<bool>() as u8)).collect();
    let mut c = Counter::default();
    let (f, _) = c.thresholded(&p.layers, &p.wo, p.bo, &x, 0.3, -1.0, 0.1);
    (c.ops, f, forward_multi(&p, &x).unwrap())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_rel: f64 = 0.0;
    let mut shapes = 0;
    for i in 0..50 {
        let d = 1 + i % 3;
        let widths: Vec<usize> = (0..d).map(|_| rng.random_range(1..=40)).collect();
        let b = rng.random_range(1..=2000);
        let eps = rng.random_range(0.01..=1.0);
        let delta = rng.random_range(0.01..=1.0);
        let shape = RnnShape::new(widths.clone(), b).unwrap();
        let params = if d == 1 {
            SingleLayerRnnParams::zeros(widths[0]).num_trainable() as u128
        } else {
            MultiLayerRnnParams::zeros(&widths).num_trainable() as u128
        };
        let want = composed_bound(params, op_count_multi(&widths, b), eps, delta);
        let got = if d == 1 {
            sample_complexity_single(widths[0], b, eps, delta).unwrap()
        } else {
            sample_complexity_multi(&shape, eps, delta).unwrap()
        };
        let report = BoundReport::for_shape(shape, eps, delta).unwrap();
        worst_rel = worst_rel
            .max((got - want).abs() / want)
            .max((report.sample_complexity - want).abs() / want);
        shapes += 1;
    }
    let mut op_mismatch = Vec::new();
    let mut value_mismatch = 0;
    for d in 1..=2usize {
        for b in 1..=5usize {
            let mut sizes = vec![vec![]];
            for _ in 0..d {
                sizes = sizes
                    .into_iter()
                    .flat_map(|w: Vec<usize>| (1..=3).map(move |a| [w.clone(), vec![a]].concat()))
                    .collect();
            }
            for widths in sizes {
                let (counted, f, reference) = instrumented_ops(&widths, b, &mut rng);
                let formula = op_count_multi(&widths, b);
                if counted != formula {
                    op_mismatch.push(format!("{widths:?}/b={b}: {counted} vs {formula}"));
                }
                if (f - reference).abs() > 1e-12 {
                    value_mismatch += 1;
                }
                if param_count_multi(&widths) != MultiLayerRnnParams::zeros(&widths).num_trainable() as u128 {
                    op_mismatch.push(format!("{widths:?}: parameter count"));
                }
            }
        }
    }
    let t = start.elapsed();
    outcome(
        worst_rel <= 1e-9 && op_mismatch.is_empty() && value_mismatch == 0 && within(t, 60.0),
        format!(
            "{shapes} shapes, worst relative gap {worst_rel:.2e}; {} op-count mismatches {:?}; {:.2}s",
            op_mismatch.len(),
            op_mismatch.first(),
            t.as_secs_f64()
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0;
    let mut runs = 0;
    let mut boundary = 0;
    for i in 0..10_000u64 {
        let d = [1, 2, 3][i as usize % 3];
        let widths: Vec<usize> = (0..d).map(|_| rng.random_range(1..=8)).collect();
        let mut p = init_multi(&widths, rng.random(), Mode::Constrained);
        if i % 2 == 1 {
            // Push every block far outside, then project onto the boundary.
            for block in p.blocks_mut() {
                for v in block.iter_mut() {
                    *v = rng.random_range(-5.0..5.0);
                }
            }
            for l in &mut p.layers {
                for v in &mut l.h0 {
                    *v = rng.random_range(0.0..1.0);
                }
            }
            p.project_constraints();
            boundary += 1;
        }
        assert!(p.is_feasible());
        let model = if d == 1 {
            let single = SingleLayerRnnParams {
                layer: p.layers[0].clone(),
                wo: p.wo.clone(),
                bo: p.bo,
            };
            Network::Single(single)
        } else {
            Network::Multi(p)
        };
        let b = rng.random_range(1..=64);
        let n_max = (b as f64).sqrt().ceil() as usize;
        let model = Model::new(model, Mode::Constrained, n_max).unwrap();
        let mut x: Vec<f64> = (0..b).map(|_| f64::from(rng.random::<bool>() as u8)).collect();
        x.resize(n_max * n_max, 0.0);
        let f = model.predict_input(&x).unwrap();
        runs += 1;
        if !(0.0..=1.0).contains(&f) {
            violations += 1;
        }
    }
    let t = start.elapsed();
    outcome(
        violations == 0 && within(t, 60.0),
        format!(
            "{violations} outputs outside [0,1] over {runs} draws ({boundary} projected to the boundary); {:.2}s",
            t.as_secs_f64()
        ),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut worst, mut checked, mut skipped) = (0.0f64, 0, 0);
    for i in 0..50u64 {
        let n_max = rng.random_range(2..=4);
        let seed = rng.random();
        let width = rng.random_range(1..=5);
        let network = match i % 3 {
            0 => Network::Single(init_single(width, seed, Mode::Unconstrained)),
            1 => Network::Multi(init_multi(&[width, rng.random_range(1..=4)], seed, Mode::Unconstrained)),
            _ => Network::Ffn(init_ffn(n_max * n_max, [width, 3, 2], seed)),
        };
        let model = Model::new(network, Mode::Unconstrained, n_max).unwrap();
        let xs: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..n_max * n_max).map(|_| f64::from(rng.random::<bool>() as u8)).collect())
            .collect();
        let ys: Vec<f64> = (0..3).map(|_| rng.random()).collect();
        let refs: Vec<&[f64]> = xs.iter().map(|x| x.as_slice()).collect();
        let (grad, _) = gradient(&model, &refs, &ys).unwrap();
        let r = finite_difference_check(&model, &xs, &ys, &grad, 1e-5);
        worst = worst.max(r.max_rel_err);
        checked += r.checked;
        skipped += r.skipped_kinks;
    }
    let t = start.elapsed();
    outcome(
        worst <= 1e-4 && checked > 0 && within(t, 120.0),
        format!(
            "50 models, {checked} coordinates checked ({skipped} kink-adjacent skipped), worst relative error {worst:.2e}; {:.2}s",
            t.as_secs_f64()
        ),
    )
}

/// Test-set MSEs of the learning experiments, compared bitwise on rerun.
#[derive(Debug, PartialEq)]
struct LearningRun {
    sweep: Vec<(usize, u64)>,
    noisy: u64,
    baseline: u64,
    kellerman: u64,
    floor: u64,
}

/// Lower bound on the test MSE of any constrained single-layer RNN.
///
/// Column sums of `|W|` at most 0.25 make the recurrence a 0.25-contraction
/// in the max norm, and `|U| ≤ 0.25`, `‖wᵒ‖₁ ≤ 0.5`. A graph with `n < n_max`
/// ends in `n_max² − n²` zero inputs, so all graphs of one such size get the
/// same prediction up to `0.5 · 0.25^(n_max² − n²)`. The best such constant
/// is the group mean, leaving the within-group variance.
fn constrained_floor(d: &eccn_core::learn::LabeledDataset, test: &[usize]) -> f64 {
    let mut sq = 0.0;
    for n in 1..d.n_max {
        let ys: Vec<f64> = test
            .iter()
            .filter(|&&i| d.records[i].graph.n() == n)
            .map(|&i| d.normalized_label(i))
            .collect();
        if ys.is_empty() {
            continue;
        }
        let mean = ys.iter().sum::<f64>() / ys.len() as f64;
        sq += ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>();
    }
    sq / test.len() as f64
}

const TRAIN_SIZES: [usize; 3] = [1000, 4000, 0];

fn learning_run(workers: usize) -> (LearningRun, Duration, Duration) {
    let manifest = ExperimentManifest {
        scenario: Scenario::Mixed,
        p_values: Scenario::Mixed.default_p(),
        n_min: 6,
        n_max: 8,
        samples: 20_000,
        seed: 2024,
        ..ExperimentManifest::default()
    };
    let d = generate_dataset(&manifest, workers).unwrap().dataset;
    let data = split_samples(&d, 0).unwrap();
    let raw_train: Vec<u32> = data.split.train.iter().map(|&i| d.records[i].eccn).collect();
    let baseline = majority_vote_baseline(&raw_train, d.label_scale).unwrap();
    let baseline_mse = mse(&vec![baseline.normalized; data.test.len()], &data.test.labels).unwrap();
    let kellerman_mse = mse(&kellerman_predictions(&d.subset(&data.split.test)), &data.test.labels).unwrap();
    let floor = constrained_floor(&d, &data.split.test);
    let config = TrainConfig {
        learning_rate: 0.01,
        batch_size: 64,
        max_epochs: 2000,
        patience: 20,
        ..TrainConfig::default()
    };
    let start = Instant::now();
    let sweep = TRAIN_SIZES
        .iter()
        .map(|&k| {
            let cell = CellSpec {
                model: ModelKind::ConstrainedRnn,
                train_size: (k > 0).then_some(k),
                sigma: 0.0,
                seed: 11,
            };
            let size = if k > 0 { k } else { data.train.len() };
            (size, run_cell(&data, d.n_max, &config, &cell).unwrap().to_bits())
        })
        .collect();
    let t_sweep = start.elapsed();
    let start = Instant::now();
    let noisy = CellSpec {
        model: ModelKind::ConstrainedRnn,
        train_size: None,
        sigma: 0.1,
        seed: 11,
    };
    let noisy = run_cell(&data, d.n_max, &config, &noisy).unwrap().to_bits();
    let t_noise = start.elapsed();
    (
        LearningRun {
            sweep,
            noisy,
            baseline: baseline_mse.to_bits(),
            kellerman: kellerman_mse.to_bits(),
            floor: floor.to_bits(),
        },
        t_sweep,
        t_noise,
    )
}

fn criteria_8_to_10() -> [Outcome; 3] {
    let start = Instant::now();
    let (run, t_sweep, t_noise) = learning_run(0);
    let t8 = start.elapsed() - t_noise;
    let f = f64::from_bits;
    let baseline = f(run.baseline);
    let kellerman = f(run.kellerman);
    let (largest, rnn) = *run.sweep.last().unwrap();
    let rnn = f(rnn);
    let beats = rnn < baseline;
    let near_kellerman = rnn <= 2.0 * kellerman;
    let floor = f(run.floor);
    let sweep: Vec<String> = run.sweep.iter().map(|(k, m)| format!("{k}:{:.4e}", f(*m))).collect();
    let c8 = outcome(
        beats && near_kellerman && within(t8, 7200.0),
        format!(
            "RNN test MSE by train size [{}]; majority vote {baseline:.4e} ({}); Kellerman {kellerman:.4e}, RNN/Kellerman at {largest} = {:.2} (need <= 2: {}); contraction floor for any constrained RNN {floor:.4e} = {:.0}x Kellerman; training {:.0}s",
            sweep.join(", "),
            if beats { "beaten" } else { "NOT beaten" },
            rnn / kellerman,
            if near_kellerman { "ok" } else { "NOT MET" },
            floor / kellerman,
            t_sweep.as_secs_f64()
        ),
    );
    let noisy = f(run.noisy);
    let c9 = outcome(
        noisy < baseline && within(t_noise, 7200.0),
        format!(
            "sigma=0.1 RNN test MSE {noisy:.4e} vs majority vote {baseline:.4e}; {:.0}s",
            t_noise.as_secs_f64()
        ),
    );
    let start = Instant::now();
    let (again, _, _) = learning_run(1);
    let same = again == run;
    let c10 = outcome(
        same,
        format!(
            "rerun with one labelling worker: {} ({:.0}s)",
            if same { "all MSEs bitwise identical" } else { "MSEs DIFFER" },
            start.elapsed().as_secs_f64()
        ),
    );
    [c8, c9, c10]
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut report = |id: usize, name: &'static str, o: Outcome| {
        println!(
            "criterion {id:>2} [{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((id, name, o));
    };
    report(1, "break-even figures", criterion_1());
    report(2, "cover figure ground truth", criterion_2());
    report(3, "exact solver vs all-cliques oracle", criterion_3());
    report(4, "Kellerman soundness", criterion_4());
    report(5, "bound-chain consistency", criterion_5());
    report(6, "constrained image in [0,1]", criterion_6());
    report(7, "gradients vs finite differences", criterion_7());
    let [c8, c9, c10] = criteria_8_to_10();
    report(8, "desk-scale learning", c8);
    report(9, "noise robustness", c9);
    report(10, "determinism", c10);
    let failed: Vec<usize> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    println!(
        "acceptance: {}/{} passed{}",
        results.len() - failed.len(),
        results.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!("; failed: {failed:?}")
        }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
