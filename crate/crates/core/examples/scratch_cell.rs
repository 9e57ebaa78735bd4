use relboost::eval::{run_experiment, HarnessParams};
use relboost::synth::{generate, SynthConfig};
use relboost::ModelKind;
use std::time::Instant;

fn main() {
    let (g, stats) = generate(&SynthConfig {
        seed: 0,
        ..Default::default()
    })
    .unwrap();
    println!(
        "graph: corr {:.4} clust {:.4}",
        stats.edge_corr, stats.clustering
    );
    let params = HarnessParams::default();
    for frac in [0.2, 0.8] {
        for model in [ModelKind::Gb, ModelKind::Rgb, ModelKind::Mgb] {
            let t = Instant::now();
            let report = run_experiment(&g, &[model], &[frac], 5, &params, 42).unwrap();
            let agg = &report.aggregate()[0];
            println!(
                "frac {frac} {model}: mean rmse {:.4e} (std {:.2e}) in {:.1}s total for 5 folds",
                agg.mean_rmse,
                agg.std_rmse,
                t.elapsed().as_secs_f64()
            );
        }
    }
}
