use relboost::eval::{run_ablation, HarnessParams};
use relboost::relfeat::FeatureMask;
use relboost::synth::{generate, SynthConfig};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let noise: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.15);
    let seeds: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let t0 = Instant::now();
    let params = HarnessParams {
        workers: 2,
        ..Default::default()
    };
    let masks = [
        FeatureMask::all(),
        FeatureMask::parse("rf1").unwrap(),
        FeatureMask::parse("rf4").unwrap(),
        FeatureMask::parse("all-minus-rf4").unwrap(),
        FeatureMask::parse("rf2+rf3").unwrap(),
    ];
    let mut sums = std::collections::BTreeMap::<String, f64>::new();
    for seed in 0..seeds {
        let (g, _) = generate(&SynthConfig {
            seed,
            attr_noise: noise,
            ..Default::default()
        })
        .unwrap();
        let report = run_ablation(&g, &masks, &[0.2], 5, &params, 4000 + seed).unwrap();
        print!("seed {seed}: ");
        for agg in report.aggregate() {
            print!("{} {:.4e}  ", agg.model_label, agg.mean_rmse);
            *sums.entry(agg.model_label.clone()).or_default() += agg.mean_rmse;
        }
        println!();
    }
    println!("--- noise {noise}, {seeds} seeds, {:.0}s ---", t0.elapsed().as_secs_f64());
    for (label, sum) in sums {
        println!("  {label}: mean {:.4e}", sum / seeds as f64);
    }
}
