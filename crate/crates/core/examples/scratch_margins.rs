use relboost::eval::{run_experiment, HarnessParams};
use relboost::synth::{generate, SynthConfig};
use relboost::ModelKind;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let noise: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.25);
    let seeds: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let t0 = Instant::now();
    let params = HarnessParams {
        workers: 2,
        ..Default::default()
    };
    let models = [ModelKind::Gb, ModelKind::Rgb, ModelKind::Mgb];
    let mut wins = [0usize; 2]; // mgb<gb at 0.2, at 0.8
    let mut sums = vec![[0.0f64; 2]; 3];
    for seed in 0..seeds {
        let (g, _) = generate(&SynthConfig {
            seed,
            attr_noise: noise,
            ..Default::default()
        })
        .unwrap();
        let report = run_experiment(&g, &models, &[0.2, 0.8], 5, &params, 1000 + seed).unwrap();
        let agg = report.aggregate();
        let mean = |model: &str, frac: f64| -> f64 {
            agg.iter()
                .find(|a| a.model_label == model && a.fraction == frac)
                .unwrap()
                .mean_rmse
        };
        println!("seed {seed} (noise {noise}):");
        for (mi, m) in ["gb", "rgb", "mgb"].iter().enumerate() {
            let lo = mean(m, 0.2);
            let hi = mean(m, 0.8);
            sums[mi][0] += lo;
            sums[mi][1] += hi;
            println!("  {m}: frac0.2 {lo:.4e}  frac0.8 {hi:.4e}");
        }
        if mean("mgb", 0.2) < mean("gb", 0.2) {
            wins[0] += 1;
        }
        if mean("mgb", 0.8) < mean("gb", 0.8) {
            wins[1] += 1;
        }
    }
    println!("--- noise {noise}, {seeds} seeds, {:.0}s ---", t0.elapsed().as_secs_f64());
    for (mi, m) in ["gb", "rgb", "mgb"].iter().enumerate() {
        println!(
            "  {m}: mean frac0.2 {:.4e}  frac0.8 {:.4e}",
            sums[mi][0] / seeds as f64,
            sums[mi][1] / seeds as f64
        );
    }
    println!("  mgb<gb wins: frac0.2 {}/{seeds}  frac0.8 {}/{seeds}", wins[0], wins[1]);
}
