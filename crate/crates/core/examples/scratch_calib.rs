use relboost::synth::{generate, SynthConfig};
use std::time::Instant;

fn main() {
    for seed in 0..5u64 {
        let cfg = SynthConfig {
            seed,
            ..Default::default()
        };
        let t = Instant::now();
        match generate(&cfg) {
            Ok((_, stats)) => println!(
                "seed {seed}: deg {:.3} clust {:.4} corr {:.4} rounds {} w {:.3} ({:.2}s)",
                stats.avg_degree,
                stats.clustering,
                stats.edge_corr,
                stats.smoothing_rounds,
                stats.final_round_weight,
                t.elapsed().as_secs_f64()
            ),
            Err(e) => println!("seed {seed}: ERROR {e}"),
        }
    }
}
