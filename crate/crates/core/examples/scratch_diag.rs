use relboost::boosting::{fit_rgb, predict_boosted};
use relboost::collective::ica;
use relboost::eval::rmse;
use relboost::graph::{induced_subgraph, split_folds};
use relboost::mgb::{fit_mgb, predict_mgb, MgbConfig};
use relboost::synth::{generate, SynthConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let noise: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.45);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    let frac: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(0.8);

    let (g, stats) = generate(&SynthConfig {
        seed,
        attr_noise: noise,
        ..Default::default()
    })
    .unwrap();
    println!(
        "graph seed {seed}: corr {:.3}, label max {:.3e}",
        stats.edge_corr, stats.label_max
    );
    let assign = split_folds(&g, 5, 99).unwrap();
    let k = 5;
    let t = (frac * k as f64 - 1e-9).ceil() as usize;

    for fold in 0..k {
        let train_folds: Vec<usize> = (0..t).map(|off| (fold + off) % k).collect();
        let known: Vec<bool> = assign.fold_of.iter().map(|f| train_folds.contains(f)).collect();
        let hide: Vec<bool> = known.iter().map(|&b| !b).collect();
        let eval_g = g.hide_labels(&hide);
        let keep: Vec<usize> = (0..g.n_nodes()).filter(|&i| known[i]).collect();
        let tr = induced_subgraph(&g, &keep).unwrap();

        // rgb
        let rgb = fit_rgb(&tr, 10, 5).unwrap();
        let out = ica(&eval_g, &rgb, 50, 7).unwrap();
        let truth: Vec<f64> = out.predictions.iter().map(|(i, _)| g.label(*i).unwrap()).collect();
        let preds: Vec<f64> = out.predictions.iter().map(|(_, p)| *p).collect();
        let r_rgb = rmse(&preds, &truth).unwrap();
        // worst node
        let (wi, werr) = out
            .predictions
            .iter()
            .map(|(i, p)| (*i, (p - g.label(*i).unwrap()).abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        // gb on same fold for reference
        let rows: Vec<Vec<f64>> = (0..tr.n_nodes()).map(|i| tr.attr_row(i).to_vec()).collect();
        let y: Vec<f64> = (0..tr.n_nodes()).map(|i| tr.label(i).unwrap()).collect();
        let x = relboost::Matrix::from_rows(&rows).unwrap();
        let gbm = relboost::boosting::fit_gb(&x, &y, 10, 5).unwrap();
        let gb_preds: Vec<f64> = out
            .predictions
            .iter()
            .map(|(i, _)| predict_boosted(&gbm, g.attr_row(*i)).unwrap())
            .collect();
        let r_gb = rmse(&gb_preds, &truth).unwrap();

        // mgb
        let mgb = fit_mgb(&tr, &MgbConfig::default(), 5).unwrap();
        let mout = predict_mgb(&eval_g, &mgb, 50, 7).unwrap();
        let mpreds: Vec<f64> = mout.predictions.iter().map(|(_, p)| *p).collect();
        let r_mgb = rmse(&mpreds, &truth).unwrap();

        println!(
            "fold {fold}: gb {r_gb:.3e} rgb {r_rgb:.3e} (conv {} sw {}) mgb {r_mgb:.3e} (conv {} sw {}) | rgb worst node {wi}: |err| {werr:.3e} label {:.3e} pred {:.3e} deg {}",
            out.converged,
            out.sweeps_run,
            mout.converged,
            mout.sweeps_run,
            g.label(wi).unwrap(),
            out.prediction_map()[&wi],
            g.degree(wi),
        );
    }
}
