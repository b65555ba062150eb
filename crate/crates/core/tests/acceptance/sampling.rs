use fullgraphic::{run_chain, ChainConfig, DegreeSequence};

use crate::Verdict;

pub fn c12_mcmc() -> Verdict {
    let mut detail = Vec::new();
    for v in [[1, 1, 1, 1], [2, 2, 2, 2]] {
        let d = DegreeSequence::new(v.to_vec()).unwrap();
        let config = ChainConfig {
            seed: 1,
            steps: 100_000,
            thin: 1,
            burn_in: 1_000,
            record_trace: true,
        };
        let a = run_chain(&d, &config).map_err(|e| e.to_string())?;
        let b = run_chain(&d, &config).map_err(|e| e.to_string())?;
        let (ja, jb) = (
            serde_json::to_vec(&a).unwrap(),
            serde_json::to_vec(&b).unwrap(),
        );
        if ja != jb {
            return Err(format!("{v:?}: identical seeds gave different runs"));
        }
        if a.total_samples != 100_000 || a.realizations != Some(3) {
            return Err(format!("{v:?}: {} samples over {:?} states", a.total_samples, a.realizations));
        }
        let tv = a.tv_distance_f64.unwrap();
        if tv >= 0.05 {
            return Err(format!("{v:?}: total variation {tv}"));
        }
        detail.push(format!("{v:?} tv = {}", a.tv_distance.unwrap()));
    }
    Ok(detail.join(", "))
}
