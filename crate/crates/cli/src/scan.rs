use std::path::Path;

use num_rational::BigRational;
use serde_json::json;

use fullgraphic::{classify, unstable_window, SimpleRegion};

use crate::{csv_failure, to_json, Failure, Outcome};

pub const WINDOW_HEADER: [&str; 12] = [
    "n",
    "c1",
    "c2",
    "r",
    "beta",
    "x_min",
    "x_max",
    "sigma_min",
    "sigma_max",
    "epsilon_num",
    "epsilon_den",
    "eq8_holds",
];

/// Writes one row per even Σ in `[n*c2, n*c1]` and returns a JSON summary.
pub fn run(
    n: usize,
    c1: usize,
    c2: usize,
    r: Option<usize>,
    beta: Option<&BigRational>,
    out: &Path,
) -> Outcome {
    // Validates (n, c1, c2) before touching the output file.
    let lo = n * c2 + (n * c2) % 2;
    SimpleRegion::new(n, lo, c1, c2)?;
    let window = r
        .map(|r| unstable_window(n, c1, c2, r, beta))
        .transpose()?;

    let mut header = vec!["n", "sigma", "c1", "c2", "fully_graphic", "q", "window_status", "in_window"];
    if window.is_some() {
        header.extend(["r", "in_unstable_window", "in_eq9", "eq8_holds"]);
    }
    let mut w = csv::Writer::from_path(out)
        .map_err(|e| Failure::Usage(format!("--out {}: {e}", out.display())))?;
    w.write_record(&header).map_err(csv_failure)?;

    let mut rows = 0usize;
    let mut fully = 0usize;
    let mut sigma = lo;
    while sigma <= n * c1 {
        let region = SimpleRegion::new(n, sigma, c1, c2)?;
        let c = classify(&region, None)?;
        rows += 1;
        fully += usize::from(c.fully_graphic);
        let mut rec = vec![
            n.to_string(),
            sigma.to_string(),
            c1.to_string(),
            c2.to_string(),
            c.fully_graphic.to_string(),
            c.q.to_string(),
            c.window_status.clone(),
            c.sigma_in_window.to_string(),
        ];
        if let Some(win) = &window {
            let s = sigma as i64;
            let inside = matches!((win.sigma_min, win.sigma_max), (Some(a), Some(b)) if a <= s && s <= b);
            rec.extend([
                win.r.to_string(),
                inside.to_string(),
                win.eq9_contains(s).to_string(),
                win.eq8_holds.map(|b| b.to_string()).unwrap_or_default(),
            ]);
        }
        w.write_record(&rec).map_err(csv_failure)?;
        sigma += 2;
    }
    w.flush()
        .map_err(|e| Failure::Usage(format!("--out {}: {e}", out.display())))?;
    to_json(&json!({
        "out": out.display().to_string(),
        "rows": rows,
        "fully_graphic_rows": fully,
    }))
}
