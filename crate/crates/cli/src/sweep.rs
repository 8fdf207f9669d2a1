//! Time sweep producing one CSV row per sample.

use anyhow::Context;
use rayon::prelude::*;

use osc3::entropy::{
    entropies_one, entropies_two, entropies_via_a, purity_one, purity_two, spectrum_one,
    spectrum_two,
};
use osc3::gaussian::{reduce_drop_first, reduce_keep_first, reduce_keep_third};
use osc3::scenario::Scenario;

use crate::config::ScenarioConfig;

/// Format a number with twelve significant digits, locale-free.
fn num(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn alpha_label(a: f64) -> String {
    if a.fract() == 0.0 && a.abs() < 1e15 {
        format!("{}", a as i64)
    } else {
        format!("{a}")
    }
}

pub fn header(alphas: &[f64]) -> String {
    let mut cols = vec![
        "t".to_string(),
        "b1".into(),
        "bplus".into(),
        "bminus".into(),
        "purity_C".into(),
        "purity_BC".into(),
        "xi_C".into(),
        "xi1".into(),
        "xi2".into(),
        "S_von_C".into(),
        "S_von_BC".into(),
    ];
    for &a in alphas {
        cols.push(format!("S_alpha_C_{}", alpha_label(a)));
    }
    for &a in alphas {
        cols.push(format!("S_alpha_BC_{}", alpha_label(a)));
    }
    cols.push("agreement_BC_vs_A".into());
    cols.join(",")
}

fn row(sc: &Scenario<f64>, t: f64, alphas: &[f64]) -> osc3::Result<String> {
    let modes = sc.modes_at(t)?;
    let k = sc.kernel_at(t)?;
    let kc = reduce_keep_third(&k)?;
    let k2 = reduce_drop_first(&k)?;
    let ka = reduce_keep_first(&k)?;
    let s1 = spectrum_one(&kc)?;
    let s2 = spectrum_two(&k2)?;
    let purity_c = purity_one(&kc)?;
    let purity_bc = purity_two(&k2)?;
    let rep_c = entropies_one(&s1, alphas);
    let rep_bc = entropies_two(&s2, alphas);
    let rep_a = entropies_via_a(&ka, alphas)?;
    let agreement = (rep_bc.s_von - rep_a.s_von).abs();

    let mut cols = vec![
        num(t),
        num(modes[0].b),
        num(modes[1].b),
        num(modes[2].b),
        num(purity_c),
        num(purity_bc),
        num(s1.xi),
        num(s2.xi1),
        num(s2.xi2),
        num(rep_c.s_von),
        num(rep_bc.s_von),
    ];
    for (_, s) in &rep_c.s_renyi {
        cols.push(num(*s));
    }
    for (_, s) in &rep_bc.s_renyi {
        cols.push(num(*s));
    }
    cols.push(num(agreement));
    Ok(cols.join(","))
}

/// Run the sweep; returns the CSV text.  Rows whose state is rejected by
/// the entropy layer are reported on stderr and skipped.
pub fn run_sweep(config: &ScenarioConfig) -> anyhow::Result<String> {
    let schedule = config.schedule();
    let sc = Scenario::new(schedule, config.t_end).context("building scenario")?;
    let alphas = config.alphas();
    let n = config.samples;
    let times: Vec<f64> = (0..n)
        .map(|i| {
            config.t_start + (config.t_end - config.t_start) * i as f64 / (n - 1) as f64
        })
        .collect();

    let rows: Vec<(f64, osc3::Result<String>)> = times
        .par_iter()
        .map(|&t| (t, row(&sc, t, &alphas)))
        .collect();

    let mut out = String::new();
    out.push_str(&header(&alphas));
    out.push('\n');
    for (t, r) in rows {
        match r {
            Ok(line) => {
                out.push_str(&line);
                out.push('\n');
            }
            Err(e) => eprintln!("skipping t = {t}: {e}"),
        }
    }
    Ok(out)
}
