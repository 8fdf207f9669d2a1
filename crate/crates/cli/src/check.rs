//! Invariant and oracle checks over a configured scenario.

use osc3::entropy::{
    entropies_one, entropies_two, entropies_via_a, purity_one, purity_two, spectrum_one,
    spectrum_two,
};
use osc3::ermakov::{solve_ode, solve_quench, ModeProfile};
use osc3::gaussian::{
    build_full_kernel_generic, marginalize_generic, reduce_drop_first, reduce_keep_first,
    reduce_keep_third, ReducedKernel,
};
use osc3::model::{couplings_at, decompose, orthogonality_defect, reconstruct};
use osc3::oracle::{
    ermakov_residual, purity_quadrature_1d, purity_quadrature_2d, spectrum_grid_1d,
    spectrum_grid_2d, GridSpec,
};
use osc3::scenario::Scenario;
use osc3::Error;

use crate::config::ScenarioConfig;

pub struct CheckReport {
    pub lines: Vec<String>,
    pub failures: usize,
}

struct Collector {
    lines: Vec<String>,
    failures: usize,
}

impl Collector {
    fn new() -> Self {
        Collector { lines: Vec::new(), failures: 0 }
    }

    fn check(&mut self, name: &str, dev: f64, tol: f64) {
        let ok = dev.is_finite() && dev < tol;
        if !ok {
            self.failures += 1;
        }
        self.lines.push(format!(
            "{} {name}: deviation {dev:.3e} (tolerance {tol:.0e})",
            if ok { "ok  " } else { "FAIL" }
        ));
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.lines.push(format!("skip {name}: {why}"));
    }
}

fn svon_of_spectrum(vals: &[f64]) -> f64 {
    vals.iter()
        .filter(|&&p| p > 1e-300)
        .map(|&p| -p * p.ln())
        .sum()
}

/// Run every module invariant over the scenario, plus grid-oracle
/// comparisons at five evenly spaced times when `oracle` is enabled.
pub fn run_check(config: &ScenarioConfig) -> anyhow::Result<CheckReport> {
    let schedule = config.schedule();
    let sc = Scenario::new(schedule.clone(), config.t_end)?;
    let mut c = Collector::new();

    let span = config.t_end - config.t_start;
    let sample_times: Vec<f64> = (0..33)
        .map(|i| config.t_start + span * i as f64 / 32.0)
        .collect();

    let mut orth: f64 = 0.0;
    let mut recon: f64 = 0.0;
    let mut kernel_routes: f64 = 0.0;
    let mut trace1: f64 = 0.0;
    let mut trace2: f64 = 0.0;
    let mut ladder_sum: f64 = 0.0;
    let mut det_identity: f64 = 0.0;
    let mut pur1_ident: f64 = 0.0;
    let mut pur2_ident: f64 = 0.0;
    let mut cross_route: f64 = 0.0;
    let mut closed_vs_generic: f64 = 0.0;

    for &t in &sample_times {
        let cp = couplings_at(&schedule, t)?;
        let basis = decompose(&cp, 1e-9);
        orth = orth.max(orthogonality_defect(&basis));
        let k_mat = osc3::model::build_coupling_matrix(&cp);
        let r = reconstruct(&basis);
        let mut scale: f64 = 1.0;
        for row in &k_mat {
            for x in row {
                scale = scale.max(x.abs());
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                recon = recon.max((r[i][j] - k_mat[i][j]).abs() / scale);
            }
        }

        let k = sc.kernel_at(t)?;
        let gen = build_full_kernel_generic(&k.basis, &k.modes);
        let mut gs: f64 = 0.0;
        for row in &k.g {
            for e in row {
                gs = gs.max(e.norm());
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                kernel_routes = kernel_routes.max((k.g[i][j] - gen.g[i][j]).norm() / gs);
            }
        }

        let kc = reduce_keep_third(&k)?;
        let k2 = reduce_drop_first(&k)?;
        let ka = reduce_keep_first(&k)?;
        trace1 = trace1.max((kc.trace() - 1.0).abs()).max((ka.trace() - 1.0).abs());
        trace2 = trace2.max((k2.trace() - 1.0).abs());
        let w3 = k.omega_prime_product();
        ladder_sum = ladder_sum.max((kc.r1 - kc.y - w3 / 2.0).abs() / w3);
        let det = (k2.alpha[0] - k2.gamma11) * (k2.alpha[1] - k2.gamma22)
            - (k2.alpha[2] - k2.alpha[3]).powi(2);
        det_identity = det_identity.max((det - w3 * k2.a / 4.0).abs() / (w3 * k2.a));

        if !k.basis.degenerate {
            // closed coefficients against the generic marginalization
            if let ReducedKernel::One(g1) = marginalize_generic(&k, &[3])? {
                let s = kc.omega.abs().max(kc.r1.abs());
                for (a, b) in [(kc.omega, g1.omega), (kc.y, g1.y), (kc.r1, g1.r1), (kc.i1, g1.i1)]
                {
                    closed_vs_generic = closed_vs_generic.max((a - b).abs() / s);
                }
            }
            if let ReducedKernel::Two(g2) = marginalize_generic(&k, &[2, 3])? {
                let s = k2
                    .alpha
                    .iter()
                    .chain(&[k2.a, k2.gamma11, k2.gamma22])
                    .fold(0.0f64, |a, &x| a.max(x.abs()));
                closed_vs_generic = closed_vs_generic.max((k2.a - g2.a).abs() / s);
                for i in 0..4 {
                    closed_vs_generic = closed_vs_generic
                        .max((k2.alpha[i] - g2.alpha[i]).abs() / s)
                        .max((k2.beta[i] - g2.beta[i]).abs() / s);
                }
            }
        }

        let s1 = spectrum_one(&kc)?;
        pur1_ident = pur1_ident
            .max((purity_one(&kc)? - (1.0 - s1.xi) / (1.0 + s1.xi)).abs());
        let s2 = spectrum_two(&k2)?;
        let p2xi = (1.0 - s2.xi1) / (1.0 + s2.xi1) * (1.0 - s2.xi2) / (1.0 + s2.xi2);
        pur2_ident = pur2_ident.max((purity_two(&k2)? - p2xi).abs());
        let bc = entropies_two(&s2, &[]).s_von;
        let via_a = entropies_via_a(&ka, &[])?.s_von;
        cross_route = cross_route.max((bc - via_a).abs());
    }

    c.check("mode basis orthogonality", orth, 1e-12);
    c.check("coupling matrix reconstruction", recon, 1e-10);
    c.check("kernel closed vs generic routes", kernel_routes, 1e-10);
    c.check("closed vs generic reduction coefficients", closed_vs_generic, 1e-9);
    c.check("one-mode kernel unit trace", trace1, 1e-12);
    c.check("two-mode kernel unit trace", trace2, 1e-12);
    c.check("one-mode ladder sum rule (r1 - y = w3/2)", ladder_sum, 1e-10);
    c.check("two-mode determinant identity", det_identity, 1e-9);
    c.check("one-mode purity-ladder identity", pur1_ident, 1e-12);
    c.check("two-mode purity-ladder identity", pur2_ident, 1e-9);
    c.check("cross-route entropy identity", cross_route, 1e-9);

    // Renyi monotonicity on the kernel at mid-sweep
    let t_mid = config.t_start + span / 2.0;
    let kc = reduce_keep_third(&sc.kernel_at(t_mid)?)?;
    let s1 = spectrum_one(&kc)?;
    let alphas: Vec<f64> = (1..50).map(|i| 0.1 * i as f64).collect();
    let rep = entropies_one(&s1, &alphas);
    let mut mono: f64 = 0.0;
    for w in rep.s_renyi.windows(2) {
        mono = mono.max(w[1].1 - w[0].1);
    }
    c.check("Renyi entropy monotone in alpha", mono, 1e-12);

    // Ermakov dynamics checks on each mode profile
    let ci = couplings_at(&schedule, config.t_start)?;
    let li = decompose(&ci, 1e-9).eigenvalues();
    if schedule.is_sudden() {
        let cf = couplings_at(&schedule, config.t_start + span / 2.0)?;
        let lf = decompose(&cf, 1e-9).eigenvalues();
        let mut fd: f64 = 0.0;
        let mut agree: f64 = 0.0;
        for m in 0..3 {
            let profile = ModeProfile::Quench { wi_sq: li[m], wf_sq: lf[m] };
            let dt = 1e-5;
            let steps = (config.t_end / dt) as usize;
            let samples: Vec<_> = (0..=steps)
                .map(|i| {
                    let ti = i as f64 * dt;
                    (ti, solve_quench(li[m], lf[m], ti).unwrap())
                })
                .collect();
            fd = fd.max(ermakov_residual(&samples, &profile)?);
            let traj = solve_ode(&profile, config.t_end, 1e-10)?;
            for (tk, s) in traj.knots() {
                let q = solve_quench(li[m], lf[m], tk)?;
                agree = agree.max((s.b - q.b).abs());
            }
        }
        c.check("Ermakov residual of the closed form", fd, 1e-7);
        c.check("closed form vs integrated scale factor", agree, 1e-8);
    } else {
        c.skip(
            "Ermakov closed-form checks",
            "schedule is not sudden; modes are integrated numerically",
        );
    }

    if config.oracle {
        let oracle_times: Vec<f64> = (1..=5)
            .map(|i| config.t_start + span * i as f64 / 6.0)
            .collect();
        let mut s1dev: f64 = 0.0;
        let mut s2dev: f64 = 0.0;
        let mut p1dev: f64 = 0.0;
        let mut p2dev: f64 = 0.0;
        let mut skipped = Vec::new();
        for &t in &oracle_times {
            let k = sc.kernel_at(t)?;
            let kc = reduce_keep_third(&k)?;
            let k2 = reduce_drop_first(&k)?;
            let g1 = GridSpec::for_one_mode();
            let g2 = GridSpec::for_two_modes();
            match spectrum_grid_1d(&kc, &g1) {
                Ok(vals) => {
                    let s1 = entropies_one(&spectrum_one(&kc)?, &[]).s_von;
                    s1dev = s1dev.max((svon_of_spectrum(&vals) - s1).abs());
                    p1dev = p1dev
                        .max((purity_quadrature_1d(&kc, &g1)? - purity_one(&kc)?).abs());
                }
                Err(Error::GridTooCoarse(why)) => skipped.push(format!("t = {t:.3} (1D): {why}")),
                Err(e) => return Err(e.into()),
            }
            match spectrum_grid_2d(&k2, &g2) {
                Ok(vals) => {
                    let s2 = entropies_two(&spectrum_two(&k2)?, &[]).s_von;
                    s2dev = s2dev.max((svon_of_spectrum(&vals) - s2).abs());
                    p2dev = p2dev
                        .max((purity_quadrature_2d(&k2, &g2)? - purity_two(&k2)?).abs());
                }
                Err(Error::GridTooCoarse(why)) => skipped.push(format!("t = {t:.3} (2D): {why}")),
                Err(e) => return Err(e.into()),
            }
        }
        c.check("grid-oracle entropy (one mode)", s1dev, 1e-5);
        c.check("grid-oracle entropy (two modes)", s2dev, 1e-4);
        c.check("quadrature purity (one mode)", p1dev, 1e-5);
        c.check("quadrature purity (two modes)", p2dev, 1e-4);
        for s in skipped {
            c.skip("grid oracle point", &s);
        }
    }

    Ok(CheckReport { lines: c.lines, failures: c.failures })
}
