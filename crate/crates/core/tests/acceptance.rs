//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use osc3::entropy::{
    entropies_one, entropies_two, entropies_via_a, purity_one, purity_two, spectrum_one,
    spectrum_two,
};
use osc3::ermakov::{solve_ode, solve_quench, ModeProfile};
use osc3::gaussian::{
    build_full_kernel_closed, build_full_kernel_generic, marginalize_generic, reduce_drop_first,
    reduce_drop_first_closed, reduce_keep_first, reduce_keep_first_closed, reduce_keep_third,
    reduce_keep_third_closed, ReducedKernel,
};
use osc3::model::{couplings_at, decompose, orthogonality_defect, splitting, CouplingsAt};
use osc3::oracle::{
    ermakov_residual, purity_quadrature_1d, purity_quadrature_2d, spectrum_grid_1d,
    spectrum_grid_2d, GridSpec,
};
use osc3::scenario::{presets, Scenario};

fn report(criterion: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {criterion}: {detail}");
    assert!(pass, "{criterion}: {detail}");
}

fn svon_of_spectrum(vals: &[f64]) -> f64 {
    vals.iter()
        .filter(|&&p| p > 1e-300)
        .map(|&p| -p * p.ln())
        .sum()
}

struct SweepRow {
    t: f64,
    purity_c: f64,
    purity_bc: f64,
    s_von_c: f64,
    s_von_bc: f64,
}

fn sweep_rows(sc: &Scenario<f64>, t_end: f64, samples: usize) -> Vec<SweepRow> {
    (0..samples)
        .map(|i| {
            let t = t_end * i as f64 / (samples - 1) as f64;
            let k = sc.kernel_at(t).unwrap();
            let kc = reduce_keep_third(&k).unwrap();
            let k2 = reduce_drop_first(&k).unwrap();
            let s1 = spectrum_one(&kc).unwrap();
            let s2 = spectrum_two(&k2).unwrap();
            SweepRow {
                t,
                purity_c: purity_one(&kc).unwrap(),
                purity_bc: purity_two(&k2).unwrap(),
                s_von_c: entropies_one(&s1, &[]).s_von,
                s_von_bc: entropies_two(&s2, &[]).s_von,
            }
        })
        .collect()
}

#[test]
fn criterion_1_fig1_frequencies() {
    let t0 = Instant::now();
    let sc = presets::fig1::<f64>();
    let bi = decompose(&couplings_at(&sc, 0.0).unwrap(), 1e-9);
    let bf = decompose(&couplings_at(&sc, 0.5).unwrap(), 1e-9);
    let got = [
        bi.lambda1.sqrt(),
        bf.lambda1.sqrt(),
        bi.lambda_plus.sqrt(),
        bf.lambda_plus.sqrt(),
        bi.lambda_minus.sqrt(),
        bf.lambda_minus.sqrt(),
    ];
    let want = [2.0, 2.45, 4.72, 4.83, 3.12, 3.83];
    let worst = got
        .iter()
        .zip(&want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0f64, f64::max);
    let elapsed = t0.elapsed().as_secs_f64();
    report(
        "criterion 1 (frequency reproduction, first parameter set)",
        worst <= 0.01 && elapsed < 1.0,
        &format!("max frequency deviation {worst:.4} (tol 0.01), runtime {elapsed:.3}s (< 1s)"),
    );
}

#[test]
fn criterion_2_fig2_frequencies() {
    let sc = presets::fig2::<f64>();
    let bi = decompose(&couplings_at(&sc, 0.0).unwrap(), 1e-9);
    let bf = decompose(&couplings_at(&sc, 0.5).unwrap(), 1e-9);
    let got = [
        bi.lambda1.sqrt(),
        bi.lambda_plus.sqrt(),
        bi.lambda_minus.sqrt(),
        bf.lambda_plus.sqrt(),
        bf.lambda_minus.sqrt(),
    ];
    let want = [0.316, 2.90, 2.19, 3.38, 2.79];
    let worst = got
        .iter()
        .zip(&want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0f64, f64::max);
    report(
        "criterion 2 (frequency reproduction, second parameter set)",
        worst <= 0.01,
        &format!("max frequency deviation {worst:.4} (tol 0.01)"),
    );
}

#[test]
fn criterion_3_fig3_frequencies() {
    let sc = presets::fig3::<f64>();
    let bf = decompose(&couplings_at(&sc, 0.5).unwrap(), 1e-9);
    let dev_p = (bf.lambda_plus.sqrt() - 3.35f64).abs();
    let dev_m = (bf.lambda_minus.sqrt() - 2.76f64).abs();
    let lam1_ok = (bf.lambda1 - (-0.1)).abs() < 1e-12;
    report(
        "criterion 3 (frequency reproduction, negative-eigenvalue set)",
        dev_p <= 0.01 && dev_m <= 0.01 && lam1_ok,
        &format!(
            "deviations (+{dev_p:.4}, -{dev_m:.4}) (tol 0.01), lambda1_final = {} (imaginary branch engaged)",
            bf.lambda1
        ),
    );
}

#[test]
fn criterion_4_qualitative_sweeps() {
    let t0 = Instant::now();
    let sc1 = Scenario::new(presets::fig1::<f64>(), 5.0).unwrap();
    let sc2 = Scenario::new(presets::fig2::<f64>(), 5.0).unwrap();
    let sc3 = Scenario::new(presets::fig3::<f64>(), 5.0).unwrap();
    let r1 = sweep_rows(&sc1, 5.0, 500);
    let r2 = sweep_rows(&sc2, 5.0, 500);
    let r3 = sweep_rows(&sc3, 5.0, 500);

    // (a) strict pointwise dominance for the first set
    let a_pur = r1.iter().all(|r| r.purity_bc > r.purity_c);
    let a_ent = r1.iter().all(|r| r.s_von_c > r.s_von_bc);

    // (b) ordered means but broken pointwise dominance for the second set
    let n2 = r2.len() as f64;
    let mean = |f: &dyn Fn(&SweepRow) -> f64| r2.iter().map(|r| f(r)).sum::<f64>() / n2;
    let b_mean_pur = mean(&|r| r.purity_bc) > mean(&|r| r.purity_c);
    let b_mean_ent = mean(&|r| r.s_von_c) > mean(&|r| r.s_von_bc);
    let b_cross_pur = r2.iter().any(|r| r.purity_bc <= r.purity_c);
    let b_cross_ent = r2.iter().any(|r| r.s_von_c <= r.s_von_bc);

    // (c) growth and decay for the negative-eigenvalue set
    let at = |t: f64| {
        r3.iter()
            .min_by(|x, y| {
                (x.t - t).abs().partial_cmp(&(y.t - t).abs()).unwrap()
            })
            .unwrap()
    };
    let (early, late, first) = (at(0.5), at(5.0), at(0.0));
    let c_growth = late.s_von_c > early.s_von_c && late.s_von_bc > early.s_von_bc;
    let c_decay = late.purity_c < first.purity_c && late.purity_bc < first.purity_bc;

    let elapsed = t0.elapsed().as_secs_f64();
    report(
        "criterion 4 (qualitative sweep claims)",
        a_pur && a_ent && b_mean_pur && b_mean_ent && b_cross_pur && b_cross_ent && c_growth
            && c_decay
            && elapsed < 10.0,
        &format!(
            "(a) dominance {}/{}, (b) means {}/{} crossings {}/{}, (c) growth {} decay {}, runtime {elapsed:.2}s (< 10s)",
            a_pur, a_ent, b_mean_pur, b_mean_ent, b_cross_pur, b_cross_ent, c_growth, c_decay
        ),
    );
}

fn random_nondegenerate(rng: &mut ChaCha8Rng) -> (CouplingsAt<f64>, CouplingsAt<f64>) {
    loop {
        let ji: [f64; 3] = [
            rng.gen_range(0.1..6.0),
            rng.gen_range(0.1..6.0),
            rng.gen_range(0.1..6.0),
        ];
        let jf: [f64; 3] = [
            rng.gen_range(0.1..6.0),
            rng.gen_range(0.1..6.0),
            rng.gen_range(0.1..6.0),
        ];
        let k0i = rng.gen_range(0.1..6.0);
        let k0f = rng.gen_range(-0.5..6.0);
        let margin = |j: &[f64; 3]| {
            let scale = j[0].abs().max(j[1].abs()).max(j[2].abs()).max(1.0);
            splitting(j[0], j[1], j[2]) > 2e-2 * scale && (j[1] - j[2]).abs() > 2e-2 * scale
        };
        let lam_f_minus = k0f + jf[0] + jf[1] + jf[2] - splitting(jf[0], jf[1], jf[2]);
        if margin(&ji) && margin(&jf) && lam_f_minus.abs() > 5e-2 {
            return (
                CouplingsAt { k0: k0i, j12: ji[0], j13: ji[1], j23: ji[2], t: 0.0 },
                CouplingsAt { k0: k0f, j12: jf[0], j13: jf[1], j23: jf[2], t: 1.0 },
            );
        }
    }
}

fn kernel_from(
    ci: &CouplingsAt<f64>,
    cf: &CouplingsAt<f64>,
    t: f64,
) -> osc3::gaussian::FullKernel<f64> {
    let bi = decompose(ci, 1e-9);
    let bf = decompose(cf, 1e-9);
    let li = bi.eigenvalues();
    let lf = bf.eigenvalues();
    let modes = [
        solve_quench(li[0], lf[0], t).unwrap(),
        solve_quench(li[1], lf[1], t).unwrap(),
        solve_quench(li[2], lf[2], t).unwrap(),
    ];
    if t == 0.0 {
        build_full_kernel_closed(&bi, &modes).unwrap()
    } else {
        build_full_kernel_closed(&bf, &modes).unwrap()
    }
}

#[test]
fn criterion_5_cross_route_identity() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let mut worst = 0.0f64;
    for schedule in [presets::fig1::<f64>(), presets::fig2::<f64>(), presets::fig3::<f64>()] {
        let sc = Scenario::new(schedule.clone(), 10.0).unwrap();
        // half the samples on the named configuration itself
        for _ in 0..50 {
            let t = rng.gen_range(0.0..10.0);
            let k = sc.kernel_at(t).unwrap();
            let s2 = spectrum_two(&reduce_drop_first(&k).unwrap()).unwrap();
            let bc = entropies_two(&s2, &[]).s_von;
            let via_a = entropies_via_a(&reduce_keep_first(&k).unwrap(), &[])
                .unwrap()
                .s_von;
            worst = worst.max((bc - via_a).abs());
        }
        // half with the quench target jittered around the configuration
        let ci = couplings_at(&schedule, 0.0).unwrap();
        for _ in 0..50 {
            let mut cf = couplings_at(&schedule, 1.0).unwrap();
            cf.j12 *= rng.gen_range(0.8..1.2);
            cf.j13 *= rng.gen_range(0.8..1.2);
            cf.j23 *= rng.gen_range(0.8..1.2);
            let scale: f64 = cf.j12.max(cf.j13).max(cf.j23).max(1.0);
            if splitting(cf.j12, cf.j13, cf.j23) < 2e-2 * scale
                || (cf.j13 - cf.j23).abs() < 2e-2 * scale
            {
                continue;
            }
            let t = rng.gen_range(0.0..10.0);
            let k = kernel_from(&ci, &cf, t);
            let s2 = spectrum_two(&reduce_drop_first(&k).unwrap()).unwrap();
            let bc = entropies_two(&s2, &[]).s_von;
            let via_a = entropies_via_a(&reduce_keep_first(&k).unwrap(), &[])
                .unwrap()
                .s_von;
            worst = worst.max((bc - via_a).abs());
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    report(
        "criterion 5 (cross-route entropy identity)",
        worst < 1e-9 && elapsed < 5.0,
        &format!("max |S_von difference| {worst:.2e} (tol 1e-9), runtime {elapsed:.2}s (< 5s)"),
    );
}

#[test]
fn criterion_6_oracle_equivalence() {
    let t0 = Instant::now();
    let mut worst_1d = 0.0f64;
    let mut worst_2d = 0.0f64;
    let mut worst_pur_1d = 0.0f64;
    let mut worst_pur_2d = 0.0f64;
    let cases: [(osc3::CouplingSchedule64, [f64; 5]); 3] = [
        (presets::fig1(), [0.5, 1.5, 2.5, 3.5, 4.5]),
        (presets::fig2(), [0.5, 1.5, 2.5, 3.5, 4.5]),
        // the exponential branch outgrows the 48-points-per-axis budget
        // beyond t ~ 4; sample it earlier
        (presets::fig3(), [0.5, 1.0, 1.5, 2.5, 3.5]),
    ];
    for (schedule, times) in cases {
        let sc = Scenario::new(schedule, 6.0).unwrap();
        for t in times {
            let k = sc.kernel_at(t).unwrap();
            let kc = reduce_keep_third(&k).unwrap();
            let s1 = spectrum_one(&kc).unwrap();
            let grid1 = GridSpec::for_one_mode();
            let vals1 = spectrum_grid_1d(&kc, &grid1).unwrap();
            worst_1d = worst_1d
                .max((svon_of_spectrum(&vals1) - entropies_one(&s1, &[]).s_von).abs());
            worst_pur_1d = worst_pur_1d
                .max((purity_quadrature_1d(&kc, &grid1).unwrap() - purity_one(&kc).unwrap()).abs());

            let k2 = reduce_drop_first(&k).unwrap();
            let s2 = spectrum_two(&k2).unwrap();
            let grid2 = GridSpec::for_two_modes();
            let vals2 = spectrum_grid_2d(&k2, &grid2).unwrap();
            worst_2d = worst_2d
                .max((svon_of_spectrum(&vals2) - entropies_two(&s2, &[]).s_von).abs());
            worst_pur_2d = worst_pur_2d
                .max((purity_quadrature_2d(&k2, &grid2).unwrap() - purity_two(&k2).unwrap()).abs());
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    report(
        "criterion 6 (grid-oracle equivalence)",
        worst_1d < 1e-5 && worst_2d < 1e-4 && worst_pur_1d < 1e-5 && worst_pur_2d < 1e-4
            && elapsed < 60.0,
        &format!(
            "entropy dev 1D {worst_1d:.2e} (tol 1e-5) / 2D {worst_2d:.2e} (tol 1e-4), purity dev 1D {worst_pur_1d:.2e} / 2D {worst_pur_2d:.2e}, runtime {elapsed:.1}s (< 60s)"
        ),
    );
}

#[test]
fn criterion_7_property_suite() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst: Vec<(&str, f64, f64)> = Vec::new();
    let mut track = |name: &'static str, dev: f64, tol: f64, store: &mut Vec<(&str, f64, f64)>| {
        if let Some(e) = store.iter_mut().find(|e| e.0 == name) {
            e.1 = e.1.max(dev);
        } else {
            store.push((name, dev, tol));
        }
    };

    for _ in 0..1000 {
        let (ci, cf) = random_nondegenerate(&mut rng);
        let t = rng.gen_range(0.0..5.0);
        let bi = decompose(&ci, 1e-9);
        let bf = decompose(&cf, 1e-9);

        for b in [&bi, &bf] {
            track("U orthogonality", orthogonality_defect(b), 1e-12, &mut worst);
            let c = &b.couplings;
            let scale = c.j12.abs().max(c.j13.abs()).max(c.j23.abs()).max(1.0);
            // normalization product identity
            let lhs = b.a_plus * b.a_plus * b.a_minus * b.a_minus;
            let rhs = 1.0 / (12.0 * b.z * b.z * (c.j13 - c.j23) * (c.j13 - c.j23));
            track("A+A- product identity", (lhs - rhs).abs() / rhs.abs(), 1e-10, &mut worst);
            // splitting product identities
            let zp = 2.0 * c.j12 - c.j13 - c.j23 + 2.0 * b.z;
            let zm = 2.0 * c.j12 - c.j13 - c.j23 - 2.0 * b.z;
            let d = c.j13 - c.j23;
            track(
                "Z+Z- identity",
                (zp * zm + 3.0 * d * d).abs() / (scale * scale),
                1e-10,
                &mut worst,
            );
            let xp = c.j12 + c.j23 - 2.0 * c.j13 + b.z;
            let xm = c.j12 + c.j23 - 2.0 * c.j13 - b.z;
            track(
                "X+X- identity",
                (xp * xm + 3.0 * (c.j12 - c.j13) * d).abs() / (scale * scale),
                1e-10,
                &mut worst,
            );
        }

        let li = bi.eigenvalues();
        let lf = bf.eigenvalues();
        let modes = [
            solve_quench(li[0], lf[0], t).unwrap(),
            solve_quench(li[1], lf[1], t).unwrap(),
            solve_quench(li[2], lf[2], t).unwrap(),
        ];
        let basis = if t == 0.0 { &bi } else { &bf };
        let kc_closed = build_full_kernel_closed(basis, &modes).unwrap();
        let kc_generic = build_full_kernel_generic(basis, &modes);
        let mut gdev = 0.0f64;
        let mut gscale = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                gdev = gdev.max((kc_closed.g[i][j] - kc_generic.g[i][j]).norm());
                gscale = gscale.max(kc_closed.g[i][j].norm());
            }
        }
        track("kernel closed vs generic", gdev / gscale, 1e-10, &mut worst);

        let k = kc_closed;
        let w3 = k.omega_prime_product();

        // one-mode reduction, both routes
        let r1c = reduce_keep_third_closed(&k).unwrap();
        let r1g = match marginalize_generic(&k, &[3]).unwrap() {
            ReducedKernel::One(r) => r,
            _ => unreachable!(),
        };
        let rel = |a: f64, b: f64, s: f64| (a - b).abs() / s.abs().max(1e-30);
        let s1 = r1c.omega.abs().max(r1c.r1.abs());
        track("reduction C closed vs generic", rel(r1c.omega, r1g.omega, s1), 1e-9, &mut worst);
        track("reduction C closed vs generic", rel(r1c.y, r1g.y, s1), 1e-9, &mut worst);
        track("reduction C closed vs generic", rel(r1c.r1, r1g.r1, s1), 1e-9, &mut worst);
        track("reduction C closed vs generic", rel(r1c.i1, r1g.i1, s1), 1e-9, &mut worst);
        track("R1 - Y = w3/2", rel(r1c.r1 - r1c.y, w3 / 2.0, w3), 1e-10, &mut worst);
        track("unit trace (one mode)", (r1c.trace() - 1.0).abs(), 1e-12, &mut worst);

        // appendix route, both routes
        let rac = reduce_keep_first_closed(&k).unwrap();
        let rag = match marginalize_generic(&k, &[1]).unwrap() {
            ReducedKernel::One(r) => r,
            _ => unreachable!(),
        };
        let sa = rac.omega.abs().max(rac.r1.abs());
        track("reduction A closed vs generic", rel(rac.omega, rag.omega, sa), 1e-9, &mut worst);
        track("reduction A closed vs generic", rel(rac.y, rag.y, sa), 1e-9, &mut worst);
        track("reduction A closed vs generic", rel(rac.r1, rag.r1, sa), 1e-9, &mut worst);
        track("reduction A closed vs generic", rel(rac.i1, rag.i1, sa), 1e-9, &mut worst);

        // two-mode reduction, both routes, all ten coefficients
        let r2c = reduce_drop_first_closed(&k).unwrap();
        let r2g = match marginalize_generic(&k, &[2, 3]).unwrap() {
            ReducedKernel::Two(r) => r,
            _ => unreachable!(),
        };
        let s2scale = r2c
            .alpha
            .iter()
            .chain(&[r2c.a, r2c.gamma11, r2c.gamma22])
            .fold(0.0f64, |a, &x| a.max(x.abs()));
        let mut dev2 = rel(r2c.a, r2g.a, s2scale);
        for i in 0..4 {
            dev2 = dev2.max(rel(r2c.alpha[i], r2g.alpha[i], s2scale));
            dev2 = dev2.max(rel(r2c.beta[i], r2g.beta[i], s2scale));
        }
        dev2 = dev2.max(rel(r2c.gamma11, r2g.gamma11, s2scale));
        dev2 = dev2.max(rel(r2c.gamma22, r2g.gamma22, s2scale));
        track("reduction BC closed vs generic", dev2, 1e-9, &mut worst);
        track("unit trace (two modes)", (r2c.trace() - 1.0).abs(), 1e-12, &mut worst);

        // determinant identity of the two-mode coefficients
        let det = (r2c.alpha[0] - r2c.gamma11) * (r2c.alpha[1] - r2c.gamma22)
            - (r2c.alpha[2] - r2c.alpha[3]).powi(2);
        track("two-mode determinant identity", rel(det, w3 * r2c.a / 4.0, w3 * r2c.a), 1e-9, &mut worst);

        // purity / ladder identities
        let sp1 = spectrum_one(&r1c).unwrap();
        let p1 = purity_one(&r1c).unwrap();
        track(
            "one-mode purity-ladder identity",
            (p1 - (1.0 - sp1.xi) / (1.0 + sp1.xi)).abs(),
            1e-12,
            &mut worst,
        );
        let sp2 = spectrum_two(&r2c).unwrap();
        let p2 = purity_two(&r2c).unwrap();
        let p2xi = (1.0 - sp2.xi1) / (1.0 + sp2.xi1) * (1.0 - sp2.xi2) / (1.0 + sp2.xi2);
        track("two-mode purity-ladder identity", (p2 - p2xi).abs(), 1e-9, &mut worst);

        // whole-pipeline cross route
        let s_bc = entropies_two(&sp2, &[]).s_von;
        let s_a = entropies_via_a(&rac, &[]).unwrap().s_von;
        track("cross-route entropy identity", (s_bc - s_a).abs(), 1e-9, &mut worst);

        // entanglement present at t = 0, absent only without coupling
        if t == 0.0 {
            track("entangled at t=0", if s_bc > 0.0 { 0.0 } else { 1.0 }, 0.5, &mut worst);
        }
    }

    // Renyi monotonicity on a sampled ladder grid
    let alphas: Vec<f64> = (1..60).map(|i| 0.08 * i as f64).collect();
    let mut mono_dev = 0.0f64;
    for &xi in &[0.02, 0.2, 0.5, 0.85, 0.99] {
        let s = osc3::entropy::Spectrum1 { xi, epsilon: 1.0 };
        let r = entropies_one(&s, &alphas);
        for w in r.s_renyi.windows(2) {
            mono_dev = mono_dev.max(w[1].1 - w[0].1);
        }
    }
    track("Renyi monotonicity in alpha", mono_dev, 1e-12, &mut worst);

    // Ermakov residuals: quench closed forms of the three parameter sets
    let mut quench_res = 0.0f64;
    for schedule in [presets::fig1::<f64>(), presets::fig2::<f64>(), presets::fig3::<f64>()] {
        let ci = couplings_at(&schedule, 0.0).unwrap();
        let cf = couplings_at(&schedule, 1.0).unwrap();
        let li = decompose(&ci, 1e-9).eigenvalues();
        let lf = decompose(&cf, 1e-9).eigenvalues();
        for m in 0..3 {
            let profile = ModeProfile::Quench { wi_sq: li[m], wf_sq: lf[m] };
            let dt = 1e-5;
            let samples: Vec<_> = (0..1_000_000)
                .map(|i| {
                    let ti = i as f64 * dt;
                    (ti, solve_quench(li[m], lf[m], ti).unwrap())
                })
                .collect();
            quench_res = quench_res.max(ermakov_residual(&samples, &profile).unwrap());
        }
    }
    track("Ermakov residual (quench closed form)", quench_res, 1e-7, &mut worst);

    // Ermakov residual of an integrated smooth profile
    let knots: Vec<(f64, f64)> = (0..10_001)
        .map(|i| {
            let ti = i as f64 * 1e-3;
            (ti, 4.0 + ti.sin())
        })
        .collect();
    let profile = ModeProfile::Tabulated { knots };
    let times: Vec<f64> = (0..40_001).map(|i| i as f64 * 2.5e-4).collect();
    let opts = osc3::ermakov::OdeOptions::default();
    let samples = osc3::ermakov::solve_ode_grid(&profile, &times, &opts).unwrap();
    let res = ermakov_residual(&samples, &profile).unwrap();
    track("Ermakov residual (integrated profile)", res, 1e-6, &mut worst);

    // quench / ODE agreement over the three parameter sets
    let mut agree_b = 0.0f64;
    let mut agree_bd = 0.0f64;
    for schedule in [presets::fig1::<f64>(), presets::fig2::<f64>(), presets::fig3::<f64>()] {
        let ci = couplings_at(&schedule, 0.0).unwrap();
        let cf = couplings_at(&schedule, 1.0).unwrap();
        let li = decompose(&ci, 1e-9).eigenvalues();
        let lf = decompose(&cf, 1e-9).eigenvalues();
        for m in 0..3 {
            let profile = ModeProfile::Quench { wi_sq: li[m], wf_sq: lf[m] };
            let traj = solve_ode(&profile, 10.0, 1e-10).unwrap();
            for (tk, s) in traj.knots() {
                let c = solve_quench(li[m], lf[m], tk).unwrap();
                agree_b = agree_b.max((s.b - c.b).abs());
                agree_bd = agree_bd.max((s.bdot - c.bdot).abs());
            }
        }
    }
    track("quench vs ODE agreement (b)", agree_b, 1e-8, &mut worst);
    track("quench vs ODE agreement (b')", agree_bd, 1e-6, &mut worst);

    let elapsed = t0.elapsed().as_secs_f64();
    let mut all_ok = elapsed < 60.0;
    let mut lines = String::new();
    for (name, dev, tol) in &worst {
        let ok = dev < tol;
        all_ok &= ok;
        lines.push_str(&format!("\n    {} {name}: {dev:.2e} (tol {tol:.0e})", if ok { "ok" } else { "VIOLATED" }));
    }
    report(
        "criterion 7 (randomized property suite)",
        all_ok,
        &format!("1000 samples, runtime {elapsed:.1}s (< 60s){lines}"),
    );
}

#[test]
fn criterion_8_no_curve_digitization() {
    // the published curves are not machine-readable; acceptance rests on
    // the exact stated numbers, identities and oracle equivalences above
    report(
        "criterion 8 (no curve digitization required)",
        true,
        "entropy magnitudes enter only through criteria 1-7",
    );
}
