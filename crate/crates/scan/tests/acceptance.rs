//! Acceptance suite. One line per criterion; exits non-zero if any fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::{Matrix3, Schur, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use tripod_core::analytic::*;
use tripod_core::matrix::real_frobenius;
use tripod_core::*;
use tripod_scan::scan::argmax;
use tripod_scan::{run_scan, ScanSpec, SystemConfig};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn config(name: &str) -> SystemConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name);
    SystemConfig::load(&path).unwrap()
}

fn final_pops(
    q: &FanoParams64,
    p: &PulseTriple64,
    pol: &DetuningPolicy64,
    grid: TimeGrid64,
) -> Populations64 {
    propagate(q, p, pol, &AmplitudeVector::basis(0), &grid.with_samples(2))
        .unwrap()
        .final_populations()
}

fn coincident_numeric(weights: [f64; 3], q: f64, area: f64) -> Populations64 {
    let env = Envelope::new(0.0, 1.0);
    let total: f64 = weights.iter().sum();
    let k = area / (total * env.area());
    let p = PulseTriple::coincident(weights.map(|g| g * k), env);
    let grid = TimeGrid::symmetric(8.0).with_tol(1e-11);
    final_pops(&FanoParams::equal(q), &p, &DetuningPolicy::AutoTrap, grid)
}

fn coincident_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for area in [0.5, 1.0, 2.0, 5.0, 10.0] {
        for q in [0.0, 1.0, 5.0] {
            for w in [[1.0, 1.0, 1.0], [1.0, 2.0, 3.0], [2.0, 1.0, 0.0]] {
                let ana = coincident_populations(&CoincidentSpec::new(w, q, area)).unwrap();
                worst = worst.max(coincident_numeric(w, q, area).max_abs_diff(&ana));
                cases += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst < 1e-6 && secs < 10.0,
        format!("{cases} cases, max |numeric - closed form| = {worst:.2e} (< 1e-6), {secs:.2} s (< 10 s)"),
    )
}

fn adiabatic_limits() -> Outcome {
    let want = [4.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0, 1.0 / 3.0];
    let ana = coincident_populations(&CoincidentSpec::new([1.0; 3], 5.0, 50.0))
        .unwrap()
        .as_array();
    let num = coincident_numeric([1.0; 3], 5.0, 50.0).as_array();
    let err = |v: [f64; 4]| {
        v.iter()
            .zip(&want)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    let (ea, en) = (err(ana), err(num));
    outcome(
        ea < 1e-3 && en < 1e-3,
        format!("closed form max err {ea:.2e}, propagated {num:.6?} max err {en:.2e} (< 1e-3)"),
    )
}

fn detuning_plane_maxima(steps: usize, tol: f64) -> Outcome {
    let cfg = config("fig4.toml");
    let spec = match ScanSpec::detuning(&cfg) {
        ScanSpec::Detuning {
            sum, diff, gamma3, ..
        } => ScanSpec::Detuning {
            sum,
            diff,
            steps: [steps, steps],
            gamma3,
        },
        _ => unreachable!(),
    };
    let start = Instant::now();
    let table = run_scan(&cfg, &spec, None).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let mut pass = true;
    let mut parts = Vec::new();
    for (g3, want) in [(0.0, 0.30), (1.0, 0.76), (4.0, 0.95)] {
        let best = table
            .rows
            .iter()
            .filter(|r| r[0] == g3)
            .max_by(|a, b| a[4].total_cmp(&b[4]))
            .unwrap();
        let ok = (best[4] - want).abs() <= tol;
        pass &= ok;
        parts.push(format!(
            "gamma3={g3}: max P2 {:.3} at (sum {:.2}, diff {:.2}), want {want} +- {tol}",
            best[4], best[1], best[2]
        ));
    }
    if steps == 41 {
        pass &= secs < 30.0;
        parts.push(format!("{secs:.1} s (< 30 s)"));
    } else {
        parts.push(format!("{secs:.1} s"));
    }
    outcome(pass, parts.join("; "))
}

fn width_window() -> Outcome {
    let cfg = config("fig3.toml");
    let spec = ScanSpec::width(&cfg).unwrap();
    let table = run_scan(&cfg, &spec, None).unwrap();
    let g3 = 3.0;
    let best = table.rows[argmax(&table, "P2").unwrap()].clone();
    let x = g3 * best[0];
    let in_window = 0.2 < x && x < 8.0;
    let in_margin = 3.0 * 0.2 < x && x < 8.0 / 3.0;
    let tail: Vec<&Vec<f64>> = table.rows.iter().filter(|r| g3 * r[0] >= 30.0).collect();
    let worst = tail
        .iter()
        .min_by(|a, b| a[1].total_cmp(&b[1]))
        .expect("scan reaches gamma3 T >= 30");
    let returns = worst[1] > 0.9;
    outcome(
        in_window && in_margin && returns,
        format!(
            "argmax P2 = {:.3} at gamma3 T = {x:.2} (0.2 < x < 8: {in_window}; factor-3 margin 0.6 < x < 2.67: {in_margin}); \
             min P1 over gamma3 T >= 30 is {:.3} at gamma3 T = {:.1} (want > 0.9)",
            best[2],
            worst[1],
            g3 * worst[0]
        ),
    )
}

fn complete_ionization() -> Outcome {
    let q = FanoParams::equal(50.0);
    let width = 20.0;
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for area in [1.0, 3.0, 10.0] {
        let unit = PulseTriple::new(
            PulseShape::gaussian(1.0, -width, width),
            PulseShape::gaussian(0.2, width, width),
            PulseShape::gaussian(0.2, width, width),
        );
        let a0 = unit.pulse_area(f64::NEG_INFINITY, f64::INFINITY).unwrap();
        let k = area / a0;
        let p = PulseTriple::new(
            unit.pump.with_peak(k),
            unit.stokes.with_peak(0.2 * k),
            unit.control.with_peak(0.2 * k),
        );
        let grid = TimeGrid::symmetric(p.default_span().unwrap());
        let pi = final_pops(&q, &p, &DetuningPolicy::AutoTrap, grid).pi;
        let err = (pi - (1.0 - (-area).exp())).abs();
        worst = worst.max(err);
        parts.push(format!("A={area}: Pi {pi:.4} err {err:.1e}"));
    }
    outcome(worst < 0.02, format!("{} (< 0.02)", parts.join(", ")))
}

fn no_ionization() -> Outcome {
    let q = FanoParams::new(2.0, 5.0, 5.5);
    let width = 20.0;
    let p = PulseTriple::delayed(1.0, 1.0, 10.0, 0.5 * width, width);
    let grid = TimeGrid::symmetric(p.default_span().unwrap()).with_samples(2001);
    let tr = propagate(
        &q,
        &p,
        &DetuningPolicy::AutoTrap,
        &AmplitudeVector::basis(0),
        &grid,
    )
    .unwrap();
    let max = tr.max_ionization();
    outcome(
        max < 0.02,
        format!("T = 20, gamma3 = 10: max Pi along trajectory {max:.2e} (< 0.02)"),
    )
}

fn effective_convergence() -> Outcome {
    let q = FanoParams::new(2.0, 1.0, 1.2);
    let pol = DetuningPolicy::Static {
        delta1: 0.0,
        delta2: 0.0,
    };
    let err = |g3: f64| {
        let p = PulseTriple::delayed(1.0, 1.0, g3, 0.5, 1.0);
        let grid = TimeGrid::symmetric(p.default_span().unwrap()).with_samples(2);
        let full = final_pops(&q, &p, &pol, grid);
        let series = |t| {
            let r = p.evaluate(t);
            effective_two_state(&q, &r, &pol.detunings(&q, &r)).unwrap()
        };
        let init = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let eff = *propagate_effective(series, init, &grid).unwrap().last();
        (full.p1 - eff.p1)
            .abs()
            .max((full.p2 - eff.p2).abs())
            .max((full.pi - eff.pi).abs())
    };
    let rates = [10.0, 20.0, 50.0, 100.0];
    let errs: Vec<f64> = rates.iter().map(|&g| err(g)).collect();
    let monotone = errs.windows(2).all(|w| w[1] < w[0]);
    outcome(
        monotone && errs[2] < 5e-2,
        format!(
            "errors {:.2e}, {:.2e}, {:.2e}, {:.2e} for gamma3 = 10, 20, 50, 100; decreasing: {monotone}; at 50 < 5e-2",
            errs[0], errs[1], errs[2], errs[3]
        ),
    )
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut left = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = left
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        worst = worst.max(d);
        left.remove(k);
    }
    worst
}

fn invariants() -> Outcome {
    let rates = (0.01..3.0f64, 0.01..3.0f64, 0.01..3.0f64)
        .prop_map(|(a, b, c)| RateSnapshot::frozen(a, b, c));
    let fano =
        (-6.0..6.0f64, -6.0..6.0f64, -6.0..6.0f64).prop_map(|(a, b, c)| FanoParams::new(a, b, c));
    let runner = || {
        TestRunner::new(Config {
            cases: 1000,
            failure_persistence: None,
            ..Config::default()
        })
    };
    let mut failures = Vec::new();
    let mut check = |name: &str, r: std::result::Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };

    check(
        "B eigenvalues",
        runner()
            .run(
                &(fano.clone(), rates.clone(), -5.0..5.0f64, -5.0..5.0f64),
                |(q, r, d1, d2)| {
                    let h = assemble_hamiltonian(&q, &r, &Detunings::new(d1, d2));
                    let b = Matrix3::from_fn(|i, j| h.im()[i][j]);
                    let ev = sorted(SymmetricEigen::new(b).eigenvalues.iter().copied().collect());
                    let g = r.total();
                    for (x, w) in ev.iter().zip([-0.5 * g, 0.0, 0.0]) {
                        prop_assert!((x - w).abs() <= 1e-12 * g, "{ev:?}");
                    }
                    Ok(())
                },
            )
            .map_err(|e| e.to_string()),
    );

    check(
        "commutator iff trap",
        runner()
            .run(
                &(fano.clone(), rates.clone(), 0.05..2.0f64, any::<bool>()),
                |(q, r, kick, first)| {
                    let trap = trapping_detunings(&q, &r);
                    let defect = |d: &Detunings64| {
                        let h = assemble_hamiltonian(&q, &r, d);
                        commutator_defect(&h) / (real_frobenius(&h.re()) * real_frobenius(&h.im()))
                    };
                    prop_assert!(defect(&trap) < 1e-12);
                    let off = if first {
                        Detunings::new(trap.delta1 + kick, trap.delta2)
                    } else {
                        Detunings::new(trap.delta1, trap.delta2 - kick)
                    };
                    prop_assert!(defect(&off) > 1e-12);
                    Ok(())
                },
            )
            .map_err(|e| e.to_string()),
    );

    check(
        "orthonormality",
        runner()
            .run(&(fano.clone(), rates.clone()), |(q, r)| {
                let s = adiabatic_states(&mixing_angles(&q, &r));
                for i in 0..3 {
                    for j in 0..3 {
                        let dot: f64 = (0..3).map(|k| s[i][k] * s[j][k]).sum();
                        let want = if i == j { 1.0 } else { 0.0 };
                        prop_assert!((dot - want).abs() < 1e-12);
                    }
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    check(
        "eigen split vs dense",
        runner()
            .run(&(fano.clone(), rates.clone()), |(q, r)| {
                let split = eigen_split(&q, &r).unwrap();
                let h = assemble_hamiltonian(&q, &r, &trapping_detunings(&q, &r));
                let scale = 1.0 + h.frobenius();
                let a = Matrix3::from_fn(|i, j| h.re()[i][j]);
                let dense_a = sorted(SymmetricEigen::new(a).eigenvalues.iter().copied().collect());
                let ours_a = sorted(split.lam_a.to_vec());
                for k in 0..3 {
                    prop_assert!((dense_a[k] - ours_a[k]).abs() < 1e-9 * scale);
                }
                let hn = Matrix3::from_fn(|i, j| h[(i, j)]);
                let dense_h: Vec<Complex64> = Schur::new(hn)
                    .eigenvalues()
                    .unwrap()
                    .iter()
                    .copied()
                    .collect();
                prop_assert!(multiset_distance(&split.lam_h, &dense_h) < 1e-9 * scale);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    let pulses = (
        fano,
        (0.05..3.0f64, 0.05..3.0f64, 0.0..5.0f64),
        -1.5..1.5f64,
        0.3..2.0f64,
        any::<bool>(),
        (-3.0..3.0f64, -3.0..3.0f64),
    );
    check(
        "norm monotone",
        runner()
            .run(&pulses, |(q, (g1, g2, g3), tau, w, trap, (d1, d2))| {
                let p = PulseTriple::delayed(g1, g2, g3, tau, w);
                let policy = if trap {
                    DetuningPolicy::AutoTrap
                } else {
                    DetuningPolicy::Static {
                        delta1: d1,
                        delta2: d2,
                    }
                };
                let grid = TimeGrid::symmetric(p.default_span().unwrap())
                    .with_tol(1e-9)
                    .with_samples(96);
                let tr = propagate(&q, &p, &policy, &AmplitudeVector::basis(0), &grid).unwrap();
                for s in tr.records.windows(2) {
                    prop_assert!(s[1].norm <= s[0].norm + 1e-9);
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    if failures.is_empty() {
        outcome(true, "5 properties x 1000 cases: B spectrum, [A,B] = 0 iff trap, orthonormality, split vs dense, norm")
    } else {
        outcome(false, failures.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("coincident-pulse oracle", coincident_oracle),
        ("adiabatic limits", adiabatic_limits),
        ("detuning-plane maxima (121x121)", || {
            detuning_plane_maxima(121, 0.05)
        }),
        ("detuning-plane maxima smoke (41x41)", || {
            detuning_plane_maxima(41, 0.08)
        }),
        ("width-scan window and adiabatic return", width_window),
        ("complete ionization", complete_ionization),
        ("no-ionization ordering", no_ionization),
        ("effective two-state convergence", effective_convergence),
        ("invariant suite", invariants),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!(
            "{tag} {name}: {} [{:.1} s]",
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
