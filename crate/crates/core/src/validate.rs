//! Cross-checks run by `superray validate`: static Fresnel reduction,
//! closed form against the jump-condition solve, `v²` convergence of the
//! first-order amplitude, root residuals and permittivity derivatives.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::media::{Medium, PlasmaBandMedium, Side, WeakShockPair};
use crate::poles::{find_pole, pole_asymptotic, DEFAULT_REL_TOL};
use crate::scattering::{
    boundary_solve_oracle, fresnel_normal, reflection_first_order, reflection_full,
    InterfaceScattering,
};

const SEED: u64 = 0x005e_ed0f_5a7e;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        passed,
        detail,
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// A random valid interface: either a linearized weak shock or a pair of
/// plasma-band media, with an offset inside the transparent band.
pub fn random_interface(rng: &mut ChaCha8Rng, v: f64) -> (InterfaceScattering, f64) {
    let a = rng.gen_range(0.5..2.0);
    let delta = log_uniform(rng, 1e-4, 0.1);
    let x = log_uniform(rng, 1e-4, 1.0);
    let scatter = if rng.gen_bool(0.5) {
        InterfaceScattering::weak_shock(WeakShockPair::new(a, 1.0, delta).unwrap(), v).unwrap()
    } else {
        // Side 1 crosses zero below side 2, so ε₁ > 0 wherever ε₂ ≥ 0.
        let a1 = rng.gen_range(0.5..2.0);
        let m1 = PlasmaBandMedium::with_zero_crossing(a1, 1.0 - delta).unwrap();
        let m2 = PlasmaBandMedium::with_zero_crossing(a, 1.0).unwrap();
        InterfaceScattering::from_media(m1.into(), m2.into(), v).unwrap()
    };
    (scatter, x)
}

pub fn check_fresnel_reduction(samples: usize) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_r: f64 = 0.0;
    let mut worst_energy: f64 = 0.0;
    for _ in 0..samples {
        let (s, x) = random_interface(&mut rng, 0.0);
        let (e1, e2) = s.epsilons(x);
        let expected = fresnel_normal(e1, e2);
        for sol in [
            reflection_full(&s, x),
            reflection_first_order(&s, x),
            boundary_solve_oracle(&s, x),
        ] {
            let Ok(sol) = sol else {
                return outcome("fresnel_reduction", false, format!("failed at x={x}"));
            };
            worst_r = worst_r.max((sol.r - expected).abs());
            let energy = sol.r * sol.r + (e2.sqrt() / e1.sqrt()) * sol.t * sol.t;
            worst_energy = worst_energy.max((energy - 1.0).abs());
        }
    }
    outcome(
        "fresnel_reduction",
        worst_r <= 1e-12 && worst_energy <= 1e-10,
        format!("max |r − r_F| = {worst_r:.1e}, max |R + T − 1| = {worst_energy:.1e}"),
    )
}

pub fn check_oracle_equivalence(samples: usize) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < samples {
        let v = log_uniform(&mut rng, 1e-7, 1e-3);
        let (s, x) = random_interface(&mut rng, v);
        let (Ok(full), Ok(oracle)) = (reflection_full(&s, x), boundary_solve_oracle(&s, x)) else {
            continue;
        };
        let (e1, e2) = s.epsilons(x);
        if full.denominator_value.abs() < 1e-3 * (e1.sqrt() + e2.sqrt()) {
            continue;
        }
        worst = worst.max((full.r - oracle.r).abs() / full.r.abs().max(1.0));
        done += 1;
    }
    outcome(
        "oracle_equivalence",
        worst <= 1e-10,
        format!("max relative gap {worst:.1e} over {samples} points"),
    )
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn check_first_order_scaling() -> CheckOutcome {
    let pair = WeakShockPair::new(1.0, 1.0, 1e-3).unwrap();
    let x = 0.05;
    let speeds: Vec<f64> = (0..=15).map(|i| 1e-6 * 10f64.powf(i as f64 / 5.0)).collect();
    let mut gaps = Vec::with_capacity(speeds.len());
    for &v in &speeds {
        let s = InterfaceScattering::weak_shock(pair, v).unwrap();
        match (reflection_full(&s, x), reflection_first_order(&s, x)) {
            (Ok(full), Ok(first)) => gaps.push((full.r - first.r).abs()),
            _ => return outcome("first_order_scaling", false, format!("failed at v={v}")),
        }
    }
    let slope = log_log_slope(&speeds, &gaps);
    outcome(
        "first_order_scaling",
        (slope - 2.0).abs() <= 0.1,
        format!("log-log slope {slope:.4}"),
    )
}

pub fn check_root_residuals() -> CheckOutcome {
    let v = 1e-5;
    let mut worst_ratio: f64 = 1.0;
    for a in [1.0, 2.0] {
        for delta in [1e-4, 1e-3, 1e-2] {
            let s = InterfaceScattering::weak_shock(WeakShockPair::new(a, 1.0, delta).unwrap(), v)
                .unwrap();
            let Ok(Some(p)) = find_pole(&s, DEFAULT_REL_TOL).map(|o| o.pole()) else {
                return outcome("root_residuals", false, format!("no root at a={a} δ={delta}"));
            };
            let limit = 1e-6 * (2.0 * a * delta).sqrt();
            let ratio = p.x_offset / pole_asymptotic(a, v);
            if p.f_residual.abs() > limit || p.x_offset >= 1e-8 || !(0.5..=2.0).contains(&ratio) {
                return outcome(
                    "root_residuals",
                    false,
                    format!("a={a} δ={delta}: x*={:e} residual={:e}", p.x_offset, p.f_residual),
                );
            }
            worst_ratio = if (ratio - 1.0).abs() > (worst_ratio - 1.0).abs() {
                ratio
            } else {
                worst_ratio
            };
        }
    }
    outcome(
        "root_residuals",
        true,
        format!("x*/(a·v²/2) within {worst_ratio:.6} of 1"),
    )
}

pub fn check_derivatives() -> CheckOutcome {
    let plasma = Medium::from(PlasmaBandMedium::new(1.0, 1.0).unwrap());
    let linear = Medium::from(WeakShockPair::new(1.0, 1.0, 1e-3).unwrap().side(Side::Incident));
    let mut worst: f64 = 0.0;
    for medium in [plasma, linear] {
        for i in 0..100 {
            let omega = 10f64.powf(-2.0 + 4.0 * i as f64 / 99.0);
            let h = 1e-6 * omega;
            let fd = (medium.epsilon(omega + h).unwrap() - medium.epsilon(omega - h).unwrap())
                / (2.0 * h);
            let an = medium.depsilon_domega(omega).unwrap();
            worst = worst.max(((fd - an) / an).abs());
        }
    }
    outcome(
        "derivatives",
        worst <= 1e-6,
        format!("max relative gap {worst:.1e}"),
    )
}

/// Runs every check.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        check_fresnel_reduction(1000),
        check_oracle_equivalence(1000),
        check_first_order_scaling(),
        check_root_residuals(),
        check_derivatives(),
    ]
}
