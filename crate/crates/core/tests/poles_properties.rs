use superray::media::WeakShockPair;
use superray::poles::{find_pole, DEFAULT_REL_TOL};
use superray::scattering::{reflection_first_order, InterfaceScattering};

fn scatter(a: f64, delta: f64, v: f64) -> InterfaceScattering {
    InterfaceScattering::weak_shock(WeakShockPair::new(a, 1.0, delta).unwrap(), v).unwrap()
}

// Reference root from an independent 50-digit bisection.
const X_STAR_REF: f64 = 4.99999552937e-11;

#[test]
fn reference_root_matches_high_precision_bisection() {
    let p = find_pole(&scatter(1.0, 1e-3, 1e-5), DEFAULT_REL_TOL).unwrap().pole().unwrap();
    assert!(((p.x_offset - X_STAR_REF) / X_STAR_REF).abs() < 1e-9, "{}", p.x_offset);
}

#[test]
fn amplitude_blows_up_at_the_root() {
    let s = scatter(1.0, 1e-3, 1e-5);
    let p = find_pole(&s, DEFAULT_REL_TOL).unwrap().pole().unwrap();
    let r = reflection_first_order(&s, p.x_offset).unwrap();
    assert!(r.r.abs() > 1e3, "|r| = {}", r.r.abs());
}

#[test]
fn gain_on_both_sides_of_the_root() {
    for (a, delta, v) in [(1.0, 1e-3, 1e-5), (2.0, 1e-2, 1e-4), (1.0, 1e-4, 1e-6)] {
        let s = scatter(a, delta, v);
        let x = find_pole(&s, DEFAULT_REL_TOL).unwrap().pole().unwrap().x_offset;
        for side in [-1.0, 1.0] {
            let r = reflection_first_order(&s, x * (1.0 + side * 1e-3)).unwrap().r;
            assert!(r.abs() > 1.0, "a={a} δ={delta} v={v} side={side}: |r| = {}", r.abs());
        }
    }
}

#[test]
fn root_stays_close_to_crossing_over_grid() {
    for a in [0.5, 1.0, 1.5, 2.0] {
        for delta in [1e-4, 3e-4, 1e-3, 3e-3, 1e-2] {
            for v in [1e-7, 1e-6, 1e-5, 3e-5, 1e-4] {
                let p = find_pole(&scatter(a, delta, v), DEFAULT_REL_TOL)
                    .unwrap()
                    .pole()
                    .unwrap();
                assert!(
                    p.x_offset > 0.0 && p.x_offset < 1e-8,
                    "a={a} δ={delta} v={v}: x* = {:e}",
                    p.x_offset
                );
                let ratio = p.x_offset / p.asymptotic_prediction;
                assert!((0.5..=2.0).contains(&ratio), "ratio {ratio}");
            }
        }
    }
}

#[test]
fn no_pole_at_rest() {
    assert!(!find_pole(&scatter(1.0, 1e-3, 0.0), DEFAULT_REL_TOL).unwrap().is_pole());
}
