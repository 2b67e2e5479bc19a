use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minkval::convex::{area_measure, slice_halfspace, slice_plane, Halfspace, Polytope};
use minkval::corpus;
use minkval::harmonics::legendre_values;
use minkval::integral_geom::{crofton_intrinsic, random_rotation, McConfig};
use minkval::{AmbientDim, Vec3};

fn unit(rng: &mut ChaCha8Rng) -> Vec3 {
    let v = Vec3::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
    v.normalize()
}

/// `sum_k P_k(u . w_k)` for random poles, a generic smooth test function.
fn harmonic_family(rng: &mut ChaCha8Rng, m: usize) -> Vec<(usize, Vec3)> {
    (0..m).map(|_| (rng.random_range(0..7), unit(rng))).collect()
}

fn integrate_family(p: &Polytope, i: usize, fam: &[(usize, Vec3)]) -> Vec<f64> {
    let meas = area_measure(p, i).unwrap();
    fam.iter()
        .map(|(k, w)| meas.integrate(|u| legendre_values(AmbientDim::THREE, *k, u.dot(w))[*k], 1e-11).unwrap().value)
        .collect()
}

#[test]
fn area_measures_are_valuations() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for s in 0..6 {
        let p = corpus::random_hull(100 + s, 11).unwrap();
        let plane = corpus::random_cutting_plane(&mut rng, &p).unwrap();
        let k = slice_halfspace(&p, &Halfspace { normal: plane.normal, offset: plane.offset });
        let l = slice_halfspace(&p, &Halfspace { normal: -plane.normal, offset: -plane.offset });
        let m = slice_plane(&p, &plane);
        let fam = harmonic_family(&mut rng, 20);
        for i in 0..3 {
            let (a, b, c, d) =
                (integrate_family(&k, i, &fam), integrate_family(&l, i, &fam), integrate_family(&p, i, &fam), integrate_family(&m, i, &fam));
            for j in 0..fam.len() {
                assert!((a[j] + b[j] - c[j] - d[j]).abs() < 1e-7, "hull {s} degree {i}");
            }
        }
    }
}

#[test]
fn area_measures_rotate_with_the_body() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for s in 0..4 {
        let p = corpus::random_hull(200 + s, 9).unwrap();
        let rot = random_rotation(&mut rng);
        let q = p.transformed(&rot, &Vec3::new(0.3, -1.0, 2.0));
        let fam = harmonic_family(&mut rng, 8);
        let moved: Vec<(usize, Vec3)> = fam.iter().map(|(k, w)| (*k, rot * w)).collect();
        for i in 0..3 {
            let (a, b) = (integrate_family(&p, i, &fam), integrate_family(&q, i, &moved));
            for j in 0..fam.len() {
                assert!((a[j] - b[j]).abs() < 1e-9);
            }
        }
        let s0 = area_measure(&p, 0).unwrap().total_mass();
        assert!((s0 - 4.0 * PI).abs() < 1e-12);
    }
}

#[test]
fn sampler_calibration_on_the_ball_proxy() {
    // flats hitting a body have measure V_i, so this pins the flat weights
    let b = corpus::ball_proxy(2).unwrap();
    for i in 1..=2 {
        let r = crofton_intrinsic(&b, i, 0, &McConfig::new(40_000, 30 + i as u64)).unwrap();
        assert!((r.target - b.intrinsic_volumes().get(i)).abs() < 1e-12);
        assert!(r.within(4.0), "{r:?}");
    }
}
