use std::f64::consts::PI;

use nalgebra::{Quaternion, UnitQuaternion};
use proptest::prelude::*;

use minkval::convex::{area_measure, Polytope};
use minkval::corpus;
use minkval::harmonics::legendre_values;
use minkval::integral_geom::{kinematic_target, run, McConfig};
use minkval::valuation::{builtin_spec, evaluate, EvalMode};
use minkval::zonal::{berg, box_n_apply, convolve, ZonalObject, DEFAULT_BERG_TERMS};
use minkval::{AmbientDim, Vec3};

const N3: AmbientDim = AmbientDim::THREE;

fn rotation(q: [f64; 4]) -> nalgebra::Matrix3<f64> {
    UnitQuaternion::from_quaternion(Quaternion::new(q[0], q[1], q[2], q[3])).to_rotation_matrix().into_inner()
}

fn quaternion() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0..1.0f64).prop_filter("nonzero", |q| q.iter().map(|x| x * x).sum::<f64>() > 0.05)
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn legendre_is_bounded_and_normalised(n in 3usize..9, t in -1.0..1.0f64) {
        let p = legendre_values(AmbientDim::new(n).unwrap(), 20, t);
        let one = legendre_values(AmbientDim::new(n).unwrap(), 20, 1.0);
        for k in 0..=20 {
            prop_assert!(p[k].abs() <= 1.0 + 1e-12);
            prop_assert!((one[k] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn convolution_multiplies_multipliers(a in coeffs(7), b in coeffs(7)) {
        let x = ZonalObject::legendre(N3, a, 10).unwrap();
        let y = ZonalObject::legendre(N3, b, 10).unwrap();
        let xy = convolve(&x, &y).unwrap();
        let yx = convolve(&y, &x).unwrap();
        for k in 0..=10 {
            let prod = x.multipliers().values[k] * y.multipliers().values[k];
            prop_assert!((xy.multipliers().values[k] - prod).abs() <= 1e-12 * prod.abs().max(1.0));
            prop_assert_eq!(xy.multipliers().values[k], yx.multipliers().values[k]);
        }
    }

    #[test]
    fn berg_function_inverts_the_box(mut a in coeffs(9)) {
        a[1] = 0.0;
        let f = ZonalObject::legendre(N3, a, 12).unwrap();
        let g = berg(3, 12, N3, DEFAULT_BERG_TERMS).unwrap();
        let back = g.invert(&convolve(&f, &g.object()).unwrap()).unwrap();
        let boxed = convolve(&box_n_apply(&f), &g.object()).unwrap();
        for k in 0..=12 {
            let v = f.multipliers().values[k];
            prop_assert!((back.multipliers().values[k] - v).abs() <= 1e-12 * v.abs().max(1.0));
            prop_assert!((boxed.multipliers().values[k] - v).abs() <= 1e-12 * v.abs().max(1.0));
        }
    }

    #[test]
    fn intrinsic_volumes_are_motion_invariant_and_homogeneous(
        seed in 0u64..1000,
        q in quaternion(),
        shift in prop::array::uniform3(-3.0..3.0f64),
        lambda in 0.2..3.0f64,
    ) {
        let p = corpus::random_hull(seed, 10).unwrap();
        let moved = p.transformed(&rotation(q), &Vec3::from(shift));
        let (v, w, s) = (p.intrinsic_volumes(), moved.intrinsic_volumes(), p.scaled(lambda).intrinsic_volumes());
        for i in 0..4 {
            prop_assert!((v.get(i) - w.get(i)).abs() <= 1e-9 * v.get(i).max(1.0));
            prop_assert!((s.get(i) - lambda.powi(i as i32) * v.get(i)).abs() <= 1e-9 * s.get(i).max(1.0));
        }
        prop_assert!((v.get(0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn area_measures_have_their_masses(seed in 0u64..1000) {
        let p = corpus::random_hull(seed, 12).unwrap();
        let v = p.intrinsic_volumes();
        for i in 0..3 {
            let m = area_measure(&p, i).unwrap();
            prop_assert!((m.total_mass() - v.area_measure_mass(i)).abs() < 1e-9);
            // closed: the centroid of S_i vanishes
            let c = m.integrate(|u| u.x + 2.0 * u.y - 0.5 * u.z, 1e-11).unwrap();
            prop_assert!(c.value.abs() < 1e-8, "degree {} centroid {}", i, c.value);
        }
    }

    #[test]
    fn valuations_are_rotation_equivariant_and_translation_invariant(
        seed in 0u64..1000,
        q in quaternion(),
        shift in prop::array::uniform3(-2.0..2.0f64),
        u in prop::array::uniform3(-1.0..1.0f64),
    ) {
        let u = Vec3::from(u);
        prop_assume!(u.norm() > 0.1);
        let rot = rotation(q);
        let p = corpus::random_hull(seed, 8).unwrap();
        let moved = p.transformed(&rot, &Vec3::from(shift));
        for name in ["projection_body", "mean_width_ball"] {
            let spec = builtin_spec(name, N3, 16).unwrap();
            let a = evaluate(&spec, &p, &[u], EvalMode::Pointwise).unwrap().values()[0];
            let b = evaluate(&spec, &moved, &[rot * u], EvalMode::Pointwise).unwrap().values()[0];
            prop_assert!((a - b).abs() < 1e-8, "{}: {} vs {}", name, a, b);
        }
    }

    #[test]
    fn kinematic_target_is_symmetric_at_degree_zero(s in 0u64..500, t in 0u64..500) {
        let k = corpus::random_hull(s, 8).unwrap();
        let l = corpus::random_hull(t, 8).unwrap();
        let a = kinematic_target(&k, &l, 0).unwrap();
        let b = kinematic_target(&l, &k, 0).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn monte_carlo_runs_are_reproducible(seed in any::<u64>(), samples in 2usize..500, shards in 1usize..9) {
        let cfg = McConfig::new(samples, seed).with_shards(shards);
        let f = |rng: &mut rand_chacha::ChaCha8Rng, out: &mut [f64]| {
            use rand::Rng;
            let x: f64 = rng.random();
            out[0] = (2.0 * PI * x).cos();
            Ok(())
        };
        let a = run(&cfg, 1, f).unwrap();
        let b = run(&cfg, 1, f).unwrap();
        prop_assert_eq!(a.count, samples);
        prop_assert_eq!(a.mean[0].to_bits(), b.mean[0].to_bits());
        prop_assert_eq!(a.stderr()[0].to_bits(), b.stderr()[0].to_bits());
    }
}

#[test]
fn unit_cube_reference_values() {
    let c = Polytope::unit_cube();
    assert!((area_measure(&c, 1).unwrap().total_mass() - 3.0 * PI).abs() < 1e-12);
    assert!((kinematic_target(&c, &c, 0).unwrap() - 11.0).abs() < 1e-12);
}
