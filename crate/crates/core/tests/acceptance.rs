//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Reference values are computed here from closed forms and elementary
//! geometry, independently of the library code paths they check.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minkval::convex::{area_measure, Polytope};
use minkval::corpus;
use minkval::harmonics::{regularity_probe, LegendreSeries, ZonalProfile};
use minkval::integral_geom::{
    c_nk_exact, crofton_intrinsic, crofton_minkowski, kinematic_check, q_nij_exact, McConfig, Window,
};
use minkval::valuation::{
    degree1_multipliers, evaluate, lambda_derivative, schneider_datum, steiner_derivative, valuation_identity_check,
    EvalMode, MinkowskiValuationSpec,
};
use minkval::zonal::{
    berg, berg_multiplier_exact, box_multiplier, box_multiplier_exact, box_n_apply, convolve, Atom, ZonalObject,
    DEFAULT_BERG_TERMS,
};
use minkval::{AmbientDim, Vec3};

const N3: AmbientDim = AmbientDim::THREE;
const MC_SAMPLES: usize = 200_000;

type Outcome = Result<String, String>;

// ---------- test-side oracles ----------

/// Classical Legendre polynomial by the three-term recurrence.
fn leg(k: usize, t: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, t);
    if k == 0 {
        return 1.0;
    }
    for m in 1..k {
        let p2 = ((2 * m + 1) as f64 * t * p1 - m as f64 * p0) / (m + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Gauss-Legendre rule on `[-1, 1]` by Newton iteration.
fn gauss(m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 1..m {
                    let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Monomial coefficients of `sum c_k P_k`.
fn to_monomial(c: &[f64]) -> Vec<f64> {
    let d = c.len();
    let mut out = vec![0.0; d.max(1)];
    let (mut p0, mut p1) = (vec![0.0; d + 1], vec![0.0; d + 1]);
    p0[0] = 1.0;
    if d > 1 {
        p1[1] = 1.0;
    }
    for (k, &ck) in c.iter().enumerate() {
        let pk = if k == 0 { &p0 } else { &p1 };
        for (o, &p) in out.iter_mut().zip(pk.iter()) {
            *o += ck * p;
        }
        if k >= 1 {
            let mut p2 = vec![0.0; d + 1];
            for j in 0..d {
                p2[j + 1] += (2 * k + 1) as f64 * p1[j] / (k + 1) as f64;
            }
            for j in 0..=d {
                p2[j] -= k as f64 * p0[j] / (k + 1) as f64;
            }
            p0 = std::mem::replace(&mut p1, p2);
        }
    }
    out
}

fn poly(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |a, &x| a * t + x)
}

fn deriv(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, &x)| k as f64 * x).collect()
}

/// `f + Delta f / 2` on the 2-sphere for a zonal polynomial in monomial form.
fn box3(c: &[f64]) -> Vec<f64> {
    let d1 = deriv(c);
    let d2 = deriv(&d1);
    let mut out = c.to_vec();
    out.resize(c.len() + 2, 0.0);
    // (1 - t^2) f'' - 2 t f'
    for (k, &x) in d2.iter().enumerate() {
        out[k] += x / 2.0;
        out[k + 2] -= x / 2.0;
    }
    for (k, &x) in d1.iter().enumerate() {
        out[k + 1] -= x;
    }
    out
}

/// Berg's function on the 2-sphere in closed form, at angle `th` from the pole.
fn berg3(th: f64) -> f64 {
    let t = th.cos();
    // 1 - t without cancellation
    let one_minus = 2.0 * (th / 2.0).sin().powi(2);
    (1.0 + t * one_minus.ln() + (4.0 / 3.0 - 2f64.ln()) * t) / (2.0 * PI)
}

/// `int_(S^2) f(u . v) g(e . v) dv` with `u . e = t0`, by polar coordinates about `e`.
/// `g` takes the angle from `e` and may be log-singular there, so the polar
/// angle is split into graded panels. `f` must be a polynomial of degree below `nphi`.
fn sphere_convolution(f: &dyn Fn(f64) -> f64, g: &dyn Fn(f64) -> f64, t0: f64, nphi: usize) -> f64 {
    let rule = gauss(16);
    let s0 = (1.0 - t0 * t0).max(0.0).sqrt();
    let mut edges: Vec<f64> = (0..48).map(|m| PI * 0.5f64.powi(48 - m)).collect();
    edges.push(PI);
    let mut total = 0.0;
    let mut lo = 0.0;
    for &hi in &edges {
        for &(x, w) in &rule {
            let th = lo + (hi - lo) * (x + 1.0) / 2.0;
            let (st, ct) = th.sin_cos();
            let mut ring = 0.0;
            for p in 0..nphi {
                let phi = 2.0 * PI * p as f64 / nphi as f64;
                ring += f(t0 * ct + s0 * st * phi.cos());
            }
            total += w * (hi - lo) / 2.0 * st * g(th) * ring * 2.0 * PI / nphi as f64;
        }
        lo = hi;
    }
    total
}

fn fibonacci(m: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / m as f64;
            let r = (1.0 - z * z).sqrt();
            let a = golden * i as f64;
            Vec3::new(r * a.cos(), r * a.sin(), z)
        })
        .collect()
}

/// Surface area and total edge curvature `sum l_e theta_e / 2` from the face data.
fn steiner_coefficients(p: &Polytope) -> (f64, f64) {
    let v = p.vertices();
    let mut area = 0.0;
    for f in p.facets() {
        let c = f.vertices.iter().fold(Vec3::zeros(), |a, &i| a + v[i]) / f.vertices.len() as f64;
        // order around the centroid, independent of the stored order
        let e1 = (v[f.vertices[0]] - c).normalize();
        let e2 = f.normal.cross(&e1);
        let mut ring: Vec<Vec3> = f.vertices.iter().map(|&i| v[i]).collect();
        ring.sort_by(|a, b| {
            let fa = (a - c).dot(&e2).atan2((a - c).dot(&e1));
            let fb = (b - c).dot(&e2).atan2((b - c).dot(&e1));
            fa.total_cmp(&fb)
        });
        for k in 0..ring.len() {
            area += (ring[k] - c).cross(&(ring[(k + 1) % ring.len()] - c)).norm() / 2.0;
        }
    }
    let fs = p.facets();
    let curv = p
        .edges()
        .iter()
        .map(|e| {
            let th = fs[e.facets[0]].normal.dot(&fs[e.facets[1]].normal).clamp(-1.0, 1.0).acos();
            (v[e.a] - v[e.b]).norm() * th / 2.0
        })
        .sum();
    (area, curv)
}

// ---------- criteria ----------

fn multiplier_exactness() -> Outcome {
    let start = Instant::now();
    let r = |a: i64, b: i64| Rational64::new(a, b);
    let heads_g = [r(1, 1), r(0, 1), r(-1, 2), r(-1, 5)];
    let heads_b = [r(1, 1), r(0, 1), r(-2, 1), r(-5, 1)];
    for k in 0..4 {
        if berg_multiplier_exact(3, k) != heads_g[k] || box_multiplier_exact(3, k) != heads_b[k] {
            return Err(format!("leading value mismatch at k={k}"));
        }
    }
    let g3 = berg(3, 32, N3, DEFAULT_BERG_TERMS).map_err(|e| e.to_string())?;
    for k in 0..=32i64 {
        let g = if k == 1 { r(0, 1) } else { r(2, (1 - k) * (k + 2)) };
        let b = r(1, 1) - r(k * (k + 1), 2);
        let ku = k as usize;
        if berg_multiplier_exact(3, ku) != g || box_multiplier_exact(3, ku) != b {
            return Err(format!("exact mismatch at k={k}"));
        }
        let gf = *g.numer() as f64 / *g.denom() as f64;
        let bf = *b.numer() as f64 / *b.denom() as f64;
        if g3.native[ku] != gf || box_multiplier(3, ku) != bf {
            return Err(format!("float table differs from the exact value at k={k}"));
        }
    }
    let dt = start.elapsed();
    if dt > Duration::from_secs(1) {
        return Err(format!("took {dt:?}"));
    }
    Ok(format!("k <= 32 exact, {:.1} ms", dt.as_secs_f64() * 1e3))
}

fn berg_inversion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let kmax = 16;
    let g3 = berg(3, kmax, N3, DEFAULT_BERG_TERMS).map_err(|e| e.to_string())?.object();
    // the product box_k * g_k is 1 in rational arithmetic for every k != 1
    for k in (0..=kmax).filter(|&k| k != 1) {
        if box_multiplier_exact(3, k) * berg_multiplier_exact(3, k) != Rational64::from_integer(1) {
            return Err(format!("rational product differs from 1 at k={k}"));
        }
    }
    let mut worst_mult: f64 = 0.0;
    let mut worst_point: f64 = 0.0;
    for _ in 0..50 {
        let c = corpus::random_legendre_coeffs(&mut rng, 8, true);
        let f = ZonalObject::legendre(N3, c.clone(), kmax).map_err(|e| e.to_string())?;
        let h = convolve(&box_n_apply(&f), &g3).map_err(|e| e.to_string())?;
        for k in 0..=kmax {
            let (a, b) = (h.multipliers().values[k], f.multipliers().values[k]);
            worst_mult = worst_mult.max((a - b).abs() / b.abs().max(1e-300).max(1e-3));
        }
        let lib = LegendreSeries::from_multipliers(N3, &h.multipliers().values);
        let mono = to_monomial(&c);
        let bx = box3(&mono);
        for &t0 in &[-0.95, -0.6, -0.2, 0.0, 0.3, 0.7, 0.97] {
            let direct = sphere_convolution(&|t| poly(&bx, t), &berg3, t0, 24);
            worst_point = worst_point.max((lib.value(t0) - direct).abs());
            worst_point = worst_point.max((poly(&mono, t0) - direct).abs());
        }
    }
    let detail = format!("multiplier rel. diff {worst_mult:.2e}, pointwise {worst_point:.2e}");
    if worst_mult <= 1e-13 && worst_point <= 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn funk_hecke() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rule = gauss(24);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let cf = corpus::random_legendre_coeffs(&mut rng, 10, false);
        let cg = corpus::random_legendre_coeffs(&mut rng, 10, false);
        let f = ZonalObject::legendre(N3, cf.clone(), 8).map_err(|e| e.to_string())?;
        let g = ZonalObject::legendre(N3, cg.clone(), 8).map_err(|e| e.to_string())?;
        let h = convolve(&f, &g).map_err(|e| e.to_string())?;
        let (mf, mg) = (to_monomial(&cf), to_monomial(&cg));
        let hv: Vec<f64> =
            rule.iter().map(|&(t, _)| sphere_convolution(&|s| poly(&mf, s), &|th| poly(&mg, th.cos()), t, 24)).collect();
        for k in 0..=8 {
            let direct: f64 = 2.0 * PI * rule.iter().zip(&hv).map(|(&(t, w), h)| w * h * leg(k, t)).sum::<f64>();
            worst = worst.max((direct - h.multipliers().values[k]).abs());
        }
    }
    let detail = format!("max |direct - product| = {worst:.2e} over k <= 8");
    if worst <= 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn area_measure_law() -> Outcome {
    let mut names = vec!["cube".to_string(), "simplex".into(), "octahedron".into()];
    names.extend((0..corpus::RANDOM_HULLS).map(|s| format!("random_hull_{s:02}")));
    let mut worst: f64 = 0.0;
    for name in &names {
        let p = corpus::load_body(name).map_err(|e| format!("{name}: {e}"))?;
        let (s, m) = steiner_coefficients(&p);
        for (i, expect) in [(0, 4.0 * PI), (1, m), (2, s)] {
            let got = area_measure(&p, i).map_err(|e| e.to_string())?.total_mass();
            worst = worst.max((got - expect).abs());
        }
    }
    let cube = Polytope::unit_cube();
    let s1 = area_measure(&cube, 1).map_err(|e| e.to_string())?.total_mass();
    let s2 = area_measure(&cube, 2).map_err(|e| e.to_string())?.total_mass();
    let detail = format!("{} bodies, max diff {worst:.2e}; cube S_1 = {s1:.12}, S_2 = {s2:.12}", names.len());
    if worst <= 1e-9 && (s1 - 3.0 * PI).abs() <= 1e-9 && (s2 - 6.0).abs() <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn valuation_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dirs = fibonacci(50);
    let (mut worst, mut degenerate): (f64, usize) = (0.0, 0);
    for c in 0..100u64 {
        let p = corpus::random_hull(5000 + c, 10).map_err(|e| e.to_string())?;
        let spec = corpus::random_spec(&mut rng, 32).map_err(|e| e.to_string())?;
        let plane = corpus::random_cutting_plane(&mut rng, &p).map_err(|e| e.to_string())?;
        let r = valuation_identity_check(&spec, &p, &plane, &dirs, EvalMode::Auto).map_err(|e| e.to_string())?;
        worst = worst.max(r.residual);
        degenerate += usize::from(r.degenerate);
    }
    let detail = format!("sup residual {worst:.2e} ({degenerate} degenerate cuts)");
    if worst <= 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lambda_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let dirs = fibonacci(10);
    let mut worst: f64 = 0.0;
    for c in 0..20u64 {
        let p = corpus::random_hull(6000 + c, 9).map_err(|e| e.to_string())?;
        let spec = corpus::random_spec(&mut rng, 32).map_err(|e| e.to_string())?;
        let fd = steiner_derivative(&spec, &p, &dirs, 0.05, EvalMode::Auto).map_err(|e| e.to_string())?;
        let lam = evaluate(&lambda_derivative(&spec), &p, &dirs, EvalMode::Auto).map_err(|e| e.to_string())?.values();
        for (a, b) in fd.iter().zip(&lam) {
            worst = worst.max((a - b).abs());
        }
    }
    let detail = format!("max |finite difference - Lambda| = {worst:.2e}");
    if worst <= 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn schneider_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let kmax = 32;
    let (mut violations, mut literal, mut worst_oracle) = (0usize, 0usize, 0.0f64);
    for _ in 0..50 {
        let atoms: Vec<Atom> = (0..rng.random_range(1..=4))
            .map(|_| Atom { t: rng.random_range(-1.0..=1.0), mass: rng.random::<f64>() })
            .collect();
        let dens: f64 = rng.random::<f64>();
        let nu = ZonalObject::atoms(N3, atoms.clone(), kmax)
            .and_then(|a| a.add(&ZonalObject::constant(N3, dens, kmax)))
            .map_err(|e| e.to_string())?;
        let spec = MinkowskiValuationSpec::single(1, schneider_datum(&nu).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let a = degree1_multipliers(&spec).map_err(|e| e.to_string())?;
        // multipliers of the generating measure, summed directly
        for k in (0..=kmax).filter(|&k| k != 1) {
            let direct = atoms.iter().map(|x| x.mass * leg(k, x.t)).sum::<f64>() + if k == 0 { 4.0 * PI * dens } else { 0.0 };
            worst_oracle = worst_oracle.max((a.values[k] - direct).abs());
            if a.values[k].abs() > a.values[0] * (1.0 + 1e-12) {
                violations += 1;
            }
        }
        // box_3 of the measure itself, for the ledger
        let b = box_n_apply(&nu);
        literal += usize::from((2..=kmax).any(|k| b.multipliers().values[k].abs() > b.multipliers().values[0]));
    }
    let detail = format!(
        "{violations} violations; multipliers match the measure to {worst_oracle:.1e}; \
         box_3 of the measure itself exceeds a_0 for {literal}/50"
    );
    if violations == 0 && worst_oracle <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn crofton_classical(seed: u64) -> Result<(String, Vec<String>), String> {
    let cube = Polytope::unit_cube();
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    for (i, j, target) in [(1, 1, 1.5 * PI), (2, 0, 3.0)] {
        let start = Instant::now();
        let r = crofton_intrinsic(&cube, i, j, &McConfig::new(MC_SAMPLES, seed)).map_err(|e| e.to_string())?;
        let dt = start.elapsed();
        let line = format!("(i,j)=({i},{j}) est {:.5} +- {:.5} target {:.5} z {:+.2} in {:.2}s", r.estimate, r.stderr, target, r.z, dt.as_secs_f64());
        if (r.target - target).abs() > 1e-12 || !r.within(3.0) || r.stderr >= 0.03 || dt > Duration::from_secs(60) {
            return Err(line);
        }
        lines.push(line);
        reports.push(serde_json::to_string(&r).unwrap());
    }
    Ok((lines.join("; "), reports))
}

fn kinematic(seed: u64) -> Result<(String, String), String> {
    let c = Polytope::unit_cube();
    let start = Instant::now();
    let r = kinematic_check(&c, &c, 0, Window::Adaptive, &McConfig::new(MC_SAMPLES, seed)).map_err(|e| e.to_string())?;
    let dt = start.elapsed();
    // 1 + 9/2 + 9/2 + 1
    let target = 11.0;
    let line = format!(
        "direct {:.4} +- {:.4} (target {target}, z {:+.2}); Hadwiger sum {:.4} +- {:.4} (z {:+.2}); {:.1}s",
        r.direct.estimate, r.direct.stderr, r.direct.z, r.consistency.rhs, r.consistency.rhs_stderr, r.consistency.z,
        dt.as_secs_f64()
    );
    let ok = (r.direct.target - target).abs() < 1e-12
        && r.direct.within(3.0)
        && r.consistency.within(3.0)
        && dt < Duration::from_secs(300);
    if ok {
        Ok((line, serde_json::to_string(&r).unwrap()))
    } else {
        Err(line)
    }
}

fn crofton_constants(seed: u64) -> Result<(String, String), String> {
    let one = (Rational64::from_integer(1), 0);
    let c31 = c_nk_exact(3, 1).map_err(|e| e.to_string())?;
    let q311 = q_nij_exact(3, 1, 1).map_err(|e| e.to_string())?;
    if c31 != one || q311 != one {
        return Err(format!("c_31 = {c31:?}, q_311 = {q311:?}"));
    }
    let mu = ZonalObject::dirac_pole(N3, 8);
    let axis = Vec3::new(1.0, 2.0, 3.0);
    let r = crofton_minkowski(&Polytope::unit_cube(), &mu, 1, 1, &[0, 2, 3, 4], &axis, &McConfig::new(MC_SAMPLES, seed))
        .map_err(|e| e.to_string())?;
    let rows: Vec<String> =
        r.rows.iter().map(|d| format!("k={} {:+.4}/{:+.4} z {:+.2}", d.k, d.lhs, d.rhs, d.z)).collect();
    let line = format!("c_31 = q_311 = 1 exact; {}", rows.join(", "));
    // S_2 of the cube has mass 6 and the lifted circle Berg function has a_0 = pi^2 / 4
    if r.passes() && (r.rows[0].rhs - 1.5 * PI * PI).abs() < 1e-6 {
        Ok((line, serde_json::to_string(&r).unwrap()))
    } else {
        Err(line)
    }
}

fn regularity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let family: Vec<LegendreSeries> = (0..50).map(|_| corpus::random_zonal_series(&mut rng, N3, 8, true)).collect();
    let refs: Vec<&dyn ZonalProfile> = family.iter().map(|f| f as &dyn ZonalProfile).collect();
    let r = regularity_probe(&refs, 2.0, 24).map_err(|e| e.to_string())?;
    // int_(-1)^1 Delta f = [(1 - t^2) f'] vanishes; recomputed with a separate rule
    let rule = gauss(20);
    let own = family
        .iter()
        .map(|f| {
            rule.iter()
                .map(|&(t, w)| {
                    let (_, d1, d2) = f.eval3(t);
                    w * ((1.0 - t * t) * d2 - 2.0 * t * d1)
                })
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max);
    let lo = r.samples.iter().map(|s| s.ratio_box).fold(f64::INFINITY, f64::min);
    let detail = format!(
        "max |flux| {:.1e} (independent {own:.1e}); C2/C0 ratios: box in [{lo:.3}, {:.3}], D_q up to {:.3}",
        r.max_abs_flux, r.sup_ratio_box, r.sup_ratio_dq
    );
    if r.max_abs_flux <= 1e-8 && own <= 1e-8 && r.sup_ratio_box.is_finite() && r.sup_ratio_dq.is_finite() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, r: Outcome| {
        match r {
            Ok(d) => println!("PASS {id:>2} {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {d}");
            }
        }
    };
    report(1, "multiplier exactness", multiplier_exactness());
    report(2, "Berg inversion", berg_inversion());
    report(3, "Funk-Hecke", funk_hecke());
    report(4, "area-measure totals", area_measure_law());
    report(5, "valuation identity", valuation_identity());
    report(6, "Lambda consistency", lambda_consistency());
    report(7, "Schneider bound", schneider_bound());

    let c8 = crofton_classical(8);
    let c9 = kinematic(9);
    let c10 = crofton_constants(10);
    report(8, "Crofton, unit cube", c8.as_ref().map(|x| x.0.clone()).map_err(Clone::clone));
    report(9, "kinematic, two cubes", c9.as_ref().map(|x| x.0.clone()).map_err(Clone::clone));
    report(10, "Crofton for Minkowski valuations", c10.as_ref().map(|x| x.0.clone()).map_err(Clone::clone));
    report(11, "regularity probe", regularity());

    // same seeds again, on a pool of a different size
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().expect("thread pool");
    let (d8, d9, d10) = pool.install(|| (crofton_classical(8), kinematic(9), crofton_constants(10)));
    let same = matches!((&c8, &d8), (Ok(a), Ok(b)) if a.1 == b.1)
        && matches!((&c9, &d9), (Ok(a), Ok(b)) if a.1 == b.1)
        && matches!((&c10, &d10), (Ok(a), Ok(b)) if a.1 == b.1);
    report(
        12,
        "determinism",
        if same {
            Ok("criteria 8-10 rerun bit-identical".into())
        } else {
            Err("a rerun differs or failed".into())
        },
    );

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
