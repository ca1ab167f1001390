//! Real root isolation for the real-rooted polynomials of the spectral
//! theory: simultaneous Aberth-Ehrlich iteration for initial estimates,
//! Newton polish, then multiplicity clustering. Closed spectral gaps show
//! up as double roots, so the clustering radius has to absorb the nearly
//! conjugate pairs a defective root produces.

use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::polyalg::poly::Poly;
use crate::scalar::Scalar;

/// Clustering radius around a root estimate `r`.
fn cluster_radius(r: f64) -> f64 {
    1e-7 * (1.0 + r.abs())
}

/// Real roots of `p` with multiplicities, sorted ascending.
///
/// With `expect_real_rooted` set, a nonreal factor that survives the
/// clustering tolerance is an error; otherwise nonreal roots are silently
/// dropped. In exact mode, roots of degree <= 2 polynomials with
/// perfect-square discriminants are returned exactly; everything else is
/// computed in floating point and lifted back into the scalar type.
pub fn real_roots<K: Scalar>(p: &Poly<K>, expect_real_rooted: bool) -> Result<Vec<(K, usize)>> {
    if p.is_zero() {
        return Err(SpectralError::InvalidInput(
            "root isolation of the zero polynomial".into(),
        ));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    if K::EXACT {
        if let Some(roots) = exact_low_degree(p, expect_real_rooted)? {
            return Ok(roots);
        }
    }
    let roots = real_roots_f64(&p.to_f64(), expect_real_rooted)?;
    Ok(roots
        .into_iter()
        .map(|(r, m)| (K::from_f64(r), m))
        .collect())
}

/// Exact shortcut for linear and quadratic polynomials; `Ok(None)` means
/// "fall back to floating point".
fn exact_low_degree<K: Scalar>(
    p: &Poly<K>,
    expect_real_rooted: bool,
) -> Result<Option<Vec<(K, usize)>>> {
    match p.degree() {
        Some(1) => {
            let root = -p.coeff(0) / p.coeff(1);
            Ok(Some(vec![(root, 1)]))
        }
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let four = K::from_int(4);
            let two = K::from_int(2);
            let disc = b.clone() * b.clone() - four * a.clone() * c;
            if disc < K::zero() {
                if expect_real_rooted {
                    return Err(SpectralError::NotRealRooted(
                        "negative quadratic discriminant".into(),
                    ));
                }
                return Ok(Some(Vec::new()));
            }
            match disc.sqrt_checked() {
                Some(s) if s.is_zero() => Ok(Some(vec![(-b / (two * a), 2)])),
                Some(s) => {
                    let r1 = (-b.clone() - s.clone()) / (two.clone() * a.clone());
                    let r2 = (-b + s) / (two * a);
                    let mut roots = vec![(r1, 1), (r2, 1)];
                    roots.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
                    Ok(Some(roots))
                }
                None => Ok(None),
            }
        }
        _ => Ok(None),
    }
}

/// Value and derivative by a combined Horner pass.
fn horner2(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::ZERO;
    let mut dp = Complex64::ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Backward-error scale of the polynomial at `|z|`.
fn magnitude_at(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut scale = 0.0;
    let mut power = 1.0;
    for &c in coeffs {
        scale += c.abs() * power;
        power *= r;
    }
    scale.max(f64::MIN_POSITIVE)
}

/// All complex roots of a monic polynomial by the Aberth-Ehrlich method.
/// The starting circle carries an angular offset so symmetric spectra
/// (conjugate quadruples) cannot stall the simultaneous iteration.
fn aberth(monic: &[f64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let radius = 1.0 + monic[..n].iter().map(|c| c.abs()).fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.61 / n as f64 + 0.25;
            radius * Complex64::new(angle.cos(), angle.sin())
        })
        .collect();

    for _ in 0..500 {
        let mut moved = false;
        for k in 0..n {
            let (p, dp) = horner2(monic, z[k]);
            if p.norm() <= 1e-15 * magnitude_at(monic, z[k]) {
                continue;
            }
            let newton = if dp.norm() > f64::MIN_POSITIVE {
                p / dp
            } else {
                // sitting on a critical point: nudge off
                Complex64::new(1e-8 * (1.0 + z[k].norm()), 0.0)
            };
            let mut repulsion = Complex64::ZERO;
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > f64::MIN_POSITIVE {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::ONE - newton * repulsion;
            let step = if denom.norm() > 1e-12 {
                newton / denom
            } else {
                newton
            };
            z[k] -= step;
            if step.norm() > 1e-15 * (1.0 + z[k].norm()) {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

fn real_roots_f64(p: &Poly<f64>, expect_real_rooted: bool) -> Result<Vec<(f64, usize)>> {
    let monic: Vec<f64> = {
        let lead = *p.leading().expect("nonzero polynomial");
        p.coeffs().iter().map(|c| c / lead).collect()
    };
    let n = monic.len() - 1;
    let estimates = aberth(&monic);

    let deriv = p.derivative();
    let mut real_estimates = Vec::new();
    let mut nonreal = 0usize;
    for ev in &estimates {
        if ev.im.abs() <= cluster_radius(ev.re) {
            real_estimates.push(newton_polish(p, &deriv, ev.re));
        } else {
            nonreal += 1;
        }
    }
    if nonreal > 0 && expect_real_rooted {
        return Err(SpectralError::NotRealRooted(format!(
            "{nonreal} nonreal roots beyond tolerance (degree {n})"
        )));
    }

    real_estimates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    for r in real_estimates {
        match clusters.last_mut() {
            Some((c, m)) if (r - *c).abs() <= cluster_radius(r) => {
                // running mean keeps the cluster centroid stable
                *c += (r - *c) / (*m as f64 + 1.0);
                *m += 1;
            }
            _ => clusters.push((r, 1)),
        }
    }

    // a cluster of multiplicity m sits on a root of the (m-1)-th derivative
    for (c, m) in clusters.iter_mut() {
        if *m > 1 {
            let mut q = p.clone();
            for _ in 1..*m {
                q = q.derivative();
            }
            let dq = q.derivative();
            *c = newton_polish(&q, &dq, *c);
        }
    }
    Ok(clusters)
}

fn newton_polish(p: &Poly<f64>, deriv: &Poly<f64>, start: f64) -> f64 {
    let mut x = start;
    for _ in 0..50 {
        let fx = p.eval(&x);
        if fx == 0.0 {
            return x;
        }
        let dx = deriv.eval(&x);
        if dx == 0.0 {
            return x;
        }
        let step = fx / dx;
        let next = x - step;
        if (next - x).abs() <= 1e-16 * (1.0 + x.abs()) {
            return next;
        }
        // refuse to wander off: Newton from an Aberth estimate stays local
        if (next - start).abs() > 1.0 + 2.0 * start.abs() {
            return x;
        }
        x = next;
    }
    x
}
