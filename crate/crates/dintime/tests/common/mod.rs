//! Independent high-precision oracle for the Faddeeva function, used by the
//! integration tests. Deliberately shares no code or method with the library
//! implementation: region-split between the Maclaurin series, the large-|z|
//! asymptotic series, direct adaptive quadrature of the defining integral,
//! and Taylor continuation off the real axis (anchored by a quadrature
//! Dawson function). Target accuracy ~1e-13 relative wherever the value is
//! representable in f64.

#![allow(dead_code)]

use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Oracle w(z) for any finite z (lower half plane via the reflection
/// identity w(z) = 2 exp(-z^2) - w(-z), which may overflow for large -Im z).
pub fn faddeeva_oracle(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return 2.0 * (-z * z).exp() - upper(-z);
    }
    upper(z)
}

fn upper(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r <= 2.5 {
        maclaurin(z)
    } else if r >= 7.0 {
        asymptotic(z)
    } else if z.im >= 1.0 {
        integral(z)
    } else {
        taylor_strip(z)
    }
}

/// w(z) = exp(-z^2) + (2i/sqrt(pi)) * D(z) with the entire Dawson series
/// D(z) = sum_m (-2)^m z^{2m+1} / (2m+1)!!. Cancellation-safe for |z| <= 2.5.
fn maclaurin(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut dawson = z;
    for m in 1..200 {
        term *= -2.0 * z2 / (2 * m + 1) as f64;
        dawson += term;
        if term.norm() <= 1e-18 * dawson.norm().max(1e-300) {
            break;
        }
    }
    (-z2).exp() + 2.0 * I / SQRT_PI * dawson
}

/// Asymptotic series w(z) ~ (i/(sqrt(pi) z)) sum_k (2k-1)!!/(2z^2)^k for
/// Im z >= 0, |z| >= 7 (optimal truncation error far below 1e-15 there). On
/// the real axis the exponentially small real part exp(-x^2) is restored.
fn asymptotic(z: Complex64) -> Complex64 {
    let s = 0.5 / (z * z);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        term *= (2 * k + 1) as f64 * s;
        if term.norm() >= last {
            break;
        }
        last = term.norm();
        sum += term;
        if last <= 1e-18 * sum.norm() {
            break;
        }
    }
    let mut w = I / (SQRT_PI * z) * sum;
    if z.im == 0.0 {
        w += (-z * z).exp();
    }
    w
}

/// Adaptive Simpson quadrature of a complex-valued integrand.
#[allow(clippy::too_many_arguments)]
fn simpson_adaptive(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

fn integrate(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, rel_tol: f64) -> Complex64 {
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // tolerance is scaled by the integrand magnitude (not the possibly
    // cancelled integral value) so the recursion always terminates
    let scale = ((fa.norm() + 4.0 * fm.norm() + fb.norm()) * (b - a).abs() / 6.0)
        .max(whole.norm())
        .max(1e-300);
    simpson_adaptive(f, a, b, fa, fm, fb, whole, rel_tol * scale, 30)
}

/// Defining integral w(z) = (i/pi) \int exp(-t^2)/(z-t) dt, usable once the
/// pole sits at least Im z >= 1 away from the contour.
fn integral(z: Complex64) -> Complex64 {
    let f = move |t: f64| (-t * t).exp() / (z - t);
    let v = integrate(&f, -8.0, 8.0, 2e-15);
    I / std::f64::consts::PI * v
}

/// Real-axis anchor for the strip: w(x) = exp(-x^2) + (2i/sqrt(pi)) D(x)
/// with Dawson D(x) = exp(-x^2) \int_0^x exp(t^2) dt by direct quadrature
/// (both factors positive, no cancellation).
fn real_axis(x: f64) -> Complex64 {
    let ax = x.abs();
    if ax <= 2.5 {
        return maclaurin(Complex64::new(x, 0.0));
    }
    if ax >= 7.0 {
        return asymptotic(Complex64::new(x, 0.0));
    }
    let f = |t: f64| Complex64::new((t * t).exp(), 0.0);
    let integral = integrate(&f, 0.0, ax, 2e-15);
    let dawson = (-ax * ax).exp() * integral.re * x.signum();
    Complex64::new((-x * x).exp(), 2.0 / SQRT_PI * dawson)
}

/// Taylor continuation from the real axis up through the low strip
/// 0 <= Im z < 1, 2.5 < |z| < 7, in steps of at most 0.25 so the series
/// stays cancellation-free. Derivatives follow the recurrence
/// w' = -2 z w + 2i/sqrt(pi), w^{(k+1)} = -2 z w^{(k)} - 2k w^{(k-1)}.
fn taylor_strip(z: Complex64) -> Complex64 {
    let steps = (z.im / 0.25).ceil().max(1.0);
    let dy = z.im / steps;
    let mut p = Complex64::new(z.re, 0.0);
    let mut w = real_axis(z.re);
    for _ in 0..steps as usize {
        let dz = Complex64::new(0.0, dy);
        let mut dk_prev = w;
        let mut dk = -2.0 * p * w + 2.0 * I / SQRT_PI;
        let mut fac = dz;
        let mut sum = w + dk * fac;
        for k in 1..80 {
            let next = -2.0 * p * dk - 2.0 * k as f64 * dk_prev;
            dk_prev = dk;
            dk = next;
            fac *= dz / (k + 1) as f64;
            let term = dk * fac;
            sum += term;
            if term.norm() <= 1e-18 * sum.norm().max(1e-300) {
                break;
            }
        }
        w = sum;
        p += dz;
    }
    w
}

/// Real-axis error function by its Maclaurin / complementary asymptotic
/// representations, for checking erf on the real line.
pub fn erf_real_oracle(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 2.0 {
        // erf(x) = (2/sqrt(pi)) sum (-1)^n x^{2n+1} / (n! (2n+1))
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        for n in 1..200 {
            term *= -x2 / n as f64;
            let add = term / (2 * n + 1) as f64;
            sum += add;
            if add.abs() <= 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        2.0 / SQRT_PI * sum
    } else {
        // erfc(x) = (2/sqrt(pi)) \int_x^inf exp(-t^2) dt by direct tail
        // quadrature (positive integrand, no cancellation); the remainder
        // past x+8 is below exp(-16x-64).
        let f = |t: f64| Complex64::new((-t * t).exp(), 0.0);
        let tail = integrate(&f, ax, ax + 8.0, 2e-15).re;
        let erfc = 2.0 / SQRT_PI * tail;
        (1.0 - erfc) * x.signum()
    }
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn oracle_known_values() {
        // w(0) = 1, w(i) = e * erfc(1)
        assert!((faddeeva_oracle(Complex64::new(0.0, 0.0)).re - 1.0).abs() < 1e-14);
        let wi = faddeeva_oracle(Complex64::new(0.0, 1.0));
        assert!((wi.re - 0.427_583_576_155_807).abs() < 1e-14);
        assert!(wi.im.abs() < 1e-15);
    }

    #[test]
    fn oracle_regions_agree_at_seams() {
        // strip continuation vs contour integral, along their shared seam
        // (the strip is only used below Im z = 1)
        for &x in &[2.55, 3.5, 4.5, 5.5, 6.5, 6.9] {
            let z = Complex64::new(x, 1.0);
            let a = integral(z);
            let b = taylor_strip(z);
            assert!((a - b).norm() <= 5e-13 * a.norm(), "z = {z}");
        }
        // maclaurin vs integral overlap
        let z = Complex64::new(1.0, 1.5);
        assert!((maclaurin(z) - integral(z)).norm() <= 1e-13);
        // asymptotic vs integral overlap
        let z = Complex64::new(4.0, 6.0);
        assert!((asymptotic(z) - integral(z)).norm() <= 1e-13 * asymptotic(z).norm());
        // asymptotic vs strip at the outer seam on the real axis side
        let z = Complex64::new(7.0, 0.5);
        assert!((asymptotic(z) - taylor_strip(z)).norm() <= 5e-13 * asymptotic(z).norm());
    }

    #[test]
    fn erf_oracle_values() {
        assert!((erf_real_oracle(1.0) - 0.8427007929497149).abs() < 1e-15);
        assert!((erf_real_oracle(3.0) - 0.9999779095030014).abs() < 1e-15);
        assert!((erf_real_oracle(-1.0) + erf_real_oracle(1.0)).abs() < 1e-16);
        assert!((erf_real_oracle(5.0) - 0.9999999999984626).abs() < 1e-15);
    }
}
