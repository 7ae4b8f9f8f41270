//! Small numeric helpers shared by the physics modules.

use num_complex::Complex64;

/// Square root on the branch with non-negative imaginary part.
///
/// Negative real arguments (including a signed-zero imaginary part) map onto
/// the positive imaginary axis. The magnitude/half-sum form keeps full
/// relative precision in both components even when |Im z| ≪ |Re z|.
pub fn sqrt_upper(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if x == 0.0 && y == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let t = ((x.abs() + z.norm()) / 2.0).sqrt();
    // -0.0 compares equal to 0.0, so real negative inputs take the upper branch
    let y_pos = y >= 0.0;
    if x >= 0.0 {
        // principal root is (t, y/2t); flip when its imaginary part is negative
        if y_pos {
            Complex64::new(t, y / (2.0 * t))
        } else {
            Complex64::new(-t, -y / (2.0 * t))
        }
    } else if y_pos {
        Complex64::new(y.abs() / (2.0 * t), t)
    } else {
        Complex64::new(-y.abs() / (2.0 * t), t)
    }
}

/// |a − b| / |b|, falling back to the absolute difference when `b` is zero.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        ((a - b) / b).abs()
    }
}

/// Relative difference of complex numbers, measured against |b|.
pub fn rel_diff_c(a: Complex64, b: Complex64) -> f64 {
    let nb = b.norm();
    if nb == 0.0 {
        (a - b).norm()
    } else {
        (a - b).norm() / nb
    }
}

/// `true` when `a` and `b` agree to `rel` relative tolerance or `abs` absolute.
pub fn approx_eq(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    let diff = (a - b).abs();
    diff <= abs || diff <= rel * a.abs().max(b.abs())
}
