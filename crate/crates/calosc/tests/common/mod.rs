//! Second-opinion eigensolver for the integration tests: Gershgorin bounds,
//! characteristic-polynomial Sturm counts, per-index bisection. Works on raw
//! slices and shares no code with the library solver on purpose.

/// Eigenvalues of the symmetric tridiagonal (diag, off) strictly below x,
/// counted as sign changes along the leading principal minors of T - xI.
/// A vanishing minor takes the sign opposite to its predecessor.
pub fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut changes = 0usize;
    let mut prev_sign = 1i32;
    let mut prev = 1.0f64; // p_{k-1}
    let mut prev_prev = 0.0f64; // p_{k-2}, same running scale
    for k in 0..diag.len() {
        let esq = if k == 0 { 0.0 } else { off[k - 1] * off[k - 1] };
        let p = (diag[k] - x) * prev - esq * prev_prev;
        let sign = if p == 0.0 {
            -prev_sign
        } else if p > 0.0 {
            1
        } else {
            -1
        };
        if sign != prev_sign {
            changes += 1;
        }
        prev_sign = sign;
        prev_prev = prev;
        prev = p;
        // only the sign pattern matters; rescale jointly before the minors
        // drift toward overflow or underflow
        let m = prev.abs().max(prev_prev.abs());
        if m > 1e100 || (m > 0.0 && m < 1e-100) {
            prev /= m;
            prev_prev /= m;
        }
    }
    changes
}

/// All eigenvalues ascending, each bisected to full f64 resolution.
pub fn dense_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert!(n >= 1 && off.len() == n - 1);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..n {
        let r = if k > 0 { off[k - 1].abs() } else { 0.0 }
            + if k + 1 < n { off[k].abs() } else { 0.0 };
        lo = lo.min(diag[k] - r);
        hi = hi.max(diag[k] + r);
    }
    let pad = 1e-8 * (hi - lo).max(1.0);
    let (lo, hi) = (lo - pad, hi + pad);
    (0..n)
        .map(|j| {
            let (mut a, mut b) = (lo, hi);
            loop {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break mid;
                }
                if count_below(diag, off, mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
            }
        })
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
