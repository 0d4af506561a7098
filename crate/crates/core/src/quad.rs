//! Adaptive Simpson quadrature.

use crate::scalar::Real;

const MAX_DEPTH: u32 = 50;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> T {
    let two = T::lit(2.0);
    let m = (a + b) / two;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: u32,
) -> T {
    let two = T::lit(2.0);
    let m = (a + b) / two;
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
        return left + right + delta / T::lit(15.0);
    }
    recurse(f, a, m, fa, flm, fm, left, tol / two, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, tol / two, depth - 1)
}

/// Splits `[a, b]` into `pieces` equal panels before refining, which keeps
/// narrow features from being missed by the first coarse Simpson estimate.
pub fn adaptive_simpson_panels<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    tol: T,
    pieces: usize,
) -> T {
    let n = pieces.max(1);
    let h = (b - a) / T::from_usize(n).unwrap();
    let per = tol / T::from_usize(n).unwrap();
    (0..n)
        .map(|k| {
            let lo = a + h * T::from_usize(k).unwrap();
            let hi = if k + 1 == n { b } else { lo + h };
            adaptive_simpson(&f, lo, hi, per)
        })
        .fold(T::zero(), |acc, x| acc + x)
}
