/// γ_k: the largest positive real root of x^{k+4} − 2x^{k+3} + x² − x + 1.
///
/// The polynomial is positive at 2 and vanishes at 1, and its largest root
/// lies in (1, 2). A downward scan from 2 finds the first sign change, which
/// bisection then narrows to within `tol`.
pub fn gamma_k(k: u32, tol: f64) -> f64 {
    assert!(k >= 1 && tol > 0.0, "gamma_k needs k >= 1 and tol > 0");
    let n = k as i32;
    let f = |x: f64| x.powi(n + 4) - 2.0 * x.powi(n + 3) + x * x - x + 1.0;
    const STEPS: u32 = 4096;
    let mut hi = 2.0;
    let mut lo = hi;
    for i in 1..=STEPS {
        let x = 2.0 - f64::from(i) / f64::from(STEPS);
        if f(x) <= 0.0 {
            lo = x;
            break;
        }
        hi = x;
    }
    assert!(lo < hi, "no sign change in (1, 2] for k = {k}");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
