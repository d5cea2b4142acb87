//! One-dimensional maximization helpers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Brackets `[x_{i-1}, x_{i+1}]` around the grid points where `f` is locally
/// maximal on `n` equally spaced samples of `[a, b]`, best first.
pub(crate) fn grid_brackets(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    n: usize,
    periodic: bool,
) -> Vec<(f64, f64, f64)> {
    let h = (b - a) / n as f64;
    let count = if periodic { n } else { n + 1 };
    let vals: Vec<f64> = (0..count).map(|i| f(a + h * i as f64)).collect();
    let mut out = Vec::new();
    for i in 0..count {
        let left = if i > 0 {
            Some(vals[i - 1])
        } else if periodic {
            Some(vals[count - 1])
        } else {
            None
        };
        let right = if i + 1 < count {
            Some(vals[i + 1])
        } else if periodic {
            Some(vals[0])
        } else {
            None
        };
        let v = vals[i];
        if left.is_none_or(|l| v >= l) && right.is_none_or(|r| v >= r) {
            let x = a + h * i as f64;
            let lo = if periodic { x - h } else { (x - h).max(a) };
            let hi = if periodic { x + h } else { (x + h).min(b) };
            out.push((lo, hi, v));
        }
    }
    out.sort_by(|p, q| q.2.total_cmp(&p.2));
    out
}
