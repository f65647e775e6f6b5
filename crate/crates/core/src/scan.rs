//! Interval scanning shared by the bandwidth metrics: dense scan over a
//! symmetric span followed by bisection refinement of the two edges.

/// Maximal contiguous interval containing zero on which `pred` holds,
/// located by evaluating `pred` on an `n`-point grid over `[-span, span]`
/// (n is made odd so zero is sampled exactly) and bisecting each edge down
/// to `tol`. Returns `None` when `pred(0)` is false. If the predicate holds
/// through a scan boundary the interval is clipped at that boundary.
pub fn interval_containing_zero(
    pred: impl Fn(f64) -> bool,
    span: f64,
    n: usize,
    tol: f64,
) -> Option<(f64, f64)> {
    let n = if n.is_multiple_of(2) { n + 1 } else { n.max(3) };
    let i0 = (n - 1) / 2;
    let step = span / i0 as f64;
    // centered so that the zero sample is exact
    let x = |i: usize| (i as i64 - i0 as i64) as f64 * step;
    debug_assert_eq!(x(i0), 0.0);
    if !pred(0.0) {
        return None;
    }

    let mut i_hi = i0;
    while i_hi + 1 < n && pred(x(i_hi + 1)) {
        i_hi += 1;
    }
    let hi = if i_hi + 1 == n {
        x(i_hi)
    } else {
        bisect_edge(&pred, x(i_hi), x(i_hi + 1), tol)
    };

    let mut i_lo = i0;
    while i_lo > 0 && pred(x(i_lo - 1)) {
        i_lo -= 1;
    }
    let lo = if i_lo == 0 {
        x(0)
    } else {
        -bisect_edge(|w| pred(-w), -x(i_lo), -x(i_lo - 1), tol)
    };

    Some((lo, hi))
}

/// Bisects the predicate change point in `[inside, outside]` where
/// `pred(inside)` holds and `pred(outside)` does not.
fn bisect_edge(pred: impl Fn(f64) -> bool, inside: f64, outside: f64, tol: f64) -> f64 {
    let (mut a, mut b) = (inside, outside);
    while (b - a).abs() > tol {
        let mid = 0.5 * (a + b);
        if pred(mid) {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
