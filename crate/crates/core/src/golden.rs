//! Golden-section search for convex functions of one variable.

const INV_PHI: f64 = 0.618_033_988_749_894_8; // (sqrt(5) - 1) / 2

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Minimise a unimodal `f` on `[lo, hi]` until the bracket is narrower than
/// `width`. The returned value is the smallest value seen at any evaluated
/// point, including both endpoints.
pub fn minimize<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, width: f64) -> Minimum {
    debug_assert!(lo <= hi);
    let mut best = Minimum {
        arg: lo,
        value: f(lo),
        evaluations: 1,
    };
    let record = |arg: f64, value: f64, best: &mut Minimum| {
        best.evaluations += 1;
        if value < best.value {
            best.arg = arg;
            best.value = value;
        }
    };
    let fh = f(hi);
    record(hi, fh, &mut best);

    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    record(c, fc, &mut best);
    let mut fd = f(d);
    record(d, fd, &mut best);
    while b - a > width {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            record(c, fc, &mut best);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            record(d, fd, &mut best);
        }
    }
    best
}
