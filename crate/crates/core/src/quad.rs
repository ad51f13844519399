//! Adaptive 1-D quadrature.
//!
//! Recursive Simpson with Richardson correction; the returned error estimate
//! is the accumulated magnitude of the correction terms, which in practice
//! brackets the true error for smooth integrands.

/// Result of one quadrature run.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

struct Worker<'a, F: Fn(f64) -> f64> {
    f: &'a F,
    evals: usize,
    err: f64,
    max_depth: usize,
}

impl<'a, F: Fn(f64) -> f64> Worker<'a, F> {
    fn eval(&mut self, x: f64) -> f64 {
        self.evals += 1;
        (self.f)(x)
    }

    fn recurse(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = self.eval(0.5 * (a + m));
        let rm = self.eval(0.5 * (m + b));
        let left = simpson(fa, lm, fm, m - a);
        let right = simpson(fm, rm, fb, b - m);
        let delta = left + right - whole;
        if depth >= self.max_depth || delta.abs() <= 15.0 * eps {
            self.err += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        self.recurse(a, m, fa, lm, fm, left, 0.5 * eps, depth + 1)
            + self.recurse(m, b, fm, rm, fb, right, 0.5 * eps, depth + 1)
    }
}

/// Integrate `f` over `[a, b]` to absolute tolerance `eps`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, eps: f64) -> QuadResult {
    let mut w = Worker { f: &f, evals: 0, err: 0.0, max_depth: 48 };
    let fa = w.eval(a);
    let m = 0.5 * (a + b);
    let fm = w.eval(m);
    let fb = w.eval(b);
    let whole = simpson(fa, fm, fb, b - a);
    let value = w.recurse(a, b, fa, fm, fb, whole, eps, 0);
    QuadResult { value, abs_error: w.err, evaluations: w.evals }
}

/// Integrate over a list of panel break points, summing per-panel results.
///
/// Useful when the integrand has a known peak or an endpoint with rapidly
/// varying derivatives: seeding panels there keeps the recursion shallow.
pub fn adaptive_simpson_panels<F: Fn(f64) -> f64>(f: F, breaks: &[f64], eps: f64) -> QuadResult {
    assert!(breaks.len() >= 2, "need at least one panel");
    let per_panel = eps / (breaks.len() - 1) as f64;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut evals = 0;
    for w in breaks.windows(2) {
        let r = adaptive_simpson(&f, w[0], w[1], per_panel);
        value += r.value;
        err += r.abs_error;
        evals += r.evaluations;
    }
    QuadResult { value, abs_error: err, evaluations: evals }
}
