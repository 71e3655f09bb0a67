//! Univariate polynomials in f64: evaluation, derivative, real roots on an
//! interval by sign-change bisection, and global maximization on a closed
//! interval. Degrees stay small (one player's own-strategy payoff), so
//! bisection over a fixed cell partition is plenty.

/// Coefficients in ascending degree; the trailing coefficient is nonzero
/// unless the list is empty (the zero polynomial).
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<f64>,
}

const ROOT_WIDTH: f64 = 1e-12;

impl UniPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| (i + 1) as f64 * c)
                .collect(),
        )
    }

    /// Real roots in the open interval (lo, hi), located by sign changes on
    /// a partition into max(64, 8*deg) equal cells and bisected down to
    /// width 1e-12. Roots without a sign change (even multiplicity) are not
    /// reported; callers that look for maxima do not need them.
    pub fn roots_in_interval(&self, lo: f64, hi: f64) -> Vec<f64> {
        assert!(lo < hi);
        let deg = match self.degree() {
            None | Some(0) => return Vec::new(),
            Some(d) => d,
        };
        let cells = 64.max(8 * deg);
        let step = (hi - lo) / cells as f64;
        let mut roots = Vec::new();
        let mut prev_x = lo;
        let mut prev_v = self.eval(prev_x);
        for k in 1..=cells {
            let x = if k == cells { hi } else { lo + step * k as f64 };
            let v = self.eval(x);
            if prev_v == 0.0 {
                if prev_x > lo {
                    roots.push(prev_x);
                }
            } else if v != 0.0 && prev_v.signum() != v.signum() {
                roots.push(self.bisect(prev_x, x));
            }
            prev_x = x;
            prev_v = v;
        }
        roots
    }

    fn bisect(&self, mut a: f64, mut b: f64) -> f64 {
        let mut fa = self.eval(a);
        while b - a > ROOT_WIDTH {
            let mid = 0.5 * (a + b);
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if fa.signum() != fm.signum() {
                b = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        0.5 * (a + b)
    }

    /// Global maximum on [lo, hi]: candidates are the endpoints and the
    /// critical points inside; ties break toward the smallest argmax.
    pub fn max_on_interval(&self, lo: f64, hi: f64) -> (f64, f64) {
        assert!(lo < hi, "need lo < hi");
        let mut candidates = vec![lo, hi];
        candidates.extend(self.derivative().roots_in_interval(lo, hi));
        candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut best_x = lo;
        let mut best_v = self.eval(lo);
        for &x in &candidates[1..] {
            let v = self.eval(x);
            if v > best_v {
                best_v = v;
                best_x = x;
            }
        }
        (best_x, best_v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_max_at_right_endpoint() {
        let p = UniPoly::new(vec![0.0, 1.0]); // x
        assert_eq!(p.max_on_interval(-1.0, 1.0), (1.0, 1.0));
    }

    #[test]
    fn symmetric_peak_at_zero() {
        let p = UniPoly::new(vec![1.0, 0.0, -1.0]); // 1 - x^2
        let (x, v) = p.max_on_interval(-1.0, 1.0);
        assert!(x.abs() < 1e-9);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_poly_returns_left_endpoint() {
        let p = UniPoly::new(vec![3.5]);
        assert_eq!(p.max_on_interval(-1.0, 1.0), (-1.0, 3.5));
        let z = UniPoly::zero();
        assert_eq!(z.max_on_interval(-2.0, 2.0), (-2.0, 0.0));
    }

    #[test]
    fn plateau_polynomial_matches_dense_grid() {
        // u_2(x, y) with the opponent fixed at y = 0.7166: even in x, so the
        // maximum is a two-endpoint plateau and ties break to the left.
        let y: f64 = 0.7166;
        let c2 = 2.0 * y * y - 1.0 + y;
        let c0 = -4.0 * y * y * y + 4.0 * y;
        let p = UniPoly::new(vec![c0, 0.0, c2]);
        let (x, v) = p.max_on_interval(-1.0, 1.0);
        assert_eq!(x, -1.0);

        let mut grid_best = f64::NEG_INFINITY;
        let n = 1_000_000;
        for k in 0..=n {
            let t = -1.0 + 2.0 * k as f64 / n as f64;
            grid_best = grid_best.max(p.eval(t));
        }
        assert!((v - grid_best).abs() <= 1e-6);
    }

    #[test]
    fn max_dominates_dense_samples_for_random_polys() {
        // seeded LCG so the test is self-contained and deterministic
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let deg = 1 + (next() * 8.0) as usize;
            let coeffs: Vec<f64> = (0..=deg).map(|_| next() * 4.0 - 2.0).collect();
            let p = UniPoly::new(coeffs);
            let (_, v) = p.max_on_interval(-1.0, 1.0);
            for k in 0..10_000 {
                let x = -1.0 + 2.0 * (k as f64 + 0.5) / 10_000.0;
                assert!(
                    v >= p.eval(x) - 1e-8,
                    "max {v} below sample {} at {x}",
                    p.eval(x)
                );
            }
        }
    }
}
