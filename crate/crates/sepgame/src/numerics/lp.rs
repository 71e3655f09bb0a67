//! Linear feasibility via a phase-one simplex.
//!
//! The program holds equality rows, inequality rows in the `A x <= b`
//! convention, and per-variable lower bounds (finite, or explicitly free).
//! Feasibility is decided by minimizing total artificial-variable mass with
//! Bland's rule for anti-cycling; the program is feasible iff the phase-one
//! optimum is at most the tolerance. No optimization phase is provided.

use super::matrix::Matrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VarBound {
    Finite(f64),
    Free,
}

#[derive(Clone, Debug)]
pub struct FeasibilityProgram {
    pub eq_lhs: Matrix<f64>,
    pub eq_rhs: Vec<f64>,
    pub ineq_lhs: Matrix<f64>,
    pub ineq_rhs: Vec<f64>,
    pub var_lower_bounds: Vec<VarBound>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Feasible(Vec<f64>),
    Infeasible,
}

impl FeasibilityProgram {
    /// Program over `n` nonnegative variables with no constraints yet.
    pub fn nonneg(n: usize) -> Self {
        Self {
            eq_lhs: Matrix::zeros(0, n),
            eq_rhs: Vec::new(),
            ineq_lhs: Matrix::zeros(0, n),
            ineq_rhs: Vec::new(),
            var_lower_bounds: vec![VarBound::Finite(0.0); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.var_lower_bounds.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.eq_lhs.cols() != n || self.ineq_lhs.cols() != n {
            return Err(Error::Dimension(format!(
                "constraint columns ({}, {}) do not match {} variables",
                self.eq_lhs.cols(),
                self.ineq_lhs.cols(),
                n
            )));
        }
        if self.eq_lhs.rows() != self.eq_rhs.len() || self.ineq_lhs.rows() != self.ineq_rhs.len() {
            return Err(Error::Dimension(
                "constraint matrix and right-hand side row counts differ".into(),
            ));
        }
        Ok(())
    }
}

/// Numerical guard for pivot selection; feasibility itself is judged
/// against the caller's tolerance.
const PIVOT_EPS: f64 = 1e-11;

/// Find a point satisfying every constraint of `p` (within `tol`), or
/// report infeasibility.
pub fn lp_feasible(p: &FeasibilityProgram, tol: f64) -> Result<LpOutcome> {
    p.validate()?;
    let n = p.num_vars();
    let me = p.eq_lhs.rows();
    let mi = p.ineq_lhs.rows();
    let m = me + mi;

    // variable transform: x_j = lb_j + y_j (y >= 0), or x_j = y+ - y- for
    // free variables
    let mut col_of_var = Vec::with_capacity(n);
    let mut ny = 0usize;
    for bound in &p.var_lower_bounds {
        match bound {
            VarBound::Finite(_) => {
                col_of_var.push((ny, None));
                ny += 1;
            }
            VarBound::Free => {
                col_of_var.push((ny, Some(ny + 1)));
                ny += 2;
            }
        }
    }

    let ncols = ny + mi + m; // structural + slacks + artificials (upper bound)
    let slack0 = ny;
    let art0 = ny + mi;

    let mut tab = vec![vec![0.0f64; ncols + 1]; m];
    let rhs = ncols;

    for i in 0..m {
        let is_eq = i < me;
        let (lhs, b, r) = if is_eq {
            (&p.eq_lhs, p.eq_rhs[i], i)
        } else {
            (&p.ineq_lhs, p.ineq_rhs[i - me], i - me)
        };
        let mut rhs_val = b;
        for (j, &(pos, neg)) in col_of_var.iter().enumerate() {
            let a = *lhs.get(r, j);
            tab[i][pos] = a;
            if let Some(negc) = neg {
                tab[i][negc] = -a;
            }
            if let VarBound::Finite(lb) = p.var_lower_bounds[j] {
                rhs_val -= a * lb;
            }
        }
        if !is_eq {
            tab[i][slack0 + (i - me)] = 1.0;
        }
        tab[i][rhs] = rhs_val;
    }

    // normalize rows to nonnegative rhs, then pick a starting basis: the
    // slack where its coefficient stayed +1, an artificial otherwise
    let mut basis = vec![usize::MAX; m];
    let mut n_art = 0usize;
    for i in 0..m {
        if tab[i][rhs] < 0.0 {
            for v in tab[i].iter_mut() {
                *v = -*v;
            }
        }
        let is_ineq = i >= me;
        if is_ineq && tab[i][slack0 + (i - me)] > 0.0 {
            basis[i] = slack0 + (i - me);
        } else {
            let art = art0 + n_art;
            n_art += 1;
            tab[i][art] = 1.0;
            basis[i] = art;
        }
    }
    let ncols_used = art0 + n_art;

    // phase-one reduced costs: d_j = c_j - sum over artificial-basic rows
    let mut d = vec![0.0f64; ncols_used];
    for dj in d.iter_mut().skip(art0) {
        *dj = 1.0;
    }
    let mut obj = 0.0f64;
    for i in 0..m {
        if basis[i] >= art0 {
            for (j, dj) in d.iter_mut().enumerate() {
                *dj -= tab[i][j];
            }
            obj += tab[i][rhs];
        }
    }

    let max_iters = 200 * (m + ncols_used) + 1000;
    for _ in 0..max_iters {
        // Bland: entering = smallest-index structural/slack column with
        // negative reduced cost
        let mut enter = None;
        for (j, dj) in d.iter().enumerate().take(art0) {
            if *dj < -PIVOT_EPS {
                enter = Some(j);
                break;
            }
        }
        let Some(enter) = enter else { break };

        // ratio test; ties leave the smallest basis column (Bland)
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let coef = tab[i][enter];
            if coef > PIVOT_EPS {
                let ratio = tab[i][rhs] / coef;
                let better = match leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < lr - PIVOT_EPS
                            || (ratio < lr + PIVOT_EPS && basis[i] < basis[li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((leave, _)) = leave else {
            // unbounded direction in phase one cannot happen (objective is
            // bounded below by zero); treat defensively
            return Err(Error::Internal("phase-one simplex became unbounded".into()));
        };

        // pivot
        let piv = tab[leave][enter];
        for v in tab[leave].iter_mut() {
            *v /= piv;
        }
        tab[leave][enter] = 1.0;
        for i in 0..m {
            if i == leave {
                continue;
            }
            let f = tab[i][enter];
            if f != 0.0 {
                for j in 0..=ncols {
                    tab[i][j] -= f * tab[leave][j];
                }
                tab[i][enter] = 0.0;
            }
        }
        let f = d[enter];
        if f != 0.0 {
            for (j, dj) in d.iter_mut().enumerate() {
                *dj -= f * tab[leave][j];
            }
            d[enter] = 0.0;
        }
        basis[leave] = enter;
        obj = (0..m)
            .filter(|&i| basis[i] >= art0)
            .map(|i| tab[i][rhs])
            .sum();
    }

    if obj > tol {
        return Ok(LpOutcome::Infeasible);
    }

    let mut y = vec![0.0f64; ny];
    for i in 0..m {
        if basis[i] < ny {
            y[basis[i]] = tab[i][rhs].max(0.0);
        }
    }
    let x = col_of_var
        .iter()
        .zip(&p.var_lower_bounds)
        .map(|(&(pos, neg), bound)| match (bound, neg) {
            (VarBound::Finite(lb), _) => lb + y[pos],
            (VarBound::Free, Some(negc)) => y[pos] - y[negc],
            (VarBound::Free, None) => unreachable!(),
        })
        .collect();
    Ok(LpOutcome::Feasible(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_equality_pins_variable() {
        let mut p = FeasibilityProgram::nonneg(1);
        p.eq_lhs = Matrix::new(1, 1, vec![1.0]);
        p.eq_rhs = vec![1.0];
        match lp_feasible(&p, 1e-9).unwrap() {
            LpOutcome::Feasible(x) => assert!((x[0] - 1.0).abs() < 1e-9),
            LpOutcome::Infeasible => panic!("should be feasible"),
        }
    }

    #[test]
    fn contradictory_bound_is_infeasible() {
        let mut p = FeasibilityProgram::nonneg(1);
        p.ineq_lhs = Matrix::new(1, 1, vec![1.0]);
        p.ineq_rhs = vec![-1.0];
        assert_eq!(lp_feasible(&p, 1e-9).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let mut p = FeasibilityProgram::nonneg(2);
        p.eq_lhs = Matrix::new(1, 1, vec![1.0]);
        p.eq_rhs = vec![1.0];
        assert!(lp_feasible(&p, 1e-9).is_err());
    }

    #[test]
    fn free_variable_can_go_negative() {
        let mut p = FeasibilityProgram::nonneg(1);
        p.var_lower_bounds = vec![VarBound::Free];
        p.eq_lhs = Matrix::new(1, 1, vec![1.0]);
        p.eq_rhs = vec![-3.5];
        match lp_feasible(&p, 1e-9).unwrap() {
            LpOutcome::Feasible(x) => assert!((x[0] + 3.5).abs() < 1e-9),
            LpOutcome::Infeasible => panic!("should be feasible"),
        }
    }

    #[test]
    fn shifted_lower_bounds_respected() {
        // x >= 2, x <= 1 infeasible; x >= 2, x <= 5 feasible
        let mut p = FeasibilityProgram::nonneg(1);
        p.var_lower_bounds = vec![VarBound::Finite(2.0)];
        p.ineq_lhs = Matrix::new(1, 1, vec![1.0]);
        p.ineq_rhs = vec![1.0];
        assert_eq!(lp_feasible(&p, 1e-9).unwrap(), LpOutcome::Infeasible);
        p.ineq_rhs = vec![5.0];
        match lp_feasible(&p, 1e-9).unwrap() {
            LpOutcome::Feasible(x) => assert!(x[0] >= 2.0 - 1e-9 && x[0] <= 5.0 + 1e-9),
            LpOutcome::Infeasible => panic!("should be feasible"),
        }
    }
}
