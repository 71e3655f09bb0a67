//! Separable games: strategy spaces, basis families, dense coefficient
//! tensors, finitely supported mixed strategies, payoff evaluation, moment
//! vectors, and Lipschitz bounds.
//!
//! A game holds, per player, a strategy space, a basis family of size
//! `m_i`, and one coefficient tensor of shape `(m_1, ..., m_n)` per payoff.
//! Payoffs of pure and mixed profiles are tensor contractions against basis
//! evaluations and moment vectors respectively, so mixed evaluation cost is
//! independent of support sizes. All indexing is 0-based.

pub mod format;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::rational::{format_exact, rat, to_f64, Rat};
use crate::numerics::Matrix;

/// |weight sum - 1| tolerance when validating strategies built from
/// floating point data.
fn weight_sum_tol() -> Rat {
    rat(1, 1_000_000_000)
}

#[derive(Clone, Debug, PartialEq)]
pub enum StrategySpace {
    Interval { lo: Rat, hi: Rat },
    Finite { labels: Vec<String> },
}

impl StrategySpace {
    pub fn interval_f64(&self) -> Option<(f64, f64)> {
        match self {
            StrategySpace::Interval { lo, hi } => Some((to_f64(lo), to_f64(hi))),
            StrategySpace::Finite { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BasisFamily {
    /// f^j(s) = s^j for j = 0..count-1; requires an interval space.
    Monomials { count: usize },
    /// f^j(s) = 1 iff s is label j; requires a finite space.
    Indicators { count: usize },
    /// Basis known only through its values at sample points:
    /// `values[j][k] = f^j(samples[k])`.
    Tabulated {
        samples: Vec<Rat>,
        values: Matrix<Rat>,
    },
}

impl BasisFamily {
    pub fn count(&self) -> usize {
        match self {
            BasisFamily::Monomials { count } | BasisFamily::Indicators { count } => *count,
            BasisFamily::Tabulated { values, .. } => values.rows(),
        }
    }
}

/// A pure strategy: a point of an interval space or a label index of a
/// finite space.
#[derive(Clone, Debug, PartialEq)]
pub enum PureStrategy {
    Point(Rat),
    Label(usize),
}

impl PureStrategy {
    pub fn describe(&self, space: &StrategySpace) -> String {
        match (self, space) {
            (PureStrategy::Point(x), _) => format_exact(x),
            (PureStrategy::Label(l), StrategySpace::Finite { labels }) => labels[*l].clone(),
            (PureStrategy::Label(l), _) => format!("#{l}"),
        }
    }
}

/// Finitely supported probability measure over one player's pure
/// strategies.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedStrategy {
    pub atoms: Vec<(PureStrategy, Rat)>,
}

impl MixedStrategy {
    pub fn pure(point: PureStrategy) -> Self {
        Self {
            atoms: vec![(point, Rat::one())],
        }
    }

    pub fn support_size(&self) -> usize {
        self.atoms.iter().filter(|(_, w)| !w.is_zero()).count()
    }

    /// Drop zero-weight atoms.
    pub fn pruned(&self) -> Self {
        Self {
            atoms: self
                .atoms
                .iter()
                .filter(|(_, w)| !w.is_zero())
                .cloned()
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedProfile {
    pub strategies: Vec<MixedStrategy>,
}

/// Generalized moment vector of a mixed strategy: component `j` is the
/// basis functional `f^j` integrated against the strategy.
pub type MomentVector = Vec<Rat>;

/// Dense coefficient tensor indexed by one basis index per player.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<Rat>,
}

impl Tensor {
    pub fn zeros(shape: Vec<usize>) -> Self {
        let len = shape.iter().product();
        Self {
            shape,
            data: vec![Rat::zero(); len],
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[Rat] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut off = 0;
        for (k, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.shape[k]);
            off = off * self.shape[k] + i;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> &Rat {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Rat) {
        let off = self.offset(idx);
        self.data[off] = v;
    }

    /// Iterate (multi-index, entry) pairs in C order.
    pub fn iter_indexed(&self) -> impl Iterator<Item = (Vec<usize>, &Rat)> {
        let shape = self.shape.clone();
        self.data.iter().enumerate().map(move |(flat, v)| {
            let mut idx = vec![0usize; shape.len()];
            let mut rem = flat;
            for k in (0..shape.len()).rev() {
                idx[k] = rem % shape[k];
                rem /= shape[k];
            }
            (idx, v)
        })
    }

    /// Contract the last axis with a vector, reducing the tensor order by
    /// one.
    fn contract_last(&self, v: &[Rat]) -> Tensor {
        let m = *self.shape.last().expect("tensor of order >= 1");
        assert_eq!(v.len(), m);
        let new_shape = self.shape[..self.shape.len() - 1].to_vec();
        let data = self
            .data
            .chunks(m)
            .map(|chunk| {
                chunk
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        Tensor {
            shape: new_shape,
            data,
        }
    }

    /// Fully contract against one vector per axis.
    pub fn contract_all(&self, vectors: &[Vec<Rat>]) -> Rat {
        assert_eq!(vectors.len(), self.shape.len());
        let mut t = self.clone();
        for v in vectors.iter().rev() {
            t = t.contract_last(v);
        }
        debug_assert!(t.shape.is_empty());
        t.data.into_iter().next().unwrap_or_else(Rat::zero)
    }

    /// Contract every axis except `axis`, leaving the coefficient vector of
    /// that player's own-strategy function.
    pub fn contract_all_but(&self, axis: usize, vectors: &[Option<Vec<Rat>>]) -> Vec<Rat> {
        let m = self.shape[axis];
        let mut out = vec![Rat::zero(); m];
        for (idx, a) in self.iter_indexed() {
            if a.is_zero() {
                continue;
            }
            let mut term = a.clone();
            for (k, v) in vectors.iter().enumerate() {
                if k == axis {
                    continue;
                }
                let v = v.as_ref().expect("moment vector for every other axis");
                term *= &v[idx[k]];
            }
            out[idx[axis]] += term;
        }
        out
    }

    /// Substitute basis functions along `axis`: entry `expand[j][r]` is the
    /// coefficient of new function `r` in old function `j`. The axis size
    /// changes from `expand.rows()` to `expand.cols()`.
    pub fn substitute_axis(&self, axis: usize, expand: &Matrix<Rat>) -> Tensor {
        assert_eq!(expand.rows(), self.shape[axis]);
        let mut new_shape = self.shape.clone();
        new_shape[axis] = expand.cols();
        let mut out = Tensor::zeros(new_shape);
        for (idx, a) in self.iter_indexed() {
            if a.is_zero() {
                continue;
            }
            let mut new_idx = idx.clone();
            for r in 0..expand.cols() {
                let c = expand.get(idx[axis], r);
                if c.is_zero() {
                    continue;
                }
                new_idx[axis] = r;
                let off = out.offset(&new_idx);
                out.data[off] += a * c;
            }
        }
        out
    }

    pub fn scale(&self, factor: &Rat) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparableGame {
    spaces: Vec<StrategySpace>,
    bases: Vec<BasisFamily>,
    coeffs: Vec<Tensor>,
}

impl SeparableGame {
    pub fn new(
        spaces: Vec<StrategySpace>,
        bases: Vec<BasisFamily>,
        coeffs: Vec<Tensor>,
    ) -> Result<Self> {
        let n = spaces.len();
        if n == 0 {
            return Err(Error::Validation("a game needs at least one player".into()));
        }
        if bases.len() != n || coeffs.len() != n {
            return Err(Error::Validation(format!(
                "player counts disagree: {} spaces, {} bases, {} payoff tensors",
                n,
                bases.len(),
                coeffs.len()
            )));
        }
        for (i, (space, basis)) in spaces.iter().zip(&bases).enumerate() {
            validate_space(i, space)?;
            validate_basis(i, space, basis)?;
        }
        let shape: Vec<usize> = bases.iter().map(BasisFamily::count).collect();
        for (i, t) in coeffs.iter().enumerate() {
            if t.shape() != shape.as_slice() {
                return Err(Error::Validation(format!(
                    "payoff tensor for player {} has shape {:?}, expected {:?}",
                    i,
                    t.shape(),
                    shape
                )));
            }
        }
        Ok(Self {
            spaces,
            bases,
            coeffs,
        })
    }

    pub fn num_players(&self) -> usize {
        self.spaces.len()
    }

    pub fn m(&self, i: usize) -> usize {
        self.bases[i].count()
    }

    pub fn space(&self, i: usize) -> &StrategySpace {
        &self.spaces[i]
    }

    pub fn basis(&self, i: usize) -> &BasisFamily {
        &self.bases[i]
    }

    pub fn coeffs(&self, i: usize) -> &Tensor {
        &self.coeffs[i]
    }

    /// Evaluate basis function `j` of player `i` at a pure strategy.
    pub fn basis_value(&self, i: usize, j: usize, point: &PureStrategy) -> Result<Rat> {
        match (&self.bases[i], point) {
            (BasisFamily::Monomials { .. }, PureStrategy::Point(x)) => {
                Ok(num::pow::pow(x.clone(), j))
            }
            (BasisFamily::Indicators { .. }, PureStrategy::Label(l)) => {
                Ok(if *l == j { Rat::one() } else { Rat::zero() })
            }
            (BasisFamily::Tabulated { samples, values }, PureStrategy::Point(x)) => {
                let k = samples.iter().position(|s| s == x).ok_or_else(|| {
                    Error::Validation(format!(
                        "player {} strategy {} is not a tabulated sample point",
                        i,
                        format_exact(x)
                    ))
                })?;
                Ok(values.get(j, k).clone())
            }
            _ => Err(Error::Validation(format!(
                "player {i} pure strategy has the wrong kind for its basis"
            ))),
        }
    }

    /// All basis values of player `i` at a pure strategy.
    pub fn basis_values(&self, i: usize, point: &PureStrategy) -> Result<Vec<Rat>> {
        self.validate_point(i, point)?;
        (0..self.m(i))
            .map(|j| self.basis_value(i, j, point))
            .collect()
    }

    pub fn validate_point(&self, i: usize, point: &PureStrategy) -> Result<()> {
        match (&self.spaces[i], point) {
            (StrategySpace::Interval { lo, hi }, PureStrategy::Point(x)) => {
                if x < lo || x > hi {
                    return Err(Error::Validation(format!(
                        "player {} strategy {} lies outside [{}, {}]",
                        i,
                        format_exact(x),
                        format_exact(lo),
                        format_exact(hi)
                    )));
                }
                if let BasisFamily::Tabulated { samples, .. } = &self.bases[i] {
                    if !samples.contains(x) {
                        return Err(Error::Validation(format!(
                            "player {} strategy {} is not a tabulated sample point",
                            i,
                            format_exact(x)
                        )));
                    }
                }
                Ok(())
            }
            (StrategySpace::Finite { labels }, PureStrategy::Label(l)) => {
                if *l >= labels.len() {
                    return Err(Error::Validation(format!(
                        "player {i} label index {l} out of range"
                    )));
                }
                Ok(())
            }
            _ => Err(Error::Validation(format!(
                "player {i} pure strategy has the wrong kind for its space"
            ))),
        }
    }

    pub fn validate_strategy(&self, i: usize, sigma: &MixedStrategy) -> Result<()> {
        if sigma.atoms.is_empty() {
            return Err(Error::Validation(format!(
                "player {i} mixed strategy has no atoms"
            )));
        }
        let mut sum = Rat::zero();
        for (k, (point, w)) in sigma.atoms.iter().enumerate() {
            self.validate_point(i, point)?;
            if w.is_negative() {
                return Err(Error::Validation(format!(
                    "player {i} atom {k} has negative weight"
                )));
            }
            for (prev, _) in &sigma.atoms[..k] {
                if prev == point {
                    return Err(Error::Validation(format!(
                        "player {i} atom {k} repeats an earlier point"
                    )));
                }
            }
            sum += w;
        }
        if Signed::abs(&(sum.clone() - Rat::one())) > weight_sum_tol() {
            return Err(Error::Validation(format!(
                "player {} weights sum to {}, expected 1",
                i,
                format_exact(&sum)
            )));
        }
        Ok(())
    }

    pub fn validate_profile(&self, p: &MixedProfile) -> Result<()> {
        if p.strategies.len() != self.num_players() {
            return Err(Error::Validation(format!(
                "profile has {} strategies for a {}-player game",
                p.strategies.len(),
                self.num_players()
            )));
        }
        for (i, sigma) in p.strategies.iter().enumerate() {
            self.validate_strategy(i, sigma)?;
        }
        Ok(())
    }

    /// Exact payoff vector at a pure strategy profile.
    pub fn payoff_pure(&self, profile: &[PureStrategy]) -> Result<Vec<Rat>> {
        if profile.len() != self.num_players() {
            return Err(Error::Validation(format!(
                "pure profile has {} strategies for a {}-player game",
                profile.len(),
                self.num_players()
            )));
        }
        let basis_vals: Vec<Vec<Rat>> = profile
            .iter()
            .enumerate()
            .map(|(i, s)| self.basis_values(i, s))
            .collect::<Result<_>>()?;
        Ok(self
            .coeffs
            .iter()
            .map(|t| t.contract_all(&basis_vals))
            .collect())
    }

    /// Moment vector of player `i`'s mixed strategy: component `j` is
    /// `sum_atoms weight * f_i^j(point)`.
    pub fn moment_map(&self, i: usize, sigma: &MixedStrategy) -> Result<MomentVector> {
        self.validate_strategy(i, sigma)?;
        let mut out = vec![Rat::zero(); self.m(i)];
        for (point, w) in &sigma.atoms {
            let vals = self.basis_values(i, point)?;
            for (o, v) in out.iter_mut().zip(vals) {
                *o += w * v;
            }
        }
        Ok(out)
    }

    /// Exact expected payoff vector of a mixed profile, computed through
    /// per-player moment vectors rather than atom enumeration.
    pub fn payoff_mixed(&self, p: &MixedProfile) -> Result<Vec<Rat>> {
        self.validate_profile(p)?;
        let moments: Vec<Vec<Rat>> = p
            .strategies
            .iter()
            .enumerate()
            .map(|(i, s)| self.moment_map(i, s))
            .collect::<Result<_>>()?;
        Ok(self
            .coeffs
            .iter()
            .map(|t| t.contract_all(&moments))
            .collect())
    }

    /// Bound on each other player's basis magnitudes, used by the Lipschitz
    /// bound: for axis `k`, a per-index bound of |f_k^j| over the space.
    fn basis_bounds(&self, k: usize) -> Vec<Rat> {
        match &self.bases[k] {
            BasisFamily::Monomials { count } => {
                let (lo, hi) = match &self.spaces[k] {
                    StrategySpace::Interval { lo, hi } => (lo, hi),
                    StrategySpace::Finite { .. } => unreachable!("validated at construction"),
                };
                let b = Signed::abs(lo).max(Signed::abs(hi));
                (0..*count).map(|j| num::pow::pow(b.clone(), j)).collect()
            }
            BasisFamily::Indicators { count } => vec![Rat::one(); *count],
            BasisFamily::Tabulated { values, .. } => (0..values.rows())
                .map(|j| {
                    values
                        .row(j)
                        .iter()
                        .map(Signed::abs)
                        .max()
                        .unwrap_or_else(Rat::zero)
                })
                .collect(),
        }
    }

    /// Lipschitz constant for player `i`'s payoff in their own strategy: a
    /// termwise derivative bound `sum |a| * j_i * B^(j_i-1) * prod bounds`,
    /// where B is the largest absolute endpoint of player i's interval.
    pub fn lipschitz_bound(&self, i: usize) -> Result<Rat> {
        let (BasisFamily::Monomials { .. }, StrategySpace::Interval { lo, hi }) =
            (&self.bases[i], &self.spaces[i])
        else {
            return Err(Error::Unsupported(format!(
                "Lipschitz bound needs a monomial basis on an interval for player {i}"
            )));
        };
        let b = Signed::abs(lo).max(Signed::abs(hi));
        let bounds: Vec<Vec<Rat>> = (0..self.num_players())
            .map(|k| self.basis_bounds(k))
            .collect();
        let mut total = Rat::zero();
        for (idx, a) in self.coeffs[i].iter_indexed() {
            let ji = idx[i];
            if a.is_zero() || ji == 0 {
                continue;
            }
            let mut term = Signed::abs(a) * rat(ji as i64, 1) * num::pow::pow(b.clone(), ji - 1);
            for (k, bound) in bounds.iter().enumerate() {
                if k != i {
                    term *= &bound[idx[k]];
                }
            }
            total += term;
        }
        Ok(total)
    }
}

fn validate_space(i: usize, space: &StrategySpace) -> Result<()> {
    match space {
        StrategySpace::Interval { lo, hi } => {
            if lo >= hi {
                return Err(Error::Validation(format!(
                    "player {} interval [{}, {}] is empty",
                    i,
                    format_exact(lo),
                    format_exact(hi)
                )));
            }
        }
        StrategySpace::Finite { labels } => {
            if labels.is_empty() {
                return Err(Error::Validation(format!("player {i} has no labels")));
            }
            for (a, label) in labels.iter().enumerate() {
                if labels[..a].contains(label) {
                    return Err(Error::Validation(format!(
                        "player {i} label '{label}' repeats"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn validate_basis(i: usize, space: &StrategySpace, basis: &BasisFamily) -> Result<()> {
    if basis.count() == 0 {
        return Err(Error::Validation(format!("player {i} basis is empty")));
    }
    match (basis, space) {
        (BasisFamily::Monomials { .. }, StrategySpace::Interval { .. }) => Ok(()),
        (BasisFamily::Indicators { count }, StrategySpace::Finite { labels }) => {
            if *count != labels.len() {
                return Err(Error::Validation(format!(
                    "player {} has {} indicators for {} labels",
                    i,
                    count,
                    labels.len()
                )));
            }
            Ok(())
        }
        (BasisFamily::Tabulated { samples, values }, StrategySpace::Interval { lo, hi }) => {
            if values.cols() != samples.len() {
                return Err(Error::Validation(format!(
                    "player {} tabulated values have {} columns for {} samples",
                    i,
                    values.cols(),
                    samples.len()
                )));
            }
            if samples.len() < values.rows() {
                return Err(Error::Validation(format!(
                    "player {} needs at least {} sample points, found {}",
                    i,
                    values.rows(),
                    samples.len()
                )));
            }
            for (k, s) in samples.iter().enumerate() {
                if s < lo || s > hi {
                    return Err(Error::Validation(format!(
                        "player {i} sample {k} lies outside the interval"
                    )));
                }
                if samples[..k].contains(s) {
                    return Err(Error::Validation(format!(
                        "player {i} sample {k} repeats an earlier point"
                    )));
                }
            }
            Ok(())
        }
        _ => Err(Error::Validation(format!(
            "player {i} basis kind does not match its strategy space"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat_i64;
    use crate::testutil::{poly_three_player, poly_two_player};

    fn pt(n: i64, d: i64) -> PureStrategy {
        PureStrategy::Point(rat(n, d))
    }

    #[test]
    fn pure_payoffs_match_hand_arithmetic() {
        let g = poly_two_player();
        let zero = g.payoff_pure(&[pt(0, 1), pt(0, 1)]).unwrap();
        assert_eq!(zero, vec![rat_i64(0), rat_i64(0)]);
        let ones = g.payoff_pure(&[pt(1, 1), pt(1, 1)]).unwrap();
        assert_eq!(ones, vec![rat_i64(-1), rat_i64(2)]);

        let g3 = poly_three_player();
        let origin = g3.payoff_pure(&[pt(0, 1), pt(0, 1), pt(0, 1)]).unwrap();
        assert_eq!(origin, vec![rat_i64(1), rat_i64(7), rat_i64(0)]);
    }

    #[test]
    fn point_outside_space_is_rejected() {
        let g = poly_two_player();
        assert!(g.payoff_pure(&[pt(3, 2), pt(0, 1)]).is_err());
    }

    #[test]
    fn moment_map_monomials() {
        let g = poly_two_player();
        let x = rat(1, 3);
        let sigma = MixedStrategy::pure(PureStrategy::Point(x.clone()));
        let m = g.moment_map(0, &sigma).unwrap();
        assert_eq!(
            m,
            vec![
                rat_i64(1),
                x.clone(),
                x.clone() * x.clone(),
                x.clone() * x.clone() * x
            ]
        );

        let sym = MixedStrategy {
            atoms: vec![(pt(-1, 1), rat(1, 2)), (pt(1, 1), rat(1, 2))],
        };
        assert_eq!(
            g.moment_map(0, &sym).unwrap(),
            vec![rat_i64(1), rat_i64(0), rat_i64(1), rat_i64(0)]
        );
    }

    #[test]
    fn moment_map_indicators() {
        let spaces = vec![StrategySpace::Finite {
            labels: vec!["a".into(), "b".into()],
        }];
        let bases = vec![BasisFamily::Indicators { count: 2 }];
        let coeffs = vec![Tensor::zeros(vec![2])];
        let g = SeparableGame::new(spaces, bases, coeffs).unwrap();
        let sigma = MixedStrategy::pure(PureStrategy::Label(1));
        assert_eq!(
            g.moment_map(0, &sigma).unwrap(),
            vec![rat_i64(0), rat_i64(1)]
        );
    }

    #[test]
    fn one_atom_mixed_equals_pure() {
        let g = poly_two_player();
        let s1 = pt(-1, 2);
        let s2 = pt(3, 4);
        let pure = g.payoff_pure(&[s1.clone(), s2.clone()]).unwrap();
        let mixed = g
            .payoff_mixed(&MixedProfile {
                strategies: vec![MixedStrategy::pure(s1), MixedStrategy::pure(s2)],
            })
            .unwrap();
        assert_eq!(pure, mixed);
    }

    #[test]
    fn lipschitz_bounds_for_known_games() {
        let g = poly_two_player();
        assert_eq!(g.lipschitz_bound(0).unwrap(), rat_i64(15));
        assert_eq!(g.lipschitz_bound(1).unwrap(), rat_i64(21));

        // constant payoff
        let spaces = vec![StrategySpace::Interval {
            lo: rat_i64(-1),
            hi: rat_i64(1),
        }];
        let bases = vec![BasisFamily::Monomials { count: 2 }];
        let mut t = Tensor::zeros(vec![2]);
        t.set(&[0], rat_i64(5));
        let constant = SeparableGame::new(spaces.clone(), bases.clone(), vec![t]).unwrap();
        assert_eq!(constant.lipschitz_bound(0).unwrap(), rat_i64(0));

        // u(x, y) = x*y on [-1,1]^2
        let spaces = vec![
            StrategySpace::Interval {
                lo: rat_i64(-1),
                hi: rat_i64(1),
            },
            StrategySpace::Interval {
                lo: rat_i64(-1),
                hi: rat_i64(1),
            },
        ];
        let bases = vec![
            BasisFamily::Monomials { count: 2 },
            BasisFamily::Monomials { count: 2 },
        ];
        let mut xy = Tensor::zeros(vec![2, 2]);
        xy.set(&[1, 1], rat_i64(1));
        let bilinear =
            SeparableGame::new(spaces, bases, vec![xy.clone(), xy.clone()]).unwrap();
        assert_eq!(bilinear.lipschitz_bound(0).unwrap(), rat_i64(1));
    }

    #[test]
    fn weight_sum_must_be_one() {
        let g = poly_two_player();
        let bad = MixedStrategy {
            atoms: vec![(pt(0, 1), rat(9, 10))],
        };
        assert!(g.validate_strategy(0, &bad).is_err());
    }
}
