//! Shared unit-test fixtures.

use crate::game::{BasisFamily, SeparableGame, StrategySpace, Tensor};
use crate::numerics::rational::{rat_i64, Rat};

pub fn unit_interval() -> StrategySpace {
    StrategySpace::Interval {
        lo: rat_i64(-1),
        hi: rat_i64(1),
    }
}

/// Two-player polynomial game on [-1,1]^2 with quartic bases:
/// u1 = 2xy + 3y^3 - 2x^3 - x - 3x^2y^2, u2 = 2x^2y^2 - 4y^3 - x^2 + 4y + x^2y.
pub fn poly_two_player() -> SeparableGame {
    let spaces = vec![unit_interval(), unit_interval()];
    let bases = vec![
        BasisFamily::Monomials { count: 4 },
        BasisFamily::Monomials { count: 4 },
    ];
    let mut u1 = Tensor::zeros(vec![4, 4]);
    u1.set(&[1, 1], rat_i64(2));
    u1.set(&[0, 3], rat_i64(3));
    u1.set(&[3, 0], rat_i64(-2));
    u1.set(&[1, 0], rat_i64(-1));
    u1.set(&[2, 2], rat_i64(-3));
    let mut u2 = Tensor::zeros(vec![4, 4]);
    u2.set(&[2, 2], rat_i64(2));
    u2.set(&[0, 3], rat_i64(-4));
    u2.set(&[2, 0], rat_i64(-1));
    u2.set(&[0, 1], rat_i64(4));
    u2.set(&[2, 1], rat_i64(1));
    SeparableGame::new(spaces, bases, vec![u1, u2]).unwrap()
}

/// Three-player polynomial game on [-1,1]^3 with quadratic-in-each-variable
/// payoffs whose interaction matrices are known exactly.
pub fn poly_three_player() -> SeparableGame {
    let spaces = vec![unit_interval(), unit_interval(), unit_interval()];
    let bases = vec![
        BasisFamily::Monomials { count: 3 },
        BasisFamily::Monomials { count: 3 },
        BasisFamily::Monomials { count: 3 },
    ];
    let mut u1 = Tensor::zeros(vec![3, 3, 3]);
    for (idx, c) in [
        ([0, 0, 0], 1),
        ([1, 0, 0], 2),
        ([2, 0, 0], 3),
        ([0, 1, 1], 2),
        ([1, 1, 1], 4),
        ([2, 1, 1], 6),
        ([0, 2, 2], 3),
        ([1, 2, 2], 6),
        ([2, 2, 2], 9),
    ] {
        u1.set(&idx, rat_i64(c));
    }
    let mut u2 = Tensor::zeros(vec![3, 3, 3]);
    for (idx, c) in [
        ([0, 0, 0], 7),
        ([1, 0, 0], 2),
        ([2, 0, 0], 3),
        ([0, 1, 0], 2),
        ([1, 1, 0], 4),
        ([2, 1, 0], 6),
        ([0, 0, 2], 3),
        ([1, 0, 2], 6),
        ([2, 0, 2], 9),
    ] {
        u2.set(&idx, rat_i64(c));
    }
    let mut u3 = Tensor::zeros(vec![3, 3, 3]);
    for (idx, c) in [
        ([0, 0, 1], -1),
        ([1, 0, 1], -2),
        ([2, 0, 1], -3),
        ([0, 1, 1], -2),
        ([1, 1, 1], -4),
        ([2, 1, 1], -6),
        ([0, 1, 2], -3),
        ([1, 1, 2], -6),
        ([2, 1, 2], -9),
    ] {
        u3.set(&idx, rat_i64(c));
    }
    SeparableGame::new(spaces, bases, vec![u1, u2, u3]).unwrap()
}

/// Matching pennies as a finite separable game; player 1 wins on a match.
pub fn matching_pennies() -> SeparableGame {
    bimatrix(
        &[&[1, -1], &[-1, 1]],
        &[&[-1, 1], &[1, -1]],
        &["heads", "tails"],
        &["heads", "tails"],
    )
}

/// Finite two-player game from integer payoff tables (row player first).
pub fn bimatrix(
    r: &[&[i64]],
    c: &[&[i64]],
    row_labels: &[&str],
    col_labels: &[&str],
) -> SeparableGame {
    let m1 = r.len();
    let m2 = r[0].len();
    let spaces = vec![
        StrategySpace::Finite {
            labels: row_labels.iter().map(|s| s.to_string()).collect(),
        },
        StrategySpace::Finite {
            labels: col_labels.iter().map(|s| s.to_string()).collect(),
        },
    ];
    let bases = vec![
        BasisFamily::Indicators { count: m1 },
        BasisFamily::Indicators { count: m2 },
    ];
    let mut u1 = Tensor::zeros(vec![m1, m2]);
    let mut u2 = Tensor::zeros(vec![m1, m2]);
    for a in 0..m1 {
        for b in 0..m2 {
            u1.set(&[a, b], rat_i64(r[a][b]));
            u2.set(&[a, b], rat_i64(c[a][b]));
        }
    }
    SeparableGame::new(spaces, bases, vec![u1, u2]).unwrap()
}

/// Rational in [-bound, bound] with denominator up to 8, from any RNG.
pub fn random_rat(rng: &mut impl rand::Rng, bound: i64) -> Rat {
    let denom = rng.gen_range(1..=8i64);
    let numer = rng.gen_range(-bound * denom..=bound * denom);
    crate::numerics::rational::rat(numer, denom)
}
