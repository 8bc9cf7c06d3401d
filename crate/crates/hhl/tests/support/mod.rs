//! Test-side oracles, independent of the library's solver internals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Textbook Fourier-Motzkin feasibility for `A x <= b` over the rationals:
/// rows are normalized so the eliminated coefficient is +-1 and combinations
/// are plain additions. No witnesses, no strict rows; written independently
/// of the library engine as a cross-check.
pub fn fm_feasible(rows: &[Vec<BigInt>], bounds: &[BigInt]) -> bool {
    let vars = rows.first().map_or(0, Vec::len);
    let mut system: Vec<(Vec<BigRational>, BigRational)> = rows
        .iter()
        .zip(bounds)
        .map(|(r, b)| {
            (
                r.iter().map(|v| BigRational::from(v.clone())).collect(),
                BigRational::from(b.clone()),
            )
        })
        .collect();
    for var in (0..vars).rev() {
        let mut zero_rows = Vec::new();
        let mut uppers = Vec::new();
        let mut lowers = Vec::new();
        for (mut normal, mut bound) in system {
            let c = normal[var].clone();
            if c.is_zero() {
                zero_rows.push((normal, bound));
                continue;
            }
            let scale = c.abs();
            for v in normal.iter_mut() {
                *v /= scale.clone();
            }
            bound /= scale;
            if c.is_positive() {
                uppers.push((normal, bound));
            } else {
                lowers.push((normal, bound));
            }
        }
        for (un, ub) in &uppers {
            for (ln, lb) in &lowers {
                let normal: Vec<BigRational> =
                    un.iter().zip(ln).map(|(a, b)| a + b).collect();
                debug_assert!(normal[var].is_zero());
                zero_rows.push((normal, ub + lb));
            }
        }
        system = zero_rows;
    }
    system.iter().all(|(_, bound)| !bound.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn oracle_basics() {
        // x <= 1, -x <= 0 : feasible
        assert!(fm_feasible(&[vec![b(1)], vec![b(-1)]], &[b(1), b(0)]));
        // 3x <= -1, -2x <= 0 : infeasible
        assert!(!fm_feasible(&[vec![b(3)], vec![b(-2)]], &[b(-1), b(0)]));
        // unbounded feasible in 2 vars
        assert!(fm_feasible(&[vec![b(1), b(1)]], &[b(5)]));
    }
}
