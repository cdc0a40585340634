//! The 2x2 integer matrices `q`, `p`, `s` for which `q p^n s = 0` only at `n = 1`.

use crate::error::{Error, Result};

/// Exact 2x2 integer matrix with overflow-checked arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntMatrix2(pub [[i128; 2]; 2]);

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2([[1, 0], [0, 1]]);

    pub fn checked_mul(&self, rhs: &IntMatrix2) -> Result<IntMatrix2> {
        let mut out = [[0i128; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = 0i128;
                for k in 0..2 {
                    let term = self.0[i][k]
                        .checked_mul(rhs.0[k][j])
                        .ok_or(Error::ArithmeticOverflow("matrix product"))?;
                    acc = acc
                        .checked_add(term)
                        .ok_or(Error::ArithmeticOverflow("matrix product"))?;
                }
                *cell = acc;
            }
        }
        Ok(IntMatrix2(out))
    }

    pub fn transpose(&self) -> IntMatrix2 {
        IntMatrix2([[self.0[0][0], self.0[1][0]], [self.0[0][1], self.0[1][1]]])
    }

    /// `m^T m`, a positive element of the multiplicative *-semigroup.
    pub fn norm(&self) -> Result<IntMatrix2> {
        self.transpose().checked_mul(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|&x| x == 0)
    }
}

/// For `n = 0..=max_n`, whether `q p^n s` is the zero matrix.
pub fn power_product_zero_pattern(max_n: usize) -> Result<Vec<bool>> {
    // q, p and s are squares of symmetric matrices
    let q = IntMatrix2([[1, 1], [1, 1]]).norm()?;
    let p = IntMatrix2([[1, 0], [0, 2]]).norm()?;
    let s = IntMatrix2([[16, -4], [-4, 1]]).norm()?;
    let mut out = Vec::with_capacity(max_n + 1);
    let mut power = IntMatrix2::IDENTITY;
    for n in 0..=max_n {
        if n > 0 {
            power = power.checked_mul(&p)?;
        }
        out.push(q.checked_mul(&power)?.checked_mul(&s)?.is_zero());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_exactly_at_one() {
        assert_eq!(
            power_product_zero_pattern(6).unwrap(),
            vec![false, true, false, false, false, false, false]
        );
    }

    #[test]
    fn closed_form_entry() {
        // (q p^n s)_{00} = 544 - 136 * 4^n
        let r = power_product_zero_pattern(10).unwrap();
        for (n, zero) in r.iter().enumerate() {
            assert_eq!(*zero, 544 - 136 * 4i128.pow(n as u32) == 0);
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(power_product_zero_pattern(80), Err(Error::ArithmeticOverflow(_))));
    }
}
