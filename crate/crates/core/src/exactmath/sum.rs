//! Closed-form summation of polynomials over integer ranges.

use num_bigint::BigInt;
use num_integer::binomial;

use super::{AffineExpr, ExactError, Rational, UniPoly};

/// Largest summand degree accepted by [`poly_sum_over_range`].
pub const MAX_SUMMAND_DEGREE: usize = 12;

/// Bernoulli numbers B_0..=B_n with the B_1 = +1/2 convention.
fn bernoulli_plus(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        // Σ_{j=0}^{m} C(m+1, j) B_j^- = [m == 0]
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += &(Rational::from_int(binomial(BigInt::from(m + 1), BigInt::from(j))) * bj);
        }
        let target = if m == 0 {
            Rational::one()
        } else {
            Rational::zero()
        };
        b.push((target - acc) / Rational::from_int(BigInt::from(m + 1)));
    }
    if n >= 1 {
        b[1] = Rational::frac(1, 2);
    }
    b
}

/// `F_k(n) = Σ_{i=0}^{n} i^k` as a polynomial in `n`, valid for `n ≥ -1`.
pub fn power_sum(k: usize) -> Result<UniPoly, ExactError> {
    if k > MAX_SUMMAND_DEGREE {
        return Err(ExactError::DegreeTooHigh {
            degree: k,
            max: MAX_SUMMAND_DEGREE,
        });
    }
    if k == 0 {
        return Ok(UniPoly::from_ints(&[1, 1]));
    }
    let b = bernoulli_plus(k);
    let mut coeffs = vec![Rational::zero(); k + 2];
    let inv = Rational::frac(1, (k + 1) as i64);
    for (j, bj) in b.iter().enumerate() {
        let c = Rational::from_int(binomial(BigInt::from(k + 1), BigInt::from(j)));
        coeffs[k + 1 - j] += &(&(&c * bj) * &inv);
    }
    Ok(UniPoly::new(coeffs))
}

fn bound_poly(e: &AffineExpr, var: &str) -> Result<UniPoly, ExactError> {
    if let Some(other) = e.variables().find(|v| *v != var) {
        return Err(ExactError::NonAffine(format!(
            "{e} (unexpected variable {other})"
        )));
    }
    Ok(UniPoly::linear(
        Rational::from_int(e.coeff(var)),
        Rational::from_int(e.constant_term().clone()),
    ))
}

/// `q(var) = Σ_{i=lower}^{upper} p(i)` for bounds affine in `var`.
///
/// The identity holds wherever `upper(var) ≥ lower(var) - 1`. When both bounds
/// are constant and the range is empty the result is the zero polynomial.
pub fn poly_sum_over_range(
    p: &UniPoly,
    lower: &AffineExpr,
    upper: &AffineExpr,
    var: &str,
) -> Result<UniPoly, ExactError> {
    let lo = bound_poly(lower, var)?;
    let hi = bound_poly(upper, var)?;
    if lower.is_constant() && upper.is_constant() && upper.constant_term() < lower.constant_term() {
        return Ok(UniPoly::zero());
    }
    let lo_minus_one = &lo - &UniPoly::constant(Rational::one());
    let mut out = UniPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let f = power_sum(k)?;
        let term = &f.compose(&hi) - &f.compose(&lo_minus_one);
        out = &out + &term.scale(c);
    }
    Ok(out)
}

/// Convenience for the common case of literal bound strings.
pub fn sum_between(
    p: &UniPoly,
    lower: &str,
    upper: &str,
    var: &str,
) -> Result<UniPoly, ExactError> {
    poly_sum_over_range(
        p,
        &AffineExpr::parse(lower)?,
        &AffineExpr::parse(upper)?,
        var,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(p: &UniPoly, lo: i64, hi: i64) -> Rational {
        (lo..=hi).map(|i| p.eval_int(i)).sum()
    }

    #[test]
    fn faulhaber_small_cases() {
        assert_eq!(
            power_sum(1).unwrap(),
            UniPoly::new(vec![
                Rational::zero(),
                Rational::frac(1, 2),
                Rational::frac(1, 2)
            ])
        );
        for k in 0..=MAX_SUMMAND_DEGREE {
            let f = power_sum(k).unwrap();
            for n in 0..12i64 {
                let expect: Rational = (0..=n).map(|i| Rational::from(i).pow(k as u32)).sum();
                assert_eq!(f.eval_int(n), expect, "k={k} n={n}");
            }
        }
        assert!(matches!(
            power_sum(13),
            Err(ExactError::DegreeTooHigh { .. })
        ));
    }

    #[test]
    fn interior_germ_sum_at_three() {
        let p = UniPoly::from_ints(&[0, -18, 12]);
        let q = sum_between(&p, "2", "d-1", "d").unwrap();
        assert_eq!(q.eval_int(3), Rational::from(12));
        for d in 3..=20 {
            assert_eq!(q.eval_int(d), brute(&p, 2, d - 1));
        }
    }

    #[test]
    fn trivial_ranges() {
        let one = UniPoly::from_ints(&[1]);
        assert_eq!(sum_between(&one, "1", "d", "d").unwrap(), UniPoly::x());
        let p = UniPoly::from_ints(&[3, 1, 4]);
        assert!(sum_between(&p, "0", "-1", "d").unwrap().is_zero());
        assert!(sum_between(&p, "5", "2", "d").unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_bounds() {
        let p = UniPoly::from_ints(&[1]);
        assert!(matches!(
            sum_between(&p, "1", "d*d", "d"),
            Err(ExactError::NonAffine(_))
        ));
        assert!(matches!(
            sum_between(&p, "1", "n", "d"),
            Err(ExactError::NonAffine(_))
        ));
        let high = UniPoly::new([vec![Rational::zero(); 13], vec![Rational::one()]].concat());
        assert!(sum_between(&high, "1", "d", "d").is_err());
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            coeffs in prop::collection::vec(-20i64..20, 1..=5),
            lo_c in -3i64..4,
            hi_a in 1i64..3,
            hi_b in -2i64..3,
            d in 1i64..30,
        ) {
            let p = UniPoly::from_ints(&coeffs);
            let lower = AffineExpr::parse(&lo_c.to_string()).unwrap();
            let upper = AffineExpr::parse(&format!("{hi_a}*d + {hi_b}")).unwrap();
            let q = poly_sum_over_range(&p, &lower, &upper, "d").unwrap();
            let hi = hi_a * d + hi_b;
            prop_assume!(hi >= lo_c - 1);
            prop_assert_eq!(q.eval_int(d), brute(&p, lo_c, hi));
        }
    }
}
