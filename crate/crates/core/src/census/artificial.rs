//! The artificial floor-plan census: one-nodal germ counts multiplied across
//! floors, as an exact polynomial in the degree.

use serde::{Deserialize, Serialize};

use super::germ::{germ_multiplicity, GermDescriptor, GermKind};
use super::CensusError;
use crate::exactmath::{poly_sum_over_range, AffineExpr, Rational, UniPoly};

/// Weighted number of single node germs in floor `i` of a degree-`d` plan:
/// each germ kind's count times its multiplicity.
pub fn germ_floor_contribution(i: u32, d: u32) -> Result<i64, CensusError> {
    if i == 0 || i > d {
        return Err(CensusError::BadFloor(i));
    }
    let n = i64::from(i);
    let m = |kind| germ_multiplicity(&GermDescriptor::new(kind, i));
    // Right strings: bounded diagonal edges of the floor below, then its
    // vertices away from diagonal edges, 2(1 + 2 + … + (i-3)) of them.
    let right = (n - 2).max(0) * m(GermKind::RightStringEdge)?
        + (n - 3).max(0) * (n - 2) * m(GermKind::RightStringVertex)?;
    let diagonal = (n - 1) * m(GermKind::DiagonalEnd2)?;
    if i == 1 {
        // The only horizontal bounded edge of the conic floor above.
        return m(GermKind::LeftStringEdge);
    }
    if i == d {
        return Ok(diagonal + right);
    }
    let parallelogram = 3 * (n - 1) * (n - 1) * m(GermKind::Parallelogram)?;
    let horizontal = (n - 1) * m(GermKind::HorizontalEnd2)?;
    // Left strings align with the i(i+1)/2 horizontal bounded edges of the floor above.
    let left = n * (n + 1) / 2 * m(GermKind::LeftStringEdge)?;
    Ok(parallelogram + horizontal + diagonal + left + right)
}

/// `12i² - 18i + 8`, valid for `1 < i < d`.
pub fn interior_contribution() -> UniPoly {
    UniPoly::from_ints(&[8, -18, 12])
}

/// `3d² - 7d + 4`.
pub fn top_contribution() -> UniPoly {
    UniPoly::from_ints(&[4, -7, 3])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusResult {
    pub delta: u32,
    pub polynomial: UniPoly,
    pub top_terms: Vec<(usize, Rational)>,
    pub validity_note: String,
}

pub const MAX_CENSUS_DELTA: u32 = 4;

/// `P_k(m)`: sum over `m ≥ i_1 ≥ … ≥ i_k ≥ 2` of the interior contributions.
fn chain_sums(k: u32) -> Result<Vec<UniPoly>, CensusError> {
    let lower = AffineExpr::parse("2")?;
    let upper = AffineExpr::parse("m")?;
    let g = interior_contribution();
    let mut out = vec![UniPoly::constant(Rational::one())];
    for _ in 0..k {
        let summand = &g * out.last().expect("non-empty");
        out.push(poly_sum_over_range(&summand, &lower, &upper, "m")?);
    }
    Ok(out)
}

/// `A_δ(d)`: one germ in each of δ floors `i_1 ≥ … ≥ i_δ ≥ 2`, where only `i_1`
/// may be the top floor.
pub fn artificial_census(delta: u32) -> Result<CensusResult, CensusError> {
    if delta == 0 || delta > MAX_CENSUS_DELTA {
        return Err(CensusError::DeltaRange {
            delta,
            max: MAX_CENSUS_DELTA,
        });
    }
    let p = chain_sums(delta)?;
    let shift = UniPoly::from_ints(&[-1, 1]);
    let below_top = p[delta as usize].compose(&shift);
    let with_top = &top_contribution() * &p[delta as usize - 1].compose(&shift);
    let polynomial = &below_top + &with_top;
    let top_terms = polynomial.top_coefficients(2)?;
    Ok(CensusResult {
        delta,
        polynomial,
        top_terms,
        validity_note:
            "exact for every degree d >= 2; only the first floor of a tuple may be the top floor"
                .into(),
    })
}

/// Published top-two coefficients of `A_δ(d)`.
pub fn reference_top_terms(delta: u32) -> Option<Vec<(usize, Rational)>> {
    let second = match delta {
        1 => Rational::from(-12),
        2 => Rational::frac(-168, 5),
        3 => Rational::frac(-1341, 35),
        4 => Rational::frac(-64, 5),
        _ => return None,
    };
    let fact: i64 = (1..=i64::from(delta)).product();
    let e = 3 * delta as usize;
    Some(vec![
        (e, Rational::frac(4i64.pow(delta), fact)),
        (e - 1, second),
    ])
}

/// Published unseparated lower bounds, as `(exponent, coefficient)`.
pub fn reference_lower_bound(delta: u32) -> Option<(usize, Rational)> {
    match delta {
        2 => Some((5, Rational::frac(48, 5))),
        3 => Some((8, Rational::frac(221, 35))),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LowerBound {
    Bound {
        exponent: usize,
        coefficient: Rational,
    },
    /// The census does not undercount the expected second coefficient.
    Inconclusive { deficit: Rational },
}

/// Second coefficient of the surface count, `-3·4^δ/δ!`.
pub fn expected_second_coefficient(delta: u32) -> Rational {
    let fact: i64 = (1..=i64::from(delta)).product();
    Rational::frac(-3 * 4i64.pow(delta), fact)
}

/// How far the artificial census falls short of the expected coefficient of
/// `d^{3δ-1}`. A positive shortfall must be made up by unseparated nodes.
pub fn unseparated_lower_bound(delta: u32) -> Result<LowerBound, CensusError> {
    let census = artificial_census(delta)?;
    let exponent = 3 * delta as usize - 1;
    let deficit = expected_second_coefficient(delta) - census.polynomial.coeff(exponent);
    Ok(if deficit.is_positive() {
        LowerBound::Bound {
            exponent,
            coefficient: deficit,
        }
    } else {
        LowerBound::Inconclusive { deficit }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(delta: u32, d: u32) -> i64 {
        fn rec(left: u32, max: u32, d: u32) -> i64 {
            if left == 0 {
                return 1;
            }
            (2..=max)
                .map(|i| germ_floor_contribution(i, d).unwrap() * rec(left - 1, i.min(d - 1), d))
                .sum()
        }
        rec(delta, d, d)
    }

    #[test]
    fn floor_contributions() {
        assert_eq!(germ_floor_contribution(2, 5).unwrap(), 20);
        assert_eq!(germ_floor_contribution(3, 3).unwrap(), 10);
        assert_eq!(germ_floor_contribution(1, 4).unwrap(), 2);
        for d in 3..40 {
            assert_eq!(
                Rational::from(germ_floor_contribution(d, d).unwrap()),
                top_contribution().eval_int(d.into())
            );
            for i in 2..d {
                assert_eq!(
                    Rational::from(germ_floor_contribution(i, d).unwrap()),
                    interior_contribution().eval_int(i.into())
                );
            }
        }
        assert!(germ_floor_contribution(6, 5).is_err());
    }

    #[test]
    fn census_matches_direct_sum() {
        for delta in 1..=4 {
            let c = artificial_census(delta).unwrap();
            assert_eq!(c.polynomial.degree(), Some(3 * delta as usize));
            for d in 2..=12 {
                assert_eq!(
                    c.polynomial.eval_int(d.into()),
                    Rational::from(brute(delta, d)),
                    "delta={delta} d={d}"
                );
            }
        }
    }

    #[test]
    fn one_node_against_discriminant() {
        let c = artificial_census(1).unwrap();
        assert_eq!(
            c.top_terms,
            vec![(3, Rational::from(4)), (2, Rational::from(-12))]
        );
        let disc = UniPoly::from_ints(&[-1, 1]);
        let disc = (&(&disc * &disc) * &disc).scale(&Rational::from(4));
        assert_eq!(disc.top_coefficients(2).unwrap(), c.top_terms);
    }

    #[test]
    fn leading_coefficients() {
        for delta in 1..=4u32 {
            let fact: i64 = (1..=i64::from(delta)).product();
            let c = artificial_census(delta).unwrap();
            assert_eq!(c.top_terms[0].1, Rational::frac(4i64.pow(delta), fact));
        }
        assert!(artificial_census(5).is_err());
        assert!(artificial_census(0).is_err());
    }

    #[test]
    fn monotone_in_degree() {
        for delta in 1..=4 {
            let p = artificial_census(delta).unwrap().polynomial;
            for d in 4..60 {
                assert!(p.eval_int(d + 1) > p.eval_int(d));
            }
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(
            unseparated_lower_bound(2).unwrap(),
            LowerBound::Bound {
                exponent: 5,
                coefficient: Rational::frac(48, 5)
            }
        );
        assert!(matches!(
            unseparated_lower_bound(4).unwrap(),
            LowerBound::Inconclusive { .. }
        ));
    }
}
