//! The equivariant Euler characteristic of the discriminant Milnor fibre
//! as a virtual character, its coefficients by exact Moebius inversion,
//! the infinite-family closed forms, and quotient Euler characteristics.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{classify, degree_profile, discriminant_degree, DegreeProfile, GroupId};
use crate::springer::{identify_centralizer, maximal_poset, regular_data};

/// A virtual character of `G x C_m`: integer coefficients indexed by the
/// maximal poset.  Reducible groups carry the zero character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualCharacter {
    pub group: GroupId,
    pub m: u64,
    pub coeffs: BTreeMap<u64, i64>,
    pub reducible: bool,
}

impl VirtualCharacter {
    /// Render as terms in descending `d`, e.g. `I30+I24+I20-I12-I10-I8`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (&d, &a) in self.coeffs.iter().rev() {
            if a == 0 {
                continue;
            }
            debug_assert_eq!(a.abs(), 1);
            if a < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let _ = write!(out, "I{d}");
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Conjugacy data at evaluation granularity: a regular class is pinned
/// down by the order of the pair alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassSpec {
    Regular { order: u64 },
    Nonregular,
}

/// Coefficients of the character from a degree profile, by exact Moebius
/// inversion over the maximal poset: `a_d = d * sum mu(d,k) u(k)/i(k)`.
pub fn coefficients_from_profile(profile: &DegreeProfile) -> Result<BTreeMap<u64, i64>> {
    let data = regular_data(profile)?;
    let mut coeffs = BTreeMap::new();
    for &d in &data.poset {
        let mut sum = BigRational::zero();
        for &k in data.poset.iter().filter(|&&k| k % d == 0) {
            let mu = data.mu.get(d, k)?;
            sum += BigRational::new(BigInt::from(mu) * BigInt::from(data.u[&k]), BigInt::from(data.i[&k]));
        }
        let a = sum * BigRational::from(BigInt::from(d));
        if !a.is_integer() {
            return Err(Error::NonIntegralCoefficient { d });
        }
        let a: i64 = i64::try_from(a.to_integer())
            .map_err(|_| Error::NonIntegralCoefficient { d })?;
        coeffs.insert(d, a);
    }
    Ok(coeffs)
}

/// Coefficients of `chi_Gamma` for an irreducible group.
pub fn coefficients(g: GroupId) -> Result<BTreeMap<u64, i64>> {
    coefficients_from_profile(&degree_profile(g)?)
}

/// Assemble the virtual character.  `m` defaults to the discriminant
/// degree; a supplied `m` must be divisible by every regular number.
/// Reducible groups yield the zero character, flagged.
pub fn chi_character(g: GroupId, m: Option<u64>) -> Result<VirtualCharacter> {
    if !classify(g)?.irreducible {
        return Ok(VirtualCharacter {
            group: g,
            m: m.unwrap_or(0),
            coeffs: BTreeMap::new(),
            reducible: true,
        });
    }
    let profile = degree_profile(g)?;
    let data = regular_data(&profile)?;
    let m = match m {
        Some(m) => {
            for &d in &data.regular {
                if m % d != 0 {
                    return Err(Error::InvalidAmbientDegree { m, d });
                }
            }
            m
        }
        None => discriminant_degree(g)?,
    };
    Ok(VirtualCharacter {
        group: g,
        m,
        coeffs: coefficients_from_profile(&profile)?,
        reducible: false,
    })
}

/// Evaluate the character on a class.  For a regular class of order `d'`
/// the induced-character sum must agree with `m * u(roundup(d'))`; the
/// two are computed independently and compared.
pub fn evaluate_character(chi: &VirtualCharacter, class: ClassSpec) -> Result<i128> {
    let order = match class {
        ClassSpec::Nonregular => return Ok(0),
        ClassSpec::Regular { order } => order,
    };
    if chi.reducible {
        return Ok(0);
    }
    let profile = degree_profile(chi.group)?;
    let data = regular_data(&profile)?;
    if !data.regular.contains(&order) {
        return Err(Error::NotRegular { d: order });
    }
    let i_at = data.i[&order] as i128;
    let m = chi.m as i128;
    let mut value: i128 = 0;
    for (&d, &a) in &chi.coeffs {
        if d % order == 0 {
            value += a as i128 * (m / d as i128) * i_at;
        }
    }
    let up = data.roundup[&order];
    let direct = m * data.u[&up];
    if value != direct {
        return Err(Error::Inconsistent(format!(
            "character value at regular order {order}: induced sum {value} != m*u(roundup) = {direct}"
        )));
    }
    Ok(value)
}

fn number_mobius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return 0;
            }
            mu = -mu;
        }
        f += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn euler_totient(n: u64) -> u64 {
    let mut n = n;
    let mut phi = n;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            phi -= phi / f;
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// The averaged sign sum `S(m,k) = (1/m) * sum_{d|m} mu(d) (-1)^(mk/d - 1)`.
/// Equals `(-1)^(km-1)` when `m = 1`, or `m = 2` with `k` odd, and `0`
/// otherwise; the closed form is asserted against the sum.
pub fn s_helper(m: u64, k: u64) -> Rational64 {
    assert!(m > 0 && k > 0);
    let mut sum = 0i64;
    for d in (1..=m).filter(|d| m % d == 0) {
        let exponent = m * k / d;
        let sign = if exponent % 2 == 0 { -1 } else { 1 };
        sum += number_mobius(d) * sign;
    }
    let value = Rational64::new(sum, m as i64);
    let closed = if m == 1 || (m == 2 && k % 2 == 1) {
        let sign = if (k * m) % 2 == 0 { -1 } else { 1 };
        Rational64::from(sign)
    } else {
        Rational64::zero()
    };
    assert_eq!(value, closed, "S({m},{k}) closed form");
    value
}

fn merged(terms: &[(u64, i64)]) -> BTreeMap<u64, i64> {
    let mut map: BTreeMap<u64, i64> = BTreeMap::new();
    for &(d, a) in terms {
        *map.entry(d).or_default() += a;
    }
    map.retain(|_, a| *a != 0);
    map
}

/// The case-split closed form for `chi_Gamma` of `G(r,p,l)`.
pub fn closed_form_infinite(r: u64, p: u64, l: u64) -> Result<VirtualCharacter> {
    let g = GroupId::infinite(r, p, l)?;
    if !classify(g)?.irreducible {
        return Err(Error::NotIrreducible {
            group: g.to_string(),
            reason: "reducible".to_string(),
        });
    }
    let q = r / p;
    let terms: Vec<(u64, i64)> = if q > 1 {
        if l % 2 == 1 {
            vec![(l * q, 1)]
        } else if p % 2 == 0 {
            vec![(l * q, -1)]
        } else {
            vec![(l * q, 1), (q * l / 2, -1)]
        }
    } else {
        // p = r, including the symmetric group r = 1.
        if l % 2 == 1 {
            vec![((l - 1) * r, 1), (r * (l - 1) / 2, -1), (l, 1)]
        } else if r % 2 == 0 {
            vec![((l - 1) * r, 1), (l, -1)]
        } else {
            vec![((l - 1) * r, 1), (l, 1), (l / 2, -1)]
        }
    };
    Ok(VirtualCharacter {
        group: g,
        m: discriminant_degree(g)?,
        coeffs: merged(&terms),
        reducible: false,
    })
}

/// The coefficient `c(G) = chi(U deg / G)` of `I_z`, by the case list:
/// `(-1)^(n-1)` for rank <= 2, for `G(del,el,l)` other than `G(3,3,3)`,
/// for `G(del,el,2l)` with `el` odd, and for `G27`, `G29`, and `G34`;
/// else `0`.  (G27 belongs on the list: with codegrees {0,18,24} the
/// Moebius inversion gives a_6 = 6*(432/2160 - 1/30) = 1.)
pub fn c_classifier(g: GroupId) -> Result<i64> {
    let class = classify(g)?;
    if !class.irreducible {
        return Err(Error::NotIrreducible {
            group: g.to_string(),
            reason: "reducible".to_string(),
        });
    }
    let n = class.rank as u32;
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let in_list = match g {
        GroupId::Exceptional { n: idx } => {
            class.rank <= 2 || idx == 27 || idx == 29 || idx == 34
        }
        GroupId::Infinite { r, p, l } => {
            class.rank <= 2
                || (p % l == 0 && (r, p, l) != (3, 3, 3))
                || (l % 2 == 0 && p % (l / 2) == 0 && p % 2 == 1)
        }
    };
    Ok(if in_list { sign } else { 0 })
}

/// Which Euler characteristic to extract from a character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotientMode {
    /// Orbifold Euler characteristic of F under G x C_m: sum of d*a_d.
    OrbifoldF,
    /// Ordinary Euler characteristic of F/(G x C_m): sum of a_d.
    OrdinaryQuotient,
    /// Orbifold Euler characteristic of F/(G x C_m): sum of d*a_d.
    OrbifoldQuotient,
    /// Euler characteristic of U/G: sum of a_d.
    UModG,
}

/// Quotient and orbifold Euler characteristics derived from a character.
/// The orbifold sum is verified against its totient rearrangement over
/// the regular numbers.
pub fn quotient_euler(chi: &VirtualCharacter, mode: QuotientMode) -> Result<i128> {
    if chi.reducible {
        return Ok(0);
    }
    let weighted: i128 = chi.coeffs.iter().map(|(&d, &a)| d as i128 * a as i128).sum();
    let plain: i128 = chi.coeffs.values().map(|&a| a as i128).sum();
    let profile = degree_profile(chi.group)?;
    let data = regular_data(&profile)?;
    // Totient rearrangement: phi(d') counts the conjugacy classes of
    // regular pairs of order d', each contributing the quotient Euler
    // characteristic of its centralizer, sum_{d in D, d'|d} a_d.
    let rearranged: i128 = data
        .regular
        .iter()
        .map(|&dp| {
            let tail: i128 = chi
                .coeffs
                .iter()
                .filter(|&(&d, _)| d % dp == 0)
                .map(|(_, &a)| a as i128)
                .sum();
            euler_totient(dp) as i128 * tail
        })
        .sum();
    if rearranged != weighted {
        return Err(Error::Inconsistent(format!(
            "orbifold Euler characteristic: totient rearrangement {rearranged} != direct sum {weighted}"
        )));
    }
    Ok(match mode {
        QuotientMode::OrbifoldF | QuotientMode::OrbifoldQuotient => weighted,
        QuotientMode::OrdinaryQuotient | QuotientMode::UModG => plain,
    })
}

/// Check that the coefficients of the centralizer at `e` agree with the
/// group's own coefficients on the common index set `{d in D : e | d}`.
pub fn restriction_check(g: GroupId, e: u64) -> Result<bool> {
    let profile = degree_profile(g)?;
    let poset = maximal_poset(&profile);
    if !poset.contains(&e) {
        return Err(Error::NotRegular { d: e });
    }
    let own = coefficients_from_profile(&profile)?;
    let centralizer = identify_centralizer(g, e)?;
    let sub_coeffs = coefficients_from_profile(centralizer.profile())?;
    for &d in poset.iter().filter(|&&d| d % e == 0) {
        let a = own.get(&d).copied().unwrap_or(0);
        let a_sub = sub_coeffs.get(&d).copied().unwrap_or(0);
        if a != a_sub {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    fn chi(spec: &str) -> VirtualCharacter {
        chi_character(parse_group(spec).unwrap(), None).unwrap()
    }

    #[test]
    fn coefficients_examples() {
        let e8 = coefficients(parse_group("G37").unwrap()).unwrap();
        let expect: BTreeMap<u64, i64> = [
            (30, 1),
            (24, 1),
            (20, 1),
            (12, -1),
            (10, -1),
            (8, -1),
            (6, 0),
            (4, 0),
            (2, 0),
        ]
        .into_iter()
        .collect();
        assert_eq!(e8, expect);

        let g312 = coefficients(parse_group("G(3,1,2)").unwrap()).unwrap();
        assert_eq!(g312, [(6, 1), (3, -1)].into_iter().collect());

        let g23 = coefficients(parse_group("G23").unwrap()).unwrap();
        assert_eq!(g23, [(10, 1), (6, 1), (2, 0)].into_iter().collect());
    }

    #[test]
    fn chi_rendering() {
        assert_eq!(chi("G37").render(), "I30+I24+I20-I12-I10-I8");
        assert_eq!(chi("G24").render(), "I14+I6");
        assert_eq!(chi("G31").render(), "I24+I20-I12-I8");
        assert_eq!(chi("G(5,1,1)").render(), "I5");
        assert_eq!(chi("G15").render(), "-I12");
    }

    #[test]
    fn chi_reducible_is_zero() {
        let z = chi_character(parse_group("G(2,2,2)").unwrap(), None).unwrap();
        assert!(z.reducible);
        assert!(z.coeffs.is_empty());
        assert_eq!(z.render(), "0");
    }

    #[test]
    fn chi_custom_m_validation() {
        let g = parse_group("G(3,1,2)").unwrap();
        assert!(chi_character(g, Some(24)).is_ok());
        assert!(matches!(
            chi_character(g, Some(9)),
            Err(Error::InvalidAmbientDegree { m: 9, d: 2 })
        ));
        // Coefficients do not depend on m.
        assert_eq!(
            chi_character(g, Some(24)).unwrap().coeffs,
            chi_character(g, None).unwrap().coeffs
        );
    }

    #[test]
    fn evaluate_examples() {
        let e8 = chi("G37");
        assert_eq!(
            evaluate_character(&e8, ClassSpec::Regular { order: 30 }).unwrap(),
            240
        );
        assert_eq!(evaluate_character(&e8, ClassSpec::Nonregular).unwrap(), 0);

        let g312 = chi("G(3,1,2)");
        assert_eq!(
            evaluate_character(&g312, ClassSpec::Regular { order: 1 }).unwrap(),
            -36
        );
        assert!(matches!(
            evaluate_character(&g312, ClassSpec::Regular { order: 4 }),
            Err(Error::NotRegular { d: 4 })
        ));
    }

    #[test]
    fn s_helper_cases() {
        for k in 1..=10u64 {
            let expect = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(s_helper(1, k), Rational64::from(expect));
        }
        assert_eq!(s_helper(2, 3), Rational64::from(-1));
        assert_eq!(s_helper(2, 5), Rational64::from(-1));
        assert_eq!(s_helper(4, 1), Rational64::zero());
        assert_eq!(s_helper(2, 2), Rational64::zero());
        assert_eq!(s_helper(6, 5), Rational64::zero());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_infinite(3, 1, 2).unwrap().coeffs,
            [(6, 1), (3, -1)].into_iter().collect()
        );
        assert_eq!(
            closed_form_infinite(5, 1, 3).unwrap().coeffs,
            [(15, 1)].into_iter().collect()
        );
        assert_eq!(
            closed_form_infinite(3, 3, 4).unwrap().coeffs,
            [(9, 1), (4, 1), (2, -1)].into_iter().collect()
        );
        // G(3,3,3): the -I_3 and +I_3 terms cancel.
        assert_eq!(
            closed_form_infinite(3, 3, 3).unwrap().coeffs,
            [(6, 1)].into_iter().collect()
        );
        assert!(closed_form_infinite(2, 2, 2).is_err());
    }

    #[test]
    fn classifier_examples() {
        assert_eq!(c_classifier(parse_group("G(3,3,3)").unwrap()).unwrap(), 0);
        assert_eq!(c_classifier(parse_group("G29").unwrap()).unwrap(), -1);
        assert_eq!(c_classifier(parse_group("G34").unwrap()).unwrap(), -1);
        assert_eq!(c_classifier(parse_group("G(6,2,2)").unwrap()).unwrap(), -1);
        assert_eq!(c_classifier(parse_group("G(5,1,1)").unwrap()).unwrap(), 1);
        assert_eq!(c_classifier(parse_group("G30").unwrap()).unwrap(), 0);
        // G27: a_6 = 1 by Moebius inversion, so c = (-1)^(3-1) = 1.
        assert_eq!(c_classifier(parse_group("G27").unwrap()).unwrap(), 1);
    }

    #[test]
    fn quotient_euler_examples() {
        let e8 = chi("G37");
        assert_eq!(quotient_euler(&e8, QuotientMode::OrbifoldF).unwrap(), 44);
        assert_eq!(quotient_euler(&e8, QuotientMode::UModG).unwrap(), 0);
        let g23 = chi("G23");
        assert_eq!(quotient_euler(&g23, QuotientMode::OrbifoldF).unwrap(), 16);
        assert_eq!(
            quotient_euler(&g23, QuotientMode::OrbifoldQuotient).unwrap(),
            16
        );
    }

    #[test]
    fn restriction_examples() {
        let e8 = parse_group("G37").unwrap();
        assert!(restriction_check(e8, 4).unwrap());
        assert!(restriction_check(e8, 6).unwrap());
        // Restriction at the centre order is the identity restriction.
        assert!(restriction_check(e8, 2).unwrap());
        assert!(restriction_check(parse_group("G(3,3,4)").unwrap(), 9).unwrap());
    }
}
