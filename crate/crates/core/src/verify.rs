//! Identity and certification battery run by `artin-growth verify`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use crate::census::{
    count_bruteforce_upto, count_e8, count_k, e_transfer_matrix, fibonacci_shifted,
    k_transfer_matrix, totals, transfer_matrix, verify_chain, DEFAULT_GUARD,
};
use crate::charpoly::{
    a_reduced, a_script, boundary_values, char_poly, d_reduced, d_script, d_seeds, e_script,
    expected_boundary_values, k_closed_form, k_reduced, k_script, sp_identity_check,
};
use crate::coxeter::{build_family, presentation, Family};
use crate::error::Result;
use crate::hilbert::{det_w, mobius_denominator, series_from_charpoly};
use crate::poly::IntPolynomial;
use crate::rewrite::CanonicalForms;
use crate::spectra::{
    default_width, growth_bound, verify_in_interval, verify_interlacing, ChebyshevFamily,
};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn run(
    name: &'static str,
    f: impl FnOnce() -> Result<std::result::Result<String, String>>,
) -> Check {
    match f() {
        Ok(Ok(detail)) => Check {
            name,
            passed: true,
            detail,
        },
        Ok(Err(detail)) => Check {
            name,
            passed: false,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_int(v: Vec<BigUint>) -> Vec<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    ok: impl Fn(&T) -> Result<bool>,
    what: &str,
) -> Result<std::result::Result<String, String>>
where
    T: std::fmt::Debug,
{
    let mut n = 0;
    for item in items {
        if !ok(&item)? {
            return Ok(Err(format!("{what} fails at {item:?}")));
        }
        n += 1;
    }
    Ok(Ok(format!("{what}: {n} cases")))
}

/// Recurrence, normal forms, brute force and the Hilbert series agree.
pub fn check_kinf_counts() -> Check {
    run("kinf_counts", || {
        first_failure(
            3..=5usize,
            |&n| {
                let k = 5;
                let rec = to_int(totals(&count_k(n, k)?));
                let forms = CanonicalForms::new(&build_family(Family::KInf(n))?)?;
                let canon: Vec<BigInt> = (0..=k).map(|i| BigInt::from(forms.count(i))).collect();
                let brute = to_int(count_bruteforce_upto(
                    &presentation(&build_family(Family::KInf(n))?),
                    k,
                    DEFAULT_GUARD,
                )?);
                let series = series_from_charpoly(&k_script(n))?.coefficients(k)?;
                Ok(rec == canon && canon == brute && brute == series)
            },
            "Kinf counts by four routes, n",
        )
    })
}

pub fn check_braids() -> Check {
    run("braid_fibonacci", || {
        let counts = count_bruteforce_upto(
            &presentation(&build_family(Family::A(2))?),
            12,
            DEFAULT_GUARD,
        )?;
        first_failure(
            0..=12usize,
            |&k| Ok(counts[k] == fibonacci_shifted(k + 2) - 1u32),
            "positive 3-strand braids, k",
        )
    })
}

/// Determinants of transfer matrices against the polynomial ladders.
pub fn check_transfer_determinants() -> Check {
    run("transfer_determinants", || {
        let e8 =
            &(&IntPolynomial::linear(-1) * &IntPolynomial::from_i64s(&[-7, 14, -7, 1])).shift_up(4);
        if char_poly(&e_transfer_matrix(8)) != *e8 || e_script(8)? != *e8 {
            return Ok(Err("E8 polynomial mismatch".into()));
        }
        first_failure(
            3..=12usize,
            |&n| {
                let a = build_family(Family::A(n))?.right_angled();
                let mut ok = char_poly(&k_transfer_matrix(n)) == k_script(n)
                    && char_poly(&transfer_matrix(&a)?) == a_script(n);
                if n >= 4 {
                    let d = build_family(Family::D(n))?.right_angled();
                    ok &= char_poly(&transfer_matrix(&d)?) == d_script(n)?;
                }
                Ok(ok)
            },
            "transfer determinants, n",
        )
    })
}

/// Factorizations, the closed form, boundary values and the Möbius
/// denominators of the right-angled families.
pub fn check_identities(max_n: usize) -> Check {
    run("polynomial_identities", || {
        first_failure(
            3..=max_n,
            |&n| {
                let factor_k = k_script(n) == k_reduced(n).shift_up(n.div_ceil(2));
                let factor_a = a_script(n) == a_reduced(n as i64)?.shift_up(n / 2);
                let factor_d = d_script(n)? == d_reduced(n)?.shift_up((n - 1) / 2);
                let closed = k_closed_form(n) == k_reduced(n);
                let boundary = boundary_values(n) == expected_boundary_values(n);
                Ok(sp_identity_check(n) && factor_k && factor_a && factor_d && closed && boundary)
            },
            "identities, n",
        )
    })
}

pub fn check_mobius(max_n: usize) -> Check {
    run("mobius_denominators", || {
        first_failure(
            3..=max_n.min(24),
            |&n| {
                let a = build_family(Family::A(n))?.right_angled();
                let k = build_family(Family::KInf(n))?;
                let mut ok = mobius_denominator(&k)? == det_w(&k_script(n))
                    && mobius_denominator(&a)? == det_w(&a_script(n));
                if n >= 4 {
                    let d = build_family(Family::D(n))?.right_angled();
                    ok &= mobius_denominator(&d)? == det_w(&d_script(n)?);
                }
                if (6..=8).contains(&n) {
                    ok &= mobius_denominator(&build_family(Family::E(n))?.right_angled())?
                        == det_w(&e_script(n)?);
                }
                Ok(ok)
            },
            "Möbius denominators, n",
        )
    })
}

pub fn check_localization(max_n: usize) -> Check {
    run("root_localization", || {
        first_failure(
            2..=max_n,
            |&n| {
                let c = verify_in_interval(&k_reduced(n), &rat(0), &rat(4));
                Ok(c.holds && c.simple && c.distinct_nonzero_roots == n / 2)
            },
            "roots of K_n real, simple, in (0,4), n",
        )
    })
}

pub fn check_chebyshev() -> Check {
    run("boundary_signs", || {
        let ok = ChebyshevFamily::k_even().check_boundary_signs(25)
            && ChebyshevFamily::k_odd().check_boundary_signs(25)
            && ChebyshevFamily::chebyshev_t().check_boundary_signs(5);
        Ok(if ok {
            Ok("both K ladders and T_n".into())
        } else {
            Err("sign pattern violated".into())
        })
    })
}

pub fn check_interlacing(max_p: usize) -> Check {
    run("interlacing", || {
        let w = default_width();
        first_failure(
            0..=max_p,
            |&p| {
                let even = verify_interlacing(
                    &k_reduced(2 * p),
                    &k_reduced(2 * p + 2),
                    &rat(0),
                    &rat(4),
                    &w,
                )?;
                let odd = verify_interlacing(
                    &k_reduced(2 * p + 1),
                    &k_reduced(2 * p + 3),
                    &rat(0),
                    &rat(4),
                    &w,
                )?;
                Ok(even && odd)
            },
            "interlacing on both ladders, p",
        )
    })
}

pub fn check_growth(max_n: usize) -> Check {
    run("growth_bounds", || {
        let mut families: Vec<Family> = (3..=max_n)
            .flat_map(|n| [Family::KInf(n), Family::A(n)])
            .collect();
        families.extend((4..=max_n).map(Family::D));
        families.extend((6..=8).map(Family::E));
        first_failure(
            families,
            |&f| Ok(growth_bound(f).is_ok()),
            "certified bound below 4",
        )
    })
}

pub fn check_d_family() -> Check {
    run("d_family", || {
        let [d3, d4, d5] = d_seeds();
        let ok = d_reduced(3)? == d3
            && d_reduced(4)? == d4
            && d_reduced(5)? == d5
            && !verify_in_interval(&d4, &rat(0), &rat(4)).holds
            && verify_in_interval(&d5, &rat(0), &rat(4)).holds;
        Ok(if ok {
            Ok("D3, D4, D5".into())
        } else {
            Err("D seed mismatch".into())
        })
    })
}

pub fn check_chain() -> Check {
    run("inequality_chain", || {
        let fams = [Family::A(3), Family::A(4), Family::B(3), Family::D(4)];
        let cases: Vec<(Family, usize)> = fams
            .iter()
            .flat_map(|&f| (0..=4).map(move |k| (f, k)))
            .collect();
        first_failure(
            cases,
            |&(f, k)| Ok(verify_chain(f, k, DEFAULT_GUARD)?.holds()),
            "a_k <= b_k <= c_k",
        )
    })
}

/// Ranks up to 8: beyond that the ratio of `K∞ₙ` (from n = 10) and `A∞ₙ`
/// (from n = 12) still exceeds 4 at k = 10 and only drops below later.
pub fn check_ratios(max_n: usize) -> Check {
    run("ratio_bound", || {
        let mut polys: Vec<(String, IntPolynomial)> = Vec::new();
        for n in 2..=max_n.min(8) {
            polys.push((format!("Kinf{n}"), k_script(n)));
            polys.push((format!("Ainf{n}"), a_script(n)));
            if n >= 3 {
                polys.push((format!("Dinf{n}"), d_script(n)?));
            }
        }
        for n in 6..=8 {
            polys.push((format!("Einf{n}"), e_script(n)?));
        }
        first_failure(
            polys,
            |(_, p)| {
                let c = series_from_charpoly(p)?.coefficients(65)?;
                Ok((10..=64).all(|k| c[k + 1] < BigInt::from(4) * &c[k]))
            },
            "c_{k+1} < 4 c_k for 10 <= k <= 64",
        )
    })
}

pub fn check_e8_counts() -> Check {
    run("e8_counts", || {
        let rec = to_int(totals(&count_e8(10)));
        let series = series_from_charpoly(&e_script(8)?)?.coefficients(10)?;
        let forms = CanonicalForms::new(&build_family(Family::E(8))?.right_angled())?;
        let canon: Vec<BigInt> = (0..=10).map(|k| BigInt::from(forms.count(k))).collect();
        Ok(if rec == series && series == canon {
            Ok("E8 counts k <= 10".into())
        } else {
            Err("E8 count mismatch".into())
        })
    })
}

/// Every check, with rank ranges up to `max_n`.
pub fn run_battery(max_n: usize) -> Vec<Check> {
    vec![
        check_kinf_counts(),
        check_braids(),
        check_e8_counts(),
        check_transfer_determinants(),
        check_identities(max_n),
        check_mobius(max_n),
        check_localization(max_n),
        check_chebyshev(),
        check_interlacing((max_n.saturating_sub(3) / 2).min(18)),
        check_growth(max_n),
        check_d_family(),
        check_chain(),
        check_ratios(max_n),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes() {
        for c in run_battery(10) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
