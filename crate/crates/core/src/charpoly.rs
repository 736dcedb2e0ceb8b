//! Characteristic polynomials of the counting recurrences and the
//! Chebyshev-type families they factor into.
//!
//! Naming: `k_script(n)` is the full characteristic polynomial of the
//! `K∞ₙ` recurrence; `k_reduced(n)` is what remains after removing the power
//! of λ. The `a_*` and `d_*` functions play the same roles for `A∞ₙ` and
//! `D∞ₙ`, and `e_script` for `E∞ₙ`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Lazily extended sequence defined by seeds and a recurrence on the prefix.
struct Ladder {
    seeds: fn() -> Vec<IntPolynomial>,
    step: fn(&[IntPolynomial]) -> IntPolynomial,
    cache: OnceLock<RwLock<Vec<IntPolynomial>>>,
}

impl Ladder {
    const fn new(
        seeds: fn() -> Vec<IntPolynomial>,
        step: fn(&[IntPolynomial]) -> IntPolynomial,
    ) -> Self {
        Ladder {
            seeds,
            step,
            cache: OnceLock::new(),
        }
    }

    fn get(&self, index: usize) -> IntPolynomial {
        let lock = self.cache.get_or_init(|| RwLock::new((self.seeds)()));
        if let Some(p) = lock.read().unwrap().get(index) {
            return p.clone();
        }
        let mut v = lock.write().unwrap();
        while v.len() <= index {
            let next = (self.step)(&v);
            v.push(next);
        }
        v[index].clone()
    }
}

fn lambda() -> IntPolynomial {
    IntPolynomial::x()
}

/// `X_m = λ (X_{m-1} - X_{m-2})`
fn step_one(prev: &[IntPolynomial]) -> IntPolynomial {
    let m = prev.len();
    &lambda() * &(&prev[m - 1] - &prev[m - 2])
}

/// `X_m = (λ - 2) X_{m-2} - X_{m-4}`
fn step_two(prev: &[IntPolynomial]) -> IntPolynomial {
    let m = prev.len();
    &(&IntPolynomial::linear(-2) * &prev[m - 2]) - &prev[m - 4]
}

static K_SCRIPT: Ladder = Ladder::new(|| vec![IntPolynomial::constant(2), lambda()], step_one);
static A_SCRIPT: Ladder = Ladder::new(
    || vec![IntPolynomial::one(), IntPolynomial::linear(-1)],
    step_one,
);
static K_REDUCED: Ladder = Ladder::new(
    || {
        vec![
            IntPolynomial::constant(2),
            IntPolynomial::one(),
            IntPolynomial::linear(-2),
            IntPolynomial::linear(-3),
        ]
    },
    step_two,
);
// index shifted by one: slot 0 holds A_{-1}
static A_REDUCED: Ladder = Ladder::new(
    || {
        vec![
            IntPolynomial::one(),
            IntPolynomial::one(),
            IntPolynomial::linear(-1),
            IntPolynomial::linear(-2),
        ]
    },
    step_two,
);
// index shifted by three: slot 0 holds λ·D₃
static D_SCRIPT: Ladder = Ladder::new(|| vec![&lambda() * &d3(), &lambda() * &d4()], step_one);

fn d3() -> IntPolynomial {
    IntPolynomial::from_i64s(&[1, -3, 1])
}

fn d4() -> IntPolynomial {
    IntPolynomial::from_i64s(&[-1, 3, -4, 1])
}

fn d5() -> IntPolynomial {
    IntPolynomial::from_i64s(&[-2, 6, -5, 1])
}

/// The three printed seeds `D₃, D₄, D₅`.
pub fn d_seeds() -> [IntPolynomial; 3] {
    [d3(), d4(), d5()]
}

/// `𝒦₀ = 2`, `𝒦₁ = λ`, `𝒦ₙ = λ𝒦ₙ₋₁ − λ𝒦ₙ₋₂`.
pub fn k_script(n: usize) -> IntPolynomial {
    K_SCRIPT.get(n)
}

/// `𝒜₀ = 1`, `𝒜₁ = λ − 1`, same step-one recurrence.
pub fn a_script(n: usize) -> IntPolynomial {
    A_SCRIPT.get(n)
}

/// `Kₙ` from the step-two recurrence with seeds `2, 1, λ−2, λ−3`.
pub fn k_reduced(n: usize) -> IntPolynomial {
    K_REDUCED.get(n)
}

/// `Aₙ` for `n >= -1`, seeds `A₋₁ = A₀ = 1`, `A₁ = λ−1`, `A₂ = λ−2`.
pub fn a_reduced(n: i64) -> Result<IntPolynomial> {
    if n < -1 {
        return Err(Error::InvalidRank {
            family: "A (reduced)".into(),
            constraint: "n >= -1",
            got: 0,
        });
    }
    Ok(A_REDUCED.get((n + 1) as usize))
}

fn check_d(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidRank {
            family: "D".into(),
            constraint: "n >= 3",
            got: n,
        });
    }
    Ok(())
}

/// Characteristic polynomial `𝒟ₙ` of the `D∞ₙ` recurrence, built by the
/// step-one recurrence from `𝒟₃ = λD₃` and `𝒟₄ = λD₄`.
pub fn d_script(n: usize) -> Result<IntPolynomial> {
    check_d(n)?;
    Ok(D_SCRIPT.get(n - 3))
}

/// `Dₙ = 𝒟ₙ / λ^⌊(n−1)/2⌋`.
pub fn d_reduced(n: usize) -> Result<IntPolynomial> {
    d_script(n)?.div_monomial_power((n - 1) / 2)
}

/// `ℰₙ = λ^⌊n/2⌋ (λ − 1) Kₙ₋₁` for `n >= 6`.
pub fn e_script(n: usize) -> Result<IntPolynomial> {
    if n < 6 {
        return Err(Error::InvalidRank {
            family: "E".into(),
            constraint: "n >= 6",
            got: n,
        });
    }
    Ok((&IntPolynomial::linear(-1) * &k_reduced(n - 1)).shift_up(n / 2))
}

/// Power of λ split off from `𝒦ₙ`: `⌊(n+1)/2⌋`.
pub fn k_zero_multiplicity(n: usize) -> usize {
    n.div_ceil(2)
}

/// Closed binomial form of `Kₙ` in terms of `λ − 2` and `q = λ² − 4λ`,
/// accumulated over the integers and divided by the power of two once.
pub fn k_closed_form(n: usize) -> IntPolynomial {
    let p = n / 2;
    let shifted = IntPolynomial::linear(-2);
    let q = IntPolynomial::from_i64s(&[0, -4, 1]);
    let even_sum = |p: usize| -> IntPolynomial {
        (0..=p / 2).fold(IntPolynomial::zero(), |acc, i| {
            let term = &shifted.pow((p - 2 * i) as u32) * &q.pow(i as u32);
            &acc + &term.scale(&binomial(BigInt::from(p), BigInt::from(2 * i)))
        })
    };
    if n.is_multiple_of(2) {
        let s = even_sum(p);
        if p == 0 {
            s.scale(&BigInt::from(2))
        } else {
            divide_by_power_of_two(&s, p - 1)
        }
    } else {
        let odd_sum = (0..=p.saturating_sub(1) / 2).filter(|&i| 2 * i < p).fold(
            IntPolynomial::zero(),
            |acc, i| {
                let term = &shifted.pow((p - 2 * i - 1) as u32) * &q.pow(i as u32);
                &acc + &term.scale(&binomial(BigInt::from(p), BigInt::from(2 * i + 1)))
            },
        );
        let s = &even_sum(p) + &(&IntPolynomial::linear(-4) * &odd_sum);
        divide_by_power_of_two(&s, p)
    }
}

fn divide_by_power_of_two(p: &IntPolynomial, e: usize) -> IntPolynomial {
    let d = BigInt::one() << e;
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| {
            assert!(
                (c % &d).is_zero(),
                "closed form numerator not divisible by 2^{e}"
            );
            c / &d
        })
        .collect();
    IntPolynomial::new(coeffs)
}

/// `𝒦ₙ = λ𝒜ₙ₋₁ − λ²𝒜ₙ₋₃` as an exact polynomial identity (`n >= 3`).
pub fn sp_identity_check(n: usize) -> bool {
    if n < 3 {
        return false;
    }
    let rhs = &(&lambda() * &a_script(n - 1)) - &a_script(n - 3).shift_up(2);
    k_script(n) == rhs
}

/// `(Kₙ(0), Kₙ(4))`, evaluated exactly.
pub fn boundary_values(n: usize) -> (BigInt, BigInt) {
    let k = k_reduced(n);
    (k.eval_int(&BigInt::zero()), k.eval_int(&BigInt::from(4)))
}

/// Closed forms: `K₂ₚ(0) = 2(−1)ᵖ`, `K₂ₚ₊₁(0) = (−1)ᵖ(2p+1)`, `K₂ₚ(4) = 2`,
/// `K₂ₚ₊₁(4) = 1`.
pub fn expected_boundary_values(n: usize) -> (BigInt, BigInt) {
    let p = n / 2;
    let sign = if p.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    if n.is_multiple_of(2) {
        (sign * 2, BigInt::from(2))
    } else {
        (sign * BigInt::from(2 * p + 1), BigInt::one())
    }
}

/// `det(λI − M)` by fraction-free elimination over `Z[λ]`.
pub fn char_poly(matrix: &[Vec<i64>]) -> IntPolynomial {
    let n = matrix.len();
    let mut a: Vec<Vec<IntPolynomial>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            row.iter()
                .enumerate()
                .map(|(j, &m)| {
                    let entry = IntPolynomial::constant(-m);
                    if i == j {
                        &entry + &lambda()
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    determinant(&mut a)
}

/// Bareiss elimination; consumes the matrix contents.
pub fn determinant(a: &mut [Vec<IntPolynomial>]) -> IntPolynomial {
    let n = a.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut negate = false;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn k_script_seeds_and_small_cases() {
        assert_eq!(k_script(0), p(&[2]));
        assert_eq!(k_script(1), p(&[0, 1]));
        assert_eq!(k_script(2), p(&[0, -2, 1]));
        assert_eq!(k_script(3), p(&[0, 0, -3, 1]));
        assert_eq!(k_script(4), p(&[0, 0, 2, -4, 1]));
    }

    #[test]
    fn k_script_six_via_reduced_form() {
        // K₆ = (λ−2)(λ²−4λ+2) − (λ−2) from the step-two recurrence
        let k6 = &(&p(&[-2, 1]) * &p(&[2, -4, 1])) - &p(&[-2, 1]);
        assert_eq!(k_reduced(6), k6);
        assert_eq!(k_script(6), k6.shift_up(3));
        assert_eq!(
            k_script(6),
            &(&lambda() * &k_script(5)) - &(&lambda() * &k_script(4))
        );
    }

    #[test]
    fn a_family() {
        assert_eq!(a_script(0), p(&[1]));
        assert_eq!(a_script(1), p(&[-1, 1]));
        assert_eq!(a_script(2), p(&[0, -2, 1]));
        assert_eq!(a_reduced(4).unwrap(), p(&[3, -4, 1]));
        assert_eq!(a_reduced(4).unwrap().shift_up(2), a_script(4));
        assert!(a_reduced(-2).is_err());
    }

    #[test]
    fn reduced_seeds() {
        assert_eq!(k_reduced(3), p(&[-3, 1]));
        assert_eq!(d_reduced(3).unwrap(), d3());
        assert_eq!(d_reduced(4).unwrap(), d4());
        assert_eq!(d_reduced(5).unwrap(), p(&[-2, 6, -5, 1]));
        assert!(d_reduced(2).is_err());
    }

    #[test]
    fn closed_form_small() {
        assert_eq!(k_closed_form(0), p(&[2]));
        assert_eq!(k_closed_form(1), p(&[1]));
        assert_eq!(k_closed_form(2), p(&[-2, 1]));
        assert_eq!(k_closed_form(3), p(&[-3, 1]));
        assert_eq!(k_closed_form(5), k_reduced(5));
    }

    #[test]
    fn e8_polynomial() {
        let cubic = p(&[-7, 14, -7, 1]);
        assert_eq!(k_reduced(7), cubic);
        let expected = (&p(&[-1, 1]) * &cubic).shift_up(4);
        assert_eq!(e_script(8).unwrap(), expected);
        assert_eq!(
            e_script(6).unwrap(),
            (&p(&[-1, 1]) * &k_reduced(5)).shift_up(3)
        );
        assert!(e_script(5).is_err());
    }

    #[test]
    fn sp_identity_base_cases() {
        assert!(sp_identity_check(3));
        assert!(sp_identity_check(4));
        assert!(sp_identity_check(25));
        assert!(!sp_identity_check(2));
    }

    #[test]
    fn boundary_values_match_closed_form() {
        assert_eq!(boundary_values(4), (2.into(), 2.into()));
        assert_eq!(boundary_values(1), (1.into(), 1.into()));
        assert_eq!(boundary_values(11), ((-11).into(), 1.into()));
        for n in 0..30 {
            assert_eq!(boundary_values(n), expected_boundary_values(n), "n={n}");
        }
    }

    #[test]
    fn determinant_small() {
        assert_eq!(char_poly(&[vec![1, 1], vec![1, 1]]), p(&[0, -2, 1]));
        assert_eq!(char_poly(&[]), p(&[1]));
        // zero pivot in the polynomial matrix needs a swap
        let mut m = vec![vec![p(&[0]), p(&[1])], vec![p(&[1]), p(&[0])]];
        assert_eq!(determinant(&mut m), p(&[-1]));
    }
}
