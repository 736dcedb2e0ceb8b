//! Rational Hilbert series and their exact coefficient streams.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use crate::census::{count_k, totals};
use crate::charpoly::{a_script, k_script};
use crate::coxeter::CoxeterGraph;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// `numerator(t) / denominator(t)` with `denominator(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalSeries {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self> {
        if denominator.coeff(0).is_zero() {
            return Err(Error::SingularSeries);
        }
        Ok(RationalSeries {
            numerator,
            denominator,
        })
    }

    /// `1 / denominator`.
    pub fn inverse_of(denominator: IntPolynomial) -> Result<Self> {
        Self::new(IntPolynomial::one(), denominator)
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    pub fn stream(&self) -> CoefficientStream<'_> {
        CoefficientStream {
            series: self,
            history: Vec::new(),
        }
    }

    /// `c₀ ..= c_K`.
    pub fn coefficients(&self, max_k: usize) -> Result<Vec<BigInt>> {
        self.stream().take(max_k + 1).collect()
    }

    /// Exact ratio `c_{K+1} / c_K`.
    pub fn growth_ratio(&self, k: usize) -> Result<BigRational> {
        let c = self.coefficients(k + 1)?;
        if c[k].is_zero() {
            return Err(Error::ZeroCoefficient { index: k });
        }
        Ok(BigRational::new(c[k + 1].clone(), c[k].clone()))
    }

    pub fn to_json(&self, max_k: usize) -> Result<serde_json::Value> {
        let coefficients: Vec<String> = self
            .coefficients(max_k)?
            .iter()
            .map(|c| c.to_string())
            .collect();
        Ok(json!({
            "numerator": self.numerator.to_strings(),
            "denominator": self.denominator.to_strings(),
            "coefficients": coefficients,
        }))
    }
}

/// Coefficients from `d₀c_k = a_k − Σ_{i≥1} d_i c_{k−i}`.
/// Restart by calling [`RationalSeries::stream`] again.
pub struct CoefficientStream<'a> {
    series: &'a RationalSeries,
    history: Vec<BigInt>,
}

impl Iterator for CoefficientStream<'_> {
    type Item = Result<BigInt>;

    fn next(&mut self) -> Option<Self::Item> {
        let k = self.history.len();
        let d = self.series.denominator.coeffs();
        let mut acc = self.series.numerator.coeff(k);
        for (i, di) in d.iter().enumerate().skip(1).take(k) {
            acc -= di * &self.history[k - i];
        }
        let (q, r) = acc.div_rem(&d[0]);
        if !r.is_zero() {
            return Some(Err(Error::NonIntegralCoefficient { index: k }));
        }
        self.history.push(q.clone());
        Some(Ok(q))
    }
}

/// `1 / (t^d p(1/t))` after removing the power of λ dividing `p`.
pub fn series_from_charpoly(p: &IntPolynomial) -> Result<RationalSeries> {
    if !p.is_monic() {
        return Err(Error::NotMonic(p.to_string()));
    }
    let (_, reduced) = p.strip_zero_roots();
    RationalSeries::inverse_of(reduced.reciprocal())
}

/// `t^d p(1/t)` for the reduced part of `p`: the denominator of its series.
pub fn det_w(p: &IntPolynomial) -> IntPolynomial {
    p.strip_zero_roots().1.reciprocal()
}

/// Series of `K∞ₙ` words starting with `yₘ`, `2 <= m <= n−1`:
/// `t^{m−1}𝒜_{m−2}(1/t) / (tⁿ𝒦ₙ(1/t))`.
pub fn partial_series_k(n: usize, m: usize) -> Result<RationalSeries> {
    if n < 3 || m < 2 || m > n - 1 {
        return Err(Error::IndexOutOfRange {
            m,
            n,
            max: n.saturating_sub(1),
        });
    }
    let numerator = a_script(m - 2).reciprocal().shift_up(1);
    RationalSeries::new(numerator, det_w(&k_script(n)))
}

/// Start-letter series for every `1 <= m <= n`, using `H₁ = H₂` and `Hₙ = Hₙ₋₁`.
pub fn start_series_k(n: usize, m: usize) -> Result<RationalSeries> {
    if n >= 3 && m == 1 {
        partial_series_k(n, 2)
    } else if n >= 3 && m == n {
        partial_series_k(n, n - 1)
    } else {
        partial_series_k(n, m)
    }
}

/// Whether `1 + Σₘ H_{K;m} = H_K` through order `K`, and both agree with
/// the counting recurrence.
pub fn sum_identity_check(n: usize, max_k: usize) -> Result<bool> {
    let total = series_from_charpoly(&k_script(n))?.coefficients(max_k)?;
    let mut sum = vec![BigInt::zero(); max_k + 1];
    sum[0] = BigInt::one();
    for m in 1..=n {
        for (s, c) in sum
            .iter_mut()
            .zip(start_series_k(n, m)?.coefficients(max_k)?)
        {
            *s += c;
        }
    }
    let census: Vec<BigInt> = totals(&count_k(n, max_k)?)
        .into_iter()
        .map(BigInt::from)
        .collect();
    Ok(sum == total && total == census)
}

/// `Σ (−t)^{|S|}` over cliques `S` of the commutation graph (pairs labelled 2)
/// of a right-angled graph, including the empty clique.
pub fn mobius_denominator(g: &CoxeterGraph) -> Result<IntPolynomial> {
    if !g.is_right_angled() {
        return Err(Error::UnsupportedGraph(
            "Möbius denominator needs a right-angled graph".into(),
        ));
    }
    let n = g.rank();
    if n > 64 {
        return Err(Error::UnsupportedGraph(format!("rank {n} exceeds 64")));
    }
    // Cliques of the commutation graph are independent sets of the ∞-graph:
    // μ(V) = μ(V − v) − t μ(V − N[v]).
    let closed: Vec<u64> = (1..=n)
        .map(|i| {
            (1..=n)
                .filter(|&j| j == i || !g.commutes(i, j))
                .fold(0u64, |m, j| m | 1 << (j - 1))
        })
        .collect();
    fn go(set: u64, closed: &[u64], memo: &mut HashMap<u64, IntPolynomial>) -> IntPolynomial {
        if set == 0 {
            return IntPolynomial::one();
        }
        if let Some(p) = memo.get(&set) {
            return p.clone();
        }
        let v = set.trailing_zeros() as usize;
        let without = go(set & !(1 << v), closed, memo);
        let with = go(set & !closed[v], closed, memo).shift_up(1);
        let p = &without - &with;
        memo.insert(set, p.clone());
        p
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(go(all, &closed, &mut HashMap::new()))
}
