//! Certified real-root analysis with exact rational arithmetic: Sturm
//! chains, bisection isolation, interlacing, boundary-sign checks for
//! Chebyshev-type families and growth-rate bounds.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::charpoly::{a_reduced, d_reduced, e_script, k_reduced};
use crate::coxeter::{CoxeterGraph, Family};
use crate::error::{Error, Result};
use crate::hilbert::mobius_denominator;
use crate::poly::IntPolynomial;

/// Default isolation width, `2⁻⁴⁰`.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 40)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn four() -> BigRational {
    rat(4)
}

/// Closed rational interval; degenerate when the root is an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat(2)
    }

    /// Largest absolute value over the interval.
    pub fn magnitude(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }
}

fn ser_rat(r: &BigRational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Interval", 2)?;
        st.serialize_field("lo", &ser_rat(&self.lo))?;
        st.serialize_field("hi", &ser_rat(&self.hi))?;
        st.end()
    }
}

/// Sturm chain `p₀ = p, p₁ = p', pᵢ₊₁ = −rem(pᵢ₋₁, pᵢ)`, each term divided
/// by its (positive) content.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPolynomial>,
}

fn positive_content_part(p: &IntPolynomial) -> IntPolynomial {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    IntPolynomial::new(p.coeffs().iter().map(|x| x / &c).collect())
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut polys = vec![positive_content_part(p)];
        let d = positive_content_part(&p.derivative());
        if !d.is_zero() {
            polys.push(d);
        }
        while polys.len() >= 2 {
            let (a, b) = (&polys[polys.len() - 2], &polys[polys.len() - 1]);
            if b.degree() == Some(0) {
                break;
            }
            let (r, sign) = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let next = if sign == Ordering::Greater { -r } else { r };
            polys.push(positive_content_part(&next));
        }
        SturmChain { polys }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polynomials(&self) -> &[IntPolynomial] {
        &self.polys
    }

    fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut changes = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations(&self, x: &BigRational) -> usize {
        Self::count_changes(self.polys.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::count_changes(self.polys.iter().map(|p| {
            let lead = p
                .leading()
                .map_or(Ordering::Equal, |c| c.sign().cmp(&num_bigint::Sign::NoSign));
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                lead.reverse()
            } else {
                lead
            }
        }))
    }

    /// Distinct real roots of `p₀` in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Distinct real roots of `p₀`.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

/// Distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> usize {
    if p.degree().is_none_or(|d| d == 0) {
        return 0;
    }
    SturmChain::new(&p.square_free_part()).count(lo, hi)
}

/// Power of two strictly above the modulus of every root (Cauchy bound).
pub fn root_bound(p: &IntPolynomial) -> BigRational {
    let Some(lead) = p.leading() else {
        return BigRational::one();
    };
    let lead = lead.abs();
    let max = p.coeffs().iter().map(Signed::abs).max().unwrap_or_default();
    let bound = BigRational::one() + BigRational::new(max, lead);
    let mut b = BigRational::one();
    while b <= bound {
        b *= rat(2);
    }
    b
}

/// Isolation result for one polynomial.
#[derive(Clone, Debug)]
pub struct RootCertificate {
    pub polynomial: IntPolynomial,
    pub zero_multiplicity: usize,
    /// Square-free part of the nonzero-root factor.
    pub square_free: IntPolynomial,
    /// Sorted, disjoint; each holds exactly one real root, with a strict sign
    /// change at the endpoints unless degenerate.
    pub intervals: Vec<Interval>,
    /// Roots not certified as simple real roots inside the search interval.
    pub uncertified_count: usize,
    pub sturm_chain_length: usize,
}

impl Serialize for RootCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RootCertificate", 5)?;
        st.serialize_field("polynomial", &self.polynomial)?;
        st.serialize_field("zero_multiplicity", &self.zero_multiplicity)?;
        st.serialize_field("intervals", &self.intervals)?;
        st.serialize_field("uncertified_count", &self.uncertified_count)?;
        st.serialize_field("sturm_chain_length", &self.sturm_chain_length)?;
        st.end()
    }
}

impl RootCertificate {
    pub fn degree(&self) -> usize {
        self.polynomial.degree().unwrap_or(0)
    }

    /// Re-checks the certificate from scratch.
    pub fn verify(&self) -> bool {
        let (zm, reduced) = self.polynomial.strip_zero_roots();
        if zm != self.zero_multiplicity || reduced.square_free_part() != self.square_free {
            return false;
        }
        if self.zero_multiplicity + self.intervals.len() + self.uncertified_count != self.degree() {
            return false;
        }
        let chain = SturmChain::new(&self.square_free);
        let sf = &self.square_free;
        let each = self.intervals.iter().all(|iv| {
            if iv.is_exact() {
                sf.sign_at(&iv.lo) == Ordering::Equal
            } else {
                let (a, b) = (sf.sign_at(&iv.lo), sf.sign_at(&iv.hi));
                a != Ordering::Equal
                    && b != Ordering::Equal
                    && a != b
                    && chain.count(&iv.lo, &iv.hi) == 1
            }
        });
        let disjoint = self.intervals.windows(2).all(|w| w[0].hi < w[1].lo);
        each && disjoint
    }

    /// Upper bound on the modulus of every certified root.
    pub fn magnitude_bound(&self) -> Option<BigRational> {
        self.intervals.iter().map(Interval::magnitude).max()
    }
}

struct Isolator<'a> {
    sf: &'a IntPolynomial,
    chain: SturmChain,
}

impl Isolator<'_> {
    /// Refines `(lo, hi]`, known to hold one root, until the width is at most
    /// `width` and neither endpoint is a root.
    fn refine(&self, mut lo: BigRational, mut hi: BigRational, width: &BigRational) -> Interval {
        loop {
            if self.sf.sign_at(&hi) == Ordering::Equal {
                return Interval { lo: hi.clone(), hi };
            }
            if &(&hi - &lo) <= width && self.sf.sign_at(&lo) != Ordering::Equal {
                return Interval { lo, hi };
            }
            let mid = (&lo + &hi) / rat(2);
            if self.chain.count(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    fn isolate(
        &self,
        lo: BigRational,
        hi: BigRational,
        width: &BigRational,
        out: &mut Vec<Interval>,
    ) {
        let mut stack = vec![(lo, hi)];
        while let Some((lo, hi)) = stack.pop() {
            match self.chain.count(&lo, &hi) {
                0 => {}
                1 => out.push(self.refine(lo, hi, width)),
                _ => {
                    let mid = (&lo + &hi) / rat(2);
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
    }
}

fn certify(
    p: &IntPolynomial,
    lo: Option<&BigRational>,
    hi: Option<&BigRational>,
    width: &BigRational,
) -> Result<RootCertificate> {
    if p.is_zero() {
        return Err(Error::InvalidArgument(
            "cannot isolate roots of the zero polynomial".into(),
        ));
    }
    if !width.is_positive() {
        return Err(Error::InvalidArgument(
            "isolation width must be positive".into(),
        ));
    }
    let (zero_multiplicity, reduced) = p.strip_zero_roots();
    let sf = reduced.square_free_part();
    let chain = SturmChain::new(&sf);
    let mut intervals = Vec::new();
    if sf.degree().unwrap_or(0) > 0 {
        let b = root_bound(&sf);
        let lo = lo.cloned().unwrap_or_else(|| -b.clone()).max(-b.clone());
        let hi_open = hi.cloned();
        let hi = hi.cloned().unwrap_or_else(|| b.clone()).min(b);
        let iso = Isolator {
            sf: &sf,
            chain: SturmChain::new(&sf),
        };
        if lo < hi {
            iso.isolate(lo, hi, width, &mut intervals);
        }
        // the search interval is open on the right
        if let Some(h) = hi_open {
            intervals.retain(|iv| !(iv.is_exact() && iv.lo == h));
        }
    }
    let degree = p.degree().unwrap_or(0);
    Ok(RootCertificate {
        polynomial: p.clone(),
        zero_multiplicity,
        uncertified_count: degree - zero_multiplicity - intervals.len(),
        square_free: sf,
        intervals,
        sturm_chain_length: chain.len(),
    })
}

/// Factors out the power of λ, then isolates the remaining distinct real
/// roots in `(lo, hi)` to intervals of width at most `width`.
pub fn isolate(
    p: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
    width: &BigRational,
) -> Result<RootCertificate> {
    certify(p, Some(lo), Some(hi), width)
}

/// Isolates every nonzero real root.
pub fn isolate_all(p: &IntPolynomial, width: &BigRational) -> Result<RootCertificate> {
    certify(p, None, None, width)
}

/// Outcome of [`verify_in_interval`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionCheck {
    /// Every nonzero root is real and lies in `(a, b)`.
    pub holds: bool,
    /// The nonzero part has no repeated roots.
    pub simple: bool,
    pub zero_multiplicity: usize,
    pub distinct_nonzero_roots: usize,
    pub roots_in_interval: usize,
}

/// Whether every nonzero root of `p` is real and lies in `(a, b)`. Zero roots
/// are split off first and reported separately.
pub fn verify_in_interval(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> InclusionCheck {
    let (zero_multiplicity, reduced) = p.strip_zero_roots();
    let sf = reduced.square_free_part();
    let d = sf.degree().unwrap_or(0);
    let roots_in_interval = if d == 0 {
        0
    } else {
        let chain = SturmChain::new(&sf);
        let at_b = usize::from(sf.sign_at(b) == Ordering::Equal);
        chain.count(a, b) - at_b
    };
    InclusionCheck {
        holds: roots_in_interval == d,
        simple: sf.degree() == reduced.degree(),
        zero_multiplicity,
        distinct_nonzero_roots: d,
        roots_in_interval,
    }
}

/// `Rₙ = (αX + β)Rₙ₋₁ − Rₙ₋₂` with constant `R₀` and linear `R₁`, on `(a, b)`.
#[derive(Clone, Debug)]
pub struct ChebyshevFamily {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub r0: BigRational,
    /// `R₁ = r1[0] + r1[1] X`.
    pub r1: [BigRational; 2],
    pub a: BigRational,
    pub b: BigRational,
}

impl ChebyshevFamily {
    /// `K₀, K₂, K₄, …` on `(0, 4)`.
    pub fn k_even() -> Self {
        ChebyshevFamily {
            alpha: rat(1),
            beta: rat(-2),
            r0: rat(2),
            r1: [rat(-2), rat(1)],
            a: rat(0),
            b: four(),
        }
    }

    /// `K₁, K₃, K₅, …` on `(0, 4)`.
    pub fn k_odd() -> Self {
        ChebyshevFamily {
            alpha: rat(1),
            beta: rat(-2),
            r0: rat(1),
            r1: [rat(-3), rat(1)],
            a: rat(0),
            b: four(),
        }
    }

    /// Chebyshev polynomials of the first kind on `(−1, 1)`.
    pub fn chebyshev_t() -> Self {
        ChebyshevFamily {
            alpha: rat(2),
            beta: rat(0),
            r0: rat(1),
            r1: [rat(0), rat(1)],
            a: rat(-1),
            b: rat(1),
        }
    }

    /// `R₀(x) ..= R_N(x)` by the value recurrence.
    pub fn values_at(&self, x: &BigRational, max_n: usize) -> Vec<BigRational> {
        let mut v = vec![self.r0.clone(), &self.r1[0] + &self.r1[1] * x];
        let step = &self.alpha * x + &self.beta;
        while v.len() <= max_n {
            let next = &step * &v[v.len() - 1] - &v[v.len() - 2];
            v.push(next);
        }
        v.truncate(max_n + 1);
        v
    }

    /// Whether one of the sign patterns `Rₙ(a)Rₙ₊₁(a) > 0, Rₙ(b)Rₙ₊₁(b) < 0`
    /// or `Rₙ(a)Rₙ₊₁(a) < 0, Rₙ(b)Rₙ₊₁(b) > 0` holds for every `0 <= n < N`.
    pub fn check_boundary_signs(&self, max_n: usize) -> bool {
        if self.alpha.is_zero() || self.a >= self.b {
            return false;
        }
        let va = self.values_at(&self.a, max_n);
        let vb = self.values_at(&self.b, max_n);
        let products = |v: &[BigRational]| -> Vec<Ordering> {
            v.windows(2)
                .map(|w| (&w[0] * &w[1]).cmp(&BigRational::zero()))
                .collect()
        };
        let (pa, pb) = (products(&va), products(&vb));
        let variant =
            |sa: Ordering, sb: Ordering| pa.iter().all(|&s| s == sa) && pb.iter().all(|&s| s == sb);
        variant(Ordering::Greater, Ordering::Less) || variant(Ordering::Less, Ordering::Greater)
    }
}

/// Whether the roots of `q` (degree `deg p + 1`) strictly separate those of
/// `p` on `(a, b)`. Touching intervals halve the width, up to 8 times.
pub fn verify_interlacing(
    p: &IntPolynomial,
    q: &IntPolynomial,
    a: &BigRational,
    b: &BigRational,
    width: &BigRational,
) -> Result<bool> {
    let (dp, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    if p.is_zero() || dq != dp + 1 {
        return Err(Error::InvalidArgument(format!(
            "interlacing needs deg q = deg p + 1, got {dp} and {dq}"
        )));
    }
    for (poly, deg) in [(p, dp), (q, dq)] {
        let check = verify_in_interval(poly, a, b);
        if !check.holds
            || !check.simple
            || check.zero_multiplicity > 0
            || check.distinct_nonzero_roots != deg
        {
            return Err(Error::Certification {
                polynomial: poly.to_string(),
                reason: "roots are not all simple, nonzero, real and inside the interval".into(),
            });
        }
    }
    if p.gcd(q).degree().unwrap_or(0) > 0 {
        return Ok(false);
    }
    let mut w = width.clone();
    const RETRIES: u32 = 8;
    for _ in 0..=RETRIES {
        let ip = isolate(p, a, b, &w)?.intervals;
        let iq = isolate(q, a, b, &w)?.intervals;
        let mut merged: Vec<(bool, &Interval)> = ip
            .iter()
            .map(|i| (false, i))
            .chain(iq.iter().map(|i| (true, i)))
            .collect();
        merged.sort_by(|x, y| x.1.lo.cmp(&y.1.lo));
        if merged.windows(2).any(|m| m[0].1.hi >= m[1].1.lo) {
            w /= rat(2);
            continue;
        }
        return Ok(merged
            .iter()
            .enumerate()
            .all(|(i, (is_q, _))| *is_q == (i % 2 == 0)));
    }
    Err(Error::Inconclusive { retries: RETRIES })
}

/// Rightmost real root, after certifying that every nonzero root is real.
pub fn dominant_root(p: &IntPolynomial, width: &BigRational) -> Result<Interval> {
    let cert = isolate_all(p, width)?;
    let fail = |reason: &str| Error::Certification {
        polynomial: p.to_string(),
        reason: reason.into(),
    };
    if cert.intervals.len() != cert.square_free.degree().unwrap_or(0) {
        return Err(fail("not every root is real"));
    }
    cert.intervals
        .last()
        .cloned()
        .ok_or_else(|| fail("no nonzero real root"))
}

/// How a spectral-radius bound was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRoute {
    /// All nonzero roots real and isolated.
    RealRoots,
    /// Real roots isolated; the single conjugate pair bounded through the
    /// product of all roots, `|z|² = |p(0)| / ∏|rᵢ|`.
    ProductOfRoots,
    /// Bound inherited from `K∞ₙ`, which surjects onto the monoid.
    KSurjection,
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteOutcome {
    pub route: BoundRoute,
    pub polynomial: IntPolynomial,
    #[serde(serialize_with = "ser_opt_rat")]
    pub bound: Option<BigRational>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentBound {
    pub label: String,
    #[serde(serialize_with = "ser_rat_field")]
    pub bound: BigRational,
    pub routes: Vec<RouteOutcome>,
}

/// Certified `γ₀ < 4` bounding the growth rate; the maximum over components.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthBound {
    pub label: String,
    #[serde(serialize_with = "ser_rat_field")]
    pub bound: BigRational,
    pub components: Vec<ComponentBound>,
}

fn ser_rat_field<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_rat(r).serialize(s)
}

fn ser_opt_rat<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    r.as_ref().map(ser_rat).serialize(s)
}

/// Dyadic upper bound on `√x` with denominator `2^bits`.
fn sqrt_upper(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << (2 * bits);
    let scaled = (x * BigRational::from_integer(scale)).ceil().to_integer();
    let mag: BigUint = scaled.magnitude().clone();
    let mut r = mag.sqrt();
    if &r * &r < mag {
        r += 1u32;
    }
    BigRational::new(BigInt::from(r), BigInt::one() << bits)
}

/// Spectral-radius bound for the nonzero roots of `p`: real isolation when
/// every root is real, otherwise the product-of-roots bound when exactly two
/// roots are non-real.
pub fn radius_bound(p: &IntPolynomial, width: &BigRational) -> Result<(BoundRoute, BigRational)> {
    let cert = isolate_all(p, width)?;
    let fail = |reason: String| Error::Certification {
        polynomial: p.to_string(),
        reason,
    };
    let (_, reduced) = p.strip_zero_roots();
    let deg = reduced.degree().unwrap_or(0);
    if deg == 0 {
        return Ok((BoundRoute::RealRoots, BigRational::zero()));
    }
    let real_distinct = cert.intervals.len();
    let all_real = real_distinct == cert.square_free.degree().unwrap_or(0);
    let real_bound = cert.magnitude_bound().unwrap_or_default();
    if all_real {
        return Ok((BoundRoute::RealRoots, real_bound));
    }
    if reduced.degree() != cert.square_free.degree() {
        return Err(fail("repeated roots alongside non-real roots".into()));
    }
    if deg - real_distinct != 2 {
        return Err(fail(format!(
            "{} non-real roots; the product bound needs exactly two",
            deg - real_distinct
        )));
    }
    // |r| lower bounds need intervals that exclude zero
    let iso = Isolator {
        sf: &cert.square_free,
        chain: SturmChain::new(&cert.square_free),
    };
    let mut product = BigRational::one();
    for iv in &cert.intervals {
        let mut iv = iv.clone();
        let mut w = iv.width();
        while !iv.is_exact() && iv.lo.is_negative() && iv.hi.is_positive() {
            w /= rat(2);
            iv = iso.refine(iv.lo.clone(), iv.hi.clone(), &w);
        }
        product *= iv.lo.abs().min(iv.hi.abs());
    }
    let lead = BigRational::from_integer(reduced.leading().unwrap().abs());
    let modulus_sq = BigRational::from_integer(reduced.coeff(0).abs()) / lead / product;
    let pair = sqrt_upper(&modulus_sq, 40);
    Ok((BoundRoute::ProductOfRoots, real_bound.max(pair)))
}

fn route_outcome(p: IntPolynomial, route: BoundRoute, width: &BigRational) -> RouteOutcome {
    match radius_bound(&p, width) {
        Ok((r, b)) => {
            let route = if route == BoundRoute::KSurjection {
                route
            } else {
                r
            };
            RouteOutcome {
                route,
                polynomial: p,
                bound: Some(b),
                error: None,
            }
        }
        Err(e) => RouteOutcome {
            route,
            polynomial: p,
            bound: None,
            error: Some(e.to_string()),
        },
    }
}

fn finish_component(label: String, routes: Vec<RouteOutcome>) -> Result<ComponentBound> {
    let bound = routes
        .iter()
        .filter_map(|r| r.bound.clone())
        .min()
        .ok_or_else(|| Error::Certification {
            polynomial: routes
                .first()
                .map(|r| r.polynomial.to_string())
                .unwrap_or_default(),
            reason: routes
                .iter()
                .filter_map(|r| r.error.clone())
                .collect::<Vec<_>>()
                .join("; "),
        })?;
    Ok(ComponentBound {
        label,
        bound,
        routes,
    })
}

/// Growth bound for one family's right-angled companion.
pub fn family_component(family: Family, width: &BigRational) -> Result<ComponentBound> {
    family.validate()?;
    let n = family.rank();
    let label = family.to_string();
    let direct = |p: IntPolynomial| vec![route_outcome(p, BoundRoute::RealRoots, width)];
    let routes = match family {
        Family::KInf(n) => direct(k_reduced(n)),
        Family::A(_) | Family::B(_) | Family::F4 | Family::G2 | Family::H(_) | Family::I2(_) => {
            direct(a_reduced(n as i64)?)
        }
        Family::E(n) => direct(e_script(n)?.strip_zero_roots().1),
        Family::D(n) => vec![
            route_outcome(d_reduced(n)?, BoundRoute::RealRoots, width),
            route_outcome(k_reduced(n), BoundRoute::KSurjection, width),
        ],
        Family::Free(n) => direct(IntPolynomial::linear(-(n as i64))),
        Family::FreeAbelian(_) => direct(IntPolynomial::linear(-1)),
    };
    finish_component(label, routes)
}

fn check_below_four(label: String, components: Vec<ComponentBound>) -> Result<GrowthBound> {
    let bound = components
        .iter()
        .map(|c| c.bound.clone())
        .max()
        .unwrap_or_default();
    if bound >= four() {
        return Err(Error::BoundNotBelowFour {
            family: label,
            bound: format!("{bound}"),
        });
    }
    Ok(GrowthBound {
        label,
        bound,
        components,
    })
}

/// Certified `γ₀ < 4` for a family.
pub fn growth_bound(family: Family) -> Result<GrowthBound> {
    growth_bound_union(&[family])
}

/// Disjoint union: the maximum of the component bounds.
pub fn growth_bound_union(families: &[Family]) -> Result<GrowthBound> {
    let width = default_width();
    let components = families
        .iter()
        .map(|&f| family_component(f, &width))
        .collect::<Result<Vec<_>>>()?;
    let label = families
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" + ");
    check_below_four(label, components)
}

/// Bound for the right-angled companion of an arbitrary graph, one connected
/// component at a time, via the reversed Möbius polynomial.
pub fn growth_bound_graph(g: &CoxeterGraph) -> Result<GrowthBound> {
    let ra = g.right_angled();
    let width = default_width();
    let mut components = Vec::new();
    for comp in ra.components() {
        let label = format!(
            "{{{}}}",
            comp.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        let p = mobius_denominator(&ra.induced(&comp))?.reciprocal();
        components.push(finish_component(
            label.clone(),
            vec![route_outcome(p, BoundRoute::RealRoots, &width)],
        )?);
    }
    check_below_four("graph".into(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::k_script;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn approx(r: &BigRational) -> f64 {
        use num_traits::ToPrimitive;
        r.to_f64().unwrap()
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(sturm_count(&p(&[2, -4, 1]), &rat(0), &rat(4)), 2);
        assert_eq!(sturm_count(&p(&[-3, 1]), &rat(0), &rat(4)), 1);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &rat(-10), &rat(10)), 0);
        // (x-1)^2 (x-2): distinct roots only
        assert_eq!(sturm_count(&p(&[-2, 5, -4, 1]), &rat(0), &rat(3)), 2);
        assert_eq!(SturmChain::new(&p(&[-1, 0, 1])).count_real(), 2);
    }

    #[test]
    fn isolate_k4() {
        let w = BigRational::new(1.into(), BigInt::one() << 20);
        let c = isolate(&k_script(4), &rat(0), &rat(4), &w).unwrap();
        assert_eq!(c.zero_multiplicity, 2);
        assert_eq!(c.intervals.len(), 2);
        assert!(c.verify());
        let r2 = 2f64.sqrt();
        assert!((approx(&c.intervals[0].midpoint()) - (2.0 - r2)).abs() < 1e-5);
        assert!((approx(&c.intervals[1].midpoint()) - (2.0 + r2)).abs() < 1e-5);
        assert!(c.intervals.iter().all(|iv| iv.width() <= w));
    }

    #[test]
    fn isolate_pure_power() {
        let c = isolate_all(&IntPolynomial::monomial(1, 5), &default_width()).unwrap();
        assert_eq!(c.zero_multiplicity, 5);
        assert!(c.intervals.is_empty());
        assert_eq!(c.uncertified_count, 0);
    }

    #[test]
    fn exact_rational_root() {
        let iv = dominant_root(&k_reduced(3), &default_width()).unwrap();
        assert_eq!(
            iv,
            Interval {
                lo: rat(3),
                hi: rat(3)
            }
        );
        // root exactly at the open right end is excluded
        let c = isolate(&p(&[-4, 1]), &rat(0), &rat(4), &default_width()).unwrap();
        assert!(c.intervals.is_empty());
        assert_eq!(c.uncertified_count, 1);
    }

    #[test]
    fn inclusion() {
        assert!(verify_in_interval(&k_reduced(9), &rat(0), &four()).holds);
        assert!(!verify_in_interval(&d_reduced(4).unwrap(), &rat(0), &four()).holds);
        assert!(verify_in_interval(&d_reduced(5).unwrap(), &rat(0), &four()).holds);
    }

    #[test]
    fn boundary_signs() {
        assert!(ChebyshevFamily::k_even().check_boundary_signs(25));
        assert!(ChebyshevFamily::k_odd().check_boundary_signs(25));
        assert!(ChebyshevFamily::chebyshev_t().check_boundary_signs(5));
        let t = ChebyshevFamily::chebyshev_t().values_at(&rat(-1), 5);
        assert_eq!(t, vec![rat(1), rat(-1), rat(1), rat(-1), rat(1), rat(-1)]);
        let mut bad = ChebyshevFamily::chebyshev_t();
        bad.a = rat(0);
        assert!(!bad.check_boundary_signs(5));
    }

    #[test]
    fn interlacing() {
        let w = default_width();
        assert!(verify_interlacing(&k_reduced(2), &k_reduced(4), &rat(0), &four(), &w).unwrap());
        assert!(verify_interlacing(&k_reduced(9), &k_reduced(11), &rat(0), &four(), &w).unwrap());
        assert!(verify_interlacing(
            &IntPolynomial::constant(2),
            &k_reduced(2),
            &rat(0),
            &four(),
            &w
        )
        .unwrap());
        // same degrees reversed: fails the degree precondition
        assert!(verify_interlacing(&k_reduced(4), &k_reduced(2), &rat(0), &four(), &w).is_err());
        // (x-1)(x-3) vs x-2 on the wrong side: (x-2) and (x-1)(x-3)(x-5)
        assert!(
            !verify_interlacing(&p(&[3, -4, 1]), &p(&[-6, 11, -6, 1]), &rat(0), &four(), &w)
                .unwrap_or(false)
        );
    }

    #[test]
    fn dominant_roots() {
        let w = BigRational::new(1.into(), BigInt::from(1_000_000));
        let iv = dominant_root(&k_reduced(4), &w).unwrap();
        assert!(
            iv.contains(&BigRational::new(3414213.into(), 1_000_000.into()))
                || (approx(&iv.midpoint()) - 3.414214).abs() < 1e-5
        );
        let iv = dominant_root(&k_reduced(7), &w).unwrap();
        assert!((approx(&iv.midpoint()) - 3.80).abs() < 0.01);
        assert!(dominant_root(&p(&[1, 0, 1]), &w).is_err());
    }

    #[test]
    fn growth_bounds() {
        let g = growth_bound(Family::KInf(3)).unwrap();
        assert_eq!(g.bound, rat(3));
        let u = growth_bound_union(&[Family::KInf(3), Family::KInf(3)]).unwrap();
        assert_eq!(u.bound, rat(3));
        assert_eq!(u.components.len(), 2);
        let g40 = growth_bound(Family::KInf(40)).unwrap();
        assert!(g40.bound < four() && approx(&g40.bound) > 3.99);
        let d4 = growth_bound(Family::D(4)).unwrap();
        assert_eq!(d4.components[0].routes[0].route, BoundRoute::ProductOfRoots);
        assert!(d4.bound < four());
        assert!(matches!(
            growth_bound(Family::Free(4)),
            Err(Error::BoundNotBelowFour { .. })
        ));
    }

    #[test]
    fn graph_bound_matches_family() {
        use crate::coxeter::build_family;
        let g = build_family(Family::KInf(5)).unwrap();
        let b = growth_bound_graph(&g).unwrap();
        assert_eq!(b.bound, growth_bound(Family::KInf(5)).unwrap().bound);
    }

    #[test]
    fn sqrt_bound() {
        let s = sqrt_upper(&rat(2), 20);
        assert!(&s * &s >= rat(2));
        assert!(approx(&s) - 2f64.sqrt() < 1e-5);
        assert_eq!(sqrt_upper(&rat(9), 10), rat(3));
    }
}
