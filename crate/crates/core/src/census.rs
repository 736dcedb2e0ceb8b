//! Counting monoid elements by length.
//!
//! Three independent routes are provided: the explicit counting recurrences
//! (per-start-letter), dynamic programming over normal forms (see
//! [`CanonicalForms`]), and brute force, which unions all words of a given
//! length connected by single rule applications.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::coxeter::{build_family, presentation, CoxeterGraph, Family, Presentation};
use crate::error::{Error, Result};
use crate::rewrite::{CanonicalForms, RewriteSystem};

/// Default ceiling on `n^k` for brute-force enumeration.
pub const DEFAULT_GUARD: u64 = 10_000_000;

/// Counts of words of length `k`: per starting generator and in total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    pub k: usize,
    pub starts: Vec<BigUint>,
    pub total: BigUint,
}

impl CountVector {
    fn empty_word(n: usize) -> Self {
        CountVector {
            k: 0,
            starts: vec![BigUint::zero(); n],
            total: BigUint::one(),
        }
    }

    fn from_starts(k: usize, starts: Vec<BigUint>) -> Self {
        let total = starts.iter().sum();
        CountVector { k, starts, total }
    }
}

pub fn totals(rows: &[CountVector]) -> Vec<BigUint> {
    rows.iter().map(|r| r.total.clone()).collect()
}

/// Runs `c_{k;j} = Σ_{i ∈ succ(j)} c_{k-1;i}` from `c_{1;i} = 1`.
/// `succ[j]` lists 0-based successors of 0-based state `j`.
fn run_recurrence(succ: &[Vec<usize>], max_k: usize) -> Vec<CountVector> {
    let n = succ.len();
    let mut rows = vec![CountVector::empty_word(n)];
    if max_k == 0 {
        return rows;
    }
    let mut cur = vec![BigUint::one(); n];
    rows.push(CountVector::from_starts(1, cur.clone()));
    for k in 2..=max_k {
        cur = succ
            .iter()
            .map(|s| s.iter().map(|&i| &cur[i]).sum())
            .collect();
        rows.push(CountVector::from_starts(k, cur.clone()));
    }
    rows
}

fn range(lo: usize, hi: usize) -> Vec<usize> {
    (lo..=hi).collect()
}

/// Successor lists of the `K∞ₙ` recurrence: `c_{k;j} = Σ_{i=j-1}^{n}` for
/// `j != n` (lower bound clamped at 1) and `c_{k;n} = Σ_{i=n-2}^{n}`.
fn k_successors(n: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .map(|j| {
            let lo = if j == n {
                n.saturating_sub(2)
            } else {
                j.saturating_sub(1)
            }
            .max(1);
            range(lo - 1, n - 1)
        })
        .collect()
}

fn a_successors(n: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .map(|j| range(j.saturating_sub(1).max(1) - 1, n - 1))
        .collect()
}

/// `E∞ₙ` (n = 6, 7, 8): `Σ_{i=j-1}^{n}` for `j != 5`, and
/// `b_{k;5} = b_{k-1;3} + Σ_{i=5}^{n}`.
fn e_successors(n: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .map(|j| {
            if j == 5 {
                let mut s = vec![2];
                s.extend(range(4, n - 1));
                s
            } else {
                range(j.saturating_sub(1).max(1) - 1, n - 1)
            }
        })
        .collect()
}

fn to_matrix(succ: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let n = succ.len();
    succ.iter()
        .map(|s| {
            let mut row = vec![0; n];
            for &i in s {
                row[i] = 1;
            }
            row
        })
        .collect()
}

/// `K∞ₙ` counts for `k = 0..=max_k`. Accepts `n >= 2` (`K∞₂` is free on
/// two generators).
pub fn count_k(n: usize, max_k: usize) -> Result<Vec<CountVector>> {
    if n < 2 {
        return Err(Error::InvalidRank {
            family: "Kinf".into(),
            constraint: "n >= 2",
            got: n,
        });
    }
    Ok(run_recurrence(&k_successors(n), max_k))
}

/// `E∞ₙ` counts in the vertex order for which the commutation system is complete.
pub fn count_e(n: usize, max_k: usize) -> Result<Vec<CountVector>> {
    Family::E(n).validate()?;
    Ok(run_recurrence(&e_successors(n), max_k))
}

pub fn count_e8(max_k: usize) -> Vec<CountVector> {
    run_recurrence(&e_successors(8), max_k)
}

pub fn count_a_infty(n: usize, max_k: usize) -> Result<Vec<CountVector>> {
    if n < 1 {
        return Err(Error::InvalidRank {
            family: "Ainf".into(),
            constraint: "n >= 1",
            got: n,
        });
    }
    Ok(run_recurrence(&a_successors(n), max_k))
}

pub fn k_transfer_matrix(n: usize) -> Vec<Vec<i64>> {
    to_matrix(&k_successors(n))
}

pub fn a_transfer_matrix(n: usize) -> Vec<Vec<i64>> {
    to_matrix(&a_successors(n))
}

pub fn e_transfer_matrix(n: usize) -> Vec<Vec<i64>> {
    to_matrix(&e_successors(n))
}

/// Successor relation read off a right-angled graph: `x_i` may follow `x_j`
/// unless `i < j` and they commute.
fn graph_successors(g: &CoxeterGraph) -> Result<Vec<Vec<usize>>> {
    let forms = CanonicalForms::new(g)?;
    if !forms.is_complete() {
        return Err(Error::UnsupportedGraph(
            "commutation system is not complete in this vertex order".into(),
        ));
    }
    let n = g.rank();
    Ok((1..=n)
        .map(|j| {
            (1..=n)
                .filter(|&i| i >= j || !g.commutes(i, j))
                .map(|i| i - 1)
                .collect()
        })
        .collect())
}

/// Transfer matrix of a right-angled graph whose commutation system is complete.
pub fn transfer_matrix(g: &CoxeterGraph) -> Result<Vec<Vec<i64>>> {
    Ok(to_matrix(&graph_successors(g)?))
}

/// Counts for any right-angled graph with a complete commutation system.
pub fn count_transfer(g: &CoxeterGraph, max_k: usize) -> Result<Vec<CountVector>> {
    Ok(run_recurrence(&graph_successors(g)?, max_k))
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    components: usize,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
            components: len,
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.components -= 1;
    }
}

fn word_space(n: usize, k: usize, guard: u64) -> Result<usize> {
    let words = BigUint::from(n).pow(k as u32);
    match words.to_u64() {
        Some(w) if w <= guard && w < u32::MAX as u64 => Ok(w as usize),
        _ => Err(Error::GuardExceeded {
            words: words.to_string(),
            guard,
        }),
    }
}

/// Number of elements of length `k`: connected components of the graph on
/// all `n^k` words whose edges are single rule applications.
pub fn count_bruteforce(p: &Presentation, k: usize, guard: u64) -> Result<BigUint> {
    let total = word_space(p.n, k, guard)?;
    let rs = RewriteSystem::from_presentation(p)?;
    let n = p.n as u64;
    let mut place = vec![1u64; k];
    for i in (0..k.saturating_sub(1)).rev() {
        place[i] = place[i + 1] * n;
    }
    let rules: Vec<(Vec<u64>, Vec<u64>)> = rs
        .rules()
        .iter()
        .map(|r| {
            let z = |w: &[u32]| w.iter().map(|&l| l as u64 - 1).collect();
            (z(r.lhs.letters()), z(r.rhs.letters()))
        })
        .collect();
    let mut uf = UnionFind::new(total);
    let mut digits = vec![0u64; k];
    for idx in 0..total as u64 {
        let mut rest = idx;
        for d in digits.iter_mut().rev() {
            *d = rest % n;
            rest /= n;
        }
        for (lhs, rhs) in &rules {
            let len = lhs.len();
            for pos in 0..(k + 1).saturating_sub(len) {
                if digits[pos..pos + len] == lhs[..] {
                    let mut target = idx;
                    for t in 0..len {
                        target = target - lhs[t] * place[pos + t] + rhs[t] * place[pos + t];
                    }
                    uf.union(idx as u32, target as u32);
                }
            }
        }
    }
    Ok(BigUint::from(uf.components))
}

pub fn count_bruteforce_upto(p: &Presentation, max_k: usize, guard: u64) -> Result<Vec<BigUint>> {
    (0..=max_k).map(|k| count_bruteforce(p, k, guard)).collect()
}

/// Fibonacci numbers indexed so that `F₁ = 1, F₂ = 2` (standard `F_{k+1}`).
/// This is the indexing under which three-strand positive braids number
/// `F_{k+2} − 1`.
pub fn fibonacci_shifted(k: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::one()); // standard F₁, F₂
    for _ in 0..k {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Whether positive 3-strand braid counts equal `F_{k+2} − 1` for all `k <= max_k`.
pub fn fibonacci_check(max_k: usize, guard: u64) -> Result<bool> {
    let p = presentation(&build_family(Family::A(2))?);
    for k in 0..=max_k {
        if count_bruteforce(&p, k, guard)? != fibonacci_shifted(k + 2) - 1u32 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Counts of a direct product: `p(k) = Σ_{i=0}^{k} m₁(i) m₂(k−i)`.
pub fn convolve(m1: &[BigUint], m2: &[BigUint], max_k: usize) -> Result<Vec<BigUint>> {
    for m in [m1, m2] {
        if m.len() <= max_k {
            return Err(Error::InvalidArgument(format!(
                "count sequence has {} terms, need {}",
                m.len(),
                max_k + 1
            )));
        }
        if !m[0].is_one() {
            return Err(Error::InvalidArgument(
                "count sequence must start with m(0) = 1".into(),
            ));
        }
    }
    Ok((0..=max_k)
        .map(|k| (0..=k).map(|i| &m1[i] * &m2[k - i]).sum())
        .collect())
}

/// Upper bound for group elements of length `<= k` in the generators plus
/// the inverse Garside element: the product with a free monoid on one letter.
pub fn group_upper_bound(m: &[BigUint], max_k: usize) -> Result<Vec<BigUint>> {
    let ones = vec![BigUint::one(); max_k + 1];
    convolve(&ones, m, max_k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainTriple {
    pub k: usize,
    /// Artin monoid.
    #[serde(serialize_with = "ser_big")]
    pub a: BigUint,
    /// Right-angled companion.
    #[serde(serialize_with = "ser_big")]
    pub b: BigUint,
    /// Dominating right-angled monoid (`K∞ₙ`, or `E∞₈` for the `E` family).
    #[serde(serialize_with = "ser_big")]
    pub c: BigUint,
}

impl ChainTriple {
    pub fn holds(&self) -> bool {
        self.a <= self.b && self.b <= self.c
    }
}

pub(crate) fn ser_big<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `(a_k, b_k, c_k)` for a family: brute force for the Artin monoid and its
/// right-angled companion, the recurrence for the dominating monoid.
pub fn verify_chain(family: Family, k: usize, guard: u64) -> Result<ChainTriple> {
    let g = build_family(family)?;
    let n = g.rank();
    let a = count_bruteforce(&presentation(&g), k, guard)?;
    let b = count_bruteforce(&presentation(&g.right_angled()), k, guard)?;
    let c = match family {
        Family::E(_) => count_e8(k)[k].total.clone(),
        _ if n >= 2 => count_k(n, k)?[k].total.clone(),
        _ => BigUint::one(),
    };
    Ok(ChainTriple { k, a, b, c })
}

/// Counting route used for a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Recurrence,
    Canonical,
    Brute,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub method: Method,
    pub totals: Vec<BigUint>,
    /// Per-start counts, available from the recurrence only.
    pub starts: Option<Vec<Vec<BigUint>>>,
}

impl CountTable {
    fn from_rows(rows: Vec<CountVector>) -> Self {
        CountTable {
            method: Method::Recurrence,
            totals: totals(&rows),
            starts: Some(rows.into_iter().map(|r| r.starts).collect()),
        }
    }
}

/// Which named recurrence (if any) applies to a family's graph.
fn named_recurrence(
    family: Option<Family>,
    g: &CoxeterGraph,
    max_k: usize,
) -> Result<Option<Vec<CountVector>>> {
    if !g.is_right_angled() {
        return Ok(None);
    }
    let n = g.rank();
    let rows = match family {
        Some(Family::KInf(_)) => count_k(n, max_k)?,
        Some(Family::E(_)) => count_e(n, max_k)?,
        Some(
            Family::A(_) | Family::B(_) | Family::F4 | Family::G2 | Family::H(_) | Family::I2(_),
        ) => count_a_infty(n, max_k)?,
        _ => match count_transfer(g, max_k) {
            Ok(rows) => rows,
            Err(Error::UnsupportedGraph(_)) => return Ok(None),
            Err(e) => return Err(e),
        },
    };
    Ok(Some(rows))
}

/// Counts `k = 0..=max_k` for a graph (optionally known to be a named family)
/// by the requested route. `Auto` prefers a recurrence and falls back to
/// brute force.
pub fn count_graph(
    family: Option<Family>,
    g: &CoxeterGraph,
    max_k: usize,
    method: Method,
    guard: u64,
) -> Result<CountTable> {
    let brute = || -> Result<CountTable> {
        Ok(CountTable {
            method: Method::Brute,
            totals: count_bruteforce_upto(&presentation(g), max_k, guard)?,
            starts: None,
        })
    };
    match method {
        Method::Brute => brute(),
        Method::Canonical => {
            let forms = CanonicalForms::new(g)?;
            if !forms.is_complete() {
                return Err(Error::UnsupportedGraph(
                    "commutation system is not complete in this vertex order".into(),
                ));
            }
            Ok(CountTable {
                method: Method::Canonical,
                totals: (0..=max_k).map(|k| forms.count(k)).collect(),
                starts: None,
            })
        }
        Method::Recurrence => named_recurrence(family, g, max_k)?
            .map(CountTable::from_rows)
            .ok_or_else(|| {
                Error::UnsupportedGraph(
                    "no counting recurrence for this graph; use brute force".into(),
                )
            }),
        Method::Auto => match named_recurrence(family, g, max_k)? {
            Some(rows) => Ok(CountTable::from_rows(rows)),
            None => brute(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn k3_and_k4_totals() {
        assert_eq!(totals(&count_k(3, 4).unwrap()), nums(&[1, 3, 9, 27, 81]));
        assert_eq!(
            totals(&count_k(4, 5).unwrap()),
            nums(&[1, 4, 14, 48, 164, 560])
        );
        for n in 2..10 {
            assert_eq!(count_k(n, 1).unwrap()[1].total, BigUint::from(n));
        }
        assert!(count_k(1, 3).is_err());
    }

    #[test]
    fn e8_small_lengths() {
        let rows = count_e8(2);
        assert_eq!(rows[0].total, BigUint::from(1u32));
        assert_eq!(rows[1].total, BigUint::from(8u32));
        // 64 words minus one per commuting pair (21 of 28 pairs commute)
        assert_eq!(rows[2].total, BigUint::from(43u32));
    }

    #[test]
    fn brute_force_small() {
        let a2 = presentation(&build_family(Family::A(2)).unwrap());
        assert_eq!(
            count_bruteforce(&a2, 3, DEFAULT_GUARD).unwrap(),
            BigUint::from(7u32)
        );
        assert_eq!(
            count_bruteforce(&a2, 5, DEFAULT_GUARD).unwrap(),
            BigUint::from(20u32)
        );
        let n2 = presentation(&build_family(Family::FreeAbelian(2)).unwrap());
        assert_eq!(
            count_bruteforce(&n2, 4, DEFAULT_GUARD).unwrap(),
            BigUint::from(5u32)
        );
        assert_eq!(
            count_bruteforce(&a2, 0, DEFAULT_GUARD).unwrap(),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn guard_reports_word_count() {
        let a3 = presentation(&build_family(Family::A(3)).unwrap());
        match count_bruteforce(&a3, 10, 1000) {
            Err(Error::GuardExceeded { words, guard }) => {
                assert_eq!(words, "59049");
                assert_eq!(guard, 1000);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fibonacci() {
        assert!(fibonacci_check(5, DEFAULT_GUARD).unwrap());
        assert!(fibonacci_check(0, DEFAULT_GUARD).unwrap());
        assert_eq!(fibonacci_shifted(2), BigUint::from(2u32));
        assert_eq!(fibonacci_shifted(7), BigUint::from(21u32));
    }

    #[test]
    fn convolution() {
        let ones = nums(&[1; 8]);
        assert_eq!(
            convolve(&ones, &ones, 7).unwrap(),
            nums(&[1, 2, 3, 4, 5, 6, 7, 8])
        );
        assert_eq!(convolve(&ones, &ones, 4).unwrap()[4], BigUint::from(5u32));
        assert!(convolve(&ones[..3], &ones, 4).is_err());
        assert!(convolve(&nums(&[2, 1]), &ones, 1).is_err());
    }

    #[test]
    fn group_bound_partial_sums() {
        let k3 = totals(&count_k(3, 2).unwrap());
        assert_eq!(group_upper_bound(&k3, 2).unwrap()[2], BigUint::from(13u32));
        let braids = nums(&[1, 2, 4, 7, 12, 20]);
        assert_eq!(
            group_upper_bound(&braids, 5).unwrap()[5],
            BigUint::from(46u32)
        );
        assert_eq!(
            group_upper_bound(&nums(&[1; 5]), 4).unwrap(),
            nums(&[1, 2, 3, 4, 5])
        );
    }

    #[test]
    fn chain_small() {
        let t = verify_chain(Family::A(3), 3, DEFAULT_GUARD).unwrap();
        assert_eq!(t.c, BigUint::from(27u32));
        assert!(t.holds());
        let t0 = verify_chain(Family::D(4), 0, DEFAULT_GUARD).unwrap();
        assert_eq!(
            (t0.a, t0.b, t0.c),
            (BigUint::one(), BigUint::one(), BigUint::one())
        );
    }

    #[test]
    fn dispatcher_routes() {
        let g = build_family(Family::A(2)).unwrap();
        let t = count_graph(Some(Family::A(2)), &g, 5, Method::Auto, DEFAULT_GUARD).unwrap();
        assert_eq!(t.method, Method::Brute);
        assert_eq!(t.totals, nums(&[1, 2, 4, 7, 12, 20]));
        let f = build_family(Family::Free(3)).unwrap();
        let t = count_graph(Some(Family::Free(3)), &f, 2, Method::Auto, DEFAULT_GUARD).unwrap();
        assert_eq!(t.method, Method::Recurrence);
        assert_eq!(t.totals, nums(&[1, 3, 9]));
        assert!(count_graph(None, &g, 3, Method::Recurrence, DEFAULT_GUARD).is_err());
    }
}
