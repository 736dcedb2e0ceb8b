//! Coxeter graphs, the classical spherical families, and the monoid
//! presentations read off from their labels.
//!
//! Vertices are numbered `1..=n` throughout, matching generator indices in
//! [`Word`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rewrite::{Rule, Word};

/// Edge label. `Finite(2)` is commutation, `Infinity` means no relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    pub const COMMUTE: Label = Label::Finite(2);
    pub const BRAID: Label = Label::Finite(3);

    pub fn is_commutation(self) -> bool {
        self == Label::COMMUTE
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(r) => write!(f, "{r}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Label::Finite(r) => s.serialize_u32(*r),
            Label::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Symmetric label matrix of a (possibly disconnected) Coxeter diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    n: usize,
    // row-major, diagonal unused (kept at Finite(1))
    labels: Vec<Label>,
}

impl CoxeterGraph {
    /// Graph on `n` vertices with every pair commuting.
    pub fn discrete(n: usize) -> Self {
        let mut labels = vec![Label::COMMUTE; n * n];
        for i in 0..n {
            labels[i * n + i] = Label::Finite(1);
        }
        CoxeterGraph { n, labels }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Label `r_ij` for `1 <= i, j <= n`, `i != j`.
    pub fn label(&self, i: usize, j: usize) -> Label {
        debug_assert!(i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.labels[(i - 1) * self.n + (j - 1)]
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.label(i, j).is_commutation()
    }

    pub fn set_label(&mut self, i: usize, j: usize, label: Label) -> Result<()> {
        if i == j || !(1..=self.n).contains(&i) || !(1..=self.n).contains(&j) {
            return Err(Error::InvalidLabel {
                i,
                j,
                reason: format!("vertices must be distinct and within 1..={}", self.n),
            });
        }
        if let Label::Finite(r) = label {
            if r < 2 {
                return Err(Error::InvalidLabel {
                    i,
                    j,
                    reason: format!("label {r} is below 2"),
                });
            }
        }
        let n = self.n;
        self.labels[(i - 1) * n + (j - 1)] = label;
        self.labels[(j - 1) * n + (i - 1)] = label;
        Ok(())
    }

    fn with_edges(n: usize, edges: &[(usize, usize, Label)]) -> Self {
        let mut g = Self::discrete(n);
        for &(i, j, l) in edges {
            g.set_label(i, j, l).expect("family edges are valid");
        }
        g
    }

    /// Unordered pairs `i < j` with their labels.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        (1..=self.n).flat_map(move |i| ((i + 1)..=self.n).map(move |j| (i, j, self.label(i, j))))
    }

    /// True when every label is 2 or infinity.
    pub fn is_right_angled(&self) -> bool {
        self.pairs()
            .all(|(_, _, l)| matches!(l, Label::Finite(2) | Label::Infinity))
    }

    /// Replaces every label `>= 3` by infinity. Idempotent.
    pub fn right_angled(&self) -> Self {
        let labels = self
            .labels
            .iter()
            .enumerate()
            .map(|(idx, &l)| match l {
                _ if idx / self.n == idx % self.n => l,
                Label::Finite(r) if r >= 3 => Label::Infinity,
                other => other,
            })
            .collect();
        CoxeterGraph { n: self.n, labels }
    }

    /// Disjoint union; vertices of `other` are renumbered after those of `self`.
    pub fn disjoint_union(&self, other: &CoxeterGraph) -> Self {
        let mut g = Self::discrete(self.n + other.n);
        for (i, j, l) in self.pairs() {
            g.set_label(i, j, l).unwrap();
        }
        for (i, j, l) in other.pairs() {
            g.set_label(i + self.n, j + self.n, l).unwrap();
        }
        g
    }

    /// Connected components of the diagram (edges are labels other than 2).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, j, l) in self.pairs() {
            if !l.is_commutation() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_slot = vec![usize::MAX; self.n + 1];
        for v in 1..=self.n {
            let r = find(&mut parent, v);
            if root_slot[r] == usize::MAX {
                root_slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[root_slot[r]].push(v);
        }
        groups
    }

    /// Induced subgraph on the given vertices, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = Self::discrete(vertices.len());
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
                g.set_label(a + 1, b + 1, self.label(i, j)).unwrap();
            }
        }
        g
    }

    /// Parses the plain-text graph format: first line `n`, then lines
    /// `i j r` with `r >= 2` or `inf`. Unlisted pairs default to 2; blank
    /// lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first_no, first) = lines.next().ok_or(Error::GraphParse {
            line: 1,
            reason: "empty input".into(),
        })?;
        let n: usize = first.parse().map_err(|_| Error::GraphParse {
            line: first_no,
            reason: format!("expected vertex count, got {first:?}"),
        })?;
        if n == 0 {
            return Err(Error::GraphParse {
                line: first_no,
                reason: "vertex count must be positive".into(),
            });
        }
        let mut g = Self::discrete(n);
        for (line, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::GraphParse {
                    line,
                    reason: format!("expected `i j r`, got {l:?}"),
                });
            }
            let idx = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::GraphParse {
                    line,
                    reason: format!("bad vertex {s:?}"),
                })
            };
            let (i, j) = (idx(parts[0])?, idx(parts[1])?);
            let label = match parts[2] {
                "inf" | "∞" => Label::Infinity,
                s => Label::Finite(s.parse().map_err(|_| Error::GraphParse {
                    line,
                    reason: format!("bad label {s:?}"),
                })?),
            };
            g.set_label(i, j, label).map_err(|e| Error::GraphParse {
                line,
                reason: e.to_string(),
            })?;
        }
        Ok(g)
    }

    /// Inverse of [`CoxeterGraph::from_text`], listing only non-commuting pairs.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (i, j, l) in self.pairs().filter(|(_, _, l)| !l.is_commutation()) {
            out.push_str(&format!("{i} {j} {l}\n"));
        }
        out
    }

    /// Label matrix as rows, with `null` on the diagonal when serialised.
    pub fn label_rows(&self) -> Vec<Vec<Option<Label>>> {
        (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .map(|j| (i != j).then(|| self.label(i, j)))
                    .collect()
            })
            .collect()
    }
}

impl Serialize for CoxeterGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            labels: Vec<Vec<Option<Label>>>,
        }
        Repr {
            n: self.n,
            labels: self.label_rows(),
        }
        .serialize(s)
    }
}

/// A named Coxeter diagram from the classical list, plus the auxiliary
/// `K∞ₙ` graph and the two extremes (free and free abelian monoids).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    H(usize),
    I2(u32),
    KInf(usize),
    Free(usize),
    FreeAbelian(usize),
}

impl Family {
    pub fn rank(&self) -> usize {
        match *self {
            Family::A(n) | Family::B(n) | Family::D(n) | Family::E(n) | Family::H(n) => n,
            Family::KInf(n) | Family::Free(n) | Family::FreeAbelian(n) => n,
            Family::F4 => 4,
            Family::G2 | Family::I2(_) => 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |constraint: &'static str, got: usize| {
            Err(Error::InvalidRank {
                family: self.tag().to_string(),
                constraint,
                got,
            })
        };
        match *self {
            Family::A(n) if n < 1 => bad("n >= 1", n),
            Family::B(n) if n < 2 => bad("n >= 2", n),
            Family::D(n) if n < 4 => bad("n >= 4", n),
            Family::E(n) if !(6..=8).contains(&n) => bad("n in {6, 7, 8}", n),
            Family::H(n) if !(3..=4).contains(&n) => bad("n in {3, 4}", n),
            Family::I2(p) if p < 5 || p == 6 => bad("p >= 5 and p != 6", p as usize),
            Family::KInf(n) if n < 3 => bad("n >= 3", n),
            Family::Free(n) | Family::FreeAbelian(n) if n < 1 => bad("n >= 1", n),
            _ => Ok(()),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Family::A(_) => "A",
            Family::B(_) => "B",
            Family::D(_) => "D",
            Family::E(_) => "E",
            Family::F4 => "F4",
            Family::G2 => "G2",
            Family::H(_) => "H",
            Family::I2(_) => "I2",
            Family::KInf(_) => "Kinf",
            Family::Free(_) => "free",
            Family::FreeAbelian(_) => "freeabelian",
        }
    }

    /// Builds a family from its CLI name, a rank and (for `I2`) the label `p`.
    /// `I2:p` is accepted as a single name.
    pub fn from_parts(name: &str, rank: Option<usize>, p: Option<u32>) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let need_rank =
            || rank.ok_or_else(|| Error::InvalidArgument(format!("family {name} needs a rank")));
        let fam = match lower.as_str() {
            "a" => Family::A(need_rank()?),
            "b" => Family::B(need_rank()?),
            "d" => Family::D(need_rank()?),
            "e" => Family::E(need_rank()?),
            "f4" => Family::F4,
            "g2" => Family::G2,
            "h" => Family::H(need_rank()?),
            "kinf" | "k" => Family::KInf(need_rank()?),
            "free" => Family::Free(need_rank()?),
            "freeabelian" | "free_abelian" => Family::FreeAbelian(need_rank()?),
            "i2" => {
                Family::I2(p.ok_or_else(|| Error::InvalidArgument("family I2 needs --p".into()))?)
            }
            s if s.starts_with("i2:") => Family::I2(
                s[3..]
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad I2 label in {name:?}")))?,
            ),
            _ => return Err(Error::InvalidArgument(format!("unknown family {name:?}"))),
        };
        fam.validate()?;
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F4 | Family::G2 => f.write_str(self.tag()),
            Family::I2(p) => write!(f, "I2({p})"),
            other => write!(f, "{}{}", other.tag(), other.rank()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts compact names such as `A3`, `Kinf5`, `E8`, `I2:7`, `free3`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("I2").or_else(|| s.strip_prefix("i2")) {
            let p = rest.trim_start_matches([':', '(']).trim_end_matches(')');
            return Family::from_parts("i2", None, p.parse().ok());
        }
        if s.eq_ignore_ascii_case("F4") || s.eq_ignore_ascii_case("G2") {
            return Family::from_parts(s, None, None);
        }
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::InvalidArgument(format!("missing rank in {s:?}")))?;
        let rank = s[split..]
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad rank in {s:?}")))?;
        Family::from_parts(&s[..split], Some(rank), None)
    }
}

/// Vertex numbering for the `E` diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EOrder {
    /// Chain `x1 - x2 - x3 - x5 - ... - xn` with the leaf `x4` on `x3`.
    /// The length-lexicographic commutation system is complete in this order.
    Complete,
    /// Chain `x1 - x3 - x4 - ... - xn` with the leaf `x2` on `x4`.
    Bourbaki,
}

pub fn e_graph(n: usize, order: EOrder) -> Result<CoxeterGraph> {
    Family::E(n).validate()?;
    let b = Label::BRAID;
    let mut edges = Vec::new();
    match order {
        EOrder::Complete => {
            edges.extend([(1, 2, b), (2, 3, b), (3, 4, b), (3, 5, b)]);
            edges.extend((5..n).map(|i| (i, i + 1, b)));
        }
        EOrder::Bourbaki => {
            edges.extend([(1, 3, b), (2, 4, b)]);
            edges.extend((3..n).map(|i| (i, i + 1, b)));
        }
    }
    Ok(CoxeterGraph::with_edges(n, &edges))
}

/// Label matrix of a named diagram. Unlabeled edges get 3, non-edges 2.
pub fn build_family(family: Family) -> Result<CoxeterGraph> {
    family.validate()?;
    let n = family.rank();
    let b = Label::BRAID;
    let chain = |n: usize| (1..n).map(|i| (i, i + 1, b)).collect::<Vec<_>>();
    let g = match family {
        Family::A(_) => CoxeterGraph::with_edges(n, &chain(n)),
        Family::B(_) => {
            let mut e = chain(n);
            e[n - 2].2 = Label::Finite(4);
            CoxeterGraph::with_edges(n, &e)
        }
        Family::D(_) => {
            let mut e = chain(n - 1);
            e.push((n - 2, n, b));
            CoxeterGraph::with_edges(n, &e)
        }
        Family::E(_) => e_graph(n, EOrder::Complete)?,
        Family::F4 => {
            CoxeterGraph::with_edges(4, &[(1, 2, b), (2, 3, Label::Finite(4)), (3, 4, b)])
        }
        Family::G2 => CoxeterGraph::with_edges(2, &[(1, 2, Label::Finite(6))]),
        Family::H(_) => {
            let mut e = chain(n);
            e[0].2 = Label::Finite(5);
            CoxeterGraph::with_edges(n, &e)
        }
        Family::I2(p) => CoxeterGraph::with_edges(2, &[(1, 2, Label::Finite(p))]),
        Family::KInf(_) => {
            let inf = Label::Infinity;
            let mut e: Vec<_> = (1..=n - 2).map(|i| (i, i + 1, inf)).collect();
            e.push((n - 2, n, inf));
            e.push((n - 1, n, inf));
            CoxeterGraph::with_edges(n, &e)
        }
        Family::Free(_) => {
            let mut g = CoxeterGraph::discrete(n);
            for i in 1..=n {
                for j in i + 1..=n {
                    g.set_label(i, j, Label::Infinity).unwrap();
                }
            }
            g
        }
        Family::FreeAbelian(_) => CoxeterGraph::discrete(n),
    };
    Ok(g)
}

/// Generators with the natural order `x1 < ... < xn` and one oriented
/// length-preserving rule per finite label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub n: usize,
    pub rules: Vec<Rule>,
}

/// Rule `x_j x_i x_j ... -> x_i x_j x_i ...` (`r_ij` letters each side, `i < j`)
/// for every finite label; infinite labels contribute nothing.
pub fn presentation(g: &CoxeterGraph) -> Presentation {
    let rules = g
        .pairs()
        .filter_map(|(i, j, l)| match l {
            Label::Finite(r) => {
                let alt = |a: usize, b: usize| -> Word {
                    Word::from_letters(
                        (0..r)
                            .map(|k| if k % 2 == 0 { a } else { b } as u32)
                            .collect(),
                    )
                };
                // starts with the larger generator, hence larger in length-lex order
                Some(Rule::new(alt(j, i), alt(i, j)).expect("alternating words are distinct"))
            }
            Label::Infinity => None,
        })
        .collect();
    Presentation { n: g.rank(), rules }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_single_braid_label() {
        let g = build_family(Family::A(2)).unwrap();
        assert_eq!(g.label(1, 2), Label::Finite(3));
    }

    #[test]
    fn free_abelian_all_commute() {
        let g = build_family(Family::FreeAbelian(3)).unwrap();
        assert!(g.pairs().all(|(_, _, l)| l == Label::COMMUTE));
    }

    #[test]
    fn k_inf_4_labels() {
        let g = build_family(Family::KInf(4)).unwrap();
        let inf = Label::Infinity;
        for (i, j) in [(1, 2), (2, 3), (3, 4), (2, 4)] {
            assert_eq!(g.label(i, j), inf, "r{i}{j}");
        }
        for (i, j) in [(1, 3), (1, 4)] {
            assert_eq!(g.label(i, j), Label::COMMUTE, "r{i}{j}");
        }
    }

    #[test]
    fn rank_constraints_named() {
        for bad in [
            Family::A(0),
            Family::B(1),
            Family::D(3),
            Family::E(5),
            Family::E(9),
            Family::H(2),
            Family::I2(6),
            Family::I2(4),
            Family::KInf(2),
        ] {
            let err = build_family(bad).unwrap_err();
            assert!(matches!(err, Error::InvalidRank { .. }), "{bad:?}: {err}");
        }
    }

    #[test]
    fn right_angle_transform() {
        for n in 2..8 {
            let a = build_family(Family::A(n)).unwrap().right_angled();
            let b = build_family(Family::B(n)).unwrap().right_angled();
            assert_eq!(a, b);
            assert!(a.is_right_angled());
            assert_eq!(a.right_angled(), a);
            for i in 1..n {
                assert_eq!(a.label(i, i + 1), Label::Infinity);
            }
        }
        let n3 = CoxeterGraph::discrete(3);
        assert_eq!(n3.right_angled(), n3);
    }

    #[test]
    fn b_and_a_differ_in_one_label() {
        for n in 2..8 {
            let a = build_family(Family::A(n)).unwrap();
            let b = build_family(Family::B(n)).unwrap();
            assert_eq!(a.pairs().zip(b.pairs()).filter(|(x, y)| x != y).count(), 1);
        }
    }

    #[test]
    fn presentations() {
        let a2 = presentation(&build_family(Family::A(2)).unwrap());
        assert_eq!(a2.rules.len(), 1);
        assert_eq!(a2.rules[0].lhs.to_string(), "2 1 2");
        assert_eq!(a2.rules[0].rhs.to_string(), "1 2 1");

        let n2 = presentation(&CoxeterGraph::discrete(2));
        assert_eq!(n2.rules[0].lhs.to_string(), "2 1");
        assert_eq!(n2.rules[0].rhs.to_string(), "1 2");

        let c2 = presentation(&build_family(Family::Free(2)).unwrap());
        assert!(c2.rules.is_empty());
    }

    #[test]
    fn right_angled_presentations_only_commute() {
        let fams = [
            Family::A(5),
            Family::B(4),
            Family::D(6),
            Family::E(6),
            Family::E(8),
            Family::F4,
            Family::G2,
            Family::H(4),
            Family::I2(7),
            Family::KInf(6),
        ];
        for f in fams {
            let p = presentation(&build_family(f).unwrap().right_angled());
            assert!(p.rules.iter().all(|r| r.lhs.len() == 2), "{f}");
        }
    }

    #[test]
    fn text_round_trip_and_errors() {
        let g = build_family(Family::KInf(5)).unwrap();
        assert_eq!(CoxeterGraph::from_text(&g.to_text()).unwrap(), g);
        let h = CoxeterGraph::from_text("3\n1 2 3 # braid\n\n2 3 inf\n").unwrap();
        assert_eq!(h.label(1, 2), Label::BRAID);
        assert_eq!(h.label(2, 3), Label::Infinity);
        assert_eq!(h.label(1, 3), Label::COMMUTE);
        assert!(CoxeterGraph::from_text("2\n1 2 1\n").is_err());
        assert!(CoxeterGraph::from_text("2\n1 3 3\n").is_err());
        assert!(CoxeterGraph::from_text("x\n").is_err());
    }

    #[test]
    fn components_of_union() {
        let a = build_family(Family::A(3)).unwrap();
        let k = build_family(Family::KInf(3)).unwrap();
        let u = a.disjoint_union(&k);
        assert_eq!(u.rank(), 6);
        assert_eq!(u.components(), vec![vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(u.induced(&[4, 5, 6]), k);
    }

    #[test]
    fn family_names() {
        assert_eq!("A3".parse::<Family>().unwrap(), Family::A(3));
        assert_eq!("Kinf7".parse::<Family>().unwrap(), Family::KInf(7));
        assert_eq!("I2:7".parse::<Family>().unwrap(), Family::I2(7));
        assert_eq!(
            "freeabelian2".parse::<Family>().unwrap(),
            Family::FreeAbelian(2)
        );
        assert_eq!(
            Family::from_parts("I2", None, Some(5)).unwrap(),
            Family::I2(5)
        );
        assert!("D3".parse::<Family>().is_err());
    }
}
