//! The three graded algebras on `nvars` degree-one generators: the exterior
//! algebra, the polynomial ring, and the two-step quotient of the polynomial
//! ring by the square of its maximal ideal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BggError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Exterior,
    Symmetric,
    #[serde(rename = "twostep")]
    TwoStep,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Exterior => "exterior",
            AlgebraKind::Symmetric => "symmetric",
            AlgebraKind::TwoStep => "twostep",
        }
    }

    pub fn parse(s: &str) -> Result<AlgebraKind> {
        match s {
            "exterior" => Ok(AlgebraKind::Exterior),
            "symmetric" => Ok(AlgebraKind::Symmetric),
            "twostep" => Ok(AlgebraKind::TwoStep),
            other => Err(BggError::Parse(format!("unknown algebra kind {other:?}"))),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial as the sorted list of its variable indices (with repetition for
/// the polynomial ring). The empty list is the unit.
pub type Monomial = Vec<usize>;

/// One quadratic relation `sum c * x_a x_b`, where `x_a x_b` acts on a module
/// as `A_a[d+1] * A_b[d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: &'static str,
    pub terms: Vec<(i64, usize, usize)>,
}

impl Relation {
    /// The pair of variables the relation is indexed by.
    pub fn vars(&self) -> (usize, usize) {
        let (_, a, b) = self.terms[0];
        (a.min(b), a.max(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Algebra {
    pub kind: AlgebraKind,
    nvars: usize,
}

impl Algebra {
    pub fn new(kind: AlgebraKind, nvars: usize) -> Result<Algebra> {
        if nvars < 2 {
            return Err(BggError::Input(format!(
                "need at least 2 variables, got {nvars}"
            )));
        }
        Ok(Algebra { kind, nvars })
    }

    /// # Panics
    /// If `nvars < 2`.
    pub fn exterior(nvars: usize) -> Algebra {
        Algebra::new(AlgebraKind::Exterior, nvars).expect("nvars >= 2")
    }

    /// # Panics
    /// If `nvars < 2`.
    pub fn symmetric(nvars: usize) -> Algebra {
        Algebra::new(AlgebraKind::Symmetric, nvars).expect("nvars >= 2")
    }

    /// # Panics
    /// If `nvars < 2`.
    pub fn twostep(nvars: usize) -> Algebra {
        Algebra::new(AlgebraKind::TwoStep, nvars).expect("nvars >= 2")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Dimension of the projective space the variables are coordinates on.
    pub fn n(&self) -> usize {
        self.nvars - 1
    }

    pub fn with_kind(&self, kind: AlgebraKind) -> Algebra {
        Algebra { kind, nvars: self.nvars }
    }

    /// The algebra on the other side of Koszul duality (exterior <-> symmetric).
    pub fn koszul_dual(&self) -> Option<Algebra> {
        match self.kind {
            AlgebraKind::Exterior => Some(self.with_kind(AlgebraKind::Symmetric)),
            AlgebraKind::Symmetric => Some(self.with_kind(AlgebraKind::Exterior)),
            AlgebraKind::TwoStep => None,
        }
    }

    pub fn degree_dim(&self, d: i32) -> usize {
        if d < 0 {
            return 0;
        }
        let d = d as usize;
        match self.kind {
            AlgebraKind::Exterior => binomial(self.nvars as u64, d as u64) as usize,
            AlgebraKind::Symmetric => binomial((self.nvars - 1 + d) as u64, d as u64) as usize,
            AlgebraKind::TwoStep => match d {
                0 => 1,
                1 => self.nvars,
                _ => 0,
            },
        }
    }

    /// Highest nonzero degree, `None` for the polynomial ring.
    pub fn top_degree(&self) -> Option<i32> {
        match self.kind {
            AlgebraKind::Exterior => Some(self.nvars as i32),
            AlgebraKind::Symmetric => None,
            AlgebraKind::TwoStep => Some(1),
        }
    }

    /// Monomial basis of degree `d`, in lexicographic order of index lists.
    pub fn monomials(&self, d: i32) -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        let d = d as usize;
        match self.kind {
            AlgebraKind::Exterior => combinations(self.nvars, d, false),
            AlgebraKind::Symmetric => combinations(self.nvars, d, true),
            AlgebraKind::TwoStep if d <= 1 => combinations(self.nvars, d, true),
            AlgebraKind::TwoStep => Vec::new(),
        }
    }

    /// `x_j * m` as `(sign, monomial)`, or `None` when the product vanishes.
    pub fn mul_var(&self, j: usize, m: &[usize]) -> Option<(i64, Monomial)> {
        let pos = m.partition_point(|&x| x < j);
        let mut out = Vec::with_capacity(m.len() + 1);
        out.extend_from_slice(&m[..pos]);
        out.push(j);
        out.extend_from_slice(&m[pos..]);
        match self.kind {
            AlgebraKind::Exterior => {
                if m.get(pos) == Some(&j) {
                    return None;
                }
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Some((sign, out))
            }
            AlgebraKind::Symmetric => Some((1, out)),
            AlgebraKind::TwoStep => m.is_empty().then_some((1, out)),
        }
    }

    /// The quadratic relations, covering every unordered pair of variables
    /// (including equal ones where the algebra has a relation there).
    pub fn relations(&self) -> Vec<Relation> {
        let v = self.nvars;
        let mut out = Vec::new();
        match self.kind {
            AlgebraKind::Exterior => {
                for j in 0..v {
                    out.push(Relation {
                        name: "square-zero",
                        terms: vec![(1, j, j)],
                    });
                    for k in j + 1..v {
                        out.push(Relation {
                            name: "anticommute",
                            terms: vec![(1, j, k), (1, k, j)],
                        });
                    }
                }
            }
            AlgebraKind::Symmetric => {
                for j in 0..v {
                    for k in j + 1..v {
                        out.push(Relation {
                            name: "commute",
                            terms: vec![(1, j, k), (-1, k, j)],
                        });
                    }
                }
            }
            AlgebraKind::TwoStep => {
                for j in 0..v {
                    for k in 0..v {
                        out.push(Relation {
                            name: "product-zero",
                            terms: vec![(1, j, k)],
                        });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({} vars)", self.kind, self.nvars)
    }
}

/// Sign of the product of exterior monomials `x_A * x_B`: 0 when they share a
/// variable, otherwise `(-1)^(number of pairs a in A, b in B with a > b)`.
pub fn monomial_sign(a: &[usize], b: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return 0;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `binomial(e + n, n)` extended to all integers `e` as a polynomial of
/// degree `n`: the Euler characteristic of `O(e)` on projective `n`-space.
pub fn line_bundle_euler(e: i64, n: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 1..=n as i128 {
        num *= e as i128 + i;
        den *= i;
    }
    (num / den) as i64
}

fn combinations(nvars: usize, d: usize, repeat: bool) -> Vec<Monomial> {
    fn rec(start: usize, nvars: usize, left: usize, repeat: bool, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for j in start..nvars {
            cur.push(j);
            rec(if repeat { j } else { j + 1 }, nvars, left - 1, repeat, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, nvars, d, repeat, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degree_dim_examples() {
        assert_eq!(Algebra::exterior(2).degree_dim(1), 2);
        assert_eq!(Algebra::exterior(3).degree_dim(2), 3);
        assert_eq!(Algebra::symmetric(2).degree_dim(3), 4);
        assert_eq!(Algebra::exterior(3).degree_dim(4), 0);
        assert_eq!(Algebra::exterior(3).degree_dim(-1), 0);
        assert_eq!(Algebra::twostep(3).degree_dim(1), 3);
        assert_eq!(Algebra::twostep(3).degree_dim(2), 0);
        assert!(Algebra::new(AlgebraKind::Exterior, 1).is_err());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(monomial_sign(&[0], &[1]), 1);
        assert_eq!(monomial_sign(&[1], &[0]), -1);
        assert_eq!(monomial_sign(&[0], &[0]), 0);
        assert_eq!(monomial_sign(&[0, 2], &[1]), -1);
    }

    #[test]
    fn mul_var_matches_sign() {
        let r = Algebra::exterior(4);
        for d in 0..=4 {
            for m in r.monomials(d) {
                for j in 0..4 {
                    let s = monomial_sign(&[j], &m);
                    match r.mul_var(j, &m) {
                        None => assert_eq!(s, 0),
                        Some((sign, _)) => assert_eq!(sign, s),
                    }
                }
            }
        }
    }

    #[test]
    fn total_exterior_dim() {
        for v in 2..6 {
            let r = Algebra::exterior(v);
            let total: usize = (0..=v as i32).map(|d| r.degree_dim(d)).sum();
            assert_eq!(total, 1 << v);
        }
    }

    #[test]
    fn degree_dim_matches_enumeration() {
        // Brute force: count index tuples in lexicographic order directly.
        for v in 2..=4usize {
            for d in 0..=6i32 {
                let mut ext = 0;
                let mut sym = 0;
                let total = v.pow(d as u32);
                for code in 0..total {
                    let mut idx = Vec::new();
                    let mut c = code;
                    for _ in 0..d {
                        idx.push(c % v);
                        c /= v;
                    }
                    if idx.windows(2).all(|w| w[0] < w[1]) {
                        ext += 1;
                    }
                    if idx.windows(2).all(|w| w[0] <= w[1]) {
                        sym += 1;
                    }
                }
                assert_eq!(Algebra::exterior(v).degree_dim(d), ext);
                assert_eq!(Algebra::symmetric(v).degree_dim(d), sym);
                assert_eq!(Algebra::exterior(v).monomials(d).len(), ext);
                assert_eq!(Algebra::symmetric(v).monomials(d).len(), sym);
            }
        }
    }

    #[test]
    fn relation_sets_cover_pairs() {
        assert_eq!(Algebra::exterior(3).relations().len(), 6);
        assert_eq!(Algebra::symmetric(3).relations().len(), 3);
        assert_eq!(Algebra::twostep(3).relations().len(), 9);
    }

    #[test]
    fn euler_polynomial() {
        assert_eq!(line_bundle_euler(0, 2), 1);
        assert_eq!(line_bundle_euler(2, 2), 6);
        assert_eq!(line_bundle_euler(-1, 2), 0);
        assert_eq!(line_bundle_euler(-3, 2), 1);
        assert_eq!(line_bundle_euler(-4, 1), -3);
    }

    proptest! {
        #[test]
        fn graded_commutativity(a in prop::collection::btree_set(0usize..6, 0..4),
                                b in prop::collection::btree_set(0usize..6, 0..4)) {
            let a: Vec<usize> = a.into_iter().collect();
            let b: Vec<usize> = b.into_iter().collect();
            if a.iter().all(|x| !b.contains(x)) {
                let parity = if (a.len() * b.len()) % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(monomial_sign(&a, &b), parity * monomial_sign(&b, &a));
            }
        }
    }
}
