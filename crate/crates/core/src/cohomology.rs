//! Degree-two cohomology of a closed oriented 4-manifold and the index
//! formulas for PU(N) monopoles, U(n) monopoles and PU(m) instantons.
//!
//! Classes are integer coordinate vectors in a fixed basis of `H^2(X; Z)`
//! modulo torsion. Pairings are evaluated as `x^T Q y`. The first
//! Pontryagin class of `TX` is taken to be `3 sigma` and the Euler
//! characteristic `2 - 2 b1 + b2`.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact;
use crate::warning::Warning;

/// Topological input: intersection form, first Betti number and the
/// quantities derived from them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourManifold {
    name: String,
    b1: u32,
    intersection_form: Vec<Vec<i64>>,
    b2plus: usize,
    signature: i64,
    euler: i64,
    #[serde(serialize_with = "serialize_bigint")]
    determinant: BigInt,
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

impl FourManifold {
    /// Builds a manifold from its intersection form, computing `b2+` and the
    /// signature exactly. The form must be symmetric and nondegenerate.
    pub fn new(name: impl Into<String>, b1: u32, intersection_form: Vec<Vec<i64>>) -> Result<Self> {
        let b2 = intersection_form.len();
        for row in &intersection_form {
            if row.len() != b2 {
                return Err(Error::DimensionMismatch {
                    field: "manifold.intersection_form",
                    expected: b2,
                    found: row.len(),
                });
            }
        }
        if !exact::is_symmetric(&intersection_form) {
            return Err(Error::invalid(
                "manifold.intersection_form",
                "intersection form must be symmetric",
            ));
        }
        let big = exact::int_matrix_to_big(&intersection_form);
        let det = exact::determinant(&big);
        if det.is_zero() {
            return Err(Error::invalid(
                "manifold.intersection_form",
                "intersection form is degenerate over the rationals",
            ));
        }
        let inertia = exact::inertia(&big);
        Ok(FourManifold {
            name: name.into(),
            b1,
            b2plus: inertia.positive,
            signature: inertia.signature(),
            euler: 2 - 2 * i64::from(b1) + b2 as i64,
            determinant: det.to_integer(),
            intersection_form,
        })
    }

    /// As [`FourManifold::new`], additionally checking a declared `b2+`
    /// against the positive index of the form.
    pub fn with_declared_b2plus(
        name: impl Into<String>,
        b1: u32,
        b2plus: usize,
        intersection_form: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let m = Self::new(name, b1, intersection_form)?;
        if m.b2plus != b2plus {
            return Err(Error::invalid(
                "manifold.b2plus",
                format!(
                    "declared b2plus = {b2plus} but the intersection form has positive index {}",
                    m.b2plus
                ),
            ));
        }
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn b1(&self) -> u32 {
        self.b1
    }
    pub fn b2(&self) -> usize {
        self.intersection_form.len()
    }
    pub fn b2plus(&self) -> usize {
        self.b2plus
    }
    pub fn signature(&self) -> i64 {
        self.signature
    }
    pub fn euler(&self) -> i64 {
        self.euler
    }
    pub fn intersection_form(&self) -> &[Vec<i64>] {
        &self.intersection_form
    }
    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant.abs().is_one()
    }

    /// `b2+ - b1 + 1`, the Euler-characteristic factor of the index formulas.
    pub fn index_euler_factor(&self) -> i64 {
        self.b2plus as i64 - i64::from(self.b1) + 1
    }

    pub fn warnings(&self) -> Vec<Warning> {
        let mut w = Vec::new();
        if !self.is_unimodular() {
            w.push(Warning::NonUnimodularForm {
                determinant: self.determinant.to_string(),
            });
        }
        w
    }
}

/// A degree-two integral class, in coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CohClass2(pub Vec<i64>);

impl CohClass2 {
    pub fn zero(b2: usize) -> Self {
        CohClass2(vec![0; b2])
    }
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub(crate) fn check_len(&self, field: &'static str, m: &FourManifold) -> Result<()> {
        if self.len() != m.b2() {
            return Err(Error::DimensionMismatch {
                field,
                expected: m.b2(),
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl std::ops::Add for &CohClass2 {
    type Output = CohClass2;
    fn add(self, rhs: &CohClass2) -> CohClass2 {
        CohClass2(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &CohClass2 {
    type Output = CohClass2;
    fn sub(self, rhs: &CohClass2) -> CohClass2 {
        CohClass2(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// A Hermitian bundle up to isomorphism: rank, `c1` and `<c2, [X]>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BundleData {
    pub rank: u32,
    pub c1: CohClass2,
    pub c2: i64,
}

impl BundleData {
    pub fn new(rank: u32, c1: CohClass2, c2: i64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::invalid("bundle.rank", "rank must be at least 1"));
        }
        if rank == 1 && c2 != 0 {
            return Err(Error::invalid(
                "bundle.c2",
                format!("a line bundle has c2 = 0, got {c2}"),
            ));
        }
        Ok(BundleData { rank, c1, c2 })
    }

    pub fn trivial(rank: u32, b2: usize) -> Self {
        BundleData {
            rank,
            c1: CohClass2::zero(b2),
            c2: 0,
        }
    }
}

/// A Spin^c structure, represented by `c1(S^+)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpincStructure {
    pub c1: CohClass2,
}

impl SpincStructure {
    pub fn new(c1: CohClass2) -> Self {
        SpincStructure { c1 }
    }

    /// Basis indices `i` where `c . e_i != e_i . e_i (mod 2)`.
    pub fn characteristic_defects(&self, m: &FourManifold) -> Result<Vec<usize>> {
        self.c1.check_len("spinc.c1", m)?;
        let q = m.intersection_form();
        Ok((0..m.b2())
            .filter(|&i| {
                let ce: i64 = (0..m.b2()).map(|j| self.c1.0[j] * q[j][i]).sum();
                (ce - q[i][i]).rem_euclid(2) != 0
            })
            .collect())
    }

    pub fn warnings(&self, m: &FourManifold) -> Result<Vec<Warning>> {
        let defects = self.characteristic_defects(m)?;
        Ok(if defects.is_empty() {
            Vec::new()
        } else {
            vec![Warning::NotCharacteristic {
                basis_indices: defects,
            }]
        })
    }
}

/// `<x ∪ y, [X]> = x^T Q y`.
pub fn cup(x: &CohClass2, y: &CohClass2, m: &FourManifold) -> Result<i64> {
    x.check_len("class", m)?;
    y.check_len("class", m)?;
    let q = m.intersection_form();
    Ok(x.0
        .iter()
        .enumerate()
        .filter(|(_, &xi)| xi != 0)
        .map(|(i, &xi)| xi * q[i].iter().zip(&y.0).map(|(a, b)| a * b).sum::<i64>())
        .sum())
}

/// `<p1(su(E)), [X]> = (N - 1) <c1(E)^2> - 2N <c2(E)>`.
pub fn p1_su(e: &BundleData, m: &FourManifold) -> Result<i64> {
    let c1sq = cup(&e.c1, &e.c1, m)?;
    let n = i64::from(e.rank);
    Ok((n - 1) * c1sq - 2 * n * e.c2)
}

/// The three degree-four contributions to `<ch(E) e^{c1(s)/2} Â(X), [X]>`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiracIndexTerms {
    /// `<c1(E)^2 - 2 c2(E)> / 2`
    #[serde(with = "exact::rational_json")]
    pub chern_character: Rational64,
    /// `<c1(E) c1(s)> / 2`
    #[serde(with = "exact::rational_json")]
    pub twisting: Rational64,
    /// `N (<c1(s)^2> - sigma) / 8`
    #[serde(with = "exact::rational_json")]
    pub spin: Rational64,
    pub total: i64,
}

pub fn dirac_index_terms(
    e: &BundleData,
    s: &SpincStructure,
    m: &FourManifold,
) -> Result<DiracIndexTerms> {
    e.c1.check_len("bundle.c1", m)?;
    s.c1.check_len("spinc.c1", m)?;
    let n = i64::from(e.rank);
    let chern_character = Rational64::new(cup(&e.c1, &e.c1, m)? - 2 * e.c2, 2);
    let twisting = Rational64::new(cup(&e.c1, &s.c1, m)?, 2);
    let spin = Rational64::new(n * (cup(&s.c1, &s.c1, m)? - m.signature()), 8);
    let sum = chern_character + twisting + spin;
    if !sum.is_integer() {
        return Err(Error::InconsistentTopology(format!(
            "twisted Dirac index evaluates to {}/{}, which is not an integer; \
             the data is not realizable on a Spin^c 4-manifold",
            sum.numer(),
            sum.denom()
        )));
    }
    Ok(DiracIndexTerms {
        chern_character,
        twisting,
        spin,
        total: sum.to_integer(),
    })
}

/// Complex index of the Dirac operator on `S^+ ⊗ E`. Errors when the
/// rational evaluation is not an integer.
pub fn dirac_index(e: &BundleData, s: &SpincStructure, m: &FourManifold) -> Result<i64> {
    Ok(dirac_index_terms(e, s, m)?.total)
}

/// Which moduli problem a dimension was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuliKind {
    PuMonopole,
    UMonopole,
    Instanton,
}

/// Full term-by-term record of an expected-dimension evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedDimension {
    pub kind: ModuliKind,
    pub rank: u32,
    pub p1_su: i64,
    /// `-2 <p1(su(E))>`
    pub pontryagin_term: i64,
    /// `-(group dimension)(b2+ - b1 + 1)`
    pub euler_term: i64,
    pub dirac_index: Option<DiracIndexTerms>,
    pub dirac_multiplicity: Option<i64>,
    pub dirac_term: i64,
    pub expected_dim: i64,
    /// Values with the Dirac index counted once and twice, when applicable.
    pub by_multiplicity: Vec<(i64, i64)>,
}

pub const DEFAULT_DIRAC_MULTIPLICITY: i64 = 2;

fn monopole_dimension(
    kind: ModuliKind,
    group_dim: i64,
    e: &BundleData,
    s: &SpincStructure,
    m: &FourManifold,
    dirac_multiplicity: i64,
) -> Result<ExpectedDimension> {
    let p1 = p1_su(e, m)?;
    let terms = dirac_index_terms(e, s, m)?;
    let pontryagin_term = -2 * p1;
    let euler_term = -group_dim * m.index_euler_factor();
    let base = pontryagin_term + euler_term;
    Ok(ExpectedDimension {
        kind,
        rank: e.rank,
        p1_su: p1,
        pontryagin_term,
        euler_term,
        dirac_multiplicity: Some(dirac_multiplicity),
        dirac_term: dirac_multiplicity * terms.total,
        expected_dim: base + dirac_multiplicity * terms.total,
        by_multiplicity: vec![(1, base + terms.total), (2, base + 2 * terms.total)],
        dirac_index: Some(terms),
    })
}

pub fn expected_dim_pun_breakdown(
    e: &BundleData,
    s: &SpincStructure,
    m: &FourManifold,
    dirac_multiplicity: i64,
) -> Result<ExpectedDimension> {
    if e.rank < 2 {
        return Err(Error::Precondition(format!(
            "PU(N) monopoles need N >= 2, got N = {}",
            e.rank
        )));
    }
    let n = i64::from(e.rank);
    monopole_dimension(ModuliKind::PuMonopole, n * n - 1, e, s, m, dirac_multiplicity)
}

/// Expected dimension of the PU(N) monopole moduli space.
pub fn expected_dim_pun(
    e: &BundleData,
    s: &SpincStructure,
    m: &FourManifold,
    dirac_multiplicity: i64,
) -> Result<i64> {
    Ok(expected_dim_pun_breakdown(e, s, m, dirac_multiplicity)?.expected_dim)
}

pub fn expected_dim_un_breakdown(
    e: &BundleData,
    s: &SpincStructure,
    m: &FourManifold,
    dirac_multiplicity: i64,
) -> Result<ExpectedDimension> {
    let n = i64::from(e.rank);
    monopole_dimension(ModuliKind::UMonopole, n * n, e, s, m, dirac_multiplicity)
}

/// Expected dimension of the U(n) monopole moduli space.
pub fn expected_dim_un(
    e: &BundleData,
    s: &SpincStructure,
    m: &FourManifold,
    dirac_multiplicity: i64,
) -> Result<i64> {
    Ok(expected_dim_un_breakdown(e, s, m, dirac_multiplicity)?.expected_dim)
}

pub fn expected_dim_asd_breakdown(f: &BundleData, m: &FourManifold) -> Result<ExpectedDimension> {
    if f.rank < 2 {
        return Err(Error::Precondition(format!(
            "projective instantons need rank >= 2, got rank {}",
            f.rank
        )));
    }
    let r = i64::from(f.rank);
    let p1 = p1_su(f, m)?;
    let pontryagin_term = -2 * p1;
    let euler_term = -(r * r - 1) * m.index_euler_factor();
    Ok(ExpectedDimension {
        kind: ModuliKind::Instanton,
        rank: f.rank,
        p1_su: p1,
        pontryagin_term,
        euler_term,
        dirac_index: None,
        dirac_multiplicity: None,
        dirac_term: 0,
        expected_dim: pontryagin_term + euler_term,
        by_multiplicity: Vec::new(),
    })
}

/// Expected dimension of the moduli space of projectively anti-self-dual
/// connections on a bundle of rank at least two.
pub fn expected_dim_asd(f: &BundleData, m: &FourManifold) -> Result<i64> {
    Ok(expected_dim_asd_breakdown(f, m)?.expected_dim)
}

/// Standard intersection forms used in tests and examples.
pub mod forms {
    /// The negative-definite `-E8` form.
    pub fn minus_e8() -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; 8]; 8];
        // E8 Dynkin diagram: chain 0-1-2-3-4-5-6 with 7 attached to 4
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(a, b) in &edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    pub fn hyperbolic() -> Vec<Vec<i64>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    pub fn diagonal(entries: &[i64]) -> Vec<Vec<i64>> {
        let n = entries.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &e) in entries.iter().enumerate() {
            m[i][i] = e;
        }
        m
    }

    pub fn block_sum(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        let mut m = vec![vec![0; n]; n];
        let mut off = 0;
        for b in blocks {
            for (i, row) in b.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m[off + i][off + j] = v;
                }
            }
            off += b.len();
        }
        m
    }

    /// `3H + 2(-E8)`: the intersection form of a K3 surface.
    pub fn k3() -> Vec<Vec<i64>> {
        block_sum(&[
            hyperbolic(),
            hyperbolic(),
            hyperbolic(),
            minus_e8(),
            minus_e8(),
        ])
    }
}
