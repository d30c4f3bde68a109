//! Finite-dimensional real polyhedral Banach spaces.
//!
//! A space is stored by both representations of its unit ball: the extreme
//! points (V-representation) and the facet functionals, which are exactly the
//! extreme points of the dual ball (H-representation). Both lists are kept
//! `±`-symmetric in full.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{enumerate_pairs, ExtremePair};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest dimension accepted by [`dual_from_vertices`].
pub const MAX_ENUMERATION_DIM: usize = 4;
/// Largest vertex count accepted by [`dual_from_vertices`].
pub const MAX_ENUMERATION_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralSpace {
    dim: usize,
    vertices: Vec<DVector<f64>>,
    facets: Vec<DVector<f64>>,
    tolerance: f64,
    vertex_negation: Vec<Option<usize>>,
    facet_negation: Vec<Option<usize>>,
    pairs: Vec<ExtremePair>,
}

impl PolyhedralSpace {
    /// Builds a space from both representations.
    ///
    /// Only shape is checked here (dimensions, finiteness, a positive
    /// tolerance). The geometric invariants are reported by
    /// [`PolyhedralSpace::validate`], so that inconsistent data can still be
    /// loaded and diagnosed.
    pub fn new(
        vertices: Vec<DVector<f64>>,
        facets: Vec<DVector<f64>>,
        tolerance: f64,
    ) -> Result<Self> {
        let dim = vertices
            .first()
            .map(|v| v.len())
            .ok_or_else(|| Error::DegenerateBall("no vertices".into()))?;
        if dim == 0 {
            return Err(Error::DegenerateBall("zero-dimensional space".into()));
        }
        if facets.is_empty() {
            return Err(Error::DegenerateBall("no facet functionals".into()));
        }
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Error::InvalidInput(format!(
                "tolerance must be a positive real, got {tolerance}"
            )));
        }
        for v in vertices.iter().chain(facets.iter()) {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput("non-finite coordinate".into()));
            }
        }
        let vertex_negation = negation_table(&vertices, tolerance);
        let facet_negation = negation_table(&facets, tolerance);
        let pairs = enumerate_pairs(&vertices, &facets, tolerance);
        Ok(Self {
            dim,
            vertices,
            facets,
            tolerance,
            vertex_negation,
            facet_negation,
            pairs,
        })
    }

    /// Builds a space from its extreme points, enumerating the facets.
    pub fn from_vertices(vertices: Vec<DVector<f64>>, tolerance: f64) -> Result<Self> {
        let facets = dual_from_vertices(&vertices, tolerance)?;
        Self::new(vertices, facets, tolerance)
    }

    pub fn from_rows(vertices: &[Vec<f64>], facets: &[Vec<f64>], tolerance: f64) -> Result<Self> {
        Self::new(to_vectors(vertices), to_vectors(facets), tolerance)
    }

    /// `ℓ∞ⁿ`: the cube with vertices `{±1}ⁿ` and facets `±eᵢ`.
    pub fn linf(n: usize) -> Result<Self> {
        check_builtin_dim(n)?;
        let vertices = sign_vectors(n);
        let facets = signed_basis(n);
        Self::new(vertices, facets, DEFAULT_TOLERANCE)
    }

    /// `ℓ1ⁿ`: the cross-polytope with vertices `±eᵢ` and facets `{±1}ⁿ`.
    pub fn l1(n: usize) -> Result<Self> {
        check_builtin_dim(n)?;
        Self::new(signed_basis(n), sign_vectors(n), DEFAULT_TOLERANCE)
    }

    /// Resolves a built-in name: `hexagon`, `hexagonal-prism`, `linf-n`, `l1-n`
    /// for `n` in `2..=4`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "hexagon" => return Ok(crate::fixtures::hexagon()),
            "hexagonal-prism" => return Ok(crate::fixtures::hexagonal_prism()),
            _ => {}
        }
        let parsed = name
            .strip_prefix("linf-")
            .map(|n| (true, n))
            .or_else(|| name.strip_prefix("l1-").map(|n| (false, n)));
        match parsed {
            Some((cube, n)) => {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("unknown built-in space `{name}`")))?;
                if cube {
                    Self::linf(n)
                } else {
                    Self::l1(n)
                }
            }
            None => Err(Error::InvalidInput(format!("unknown built-in space `{name}`"))),
        }
    }

    pub fn builtin_names() -> Vec<String> {
        let mut names = vec!["hexagon".to_string(), "hexagonal-prism".to_string()];
        for n in 2..=4 {
            names.push(format!("linf-{n}"));
        }
        for n in 2..=4 {
            names.push(format!("l1-{n}"));
        }
        names
    }

    /// Same space with a different comparison tolerance.
    pub fn with_tolerance(&self, tolerance: f64) -> Result<Self> {
        Self::new(self.vertices.clone(), self.facets.clone(), tolerance)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[DVector<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[DVector<f64>] {
        &self.facets
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Index of `-vertices[i]`, if present.
    pub fn vertex_negation(&self, i: usize) -> Option<usize> {
        self.vertex_negation[i]
    }

    /// Index of `-facets[j]`, if present.
    pub fn facet_negation(&self, j: usize) -> Option<usize> {
        self.facet_negation[j]
    }

    /// All `(vertex, facet)` index pairs with `f(v) = 1`, ordered by
    /// `(vertex, facet)`.
    pub fn extreme_pairs(&self) -> &[ExtremePair] {
        &self.pairs
    }

    fn check_dim(&self, x: &DVector<f64>) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `‖x‖ = max_f f(x)` over the facet functionals.
    pub fn norm(&self, x: &DVector<f64>) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.norm_unchecked(x))
    }

    pub(crate) fn norm_unchecked(&self, x: &DVector<f64>) -> f64 {
        self.facets
            .iter()
            .map(|f| f.dot(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Dual norm of a functional: `max_v |f(v)|` over the extreme points.
    pub fn dual_norm(&self, f: &DVector<f64>) -> Result<f64> {
        self.check_dim(f)?;
        Ok(self
            .vertices
            .iter()
            .map(|v| f.dot(v).abs())
            .fold(0.0, f64::max))
    }

    /// Indices of the facet functionals supporting the ball at `x / ‖x‖`.
    ///
    /// The full set `J(x / ‖x‖)` is the convex hull of the returned
    /// functionals.
    pub fn support_set(&self, x: &DVector<f64>) -> Result<Vec<usize>> {
        self.check_dim(x)?;
        if x.iter().all(|c| *c == 0.0) {
            return Err(Error::ZeroVector);
        }
        let norm = self.norm_unchecked(x);
        if norm <= 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self
            .facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.dot(x) / norm >= 1.0 - self.tolerance)
            .map(|(j, _)| j)
            .collect())
    }

    pub fn is_smooth_point(&self, x: &DVector<f64>) -> Result<bool> {
        Ok(self.support_set(x)?.len() == 1)
    }

    /// Indices of facets with `f(vertices[i]) = 1` within tolerance.
    pub fn facets_at_vertex(&self, i: usize) -> Vec<usize> {
        let v = &self.vertices[i];
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| (f.dot(v) - 1.0).abs() <= self.tolerance)
            .map(|(j, _)| j)
            .collect()
    }

    /// Indices of vertices with `facets[j](v) = 1` within tolerance.
    pub fn vertices_on_facet(&self, j: usize) -> Vec<usize> {
        let f = &self.facets[j];
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| (f.dot(v) - 1.0).abs() <= self.tolerance)
            .map(|(i, _)| i)
            .collect()
    }

    /// Checks every structural invariant of the V/H pair.
    pub fn validate(&self) -> ValidationReport {
        let eps = self.tolerance;
        let n = self.dim;
        let mut violations = Vec::new();

        for (i, neg) in self.vertex_negation.iter().enumerate() {
            if neg.is_none() {
                violations.push(Violation::vertex(
                    InvariantKind::Symmetry,
                    i,
                    "negated vertex missing".into(),
                ));
            }
        }
        for (j, neg) in self.facet_negation.iter().enumerate() {
            if neg.is_none() {
                violations.push(Violation::facet(
                    InvariantKind::Symmetry,
                    j,
                    "negated facet functional missing".into(),
                ));
            }
        }

        for (i, v) in self.vertices.iter().enumerate() {
            let max = self.norm_unchecked(v);
            if (max - 1.0).abs() > eps {
                violations.push(Violation::vertex(
                    InvariantKind::Consistency,
                    i,
                    format!("max facet value {max} differs from 1"),
                ));
            }
        }

        for j in 0..self.facets.len() {
            let on_facet = self.vertices_on_facet(j);
            let rank = rank_of(on_facet.iter().map(|&i| &self.vertices[i]), n, eps);
            if rank < n {
                violations.push(Violation::facet(
                    InvariantKind::Tightness,
                    j,
                    format!(
                        "{} vertices attain 1 with rank {rank}, need {n} independent",
                        on_facet.len()
                    ),
                ));
            }
        }

        if rank_of(self.vertices.iter(), n, eps) < n {
            violations.push(Violation {
                kind: InvariantKind::Fullness,
                vertex: None,
                facet: None,
                detail: "vertices do not span the space".into(),
            });
        }

        let counts: Vec<usize> = (0..self.vertices.len())
            .map(|i| self.facets_at_vertex(i).len())
            .collect();
        for (i, &count) in counts.iter().enumerate() {
            if count < n {
                violations.push(Violation::vertex(
                    InvariantKind::VertexFacetCount,
                    i,
                    format!("lies on {count} facets, need at least {n}"),
                ));
            }
        }

        ValidationReport {
            valid: violations.is_empty(),
            dim: n,
            vertex_count: self.vertices.len(),
            facet_count: self.facets.len(),
            min_facets_per_vertex: counts.iter().copied().min().unwrap_or(0),
            violations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InvariantKind {
    Symmetry,
    Consistency,
    Tightness,
    Fullness,
    VertexFacetCount,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub kind: InvariantKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet: Option<usize>,
    pub detail: String,
}

impl Violation {
    fn vertex(kind: InvariantKind, vertex: usize, detail: String) -> Self {
        Self {
            kind,
            vertex: Some(vertex),
            facet: None,
            detail,
        }
    }

    fn facet(kind: InvariantKind, facet: usize, detail: String) -> Self {
        Self {
            kind,
            vertex: None,
            facet: Some(facet),
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub dim: usize,
    pub vertex_count: usize,
    pub facet_count: usize,
    pub min_facets_per_vertex: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn violations_of(&self, kind: InvariantKind) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} facets, min facet count per vertex = {}",
            self.vertex_count, self.facet_count, self.min_facets_per_vertex
        )
    }
}

/// Enumerates the facet functionals of the symmetric polytope spanned by
/// `vertices`.
///
/// Every `n`-subset of vertices spanning a hyperplane gives a candidate `f`
/// with `f ≡ 1` on the subset. A candidate is kept when it bounds every
/// vertex by `1 + ε` and touches at least `n` independent vertices.
/// The output lists the representatives with positive leading coefficient in
/// lexicographic order, followed by their negations in the same order.
pub fn dual_from_vertices(vertices: &[DVector<f64>], tolerance: f64) -> Result<Vec<DVector<f64>>> {
    let n = vertices
        .first()
        .map(|v| v.len())
        .ok_or_else(|| Error::DegenerateBall("no vertices".into()))?;
    if let Some(bad) = vertices.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    if n == 0 {
        return Err(Error::DegenerateBall("zero-dimensional space".into()));
    }
    if n > MAX_ENUMERATION_DIM || vertices.len() > MAX_ENUMERATION_VERTICES {
        return Err(Error::EnumerationTooLarge {
            dim: n,
            vertices: vertices.len(),
        });
    }
    if rank_of(vertices.iter(), n, tolerance) < n {
        return Err(Error::DegenerateBall("vertices do not span the space".into()));
    }

    let ones = DVector::from_element(n, 1.0);
    let mut reps: Vec<DVector<f64>> = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let m = DMatrix::from_fn(n, n, |r, c| vertices[subset[r]][c]);
        if let Some(f) = m.clone().lu().solve(&ones) {
            let residual = (&m * &f - &ones).amax();
            if f.iter().all(|c| c.is_finite()) && residual <= tolerance {
                if let Some(rep) = accept_candidate(f, vertices, n, tolerance) {
                    if !reps.iter().any(|r| approx_eq(r, &rep, tolerance)) {
                        reps.push(rep);
                    }
                }
            }
        }
        if !next_combination(&mut subset, vertices.len()) {
            break;
        }
    }
    if reps.is_empty() {
        return Err(Error::DegenerateBall("no supporting hyperplanes found".into()));
    }
    reps.sort_by(lex_cmp);
    let negs: Vec<_> = reps.iter().map(|f| -f).collect();
    reps.extend(negs);
    Ok(reps)
}

fn accept_candidate(
    f: DVector<f64>,
    vertices: &[DVector<f64>],
    n: usize,
    tolerance: f64,
) -> Option<DVector<f64>> {
    let values: Vec<f64> = vertices.iter().map(|v| f.dot(v)).collect();
    if values.iter().any(|&x| x > 1.0 + tolerance) {
        return None;
    }
    let active = vertices
        .iter()
        .zip(&values)
        .filter(|(_, &x)| (x - 1.0).abs() <= tolerance)
        .map(|(v, _)| v);
    if rank_of(active, n, tolerance) < n {
        return None;
    }
    Some(canonical_sign(f, tolerance))
}

/// Flips `f` so that its leading coefficient (first with `|c| > ε`) is positive.
fn canonical_sign(f: DVector<f64>, tolerance: f64) -> DVector<f64> {
    match f.iter().find(|c| c.abs() > tolerance) {
        Some(c) if *c < 0.0 => -f,
        _ => f,
    }
}

fn lex_cmp(a: &DVector<f64>, b: &DVector<f64>) -> Ordering {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn approx_eq(a: &DVector<f64>, b: &DVector<f64>, tolerance: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tolerance)
}

/// Advances `subset` to the next k-combination of `0..len` in lexicographic
/// order. Returns false after the last one.
fn next_combination(subset: &mut [usize], len: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < len - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(crate) fn rank_of<'a>(
    rows: impl Iterator<Item = &'a DVector<f64>>,
    n: usize,
    tolerance: f64,
) -> usize {
    let rows: Vec<&DVector<f64>> = rows.collect();
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), n, |r, c| rows[r][c]);
    // Singular values of well-scaled ball data sit far above this floor.
    m.rank(tolerance.max(1e-12) * 1e3)
}

fn negation_table(list: &[DVector<f64>], tolerance: f64) -> Vec<Option<usize>> {
    list.iter()
        .map(|x| {
            list.iter()
                .position(|y| x.iter().zip(y.iter()).all(|(a, b)| (a + b).abs() <= tolerance))
        })
        .collect()
}

fn check_builtin_dim(n: usize) -> Result<()> {
    if (1..=8).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("built-in dimension {n} out of range")))
    }
}

fn sign_vectors(n: usize) -> Vec<DVector<f64>> {
    (0..1usize << n)
        .map(|bits| DVector::from_fn(n, |i, _| if bits >> i & 1 == 0 { 1.0 } else { -1.0 }))
        .collect()
}

fn signed_basis(n: usize) -> Vec<DVector<f64>> {
    let pos = (0..n).map(|i| DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 }));
    let neg = (0..n).map(|i| DVector::from_fn(n, |k, _| if k == i { -1.0 } else { 0.0 }));
    pos.chain(neg).collect()
}

pub(crate) fn to_vectors(rows: &[Vec<f64>]) -> Vec<DVector<f64>> {
    rows.iter().map(|r| DVector::from_column_slice(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hexagon, hexagonal_prism, HALF_SQRT3, INV_SQRT3, TWO_OVER_SQRT3};

    fn v(c: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(c)
    }

    fn contains(list: &[DVector<f64>], f: &DVector<f64>) -> bool {
        list.iter().any(|g| approx_eq(g, f, 1e-9))
    }

    #[test]
    fn hexagon_norm_on_vertex_and_zero() {
        let hex = hexagon();
        assert!((hex.norm(&v(&[1.0, 0.0])).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(hex.norm(&v(&[0.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn norm_dimension_mismatch() {
        let hex = hexagon();
        assert_eq!(
            hex.norm(&v(&[1.0, 0.0, 0.0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn hexagon_support_set_at_x1() {
        let hex = hexagon();
        let f1 = v(&[1.0, -INV_SQRT3]);
        let f2 = v(&[1.0, INV_SQRT3]);
        for scale in [1.0, 2.0, 0.25] {
            let set = hex.support_set(&v(&[scale, 0.0])).unwrap();
            assert_eq!(set.len(), 2);
            let got: Vec<_> = set.iter().map(|&j| hex.facets()[j].clone()).collect();
            assert!(contains(&got, &f1) && contains(&got, &f2));
        }
    }

    #[test]
    fn prism_support_set_at_x5() {
        let prism = hexagonal_prism();
        let x5 = v(&[-0.5, -HALF_SQRT3, 1.0]);
        let got: Vec<_> = prism
            .support_set(&x5)
            .unwrap()
            .into_iter()
            .map(|j| prism.facets()[j].clone())
            .collect();
        assert_eq!(got.len(), 3);
        assert!(contains(&got, &v(&[0.0, 0.0, 1.0])));
        assert!(contains(&got, &v(&[0.0, -TWO_OVER_SQRT3, 0.0])));
        assert!(contains(&got, &v(&[-1.0, -INV_SQRT3, 0.0])));
    }

    #[test]
    fn support_set_rejects_zero() {
        assert_eq!(hexagon().support_set(&v(&[0.0, 0.0])), Err(Error::ZeroVector));
        assert_eq!(hexagon().is_smooth_point(&v(&[0.0, 0.0])), Err(Error::ZeroVector));
    }

    #[test]
    fn smooth_points() {
        let hex = hexagon();
        assert!(hex.is_smooth_point(&v(&[0.0, HALF_SQRT3])).unwrap());
        assert!(!hex.is_smooth_point(&v(&[1.0, 0.0])).unwrap());
        let prism = hexagonal_prism();
        assert!(!prism.is_smooth_point(&v(&[-1.0, 0.0, 0.0])).unwrap());
    }

    #[test]
    fn fixtures_validate() {
        let report = hexagon().validate();
        assert!(report.valid, "{:?}", report.violations);
        assert_eq!(report.min_facets_per_vertex, 2);
        assert_eq!(report.to_string(), "6 vertices, 6 facets, min facet count per vertex = 2");

        let hex = hexagon();
        assert!((0..6).all(|i| hex.facets_at_vertex(i).len() == 2));

        let prism = hexagonal_prism();
        let report = prism.validate();
        assert!(report.valid, "{:?}", report.violations);
        assert_eq!((report.vertex_count, report.facet_count), (12, 8));
        assert!((0..12).all(|i| prism.facets_at_vertex(i).len() == 3));
    }

    #[test]
    fn builtins_validate() {
        for name in PolyhedralSpace::builtin_names() {
            let space = PolyhedralSpace::builtin(&name).unwrap();
            let report = space.validate();
            assert!(report.valid, "{name}: {:?}", report.violations);
            assert!(report.min_facets_per_vertex >= space.dim());
        }
        assert!(PolyhedralSpace::builtin("linf-x").is_err());
        assert!(PolyhedralSpace::builtin("octagon").is_err());
    }

    #[test]
    fn corrupted_hexagon_is_reported() {
        let hex = hexagon();
        // drop f3 = (0, 2/√3)
        let facets: Vec<_> = hex
            .facets()
            .iter()
            .filter(|f| !approx_eq(f, &v(&[0.0, TWO_OVER_SQRT3]), 1e-9))
            .cloned()
            .collect();
        assert_eq!(facets.len(), 5);
        let broken = PolyhedralSpace::new(hex.vertices().to_vec(), facets, 1e-9).unwrap();
        let report = broken.validate();
        assert!(!report.valid);
        assert_eq!(report.min_facets_per_vertex, 1);
        // x2 and x3 each keep only one supporting facet
        let starved: Vec<_> = report
            .violations_of(InvariantKind::VertexFacetCount)
            .filter_map(|v| v.vertex)
            .collect();
        assert_eq!(starved, vec![1, 2]);
        assert_eq!(report.violations_of(InvariantKind::Symmetry).count(), 1);
    }

    #[test]
    fn shrunken_facet_list_breaks_consistency() {
        // Dropping ±f2 and ±f3 leaves x2 with max f(x2) = 0 < 1.
        let hex = hexagon();
        let f1 = v(&[1.0, -INV_SQRT3]);
        let broken = PolyhedralSpace::new(hex.vertices().to_vec(), vec![f1.clone(), -f1], 1e-9).unwrap();
        let report = broken.validate();
        let bad: Vec<_> = report
            .violations_of(InvariantKind::Consistency)
            .filter_map(|v| v.vertex)
            .collect();
        assert!(bad.contains(&1));
    }

    #[test]
    fn dual_of_hexagon() {
        let hex = hexagon();
        let facets = dual_from_vertices(hex.vertices(), 1e-9).unwrap();
        assert_eq!(facets.len(), 6);
        for f in hex.facets() {
            assert!(contains(&facets, f));
        }
    }

    #[test]
    fn dual_of_square() {
        let square = PolyhedralSpace::linf(2).unwrap();
        let facets = dual_from_vertices(square.vertices(), 1e-9).unwrap();
        assert_eq!(facets.len(), 4);
        for f in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
            assert!(contains(&facets, &v(&f)));
        }
    }

    #[test]
    fn dual_of_prism_checked_by_direct_evaluation() {
        let prism = hexagonal_prism();
        let facets = dual_from_vertices(prism.vertices(), 1e-9).unwrap();
        assert_eq!(facets.len(), 8);
        for f in &facets {
            let values: Vec<f64> = prism.vertices().iter().map(|x| f.dot(x)).collect();
            assert!(values.iter().all(|&x| x <= 1.0 + 1e-9));
            assert!(values.iter().filter(|&&x| (x - 1.0).abs() <= 1e-9).count() >= 3);
        }
        for f in prism.facets() {
            assert!(contains(&facets, f));
        }
        // symmetric halves
        for k in 0..4 {
            assert!(approx_eq(&facets[k + 4], &-&facets[k], 0.0));
        }
    }

    #[test]
    fn dual_errors() {
        let flat = vec![v(&[1.0, 1.0]), v(&[-1.0, -1.0])];
        assert!(matches!(dual_from_vertices(&flat, 1e-9), Err(Error::DegenerateBall(_))));
        let big = sign_vectors(5);
        assert!(matches!(
            dual_from_vertices(&big, 1e-9),
            Err(Error::EnumerationTooLarge { dim: 5, .. })
        ));
        let too_many: Vec<_> = (0..70)
            .map(|k| {
                let t = k as f64 * std::f64::consts::PI / 35.0;
                v(&[t.cos(), t.sin()])
            })
            .collect();
        assert!(matches!(
            dual_from_vertices(&too_many, 1e-9),
            Err(Error::EnumerationTooLarge { vertices: 70, .. })
        ));
    }

    #[test]
    fn from_vertices_matches_builtins() {
        for n in 2..=4 {
            for space in [PolyhedralSpace::linf(n).unwrap(), PolyhedralSpace::l1(n).unwrap()] {
                let rebuilt = PolyhedralSpace::from_vertices(space.vertices().to_vec(), 1e-9).unwrap();
                assert!(rebuilt.validate().valid);
                assert_eq!(rebuilt.facets().len(), space.facets().len());
                for f in space.facets() {
                    assert!(contains(rebuilt.facets(), f));
                }
            }
        }
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut s = vec![0, 1, 2];
        let mut count = 1;
        while next_combination(&mut s, 6) {
            count += 1;
        }
        assert_eq!(count, 20);
    }
}
