//! Operator norm and numerical radius on a polyhedral space.
//!
//! Both norms are maxima of finitely many evaluations: the operator norm over
//! extreme points `v` of `‖Tv‖`, the numerical radius over extreme dual pairs
//! `(v, f)` with `f(v) = 1` of `|f(Tv)|`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::PolyhedralSpace;

/// An extreme point paired with an extreme supporting functional at it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtremePair {
    pub vertex: usize,
    pub facet: usize,
}

pub(crate) fn enumerate_pairs(
    vertices: &[DVector<f64>],
    facets: &[DVector<f64>],
    tolerance: f64,
) -> Vec<ExtremePair> {
    let mut pairs = Vec::new();
    for (vertex, v) in vertices.iter().enumerate() {
        for (facet, f) in facets.iter().enumerate() {
            if (f.dot(v) - 1.0).abs() <= tolerance {
                pairs.push(ExtremePair { vertex, facet });
            }
        }
    }
    pairs
}

/// All extreme dual pairs of `space`, ordered by `(vertex, facet)`.
pub fn extreme_pairs(space: &PolyhedralSpace) -> Vec<ExtremePair> {
    space.extreme_pairs().to_vec()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairWitness {
    pub vertex: usize,
    pub facet: usize,
    /// `f(Tv)`; its absolute value is the numerical radius.
    pub signed_value: f64,
}

impl PairWitness {
    pub fn pair(&self) -> ExtremePair {
        ExtremePair {
            vertex: self.vertex,
            facet: self.facet,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexWitness {
    pub vertex: usize,
    /// `‖Tv‖`.
    pub value: f64,
}

/// A norm value with every extreme witness attaining it.
///
/// `sign_classes` partitions the witness list (by position) under
/// `(v, f) ~ (-v, -f)`, respectively `v ~ -v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttainmentReport<W> {
    pub value: f64,
    pub witnesses: Vec<W>,
    pub sign_classes: Vec<Vec<usize>>,
    /// Largest evaluation that does not attain, if any.
    pub runner_up: Option<f64>,
}

impl<W> AttainmentReport<W> {
    pub fn class_count(&self) -> usize {
        self.sign_classes.len()
    }

    /// First witness of each sign class.
    pub fn representatives(&self) -> impl Iterator<Item = &W> {
        self.sign_classes.iter().map(|c| &self.witnesses[c[0]])
    }
}

impl AttainmentReport<PairWitness> {
    pub fn contains(&self, vertex: usize, facet: usize) -> bool {
        self.witnesses
            .iter()
            .any(|w| w.vertex == vertex && w.facet == facet)
    }
}

/// A linear operator on a polyhedral space, stored as a dense matrix in the
/// standard basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<'a> {
    space: &'a PolyhedralSpace,
    entries: DMatrix<f64>,
}

impl<'a> Operator<'a> {
    pub fn new(space: &'a PolyhedralSpace, entries: DMatrix<f64>) -> Result<Self> {
        let n = space.dim();
        if entries.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.nrows(),
            });
        }
        if entries.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.ncols(),
            });
        }
        if entries.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(Self { space, entries })
    }

    pub fn from_rows(space: &'a PolyhedralSpace, rows: &[Vec<f64>]) -> Result<Self> {
        let n = space.dim();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Self::new(space, DMatrix::from_fn(n, n, |r, c| rows[r][c]))
    }

    pub fn identity(space: &'a PolyhedralSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            entries: DMatrix::identity(n, n),
        }
    }

    pub fn zero(space: &'a PolyhedralSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            entries: DMatrix::zeros(n, n),
        }
    }

    pub fn space(&self) -> &'a PolyhedralSpace {
        self.space
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.entries * x
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            space: self.space,
            entries: &self.entries * c,
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Operator<'_>, c: f64) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(Self {
            space: self.space,
            entries: &self.entries + &other.entries * c,
        })
    }

    pub fn add(&self, other: &Operator<'_>) -> Result<Self> {
        self.add_scaled(other, 1.0)
    }

    pub(crate) fn check_same_space(&self, other: &Operator<'_>) -> Result<()> {
        if std::ptr::eq(self.space, other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    /// `T v` for every extreme point, in vertex order.
    pub(crate) fn images(&self) -> Vec<DVector<f64>> {
        self.space.vertices().iter().map(|v| self.apply(v)).collect()
    }

    /// `f(Tv)` for a dual pair.
    pub fn pair_value(&self, pair: ExtremePair) -> f64 {
        let v = &self.space.vertices()[pair.vertex];
        let f = &self.space.facets()[pair.facet];
        f.dot(&self.apply(v))
    }

    /// `f(Tv)` for every extreme pair, in pair order.
    pub(crate) fn pair_values(&self) -> Vec<f64> {
        let images = self.images();
        let facets = self.space.facets();
        self.space
            .extreme_pairs()
            .iter()
            .map(|p| facets[p.facet].dot(&images[p.vertex]))
            .collect()
    }

    /// `‖T‖ = max_v ‖Tv‖` over extreme points, with the attaining vertices.
    pub fn operator_norm(&self) -> AttainmentReport<VertexWitness> {
        let eps = self.space.tolerance();
        let values: Vec<f64> = self
            .images()
            .iter()
            .map(|tv| self.space.norm_unchecked(tv))
            .collect();
        let value = values.iter().copied().fold(0.0, f64::max);
        let mut witnesses = Vec::new();
        let mut runner_up: Option<f64> = None;
        for (vertex, &x) in values.iter().enumerate() {
            if x >= value - eps {
                witnesses.push(VertexWitness { vertex, value: x });
            } else {
                runner_up = Some(runner_up.map_or(x, |r| r.max(x)));
            }
        }
        let sign_classes = group_classes(&witnesses, |w| {
            self.space
                .vertex_negation(w.vertex)
                .and_then(|neg| witnesses.iter().position(|o| o.vertex == neg))
        });
        AttainmentReport {
            value,
            witnesses,
            sign_classes,
            runner_up,
        }
    }

    /// `‖T‖_w = max |f(Tv)|` over extreme dual pairs, with every attaining
    /// pair annotated by its signed value.
    pub fn numerical_radius(&self) -> AttainmentReport<PairWitness> {
        let eps = self.space.tolerance();
        let pairs = self.space.extreme_pairs();
        let values = self.pair_values();
        let value = values.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let mut witnesses = Vec::new();
        let mut runner_up: Option<f64> = None;
        for (p, &x) in pairs.iter().zip(&values) {
            if x.abs() >= value - eps {
                witnesses.push(PairWitness {
                    vertex: p.vertex,
                    facet: p.facet,
                    signed_value: x,
                });
            } else {
                runner_up = Some(runner_up.map_or(x.abs(), |r| r.max(x.abs())));
            }
        }
        let sign_classes = group_classes(&witnesses, |w| {
            let nv = self.space.vertex_negation(w.vertex)?;
            let nf = self.space.facet_negation(w.facet)?;
            witnesses
                .binary_search_by(|o| (o.vertex, o.facet).cmp(&(nv, nf)))
                .ok()
        });
        AttainmentReport {
            value,
            witnesses,
            sign_classes,
            runner_up,
        }
    }

    /// `‖T‖_w`.
    pub fn w_norm(&self) -> f64 {
        self.pair_values()
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max)
    }

    /// Whether `‖T‖_w ≤ ε` (zero in the numerical radius norm).
    pub fn is_w_zero(&self) -> bool {
        self.w_norm() <= self.space.tolerance()
    }
}

fn group_classes<W>(witnesses: &[W], partner: impl Fn(&W) -> Option<usize>) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; witnesses.len()];
    let mut classes = Vec::new();
    for (k, w) in witnesses.iter().enumerate() {
        if assigned[k] {
            continue;
        }
        assigned[k] = true;
        let mut class = vec![k];
        if let Some(p) = partner(w) {
            if !assigned[p] {
                assigned[p] = true;
                class.push(p);
            }
        }
        classes.push(class);
    }
    classes
}

/// `‖T‖_w ≤ ε ⟹ T = 0` entrywise within `ε`.
///
/// On a valid polyhedral space the numerical radius is a norm, so this holds
/// for every operator.
pub fn w_definiteness_check(space: &PolyhedralSpace, op: &Operator<'_>) -> bool {
    let eps = space.tolerance();
    op.w_norm() > eps || op.entries().iter().all(|c| c.abs() <= eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        hexagon, hexagon_operator_matrix, hexagonal_prism, prism_operator_matrix,
    };

    #[test]
    fn pair_counts() {
        assert_eq!(extreme_pairs(&hexagon()).len(), 12);
        assert_eq!(extreme_pairs(&PolyhedralSpace::linf(2).unwrap()).len(), 8);
        // 12 vertices of the prism, each on 3 facets
        assert_eq!(extreme_pairs(&hexagonal_prism()).len(), 36);
    }

    #[test]
    fn prism_example() {
        let prism = hexagonal_prism();
        let t = Operator::new(&prism, prism_operator_matrix()).unwrap();

        let op = t.operator_norm();
        assert!((op.value - 1.0).abs() < 1e-12);
        let attaining: Vec<_> = op.witnesses.iter().map(|w| w.vertex).collect();
        assert_eq!(attaining, vec![4, 10]); // x5, -x5
        assert_eq!(op.class_count(), 1);

        let w = t.numerical_radius();
        assert!((w.value - 1.0).abs() < 1e-12);
        let pairs: Vec<_> = w.witnesses.iter().map(|p| (p.vertex, p.facet)).collect();
        assert_eq!(pairs, vec![(4, 2), (10, 6)]); // (x5, f3), (-x5, -f3)
        assert_eq!(w.class_count(), 1);
        assert!(w.runner_up.unwrap() < 1.0);
    }

    #[test]
    fn hexagon_example_values() {
        let hex = hexagon();
        let t = Operator::new(&hex, hexagon_operator_matrix()).unwrap();
        let w = t.numerical_radius();
        assert!((w.value - 0.5).abs() < 1e-12);
        let signed = |v, f| w.witnesses.iter().find(|p| p.vertex == v && p.facet == f).map(|p| p.signed_value);
        assert!((signed(0, 0).unwrap() + 0.5).abs() < 1e-12);
        assert!((signed(0, 1).unwrap() - 0.5).abs() < 1e-12);
        assert!((signed(1, 2).unwrap() - 0.5).abs() < 1e-12);
        assert!((signed(2, 2).unwrap() + 0.5).abs() < 1e-12);
        assert_eq!(w.witnesses.len(), 8);
        assert_eq!(w.class_count(), 4);
        assert!((w.runner_up.unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn identity_attains_everywhere() {
        let hex = hexagon();
        let id = Operator::identity(&hex);
        let w = id.numerical_radius();
        assert!((w.value - 1.0).abs() < 1e-12);
        assert_eq!(w.witnesses.len(), 12);
        assert_eq!(w.runner_up, None);
        let op = id.operator_norm();
        assert_eq!(op.witnesses.len(), 6);
        assert_eq!(op.class_count(), 3);
    }

    #[test]
    fn zero_operator() {
        let hex = hexagon();
        let z = Operator::zero(&hex);
        assert_eq!(z.numerical_radius().value, 0.0);
        assert!(w_definiteness_check(&hex, &z));
        assert!(z.is_w_zero());
    }

    #[test]
    fn rotation_on_square_is_detected() {
        // T(x, y) = (-y, x); on ℓ∞² the pair ((1,1), e1) gives f(Tv) = -1.
        let sq = PolyhedralSpace::linf(2).unwrap();
        let rot = Operator::from_rows(&sq, &[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert!((rot.w_norm() - 1.0).abs() < 1e-12);
        assert!(w_definiteness_check(&sq, &rot));
    }

    #[test]
    fn shape_errors() {
        let hex = hexagon();
        assert!(matches!(
            Operator::new(&hex, DMatrix::zeros(3, 3)),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(Operator::from_rows(&hex, &[vec![1.0], vec![0.0, 1.0]]).is_err());
        let sq = PolyhedralSpace::linf(2).unwrap();
        let a = Operator::identity(&hex);
        let b = Operator::identity(&sq);
        assert_eq!(a.add(&b), Err(Error::SpaceMismatch));
    }
}
