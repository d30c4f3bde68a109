//! The two worked examples: a regular hexagon and the hexagonal prism
//! `hexagon ⊕∞ ℝ`, each with a rank-one operator `x ↦ g(x)·u`.
//!
//! Coordinates involving √3 are committed as full-precision literals so that
//! every report built from them is byte-stable.

use nalgebra::{DMatrix, DVector};

use crate::space::{PolyhedralSpace, DEFAULT_TOLERANCE};

pub const SQRT3: f64 = 1.7320508075688772;
pub const HALF_SQRT3: f64 = 0.8660254037844386;
pub const INV_SQRT3: f64 = 0.5773502691896258;
pub const TWO_OVER_SQRT3: f64 = 1.1547005383792517;

pub const HEXAGON: &str = "hexagon";
pub const HEXAGONAL_PRISM: &str = "hexagonal-prism";
pub const HEXAGON_T: &str = "hexagon-T";
pub const PRISM_T: &str = "prism-T";

/// Vertex order: `x1, x2, x3, -x1, -x2, -x3` with
/// `x1 = (1, 0)`, `x2 = (1/2, √3/2)`, `x3 = (-1/2, √3/2)`.
/// Facet order: `f1, f2, f3, -f1, -f2, -f3` with
/// `f1 = x - y/√3`, `f2 = x + y/√3`, `f3 = 2y/√3`.
pub fn hexagon() -> PolyhedralSpace {
    let half = [[1.0, 0.0], [0.5, HALF_SQRT3], [-0.5, HALF_SQRT3]];
    let functionals = [[1.0, -INV_SQRT3], [1.0, INV_SQRT3], [0.0, TWO_OVER_SQRT3]];
    PolyhedralSpace::new(mirrored(&half), mirrored(&functionals), DEFAULT_TOLERANCE)
        .expect("hexagon fixture is well formed")
}

/// Vertex order: `x1..x6, -x1..-x6` where `xk = (hexagon point, 1)` going
/// counter-clockwise from `x1 = (1, 0, 1)`; `x5 = (-1/2, -√3/2, 1)`.
/// Facet order: `f1, f2, f3, f4, -f1, .., -f4` with `f1 = z`,
/// `f2 = -(2/√3)y`, `f3 = -x - y/√3` (the three supporting `x5`) and
/// `f4 = x - y/√3`.
pub fn hexagonal_prism() -> PolyhedralSpace {
    let top = [
        [1.0, 0.0, 1.0],
        [0.5, HALF_SQRT3, 1.0],
        [-0.5, HALF_SQRT3, 1.0],
        [-1.0, 0.0, 1.0],
        [-0.5, -HALF_SQRT3, 1.0],
        [0.5, -HALF_SQRT3, 1.0],
    ];
    let functionals = [
        [0.0, 0.0, 1.0],
        [0.0, -TWO_OVER_SQRT3, 0.0],
        [-1.0, -INV_SQRT3, 0.0],
        [1.0, -INV_SQRT3, 0.0],
    ];
    PolyhedralSpace::new(mirrored(&top), mirrored(&functionals), DEFAULT_TOLERANCE)
        .expect("prism fixture is well formed")
}

/// `T(x, y) = x·(0, √3/2)` on the hexagon.
pub fn hexagon_operator_matrix() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 0.0, HALF_SQRT3, 0.0])
}

/// `T(x, y, z) = g(x, y, z)·u` on the prism with `g = (x + √3y - z)/3` and
/// `u = (-1, 0, 0)`.
pub fn prism_operator_matrix() -> DMatrix<f64> {
    let g = [1.0 / 3.0, SQRT3 / 3.0, -1.0 / 3.0];
    let u = [-1.0, 0.0, 0.0];
    DMatrix::from_fn(3, 3, |r, c| u[r] * g[c])
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    /// Built-in space the bundle lives on.
    pub space_name: &'static str,
    pub space: PolyhedralSpace,
    /// `None` for bare space bundles.
    pub operator: Option<DMatrix<f64>>,
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: HEXAGON,
            space_name: HEXAGON,
            space: hexagon(),
            operator: None,
        },
        Fixture {
            name: HEXAGONAL_PRISM,
            space_name: HEXAGONAL_PRISM,
            space: hexagonal_prism(),
            operator: None,
        },
        Fixture {
            name: PRISM_T,
            space_name: HEXAGONAL_PRISM,
            space: hexagonal_prism(),
            operator: Some(prism_operator_matrix()),
        },
        Fixture {
            name: HEXAGON_T,
            space_name: HEXAGON,
            space: hexagon(),
            operator: Some(hexagon_operator_matrix()),
        },
    ]
}

/// Operator matrix of a named fixture (`prism-T`, `hexagon-T`).
pub fn operator_fixture(name: &str) -> Option<(&'static str, DMatrix<f64>)> {
    match name {
        PRISM_T => Some((HEXAGONAL_PRISM, prism_operator_matrix())),
        HEXAGON_T => Some((HEXAGON, hexagon_operator_matrix())),
        _ => None,
    }
}

fn mirrored<const N: usize>(half: &[[f64; N]]) -> Vec<DVector<f64>> {
    let pos = half.iter().map(|r| DVector::from_column_slice(r));
    let neg = half.iter().map(|r| -DVector::from_column_slice(r));
    pos.chain(neg).collect()
}
