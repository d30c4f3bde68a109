//! Browser bindings: every export takes plain numbers and returns a JSON
//! string, so the page needs no generated TypeScript types.

use nalgebra::DMatrix;
use nuradius_core::{
    classify, is_w_orthogonal, lambda_profile_min, LambdaProfile, NormKind, Operator, PolyhedralSpace,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Two-dimensional spaces offered by the page.
pub const PLANAR_SPACES: [&str; 3] = ["hexagon", "linf-2", "l1-2"];

#[derive(Debug, Serialize)]
pub struct Geometry {
    pub name: String,
    pub vertices: Vec<[f64; 2]>,
    pub facets: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct Witness {
    pub vertex: usize,
    pub facet: usize,
    pub signed_value: f64,
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub op_norm: f64,
    pub w_norm: f64,
    pub operator_smooth: bool,
    pub nu_smooth: bool,
    pub attaining_vertices: Vec<usize>,
    pub witnesses: Vec<Witness>,
    /// Images `Tv` of the unit-ball vertices.
    pub images: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct ProfileCurve {
    pub kind: NormKind,
    pub lambdas: Vec<f64>,
    pub values: Vec<f64>,
    pub min_lambda: f64,
    pub min_value: f64,
    pub base: f64,
    pub orthogonal: bool,
}

fn planar(name: &str) -> Result<PolyhedralSpace, String> {
    if !PLANAR_SPACES.contains(&name) {
        return Err(format!("unknown planar space `{name}`"));
    }
    PolyhedralSpace::builtin(name).map_err(|e| e.to_string())
}

fn matrix(entries: &[f64]) -> Result<DMatrix<f64>, String> {
    if entries.len() != 4 || entries.iter().any(|x| !x.is_finite()) {
        return Err("expected four finite matrix entries".into());
    }
    Ok(DMatrix::from_row_slice(2, 2, entries))
}

fn point(v: &nalgebra::DVector<f64>) -> [f64; 2] {
    [v[0], v[1]]
}

pub fn geometry(name: &str) -> Result<Geometry, String> {
    let space = planar(name)?;
    Ok(Geometry {
        name: name.to_string(),
        vertices: space.vertices().iter().map(point).collect(),
        facets: space.facets().iter().map(point).collect(),
    })
}

pub fn analysis(name: &str, entries: &[f64]) -> Result<Analysis, String> {
    let space = planar(name)?;
    let t = Operator::new(&space, matrix(entries)?).map_err(|e| e.to_string())?;
    let op = t.operator_norm();
    let w = t.numerical_radius();
    let (operator_smooth, nu_smooth) = match classify(&t) {
        Ok(r) => (r.operator_smooth, r.nu_smooth),
        Err(_) => (false, false),
    };
    Ok(Analysis {
        op_norm: op.value,
        w_norm: w.value,
        operator_smooth,
        nu_smooth,
        attaining_vertices: op.witnesses.iter().map(|v| v.vertex).collect(),
        witnesses: w
            .witnesses
            .iter()
            .map(|p| Witness {
                vertex: p.vertex,
                facet: p.facet,
                signed_value: p.signed_value,
            })
            .collect(),
        images: space.vertices().iter().map(|v| point(&t.apply(v))).collect(),
    })
}

pub fn profile_curve(
    name: &str,
    t_entries: &[f64],
    a_entries: &[f64],
    kind: NormKind,
    half_width: f64,
    steps: usize,
) -> Result<ProfileCurve, String> {
    let space = planar(name)?;
    let t = Operator::new(&space, matrix(t_entries)?).map_err(|e| e.to_string())?;
    let a = Operator::new(&space, matrix(a_entries)?).map_err(|e| e.to_string())?;
    let exact = lambda_profile_min(&t, &a, kind).map_err(|e| e.to_string())?;
    let curve = LambdaProfile::new(&t, &a, kind).map_err(|e| e.to_string())?;
    let steps = steps.clamp(2, 4000);
    let lambdas: Vec<f64> = (0..=steps)
        .map(|k| exact.lambda - half_width + 2.0 * half_width * k as f64 / steps as f64)
        .collect();
    let values = lambdas.iter().map(|&l| curve.value(l)).collect();
    let base = match kind {
        NormKind::W => t.numerical_radius().value,
        NormKind::Operator => t.operator_norm().value,
    };
    let orthogonal = match kind {
        NormKind::W => is_w_orthogonal(&t, &a).map_err(|e| e.to_string())?.orthogonal,
        NormKind::Operator => exact.value >= base - space.tolerance(),
    };
    Ok(ProfileCurve {
        kind,
        lambdas,
        values,
        min_lambda: exact.lambda,
        min_value: exact.value,
        base,
        orthogonal,
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let value = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = spaceGeometry)]
pub fn space_geometry(name: &str) -> Result<String, JsError> {
    to_js(geometry(name))
}

#[wasm_bindgen(js_name = analyzeOperator)]
pub fn analyze_operator(name: &str, entries: &[f64]) -> Result<String, JsError> {
    to_js(analysis(name, entries))
}

#[wasm_bindgen(js_name = lambdaProfile)]
pub fn lambda_profile(
    name: &str,
    t_entries: &[f64],
    a_entries: &[f64],
    kind: &str,
    half_width: f64,
    steps: usize,
) -> Result<String, JsError> {
    let kind: NormKind = kind.parse().map_err(|e: nuradius_core::Error| JsError::new(&e.to_string()))?;
    to_js(profile_curve(name, t_entries, a_entries, kind, half_width, steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEX_T: [f64; 4] = [0.0, 0.0, 0.8660254037844386, 0.0];

    #[test]
    fn hexagon_geometry() {
        let g = geometry("hexagon").unwrap();
        assert_eq!(g.vertices.len(), 6);
        assert_eq!(g.facets.len(), 6);
        assert!(geometry("hexagonal-prism").is_err());
    }

    #[test]
    fn hexagon_operator_analysis() {
        let a = analysis("hexagon", &HEX_T).unwrap();
        assert!((a.w_norm - 0.5).abs() < 1e-12);
        assert!((a.op_norm - 1.0).abs() < 1e-12);
        assert!(a.operator_smooth && !a.nu_smooth);
        assert_eq!(a.witnesses.len(), 8);
        assert_eq!(a.images.len(), 6);
    }

    #[test]
    fn zero_operator_is_reported_not_smooth() {
        let a = analysis("linf-2", &[0.0; 4]).unwrap();
        assert_eq!(a.w_norm, 0.0);
        assert!(!a.operator_smooth && !a.nu_smooth);
    }

    #[test]
    fn profile_matches_orthogonality() {
        let h = 0.8660254037844386;
        let c = profile_curve("hexagon", &HEX_T, &[0.5, 0.0, h, 0.0], NormKind::W, 2.0, 100).unwrap();
        assert!(c.orthogonal);
        assert_eq!(c.lambdas.len(), 101);
        assert!(c.values.iter().all(|v| *v >= c.min_value - 1e-12));
        assert!(c.min_value >= c.base - 1e-9);

        let c = profile_curve("hexagon", &HEX_T, &HEX_T, NormKind::W, 2.0, 10).unwrap();
        assert!(!c.orthogonal);
        assert!(c.min_value.abs() < 1e-12);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(analysis("hexagon", &[1.0, 2.0]).is_err());
        assert!(analysis("hexagon", &[f64::NAN, 0.0, 0.0, 0.0]).is_err());
        assert!(profile_curve("hexagon", &HEX_T, &[0.0; 4], NormKind::W, 1.0, 10).is_err());
    }
}
