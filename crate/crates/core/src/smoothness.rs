//! Smoothness of an operator in the operator norm and in the numerical radius
//! norm (nu-smoothness).
//!
//! In finite dimension over the reals:
//!
//! * `T` is smooth in the operator norm iff it attains its norm at a unique
//!   `±x0` and `T x0` is a smooth point;
//! * `T` is nu-smooth iff its numerical radius is attained at a single
//!   `±(x0, x0*)` dual pair.
//!
//! Both are decided on extreme witnesses. Two attaining extreme points in a
//! common face would make the whole segment between them attain, and no face
//! of the ball holds antipodal points, so a single `±` class of extreme
//! witnesses is exactly uniqueness. [`nu_smooth_by_definition`] probes
//! right-additivity directly as an independent check.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{Operator, PairWitness};
use crate::orthogonality::is_w_orthogonal;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorSmoothEvidence {
    /// Attaining vertex indices, grouped by `±`.
    pub attaining_classes: Vec<Vec<usize>>,
    /// Whether `T x0` is a smooth point; `None` unless attainment is unique.
    pub image_smooth: Option<bool>,
    pub runner_up: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuSmoothEvidence {
    /// Attaining `(vertex, facet)` pairs, grouped by `±`.
    pub witness_classes: Vec<Vec<(usize, usize)>>,
    pub runner_up: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub operator_smooth: bool,
    pub nu_smooth: bool,
    pub op_value: f64,
    pub w_value: f64,
    pub operator_evidence: OperatorSmoothEvidence,
    pub nu_evidence: NuSmoothEvidence,
}

pub fn is_nu_smooth(t: &Operator<'_>) -> Result<bool> {
    Ok(nu_evidence(t)?.1.witness_classes.len() == 1)
}

pub fn is_operator_smooth(t: &Operator<'_>) -> Result<bool> {
    let (_, evidence) = operator_evidence(t)?;
    Ok(evidence.image_smooth == Some(true))
}

pub fn classify(t: &Operator<'_>) -> Result<SmoothnessReport> {
    let (op_value, operator_evidence) = operator_evidence(t)?;
    let (w_value, nu_evidence) = nu_evidence(t)?;
    Ok(SmoothnessReport {
        operator_smooth: operator_evidence.image_smooth == Some(true),
        nu_smooth: nu_evidence.witness_classes.len() == 1,
        op_value,
        w_value,
        operator_evidence,
        nu_evidence,
    })
}

fn operator_evidence(t: &Operator<'_>) -> Result<(f64, OperatorSmoothEvidence)> {
    let report = t.operator_norm();
    if report.value <= t.space().tolerance() {
        return Err(Error::ZeroOperator);
    }
    let attaining_classes: Vec<Vec<usize>> = report
        .sign_classes
        .iter()
        .map(|c| c.iter().map(|&k| report.witnesses[k].vertex).collect())
        .collect();
    let image_smooth = match attaining_classes.as_slice() {
        [single] => {
            let x0 = &t.space().vertices()[single[0]];
            Some(t.space().is_smooth_point(&t.apply(x0))?)
        }
        _ => None,
    };
    Ok((
        report.value,
        OperatorSmoothEvidence {
            attaining_classes,
            image_smooth,
            runner_up: report.runner_up,
        },
    ))
}

fn nu_evidence(t: &Operator<'_>) -> Result<(f64, NuSmoothEvidence)> {
    let report = t.numerical_radius();
    if report.value <= t.space().tolerance() {
        return Err(Error::ZeroOperator);
    }
    let witness_classes = report
        .sign_classes
        .iter()
        .map(|c| {
            c.iter()
                .map(|&k| (report.witnesses[k].vertex, report.witnesses[k].facet))
                .collect()
        })
        .collect();
    Ok((
        report.value,
        NuSmoothEvidence {
            witness_classes,
            runner_up: report.runner_up,
        },
    ))
}

/// Randomized right-additivity probe.
///
/// Each trial draws `A` and `B` orthogonal to `T` by removing from random
/// operators their component along a witness functional
/// `φ(B) = sgn(f(Tv))·f(Bv)` of `T` (two independently chosen witnesses), then
/// checks `T ⊥_w (A + B)`. `false` is conclusive; `true` only means no
/// violation was found.
pub fn nu_smooth_by_definition(t: &Operator<'_>, trials: usize, seed: u64) -> Result<bool> {
    let report = t.numerical_radius();
    if report.value <= t.space().tolerance() {
        return Err(Error::ZeroOperator);
    }
    let classes: Vec<_> = report.representatives().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..trials {
        let a = draw_orthogonal(t, &classes, &mut rng)?;
        let b = draw_orthogonal(t, &classes, &mut rng)?;
        if !(is_w_orthogonal(t, &a)?.orthogonal && is_w_orthogonal(t, &b)?.orthogonal) {
            continue;
        }
        if !is_w_orthogonal(t, &a.add(&b)?)?.orthogonal {
            return Ok(false);
        }
    }
    Ok(true)
}

fn draw_orthogonal<'a>(
    t: &Operator<'a>,
    classes: &[PairWitness],
    rng: &mut ChaCha8Rng,
) -> Result<Operator<'a>> {
    let n = t.space().dim();
    let w = classes[rng.random_range(0..classes.len())];
    let r = Operator::new(
        t.space(),
        DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0)),
    )?;
    // φ(R - cT) = 0 with φ(T) = |f(Tv)|
    let c = r.pair_value(w.pair()) / w.signed_value;
    r.add_scaled(t, -c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hexagon, hexagon_operator_matrix, hexagonal_prism, prism_operator_matrix};
    use crate::space::PolyhedralSpace;

    #[test]
    fn prism_operator_is_nu_smooth_only() {
        let prism = hexagonal_prism();
        let t = Operator::new(&prism, prism_operator_matrix()).unwrap();
        assert!(is_nu_smooth(&t).unwrap());
        assert!(!is_operator_smooth(&t).unwrap());
        let r = classify(&t).unwrap();
        assert_eq!((r.operator_smooth, r.nu_smooth), (false, true));
        assert_eq!(r.operator_evidence.attaining_classes, vec![vec![4, 10]]);
        assert_eq!(r.operator_evidence.image_smooth, Some(false));
        assert_eq!(r.nu_evidence.witness_classes, vec![vec![(4, 2), (10, 6)]]);
    }

    #[test]
    fn hexagon_operator_is_smooth_only() {
        let hex = hexagon();
        let t = Operator::new(&hex, hexagon_operator_matrix()).unwrap();
        let r = classify(&t).unwrap();
        assert_eq!((r.operator_smooth, r.nu_smooth), (true, false));
        assert!((r.w_value - 0.5).abs() < 1e-12);
        assert!((r.op_value - 1.0).abs() < 1e-12);
        assert_eq!(r.operator_evidence.attaining_classes, vec![vec![0, 3]]);
        assert_eq!(r.nu_evidence.witness_classes.len(), 4);
    }

    #[test]
    fn identity_is_neither() {
        for space in [hexagon(), PolyhedralSpace::linf(2).unwrap()] {
            let id = Operator::identity(&space);
            let r = classify(&id).unwrap();
            assert!(!r.operator_smooth && !r.nu_smooth);
            assert!((r.op_value - 1.0).abs() < 1e-12 && (r.w_value - 1.0).abs() < 1e-12);
            assert_eq!(r.operator_evidence.image_smooth, None);
        }
    }

    #[test]
    fn zero_operator_errors() {
        let hex = hexagon();
        let z = Operator::zero(&hex);
        assert_eq!(is_nu_smooth(&z), Err(Error::ZeroOperator));
        assert_eq!(is_operator_smooth(&z), Err(Error::ZeroOperator));
        assert_eq!(classify(&z), Err(Error::ZeroOperator));
        assert_eq!(nu_smooth_by_definition(&z, 10, 0), Err(Error::ZeroOperator));
    }

    #[test]
    fn definitional_probe() {
        let hex = hexagon();
        let t = Operator::new(&hex, hexagon_operator_matrix()).unwrap();
        assert!(!nu_smooth_by_definition(&t, 200, 7).unwrap());

        let prism = hexagonal_prism();
        let t = Operator::new(&prism, prism_operator_matrix()).unwrap();
        assert!(nu_smooth_by_definition(&t, 200, 7).unwrap());

        let sq = PolyhedralSpace::linf(2).unwrap();
        assert!(!nu_smooth_by_definition(&Operator::identity(&sq), 200, 7).unwrap());
    }
}
