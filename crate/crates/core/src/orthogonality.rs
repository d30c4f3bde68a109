//! Birkhoff–James orthogonality of operators, in the operator norm and in the
//! numerical radius norm.
//!
//! `T ⊥ A` means `‖T + λA‖ ≥ ‖T‖` for every real `λ`. In the numerical radius
//! norm this holds iff `0 ∈ CO(D)` where `D` collects `f(Tv)·f(Av)` over the
//! attaining dual pairs of `T`. The products over extreme witnesses span the
//! subdifferential at `λ = 0` of the piecewise-linear profile
//! `λ ↦ max |f(Tv) + λ f(Av)|`, which is why extreme witnesses suffice. The
//! exact profile minimizer in this module gives an independent route to the
//! same decision.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{ExtremePair, Operator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    Operator,
    W,
}

impl std::str::FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "operator" | "op" => Ok(Self::Operator),
            "w" | "numerical-radius" => Ok(Self::W),
            _ => Err(Error::InvalidInput(format!("unknown norm kind `{s}`"))),
        }
    }
}

impl std::fmt::Display for NormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Operator => "operator",
            Self::W => "w",
        })
    }
}

/// The function `λ ↦ max_i |a_i + λ b_i|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaProfile {
    pieces: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileMin {
    pub lambda: f64,
    pub value: f64,
}

impl LambdaProfile {
    /// Pieces `(f(Tv), f(Av))`: over extreme dual pairs for [`NormKind::W`],
    /// over every vertex × facet combination for [`NormKind::Operator`].
    pub fn new(t: &Operator<'_>, a: &Operator<'_>, kind: NormKind) -> Result<Self> {
        t.check_same_space(a)?;
        let space = t.space();
        let tv = t.images();
        let av = a.images();
        let facets = space.facets();
        let pieces = match kind {
            NormKind::W => space
                .extreme_pairs()
                .iter()
                .map(|p| (facets[p.facet].dot(&tv[p.vertex]), facets[p.facet].dot(&av[p.vertex])))
                .collect(),
            NormKind::Operator => tv
                .iter()
                .zip(&av)
                .flat_map(|(x, y)| facets.iter().map(move |f| (f.dot(x), f.dot(y))))
                .collect(),
        };
        Ok(Self { pieces })
    }

    pub fn from_pieces(pieces: Vec<(f64, f64)>) -> Self {
        Self { pieces }
    }

    pub fn pieces(&self) -> &[(f64, f64)] {
        &self.pieces
    }

    pub fn value(&self, lambda: f64) -> f64 {
        self.pieces
            .iter()
            .map(|(a, b)| (a + lambda * b).abs())
            .fold(0.0, f64::max)
    }

    /// Exact global minimizer. Returns the smallest minimizing `λ`.
    ///
    /// The minimum of a coercive maximum of affine functions sits where two of
    /// them cross, so the candidates are `λ = 0` plus every crossing of
    /// `±(a_i + λ b_i)` with `±(a_j + λ b_j)`. Fails when every slope is zero.
    pub fn minimize(&self) -> Result<ProfileMin> {
        if self.pieces.iter().all(|&(_, b)| b == 0.0) {
            return Err(Error::ZeroDirection);
        }
        let pieces = self.distinct_pieces();
        let mut candidates = vec![0.0];
        for (i, &(ai, bi)) in pieces.iter().enumerate() {
            if bi != 0.0 {
                candidates.push(-ai / bi);
            }
            for &(aj, bj) in &pieces[i + 1..] {
                // a_i + λ b_i = a_j + λ b_j
                if bi != bj {
                    candidates.push((aj - ai) / (bi - bj));
                }
                // a_i + λ b_i = -(a_j + λ b_j)
                if bi != -bj {
                    candidates.push(-(ai + aj) / (bi + bj));
                }
            }
        }
        candidates.retain(|x| x.is_finite());
        candidates.sort_by(f64::total_cmp);
        candidates.dedup();

        let values: Vec<f64> = candidates.iter().map(|&l| self.value(l)).collect();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let slack = 1e-13 * min.max(1.0);
        let (lambda, value) = candidates
            .iter()
            .zip(&values)
            .find(|(_, &v)| v <= min + slack)
            .map(|(&l, &v)| (l, v))
            .expect("candidate list is nonempty");
        Ok(ProfileMin { lambda, value })
    }

    /// Drops pieces that duplicate another up to sign; `|a + λb|` is unchanged.
    fn distinct_pieces(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(self.pieces.len());
        for &(a, b) in &self.pieces {
            let (a, b) = if a < 0.0 || (a == 0.0 && b < 0.0) { (-a, -b) } else { (a, b) };
            if !out.iter().any(|&(x, y)| x == a && y == b) {
                out.push((a, b));
            }
        }
        out
    }
}

/// Exact minimum of `λ ↦ ‖T + λA‖` in the chosen norm.
pub fn lambda_profile_min(t: &Operator<'_>, a: &Operator<'_>, kind: NormKind) -> Result<ProfileMin> {
    t.check_same_space(a)?;
    if a.entries().iter().all(|c| *c == 0.0) {
        return Err(Error::ZeroDirection);
    }
    LambdaProfile::new(t, a, kind)?.minimize()
}

/// Convex weights over numerical-radius witnesses of `T` with
/// `Σ t_j f_j(Tv_j) f_j(Av_j) = 0`.
///
/// The induced functional `ρ(B) = (1/‖T‖_w) Σ t_j f_j(Tv_j) f_j(Bv_j)` has
/// norm one, `ρ(T) = ‖T‖_w` and `ρ(A) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityCertificate {
    pub pairs: Vec<ExtremePair>,
    pub weights: Vec<f64>,
    pub d_values: Vec<f64>,
    /// `f_j(T v_j)` at each pair.
    pub base_values: Vec<f64>,
    /// `‖T‖_w`.
    pub radius: f64,
}

impl OrthogonalityCertificate {
    /// `ρ(B)`.
    pub fn functional(&self, b: &Operator<'_>) -> f64 {
        self.pairs
            .iter()
            .zip(&self.weights)
            .zip(&self.base_values)
            .map(|((&p, &t), &s)| t * s * b.pair_value(p))
            .sum::<f64>()
            / self.radius
    }

    /// `Σ t_j d_j`.
    pub fn weighted_sum(&self) -> f64 {
        self.weights.iter().zip(&self.d_values).map(|(t, d)| t * d).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WOrthogonality {
    pub orthogonal: bool,
    pub certificate: Option<OrthogonalityCertificate>,
}

struct WitnessProduct {
    pair: ExtremePair,
    base: f64,
    d: f64,
}

fn witness_products(t: &Operator<'_>, a: &Operator<'_>) -> Result<(f64, Vec<WitnessProduct>)> {
    t.check_same_space(a)?;
    let report = t.numerical_radius();
    if report.value <= t.space().tolerance() {
        return Err(Error::ZeroOperator);
    }
    let products = report
        .witnesses
        .iter()
        .map(|w| {
            let pair = w.pair();
            WitnessProduct {
                pair,
                base: w.signed_value,
                d: w.signed_value * a.pair_value(pair),
            }
        })
        .collect();
    Ok((report.value, products))
}

/// `D = {f(Tv)·f(Av)}` over numerical-radius witnesses of `T`, sorted and
/// deduplicated within the space tolerance.
pub fn d_set(t: &Operator<'_>, a: &Operator<'_>) -> Result<Vec<f64>> {
    let eps = t.space().tolerance();
    let (_, products) = witness_products(t, a)?;
    let mut d: Vec<f64> = products.iter().map(|p| p.d).collect();
    d.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(d.len());
    for x in d {
        match out.last() {
            Some(&last) if (x - last).abs() <= eps => {}
            _ => out.push(x),
        }
    }
    Ok(out)
}

/// Decides `T ⊥_w A` by `0 ∈ CO(D)` and, when it holds, builds a certificate
/// from at most two witnesses.
pub fn is_w_orthogonal(t: &Operator<'_>, a: &Operator<'_>) -> Result<WOrthogonality> {
    let eps = t.space().tolerance();
    let (radius, products) = witness_products(t, a)?;
    let lo = products
        .iter()
        .min_by(|x, y| x.d.total_cmp(&y.d))
        .expect("a nonzero operator has witnesses");
    let hi = products
        .iter()
        .max_by(|x, y| x.d.total_cmp(&y.d))
        .expect("a nonzero operator has witnesses");
    if lo.d > eps || hi.d < -eps {
        return Ok(WOrthogonality {
            orthogonal: false,
            certificate: None,
        });
    }
    let certificate = if lo.d < 0.0 && hi.d > 0.0 {
        let span = hi.d - lo.d;
        OrthogonalityCertificate {
            pairs: vec![lo.pair, hi.pair],
            weights: vec![hi.d / span, -lo.d / span],
            d_values: vec![lo.d, hi.d],
            base_values: vec![lo.base, hi.base],
            radius,
        }
    } else {
        let nearest = products
            .iter()
            .min_by(|x, y| x.d.abs().total_cmp(&y.d.abs()))
            .expect("a nonzero operator has witnesses");
        OrthogonalityCertificate {
            pairs: vec![nearest.pair],
            weights: vec![1.0],
            d_values: vec![nearest.d],
            base_values: vec![nearest.base],
            radius,
        }
    };
    Ok(WOrthogonality {
        orthogonal: true,
        certificate: Some(certificate),
    })
}

/// Decides `T ⊥ A` in the operator norm by exact profile minimization.
pub fn is_operator_orthogonal(t: &Operator<'_>, a: &Operator<'_>) -> Result<bool> {
    t.check_same_space(a)?;
    let eps = t.space().tolerance();
    let norm = t.operator_norm().value;
    if norm <= eps {
        return Err(Error::ZeroOperator);
    }
    if a.entries().iter().all(|c| *c == 0.0) {
        return Ok(true);
    }
    Ok(lambda_profile_min(t, a, NormKind::Operator)?.value >= norm - eps)
}
