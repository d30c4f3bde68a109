//! Support functionals and numerical-radius queries on `ℓ_pⁿ`, `1 ≤ p < ∞`,
//! `p ≠ 2`.
//!
//! The support functional of a unit vector `x` has coefficients
//! `sgn(x_k)|x_k|^(p-1)` (`sgn(x_k)` when `p = 1`). Evaluating `x*(Tx)` on
//! basis vectors and on normalized two-coordinate combinations determines
//! every entry of `T`, which is what [`recover_entries`] does.

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const UNIT_TOLERANCE: f64 = 1e-9;
const MAX_SWEEPS: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpSpace {
    dim: usize,
    p: f64,
}

impl LpSpace {
    pub fn new(dim: usize, p: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        if (p - 2.0).abs() <= UNIT_TOLERANCE {
            return Err(Error::DegenerateRecovery);
        }
        Ok(Self { dim, p })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Hölder conjugate; `∞` for `p = 1`.
    pub fn conjugate(&self) -> f64 {
        if self.p == 1.0 {
            f64::INFINITY
        } else {
            self.p / (self.p - 1.0)
        }
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        p_norm(x, self.p)
    }

    /// Norm of a functional: the `q`-norm of its coefficients.
    pub fn dual_norm(&self, f: &DVector<f64>) -> f64 {
        p_norm(f, self.conjugate())
    }

    /// Scales `x` onto the unit sphere.
    pub fn normalize(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let n = self.norm(x);
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(x / n)
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
}

fn p_norm(x: &DVector<f64>, p: f64) -> f64 {
    if p.is_infinite() {
        x.amax()
    } else if p == 1.0 {
        x.iter().map(|c| c.abs()).sum()
    } else {
        x.iter().map(|c| c.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// `sgn` with `sgn(0) = +1`.
fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn functional_unchecked(space: &LpSpace, x: &DVector<f64>) -> DVector<f64> {
    let p = space.p;
    if p == 1.0 {
        x.map(sign)
    } else {
        x.map(|c| sign(c) * c.abs().powf(p - 1.0))
    }
}

/// Coefficients of the support functional `x*` at a unit vector `x`.
pub fn lp_support_functional(space: &LpSpace, x: &DVector<f64>) -> Result<DVector<f64>> {
    space.check_dim(x)?;
    let norm = space.norm(x);
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::NotUnitVector { norm });
    }
    Ok(functional_unchecked(space, x))
}

/// `x*(Tx)` for a unit vector `x`.
pub fn pairing_value(space: &LpSpace, t: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    functional_unchecked(space, x).dot(&(t * x))
}

/// Recovers a hidden operator from numerical-range evaluations.
///
/// For `p > 1`: `a_jj = e_j*(T e_j)`, and for each `r < s` the unit vectors
/// along `α e_r + β e_s` at `(α, β) = (1, 1)` and `(2, 1)` give
/// `‖·‖^p x*(Tx) = α^(p-1)(α a_rr + β a_rs) + β^(p-1)(α a_sr + β a_ss)`,
/// a 2×2 system in `(a_rs, a_sr)` with determinant `2 - 2^(p-1)`.
///
/// For `p = 1` the support functional is not unique at vectors with a zero
/// coordinate, so only probes with every coordinate nonzero are used. Inside
/// the orthant of a sign pattern `σ` the functional is `σ` itself and
/// `‖x‖₁ x*(Tx) = σᵀ T x` is linear in `x`; `n` points per orthant give the
/// row combination `σᵀ T`, and `n` independent patterns give `T`.
pub fn recover_entries<F>(space: &LpSpace, mut evaluate: F) -> Result<DMatrix<f64>>
where
    F: FnMut(&DVector<f64>) -> f64,
{
    let n = space.dim;
    let p = space.p;
    if (p - 2.0).abs() <= UNIT_TOLERANCE {
        return Err(Error::DegenerateRecovery);
    }
    let mut query = |x: &DVector<f64>| -> Result<f64> {
        let value = evaluate(x);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::InconsistentOracle(format!("non-finite evaluation {value}")))
        }
    };

    let t = if p == 1.0 {
        recover_l1(space, &mut query)?
    } else {
        recover_pairwise(space, &mut query)?
    };

    // An extra probe off every coordinate hyperplane must agree.
    let check = DVector::from_fn(n, |k, _| if k % 2 == 0 { (k + 1) as f64 } else { -((k + 1) as f64) });
    let x = space.normalize(&check)?;
    let observed = query(&x)?;
    let predicted = pairing_value(space, &t, &x);
    let scale = t.amax().max(1.0);
    if (observed - predicted).abs() > 1e-6 * scale {
        return Err(Error::InconsistentOracle(format!(
            "check probe gave {observed}, recovered operator predicts {predicted}"
        )));
    }
    Ok(t)
}

fn recover_pairwise<Q>(space: &LpSpace, query: &mut Q) -> Result<DMatrix<f64>>
where
    Q: FnMut(&DVector<f64>) -> Result<f64>,
{
    let n = space.dim;
    let p = space.p;
    let mut t = DMatrix::zeros(n, n);
    for j in 0..n {
        t[(j, j)] = query(&basis_combination(n, j, j, 1.0, 0.0))?;
    }

    let probes: [(f64, f64); 2] = [(1.0, 1.0), (2.0, 1.0)];
    let mut system = Matrix2::zeros();
    for (row, &(alpha, beta)) in probes.iter().enumerate() {
        system[(row, 0)] = alpha.powf(p - 1.0) * beta;
        system[(row, 1)] = beta.powf(p - 1.0) * alpha;
    }
    let det = system.determinant();
    if det.abs() <= 1e-12 {
        return Err(Error::InconsistentOracle(format!(
            "recovery system is singular (det = {det:e})"
        )));
    }
    let inverse = system
        .try_inverse()
        .ok_or_else(|| Error::InconsistentOracle("recovery system is singular".into()))?;

    for r in 0..n {
        for s in r + 1..n {
            let mut rhs = Vector2::zeros();
            for (row, &(alpha, beta)) in probes.iter().enumerate() {
                let scale = alpha.powf(p) + beta.powf(p);
                let e = query(&space.normalize(&basis_combination(n, r, s, alpha, beta))?)?;
                let known = alpha.powf(p) * t[(r, r)] + beta.powf(p) * t[(s, s)];
                rhs[row] = scale * e - known;
            }
            let solution = inverse * rhs;
            t[(r, s)] = solution[0];
            t[(s, r)] = solution[1];
        }
    }
    Ok(t)
}

fn recover_l1<Q>(space: &LpSpace, query: &mut Q) -> Result<DMatrix<f64>>
where
    Q: FnMut(&DVector<f64>) -> Result<f64>,
{
    let n = space.dim;
    // patterns: all ones, then all ones with coordinate k flipped (k < n - 1)
    let patterns = DMatrix::from_fn(n, n, |i, k| if i > 0 && k == i - 1 { -1.0 } else { 1.0 });
    // magnitudes 1 + e_i
    let magnitudes = DMatrix::from_fn(n, n, |i, k| if k == i { 2.0 } else { 1.0 });
    let magnitude_inverse = magnitudes
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InconsistentOracle("probe magnitudes are singular".into()))?;

    // rows[σ] = σᵀ T
    let mut rows = DMatrix::zeros(n, n);
    for (si, sigma) in patterns.row_iter().enumerate() {
        let mut rhs = DVector::zeros(n);
        for (i, m) in magnitudes.row_iter().enumerate() {
            let x = DVector::from_fn(n, |k, _| sigma[k] * m[k]);
            let norm = space.norm(&x);
            rhs[i] = norm * query(&(&x / norm))?;
        }
        // (σ ∘ m_i) · row = rhs_i, i.e. M diag(σ) row = rhs
        let scaled = &magnitude_inverse * rhs;
        for k in 0..n {
            rows[(si, k)] = scaled[k] * sigma[k];
        }
    }
    let pattern_inverse = patterns
        .try_inverse()
        .ok_or_else(|| Error::InconsistentOracle("sign patterns are singular".into()))?;
    Ok(pattern_inverse * rows)
}

fn basis_combination(n: usize, r: usize, s: usize, alpha: f64, beta: f64) -> DVector<f64> {
    let mut x = DVector::zeros(n);
    x[r] += alpha;
    x[s] += beta;
    x
}

/// Heuristic lower bound for `‖T‖_w` on `ℓ_pⁿ`.
///
/// Takes the best `|x*(Tx)|` over perturbed basis starts and `samples` random
/// unit vectors, refining the starts and every sample that sets a new raw
/// record by coordinate ascent. Every value is attained at an actual dual
/// pair, so the result never exceeds the supremum, and for a fixed seed it is
/// nondecreasing in `samples`.
pub fn lp_numerical_radius_estimate(
    space: &LpSpace,
    t: &DMatrix<f64>,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let n = space.dim;
    if t.nrows() != n || t.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.nrows().max(t.ncols()),
        });
    }
    let value = |x: &DVector<f64>| pairing_value(space, t, x).abs();
    let mut best = 0.0f64;

    let mut start_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0fba_5e5e);
    for j in 0..n {
        let exact = basis_combination(n, j, j, 1.0, 0.0);
        best = best.max(value(&exact));
        let mut x = exact.map(|c| c + 1e-3 * start_rng.random_range(-1.0..1.0));
        x = space.normalize(&x)?;
        best = best.max(refine(space, t, x));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut record = f64::NEG_INFINITY;
    for _ in 0..samples {
        let raw = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let Ok(x) = space.normalize(&raw) else { continue };
        let v = value(&x);
        best = best.max(v);
        if v > record {
            record = v;
            best = best.max(refine(space, t, x));
        }
    }
    Ok(best)
}

/// Coordinate ascent on `|x*(Tx)|` over the unit sphere: additive steps along
/// each coordinate with renormalization, plus single-coordinate sign flips.
fn refine(space: &LpSpace, t: &DMatrix<f64>, mut x: DVector<f64>) -> f64 {
    let n = space.dim;
    let value = |x: &DVector<f64>| pairing_value(space, t, x).abs();
    let mut current = value(&x);
    let mut step = 0.5;
    let mut sweeps = 0;
    while step > 1e-12 && sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut improved = false;
        for k in 0..n {
            let mut flipped = x.clone();
            flipped[k] = -flipped[k];
            for candidate in [Some(flipped), shifted(space, &x, k, step), shifted(space, &x, k, -step)]
                .into_iter()
                .flatten()
            {
                let v = value(&candidate);
                if v > current {
                    current = v;
                    x = candidate;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    current
}

fn shifted(space: &LpSpace, x: &DVector<f64>, k: usize, delta: f64) -> Option<DVector<f64>> {
    let mut y = x.clone();
    y[k] += delta;
    space.normalize(&y).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(c)
    }

    #[test]
    fn basis_vector_is_its_own_functional() {
        let s = LpSpace::new(3, 3.0).unwrap();
        assert_eq!(lp_support_functional(&s, &v(&[1.0, 0.0, 0.0])).unwrap(), v(&[1.0, 0.0, 0.0]));
    }

    #[test]
    fn l1_zero_coordinate_takes_plus_sign() {
        let s = LpSpace::new(3, 1.0).unwrap();
        let x = v(&[0.5, -0.5, 0.0]);
        let f = lp_support_functional(&s, &x).unwrap();
        assert_eq!(f, v(&[1.0, -1.0, 1.0]));
        assert_eq!(f.dot(&x), 1.0);
        assert_eq!(s.dual_norm(&f), 1.0);
    }

    #[test]
    fn holder_equality_p_one_and_a_half() {
        let s = LpSpace::new(2, 1.5).unwrap();
        let x = s.normalize(&v(&[0.3, -1.7])).unwrap();
        let f = lp_support_functional(&s, &x).unwrap();
        assert!((f.dot(&x) - 1.0).abs() < 1e-10);
        assert!((s.dual_norm(&f) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(LpSpace::new(2, 2.0), Err(Error::DegenerateRecovery));
        assert_eq!(LpSpace::new(2, 0.5), Err(Error::InvalidExponent(0.5)));
        assert!(LpSpace::new(2, f64::INFINITY).is_err());
        let s = LpSpace::new(2, 3.0).unwrap();
        assert!(matches!(lp_support_functional(&s, &v(&[1.0, 1.0])), Err(Error::NotUnitVector { .. })));
        assert!(matches!(lp_support_functional(&s, &v(&[1.0])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn matrix_unit_in_l1() {
        // hidden e_12 (a_12 = 1)
        let s = LpSpace::new(2, 1.0).unwrap();
        let hidden = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let got = recover_entries(&s, |x| pairing_value(&s, &hidden, x)).unwrap();
        assert!((&got - &hidden).amax() < 1e-14, "{got}");
    }

    #[test]
    fn zero_oracle_gives_zero() {
        for p in [1.0, 1.5, 3.0] {
            let s = LpSpace::new(3, p).unwrap();
            assert_eq!(recover_entries(&s, |_| 0.0).unwrap(), DMatrix::zeros(3, 3));
        }
    }

    #[test]
    fn inconsistent_oracle_is_rejected() {
        let s = LpSpace::new(2, 3.0).unwrap();
        // not of the form x*(Tx) for any linear T
        let err = recover_entries(&s, |x| x[0].abs().sqrt() + 0.3 * x[1].powi(4)).unwrap_err();
        assert!(matches!(err, Error::InconsistentOracle(_)));
        let err = recover_entries(&s, |_| f64::NAN).unwrap_err();
        assert!(matches!(err, Error::InconsistentOracle(_)));
        let near_two = LpSpace::new(2, 2.0 + 1e-14);
        assert_eq!(near_two, Err(Error::DegenerateRecovery));
    }

    #[test]
    fn estimate_identity_and_zero() {
        for p in [1.0, 1.5, 3.0] {
            let s = LpSpace::new(3, p).unwrap();
            let id = DMatrix::identity(3, 3);
            let e = lp_numerical_radius_estimate(&s, &id, 200, 1).unwrap();
            assert!((e - 1.0).abs() < 1e-12, "p = {p}: {e}");
            let z = DMatrix::zeros(3, 3);
            assert_eq!(lp_numerical_radius_estimate(&s, &z, 200, 1).unwrap(), 0.0);
        }
    }

    #[test]
    fn estimate_monotone_in_samples() {
        let s = LpSpace::new(3, 1.5).unwrap();
        let t = DMatrix::from_row_slice(3, 3, &[0.2, -1.0, 0.4, 0.9, 0.1, -0.3, 0.0, 0.7, -0.5]);
        let mut last = 0.0;
        for samples in [0, 1, 5, 50, 500] {
            let e = lp_numerical_radius_estimate(&s, &t, samples, 11).unwrap();
            assert!(e >= last);
            last = e;
        }
    }
}
