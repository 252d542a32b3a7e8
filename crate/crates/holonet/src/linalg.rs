//! Dense complex matrix helpers shared by the cocycle machinery.
//!
//! Everything is `DMatrix<Complex<f64>>` at desk scale. Deviations are
//! measured in operator norm (largest singular value); spans of matrices use
//! the Hilbert-Schmidt inner product `tr(A* B)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::Rng;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ONE: C64 = Complex::new(1.0, 0.0);
pub const ZERO: C64 = Complex::new(0.0, 0.0);

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

/// Operator norm: the largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |acc, s| acc.max(*s))
}

/// Operator-norm distance between two matrices.
pub fn op_dist(a: &CMat, b: &CMat) -> f64 {
    op_norm(&(a - b))
}

/// Deviation of `u` from being unitary, `‖u u* − 1‖`.
pub fn unitarity_error(u: &CMat) -> f64 {
    op_norm(&(u * u.adjoint() - identity(u.nrows())))
}

pub fn is_unitary(u: &CMat, tol: f64) -> bool {
    u.is_square() && unitarity_error(u) <= tol
}

/// Hilbert-Schmidt inner product `tr(a* b)`.
pub fn hs_inner(a: &CMat, b: &CMat) -> C64 {
    (a.adjoint() * b).trace()
}

pub fn hs_norm(a: &CMat) -> f64 {
    hs_inner(a, a).re.max(0.0).sqrt()
}

/// One standard-normal draw (Box-Muller; `rand`'s distribution machinery is
/// deliberately unused so that explicit seeds are the only entropy source).
fn normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_complex_matrix(d: usize, rng: &mut impl Rng) -> CMat {
    CMat::from_fn(d, d, |_, _| C64::new(normal(rng), normal(rng)))
}

pub fn random_complex_scalar(rng: &mut impl Rng) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Random unitary: Q factor of a Gaussian matrix.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> CMat {
    random_complex_matrix(d, rng).qr().q()
}

/// Unitary factor of the polar decomposition `x = u p`.
pub fn polar_unitary(x: &CMat) -> CMat {
    let svd = x.clone().svd(true, true);
    svd.u.unwrap() * svd.v_t.unwrap()
}

/// Hilbert-Schmidt orthonormalization, dropping directions below `pivot_tol`.
pub fn gram_schmidt(mats: &[CMat], pivot_tol: f64) -> Vec<CMat> {
    let mut basis: Vec<CMat> = Vec::new();
    for m in mats {
        let mut v = m.clone();
        // two passes for numerical stability
        for _ in 0..2 {
            for b in &basis {
                let c = hs_inner(b, &v);
                v -= b * c;
            }
        }
        let n = hs_norm(&v);
        if n > pivot_tol {
            v /= C64::new(n, 0.0);
            basis.push(v);
        }
    }
    basis
}

/// Residual of the least-squares projection of `x` onto the span of an
/// HS-orthonormal `basis`.
pub fn projection_residual(x: &CMat, basis: &[CMat]) -> f64 {
    let mut r = x.clone();
    for b in basis {
        let c = hs_inner(b, &r);
        r -= b * c;
    }
    hs_norm(&r)
}

/// Matrix of the map `t ↦ t a − b t` on column-major vectorized `t`, where
/// `t` is `b.nrows() × a.nrows()`.
pub fn sylvester_op(a: &CMat, b: &CMat) -> CMat {
    let da = a.nrows();
    let db = b.nrows();
    a.transpose().kronecker(&identity(db)) - identity(da).kronecker(b)
}

/// Orthonormal basis of the kernel of `k` (columns of dimension `k.ncols()`),
/// at relative tolerance `tol` on singular values. A constraint matrix with
/// zero rows has the full space as kernel.
pub fn kernel_basis(k: &CMat, tol: f64) -> Vec<CVec> {
    let n = k.ncols();
    if k.nrows() == 0 {
        return (0..n)
            .map(|i| CVec::from_fn(n, |r, _| if r == i { ONE } else { ZERO }))
            .collect();
    }
    let h = k.adjoint() * k;
    let eig = nalgebra::SymmetricEigen::new(h);
    let lam_max = eig.eigenvalues.iter().fold(0.0_f64, |a, l| a.max(*l));
    let cut = tol * tol * lam_max.max(1.0);
    let mut out = Vec::new();
    for (i, lam) in eig.eigenvalues.iter().enumerate() {
        if *lam <= cut {
            out.push(eig.eigenvectors.column(i).into_owned());
        }
    }
    out
}

/// Reshape a column-major vector into a `rows × cols` matrix.
pub fn unvec(v: &CVec, rows: usize, cols: usize) -> CMat {
    CMat::from_column_slice(rows, cols, v.as_slice())
}

pub fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut m = CMat::zeros(ra + rb, ca + cb);
    m.view_mut((0, 0), (ra, ca)).copy_from(a);
    m.view_mut((ra, ca), (rb, cb)).copy_from(b);
    m
}

/// `x ⊗ 1_k`: the block matrix with `(i,j)` block `x[i,j]·1_k`.
pub fn amplify(x: &CMat, k: usize) -> CMat {
    x.kronecker(&identity(k))
}

pub fn conjugate_entrywise(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

// ------------------------------------------------------------------ json

/// Row-major nested array of `[re, im]` pairs.
pub fn mat_to_value(m: &CMat) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| serde_json::json!([m[(i, j)].re, m[(i, j)].im]))
                .collect()
        })
        .collect();
    serde_json::Value::Array(rows)
}

pub fn mat_from_value(v: &serde_json::Value) -> crate::Result<CMat> {
    let bad = crate::Error::bad;
    let rows = v.as_array().ok_or_else(|| bad("matrix: expected array of rows"))?;
    if rows.is_empty() {
        return Err(bad("matrix: no rows"));
    }
    let mut data: Vec<Vec<C64>> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("matrix: expected row array"))?;
        let mut out = Vec::with_capacity(row.len());
        for entry in row {
            let pair = entry.as_array().ok_or_else(|| bad("matrix: expected [re, im]"))?;
            if pair.len() != 2 {
                return Err(bad("matrix: entry is not a [re, im] pair"));
            }
            let re = pair[0].as_f64().ok_or_else(|| bad("matrix: non-numeric entry"))?;
            let im = pair[1].as_f64().ok_or_else(|| bad("matrix: non-numeric entry"))?;
            out.push(C64::new(re, im));
        }
        if out.len() != rows[0].as_array().unwrap().len() {
            return Err(bad("matrix: ragged rows"));
        }
        data.push(out);
    }
    let (r, c) = (data.len(), data[0].len());
    Ok(CMat::from_fn(r, c, |i, j| data[i][j]))
}

/// Round to 1e-12 (and normalize -0.0) for byte-stable comparisons.
pub fn canonical_round(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Apply [`canonical_round`] to every number in a JSON value.
pub fn canonicalize_value(v: &serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_i64() || n.is_u64() {
                    v.clone()
                } else {
                    serde_json::json!(canonical_round(f))
                }
            } else {
                v.clone()
            }
        }
        Value::Array(items) => Value::Array(items.iter().map(canonicalize_value).collect()),
        Value::Object(map) => Value::Object(
            map.iter()
                .map(|(k, val)| (k.clone(), canonicalize_value(val)))
                .collect(),
        ),
        _ => v.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 1..5 {
            let u = random_unitary(d, &mut rng);
            assert!(unitarity_error(&u) < 1e-12);
        }
    }

    #[test]
    fn op_norm_of_scaled_identity() {
        let m = identity(3) * C64::new(0.0, -2.5);
        assert!((op_norm(&m) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn kernel_of_commutation_with_diagonal() {
        // commutant of diag(1,-1) inside M_2 is the diagonal algebra
        let z = CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
        let k = sylvester_op(&z, &z);
        let basis = kernel_basis(&k, 1e-9);
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn kernel_with_no_constraints_is_everything() {
        let k = CMat::zeros(0, 4);
        assert_eq!(kernel_basis(&k, 1e-9).len(), 4);
    }

    #[test]
    fn polar_of_invertible_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_complex_matrix(4, &mut rng);
        let u = polar_unitary(&x);
        assert!(unitarity_error(&u) < 1e-10);
    }

    #[test]
    fn gram_schmidt_detects_dependence() {
        let a = identity(2);
        let b = identity(2) * C64::new(3.0, 1.0);
        let x = CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let basis = gram_schmidt(&[a, b, x.clone()], 1e-9);
        assert_eq!(basis.len(), 2);
        assert!(projection_residual(&x, &basis) < 1e-12);
    }

    #[test]
    fn matrix_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_complex_matrix(3, &mut rng);
        let back = mat_from_value(&mat_to_value(&m)).unwrap();
        assert!(op_dist(&m, &back) == 0.0);
    }

    #[test]
    fn canonical_rounding_strips_noise() {
        assert_eq!(canonical_round(1.0 + 3e-14), 1.0);
        assert_eq!(canonical_round(-0.0), 0.0);
    }
}
