#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uclinalg::{DiagonalMatrix, Matrix, Scalar, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Scalar types the randomized suites run over.
pub trait RandomScalar: Scalar {
    const NAME: &'static str;
    /// Entry with real/imaginary parts uniform in [-1, 1].
    fn sample(rng: &mut impl Rng) -> Self;
    /// Unit-modulus value: ±1 for reals, a uniform phase for complex.
    fn unit(rng: &mut impl Rng) -> Self;
}

impl RandomScalar for f64 {
    const NAME: &'static str = "real";

    fn sample(rng: &mut impl Rng) -> Self {
        rng.gen_range(-1.0..1.0)
    }

    fn unit(rng: &mut impl Rng) -> Self {
        if rng.gen_bool(0.5) {
            1.0
        } else {
            -1.0
        }
    }
}

impl RandomScalar for C64 {
    const NAME: &'static str = "complex";

    fn sample(rng: &mut impl Rng) -> Self {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }

    fn unit(rng: &mut impl Rng) -> Self {
        C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
    }
}

pub fn random_matrix<T: RandomScalar>(rng: &mut impl Rng, m: usize, n: usize) -> Matrix<T> {
    let entries = (0..m * n).map(|_| T::sample(rng)).collect();
    Matrix::new(m, n, entries).unwrap()
}

/// Random `m x n` matrix of rank `r` built as `F · G`.
pub fn random_low_rank<T: RandomScalar>(
    rng: &mut impl Rng,
    m: usize,
    n: usize,
    r: usize,
) -> (Matrix<T>, Matrix<T>, Matrix<T>) {
    let f = random_matrix::<T>(rng, m, r);
    let g = random_matrix::<T>(rng, r, n);
    let a = &f * &g;
    (a, f, g)
}

/// Random shape with `2 <= m, n <= max` and rank in `1..min(m, n)`.
pub fn random_deficient_shape(rng: &mut impl Rng, max: usize) -> (usize, usize, usize) {
    let m = rng.gen_range(2..=max);
    let n = rng.gen_range(2..=max.clamp(2, 6));
    let r = rng.gen_range(1..m.min(n));
    (m, n, r)
}

/// Magnitude log-uniform in `[1e-3, 1e3]`.
pub fn log_uniform(rng: &mut impl Rng) -> f64 {
    10f64.powf(rng.gen_range(-3.0..3.0))
}

/// Nonsingular diagonal with random sign/phase and log-uniform magnitude.
pub fn random_diagonal<T: RandomScalar>(rng: &mut impl Rng, n: usize) -> DiagonalMatrix<T> {
    let entries = (0..n)
        .map(|_| T::unit(rng).scale(log_uniform(rng)))
        .collect();
    DiagonalMatrix::new(entries).unwrap()
}

pub fn random_positive_diagonal(rng: &mut impl Rng, n: usize) -> DiagonalMatrix<f64> {
    DiagonalMatrix::new((0..n).map(|_| log_uniform(rng)).collect()).unwrap()
}

pub fn random_unit_diagonal<T: RandomScalar>(rng: &mut impl Rng, n: usize) -> DiagonalMatrix<T> {
    DiagonalMatrix::new((0..n).map(|_| T::unit(rng)).collect()).unwrap()
}

/// Random orthonormal (unitary for complex) matrix from a QR factorization.
pub fn random_orthonormal<T: RandomScalar>(rng: &mut impl Rng, n: usize) -> Matrix<T> {
    let a = random_matrix::<T>(rng, n, n).into_nalgebra();
    Matrix::from_nalgebra(a.qr().q()).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Matrix<f64> {
    let mut idx: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        idx.swap(k, rng.gen_range(0..=k));
    }
    let mut p = DMatrix::zeros(n, n);
    for (i, &j) in idx.iter().enumerate() {
        p[(i, j)] = 1.0;
    }
    Matrix::from_nalgebra(p).unwrap()
}

/// Dense random matrix with roughly `zero_frac` structural zeros, patched so
/// that every row and column keeps at least one nonzero.
pub fn random_sparse_full_support<T: RandomScalar>(
    rng: &mut impl Rng,
    m: usize,
    n: usize,
    zero_frac: f64,
) -> Matrix<T> {
    let mut data = random_matrix::<T>(rng, m, n).into_nalgebra();
    for i in 0..m {
        for j in 0..n {
            if rng.gen_bool(zero_frac) {
                data[(i, j)] = T::zero();
            }
        }
    }
    for i in 0..m {
        if (0..n).all(|j| data[(i, j)].is_zero()) {
            let j = rng.gen_range(0..n);
            data[(i, j)] = T::sample(rng);
        }
    }
    for j in 0..n {
        if (0..m).all(|i| data[(i, j)].is_zero()) {
            let i = rng.gen_range(0..m);
            data[(i, j)] = T::sample(rng);
        }
    }
    Matrix::from_nalgebra(data).unwrap()
}

pub fn lift<T: Scalar>(d: &DiagonalMatrix<f64>) -> DiagonalMatrix<T> {
    d.cast()
}

/// `D · A · E` for diagonal `D`, `E`.
pub fn sandwich<T: Scalar>(
    d: &DiagonalMatrix<T>,
    a: &Matrix<T>,
    e: &DiagonalMatrix<T>,
) -> Matrix<T> {
    e.right_mul(&d.left_mul(a))
}

pub fn rel_err<T: Scalar>(got: &Matrix<T>, want: &Matrix<T>) -> f64 {
    let scale = want.frobenius_norm();
    let diff = (got - want).frobenius_norm();
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

pub fn max_abs_diff<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> f64 {
    (a - b)
        .as_nalgebra()
        .iter()
        .map(|x| x.modulus())
        .fold(0.0, f64::max)
}

/// Largest relative gap between two real multisets, compared sorted.
pub fn multiset_rel_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let scale = a
        .iter()
        .chain(&b)
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
        / scale
}

/// Largest gap between two complex multisets under the best one-to-one
/// matching (exhaustive for the small sizes used here, greedy otherwise),
/// relative to the largest modulus.
pub fn complex_multiset_rel_gap(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let scale = a
        .iter()
        .chain(b)
        .fold(0.0f64, |m, z| m.max(z.norm()))
        .max(f64::MIN_POSITIVE);
    let mut used = vec![false; b.len()];
    let mut a_sorted = a.to_vec();
    a_sorted.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let mut worst = 0.0f64;
    for z in &a_sorted {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, w)| (k, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(d);
    }
    worst / scale
}
