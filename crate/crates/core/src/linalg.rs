//! Small dense linear algebra over row-major `n × n` slices: LU solves,
//! Gram-Schmidt QR and real-matrix eigenvalues (balance, Hessenberg
//! reduction and the shifted double-step QR iteration).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve<T: Real>(a: &[T], b: &[T]) -> Result<Vec<T>> {
    let n = b.len();
    if a.len() != n * n {
        return Err(Error::Domain(format!("matrix has {} entries, expected {}", a.len(), n * n)));
    }
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let scale = m.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i * n + col].abs().partial_cmp(&m[j * n + col].abs()).unwrap())
            .unwrap();
        if m[pivot * n + col].abs() <= T::epsilon() * scale || !m[pivot * n + col].is_finite() {
            return Err(Error::Domain("singular matrix".into()));
        }
        if pivot != col {
            for j in 0..n {
                m.swap(pivot * n + j, col * n + j);
            }
            x.swap(pivot, col);
        }
        let d = m[col * n + col];
        for i in col + 1..n {
            let f = m[i * n + col] / d;
            if f == T::zero() {
                continue;
            }
            for j in col..n {
                m[i * n + j] = m[i * n + j] - f * m[col * n + j];
            }
            x[i] = x[i] - f * x[col];
        }
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s = s - m[i * n + j] * x[j];
        }
        x[i] = s / m[i * n + i];
    }
    Ok(x)
}

/// Thin QR of the `rows × cols` matrix whose columns are given, by modified
/// Gram-Schmidt with one reorthogonalisation pass. Returns the orthonormal
/// columns and the upper-triangular `cols × cols` factor (row-major) with a
/// non-negative diagonal.
pub fn gram_schmidt<T: Real>(columns: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<T>) {
    let m = columns.len();
    let mut q: Vec<Vec<T>> = columns.to_vec();
    let mut r = vec![T::zero(); m * m];
    for j in 0..m {
        for _pass in 0..2 {
            for i in 0..j {
                let dot: T = q[i].iter().zip(&q[j]).map(|(&a, &b)| a * b).sum();
                r[i * m + j] = r[i * m + j] + dot;
                let (head, tail) = q.split_at_mut(j);
                for (v, &u) in tail[0].iter_mut().zip(&head[i]) {
                    *v = *v - dot * u;
                }
            }
        }
        let norm = q[j].iter().map(|&v| v * v).sum::<T>().sqrt();
        r[j * m + j] = norm;
        if norm > T::zero() {
            for v in q[j].iter_mut() {
                *v = *v / norm;
            }
        }
    }
    (q, r)
}

/// Inverse of an upper-triangular `m × m` matrix (row-major).
pub fn upper_triangular_inverse<T: Real>(r: &[T], m: usize) -> Result<Vec<T>> {
    let mut inv = vec![T::zero(); m * m];
    for i in (0..m).rev() {
        let d = r[i * m + i];
        if d == T::zero() || !d.is_finite() {
            return Err(Error::Domain("triangular factor is singular".into()));
        }
        inv[i * m + i] = T::one() / d;
        for j in i + 1..m {
            let mut s = T::zero();
            for k in i + 1..=j {
                s = s + r[i * m + k] * inv[k * m + j];
            }
            inv[i * m + j] = -s / d;
        }
    }
    Ok(inv)
}

/// 1-based square matrix view used by the Hessenberg QR routines.
struct Mat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> Mat<T> {
    #[inline]
    fn get(&self, i: usize, j: usize) -> T {
        self.data[(i - 1) * self.n + (j - 1)]
    }
    #[inline]
    fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[(i - 1) * self.n + (j - 1)] = v;
    }
}

fn balance<T: Real>(a: &mut Mat<T>) {
    let radix = T::lit(2.0);
    let sqrdx = radix * radix;
    let n = a.n;
    loop {
        let mut done = true;
        for i in 1..=n {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 1..=n {
                if j != i {
                    c = c + a.get(j, i).abs();
                    r = r + a.get(i, j).abs();
                }
            }
            if c != T::zero() && r != T::zero() {
                let mut g = r / radix;
                let mut f = T::one();
                let s = c + r;
                while c < g {
                    f = f * radix;
                    c = c * sqrdx;
                }
                g = r * radix;
                while c > g {
                    f = f / radix;
                    c = c / sqrdx;
                }
                if (c + r) / f < T::lit(0.95) * s {
                    done = false;
                    let g = T::one() / f;
                    for j in 1..=n {
                        a.set(i, j, a.get(i, j) * g);
                        a.set(j, i, a.get(j, i) * f);
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

fn to_hessenberg<T: Real>(a: &mut Mat<T>) {
    let n = a.n;
    for m in 2..n {
        let mut x = T::zero();
        let mut i = m;
        for j in m..=n {
            if a.get(j, m - 1).abs() > x.abs() {
                x = a.get(j, m - 1);
                i = j;
            }
        }
        if i != m {
            for j in (m - 1)..=n {
                let t = a.get(i, j);
                a.set(i, j, a.get(m, j));
                a.set(m, j, t);
            }
            for j in 1..=n {
                let t = a.get(j, i);
                a.set(j, i, a.get(j, m));
                a.set(j, m, t);
            }
        }
        if x != T::zero() {
            for i in (m + 1)..=n {
                let mut y = a.get(i, m - 1);
                if y != T::zero() {
                    y = y / x;
                    a.set(i, m - 1, y);
                    for j in m..=n {
                        a.set(i, j, a.get(i, j) - y * a.get(m, j));
                    }
                    for j in 1..=n {
                        a.set(j, m, a.get(j, m) + y * a.get(j, i));
                    }
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i > j + 1 {
                a.set(i, j, T::zero());
            }
        }
    }
}

fn sign<T: Real>(a: T, b: T) -> T {
    if b >= T::zero() {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Shifted double-step QR on an upper Hessenberg matrix.
fn hessenberg_qr<T: Real>(a: &mut Mat<T>) -> Result<Vec<Complex<T>>> {
    let n = a.n as isize;
    let mut wr = vec![T::zero(); a.n + 1];
    let mut wi = vec![T::zero(); a.n + 1];
    let mut anorm = T::zero();
    for i in 1..=a.n {
        for j in (i.max(2) - 1)..=a.n {
            anorm = anorm + a.get(i, j).abs();
        }
    }
    let at = |a: &Mat<T>, i: isize, j: isize| a.get(i as usize, j as usize);
    let put = |a: &mut Mat<T>, i: isize, j: isize, v: T| a.set(i as usize, j as usize, v);
    let mut nn = n;
    let mut t = T::zero();
    let (mut p, mut q, mut r) = (T::zero(), T::zero(), T::zero());
    let (mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = at(a, l - 1, l - 1).abs() + at(a, l, l).abs();
                if s == T::zero() {
                    s = anorm;
                }
                if at(a, l, l - 1).abs() + s == s {
                    put(a, l, l - 1, T::zero());
                    break;
                }
                l -= 1;
            }
            x = at(a, nn, nn);
            if l == nn {
                wr[nn as usize] = x + t;
                wi[nn as usize] = T::zero();
                nn -= 1;
            } else {
                y = at(a, nn - 1, nn - 1);
                w = at(a, nn, nn - 1) * at(a, nn - 1, nn);
                if l == nn - 1 {
                    p = T::lit(0.5) * (y - x);
                    q = p * p + w;
                    z = q.abs().sqrt();
                    x = x + t;
                    let (i1, i2) = ((nn - 1) as usize, nn as usize);
                    if q >= T::zero() {
                        z = p + sign(z, p);
                        wr[i1] = x + z;
                        wr[i2] = x + z;
                        if z != T::zero() {
                            wr[i2] = x - w / z;
                        }
                        wi[i1] = T::zero();
                        wi[i2] = T::zero();
                    } else {
                        wr[i1] = x + p;
                        wr[i2] = x + p;
                        wi[i1] = -z;
                        wi[i2] = z;
                    }
                    nn -= 2;
                } else {
                    if its == 60 {
                        return Err(Error::NonConvergence("eigenvalue QR iteration".into()));
                    }
                    if its == 10 || its == 20 {
                        t = t + x;
                        for i in 1..=nn {
                            put(a, i, i, at(a, i, i) - x);
                        }
                        let s = at(a, nn, nn - 1).abs() + at(a, nn - 1, nn - 2).abs();
                        x = T::lit(0.75) * s;
                        y = x;
                        w = T::lit(-0.4375) * s * s;
                    }
                    its += 1;
                    let mut m = nn - 2;
                    while m >= l {
                        z = at(a, m, m);
                        r = x - z;
                        let s = y - z;
                        p = (r * s - w) / at(a, m + 1, m) + at(a, m, m + 1);
                        q = at(a, m + 1, m + 1) - z - r - s;
                        r = at(a, m + 2, m + 1);
                        let s = p.abs() + q.abs() + r.abs();
                        p = p / s;
                        q = q / s;
                        r = r / s;
                        if m == l {
                            break;
                        }
                        let u = at(a, m, m - 1).abs() * (q.abs() + r.abs());
                        let v = p.abs() * (at(a, m - 1, m - 1).abs() + z.abs() + at(a, m + 1, m + 1).abs());
                        if u + v == v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in (m + 2)..=nn {
                        put(a, i, i - 2, T::zero());
                        if i != m + 2 {
                            put(a, i, i - 3, T::zero());
                        }
                    }
                    let mut k = m;
                    while k < nn {
                        if k != m {
                            p = at(a, k, k - 1);
                            q = at(a, k + 1, k - 1);
                            r = T::zero();
                            if k != nn - 1 {
                                r = at(a, k + 2, k - 1);
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != T::zero() {
                                p = p / x;
                                q = q / x;
                                r = r / x;
                            }
                        }
                        let s = sign((p * p + q * q + r * r).sqrt(), p);
                        if s != T::zero() {
                            if k == m {
                                if l != m {
                                    put(a, k, k - 1, -at(a, k, k - 1));
                                }
                            } else {
                                put(a, k, k - 1, -s * x);
                            }
                            p = p + s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q = q / p;
                            r = r / p;
                            for j in k..=nn {
                                p = at(a, k, j) + q * at(a, k + 1, j);
                                if k != nn - 1 {
                                    p = p + r * at(a, k + 2, j);
                                    put(a, k + 2, j, at(a, k + 2, j) - p * z);
                                }
                                put(a, k + 1, j, at(a, k + 1, j) - p * y);
                                put(a, k, j, at(a, k, j) - p * x);
                            }
                            let mmin = if nn < k + 3 { nn } else { k + 3 };
                            for i in l..=mmin {
                                p = x * at(a, i, k) + y * at(a, i, k + 1);
                                if k != nn - 1 {
                                    p = p + z * at(a, i, k + 2);
                                    put(a, i, k + 2, at(a, i, k + 2) - p * r);
                                }
                                put(a, i, k + 1, at(a, i, k + 1) - p * q);
                                put(a, i, k, at(a, i, k) - p);
                            }
                        }
                        k += 1;
                    }
                }
            }
            if !(l < nn - 1) {
                break;
            }
        }
    }
    Ok((1..=a.n).map(|i| Complex::new(wr[i], wi[i])).collect())
}

/// Eigenvalues of a real `n × n` matrix, sorted by descending real part
/// (ties broken by descending imaginary part).
pub fn eigenvalues<T: Real>(matrix: &[T], n: usize) -> Result<Vec<Complex<T>>> {
    if matrix.len() != n * n {
        return Err(Error::Domain(format!("matrix has {} entries, expected {}", matrix.len(), n * n)));
    }
    if matrix.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = Mat { n, data: matrix.to_vec() };
    balance(&mut a);
    to_hessenberg(&mut a);
    let mut eig = hessenberg_qr(&mut a)?;
    sort_eigenvalues(&mut eig);
    Ok(eig)
}

pub(crate) fn sort_eigenvalues<T: Real>(eig: &mut [Complex<T>]) {
    eig.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.im.partial_cmp(&a.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_pivoting_system() {
        let a = [0.0, 2.0, 1.0, 1.0, 1.0, 1.0, 2.0, 1.0, 0.0];
        let x = solve(&a, &[5.0, 4.0, 4.0]).unwrap();
        for (got, want) in x.iter().zip([1.0f64, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(solve(&[1.0, 2.0, 2.0, 4.0], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn gram_schmidt_reconstructs() {
        let cols = vec![vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]];
        let (q, r) = gram_schmidt(&cols);
        for i in 0..3 {
            for j in 0..3 {
                let d: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        // column j of the input equals Σ_i q_i r_ij
        for j in 0..3 {
            for row in 0..3 {
                let v: f64 = (0..3).map(|i| q[i][row] * r[i * 3 + j]).sum();
                assert!((v - cols[j][row]).abs() < 1e-14);
            }
        }
        let inv = upper_triangular_inverse(&r, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| r[i * 3 + k] * inv[k * 3 + j]).sum();
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn eigenvalues_of_diagonal_and_rotation() {
        let e = eigenvalues(&[-1.0, 0.0, 0.0, -2.0], 2).unwrap();
        assert_eq!(e, vec![Complex::new(-1.0, 0.0), Complex::new(-2.0, 0.0)]);
        let e = eigenvalues(&[0.0, -1.0, 1.0, 0.0], 2).unwrap();
        assert!((e[0] - Complex::new(0.0, 1.0)).norm() < 1e-14);
        assert!((e[1] - Complex::new(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_companion_matrix() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let c = [10.0, -35.0, 50.0, -24.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        let e = eigenvalues(&c, 4).unwrap();
        for (got, want) in e.iter().zip([4.0f64, 3.0, 2.0, 1.0]) {
            assert!((got.re - want).abs() < 1e-10 && got.im.abs() < 1e-10, "{got}");
        }
    }
}
