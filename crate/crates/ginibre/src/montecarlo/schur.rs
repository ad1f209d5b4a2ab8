//! Eigenvalues of a dense real matrix through the real Schur form:
//! optional balancing, Householder reduction to Hessenberg form, then
//! Francis double-shift QR on the active window.

use serde::Serialize;

use crate::error::{Error, Result};

/// Square matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![0.0; n * n] }
    }

    pub fn from_rows(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "row-major data must hold n*n entries");
        Matrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }
}

/// Real eigenvalues and complex-conjugate pairs `a ± ib`, `b > 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSample {
    pub real_eigs: Vec<f64>,
    pub complex_pairs: Vec<(f64, f64)>,
    pub real_count: usize,
}

/// Diagonal similarity by powers of two equalizing row and column norms.
pub fn balance(a: &mut Matrix) {
    let n = a.n;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a.get(j, i).abs();
                    r += a.get(i, j).abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c > g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for v in a.row_mut(i) {
                    *v /= f;
                }
                for j in 0..n {
                    a.data[j * n + i] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
pub fn hessenberg(a: &mut Matrix) {
    let n = a.n;
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let alpha2: f64 = (k + 1..n).map(|i| a.get(i, k).powi(2)).sum();
        if alpha2 == 0.0 {
            continue;
        }
        let x0 = a.get(k + 1, k);
        let alpha = -alpha2.sqrt().copysign(x0);
        // v = x - alpha e_1, normalized so that H = I - 2 v v^T / (v^T v)
        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = a.get(i, k);
        }
        let vnorm2 = v[k + 1] * v[k + 1] + alpha2 - x0 * x0;
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // left: A[k+1.., k..] -= beta v (v^T A)
        w[k..n].fill(0.0);
        for i in k + 1..n {
            let vi = v[i];
            for (wj, aij) in w[k..n].iter_mut().zip(&a.row(i)[k..n]) {
                *wj += vi * aij;
            }
        }
        for i in k + 1..n {
            let f = beta * v[i];
            for (aij, wj) in a.row_mut(i)[k..n].iter_mut().zip(&w[k..n]) {
                *aij -= f * wj;
            }
        }
        // right: A[.., k+1..] -= beta (A v) v^T
        for i in 0..n {
            let row = &mut a.row_mut(i)[k + 1..n];
            let s: f64 = row.iter().zip(&v[k + 1..n]).map(|(x, y)| x * y).sum();
            let f = beta * s;
            for (aij, vj) in row.iter_mut().zip(&v[k + 1..n]) {
                *aij -= f * vj;
            }
        }
        a.set(k + 1, k, alpha);
        for i in k + 2..n {
            a.set(i, k, 0.0);
        }
    }
}

const MAX_SWEEPS_PER_EIGENVALUE: usize = 100;

/// Eigenvalues of an upper Hessenberg matrix as `(re, im)` lists; complex
/// values appear in conjugate pairs. The matrix is overwritten.
pub fn hessenberg_eigenvalues(a: &mut Matrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = a.n;
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];
    if n == 0 {
        return Ok((wr, wi));
    }
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a.get(i, j).abs();
        }
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let nu = nn as usize;
        let mut its = 0;
        loop {
            // look for a negligible subdiagonal element
            let mut l = 0usize;
            for ll in (1..=nu).rev() {
                let mut s = a.get(ll - 1, ll - 1).abs() + a.get(ll, ll).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a.get(ll, ll - 1).abs() + s == s {
                    a.set(ll, ll - 1, 0.0);
                    l = ll;
                    break;
                }
            }
            let mut x = a.get(nu, nu);
            if l == nu {
                wr[nu] = x + t;
                wi[nu] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = a.get(nu - 1, nu - 1);
            let mut w = a.get(nu, nu - 1) * a.get(nu - 1, nu);
            if l == nu - 1 {
                // 2x2 block: a complex pair exactly when its discriminant is negative
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    wr[nu - 1] = x + z;
                    wr[nu] = if z != 0.0 { x - w / z } else { x + z };
                    wi[nu - 1] = 0.0;
                    wi[nu] = 0.0;
                } else {
                    wr[nu - 1] = x + p;
                    wr[nu] = x + p;
                    wi[nu - 1] = -z;
                    wi[nu] = z;
                }
                nn -= 2;
                break;
            }
            if its == MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::NoConvergence(its));
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                t += x;
                for i in 0..=nu {
                    let v = a.get(i, i) - x;
                    a.set(i, i, v);
                }
                let s = a.get(nu, nu - 1).abs() + a.get(nu - 1, nu - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            // look for two consecutive small subdiagonal elements
            let mut m = nu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a.get(m, m);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a.get(m + 1, m) + a.get(m, m + 1);
                q = a.get(m + 1, m + 1) - z - rr - ss;
                r = a.get(m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a.get(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (a.get(m - 1, m - 1).abs() + z.abs() + a.get(m + 1, m + 1).abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                a.set(i, i - 2, 0.0);
                if i != m + 2 {
                    a.set(i, i - 3, 0.0);
                }
            }
            // double-shift QR step on rows and columns l..=nu
            for k in m..nu {
                if k != m {
                    p = a.get(k, k - 1);
                    q = a.get(k + 1, k - 1);
                    r = if k != nu - 1 { a.get(k + 2, k - 1) } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        let v = -a.get(k, k - 1);
                        a.set(k, k - 1, v);
                    }
                } else {
                    a.set(k, k - 1, -s * x);
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                let third = k != nu - 1;
                {
                    let (top, rest) = a.data[k * n..].split_at_mut(n);
                    let (mid, rest) = rest.split_at_mut(n);
                    let (r0, r1) = (&mut top[k..=nu], &mut mid[k..=nu]);
                    if third {
                        let r2 = &mut rest[k..=nu];
                        for ((a0, a1), a2) in r0.iter_mut().zip(r1.iter_mut()).zip(r2.iter_mut()) {
                            let pp = *a0 + q * *a1 + r * *a2;
                            *a2 -= pp * z;
                            *a1 -= pp * y;
                            *a0 -= pp * x;
                        }
                    } else {
                        for (a0, a1) in r0.iter_mut().zip(r1.iter_mut()) {
                            let pp = *a0 + q * *a1;
                            *a1 -= pp * y;
                            *a0 -= pp * x;
                        }
                    }
                }
                for i in l..=nu.min(k + 3) {
                    let mut pp = x * a.get(i, k) + y * a.get(i, k + 1);
                    if third {
                        pp += z * a.get(i, k + 2);
                        let v = a.get(i, k + 2) - pp * r;
                        a.set(i, k + 2, v);
                    }
                    let v = a.get(i, k + 1) - pp * q;
                    a.set(i, k + 1, v);
                    let v = a.get(i, k) - pp;
                    a.set(i, k, v);
                }
            }
        }
    }
    Ok((wr, wi))
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL; `e[i]` couples `i` and `i+1`.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() + dd == dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter == MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::NoConvergence(iter));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn classify(wr: Vec<f64>, wi: Vec<f64>) -> SpectrumSample {
    let mut real_eigs = Vec::new();
    let mut complex_pairs = Vec::new();
    for (re, im) in wr.into_iter().zip(wi) {
        if im == 0.0 {
            real_eigs.push(re);
        } else if im > 0.0 {
            complex_pairs.push((re, im));
        }
    }
    real_eigs.sort_by(f64::total_cmp);
    let real_count = real_eigs.len();
    SpectrumSample { real_eigs, complex_pairs, real_count }
}

/// Spectrum of a square matrix. Symmetric input is classified as all real;
/// if the QR iteration stalls it is retried once after balancing.
pub fn spectrum(m: &Matrix) -> Result<SpectrumSample> {
    if m.data.iter().any(|v| !v.is_finite()) {
        return Err(Error::OutOfRange { name: "matrix", value: "non-finite entry".into(), range: "finite entries" });
    }
    if m.is_symmetric() {
        let mut a = m.clone();
        hessenberg(&mut a);
        let n = a.n;
        let mut d: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
        let mut e: Vec<f64> = (0..n).map(|i| if i + 1 < n { 0.5 * (a.get(i + 1, i) + a.get(i, i + 1)) } else { 0.0 }).collect();
        tridiagonal_eigenvalues(&mut d, &mut e)?;
        return Ok(classify(d, vec![0.0; n]));
    }
    let run = |balanced: bool| {
        let mut a = m.clone();
        if balanced {
            balance(&mut a);
        }
        hessenberg(&mut a);
        hessenberg_eigenvalues(&mut a)
    };
    let (wr, wi) = match run(false) {
        Ok(v) => v,
        Err(_) => run(true)?,
    };
    Ok(classify(wr, wi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcg(seed: &mut u64) -> f64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (*seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    }

    #[test]
    fn companion_of_z2_plus_1() {
        let m = Matrix::from_rows(2, vec![0.0, -1.0, 1.0, 0.0]);
        let s = spectrum(&m).unwrap();
        assert_eq!(s.real_count, 0);
        assert_eq!(s.complex_pairs.len(), 1);
        let (a, b) = s.complex_pairs[0];
        assert!(a.abs() < 1e-15 && (b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn symmetric_is_real() {
        let n = 40;
        let mut seed = 3;
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = lcg(&mut seed);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        assert_eq!(spectrum(&m).unwrap().real_count, n);
    }

    #[test]
    fn trace_and_parity() {
        for n in [1usize, 2, 3, 7, 30, 61] {
            let mut seed = n as u64;
            let m = Matrix::from_rows(n, (0..n * n).map(|_| lcg(&mut seed)).collect());
            let s = spectrum(&m).unwrap();
            assert_eq!(s.real_count + 2 * s.complex_pairs.len(), n);
            assert_eq!(s.real_count % 2, n % 2);
            let trace: f64 = (0..n).map(|i| m.get(i, i)).sum();
            let sum: f64 = s.real_eigs.iter().sum::<f64>() + 2.0 * s.complex_pairs.iter().map(|p| p.0).sum::<f64>();
            assert!((trace - sum).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn known_eigenvalues() {
        // block diagonal: [[1,2],[0,3]] and a rotation-scaling block
        let m = Matrix::from_rows(
            4,
            vec![1.0, 2.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.5, -2.0, 0.0, 0.0, 2.0, 0.5],
        );
        let s = spectrum(&m).unwrap();
        assert_eq!(s.real_eigs.len(), 2);
        assert!((s.real_eigs[0] - 1.0).abs() < 1e-14 && (s.real_eigs[1] - 3.0).abs() < 1e-14);
        let (a, b) = s.complex_pairs[0];
        assert!((a - 0.5).abs() < 1e-14 && (b - 2.0).abs() < 1e-14);
    }

    #[test]
    fn balancing_preserves_spectrum() {
        let n = 12;
        let mut seed = 11;
        let mut m = Matrix::from_rows(n, (0..n * n).map(|_| lcg(&mut seed)).collect());
        for j in 0..n {
            let v = m.get(0, j) * 1e6;
            m.set(0, j, v);
        }
        let plain = spectrum(&m).unwrap();
        let mut b = m.clone();
        balance(&mut b);
        hessenberg(&mut b);
        let (wr, _) = hessenberg_eigenvalues(&mut b).unwrap();
        let bal = classify(wr, vec![0.0; n]);
        let s1: f64 = plain.real_eigs.iter().sum::<f64>() + 2.0 * plain.complex_pairs.iter().map(|p| p.0).sum::<f64>();
        let s2: f64 = bal.real_eigs.iter().sum();
        assert!((s1 - s2).abs() < 1e-6 * s1.abs().max(1.0));
    }
}
