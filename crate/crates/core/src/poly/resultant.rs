use super::polynomial::Poly;
use super::rational::Rational;

/// Fraction-free determinant (Bareiss) of a square matrix of polynomials.
pub fn det_bareiss(mut m: Vec<Vec<Poly>>, nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    let mut sign = false;
    let mut prev = Poly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Poly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Coefficients of `f` as a polynomial in `var`, lowest degree first.
fn coefficients(f: &Poly, var: usize) -> Vec<Poly> {
    let n = f.nvars();
    let mut out = vec![Poly::zero(n); f.degree_of(var) as usize + 1];
    for (m, c) in f.terms() {
        out[m.exp(var) as usize].add_term(m.with_exp(var, 0), c.clone());
    }
    out
}

/// Resultant of `f` and `g` with respect to `var`, via the Sylvester matrix.
pub fn resultant(f: &Poly, g: &Poly, var: usize) -> Poly {
    let nv = f.nvars();
    if f.is_zero() || g.is_zero() {
        return Poly::zero(nv);
    }
    let a = coefficients(f, var);
    let b = coefficients(g, var);
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 && n == 0 {
        return Poly::one(nv);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Poly::zero(nv); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(nv); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    det_bareiss(rows, nv)
}

/// Discriminant of `f` in `var`: `(-1)^(n(n-1)/2) res(f, f') / lead(f)`.
pub fn discriminant(f: &Poly, var: usize) -> Poly {
    let n = f.degree_of(var) as usize;
    let lead = coefficients(f, var).pop().expect("nonzero");
    let r = resultant(f, &f.derivative(var), var);
    let q = r.div_exact(&lead).expect("leading coefficient divides the resultant");
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        q.scale(&-Rational::from_integer(1.into()))
    } else {
        q
    }
}
