//! Built-in test algebras.

use super::{AlgebraError, BinaryAlgebra};
use crate::fields::FieldSpec;
use crate::linalg::{self, Vector};

pub const CATALOG_NAMES: &[&str] = &[
    "sl2",
    "sl3",
    "sl4",
    "sl(n) for 2 <= n <= 4",
    "abelian(n)",
    "heisenberg",
    "takiff",
    "sl2+v2",
];

/// Looks up `sl2`, `sl3`, `sl4`, `sl(n)`, `abelian(n)`, `heisenberg`,
/// `takiff` (`sl2 ⊗ F[t]/t²`) or `sl2+v2` (`sl2 ⋉ F²`).
pub fn catalog(name: &str, field: FieldSpec) -> Result<BinaryAlgebra, AlgebraError> {
    let unknown = || AlgebraError::UnknownAlgebra(name.to_string());
    let param = |prefix: &str| -> Option<usize> {
        let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
        if inner.is_empty() || !inner.chars().all(|c| c.is_ascii_digit()) || inner.len() > 3 {
            return None;
        }
        inner.parse().ok()
    };
    match name {
        "sl2" => Ok(special_linear(2, field)),
        "sl3" => Ok(special_linear(3, field)),
        "sl4" => Ok(special_linear(4, field)),
        "heisenberg" => Ok(heisenberg(field)),
        "takiff" => Ok(takiff(field)),
        "sl2+v2" => Ok(sl2_natural(field)),
        _ => {
            if let Some(n) = param("sl") {
                if (2..=4).contains(&n) {
                    return Ok(special_linear(n, field));
                }
            } else if let Some(n) = param("abelian") {
                return Ok(BinaryAlgebra::zero(field, n, name));
            }
            Err(unknown())
        }
    }
}

/// `sl(n)` in the basis `E_ij` (`i ≠ j`, lexicographic) followed by
/// `H_i = E_ii - E_{i+1,i+1}`. For `n = 2` this is `(e, f, h)`.
fn special_linear(n: usize, field: FieldSpec) -> BinaryAlgebra {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let dim = off.len() + n - 1;
    let matrix_of = |b: usize| -> Vec<i64> {
        let mut m = vec![0i64; n * n];
        if b < off.len() {
            let (i, j) = off[b];
            m[i * n + j] = 1;
        } else {
            let i = b - off.len();
            m[i * n + i] = 1;
            m[(i + 1) * n + i + 1] = -1;
        }
        m
    };
    let mats: Vec<Vec<i64>> = (0..dim).map(matrix_of).collect();
    let product = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    out[i * n + j] += a[i * n + k] * b[k * n + j];
                }
            }
        }
        out
    };
    // Coordinates of a traceless integer matrix; the diagonal part
    // diag(d_0, ..., d_{n-1}) is sum_i (d_0 + ... + d_i) H_i.
    let coords = |m: &[i64]| -> Vector {
        let mut v = linalg::zeros(field, dim);
        for (b, &(i, j)) in off.iter().enumerate() {
            v[b] = field.from_i64(m[i * n + j]);
        }
        let mut running = 0i64;
        for i in 0..n - 1 {
            running += m[i * n + i];
            v[off.len() + i] = field.from_i64(running);
        }
        debug_assert_eq!(running + m[(n - 1) * n + n - 1], 0);
        v
    };
    let name = if n <= 4 { format!("sl{n}") } else { format!("sl({n})") };
    BinaryAlgebra::from_fn(field, dim, name, |a, b| {
        let ab = product(&mats[a], &mats[b]);
        let ba = product(&mats[b], &mats[a]);
        let comm: Vec<i64> = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
        coords(&comm)
    })
    .expect("sl(n) tensor has the right shape")
}

/// Basis `(x, y, z)` with `[x, y] = z = -[y, x]`.
fn heisenberg(field: FieldSpec) -> BinaryAlgebra {
    BinaryAlgebra::from_fn(field, 3, "heisenberg", |i, j| match (i, j) {
        (0, 1) => linalg::unit(field, 3, 2),
        (1, 0) => linalg::scale(&field.from_i64(-1), &linalg::unit(field, 3, 2)),
        _ => linalg::zeros(field, 3),
    })
    .expect("heisenberg tensor has the right shape")
}

/// `sl2 ⊗ F[t]/t²` in the basis `(e, f, h, te, tf, th)`.
fn takiff(field: FieldSpec) -> BinaryAlgebra {
    let g = special_linear(2, field);
    BinaryAlgebra::from_fn(field, 6, "takiff", |i, j| {
        let mut v = linalg::zeros(field, 6);
        let degree = i / 3 + j / 3;
        if degree < 2 {
            v[3 * degree..3 * degree + 3].clone_from_slice(g.basis_bracket(i % 3, j % 3));
        }
        v
    })
    .expect("takiff tensor has the right shape")
}

/// `sl2 ⋉ F²` in the basis `(e, f, h, v0, v1)` with `e·v1 = v0`,
/// `f·v0 = v1`, `h·v0 = v0`, `h·v1 = -v1`.
fn sl2_natural(field: FieldSpec) -> BinaryAlgebra {
    let g = special_linear(2, field);
    let act = |x: usize, w: usize| -> Option<(usize, i64)> {
        match (x, w) {
            (0, 1) => Some((3, 1)),
            (1, 0) => Some((4, 1)),
            (2, 0) => Some((3, 1)),
            (2, 1) => Some((4, -1)),
            _ => None,
        }
    };
    BinaryAlgebra::from_fn(field, 5, "sl2+v2", |i, j| {
        let mut v = linalg::zeros(field, 5);
        match (i < 3, j < 3) {
            (true, true) => v[..3].clone_from_slice(g.basis_bracket(i, j)),
            (true, false) => {
                if let Some((k, c)) = act(i, j - 3) {
                    v[k] = field.from_i64(c);
                }
            }
            (false, true) => {
                if let Some((k, c)) = act(j, i - 3) {
                    v[k] = field.from_i64(-c);
                }
            }
            (false, false) => {}
        }
        v
    })
    .expect("semidirect tensor has the right shape")
}
