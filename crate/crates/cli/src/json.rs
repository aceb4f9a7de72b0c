use minframe::linalg::format_matrix;
use minframe::{DenseMatrix, Matrix, Scalar, ScalarKind};
use num_bigint::BigUint;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Real entries as numbers, complex entries as `[re, im]` pairs.
pub fn matrix<T: Scalar>(m: &Matrix<T>) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let v = m[(i, j)];
                    match T::KIND {
                        ScalarKind::Real => json!(v.re()),
                        ScalarKind::Complex => json!([v.re(), v.im()]),
                    }
                })
                .collect()
        })
        .collect();
    Value::Array(rows)
}

/// SHA-256 of the matrix in the text matrix format.
pub fn checksum<T: Scalar>(m: &Matrix<T>) -> String {
    let dense = match T::KIND {
        ScalarKind::Real => DenseMatrix::Real(m.map(|v| v.re())),
        ScalarKind::Complex => DenseMatrix::Complex(m.map(|v| num_complex::Complex64::new(v.re(), v.im()))),
    };
    hex(&format_matrix(&dense))
}

pub fn hex(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

/// A number when it fits in `u64`, a decimal string otherwise.
pub fn big(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}
