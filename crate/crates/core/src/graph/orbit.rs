use super::perm::{orbits, Perm};
use crate::linalg::Matrix;

/// `(1/|G|) Σ_{g∈G} ρ(g)` for `G = ⟨gens⟩`, without enumerating `G`.
///
/// Entry `(i, j)` is `1/|orbit(j)|` when `i` and `j` share an orbit.
pub fn orbit_average_matrix(gens: &[Perm], n: usize) -> Matrix<f64> {
    let orb = orbits(gens, n);
    let mut size = vec![0usize; n];
    for &o in &orb {
        size[o] += 1;
    }
    Matrix::from_fn(n, n, |i, j| {
        if orb[i] == orb[j] {
            1.0 / size[orb[j]] as f64
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group_gives_identity() {
        assert_eq!(orbit_average_matrix(&[], 3), Matrix::identity(3));
    }

    #[test]
    fn single_transposition() {
        let m = orbit_average_matrix(&[vec![1, 0, 2]], 3);
        let want = Matrix::from_rows(&[
            vec![0.5, 0.5, 0.0],
            vec![0.5, 0.5, 0.0],
            vec![0.0, 0.0, 1.0],
        ]);
        assert_eq!(m, want);
    }
}
