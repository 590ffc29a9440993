//! Exact nullspaces by Gauss-Jordan elimination over a [`Field`].

use crate::field::Field;

/// Basis of `{x : A x = 0}` for the matrix with the given rows, each of
/// length `ncols`. Basis vectors have a one in their free column.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        for x in m[rank].iter_mut().skip(col) {
            *x = x.mul(&inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = x.sub(&factor.mul(p));
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m[r][f].neg();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ModP;
    use crate::scalar::Rational;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn mat_vec(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
        rows.iter()
            .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    #[test]
    fn rank_deficient_matrix() {
        let rows = vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[1, 0, 1])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&rows, &ns[0]).iter().all(Rational::is_zero));
    }

    #[test]
    fn full_rank_and_wide() {
        let rows = vec![r(&[1, 0]), r(&[0, 1]), r(&[1, 1])];
        assert!(nullspace(&rows, 2).is_empty());
        let wide = vec![r(&[1, 1, 1, 1])];
        assert_eq!(nullspace(&wide, 4).len(), 3);
        assert_eq!(nullspace::<Rational>(&[], 2).len(), 2);
    }

    #[test]
    fn modular() {
        type F = ModP<5>;
        // x + 2y = 0 over GF(5) with a second dependent row
        let rows = vec![vec![F::new(1), F::new(2)], vec![F::new(3), F::new(1)]];
        let ns = nullspace(&rows, 2);
        assert_eq!(ns, vec![vec![F::new(3), F::new(1)]]);
    }
}
