//! Dense Gaussian elimination over F_p, shared by the algebraic decoders.

use crate::algebra::PrimeField;

fn modinv(a: u64, p: u64) -> u64 {
    PrimeField::new(p).unwrap().elem(a).inverse().unwrap().value()
}

/// Solves A x = b over F_p, returning one particular solution (free
/// variables set to zero), or None when inconsistent.
pub fn solve_particular(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let rows = a.len();
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r: Vec<u64> = row.iter().map(|&v| v % p).collect();
            r.push(rhs % p);
            r
        })
        .collect();

    let mut pivot_col_of_row = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = modinv(m[r][c], p);
        for v in m[r].iter_mut() {
            *v = (*v as u128 * inv as u128 % p as u128) as u64;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..=cols {
                    let sub = (f as u128 * m[r][j] as u128) % p as u128;
                    m[i][j] = ((m[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistent: a zero row with nonzero rhs
    for i in r..rows {
        if m[i][cols] != 0 {
            return None;
        }
    }
    let mut x = vec![0u64; cols];
    for (row, &c) in pivot_col_of_row.iter().enumerate() {
        x[c] = m[row][cols];
    }
    Some(x)
}

/// Returns a nonzero kernel vector of the homogeneous system A x = 0, or
/// None when the kernel is trivial.
pub fn kernel_vector(a: &[Vec<u64>], cols: usize, p: u64) -> Option<Vec<u64>> {
    let rows = a.len();
    let mut m: Vec<Vec<u64>> = a.iter().map(|row| row.iter().map(|&v| v % p).collect()).collect();
    let mut pivot_in_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = modinv(m[r][c], p);
        for v in m[r].iter_mut() {
            *v = (*v as u128 * inv as u128 % p as u128) as u64;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..cols {
                    let sub = (f as u128 * m[r][j] as u128) % p as u128;
                    m[i][j] = ((m[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        pivot_in_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free = (0..cols).find(|&c| pivot_in_col[c].is_none())?;
    let mut x = vec![0u64; cols];
    x[free] = 1;
    for c in 0..cols {
        if let Some(row) = pivot_in_col[c] {
            // pivot var = -(coeff at free column)
            x[c] = (p - m[row][free] % p) % p;
        }
    }
    Some(x)
}
