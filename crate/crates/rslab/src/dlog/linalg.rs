//! Linear algebra modulo a composite group order N.
//!
//! Two exact routes:
//!
//! * `solve_unique`: CRT over the prime-power factors of N with unit-pivot
//!   elimination per factor. A consistent system has a unique solution mod
//!   p^e iff it has full column rank mod p, so the unit-pivot criterion is
//!   exact, not heuristic.
//! * `functional_value`: integer Smith normal form of the coefficient
//!   matrix. Determines whether a linear functional w.x is constant on the
//!   entire solution set mod N and returns its value. This is the route that
//!   extracts a target logarithm even when the log table itself is
//!   underdetermined (for example, every relation row of weight g leaves the
//!   all-ones direction free whenever gcd(g, N) > 1).
//!
//! Both routes are cross-checked against each other in tests.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::factorize_u64;
use crate::error::{Error, Result};

/// A linear system over Z_N: rows of (coefficients, rhs).
#[derive(Debug, Clone)]
pub struct ModSystem {
    pub modulus: u64,
    pub n_unknowns: usize,
    pub rows: Vec<(Vec<u64>, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// The one solution vector mod N.
    Unique(Vec<u64>),
    /// Consistent (as far as checked) but with a nontrivial solution lattice.
    Underdetermined,
    /// A row fails under substitution; impossible for verified relation rows.
    Inconsistent,
}

impl ModSystem {
    pub fn new(modulus: u64, n_unknowns: usize) -> ModSystem {
        ModSystem {
            modulus,
            n_unknowns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, coeffs: Vec<u64>, rhs: u64) {
        debug_assert_eq!(coeffs.len(), self.n_unknowns);
        self.rows.push((
            coeffs.into_iter().map(|c| c % self.modulus).collect(),
            rhs % self.modulus,
        ));
    }

    fn check_all_rows(&self, x: &[u64]) -> bool {
        let m = self.modulus as u128;
        self.rows.iter().all(|(coeffs, rhs)| {
            let acc = coeffs
                .iter()
                .zip(x)
                .fold(0u128, |acc, (&c, &v)| (acc + c as u128 * v as u128) % m);
            acc == *rhs as u128
        })
    }
}

fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (a as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Unit-pivot Gaussian elimination mod p^e. Returns the unique solution, or
/// None when some column never receives a pivot that is a unit mod p
/// (equivalently: rank deficiency mod p, so the solution cannot be unique).
fn solve_prime_power(rows: &[(Vec<u64>, u64)], cols: usize, p: u64, pe: u64) -> Option<Vec<u64>> {
    let m = pe as u128;
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .map(|(c, r)| {
            let mut row: Vec<u64> = c.iter().map(|&v| v % pe).collect();
            row.push(r % pe);
            row
        })
        .collect();
    let nr = mat.len();
    let mut pivot_row_of_col = vec![usize::MAX; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..nr).find(|&i| mat[i][c] % p != 0) else {
            return None; // no unit available: rank_p < cols
        };
        mat.swap(r, pr);
        let inv = inv_mod_u64(mat[r][c], pe).expect("unit mod p is a unit mod p^e");
        for v in mat[r].iter_mut() {
            *v = (*v as u128 * inv as u128 % m) as u64;
        }
        for i in 0..nr {
            if i != r && mat[i][c] != 0 {
                let f = mat[i][c] as u128;
                for j in c..=cols {
                    let sub = f * mat[r][j] as u128 % m;
                    mat[i][j] = ((mat[i][j] as u128 + m - sub) % m) as u64;
                }
            }
        }
        pivot_row_of_col[c] = r;
        r += 1;
        if r == nr {
            // ran out of rows before pivoting every column
            if c + 1 < cols {
                return None;
            }
        }
    }
    if pivot_row_of_col.iter().any(|&pr| pr == usize::MAX) {
        return None;
    }
    Some((0..cols).map(|c| mat[pivot_row_of_col[c]][cols]).collect())
}

/// CRT solve over the prime-power factorization of N. Exact: `Unique` iff
/// the solution is a single point mod N, with a full substitution check.
pub fn solve_unique(sys: &ModSystem) -> SolveOutcome {
    if sys.n_unknowns == 0 {
        return SolveOutcome::Unique(vec![]);
    }
    if sys.rows.is_empty() {
        return SolveOutcome::Underdetermined;
    }
    let factors = factorize_u64(sys.modulus);
    let mut residues: Vec<(u64, Vec<u64>)> = Vec::new(); // (p^e, solution mod p^e)
    for &(p, e) in &factors {
        let pe = p.pow(e);
        match solve_prime_power(&sys.rows, sys.n_unknowns, p, pe) {
            Some(x) => residues.push((pe, x)),
            None => return SolveOutcome::Underdetermined,
        }
    }
    // CRT combine coordinatewise.
    let n = sys.modulus;
    let mut x = vec![0u64; sys.n_unknowns];
    for (i, xi) in x.iter_mut().enumerate() {
        let mut acc = 0u128;
        for &(pe, ref sol) in &residues {
            let m_i = n / pe;
            let inv = inv_mod_u64((m_i % pe) as u64, pe).expect("coprime cofactor") as u128;
            // term = sol_i * M_i * inv(M_i) mod N
            let term = sol[i] as u128 % n as u128 * (m_i as u128 % n as u128) % n as u128 * inv
                % n as u128;
            acc = (acc + term) % n as u128;
        }
        *xi = acc as u64;
    }
    if sys.check_all_rows(&x) {
        SolveOutcome::Unique(x)
    } else {
        SolveOutcome::Inconsistent
    }
}

/// Smith normal form U A V = D over the integers, with U, V unimodular and
/// the diagonal divisibility chain d_1 | d_2 | ... enforced.
pub struct Smith {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
}

pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Smith {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(nr);
    let mut v = identity(nc);

    let rank_bound = nr.min(nc);
    let mut t = 0usize;
    while t < rank_bound {
        // find the nonzero entry of smallest magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !d[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            break; // trailing block is zero
        };
        d.swap(t, bi);
        u.swap(t, bi);
        swap_cols(&mut d, t, bj);
        swap_cols(&mut v, t, bj);

        // reduce column t and row t by the pivot
        let mut dirty = false;
        for i in t + 1..nr {
            if d[i][t].is_zero() {
                continue;
            }
            let q = div_round(&d[i][t], &d[t][t]);
            if !q.is_zero() {
                row_submul(&mut d, i, t, &q);
                row_submul(&mut u, i, t, &q);
            }
            if !d[i][t].is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..nc {
            if d[t][j].is_zero() {
                continue;
            }
            let q = div_round(&d[t][j], &d[t][t]);
            if !q.is_zero() {
                col_submul(&mut d, j, t, &q);
                col_submul(&mut v, j, t, &q);
            }
            if !d[t][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue; // smaller remainders exist; re-pick the pivot
        }
        // pivot now clean; normalize the sign and advance
        if d[t][t].is_negative() {
            for j in 0..nc {
                d[t][j] = -d[t][j].clone();
            }
            for j in 0..nr {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }

    // divisibility chain: fold d[j][j] into d[i][i] when d[i][i] does not
    // divide it, then re-clean the 2x2 disturbance
    let mut i = 0usize;
    while i + 1 < rank_bound {
        let di = d[i][i].clone();
        if di.is_zero() {
            break;
        }
        let mut disturbed = false;
        for j in i + 1..rank_bound {
            if d[j][j].is_zero() {
                continue;
            }
            if (&d[j][j] % &di).is_zero() {
                continue;
            }
            // col_i += col_j brings d[j][j] into column i at row j
            col_add(&mut d, i, j);
            col_add(&mut v, i, j);
            disturbed = true;
            break;
        }
        if !disturbed {
            i += 1;
            continue;
        }
        // re-run the diagonalization from position i
        let mut t = i;
        while t < rank_bound {
            let mut best: Option<(usize, usize)> = None;
            for r in t..d.len() {
                for c in t..nc {
                    if !d[r][c].is_zero()
                        && best.map_or(true, |(br, bc)| d[r][c].abs() < d[br][bc].abs())
                    {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else { break };
            d.swap(t, br);
            u.swap(t, br);
            swap_cols(&mut d, t, bc);
            swap_cols(&mut v, t, bc);
            let mut dirty = false;
            for r in t + 1..d.len() {
                if d[r][t].is_zero() {
                    continue;
                }
                let q = div_round(&d[r][t], &d[t][t]);
                if !q.is_zero() {
                    row_submul(&mut d, r, t, &q);
                    row_submul(&mut u, r, t, &q);
                }
                if !d[r][t].is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..nc {
                if d[t][c].is_zero() {
                    continue;
                }
                let q = div_round(&d[t][c], &d[t][t]);
                if !q.is_zero() {
                    col_submul(&mut d, c, t, &q);
                    col_submul(&mut v, c, t, &q);
                }
                if !d[t][c].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            if d[t][t].is_negative() {
                for c in 0..nc {
                    d[t][c] = -d[t][c].clone();
                }
                for c in 0..u[t].len() {
                    u[t][c] = -u[t][c].clone();
                }
            }
            t += 1;
        }
    }

    Smith { u, v, d }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn row_submul(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(&src_row) {
        *d -= q * s;
    }
}

fn col_submul(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

fn col_add(m: &mut [Vec<BigInt>], dst: usize, src: usize) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] += s;
    }
}

/// Rounded division: minimizes |a - q*b|.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Exact determination of a linear functional w.x over the full solution set
/// of A x = b (mod N). Returns:
///  - Ok(Some(value)) when the system is consistent and w.x is the same for
///    every solution;
///  - Ok(None) when solutions exist but w.x varies (or no constraint pins it);
///  - Err(Internal) when the system is inconsistent (impossible for rows
///    verified by exponentiation).
pub fn functional_value(sys: &ModSystem, w: &[u64]) -> Result<Option<u64>> {
    let n_big = BigInt::from(sys.modulus);
    let a: Vec<Vec<BigInt>> = sys
        .rows
        .iter()
        .map(|(c, _)| c.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let b: Vec<BigInt> = sys.rows.iter().map(|(_, r)| BigInt::from(*r)).collect();
    let cols = sys.n_unknowns;
    if a.is_empty() {
        return Ok(None);
    }
    let smith = smith_normal_form(&a);
    let rank_bound = a.len().min(cols);

    // c = U b mod N
    let c: Vec<BigInt> = smith
        .u
        .iter()
        .map(|urow| {
            urow.iter()
                .zip(&b)
                .fold(BigInt::zero(), |acc, (u, bv)| acc + u * bv)
                .mod_floor(&n_big)
        })
        .collect();

    // z = w V mod N (functional in y coordinates, x = V y)
    let z: Vec<BigInt> = (0..cols)
        .map(|j| {
            (0..cols)
                .map(|i| BigInt::from(w[i]) * &smith.v[i][j])
                .fold(BigInt::zero(), |acc, t| acc + t)
                .mod_floor(&n_big)
        })
        .collect();

    let mut value = BigInt::zero();
    for i in 0..cols {
        let d_i = if i < rank_bound {
            smith.d[i][i].clone()
        } else {
            BigInt::zero()
        };
        if d_i.is_zero() {
            // y_i fully free mod N: functional must not see it
            if !z[i].is_zero() {
                return Ok(None);
            }
            continue;
        }
        let g = d_i.gcd(&n_big);
        let c_i = if i < c.len() { c[i].clone() } else { BigInt::zero() };
        if !(&c_i % &g).is_zero() {
            return Err(Error::Internal(
                "inconsistent relation system in functional solve".into(),
            ));
        }
        // particular: y_i = (c_i/g) * inv(d_i/g) mod N/g; freedom: += (N/g)*s
        let n_over_g = &n_big / &g;
        let d_red = (&d_i / &g).mod_floor(&n_over_g);
        let c_red = (&c_i / &g).mod_floor(&n_over_g);
        let inv = mod_inverse_big(&d_red, &n_over_g).ok_or_else(|| {
            Error::Internal("d/g not invertible mod N/g after gcd reduction".into())
        })?;
        let y_part = (c_red * inv).mod_floor(&n_over_g);
        // determined iff z_i * (N/g) = 0 mod N, i.e. g | z_i
        if !(&z[i] % &g).is_zero() {
            return Ok(None);
        }
        value = (value + &z[i] * y_part).mod_floor(&n_big);
    }
    // rows beyond the rank impose 0 = c_i; inconsistency check
    for (idx, c_i) in c.iter().enumerate() {
        if idx >= rank_bound || smith.d[idx][idx].is_zero() {
            if !(c_i % &n_big).is_zero() {
                return Err(Error::Internal(
                    "inconsistent residual row in functional solve".into(),
                ));
            }
        }
    }
    Ok(Some(value.mod_floor(&n_big).to_u64().expect("reduced mod u64 modulus")))
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Reduce a BigUint exponent into Z_N for system right-hand sides.
pub fn reduce_exponent(i: &BigUint, modulus: u64) -> u64 {
    (i % BigUint::from(modulus)).to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Independent invertibility oracle: Bareiss fraction-free determinant.
    fn det_bareiss(a: &[Vec<BigInt>]) -> BigInt {
        let n = a.len();
        let mut m: Vec<Vec<BigInt>> = a.to_vec();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                let Some(sw) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, sw);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    fn random_system(
        rng: &mut rand_chacha::ChaCha12Rng,
        n_unknowns: usize,
        modulus: u64,
    ) -> (ModSystem, Vec<u64>) {
        let planted: Vec<u64> = (0..n_unknowns).map(|_| rng.gen_range(0..modulus)).collect();
        let mut sys = ModSystem::new(modulus, n_unknowns);
        for _ in 0..n_unknowns {
            let coeffs: Vec<u64> = (0..n_unknowns).map(|_| rng.gen_range(0..modulus)).collect();
            let rhs = coeffs
                .iter()
                .zip(&planted)
                .fold(0u128, |acc, (&c, &x)| (acc + c as u128 * x as u128) % modulus as u128)
                as u64;
            sys.push_row(coeffs, rhs);
        }
        (sys, planted)
    }

    #[test]
    fn identity_rows_solve_directly() {
        let mut sys = ModSystem::new(48, 3);
        sys.push_row(vec![1, 0, 0], 10);
        sys.push_row(vec![0, 1, 0], 21);
        sys.push_row(vec![0, 0, 1], 47);
        assert_eq!(solve_unique(&sys), SolveOutcome::Unique(vec![10, 21, 47]));
    }

    #[test]
    fn planted_invertible_systems_recover() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(31);
        let moduli = [48u64, 360, 1000, 720720, 999_000];
        let mut recovered = 0;
        while recovered < 200 {
            let modulus = moduli[rng.gen_range(0..moduli.len())];
            let n = rng.gen_range(1..7usize);
            let (sys, planted) = random_system(&mut rng, n, modulus);
            let a_int: Vec<Vec<BigInt>> = sys
                .rows
                .iter()
                .map(|(c, _)| c.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            let det = det_bareiss(&a_int);
            let invertible = det.gcd(&BigInt::from(modulus)).is_one();
            match solve_unique(&sys) {
                SolveOutcome::Unique(x) => {
                    assert_eq!(x, planted, "unique solution must be the planted one");
                    recovered += 1;
                }
                SolveOutcome::Underdetermined => {
                    assert!(!invertible, "invertible system reported underdetermined");
                }
                SolveOutcome::Inconsistent => panic!("planted systems are consistent"),
            }
            if invertible {
                // the solver must have taken the Unique branch
                assert!(matches!(solve_unique(&sys), SolveOutcome::Unique(_)));
            }
        }
    }

    #[test]
    fn rank_deficient_returns_underdetermined() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(37);
        for _ in 0..100 {
            let modulus = [48u64, 360, 4620][rng.gen_range(0..3)];
            let p = factorize_u64(modulus)[0].0;
            let n = rng.gen_range(2..6usize);
            let planted: Vec<u64> = (0..n).map(|_| rng.gen_range(0..modulus)).collect();
            let mut sys = ModSystem::new(modulus, n);
            for _ in 0..n + 2 {
                // column 0 entries are multiples of p: kernel contains
                // (N/p) e_0, so uniqueness is impossible
                let mut coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..modulus)).collect();
                coeffs[0] = (coeffs[0] / p) * p;
                let rhs = coeffs
                    .iter()
                    .zip(&planted)
                    .fold(0u128, |acc, (&c, &x)| (acc + c as u128 * x as u128) % modulus as u128)
                    as u64;
                sys.push_row(coeffs, rhs);
            }
            assert_eq!(solve_unique(&sys), SolveOutcome::Underdetermined);
        }
    }

    #[test]
    fn smith_identities_hold() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(41);
        for _ in 0..60 {
            let nr = rng.gen_range(1..6usize);
            let nc = rng.gen_range(1..6usize);
            let a: Vec<Vec<BigInt>> = (0..nr)
                .map(|_| (0..nc).map(|_| BigInt::from(rng.gen_range(-9i64..10))).collect())
                .collect();
            let s = smith_normal_form(&a);
            // U A V = D
            let ua = mat_mul(&s.u, &a);
            let uav = mat_mul(&ua, &s.v);
            assert_eq!(uav, s.d);
            // D diagonal with divisibility chain
            for (i, row) in s.d.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if i != j {
                        assert!(v.is_zero(), "off-diagonal {i},{j} = {v}");
                    }
                }
            }
            let diag: Vec<BigInt> = (0..nr.min(nc)).map(|i| s.d[i][i].clone()).collect();
            for w in diag.windows(2) {
                if !w[0].is_zero() && !w[1].is_zero() {
                    assert!((&w[1] % &w[0]).is_zero(), "chain broken: {} | {}", w[0], w[1]);
                }
                if w[0].is_zero() {
                    assert!(w[1].is_zero(), "zero before nonzero on the diagonal");
                }
            }
            // unimodular factors
            assert_eq!(det_bareiss(&s.u).abs(), BigInt::one());
            assert_eq!(det_bareiss(&s.v).abs(), BigInt::one());
        }
    }

    fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let nr = a.len();
        let inner = b.len();
        let nc = if inner == 0 { 0 } else { b[0].len() };
        (0..nr)
            .map(|i| {
                (0..nc)
                    .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).fold(BigInt::zero(), |x, y| x + y))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn functional_agrees_with_unique_solver() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(43);
        let mut agreements = 0;
        while agreements < 100 {
            let modulus = [48u64, 168, 360][rng.gen_range(0..3)];
            let n = rng.gen_range(1..5usize);
            let (sys, _) = random_system(&mut rng, n, modulus);
            if let SolveOutcome::Unique(x) = solve_unique(&sys) {
                for idx in 0..n {
                    let mut w = vec![0u64; n];
                    w[idx] = 1;
                    let v = functional_value(&sys, &w).unwrap();
                    assert_eq!(v, Some(x[idx]), "coordinate {idx}");
                }
                agreements += 1;
            }
        }
    }

    #[test]
    fn functional_sees_through_underdetermination() {
        // mod 48: rows x + y = 10 and -x + y = -4 pin 2x = 14, so
        // x is determined only mod 24 (x = 7 or 31) while the functional
        // 2x is pinned at 14.
        let mut sys = ModSystem::new(48, 2);
        sys.push_row(vec![1, 1], 10);
        sys.push_row(vec![47, 1], 44); // -x + y = -4
        assert_eq!(solve_unique(&sys), SolveOutcome::Underdetermined);
        // w = (1, 1): x + y determined
        assert_eq!(functional_value(&sys, &[1, 1]).unwrap(), Some(10));
        // w = (1, 0): x alone is not determined (7 and 31 both solve)
        assert_eq!(functional_value(&sys, &[1, 0]).unwrap(), None);
        // w = (2, 0): 2x is determined: 2*7 = 14 = 2*31 mod 48
        assert_eq!(functional_value(&sys, &[2, 0]).unwrap(), Some(14));
    }

    #[test]
    fn weight_g_rows_leave_all_ones_free_but_pin_weight_g_functionals() {
        // the parity obstruction from the relation systems: every row has
        // weight 4 over Z_48, so x and x + 12*(1,1,1,1,...) are both
        // solutions; weight-4 functionals must still be determined.
        let modulus = 48u64;
        let n = 7usize;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(47);
        let planted: Vec<u64> = (0..n).map(|_| rng.gen_range(0..modulus)).collect();
        let mut sys = ModSystem::new(modulus, n);
        let mut subsets_seen = std::collections::BTreeSet::new();
        // all 35 weight-4 incidence rows
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let mut coeffs = vec![0u64; n];
                        for idx in [a, b, c, d] {
                            coeffs[idx] = 1;
                        }
                        let rhs = coeffs
                            .iter()
                            .zip(&planted)
                            .fold(0u64, |acc, (&cf, &x)| (acc + cf * x) % modulus);
                        sys.push_row(coeffs.clone(), rhs);
                        subsets_seen.insert(coeffs);
                    }
                }
            }
        }
        assert_eq!(subsets_seen.len(), 35);
        assert_eq!(solve_unique(&sys), SolveOutcome::Underdetermined);
        // every weight-4 functional is pinned to its planted value
        let mut w = vec![0u64; n];
        for idx in [0usize, 2, 4, 6] {
            w[idx] = 1;
        }
        let want = w
            .iter()
            .zip(&planted)
            .fold(0u64, |acc, (&cf, &x)| (acc + cf * x) % modulus);
        assert_eq!(functional_value(&sys, &w).unwrap(), Some(want));
        // single coordinates stay free
        let mut w1 = vec![0u64; n];
        w1[3] = 1;
        assert_eq!(functional_value(&sys, &w1).unwrap(), None);
    }
}
