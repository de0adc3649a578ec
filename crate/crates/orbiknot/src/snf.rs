//! Exact integer linear algebra: Smith normal form and determinants.
//!
//! Pivots are chosen by minimal absolute value, which keeps entries small at
//! the matrix sizes arising from desk-scale diagrams.

pub type Mat = Vec<Vec<i128>>;

/// Result of [`smith`]: the diagonal of the normal form and, when requested,
/// the accumulated column transform `Q` with `A·Q = P⁻¹·D`, so solutions of
/// `A·x = 0` are `x = Q·y` for `y` solving the diagonal system.
pub struct Smith {
    pub diag: Vec<i128>,
    pub q: Option<Mat>,
    pub rows: usize,
    pub cols: usize,
}

fn identity(n: usize) -> Mat {
    let mut m = vec![vec![0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// Smith normal form by row/column reduction with min-abs pivoting.
pub fn smith(input: &Mat, want_q: bool) -> Smith {
    let rows = input.len();
    let cols = if rows == 0 { 0 } else { input[0].len() };
    let mut a = input.clone();
    let mut q = if want_q { Some(identity(cols)) } else { None };

    let steps = rows.min(cols);
    for k in 0..steps {
        loop {
            // locate min-abs nonzero pivot in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            let mut best = i128::MAX;
            for i in k..rows {
                for j in k..cols {
                    let v = a[i][j].abs();
                    if v != 0 && v < best {
                        best = v;
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(a, q, rows, cols);
            };
            a.swap(k, pi);
            if pj != k {
                swap_cols(&mut a, k, pj);
                if let Some(q) = q.as_mut() {
                    swap_cols(q, k, pj);
                }
            }
            if a[k][k] < 0 {
                negate_col(&mut a, k);
                if let Some(q) = q.as_mut() {
                    negate_col(q, k);
                }
            }
            let p = a[k][k];
            let mut clean = true;
            for i in k + 1..rows {
                let f = a[i][k].div_euclid(p);
                if f != 0 {
                    for j in 0..cols {
                        a[i][j] -= f * a[k][j];
                    }
                }
                if a[i][k] != 0 {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let f = a[k][j].div_euclid(p);
                if f != 0 {
                    add_col(&mut a, j, k, -f);
                    if let Some(q) = q.as_mut() {
                        add_col(q, j, k, -f);
                    }
                }
                if a[k][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility fix-up: pull a non-divisible entry into row k
            let p = a[k][k];
            let mut fixed = true;
            'outer: for i in k + 1..rows {
                for j in k + 1..cols {
                    if a[i][j] % p != 0 {
                        for jj in 0..cols {
                            let v = a[i][jj];
                            a[k][jj] += v;
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    finish(a, q, rows, cols)
}

fn finish(a: Mat, q: Option<Mat>, rows: usize, cols: usize) -> Smith {
    let mut diag = Vec::new();
    for k in 0..rows.min(cols) {
        diag.push(a[k][k].abs());
    }
    Smith {
        diag,
        q,
        rows,
        cols,
    }
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_col(m: &mut Mat, j: usize) {
    for row in m.iter_mut() {
        row[j] = -row[j];
    }
}

fn add_col(m: &mut Mat, dst: usize, src: usize, f: i128) {
    for row in m.iter_mut() {
        row[dst] += f * row[src];
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det(input: &Mat) -> i128 {
    let n = input.len();
    if n == 0 {
        return 1;
    }
    assert!(input.iter().all(|r| r.len() == n), "det needs a square matrix");
    let mut a = input.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Elementary divisors of a diagonal list: gcd/lcm sweep until the chain
/// divisibility condition holds. Used to merge per-piece torsion data.
pub fn normalize_divisors(mut d: Vec<i128>) -> Vec<i128> {
    use num_integer::Integer;
    d.retain(|&x| x != 1);
    let n = d.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (d[i], d[j]);
                if a != 0 && b % a == 0 {
                    continue;
                }
                let g = a.gcd(&b);
                let l = if g == 0 { 0 } else { a / g * b };
                d[i] = g;
                d[j] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    d.retain(|&x| x != 1);
    d.sort_unstable_by(|a, b| match (a, b) {
        (0, 0) => std::cmp::Ordering::Equal,
        (0, _) => std::cmp::Ordering::Greater,
        (_, 0) => std::cmp::Ordering::Less,
        _ => a.cmp(b),
    });
    d
}
