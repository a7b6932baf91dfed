//! Smith normal form over the integers.
//!
//! Only the column transform is tracked: for `D = U A V` the cokernel
//! `Z^n / rowspace(A)` is identified with `Z^n / rowspace(D)` through
//! `v ↦ v V`, which is all the downstream code needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries, positive and successively dividing.
    pub diag: Vec<BigInt>,
    /// Column transform, `cols × cols`.
    pub v: Vec<Vec<BigInt>>,
    /// Inverse of `v`.
    pub v_inv: Vec<Vec<BigInt>>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Invariant factors of the cokernel `Z^cols / rowspace`, with the
    /// trivial (unit) ones dropped, together with the free rank.
    pub fn cokernel(&self) -> (Vec<BigInt>, usize) {
        let tors = self.diag.iter().filter(|d| !d.is_one()).cloned().collect();
        (tors, self.cols - self.diag.len())
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn smith(a: &[Vec<BigInt>], cols: usize) -> Smith {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let rows = m.len();
    for r in &m {
        assert_eq!(r.len(), cols, "ragged matrix");
    }
    let mut v = identity(cols);
    let mut v_inv = identity(cols);
    let mut diag = Vec::new();

    // column ops mirrored on v (columns) and v_inv (rows)
    let col_axpy = |m: &mut Vec<Vec<BigInt>>,
                    v: &mut Vec<Vec<BigInt>>,
                    vi: &mut Vec<Vec<BigInt>>,
                    j: usize,
                    t: usize,
                    q: &BigInt| {
        // col_j -= q * col_t
        for row in m.iter_mut() {
            if !row[t].is_zero() {
                let d = &row[t] * q;
                row[j] -= d;
            }
        }
        for row in v.iter_mut() {
            if !row[t].is_zero() {
                let d = &row[t] * q;
                row[j] -= d;
            }
        }
        // inverse: row_t += q * row_j
        let (rt, rj) = if t < j {
            let (lo, hi) = vi.split_at_mut(j);
            (&mut lo[t], &hi[0])
        } else {
            let (lo, hi) = vi.split_at_mut(t);
            (&mut hi[0], &lo[j])
        };
        for (x, y) in rt.iter_mut().zip(rj.iter()) {
            if !y.is_zero() {
                *x += y * q;
            }
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // choose the smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() {
                    match best {
                        Some((bi, bj)) if m[bi][bj].magnitude() <= m[i][j].magnitude() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        if pj != t {
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            v_inv.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    let (top, bot) = m.split_at_mut(i);
                    let pr = &top[t];
                    for (x, y) in bot[0].iter_mut().zip(pr.iter()).skip(t) {
                        if !y.is_zero() {
                            *x -= y * &q;
                        }
                    }
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    col_axpy(&mut m, &mut v, &mut v_inv, j, t, &q);
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !m[i][t].is_zero() && m[i][t].magnitude() < m[best.0][best.1].magnitude() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !m[t][j].is_zero() && m[t][j].magnitude() < m[best.0][best.1].magnitude() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    m.swap(t, best.0);
                } else if best.1 != t {
                    let j = best.1;
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    v_inv.swap(t, j);
                }
                continue;
            }
            // divisibility of the trailing block
            let mut bad_row = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !m[i][j].is_zero() && !(&m[i][j] % &m[t][t]).is_zero() {
                        bad_row = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    let (top, bot) = m.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(bot[0].iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }

        if m[t][t].is_negative() {
            for row in m.iter_mut() {
                row[t] = -row[t].clone();
            }
            for row in v.iter_mut() {
                row[t] = -row[t].clone();
            }
            for x in v_inv[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diag.push(m[t][t].clone());
        t += 1;
    }

    Smith {
        rows,
        cols,
        diag,
        v,
        v_inv,
    }
}
