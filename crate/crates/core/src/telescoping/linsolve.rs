//! Fraction-free elimination for homogeneous linear systems over ℚ[vars].

use crate::arith::gcd::gcd;
use crate::arith::Polynomial;

fn row_content(row: &[Polynomial]) -> Polynomial {
    let mut g = Polynomial::zero();
    for e in row {
        if e.is_zero() {
            continue;
        }
        g = gcd(&g, e);
        if g.is_one() {
            break;
        }
    }
    g
}

fn reduce_row(row: &mut [Polynomial]) {
    let g = row_content(row);
    if !g.is_zero() && !g.is_one() {
        for e in row.iter_mut() {
            *e = e.div_exact(&g).expect("content divides");
        }
    }
}

/// Fraction-free Gauss-Jordan elimination. On return every pivot row carries
/// the same pivot value, which is also returned.
fn echelon(mut rows: Vec<Vec<Polynomial>>, ncols: usize) -> (Vec<Vec<Polynomial>>, Vec<usize>, Polynomial) {
    rows.retain(|r| r.iter().any(|e| !e.is_zero()));
    let mut pivots = Vec::new();
    let mut prev = Polynomial::one();
    let mut done = 0;
    for col in 0..ncols {
        if done == rows.len() {
            break;
        }
        let Some(best) = (done..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| (rows[i][col].num_terms(), rows[i][col].total_degree()))
        else {
            continue;
        };
        rows.swap(done, best);
        let pivot_row = rows[done].clone();
        let p = pivot_row[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == done {
                continue;
            }
            let e = row[col].clone();
            for (x, q) in row.iter_mut().zip(&pivot_row) {
                let v = &(&p * &*x) - &(&e * q);
                *x = v.div_exact(&prev).expect("fraction-free step divides");
            }
        }
        prev = p;
        pivots.push(col);
        done += 1;
    }
    rows.truncate(pivots.len());
    (rows, pivots, prev)
}

/// A polynomial vector `v` with `M v = 0` and `v[j] != 0` for some `j` in
/// `wanted`, if one exists.
pub fn nullspace_vector(rows: Vec<Vec<Polynomial>>, ncols: usize, wanted: &[usize]) -> Option<Vec<Polynomial>> {
    let (rows, pivots, det) = echelon(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    // prefer free columns among the wanted ones
    let mut order: Vec<usize> = free.iter().copied().filter(|c| wanted.contains(c)).collect();
    order.extend(free.iter().copied().filter(|c| !wanted.contains(c)));
    for f in order {
        let mut v = vec![Polynomial::zero(); ncols];
        v[f] = det.clone();
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = -&row[f];
        }
        if wanted.iter().any(|&j| !v[j].is_zero()) {
            reduce_row(&mut v);
            return Some(v);
        }
    }
    None
}
