//! Independent oracles used by the integration tests.

#![allow(dead_code)]

use hyperlap_core::Hypergraph;
use nalgebra::DMatrix;

/// Line-graph adjacency by comparing every pair of hyperlinks directly.
pub fn brute_line_adjacency(h: &Hypergraph) -> DMatrix<i64> {
    let l = h.link_count();
    let mut a = DMatrix::zeros(l, l);
    for i in 0..l {
        for j in 0..l {
            if i != j {
                let shared = h.link(i).iter().filter(|x| h.link(j).contains(x)).count();
                a[(i, j)] = shared as i64;
            }
        }
    }
    a
}

/// Linearity through the community side: no two communities share more
/// than one individual.
pub fn linear_by_widths(h: &Hypergraph) -> bool {
    (0..h.node_count()).all(|a| (a + 1..h.node_count()).all(|b| h.overlapping_width(a, b).unwrap() <= 1))
}

/// Cyclic Jacobi eigenvalue iteration for small symmetric matrices.
pub fn jacobi_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut a = m.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    values.sort_by(f64::total_cmp);
    values
}

pub fn to_f64(m: &DMatrix<i64>) -> DMatrix<f64> {
    m.map(|x| x as f64)
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}
