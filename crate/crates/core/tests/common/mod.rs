//! Shared helpers for the integration tests: seeded random diagrams and
//! independent face counts straight from PD labels.

#![allow(dead_code)]

use std::collections::HashMap;

use knotplate::catalog::braid_closure;
use knotplate::diagram::Diagram;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Random braid closures on 2 to 4 strands with 2 to 10 letters, every
/// generator used at least twice. Same seed, same list.
pub fn random_diagrams(count: usize, seed: u64) -> Vec<(Vec<i32>, Diagram)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let strands: usize = rng.gen_range(2..=4);
        let len: usize = rng.gen_range(2..=10);
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        if (1..strands as i32).any(|g| word.iter().filter(|x| x.abs() == g).count() < 2) {
            continue;
        }
        let Ok(d) = braid_closure(strands, &word) else {
            continue;
        };
        if d.ensure_valid().is_ok() {
            out.push((word, d));
        }
    }
    out
}

/// Face sizes of a diagram from its PD labels alone: leaving a crossing
/// along slot `i`, follow the arc to its other end `j` and leave next along
/// slot `j + 1` of that crossing.
pub fn face_sizes(d: &Diagram) -> Vec<usize> {
    let xs = d.crossings();
    let mut ends: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in xs.iter().enumerate() {
        for (i, &l) in x.arcs.iter().enumerate() {
            ends.entry(l).or_default().push((c, i));
        }
    }
    let other = |c: usize, i: usize| {
        let e = &ends[&xs[c].arcs[i]];
        if e[0] == (c, i) {
            e[1]
        } else {
            e[0]
        }
    };
    let mut seen = vec![false; 4 * xs.len()];
    let mut sizes = Vec::new();
    for start in 0..4 * xs.len() {
        if seen[start] {
            continue;
        }
        let mut cur = start;
        let mut n = 0;
        while !seen[cur] {
            seen[cur] = true;
            n += 1;
            let (c, i) = other(cur / 4, cur % 4);
            cur = 4 * c + (i + 1) % 4;
        }
        sizes.push(n);
    }
    sizes
}

/// `(E, T)`: size of the longest face, and bigons other than that face.
pub fn exterior_and_bigons(d: &Diagram) -> (usize, usize) {
    let sizes = face_sizes(d);
    let e = *sizes.iter().max().unwrap();
    let bigons = sizes.iter().filter(|&&s| s == 2).count();
    (e, if e == 2 { bigons - 1 } else { bigons })
}

/// Whether every component passes both over and under somewhere, which is
/// when both lids of the template are discs.
pub fn lids_are_discs(d: &Diagram) -> bool {
    d.oriented_components()
        .unwrap()
        .iter()
        .all(|c| c.iter().any(|p| p.is_over()) && c.iter().any(|p| !p.is_over()))
}

/// Least-squares line through `(x, y)`; returns the coefficient of determination.
pub fn r_squared(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - icept - slope * x).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    1.0 - ss_res / ss_tot
}

/// Rotations of `w` and of its inverse, as generator-exponent pairs.
pub fn cyclic_variants(w: &[(usize, i32)]) -> Vec<Vec<(usize, i32)>> {
    let inv: Vec<(usize, i32)> = w.iter().rev().map(|&(g, e)| (g, -e)).collect();
    let mut out = Vec::new();
    for v in [w.to_vec(), inv] {
        for k in 0..v.len() {
            let mut r = v[k..].to_vec();
            r.extend_from_slice(&v[..k]);
            out.push(r);
        }
    }
    out
}
