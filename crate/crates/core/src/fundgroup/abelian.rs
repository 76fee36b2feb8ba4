use std::fmt;

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;

/// `Z^free_rank` plus the cyclic torsion summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Each divides the next; all greater than 1.
    pub torsion: Vec<u128>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Diagonal of an integer matrix under unimodular row and column operations,
/// nonzero entries only, normalized into a divisibility chain.
pub fn smith_diagonal(mut a: Vec<Vec<i128>>, cols: usize) -> Vec<u128> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        let p = a[t][t];
        for i in t + 1..rows {
            let q = a[i][t] / p;
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / p;
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if clean {
            diag.push(p.unsigned_abs());
            t += 1;
        }
    }
    // gcd/lcm sweep gives the divisibility chain
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (diag[i], diag[j]);
            let g = gcd(x, y);
            diag[i] = g;
            diag[j] = x / g * y;
        }
    }
    diag
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let cols = p.generator_count();
    let m: Vec<Vec<i128>> = p
        .exponent_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let diag = smith_diagonal(m, cols);
    AbelianInvariants {
        free_rank: cols - diag.len(),
        torsion: diag.into_iter().filter(|&d| d > 1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab(text: &str) -> AbelianInvariants {
        abelianization(&Presentation::parse_text(text).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(ab("gens: b c\nb c b c' b' c'\n").to_string(), "Z");
        assert_eq!(ab("gens: x y\nx y x' y'\n").to_string(), "Z^2");
        assert_eq!(ab("gens: x\nx x x\n").to_string(), "Z/3");
        assert_eq!(ab("gens: x y\nx x\ny y y\n").torsion, vec![6]);
        assert_eq!(ab("gens: g\ng\n").to_string(), "0");
    }

    #[test]
    fn chain() {
        // diag(4, 6) -> 2, 12
        assert_eq!(smith_diagonal(vec![vec![4, 0], vec![0, 6]], 2), vec![2, 12]);
    }

    /// |det| of a square integer matrix by fraction-free elimination.
    fn det(mut a: Vec<Vec<i128>>) -> i128 {
        let n = a.len();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                    return 0;
                };
                a.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    proptest! {
        #[test]
        fn product_of_diagonal_is_determinant(v in proptest::collection::vec(-6i128..=6, 9)) {
            let m: Vec<Vec<i128>> = v.chunks(3).map(|c| c.to_vec()).collect();
            let d = det(m.clone());
            let diag = smith_diagonal(m, 3);
            if d == 0 {
                prop_assert!(diag.len() < 3);
            } else {
                prop_assert_eq!(diag.len(), 3);
                prop_assert_eq!(diag.iter().product::<u128>(), d.unsigned_abs());
                prop_assert!(diag[1] % diag[0] == 0 && diag[2] % diag[1] == 0);
            }
        }
    }
}
