//! Integer lattices: Smith and Hermite normal forms, saturation and torsion.

use num_integer::Integer;
use serde::Serialize;

use crate::arrangement::TorusPoint;
use crate::error::Result;
use crate::exact::{FieldScalar, Rational};

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// V⁻¹, kept alongside V.
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries d₁ | d₂ | ⋯.
    pub fn divisors(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|i| self.d[i][i])
            .take_while(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let m = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..m).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }
    /// row_i += k·row_j
    fn add_row(&mut self, i: usize, j: usize, k: i64) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x += k * y;
            }
        }
    }
    /// col_i += k·col_j
    fn add_col(&mut self, i: usize, j: usize, k: i64) {
        for m in [&mut self.a, &mut self.v] {
            for r in m.iter_mut() {
                r[i] += k * r[j];
            }
        }
        let src = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(src) {
            *x -= k * y;
        }
    }
    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// U·M·V = D with U, V unimodular and d₁ | d₂ | ⋯, by elementary operations
/// with smallest-pivot selection.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = Work { a: m.clone(), u: identity(rows), v: identity(cols), v_inv: identity(cols) };
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = w.a[i][j];
                    if x != 0 && best.map_or(true, |(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = Integer::div_floor(&w.a[i][t], &p);
                if q != 0 {
                    w.add_row(i, t, -q);
                }
                clean &= w.a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&w.a[t][j], &p);
                if q != 0 {
                    w.add_col(j, t, -q);
                }
                clean &= w.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
    }
    Snf { u: w.u, d: w.a, v: w.v, v_inv: w.v_inv }
}

/// Row-style Hermite normal form with zero rows removed: positive pivots,
/// entries above a pivot reduced into [0, pivot).
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a: IntMatrix = m.clone();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (r..a.len()).filter(|&i| a[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, piv);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c] != 0 {
                    let q = Integer::div_floor(&a[i][c], &a[r][c]);
                    let src = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(src) {
                        *x -= q * y;
                    }
                    done &= a[i][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && a[r][c] != 0 {
            if a[r][c] < 0 {
                for x in a[r].iter_mut() {
                    *x = -*x;
                }
            }
            for i in 0..r {
                let q = Integer::div_floor(&a[i][c], &a[r][c]);
                if q != 0 {
                    let src = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(src) {
                        *x -= q * y;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Basis (in HNF) of {v ∈ ℤⁿ : kv ∈ rowspace_ℤ(M) for some k ≥ 1}.
pub fn saturation(m: &IntMatrix) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    let snf = smith_normal_form(m);
    let r = snf.rank();
    hermite_normal_form(&snf.v_inv[..r].to_vec())
}

/// Does `v` lie in the integer row span of the HNF basis `h`?
pub fn in_lattice(h: &IntMatrix, v: &[i64]) -> bool {
    let mut rest = v.to_vec();
    for row in h {
        let c = row.iter().position(|&x| x != 0).unwrap();
        if rest[c] % row[c] != 0 {
            return false;
        }
        let q = rest[c] / row[c];
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= q * y;
        }
    }
    rest.iter().all(|&x| x == 0)
}

/// Phases θ ∈ [0,1)ⁿ, one per character of the torsion of ℤⁿ/rowspace(M),
/// restricted to the subgroup vanishing on the free directions; e^{2πiθ} is a
/// representative of the corresponding component of {C : e^λ(C) = 1, λ ∈ M}.
pub fn torsion_phases(m: &IntMatrix, n: usize) -> Vec<Vec<Rational>> {
    if m.is_empty() {
        return vec![vec![Rational::from_integer(0.into()); n]];
    }
    let snf = smith_normal_form(m);
    let divs = snf.divisors();
    let mut out = Vec::new();
    let total: i64 = divs.iter().product();
    for code in 0..total {
        // mixed radix, last divisor varying fastest
        let mut psi = vec![Rational::from_integer(0.into()); n];
        let mut rem = code;
        for k in (0..divs.len()).rev() {
            psi[k] = Rational::new((rem % divs[k]).into(), divs[k].into());
            rem /= divs[k];
        }
        let theta: Vec<Rational> = (0..n)
            .map(|i| {
                let s: Rational = (0..n).map(|k| Rational::from_integer(snf.v[i][k].into()) * &psi[k]).sum();
                frac_part(&s)
            })
            .collect();
        out.push(theta);
    }
    out
}

pub fn frac_part(x: &Rational) -> Rational {
    x - x.floor()
}

/// Component representatives as points with coordinates in ℚ(ζ_N).
pub fn torsion_components(m: &IntMatrix, n: usize, order: u32) -> Result<Vec<TorusPoint>> {
    torsion_phases(m, n).iter().map(|th| TorusPoint::from_phases(th, order)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionGroup {
    pub divisors: Vec<u64>,
}

impl TorsionGroup {
    pub fn from_snf(snf: &Snf) -> Self {
        TorsionGroup { divisors: snf.divisors().into_iter().filter(|&d| d > 1).map(|d| d as u64).collect() }
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Generators as primitive roots of unity of orders d_i.
    pub fn generators(&self, order: u32) -> Result<Vec<FieldScalar>> {
        self.divisors
            .iter()
            .map(|&d| FieldScalar::exp_phase(&Rational::new(1.into(), (d as i64).into()), order))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(mat_mul(&mat_mul(&s.u, m), &s.v), s.d);
        assert_eq!(mat_mul(&s.v, &s.v_inv), identity(s.v.len()));
    }

    #[test]
    fn snf_examples() {
        let b2 = vec![vec![1, 0], vec![1, 2]];
        check(&b2);
        assert_eq!(smith_normal_form(&b2).d, vec![vec![1, 0], vec![0, 2]]);
        let g2 = vec![vec![0, 1], vec![3, 1]];
        check(&g2);
        assert_eq!(smith_normal_form(&g2).d, vec![vec![1, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&identity(3)).d, identity(3));
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturation(&vec![vec![1, 0], vec![1, 2]]), identity(2));
        assert_eq!(saturation(&vec![vec![2, 0]]), vec![vec![1, 0]]);
        assert_eq!(saturation(&vec![vec![1, 1], vec![0, 1]]), identity(2));
        let h = saturation(&vec![vec![2, 4, 0]]);
        assert_eq!(h, vec![vec![1, 2, 0]]);
        assert!(in_lattice(&h, &[3, 6, 0]));
        assert!(!in_lattice(&h, &[1, 0, 0]));
    }

    #[test]
    fn torsion_examples() {
        let b2 = torsion_components(&vec![vec![1, 0], vec![1, 2]], 2, 6).unwrap();
        assert_eq!(b2.len(), 2);
        let g2 = torsion_components(&vec![vec![0, 1], vec![3, 1]], 2, 6).unwrap();
        assert_eq!(g2.len(), 3);
        assert_eq!(torsion_components(&identity(2), 2, 6).unwrap().len(), 1);
        assert!(torsion_components(&vec![vec![4, 0]], 2, 6).is_err());
    }
}
