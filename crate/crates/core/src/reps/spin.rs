//! Operators on (ℚ²)^{⊗n} built from the sl₂ Casimir.

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, FieldScalar};
use crate::hamiltonians::type_a::TypeA;

/// e, f, h on ℚ² with basis (v₊, v₋).
fn sl2() -> [ExactMatrix; 3] {
    let e = ExactMatrix::from_ints(&[vec![0, 1], vec![0, 0]]);
    let f = ExactMatrix::from_ints(&[vec![0, 0], vec![1, 0]]);
    let h = ExactMatrix::from_ints(&[vec![1, 0], vec![0, -1]]);
    [e, f, h]
}

pub fn kron(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let (ar, ac, br, bc) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    let mut m = ExactMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        m.set(i * br + k, j * bc + l, x * y);
                    }
                }
            }
        }
    }
    m
}

pub fn commutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// (Ω, Ω₊, Ω₀, Ω₋) on ℚ² ⊗ ℚ², with Ω₊ = e⊗f, Ω₀ = ½h⊗h, Ω₋ = f⊗e.
pub fn casimir_split() -> (ExactMatrix, ExactMatrix, ExactMatrix, ExactMatrix) {
    let [e, f, h] = sl2();
    let plus = kron(&e, &f);
    let zero = kron(&h, &h).scale(&FieldScalar::frac(1, 2));
    let minus = kron(&f, &e);
    let omega = plus.add(&zero).unwrap().add(&minus).unwrap();
    (omega, plus, zero, minus)
}

/// Insertion of single-slot and two-slot operators into (ℚ²)^{⊗n}; slot 0 is
/// the most significant tensor factor.
#[derive(Clone, Debug)]
pub struct SpinChain {
    pub n: usize,
}

impl SpinChain {
    pub fn new(n: usize) -> Self {
        SpinChain { n }
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn zero(&self) -> ExactMatrix {
        ExactMatrix::zeros(self.dim(), self.dim())
    }

    /// a in slot i.
    pub fn one_slot(&self, a: &ExactMatrix, i: usize) -> ExactMatrix {
        (0..self.n).fold(ExactMatrix::identity(1), |acc, k| {
            if k == i {
                kron(&acc, a)
            } else {
                kron(&acc, &ExactMatrix::identity(2))
            }
        })
    }

    /// a in slot i times b in slot j, i ≠ j.
    pub fn two_slot(&self, a: &ExactMatrix, i: usize, b: &ExactMatrix, j: usize) -> ExactMatrix {
        assert_ne!(i, j);
        self.one_slot(a, i).mul(&self.one_slot(b, j)).unwrap()
    }

    /// Ω^{(ij)}.
    pub fn omega(&self, i: usize, j: usize) -> ExactMatrix {
        let [e, f, h] = sl2();
        let half = FieldScalar::frac(1, 2);
        self.two_slot(&e, i, &f, j)
            .add(&self.two_slot(&f, i, &e, j))
            .unwrap()
            .add(&self.two_slot(&h, i, &h, j).scale(&half))
            .unwrap()
    }

    /// Ω₋^{(ij)}: f in slot i, e in slot j.
    pub fn omega_minus(&self, i: usize, j: usize) -> ExactMatrix {
        let [e, f, _] = sl2();
        self.two_slot(&f, i, &e, j)
    }

    /// θ^{(i)} for θ = c·h.
    pub fn theta(&self, c: &FieldScalar, i: usize) -> ExactMatrix {
        let [_, _, h] = sl2();
        self.one_slot(&h.scale(c), i)
    }

    /// H_i = θ^{(i)}/z_i + Σ_{j≠i} Ω^{(ij)}/(z_i − z_j) − Σ_{j≠i} Ω₋^{(ij)}/z_i.
    pub fn trig_gaudin_ops(&self, z: &[FieldScalar], theta: &FieldScalar) -> Result<Vec<ExactMatrix>> {
        if z.len() != self.n {
            return Err(Error::Shape(format!("{} points for {} slots", z.len(), self.n)));
        }
        for (i, zi) in z.iter().enumerate() {
            if zi.is_zero() {
                return Err(Error::Precondition(format!("z_{} = 0", i + 1)));
            }
            if z[..i].contains(zi) {
                return Err(Error::Precondition(format!("z_{} repeats an earlier point", i + 1)));
            }
        }
        (0..self.n)
            .map(|i| {
                let zi_inv = z[i].inv()?;
                let mut acc = self.theta(theta, i).scale(&zi_inv);
                for j in (0..self.n).filter(|&j| j != i) {
                    let c = (&z[i] - &z[j]).inv()?;
                    acc = acc.add(&self.omega(i, j).scale(&c))?;
                    acc = acc.sub(&self.omega_minus(i, j).scale(&zi_inv))?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Image of v ∈ t¹(gl_n) under t_{ij} ↦ Ω^{(ij)} and
    /// τ(ε_k) ↦ −Σ_{c<k} Ω^{(ck)} + Σ_{j≠k} Ω₋^{(kj)} − θ^{(k)}.
    pub fn holonomy_image(&self, a: &TypeA, v: &[FieldScalar], theta: &FieldScalar) -> Result<ExactMatrix> {
        if a.n != self.n || v.len() != a.source.dim() {
            return Err(Error::Shape("vector does not match the chain".into()));
        }
        let mut acc = self.zero();
        for (k, &(i, j)) in a.pairs.iter().enumerate() {
            if !v[k].is_zero() {
                acc = acc.add(&self.omega(i - 1, j - 1).scale(&v[k]))?;
            }
        }
        for (k, c) in a.source.tau_part(v).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut img = self.theta(theta, k).scale(&FieldScalar::from_int(-1));
            for src in 0..k {
                img = img.sub(&self.omega(src, k))?;
            }
            for j in (0..self.n).filter(|&j| j != k) {
                img = img.add(&self.omega_minus(k, j))?;
            }
            acc = acc.add(&img.scale(c))?;
        }
        Ok(acc)
    }
}

/// Matrices flattened to rows, for span comparisons.
pub fn flatten(ms: &[ExactMatrix]) -> Vec<Vec<FieldScalar>> {
    ms.iter().map(|m| m.rows().flat_map(|r| r.iter().cloned()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldScalar as F;

    #[test]
    fn casimir() {
        let (omega, plus, zero, minus) = casimir_split();
        let swap = ExactMatrix::from_ints(&[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
        assert_eq!(omega, swap.sub(&ExactMatrix::identity(4).scale(&F::frac(1, 2))).unwrap());
        assert_eq!(plus.add(&zero).unwrap().add(&minus).unwrap(), omega);
        assert_eq!(omega.get(0, 0), &F::frac(1, 2));
    }

    #[test]
    fn slot_symmetry() {
        let c = SpinChain::new(3);
        assert_eq!(c.omega(0, 2), c.omega(2, 0));
        assert_ne!(c.omega_minus(0, 2), c.omega_minus(2, 0));
        assert_eq!(c.omega(0, 1), kron(&casimir_split().0, &ExactMatrix::identity(2)));
    }

    #[test]
    fn small_chains_commute() {
        let c = SpinChain::new(1);
        let h = c.trig_gaudin_ops(&[F::from_int(3)], &F::from_int(2)).unwrap();
        assert_eq!(h[0], ExactMatrix::from_rows(vec![vec![F::frac(2, 3), F::zero()], vec![F::zero(), F::frac(-2, 3)]], 2));

        let c = SpinChain::new(2);
        let h = c.trig_gaudin_ops(&[F::one(), F::from_int(2)], &F::zero()).unwrap();
        assert!(commutator(&h[0], &h[1]).unwrap().is_zero());
        assert!(c.trig_gaudin_ops(&[F::one(), F::one()], &F::zero()).is_err());
        assert!(c.trig_gaudin_ops(&[F::zero(), F::one()], &F::zero()).is_err());
    }

    #[test]
    fn bethe_generators_map_to_scaled_hamiltonians() {
        let a = TypeA::new(2).unwrap();
        let c = SpinChain::new(2);
        let z = vec![F::one(), F::from_int(2)];
        let theta = F::frac(1, 2);
        let h = c.trig_gaudin_ops(&z, &theta).unwrap();
        let pt = a.point(&z).unwrap();
        for k in 0..2 {
            let bh = a.source.bethe_hamiltonian(&pt, &a.source.coweight(k)).unwrap();
            let img = c.holonomy_image(&a, &bh, &theta).unwrap();
            assert_eq!(img, h[k].scale(&-&z[k]));
        }
        let mut t12 = a.source.zero();
        t12[0] = F::one();
        assert_eq!(c.holonomy_image(&a, &t12, &theta).unwrap(), c.omega(0, 1));
    }
}
