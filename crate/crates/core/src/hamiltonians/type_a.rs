//! Type A: the map ψ from the trigonometric degree-one space of gl_n to the
//! rational one of sl_{n+1}, with ψ(Q(C)) = G(0, z₁, …, z_n).

use super::{DegreeOne, HVec, Subspace};
use crate::arrangement::TorusPoint;
use crate::error::{Error, Result};
use crate::exact::FieldScalar;
use crate::rootsys::{IntVec, RootSystem};

/// Source and target data for a fixed n.
#[derive(Clone, Debug)]
pub struct TypeA {
    pub n: usize,
    /// Roots ε_i − ε_j (1 ≤ i < j ≤ n) in ε-coordinates, h in the dual basis.
    pub source: DegreeOne,
    /// Pairs (i, j) of the source roots, 1-based.
    pub pairs: Vec<(usize, usize)>,
    /// A_n with simple roots ε_{k−1} − ε_k, k = 1..n, on indices 0..n.
    pub target: RootSystem,
}

impl TypeA {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        let mut roots = Vec::new();
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let mut r = vec![0; n];
                r[i - 1] = 1;
                r[j - 1] = -1;
                roots.push(r);
                pairs.push((i, j));
            }
        }
        let target = RootSystem::build_with_bound(&format!("A{n}"), usize::MAX)?;
        Ok(TypeA { n, source: DegreeOne { roots, rank: n }, pairs, target })
    }

    /// Accepts only a root system whose Cartan matrix is that of A_n.
    pub fn for_system(rs: &RootSystem) -> Result<Self> {
        let n = rs.rank();
        let expected = RootSystem::build_with_bound(&format!("A{n}"), usize::MAX)?;
        if rs.cartan() != expected.cartan() {
            return Err(Error::UnsupportedLabel(format!("{} is not of type A", rs.label())));
        }
        Self::new(n)
    }

    /// Index of t_{ij}, 0 ≤ i < j ≤ n, among the target's positive roots.
    pub fn target_index(&self, i: usize, j: usize) -> usize {
        let r: IntVec = (0..self.n).map(|k| i64::from(k >= i && k < j)).collect();
        self.target.index_of(&r).expect("ε_i − ε_j is a root")
    }

    /// The diagonal point diag(z₁, …, z_n).
    pub fn point(&self, z: &[FieldScalar]) -> Result<TorusPoint> {
        TorusPoint::new(z.to_vec())
    }

    /// χ = (0, z₁, …, z_n) in the coordinates α_k(χ) = z_{k−1} − z_k.
    pub fn chi(&self, z: &[FieldScalar]) -> Vec<FieldScalar> {
        (0..self.n)
            .map(|k| {
                let prev = if k == 0 { FieldScalar::zero() } else { z[k - 1].clone() };
                &prev - &z[k]
            })
            .collect()
    }

    /// ψ on t¹: t_{ij} ↦ t_{ij} and τ(ε_k) ↦ −Σ_{c<k} t_{ck}.
    pub fn psi(&self, v: &[FieldScalar]) -> Result<HVec> {
        if v.len() != self.source.dim() {
            return Err(Error::Shape(format!("expected {} coordinates", self.source.dim())));
        }
        let td = DegreeOne::of(&self.target);
        let mut out = td.zero();
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            out[self.target_index(i, j)] += &v[k];
        }
        let h = self.source.tau_part(v);
        for (k, c) in (1..=self.n).zip(h) {
            for src in 0..k {
                out[self.target_index(src, k)] -= c;
            }
        }
        Ok(out)
    }

    pub fn bethe_subspace(&self, z: &[FieldScalar]) -> Result<Subspace> {
        self.source.bethe_subspace(&self.point(z)?)
    }

    pub fn psi_subspace(&self, q: &Subspace) -> Result<Subspace> {
        let rows = q.rref().rows().map(|r| self.psi(r)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_rows(rows, DegreeOne::of(&self.target).dim()))
    }

    pub fn gaudin_subspace(&self, z: &[FieldScalar]) -> Result<Subspace> {
        DegreeOne::of(&self.target).gaudin_subspace(&self.chi(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldScalar as F;

    #[test]
    fn psi_examples() {
        let a = TypeA::new(2).unwrap();
        let mut tau1 = a.source.zero();
        tau1[a.source.num_roots()] = F::one();
        let img = a.psi(&tau1).unwrap();
        let mut expected = DegreeOne::of(&a.target).zero();
        expected[a.target_index(0, 1)] = F::from_int(-1);
        assert_eq!(img, expected);

        let t12 = a.source.t(0);
        let mut expected = DegreeOne::of(&a.target).zero();
        expected[a.target_index(1, 2)] = F::one();
        assert_eq!(a.psi(&t12).unwrap(), expected);
    }

    #[test]
    fn psi_of_bethe_is_gaudin() {
        let a = TypeA::new(3).unwrap();
        let z = vec![F::from_int(2), F::frac(-1, 3), F::from_int(5)];
        let q = a.bethe_subspace(&z).unwrap();
        assert_eq!(a.psi_subspace(&q).unwrap(), a.gaudin_subspace(&z).unwrap());
    }

    #[test]
    fn rejects_other_types() {
        assert!(TypeA::for_system(&RootSystem::build("B2").unwrap()).is_err());
        assert!(TypeA::for_system(&RootSystem::build("A2").unwrap()).is_ok());
    }
}
