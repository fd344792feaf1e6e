//! The degree-one space t¹ = span{t_α} ⊕ span{τ(h)}, Bethe and Gaudin
//! Hamiltonians, and the Weyl group action on t¹.

pub mod chain;
pub mod degenerate;
pub mod limit;
pub mod type_a;

use serde::Serialize;

use crate::arrangement::TorusPoint;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, FieldScalar};
use crate::rootsys::{IntVec, RootSystem};

pub use limit::{limit_subspace, recover_data, Recovered, XPoint};

/// Coordinates of t¹: positive roots (integer vectors over a lattice basis)
/// followed by τ of the dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOne {
    pub roots: Vec<IntVec>,
    pub rank: usize,
}

pub type HVec = Vec<FieldScalar>;

impl DegreeOne {
    pub fn of(rs: &RootSystem) -> Self {
        DegreeOne { roots: rs.positive_roots().to_vec(), rank: rs.rank() }
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn zero(&self) -> HVec {
        vec![FieldScalar::zero(); self.dim()]
    }

    pub fn t(&self, k: usize) -> HVec {
        let mut v = self.zero();
        v[k] = FieldScalar::one();
        v
    }

    pub fn tau(&self, h: &[FieldScalar]) -> HVec {
        let mut v = self.zero();
        v[self.roots.len()..].clone_from_slice(h);
        v
    }

    pub fn tau_part<'a>(&self, v: &'a [FieldScalar]) -> &'a [FieldScalar] {
        &v[self.roots.len()..]
    }

    /// c_Φ = Σ_{α>0} t_α.
    pub fn c_phi(&self) -> HVec {
        let mut v = self.zero();
        for x in v.iter_mut().take(self.roots.len()) {
            *x = FieldScalar::one();
        }
        v
    }

    /// δ(h) = τ(h) − ½ Σ α(h) t_α.
    pub fn delta(&self, h: &[FieldScalar]) -> HVec {
        let mut v = self.tau(h);
        let half = FieldScalar::frac(1, 2);
        for (k, a) in self.roots.iter().enumerate() {
            v[k] = -(&half * &RootSystem::pair_field(a, h));
        }
        v
    }

    pub fn coweight(&self, i: usize) -> Vec<FieldScalar> {
        (0..self.rank).map(|j| FieldScalar::from_int(i64::from(i == j))).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self.roots.iter().map(|r| format!("t{r:?}")).collect();
        out.extend((1..=self.rank).map(|i| format!("tau(h{i})")));
        out
    }

    fn check_regular(&self, c: &TorusPoint) -> Result<Vec<FieldScalar>> {
        self.roots
            .iter()
            .map(|a| {
                let u = c.character(a);
                if u.is_one() {
                    Err(Error::NotRegular(format!("{a:?}")))
                } else {
                    Ok(u)
                }
            })
            .collect()
    }

    /// BH(C,h) = τ(h) − Σ_{α>0} e^α(C)/(e^α(C)−1) α(h) t_α.
    pub fn bethe_hamiltonian(&self, c: &TorusPoint, h: &[FieldScalar]) -> Result<HVec> {
        let us = self.check_regular(c)?;
        let mut v = self.tau(h);
        for (k, (a, u)) in self.roots.iter().zip(us).enumerate() {
            let coef = u.checked_div(&(&u - &FieldScalar::one()))?;
            v[k] = -(&coef * &RootSystem::pair_field(a, h));
        }
        Ok(v)
    }

    /// δ(h) − ½ Σ (e^α+1)/(e^α−1) α(h) t_α; equal to the form above.
    pub fn bethe_hamiltonian_delta_form(&self, c: &TorusPoint, h: &[FieldScalar]) -> Result<HVec> {
        let us = self.check_regular(c)?;
        let mut v = self.delta(h);
        let half = FieldScalar::frac(1, 2);
        for (k, (a, u)) in self.roots.iter().zip(us).enumerate() {
            let one = FieldScalar::one();
            let coef = (&u + &one).checked_div(&(&u - &one))?;
            v[k] -= &(&(&half * &coef) * &RootSystem::pair_field(a, h));
        }
        Ok(v)
    }

    pub fn bethe_subspace(&self, c: &TorusPoint) -> Result<Subspace> {
        let rows = (0..self.rank).map(|i| self.bethe_hamiltonian(c, &self.coweight(i))).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_rows(rows, self.dim()))
    }

    /// H(h,χ) = Σ α(h)/α(χ) t_α.
    pub fn gaudin_hamiltonian(&self, chi: &[FieldScalar], h: &[FieldScalar]) -> Result<HVec> {
        let mut v = self.zero();
        for (k, a) in self.roots.iter().enumerate() {
            let ac = RootSystem::pair_field(a, chi);
            if ac.is_zero() {
                return Err(Error::SingularChi(format!("{a:?}")));
            }
            v[k] = RootSystem::pair_field(a, h).checked_div(&ac)?;
        }
        Ok(v)
    }

    pub fn gaudin_subspace(&self, chi: &[FieldScalar]) -> Result<Subspace> {
        let rows = (0..self.rank).map(|i| self.gaudin_hamiltonian(chi, &self.coweight(i))).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_rows(rows, self.dim()))
    }
}

/// A subspace of t¹, stored as the nonzero rows of its RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: ExactMatrix,
}

impl Subspace {
    pub fn from_rows(rows: Vec<HVec>, dim: usize) -> Self {
        Subspace { basis: ExactMatrix::from_rows(rows, dim).row_basis() }
    }

    pub fn from_matrix(m: &ExactMatrix) -> Self {
        Subspace { basis: m.row_basis() }
    }

    pub fn rref(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.ncols()
    }

    pub fn contains(&self, v: &[FieldScalar]) -> bool {
        self.basis.contains_row(v)
    }

    /// Rows as strings, for hashing and serialization.
    pub fn key(&self) -> Vec<Vec<String>> {
        self.basis.rows().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

/// Candidate formulas for w·τ(h); N(w) = Φ⁺ ∩ wΦ⁻.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TauAction {
    /// τ(h) − Σ_{α∈N(w)} α(h) t_α
    FixedH,
    /// τ(wh) − Σ_{α∈N(w)} α(h) t_α
    ShiftedH,
    /// τ(wh) − Σ_{α∈N(w)} α(wh) t_α
    Contragredient,
}

impl TauAction {
    pub const ALL: [TauAction; 3] = [TauAction::FixedH, TauAction::ShiftedH, TauAction::Contragredient];
    pub const SELECTED: TauAction = TauAction::Contragredient;
}

/// w·v with w·t_α = t_{|wα|} and the chosen τ-variant.
pub fn w_action(rs: &RootSystem, w: usize, v: &[FieldScalar], variant: TauAction) -> Result<HVec> {
    let d = DegreeOne::of(rs);
    let wg = rs.weyl()?;
    let p = rs.num_positive();
    let mut out = d.zero();
    for k in 0..p {
        if !v[k].is_zero() {
            let img = rs.abs_index(wg.act_root(w, k));
            out[img] += &v[k];
        }
    }
    let h = d.tau_part(v);
    if h.iter().all(|x| x.is_zero()) {
        return Ok(out);
    }
    let wh = rs.weyl_action_on_h_field(w, h)?;
    let (tau_h, pair_h) = match variant {
        TauAction::FixedH => (h.to_vec(), h.to_vec()),
        TauAction::ShiftedH => (wh.clone(), h.to_vec()),
        TauAction::Contragredient => (wh.clone(), wh),
    };
    for (slot, x) in out[p..].iter_mut().zip(&tau_h) {
        *slot += x;
    }
    for k in rs.inversion_set(w)? {
        out[k] -= &RootSystem::pair_field(&rs.root(k), &pair_h);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct TauActionCheck {
    pub variant: TauAction,
    pub group_law: bool,
    pub delta_equivariant: bool,
    pub delta_fixed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauActionSelection {
    pub checks: Vec<TauActionCheck>,
    pub selected: Option<TauAction>,
}

/// Tests each variant for the group law (w₁w₂)·v = w₁·(w₂·v),
/// δ-equivariance w·δ(h) = δ(wh) and literal δ-invariance w·δ(h) = δ(h), on
/// all basis vectors and all pairs of group elements; selects the first
/// variant satisfying the first two.
pub fn select_tau_action(rs: &RootSystem) -> Result<TauActionSelection> {
    let d = DegreeOne::of(rs);
    let wg = rs.weyl()?;
    let basis: Vec<HVec> = (0..d.dim()).map(|k| d.t(k)).collect();
    let mut checks = Vec::new();
    for variant in TauAction::ALL {
        let mut group_law = true;
        'outer: for w1 in 0..wg.order() {
            for w2 in 0..wg.order() {
                let w12 = wg.compose(w1, w2);
                for v in &basis[d.num_roots()..] {
                    let lhs = w_action(rs, w12, v, variant)?;
                    let rhs = w_action(rs, w1, &w_action(rs, w2, v, variant)?, variant)?;
                    if lhs != rhs {
                        group_law = false;
                        break 'outer;
                    }
                }
            }
        }
        let mut delta_equivariant = true;
        let mut delta_fixed = true;
        for w in 0..wg.order() {
            for i in 0..rs.rank() {
                let h = d.coweight(i);
                let img = w_action(rs, w, &d.delta(&h), variant)?;
                delta_fixed &= img == d.delta(&h);
                delta_equivariant &= img == d.delta(&rs.weyl_action_on_h_field(w, &h)?);
            }
        }
        checks.push(TauActionCheck { variant, group_law, delta_equivariant, delta_fixed });
    }
    let selected = checks.iter().find(|c| c.group_law && c.delta_equivariant).map(|c| c.variant);
    Ok(TauActionSelection { checks, selected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldScalar as F;

    #[test]
    fn bethe_examples() {
        let a1 = RootSystem::build("A1").unwrap();
        let d = DegreeOne::of(&a1);
        let c = TorusPoint::from_ints(&[2]).unwrap();
        assert_eq!(d.bethe_hamiltonian(&c, &[F::one()]).unwrap(), vec![F::from_int(-2), F::one()]);
        assert!(d.bethe_hamiltonian(&c, &[F::zero()]).unwrap().iter().all(|x| x.is_zero()));
        let m = TorusPoint::from_ints(&[-1]).unwrap();
        assert_eq!(d.bethe_hamiltonian(&m, &[F::one()]).unwrap(), vec![F::frac(-1, 2), F::one()]);
        assert!(matches!(d.bethe_hamiltonian(&TorusPoint::identity(1), &[F::one()]), Err(Error::NotRegular(_))));

        let a2 = RootSystem::build("A2").unwrap();
        let d = DegreeOne::of(&a2);
        let c = TorusPoint::from_ints(&[2, 3]).unwrap();
        let bh = d.bethe_hamiltonian(&c, &d.coweight(0)).unwrap();
        assert_eq!(bh[2], F::frac(-6, 5));
        assert_eq!(bh, d.bethe_hamiltonian_delta_form(&c, &d.coweight(0)).unwrap());
        assert_eq!(d.bethe_subspace(&c).unwrap().dim(), 2);
    }

    #[test]
    fn gaudin_examples() {
        let a2 = RootSystem::build("A2").unwrap();
        let d = DegreeOne::of(&a2);
        let chi = vec![F::one(), F::one()];
        let h1 = d.gaudin_hamiltonian(&chi, &d.coweight(0)).unwrap();
        assert_eq!(h1, vec![F::one(), F::zero(), F::frac(1, 2), F::zero(), F::zero()]);
        let chi = vec![F::from_int(3), F::from_int(-5)];
        assert_eq!(d.gaudin_hamiltonian(&chi, &chi).unwrap(), d.c_phi());
        assert!(d.gaudin_subspace(&chi).unwrap().contains(&d.c_phi()));
        assert!(matches!(d.gaudin_hamiltonian(&[F::one(), F::from_int(-1)], &chi), Err(Error::SingularChi(_))));
    }

    #[test]
    fn contragredient_is_selected() {
        for label in ["A1", "A2", "B2", "G2", "A3"] {
            let rs = RootSystem::build(label).unwrap();
            let sel = select_tau_action(&rs).unwrap();
            assert_eq!(sel.selected, Some(TauAction::SELECTED), "{label}");
        }
    }
}
