//! The graded affine Hecke algebra of a root system, elements stored as
//! Σ w·p_w(x) with polynomials to the right of group elements.

use std::collections::BTreeMap;
use std::fmt;

use crate::arrangement::TorusPoint;
use crate::error::{Error, Result};
use crate::exact::{FieldScalar, Poly};
use crate::hamiltonians::DegreeOne;
use crate::rootsys::RootSystem;

pub const DEGREE_CAP: u32 = 4;

/// An element Σ_w w·p_w, zero terms dropped.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HeckeElem {
    terms: BTreeMap<usize, Poly>,
}

impl HeckeElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(w: usize, p: Poly) -> Self {
        let mut e = Self::zero();
        e.add_term(w, p);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&usize, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: usize, p: Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.remove(&w);
        let sum = match entry {
            Some(q) => q.add(&p),
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&w, p) in &other.terms {
            out.add_term(w, p.clone());
        }
        out
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        let mut out = Self::zero();
        for (&w, p) in &self.terms {
            out.add_term(w, p.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&FieldScalar::from_int(-1)))
    }

    pub fn degree(&self) -> u32 {
        self.terms.values().map(Poly::degree).max().unwrap_or(0)
    }
}

impl fmt::Debug for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, p)| format!("w{w}·({p:?})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The algebra for a root system and parameter t, with cross relation
/// s_i·x_h = x_{s_i h}·s_i + sign·t·α_i(h). The adopted sign is +1.
pub struct HeckeAlgebra<'a> {
    rs: &'a RootSystem,
    t: FieldScalar,
    sign: i64,
    /// s_i as a substitution on x_1..x_n (coweight coordinates).
    reflections: Vec<Vec<Poly>>,
}

impl<'a> HeckeAlgebra<'a> {
    pub const ADOPTED_SIGN: i64 = 1;

    pub fn new(rs: &'a RootSystem, t: FieldScalar) -> Result<Self> {
        Self::with_sign(rs, t, Self::ADOPTED_SIGN)
    }

    pub fn with_sign(rs: &'a RootSystem, t: FieldScalar, sign: i64) -> Result<Self> {
        rs.weyl()?;
        let n = rs.rank();
        // s_i x_j = x_j − δ_ij Σ_k A_ik x_k
        let reflections = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut p = Poly::var(n, j);
                        if i == j {
                            let coroot: Vec<FieldScalar> = rs.cartan()[i].iter().map(|&a| FieldScalar::from_int(a)).collect();
                            p = p.sub(&Poly::linear(&coroot));
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        Ok(HeckeAlgebra { rs, t, sign, reflections })
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn t(&self) -> &FieldScalar {
        &self.t
    }

    fn nvars(&self) -> usize {
        self.rs.rank()
    }

    pub fn one(&self) -> HeckeElem {
        HeckeElem::term(0, Poly::one(self.nvars()))
    }

    pub fn group(&self, w: usize) -> HeckeElem {
        HeckeElem::term(w, Poly::one(self.nvars()))
    }

    pub fn scalar(&self, c: FieldScalar) -> HeckeElem {
        HeckeElem::term(0, Poly::constant(self.nvars(), c))
    }

    /// x_h for h in coweight coordinates.
    pub fn x(&self, h: &[FieldScalar]) -> HeckeElem {
        HeckeElem::term(0, Poly::linear(h))
    }

    pub fn poly(&self, p: Poly) -> HeckeElem {
        HeckeElem::term(0, p)
    }

    pub fn act(&self, i: usize, p: &Poly) -> Poly {
        p.substitute(&self.reflections[i])
    }

    /// ∂_i(p) with ∂_i(x_j) = δ_ij and ∂_i(pq) = ∂_i(p) q + (s_i p) ∂_i(q).
    pub fn divided_difference(&self, i: usize, p: &Poly) -> Poly {
        let n = self.nvars();
        let mut out = Poly::zero(n);
        for (m, c) in p.terms() {
            // expand the monomial as x_{v1} x_{v2} ⋯
            let vars: Vec<usize> = m.iter().enumerate().flat_map(|(j, &e)| std::iter::repeat(j).take(e as usize)).collect();
            let mut prefix = Poly::one(n);
            for (k, &v) in vars.iter().enumerate() {
                if v == i {
                    let mut rest = Poly::one(n);
                    for &u in &vars[k + 1..] {
                        rest = rest.mul(&Poly::var(n, u));
                    }
                    out = out.add(&self.act(i, &prefix).mul(&rest).scale(c));
                }
                prefix = prefix.mul(&Poly::var(n, v));
            }
        }
        out
    }

    /// p · w(word) in normal form, via p·s_i = s_i·(s_i p) + sign·t·∂_i(p).
    fn move_right(&self, p: &Poly, word: &[usize]) -> Result<HeckeElem> {
        if p.degree() > DEGREE_CAP {
            return Err(Error::DegreeCap(p.degree()));
        }
        let Some((&i, rest)) = word.split_first() else {
            return Ok(HeckeElem::term(0, p.clone()));
        };
        if p.is_zero() {
            return Ok(HeckeElem::zero());
        }
        let wg = self.rs.weyl()?;
        let si = wg.simple(i);
        let mut out = HeckeElem::zero();
        for (&u, q) in self.move_right(&self.act(i, p), rest)?.terms() {
            out.add_term(wg.compose(si, u), q.clone());
        }
        let d = self.divided_difference(i, p);
        if !d.is_zero() {
            let c = &FieldScalar::from_int(self.sign) * &self.t;
            out = out.add(&self.move_right(&d.scale(&c), rest)?);
        }
        Ok(out)
    }

    /// p · w along an explicit word for w.
    pub fn move_right_along(&self, p: &Poly, word: &[usize]) -> Result<HeckeElem> {
        self.move_right(p, word)
    }

    pub fn mul(&self, a: &HeckeElem, b: &HeckeElem) -> Result<HeckeElem> {
        let wg = self.rs.weyl()?;
        let mut out = HeckeElem::zero();
        for (&w, p) in a.terms() {
            for (&v, q) in b.terms() {
                for (&u, r) in self.move_right(p, wg.word(v))?.terms() {
                    let prod = r.mul(q);
                    if prod.degree() > DEGREE_CAP {
                        return Err(Error::DegreeCap(prod.degree()));
                    }
                    out.add_term(wg.compose(w, u), prod);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, a: &HeckeElem, b: &HeckeElem) -> Result<HeckeElem> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    /// s_α as a group element, α given by its index among positive roots.
    pub fn reflection(&self, k: usize) -> Result<HeckeElem> {
        Ok(self.group(self.rs.reflection(k)?))
    }

    /// Q_h(q) = x_h + t Σ_{α>0} α(h) q^α/(1 − q^α) (s_α − 1).
    pub fn bmo_operator(&self, h: &[FieldScalar], q: &TorusPoint) -> Result<HeckeElem> {
        let mut out = self.x(h);
        let one = FieldScalar::one();
        for k in 0..self.rs.num_positive() {
            let a = self.rs.root(k);
            let ah = RootSystem::pair_field(&a, h);
            if ah.is_zero() {
                continue;
            }
            let u = q.character(&a);
            if u.is_one() {
                return Err(Error::NotRegular(format!("{a:?}")));
            }
            let c = &(&self.t * &ah) * &u.checked_div(&(&one - &u))?;
            out = out.add(&self.reflection(k)?.sub(&self.one()).scale(&c));
        }
        Ok(out)
    }

    /// Linear map t¹ → H with t_α ↦ s_α − 1 and τ(h) ↦ tau_scale·t⁻¹·x_h.
    pub fn holonomy_to_hecke(&self, v: &[FieldScalar], tau_scale: &FieldScalar) -> Result<HeckeElem> {
        if self.t.is_zero() {
            return Err(Error::Precondition("t = 0".into()));
        }
        let d = DegreeOne::of(self.rs);
        if v.len() != d.dim() {
            return Err(Error::Shape(format!("expected {} coordinates", d.dim())));
        }
        let mut out = HeckeElem::zero();
        for (k, c) in v[..d.num_roots()].iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.reflection(k)?.sub(&self.one()).scale(c));
            }
        }
        let h = d.tau_part(v);
        let scale = tau_scale.checked_div(&self.t)?;
        Ok(out.add(&self.x(h).scale(&scale)))
    }

    /// All reduced words of w.
    pub fn reduced_words(&self, w: usize) -> Result<Vec<Vec<usize>>> {
        let wg = self.rs.weyl()?;
        if wg.length(w) == 0 {
            return Ok(vec![vec![]]);
        }
        let mut out = Vec::new();
        for i in 0..self.rs.rank() {
            let v = wg.compose(wg.simple(i), w);
            if wg.length(v) < wg.length(w) {
                for mut word in self.reduced_words(v)? {
                    word.insert(0, i);
                    out.push(word);
                }
            }
        }
        Ok(out)
    }
}

/// Tau scale in the adopted normalisation; the literal reading uses −1.
pub const ADOPTED_TAU_SCALE: i64 = 1;
pub const LITERAL_TAU_SCALE: i64 = -1;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldScalar as F;

    fn alg(rs: &RootSystem) -> HeckeAlgebra<'_> {
        HeckeAlgebra::new(rs, F::frac(3, 2)).unwrap()
    }

    #[test]
    fn relations() {
        let rs = RootSystem::build("B2").unwrap();
        let h = alg(&rs);
        let wg = rs.weyl().unwrap();
        for i in 0..2 {
            let s = h.group(wg.simple(i));
            assert_eq!(h.mul(&s, &s).unwrap(), h.one());
            for j in 0..2 {
                let xj = h.x(&DegreeOne::of(&rs).coweight(j));
                let lhs = h.mul(&s, &xj).unwrap();
                let sx = h.poly(h.act(i, &Poly::var(2, j)));
                let rhs = h.mul(&sx, &s).unwrap().add(&h.scalar(&h.t().clone() * &F::from_int(i64::from(i == j))));
                assert_eq!(lhs, rhs, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn word_independence() {
        for label in ["A2", "B2", "G2"] {
            let rs = RootSystem::build(label).unwrap();
            let h = alg(&rs);
            let p = Poly::var(2, 0).mul(&Poly::var(2, 1)).add(&Poly::var(2, 0));
            for w in 0..rs.weyl().unwrap().order() {
                let words = h.reduced_words(w).unwrap();
                let first = h.move_right_along(&p, &words[0]).unwrap();
                for word in &words[1..] {
                    assert_eq!(h.move_right_along(&p, word).unwrap(), first, "{label}");
                }
            }
        }
    }

    #[test]
    fn bmo_commutes() {
        for label in ["A2", "B2", "G2"] {
            let rs = RootSystem::build(label).unwrap();
            let h = alg(&rs);
            let d = DegreeOne::of(&rs);
            let q = TorusPoint::from_ints(&[2, 3]).unwrap();
            let a = h.bmo_operator(&d.coweight(0), &q).unwrap();
            let b = h.bmo_operator(&d.coweight(1), &q).unwrap();
            assert!(h.commutator(&a, &b).unwrap().is_zero(), "{label}");
            assert!(h.bmo_operator(&[F::zero(), F::zero()], &q).unwrap().is_zero());
        }
    }

    #[test]
    fn opposite_sign_breaks_commutativity() {
        let rs = RootSystem::build("A2").unwrap();
        let h = HeckeAlgebra::with_sign(&rs, F::frac(3, 2), -1).unwrap();
        let d = DegreeOne::of(&rs);
        let q = TorusPoint::from_ints(&[2, 3]).unwrap();
        let a = h.bmo_operator(&d.coweight(0), &q).unwrap();
        let b = h.bmo_operator(&d.coweight(1), &q).unwrap();
        assert!(!h.commutator(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn zero_t_gives_polynomials() {
        let rs = RootSystem::build("A2").unwrap();
        let h = HeckeAlgebra::new(&rs, F::zero()).unwrap();
        let q = TorusPoint::from_ints(&[2, 3]).unwrap();
        let a = h.bmo_operator(&[F::one(), F::from_int(2)], &q).unwrap();
        assert_eq!(a, h.x(&[F::one(), F::from_int(2)]));
        assert!(h.holonomy_to_hecke(&DegreeOne::of(&rs).t(0), &F::one()).is_err());
    }

    #[test]
    fn bethe_images() {
        let rs = RootSystem::build("A2").unwrap();
        let h = alg(&rs);
        let d = DegreeOne::of(&rs);
        let c = TorusPoint::from_ints(&[2, 3]).unwrap();
        let adopted = F::from_int(ADOPTED_TAU_SCALE);
        let tinv = h.t().inv().unwrap();
        let imgs: Vec<HeckeElem> = (0..2)
            .map(|i| h.holonomy_to_hecke(&d.bethe_hamiltonian(&c, &d.coweight(i)).unwrap(), &adopted).unwrap())
            .collect();
        for (i, img) in imgs.iter().enumerate() {
            assert_eq!(*img, h.bmo_operator(&d.coweight(i), &c).unwrap().scale(&tinv));
        }
        assert!(h.commutator(&imgs[0], &imgs[1]).unwrap().is_zero());

        let literal = F::from_int(LITERAL_TAU_SCALE);
        let lit: Vec<HeckeElem> = (0..2)
            .map(|i| h.holonomy_to_hecke(&d.bethe_hamiltonian(&c, &d.coweight(i)).unwrap(), &literal).unwrap())
            .collect();
        assert!(!h.commutator(&lit[0], &lit[1]).unwrap().is_zero());

        let t0 = h.holonomy_to_hecke(&d.t(0), &adopted).unwrap();
        assert_eq!(t0, h.reflection(0).unwrap().sub(&h.one()));
    }

    #[test]
    fn associativity() {
        let rs = RootSystem::build("B2").unwrap();
        let h = alg(&rs);
        let wg = rs.weyl().unwrap();
        let elems: Vec<HeckeElem> = (0..wg.order())
            .map(|w| h.group(w).add(&h.mul(&h.group(w), &h.x(&[F::from_int(w as i64 - 3), F::one()])).unwrap()))
            .collect();
        for a in &elems[..4] {
            for b in &elems {
                for c in &elems[4..] {
                    let l = h.mul(&h.mul(a, b).unwrap(), c).unwrap();
                    let r = h.mul(a, &h.mul(b, c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }
}
