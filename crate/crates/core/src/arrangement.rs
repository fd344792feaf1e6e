//! Layers of the toric arrangement {T_α : α ∈ Φ} and boundary strata.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{FieldScalar, Rational};
use crate::lattice::{
    frac_part, hermite_normal_form, in_lattice, saturation, smith_normal_form, torsion_phases, IntMatrix,
    TorsionGroup,
};
use crate::rootsys::{int_rank, RootSubsystem, RootSystem};

/// A point of T = Hom(R, ℂ^×), given by the values c_i = e^{α_i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    coords: Vec<FieldScalar>,
}

impl TorusPoint {
    pub fn new(coords: Vec<FieldScalar>) -> Result<Self> {
        if let Some(i) = coords.iter().position(|c| c.is_zero()) {
            return Err(Error::InvalidPoint(format!("coordinate {} is zero", i + 1)));
        }
        Ok(TorusPoint { coords })
    }

    pub fn identity(n: usize) -> Self {
        TorusPoint { coords: vec![FieldScalar::one(); n] }
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| FieldScalar::from_int(v)).collect())
    }

    pub fn from_phases(phases: &[Rational], order: u32) -> Result<Self> {
        Ok(TorusPoint { coords: phases.iter().map(|p| FieldScalar::exp_phase(p, order)).collect::<Result<_>>()? })
    }

    pub fn coords(&self) -> &[FieldScalar] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// e^α = Π c_i^{a_i}.
    pub fn character(&self, alpha: &[i64]) -> FieldScalar {
        let mut v = FieldScalar::one();
        for (c, &a) in self.coords.iter().zip(alpha) {
            if a != 0 {
                v *= &c.pow(a).expect("coordinates are nonzero");
            }
        }
        v
    }

    /// First positive root with e^α = 1, if any.
    pub fn singular_root(&self, rs: &RootSystem) -> Option<usize> {
        (0..rs.num_positive()).find(|&k| self.character(&rs.root(k)).is_one())
    }

    pub fn is_regular(&self, rs: &RootSystem) -> bool {
        self.singular_root(rs).is_none()
    }

    pub fn mul(&self, other: &Self) -> Self {
        TorusPoint { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).collect() }
    }
}

/// A connected component of an intersection of root subtori.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    /// HNF basis of the saturated lattice Λ.
    pub lattice: IntMatrix,
    /// Character values on the rows of `lattice`, as phases in [0, 1).
    pub character: Vec<Rational>,
    /// Phases of the canonical representative point.
    pub phases: Vec<Rational>,
    pub phi_y: RootSubsystem,
    pub dim: usize,
    /// Integer directions spanning the subtorus through the representative.
    pub free_dirs: IntMatrix,
}

fn dot(a: &[i64], th: &[Rational]) -> Rational {
    RootSystem::pair(a, th)
}

impl Layer {
    fn from_key(rs: &RootSystem, lattice: IntMatrix, character: Vec<Rational>) -> Layer {
        let n = rs.rank();
        let r = lattice.len();
        let (phases, free_dirs) = if r == 0 {
            (vec![Rational::from_integer(0.into()); n], (0..n).map(|i| unit(n, i)).collect())
        } else {
            let snf = smith_normal_form(&lattice);
            debug_assert!(snf.divisors().iter().all(|&d| d == 1));
            let psi: Vec<Rational> = (0..r)
                .map(|i| (0..r).map(|j| Rational::from_integer(snf.u[i][j].into()) * &character[j]).sum())
                .collect();
            let phases = (0..n)
                .map(|i| frac_part(&(0..r).map(|k| Rational::from_integer(snf.v[i][k].into()) * &psi[k]).sum()))
                .collect();
            let free = (r..n).map(|k| (0..n).map(|i| snf.v[i][k]).collect()).collect();
            (phases, free)
        };
        let phi_y = RootSubsystem {
            indices: (0..rs.num_roots())
                .filter(|&k| {
                    let a = rs.root(k);
                    r > 0 && in_lattice(&lattice, &a) && dot(&a, &phases).is_integer()
                })
                .collect(),
        };
        Layer { dim: n - r, lattice, character, phases, phi_y, free_dirs }
    }

    pub fn codim(&self) -> usize {
        self.lattice.len()
    }

    pub fn point(&self, order: u32) -> Result<TorusPoint> {
        TorusPoint::from_phases(&self.phases, order)
    }

    /// Point y₀·Π u_k^{v_k} of the layer, for nonzero rationals u.
    pub fn point_with(&self, order: u32, u: &[Rational]) -> Result<TorusPoint> {
        let base = self.point(order)?;
        let mut coords = base.coords.clone();
        for (dir, uk) in self.free_dirs.iter().zip(u) {
            let uk = FieldScalar::from_rational(uk.clone());
            for (c, &e) in coords.iter_mut().zip(dir) {
                if e != 0 {
                    *c *= &uk.pow(e)?;
                }
            }
        }
        TorusPoint::new(coords)
    }

    /// A point of the open part of the layer: no further root subtorus
    /// contains it. Retries random free coordinates until that holds.
    pub fn generic_point<R: Rng>(&self, rs: &RootSystem, order: u32, rng: &mut R) -> Result<TorusPoint> {
        for _ in 0..200 {
            let u: Vec<Rational> = (0..self.free_dirs.len()).map(|_| random_unit_rational(rng)).collect();
            let p = self.point_with(order, &u)?;
            if rs.centralizer_subsystem(&p) == self.phi_y {
                return Ok(p);
            }
        }
        Err(Error::InvalidPoint("no generic point found on layer".into()))
    }

    /// Does this layer contain `other` as a subvariety?
    pub fn contains(&self, other: &Layer) -> bool {
        self.lattice.iter().zip(&self.character).all(|(row, chi)| {
            in_lattice(&other.lattice, row) && frac_part(&(dot(row, &other.phases) - chi)) == Rational::from_integer(0.into())
        }) && self.dim >= other.dim
    }

    pub fn contains_point(&self, p: &TorusPoint, order: u32) -> Result<bool> {
        for (row, chi) in self.lattice.iter().zip(&self.character) {
            if p.character(row) != FieldScalar::exp_phase(chi, order)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

pub fn random_unit_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let q: i64 = rng.gen_range(1..=5);
        if p != 0 && p.abs() != q {
            return Rational::new(p.into(), q.into());
        }
    }
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&x| x + 1);
            for i in start..n {
                let mut t: Vec<usize> = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All layers, ordered by codimension, then lattice, then character.
pub fn layers(rs: &RootSystem) -> Result<Vec<Layer>> {
    let n = rs.rank();
    if n > 4 {
        return Err(Error::RankBound { rank: n, bound: 4 });
    }
    let mut found: BTreeMap<(usize, IntMatrix, Vec<Rational>), ()> = BTreeMap::new();
    for subset in subsets_up_to(rs.num_positive(), n) {
        let rows: IntMatrix = subset.iter().map(|&k| rs.root(k)).collect();
        if int_rank(&rows) != rows.len() {
            continue;
        }
        let lat = saturation(&rows);
        for theta in torsion_phases(&rows, n) {
            let character: Vec<Rational> = lat.iter().map(|row| frac_part(&dot(row, &theta))).collect();
            found.insert((lat.len(), lat.clone(), character), ());
        }
    }
    Ok(found.into_keys().map(|(_, lat, chi)| Layer::from_key(rs, lat, chi)).collect())
}

pub fn is_indecomposable(rs: &RootSystem, layer: &Layer) -> bool {
    rs.is_irreducible(&layer.phi_y)
}

pub fn building_set(rs: &RootSystem) -> Result<Vec<Layer>> {
    Ok(layers(rs)?.into_iter().filter(|l| is_indecomposable(rs, l)).collect())
}

/// Γ_Y: torsion of (ℚΦ_Y ∩ R) / ℤΦ_Y, relative to the root lattice of `rs`.
pub fn gamma_group(rs: &RootSystem, layer: &Layer) -> TorsionGroup {
    let rows: IntMatrix = layer.phi_y.indices.iter().filter(|&&k| rs.is_positive_index(k)).map(|&k| rs.root(k)).collect();
    if rows.is_empty() {
        return TorsionGroup { divisors: Vec::new() };
    }
    TorsionGroup::from_snf(&smith_normal_form(&rows))
}

/// A layer of the Levi subsystem Φ_I inside the torus T_I.
#[derive(Clone, Debug)]
pub struct BoundaryStratum {
    /// I as indices into the simple roots, increasing.
    pub subset: Vec<usize>,
    pub layer: Layer,
}

impl BoundaryStratum {
    /// Φ_Y as indices into the roots of the parent system.
    pub fn phi_y_in_parent(&self, rs: &RootSystem, levi: &RootSystem) -> Vec<usize> {
        self.layer.phi_y.indices.iter().map(|&k| embed_root(rs, &self.subset, &levi.root(k))).collect()
    }
}

pub fn embed_root(rs: &RootSystem, subset: &[usize], local: &[i64]) -> usize {
    let mut v = vec![0; rs.rank()];
    for (&i, &x) in subset.iter().zip(local) {
        v[i] = x;
    }
    rs.index_of(&v).expect("Levi roots are roots")
}

/// For every I ⊆ Δ₀ (ordered by bitmask), the layers of Φ_I in T_I.
pub fn boundary_strata(rs: &RootSystem) -> Result<Vec<BoundaryStratum>> {
    let n = rs.rank();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let levi = rs.levi(&subset)?;
        for layer in layers(&levi)? {
            out.push(BoundaryStratum { subset: subset.clone(), layer });
        }
    }
    Ok(out)
}

/// Hasse diagram of the layer poset in DOT syntax; edges point from a layer to
/// the layers it covers.
pub fn layer_poset_dot(rs: &RootSystem, layers: &[Layer]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph layers {{");
    let _ = writeln!(s, "  label=\"{}\";", rs.label());
    for (i, l) in layers.iter().enumerate() {
        let phases: Vec<String> = l.phases.iter().map(|p| p.to_string()).collect();
        let shape = if is_indecomposable(rs, l) { "box" } else { "ellipse" };
        let _ = writeln!(
            s,
            "  L{i} [shape={shape}, label=\"dim {} | |Φ_Y|={} | θ=({})\"];",
            l.dim,
            l.phi_y.indices.len(),
            phases.join(",")
        );
    }
    for (i, a) in layers.iter().enumerate() {
        for (j, b) in layers.iter().enumerate() {
            if i == j || a.dim != b.dim + 1 || !a.contains(b) {
                continue;
            }
            let _ = writeln!(s, "  L{i} -> L{j};");
        }
    }
    s.push_str("}\n");
    s
}

/// Canonical HNF of the lattice spanned by the given roots.
pub fn root_lattice_hnf(rs: &RootSystem, roots: &[usize]) -> IntMatrix {
    hermite_normal_form(&roots.iter().map(|&k| rs.root(k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(label: &str) -> (usize, usize) {
        let rs = RootSystem::build(label).unwrap();
        (layers(&rs).unwrap().len(), building_set(&rs).unwrap().len())
    }

    #[test]
    fn small_censuses() {
        assert_eq!(census("A1"), (2, 1));
        assert_eq!(census("A2"), (5, 4));
        assert_eq!(census("B2"), (7, 5));
    }

    #[test]
    fn b2_long_root_points() {
        let rs = RootSystem::build("B2").unwrap();
        let zero_dim: Vec<Layer> = layers(&rs).unwrap().into_iter().filter(|l| l.dim == 0).collect();
        assert_eq!(zero_dim.len(), 2);
        let id = zero_dim.iter().find(|l| l.phases.iter().all(|p| *p == Rational::from_integer(0.into()))).unwrap();
        let other = zero_dim.iter().find(|l| *l != id).unwrap();
        assert!(is_indecomposable(&rs, id));
        assert!(!is_indecomposable(&rs, other));
        assert_eq!(other.phi_y.indices.len(), 4);
        assert_eq!(gamma_group(&rs, other).divisors, vec![2]);
        assert!(gamma_group(&rs, id).is_trivial());
    }

    #[test]
    fn g2_torsion_layers() {
        let rs = RootSystem::build("G2").unwrap();
        let long: Vec<usize> = (0..rs.num_roots()).filter(|&k| rs.inner(&rs.root(k), &rs.root(k)) == 6).collect();
        let ls: Vec<Layer> = layers(&rs).unwrap().into_iter().filter(|l| l.phi_y.indices == long).collect();
        assert_eq!(ls.len(), 2);
        let omega = FieldScalar::root_of_unity(3, 1);
        let short_values: Vec<FieldScalar> = ls.iter().map(|l| l.point(6).unwrap().character(&[1, 0])).collect();
        for v in [omega.clone(), &omega * &omega] {
            assert_eq!(short_values.iter().filter(|x| **x == v).count(), 1);
        }
        for l in &ls {
            assert_eq!(gamma_group(&rs, l).divisors, vec![3]);
            assert!(is_indecomposable(&rs, l));
        }
    }

    #[test]
    fn strata() {
        let rs = RootSystem::build("B2").unwrap();
        let strata = boundary_strata(&rs).unwrap();
        assert_eq!(strata.iter().filter(|s| s.subset.is_empty()).count(), 1);
        assert_eq!(strata.iter().filter(|s| s.subset == vec![1]).count(), 2);
        assert_eq!(strata.iter().filter(|s| s.subset == vec![0, 1]).count(), layers(&rs).unwrap().len());
    }
}
