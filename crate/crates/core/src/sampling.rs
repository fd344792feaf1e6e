//! Seeded generators of chart points, one generator per class of stratum.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::arrangement::{layers, random_unit_rational, Layer, TorusPoint};
use crate::error::{Error, Result};
use crate::exact::FieldScalar;
use crate::hamiltonians::limit::LocalData;
use crate::hamiltonians::XPoint;
use crate::nested::{maximal_nested_sets, NestedSet};
use crate::rootsys::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StratumClass {
    /// I = Δ, y regular.
    Interior,
    /// I = Δ, y = 1.
    IdentityFiber,
    /// I = Δ, y generic on a layer of positive dimension.
    PositiveLayer,
    /// I = Δ, y a point layer other than the identity.
    TorsionPoint,
    /// I ⊊ Δ.
    Boundary,
}

impl StratumClass {
    pub const ALL: [StratumClass; 5] = [
        StratumClass::Interior,
        StratumClass::IdentityFiber,
        StratumClass::PositiveLayer,
        StratumClass::TorsionPoint,
        StratumClass::Boundary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StratumClass::Interior => "interior",
            StratumClass::IdentityFiber => "identity-fiber",
            StratumClass::PositiveLayer => "positive-layer",
            StratumClass::TorsionPoint => "torsion-point",
            StratumClass::Boundary => "boundary",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub class: StratumClass,
    pub x: XPoint,
}

/// Sampler state for one root system.
pub struct Sampler<'a> {
    rs: &'a RootSystem,
    order: u32,
    positive_layers: Vec<Layer>,
    torsion_layers: Vec<Layer>,
}

impl<'a> Sampler<'a> {
    pub fn new(rs: &'a RootSystem, order: u32) -> Result<Self> {
        rs.weyl()?;
        let n = rs.rank();
        let all = layers(rs)?;
        let positive_layers = all.iter().filter(|l| l.dim > 0 && l.dim < n).cloned().collect();
        let torsion_layers = all
            .iter()
            .filter(|l| l.dim == 0 && l.phases.iter().any(|p| *p != num_traits::Zero::zero()))
            .cloned()
            .collect();
        Ok(Sampler { rs, order, positive_layers, torsion_layers })
    }

    /// Classes with at least one point; type A has no torsion point layers.
    pub fn available(&self) -> Vec<StratumClass> {
        StratumClass::ALL
            .into_iter()
            .filter(|c| match c {
                StratumClass::PositiveLayer => !self.positive_layers.is_empty(),
                StratumClass::TorsionPoint => !self.torsion_layers.is_empty(),
                _ => true,
            })
            .collect()
    }

    pub fn sample<R: Rng>(&self, class: StratumClass, rng: &mut R) -> Result<XPoint> {
        let n = self.rs.rank();
        let full: Vec<usize> = (0..n).collect();
        match class {
            StratumClass::Interior => {
                for _ in 0..200 {
                    let c = random_point(n, rng);
                    if c.is_regular(self.rs) {
                        return XPoint::interior(self.rs, &c);
                    }
                }
                Err(Error::InvalidPoint("no regular point found".into()))
            }
            StratumClass::IdentityFiber => self.with_fiber(0, full, vec![FieldScalar::one(); n], rng),
            StratumClass::PositiveLayer => {
                let layer = self.positive_layers.choose(rng).expect("available");
                let y = layer.generic_point(self.rs, self.order, rng)?;
                self.with_fiber(0, full, y.coords().to_vec(), rng)
            }
            StratumClass::TorsionPoint => {
                let layer = self.torsion_layers.choose(rng).expect("available");
                let y = layer.point(self.order)?;
                self.with_fiber(0, full, y.coords().to_vec(), rng)
            }
            StratumClass::Boundary => {
                let subset: Vec<usize> = loop {
                    let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                    if s.len() < n {
                        break s;
                    }
                };
                let reps = self.rs.min_coset_reps(&subset)?;
                let w = *reps.choose(rng).expect("W/W_I is nonempty");
                let y = if !subset.is_empty() && rng.gen_bool(0.3) {
                    vec![FieldScalar::one(); subset.len()]
                } else {
                    self.regular_levi_point(&subset, rng)?
                };
                self.with_fiber(w, subset, y, rng)
            }
        }
    }

    fn regular_levi_point<R: Rng>(&self, subset: &[usize], rng: &mut R) -> Result<Vec<FieldScalar>> {
        for _ in 0..200 {
            let y = random_point(subset.len(), rng).coords().to_vec();
            let local = LocalData::new(self.rs, subset, &y)?;
            if local.phi_y.is_empty() {
                return Ok(y);
            }
        }
        Err(Error::InvalidPoint("no regular Levi point found".into()))
    }

    /// Completes (w, I, y) with the first maximal nested set of Δ_Y and
    /// random generic chart coordinates.
    fn with_fiber<R: Rng>(&self, w: usize, subset: Vec<usize>, y: Vec<FieldScalar>, rng: &mut R) -> Result<XPoint> {
        let local = LocalData::new(self.rs, &subset, &y)?;
        let s = fixed_nested_set(&local);
        for _ in 0..200 {
            let t = random_chart_values(&s, rng);
            match XPoint::new(self.rs, w, subset.clone(), y.clone(), s.elements().to_vec(), t) {
                Err(Error::ChartGenericity(_)) => continue,
                other => return other,
            }
        }
        Err(Error::ChartGenericity("no generic chart values found".into()))
    }

    /// Up to `count` pairwise-distinct points, cycling through the available
    /// classes.
    pub fn sample_distinct<R: Rng>(&self, count: usize, rng: &mut R) -> Result<Vec<Sample>> {
        let classes = self.available();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut attempts = 0;
        while out.len() < count && attempts < 50 * count {
            let class = classes[attempts % classes.len()];
            attempts += 1;
            let x = self.sample(class, rng)?;
            if seen.insert(point_key(&x)) {
                out.push(Sample { class, x });
            }
        }
        Ok(out)
    }
}

/// The nested set used for a given Φ_Y; fixing it makes chart coordinates
/// identify fiber points.
pub fn fixed_nested_set(local: &LocalData) -> NestedSet {
    if local.rank_y() == 0 {
        NestedSet::empty()
    } else {
        maximal_nested_sets(&local.diagram).into_iter().next().expect("nonempty diagram")
    }
}

fn random_point<R: Rng>(n: usize, rng: &mut R) -> TorusPoint {
    TorusPoint::new((0..n).map(|_| FieldScalar::from_rational(random_unit_rational(rng))).collect()).expect("nonzero")
}

/// Top elements get nonzero values, other elements are zero one time in five.
fn random_chart_values<R: Rng>(s: &NestedSet, rng: &mut R) -> Vec<FieldScalar> {
    s.elements()
        .iter()
        .map(|&p| {
            if !s.is_top(p) && rng.gen_ratio(1, 5) {
                FieldScalar::zero()
            } else {
                FieldScalar::from_rational(random_unit_rational(rng))
            }
        })
        .collect()
}

/// Identifies the point of the wonderful model: top-element coordinates are
/// projective scalings and do not enter.
pub fn point_key(x: &XPoint) -> String {
    let y: Vec<String> = x.y.iter().map(|v| v.to_string()).collect();
    let t: Vec<String> = x
        .nested
        .elements()
        .iter()
        .filter(|&&p| !x.nested.is_top(p))
        .map(|&p| format!("{p}:{}", x.t.get(p)))
        .collect();
    format!("w{}|I{:?}|y{:?}|S{:?}|t{:?}", x.w, x.subset, y, x.nested.elements(), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::limit_subspace;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_available_class_samples() {
        for label in ["A2", "B2", "G2"] {
            let rs = RootSystem::build(label).unwrap();
            let s = Sampler::new(&rs, 6).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            for class in s.available() {
                for _ in 0..5 {
                    let x = s.sample(class, &mut rng).unwrap();
                    assert_eq!(limit_subspace(&rs, &x).unwrap().dim(), rs.rank(), "{label} {class:?}");
                }
            }
        }
    }

    #[test]
    fn type_a_has_no_torsion_points() {
        let rs = RootSystem::build("A3").unwrap();
        assert!(!Sampler::new(&rs, 6).unwrap().available().contains(&StratumClass::TorsionPoint));
        let rs = RootSystem::build("B2").unwrap();
        assert_eq!(Sampler::new(&rs, 6).unwrap().available().len(), 5);
    }
}
