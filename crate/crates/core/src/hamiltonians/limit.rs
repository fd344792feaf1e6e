//! Limit subspaces Q(x) at chart points of the wonderful model, and recovery
//! of the point data from Q(x).

use std::collections::BTreeMap;

use super::{w_action, DegreeOne, HVec, Subspace, TauAction};
use crate::arrangement::TorusPoint;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, FieldScalar, Rational};
use crate::nested::{self, ChartCoords, Diagram, NestedSet};
use crate::rootsys::{int_rank, IntVec, RootSystem};

/// A chart point (w, I, y, S, t).
///
/// `y` holds the values e^{α_i}, i ∈ I, in the frame of the standard chamber;
/// the point itself lies in the chart of (wΔ₀, wI). S is a maximal nested set
/// on the Coxeter diagram of Δ_Y, whose vertices index Δ_Y in root order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoint {
    pub w: usize,
    pub subset: Vec<usize>,
    pub y: Vec<FieldScalar>,
    pub nested: NestedSet,
    pub t: ChartCoords,
}

/// Φ_I, Φ_Y and Δ_Y for a point y of T_I.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub subset: Vec<usize>,
    /// Positive roots of Φ_I with their values e^α(y).
    pub phi_i: Vec<(usize, FieldScalar)>,
    /// Positive roots of Φ_Y.
    pub phi_y: Vec<usize>,
    /// Simple roots of Φ_Y, in root order.
    pub delta_y: Vec<usize>,
    /// Coordinates of each root of `phi_y` in the basis `delta_y`.
    pub coords: Vec<IntVec>,
    pub diagram: Diagram,
}

impl LocalData {
    pub fn new(rs: &RootSystem, subset: &[usize], y: &[FieldScalar]) -> Result<Self> {
        let mut subset = subset.to_vec();
        subset.sort();
        subset.dedup();
        if subset.iter().any(|&i| i >= rs.rank()) {
            return Err(Error::InvalidPoint("I contains an index beyond the rank".into()));
        }
        if y.len() != subset.len() {
            return Err(Error::InvalidPoint(format!("y has {} coordinates but |I| = {}", y.len(), subset.len())));
        }
        let local = TorusPoint::new(y.to_vec())?;
        let mut phi_i = Vec::new();
        for k in 0..rs.num_positive() {
            let a = rs.root(k);
            if a.iter().enumerate().all(|(i, &x)| x == 0 || subset.contains(&i)) {
                let la: Vec<i64> = subset.iter().map(|&i| a[i]).collect();
                phi_i.push((k, local.character(&la)));
            }
        }
        let phi_y: Vec<usize> = phi_i.iter().filter(|(_, u)| u.is_one()).map(|(k, _)| *k).collect();
        let delta_y: Vec<usize> = phi_y
            .iter()
            .copied()
            .filter(|&k| {
                let a = rs.root(k);
                !phi_y.iter().any(|&b| {
                    let diff: IntVec = a.iter().zip(rs.root(b)).map(|(x, y)| x - y).collect();
                    rs.index_of(&diff).is_some_and(|j| phi_y.contains(&j))
                })
            })
            .collect();
        let basis: Vec<IntVec> = delta_y.iter().map(|&k| rs.root(k)).collect();
        let coords = phi_y.iter().map(|&k| solve_coords(&basis, &rs.root(k))).collect::<Result<Vec<_>>>()?;
        let gram: Vec<IntVec> = basis.iter().map(|a| basis.iter().map(|b| rs.inner(a, b)).collect()).collect();
        Ok(LocalData { subset, phi_i, phi_y, delta_y, coords, diagram: Diagram::from_gram(&gram) })
    }

    pub fn rank_y(&self) -> usize {
        self.delta_y.len()
    }
}

/// Integer coordinates of v in the given independent basis.
fn solve_coords(basis: &[IntVec], v: &[i64]) -> Result<IntVec> {
    if basis.is_empty() {
        return Err(Error::Shape("empty basis".into()));
    }
    let n = v.len();
    let m = basis.len();
    // columns = basis vectors, augmented with v
    let rows: Vec<Vec<FieldScalar>> = (0..n)
        .map(|i| {
            let mut r: Vec<FieldScalar> = basis.iter().map(|b| FieldScalar::from_int(b[i])).collect();
            r.push(FieldScalar::from_int(v[i]));
            r
        })
        .collect();
    let (red, pivots) = ExactMatrix::from_rows(rows, m + 1).rref_with_pivots();
    if pivots.contains(&m) || pivots.len() != m {
        return Err(Error::Shape("vector outside the span".into()));
    }
    (0..m)
        .map(|i| {
            let x = red.get(i, m).as_rational().unwrap();
            if x.is_integer() {
                Ok(i64::try_from(x.to_integer()).unwrap())
            } else {
                Err(Error::Shape("non-integral coordinates".into()))
            }
        })
        .collect()
}

impl XPoint {
    pub fn new(
        rs: &RootSystem,
        w: usize,
        subset: Vec<usize>,
        y: Vec<FieldScalar>,
        elements: Vec<nested::VertexSet>,
        t: Vec<FieldScalar>,
    ) -> Result<Self> {
        let local = LocalData::new(rs, &subset, &y)?;
        let nested = NestedSet::new(&local.diagram, elements)?;
        let t = ChartCoords::new(&nested, t)?;
        let x = XPoint { w, subset: local.subset.clone(), y, nested, t };
        x.validate(rs)?;
        Ok(x)
    }

    /// The interior point C ∈ T_reg.
    pub fn interior(rs: &RootSystem, c: &TorusPoint) -> Result<Self> {
        let x = XPoint {
            w: 0,
            subset: (0..rs.rank()).collect(),
            y: c.coords().to_vec(),
            nested: NestedSet::empty(),
            t: ChartCoords { values: BTreeMap::new() },
        };
        x.validate(rs)?;
        Ok(x)
    }

    pub fn local(&self, rs: &RootSystem) -> Result<LocalData> {
        LocalData::new(rs, &self.subset, &self.y)
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        let wg = rs.weyl()?;
        if self.w >= wg.order() {
            return Err(Error::InvalidPoint("w is not a Weyl group element".into()));
        }
        let local = self.local(rs)?;
        let rebuilt = NestedSet::new(&local.diagram, self.nested.elements().to_vec())?;
        if rebuilt != self.nested {
            return Err(Error::NestedSet("nested set is not canonical".into()));
        }
        if self.t.values.len() != self.nested.len() {
            return Err(Error::NestedSet("chart coordinates do not match the nested set".into()));
        }
        nested::check_generic(&local.coords, &self.nested, &self.t)?;
        Ok(())
    }
}

/// Gram-dual h ∈ 𝔥 of a = Σ a_j α_j, in coweight coordinates.
fn gram_h(rs: &RootSystem, a: &[FieldScalar]) -> Vec<FieldScalar> {
    (0..rs.rank())
        .map(|i| (0..rs.rank()).map(|j| &FieldScalar::from_int(rs.gram()[i][j]) * &a[j]).sum())
        .collect()
}

/// Q(x) as the span of the three families, transported by w.
pub fn limit_subspace(rs: &RootSystem, x: &XPoint) -> Result<Subspace> {
    limit_subspace_with(rs, x, TauAction::SELECTED)
}

pub fn limit_subspace_with(rs: &RootSystem, x: &XPoint, action: TauAction) -> Result<Subspace> {
    let rows = limit_rows(rs, x)?;
    let rows = if x.w == 0 {
        rows
    } else {
        rows.iter().map(|r| w_action(rs, x.w, r, action)).collect::<Result<Vec<_>>>()?
    };
    let d = DegreeOne::of(rs);
    let q = Subspace::from_rows(rows, d.dim());
    debug_assert_eq!(q.dim(), rs.rank());
    Ok(q)
}

/// Generators of Q(x₀) in the standard frame, before the w-transport.
pub fn limit_rows(rs: &RootSystem, x: &XPoint) -> Result<Vec<HVec>> {
    let d = DegreeOne::of(rs);
    let n = rs.rank();
    let local = x.local(rs)?;
    let mut rows = Vec::new();
    // h with α_i(h) = 0 for i ∈ I
    for j in (0..n).filter(|j| !local.subset.contains(j)) {
        rows.push(d.tau(&d.coweight(j)));
    }
    // h = G·a, a supported on I, orthogonal to Φ_Y
    let constraints: Vec<Vec<FieldScalar>> = local
        .delta_y
        .iter()
        .map(|&k| {
            let b = rs.root(k);
            local.subset.iter().map(|&i| FieldScalar::from_int((0..n).map(|j| b[j] * rs.gram()[j][i]).sum())).collect()
        })
        .collect();
    let kernel = if local.subset.is_empty() {
        Vec::new()
    } else if constraints.is_empty() {
        (0..local.subset.len())
            .map(|i| (0..local.subset.len()).map(|j| FieldScalar::from_int(i64::from(i == j))).collect())
            .collect()
    } else {
        ExactMatrix::from_rows(constraints, local.subset.len()).nullspace()
    };
    for a_local in kernel {
        let mut a = vec![FieldScalar::zero(); n];
        for (&i, v) in local.subset.iter().zip(a_local) {
            a[i] = v;
        }
        let h = gram_h(rs, &a);
        let mut row = d.tau(&h);
        for (k, u) in &local.phi_i {
            if u.is_one() {
                continue;
            }
            let coef = u.checked_div(&(u - &FieldScalar::one()))?;
            row[*k] = -(&coef * &RootSystem::pair_field(&rs.root(*k), &h));
        }
        rows.push(row);
    }
    // Gaudin chart part on Φ_Y
    if !local.phi_y.is_empty() {
        let chart = nested::gaudin_chart_hamiltonians(&local.coords, &x.nested, &x.t)?;
        for h in chart {
            let mut row = d.zero();
            for (&k, c) in local.phi_y.iter().zip(h) {
                row[k] = c;
            }
            rows.push(row);
        }
    }
    if rows.len() != n {
        return Err(Error::Shape(format!("{} generators for rank {}", rows.len(), n)));
    }
    Ok(rows)
}

/// Data read back from a limit subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovered {
    /// Positive roots of the (transported) Φ_Y.
    pub phi_y: Vec<usize>,
    /// Kernel of the projection to the τ-block.
    pub gaudin: Subspace,
    /// For positive α outside ℚΦ_Y: the value e^α/(e^α − 1) (0 for e^α = 0,
    /// 1 for e^α = ∞).
    pub profile: BTreeMap<usize, FieldScalar>,
}

/// Converts a profile value c = u/(u−1) back to u; None stands for u = ∞.
pub fn profile_to_character(c: &FieldScalar) -> Option<FieldScalar> {
    let one = FieldScalar::one();
    if *c == one {
        None
    } else {
        Some(c.checked_div(&(c - &one)).expect("c ≠ 1"))
    }
}

pub fn recover_data(rs: &RootSystem, q: &Subspace) -> Result<Recovered> {
    let d = DegreeOne::of(rs);
    let p = rs.num_positive();
    let n = rs.rank();
    if q.ambient() != d.dim() || q.dim() != n {
        return Err(Error::Shape(format!("expected an {n}-dimensional subspace of t¹")));
    }
    // τ columns first
    let perm: Vec<usize> = (p..p + n).chain(0..p).collect();
    let rows: Vec<Vec<FieldScalar>> = q.rref().rows().map(|r| perm.iter().map(|&j| r[j].clone()).collect()).collect();
    let red = ExactMatrix::from_rows(rows, p + n).rref();
    let mut kernel: Vec<HVec> = Vec::new();
    let mut tau_rows: Vec<(Vec<FieldScalar>, Vec<FieldScalar>)> = Vec::new();
    for r in red.rows() {
        let (tau, t) = r.split_at(n);
        if tau.iter().all(|x| x.is_zero()) {
            let mut v = t.to_vec();
            v.extend(vec![FieldScalar::zero(); n]);
            kernel.push(v);
        } else {
            tau_rows.push((tau.to_vec(), t.to_vec()));
        }
    }
    let phi_y: Vec<usize> = (0..p).filter(|&k| kernel.iter().any(|v| !v[k].is_zero())).collect();
    let span_rank = int_rank(&phi_y.iter().map(|&k| rs.root(k)).collect::<Vec<_>>());
    if span_rank != kernel.len() {
        return Err(Error::Shape(format!("kernel of dimension {} on roots of rank {span_rank}", kernel.len())));
    }
    let mut profile = BTreeMap::new();
    for k in 0..p {
        let a = rs.root(k);
        let mut rows = phi_y.iter().map(|&j| rs.root(j)).collect::<Vec<_>>();
        rows.push(a.clone());
        if int_rank(&rows) == span_rank {
            continue;
        }
        let mut value: Option<FieldScalar> = None;
        for (tau, t) in &tau_rows {
            let ah = RootSystem::pair_field(&a, tau);
            if ah.is_zero() {
                continue;
            }
            let c = (-&t[k]).checked_div(&ah)?;
            match &value {
                Some(v) if *v != c => return Err(Error::Shape(format!("inconsistent coefficient for root {a:?}"))),
                _ => value = Some(c),
            }
        }
        let value = value.ok_or_else(|| Error::Shape(format!("no τ-row pairs nontrivially with {a:?}")))?;
        profile.insert(k, value);
    }
    Ok(Recovered { phi_y, gaudin: Subspace::from_rows(kernel, d.dim()), profile })
}

/// The point C of T with e^{α_i}(C) given by the profile, when every simple
/// root has a finite nonzero value.
pub fn recover_torus_point(rs: &RootSystem, rec: &Recovered) -> Option<TorusPoint> {
    let coords: Option<Vec<FieldScalar>> =
        (0..rs.rank()).map(|i| rec.profile.get(&i).and_then(profile_to_character)).collect();
    TorusPoint::new(coords?).ok()
}

/// Expected profile for a point, computed directly from its data.
pub fn expected_profile(rs: &RootSystem, x: &XPoint) -> Result<BTreeMap<usize, FieldScalar>> {
    let local = x.local(rs)?;
    let wg = rs.weyl()?;
    let span: Vec<IntVec> = local.phi_y.iter().map(|&k| rs.root(k)).collect();
    let r = int_rank(&span);
    let mut out = BTreeMap::new();
    let one = FieldScalar::one();
    let winv = wg.inverse(x.w);
    for k in 0..rs.num_positive() {
        // the frame root γ = w⁻¹β
        let g = wg.act_root(winv, k);
        let gabs = rs.abs_index(g);
        let mut rows = span.clone();
        rows.push(rs.root(gabs));
        if int_rank(&rows) == r {
            continue;
        }
        let base = match local.phi_i.iter().find(|(j, _)| *j == gabs) {
            Some((_, u)) => u.checked_div(&(u - &one))?,
            None => FieldScalar::zero(),
        };
        let value = if rs.is_positive_index(g) { base } else { &one - &base };
        out.insert(k, value);
    }
    Ok(out)
}

pub fn rational_h(h: &[Rational]) -> Vec<FieldScalar> {
    h.iter().cloned().map(FieldScalar::from_rational).collect()
}
