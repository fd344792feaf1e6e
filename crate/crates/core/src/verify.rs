//! Check suites: each runs a family of exact identities and returns a report
//! listing every failing case.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{gamma_group, is_indecomposable, layers, random_unit_rational, Layer, TorusPoint};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, FieldScalar, Rational};
use crate::hamiltonians::chain::chain_matrix;
use crate::hamiltonians::degenerate::{self, flat_limit, normalise, plucker, plucker_limit, rref_limit};
use crate::hamiltonians::limit::{expected_profile, limit_subspace, recover_data, XPoint};
use crate::hamiltonians::type_a::TypeA;
use crate::hamiltonians::{w_action, DegreeOne, HVec, Subspace, TauAction};
use crate::lattice::{hermite_normal_form, in_lattice, mat_mul, saturation, smith_normal_form, IntMatrix};
use crate::nested::{self, is_nested_by_roots, maximal_nested_sets, ChartCoords, Diagram, VertexSet};
use crate::reps::hecke::HeckeAlgebra;
use crate::reps::spin::{commutator, flatten, SpinChain};
use crate::rootsys::RootSystem;
use crate::sampling::{Sampler, StratumClass};

#[derive(Clone, Debug)]
pub struct RunOpts {
    pub seed: u64,
    pub samples: usize,
    pub order: u32,
}

impl Default for RunOpts {
    fn default() -> Self {
        RunOpts { seed: 0, samples: 50, order: crate::exact::DEFAULT_ORDER }
    }
}

impl RunOpts {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(suite: &str, label: Option<&str>) -> Self {
        CheckReport {
            suite: suite.into(),
            label: label.map(Into::into),
            passed: true,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.failures.push(what());
        }
    }

    fn error(&mut self, e: Error) {
        self.cases += 1;
        self.passed = false;
        self.failures.push(format!("error: {e}"));
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    /// One line per report: PASS/FAIL, suite, label, case count.
    pub fn summary(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        match &self.label {
            Some(l) => format!("{status} {} [{l}] ({} cases)", self.suite, self.cases),
            None => format!("{status} {} ({} cases)", self.suite, self.cases),
        }
    }
}

/// Runs `f`, turning an error into a failed case.
fn guarded(report: &mut CheckReport, f: impl FnOnce(&mut CheckReport) -> Result<()>) {
    if let Err(e) = f(report) {
        report.error(e);
    }
}

fn random_scalar<R: Rng>(rng: &mut R) -> FieldScalar {
    FieldScalar::from_rational(random_unit_rational(rng))
}

fn random_regular<R: Rng>(rs: &RootSystem, rng: &mut R) -> TorusPoint {
    loop {
        let c = TorusPoint::new((0..rs.rank()).map(|_| random_scalar(rng)).collect()).expect("nonzero");
        if c.is_regular(rs) {
            return c;
        }
    }
}

fn random_regular_chi<R: Rng>(rs: &RootSystem, rng: &mut R) -> Vec<FieldScalar> {
    loop {
        let chi: Vec<FieldScalar> = (0..rs.rank()).map(|_| random_scalar(rng)).collect();
        if rs.positive_roots().iter().all(|a| !RootSystem::pair_field(a, &chi).is_zero()) {
            return chi;
        }
    }
}

fn distinct_nonzero<R: Rng>(n: usize, rng: &mut R) -> Vec<FieldScalar> {
    let mut z: Vec<FieldScalar> = Vec::new();
    while z.len() < n {
        let v = random_scalar(rng);
        if !z.contains(&v) {
            z.push(v);
        }
    }
    z
}

/// [Q_{h_i}(q), Q_{h_j}(q)] = 0 for random regular q and random t.
pub fn hecke(rs: &RootSystem, opts: &RunOpts, count: usize) -> CheckReport {
    let mut r = CheckReport::new("hecke", Some(rs.label()));
    let mut rng = opts.rng(1);
    guarded(&mut r, |r| {
        let d = DegreeOne::of(rs);
        for _ in 0..count {
            let q = random_regular(rs, &mut rng);
            let alg = HeckeAlgebra::new(rs, random_scalar(&mut rng))?;
            let ops = (0..rs.rank()).map(|i| alg.bmo_operator(&d.coweight(i), &q)).collect::<Result<Vec<_>>>()?;
            for i in 0..ops.len() {
                for j in i + 1..ops.len() {
                    let c = alg.commutator(&ops[i], &ops[j])?;
                    r.check(c.is_zero(), || format!("q = {:?}, t = {}: [Q_{}, Q_{}] = {c:?}", q.coords(), alg.t(), i + 1, j + 1));
                }
            }
        }
        Ok(())
    });
    r
}

/// Spin chain for n = 2, 3: commuting trigonometric Gaudin operators, and the
/// image of each Bethe generator BH(C, ε_k) is −z_k H_k.
pub fn spin_chain(opts: &RunOpts, count: usize) -> CheckReport {
    let mut r = CheckReport::new("spin-chain", None);
    let mut rng = opts.rng(2);
    guarded(&mut r, |r| {
        for n in [2, 3] {
            let a = TypeA::new(n)?;
            let chain = SpinChain::new(n);
            for _ in 0..count {
                let z = distinct_nonzero(n, &mut rng);
                let theta = if rng.gen_ratio(1, 4) { FieldScalar::zero() } else { random_scalar(&mut rng) };
                let h = chain.trig_gaudin_ops(&z, &theta)?;
                for i in 0..n {
                    for j in i + 1..n {
                        let c = commutator(&h[i], &h[j])?;
                        r.check(c.is_zero(), || format!("n = {n}, z = {z:?}, θ = {theta}: [H_{}, H_{}] ≠ 0", i + 1, j + 1));
                    }
                }
                let pt = a.point(&z)?;
                let mut images = Vec::new();
                for (k, hk) in h.iter().enumerate() {
                    let bh = a.source.bethe_hamiltonian(&pt, &a.source.coweight(k))?;
                    let img = chain.holonomy_image(&a, &bh, &theta)?;
                    let expected = hk.scale(&-&z[k]);
                    r.check(img == expected, || format!("n = {n}, z = {z:?}, θ = {theta}: image of BH(ε_{}) is not −z_k H_k", k + 1));
                    images.push(img);
                }
                for i in 0..n {
                    for j in i + 1..n {
                        r.check(commutator(&images[i], &images[j])?.is_zero(), || format!("n = {n}, z = {z:?}: images do not commute"));
                    }
                }
                let cols = 1 << (2 * n);
                let lhs = Subspace::from_rows(flatten(&images), cols);
                let rhs = Subspace::from_rows(flatten(&h), cols);
                r.check(lhs == rhs, || format!("n = {n}, z = {z:?}: spans differ"));
            }
        }
        Ok(())
    });
    r
}

/// dim Q(C) = dim G(χ) = dim Q(x) = rank, with every available stratum
/// class represented among the sampled x.
pub fn rank(rs: &RootSystem, opts: &RunOpts) -> CheckReport {
    let mut r = CheckReport::new("rank", Some(rs.label()));
    let mut rng = opts.rng(3);
    guarded(&mut r, |r| {
        let n = rs.rank();
        let d = DegreeOne::of(rs);
        for _ in 0..opts.samples {
            let c = random_regular(rs, &mut rng);
            let dim = d.bethe_subspace(&c)?.dim();
            r.check(dim == n, || format!("dim Q(C) = {dim} at {:?}", c.coords()));
            let chi = random_regular_chi(rs, &mut rng);
            let dim = d.gaudin_subspace(&chi)?.dim();
            r.check(dim == n, || format!("dim G(χ) = {dim} at {chi:?}"));
        }
        let sampler = Sampler::new(rs, opts.order)?;
        let mut per_class: BTreeMap<StratumClass, usize> = BTreeMap::new();
        let classes = sampler.available();
        for k in 0..opts.samples.max(classes.len()) {
            let class = classes[k % classes.len()];
            let x = sampler.sample(class, &mut rng)?;
            let dim = limit_subspace(rs, &x)?.dim();
            r.check(dim == n, || format!("dim Q(x) = {dim} at {x:?}"));
            *per_class.entry(class).or_default() += 1;
        }
        for class in StratumClass::ALL {
            match per_class.get(&class) {
                Some(k) => r.note(format!("{}: {k} points", class.name())),
                None => r.note(format!("{}: no strata of this class", class.name())),
            }
        }
        Ok(())
    });
    r
}

/// RREF(ψ(Q(C))) = RREF(G(0, z₁, …, z_n)) for n = 2, 3.
pub fn type_a(opts: &RunOpts, count: usize) -> CheckReport {
    let mut r = CheckReport::new("type-a", None);
    let mut rng = opts.rng(4);
    guarded(&mut r, |r| {
        for n in [2, 3] {
            let a = TypeA::new(n)?;
            for _ in 0..count {
                let z = distinct_nonzero(n, &mut rng);
                let lhs = a.psi_subspace(&a.bethe_subspace(&z)?)?;
                let rhs = a.gaudin_subspace(&z)?;
                r.check(lhs == rhs, || format!("n = {n}, z = {z:?}: ψ(Q(C)) ≠ G(χ)"));
            }
        }
        Ok(())
    });
    r
}

fn is_zero_phase(l: &Layer) -> bool {
    l.phases.iter().all(|p| *p == Rational::from_integer(0.into()))
}

fn long_roots(rs: &RootSystem) -> Vec<usize> {
    let long = rs.long_root_length();
    (0..rs.num_roots()).filter(|&k| rs.inner(&rs.root(k), &rs.root(k)) == long).collect()
}

/// B₂ long-root points and G₂ long-A₂ torsion layers.
pub fn fixtures(opts: &RunOpts) -> CheckReport {
    let mut r = CheckReport::new("fixtures", None);
    guarded(&mut r, |r| {
        let b2 = RootSystem::build("B2")?;
        let long = long_roots(&b2);
        let pos_long: Vec<IntMatrix> = vec![long.iter().filter(|&&k| b2.is_positive_index(k)).map(|&k| b2.root(k)).collect()];
        let comps = crate::lattice::torsion_phases(&pos_long[0], 2);
        r.check(comps.len() == 2, || format!("B2 long-root intersection has {} components", comps.len()));
        let points: Vec<Layer> = layers(&b2)?.into_iter().filter(|l| l.dim == 0).collect();
        let id = points.iter().find(|l| is_zero_phase(l));
        let other = points.iter().find(|l| !is_zero_phase(l));
        match (id, other) {
            (Some(id), Some(other)) => {
                r.check(is_indecomposable(&b2, id), || "B2 identity point is decomposable".into());
                r.check(!is_indecomposable(&b2, other), || "B2 second point is indecomposable".into());
                r.check(other.phi_y.indices == long, || format!("B2 second point has Φ_Y = {:?}", other.phi_y.indices));
                let g = gamma_group(&b2, other);
                r.check(g.divisors == vec![2], || format!("B2 Γ = {:?}", g.divisors));
                let y = other.point(opts.order)?;
                r.note(format!("B2 second point: e^α = {:?}", y.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()));
            }
            _ => r.check(false, || "B2 point layers missing".into()),
        }

        let g2 = RootSystem::build("G2")?;
        let long = long_roots(&g2);
        let tors: Vec<Layer> = layers(&g2)?.into_iter().filter(|l| l.phi_y.indices == long).collect();
        r.check(tors.len() == 2, || format!("G2 long-A2 layers: {}", tors.len()));
        let omega = FieldScalar::root_of_unity(3, 1);
        let omega2 = &omega * &omega;
        r.check(omega.pow(3)?.is_one() && !omega.is_one(), || "ω³ ≠ 1 or ω = 1".into());
        let mut short_values = Vec::new();
        for l in &tors {
            let y = l.point(opts.order)?;
            for &k in &long {
                r.check(y.character(&g2.root(k)).is_one(), || "G2: a long root is nontrivial on its own layer".into());
            }
            short_values.push(y.character(&g2.root(0)));
            let g = gamma_group(&g2, l);
            r.check(g.divisors == vec![3], || format!("G2 Γ = {:?}", g.divisors));
            r.check(is_indecomposable(&g2, l), || "G2 long A2 layer is decomposable".into());
        }
        for v in [&omega, &omega2] {
            r.check(short_values.iter().filter(|x| *x == v).count() == 1, || format!("G2: e^α₁ = {v} is not attained once"));
        }
        let p = TorusPoint::new(vec![FieldScalar::one(), omega.clone()])?;
        let cent = g2.centralizer_subsystem(&p);
        r.check(cent.indices == vec![0, g2.negate_index(0)], || format!("G2 centralizer of (1, ω): {:?}", cent.indices));
        Ok(())
    });
    r
}

/// Point key and RREF for every sampled x; all RREFs pairwise distinct.
/// Also checks that the data read back from Q(x) matches x.
pub fn injectivity(rs: &RootSystem, opts: &RunOpts) -> CheckReport {
    let mut r = CheckReport::new("injectivity", Some(rs.label()));
    let mut rng = opts.rng(6);
    let classical = rs.is_classical();
    if !classical {
        r.note("exceptional type: distinctness is reported, not asserted".into());
    }
    guarded(&mut r, |r| {
        let sampler = Sampler::new(rs, opts.order)?;
        let samples = sampler.sample_distinct(opts.samples, &mut rng)?;
        r.check(samples.len() >= opts.samples, || format!("only {} distinct points", samples.len()));
        let mut seen: BTreeMap<Vec<Vec<String>>, String> = BTreeMap::new();
        for s in &samples {
            let q = limit_subspace(rs, &s.x)?;
            let key = crate::sampling::point_key(&s.x);
            match seen.insert(q.key(), key.clone()) {
                Some(prev) if classical => r.check(false, || format!("equal subspaces for {prev} and {key}")),
                Some(prev) => r.note(format!("equal subspaces for {prev} and {key}")),
                None => r.check(true, String::new),
            }
            check_recovery(rs, &s.x, &q, r)?;
        }
        let points = torsion_point_subspaces(rs, opts.order)?;
        for (i, (ki, qi)) in points.iter().enumerate() {
            for (kj, qj) in &points[i + 1..] {
                if classical {
                    r.check(qi != qj, || format!("torsion points {ki} and {kj} give equal subspaces"));
                } else if qi == qj {
                    r.note(format!("torsion points {ki} and {kj} give equal subspaces"));
                }
            }
        }
        r.note(format!("{} torsion point layers compared exhaustively", points.len()));
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for s in &samples {
            *counts.entry(s.class.name()).or_default() += 1;
        }
        r.note(format!("classes: {counts:?}"));
        Ok(())
    });
    r
}

fn check_recovery(rs: &RootSystem, x: &XPoint, q: &Subspace, r: &mut CheckReport) -> Result<()> {
    let wg = rs.weyl()?;
    let local = x.local(rs)?;
    let rec = recover_data(rs, q)?;
    let mut phi: Vec<usize> = local.phi_y.iter().map(|&k| rs.abs_index(wg.act_root(x.w, k))).collect();
    phi.sort();
    r.check(rec.phi_y == phi, || format!("recovered Φ_Y {:?} ≠ {phi:?} at {x:?}", rec.phi_y));
    let expected = expected_profile(rs, x)?;
    r.check(rec.profile == expected, || format!("recovered profile differs at {x:?}"));
    if !local.phi_y.is_empty() {
        let d = DegreeOne::of(rs);
        let chart = nested::gaudin_chart_hamiltonians(&local.coords, &x.nested, &x.t)?;
        let rows: Vec<HVec> = chart
            .into_iter()
            .map(|h| {
                let mut v = d.zero();
                for (&k, c) in local.phi_y.iter().zip(h) {
                    v[k] = c;
                }
                w_action(rs, x.w, &v, TauAction::SELECTED)
            })
            .collect::<Result<_>>()?;
        r.check(rec.gaudin == Subspace::from_rows(rows, d.dim()), || format!("recovered Gaudin part differs at {x:?}"));
    }
    Ok(())
}

/// Q(x) at every non-identity point layer, with the fixed nested set and
/// chart values 2, 3, 4, …
pub fn torsion_point_subspaces(rs: &RootSystem, order: u32) -> Result<Vec<(String, Subspace)>> {
    let n = rs.rank();
    let full: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for l in layers(rs)?.into_iter().filter(|l| l.dim == 0 && !is_zero_phase(l)) {
        let y = l.point(order)?;
        let local = crate::hamiltonians::limit::LocalData::new(rs, &full, y.coords())?;
        let s = crate::sampling::fixed_nested_set(&local);
        let t: Vec<FieldScalar> = (0..s.len()).map(|k| FieldScalar::from_int(k as i64 + 2)).collect();
        let x = XPoint::new(rs, 0, full.clone(), y.coords().to_vec(), s.elements().to_vec(), t)?;
        let phases: Vec<String> = l.phases.iter().map(|p| p.to_string()).collect();
        out.push((format!("θ = ({})", phases.join(", ")), limit_subspace(rs, &x)?));
    }
    Ok(out)
}

/// The two G₂ long-A₂ torsion points with the same S and t: computes both
/// subspaces and reports whether they coincide.
pub fn g2_pair(opts: &RunOpts) -> Result<(Subspace, Subspace)> {
    let g2 = RootSystem::build("G2")?;
    let long = long_roots(&g2);
    let tors: Vec<Layer> = layers(&g2)?.into_iter().filter(|l| l.phi_y.indices == long).collect();
    let mut out = Vec::new();
    for l in &tors {
        let y = l.point(opts.order)?;
        let local = crate::hamiltonians::limit::LocalData::new(&g2, &[0, 1], y.coords())?;
        let s = crate::sampling::fixed_nested_set(&local);
        let t = vec![FieldScalar::from_int(2), FieldScalar::from_int(3)];
        let x = XPoint::new(&g2, 0, vec![0, 1], y.coords().to_vec(), s.elements().to_vec(), t)?;
        out.push(limit_subspace(&g2, &x)?);
    }
    let b = out.pop().ok_or_else(|| Error::Shape("missing G2 layer".into()))?;
    let a = out.pop().ok_or_else(|| Error::Shape("missing G2 layer".into()))?;
    Ok((a, b))
}

pub fn g2_report(opts: &RunOpts) -> CheckReport {
    let mut r = CheckReport::new("g2-torsion-pair", None);
    guarded(&mut r, |r| {
        let (a, b) = g2_pair(opts)?;
        r.check(a.dim() == 2 && b.dim() == 2, || "G2 pair dimensions".into());
        r.note(format!("ω and ω² layers give {} subspaces", if a == b { "equal" } else { "distinct" }));
        Ok(())
    });
    r
}

/// Chain matrices are unitriangular with determinant 1, and agree with the
/// exponents of t_Q read off from chart values β_v(χ(t)).
pub fn triangularity(rs: &RootSystem) -> CheckReport {
    let mut r = CheckReport::new("triangularity", Some(rs.label()));
    guarded(&mut r, |r| {
        let diagram = Diagram::from_gram(rs.gram());
        let sets = maximal_nested_sets(&diagram);
        for s in &sets {
            for extra in [0, 2] {
                let m = chain_matrix(s, extra);
                r.check(m.is_lower_unitriangular(), || format!("not unitriangular for {:?}", s.to_lists()));
                r.check(m.determinant()?.is_one(), || format!("determinant ≠ 1 for {:?}", s.to_lists()));
            }
            let m = chain_matrix(s, 0);
            let basis = s.adapted_basis();
            let elems = s.elements();
            let mut probe = ExactMatrix::zeros(elems.len(), elems.len());
            for (j, &q) in elems.iter().enumerate() {
                let values = elems.iter().map(|&p| if p == q { FieldScalar::from_int(2) } else { FieldScalar::one() }).collect();
                let t = ChartCoords::new(s, values)?;
                let chi = nested::chart_point(s, &t, rs.rank());
                for (i, p) in elems.iter().enumerate() {
                    let v = basis.vertex_of[p];
                    if chi[v] == FieldScalar::from_int(2) {
                        probe.set(i, j, FieldScalar::one());
                    }
                }
            }
            r.check(probe == m, || format!("chart exponents disagree for {:?}", s.to_lists()));
        }
        r.note(format!("{} maximal nested sets", sets.len()));
        Ok(())
    });
    r
}

/// Chart Gaudin Hamiltonians: rank n everywhere, equal to β_i(χ)·H(h_i, χ) at
/// interior points, with c_Φ in their span.
pub fn gaudin_chart(rs: &RootSystem, opts: &RunOpts, per_set: usize) -> CheckReport {
    let mut r = CheckReport::new("gaudin-chart", Some(rs.label()));
    let mut rng = opts.rng(8);
    guarded(&mut r, |r| {
        let d = DegreeOne::of(rs);
        let n = rs.rank();
        let roots = rs.positive_roots().to_vec();
        let diagram = Diagram::from_gram(rs.gram());
        let pad = |h: Vec<FieldScalar>| -> HVec {
            let mut v = h;
            v.extend(vec![FieldScalar::zero(); n]);
            v
        };
        for s in maximal_nested_sets(&diagram) {
            let mut done = 0;
            let mut tries = 0;
            while done < per_set && tries < 100 * per_set {
                tries += 1;
                let boundary = done % 2 == 1;
                let values: Vec<FieldScalar> = s
                    .elements()
                    .iter()
                    .map(|&p| if boundary && !s.is_top(p) && rng.gen_bool(0.5) { FieldScalar::zero() } else { random_scalar(&mut rng) })
                    .collect();
                let t = ChartCoords::new(&s, values)?;
                if nested::check_generic(&roots, &s, &t).is_err() {
                    continue;
                }
                done += 1;
                let rows = nested::gaudin_chart_hamiltonians(&roots, &s, &t)?;
                let span = Subspace::from_rows(rows.iter().cloned().map(pad).collect(), d.dim());
                r.check(span.dim() == n, || format!("rank {} at {:?} {:?}", span.dim(), s.to_lists(), t));
                r.check(span.contains(&d.c_phi()), || format!("c_Φ outside the chart span at {:?} {:?}", s.to_lists(), t));
                if t.is_interior(&s) {
                    let chi = nested::chart_point(&s, &t, n);
                    for (i, row) in rows.iter().enumerate() {
                        let h = d.gaudin_hamiltonian(&chi, &d.coweight(i))?;
                        let expected: Vec<FieldScalar> = h[..d.num_roots()].iter().map(|x| x * &chi[i]).collect();
                        r.check(*row == expected, || format!("row {} ≠ β_i(χ)H(h_i, χ) at {:?} {:?}", i + 1, s.to_lists(), t));
                    }
                    let g = d.gaudin_subspace(&chi)?;
                    r.check(g.contains(&d.c_phi()), || "c_Φ ∉ G(χ)".into());
                    r.check(g == span, || format!("chart span ≠ G(χ) at {:?}", s.to_lists()));
                }
            }
        }
        Ok(())
    });
    r
}

/// The three ε-path fixtures: flat limit and Plücker limit of Q(C(ε)) both
/// equal Q(x); entrywise RREF limits are reported.
pub fn degeneration() -> CheckReport {
    let mut r = CheckReport::new("degeneration", None);
    guarded(&mut r, |r| {
        for fx in degenerate::fixtures() {
            let rs = RootSystem::build(fx.label)?;
            let x = XPoint::new(&rs, 0, fx.subset.clone(), fx.y.clone(), fx.nested.clone(), fx.t.clone())?;
            let q = limit_subspace(&rs, &x)?;
            let rows = fx.path.bethe_rows(&rs)?;
            let cols = DegreeOne::of(&rs).dim();
            let flat = flat_limit(&rows, cols)?;
            r.check(flat == q, || format!("{}: flat limit ≠ Q(x)", fx.name));
            r.check(normalise(plucker_limit(&rows, cols)?) == plucker(&q), || format!("{}: Plücker limit ≠ Q(x)", fx.name));
            let entrywise = match rref_limit(&rows, cols)? {
                Some(l) if l == q => "entrywise RREF limit equals Q(x)",
                Some(_) => "entrywise RREF limit differs from Q(x)",
                None => "RREF entries diverge (pivot columns change in the limit)",
            };
            r.note(format!("{}: {entrywise}", fx.name));
            let wg = rs.weyl()?;
            for w in 0..wg.order() {
                let path = fx.path.transport(&rs, w)?;
                let mut xw = x.clone();
                xw.w = w;
                let lhs = flat_limit(&path.bethe_rows(&rs)?, cols)?;
                r.check(lhs == limit_subspace(&rs, &xw)?, || format!("{}: transported by {:?}", fx.name, wg.word(w)));
            }
        }
        Ok(())
    });
    r
}

fn random_int_matrix<R: Rng>(rng: &mut R) -> IntMatrix {
    let rows = rng.gen_range(1..=3);
    let cols = rng.gen_range(1..=3);
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-4..=4)).collect()).collect()
}

fn det_i64(m: &IntMatrix) -> i64 {
    ExactMatrix::from_ints(m).determinant().ok().and_then(|d| d.as_rational()).map_or(0, |q| i64::try_from(q.to_integer()).unwrap())
}

/// Number of x ∈ (ℤ/N)ⁿ with Mx ≡ 0 mod N.
fn count_solutions(m: &IntMatrix, n_cols: usize, modulus: i64) -> i64 {
    let total = modulus.pow(n_cols as u32);
    (0..total)
        .filter(|&code| {
            let x: Vec<i64> = (0..n_cols).map(|k| code / modulus.pow(k as u32) % modulus).collect();
            m.iter().all(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(modulus) == 0)
        })
        .count() as i64
}

/// Lattice and nested-set oracles: SNF against unimodularity and brute-force
/// torsion counts, saturation against brute-force membership, the A3 nested
/// set census, and the diagram criterion against the root criterion.
pub fn oracles(opts: &RunOpts, count: usize) -> CheckReport {
    let mut r = CheckReport::new("oracles", None);
    let mut rng = opts.rng(10);
    guarded(&mut r, |r| {
        for _ in 0..count {
            let m = random_int_matrix(&mut rng);
            let cols = m[0].len();
            let snf = smith_normal_form(&m);
            r.check(mat_mul(&mat_mul(&snf.u, &m), &snf.v) == snf.d, || format!("UMV ≠ D for {m:?}"));
            r.check(det_i64(&snf.u).abs() == 1 && det_i64(&snf.v).abs() == 1, || format!("U or V not unimodular for {m:?}"));
            let divs = snf.divisors();
            r.check(divs.windows(2).all(|w| w[1] % w[0] == 0), || format!("divisibility fails for {m:?}: {divs:?}"));
            r.check(
                (0..snf.d.len()).all(|i| (0..cols).all(|j| i == j || snf.d[i][j] == 0)),
                || format!("D not diagonal for {m:?}"),
            );
            let torsion: i64 = divs.iter().product();
            let modulus = divs.iter().fold(1, |a, &b| num_integer::lcm(a, b)).max(2);
            if modulus.pow(cols as u32) <= 20_000 {
                let free = cols - divs.len();
                let expect = torsion * modulus.pow(free as u32);
                let got = count_solutions(&m, cols, modulus);
                r.check(got == expect, || format!("{m:?}: {got} solutions mod {modulus}, expected {expect}"));
            }
            let sat = saturation(&m);
            r.check(saturation(&sat) == sat, || format!("saturation not idempotent for {m:?}"));
            let span = hermite_normal_form(&m);
            for _ in 0..5 {
                let v: Vec<i64> = (0..cols).map(|_| rng.gen_range(-3..=3)).collect();
                let brute = (1..=torsion.max(1)).any(|k| in_lattice(&span, &v.iter().map(|x| k * x).collect::<Vec<_>>()));
                r.check(in_lattice(&sat, &v) == brute, || format!("membership of {v:?} in sat({m:?})"));
            }
        }
        let a3 = RootSystem::build("A3")?;
        let sets = maximal_nested_sets(&Diagram::from_gram(a3.gram()));
        r.check(sets.len() == 5, || format!("A3 has {} maximal nested sets", sets.len()));
        for label in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
            let rs = RootSystem::build(label)?;
            let d = Diagram::from_gram(rs.gram());
            let k = (1u32 << rs.rank()) - 1;
            for fam_mask in 0u32..(1 << k) {
                let family: Vec<VertexSet> = (0..k).filter(|&i| fam_mask >> i & 1 == 1).map(|i| i + 1).collect();
                let a = d.is_nested(&family);
                let b = is_nested_by_roots(rs.positive_roots(), &family);
                r.check(a == b, || format!("{label}: criteria disagree on {family:?}"));
            }
        }
        Ok(())
    });
    r
}

/// All suites that depend on a root system.
pub fn typed_suites(rs: &RootSystem, opts: &RunOpts) -> Vec<CheckReport> {
    vec![
        hecke(rs, opts, 20),
        rank(rs, opts),
        injectivity(rs, opts),
        triangularity(rs),
        gaudin_chart(rs, opts, 4),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> RunOpts {
        RunOpts { seed: 3, samples: 12, order: 6 }
    }

    #[test]
    fn small_suites_pass() {
        let rs = RootSystem::build("A2").unwrap();
        for report in [
            hecke(&rs, &opts(), 3),
            rank(&rs, &opts()),
            injectivity(&rs, &opts()),
            triangularity(&rs),
            gaudin_chart(&rs, &opts(), 2),
            spin_chain(&opts(), 2),
            type_a(&opts(), 2),
            fixtures(&opts()),
            degeneration(),
            oracles(&opts(), 20),
        ] {
            assert!(report.passed, "{}: {:?}", report.summary(), report.failures);
        }
    }
}
