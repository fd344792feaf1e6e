//! Nested sets on Coxeter diagrams, adapted bases and the chart functions of
//! the wonderful model of a root subspace arrangement.
//!
//! Vertex sets are bitmasks over the simple roots of the ambient system Δ_Y;
//! roots are integer vectors in that simple basis.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact::FieldScalar;
use crate::rootsys::{int_rank, IntVec};

pub type VertexSet = u32;

pub fn vertices(set: VertexSet) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| set >> i & 1 == 1)
}

pub fn support(root: &[i64]) -> VertexSet {
    root.iter().enumerate().filter(|(_, &c)| c != 0).fold(0, |m, (i, _)| m | 1 << i)
}

pub fn set_from_list(list: &[usize]) -> VertexSet {
    list.iter().fold(0, |m, &i| m | 1 << i)
}

/// The Coxeter diagram: vertex i and j are joined iff (α_i, α_j) ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Diagram {
    pub fn from_gram(gram: &[IntVec]) -> Self {
        let n = gram.len();
        let adj = (0..n).map(|i| (0..n).filter(|&j| j != i && gram[i][j] != 0).fold(0, |m, j| m | 1 << j)).collect();
        Diagram { n, adj }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn all(&self) -> VertexSet {
        if self.n == 0 {
            0
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn neighbours(&self, set: VertexSet) -> VertexSet {
        vertices(set).fold(0, |m, i| m | self.adj[i])
    }

    pub fn adjacent(&self, a: VertexSet, b: VertexSet) -> bool {
        self.neighbours(a) & b != 0
    }

    /// Connected components of the induced subgraph, ordered by lowest vertex.
    pub fn components(&self, set: VertexSet) -> Vec<VertexSet> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let grown = (comp | self.neighbours(comp)) & set;
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn is_connected(&self, set: VertexSet) -> bool {
        set != 0 && self.components(set).len() == 1
    }

    /// Nestedness via subdiagrams: connected elements, pairwise nested or
    /// disjoint and non-adjacent.
    pub fn is_nested(&self, family: &[VertexSet]) -> bool {
        family.iter().all(|&p| self.is_connected(p))
            && family.iter().enumerate().all(|(i, &p)| {
                family[i + 1..].iter().all(|&q| {
                    p & q == p || p & q == q || (p & q == 0 && !self.adjacent(p, q))
                })
            })
    }
}

/// A nested set; elements ordered by decreasing size, then by mask.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NestedSet {
    elements: Vec<VertexSet>,
}

fn canonical_order(elements: &mut [VertexSet]) {
    elements.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
}

impl NestedSet {
    /// Validates maximality against the diagram.
    pub fn new(diagram: &Diagram, mut elements: Vec<VertexSet>) -> Result<Self> {
        canonical_order(&mut elements);
        let before = elements.len();
        elements.dedup();
        if elements.len() != before {
            return Err(Error::NestedSet("repeated element".into()));
        }
        if elements.iter().any(|&e| e & !diagram.all() != 0) {
            return Err(Error::NestedSet("element uses a vertex outside the diagram".into()));
        }
        if !diagram.is_nested(&elements) {
            return Err(Error::NestedSet("elements are not pairwise nested or separated".into()));
        }
        if elements.len() != diagram.size() {
            return Err(Error::NestedSet(format!(
                "not maximal: {} elements for rank {}",
                elements.len(),
                diagram.size()
            )));
        }
        for comp in diagram.components(diagram.all()) {
            if !elements.contains(&comp) {
                return Err(Error::NestedSet("a connected component of the diagram is missing".into()));
            }
        }
        Ok(NestedSet { elements })
    }

    pub fn empty() -> Self {
        NestedSet { elements: Vec::new() }
    }

    pub fn elements(&self) -> &[VertexSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Minimal element containing the vertex set, if any.
    pub fn minimal_containing(&self, set: VertexSet) -> Option<VertexSet> {
        self.elements.iter().copied().filter(|&p| p & set == set).min_by_key(|p| p.count_ones())
    }

    /// A_S(α): the minimal element whose span contains α.
    pub fn a_s(&self, root: &[i64]) -> Result<VertexSet> {
        self.minimal_containing(support(root))
            .ok_or_else(|| Error::Precondition(format!("root {root:?} lies in no element of the nested set")))
    }

    /// Elements Q with lower ⊆ Q ⊊ upper.
    fn between(&self, lower: VertexSet, upper: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.elements.iter().copied().filter(move |&q| q & lower == lower && q & upper == q && q != upper)
    }

    pub fn is_top(&self, p: VertexSet) -> bool {
        !self.elements.iter().any(|&q| q != p && q & p == p)
    }

    /// Smallest element strictly containing p.
    pub fn parent(&self, p: VertexSet) -> Option<VertexSet> {
        self.elements.iter().copied().filter(|&q| q != p && q & p == p).min_by_key(|q| q.count_ones())
    }

    /// β_P for every element: the vertex of P outside its maximal proper
    /// sub-elements (smallest such vertex).
    pub fn adapted_basis(&self) -> AdaptedBasis {
        let mut vertex_of = BTreeMap::new();
        let mut element_of = BTreeMap::new();
        for &p in &self.elements {
            let inner = self.elements.iter().filter(|&&q| q != p && q & p == q).fold(0, |m, &q| m | q);
            let v = vertices(p & !inner).next().expect("maximal nested sets leave one vertex");
            vertex_of.insert(p, v);
            element_of.insert(v, p);
        }
        AdaptedBasis { vertex_of, element_of }
    }

    /// Vertex lists, 1-based, in element order.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.elements.iter().map(|&p| vertices(p).map(|i| i + 1).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub vertex_of: BTreeMap<VertexSet, usize>,
    pub element_of: BTreeMap<usize, VertexSet>,
}

fn maximal_connected(diagram: &Diagram, set: VertexSet) -> Vec<Vec<VertexSet>> {
    let mut out = Vec::new();
    for v in vertices(set) {
        let mut partial: Vec<Vec<VertexSet>> = vec![vec![set]];
        for comp in diagram.components(set & !(1 << v)) {
            let sub = maximal_connected(diagram, comp);
            partial = partial
                .iter()
                .flat_map(|p| {
                    sub.iter().map(move |s| {
                        let mut q = p.clone();
                        q.extend(s);
                        q
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out
}

/// All maximal nested sets, by recursive decomposition of the diagram.
pub fn maximal_nested_sets(diagram: &Diagram) -> Vec<NestedSet> {
    let mut families: Vec<Vec<VertexSet>> = vec![Vec::new()];
    for comp in diagram.components(diagram.all()) {
        let sub = maximal_connected(diagram, comp);
        families = families
            .iter()
            .flat_map(|f| {
                sub.iter().map(move |s| {
                    let mut g = f.clone();
                    g.extend(s);
                    g
                })
            })
            .collect();
    }
    let mut out: BTreeSet<NestedSet> = BTreeSet::new();
    for mut f in families {
        canonical_order(&mut f);
        out.insert(NestedSet { elements: f });
    }
    out.into_iter().collect()
}

/// Chart coordinates t_P, keyed by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartCoords {
    pub values: BTreeMap<VertexSet, FieldScalar>,
}

impl ChartCoords {
    pub fn new(s: &NestedSet, values: Vec<FieldScalar>) -> Result<Self> {
        if values.len() != s.len() {
            return Err(Error::NestedSet(format!("{} chart coordinates for {} elements", values.len(), s.len())));
        }
        Ok(ChartCoords { values: s.elements().iter().copied().zip(values).collect() })
    }

    pub fn get(&self, p: VertexSet) -> &FieldScalar {
        &self.values[&p]
    }

    pub fn is_interior(&self, s: &NestedSet) -> bool {
        s.elements().iter().all(|&p| s.is_top(p) || !self.get(p).is_zero())
    }
}

/// r_α(t) = Σ_{j ∈ supp α} c_j Π_{A_S(β_j) ⊆ Q ⊊ A_S(α)} t_Q.
pub fn r_alpha(root: &[i64], s: &NestedSet, t: &ChartCoords) -> Result<FieldScalar> {
    let top = s.a_s(root)?;
    let mut acc = FieldScalar::zero();
    for (j, &c) in root.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let aj = s.minimal_containing(1 << j).expect("a_s exists for the root");
        let mut term = FieldScalar::from_int(c);
        for q in s.between(aj, top) {
            term *= t.get(q);
        }
        acc += &term;
    }
    Ok(acc)
}

/// Checks r_α(t) ≠ 0 for every given root.
pub fn check_generic(roots: &[IntVec], s: &NestedSet, t: &ChartCoords) -> Result<()> {
    for r in roots {
        if r_alpha(r, s, t)?.is_zero() {
            return Err(Error::ChartGenericity(format!("{r:?}")));
        }
    }
    Ok(())
}

/// w_{β,α}(t) = (r_β/r_α) Π_{A_S(β) ⊆ Q ⊊ A_S(α)} t_Q.
pub fn eval_ratio(beta: &[i64], alpha: &[i64], s: &NestedSet, t: &ChartCoords) -> Result<FieldScalar> {
    let ab = s.a_s(beta)?;
    let aa = s.a_s(alpha)?;
    if aa & ab != ab {
        return Err(Error::Precondition("A_S(β) ⊄ A_S(α)".into()));
    }
    let ra = r_alpha(alpha, s, t)?;
    if ra.is_zero() {
        return Err(Error::ChartGenericity(format!("{alpha:?}")));
    }
    let mut v = r_alpha(beta, s, t)?.checked_div(&ra)?;
    for q in s.between(ab, aa) {
        v *= t.get(q);
    }
    Ok(v)
}

/// Values β_j(χ(t)) = Π_{P ⊇ A_S(β_j)} t_P on the simple roots.
pub fn chart_point(s: &NestedSet, t: &ChartCoords, rank: usize) -> Vec<FieldScalar> {
    (0..rank)
        .map(|j| {
            let aj = s.minimal_containing(1 << j).expect("maximal nested sets cover every vertex");
            s.elements().iter().filter(|&&p| p & aj == aj).map(|&p| t.get(p).clone()).product()
        })
        .collect()
}

/// H_i = Σ_α α(b_i) w_{β_i,α}(t) t_α for each simple root β_i, as coefficient
/// rows over `roots` (positive roots in the simple basis).
pub fn gaudin_chart_hamiltonians(roots: &[IntVec], s: &NestedSet, t: &ChartCoords) -> Result<Vec<Vec<FieldScalar>>> {
    check_generic(roots, s, t)?;
    let rank = roots.first().map_or(0, |r| r.len());
    (0..rank)
        .map(|i| {
            let mut beta = vec![0; rank];
            beta[i] = 1;
            roots
                .iter()
                .map(|a| {
                    if a[i] == 0 {
                        Ok(FieldScalar::zero())
                    } else {
                        Ok(&FieldScalar::from_int(a[i]) * &eval_ratio(&beta, a, s, t)?)
                    }
                })
                .collect()
        })
        .collect()
}

/// Brute-force nestedness from root data alone: every element spans an
/// indecomposable root subspace, and every antichain spans a direct sum in
/// which each root lies in one summand.
pub fn is_nested_by_roots(roots: &[IntVec], family: &[VertexSet]) -> bool {
    let in_span = |r: &IntVec, set: VertexSet| support(r) & !set == 0;
    for &p in family {
        if p == 0 {
            return false;
        }
        let inside: Vec<&IntVec> = roots.iter().filter(|r| in_span(r, p)).collect();
        let dim = p.count_ones() as usize;
        if inside.len() > 20 {
            unreachable!("brute force limited to small systems");
        }
        // a decomposition splits the roots into two parts with additive ranks
        for mask in 1u32..(1 << inside.len()) - 1 {
            let (a, b): (Vec<IntVec>, Vec<IntVec>) = {
                let mut a = Vec::new();
                let mut b = Vec::new();
                for (i, r) in inside.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        a.push((*r).clone());
                    } else {
                        b.push((*r).clone());
                    }
                }
                (a, b)
            };
            if int_rank(&a) + int_rank(&b) == dim && int_rank(&a) > 0 && int_rank(&b) > 0 {
                return false;
            }
        }
        if int_rank(&inside.iter().map(|r| (*r).clone()).collect::<Vec<_>>()) != dim {
            return false;
        }
    }
    let m = family.len();
    for mask in 1u32..(1 << m) {
        let chosen: Vec<VertexSet> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| family[i]).collect();
        if chosen.len() < 2 {
            continue;
        }
        let comparable = |a: VertexSet, b: VertexSet| a & b == a || a & b == b;
        if chosen.iter().enumerate().any(|(i, &a)| chosen[i + 1..].iter().any(|&b| comparable(a, b))) {
            continue;
        }
        let total: usize = chosen.iter().map(|p| p.count_ones() as usize).sum();
        let mut gens: Vec<IntVec> = Vec::new();
        for &p in &chosen {
            for i in vertices(p) {
                let mut e = vec![0; roots[0].len()];
                e[i] = 1;
                gens.push(e);
            }
        }
        if int_rank(&gens) != total {
            return false;
        }
        for r in roots {
            let mut rows = gens.clone();
            rows.push(r.clone());
            let in_sum = int_rank(&rows) == total;
            if in_sum && !chosen.iter().any(|&p| in_span(r, p)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn diagram(label: &str) -> (RootSystem, Diagram) {
        let rs = RootSystem::build(label).unwrap();
        let d = Diagram::from_gram(rs.gram());
        (rs, d)
    }

    #[test]
    fn enumeration_examples() {
        let (_, a2) = diagram("A2");
        let sets: Vec<Vec<Vec<usize>>> = maximal_nested_sets(&a2).iter().map(|s| s.to_lists()).collect();
        assert_eq!(sets, vec![vec![vec![1, 2], vec![1]], vec![vec![1, 2], vec![2]]]);
        let (_, a1) = diagram("A1");
        assert_eq!(maximal_nested_sets(&a1).len(), 1);
        let (_, a3) = diagram("A3");
        let got: BTreeSet<Vec<Vec<usize>>> = maximal_nested_sets(&a3).iter().map(|s| s.to_lists()).collect();
        let expect: BTreeSet<Vec<Vec<usize>>> = [
            vec![vec![1, 2, 3], vec![1, 2], vec![1]],
            vec![vec![1, 2, 3], vec![1, 2], vec![2]],
            vec![vec![1, 2, 3], vec![2, 3], vec![2]],
            vec![vec![1, 2, 3], vec![2, 3], vec![3]],
            vec![vec![1, 2, 3], vec![1], vec![3]],
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn a_s_examples() {
        let (_, a2) = diagram("A2");
        let s = NestedSet::new(&a2, vec![0b11, 0b01]).unwrap();
        assert_eq!(s.a_s(&[1, 1]).unwrap(), 0b11);
        assert_eq!(s.a_s(&[1, 0]).unwrap(), 0b01);
        let (_, a3) = diagram("A3");
        let s = NestedSet::new(&a3, vec![0b111, 0b001, 0b100]).unwrap();
        assert_eq!(s.a_s(&[0, 1, 0]).unwrap(), 0b111);
        let basis = s.adapted_basis();
        assert_eq!(basis.vertex_of[&0b111], 1);
        for (&p, &v) in &basis.vertex_of {
            let mut e = vec![0; 3];
            e[v] = 1;
            assert_eq!(s.a_s(&e).unwrap(), p);
        }
    }

    #[test]
    fn invalid_nested_sets() {
        let (_, a3) = diagram("A3");
        assert!(NestedSet::new(&a3, vec![0b111, 0b011]).is_err());
        assert!(NestedSet::new(&a3, vec![0b111, 0b001, 0b010]).is_err());
        assert!(NestedSet::new(&a3, vec![0b111, 0b011, 0b110]).is_err());
        assert!(NestedSet::new(&a3, vec![0b011, 0b001, 0b100]).is_err());
    }

    #[test]
    fn ratio_examples() {
        let (_, a2) = diagram("A2");
        let s = NestedSet::new(&a2, vec![0b01, 0b11]).unwrap();
        let two = FieldScalar::from_int(2);
        let t = ChartCoords::new(&s, vec![FieldScalar::from_int(5), two.clone()]).unwrap();
        // elements are ordered {12}, {1}
        assert_eq!(t.get(0b01), &two);
        let w = eval_ratio(&[0, 1], &[1, 1], &s, &t).unwrap();
        assert_eq!(w, FieldScalar::frac(1, 3));
        let chi = chart_point(&s, &t, 2);
        assert_eq!(w, chi[1].checked_div(&(&chi[0] + &chi[1])).unwrap());
        let tb = ChartCoords::new(&s, vec![FieldScalar::from_int(5), FieldScalar::zero()]).unwrap();
        assert!(eval_ratio(&[0, 1], &[1, 1], &s, &tb).unwrap().is_one());
        assert!(eval_ratio(&[1, 1], &[1, 1], &s, &t).unwrap().is_one());
    }

    #[test]
    fn chart_hamiltonians_a1() {
        let (_, a1) = diagram("A1");
        let s = NestedSet::new(&a1, vec![1]).unwrap();
        let t = ChartCoords::new(&s, vec![FieldScalar::from_int(7)]).unwrap();
        let h = gaudin_chart_hamiltonians(&[vec![1]], &s, &t).unwrap();
        assert_eq!(h, vec![vec![FieldScalar::one()]]);
    }

    #[test]
    fn diagram_and_root_criteria_agree_on_a3() {
        let (rs, a3) = diagram("A3");
        for fam_mask in 0u32..(1 << 7) {
            let family: Vec<VertexSet> = (0..7).filter(|&i| fam_mask >> i & 1 == 1).map(|i| i as u32 + 1).collect();
            assert_eq!(a3.is_nested(&family), is_nested_by_roots(rs.positive_roots(), &family), "{family:?}");
        }
    }
}
