//! Finite reduced root systems, their Weyl groups and root subsystems.
//!
//! Roots are integer vectors in the simple-root basis. The Cartan convention is
//! A_ij = 2(α_i, α_j)/(α_i, α_i), so s_i(α_j) = α_j − A_ij α_i, and the Gram
//! form normalizes the short roots of each component to squared length 2.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use crate::arrangement::TorusPoint;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, FieldScalar, Rational};

pub type IntVec = Vec<i64>;

pub const DEFAULT_WEYL_RANK_BOUND: usize = 4;

#[derive(Clone, Debug)]
pub struct WeylGroup {
    mats: Vec<Vec<IntVec>>,
    words: Vec<Vec<usize>>,
    lookup: HashMap<Vec<IntVec>, usize>,
    perms: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: String,
    rank: usize,
    cartan: Vec<IntVec>,
    gram: Vec<IntVec>,
    positive: Vec<IntVec>,
    lookup: HashMap<IntVec, usize>,
    weyl: Option<WeylGroup>,
}

/// A subset of the roots of a parent system, closed under negation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootSubsystem {
    pub indices: Vec<usize>,
}

fn chain(n: usize) -> Vec<IntVec> {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

fn cartan_for(kind: char, n: usize) -> Option<Vec<IntVec>> {
    let a = match (kind, n) {
        ('A', n) if n >= 1 => chain(n),
        ('B', n) if n >= 2 => {
            let mut a = chain(n);
            a[n - 1][n - 2] = -2;
            a
        }
        ('C', n) if n >= 2 => {
            let mut a = chain(n);
            a[n - 2][n - 1] = -2;
            a
        }
        ('D', n) if n >= 3 => {
            let mut a = chain(n);
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
            a
        }
        ('G', 2) => vec![vec![2, -3], vec![-1, 2]],
        ('F', 4) => {
            let mut a = chain(4);
            a[2][1] = -2;
            a
        }
        ('E', n) if (6..=8).contains(&n) => {
            let mut a = vec![vec![0; n]; n];
            for i in 0..n {
                a[i][i] = 2;
            }
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            for i in 3..n - 1 {
                edges.push((i, i + 1));
            }
            for (i, j) in edges {
                a[i][j] = -1;
                a[j][i] = -1;
            }
            a
        }
        _ => return None,
    };
    Some(a)
}

fn block_diag(blocks: &[Vec<IntVec>]) -> Vec<IntVec> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut a = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                a[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    a
}

fn parse_label(label: &str) -> Result<Vec<IntVec>> {
    let bad = || Error::UnsupportedLabel(label.to_string());
    if let Some(body) = label.strip_prefix("cartan:") {
        let rows: Vec<IntVec> = body
            .split(';')
            .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect::<std::result::Result<_, _>>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        return Ok(rows);
    }
    let mut blocks = Vec::new();
    for part in label.split(['x', '×']) {
        let mut chars = part.trim().chars();
        let kind = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        blocks.push(cartan_for(kind, n).ok_or_else(bad)?);
    }
    Ok(block_diag(&blocks))
}

/// Symmetrizes a Cartan matrix: G_ij = d_i A_ij with the shortest root of each
/// component of squared length 2.
fn gram_from_cartan(a: &[IntVec]) -> Result<Vec<IntVec>> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut comp = vec![start];
        d[start] = Some(Rational::from_integer(1.into()));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if a[j][i] == 0 {
                    return Err(Error::UnsupportedLabel("Cartan matrix is not symmetrizable".into()));
                }
                let dj = d[i].clone().unwrap() * Rational::new(a[i][j].into(), a[j][i].into());
                match &d[j] {
                    Some(old) if *old != dj => {
                        return Err(Error::UnsupportedLabel("Cartan matrix is not symmetrizable".into()))
                    }
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        queue.push_back(j);
                    }
                }
            }
        }
        let min = comp.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
        for &i in &comp {
            d[i] = Some(d[i].clone().unwrap() / &min);
        }
    }
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        let di = d[i].clone().unwrap();
        for j in 0..n {
            let v = &di * Rational::from_integer(a[i][j].into());
            if !v.is_integer() {
                return Err(Error::UnsupportedLabel("non-crystallographic Cartan matrix".into()));
            }
            g[i][j] = i64::try_from(v.to_integer()).unwrap();
        }
    }
    Ok(g)
}

fn height_lex(a: &IntVec, b: &IntVec) -> std::cmp::Ordering {
    let ha: i64 = a.iter().sum();
    let hb: i64 = b.iter().sum();
    ha.cmp(&hb).then_with(|| b.cmp(a))
}

fn mat_vec(m: &[IntVec], v: &[i64]) -> IntVec {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn mat_mul(a: &[IntVec], b: &[IntVec]) -> Vec<IntVec> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn identity(n: usize) -> Vec<IntVec> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn int_rank(rows: &[IntVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    ExactMatrix::from_ints(rows).rank()
}

impl RootSystem {
    pub fn build(label: &str) -> Result<Self> {
        Self::build_with_bound(label, DEFAULT_WEYL_RANK_BOUND)
    }

    /// E-types are built without the Weyl group; other types fail if their
    /// rank exceeds `bound` (F4 and G2 are always enumerated).
    pub fn build_with_bound(label: &str, bound: usize) -> Result<Self> {
        let cartan = parse_label(label)?;
        let n = cartan.len();
        let roots_only = label.split(['x', '×']).any(|p| p.trim().to_ascii_uppercase().starts_with('E'));
        let exempt = matches!(label.to_ascii_uppercase().as_str(), "F4" | "G2");
        if !roots_only && !exempt && n > bound {
            return Err(Error::RankBound { rank: n, bound });
        }
        Self::from_cartan_opts(label, cartan, !roots_only)
    }

    pub fn from_cartan(label: &str, cartan: Vec<IntVec>) -> Result<Self> {
        Self::from_cartan_opts(label, cartan, true)
    }

    fn from_cartan_opts(label: &str, cartan: Vec<IntVec>, with_weyl: bool) -> Result<Self> {
        let n = cartan.len();
        if cartan.iter().any(|r| r.len() != n) || (0..n).any(|i| cartan[i][i] != 2) {
            return Err(Error::UnsupportedLabel(format!("{label}: not a Cartan matrix")));
        }
        let gram = gram_from_cartan(&cartan)?;
        Self::assemble(label, cartan, gram, with_weyl)
    }

    /// Root system whose simple roots have the given Gram matrix.
    pub fn from_gram(label: &str, gram: Vec<IntVec>) -> Result<Self> {
        let n = gram.len();
        let mut cartan = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let (q, r) = (2 * gram[i][j]).div_rem(&gram[i][i]);
                if r != 0 {
                    return Err(Error::UnsupportedLabel(format!("{label}: Gram matrix is not crystallographic")));
                }
                cartan[i][j] = q;
            }
        }
        Self::assemble(label, cartan, gram, true)
    }

    fn assemble(label: &str, cartan: Vec<IntVec>, gram: Vec<IntVec>, with_weyl: bool) -> Result<Self> {
        let n = cartan.len();
        let simple: Vec<IntVec> = identity(n);
        let mut seen: BTreeSet<IntVec> = simple.iter().cloned().collect();
        let mut queue: VecDeque<IntVec> = simple.into_iter().collect();
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let w = reflect_simple(&cartan, i, &v);
                if seen.len() > 1000 {
                    return Err(Error::UnsupportedLabel(format!("{label}: root system is not finite")));
                }
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut positive: Vec<IntVec> = seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(height_lex);
        let p = positive.len();
        let mut lookup = HashMap::new();
        for (k, r) in positive.iter().enumerate() {
            lookup.insert(r.clone(), k);
            lookup.insert(r.iter().map(|x| -x).collect(), k + p);
        }
        let mut rs = RootSystem { label: label.to_string(), rank: n, cartan, gram, positive, lookup, weyl: None };
        if with_weyl {
            rs.weyl = Some(rs.enumerate_weyl()?);
        }
        Ok(rs)
    }

    fn enumerate_weyl(&self) -> Result<WeylGroup> {
        let n = self.rank;
        let gens: Vec<Vec<IntVec>> = (0..n).map(|i| self.simple_reflection_matrix(i)).collect();
        let mut mats = vec![identity(n)];
        let mut words = vec![Vec::new()];
        let mut lookup = HashMap::from([(identity(n), 0usize)]);
        let mut head = 0;
        while head < mats.len() {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(g, &mats[head]);
                if !lookup.contains_key(&m) {
                    if mats.len() >= 100_000 {
                        return Err(Error::RankBound { rank: n, bound: DEFAULT_WEYL_RANK_BOUND });
                    }
                    let mut w = vec![i];
                    w.extend(&words[head]);
                    lookup.insert(m.clone(), mats.len());
                    mats.push(m);
                    words.push(w);
                }
            }
            head += 1;
        }
        let nroots = 2 * self.positive.len();
        let perms: Vec<Vec<usize>> = mats
            .iter()
            .map(|m| (0..nroots).map(|k| self.lookup[&mat_vec(m, &self.root(k))]).collect())
            .collect();
        let inverse = mats
            .iter()
            .map(|m| {
                let id = identity(n);
                let inv = mats.iter().position(|x| mat_mul(m, x) == id).unwrap();
                inv
            })
            .collect();
        Ok(WeylGroup { mats, words, lookup, perms, inverse })
    }

    fn simple_reflection_matrix(&self, i: usize) -> Vec<IntVec> {
        let n = self.rank;
        let mut m = identity(n);
        for j in 0..n {
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when every simple factor is of type A, B, C or D.
    pub fn is_classical(&self) -> bool {
        !self.label.starts_with("cartan:")
            && self.label.split(['x', '×']).all(|p| matches!(p.trim().chars().next().map(|c| c.to_ascii_uppercase()), Some('A'..='D')))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[IntVec] {
        &self.cartan
    }

    pub fn gram(&self) -> &[IntVec] {
        &self.gram
    }

    /// Positive roots in height-then-lex order; simple roots come first.
    pub fn positive_roots(&self) -> &[IntVec] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    /// Root by index: indices below |Φ⁺| are positive, index k + |Φ⁺| is the
    /// negative of root k.
    pub fn root(&self, k: usize) -> IntVec {
        let p = self.positive.len();
        if k < p {
            self.positive[k].clone()
        } else {
            self.positive[k - p].iter().map(|x| -x).collect()
        }
    }

    pub fn roots(&self) -> Vec<IntVec> {
        (0..self.num_roots()).map(|k| self.root(k)).collect()
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.lookup.contains_key(v)
    }

    /// Index of ±root among the positive roots.
    pub fn abs_index(&self, k: usize) -> usize {
        k % self.positive.len()
    }

    pub fn negate_index(&self, k: usize) -> usize {
        let p = self.positive.len();
        if k < p {
            k + p
        } else {
            k - p
        }
    }

    pub fn is_positive_index(&self, k: usize) -> bool {
        k < self.positive.len()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// s_α(v) = v − ⟨v, α^∨⟩ α.
    pub fn reflect(&self, alpha: &[i64], v: &[i64]) -> IntVec {
        let c = 2 * self.inner(v, alpha) / self.inner(alpha, alpha);
        v.iter().zip(alpha).map(|(x, a)| x - c * a).collect()
    }

    pub fn long_root_length(&self) -> i64 {
        self.positive.iter().map(|r| self.inner(r, r)).max().unwrap_or(2)
    }

    pub fn weyl(&self) -> Result<&WeylGroup> {
        self.weyl.as_ref().ok_or_else(|| Error::NoWeylGroup(self.label.clone()))
    }

    /// Sub-root system spanned by the simple roots in `subset`, with the Gram
    /// form restricted from the parent.
    pub fn levi(&self, subset: &[usize]) -> Result<RootSystem> {
        let gram: Vec<IntVec> = subset.iter().map(|&i| subset.iter().map(|&j| self.gram[i][j]).collect()).collect();
        let label = format!(
            "{}[{}]",
            self.label,
            subset.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        );
        Self::from_gram(&label, gram)
    }

    /// Roots (indices, both signs) supported on the simple roots in `subset`.
    pub fn levi_indices(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.num_roots())
            .filter(|&k| self.root(k).iter().enumerate().all(|(i, &x)| x == 0 || subset.contains(&i)))
            .collect()
    }

    pub fn is_closed(&self, sub: &RootSubsystem) -> bool {
        let set: BTreeSet<usize> = sub.indices.iter().copied().collect();
        for &a in &sub.indices {
            if !set.contains(&self.negate_index(a)) {
                return false;
            }
            for &b in &sub.indices {
                let s: IntVec = self.root(a).iter().zip(self.root(b)).map(|(x, y)| x + y).collect();
                if let Some(k) = self.index_of(&s) {
                    if !set.contains(&k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn subsystem_rank(&self, sub: &RootSubsystem) -> usize {
        int_rank(&sub.indices.iter().map(|&k| self.root(k)).collect::<Vec<_>>())
    }

    /// Irreducible: nonempty and connected under non-orthogonality.
    pub fn is_irreducible(&self, sub: &RootSubsystem) -> bool {
        self.components(sub).len() == 1
    }

    /// Splits a subsystem into mutually orthogonal irreducible pieces.
    pub fn components(&self, sub: &RootSubsystem) -> Vec<RootSubsystem> {
        let idx = &sub.indices;
        let mut comp = vec![usize::MAX; idx.len()];
        let mut out = Vec::new();
        for s in 0..idx.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            comp[s] = c;
            let mut members = vec![idx[s]];
            let mut stack = vec![s];
            while let Some(i) = stack.pop() {
                for j in 0..idx.len() {
                    if comp[j] == usize::MAX && self.inner(&self.root(idx[i]), &self.root(idx[j])) != 0 {
                        comp[j] = c;
                        members.push(idx[j]);
                        stack.push(j);
                    }
                }
            }
            members.sort();
            out.push(RootSubsystem { indices: members });
        }
        out
    }

    /// All intersections of Φ with 2-planes spanned by two roots.
    pub fn rank2_full_subsystems(&self) -> Vec<RootSubsystem> {
        let p = self.num_positive();
        let mut found = BTreeSet::new();
        for a in 0..p {
            for b in a + 1..p {
                let pair = vec![self.root(a), self.root(b)];
                if int_rank(&pair) < 2 {
                    continue;
                }
                let indices: Vec<usize> = (0..self.num_roots())
                    .filter(|&k| {
                        let mut rows = pair.clone();
                        rows.push(self.root(k));
                        int_rank(&rows) == 2
                    })
                    .collect();
                found.insert(RootSubsystem { indices });
            }
        }
        found.into_iter().collect()
    }

    /// All closed symmetric rank-2 subsets of Φ.
    pub fn rank2_closed_subsystems(&self) -> Vec<RootSubsystem> {
        let mut found = BTreeSet::new();
        for full in self.rank2_full_subsystems() {
            let pos: Vec<usize> = full.indices.iter().copied().filter(|&k| self.is_positive_index(k)).collect();
            for mask in 1u32..(1 << pos.len()) {
                let mut indices: Vec<usize> = Vec::new();
                for (bit, &k) in pos.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        indices.push(k);
                        indices.push(self.negate_index(k));
                    }
                }
                indices.sort();
                let sub = RootSubsystem { indices };
                if self.subsystem_rank(&sub) == 2 && self.is_closed(&sub) {
                    found.insert(sub);
                }
            }
        }
        found.into_iter().collect()
    }

    /// {α ∈ Φ : e^α(point) = 1}.
    pub fn centralizer_subsystem(&self, point: &TorusPoint) -> RootSubsystem {
        let indices = (0..self.num_roots()).filter(|&k| point.character(&self.root(k)).is_one()).collect();
        RootSubsystem { indices }
    }

    /// Contragredient action on coweight coordinates c_i = α_i(h).
    pub fn weyl_action_on_h(&self, w: usize, h: &[Rational]) -> Result<Vec<Rational>> {
        let wg = self.weyl()?;
        let inv = &wg.mats[wg.inverse[w]];
        Ok((0..self.rank)
            .map(|i| (0..self.rank).map(|j| Rational::from_integer(inv[j][i].into()) * &h[j]).sum())
            .collect())
    }

    /// Same action on field-valued coordinates.
    pub fn weyl_action_on_h_field(&self, w: usize, h: &[FieldScalar]) -> Result<Vec<FieldScalar>> {
        let wg = self.weyl()?;
        let inv = &wg.mats[wg.inverse[w]];
        Ok((0..self.rank)
            .map(|i| (0..self.rank).map(|j| &FieldScalar::from_int(inv[j][i]) * &h[j]).sum())
            .collect())
    }

    /// α(h) for h in coweight coordinates.
    pub fn pair(alpha: &[i64], h: &[Rational]) -> Rational {
        alpha.iter().zip(h).map(|(&a, x)| Rational::from_integer(a.into()) * x).sum()
    }

    pub fn pair_field(alpha: &[i64], h: &[FieldScalar]) -> FieldScalar {
        alpha.iter().zip(h).filter(|(&a, _)| a != 0).map(|(&a, x)| &FieldScalar::from_int(a) * x).sum()
    }

    /// Coefficients of h = Gram·a for a in the simple-root basis.
    pub fn gram_to_h(&self, a: &[Rational]) -> Vec<Rational> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| Rational::from_integer(self.gram[i][j].into()) * &a[j]).sum())
            .collect()
    }
}

fn reflect_simple(cartan: &[IntVec], i: usize, v: &[i64]) -> IntVec {
    let mut w = v.to_vec();
    w[i] -= (0..v.len()).map(|j| cartan[i][j] * v[j]).sum::<i64>();
    w
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn matrix(&self, w: usize) -> &[IntVec] {
        &self.mats[w]
    }

    /// Reduced word: w = s_{word[0]} s_{word[1]} ⋯.
    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.lookup[&mat_mul(&self.mats[a], &self.mats[b])]
    }

    pub fn simple(&self, i: usize) -> usize {
        self.from_word(&[i])
    }

    pub fn from_word(&self, word: &[usize]) -> usize {
        let mut m = identity(self.mats[0].len());
        for &i in word {
            m = mat_mul(&m, &self.mats[self.words.iter().position(|w| w == &[i]).expect("simple reflection")]);
        }
        self.lookup[&m]
    }

    pub fn index_of_matrix(&self, m: &[IntVec]) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    /// Image of root index k under w.
    pub fn act_root(&self, w: usize, k: usize) -> usize {
        self.perms[w][k]
    }

    pub fn act_vec(&self, w: usize, v: &[i64]) -> IntVec {
        mat_vec(&self.mats[w], v)
    }
}

impl RootSystem {
    /// Element index of the reflection s_α for root index k.
    pub fn reflection(&self, k: usize) -> Result<usize> {
        let wg = self.weyl()?;
        let alpha = self.root(k);
        let n = self.rank;
        let cols: Vec<IntVec> = (0..n).map(|j| self.reflect(&alpha, &identity(n)[j])).collect();
        let m: Vec<IntVec> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
        Ok(wg.index_of_matrix(&m).expect("reflection lies in W"))
    }

    /// Positive root indices β with w⁻¹β < 0, i.e. Φ⁺ ∩ wΦ⁻.
    pub fn inversion_set(&self, w: usize) -> Result<Vec<usize>> {
        let wg = self.weyl()?;
        let winv = wg.inverse(w);
        Ok((0..self.num_positive()).filter(|&k| !self.is_positive_index(wg.act_root(winv, k))).collect())
    }

    /// Minimal-length representatives of the cosets W/W_I.
    pub fn min_coset_reps(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let wg = self.weyl()?;
        Ok((0..wg.order())
            .filter(|&w| subset.iter().all(|&i| self.is_positive_index(wg.act_root(w, i))))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_counts() {
        for (label, roots, w) in [
            ("A1", 2, 2),
            ("A2", 6, 6),
            ("A3", 12, 24),
            ("B2", 8, 8),
            ("B3", 18, 48),
            ("C3", 18, 48),
            ("D4", 24, 192),
            ("G2", 12, 12),
            ("F4", 48, 1152),
            ("A1xA1", 4, 4),
        ] {
            let rs = RootSystem::build(label).unwrap();
            assert_eq!(rs.num_roots(), roots, "{label}");
            assert_eq!(rs.weyl().unwrap().order(), w, "{label}");
        }
        let e8 = RootSystem::build("E8").unwrap();
        assert_eq!(e8.num_roots(), 240);
        assert!(e8.weyl().is_err());
        assert!(matches!(RootSystem::build("A5"), Err(Error::RankBound { .. })));
        assert!(RootSystem::build("Q3").is_err());
    }

    #[test]
    fn b2_positive_roots() {
        let rs = RootSystem::build("B2").unwrap();
        assert_eq!(rs.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
        assert_eq!(rs.inner(&[1, 0], &[1, 0]), 4);
        assert_eq!(rs.inner(&[1, 2], &[1, 2]), 4);
        assert_eq!(rs.inner(&[0, 1], &[0, 1]), 2);
    }

    #[test]
    fn g2_lengths() {
        let rs = RootSystem::build("G2").unwrap();
        assert_eq!(rs.inner(&[1, 0], &[1, 0]), 2);
        assert_eq!(rs.inner(&[0, 1], &[0, 1]), 6);
        assert_eq!(rs.inner(&[1, 0], &[0, 1]), -3);
        let long: Vec<&IntVec> = rs.positive_roots().iter().filter(|r| rs.inner(r, r) == 6).collect();
        assert_eq!(long, vec![&vec![0, 1], &vec![3, 1], &vec![3, 2]]);
    }

    #[test]
    fn rank2_subsystems() {
        let a2 = RootSystem::build("A2").unwrap();
        assert_eq!(a2.rank2_full_subsystems().len(), 1);
        assert_eq!(a2.rank2_closed_subsystems().len(), 1);
        let a1a1 = RootSystem::build("A1xA1").unwrap();
        assert_eq!(a1a1.rank2_full_subsystems().len(), 1);

        let b2 = RootSystem::build("B2").unwrap();
        let long: Vec<usize> = (0..b2.num_roots()).filter(|&k| b2.inner(&b2.root(k), &b2.root(k)) == 4).collect();
        let long = RootSubsystem { indices: long };
        assert!(b2.is_closed(&long));
        assert!(b2.rank2_closed_subsystems().contains(&long));

        let g2 = RootSystem::build("G2").unwrap();
        let long: Vec<usize> = (0..g2.num_roots()).filter(|&k| g2.inner(&g2.root(k), &g2.root(k)) == 6).collect();
        let long = RootSubsystem { indices: long };
        assert!(g2.is_closed(&long));
        assert!(g2.is_irreducible(&long));
        assert!(g2.rank2_closed_subsystems().contains(&long));
    }

    #[test]
    fn a3_full_subsystems_brute_force() {
        let rs = RootSystem::build("A3").unwrap();
        let mut brute = BTreeSet::new();
        let all = rs.roots();
        for a in &all {
            for b in &all {
                if int_rank(&[a.clone(), b.clone()]) < 2 {
                    continue;
                }
                let set: Vec<usize> = (0..all.len())
                    .filter(|&k| int_rank(&[a.clone(), b.clone(), all[k].clone()]) == 2)
                    .collect();
                brute.insert(set);
            }
        }
        let got: BTreeSet<Vec<usize>> = rs.rank2_full_subsystems().into_iter().map(|s| s.indices).collect();
        assert_eq!(got, brute);
        // four A2 planes and three A1xA1 planes
        assert_eq!(got.len(), 7);
    }

    #[test]
    fn weyl_group_facts() {
        let rs = RootSystem::build("B3").unwrap();
        let wg = rs.weyl().unwrap();
        for w in 0..wg.order() {
            for k in 0..rs.num_roots() {
                assert!(rs.is_root(&wg.act_vec(w, &rs.root(k))));
            }
            assert_eq!(wg.compose(w, wg.inverse(w)), 0);
            assert_eq!(rs.inversion_set(w).unwrap().len(), wg.length(w));
        }
        for k in 0..rs.num_roots() {
            let s = rs.reflection(k).unwrap();
            assert_eq!(wg.compose(s, s), 0);
        }
        assert_eq!(rs.min_coset_reps(&[0]).unwrap().len(), 24);
    }
}
