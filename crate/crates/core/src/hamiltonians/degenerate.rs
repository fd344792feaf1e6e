//! Paths C(ε) in the regular torus and their limits at ε = 0, computed with
//! polynomial arithmetic in ε.

use itertools_free::combinations;

use super::{w_action, DegreeOne, Subspace, TauAction};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, FieldScalar};
use crate::rootsys::RootSystem;

/// A polynomial in ε, coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EpsPoly(Vec<FieldScalar>);

impl EpsPoly {
    pub fn new(mut coeffs: Vec<FieldScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        EpsPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| FieldScalar::from_int(c)).collect())
    }

    pub fn constant(c: FieldScalar) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: usize) -> FieldScalar {
        self.0.get(k).cloned().unwrap_or_default()
    }

    /// Order of vanishing at ε = 0; None for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut out = vec![FieldScalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(FieldScalar::one()), |acc, _| acc.mul(self))
    }

    /// Exact division by ε; the constant term must vanish.
    pub fn div_eps(&self) -> Self {
        debug_assert!(self.coeff(0).is_zero());
        Self::new(self.0.iter().skip(1).cloned().collect())
    }
}

type PolyRow = Vec<EpsPoly>;

/// A path C(ε) given by the simple-root values c_i(ε) = e^{α_i}(C(ε)), each a
/// ratio of polynomials.
#[derive(Clone, Debug)]
pub struct EpsPath {
    pub num: Vec<EpsPoly>,
    pub den: Vec<EpsPoly>,
}

impl EpsPath {
    pub fn new(coords: Vec<EpsPoly>) -> Self {
        let den = vec![EpsPoly::constant(FieldScalar::one()); coords.len()];
        EpsPath { num: coords, den }
    }

    /// e^α(C(ε)) as (numerator, denominator).
    pub fn character(&self, alpha: &[i64]) -> (EpsPoly, EpsPoly) {
        let one = EpsPoly::constant(FieldScalar::one());
        let (mut n, mut d) = (one.clone(), one);
        for ((cn, cd), &a) in self.num.iter().zip(&self.den).zip(alpha) {
            let (p, q) = if a < 0 { (cd, cn) } else { (cn, cd) };
            n = n.mul(&p.pow(a.unsigned_abs() as u32));
            d = d.mul(&q.pow(a.unsigned_abs() as u32));
        }
        (n, d)
    }

    /// BH(C(ε), h_i) for each coweight, with denominators cleared.
    pub fn bethe_rows(&self, rs: &RootSystem) -> Result<Vec<PolyRow>> {
        let d = DegreeOne::of(rs);
        let p = rs.num_positive();
        let chars: Vec<(EpsPoly, EpsPoly)> = (0..p).map(|k| self.character(&rs.root(k))).collect();
        // u/(u−1) = N/(N−D)
        let dens: Vec<EpsPoly> = chars.iter().map(|(n, d)| n.sub(d)).collect();
        if dens.iter().any(EpsPoly::is_zero) {
            return Err(Error::NotRegular("path lies in a root subtorus".into()));
        }
        let one = EpsPoly::constant(FieldScalar::one());
        let mut rows = Vec::new();
        for i in 0..rs.rank() {
            let active: Vec<usize> = (0..p).filter(|&k| rs.root(k)[i] != 0).collect();
            let common = active.iter().fold(one.clone(), |acc, &k| acc.mul(&dens[k]));
            let mut row = vec![EpsPoly::default(); d.dim()];
            row[p + i] = common;
            for &k in &active {
                let others = active.iter().filter(|&&j| j != k).fold(one.clone(), |acc, &j| acc.mul(&dens[j]));
                let a = FieldScalar::from_int(-rs.root(k)[i]);
                row[k] = chars[k].0.mul(&others).scale(&a);
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// The path w·C(ε), with e^{α_i}(w·C) = e^{w⁻¹α_i}(C).
    pub fn transport(&self, rs: &RootSystem, w: usize) -> Result<EpsPath> {
        let wg = rs.weyl()?;
        let winv = wg.inverse(w);
        let (num, den) = (0..rs.rank())
            .map(|i| {
                let img = wg.act_root(winv, i);
                let (n, d) = self.character(&rs.root(rs.abs_index(img)));
                if rs.is_positive_index(img) {
                    (n, d)
                } else {
                    (d, n)
                }
            })
            .unzip();
        Ok(EpsPath { num, den })
    }
}

fn eval0(rows: &[PolyRow], cols: usize) -> ExactMatrix {
    ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|x| x.coeff(0)).collect()).collect(), cols)
}

/// Limit at ε = 0 of the row span over ℚ(ε): repeatedly replaces a row by
/// (Σ c_j row_j)/ε for a relation c among the rows at ε = 0.
pub fn flat_limit(rows: &[PolyRow], cols: usize) -> Result<Subspace> {
    let mut rows = rows.to_vec();
    for _ in 0..10_000 {
        let m0 = eval0(&rows, cols);
        let rel = m0.left_nullspace();
        let Some(c) = rel.first() else {
            return Ok(Subspace::from_matrix(&m0));
        };
        let i = c.iter().position(|x| !x.is_zero()).expect("nonzero relation");
        let mut combo = vec![EpsPoly::default(); cols];
        for (cj, row) in c.iter().zip(&rows) {
            if cj.is_zero() {
                continue;
            }
            for (acc, x) in combo.iter_mut().zip(row) {
                *acc = acc.add(&x.scale(cj));
            }
        }
        if combo.iter().all(EpsPoly::is_zero) {
            return Err(Error::Shape("rows are dependent over ℚ(ε)".into()));
        }
        rows[i] = combo.iter().map(EpsPoly::div_eps).collect();
    }
    Err(Error::Shape("flat limit did not stabilise".into()))
}

fn det(m: &[Vec<EpsPoly>]) -> EpsPoly {
    let n = m.len();
    if n == 0 {
        return EpsPoly::constant(FieldScalar::one());
    }
    let mut acc = EpsPoly::default();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<EpsPoly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Coefficient-wise limit of the RREF over ℚ(ε): each entry is a ratio of
/// maximal minors. None when some entry has a pole at ε = 0.
pub fn rref_limit(rows: &[PolyRow], cols: usize) -> Result<Option<Subspace>> {
    let r = rows.len();
    let pick = |cs: &[usize]| -> Vec<Vec<EpsPoly>> { rows.iter().map(|row| cs.iter().map(|&c| row[c].clone()).collect()).collect() };
    let pivots = combinations(cols, r)
        .into_iter()
        .find(|cs| !det(&pick(cs)).is_zero())
        .ok_or_else(|| Error::Shape("rows are dependent over ℚ(ε)".into()))?;
    let base = det(&pick(&pivots));
    let v = base.order().expect("nonzero");
    let lead = base.coeff(v);
    let mut out = vec![vec![FieldScalar::zero(); cols]; r];
    for (k, out_row) in out.iter_mut().enumerate() {
        for (c, slot) in out_row.iter_mut().enumerate() {
            let mut cs = pivots.clone();
            cs[k] = c;
            let num = det(&pick(&cs));
            match num.order() {
                None => {}
                Some(o) if o < v => return Ok(None),
                Some(_) => *slot = num.coeff(v).checked_div(&lead)?,
            }
        }
    }
    Ok(Some(Subspace::from_rows(out, cols)))
}

/// Leading coefficients of all maximal minors: the Plücker coordinates of the
/// limit point in the Grassmannian, up to scale.
pub fn plucker_limit(rows: &[PolyRow], cols: usize) -> Result<Vec<FieldScalar>> {
    let minors: Vec<EpsPoly> = combinations(cols, rows.len())
        .iter()
        .map(|cs| det(&rows.iter().map(|row| cs.iter().map(|&c| row[c].clone()).collect()).collect::<Vec<_>>()))
        .collect();
    let v = minors
        .iter()
        .filter_map(EpsPoly::order)
        .min()
        .ok_or_else(|| Error::Shape("rows are dependent over ℚ(ε)".into()))?;
    Ok(minors.iter().map(|m| m.coeff(v)).collect())
}

/// Plücker coordinates of a subspace, normalised so the first nonzero one is 1.
pub fn plucker(q: &Subspace) -> Vec<FieldScalar> {
    let m = q.rref();
    let coords: Vec<FieldScalar> = combinations(m.ncols(), m.nrows())
        .iter()
        .map(|cs| {
            let sub: Vec<Vec<FieldScalar>> = m.rows().map(|r| cs.iter().map(|&c| r[c].clone()).collect()).collect();
            ExactMatrix::from_rows(sub, cs.len()).determinant().expect("square")
        })
        .collect();
    normalise(coords)
}

pub fn normalise(v: Vec<FieldScalar>) -> Vec<FieldScalar> {
    match v.iter().find(|x| !x.is_zero()).cloned() {
        Some(lead) => v.iter().map(|x| x.checked_div(&lead).expect("nonzero")).collect(),
        None => v,
    }
}

/// Flat limit of Q(C(ε)).
pub fn path_limit(rs: &RootSystem, path: &EpsPath) -> Result<Subspace> {
    flat_limit(&path.bethe_rows(rs)?, DegreeOne::of(rs).dim())
}

/// Flat limit of w·Q(C(ε)).
pub fn transported_limit(rs: &RootSystem, path: &EpsPath, w: usize, action: TauAction) -> Result<Subspace> {
    let q = path_limit(rs, path)?;
    let rows = q.rref().rows().map(|r| w_action(rs, w, r, action)).collect::<Result<Vec<_>>>()?;
    Ok(Subspace::from_rows(rows, q.ambient()))
}

mod itertools_free {
    /// k-subsets of 0..n in lexicographic order.
    pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        go(0, n, k, &mut cur, &mut out);
        out
    }
}

/// The three reference degenerations: (label, path, point data).
pub struct Fixture {
    pub name: &'static str,
    pub label: &'static str,
    pub path: EpsPath,
    pub subset: Vec<usize>,
    pub y: Vec<FieldScalar>,
    pub nested: Vec<u32>,
    pub t: Vec<FieldScalar>,
}

pub fn fixtures() -> Vec<Fixture> {
    let f = FieldScalar::from_int;
    vec![
        Fixture {
            name: "A2 to the identity fiber",
            label: "A2",
            path: EpsPath::new(vec![EpsPoly::from_ints(&[1, 0, 1]), EpsPoly::from_ints(&[1, 1])]),
            subset: vec![0, 1],
            y: vec![f(1), f(1)],
            nested: vec![0b11, 0b01],
            t: vec![f(1), f(0)],
        },
        Fixture {
            name: "B2 to the long-root point layer",
            label: "B2",
            path: EpsPath::new(vec![EpsPoly::from_ints(&[1, 1]), EpsPoly::from_ints(&[-1, -3])]),
            subset: vec![0, 1],
            y: vec![f(1), f(-1)],
            nested: vec![0b01, 0b10],
            t: vec![f(1), f(1)],
        },
        Fixture {
            name: "A2 to the boundary I = {α1}",
            label: "A2",
            path: EpsPath::new(vec![EpsPoly::from_ints(&[3]), EpsPoly::from_ints(&[0, 1])]),
            subset: vec![0],
            y: vec![f(3)],
            nested: vec![],
            t: vec![],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::limit::{limit_subspace, XPoint};

    fn point(rs: &RootSystem, fx: &Fixture) -> XPoint {
        XPoint::new(rs, 0, fx.subset.clone(), fx.y.clone(), fx.nested.clone(), fx.t.clone()).unwrap()
    }

    #[test]
    fn fixtures_converge() {
        for fx in fixtures() {
            let rs = RootSystem::build(fx.label).unwrap();
            let q = limit_subspace(&rs, &point(&rs, &fx)).unwrap();
            let rows = fx.path.bethe_rows(&rs).unwrap();
            let d = DegreeOne::of(&rs).dim();
            assert_eq!(flat_limit(&rows, d).unwrap(), q, "{}", fx.name);
            assert_eq!(normalise(plucker_limit(&rows, d).unwrap()), plucker(&q), "{}", fx.name);
            // entrywise RREF limits exist only when the generic pivots survive
            let entrywise = rref_limit(&rows, d).unwrap();
            assert!(entrywise.is_none() || entrywise == Some(q.clone()), "{}", fx.name);
        }
    }

    #[test]
    fn identity_fiber_limit_is_explicit() {
        let rs = RootSystem::build("A2").unwrap();
        let d = DegreeOne::of(&rs);
        let fx = &fixtures()[0];
        let q = path_limit(&rs, &fx.path).unwrap();
        let mut b = d.t(1);
        b[2] = FieldScalar::one();
        assert_eq!(q, Subspace::from_rows(vec![d.t(0), b], d.dim()));
    }

    #[test]
    fn transported_path_limit() {
        let rs = RootSystem::build("A2").unwrap();
        let wg = rs.weyl().unwrap();
        let fx = &fixtures()[2];
        let x0 = point(&rs, fx);
        for w in 0..wg.order() {
            let path = fx.path.transport(&rs, w).unwrap();
            let mut x = x0.clone();
            x.w = w;
            let lhs = path_limit(&rs, &path).unwrap();
            assert_eq!(lhs, limit_subspace(&rs, &x).unwrap(), "w = {:?}", wg.word(w));
            assert_eq!(lhs, transported_limit(&rs, &fx.path, w, TauAction::SELECTED).unwrap());
        }
    }

    #[test]
    fn b2_rref_entries_diverge() {
        let rs = RootSystem::build("B2").unwrap();
        let fx = &fixtures()[1];
        let rows = fx.path.bethe_rows(&rs).unwrap();
        assert_eq!(rref_limit(&rows, DegreeOne::of(&rs).dim()).unwrap(), None);
    }

    #[test]
    fn eps_poly_arithmetic() {
        let a = EpsPoly::from_ints(&[0, 2, 1]);
        assert_eq!(a.order(), Some(1));
        assert_eq!(a.div_eps(), EpsPoly::from_ints(&[2, 1]));
        assert_eq!(EpsPoly::from_ints(&[1, 1]).pow(2), EpsPoly::from_ints(&[1, 2, 1]));
        assert_eq!(a.sub(&a), EpsPoly::default());
    }
}
