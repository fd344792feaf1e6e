//! JSON reports (schema 1) and the point-spec input format. Scalars are
//! written as strings in the `c0 + c1*z` form so that they round-trip exactly.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::arrangement::{self, gamma_group, is_indecomposable, Layer, TorusPoint};
use crate::error::{Error, Result};
use crate::exact::FieldScalar;
use crate::hamiltonians::limit::{limit_subspace, XPoint};
use crate::hamiltonians::{DegreeOne, Subspace};
use crate::nested::{maximal_nested_sets, set_from_list, Diagram};
use crate::rootsys::RootSystem;
use crate::verify::CheckReport;

pub const SCHEMA: u32 = 1;

fn scalars(v: &[FieldScalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn envelope(kind: &str, rs: &RootSystem, order: u32, body: Value) -> Value {
    let mut out = json!({
        "schema": SCHEMA,
        "kind": kind,
        "type": rs.label(),
        "field_order": order,
    });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

pub fn roots_report(rs: &RootSystem, order: u32) -> Value {
    let roots: Vec<Value> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(k, r)| json!({ "index": k + 1, "root": r, "height": r.iter().sum::<i64>(), "norm": rs.inner(r, r) }))
        .collect();
    envelope(
        "roots",
        rs,
        order,
        json!({
            "rank": rs.rank(),
            "cartan": rs.cartan(),
            "gram": rs.gram(),
            "num_positive": rs.num_positive(),
            "positive_roots": roots,
            "weyl_order": rs.weyl().ok().map(|w| w.order()),
        }),
    )
}

fn layer_json(rs: &RootSystem, l: &Layer, order: u32) -> Result<Value> {
    let point = l.point(order)?;
    let phi_y: Vec<Vec<i64>> = l.phi_y.indices.iter().filter(|&&k| rs.is_positive_index(k)).map(|&k| rs.root(k)).collect();
    Ok(json!({
        "dim": l.dim,
        "lattice": l.lattice,
        "character": l.character.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "phases": l.phases.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "point": scalars(point.coords()),
        "phi_y_positive": phi_y,
        "indecomposable": is_indecomposable(rs, l),
        "gamma": gamma_group(rs, l).divisors,
    }))
}

pub fn layers_report(rs: &RootSystem, order: u32, only_building: bool) -> Result<Value> {
    let all = if only_building { arrangement::building_set(rs)? } else { arrangement::layers(rs)? };
    let items = all.iter().map(|l| layer_json(rs, l, order)).collect::<Result<Vec<_>>>()?;
    let kind = if only_building { "building-set" } else { "layers" };
    Ok(envelope(kind, rs, order, json!({ "count": items.len(), "layers": items })))
}

pub fn nested_sets_report(rs: &RootSystem, order: u32) -> Value {
    let sets: Vec<Vec<Vec<usize>>> = maximal_nested_sets(&Diagram::from_gram(rs.gram())).iter().map(|s| s.to_lists()).collect();
    envelope("nested-sets", rs, order, json!({ "count": sets.len(), "nested_sets": sets }))
}

pub fn boundary_strata_report(rs: &RootSystem, order: u32) -> Result<Value> {
    let mut items = Vec::new();
    for s in arrangement::boundary_strata(rs)? {
        let levi = rs.levi(&s.subset)?;
        let mut layer = layer_json(&levi, &s.layer, order)?;
        if let Value::Object(o) = &mut layer {
            o.insert("I".into(), json!(s.subset.iter().map(|i| i + 1).collect::<Vec<_>>()));
            let parent: Vec<Vec<i64>> =
                s.phi_y_in_parent(rs, &levi).into_iter().filter(|&k| rs.is_positive_index(k)).map(|k| rs.root(k)).collect();
            o.insert("phi_y_positive".into(), json!(parent));
        }
        items.push(layer);
    }
    Ok(envelope("boundary-strata", rs, order, json!({ "count": items.len(), "strata": items })))
}

pub fn subspace_report(rs: &RootSystem, order: u32, q: &Subspace, input: &Value) -> Value {
    let d = DegreeOne::of(rs);
    envelope(
        "subspace",
        rs,
        order,
        json!({
            "basis_labels": d.labels(),
            "dim": q.dim(),
            "rref": q.key(),
            "input": input,
        }),
    )
}

pub fn check_report(label: Option<&str>, seed: u64, samples: usize, order: u32, reports: &[CheckReport]) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "check",
        "type": label,
        "seed": seed,
        "samples": samples,
        "field_order": order,
        "passed": reports.iter().all(|r| r.passed),
        "reports": reports,
    })
}

/// Point spec: either `C` (a regular torus point) or the chart data
/// `w`, `I`, `y`, `S`, `t`. Indices and words are 1-based.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    #[serde(rename = "type")]
    pub label: Option<String>,
    #[serde(rename = "C")]
    pub c: Option<Vec<String>>,
    pub w: Option<Vec<usize>>,
    #[serde(rename = "I")]
    pub subset: Option<Vec<usize>>,
    pub y: Option<Vec<String>>,
    #[serde(rename = "S")]
    pub nested: Option<Vec<Vec<usize>>>,
    pub t: Option<Vec<String>>,
}

pub enum ParsedPoint {
    Interior(TorusPoint),
    Chart(XPoint),
}

fn zero_based(v: &[usize], what: &str, bound: usize) -> Result<Vec<usize>> {
    v.iter()
        .map(|&i| {
            if i == 0 || i > bound {
                Err(Error::Schema(format!("{what}: index {i} outside 1..={bound}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn parse_scalars(v: &[String], what: &str, order: u32) -> Result<Vec<FieldScalar>> {
    v.iter().map(|s| FieldScalar::parse(s, order).map_err(|e| Error::Schema(format!("{what}: {e}")))).collect()
}

impl PointSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn parse(&self, rs: &RootSystem, order: u32) -> Result<ParsedPoint> {
        let n = rs.rank();
        if let Some(c) = &self.c {
            if self.w.is_some() || self.subset.is_some() || self.y.is_some() || self.nested.is_some() || self.t.is_some() {
                return Err(Error::Schema("C excludes the chart fields w, I, y, S, t".into()));
            }
            if c.len() != n {
                return Err(Error::Schema(format!("C has {} coordinates, rank is {n}", c.len())));
            }
            return Ok(ParsedPoint::Interior(TorusPoint::new(parse_scalars(c, "C", order)?)?));
        }
        let missing = |f: &str| Error::Schema(format!("missing field {f}"));
        let word = zero_based(self.w.as_deref().unwrap_or(&[]), "w", n)?;
        let subset = zero_based(self.subset.as_ref().ok_or_else(|| missing("I"))?, "I", n)?;
        let y = parse_scalars(self.y.as_ref().ok_or_else(|| missing("y"))?, "y", order)?;
        let t = parse_scalars(self.t.as_deref().unwrap_or(&[]), "t", order)?;
        let nested = self.nested.clone().unwrap_or_default();
        let bound = nested.iter().flatten().copied().max().unwrap_or(0);
        let elements = nested.iter().map(|p| Ok(set_from_list(&zero_based(p, "S", bound.max(1))?))).collect::<Result<Vec<_>>>()?;
        let w = rs.weyl()?.from_word(&word);
        if t.len() != elements.len() {
            return Err(Error::Schema(format!("t has {} values for {} elements of S", t.len(), elements.len())));
        }
        // t is listed in the order of S; XPoint expects the canonical order
        let mut paired: Vec<(u32, FieldScalar)> = elements.iter().copied().zip(t).collect();
        paired.sort_by_key(|&(m, _)| (std::cmp::Reverse(m.count_ones()), m));
        let (elements, t): (Vec<u32>, Vec<FieldScalar>) = paired.into_iter().unzip();
        Ok(ParsedPoint::Chart(XPoint::new(rs, w, subset, y, elements, t)?))
    }
}

pub fn point_subspace(rs: &RootSystem, p: &ParsedPoint) -> Result<Subspace> {
    match p {
        ParsedPoint::Interior(c) => DegreeOne::of(rs).bethe_subspace(c),
        ParsedPoint::Chart(x) => limit_subspace(rs, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_spec_matches_chart_spec() {
        let rs = RootSystem::build("A2").unwrap();
        let a = PointSpec::from_json(r#"{"C": ["2", "3"]}"#).unwrap().parse(&rs, 6).unwrap();
        let b = PointSpec::from_json(r#"{"w": [], "I": [1, 2], "y": ["2", "3"], "S": [], "t": []}"#).unwrap().parse(&rs, 6).unwrap();
        assert_eq!(point_subspace(&rs, &a).unwrap(), point_subspace(&rs, &b).unwrap());
    }

    #[test]
    fn t_follows_the_listed_order() {
        let rs = RootSystem::build("A2").unwrap();
        let a = PointSpec::from_json(r#"{"I": [1, 2], "y": ["1", "1"], "S": [[1], [1, 2]], "t": ["2", "5"]}"#).unwrap();
        let ParsedPoint::Chart(x) = a.parse(&rs, 6).unwrap() else { panic!() };
        assert_eq!(x.t.get(0b01), &FieldScalar::from_int(2));
    }

    #[test]
    fn malformed_specs() {
        let rs = RootSystem::build("A2").unwrap();
        assert!(matches!(PointSpec::from_json(r#"{"C": ["2"], "bogus": 1}"#), Err(Error::Schema(_))));
        let p = PointSpec::from_json(r#"{"C": ["2"]}"#).unwrap();
        assert!(matches!(p.parse(&rs, 6), Err(Error::Schema(_))));
        let p = PointSpec::from_json(r#"{"I": [3], "y": ["2"]}"#).unwrap();
        assert!(matches!(p.parse(&rs, 6), Err(Error::Schema(_))));
        let p = PointSpec::from_json(r#"{"I": [1, 2], "y": ["1", "1"], "S": [[1, 2]], "t": ["1"]}"#).unwrap();
        assert!(matches!(p.parse(&rs, 6), Err(Error::NestedSet(_))));
    }

    #[test]
    fn reports_are_versioned() {
        let rs = RootSystem::build("A2").unwrap();
        let r = roots_report(&rs, 6);
        assert_eq!(r["schema"], 1);
        assert_eq!(r["num_positive"], 3);
        let l = layers_report(&RootSystem::build("B2").unwrap(), 6, false).unwrap();
        assert_eq!(l["count"], 7);
    }
}
