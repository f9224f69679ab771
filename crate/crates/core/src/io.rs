//! JSON files for polytopes: rationals as `"p/q"` strings, lattices as
//! `{"ambient_dim", "basis"}`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, fmt_rats, parse_rat, parse_rats};
use crate::lattice::{DualPair, Lattice, LatticeJson};
use crate::polytope::{Inequality, Polytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityJson {
    pub normal: Vec<String>,
    pub offset: String,
}

/// Input form. Exactly one of `vertices` / `inequalities` is read; when both
/// are present the vertices win, so a file written by [`polytope_to_json`]
/// reads back as the same polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub lattice: LatticeJson,
    /// Lattice of normals; defaults to the dual of `lattice` inside its span.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<LatticeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<InequalityJson>>,
}

impl PolytopeFile {
    pub fn dual_pair(&self) -> Result<DualPair> {
        let m = Lattice::from_json(&self.lattice)?;
        match &self.dual {
            Some(n) => DualPair::new(m, Lattice::from_json(n)?),
            None => Ok(DualPair::from_m(m)),
        }
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        let pair = self.dual_pair()?;
        if let Some(vs) = &self.vertices {
            let pts = vs.iter().map(|v| parse_rats(v)).collect::<Result<Vec<_>>>()?;
            return Polytope::from_vertices(&pts, &pair.m);
        }
        if let Some(ineqs) = &self.inequalities {
            let ineqs = ineqs
                .iter()
                .map(|i| Ok(Inequality { normal: parse_rats(&i.normal)?, offset: parse_rat(&i.offset)? }))
                .collect::<Result<Vec<_>>>()?;
            return Polytope::from_inequalities(&ineqs, &pair);
        }
        Err(Error::EmptyInput("polytope file needs \"vertices\" or \"inequalities\"".into()))
    }
}

pub fn parse_polytope_file(text: &str) -> Result<PolytopeFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    parse_polytope_file(text)?.to_polytope()
}

/// Ambient vertices and inequalities, sorted lexicographically, plus the
/// lattice-coordinate facets.
pub fn polytope_to_json(p: &Polytope, pair: &DualPair) -> Result<Value> {
    let mut vertices: Vec<Vec<String>> = p.ambient_vertices().iter().map(|v| fmt_rats(v)).collect();
    vertices.sort_by(|a, b| cmp_rat_strings(a, b));
    let mut ineqs = p.ambient_inequalities(pair)?;
    ineqs.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
    let mut facets = p.facets().to_vec();
    facets.sort();
    Ok(json!({
        "lattice": p.lattice().to_json(),
        "dual": pair.n.to_json(),
        "dim": p.dim(),
        "is_lattice": p.is_lattice(),
        "origin": fmt_rats(p.origin()),
        "vertices": vertices,
        "inequalities": ineqs
            .iter()
            .map(|i| InequalityJson { normal: fmt_rats(&i.normal), offset: fmt_rat(&i.offset) })
            .collect::<Vec<_>>(),
        "facets": facets
            .iter()
            .map(|f| json!({
                "normal": f.normal.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "offset": fmt_rat(&f.offset),
            }))
            .collect::<Vec<_>>(),
    }))
}

// Numeric (not string) order, so "-1" < "0" < "1/2" < "10".
fn cmp_rat_strings(a: &[String], b: &[String]) -> std::cmp::Ordering {
    let key = |v: &[String]| parse_rats(v).unwrap_or_default();
    key(a).cmp(&key(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertices_round_trip() {
        let text = r#"{"lattice":{"ambient_dim":2,"basis":[["1","0"],["0","1"]]},
                       "vertices":[["0","0"],["2","0"],["0","2"],["1","1"]]}"#;
        let p = parse_polytope(text).unwrap();
        assert_eq!(p.vertices().len(), 3);
        let pair = DualPair::from_m(p.lattice().clone());
        let out = polytope_to_json(&p, &pair).unwrap();
        let q = parse_polytope(&out.to_string()).unwrap();
        assert!(p.lattice_isomorphic(&q));
        assert_eq!(out["vertices"], json!([["0", "0"], ["0", "2"], ["2", "0"]]));
    }

    #[test]
    fn inequalities_give_square() {
        let text = r#"{"lattice":{"ambient_dim":2,"basis":[["1","0"],["0","1"]]},
                       "inequalities":[{"normal":["1","0"],"offset":"0"},{"normal":["-1","0"],"offset":"1"},
                                       {"normal":["0","1"],"offset":"0"},{"normal":["0","-1"],"offset":"1"}]}"#;
        let p = parse_polytope(text).unwrap();
        assert_eq!(p.count_lattice_points(), 4);
    }

    #[test]
    fn malformed_inputs_are_errors() {
        for text in [
            "",
            "{}",
            "[1,2]",
            r#"{"lattice":{"ambient_dim":2,"basis":[["1","0"]]}}"#,
            r#"{"lattice":{"ambient_dim":2,"basis":[["1","0"]]},"vertices":[["x","0"]]}"#,
            r#"{"lattice":{"ambient_dim":2,"basis":[["1","0"],["2","0"]]},"vertices":[["0","0"]]}"#,
            r#"{"lattice":{"ambient_dim":1,"basis":[["1"]]},"vertices":[["0","0"],["1"]]}"#,
            r#"{"lattice":{"ambient_dim":1,"basis":[["1"]]},"inequalities":[{"normal":["1"],"offset":"0"}]}"#,
            r#"{"lattice":{"ambient_dim":1,"basis":[["1"]]},"vertices":[["1/0"],["1"]]}"#,
        ] {
            assert!(parse_polytope(text).is_err(), "{text}");
        }
    }
}
