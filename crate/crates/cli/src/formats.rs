//! JSON file formats. Rationals are `"num/den"` strings; floating coordinates are
//! `[re, im]` pairs.

use eigenpoints_core::eigensolver::EigenSolution;
use eigenpoints_core::numbers::{format_rational, parse_rational, Rational};
use eigenpoints_core::point::{PointGroup, ProjectivePoint};
use eigenpoints_core::poly::{Monomial, Poly};
use eigenpoints_core::tensor::{PartialSymTensor, SymmetricTensor};
use eigenpoints_core::upoly::UPoly;
use eigenpoints_core::configuration::PointSet;
use eigenpoints_core::Error;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: String,
    pub exp: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &Poly) -> Self {
        PolyJson {
            nvars: p.nvars(),
            terms: p.terms().rev().map(|(m, c)| TermJson { coef: format_rational(c), exp: m.exponents().to_vec() }).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Poly, Error> {
        let mut p = Poly::zero(self.nvars);
        for t in &self.terms {
            if t.exp.len() != self.nvars {
                return Err(Error::DimensionMismatch { expected: self.nvars, got: t.exp.len() });
            }
            p.add_term(Monomial::new(t.exp.clone()), parse_rational(&t.coef)?);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorJson {
    pub n: usize,
    pub d: u32,
    /// `"partial"` or `"symmetric"`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slices: Option<Vec<PolyJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<PolyJson>,
}

impl TensorJson {
    pub fn from_partial(t: &PartialSymTensor) -> Self {
        TensorJson { n: t.n(), d: t.d(), kind: "partial".into(), slices: Some(t.slices().iter().map(PolyJson::from_poly).collect()), f: None }
    }

    pub fn from_symmetric(t: &SymmetricTensor) -> Self {
        TensorJson { n: t.n(), d: t.d(), kind: "symmetric".into(), slices: None, f: Some(PolyJson::from_poly(t.form())) }
    }

    pub fn to_partial(&self) -> Result<PartialSymTensor, Error> {
        match (self.kind.as_str(), &self.slices, &self.f) {
            ("symmetric", _, Some(f)) => Ok(SymmetricTensor::new(self.n, self.d, f.to_poly()?)?.to_partial()),
            (kind @ ("partial" | "symmetric"), Some(s), _) => {
                let t = PartialSymTensor::new(self.n, self.d, s.iter().map(PolyJson::to_poly).collect::<Result<_, _>>()?)?;
                if kind == "symmetric" && !t.is_gradient() {
                    return Err(Error::InvalidArgument("tensor marked symmetric but slices are not a gradient".into()));
                }
                Ok(t)
            }
            ("partial" | "symmetric", None, _) => Err(Error::Parse("tensor needs `slices` (or `f` when symmetric)".into())),
            (other, ..) => Err(Error::Parse(format!("unknown tensor kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordsJson {
    Exact(Vec<String>),
    Float(Vec<[f64; 2]>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub coords: CoordsJson,
    #[serde(default = "one")]
    pub mult: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<usize>,
    /// Marks points that were part of the input of an enlargement.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub input: bool,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    /// Coefficients, lowest degree first.
    pub minpoly: Vec<String>,
    pub coords: Vec<Vec<String>>,
    pub multiplicity: usize,
}

impl GroupJson {
    pub fn from_group(g: &PointGroup) -> Self {
        let enc = |p: &UPoly| p.coeffs().iter().map(format_rational).collect();
        GroupJson { minpoly: enc(&g.minpoly), coords: g.coords.iter().map(enc).collect(), multiplicity: g.multiplicity }
    }

    pub fn to_group(&self) -> Result<PointGroup, Error> {
        let dec = |v: &[String]| -> Result<UPoly, Error> { Ok(UPoly::new(v.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?)) };
        Ok(PointGroup { minpoly: dec(&self.minpoly)?, coords: self.coords.iter().map(|c| dec(c)).collect::<Result<_, _>>()?, multiplicity: self.multiplicity })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartJson {
    pub chart: usize,
    pub seed: u64,
    /// Total multiplicity in the chart; absent when the chart is positive-dimensional.
    pub length: Option<usize>,
    pub shear: Vec<String>,
    pub attempts: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct SeedInfo {
    pub seed: u64,
    #[serde(default)]
    pub charts: Vec<ChartJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PointsJson {
    pub n: usize,
    pub points: Vec<PointJson>,
    #[serde(default)]
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<u64>,
    #[serde(default)]
    pub seed_info: SeedInfo,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<GroupJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

pub fn point_to_json(p: &ProjectivePoint, mult: usize, group: Option<usize>) -> PointJson {
    let coords = match p {
        ProjectivePoint::Exact(v) => CoordsJson::Exact(v.iter().map(format_rational).collect()),
        ProjectivePoint::Float(v) => CoordsJson::Float(v.iter().map(|c| [c.re, c.im]).collect()),
    };
    PointJson { coords, mult, group, input: false }
}

pub fn point_from_json(p: &PointJson) -> Result<ProjectivePoint, Error> {
    match &p.coords {
        CoordsJson::Exact(v) => ProjectivePoint::exact(v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>, _>>()?),
        CoordsJson::Float(v) => ProjectivePoint::float(v.iter().map(|c| Complex64::new(c[0], c[1])).collect()),
    }
}

impl PointsJson {
    pub fn from_solution(sol: &EigenSolution) -> Self {
        PointsJson {
            n: sol.n,
            points: sol.points.iter().map(|p| point_to_json(&p.point, p.multiplicity, p.group)).collect(),
            certified: sol.certified,
            expected: Some(sol.expected),
            seed_info: SeedInfo {
                seed: sol.seed,
                charts: sol
                    .charts
                    .iter()
                    .map(|c| ChartJson { chart: c.chart, seed: c.seed, length: c.length, shear: c.shear.iter().map(format_rational).collect(), attempts: c.attempts })
                    .collect(),
            },
            groups: (!sol.groups.is_empty()).then(|| sol.groups.iter().map(GroupJson::from_group).collect()),
            diagnostic: sol.diagnostic.clone(),
        }
    }

    pub fn to_point_set(&self) -> Result<PointSet, Error> {
        let points = self.points.iter().map(point_from_json).collect::<Result<Vec<_>, _>>()?;
        let groups = match &self.groups {
            Some(g) => g.iter().map(GroupJson::to_group).collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        PointSet::with_groups(self.n, points, self.points.iter().map(|p| p.group).collect(), groups)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eigenpoints_core::eigensolver::{eigenpoints, EigenOptions};
    use eigenpoints_core::tensor::fermat_tensor;

    #[test]
    fn tensor_round_trip() {
        let s = fermat_tensor(2, 4).unwrap();
        let j = TensorJson::from_symmetric(&s);
        let text = serde_json::to_string(&j).unwrap();
        let back: TensorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_partial().unwrap(), s.to_partial());
        let p = TensorJson::from_partial(&s.to_partial());
        assert_eq!(p.to_partial().unwrap(), s.to_partial());
    }

    #[test]
    fn bad_kind_is_rejected() {
        let j = TensorJson { n: 2, d: 3, kind: "dense".into(), slices: None, f: None };
        assert!(matches!(j.to_partial(), Err(Error::Parse(_))));
    }

    #[test]
    fn points_round_trip() {
        let t = fermat_tensor(2, 3).unwrap().to_partial();
        let sol = eigenpoints(&t, &EigenOptions::default()).unwrap();
        let j = PointsJson::from_solution(&sol);
        let text = serde_json::to_string_pretty(&j).unwrap();
        assert!(text.contains("\"seedInfo\""));
        let back: PointsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_point_set().unwrap().len(), 7);
    }

    #[test]
    fn float_coordinates_parse() {
        let text = r#"{"n": 1, "points": [{"coords": [[1.0, 0.0], [0.5, -0.25]]}]}"#;
        let j: PointsJson = serde_json::from_str(text).unwrap();
        let p = point_from_json(&j.points[0]).unwrap();
        assert!(!p.is_exact());
        assert_eq!(j.points[0].mult, 1);
    }
}
