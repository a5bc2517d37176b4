//! The TOML problem file and its validation into engine objects.

use noether::noetherian::{default_tilts, gens_from_ch, gens_from_tilts, tilts_with_count};
use noether::poly::parse_rational;
use noether::{CHDatum, Dims, Error, IdealSpec, MultiIndex, NoetherianGens, Poly, Rational};
use serde::{Deserialize, Serialize};

use crate::report::Failure;

/// Cofactor degree used to certify `w^{M+1} ⊆ J` when `asserted = false`.
pub const DEFAULT_CERTIFY_BOUND: u32 = 6;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub n: usize,
    #[serde(default)]
    pub p: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideal: Vec<String>,
    #[serde(rename = "M", default, skip_serializing_if = "Vec::is_empty")]
    pub m: Vec<u32>,
    #[serde(default = "yes")]
    pub asserted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cofactor_bound: Option<u32>,
    #[serde(default)]
    pub construction: Construction,
    /// Generic points per normal direction for the tilted construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tilts: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<String>>,
    /// Defining function for the `⟨f²⟩` check, in `z1, …, zn`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ch: Vec<DatumSpec>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    #[default]
    Ch,
    Tilts,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    pub a: String,
    #[serde(rename = "M")]
    pub m: Vec<u32>,
}

impl ProblemSpec {
    pub fn from_toml(text: &str) -> Result<Self, Failure> {
        let spec: ProblemSpec =
            toml::from_str(text).map_err(|e| Failure::usage(format!("bad spec: {e}")))?;
        spec.check_shape()?;
        Ok(spec)
    }

    #[cfg(test)]
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("a problem spec always serializes")
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.n, self.p)
    }

    fn check_shape(&self) -> Result<(), Failure> {
        if self.n == 0 {
            return Err(Failure::usage("n must be at least 1"));
        }
        if !self.m.is_empty() && self.m.len() != self.p {
            return Err(Failure::usage(format!(
                "M has {} entries but p = {}",
                self.m.len(),
                self.p
            )));
        }
        for (i, d) in self.ch.iter().enumerate() {
            if d.m.len() != self.p {
                return Err(Failure::usage(format!(
                    "ch datum {} has {} M entries but p = {}",
                    i + 1,
                    d.m.len(),
                    self.p
                )));
            }
        }
        if let Some(i) = self.points.iter().position(|pt| pt.len() != self.n) {
            return Err(Failure::usage(format!(
                "point {} does not have {} coordinates",
                i + 1,
                self.n
            )));
        }
        if self.tilts == Some(0) {
            return Err(Failure::usage("tilts must be positive"));
        }
        Ok(())
    }

    pub fn poly(&self, s: &str) -> Result<Poly, Failure> {
        Poly::parse(s, self.dims()).map_err(|e| Failure::usage(format!("cannot parse '{s}': {e}")))
    }

    pub fn ideal(&self, cofactor_bound: Option<u32>) -> Result<IdealSpec, Failure> {
        if self.ideal.is_empty() {
            return Err(Failure::usage("the problem file has no ideal generators"));
        }
        if self.m.len() != self.p {
            return Err(Failure::usage("the problem file has no M"));
        }
        let gens = self
            .ideal
            .iter()
            .map(|s| self.poly(s))
            .collect::<Result<Vec<_>, _>>()?;
        let m = MultiIndex::new(self.m.clone());
        if self.asserted {
            IdealSpec::asserted(gens, m).map_err(Failure::usage_from)
        } else {
            let bound = cofactor_bound
                .or(self.cofactor_bound)
                .unwrap_or(DEFAULT_CERTIFY_BOUND);
            IdealSpec::certified(gens, m, bound).map_err(|e| Failure::verification(e.to_string()))
        }
    }

    pub fn data(&self) -> Result<Vec<CHDatum>, Failure> {
        if self.ch.is_empty() {
            return Err(Failure::usage("the problem file has no ch data"));
        }
        self.ch
            .iter()
            .map(|d| {
                CHDatum::new(self.poly(&d.a)?, MultiIndex::new(d.m.clone()))
                    .map_err(Failure::usage_from)
            })
            .collect()
    }

    /// The generator family, tilted when `tilts` is given either here or in
    /// the file.
    pub fn family(
        &self,
        ideal: &IdealSpec,
        tilts: Option<usize>,
    ) -> Result<NoetherianGens, Failure> {
        let data = self.data()?;
        let count = tilts.or(self.tilts);
        let built = match (self.construction, count) {
            (Construction::Ch, None) => gens_from_ch(&data, ideal),
            (_, Some(c)) => {
                let degree = ideal.m().as_slice().iter().copied().max().unwrap_or(0);
                tilts_with_count(ideal.dims(), degree, c)
                    .and_then(|t| gens_from_tilts(&data, ideal, &t))
            }
            (Construction::Tilts, None) => {
                default_tilts(ideal).and_then(|t| gens_from_tilts(&data, ideal, &t))
            }
        };
        built.map_err(|e| match e {
            Error::VerificationFailed { .. } => Failure::verification(e.to_string()),
            e => Failure::usage_from(e),
        })
    }

    pub fn points(&self) -> Result<Vec<Vec<Rational>>, Failure> {
        self.points
            .iter()
            .map(|pt| pt.iter().map(|x| rational(x)).collect())
            .collect()
    }
}

fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s.trim()).map_err(|e| Failure::usage(format!("bad coordinate '{s}': {e}")))
}

/// `"1,0; 2,-1/2"` into points with `n` coordinates each.
pub fn parse_points(s: &str, n: usize) -> Result<Vec<Vec<Rational>>, Failure> {
    let pts = s
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.split(',').map(rational).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if pts.is_empty() {
        return Err(Failure::usage("no points given"));
    }
    if let Some(pt) = pts.iter().find(|pt| pt.len() != n) {
        return Err(Failure::usage(format!(
            "point with {} coordinates, expected {n}",
            pt.len()
        )));
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLANE: &str = r#"
n = 2
p = 2
ideal = ["w1^2", "w2^2", "w1*w2", "w1*z2 - w2*z1"]
M = [1, 1]
points = [["1", "0"], ["-1/2", "3"]]

[[ch]]
a = "1"
M = [0, 0]

[[ch]]
a = "z1*w2 + z2*w1"
M = [1, 1]
"#;

    #[test]
    fn round_trips_through_toml() {
        let s = ProblemSpec::from_toml(PLANE).unwrap();
        assert_eq!(ProblemSpec::from_toml(&s.to_toml()).unwrap(), s);
        assert_eq!(s.ch.len(), 2);
        assert!(s.asserted);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_shapes() {
        assert_eq!(ProblemSpec::from_toml("n = 1\nq = 2").unwrap_err().code, 64);
        assert!(ProblemSpec::from_toml("n = 2\np = 1\nM = [1, 1]").is_err());
        assert!(ProblemSpec::from_toml("n = 0").is_err());
        assert!(ProblemSpec::from_toml("n = 2\npoints = [[\"1\"]]").is_err());
    }

    #[test]
    fn empty_ch_data_is_a_usage_error() {
        let mut s = ProblemSpec::from_toml(PLANE).unwrap();
        s.ch.clear();
        let j = s.ideal(None).unwrap();
        assert_eq!(s.family(&j, None).unwrap_err().code, 64);
    }

    #[test]
    fn certification_failure_is_a_verification_failure() {
        let mut s = ProblemSpec::from_toml(PLANE).unwrap();
        s.asserted = false;
        s.ideal(None).unwrap();
        s.ideal = vec!["w1^2".into(), "w1*w2".into()];
        assert_eq!(s.ideal(Some(3)).unwrap_err().code, 2);
    }

    #[test]
    fn point_lists() {
        let pts = parse_points("1,0; -1/2, 3", 2).unwrap();
        assert_eq!(pts[1][0], Rational::new((-1).into(), 2.into()));
        assert!(parse_points("1", 2).is_err());
        assert!(parse_points("x,1", 2).is_err());
        assert!(parse_points(" ", 2).is_err());
    }
}
