//! JSON problem specifications.
//!
//! Complex numbers are `[re, im]` pairs and a matrix is a list of rows. The
//! Hamiltonian is either such a matrix or a two-level object
//! `{"omega", "n", "epsilon"}`.

use std::fmt;
use std::path::Path;
use std::result::Result;

use num_complex::Complex64;
use quantum_geometry::oracles::two_level_hamiltonian;
use quantum_geometry::prelude::*;
use serde::de::{self, DeserializeOwned, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::CliError;

/// States farther than this from unit norm are rejected rather than rescaled.
pub const STATE_NORM_TOL: f64 = 1e-6;

pub type Complex = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub hamiltonian: HamiltonianSpec,
    pub state: Vec<Complex>,
    #[serde(default)]
    pub constants: ConstantsSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum HamiltonianSpec {
    Matrix(Vec<Vec<Complex>>),
    TwoLevel(TwoLevelSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoLevelSpec {
    pub omega: f64,
    pub n: [f64; 3],
    #[serde(default)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsSpec {
    #[serde(default = "default_hbar")]
    pub hbar: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
}

fn default_hbar() -> f64 {
    1.0
}

fn default_gamma() -> f64 {
    2.0
}

impl Default for ConstantsSpec {
    fn default() -> Self {
        Self {
            hbar: default_hbar(),
            gamma: default_gamma(),
        }
    }
}

// Dispatch on the JSON shape instead of `#[serde(untagged)]`, so that errors
// inside either form keep their path (e.g. `hamiltonian[1][0]`).
impl<'de> Deserialize<'de> for HamiltonianSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct Shape;

        impl<'de> Visitor<'de> for Shape {
            type Value = HamiltonianSpec;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a matrix of [re, im] pairs or an {omega, n, epsilon} object")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, seq: A) -> Result<Self::Value, A::Error> {
                Deserialize::deserialize(de::value::SeqAccessDeserializer::new(seq))
                    .map(HamiltonianSpec::Matrix)
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Self::Value, A::Error> {
                Deserialize::deserialize(de::value::MapAccessDeserializer::new(map))
                    .map(HamiltonianSpec::TwoLevel)
            }
        }

        d.deserialize_any(Shape)
    }
}

/// A second state, given bare or as `{"state": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum StateFile {
    Bare(Vec<Complex>),
    Wrapped { state: Vec<Complex> },
}

impl<'de> Deserialize<'de> for StateFile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wrapped {
            state: Vec<Complex>,
        }

        struct Shape;

        impl<'de> Visitor<'de> for Shape {
            type Value = StateFile;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of [re, im] pairs or an object with a \"state\" field")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, seq: A) -> Result<Self::Value, A::Error> {
                Deserialize::deserialize(de::value::SeqAccessDeserializer::new(seq))
                    .map(StateFile::Bare)
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Self::Value, A::Error> {
                let w: Wrapped =
                    Deserialize::deserialize(de::value::MapAccessDeserializer::new(map))?;
                Ok(StateFile::Wrapped { state: w.state })
            }
        }

        d.deserialize_any(Shape)
    }
}

impl StateFile {
    pub fn amplitudes(&self) -> &[Complex] {
        match self {
            StateFile::Bare(v) | StateFile::Wrapped { state: v } => v,
        }
    }
}

/// Parses JSON, reporting the path of the offending field on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." {
            "<root>".to_string()
        } else {
            path
        };
        CliError::field(&field, e.into_inner())
    })
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A validated problem: Hamiltonian, normalized state and constants.
#[derive(Debug)]
pub struct Problem {
    pub hamiltonian: HermitianOperator,
    pub state: StateVector,
    pub constants: PhysicalConstants,
}

pub fn load_state(field: &str, amps: &[Complex]) -> Result<StateVector, CliError> {
    if amps.iter().flatten().any(|x| !x.is_finite()) {
        return Err(CliError::field(field, "entries must be finite"));
    }
    let v: Vec<Complex64> = amps
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    StateVector::from_nearly_unit(v, STATE_NORM_TOL).map_err(|e| CliError::field(field, e))
}

impl ProblemSpec {
    pub fn validate(&self) -> Result<Problem, CliError> {
        let constants = PhysicalConstants::new(self.constants.hbar, self.constants.gamma)
            .map_err(|e| CliError::field("constants", e))?;
        let hamiltonian = match &self.hamiltonian {
            HamiltonianSpec::Matrix(rows) => {
                let n = rows.len();
                if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
                    return Err(CliError::field(
                        &format!("hamiltonian[{i}]"),
                        format!("row has {} entries, expected {n}", row.len()),
                    ));
                }
                if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
                    return Err(CliError::field("hamiltonian", "entries must be finite"));
                }
                let rows: Vec<Vec<Complex64>> = rows
                    .iter()
                    .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                    .collect();
                HermitianOperator::from_rows(&rows)
                    .map_err(|e| CliError::field("hamiltonian", e))?
            }
            HamiltonianSpec::TwoLevel(t) => two_level_hamiltonian(t.omega, t.n, t.epsilon)
                .map_err(|e| CliError::field("hamiltonian", e))?,
        };
        let state = load_state("state", &self.state)?;
        if state.dim() != hamiltonian.dim() {
            return Err(CliError::field(
                "state",
                format!(
                    "has {} entries but the Hamiltonian is {}x{}",
                    state.dim(),
                    hamiltonian.dim(),
                    hamiltonian.dim()
                ),
            ));
        }
        Ok(Problem {
            hamiltonian,
            state,
            constants,
        })
    }
}

pub fn load_problem(path: &Path) -> Result<Problem, CliError> {
    parse_json::<ProblemSpec>(&read_file(path)?)?.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_text<T: std::fmt::Debug>(r: Result<T, CliError>) -> String {
        r.unwrap_err().to_string()
    }

    #[test]
    fn matrix_spec_with_defaults() {
        let spec: ProblemSpec =
            parse_json(r#"{"hamiltonian": [[[0,0],[1,0]],[[1,0],[0,0]]], "state": [[1,0],[0,0]]}"#)
                .unwrap();
        assert_eq!(spec.constants, ConstantsSpec::default());
        let p = spec.validate().unwrap();
        assert_eq!(p.hamiltonian.dim(), 2);
        assert_eq!(p.constants.gamma(), 2.0);
    }

    #[test]
    fn two_level_spec_defaults_epsilon() {
        let spec: ProblemSpec = parse_json(
            r#"{"hamiltonian": {"omega": 1, "n": [0,0,1]}, "state": [[1,0],[1,0]], "constants": {"gamma": 1}}"#,
        )
        .unwrap();
        assert_eq!(
            spec.hamiltonian,
            HamiltonianSpec::TwoLevel(TwoLevelSpec {
                omega: 1.0,
                n: [0.0, 0.0, 1.0],
                epsilon: 0.0
            })
        );
        assert_eq!(spec.constants.hbar, 1.0);
        // (1, 1) is far from unit norm.
        assert!(err_text(spec.validate()).contains("`state`"));
    }

    #[test]
    fn nearly_unit_state_is_renormalized() {
        let spec: ProblemSpec =
            parse_json(r#"{"hamiltonian": [[[1,0],[0,0]],[[0,0],[2,0]]], "state": [[0.7071068,0],[0.7071068,0]]}"#)
                .unwrap();
        let p = spec.validate().unwrap();
        assert!((p.state.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn errors_name_the_field() {
        let bad_entry =
            r#"{"hamiltonian": [[[0,0],[1,"x"]],[[1,0],[0,0]]], "state": [[1,0],[0,0]]}"#;
        assert!(err_text(parse_json::<ProblemSpec>(bad_entry)).contains("hamiltonian[0][1][1]"));

        let bad_omega = r#"{"hamiltonian": {"omega": "1", "n": [0,0,1]}, "state": []}"#;
        assert!(err_text(parse_json::<ProblemSpec>(bad_omega)).contains("hamiltonian.omega"));

        let missing = r#"{"hamiltonian": [[[1,0]]]}"#;
        assert!(err_text(parse_json::<ProblemSpec>(missing)).contains("state"));

        let ragged = r#"{"hamiltonian": [[[0,0],[1,0]],[[1,0]]], "state": [[1,0],[0,0]]}"#;
        let spec: ProblemSpec = parse_json(ragged).unwrap();
        assert!(err_text(spec.validate()).contains("hamiltonian[1]"));

        let non_hermitian =
            r#"{"hamiltonian": [[[0,0],[1,0]],[[2,0],[0,0]]], "state": [[1,0],[0,0]]}"#;
        let spec: ProblemSpec = parse_json(non_hermitian).unwrap();
        assert!(err_text(spec.validate()).contains("`hamiltonian`"));

        let bad_constants =
            r#"{"hamiltonian": [[[1,0]]], "state": [[1,0]], "constants": {"hbar": -1}}"#;
        let spec: ProblemSpec = parse_json(bad_constants).unwrap();
        assert!(err_text(spec.validate()).contains("`constants`"));

        let wrong_dim =
            r#"{"hamiltonian": [[[1,0],[0,0]],[[0,0],[2,0]]], "state": [[1,0],[0,0],[0,0]]}"#;
        let spec: ProblemSpec = parse_json(wrong_dim).unwrap();
        assert!(err_text(spec.validate()).contains("`state`"));
    }

    #[test]
    fn state_file_accepts_both_shapes() {
        let bare: StateFile = parse_json("[[1,0],[0,1]]").unwrap();
        let wrapped: StateFile = parse_json(r#"{"state": [[1,0],[0,1]]}"#).unwrap();
        assert_eq!(bare.amplitudes(), wrapped.amplitudes());
        assert!(err_text(parse_json::<StateFile>(r#"{"psi": []}"#)).contains("psi"));
    }

    fn any_f64() -> impl proptest::strategy::Strategy<Value = f64> {
        use proptest::prelude::*;
        prop_oneof![
            proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO,
            -1.0f64..1.0,
        ]
    }

    proptest::proptest! {
        #[test]
        fn roundtrip_is_bit_exact(
            entries in proptest::collection::vec((any_f64(), any_f64()), 4),
            state in proptest::collection::vec((any_f64(), any_f64()), 2),
            two_level in proptest::bool::ANY,
            hbar in any_f64(),
            gamma in any_f64(),
        ) {
            let c = |(re, im): (f64, f64)| [re, im];
            let hamiltonian = if two_level {
                HamiltonianSpec::TwoLevel(TwoLevelSpec { omega: entries[0].0, n: [entries[0].1, entries[1].0, entries[1].1], epsilon: entries[2].0 })
            } else {
                HamiltonianSpec::Matrix(vec![vec![c(entries[0]), c(entries[1])], vec![c(entries[2]), c(entries[3])]])
            };
            let spec = ProblemSpec {
                hamiltonian,
                state: state.into_iter().map(c).collect(),
                constants: ConstantsSpec { hbar, gamma },
            };
            let text = serde_json::to_string(&spec).unwrap();
            let back: ProblemSpec = parse_json(&text).unwrap();
            let bits = |s: &ProblemSpec| serde_json::to_value(s).unwrap().to_string();
            // PartialEq on f64 treats -0.0 == 0.0, so compare bit patterns as well.
            proptest::prop_assert_eq!(&back, &spec);
            proptest::prop_assert_eq!(bits(&back), bits(&spec));
            let sign_bits = |s: &ProblemSpec| s.state.iter().flatten().map(|x| x.to_bits()).collect::<Vec<_>>();
            proptest::prop_assert_eq!(sign_bits(&back), sign_bits(&spec));
        }
    }
}
