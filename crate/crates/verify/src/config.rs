//! JSON configuration of a verification run.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use holo_core::special::{Signature, WeightParams};
use holo_core::{c64, AlgebraKind, JordanAlgebra, C64};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest Cartesian grid a configuration may request.
pub const MAX_CARTESIAN_NODES: usize = 1 << 26;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid config:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    JordanIdentities,
    GeometryIdentities,
    GammaIntegral,
    BetaMinktype,
    Rank1Kp,
    RankinCohen,
    Equivariance,
    CrossAlgebra,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::JordanIdentities,
        Suite::GeometryIdentities,
        Suite::GammaIntegral,
        Suite::BetaMinktype,
        Suite::Rank1Kp,
        Suite::RankinCohen,
        Suite::Equivariance,
        Suite::CrossAlgebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::JordanIdentities => "jordan-identities",
            Suite::GeometryIdentities => "geometry-identities",
            Suite::GammaIntegral => "gamma-integral",
            Suite::BetaMinktype => "beta-minktype",
            Suite::Rank1Kp => "rank1-kp",
            Suite::RankinCohen => "rankin-cohen",
            Suite::Equivariance => "equivariance",
            Suite::CrossAlgebra => "cross-algebra",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of {}", suite_names()))
    }
}

fn suite_names() -> String {
    Suite::ALL.map(Suite::name).join(", ")
}

/// A real number or an `[re, im]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexInput {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexInput {
    pub fn value(self) -> C64 {
        match self {
            ComplexInput::Real(x) => c64(x, 0.0),
            ComplexInput::Pair([a, b]) => c64(a, b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Sizes {
    /// Gauss–Jacobi nodes for rank-one operators.
    pub rank1: usize,
    /// Eigen-angle rule size (per direction).
    pub eigen: usize,
    /// Cartesian grid points per coordinate.
    pub cartesian: usize,
    /// Cone rule size.
    pub cone: usize,
}

impl Default for Sizes {
    fn default() -> Self {
        Self { rank1: 64, eigen: 32, cartesian: 48, cone: 48 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub kp_base: f64,
    pub kp: f64,
    pub bridge: f64,
    pub minktype_rank1: f64,
    pub minktype_eigen: f64,
    pub minktype_cartesian: f64,
    pub collapse: f64,
    pub gamma: f64,
    pub quasi_inverse: f64,
    pub hua: f64,
    pub det_p: f64,
    pub det_b: f64,
    pub inversion: f64,
    pub dual_power: f64,
    pub identity: f64,
    pub frame: f64,
    pub equivariance_factor: f64,
    pub rankin_cohen: f64,
    pub rc_kp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            kp_base: 1e-10,
            kp: 1e-8,
            bridge: 1e-8,
            minktype_rank1: 1e-6,
            minktype_eigen: 1e-5,
            minktype_cartesian: 1e-3,
            collapse: 1e-12,
            gamma: 1e-4,
            quasi_inverse: 1e-10,
            hua: 1e-11,
            det_p: 1e-9,
            det_b: 1e-9,
            inversion: 1e-9,
            dual_power: 1e-11,
            identity: 1e-10,
            frame: 1e-12,
            equivariance_factor: 10.0,
            rankin_cohen: 1e-12,
            rc_kp: 1e-8,
        }
    }
}

impl Tolerances {
    fn entries(&self) -> [(&'static str, f64); 19] {
        [
            ("kp_base", self.kp_base),
            ("kp", self.kp),
            ("bridge", self.bridge),
            ("minktype_rank1", self.minktype_rank1),
            ("minktype_eigen", self.minktype_eigen),
            ("minktype_cartesian", self.minktype_cartesian),
            ("collapse", self.collapse),
            ("gamma", self.gamma),
            ("quasi_inverse", self.quasi_inverse),
            ("hua", self.hua),
            ("det_p", self.det_p),
            ("det_b", self.det_b),
            ("inversion", self.inversion),
            ("dual_power", self.dual_power),
            ("identity", self.identity),
            ("frame", self.frame),
            ("equivariance_factor", self.equivariance_factor),
            ("rankin_cohen", self.rankin_cohen),
            ("rc_kp", self.rc_kp),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    pub suites: Vec<Suite>,
    pub algebras: Vec<AlgebraKind>,
    pub lambdas: Vec<ComplexInput>,
    pub mus: Vec<ComplexInput>,
    /// Signatures; each applies to the algebras of matching rank.
    pub signatures: Vec<Vec<u32>>,
    /// Largest order of the rank-one operators and brackets.
    pub l_max: u32,
    /// Eigenvalues of the frame-diagonal separations `u`; each applies to the algebras of matching rank.
    pub points: Vec<Vec<f64>>,
    /// Weights of the cone gamma integral.
    pub gamma_lambdas: Vec<f64>,
    /// Signatures of the `Δ_k` factors in the cone gamma integral, applied by rank.
    pub gamma_signatures: Vec<Vec<u32>>,
    /// Random draws per identity and algebra.
    pub draws: usize,
    /// Random configurations per generator in the equivariance suite.
    pub equivariance_configs: usize,
    pub sizes: Sizes,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            algebras: vec![AlgebraKind::Rank1, AlgebraKind::SymReal(2), AlgebraKind::Spin(3)],
            lambdas: vec![ComplexInput::Real(3.0), ComplexInput::Real(2.5), ComplexInput::Real(4.0)],
            mus: vec![ComplexInput::Real(3.0), ComplexInput::Real(4.0), ComplexInput::Real(3.5)],
            signatures: vec![
                vec![0],
                vec![1],
                vec![3],
                vec![0, 0],
                vec![1, 1],
                vec![2, 1],
                vec![3, 1],
                vec![2, 2],
            ],
            l_max: 4,
            points: vec![vec![1.0], vec![2.0], vec![0.5], vec![1.0, 1.0], vec![1.0, 2.0], vec![0.5, 3.0]],
            gamma_lambdas: vec![2.5, 3.0, 4.0],
            gamma_signatures: vec![vec![0], vec![1], vec![2], vec![0, 0], vec![1, 0], vec![2, 1]],
            draws: 100,
            equivariance_configs: 20,
            sizes: Sizes::default(),
            tolerances: Tolerances::default(),
            seed: 0,
            output: None,
        }
    }
}

impl VerifyConfig {
    pub fn algebras(&self) -> Vec<JordanAlgebra> {
        self.algebras.iter().map(|k| JordanAlgebra::new(*k).expect("validated algebra")).collect()
    }

    /// Signatures of length `rank`.
    pub fn signatures_for(&self, rank: usize) -> Vec<Signature> {
        by_rank(&self.signatures, rank)
    }

    pub fn gamma_signatures_for(&self, rank: usize) -> Vec<Signature> {
        by_rank(&self.gamma_signatures, rank)
    }

    /// Frame-diagonal points of length `rank`.
    pub fn points_for(&self, rank: usize) -> Vec<Vec<f64>> {
        self.points.iter().filter(|p| p.len() == rank).cloned().collect()
    }

    pub fn weight_pairs(&self) -> Vec<(C64, C64)> {
        let mut out = Vec::new();
        for l in &self.lambdas {
            for m in &self.mus {
                out.push((l.value(), m.value()));
            }
        }
        out
    }

    /// Every `(λ, μ, k)` of the grid for `alg`.
    pub fn params_for(&self, alg: JordanAlgebra) -> Vec<WeightParams> {
        let mut out = Vec::new();
        for (l, m) in self.weight_pairs() {
            for k in self.signatures_for(alg.rank()) {
                out.push(WeightParams::new(alg, l, m, k).expect("validated weights"));
            }
        }
        out
    }

    /// Checks every constraint, collecting all violations.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut bad = Vec::new();
        let mut algs = Vec::new();
        for kind in &self.algebras {
            match JordanAlgebra::new(*kind) {
                Ok(a) => algs.push(a),
                Err(e) => bad.push(format!("algebra {kind}: {e}")),
            }
        }
        for s in self.signatures.iter().chain(&self.gamma_signatures) {
            if let Err(e) = Signature::new(s.clone()) {
                bad.push(format!("signature {s:?}: {e}"));
            }
        }
        for v in self.lambdas.iter().chain(&self.mus) {
            let z = v.value();
            if !(z.re.is_finite() && z.im.is_finite()) {
                bad.push(format!("weight {v:?} is not finite"));
            }
        }
        if bad.is_empty() {
            for a in &algs {
                for (l, m) in self.weight_pairs() {
                    for k in self.signatures_for(a.rank()) {
                        if let Err(e) = WeightParams::new(*a, l, m, k.clone()) {
                            bad.push(format!("(λ, μ, k) = ({l}, {m}, {k}) on {a}: {e}"));
                        }
                    }
                }
                if a.rank() == 2 && a.dim() <= 6 {
                    let nodes = self.sizes.cartesian.checked_pow(a.dim() as u32);
                    if nodes.is_none_or(|n| n > MAX_CARTESIAN_NODES) {
                        bad.push(format!("cartesian size {} is too large for {a}", self.sizes.cartesian));
                    }
                }
                for &g in &self.gamma_lambdas {
                    let bound = a.n_over_r() - 1.0;
                    if !(g > bound) || !g.is_finite() {
                        bad.push(format!("gamma weight {g} on {a}: need λ > {bound}"));
                    }
                }
            }
        }
        for p in &self.points {
            if p.is_empty() || p.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
                bad.push(format!("point {p:?}: need positive eigenvalues"));
            }
        }
        let s = &self.sizes;
        if s.rank1 == 0 || s.eigen < 4 || s.cartesian < 4 || s.cone < 8 {
            bad.push(format!("sizes {s:?}: need rank1 ≥ 1, eigen ≥ 4, cartesian ≥ 4, cone ≥ 8"));
        }
        if s.eigen > 512 || s.rank1 > 4096 || s.cone > 4096 {
            bad.push(format!("sizes {s:?} exceed the supported maximum"));
        }
        for (name, t) in self.tolerances.entries() {
            if !(t > 0.0) || !t.is_finite() {
                bad.push(format!("tolerance {name} = {t} must be positive"));
            }
        }
        if self.draws > 100_000 || self.equivariance_configs > 10_000 || self.l_max > 12 {
            bad.push("draws, equivariance_configs or l_max out of range".into());
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(bad))
        }
    }
}

fn by_rank(list: &[Vec<u32>], rank: usize) -> Vec<Signature> {
    list.iter()
        .filter(|s| s.len() == rank)
        .map(|s| Signature::new(s.clone()).expect("validated signature"))
        .collect()
}

/// Parses and validates a JSON configuration.
pub fn parse_config(text: &str) -> Result<VerifyConfig, ConfigError> {
    let cfg: VerifyConfig = serde_json::from_str(text)?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &std::path::Path) -> Result<VerifyConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_the_default() {
        assert_eq!(parse_config("{}").unwrap(), VerifyConfig::default());
    }

    #[test]
    fn weights_accept_reals_and_pairs() {
        let cfg = parse_config(r#"{"lambdas": [3, [4.0, 0.5]], "mus": [2.5]}"#).unwrap();
        assert_eq!(cfg.weight_pairs(), vec![(c64(3.0, 0.0), c64(2.5, 0.0)), (c64(4.0, 0.5), c64(2.5, 0.0))]);
    }

    #[test]
    fn convergence_violations_are_listed() {
        let err = parse_config(r#"{"lambdas": [0.2, 3], "algebras": ["sym(2)"], "signatures": [[0, 0]]}"#).unwrap_err();
        let ConfigError::Invalid(list) = err else { panic!("{err}") };
        assert_eq!(list.len(), 3, "{list:?}");
        assert!(list[0].contains("0.2"));
    }

    #[test]
    fn unknown_fields_and_suites_are_rejected() {
        assert!(parse_config(r#"{"suits": []}"#).is_err());
        assert!(parse_config(r#"{"suites": ["jordan"]}"#).is_err());
        assert!(parse_config(r#"{"algebras": ["herm(3)"]}"#).is_err());
        assert!(parse_config(r#"{"algebras": ["spin(40)"]}"#).is_err());
        assert!(parse_config(r#"{"algebras": ["spin(5)"], "sizes": {"cartesian": 48}}"#).is_err());
        assert!(parse_config(r#"{"tolerances": {"kp": 0}}"#).is_err());
        assert!(parse_config(r#"{"signatures": [[1, 2]]}"#).is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
    }
}
