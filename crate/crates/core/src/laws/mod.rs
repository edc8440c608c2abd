//! Seeded theorem-verification harness.
//!
//! Each suite draws `trials` independent inputs from its ensembles and checks
//! one law on every draw. Trial `k` is seeded from `(seed, suite, k)` alone,
//! so any failure can be regenerated with [`replay_failure`]. Suites pass
//! only at 100%.

pub mod ensembles;
pub mod fixtures;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cmatrix::Matrix;
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

pub use ensembles::EnsembleKind;
pub use fixtures::{fixtures, Fixture, FixtureOutcome};
pub use suites::{
    truncated_shift, AXIOM_TOL, EQUALITY_TOL, GAMMA_SEED, INEQUALITY_TOL, NEAR_DISJOINT_DELTA,
    RESIDUAL_TOL, WITNESS_TOL,
};

/// Version of the JSON shape of [`SuiteReport`].
pub const SCHEMA_VERSION: u32 = 1;

pub const MIN_DIMENSION: usize = 2;
pub const MAX_DIMENSION: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub kind: EnsembleKind,
    pub dimension: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SuiteId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    S10,
    S11,
    S12,
    S13,
    S14,
    S15,
}

impl SuiteId {
    pub const ALL: [SuiteId; 15] = [
        SuiteId::S1,
        SuiteId::S2,
        SuiteId::S3,
        SuiteId::S4,
        SuiteId::S5,
        SuiteId::S6,
        SuiteId::S7,
        SuiteId::S8,
        SuiteId::S9,
        SuiteId::S10,
        SuiteId::S11,
        SuiteId::S12,
        SuiteId::S13,
        SuiteId::S14,
        SuiteId::S15,
    ];

    fn index(self) -> u64 {
        self as u64 + 1
    }

    fn def(self) -> &'static SuiteDef {
        &REGISTRY[self as usize]
    }

    pub fn title(self) -> &'static str {
        self.def().title
    }

    /// Ensemble kinds accepted in the config; the first is the default.
    pub fn kinds(self) -> &'static [EnsembleKind] {
        self.def().kinds
    }

    /// Trial legs for a kind. Trial `k` runs leg `k % legs.len()`.
    pub fn legs(self, kind: EnsembleKind) -> &'static [&'static str] {
        (self.def().legs)(kind)
    }

    pub fn default_config(self, seed: u64) -> EnsembleConfig {
        let d = self.def();
        EnsembleConfig {
            kind: d.kinds[0],
            dimension: d.dimension,
            trials: d.trials,
            seed,
        }
    }

    pub fn tolerances(self) -> BTreeMap<String, f64> {
        self.def()
            .tolerances
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect()
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

type SuiteFn = fn(&mut Trial) -> Result<()>;

struct SuiteDef {
    title: &'static str,
    kinds: &'static [EnsembleKind],
    legs: fn(EnsembleKind) -> &'static [&'static str],
    dimension: usize,
    trials: usize,
    tolerances: &'static [(&'static str, f64)],
    run: SuiteFn,
}

use EnsembleKind as K;

const PREDICATE: (&str, f64) = ("predicate_relative", DEFAULT_TOL);

static REGISTRY: [SuiteDef; 15] = [
    SuiteDef {
        title: "Clarkson–McCarthy inequalities and the equality case",
        kinds: &[K::Psd, K::Ginibre],
        legs: |_| &["generic", "disjoint", "one_sided"],
        dimension: 4,
        trials: 200,
        tolerances: &[
            ("inequality_relative", INEQUALITY_TOL),
            ("equality_relative", EQUALITY_TOL),
        ],
        run: suites::s1,
    },
    SuiteDef {
        title: "disjoint supports imply mutual Birkhoff–James orthogonality",
        kinds: &[K::Psd, K::DisjointPair],
        legs: |k| {
            if k == K::Psd {
                &["psd_disjoint"]
            } else {
                &["disjoint", "range_orthogonal"]
            }
        },
        dimension: 4,
        trials: 200,
        tolerances: &[PREDICATE],
        run: suites::s2,
    },
    SuiteDef {
        title: "Birkhoff–James orthogonality of positive operators forces disjoint supports",
        kinds: &[K::Psd],
        legs: |_| &["generic", "disjoint", "near_disjoint"],
        dimension: 4,
        trials: 150,
        tolerances: &[
            PREDICATE,
            ("residual", RESIDUAL_TOL),
            ("near_disjoint_delta", NEAR_DISJOINT_DELTA),
        ],
        run: suites::s3,
    },
    SuiteDef {
        title: "isosceles versus Birkhoff–James orthogonality on the positive cone",
        kinds: &[K::Psd],
        legs: |_| &["generic", "disjoint"],
        dimension: 4,
        trials: 100,
        tolerances: &[
            PREDICATE,
            ("inequality_relative", INEQUALITY_TOL),
            ("equality_relative", EQUALITY_TOL),
        ],
        run: suites::s4,
    },
    SuiteDef {
        title: "semi-inner product axioms and the trace test for orthogonality",
        kinds: &[
            K::Ginibre,
            K::Psd,
            K::Unitary,
            K::Projection,
            K::Nilpotent,
            K::PartialIsometry,
        ],
        legs: |_| &["generic", "orthogonalized"],
        dimension: 4,
        trials: 200,
        tolerances: &[PREDICATE, ("axiom_relative", AXIOM_TOL)],
        run: suites::s5,
    },
    SuiteDef {
        title: "orthogonality to the identity iff zero trace",
        kinds: &[K::Ginibre, K::Psd, K::Unitary, K::Nilpotent],
        legs: |_| &["generic", "traceless"],
        dimension: 3,
        trials: 200,
        tolerances: &[PREDICATE],
        run: suites::s6,
    },
    SuiteDef {
        title: "Löwner conditions on |I + γA| characterize A = 0",
        kinds: &[K::Ginibre],
        legs: |_| &["generic", "zero", "skew_hermitian", "hermitian"],
        dimension: 4,
        trials: 200,
        tolerances: &[
            PREDICATE,
            ("loewner", INEQUALITY_TOL),
            ("gamma_samples", 52.0),
        ],
        run: suites::s7,
    },
    SuiteDef {
        title: "Löwner domination |B + γA| >= |B| and its conclusions",
        kinds: &[K::CommutingKernelPair],
        legs: |_| &["orthogonal_ranges", "generic", "multiple"],
        dimension: 4,
        trials: 150,
        tolerances: &[
            ("loewner", INEQUALITY_TOL),
            ("equality_relative", EQUALITY_TOL),
            ("gamma_samples", 52.0),
        ],
        run: suites::s8,
    },
    SuiteDef {
        title: "parallelism iff linear dependence for 1 < p < ∞",
        kinds: &[K::DependentPair],
        legs: |_| &["dependent", "generic", "counterexample"],
        dimension: 4,
        trials: 300,
        tolerances: &[PREDICATE, ("dependence", crate::parallel::DEPENDENCE_TOL)],
        run: suites::s9,
    },
    SuiteDef {
        title: "trace characterization of parallelism",
        kinds: &[K::DependentPair],
        legs: |_| &["dependent", "generic"],
        dimension: 4,
        trials: 200,
        tolerances: &[PREDICATE, ("dependence", crate::parallel::DEPENDENCE_TOL)],
        run: suites::s10,
    },
    SuiteDef {
        title: "parallelism to the identity iff norm equals numerical radius",
        kinds: &[K::Ginibre],
        legs: |_| &["normal", "triangular"],
        dimension: 4,
        trials: 200,
        tolerances: &[PREDICATE, ("banach_radius", WITNESS_TOL)],
        run: suites::s11,
    },
    SuiteDef {
        title: "parallelism to the identity iff a unimodular multiple of the norm is an eigenvalue",
        kinds: &[K::Nilpotent],
        legs: |_| &["normal", "nilpotent", "shift"],
        dimension: 4,
        trials: 300,
        tolerances: &[PREDICATE, ("shift_radius", WITNESS_TOL)],
        run: suites::s12,
    },
    SuiteDef {
        title: "nilpotent powers and orthogonal projections",
        kinds: &[K::Nilpotent, K::Projection],
        legs: |_| &["nilpotent", "intersecting", "transversal"],
        dimension: 5,
        trials: 300,
        tolerances: &[
            PREDICATE,
            ("subspace_angle", crate::ortho::KERNEL_ANGLE_TOL),
        ],
        run: suites::s13,
    },
    SuiteDef {
        title: "unitary invariance, ε-isometry transfer and norm-attainment transfer",
        kinds: &[K::Unitary],
        legs: |_| &["conjugation", "isometry", "attainment"],
        dimension: 4,
        trials: 300,
        tolerances: &[PREDICATE, ("inequality_relative", INEQUALITY_TOL)],
        run: suites::s14,
    },
    SuiteDef {
        title: "Hilbert witness vector for parallelism",
        kinds: &[K::Ginibre],
        legs: |_| {
            &[
                "real_parallel",
                "real_generic",
                "complex_parallel",
                "complex_generic",
            ]
        },
        dimension: 4,
        trials: 200,
        tolerances: &[PREDICATE, ("witness", WITNESS_TOL)],
        run: suites::s15,
    },
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub offset: usize,
    pub leg: String,
    /// SHA-256 of the JSON-serialized inputs.
    pub digest: String,
    /// The first failing check, or the error raised by the trial.
    pub check: String,
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Matrix,
}

/// Everything a replayed trial computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialDetail {
    pub offset: usize,
    pub leg: String,
    pub digest: String,
    pub inputs: Vec<NamedMatrix>,
    pub checks: Vec<CheckRecord>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite_id: SuiteId,
    pub title: String,
    pub config: EnsembleConfig,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<FailureRecord>,
    pub tolerances_used: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<TrialDetail>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.passes == self.trials && self.failures.is_empty()
    }
}

/// State of one trial: its generator, leg and the records it produces.
pub struct Trial {
    pub rng: ChaCha8Rng,
    pub n: usize,
    pub kind: EnsembleKind,
    pub offset: usize,
    leg: &'static str,
    inputs: Vec<NamedMatrix>,
    checks: Vec<CheckRecord>,
}

impl Trial {
    fn leg_name(&self) -> &'static str {
        self.leg
    }

    fn input(&mut self, name: &str, m: &Matrix) {
        self.inputs.push(NamedMatrix {
            name: name.to_string(),
            matrix: m.clone(),
        });
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, gap: f64) {
        self.checks.push(CheckRecord {
            name: name.into(),
            passed,
            gap: gap.is_finite().then_some(gap),
        });
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn trial_seed(seed: u64, suite: SuiteId, offset: usize) -> u64 {
    splitmix(splitmix(splitmix(seed) ^ suite.index()) ^ offset as u64)
}

fn validate(suite: SuiteId, config: &EnsembleConfig) -> Result<()> {
    if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&config.dimension) {
        return Err(Error::Precondition(format!(
            "dimension must lie in [{MIN_DIMENSION}, {MAX_DIMENSION}], got {}",
            config.dimension
        )));
    }
    if config.trials == 0 {
        return Err(Error::Precondition("trials must be positive".into()));
    }
    if !suite.kinds().contains(&config.kind) {
        let names: Vec<&str> = suite.kinds().iter().map(|k| k.name()).collect();
        return Err(Error::Precondition(format!(
            "{suite} accepts ensembles {{{}}}, got {}",
            names.join(", "),
            config.kind.name()
        )));
    }
    Ok(())
}

fn run_trial(suite: SuiteId, config: &EnsembleConfig, offset: usize) -> TrialDetail {
    let legs = suite.legs(config.kind);
    let mut t = Trial {
        rng: ChaCha8Rng::seed_from_u64(trial_seed(config.seed, suite, offset)),
        n: config.dimension,
        kind: config.kind,
        offset,
        leg: legs[offset % legs.len()],
        inputs: Vec::new(),
        checks: Vec::new(),
    };
    let error = (suite.def().run)(&mut t).err().map(|e| e.to_string());
    let json = serde_json::to_vec(&t.inputs).expect("matrices serialize");
    TrialDetail {
        offset,
        leg: t.leg.to_string(),
        digest: hex::encode(Sha256::digest(&json)),
        inputs: t.inputs,
        checks: t.checks,
        error,
    }
}

fn failure_of(d: &TrialDetail) -> Option<FailureRecord> {
    let (check, gap) = if let Some(e) = &d.error {
        (format!("error: {e}"), None)
    } else {
        let c = d.checks.iter().find(|c| !c.passed)?;
        (c.name.clone(), c.gap)
    };
    Some(FailureRecord {
        offset: d.offset,
        leg: d.leg.clone(),
        digest: d.digest.clone(),
        check,
        gap,
    })
}

fn report(
    suite: SuiteId,
    config: EnsembleConfig,
    details: &[TrialDetail],
    keep: bool,
) -> SuiteReport {
    let failures: Vec<FailureRecord> = details.iter().filter_map(failure_of).collect();
    SuiteReport {
        schema_version: SCHEMA_VERSION,
        suite_id: suite,
        title: suite.title().to_string(),
        config,
        trials: details.len(),
        passes: details.len() - failures.len(),
        failures,
        tolerances_used: suite.tolerances(),
        details: if keep { details.to_vec() } else { Vec::new() },
    }
}

/// Runs `config.trials` trials of a suite. Trials execute in parallel and
/// are collected in offset order, so the report does not depend on
/// scheduling.
pub fn run_suite(suite: SuiteId, config: &EnsembleConfig) -> Result<SuiteReport> {
    validate(suite, config)?;
    let details: Vec<TrialDetail> = (0..config.trials)
        .into_par_iter()
        .map(|k| run_trial(suite, config, k))
        .collect();
    Ok(report(suite, *config, &details, false))
}

/// Re-runs trial `offset` of a suite run and keeps its inputs and every
/// check in `details`.
pub fn replay_failure(
    suite: SuiteId,
    config: &EnsembleConfig,
    offset: usize,
) -> Result<SuiteReport> {
    validate(suite, config)?;
    if offset >= config.trials {
        return Err(Error::ReplayRange(format!(
            "offset {offset} outside a run of {} trials",
            config.trials
        )));
    }
    let detail = run_trial(suite, config, offset);
    Ok(report(suite, *config, std::slice::from_ref(&detail), true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_parse() {
        assert_eq!("s10".parse::<SuiteId>().unwrap(), SuiteId::S10);
        assert!(matches!(
            "S99".parse::<SuiteId>(),
            Err(Error::UnknownSuite(_))
        ));
        for id in SuiteId::ALL {
            assert_eq!(id.to_string().parse::<SuiteId>().unwrap(), id);
            assert!(!id.legs(id.kinds()[0]).is_empty());
        }
    }

    #[test]
    fn config_validation() {
        let mut c = SuiteId::S1.default_config(1);
        c.dimension = 9;
        assert!(run_suite(SuiteId::S1, &c).is_err());
        let mut c = SuiteId::S1.default_config(1);
        c.kind = EnsembleKind::Nilpotent;
        assert!(run_suite(SuiteId::S1, &c).is_err());
        let c = SuiteId::S1.default_config(1);
        assert!(matches!(
            replay_failure(SuiteId::S1, &c, c.trials),
            Err(Error::ReplayRange(_))
        ));
    }

    #[test]
    fn reports_are_deterministic_and_replayable() {
        let mut c = SuiteId::S6.default_config(7);
        c.trials = 12;
        let a = run_suite(SuiteId::S6, &c).unwrap();
        let b = run_suite(SuiteId::S6, &c).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.passes + a.failures.len(), a.trials);
        let r = replay_failure(SuiteId::S6, &c, 5).unwrap();
        assert_eq!(r.trials, 1);
        assert_eq!(r.details[0].offset, 5);
        assert!(!r.details[0].checks.is_empty());
    }
}
