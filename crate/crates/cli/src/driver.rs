use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use anyhow::{bail, Result};
use serde::Serialize;

use oplab_core::claims::{
    beck_putnam_check, fuglede_putnam_check, verify_chain2, verify_chain3, verify_eq_h1,
    verify_eq_h2, verify_intertwining_reduction, verify_lemma23, verify_thm21, verify_thm22,
    verify_thm25, HyponormalityMode, VerificationReport,
};
use oplab_core::families::{
    arc_unitary, arc_unitary_times_pd, commutant_sample, cyclic_weighted_shift, log_ordered_pair,
    nilpotent_jordan, random_invertible, random_matrix, random_normal, random_psd,
    seeded_cyclic_weights, trial_seed, SplitMix64,
};
use oplab_core::operators::Arc;
use oplab_core::{Matrix, Tolerances, Vector};

/// Claims the `verify` subcommand understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    EqH1,
    EqH2,
    Chain2,
    Chain3,
    Thm21,
    Thm22,
    Lemma23,
    Lemma24,
    Fuglede,
    BeckPutnam,
    Thm25,
}

pub const CLAIM_NAMES: [&str; 11] = [
    "eqh1",
    "eqh2",
    "chain2",
    "chain3",
    "thm21",
    "thm22",
    "lemma23",
    "lemma24",
    "fuglede",
    "beckputnam",
    "thm25",
];

impl FromStr for Claim {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "eqh1" => Ok(Claim::EqH1),
            "eqh2" => Ok(Claim::EqH2),
            "chain2" => Ok(Claim::Chain2),
            "chain3" => Ok(Claim::Chain3),
            "thm21" => Ok(Claim::Thm21),
            "thm22" => Ok(Claim::Thm22),
            "lemma23" => Ok(Claim::Lemma23),
            "lemma24" => Ok(Claim::Lemma24),
            "fuglede" => Ok(Claim::Fuglede),
            "beckputnam" => Ok(Claim::BeckPutnam),
            "thm25" => Ok(Claim::Thm25),
            other => Err(format!(
                "unknown claim '{other}'; expected one of {}",
                CLAIM_NAMES.join(", ")
            )),
        }
    }
}

impl Claim {
    pub fn id(&self) -> &'static str {
        match self {
            Claim::EqH1 => "eqh1",
            Claim::EqH2 => "eqh2",
            Claim::Chain2 => "chain2",
            Claim::Chain3 => "chain3",
            Claim::Thm21 => "thm21",
            Claim::Thm22 => "thm22",
            Claim::Lemma23 => "lemma23",
            Claim::Lemma24 => "lemma24",
            Claim::Fuglede => "fuglede",
            Claim::BeckPutnam => "beckputnam",
            Claim::Thm25 => "thm25",
        }
    }
}

/// Operator families the single-matrix claims can sweep over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Random,
    Normal,
    Psd,
    Invertible,
    Cyclic,
    Arc,
    Jordan,
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(Family::Random),
            "normal" => Ok(Family::Normal),
            "psd" => Ok(Family::Psd),
            "invertible" => Ok(Family::Invertible),
            "cyclic" => Ok(Family::Cyclic),
            "arc" => Ok(Family::Arc),
            "jordan" => Ok(Family::Jordan),
            other => Err(format!(
                "unknown family '{other}'; expected one of random, normal, psd, invertible, cyclic, arc, jordan"
            )),
        }
    }
}

impl Family {
    fn name(&self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Normal => "normal",
            Family::Psd => "psd",
            Family::Invertible => "invertible",
            Family::Cyclic => "cyclic",
            Family::Arc => "arc",
            Family::Jordan => "jordan",
        }
    }
}

/// Everything a batch run depends on; serialized verbatim into the report
/// so any trial can be replayed from the report alone.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub seed: u64,
    /// Trials per dimension.
    pub trials: u64,
    pub dims: Vec<usize>,
    pub family: String,
    pub p: f64,
    pub log_mode: bool,
    pub depth: usize,
    pub horizon: usize,
    /// `None` means `n0 = dim − 1`.
    pub n0: Option<usize>,
    pub margin: f64,
    pub cond_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl RunConfig {
    pub fn defaults_for(claim: Claim, tolerances: Tolerances) -> Self {
        let family = default_family(claim).name().to_string();
        RunConfig {
            tolerances,
            seed: 0,
            trials: 100,
            dims: (2..=6).collect(),
            family,
            p: 1.0,
            log_mode: false,
            depth: 8,
            horizon: 8,
            n0: None,
            margin: 0.1,
            cond_bound: 100.0,
            out: None,
        }
    }
}

pub fn default_family(claim: Claim) -> Family {
    match claim {
        Claim::EqH1 => Family::Random,
        Claim::EqH2 => Family::Invertible,
        Claim::Chain2 | Claim::Chain3 | Claim::Thm21 => Family::Cyclic,
        Claim::Thm22 => Family::Psd,
        Claim::Thm25 => Family::Arc,
        // pair-structured claims build their own instances
        Claim::Lemma23 | Claim::Lemma24 | Claim::Fuglede | Claim::BeckPutnam => Family::Normal,
    }
}

/// One failing trial, reproducible from `(claim_id, seed)` alone.
#[derive(Debug, Clone, Serialize)]
pub struct FailureRecord {
    pub trial: u64,
    pub seed: u64,
    pub defects: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Matrix>,
}

/// Aggregated outcome of a batch verification run. Vacuous trials are
/// counted separately and never as passes; `max_defect` ranges over the
/// non-vacuous trials.
#[derive(Debug, Clone, Serialize)]
pub struct AggregateReport {
    pub claim_id: String,
    pub config: RunConfig,
    pub trials: u64,
    pub vacuous: u64,
    pub failures: Vec<FailureRecord>,
    pub max_defect: f64,
}

fn build_single(family: Family, dim: usize, rng: &mut SplitMix64, cfg: &RunConfig) -> Result<Matrix> {
    let m = match family {
        Family::Random => random_matrix(dim, rng.next_u64()),
        Family::Normal => random_normal(dim, rng.next_u64()),
        Family::Psd => random_psd(dim, rng.next_u64(), cfg.cond_bound)?,
        Family::Invertible => random_invertible(dim, rng.next_u64(), cfg.cond_bound)?,
        Family::Cyclic => cyclic_weighted_shift(&seeded_cyclic_weights(dim, rng.next_u64()))?,
        Family::Arc => {
            let arc = Arc::new(rng.uniform_in(0.0, TAU), PI)?;
            arc_unitary_times_pd(&arc, cfg.margin, dim, rng.next_u64(), cfg.cond_bound)?
        }
        Family::Jordan => nilpotent_jordan(dim),
    };
    Ok(m)
}

fn random_vector(dim: usize, rng: &mut SplitMix64) -> Vector {
    Vector::from_vec((0..dim).map(|_| rng.complex_gaussian()).collect())
}

/// `c₀I + c₁T + c₂T²` with seeded Gaussian coefficients; commutes with `T`.
fn polynomial_in(t: &Matrix, rng: &mut SplitMix64) -> Matrix {
    let n = t.rows();
    let c0 = rng.complex_gaussian();
    let c1 = rng.complex_gaussian();
    let c2 = rng.complex_gaussian();
    &(&Matrix::identity(n).scale(c0) + &t.scale(c1)) + &(t * t).scale(c2)
}

fn mode(cfg: &RunConfig) -> HyponormalityMode {
    if cfg.log_mode {
        HyponormalityMode::LogHyponormal
    } else {
        HyponormalityMode::PHyponormal(cfg.p)
    }
}

/// Run one trial of `claim` at dimension `dim` from the per-trial seed.
/// Returns the report and the primary instance (the fallback witness).
pub fn run_one(
    claim: Claim,
    family: Family,
    dim: usize,
    seed: u64,
    cfg: &RunConfig,
    tol: &Tolerances,
) -> Result<(VerificationReport, Matrix)> {
    let mut rng = SplitMix64::new(seed);
    let report = match claim {
        Claim::EqH1 => {
            let t = build_single(family, dim, &mut rng, cfg)?;
            (verify_eq_h1(&t, &[0.0, 0.5, 1.0, 2.0], tol)?, t)
        }
        Claim::EqH2 => {
            let t = build_single(family, dim, &mut rng, cfg)?;
            (verify_eq_h2(&t, tol)?, t)
        }
        Claim::Chain2 => {
            let t = build_single(family, dim, &mut rng, cfg)?;
            (verify_chain2(&t, cfg.p, cfg.depth, tol)?, t)
        }
        Claim::Chain3 => {
            let t = build_single(family, dim, &mut rng, cfg)?;
            let xi = random_vector(dim, &mut rng);
            (verify_chain3(&t, cfg.p, &xi, cfg.depth, tol)?, t)
        }
        Claim::Thm21 => {
            let t = build_single(family, dim, &mut rng, cfg)?;
            let n0 = cfg.n0.unwrap_or_else(|| (dim - 1).max(1));
            (verify_thm21(&t, mode(cfg), n0, tol)?, t)
        }
        Claim::Thm22 => {
            let t = build_single(family, dim, &mut rng, cfg)?;
            (verify_thm22(&t, mode(cfg), cfg.horizon, tol)?, t)
        }
        Claim::Lemma23 => {
            let (t, s) = log_ordered_pair(dim, rng.next_u64(), tol)?;
            let c = [0.1, 1.0, 10.0][rng.index(3)];
            (verify_lemma23(&t, &s, c, tol)?, t)
        }
        Claim::Lemma24 => {
            let t = random_normal(dim, rng.next_u64());
            let x = if rng.uniform() < 0.5 {
                Matrix::identity(dim)
            } else {
                polynomial_in(&t, &mut rng)
            };
            (verify_intertwining_reduction(&t, &t, &x, tol)?, t)
        }
        Claim::Fuglede => {
            let n = random_normal(dim, rng.next_u64());
            let x = commutant_sample(&n, rng.next_u64(), tol)?;
            (fuglede_putnam_check(&n, &x, tol)?, n)
        }
        Claim::BeckPutnam => {
            let arc = Arc::new(rng.uniform_in(0.0, TAU), PI)?;
            let u = arc_unitary(&arc, cfg.margin, dim, rng.next_u64())?;
            let x = commutant_sample(&(&u * &u), rng.next_u64(), tol)?;
            (beck_putnam_check(&u, &x, tol)?, u)
        }
        Claim::Thm25 => {
            let t = build_single(family, dim, &mut rng, cfg)?;
            (verify_thm25(&t, tol)?, t)
        }
    };
    Ok(report)
}

/// Sweep `dims × trials`, deriving every trial's seed from
/// `(config seed, global trial index)`.
pub fn run_claim(claim: Claim, cfg: &RunConfig) -> Result<AggregateReport> {
    let tol = cfg.tolerances;
    tol.validate()?;
    if cfg.trials == 0 {
        bail!("trials must be ≥ 1");
    }
    if cfg.dims.is_empty() || cfg.dims.contains(&0) {
        bail!("dims must be nonempty and every dim ≥ 1");
    }
    let family: Family = cfg
        .family
        .parse()
        .map_err(|e: String| anyhow::anyhow!(e))?;

    let mut failures = Vec::new();
    let mut vacuous = 0u64;
    let mut max_defect = 0.0f64;
    let mut global = 0u64;
    for &dim in &cfg.dims {
        for _ in 0..cfg.trials {
            let seed = trial_seed(cfg.seed, global);
            let (report, instance) = run_one(claim, family, dim, seed, cfg, &tol)?;
            if report.vacuous() {
                vacuous += 1;
            } else {
                max_defect = max_defect.max(report.max_defect());
                if report.failed() {
                    failures.push(FailureRecord {
                        trial: global,
                        seed,
                        defects: report.defects.clone(),
                        witness: report.witness.clone().or(Some(instance)),
                    });
                }
            }
            global += 1;
        }
    }
    Ok(AggregateReport {
        claim_id: claim.id().to_string(),
        config: cfg.clone(),
        trials: global,
        vacuous,
        failures,
        max_defect,
    })
}
