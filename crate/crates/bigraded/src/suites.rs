//! Verification suites: every documented identity of the kernel and the
//! models, run as reportable checks.
//!
//! Five suites cover the layers of the library. `algebra` stress-tests the
//! canonical product against a sign-walking oracle and the graded Lie
//! structure. `superspace` audits the operator bracket table and the
//! covariant-derivative expansions of a scalar superfield. `berezin` checks
//! the Berezinian of the symmetry Jacobians and its multiplicative laws.
//! `models` drives the sigma and exotic models declared in the configuration
//! through their actions, equations of motion, supersymmetry variations and
//! currents, comparing big densities against golden files. `appendix-b` runs
//! the randomized coordinate-change template at truncation order 3.
//!
//! Randomized checks derive one RNG per (seed, check, trial) triple, so
//! results are independent of the parallel schedule: two runs with the same
//! configuration produce byte-identical canonical reports.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::algebra::{Ctx, Gen, GradedExpr};
use crate::berezin::{
    formal_z_integral, integrability_obstruction, is_integrable, z2_berezinian, z2_trace,
    z2_trace_flipped, GradedMatrix,
};
use crate::calculus::{graded_commutator, partial_dir, Derivation, Target};
use crate::coeff::{App, CoeffExpr, Dir, Func, Sym, Weighted};
use crate::coordchange::{
    berezinian_no_z_term, integrability_transport, integral_coordinate_independence,
    random_section, template_change, BFrame,
};
use crate::grading::{koszul_sign, Degree};
use crate::models::{
    el_equation, lagrangian_pieces, noether_current, quadratic_potential_counterexample,
    quasi_residual, susy_params, CompField, EomSystem, ExoticModel, Metric, Potential, SigmaModel,
};
use crate::naive::{check_product, check_unit};
use crate::render;
use crate::report::{Check, KernelSnapshot, RunReport, SuiteReport};
use crate::superspace::{boost, bracket_audit, supertranslation, M2, STParams, ScalarField};
use crate::{rat, rint};

/// The suite names accepted by [`run_suites`], in execution order.
pub const SUITE_NAMES: [&str; 5] = ["algebra", "superspace", "berezin", "models", "appendix-b"];

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Kernel knobs shared by every suite.
#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct KernelConfig {
    /// Truncation order of the degree-(1,1) coordinate. The coordinate-change
    /// suite always runs at order 3; the models are built at order 1.
    pub z_order: u32,
    pub seed: u64,
    /// Base randomized-trial count: the product oracle uses the full value,
    /// the Lie-structure checks a fifth, the Berezinian and coordinate-change
    /// properties a tenth.
    pub trials: usize,
}

impl Default for KernelConfig {
    fn default() -> KernelConfig {
        KernelConfig {
            z_order: 1,
            seed: 20260817,
            trials: 500,
        }
    }
}

/// One model declaration from the configuration file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ModelConfig {
    /// "sigma" or "exotic".
    pub kind: String,
    pub n: Option<u8>,
    /// "identity", "constant", or "field-dependent".
    pub metric: Option<String>,
    /// "none", "generic", or "sine-gordon".
    pub potential: Option<String>,
    #[serde(default)]
    pub with_top: bool,
    /// Interaction couplings `[[power, name], …]` for the exotic model.
    #[serde(default)]
    pub couplings: Vec<(u32, String)>,
    /// Golden file the component density is compared against.
    pub golden_component: Option<String>,
    /// Golden file the auxiliary-eliminated density is compared against.
    pub golden_eliminated: Option<String>,
}

/// Full run configuration: kernel knobs plus the declared models.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Config {
    #[serde(default)]
    pub kernel: KernelConfig,
    #[serde(default)]
    pub models: BTreeMap<String, ModelConfig>,
}

impl Default for Config {
    fn default() -> Config {
        default_config()
    }
}

/// The configuration embedded at build time (config/default.toml).
pub fn default_config() -> Config {
    toml::from_str(include_str!("../../../config/default.toml"))
        .expect("embedded default configuration must parse")
}

/// Parse a configuration file's contents. A file that declares no models
/// inherits the default model set; kernel knobs it omits take their
/// defaults.
pub fn parse_config(text: &str) -> Result<Config, String> {
    let mut cfg: Config = toml::from_str(text).map_err(|e| format!("configuration error: {e}"))?;
    if cfg.models.is_empty() {
        cfg.models = default_config().models;
    }
    Ok(cfg)
}

impl Config {
    pub fn snapshot(&self) -> KernelSnapshot {
        KernelSnapshot {
            z_order: self.kernel.z_order,
            seed: self.kernel.seed,
            trials: self.kernel.trials,
        }
    }
}

impl ModelConfig {
    fn metric(&self) -> Result<Metric, String> {
        match self.metric.as_deref() {
            None | Some("identity") => Ok(Metric::Identity),
            Some("constant") => Ok(Metric::Constant),
            Some("field-dependent") => Ok(Metric::FieldDependent),
            Some(other) => Err(format!("unknown metric '{other}'")),
        }
    }

    fn potential(&self) -> Result<Potential, String> {
        match self.potential.as_deref() {
            None | Some("none") => Ok(Potential::None),
            Some("generic") => Ok(Potential::Generic),
            Some("sine-gordon") => Ok(Potential::SineGordon),
            Some(other) => Err(format!("unknown potential '{other}'")),
        }
    }

    /// Build the declared model's sigma form.
    pub fn build_sigma(&self) -> Result<SigmaModel, String> {
        if self.kind != "sigma" {
            return Err(format!("model kind '{}' is not 'sigma'", self.kind));
        }
        SigmaModel::new(self.n.unwrap_or(1), self.metric()?, self.potential()?)
    }

    /// Build the declared model's exotic form.
    pub fn build_exotic(&self) -> Result<ExoticModel, String> {
        if self.kind != "exotic" {
            return Err(format!("model kind '{}' is not 'exotic'", self.kind));
        }
        let couplings = self
            .couplings
            .iter()
            .map(|(p, name)| (*p, Sym::param(name)))
            .collect();
        ExoticModel::new(self.with_top, couplings)
    }
}

// ---------------------------------------------------------------------------
// Golden files
// ---------------------------------------------------------------------------

/// Embedded golden file contents by name.
pub fn golden_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "linear_sigma_component.txt" => include_str!("../golden/linear_sigma_component.txt"),
        "linear_sigma_eliminated.txt" => include_str!("../golden/linear_sigma_eliminated.txt"),
        "nonlinear_sigma_component.txt" => include_str!("../golden/nonlinear_sigma_component.txt"),
        "sine_gordon_component.txt" => include_str!("../golden/sine_gordon_component.txt"),
        "sine_gordon_eliminated.txt" => include_str!("../golden/sine_gordon_eliminated.txt"),
        "exotic_component.txt" => include_str!("../golden/exotic_component.txt"),
        "exotic_eliminated.txt" => include_str!("../golden/exotic_eliminated.txt"),
        "covariant_minus_scalar_superfield.txt" => {
            include_str!("../golden/covariant_minus_scalar_superfield.txt")
        }
        "covariant_plus_scalar_superfield.txt" => {
            include_str!("../golden/covariant_plus_scalar_superfield.txt")
        }
        _ => return None,
    })
}

/// Every golden file name paired with its freshly computed expression; the
/// comparison checks and the regeneration test both derive from this table.
pub fn golden_manifest() -> Vec<(&'static str, GradedExpr)> {
    let mut out: Vec<(&'static str, GradedExpr)> = Vec::new();
    let ls = SigmaModel::new(1, Metric::Identity, Potential::None).unwrap();
    out.push(("linear_sigma_component.txt", ls.component_lagrangian().unwrap()));
    out.push(("linear_sigma_eliminated.txt", ls.eliminate().unwrap().1));
    let nl = SigmaModel::new(2, Metric::FieldDependent, Potential::None).unwrap();
    out.push(("nonlinear_sigma_component.txt", nl.component_lagrangian().unwrap()));
    let sg = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).unwrap();
    out.push(("sine_gordon_component.txt", sg.component_lagrangian().unwrap()));
    out.push(("sine_gordon_eliminated.txt", sg.eliminate().unwrap().1));
    let ex = ExoticModel::new(false, vec![]).unwrap();
    out.push(("exotic_component.txt", ex.component_lagrangian().unwrap()));
    out.push(("exotic_eliminated.txt", ex.eliminate().unwrap().1));
    let m2 = M2::new(1);
    let fld = ScalarField::new(None, false).expand(&m2);
    out.push(("covariant_minus_scalar_superfield.txt", m2.d_m().apply(&fld)));
    out.push(("covariant_plus_scalar_superfield.txt", m2.d_p().apply(&fld)));
    out
}

fn golden_check(id: &str, anchor: &str, name: &str, got: &GradedExpr) -> Check {
    let Some(text) = golden_text(name) else {
        return Check::fail(id, anchor, format!("no embedded golden file named '{name}'"));
    };
    match render::parse(text) {
        Ok(want) if &want == got => {
            Check::pass_with(id, anchor, format!("matches {name} ({} terms)", got.terms.len()))
        }
        Ok(_) => Check::fail(
            id,
            anchor,
            format!("computed value differs from {name}; computed:\n{}", render::serialize(got)),
        ),
        Err(e) => Check::fail(id, anchor, format!("golden file {name} unreadable: {e}")),
    }
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

/// One RNG per (seed, check, trial): a SplitMix-style finalizer decorrelates
/// neighbouring trial indices, and the scheduling order cannot matter.
fn trial_rng(seed: u64, salt: u64, trial: u64) -> ChaCha8Rng {
    let mut x = seed ^ salt.rotate_left(17) ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    ChaCha8Rng::seed_from_u64(x)
}

const SALT_PRODUCT: u64 = 1;
const SALT_UNIT: u64 = 2;
const SALT_ASSOC: u64 = 3;
const SALT_KOSZUL: u64 = 4;
const SALT_JACOBI: u64 = 5;
const SALT_BER_MUL: u64 = 6;
const SALT_BER_LIOUVILLE: u64 = 7;
const SALT_CC_TRANSPORT: u64 = 8;
const SALT_CC_NO_Z: u64 = 9;
const SALT_CC_INTEGRAL: u64 = 10;

/// Run `n` indexed trials in parallel; `f` returns a failure description or
/// None. Produces a pass (with the trial count as witness) or a fail naming
/// the first failing trial.
fn trials_check(
    id: &str,
    anchor: &str,
    n: usize,
    f: impl Fn(u64) -> Option<String> + Send + Sync,
) -> Check {
    let mut failures: Vec<(u64, String)> = (0..n as u64)
        .into_par_iter()
        .filter_map(|i| f(i).map(|msg| (i, msg)))
        .collect();
    failures.sort_by_key(|(i, _)| *i);
    match failures.first() {
        None => Check::pass_with(id, anchor, format!("{n} randomized trials")),
        Some((i, msg)) => Check::fail(
            id,
            anchor,
            format!("{} of {n} trials failed; trial {i}: {msg}", failures.len()),
        ),
    }
}

fn eq_check(id: &str, anchor: &str, got: &GradedExpr, want: &GradedExpr) -> Check {
    Check::expect(id, anchor, got == want, || {
        format!(
            "computed:\n{}\nexpected:\n{}",
            render::serialize(got),
            render::serialize(want)
        )
    })
}

fn zero_check(id: &str, anchor: &str, e: &GradedExpr) -> Check {
    Check::expect(id, anchor, e.is_zero(), || {
        format!("nonzero residual:\n{}", render::serialize(e))
    })
}

fn se(ctx: &Ctx, s: &Sym) -> GradedExpr {
    GradedExpr::sym(ctx, s.clone())
}

fn ge(ctx: &Ctx, g: &Gen) -> GradedExpr {
    GradedExpr::gen(ctx, g.clone())
}

fn ds(s: &Sym, dm: u16, dp: u16) -> Sym {
    let mut out = s.clone();
    for _ in 0..dm {
        out = out.jet_raised(Dir::M);
    }
    for _ in 0..dp {
        out = out.jet_raised(Dir::P);
    }
    out
}

fn dg(g: &Gen, dm: u16, dp: u16) -> Gen {
    let mut out = g.clone();
    for _ in 0..dm {
        out = out.jet_raised(Dir::M);
    }
    for _ in 0..dp {
        out = out.jet_raised(Dir::P);
    }
    out
}

fn sin_half(x: &Sym) -> CoeffExpr {
    CoeffExpr::app(App::new(
        Func::sin(),
        vec![CoeffExpr::sym(x.clone()).scale(&rat(1, 2))],
    ))
}

fn cos_half(x: &Sym) -> CoeffExpr {
    CoeffExpr::app(App::new(
        Func::cos(),
        vec![CoeffExpr::sym(x.clone()).scale(&rat(1, 2))],
    ))
}

fn sin_full(x: &Sym) -> CoeffExpr {
    CoeffExpr::app(App::new(Func::sin(), vec![CoeffExpr::sym(x.clone())]))
}

/// Kinetic block ¼∂₋X^a∂₊X^b + ½ψ₊^a∂₊ψ₊^b + ½ψ₋^a∂₋ψ₋^b − F^aF^b.
fn kinetic_block(ctx: &Ctx, fa: &ScalarField, fb: &ScalarField) -> GradedExpr {
    let t1 = (&se(ctx, &ds(&fa.x, 1, 0)) * &se(ctx, &ds(&fb.x, 0, 1))).scale(&rat(1, 4));
    let t2 = (&ge(ctx, &fa.psi_p) * &ge(ctx, &dg(&fb.psi_p, 0, 1))).scale(&rat(1, 2));
    let t3 = (&ge(ctx, &fa.psi_m) * &ge(ctx, &dg(&fb.psi_m, 1, 0))).scale(&rat(1, 2));
    let t4 = &ge(ctx, &fa.f) * &ge(ctx, &fb.f);
    &(&t1 + &t2) + &(&t3 - &t4)
}

// ---------------------------------------------------------------------------
// Random generators for the property suites
// ---------------------------------------------------------------------------

/// A plain generator expression of the requested degree: even scalars for
/// (0,0), the truncated/relation generators and jets otherwise.
fn pool_element(m2: &M2, fld: &ScalarField, rng: &mut ChaCha8Rng, d: Degree) -> GradedExpr {
    let ctx = &m2.ctx;
    let jet = |g: &Gen, rng: &mut ChaCha8Rng| {
        dg(g, rng.gen_range(0..2), rng.gen_range(0..2))
    };
    match (d.parts(), rng.gen_range(0..3)) {
        ((0, 0), 0) => GradedExpr::int(ctx, rng.gen_range(1..=3)),
        ((0, 0), 1) => se(ctx, &ds(&fld.x, rng.gen_range(0..2), rng.gen_range(0..2))),
        ((0, 0), _) => se(ctx, &Sym::param("c")),
        ((1, 1), 0) => m2.gen(&m2.z),
        ((1, 1), 1) => ge(ctx, &jet(&fld.f, rng)),
        ((1, 1), _) => m2.alpha_expr(),
        ((0, 1), 0) => m2.gen(&m2.th_m),
        ((0, 1), _) => ge(ctx, &jet(&fld.psi_p, rng)),
        ((1, 0), 0) => m2.gen(&m2.th_p),
        ((1, 0), 1) => ge(ctx, &jet(&fld.psi_m, rng)),
        ((1, 0), _) => ge(ctx, &jet(fld.chi_p.as_ref().unwrap(), rng)),
        _ => unreachable!("degrees are mod 2"),
    }
}

/// A random monomial together with its degree.
fn random_monomial(
    m2: &M2,
    fld: &ScalarField,
    rng: &mut ChaCha8Rng,
    factors: usize,
) -> (GradedExpr, Degree) {
    let mut e = GradedExpr::one(&m2.ctx);
    let mut d = Degree::ZERO;
    for _ in 0..factors {
        let fd = Degree::all()[rng.gen_range(0..4)];
        e = &e * &pool_element(m2, fld, rng, fd);
        d = d.plus(fd);
    }
    (e.scale(&rat(rng.gen_range(1..=4), rng.gen_range(1..=3))), d)
}

/// A random inhomogeneous expression: a short sum of random monomials with
/// random signs, occasionally dressed by an opaque function of the bottoms.
fn random_expr(m2: &M2, fld: &ScalarField, rng: &mut ChaCha8Rng) -> GradedExpr {
    let mut e = GradedExpr::zero(&m2.ctx);
    for _ in 0..rng.gen_range(1..=3) {
        let factors = rng.gen_range(1..=3);
        let (mut t, _) = random_monomial(m2, fld, rng, factors);
        if rng.gen_bool(0.25) {
            t = t.scale_coeff(&CoeffExpr::app(App::new(
                Func::opaque("h"),
                vec![CoeffExpr::sym(fld.x.clone())],
            )));
        }
        if rng.gen_bool(0.5) {
            t = t.scale(&rint(-1));
        }
        e = &e + &t;
    }
    e
}

/// A random nonzero homogeneous expression of the requested degree.
fn random_homogeneous(
    m2: &M2,
    fld: &ScalarField,
    rng: &mut ChaCha8Rng,
    want: Degree,
) -> GradedExpr {
    for _ in 0..4 {
        let factors = rng.gen_range(0..=2);
        let (e, d) = random_monomial(m2, fld, rng, factors);
        let fix = pool_element(m2, fld, rng, want.plus(d));
        let out = &e * &fix;
        if !out.is_zero() {
            return out;
        }
    }
    pool_element(m2, fld, rng, want)
}

/// A monomial of degree `d` that is guaranteed nilpotent: it always carries
/// at least one coordinate, odd jet, or truncated-z factor.
fn nilpotent_of(m2: &M2, fld: &ScalarField, rng: &mut ChaCha8Rng, d: Degree) -> GradedExpr {
    let ctx = &m2.ctx;
    let (seed, seed_deg) = match rng.gen_range(0..3) {
        0 => (m2.gen(&m2.th_m), Degree::SECOND),
        1 => (m2.gen(&m2.th_p), Degree::FIRST),
        _ => (ge(ctx, &fld.psi_p), Degree::SECOND),
    };
    let rest = pool_element(m2, fld, rng, d.plus(seed_deg));
    let out = &seed * &rest;
    if out.is_zero() {
        // The dressing collided with the seed (θ·θ); fall back to a bare
        // guaranteed-nilpotent generator of the right degree.
        match d.parts() {
            (0, 0) => &m2.gen(&m2.th_m) * &ge(ctx, &fld.psi_p),
            (1, 1) => &m2.gen(&m2.th_m) * &m2.gen(&m2.th_p),
            (0, 1) => m2.gen(&m2.th_m),
            _ => m2.gen(&m2.th_p),
        }
    } else {
        out
    }
}

// ---------------------------------------------------------------------------
// algebra suite
// ---------------------------------------------------------------------------

/// Canonical-product oracle, unit laws, associativity, Koszul symmetry,
/// graded Jacobi identity, and the square relations.
pub fn algebra_suite(cfg: &Config) -> SuiteReport {
    let started = Instant::now();
    let seed = cfg.kernel.seed;
    let m2 = M2::new(cfg.kernel.z_order);
    let fld = ScalarField::new(None, false);
    let mut checks = Vec::new();

    let n = cfg.kernel.trials.max(1);
    checks.push(trials_check(
        "product-oracle",
        "canonical products agree with a per-swap sign-walking oracle",
        n,
        |i| {
            let mut rng = trial_rng(seed, SALT_PRODUCT, i);
            let a = random_expr(&m2, &fld, &mut rng);
            let b = random_expr(&m2, &fld, &mut rng);
            check_product(&a, &b).err()
        },
    ));

    let n5 = (cfg.kernel.trials / 5).max(1);
    checks.push(trials_check(
        "unit-laws",
        "1·a = a·1 = a and 0·a = 0 for random expressions",
        n5,
        |i| {
            let mut rng = trial_rng(seed, SALT_UNIT, i);
            let a = random_expr(&m2, &fld, &mut rng);
            check_unit(&a).err().or_else(|| {
                let z = &GradedExpr::zero(&m2.ctx) * &a;
                (!z.is_zero()).then(|| "0·a is not zero".to_string())
            })
        },
    ));

    checks.push(trials_check(
        "associativity",
        "(a·b)·c = a·(b·c) for random expressions",
        n5,
        |i| {
            let mut rng = trial_rng(seed, SALT_ASSOC, i);
            let a = random_expr(&m2, &fld, &mut rng);
            let b = random_expr(&m2, &fld, &mut rng);
            let c = random_expr(&m2, &fld, &mut rng);
            let lhs = &(&a * &b) * &c;
            let rhs = &a * &(&b * &c);
            (lhs != rhs).then(|| {
                format!(
                    "a:\n{}b:\n{}c:\n{}",
                    render::serialize(&a),
                    render::serialize(&b),
                    render::serialize(&c)
                )
            })
        },
    ));

    checks.push(trials_check(
        "koszul-symmetry",
        "a·b = (−1)^⟨deg a, deg b⟩ b·a for homogeneous monomials",
        n5,
        |i| {
            let mut rng = trial_rng(seed, SALT_KOSZUL, i);
            let fa = rng.gen_range(1..=3);
            let (a, da) = random_monomial(&m2, &fld, &mut rng, fa);
            let fb = rng.gen_range(1..=3);
            let (b, db) = random_monomial(&m2, &fld, &mut rng, fb);
            let lhs = &a * &b;
            let rhs = (&b * &a).scale(&rint(koszul_sign(da, db) as i64));
            (lhs != rhs).then(|| {
                format!(
                    "degrees {:?} and {:?}; a:\n{}b:\n{}",
                    da.parts(),
                    db.parts(),
                    render::serialize(&a),
                    render::serialize(&b)
                )
            })
        },
    ));

    checks.push(trials_check(
        "jacobi-identity",
        "graded Jacobi identity for commutators of random homogeneous derivations over the even and θ directions",
        n5,
        |i| {
            let mut rng = trial_rng(seed, SALT_JACOBI, i);
            jacobi_trial(&m2, &fld, &mut rng)
        },
    ));

    // Square relations: the truncated coordinate and the unit-square constant.
    let zpow = m2.gen(&m2.z).pow(cfg.kernel.z_order + 1);
    let alpha_sq = &m2.alpha_expr() * &m2.alpha_expr();
    checks.push(zero_check(
        "relation-z-truncation",
        "the degree-(1,1) coordinate vanishes one power past the truncation order",
        &zpow,
    ));
    checks.push(eq_check(
        "relation-alpha-square",
        "the degree-(1,1) constant squares to 1",
        &alpha_sq,
        &GradedExpr::one(&m2.ctx),
    ));

    SuiteReport::new("algebra", checks, started.elapsed().as_millis())
}

/// One graded-Jacobi trial: [A,[B,C]] = [[A,B],C] + (−1)^⟨A,B⟩ [B,[A,C]],
/// compared coefficient-by-coefficient on every coordinate.
///
/// The derivations draw their targets from the even directions and the two
/// θ's only. The truncated z admits no coordinate derivation: ∂/∂z would
/// have to send z^(k+1) = 0 to (k+1)·z^k ≠ 0, so it violates the Leibniz
/// rule at the truncation boundary and is excluded from the pool.
fn jacobi_trial(m2: &M2, fld: &ScalarField, rng: &mut ChaCha8Rng) -> Option<String> {
    let ctx = &m2.ctx;
    let coords: Vec<_> = m2
        .coords()
        .into_iter()
        .filter(|c| !matches!(&c.target, Target::Gen(g) if *g == m2.z))
        .collect();
    let random_derivation = |name: &str, rng: &mut ChaCha8Rng| {
        let degree = Degree::all()[rng.gen_range(0..4)];
        let mut terms = Vec::new();
        for c in &coords {
            if rng.gen_bool(0.7) {
                let coef = random_homogeneous(m2, fld, rng, degree.plus(c.degree()));
                terms.push((coef, c.target.clone()));
            }
        }
        Derivation::new(name, degree, terms)
    };
    let a = random_derivation("A", rng);
    let b = random_derivation("B", rng);
    let c = random_derivation("C", rng);

    let bc = graded_commutator(&b, &c, &coords, ctx);
    let ab = graded_commutator(&a, &b, &coords, ctx);
    let ac = graded_commutator(&a, &c, &coords, ctx);
    let lhs = graded_commutator(&a, &bc, &coords, ctx);
    let rhs1 = graded_commutator(&ab, &c, &coords, ctx);
    let rhs2 = graded_commutator(&b, &ac, &coords, ctx);
    let sign = rint(koszul_sign(a.degree, b.degree) as i64);

    let coef_on = |d: &Derivation, t: &Target| {
        d.terms
            .iter()
            .filter(|(_, tt)| tt == t)
            .fold(GradedExpr::zero(ctx), |acc, (c, _)| &acc + c)
    };
    for spec in &coords {
        let l = coef_on(&lhs, &spec.target);
        let r = &coef_on(&rhs1, &spec.target) + &coef_on(&rhs2, &spec.target).scale(&sign);
        if l != r {
            return Some(format!(
                "mismatch on ∂_{}: degrees A{:?} B{:?} C{:?}",
                spec.name,
                a.degree.parts(),
                b.degree.parts(),
                c.degree.parts()
            ));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// superspace suite
// ---------------------------------------------------------------------------

/// Bracket table, covariant-derivative expansions (with the recorded
/// display discrepancy), superfield constraint slots, and the component
/// supersymmetry table.
pub fn superspace_suite(cfg: &Config) -> SuiteReport {
    let started = Instant::now();
    let m2 = M2::new(cfg.kernel.z_order);
    let mut checks = Vec::new();

    // All 49 brackets of (P∓, Z, Q∓, D∓) against the structure relations.
    let audit = bracket_audit(&m2);
    let bad: Vec<String> = audit
        .iter()
        .filter(|b| !b.ok)
        .map(|b| format!("[{}, {}] ≠ {}", b.left, b.right, b.expected))
        .collect();
    checks.push(if bad.is_empty() {
        Check::pass_with(
            "bracket-table",
            "the 49 graded brackets of P∓, Z, Q∓, D∓ match the structure relations",
            format!("{} brackets audited extensionally", audit.len()),
        )
    } else {
        Check::fail(
            "bracket-table",
            "the 49 graded brackets of P∓, Z, Q∓, D∓ match the structure relations",
            bad.join("\n"),
        )
    });

    // Covariant derivatives of the general scalar superfield, compared to
    // the documented component expansions through O(z). The expansions are
    // written for the full field at truncation order 1.
    let m1 = M2::new(1);
    let c1 = &m1.ctx;
    let fld = ScalarField::new(None, false);
    let e = fld.expand(&m1);
    let computed_m = m1.d_m().apply(&e);
    let computed_p = m1.d_p().apply(&e);

    checks.push(golden_check(
        "covariant-minus-golden",
        "D₋ of the scalar superfield matches the recorded expansion",
        "covariant_minus_scalar_superfield.txt",
        &computed_m,
    ));
    checks.push(golden_check(
        "covariant-plus-golden",
        "D₊ of the scalar superfield matches the recorded expansion",
        "covariant_plus_scalar_superfield.txt",
        &computed_p,
    ));

    let tm = m1.gen(&m1.th_m);
    let tp = m1.gen(&m1.th_p);
    let tmtp = &tm * &tp;
    // Printed form: ψ₊ + θ₊F − ½θ₋∂₋X − ½θ₋θ₊∂₋ψ₋ + ½θ₊G + ½θ₋θ₊χ₊.
    let display_m = &(&(&ge(c1, &fld.psi_p) + &(&tp * &ge(c1, &fld.f)))
        - &(&tm * &se(c1, &ds(&fld.x, 1, 0))).scale(&rat(1, 2)))
        + &(&(&tmtp * &ge(c1, &dg(&fld.psi_m, 1, 0))).scale(&rat(-1, 2))
            + &(&(&tp * &ge(c1, fld.g.as_ref().unwrap())).scale(&rat(1, 2))
                + &(&tmtp * &ge(c1, fld.chi_p.as_ref().unwrap())).scale(&rat(1, 2))));
    // Printed form: ψ₋ + θ₋F − ½θ₊∂₊X − ½θ₋θ₊∂₊ψ₊ − ½θ₊G − ½θ₋θ₊χ₋.
    let display_p = &(&(&ge(c1, &fld.psi_m) + &(&tm * &ge(c1, &fld.f)))
        - &(&tp * &se(c1, &ds(&fld.x, 0, 1))).scale(&rat(1, 2)))
        + &(&(&tmtp * &ge(c1, &dg(&fld.psi_p, 0, 1))).scale(&rat(-1, 2))
            + &(&(&tp * &ge(c1, fld.g.as_ref().unwrap())).scale(&rat(-1, 2))
                - &(&tmtp * &ge(c1, fld.chi_m.as_ref().unwrap())).scale(&rat(1, 2))));

    for (id, anchor, computed, display) in [
        (
            "covariant-minus-display",
            "D₋Φ component expansion agrees with the documented display through O(z)",
            &computed_m,
            &display_m,
        ),
        (
            "covariant-plus-display",
            "D₊Φ component expansion agrees with the documented display through O(z)",
            &computed_p,
            &display_p,
        ),
    ] {
        let z0 = formal_z_integral(computed);
        if z0 == *display {
            checks.push(Check::pass(id, anchor));
        } else {
            let diff = &z0 - display;
            checks.push(Check::finding(
                id,
                anchor,
                format!(
                    "computed and documented expansions differ; computed: {}\ndocumented: {}\ncomputed − documented: {}",
                    render::to_latex(&z0),
                    render::to_latex(display),
                    render::to_latex(&diff)
                ),
            ));
        }
    }

    // The z-constrained superfield keeps exactly the five documented slots.
    let zc = ScalarField::new(None, true).expand(&m1);
    let absent = [(1, 0, 0), (1, 1, 0), (1, 0, 1)];
    let present = [(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)];
    let ok = absent.iter().all(|&s| zc.slot(s).is_zero())
        && present.iter().all(|&s| !zc.slot(s).is_zero());
    checks.push(Check::expect(
        "superfield-constraint",
        "the z-constrained superfield drops the z, zθ₋, zθ₊ slots and keeps the top slot",
        ok,
        || format!("slots: {}", render::serialize(&zc)),
    ));

    // Component supersymmetry table of the z-constrained field.
    let (em, ep) = susy_params();
    let d = m1.susy(&em, &ep).apply(&zc);
    let zfld = ScalarField::new(None, true);
    let eme = ge(c1, &em);
    let epe = ge(c1, &ep);
    let table = [
        (
            (0, 0, 0),
            "δX = ε₋ψ₊ + ε₊ψ₋",
            &(&eme * &ge(c1, &zfld.psi_p)) + &(&epe * &ge(c1, &zfld.psi_m)),
        ),
        (
            (0, 1, 0),
            "δψ₊ = −½ε₋∂₋X + ε₊F",
            &(&eme * &se(c1, &ds(&zfld.x, 1, 0))).scale(&rat(-1, 2)) + &(&epe * &ge(c1, &zfld.f)),
        ),
        (
            (0, 0, 1),
            "δψ₋ = −½ε₊∂₊X + ε₋F",
            &(&epe * &se(c1, &ds(&zfld.x, 0, 1))).scale(&rat(-1, 2)) + &(&eme * &ge(c1, &zfld.f)),
        ),
        (
            (0, 1, 1),
            "δF = −½(ε₋∂₋ψ₋ + ε₊∂₊ψ₊)",
            &(&eme * &ge(c1, &dg(&zfld.psi_m, 1, 0))).scale(&rat(-1, 2))
                - &(&epe * &ge(c1, &dg(&zfld.psi_p, 0, 1))).scale(&rat(1, 2)),
        ),
    ];
    let mut bad = Vec::new();
    for (slot, label, want) in &table {
        let got = d.slot(*slot);
        if &got != want {
            bad.push(format!(
                "{label}: computed {}",
                render::to_latex(&got)
            ));
        }
    }
    checks.push(Check::expect(
        "susy-component-table",
        "the component supersymmetry variations match the documented table",
        bad.is_empty(),
        || bad.join("\n"),
    ));

    SuiteReport::new("superspace", checks, started.elapsed().as_millis())
}

// ---------------------------------------------------------------------------
// berezin suite
// ---------------------------------------------------------------------------

/// Berezinians of the symmetry Jacobians, multiplicativity, the linearized
/// (Liouville) identity, and the supertrace sign-convention probe.
pub fn berezin_suite(cfg: &Config) -> SuiteReport {
    let started = Instant::now();
    let seed = cfg.kernel.seed;
    let m2 = M2::new(cfg.kernel.z_order);
    let ctx = &m2.ctx;
    let fld = ScalarField::new(None, false);
    let mut checks = Vec::new();

    // Supertranslation Jacobian.
    let st = supertranslation(&m2, &STParams::new(""));
    let j_s = st.jacobian(ctx, &m2.coords());
    match z2_berezinian(&j_s) {
        Ok(ber) => checks.push(eq_check(
            "ber-supertranslation",
            "the supertranslation Jacobian has Berezinian 1",
            &ber,
            &GradedExpr::one(ctx),
        )),
        Err(e) => checks.push(Check::fail(
            "ber-supertranslation",
            "the supertranslation Jacobian has Berezinian 1",
            e,
        )),
    }

    // Boost Jacobian.
    let j_l = boost(&m2, &Sym::param_invertible("b")).jacobian(ctx, &m2.coords());
    match z2_berezinian(&j_l) {
        Ok(ber) => checks.push(eq_check(
            "ber-boost",
            "the boost Jacobian has Berezinian 1: the coordinate volume is weightless",
            &ber,
            &GradedExpr::one(ctx),
        )),
        Err(e) => checks.push(Check::fail(
            "ber-boost",
            "the boost Jacobian has Berezinian 1: the coordinate volume is weightless",
            e,
        )),
    }

    let degs = [
        Degree::ZERO,
        Degree::ZERO,
        Degree::BOTH,
        Degree::SECOND,
        Degree::FIRST,
    ];

    let n10 = (cfg.kernel.trials / 10).max(1);
    checks.push(trials_check(
        "ber-multiplicativity",
        "Ber(MN) = Ber(M)·Ber(N) for random invertible degree-zero 5×5 matrices",
        n10,
        |i| {
            let mut rng = trial_rng(seed, SALT_BER_MUL, i);
            let a = random_graded_matrix(&m2, &fld, &mut rng, &degs);
            let b = random_graded_matrix(&m2, &fld, &mut rng, &degs);
            let lhs = match z2_berezinian(&a.mul(&b)) {
                Ok(v) => v,
                Err(e) => return Some(format!("Ber(MN) failed: {e}")),
            };
            let ba = match z2_berezinian(&a) {
                Ok(v) => v,
                Err(e) => return Some(format!("Ber(M) failed: {e}")),
            };
            let bb = match z2_berezinian(&b) {
                Ok(v) => v,
                Err(e) => return Some(format!("Ber(N) failed: {e}")),
            };
            let rhs = &ba * &bb;
            (lhs != rhs).then(|| {
                format!(
                    "Ber(MN):\n{}Ber(M)Ber(N):\n{}",
                    render::serialize(&lhs),
                    render::serialize(&rhs)
                )
            })
        },
    ));

    checks.push(trials_check(
        "ber-liouville",
        "Ber(1 + M) = 1 + str(M) for square-zero perturbations",
        n10,
        |i| {
            let mut rng = trial_rng(seed, SALT_BER_LIOUVILLE, i);
            let m = random_square_zero_matrix(&m2, &fld, &mut rng, &degs);
            let one = GradedMatrix::identity(ctx, &degs);
            let lhs = match z2_berezinian(&one.add(&m)) {
                Ok(v) => v,
                Err(e) => return Some(format!("Ber(1+M) failed: {e}")),
            };
            let rhs = &GradedExpr::one(ctx) + &z2_trace(&m);
            (lhs != rhs).then(|| {
                format!(
                    "Ber(1+M):\n{}1+str(M):\n{}",
                    render::serialize(&lhs),
                    render::serialize(&rhs)
                )
            })
        },
    ));

    // Supertrace sign-convention probe: a single nilpotent entry on an odd
    // diagonal slot decides the sign through the linearized identity.
    let probe = {
        let mut entries = vec![vec![GradedExpr::zero(ctx); 5]; 5];
        entries[3][3] = &m2.gen(&m2.th_m) * &ge(ctx, &fld.psi_p);
        GradedMatrix::new(ctx, degs.to_vec(), degs.to_vec(), entries)
    };
    let one = GradedMatrix::identity(ctx, &degs);
    let ber = z2_berezinian(&one.add(&probe)).expect("probe Berezinian");
    let with_minus = &GradedExpr::one(ctx) + &z2_trace(&probe);
    let with_plus = &GradedExpr::one(ctx) + &z2_trace_flipped(&probe);
    checks.push(Check::finding(
        "trace-convention",
        "the supertrace weights rows of odd total parity with −1; the linearized identity probes the convention",
        format!(
            "for M with the single odd-block entry θ₋ψ₊: Ber(1+M) = {}; 1 + str₋(M) = {} (matches: {}); 1 + str₊(M) = {} (matches: {}). The identity Ber(1+M) = 1 + str(M) selects the −1 weighting of odd rows; an even/odd-symmetric weighting is documented as an open convention elsewhere and fails this probe.",
            render::to_latex(&ber),
            render::to_latex(&with_minus),
            ber == with_minus,
            render::to_latex(&with_plus),
            ber == with_plus
        ),
    ));

    SuiteReport::new("berezin", checks, started.elapsed().as_millis())
}

/// A random degree-zero 5×5 graded matrix with invertible diagonal scalars
/// and nilpotent off-diagonal entries, so both parity blocks invert.
fn random_graded_matrix(
    m2: &M2,
    fld: &ScalarField,
    rng: &mut ChaCha8Rng,
    degs: &[Degree],
) -> GradedMatrix {
    let ctx = &m2.ctx;
    let n = degs.len();
    let mut entries = vec![vec![GradedExpr::zero(ctx); n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = if i == j {
                let head = se(ctx, &Sym::param_invertible(&format!("m{i}")));
                if rng.gen_bool(0.5) {
                    &head + &nilpotent_of(m2, fld, rng, Degree::ZERO)
                } else {
                    head
                }
            } else if rng.gen_bool(0.5) {
                nilpotent_of(m2, fld, rng, degs[i].plus(degs[j]))
                    .scale(&rat(rng.gen_range(1..=2), 1))
            } else {
                GradedExpr::zero(ctx)
            };
        }
    }
    GradedMatrix::new(ctx, degs.to_vec(), degs.to_vec(), entries)
}

/// A degree-zero matrix all of whose entries share one odd seed factor, so
/// the matrix squares to zero exactly.
fn random_square_zero_matrix(
    m2: &M2,
    fld: &ScalarField,
    rng: &mut ChaCha8Rng,
    degs: &[Degree],
) -> GradedMatrix {
    let ctx = &m2.ctx;
    let (seed, seed_deg) = if rng.gen_bool(0.5) {
        (m2.gen(&m2.th_m), Degree::SECOND)
    } else {
        (m2.gen(&m2.th_p), Degree::FIRST)
    };
    let n = degs.len();
    let mut entries = vec![vec![GradedExpr::zero(ctx); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if rng.gen_bool(0.6) {
                let rest = pool_element(m2, fld, rng, degs[i].plus(degs[j]).plus(seed_deg));
                *cell = &seed * &rest;
            }
        }
    }
    GradedMatrix::new(ctx, degs.to_vec(), degs.to_vec(), entries)
}

// ---------------------------------------------------------------------------
// models suite
// ---------------------------------------------------------------------------

/// Actions, equations of motion, eliminations, supersymmetry variations,
/// quasi-invariance witnesses, and conserved currents for the configured
/// models, with golden-file comparisons for the large densities.
pub fn models_suite(cfg: &Config) -> SuiteReport {
    let started = Instant::now();
    let mut checks = Vec::new();

    for (name, mc) in &cfg.models {
        match name.as_str() {
            "linear-sigma" => match mc.build_sigma() {
                Ok(sm) => linear_sigma_checks(&sm, mc, &mut checks),
                Err(e) => checks.push(Check::fail(
                    "ls-config",
                    "the linear sigma model builds from its declaration",
                    e,
                )),
            },
            "nonlinear-sigma" => match mc.build_sigma() {
                Ok(sm) => nonlinear_sigma_checks(&sm, mc, &mut checks),
                Err(e) => checks.push(Check::fail(
                    "nl-config",
                    "the nonlinear sigma model builds from its declaration",
                    e,
                )),
            },
            "sine-gordon" => match mc.build_sigma() {
                Ok(sm) => sine_gordon_checks(&sm, mc, &mut checks),
                Err(e) => checks.push(Check::fail(
                    "sg-config",
                    "the sine-Gordon model builds from its declaration",
                    e,
                )),
            },
            "exotic" => match mc.build_exotic() {
                Ok(ex) => exotic_checks(&ex, mc, &mut checks),
                Err(e) => checks.push(Check::fail(
                    "ex-config",
                    "the exotic model builds from its declaration",
                    e,
                )),
            },
            other => {
                // Unrecognized entries still get the generic treatment:
                // build, expand, compare against any declared goldens.
                let id = format!("zz-{other}-generic");
                let density = match mc.kind.as_str() {
                    "sigma" => mc.build_sigma().and_then(|sm| sm.component_lagrangian()),
                    "exotic" => mc.build_exotic().and_then(|ex| ex.component_lagrangian()),
                    bad => Err(format!("unknown model kind '{bad}'")),
                };
                match density {
                    Ok(l) => {
                        if let Some(g) = &mc.golden_component {
                            checks.push(golden_check(
                                &id,
                                "the declared model's component density matches its golden file",
                                g,
                                &l,
                            ));
                        }
                    }
                    Err(e) => checks.push(Check::fail(
                        &id,
                        "the declared model builds and its component density computes",
                        e,
                    )),
                }
            }
        }
    }

    // Configuration-independent model checks.
    constant_metric_checks(&mut checks);
    generic_potential_checks(&mut checks);

    SuiteReport::new("models", checks, started.elapsed().as_millis())
}

fn linear_sigma_checks(sm: &SigmaModel, mc: &ModelConfig, checks: &mut Vec<Check>) {
    let ctx = &sm.m2.ctx;
    let f = &sm.fields[0];
    let l = match sm.component_lagrangian() {
        Ok(l) => l,
        Err(e) => {
            checks.push(Check::fail(
                "ls-action",
                "the free component density computes from the superspace density",
                e,
            ));
            return;
        }
    };

    checks.push(eq_check(
        "ls-action",
        "free density: ¼∂₋X∂₊X + ½ψ₊∂₊ψ₊ + ½ψ₋∂₋ψ₋ − F²",
        &l,
        &kinetic_block(ctx, f, f),
    ));
    if let Some(g) = &mc.golden_component {
        checks.push(golden_check(
            "ls-action-golden",
            "free component density matches its golden file",
            g,
            &l,
        ));
    }

    // Equations of motion, solved to leading coefficient +1.
    let fields = [sm.dynamical_fields(), sm.auxiliary_fields()].concat();
    match EomSystem::derive(&l, &fields) {
        Ok(sys) => {
            let want: [(&str, GradedExpr); 4] = [
                ("X", se(ctx, &ds(&f.x, 1, 1))),
                ("psi_p", ge(ctx, &dg(&f.psi_p, 0, 1))),
                ("psi_m", ge(ctx, &dg(&f.psi_m, 1, 0))),
                ("F", ge(ctx, &f.f)),
            ];
            let bad: Vec<String> = want
                .iter()
                .filter(|(label, w)| sys.eom(label).map(|e| &e.display != w).unwrap_or(true))
                .map(|(label, _)| label.to_string())
                .collect();
            checks.push(Check::expect(
                "ls-equations",
                "free equations: ∂₋∂₊X = 0, ∂₊ψ₊ = 0, ∂₋ψ₋ = 0, F = 0",
                bad.is_empty(),
                || format!("mismatched equations for: {}", bad.join(", ")),
            ));
        }
        Err(e) => checks.push(Check::fail(
            "ls-equations",
            "free equations derive from the density",
            e,
        )),
    }

    // Auxiliary elimination: F ↦ 0.
    match sm.eliminate() {
        Ok((m, le)) => {
            checks.push(Check::expect(
                "ls-elimination",
                "the free auxiliary equation solves to F = 0 and drops the −F² term",
                m.image_of_gen(ctx, &f.f).is_zero() && le == &l + &(&ge(ctx, &f.f) * &ge(ctx, &f.f)),
                || "unexpected elimination result".into(),
            ));
            if let Some(g) = &mc.golden_eliminated {
                checks.push(golden_check(
                    "ls-eliminated-golden",
                    "free eliminated density matches its golden file",
                    g,
                    &le,
                ));
            }
        }
        Err(e) => checks.push(Check::fail(
            "ls-elimination",
            "the free auxiliary equation solves linearly",
            e,
        )),
    }

    // Superspace stationarity: agrees with D₋D₊Φ + D₊D₋Φ, and slot by slot
    // with the component equations (sign-flipped).
    let el = sm.superspace_el().remove(0);
    let direct = &sm.m2.d_m().apply(&sm.d_p_phi(1)) + &sm.m2.d_p().apply(&sm.d_m_phi(1));
    checks.push(eq_check(
        "ls-superspace-equation",
        "superspace stationarity equals D₋D₊Φ + D₊D₋Φ",
        &el,
        &direct,
    ));
    checks.push(superspace_slot_check(
        "ls-superspace-slots",
        "superspace stationarity reproduces the component equations slot by slot",
        &el,
        &l,
        f,
    ));

    // Off-shell quasi-invariance with the boundary witness.
    match sm.free_witness() {
        Ok((v_m, v_p)) => {
            let dl = sm.susy_variation().apply(&l);
            checks.push(zero_check(
                "ls-quasi-invariance",
                "the free density varies into the exact divergence of the boundary witness, off shell",
                &quasi_residual(&dl, &v_m, &v_p),
            ));
        }
        Err(e) => checks.push(Check::fail(
            "ls-quasi-invariance",
            "the free boundary witness exists",
            e,
        )),
    }
}

/// Slot-by-slot comparison of a superspace stationarity equation against the
/// component equations of the un-eliminated density.
fn superspace_slot_check(
    id: &str,
    anchor: &str,
    el: &GradedExpr,
    l: &GradedExpr,
    f: &ScalarField,
) -> Check {
    let against = [
        ((0, 0, 0), CompField::Graded(f.f.clone())),
        ((0, 1, 0), CompField::Graded(f.psi_m.clone())),
        ((0, 0, 1), CompField::Graded(f.psi_p.clone())),
        ((0, 1, 1), CompField::Even(f.x.clone())),
    ];
    let bad: Vec<String> = against
        .iter()
        .filter(|(slot, field)| el.slot(*slot) != el_equation(l, field).scale(&rint(-1)))
        .map(|(slot, field)| format!("slot {:?} vs {}", slot, field.label()))
        .collect();
    Check::expect(id, anchor, bad.is_empty(), || bad.join("\n"))
}

fn nonlinear_sigma_checks(sm: &SigmaModel, mc: &ModelConfig, checks: &mut Vec<Check>) {
    let ctx = &sm.m2.ctx;
    let tm = sm.m2.gen(&sm.m2.th_m);
    let tp = sm.m2.gen(&sm.m2.th_p);
    let z = sm.m2.gen(&sm.m2.z);
    let tmtp = &tm * &tp;
    let n = sm.n as usize;

    // Nilpotent Taylor expansion of one metric entry through the superfield
    // substitution: g(X) + ∂g·(θ-slots) + ∂∂g·θ₋θ₊ψ₊ψ₋.
    let bottoms: Vec<CoeffExpr> = sm
        .fields
        .iter()
        .map(|f| CoeffExpr::sym(f.x.clone()))
        .collect();
    let g = App::new(Func::opaque("g12"), bottoms.clone());
    let got = sm
        .superfield_substitution()
        .pullback(&GradedExpr::scalar(ctx, CoeffExpr::app(g.clone())));
    let mut expected = GradedExpr::scalar(ctx, CoeffExpr::app(g.clone()));
    for c in 0..n {
        let dg_c = CoeffExpr::app(App {
            func: g.func.clone(),
            deriv: {
                let mut d = vec![0; n];
                d[c] += 1;
                d
            },
            args: bottoms.clone(),
        });
        let fc = &sm.fields[c];
        let delta = &(&(&tm * &ge(ctx, &fc.psi_p)) + &(&tp * &ge(ctx, &fc.psi_m)))
            + &(&(&tmtp * &ge(ctx, &fc.f)) + &(&(&z * &tmtp) * &se(ctx, &fc.y)));
        expected = &expected + &delta.scale_coeff(&dg_c);
        for d in 0..n {
            let ddg = CoeffExpr::app(App {
                func: g.func.clone(),
                deriv: {
                    let mut v = vec![0; n];
                    v[c] += 1;
                    v[d] += 1;
                    v
                },
                args: bottoms.clone(),
            });
            let fd = &sm.fields[d];
            expected = &expected
                + &(&tmtp * &(&ge(ctx, &fc.psi_p) * &ge(ctx, &fd.psi_m))).scale_coeff(&ddg);
        }
    }
    checks.push(eq_check(
        "nl-metric-taylor",
        "a field-dependent metric entry Taylor-expands through the nilpotent superfield shift",
        &got,
        &expected,
    ));

    // The full density stays integrable: no bare-z term survives in the
    // z-constrained model, so the Berezin integral is defined.
    let sl = sm.superspace_lagrangian();
    checks.push(Check::expect(
        "nl-closure",
        "the z-constrained superspace density carries no bare-z obstruction",
        is_integrable(&sl),
        || {
            format!(
                "obstruction: {}",
                render::serialize(&integrability_obstruction(&sl))
            )
        },
    ));

    match sm.component_lagrangian() {
        Ok(l) => {
            if let Some(gname) = &mc.golden_component {
                checks.push(golden_check(
                    "nl-action-golden",
                    "nonlinear component density matches its golden file",
                    gname,
                    &l,
                ));
            }
        }
        Err(e) => checks.push(Check::fail(
            "nl-action-golden",
            "nonlinear component density computes",
            e,
        )),
    }
}

fn sine_gordon_checks(sm: &SigmaModel, mc: &ModelConfig, checks: &mut Vec<Check>) {
    let ctx = &sm.m2.ctx;
    let f = &sm.fields[0];
    let alpha = sm.m2.alpha_expr();
    let sin = sin_half(&f.x);
    let cos = cos_half(&f.x);
    let x = |dm, dp| se(ctx, &ds(&f.x, dm, dp));
    let psi_p = ge(ctx, &f.psi_p);
    let psi_m = ge(ctx, &f.psi_m);

    let l = match sm.component_lagrangian() {
        Ok(l) => l,
        Err(e) => {
            checks.push(Check::fail(
                "sg-action",
                "the sine-Gordon component density computes",
                e,
            ));
            return;
        }
    };
    let expected_l = &kinetic_block(ctx, f, f)
        + &(&(&alpha * &ge(ctx, &f.f)).scale_coeff(&sin).scale(&rint(-1))
            - &(&alpha * &(&psi_m * &psi_p)).scale_coeff(&cos).scale(&rat(1, 2)));
    checks.push(eq_check(
        "sg-action",
        "sine-Gordon density: kinetic block − αF sin(X/2) − ½α ψ₋ψ₊ cos(X/2)",
        &l,
        &expected_l,
    ));
    if let Some(g) = &mc.golden_component {
        checks.push(golden_check(
            "sg-action-golden",
            "sine-Gordon component density matches its golden file",
            g,
            &l,
        ));
    }

    let (m, le) = match sm.eliminate() {
        Ok(v) => v,
        Err(e) => {
            checks.push(Check::fail(
                "sg-aux-solution",
                "the auxiliary equation solves linearly",
                e,
            ));
            return;
        }
    };
    checks.push(eq_check(
        "sg-aux-solution",
        "the auxiliary equation solves to 2F = −α sin(X/2)",
        &m.image_of_gen(ctx, &f.f),
        &alpha.scale_coeff(&sin).scale(&rat(-1, 2)),
    ));
    let expected_le = &(&kinetic_block(ctx, f, f) + &(&ge(ctx, &f.f) * &ge(ctx, &f.f)))
        + &(&GradedExpr::scalar(ctx, sin.pow(2)).scale(&rat(1, 4))
            - &(&alpha * &(&psi_m * &psi_p)).scale_coeff(&cos).scale(&rat(1, 2)));
    checks.push(eq_check(
        "sg-eliminated",
        "eliminated density: kinetics + ¼sin²(X/2) − ½α ψ₋ψ₊ cos(X/2)",
        &le,
        &expected_le,
    ));
    if let Some(g) = &mc.golden_eliminated {
        checks.push(golden_check(
            "sg-eliminated-golden",
            "sine-Gordon eliminated density matches its golden file",
            g,
            &le,
        ));
    }

    // Equations of motion of the eliminated density, in double-angle form.
    let sys = match EomSystem::derive(&le, &sm.dynamical_fields()) {
        Ok(s) => s,
        Err(e) => {
            checks.push(Check::fail(
                "sg-equations",
                "the eliminated equations of motion derive",
                e,
            ));
            return;
        }
    };
    let display_x = sys.eom("X").unwrap().display.double_angle();
    let expected_x = &(&x(1, 1) - &GradedExpr::scalar(ctx, sin_full(&f.x).scale(&rat(1, 4))))
        - &(&alpha * &(&psi_m * &psi_p)).scale_coeff(&sin).scale(&rat(1, 2));
    let display_pp = &sys.eom("psi_p").unwrap().display;
    let expected_pp = &ge(ctx, &dg(&f.psi_p, 0, 1))
        + &(&alpha * &psi_m).scale_coeff(&cos).scale(&rat(1, 2));
    let display_pm = &sys.eom("psi_m").unwrap().display;
    let expected_pm = &ge(ctx, &dg(&f.psi_m, 1, 0))
        + &(&alpha * &psi_p).scale_coeff(&cos).scale(&rat(1, 2));
    let ok = display_x == expected_x && *display_pp == expected_pp && *display_pm == expected_pm;
    checks.push(Check::expect(
        "sg-equations",
        "equations: ∂₋∂₊X = ¼sin X + ½α ψ₋ψ₊ sin(X/2); ∂₊ψ₊ = −½α ψ₋ cos(X/2); ∂₋ψ₋ = −½α ψ₊ cos(X/2)",
        ok,
        || {
            format!(
                "X: {}\nψ₊: {}\nψ₋: {}",
                render::to_latex(&display_x),
                render::to_latex(display_pp),
                render::to_latex(display_pm)
            )
        },
    ));

    // Setting the fermions to zero reduces the X-equation to the classical
    // sine-Gordon form ∂₋∂₊X = ¼ sin X.
    let psi_zero = crate::calculus::Morphism::new("psi-zero")
        .map_gen(f.psi_p.clone(), GradedExpr::zero(ctx))
        .map_gen(f.psi_m.clone(), GradedExpr::zero(ctx));
    let reduced = psi_zero.pullback(&display_x);
    let classical = &x(1, 1) - &GradedExpr::scalar(ctx, sin_full(&f.x).scale(&rat(1, 4)));
    checks.push(eq_check(
        "sg-fermion-zero",
        "with ψ = 0 the X-equation is the classical form ∂₋∂₊X − ¼ sin X = 0",
        &reduced,
        &classical,
    ));

    // Superspace stationarity with the potential term.
    let el = sm.superspace_el().remove(0);
    let sin_phi = sm
        .superfield_substitution()
        .pullback(&GradedExpr::scalar(ctx, sin.clone()));
    let direct = &(&sm.m2.d_m().apply(&sm.d_p_phi(1)) + &sm.m2.d_p().apply(&sm.d_m_phi(1)))
        + &(&alpha * &sin_phi);
    checks.push(eq_check(
        "sg-superspace-equation",
        "superspace stationarity equals D₋D₊Φ + D₊D₋Φ + α sin(Φ/2)",
        &el,
        &direct,
    ));
    checks.push(superspace_slot_check(
        "sg-superspace-slots",
        "superspace stationarity reproduces the component equations slot by slot",
        &el,
        &l,
        f,
    ));

    // Five-piece decomposition of the supersymmetry variation.
    sine_gordon_variation_checks(sm, &le, checks);

    // Off-shell quasi-invariance with the sine-Gordon boundary witness.
    let var = sm
        .susy_variation()
        .map_images(&m)
        .without(&CompField::Graded(f.f.clone()));
    let (v_m, v_p) = match sm.sine_gordon_witness() {
        Ok(v) => v,
        Err(e) => {
            checks.push(Check::fail(
                "sg-witness",
                "the sine-Gordon boundary witness exists",
                e,
            ));
            return;
        }
    };
    let dl = var.apply(&le);
    checks.push(zero_check(
        "sg-witness",
        "the eliminated density varies into the exact divergence of the boundary witness, off shell",
        &quasi_residual(&dl, &v_m, &v_p),
    ));

    // Conserved currents from the two supersymmetry families.
    let (em, ep) = susy_params();
    let j_mm = noether_current(&le, &var, &em, Dir::M, &v_m);
    let j_mp = noether_current(&le, &var, &em, Dir::P, &v_p);
    let j_pm = noether_current(&le, &var, &ep, Dir::M, &v_m);
    let j_pp = noether_current(&le, &var, &ep, Dir::P, &v_p);

    let forms_ok = j_mm == (&alpha * &psi_m).scale_coeff(&sin).scale(&rat(1, 2))
        && j_mp == (&x(1, 0) * &psi_p).scale(&rat(1, 2))
        && j_pm == (&x(0, 1) * &psi_m).scale(&rat(1, 2))
        && j_pp == (&alpha * &psi_p).scale_coeff(&sin).scale(&rat(1, 2));
    checks.push(Check::expect(
        "sg-currents",
        "currents: J⁻⁻ = ½α sin(X/2)ψ₋, J⁻⁺ = ½∂₋Xψ₊, J⁺⁻ = ½∂₊Xψ₋, J⁺⁺ = ½α sin(X/2)ψ₊",
        forms_ok,
        || {
            format!(
                "J⁻⁻ = {}\nJ⁻⁺ = {}\nJ⁺⁻ = {}\nJ⁺⁺ = {}",
                render::to_latex(&j_mm),
                render::to_latex(&j_mp),
                render::to_latex(&j_pm),
                render::to_latex(&j_pp)
            )
        },
    ));

    let weights_ok = j_mm.degree().matches(Degree::SECOND)
        && j_mp.degree().matches(Degree::SECOND)
        && j_pm.degree().matches(Degree::FIRST)
        && j_pp.degree().matches(Degree::FIRST)
        && j_mm.weight2() == Weighted::Homo(-1)
        && j_mp.weight2() == Weighted::Homo(3)
        && j_pm.weight2() == Weighted::Homo(-3)
        && j_pp.weight2() == Weighted::Homo(1);
    checks.push(Check::expect(
        "sg-current-weights",
        "current degrees (0,1)/(0,1)/(1,0)/(1,0) and boost weights −½, +³⁄₂, −³⁄₂, +½",
        weights_ok,
        || "degree or weight table mismatch".into(),
    ));

    let div_m = &partial_dir(&j_mm, Dir::M, None) + &partial_dir(&j_mp, Dir::P, None);
    let div_p = &partial_dir(&j_pm, Dir::M, None) + &partial_dir(&j_pp, Dir::P, None);
    let cons_ok = sys.reduce(&div_m).map(|e| e.is_zero()).unwrap_or(false)
        && sys.reduce(&div_p).map(|e| e.is_zero()).unwrap_or(false);
    checks.push(Check::expect(
        "sg-current-conservation",
        "both current divergences vanish on shell",
        cons_ok,
        || {
            format!(
                "∂J(ε₋) = {}\n∂J(ε₊) = {}",
                render::to_latex(&div_m),
                render::to_latex(&div_p)
            )
        },
    ));

    // Exact pre-reduction factorization into equation multiples — including
    // the sin(X/2)-proportional third term.
    let e_x = &sys.eom("X").unwrap().display;
    let e_pp = &sys.eom("psi_p").unwrap().display;
    let e_pm = &sys.eom("psi_m").unwrap().display;
    let third_m = (&alpha * e_pm).scale_coeff(&sin).scale(&rat(1, 2));
    let third_p = (&alpha * e_pp).scale_coeff(&sin).scale(&rat(1, 2));
    let factored_m =
        &(&(e_pp * &x(1, 0)).scale(&rat(1, 2)) + &(e_x * &psi_p).scale(&rat(1, 2))) + &third_m;
    let factored_p =
        &(&(e_pm * &x(0, 1)).scale(&rat(1, 2)) + &(e_x * &psi_m).scale(&rat(1, 2))) + &third_p;
    checks.push(Check::expect(
        "sg-divergence-factorization",
        "each divergence factors exactly as ½Ē_ψ ∂X + ½Ē_X ψ + ½α sin(X/2) Ē_ψ'",
        div_m == factored_m && div_p == factored_p,
        || {
            format!(
                "∂J(ε₋) − factored = {}",
                render::to_latex(&(&div_m - &factored_m))
            )
        },
    ));

    // The documented two-term factorization against the double-angle form of
    // the X-equation misses exactly the double-angle of the third term.
    let two_term_m = &(e_pp * &x(1, 0)).scale(&rat(1, 2))
        + &(&e_x.double_angle() * &psi_p).scale(&rat(1, 2));
    let missing = &div_m - &two_term_m;
    checks.push(Check::finding(
        "sg-divergence-display",
        "the documented divergence factorization lists the ∂X and ψ multiples only",
        format!(
            "computed ∂J(ε₋) = {}; the two documented multiples sum to {}; the difference is {} = ½α sin(X/2) Ē_ψ₋ after the double-angle rewrite (matches: {}). The factorization needs this third equation multiple.",
            render::to_latex(&div_m),
            render::to_latex(&two_term_m),
            render::to_latex(&missing),
            missing == third_m.double_angle()
        ),
    ));
}

/// The five-piece decomposition of δL for the eliminated sine-Gordon
/// density: each named piece varies into its documented form.
fn sine_gordon_variation_checks(sm: &SigmaModel, le: &GradedExpr, checks: &mut Vec<Check>) {
    let ctx = &sm.m2.ctx;
    let f = &sm.fields[0];
    let alpha = sm.m2.alpha_expr();
    let m = sm.eliminate().unwrap().0;
    let var = sm
        .susy_variation()
        .map_images(&m)
        .without(&CompField::Graded(f.f.clone()));
    let (em, ep) = susy_params();
    let em = ge(ctx, &em);
    let ep = ge(ctx, &ep);
    let sin = |e: &GradedExpr| e.scale_coeff(&sin_half(&f.x));
    let cos = |e: &GradedExpr| e.scale_coeff(&cos_half(&f.x));
    let sinx = |e: &GradedExpr| e.scale_coeff(&sin_full(&f.x));
    let x = |dm, dp| se(ctx, &ds(&f.x, dm, dp));
    let pp = |dm, dp| ge(ctx, &dg(&f.psi_p, dm, dp));
    let pm = |dm, dp| ge(ctx, &dg(&f.psi_m, dm, dp));

    let pieces = lagrangian_pieces(le, f);
    let sum = pieces
        .iter()
        .fold(GradedExpr::zero(ctx), |acc, (_, p)| &acc + p);
    checks.push(Check::expect(
        "sg-variation-pieces-cover",
        "the X-kinetic, ψ-kinetic, potential, and two-fermion pieces partition the density",
        pieces.len() == 5 && sum == *le,
        || format!("{} pieces; sum matches: {}", pieces.len(), sum == *le),
    ));

    let dl: Vec<GradedExpr> = pieces.iter().map(|(_, p)| var.apply(p)).collect();
    let exp0 = &(&em * &(&(&pp(1, 0) * &x(0, 1)) + &(&pp(0, 1) * &x(1, 0)))).scale(&rat(1, 4))
        + &(&ep * &(&(&pm(1, 0) * &x(0, 1)) + &(&pm(0, 1) * &x(1, 0)))).scale(&rat(1, 4));
    let exp1 = &(&em * &(&(&pp(0, 1) * &x(1, 0)) - &(&pp(0, 0) * &x(1, 1)))).scale(&rat(-1, 4))
        + &(&ep
            * &(&sin(&(&alpha * &pp(0, 1)))
                - &cos(&(&(&alpha * &x(0, 1)) * &pp(0, 0))).scale(&rat(1, 2))))
            .scale(&rat(-1, 4));
    let exp2 = &(&ep * &(&(&pm(1, 0) * &x(0, 1)) - &(&pm(0, 0) * &x(1, 1)))).scale(&rat(-1, 4))
        + &(&em
            * &(&sin(&(&alpha * &pm(1, 0)))
                - &cos(&(&(&alpha * &x(1, 0)) * &pm(0, 0))).scale(&rat(1, 2))))
            .scale(&rat(-1, 4));
    let exp3 =
        &sinx(&(&em * &pp(0, 0))).scale(&rat(1, 8)) + &sinx(&(&ep * &pm(0, 0))).scale(&rat(1, 8));
    let exp4 = &(&ep
        * &(&cos(&(&(&alpha * &x(0, 1)) * &pp(0, 0))) + &sinx(&pm(0, 0)).scale(&rat(1, 2))))
        .scale(&rat(-1, 4))
        + &(&em
            * &(&sinx(&pp(0, 0)).scale(&rat(1, 2)) + &cos(&(&(&alpha * &x(1, 0)) * &pm(0, 0)))))
            .scale(&rat(-1, 4));

    let ok = dl[0] == exp0
        && dl[1] == exp1
        && dl[2] == exp2
        && dl[3].double_angle() == exp3
        && dl[4].double_angle() == exp4;
    checks.push(Check::expect(
        "sg-variation-pieces-match",
        "each density piece varies into its documented group (double-angle form for the trigonometric pieces)",
        ok,
        || {
            (0..5)
                .map(|i| format!("δL_{i} = {}", render::to_latex(&dl[i])))
                .collect::<Vec<_>>()
                .join("\n")
        },
    ));
}

fn exotic_checks(ex: &ExoticModel, mc: &ModelConfig, checks: &mut Vec<Check>) {
    let ctx = &ex.m2.ctx;
    let fd = &ex.field;
    let y = |dm, dp| ge(ctx, &dg(&fd.y, dm, dp));
    let cp = |dm, dp| ge(ctx, &dg(&fd.chi_p, dm, dp));
    let cm = |dm, dp| ge(ctx, &dg(&fd.chi_m, dm, dp));
    let g = se(ctx, &fd.g);

    let l = match ex.component_lagrangian() {
        Ok(l) => l,
        Err(e) => {
            checks.push(Check::fail(
                "ex-action",
                "the exotic component density computes",
                e,
            ));
            return;
        }
    };
    if ex.couplings.is_empty() {
        let expected = &(&(&y(1, 0) * &y(0, 1)).scale(&rat(-1, 4))
            + &(&cp(0, 0) * &cp(0, 1)).scale(&rat(1, 2)))
            + &(&(&cm(0, 0) * &cm(1, 0)).scale(&rat(1, 2)) + &(&g * &g));
        checks.push(eq_check(
            "ex-action",
            "free exotic density: −¼∂₋Y∂₊Y + ½χ₊∂₊χ₊ + ½χ₋∂₋χ₋ + G²",
            &l,
            &expected,
        ));
    }
    if let Some(gname) = &mc.golden_component {
        checks.push(golden_check(
            "ex-action-golden",
            "exotic component density matches its golden file",
            gname,
            &l,
        ));
    }

    // Equations of motion and auxiliary elimination.
    let fields = [ex.dynamical_fields(), ex.auxiliary_fields()].concat();
    match EomSystem::derive(&l, &fields) {
        Ok(sys) => {
            let ok = ex.couplings.is_empty()
                && sys.eom("Y").map(|e| e.raw == y(1, 1).scale(&rat(1, 2))).unwrap_or(false)
                && sys.eom("chi_p").map(|e| e.raw == cp(0, 1)).unwrap_or(false)
                && sys.eom("chi_m").map(|e| e.raw == cm(1, 0)).unwrap_or(false)
                && sys.eom("G").map(|e| e.raw == g.scale(&rint(2))).unwrap_or(false);
            checks.push(Check::expect(
                "ex-equations",
                "free exotic equations: ∂₋∂₊Y = 0, ∂₊χ₊ = 0, ∂₋χ₋ = 0, G = 0",
                ok || !ex.couplings.is_empty(),
                || "unexpected equation forms".into(),
            ));
        }
        Err(e) => checks.push(Check::fail(
            "ex-equations",
            "the exotic equations of motion derive",
            e,
        )),
    }
    match ex.eliminate() {
        Ok((_, le)) => {
            if let Some(gname) = &mc.golden_eliminated {
                checks.push(golden_check(
                    "ex-eliminated-golden",
                    "exotic eliminated density matches its golden file",
                    gname,
                    &le,
                ));
            }
        }
        Err(e) => checks.push(Check::fail(
            "ex-eliminated-golden",
            "the exotic auxiliary equation solves linearly",
            e,
        )),
    }

    // Superspace stationarity: computed as a sum of second derivatives; the
    // documented equation prints the density factors as a product instead.
    let el = ex.superspace_el();
    let dd = &ex.m2.d_m().apply(&ex.d_p_psi()) + &ex.m2.d_p().apply(&ex.d_m_psi());
    let mut want = dd.clone();
    for (p, a) in &ex.couplings {
        let mut fact = rint(1);
        for k in 2..=(p - 1) as i64 {
            fact = &fact * &rint(k);
        }
        want = &want
            + &ex
                .psi()
                .pow(p - 1)
                .scale_coeff(&CoeffExpr::sym(a.clone()))
                .scale(&fact.recip());
    }
    checks.push(eq_check(
        "ex-superspace-equation",
        "exotic stationarity equals D₋D₊Ψ + D₊D₋Ψ plus the interaction derivative",
        &el,
        &want,
    ));
    let product = &ex.d_m_psi() * &ex.d_p_psi();
    checks.push(Check::finding(
        "ex-superspace-display",
        "the documented exotic superspace equation prints the product D₋ΨD₊Ψ where the derived equation is the sum of second derivatives",
        format!(
            "bottom slot of the derived equation: {}; bottom slot of the printed product: {}. The product is the density, not the stationarity condition; its bottom slot is quadratic where the equation's is linear.",
            render::to_latex(&dd.slot((0, 0, 0))),
            render::to_latex(&product.slot((0, 0, 0)))
        ),
    ));

    // Supersymmetry currents of the free model: the mixed components carry
    // the conserved charge, the diagonal ones vanish.
    if ex.couplings.is_empty() {
        let (m, le) = ex.eliminate().unwrap();
        let var = ex
            .susy_variation()
            .map_images(&m)
            .without(&CompField::Even(fd.g.clone()));
        let (em, ep) = susy_params();
        let (v_m, v_p) = ex.witness_onshell();
        let j_mm = noether_current(&le, &var, &em, Dir::M, &v_m);
        let j_mp = noether_current(&le, &var, &em, Dir::P, &v_p);
        let j_pm = noether_current(&le, &var, &ep, Dir::M, &v_m);
        let j_pp = noether_current(&le, &var, &ep, Dir::P, &v_p);
        let forms_ok = j_mm.is_zero()
            && j_pp.is_zero()
            && j_mp == (&y(1, 0) * &cp(0, 0)).scale(&rat(1, 2))
            && j_pm == (&y(0, 1) * &cm(0, 0)).scale(&rat(1, 2));
        checks.push(Check::expect(
            "ex-currents",
            "exotic currents: J⁻⁺ = ½∂₋Yχ₊ and J⁺⁻ = ½∂₊Yχ₋; the diagonal components vanish",
            forms_ok,
            || {
                format!(
                    "J⁻⁻ = {}\nJ⁻⁺ = {}\nJ⁺⁻ = {}\nJ⁺⁺ = {}",
                    render::to_latex(&j_mm),
                    render::to_latex(&j_mp),
                    render::to_latex(&j_pm),
                    render::to_latex(&j_pp)
                )
            },
        ));
        let weights_ok =
            j_mp.weight2() == Weighted::Homo(3) && j_pm.weight2() == Weighted::Homo(-3);
        checks.push(Check::expect(
            "ex-current-weights",
            "the mixed exotic currents carry boost weights +³⁄₂ and −³⁄₂",
            weights_ok,
            || "weight table mismatch".into(),
        ));
        checks.push(Check::finding(
            "ex-current-label",
            "the documented table labels the ½∂₊Yχ₋ current J⁺⁺, while its conservation partner and weight identify it as the (+,−) component",
            format!(
                "½∂₊Yχ₋ = {} has boost weight −³⁄₂ and is conserved against J(ε₊) in the ∂₋ direction; the (+,+) slot itself vanishes: J⁺⁺ = {}.",
                render::to_latex(&j_pm),
                render::to_latex(&j_pp)
            ),
        ));

        let sys = EomSystem::derive(&le, &ex.dynamical_fields()).unwrap();
        let div_m = &partial_dir(&j_mm, Dir::M, None) + &partial_dir(&j_mp, Dir::P, None);
        let div_p = &partial_dir(&j_pm, Dir::M, None) + &partial_dir(&j_pp, Dir::P, None);
        let cons_ok = sys.reduce(&div_m).map(|e| e.is_zero()).unwrap_or(false)
            && sys.reduce(&div_p).map(|e| e.is_zero()).unwrap_or(false);
        checks.push(Check::expect(
            "ex-current-conservation",
            "both exotic current divergences vanish on shell",
            cons_ok,
            || "nonzero on-shell divergence".into(),
        ));

        // Quasi-invariance: exact with the augmented witness, on-shell with
        // the minimal one.
        let dl_full = ex.susy_variation().apply(&l);
        let (w_m, w_p) = ex.witness_exact();
        checks.push(zero_check(
            "ex-witness-exact",
            "the exotic density varies into an exact divergence off shell with the G-augmented witness",
            &quasi_residual(&dl_full, &w_m, &w_p),
        ));
        let dl_red = var.apply(&le);
        let residual = quasi_residual(&dl_red, &v_m, &v_p);
        let onshell = sys.reduce(&residual).map(|e| e.is_zero()).unwrap_or(false);
        checks.push(Check::expect(
            "ex-witness-onshell",
            "with the minimal witness the residual is a multiple of the auxiliary equation and vanishes on shell",
            onshell,
            || format!("residual: {}", render::to_latex(&residual)),
        ));
        checks.push(Check::finding(
            "ex-invariance-strength",
            "the documented invariance is stated modulo the equations of motion; augmenting the boundary witness with the G terms makes it exact off shell",
            format!(
                "minimal-witness residual before reduction: {}; augmented witness adds −½ε₋Gχ₋ to V⁻ and −½ε₊Gχ₊ to V⁺, after which the residual is identically zero.",
                render::to_latex(&residual)
            ),
        ));
    }

    // Degree bookkeeping: even interaction powers cannot form a density.
    let a2 = Sym::param("a2");
    let err = ExoticModel::new(false, vec![(2, a2)]).err().unwrap_or_default();
    checks.push(Check::expect(
        "ex-degree-constraint",
        "even powers of the exotic field are rejected: only odd powers have degree (1,1)",
        err.contains("degree"),
        || format!("unexpected acceptance: {err}"),
    ));

    // The scalar-superfield counterexample: a quadratic potential leaves a
    // bare-z term, so the density is not integrable.
    let (density, obstruction) = quadratic_potential_counterexample(&ex.m2);
    let ok = !is_integrable(&density)
        && integrability_obstruction(&density) == obstruction
        && !obstruction.is_zero();
    checks.push(Check::expect(
        "ex-z-obstruction",
        "an unconstrained quadratic scalar potential produces a bare-z obstruction and is rejected by the integral",
        ok,
        || format!("obstruction: {}", render::serialize(&obstruction)),
    ));
}

/// Constant-metric block structure and its off-shell witness.
fn constant_metric_checks(checks: &mut Vec<Check>) {
    let sm = match SigmaModel::new(2, Metric::Constant, Potential::None) {
        Ok(sm) => sm,
        Err(e) => {
            checks.push(Check::fail(
                "bm-action",
                "the two-field constant-metric model builds",
                e,
            ));
            return;
        }
    };
    let ctx = &sm.m2.ctx;
    let l = sm.component_lagrangian().unwrap();
    let mut expected = GradedExpr::zero(ctx);
    for a in 1u8..=2 {
        for b in 1u8..=2 {
            let eta = CoeffExpr::sym(Sym::param(&format!("eta{}{}", b.min(a), b.max(a))));
            expected = &expected
                + &kinetic_block(ctx, &sm.fields[(a - 1) as usize], &sm.fields[(b - 1) as usize])
                    .scale_coeff(&eta);
        }
    }
    checks.push(eq_check(
        "bm-action",
        "constant-metric density: kinetic blocks contracted with η_{ba}",
        &l,
        &expected,
    ));

    let (v_m, v_p) = sm.free_witness().unwrap();
    let dl = sm.susy_variation().apply(&l);
    checks.push(zero_check(
        "bm-quasi-invariance",
        "the constant-metric density varies into the divergence of the η-contracted witness, off shell",
        &quasi_residual(&dl, &v_m, &v_p),
    ));
}

/// Generic α-potential: auxiliary solution and the identity-metric identity
/// relating the F-equation to the potential gradient.
fn generic_potential_checks(checks: &mut Vec<Check>) {
    let sm = match SigmaModel::new(2, Metric::Identity, Potential::Generic) {
        Ok(sm) => sm,
        Err(e) => {
            checks.push(Check::fail(
                "gp-elimination",
                "the generic-potential model builds",
                e,
            ));
            return;
        }
    };
    let ctx = &sm.m2.ctx;
    let alpha = sm.m2.alpha_expr();
    let bottoms: Vec<CoeffExpr> = sm
        .fields
        .iter()
        .map(|f| CoeffExpr::sym(f.x.clone()))
        .collect();
    match sm.eliminate() {
        Ok((m, _)) => {
            let bad: Vec<u8> = (0..2u8)
                .filter(|&a| {
                    let du = CoeffExpr::app(App {
                        func: Func::opaque("U"),
                        deriv: {
                            let mut d = vec![0, 0];
                            d[a as usize] += 1;
                            d
                        },
                        args: bottoms.clone(),
                    });
                    let want = alpha.scale_coeff(&du).scale(&rat(-1, 2));
                    m.image_of_gen(ctx, &sm.fields[a as usize].f) != want
                })
                .collect();
            checks.push(Check::expect(
                "gp-elimination",
                "the generic-potential auxiliaries solve to 2F^a = −α ∂_a U(X)",
                bad.is_empty(),
                || format!("mismatch for field index {:?}", bad),
            ));
        }
        Err(e) => checks.push(Check::fail(
            "gp-elimination",
            "the generic-potential auxiliaries solve linearly",
            e,
        )),
    }

    // A constant non-identity metric couples the auxiliary equations to the
    // potential gradient non-diagonally; the linear solver reports it.
    let coupled = SigmaModel::new(2, Metric::Constant, Potential::Generic).unwrap();
    checks.push(Check::expect(
        "gp-constant-metric-coupled",
        "with a generic constant metric the auxiliary solve feeds back and is rejected",
        coupled.eliminate().is_err(),
        || "elimination unexpectedly succeeded".into(),
    ));
}

// ---------------------------------------------------------------------------
// appendix-b suite
// ---------------------------------------------------------------------------

/// Randomized coordinate-change template at truncation order 3: transport of
/// integrability, z-freedom of the Berezinian, coordinate-independence of
/// the integral, and the bare-z negative control.
pub fn appendix_b_suite(cfg: &Config) -> SuiteReport {
    let started = Instant::now();
    let seed = cfg.kernel.seed;
    let frame = BFrame::new();
    let mut checks = Vec::new();

    let n = (cfg.kernel.trials / 10).max(1);
    checks.push(trials_check(
        "transport-integrability",
        "pullback along a random template change maps integrable sections to integrable sections",
        n,
        |i| {
            let mut rng = trial_rng(seed, SALT_CC_TRANSPORT, i);
            let change = template_change(&frame, &mut rng);
            let section = random_section(&frame, &mut rng);
            integrability_transport(&change, &section).err()
        },
    ));

    checks.push(trials_check(
        "berezinian-z-free",
        "the Berezinian of a random template Jacobian has no bare-z term",
        n,
        |i| {
            let mut rng = trial_rng(seed, SALT_CC_NO_Z, i);
            let change = template_change(&frame, &mut rng);
            berezinian_no_z_term(&frame, &change).err()
        },
    ));

    checks.push(trials_check(
        "integral-invariance",
        "the Berezin integral transforms with the interval rescale: both coordinate systems agree",
        n,
        |i| {
            let mut rng = trial_rng(seed, SALT_CC_INTEGRAL, i);
            let change = template_change(&frame, &mut rng);
            let section = random_section(&frame, &mut rng);
            integral_coordinate_independence(&frame, &change, &section).err()
        },
    ));

    // Negative control: the only section shape that can break integrability
    // under pullback is the bare-z monomial, and the obstruction it produces
    // is exactly the leading z-coefficient of the change.
    let mut rng = trial_rng(seed, SALT_CC_NO_Z, u64::MAX);
    let change = template_change(&frame, &mut rng);
    let z_expr = frame.gen(&frame.z);
    let pulled = change.phi.pullback(&z_expr);
    let obstruction = integrability_obstruction(&pulled);
    let expected = GradedExpr::scalar(&frame.ctx, change.z_lead.clone());
    checks.push(Check::expect(
        "bare-z-control",
        "the bare-z section is the unique obstruction shape: its pullback fails integrability by the leading z-coefficient",
        !is_integrable(&pulled) && obstruction == expected,
        || {
            format!(
                "obstruction:\n{}expected:\n{}",
                render::serialize(&obstruction),
                render::serialize(&expected)
            )
        },
    ));

    SuiteReport::new("appendix-b", checks, started.elapsed().as_millis())
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Run one suite by name.
pub fn run_suite(name: &str, cfg: &Config) -> Result<SuiteReport, String> {
    match name {
        "algebra" => Ok(algebra_suite(cfg)),
        "superspace" => Ok(superspace_suite(cfg)),
        "berezin" => Ok(berezin_suite(cfg)),
        "models" => Ok(models_suite(cfg)),
        "appendix-b" => Ok(appendix_b_suite(cfg)),
        other => Err(format!(
            "unknown suite '{other}'; expected one of {} or 'all'",
            SUITE_NAMES.join(", ")
        )),
    }
}

/// Run a selection ("all" or one suite name) into a full report.
pub fn run_suites(selection: &str, cfg: &Config) -> Result<RunReport, String> {
    let reports = if selection == "all" {
        SUITE_NAMES
            .iter()
            .map(|s| run_suite(s, cfg))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        vec![run_suite(selection, cfg)?]
    };
    Ok(RunReport::new(cfg.snapshot(), reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn quick_config() -> Config {
        let mut cfg = default_config();
        cfg.kernel.trials = 20;
        cfg
    }

    #[test]
    fn default_configuration_parses_and_names_the_four_models() {
        let cfg = default_config();
        assert_eq!(cfg.kernel.z_order, 1);
        assert_eq!(cfg.kernel.trials, 500);
        for name in ["linear-sigma", "nonlinear-sigma", "sine-gordon", "exotic"] {
            assert!(cfg.models.contains_key(name), "missing model {name}");
        }
        assert!(parse_config("kernel = { trials = 3 }").is_ok());
        assert!(parse_config("kernel = { unknown-knob = 3 }").is_err());
    }

    #[test]
    fn all_suites_pass_at_reduced_trial_counts() {
        let cfg = quick_config();
        let run = run_suites("all", &cfg).unwrap();
        for suite in &run.suites {
            for c in &suite.checks {
                assert_ne!(
                    c.status,
                    Status::Fail,
                    "{}::{} failed: {:?}",
                    suite.suite,
                    c.id,
                    c.witness
                );
            }
        }
        assert!(run.ok());
        // The recorded display discrepancies surface as findings.
        let names: Vec<&str> = run
            .suites
            .iter()
            .flat_map(|s| s.checks.iter())
            .filter(|c| c.status == Status::Finding)
            .map(|c| c.id.as_str())
            .collect();
        for expected in [
            "covariant-plus-display",
            "trace-convention",
            "sg-divergence-display",
            "ex-superspace-display",
            "ex-current-label",
            "ex-invariance-strength",
        ] {
            assert!(names.contains(&expected), "missing finding {expected}; have {names:?}");
        }
    }

    #[test]
    fn reports_are_deterministic_for_a_fixed_seed() {
        let cfg = quick_config();
        let a = run_suites("algebra", &cfg).unwrap();
        let b = run_suites("algebra", &cfg).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
        let mut other = quick_config();
        other.kernel.seed += 1;
        // A different seed still passes; determinism is per-seed.
        assert!(run_suites("algebra", &other).unwrap().ok());
    }

    #[test]
    fn golden_manifest_matches_embedded_files() {
        for (name, expr) in golden_manifest() {
            let text = golden_text(name).expect("manifest names an embedded file");
            let parsed = render::parse(text)
                .unwrap_or_else(|e| panic!("golden {name} unreadable ({e}); regenerate goldens"));
            assert_eq!(parsed, expr, "golden {name} is stale; regenerate goldens");
        }
    }
}
