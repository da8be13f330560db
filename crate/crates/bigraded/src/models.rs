//! The field-theory layer: sigma models of even multiplets with metric and
//! potential couplings, the model of a single degree-(1,1) multiplet, and the
//! component machinery they share — Euler–Lagrange operators, auxiliary-field
//! elimination, supersymmetry as a transformation of component fields,
//! quasi-invariance witnesses, and Noether currents.
//!
//! Everything works on exact symbolic expressions: an identity holds when the
//! difference of both sides normalizes to zero, and equations of motion enter
//! as oriented rewrite rules (leading jet ↦ solved remainder) so that
//! on-shell reductions cancel exactly, never merely up to a trigonometric
//! rearrangement.

use crate::algebra::{Ctx, Gen, GenBucket, GTerm, GradedExpr};
use crate::berezin::{berezin_integral, integrability_obstruction};
use crate::calculus::{partial_dir, partial_gen, partial_sym, Morphism};
use crate::coeff::{App, CoeffExpr, Dir, Func, Sym, SymKind};
use crate::grading::Degree;
use crate::superspace::{ExoticField, ScalarField, M2};
use crate::{rat, rint, Rat};

/// A component field, identified by its underived jet. Even fields (X, G)
/// live in the coefficient ring; all others are graded generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompField {
    Even(Sym),
    Graded(Gen),
}

impl CompField {
    /// Bare field name, without any multiplet index.
    pub fn name(&self) -> &str {
        match self {
            CompField::Even(s) => &s.name,
            CompField::Graded(g) => match &g.bucket {
                GenBucket::Jet { field, .. } => field,
                _ => panic!("component fields are jets"),
            },
        }
    }

    /// Field name with the multiplet index appended when there is one.
    pub fn label(&self) -> String {
        let (name, idx) = match self {
            CompField::Even(s) => (
                s.name.as_str(),
                match s.kind {
                    SymKind::Jet { idx, .. } => idx,
                    _ => None,
                },
            ),
            CompField::Graded(g) => match &g.bucket {
                GenBucket::Jet { field, idx, .. } => (field.as_str(), *idx),
                _ => (self.name(), None),
            },
        };
        match idx {
            Some(i) => format!("{}{}", name, i),
            None => name.to_string(),
        }
    }

    pub fn degree(&self) -> Degree {
        match self {
            CompField::Even(_) => Degree::ZERO,
            CompField::Graded(g) => g.degree,
        }
    }

    /// Is `s` a spacetime-derivative jet of this field?
    fn matches_sym(&self, s: &Sym) -> bool {
        match self {
            CompField::Even(base) => {
                s.name == base.name
                    && matches!(
                        (&s.kind, &base.kind),
                        (SymKind::Jet { idx, .. }, SymKind::Jet { idx: bidx, .. }) if idx == bidx
                    )
            }
            CompField::Graded(_) => false,
        }
    }

    fn matches_gen(&self, g: &Gen) -> bool {
        match self {
            CompField::Even(_) => false,
            CompField::Graded(base) => match (&g.bucket, &base.bucket) {
                (
                    GenBucket::Jet { field, idx, .. },
                    GenBucket::Jet {
                        field: bf,
                        idx: bidx,
                        ..
                    },
                ) => field == bf && idx == bidx,
                _ => false,
            },
        }
    }

    /// The underived field as an expression.
    pub fn expr(&self, ctx: &Ctx) -> GradedExpr {
        match self {
            CompField::Even(s) => GradedExpr::sym(ctx, s.clone()),
            CompField::Graded(g) => GradedExpr::gen(ctx, g.clone()),
        }
    }

    /// ∂^L l / ∂(∂_dir φ) for this field φ.
    fn partial_of_raised(&self, l: &GradedExpr, dir: Dir) -> GradedExpr {
        match self {
            CompField::Even(s) => partial_sym(l, &s.jet_raised(dir)),
            CompField::Graded(g) => partial_gen(l, &g.jet_raised(dir)),
        }
    }
}

fn sym_jet_orders(s: &Sym) -> (u16, u16) {
    match s.kind {
        SymKind::Jet { dm, dp, .. } => (dm, dp),
        _ => (0, 0),
    }
}

fn gen_jet_orders(g: &Gen) -> (u16, u16) {
    match g.bucket {
        GenBucket::Jet { dm, dp, .. } => (dm, dp),
        _ => (0, 0),
    }
}

/// (−1)^{m+p} ∂₋^m ∂₊^p e — the integration-by-parts weight of a jet of
/// order (m, p).
fn total_derivatives(e: &GradedExpr, dm: u16, dp: u16) -> GradedExpr {
    let mut out = e.clone();
    for _ in 0..dm {
        out = partial_dir(&out, Dir::M, None);
    }
    for _ in 0..dp {
        out = partial_dir(&out, Dir::P, None);
    }
    if (dm + dp) % 2 == 1 {
        out = out.scale(&rint(-1));
    }
    out
}

/// Euler–Lagrange operator of the density `l` with respect to one component
/// field:
///
/// ```text
///     E_φ = Σ over jets ∂₋^m∂₊^p φ of  (−1)^{m+p} ∂₋^m ∂₊^p ( ∂^L l / ∂(∂₋^m∂₊^p φ) )
/// ```
///
/// with left derivatives throughout. E_φ = 0 for every field is stationarity
/// of ∫ l under compactly supported variations.
pub fn el_equation(l: &GradedExpr, field: &CompField) -> GradedExpr {
    let mut acc = GradedExpr::zero(&l.ctx);
    match field {
        CompField::Even(_) => {
            for s in l.collect_syms() {
                if !field.matches_sym(&s) {
                    continue;
                }
                let (dm, dp) = sym_jet_orders(&s);
                acc = &acc + &total_derivatives(&partial_sym(l, &s), dm, dp);
            }
        }
        CompField::Graded(_) => {
            for g in l.collect_gens() {
                if !field.matches_gen(&g) {
                    continue;
                }
                let (dm, dp) = gen_jet_orders(&g);
                acc = &acc + &total_derivatives(&partial_gen(l, &g), dm, dp);
            }
        }
    }
    acc
}

/// A derivative that must come out as a bare rational: no graded part, no
/// symbols. This is the linearity check used when an equation is solved for
/// its leading jet.
fn rational_coefficient(e: &GradedExpr) -> Option<Rat> {
    if !e.graded_part().is_zero() {
        return None;
    }
    e.scalar_part().as_rat().filter(|c| c != &rint(0))
}

/// One field's equation of motion together with the data needed to use it as
/// a rewrite rule.
#[derive(Clone, Debug)]
pub struct Eom {
    pub field: CompField,
    /// The Euler–Lagrange expression exactly as derived.
    pub raw: GradedExpr,
    /// `raw` rescaled so the leading jet enters with coefficient +1.
    pub display: GradedExpr,
    /// The leading jet: highest total derivative order among the field's
    /// jets in `raw`, ties broken toward ∂₋.
    pub lead: CompField,
    /// Coefficient of the leading jet in `raw`.
    pub lead_coef: Rat,
}

/// The equations of motion of a density, oriented into a rewrite system
/// (leading jet ↦ solved remainder, prolonged once in each spacetime
/// direction) for exact on-shell reduction.
#[derive(Clone, Debug)]
pub struct EomSystem {
    pub eoms: Vec<Eom>,
    pub rules: Morphism,
}

impl EomSystem {
    pub fn derive(l: &GradedExpr, fields: &[CompField]) -> Result<EomSystem, String> {
        let ctx = &l.ctx;
        let mut eoms = Vec::new();
        let mut rules = Morphism::new("on_shell");
        for f in fields {
            let raw = el_equation(l, f);
            if raw.is_zero() {
                return Err(format!("{} does not appear in the density", f.label()));
            }
            // Highest-order jet of this field actually present in the
            // equation; the equation must be linear in it with a rational
            // coefficient, or it cannot be oriented.
            let lead = match f {
                CompField::Even(_) => raw
                    .collect_syms()
                    .into_iter()
                    .filter(|s| f.matches_sym(s))
                    .max_by_key(|s| {
                        let (m, p) = sym_jet_orders(s);
                        (m + p, m, p)
                    })
                    .map(CompField::Even),
                CompField::Graded(_) => raw
                    .collect_gens()
                    .into_iter()
                    .filter(|g| f.matches_gen(g))
                    .max_by_key(|g| {
                        let (m, p) = gen_jet_orders(g);
                        (m + p, m, p)
                    })
                    .map(CompField::Graded),
            }
            .ok_or_else(|| format!("no jet of {} in its own equation", f.label()))?;
            let struck = match &lead {
                CompField::Even(s) => partial_sym(&raw, s),
                CompField::Graded(g) => partial_gen(&raw, g),
            };
            let c = rational_coefficient(&struck).ok_or_else(|| {
                format!(
                    "the equation for {} is not linear in its leading jet with a rational \
                     coefficient",
                    f.label()
                )
            })?;
            let lead_expr = lead.expr(ctx);
            let rest = &raw - &lead_expr.scale(&c);
            let still_there = match &lead {
                CompField::Even(s) => rest.contains_sym(s),
                CompField::Graded(g) => rest.collect_gens().contains(g),
            };
            if still_there {
                return Err(format!(
                    "the equation for {} is nonlinear in its leading jet",
                    f.label()
                ));
            }
            let sol = rest.scale(&-c.recip());
            match &lead {
                CompField::Even(s) => {
                    rules = rules.map_sym(s.clone(), sol.clone());
                    for dir in Dir::both() {
                        rules = rules.map_sym(s.jet_raised(dir), partial_dir(&sol, dir, None));
                    }
                }
                CompField::Graded(g) => {
                    rules = rules.map_gen(g.clone(), sol.clone());
                    for dir in Dir::both() {
                        rules = rules.map_gen(g.jet_raised(dir), partial_dir(&sol, dir, None));
                    }
                }
            }
            let display = raw.scale(&c.recip());
            eoms.push(Eom {
                field: f.clone(),
                raw,
                display,
                lead,
                lead_coef: c,
            });
        }
        Ok(EomSystem { eoms, rules })
    }

    /// Rewrite with the oriented equations until nothing changes.
    pub fn reduce(&self, e: &GradedExpr) -> Result<GradedExpr, String> {
        self.rules.rewrite_fixpoint(e, 32)
    }

    pub fn eom(&self, label: &str) -> Option<&Eom> {
        self.eoms.iter().find(|e| e.field.label() == label)
    }
}

/// Solve the algebraic equations of the listed auxiliary fields and return
/// the substitution together with the reduced density. Each auxiliary must
/// enter its own equation linearly, underived, with a rational coefficient,
/// and the solutions must not feed back into any auxiliary.
pub fn eliminate_auxiliary(
    l: &GradedExpr,
    aux: &[CompField],
) -> Result<(Morphism, GradedExpr), String> {
    let ctx = &l.ctx;
    let mut images: Vec<(CompField, GradedExpr)> = Vec::new();
    for f in aux {
        let e = el_equation(l, f);
        let struck = match f {
            CompField::Even(s) => partial_sym(&e, s),
            CompField::Graded(g) => partial_gen(&e, g),
        };
        let c = rational_coefficient(&struck).ok_or_else(|| {
            format!(
                "the equation for {} is not algebraic-linear with a rational coefficient",
                f.label()
            )
        })?;
        let sol = (&e - &f.expr(ctx).scale(&c)).scale(&-c.recip());
        images.push((f.clone(), sol));
    }
    for (_, sol) in &images {
        for f in aux {
            let fed_back = match f {
                CompField::Even(s) => sol.collect_syms().iter().any(|t| f.matches_sym(t) || t == s),
                CompField::Graded(g) => sol.collect_gens().iter().any(|t| f.matches_gen(t) || t == g),
            };
            if fed_back {
                return Err(format!(
                    "auxiliary equations are coupled: a solution still involves {}",
                    f.label()
                ));
            }
        }
    }
    let mut m = Morphism::new("auxiliary");
    for (f, sol) in images {
        match f {
            CompField::Even(s) => {
                for dir in Dir::both() {
                    m = m.map_sym(s.jet_raised(dir), partial_dir(&sol, dir, None));
                }
                m = m.map_sym(s, sol);
            }
            CompField::Graded(g) => {
                for dir in Dir::both() {
                    m = m.map_gen(g.jet_raised(dir), partial_dir(&sol, dir, None));
                }
                m = m.map_gen(g, sol);
            }
        }
    }
    let reduced = m.pullback(l);
    Ok((m, reduced))
}

/// A variation δ acting on component expressions: every base field has an
/// image, jets get the prolonged image (δ commutes with ∂₋ and ∂₊), and δ
/// applies as a left derivation — each image multiplies the struck
/// derivative from the left.
#[derive(Clone, Debug)]
pub struct FieldVariation {
    pub name: String,
    pub images: Vec<(CompField, GradedExpr)>,
}

impl FieldVariation {
    pub fn new(name: &str, images: Vec<(CompField, GradedExpr)>) -> FieldVariation {
        FieldVariation {
            name: name.into(),
            images,
        }
    }

    fn sym_image(&self, s: &Sym) -> Option<GradedExpr> {
        self.images.iter().find(|(f, _)| f.matches_sym(s)).map(|(_, img)| {
            let (dm, dp) = sym_jet_orders(s);
            let mut out = img.clone();
            for _ in 0..dm {
                out = partial_dir(&out, Dir::M, None);
            }
            for _ in 0..dp {
                out = partial_dir(&out, Dir::P, None);
            }
            out
        })
    }

    fn gen_image(&self, g: &Gen) -> Option<GradedExpr> {
        self.images.iter().find(|(f, _)| f.matches_gen(g)).map(|(_, img)| {
            let (dm, dp) = gen_jet_orders(g);
            let mut out = img.clone();
            for _ in 0..dm {
                out = partial_dir(&out, Dir::M, None);
            }
            for _ in 0..dp {
                out = partial_dir(&out, Dir::P, None);
            }
            out
        })
    }

    /// δe = Σ over jets of δ(jet)·∂^L e/∂jet.
    pub fn apply(&self, e: &GradedExpr) -> GradedExpr {
        let mut acc = GradedExpr::zero(&e.ctx);
        for s in e.collect_syms() {
            if let Some(img) = self.sym_image(&s) {
                acc = &acc + &(&img * &partial_sym(e, &s));
            }
        }
        for g in e.collect_gens() {
            if let Some(img) = self.gen_image(&g) {
                acc = &acc + &(&img * &partial_gen(e, &g));
            }
        }
        acc
    }

    /// Push every image through a substitution (such as an auxiliary-field
    /// solution) to get the on-shell form of the variation.
    pub fn map_images(&self, m: &Morphism) -> FieldVariation {
        FieldVariation {
            name: self.name.clone(),
            images: self
                .images
                .iter()
                .map(|(f, img)| (f.clone(), m.pullback(img)))
                .collect(),
        }
    }

    /// Drop the row of one field (after that field has been eliminated).
    pub fn without(&self, f: &CompField) -> FieldVariation {
        FieldVariation {
            name: self.name.clone(),
            images: self
                .images
                .iter()
                .filter(|(g, _)| g != f)
                .cloned()
                .collect(),
        }
    }
}

/// δl − ∂₋V⁻ − ∂₊V⁺: identically zero exactly when (V⁻, V⁺) witnesses
/// quasi-invariance of ∫ l under δ.
pub fn quasi_residual(dl: &GradedExpr, v_m: &GradedExpr, v_p: &GradedExpr) -> GradedExpr {
    &(dl - &partial_dir(v_m, Dir::M, None)) - &partial_dir(v_p, Dir::P, None)
}

/// The conserved current component in direction `dir` for the one-parameter
/// family obtained by striking the parameter `eps` from the variation:
///
/// ```text
///     J^dir = Σ_φ (∂^L δφ/∂ε) · (∂^L l/∂(∂_dir φ))  −  ∂^L V^dir/∂ε
/// ```
///
/// where V^dir is the quasi-invariance boundary term in the same direction.
/// On stationary sections ∂₋J⁻ + ∂₊J⁺ = 0.
pub fn noether_current(
    l: &GradedExpr,
    var: &FieldVariation,
    eps: &Gen,
    dir: Dir,
    v_dir: &GradedExpr,
) -> GradedExpr {
    let mut j = partial_gen(v_dir, eps).scale(&rint(-1));
    for (f, img) in &var.images {
        let coef = partial_gen(img, eps);
        if coef.is_zero() {
            continue;
        }
        j = &j + &(&coef * &f.partial_of_raised(l, dir));
    }
    j
}

/// The two odd transformation parameters: ε₋ of degree (0,1) and weight −½,
/// ε₊ of degree (1,0) and weight +½.
pub fn susy_params() -> (Gen, Gen) {
    (
        Gen::param("eps_m", Degree::SECOND, -1),
        Gen::param("eps_p", Degree::FIRST, 1),
    )
}

/// Target-space metric contracting D₋Φ^a D₊Φ^b.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// δ_{ba}: each multiplet couples only to itself.
    Identity,
    /// Constant symmetric symbols η_{ba}.
    Constant,
    /// Symmetric functions g_{ba}(X¹…Xⁿ) of the multiplet bottoms.
    FieldDependent,
}

/// Interaction term, entering the density as −W(Φ). A Lagrangian term must
/// carry degree (1,1), so W takes values along the central unit α (degree
/// (1,1), α² = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Potential {
    None,
    /// W(Φ) = α·U(Φ) with U an opaque function of all multiplets.
    Generic,
    /// W(u) = 2α(1 − cos(u/2)) for a single multiplet.
    SineGordon,
}

/// A sigma model of `n` z-constrained even multiplets (X, ψ₊, ψ₋, F; top
/// component Y) with a choice of target metric and potential.
#[derive(Clone, Debug)]
pub struct SigmaModel {
    pub m2: M2,
    pub n: u8,
    pub fields: Vec<ScalarField>,
    pub metric: Metric,
    pub potential: Potential,
}

impl SigmaModel {
    pub fn new(n: u8, metric: Metric, potential: Potential) -> Result<SigmaModel, String> {
        if n == 0 || n > 9 {
            return Err("a sigma model needs between 1 and 9 multiplets".into());
        }
        if potential == Potential::SineGordon && n != 1 {
            return Err("the half-angle cosine potential couples a single multiplet".into());
        }
        let fields = (1..=n)
            .map(|a| ScalarField::new(if n == 1 { None } else { Some(a) }, true))
            .collect();
        Ok(SigmaModel {
            m2: M2::new(1),
            n,
            fields,
            metric,
            potential,
        })
    }

    fn field(&self, a: u8) -> &ScalarField {
        &self.fields[(a - 1) as usize]
    }

    /// Superfield expansion of multiplet `a` (1-based).
    pub fn phi(&self, a: u8) -> GradedExpr {
        self.field(a).expand(&self.m2)
    }

    pub fn d_m_phi(&self, a: u8) -> GradedExpr {
        self.m2.d_m().apply(&self.phi(a))
    }

    pub fn d_p_phi(&self, a: u8) -> GradedExpr {
        self.m2.d_p().apply(&self.phi(a))
    }

    /// X^c ↦ Φ^c: evaluates coefficient functions of the bottoms on the full
    /// superfields (nilpotent Taylor expansion).
    pub fn superfield_substitution(&self) -> Morphism {
        let mut m = Morphism::new("superfield");
        for f in &self.fields {
            m = m.map_sym(f.x.clone(), f.expand(&self.m2));
        }
        m
    }

    /// g_{ba} evaluated on the given bottom scalars; `None` marks a vanishing
    /// entry of the identity metric.
    fn metric_entry(&self, b: u8, a: u8, bottoms: &[CoeffExpr]) -> Option<CoeffExpr> {
        let (lo, hi) = (b.min(a), b.max(a));
        match self.metric {
            Metric::Identity => (b == a).then(CoeffExpr::one),
            Metric::Constant => Some(CoeffExpr::sym(Sym::param(&format!("eta{}{}", lo, hi)))),
            Metric::FieldDependent => Some(CoeffExpr::app(App::new(
                Func::opaque(&format!("g{}{}", lo, hi)),
                bottoms.to_vec(),
            ))),
        }
    }

    /// −W evaluated on the given bottom scalars, as a graded expression (the
    /// value direction is the central unit α).
    fn potential_term(&self, ctx: &Ctx, bottoms: &[CoeffExpr]) -> GradedExpr {
        let alpha = self.m2.alpha_expr();
        match self.potential {
            Potential::None => GradedExpr::zero(ctx),
            Potential::Generic => {
                let u = CoeffExpr::app(App::new(Func::opaque("U"), bottoms.to_vec()));
                (&alpha * &GradedExpr::scalar(ctx, u)).scale(&rint(-1))
            }
            Potential::SineGordon => {
                let half = bottoms[0].scale(&rat(1, 2));
                let cos = CoeffExpr::app(App::new(Func::cos(), vec![half]));
                // −2α(1 − cos(u/2))
                &alpha.scale(&rint(-2)) + &(&alpha * &GradedExpr::scalar(ctx, cos)).scale(&rint(2))
            }
        }
    }

    /// The superspace density D₋Φ^a D₊Φ^b g_{ba}(Φ) − W(Φ).
    pub fn superspace_lagrangian(&self) -> GradedExpr {
        let ctx = &self.m2.ctx;
        let bottoms: Vec<CoeffExpr> = self
            .fields
            .iter()
            .map(|f| CoeffExpr::sym(f.x.clone()))
            .collect();
        let subst = self.superfield_substitution();
        let mut l = GradedExpr::zero(ctx);
        for a in 1..=self.n {
            let dm = self.d_m_phi(a);
            for b in 1..=self.n {
                let Some(gba) = self.metric_entry(b, a, &bottoms) else {
                    continue;
                };
                let kin = &dm * &self.d_p_phi(b);
                l = &l + &(&kin * &subst.pullback(&GradedExpr::scalar(ctx, gba)));
            }
        }
        &l + &subst.pullback(&self.potential_term(ctx, &bottoms))
    }

    /// The component density: the θ₋θ₊-coefficient of the superspace density
    /// at z = 0.
    pub fn component_lagrangian(&self) -> Result<GradedExpr, String> {
        berezin_integral(&self.superspace_lagrangian())
    }

    /// The propagating fields X^a, ψ₊^a, ψ₋^a.
    pub fn dynamical_fields(&self) -> Vec<CompField> {
        self.fields
            .iter()
            .flat_map(|f| {
                [
                    CompField::Even(f.x.clone()),
                    CompField::Graded(f.psi_p.clone()),
                    CompField::Graded(f.psi_m.clone()),
                ]
            })
            .collect()
    }

    /// The auxiliary fields F^a (algebraic equations of motion).
    pub fn auxiliary_fields(&self) -> Vec<CompField> {
        self.fields
            .iter()
            .map(|f| CompField::Graded(f.f.clone()))
            .collect()
    }

    /// Solve the F-equations and substitute them back into the component
    /// density.
    pub fn eliminate(&self) -> Result<(Morphism, GradedExpr), String> {
        eliminate_auxiliary(&self.component_lagrangian()?, &self.auxiliary_fields())
    }

    /// The component supersymmetry transformation, read off the coordinate
    /// slots of δΦ = (ε₋Q₋ + ε₊Q₊)Φ. The θ-slots give δX, δψ₊, δψ₋, δF and
    /// the top slot gives δY; the z-sector slots of δΦ reproduce the top
    /// component and are not independent variations.
    pub fn susy_variation(&self) -> FieldVariation {
        let (em, ep) = susy_params();
        let delta = self.m2.susy(&em, &ep);
        let mut images = Vec::new();
        for f in &self.fields {
            let dphi = delta.apply(&f.expand(&self.m2));
            images.push((CompField::Even(f.x.clone()), dphi.slot((0, 0, 0))));
            images.push((CompField::Graded(f.psi_p.clone()), dphi.slot((0, 1, 0))));
            images.push((CompField::Graded(f.psi_m.clone()), dphi.slot((0, 0, 1))));
            images.push((CompField::Graded(f.f.clone()), dphi.slot((0, 1, 1))));
            images.push((CompField::Even(f.y.clone()), dphi.slot((1, 1, 1))));
        }
        FieldVariation::new("susy", images)
    }

    /// The superspace stationarity conditions, one per multiplet:
    ///
    /// ```text
    ///     D₋(∂^L l/∂(D₋Φ^a)) + D₊(∂^L l/∂(D₊Φ^a)) − ∂^L l/∂Φ^a
    /// ```
    ///
    /// computed on formal symbols for Φ, D₋Φ, D₊Φ and then evaluated back on
    /// the superfields.
    pub fn superspace_el(&self) -> Vec<GradedExpr> {
        let ctx = &self.m2.ctx;
        let idx = |a: u8| if self.n == 1 { None } else { Some(a) };
        let phi_s: Vec<Sym> = (1..=self.n).map(|a| Sym::jet("Phi", idx(a), 0, 0, 0)).collect();
        let phim_g: Vec<Gen> = (1..=self.n)
            .map(|a| Gen::jet("PhiM", idx(a), 0, 0, Degree::SECOND, 1))
            .collect();
        let phip_g: Vec<Gen> = (1..=self.n)
            .map(|a| Gen::jet("PhiP", idx(a), 0, 0, Degree::FIRST, -1))
            .collect();
        let bottoms: Vec<CoeffExpr> = phi_s.iter().cloned().map(CoeffExpr::sym).collect();
        let mut lf = GradedExpr::zero(ctx);
        for a in 1..=self.n {
            for b in 1..=self.n {
                let Some(gba) = self.metric_entry(b, a, &bottoms) else {
                    continue;
                };
                let kin = &GradedExpr::gen(ctx, phim_g[(a - 1) as usize].clone())
                    * &GradedExpr::gen(ctx, phip_g[(b - 1) as usize].clone());
                lf = &lf + &kin.scale_coeff(&gba);
            }
        }
        lf = &lf + &self.potential_term(ctx, &bottoms);
        let mut ev = Morphism::new("evaluate");
        for (i, f) in self.fields.iter().enumerate() {
            let a = (i + 1) as u8;
            ev = ev
                .map_sym(phi_s[i].clone(), f.expand(&self.m2))
                .map_gen(phim_g[i].clone(), self.d_m_phi(a))
                .map_gen(phip_g[i].clone(), self.d_p_phi(a));
        }
        let dm_op = self.m2.d_m();
        let dp_op = self.m2.d_p();
        (0..self.n as usize)
            .map(|i| {
                let t_m = dm_op.apply(&ev.pullback(&partial_gen(&lf, &phim_g[i])));
                let t_p = dp_op.apply(&ev.pullback(&partial_gen(&lf, &phip_g[i])));
                let t_0 = ev.pullback(&partial_sym(&lf, &phi_s[i]));
                &(&t_m + &t_p) - &t_0
            })
            .collect()
    }

    /// Boundary terms for the off-shell supersymmetry of a potential-free
    /// model: δl = ∂₋V⁻ + ∂₊V⁺ exactly, with
    ///
    /// ```text
    ///     V⁻ = ¼ ε₋ (ψ₊^a ∂₊X^b + 2 ψ₋^a F^b) η_{ba}
    /// ```
    ///
    /// and V⁺ its mirror (ε₊, ψ₋^a ∂₋X^b + 2 ψ₊^a F^b).
    pub fn free_witness(&self) -> Result<(GradedExpr, GradedExpr), String> {
        if self.potential != Potential::None {
            return Err("boundary terms of this shape fit the potential-free model".into());
        }
        if self.metric == Metric::FieldDependent {
            return Err("field-dependent metrics are not covered by this boundary form".into());
        }
        let ctx = &self.m2.ctx;
        let bottoms: Vec<CoeffExpr> = self
            .fields
            .iter()
            .map(|f| CoeffExpr::sym(f.x.clone()))
            .collect();
        let (em, ep) = susy_params();
        let em = GradedExpr::gen(ctx, em);
        let ep = GradedExpr::gen(ctx, ep);
        let mut v_m = GradedExpr::zero(ctx);
        let mut v_p = GradedExpr::zero(ctx);
        for a in 1..=self.n {
            for b in 1..=self.n {
                let Some(eta) = self.metric_entry(b, a, &bottoms) else {
                    continue;
                };
                let fa = self.field(a);
                let fb = self.field(b);
                let pair_m = &(&GradedExpr::gen(ctx, fa.psi_p.clone())
                    * &GradedExpr::sym(ctx, fb.x.jet_raised(Dir::P)))
                    + &(&GradedExpr::gen(ctx, fa.psi_m.clone())
                        * &GradedExpr::gen(ctx, fb.f.clone()))
                        .scale(&rint(2));
                let pair_p = &(&GradedExpr::gen(ctx, fa.psi_m.clone())
                    * &GradedExpr::sym(ctx, fb.x.jet_raised(Dir::M)))
                    + &(&GradedExpr::gen(ctx, fa.psi_p.clone())
                        * &GradedExpr::gen(ctx, fb.f.clone()))
                        .scale(&rint(2));
                v_m = &v_m + &(&em * &pair_m).scale(&rat(1, 4)).scale_coeff(&eta);
                v_p = &v_p + &(&ep * &pair_p).scale(&rat(1, 4)).scale_coeff(&eta);
            }
        }
        Ok((v_m, v_p))
    }

    /// Boundary terms for the on-shell supersymmetry of the eliminated
    /// single-multiplet half-angle model:
    ///
    /// ```text
    ///     V⁻ = ¼ ε₋ (ψ₊ ∂₊X − α sin(X/2) ψ₋),
    ///     V⁺ = ¼ ε₊ (ψ₋ ∂₋X − α sin(X/2) ψ₊).
    /// ```
    pub fn sine_gordon_witness(&self) -> Result<(GradedExpr, GradedExpr), String> {
        if self.potential != Potential::SineGordon {
            return Err("this boundary form belongs to the half-angle cosine potential".into());
        }
        let ctx = &self.m2.ctx;
        let f = self.field(1);
        let alpha = self.m2.alpha_expr();
        let sin = GradedExpr::scalar(
            ctx,
            CoeffExpr::app(App::new(
                Func::sin(),
                vec![CoeffExpr::sym(f.x.clone()).scale(&rat(1, 2))],
            )),
        );
        let (em, ep) = susy_params();
        let psi_p = GradedExpr::gen(ctx, f.psi_p.clone());
        let psi_m = GradedExpr::gen(ctx, f.psi_m.clone());
        let inner_m = &(&psi_p * &GradedExpr::sym(ctx, f.x.jet_raised(Dir::P)))
            - &(&(&alpha * &sin) * &psi_m);
        let inner_p = &(&psi_m * &GradedExpr::sym(ctx, f.x.jet_raised(Dir::M)))
            - &(&(&alpha * &sin) * &psi_p);
        Ok((
            (&GradedExpr::gen(ctx, em) * &inner_m).scale(&rat(1, 4)),
            (&GradedExpr::gen(ctx, ep) * &inner_p).scale(&rat(1, 4)),
        ))
    }
}

/// Split a single-multiplet component density into its five natural pieces
/// by field content: terms carrying derivative jets of X only, terms in ψ₊
/// jets only, in ψ₋ jets only, terms with both fermions, and the remainder
/// (the pure potential). The pieces sum back to the input.
pub fn lagrangian_pieces(
    l: &GradedExpr,
    f: &ScalarField,
) -> Vec<(&'static str, GradedExpr)> {
    let ctx = &l.ctx;
    let x = CompField::Even(f.x.clone());
    let psi_p = CompField::Graded(f.psi_p.clone());
    let psi_m = CompField::Graded(f.psi_m.clone());
    let mut buckets: Vec<(&'static str, Vec<GTerm>)> = vec![
        ("x_kinetic", vec![]),
        ("psi_p_kinetic", vec![]),
        ("psi_m_kinetic", vec![]),
        ("potential", vec![]),
        ("two_fermion", vec![]),
    ];
    for t in &l.terms {
        let has_p = t.mono.iter().any(|(g, _)| psi_p.matches_gen(g));
        let has_m = t.mono.iter().any(|(g, _)| psi_m.matches_gen(g));
        match (has_p, has_m) {
            (true, true) => buckets[4].1.push(t.clone()),
            (true, false) => buckets[1].1.push(t.clone()),
            (false, true) => buckets[2].1.push(t.clone()),
            // Fermion-free terms share one monomial in canonical form, so
            // kinetic and potential content must be pulled apart at the
            // level of individual coefficient terms.
            (false, false) => {
                for ct in &t.coef.terms {
                    let single = CoeffExpr::from_terms(vec![ct.clone()]);
                    let mut syms = std::collections::BTreeSet::new();
                    single.collect_syms(&mut syms);
                    let has_dx = syms
                        .iter()
                        .any(|s| x.matches_sym(s) && sym_jet_orders(s) != (0, 0));
                    buckets[if has_dx { 0 } else { 3 }].1.push(GTerm {
                        coef: single,
                        mono: t.mono.clone(),
                    });
                }
            }
        }
    }
    buckets
        .into_iter()
        .map(|(name, ts)| (name, GradedExpr::from_terms(ctx, ts)))
        .collect()
}

/// The model of a single degree-(1,1) multiplet Ψ = Y + θ₋χ₊ + θ₊χ₋ + θ₋θ₊G
/// (optionally with the top term zθ₋θ₊R), with density
/// D₋Ψ D₊Ψ − Σ_p a_p Ψ^p/p!.
#[derive(Clone, Debug)]
pub struct ExoticModel {
    pub m2: M2,
    pub field: ExoticField,
    /// Interaction terms (p, a_p); every power must be odd.
    pub couplings: Vec<(u32, Sym)>,
}

impl ExoticModel {
    pub fn new(with_top: bool, couplings: Vec<(u32, Sym)>) -> Result<ExoticModel, String> {
        for (p, _) in &couplings {
            if *p == 0 || p % 2 == 0 {
                return Err(format!(
                    "Ψ^{} has degree (0,0); only odd powers carry the degree (1,1) a density \
                     term needs",
                    p
                ));
            }
        }
        Ok(ExoticModel {
            m2: M2::new(1),
            field: ExoticField::new(with_top),
            couplings,
        })
    }

    pub fn psi(&self) -> GradedExpr {
        self.field.expand(&self.m2)
    }

    pub fn d_m_psi(&self) -> GradedExpr {
        self.m2.d_m().apply(&self.psi())
    }

    pub fn d_p_psi(&self) -> GradedExpr {
        self.m2.d_p().apply(&self.psi())
    }

    fn interaction(&self, ctx: &Ctx, psi: &GradedExpr) -> GradedExpr {
        let mut w = GradedExpr::zero(ctx);
        for (p, a) in &self.couplings {
            w = &w
                + &psi
                    .pow(*p)
                    .scale_coeff(&CoeffExpr::sym(a.clone()))
                    .scale(&factorial(*p).recip());
        }
        w
    }

    pub fn superspace_lagrangian(&self) -> GradedExpr {
        let ctx = &self.m2.ctx;
        let psi = self.psi();
        let kin = &self.d_m_psi() * &self.d_p_psi();
        &kin - &self.interaction(ctx, &psi)
    }

    pub fn component_lagrangian(&self) -> Result<GradedExpr, String> {
        berezin_integral(&self.superspace_lagrangian())
    }

    pub fn dynamical_fields(&self) -> Vec<CompField> {
        vec![
            CompField::Graded(self.field.y.clone()),
            CompField::Graded(self.field.chi_p.clone()),
            CompField::Graded(self.field.chi_m.clone()),
        ]
    }

    pub fn auxiliary_fields(&self) -> Vec<CompField> {
        vec![CompField::Even(self.field.g.clone())]
    }

    pub fn eliminate(&self) -> Result<(Morphism, GradedExpr), String> {
        eliminate_auxiliary(&self.component_lagrangian()?, &self.auxiliary_fields())
    }

    /// Component supersymmetry from the slots of δΨ = (ε₋Q₋ + ε₊Q₊)Ψ.
    pub fn susy_variation(&self) -> FieldVariation {
        let (em, ep) = susy_params();
        let delta = self.m2.susy(&em, &ep);
        let dpsi = delta.apply(&self.psi());
        let mut images = vec![
            (CompField::Graded(self.field.y.clone()), dpsi.slot((0, 0, 0))),
            (
                CompField::Graded(self.field.chi_p.clone()),
                dpsi.slot((0, 1, 0)),
            ),
            (
                CompField::Graded(self.field.chi_m.clone()),
                dpsi.slot((0, 0, 1)),
            ),
            (CompField::Even(self.field.g.clone()), dpsi.slot((0, 1, 1))),
        ];
        if let Some(r) = &self.field.r {
            images.push((CompField::Graded(r.clone()), dpsi.slot((1, 1, 1))));
        }
        FieldVariation::new("susy", images)
    }

    /// The superspace stationarity condition
    /// D₋(∂^L l/∂(D₋Ψ)) + D₊(∂^L l/∂(D₊Ψ)) − ∂^L l/∂Ψ on formal symbols,
    /// evaluated back on the superfield.
    pub fn superspace_el(&self) -> GradedExpr {
        let ctx = &self.m2.ctx;
        let psi = Gen::jet("Psi", None, 0, 0, Degree::BOTH, 0);
        let psim = Gen::jet("PsiM", None, 0, 0, Degree::FIRST, 1);
        let psip = Gen::jet("PsiP", None, 0, 0, Degree::SECOND, -1);
        let psi_e = GradedExpr::gen(ctx, psi.clone());
        let kin = &GradedExpr::gen(ctx, psim.clone()) * &GradedExpr::gen(ctx, psip.clone());
        let lf = &kin - &self.interaction(ctx, &psi_e);
        let ev = Morphism::new("evaluate")
            .map_gen(psi.clone(), self.psi())
            .map_gen(psim.clone(), self.d_m_psi())
            .map_gen(psip.clone(), self.d_p_psi());
        let t_m = self.m2.d_m().apply(&ev.pullback(&partial_gen(&lf, &psim)));
        let t_p = self.m2.d_p().apply(&ev.pullback(&partial_gen(&lf, &psip)));
        let t_0 = ev.pullback(&partial_gen(&lf, &psi));
        &(&t_m + &t_p) - &t_0
    }

    /// The minimal boundary terms V⁻ = ¼ε₋∂₊Yχ₊, V⁺ = ¼ε₊∂₋Yχ₋. The
    /// supersymmetry residual against them involves the auxiliary G and
    /// vanishes only on shell.
    pub fn witness_onshell(&self) -> (GradedExpr, GradedExpr) {
        let ctx = &self.m2.ctx;
        let (em, ep) = susy_params();
        let v_m = (&GradedExpr::gen(ctx, em)
            * &(&GradedExpr::gen(ctx, self.field.y.jet_raised(Dir::P))
                * &GradedExpr::gen(ctx, self.field.chi_p.clone())))
            .scale(&rat(1, 4));
        let v_p = (&GradedExpr::gen(ctx, ep)
            * &(&GradedExpr::gen(ctx, self.field.y.jet_raised(Dir::M))
                * &GradedExpr::gen(ctx, self.field.chi_m.clone())))
            .scale(&rat(1, 4));
        (v_m, v_p)
    }

    /// Boundary terms augmented with the G-sector:
    ///
    /// ```text
    ///     V⁻ = ε₋(¼∂₊Yχ₊ − ½Gχ₋),   V⁺ = ε₊(¼∂₋Yχ₋ − ½Gχ₊),
    /// ```
    ///
    /// against which the free-model supersymmetry residual vanishes
    /// identically, off shell.
    pub fn witness_exact(&self) -> (GradedExpr, GradedExpr) {
        let ctx = &self.m2.ctx;
        let (em, ep) = susy_params();
        let g = GradedExpr::sym(ctx, self.field.g.clone());
        let chi_p = GradedExpr::gen(ctx, self.field.chi_p.clone());
        let chi_m = GradedExpr::gen(ctx, self.field.chi_m.clone());
        let inner_m = &(&GradedExpr::gen(ctx, self.field.y.jet_raised(Dir::P)) * &chi_p)
            .scale(&rat(1, 4))
            - &(&g * &chi_m).scale(&rat(1, 2));
        let inner_p = &(&GradedExpr::gen(ctx, self.field.y.jet_raised(Dir::M)) * &chi_m)
            .scale(&rat(1, 4))
            - &(&g * &chi_p).scale(&rat(1, 2));
        (
            &GradedExpr::gen(ctx, em) * &inner_m,
            &GradedExpr::gen(ctx, ep) * &inner_p,
        )
    }
}

fn factorial(n: u32) -> Rat {
    let mut f = rint(1);
    for k in 1..=n as i64 {
        f = f * rint(k);
    }
    f
}

/// The quadratic section ½Φ² of an unconstrained superfield together with
/// its integration obstruction: the bare-z coefficient X·G whose presence
/// blocks the Berezin integral (and which the z-constrained multiplets do
/// not have).
pub fn quadratic_potential_counterexample(m2: &M2) -> (GradedExpr, GradedExpr) {
    let phi = ScalarField::new(None, false).expand(m2);
    let half_sq = (&phi * &phi).scale(&rat(1, 2));
    let obstruction = integrability_obstruction(&half_sq);
    (half_sq, obstruction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berezin::is_integrable;
    use crate::coeff::Weighted;

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

    #[test]
    fn free_single_multiplet_action_equations_and_superspace_el() {
        let sm = SigmaModel::new(1, Metric::Identity, Potential::None).unwrap();
        let ctx = &sm.m2.ctx;
        let f = &sm.fields[0];

        let l = sm.component_lagrangian().unwrap();
        assert_eq!(l, kinetic_block(ctx, f, f));

        // Solved equations: ∂₋∂₊X = 0, ∂₊ψ₊ = 0, ∂₋ψ₋ = 0, F = 0.
        let fields = [sm.dynamical_fields(), sm.auxiliary_fields()].concat();
        let sys = EomSystem::derive(&l, &fields).unwrap();
        assert_eq!(sys.eoms[0].display, se(ctx, &ds(&f.x, 1, 1)));
        assert_eq!(sys.eoms[1].display, ge(ctx, &dg(&f.psi_p, 0, 1)));
        assert_eq!(sys.eoms[2].display, ge(ctx, &dg(&f.psi_m, 1, 0)));
        assert_eq!(sys.eoms[3].display, ge(ctx, &f.f));
        assert!(sys.rules.image_of_gen(ctx, &f.f).is_zero());

        // Superspace stationarity: 2F − θ₊∂₊ψ₊ − θ₋∂₋ψ₋ + ½θ₋θ₊∂₋∂₊X + 2zY.
        let el = sm.superspace_el();
        let tm = sm.m2.gen(&sm.m2.th_m);
        let tp = sm.m2.gen(&sm.m2.th_p);
        let z = sm.m2.gen(&sm.m2.z);
        let expected = &(&ge(ctx, &f.f).scale(&rint(2))
            - &(&tp * &ge(ctx, &dg(&f.psi_p, 0, 1))))
            + &(&(&(&(&tm * &tp) * &se(ctx, &ds(&f.x, 1, 1))).scale(&rat(1, 2))
                - &(&tm * &ge(ctx, &dg(&f.psi_m, 1, 0))))
                + &(&z * &se(ctx, &f.y)).scale(&rint(2)));
        assert_eq!(el.len(), 1);
        assert_eq!(el[0], expected);

        // The same operator agrees with the direct second-derivative form.
        let direct = &sm.m2.d_m().apply(&sm.d_p_phi(1)) + &sm.m2.d_p().apply(&sm.d_m_phi(1));
        assert_eq!(el[0], direct);
    }

    #[test]
    fn constant_metric_block_action_and_offshell_witness() {
        let sm = SigmaModel::new(2, Metric::Constant, Potential::None).unwrap();
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
        assert_eq!(l, expected);

        // Off-shell invariance up to the boundary terms, both families at once.
        let var = sm.susy_variation();
        let dl = var.apply(&l);
        let (v_m, v_p) = sm.free_witness().unwrap();
        assert!(quasi_residual(&dl, &v_m, &v_p).is_zero());

        // The same holds for the single-multiplet identity-metric model.
        let sm1 = SigmaModel::new(1, Metric::Identity, Potential::None).unwrap();
        let l1 = sm1.component_lagrangian().unwrap();
        let dl1 = sm1.susy_variation().apply(&l1);
        let (w_m, w_p) = sm1.free_witness().unwrap();
        assert!(quasi_residual(&dl1, &w_m, &w_p).is_zero());
    }

    #[test]
    fn field_dependent_metric_taylor_and_closure() {
        let sm = SigmaModel::new(2, Metric::FieldDependent, Potential::None).unwrap();
        let ctx = &sm.m2.ctx;
        let tm = sm.m2.gen(&sm.m2.th_m);
        let tp = sm.m2.gen(&sm.m2.th_p);
        let z = sm.m2.gen(&sm.m2.z);
        let tmtp = &tm * &tp;

        let bottoms: Vec<CoeffExpr> = sm
            .fields
            .iter()
            .map(|f| CoeffExpr::sym(f.x.clone()))
            .collect();
        let g = App::new(Func::opaque("g12"), bottoms.clone());
        let got = sm
            .superfield_substitution()
            .pullback(&GradedExpr::scalar(ctx, CoeffExpr::app(g.clone())));

        // g(X) + ∂_c g·(θ₋ψ₊^c + θ₊ψ₋^c + θ₋θ₊F^c + zθ₋θ₊Y^c)
        //      + ∂_d∂_c g·θ₋θ₊ ψ₊^c ψ₋^d
        let mut expected = GradedExpr::scalar(ctx, CoeffExpr::app(g.clone()));
        for c in 0..2usize {
            let dg_c = CoeffExpr::app(App {
                func: g.func.clone(),
                deriv: {
                    let mut d = vec![0, 0];
                    d[c] += 1;
                    d
                },
                args: bottoms.clone(),
            });
            let fc = &sm.fields[c];
            let delta = &(&(&tm * &ge(ctx, &fc.psi_p)) + &(&tp * &ge(ctx, &fc.psi_m)))
                + &(&(&tmtp * &ge(ctx, &fc.f)) + &(&(&z * &tmtp) * &se(ctx, &fc.y)));
            expected = &expected + &delta.scale_coeff(&dg_c);
            for d in 0..2usize {
                let ddg = CoeffExpr::app(App {
                    func: g.func.clone(),
                    deriv: {
                        let mut v = vec![0, 0];
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
        assert_eq!(got, expected);

        // The full density stays closed under the Berezin integral.
        assert!(is_integrable(&sm.superspace_lagrangian()));
    }

    #[test]
    fn generic_potential_elimination_and_metric_contraction() {
        let sm = SigmaModel::new(2, Metric::Identity, Potential::Generic).unwrap();
        let ctx = &sm.m2.ctx;
        let alpha = sm.m2.alpha_expr();
        let bottoms: Vec<CoeffExpr> = sm
            .fields
            .iter()
            .map(|f| CoeffExpr::sym(f.x.clone()))
            .collect();
        let du = |c: usize| {
            CoeffExpr::app(App {
                func: Func::opaque("U"),
                deriv: {
                    let mut d = vec![0, 0];
                    d[c] += 1;
                    d
                },
                args: bottoms.clone(),
            })
        };
        let ddu = |c: usize, d: usize| {
            CoeffExpr::app(App {
                func: Func::opaque("U"),
                deriv: {
                    let mut v = vec![0, 0];
                    v[c] += 1;
                    v[d] += 1;
                    v
                },
                args: bottoms.clone(),
            })
        };

        // Pre-elimination density: kinetics − α∂_aU F^a − α ψ₋^a ψ₊^b ∂_b∂_aU.
        let l = sm.component_lagrangian().unwrap();
        let mut expected = GradedExpr::zero(ctx);
        for a in 0..2usize {
            let fa = &sm.fields[a];
            expected = &expected + &kinetic_block(ctx, fa, fa);
            expected = &expected - &(&alpha * &ge(ctx, &fa.f)).scale_coeff(&du(a));
            for b in 0..2usize {
                let fb = &sm.fields[b];
                expected = &expected
                    - &(&alpha * &(&ge(ctx, &fa.psi_m) * &ge(ctx, &fb.psi_p)))
                        .scale_coeff(&ddu(b, a));
            }
        }
        assert_eq!(l, expected);

        // Elimination: F^a ↦ −½α∂_aU; the density gains +¼Σ(∂_aU)².
        let (m, le) = sm.eliminate().unwrap();
        for a in 0..2usize {
            let fa = &sm.fields[a];
            assert_eq!(
                m.image_of_gen(ctx, &fa.f),
                alpha.scale_coeff(&du(a)).scale(&rat(-1, 2))
            );
        }
        let mut expected_elim = GradedExpr::zero(ctx);
        for a in 0..2usize {
            let fa = &sm.fields[a];
            expected_elim = &(&expected_elim + &kinetic_block(ctx, fa, fa))
                + &(&ge(ctx, &fa.f) * &ge(ctx, &fa.f));
            expected_elim =
                &expected_elim + &GradedExpr::scalar(ctx, du(a).pow(2)).scale(&rat(1, 4));
            for b in 0..2usize {
                let fb = &sm.fields[b];
                expected_elim = &expected_elim
                    - &(&alpha * &(&ge(ctx, &fa.psi_m) * &ge(ctx, &fb.psi_p)))
                        .scale_coeff(&ddu(b, a));
            }
        }
        assert_eq!(le, expected_elim);

        // Constant metric: the F-equations contract the metric instead of a
        // rational factor, so orientation fails but the linear identity
        // −½E_{F^a} = Σ_b F^b η_{ba} + ½α∂_aU still holds.
        let smc = SigmaModel::new(2, Metric::Constant, Potential::Generic).unwrap();
        let lc = smc.component_lagrangian().unwrap();
        assert!(smc.eliminate().is_err());
        for a in 1u8..=2 {
            let e = el_equation(&lc, &CompField::Graded(smc.fields[(a - 1) as usize].f.clone()));
            let mut rhs = smc
                .m2
                .alpha_expr()
                .scale_coeff(&du((a - 1) as usize))
                .scale(&rat(1, 2));
            for b in 1u8..=2 {
                let eta = CoeffExpr::sym(Sym::param(&format!("eta{}{}", b.min(a), b.max(a))));
                rhs = &rhs + &ge(&smc.m2.ctx, &smc.fields[(b - 1) as usize].f).scale_coeff(&eta);
            }
            assert_eq!(e.scale(&rat(-1, 2)), rhs);
        }
    }

    #[test]
    fn sine_gordon_action_elimination_and_equations() {
        let sm = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).unwrap();
        let ctx = &sm.m2.ctx;
        let f = &sm.fields[0];
        let alpha = sm.m2.alpha_expr();
        let sin = sin_half(&f.x);
        let cos = cos_half(&f.x);

        // Pre-elimination density.
        let l = sm.component_lagrangian().unwrap();
        let expected = &kinetic_block(ctx, f, f)
            + &(&(&alpha * &ge(ctx, &f.f)).scale_coeff(&sin).scale(&rint(-1))
                - &(&alpha * &(&ge(ctx, &f.psi_m) * &ge(ctx, &f.psi_p)))
                    .scale_coeff(&cos)
                    .scale(&rat(1, 2)));
        assert_eq!(l, expected);

        // The F-equation, its display multiple, and the solved rule.
        let e_f = el_equation(&l, &CompField::Graded(f.f.clone()));
        let display_f = &ge(ctx, &f.f).scale(&rint(2)) + &alpha.scale_coeff(&sin);
        assert_eq!(display_f.rational_multiple_of(&e_f), Some(rint(-1)));
        let (m, le) = sm.eliminate().unwrap();
        assert_eq!(
            m.image_of_gen(ctx, &f.f),
            alpha.scale_coeff(&sin).scale(&rat(-1, 2))
        );

        // Eliminated density: kinetics + ¼sin²(X/2) − ½α ψ₋ψ₊ cos(X/2).
        let expected_elim = &(&kinetic_block(ctx, f, f) + &(&ge(ctx, &f.f) * &ge(ctx, &f.f)))
            + &(&GradedExpr::scalar(ctx, sin.pow(2)).scale(&rat(1, 4))
                - &(&alpha * &(&ge(ctx, &f.psi_m) * &ge(ctx, &f.psi_p)))
                    .scale_coeff(&cos)
                    .scale(&rat(1, 2)));
        assert_eq!(le, expected_elim);

        // Equations of motion of the eliminated density.
        let sys = EomSystem::derive(&le, &sm.dynamical_fields()).unwrap();
        let e_x = &sys.eom("X").unwrap().raw;
        let expected_e_x = &se(ctx, &ds(&f.x, 1, 1)).scale(&rat(-1, 2))
            + &(&GradedExpr::scalar(ctx, (&sin * &cos).scale(&rat(1, 4)))
                + &(&alpha * &(&ge(ctx, &f.psi_m) * &ge(ctx, &f.psi_p)))
                    .scale_coeff(&sin)
                    .scale(&rat(1, 4)));
        assert_eq!(e_x, &expected_e_x);

        // Scaled to leading coefficient +1 and with the double-angle rewrite,
        // the X-equation takes the form ∂₋∂₊X − ¼sin(X) − ½α ψ₋ψ₊ sin(X/2).
        let display_x = sys.eom("X").unwrap().display.double_angle();
        let expected_display = &(&se(ctx, &ds(&f.x, 1, 1))
            - &GradedExpr::scalar(ctx, sin_full(&f.x).scale(&rat(1, 4))))
            - &(&alpha * &(&ge(ctx, &f.psi_m) * &ge(ctx, &f.psi_p)))
                .scale_coeff(&sin)
                .scale(&rat(1, 2));
        assert_eq!(display_x, expected_display);

        // Fermion equations: ∂₊ψ₊ + ½αψ₋cos(X/2), ∂₋ψ₋ + ½αψ₊cos(X/2).
        assert_eq!(
            sys.eom("psi_p").unwrap().raw,
            &ge(ctx, &dg(&f.psi_p, 0, 1))
                + &(&alpha * &ge(ctx, &f.psi_m)).scale_coeff(&cos).scale(&rat(1, 2))
        );
        assert_eq!(
            sys.eom("psi_m").unwrap().raw,
            &ge(ctx, &dg(&f.psi_m, 1, 0))
                + &(&alpha * &ge(ctx, &f.psi_p)).scale_coeff(&cos).scale(&rat(1, 2))
        );

        // Setting both fermions to zero leaves ∂₋∂₊X = ¼sin(X).
        let zero_psi = Morphism::new("zero_fermions")
            .map_gen(f.psi_p.clone(), GradedExpr::zero(ctx))
            .map_gen(dg(&f.psi_p, 0, 1), GradedExpr::zero(ctx))
            .map_gen(f.psi_m.clone(), GradedExpr::zero(ctx))
            .map_gen(dg(&f.psi_m, 1, 0), GradedExpr::zero(ctx));
        assert_eq!(
            zero_psi.pullback(&display_x),
            &se(ctx, &ds(&f.x, 1, 1))
                - &GradedExpr::scalar(ctx, sin_full(&f.x).scale(&rat(1, 4)))
        );

        // On-shell supersymmetry of the fermions after elimination.
        let (em, ep) = susy_params();
        let var = sm.susy_variation().map_images(&m);
        let img_psi_p = &var.images[1].1;
        let expected_psi_p = &(&ge(ctx, &em) * &se(ctx, &ds(&f.x, 1, 0))).scale(&rat(-1, 2))
            - &(&(&ge(ctx, &ep) * &alpha).scale_coeff(&sin)).scale(&rat(1, 2));
        assert_eq!(img_psi_p, &expected_psi_p);
        let img_psi_m = &var.images[2].1;
        let expected_psi_m = &(&ge(ctx, &ep) * &se(ctx, &ds(&f.x, 0, 1))).scale(&rat(-1, 2))
            - &(&(&ge(ctx, &em) * &alpha).scale_coeff(&sin)).scale(&rat(1, 2));
        assert_eq!(img_psi_m, &expected_psi_m);
    }

    #[test]
    fn sine_gordon_superspace_equation_and_slots() {
        let sm = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).unwrap();
        let ctx = &sm.m2.ctx;
        let f = &sm.fields[0];
        let alpha = sm.m2.alpha_expr();

        // Formal stationarity equals D₋D₊Φ + D₊D₋Φ + α sin(Φ/2) directly.
        let el = sm.superspace_el().remove(0);
        let sin_phi = sm
            .superfield_substitution()
            .pullback(&GradedExpr::scalar(ctx, sin_half(&f.x)));
        let direct = &(&sm.m2.d_m().apply(&sm.d_p_phi(1)) + &sm.m2.d_p().apply(&sm.d_m_phi(1)))
            + &(&alpha * &sin_phi);
        assert_eq!(el, direct);

        // Slot by slot, the superspace equation reproduces the component
        // equations of the un-eliminated density with a sign flip.
        let l = sm.component_lagrangian().unwrap();
        let against = [
            ((0, 0, 0), CompField::Graded(f.f.clone())),
            ((0, 1, 0), CompField::Graded(f.psi_m.clone())),
            ((0, 0, 1), CompField::Graded(f.psi_p.clone())),
            ((0, 1, 1), CompField::Even(f.x.clone())),
        ];
        for (slot, field) in against {
            assert_eq!(el.slot(slot), el_equation(&l, &field).scale(&rint(-1)));
        }
    }

    #[test]
    fn sine_gordon_variation_pieces_and_witness() {
        let sm = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).unwrap();
        let ctx = &sm.m2.ctx;
        let f = &sm.fields[0];
        let alpha = sm.m2.alpha_expr();
        let (m, le) = sm.eliminate().unwrap();
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

        let pieces = lagrangian_pieces(&le, f);
        let sum = pieces
            .iter()
            .fold(GradedExpr::zero(ctx), |acc, (_, p)| &acc + &p.clone());
        assert_eq!(sum, le);
        let dl: Vec<GradedExpr> = pieces.iter().map(|(_, p)| var.apply(p)).collect();

        // Variation of the X-kinetic piece.
        let exp0 = &(&em * &(&(&pp(1, 0) * &x(0, 1)) + &(&pp(0, 1) * &x(1, 0)))).scale(&rat(1, 4))
            + &(&ep * &(&(&pm(1, 0) * &x(0, 1)) + &(&pm(0, 1) * &x(1, 0)))).scale(&rat(1, 4));
        assert_eq!(dl[0], exp0);

        // Variation of the ψ₊-kinetic piece.
        let exp1 = &(&em * &(&(&pp(0, 1) * &x(1, 0)) - &(&pp(0, 0) * &x(1, 1)))).scale(&rat(-1, 4))
            + &(&ep
                * &(&sin(&(&alpha * &pp(0, 1))) - &cos(&(&(&alpha * &x(0, 1)) * &pp(0, 0))).scale(&rat(1, 2))))
                .scale(&rat(-1, 4));
        assert_eq!(dl[1], exp1);

        // Variation of the ψ₋-kinetic piece.
        let exp2 = &(&ep * &(&(&pm(1, 0) * &x(0, 1)) - &(&pm(0, 0) * &x(1, 1)))).scale(&rat(-1, 4))
            + &(&em
                * &(&sin(&(&alpha * &pm(1, 0))) - &cos(&(&(&alpha * &x(1, 0)) * &pm(0, 0))).scale(&rat(1, 2))))
                .scale(&rat(-1, 4));
        assert_eq!(dl[2], exp2);

        // Variation of the potential piece (after the double-angle rewrite).
        let exp3 = &sinx(&(&em * &pp(0, 0))).scale(&rat(1, 8)) + &sinx(&(&ep * &pm(0, 0))).scale(&rat(1, 8));
        assert_eq!(dl[3].double_angle(), exp3);

        // Variation of the two-fermion piece (after the double-angle rewrite).
        let exp4 = &(&ep
            * &(&cos(&(&(&alpha * &x(0, 1)) * &pp(0, 0))) + &sinx(&pm(0, 0)).scale(&rat(1, 2))))
            .scale(&rat(-1, 4))
            + &(&em
                * &(&sinx(&pp(0, 0)).scale(&rat(1, 2)) + &cos(&(&(&alpha * &x(1, 0)) * &pm(0, 0)))))
                .scale(&rat(-1, 4));
        assert_eq!(dl[4].double_angle(), exp4);

        // The five variations sum to an exact divergence of the boundary
        // terms, with no trigonometric rewriting needed.
        let total = var.apply(&le);
        let check = dl.iter().fold(GradedExpr::zero(ctx), |acc, d| &acc + d);
        assert_eq!(total, check);
        let (v_m, v_p) = sm.sine_gordon_witness().unwrap();
        assert!(quasi_residual(&total, &v_m, &v_p).is_zero());
    }

    #[test]
    fn sine_gordon_noether_currents() {
        let sm = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).unwrap();
        let ctx = &sm.m2.ctx;
        let f = &sm.fields[0];
        let alpha = sm.m2.alpha_expr();
        let (m, le) = sm.eliminate().unwrap();
        let var = sm
            .susy_variation()
            .map_images(&m)
            .without(&CompField::Graded(f.f.clone()));
        let (em, ep) = susy_params();
        let (v_m, v_p) = sm.sine_gordon_witness().unwrap();
        let sin = sin_half(&f.x);
        let x = |dm, dp| se(ctx, &ds(&f.x, dm, dp));
        let psi_p = ge(ctx, &f.psi_p);
        let psi_m = ge(ctx, &f.psi_m);

        let j_mm = noether_current(&le, &var, &em, Dir::M, &v_m);
        let j_mp = noether_current(&le, &var, &em, Dir::P, &v_p);
        let j_pm = noether_current(&le, &var, &ep, Dir::M, &v_m);
        let j_pp = noether_current(&le, &var, &ep, Dir::P, &v_p);

        assert_eq!(j_mm, (&alpha * &psi_m).scale_coeff(&sin).scale(&rat(1, 2)));
        assert_eq!(j_mp, (&x(1, 0) * &psi_p).scale(&rat(1, 2)));
        assert_eq!(j_pm, (&x(0, 1) * &psi_m).scale(&rat(1, 2)));
        assert_eq!(j_pp, (&alpha * &psi_p).scale_coeff(&sin).scale(&rat(1, 2)));

        // Degrees and twice-weights of the four currents.
        assert!(j_mm.degree().matches(Degree::SECOND));
        assert!(j_mp.degree().matches(Degree::SECOND));
        assert!(j_pm.degree().matches(Degree::FIRST));
        assert!(j_pp.degree().matches(Degree::FIRST));
        assert_eq!(j_mm.weight2(), Weighted::Homo(-1));
        assert_eq!(j_mp.weight2(), Weighted::Homo(3));
        assert_eq!(j_pm.weight2(), Weighted::Homo(-3));
        assert_eq!(j_pp.weight2(), Weighted::Homo(1));

        // Conservation: both divergences reduce to zero on shell.
        let sys = EomSystem::derive(&le, &sm.dynamical_fields()).unwrap();
        let div_m = &partial_dir(&j_mm, Dir::M, None) + &partial_dir(&j_mp, Dir::P, None);
        let div_p = &partial_dir(&j_pm, Dir::M, None) + &partial_dir(&j_pp, Dir::P, None);
        assert!(sys.reduce(&div_m).unwrap().is_zero());
        assert!(sys.reduce(&div_p).unwrap().is_zero());

        // Pre-reduction factorization into equation multiples, exactly.
        let e_x = &sys.eom("X").unwrap().display;
        let e_pp = &sys.eom("psi_p").unwrap().display;
        let e_pm = &sys.eom("psi_m").unwrap().display;
        let third_m = (&alpha * e_pm).scale_coeff(&sin).scale(&rat(1, 2));
        let third_p = (&alpha * e_pp).scale_coeff(&sin).scale(&rat(1, 2));
        let factored_m = &(&(e_pp * &x(1, 0)).scale(&rat(1, 2)) + &(e_x * &psi_p).scale(&rat(1, 2)))
            + &third_m;
        let factored_p = &(&(e_pm * &x(0, 1)).scale(&rat(1, 2)) + &(e_x * &psi_m).scale(&rat(1, 2)))
            + &third_p;
        assert_eq!(div_m, factored_m);
        assert_eq!(div_p, factored_p);

        // Against the double-angle form of the X-equation, the two-term
        // factorization misses exactly the double-angle of the third term.
        let two_term_m = &(e_pp * &x(1, 0)).scale(&rat(1, 2))
            + &(&e_x.double_angle() * &psi_p).scale(&rat(1, 2));
        assert_eq!(&div_m - &two_term_m, third_m.double_angle());
    }

    #[test]
    fn exotic_action_equations_susy_and_el() {
        let ex = ExoticModel::new(true, vec![]).unwrap();
        let ctx = &ex.m2.ctx;
        let fd = &ex.field;
        let y = |dm, dp| ge(ctx, &dg(&fd.y, dm, dp));
        let cp = |dm, dp| ge(ctx, &dg(&fd.chi_p, dm, dp));
        let cm = |dm, dp| ge(ctx, &dg(&fd.chi_m, dm, dp));
        let g = se(ctx, &fd.g);

        // Component density: −¼∂₋Y∂₊Y + ½χ₊∂₊χ₊ + ½χ₋∂₋χ₋ + G².
        let l = ex.component_lagrangian().unwrap();
        let expected = &(&(&y(1, 0) * &y(0, 1)).scale(&rat(-1, 4))
            + &(&cp(0, 0) * &cp(0, 1)).scale(&rat(1, 2)))
            + &(&(&cm(0, 0) * &cm(1, 0)).scale(&rat(1, 2)) + &(&g * &g));
        assert_eq!(l, expected);

        // Equations of motion: ½∂₋∂₊Y, ∂₊χ₊, ∂₋χ₋, 2G.
        let fields = [ex.dynamical_fields(), ex.auxiliary_fields()].concat();
        let sys = EomSystem::derive(&l, &fields).unwrap();
        assert_eq!(sys.eom("Y").unwrap().raw, y(1, 1).scale(&rat(1, 2)));
        assert_eq!(sys.eom("chi_p").unwrap().raw, cp(0, 1));
        assert_eq!(sys.eom("chi_m").unwrap().raw, cm(1, 0));
        assert_eq!(sys.eom("G").unwrap().raw, g.scale(&rint(2)));

        // Component supersymmetry read off δΨ.
        let (em, ep) = susy_params();
        let em = ge(ctx, &em);
        let ep = ge(ctx, &ep);
        let var = ex.susy_variation();
        assert_eq!(var.images[0].1, &(&em * &cp(0, 0)) + &(&ep * &cm(0, 0)));
        assert_eq!(
            var.images[1].1,
            &(&em * &y(1, 0)).scale(&rat(-1, 2)) + &(&ep * &g)
        );
        assert_eq!(
            var.images[2].1,
            &(&em * &g) - &(&ep * &y(0, 1)).scale(&rat(1, 2))
        );
        assert_eq!(
            var.images[3].1,
            &(&em * &cm(1, 0)).scale(&rat(-1, 2)) - &(&ep * &cp(0, 1)).scale(&rat(1, 2))
        );
        assert!(var.images[4].1.is_zero());

        // Superspace stationarity: 2G − θ₊∂₊χ₊ − θ₋∂₋χ₋ + ½θ₋θ₊∂₋∂₊Y + 2zR,
        // equal to the direct D₋D₊Ψ + D₊D₋Ψ.
        let el = ex.superspace_el();
        let tm = ex.m2.gen(&ex.m2.th_m);
        let tp = ex.m2.gen(&ex.m2.th_p);
        let z = ex.m2.gen(&ex.m2.z);
        let r = ge(ctx, fd.r.as_ref().unwrap());
        let expected_el = &(&g.scale(&rint(2)) - &(&tp * &cp(0, 1)))
            + &(&(&(&(&tm * &tp) * &y(1, 1)).scale(&rat(1, 2)) - &(&tm * &cm(1, 0)))
                + &(&z * &r).scale(&rint(2)));
        assert_eq!(el, expected_el);
        let direct = &ex.m2.d_m().apply(&ex.d_p_psi()) + &ex.m2.d_p().apply(&ex.d_m_psi());
        assert_eq!(el, direct);

        // The bottom slot of the equation is 2G, while the bottom slot of the
        // product D₋ΨD₊Ψ is χ₊χ₋ — the two operator expressions genuinely
        // differ at the lowest order.
        let product = &ex.d_m_psi() * &ex.d_p_psi();
        assert_eq!(product.slot((0, 0, 0)), &cp(0, 0) * &cm(0, 0));
        assert_eq!(el.slot((0, 0, 0)), g.scale(&rint(2)));

        // With an interaction switched on, the formal equation gains the
        // derivative of the potential.
        let a3 = Sym::param("a3");
        let ex3 = ExoticModel::new(false, vec![(3, a3.clone())]).unwrap();
        let el3 = ex3.superspace_el();
        let direct3 = &(&ex3.m2.d_m().apply(&ex3.d_p_psi())
            + &ex3.m2.d_p().apply(&ex3.d_m_psi()))
            + &ex3
                .psi()
                .pow(2)
                .scale_coeff(&CoeffExpr::sym(a3))
                .scale(&rat(1, 2));
        assert_eq!(el3, direct3);
    }

    #[test]
    fn exotic_currents_and_witnesses() {
        let ex = ExoticModel::new(false, vec![]).unwrap();
        let ctx = &ex.m2.ctx;
        let fd = &ex.field;
        let y = |dm, dp| ge(ctx, &dg(&fd.y, dm, dp));
        let cp = |dm, dp| ge(ctx, &dg(&fd.chi_p, dm, dp));
        let cm = |dm, dp| ge(ctx, &dg(&fd.chi_m, dm, dp));
        let g = |dm, dp| se(ctx, &ds(&fd.g, dm, dp));
        let (em, ep) = susy_params();
        let eme = ge(ctx, &em);
        let epe = ge(ctx, &ep);

        let l = ex.component_lagrangian().unwrap();
        let var = ex.susy_variation();
        let dl = var.apply(&l);

        // The augmented boundary terms witness invariance exactly, off shell.
        let (w_m, w_p) = ex.witness_exact();
        assert!(quasi_residual(&dl, &w_m, &w_p).is_zero());

        // The minimal boundary terms leave a residual proportional to the
        // G-sector, which the equations of motion then remove.
        let (v_m, v_p) = ex.witness_onshell();
        let residual = quasi_residual(&dl, &v_m, &v_p);
        let expected_residual = &(&eme
            * &(&(&g(1, 0) * &cm(0, 0)) + &(&g(0, 0) * &cm(1, 0))))
            .scale(&rat(-1, 2))
            + &(&epe * &(&(&g(0, 1) * &cp(0, 0)) + &(&g(0, 0) * &cp(0, 1)))).scale(&rat(-1, 2));
        assert_eq!(residual, expected_residual);
        let fields = [ex.dynamical_fields(), ex.auxiliary_fields()].concat();
        let sys = EomSystem::derive(&l, &fields).unwrap();
        assert!(sys.reduce(&residual).unwrap().is_zero());

        // After G-elimination the two nonzero currents and their weights.
        let (m, le) = ex.eliminate().unwrap();
        assert!(m.image_of_sym(ctx, &fd.g).is_zero());
        let var_on = var.map_images(&m).without(&CompField::Even(fd.g.clone()));
        let j_mm = noether_current(&le, &var_on, &em, Dir::M, &v_m);
        let j_mp = noether_current(&le, &var_on, &em, Dir::P, &v_p);
        let j_pm = noether_current(&le, &var_on, &ep, Dir::M, &v_m);
        let j_pp = noether_current(&le, &var_on, &ep, Dir::P, &v_p);
        assert!(j_mm.is_zero());
        assert!(j_pp.is_zero());
        assert_eq!(j_mp, (&y(1, 0) * &cp(0, 0)).scale(&rat(1, 2)));
        assert_eq!(j_pm, (&y(0, 1) * &cm(0, 0)).scale(&rat(1, 2)));
        assert!(j_mp.degree().matches(Degree::SECOND));
        assert!(j_pm.degree().matches(Degree::FIRST));
        assert_eq!(j_mp.weight2(), Weighted::Homo(3));
        assert_eq!(j_pm.weight2(), Weighted::Homo(-3));

        // Conservation on shell.
        let sys_on = EomSystem::derive(&le, &ex.dynamical_fields()).unwrap();
        let div_m = &partial_dir(&j_mm, Dir::M, None) + &partial_dir(&j_mp, Dir::P, None);
        let div_p = &partial_dir(&j_pm, Dir::M, None) + &partial_dir(&j_pp, Dir::P, None);
        assert!(sys_on.reduce(&div_m).unwrap().is_zero());
        assert!(sys_on.reduce(&div_p).unwrap().is_zero());
    }

    #[test]
    fn degree_constraints_and_z_obstruction() {
        // Even powers of the degree-(1,1) multiplet cannot enter the density.
        let err = ExoticModel::new(false, vec![(2, Sym::param("a2"))]).unwrap_err();
        assert!(err.contains("degree"));

        // The half-angle potential needs a single multiplet.
        assert!(SigmaModel::new(2, Metric::Identity, Potential::SineGordon).is_err());

        // ½Φ² of an unconstrained superfield is not integrable: the bare-z
        // coefficient is X·G.
        let m2 = M2::new(1);
        let (sq, obstruction) = quadratic_potential_counterexample(&m2);
        assert!(!is_integrable(&sq));
        let f = ScalarField::new(None, false);
        let expected = &GradedExpr::sym(&m2.ctx, f.x.clone())
            * &GradedExpr::gen(&m2.ctx, f.g.clone().unwrap());
        assert_eq!(obstruction, expected);
    }
}
