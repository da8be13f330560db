//! Graded differential calculus: left partial derivatives, derivations,
//! graded commutators, algebra morphisms and Jacobians.
//!
//! All derivatives are **left** derivatives: ∂_g strikes the first
//! occurrence of g in a monomial after sweeping past the prefix, picking up
//! one Koszul sign per swept factor. Derivations are finite sums
//! Σᵢ cᵢ·∂_{tᵢ} with the coefficient multiplying *from the left*; a
//! derivation is homogeneous of a declared degree, and the graded
//! commutator of derivations
//!
//! ```text
//!     [D₁, D₂] = D₁∘D₂ − (−1)^{⟨deg D₁, deg D₂⟩} D₂∘D₁
//! ```
//!
//! is computed extensionally — first-order operators are determined by
//! their action on the coordinates, so the commutator is reassembled from
//! its coordinate values.
//!
//! A [`Morphism`] is a graded algebra homomorphism given by images of
//! generators and scalar symbols. Pulling back an abstract function
//! application f(a) whose argument moves to a + Δ with Δ even and nilpotent
//! uses the finite Taylor series Σ (1/m!) f^{(m)}(a)·Δᵐ; this is also the
//! substitution engine used for auxiliary-field elimination and equation-of-
//! motion rewriting.

use std::collections::BTreeMap;

use crate::algebra::{Ctx, Gen, GradedExpr, GTerm};
use crate::berezin::GradedMatrix;
use crate::coeff::{App, Atom, CoeffExpr, CTerm, Dir, Family, Func, Sym};
use crate::grading::{koszul_sign, Degree};
use crate::{rint, Rat};

/// Left partial derivative with respect to a graded generator.
pub fn partial_gen(e: &GradedExpr, g: &Gen) -> GradedExpr {
    let mut out = Vec::new();
    for t in &e.terms {
        let idx = match t.mono.iter().position(|(h, _)| h == g) {
            Some(i) => i,
            None => continue,
        };
        let mut sign = 1i64;
        for (h, p) in &t.mono[..idx] {
            if koszul_sign(g.degree, h.degree) == -1 && p % 2 == 1 {
                sign = -sign;
            }
        }
        let p = t.mono[idx].1;
        let mut mono = t.mono.clone();
        if p == 1 {
            mono.remove(idx);
        } else {
            mono[idx].1 = p - 1;
        }
        out.push(GTerm {
            coef: t.coef.scale(&rint(sign * p as i64)),
            mono,
        });
    }
    GradedExpr::from_terms(&e.ctx, out)
}

/// Partial derivative with respect to an exact scalar symbol (degree (0,0),
/// so purely a coefficient operation).
pub fn partial_sym(e: &GradedExpr, s: &Sym) -> GradedExpr {
    GradedExpr::from_terms(
        &e.ctx,
        e.terms
            .iter()
            .map(|t| GTerm {
                coef: t.coef.dsym(s),
                mono: t.mono.clone(),
            })
            .collect(),
    )
}

/// Spacetime derivative ∂₋ or ∂₊: raises every derivative jet (scalar and
/// graded), differentiates the matching even coordinate to 1, and chains
/// through abstract function arguments. Degree (0,0): no signs.
pub fn partial_dir(e: &GradedExpr, dir: Dir, coord: Option<&Sym>) -> GradedExpr {
    let mut out = Vec::new();
    for t in &e.terms {
        // Coefficient part.
        let dc = t.coef.derive_dir(dir, coord);
        if !dc.is_zero() {
            out.push(GTerm {
                coef: dc,
                mono: t.mono.clone(),
            });
        }
        // Graded jets.
        for (k, (g, p)) in t.mono.iter().enumerate() {
            if !g.is_jet() {
                continue;
            }
            let mut mono = Vec::with_capacity(t.mono.len() + 1);
            for (j, (h, q)) in t.mono.iter().enumerate() {
                if j == k {
                    if *q > 1 {
                        mono.push((h.clone(), q - 1));
                    }
                    mono.push((g.jet_raised(dir), 1));
                } else {
                    mono.push((h.clone(), *q));
                }
            }
            out.push(GTerm {
                coef: t.coef.scale(&rint(*p as i64)),
                mono,
            });
        }
    }
    GradedExpr::from_terms(&e.ctx, out)
}

/// What a derivation differentiates with respect to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// A graded generator (odd coordinate, z, a parameter…).
    Gen(Gen),
    /// A spacetime direction together with its even coordinate symbol.
    Dir(Dir, Sym),
}

impl Target {
    pub fn degree(&self) -> Degree {
        match self {
            Target::Gen(g) => g.degree,
            Target::Dir(..) => Degree::ZERO,
        }
    }

    pub fn apply(&self, e: &GradedExpr) -> GradedExpr {
        match self {
            Target::Gen(g) => partial_gen(e, g),
            Target::Dir(d, s) => partial_dir(e, *d, Some(s)),
        }
    }
}

/// A coordinate of a graded space, as a differentiation target plus its
/// realization as an expression.
#[derive(Clone, Debug)]
pub struct CoordSpec {
    pub name: String,
    pub target: Target,
}

impl CoordSpec {
    pub fn even(name: &str, dir: Dir, sym: Sym) -> CoordSpec {
        CoordSpec {
            name: name.into(),
            target: Target::Dir(dir, sym),
        }
    }

    pub fn graded(name: &str, g: Gen) -> CoordSpec {
        CoordSpec {
            name: name.into(),
            target: Target::Gen(g),
        }
    }

    pub fn degree(&self) -> Degree {
        self.target.degree()
    }

    pub fn expr(&self, ctx: &Ctx) -> GradedExpr {
        match &self.target {
            Target::Gen(g) => GradedExpr::gen(ctx, g.clone()),
            Target::Dir(_, s) => GradedExpr::sym(ctx, s.clone()),
        }
    }
}

/// A homogeneous first-order graded derivation Σᵢ cᵢ·∂_{tᵢ}.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub name: String,
    pub degree: Degree,
    pub terms: Vec<(GradedExpr, Target)>,
}

impl Derivation {
    pub fn new(name: &str, degree: Degree, terms: Vec<(GradedExpr, Target)>) -> Derivation {
        let d = Derivation {
            name: name.into(),
            degree,
            terms,
        };
        debug_assert!(d.degree_consistent(), "inhomogeneous derivation {}", d.name);
        d
    }

    /// Every term's coefficient degree + target degree must equal the
    /// declared degree (zero coefficients match anything).
    pub fn degree_consistent(&self) -> bool {
        self.terms.iter().all(|(c, t)| {
            let want = self.degree.plus(t.degree());
            // deg(c·∂_t) = deg c + deg ∂_t and deg ∂_t = deg t.
            c.degree().matches(want)
        })
    }

    pub fn apply(&self, e: &GradedExpr) -> GradedExpr {
        let mut acc = GradedExpr::zero(&e.ctx);
        for (c, t) in &self.terms {
            let p = t.apply(e);
            if p.is_zero() {
                continue;
            }
            acc = &acc + &(c * &p);
        }
        acc
    }

    pub fn is_zero_on(&self, coords: &[CoordSpec], ctx: &Ctx) -> bool {
        coords.iter().all(|c| self.apply(&c.expr(ctx)).is_zero())
    }

    /// Extensional equality: same action on every coordinate and on a
    /// generic Leibniz probe supplied by the caller.
    pub fn agrees_with(&self, other: &Derivation, coords: &[CoordSpec], ctx: &Ctx, probe: &GradedExpr) -> bool {
        coords
            .iter()
            .all(|c| self.apply(&c.expr(ctx)) == other.apply(&c.expr(ctx)))
            && self.apply(probe) == other.apply(probe)
    }
}

/// Graded commutator [a, b] = a∘b − (−1)^{⟨deg a, deg b⟩} b∘a, reassembled
/// extensionally from its action on the coordinates.
pub fn graded_commutator(a: &Derivation, b: &Derivation, coords: &[CoordSpec], ctx: &Ctx) -> Derivation {
    let sign = rint(koszul_sign(a.degree, b.degree) as i64);
    let mut terms = Vec::new();
    for c in coords {
        let e = c.expr(ctx);
        let ab = a.apply(&b.apply(&e));
        let ba = b.apply(&a.apply(&e));
        let r = &ab - &ba.scale(&sign);
        if !r.is_zero() {
            terms.push((r, c.target.clone()));
        }
    }
    Derivation::new(
        &format!("[{},{}]", a.name, b.name),
        a.degree.plus(b.degree),
        terms,
    )
}

fn factorial(n: u32) -> Rat {
    let mut acc = rint(1);
    for k in 2..=n as i64 {
        acc *= rint(k);
    }
    acc
}

/// A graded algebra homomorphism determined by generator and scalar-symbol
/// images; identity on everything unmapped. Doubles as the kernel's
/// substitution engine.
#[derive(Clone, Debug, Default)]
pub struct Morphism {
    pub name: String,
    pub gen_images: BTreeMap<Gen, GradedExpr>,
    pub sym_images: BTreeMap<Sym, GradedExpr>,
}

impl Morphism {
    pub fn new(name: &str) -> Morphism {
        Morphism {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn map_gen(mut self, g: Gen, image: GradedExpr) -> Morphism {
        debug_assert!(
            image.degree().matches(g.degree),
            "image of {} must have degree {}",
            g.display(),
            g.degree
        );
        self.gen_images.insert(g, image);
        self
    }

    pub fn map_sym(mut self, s: Sym, image: GradedExpr) -> Morphism {
        debug_assert!(
            image.degree().matches(Degree::ZERO),
            "image of scalar symbol {} must be even of degree (0,0)",
            s.name
        );
        self.sym_images.insert(s, image);
        self
    }

    pub fn image_of_gen(&self, ctx: &Ctx, g: &Gen) -> GradedExpr {
        self.gen_images
            .get(g)
            .cloned()
            .unwrap_or_else(|| GradedExpr::gen(ctx, g.clone()))
    }

    pub fn image_of_sym(&self, ctx: &Ctx, s: &Sym) -> GradedExpr {
        self.sym_images
            .get(s)
            .cloned()
            .unwrap_or_else(|| GradedExpr::sym(ctx, s.clone()))
    }

    fn touches_coeff(&self, c: &CoeffExpr) -> bool {
        self.sym_images.keys().any(|s| c.contains_sym(s))
    }

    fn touches_atom(&self, a: &Atom) -> bool {
        match a {
            Atom::Sym(s) => self.sym_images.contains_key(s),
            Atom::App(app) => app.args.iter().any(|e| self.touches_coeff(e)),
        }
    }

    /// Pull back a commutative coefficient. The result is a graded
    /// expression because symbol images may have graded (even, nilpotent)
    /// parts.
    pub fn pullback_coeff(&self, ctx: &Ctx, c: &CoeffExpr) -> GradedExpr {
        let mut acc = GradedExpr::zero(ctx);
        for t in &c.terms {
            let mut untouched = CTerm {
                coef: t.coef.clone(),
                factors: vec![],
            };
            let mut prod: Option<GradedExpr> = None;
            for (a, e) in &t.factors {
                if !self.touches_atom(a) {
                    untouched.factors.push((a.clone(), *e));
                    continue;
                }
                let img = match a {
                    Atom::Sym(s) => self.image_of_sym(ctx, s),
                    Atom::App(app) => self.taylor(ctx, app),
                };
                assert!(
                    *e >= 0,
                    "cannot pull back a negative power of a substituted atom"
                );
                let p = img.pow(*e as u32);
                prod = Some(match prod {
                    None => p,
                    Some(acc) => &acc * &p,
                });
            }
            let base = GradedExpr::from_terms(
                ctx,
                vec![GTerm {
                    coef: CoeffExpr::from_terms(vec![untouched]),
                    mono: vec![],
                }],
            );
            let term = match prod {
                None => base,
                Some(p) => &base * &p,
            };
            acc = &acc + &term;
        }
        acc
    }

    /// Taylor-expand f(a + Δ) for even nilpotent Δ (finitely many terms).
    fn taylor(&self, ctx: &Ctx, app: &App) -> GradedExpr {
        let images: Vec<GradedExpr> = app
            .args
            .iter()
            .map(|arg| self.pullback_coeff(ctx, arg))
            .collect();
        let a0: Vec<CoeffExpr> = images.iter().map(|e| e.scalar_part()).collect();
        let mut power_lists: Vec<Vec<GradedExpr>> = Vec::with_capacity(images.len());
        for img in &images {
            let delta = img.graded_part();
            assert!(
                delta.degree().matches(Degree::ZERO),
                "graded remainder of a function argument must be even of degree (0,0)"
            );
            let mut powers = vec![GradedExpr::one(ctx)];
            let mut cur = GradedExpr::one(ctx);
            while !delta.is_zero() {
                cur = &cur * &delta;
                if cur.is_zero() {
                    break;
                }
                powers.push(cur.clone());
                assert!(
                    powers.len() <= 24,
                    "function-argument remainder does not appear to be nilpotent"
                );
            }
            power_lists.push(powers);
        }
        // Cartesian product over multi-indices m with Δᵢ^{mᵢ} ≠ 0.
        let mut acc = GradedExpr::zero(ctx);
        let mut idx = vec![0usize; power_lists.len()];
        loop {
            let mut coeff = rint(1);
            for &m in &idx {
                coeff /= factorial(m as u32);
            }
            let head = derived_head(app, &idx, &a0);
            let mut term = GradedExpr::scalar(ctx, head.scale(&coeff));
            for (i, &m) in idx.iter().enumerate() {
                if m > 0 {
                    term = &term * &power_lists[i][m];
                }
            }
            acc = &acc + &term;
            // Advance the multi-index odometer.
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return acc;
                }
                idx[pos] += 1;
                if idx[pos] < power_lists[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Pull back a graded expression: coefficients through
    /// [`Morphism::pullback_coeff`], generator monomials factor by factor in
    /// canonical order.
    pub fn pullback(&self, e: &GradedExpr) -> GradedExpr {
        let ctx = &e.ctx;
        let mut acc = GradedExpr::zero(ctx);
        for t in &e.terms {
            let mut term = self.pullback_coeff(ctx, &t.coef);
            for (g, p) in &t.mono {
                let img = self.image_of_gen(ctx, g);
                term = &term * &img.pow(*p);
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Geometric composition self∘inner: pull back first through self, then
    /// through inner ((φ∘ψ)* = ψ* ∘ φ*). The returned morphism's images are
    /// inner.pullback(self.image(c)) on the union of mapped coordinates.
    pub fn compose_after(&self, inner: &Morphism, ctx: &Ctx) -> Morphism {
        let mut out = Morphism::new(&format!("{}∘{}", self.name, inner.name));
        for g in self.gen_images.keys().chain(inner.gen_images.keys()) {
            let img = inner.pullback(&self.image_of_gen(ctx, g));
            out.gen_images.insert(g.clone(), img);
        }
        for s in self.sym_images.keys().chain(inner.sym_images.keys()) {
            let img = inner.pullback(&self.image_of_sym(ctx, s));
            out.sym_images.insert(s.clone(), img);
        }
        out
    }

    /// Jacobian with respect to an ordered coordinate list: entry (i,j) is
    /// the left derivative of the i-th coordinate image by the j-th
    /// coordinate. Row and column labels carry the coordinate degrees, so
    /// the result is a degree-zero graded matrix.
    pub fn jacobian(&self, ctx: &Ctx, coords: &[CoordSpec]) -> GradedMatrix {
        let degrees: Vec<Degree> = coords.iter().map(|c| c.degree()).collect();
        let entries: Vec<Vec<GradedExpr>> = coords
            .iter()
            .map(|ci| {
                let img = self.pullback(&ci.expr(ctx));
                coords
                    .iter()
                    .map(|cj| match &cj.target {
                        Target::Gen(g) => partial_gen(&img, g),
                        Target::Dir(_, s) => partial_sym(&img, s),
                    })
                    .collect()
            })
            .collect();
        GradedMatrix::new(ctx, degrees.clone(), degrees, entries)
    }

    /// Apply the morphism as a rewrite system until the expression stops
    /// changing (bounded; errors out if no fixpoint is reached).
    pub fn rewrite_fixpoint(&self, e: &GradedExpr, max_rounds: u32) -> Result<GradedExpr, String> {
        let mut cur = e.clone();
        for _ in 0..max_rounds {
            let next = self.pullback(&cur);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(format!(
            "rewriting by {} did not reach a fixpoint in {} rounds",
            self.name, max_rounds
        ))
    }
}

/// Derivative of the head of an application by the multi-index `m`,
/// evaluated at arguments `a0`.
fn derived_head(app: &App, m: &[usize], a0: &[CoeffExpr]) -> CoeffExpr {
    match app.func.family {
        Family::Opaque => {
            let mut deriv = app.deriv.clone();
            for (i, &k) in m.iter().enumerate() {
                deriv[i] += k as u32;
            }
            CoeffExpr::app(App {
                func: app.func.clone(),
                deriv,
                args: a0.to_vec(),
            })
        }
        Family::Sin | Family::Cos => {
            let base = if app.func.family == Family::Sin { 0 } else { 1 };
            let k = (base + m[0]) % 4;
            let head = match k {
                0 => (CoeffExpr::app(App::new(Func::sin(), a0.to_vec())), false),
                1 => (CoeffExpr::app(App::new(Func::cos(), a0.to_vec())), false),
                2 => (CoeffExpr::app(App::new(Func::sin(), a0.to_vec())), true),
                _ => (CoeffExpr::app(App::new(Func::cos(), a0.to_vec())), true),
            };
            if head.1 {
                -head.0
            } else {
                head.0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Context;
    use crate::rat;

    fn ctx() -> Ctx {
        Context::new(1, &["z", "th_m", "th_p"])
    }
    fn th_m() -> Gen {
        Gen::graded_coord(1, Degree::SECOND, -1)
    }
    fn th_p() -> Gen {
        Gen::graded_coord(2, Degree::FIRST, 1)
    }
    fn xm() -> Sym {
        Sym::coord("xm", -2)
    }

    #[test]
    fn left_derivative_sweeps_with_signs() {
        let c = ctx();
        let tm = GradedExpr::gen(&c, th_m());
        let tp = GradedExpr::gen(&c, th_p());
        let f = GradedExpr::gen(&c, Gen::jet("F", None, 0, 0, Degree::BOTH, 0));
        // ∂θ₊(θ₋θ₊) = θ₋·(sign of sweeping ∂θ₊ past θ₋: +1) … θ₊ commutes with θ₋.
        assert_eq!(partial_gen(&(&tm * &tp), &th_p()), tm);
        // ∂F(θ₋θ₊F) = +θ₋θ₊ (two anticommuting sweeps cancel).
        assert_eq!(partial_gen(&(&(&tm * &tp) * &f), &Gen::jet("F", None, 0, 0, Degree::BOTH, 0)), &tm * &tp);
        // ∂θ₋(zθ₋) = −z (one anticommuting sweep past z).
        let z = GradedExpr::gen(&c, Gen::graded_coord(0, Degree::BOTH, 0));
        assert_eq!(partial_gen(&(&z * &tm), &th_m()), -&z);
        // Power rule on a non-nilpotent generator: ∂F(F²) = 2F.
        let c3 = c.with_z_order(3);
        let f3 = GradedExpr::gen(&c3, Gen::jet("F", None, 0, 0, Degree::BOTH, 0));
        assert_eq!(partial_gen(&f3.pow(2), &Gen::jet("F", None, 0, 0, Degree::BOTH, 0)), f3.scale(&rat(2, 1)));
    }

    #[test]
    fn spacetime_derivative_leibniz_over_jets() {
        let c = ctx();
        // ∂₋(ψ₊·∂₊X) = ∂₋ψ₊·∂₊X + ψ₊·∂₋∂₊X
        let psi = Gen::jet("psi_p", None, 0, 0, Degree::SECOND, 1);
        let e = GradedExpr::gen(&c, psi.clone()).scale_coeff(&CoeffExpr::sym(Sym::jet("X", None, 0, 1, 0)));
        let d = partial_dir(&e, Dir::M, None);
        let want = &GradedExpr::gen(&c, psi.jet_raised(Dir::M))
            .scale_coeff(&CoeffExpr::sym(Sym::jet("X", None, 0, 1, 0)))
            + &GradedExpr::gen(&c, psi).scale_coeff(&CoeffExpr::sym(Sym::jet("X", None, 1, 1, 0)));
        assert_eq!(d, want);
    }

    #[test]
    fn commutator_of_supercharge_like_operators() {
        // D = ∂θ₋ + ½θ₋∂₋ squares to ½[D,D] = ½·2·D² = P₋ on x⁻.
        let c = ctx();
        let coords = vec![
            CoordSpec::even("xm", Dir::M, xm()),
            CoordSpec::graded("th_m", th_m()),
        ];
        let d = Derivation::new(
            "D",
            Degree::SECOND,
            vec![
                (GradedExpr::one(&c), Target::Gen(th_m())),
                (
                    GradedExpr::gen(&c, th_m()).scale(&rat(1, 2)),
                    Target::Dir(Dir::M, xm()),
                ),
            ],
        );
        let dd = graded_commutator(&d, &d, &coords, &c);
        // [D,D](x⁻) = 2·D(D(x⁻)) = 2·D(½θ₋) = 1; [D,D](θ₋) = 0.
        assert_eq!(dd.apply(&GradedExpr::sym(&c, xm())), GradedExpr::one(&c));
        assert!(dd.apply(&GradedExpr::gen(&c, th_m())).is_zero());
        // And D is Leibniz: D(θ₋·x⁻) = x⁻ − ↯ sign … spot value.
        let probe = &GradedExpr::gen(&c, th_m()) * &GradedExpr::sym(&c, xm());
        let dp = d.apply(&probe);
        // D(θ₋ x⁻) = (∂θ₋θ₋)·x⁻ + ½θ₋∂₋(θ₋ x⁻) = x⁻ + ½θ₋·θ₋·1 = x⁻.
        assert_eq!(dp, GradedExpr::sym(&c, xm()));
    }

    #[test]
    fn taylor_expansion_of_sin_under_nilpotent_shift() {
        let c = ctx();
        let x = Sym::jet("X", None, 0, 0, 0);
        let half_x = CoeffExpr::sym(x.clone()).scale(&rat(1, 2));
        let sin_half = GradedExpr::scalar(&c, CoeffExpr::app(App::new(Func::sin(), vec![half_x])));
        let psi = GradedExpr::gen(&c, Gen::jet("psi_p", None, 0, 0, Degree::SECOND, 1));
        let tm = GradedExpr::gen(&c, th_m());
        let shift = &tm * &psi; // θ₋ψ₊, even, squares to zero
        let m = Morphism::new("shift").map_sym(x.clone(), &GradedExpr::sym(&c, x.clone()) + &shift);
        let got = m.pullback(&sin_half);
        // sin((X+θ₋ψ₊)/2) = sin(X/2) + ½θ₋ψ₊·cos(X/2)
        let cos_half = CoeffExpr::app(App::new(
            Func::cos(),
            vec![CoeffExpr::sym(x.clone()).scale(&rat(1, 2))],
        ));
        let want = &sin_half + &shift.scale_coeff(&cos_half.scale(&rat(1, 2)));
        assert_eq!(got, want);
    }

    #[test]
    fn pullback_respects_products() {
        // φ*(ab) = φ*(a)·φ*(b) on a sign-sensitive pair.
        let c = ctx();
        let tm = GradedExpr::gen(&c, th_m());
        let tp = GradedExpr::gen(&c, th_p());
        let eps = Gen::param("eps_m", Degree::SECOND, -1);
        let m = Morphism::new("t")
            .map_gen(th_m(), &tm + &GradedExpr::gen(&c, eps.clone()));
        let a = &tm * &tp;
        let b = &tp * &tm;
        assert_eq!(m.pullback(&(&a * &b)), &m.pullback(&a) * &m.pullback(&b));
        // Nontrivial image: (θ₋+ε₋)θ₊.
        let want = &(&tm + &GradedExpr::gen(&c, eps)) * &tp;
        assert_eq!(m.pullback(&a), want);
    }

    #[test]
    fn jacobian_of_a_shear() {
        // x⁻ ↦ x⁻ + ½ε₋θ₋ : entry (x⁻ row, θ₋ col) is the left derivative
        // ∂θ₋(½ε₋θ₋) = −½ε₋.
        let c = ctx();
        let eps = Gen::param("eps_m", Degree::SECOND, -1);
        let img = &GradedExpr::sym(&c, xm())
            + &(&GradedExpr::gen(&c, eps.clone()) * &GradedExpr::gen(&c, th_m())).scale(&rat(1, 2));
        let m = Morphism::new("shear").map_sym(xm(), img);
        let coords = vec![
            CoordSpec::even("xm", Dir::M, xm()),
            CoordSpec::graded("th_m", th_m()),
        ];
        let j = m.jacobian(&c, &coords);
        assert!(j.check_degree_zero().is_ok());
        assert_eq!(j.entries[0][0], GradedExpr::one(&c));
        assert_eq!(
            j.entries[0][1],
            GradedExpr::gen(&c, eps).scale(&rat(-1, 2))
        );
        assert_eq!(j.entries[1][0], GradedExpr::zero(&c));
        assert_eq!(j.entries[1][1], GradedExpr::one(&c));
    }

    #[test]
    fn rewrite_fixpoint_terminates_on_oriented_rules() {
        // F ↦ −½·a·sin(X/2) has no F on the right: one round reaches the fixpoint.
        let c = ctx();
        let f = Gen::jet("F", None, 0, 0, Degree::BOTH, 0);
        let alpha = Gen::param("alpha", Degree::BOTH, 0);
        let x = Sym::jet("X", None, 0, 0, 0);
        let rhs = GradedExpr::gen(&c, alpha).scale_coeff(
            &CoeffExpr::app(App::new(Func::sin(), vec![CoeffExpr::sym(x).scale(&rat(1, 2))]))
                .scale(&rat(-1, 2)),
        );
        let m = Morphism::new("eliminate").map_gen(f.clone(), rhs.clone());
        let e = GradedExpr::gen(&c, f).pow(1);
        let out = m.rewrite_fixpoint(&e, 8).unwrap();
        assert_eq!(out, rhs);
    }
}
