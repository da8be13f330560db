//! The commutative coefficient ring: exact-rational polynomials in scalar
//! symbols, field jets and abstract function applications.
//!
//! Everything of ℤ₂×ℤ₂-degree (0,0) that never picks up a Koszul sign lives
//! here: spacetime coordinates, scalar parameters, degree-(0,0) component
//! fields together with their derivative jets, and applications of abstract
//! functions (a symmetric metric `g`, a potential `W`, coordinate-change
//! coefficient functions, …) including the trigonometric pair sin/cos whose
//! derivatives close on each other.
//!
//! Expressions are kept in a canonical sum-of-products form: each term is a
//! rational coefficient times a sorted list of `(atom, exponent)` factors,
//! terms are sorted by their factor lists and merged. Equality of canonical
//! forms is structural equality, so every identity check in the kernel
//! reduces to "normalize the difference and compare with zero".
//!
//! Negative exponents are permitted only on atoms constructed as invertible
//! (an underived invertible function symbol, or an invertible scalar symbol
//! such as a boost scale). [`CoeffExpr::recip`] enforces this.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::{rat, rint, Rat};

/// What kind of scalar symbol an [`Sym`] is; drives spacetime derivatives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymKind {
    /// An even coordinate (x⁻, x⁺, t, s). Spacetime derivatives see it.
    Coord,
    /// A derivative jet of a degree-(0,0) component field: `idx` is an
    /// optional target index, `dm`/`dp` count applied ∂₋/∂₊ derivatives.
    Jet { idx: Option<u8>, dm: u16, dp: u16 },
    /// An inert scalar parameter (couplings, metric entries, shifts).
    Param,
}

/// A scalar symbol. `weight2` is twice the boost weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym {
    pub name: String,
    pub kind: SymKind,
    pub weight2: i32,
    pub invertible: bool,
}

impl Sym {
    /// An even coordinate symbol with the given boost weight.
    pub fn coord(name: &str, weight2: i32) -> Sym {
        Sym {
            name: name.into(),
            kind: SymKind::Coord,
            weight2,
            invertible: false,
        }
    }

    /// An inert scalar parameter of weight 0.
    pub fn param(name: &str) -> Sym {
        Sym {
            name: name.into(),
            kind: SymKind::Param,
            weight2: 0,
            invertible: false,
        }
    }

    /// An invertible scalar parameter (e.g. a boost scale): negative powers
    /// of it are legal.
    pub fn param_invertible(name: &str) -> Sym {
        Sym {
            invertible: true,
            ..Sym::param(name)
        }
    }

    /// An inert scalar parameter carrying a boost weight, e.g. a translation
    /// parameter shifting a weighted coordinate.
    pub fn param_weighted(name: &str, weight2: i32) -> Sym {
        Sym {
            weight2,
            ..Sym::param(name)
        }
    }

    /// The (dm, dp) derivative jet of a scalar component field whose
    /// undifferentiated symbol has weight `base_weight2`. Each ∂₋ raises the
    /// weight by 1, each ∂₊ lowers it by 1.
    pub fn jet(name: &str, idx: Option<u8>, dm: u16, dp: u16, base_weight2: i32) -> Sym {
        Sym {
            name: name.into(),
            kind: SymKind::Jet { idx, dm, dp },
            weight2: base_weight2 + 2 * dm as i32 - 2 * dp as i32,
            invertible: false,
        }
    }

    /// Jet symbol with one more derivative in the given direction.
    pub fn jet_raised(&self, dir: Dir) -> Sym {
        match self.kind {
            SymKind::Jet { idx, dm, dp } => {
                let (dm, dp) = match dir {
                    Dir::M => (dm + 1, dp),
                    Dir::P => (dm, dp + 1),
                };
                let base = self.weight2 - 2 * (m_of(&self.kind)) + 2 * (p_of(&self.kind));
                Sym::jet(&self.name, idx, dm, dp, base)
            }
            _ => panic!("jet_raised on non-jet symbol {}", self.name),
        }
    }
}

fn m_of(k: &SymKind) -> i32 {
    match k {
        SymKind::Jet { dm, .. } => *dm as i32,
        _ => 0,
    }
}
fn p_of(k: &SymKind) -> i32 {
    match k {
        SymKind::Jet { dp, .. } => *dp as i32,
        _ => 0,
    }
}

/// A spacetime direction: `M` is ∂₋ = ∂/∂x⁻ (weight +1), `P` is ∂₊ (weight −1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    M,
    P,
}

impl Dir {
    pub fn both() -> [Dir; 2] {
        [Dir::M, Dir::P]
    }
    pub fn suffix(self) -> &'static str {
        match self {
            Dir::M => "-",
            Dir::P => "+",
        }
    }
}

/// How an abstract function behaves under differentiation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Derivatives are recorded as a multi-index on the head symbol.
    Opaque,
    /// sin′ = cos on the same argument.
    Sin,
    /// cos′ = −sin on the same argument.
    Cos,
}

/// An abstract function head.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Func {
    pub name: String,
    pub family: Family,
    pub weight2: i32,
    pub invertible: bool,
}

impl Func {
    pub fn opaque(name: &str) -> Func {
        Func {
            name: name.into(),
            family: Family::Opaque,
            weight2: 0,
            invertible: false,
        }
    }

    /// An opaque function declared invertible: its *underived* applications
    /// may carry negative exponents.
    pub fn opaque_invertible(name: &str) -> Func {
        Func {
            invertible: true,
            ..Func::opaque(name)
        }
    }

    pub fn sin() -> Func {
        Func {
            name: "sin".into(),
            family: Family::Sin,
            weight2: 0,
            invertible: false,
        }
    }

    pub fn cos() -> Func {
        Func {
            name: "cos".into(),
            family: Family::Cos,
            weight2: 0,
            invertible: false,
        }
    }
}

/// An application `f^{(deriv)}(args)`. For sin/cos the multi-index stays
/// `[0]` — their derivatives rewrite the head instead.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct App {
    pub func: Func,
    pub deriv: Vec<u32>,
    pub args: Vec<CoeffExpr>,
}

impl App {
    pub fn new(func: Func, args: Vec<CoeffExpr>) -> App {
        let deriv = vec![0; args.len()];
        App { func, deriv, args }
    }

    pub fn is_invertible(&self) -> bool {
        self.func.invertible && self.deriv.iter().all(|&d| d == 0)
    }

    /// ∂f/∂(argᵢ) as a coefficient expression (the head part of the chain
    /// rule; the caller multiplies by the derivative of the argument).
    pub fn head_derivative(&self, i: usize) -> CoeffExpr {
        match self.func.family {
            Family::Opaque => {
                let mut d = self.deriv.clone();
                d[i] += 1;
                CoeffExpr::atom(Atom::App(App {
                    func: self.func.clone(),
                    deriv: d,
                    args: self.args.clone(),
                }))
            }
            Family::Sin => {
                debug_assert_eq!(self.args.len(), 1);
                CoeffExpr::atom(Atom::App(App::new(Func::cos(), self.args.clone())))
            }
            Family::Cos => {
                debug_assert_eq!(self.args.len(), 1);
                -CoeffExpr::atom(Atom::App(App::new(Func::sin(), self.args.clone())))
            }
        }
    }
}

/// A multiplicative atom of the coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Sym(Sym),
    App(App),
}

impl Atom {
    pub fn is_invertible(&self) -> bool {
        match self {
            Atom::Sym(s) => s.invertible,
            Atom::App(a) => a.is_invertible(),
        }
    }

    pub fn weight2(&self) -> i32 {
        match self {
            Atom::Sym(s) => s.weight2,
            // Abstract functions carry the weight of their value; every
            // argument used in this kernel has weight 0, so the derivative
            // multi-index does not shift the weight.
            Atom::App(a) => a.func.weight2,
        }
    }
}

/// One canonical term: rational coefficient times sorted `(atom, exp)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CTerm {
    pub coef: Rat,
    pub factors: Vec<(Atom, i32)>,
}

impl CTerm {
    fn constant(c: Rat) -> CTerm {
        CTerm {
            coef: c,
            factors: vec![],
        }
    }

    fn mul(&self, other: &CTerm) -> CTerm {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => {
                    factors.push(self.factors[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push(other.factors[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.factors[i].1 + other.factors[j].1;
                    if e != 0 {
                        factors.push((self.factors[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        CTerm {
            coef: &self.coef * &other.coef,
            factors,
        }
    }

    fn weight2(&self) -> i32 {
        self.factors.iter().map(|(a, e)| a.weight2() * e).sum()
    }
}

/// Weight classification of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weighted {
    /// The zero expression (homogeneous of every weight).
    Zero,
    /// Homogeneous of twice-weight `w2`.
    Homo(i32),
    /// Inhomogeneous.
    Mixed,
}

/// A canonical commutative polynomial (with declared-invertible negative
/// powers) over [`Atom`]s, with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CoeffExpr {
    pub terms: Vec<CTerm>,
}

impl CoeffExpr {
    pub fn zero() -> CoeffExpr {
        CoeffExpr { terms: vec![] }
    }

    pub fn one() -> CoeffExpr {
        CoeffExpr::constant(rint(1))
    }

    pub fn constant(c: Rat) -> CoeffExpr {
        if c.is_zero() {
            CoeffExpr::zero()
        } else {
            CoeffExpr {
                terms: vec![CTerm::constant(c)],
            }
        }
    }

    pub fn int(n: i64) -> CoeffExpr {
        CoeffExpr::constant(rint(n))
    }

    pub fn frac(n: i64, d: i64) -> CoeffExpr {
        CoeffExpr::constant(rat(n, d))
    }

    pub fn atom(a: Atom) -> CoeffExpr {
        CoeffExpr {
            terms: vec![CTerm {
                coef: rint(1),
                factors: vec![(a, 1)],
            }],
        }
    }

    pub fn sym(s: Sym) -> CoeffExpr {
        CoeffExpr::atom(Atom::Sym(s))
    }

    pub fn app(a: App) -> CoeffExpr {
        CoeffExpr::atom(Atom::App(a))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rat().map(|r| r.is_one()).unwrap_or(false)
    }

    /// The value as a plain rational, if the expression is constant.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(rint(0));
        }
        if self.terms.len() == 1 && self.terms[0].factors.is_empty() {
            return Some(self.terms[0].coef.clone());
        }
        None
    }

    /// Normalize a raw term list into canonical form.
    pub fn from_terms(mut terms: Vec<CTerm>) -> CoeffExpr {
        terms.sort_by(|a, b| a.factors.cmp(&b.factors));
        let mut out: Vec<CTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.coef.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.factors == t.factors => {
                    last.coef += &t.coef;
                    if last.coef.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        CoeffExpr { terms: out }
    }

    pub fn scale(&self, c: &Rat) -> CoeffExpr {
        if c.is_zero() {
            return CoeffExpr::zero();
        }
        CoeffExpr {
            terms: self
                .terms
                .iter()
                .map(|t| CTerm {
                    coef: &t.coef * c,
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: i64) -> CoeffExpr {
        if e == 0 {
            return CoeffExpr::one();
        }
        if e < 0 {
            return self.recip().expect("negative power of non-invertible expression").pow(-e);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse. Defined for nonzero constants and for single
    /// terms whose atoms are all invertible.
    pub fn recip(&self) -> Result<CoeffExpr, String> {
        if let Some(r) = self.as_rat() {
            if r.is_zero() {
                return Err("division by zero".into());
            }
            return Ok(CoeffExpr::constant(r.recip()));
        }
        if self.terms.len() != 1 {
            return Err(format!("cannot invert a {}-term expression", self.terms.len()));
        }
        let t = &self.terms[0];
        for (a, _) in &t.factors {
            if !a.is_invertible() {
                return Err(format!("atom {} is not invertible", atom_display(a)));
            }
        }
        Ok(CoeffExpr {
            terms: vec![CTerm {
                coef: t.coef.recip(),
                factors: t.factors.iter().map(|(a, e)| (a.clone(), -e)).collect(),
            }],
        })
    }

    /// Generic derivation: extend `rule` (defined on scalar symbols) to the
    /// whole ring by linearity, the Leibniz rule and the chain rule through
    /// function applications.
    pub fn derive_with(&self, rule: &dyn Fn(&Sym) -> CoeffExpr) -> CoeffExpr {
        let mut out = CoeffExpr::zero();
        for t in &self.terms {
            for (k, (atom, e)) in t.factors.iter().enumerate() {
                let datom = match atom {
                    Atom::Sym(s) => rule(s),
                    Atom::App(app) => {
                        let mut acc = CoeffExpr::zero();
                        for i in 0..app.args.len() {
                            let darg = app.args[i].derive_with(rule);
                            if darg.is_zero() {
                                continue;
                            }
                            acc = &acc + &(&app.head_derivative(i) * &darg);
                        }
                        acc
                    }
                };
                if datom.is_zero() {
                    continue;
                }
                // coef·e·atom^{e−1}·datom·(other factors)
                let mut rest = CTerm {
                    coef: &t.coef * rint(*e as i64),
                    factors: vec![],
                };
                for (j, (a2, e2)) in t.factors.iter().enumerate() {
                    let exp = if j == k { e2 - 1 } else { *e2 };
                    if exp != 0 {
                        rest.factors.push((a2.clone(), exp));
                    }
                }
                let rest = CoeffExpr::from_terms(vec![rest]);
                out = &out + &(&rest * &datom);
            }
        }
        out
    }

    /// Partial derivative with respect to one exact scalar symbol.
    pub fn dsym(&self, s: &Sym) -> CoeffExpr {
        self.derive_with(&|u: &Sym| {
            if u == s {
                CoeffExpr::one()
            } else {
                CoeffExpr::zero()
            }
        })
    }

    /// Spacetime derivative in direction `dir`: jets gain one derivative
    /// index, the matching coordinate symbol (if any) differentiates to 1,
    /// and abstract functions follow the chain rule.
    pub fn derive_dir(&self, dir: Dir, coord: Option<&Sym>) -> CoeffExpr {
        self.derive_with(&|u: &Sym| match &u.kind {
            SymKind::Jet { .. } => CoeffExpr::sym(u.jet_raised(dir)),
            SymKind::Coord => {
                if Some(u) == coord {
                    CoeffExpr::one()
                } else {
                    CoeffExpr::zero()
                }
            }
            SymKind::Param => CoeffExpr::zero(),
        })
    }

    /// Collect every scalar symbol occurring anywhere, recursing into
    /// function arguments (so field symbols inside W(X) are found).
    pub fn collect_syms(&self, out: &mut std::collections::BTreeSet<Sym>) {
        for t in &self.terms {
            for (a, _) in &t.factors {
                match a {
                    Atom::Sym(s) => {
                        out.insert(s.clone());
                    }
                    Atom::App(app) => {
                        for arg in &app.args {
                            arg.collect_syms(out);
                        }
                    }
                }
            }
        }
    }

    /// Whether `s` occurs anywhere (including inside function arguments).
    pub fn contains_sym(&self, s: &Sym) -> bool {
        fn atom_contains(a: &Atom, s: &Sym) -> bool {
            match a {
                Atom::Sym(u) => u == s,
                Atom::App(app) => app.args.iter().any(|e| e.contains_sym(s)),
            }
        }
        self.terms
            .iter()
            .any(|t| t.factors.iter().any(|(a, _)| atom_contains(a, s)))
    }

    pub fn weight2(&self) -> Weighted {
        if self.is_zero() {
            return Weighted::Zero;
        }
        let w = self.terms[0].weight2();
        if self.terms.iter().all(|t| t.weight2() == w) {
            Weighted::Homo(w)
        } else {
            Weighted::Mixed
        }
    }

    /// Rewrite `sin(u)·cos(u) ↦ ½·sin(u+u)` inside each term (used to match
    /// double-angle forms when comparing with displayed equations; the
    /// canonical form itself never applies trigonometric identities).
    pub fn double_angle(&self) -> CoeffExpr {
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut sin_at: Option<usize> = None;
            let mut cos_at: Option<usize> = None;
            for (i, (a, e)) in t.factors.iter().enumerate() {
                if let Atom::App(app) = a {
                    if *e >= 1 {
                        match app.func.family {
                            Family::Sin => sin_at = Some(i),
                            Family::Cos => cos_at = Some(i),
                            Family::Opaque => {}
                        }
                    }
                }
            }
            let (si, ci) = match (sin_at, cos_at) {
                (Some(si), Some(ci)) => (si, ci),
                _ => {
                    out.push(t.clone());
                    continue;
                }
            };
            let (s_app, s_exp) = match &t.factors[si] {
                (Atom::App(a), e) => (a.clone(), *e),
                _ => unreachable!(),
            };
            let (c_app, c_exp) = match &t.factors[ci] {
                (Atom::App(a), e) => (a.clone(), *e),
                _ => unreachable!(),
            };
            if s_app.args != c_app.args {
                out.push(t.clone());
                continue;
            }
            let k = s_exp.min(c_exp);
            let doubled = App::new(Func::sin(), vec![&s_app.args[0] + &s_app.args[0]]);
            let mut factors: Vec<(Atom, i32)> = Vec::new();
            for (i, (a, e)) in t.factors.iter().enumerate() {
                let e = if i == si {
                    e - k
                } else if i == ci {
                    e - k
                } else {
                    *e
                };
                if e != 0 {
                    factors.push((a.clone(), e));
                }
            }
            factors.push((Atom::App(doubled), k));
            out.push(CTerm {
                coef: &t.coef * rat(1, 2).pow(k),
                factors,
            });
        }
        // Re-normalize: exponent merging may have disturbed factor order.
        CoeffExpr::from_terms(
            out.into_iter()
                .map(|mut t| {
                    t.factors.sort_by(|a, b| a.0.cmp(&b.0));
                    t
                })
                .collect(),
        )
    }
}

impl std::ops::Add for &CoeffExpr {
    type Output = CoeffExpr;
    fn add(self, rhs: &CoeffExpr) -> CoeffExpr {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        CoeffExpr::from_terms(terms)
    }
}

impl std::ops::Sub for &CoeffExpr {
    type Output = CoeffExpr;
    fn sub(self, rhs: &CoeffExpr) -> CoeffExpr {
        self + &(-rhs.clone())
    }
}

impl std::ops::Neg for CoeffExpr {
    type Output = CoeffExpr;
    fn neg(mut self) -> CoeffExpr {
        for t in &mut self.terms {
            t.coef = -t.coef.clone();
        }
        self
    }
}

impl std::ops::Mul for &CoeffExpr {
    type Output = CoeffExpr;
    fn mul(self, rhs: &CoeffExpr) -> CoeffExpr {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.push(a.mul(b));
            }
        }
        CoeffExpr::from_terms(terms)
    }
}

fn rational_display(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn sym_display(s: &Sym) -> String {
    match &s.kind {
        SymKind::Jet { idx, dm, dp } if *dm > 0 || *dp > 0 => {
            let base = match idx {
                Some(i) => format!("{}{}", s.name, i),
                None => s.name.clone(),
            };
            format!("{}_({},{})", base, dm, dp)
        }
        SymKind::Jet { idx: Some(i), .. } => format!("{}{}", s.name, i),
        _ => s.name.clone(),
    }
}

fn atom_display(a: &Atom) -> String {
    match a {
        Atom::Sym(s) => sym_display(s),
        Atom::App(app) => {
            let args: Vec<String> = app.args.iter().map(|e| format!("{}", e)).collect();
            let d = if app.deriv.iter().any(|&x| x > 0) {
                format!(
                    "^({})",
                    app.deriv
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            } else {
                String::new()
            };
            format!("{}{}({})", app.func.name, d, args.join(","))
        }
    }
}

impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coef.is_negative();
            let mag = t.coef.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || t.factors.is_empty() {
                parts.push(rational_display(&mag));
            }
            for (a, e) in &t.factors {
                if *e == 1 {
                    parts.push(atom_display(a));
                } else {
                    parts.push(format!("{}^{}", atom_display(a), e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
