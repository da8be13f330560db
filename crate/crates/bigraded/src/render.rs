//! Text, JSON, and LaTeX rendering of graded expressions.
//!
//! The text format is a parenthesized prefix form, one term per line, designed
//! so that `parse(serialize(e)) == e` for every canonical expression:
//!
//! ```text
//! (bigraded-expr 1 (ctx 1 (coords z th_m th_p) (rel (gp alpha 11 0) 1)))
//! (term (k (c -1/2 (f (sym X 0 0 (jet _ 1 1)) 1))) (g (gj psi_p _ 0 0 01 1) 1))
//! ```
//!
//! The header line pins the format version and the algebra context (z-order,
//! graded-coordinate names, square relations); each following line is one
//! canonical term: a commutative coefficient `(k cterm*)` times a generator
//! monomial `(g gen pow)*`. The zero expression is a bare header. Because the
//! reader feeds the parsed terms back through the normalizing constructors,
//! comparing two serializations is the same as comparing the canonical forms.
//!
//! [`to_json`] mirrors the identical tree as JSON for machine consumers, and
//! [`to_latex`] / [`latex_matrix`] produce display forms that follow the
//! conventions used throughout this project's documentation: `z` leftmost
//! among graded factors, `θ₋` before `θ₊`, light-cone indices as `x^±` /
//! `∂_∓`, spinor indices as subscripts (`ψ_+`).

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{Context, Ctx, Gen, GenBucket, GradedExpr, GTerm, Mono};
use crate::berezin::GradedMatrix;
use crate::coeff::{App, Atom, CTerm, CoeffExpr, Family, Func, Sym, SymKind};
use crate::grading::Degree;
use crate::Rat;

/// Format version written in the header and required by the parser.
pub const FORMAT_VERSION: u32 = 1;

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

fn w_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn w_deg(d: Degree) -> String {
    let (a, b) = d.parts();
    format!("{a}{b}")
}

fn w_idx(idx: Option<u8>) -> String {
    match idx {
        Some(i) => i.to_string(),
        None => "_".into(),
    }
}

fn w_sym(s: &Sym, out: &mut String) {
    let kind = match &s.kind {
        SymKind::Coord => "coord".to_string(),
        SymKind::Param => "param".to_string(),
        SymKind::Jet { idx, dm, dp } => format!("(jet {} {} {})", w_idx(*idx), dm, dp),
    };
    out.push_str(&format!(
        "(sym {} {} {} {})",
        s.name,
        s.weight2,
        s.invertible as u8,
        kind
    ));
}

fn w_app(a: &App, out: &mut String) {
    let family = match a.func.family {
        Family::Opaque => "opaque",
        Family::Sin => "sin",
        Family::Cos => "cos",
    };
    out.push_str(&format!(
        "(app {} {} {} {} (d",
        a.func.name, family, a.func.weight2, a.func.invertible as u8
    ));
    for d in &a.deriv {
        out.push_str(&format!(" {d}"));
    }
    out.push(')');
    for arg in &a.args {
        out.push(' ');
        w_coeff(arg, out);
    }
    out.push(')');
}

fn w_atom(a: &Atom, out: &mut String) {
    match a {
        Atom::Sym(s) => w_sym(s, out),
        Atom::App(a) => w_app(a, out),
    }
}

fn w_coeff(c: &CoeffExpr, out: &mut String) {
    out.push_str("(k");
    for t in &c.terms {
        out.push_str(&format!(" (c {}", w_rat(&t.coef)));
        for (atom, pow) in &t.factors {
            out.push_str(" (f ");
            w_atom(atom, out);
            out.push_str(&format!(" {pow})"));
        }
        out.push(')');
    }
    out.push(')');
}

fn w_gen(g: &Gen, out: &mut String) {
    match &g.bucket {
        GenBucket::GradedCoord(rank) => {
            out.push_str(&format!("(zc {} {} {})", rank, w_deg(g.degree), g.weight2));
        }
        GenBucket::Param(name) => {
            out.push_str(&format!("(gp {} {} {})", name, w_deg(g.degree), g.weight2));
        }
        GenBucket::Jet { field, idx, dm, dp } => {
            out.push_str(&format!(
                "(gj {} {} {} {} {} {})",
                field,
                w_idx(*idx),
                dm,
                dp,
                w_deg(g.degree),
                g.weight2
            ));
        }
    }
}

/// Serialize a canonical expression to the line-oriented prefix text form.
pub fn serialize(e: &GradedExpr) -> String {
    let mut out = format!(
        "(bigraded-expr {FORMAT_VERSION} (ctx {} (coords",
        e.ctx.z_order
    );
    for name in &e.ctx.coord_names {
        out.push(' ');
        out.push_str(name);
    }
    out.push(')');
    for (g, r) in &e.ctx.relations {
        out.push_str(" (rel ");
        w_gen(g, &mut out);
        out.push_str(&format!(" {})", w_rat(r)));
    }
    out.push_str("))\n");
    for t in &e.terms {
        out.push_str("(term ");
        w_coeff(&t.coef, &mut out);
        for (g, p) in &t.mono {
            out.push_str(" (g ");
            w_gen(g, &mut out);
            out.push_str(&format!(" {p})"));
        }
        out.push_str(")\n");
    }
    out
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    L,
    R,
    Word(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(src: &str) -> Vec<Token> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut word = String::new();
    let (mut wline, mut wcol) = (1usize, 1usize);
    let flush = |word: &mut String, toks: &mut Vec<Token>, wl: usize, wc: usize| {
        if !word.is_empty() {
            toks.push(Token {
                tok: Tok::Word(std::mem::take(word)),
                line: wl,
                col: wc,
            });
        }
    };
    for ch in src.chars() {
        match ch {
            '(' | ')' => {
                flush(&mut word, &mut toks, wline, wcol);
                toks.push(Token {
                    tok: if ch == '(' { Tok::L } else { Tok::R },
                    line,
                    col,
                });
                col += 1;
            }
            '\n' => {
                flush(&mut word, &mut toks, wline, wcol);
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                flush(&mut word, &mut toks, wline, wcol);
                col += 1;
            }
            c => {
                if word.is_empty() {
                    wline = line;
                    wcol = col;
                }
                word.push(c);
                col += 1;
            }
        }
    }
    flush(&mut word, &mut toks, wline, wcol);
    toks
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl Parser {
    fn new(src: &str) -> Parser {
        let toks = tokenize(src);
        let (end_line, end_col) = toks
            .last()
            .map(|t| (t.line, t.col + 1))
            .unwrap_or((1, 1));
        Parser {
            toks,
            pos: 0,
            end_line,
            end_col,
        }
    }

    fn err(&self, at: Option<&Token>, expected: &str) -> String {
        match at {
            Some(t) => {
                let found = match &t.tok {
                    Tok::L => "'('".to_string(),
                    Tok::R => "')'".to_string(),
                    Tok::Word(w) => format!("'{w}'"),
                };
                format!(
                    "parse error at line {}, col {}: expected {expected}, found {found}",
                    t.line, t.col
                )
            }
            None => format!(
                "parse error at line {}, col {}: expected {expected}, found end of input",
                self.end_line, self.end_col
            ),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<Token, String> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(self.err(None, expected)),
        }
    }

    fn open(&mut self) -> Result<(), String> {
        let t = self.next("'('")?;
        if t.tok == Tok::L {
            Ok(())
        } else {
            Err(self.err(Some(&t), "'('"))
        }
    }

    fn close(&mut self) -> Result<(), String> {
        let t = self.next("')'")?;
        if t.tok == Tok::R {
            Ok(())
        } else {
            Err(self.err(Some(&t), "')'"))
        }
    }

    fn word(&mut self, expected: &str) -> Result<(String, Token), String> {
        let t = self.next(expected)?;
        match &t.tok {
            Tok::Word(w) => Ok((w.clone(), t.clone())),
            _ => Err(self.err(Some(&t), expected)),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), String> {
        let (w, t) = self.word(&format!("'{kw}'"))?;
        if w == kw {
            Ok(())
        } else {
            Err(self.err(Some(&t), &format!("'{kw}'")))
        }
    }

    /// True (and consumes the lparen) iff the next list opens with `head`.
    fn peek_list(&mut self, head: &str) -> bool {
        if let (Some(a), Some(b)) = (self.toks.get(self.pos), self.toks.get(self.pos + 1)) {
            if a.tok == Tok::L && b.tok == Tok::Word(head.to_string()) {
                self.pos += 2;
                return true;
            }
        }
        false
    }

    fn at_close(&self) -> bool {
        matches!(self.peek().map(|t| &t.tok), Some(Tok::R))
    }

    fn num<T: FromStr>(&mut self, what: &str) -> Result<T, String> {
        let (w, t) = self.word(what)?;
        w.parse::<T>().map_err(|_| self.err(Some(&t), what))
    }

    fn rat(&mut self) -> Result<Rat, String> {
        let (w, t) = self.word("a rational")?;
        parse_rat(&w).ok_or_else(|| self.err(Some(&t), "a rational"))
    }

    fn degree(&mut self) -> Result<Degree, String> {
        let (w, t) = self.word("a degree (00|11|01|10)")?;
        match w.as_str() {
            "00" => Ok(Degree::ZERO),
            "11" => Ok(Degree::BOTH),
            "01" => Ok(Degree::SECOND),
            "10" => Ok(Degree::FIRST),
            _ => Err(self.err(Some(&t), "a degree (00|11|01|10)")),
        }
    }

    fn idx(&mut self) -> Result<Option<u8>, String> {
        let (w, t) = self.word("an index or '_'")?;
        if w == "_" {
            Ok(None)
        } else {
            w.parse::<u8>()
                .map(Some)
                .map_err(|_| self.err(Some(&t), "an index or '_'"))
        }
    }

    fn flag(&mut self) -> Result<bool, String> {
        let (w, t) = self.word("0 or 1")?;
        match w.as_str() {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(self.err(Some(&t), "0 or 1")),
        }
    }

    fn gen(&mut self) -> Result<Gen, String> {
        self.open()?;
        let (head, t) = self.word("a generator head (zc|gp|gj)")?;
        let gen = match head.as_str() {
            "zc" => {
                let rank: u8 = self.num("a rank")?;
                let degree = self.degree()?;
                let weight2: i32 = self.num("a weight")?;
                Gen {
                    bucket: GenBucket::GradedCoord(rank),
                    degree,
                    weight2,
                }
            }
            "gp" => {
                let (name, _) = self.word("a name")?;
                let degree = self.degree()?;
                let weight2: i32 = self.num("a weight")?;
                Gen {
                    bucket: GenBucket::Param(name),
                    degree,
                    weight2,
                }
            }
            "gj" => {
                let (field, _) = self.word("a field name")?;
                let idx = self.idx()?;
                let dm: u16 = self.num("a derivative count")?;
                let dp: u16 = self.num("a derivative count")?;
                let degree = self.degree()?;
                let weight2: i32 = self.num("a weight")?;
                Gen {
                    bucket: GenBucket::Jet { field, idx, dm, dp },
                    degree,
                    weight2,
                }
            }
            _ => return Err(self.err(Some(&t), "a generator head (zc|gp|gj)")),
        };
        self.close()?;
        Ok(gen)
    }

    fn atom(&mut self) -> Result<Atom, String> {
        self.open()?;
        let (head, t) = self.word("an atom head (sym|app)")?;
        let atom = match head.as_str() {
            "sym" => {
                let (name, _) = self.word("a name")?;
                let weight2: i32 = self.num("a weight")?;
                let invertible = self.flag()?;
                let kind = if self.peek_list("jet") {
                    let idx = self.idx()?;
                    let dm: u16 = self.num("a derivative count")?;
                    let dp: u16 = self.num("a derivative count")?;
                    self.close()?;
                    SymKind::Jet { idx, dm, dp }
                } else {
                    let (w, t) = self.word("a symbol kind (coord|param|(jet ...))")?;
                    match w.as_str() {
                        "coord" => SymKind::Coord,
                        "param" => SymKind::Param,
                        _ => {
                            return Err(
                                self.err(Some(&t), "a symbol kind (coord|param|(jet ...))")
                            )
                        }
                    }
                };
                Atom::Sym(Sym {
                    name,
                    kind,
                    weight2,
                    invertible,
                })
            }
            "app" => {
                let (name, _) = self.word("a function name")?;
                let (fam, tf) = self.word("a family (opaque|sin|cos)")?;
                let family = match fam.as_str() {
                    "opaque" => Family::Opaque,
                    "sin" => Family::Sin,
                    "cos" => Family::Cos,
                    _ => return Err(self.err(Some(&tf), "a family (opaque|sin|cos)")),
                };
                let weight2: i32 = self.num("a weight")?;
                let invertible = self.flag()?;
                if !self.peek_list("d") {
                    let t = self.peek().cloned();
                    return Err(self.err(t.as_ref(), "'(d ...)'"));
                }
                let mut deriv = Vec::new();
                while !self.at_close() {
                    deriv.push(self.num::<u32>("a derivative order")?);
                }
                self.close()?;
                let mut args = Vec::new();
                while !self.at_close() {
                    args.push(self.coeff()?);
                }
                Atom::App(App {
                    func: Func {
                        name,
                        family,
                        weight2,
                        invertible,
                    },
                    deriv,
                    args,
                })
            }
            _ => return Err(self.err(Some(&t), "an atom head (sym|app)")),
        };
        self.close()?;
        Ok(atom)
    }

    fn coeff(&mut self) -> Result<CoeffExpr, String> {
        self.open()?;
        self.keyword("k")?;
        let mut terms = Vec::new();
        while self.peek_list("c") {
            let coef = self.rat()?;
            let mut factors = Vec::new();
            while self.peek_list("f") {
                let atom = self.atom()?;
                let pow: i32 = self.num("an exponent")?;
                factors.push((atom, pow));
                self.close()?;
            }
            self.close()?;
            terms.push(CTerm { coef, factors });
        }
        self.close()?;
        Ok(CoeffExpr::from_terms(terms))
    }

    fn header(&mut self) -> Result<Ctx, String> {
        self.open()?;
        self.keyword("bigraded-expr")?;
        let (v, tv) = self.word("format version 1")?;
        if v != FORMAT_VERSION.to_string() {
            return Err(self.err(Some(&tv), "format version 1"));
        }
        self.open()?;
        self.keyword("ctx")?;
        let z_order: u32 = self.num("a z-order")?;
        self.open()?;
        self.keyword("coords")?;
        let mut coord_names = Vec::new();
        while !self.at_close() {
            coord_names.push(self.word("a coordinate name")?.0);
        }
        self.close()?;
        let mut relations = BTreeMap::new();
        while self.peek_list("rel") {
            let gen = self.gen()?;
            let r = self.rat()?;
            relations.insert(gen, r);
            self.close()?;
        }
        self.close()?;
        self.close()?;
        Ok(Arc::new(Context {
            z_order,
            relations,
            coord_names,
        }))
    }

    fn expr(&mut self) -> Result<GradedExpr, String> {
        let ctx = self.header()?;
        let mut terms = Vec::new();
        while self.peek_list("term") {
            let coef = self.coeff()?;
            let mut mono: Mono = Vec::new();
            while self.peek_list("g") {
                let gen = self.gen()?;
                let pow: u32 = self.num("an exponent")?;
                mono.push((gen, pow));
                self.close()?;
            }
            self.close()?;
            terms.push(GTerm { coef, mono });
        }
        if let Some(t) = self.peek() {
            return Err(self.err(Some(t), "'(term ...)' or end of input"));
        }
        Ok(GradedExpr::from_terms(&ctx, terms))
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n).ok()?;
        let d = BigInt::from_str(d).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        Some(Rat::from(BigInt::from_str(s).ok()?))
    }
}

/// Parse the prefix text form back into a canonical expression. Errors carry
/// the line and column of the offending token.
pub fn parse(src: &str) -> Result<GradedExpr, String> {
    Parser::new(src).expr()
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

fn j_deg(d: Degree) -> Value {
    Value::String(w_deg(d))
}

fn j_idx(idx: Option<u8>) -> Value {
    match idx {
        Some(i) => json!(i),
        None => Value::Null,
    }
}

fn j_sym(s: &Sym) -> Value {
    let kind = match &s.kind {
        SymKind::Coord => json!("coord"),
        SymKind::Param => json!("param"),
        SymKind::Jet { idx, dm, dp } => json!({"jet": {"idx": j_idx(*idx), "dm": dm, "dp": dp}}),
    };
    json!({"sym": {
        "name": s.name,
        "weight2": s.weight2,
        "invertible": s.invertible,
        "kind": kind,
    }})
}

fn j_atom(a: &Atom) -> Value {
    match a {
        Atom::Sym(s) => j_sym(s),
        Atom::App(a) => json!({"app": {
            "name": a.func.name,
            "family": match a.func.family {
                Family::Opaque => "opaque",
                Family::Sin => "sin",
                Family::Cos => "cos",
            },
            "weight2": a.func.weight2,
            "invertible": a.func.invertible,
            "deriv": a.deriv,
            "args": a.args.iter().map(j_coeff).collect::<Vec<_>>(),
        }}),
    }
}

fn j_coeff(c: &CoeffExpr) -> Value {
    Value::Array(
        c.terms
            .iter()
            .map(|t| {
                json!({
                    "rational": w_rat(&t.coef),
                    "factors": t.factors.iter().map(|(a, p)| {
                        json!({"atom": j_atom(a), "power": p})
                    }).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn j_gen(g: &Gen) -> Value {
    match &g.bucket {
        GenBucket::GradedCoord(rank) => json!({"coord": {
            "rank": rank, "degree": j_deg(g.degree), "weight2": g.weight2,
        }}),
        GenBucket::Param(name) => json!({"param": {
            "name": name, "degree": j_deg(g.degree), "weight2": g.weight2,
        }}),
        GenBucket::Jet { field, idx, dm, dp } => json!({"jet": {
            "field": field, "idx": j_idx(*idx), "dm": dm, "dp": dp,
            "degree": j_deg(g.degree), "weight2": g.weight2,
        }}),
    }
}

/// Render an expression as a JSON value mirroring the text form's tree.
pub fn to_json(e: &GradedExpr) -> Value {
    json!({
        "format": "bigraded-expr",
        "version": FORMAT_VERSION,
        "context": {
            "z_order": e.ctx.z_order,
            "coords": e.ctx.coord_names,
            "relations": e.ctx.relations.iter().map(|(g, r)| {
                json!({"gen": j_gen(g), "square": w_rat(r)})
            }).collect::<Vec<_>>(),
        },
        "terms": e.terms.iter().map(|t| {
            json!({
                "coefficient": j_coeff(&t.coef),
                "monomial": t.mono.iter().map(|(g, p)| {
                    json!({"gen": j_gen(g), "power": p})
                }).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// LaTeX
// ---------------------------------------------------------------------------

const GREEK: &[(&str, &str)] = &[
    ("psi", r"\psi"),
    ("chi", r"\chi"),
    ("eps", r"\epsilon"),
    ("lam", r"\lambda"),
    ("sig", r"\sigma"),
    ("th", r"\theta"),
    ("et", r"\eta"),
    ("eta", r"\eta"),
    ("mu", r"\mu"),
    ("alpha", r"\alpha"),
    ("beta", r"\beta"),
    ("phi", r"\phi"),
];

/// Translate an internal identifier to LaTeX: `psi_p` → `\psi_+`, `xm` →
/// `x^-`, `eta12` → `\eta_{12}`, `phi_th_010` → `\phi^{\theta}_{010}`,
/// anything unrecognized → `\mathrm{name}`.
fn latex_name(name: &str) -> String {
    match name {
        "xm" => return "x^-".into(),
        "xp" => return "x^+".into(),
        "t_pr" => return "t'".into(),
        "s_pr" => return "s'".into(),
        "z" | "t" | "s" => return name.into(),
        _ => {}
    }
    // Coordinate-change templates: phi_<coord>[_<slot digits>].
    if let Some(rest) = name.strip_prefix("phi_") {
        let (coord, slot) = match rest.split_once('_') {
            Some((c, s)) => (c, Some(s)),
            None => (rest, None),
        };
        let sup = match coord {
            "th" => r"\theta".to_string(),
            "et" => r"\eta".to_string(),
            c => c.to_string(),
        };
        return match slot {
            Some(s) => format!(r"\phi^{{{sup}}}_{{{s}}}"),
            None => format!(r"\phi^{{{sup}}}"),
        };
    }
    // Greek stem, then optional `_m`/`_p` spinor suffix or trailing digits.
    let (stem, sub) = match name.split_once('_') {
        Some((a, "m")) => (a, Some("-".to_string())),
        Some((a, "p")) => (a, Some("+".to_string())),
        Some((a, rest)) => (a, Some(format!("{{{rest}}}"))),
        None => {
            let digits = name.trim_end_matches(|c: char| c.is_ascii_digit());
            if digits.len() < name.len() && !digits.is_empty() {
                (digits, Some(format!("{{{}}}", &name[digits.len()..])))
            } else {
                (name, None)
            }
        }
    };
    let head = GREEK
        .iter()
        .find(|(k, _)| *k == stem)
        .map(|(_, v)| v.to_string())
        .unwrap_or_else(|| {
            if stem.chars().count() == 1 {
                stem.to_string()
            } else {
                format!(r"\mathrm{{{stem}}}")
            }
        });
    match sub {
        Some(s) => format!("{head}_{s}"),
        None => head,
    }
}

fn latex_jet_prefix(dm: u16, dp: u16) -> String {
    let mut out = String::new();
    for (d, sign) in [(dm, "-"), (dp, "+")] {
        match d {
            0 => {}
            1 => out.push_str(&format!(r"\partial_{sign}")),
            _ => out.push_str(&format!(r"\partial_{sign}^{{{d}}}")),
        }
    }
    out
}

fn latex_idx(name: &str, idx: Option<u8>) -> String {
    let base = latex_name(name);
    match idx {
        Some(i) => format!("{base}^{{{i}}}"),
        None => base,
    }
}

fn latex_sym(s: &Sym) -> String {
    match &s.kind {
        SymKind::Jet { idx, dm, dp } => {
            format!("{}{}", latex_jet_prefix(*dm, *dp), latex_idx(&s.name, *idx))
        }
        _ => latex_name(&s.name),
    }
}

fn latex_app(a: &App) -> String {
    let args = a
        .args
        .iter()
        .map(|c| latex_coeff(c, false))
        .collect::<Vec<_>>()
        .join(", ");
    let head = match a.func.family {
        Family::Sin => r"\sin".to_string(),
        Family::Cos => r"\cos".to_string(),
        Family::Opaque => latex_name(&a.func.name),
    };
    let total: u32 = a.deriv.iter().sum();
    let head = if total == 0 {
        head
    } else if a.args.len() == 1 {
        // Single-argument heads take prime notation up to two derivatives.
        match total {
            1 => format!("{head}'"),
            2 => format!("{head}''"),
            d => format!("{head}^{{({d})}}"),
        }
    } else {
        // Multi-argument heads record per-slot derivatives explicitly.
        let mut pre = String::new();
        for (i, d) in a.deriv.iter().enumerate() {
            match d {
                0 => {}
                1 => pre.push_str(&format!(r"\partial_{{{}}}", i + 1)),
                _ => pre.push_str(&format!(r"\partial_{{{}}}^{{{}}}", i + 1, d)),
            }
        }
        format!("{pre}{head}")
    };
    format!(r"{head}\!\left({args}\right)")
}

fn latex_atom(a: &Atom) -> String {
    match a {
        Atom::Sym(s) => latex_sym(s),
        Atom::App(a) => latex_app(a),
    }
}

fn needs_wrap(s: &str) -> bool {
    s.contains(r"\partial") || s.ends_with('\'')
}

fn latex_factor(atom: &Atom, pow: i32) -> String {
    let base = latex_atom(atom);
    match pow {
        1 => base,
        p => {
            // Powers of derivative-prefixed factors get protective parens:
            // (∂₋X)², not ∂₋X².
            if needs_wrap(&base) {
                format!(r"\left({base}\right)^{{{p}}}")
            } else {
                format!("{base}^{{{p}}}")
            }
        }
    }
}

fn latex_rat_abs(r: &Rat) -> String {
    let a = r.abs();
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!(r"\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

/// One `CTerm` without its sign: rational magnitude (omitted when 1 and
/// factors are present) followed by the factors.
fn latex_cterm_abs(t: &CTerm) -> String {
    let factors = t
        .factors
        .iter()
        .map(|(a, p)| latex_factor(a, *p))
        .collect::<Vec<_>>()
        .join(r"\,");
    let mag = latex_rat_abs(&t.coef);
    if factors.is_empty() {
        mag
    } else if mag == "1" {
        factors
    } else {
        format!(r"{mag}\,{factors}")
    }
}

fn latex_coeff(c: &CoeffExpr, wrap_sums: bool) -> String {
    if c.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in c.terms.iter().enumerate() {
        let neg = t.coef.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&latex_cterm_abs(t));
    }
    if wrap_sums && c.terms.len() > 1 {
        format!(r"\left({out}\right)")
    } else {
        out
    }
}

fn latex_gen(g: &Gen, ctx: &Ctx) -> String {
    match &g.bucket {
        GenBucket::GradedCoord(rank) => latex_name(
            ctx.coord_names
                .get(*rank as usize)
                .map(String::as_str)
                .unwrap_or("?"),
        ),
        GenBucket::Param(name) => latex_name(name),
        GenBucket::Jet { field, idx, dm, dp } => {
            format!("{}{}", latex_jet_prefix(*dm, *dp), latex_idx(field, *idx))
        }
    }
}

fn latex_mono(mono: &Mono, ctx: &Ctx) -> String {
    mono.iter()
        .map(|(g, p)| {
            let base = latex_gen(g, ctx);
            match p {
                1 => base,
                p if needs_wrap(&base) => format!(r"\left({base}\right)^{{{p}}}"),
                p => format!("{base}^{{{p}}}"),
            }
        })
        .collect::<Vec<_>>()
        .join(r"\,")
}

/// Render an expression in LaTeX. Graded factors appear in canonical order
/// (`z` leftmost, `θ₋` before `θ₊`); a sum-valued coefficient in front of a
/// nonempty monomial is parenthesized.
pub fn to_latex(e: &GradedExpr) -> String {
    if e.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in e.terms.iter().enumerate() {
        let mono = latex_mono(&t.mono, &e.ctx);
        // Single-coefficient terms donate their sign to the join; sums stay
        // parenthesized with a leading '+'.
        let (sign_neg, body) = if t.coef.terms.len() == 1 {
            let ct = &t.coef.terms[0];
            let mag = latex_cterm_abs(ct);
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono
            } else {
                format!(r"{mag}\,{mono}")
            };
            (ct.coef.is_negative(), body)
        } else {
            let coeff = latex_coeff(&t.coef, !mono.is_empty());
            let body = if mono.is_empty() {
                coeff
            } else {
                format!(r"{coeff}\,{mono}")
            };
            (false, body)
        };
        if i == 0 {
            if sign_neg {
                out.push('-');
            }
        } else {
            out.push_str(if sign_neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Render a graded matrix as a LaTeX array with the even|odd block structure
/// marked: a vertical rule between even and odd columns and an `\hline`
/// between even and odd rows.
pub fn latex_matrix(m: &GradedMatrix) -> String {
    let split = |degs: &[Degree]| {
        degs.iter()
            .position(|d| d.parity() == 1)
            .unwrap_or(degs.len())
    };
    let (rsplit, csplit) = (split(&m.row_degrees), split(&m.col_degrees));
    let ncols = m.col_degrees.len();
    let colspec = if csplit == 0 || csplit == ncols {
        "c".repeat(ncols)
    } else {
        format!("{}|{}", "c".repeat(csplit), "c".repeat(ncols - csplit))
    };
    let mut body = String::new();
    for (i, row) in m.entries.iter().enumerate() {
        if i > 0 {
            body.push_str(" \\\\\n");
        }
        if i == rsplit && i > 0 {
            body.push_str("\\hline\n");
        }
        let cells = row.iter().map(to_latex).collect::<Vec<_>>();
        body.push_str(&cells.join(" & "));
    }
    format!("\\left(\\begin{{array}}{{{colspec}}}\n{body}\n\\end{{array}}\\right)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coordchange::{random_section, template_change, BFrame};
    use crate::models::{Metric, Potential, SigmaModel};
    use crate::superspace::{supertranslation, M2, STParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip_is_identity_on_canonical_forms() {
        // A density with rationals, trig heads, jets, and the graded unit.
        let m2 = M2::new(1);
        let model = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).unwrap();
        let (_, lag) = model.eliminate().unwrap();
        let text = serialize(&lag);
        assert_eq!(parse(&text).unwrap(), lag);

        // Nested opaque applications from a coordinate-change pullback.
        let frame = BFrame::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let change = template_change(&frame, &mut rng);
        let section = random_section(&frame, &mut rng);
        let pulled = change.phi.pullback(&section);
        let text = serialize(&pulled);
        assert_eq!(parse(&text).unwrap(), pulled);

        // Zero survives as a bare header.
        let zero = GradedExpr::zero(&m2.ctx);
        let text = serialize(&zero);
        assert_eq!(text.lines().count(), 1);
        assert_eq!(parse(&text).unwrap(), zero);

        // Serialization is one term per line under a stable order.
        let text = serialize(&lag);
        assert_eq!(text.lines().count(), 1 + lag.terms.len());
        assert_eq!(text, serialize(&parse(&text).unwrap()));
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = parse("(bigraded-expr 2 (ctx 1 (coords z)))").unwrap_err();
        assert!(err.contains("line 1, col 16"), "{err}");
        assert!(err.contains("format version 1"), "{err}");

        let m2 = M2::new(1);
        let good = serialize(&GradedExpr::one(&m2.ctx));
        let truncated = good[..good.len() - 3].to_string();
        let err = parse(&truncated).unwrap_err();
        assert!(err.contains("parse error at line"), "{err}");

        let err = parse("(bigraded-expr 1 (ctx 1 (coords z th_m th_p)))\n(term (k (c oops)))\n")
            .unwrap_err();
        assert!(err.contains("line 2"), "{err}");
        assert!(err.contains("rational"), "{err}");
    }

    #[test]
    fn latex_orders_graded_factors_and_names_fields() {
        let m2 = M2::new(1);
        let f = Gen::jet("F", None, 0, 0, Degree::BOTH, 0);
        let term = &(&m2.gen(&m2.th_m) * &m2.gen(&m2.th_p)) * &GradedExpr::gen(&m2.ctx, f);
        let tex = to_latex(&term);
        assert_eq!(tex, r"\theta_-\,\theta_+\,F");

        let zterm = &m2.gen(&m2.z) * &m2.gen(&m2.th_m);
        assert_eq!(to_latex(&zterm), r"z\,\theta_-");

        let model = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).unwrap();
        let (_, lag) = model.eliminate().unwrap();
        let tex = to_latex(&lag);
        assert!(tex.contains(r"\sin"), "{tex}");
        assert!(tex.contains(r"\frac{1}{4}"), "{tex}");
        assert!(tex.contains(r"\partial_-X"), "{tex}");
        assert!(tex.contains(r"\psi_+"), "{tex}");
        assert!(!tex.contains("_m"), "internal names leaked: {tex}");
    }

    #[test]
    fn matrix_layout_marks_even_odd_blocks() {
        let m2 = M2::new(1);
        let st = STParams::new("");
        let j = supertranslation(&m2, &st).jacobian(&m2.ctx, &m2.coords());
        let tex = latex_matrix(&j);
        assert!(tex.contains(r"\begin{array}{ccc|cc}"), "{tex}");
        assert!(tex.contains(r"\hline"), "{tex}");
        assert_eq!(tex.matches("\\\\").count(), 4, "{tex}");
    }

    #[test]
    fn json_mirrors_the_term_structure() {
        let model = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).unwrap();
        let lag = model.component_lagrangian().unwrap();
        let v = to_json(&lag);
        assert_eq!(v["version"], 1);
        assert_eq!(v["context"]["z_order"], 1);
        assert_eq!(
            v["terms"].as_array().unwrap().len(),
            lag.terms.len()
        );
        // The graded-unit square relation is recorded in the context block.
        let rels = v["context"]["relations"].as_array().unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0]["square"], "1");
    }
}
