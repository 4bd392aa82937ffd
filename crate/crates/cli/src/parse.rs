//! Recursive-descent parser with name resolution and static typing.
//!
//! ```text
//! script     := [field_decl (decl | command)*]
//! field_decl := "field" "q" "=" int ["ext" "m" "=" int] ["func"] ["perfect"] ";"
//! decl       := "let" name "=" expr ";"
//! command    := keyword (name "=" expr | expr)* (";" | end of input)
//! expr       := term (("+" | "-") term)*
//! term       := unary (("*" | "/") unary)*
//! unary      := "-" unary | atom ["^" int]
//! atom       := int | "T" | "t" | "g" | "w" | "S{" int "}" | name | "(" expr ")"
//!             | "[" row ("," row)* "]" | "Z{" expr "}" | "points{" tuple ("," tuple)* "}"
//!             | "map{" expr "," expr "," expr "}" | "amodule{" key "=" expr (";" key "=" expr)* [";"] "}"
//! ```
//!
//! Products of Ore polynomials are compositions: `t^1*T` is T^q·τ.

use std::collections::HashMap;

use qvariety::coeffs::Field;

use crate::error::ParseError;
use crate::lex::{lex, Tok, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(u64),
    /// `T`, `t`, `g` or `w`.
    Var(char),
    /// S{k} = T^{1/q^k}.
    Root(u32),
    Name(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
    Matrix(Vec<Vec<Expr>>),
    Zeros(Box<Expr>),
    Points(Vec<Vec<Expr>>),
    Map(Box<Expr>, Box<Expr>, Box<Expr>),
    AModule(Vec<(String, Expr)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: usize,
    pub col: usize,
}

/// Static types of expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ty {
    Poly,
    Matrix,
    Variety,
    Morphism,
    Module,
}

impl Ty {
    fn name(self) -> &'static str {
        match self {
            Ty::Poly => "an Ore polynomial",
            Ty::Matrix => "a matrix",
            Ty::Variety => "a variety",
            Ty::Morphism => "a morphism",
            Ty::Module => "an A-module",
        }
    }

    /// Whether a value of type `self` may stand where `want` is expected.
    fn fits(self, want: Ty) -> bool {
        self == want || (self == Ty::Poly && want == Ty::Matrix)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Diag,
    Hermite,
    Radical,
    Zeros,
    Annihilator,
    Dim,
    Tangent,
    Image,
    Kernel,
    Preimage,
    Sum,
    Intersect,
    Quotient,
    Separable,
    Torsion,
    TorsionPoints,
    Rank,
    Tate,
    Jacobian,
    Gmax,
}

/// What a keyed argument holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyKind {
    /// An element of A = F_q[T].
    APoly,
    Int,
    Variety,
}

struct Signature {
    positional: &'static [Ty],
    /// The command acts on an A-module, by default the latest one declared.
    module: bool,
    keys: &'static [(&'static str, KeyKind, bool)],
}

const COMMANDS: &[(&str, CommandKind)] = &[
    ("diag", CommandKind::Diag),
    ("hermite", CommandKind::Hermite),
    ("radical", CommandKind::Radical),
    ("zeros", CommandKind::Zeros),
    ("annihilator", CommandKind::Annihilator),
    ("dim", CommandKind::Dim),
    ("tangent", CommandKind::Tangent),
    ("image", CommandKind::Image),
    ("kernel", CommandKind::Kernel),
    ("preimage", CommandKind::Preimage),
    ("sum", CommandKind::Sum),
    ("intersect", CommandKind::Intersect),
    ("quotient", CommandKind::Quotient),
    ("separable", CommandKind::Separable),
    ("torsion", CommandKind::Torsion),
    ("torsionpoints", CommandKind::TorsionPoints),
    ("rank", CommandKind::Rank),
    ("tate", CommandKind::Tate),
    ("jacobian", CommandKind::Jacobian),
    ("gmax", CommandKind::Gmax),
];

impl CommandKind {
    pub fn keyword(self) -> &'static str {
        COMMANDS.iter().find(|(_, k)| *k == self).expect("listed").0
    }

    fn signature(self) -> Signature {
        use CommandKind::*;
        use KeyKind as K;
        let plain = |positional| Signature { positional, module: false, keys: &[] };
        match self {
            Diag | Hermite | Radical | Zeros => plain(&[Ty::Matrix]),
            Annihilator | Dim | Tangent => plain(&[Ty::Variety]),
            Image | Kernel => plain(&[Ty::Morphism]),
            Preimage => plain(&[Ty::Morphism, Ty::Variety]),
            Sum | Intersect | Quotient => plain(&[Ty::Variety, Ty::Variety]),
            // Ore polynomial or morphism; checked separately
            Separable => plain(&[]),
            Torsion => Signature { positional: &[], module: true, keys: &[("a", K::APoly, true), ("rank", K::Int, false)] },
            TorsionPoints => {
                Signature { positional: &[], module: true, keys: &[("a", K::APoly, true), ("ext", K::Int, false)] }
            }
            Rank => Signature { positional: &[], module: true, keys: &[("budget", K::Int, false)] },
            Tate => Signature { positional: &[], module: true, keys: &[("pi", K::APoly, true), ("n", K::Int, true)] },
            Jacobian => {
                Signature { positional: &[], module: true, keys: &[("H", K::Variety, true), ("cap", K::Int, false)] }
            }
            Gmax => Signature { positional: &[], module: true, keys: &[("H", K::Variety, true)] },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub q: u64,
    pub ext: Option<usize>,
    pub func: bool,
    pub perfect: bool,
}

impl FieldSpec {
    pub fn build(&self) -> qvariety::Result<Field> {
        match (self.ext, self.func, self.perfect) {
            (_, _, true) => Field::perfect_closure(self.q),
            (_, true, false) => Field::rational_functions(self.q),
            (Some(m), false, false) => Field::extension(self.q, m),
            (None, false, false) => Field::constants(self.q),
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!("field q={}", self.q);
        if let Some(m) = self.ext {
            s.push_str(&format!(" ext m={m}"));
        }
        if self.func {
            s.push_str(" func");
        }
        if self.perfect {
            s.push_str(" perfect");
        }
        s.push(';');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    /// The command as written, whitespace collapsed.
    pub echo: String,
    pub line: usize,
    pub col: usize,
    pub args: Vec<Expr>,
    pub keyed: Vec<(String, Expr)>,
    /// The A-module acted on, for module commands.
    pub module: Option<Expr>,
}

impl Command {
    pub fn key(&self, k: &str) -> Option<&Expr> {
        self.keyed.iter().find(|(n, _)| n == k).map(|(_, e)| e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Let { name: String, value: Expr, ty: Ty },
    Command(Command),
}

/// A parsed script: one field declaration, then bindings and commands in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub field: Option<FieldSpec>,
    pub items: Vec<Item>,
}

const RESERVED: &[&str] = &["field", "let", "T", "t", "g", "w", "S", "Z", "points", "map", "amodule"];

pub fn parse(src: &str) -> Result<Script, ParseError> {
    let tokens = lex(src)?;
    let mut p = Parser { src, tokens, pos: 0, names: HashMap::new(), field: None, last_module: None };
    p.script()
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    names: HashMap<String, Ty>,
    field: Option<FieldSpec>,
    last_module: Option<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let t = self.peek();
        let mut e = ParseError::new(t.line, t.col, message);
        e.expected = expected.iter().map(|s| s.to_string()).collect();
        e
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let found = self.peek().tok.describe();
        self.error_here(format!("unexpected {found}"), expected)
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == s)
    }

    fn expect_sym(&mut self, c: char, also: &[&str]) -> PResult<Token> {
        if self.at_sym(c) {
            return Ok(self.bump());
        }
        let first = format!("'{c}'");
        let mut expected = vec![first.as_str()];
        expected.extend_from_slice(also);
        Err(self.unexpected(&expected))
    }

    fn expect_keyword(&mut self, s: &str) -> PResult<()> {
        if self.at_ident(s) {
            self.bump();
            return Ok(());
        }
        Err(self.unexpected(&[&format!("'{s}'")]))
    }

    fn expect_int(&mut self) -> PResult<u64> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn expect_name(&mut self) -> PResult<(String, Token)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump()))
            }
            _ => Err(self.unexpected(&["name"])),
        }
    }

    fn script(&mut self) -> PResult<Script> {
        let mut items = Vec::new();
        if self.peek().tok == Tok::Eof {
            return Ok(Script::default());
        }
        self.field_decl()?;
        while self.peek().tok != Tok::Eof {
            if self.at_ident("let") {
                items.push(self.decl()?);
            } else if self.at_ident("field") {
                return Err(self.error_here("only one field declaration is allowed per script", &[]));
            } else if let Some(kind) = self.command_keyword() {
                items.push(Item::Command(self.command(kind)?));
            } else {
                let mut expected = vec!["'let'"];
                expected.extend(COMMANDS.iter().map(|(s, _)| *s));
                return Err(self.unexpected(&expected));
            }
        }
        Ok(Script { field: self.field.clone(), items })
    }

    fn command_keyword(&self) -> Option<CommandKind> {
        match &self.peek().tok {
            Tok::Ident(s) => COMMANDS.iter().find(|(k, _)| k == s).map(|(_, c)| *c),
            _ => None,
        }
    }

    fn field_decl(&mut self) -> PResult<()> {
        self.expect_keyword("field")?;
        self.expect_keyword("q")?;
        self.expect_sym('=', &[])?;
        let at = self.peek().clone();
        let q = self.expect_int()?;
        if qvariety::coeffs::prime_power(q).is_none() {
            return Err(ParseError::new(at.line, at.col, format!("{q} is not a prime power")));
        }
        let mut spec = FieldSpec { q, ext: None, func: false, perfect: false };
        loop {
            if self.at_ident("ext") && spec.ext.is_none() {
                self.bump();
                self.expect_keyword("m")?;
                self.expect_sym('=', &[])?;
                let at = self.peek().clone();
                let m = self.expect_int()?;
                if m == 0 || m > 64 {
                    return Err(ParseError::new(at.line, at.col, "extension degree must lie in 1..=64"));
                }
                spec.ext = Some(m as usize);
            } else if self.at_ident("func") && !spec.func {
                self.bump();
                spec.func = true;
            } else if self.at_ident("perfect") && !spec.perfect {
                self.bump();
                spec.perfect = true;
            } else {
                break;
            }
        }
        if spec.ext.is_some() && (spec.func || spec.perfect) {
            return Err(self.error_here("function fields over extensions of F_q are not supported", &[]));
        }
        self.expect_sym(';', &["'ext'", "'func'", "'perfect'"])?;
        self.field = Some(spec);
        Ok(())
    }

    fn decl(&mut self) -> PResult<Item> {
        self.expect_keyword("let")?;
        let (name, tok) = self.expect_name()?;
        if RESERVED.contains(&name.as_str()) || COMMANDS.iter().any(|(k, _)| *k == name) {
            return Err(ParseError::new(tok.line, tok.col, format!("'{name}' is reserved")));
        }
        if self.names.contains_key(&name) {
            return Err(ParseError::new(tok.line, tok.col, format!("name already bound: '{name}'")));
        }
        self.expect_sym('=', &[])?;
        let value = self.expr()?;
        let ty = self.type_of(&value)?;
        self.expect_sym(';', &["operator"])?;
        self.names.insert(name.clone(), ty);
        if ty == Ty::Module {
            self.last_module = Some(name.clone());
        }
        Ok(Item::Let { name, value, ty })
    }

    fn command(&mut self, kind: CommandKind) -> PResult<Command> {
        let head = self.bump();
        let sig = kind.signature();
        let mut args = Vec::new();
        let mut keyed: Vec<(String, Expr)> = Vec::new();
        let mut last_end = head.end;
        while !self.at_sym(';') && self.peek().tok != Tok::Eof {
            if matches!(self.peek().tok, Tok::Ident(_)) && *self.peek_at(1) == Tok::Sym('=') {
                let (key, tok) = self.expect_name()?;
                let Some(&(_, kk, _)) = sig.keys.iter().find(|(k, _, _)| *k == key) else {
                    let allowed: Vec<String> = sig.keys.iter().map(|(k, _, _)| format!("'{k}='")).collect();
                    let mut e = ParseError::new(tok.line, tok.col, format!("'{}' takes no argument '{key}'", kind.keyword()));
                    e.expected = allowed;
                    return Err(e);
                };
                if keyed.iter().any(|(k, _)| *k == key) {
                    return Err(ParseError::new(tok.line, tok.col, format!("argument '{key}' given twice")));
                }
                self.bump();
                let e = self.expr()?;
                self.check_key(&e, kk)?;
                keyed.push((key, e));
            } else {
                args.push(self.expr()?);
            }
            last_end = self.tokens[self.pos - 1].end;
        }
        if self.at_sym(';') {
            self.bump();
        }
        let echo = self.src[head.start..last_end].split_whitespace().collect::<Vec<_>>().join(" ");
        let mut module = None;
        if sig.module {
            // an optional leading positional names the module
            if args.first().is_some_and(|e| self.type_of(e).ok() == Some(Ty::Module)) {
                module = Some(args.remove(0));
            } else if let Some(name) = &self.last_module {
                module = Some(Expr { kind: ExprKind::Name(name.clone()), line: head.line, col: head.col });
            } else {
                return Err(ParseError::new(head.line, head.col, format!("'{}' needs an A-module", kind.keyword())));
            }
        }
        self.check_args(kind, &sig, &args, &head)?;
        for (k, _, required) in sig.keys {
            if *required && !keyed.iter().any(|(n, _)| n == k) {
                return Err(ParseError::new(head.line, head.col, format!("'{}' needs '{k}='", kind.keyword())));
            }
        }
        Ok(Command { kind, echo, line: head.line, col: head.col, args, keyed, module })
    }

    fn check_args(&self, kind: CommandKind, sig: &Signature, args: &[Expr], head: &Token) -> PResult<()> {
        if kind == CommandKind::Separable {
            if args.len() != 1 {
                return Err(ParseError::new(head.line, head.col, "'separable' takes one argument"));
            }
            let ty = self.type_of(&args[0])?;
            if !matches!(ty, Ty::Poly | Ty::Morphism) {
                return Err(type_error(&args[0], "an Ore polynomial or a morphism", ty));
            }
            return Ok(());
        }
        if args.len() != sig.positional.len() {
            return Err(ParseError::new(
                head.line,
                head.col,
                format!("'{}' takes {} positional argument(s), got {}", kind.keyword(), sig.positional.len(), args.len()),
            ));
        }
        for (e, want) in args.iter().zip(sig.positional) {
            let ty = self.type_of(e)?;
            if !ty.fits(*want) {
                return Err(type_error(e, want.name(), ty));
            }
        }
        Ok(())
    }

    fn check_key(&self, e: &Expr, kind: KeyKind) -> PResult<()> {
        match kind {
            KeyKind::Int => match e.kind {
                ExprKind::Int(_) => Ok(()),
                _ => Err(ParseError::new(e.line, e.col, "expected an integer")),
            },
            KeyKind::Variety => {
                let ty = self.type_of(e)?;
                if ty != Ty::Variety {
                    return Err(type_error(e, Ty::Variety.name(), ty));
                }
                Ok(())
            }
            KeyKind::APoly => check_apoly(e, self.field.as_ref().expect("field declared")),
        }
    }

    // ---- expressions ----

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.at_sym('+') {
                BinOp::Add
            } else if self.at_sym('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let t = self.bump();
            let rhs = self.term()?;
            lhs = Expr { kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)), line: t.line, col: t.col };
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.at_sym('*') {
                BinOp::Mul
            } else if self.at_sym('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let t = self.bump();
            let rhs = self.unary()?;
            lhs = Expr { kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)), line: t.line, col: t.col };
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.at_sym('-') {
            let t = self.bump();
            let e = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(e)), line: t.line, col: t.col });
        }
        let base = self.atom()?;
        if self.at_sym('^') {
            let t = self.bump();
            let n = self.expect_int()?;
            return Ok(Expr { kind: ExprKind::Pow(Box::new(base), n), line: t.line, col: t.col });
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let t = self.peek().clone();
        let at = |kind| Expr { kind, line: t.line, col: t.col };
        match &t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(at(ExprKind::Int(*n)))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')', &["operator"])?;
                Ok(e)
            }
            Tok::Sym('[') => self.matrix(),
            Tok::Ident(s) => {
                let s = s.clone();
                let braced = *self.peek_at(1) == Tok::Sym('{');
                match s.as_str() {
                    "T" | "t" | "g" | "w" => {
                        self.bump();
                        Ok(at(ExprKind::Var(s.chars().next().expect("nonempty"))))
                    }
                    "S" if braced => {
                        self.bump();
                        self.bump();
                        let k = self.expect_int()?;
                        self.expect_sym('}', &[])?;
                        let k = u32::try_from(k).map_err(|_| ParseError::new(t.line, t.col, "level too large"))?;
                        Ok(at(ExprKind::Root(k)))
                    }
                    "Z" if braced => {
                        self.bump();
                        self.bump();
                        let e = self.expr()?;
                        self.expect_sym('}', &["operator"])?;
                        Ok(at(ExprKind::Zeros(Box::new(e))))
                    }
                    "points" if braced => {
                        self.bump();
                        self.bump();
                        let mut tuples = vec![self.tuple()?];
                        while self.at_sym(',') {
                            self.bump();
                            tuples.push(self.tuple()?);
                        }
                        self.expect_sym('}', &["','"])?;
                        Ok(at(ExprKind::Points(tuples)))
                    }
                    "map" if braced => {
                        self.bump();
                        self.bump();
                        let d = self.expr()?;
                        self.expect_sym(',', &[])?;
                        let c = self.expr()?;
                        self.expect_sym(',', &[])?;
                        let m = self.expr()?;
                        self.expect_sym('}', &["operator"])?;
                        Ok(at(ExprKind::Map(Box::new(d), Box::new(c), Box::new(m))))
                    }
                    "amodule" if braced => {
                        self.bump();
                        self.bump();
                        self.amodule(&t)
                    }
                    _ if RESERVED.contains(&s.as_str()) || COMMANDS.iter().any(|(k, _)| *k == s) => {
                        Err(self.unexpected(&["expression"]))
                    }
                    _ => {
                        if !self.names.contains_key(&s) {
                            return Err(ParseError::new(t.line, t.col, format!("unknown name '{s}'")));
                        }
                        self.bump();
                        Ok(at(ExprKind::Name(s)))
                    }
                }
            }
            _ => Err(self.unexpected(&["expression"])),
        }
    }

    fn matrix(&mut self) -> PResult<Expr> {
        let open = self.expect_sym('[', &[])?;
        let mut rows = vec![self.row()?];
        while self.at_sym(',') {
            self.bump();
            rows.push(self.row()?);
        }
        self.expect_sym(']', &["','"])?;
        let width = rows[0].len();
        if let Some(bad) = rows.iter().find(|r| r.len() != width) {
            let e = &bad[0];
            return Err(ParseError::new(e.line, e.col, format!("row of length {} in a matrix of width {width}", bad.len())));
        }
        Ok(Expr { kind: ExprKind::Matrix(rows), line: open.line, col: open.col })
    }

    fn row(&mut self) -> PResult<Vec<Expr>> {
        self.expect_sym('[', &[])?;
        let mut out = vec![self.expr()?];
        while self.at_sym(',') {
            self.bump();
            out.push(self.expr()?);
        }
        self.expect_sym(']', &["','", "operator"])?;
        Ok(out)
    }

    fn tuple(&mut self) -> PResult<Vec<Expr>> {
        self.expect_sym('(', &[])?;
        let mut out = vec![self.expr()?];
        while self.at_sym(',') {
            self.bump();
            out.push(self.expr()?);
        }
        self.expect_sym(')', &["','", "operator"])?;
        Ok(out)
    }

    fn amodule(&mut self, open: &Token) -> PResult<Expr> {
        let mut fields: Vec<(String, Expr)> = Vec::new();
        const KEYS: &[&str] = &["'q'", "'delta'", "'PhiT'", "'carrier'"];
        while !self.at_sym('}') {
            let (key, tok) = match &self.peek().tok {
                Tok::Ident(s) => (s.clone(), self.peek().clone()),
                _ => return Err(self.unexpected(KEYS)),
            };
            if !["q", "delta", "PhiT", "carrier"].contains(&key.as_str()) {
                return Err(self.unexpected(KEYS));
            }
            if fields.iter().any(|(k, _)| *k == key) {
                return Err(ParseError::new(tok.line, tok.col, format!("'{key}' given twice")));
            }
            self.bump();
            self.expect_sym('=', &[])?;
            let e = self.expr()?;
            fields.push((key, e));
            if !self.at_sym(';') {
                break;
            }
            self.bump();
        }
        self.expect_sym('}', &["';'"])?;
        let e = Expr { kind: ExprKind::AModule(fields), line: open.line, col: open.col };
        self.type_of(&e)?;
        Ok(e)
    }

    /// Infers the type of an expression, checking operand types.
    fn type_of(&self, e: &Expr) -> PResult<Ty> {
        match &e.kind {
            ExprKind::Int(_) | ExprKind::Var(_) | ExprKind::Root(_) => Ok(Ty::Poly),
            ExprKind::Name(n) => Ok(self.names[n]),
            ExprKind::Neg(x) => {
                let ty = self.type_of(x)?;
                arith(x, ty)
            }
            ExprKind::Pow(x, _) => {
                let ty = self.type_of(x)?;
                arith(x, ty)
            }
            ExprKind::Bin(op, a, b) => {
                let (ta, tb) = (arith(a, self.type_of(a)?)?, arith(b, self.type_of(b)?)?);
                match (op, ta, tb) {
                    (BinOp::Div, Ty::Poly, Ty::Poly) => Ok(Ty::Poly),
                    (BinOp::Div, _, _) => Err(ParseError::new(e.line, e.col, "only field elements can be divided")),
                    (_, Ty::Poly, Ty::Poly) => Ok(Ty::Poly),
                    (BinOp::Mul, Ty::Poly, Ty::Matrix) | (_, Ty::Matrix, Ty::Matrix) => Ok(Ty::Matrix),
                    _ => Err(ParseError::new(e.line, e.col, "cannot combine a matrix with an Ore polynomial here")),
                }
            }
            ExprKind::Matrix(rows) => {
                for x in rows.iter().flatten() {
                    let ty = self.type_of(x)?;
                    if ty != Ty::Poly {
                        return Err(type_error(x, "an Ore polynomial", ty));
                    }
                }
                Ok(Ty::Matrix)
            }
            ExprKind::Zeros(m) => {
                let ty = self.type_of(m)?;
                if !ty.fits(Ty::Matrix) {
                    return Err(type_error(m, "a matrix", ty));
                }
                Ok(Ty::Variety)
            }
            ExprKind::Points(ts) => {
                let n = ts[0].len();
                for t in ts {
                    if t.len() != n {
                        return Err(ParseError::new(t[0].line, t[0].col, format!("point with {} coordinates, expected {n}", t.len())));
                    }
                    for x in t {
                        let ty = self.type_of(x)?;
                        if ty != Ty::Poly {
                            return Err(type_error(x, "a field element", ty));
                        }
                    }
                }
                Ok(Ty::Variety)
            }
            ExprKind::Map(d, c, m) => {
                for (x, want) in [(d, Ty::Variety), (c, Ty::Variety), (m, Ty::Matrix)] {
                    let ty = self.type_of(x)?;
                    if !ty.fits(want) {
                        return Err(type_error(x, want.name(), ty));
                    }
                }
                Ok(Ty::Morphism)
            }
            ExprKind::AModule(fields) => {
                let spec = self.field.as_ref().expect("field declared");
                for key in ["q", "delta", "PhiT"] {
                    if !fields.iter().any(|(k, _)| k == key) {
                        return Err(ParseError::new(e.line, e.col, format!("amodule needs '{key}='")));
                    }
                }
                for (k, x) in fields {
                    let want = match k.as_str() {
                        "q" => {
                            if x.kind != ExprKind::Int(spec.q) {
                                return Err(ParseError::new(x.line, x.col, format!("q must match the field (q={})", spec.q)));
                            }
                            continue;
                        }
                        "delta" => Ty::Poly,
                        "PhiT" => Ty::Matrix,
                        _ => Ty::Variety,
                    };
                    let ty = self.type_of(x)?;
                    if !ty.fits(want) {
                        return Err(type_error(x, want.name(), ty));
                    }
                }
                Ok(Ty::Module)
            }
        }
    }
}

fn arith(e: &Expr, ty: Ty) -> PResult<Ty> {
    match ty {
        Ty::Poly | Ty::Matrix => Ok(ty),
        _ => Err(type_error(e, "an Ore polynomial or a matrix", ty)),
    }
}

fn type_error(e: &Expr, want: &str, got: Ty) -> ParseError {
    ParseError::new(e.line, e.col, format!("expected {want}, found {}", got.name()))
}

/// Elements of A = F_q[T] use integers, `w`, `T`, `+ - *` and powers.
fn check_apoly(e: &Expr, spec: &FieldSpec) -> PResult<()> {
    let bad = |m: &str| Err(ParseError::new(e.line, e.col, m.to_string()));
    match &e.kind {
        ExprKind::Int(_) | ExprKind::Var('T') => Ok(()),
        ExprKind::Var('w') if qvariety::coeffs::prime_power(spec.q).is_some_and(|(_, l)| l > 1) => Ok(()),
        ExprKind::Neg(x) | ExprKind::Pow(x, _) => check_apoly(x, spec),
        ExprKind::Bin(BinOp::Div, _, _) => bad("elements of F_q[T] cannot be divided"),
        ExprKind::Bin(_, a, b) => {
            check_apoly(a, spec)?;
            check_apoly(b, spec)
        }
        _ => bad("expected a polynomial in T over F_q"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_binding_and_command() {
        let s = parse("field q=3; let P = T*t^0 + t^1; diag [[P]]").unwrap();
        assert_eq!(s.items.len(), 2);
        assert!(matches!(&s.items[0], Item::Let { name, ty: Ty::Poly, .. } if name == "P"));
        let Item::Command(c) = &s.items[1] else { panic!() };
        assert_eq!(c.kind, CommandKind::Diag);
        assert_eq!(c.echo, "diag [[P]]");
    }

    #[test]
    fn unbalanced_bracket_is_located() {
        let e = parse("field q=3;\nlet P = t^1;\ndiag [[P]").unwrap_err();
        assert_eq!((e.line, e.col), (3, 10));
        assert!(e.expected.contains(&"']'".to_string()));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let e = parse("field q=3; let P = t^1; let P = t^2;").unwrap_err();
        assert!(e.message.contains("name already bound"));
        assert_eq!((e.line, e.col), (1, 29));
    }

    #[test]
    fn names_must_be_declared() {
        let e = parse("field q=3; diag [[Q]];").unwrap_err();
        assert!(e.message.contains("unknown name"));
    }

    #[test]
    fn field_rules() {
        assert!(parse("field q=6;").is_err());
        assert!(parse("field q=3; let x = S{1};").is_ok());
        assert!(parse("field q=3 ext m=2; let x = g*t^1;").is_ok());
        assert!(parse("field q=3 func; field q=3;").is_err());
        assert!(parse("field q=3 ext m=2 func;").is_err());
        assert!(parse("field q=9; let x = w;").is_ok());
        assert!(parse("field q=3 func; let x = S{1};").is_ok());
    }

    #[test]
    fn module_commands_default_to_the_latest_module() {
        let s = parse("field q=3 func; let C = amodule{ q=3; delta=T; PhiT=[[T*t^0 + t^1]] }; torsion a=T-1; rank").unwrap();
        let Item::Command(c) = &s.items[1] else { panic!() };
        assert_eq!(c.module.as_ref().unwrap().kind, ExprKind::Name("C".into()));
        assert!(parse("field q=3 func; rank;").is_err());
        assert!(parse("field q=3 func; let C = amodule{ q=5; delta=T; PhiT=[[t^1]] };").is_err());
    }

    #[test]
    fn argument_types_are_checked() {
        let e = parse("field q=3; let P = t^1; dim P;").unwrap_err();
        assert!(e.message.contains("expected a variety"));
        assert!(parse("field q=3; let V = Z{[[t^1]]}; dim V;").is_ok());
        assert!(parse("field q=3 func; let C = amodule{q=3; delta=T; PhiT=[[T*t^0]]}; tate pi=T;").is_err());
        assert!(parse("field q=3 func; let C = amodule{q=3; delta=T; PhiT=[[T*t^0]]}; torsion a=t^1;").is_err());
        assert!(parse("field q=3; let C = amodule{q=3; delta=1; PhiT=[[1 + t^1]]}; torsionpoints a=T^2+1;").is_ok());
    }

    #[test]
    fn empty_script() {
        assert_eq!(parse("  # nothing\n").unwrap(), Script::default());
    }
}
