//! The `.gbpa` specification language: a line-oriented description of the field,
//! the vertex algebras, Γ with its algebra assignment, the relations, and optional
//! vertex-algebra modules.

use std::fmt;
use std::sync::Arc;

use gbpa::{
    build_vertex_algebra, Error, Field, GbpAlgebra, Matrix, Path, Quiver, RelationCombo, Scalar, VertexAlgebra,
    VertexModule,
};

/// Name of the single vertex of an algebra declared with the `k` shorthand.
pub const POINT_VERTEX: &str = "o";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    SyntaxError,
    UnknownName,
    DuplicateName,
    InvalidField,
    InvalidRelation,
    InvalidModule,
    CyclicGamma,
    NotFiniteDimensional,
    UnknownVertex,
}

impl ErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::SyntaxError => "SyntaxError",
            ErrorKind::UnknownName => "UnknownName",
            ErrorKind::DuplicateName => "DuplicateName",
            ErrorKind::InvalidField => "InvalidField",
            ErrorKind::InvalidRelation => "InvalidRelation",
            ErrorKind::InvalidModule => "InvalidModule",
            ErrorKind::CyclicGamma => "CyclicGamma",
            ErrorKind::NotFiniteDimensional => "NotFiniteDimensional",
            ErrorKind::UnknownVertex => "UnknownVertex",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub kind: ErrorKind,
    pub message: String,
    pub pos: Option<Pos>,
}

impl SpecError {
    pub fn new(kind: ErrorKind, message: impl Into<String>, pos: Option<Pos>) -> Self {
        SpecError {
            kind,
            message: message.into(),
            pos,
        }
    }

    fn at(kind: ErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        Self::new(kind, message, Some(pos))
    }

    /// Attaches a location to a library error.
    pub fn from_core(e: Error, pos: Option<Pos>) -> Self {
        let kind = match &e {
            Error::InvalidField(_) => ErrorKind::InvalidField,
            Error::UnknownVertex(_) => ErrorKind::UnknownVertex,
            Error::UnknownArrow(_) => ErrorKind::UnknownName,
            Error::DuplicateName(_) => ErrorKind::DuplicateName,
            Error::InvalidPath(_) | Error::InvalidRelation(_) => ErrorKind::InvalidRelation,
            Error::CyclicGamma => ErrorKind::CyclicGamma,
            Error::NotFiniteDimensional { .. } => ErrorKind::NotFiniteDimensional,
            Error::RelationViolation { .. }
            | Error::ActionIncompatible(_)
            | Error::AlgebraMismatch
            | Error::DimensionMismatch(_)
            | Error::NotAHomomorphism(_) => ErrorKind::InvalidModule,
        };
        Self::new(kind, e.to_string(), pos)
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "{p}: {}: {}", self.kind.name(), self.message),
            None => write!(f, "{}: {}", self.kind.name(), self.message),
        }
    }
}

impl std::error::Error for SpecError {}

type PResult<T> = Result<T, SpecError>;

// ---------------------------------------------------------------------------
// tokens

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Sym(char),
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
}

const SYMBOLS: &str = "{}[];*+-/,";

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> PResult<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            out.push(Token { tok: Tok::Newline, pos });
            line += 1;
            col = 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
                col += 1;
            }
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if SYMBOLS.contains(c) {
            chars.next();
            col += 1;
            out.push(Token { tok: Tok::Sym(c), pos });
        } else if is_word_char(c) {
            let mut w = String::new();
            while let Some(&c) = chars.peek().filter(|&&c| is_word_char(c)) {
                w.push(c);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Word(w), pos });
        } else {
            return Err(SpecError::at(ErrorKind::SyntaxError, pos, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// syntax tree

#[derive(Clone, Debug)]
struct Name {
    text: String,
    pos: Pos,
}

#[derive(Clone, Debug)]
struct Term {
    negative: bool,
    coeff: Option<(Scalar, Pos)>,
    factors: Vec<Name>,
}

#[derive(Clone, Debug)]
struct Combo {
    pos: Pos,
    terms: Vec<Term>,
}

#[derive(Clone, Debug, Default)]
struct QuiverBody {
    vertices: Vec<Name>,
    arrows: Vec<(Name, Name, Name)>,
    rels: Vec<Combo>,
}

#[derive(Clone, Debug)]
struct AlgebraDecl {
    name: Name,
    /// `None` for the `k` shorthand
    body: Option<QuiverBody>,
}

#[derive(Clone, Debug)]
struct MatrixLit {
    pos: Pos,
    rows: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
struct ModuleDecl {
    name: Name,
    over: Name,
    dims: Vec<(Name, usize)>,
    maps: Vec<(Name, MatrixLit)>,
}

#[derive(Clone, Debug, Default)]
struct Ast {
    field: Option<(Field, Pos)>,
    algebras: Vec<AlgebraDecl>,
    gamma: Option<(Pos, Vec<(Name, Name)>, Vec<(Name, Name, Name)>)>,
    relations: Option<(Pos, Vec<Combo>)>,
    modules: Vec<ModuleDecl>,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        let t = self.peek();
        let found = match &t.tok {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Newline => "end of line".to_string(),
            Tok::Eof => "end of input".to_string(),
        };
        Err(SpecError::at(
            ErrorKind::SyntaxError,
            t.pos,
            format!("expected {wanted}, found {found}"),
        ))
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek().tok, Tok::Newline | Tok::Sym(';')) {
            self.next();
        }
    }

    fn skip_newlines(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.next();
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> PResult<Pos> {
        if self.is_sym(c) {
            Ok(self.next().pos)
        } else {
            self.unexpected(&format!("`{c}`"))
        }
    }

    fn word(&mut self, what: &str) -> PResult<Name> {
        match &self.peek().tok {
            Tok::Word(w) => {
                let name = Name {
                    text: w.clone(),
                    pos: self.peek().pos,
                };
                self.next();
                Ok(name)
            }
            _ => self.unexpected(what),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Pos> {
        match &self.peek().tok {
            Tok::Word(w) if w == kw => Ok(self.next().pos),
            _ => self.unexpected(&format!("`{kw}`")),
        }
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        match self.peek().tok {
            Tok::Newline | Tok::Sym(';') => {
                self.next();
                Ok(())
            }
            Tok::Eof | Tok::Sym('}') => Ok(()),
            _ => self.unexpected("end of statement"),
        }
    }

    fn integer(&mut self, what: &str) -> PResult<(u64, Pos)> {
        let name = self.word(what)?;
        name.text
            .parse::<u64>()
            .map(|n| (n, name.pos))
            .map_err(|_| SpecError::at(ErrorKind::SyntaxError, name.pos, format!("expected {what}, found `{}`", name.text)))
    }

    fn signed_i64(&mut self, what: &str) -> PResult<i64> {
        let neg = if self.is_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let (n, pos) = self.integer(what)?;
        let n = i64::try_from(n).map_err(|_| SpecError::at(ErrorKind::SyntaxError, pos, "integer out of range"))?;
        Ok(if neg { -n } else { n })
    }

    /// `integer | integer '/' integer`, the leading integer already consumed.
    fn rational_tail(&mut self, num: i64, pos: Pos) -> PResult<Scalar> {
        if !self.is_sym('/') {
            return Ok(Scalar::from_int(num));
        }
        self.next();
        let (den, dpos) = self.integer("a denominator")?;
        if den == 0 {
            return Err(SpecError::at(ErrorKind::SyntaxError, dpos, "zero denominator"));
        }
        let den = i64::try_from(den).map_err(|_| SpecError::at(ErrorKind::SyntaxError, pos, "integer out of range"))?;
        Ok(Scalar::ratio(num, den))
    }

    fn document(&mut self) -> PResult<Ast> {
        let mut ast = Ast::default();
        self.skip_separators();
        if self.peek().tok == Tok::Eof {
            return Err(SpecError::at(ErrorKind::SyntaxError, self.peek().pos, "empty specification"));
        }
        while self.peek().tok != Tok::Eof {
            let kw = self.word("a declaration")?;
            match kw.text.as_str() {
                "field" => {
                    if ast.field.is_some() {
                        return Err(SpecError::at(ErrorKind::SyntaxError, kw.pos, "field declared twice"));
                    }
                    ast.field = Some((self.field()?, kw.pos));
                }
                "algebra" => ast.algebras.push(self.algebra()?),
                "gamma" => {
                    if ast.gamma.is_some() {
                        return Err(SpecError::at(ErrorKind::SyntaxError, kw.pos, "second `gamma` block"));
                    }
                    let (vs, arrows) = self.gamma()?;
                    ast.gamma = Some((kw.pos, vs, arrows));
                }
                "relations" => {
                    if ast.relations.is_some() {
                        return Err(SpecError::at(ErrorKind::SyntaxError, kw.pos, "second `relations` block"));
                    }
                    ast.relations = Some((kw.pos, self.relations()?));
                }
                "module" => ast.modules.push(self.module()?),
                other => {
                    return Err(SpecError::at(
                        ErrorKind::SyntaxError,
                        kw.pos,
                        format!("unknown declaration `{other}`"),
                    ))
                }
            }
            self.end_of_statement()?;
            self.skip_separators();
        }
        Ok(ast)
    }

    fn field(&mut self) -> PResult<Field> {
        let name = self.word("`Q` or `GF`")?;
        match name.text.as_str() {
            "Q" => Ok(Field::Rationals),
            "GF" => {
                let (p, pos) = self.integer("a prime")?;
                Field::prime(p).map_err(|e| SpecError::from_core(e, Some(pos)))
            }
            other => Err(SpecError::at(
                ErrorKind::InvalidField,
                name.pos,
                format!("unknown field `{other}` (use `Q` or `GF <p>`)"),
            )),
        }
    }

    /// Runs `stmt` on each statement of a `{ … }` block.
    fn block(&mut self, mut stmt: impl FnMut(&mut Self, Name) -> PResult<()>) -> PResult<()> {
        self.skip_newlines();
        self.expect_sym('{')?;
        loop {
            self.skip_separators();
            if self.is_sym('}') {
                self.next();
                return Ok(());
            }
            if self.peek().tok == Tok::Eof {
                return self.unexpected("`}`");
            }
            let kw = self.word("a statement")?;
            stmt(self, kw)?;
            self.end_of_statement()?;
        }
    }

    fn arrow_decl(&mut self) -> PResult<(Name, Name, Name)> {
        Ok((
            self.word("an arrow name")?,
            self.word("a source vertex")?,
            self.word("a target vertex")?,
        ))
    }

    fn algebra(&mut self) -> PResult<AlgebraDecl> {
        let name = self.word("an algebra name")?;
        if matches!(&self.peek().tok, Tok::Word(w) if w == "k") {
            self.next();
            return Ok(AlgebraDecl { name, body: None });
        }
        let mut body = QuiverBody::default();
        self.block(|p, kw| {
            match kw.text.as_str() {
                "vertices" => {
                    let first = p.word("a vertex name")?;
                    body.vertices.push(first);
                    while let Tok::Word(_) = p.peek().tok {
                        let v = p.word("a vertex name")?;
                        body.vertices.push(v);
                    }
                }
                "vertex" => body.vertices.push(p.word("a vertex name")?),
                "arrow" => body.arrows.push(p.arrow_decl()?),
                "rel" => body.rels.push(p.combo()?),
                other => return Err(unknown_statement(&kw, other, "vertices, arrow, rel")),
            }
            Ok(())
        })?;
        Ok(AlgebraDecl { name, body: Some(body) })
    }

    fn gamma(&mut self) -> PResult<(Vec<(Name, Name)>, Vec<(Name, Name, Name)>)> {
        let (mut vs, mut arrows) = (Vec::new(), Vec::new());
        self.block(|p, kw| {
            match kw.text.as_str() {
                "vertex" => vs.push((p.word("a vertex name")?, p.word("an algebra name")?)),
                "arrow" => arrows.push(p.arrow_decl()?),
                other => return Err(unknown_statement(&kw, other, "vertex, arrow")),
            }
            Ok(())
        })?;
        Ok((vs, arrows))
    }

    fn relations(&mut self) -> PResult<Vec<Combo>> {
        let mut rels = Vec::new();
        self.block(|p, kw| {
            if kw.text != "rel" {
                return Err(unknown_statement(&kw, &kw.text, "rel"));
            }
            rels.push(p.combo()?);
            Ok(())
        })?;
        Ok(rels)
    }

    fn module(&mut self) -> PResult<ModuleDecl> {
        let name = self.word("a module name")?;
        self.keyword("over")?;
        let over = self.word("an algebra name")?;
        let (mut dims, mut maps) = (Vec::new(), Vec::new());
        self.block(|p, kw| {
            match kw.text.as_str() {
                "vertex" => {
                    let v = p.word("a vertex name")?;
                    p.keyword("dim")?;
                    let (d, pos) = p.integer("a dimension")?;
                    let d = usize::try_from(d).map_err(|_| SpecError::at(ErrorKind::SyntaxError, pos, "dimension out of range"))?;
                    dims.push((v, d));
                }
                "arrow" => {
                    let a = p.word("an arrow name")?;
                    maps.push((a, p.matrix()?));
                }
                other => return Err(unknown_statement(&kw, other, "vertex, arrow")),
            }
            Ok(())
        })?;
        Ok(ModuleDecl { name, over, dims, maps })
    }

    /// `combo := term (('+'|'-') term)*`
    fn combo(&mut self) -> PResult<Combo> {
        let pos = self.peek().pos;
        let mut terms = Vec::new();
        let mut negative = false;
        if self.is_sym('-') {
            self.next();
            negative = true;
        } else if self.is_sym('+') {
            self.next();
        }
        loop {
            terms.push(self.term(negative)?);
            if self.is_sym('+') {
                negative = false;
            } else if self.is_sym('-') {
                negative = true;
            } else {
                break;
            }
            self.next();
        }
        Ok(Combo { pos, terms })
    }

    /// `term := [coeff '*'] path`, `path := name ('*' name)*`
    fn term(&mut self, negative: bool) -> PResult<Term> {
        let first = self.word("a coefficient or an arrow name")?;
        let mut coeff = None;
        let mut factors = Vec::new();
        if first.text.chars().all(|c| c.is_ascii_digit()) {
            let num = first
                .text
                .parse::<i64>()
                .map_err(|_| SpecError::at(ErrorKind::SyntaxError, first.pos, "integer out of range"))?;
            coeff = Some((self.rational_tail(num, first.pos)?, first.pos));
            self.expect_sym('*')?;
            factors.push(self.word("an arrow name")?);
        } else {
            factors.push(first);
        }
        while self.is_sym('*') {
            self.next();
            factors.push(self.word("an arrow name")?);
        }
        Ok(Term {
            negative,
            coeff,
            factors,
        })
    }

    /// `[[a, b], [c, d]]`, `[]` for any shape with a zero side.
    fn matrix(&mut self) -> PResult<MatrixLit> {
        let pos = self.expect_sym('[')?;
        let mut rows = Vec::new();
        self.skip_newlines();
        if self.is_sym(']') {
            self.next();
            return Ok(MatrixLit { pos, rows });
        }
        loop {
            self.skip_newlines();
            self.expect_sym('[')?;
            let mut row = Vec::new();
            self.skip_newlines();
            if !self.is_sym(']') {
                loop {
                    self.skip_newlines();
                    let tpos = self.peek().pos;
                    let num = self.signed_i64("a matrix entry")?;
                    row.push(self.rational_tail(num, tpos)?);
                    self.skip_newlines();
                    if self.is_sym(',') {
                        self.next();
                    } else {
                        break;
                    }
                }
            }
            self.expect_sym(']')?;
            rows.push(row);
            self.skip_newlines();
            if self.is_sym(',') {
                self.next();
            } else {
                break;
            }
        }
        self.skip_newlines();
        self.expect_sym(']')?;
        Ok(MatrixLit { pos, rows })
    }
}

fn unknown_statement(kw: &Name, found: &str, allowed: &str) -> SpecError {
    SpecError::at(
        ErrorKind::SyntaxError,
        kw.pos,
        format!("unknown statement `{found}` (expected one of: {allowed})"),
    )
}

// ---------------------------------------------------------------------------
// resolved document

#[derive(Clone, Debug)]
pub struct AlgebraDef {
    pub name: String,
    /// declared with the `k` shorthand
    pub shorthand: bool,
    pub algebra: Arc<VertexAlgebra>,
}

#[derive(Clone, Debug)]
pub struct ModuleDef {
    pub name: String,
    pub algebra: String,
    pub module: VertexModule,
    pub dims: Vec<usize>,
    /// one map per arrow of Σ, column convention (`dim target × dim source`)
    pub maps: Vec<Matrix>,
}

/// A parsed and fully built specification.
#[derive(Clone, Debug)]
pub struct SpecDocument {
    pub field: Field,
    pub algebras: Vec<AlgebraDef>,
    /// algebra name assigned to each vertex of Γ
    pub vertex_algebras: Vec<String>,
    pub lambda: Arc<GbpAlgebra>,
    pub modules: Vec<ModuleDef>,
}

impl SpecDocument {
    pub fn algebra_def(&self, name: &str) -> Option<&AlgebraDef> {
        self.algebras.iter().find(|a| a.name == name)
    }

    pub fn module_def(&self, name: &str) -> Option<&ModuleDef> {
        self.modules.iter().find(|m| m.name == name)
    }
}

pub fn parse_spec(text: &str, max_len: usize) -> PResult<SpecDocument> {
    let toks = lex(text)?;
    let end = toks.last().map(|t| t.pos).unwrap_or_default();
    let ast = Parser { toks, at: 0 }.document()?;
    resolve(ast, end, max_len)
}

fn resolve(ast: Ast, end: Pos, max_len: usize) -> PResult<SpecDocument> {
    let (field, _) = ast
        .field
        .ok_or_else(|| SpecError::at(ErrorKind::SyntaxError, Pos { line: 1, col: 1 }, "missing `field` declaration"))?;

    let mut algebras: Vec<AlgebraDef> = Vec::new();
    for decl in &ast.algebras {
        if algebras.iter().any(|a| a.name == decl.name.text) {
            return Err(SpecError::at(
                ErrorKind::DuplicateName,
                decl.name.pos,
                format!("algebra `{}` declared twice", decl.name.text),
            ));
        }
        let (algebra, shorthand) = match &decl.body {
            None => (VertexAlgebra::base_field(field, POINT_VERTEX), true),
            Some(body) => {
                let sigma = build_quiver(body.vertices.iter(), &body.arrows, false)?;
                let omega = body
                    .rels
                    .iter()
                    .map(|c| resolve_combo(field, &sigma, c))
                    .collect::<PResult<Vec<_>>>()?;
                let a = build_vertex_algebra(field, sigma, omega, max_len)
                    .map_err(|e| SpecError::from_core(e, Some(decl.name.pos)))?;
                (a, false)
            }
        };
        algebras.push(AlgebraDef {
            name: decl.name.text.clone(),
            shorthand,
            algebra: Arc::new(algebra),
        });
    }

    let (gamma_pos, gvs, garrows) = ast
        .gamma
        .ok_or_else(|| SpecError::at(ErrorKind::SyntaxError, end, "missing `gamma` block"))?;
    let mut vertex_algebras = Vec::new();
    let mut assigned = Vec::new();
    for (_, a) in &gvs {
        let def = algebras.iter().find(|d| d.name == a.text).ok_or_else(|| {
            SpecError::at(ErrorKind::UnknownName, a.pos, format!("unknown algebra `{}`", a.text))
        })?;
        vertex_algebras.push(def.name.clone());
        assigned.push(def.algebra.clone());
    }
    let gamma = build_quiver(gvs.iter().map(|(v, _)| v), &garrows, true)?;
    let rel_pos = ast.relations.as_ref().map(|(p, _)| *p);
    let relations = match &ast.relations {
        Some((_, combos)) => combos
            .iter()
            .map(|c| resolve_combo(field, &gamma, c))
            .collect::<PResult<Vec<_>>>()?,
        None => Vec::new(),
    };
    let lambda = GbpAlgebra::build(field, gamma, assigned, relations)
        .map_err(|e| SpecError::from_core(e, rel_pos.or(Some(gamma_pos))))?;

    let mut modules: Vec<ModuleDef> = Vec::new();
    for decl in &ast.modules {
        if modules.iter().any(|m| m.name == decl.name.text) {
            return Err(SpecError::at(
                ErrorKind::DuplicateName,
                decl.name.pos,
                format!("module `{}` declared twice", decl.name.text),
            ));
        }
        let def = algebras.iter().find(|d| d.name == decl.over.text).ok_or_else(|| {
            SpecError::at(
                ErrorKind::UnknownName,
                decl.over.pos,
                format!("unknown algebra `{}`", decl.over.text),
            )
        })?;
        modules.push(resolve_module(field, def, decl)?);
    }

    Ok(SpecDocument {
        field,
        algebras,
        vertex_algebras,
        lambda: Arc::new(lambda),
        modules,
    })
}

fn build_quiver<'a>(
    vertices: impl Iterator<Item = &'a Name>,
    arrows: &[(Name, Name, Name)],
    acyclic: bool,
) -> PResult<Quiver> {
    let mut q = Quiver::new();
    for v in vertices {
        q.add_vertex(&v.text).map_err(|e| SpecError::from_core(e, Some(v.pos)))?;
    }
    for (name, s, t) in arrows {
        for v in [s, t] {
            if q.vertex_index(&v.text).is_err() {
                return Err(SpecError::at(
                    ErrorKind::UnknownName,
                    v.pos,
                    format!("unknown vertex `{}`", v.text),
                ));
            }
        }
        q.add_arrow(&name.text, &s.text, &t.text)
            .map_err(|e| SpecError::from_core(e, Some(name.pos)))?;
        if acyclic && !q.is_acyclic() {
            return Err(SpecError::at(
                ErrorKind::CyclicGamma,
                name.pos,
                format!("arrow `{}` closes a directed cycle in Γ", name.text),
            ));
        }
    }
    Ok(q)
}

fn resolve_combo(field: Field, q: &Quiver, c: &Combo) -> PResult<RelationCombo> {
    let mut terms = Vec::new();
    for t in &c.terms {
        let mut coeff = match &t.coeff {
            Some((s, pos)) => field.element(s).map_err(|e| SpecError::from_core(e, Some(*pos)))?,
            None => field.one(),
        };
        if t.negative {
            coeff = field.neg(&coeff);
        }
        terms.push((coeff, resolve_path(q, &t.factors)?));
    }
    RelationCombo::new(q, terms).map_err(|e| SpecError::from_core(e, Some(c.pos)))
}

/// Arrow names composed left to right; a lone `e_<v>` is the trivial path at `v`.
fn resolve_path(q: &Quiver, factors: &[Name]) -> PResult<Path> {
    if let [only] = factors {
        if q.arrow_index(&only.text).is_err() {
            if let Some(v) = only.text.strip_prefix("e_").and_then(|v| q.vertex_index(v).ok()) {
                return Ok(Path::trivial(v));
            }
        }
    }
    let arrows = factors
        .iter()
        .map(|f| {
            q.arrow_index(&f.text)
                .map_err(|_| SpecError::at(ErrorKind::UnknownName, f.pos, format!("unknown arrow `{}`", f.text)))
        })
        .collect::<PResult<Vec<_>>>()?;
    Path::from_arrows(q, arrows).map_err(|e| SpecError::from_core(e, Some(factors[0].pos)))
}

fn resolve_module(field: Field, def: &AlgebraDef, decl: &ModuleDecl) -> PResult<ModuleDef> {
    let sigma = def.algebra.sigma();
    let mut dims = vec![0usize; sigma.vertex_count()];
    let mut seen = vec![false; sigma.vertex_count()];
    for (v, d) in &decl.dims {
        let k = sigma.vertex_index(&v.text).map_err(|_| {
            SpecError::at(
                ErrorKind::UnknownName,
                v.pos,
                format!("`{}` is not a vertex of `{}`", v.text, def.name),
            )
        })?;
        if seen[k] {
            return Err(SpecError::at(
                ErrorKind::DuplicateName,
                v.pos,
                format!("vertex `{}` given twice", v.text),
            ));
        }
        seen[k] = true;
        dims[k] = *d;
    }
    let mut maps: Vec<Option<Matrix>> = vec![None; sigma.arrow_count()];
    for (a, lit) in &decl.maps {
        let k = sigma.arrow_index(&a.text).map_err(|_| {
            SpecError::at(
                ErrorKind::UnknownName,
                a.pos,
                format!("`{}` is not an arrow of `{}`", a.text, def.name),
            )
        })?;
        if maps[k].is_some() {
            return Err(SpecError::at(
                ErrorKind::DuplicateName,
                a.pos,
                format!("arrow `{}` given twice", a.text),
            ));
        }
        let arrow = sigma.arrow(k);
        let (rows, cols) = (dims[arrow.target], dims[arrow.source]);
        let shape_ok = if lit.rows.is_empty() {
            rows == 0 || cols == 0
        } else {
            lit.rows.len() == rows && lit.rows.iter().all(|r| r.len() == cols)
        };
        if !shape_ok {
            return Err(SpecError::at(
                ErrorKind::InvalidModule,
                lit.pos,
                format!("map for `{}` must be {rows}x{cols} (target x source)", a.text),
            ));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (r, row) in lit.rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, field.element(v).map_err(|e| SpecError::from_core(e, Some(lit.pos)))?);
            }
        }
        maps[k] = Some(m);
    }
    let maps: Vec<Matrix> = maps
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            let a = sigma.arrow(k);
            m.unwrap_or_else(|| Matrix::zeros(field, dims[a.target], dims[a.source]))
        })
        .collect();
    let row_maps: Vec<Matrix> = maps.iter().map(Matrix::transpose).collect();
    let module = VertexModule::from_quiver_representation(def.algebra.clone(), &dims, &row_maps)
        .and_then(|m| m.check_compatible().map(|_| m))
        .map_err(|e| SpecError::from_core(e, Some(decl.name.pos)))?;
    Ok(ModuleDef {
        name: decl.name.text.clone(),
        algebra: def.name.clone(),
        module,
        dims,
        maps,
    })
}

/// Looks up a vertex by name, falling back to its 1-based position.
pub fn lookup(names: &[String], key: &str) -> Option<usize> {
    names
        .iter()
        .position(|n| n == key)
        .or_else(|| key.parse::<usize>().ok().filter(|&k| k >= 1 && k <= names.len()).map(|k| k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = "
        field Q
        algebra k k
        algebra A {
            vertices v
            arrow g v v
            rel g*g
        }
        gamma {
            vertex 1 k; vertex 2 A; vertex 3 k
            arrow alpha 1 2
            arrow beta 2 3
        }
        relations { rel alpha*beta }
    ";

    fn err(text: &str) -> SpecError {
        parse_spec(text, 64).unwrap_err()
    }

    #[test]
    fn line_example_builds() {
        let doc = parse_spec(LINE, 64).unwrap();
        assert_eq!(doc.lambda.dim(), 8);
        assert_eq!(doc.vertex_algebras, ["k", "A", "k"]);
        assert!(Arc::ptr_eq(doc.lambda.algebra(0), doc.lambda.algebra(2)));
    }

    #[test]
    fn empty_input() {
        for text in ["", "   \n# only a comment\n"] {
            let e = err(text);
            assert_eq!(e.kind, ErrorKind::SyntaxError);
            if text.is_empty() {
                assert_eq!(e.pos, Some(Pos { line: 1, col: 1 }));
            }
        }
    }

    #[test]
    fn undeclared_arrow_in_relation() {
        let e = err(&LINE.replace("rel alpha*beta", "rel alpha*gamma"));
        assert_eq!(e.kind, ErrorKind::UnknownName);
        assert!(e.message.contains("`gamma`"), "{e}");
        assert_eq!(e.pos.unwrap().line, 14);
    }

    #[test]
    fn cyclic_gamma_points_at_closing_arrow() {
        let e = err("field Q\nalgebra k k\ngamma {\n vertex a k; vertex b k\n arrow x a b\n arrow y b a\n}\n");
        assert_eq!(e.kind, ErrorKind::CyclicGamma);
        assert_eq!(e.pos, Some(Pos { line: 6, col: 8 }));
    }

    #[test]
    fn loop_without_relation_is_infinite() {
        let e = parse_spec(
            "field Q\nalgebra L { vertices v; arrow g v v }\ngamma { vertex 1 L }\n",
            8,
        )
        .unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotFiniteDimensional);
        assert_eq!(e.pos, Some(Pos { line: 2, col: 9 }));
    }

    #[test]
    fn coefficients_and_signs() {
        let text = "field Q\nalgebra k k\ngamma { vertex 1 k; vertex 2 k; vertex 3 k\n arrow a 1 2; arrow b 1 2; arrow c 2 3 }\nrelations { rel a*c - 1/2*b*c }\n";
        let doc = parse_spec(text, 64).unwrap();
        let r = &doc.lambda.relations()[0];
        assert_eq!(r.terms()[1].0, Scalar::ratio(-1, 2));
        assert_eq!(doc.lambda.dim(), 3 + 3 + 1);
    }

    #[test]
    fn finite_field_coefficients_reduce() {
        let text = "field GF 5\nalgebra k k\ngamma { vertex 1 k; vertex 2 k; vertex 3 k\n arrow a 1 2; arrow b 1 2; arrow c 2 3 }\nrelations { rel a*c - 1/2*b*c }\n";
        let doc = parse_spec(text, 64).unwrap();
        // −1/2 = −3 = 2 in GF(5)
        assert_eq!(doc.lambda.relations()[0].terms()[1].0, Scalar::from_int(2));
        let bad = err(&text.replace("1/2", "1/5"));
        assert_eq!(bad.kind, ErrorKind::InvalidField);
    }

    #[test]
    fn modules_use_column_convention() {
        let text = "field Q\nalgebra A { vertices 1 2; arrow x 1 2 }\ngamma { vertex 1 A }\nmodule M over A {\n vertex 1 dim 1; vertex 2 dim 2\n arrow x [[1], [0]]\n}\n";
        let doc = parse_spec(text, 64).unwrap();
        let m = doc.module_def("M").unwrap();
        assert_eq!(m.module.dim(), 3);
        assert_eq!((m.maps[0].rows(), m.maps[0].cols()), (2, 1));
        let bad = err(&text.replace("[[1], [0]]", "[[1, 0]]"));
        assert_eq!(bad.kind, ErrorKind::InvalidModule);
        assert_eq!(bad.pos.unwrap().line, 6);
    }

    #[test]
    fn modules_must_satisfy_relations() {
        let text = "field Q\nalgebra T { vertices v; arrow g v v; rel g*g }\ngamma { vertex 1 T }\nmodule M over T { vertex v dim 1; arrow g [[1]] }\n";
        assert_eq!(err(text).kind, ErrorKind::InvalidModule);
        assert!(parse_spec(&text.replace("[[1]]", "[[0]]"), 64).is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = err("field Q\nalgebra A { vertices v ; bogus }\n");
        assert_eq!(e.kind, ErrorKind::SyntaxError);
        assert_eq!(e.pos, Some(Pos { line: 2, col: 26 }));
        let e = err("field Q\ngamma { vertex 1 k $ }\n");
        assert_eq!(e.pos, Some(Pos { line: 2, col: 20 }));
        assert_eq!(err("field R\n").kind, ErrorKind::InvalidField);
        assert_eq!(err("field GF 6\n").kind, ErrorKind::InvalidField);
        assert_eq!(err("algebra k k\ngamma { vertex 1 k }").kind, ErrorKind::SyntaxError);
    }

    #[test]
    fn lookup_prefers_names() {
        let names: Vec<String> = ["b", "1", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(lookup(&names, "1"), Some(1));
        assert_eq!(lookup(&names, "3"), Some(2));
        assert_eq!(lookup(&names, "c"), Some(2));
        assert_eq!(lookup(&names, "4"), None);
    }
}
