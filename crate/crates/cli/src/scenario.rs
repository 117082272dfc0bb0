//! Scenario files: declarations of series, matrices, algebras and groups,
//! followed by tasks with optional expected results.
//!
//! ```text
//! name: sklyanin
//! zeta_order: 3
//! matrix g1 = [[z, 0, 0], [0, z^2, 0], [0, 0, 1]]
//! group G = <g1, g2>
//! series H = (1+t)^3/(1-t)^4
//! algebra A = { kind: quantum_affine, degrees: [1, 1], q: [[1, -1], [-1, 1]] }
//! task molien { group: G, expect: { isCyclotomic: true } }
//! ```
//!
//! Statements start in the first column; maps and lists may span lines.

use std::collections::BTreeMap;
use std::fmt;

use gradinv::algebra::{AlgebraPresentation, Monomial, NormalElement};
use gradinv::exact::{parse_in, parse_rational_poly};
use gradinv::{Cyclotomic, CyclotomicMatrix, Field, Matrix, RationalFunction};

use crate::syntax::{Cursor, Diagnostic, Entry, Parsed, Pos, Value};

/// Why a scenario was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    UndeclaredInput,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Parse => "parse error",
            ErrorKind::UndeclaredInput => "undeclared input",
        };
        write!(f, "{}: {kind}: {}", self.pos, self.message)
    }
}

impl From<Diagnostic> for ScenarioError {
    fn from(d: Diagnostic) -> Self {
        ScenarioError { kind: ErrorKind::Parse, pos: d.pos, message: d.message }
    }
}

/// All errors found in one file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioErrors(pub Vec<ScenarioError>);

impl fmt::Display for ScenarioErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ScenarioErrors {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Veronese,
    Cyc,
    Closure,
    Subgroups,
    Molien,
    Classify,
    Trace,
    Betti,
}

impl TaskKind {
    pub const ALL: [TaskKind; 8] = [
        TaskKind::Veronese,
        TaskKind::Cyc,
        TaskKind::Closure,
        TaskKind::Subgroups,
        TaskKind::Molien,
        TaskKind::Classify,
        TaskKind::Trace,
        TaskKind::Betti,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Veronese => "veronese",
            TaskKind::Cyc => "cyc",
            TaskKind::Closure => "closure",
            TaskKind::Subgroups => "subgroups",
            TaskKind::Molien => "molien",
            TaskKind::Classify => "classify",
            TaskKind::Trace => "trace",
            TaskKind::Betti => "betti",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

/// Trace series for a group: `1/det(I - t g)`, or brute force on an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSource {
    pub algebra: Option<String>,
    pub truncation: Option<usize>,
    pub bounds: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Veronese { series: String, r: usize, bounds: Option<(usize, usize)> },
    Cyc { series: String },
    Closure { group: String },
    Subgroups { group: String },
    Molien { group: String, traces: TraceSource },
    Classify { group: String, traces: TraceSource, gk: Option<usize>, each_subgroup: bool },
    Trace { algebra: String, matrix: String, power: usize, truncation: Option<usize>, bounds: Option<(usize, usize)> },
    Betti { algebra: String, truncation: Option<usize>, ambient: Option<String>, omega_degree: Option<usize> },
}

impl Task {
    pub fn kind(&self) -> TaskKind {
        match self {
            Task::Veronese { .. } => TaskKind::Veronese,
            Task::Cyc { .. } => TaskKind::Cyc,
            Task::Closure { .. } => TaskKind::Closure,
            Task::Subgroups { .. } => TaskKind::Subgroups,
            Task::Molien { .. } => TaskKind::Molien,
            Task::Classify { .. } => TaskKind::Classify,
            Task::Trace { .. } => TaskKind::Trace,
            Task::Betti { .. } => TaskKind::Betti,
        }
    }

    /// The declared input the task is about, for display.
    pub fn subject(&self) -> &str {
        match self {
            Task::Veronese { series, .. } | Task::Cyc { series } => series,
            Task::Closure { group }
            | Task::Subgroups { group }
            | Task::Molien { group, .. }
            | Task::Classify { group, .. } => group,
            Task::Trace { matrix, .. } => matrix,
            Task::Betti { algebra, .. } => algebra,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaskSpec {
    pub task: Task,
    pub pos: Pos,
    /// A map from report fields to expected values.
    pub expect: Option<Value>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub zeta_order: usize,
    pub series: BTreeMap<String, RationalFunction>,
    pub matrices: BTreeMap<String, CyclotomicMatrix>,
    pub algebras: BTreeMap<String, AlgebraPresentation<Cyclotomic>>,
    pub groups: BTreeMap<String, Vec<String>>,
    pub tasks: Vec<TaskSpec>,
}

impl Scenario {
    pub fn new(name: impl Into<String>, zeta_order: usize) -> Self {
        Scenario {
            name: name.into(),
            zeta_order,
            series: BTreeMap::new(),
            matrices: BTreeMap::new(),
            algebras: BTreeMap::new(),
            groups: BTreeMap::new(),
            tasks: Vec::new(),
        }
    }
}

enum Statement {
    Name(String),
    ZetaOrder(Value),
    Matrix(String, Pos, Value),
    Series(String, Pos, String, Pos),
    Algebra(String, Pos, Value),
    Group(String, Pos, Vec<(String, Pos)>),
    Task(String, Pos, Value),
}

fn statement(c: &mut Cursor) -> Parsed<Statement> {
    let (kw, kpos) = c.ident()?;
    let st = match kw.as_str() {
        "name" => {
            c.expect(':')?;
            Statement::Name(c.rest_of_line()?.0)
        }
        "zeta_order" => {
            c.expect(':')?;
            Statement::ZetaOrder(c.value()?)
        }
        "matrix" | "algebra" => {
            let (name, pos) = c.ident()?;
            c.expect('=')?;
            let v = c.value()?;
            if kw == "matrix" {
                Statement::Matrix(name, pos, v)
            } else {
                Statement::Algebra(name, pos, v)
            }
        }
        "series" => {
            let (name, pos) = c.ident()?;
            c.expect('=')?;
            let (text, tpos) = c.rest_of_line()?;
            Statement::Series(name, pos, text, tpos)
        }
        "group" => {
            let (name, pos) = c.ident()?;
            c.expect('=')?;
            c.expect('<')?;
            let mut gens = vec![c.ident()?];
            while c.eat(',') {
                gens.push(c.ident()?);
            }
            c.expect('>')?;
            Statement::Group(name, pos, gens)
        }
        "task" => {
            let (kind, pos) = c.ident()?;
            c.skip_blank();
            if c.peek() != Some('{') {
                return Err(c.error("expected `{` after the task kind"));
            }
            Statement::Task(kind, pos, c.value()?)
        }
        other => return Err(Diagnostic::new(kpos, format!("unknown statement `{other}`"))),
    };
    c.end_of_statement()?;
    Ok(st)
}

fn parse_error(pos: Pos, message: impl Into<String>) -> ScenarioError {
    ScenarioError { kind: ErrorKind::Parse, pos, message: message.into() }
}

fn undeclared(pos: Pos, what: &str, name: &str) -> ScenarioError {
    ScenarioError { kind: ErrorKind::UndeclaredInput, pos, message: format!("{what} `{name}` is not declared") }
}

pub fn atom(v: &Value) -> Result<(&str, Pos), ScenarioError> {
    match v {
        Value::Atom { text, pos } => Ok((text, *pos)),
        other => Err(parse_error(other.pos(), format!("expected a scalar, found {}", other.kind()))),
    }
}

fn list(v: &Value) -> Result<&[Value], ScenarioError> {
    match v {
        Value::List { items, .. } => Ok(items),
        other => Err(parse_error(other.pos(), format!("expected a list, found {}", other.kind()))),
    }
}

fn map(v: &Value) -> Result<&[Entry], ScenarioError> {
    match v {
        Value::Map { entries, .. } => Ok(entries),
        other => Err(parse_error(other.pos(), format!("expected a map, found {}", other.kind()))),
    }
}

fn usize_of(v: &Value) -> Result<usize, ScenarioError> {
    let (s, pos) = atom(v)?;
    s.parse().map_err(|_| parse_error(pos, format!("expected a non-negative integer, found `{s}`")))
}

fn bool_of(v: &Value) -> Result<bool, ScenarioError> {
    let (s, pos) = atom(v)?;
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(parse_error(pos, format!("expected `true` or `false`, found `{s}`"))),
    }
}

fn name_of(v: &Value) -> Result<(String, Pos), ScenarioError> {
    let (s, pos) = atom(v)?;
    if s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') && !s.starts_with(|c: char| c.is_ascii_digit()) {
        Ok((s.to_string(), pos))
    } else {
        Err(parse_error(pos, format!("expected a name, found `{s}`")))
    }
}

/// An element of ℚ(ζ_N) written as a rational polynomial in `z`.
pub fn cyclotomic_of(v: &Value, zeta_order: usize) -> Result<Cyclotomic, ScenarioError> {
    let (s, pos) = atom(v)?;
    let p = parse_rational_poly(s, 'z', pos.line, pos.column).map_err(|e| parse_error(pos, e.to_string()))?;
    Ok(Cyclotomic::from_poly(zeta_order, &p))
}

/// A rational function in `t`.
pub fn series_of(text: &str, pos: Pos) -> Result<RationalFunction, ScenarioError> {
    parse_in(text, 't', pos.line, pos.column).map_err(|e| match e {
        gradinv::Error::Parse { line, column, message } => parse_error(Pos { line, column }, message),
        other => parse_error(pos, other.to_string()),
    })
}

fn rows_of(v: &Value, zeta_order: usize) -> Result<Vec<Vec<Cyclotomic>>, ScenarioError> {
    let rows = list(v)?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = list(row)?;
        if let Some(first) = out.first().map(Vec::len) {
            if entries.len() != first {
                return Err(parse_error(row.pos(), format!("row has {} entries, expected {first}", entries.len())));
            }
        }
        out.push(entries.iter().map(|e| cyclotomic_of(e, zeta_order)).collect::<Result<Vec<_>, _>>()?);
    }
    if out.is_empty() || out[0].is_empty() {
        return Err(parse_error(v.pos(), "empty matrix"));
    }
    Ok(out)
}

/// A square matrix literal with entries in `z`.
pub fn matrix_of(v: &Value, zeta_order: usize) -> Result<CyclotomicMatrix, ScenarioError> {
    let rows = rows_of(v, zeta_order)?;
    if rows.len() != rows[0].len() {
        return Err(parse_error(v.pos(), format!("matrix is {}x{}, expected a square matrix", rows.len(), rows[0].len())));
    }
    Ok(Matrix::from_rows(rows))
}

/// Parses `x*y^2`, `x y y` or `1` against generator names, as a word.
fn letters_of(text: &str, pos: Pos, names: &[String]) -> Result<Vec<usize>, ScenarioError> {
    let mut out = Vec::new();
    for factor in text.split(|c: char| c == '*' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        if factor == "1" {
            continue;
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().map_err(|_| parse_error(pos, format!("bad exponent in `{factor}`")))?),
            None => (factor, 1),
        };
        let i = names
            .iter()
            .position(|n| n == base)
            .ok_or_else(|| parse_error(pos, format!("unknown generator `{base}` (generators: {})", names.join(", "))))?;
        out.extend(std::iter::repeat(i).take(exp));
    }
    Ok(out)
}

fn pbw_of(text: &str, pos: Pos, names: &[String]) -> Result<Monomial, ScenarioError> {
    let mut exps = vec![0; names.len()];
    let letters = letters_of(text, pos, names)?;
    if letters.windows(2).any(|w| w[0] > w[1]) {
        return Err(parse_error(pos, format!("`{text}` is not in PBW order ({})", names.join(" < "))));
    }
    for i in letters {
        exps[i] += 1;
    }
    Ok(Monomial(exps))
}

struct Fields<'a> {
    entries: Vec<&'a Entry>,
    pos: Pos,
}

impl<'a> Fields<'a> {
    fn new(v: &'a Value) -> Result<Self, ScenarioError> {
        Ok(Fields { entries: map(v)?.iter().collect(), pos: v.pos() })
    }

    fn take(&mut self, key: &str) -> Option<&'a Entry> {
        let i = self.entries.iter().position(|e| e.key == key)?;
        Some(self.entries.remove(i))
    }

    fn require(&mut self, key: &str) -> Result<&'a Entry, ScenarioError> {
        self.take(key).ok_or_else(|| parse_error(self.pos, format!("missing field `{key}`")))
    }

    fn usize(&mut self, key: &str) -> Result<Option<usize>, ScenarioError> {
        self.take(key).map(|e| usize_of(&e.value)).transpose()
    }

    fn pair(&mut self, key: &str) -> Result<Option<(usize, usize)>, ScenarioError> {
        let Some(e) = self.take(key) else { return Ok(None) };
        match list(&e.value)? {
            [a, b] => Ok(Some((usize_of(a)?, usize_of(b)?))),
            _ => Err(parse_error(e.value.pos(), "expected a pair `[num, den]`")),
        }
    }

    fn finish(self) -> Result<(), ScenarioError> {
        match self.entries.first() {
            Some(e) => Err(parse_error(e.pos, format!("unknown field `{}`", e.key))),
            None => Ok(()),
        }
    }
}

/// A presentation literal, e.g.
/// `{ kind: normal_quotient, degrees: [1, 1], q: -1, normal: [{ coeffs: [1], monomials: [x^2] }] }`.
/// `q` is a full matrix or a single value used for every pair.
pub fn algebra_of(v: &Value, zeta_order: usize) -> Result<AlgebraPresentation<Cyclotomic>, ScenarioError> {
    let mut f = Fields::new(v)?;
    let kind = f.require("kind")?;
    let (kind_name, kind_pos) = atom(&kind.value)?;
    let degrees: Vec<usize> = list(&f.require("degrees")?.value)?.iter().map(usize_of).collect::<Result<_, _>>()?;
    let n = degrees.len();
    let names: Option<Vec<String>> = f
        .take("names")
        .map(|e| list(&e.value)?.iter().map(|v| name_of(v).map(|(s, _)| s)).collect::<Result<_, _>>())
        .transpose()?;
    let mut q = || -> Result<Vec<Vec<Cyclotomic>>, ScenarioError> {
        let e = f.require("q")?;
        if let Value::Atom { .. } = e.value {
            let c = cyclotomic_of(&e.value, zeta_order)?;
            return Ok((0..n).map(|i| (0..n).map(|j| if i == j { Cyclotomic::from_i64(1) } else { c.clone() }).collect()).collect());
        }
        let rows = rows_of(&e.value, zeta_order)?;
        if rows.len() != n || rows[0].len() != n {
            return Err(parse_error(e.value.pos(), format!("q must be {n}x{n}")));
        }
        Ok(rows)
    };
    let p = match kind_name {
        "free" => AlgebraPresentation::free(degrees),
        "quantum_affine" => AlgebraPresentation::quantum_affine(degrees, q()?),
        "monomial_quotient" | "normal_quotient" => {
            let qm = if kind_name == "normal_quotient" { Some(q()?) } else { None };
            let base = match qm {
                Some(qm) => AlgebraPresentation::quantum_affine(degrees, qm),
                None => AlgebraPresentation::free(degrees),
            };
            let base = match &names {
                Some(ns) => base.with_names(ns.clone()),
                None => base,
            };
            let names = base.names().to_vec();
            if kind_name == "monomial_quotient" {
                let words = list(&f.require("forbidden")?.value)?
                    .iter()
                    .map(|w| {
                        let (s, pos) = atom(w)?;
                        letters_of(s, pos, &names)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                AlgebraPresentation::monomial_quotient(base.degrees().to_vec(), words)
            } else {
                let mut relations = Vec::new();
                for r in list(&f.require("normal")?.value)? {
                    let mut rf = Fields::new(r)?;
                    let coeffs = list(&rf.require("coeffs")?.value)?;
                    let monos = list(&rf.require("monomials")?.value)?;
                    rf.finish()?;
                    if coeffs.len() != monos.len() {
                        return Err(parse_error(r.pos(), format!("{} coefficients for {} monomials", coeffs.len(), monos.len())));
                    }
                    let mut terms = Vec::new();
                    for (c, m) in coeffs.iter().zip(monos) {
                        let (s, pos) = atom(m)?;
                        terms.push((cyclotomic_of(c, zeta_order)?, pbw_of(s, pos, &names)?));
                    }
                    relations.push(NormalElement::new(terms));
                }
                base.with_relations(relations)
            }
        }
        other => {
            return Err(parse_error(
                kind_pos,
                format!("unknown algebra kind `{other}` (free, monomial_quotient, quantum_affine, normal_quotient)"),
            ))
        }
    };
    f.finish()?;
    let p = match names {
        Some(ns) => p.with_names(ns),
        None => p,
    };
    p.validate().map_err(|e| parse_error(v.pos(), e.to_string()))?;
    Ok(p)
}

fn trace_source(f: &mut Fields) -> Result<TraceSource, ScenarioError> {
    let algebra = f.take("algebra").map(|e| name_of(&e.value).map(|(s, _)| s)).transpose()?;
    Ok(TraceSource { algebra, truncation: f.usize("truncation")?, bounds: f.pair("bounds")? })
}

fn task_of(kind: &str, kpos: Pos, v: &Value) -> Result<TaskSpec, ScenarioError> {
    let kind = TaskKind::from_name(kind).ok_or_else(|| {
        let all: Vec<_> = TaskKind::ALL.iter().map(|k| k.as_str()).collect();
        parse_error(kpos, format!("unknown task `{kind}` ({})", all.join(", ")))
    })?;
    let mut f = Fields::new(v)?;
    let name = |f: &mut Fields, key: &str| -> Result<String, ScenarioError> { Ok(name_of(&f.require(key)?.value)?.0) };
    let task = match kind {
        TaskKind::Veronese => {
            let series = name(&mut f, "series")?;
            let r = usize_of(&f.require("r")?.value)?;
            if r == 0 {
                return Err(parse_error(v.pos(), "`r` must be positive"));
            }
            Task::Veronese { series, r, bounds: f.pair("bounds")? }
        }
        TaskKind::Cyc => Task::Cyc { series: name(&mut f, "series")? },
        TaskKind::Closure => Task::Closure { group: name(&mut f, "group")? },
        TaskKind::Subgroups => Task::Subgroups { group: name(&mut f, "group")? },
        TaskKind::Molien => Task::Molien { group: name(&mut f, "group")?, traces: trace_source(&mut f)? },
        TaskKind::Classify => Task::Classify {
            group: name(&mut f, "group")?,
            traces: trace_source(&mut f)?,
            gk: f.usize("gk")?,
            each_subgroup: f.take("subgroups").map(|e| bool_of(&e.value)).transpose()?.unwrap_or(false),
        },
        TaskKind::Trace => Task::Trace {
            algebra: name(&mut f, "algebra")?,
            matrix: name(&mut f, "matrix")?,
            power: f.usize("power")?.unwrap_or(1),
            truncation: f.usize("truncation")?,
            bounds: f.pair("bounds")?,
        },
        TaskKind::Betti => {
            let algebra = name(&mut f, "algebra")?;
            let truncation = f.usize("truncation")?;
            let ambient = f.take("ambient").map(|e| name_of(&e.value).map(|(s, _)| s)).transpose()?;
            let omega_degree = f.usize("omega_degree")?;
            if ambient.is_some() != omega_degree.is_some() {
                return Err(parse_error(v.pos(), "`ambient` and `omega_degree` go together"));
            }
            Task::Betti { algebra, truncation, ambient, omega_degree }
        }
    };
    let expect = match f.take("expect") {
        Some(e) => {
            map(&e.value)?;
            Some(e.value.clone())
        }
        None => None,
    };
    f.finish()?;
    Ok(TaskSpec { task, pos: kpos, expect })
}

impl Scenario {
    /// Checks that every name a task refers to is declared.
    pub fn check_references(&self) -> Vec<ScenarioError> {
        let mut errors = Vec::new();
        let mut need = |ok: bool, pos: Pos, what: &str, name: &str| {
            if !ok {
                errors.push(undeclared(pos, what, name));
            }
        };
        for t in &self.tasks {
            let p = t.pos;
            match &t.task {
                Task::Veronese { series, .. } | Task::Cyc { series } => need(self.series.contains_key(series), p, "series", series),
                Task::Closure { group } | Task::Subgroups { group } => need(self.groups.contains_key(group), p, "group", group),
                Task::Molien { group, traces } | Task::Classify { group, traces, .. } => {
                    need(self.groups.contains_key(group), p, "group", group);
                    if let Some(a) = &traces.algebra {
                        need(self.algebras.contains_key(a), p, "algebra", a);
                    }
                }
                Task::Trace { algebra, matrix, .. } => {
                    need(self.algebras.contains_key(algebra), p, "algebra", algebra);
                    need(self.matrices.contains_key(matrix), p, "matrix", matrix);
                }
                Task::Betti { algebra, ambient, .. } => {
                    need(self.algebras.contains_key(algebra), p, "algebra", algebra);
                    if let Some(a) = ambient {
                        need(self.algebras.contains_key(a), p, "algebra", a);
                    }
                }
            }
        }
        errors
    }
}

/// Parses and validates a scenario, reporting every error found.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioErrors> {
    let mut c = Cursor::new(text);
    let mut statements = Vec::new();
    let mut errors: Vec<ScenarioError> = Vec::new();
    loop {
        c.skip_space();
        if c.at_end() {
            break;
        }
        match statement(&mut c) {
            Ok(s) => statements.push(s),
            Err(d) => {
                errors.push(d.into());
                c.recover();
            }
        }
    }

    let mut zeta_order = 1;
    for s in &statements {
        if let Statement::ZetaOrder(v) = s {
            match usize_of(v) {
                Ok(0) => errors.push(parse_error(v.pos(), "zeta_order must be positive")),
                Ok(n) => zeta_order = n,
                Err(e) => errors.push(e),
            }
        }
    }

    let mut sc = Scenario::new("", zeta_order);
    let mut declared: BTreeMap<String, Pos> = BTreeMap::new();
    let mut declare = |name: &str, pos: Pos, errors: &mut Vec<ScenarioError>| -> bool {
        if let Some(prev) = declared.get(name) {
            errors.push(parse_error(pos, format!("`{name}` is already declared at {prev}")));
            false
        } else {
            declared.insert(name.to_string(), pos);
            true
        }
    };
    let mut group_decls = Vec::new();
    for s in statements {
        let r: Result<(), ScenarioError> = (|| {
            match s {
                Statement::Name(n) => sc.name = n,
                Statement::ZetaOrder(_) => {}
                Statement::Matrix(name, pos, v) => {
                    let m = matrix_of(&v, zeta_order)?;
                    if declare(&name, pos, &mut errors) {
                        sc.matrices.insert(name, m);
                    }
                }
                Statement::Series(name, pos, text, tpos) => {
                    let f = series_of(&text, tpos)?;
                    if declare(&name, pos, &mut errors) {
                        sc.series.insert(name, f);
                    }
                }
                Statement::Algebra(name, pos, v) => {
                    let a = algebra_of(&v, zeta_order)?;
                    if declare(&name, pos, &mut errors) {
                        sc.algebras.insert(name, a);
                    }
                }
                Statement::Group(name, pos, gens) => {
                    if declare(&name, pos, &mut errors) {
                        group_decls.push((name, gens));
                    }
                }
                Statement::Task(kind, pos, v) => sc.tasks.push(task_of(&kind, pos, &v)?),
            }
            Ok(())
        })();
        if let Err(e) = r {
            errors.push(e);
        }
    }
    for (name, gens) in group_decls {
        let mut dim = None;
        for (g, pos) in &gens {
            match sc.matrices.get(g) {
                None => errors.push(undeclared(*pos, "matrix", g)),
                Some(m) => match dim {
                    Some(d) if d != m.rows() => errors.push(parse_error(*pos, format!("`{g}` is {0}x{0}, expected {d}x{d}", m.rows()))),
                    _ => dim = Some(m.rows()),
                },
            }
        }
        sc.groups.insert(name, gens.into_iter().map(|(g, _)| g).collect());
    }
    errors.extend(sc.check_references());
    if sc.name.is_empty() {
        sc.name = "scenario".into();
    }
    if errors.is_empty() {
        Ok(sc)
    } else {
        errors.sort_by_key(|e| e.pos);
        Err(ScenarioErrors(errors))
    }
}
