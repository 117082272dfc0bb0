//! Runs scenario tasks and assembles their reports.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::{json, Map, Value as Json};

use gradinv::algebra::{
    betti_numbers, brute_force_trace, euler_check, growth_estimate, invariant_dims, tor_inequality_check,
    AlgebraKind, AlgebraPresentation, BettiTable, GradedAlgebraTruncation, GrowthHint,
};
use gradinv::cyclo::{cyc_number, factor_cyclotomic, gorenstein_symmetry, is_cyclotomic};
use gradinv::exact::{reconstruct_field, required_order};
use gradinv::grp::{
    classical_bireflection_rank, classify_pole, closure, generated_by_quasi_bireflections, hdet, molien, subgroups,
    FiniteMatrixGroup, Provenance, TraceAssignment,
};
use gradinv::hilbert::{veronese_bw, veronese_section};
use gradinv::{BigRational, Cyclotomic, Field, IntPolynomial, Matrix, RatFunc, RationalFunction};

use crate::expect::{compare, Mismatch};
use crate::scenario::{Scenario, Task, TaskKind, TaskSpec, TraceSource};
use crate::syntax::Pos;

pub const DEFAULT_TRACE_TRUNCATION: usize = 12;
pub const DEFAULT_BETTI_TRUNCATION: usize = 8;
pub const DEFAULT_CAP: usize = 1024;

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Used by tasks that do not set `truncation` themselves.
    pub truncation: Option<usize>,
    /// Largest group the closure may produce.
    pub cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { truncation: None, cap: DEFAULT_CAP }
    }
}

/// A task that could not be run: bad input or a failed computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunError {
    pub pos: Pos,
    pub task: String,
    pub message: String,
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: task {}: {}", self.pos, self.task, self.message)
    }
}

impl std::error::Error for RunError {}

#[derive(Clone, Debug, PartialEq)]
pub struct TaskReport {
    pub kind: TaskKind,
    pub subject: String,
    pub pos: Pos,
    pub result: Map<String, Json>,
    pub checked: bool,
    pub mismatches: Vec<Mismatch>,
}

impl TaskReport {
    pub fn status(&self) -> &'static str {
        if !self.checked {
            "unchecked"
        } else if self.mismatches.is_empty() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "task": self.kind.as_str(),
            "subject": self.subject,
            "line": self.pos.line,
            "status": self.status(),
            "result": self.result,
            "mismatches": self.mismatches.iter().map(Mismatch::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioReport {
    pub name: String,
    pub zeta_order: usize,
    pub tasks: Vec<TaskReport>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.tasks.iter().all(|t| t.mismatches.is_empty())
    }

    pub fn to_json(&self) -> Json {
        json!({
            "scenario": self.name,
            "zetaOrder": self.zeta_order,
            "passed": self.passed(),
            "tasks": self.tasks.iter().map(TaskReport::to_json).collect::<Vec<_>>(),
        })
    }

    /// Pretty-printed JSON with sorted keys and a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
        s.push('\n');
        s
    }
}

type Fields = Map<String, Json>;
type Outcome = Result<Fields, String>;

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn show_ratfunc<F: Field>(f: &RatFunc<F>) -> String {
    match f.to_rational_function() {
        Some(r) => r.to_string(),
        None => f.to_string(),
    }
}

fn counts<K: ToString>(m: BTreeMap<K, usize>) -> Json {
    Json::Object(m.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

/// The verdicts attached to every Hilbert series.
fn series_fields(f: &RationalFunction) -> Fields {
    let cyclotomic = is_cyclotomic(f);
    let symmetric = gorenstein_symmetry(f).symmetric;
    let mut m = Map::new();
    m.insert("hilbertSeries".into(), json!(f.to_string()));
    m.insert("isCyclotomic".into(), json!(cyclotomic));
    m.insert("gorensteinSymmetric".into(), json!(symmetric));
    m.insert("cyclotomicGorenstein".into(), json!(cyclotomic && symmetric));
    m.insert("cycNumber".into(), cyc_number(f).value.map_or(Json::Null, |v| json!(v)));
    m.insert("quasiBireflectionGeneration".into(), json!("not-applicable"));
    m
}

fn factor_exponents(p: &IntPolynomial) -> Json {
    let f = factor_cyclotomic(p);
    json!({
        "cyclotomic": Json::Object(f.exponents.iter().map(|(k, v)| (k.to_string(), json!(v))).collect()),
        "remainder": f.remainder.to_string(),
    })
}

fn is_rational_presentation(p: &AlgebraPresentation<Cyclotomic>) -> bool {
    p.q().iter().flatten().all(Cyclotomic::is_rational)
        && p.relations().iter().flat_map(|r| &r.terms).all(|(c, _)| c.is_rational())
}

fn rationals(p: &AlgebraPresentation<Cyclotomic>) -> AlgebraPresentation<BigRational> {
    p.map(|c| c.to_rational().expect("rational presentation"))
}

fn rational_matrix(m: &Matrix<Cyclotomic>) -> Option<Matrix<BigRational>> {
    m.entries().iter().all(Cyclotomic::is_rational).then(|| m.map(|c| c.to_rational().unwrap()))
}

/// Bounds used when a trace task gives none: the denominator degree is the
/// sum of the generator degrees, the numerator degree the sum of the
/// relation degrees (monomial algebras get both equal).
fn default_bounds(p: &AlgebraPresentation<Cyclotomic>) -> (usize, usize) {
    let q: usize = p.degrees().iter().sum();
    match p.kind() {
        AlgebraKind::Free | AlgebraKind::MonomialQuotient => (q, q),
        _ => (p.relations().iter().map(|r| r.degree(p.degrees())).sum(), q),
    }
}

/// GK dimension when it can be read off the presentation.
fn default_gk(p: &AlgebraPresentation<Cyclotomic>) -> Option<usize> {
    match p.kind() {
        AlgebraKind::QuantumAffine => Some(p.num_generators()),
        AlgebraKind::NormalQuotient => Some(p.num_generators() - p.relations().len()),
        _ => None,
    }
}

struct TraceData<F> {
    coefficients: Vec<String>,
    trace: RatFunc<F>,
}

fn brute_traces<F: Field>(
    p: &AlgebraPresentation<F>,
    mats: &[Matrix<F>],
    n: usize,
    bounds: (usize, usize),
) -> Result<(GradedAlgebraTruncation<F>, Vec<TraceData<F>>), String> {
    let t = GradedAlgebraTruncation::build(p, n).map_err(err)?;
    let mut out = Vec::with_capacity(mats.len());
    for g in mats {
        let s = brute_force_trace(g, &t, n).map_err(err)?;
        let trace = reconstruct_field(&s, bounds.0, bounds.1)
            .map_err(|e| format!("{e}; set `bounds` or a larger `truncation`"))?;
        out.push(TraceData { coefficients: s.coeffs().iter().map(ToString::to_string).collect(), trace });
    }
    Ok((t, out))
}

struct Runner<'a> {
    sc: &'a Scenario,
    opts: &'a RunOptions,
    groups: HashMap<String, FiniteMatrixGroup>,
}

impl<'a> Runner<'a> {
    fn group(&mut self, name: &str) -> Result<FiniteMatrixGroup, String> {
        if let Some(g) = self.groups.get(name) {
            return Ok(g.clone());
        }
        let gens: Vec<_> = self.sc.groups[name].iter().map(|m| self.sc.matrices[m].clone()).collect();
        let g = closure(&gens, gens[0].rows(), self.opts.cap).map_err(err)?;
        self.groups.insert(name.to_string(), g.clone());
        Ok(g)
    }

    fn truncation(&self, own: Option<usize>, default: usize) -> usize {
        own.or(self.opts.truncation).unwrap_or(default)
    }

    /// Truncation and bounds for brute-force traces, widened so that the
    /// default bounds are always determined.
    fn trace_window(&self, p: &AlgebraPresentation<Cyclotomic>, truncation: Option<usize>, bounds: Option<(usize, usize)>) -> (usize, (usize, usize)) {
        let b = bounds.unwrap_or_else(|| default_bounds(p));
        let n = match truncation.or(self.opts.truncation) {
            Some(n) => n,
            None => DEFAULT_TRACE_TRUNCATION.max(required_order(b.0, b.1)),
        };
        (n, b)
    }

    /// Traces of every group element, with the algebra truncation used
    /// (for invariant counts) when computed by brute force.
    fn group_traces(&self, g: &FiniteMatrixGroup, src: &TraceSource, fields: &mut Fields) -> Result<TraceAssignment, String> {
        let Some(name) = &src.algebra else {
            fields.insert("traceSource".into(), json!(Provenance::CharPoly.as_str()));
            return Ok(TraceAssignment::char_poly(g));
        };
        let p = &self.sc.algebras[name];
        if p.num_generators() != g.dim() {
            return Err(format!("algebra `{name}` has {} generators, group acts on dimension {}", p.num_generators(), g.dim()));
        }
        let (n, bounds) = self.trace_window(p, src.truncation, src.bounds);
        fields.insert("traceSource".into(), json!(Provenance::BruteForce.as_str()));
        fields.insert("truncation".into(), json!(n));
        let rational: Option<Vec<Matrix<BigRational>>> = g.elements().iter().map(rational_matrix).collect();
        let (traces, invariants) = match rational.filter(|_| is_rational_presentation(p)) {
            Some(mats) => {
                let (t, data) = brute_traces(&rationals(p), &mats, n, bounds)?;
                let gens: Vec<_> = g.generator_indices().iter().map(|&i| mats[i].clone()).collect();
                let inv = invariant_dims(&gens, &t, n).map_err(err)?;
                (data.into_iter().map(|d| lift(&d.trace)).collect::<Vec<_>>(), inv)
            }
            None => {
                let (t, data) = brute_traces(p, g.elements(), n, bounds)?;
                let inv = invariant_dims(&g.generators(), &t, n).map_err(err)?;
                (data.into_iter().map(|d| d.trace).collect(), inv)
            }
        };
        fields.insert("invariantCounts".into(), json!(invariants));
        Ok(TraceAssignment::from_traces(traces, Provenance::BruteForce))
    }

    fn run(&mut self, spec: &TaskSpec) -> Outcome {
        match &spec.task {
            Task::Veronese { series, r, bounds } => {
                let f = &self.sc.series[series];
                let v = veronese_section(f, *r, *bounds).map_err(err)?;
                let mut m = series_fields(&v);
                m.insert("source".into(), json!(f.to_string()));
                m.insert("stride".into(), json!(r));
                m.insert("inflated".into(), json!(v.inflate(*r).to_string()));
                let d = f.den().degree().unwrap_or(0);
                let transform = (*f.den() == IntPolynomial::one_minus_t_pow(1).pow(d as u32) && d > 0)
                    .then(|| veronese_bw(f.num(), d, *r) == v);
                m.insert("transformAgrees".into(), transform.map_or(Json::Null, Json::Bool));
                Ok(m)
            }
            Task::Cyc { series } => {
                let f = &self.sc.series[series];
                let mut m = series_fields(f);
                let c = cyc_number(f);
                let profile = c.profile.feasible.then(|| {
                    Json::Object(c.profile.exponents.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
                });
                m.insert("binomialProfile".into(), profile.unwrap_or(Json::Null));
                if !f.is_zero() {
                    m.insert("numeratorFactors".into(), factor_exponents(f.num()));
                    m.insert("denominatorFactors".into(), factor_exponents(f.den()));
                }
                Ok(m)
            }
            Task::Closure { group } => {
                let g = self.group(group)?;
                let mut orders = BTreeMap::new();
                for i in 0..g.order() {
                    *orders.entry(g.element_order(i)).or_insert(0) += 1;
                }
                let mut m = Map::new();
                m.insert("order".into(), json!(g.order()));
                m.insert("dim".into(), json!(g.dim()));
                m.insert("generators".into(), json!(self.sc.groups[group]));
                m.insert("elementOrders".into(), counts(orders));
                Ok(m)
            }
            Task::Subgroups { group } => {
                let g = self.group(group)?;
                let subs = subgroups(&g).map_err(err)?;
                let mut by_order = BTreeMap::new();
                let list: Vec<Json> = subs
                    .iter()
                    .map(|h| {
                        *by_order.entry(h.order()).or_insert(0) += 1;
                        let gens: Vec<usize> = h.generators().iter().map(|m| g.index_of(m).expect("subgroup element")).collect();
                        let diagonal = h.elements().iter().all(Matrix::is_diagonal);
                        let scalar = diagonal
                            && h.elements().iter().all(|m| (0..m.rows()).all(|i| m[(i, i)] == m[(0, 0)]));
                        json!({ "order": h.order(), "generators": gens, "diagonal": diagonal, "scalar": scalar })
                    })
                    .collect();
                let mut m = Map::new();
                m.insert("count".into(), json!(subs.len()));
                m.insert("byOrder".into(), counts(by_order));
                m.insert("subgroups".into(), Json::Array(list));
                Ok(m)
            }
            Task::Molien { group, traces } => {
                let g = self.group(group)?;
                let mut extra = Map::new();
                let tr = self.group_traces(&g, traces, &mut extra)?;
                let h = molien(&g, &tr).map_err(err)?;
                let mut m = series_fields(&h);
                m.insert("groupOrder".into(), json!(g.order()));
                if let Some(Json::Array(inv)) = extra.get("invariantCounts") {
                    let n = inv.len() - 1;
                    let want: Vec<Json> = h.expand(n).coeffs().iter().map(|c| json!(c.to_string())).collect();
                    let have: Vec<Json> = inv.iter().map(|c| json!(c.to_string())).collect();
                    m.insert("invariantCountsAgree".into(), json!(want == have));
                }
                m.extend(extra);
                Ok(m)
            }
            Task::Classify { group, traces, gk, each_subgroup } => {
                let g = self.group(group)?;
                let mut extra = Map::new();
                let tr = self.group_traces(&g, traces, &mut extra)?;
                extra.remove("invariantCounts");
                let gk = match (gk, &traces.algebra) {
                    (Some(k), _) => *k,
                    (None, None) => g.dim(),
                    (None, Some(a)) => default_gk(&self.sc.algebras[a])
                        .ok_or_else(|| format!("set `gk`: the GK dimension of `{a}` is not read off its presentation"))?,
                };
                let mut m = classify_fields(&g, &tr, gk)?;
                m.insert("gk".into(), json!(gk));
                if *each_subgroup {
                    let mut list = Vec::new();
                    for h in subgroups(&g).map_err(err)? {
                        let idx: Vec<usize> = h.elements().iter().map(|e| g.index_of(e).expect("subgroup element")).collect();
                        let sub = TraceAssignment::from_traces(idx.iter().map(|&i| tr.trace(i).clone()).collect(), tr.provenance(0));
                        let f = classify_fields(&h, &sub, gk)?;
                        let pick = |k: &str| f.get(k).cloned().unwrap_or(Json::Null);
                        list.push(json!({
                            "order": h.order(),
                            "hilbertSeries": pick("hilbertSeries"),
                            "cyclotomicGorenstein": pick("cyclotomicGorenstein"),
                            "quasiBireflectionGeneration": pick("quasiBireflectionGeneration"),
                            "equivalenceHolds": pick("equivalenceHolds"),
                        }));
                    }
                    m.insert("subgroups".into(), Json::Array(list));
                }
                m.extend(extra);
                Ok(m)
            }
            Task::Trace { algebra, matrix, power, truncation, bounds } => {
                let p = &self.sc.algebras[algebra];
                let g = &self.sc.matrices[matrix];
                if g.rows() != p.num_generators() {
                    return Err(format!("`{matrix}` is {0}x{0}, `{algebra}` has {1} generators", g.rows(), p.num_generators()));
                }
                let mut gp = Matrix::identity(g.rows());
                for _ in 0..*power {
                    gp = &gp * g;
                }
                let (n, b) = self.trace_window(p, *truncation, *bounds);
                let mut m = match rational_matrix(&gp).filter(|_| is_rational_presentation(p)) {
                    Some(rg) => trace_fields(&rationals(p), &rg, n, b)?,
                    None => trace_fields(p, &gp, n, b)?,
                };
                m.insert("power".into(), json!(power));
                m.insert("truncation".into(), json!(n));
                Ok(m)
            }
            Task::Betti { algebra, truncation, ambient, omega_degree } => {
                let n = self.truncation(*truncation, DEFAULT_BETTI_TRUNCATION);
                let p = &self.sc.algebras[algebra];
                let (mut m, tb) = if is_rational_presentation(p) { betti_fields(&rationals(p), n)? } else { betti_fields(p, n)? };
                if let (Some(a), Some(d)) = (ambient, omega_degree) {
                    let pa = &self.sc.algebras[a];
                    let (_, ta) = if is_rational_presentation(pa) { betti_fields(&rationals(pa), n)? } else { betti_fields(pa, n)? };
                    let checks = tor_inequality_check(&ta, &tb, *d).map_err(err)?;
                    m.insert("torInequalitiesHold".into(), json!(checks.iter().all(|c| c.holds())));
                    m.insert(
                        "torInequalities".into(),
                        Json::Array(checks.iter().map(|c| json!({ "n": c.n, "upper": c.upper, "difference": c.difference })).collect()),
                    );
                }
                Ok(m)
            }
        }
    }
}

fn lift(f: &RatFunc<BigRational>) -> RatFunc<Cyclotomic> {
    RationalFunction::from_rational(f).to_field::<Cyclotomic>()
}

fn classify_fields(g: &FiniteMatrixGroup, tr: &TraceAssignment, gk: usize) -> Outcome {
    let h = molien(g, tr).map_err(err)?;
    let mut m = series_fields(&h);
    let qb = generated_by_quasi_bireflections(g, tr, gk);
    let mut verdicts = BTreeMap::new();
    for v in &qb.verdicts {
        *verdicts.entry(v.as_str()).or_insert(0) += 1;
    }
    m.insert("groupOrder".into(), json!(g.order()));
    m.insert("quasiBireflectionGeneration".into(), json!(qb.verdict));
    m.insert("witnesses".into(), json!(qb.witnesses));
    m.insert("poleOrders".into(), json!(qb.pole_orders));
    m.insert("verdictCounts".into(), counts(verdicts));
    let cg = m["cyclotomicGorenstein"].as_bool().unwrap();
    m.insert("equivalenceHolds".into(), json!(qb.verdict == cg));
    Ok(m)
}

fn trace_fields<F: Field>(p: &AlgebraPresentation<F>, g: &Matrix<F>, n: usize, bounds: (usize, usize)) -> Outcome {
    let (_, data) = brute_traces(p, std::slice::from_ref(g), n, bounds)?;
    let TraceData { coefficients, trace } = data.into_iter().next().unwrap();
    let gk = match p.kind() {
        AlgebraKind::QuantumAffine => Some(p.num_generators()),
        AlgebraKind::NormalQuotient => Some(p.num_generators() - p.relations().len()),
        _ => None,
    };
    let mut m = Map::new();
    m.insert("coefficients".into(), json!(coefficients));
    m.insert("trace".into(), json!(show_ratfunc(&trace)));
    m.insert("poleOrder".into(), json!(trace.pole_order_at_one()));
    m.insert(
        "verdict".into(),
        gk.map_or(Json::Null, |k| json!(classify_pole(&trace, k).verdict.as_str())),
    );
    // AS-regular ambient: global dimension n, index the sum of degrees.
    let h = (p.kind() == AlgebraKind::QuantumAffine)
        .then(|| hdet(&trace, p.num_generators(), p.degrees().iter().sum()).ok())
        .flatten();
    m.insert("hdet".into(), h.map_or(Json::Null, |h| json!(h.to_string())));
    let (rank, bireflection) = classical_bireflection_rank(g);
    m.insert("classicalRank".into(), json!(rank));
    m.insert("classicalBireflection".into(), json!(bireflection));
    Ok(m)
}

fn betti_fields<F: Field>(p: &AlgebraPresentation<F>, n: usize) -> Result<(Fields, BettiTable), String> {
    let t = GradedAlgebraTruncation::build(p, n).map_err(err)?;
    let b = betti_numbers(&t, n).map_err(err)?;
    let dims = t.dims();
    let h = RationalFunction::polynomial(IntPolynomial::from_i64(&dims.iter().map(|&d| d as i64).collect::<Vec<_>>()));
    let mut m = Map::new();
    m.insert("truncation".into(), json!(n));
    m.insert("dims".into(), json!(dims));
    m.insert("rowSums".into(), json!(b.row_sums()));
    m.insert("entries".into(), json!(b.entries().map(|((i, j), v)| [i as u64, j as u64, v]).collect::<Vec<_>>()));
    m.insert("eulerResidualZero".into(), json!(euler_check(&b, &h, n).is_zero()));
    let growth = match growth_estimate(&b) {
        Ok(GrowthHint::Zero { last_nonzero }) => json!({ "kind": "zero", "lastNonzero": last_nonzero }),
        Ok(GrowthHint::Divergent { window }) => json!({ "kind": "divergent", "window": [window.0, window.1] }),
        Ok(GrowthHint::Slope { value, window }) => {
            json!({ "kind": "slope", "value": format!("{value:.2}"), "window": [window.0, window.1] })
        }
        Err(_) => Json::Null,
    };
    m.insert("growth".into(), growth);
    Ok((m, b))
}

/// Runs every task in order and compares expected results.
pub fn run_scenario(sc: &Scenario, opts: &RunOptions) -> Result<ScenarioReport, RunError> {
    let mut runner = Runner { sc, opts, groups: HashMap::new() };
    let mut tasks = Vec::with_capacity(sc.tasks.len());
    for spec in &sc.tasks {
        let label = format!("{} `{}`", spec.task.kind().as_str(), spec.task.subject());
        let fail = |message: String| RunError { pos: spec.pos, task: label.clone(), message };
        let result = runner.run(spec).map_err(fail)?;
        let mut mismatches = Vec::new();
        if let Some(e) = &spec.expect {
            compare(e, &Json::Object(result.clone()), "", &mut mismatches).map_err(|d| RunError {
                pos: d.pos,
                task: label.clone(),
                message: d.message,
            })?;
        }
        tasks.push(TaskReport {
            kind: spec.task.kind(),
            subject: spec.task.subject().to_string(),
            pos: spec.pos,
            result,
            checked: spec.expect.is_some(),
            mismatches,
        });
    }
    Ok(ScenarioReport { name: sc.name.clone(), zeta_order: sc.zeta_order, tasks })
}
