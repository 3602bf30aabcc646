use std::collections::BTreeMap;
use std::str::FromStr;

use feqlab_core::numeric::{
    catalog, residual_scan_with, Candidate, GridRange, GridSpec, ScanEquation,
};
use feqlab_core::operators::{
    djokovic_rhs, forward_difference, haruki_defect, knw_average, knw_defect, mixed_difference,
    EquationParams, Step,
};
use feqlab_core::parser::{format, parse, parse_rational, ExprSource};
use feqlab_core::spaces::{
    characterize_with, downward_closure, exponent_monomial, minimal_corners, CornerSet, Equation,
    ExtNat,
};
use feqlab_core::{BigRational, Error, Execution, Result, SparsePolynomial, Var};
use serde_json::{json, Value};

use crate::report::{ErrorBody, Report, Verdict};
use crate::{
    CheckArgs, Command, CornersArgs, CornersMode, DjokovicArgs, EquationArg, ExpandArgs,
    OperatorArg, ScanArgs, ScanEquationArg, VerifyArgs,
};

type Params = BTreeMap<String, Value>;

struct Outcome {
    result: Value,
    verdict: Verdict,
    summary: String,
}

/// Runs one subcommand; domain and syntax failures become exit-2 reports.
pub fn execute(command: &Command) -> (Report, Option<String>) {
    let (name, mut params, outcome) = match command {
        Command::Check(a) => dispatch("check", a, check),
        Command::Expand(a) => dispatch("expand", a, expand),
        Command::Verify(a) => dispatch("verify", a, verify),
        Command::Djokovic(a) => dispatch("djokovic", a, djokovic),
        Command::Corners(a) => dispatch("corners", a, corners),
        Command::Scan(a) => dispatch("scan", a, scan),
    };
    params.retain(|_, v| !v.is_null());
    match outcome {
        Ok(o) => (
            Report::success(name, params, o.result, o.verdict),
            Some(o.summary),
        ),
        Err(e) => {
            let summary = format!("error: {e}");
            (
                Report::failure(name, params, ErrorBody::from(&e)),
                Some(summary),
            )
        }
    }
}

fn dispatch<'a, A>(
    name: &'a str,
    args: &A,
    f: fn(&A, &mut Params) -> Result<Outcome>,
) -> (&'a str, Params, Result<Outcome>) {
    let mut params = Params::new();
    let outcome = f(args, &mut params);
    (name, params, outcome)
}

fn equation_of(arg: EquationArg) -> Equation {
    match arg {
        EquationArg::Knw => Equation::Knw,
        EquationArg::Haruki => Equation::Haruki,
        EquationArg::Frechet => Equation::Frechet,
    }
}

/// Largest coordinate or step index mentioned by `p`, at least 1.
fn inferred_dimension(p: &SparsePolynomial) -> u16 {
    p.variables()
        .into_iter()
        .filter_map(|v| match v {
            Var::Coord(i) | Var::Step(i) | Var::FamilyStep(_, i) => Some(i),
            _ => None,
        })
        .max()
        .unwrap_or(1)
        .max(1)
}

/// Parses a real-regime expression; without `d` the dimension is inferred.
fn parse_real(text: &str, d: Option<u16>) -> Result<(SparsePolynomial, u16)> {
    match d {
        Some(d) => Ok((parse(&ExprSource::real(text, d))?, d)),
        None => {
            let p = parse(&ExprSource::real(text, u16::MAX))?;
            let d = inferred_dimension(&p);
            Ok((p, d))
        }
    }
}

fn require_coordinates_only(p: &SparsePolynomial) -> Result<()> {
    match p
        .variables()
        .into_iter()
        .find(|v| !matches!(v, Var::Coord(_)))
    {
        Some(v) => Err(Error::Domain(format!(
            "expected a polynomial in x1..xd only; found {v}"
        ))),
        None => Ok(()),
    }
}

/// "1,0;0,1/2" → [[1, 0], [0, 1/2]].
fn parse_vectors(text: &str) -> Result<Vec<Vec<BigRational>>> {
    let vectors = text
        .split(';')
        .map(|v| {
            v.split(',')
                .map(|c| parse_rational(c.trim()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if vectors.iter().any(|v| v.is_empty()) {
        return Err(Error::Domain("empty step vector".into()));
    }
    Ok(vectors)
}

fn parse_tuple<T: FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|c| {
            let c = c.trim();
            c.parse::<T>()
                .map_err(|_| Error::Domain(format!("invalid {what} entry '{c}'")))
        })
        .collect()
}

fn same_dimension<T>(tuples: &[Vec<T>]) -> Result<usize> {
    let dim = tuples.first().map_or(0, Vec::len);
    if tuples.iter().any(|t| t.len() != dim) {
        return Err(Error::Domain("tuples have different lengths".into()));
    }
    Ok(dim)
}

fn is_symbolic(steps: &Option<String>) -> bool {
    steps.as_deref().is_none_or(|s| s.trim() == "sym")
}

fn check(a: &CheckArgs, params: &mut Params) -> Result<Outcome> {
    let equation = equation_of(a.equation);
    params.insert("equation".into(), json!(equation.to_string()));
    params.insert("N".into(), json!(a.n));
    params.insert("expr".into(), json!(a.expr));
    let defect = match equation {
        Equation::Frechet => {
            let (f, d) = parse_real(&a.expr, a.d)?;
            params.insert("d".into(), json!(d));
            require_coordinates_only(&f)?;
            EquationParams::new(a.n, d as u32)?;
            forward_difference(&f, a.n, &Step::Symbolic)?
        }
        Equation::Haruki | Equation::Knw => {
            let f = parse(&ExprSource::complex(&a.expr))?;
            let eq_params = EquationParams::complex(a.n)?;
            if equation == Equation::Haruki {
                haruki_defect(&f, &eq_params)?
            } else {
                knw_defect(&f, &eq_params)?
            }
        }
    };
    let member = defect.is_zero();
    Ok(Outcome {
        result: json!({ "member": member, "defect": format(&defect) }),
        verdict: Verdict::from_bool(member),
        summary: format!(
            "{} {} the {equation} solution space for N = {}",
            a.expr,
            if member { "is in" } else { "is not in" },
            a.n
        ),
    })
}

fn expand(a: &ExpandArgs, params: &mut Params) -> Result<Outcome> {
    params.insert(
        "operator".into(),
        json!(clap::ValueEnum::to_possible_value(&a.operator).map(|v| v.get_name().to_string())),
    );
    params.insert("N".into(), json!(a.n));
    params.insert("steps".into(), json!(a.steps));
    params.insert("expr".into(), json!(a.expr));
    let out = match a.operator {
        OperatorArg::KnwAverage | OperatorArg::HarukiDefect | OperatorArg::KnwDefect => {
            if a.steps.is_some() {
                return Err(Error::Domain(
                    "--steps only applies to difference operators".into(),
                ));
            }
            let f = parse(&ExprSource::complex(&a.expr))?;
            let eq_params = EquationParams::complex(a.n)?;
            match a.operator {
                OperatorArg::KnwAverage => knw_average(&f, &eq_params)?,
                OperatorArg::HarukiDefect => haruki_defect(&f, &eq_params)?,
                _ => knw_defect(&f, &eq_params)?,
            }
        }
        OperatorArg::ForwardDiff => {
            let (f, d) = parse_real(&a.expr, a.d)?;
            params.insert("d".into(), json!(d));
            let step = if is_symbolic(&a.steps) {
                Step::Symbolic
            } else {
                let mut v = parse_vectors(a.steps.as_deref().unwrap_or_default())?;
                if v.len() != 1 {
                    return Err(Error::Domain(format!(
                        "forward-diff takes one step vector, got {}",
                        v.len()
                    )));
                }
                Step::Concrete(v.remove(0))
            };
            forward_difference(&f, a.n, &step)?
        }
        OperatorArg::MixedDiff => {
            let (f, d) = parse_real(&a.expr, a.d)?;
            params.insert("d".into(), json!(d));
            let steps: Vec<Step> = if is_symbolic(&a.steps) {
                (1..=a.n as u16).map(Step::Family).collect()
            } else {
                let v = parse_vectors(a.steps.as_deref().unwrap_or_default())?;
                step_count_matches(v.len(), a.n)?;
                v.into_iter().map(Step::Concrete).collect()
            };
            mixed_difference(&f, &steps)?
        }
        OperatorArg::DjokovicRhs => {
            if is_symbolic(&a.steps) {
                return Err(Error::Domain(
                    "djokovic-rhs needs concrete rational step vectors".into(),
                ));
            }
            let v = parse_vectors(a.steps.as_deref().unwrap_or_default())?;
            step_count_matches(v.len(), a.n)?;
            let (f, d) = parse_real(&a.expr, a.d.or(Some(v[0].len() as u16)))?;
            params.insert("d".into(), json!(d));
            djokovic_rhs(&f, &v)?
        }
    };
    let text = format(&out);
    Ok(Outcome {
        summary: text.clone(),
        result: json!({ "polynomial": text }),
        verdict: Verdict::Positive,
    })
}

fn step_count_matches(count: usize, n: u32) -> Result<()> {
    if count != n as usize {
        return Err(Error::Domain(format!(
            "N = {n} but {count} step vectors were given"
        )));
    }
    Ok(())
}

fn verify(a: &VerifyArgs, params: &mut Params) -> Result<Outcome> {
    let equation = equation_of(a.equation);
    params.insert("equation".into(), json!(equation.to_string()));
    params.insert("N".into(), json!(a.n));
    if equation == Equation::Frechet {
        params.insert("d".into(), json!(a.d));
    }
    params.insert("max_degree".into(), json!(a.max_degree));
    let report = characterize_with(equation, a.n, a.d, a.max_degree, Execution::Parallel)?;
    let verdicts: Vec<Value> = report
        .verdicts
        .iter()
        .map(|v| {
            json!({
                "monomial": exponent_monomial(equation, &v.exponents).to_string(),
                "exponents": v.exponents,
                "oracle": v.oracle,
                "predicted": v.predicted,
            })
        })
        .collect();
    let disagreements = report.disagreements().count();
    Ok(Outcome {
        result: json!({
            "agreement": report.agreement,
            "monomials": verdicts.len(),
            "disagreements": disagreements,
            "verdicts": verdicts,
        }),
        verdict: Verdict::from_bool(report.agreement),
        summary: format!(
            "{equation}, N = {}: {} monomials, {disagreements} disagreements",
            a.n,
            report.verdicts.len()
        ),
    })
}

fn djokovic(a: &DjokovicArgs, params: &mut Params) -> Result<Outcome> {
    params.insert("expr".into(), json!(a.expr));
    params.insert("steps".into(), json!(a.steps));
    let steps = parse_vectors(&a.steps)?;
    same_dimension(&steps)?;
    let (f, d) = parse_real(&a.expr, a.d.or(Some(steps[0].len() as u16)))?;
    params.insert("d".into(), json!(d));
    require_coordinates_only(&f)?;
    let concrete: Vec<Step> = steps.iter().cloned().map(Step::Concrete).collect();
    let lhs = mixed_difference(&f, &concrete)?;
    let rhs = djokovic_rhs(&f, &steps)?;
    let holds = lhs == rhs;
    Ok(Outcome {
        result: json!({ "holds": holds, "lhs": format(&lhs), "rhs": format(&rhs) }),
        verdict: Verdict::from_bool(holds),
        summary: format!(
            "Djokovic identity {} for s = {}",
            if holds { "holds" } else { "FAILS" },
            steps.len()
        ),
    })
}

fn corners(a: &CornersArgs, params: &mut Params) -> Result<Outcome> {
    let mode = match a.mode {
        CornersMode::Close => "close",
        CornersMode::Minimal => "minimal",
    };
    params.insert("mode".into(), json!(mode));
    params.insert("points".into(), json!(a.points));
    params.insert("cap".into(), json!(a.cap));
    let tuples: Vec<Vec<ExtNat>> = a
        .points
        .split(';')
        .map(|t| parse_tuple::<ExtNat>(t, "tuple"))
        .collect::<Result<_>>()?;
    let dim = same_dimension(&tuples)?;
    let (result, summary) = match a.mode {
        CornersMode::Close => {
            let cap = a
                .cap
                .as_deref()
                .map(|c| parse_tuple::<u32>(c, "cap"))
                .transpose()?;
            let set = CornerSet::new(dim, tuples)?;
            let closed = downward_closure(&set, cap.as_deref())?;
            let summary = format!(
                "{} points below {} corners",
                closed.len(),
                set.corners().len()
            );
            (
                json!({ "corners": set.corners(), "count": closed.len(), "points": closed }),
                summary,
            )
        }
        CornersMode::Minimal => {
            if a.cap.is_some() {
                return Err(Error::Domain("--cap only applies to close".into()));
            }
            let points = tuples
                .into_iter()
                .map(|t| {
                    t.into_iter()
                        .map(|e| match e {
                            ExtNat::Finite(n) => Ok(n),
                            ExtNat::Infinity => {
                                Err(Error::Domain("minimal takes finite points only".into()))
                            }
                        })
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<_>>()?;
            let set = minimal_corners(&points)?;
            let summary = format!("{} corners", set.corners().len());
            (json!({ "corners": set.corners() }), summary)
        }
    };
    Ok(Outcome {
        result,
        verdict: Verdict::Positive,
        summary,
    })
}

fn scan(a: &ScanArgs, params: &mut Params) -> Result<Outcome> {
    let equation = match a.equation {
        ScanEquationArg::Knw => ScanEquation::Knw,
        ScanEquationArg::Haruki => ScanEquation::Haruki,
        ScanEquationArg::Nagumo => ScanEquation::Nagumo,
        ScanEquationArg::Frechet => ScanEquation::Frechet,
    };
    params.insert("equation".into(), json!(equation.to_string()));
    params.insert("N".into(), json!(a.n));
    params.insert("expr".into(), json!(a.expr));
    params.insert("grid".into(), json!(a.grid));
    params.insert("tol".into(), json!(a.tol));
    let real = equation == ScanEquation::Frechet;
    let (candidate, inferred) = match a.expr.trim().strip_prefix('@') {
        Some(name) => {
            let c = catalog(name, real).ok_or_else(|| {
                Error::Domain(format!(
                    "unknown catalog function '@{name}' (known: {})",
                    feqlab_core::numeric::CATALOG_NAMES.join(", ")
                ))
            })?;
            (c, 1)
        }
        None if real => {
            let (f, d) = parse_real(&a.expr, a.d)?;
            (Candidate::Polynomial(f), d)
        }
        None => (
            Candidate::Polynomial(parse(&ExprSource::complex(&a.expr))?),
            1,
        ),
    };
    let eq_params = if real {
        let d = a.d.unwrap_or(inferred);
        params.insert("d".into(), json!(d));
        EquationParams::new(a.n, d as u32)?
    } else {
        EquationParams::complex(a.n)?
    };
    let grid = match &a.grid {
        Some(g) => {
            let parts: Vec<&str> = g.split(',').map(str::trim).collect();
            let [min, max, count] = parts[..] else {
                return Err(Error::Domain(format!(
                    "grid must be min,max,count; got '{g}'"
                )));
            };
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::Domain(format!("invalid grid bound '{s}'")))
            };
            let count = count
                .parse::<usize>()
                .map_err(|_| Error::Domain(format!("invalid grid count '{count}'")))?;
            GridSpec::uniform(GridRange::new(num(min)?, num(max)?, count)?)
        }
        None => GridSpec::default(),
    };
    let report = residual_scan_with(
        &candidate,
        equation,
        &eq_params,
        &grid,
        a.tol,
        Execution::Parallel,
    )?;
    let witness_found = !report.within_tolerance;
    let summary = format!(
        "{equation}: max |residual| = {:.3e} over {} samples{}",
        report.max_abs_residual,
        report.samples_evaluated,
        match &report.witness {
            Some(w) if witness_found => format!(", witness at {w:?}"),
            _ => String::new(),
        }
    );
    let mut result = serde_json::to_value(&report).expect("residual reports serialize");
    result["witness_found"] = json!(witness_found);
    Ok(Outcome {
        result,
        verdict: Verdict::from_bool(!witness_found),
        summary,
    })
}
