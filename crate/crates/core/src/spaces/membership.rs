use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{CyclotomicField, CyclotomicNumber};
use crate::operators::{forward_difference, haruki_defect, knw_defect, EquationParams, Step};
use crate::par::{self, Execution};
use crate::poly::{Monomial, SparsePolynomial, Var};

/// Equations with an exact polynomial membership oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Haruki,
    Knw,
    Frechet,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::Haruki => "haruki",
            Equation::Knw => "knw",
            Equation::Frechet => "frechet",
        })
    }
}

impl FromStr for Equation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haruki" => Ok(Equation::Haruki),
            "knw" => Ok(Equation::Knw),
            "frechet" => Ok(Equation::Frechet),
            other => Err(Error::domain(format!("unknown equation '{other}'"))),
        }
    }
}

pub fn haruki_membership(f: &SparsePolynomial, params: &EquationParams) -> Result<bool> {
    Ok(haruki_defect(f, params)?.is_zero())
}

pub fn knw_membership(f: &SparsePolynomial, params: &EquationParams) -> Result<bool> {
    Ok(knw_defect(f, params)?.is_zero())
}

/// Δ_h^N f = 0 as a polynomial in x and the symbolic step h.
pub fn frechet_membership(f: &SparsePolynomial, params: &EquationParams) -> Result<bool> {
    if let Some(v) = f.variables().into_iter().find(|v| match v {
        Var::Coord(i) => *i as u32 > params.d(),
        _ => true,
    }) {
        return Err(Error::domain(format!(
            "expected a polynomial in x1..x{}; found {v}",
            params.d()
        )));
    }
    Ok(forward_difference(f, params.n(), &Step::Symbolic)?.is_zero())
}

pub fn membership(
    equation: Equation,
    f: &SparsePolynomial,
    params: &EquationParams,
) -> Result<bool> {
    match equation {
        Equation::Haruki => haruki_membership(f, params),
        Equation::Knw => knw_membership(f, params),
        Equation::Frechet => frechet_membership(f, params),
    }
}

/// Membership predicted by the characterization theorems, for a monomial
/// given by its exponent vector ((i, j) for z^i·zbar^j, α for x^α).
pub fn theorem_predicate(equation: Equation, n: u32, exponents: &[u32]) -> bool {
    let cap = n - 1;
    match equation {
        Equation::Haruki => exponents.iter().all(|&e| e <= cap),
        Equation::Knw => {
            exponents.iter().copied().min().unwrap_or(0) == 0
                && exponents.iter().copied().max().unwrap_or(0) <= cap
        }
        Equation::Frechet => exponents.iter().sum::<u32>() <= cap,
    }
}

/// Exponent vectors of length `d` with total degree ≤ `cap`, sorted.
fn simplex_exponents(d: u32, cap: u32) -> Vec<Vec<u32>> {
    fn rec(d: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(d, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d as usize, cap, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn box_exponents(cap: u32) -> Vec<Vec<u32>> {
    (0..=cap)
        .flat_map(|i| (0..=cap).map(move |j| vec![i, j]))
        .collect()
}

/// The monomial with exponent vector `e` in the variables of `equation`.
pub fn exponent_monomial(equation: Equation, exponents: &[u32]) -> Monomial {
    match equation {
        Equation::Haruki | Equation::Knw => {
            Monomial::from_pairs([(Var::Z, exponents[0]), (Var::Zbar, exponents[1])])
        }
        Equation::Frechet => Monomial::from_pairs(
            exponents
                .iter()
                .enumerate()
                .map(|(k, &e)| (Var::Coord(k as u16 + 1), e)),
        ),
    }
}

/// Monomials spanning the solution space predicted by the theorems:
/// haruki {z^i zbar^j : i, j < N}, knw {z^i : i < N} ∪ {zbar^j : 1 ≤ j < N},
/// frechet {x^α : |α| < N}.
pub fn solution_basis(equation: Equation, n: u32, d: u32) -> Result<Vec<Monomial>> {
    if n == 0 {
        return Err(Error::domain("N must be >= 1"));
    }
    let exps: Vec<Vec<u32>> = match equation {
        Equation::Haruki => box_exponents(n - 1),
        Equation::Knw => {
            let mut v: Vec<Vec<u32>> = (0..n).map(|i| vec![i, 0]).collect();
            v.extend((1..n).map(|j| vec![0, j]));
            v
        }
        Equation::Frechet => {
            if d == 0 {
                return Err(Error::domain("d must be >= 1"));
            }
            simplex_exponents(d, n - 1)
        }
    };
    let mut out: Vec<Monomial> = exps
        .iter()
        .map(|e| exponent_monomial(equation, e))
        .collect();
    out.sort_by(|a, b| a.display_cmp(b));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialVerdict {
    pub exponents: Vec<u32>,
    pub oracle: bool,
    pub predicted: bool,
}

impl MonomialVerdict {
    pub fn agrees(&self) -> bool {
        self.oracle == self.predicted
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    pub equation: Equation,
    pub n: u32,
    pub d: u32,
    pub degree_cap: u32,
    /// Sorted by exponent vector.
    pub verdicts: Vec<MonomialVerdict>,
    pub agreement: bool,
}

impl CharacterizationReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &MonomialVerdict> {
        self.verdicts.iter().filter(|v| !v.agrees())
    }
}

pub fn characterize(
    equation: Equation,
    n: u32,
    d: u32,
    degree_cap: u32,
) -> Result<CharacterizationReport> {
    characterize_with(equation, n, d, degree_cap, Execution::default())
}

/// Sweeps every monomial under the cap (per-variable for z^i zbar^j, total
/// degree for x^α) and compares the exact oracle with the theorem.
pub fn characterize_with(
    equation: Equation,
    n: u32,
    d: u32,
    degree_cap: u32,
    exec: Execution,
) -> Result<CharacterizationReport> {
    let params = EquationParams::new(n, d)?;
    if degree_cap < n {
        return Err(Error::domain(format!(
            "degree cap {degree_cap} must be at least N = {n}"
        )));
    }
    let exps = match equation {
        Equation::Haruki | Equation::Knw => box_exponents(degree_cap),
        Equation::Frechet => simplex_exponents(d, degree_cap),
    };
    let field = match equation {
        Equation::Frechet => CyclotomicField::rational(),
        _ => params.field().clone(),
    };
    let results = par::map_slice(&exps, exec, |e| -> Result<MonomialVerdict> {
        let f = SparsePolynomial::term(
            exponent_monomial(equation, e),
            CyclotomicNumber::one(&field),
        );
        Ok(MonomialVerdict {
            exponents: e.clone(),
            oracle: membership(equation, &f, &params)?,
            predicted: theorem_predicate(equation, n, e),
        })
    });
    let mut verdicts = results.into_iter().collect::<Result<Vec<_>>>()?;
    verdicts.sort_by(|a, b| a.exponents.cmp(&b.exponents));
    let agreement = verdicts.iter().all(MonomialVerdict::agrees);
    Ok(CharacterizationReport {
        equation,
        n,
        d,
        degree_cap,
        verdicts,
        agreement,
    })
}
