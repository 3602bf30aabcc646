//! Acceptance criteria, one check per criterion. Prints a PASS/FAIL line for
//! each and exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use feqlab_core::numbers::{factorial, rat, root_power_sum, BigInt};
use feqlab_core::numeric::{
    falsify, residual_at, residual_scan, to_float, Candidate, GridRange, GridSpec, ScanEquation,
};
use feqlab_core::operators::{
    affine_transform, djokovic_check, forward_difference, haruki_defect, knw_average, knw_defect,
    mixed_difference, real_affine_transform, scale_y, EquationParams, Step,
};
use feqlab_core::parser::{format, parse, ExprSource};
use feqlab_core::poly::{complexify, realize, Monomial, IMAG_PART, REAL_PART};
use feqlab_core::spaces::{
    characterize, haruki_membership, knw_membership, membership, solution_basis, Equation,
};
use feqlab_core::{BigRational, CyclotomicField, CyclotomicNumber, SparsePolynomial, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(u32, &str, Check); 10] = [
        (1, "haruki characterization", haruki_characterization),
        (2, "knw characterization", knw_characterization),
        (3, "frechet characterization", frechet_characterization),
        (4, "closed-form constants", closed_form_constants),
        (5, "root-of-unity sums", root_of_unity_sums),
        (6, "djokovic identity", djokovic_identity),
        (7, "affine invariance", affine_invariance),
        (8, "real-form corollaries", real_form_corollaries),
        (9, "numeric/exact consistency", numeric_consistency),
        (10, "parser round trip and exit codes", parser_and_cli),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} ({secs:.2} s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail} ({secs:.2} s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: u64) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < Duration::from_secs(limit), || {
        format!("took {:.1} s, budget {limit} s", spent.as_secs_f64())
    })
}

fn err(e: feqlab_core::Error) -> String {
    e.to_string()
}

fn q(p: i64, d: i64) -> BigRational {
    rat(p, d).unwrap()
}

fn one(field: &Arc<CyclotomicField>) -> CyclotomicNumber {
    CyclotomicNumber::one(field)
}

fn mono(field: &Arc<CyclotomicField>, pairs: &[(Var, u32)]) -> SparsePolynomial {
    SparsePolynomial::term(Monomial::from_pairs(pairs.iter().copied()), one(field))
}

fn zzbar(field: &Arc<CyclotomicField>, i: u32, j: u32) -> SparsePolynomial {
    mono(field, &[(Var::Z, i), (Var::Zbar, j)])
}

/// Exhaustive complex sweep: oracle against `predicate` on z^i zbar^j, i, j ≤ 2N.
fn complex_sweep(
    oracle: fn(&SparsePolynomial, &EquationParams) -> feqlab_core::Result<bool>,
    predicate: fn(u32, u32, u32) -> bool,
) -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=5u32 {
        let params = EquationParams::complex(n).map_err(err)?;
        for i in 0..=2 * n {
            for j in 0..=2 * n {
                let got = oracle(&zzbar(params.field(), i, j), &params).map_err(err)?;
                ensure(got == predicate(n, i, j), || {
                    format!("N = {n}, z^{i}*zbar^{j}: oracle says {got}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn haruki_characterization() -> Result<String, String> {
    let start = Instant::now();
    let checked = complex_sweep(haruki_membership, |n, i, j| i.max(j) < n)?;
    within(start, 60)?;
    Ok(format!("{checked} monomials, N = 1..5"))
}

fn knw_characterization() -> Result<String, String> {
    let start = Instant::now();
    let checked = complex_sweep(knw_membership, |n, i, j| i.min(j) == 0 && i.max(j) < n)?;
    within(start, 60)?;
    Ok(format!("{checked} monomials, N = 1..5"))
}

fn frechet_characterization() -> Result<String, String> {
    let start = Instant::now();
    let mut checked = 0;
    for d in 1..=3u32 {
        for n in 1..=5u32 {
            let report = characterize(Equation::Frechet, n, d, n + 3).map_err(err)?;
            for v in &report.verdicts {
                let total: u32 = v.exponents.iter().sum();
                ensure(v.oracle == (total < n), || {
                    format!(
                        "d = {d}, N = {n}, alpha = {:?}: oracle says {}",
                        v.exponents, v.oracle
                    )
                })?;
            }
            checked += report.verdicts.len();
        }
    }
    within(start, 120)?;
    Ok(format!("{checked} monomials, d = 1..3, N = 1..5"))
}

fn closed_form_constants() -> Result<String, String> {
    let mut checked = 0;
    for n in 1..=6u32 {
        let params = EquationParams::complex(n).map_err(err)?;
        let f = params.field();
        let zn = zzbar(f, n, 0);
        let avg = knw_average(&zn, &params).map_err(err)?;
        let xn = mono(f, &[(Var::X, n)]);
        let yn = mono(f, &[(Var::Y, n)]);
        ensure(avg == &xn + &yn, || {
            format!("H_y(z^{n}) = {}", format(&avg))
        })?;
        let rotated = scale_y(&avg, &params.eta_pow(1)).map_err(err)?;
        ensure(rotated == &xn - &yn, || {
            format!("H_ηy(z^{n}) = {}", format(&rotated))
        })?;
        let lower = knw_average(&zzbar(f, n - 1, 0), &params).map_err(err)?;
        ensure(lower == mono(f, &[(Var::X, n - 1)]), || {
            format!("H_y(z^{}) = {}", n - 1, format(&lower))
        })?;
        checked += 3;
        let rationals = CyclotomicField::rational();
        for d in 1..=3u16 {
            for i in 1..=d {
                let mut e = vec![q(0, 1); d as usize];
                e[i as usize - 1] = q(1, 1);
                let xi = mono(&rationals, &[(Var::Coord(i), n)]);
                let diff = forward_difference(&xi, n, &Step::Concrete(e)).map_err(err)?;
                let want = BigRational::from_integer(factorial(n));
                ensure(
                    diff.as_constant().and_then(|c| c.as_rational().cloned()) == Some(want),
                    || format!("Δ^{n}_(e{i}) x{i}^{n} = {}", format(&diff)),
                )?;
                checked += 1;
            }
        }
    }
    // Δ_{e1}^{α1} … Δ_{ed}^{αd} x^α = α1!…αd!, every α with |α| ≤ 6, d ≤ 3
    let rationals = CyclotomicField::rational();
    for d in 1..=3usize {
        for alpha in exponent_vectors(d, 6) {
            if alpha.iter().sum::<u32>() == 0 {
                continue;
            }
            let pairs: Vec<(Var, u32)> = alpha
                .iter()
                .enumerate()
                .map(|(k, &a)| (Var::Coord(k as u16 + 1), a))
                .collect();
            let f = mono(&rationals, &pairs);
            let mut steps = Vec::new();
            for (k, &a) in alpha.iter().enumerate() {
                let mut e = vec![q(0, 1); d];
                e[k] = q(1, 1);
                steps.extend(std::iter::repeat_n(Step::Concrete(e), a as usize));
            }
            let diff = mixed_difference(&f, &steps).map_err(err)?;
            let want: BigInt = alpha.iter().map(|&a| factorial(a)).product();
            ensure(
                diff.as_constant().and_then(|c| c.as_rational().cloned())
                    == Some(BigRational::from_integer(want)),
                || format!("mixed difference of x^{alpha:?} = {}", format(&diff)),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} identities, N ≤ 6, d ≤ 3"))
}

fn exponent_vectors(d: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max_total - used).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

fn root_of_unity_sums() -> Result<String, String> {
    let mut checked = 0;
    for n in 1..=12u32 {
        for t in 0..=3 * n as u64 {
            let s = root_power_sum(n, t).map_err(err)?;
            let want = if t % n as u64 == 0 {
                q(n as i64, 1)
            } else {
                q(0, 1)
            };
            ensure(s.as_rational() == Some(&want), || {
                format!("N = {n}, t = {t}: {s:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} sums, N ≤ 12, t ≤ 3N"))
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    q(rng.gen_range(-5..=5), rng.gen_range(1..=5))
}

fn random_real_polynomial(
    rng: &mut ChaCha8Rng,
    d: usize,
    max_degree: u32,
    terms: usize,
) -> SparsePolynomial {
    let field = CyclotomicField::rational();
    let mut acc = SparsePolynomial::zero(&field);
    for _ in 0..terms {
        let mut left = rng.gen_range(0..=max_degree);
        let mut pairs = Vec::new();
        for k in 0..d {
            let e = rng.gen_range(0..=left);
            left -= e;
            pairs.push((Var::Coord(k as u16 + 1), e));
        }
        let c = CyclotomicNumber::rational(small_rational(rng));
        acc = &acc + &SparsePolynomial::term(Monomial::from_pairs(pairs), c);
    }
    acc
}

fn random_cyclotomic(rng: &mut ChaCha8Rng, field: &Arc<CyclotomicField>) -> CyclotomicNumber {
    let coeffs: Vec<BigRational> = (0..field.degree()).map(|_| small_rational(rng)).collect();
    CyclotomicNumber::from_coeffs(field, &coeffs)
}

fn djokovic_identity() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0C0);
    for k in 0..200 {
        let d = rng.gen_range(1..=3usize);
        let s = rng.gen_range(1..=4usize);
        let f = random_real_polynomial(&mut rng, d, 4, 5);
        let steps: Vec<Vec<BigRational>> = (0..s)
            .map(|_| (0..d).map(|_| small_rational(&mut rng)).collect())
            .collect();
        let holds = djokovic_check(&f, &steps).map_err(err)?;
        ensure(holds, || {
            format!("instance {k}: f = {}, steps = {steps:?}", format(&f))
        })?;
    }
    within(start, 120)?;
    Ok("200 random instances, degree ≤ 4, d ≤ 3, s ≤ 4".into())
}

fn random_member(
    rng: &mut ChaCha8Rng,
    equation: Equation,
    n: u32,
    d: u32,
    field: &Arc<CyclotomicField>,
) -> Result<SparsePolynomial, String> {
    let basis = solution_basis(equation, n, d).map_err(err)?;
    let mut acc = SparsePolynomial::zero(field);
    for m in basis {
        let c = random_cyclotomic(rng, field);
        acc = &acc + &SparsePolynomial::term(m, c);
    }
    Ok(acc)
}

fn gaussian_rational(
    rng: &mut ChaCha8Rng,
    field: &Arc<CyclotomicField>,
) -> Result<CyclotomicNumber, String> {
    let i = CyclotomicNumber::zeta_pow(&CyclotomicField::new(4).map_err(err)?, 1);
    let value = &CyclotomicNumber::rational(small_rational(rng)) + &i.scale(&small_rational(rng));
    value.lift_to(field).map_err(err)
}

fn affine_invariance() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAFF1);
    for equation in [Equation::Haruki, Equation::Knw] {
        for trial in 0..100 {
            let n = rng.gen_range(1..=4u32);
            let params = EquationParams::complex(n).map_err(err)?;
            let field = params.field();
            let f = random_member(&mut rng, equation, n, 1, field)?;
            let mut a = gaussian_rational(&mut rng, field)?;
            while a.is_zero() {
                a = gaussian_rational(&mut rng, field)?;
            }
            let b = gaussian_rational(&mut rng, field)?;
            let moved = affine_transform(&f, &a, &b).map_err(err)?;
            ensure(membership(equation, &moved, &params).map_err(err)?, || {
                format!(
                    "{equation} trial {trial}: T(a, b) of {} left the space",
                    format(&f)
                )
            })?;
            // a bijective affine map also keeps non-members out
            let outsider = &f + &zzbar(field, n, n);
            let moved = affine_transform(&outsider, &a, &b).map_err(err)?;
            ensure(!membership(equation, &moved, &params).map_err(err)?, || {
                format!("{equation} trial {trial}: non-member mapped into the space")
            })?;
        }
    }
    let rationals = CyclotomicField::rational();
    for trial in 0..100 {
        let n = rng.gen_range(1..=4u32);
        let d = rng.gen_range(1..=3u32);
        let params = EquationParams::new(n, d).map_err(err)?;
        let f = random_member(&mut rng, Equation::Frechet, n, d, &rationals)?;
        let a: Vec<BigRational> = (0..d).map(|_| small_rational(&mut rng)).collect();
        let b: Vec<BigRational> = (0..d).map(|_| small_rational(&mut rng)).collect();
        let moved = real_affine_transform(&f, &a, &b).map_err(err)?;
        ensure(
            membership(Equation::Frechet, &moved, &params).map_err(err)?,
            || {
                format!(
                    "frechet trial {trial}: S(a, b) of {} left the space",
                    format(&f)
                )
            },
        )?;
    }
    Ok("100 triples per equation".into())
}

fn real_monomial(i: u32, j: u32) -> SparsePolynomial {
    mono(
        &CyclotomicField::rational(),
        &[(REAL_PART, i), (IMAG_PART, j)],
    )
}

fn real_form_corollaries() -> Result<String, String> {
    let mut haruki_mismatches = Vec::new();
    let mut haruki_checked = 0;
    let mut knw_checked = 0;
    for n in 1..=4u32 {
        let params = EquationParams::complex(n).map_err(err)?;
        let field = params.field();
        for i in 0..=2 * n {
            for j in 0..=2 * n {
                let f = complexify(&real_monomial(i, j), field).map_err(err)?;
                let member = haruki_membership(&f, &params).map_err(err)?;
                if member != (i.max(j) < n) {
                    haruki_mismatches.push(format!("N = {n} u^{i}*w^{j} member = {member}"));
                }
                haruki_checked += 1;
            }
        }
        for i in 0..=2 * n {
            for j in 0..=2 * n - i {
                let p = real_monomial(i, j);
                let f = complexify(&p, field).map_err(err)?;
                let member = knw_membership(&f, &params).map_err(err)?;
                let harmonic = p.laplacian(REAL_PART, IMAG_PART).is_zero();
                ensure(member == (harmonic && i + j < n), || {
                    format!("knw: N = {n}, u^{i}*w^{j} member = {member}")
                })?;
                knw_checked += 1;
            }
        }
        for k in 0..=2 * n {
            let zk = zzbar(field, k, 0);
            let half = q(1, 2);
            let re = (&zk + &zk.conj()).scale_rational(&half);
            let minus_i_half = params.imaginary_unit().scale(&q(-1, 2));
            let im = (&zk - &zk.conj()).try_scale(&minus_i_half).map_err(err)?;
            for part in [re, im] {
                let p = realize(&part).map_err(err)?;
                let harmonic = p.laplacian(REAL_PART, IMAG_PART).is_zero();
                let f = complexify(&p, field).map_err(err)?;
                let member = knw_membership(&f, &params).map_err(err)?;
                ensure(harmonic, || format!("Re/Im z^{k} not harmonic"))?;
                ensure(member == (p.is_zero() || (k < n)), || {
                    format!("knw: N = {n}, harmonic part of z^{k} member = {member}")
                })?;
                knw_checked += 1;
            }
        }
    }
    if haruki_mismatches.is_empty() {
        Ok(format!(
            "{haruki_checked} haruki and {knw_checked} knw checks"
        ))
    } else {
        Err(format!(
            "knw half holds ({knw_checked} checks); haruki half fails on {} of {haruki_checked} monomials: {}",
            haruki_mismatches.len(),
            haruki_mismatches.join("; ")
        ))
    }
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite grid value")
}

fn random_complex_polynomial(
    rng: &mut ChaCha8Rng,
    field: &Arc<CyclotomicField>,
) -> SparsePolynomial {
    let mut acc = SparsePolynomial::zero(field);
    for _ in 0..rng.gen_range(1..=4) {
        let m = Monomial::from_pairs([
            (Var::Z, rng.gen_range(0..=3)),
            (Var::Zbar, rng.gen_range(0..=3)),
        ]);
        acc = &acc + &SparsePolynomial::term(m, random_cyclotomic(rng, field));
    }
    acc
}

fn numeric_consistency() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9A11);
    let grid = GridRange::new(-1.5, 1.5, 3).map_err(err)?;
    let axis: Vec<f64> = (0..grid.count).map(|k| grid.value(k)).collect();
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for (eq, defect_of) in [
        (ScanEquation::Knw, knw_defect as fn(&_, &_) -> _),
        (ScanEquation::Haruki, haruki_defect),
    ] {
        for _ in 0..50 {
            let n = rng.gen_range(1..=4u32);
            let params = EquationParams::complex(n).map_err(err)?;
            let f = random_complex_polynomial(&mut rng, params.field());
            let defect: SparsePolynomial = defect_of(&f, &params).map_err(err)?;
            let candidate = Candidate::Polynomial(f);
            let i = params.imaginary_unit();
            let value = |re: f64, im: f64| {
                &CyclotomicNumber::from_rational(params.field(), exact(re)) + &i.scale(&exact(im))
            };
            for &a in &axis {
                for &b in &axis {
                    for &c in &axis {
                        for &e in &axis {
                            let (x, y) = (value(a, b), value(c, e));
                            let assignment: BTreeMap<Var, CyclotomicNumber> = [
                                (Var::X, x.clone()),
                                (Var::Xbar, x.conj()),
                                (Var::Y, y.clone()),
                                (Var::Ybar, y.conj()),
                            ]
                            .into_iter()
                            .collect();
                            let want = to_float(&defect.evaluate(&assignment).map_err(err)?);
                            let got =
                                residual_at(&candidate, eq, &params, &[a, b, c, e]).map_err(err)?;
                            worst = worst.max((want - got).norm());
                            samples += 1;
                        }
                    }
                }
            }
        }
    }
    for _ in 0..50 {
        let n = rng.gen_range(1..=4u32);
        let d = rng.gen_range(1..=2usize);
        let params = EquationParams::new(n, d as u32).map_err(err)?;
        let f = random_real_polynomial(&mut rng, d, 4, 4);
        let defect = forward_difference(&f, n, &Step::Symbolic).map_err(err)?;
        let candidate = Candidate::Polynomial(f);
        let points: Vec<Vec<f64>> = (0..axis.len().pow(2 * d as u32))
            .map(|mut idx| {
                (0..2 * d)
                    .map(|_| {
                        let v = axis[idx % axis.len()];
                        idx /= axis.len();
                        v
                    })
                    .collect()
            })
            .collect();
        for p in points {
            let mut assignment = BTreeMap::new();
            for k in 0..d {
                assignment.insert(
                    Var::Coord(k as u16 + 1),
                    CyclotomicNumber::rational(exact(p[k])),
                );
                assignment.insert(
                    Var::Step(k as u16 + 1),
                    CyclotomicNumber::rational(exact(p[d + k])),
                );
            }
            let want = to_float(&defect.evaluate(&assignment).map_err(err)?);
            let got = residual_at(&candidate, ScanEquation::Frechet, &params, &p).map_err(err)?;
            worst = worst.max((want - got).norm());
            samples += 1;
        }
    }
    ensure(worst <= 1e-6, || {
        format!("max |numeric − exact| = {worst:e} > 1e-6")
    })?;

    // degree ≤ 1 maps solve Nagumo
    let mut nagumo_worst: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.gen_range(2..=5u32);
        let params = EquationParams::complex(n).map_err(err)?;
        let field = params.field();
        let f = &(&mono(field, &[(Var::Z, 1)])
            .try_scale(&random_cyclotomic(&mut rng, field))
            .map_err(err)?
            + &mono(field, &[(Var::Zbar, 1)])
                .try_scale(&random_cyclotomic(&mut rng, field))
                .map_err(err)?)
            + &SparsePolynomial::constant(random_cyclotomic(&mut rng, field));
        let report = residual_scan(
            &Candidate::Polynomial(f.clone()),
            ScanEquation::Nagumo,
            &params,
            &GridSpec::default(),
            1e-9,
        )
        .map_err(err)?;
        nagumo_worst = nagumo_worst.max(report.max_abs_residual);
        ensure(report.within_tolerance, || {
            format!(
                "nagumo residual {:e} for {}",
                report.max_abs_residual,
                format(&f)
            )
        })?;
    }

    // f = z², N = 2 at x = y = 1: (16 − 1) + (0 − 1) − (9 + 1) = 4
    let params = EquationParams::complex(2).map_err(err)?;
    let square = Candidate::Complex(Arc::new(|z| z * z));
    let at_one = residual_at(
        &square,
        ScanEquation::Nagumo,
        &params,
        &[1.0, 0.0, 1.0, 0.0],
    )
    .map_err(err)?;
    ensure((at_one.re - 4.0).abs() < 1e-12 && at_one.im == 0.0, || {
        format!("nagumo residual of z^2 at (1, 1) = {at_one}")
    })?;
    let grid = GridSpec::uniform(GridRange::new(0.0, 1.0, 2).map_err(err)?);
    let witness = falsify(&square, ScanEquation::Nagumo, &params, &grid, 1e-9)
        .map_err(err)?
        .ok_or("no nagumo witness for z^2")?;
    ensure(witness.residual >= 1.0, || {
        format!("witness residual {}", witness.residual)
    })?;
    let report = residual_scan(&square, ScanEquation::Nagumo, &params, &grid, 1e-9).map_err(err)?;
    ensure(
        !report.within_tolerance && report.max_abs_residual >= 4.0,
        || format!("scan max {}", report.max_abs_residual),
    )?;
    Ok(format!(
        "{samples} samples, max deviation {worst:.1e}; nagumo linear max {nagumo_worst:.1e}; z^2 residual 4 at (1, 1)"
    ))
}

fn round_trip(p: &SparsePolynomial, src: ExprSource) -> Result<(), String> {
    let back = parse(&src).map_err(err)?;
    ensure(&back == p, || {
        format!("{} parsed back as {}", format(p), format(&back))
    })
}

fn feqlab(args: &[&str]) -> Result<(i32, serde_json::Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_feqlab"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let json = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: stdout is not JSON: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), json))
}

const EXIT_MATRIX: &[(&[&str], i32)] = &[
    (
        &[
            "check",
            "--equation",
            "haruki",
            "--N",
            "3",
            "--expr",
            "z^2*zbar^2",
        ],
        0,
    ),
    (
        &["check", "--equation", "knw", "--N", "2", "--expr", "z*zbar"],
        1,
    ),
    (
        &["check", "--equation", "haruki", "--N", "0", "--expr", "z"],
        2,
    ),
    (
        &[
            "expand",
            "--operator",
            "haruki-defect",
            "--N",
            "2",
            "--expr",
            "z^2",
        ],
        0,
    ),
    (
        &[
            "expand",
            "--operator",
            "mixed-diff",
            "--N",
            "2",
            "--steps",
            "1",
            "--expr",
            "x1^2",
        ],
        2,
    ),
    (
        &[
            "verify",
            "--equation",
            "knw",
            "--N",
            "3",
            "--max-degree",
            "6",
        ],
        0,
    ),
    (
        &[
            "verify",
            "--equation",
            "haruki",
            "--N",
            "3",
            "--max-degree",
            "2",
        ],
        2,
    ),
    (
        &["djokovic", "--expr", "x1^2*x2^2", "--steps", "1,1/2;-2,3"],
        0,
    ),
    (&["djokovic", "--expr", "x1 +", "--steps", "1"], 2),
    (&["corners", "close", "--points", "1,2;3,0"], 0),
    (&["corners", "minimal", "--points", "0,1"], 2),
    (
        &[
            "scan",
            "--equation",
            "haruki",
            "--N",
            "2",
            "--expr",
            "z*zbar",
        ],
        0,
    ),
    (
        &["scan", "--equation", "nagumo", "--N", "2", "--expr", "z^2"],
        1,
    ),
    (
        &[
            "scan",
            "--equation",
            "knw",
            "--N",
            "2",
            "--expr",
            "z",
            "--grid",
            "1,0,3",
        ],
        2,
    ),
];

fn parser_and_cli() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7A25);
    let orders = [1u32, 3, 4, 5, 8, 12];
    let complex_vars = [Var::Z, Var::Zbar, Var::X, Var::Xbar, Var::Y, Var::Ybar];
    for k in 0..500 {
        if k % 2 == 0 {
            let field =
                CyclotomicField::new(orders[rng.gen_range(0..orders.len())]).map_err(err)?;
            let mut p = SparsePolynomial::zero(&field);
            for _ in 0..rng.gen_range(0..=5) {
                let pairs: Vec<(Var, u32)> = complex_vars
                    .iter()
                    .map(|&v| (v, rng.gen_range(0..=2)))
                    .collect();
                p = &p
                    + &SparsePolynomial::term(
                        Monomial::from_pairs(pairs),
                        random_cyclotomic(&mut rng, &field),
                    );
            }
            round_trip(&p, ExprSource::complex(format(&p)).with_order(p.order()))?;
        } else {
            let terms = rng.gen_range(0..=5);
            let p = random_real_polynomial(&mut rng, 3, 5, terms);
            round_trip(&p, ExprSource::real(format(&p), 3))?;
        }
    }
    for (args, want) in EXIT_MATRIX {
        let (code, json) = feqlab(args)?;
        ensure(
            code == *want && json["exit_code"] == *want && json["schema"] == "feqlab/1",
            || format!("{args:?} exited {code}, expected {want}"),
        )?;
    }
    Ok(format!(
        "500 polynomials, {} CLI invocations",
        EXIT_MATRIX.len()
    ))
}
