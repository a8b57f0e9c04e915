//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::Zero;

use multicusp::ksm::{
    kernel_of_omega_bar, level_space, omega_bar_matrix, relations_subspace, window_index,
};
use multicusp::linalg::Subspace;
use multicusp::multigerm::{rotation_action, HomogeneousField, Multicusp};
use multicusp::report::{decode_vector, recompute_pass, LiftWitness, VerificationReport};
use multicusp::scalar::parse_circle_point;
use multicusp::sweep::{
    instance_rng, random_circle_point, random_multicusp, run_sweep, SweepConfig,
};
use multicusp::theorems::{lift_jet, paper_check_i1};
use multicusp::{Field, QCirclePoint, QMulticusp, QSubspace, Rational};

const SEED: u64 = 42;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn paper_check_binary(theta1: &str) -> Result<VerificationReport, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_multicusp"))
        .args(["--format", "json", "paper-check", "--theta1", theta1])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit code {:?}", out.status.code()));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

/// `span{(2X,3Y), (2Y,0)}` and the same span transported by `θ₁`, written out by hand.
fn closed_form_kernels(theta1: &QCirclePoint) -> (QSubspace, QSubspace) {
    let (c, s) = (theta1.cos().clone(), theta1.sin().clone());
    let cs = &c * &s;
    let base = Subspace::from_vectors(
        4,
        vec![vec![q(2), q(0), q(0), q(3)], vec![q(0), q(2), q(0), q(0)]],
    );
    let rotated = Subspace::from_vectors(
        4,
        vec![
            vec![q(2) + &s * &s, -cs.clone(), -cs.clone(), q(2) + &c * &c],
            vec![-(q(2) * &cs), q(2) * &c * &c, -(q(2) * &s * &s), q(2) * &cs],
        ],
    );
    (base.unwrap(), rotated.unwrap())
}

fn reported_kernels(report: &VerificationReport) -> Result<Vec<QSubspace>, String> {
    let kernels = report.kernels.as_ref().ok_or("no kernels in report")?;
    kernels
        .iter()
        .map(|basis| {
            let vectors = basis
                .iter()
                .map(|v| decode_vector(v))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            Subspace::from_vectors(4, vectors).map_err(|e| e.to_string())
        })
        .collect()
}

fn base_case_one(token: &str, expected_det: &str) -> Result<String, String> {
    let theta1 = parse_circle_point(token).map_err(|e| e.to_string())?;
    let report = paper_check_binary(token)?;
    let det = report.determinant.clone().unwrap_or_default();
    if det != expected_det {
        return Err(format!("theta1={token}: det {det}, want {expected_det}"));
    }
    if !report.pass || !recompute_pass(&report).map_err(|e| e.to_string())? {
        return Err(format!("theta1={token}: report does not pass"));
    }
    let (base, rotated) = closed_form_kernels(&theta1);
    if reported_kernels(&report)? != vec![base, rotated] {
        return Err(format!(
            "theta1={token}: kernel spans differ from the closed form"
        ));
    }
    let library = paper_check_i1(&theta1).map_err(|e| e.to_string())?;
    if library.determinant.as_deref() != Some(expected_det) {
        return Err(format!("theta1={token}: library det disagrees"));
    }
    Ok(format!("det({token}) = {det}"))
}

fn criterion_base_case() -> Outcome {
    let start = Instant::now();
    let results = [
        base_case_one("0,1", "-20"),
        base_case_one("3/5,4/5", "-64/5"),
    ];
    let elapsed = start.elapsed();
    let mut details = Vec::new();
    let mut pass = elapsed < Duration::from_secs(1);
    for r in results {
        match r {
            Ok(d) => details.push(d),
            Err(e) => {
                pass = false;
                details.push(e);
            }
        }
    }
    details.push(format!("{:.0} ms", elapsed.as_secs_f64() * 1e3));
    Outcome::new(pass, details.join("; "))
}

/// Criteria 2 to 6 share one sweep of 50 instances per level.
fn sweep_criteria() -> Vec<Outcome> {
    let start = Instant::now();
    let report = match run_sweep(&SweepConfig {
        seed: SEED,
        trials: 50,
        max_level: 6,
    }) {
        Ok(r) => r,
        Err(e) => {
            return (0..5)
                .map(|_| Outcome::new(false, format!("sweep failed: {e}")))
                .collect()
        }
    };
    let elapsed = start.elapsed();
    let trials = report.trials.unwrap_or_default();
    let complete = trials.len() == 300
        && (1..=6).all(|l| trials.iter().filter(|t| t.level == l).count() == 50);
    let count = |pred: &dyn Fn(&multicusp::report::TrialSummary) -> bool| {
        trials.iter().filter(|t| pred(t)).count()
    };

    let lemma1 = count(&|t| t.lemma1);
    let theorem2 = count(&|t| t.theorem2);
    let corollary1 = count(&|t| t.corollary1);
    let bookkeeping = count(&|t| t.bookkeeping);
    let counted: Vec<_> = trials.iter().filter(|t| t.level <= 5).collect();
    let generators = counted
        .iter()
        .filter(|t| t.generator_count == Some(2))
        .count();

    let (level0_ok, level0_detail) = single_cusp_level0();
    let n = trials.len();
    vec![
        Outcome::new(
            complete && lemma1 == n && elapsed < Duration::from_secs(60),
            format!(
                "{lemma1}/{n} instances, sweep took {:.1} s",
                elapsed.as_secs_f64()
            ),
        ),
        Outcome::new(
            complete && theorem2 == n,
            format!("{theorem2}/{n} direct sums"),
        ),
        Outcome::new(
            complete && corollary1 == n && level0_ok,
            format!("{corollary1}/{n} nonzero determinants; {level0_detail}"),
        ),
        Outcome::new(
            complete && generators == counted.len(),
            format!(
                "{generators}/{} counts equal 2 (levels 1..=5)",
                counted.len()
            ),
        ),
        Outcome::new(
            complete && bookkeeping == n,
            format!("{bookkeeping}/{n} instances, levels 1..=i+1"),
        ),
    ]
}

fn single_cusp_level0() -> (bool, String) {
    let mut cusps = vec![Multicusp::parse("t=0").unwrap()];
    for trial in 0..10 {
        cusps.push(random_multicusp(&mut instance_rng(SEED + 4, 0, trial), 1));
    }
    let ok = cusps.iter().all(|f| {
        let m = omega_bar_matrix(f, 0);
        level_space(f, 0).quotient_dim() == 3 && (m.rows(), m.cols()) == (3, 2) && m.rank() <= 2
    });
    (
        ok,
        format!(
            "single cusp level 0: quotient 3, rank <= 2 on {} cusps",
            cusps.len()
        ),
    )
}

/// Window generators `R_θ(2x^{2ℓ}, 3x^{2ℓ+1})` (for ℓ ≥ 1) and `R_θ(2x^{2ℓ+1}, 0)` per branch.
fn closed_form_relations(f: &QMulticusp, level: usize) -> QSubspace {
    let b = f.branch_count();
    let mut gens = Vec::new();
    for (j, p) in f.branches().iter().enumerate() {
        let (c, s) = (p.cos(), p.sin());
        let mut v = vec![q(0); 4 * b];
        v[window_index(j, 0, 1)] = q(2) * c;
        v[window_index(j, 1, 1)] = q(2) * s;
        gens.push(v);
        if level > 0 {
            let mut v = vec![q(0); 4 * b];
            v[window_index(j, 0, 0)] = q(2) * c;
            v[window_index(j, 0, 1)] = -(q(3) * s);
            v[window_index(j, 1, 0)] = q(2) * s;
            v[window_index(j, 1, 1)] = q(3) * c;
            gens.push(v);
        }
    }
    Subspace::from_vectors(4 * b, gens).unwrap()
}

fn criterion_oracle() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for b in 1..=4 {
        for trial in 0..20 {
            let f = random_multicusp(&mut instance_rng(SEED + 7, b, trial), b);
            for level in 0..=6 {
                checked += 1;
                if relations_subspace(&f, level) != closed_form_relations(&f, level) {
                    failures.push(format!("B={b} trial={trial} level={level}"));
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{}/{checked} cases equal {}",
            checked - failures.len(),
            failures.join(", ")
        ),
    )
}

fn truncated_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut out = vec![q(0); n];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (k, y) in b.iter().take(n - i).enumerate() {
            out[i + k] += x * y;
        }
    }
    out
}

/// Re-evaluates `ξ∘f − df∘η` from the witness alone, with plain coefficient vectors.
fn witness_residual_vanishes(f: &QMulticusp, w: &LiftWitness) -> Result<bool, String> {
    let n = w.jet_order + 1;
    let monomial = |d: usize| {
        let mut v = vec![q(0); n];
        if d < n {
            v[d] = q(1);
        }
        v
    };
    let field: Vec<(u32, u32, Vec<Rational>)> = w
        .field
        .iter()
        .map(|t| {
            Ok((
                t.x,
                t.y,
                decode_vector(&t.value).map_err(|e| e.to_string())?,
            ))
        })
        .collect::<Result<_, String>>()?;
    for (j, p) in f.branches().iter().enumerate() {
        let (c, s) = (p.cos(), p.sin());
        let (x2, x3) = (monomial(2), monomial(3));
        let big_x: Vec<Rational> = x2.iter().zip(&x3).map(|(a, b)| c * a - s * b).collect();
        let big_y: Vec<Rational> = x2.iter().zip(&x3).map(|(a, b)| s * a + c * b).collect();

        let mut pulled = [vec![q(0); n], vec![q(0); n]];
        for (a, b, value) in &field {
            let mut m = monomial(0);
            for _ in 0..*a {
                m = truncated_mul(&m, &big_x);
            }
            for _ in 0..*b {
                m = truncated_mul(&m, &big_y);
            }
            for (comp, v) in value.iter().enumerate() {
                for (d, coeff) in m.iter().enumerate() {
                    pulled[comp][d] += v * coeff;
                }
            }
        }

        let eta = decode_vector(w.eta.get(j).ok_or("missing eta")?).map_err(|e| e.to_string())?;
        if eta.len() != n {
            return Err(format!("eta has {} coefficients, want {n}", eta.len()));
        }
        let dx = truncated_mul(&eta, &monomial(1))
            .into_iter()
            .map(|v| q(2) * v);
        let dy = truncated_mul(&eta, &monomial(2))
            .into_iter()
            .map(|v| q(3) * v);
        for (d, (u, v)) in dx.zip(dy).enumerate() {
            let tf = [c * &u - s * &v, s * &u + c * &v];
            if pulled[0][d] != tf[0] || pulled[1][d] != tf[1] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn criterion_lift() -> Outcome {
    let mut lifts = 0;
    let mut failures = Vec::new();
    for trial in 0..10 {
        let b = if trial < 5 { 2 } else { 3 };
        let level = b - 1;
        let f = random_multicusp(&mut instance_rng(SEED + 8, b, trial), b);
        for removed in 0..b {
            let g = f.remove_branch(removed).unwrap();
            let kernel = kernel_of_omega_bar(&g, level);
            if kernel.dim() == 0 {
                failures.push(format!("trial {trial}: empty kernel"));
            }
            for v in kernel.basis() {
                lifts += 1;
                let xi = HomogeneousField::new(level, v.clone()).unwrap();
                let target = level + 5;
                let ok = match lift_jet(&g, &xi, target) {
                    Ok(cert) => {
                        let w = cert.to_witness();
                        w.residual_order >= 2 * (target + 1)
                            && w.jet_order + 1 >= 2 * (target + 1)
                            && witness_residual_vanishes(&g, &w) == Ok(true)
                    }
                    Err(_) => false,
                };
                if !ok {
                    failures.push(format!("trial {trial} removed {removed}"));
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{}/{lifts} lifts verified {}",
            lifts - failures.len(),
            failures.join(", ")
        ),
    )
}

fn criterion_equivariance() -> Outcome {
    let mut failures = Vec::new();
    for trial in 0..50 {
        let mut rng = instance_rng(SEED + 9, 0, trial);
        let b = 1 + trial % 3;
        let level = b + (trial / 3) % 2;
        let f = random_multicusp(&mut rng, b);
        let rho = random_circle_point(&mut rng);
        let kernel = kernel_of_omega_bar(&f, level);
        let rotated = kernel_of_omega_bar(&f.rotated(&rho), level);
        let action = rotation_action(&rho, level);
        let image = Subspace::from_vectors(
            kernel.ambient_dim(),
            kernel
                .basis()
                .iter()
                .map(|v| action.mul_vec(v).unwrap())
                .collect(),
        )
        .unwrap();
        if kernel.dim() == 0 || image != rotated {
            failures.push(trial.to_string());
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{}/50 trials {}", 50 - failures.len(), failures.join(", ")),
    )
}

fn main() -> ExitCode {
    let names = [
        "1 base case determinant and kernels",
        "2 branch-removed kernels have dimension 2",
        "3 kernels form a direct sum",
        "4 level map is bijective; single cusp level 0 is not",
        "5 liftable generator count is 2",
        "6 dimension bookkeeping",
        "7 relations match the closed form",
        "8 jet lifting certificates",
        "9 rotation equivariance",
    ];
    let mut outcomes = vec![criterion_base_case()];
    outcomes.extend(sweep_criteria());
    outcomes.push(criterion_oracle());
    outcomes.push(criterion_lift());
    outcomes.push(criterion_equivariance());

    for (name, o) in names.iter().zip(&outcomes) {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {verdict} ({})", o.detail.trim());
    }
    if outcomes.iter().all(|o| o.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
