use std::fmt::Write;

use multicusp::report::{Statement, VerificationReport};

fn statement_name(s: Statement) -> &'static str {
    match s {
        Statement::Lemma1 => "lemma1",
        Statement::Theorem1 => "theorem1",
        Statement::Theorem2 => "theorem2",
        Statement::Corollary1 => "corollary1",
        Statement::PaperCheck => "paper-check",
        Statement::Bookkeeping => "bookkeeping",
        Statement::Kernel => "kernel",
        Statement::Matrix => "matrix",
        Statement::Lift => "lift",
        Statement::Sweep => "sweep",
    }
}

fn vector(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

pub fn text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{}: {verdict}", statement_name(report.statement));

    let i = &report.inputs;
    if let Some(b) = &i.branches {
        let _ = writeln!(out, "  branches: {b}");
    }
    if let Some(t) = &i.theta1 {
        let _ = writeln!(out, "  theta1: {t}");
    }
    if let Some(l) = i.level {
        let _ = writeln!(out, "  level: {l}");
    }
    if let Some(j) = i.removed {
        let _ = writeln!(out, "  removed branch: {j}");
    }
    if let (Some(seed), Some(trials), Some(max)) = (i.seed, i.trials, i.max_level) {
        let _ = writeln!(
            out,
            "  seed {seed}, {trials} trials per level, levels 1..={max}"
        );
    }
    for (key, values) in &report.dimensions {
        let joined: Vec<String> = values.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "  {key}: {}", joined.join(", "));
    }
    if report.statement == Statement::Matrix {
        let shape = &report.dimensions["matrix_shape"];
        let rank = report.dimensions["rank"][0];
        if rank < shape[0] {
            let _ = writeln!(out, "  not surjective: rank {rank} < {}", shape[0]);
        }
    }
    if let Some(det) = &report.determinant {
        let _ = writeln!(out, "  determinant: {det}");
    }
    if let Some(m) = &report.matrix {
        let _ = writeln!(out, "  matrix:");
        for row in m {
            let _ = writeln!(out, "    [{}]", row.join(", "));
        }
    }
    if let Some(kernels) = &report.kernels {
        for (k, basis) in kernels.iter().enumerate() {
            let shown: Vec<String> = basis.iter().map(|v| vector(v)).collect();
            let _ = writeln!(out, "  kernel {k}: span{{{}}}", shown.join(", "));
        }
    }
    if let Some(lift) = &report.lift {
        let _ = writeln!(out, "  lifted field (degree <= {}):", lift.target_degree);
        for t in &lift.field {
            let _ = writeln!(
                out,
                "    X^{} Y^{}: ({}, {})",
                t.x, t.y, t.value[0], t.value[1]
            );
        }
        for (j, eta) in lift.eta.iter().enumerate() {
            let _ = writeln!(out, "  eta on branch {j}: {}", vector(eta));
        }
        let _ = writeln!(out, "  residual vanishes to order {}", lift.residual_order);
    }
    if let Some(trials) = &report.trials {
        for t in trials.iter().filter(|t| !t.pass) {
            let _ = writeln!(
                out,
                "  failed: level {} trial {} [{}]",
                t.level, t.trial, t.branches
            );
        }
    }
    out
}
