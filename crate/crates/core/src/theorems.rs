//! Instance-level verifiers for the multicusp statements, and jet lifting.
//!
//! The statement verifiers insist on `B = i + 1` branches at level `i ≥ 1`;
//! anything else is reachable only through [`crate::ksm`].

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jet::SeriesJet;
use crate::ksm::{
    ambient_coords, ambient_omega_matrix, delta, gamma, kernel_of_omega_bar, level_space,
    omega_bar_matrix, window_order,
};
use crate::linalg::{determinant, is_direct_sum, solve, subspace_sum, Matrix, Subspace};
use crate::multigerm::{AlongFieldJet, HomogeneousField, Multicusp, PolynomialField};
use crate::report::{
    encode_matrix, encode_subspace, encode_vector, FieldTerm, Inputs, LiftWitness, Statement,
    VerificationReport,
};
use crate::scalar::{distinct_mod_pi, mul, square, CirclePoint, Field};
use crate::Rational;

type QMulticusp = Multicusp<Rational>;

fn require_theorem_setting(f: &QMulticusp, level: usize) -> Result<()> {
    if level == 0 {
        return Err(Error::Hypothesis("the level must be at least 1".into()));
    }
    if f.branch_count() != level + 1 {
        return Err(Error::Hypothesis(format!(
            "branch count must equal level+1 (got {} branches at level {level})",
            f.branch_count()
        )));
    }
    Ok(())
}

fn inputs(f: &QMulticusp, level: usize) -> Inputs {
    Inputs {
        branches: Some(f.to_string()),
        level: Some(level),
        ..Inputs::default()
    }
}

/// `ker(ᵢω̄ c_θ̂ⱼ)` for every removable branch `j`.
pub fn removed_branch_kernels<T: Field>(
    f: &Multicusp<T>,
    level: usize,
) -> Result<Vec<Subspace<T>>> {
    (0..f.branch_count())
        .map(|j| Ok(kernel_of_omega_bar(&f.remove_branch(j)?, level)))
        .collect()
}

fn lemma1_from(f: &QMulticusp, level: usize, kernels: &[Subspace<Rational>]) -> VerificationReport {
    let mut report = VerificationReport::new(Statement::Lemma1, inputs(f, level));
    let dims: Vec<usize> = kernels.iter().map(Subspace::dim).collect();
    report.pass = dims.iter().all(|&d| d == 2);
    report.dimension("kernel_dims", dims);
    report.dimension("domain_dim", vec![HomogeneousField::<Rational>::dim(level)]);
    report.kernels = Some(kernels.iter().map(encode_subspace).collect());
    report
}

fn theorem2_from(
    f: &QMulticusp,
    level: usize,
    kernels: &[Subspace<Rational>],
) -> Result<VerificationReport> {
    let n = HomogeneousField::<Rational>::dim(level);
    let mut report = VerificationReport::new(Statement::Theorem2, inputs(f, level));
    let mut sum = Subspace::zero(n);
    for k in kernels {
        sum = subspace_sum(&sum, k)?;
    }
    report.pass = is_direct_sum(kernels, &Subspace::full(n))?;
    report.dimension("kernel_dims", kernels.iter().map(Subspace::dim).collect());
    report.dimension("sum_dim", vec![sum.dim()]);
    report.dimension("domain_dim", vec![n]);
    report.kernels = Some(kernels.iter().map(encode_subspace).collect());
    Ok(report)
}

/// Every branch-removed kernel at level `i` has dimension 2.
pub fn verify_lemma1(f: &QMulticusp, level: usize) -> Result<VerificationReport> {
    require_theorem_setting(f, level)?;
    Ok(lemma1_from(f, level, &removed_branch_kernels(f, level)?))
}

/// The branch-removed kernels split the degree-`i` fields as a direct sum.
pub fn verify_theorem2(f: &QMulticusp, level: usize) -> Result<VerificationReport> {
    require_theorem_setting(f, level)?;
    theorem2_from(f, level, &removed_branch_kernels(f, level)?)
}

/// Both reports from one set of kernels.
pub fn verify_lemma1_and_theorem2(
    f: &QMulticusp,
    level: usize,
) -> Result<(VerificationReport, VerificationReport)> {
    require_theorem_setting(f, level)?;
    let kernels = removed_branch_kernels(f, level)?;
    Ok((
        lemma1_from(f, level, &kernels),
        theorem2_from(f, level, &kernels)?,
    ))
}

/// `ᵢω̄f` is square of size `2(i+1)` with nonzero determinant.
pub fn verify_corollary1(f: &QMulticusp, level: usize) -> Result<VerificationReport> {
    require_theorem_setting(f, level)?;
    let m = omega_bar_matrix(f, level);
    let mut report = VerificationReport::new(Statement::Corollary1, inputs(f, level));
    report.dimension("matrix_shape", vec![m.rows(), m.cols()]);
    let n = HomogeneousField::<Rational>::dim(level);
    if m.rows() == n && m.cols() == n {
        let det = determinant(&m)?;
        report.pass = !det.is_zero();
        report.determinant = Some(det.to_string());
    }
    report.matrix = Some(encode_matrix(&m));
    Ok(report)
}

/// `dim ker(_{i+1}ω̄f)`, the minimal number of generators of the liftable fields,
/// once `ᵢω̄f` is known to be bijective.
pub fn liftable_generator_count(f: &QMulticusp, level: usize) -> Result<usize> {
    let hypothesis = verify_corollary1(f, level)?;
    if !hypothesis.pass {
        return Err(Error::Hypothesis(format!(
            "the level-{level} map is not bijective"
        )));
    }
    Ok(kernel_of_omega_bar(f, level + 1).dim())
}

/// Generator count with its witnesses; passes when the count is 2, the
/// value known for plane curves over the complex numbers.
pub fn verify_theorem1(f: &QMulticusp, level: usize) -> Result<VerificationReport> {
    let hypothesis = verify_corollary1(f, level)?;
    if !hypothesis.pass {
        return Err(Error::Hypothesis(format!(
            "the level-{level} map is not bijective"
        )));
    }
    let kernel = kernel_of_omega_bar(f, level + 1);
    let mut report = VerificationReport::new(Statement::Theorem1, inputs(f, level));
    report.dimension("generator_count", vec![kernel.dim()]);
    report.dimension(
        "domain_dim",
        vec![HomogeneousField::<Rational>::dim(level + 1)],
    );
    report.determinant = hypothesis.determinant;
    report.matrix = hypothesis.matrix;
    report.kernels = Some(vec![encode_subspace(&kernel)]);
    report.pass = kernel.dim() == 2;
    Ok(report)
}

/// Checks `quotient = 2δ − (δ − γ_ℓ + γ_{ℓ−1})` with `δ = quotient = 2B`.
pub fn verify_bookkeeping<T: Field>(f: &Multicusp<T>, level: usize) -> Result<BookkeepingCounts> {
    if level == 0 {
        return Err(Error::Hypothesis(
            "bookkeeping needs level at least 1".into(),
        ));
    }
    Ok(BookkeepingCounts {
        branch_count: f.branch_count(),
        delta: delta(f, level),
        gamma: gamma(f, level),
        gamma_prev: gamma(f, level - 1),
        quotient_dim: level_space(f, level).quotient_dim(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BookkeepingCounts {
    pub branch_count: usize,
    pub delta: usize,
    pub gamma: usize,
    pub gamma_prev: usize,
    pub quotient_dim: usize,
}

impl BookkeepingCounts {
    pub fn holds(&self) -> bool {
        let b = self.branch_count;
        let rhs = (2 * self.delta + self.gamma).checked_sub(self.delta + self.gamma_prev);
        self.delta == 2 * b && self.quotient_dim == 2 * b && rhs == Some(self.quotient_dim)
    }

    pub fn to_report(&self, f: &QMulticusp, level: usize) -> VerificationReport {
        let mut report = VerificationReport::new(Statement::Bookkeeping, inputs(f, level));
        report.dimension("branch_count", vec![self.branch_count]);
        report.dimension("delta", vec![self.delta]);
        report.dimension("gamma", vec![self.gamma]);
        report.dimension("gamma_prev", vec![self.gamma_prev]);
        report.dimension("quotient_dim", vec![self.quotient_dim]);
        report.pass = self.holds();
        report
    }
}

/// The four columns of the double-cusp matrix `M` at `θ₁`: the basis
/// `(2X, 3Y)`, `(2Y, 0)` of the unrotated kernel, then its rotation by `θ₁`.
pub fn paper_closed_form_columns<T: Field>(theta1: &CirclePoint<T>) -> Vec<Vec<T>> {
    let (c, s) = (theta1.cos(), theta1.sin());
    let int = T::from_int;
    let cs = mul(c, s);
    vec![
        vec![int(2), int(0), int(0), int(3)],
        vec![int(0), int(2), int(0), int(0)],
        vec![
            int(2) + square(s),
            -cs.clone(),
            -cs.clone(),
            int(2) + square(c),
        ],
        vec![
            -(int(2) * cs.clone()),
            int(2) * square(c),
            -(int(2) * square(s)),
            int(2) * cs,
        ],
    ]
}

/// The `i = 1` double-cusp computation with `θ₀ = 0`.
///
/// Compares both computed kernels with their closed forms, checks
/// `det M = −20 sin²θ₁`, and checks that the two kernels together have rank 4.
pub fn paper_check_i1(theta1: &CirclePoint<Rational>) -> Result<VerificationReport> {
    let base = CirclePoint::identity();
    if !distinct_mod_pi(&base, theta1) {
        return Err(Error::Hypothesis(
            "theta1 must differ from 0 modulo pi".into(),
        ));
    }
    let k0 = kernel_of_omega_bar(&Multicusp::new(vec![base.clone()])?, 1);
    let k1 = kernel_of_omega_bar(&Multicusp::new(vec![theta1.clone()])?, 1);
    let columns = paper_closed_form_columns(theta1);
    let m = Matrix::from_columns(4, &columns)?;
    let det = determinant(&m)?;
    let target = Rational::from_integer((-20).into()) * square(theta1.sin());
    let closed0 = Subspace::from_vectors(4, columns[..2].to_vec())?;
    let closed1 = Subspace::from_vectors(4, columns[2..].to_vec())?;
    let together = subspace_sum(&k0, &k1)?;

    let f = Multicusp::new(vec![base, theta1.clone()])?;
    let mut report = VerificationReport::new(
        Statement::PaperCheck,
        Inputs {
            theta1: Some(theta1.to_string()),
            ..inputs(&f, 1)
        },
    );
    report.dimension("kernel_dims", vec![k0.dim(), k1.dim()]);
    report.dimension("sum_dim", vec![together.dim()]);
    report.pass = det == target && k0 == closed0 && k1 == closed1 && together.dim() == 4;
    report.determinant = Some(det.to_string());
    report.matrix = Some(encode_matrix(&m));
    report.kernels = Some(vec![encode_subspace(&k0), encode_subspace(&k1)]);
    Ok(report)
}

/// Result of lifting a kernel element order by order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCertificate<T> {
    pub base_level: usize,
    pub target_degree: usize,
    /// `ξ = ξ_i + … + ξ_N`.
    pub field: PolynomialField<T>,
    /// The homogeneous pieces `ξ_i, …, ξ_N` in order.
    pub corrections: Vec<HomogeneousField<T>>,
    /// One source field jet per branch, with `ωf(ξ) − tf(η)` of high order.
    pub eta: Vec<SeriesJet<T>>,
    pub jet_order: usize,
    /// Vanishing order of `ωf(ξ) − tf(η)`; `jet_order + 1` when it is zero.
    pub residual_order: usize,
}

impl LiftCertificate<Rational> {
    pub fn to_witness(&self) -> LiftWitness {
        LiftWitness {
            target_degree: self.target_degree,
            jet_order: self.jet_order,
            field: self
                .field
                .terms()
                .map(|(&(x, y), value)| FieldTerm {
                    x,
                    y,
                    value: [value[0].to_string(), value[1].to_string()],
                })
                .collect(),
            eta: self.eta.iter().map(|e| encode_vector(e.coeffs())).collect(),
            residual_order: self.residual_order,
        }
    }
}

/// Extends `xi`, a kernel element of `ᵢω̄f`, by homogeneous corrections of
/// degrees `i+1 … target_degree` so that `ωf(ξ) ∈ T𝓡ₑ(f) + f*m₀^{N+1}θ_S(f)`.
///
/// Each correction is the solution of the level-`m` system with free
/// variables set to zero. A level with no solution is reported as
/// [`Error::Unsolvable`].
pub fn lift_jet<T: Field>(
    f: &Multicusp<T>,
    xi: &HomogeneousField<T>,
    target_degree: usize,
) -> Result<LiftCertificate<T>> {
    let base = xi.degree();
    if target_degree < base {
        return Err(Error::Hypothesis(format!(
            "target degree {target_degree} is below the field degree {base}"
        )));
    }
    let omega_bar = omega_bar_matrix(f, base);
    if omega_bar.mul_vec(xi.coords())?.iter().any(|x| !x.is_zero()) {
        return Err(Error::NotInKernel { level: base });
    }

    let order = window_order(target_degree);
    let branches = f.branch_count();
    let mut field = xi.to_polynomial();
    let mut corrections = vec![xi.clone()];
    let mut eta = vec![SeriesJet::zero(order); branches];

    for level in base..=target_degree {
        let residual = f.omega_f(&field, order).try_sub(&f.tf(&eta)?)?;
        let mut window =
            ambient_coords(&residual, level).map_err(|_| Error::Unsolvable { level })?;

        if level > base {
            let space = level_space(f, level);
            let ambient = ambient_omega_matrix(f, level);
            let system = space.projection().mul_mat(&ambient)?;
            let rhs: Vec<T> = space
                .projection()
                .mul_vec(&window)?
                .into_iter()
                .map(|x| -x)
                .collect();
            let coords = solve(&system, &rhs)?.ok_or(Error::Unsolvable { level })?;
            for (w, a) in window.iter_mut().zip(ambient.mul_vec(&coords)?) {
                *w += &a;
            }
            let correction = HomogeneousField::new(level, coords)?;
            field.add(&correction.to_polynomial());
            corrections.push(correction);
        }

        // The window now lies in the tangent relations; write it as tf of
        // source monomials of degree 2ℓ−1 and 2ℓ on each branch.
        let degrees: Vec<usize> = if level == 0 {
            vec![0]
        } else {
            vec![2 * level - 1, 2 * level]
        };
        let mut generator_cols = Vec::new();
        let mut labels = Vec::new();
        for j in 0..branches {
            for &d in &degrees {
                let image = f.tf_monomial_image(j, d, window_order(level))?;
                generator_cols.push(ambient_coords(&image, level)?);
                labels.push((j, d));
            }
        }
        let generators = Matrix::from_columns(4 * branches, &generator_cols)?;
        let alpha = solve(&generators, &window)?.ok_or(Error::Unsolvable { level })?;
        for ((j, d), a) in labels.into_iter().zip(alpha) {
            if !a.is_zero() {
                eta[j] = &eta[j] + &SeriesJet::monomial(order, d, a);
            }
        }
    }

    let residual: AlongFieldJet<T> = f.omega_f(&field, order).try_sub(&f.tf(&eta)?)?;
    Ok(LiftCertificate {
        base_level: base,
        target_degree,
        field,
        corrections,
        eta,
        jet_order: order,
        residual_order: residual.order_of_vanishing().unwrap_or(order + 1),
    })
}
