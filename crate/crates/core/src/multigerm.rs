//! Multicusps and the maps `tf` and `ωf` on jets.
//!
//! Branch `j` of a multicusp is `x ↦ R_θⱼ(x², x³)` in its own local coordinate;
//! the source points never enter the arithmetic, only the branch separation.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jet::SeriesJet;
use crate::linalg::Matrix;
use crate::scalar::{distinct_mod_pi, mul, parse_circle_point, CirclePoint, Field};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multicusp<T> {
    branches: Vec<CirclePoint<T>>,
}

impl<T: Field> Multicusp<T> {
    /// Rejects an empty list and any pair of angles equal modulo π.
    pub fn new(branches: Vec<CirclePoint<T>>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::NoBranches);
        }
        for j in 0..branches.len() {
            for k in j + 1..branches.len() {
                if !distinct_mod_pi(&branches[j], &branches[k]) {
                    return Err(Error::BranchesNotDistinct(j, k));
                }
            }
        }
        Ok(Self { branches })
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[CirclePoint<T>] {
        &self.branches
    }

    pub fn branch(&self, j: usize) -> Result<&CirclePoint<T>> {
        self.branches.get(j).ok_or(Error::BranchOutOfRange {
            index: j,
            count: self.branches.len(),
        })
    }

    /// The multigerm with branch `j` deleted, other branches in order.
    pub fn remove_branch(&self, j: usize) -> Result<Self> {
        self.branch(j)?;
        if self.branches.len() == 1 {
            return Err(Error::SingleBranch);
        }
        let mut branches = self.branches.clone();
        branches.remove(j);
        Ok(Self { branches })
    }

    /// Every branch rotated by the same angle.
    pub fn rotated(&self, rho: &CirclePoint<T>) -> Self {
        Self {
            branches: self.branches.iter().map(|p| p.rotate_by(rho)).collect(),
        }
    }

    /// `(c·x² − s·x³, s·x² + c·x³)` for branch `j`.
    pub fn branch_map_jet(&self, j: usize, order: usize) -> Result<[SeriesJet<T>; 2]> {
        let p = self.branch(j)?;
        let (c, s) = (p.cos().clone(), p.sin().clone());
        Ok([
            SeriesJet::from_coeffs(order, vec![T::zero(), T::zero(), c.clone(), -s.clone()]),
            SeriesJet::from_coeffs(order, vec![T::zero(), T::zero(), s, c]),
        ])
    }

    /// `(X^a Y^b) ∘ c_θⱼ`.
    pub fn monomial_pullback(
        &self,
        j: usize,
        a: u32,
        b: u32,
        order: usize,
    ) -> Result<SeriesJet<T>> {
        let [x, y] = self.branch_map_jet(j, order)?;
        x.pow(a).mul(&y.pow(b))
    }

    /// `ξ ∘ f` on every branch.
    pub fn omega_f(&self, xi: &PolynomialField<T>, order: usize) -> AlongFieldJet<T> {
        let max_degree = xi.max_degree();
        let branches = (0..self.branch_count())
            .map(|j| {
                let pullbacks = PullbackTable::new(self, j, max_degree, order);
                let mut out = [SeriesJet::zero(order), SeriesJet::zero(order)];
                for (&(a, b), value) in &xi.terms {
                    let m = pullbacks.monomial(a, b);
                    for (slot, coeff) in out.iter_mut().zip(value) {
                        if !coeff.is_zero() {
                            *slot = &*slot + &m.scale(coeff);
                        }
                    }
                }
                out
            })
            .collect();
        AlongFieldJet { order, branches }
    }

    /// `tf(η) = df ∘ η`, with `eta[j]` the source field on branch `j`.
    pub fn tf(&self, eta: &[SeriesJet<T>]) -> Result<AlongFieldJet<T>> {
        if eta.len() != self.branch_count() {
            return Err(Error::DimensionMismatch {
                expected: self.branch_count(),
                found: eta.len(),
            });
        }
        let order = eta.first().map_or(0, SeriesJet::order);
        let branches = eta
            .iter()
            .zip(&self.branches)
            .map(|(e, p)| {
                if e.order() != order {
                    return Err(Error::OrderMismatch(order, e.order()));
                }
                let dx = e.shift(1).scale(&T::from_int(2));
                let dy = e.shift(2).scale(&T::from_int(3));
                Ok(rotate_pair(p, &dx, &dy))
            })
            .collect::<Result<_>>()?;
        Ok(AlongFieldJet { order, branches })
    }

    /// `tf(xⱼ^d)` for the source field supported on branch `j`:
    /// `R_θⱼ(2x^{d+1}, 3x^{d+2})` there and zero elsewhere.
    pub fn tf_monomial_image(&self, j: usize, d: usize, order: usize) -> Result<AlongFieldJet<T>> {
        let p = self.branch(j)?;
        let dx = SeriesJet::monomial(order, d + 1, T::from_int(2));
        let dy = SeriesJet::monomial(order, d + 2, T::from_int(3));
        let mut image = AlongFieldJet::zero(self.branch_count(), order);
        image.branches[j] = rotate_pair(p, &dx, &dy);
        Ok(image)
    }
}

fn rotate_pair<T: Field>(
    p: &CirclePoint<T>,
    u: &SeriesJet<T>,
    v: &SeriesJet<T>,
) -> [SeriesJet<T>; 2] {
    [
        &u.scale(p.cos()) - &v.scale(p.sin()),
        &u.scale(p.sin()) + &v.scale(p.cos()),
    ]
}

/// Powers of the two coordinate pullbacks on one branch.
struct PullbackTable<T> {
    x_pows: Vec<SeriesJet<T>>,
    y_pows: Vec<SeriesJet<T>>,
}

impl<T: Field> PullbackTable<T> {
    fn new(f: &Multicusp<T>, j: usize, max_degree: u32, order: usize) -> Self {
        let [x, y] = f
            .branch_map_jet(j, order)
            .expect("branch index checked by caller");
        let powers = |base: &SeriesJet<T>| {
            let mut pows = vec![SeriesJet::one(order)];
            for k in 0..max_degree as usize {
                let next = pows[k].mul(base).expect("same order");
                pows.push(next);
            }
            pows
        };
        Self {
            x_pows: powers(&x),
            y_pows: powers(&y),
        }
    }

    fn monomial(&self, a: u32, b: u32) -> SeriesJet<T> {
        self.x_pows[a as usize]
            .mul(&self.y_pows[b as usize])
            .expect("same order")
    }
}

impl Multicusp<Rational> {
    /// Semicolon-separated branch tokens, each `t=<q>`, `t=inf` or `c,s`.
    pub fn parse(encoding: &str) -> Result<Self> {
        let branches = encoding
            .split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(parse_circle_point)
            .collect::<Result<Vec<_>>>()?;
        Self::new(branches)
    }
}

impl fmt::Display for Multicusp<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, p) in self.branches.iter().enumerate() {
            if j > 0 {
                f.write_str(";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// A vector field along a multigerm, truncated at a common jet order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlongFieldJet<T> {
    order: usize,
    branches: Vec<[SeriesJet<T>; 2]>,
}

impl<T: Field> AlongFieldJet<T> {
    pub fn zero(branch_count: usize, order: usize) -> Self {
        Self {
            order,
            branches: vec![[SeriesJet::zero(order), SeriesJet::zero(order)]; branch_count],
        }
    }

    pub fn from_branches(order: usize, branches: Vec<[SeriesJet<T>; 2]>) -> Result<Self> {
        for pair in &branches {
            for comp in pair {
                if comp.order() != order {
                    return Err(Error::OrderMismatch(order, comp.order()));
                }
            }
        }
        Ok(Self { order, branches })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn branch(&self, j: usize) -> &[SeriesJet<T>; 2] {
        &self.branches[j]
    }

    pub fn is_zero(&self) -> bool {
        self.branches.iter().flatten().all(SeriesJet::is_zero)
    }

    /// Smallest vanishing order over all branches and components.
    pub fn order_of_vanishing(&self) -> Option<usize> {
        self.branches
            .iter()
            .flatten()
            .filter_map(SeriesJet::order_of_vanishing)
            .min()
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&SeriesJet<T>, &SeriesJet<T>) -> SeriesJet<T>,
    ) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.branches.len() != other.branches.len() {
            return Err(Error::DimensionMismatch {
                expected: self.branches.len(),
                found: other.branches.len(),
            });
        }
        let branches = self
            .branches
            .iter()
            .zip(&other.branches)
            .map(|([a0, a1], [b0, b1])| [op(a0, b0), op(a1, b1)])
            .collect();
        Ok(Self {
            order: self.order,
            branches,
        })
    }
}

/// A polynomial vector field on the target plane, keyed by `(X-exponent, Y-exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolynomialField<T> {
    terms: BTreeMap<(u32, u32), [T; 2]>,
}

impl<T: Field> PolynomialField<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    /// Adds `value · X^a Y^b`; terms that cancel are dropped.
    pub fn add_term(&mut self, a: u32, b: u32, value: [T; 2]) {
        let entry = self
            .terms
            .entry((a, b))
            .or_insert_with(|| [T::zero(), T::zero()]);
        entry[0] += &value[0];
        entry[1] += &value[1];
        if entry.iter().all(|v| v.is_zero()) {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&mut self, other: &Self) {
        for (&(a, b), value) in &other.terms {
            self.add_term(a, b, value.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &[T; 2])> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    /// The homogeneous part of the given degree.
    pub fn homogeneous_part(&self, degree: usize) -> HomogeneousField<T> {
        let mut h = HomogeneousField::zero(degree);
        for (&(a, b), value) in &self.terms {
            if (a + b) as usize == degree {
                for (m, v) in value.iter().enumerate() {
                    h.coords[HomogeneousField::<T>::index(degree, m, b as usize)] = v.clone();
                }
            }
        }
        h
    }
}

/// An element of `m₀ⁱθ₀(2)/m₀^{i+1}θ₀(2)`: a degree-`i` pair of binary forms.
///
/// Coordinates run component-major with descending X-degree:
/// `X^i e₁, X^{i−1}Y e₁, …, Y^i e₁, X^i e₂, …, Y^i e₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousField<T> {
    degree: usize,
    coords: Vec<T>,
}

impl<T: Field> HomogeneousField<T> {
    pub fn dim(degree: usize) -> usize {
        2 * (degree + 1)
    }

    /// Coordinate index of `X^{degree−y_power} Y^{y_power} e_{component+1}`.
    pub fn index(degree: usize, component: usize, y_power: usize) -> usize {
        component * (degree + 1) + y_power
    }

    pub fn new(degree: usize, coords: Vec<T>) -> Result<Self> {
        if coords.len() != Self::dim(degree) {
            return Err(Error::DimensionMismatch {
                expected: Self::dim(degree),
                found: coords.len(),
            });
        }
        Ok(Self { degree, coords })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coords: vec![T::zero(); Self::dim(degree)],
        }
    }

    pub fn basis_vector(degree: usize, idx: usize) -> Self {
        let mut h = Self::zero(degree);
        h.coords[idx] = T::one();
        h
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn to_polynomial(&self) -> PolynomialField<T> {
        let mut p = PolynomialField::zero();
        let n = self.degree + 1;
        for k in 0..n {
            let value = [self.coords[k].clone(), self.coords[n + k].clone()];
            p.add_term((self.degree - k) as u32, k as u32, value);
        }
        p
    }

    /// `ρ · ξ(ρ⁻¹(X, Y))`, the field transported by the rotation `ρ`.
    pub fn conjugate(&self, rho: &CirclePoint<T>) -> Self {
        let action = rotation_action(rho, self.degree);
        Self {
            degree: self.degree,
            coords: action
                .mul_vec(&self.coords)
                .expect("action has field dimension"),
        }
    }
}

/// Matrix of `ξ ↦ ρ·ξ∘ρ⁻¹` on degree-`degree` homogeneous fields.
pub fn rotation_action<T: Field>(rho: &CirclePoint<T>, degree: usize) -> Matrix<T> {
    let (c, s) = (rho.cos().clone(), rho.sin().clone());
    // ρ⁻¹(X, Y) = (cX + sY, −sX + cY), as binary forms indexed by Y-power.
    let x_sub = vec![c.clone(), s.clone()];
    let y_sub = vec![-s.clone(), c.clone()];
    let n = degree + 1;
    let mut action = Matrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        let mut form = vec![T::one()];
        for _ in 0..degree - k {
            form = form_mul(&form, &x_sub);
        }
        for _ in 0..k {
            form = form_mul(&form, &y_sub);
        }
        // ρ·e₁ = (c, s) and ρ·e₂ = (−s, c).
        let images = [(c.clone(), s.clone()), (-s.clone(), c.clone())];
        for (m, (first, second)) in images.iter().enumerate() {
            let col = HomogeneousField::<T>::index(degree, m, k);
            for (y_power, coeff) in form.iter().enumerate() {
                action[(y_power, col)] = mul(first, coeff);
                action[(n + y_power, col)] = mul(second, coeff);
            }
        }
    }
    action
}

fn form_mul<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &mul(x, y);
        }
    }
    out
}
