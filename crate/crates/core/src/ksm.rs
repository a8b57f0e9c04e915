//! The level-`ℓ` reduced Kodaira–Spencer–Mather map `ℓω̄f` as a finite matrix.
//!
//! On each branch, `f*m₀^ℓθ_S(f)` is `m^{2ℓ}` in both components, so the
//! quotient by `f*m₀^{ℓ+1}θ_S(f)` is read off the coefficients of `x^{2ℓ}` and
//! `x^{2ℓ+1}`. That window gives an ambient space of dimension `4B`; the
//! codomain of `ℓω̄f` is its quotient by the image of `T𝓡ₑ(f) ∩ f*m₀^ℓθ_S(f)`.

use crate::error::{Error, Result};
use crate::jet::SeriesJet;
use crate::linalg::{
    intersect_coordinate_subspace, kernel_basis, quotient_projection, Matrix, Subspace,
};
use crate::multigerm::{AlongFieldJet, HomogeneousField, Multicusp};
use crate::scalar::Field;

/// Jet order that holds the level-`ℓ` window.
pub fn window_order(level: usize) -> usize {
    2 * level + 1
}

/// Index of the window coordinate for `x^{2ℓ+offset}` in `component` of `branch`.
pub fn window_index(branch: usize, component: usize, offset: usize) -> usize {
    4 * branch + 2 * component + offset
}

/// The codomain of `ℓω̄f`: window coordinates modulo the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSpace<T> {
    level: usize,
    branch_count: usize,
    relations: Subspace<T>,
    projection: Matrix<T>,
}

impl<T: Field> LevelSpace<T> {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn branch_count(&self) -> usize {
        self.branch_count
    }

    pub fn ambient_dim(&self) -> usize {
        4 * self.branch_count
    }

    pub fn relations(&self) -> &Subspace<T> {
        &self.relations
    }

    pub fn projection(&self) -> &Matrix<T> {
        &self.projection
    }

    pub fn quotient_dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn omega_bar_matrix(&self, f: &Multicusp<T>) -> Matrix<T> {
        self.projection
            .mul_mat(&ambient_omega_matrix(f, self.level))
            .expect("projection width equals ambient dimension")
    }
}

/// Window coordinates of a field along `f` lying in `f*m₀^ℓθ_S(f)`, branch-major.
pub fn ambient_coords<T: Field>(v: &AlongFieldJet<T>, level: usize) -> Result<Vec<T>> {
    if v.order() < window_order(level) {
        return Err(Error::OrderTooSmall {
            order: v.order(),
            level,
        });
    }
    let low = 2 * level;
    let mut coords = Vec::with_capacity(4 * v.branch_count());
    for branch in 0..v.branch_count() {
        for (component, jet) in v.branch(branch).iter().enumerate() {
            if let Some(degree) = jet.order_of_vanishing().filter(|&d| d < low) {
                return Err(Error::BelowLevel {
                    branch,
                    component,
                    degree,
                    level,
                });
            }
            coords.push(jet.coeff(low));
            coords.push(jet.coeff(low + 1));
        }
    }
    Ok(coords)
}

/// Window image of `T𝓡ₑ(f) ∩ f*m₀^ℓθ_S(f)`.
///
/// Works in the full coefficient space `x⁰ … x^{2ℓ+1}` (both components, all
/// branches): spans `tf(xⱼ^d)` for `d ≤ 2ℓ+1`, intersects with the fields that
/// vanish below `x^{2ℓ}`, then reads the window. Larger `d` vanish in the window.
pub fn relations_subspace<T: Field>(f: &Multicusp<T>, level: usize) -> Subspace<T> {
    let order = window_order(level);
    let per_component = order + 1;
    let branches = f.branch_count();
    let full_dim = branches * 2 * per_component;
    let full_index = |j: usize, m: usize, d: usize| (2 * j + m) * per_component + d;

    let flatten = |v: &AlongFieldJet<T>| {
        let mut out = vec![T::zero(); full_dim];
        for j in 0..branches {
            for (m, jet) in v.branch(j).iter().enumerate() {
                for (d, c) in jet.coeffs().iter().enumerate() {
                    out[full_index(j, m, d)] = c.clone();
                }
            }
        }
        out
    };

    let generators = (0..branches)
        .flat_map(|j| (0..=order).map(move |d| (j, d)))
        .map(|(j, d)| flatten(&f.tf_monomial_image(j, d, order).expect("branch in range")))
        .collect();
    let tangent = Subspace::from_vectors(full_dim, generators).expect("generator length");

    let level_coords: Vec<usize> = (0..branches)
        .flat_map(|j| (0..2).flat_map(move |m| (2 * level..=order).map(move |d| (j, m, d))))
        .map(|(j, m, d)| full_index(j, m, d))
        .collect();
    let meet = intersect_coordinate_subspace(&tangent, &level_coords).expect("indices in range");
    let window = meet
        .basis()
        .iter()
        .map(|v| {
            let mut w = vec![T::zero(); 4 * branches];
            for j in 0..branches {
                for m in 0..2 {
                    for offset in 0..2 {
                        w[window_index(j, m, offset)] =
                            v[full_index(j, m, 2 * level + offset)].clone();
                    }
                }
            }
            w
        })
        .collect();
    Subspace::from_vectors(4 * branches, window).expect("window length")
}

pub fn level_space<T: Field>(f: &Multicusp<T>, level: usize) -> LevelSpace<T> {
    let relations = relations_subspace(f, level);
    let projection = quotient_projection(&relations);
    LevelSpace {
        level,
        branch_count: f.branch_count(),
        relations,
        projection,
    }
}

/// `4B × 2(ℓ+1)` matrix of window coordinates of `ωf` on the degree-`ℓ` basis fields.
///
/// `ωf(X^{ℓ−k}Y^k e_m)` is the monomial pullback placed in component `m`.
pub fn ambient_omega_matrix<T: Field>(f: &Multicusp<T>, level: usize) -> Matrix<T> {
    let order = window_order(level);
    let n = level + 1;
    let mut m = Matrix::zeros(4 * f.branch_count(), HomogeneousField::<T>::dim(level));
    for j in 0..f.branch_count() {
        for k in 0..n {
            let pullback = f
                .monomial_pullback(j, (level - k) as u32, k as u32, order)
                .expect("branch in range");
            for component in 0..2 {
                let col = HomogeneousField::<T>::index(level, component, k);
                for offset in 0..2 {
                    m[(window_index(j, component, offset), col)] =
                        pullback.coeff(2 * level + offset);
                }
            }
        }
    }
    m
}

/// Matrix of `ℓω̄f` from homogeneous-field coordinates to quotient coordinates.
pub fn omega_bar_matrix<T: Field>(f: &Multicusp<T>, level: usize) -> Matrix<T> {
    level_space(f, level).omega_bar_matrix(f)
}

pub fn kernel_of_omega_bar<T: Field>(f: &Multicusp<T>, level: usize) -> Subspace<T> {
    kernel_basis(&omega_bar_matrix(f, level))
}

/// `ℓQ(f) = f*m₀^ℓC_S / f*m₀^{ℓ+1}C_S` inside the scalar window
/// (coefficients of `x^{2ℓ}`, `x^{2ℓ+1}` per branch, index `2j + offset`).
///
/// Spanned by `xⱼ^e · (X^aY^b ∘ f)` restricted to branch `j`, for `a + b = ℓ`
/// and `e ∈ {0, 1}`; higher multipliers and monomials leave the window.
pub fn pullback_window<T: Field>(f: &Multicusp<T>, level: usize) -> Subspace<T> {
    let order = window_order(level);
    let branches = f.branch_count();
    let mut vectors = Vec::new();
    for j in 0..branches {
        for a in 0..=level as u32 {
            let pullback = f
                .monomial_pullback(j, a, level as u32 - a, order)
                .expect("branch in range");
            for e in 0..2 {
                let shifted = pullback.shift(e);
                let mut v = vec![T::zero(); 2 * branches];
                v[2 * j] = shifted.coeff(2 * level);
                v[2 * j + 1] = shifted.coeff(2 * level + 1);
                vectors.push(v);
            }
        }
    }
    Subspace::from_vectors(2 * branches, vectors).expect("window length")
}

/// `ℓδ(f) = dim ℓQ(f)`.
pub fn delta<T: Field>(f: &Multicusp<T>, level: usize) -> usize {
    pullback_window(f, level).dim()
}

/// Matrix of `ℓt̄f : ℓQ(f) → ℓQ(f)²`, columns indexed by a basis of `ℓQ(f)`.
pub fn tbar_matrix<T: Field>(f: &Multicusp<T>, level: usize) -> Matrix<T> {
    let order = window_order(level);
    let branches = f.branch_count();
    let q = pullback_window(f, level);
    let columns: Vec<Vec<T>> = q
        .basis()
        .iter()
        .map(|v| {
            let eta: Vec<SeriesJet<T>> = (0..branches)
                .map(|j| {
                    let mut coeffs = vec![T::zero(); order + 1];
                    coeffs[2 * level] = v[2 * j].clone();
                    coeffs[2 * level + 1] = v[2 * j + 1].clone();
                    SeriesJet::from_coeffs(order, coeffs)
                })
                .collect();
            let image = f.tf(&eta).expect("one source jet per branch");
            ambient_coords(&image, level).expect("tf raises vanishing order")
        })
        .collect();
    Matrix::from_columns(4 * branches, &columns).expect("column length")
}

/// `ℓγ(f) = dim ker(ℓt̄f)`.
pub fn gamma<T: Field>(f: &Multicusp<T>, level: usize) -> usize {
    kernel_basis(&tbar_matrix(f, level)).dim()
}
