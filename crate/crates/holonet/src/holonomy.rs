//! Holonomy of a cocycle at a frame pole and the algebra it generates.
//!
//! Evaluating a cocycle on the loop generators of a path frame yields one
//! unitary per off-tree comparable pair — a representation of the
//! fundamental group. This module closes those matrices into a *-algebra,
//! decides factoriality, extracts the topological dimension `τ = √dim`,
//! computes tracial characters of loop words, forms conjugates, and builds
//! cocycles from prescribed representations (`from_rep`) or from a
//! representation plus a charge cocycle (`connect_charge`).

use crate::cocycle::{Cocycle, CROSS_TOL, VALIDATION_TOL};
use crate::homotopy::{format_word, GroupPresentation, PathFrame, Word};
use crate::linalg::{self, C64, CMat};
use crate::poset::Poset;
use crate::simplicial::{Path, Simplex1};
use crate::splitting;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Finite-dimensional *-algebra of `d × d` matrices given by an orthonormal
/// Hilbert–Schmidt basis, closed under products and adjoints.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    matrix_dim: usize,
    basis: Vec<CMat>,
    center: Vec<CMat>,
    is_factor: bool,
}

impl MatrixAlgebra {
    pub fn matrix_dim(&self) -> usize {
        self.matrix_dim
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    pub fn center_dim(&self) -> usize {
        self.center.len()
    }

    /// Orthonormal basis of the center `{X ∈ A : XY = YX for all Y ∈ A}`.
    pub fn center_basis(&self) -> &[CMat] {
        &self.center
    }

    pub fn is_factor(&self) -> bool {
        self.is_factor
    }

    pub fn contains(&self, x: &CMat) -> bool {
        x.nrows() == self.matrix_dim
            && x.ncols() == self.matrix_dim
            && linalg::projection_residual(x, &self.basis) <= CROSS_TOL
    }

    /// `τ = √dim` for a factor; errors on reducible topological content.
    pub fn topological_dimension(&self) -> Result<usize> {
        if !self.is_factor {
            return Err(Error::pre(format!(
                "topological dimension undefined: center has dimension {}",
                self.center.len()
            )));
        }
        let root = (self.basis.len() as f64).sqrt();
        let tau = root.round();
        if (root - tau).abs() >= 1e-6 {
            return Err(Error::pre("factor dimension is not a perfect square"));
        }
        Ok(tau as usize)
    }

    /// The tracial state `tr(X)/d` of a factor, defined on members.
    pub fn trace_state(&self, x: &CMat) -> Result<C64> {
        if !self.is_factor {
            return Err(Error::pre("tracial state needs a factor"));
        }
        if !self.contains(x) {
            return Err(Error::pre("tracial state asked outside the algebra"));
        }
        Ok(x.trace() / C64::new(self.matrix_dim as f64, 0.0))
    }
}

/// Close a generating set under adjoints and products into a *-algebra with
/// identity.
pub fn generated_algebra(matrix_dim: usize, generators: &[CMat]) -> Result<MatrixAlgebra> {
    if matrix_dim == 0 {
        return Err(Error::bad("algebra needs matrices of dimension at least 1"));
    }
    for g in generators {
        if g.nrows() != matrix_dim || g.ncols() != matrix_dim {
            return Err(Error::bad("algebra generators must be square, one size"));
        }
    }
    let mut seed: Vec<CMat> = vec![linalg::identity(matrix_dim)];
    for g in generators {
        seed.push(g.clone());
        seed.push(g.adjoint());
    }
    let mut basis = linalg::gram_schmidt(&seed, 1e-9);
    loop {
        let mut extended = basis.clone();
        for a in &basis {
            for b in &basis {
                extended.push(a * b);
            }
        }
        let closed = linalg::gram_schmidt(&extended, 1e-9);
        if closed.len() == basis.len() {
            break;
        }
        basis = closed;
    }
    let m = basis.len();
    let d2 = matrix_dim * matrix_dim;
    let mut commutation = CMat::zeros(m * d2, m);
    for (k, bk) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let c = bk * bj - bj * bk;
            for (idx, val) in c.iter().enumerate() {
                commutation[(j * d2 + idx, k)] = *val;
            }
        }
    }
    let center: Vec<CMat> = linalg::kernel_basis(&commutation, 1e-7)
        .iter()
        .map(|v| {
            let mut x = CMat::zeros(matrix_dim, matrix_dim);
            for (j, bj) in basis.iter().enumerate() {
                x += bj * v[j];
            }
            x
        })
        .collect();
    let is_factor = center.len() == 1;
    Ok(MatrixAlgebra {
        matrix_dim,
        basis,
        center,
        is_factor,
    })
}

/// Dimension of the commutant `{X : XA = AX for all generators A}` in the
/// full matrix algebra.
pub fn commutant_dimension(matrix_dim: usize, generators: &[CMat]) -> usize {
    if generators.is_empty() {
        return matrix_dim * matrix_dim;
    }
    let blocks: Vec<CMat> = generators
        .iter()
        .map(|g| linalg::sylvester_op(g, g))
        .collect();
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut stacked = CMat::zeros(rows, matrix_dim * matrix_dim);
    let mut at = 0;
    for b in &blocks {
        stacked.view_mut((at, 0), (b.nrows(), b.ncols())).copy_from(b);
        at += b.nrows();
    }
    linalg::kernel_basis(&stacked, 1e-7).len()
}

/// One holonomy unitary per off-tree comparable pair.
pub fn holonomy_matrices(z: &Cocycle, f: &PathFrame) -> Result<BTreeMap<(usize, usize), CMat>> {
    let p = z.poset();
    let mut out = BTreeMap::new();
    for (upper, lower) in f.off_tree_pairs(p) {
        let b = Simplex1::inclusion(p, upper, lower)?;
        out.insert((upper, lower), z.evaluate(&f.loop_generator(b))?);
    }
    Ok(out)
}

/// The *-algebra generated by all loop holonomies at the pole.
pub fn holonomy_algebra(z: &Cocycle, f: &PathFrame) -> Result<MatrixAlgebra> {
    let mats: Vec<CMat> = holonomy_matrices(z, f)?.into_values().collect();
    generated_algebra(z.dim(), &mats)
}

/// Topological dimension of the cocycle's holonomy factor.
pub fn topological_dimension(z: &Cocycle, f: &PathFrame) -> Result<usize> {
    holonomy_algebra(z, f)?.topological_dimension()
}

/// Tracial character of a loop class: `trace_state(z(ℓ))`.
pub fn character(z: &Cocycle, f: &PathFrame, lp: &Path) -> Result<C64> {
    if !lp.is_loop_at(f.pole()) {
        return Err(Error::bad("character needs a loop based at the pole"));
    }
    let algebra = holonomy_algebra(z, f)?;
    algebra.trace_state(&z.evaluate(lp)?)
}

/// Entrywise complex conjugate of every value.
pub fn conjugate_cocycle(z: &Cocycle) -> Cocycle {
    let p = z.poset();
    let values = p
        .strict_pairs()
        .into_iter()
        .map(|(upper, lower)| {
            let u = z.connection(upper, lower).unwrap();
            ((upper, lower), linalg::conjugate_entrywise(&u))
        })
        .collect();
    Cocycle::from_values(p, values).expect("conjugates of unitaries stay unitary")
}

/// Cocycle with identity on tree pairs and `σ` on off-tree pairs; `σ` must
/// satisfy every chain relation.
pub fn from_rep(
    p: &Poset,
    f: &PathFrame,
    sigma: &BTreeMap<(usize, usize), CMat>,
) -> Result<Cocycle> {
    let off = f.off_tree_pairs(p);
    if sigma.len() != off.len() || off.iter().any(|pair| !sigma.contains_key(pair)) {
        return Err(Error::bad(
            "representation must cover exactly the off-tree comparable pairs",
        ));
    }
    let dim = sigma.values().next().map_or(1, |m| m.nrows());
    for m in sigma.values() {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::bad("representation matrices must share one size"));
        }
        if linalg::unitarity_error(m) > VALIDATION_TOL {
            return Err(Error::bad("representation matrices must be unitary"));
        }
    }
    let value = |upper: usize, lower: usize| -> CMat {
        sigma
            .get(&(upper, lower))
            .cloned()
            .unwrap_or_else(|| linalg::identity(dim))
    };
    for s in p.elements() {
        for b in p.down_set(s) {
            if b == s {
                continue;
            }
            for a in p.down_set(b) {
                if a == b {
                    continue;
                }
                let lhs = value(s, b) * value(b, a);
                if linalg::op_dist(&lhs, &value(s, a)) > CROSS_TOL {
                    return Err(Error::pre(format!(
                        "representation violates the relation of the chain {} ≤ {} ≤ {}",
                        p.label(a),
                        p.label(b),
                        p.label(s)
                    )));
                }
            }
        }
    }
    let values = p
        .strict_pairs()
        .into_iter()
        .map(|(upper, lower)| ((upper, lower), value(upper, lower)))
        .collect();
    Cocycle::from_values(p, values)
}

/// Extend images of the surviving presentation generators to all off-tree
/// pairs through their expressed words.
pub fn induce_images(
    pres: &GroupPresentation,
    images: &[CMat],
) -> Result<BTreeMap<(usize, usize), CMat>> {
    if images.len() != pres.generators.len() {
        return Err(Error::bad(format!(
            "need exactly {} images, one per surviving generator",
            pres.generators.len()
        )));
    }
    let dim = images.first().map_or(1, |m| m.nrows());
    for m in images {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::bad("images must be square, one size"));
        }
        if linalg::unitarity_error(m) > VALIDATION_TOL {
            return Err(Error::bad("images must be unitary"));
        }
    }
    let eval = |w: &Word| -> CMat {
        let mut acc = linalg::identity(dim);
        for &(g, e) in w {
            let m = if e == 1 { images[g].clone() } else { images[g].adjoint() };
            acc *= m;
        }
        acc
    };
    for r in &pres.relations {
        if linalg::op_dist(&eval(r), &linalg::identity(dim)) > CROSS_TOL {
            return Err(Error::pre(format!(
                "images violate the relation {}",
                format_word(r)
            )));
        }
    }
    Ok(pres
        .expressed_pairs()
        .into_iter()
        .map(|pair| (pair, eval(&pres.word_for_pair(pair))))
        .collect())
}

/// Join the topological content of `z_sigma` onto `n` copies of the charge
/// cocycle `u`, where `n = dim(z_sigma)`.
pub fn connect_charge(z_sigma: &Cocycle, u: &Cocycle, f: &PathFrame) -> Result<Cocycle> {
    if !z_sigma.same_poset(u) {
        return Err(Error::bad("connect needs a common poset"));
    }
    let n = z_sigma.dim();
    let mut charge = u.clone();
    for _ in 1..n {
        charge = charge.direct_sum(u)?;
    }
    let topo = splitting::topological_component(z_sigma, f);
    let p = z_sigma.poset();
    let amplified = p
        .strict_pairs()
        .into_iter()
        .map(|(upper, lower)| {
            let chi = topo.cocycle().connection(upper, lower).unwrap();
            ((upper, lower), linalg::amplify(&chi, u.dim()))
        })
        .collect();
    let phi = Cocycle::from_values(p, amplified)?;
    splitting::join(&phi, &charge, f)
}

// ----------------------------------------------------------------- report

/// Summary of a cocycle's holonomy content.
#[derive(Clone, Debug, Serialize)]
pub struct HolonomyReport {
    pub matrix_dim: usize,
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub factor: bool,
    pub tau: Option<usize>,
    pub generators: Vec<(usize, usize)>,
    pub characters: BTreeMap<String, (f64, f64)>,
}

/// Characters are tabulated over positive words in the surviving generators
/// up to `max_word_len`, plus the pairwise commutators; empty when the
/// holonomy is not a factor.
pub fn build_report(z: &Cocycle, f: &PathFrame, max_word_len: usize) -> Result<HolonomyReport> {
    let p = z.poset();
    let pres = crate::homotopy::presentation(p, f);
    let algebra = holonomy_algebra(z, f)?;
    let hol: Vec<CMat> = pres
        .generators
        .iter()
        .map(|&(upper, lower)| {
            let b = Simplex1::inclusion(p, upper, lower)?;
            z.evaluate(&f.loop_generator(b))
        })
        .collect::<Result<_>>()?;
    let mut characters = BTreeMap::new();
    if algebra.is_factor() {
        let k = hol.len();
        let mut words: Vec<Word> = vec![vec![]];
        let mut layer: Vec<Word> = vec![vec![]];
        for _ in 0..max_word_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..k {
                    let mut ww = w.clone();
                    ww.push((g, 1));
                    next.push(ww);
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
            if words.len() > 400 {
                break;
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                words.push(vec![(i, 1), (j, 1), (i, -1), (j, -1)]);
            }
        }
        for w in words {
            let mut m = linalg::identity(z.dim());
            for &(g, e) in &w {
                let h = if e == 1 { hol[g].clone() } else { hol[g].adjoint() };
                m *= h;
            }
            characters.insert(format_word(&w), complex_pair(algebra.trace_state(&m)?));
        }
    }
    Ok(HolonomyReport {
        matrix_dim: z.dim(),
        algebra_dim: algebra.dimension(),
        center_dim: algebra.center_dim(),
        factor: algebra.is_factor(),
        tau: algebra.topological_dimension().ok(),
        generators: pres.generators.clone(),
        characters,
    })
}

fn complex_pair(c: C64) -> (f64, f64) {
    (c.re, c.im)
}
