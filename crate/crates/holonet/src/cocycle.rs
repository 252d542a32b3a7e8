//! Unitary 1-cocycles stored as connections on comparable pairs.
//!
//! A cocycle keeps one unitary `u_{ã a}` per strictly comparable pair
//! `a < ã`, subject to the connection law `u_{s b}·u_{b a} = u_{s a}` on
//! chains. The value on a general 1-simplex `(s; f0, f1)` is
//! `u_{s f0}* · u_{s f1}`, and paths evaluate to ordered products. On top of
//! that sit coboundary detection, intertwiner spaces, unitary equivalence,
//! and direct sums.

use crate::homotopy::PathFrame;
use crate::linalg::{self, CMat};
use crate::poset::Poset;
use crate::simplicial::{sample_general, Path, Simplex1};
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Operator-norm tolerance for the connection law and unitarity.
pub const VALIDATION_TOL: f64 = 1e-9;
/// Looser tolerance for checks that cross module boundaries.
pub const CROSS_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct Cocycle {
    poset: Poset,
    dim: usize,
    values: BTreeMap<(usize, usize), CMat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub dim: usize,
    pub checked_pairs: usize,
    pub checked_chains: usize,
    pub checked_general: usize,
    pub max_unitarity_error: f64,
    pub max_deviation: f64,
    pub worst: Option<String>,
}

impl Cocycle {
    /// All values identity.
    pub fn trivial(p: &Poset, dim: usize) -> Result<Cocycle> {
        if dim == 0 {
            return Err(Error::bad("cocycle dimension must be at least 1"));
        }
        let values = p
            .strict_pairs()
            .into_iter()
            .map(|pair| (pair, linalg::identity(dim)))
            .collect();
        Ok(Cocycle {
            poset: p.clone(),
            dim,
            values,
        })
    }

    /// The coboundary of a family of unitaries: `u_{ã a} = v_ã* · v_a`.
    pub fn coboundary(p: &Poset, v: &[CMat]) -> Result<Cocycle> {
        if v.len() != p.len() {
            return Err(Error::bad("need one unitary per element"));
        }
        let dim = v.first().map_or(0, |m| m.nrows());
        if dim == 0 || v.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::bad("coboundary unitaries must be square, same size"));
        }
        let values = p
            .strict_pairs()
            .into_iter()
            .map(|(upper, lower)| ((upper, lower), v[upper].adjoint() * &v[lower]))
            .collect();
        Ok(Cocycle {
            poset: p.clone(),
            dim,
            values,
        })
    }

    /// Build from explicit per-pair values; every strictly comparable pair
    /// must be present, square, of one size, and unitary.
    pub fn from_values(p: &Poset, values: BTreeMap<(usize, usize), CMat>) -> Result<Cocycle> {
        let pairs = p.strict_pairs();
        if values.len() != pairs.len() || pairs.iter().any(|pair| !values.contains_key(pair)) {
            return Err(Error::bad(
                "cocycle must assign a value to exactly the strictly comparable pairs",
            ));
        }
        let dim = values.values().next().map_or(0, |m| m.nrows());
        if dim == 0 {
            return Err(Error::bad("cocycle dimension must be at least 1"));
        }
        for (&(upper, lower), m) in &values {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::bad("all cocycle values must have one dimension"));
            }
            if linalg::unitarity_error(m) > VALIDATION_TOL {
                return Err(Error::InvalidCocycle(format!(
                    "value at ({}, {}) is not unitary",
                    p.label(upper),
                    p.label(lower)
                )));
            }
        }
        Ok(Cocycle {
            poset: p.clone(),
            dim,
            values,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn same_poset(&self, other: &Cocycle) -> bool {
        self.poset == other.poset
    }

    /// The connection unitary `u_{ã a}` for `a ≤ ã`.
    pub fn connection(&self, upper: usize, lower: usize) -> Result<CMat> {
        if upper == lower && upper < self.poset.len() {
            return Ok(linalg::identity(self.dim));
        }
        self.values
            .get(&(upper, lower))
            .cloned()
            .ok_or_else(|| Error::bad("connection asked for an incomparable pair"))
    }

    /// Value on a general 1-simplex: `z(b) = u_{|b| ∂0b}* · u_{|b| ∂1b}`.
    pub fn value_of(&self, b: Simplex1) -> Result<CMat> {
        let left = self.connection(b.support(), b.face0())?;
        let right = self.connection(b.support(), b.face1())?;
        Ok(left.adjoint() * right)
    }

    /// Ordered product `z(b_n)···z(b_1)` over the path's steps.
    pub fn evaluate(&self, path: &Path) -> Result<CMat> {
        let mut acc = linalg::identity(self.dim);
        for &b in path.steps() {
            acc = self.value_of(b)? * acc;
        }
        Ok(acc)
    }

    /// Replace the value on one strictly comparable pair.
    pub fn with_value(&self, upper: usize, lower: usize, m: CMat) -> Result<Cocycle> {
        let mut values = self.values.clone();
        let Some(slot) = values.get_mut(&(upper, lower)) else {
            return Err(Error::bad("not a strictly comparable pair"));
        };
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::bad("replacement has the wrong dimension"));
        }
        *slot = m;
        Ok(Cocycle {
            poset: self.poset.clone(),
            dim: self.dim,
            values,
        })
    }

    /// Exhaustive connection-law check on all chains plus a seeded sample of
    /// general 2-simplices.
    pub fn validate(&self, samples: usize, seed: u64) -> ValidationReport {
        let p = &self.poset;
        let mut max_unit = 0.0f64;
        let mut max_dev = 0.0f64;
        let mut worst: Option<String> = None;
        for (&(upper, lower), m) in &self.values {
            let e = linalg::unitarity_error(m);
            if e > max_unit {
                max_unit = e;
                if e > VALIDATION_TOL {
                    worst = Some(format!(
                        "non-unitary value at ({}, {})",
                        p.label(upper),
                        p.label(lower)
                    ));
                }
            }
        }
        let mut chains = 0;
        for s in p.elements() {
            for b in p.down_set(s) {
                if b == s {
                    continue;
                }
                for a in p.down_set(b) {
                    if a == b {
                        continue;
                    }
                    chains += 1;
                    let lhs = self.values[&(s, b)].clone() * &self.values[&(b, a)];
                    let dev = linalg::op_dist(&lhs, &self.values[&(s, a)]);
                    if dev > max_dev {
                        max_dev = dev;
                        if dev > VALIDATION_TOL {
                            worst = Some(format!(
                                "chain {} ≤ {} ≤ {}",
                                p.label(a),
                                p.label(b),
                                p.label(s)
                            ));
                        }
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut general = 0;
        for _ in 0..samples {
            let c = sample_general(p, &mut rng);
            general += 1;
            let lhs = self.value_of(c.d0()).unwrap() * self.value_of(c.d2()).unwrap();
            let rhs = self.value_of(c.d1()).unwrap();
            let dev = linalg::op_dist(&lhs, &rhs);
            if dev > max_dev {
                max_dev = dev;
                if dev > VALIDATION_TOL {
                    worst = Some(format!(
                        "general 2-simplex over {}",
                        p.label(c.support())
                    ));
                }
            }
        }
        ValidationReport {
            valid: max_unit <= VALIDATION_TOL && max_dev <= VALIDATION_TOL,
            dim: self.dim,
            checked_pairs: self.values.len(),
            checked_chains: chains,
            checked_general: general,
            max_unitarity_error: max_unit,
            max_deviation: max_dev,
            worst,
        }
    }

    /// Coboundary witness `v` with `u_{ã a} = v_ã* · v_a` on all stored
    /// pairs, if one exists; `v_a = z(p_(a,o))*` up to a global unitary.
    pub fn is_coboundary(&self, frame: &PathFrame) -> Option<Vec<CMat>> {
        let v: Vec<CMat> = self
            .poset
            .elements()
            .map(|a| self.evaluate(frame.path_to(a)).unwrap().adjoint())
            .collect();
        for (&(upper, lower), m) in &self.values {
            let candidate = v[upper].adjoint() * &v[lower];
            if linalg::op_dist(&candidate, m) > CROSS_TOL {
                return None;
            }
        }
        Some(v)
    }

    /// Block-diagonal sum on the same poset.
    pub fn direct_sum(&self, other: &Cocycle) -> Result<Cocycle> {
        if !self.same_poset(other) {
            return Err(Error::bad("direct sum needs a common poset"));
        }
        let values = self
            .values
            .iter()
            .map(|(pair, m)| (*pair, linalg::block_diag(m, &other.values[pair])))
            .collect();
        Ok(Cocycle {
            poset: self.poset.clone(),
            dim: self.dim + other.dim,
            values,
        })
    }

    /// Conjugate every value by a per-element family:
    /// `u'_{ã a} = v_ã* · u_{ã a} · v_a`.
    pub fn gauge_twist(&self, v: &[CMat]) -> Result<Cocycle> {
        if v.len() != self.poset.len() {
            return Err(Error::bad("need one unitary per element"));
        }
        if v.iter().any(|m| m.nrows() != self.dim || m.ncols() != self.dim) {
            return Err(Error::bad("gauge family must match the cocycle dimension"));
        }
        let values = self
            .values
            .iter()
            .map(|(&(upper, lower), m)| ((upper, lower), v[upper].adjoint() * m * &v[lower]))
            .collect();
        Cocycle::from_values(&self.poset, values)
    }

    /// Gauge twist by a seeded family of random unitaries.
    pub fn random_gauge_twist(&self, seed: u64) -> Cocycle {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<CMat> = self
            .poset
            .elements()
            .map(|_| linalg::random_unitary(self.dim, &mut rng))
            .collect();
        self.gauge_twist(&v).expect("unitary twists preserve validity")
    }

    /// `{ "dim": d, "values": { "ã,a": [[[re,im],…]…] } }` with pairs keyed
    /// by element index.
    pub fn to_value(&self) -> serde_json::Value {
        let values: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .map(|(&(u, l), m)| (format!("{u},{l}"), linalg::mat_to_value(m)))
            .collect();
        serde_json::json!({ "dim": self.dim, "values": values })
    }

    pub fn from_value(p: &Poset, v: &serde_json::Value) -> Result<Cocycle> {
        let dim = v
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::bad("cocycle JSON needs a \"dim\" field"))? as usize;
        let map = v
            .get("values")
            .and_then(|m| m.as_object())
            .ok_or_else(|| Error::bad("cocycle JSON needs a \"values\" object"))?;
        let mut values = BTreeMap::new();
        for (key, mat) in map {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| Error::bad("pair keys look like \"upper,lower\""))?;
            let upper: usize = a.trim().parse().map_err(|_| Error::bad("bad pair index"))?;
            let lower: usize = b.trim().parse().map_err(|_| Error::bad("bad pair index"))?;
            let m = linalg::mat_from_value(mat)?;
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::bad("matrix does not match declared dimension"));
            }
            values.insert((upper, lower), m);
        }
        Cocycle::from_values(p, values)
    }
}

// ------------------------------------------------------------ intertwiners

/// Solutions of `t_{∂0b} z(b) = z2(b) t_{∂1b}`, found by solving the loop
/// constraints at the pole and propagating along frame paths.
#[derive(Clone, Debug)]
pub struct IntertwinerSpace {
    source_dim: usize,
    target_dim: usize,
    basis: Vec<Vec<CMat>>,
}

impl IntertwinerSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// `t_a` of the `k`-th basis intertwiner.
    pub fn basis_at(&self, k: usize, a: usize) -> &CMat {
        &self.basis[k][a]
    }

    pub fn pole_matrices(&self, pole: usize) -> Vec<CMat> {
        self.basis.iter().map(|fam| fam[pole].clone()).collect()
    }
}

/// Basis of the intertwiner space from `z` to `z2` over a common frame.
pub fn intertwiner_space(z: &Cocycle, z2: &Cocycle, frame: &PathFrame) -> Result<IntertwinerSpace> {
    if !z.same_poset(z2) {
        return Err(Error::bad("intertwiners need a common poset"));
    }
    let p = z.poset();
    let (d1, d2) = (z.dim(), z2.dim());
    let off = frame.off_tree_pairs(p);
    let mut blocks: Vec<CMat> = Vec::with_capacity(off.len());
    for &(upper, lower) in &off {
        let b = Simplex1::inclusion(p, upper, lower)?;
        let lz = z.evaluate(&frame.loop_generator(b))?;
        let lz2 = z2.evaluate(&frame.loop_generator(b))?;
        blocks.push(linalg::sylvester_op(&lz, &lz2));
    }
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut stacked = CMat::zeros(rows, d1 * d2);
    let mut at = 0;
    for b in &blocks {
        stacked.view_mut((at, 0), (b.nrows(), b.ncols())).copy_from(b);
        at += b.nrows();
    }
    let kernel = linalg::kernel_basis(&stacked, 1e-7);
    let mut basis = Vec::with_capacity(kernel.len());
    for t0 in kernel {
        let at_pole = linalg::unvec(&t0, d2, d1);
        let family: Vec<CMat> = p
            .elements()
            .map(|a| {
                let q = frame.path_to(a);
                z2.evaluate(q).unwrap() * &at_pole * z.evaluate(q).unwrap().adjoint()
            })
            .collect();
        basis.push(family);
    }
    Ok(IntertwinerSpace {
        source_dim: d1,
        target_dim: d2,
        basis,
    })
}

/// Largest deviation of `t_{∂0b} z(b) − z2(b) t_{∂1b}` over the inclusion
/// 1-simplices of all strictly comparable pairs.
pub fn intertwining_residual(z: &Cocycle, z2: &Cocycle, family: &[CMat]) -> f64 {
    let p = z.poset();
    p.strict_pairs()
        .into_iter()
        .map(|(upper, lower)| {
            let b = Simplex1::inclusion(p, upper, lower).unwrap();
            let lhs = &family[b.face0()] * z.value_of(b).unwrap();
            let rhs = z2.value_of(b).unwrap() * &family[b.face1()];
            linalg::op_dist(&lhs, &rhs)
        })
        .fold(0.0, f64::max)
}

pub fn intertwines(z: &Cocycle, z2: &Cocycle, family: &[CMat]) -> bool {
    intertwining_residual(z, z2, family) <= CROSS_TOL
}

/// Search the intertwiner space for a unitary arrow; `None` after the seeded
/// retries means no witness was found, not a proof of inequivalence.
pub fn equivalent(
    z: &Cocycle,
    z2: &Cocycle,
    frame: &PathFrame,
    seed: u64,
) -> Result<Option<Vec<CMat>>> {
    if z.dim() != z2.dim() {
        return Ok(None);
    }
    let space = intertwiner_space(z, z2, frame)?;
    if space.dimension() == 0 {
        return Ok(None);
    }
    let pole = frame.pole();
    let mut candidates: Vec<CMat> = space.pole_matrices(pole);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let mut c = CMat::zeros(z2.dim(), z.dim());
        for t0 in space.pole_matrices(pole) {
            c += t0 * linalg::random_complex_scalar(&mut rng);
        }
        candidates.push(c);
    }
    for c in candidates {
        let w = linalg::polar_unitary(&c);
        if linalg::unitarity_error(&w) > CROSS_TOL {
            continue;
        }
        let family: Vec<CMat> = z
            .poset()
            .elements()
            .map(|a| {
                let q = frame.path_to(a);
                z2.evaluate(q).unwrap() * &w * z.evaluate(q).unwrap().adjoint()
            })
            .collect();
        if intertwines(z, z2, &family) {
            return Ok(Some(family));
        }
    }
    Ok(None)
}
