//! Connection data of unitary net representations.
//!
//! A net connection assigns a unitary `ψ_{a ã}` to every comparable pair
//! `ã ≤ a`, subject to the composition law `ψ_{a ã}·ψ_{ã â} = ψ_{a â}`. It
//! induces a cocycle `ζ(b) = ψ*_{|b| ∂0b}·ψ_{|b| ∂1b}`, trivializes exactly
//! when that cocycle is a coboundary, and the χ-twist builds topologically
//! nontrivial examples from scalar characters of the fundamental group.

use crate::cocycle::{Cocycle, CROSS_TOL, VALIDATION_TOL};
use crate::holonomy;
use crate::homotopy::PathFrame;
use crate::linalg::{self, C64, CMat};
use crate::poset::Poset;
use crate::{Error, Result};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct NetConnection {
    poset: Poset,
    dim: usize,
    psi: BTreeMap<(usize, usize), CMat>,
}

impl NetConnection {
    /// Build from per-pair unitaries; checks the composition law on all
    /// chains.
    pub fn new(p: &Poset, psi: BTreeMap<(usize, usize), CMat>) -> Result<NetConnection> {
        let pairs = p.strict_pairs();
        if psi.len() != pairs.len() || pairs.iter().any(|pair| !psi.contains_key(pair)) {
            return Err(Error::bad(
                "connection must assign a value to exactly the strictly comparable pairs",
            ));
        }
        let dim = psi.values().next().map_or(0, |m| m.nrows());
        if dim == 0 {
            return Err(Error::bad("connection dimension must be at least 1"));
        }
        for ((upper, lower), m) in &psi {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::bad("all connection values must have one dimension"));
            }
            if linalg::unitarity_error(m) > VALIDATION_TOL {
                return Err(Error::InvalidCocycle(format!(
                    "connection value at ({}, {}) is not unitary",
                    p.label(*upper),
                    p.label(*lower)
                )));
            }
        }
        for s in p.elements() {
            for b in p.down_set(s) {
                if b == s {
                    continue;
                }
                for a in p.down_set(b) {
                    if a == b {
                        continue;
                    }
                    let lhs = psi[&(s, b)].clone() * &psi[&(b, a)];
                    if linalg::op_dist(&lhs, &psi[&(s, a)]) > VALIDATION_TOL {
                        return Err(Error::InvalidCocycle(format!(
                            "connection breaks composition on the chain {} ≤ {} ≤ {}",
                            p.label(a),
                            p.label(b),
                            p.label(s)
                        )));
                    }
                }
            }
        }
        Ok(NetConnection {
            poset: p.clone(),
            dim,
            psi,
        })
    }

    pub fn identity(p: &Poset, dim: usize) -> Result<NetConnection> {
        if dim == 0 {
            return Err(Error::bad("connection dimension must be at least 1"));
        }
        let psi = p
            .strict_pairs()
            .into_iter()
            .map(|pair| (pair, linalg::identity(dim)))
            .collect();
        NetConnection::new(p, psi)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, upper: usize, lower: usize) -> Result<CMat> {
        if upper == lower && upper < self.poset.len() {
            return Ok(linalg::identity(self.dim));
        }
        self.psi
            .get(&(upper, lower))
            .cloned()
            .ok_or_else(|| Error::bad("connection asked for an incomparable pair"))
    }

    /// The induced cocycle, stored directly in connection form.
    pub fn induced_cocycle(&self) -> Cocycle {
        Cocycle::from_values(&self.poset, self.psi.clone())
            .expect("a valid connection is a valid cocycle")
    }

    /// Witness `W` with `W_a ψ_{a ã} = W_ã`, if the induced cocycle is a
    /// coboundary.
    pub fn trivialize(&self, f: &PathFrame) -> Option<Vec<CMat>> {
        let w = self.induced_cocycle().is_coboundary(f)?;
        for (&(upper, lower), psi) in &self.psi {
            if linalg::op_dist(&(&w[upper] * psi), &w[lower]) > CROSS_TOL {
                return None;
            }
        }
        Some(w)
    }

    /// The connection `T_a ψ_{a ã} T_ã*` conjugated by a unitary family.
    pub fn conjugated(&self, t: &[CMat]) -> Result<NetConnection> {
        if t.len() != self.poset.len() {
            return Err(Error::bad("need one unitary per element"));
        }
        let psi = self
            .psi
            .iter()
            .map(|(&(upper, lower), m)| ((upper, lower), &t[upper] * m * t[lower].adjoint()))
            .collect();
        NetConnection::new(&self.poset, psi)
    }

    pub fn to_value(&self) -> serde_json::Value {
        self.induced_cocycle().to_value()
    }

    pub fn from_value(p: &Poset, v: &serde_json::Value) -> Result<NetConnection> {
        let z = Cocycle::from_value(p, v)?;
        let psi = p
            .strict_pairs()
            .into_iter()
            .map(|(upper, lower)| ((upper, lower), z.connection(upper, lower).unwrap()))
            .collect();
        NetConnection::new(p, psi)
    }
}

/// Scalar connection `ψ^χ_{ã a} = χ(ã; ã, a)` from a character of the
/// fundamental group given on off-tree pairs.
pub fn chi_twist(
    p: &Poset,
    f: &PathFrame,
    chi: &BTreeMap<(usize, usize), C64>,
) -> Result<NetConnection> {
    for c in chi.values() {
        if (c.norm() - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::bad("χ must take unit-modulus values"));
        }
    }
    let sigma: BTreeMap<(usize, usize), CMat> = chi
        .iter()
        .map(|(&pair, &c)| (pair, CMat::from_element(1, 1, c)))
        .collect();
    let z = holonomy::from_rep(p, f, &sigma)?;
    let psi = p
        .strict_pairs()
        .into_iter()
        .map(|(upper, lower)| ((upper, lower), z.connection(upper, lower).unwrap()))
        .collect();
    NetConnection::new(p, psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::equivalent;
    use crate::linalg::{identity, op_dist, random_unitary};
    use crate::poset::{build_circle_poset, build_directed_interval_poset};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_chi(p: &Poset, f: &PathFrame, c: C64) -> BTreeMap<(usize, usize), C64> {
        f.off_tree_pairs(p).into_iter().map(|pair| (pair, c)).collect()
    }

    #[test]
    fn identity_connection_induces_the_trivial_cocycle() {
        let p = build_circle_poset(6, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let c = NetConnection::identity(&p, 2).unwrap();
        let z = c.induced_cocycle();
        assert!(z.validate(30, 1).valid);
        let w = c.trivialize(&f).expect("identity connection trivializes");
        for m in &w {
            assert!(op_dist(m, &w[0]) < 1e-12);
        }
    }

    #[test]
    fn composition_violations_are_rejected() {
        let p = build_directed_interval_poset(3).unwrap();
        let mut psi: BTreeMap<(usize, usize), CMat> = p
            .strict_pairs()
            .into_iter()
            .map(|pair| (pair, identity(1)))
            .collect();
        let s = p.index_of("[0,2]").unwrap();
        let a = p.index_of("[0,0]").unwrap();
        psi.insert((s, a), CMat::from_element(1, 1, C64::new(-1.0, 0.0)));
        match NetConnection::new(&p, psi) {
            Err(Error::InvalidCocycle(msg)) => assert!(msg.contains("chain")),
            other => panic!("expected invalid connection, got {other:?}"),
        }
    }

    #[test]
    fn connections_on_simply_connected_posets_trivialize() {
        let p = build_directed_interval_poset(4).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let w: Vec<CMat> = p.elements().map(|_| random_unitary(2, &mut rng)).collect();
        let psi = p
            .strict_pairs()
            .into_iter()
            .map(|(upper, lower)| ((upper, lower), w[upper].adjoint() * &w[lower]))
            .collect();
        let c = NetConnection::new(&p, psi).unwrap();
        let witness = c.trivialize(&f).expect("simply connected ⇒ trivializable");
        for (upper, lower) in p.strict_pairs() {
            let lhs = &witness[upper] * c.value(upper, lower).unwrap();
            assert!(op_dist(&lhs, &witness[lower]) < 1e-9);
        }
    }

    #[test]
    fn chi_twist_carries_its_holonomy() {
        let p = build_circle_poset(6, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let minus = C64::new(-1.0, 0.0);
        let c = chi_twist(&p, &f, &unit_chi(&p, &f, minus)).unwrap();
        let z = c.induced_cocycle();
        assert!(z.validate(30, 2).valid);
        let hol = holonomy::holonomy_matrices(&z, &f).unwrap();
        for (pair, m) in &hol {
            assert!(op_dist(m, &CMat::from_element(1, 1, minus)) < 1e-12, "{pair:?}");
        }
        assert!(c.trivialize(&f).is_none());

        let one = chi_twist(&p, &f, &unit_chi(&p, &f, C64::new(1.0, 0.0))).unwrap();
        for (upper, lower) in p.strict_pairs() {
            assert!(op_dist(&one.value(upper, lower).unwrap(), &identity(1)) < 1e-15);
        }
    }

    #[test]
    fn twists_multiply_pointwise() {
        let p = build_circle_poset(6, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let a = C64::from_polar(1.0, 0.9);
        let b = C64::from_polar(1.0, 1.7);
        let ta = chi_twist(&p, &f, &unit_chi(&p, &f, a)).unwrap();
        let tb = chi_twist(&p, &f, &unit_chi(&p, &f, b)).unwrap();
        let tab = chi_twist(&p, &f, &unit_chi(&p, &f, a * b)).unwrap();
        for (upper, lower) in p.strict_pairs() {
            let prod = ta.value(upper, lower).unwrap() * tb.value(upper, lower).unwrap();
            assert!(op_dist(&prod, &tab.value(upper, lower).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn conjugated_connections_induce_equivalent_cocycles() {
        let p = build_circle_poset(4, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let c = chi_twist(&p, &f, &unit_chi(&p, &f, C64::from_polar(1.0, 0.6))).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t: Vec<CMat> = p.elements().map(|_| random_unitary(1, &mut rng)).collect();
        let conj = c.conjugated(&t).unwrap();
        let z1 = c.induced_cocycle();
        let z2 = conj.induced_cocycle();
        let w = equivalent(&z1, &z2, &f, 3).unwrap().expect("conjugates are equivalent");
        for (upper, lower) in p.strict_pairs() {
            let b = crate::simplicial::Simplex1::inclusion(&p, upper, lower).unwrap();
            let lhs = &w[b.face0()] * z1.value_of(b).unwrap();
            let rhs = z2.value_of(b).unwrap() * &w[b.face1()];
            assert!(op_dist(&lhs, &rhs) < 1e-9);
        }
    }

    #[test]
    fn json_round_trip() {
        let p = build_circle_poset(4, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let c = chi_twist(&p, &f, &unit_chi(&p, &f, C64::from_polar(1.0, 2.1))).unwrap();
        let v = c.to_value();
        let back = NetConnection::from_value(&p, &v).unwrap();
        for (upper, lower) in p.strict_pairs() {
            assert!(
                op_dist(
                    &back.value(upper, lower).unwrap(),
                    &c.value(upper, lower).unwrap()
                ) < 1e-15
            );
        }
    }
}
