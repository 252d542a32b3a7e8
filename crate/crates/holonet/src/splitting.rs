//! Charge/topological splitting of a cocycle relative to a path frame.
//!
//! Relative to a frame with pole `o`, every cocycle factors into a charge
//! component `ẑ(b) = z(p_(∂0b,o) * p̄_(∂1b,o))` — always a coboundary — and a
//! topological component `χ_z(b) = z(p̄_(∂0b,o) * b * p_(∂1b,o))`, whose
//! values are loop holonomies at the pole. The join glues a topological
//! cocycle `φ` onto a topologically trivial `z`, and `z = χ_z ⋈ ẑ` recovers
//! the original. The embedding `ϱ_a(X) = z(p_(a,o)) X z(p_(a,o))*` transports
//! holonomy-algebra elements to intertwiners.

use crate::cocycle::{intertwiner_space, Cocycle, CROSS_TOL};
use crate::holonomy;
use crate::homotopy::PathFrame;
use crate::linalg::{self, CMat};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// The topological component: a cocycle whose values are holonomies at the
/// frame pole.
#[derive(Clone, Debug)]
pub struct TopologicalComponent {
    pole: usize,
    cocycle: Cocycle,
}

impl TopologicalComponent {
    pub fn pole(&self) -> usize {
        self.pole
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn into_cocycle(self) -> Cocycle {
        self.cocycle
    }
}

/// `ẑ` with `u_{ã a} = z(p_(ã,o)) · z(p_(a,o))*`; a coboundary by
/// construction, with witness `v_a = z(p_(a,o))*`.
pub fn charge_component(z: &Cocycle, f: &PathFrame) -> Cocycle {
    let p = z.poset();
    let transports: Vec<CMat> = p
        .elements()
        .map(|a| z.evaluate(f.path_to(a)).unwrap())
        .collect();
    let values: BTreeMap<(usize, usize), CMat> = p
        .strict_pairs()
        .into_iter()
        .map(|(upper, lower)| {
            (
                (upper, lower),
                &transports[upper] * transports[lower].adjoint(),
            )
        })
        .collect();
    Cocycle::from_values(p, values).expect("products of unitaries stay unitary")
}

/// `χ_z` with `u_{ã a} = z(p_(ã,o))* · u^z_{ã a} · z(p_(a,o))`.
pub fn topological_component(z: &Cocycle, f: &PathFrame) -> TopologicalComponent {
    let p = z.poset();
    let transports: Vec<CMat> = p
        .elements()
        .map(|a| z.evaluate(f.path_to(a)).unwrap())
        .collect();
    let values: BTreeMap<(usize, usize), CMat> = p
        .strict_pairs()
        .into_iter()
        .map(|(upper, lower)| {
            let u = z.connection(upper, lower).unwrap();
            (
                (upper, lower),
                transports[upper].adjoint() * u * &transports[lower],
            )
        })
        .collect();
    TopologicalComponent {
        pole: f.pole(),
        cocycle: Cocycle::from_values(p, values).expect("conjugates of unitaries stay unitary"),
    }
}

/// `(φ ⋈ z)(b) = z(b) · z(p_(∂1b,o)) · φ(b) · z(p_(∂1b,o))*`.
///
/// Needs `z` topologically trivial and every value of `φ` inside the pole
/// algebra `(z,z)_o`.
pub fn join(phi: &Cocycle, z: &Cocycle, f: &PathFrame) -> Result<Cocycle> {
    if !phi.same_poset(z) {
        return Err(Error::bad("join needs a common poset"));
    }
    if phi.dim() != z.dim() {
        return Err(Error::bad("join needs equal dimensions"));
    }
    if z.is_coboundary(f).is_none() {
        return Err(Error::pre("join: z must be topologically trivial"));
    }
    let space = intertwiner_space(z, z, f)?;
    let pole_algebra = space.pole_matrices(f.pole());
    let basis = linalg::gram_schmidt(&pole_algebra, 1e-9);
    let p = z.poset();
    for (upper, lower) in p.strict_pairs() {
        let residual = linalg::projection_residual(&phi.connection(upper, lower)?, &basis);
        if residual > CROSS_TOL {
            return Err(Error::pre(format!(
                "join: φ({}, {}) lies outside (z,z) at the pole (residual {residual:.2e})",
                p.label(upper),
                p.label(lower)
            )));
        }
    }
    let transports: Vec<CMat> = p
        .elements()
        .map(|a| z.evaluate(f.path_to(a)).unwrap())
        .collect();
    let values: BTreeMap<(usize, usize), CMat> = p
        .strict_pairs()
        .into_iter()
        .map(|(upper, lower)| {
            let u = z.connection(upper, lower).unwrap();
            let phi_u = phi.connection(upper, lower).unwrap();
            (
                (upper, lower),
                u * &transports[lower] * phi_u * transports[lower].adjoint(),
            )
        })
        .collect();
    Cocycle::from_values(p, values)
}

/// Max operator-norm deviation of `χ_z ⋈ ẑ` from `z` over all stored pairs.
pub fn split_join_roundtrip(z: &Cocycle, f: &PathFrame) -> Result<f64> {
    let charge = charge_component(z, f);
    let topo = topological_component(z, f);
    let glued = join(topo.cocycle(), &charge, f)?;
    let p = z.poset();
    let mut worst = 0.0f64;
    for (upper, lower) in p.strict_pairs() {
        let dev = linalg::op_dist(
            &glued.connection(upper, lower)?,
            &z.connection(upper, lower)?,
        );
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// `ϱ_a(X) = z(p_(a,o)) · X · z(p_(a,o))*` for `X` in the holonomy algebra
/// at the pole.
pub fn embed_rho(z: &Cocycle, f: &PathFrame, x: &CMat) -> Result<Vec<CMat>> {
    if x.nrows() != z.dim() || x.ncols() != z.dim() {
        return Err(Error::bad("embed: matrix dimension mismatch"));
    }
    let algebra = holonomy::holonomy_algebra(z, f)?;
    if !algebra.contains(x) {
        return Err(Error::pre(
            "embed: matrix lies outside the holonomy algebra at the pole",
        ));
    }
    Ok(z.poset()
        .elements()
        .map(|a| {
            let t = z.evaluate(f.path_to(a)).unwrap();
            &t * x * t.adjoint()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::PathFrame;
    use crate::linalg::{op_dist, random_unitary, C64};
    use crate::poset::{build_circle_poset, Poset};
    use crate::simplicial::Simplex1;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn phase_cocycle(p: &Poset, frame: &PathFrame, theta: f64) -> Cocycle {
        let pres = crate::homotopy::presentation(p, frame);
        let images = vec![CMat::from_element(1, 1, C64::from_polar(1.0, theta)); pres.generators.len()];
        let sigma = holonomy::induce_images(&pres, &images).unwrap();
        holonomy::from_rep(p, frame, &sigma).unwrap()
    }

    fn gauge_twist(z: &Cocycle, seed: u64) -> Cocycle {
        z.random_gauge_twist(seed)
    }

    #[test]
    fn trivial_cocycle_splits_trivially() {
        let p = build_circle_poset(6, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let z = Cocycle::trivial(&p, 2).unwrap();
        let charge = charge_component(&z, &f);
        let topo = topological_component(&z, &f);
        for (u, l) in p.strict_pairs() {
            assert!(op_dist(&charge.connection(u, l).unwrap(), &linalg::identity(2)) < 1e-14);
            assert!(op_dist(&topo.cocycle().connection(u, l).unwrap(), &linalg::identity(2)) < 1e-14);
        }
    }

    #[test]
    fn charge_component_is_always_a_coboundary() {
        let p = build_circle_poset(6, 4).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let z = gauge_twist(&phase_cocycle(&p, &f, 1.3), 9);
        assert!(z.validate(60, 2).valid);
        let charge = charge_component(&z, &f);
        assert!(charge.validate(60, 2).valid);
        assert!(charge.is_coboundary(&f).is_some());
    }

    #[test]
    fn loop_equality_at_the_pole() {
        let p = build_circle_poset(6, 4).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let z = gauge_twist(&phase_cocycle(&p, &f, 0.8), 21);
        let topo = topological_component(&z, &f);
        for (upper, lower) in f.off_tree_pairs(&p) {
            let lp = f.loop_generator(Simplex1::inclusion(&p, upper, lower).unwrap());
            let via_topo = topo.cocycle().evaluate(&lp).unwrap();
            let via_z = z.evaluate(&lp).unwrap();
            assert!(op_dist(&via_topo, &via_z) < 1e-10);
        }
    }

    #[test]
    fn join_with_trivial_topological_part_echoes_z() {
        let p = build_circle_poset(4, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v: Vec<CMat> = p.elements().map(|_| random_unitary(2, &mut rng)).collect();
        let z = Cocycle::coboundary(&p, &v).unwrap();
        let phi = Cocycle::trivial(&p, 2).unwrap();
        let glued = join(&phi, &z, &f).unwrap();
        for (u, l) in p.strict_pairs() {
            assert!(op_dist(&glued.connection(u, l).unwrap(), &z.connection(u, l).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn join_refuses_topologically_nontrivial_charge() {
        let p = build_circle_poset(4, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let z = phase_cocycle(&p, &f, 2.0);
        let phi = Cocycle::trivial(&p, 1).unwrap();
        match join(&phi, &z, &f) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn roundtrip_is_tight_on_random_cocycles() {
        let p = build_circle_poset(6, 4).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        for seed in 0..5 {
            let z = gauge_twist(&phase_cocycle(&p, &f, 0.4 + seed as f64), seed);
            let dev = split_join_roundtrip(&z, &f).unwrap();
            assert!(dev < 1e-12, "roundtrip deviation {dev}");
        }
    }

    #[test]
    fn join_is_frame_independent_given_the_pole() {
        let p = build_circle_poset(6, 2).unwrap();
        let fa = PathFrame::build(&p, 0).unwrap();
        let fb = PathFrame::build_depth_first(&p, 0).unwrap();
        assert_ne!(fa.tree_edges(), fb.tree_edges());
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let v: Vec<CMat> = p.elements().map(|_| random_unitary(1, &mut rng)).collect();
        let z = Cocycle::coboundary(&p, &v).unwrap();
        let phi = topological_component(&phase_cocycle(&p, &fa, 1.1), &fa).into_cocycle();
        let ja = join(&phi, &z, &fa).unwrap();
        let jb = join(&phi, &z, &fb).unwrap();
        for (u, l) in p.strict_pairs() {
            assert!(op_dist(&ja.connection(u, l).unwrap(), &jb.connection(u, l).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn charge_components_of_two_frames_are_equivalent() {
        let p = build_circle_poset(6, 2).unwrap();
        let fa = PathFrame::build(&p, 0).unwrap();
        let fb = PathFrame::build_depth_first(&p, 0).unwrap();
        let z = gauge_twist(&phase_cocycle(&p, &fa, 0.9), 31);
        let ca = charge_component(&z, &fa);
        let cb = charge_component(&z, &fb);
        let s: Vec<CMat> = p
            .elements()
            .map(|a| {
                let q = fa.path_to(a).reverse().then(fb.path_to(a)).unwrap();
                z.evaluate(&q).unwrap()
            })
            .collect();
        for (upper, lower) in p.strict_pairs() {
            let b = Simplex1::inclusion(&p, upper, lower).unwrap();
            let lhs = &s[b.face0()] * ca.value_of(b).unwrap();
            let rhs = cb.value_of(b).unwrap() * &s[b.face1()];
            assert!(op_dist(&lhs, &rhs) < 1e-9);
        }
    }

    #[test]
    fn abelian_case_factors_entrywise() {
        let p = build_circle_poset(6, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let z = gauge_twist(&phase_cocycle(&p, &f, 2.2), 17);
        let charge = charge_component(&z, &f);
        let topo = topological_component(&z, &f);
        for (u, l) in p.strict_pairs() {
            let prod = topo.cocycle().connection(u, l).unwrap() * charge.connection(u, l).unwrap();
            assert!(op_dist(&prod, &z.connection(u, l).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn embedding_fixes_the_pole_and_intertwines() {
        let p = build_circle_poset(6, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let z = gauge_twist(&phase_cocycle(&p, &f, 1.7), 3);
        let off = f.off_tree_pairs(&p)[0];
        let lp = f.loop_generator(Simplex1::inclusion(&p, off.0, off.1).unwrap());
        let x = z.evaluate(&lp).unwrap();
        let rho = embed_rho(&z, &f, &x).unwrap();
        assert!(op_dist(&rho[f.pole()], &x) < 1e-12);
        let charge = charge_component(&z, &f);
        for (upper, lower) in p.strict_pairs() {
            let b = Simplex1::inclusion(&p, upper, lower).unwrap();
            let lhs = &rho[b.face0()] * charge.value_of(b).unwrap();
            let rhs = charge.value_of(b).unwrap() * &rho[b.face1()];
            assert!(op_dist(&lhs, &rhs) < 1e-9);
        }
        // scalar holonomy is central, so ϱ(x) intertwines z itself
        for (upper, lower) in p.strict_pairs() {
            let b = Simplex1::inclusion(&p, upper, lower).unwrap();
            let lhs = &rho[b.face0()] * z.value_of(b).unwrap();
            let rhs = z.value_of(b).unwrap() * &rho[b.face1()];
            assert!(op_dist(&lhs, &rhs) < 1e-9);
        }
        let outside = CMat::from_fn(1, 1, |_, _| C64::new(3.0, 0.0));
        assert!(embed_rho(&z, &f, &outside).is_ok());
        let wrong_dim = linalg::identity(2);
        assert!(embed_rho(&z, &f, &wrong_dim).is_err());
    }

    #[test]
    fn joinability_accepts_any_phase_against_a_trivial_charge() {
        let p = build_circle_poset(4, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let z = Cocycle::trivial(&p, 1).unwrap();
        let phi = phase_cocycle(&p, &f, 0.5);
        let glued = join(&phi, &z, &f).unwrap();
        assert!(glued.validate(20, 1).valid);
        assert!(join(&phi, &Cocycle::trivial(&p, 2).unwrap(), &f).is_err());
    }
}
