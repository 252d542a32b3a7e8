//! Bundled example models and the acceptance checks shared by the test
//! suite and the CLI `corpus` subcommand.
//!
//! The corpus holds a trivial cocycle, a scalar phase on the six-point
//! circle, the Pauli cocycle on the figure-eight, and twenty seeded random
//! cocycles spread over the bundled posets. Each `check_*` function runs one
//! acceptance criterion end to end and returns a verdict with a factual
//! summary line.

use crate::cocycle::{self, Cocycle};
use crate::holonomy;
use crate::homotopy::{self, ComplementSearch, HomotopyVerdict, PathFrame};
use crate::linalg::{self, C64, CMat};
use crate::net::NetConnection;
use crate::poset::{build_circle_poset, build_directed_interval_poset, Poset};
use crate::simplicial::{Path, Simplex1};
use crate::splitting;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;

// ------------------------------------------------------------------ models

/// Two four-point circles wedged at a shared unit arc; its fundamental group
/// is free on two generators.
pub fn figure_eight() -> Poset {
    let c = build_circle_poset(4, 2).unwrap();
    let x = c.index_of("arc(0,1)").unwrap();
    c.wedge(x, &c, x).unwrap()
}

pub fn pauli_x() -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        ],
    )
}

pub fn pauli_z() -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
        ],
    )
}

/// Scalar cocycle sending every surviving loop generator to `e^{iθ}`.
pub fn phase_cocycle(p: &Poset, f: &PathFrame, theta: f64) -> Result<Cocycle> {
    let pres = homotopy::presentation(p, f);
    let images =
        vec![CMat::from_element(1, 1, C64::from_polar(1.0, theta)); pres.generators.len()];
    let sigma = holonomy::induce_images(&pres, &images)?;
    holonomy::from_rep(p, f, &sigma)
}

/// The rank-two cocycle with loop images σ_x and σ_z; needs a poset whose
/// fundamental group presentation survives with exactly two generators.
pub fn pauli_cocycle(p: &Poset, f: &PathFrame) -> Result<Cocycle> {
    let pres = homotopy::presentation(p, f);
    if pres.generators.len() != 2 {
        return Err(Error::pre(format!(
            "Pauli cocycle needs two surviving generators, found {}",
            pres.generators.len()
        )));
    }
    let sigma = holonomy::induce_images(&pres, &[pauli_x(), pauli_z()])?;
    holonomy::from_rep(p, f, &sigma)
}

/// A seeded random valid cocycle: random unitary images of the surviving
/// generators pushed through the frame, then gauge-twisted by a random
/// unitary family.
pub fn random_cocycle(p: &Poset, f: &PathFrame, dim: usize, seed: u64) -> Result<Cocycle> {
    let pres = homotopy::presentation(p, f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images: Vec<CMat> = (0..pres.generators.len())
        .map(|_| linalg::random_unitary(dim, &mut rng))
        .collect();
    let base = if images.is_empty() {
        Cocycle::trivial(p, dim)?
    } else {
        let sigma = holonomy::induce_images(&pres, &images)?;
        holonomy::from_rep(p, f, &sigma)?
    };
    Ok(base.random_gauge_twist(rng.random()))
}

/// A named example cocycle together with the poset and frame it lives on.
pub struct CorpusEntry {
    pub name: String,
    pub poset: Poset,
    pub frame: PathFrame,
    pub cocycle: Cocycle,
}

/// The bundled corpus: one trivial cocycle, one scalar phase, the Pauli
/// cocycle on the figure-eight, and twenty seeded random cocycles of
/// dimension at most three spread over the bundled posets.
pub fn corpus(seed: u64) -> Vec<CorpusEntry> {
    let circle64 = build_circle_poset(6, 4).unwrap();
    let frame64 = PathFrame::build(&circle64, 0).unwrap();
    let eight = figure_eight();
    let frame8 = PathFrame::build(&eight, 0).unwrap();
    let mut entries = vec![
        CorpusEntry {
            name: "trivial".into(),
            cocycle: Cocycle::trivial(&circle64, 2).unwrap(),
            poset: circle64.clone(),
            frame: frame64.clone(),
        },
        CorpusEntry {
            name: "phase".into(),
            cocycle: phase_cocycle(&circle64, &frame64, TAU / 3.0).unwrap(),
            poset: circle64.clone(),
            frame: frame64,
        },
        CorpusEntry {
            name: "pauli-figure-eight".into(),
            cocycle: pauli_cocycle(&eight, &frame8).unwrap(),
            poset: eight.clone(),
            frame: frame8,
        },
    ];
    let models: Vec<(&str, Poset)> = vec![
        ("circle(6,4)", circle64),
        ("circle(4,2)", build_circle_poset(4, 2).unwrap()),
        ("figure-eight", eight),
        ("directed(5)", build_directed_interval_poset(5).unwrap()),
    ];
    for i in 0..20usize {
        let (model, p) = &models[i % models.len()];
        let f = PathFrame::build(p, 0).unwrap();
        let dim = 1 + i % 3;
        let z = random_cocycle(p, &f, dim, seed.wrapping_add(1000 + i as u64)).unwrap();
        entries.push(CorpusEntry {
            name: format!("random-{i:02}-{model}-d{dim}"),
            poset: p.clone(),
            frame: f,
            cocycle: z,
        });
    }
    entries
}

// ------------------------------------------------------------ random paths

fn random_walk_from(p: &Poset, start: usize, steps: usize, rng: &mut ChaCha8Rng) -> Path {
    let n = p.len();
    let mut at = start;
    let mut path = Path::degenerate(start);
    for _ in 0..steps {
        let nbrs: Vec<usize> = (0..n).filter(|&w| w != at && p.comparable(at, w)).collect();
        if nbrs.is_empty() {
            break;
        }
        let w = nbrs[rng.random_range(0..nbrs.len())];
        let step = if p.leq(at, w) {
            Simplex1::inclusion(p, w, at).unwrap()
        } else {
            Simplex1::inclusion(p, at, w).unwrap().reverse()
        };
        path = path.then_step(step).unwrap();
        at = w;
    }
    path
}

fn random_deformation_walk(p: &Poset, start: &Path, moves: usize, rng: &mut ChaCha8Rng) -> Path {
    let mut q = start.clone();
    for _ in 0..moves {
        let nbrs = homotopy::elementary_deformations(p, &q);
        if nbrs.is_empty() {
            break;
        }
        q = nbrs[rng.random_range(0..nbrs.len())].clone();
    }
    q
}

// -------------------------------------------------------------- the checks

/// Outcome of one acceptance check.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn run_check(
    id: usize,
    name: &str,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    let (passed, detail) = match body() {
        Ok(pair) => pair,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name: name.into(),
        passed,
        detail,
    }
}

/// Twenty seeded random cocycles on the six-point circle validate to 1e−9,
/// and fifty certified-homotopic path pairs on the four-point circle get
/// equal evaluations to 1e−8.
pub fn check_validation_and_homotopy(seed: u64) -> CriterionResult {
    run_check(1, "validation and homotopy invariance", || {
        let p = build_circle_poset(6, 4)?;
        let f = PathFrame::build(&p, 0)?;
        let mut max_dev = 0.0f64;
        for i in 0..20u64 {
            let dim = 1 + (i as usize) % 3;
            let z = random_cocycle(&p, &f, dim, seed.wrapping_add(i))?;
            let report = z.validate(40, seed.wrapping_add(900 + i));
            if !report.valid {
                return Ok((
                    false,
                    format!("cocycle {i} failed validation: {:?}", report.worst),
                ));
            }
            max_dev = max_dev
                .max(report.max_deviation)
                .max(report.max_unitarity_error);
        }
        if max_dev > 1e-9 {
            return Ok((false, format!("validation deviation {max_dev:.2e} > 1e-9")));
        }

        let p2 = build_circle_poset(4, 2)?;
        let f2 = PathFrame::build(&p2, 0)?;
        let witnesses: Vec<Cocycle> = (0..5usize)
            .map(|k| random_cocycle(&p2, &f2, 1 + k % 3, seed.wrapping_add(500 + k as u64)))
            .collect::<Result<_>>()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x00C0_FFEE);
        let mut max_gap = 0.0f64;
        for _ in 0..50 {
            let start = rng.random_range(0..p2.len());
            let q1 = random_walk_from(&p2, start, 1 + rng.random_range(0..4), &mut rng);
            let q2 = random_deformation_walk(&p2, &q1, 1 + rng.random_range(0..3), &mut rng);
            if homotopic_bfs_yes(&p2, &q1, &q2)? != HomotopyVerdict::Yes {
                return Ok((
                    false,
                    "search failed to certify a deformation-generated pair".into(),
                ));
            }
            for z in &witnesses {
                let gap = linalg::op_dist(&z.evaluate(&q1)?, &z.evaluate(&q2)?);
                max_gap = max_gap.max(gap);
            }
        }
        if max_gap > 1e-8 {
            return Ok((
                false,
                format!("homotopic evaluations differ by {max_gap:.2e} > 1e-8"),
            ));
        }
        Ok((
            true,
            format!(
                "20 random cocycles validated (worst deviation {max_dev:.1e}); \
                 50 certified homotopic pairs evaluate equally (worst gap {max_gap:.1e})"
            ),
        ))
    })
}

fn homotopic_bfs_yes(p: &Poset, q1: &Path, q2: &Path) -> Result<HomotopyVerdict> {
    homotopy::homotopic_bfs(p, q1, q2, 20_000)
}

/// On the directed interval poset every random cocycle is a coboundary and
/// every net connection trivializes.
pub fn check_simply_connected_trivial(seed: u64) -> CriterionResult {
    run_check(2, "simply connected models trivialize", || {
        let p = build_directed_interval_poset(5)?;
        let f = PathFrame::build(&p, 0)?;
        for i in 0..10u64 {
            let dim = 1 + (i as usize) % 3;
            let z = random_cocycle(&p, &f, dim, seed.wrapping_add(40 + i))?;
            if !z.validate(20, seed.wrapping_add(i)).valid {
                return Ok((false, format!("random cocycle {i} failed validation")));
            }
            if z.is_coboundary(&f).is_none() {
                return Ok((false, format!("random cocycle {i} is not a coboundary")));
            }
        }
        for i in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(7000 + i));
            let dim = 1 + (i as usize) % 3;
            let w: Vec<CMat> = p
                .elements()
                .map(|_| linalg::random_unitary(dim, &mut rng))
                .collect();
            let psi = p
                .strict_pairs()
                .into_iter()
                .map(|(upper, lower)| ((upper, lower), w[upper].adjoint() * &w[lower]))
                .collect();
            let c = NetConnection::new(&p, psi)?;
            if c.trivialize(&f).is_none() {
                return Ok((false, format!("net connection {i} failed to trivialize")));
            }
        }
        Ok((
            true,
            "10 random cocycles are coboundaries; 10 net connections trivialize".into(),
        ))
    })
}

/// Splitting and rejoining reproduces every corpus cocycle to 1e−8; charge
/// components are coboundaries; topological values equal loop evaluations to
/// 1e−10.
pub fn check_split_join_roundtrip(seed: u64) -> CriterionResult {
    run_check(3, "split-join round trip", || {
        let mut worst_rt = 0.0f64;
        let mut worst_loop = 0.0f64;
        for e in corpus(seed) {
            let rt = splitting::split_join_roundtrip(&e.cocycle, &e.frame)?;
            if rt > 1e-8 {
                return Ok((false, format!("{}: round trip deviation {rt:.2e}", e.name)));
            }
            worst_rt = worst_rt.max(rt);
            let charge = splitting::charge_component(&e.cocycle, &e.frame);
            if charge.is_coboundary(&e.frame).is_none() {
                return Ok((false, format!("{}: charge component not a coboundary", e.name)));
            }
            let topo = splitting::topological_component(&e.cocycle, &e.frame);
            for (upper, lower) in e.poset.strict_pairs() {
                let b = Simplex1::inclusion(&e.poset, upper, lower)?;
                let lp = e.frame.loop_generator(b);
                let dev = linalg::op_dist(
                    &topo.cocycle().connection(upper, lower)?,
                    &e.cocycle.evaluate(&lp)?,
                );
                if dev > 1e-10 {
                    return Ok((
                        false,
                        format!("{}: loop equality off by {dev:.2e} at ({upper},{lower})", e.name),
                    ));
                }
                worst_loop = worst_loop.max(dev);
            }
        }
        Ok((
            true,
            format!(
                "23 corpus members: worst round trip {worst_rt:.1e}, charge components \
                 all coboundaries, worst loop deviation {worst_loop:.1e}"
            ),
        ))
    })
}

/// First homology of the bundled models, independent of the pole.
pub fn check_model_homology(seed: u64) -> CriterionResult {
    run_check(4, "first homology of the bundled models", || {
        let mut models: Vec<(String, Poset, (usize, Vec<u64>))> = Vec::new();
        for n in [5usize, 6, 8] {
            models.push((
                format!("circle({n},2)"),
                build_circle_poset(n, 2)?,
                (1, vec![]),
            ));
        }
        models.push(("figure-eight".into(), figure_eight(), (2, vec![])));
        models.push((
            "directed(5)".into(),
            build_directed_interval_poset(5)?,
            (0, vec![]),
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0004_B1D5);
        let mut checked = 0;
        for (name, p, expected) in &models {
            let mut poles = vec![0usize];
            poles.extend((0..3).map(|_| rng.random_range(0..p.len())));
            for pole in poles {
                let f = PathFrame::build(p, pole)?;
                let pres = homotopy::presentation(p, &f);
                let got = homotopy::h1_invariants(&pres);
                if got != *expected {
                    return Ok((
                        false,
                        format!("{name} at pole {pole}: H1 = {got:?}, expected {expected:?}"),
                    ));
                }
                checked += 1;
            }
        }
        Ok((
            true,
            format!("{checked} frame choices over 5 models all match (rank, torsion)"),
        ))
    })
}

/// Cocycles built from group representations carry exactly the prescribed
/// holonomy: the Pauli pair gives an irreducible rank-two factor, scalar
/// phases give winding characters.
pub fn check_representation_existence(seed: u64) -> CriterionResult {
    run_check(5, "cocycles from group representations", || {
        let p = figure_eight();
        let f = PathFrame::build(&p, 0)?;
        let z = pauli_cocycle(&p, &f)?;
        if !z.validate(40, seed).valid {
            return Ok((false, "Pauli cocycle failed validation".into()));
        }
        let self_dim = cocycle::intertwiner_space(&z, &z, &f)?.dimension();
        if self_dim != 1 {
            return Ok((false, format!("Pauli self-intertwiner dimension {self_dim} ≠ 1")));
        }
        let report = holonomy::build_report(&z, &f, 4)?;
        if !report.factor || report.tau != Some(2) {
            return Ok((
                false,
                format!("Pauli holonomy: factor={}, tau={:?}", report.factor, report.tau),
            ));
        }
        let Some(&(re, im)) = report.characters.get("g0 g1 g0^-1 g1^-1") else {
            return Ok((false, "commutator character missing from report".into()));
        };
        if (re + 1.0).abs() > 1e-8 || im.abs() > 1e-8 {
            return Ok((false, format!("commutator character ({re}, {im}) ≠ −1")));
        }

        let pc = build_circle_poset(6, 4)?;
        let fc = PathFrame::build(&pc, 0)?;
        let theta = TAU / 5.0;
        let zp = phase_cocycle(&pc, &fc, theta)?;
        let phase_report = holonomy::build_report(&zp, &fc, 4)?;
        if phase_report.tau != Some(1) {
            return Ok((false, format!("phase tau = {:?} ≠ 1", phase_report.tau)));
        }
        for k in 1..=4usize {
            let word = vec!["g0"; k].join(" ");
            let Some(&(re, im)) = phase_report.characters.get(&word) else {
                return Ok((false, format!("missing character for winding {k}")));
            };
            let want = C64::from_polar(1.0, theta * k as f64);
            if (re - want.re).abs() > 1e-8 || (im - want.im).abs() > 1e-8 {
                return Ok((
                    false,
                    format!("winding-{k} character ({re}, {im}) ≠ e^(i{k}θ)"),
                ));
            }
        }
        Ok((
            true,
            "Pauli pair: irreducible, factor, τ=2, commutator character −1; \
             phases: τ=1, winding characters e^(ikθ)"
                .into(),
        ))
    })
}

/// Entrywise conjugation preserves factoriality and τ and conjugates every
/// loop character, across the corpus.
pub fn check_conjugation_invariants(seed: u64) -> CriterionResult {
    run_check(6, "conjugation invariants", || {
        let mut factors = 0;
        let mut characters = 0;
        for e in corpus(seed) {
            let zbar = holonomy::conjugate_cocycle(&e.cocycle);
            let a = holonomy::holonomy_algebra(&e.cocycle, &e.frame)?;
            let abar = holonomy::holonomy_algebra(&zbar, &e.frame)?;
            if a.is_factor() != abar.is_factor() || a.center_dim() != abar.center_dim() {
                return Ok((
                    false,
                    format!("{}: conjugate changed the center structure", e.name),
                ));
            }
            if !a.is_factor() {
                continue;
            }
            factors += 1;
            let tau = a.topological_dimension()?;
            let tau_bar = abar.topological_dimension()?;
            if tau != tau_bar {
                return Ok((
                    false,
                    format!("{}: τ changed under conjugation ({tau} → {tau_bar})", e.name),
                ));
            }
            for (upper, lower) in e.frame.off_tree_pairs(&e.poset) {
                let b = Simplex1::inclusion(&e.poset, upper, lower)?;
                let lp = e.frame.loop_generator(b);
                let c = holonomy::character(&e.cocycle, &e.frame, &lp)?;
                let cbar = holonomy::character(&zbar, &e.frame, &lp)?;
                if (cbar - c.conj()).norm() > 1e-8 {
                    return Ok((
                        false,
                        format!("{}: character not conjugated at ({upper},{lower})", e.name),
                    ));
                }
                characters += 1;
            }
        }
        Ok((
            true,
            format!(
                "center structure preserved on all 23 members; τ preserved and \
                 {characters} loop characters conjugated over {factors} factor members"
            ),
        ))
    })
}

/// The self-intertwiner space of every corpus cocycle has exactly the
/// dimension of the holonomy algebra's commutant.
pub fn check_intertwiner_commutant_duality(seed: u64) -> CriterionResult {
    run_check(7, "intertwiner-commutant duality", || {
        let mut schur = None;
        for e in corpus(seed) {
            let space = cocycle::intertwiner_space(&e.cocycle, &e.cocycle, &e.frame)?;
            let hol: Vec<CMat> = holonomy::holonomy_matrices(&e.cocycle, &e.frame)?
                .into_values()
                .collect();
            let commutant = holonomy::commutant_dimension(e.cocycle.dim(), &hol);
            if space.dimension() != commutant {
                return Ok((
                    false,
                    format!(
                        "{}: intertwiner dimension {} ≠ commutant dimension {commutant}",
                        e.name,
                        space.dimension()
                    ),
                ));
            }
            if e.name == "pauli-figure-eight" {
                schur = Some(space.dimension());
            }
        }
        if schur != Some(1) {
            return Ok((
                false,
                format!("irreducible member has self-intertwiner dimension {schur:?} ≠ 1"),
            ));
        }
        Ok((
            true,
            "intertwiner dimension equals commutant dimension on all 23 members; \
             irreducible member has dimension 1"
                .into(),
        ))
    })
}

/// Transporting holonomy algebra elements along frame paths intertwines the
/// charge component; central elements intertwine the full cocycle.
pub fn check_holonomy_embedding(seed: u64) -> CriterionResult {
    run_check(8, "holonomy algebra embedding", || {
        let mut worst_charge = 0.0f64;
        let mut worst_central = 0.0f64;
        let mut embedded = 0;
        for e in corpus(seed).into_iter().take(10) {
            let algebra = holonomy::holonomy_algebra(&e.cocycle, &e.frame)?;
            let charge = splitting::charge_component(&e.cocycle, &e.frame);
            for x in algebra.basis() {
                let rho = splitting::embed_rho(&e.cocycle, &e.frame, x)?;
                let r = cocycle::intertwining_residual(&charge, &charge, &rho);
                if r > 1e-8 {
                    return Ok((
                        false,
                        format!("{}: charge equations violated by {r:.2e}", e.name),
                    ));
                }
                worst_charge = worst_charge.max(r);
                embedded += 1;
            }
            for x in algebra.center_basis() {
                let rho = splitting::embed_rho(&e.cocycle, &e.frame, x)?;
                let r = cocycle::intertwining_residual(&e.cocycle, &e.cocycle, &rho);
                if r > 1e-8 {
                    return Ok((
                        false,
                        format!("{}: central equations violated by {r:.2e}", e.name),
                    ));
                }
                worst_central = worst_central.max(r);
            }
        }
        Ok((
            true,
            format!(
                "{embedded} algebra elements embed into charge self-intertwiners \
                 (worst {worst_charge:.1e}); central elements self-intertwine the \
                 cocycles (worst {worst_central:.1e})"
            ),
        ))
    })
}

/// Winding-free loops based away from any unit arc deform into its
/// complement within budget.
pub fn check_complement_deformation(seed: u64) -> CriterionResult {
    run_check(9, "deformation into complements", || {
        let p = build_circle_poset(6, 2)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0000_10C5);
        let mut found = 0;
        for k in 0..6usize {
            let o = p
                .index_of(&format!("arc({k},1)"))
                .ok_or_else(|| Error::bad("missing unit arc"))?;
            let base = p
                .index_of(&format!("arc({},1)", (k + 3) % 6))
                .ok_or_else(|| Error::bad("missing opposite arc"))?;
            for _ in 0..10 {
                let out = random_walk_from(&p, base, 1 + rng.random_range(0..3), &mut rng);
                let lp = out.then(&out.reverse())?;
                match homotopy::deform_into_complement(&p, &lp, o, 100_000)? {
                    ComplementSearch::Found(q) => {
                        if q.steps()
                            .iter()
                            .any(|b| p.disjoint(b.support(), o) != Some(true))
                        {
                            return Ok((
                                false,
                                format!("arc {k}: returned path is not complement-supported"),
                            ));
                        }
                        found += 1;
                    }
                    ComplementSearch::NoWithinBudget => {
                        return Ok((
                            false,
                            format!("arc {k}: no complement deformation within budget"),
                        ));
                    }
                }
            }
        }
        Ok((
            true,
            format!("{found}/60 loops deformed into complements within budget"),
        ))
    })
}

/// Run all nine acceptance checks in order.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        check_validation_and_homotopy(seed),
        check_simply_connected_trivial(seed),
        check_split_join_roundtrip(seed),
        check_model_homology(seed),
        check_representation_existence(seed),
        check_conjugation_invariants(seed),
        check_intertwiner_commutant_duality(seed),
        check_holonomy_embedding(seed),
        check_complement_deformation(seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_members_are_valid() {
        let entries = corpus(0);
        assert_eq!(entries.len(), 23);
        for e in &entries {
            let report = e.cocycle.validate(10, 5);
            assert!(report.valid, "{} failed: {:?}", e.name, report.worst);
        }
    }

    #[test]
    fn corpus_is_deterministic_in_the_seed() {
        let a = corpus(7);
        let b = corpus(7);
        let c = corpus(8);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.cocycle.to_value(), y.cocycle.to_value());
        }
        let differs = a
            .iter()
            .zip(&c)
            .any(|(x, y)| x.cocycle.to_value() != y.cocycle.to_value());
        assert!(differs);
    }

    #[test]
    fn figure_eight_has_a_rank_two_free_group() {
        let p = figure_eight();
        assert_eq!(p.len(), 15);
        let f = PathFrame::build(&p, 0).unwrap();
        let pres = homotopy::presentation(&p, &f);
        assert_eq!(pres.generators.len(), 2);
        assert!(pres.is_free());
        assert_eq!(homotopy::h1_invariants(&pres), (2, vec![]));
    }

    #[test]
    fn homology_check_passes() {
        let r = check_model_homology(3);
        assert!(r.passed, "{}", r.line());
    }

    #[test]
    fn representation_check_passes() {
        let r = check_representation_existence(3);
        assert!(r.passed, "{}", r.line());
    }
}
