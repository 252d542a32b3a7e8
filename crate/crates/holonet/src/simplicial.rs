//! Singular simplices of a poset and the paths built from them.
//!
//! A 1-simplex `b = (|b|; ∂0b, ∂1b)` is a support element together with two
//! faces below it; it is traversed from `∂1b` to `∂0b`. A 2-simplex glues
//! three 1-simplices below a common support so that `∂1c` is the composite of
//! `∂0c` after `∂2c`. Paths are finite composable sequences of 1-simplices,
//! stored in traversal order.

use crate::poset::Poset;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex1 {
    support: usize,
    face0: usize,
    face1: usize,
}

impl Simplex1 {
    pub fn new(p: &Poset, support: usize, face0: usize, face1: usize) -> Result<Simplex1> {
        if support >= p.len() || face0 >= p.len() || face1 >= p.len() {
            return Err(Error::bad("1-simplex element out of range"));
        }
        if !p.leq(face0, support) || !p.leq(face1, support) {
            return Err(Error::bad(format!(
                "1-simplex faces must lie below the support: ({support}; {face0}, {face1})"
            )));
        }
        Ok(Simplex1 {
            support,
            face0,
            face1,
        })
    }

    /// The degenerate simplex `σ0(a) = (a; a, a)`.
    pub fn degenerate(a: usize) -> Simplex1 {
        Simplex1 {
            support: a,
            face0: a,
            face1: a,
        }
    }

    /// The simplex `(upper; upper, lower)` of an inclusion `lower ≤ upper`,
    /// traversed upward from `lower` to `upper`.
    pub fn inclusion(p: &Poset, upper: usize, lower: usize) -> Result<Simplex1> {
        if !p.leq(lower, upper) {
            return Err(Error::bad(format!(
                "inclusion simplex needs {} ≤ {}",
                p.label(lower),
                p.label(upper)
            )));
        }
        Simplex1::new(p, upper, upper, lower)
    }

    pub fn support(&self) -> usize {
        self.support
    }

    pub fn face0(&self) -> usize {
        self.face0
    }

    pub fn face1(&self) -> usize {
        self.face1
    }

    /// Traversal origin, `∂1`.
    pub fn start(&self) -> usize {
        self.face1
    }

    /// Traversal target, `∂0`.
    pub fn end(&self) -> usize {
        self.face0
    }

    pub fn is_degenerate(&self) -> bool {
        self.face0 == self.support && self.face1 == self.support
    }

    /// Swap the faces: same support, opposite traversal.
    pub fn reverse(&self) -> Simplex1 {
        Simplex1 {
            support: self.support,
            face0: self.face1,
            face1: self.face0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Simplex2 {
    support: usize,
    d0: Simplex1,
    d1: Simplex1,
    d2: Simplex1,
}

impl Simplex2 {
    /// Faces must sit below `support` and match at the three vertices:
    /// `∂1d0 = ∂0d2`, `∂1d1 = ∂1d2`, `∂0d1 = ∂0d0`.
    pub fn new(p: &Poset, support: usize, d0: Simplex1, d1: Simplex1, d2: Simplex1) -> Result<Simplex2> {
        if support >= p.len() {
            return Err(Error::bad("2-simplex support out of range"));
        }
        for (name, f) in [("d0", &d0), ("d1", &d1), ("d2", &d2)] {
            if !p.leq(f.support(), support) {
                return Err(Error::bad(format!(
                    "2-simplex face {name} has support above the simplex support"
                )));
            }
        }
        if d0.face1() != d2.face0() || d1.face1() != d2.face1() || d1.face0() != d0.face0() {
            return Err(Error::bad("2-simplex faces do not share vertices"));
        }
        Ok(Simplex2 {
            support,
            d0,
            d1,
            d2,
        })
    }

    pub fn support(&self) -> usize {
        self.support
    }

    /// The face opposite vertex 0: the later leg, from the middle vertex on.
    pub fn d0(&self) -> Simplex1 {
        self.d0
    }

    /// The face opposite vertex 1: the composite.
    pub fn d1(&self) -> Simplex1 {
        self.d1
    }

    /// The face opposite vertex 2: the earlier leg, into the middle vertex.
    pub fn d2(&self) -> Simplex1 {
        self.d2
    }
}

/// A composable sequence of 1-simplices in traversal order: step `k+1` starts
/// where step `k` ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[allow(clippy::len_without_is_empty)]
pub struct Path {
    steps: Vec<Simplex1>,
}

impl Path {
    pub fn single(b: Simplex1) -> Path {
        Path { steps: vec![b] }
    }

    /// The constant path `σ0(a)`.
    pub fn degenerate(a: usize) -> Path {
        Path::single(Simplex1::degenerate(a))
    }

    pub fn from_steps(steps: Vec<Simplex1>) -> Result<Path> {
        if steps.is_empty() {
            return Err(Error::bad("path needs at least one simplex"));
        }
        for w in steps.windows(2) {
            if w[1].start() != w[0].end() {
                return Err(Error::bad(format!(
                    "path steps do not compose: {:?} then {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { steps })
    }

    pub fn steps(&self) -> &[Simplex1] {
        &self.steps
    }

    /// Number of steps; a path is never empty.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn start(&self) -> usize {
        self.steps[0].start()
    }

    pub fn end(&self) -> usize {
        self.steps[self.steps.len() - 1].end()
    }

    pub fn is_loop_at(&self, o: usize) -> bool {
        self.start() == o && self.end() == o
    }

    /// Continue this path with `next` (which must start at our end).
    pub fn then(&self, next: &Path) -> Result<Path> {
        if next.start() != self.end() {
            return Err(Error::bad(format!(
                "paths do not compose: end {} vs start {}",
                self.end(),
                next.start()
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        Ok(Path { steps })
    }

    pub fn then_step(&self, b: Simplex1) -> Result<Path> {
        self.then(&Path::single(b))
    }

    /// Reverse traversal: `reverse(b_n * … * b_1) = rev(b_1) * … * rev(b_n)`.
    pub fn reverse(&self) -> Path {
        Path {
            steps: self.steps.iter().rev().map(Simplex1::reverse).collect(),
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.steps
                .iter()
                .map(|b| serde_json::json!([b.support(), b.face0(), b.face1()]))
                .collect(),
        )
    }

    pub fn from_value(p: &Poset, v: &serde_json::Value) -> Result<Path> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::bad("path json: expected array of triples"))?;
        let mut steps = Vec::with_capacity(arr.len());
        for t in arr {
            let t = t
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| Error::bad("path json: expected [support, face0, face1]"))?;
            let get = |k: usize| -> Result<usize> {
                t[k].as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::bad("path json: bad element id"))
            };
            steps.push(Simplex1::new(p, get(0)?, get(1)?, get(2)?)?);
        }
        Path::from_steps(steps)
    }
}

/// The composite `q * p`: `p` is traversed first.
pub fn compose_paths(q: &Path, p: &Path) -> Result<Path> {
    p.then(q)
}

#[derive(Clone, Copy, Debug)]
pub enum TwoSimplexMode {
    /// One 2-simplex per chain `a ≤ b ≤ s` (equalities allowed): the two
    /// inclusions through `b` compose into the inclusion `a ≤ s`.
    InclusionOnly,
    /// The inclusion family plus `extra` seeded random general 2-simplices.
    Sampled { extra: usize, seed: u64 },
}

/// Enumerate 2-simplices of the poset in the requested mode.
pub fn enumerate_two_simplices(p: &Poset, mode: TwoSimplexMode) -> Vec<Simplex2> {
    let mut out = Vec::new();
    for s in p.elements() {
        for b in p.down_set(s) {
            for a in p.down_set(b) {
                let d0 = Simplex1::new(p, s, s, b).unwrap();
                let d1 = Simplex1::new(p, s, s, a).unwrap();
                let d2 = Simplex1::new(p, b, b, a).unwrap();
                out.push(Simplex2::new(p, s, d0, d1, d2).unwrap());
            }
        }
    }
    if let TwoSimplexMode::Sampled { extra, seed } = mode {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..extra {
            out.push(sample_general(p, &mut rng));
        }
    }
    out
}

/// A uniformly drawn support below `s` and above both `x` and `y`; `s`
/// itself always qualifies, so the candidate list is never empty.
fn support_above(p: &Poset, down: &[usize], x: usize, y: usize, rng: &mut impl Rng) -> usize {
    let candidates: Vec<usize> = down
        .iter()
        .copied()
        .filter(|&u| p.leq(x, u) && p.leq(y, u))
        .collect();
    candidates[rng.random_range(0..candidates.len())]
}

/// One random valid 2-simplex: pick a support, three vertices below it, and
/// for each face a support below the simplex support and above its two
/// vertices.
/// One random valid 2-simplex: pick a support, three vertices below it, and
/// compatible face supports.
pub fn sample_general(p: &Poset, rng: &mut impl Rng) -> Simplex2 {
    let s = rng.random_range(0..p.len());
    let down = p.down_set(s);
    let v0 = down[rng.random_range(0..down.len())];
    let v1 = down[rng.random_range(0..down.len())];
    let v2 = down[rng.random_range(0..down.len())];
    let su = support_above(p, &down, v0, v1, rng);
    let sw = support_above(p, &down, v1, v2, rng);
    let st = support_above(p, &down, v0, v2, rng);
    let d0 = Simplex1::new(p, su, v0, v1).unwrap();
    let d2 = Simplex1::new(p, sw, v1, v2).unwrap();
    let d1 = Simplex1::new(p, st, v0, v2).unwrap();
    Simplex2::new(p, s, d0, d1, d2).unwrap()
}
