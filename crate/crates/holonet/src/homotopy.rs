//! Path frames, fundamental-group presentations, and homotopy searches.
//!
//! A path frame fixes a pole `o` and one canonical path `p_(a,o)` from the
//! pole to every element, realized along a breadth-first spanning tree of the
//! comparability graph. Loops `p̄_(∂0b,o) * b * p_(∂1b,o)` attached to the
//! comparable pairs generate the fundamental group; chains `a ≤ b ≤ s` give
//! its relations. Tietze elimination shrinks that presentation (tree pairs
//! first), Smith normal form abelianizes it, and a budgeted breadth-first
//! search over elementary deformations decides homotopy questions that the
//! invariants cannot.

use crate::poset::Poset;
use crate::simplicial::{Path, Simplex1};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// A word in group generators; letters apply right to left (function
/// composition order), matching cocycle evaluation on paths.
pub type Word = Vec<(usize, i8)>;

#[derive(Clone, Debug)]
pub struct PathFrame {
    pole: usize,
    parent: Vec<Option<usize>>,
    tree: BTreeSet<(usize, usize)>,
    paths: Vec<Path>,
}

impl PathFrame {
    /// Breadth-first frame from `pole`, visiting comparable neighbours in
    /// ascending id order, so the result is identical across runs.
    pub fn build(p: &Poset, pole: usize) -> Result<PathFrame> {
        if pole >= p.len() {
            return Err(Error::bad("pole out of range"));
        }
        let n = p.len();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut paths: Vec<Option<Path>> = vec![None; n];
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::new();
        paths[pole] = Some(Path::degenerate(pole));
        queue.push_back(pole);
        let mut seen = vec![false; n];
        seen[pole] = true;
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                if seen[w] || v == w || !p.comparable(v, w) {
                    continue;
                }
                seen[w] = true;
                parent[w] = Some(v);
                let step = if p.leq(v, w) {
                    Simplex1::inclusion(p, w, v)?
                } else {
                    Simplex1::inclusion(p, v, w)?.reverse()
                };
                let (upper, lower) = if p.leq(v, w) { (w, v) } else { (v, w) };
                tree.insert((upper, lower));
                paths[w] = Some(paths[v].as_ref().unwrap().then_step(step)?);
                queue.push_back(w);
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::bad("poset is not pathwise connected"));
        }
        Ok(PathFrame {
            pole,
            parent,
            tree,
            paths: paths.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Depth-first frame from `pole`; same contract as [`PathFrame::build`]
    /// but usually a different spanning tree.
    pub fn build_depth_first(p: &Poset, pole: usize) -> Result<PathFrame> {
        if pole >= p.len() {
            return Err(Error::bad("pole out of range"));
        }
        let n = p.len();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut paths: Vec<Option<Path>> = vec![None; n];
        let mut tree = BTreeSet::new();
        let mut stack = vec![pole];
        paths[pole] = Some(Path::degenerate(pole));
        let mut seen = vec![false; n];
        seen[pole] = true;
        while let Some(v) = stack.pop() {
            for w in (0..n).rev() {
                if seen[w] || v == w || !p.comparable(v, w) {
                    continue;
                }
                seen[w] = true;
                parent[w] = Some(v);
                let step = if p.leq(v, w) {
                    Simplex1::inclusion(p, w, v)?
                } else {
                    Simplex1::inclusion(p, v, w)?.reverse()
                };
                let (upper, lower) = if p.leq(v, w) { (w, v) } else { (v, w) };
                tree.insert((upper, lower));
                paths[w] = Some(paths[v].as_ref().unwrap().then_step(step)?);
                stack.push(w);
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::bad("poset is not pathwise connected"));
        }
        Ok(PathFrame {
            pole,
            parent,
            tree,
            paths: paths.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn pole(&self) -> usize {
        self.pole
    }

    pub fn parent(&self, a: usize) -> Option<usize> {
        self.parent[a]
    }

    /// The frame path `p_(a,o)` from the pole to `a`.
    pub fn path_to(&self, a: usize) -> &Path {
        &self.paths[a]
    }

    /// Spanning-tree edges as `(upper, lower)` pairs.
    pub fn tree_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.tree
    }

    pub fn is_tree_edge(&self, upper: usize, lower: usize) -> bool {
        self.tree.contains(&(upper, lower))
    }

    /// Strictly comparable pairs not on the tree, sorted.
    pub fn off_tree_pairs(&self, p: &Poset) -> Vec<(usize, usize)> {
        p.strict_pairs()
            .into_iter()
            .filter(|&(u, l)| !self.is_tree_edge(u, l))
            .collect()
    }

    /// The loop `p̄_(∂0b,o) * b * p_(∂1b,o)` at the pole.
    pub fn loop_generator(&self, b: Simplex1) -> Path {
        self.paths[b.start()]
            .then_step(b)
            .and_then(|q| q.then(&self.paths[b.end()].reverse()))
            .expect("frame paths compose with any simplex of the poset")
    }

    /// `{ "pole": o, "tree": [[upper, lower], …] }`.
    pub fn descriptor_value(&self) -> serde_json::Value {
        serde_json::json!({
            "pole": self.pole,
            "tree": self.tree.iter().map(|&(u, l)| serde_json::json!([u, l])).collect::<Vec<_>>(),
        })
    }

    pub fn matches_descriptor(&self, v: &serde_json::Value) -> bool {
        self.descriptor_value() == crate::linalg::canonicalize_value(v)
    }

    /// Rebuild a frame from a descriptor: the tree edges must be strictly
    /// comparable pairs forming a spanning tree, walked breadth-first from
    /// the pole in ascending neighbour order.
    pub fn from_descriptor(p: &Poset, v: &serde_json::Value) -> Result<PathFrame> {
        let pole = v
            .get("pole")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::bad("frame descriptor needs a \"pole\" index"))?
            as usize;
        if pole >= p.len() {
            return Err(Error::bad("frame descriptor pole out of range"));
        }
        let edges = v
            .get("tree")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::bad("frame descriptor needs a \"tree\" array"))?;
        let mut tree = BTreeSet::new();
        for e in edges {
            let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                Error::bad("frame descriptor tree entries look like [upper, lower]")
            })?;
            let (upper, lower) = match (pair[0].as_u64(), pair[1].as_u64()) {
                (Some(u), Some(l)) => (u as usize, l as usize),
                _ => return Err(Error::bad("frame descriptor tree entries need two indices")),
            };
            if upper >= p.len() || lower >= p.len() || !p.strictly_less(lower, upper) {
                return Err(Error::bad(format!(
                    "({upper}, {lower}) is not a strictly comparable pair"
                )));
            }
            tree.insert((upper, lower));
        }
        if tree.len() != p.len().saturating_sub(1) {
            return Err(Error::bad(format!(
                "a spanning tree over {} elements needs {} edges, got {}",
                p.len(),
                p.len().saturating_sub(1),
                tree.len()
            )));
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
        for &(upper, lower) in &tree {
            adj[upper].push(lower);
            adj[lower].push(upper);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let mut parent: Vec<Option<usize>> = vec![None; p.len()];
        let mut paths: Vec<Option<Path>> = vec![None; p.len()];
        let mut queue = VecDeque::new();
        paths[pole] = Some(Path::degenerate(pole));
        queue.push_back(pole);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if paths[w].is_some() || w == pole {
                    continue;
                }
                parent[w] = Some(v);
                let step = if p.leq(v, w) {
                    Simplex1::inclusion(p, w, v)?
                } else {
                    Simplex1::inclusion(p, v, w)?.reverse()
                };
                paths[w] = Some(paths[v].as_ref().unwrap().then_step(step)?);
                queue.push_back(w);
            }
        }
        if paths.iter().any(Option::is_none) {
            return Err(Error::bad("frame descriptor tree does not span the poset"));
        }
        Ok(PathFrame {
            pole,
            parent,
            tree,
            paths: paths.into_iter().map(Option::unwrap).collect(),
        })
    }
}

// ------------------------------------------------------------- presentation

/// A finite presentation of the fundamental group at the frame pole, after
/// Tietze elimination. `generators` are the surviving off-tree comparable
/// pairs; every off-tree pair is recorded as a word in the survivors.
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub generators: Vec<(usize, usize)>,
    pub relations: Vec<Word>,
    expressed: BTreeMap<(usize, usize), Word>,
}

pub fn free_reduce(mut w: Word) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for letter in w.drain(..) {
        match out.last() {
            Some(&(g, e)) if g == letter.0 && e == -letter.1 => {
                out.pop();
            }
            _ => out.push(letter),
        }
    }
    out
}

fn invert_word(w: &Word) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Cyclically reduce, then take the least rotation of the word and of its
/// inverse, so that conjugate and inverted relations deduplicate.
fn canonical_relation(mut w: Word) -> Word {
    w = free_reduce(w);
    while w.len() >= 2 && w[0].0 == w[w.len() - 1].0 && w[0].1 == -w[w.len() - 1].1 {
        w.remove(0);
        w.pop();
        w = free_reduce(w);
    }
    if w.is_empty() {
        return w;
    }
    let mut best: Option<Word> = None;
    for candidate in [w.clone(), invert_word(&w)] {
        for r in 0..candidate.len() {
            let mut rot = candidate[r..].to_vec();
            rot.extend_from_slice(&candidate[..r]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

impl GroupPresentation {
    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// Word (over the surviving generators) of the loop attached to an
    /// off-tree pair; tree pairs give the empty word.
    pub fn word_for_pair(&self, pair: (usize, usize)) -> Word {
        self.expressed.get(&pair).cloned().unwrap_or_default()
    }

    /// All off-tree pairs, surviving or eliminated.
    pub fn expressed_pairs(&self) -> Vec<(usize, usize)> {
        self.expressed.keys().copied().collect()
    }

    /// Plain-text export: one generator per line, then one relation per line.
    pub fn to_text(&self, p: &Poset) -> String {
        let mut s = String::new();
        for (k, &(u, l)) in self.generators.iter().enumerate() {
            s.push_str(&format!("g{k} = ({}, {})\n", p.label(u), p.label(l)));
        }
        if self.relations.is_empty() {
            s.push_str("free\n");
        }
        for r in &self.relations {
            s.push_str(&format!("{} = 1\n", format_word(r)));
        }
        s
    }
}

pub fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&(g, e)| {
            if e >= 0 {
                format!("g{g}")
            } else {
                format!("g{g}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Presentation of the fundamental group at the frame pole: one generator
/// per off-tree comparable pair, one relation per strict chain `a < b < s`
/// (with tree letters dropped), then iterated Tietze elimination of
/// generators that occur exactly once in some relation.
pub fn presentation(p: &Poset, f: &PathFrame) -> GroupPresentation {
    let off_tree = f.off_tree_pairs(p);
    let index: BTreeMap<(usize, usize), usize> = off_tree
        .iter()
        .copied()
        .enumerate()
        .map(|(k, pair)| (pair, k))
        .collect();
    let letter = |upper: usize, lower: usize, exp: i8| -> Option<(usize, i8)> {
        index.get(&(upper, lower)).map(|&k| (k, exp))
    };
    let mut relations: BTreeSet<Word> = BTreeSet::new();
    for s in p.elements() {
        for b in p.down_set(s) {
            if b == s {
                continue;
            }
            for a in p.down_set(b) {
                if a == b {
                    continue;
                }
                let w: Word = [letter(s, b, 1), letter(b, a, 1), letter(s, a, -1)]
                    .into_iter()
                    .flatten()
                    .collect();
                let w = canonical_relation(w);
                if !w.is_empty() {
                    relations.insert(w);
                }
            }
        }
    }
    let mut relations: Vec<Word> = relations.into_iter().collect();
    // expressed[pair] = word over the current generator set
    let mut expressed: BTreeMap<(usize, usize), Word> = off_tree
        .iter()
        .map(|&pair| (pair, vec![(index[&pair], 1)]))
        .collect();
    let mut alive: BTreeSet<usize> = (0..off_tree.len()).collect();

    loop {
        relations.sort_by_key(|r| (r.len(), r.clone()));
        relations.dedup();
        let mut target: Option<(usize, usize)> = None; // (relation idx, position)
        'search: for (ri, r) in relations.iter().enumerate() {
            for (pos, &(g, _)) in r.iter().enumerate() {
                if r.iter().filter(|&&(h, _)| h == g).count() == 1 {
                    target = Some((ri, pos));
                    break 'search;
                }
            }
        }
        let Some((ri, pos)) = target else { break };
        let r = relations.remove(ri);
        let (g, e) = r[pos];
        // r = u g^e v = 1  =>  g^e = u^-1 v^-1  =>  g = (u^-1 v^-1)^e
        let u = r[..pos].to_vec();
        let v = r[pos + 1..].to_vec();
        let mut w = invert_word(&u);
        w.extend(invert_word(&v));
        let replacement = if e == 1 { free_reduce(w) } else { invert_word(&free_reduce(w)) };
        let substitute = |word: &Word| -> Word {
            let mut out = Vec::with_capacity(word.len());
            for &(h, exp) in word {
                if h == g {
                    if exp == 1 {
                        out.extend(replacement.iter().copied());
                    } else {
                        out.extend(invert_word(&replacement));
                    }
                } else {
                    out.push((h, exp));
                }
            }
            free_reduce(out)
        };
        let mut next: BTreeSet<Word> = BTreeSet::new();
        for rel in &relations {
            let s = canonical_relation(substitute(rel));
            if !s.is_empty() {
                next.insert(s);
            }
        }
        relations = next.into_iter().collect();
        for word in expressed.values_mut() {
            *word = substitute(word);
        }
        alive.remove(&g);
    }

    // reindex the survivors
    let survivors: Vec<usize> = alive.into_iter().collect();
    let new_index: BTreeMap<usize, usize> = survivors
        .iter()
        .copied()
        .enumerate()
        .map(|(new, old)| (old, new))
        .collect();
    let remap = |w: &Word| -> Word { w.iter().map(|&(g, e)| (new_index[&g], e)).collect() };
    GroupPresentation {
        generators: survivors.iter().map(|&k| off_tree[k]).collect(),
        relations: relations.iter().map(&remap).collect(),
        expressed: expressed.iter().map(|(pair, w)| (*pair, remap(w))).collect(),
    }
}

/// Word of an arbitrary path in the presentation's generators: each step
/// `(s; f0, f1)` contributes `incl(s,f0)⁻¹ · incl(s,f1)`, letters in
/// function-composition order (last step leftmost).
pub fn word_of_path(f: &PathFrame, pres: &GroupPresentation, path: &Path) -> Word {
    let mut w: Word = Vec::new();
    for b in path.steps() {
        let mut piece: Word = Vec::new();
        let incl = |upper: usize, lower: usize, exp: i8, into: &mut Word| {
            if upper != lower && !f.is_tree_edge(upper, lower) {
                let part = pres.word_for_pair((upper, lower));
                if exp == 1 {
                    into.extend(part);
                } else {
                    into.extend(invert_word(&part));
                }
            }
        };
        incl(b.support(), b.face0(), -1, &mut piece);
        incl(b.support(), b.face1(), 1, &mut piece);
        // function-composition order: later steps multiply on the left
        piece.extend(w);
        w = free_reduce(piece);
    }
    w
}

// ---------------------------------------------------------------- homology

/// Diagonal of the Smith normal form of an integer matrix.
#[allow(clippy::needless_range_loop)] // row operations mix `m[i]` and `m[t]`
fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut t = 0;
    let mut diag = Vec::new();
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t] / m[t][t];
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                    if m[i][t] != 0 {
                        m.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j] / m[t][t];
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    if m[t][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // divisibility: the pivot must divide every later entry
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % m[t][t] != 0 {
                        for jj in t..cols {
                            let add = m[i][jj];
                            m[t][jj] += add;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Free rank and nontrivial elementary divisors of the abelianized
/// presentation.
pub fn h1_invariants(pres: &GroupPresentation) -> (usize, Vec<u64>) {
    let gens = pres.generators.len();
    let mut matrix: Vec<Vec<i128>> = Vec::with_capacity(pres.relations.len());
    for r in &pres.relations {
        let mut row = vec![0i128; gens];
        for &(g, e) in r {
            row[g] += e as i128;
        }
        matrix.push(row);
    }
    let diag = smith_diagonal(matrix);
    let rank = diag.iter().filter(|&&d| d != 0).count();
    let torsion = diag
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect();
    (gens - rank, torsion)
}

// ------------------------------------------------------- deformation search

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyVerdict {
    Yes,
    NoWithinBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplementSearch {
    Found(Path),
    NoWithinBudget,
}

/// Per-element up-set bitmasks for O(1) common-upper-bound tests.
struct UpMasks {
    words: usize,
    masks: Vec<Vec<u64>>,
}

impl UpMasks {
    fn new(p: &Poset) -> UpMasks {
        let n = p.len();
        let words = n.div_ceil(64);
        let mut masks = vec![vec![0u64; words]; n];
        for (x, mask) in masks.iter_mut().enumerate() {
            for y in 0..n {
                if p.leq(x, y) {
                    mask[y / 64] |= 1 << (y % 64);
                }
            }
        }
        UpMasks { words, masks }
    }

    fn meet_nonempty(&self, xs: &[usize]) -> bool {
        (0..self.words).any(|w| {
            xs.iter()
                .fold(u64::MAX, |acc, &x| acc & self.masks[x][w])
                != 0
        })
    }
}

/// All single elementary deformations of a path: contract two adjacent steps
/// into a composite below a common support, or expand one step into two legs
/// through a middle vertex. Endpoints never move.
fn deformation_neighbors(p: &Poset, masks: &UpMasks, path: &Path) -> Vec<Path> {
    let steps = path.steps();
    let n = p.len();
    let mut out = Vec::new();
    // contractions: steps i (earlier, = d2) and i+1 (later, = d0)
    for i in 0..steps.len().saturating_sub(1) {
        let d2 = steps[i];
        let d0 = steps[i + 1];
        let f0 = d0.face0();
        let f1 = d2.face1();
        for t in 0..n {
            if !p.leq(f0, t) || !p.leq(f1, t) {
                continue;
            }
            if !masks.meet_nonempty(&[d0.support(), d2.support(), t]) {
                continue;
            }
            let mut new_steps = steps.to_vec();
            new_steps.splice(i..=i + 1, [Simplex1::new(p, t, f0, f1).unwrap()]);
            out.push(Path::from_steps(new_steps).unwrap());
        }
    }
    // expansions: replace step i by (u; f0, m) after (w; m, f1)
    for (i, b) in steps.iter().enumerate() {
        let (s, f0, f1) = (b.support(), b.face0(), b.face1());
        for m in 0..n {
            for u in p.upper_bounds(f0, m) {
                for w in p.upper_bounds(m, f1) {
                    if !masks.meet_nonempty(&[u, w, s]) {
                        continue;
                    }
                    let d2 = Simplex1::new(p, w, m, f1).unwrap();
                    let d0 = Simplex1::new(p, u, f0, m).unwrap();
                    let mut new_steps = steps.to_vec();
                    new_steps.splice(i..=i, [d2, d0]);
                    out.push(Path::from_steps(new_steps).unwrap());
                }
            }
        }
    }
    out
}

/// All paths one elementary deformation away from `path`.
pub fn elementary_deformations(p: &Poset, path: &Path) -> Vec<Path> {
    deformation_neighbors(p, &UpMasks::new(p), path)
}

/// Breadth-first search over elementary deformations from both endpoints at
/// once. `Yes` is definitive; `NoWithinBudget` (after expanding `budget`
/// paths) is inconclusive.
pub fn homotopic_bfs(p: &Poset, p1: &Path, p2: &Path, budget: usize) -> Result<HomotopyVerdict> {
    if p1.start() != p2.start() || p1.end() != p2.end() {
        return Err(Error::bad("homotopy check needs equal endpoints"));
    }
    if p1 == p2 {
        return Ok(HomotopyVerdict::Yes);
    }
    let masks = UpMasks::new(p);
    let mut visited: HashMap<Vec<Simplex1>, u8> = HashMap::new();
    let mut queues = [VecDeque::new(), VecDeque::new()];
    visited.insert(p1.steps().to_vec(), 0);
    visited.insert(p2.steps().to_vec(), 1);
    queues[0].push_back(p1.clone());
    queues[1].push_back(p2.clone());
    let mut expanded = 0;
    while expanded < budget {
        let pick_second = queues[0].is_empty()
            || (!queues[1].is_empty() && queues[0].len() > queues[1].len());
        let side = usize::from(pick_second);
        let Some(q) = queues[side].pop_front() else {
            break; // both frontiers exhausted: unreachable within this component
        };
        expanded += 1;
        for nb in deformation_neighbors(p, &masks, &q) {
            match visited.get(nb.steps()) {
                Some(&s) if s != side as u8 => return Ok(HomotopyVerdict::Yes),
                Some(_) => {}
                None => {
                    visited.insert(nb.steps().to_vec(), side as u8);
                    queues[side].push_back(nb);
                }
            }
        }
    }
    Ok(HomotopyVerdict::NoWithinBudget)
}

/// Search for a homotopic loop all of whose supports are disjoint from `o`.
pub fn deform_into_complement(
    p: &Poset,
    lp: &Path,
    o: usize,
    budget: usize,
) -> Result<ComplementSearch> {
    if !p.has_disjointness() {
        return Err(Error::pre("poset carries no disjointness relation"));
    }
    if !lp.is_loop_at(lp.start()) {
        return Err(Error::bad("complement search expects a loop"));
    }
    let clear = |path: &Path| {
        path.steps()
            .iter()
            .all(|b| p.disjoint(b.support(), o) == Some(true))
    };
    if p.disjoint(lp.start(), o) != Some(true) {
        return Err(Error::pre("loop base must be disjoint from the excluded element"));
    }
    if clear(lp) {
        return Ok(ComplementSearch::Found(lp.clone()));
    }
    let masks = UpMasks::new(p);
    let mut visited: HashMap<Vec<Simplex1>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    visited.insert(lp.steps().to_vec(), ());
    queue.push_back(lp.clone());
    let mut expanded = 0;
    while expanded < budget {
        let Some(q) = queue.pop_front() else { break };
        expanded += 1;
        for nb in deformation_neighbors(p, &masks, &q) {
            if visited.contains_key(nb.steps()) {
                continue;
            }
            if clear(&nb) {
                return Ok(ComplementSearch::Found(nb));
            }
            visited.insert(nb.steps().to_vec(), ());
            queue.push_back(nb);
        }
    }
    Ok(ComplementSearch::NoWithinBudget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{
        build_circle_poset, build_directed_interval_poset, build_graph_interval_poset, Graph,
    };

    fn circle_frame(n: usize, m: usize) -> (Poset, PathFrame) {
        let p = build_circle_poset(n, m).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        (p, f)
    }

    #[test]
    fn frame_paths_run_from_pole_to_element() {
        let p = build_directed_interval_poset(3).unwrap();
        let pole = p.index_of("[0,0]").unwrap();
        let f = PathFrame::build(&p, pole).unwrap();
        for a in p.elements() {
            assert_eq!(f.path_to(a).start(), pole);
            assert_eq!(f.path_to(a).end(), a);
        }
        assert_eq!(f.tree_edges().len(), p.len() - 1);
    }

    #[test]
    fn frame_covers_circle_and_is_deterministic() {
        let (p, f) = circle_frame(6, 4);
        assert_eq!(f.tree_edges().len(), 23);
        for a in p.elements() {
            assert_eq!(f.path_to(a).end(), a);
        }
        let f2 = PathFrame::build(&p, 0).unwrap();
        assert_eq!(f.descriptor_value(), f2.descriptor_value());
        for a in p.elements() {
            assert_eq!(f.path_to(a), f2.path_to(a));
        }
    }

    #[test]
    fn descriptors_rebuild_frames_exactly() {
        let (p, f) = circle_frame(6, 4);
        let back = PathFrame::from_descriptor(&p, &f.descriptor_value()).unwrap();
        assert_eq!(back.pole(), f.pole());
        assert_eq!(back.tree_edges(), f.tree_edges());
        for a in p.elements() {
            assert_eq!(back.path_to(a), f.path_to(a));
        }
        let dfs = PathFrame::build_depth_first(&p, 2).unwrap();
        let back = PathFrame::from_descriptor(&p, &dfs.descriptor_value()).unwrap();
        assert_eq!(back.tree_edges(), dfs.tree_edges());
        for a in p.elements() {
            assert_eq!(back.path_to(a).start(), 2);
            assert_eq!(back.path_to(a).end(), a);
        }
    }

    #[test]
    fn bad_descriptors_are_rejected() {
        let (p, f) = circle_frame(6, 2);
        let mut too_few = f.descriptor_value();
        too_few["tree"].as_array_mut().unwrap().pop();
        assert!(PathFrame::from_descriptor(&p, &too_few).is_err());
        let disconnected = serde_json::json!({
            "pole": 0,
            "tree": f.tree_edges().iter().map(|&(u, _)| [u, u]).collect::<Vec<_>>(),
        });
        assert!(PathFrame::from_descriptor(&p, &disconnected).is_err());
        assert!(PathFrame::from_descriptor(&p, &serde_json::json!({"pole": 99})).is_err());
    }

    #[test]
    fn tree_loops_die_and_off_tree_loops_survive() {
        let (p, f) = circle_frame(6, 2);
        let pres = presentation(&p, &f);
        for &(u, l) in f.tree_edges() {
            let b = Simplex1::inclusion(&p, u, l).unwrap();
            assert!(word_of_path(&f, &pres, &f.loop_generator(b)).is_empty());
        }
        let off = f.off_tree_pairs(&p);
        assert_eq!(off.len(), 1);
        let b = Simplex1::inclusion(&p, off[0].0, off[0].1).unwrap();
        let w = word_of_path(&f, &pres, &f.loop_generator(b));
        assert_eq!(w.len(), 1);
        // σ0(o) is contractible
        assert!(word_of_path(&f, &pres, &Path::degenerate(f.pole())).is_empty());
    }

    #[test]
    fn smith_diagonal_matches_hand_results() {
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_diagonal(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_diagonal(vec![vec![0, 0]]), Vec::<i128>::new());
        assert_eq!(smith_diagonal(vec![vec![1, 0], vec![0, 1]]), vec![1, 1]);
    }

    #[test]
    fn h1_of_bundled_models() {
        for (n, m) in [(5, 3), (6, 4), (8, 6)] {
            let (p, f) = circle_frame(n, m);
            let pres = presentation(&p, &f);
            assert_eq!(h1_invariants(&pres), (1, vec![]), "circle({n},{m})");
        }
        let p = build_directed_interval_poset(5).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        let pres = presentation(&p, &f);
        assert_eq!(pres.generators.len(), 0);
        assert_eq!(h1_invariants(&pres), (0, vec![]));
    }

    #[test]
    fn h1_of_wedge_is_rank_two_and_free() {
        let c = build_circle_poset(4, 2).unwrap();
        let x = c.index_of("arc(0,1)").unwrap();
        let w = c.wedge(x, &c, x).unwrap();
        let f = PathFrame::build(&w, 0).unwrap();
        let pres = presentation(&w, &f);
        assert_eq!(pres.generators.len(), 2);
        assert!(pres.is_free());
        assert_eq!(h1_invariants(&pres), (2, vec![]));
    }

    #[test]
    fn h1_of_two_triangles_wedged_at_a_vertex_is_rank_five() {
        // the star of the degree-4 vertex contributes three extra cycles on
        // top of the two triangle classes; max_len does not change this
        let graph = Graph {
            n_vertices: 5,
            edges: vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)],
        };
        let p = build_graph_interval_poset(&graph, 2).unwrap();
        let f = PathFrame::build(&p, 0).unwrap();
        assert_eq!(h1_invariants(&presentation(&p, &f)), (5, vec![]));
    }

    #[test]
    fn h1_does_not_depend_on_the_pole() {
        let p = build_circle_poset(6, 4).unwrap();
        for pole in [3, 11, 17] {
            let f = PathFrame::build(&p, pole).unwrap();
            assert_eq!(h1_invariants(&presentation(&p, &f)), (1, vec![]));
        }
    }

    #[test]
    fn circle_presentation_reduces_to_one_free_generator() {
        let (p, f) = circle_frame(6, 4);
        let pres = presentation(&p, &f);
        assert_eq!(pres.generators.len(), 1);
        assert!(pres.is_free());
        assert!(pres.to_text(&p).contains("free"));
    }

    #[test]
    fn identical_paths_are_homotopic_at_depth_zero() {
        let (p, f) = circle_frame(4, 2);
        let q = f.path_to(3).clone();
        assert_eq!(homotopic_bfs(&p, &q, &q, 10).unwrap(), HomotopyVerdict::Yes);
    }

    #[test]
    fn single_deformation_is_found() {
        let (p, _) = circle_frame(4, 2);
        let a01 = p.index_of("arc(0,1)").unwrap();
        let a02 = p.index_of("arc(0,2)").unwrap();
        let a11 = p.index_of("arc(1,1)").unwrap();
        // b = (a02; a01, a11) deforms into rev(incl(a02,a01)) * incl(a02,a11)
        let b = Path::single(Simplex1::new(&p, a02, a01, a11).unwrap());
        let two = Path::from_steps(vec![
            Simplex1::inclusion(&p, a02, a11).unwrap(),
            Simplex1::inclusion(&p, a02, a01).unwrap().reverse(),
        ])
        .unwrap();
        assert_eq!(homotopic_bfs(&p, &b, &two, 50).unwrap(), HomotopyVerdict::Yes);
        assert!(homotopic_bfs(&p, &b, &f_path_other_endpoints(&p), 50).is_err());
    }

    fn f_path_other_endpoints(p: &Poset) -> Path {
        let a21 = p.index_of("arc(2,1)").unwrap();
        let a22 = p.index_of("arc(2,2)").unwrap();
        Path::single(Simplex1::inclusion(p, a22, a21).unwrap())
    }

    #[test]
    fn different_winding_is_not_conflated() {
        let (p, f) = circle_frame(4, 2);
        let off = f.off_tree_pairs(&p);
        let b = Simplex1::inclusion(&p, off[0].0, off[0].1).unwrap();
        let winding = f.loop_generator(b);
        let still = Path::degenerate(f.pole());
        assert_eq!(
            homotopic_bfs(&p, &winding, &still, 3000).unwrap(),
            HomotopyVerdict::NoWithinBudget
        );
    }

    #[test]
    fn complement_search_contract() {
        let p = build_circle_poset(6, 2).unwrap();
        let o = p.index_of("arc(0,1)").unwrap();
        let far = p.index_of("arc(3,1)").unwrap();
        let lp = Path::degenerate(far);
        assert_eq!(
            deform_into_complement(&p, &lp, o, 100).unwrap(),
            ComplementSearch::Found(lp.clone())
        );
        // a loop based at o itself is rejected
        assert!(deform_into_complement(&p, &Path::degenerate(o), o, 100).is_err());
        // no disjointness relation: precondition failure
        let d = build_directed_interval_poset(3).unwrap();
        assert!(deform_into_complement(&d, &Path::degenerate(0), 1, 100).is_err());
    }
}
