//! Finite posets with an optional disjointness relation.
//!
//! Elements are dense ids `0..n`, each carrying a unique label. The order and
//! the disjointness relation are stored as dense boolean matrices and fully
//! validated on construction: reflexivity, antisymmetry and transitivity for
//! the order; symmetry, irreflexivity and downward closure
//! (`a ⊥ b, a' ≤ a, b' ≤ b  ⇒  a' ⊥ b'`) for disjointness.

use crate::{Error, Result};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq)]
pub struct Poset {
    labels: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    disjoint: Option<Vec<bool>>,
}

/// Undirected multigraph (parallel edges and self-loops allowed) used by
/// [`build_graph_interval_poset`].
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct Graph {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

impl Poset {
    /// Build and validate a poset from explicit relation pair sets. The `leq`
    /// set must contain the reflexive pairs; `disjoint`, when given, must
    /// contain both orientations of each pair.
    pub fn new(
        labels: Vec<String>,
        leq_pairs: &[(usize, usize)],
        disjoint_pairs: Option<&[(usize, usize)]>,
    ) -> Result<Poset> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::bad("poset needs at least one element"));
        }
        {
            let mut seen = BTreeSet::new();
            for l in &labels {
                if l.is_empty() || !seen.insert(l) {
                    return Err(Error::bad(format!("label {l:?} empty or duplicated")));
                }
            }
        }
        let mut leq = vec![false; n * n];
        for &(i, j) in leq_pairs {
            if i >= n || j >= n {
                return Err(Error::bad(format!("leq pair ({i},{j}) out of range")));
            }
            leq[i * n + j] = true;
        }
        let disjoint = match disjoint_pairs {
            None => None,
            Some(pairs) => {
                let mut d = vec![false; n * n];
                for &(i, j) in pairs {
                    if i >= n || j >= n {
                        return Err(Error::bad(format!("disjoint pair ({i},{j}) out of range")));
                    }
                    d[i * n + j] = true;
                }
                Some(d)
            }
        };
        let p = Poset {
            labels,
            n,
            leq,
            disjoint,
        };
        p.validate_axioms()?;
        Ok(p)
    }

    fn validate_axioms(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::bad(format!("order not reflexive at {i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::bad(format!("order not antisymmetric on ({i},{j})")));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::bad(format!(
                            "order not transitive on {i} ≤ {j} ≤ {k}"
                        )));
                    }
                }
            }
        }
        if let Some(d) = &self.disjoint {
            for i in 0..n {
                if d[i * n + i] {
                    return Err(Error::bad(format!("disjointness not irreflexive at {i}")));
                }
                for j in 0..n {
                    if d[i * n + j] != d[j * n + i] {
                        return Err(Error::bad(format!("disjointness not symmetric on ({i},{j})")));
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if !d[a * n + b] {
                        continue;
                    }
                    for ap in self.down_set(a) {
                        for bp in self.down_set(b) {
                            if !d[ap * n + bp] {
                                return Err(Error::bad(format!(
                                    "disjointness not downward closed: {a} ⊥ {b} but not {ap} ⊥ {bp}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn strictly_less(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn has_disjointness(&self) -> bool {
        self.disjoint.is_some()
    }

    /// `Some(true)` when the elements are disjoint; `None` when the poset
    /// carries no disjointness relation.
    pub fn disjoint(&self, i: usize, j: usize) -> Option<bool> {
        self.disjoint.as_ref().map(|d| d[i * self.n + j])
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.leq(j, i)).collect()
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn upper_bounds(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&k| self.leq(i, k) && self.leq(j, k))
            .collect()
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        self.down_set(i).len() == 1
    }

    /// All strictly comparable pairs as `(upper, lower)`, sorted.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for upper in 0..self.n {
            for lower in 0..self.n {
                if self.strictly_less(lower, upper) {
                    out.push((upper, lower));
                }
            }
        }
        out
    }

    /// Glue `other` onto `self` by identifying the minimal element `x_other`
    /// with the minimal element `x_self`. No order relations are added across
    /// the two legs, so the nerve of the result is the wedge of the nerves.
    ///
    /// Disjointness (present only when both legs carry it) is conservative
    /// across legs: a pair from different legs is disjoint exactly when at
    /// least one of them is disjoint from the shared element in its own leg.
    pub fn wedge(&self, x_self: usize, other: &Poset, x_other: usize) -> Result<Poset> {
        if x_self >= self.n || x_other >= other.n {
            return Err(Error::bad("wedge point out of range"));
        }
        if !self.is_minimal(x_self) || !other.is_minimal(x_other) {
            return Err(Error::bad("wedge points must be minimal elements"));
        }
        let remap = |b: usize| -> usize {
            use std::cmp::Ordering::*;
            match b.cmp(&x_other) {
                Equal => x_self,
                Less => self.n + b,
                Greater => self.n + b - 1,
            }
        };
        let mut labels = self.labels.clone();
        for (b, l) in other.labels.iter().enumerate() {
            if b != x_other {
                labels.push(format!("B:{l}"));
            }
        }
        let mut leq_pairs = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.leq(i, j) {
                    leq_pairs.push((i, j));
                }
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                if other.leq(i, j) {
                    leq_pairs.push((remap(i), remap(j)));
                }
            }
        }
        let disjoint_pairs = match (&self.disjoint, &other.disjoint) {
            (Some(_), Some(_)) => {
                let mut pairs = Vec::new();
                for i in 0..self.n {
                    for j in 0..self.n {
                        if self.disjoint(i, j) == Some(true) {
                            pairs.push((i, j));
                        }
                    }
                }
                for i in 0..other.n {
                    for j in 0..other.n {
                        if other.disjoint(i, j) == Some(true) {
                            pairs.push((remap(i), remap(j)));
                        }
                    }
                }
                for a in 0..self.n {
                    for b in 0..other.n {
                        if b == x_other || a == x_self {
                            continue;
                        }
                        let cross = self.disjoint(a, x_self) == Some(true)
                            || other.disjoint(b, x_other) == Some(true);
                        if cross {
                            pairs.push((a, remap(b)));
                            pairs.push((remap(b), a));
                        }
                    }
                }
                Some(pairs)
            }
            _ => None,
        };
        Poset::new(labels, &leq_pairs, disjoint_pairs.as_deref())
    }

    // ------------------------------------------------------------ json

    pub fn to_value(&self) -> serde_json::Value {
        let mut leq_pairs = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.leq(i, j) {
                    leq_pairs.push(serde_json::json!([i, j]));
                }
            }
        }
        let mut v = serde_json::json!({
            "elements": self.labels,
            "leq": leq_pairs,
        });
        if let Some(d) = &self.disjoint {
            let mut pairs = Vec::new();
            for i in 0..self.n {
                for j in 0..self.n {
                    if d[i * self.n + j] {
                        pairs.push(serde_json::json!([i, j]));
                    }
                }
            }
            v["disjoint"] = serde_json::Value::Array(pairs);
        }
        v
    }

    pub fn from_value(v: &serde_json::Value) -> Result<Poset> {
        let labels: Vec<String> = v
            .get("elements")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::bad("poset json: missing \"elements\""))?
            .iter()
            .map(|l| l.as_str().map(str::to_owned))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::bad("poset json: non-string label"))?;
        let parse_pairs = |key: &str| -> Result<Option<Vec<(usize, usize)>>> {
            match v.get(key) {
                None => Ok(None),
                Some(arr) => {
                    let arr = arr
                        .as_array()
                        .ok_or_else(|| Error::bad(format!("poset json: \"{key}\" not an array")))?;
                    let mut out = Vec::with_capacity(arr.len());
                    for pair in arr {
                        let pair = pair
                            .as_array()
                            .filter(|p| p.len() == 2)
                            .ok_or_else(|| Error::bad(format!("poset json: bad pair in \"{key}\"")))?;
                        let i = pair[0].as_u64().ok_or_else(|| Error::bad("poset json: bad index"))?;
                        let j = pair[1].as_u64().ok_or_else(|| Error::bad("poset json: bad index"))?;
                        out.push((i as usize, j as usize));
                    }
                    Ok(Some(out))
                }
            }
        };
        let leq = parse_pairs("leq")?
            .ok_or_else(|| Error::bad("poset json: missing \"leq\""))?;
        let disjoint = parse_pairs("disjoint")?;
        Poset::new(labels, &leq, disjoint.as_deref())
    }
}

/// Every element reachable from every other through comparability zig-zags.
pub fn is_pathwise_connected(p: &Poset) -> bool {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for (w, s) in seen.iter_mut().enumerate() {
            if !*s && v != w && p.comparable(v, w) {
                *s = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Poset of arcs on a circle of `n_points` marked points. An arc `(s, l)`
/// covers the `l` unit segments starting at point `s`; order is containment;
/// two arcs are disjoint when their closures share no point. `max_len` may be
/// at most `n_points − 2` so that no arc closure covers the whole circle.
pub fn build_circle_poset(n_points: usize, max_len: usize) -> Result<Poset> {
    if n_points < 4 {
        return Err(Error::bad("circle poset needs n_points ≥ 4"));
    }
    if max_len < 1 || max_len > n_points - 2 {
        return Err(Error::bad(format!(
            "circle poset needs 1 ≤ max_len ≤ n_points − 2, got {max_len}"
        )));
    }
    let arcs: Vec<(usize, usize)> = (0..n_points)
        .flat_map(|s| (1..=max_len).map(move |l| (s, l)))
        .collect();
    let segments = |&(s, l): &(usize, usize)| -> BTreeSet<usize> {
        (0..l).map(|k| (s + k) % n_points).collect()
    };
    let closure = |&(s, l): &(usize, usize)| -> BTreeSet<usize> {
        (0..=l).map(|k| (s + k) % n_points).collect()
    };
    let segs: Vec<_> = arcs.iter().map(segments).collect();
    let clos: Vec<_> = arcs.iter().map(closure).collect();
    let labels = arcs.iter().map(|(s, l)| format!("arc({s},{l})")).collect();
    let mut leq = Vec::new();
    let mut disjoint = Vec::new();
    for i in 0..arcs.len() {
        for j in 0..arcs.len() {
            if segs[i].is_subset(&segs[j]) {
                leq.push((i, j));
            }
            if i != j && clos[i].is_disjoint(&clos[j]) {
                disjoint.push((i, j));
            }
        }
    }
    Poset::new(labels, &leq, Some(&disjoint))
}

/// Poset of simple edge-paths (1 to `max_len` edges, no repeated vertex) of a
/// connected multigraph, ordered by contiguous subpath containment; two paths
/// are disjoint when they share no vertex. A self-loop forms a single-edge
/// path only.
pub fn build_graph_interval_poset(graph: &Graph, max_len: usize) -> Result<Poset> {
    if max_len < 1 {
        return Err(Error::bad("graph interval poset needs max_len ≥ 1"));
    }
    if !graph.is_connected() {
        return Err(Error::bad("graph must be connected"));
    }
    for &(u, v) in &graph.edges {
        if u >= graph.n_vertices || v >= graph.n_vertices {
            return Err(Error::bad("graph edge endpoint out of range"));
        }
    }
    type Canon = (Vec<usize>, Vec<usize>);
    let canon = |vseq: &[usize], eseq: &[usize]| -> Canon {
        let fwd = (vseq.to_vec(), eseq.to_vec());
        let rev = (
            vseq.iter().rev().copied().collect::<Vec<_>>(),
            eseq.iter().rev().copied().collect::<Vec<_>>(),
        );
        fwd.min(rev)
    };
    let mut adj = vec![Vec::new(); graph.n_vertices];
    for (eid, &(u, v)) in graph.edges.iter().enumerate() {
        adj[u].push((eid, v));
        if u != v {
            adj[v].push((eid, u));
        }
    }
    let mut paths: BTreeSet<Canon> = BTreeSet::new();
    fn extend(
        adj: &[Vec<(usize, usize)>],
        max_len: usize,
        paths: &mut BTreeSet<Canon>,
        canon: &dyn Fn(&[usize], &[usize]) -> Canon,
        vseq: &mut Vec<usize>,
        eseq: &mut Vec<usize>,
    ) {
        if !eseq.is_empty() {
            paths.insert(canon(vseq, eseq));
        }
        if eseq.len() == max_len {
            return;
        }
        let last = *vseq.last().unwrap();
        for &(eid, w) in &adj[last] {
            if eseq.contains(&eid) || vseq.contains(&w) {
                continue;
            }
            vseq.push(w);
            eseq.push(eid);
            extend(adj, max_len, paths, canon, vseq, eseq);
            vseq.pop();
            eseq.pop();
        }
    }
    for v in 0..graph.n_vertices {
        let mut vseq = vec![v];
        let mut eseq = Vec::new();
        extend(&adj, max_len, &mut paths, &canon, &mut vseq, &mut eseq);
        // self-loops at v: single-edge paths
        for &(eid, w) in &adj[v] {
            if w == v {
                paths.insert((vec![v, v], vec![eid]));
            }
        }
    }
    let mut paths: Vec<Canon> = paths.into_iter().collect();
    paths.sort_by_key(|(vseq, eseq)| (eseq.len(), vseq.clone(), eseq.clone()));
    let subpath = |pe: &[usize], qe: &[usize]| -> bool {
        if pe.len() > qe.len() {
            return false;
        }
        qe.windows(pe.len()).any(|w| {
            w == pe || w.iter().rev().eq(pe.iter())
        })
    };
    let labels: Vec<String> = paths
        .iter()
        .map(|(_, eseq)| {
            let ids: Vec<String> = eseq.iter().map(|e| format!("e{e}")).collect();
            format!("path({})", ids.join(","))
        })
        .collect();
    let vsets: Vec<BTreeSet<usize>> = paths
        .iter()
        .map(|(vseq, _)| vseq.iter().copied().collect())
        .collect();
    let mut leq = Vec::new();
    let mut disjoint = Vec::new();
    for i in 0..paths.len() {
        for j in 0..paths.len() {
            if subpath(&paths[i].1, &paths[j].1) {
                leq.push((i, j));
            }
            if i != j && vsets[i].is_disjoint(&vsets[j]) {
                disjoint.push((i, j));
            }
        }
    }
    Poset::new(labels, &leq, Some(&disjoint))
}

/// Poset of intervals `[i,j]` on a directed line of `n_points` points,
/// ordered by containment. Upward directed: `[0, n−1]` is the top.
pub fn build_directed_interval_poset(n_points: usize) -> Result<Poset> {
    if n_points < 2 {
        return Err(Error::bad("directed interval poset needs n_points ≥ 2"));
    }
    let ivs: Vec<(usize, usize)> = (0..n_points)
        .flat_map(|i| (i..n_points).map(move |j| (i, j)))
        .collect();
    let labels = ivs.iter().map(|(i, j)| format!("[{i},{j}]")).collect();
    let mut leq = Vec::new();
    for (a, &(i, j)) in ivs.iter().enumerate() {
        for (b, &(k, l)) in ivs.iter().enumerate() {
            if k <= i && j <= l {
                leq.push((a, b));
            }
        }
    }
    Poset::new(labels, &leq, None)
}
