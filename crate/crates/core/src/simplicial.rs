//! Finite abstract simplicial complexes, as produced by link computations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

/// Downward-closed family of nonempty vertex sets. Every vertex is a
/// 0-simplex. Simplices are stored as sorted index vectors, all faces present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `facets` on the given vertex labels.
    pub fn new(labels: Vec<String>, facets: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let n = labels.len();
        let mut simplices = BTreeSet::new();
        for v in 0..n {
            simplices.insert(vec![v]);
        }
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            assert!(f.iter().all(|&v| v < n), "simplex vertex out of range");
            if f.is_empty() || simplices.contains(&f) {
                continue;
            }
            let k = f.len();
            for mask in 1..(1usize << k) {
                let s: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                simplices.insert(s);
            }
        }
        SimplicialComplex { labels, simplices }
    }

    pub fn empty() -> Self {
        SimplicialComplex { labels: Vec::new(), simplices: BTreeSet::new() }
    }

    /// `Σ_m`: boundary of the `(m+1)`-dimensional cross-polytope, i.e. the
    /// `(m+1)`-fold join of `S^0`. `m = -1` gives the empty complex.
    pub fn standard_sphere(m: isize) -> Self {
        if m < 0 {
            return Self::empty();
        }
        let axes = (m + 1) as usize;
        let labels: Vec<String> = (0..axes)
            .flat_map(|i| [format!("+{}", i + 1), format!("-{}", i + 1)])
            .collect();
        // facets choose one sign per axis
        let facets = (0..1usize << axes).map(|signs| {
            (0..axes).map(|i| 2 * i + (signs >> i & 1)).collect::<Vec<_>>()
        });
        Self::new(labels, facets)
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().filter(move |s| s.len() == d + 1)
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        self.simplices.contains(&s)
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Vec::len).max().map(|k| k - 1)
    }

    /// Simplex counts `F_0, ..., F_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        self.simplices
            .iter()
            .filter(|s| {
                // maximal iff no common neighbour extends it to a simplex
                let mut common: BTreeSet<usize> = adj[s[0]].clone();
                for v in &s[1..] {
                    common = common.intersection(&adj[*v]).copied().collect();
                }
                common.iter().all(|&w| {
                    let mut t = (*s).clone();
                    t.push(w);
                    t.sort_unstable();
                    !self.simplices.contains(&t)
                })
            })
            .cloned()
            .collect()
    }

    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.labels.len()];
        for s in self.simplices_of_dim(1) {
            adj[s[0]].insert(s[1]);
            adj[s[1]].insert(s[0]);
        }
        adj
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices_of_dim(1).map(|s| (s[0], s[1])).collect()
    }

    /// A clique of the 1-skeleton that does not span a simplex, if any.
    pub fn missing_clique(&self) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        // Every clique is reached from a smaller spanned clique by adding a
        // larger common neighbour, so checking one-step extensions suffices.
        for s in &self.simplices {
            let last = *s.last().unwrap();
            for &w in adj[last].range(last + 1..) {
                if s.iter().all(|v| adj[*v].contains(&w)) {
                    let mut t = s.clone();
                    t.push(w);
                    if !self.simplices.contains(&t) {
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    pub fn is_flag(&self) -> bool {
        self.missing_clique().is_none()
    }

    /// Simplicial join; labels of the two factors are kept, vertex indices of
    /// `other` are shifted past those of `self`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let off = self.labels.len();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut simplices = self.simplices.clone();
        for t in &other.simplices {
            simplices.insert(t.iter().map(|v| v + off).collect());
        }
        for s in &self.simplices {
            for t in &other.simplices {
                let mut u = s.clone();
                u.extend(t.iter().map(|v| v + off));
                simplices.insert(u);
            }
        }
        SimplicialComplex { labels, simplices }
    }

    pub fn is_connected(&self) -> bool {
        if self.labels.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.labels.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Length `k` when the complex is a single `k`-cycle (a polygon).
    pub fn cycle_length(&self) -> Option<usize> {
        if self.dim() != Some(1) || !self.is_connected() {
            return None;
        }
        let adj = self.adjacency();
        adj.iter().all(|a| a.len() == 2).then_some(self.labels.len())
    }

    /// Link of a simplex, on the vertices that join with it.
    pub fn link_of(&self, simplex: &[usize]) -> SimplicialComplex {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        let mut rest: BTreeSet<Vec<usize>> = BTreeSet::new();
        for t in &self.simplices {
            if t.len() > s.len() && s.iter().all(|v| t.binary_search(v).is_ok()) {
                let r: Vec<usize> = t.iter().copied().filter(|v| s.binary_search(v).is_err()).collect();
                rest.insert(r);
            }
        }
        let verts: Vec<usize> = rest.iter().filter(|r| r.len() == 1).map(|r| r[0]).collect();
        let relabel: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = verts.iter().map(|&v| self.labels[v].clone()).collect();
        SimplicialComplex {
            labels,
            simplices: rest
                .into_iter()
                .map(|r| r.iter().map(|v| relabel[v]).collect())
                .collect(),
        }
    }

    /// Every simplex lies in a top-dimensional one.
    pub fn is_pure(&self) -> bool {
        let Some(d) = self.dim() else { return true };
        self.maximal_simplices().iter().all(|s| s.len() == d + 1)
    }

    /// Pure, and every codimension-one simplex lies in exactly two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        let Some(d) = self.dim() else { return false };
        if !self.is_pure() {
            return false;
        }
        let mut count: BTreeMap<&[usize], usize> = BTreeMap::new();
        for s in self.simplices_of_dim(d) {
            for skip in 0..s.len() {
                let r: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| *v).collect();
                if let Some(key) = self.simplices.get(&r) {
                    *count.entry(key.as_slice()).or_default() += 1;
                }
            }
        }
        if d == 0 {
            return self.labels.len() == 2;
        }
        self.simplices_of_dim(d - 1).all(|r| count.get(r.as_slice()) == Some(&2))
    }

    fn vertex_signature(&self) -> Vec<Vec<usize>> {
        let width = self.dim().map_or(0, |d| d + 1);
        let mut sig = vec![vec![0usize; width]; self.labels.len()];
        for s in &self.simplices {
            for &v in s {
                sig[v][s.len() - 1] += 1;
            }
        }
        sig
    }

    /// Vertex bijection `self → other` carrying simplices onto simplices.
    pub fn find_isomorphism(&self, other: &SimplicialComplex) -> Option<Vec<usize>> {
        let n = self.labels.len();
        if n != other.labels.len() || self.f_vector() != other.f_vector() {
            return None;
        }
        if n == 0 {
            return Some(Vec::new());
        }
        let sig_a = self.vertex_signature();
        let sig_b = other.vertex_signature();
        let mut ms_a = sig_a.clone();
        let mut ms_b = sig_b.clone();
        ms_a.sort();
        ms_b.sort();
        if ms_a != ms_b {
            return None;
        }
        let adj_a = self.adjacency();
        let adj_b = other.adjacency();
        // BFS order so each new vertex has assigned neighbours to constrain it
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let start = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| adj_a[v].len())
                .unwrap();
            placed[start] = true;
            let mut q = VecDeque::from([start]);
            while let Some(v) = q.pop_front() {
                order.push(v);
                for &w in &adj_a[v] {
                    if !std::mem::replace(&mut placed[w], true) {
                        q.push_back(w);
                    }
                }
            }
        }
        let mut by_vertex: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); n];
        for s in self.simplices.iter().filter(|s| s.len() > 2) {
            for &v in s {
                by_vertex[v].push(s);
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let ctx = IsoCtx {
            a: self,
            b: other,
            adj_a: &adj_a,
            adj_b: &adj_b,
            sig_a: &sig_a,
            sig_b: &sig_b,
            order: &order,
            by_vertex: &by_vertex,
        };
        ctx.extend(0, &mut map, &mut used).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Graphviz rendering of the 1-skeleton.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{l}\"];");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  {a} -- {b};");
        }
        s.push_str("}\n");
        s
    }
}

struct IsoCtx<'a> {
    a: &'a SimplicialComplex,
    b: &'a SimplicialComplex,
    adj_a: &'a [BTreeSet<usize>],
    adj_b: &'a [BTreeSet<usize>],
    sig_a: &'a [Vec<usize>],
    sig_b: &'a [Vec<usize>],
    order: &'a [usize],
    by_vertex: &'a [Vec<&'a Vec<usize>>],
}

impl IsoCtx<'_> {
    fn extend(&self, depth: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if depth == self.order.len() {
            return self
                .a
                .simplices
                .iter()
                .all(|s| self.b.contains(&s.iter().map(|v| map[*v]).collect::<Vec<_>>()));
        }
        let v = self.order[depth];
        for w in 0..self.b.labels.len() {
            if used[w] || self.sig_a[v] != self.sig_b[w] {
                continue;
            }
            let edges_ok = self.order[..depth].iter().all(|&u| {
                self.adj_a[v].contains(&u) == self.adj_b[w].contains(&map[u])
            });
            if !edges_ok {
                continue;
            }
            map[v] = w;
            let simplices_ok = self.by_vertex[v].iter().all(|s| {
                if s.iter().any(|u| map[*u] == usize::MAX) {
                    return true;
                }
                self.b.contains(&s.iter().map(|u| map[*u]).collect::<Vec<_>>())
            });
            if simplices_ok {
                used[w] = true;
                if self.extend(depth + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
            map[v] = usize::MAX;
        }
        false
    }
}
