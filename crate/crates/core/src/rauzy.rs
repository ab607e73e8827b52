//! Rauzy graphs, directed line graphs and the entropy regulator.
//!
//! Paths are measured in edges. `er(H)` is the least `k` such that every
//! directed path with at least `k` edges visits a vertex of out-degree >= 2.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use rand::Rng;

use crate::error::{Error, Result};
use crate::freealg::Word;
use crate::langword::WordSource;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Option<String>,
}

/// A directed multigraph with labelled vertices. Vertices are sorted by
/// label and edges by `(from, to, label)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Digraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize, Option<String>)>) -> Result<Self> {
        let n = vertices.len();
        for (f, t, _) in &edges {
            if *f >= n || *t >= n {
                return Err(Error::usage(format!(
                    "edge ({f}, {t}) has an invalid endpoint"
                )));
            }
        }
        let g = Self::canonical(vertices, edges);
        for pair in g.edges.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::usage("parallel edges need distinct labels"));
            }
        }
        Ok(g)
    }

    /// Unlabelled graph on vertices `v0..v{n-1}`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|i| format!("v{i}")).collect();
        Self::new(vertices, edges.iter().map(|&(f, t)| (f, t, None)).collect())
    }

    fn canonical(vertices: Vec<String>, edges: Vec<(usize, usize, Option<String>)>) -> Self {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]).then(a.cmp(&b)));
        let mut rank = vec![0; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let vertices = order.iter().map(|&i| vertices[i].clone()).collect();
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(f, t, label)| Edge {
                from: rank[f],
                to: rank[t],
                label,
            })
            .collect();
        edges.sort_by(|a, b| (a.from, a.to, &a.label).cmp(&(b.from, b.to, &b.label)));
        Digraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.from] += 1;
        }
        d
    }

    /// Successor lists (with multiplicity), in edge order.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut s = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            s[e.from].push(e.to);
        }
        s
    }

    /// Name of an edge: its label, or `tail>head` when unlabelled.
    pub fn edge_name(&self, i: usize) -> String {
        let e = &self.edges[i];
        match &e.label {
            Some(l) => l.clone(),
            None => format!("{}>{}", self.vertices[e.from], self.vertices[e.to]),
        }
    }

    pub fn without_edge(&self, i: usize) -> Digraph {
        let mut g = self.clone();
        g.edges.remove(i);
        g
    }

    /// Subgraph induced on `keep` (which must be sorted and distinct).
    pub fn induced(&self, keep: &[usize]) -> Digraph {
        let mut map = vec![usize::MAX; self.vertices.len()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        Digraph {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| map[e.from] != usize::MAX && map[e.to] != usize::MAX)
                .map(|e| Edge {
                    from: map[e.from],
                    to: map[e.to],
                    label: e.label.clone(),
                })
                .collect(),
        }
    }

    /// Strongly connected components, each sorted, ordered by least vertex.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let mut comps = tarjan(&self.successors());
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.vertices.len() == 1 || self.sccs().len() == 1
    }

    /// Graphviz text: vertex names are labels, edges carry their word.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for v in &self.vertices {
            writeln!(out, "  \"{}\";", escape(v)).unwrap();
        }
        for e in &self.edges {
            write!(
                out,
                "  \"{}\" -> \"{}\"",
                escape(&self.vertices[e.from]),
                escape(&self.vertices[e.to])
            )
            .unwrap();
            if let Some(l) = &e.label {
                write!(out, " [label=\"{}\"]", escape(l)).unwrap();
            }
            out.push_str(";\n");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn tarjan(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // explicit call stack of (vertex, next successor position)
        let mut call = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// `R_n(W)`: length-`n` factors, with an edge for each length-`(n+1)` factor.
pub fn rauzy_graph(source: &WordSource, n: usize) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::usage("n must be at least 1"));
    }
    let a = source.alphabet();
    let words: Vec<Word> = source.factors(n)?.into_iter().collect();
    let edges = source
        .factors(n + 1)?
        .iter()
        .map(|w| {
            let from = words.binary_search(&w.slice(0, n));
            let to = words.binary_search(&w.slice(1, n + 1));
            match (from, to) {
                (Ok(f), Ok(t)) => Ok((f, t, Some(a.render(w)))),
                _ => Err(Error::usage("factor set is not closed under subwords")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let vertices = words.iter().map(|w| a.render(w)).collect();
    Digraph::new(vertices, edges)
}

/// Directed line graph: one vertex per edge of `h`, one edge per 2-path.
///
/// When the labels of `e1` and `e2` overlap in all but one letter, the 2-path
/// is labelled with their union (as in the Rauzy chain).
pub fn line_graph(h: &Digraph) -> Digraph {
    let names: Vec<String> = (0..h.edge_count()).map(|i| h.edge_name(i)).collect();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); h.vertex_count()];
    for (i, e) in h.edges.iter().enumerate() {
        out_edges[e.from].push(i);
    }
    let mut edges = Vec::new();
    for (i, e1) in h.edges.iter().enumerate() {
        for &j in &out_edges[e1.to] {
            let label = match (&e1.label, &h.edges[j].label) {
                (Some(a), Some(b)) => merge_labels(a, b),
                _ => None,
            };
            edges.push((i, j, label));
        }
    }
    Digraph::canonical(names, edges)
}

fn merge_labels(a: &str, b: &str) -> Option<String> {
    let mut ac = a.chars();
    ac.next()?;
    let mut bc = b.chars();
    let last = bc.next_back()?;
    if ac.as_str() == bc.as_str() {
        Some(format!("{a}{last}"))
    } else {
        None
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum ErResult {
    Finite(usize),
    Infinite,
}

impl fmt::Display for ErResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErResult::Finite(v) => write!(f, "{v}"),
            ErResult::Infinite => f.write_str("inf"),
        }
    }
}

/// Entropy regulator. With `B` the vertices of out-degree >= 2: infinite if
/// `V \ B` induces a cycle, otherwise one more than the longest path (in
/// edges) inside `V \ B`; `0` when `V \ B` is empty.
pub fn entropy_regulator(h: &Digraph) -> ErResult {
    let deg = h.out_degrees();
    let free: Vec<bool> = deg.iter().map(|&d| d < 2).collect();
    let n = h.vertex_count();
    // longest path ending at each free vertex, over a topological order
    let mut indeg = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for e in &h.edges {
        if free[e.from] && free[e.to] {
            succ[e.from].push(e.to);
            indeg[e.to] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| free[v] && indeg[v] == 0).collect();
    let mut longest = vec![0usize; n];
    let mut seen = 0;
    let mut best: Option<usize> = None;
    while let Some(v) = queue.pop() {
        seen += 1;
        best = Some(best.map_or(longest[v], |b: usize| b.max(longest[v])));
        for &w in &succ[v] {
            longest[w] = longest[w].max(longest[v] + 1);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    if seen < free.iter().filter(|&&f| f).count() {
        return ErResult::Infinite;
    }
    ErResult::Finite(best.map_or(0, |b| b + 1))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeCheck {
    /// Name of the deleted edge of `H1`.
    pub edge: String,
    /// Least-labelled qualifying component and its regulator, if any.
    pub witness: Option<(String, usize)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LemmaReport {
    pub er: usize,
    /// `3·er(H)`: number of line-graph iterations and the bound on `er(H2)`.
    pub bound: usize,
    pub h1_vertices: usize,
    pub h1_edges: usize,
    /// One entry per edge of `H1`, in edge order.
    pub checks: Vec<EdgeCheck>,
}

impl LemmaReport {
    pub fn failures(&self) -> impl Iterator<Item = &EdgeCheck> {
        self.checks.iter().filter(|c| c.witness.is_none())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// For `H1 = L^{3·er(H)}(H)` and every edge `e` of `H1`, look for a
/// strongly connected component of `H1 − e` (with at least one edge) whose
/// entropy regulator is finite and at most `3·er(H)`.
pub fn check_del_edge_lemma(h: &Digraph, size_cap: usize) -> Result<LemmaReport> {
    if h.vertex_count() == 0 || !h.is_strongly_connected() {
        return Err(Error::usage("graph must be strongly connected"));
    }
    let er = match entropy_regulator(h) {
        ErResult::Finite(0) => {
            return Err(Error::usage(
                "entropy regulator is 0: every vertex branches",
            ))
        }
        ErResult::Finite(v) => v,
        ErResult::Infinite => return Err(Error::usage("entropy regulator is infinite")),
    };
    let bound = 3 * er;
    let mut h1 = h.clone();
    for _ in 0..bound {
        let next_edges: usize = {
            let deg = h1.out_degrees();
            h1.edges.iter().map(|e| deg[e.to]).sum()
        };
        if h1.edge_count() > size_cap || next_edges > size_cap {
            return Err(Error::Resource(format!(
                "line graph iterate would have {next_edges} edges, cap is {size_cap}"
            )));
        }
        h1 = line_graph(&h1);
    }
    let checks = (0..h1.edge_count())
        .map(|i| {
            let g = h1.without_edge(i);
            let witness = g
                .sccs()
                .into_iter()
                .map(|c| g.induced(&c))
                .filter(|c| c.edge_count() > 0)
                .find_map(|c| match entropy_regulator(&c) {
                    ErResult::Finite(v) if v <= bound => Some((c.vertices[0].clone(), v)),
                    _ => None,
                });
            EdgeCheck {
                edge: h1.edge_name(i),
                witness,
            }
        })
        .collect();
    Ok(LemmaReport {
        er,
        bound,
        h1_vertices: h1.vertex_count(),
        h1_edges: h1.edge_count(),
        checks,
    })
}

/// A random strongly connected graph on `vertices` vertices with out-degrees
/// 1 or 2 (a Hamiltonian cycle plus chords) and `1 <= er <= max_er`.
pub fn random_strongly_connected(rng: &mut impl Rng, vertices: usize, max_er: usize) -> Digraph {
    assert!(
        vertices >= 2 && max_er >= 1,
        "need two vertices for a finite regulator"
    );
    loop {
        let mut perm: Vec<usize> = (0..vertices).collect();
        for i in (1..vertices).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let mut edges: BTreeSet<(usize, usize)> = (0..vertices)
            .map(|i| (perm[i], perm[(i + 1) % vertices]))
            .collect();
        for v in 0..vertices {
            if rng.gen_bool(0.5) {
                edges.insert((v, rng.gen_range(0..vertices)));
            }
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let g = Digraph::from_edges(vertices, &edges).expect("valid endpoints");
        if matches!(entropy_regulator(&g), ErResult::Finite(v) if (1..=max_er).contains(&v)) {
            return g;
        }
    }
}
