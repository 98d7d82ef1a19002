//! Finite directed graphs, paths, the closed-path taxonomy, reachability,
//! and enumeration of the path sets feeding the division machinery.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    name: String,
    src: VertexId,
    dst: VertexId,
}

/// A finite directed graph with named vertices and edges.
///
/// The declared edge order is retained; it seeds the deterministic term
/// ordering used throughout the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
}

/// Serialized form: `{"vertices": [...], "edges": [{"name","src","dst"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
}

fn is_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Graph {
    /// Builds a graph from names, validating the structural invariants.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::Graph("a graph needs at least one vertex".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !is_ident(v) {
                return Err(Error::Graph(format!("`{v}` is not a valid name")));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::Graph(format!("duplicate name `{v}`")));
            }
        }
        let mut g = Graph {
            vertex_names: vertices,
            edges: Vec::new(),
        };
        for (name, src, dst) in edges {
            if !is_ident(&name) {
                return Err(Error::Graph(format!("`{name}` is not a valid name")));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::Graph(format!("duplicate name `{name}`")));
            }
            let src = g
                .vertex_by_name(&src)
                .ok_or_else(|| Error::Graph(format!("edge `{name}`: unknown vertex `{src}`")))?;
            let dst = g
                .vertex_by_name(&dst)
                .ok_or_else(|| Error::Graph(format!("edge `{name}`: unknown vertex `{dst}`")))?;
            g.edges.push(Edge { name, src, dst });
        }
        Ok(g)
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Graph> {
        Graph::new(
            spec.vertices.clone(),
            spec.edges
                .iter()
                .map(|e| (e.name.clone(), e.src.clone(), e.dst.clone()))
                .collect(),
        )
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let spec: GraphSpec =
            serde_json::from_str(text).map_err(|e| Error::Graph(format!("bad JSON: {e}")))?;
        Graph::from_spec(&spec)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertex_names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    name: e.name.clone(),
                    src: self.vertex_name(e.src).to_string(),
                    dst: self.vertex_name(e.dst).to_string(),
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].src
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].dst
    }

    /// Edges emitted by `v`, in declared order.
    pub fn out_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.source(e) == v).collect()
    }

    /// Edges entering `v`, in declared order.
    pub fn in_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.range(e) == v).collect()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges(v).is_empty()
    }

    pub fn is_source_vertex(&self, v: VertexId) -> bool {
        self.in_edges(v).is_empty()
    }

    /// True iff `v = w` or some path runs from `v` to `w`.
    pub fn connects_to(&self, v: VertexId, w: VertexId) -> Result<bool> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if v == w {
            return Ok(true);
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![v];
        seen[v.0] = true;
        while let Some(u) = stack.pop() {
            for e in self.edge_ids() {
                if self.source(e) == u && !seen[self.range(e).0] {
                    if self.range(e) == w {
                        return Ok(true);
                    }
                    seen[self.range(e).0] = true;
                    stack.push(self.range(e));
                }
            }
        }
        Ok(false)
    }

    /// All vertices that connect to `w` (including `w`).
    pub fn connecting_set(&self, w: VertexId) -> Vec<VertexId> {
        let mut seen = vec![false; self.vertex_count()];
        seen[w.0] = true;
        let mut stack = vec![w];
        while let Some(u) = stack.pop() {
            for e in self.edge_ids() {
                if self.range(e) == u && !seen[self.source(e).0] {
                    seen[self.source(e).0] = true;
                    stack.push(self.source(e));
                }
            }
        }
        self.vertices().filter(|v| seen[v.0]).collect()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::precondition(format!("unknown vertex #{}", v.0)))
        }
    }

    pub fn check_path(&self, p: &Path) -> Result<()> {
        self.check_vertex(p.source())?;
        for e in &p.edges {
            if e.0 >= self.edge_count() {
                return Err(Error::precondition(format!("unknown edge #{}", e.0)));
            }
        }
        let mut at = p.source();
        for &e in &p.edges {
            if self.source(e) != at {
                return Err(Error::precondition(format!(
                    "not a path: `{}` does not start at `{}`",
                    self.edge_name(e),
                    self.vertex_name(at)
                )));
            }
            at = self.range(e);
        }
        Ok(())
    }
}

/// A finite path: a vertex (length 0) or a composable edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            source: v,
            edges: Vec::new(),
        }
    }

    /// Builds a path from a nonempty edge sequence, checking composability.
    pub fn from_edges(graph: &Graph, edges: Vec<EdgeId>) -> Result<Path> {
        if edges.is_empty() {
            return Err(Error::precondition("empty edge sequence"));
        }
        let p = Path {
            source: graph.source(edges[0]),
            edges,
        };
        graph.check_path(&p)?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self, graph: &Graph) -> VertexId {
        match self.edges.last() {
            Some(&e) => graph.range(e),
            None => self.source,
        }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_closed(&self, graph: &Graph) -> bool {
        !self.is_empty() && self.range(graph) == self.source
    }

    /// Concatenation; fails unless `r(self) = s(other)`.
    pub fn concat(&self, graph: &Graph, other: &Path) -> Result<Path> {
        if self.range(graph) != other.source() {
            return Err(Error::precondition(format!(
                "paths do not compose at `{}`",
                graph.vertex_name(other.source())
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            source: self.source,
            edges,
        })
    }

    /// `self` repeated `k` times; requires a closed path when `k >= 2`.
    pub fn repeat(&self, graph: &Graph, k: usize) -> Result<Path> {
        if k == 0 {
            return Ok(Path::vertex(self.source));
        }
        if k >= 2 && !self.is_closed(graph) {
            return Err(Error::precondition("cannot repeat a non-closed path"));
        }
        let mut edges = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            edges.extend_from_slice(&self.edges);
        }
        Ok(Path {
            source: self.source,
            edges,
        })
    }

    pub fn starts_with(&self, prefix: &Path) -> bool {
        self.source == prefix.source
            && self.len() >= prefix.len()
            && self.edges[..prefix.len()] == prefix.edges[..]
    }

    pub fn ends_with(&self, graph: &Graph, suffix: &Path) -> bool {
        self.len() >= suffix.len()
            && self.edges[self.len() - suffix.len()..] == suffix.edges[..]
            && (!suffix.is_empty() || self.range(graph) == suffix.source())
    }

    /// The suffix after removing the first `n` edges.
    pub fn suffix(&self, graph: &Graph, n: usize) -> Path {
        assert!(n <= self.len());
        if n == 0 {
            return self.clone();
        }
        Path {
            source: graph.range(self.edges[n - 1]),
            edges: self.edges[n..].to_vec(),
        }
    }

    /// The prefix of the first `n` edges.
    pub fn prefix(&self, n: usize) -> Path {
        assert!(n <= self.len());
        Path {
            source: self.source,
            edges: self.edges[..n].to_vec(),
        }
    }

    /// Ordering key `(length, declared-edge-order lex, source)`.
    pub fn order_key(&self) -> (usize, Vec<EdgeId>, VertexId) {
        (self.len(), self.edges.clone(), self.source)
    }

    pub fn display<'a>(&'a self, graph: &'a Graph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

/// Renders a path as an expression (`e1.e2^3`), or the vertex name for
/// length 0.
pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return write!(f, "{}", self.graph.vertex_name(self.path.source()));
        }
        let mut first = true;
        let mut i = 0;
        let edges = self.path.edges();
        while i < edges.len() {
            let mut j = i + 1;
            while j < edges.len() && edges[j] == edges[i] {
                j += 1;
            }
            if !first {
                write!(f, ".")?;
            }
            first = false;
            let name = self.graph.edge_name(edges[i]);
            if j - i == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// The flags of the closed-path taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClosedPathClass {
    pub closed: bool,
    pub simple: bool,
    pub basic: bool,
    pub cycle: bool,
    pub loop_: bool,
    pub source_cycle: bool,
    pub source_loop: bool,
    pub maximal_cycle: bool,
}

/// Classifies a path of length >= 1 against the closed-path taxonomy.
///
/// `maximal_cycle` is decided structurally: restrict to the vertices that
/// connect to `s(p)`, take strongly connected components, and require the
/// unique nontrivial component to consist exactly of the path's vertices
/// and edges.
pub fn classify_closed_path(graph: &Graph, p: &Path) -> Result<ClosedPathClass> {
    graph.check_path(p)?;
    if p.is_empty() {
        return Err(Error::precondition("classification needs length >= 1"));
    }
    let mut class = ClosedPathClass::default();
    if !p.is_closed(graph) {
        return Ok(class);
    }
    class.closed = true;
    let sources: Vec<VertexId> = p.edges().iter().map(|&e| graph.source(e)).collect();
    class.simple = sources[1..].iter().all(|&v| v != sources[0]);
    class.basic = is_basic(p);
    class.cycle = {
        let mut s = sources.clone();
        s.sort();
        s.dedup();
        s.len() == sources.len()
    };
    class.loop_ = p.len() == 1;
    if class.cycle {
        class.source_cycle = is_source_cycle(graph, p);
        class.maximal_cycle = class.source_cycle || is_maximal_cycle(graph, p);
    }
    class.source_loop = class.source_cycle && class.loop_;
    Ok(class)
}

fn is_basic(p: &Path) -> bool {
    let n = p.len();
    for d in 1..n {
        if n % d == 0 && (0..n).all(|i| p.edges()[i] == p.edges()[i % d]) {
            return false;
        }
    }
    true
}

fn is_source_cycle(graph: &Graph, p: &Path) -> bool {
    let cycle_edges: std::collections::HashSet<EdgeId> = p.edges().iter().copied().collect();
    let cycle_vertices: std::collections::HashSet<VertexId> =
        p.edges().iter().map(|&e| graph.source(e)).collect();
    graph
        .edge_ids()
        .all(|e| cycle_edges.contains(&e) || !cycle_vertices.contains(&graph.range(e)))
}

fn is_maximal_cycle(graph: &Graph, p: &Path) -> bool {
    let region = graph.connecting_set(p.source());
    let in_region = {
        let mut v = vec![false; graph.vertex_count()];
        for &u in &region {
            v[u.0] = true;
        }
        v
    };
    let induced_edges: Vec<EdgeId> = graph
        .edge_ids()
        .filter(|&e| in_region[graph.source(e).0] && in_region[graph.range(e).0])
        .collect();
    let comps = tarjan_scc(graph, &region, &induced_edges);

    let mut cycle_vertices: Vec<VertexId> = p.edges().iter().map(|&e| graph.source(e)).collect();
    cycle_vertices.sort();
    let cycle_edges: std::collections::HashSet<EdgeId> = p.edges().iter().copied().collect();

    let mut nontrivial = Vec::new();
    for comp in &comps {
        let trivial = comp.len() == 1
            && !induced_edges
                .iter()
                .any(|&e| graph.source(e) == comp[0] && graph.range(e) == comp[0]);
        if !trivial {
            nontrivial.push(comp);
        }
    }
    if nontrivial.len() != 1 {
        return false;
    }
    let mut comp = nontrivial[0].clone();
    comp.sort();
    if comp != cycle_vertices {
        return false;
    }
    let comp_set: std::collections::HashSet<VertexId> = comp.iter().copied().collect();
    induced_edges
        .iter()
        .filter(|&&e| comp_set.contains(&graph.source(e)) && comp_set.contains(&graph.range(e)))
        .all(|e| cycle_edges.contains(e))
}

/// Tarjan over the subgraph induced by `region` and `edges`.
fn tarjan_scc(graph: &Graph, region: &[VertexId], edges: &[EdgeId]) -> Vec<Vec<VertexId>> {
    let n = graph.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &e in edges {
        adj[graph.source(e).0].push(graph.range(e).0);
    }

    struct State {
        index: usize,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        comps: Vec<Vec<usize>>,
    }

    fn strongconnect(v: usize, adj: &[Vec<usize>], st: &mut State) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in &adj[v] {
            if st.idx[w].is_none() {
                strongconnect(w, adj, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }
        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            st.comps.push(comp);
        }
    }

    let mut st = State {
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        idx: vec![None; n],
        low: vec![0; n],
        comps: Vec::new(),
    };
    for &v in region {
        if st.idx[v.0].is_none() {
            strongconnect(v.0, &adj, &mut st);
        }
    }
    st.comps
        .into_iter()
        .map(|c| c.into_iter().map(VertexId).collect())
        .collect()
}

/// The `n` rotations of a closed path, starting with the path itself.
/// Duplicates among rotations are retained.
pub fn cyclic_shifts(graph: &Graph, p: &Path) -> Result<Vec<Path>> {
    graph.check_path(p)?;
    if !p.is_closed(graph) {
        return Err(Error::precondition("cyclic shifts need a closed path"));
    }
    let n = p.len();
    let mut shifts = Vec::with_capacity(n);
    for i in 0..n {
        let mut edges = p.edges()[i..].to_vec();
        edges.extend_from_slice(&p.edges()[..i]);
        shifts.push(Path {
            source: graph.source(edges[0]),
            edges,
        });
    }
    Ok(shifts)
}

pub fn is_cyclic_shift(graph: &Graph, p: &Path, q: &Path) -> bool {
    p.is_closed(graph)
        && q.is_closed(graph)
        && cyclic_shifts(graph, p).map(|s| s.contains(q)).unwrap_or(false)
}

/// All paths `a` with `1 <= |a| <= max_len` and `r(a) = s(c)` that neither
/// start nor end with `c`, ordered by `(length, declared-edge lex)`.
///
/// This set can be infinite in the graph; enumeration is always bounded.
pub fn enumerate_ac(graph: &Graph, c: &Path, max_len: usize) -> Result<Vec<Path>> {
    let class = classify_closed_path(graph, c)?;
    if !(class.closed && class.basic) {
        return Err(Error::precondition(format!(
            "`{}` is not a basic closed path",
            c.display(graph)
        )));
    }
    if max_len == 0 {
        return Err(Error::precondition("max_len must be >= 1"));
    }
    let v = c.source();
    // Walk backwards from s(c): extend on the left by every in-edge.
    let mut out = Vec::new();
    let mut layer: Vec<Path> = vec![Path::vertex(v)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for e in graph.in_edges(p.source()) {
                let mut edges = vec![e];
                edges.extend_from_slice(p.edges());
                next.push(Path {
                    source: graph.source(e),
                    edges,
                });
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    let mut out: Vec<Path> = out
        .into_iter()
        .filter(|a| !a.starts_with(c) && !a.ends_with(graph, c))
        .collect();
    out.sort_by_key(|p| p.order_key());
    Ok(out)
}

/// All cycles of length `<= max_len` whose source connects to `v`,
/// deduplicated up to cyclic shift and anchored at the least rotation.
pub fn cycles_connecting_to(graph: &Graph, v: VertexId, max_len: usize) -> Result<Vec<Path>> {
    graph.check_vertex(v)?;
    let mut found: Vec<Path> = Vec::new();
    // DFS for closed paths with pairwise distinct sources.
    fn dfs(
        graph: &Graph,
        start: VertexId,
        at: VertexId,
        edges: &mut Vec<EdgeId>,
        visited: &mut Vec<VertexId>,
        max_len: usize,
        found: &mut Vec<Path>,
    ) {
        if edges.len() >= max_len {
            return;
        }
        for e in graph.out_edges(at) {
            let w = graph.range(e);
            if w == start {
                let mut es = edges.clone();
                es.push(e);
                found.push(Path {
                    source: start,
                    edges: es,
                });
            } else if !visited.contains(&w) {
                edges.push(e);
                visited.push(w);
                dfs(graph, start, w, edges, visited, max_len, found);
                visited.pop();
                edges.pop();
            }
        }
    }
    for start in graph.vertices() {
        let mut edges = Vec::new();
        let mut visited = vec![start];
        dfs(graph, start, start, &mut edges, &mut visited, max_len, &mut found);
    }
    let mut reps: Vec<Path> = Vec::new();
    for cyc in found {
        if !graph.connects_to(cyc.source(), v)? {
            continue;
        }
        let least = cyclic_shifts(graph, &cyc)?
            .into_iter()
            .min_by_key(|p| p.order_key())
            .unwrap();
        if !reps.contains(&least) {
            reps.push(least);
        }
    }
    reps.sort_by_key(|p| p.order_key());
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn path(graph: &Graph, names: &[&str]) -> Path {
        Path::from_edges(
            graph,
            names.iter().map(|n| graph.edge_by_name(n).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn classify_r1_loop() {
        let g = fixtures::r1();
        let c = path(&g, &["c"]);
        let cl = classify_closed_path(&g, &c).unwrap();
        assert!(
            cl.closed
                && cl.simple
                && cl.basic
                && cl.cycle
                && cl.loop_
                && cl.source_cycle
                && cl.source_loop
                && cl.maximal_cycle
        );
    }

    #[test]
    fn classify_r2_loop() {
        let g = fixtures::r2();
        let c = path(&g, &["c"]);
        let cl = classify_closed_path(&g, &c).unwrap();
        assert!(cl.closed && cl.simple && cl.basic && cl.cycle && cl.loop_);
        assert!(!cl.source_cycle && !cl.source_loop && !cl.maximal_cycle);
    }

    #[test]
    fn classify_power_is_not_basic() {
        let g = fixtures::r1();
        let cc = path(&g, &["c", "c"]);
        let cl = classify_closed_path(&g, &cc).unwrap();
        assert!(cl.closed);
        assert!(!cl.basic && !cl.simple && !cl.cycle);
    }

    #[test]
    fn classify_g_e1() {
        let g = fixtures::g_e1();
        let c = path(&g, &["c"]);
        let cl = classify_closed_path(&g, &c).unwrap();
        assert!(cl.maximal_cycle);
        assert!(!cl.source_cycle, "e enters the loop vertex");
    }

    #[test]
    fn classify_c2_cycle() {
        let g = fixtures::g_c2();
        let c = path(&g, &["e1", "e2"]);
        let cl = classify_closed_path(&g, &c).unwrap();
        assert!(cl.cycle && cl.source_cycle && cl.maximal_cycle && !cl.loop_);
        let gx = fixtures::g_c2x();
        let cx = path(&gx, &["e1", "e2"]);
        let clx = classify_closed_path(&gx, &cx).unwrap();
        // The exit edge leaves the cycle; nothing new enters it.
        assert!(clx.source_cycle && clx.maximal_cycle);
        let gz = fixtures::g_c2z();
        let cz = path(&gz, &["e1", "e2"]);
        let clz = classify_closed_path(&gz, &cz).unwrap();
        assert!(!clz.source_cycle && clz.maximal_cycle);
    }

    #[test]
    fn shifts_of_two_cycle() {
        let g = fixtures::g_c2();
        let c = path(&g, &["e1", "e2"]);
        let shifts = cyclic_shifts(&g, &c).unwrap();
        assert_eq!(shifts, vec![path(&g, &["e1", "e2"]), path(&g, &["e2", "e1"])]);
    }

    #[test]
    fn shifts_of_loop_and_power() {
        let g = fixtures::r1();
        assert_eq!(cyclic_shifts(&g, &path(&g, &["c"])).unwrap().len(), 1);
        let cc = path(&g, &["c", "c"]);
        let shifts = cyclic_shifts(&g, &cc).unwrap();
        assert_eq!(shifts, vec![cc.clone(), cc]);
    }

    #[test]
    fn shifts_require_closed() {
        let g = fixtures::g_e1();
        let e = path(&g, &["e"]);
        assert!(cyclic_shifts(&g, &e).is_err());
    }

    #[test]
    fn connects() {
        let g = fixtures::g_e1();
        let u = g.vertex_by_name("u").unwrap();
        let v = g.vertex_by_name("v").unwrap();
        assert!(g.connects_to(u, v).unwrap());
        assert!(!g.connects_to(v, u).unwrap());
        let r1 = fixtures::r1();
        let vv = r1.vertex_by_name("v").unwrap();
        assert!(r1.connects_to(vv, vv).unwrap());
    }

    #[test]
    fn ac_fixture_values() {
        let g = fixtures::g_e1();
        let c = path(&g, &["c"]);
        let ac = enumerate_ac(&g, &c, 5).unwrap();
        assert_eq!(ac, vec![path(&g, &["e"])]);

        let r1 = fixtures::r1();
        assert!(enumerate_ac(&r1, &path(&r1, &["c"]), 5).unwrap().is_empty());

        let r2 = fixtures::r2();
        let c2 = path(&r2, &["c"]);
        let ac2 = enumerate_ac(&r2, &c2, 2).unwrap();
        assert_eq!(ac2, vec![path(&r2, &["d"]), path(&r2, &["d", "d"])]);
    }

    #[test]
    fn ac_members_are_sigma_normal() {
        let r2 = fixtures::r2();
        let c = path(&r2, &["c"]);
        for a in enumerate_ac(&r2, &c, 4).unwrap() {
            assert!(!a.starts_with(&c));
            assert!(!a.ends_with(&r2, &c));
            assert_eq!(a.range(&r2), c.source());
        }
    }

    #[test]
    fn ac_requires_basic_closed() {
        let g = fixtures::g_e1();
        let e = path(&g, &["e"]);
        assert!(enumerate_ac(&g, &e, 3).is_err());
    }

    #[test]
    fn cycles_connecting_fixture_values() {
        let r2 = fixtures::r2();
        let v = r2.vertex_by_name("v").unwrap();
        let cycles = cycles_connecting_to(&r2, v, 3).unwrap();
        assert_eq!(cycles, vec![path(&r2, &["c"]), path(&r2, &["d"])]);

        let g = fixtures::g_e1();
        let gv = g.vertex_by_name("v").unwrap();
        assert_eq!(cycles_connecting_to(&g, gv, 3).unwrap(), vec![path(&g, &["c"])]);

        let acyclic = Graph::new(
            vec!["a".into(), "b".into()],
            vec![("e".into(), "a".into(), "b".into())],
        )
        .unwrap();
        let a = acyclic.vertex_by_name("a").unwrap();
        assert!(cycles_connecting_to(&acyclic, a, 5).unwrap().is_empty());
    }

    #[test]
    fn taxonomy_implications() {
        // loop => cycle => simple => closed; cycle => basic;
        // source_loop => source_cycle & loop; source_cycle => maximal => cycle.
        for g in [
            fixtures::r1(),
            fixtures::r2(),
            fixtures::g_e1(),
            fixtures::g_s(),
            fixtures::g_c2(),
            fixtures::g_c2z(),
            fixtures::g_c2x(),
        ] {
            let v0 = VertexId(0);
            for cyc in cycles_connecting_to(&g, v0, g.edge_count()).unwrap() {
                let cl = classify_closed_path(&g, &cyc).unwrap();
                assert!(!cl.loop_ || cl.cycle);
                assert!(!cl.cycle || cl.simple);
                assert!(!cl.simple || cl.closed);
                assert!(!cl.cycle || cl.basic);
                assert!(!cl.source_loop || (cl.source_cycle && cl.loop_));
                assert!(!cl.source_cycle || cl.maximal_cycle);
                assert!(!cl.maximal_cycle || cl.cycle);
            }
        }
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Graph::new(
            vec!["v".into(), "v".into()],
            vec![]
        )
        .is_err());
        assert!(Graph::new(
            vec!["v".into()],
            vec![("v".into(), "v".into(), "v".into())]
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = fixtures::g_c2z();
        let text = serde_json::to_string(&g.to_spec()).unwrap();
        let back = Graph::from_json(&text).unwrap();
        assert_eq!(g, back);
    }
}
