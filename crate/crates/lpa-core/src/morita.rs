//! Graph reductions that preserve the module category: removing source
//! vertices and collapsing a source cycle to a loop, together with the
//! algebra homomorphism realized on generators.

use crate::algebra::{Algebra, Element, Monomial};
use crate::error::{Error, Result};
use crate::graph::{classify_closed_path, Graph, Path, VertexId};

/// A homomorphism from the algebra of a reduced graph into the algebra of
/// the original graph, represented on generators: vertices map to vertices,
/// edges map to real paths, and ghost generators map star-compatibly.
#[derive(Debug, Clone)]
pub struct GeneratorMap {
    source: Graph,
    target: Graph,
    vertex_images: Vec<VertexId>,
    edge_images: Vec<Path>,
}

impl GeneratorMap {
    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn identity(graph: &Graph) -> GeneratorMap {
        GeneratorMap {
            source: graph.clone(),
            target: graph.clone(),
            vertex_images: graph.vertices().collect(),
            edge_images: graph
                .edge_ids()
                .map(|e| Path::from_edges(graph, vec![e]).unwrap())
                .collect(),
        }
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vertex_images[v.0]
    }

    pub fn edge_image(&self, e: crate::graph::EdgeId) -> &Path {
        &self.edge_images[e.0]
    }

    /// The image of a path: concatenation of the edge images.
    pub fn map_path(&self, p: &Path) -> Path {
        let mut acc = Path::vertex(self.vertex_image(p.source()));
        for &e in p.edges() {
            acc = acc
                .concat(&self.target, &self.edge_images[e.0])
                .expect("generator images compose");
        }
        acc
    }

    /// The multiplicative, linear, star-compatible extension applied to an
    /// element over the reduced graph.
    pub fn eval(&self, target_alg: &Algebra, x: &Element) -> Element {
        debug_assert_eq!(target_alg.graph(), &self.target);
        let mut raw = Vec::new();
        for (mono, k) in x.terms() {
            let real = self.map_path(mono.real());
            let ghost = self.map_path(mono.ghost());
            raw.push((Monomial::new(&self.target, real, ghost), k.clone()));
        }
        target_alg.normalize(raw)
    }

    /// The image of the reduced graph's identity: the corner idempotent.
    pub fn corner_idempotent(&self, target_alg: &Algebra) -> Element {
        let mut acc = target_alg.zero();
        for v in self.source.vertices() {
            acc = target_alg.add(&acc, &target_alg.vertex(self.vertex_image(v)));
        }
        acc
    }

    /// Composition `self . inner`, where `inner` lands in this map's source.
    pub fn compose(&self, inner: &GeneratorMap) -> GeneratorMap {
        debug_assert_eq!(inner.target, self.source);
        GeneratorMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            vertex_images: inner
                .vertex_images
                .iter()
                .map(|&v| self.vertex_image(v))
                .collect(),
            edge_images: inner
                .edge_images
                .iter()
                .map(|p| self.map_path(p))
                .collect(),
        }
    }
}

/// Removes a source vertex and its outgoing edges. The returned map is the
/// inclusion of the smaller algebra as the corner cut out by `1 - z`.
pub fn source_eliminate(graph: &Graph, z: VertexId) -> Result<(Graph, GeneratorMap)> {
    if !graph.is_source_vertex(z) {
        return Err(Error::precondition(format!(
            "`{}` is not a source vertex",
            graph.vertex_name(z)
        )));
    }
    if graph.vertex_count() < 2 {
        return Err(Error::precondition(
            "cannot remove the only vertex",
        ));
    }
    let vertices: Vec<String> = graph
        .vertices()
        .filter(|&v| v != z)
        .map(|v| graph.vertex_name(v).to_string())
        .collect();
    let edges: Vec<(String, String, String)> = graph
        .edge_ids()
        .filter(|&e| graph.source(e) != z)
        .map(|e| {
            (
                graph.edge_name(e).to_string(),
                graph.vertex_name(graph.source(e)).to_string(),
                graph.vertex_name(graph.range(e)).to_string(),
            )
        })
        .collect();
    let reduced = Graph::new(vertices, edges)?;
    let vertex_images = reduced
        .vertices()
        .map(|v| graph.vertex_by_name(reduced.vertex_name(v)).unwrap())
        .collect();
    let edge_images = reduced
        .edge_ids()
        .map(|e| {
            let orig = graph.edge_by_name(reduced.edge_name(e)).unwrap();
            Path::from_edges(graph, vec![orig]).unwrap()
        })
        .collect();
    let map = GeneratorMap {
        source: reduced.clone(),
        target: graph.clone(),
        vertex_images,
        edge_images,
    };
    Ok((reduced, map))
}

fn fresh_name(base: &str, taken: &mut std::collections::HashSet<String>) -> String {
    if taken.insert(base.to_string()) {
        return base.to_string();
    }
    let mut i = 1;
    loop {
        let candidate = format!("{base}_{i}");
        if taken.insert(candidate.clone()) {
            return candidate;
        }
        i += 1;
    }
}

/// Collapses a source cycle `c = e_1 ... e_n` (n >= 2) based at `v`: the
/// other cycle vertices are deleted, a loop `d` is added at `v`, and each
/// exit `g` of the cycle becomes an edge `f_g : v -> r(g)`. The map sends
/// `d` to the whole cycle and `f_g` to `e_1 ... e_{i-1} g`.
pub fn collapse_source_cycle(graph: &Graph, cycle: &Path) -> Result<(Graph, GeneratorMap)> {
    let class = classify_closed_path(graph, cycle)?;
    if !class.source_cycle {
        return Err(Error::precondition(format!(
            "`{}` is not a source cycle",
            cycle.display(graph)
        )));
    }
    if cycle.len() < 2 {
        return Err(Error::precondition(
            "the cycle is already a loop; nothing to collapse",
        ));
    }
    let v = cycle.source();
    let cycle_vertices: Vec<VertexId> = cycle.edges().iter().map(|&e| graph.source(e)).collect();
    let is_cycle_vertex = |w: VertexId| cycle_vertices.contains(&w);
    let cycle_edges: std::collections::HashSet<_> = cycle.edges().iter().copied().collect();

    let vertices: Vec<String> = graph
        .vertices()
        .filter(|&w| w == v || !is_cycle_vertex(w))
        .map(|w| graph.vertex_name(w).to_string())
        .collect();
    let mut taken: std::collections::HashSet<String> = vertices.iter().cloned().collect();
    for e in graph.edge_ids() {
        if !cycle_edges.contains(&e) && !is_cycle_vertex(graph.source(e)) {
            taken.insert(graph.edge_name(e).to_string());
        }
    }

    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut images: Vec<Path> = Vec::new();
    let vname = graph.vertex_name(v).to_string();
    // The collapsed loop is declared first at v, then one edge per exit.
    let d_name = fresh_name("d", &mut taken);
    edges.push((d_name, vname.clone(), vname.clone()));
    images.push(cycle.clone());
    for g in graph.edge_ids() {
        if cycle_edges.contains(&g) || !is_cycle_vertex(graph.source(g)) {
            continue;
        }
        if is_cycle_vertex(graph.range(g)) {
            return Err(Error::Internal(
                "a source cycle cannot receive an exit edge".into(),
            ));
        }
        let i = cycle
            .edges()
            .iter()
            .position(|&e| graph.source(e) == graph.source(g))
            .unwrap();
        let name = fresh_name(&format!("f_{}", graph.edge_name(g)), &mut taken);
        edges.push((
            name,
            vname.clone(),
            graph.vertex_name(graph.range(g)).to_string(),
        ));
        let image = cycle
            .prefix(i)
            .concat(graph, &Path::from_edges(graph, vec![g]).unwrap())
            .unwrap();
        images.push(image);
    }
    for e in graph.edge_ids() {
        if cycle_edges.contains(&e) || is_cycle_vertex(graph.source(e)) {
            continue;
        }
        edges.push((
            graph.edge_name(e).to_string(),
            graph.vertex_name(graph.source(e)).to_string(),
            graph.vertex_name(graph.range(e)).to_string(),
        ));
        images.push(Path::from_edges(graph, vec![e]).unwrap());
    }
    let reduced = Graph::new(vertices, edges)?;
    let vertex_images = reduced
        .vertices()
        .map(|w| graph.vertex_by_name(reduced.vertex_name(w)).unwrap())
        .collect();
    let map = GeneratorMap {
        source: reduced.clone(),
        target: graph.clone(),
        vertex_images,
        edge_images: images,
    };
    Ok((reduced, map))
}

#[derive(Debug, Clone)]
pub enum ReduceStep {
    SourceEliminate { vertex: String },
    CollapseSourceCycle,
}

/// One stage of the reduction pipeline: the step taken, the resulting
/// graph and cycle, and the generator map back into the previous graph.
#[derive(Debug, Clone)]
pub struct ReduceStage {
    pub step: ReduceStep,
    pub graph: Graph,
    pub cycle: Path,
    pub map: GeneratorMap,
}

#[derive(Debug, Clone)]
pub struct ReduceResult {
    pub final_graph: Graph,
    pub loop_path: Path,
    pub stages: Vec<ReduceStage>,
}

impl ReduceResult {
    /// The composite map from the final graph's algebra into the original.
    pub fn total_map(&self, original: &Graph) -> GeneratorMap {
        let mut acc = GeneratorMap::identity(original);
        for stage in &self.stages {
            acc = acc.compose(&stage.map);
        }
        acc
    }
}

/// Reduces a maximal cycle to a source loop: repeatedly eliminate the
/// lexicographically least source vertex that connects to the cycle, then
/// collapse when the cycle has length at least 2.
pub fn reduce_to_source_loop(graph: &Graph, cycle: &Path) -> Result<ReduceResult> {
    let class = classify_closed_path(graph, cycle)?;
    if !class.maximal_cycle {
        return Err(Error::precondition(format!(
            "`{}` is not a maximal cycle",
            cycle.display(graph)
        )));
    }
    let mut current = graph.clone();
    let mut current_cycle = cycle.clone();
    let mut stages: Vec<ReduceStage> = Vec::new();
    loop {
        let class = classify_closed_path(&current, &current_cycle)?;
        if class.source_cycle {
            break;
        }
        let mut sources: Vec<VertexId> = current
            .vertices()
            .filter(|&z| {
                current.is_source_vertex(z)
                    && current
                        .connects_to(z, current_cycle.source())
                        .unwrap_or(false)
                    && z != current_cycle.source()
            })
            .collect();
        sources.sort_by_key(|&z| current.vertex_name(z).to_string());
        let Some(&z) = sources.first() else {
            let blocking = current
                .edge_ids()
                .find(|&e| {
                    !current_cycle.edges().contains(&e)
                        && current_cycle
                            .edges()
                            .iter()
                            .any(|&ce| current.source(ce) == current.range(e))
                })
                .map(|e| current.vertex_name(current.source(e)).to_string())
                .unwrap_or_else(|| "<unknown>".to_string());
            return Err(Error::precondition(format!(
                "reduction is stuck: no source vertex remains but `{blocking}` still feeds the cycle"
            )));
        };
        let name = current.vertex_name(z).to_string();
        let (reduced, map) = source_eliminate(&current, z)?;
        let new_cycle = Path::from_edges(
            &reduced,
            current_cycle
                .edges()
                .iter()
                .map(|&e| reduced.edge_by_name(current.edge_name(e)).unwrap())
                .collect(),
        )?;
        stages.push(ReduceStage {
            step: ReduceStep::SourceEliminate { vertex: name },
            graph: reduced.clone(),
            cycle: new_cycle.clone(),
            map,
        });
        current = reduced;
        current_cycle = new_cycle;
    }
    if current_cycle.len() >= 2 {
        let (reduced, map) = collapse_source_cycle(&current, &current_cycle)?;
        let loop_edge = reduced.out_edges(
            reduced
                .vertex_by_name(current.vertex_name(current_cycle.source()))
                .unwrap(),
        )[0];
        let loop_path = Path::from_edges(&reduced, vec![loop_edge])?;
        stages.push(ReduceStage {
            step: ReduceStep::CollapseSourceCycle,
            graph: reduced.clone(),
            cycle: loop_path.clone(),
            map,
        });
        current = reduced;
        current_cycle = loop_path;
    }
    Ok(ReduceResult {
        final_graph: current,
        loop_path: current_cycle,
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::fixtures;
    use crate::parse::{parse_element, parse_path};

    #[test]
    fn eliminate_source_from_c2z() {
        let g = fixtures::g_c2z();
        let z = g.vertex_by_name("z").unwrap();
        let (reduced, map) = source_eliminate(&g, z).unwrap();
        assert_eq!(reduced, fixtures::g_c2());
        let alg = Algebra::new(g.clone(), Field::Rationals);
        let reduced_alg = Algebra::new(reduced.clone(), Field::Rationals);
        let x = parse_element(&reduced_alg, "e1.e2 - 2 v1").unwrap();
        let image = map.eval(&alg, &x);
        assert_eq!(image, parse_element(&alg, "e1.e2 - 2 v1").unwrap());
    }

    #[test]
    fn eliminate_source_from_g_e1() {
        let g = fixtures::g_e1();
        let u = g.vertex_by_name("u").unwrap();
        let (reduced, _) = source_eliminate(&g, u).unwrap();
        assert_eq!(reduced.vertex_count(), 1);
        assert_eq!(reduced.edge_count(), 1);
        assert_eq!(reduced.edge_name(crate::graph::EdgeId(0)), "c");
    }

    #[test]
    fn eliminate_rejects_non_source() {
        let g = fixtures::g_c2();
        let v1 = g.vertex_by_name("v1").unwrap();
        assert!(source_eliminate(&g, v1).is_err());
        let r1 = fixtures::r1();
        let v = r1.vertex_by_name("v").unwrap();
        assert!(source_eliminate(&r1, v).is_err());
    }

    #[test]
    fn collapse_c2() {
        let g = fixtures::g_c2();
        let c = parse_path(&g, "e1.e2").unwrap();
        let (reduced, map) = collapse_source_cycle(&g, &c).unwrap();
        assert_eq!(reduced.vertex_count(), 1);
        assert_eq!(reduced.edge_count(), 1);
        assert_eq!(reduced.edge_name(crate::graph::EdgeId(0)), "d");
        let alg = Algebra::new(g.clone(), Field::Rationals);
        let reduced_alg = Algebra::new(reduced.clone(), Field::Rationals);
        let d = parse_element(&reduced_alg, "d").unwrap();
        assert_eq!(map.eval(&alg, &d), parse_element(&alg, "e1.e2").unwrap());
        let dstar = parse_element(&reduced_alg, "d*").unwrap();
        assert_eq!(map.eval(&alg, &dstar), parse_element(&alg, "e2*.e1*").unwrap());
        // d - 1_F maps to c - v1.
        let dm1 = parse_element(&reduced_alg, "d - 1").unwrap();
        assert_eq!(map.eval(&alg, &dm1), parse_element(&alg, "e1.e2 - v1").unwrap());
    }

    #[test]
    fn collapse_c2_with_exit() {
        let g = fixtures::g_c2x();
        let c = parse_path(&g, "e1.e2").unwrap();
        let (reduced, map) = collapse_source_cycle(&g, &c).unwrap();
        assert_eq!(reduced.vertex_count(), 2);
        assert_eq!(reduced.edge_count(), 2);
        let fg = reduced.edge_by_name("f_g").unwrap();
        assert_eq!(reduced.vertex_name(reduced.source(fg)), "v1");
        assert_eq!(reduced.vertex_name(reduced.range(fg)), "w");
        let alg = Algebra::new(g.clone(), Field::Rationals);
        let reduced_alg = Algebra::new(reduced.clone(), Field::Rationals);
        let x = parse_element(&reduced_alg, "f_g").unwrap();
        // g leaves from v2 = r(e1), so f_g maps to e1.g.
        assert_eq!(map.eval(&alg, &x), parse_element(&alg, "e1.g").unwrap());
    }

    #[test]
    fn collapse_rejects_loops_and_non_source_cycles() {
        let r1 = fixtures::r1();
        let c = parse_path(&r1, "c").unwrap();
        assert!(collapse_source_cycle(&r1, &c).is_err());
        let gz = fixtures::g_c2z();
        let cz = parse_path(&gz, "e1.e2").unwrap();
        assert!(collapse_source_cycle(&gz, &cz).is_err());
    }

    #[test]
    fn collapse_avoids_name_collisions() {
        // A source 2-cycle where `d` and `f_g` are already taken.
        let g = Graph::new(
            vec!["v1".into(), "v2".into(), "w".into(), "d".into()],
            vec![
                ("e1".into(), "v1".into(), "v2".into()),
                ("e2".into(), "v2".into(), "v1".into()),
                ("g".into(), "v2".into(), "w".into()),
                ("f_g".into(), "w".into(), "d".into()),
            ],
        )
        .unwrap();
        let c = parse_path(&g, "e1.e2").unwrap();
        let (reduced, _) = collapse_source_cycle(&g, &c).unwrap();
        assert!(reduced.edge_by_name("d_1").is_some());
        assert!(reduced.edge_by_name("f_g_1").is_some());
    }

    #[test]
    fn reduce_pipelines() {
        let gz = fixtures::g_c2z();
        let cz = parse_path(&gz, "e1.e2").unwrap();
        let res = reduce_to_source_loop(&gz, &cz).unwrap();
        assert_eq!(res.stages.len(), 2);
        assert_eq!(res.final_graph.vertex_count(), 1);
        assert_eq!(res.loop_path.len(), 1);

        let ge1 = fixtures::g_e1();
        let c = parse_path(&ge1, "c").unwrap();
        let res = reduce_to_source_loop(&ge1, &c).unwrap();
        assert_eq!(res.stages.len(), 1);
        assert_eq!(res.final_graph.edge_count(), 1);

        let r1 = fixtures::r1();
        let c1 = parse_path(&r1, "c").unwrap();
        let res = reduce_to_source_loop(&r1, &c1).unwrap();
        assert!(res.stages.is_empty());
        assert_eq!(res.final_graph, r1);
    }

    #[test]
    fn reduce_rejects_non_maximal() {
        let r2 = fixtures::r2();
        let c = parse_path(&r2, "c").unwrap();
        assert!(reduce_to_source_loop(&r2, &c).is_err());
    }

    #[test]
    fn relations_map_to_zero() {
        for (g, cyc) in [
            (fixtures::g_c2z(), "e1.e2"),
            (fixtures::g_c2x(), "e1.e2"),
        ] {
            let c = parse_path(&g, cyc).unwrap();
            let res = reduce_to_source_loop(&g, &c).unwrap();
            let alg = Algebra::new(g.clone(), Field::Rationals);
            let theta = res.total_map(&g);
            let f_graph = &res.final_graph;
            // CK1 for every ghost/real pair of the reduced graph.
            for e in f_graph.edge_ids() {
                let ie = theta.eval(&alg, &Algebra::new(f_graph.clone(), Field::Rationals).edge(e));
                let ise = alg.star(&ie);
                for f in f_graph.edge_ids() {
                    let iff = theta
                        .eval(&alg, &Algebra::new(f_graph.clone(), Field::Rationals).edge(f));
                    let prod = alg.mul(&ise, &iff);
                    if e == f {
                        let r = theta.eval(
                            &alg,
                            &Algebra::new(f_graph.clone(), Field::Rationals)
                                .vertex(f_graph.range(e)),
                        );
                        assert_eq!(prod, r);
                    } else {
                        assert!(prod.is_zero());
                    }
                }
            }
            // CK2 at every non-sink vertex of the reduced graph.
            let f_alg = Algebra::new(f_graph.clone(), Field::Rationals);
            for v in f_graph.vertices() {
                if f_graph.is_sink(v) {
                    continue;
                }
                let mut acc = alg.zero();
                for e in f_graph.out_edges(v) {
                    let ie = theta.eval(&alg, &f_alg.edge(e));
                    acc = alg.add(&acc, &alg.mul(&ie, &alg.star(&ie)));
                }
                assert_eq!(acc, theta.eval(&alg, &f_alg.vertex(v)));
            }
        }
    }

    #[test]
    fn corner_containment() {
        let g = fixtures::g_c2x();
        let c = parse_path(&g, "e1.e2").unwrap();
        let res = reduce_to_source_loop(&g, &c).unwrap();
        let alg = Algebra::new(g.clone(), Field::Rationals);
        let theta = res.total_map(&g);
        let eps = theta.corner_idempotent(&alg);
        assert_eq!(alg.mul(&eps, &eps), eps);
        let f_alg = Algebra::new(res.final_graph.clone(), Field::Rationals);
        for text in ["d", "d^2 - 3 d*", "f_g.f_g*", "d.f_g + 2 w"] {
            let x = parse_element(&f_alg, text).unwrap();
            let ix = theta.eval(&alg, &x);
            assert_eq!(alg.mul(&alg.mul(&eps, &ix), &eps), ix);
        }
    }
}
