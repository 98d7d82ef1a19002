//! Shared helpers for the integration suites: fixture setups and seeded
//! random generators for elements, basis vectors and graphs.

#![allow(dead_code)]

use lpa_core::{
    fixtures, parse_path, Algebra, ChenModule, Division, Element, Field, Graph, Monomial, Path,
    PruferModule, Scalar, VertexId,
};
use rand::rngs::StdRng;
use rand::Rng;

/// The canonical fixtures with their standard cycle expressions.
pub fn fixture_list() -> Vec<(&'static str, Graph, &'static str)> {
    vec![
        ("r1", fixtures::r1(), "c"),
        ("r2", fixtures::r2(), "c"),
        ("g_e1", fixtures::g_e1(), "c"),
        ("g_s", fixtures::g_s(), "c"),
        ("g_c2", fixtures::g_c2(), "e1.e2"),
        ("g_c2z", fixtures::g_c2z(), "e1.e2"),
        ("g_c2x", fixtures::g_c2x(), "e1.e2"),
    ]
}

/// Fixtures whose standard cycle is a source loop.
pub fn source_loop_fixtures() -> Vec<(&'static str, Graph, &'static str)> {
    vec![("r1", fixtures::r1(), "c"), ("g_s", fixtures::g_s(), "c")]
}

pub fn division_for(graph: &Graph, cycle: &str) -> Division {
    let alg = Algebra::new(graph.clone(), Field::Rationals);
    let c = parse_path(alg.graph(), cycle).unwrap();
    Division::new(&alg, &c).unwrap()
}

pub fn prufer_for(graph: &Graph, cycle: &str) -> PruferModule {
    let alg = Algebra::new(graph.clone(), Field::Rationals);
    let c = parse_path(alg.graph(), cycle).unwrap();
    PruferModule::new(&alg, &c).unwrap()
}

/// A random path of length at most `max_len` ending at `end`, walked
/// backwards along in-edges; may come out empty (the vertex itself).
pub fn random_path_into(rng: &mut StdRng, graph: &Graph, end: VertexId, max_len: usize) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut edges: Vec<lpa_core::EdgeId> = Vec::new();
    let mut at = end;
    for _ in 0..len {
        let ins = graph.in_edges(at);
        if ins.is_empty() {
            break;
        }
        let e = ins[rng.gen_range(0..ins.len())];
        edges.insert(0, e);
        at = graph.source(e);
    }
    if edges.is_empty() {
        Path::vertex(end)
    } else {
        Path::from_edges(graph, edges).unwrap()
    }
}

pub fn random_scalar(rng: &mut StdRng, field: &Field) -> Scalar {
    let num = rng.gen_range(-6i64..=6);
    let den = rng.gen_range(1i64..=4);
    field
        .ratio(&num.into(), &den.into())
        .expect("nonzero denominator")
}

pub fn random_nonzero_scalar(rng: &mut StdRng, field: &Field) -> Scalar {
    loop {
        let s = random_scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random element with at most `max_terms` monomials, each of degree at
/// most `max_degree` (split across the real and ghost parts).
pub fn random_element(
    rng: &mut StdRng,
    alg: &Algebra,
    max_terms: usize,
    max_degree: usize,
) -> Element {
    let graph = alg.graph();
    let nterms = rng.gen_range(0..=max_terms);
    let mut raw = Vec::new();
    for _ in 0..nterms {
        let nv = graph.vertex_count();
        let range = VertexId(rng.gen_range(0..nv));
        let real_budget = rng.gen_range(0..=max_degree);
        let ghost_budget = max_degree - real_budget;
        let real = random_path_into(rng, graph, range, real_budget);
        let ghost = random_path_into(rng, graph, range, ghost_budget);
        raw.push((
            Monomial::new(graph, real, ghost),
            random_scalar(rng, &alg.field()),
        ));
    }
    alg.normalize(raw)
}

/// A random vector in the cyclic module attached to `chen`, mixing the
/// generator with reachable translates.
pub fn random_chen_vector(rng: &mut StdRng, chen: &ChenModule, moves: usize) -> lpa_core::ChenVector {
    let alg = chen.algebra();
    let mut v = chen.cinf();
    for _ in 0..moves {
        let x = random_element(rng, alg, 2, 3);
        let moved = chen.act(&x, &v);
        if !moved.is_zero() {
            v = moved;
        }
    }
    v
}

/// A random basis vector: a single normalized prefix with coefficient one.
pub fn random_chen_basis(rng: &mut StdRng, chen: &ChenModule) -> lpa_core::ChenVector {
    let alg = chen.algebra();
    let graph = alg.graph();
    for _ in 0..32 {
        let prefix = random_path_into(rng, graph, chen.cycle().source(), 4);
        if let Ok(p) = chen.sigma_normalize(&prefix) {
            return lpa_core::ChenVector::basis(p, alg.field().one());
        }
    }
    chen.cinf()
}

/// A random element of the limit module with canonical level at most
/// `max_level`, expressed through random expansion coefficients.
pub fn random_prufer(
    rng: &mut StdRng,
    module: &PruferModule,
    max_level: usize,
) -> lpa_core::PruferElement {
    let level = rng.gen_range(1..=max_level);
    let x = random_element(rng, module.algebra(), 3, 3);
    let m = module.make_element(&x, level).unwrap();
    module.canonical(m)
}

/// A random graph with up to `max_v` vertices and `max_e` edges.
pub fn random_graph(rng: &mut StdRng, max_v: usize, max_e: usize) -> Graph {
    let nv = rng.gen_range(1..=max_v);
    let ne = rng.gen_range(0..=max_e);
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..ne)
        .map(|i| {
            let s = rng.gen_range(0..nv);
            let d = rng.gen_range(0..nv);
            (format!("e{i}"), format!("v{s}"), format!("v{d}"))
        })
        .collect();
    Graph::new(vertices, edges).unwrap()
}
