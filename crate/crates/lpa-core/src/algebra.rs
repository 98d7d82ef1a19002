//! Elements of the Leavitt path algebra of a graph in canonical normal form,
//! with the ring operations and the star involution.
//!
//! A monomial is a pair of paths `a b*` with `r(a) = r(b)`. The linear basis
//! consists of all such pairs except those in which both paths end in the
//! same *special* edge of a vertex; the relation `v = sum_{s(e)=v} e e*`
//! rewrites the excluded pairs into basis monomials. By default the special
//! edge of a vertex is its first outgoing edge in declared order; any other
//! choice can be configured, and observable results do not depend on it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{is_negative, Field, Scalar};
use crate::graph::{EdgeId, Graph, Path, VertexId};

/// The pair `real . ghost*` with `r(real) = r(ghost)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    real: Path,
    ghost: Path,
}

impl Monomial {
    pub fn new(graph: &Graph, real: Path, ghost: Path) -> Monomial {
        debug_assert_eq!(real.range(graph), ghost.range(graph));
        Monomial { real, ghost }
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            real: Path::vertex(v),
            ghost: Path::vertex(v),
        }
    }

    pub fn real(&self) -> &Path {
        &self.real
    }

    pub fn ghost(&self) -> &Path {
        &self.ghost
    }

    pub fn star(&self) -> Monomial {
        Monomial {
            real: self.ghost.clone(),
            ghost: self.real.clone(),
        }
    }

    pub fn is_real_path(&self) -> bool {
        self.ghost.is_empty()
    }

    /// The common range vertex of the two paths.
    pub fn range(&self, graph: &Graph) -> VertexId {
        self.real.range(graph)
    }

    fn order_key(&self) -> (usize, usize, Vec<EdgeId>, Vec<EdgeId>, VertexId, VertexId) {
        (
            self.real.len(),
            self.ghost.len(),
            self.real.edges().to_vec(),
            self.ghost.edges().to_vec(),
            self.real.source(),
            self.ghost.source(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

/// An algebra element: a finite combination of canonical monomials with
/// nonzero coefficients, ordered by `(|real|, |ghost|, lex, lex)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest `|real| + |ghost|` among the monomials; 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.real.len() + m.ghost.len())
            .max()
            .unwrap_or(0)
    }
}

/// The Leavitt path algebra of a graph over an exact field, carrying the
/// canonical-basis configuration. All element operations live here.
#[derive(Debug, Clone)]
pub struct Algebra {
    graph: Arc<Graph>,
    field: Field,
    /// Per vertex, the special edge used by the basis; `None` at sinks.
    special: Vec<Option<EdgeId>>,
}

impl Algebra {
    pub fn new(graph: Graph, field: Field) -> Algebra {
        let special = (0..graph.vertex_count())
            .map(|v| graph.out_edges(VertexId(v)).first().copied())
            .collect();
        Algebra {
            graph: Arc::new(graph),
            field,
            special,
        }
    }

    /// Overrides the special edge at the given vertices. Each pair is
    /// `(vertex, edge)` with `s(edge) = vertex`.
    pub fn with_special_edges(mut self, overrides: &[(VertexId, EdgeId)]) -> Result<Algebra> {
        for &(v, e) in overrides {
            if self.graph.source(e) != v {
                return Err(Error::precondition(format!(
                    "edge `{}` does not start at `{}`",
                    self.graph.edge_name(e),
                    self.graph.vertex_name(v)
                )));
            }
            self.special[v.0] = Some(e);
        }
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.special[v.0]
    }

    /// The multiplicative identity: the sum of all vertices.
    pub fn one(&self) -> Element {
        let mut terms = BTreeMap::new();
        for v in self.graph.vertices() {
            terms.insert(Monomial::vertex(v), self.field.one());
        }
        Element { terms }
    }

    pub fn zero(&self) -> Element {
        Element::zero()
    }

    pub fn vertex(&self, v: VertexId) -> Element {
        self.monomial(Monomial::vertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> Element {
        let real = Path::from_edges(&self.graph, vec![e]).expect("edge is a path");
        let ghost = Path::vertex(self.graph.range(e));
        self.monomial(Monomial { real, ghost })
    }

    pub fn ghost_edge(&self, e: EdgeId) -> Element {
        self.edge(e).map_star()
    }

    pub fn path(&self, p: &Path) -> Element {
        let ghost = Path::vertex(p.range(&self.graph));
        self.monomial(Monomial {
            real: p.clone(),
            ghost,
        })
    }

    pub fn monomial(&self, m: Monomial) -> Element {
        self.normalize(vec![(m, self.field.one())])
    }

    pub fn scalar(&self, k: Scalar) -> Element {
        self.scale(&k, &self.one())
    }

    /// `true` when neither path ends in the special edge shared by both.
    fn is_canonical(&self, m: &Monomial) -> bool {
        match (m.real.edges().last(), m.ghost.edges().last()) {
            (Some(&a), Some(&b)) if a == b => self.special[self.graph.source(a).0] != Some(a),
            _ => true,
        }
    }

    /// Rewrites a raw combination to the canonical basis: while some monomial
    /// has both paths ending in the special edge `f` of `w = s(f)`, replace
    /// it using `w = sum_{s(e)=w} e e*`. Each step either shortens a monomial
    /// or produces equal-length monomials ending in non-special edges, so the
    /// rewriting terminates.
    pub fn normalize(&self, raw: Vec<(Monomial, Scalar)>) -> Element {
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        let mut work = raw;
        while let Some((m, k)) = work.pop() {
            if k.is_zero() {
                continue;
            }
            if self.is_canonical(&m) {
                let entry = out.entry(m).or_insert_with(|| self.field.zero());
                *entry = entry.add(&k);
                continue;
            }
            let f = *m.real.edges().last().unwrap();
            let w = self.graph.source(f);
            let real_head = m.real.prefix(m.real.len() - 1);
            let ghost_head = m.ghost.prefix(m.ghost.len() - 1);
            work.push((
                Monomial {
                    real: real_head.clone(),
                    ghost: ghost_head.clone(),
                },
                k.clone(),
            ));
            for e in self.graph.out_edges(w) {
                if e == f {
                    continue;
                }
                let tail = Path::from_edges(&self.graph, vec![e]).unwrap();
                work.push((
                    Monomial {
                        real: real_head.concat(&self.graph, &tail).unwrap(),
                        ghost: ghost_head.concat(&self.graph, &tail).unwrap(),
                    },
                    k.neg(),
                ));
            }
        }
        out.retain(|_, k| !k.is_zero());
        Element { terms: out }
    }

    /// Re-expresses an element in this algebra's basis (used to transport
    /// elements between algebras that differ only in special-edge choice).
    pub fn renormalize(&self, x: &Element) -> Element {
        self.normalize(x.terms.iter().map(|(m, k)| (m.clone(), k.clone())).collect())
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        let mut terms = x.terms.clone();
        for (m, k) in &y.terms {
            let entry = terms.entry(m.clone()).or_insert_with(|| self.field.zero());
            *entry = entry.add(k);
        }
        terms.retain(|_, k| !k.is_zero());
        Element { terms }
    }

    pub fn neg(&self, x: &Element) -> Element {
        Element {
            terms: x.terms.iter().map(|(m, k)| (m.clone(), k.neg())).collect(),
        }
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, k: &Scalar, x: &Element) -> Element {
        if k.is_zero() {
            return Element::zero();
        }
        Element {
            terms: x
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Product of two monomials, resolved by `e* e' = delta r(e)`:
    /// `(a b*)(g d*)` is `(a g') d*` when `g = b g'`, `a (d b')*` when
    /// `b = g b'`, and zero otherwise.
    fn monomial_product(&self, x: &Monomial, y: &Monomial) -> Option<Monomial> {
        let b = &x.ghost;
        let g = &y.real;
        if g.starts_with(b) {
            let rest = g.suffix(&self.graph, b.len());
            let real = x.real.concat(&self.graph, &rest).ok()?;
            Some(Monomial {
                real,
                ghost: y.ghost.clone(),
            })
        } else if b.starts_with(g) {
            let rest = b.suffix(&self.graph, g.len());
            let ghost = y.ghost.concat(&self.graph, &rest).ok()?;
            Some(Monomial {
                real: x.real.clone(),
                ghost,
            })
        } else {
            None
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut raw = Vec::new();
        for (mx, kx) in &x.terms {
            for (my, ky) in &y.terms {
                if let Some(m) = self.monomial_product(mx, my) {
                    raw.push((m, kx.mul(ky)));
                }
            }
        }
        self.normalize(raw)
    }

    pub fn power(&self, x: &Element, n: usize) -> Element {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// The star involution `(a b*)* = b a*`, extended K-linearly.
    pub fn star(&self, x: &Element) -> Element {
        x.map_star()
    }

    /// `c - 1` for a closed path `c`.
    pub fn cycle_minus_one(&self, c: &Path) -> Element {
        self.sub(&self.path(c), &self.one())
    }

    /// `1 + c + ... + c^{k-1}`; the empty sum for `k = 0`. The constant
    /// term is the full identity, not the base vertex.
    pub fn geometric_sum(&self, c: &Path, k: usize) -> Element {
        let celem = self.path(c);
        let mut acc = self.zero();
        let mut pow = self.one();
        for _ in 0..k {
            acc = self.add(&acc, &pow);
            pow = self.mul(&pow, &celem);
        }
        acc
    }

    /// Renders an element in the expression grammar with canonical term
    /// order; `0` for the zero element.
    pub fn to_expr_string(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, k)) in x.terms.iter().enumerate() {
            let (sign_negative, magnitude) = if is_negative(k) {
                (true, k.neg())
            } else {
                (false, k.clone())
            };
            if i == 0 {
                if sign_negative {
                    out.push('-');
                }
            } else if sign_negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push(' ');
            }
            out.push_str(&self.monomial_string(m));
        }
        out
    }

    fn monomial_string(&self, m: &Monomial) -> String {
        let mut atoms: Vec<String> = Vec::new();
        push_run_length_atoms(&self.graph, m.real.edges(), false, &mut atoms);
        let reversed: Vec<EdgeId> = m.ghost.edges().iter().rev().copied().collect();
        push_run_length_atoms(&self.graph, &reversed, true, &mut atoms);
        if atoms.is_empty() {
            return self.graph.vertex_name(m.real.source()).to_string();
        }
        atoms.join(".")
    }
}

impl Element {
    fn map_star(&self) -> Element {
        // The canonical-basis condition is symmetric in the two paths, so
        // starring permutes basis monomials.
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.star(), k.clone()))
            .collect();
        Element { terms }
    }

    pub fn display<'a>(&'a self, alg: &'a Algebra) -> ElementDisplay<'a> {
        ElementDisplay { element: self, alg }
    }
}

pub struct ElementDisplay<'a> {
    element: &'a Element,
    alg: &'a Algebra,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alg.to_expr_string(self.element))
    }
}

fn push_run_length_atoms(graph: &Graph, edges: &[EdgeId], starred: bool, out: &mut Vec<String>) {
    let mut i = 0;
    while i < edges.len() {
        let mut j = i + 1;
        while j < edges.len() && edges[j] == edges[i] {
            j += 1;
        }
        let name = graph.edge_name(edges[i]);
        let star = if starred { "*" } else { "" };
        if j - i == 1 {
            out.push(format!("{name}{star}"));
        } else {
            out.push(format!("{name}^{}{star}", j - i));
        }
        i = j;
    }
}
