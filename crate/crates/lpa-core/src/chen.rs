//! The simple module carried by the tail-equivalence class of the periodic
//! infinite path `c^infty`, for a basic closed path `c`.
//!
//! Basis vectors are infinite paths `g c^infty`; each is stored through its
//! normalized finite prefix `g`, an element of `{1} u A_c u c^i A_c`. Ghost
//! generators act by unrolling the periodic tail lazily, at most
//! `|ghost| + |c|` edges per monomial, so all arithmetic stays exact and
//! finite.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element};
use crate::division::GElement;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::graph::{classify_closed_path, Path, VertexId};

/// The normalized prefix `g` of an infinite path `g c^infty`: a `c`-power
/// count plus a tail that neither starts nor ends with `c`. The prefix `1`
/// (the path `c^infty` itself) has power 0 and no tail; a nonzero power
/// forces a tail, since pure powers renormalize to `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPrefix {
    c_power: usize,
    tail: Option<Path>,
}

impl SigmaPrefix {
    pub fn one() -> SigmaPrefix {
        SigmaPrefix {
            c_power: 0,
            tail: None,
        }
    }

    pub fn with_tail(c_power: usize, tail: Path) -> SigmaPrefix {
        assert!(!tail.is_empty());
        SigmaPrefix {
            c_power,
            tail: Some(tail),
        }
    }

    pub fn is_one(&self) -> bool {
        self.tail.is_none()
    }

    pub fn c_power(&self) -> usize {
        self.c_power
    }

    pub fn tail(&self) -> Option<&Path> {
        self.tail.as_ref()
    }

    fn order_key(&self) -> (usize, usize, Vec<crate::graph::EdgeId>, VertexId) {
        match &self.tail {
            None => (self.c_power, 0, Vec::new(), VertexId(0)),
            Some(t) => (self.c_power, t.len(), t.edges().to_vec(), t.source()),
        }
    }
}

impl PartialOrd for SigmaPrefix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SigmaPrefix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

/// A finite combination of basis vectors `g c^infty`, keyed by prefix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChenVector {
    terms: BTreeMap<SigmaPrefix, Scalar>,
}

impl ChenVector {
    pub fn zero() -> ChenVector {
        ChenVector::default()
    }

    pub fn basis(prefix: SigmaPrefix, coeff: Scalar) -> ChenVector {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(prefix, coeff);
        }
        ChenVector { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SigmaPrefix, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &ChenVector) -> ChenVector {
        let mut terms = self.terms.clone();
        for (p, k) in &other.terms {
            match terms.get_mut(p) {
                Some(c) => *c = c.add(k),
                None => {
                    terms.insert(p.clone(), k.clone());
                }
            }
        }
        terms.retain(|_, k| !k.is_zero());
        ChenVector { terms }
    }

    pub fn scale(&self, k: &Scalar) -> ChenVector {
        if k.is_zero() {
            return ChenVector::zero();
        }
        ChenVector {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), k.mul(c)))
                .collect(),
        }
    }
}

/// The module structure: a validated basic closed path together with the
/// action, the prefix normalizer, and the mutually inverse linear maps
/// between the module and the remainder space.
#[derive(Debug, Clone)]
pub struct ChenModule {
    alg: Algebra,
    cycle: Path,
}

impl ChenModule {
    pub fn new(alg: &Algebra, cycle: &Path) -> Result<ChenModule> {
        let class = classify_closed_path(alg.graph(), cycle)?;
        if !(class.closed && class.basic) {
            return Err(Error::precondition(format!(
                "`{}` is not a basic closed path",
                cycle.display(alg.graph())
            )));
        }
        Ok(ChenModule {
            alg: alg.clone(),
            cycle: cycle.clone(),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn cycle(&self) -> &Path {
        &self.cycle
    }

    pub fn base_vertex(&self) -> VertexId {
        self.cycle.source()
    }

    /// The basis vector `c^infty`.
    pub fn cinf(&self) -> ChenVector {
        ChenVector::basis(SigmaPrefix::one(), self.alg.field().one())
    }

    /// Strips the maximal trailing `c`-power, then the maximal leading
    /// `c`-power; pure powers collapse to the prefix `1`. The input must
    /// range at `s(c)` so that `g c^infty` is an infinite path.
    pub fn sigma_normalize(&self, gamma: &Path) -> Result<SigmaPrefix> {
        self.alg.graph().check_path(gamma)?;
        if gamma.range(self.alg.graph()) != self.base_vertex() {
            return Err(Error::precondition(format!(
                "`{}` does not range at `{}` and cannot precede the periodic tail",
                gamma.display(self.alg.graph()),
                self.alg.graph().vertex_name(self.base_vertex())
            )));
        }
        let graph = self.alg.graph();
        let mut rest = gamma.clone();
        while rest.ends_with(graph, &self.cycle) {
            rest = rest.prefix(rest.len() - self.cycle.len());
        }
        if rest.is_empty() {
            return Ok(SigmaPrefix::one());
        }
        let mut power = 0;
        while rest.starts_with(&self.cycle) {
            rest = rest.suffix(graph, self.cycle.len());
            power += 1;
        }
        if rest.is_empty() {
            return Ok(SigmaPrefix::one());
        }
        Ok(SigmaPrefix::with_tail(power, rest))
    }

    /// The prefix as a finite path: `c^i . tail`, or the vertex `s(c)`.
    pub fn prefix_path(&self, prefix: &SigmaPrefix) -> Path {
        let graph = self.alg.graph();
        match &prefix.tail {
            None => Path::vertex(self.base_vertex()),
            Some(t) if prefix.c_power == 0 => t.clone(),
            Some(t) => self
                .cycle
                .repeat(graph, prefix.c_power)
                .expect("closed path power")
                .concat(graph, t)
                .expect("a positive power forces the tail to start on the cycle"),
        }
    }

    /// The action of an algebra element, extended bilinearly.
    pub fn act(&self, x: &Element, u: &ChenVector) -> ChenVector {
        let mut out = ChenVector::zero();
        for (prefix, ku) in &u.terms {
            for (mono, kx) in x.terms() {
                if let Some(res) = self.act_monomial(mono.real(), mono.ghost(), prefix) {
                    out = out.add(&ChenVector::basis(res, kx.mul(ku)));
                }
            }
        }
        out
    }

    /// One monomial `a b*` applied to one basis vector `g c^infty`: the
    /// ghost part strips `b` off the front of the infinite path (unrolling
    /// the periodic tail as needed), then the real part is prepended, then
    /// the result is renormalized. `None` is the zero vector.
    fn act_monomial(&self, real: &Path, ghost: &Path, prefix: &SigmaPrefix) -> Option<SigmaPrefix> {
        let graph = self.alg.graph();
        let g = self.prefix_path(prefix);
        let needed = ghost.len();
        if ghost.source() != g.source() {
            return None;
        }
        for i in 0..needed {
            let q_edge = if i < g.len() {
                g.edges()[i]
            } else {
                self.cycle.edges()[(i - g.len()) % self.cycle.len()]
            };
            if ghost.edges()[i] != q_edge {
                return None;
            }
        }
        let remaining = if needed <= g.len() {
            g.suffix(graph, needed)
        } else {
            let over = (needed - g.len()) % self.cycle.len();
            self.cycle.suffix(graph, over)
        };
        // `remaining` may be the whole cycle when the strip lands exactly on
        // a period boundary; renormalization absorbs it either way.
        let full = real.concat(graph, &remaining).ok()?;
        Some(
            self.sigma_normalize(&full)
                .expect("prefix ranges at the base vertex"),
        )
    }

    /// Right multiplication onto `c^infty`: `x -> x . c^infty`.
    pub fn rho_cinf(&self, x: &Element) -> ChenVector {
        self.act(x, &self.cinf())
    }

    /// The inverse linear map: each basis prefix reads back as the real
    /// path `c^i . tail` (the identity for the prefix `1`), landing in the
    /// remainder space.
    pub fn sigma(&self, u: &ChenVector) -> GElement {
        let mut scalar = self.alg.field().zero();
        let mut terms = BTreeMap::new();
        for (prefix, k) in &u.terms {
            if prefix.is_one() {
                scalar = scalar.add(k);
            } else {
                terms.insert(prefix.clone(), k.clone());
            }
        }
        GElement::from_parts(scalar, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::fixtures;
    use crate::parse::{parse_element, parse_path};

    fn setup(graph: crate::graph::Graph, cycle: &str) -> ChenModule {
        let alg = Algebra::new(graph, Field::Rationals);
        let c = parse_path(alg.graph(), cycle).unwrap();
        ChenModule::new(&alg, &c).unwrap()
    }

    #[test]
    fn sigma_normalize_strips_powers() {
        let m = setup(fixtures::r2(), "c");
        let g = m.algebra().graph().clone();
        let p = parse_path(&g, "d.c.d.c.c").unwrap();
        let n = m.sigma_normalize(&p).unwrap();
        assert_eq!(n.c_power(), 0);
        assert_eq!(n.tail().unwrap(), &parse_path(&g, "d.c.d").unwrap());

        let p2 = parse_path(&g, "c^2.d").unwrap();
        let n2 = m.sigma_normalize(&p2).unwrap();
        assert_eq!(n2.c_power(), 2);
        assert_eq!(n2.tail().unwrap(), &parse_path(&g, "d").unwrap());

        let r1 = setup(fixtures::r1(), "c");
        let g1 = r1.algebra().graph().clone();
        let c5 = parse_path(&g1, "c^5").unwrap();
        assert!(r1.sigma_normalize(&c5).unwrap().is_one());
    }

    #[test]
    fn sigma_normalize_range_mismatch() {
        let m = setup(fixtures::g_e1(), "c");
        let g = m.algebra().graph().clone();
        let u = Path::vertex(g.vertex_by_name("u").unwrap());
        assert!(m.sigma_normalize(&u).is_err());
    }

    #[test]
    fn ghost_loop_action_fixes_cinf() {
        let m = setup(fixtures::r1(), "c");
        let cstar = parse_element(m.algebra(), "c*").unwrap();
        assert_eq!(m.act(&cstar, &m.cinf()), m.cinf());
    }

    #[test]
    fn edge_action_prepends() {
        let m = setup(fixtures::g_e1(), "c");
        let g = m.algebra().graph().clone();
        let e = parse_element(m.algebra(), "e").unwrap();
        let got = m.act(&e, &m.cinf());
        let expected = ChenVector::basis(
            SigmaPrefix::with_tail(0, parse_path(&g, "e").unwrap()),
            m.algebra().field().one(),
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn mismatched_ghost_kills() {
        let m = setup(fixtures::r2(), "c");
        let dstar = parse_element(m.algebra(), "d*").unwrap();
        assert!(m.act(&dstar, &m.cinf()).is_zero());
    }

    #[test]
    fn rho_examples() {
        let m = setup(fixtures::g_e1(), "c");
        assert_eq!(m.rho_cinf(&m.algebra().one()), m.cinf());
        let cm1 = parse_element(m.algebra(), "c - 1").unwrap();
        assert!(m.rho_cinf(&cm1).is_zero());
        let u = parse_element(m.algebra(), "u").unwrap();
        assert!(m.rho_cinf(&u).is_zero());
    }

    #[test]
    fn sigma_reads_back() {
        let m = setup(fixtures::g_e1(), "c");
        assert!(m.sigma(&m.cinf()).is_scalar());
        assert!(m.sigma(&ChenVector::zero()).is_zero());
        let e = parse_element(m.algebra(), "e").unwrap();
        let two_e = m.act(&e, &m.cinf()).scale(&m.algebra().field().from_i64(2));
        let g = m.sigma(&two_e);
        let back = g.to_element(&m);
        assert_eq!(back, parse_element(m.algebra(), "2 e").unwrap());
    }

    #[test]
    fn action_respects_relations_on_samples() {
        for (graph, cyc) in [
            (fixtures::r2(), "c"),
            (fixtures::g_e1(), "c"),
            (fixtures::g_c2x(), "e1.e2"),
        ] {
            let m = setup(graph, cyc);
            let alg = m.algebra().clone();
            let g = alg.graph().clone();
            // A small pool of basis vectors reachable from c^infty.
            let mut pool = vec![m.cinf()];
            for e in g.edge_ids() {
                let v = m.act(&alg.edge(e), &m.cinf());
                if !v.is_zero() {
                    pool.push(v);
                }
            }
            for q in &pool {
                for e in g.edge_ids() {
                    let lhs = m.act(&alg.ghost_edge(e), &m.act(&alg.edge(e), q));
                    let rhs = m.act(&alg.vertex(g.range(e)), q);
                    assert_eq!(lhs, rhs);
                    for f in g.edge_ids() {
                        if f != e {
                            assert!(m.act(&alg.ghost_edge(e), &m.act(&alg.edge(f), q)).is_zero());
                        }
                    }
                }
                for v in g.vertices() {
                    if g.is_sink(v) {
                        continue;
                    }
                    let mut acc = ChenVector::zero();
                    for e in g.out_edges(v) {
                        acc = acc.add(&m.act(&alg.edge(e), &m.act(&alg.ghost_edge(e), q)));
                    }
                    assert_eq!(acc, m.act(&alg.vertex(v), q));
                }
            }
        }
    }
}
