//! Division of algebra elements by `c - 1` for a basic closed path `c`,
//! with explicit quotient tracking, iterated remainder expansions, ideal
//! power membership, and the annihilator tests used by the limit module.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element};
use crate::chen::{ChenModule, ChenVector, SigmaPrefix};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::graph::{classify_closed_path, Path};

/// An element of the remainder space `G`: the span of the identity, the
/// set `A_c`, and its left `c`-power translates. Stored as a scalar part
/// (the coefficient of the identity) plus a combination of normalized
/// prefixes with nonempty tails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GElement {
    scalar: Scalar,
    terms: BTreeMap<SigmaPrefix, Scalar>,
}

impl GElement {
    pub fn from_parts(scalar: Scalar, terms: BTreeMap<SigmaPrefix, Scalar>) -> GElement {
        debug_assert!(terms.keys().all(|p| !p.is_one()));
        debug_assert!(terms.values().all(|k| !k.is_zero()));
        GElement { scalar, terms }
    }

    pub fn zero(alg: &Algebra) -> GElement {
        GElement {
            scalar: alg.field().zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Algebra) -> GElement {
        GElement {
            scalar: alg.field().one(),
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.terms.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the identity.
    pub fn scalar_part(&self) -> &Scalar {
        &self.scalar
    }

    /// The scalar value when the element is a pure multiple of the identity.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        self.is_scalar().then_some(&self.scalar)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SigmaPrefix, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &GElement) -> GElement {
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
        GElement {
            scalar: self.scalar.add(&other.scalar),
            terms,
        }
    }

    pub fn scale(&self, k: &Scalar) -> GElement {
        let mut terms: BTreeMap<SigmaPrefix, Scalar> = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), k.mul(c)))
            .collect();
        terms.retain(|_, c| !c.is_zero());
        GElement {
            scalar: self.scalar.mul(k),
            terms,
        }
    }

    /// As a ChenVector: `G` and the module are isomorphic as vector spaces,
    /// with matching bases.
    pub fn to_chen_vector(&self, chen: &ChenModule) -> ChenVector {
        let mut v = ChenVector::basis(SigmaPrefix::one(), self.scalar.clone());
        for (p, k) in &self.terms {
            v = v.add(&ChenVector::basis(p.clone(), k.clone()));
        }
        let _ = chen;
        v
    }

    /// As an algebra element: `scalar . 1 + sum k . c^i . tail`.
    pub fn to_element(&self, chen: &ChenModule) -> Element {
        let alg = chen.algebra();
        let mut acc = alg.scale(&self.scalar, &alg.one());
        for (p, k) in &self.terms {
            let path = chen.prefix_path(p);
            acc = alg.add(&acc, &alg.scale(k, &alg.path(&path)));
        }
        acc
    }

    /// Expression string in the `G`-basis: the scalar part prints bare
    /// (`4`, `-1/3`), other basis paths print as path products.
    pub fn to_expr_string(&self, chen: &ChenModule) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        if !self.scalar.is_zero() {
            let neg = crate::field::is_negative(&self.scalar);
            let mag = if neg { self.scalar.neg() } else { self.scalar.clone() };
            pieces.push((neg, mag.to_string()));
        }
        for (p, k) in &self.terms {
            let neg = crate::field::is_negative(k);
            let mag = if neg { k.neg() } else { k.clone() };
            let path = chen.prefix_path(p);
            let shown = format!("{}", path.display(chen.algebra().graph()));
            if mag.is_one() {
                pieces.push((neg, shown));
            } else {
                pieces.push((neg, format!("{mag} {shown}")));
            }
        }
        let mut out = String::new();
        for (i, (neg, body)) in pieces.iter().enumerate() {
            if i == 0 {
                if *neg {
                    out.push('-');
                }
            } else if *neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(body);
        }
        out
    }
}

/// The quotient/remainder pair with `quotient . (c-1) + remainder` equal to
/// the dividend, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotient: Element,
    pub remainder: GElement,
}

/// Division by `c - 1` over a fixed algebra and basic closed path.
#[derive(Debug, Clone)]
pub struct Division {
    chen: ChenModule,
}

impl Division {
    pub fn new(alg: &Algebra, cycle: &Path) -> Result<Division> {
        Ok(Division {
            chen: ChenModule::new(alg, cycle)?,
        })
    }

    pub fn from_chen(chen: ChenModule) -> Division {
        Division { chen }
    }

    pub fn chen(&self) -> &ChenModule {
        &self.chen
    }

    pub fn algebra(&self) -> &Algebra {
        self.chen.algebra()
    }

    pub fn cycle(&self) -> &Path {
        self.chen.cycle()
    }

    pub fn cycle_minus_one(&self) -> Element {
        self.algebra().cycle_minus_one(self.cycle())
    }

    /// Divides: the remainder is the normalized image of the dividend in
    /// the remainder space; the quotient is assembled per monomial from
    /// three explicit identities and certified by the final identity check.
    pub fn divide(&self, beta: &Element) -> Result<DivisionResult> {
        let alg = self.algebra();
        let remainder = self.chen.sigma(&self.chen.rho_cinf(beta));
        let mut quotient = alg.zero();
        for (mono, coeff) in beta.terms() {
            let m = alg.scale(coeff, &alg.monomial(mono.clone()));
            let contribution = if mono.ghost().is_empty() {
                self.quotient_of_real_path(&m, mono.real())?
            } else {
                self.quotient_of_ghost_monomial(&m, mono.real(), mono.ghost())?
            };
            quotient = alg.add(&quotient, &contribution);
        }
        let check = alg.add(
            &alg.mul(&quotient, &self.cycle_minus_one()),
            &remainder.to_element(&self.chen),
        );
        if check != *beta {
            return Err(Error::Internal(format!(
                "division identity failed for `{}`",
                alg.to_expr_string(beta)
            )));
        }
        Ok(DivisionResult {
            quotient,
            remainder,
        })
    }

    /// Quotient contribution of a scaled real-path monomial `m`.
    fn quotient_of_real_path(&self, m: &Element, path: &Path) -> Result<Element> {
        let alg = self.algebra();
        let graph = alg.graph();
        let c = self.cycle();
        let v = c.source();
        if path.range(graph) != v {
            // m . c = 0, so m = -m (c-1).
            return Ok(alg.neg(m));
        }
        if path.is_empty() {
            // The base vertex: v = 1 - sum of the other vertices, and each
            // other vertex w satisfies w = (-w)(c-1); collecting terms gives
            // quotient sum_{w != v} w and remainder the identity.
            let mut q = alg.zero();
            for w in graph.vertices() {
                if w != v {
                    q = alg.add(&q, &alg.vertex(w));
                }
            }
            let coeff = self.coefficient_of(m, path);
            return Ok(alg.scale(&coeff, &q));
        }
        // Split off maximal c-powers: path = c^i . delta . c^k.
        let mut rest = path.clone();
        let mut trailing = 0usize;
        while rest.ends_with(graph, c) {
            rest = rest.prefix(rest.len() - c.len());
            trailing += 1;
        }
        if rest.is_empty() {
            // A pure power c^t: quotient 1 + c + ... + c^{t-1}.
            let coeff = self.coefficient_of(m, path);
            return Ok(alg.scale(&coeff, &alg.geometric_sum(c, trailing)));
        }
        let mut leading = 0usize;
        while rest.starts_with(c) {
            rest = rest.suffix(graph, c.len());
            leading += 1;
        }
        // path = c^leading . rest . c^trailing with rest normalized:
        // quotient c^leading . rest . (1 + ... + c^{trailing-1}).
        let coeff = self.coefficient_of(m, path);
        let head = if leading == 0 {
            rest
        } else {
            c.repeat(graph, leading).unwrap().concat(graph, &rest).unwrap()
        };
        Ok(alg.scale(&coeff, &alg.mul(&alg.path(&head), &alg.geometric_sum(c, trailing))))
    }

    /// The coefficient the scaled monomial element carries (it has exactly
    /// one term by construction).
    fn coefficient_of(&self, m: &Element, _path: &Path) -> Scalar {
        m.terms()
            .next()
            .map(|(_, k)| k.clone())
            .unwrap_or_else(|| self.algebra().field().zero())
    }

    /// Quotient contribution of a monomial with a nonzero ghost part.
    fn quotient_of_ghost_monomial(&self, m: &Element, real: &Path, ghost: &Path) -> Result<Element> {
        let alg = self.algebra();
        let graph = alg.graph();
        let c = self.cycle();
        // Is the ghost path a prefix of the periodic tail, i.e. c^j followed
        // by a proper prefix of c?
        let compatible = ghost.source() == c.source()
            && ghost
                .edges()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == c.edges()[i % c.len()]);
        if !compatible {
            // m . c^M = 0 for a minimal M bounded by ceil(|ghost|/|c|) + 1:
            // quotient -m (1 + c + ... + c^{M-1}).
            let bound = ghost.len().div_ceil(c.len()) + 1;
            let mut power = alg.one();
            let celem = alg.path(c);
            for step in 1..=bound {
                power = alg.mul(&power, &celem);
                if alg.mul(m, &power).is_zero() {
                    return Ok(alg.neg(&alg.mul(m, &alg.geometric_sum(c, step))));
                }
            }
            return Err(Error::Internal(
                "incompatible ghost monomial did not vanish within bound".into(),
            ));
        }
        // ghost = c^j . (first r edges of c). The conversion identity turns
        // the monomial into the real path `real . ghost* . c^{j+1}` at the
        // cost of quotient -m (1 + c + ... + c^j).
        let j = ghost.len() / c.len();
        let r = ghost.len() % c.len();
        let completion = c.suffix(graph, r); // rest of the period; whole c when r = 0
        let real_path = real.concat(graph, &completion).map_err(|e| {
            Error::Internal(format!("ghost completion does not compose: {e}"))
        })?;
        let converted = alg.scale(
            &self.coefficient_of(m, real),
            &alg.path(&real_path),
        );
        let mut q = alg.neg(&alg.mul(m, &alg.geometric_sum(c, j + 1)));
        q = alg.add(&q, &self.quotient_of_real_path(&converted, &real_path)?);
        Ok(q)
    }

    /// The iterated expansion `(g_1, ..., g_n)` with
    /// `x = g_1 + g_2 (c-1) + ... + g_n (c-1)^{n-1} + q_n (c-1)^n`.
    pub fn g_representation(&self, x: &Element, n: usize) -> Result<Vec<GElement>> {
        Ok(self.g_representation_with_tail(x, n)?.0)
    }

    /// Same, also returning the final quotient `q_n`.
    pub fn g_representation_with_tail(
        &self,
        x: &Element,
        n: usize,
    ) -> Result<(Vec<GElement>, Element)> {
        if n == 0 {
            return Err(Error::precondition("expansion order must be >= 1"));
        }
        let mut coeffs = Vec::with_capacity(n);
        let mut current = x.clone();
        for _ in 0..n {
            let DivisionResult {
                quotient,
                remainder,
            } = self.divide(&current)?;
            coeffs.push(remainder);
            current = quotient;
        }
        Ok((coeffs, current))
    }

    /// Membership in the left ideal generated by `(c-1)^n`.
    pub fn in_ideal_power(&self, x: &Element, n: usize) -> Result<bool> {
        Ok(self.g_representation(x, n)?.iter().all(|g| g.is_zero()))
    }

    fn require_source_loop(&self) -> Result<()> {
        let class = classify_closed_path(self.algebra().graph(), self.cycle())?;
        if !class.source_loop {
            return Err(Error::precondition(format!(
                "`{}` is not a source loop",
                self.cycle().display(self.algebra().graph())
            )));
        }
        Ok(())
    }

    /// Membership in the annihilator of the limit module, for a source
    /// loop: the two-sided ideal generated by the other vertices. In normal
    /// form this reads off as "no monomial ranges at the base vertex".
    pub fn annihilator_membership(&self, x: &Element) -> Result<bool> {
        self.require_source_loop()?;
        let graph = self.algebra().graph();
        let v = self.cycle().source();
        Ok(x.terms().all(|(m, _)| m.range(graph) != v))
    }

    /// The minimal `n >= 1` with `(c*)^n x = 0`, for a nonzero annihilator
    /// member; 0 for the zero element. Bounded by the largest leading
    /// `c`-power among real parts, plus one.
    pub fn cstar_nilpotence_index(&self, x: &Element) -> Result<usize> {
        if x.is_zero() {
            return Ok(0);
        }
        if !self.annihilator_membership(x)? {
            return Err(Error::precondition(
                "element is outside the annihilator; no nilpotence index exists",
            ));
        }
        let alg = self.algebra();
        let cstar = alg.star(&alg.path(self.cycle()));
        let bound = x
            .terms()
            .map(|(m, _)| {
                let mut t = 0;
                let mut p = m.real().clone();
                while p.starts_with(self.cycle()) {
                    p = p.suffix(alg.graph(), self.cycle().len());
                    t += 1;
                }
                t
            })
            .max()
            .unwrap_or(0)
            + 1;
        let mut current = x.clone();
        for n in 1..=bound {
            current = alg.mul(&cstar, &current);
            if current.is_zero() {
                return Ok(n);
            }
        }
        Err(Error::Internal(
            "annihilator element survived the nilpotence bound".into(),
        ))
    }
}
