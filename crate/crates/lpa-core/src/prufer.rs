//! The quotient modules by powers of `c - 1`, their direct limit, and the
//! structure the limit carries: the level filtration, quotient shifts,
//! cyclic-shift isomorphisms, the injectivity classifier, and — over a
//! source loop — the endomorphism ring of truncated power series together
//! with the divisibility solver.

use crate::algebra::{Algebra, Element};
use crate::division::{Division, GElement};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::graph::{
    classify_closed_path, cycles_connecting_to, is_cyclic_shift, ClosedPathClass, Graph, Path,
};

/// An element of the level-`n` quotient, stored through its unique
/// expansion `g_1 + g_2 (c-1) + ... + g_n (c-1)^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MnElement {
    coeffs: Vec<GElement>,
}

impl MnElement {
    pub fn new(coeffs: Vec<GElement>) -> MnElement {
        assert!(!coeffs.is_empty(), "level must be >= 1");
        MnElement { coeffs }
    }

    pub fn level(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[GElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|g| g.is_zero())
    }
}

/// An element of the direct limit in canonical form: the minimal-level
/// representative (leading expansion coefficient nonzero), or level 1 for
/// the zero element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruferElement {
    payload: MnElement,
}

impl PruferElement {
    pub fn payload(&self) -> &MnElement {
        &self.payload
    }

    pub fn is_zero(&self) -> bool {
        self.payload.is_zero()
    }

    /// The canonical level; 0 for the zero element.
    pub fn level(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.payload.level()
        }
    }
}

/// A truncated power series `h_1 + h_2 x + ... + h_m x^{m-1}`; the
/// truncation order is the coefficient count, at least 1, and trailing
/// zeros are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Scalar>) -> Result<TruncatedSeries> {
        if coeffs.is_empty() {
            return Err(Error::precondition("series order must be >= 1"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.coeffs.get(i)
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let zero = self.coeffs[0].field().zero();
        let mut out = vec![zero; order];
        for (t, slot) in out.iter_mut().enumerate() {
            for a in 0..=t {
                if let (Some(x), Some(y)) = (self.coeff(a), other.coeff(t - a)) {
                    *slot = slot.add(&x.mul(y));
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Inverse up to the given order; requires a nonzero constant term.
    pub fn invert(&self, order: usize) -> Result<TruncatedSeries> {
        if order == 0 {
            return Err(Error::precondition("series order must be >= 1"));
        }
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let lead_inv = self.coeffs[0].inv().unwrap();
        let zero = self.coeffs[0].field().zero();
        let mut out = vec![zero.clone(); order];
        out[0] = lead_inv.clone();
        for t in 1..order {
            let mut acc = zero.clone();
            for j in 1..=t {
                if let Some(h) = self.coeff(j) {
                    acc = acc.add(&h.mul(&out[t - j]));
                }
            }
            out[t] = acc.neg().mul(&lead_inv);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

/// The direct-limit module for a fixed algebra and basic closed path.
#[derive(Debug, Clone)]
pub struct PruferModule {
    div: Division,
}

impl PruferModule {
    pub fn new(alg: &Algebra, cycle: &Path) -> Result<PruferModule> {
        Ok(PruferModule {
            div: Division::new(alg, cycle)?,
        })
    }

    pub fn from_division(div: Division) -> PruferModule {
        PruferModule { div }
    }

    pub fn division(&self) -> &Division {
        &self.div
    }

    pub fn algebra(&self) -> &Algebra {
        self.div.algebra()
    }

    pub fn cycle(&self) -> &Path {
        self.div.cycle()
    }

    /// The class of `x` in the level-`n` quotient.
    pub fn make_element(&self, x: &Element, n: usize) -> Result<MnElement> {
        Ok(MnElement::new(self.div.g_representation(x, n)?))
    }

    /// The embedding into a higher level: right multiplication by
    /// `(c-1)^{target - level}`, an index shift of the expansion.
    pub fn embed(&self, u: &MnElement, target: usize) -> Result<MnElement> {
        if target < u.level() {
            return Err(Error::precondition(format!(
                "cannot embed level {} into level {target}",
                u.level()
            )));
        }
        let pad = target - u.level();
        let mut coeffs = vec![GElement::zero(self.algebra()); pad];
        coeffs.extend(u.coeffs.iter().cloned());
        Ok(MnElement::new(coeffs))
    }

    /// A representative in the algebra: `sum g_t (c-1)^{t-1}`.
    pub fn lift(&self, u: &MnElement) -> Element {
        let alg = self.algebra();
        let cm1 = self.div.cycle_minus_one();
        let mut acc = alg.zero();
        let mut power = alg.one();
        for g in &u.coeffs {
            acc = alg.add(&acc, &alg.mul(&g.to_element(self.div.chen()), &power));
            power = alg.mul(&power, &cm1);
        }
        acc
    }

    /// Canonical form in the limit: strip leading zero coefficients.
    pub fn canonical(&self, u: MnElement) -> PruferElement {
        let mut coeffs = u.coeffs;
        let mut start = 0;
        while start < coeffs.len() - 1 && coeffs[start].is_zero() {
            start += 1;
        }
        if start > 0 {
            coeffs.drain(..start);
        }
        if coeffs.iter().all(|g| g.is_zero()) {
            coeffs = vec![GElement::zero(self.algebra())];
        }
        PruferElement {
            payload: MnElement::new(coeffs),
        }
    }

    pub fn zero(&self) -> PruferElement {
        self.canonical(MnElement::new(vec![GElement::zero(self.algebra())]))
    }

    /// The generator at level `i`: the class of the identity.
    pub fn alpha(&self, i: usize) -> Result<PruferElement> {
        if i == 0 {
            return Err(Error::precondition("generator index must be >= 1"));
        }
        let mut coeffs = vec![GElement::zero(self.algebra()); i];
        coeffs[0] = GElement::one(self.algebra());
        Ok(self.canonical(MnElement::new(coeffs)))
    }

    /// Builds a limit element from a level and coefficient expansion.
    pub fn element(&self, coeffs: Vec<GElement>) -> PruferElement {
        self.canonical(MnElement::new(coeffs))
    }

    /// The left action: lift, multiply, re-expand at the same level,
    /// re-canonicalize.
    pub fn act(&self, r: &Element, u: &PruferElement) -> Result<PruferElement> {
        if u.is_zero() {
            return Ok(self.zero());
        }
        let x = self.lift(&u.payload);
        let rx = self.algebra().mul(r, &x);
        let coeffs = self.div.g_representation(&rx, u.payload.level())?;
        Ok(self.canonical(MnElement::new(coeffs)))
    }

    pub fn add(&self, u: &PruferElement, v: &PruferElement) -> PruferElement {
        let level = u.payload.level().max(v.payload.level());
        let a = self.embed(&u.payload, level).unwrap();
        let b = self.embed(&v.payload, level).unwrap();
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.add(y))
            .collect();
        self.canonical(MnElement::new(coeffs))
    }

    pub fn scale(&self, k: &Scalar, u: &PruferElement) -> PruferElement {
        let coeffs = u.payload.coeffs.iter().map(|g| g.scale(k)).collect();
        self.canonical(MnElement::new(coeffs))
    }

    /// The position of the element in the submodule chain; equals the
    /// canonical level, with 0 for the zero element.
    pub fn submodule_level(&self, u: &PruferElement) -> usize {
        u.level()
    }

    /// The surjection with kernel the level-`i` submodule: on expansions,
    /// truncation of the last `i` coefficients (each generator maps `i`
    /// levels down).
    pub fn quotient_shift(&self, u: &PruferElement, i: usize) -> PruferElement {
        if i >= u.payload.level() || u.is_zero() {
            return self.zero();
        }
        let keep = u.payload.level() - i;
        self.canonical(MnElement::new(u.payload.coeffs[..keep].to_vec()))
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

    fn scalar_coeffs(&self, u: &MnElement) -> Result<Vec<Scalar>> {
        u.coeffs
            .iter()
            .map(|g| {
                g.as_scalar().cloned().ok_or_else(|| {
                    Error::Internal("expansion coefficient is not scalar over a source loop".into())
                })
            })
            .collect()
    }

    /// Applies the endomorphism attached to a truncated series over a
    /// source loop: the right product by `sum h_j (c-1)^{j-1}`, which sends
    /// the level-`i` generator to `h_1 a_i + ... + h_i a_1`. Coefficients
    /// beyond the truncation order act as zero.
    pub fn endo_apply(&self, series: &TruncatedSeries, u: &PruferElement) -> Result<PruferElement> {
        self.require_source_loop()?;
        if u.is_zero() {
            return Ok(self.zero());
        }
        let g = self.scalar_coeffs(&u.payload)?;
        let n = g.len();
        let zero = self.algebra().field().zero();
        let mut out = vec![zero; n];
        for (t, slot) in out.iter_mut().enumerate() {
            for a in 0..=t {
                if let Some(h) = series.coeff(t - a) {
                    *slot = slot.add(&g[a].mul(h));
                }
            }
        }
        let coeffs = out
            .into_iter()
            .map(|k| GElement::one(self.algebra()).scale(&k))
            .collect();
        Ok(self.canonical(MnElement::new(coeffs)))
    }

    /// Solves `l . X = u` over a source loop for `l` outside the
    /// annihilator, by expanding `l` past its `(c-1)`-adic valuation and
    /// back-substituting the resulting triangular system.
    pub fn solve_divisibility(&self, l: &Element, u: &PruferElement) -> Result<PruferElement> {
        self.require_source_loop()?;
        if self.div.annihilator_membership(l)? {
            return Err(Error::NoSolution(
                "the divisor annihilates the whole module".into(),
            ));
        }
        if u.is_zero() {
            return Ok(self.zero());
        }
        // The valuation is bounded by the largest real plus largest ghost
        // path length among the divisor's monomials.
        let bound = l.terms().map(|(m, _)| m.real().len()).max().unwrap_or(0)
            + l.terms().map(|(m, _)| m.ghost().len()).max().unwrap_or(0)
            + 1;
        let probe = self.scalar_coeffs(&MnElement::new(self.div.g_representation(l, bound)?))?;
        let s = probe
            .iter()
            .position(|h| !h.is_zero())
            .ok_or_else(|| Error::Internal("non-annihilator element with zero expansion".into()))?;
        let n = u.payload.level();
        let m = n + s;
        let h = if m <= bound {
            probe[..m].to_vec()
        } else {
            self.scalar_coeffs(&MnElement::new(self.div.g_representation(l, m)?))?
        };
        let k = self.scalar_coeffs(&u.payload)?;
        let lead_inv = h[s].inv().unwrap();
        let zero = self.algebra().field().zero();
        let mut x = vec![zero.clone(); m];
        for j in 1..=n {
            let mut acc = k[j - 1].clone();
            for t in 2..=j {
                acc = acc.sub(&h[s + t - 1].mul(&x[j + 1 - t - 1]));
            }
            x[j - 1] = acc.mul(&lead_inv);
        }
        let coeffs: Vec<GElement> = x
            .into_iter()
            .map(|k| GElement::one(self.algebra()).scale(&k))
            .collect();
        let solution = self.canonical(MnElement::new(coeffs));
        let check = self.act(l, &solution)?;
        if &check != u {
            return Err(Error::Internal("divisibility solution failed its check".into()));
        }
        Ok(solution)
    }
}

/// The verdict of the injectivity criterion: injective exactly when the
/// path is a maximal cycle; otherwise a witness cycle that connects to the
/// base vertex without being a cyclic shift.
#[derive(Debug, Clone)]
pub struct InjectivityVerdict {
    pub injective: bool,
    pub class: ClosedPathClass,
    pub witness: Option<Path>,
}

pub fn classify_injectivity(graph: &Graph, cycle: &Path) -> Result<InjectivityVerdict> {
    let class = classify_closed_path(graph, cycle)?;
    if !(class.closed && class.basic) {
        return Err(Error::precondition(format!(
            "`{}` is not a basic closed path",
            cycle.display(graph)
        )));
    }
    if class.maximal_cycle {
        return Ok(InjectivityVerdict {
            injective: true,
            class,
            witness: None,
        });
    }
    let witness = cycles_connecting_to(graph, cycle.source(), graph.vertex_count().max(1))?
        .into_iter()
        .find(|d| !is_cyclic_shift(graph, cycle, d));
    Ok(InjectivityVerdict {
        injective: false,
        class,
        witness,
    })
}

/// Direction of the cyclic-shift isomorphism between level quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    /// From the base rotation to rotation `l`.
    Forward,
    /// From rotation `l` back to the base rotation.
    Backward,
}

/// The isomorphism between the level-`m` quotients attached to a basic
/// closed path `c = e_1 ... e_n` and its rotation starting at `e_l`.
/// Forward is right multiplication by `e_1 ... e_{l-1}`; backward is right
/// multiplication by `(-1)^{m-1} e_l ... e_n sum_i C(m,i) (-1)^{m-i} c^{i-1}`.
pub fn shift_iso(
    alg: &Algebra,
    cycle: &Path,
    l: usize,
    m: usize,
    direction: ShiftDirection,
    input: &MnElement,
) -> Result<MnElement> {
    let graph = alg.graph();
    let class = classify_closed_path(graph, cycle)?;
    if !(class.closed && class.basic) {
        return Err(Error::precondition(format!(
            "`{}` is not a basic closed path",
            cycle.display(graph)
        )));
    }
    let n = cycle.len();
    if n < 2 {
        return Err(Error::precondition(
            "the rotation isomorphism needs length >= 2",
        ));
    }
    if l < 1 || l > n {
        return Err(Error::precondition(format!(
            "rotation index {l} out of range 1..={n}"
        )));
    }
    if m == 0 {
        return Err(Error::precondition("level must be >= 1"));
    }
    if input.level() != m {
        return Err(Error::precondition(format!(
            "input has level {}, expected {m}",
            input.level()
        )));
    }
    let rotated = {
        let mut edges = cycle.edges()[l - 1..].to_vec();
        edges.extend_from_slice(&cycle.edges()[..l - 1]);
        Path::from_edges(graph, edges)?
    };
    let (source_cycle, target_cycle, connector) = match direction {
        ShiftDirection::Forward => {
            let prefix = if l == 1 {
                alg.vertex(cycle.source())
            } else {
                alg.path(&cycle.prefix(l - 1))
            };
            (cycle.clone(), rotated.clone(), prefix)
        }
        ShiftDirection::Backward => {
            let tail = cycle.suffix(graph, l - 1);
            let field = alg.field();
            let mut series = alg.zero();
            for i in 1..=m {
                let mut coeff = field.binomial(m as u64, i as u64);
                if (m - i) % 2 == 1 {
                    coeff = coeff.neg();
                }
                let cpow = alg.power(&alg.path(cycle), i - 1);
                series = alg.add(&series, &alg.scale(&coeff, &cpow));
            }
            let mut connector = alg.mul(&alg.path(&tail), &series);
            if (m - 1) % 2 == 1 {
                connector = alg.neg(&connector);
            }
            (rotated.clone(), cycle.clone(), connector)
        }
    };
    let src = Division::new(alg, &source_cycle)?;
    let dst = Division::new(alg, &target_cycle)?;
    let module = PruferModule::from_division(src);
    let x = module.lift(input);
    let image = alg.mul(&x, &connector);
    Ok(MnElement::new(dst.g_representation(&image, m)?))
}
