//! Polynomial model of the function spaces.
//!
//! C^∞(M) in a single global chart on ℝⁿ is realized as `Poly`
//! (rational coefficients); C^∞(M^A, A) as `APoly` (coefficients in a
//! Weil algebra A). Both are one generic sparse type `MPoly<R>` over a
//! coefficient ring, with monomials kept in canonical graded-lex order.
//! The module also houses the bundle geometry: A-points of the Weil
//! bundle, prolongation of functions, maps and vector fields, the tilde
//! extension of an A-vector field to the unique A-linear derivation,
//! and the Lie bracket X̃∘Y − Ỹ∘X.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rat::Rat;
use crate::weil::{AlgebraHom, AlgebraRef, WeilElement};

/// Exponent vector of a monomial in a fixed number of variables.
///
/// The ordering is graded lexicographic: lower total degree first, ties
/// broken so that a larger exponent on the earliest differing variable
/// sorts first (1 < x < y < x² < xy < y²).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Whether self divides other componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Formats against variable names; the unit monomial is "1".
    pub fn format(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{}", vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps) {
                if a != b {
                    return b.cmp(a); // larger leading exponent first
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of exact total degree `d`, in canonical order.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    fn go(nvars: usize, d: usize, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::from_exps(acc.clone()));
            }
            return;
        }
        if nvars == 1 {
            acc.push(d as u32);
            out.push(Monomial::from_exps(acc.clone()));
            acc.pop();
            return;
        }
        for e in (0..=d).rev() {
            acc.push(e as u32);
            go(nvars - 1, d - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// All monomials of total degree ≤ D, sorted in canonical order.
pub fn monomials_up_to(nvars: usize, max_degree: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        if nvars == 0 && d > 0 {
            break;
        }
        out.extend(monomials_of_degree(nvars, d));
    }
    out
}

pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Coefficient ring abstraction so one polynomial engine serves both ℝ
/// (rationals) and a Weil algebra A.
pub trait CoefficientRing: Clone {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Scalar action of ℝ (the rationals in this model).
    fn scale(&self, a: &Self::Elem, r: &Rat) -> Self::Elem;
    fn from_rat(&self, r: &Rat) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether an element belongs to this ring instance.
    fn accepts(&self, a: &Self::Elem) -> bool;
    /// Whether two ring instances are the same ring.
    fn same_ring(&self, other: &Self) -> bool;
    fn describe(&self) -> String;
    /// Sign/magnitude split for display, or None for coefficients that
    /// must be rendered opaquely in parentheses.
    fn split_for_display(&self, a: &Self::Elem) -> Option<(bool, String, bool)>;
    /// Text of a coefficient rendered opaquely (inside parentheses).
    fn format_opaque(&self, a: &Self::Elem) -> String;
}

/// The rationals as a coefficient ring.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RatRing;

impl CoefficientRing for RatRing {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn scale(&self, a: &Rat, r: &Rat) -> Rat {
        a * r
    }
    fn from_rat(&self, r: &Rat) -> Rat {
        r.clone()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn accepts(&self, _: &Rat) -> bool {
        true
    }
    fn same_ring(&self, _: &Self) -> bool {
        true
    }
    fn describe(&self) -> String {
        "Q".into()
    }
    fn split_for_display(&self, a: &Rat) -> Option<(bool, String, bool)> {
        let mag = a.abs();
        Some((a.is_negative(), mag.to_string(), mag.is_one()))
    }
    fn format_opaque(&self, a: &Rat) -> String {
        a.to_string()
    }
}

/// A Weil algebra as a coefficient ring.
#[derive(Debug, Clone)]
pub struct WeilRing(pub AlgebraRef);

impl CoefficientRing for WeilRing {
    type Elem = WeilElement;

    fn zero(&self) -> WeilElement {
        WeilElement::zero(&self.0)
    }
    fn one(&self) -> WeilElement {
        WeilElement::one(&self.0)
    }
    fn add(&self, a: &WeilElement, b: &WeilElement) -> WeilElement {
        a + b
    }
    fn sub(&self, a: &WeilElement, b: &WeilElement) -> WeilElement {
        a - b
    }
    fn neg(&self, a: &WeilElement) -> WeilElement {
        -a
    }
    fn mul(&self, a: &WeilElement, b: &WeilElement) -> WeilElement {
        a * b
    }
    fn scale(&self, a: &WeilElement, r: &Rat) -> WeilElement {
        a.scalar_mul(r)
    }
    fn from_rat(&self, r: &Rat) -> WeilElement {
        WeilElement::scalar(&self.0, r.clone())
    }
    fn is_zero(&self, a: &WeilElement) -> bool {
        a.is_zero()
    }
    fn accepts(&self, a: &WeilElement) -> bool {
        a.algebra().same(&self.0)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.0.same(&other.0)
    }
    fn describe(&self) -> String {
        self.0.name().to_string()
    }
    fn split_for_display(&self, _: &WeilElement) -> Option<(bool, String, bool)> {
        None
    }
    fn format_opaque(&self, a: &WeilElement) -> String {
        a.to_string()
    }
}

/// Sparse multivariate polynomial over a coefficient ring.
#[derive(Debug, Clone)]
pub struct MPoly<R: CoefficientRing> {
    ring: R,
    nvars: usize,
    terms: BTreeMap<Monomial, R::Elem>,
}

/// Polynomial function on ℝⁿ (model of C^∞(M)).
pub type Poly = MPoly<RatRing>;
/// A-valued polynomial function on M^A (model of C^∞(M^A, A)).
pub type APoly = MPoly<WeilRing>;

impl<R: CoefficientRing> PartialEq for MPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.ring.same_ring(&other.ring)
            && self.terms == other.terms
    }
}

impl<R: CoefficientRing> MPoly<R> {
    pub fn zero(ring: R, nvars: usize) -> Self {
        MPoly {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, nvars: usize, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, nvars);
        p.add_term(Monomial::unit(nvars), c);
        p
    }

    pub fn one(ring: R, nvars: usize) -> Self {
        let c = ring.one();
        Self::constant(ring, nvars, c)
    }

    pub fn var(ring: R, nvars: usize, i: usize) -> Self {
        let c = ring.one();
        let mut p = Self::zero(ring, nvars);
        p.add_term(Monomial::var(nvars, i), c);
        p
    }

    pub fn monomial(ring: R, m: Monomial, c: R::Elem) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(ring, nvars);
        p.add_term(m, c);
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Accumulates a term, dropping it if the total is zero.
    pub fn add_term(&mut self, m: Monomial, c: R::Elem) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        debug_assert!(self.ring.accepts(&c), "coefficient from a foreign ring");
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = self.ring.add(&old, &c);
                if !self.ring.is_zero(&sum) {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    fn check_match(&self, other: &Self, context: &str) -> Result<(), Error> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
                context: context.into(),
            });
        }
        if !self.ring.same_ring(&other.ring) {
            return Err(Error::AlgebraMismatch {
                left: self.ring.describe(),
                right: other.ring.describe(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_match(other, "polynomial addition")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_match(other, "polynomial subtraction")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_match(other, "polynomial multiplication")?;
        let mut out = Self::zero(self.ring.clone(), self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.ring.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.ring.neg(c));
        }
        out
    }

    /// Scalar multiple by a rational.
    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.ring.scale(c, r));
        }
        out
    }

    /// Multiple by a ring element (A-linearity for APoly).
    pub fn scale_elem(&self, e: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(c, e));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.ring.clone(), self.nvars);
        for _ in 0..n {
            out = out.try_mul(self).expect("same ring");
        }
        out
    }

    /// Formal partial derivative with respect to variable `i`
    /// (0-indexed); linear over the coefficient ring.
    pub fn partial(&self, i: usize) -> Self {
        self.try_partial(i).expect("variable index out of range")
    }

    pub fn try_partial(&self, i: usize) -> Result<Self, Error> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.nvars,
                context: "partial derivative".into(),
            });
        }
        let mut out = Self::zero(self.ring.clone(), self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            let factor = Rat::from_integer(e.into());
            out.add_term(Monomial::from_exps(exps), self.ring.scale(c, &factor));
        }
        Ok(out)
    }

    /// Evaluation by substitution of ring elements for the variables.
    pub fn eval(&self, point: &[R::Elem]) -> Result<R::Elem, Error> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
                context: "polynomial evaluation".into(),
            });
        }
        for p in point {
            if !self.ring.accepts(p) {
                return Err(Error::AlgebraMismatch {
                    left: self.ring.describe(),
                    right: "foreign element".into(),
                });
            }
        }
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term = self.ring.mul(&term, &point[i]);
                }
            }
            acc = self.ring.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Renders against variable names, terms in descending order.
    pub fn format_with(&self, vars: &[String]) -> String {
        assert_eq!(vars.len(), self.nvars, "variable name count mismatch");
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            match self.ring.split_for_display(c) {
                Some((neg, mag, mag_is_one)) => {
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push(if neg { '-' } else { '+' });
                    }
                    if m.is_unit() {
                        out.push_str(&mag);
                    } else {
                        if !mag_is_one {
                            out.push_str(&mag);
                            out.push('*');
                        }
                        out.push_str(&m.format(vars));
                    }
                }
                None => {
                    if !out.is_empty() {
                        out.push('+');
                    }
                    out.push('(');
                    out.push_str(&self.ring.format_opaque(c));
                    out.push(')');
                    if !m.is_unit() {
                        out.push('*');
                        out.push_str(&m.format(vars));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<R: CoefficientRing> fmt::Display for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.nvars)))
    }
}

impl<R: CoefficientRing> std::ops::Add for &MPoly<R> {
    type Output = MPoly<R>;
    fn add(self, rhs: &MPoly<R>) -> MPoly<R> {
        self.try_add(rhs).expect("polynomial ring mismatch in +")
    }
}

impl<R: CoefficientRing> std::ops::Sub for &MPoly<R> {
    type Output = MPoly<R>;
    fn sub(self, rhs: &MPoly<R>) -> MPoly<R> {
        self.try_sub(rhs).expect("polynomial ring mismatch in -")
    }
}

impl<R: CoefficientRing> std::ops::Mul for &MPoly<R> {
    type Output = MPoly<R>;
    fn mul(self, rhs: &MPoly<R>) -> MPoly<R> {
        self.try_mul(rhs).expect("polynomial ring mismatch in *")
    }
}

impl<R: CoefficientRing> std::ops::Neg for &MPoly<R> {
    type Output = MPoly<R>;
    fn neg(self) -> MPoly<R> {
        MPoly::neg(self)
    }
}

impl MPoly<RatRing> {
    /// Substitution f(h₁,…,hₙ) of polynomials for the variables.
    pub fn compose(&self, subs: &[Poly]) -> Result<Poly, Error> {
        if subs.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: subs.len(),
                context: "polynomial composition".into(),
            });
        }
        let inner_vars = subs.first().map_or(0, |p| p.nvars);
        for s in subs {
            if s.nvars != inner_vars {
                return Err(Error::ArityMismatch {
                    expected: inner_vars,
                    got: s.nvars,
                    context: "composition component arities differ".into(),
                });
            }
        }
        let mut acc = Poly::zero(RatRing, inner_vars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(RatRing, inner_vars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                term = term.try_mul(&subs[i].pow(e))?;
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }
}

/// Coefficient-wise inclusion ℝ ↪ A: the prolongation f^A of f, with
/// eval_A(f^A, ξ) = "ξ(f)".
pub fn prolong_function(f: &Poly, algebra: &AlgebraRef) -> APoly {
    let ring = WeilRing(algebra.clone());
    let mut out = APoly::zero(ring, f.nvars());
    for (m, c) in f.terms() {
        out.add_term(m.clone(), WeilElement::scalar(algebra, c.clone()));
    }
    out
}

/// An infinitely near point of kind A in the global chart: the tuple
/// (ξ(x₁), …, ξ(xₙ)) of A-elements.
#[derive(Debug, Clone)]
pub struct APoint {
    algebra: AlgebraRef,
    coords: Vec<WeilElement>,
}

impl PartialEq for APoint {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same(&other.algebra) && self.coords == other.coords
    }
}

impl Eq for APoint {}

impl APoint {
    pub fn new(algebra: &AlgebraRef, coords: Vec<WeilElement>) -> Result<Self, Error> {
        for c in &coords {
            if !c.algebra().same(algebra) {
                return Err(Error::AlgebraMismatch {
                    left: algebra.name().to_string(),
                    right: c.algebra().name().to_string(),
                });
            }
        }
        Ok(APoint {
            algebra: algebra.clone(),
            coords,
        })
    }

    /// A real point viewed as an A-point (scalar coordinates).
    pub fn real(algebra: &AlgebraRef, values: &[Rat]) -> Self {
        APoint {
            algebra: algebra.clone(),
            coords: values
                .iter()
                .map(|v| WeilElement::scalar(algebra, v.clone()))
                .collect(),
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[WeilElement] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &WeilElement {
        &self.coords[i]
    }

    /// The bundle projection π_M: componentwise augmentation, sending
    /// an infinitely near point to its origin.
    pub fn project(&self) -> Vec<Rat> {
        self.coords.iter().map(WeilElement::aug).collect()
    }
}

/// Substitution homomorphism: evaluates φ at the point ξ.
pub fn eval_a(phi: &APoly, xi: &APoint) -> Result<WeilElement, Error> {
    if !phi.ring().0.same(xi.algebra()) {
        return Err(Error::AlgebraMismatch {
            left: phi.ring().describe(),
            right: xi.algebra().name().to_string(),
        });
    }
    phi.eval(xi.coords())
}

/// The prolonged map h^A applied to ξ: [h^A(ξ)](g) = ξ(g∘h), i.e.
/// componentwise A-evaluation of the h_i.
pub fn prolong_map(h: &[Poly], xi: &APoint) -> Result<APoint, Error> {
    let mut coords = Vec::with_capacity(h.len());
    for component in h {
        let phi = prolong_function(component, xi.algebra());
        coords.push(eval_a(&phi, xi)?);
    }
    APoint::new(xi.algebra(), coords)
}

/// The induced map φ_M: M^A → M^B of a Weil-algebra homomorphism,
/// ξ ⟼ φ∘ξ (componentwise). With φ the augmentation this is the
/// bundle projection.
pub fn apply_hom_point(hom: &AlgebraHom, xi: &APoint) -> Result<APoint, Error> {
    let coords = xi
        .coords()
        .iter()
        .map(|c| hom.apply(c))
        .collect::<Result<Vec<_>, _>>()?;
    APoint::new(hom.target(), coords)
}

/// A polynomial vector field θ = Σ θ_i ∂/∂x_i on ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    nvars: usize,
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self, Error> {
        let nvars = components.len();
        for c in &components {
            if c.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: c.nvars(),
                    context: "vector field component".into(),
                });
            }
        }
        Ok(VectorField { nvars, components })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    /// Directional derivative θ(f) = Σ θ_i ∂f/∂x_i.
    pub fn apply(&self, f: &Poly) -> Result<Poly, Error> {
        if f.nvars() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: f.nvars(),
                context: "vector field application".into(),
            });
        }
        let mut acc = Poly::zero(RatRing, self.nvars);
        for (i, theta_i) in self.components.iter().enumerate() {
            acc = acc.try_add(&theta_i.try_mul(&f.partial(i))?)?;
        }
        Ok(acc)
    }

    /// Classical Lie bracket [θ, η], components θ(η_i) − η(θ_i).
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField, Error> {
        if other.nvars != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
                context: "vector field bracket".into(),
            });
        }
        let components = (0..self.nvars)
            .map(|i| {
                let a = self.apply(&other.components[i])?;
                let b = other.apply(&self.components[i])?;
                a.try_sub(&b)
            })
            .collect::<Result<Vec<_>, _>>()?;
        VectorField::new(components)
    }
}

/// A vector field on M^A, stored by its coordinate values X(x_i) and
/// acting on APoly through the tilde extension.
#[derive(Debug, Clone)]
pub struct AVectorField {
    algebra: AlgebraRef,
    nvars: usize,
    components: Vec<APoly>,
}

impl PartialEq for AVectorField {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same(&other.algebra) && self.components == other.components
    }
}

impl AVectorField {
    pub fn new(algebra: &AlgebraRef, components: Vec<APoly>) -> Result<Self, Error> {
        let nvars = components.len();
        for c in &components {
            if c.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: c.nvars(),
                    context: "A-vector field component".into(),
                });
            }
            if !c.ring().0.same(algebra) {
                return Err(Error::AlgebraMismatch {
                    left: algebra.name().to_string(),
                    right: c.ring().describe(),
                });
            }
        }
        Ok(AVectorField {
            algebra: algebra.clone(),
            nvars,
            components,
        })
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[APoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &APoly {
        &self.components[i]
    }

    /// The unique A-linear derivation extending the action on
    /// coordinates: X̃(φ) = Σ_i X(x_i) · ∂φ/∂X_i.
    pub fn tilde_apply(&self, phi: &APoly) -> Result<APoly, Error> {
        if phi.nvars() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: phi.nvars(),
                context: "tilde application".into(),
            });
        }
        if !phi.ring().0.same(&self.algebra) {
            return Err(Error::AlgebraMismatch {
                left: self.algebra.name().to_string(),
                right: phi.ring().describe(),
            });
        }
        let mut acc = APoly::zero(WeilRing(self.algebra.clone()), self.nvars);
        for (i, xi) in self.components.iter().enumerate() {
            acc = acc.try_add(&xi.try_mul(&phi.partial(i))?)?;
        }
        Ok(acc)
    }

    /// Lie bracket [X, Y] = X̃∘Y − Ỹ∘X, componentwise on coordinates.
    pub fn lie_bracket(&self, other: &AVectorField) -> Result<AVectorField, Error> {
        if other.nvars != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
                context: "A-vector field bracket".into(),
            });
        }
        if !other.algebra.same(&self.algebra) {
            return Err(Error::AlgebraMismatch {
                left: self.algebra.name().to_string(),
                right: other.algebra.name().to_string(),
            });
        }
        let components = (0..self.nvars)
            .map(|i| {
                let a = self.tilde_apply(&other.components[i])?;
                let b = other.tilde_apply(&self.components[i])?;
                a.try_sub(&b)
            })
            .collect::<Result<Vec<_>, _>>()?;
        AVectorField::new(&self.algebra, components)
    }
}

/// Prolongation θ^A of a vector field: components (θ_i)^A, so the tilde
/// action satisfies θ^A(f^A) = (θf)^A.
pub fn prolong_vector_field(theta: &VectorField, algebra: &AlgebraRef) -> AVectorField {
    let components = theta
        .components()
        .iter()
        .map(|c| prolong_function(c, algebra))
        .collect();
    AVectorField::new(algebra, components).expect("prolonged components are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};
    use crate::weil::WeilAlgebra;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(RatRing, n, i)
    }

    fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: usize) -> Poly {
        let mut p = Poly::zero(RatRing, nvars);
        for m in monomials_up_to(nvars, max_deg) {
            if rng.random_range(0..3) == 0 {
                p.add_term(m, rat(rng.random_range(-4..=4), rng.random_range(1..=3)));
            }
        }
        p
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let ms = monomials_up_to(2, 2);
        let shown: Vec<String> = ms
            .iter()
            .map(|m| m.format(&["x".into(), "y".into()]))
            .collect();
        assert_eq!(shown, ["1", "x", "y", "x^2", "x*y", "y^2"]);
        let mut sorted = ms.clone();
        sorted.sort();
        assert_eq!(ms, sorted, "enumeration must already be in canonical order");
    }

    #[test]
    fn partial_derivative_examples() {
        // ∂(x²y)/∂x = 2xy
        let f = (&x(2, 0).pow(2)) * &x(2, 1);
        let expect = (&x(2, 0) * &x(2, 1)).scale(&rint(2));
        assert_eq!(f.partial(0), expect);
        // constants die
        let c = Poly::constant(RatRing, 2, rat(7, 3));
        assert!(c.partial(0).is_zero());
        // A-linear case: ∂((1+ε)x²)/∂x = (2+2ε)x
        let dual = WeilAlgebra::jet(1, 1);
        let ring = WeilRing(dual.clone());
        let one_plus_eps =
            WeilElement::from_coeffs(&dual, vec![rint(1), rint(1)]).unwrap();
        let phi = APoly::monomial(ring.clone(), Monomial::from_exps(vec![2]), one_plus_eps);
        let d = phi.partial(0);
        let two_plus_2eps = WeilElement::from_coeffs(&dual, vec![rint(2), rint(2)]).unwrap();
        assert_eq!(d, APoly::monomial(ring, Monomial::from_exps(vec![1]), two_plus_2eps));
        // out of range rejected
        assert!(f.try_partial(5).is_err());
    }

    #[test]
    fn prolong_and_eval_examples() {
        let dual = WeilAlgebra::jet(1, 1);
        let f = x(1, 0).pow(2);
        let fa = prolong_function(&f, &dual);
        let xi = APoint::new(
            &dual,
            vec![WeilElement::from_coeffs(&dual, vec![rint(2), rint(5)]).unwrap()],
        )
        .unwrap();
        // (2+5ε)² = 4 + 20ε
        assert_eq!(
            eval_a(&fa, &xi).unwrap(),
            WeilElement::from_coeffs(&dual, vec![rint(4), rint(20)]).unwrap()
        );

        let jet12 = WeilAlgebra::jet(1, 2);
        let fxy = &x(2, 0) * &x(2, 1);
        let fxy_a = prolong_function(&fxy, &jet12);
        let xi2 = APoint::new(
            &jet12,
            vec![
                WeilElement::from_coeffs(&jet12, vec![rint(1), rint(1), rint(0)]).unwrap(),
                WeilElement::from_coeffs(&jet12, vec![rint(2), rint(3), rint(1)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            eval_a(&fxy_a, &xi2).unwrap(),
            WeilElement::from_coeffs(&jet12, vec![rint(2), rint(5), rint(4)]).unwrap()
        );

        // constants prolong to A-constants
        let c = Poly::constant(RatRing, 1, rat(3, 2));
        let ca = prolong_function(&c, &dual);
        let anywhere = APoint::real(&dual, &[rint(9)]);
        assert_eq!(
            eval_a(&ca, &anywhere).unwrap(),
            WeilElement::scalar(&dual, rat(3, 2))
        );
    }

    #[test]
    fn eval_is_multiplicative_and_matches_classical_on_real_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = WeilAlgebra::jet(2, 2);
        for _ in 0..15 {
            let f = random_poly(&mut rng, 2, 3);
            let g = random_poly(&mut rng, 2, 3);
            let fa = prolong_function(&f, &a);
            let ga = prolong_function(&g, &a);
            let xi = APoint::new(
                &a,
                (0..2)
                    .map(|_| {
                        WeilElement::from_coeffs(
                            &a,
                            (0..a.dim()).map(|_| rat(rng.random_range(-3..=3), 1)).collect(),
                        )
                        .unwrap()
                    })
                    .collect(),
            )
            .unwrap();
            let lhs = eval_a(&fa.try_mul(&ga).unwrap(), &xi).unwrap();
            let rhs = &eval_a(&fa, &xi).unwrap() * &eval_a(&ga, &xi).unwrap();
            assert_eq!(lhs, rhs);

            // real-coordinate evaluation factors through projection
            let p: Vec<Rat> = (0..2).map(|_| rat(rng.random_range(-5..=5), 1)).collect();
            let real_xi = APoint::real(&a, &p);
            let through_a = eval_a(&fa, &real_xi).unwrap();
            assert_eq!(through_a.aug(), f.eval(&p).unwrap());
            assert_eq!(through_a, WeilElement::scalar(&a, f.eval(&p).unwrap()));
        }
    }

    #[test]
    fn projection_examples() {
        let dual = WeilAlgebra::jet(1, 1);
        let xi = APoint::new(
            &dual,
            vec![
                WeilElement::from_coeffs(&dual, vec![rint(1), rint(2)]).unwrap(),
                WeilElement::from_coeffs(&dual, vec![rint(3), rint(-1)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(xi.project(), vec![rint(1), rint(3)]);
        let real = APoint::real(&dual, &[rat(7, 2)]);
        assert_eq!(real.project(), vec![rat(7, 2)]);
    }

    #[test]
    fn prolong_map_functoriality() {
        let dual = WeilAlgebra::jet(1, 1);
        let one_plus_eps = APoint::new(
            &dual,
            vec![WeilElement::from_coeffs(&dual, vec![rint(1), rint(1)]).unwrap()],
        )
        .unwrap();
        let h = vec![x(1, 0).pow(2)];
        let hx = prolong_map(&h, &one_plus_eps).unwrap();
        assert_eq!(
            hx.coords()[0],
            WeilElement::from_coeffs(&dual, vec![rint(1), rint(2)]).unwrap()
        );
        // identity map is the identity
        let id = vec![x(1, 0)];
        assert_eq!(prolong_map(&id, &one_plus_eps).unwrap(), one_plus_eps);
        // g(y) = y + 1 after h: both composition orders agree
        let g = vec![&x(1, 0) + &Poly::one(RatRing, 1)];
        let lhs = prolong_map(&g, &hx).unwrap();
        let composed: Vec<Poly> = g.iter().map(|gi| gi.compose(&h).unwrap()).collect();
        let rhs = prolong_map(&composed, &one_plus_eps).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            lhs.coords()[0],
            WeilElement::from_coeffs(&dual, vec![rint(2), rint(2)]).unwrap()
        );

        // randomized functoriality on arity-2 maps
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let a = WeilAlgebra::jet(2, 2);
        for _ in 0..10 {
            let h: Vec<Poly> = (0..2).map(|_| random_poly(&mut rng, 2, 2)).collect();
            let g: Vec<Poly> = (0..2).map(|_| random_poly(&mut rng, 2, 2)).collect();
            let xi = APoint::new(
                &a,
                (0..2)
                    .map(|_| {
                        WeilElement::from_coeffs(
                            &a,
                            (0..a.dim()).map(|_| rat(rng.random_range(-2..=2), 1)).collect(),
                        )
                        .unwrap()
                    })
                    .collect(),
            )
            .unwrap();
            let two_step = prolong_map(&g, &prolong_map(&h, &xi).unwrap()).unwrap();
            let composed: Vec<Poly> = g.iter().map(|gi| gi.compose(&h).unwrap()).collect();
            let one_step = prolong_map(&composed, &xi).unwrap();
            assert_eq!(two_step, one_step);
        }
    }

    #[test]
    fn hom_induced_point_map() {
        let jet12 = WeilAlgebra::jet(1, 2);
        let dual = WeilAlgebra::jet(1, 1);
        let xi = APoint::new(
            &jet12,
            vec![WeilElement::from_coeffs(&jet12, vec![rint(1), rint(1), rint(1)]).unwrap()],
        )
        .unwrap();
        let trunc = AlgebraHom::label_truncation(&jet12, &dual).unwrap();
        let img = apply_hom_point(&trunc, &xi).unwrap();
        assert_eq!(
            img.coords()[0],
            WeilElement::from_coeffs(&dual, vec![rint(1), rint(1)]).unwrap()
        );
        let id = AlgebraHom::identity(&jet12);
        assert_eq!(apply_hom_point(&id, &xi).unwrap(), xi);
        // augmentation hom reproduces the projection
        let aug = AlgebraHom::augmentation_hom(&jet12);
        let projected = apply_hom_point(&aug, &xi).unwrap();
        assert_eq!(projected.project(), xi.project());
        assert!(projected.algebra().is_trivial());
    }

    #[test]
    fn tilde_examples() {
        let dual = WeilAlgebra::jet(1, 1);
        let ring = WeilRing(dual.clone());
        let eps = WeilElement::basis(&dual, 1);
        // X(x) = ε, φ = (x^A)² → 2ε·x^A
        let x_a = APoly::var(ring.clone(), 1, 0);
        let big_x = AVectorField::new(
            &dual,
            vec![APoly::constant(ring.clone(), 1, eps.clone())],
        )
        .unwrap();
        let phi = x_a.pow(2);
        let got = big_x.tilde_apply(&phi).unwrap();
        let expect = x_a.scale_elem(&eps).scale(&rint(2));
        assert_eq!(got, expect);
        // φ = 1 dies
        assert!(big_x
            .tilde_apply(&APoly::one(ring.clone(), 1))
            .unwrap()
            .is_zero());
        // Euler: X(x) = x^A on φ = (x^A)³ → 3(x^A)³
        let euler = AVectorField::new(&dual, vec![x_a.clone()]).unwrap();
        assert_eq!(
            euler.tilde_apply(&x_a.pow(3)).unwrap(),
            x_a.pow(3).scale(&rint(3))
        );
    }

    #[test]
    fn tilde_is_a_linear_leibniz_and_agrees_on_prolongations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = WeilAlgebra::jet(2, 2);
        let ring = WeilRing(a.clone());
        let random_apoly = |rng: &mut ChaCha8Rng| {
            let mut p = APoly::zero(ring.clone(), 2);
            for m in monomials_up_to(2, 2) {
                if rng.random_range(0..3) == 0 {
                    let coeffs = (0..a.dim()).map(|_| rat(rng.random_range(-2..=2), 1)).collect();
                    p.add_term(m.clone(), WeilElement::from_coeffs(&a, coeffs).unwrap());
                }
            }
            p
        };
        for _ in 0..10 {
            let xf = AVectorField::new(
                &a,
                (0..2).map(|_| random_apoly(&mut rng)).collect(),
            )
            .unwrap();
            let phi = random_apoly(&mut rng);
            let psi = random_apoly(&mut rng);
            // A-linearity
            let coeffs = (0..a.dim()).map(|_| rat(rng.random_range(-2..=2), 1)).collect();
            let lambda = WeilElement::from_coeffs(&a, coeffs).unwrap();
            let lhs = xf.tilde_apply(&phi.scale_elem(&lambda)).unwrap();
            let rhs = xf.tilde_apply(&phi).unwrap().scale_elem(&lambda);
            assert_eq!(lhs, rhs);
            // Leibniz
            let prod = xf.tilde_apply(&phi.try_mul(&psi).unwrap()).unwrap();
            let leib = &xf.tilde_apply(&phi).unwrap().try_mul(&psi).unwrap()
                + &phi.try_mul(&xf.tilde_apply(&psi).unwrap()).unwrap();
            assert_eq!(prod, leib);
            // agreement with the base field on prolonged functions
            let theta = VectorField::new(
                (0..2).map(|_| random_poly(&mut rng, 2, 2)).collect(),
            )
            .unwrap();
            let f = random_poly(&mut rng, 2, 2);
            let theta_a = prolong_vector_field(&theta, &a);
            let via_tilde = theta_a
                .tilde_apply(&prolong_function(&f, &a))
                .unwrap();
            let via_base = prolong_function(&theta.apply(&f).unwrap(), &a);
            assert_eq!(via_tilde, via_base);
        }
    }

    #[test]
    fn prolonged_vector_field_examples() {
        let dual = WeilAlgebra::jet(1, 1);
        // θ = ∂/∂x, f = x²: action on f^A is (2x)^A
        let theta = VectorField::new(vec![Poly::one(RatRing, 1)]).unwrap();
        let theta_a = prolong_vector_field(&theta, &dual);
        let f = x(1, 0).pow(2);
        assert_eq!(
            theta_a.tilde_apply(&prolong_function(&f, &dual)).unwrap(),
            prolong_function(&x(1, 0).scale(&rint(2)), &dual)
        );
        // θ = y∂/∂x on ℝ², f = x² → (2xy)^A by both routes
        let a = WeilAlgebra::jet(2, 2);
        let theta2 = VectorField::new(vec![x(2, 1), Poly::zero(RatRing, 2)]).unwrap();
        let f2 = x(2, 0).pow(2);
        let lhs = prolong_vector_field(&theta2, &a)
            .tilde_apply(&prolong_function(&f2, &a))
            .unwrap();
        let rhs = prolong_function(&theta2.apply(&f2).unwrap(), &a);
        assert_eq!(lhs, rhs);
        assert_eq!(
            rhs,
            prolong_function(&(&x(2, 0) * &x(2, 1)).scale(&rint(2)), &a)
        );
    }

    #[test]
    fn lie_bracket_examples_and_jacobi() {
        let dual = WeilAlgebra::jet(1, 1);
        // [∂x^A, (x ∂x)^A] = ∂x^A
        let d_x = VectorField::new(vec![Poly::one(RatRing, 1)]).unwrap();
        let x_dx = VectorField::new(vec![x(1, 0)]).unwrap();
        let lhs = prolong_vector_field(&d_x, &dual)
            .lie_bracket(&prolong_vector_field(&x_dx, &dual))
            .unwrap();
        assert_eq!(lhs, prolong_vector_field(&d_x, &dual));
        // [X, X] = 0
        let self_bracket = lhs.lie_bracket(&lhs).unwrap();
        assert!(self_bracket.components().iter().all(APoly::is_zero));
        // prolongation is a Lie algebra map: θ = y∂x, η = x∂y
        let a = WeilAlgebra::jet(2, 2);
        let theta = VectorField::new(vec![x(2, 1), Poly::zero(RatRing, 2)]).unwrap();
        let eta = VectorField::new(vec![Poly::zero(RatRing, 2), x(2, 0)]).unwrap();
        let classical = theta.lie_bracket(&eta).unwrap();
        assert_eq!(classical.components()[0], x(2, 0).neg());
        assert_eq!(classical.components()[1], x(2, 1));
        let prolonged_bracket = prolong_vector_field(&theta, &a)
            .lie_bracket(&prolong_vector_field(&eta, &a))
            .unwrap();
        assert_eq!(prolonged_bracket, prolong_vector_field(&classical, &a));

        // Jacobi identity on a fixed nontrivial triple
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ring = WeilRing(a.clone());
        let rand_field = |rng: &mut ChaCha8Rng| {
            AVectorField::new(
                &a,
                (0..2)
                    .map(|_| {
                        let mut p = APoly::zero(ring.clone(), 2);
                        for m in monomials_up_to(2, 1) {
                            let coeffs = (0..a.dim())
                                .map(|_| rat(rng.random_range(-2..=2), 1))
                                .collect();
                            p.add_term(m.clone(), WeilElement::from_coeffs(&a, coeffs).unwrap());
                        }
                        p
                    })
                    .collect(),
            )
            .unwrap()
        };
        for _ in 0..5 {
            let (xv, yv, zv) = (rand_field(&mut rng), rand_field(&mut rng), rand_field(&mut rng));
            let j1 = xv.lie_bracket(&yv.lie_bracket(&zv).unwrap()).unwrap();
            let j2 = yv.lie_bracket(&zv.lie_bracket(&xv).unwrap()).unwrap();
            let j3 = zv.lie_bracket(&xv.lie_bracket(&yv).unwrap()).unwrap();
            for i in 0..2 {
                let total = &(&j1.components()[i] + &j2.components()[i]) + &j3.components()[i];
                assert!(total.is_zero(), "Jacobi fails in component {i}");
            }
        }
    }

    #[test]
    fn product_prolongation_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for alg in [WeilAlgebra::jet(1, 1), WeilAlgebra::jet(1, 2), WeilAlgebra::jet(2, 2)] {
            for _ in 0..10 {
                let f = random_poly(&mut rng, 2, 3);
                let g = random_poly(&mut rng, 2, 3);
                let fg = f.try_mul(&g).unwrap();
                assert_eq!(
                    prolong_function(&fg, &alg),
                    prolong_function(&f, &alg)
                        .try_mul(&prolong_function(&g, &alg))
                        .unwrap()
                );
                let sum = f.try_add(&g).unwrap();
                assert_eq!(
                    prolong_function(&sum, &alg),
                    prolong_function(&f, &alg)
                        .try_add(&prolong_function(&g, &alg))
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn display_formats() {
        let p = &(&x(2, 0).pow(2) - &x(2, 1).scale(&rint(2))) + &Poly::one(RatRing, 2);
        assert_eq!(p.to_string(), "x1^2-2*x2+1");
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.format_with(&names), "x^2-2*y+1");
        assert_eq!(Poly::zero(RatRing, 2).to_string(), "0");
        let half = x(1, 0).scale(&rat(-1, 2));
        assert_eq!(half.to_string(), "-1/2*x1");
    }
}
