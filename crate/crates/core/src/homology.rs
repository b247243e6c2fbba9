//! Degree-truncated, finite-dimensional realizations of the three cochain
//! complexes and exact cohomology dimensions.
//!
//! A truncation window keeps multivector cochains whose coefficient
//! monomials have degree at most D. When the structure matrix is
//! homogeneous of degree k (k = 0 constant, k = 1 linear, …) the
//! differential shifts coefficient degree by exactly k − 1, so the complex
//! splits into finite weight slices and the truncated cohomology is exact:
//! each slice is computed independently (boundaries are taken from the
//! neighbouring slice even when it lies just outside the window) and the
//! dimensions are summed. For inhomogeneous structures no grading exists
//! and the engine reports kernels and ranks only, never quotients.
//!
//! All ranks come from exact rational elimination; no floating point is
//! involved anywhere.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cochain::{
    increasing_tuples, BaseComplex, Complex, ComplexKind, MixedComplex, MultiVector,
    SignConvention, WeilComplex,
};
use crate::error::Error;
use crate::linalg::{reduce_against, rref_rows, RatMat};
use crate::poisson::{PiHomogeneity, PoissonStructure};
use crate::poly::{monomials_of_degree, APoly, Monomial, Poly, WeilRing};
use crate::rat::Rat;
use crate::weil::{AlgebraRef, WeilElement};
use num_traits::{One, Zero};

/// Default cap on the number of basis cochains in a single enumeration.
pub const DEFAULT_BASIS_CAP: usize = 50_000;

/// Truncation window for the finite-dimensional computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    /// Largest cochain degree p included in the report.
    pub pmax: usize,
    /// Largest coefficient monomial degree kept in the window.
    pub max_degree: usize,
    /// Guard against runaway basis sizes.
    pub basis_cap: usize,
}

impl Truncation {
    pub fn new(pmax: usize, max_degree: usize) -> Self {
        Truncation {
            pmax,
            max_degree,
            basis_cap: DEFAULT_BASIS_CAP,
        }
    }
}

/// A complex that exposes the finite ℝ-basis structure of its truncated
/// value spaces: values decompose over (coefficient monomial, algebra
/// basis index) with rational coordinates.
pub trait Expand: Complex {
    /// Real dimension of the coefficient algebra (1 for the base complex).
    fn a_dim(&self) -> usize;
    /// Display name of the coefficient algebra.
    fn algebra_name(&self) -> String;
    /// The value `monomial ⊗ e_t`.
    fn basis_val(&self, m: &Monomial, t: usize) -> Self::Val;
    /// Rational coordinates of a value over (monomial, algebra index).
    fn decompose(&self, v: &Self::Val) -> Vec<(Monomial, usize, Rat)>;
    /// Scalar multiplication of a value by a rational.
    fn val_scale(&self, v: &Self::Val, r: &Rat) -> Self::Val;
}

impl Expand for BaseComplex {
    fn a_dim(&self) -> usize {
        1
    }
    fn algebra_name(&self) -> String {
        "R".into()
    }
    fn basis_val(&self, m: &Monomial, t: usize) -> Poly {
        debug_assert_eq!(t, 0);
        Poly::monomial(crate::poly::RatRing, m.clone(), Rat::one())
    }
    fn decompose(&self, v: &Poly) -> Vec<(Monomial, usize, Rat)> {
        v.terms().map(|(m, c)| (m.clone(), 0, c.clone())).collect()
    }
    fn val_scale(&self, v: &Poly, r: &Rat) -> Poly {
        v.scale(r)
    }
}

fn apoly_basis_val(algebra: &AlgebraRef, nvars: usize, m: &Monomial, t: usize) -> APoly {
    debug_assert_eq!(m.nvars(), nvars);
    APoly::monomial(
        WeilRing(algebra.clone()),
        m.clone(),
        WeilElement::basis(algebra, t),
    )
}

fn apoly_decompose(v: &APoly) -> Vec<(Monomial, usize, Rat)> {
    let mut out = Vec::new();
    for (m, elem) in v.terms() {
        for (t, c) in elem.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.push((m.clone(), t, c.clone()));
            }
        }
    }
    out
}

impl Expand for MixedComplex {
    fn a_dim(&self) -> usize {
        self.algebra().dim()
    }
    fn algebra_name(&self) -> String {
        self.algebra().name().to_string()
    }
    fn basis_val(&self, m: &Monomial, t: usize) -> APoly {
        apoly_basis_val(self.algebra(), self.nvars(), m, t)
    }
    fn decompose(&self, v: &APoly) -> Vec<(Monomial, usize, Rat)> {
        apoly_decompose(v)
    }
    fn val_scale(&self, v: &APoly, r: &Rat) -> APoly {
        v.scale(r)
    }
}

impl Expand for WeilComplex {
    fn a_dim(&self) -> usize {
        self.algebra().dim()
    }
    fn algebra_name(&self) -> String {
        self.algebra().name().to_string()
    }
    fn basis_val(&self, m: &Monomial, t: usize) -> APoly {
        apoly_basis_val(self.algebra(), self.nvars(), m, t)
    }
    fn decompose(&self, v: &APoly) -> Vec<(Monomial, usize, Rat)> {
        apoly_decompose(v)
    }
    fn val_scale(&self, v: &APoly, r: &Rat) -> APoly {
        v.scale(r)
    }
}

/// One basis cochain of the truncated window: the multivector with a
/// single coefficient `monomial ⊗ e_{a_index}` on one increasing tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisCochain {
    pub tuple: Vec<usize>,
    pub monomial: Monomial,
    pub a_index: usize,
}

fn count_monomials(nvars: usize, degree: usize) -> u128 {
    // C(nvars - 1 + degree, degree), saturating.
    let mut acc: u128 = 1;
    for i in 0..degree {
        acc = acc.saturating_mul((nvars + i) as u128);
        acc /= (i + 1) as u128;
    }
    acc
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128);
        acc /= (i + 1) as u128;
    }
    acc
}

/// Ordered basis of p-cochains whose coefficient degree lies in
/// `min_degree..=max_degree`: index tuples ascending, then monomials in
/// the canonical graded order, then algebra basis indices.
pub fn enumerate_basis<C: Expand>(
    cx: &C,
    p: usize,
    min_degree: usize,
    max_degree: usize,
    cap: usize,
) -> Result<Vec<BasisCochain>, Error> {
    if min_degree > max_degree {
        return Ok(Vec::new());
    }
    let n = cx.nvars();
    let mono_count: u128 = (min_degree..=max_degree)
        .map(|d| count_monomials(n, d))
        .sum();
    let total = binomial(n, p)
        .saturating_mul(mono_count)
        .saturating_mul(cx.a_dim() as u128);
    if total > cap as u128 {
        return Err(Error::BasisOverflow(total.min(usize::MAX as u128) as usize, cap));
    }
    let mut monos = Vec::new();
    for d in min_degree..=max_degree {
        monos.extend(monomials_of_degree(n, d));
    }
    let mut out = Vec::new();
    for tuple in increasing_tuples(n, p) {
        for m in &monos {
            for t in 0..cx.a_dim() {
                out.push(BasisCochain {
                    tuple: tuple.clone(),
                    monomial: m.clone(),
                    a_index: t,
                });
            }
        }
    }
    Ok(out)
}

/// The multivector realizing a basis cochain.
pub fn basis_multivector<C: Expand>(cx: &C, b: &BasisCochain) -> Result<MultiVector<C>, Error> {
    MultiVector::from_entries(
        cx,
        b.tuple.len(),
        vec![(b.tuple.clone(), cx.basis_val(&b.monomial, b.a_index))],
    )
}

/// Exact matrix of the differential restricted to a truncation window:
/// column j is the coboundary of domain basis cochain j expanded over the
/// codomain basis.
#[derive(Debug, Clone)]
pub struct ComplexMatrix {
    pub domain: Vec<BasisCochain>,
    pub codomain: Vec<BasisCochain>,
    pub mat: RatMat,
}

/// Assemble the matrix of the degree-p differential with the stated
/// coefficient-degree windows on domain and codomain. Every coefficient of
/// every coboundary must land inside the codomain window; escaping the
/// window is reported as an error (it means the window bounds are wrong
/// for the structure at hand).
pub fn assemble_matrix<C: Expand>(
    cx: &C,
    p: usize,
    domain_degrees: (usize, usize),
    codomain_degrees: (usize, usize),
    sign: SignConvention,
    cap: usize,
) -> Result<ComplexMatrix, Error> {
    let domain = enumerate_basis(cx, p, domain_degrees.0, domain_degrees.1, cap)?;
    let codomain = enumerate_basis(cx, p + 1, codomain_degrees.0, codomain_degrees.1, cap)?;
    let mut index: BTreeMap<(Vec<usize>, Monomial, usize), usize> = BTreeMap::new();
    for (row, b) in codomain.iter().enumerate() {
        index.insert((b.tuple.clone(), b.monomial.clone(), b.a_index), row);
    }
    let mut mat = RatMat::zero(codomain.len(), domain.len());
    for (col, b) in domain.iter().enumerate() {
        let mv = basis_multivector(cx, b)?;
        let image = mv.coboundary(cx, sign)?;
        for (tuple, val) in image.entries() {
            for (m, t, c) in cx.decompose(val) {
                let key = (tuple.clone(), m, t);
                let row = index.get(&key).copied().ok_or_else(|| {
                    Error::ComplexMismatch(format!(
                        "coboundary coefficient of degree {} escapes the codomain window {}..={}",
                        key.1.degree(),
                        codomain_degrees.0,
                        codomain_degrees.1
                    ))
                })?;
                mat.set(row, col, c);
            }
        }
    }
    Ok(ComplexMatrix {
        domain,
        codomain,
        mat,
    })
}

/// Largest total degree among the structure matrix entries.
pub fn max_pi_degree(pi: &PoissonStructure) -> usize {
    let n = pi.nvars();
    let mut d = 0;
    for i in 0..n {
        for j in 0..n {
            if !pi.pi(i, j).is_zero() {
                d = d.max(pi.pi(i, j).degree() as usize);
            }
        }
    }
    d
}

/// Codomain degree bound that contains the image of a window of
/// coefficient degree ≤ D.
pub fn codomain_degree_bound(pi: &PoissonStructure, max_degree: usize) -> usize {
    (max_degree + max_pi_degree(pi)).saturating_sub(1)
}

/// Per-weight slice data for a graded structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: usize,
    pub dim: usize,
    pub rank: usize,
    pub ker: usize,
    /// Rank of the incoming differential from the neighbouring slice.
    pub boundary: usize,
    #[serde(rename = "H")]
    pub h: usize,
}

/// Aggregated numbers for one cochain degree p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub p: usize,
    pub dim: usize,
    pub rank: usize,
    pub ker: usize,
    #[serde(rename = "H", skip_serializing_if = "Option::is_none", default)]
    pub h: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub weights: Vec<WeightRow>,
}

/// Cohomology dimensions of a truncated complex, with per-weight
/// breakdown and canonical cocycle representatives where quotients are
/// certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub complex: ComplexKind,
    pub algebra: String,
    pub structure: String,
    #[serde(rename = "D")]
    pub max_degree: usize,
    pub pmax: usize,
    pub homogeneity: String,
    pub quotients_certified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub table: Vec<DegreeRow>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub representatives: BTreeMap<String, Vec<String>>,
}

fn homogeneity_label(h: PiHomogeneity) -> String {
    match h {
        PiHomogeneity::Homogeneous(0) => "constant".into(),
        PiHomogeneity::Homogeneous(1) => "linear".into(),
        PiHomogeneity::Homogeneous(k) => format!("homogeneous of degree {k}"),
        PiHomogeneity::Mixed => "inhomogeneous".into(),
    }
}

/// Renders a multivector as human-readable text: each tensor entry as
/// `(coefficient) d/dv1 ^ d/dv2`, degree-0 cochains as the bare
/// coefficient.
pub fn render_multivector<C: Expand>(cx: &C, mv: &MultiVector<C>) -> String {
    if mv.is_zero() {
        return "0".into();
    }
    if mv.degree() == 0 {
        return mv
            .entries()
            .next()
            .map(|(_, v)| cx.format_val(v))
            .unwrap_or_else(|| "0".into());
    }
    let vars = cx.structure().vars().to_vec();
    mv.entries()
        .map(|(tuple, v)| {
            let wedge: Vec<String> = tuple.iter().map(|&i| format!("d/d{}", vars[i])).collect();
            format!("({}) {}", cx.format_val(v), wedge.join(" ^ "))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Builds the multivector with the given rational coordinates over a
/// domain basis.
fn vector_to_multivector<C: Expand>(
    cx: &C,
    p: usize,
    basis: &[BasisCochain],
    coords: &[Rat],
) -> Result<MultiVector<C>, Error> {
    let entries: Vec<(Vec<usize>, C::Val)> = basis
        .iter()
        .zip(coords)
        .filter(|(_, c)| !c.is_zero())
        .map(|(b, c)| {
            (
                b.tuple.clone(),
                cx.val_scale(&cx.basis_val(&b.monomial, b.a_index), c),
            )
        })
        .collect();
    MultiVector::from_entries(cx, p, entries)
}

struct SliceEngine<'a, C: Expand> {
    cx: &'a C,
    sign: SignConvention,
    cap: usize,
    /// Weight shift of the differential: image weight = w + shift.
    shift: i64,
    cache: BTreeMap<(usize, i64), (usize, usize)>,
}

impl<'a, C: Expand> SliceEngine<'a, C> {
    fn new(cx: &'a C, sign: SignConvention, cap: usize, k: usize) -> Self {
        SliceEngine {
            cx,
            sign,
            cap,
            shift: k as i64 - 1,
            cache: BTreeMap::new(),
        }
    }

    fn matrix(&self, p: usize, w: i64) -> Result<Option<ComplexMatrix>, Error> {
        if w < 0 {
            return Ok(None);
        }
        let w = w as usize;
        let image = w as i64 + self.shift;
        let codomain = if image < 0 {
            // Image degree would be negative: the differential is zero on
            // this slice; use an empty codomain window.
            (1, 0)
        } else {
            (image as usize, image as usize)
        };
        Ok(Some(assemble_matrix(
            self.cx,
            p,
            (w, w),
            codomain,
            self.sign,
            self.cap,
        )?))
    }

    /// (dim, rank) of the differential on the (p, w) slice.
    fn dims(&mut self, p: usize, w: i64) -> Result<(usize, usize), Error> {
        if w < 0 {
            return Ok((0, 0));
        }
        if let Some(&hit) = self.cache.get(&(p, w)) {
            return Ok(hit);
        }
        let data = match self.matrix(p, w)? {
            None => (0, 0),
            Some(m) => (m.domain.len(), m.mat.rank()),
        };
        self.cache.insert((p, w), data);
        Ok(data)
    }

    /// Canonical cohomology representatives of the (p, w) slice, reduced
    /// against the boundary space.
    fn representatives(&mut self, p: usize, w: usize) -> Result<Vec<MultiVector<C>>, Error> {
        let m = self
            .matrix(p, w as i64)?
            .expect("nonnegative weight always yields a matrix");
        let kernel = m.mat.nullspace();
        let boundary_rows: Vec<Vec<Rat>> = if p == 0 {
            Vec::new()
        } else {
            match self.matrix(p - 1, w as i64 - self.shift)? {
                None => Vec::new(),
                Some(prev) => {
                    // The previous slice's codomain enumeration coincides
                    // with this slice's domain enumeration.
                    debug_assert_eq!(prev.codomain, m.domain);
                    (0..prev.mat.cols)
                        .map(|j| (0..prev.mat.rows).map(|i| prev.mat.at(i, j).clone()).collect())
                        .collect()
                }
            }
        };
        let mut rref = rref_rows(boundary_rows);
        let mut reps = Vec::new();
        for v in kernel {
            let reduced = reduce_against(&v, &rref);
            if reduced.iter().all(Rat::is_zero) {
                continue;
            }
            // Normalize the leading coefficient to 1 for a canonical form.
            let lead = reduced
                .iter()
                .find(|c| !c.is_zero())
                .cloned()
                .expect("nonzero vector has a leading coefficient");
            let normalized: Vec<Rat> = reduced.iter().map(|c| c / &lead).collect();
            reps.push(vector_to_multivector(self.cx, p, &m.domain, &normalized)?);
            let mut rows = rref;
            rows.push(normalized);
            rref = rref_rows(rows);
        }
        Ok(reps)
    }
}

/// Exact cohomology dimensions of the truncated complex.
///
/// For homogeneous structures the quotients are certified: every weight
/// slice is finite and computed exactly, including boundaries arriving
/// from coefficient degrees just outside the window. For inhomogeneous
/// structures the report is downgraded to kernels and ranks.
pub fn betti<C: Expand>(
    cx: &C,
    trunc: Truncation,
    sign: SignConvention,
) -> Result<BettiReport, Error> {
    let pi = cx.structure();
    let homog = pi.homogeneity();
    let mut report = BettiReport {
        complex: cx.kind(),
        algebra: cx.algebra_name(),
        structure: pi.describe(),
        max_degree: trunc.max_degree,
        pmax: trunc.pmax,
        homogeneity: homogeneity_label(homog),
        quotients_certified: matches!(homog, PiHomogeneity::Homogeneous(_)),
        note: None,
        table: Vec::new(),
        representatives: BTreeMap::new(),
    };
    match homog {
        PiHomogeneity::Homogeneous(k) => {
            let mut engine = SliceEngine::new(cx, sign, trunc.basis_cap, k as usize);
            for p in 0..=trunc.pmax {
                let mut row = DegreeRow {
                    p,
                    dim: 0,
                    rank: 0,
                    ker: 0,
                    h: Some(0),
                    weights: Vec::new(),
                };
                let mut reps: Vec<String> = Vec::new();
                for w in 0..=trunc.max_degree {
                    let (dim, rank) = engine.dims(p, w as i64)?;
                    let ker = dim - rank;
                    let boundary = if p == 0 {
                        0
                    } else {
                        engine.dims(p - 1, w as i64 - engine.shift)?.1
                    };
                    let h = ker.checked_sub(boundary).ok_or_else(|| {
                        Error::ComplexMismatch(format!(
                            "boundary rank exceeds kernel dimension on slice (p={p}, w={w}); \
                             the differential is not nilpotent"
                        ))
                    })?;
                    row.dim += dim;
                    row.rank += rank;
                    row.ker += ker;
                    *row.h.as_mut().expect("graded rows carry H") += h;
                    row.weights.push(WeightRow {
                        weight: w,
                        dim,
                        rank,
                        ker,
                        boundary,
                        h,
                    });
                    if h > 0 {
                        let mvs = engine.representatives(p, w)?;
                        if mvs.len() != h {
                            return Err(Error::ComplexMismatch(format!(
                                "representative count {} disagrees with dim H = {h} \
                                 on slice (p={p}, w={w})",
                                mvs.len()
                            )));
                        }
                        reps.extend(mvs.iter().map(|mv| render_multivector(cx, mv)));
                    }
                }
                if !reps.is_empty() {
                    report.representatives.insert(p.to_string(), reps);
                }
                report.table.push(row);
            }
        }
        PiHomogeneity::Mixed => {
            report.note = Some(
                "structure entries have mixed degrees: the truncated complex does not split \
                 by weight, so only kernels and ranks are reported (no quotient claims)"
                    .into(),
            );
            let bound = codomain_degree_bound(pi, trunc.max_degree);
            for p in 0..=trunc.pmax {
                let m = assemble_matrix(
                    cx,
                    p,
                    (0, trunc.max_degree),
                    (0, bound),
                    sign,
                    trunc.basis_cap,
                )?;
                let rank = m.mat.rank();
                report.table.push(DegreeRow {
                    p,
                    dim: m.domain.len(),
                    rank,
                    ker: m.domain.len() - rank,
                    h: None,
                    weights: Vec::new(),
                });
            }
        }
    }
    if cx.kind() == ComplexKind::Weil {
        let a_note = "dimensions are real dimensions (restriction of scalars)";
        report.note = Some(match report.note.take() {
            Some(n) => format!("{n}; {a_note}"),
            None => a_note.into(),
        });
    }
    Ok(report)
}

/// Basis of the degree-truncated center: all A-valued functions whose
/// p = 0 coboundary vanishes, i.e. the joint kernel of the prolonged
/// Hamiltonian actions of the coordinate functions. The basis is returned
/// in canonical reduced form (unit leading coefficients, reduced against
/// each other).
pub fn center_basis(
    pi: &PoissonStructure,
    algebra: &AlgebraRef,
    max_degree: usize,
    cap: usize,
) -> Result<Vec<APoly>, Error> {
    let cx = MixedComplex::new(pi.clone(), algebra);
    let bound = codomain_degree_bound(pi, max_degree);
    let m = assemble_matrix(
        &cx,
        0,
        (0, max_degree),
        (0, bound),
        SignConvention::Standard,
        cap,
    )?;
    let kernel = rref_rows(m.mat.nullspace());
    kernel
        .into_iter()
        .map(|v| {
            let mv = vector_to_multivector(&cx, 0, &m.domain, &v)?;
            let val = mv
                .entries()
                .next()
                .map(|(_, val)| val.clone())
                .unwrap_or_else(|| cx.zero_val());
            Ok(val)
        })
        .collect()
}

/// Center (H⁰) report: dimension and canonical basis, rendered with plain
/// polynomial syntax when the algebra is trivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterReport {
    pub algebra: String,
    pub structure: String,
    #[serde(rename = "D")]
    pub max_degree: usize,
    pub dimension: usize,
    pub basis: Vec<String>,
}

/// Converts an A-valued polynomial over the trivial algebra to a plain
/// polynomial.
pub fn apoly_over_real_to_poly(v: &APoly) -> Poly {
    let mut out = Poly::zero(crate::poly::RatRing, v.nvars());
    for (m, elem) in v.terms() {
        out.add_term(m.clone(), elem.coeffs()[0].clone());
    }
    out
}

pub fn center_report(
    pi: &PoissonStructure,
    algebra: &AlgebraRef,
    max_degree: usize,
    cap: usize,
) -> Result<(CenterReport, Vec<APoly>), Error> {
    let basis = center_basis(pi, algebra, max_degree, cap)?;
    let rendered: Vec<String> = basis
        .iter()
        .map(|v| {
            if algebra.is_trivial() {
                apoly_over_real_to_poly(v).format_with(pi.vars())
            } else {
                v.format_with(pi.vars())
            }
        })
        .collect();
    Ok((
        CenterReport {
            algebra: algebra.name().to_string(),
            structure: pi.describe(),
            max_degree,
            dimension: basis.len(),
            basis: rendered,
        },
        basis,
    ))
}

/// First-cohomology report: dimension plus explicit cocycle
/// representatives (falsification evidence is first-class output).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Report {
    pub complex: ComplexKind,
    pub algebra: String,
    pub structure: String,
    #[serde(rename = "D")]
    pub max_degree: usize,
    pub dimension: usize,
    pub representatives: Vec<String>,
}

pub fn h1_report<C: Expand>(
    cx: &C,
    max_degree: usize,
    sign: SignConvention,
    cap: usize,
) -> Result<H1Report, Error> {
    let trunc = Truncation {
        pmax: 1,
        max_degree,
        basis_cap: cap,
    };
    let report = betti(cx, trunc, sign)?;
    let row = &report.table[1];
    let dimension = row.h.ok_or_else(|| {
        Error::Unsupported(
            "H¹ is only certified for homogeneous structures; \
             this structure has mixed-degree entries"
                .into(),
        )
    })?;
    Ok(H1Report {
        complex: report.complex,
        algebra: report.algebra.clone(),
        structure: report.structure.clone(),
        max_degree,
        dimension,
        representatives: report
            .representatives
            .get("1")
            .cloned()
            .unwrap_or_default(),
    })
}
