//! Cochain complexes attached to a Poisson structure and their coboundary
//! operators.
//!
//! Three complexes share one engine, differing only in their argument Lie
//! algebra and value module:
//!
//! * **base** — arguments and values are polynomial functions on M; the
//!   action is the Poisson bracket `ρ(f) = {f, ·}`.
//! * **mixed** — arguments are polynomial functions on M, values are
//!   A-valued functions on the Weil bundle M^A; the action is the tilde
//!   extension of the prolonged Hamiltonian field, `ρ(f) = [ad f]^A-tilde`.
//! * **weil** — arguments and values are both A-valued functions on M^A;
//!   the bracket and the action are the lifted bracket `{·,·}_A`.
//!
//! Cochains come in two realizations. A [`MultiVector`] stores a fully
//! antisymmetric coefficient tensor on strictly increasing index tuples and
//! acts through first-order derivatives in each slot; its coboundary is
//! again a multivector, materialized by reading coefficients off coordinate
//! tuples (soundness of that reading is certified by the
//! evaluation-consistency tests rather than assumed). A [`CallableCochain`]
//! is an opaque skew evaluator; its coboundary stays callable and is
//! certified pointwise on probe sets.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poisson::PoissonStructure;
use crate::poly::{prolong_function, APoly, CoefficientRing, MPoly, Poly, RatRing, WeilRing};
use crate::weil::AlgebraRef;

/// Which of the three complexes a cochain or a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Base,
    Mixed,
    Weil,
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::Base => "base",
            ComplexKind::Mixed => "mixed",
            ComplexKind::Weil => "weil",
        })
    }
}

impl FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "base" => Ok(ComplexKind::Base),
            "mixed" => Ok(ComplexKind::Mixed),
            "weil" => Ok(ComplexKind::Weil),
            other => Err(Error::Parse(format!(
                "unknown complex `{other}` (expected base, mixed or weil)"
            ))),
        }
    }
}

/// Sign wiring of the action sum in the coboundary formula.
///
/// `Standard` puts `(−1)^{i−1}` on the i-th action term (1-indexed), the
/// unique choice compatible with `d∘d = 0` for this bracket ordering.
/// `FirstSumNegated` flips those signs to `(−1)^i`; it breaks nilpotency
/// and exists only as a regression guard — the verification suites assert
/// that it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Standard,
    FirstSumNegated,
}

/// Common interface of the three complexes: the argument Lie algebra, the
/// value module, and the action tying them together. Implementors own
/// their data (`'static`), so cochains can capture them in evaluators.
pub trait Complex: 'static {
    /// Cochain argument type (the Lie algebra underlying the complex).
    type Arg: Clone + PartialEq + Send + Sync + 'static;
    /// Cochain value type (the module the arguments act on).
    type Val: Clone + PartialEq + Send + Sync + 'static;

    fn kind(&self) -> ComplexKind;
    fn nvars(&self) -> usize;
    fn structure(&self) -> &PoissonStructure;
    /// The i-th coordinate function as an argument (0-indexed).
    fn coordinate(&self, i: usize) -> Self::Arg;
    /// Lie bracket of two arguments.
    fn arg_bracket(&self, f: &Self::Arg, g: &Self::Arg) -> Result<Self::Arg, Error>;
    /// Action `ρ(f)` of an argument on a value.
    fn action(&self, f: &Self::Arg, v: &Self::Val) -> Result<Self::Val, Error>;

    fn zero_val(&self) -> Self::Val;
    fn val_add(&self, a: &Self::Val, b: &Self::Val) -> Result<Self::Val, Error>;
    fn val_neg(&self, a: &Self::Val) -> Self::Val;
    fn val_is_zero(&self, a: &Self::Val) -> bool;
    /// Multiderivation contraction block: `coeff · det(∂_{rows[r]} args[c])`.
    fn contract(
        &self,
        coeff: &Self::Val,
        rows: &[usize],
        args: &[&Self::Arg],
    ) -> Result<Self::Val, Error>;

    /// Validate an argument against this complex (variable count, algebra).
    fn check_arg(&self, f: &Self::Arg) -> Result<(), Error>;
    /// Validate a tensor coefficient against this complex.
    fn check_val(&self, v: &Self::Val) -> Result<(), Error>;
    /// Render an argument with the structure's variable names.
    fn format_arg(&self, f: &Self::Arg) -> String;
    /// Render a value with the structure's variable names.
    fn format_val(&self, v: &Self::Val) -> String;
}

/// Determinant of a small square matrix of polynomials by Laplace
/// expansion along the first row; the empty matrix has determinant 1.
fn det_mpoly<R: CoefficientRing>(
    ring: &R,
    nvars: usize,
    m: &[Vec<MPoly<R>>],
) -> Result<MPoly<R>, Error> {
    match m.len() {
        0 => Ok(MPoly::one(ring.clone(), nvars)),
        1 => Ok(m[0][0].clone()),
        n => {
            let mut acc = MPoly::zero(ring.clone(), nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MPoly<R>>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].try_mul(&det_mpoly(ring, nvars, &minor)?)?;
                acc = if j % 2 == 0 {
                    acc.try_add(&term)?
                } else {
                    acc.try_sub(&term)?
                };
            }
            Ok(acc)
        }
    }
}

/// The complex of polynomial multilinear forms on M with the Poisson
/// bracket action.
#[derive(Debug, Clone)]
pub struct BaseComplex {
    pi: PoissonStructure,
}

impl BaseComplex {
    pub fn new(pi: PoissonStructure) -> Self {
        BaseComplex { pi }
    }
}

impl Complex for BaseComplex {
    type Arg = Poly;
    type Val = Poly;

    fn kind(&self) -> ComplexKind {
        ComplexKind::Base
    }
    fn nvars(&self) -> usize {
        self.pi.nvars()
    }
    fn structure(&self) -> &PoissonStructure {
        &self.pi
    }
    fn coordinate(&self, i: usize) -> Poly {
        Poly::var(RatRing, self.pi.nvars(), i)
    }
    fn arg_bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, Error> {
        self.pi.bracket(f, g)
    }
    fn action(&self, f: &Poly, v: &Poly) -> Result<Poly, Error> {
        self.pi.bracket(f, v)
    }
    fn zero_val(&self) -> Poly {
        Poly::zero(RatRing, self.pi.nvars())
    }
    fn val_add(&self, a: &Poly, b: &Poly) -> Result<Poly, Error> {
        a.try_add(b)
    }
    fn val_neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn val_is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn contract(&self, coeff: &Poly, rows: &[usize], args: &[&Poly]) -> Result<Poly, Error> {
        let m: Vec<Vec<Poly>> = rows
            .iter()
            .map(|&r| args.iter().map(|f| f.partial(r)).collect())
            .collect();
        coeff.try_mul(&det_mpoly(&RatRing, self.pi.nvars(), &m)?)
    }
    fn check_arg(&self, f: &Poly) -> Result<(), Error> {
        check_poly_vars(f.nvars(), self.pi.nvars(), "base-complex argument")
    }
    fn check_val(&self, v: &Poly) -> Result<(), Error> {
        check_poly_vars(v.nvars(), self.pi.nvars(), "base-complex coefficient")
    }
    fn format_arg(&self, f: &Poly) -> String {
        f.format_with(self.pi.vars())
    }
    fn format_val(&self, v: &Poly) -> String {
        v.format_with(self.pi.vars())
    }
}

/// The complex of multilinear forms on polynomial functions with values in
/// A-valued functions on M^A; arguments act through the tilde extension of
/// their prolonged Hamiltonian fields.
#[derive(Debug, Clone)]
pub struct MixedComplex {
    pi: PoissonStructure,
    algebra: AlgebraRef,
}

impl MixedComplex {
    pub fn new(pi: PoissonStructure, algebra: &AlgebraRef) -> Self {
        MixedComplex {
            pi,
            algebra: algebra.clone(),
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }
}

impl Complex for MixedComplex {
    type Arg = Poly;
    type Val = APoly;

    fn kind(&self) -> ComplexKind {
        ComplexKind::Mixed
    }
    fn nvars(&self) -> usize {
        self.pi.nvars()
    }
    fn structure(&self) -> &PoissonStructure {
        &self.pi
    }
    fn coordinate(&self, i: usize) -> Poly {
        Poly::var(RatRing, self.pi.nvars(), i)
    }
    fn arg_bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, Error> {
        self.pi.bracket(f, g)
    }
    fn action(&self, f: &Poly, v: &APoly) -> Result<APoly, Error> {
        self.pi.prolong_ad_tilde(f, &self.algebra)?.tilde_apply(v)
    }
    fn zero_val(&self) -> APoly {
        APoly::zero(WeilRing(self.algebra.clone()), self.pi.nvars())
    }
    fn val_add(&self, a: &APoly, b: &APoly) -> Result<APoly, Error> {
        a.try_add(b)
    }
    fn val_neg(&self, a: &APoly) -> APoly {
        a.neg()
    }
    fn val_is_zero(&self, a: &APoly) -> bool {
        a.is_zero()
    }
    fn contract(&self, coeff: &APoly, rows: &[usize], args: &[&Poly]) -> Result<APoly, Error> {
        let m: Vec<Vec<Poly>> = rows
            .iter()
            .map(|&r| args.iter().map(|f| f.partial(r)).collect())
            .collect();
        let det = det_mpoly(&RatRing, self.pi.nvars(), &m)?;
        coeff.try_mul(&prolong_function(&det, &self.algebra))
    }
    fn check_arg(&self, f: &Poly) -> Result<(), Error> {
        check_poly_vars(f.nvars(), self.pi.nvars(), "mixed-complex argument")
    }
    fn check_val(&self, v: &APoly) -> Result<(), Error> {
        check_apoly(v, self.pi.nvars(), &self.algebra, "mixed-complex coefficient")
    }
    fn format_arg(&self, f: &Poly) -> String {
        f.format_with(self.pi.vars())
    }
    fn format_val(&self, v: &APoly) -> String {
        v.format_with(self.pi.vars())
    }
}

/// The complex of multilinear forms on A-valued functions, with the lifted
/// bracket `{·,·}_A` as both the argument bracket and the action.
#[derive(Debug, Clone)]
pub struct WeilComplex {
    pi: PoissonStructure,
    algebra: AlgebraRef,
}

impl WeilComplex {
    pub fn new(pi: PoissonStructure, algebra: &AlgebraRef) -> Self {
        WeilComplex {
            pi,
            algebra: algebra.clone(),
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    fn ring(&self) -> WeilRing {
        WeilRing(self.algebra.clone())
    }
}

impl Complex for WeilComplex {
    type Arg = APoly;
    type Val = APoly;

    fn kind(&self) -> ComplexKind {
        ComplexKind::Weil
    }
    fn nvars(&self) -> usize {
        self.pi.nvars()
    }
    fn structure(&self) -> &PoissonStructure {
        &self.pi
    }
    fn coordinate(&self, i: usize) -> APoly {
        APoly::var(self.ring(), self.pi.nvars(), i)
    }
    fn arg_bracket(&self, f: &APoly, g: &APoly) -> Result<APoly, Error> {
        self.pi.bracket_a(f, g)
    }
    fn action(&self, f: &APoly, v: &APoly) -> Result<APoly, Error> {
        self.pi.bracket_a(f, v)
    }
    fn zero_val(&self) -> APoly {
        APoly::zero(self.ring(), self.pi.nvars())
    }
    fn val_add(&self, a: &APoly, b: &APoly) -> Result<APoly, Error> {
        a.try_add(b)
    }
    fn val_neg(&self, a: &APoly) -> APoly {
        a.neg()
    }
    fn val_is_zero(&self, a: &APoly) -> bool {
        a.is_zero()
    }
    fn contract(&self, coeff: &APoly, rows: &[usize], args: &[&APoly]) -> Result<APoly, Error> {
        let m: Vec<Vec<APoly>> = rows
            .iter()
            .map(|&r| args.iter().map(|f| f.partial(r)).collect())
            .collect();
        coeff.try_mul(&det_mpoly(&self.ring(), self.pi.nvars(), &m)?)
    }
    fn check_arg(&self, f: &APoly) -> Result<(), Error> {
        check_apoly(f, self.pi.nvars(), &self.algebra, "weil-complex argument")
    }
    fn check_val(&self, v: &APoly) -> Result<(), Error> {
        check_apoly(v, self.pi.nvars(), &self.algebra, "weil-complex coefficient")
    }
    fn format_arg(&self, f: &APoly) -> String {
        f.format_with(self.pi.vars())
    }
    fn format_val(&self, v: &APoly) -> String {
        v.format_with(self.pi.vars())
    }
}

fn check_poly_vars(got: usize, want: usize, context: &str) -> Result<(), Error> {
    if got == want {
        Ok(())
    } else {
        Err(Error::ComplexMismatch(format!(
            "{context} has {got} variables, complex has {want}"
        )))
    }
}

fn check_apoly(v: &APoly, nvars: usize, algebra: &AlgebraRef, context: &str) -> Result<(), Error> {
    check_poly_vars(v.nvars(), nvars, context)?;
    if v.ring().0.same(algebra) {
        Ok(())
    } else {
        Err(Error::ComplexMismatch(format!(
            "{context} has coefficients in algebra {}, complex uses {}",
            v.ring().0.name(),
            algebra.name()
        )))
    }
}

/// All strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k).collect()
}

/// Sort an index tuple, tracking the sign of the permutation. Returns
/// `None` when an index repeats (the antisymmetric component vanishes);
/// the boolean is true when the permutation is odd.
pub fn normalize_indices(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, odd))
    }
}

/// A multivector cochain: a fully antisymmetric coefficient tensor stored
/// on strictly increasing index tuples (0-indexed variables). Evaluation
/// contracts against first-order derivatives of the arguments:
/// `Ω(f₁,…,f_p) = Σ_{i₁<…<i_p} c_{i₁…i_p} · det(∂_{i_a} f_b)`.
pub struct MultiVector<C: Complex> {
    p: usize,
    nvars: usize,
    coeffs: BTreeMap<Vec<usize>, C::Val>,
}

impl<C: Complex> Clone for MultiVector<C> {
    fn clone(&self) -> Self {
        MultiVector {
            p: self.p,
            nvars: self.nvars,
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<C: Complex> PartialEq for MultiVector<C> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.nvars == other.nvars && self.coeffs == other.coeffs
    }
}

impl<C: Complex> fmt::Debug for MultiVector<C>
where
    C::Val: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiVector")
            .field("p", &self.p)
            .field("nvars", &self.nvars)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<C: Complex> MultiVector<C> {
    /// The zero cochain of degree `p`.
    pub fn zero(cx: &C, p: usize) -> Self {
        MultiVector {
            p,
            nvars: cx.nvars(),
            coeffs: BTreeMap::new(),
        }
    }

    /// Build a tensor from (index tuple, coefficient) entries. Tuples may
    /// arrive in any order; they are normalized with the sign of the
    /// sorting permutation, entries with repeated indices drop out, and
    /// coefficients landing on the same tuple accumulate.
    pub fn from_entries<I>(cx: &C, p: usize, entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vec<usize>, C::Val)>,
    {
        let n = cx.nvars();
        let mut mv = MultiVector {
            p,
            nvars: n,
            coeffs: BTreeMap::new(),
        };
        for (idx, val) in entries {
            if idx.len() != p {
                return Err(Error::ArityMismatch {
                    expected: p,
                    got: idx.len(),
                    context: "tensor index tuple".into(),
                });
            }
            for &i in &idx {
                if i >= n {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        limit: n,
                        context: "tensor index".into(),
                    });
                }
            }
            cx.check_val(&val)?;
            let Some((sorted, negate)) = normalize_indices(&idx) else {
                continue;
            };
            let signed = if negate { cx.val_neg(&val) } else { val };
            match mv.coeffs.entry(sorted) {
                Entry::Vacant(e) => {
                    e.insert(signed);
                }
                Entry::Occupied(mut e) => {
                    let sum = cx.val_add(e.get(), &signed)?;
                    *e.get_mut() = sum;
                }
            }
        }
        mv.coeffs.retain(|_, v| !cx.val_is_zero(v));
        Ok(mv)
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at a strictly increasing index tuple; `None` when the
    /// stored coefficient is zero.
    pub fn coeff(&self, idx: &[usize]) -> Option<&C::Val> {
        self.coeffs.get(idx)
    }

    /// Stored (strictly increasing tuple, coefficient) pairs in tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &C::Val)> {
        self.coeffs.iter()
    }

    /// Evaluate the multilinear form on `p` arguments.
    pub fn eval(&self, cx: &C, args: &[C::Arg]) -> Result<C::Val, Error> {
        self.check_shape(cx)?;
        if args.len() != self.p {
            return Err(Error::ArityMismatch {
                expected: self.p,
                got: args.len(),
                context: "cochain arguments".into(),
            });
        }
        for a in args {
            cx.check_arg(a)?;
        }
        let refs: Vec<&C::Arg> = args.iter().collect();
        let mut acc = cx.zero_val();
        for (idx, coeff) in &self.coeffs {
            let block = cx.contract(coeff, idx, &refs)?;
            acc = cx.val_add(&acc, &block)?;
        }
        Ok(acc)
    }

    /// The coboundary as a multivector of degree `p+1`, materialized by
    /// evaluating the coboundary formula on coordinate tuples. Above the
    /// top multivector degree (p+1 > number of variables) the result is
    /// the zero cochain: no increasing tuples remain.
    pub fn coboundary(&self, cx: &C, sign: SignConvention) -> Result<MultiVector<C>, Error> {
        self.check_shape(cx)?;
        let mut out = MultiVector::zero(cx, self.p + 1);
        for idx in increasing_tuples(self.nvars, self.p + 1) {
            let coords: Vec<C::Arg> = idx.iter().map(|&i| cx.coordinate(i)).collect();
            let val = coboundary_formula(cx, &|a| self.eval(cx, a), self.p, sign, &coords)?;
            if !cx.val_is_zero(&val) {
                out.coeffs.insert(idx, val);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, cx: &C, other: &Self) -> Result<Self, Error> {
        if self.p != other.p || self.nvars != other.nvars {
            return Err(Error::ComplexMismatch(format!(
                "cannot add a degree-{} tensor on {} variables to a degree-{} tensor on {}",
                self.p, self.nvars, other.p, other.nvars
            )));
        }
        let mut out = self.clone();
        for (idx, val) in &other.coeffs {
            match out.coeffs.entry(idx.clone()) {
                Entry::Vacant(e) => {
                    e.insert(val.clone());
                }
                Entry::Occupied(mut e) => {
                    let sum = cx.val_add(e.get(), val)?;
                    *e.get_mut() = sum;
                }
            }
        }
        out.coeffs.retain(|_, v| !cx.val_is_zero(v));
        Ok(out)
    }

    pub fn neg(&self, cx: &C) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = cx.val_neg(v);
        }
        out
    }

    pub fn try_sub(&self, cx: &C, other: &Self) -> Result<Self, Error> {
        self.try_add(cx, &other.neg(cx))
    }

    fn check_shape(&self, cx: &C) -> Result<(), Error> {
        check_poly_vars(self.nvars, cx.nvars(), "multivector cochain")
    }
}

/// An opaque cochain evaluator. Skew-symmetry is the caller's obligation,
/// declared by the flag and spot-checked on argument swaps by the
/// verification suites.
pub struct CallableCochain<C: Complex> {
    p: usize,
    declared_skew: bool,
    #[allow(clippy::type_complexity)]
    eval: Arc<dyn Fn(&C, &[C::Arg]) -> Result<C::Val, Error> + Send + Sync>,
}

impl<C: Complex> Clone for CallableCochain<C> {
    fn clone(&self) -> Self {
        CallableCochain {
            p: self.p,
            declared_skew: self.declared_skew,
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<C: Complex> fmt::Debug for CallableCochain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CallableCochain")
            .field("p", &self.p)
            .field("declared_skew", &self.declared_skew)
            .field("eval", &"<fn>")
            .finish()
    }
}

impl<C: Complex> CallableCochain<C> {
    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn declared_skew(&self) -> bool {
        self.declared_skew
    }
}

/// A cochain in one of its two realizations.
pub enum Cochain<C: Complex> {
    Multi(MultiVector<C>),
    Callable(CallableCochain<C>),
}

impl<C: Complex> Clone for Cochain<C> {
    fn clone(&self) -> Self {
        match self {
            Cochain::Multi(m) => Cochain::Multi(m.clone()),
            Cochain::Callable(c) => Cochain::Callable(c.clone()),
        }
    }
}

impl<C: Complex> Cochain<C> {
    pub fn multi(mv: MultiVector<C>) -> Self {
        Cochain::Multi(mv)
    }

    /// Wrap an evaluator declared to be skew-symmetric.
    pub fn callable<F>(p: usize, f: F) -> Self
    where
        F: Fn(&C, &[C::Arg]) -> Result<C::Val, Error> + Send + Sync + 'static,
    {
        Self::callable_with_skew_flag(p, true, f)
    }

    pub fn callable_with_skew_flag<F>(p: usize, declared_skew: bool, f: F) -> Self
    where
        F: Fn(&C, &[C::Arg]) -> Result<C::Val, Error> + Send + Sync + 'static,
    {
        Cochain::Callable(CallableCochain {
            p,
            declared_skew,
            eval: Arc::new(f),
        })
    }

    pub fn degree(&self) -> usize {
        match self {
            Cochain::Multi(m) => m.p,
            Cochain::Callable(c) => c.p,
        }
    }

    pub fn as_multi(&self) -> Option<&MultiVector<C>> {
        match self {
            Cochain::Multi(m) => Some(m),
            Cochain::Callable(_) => None,
        }
    }

    /// Evaluate on `degree` arguments.
    pub fn eval(&self, cx: &C, args: &[C::Arg]) -> Result<C::Val, Error> {
        match self {
            Cochain::Multi(m) => m.eval(cx, args),
            Cochain::Callable(c) => {
                if args.len() != c.p {
                    return Err(Error::ArityMismatch {
                        expected: c.p,
                        got: args.len(),
                        context: "cochain arguments".into(),
                    });
                }
                for a in args {
                    cx.check_arg(a)?;
                }
                (c.eval)(cx, args)
            }
        }
    }

    /// The coboundary, staying in the same realization: tensors come back
    /// as tensors (read off coordinate tuples), callables as callables.
    pub fn coboundary(&self, cx: &C, sign: SignConvention) -> Result<Cochain<C>, Error> {
        match self {
            Cochain::Multi(m) => Ok(Cochain::Multi(m.coboundary(cx, sign)?)),
            Cochain::Callable(c) => {
                let inner = c.clone();
                let p = c.p;
                Ok(Cochain::Callable(CallableCochain {
                    p: p + 1,
                    declared_skew: c.declared_skew,
                    eval: Arc::new(move |cx: &C, args: &[C::Arg]| {
                        coboundary_formula(cx, &|a| (inner.eval)(cx, a), p, sign, args)
                    }),
                }))
            }
        }
    }

    /// One application of the coboundary formula at explicit arguments,
    /// without materializing anything.
    pub fn coboundary_eval(
        &self,
        cx: &C,
        sign: SignConvention,
        args: &[C::Arg],
    ) -> Result<C::Val, Error> {
        coboundary_formula(cx, &|a| self.eval(cx, a), self.degree(), sign, args)
    }

    /// Closedness certificate. Multivectors are tested symbolically (the
    /// coboundary tensor must vanish; `probes` is ignored); callables are
    /// tested pointwise on the probe tuples, each of arity `degree + 1`.
    pub fn is_closed(
        &self,
        cx: &C,
        sign: SignConvention,
        probes: &[Vec<C::Arg>],
    ) -> Result<Closedness<C>, Error> {
        match self {
            Cochain::Multi(m) => {
                let d = m.coboundary(cx, sign)?;
                match d.coeffs.into_iter().next() {
                    None => Ok(Closedness::Closed),
                    Some((idx, residual)) => Ok(Closedness::Witness {
                        args: idx.iter().map(|&i| cx.coordinate(i)).collect(),
                        residual,
                    }),
                }
            }
            Cochain::Callable(_) => {
                for probe in probes {
                    let r = self.coboundary_eval(cx, sign, probe)?;
                    if !cx.val_is_zero(&r) {
                        return Ok(Closedness::Witness {
                            args: probe.clone(),
                            residual: r,
                        });
                    }
                }
                Ok(Closedness::Closed)
            }
        }
    }

    /// Residual of skew-symmetry under swapping argument slots `a` and
    /// `b`: `Ω(args) + Ω(swapped)`; zero iff the swap is skew.
    pub fn skew_residual(
        &self,
        cx: &C,
        args: &[C::Arg],
        a: usize,
        b: usize,
    ) -> Result<C::Val, Error> {
        let mut swapped = args.to_vec();
        swapped.swap(a, b);
        let lhs = self.eval(cx, args)?;
        let rhs = self.eval(cx, &swapped)?;
        cx.val_add(&lhs, &rhs)
    }
}

/// Outcome of a closedness test.
pub enum Closedness<C: Complex> {
    Closed,
    Witness { args: Vec<C::Arg>, residual: C::Val },
}

impl<C: Complex> Closedness<C> {
    pub fn is_closed(&self) -> bool {
        matches!(self, Closedness::Closed)
    }

    pub fn describe(&self, cx: &C) -> String {
        match self {
            Closedness::Closed => "closed".into(),
            Closedness::Witness { args, residual } => {
                let rendered: Vec<String> = args.iter().map(|a| cx.format_arg(a)).collect();
                format!(
                    "coboundary residual {} at ({})",
                    cx.format_val(residual),
                    rendered.join(", ")
                )
            }
        }
    }
}

/// The coboundary formula shared by the three complexes: for a p-cochain Ω
/// and arguments f₁,…,f_{p+1} (1-indexed),
///
/// ```text
/// (dΩ)(f₁,…,f_{p+1}) = Σ_i (−1)^{i−1} ρ(f_i)·Ω(f₁,…,f̂_i,…,f_{p+1})
///                    + Σ_{i<j} (−1)^{i+j} Ω([f_i,f_j], f₁,…,f̂_i,…,f̂_j,…)
/// ```
///
/// where hats mark omitted arguments and `sign` selects the wiring of the
/// first sum.
pub fn coboundary_formula<C: Complex>(
    cx: &C,
    omega: &dyn Fn(&[C::Arg]) -> Result<C::Val, Error>,
    p: usize,
    sign: SignConvention,
    args: &[C::Arg],
) -> Result<C::Val, Error> {
    if args.len() != p + 1 {
        return Err(Error::ArityMismatch {
            expected: p + 1,
            got: args.len(),
            context: "coboundary arguments".into(),
        });
    }
    let mut acc = cx.zero_val();
    // Action sum: (−1)^{i−1} ρ(f_i) Ω(… f̂_i …), written 0-indexed below.
    for i in 0..=p {
        let rest: Vec<C::Arg> = args
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, f)| f.clone())
            .collect();
        let inner = omega(&rest)?;
        if cx.val_is_zero(&inner) {
            continue;
        }
        let acted = cx.action(&args[i], &inner)?;
        let positive = match sign {
            SignConvention::Standard => i % 2 == 0,
            SignConvention::FirstSumNegated => i % 2 == 1,
        };
        let signed = if positive { acted } else { cx.val_neg(&acted) };
        acc = cx.val_add(&acc, &signed)?;
    }
    // Bracket sum: (−1)^{i+j} Ω([f_i,f_j], … f̂_i … f̂_j …); the 1-indexed
    // sign (−1)^{i+j} equals the 0-indexed (−1)^{i+j} since the shift is 2.
    for i in 0..=p {
        for j in (i + 1)..=p {
            let bracket = cx.arg_bracket(&args[i], &args[j])?;
            let mut rest = Vec::with_capacity(p);
            rest.push(bracket);
            for (k, f) in args.iter().enumerate() {
                if k != i && k != j {
                    rest.push(f.clone());
                }
            }
            let inner = omega(&rest)?;
            if cx.val_is_zero(&inner) {
                continue;
            }
            let signed = if (i + j) % 2 == 0 {
                inner
            } else {
                cx.val_neg(&inner)
            };
            acc = cx.val_add(&acc, &signed)?;
        }
    }
    Ok(acc)
}

/// Residual of the composed coboundary `(d∘d Ω)` at a probe tuple of arity
/// `degree + 2`, computed by two nested applications of the coboundary
/// formula (no tensors are materialized). Must vanish identically under
/// the standard sign convention.
pub fn d_squared_probe<C: Complex>(
    cx: &C,
    omega: &Cochain<C>,
    sign: SignConvention,
    probe: &[C::Arg],
) -> Result<C::Val, Error> {
    let p = omega.degree();
    if probe.len() != p + 2 {
        return Err(Error::ArityMismatch {
            expected: p + 2,
            got: probe.len(),
            context: "d∘d probe arguments".into(),
        });
    }
    coboundary_formula(
        cx,
        &|a| omega.coboundary_eval(cx, sign, a),
        p + 1,
        sign,
        probe,
    )
}

/// Coefficient-wise prolongation of a base multivector to the mixed
/// complex: `η^A(f₁,…,f_p) = (η(f₁,…,f_p))^A`.
pub fn prolong_multivector(
    eta: &MultiVector<BaseComplex>,
    algebra: &AlgebraRef,
) -> MultiVector<MixedComplex> {
    MultiVector {
        p: eta.p,
        nvars: eta.nvars,
        coeffs: eta
            .coeffs
            .iter()
            .map(|(idx, c)| (idx.clone(), prolong_function(c, algebra)))
            .collect(),
    }
}

/// Reinterpret a mixed multivector as a cochain on A-valued arguments
/// (same coefficient tensor; evaluation then differentiates A-valued
/// arguments instead of prolonging derivatives of base arguments).
pub fn mixed_to_weil(omega: &MultiVector<MixedComplex>) -> MultiVector<WeilComplex> {
    MultiVector {
        p: omega.p,
        nvars: omega.nvars,
        coeffs: omega.coeffs.clone(),
    }
}

/// Prolong a base multivector all the way to the weil complex.
pub fn prolong_multivector_weil(
    eta: &MultiVector<BaseComplex>,
    algebra: &AlgebraRef,
) -> MultiVector<WeilComplex> {
    mixed_to_weil(&prolong_multivector(eta, algebra))
}

/// Prolong any base cochain (tensor or callable) to the mixed complex by
/// composing with the coefficient prolongation.
pub fn prolong_cochain(
    eta: &Cochain<BaseComplex>,
    base: &BaseComplex,
    algebra: &AlgebraRef,
) -> Cochain<MixedComplex> {
    match eta {
        Cochain::Multi(m) => Cochain::Multi(prolong_multivector(m, algebra)),
        Cochain::Callable(c) => {
            let inner = c.clone();
            let base = base.clone();
            let algebra = algebra.clone();
            Cochain::Callable(CallableCochain {
                p: c.p,
                declared_skew: c.declared_skew,
                eval: Arc::new(move |_cx: &MixedComplex, args: &[Poly]| {
                    let value = (inner.eval)(&base, args)?;
                    Ok(prolong_function(&value, &algebra))
                }),
            })
        }
    }
}
