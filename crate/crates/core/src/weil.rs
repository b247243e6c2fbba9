//! Weil algebras: finite-dimensional local commutative unital ℝ-algebras
//! A = ℝ ⊕ 𝔪 with nilpotent maximal ideal 𝔪.
//!
//! An algebra is stored as an ordered basis (unit first, remaining
//! labels in graded-lexicographic order for the built-in constructors),
//! sparse structure constants, the augmentation A → ℝ, and the height
//! (least k with 𝔪^{k+1} = 0, computed by powering the ideal). Raw
//! tables are validated exhaustively — commutativity, associativity on
//! all basis triples, augmentation axioms, and nilpotency — and every
//! rejection carries a concrete witness.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraDefect, Error, HomDefect};
use crate::linalg::{rref_rows, RatMat};
use crate::poly::{monomials_of_degree, Monomial};
use crate::rat::Rat;

/// Shared handle to an immutable algebra; cheap to clone.
pub type AlgebraRef = Arc<WeilAlgebra>;

/// Largest basis dimension we accept (validation is O(dim^3)).
pub const MAX_DIM: usize = 512;

/// Sparse structure constants: entry `[i*dim+j]` lists the nonzero
/// coordinates of e_i · e_j as (basis index, coefficient).
type SparseTable = Vec<Vec<(usize, Rat)>>;

/// How basis labels decompose into atomic generator names.
#[derive(Debug, Clone)]
enum AtomKind {
    /// Quotient of ℝ[vars] by a monomial ideal; basis label i is the
    /// surviving monomial `exps[i]`.
    Monomial { vars: Vec<String>, exps: Vec<Monomial> },
    /// Raw table: every non-unit basis label is its own atom.
    Table,
}

/// Resolution of an atomic label inside a particular algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    /// A basis element.
    Basis(usize),
    /// A generator that is zero in the quotient (killed by a relation).
    Killed,
    /// Not a generator of this algebra.
    Unknown,
}

/// A Weil algebra: finite-dimensional local commutative unital ℝ-algebra.
#[derive(Debug)]
pub struct WeilAlgebra {
    name: String,
    labels: Vec<String>,
    dim: usize,
    table: SparseTable,
    aug: Vec<Rat>,
    height: usize,
    ideal: Vec<usize>,
    atoms: AtomKind,
}

impl WeilAlgebra {
    /// The trivial algebra ℝ (admitted as a degenerate Weil algebra).
    pub fn real() -> AlgebraRef {
        Self::from_monomials("R".into(), Vec::new(), vec![Monomial::unit(0)])
            .expect("trivial algebra is valid")
    }

    /// Jet algebra ℝ[X₁..X_r]/𝔪^{k+1}: basis = monomials of total degree
    /// ≤ k in generators e1..er; height k (ℝ when r = 0 or k = 0).
    pub fn jet(r: usize, k: usize) -> AlgebraRef {
        Self::try_jet(r, k).expect("jet algebra construction is internally consistent")
    }

    /// Fallible jet constructor with a size guard for untrusted input.
    pub fn try_jet(r: usize, k: usize) -> Result<AlgebraRef, Error> {
        if r > 64 || k > 64 {
            return Err(Error::Unsupported(format!(
                "jet({r},{k}) exceeds the supported parameter range (64)"
            )));
        }
        let vars: Vec<String> = (1..=r).map(|i| format!("e{i}")).collect();
        let mut basis = Vec::new();
        for d in 0..=k {
            if r == 0 && d > 0 {
                break;
            }
            basis.extend(monomials_of_degree(r, d));
            if basis.len() > MAX_DIM {
                return Err(Error::BasisOverflow(basis.len(), MAX_DIM));
            }
        }
        Self::from_monomials(format!("jet({r},{k})"), vars, basis)
    }

    /// Quotient ℝ[vars]/(relations) by a monomial ideal, with an
    /// optional total-degree cap (monomials above the cap are also
    /// killed). Without a cap, every variable must admit a pure-power
    /// relation or the quotient is rejected as infinite-dimensional.
    pub fn monomial_quotient(
        vars: &[&str],
        relations: &[Monomial],
        degree_cap: Option<usize>,
    ) -> Result<AlgebraRef, Error> {
        let n = vars.len();
        if n > 64 {
            return Err(Error::Unsupported(format!(
                "{n} generators exceed the supported range (64)"
            )));
        }
        for v in vars {
            if !is_identifier(v) {
                return Err(AlgebraDefect::Shape(format!("invalid variable name `{v}`")).into());
            }
        }
        if vars.iter().collect::<std::collections::HashSet<_>>().len() != n {
            return Err(AlgebraDefect::Shape("duplicate variable names".into()).into());
        }
        for rel in relations {
            if rel.nvars() != n {
                return Err(AlgebraDefect::Shape(format!(
                    "relation arity {} does not match {} variables",
                    rel.nvars(),
                    n
                ))
                .into());
            }
            if rel.degree() == 0 {
                return Err(AlgebraDefect::Shape(
                    "the unit monomial as a relation collapses the algebra".into(),
                )
                .into());
            }
        }
        if degree_cap.is_none() {
            for (i, v) in vars.iter().enumerate() {
                let has_pure_power = relations.iter().any(|rel| {
                    rel.exps()
                        .iter()
                        .enumerate()
                        .all(|(j, &e)| (j == i) == (e > 0))
                });
                if !has_pure_power {
                    return Err(AlgebraDefect::InfiniteDimensional {
                        var: (*v).to_string(),
                    }
                    .into());
                }
            }
        }
        let survives = |m: &Monomial| -> bool {
            if let Some(cap) = degree_cap {
                if m.degree() as usize > cap {
                    return false;
                }
            }
            !relations.iter().any(|rel| rel.divides(m))
        };
        let mut basis = Vec::new();
        let mut d = 0usize;
        loop {
            if let Some(cap) = degree_cap {
                if d > cap {
                    break;
                }
            }
            let level: Vec<Monomial> = monomials_of_degree(n, d)
                .into_iter()
                .filter(&survives)
                .collect();
            if level.is_empty() && d > 0 {
                break;
            }
            basis.extend(level);
            if basis.len() > MAX_DIM {
                return Err(Error::BasisOverflow(basis.len(), MAX_DIM));
            }
            d += 1;
        }
        let rel_text = relations
            .iter()
            .map(|r| r.format(&vars.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
            .collect::<Vec<_>>()
            .join(",");
        let name = match degree_cap {
            Some(cap) => format!("R[{}]/({rel_text}; deg<={cap})", vars.join(",")),
            None => format!("R[{}]/({rel_text})", vars.join(",")),
        };
        Self::from_monomials(name, vars.iter().map(|v| v.to_string()).collect(), basis)
    }

    /// Builds a quotient algebra from a grlex-sorted surviving-monomial
    /// basis (unit first); products not present in the basis are zero.
    fn from_monomials(
        name: String,
        vars: Vec<String>,
        basis: Vec<Monomial>,
    ) -> Result<AlgebraRef, Error> {
        let dim = basis.len();
        let index: HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut table: SparseTable = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let prod = basis[i].mul(&basis[j]);
                if let Some(&k) = index.get(&prod) {
                    table[i * dim + j].push((k, Rat::one()));
                }
            }
        }
        let labels: Vec<String> = basis.iter().map(|m| m.format(&vars)).collect();
        let mut aug = vec![Rat::zero(); dim];
        aug[0] = Rat::one();
        finalize(name, labels, dim, table, aug, AtomKind::Monomial { vars, exps: basis })
    }

    /// Validates a raw structure table (dense constants c[i][j] =
    /// coefficient vector of e_i·e_j) and returns the algebra, or a
    /// diagnostic with a named witness.
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<Vec<Rat>>>,
        aug: Vec<Rat>,
    ) -> Result<AlgebraRef, Error> {
        let dim = labels.len();
        if dim == 0 {
            return Err(AlgebraDefect::Shape("empty basis".into()).into());
        }
        if dim > MAX_DIM {
            return Err(Error::BasisOverflow(dim, MAX_DIM));
        }
        if labels[0] != "1" {
            return Err(AlgebraDefect::Shape("first basis label must be `1` (the unit)".into()).into());
        }
        for l in &labels[1..] {
            if !is_identifier(l) {
                return Err(AlgebraDefect::Shape(format!(
                    "basis label `{l}` is not a plain identifier"
                ))
                .into());
            }
        }
        if labels.iter().collect::<std::collections::HashSet<_>>().len() != dim {
            return Err(AlgebraDefect::Shape("duplicate basis labels".into()).into());
        }
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(AlgebraDefect::Shape(format!(
                "structure table is not {dim}x{dim}"
            ))
            .into());
        }
        if table
            .iter()
            .any(|row| row.iter().any(|entry| entry.len() != dim))
        {
            return Err(AlgebraDefect::Shape(format!(
                "structure constants must be vectors of length {dim}"
            ))
            .into());
        }
        if aug.len() != dim {
            return Err(AlgebraDefect::Shape(format!(
                "augmentation vector must have length {dim}"
            ))
            .into());
        }
        let mut sparse: SparseTable = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                sparse[i * dim + j] = table[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
            }
        }
        finalize(
            format!("table(dim={dim})"),
            labels,
            dim,
            sparse,
            aug,
            AtomKind::Table,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Least k with 𝔪^{k+1} = 0 (0 exactly for the trivial algebra ℝ).
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn aug_coeffs(&self) -> &[Rat] {
        &self.aug
    }

    /// Indices of the basis elements spanning the maximal ideal 𝔪.
    pub fn ideal_indices(&self) -> &[usize] {
        &self.ideal
    }

    /// True for the degenerate algebra A = ℝ (flagged in reports).
    pub fn is_trivial(&self) -> bool {
        self.dim == 1
    }

    /// Structural equality (same basis, table, augmentation); pointer
    /// equality is used as a fast path.
    pub fn same(&self, other: &WeilAlgebra) -> bool {
        std::ptr::eq(self, other)
            || (self.labels == other.labels && self.table == other.table && self.aug == other.aug)
    }

    pub(crate) fn product_entries(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.table[i * self.dim + j]
    }

    /// Resolves an atomic generator/label name used in element text.
    pub(crate) fn resolve_atom(&self, name: &str) -> Atom {
        if name == "1" {
            return Atom::Basis(0);
        }
        match &self.atoms {
            AtomKind::Monomial { vars, exps } => {
                let Some(v) = vars.iter().position(|w| w == name) else {
                    return Atom::Unknown;
                };
                let gen = Monomial::var(vars.len(), v);
                match exps.iter().position(|m| *m == gen) {
                    Some(i) => Atom::Basis(i),
                    None => Atom::Killed,
                }
            }
            AtomKind::Table => match self.labels.iter().position(|l| l == name) {
                Some(i) => Atom::Basis(i),
                None => Atom::Unknown,
            },
        }
    }
}

impl fmt::Display for WeilAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (dim {}, height {})",
            self.name, self.dim, self.height
        )
    }
}

/// True for names usable as atomic labels: identifier characters only,
/// starting with a letter or underscore.
fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Product of two coefficient vectors through a sparse table.
fn mul_vecs(table: &SparseTable, dim: usize, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dim];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let scale = ai * bj;
            for (k, c) in &table[i * dim + j] {
                out[*k] = &out[*k] + &(&scale * c);
            }
        }
    }
    out
}

/// Product e_g · v for a basis generator index and a coefficient vector.
fn mul_basis_vec(table: &SparseTable, dim: usize, g: usize, v: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dim];
    for (j, vj) in v.iter().enumerate() {
        if vj.is_zero() {
            continue;
        }
        for (k, c) in &table[g * dim + j] {
            out[*k] = &out[*k] + &(vj * c);
        }
    }
    out
}

/// Runs the full validation suite on a candidate table and assembles
/// the algebra; computes the height by powering the maximal ideal.
fn finalize(
    name: String,
    labels: Vec<String>,
    dim: usize,
    table: SparseTable,
    aug: Vec<Rat>,
    atoms: AtomKind,
) -> Result<AlgebraRef, Error> {
    // Unit row: e_0 · e_j = e_j.
    for j in 0..dim {
        let entry = &table[j]; // row 0
        let ok = entry.len() == 1 && entry[0].0 == j && entry[0].1.is_one();
        if !ok {
            return Err(AlgebraDefect::UnitNotNeutral { i: j }.into());
        }
    }
    // Commutativity on normalized sparse entries.
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut a = table[i * dim + j].clone();
            let mut b = table[j * dim + i].clone();
            a.sort_by_key(|(k, _)| *k);
            b.sort_by_key(|(k, _)| *k);
            if a != b {
                return Err(AlgebraDefect::NotCommutative { i, j }.into());
            }
        }
    }
    // Associativity on all basis triples, with scratch accumulators.
    let mut left = vec![Rat::zero(); dim];
    let mut right = vec![Rat::zero(); dim];
    let mut touched_l: Vec<usize> = Vec::new();
    let mut touched_r: Vec<usize> = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for idx in touched_l.drain(..) {
                    left[idx] = Rat::zero();
                }
                for idx in touched_r.drain(..) {
                    right[idx] = Rat::zero();
                }
                for (m, c) in &table[i * dim + j] {
                    for (n, d) in &table[*m * dim + k] {
                        left[*n] = &left[*n] + &(c * d);
                        touched_l.push(*n);
                    }
                }
                for (m, c) in &table[j * dim + k] {
                    for (n, d) in &table[i * dim + *m] {
                        right[*n] = &right[*n] + &(c * d);
                        touched_r.push(*n);
                    }
                }
                let agree = touched_l
                    .iter()
                    .chain(touched_r.iter())
                    .all(|&n| left[n] == right[n]);
                if !agree {
                    return Err(AlgebraDefect::NotAssociative { i, j, k }.into());
                }
            }
        }
    }
    // Augmentation: unital, adapted to the basis, multiplicative.
    if !aug[0].is_one() {
        return Err(AlgebraDefect::AugNotUnital.into());
    }
    if let Some(i) = (1..dim).find(|&i| !aug[i].is_zero()) {
        return Err(AlgebraDefect::AugNotAdapted { i }.into());
    }
    for i in 1..dim {
        for j in i..dim {
            let unit_coeff = table[i * dim + j]
                .iter()
                .find(|(k, _)| *k == 0)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero);
            if !unit_coeff.is_zero() {
                return Err(AlgebraDefect::AugNotMultiplicative { i, j }.into());
            }
        }
    }
    // Height: power 𝔪 until it dies; a stabilized nonzero power means
    // the ideal is not nilpotent (witnessed).
    let ideal: Vec<usize> = (1..dim).collect();
    let height = ideal_height(&table, dim, &ideal, &labels)?;
    Ok(Arc::new(WeilAlgebra {
        name,
        labels,
        dim,
        table,
        aug,
        height,
        ideal,
        atoms,
    }))
}

fn ideal_height(
    table: &SparseTable,
    dim: usize,
    ideal: &[usize],
    labels: &[String],
) -> Result<usize, Error> {
    if ideal.is_empty() {
        return Ok(0);
    }
    let gens: Vec<Vec<Rat>> = ideal
        .iter()
        .map(|&i| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = Rat::one();
            v
        })
        .collect();
    let mut current = rref_rows(gens.clone());
    let mut p = 1usize;
    loop {
        if current.is_empty() {
            return Ok(p - 1);
        }
        let mut products = Vec::new();
        for g in ideal {
            for v in &current {
                products.push(mul_basis_vec(table, dim, *g, v));
            }
        }
        let next = rref_rows(products);
        if next.len() == current.len() {
            let witness = format_coeffs(labels, &current[0]);
            return Err(AlgebraDefect::IdealNotNilpotent {
                witness,
                stable_dim: current.len(),
            }
            .into());
        }
        current = next;
        p += 1;
        assert!(p <= dim + 1, "ideal powering failed to terminate");
    }
}

/// Canonical text form of a coefficient vector in an algebra basis.
pub(crate) fn format_coeffs(labels: &[String], coeffs: &[Rat]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mag = c.abs();
        if i == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&labels[i]);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// An element of a Weil algebra: a rational coefficient vector over the
/// algebra basis.
#[derive(Debug, Clone)]
pub struct WeilElement {
    algebra: AlgebraRef,
    coeffs: Vec<Rat>,
}

impl PartialEq for WeilElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same(&other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for WeilElement {}

impl WeilElement {
    pub fn zero(algebra: &AlgebraRef) -> Self {
        WeilElement {
            algebra: algebra.clone(),
            coeffs: vec![Rat::zero(); algebra.dim()],
        }
    }

    pub fn one(algebra: &AlgebraRef) -> Self {
        Self::scalar(algebra, Rat::one())
    }

    /// The scalar r·1.
    pub fn scalar(algebra: &AlgebraRef, r: Rat) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[0] = r;
        e
    }

    pub fn basis(algebra: &AlgebraRef, i: usize) -> Self {
        assert!(i < algebra.dim(), "basis index out of range");
        let mut e = Self::zero(algebra);
        e.coeffs[i] = Rat::one();
        e
    }

    pub fn from_coeffs(algebra: &AlgebraRef, coeffs: Vec<Rat>) -> Result<Self, Error> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::ArityMismatch {
                expected: algebra.dim(),
                got: coeffs.len(),
                context: "element coefficient vector".into(),
            });
        }
        Ok(WeilElement {
            algebra: algebra.clone(),
            coeffs,
        })
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<(), Error> {
        if self.algebra.same(&other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra.name().to_string(),
                right: other.algebra.name().to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same(other)?;
        Ok(WeilElement {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_same(other)?;
        Ok(WeilElement {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_same(other)?;
        Ok(WeilElement {
            algebra: self.algebra.clone(),
            coeffs: mul_vecs(
                &self.algebra.table,
                self.algebra.dim(),
                &self.coeffs,
                &other.coeffs,
            ),
        })
    }

    pub fn scalar_mul(&self, r: &Rat) -> Self {
        WeilElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        WeilElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.algebra);
        for _ in 0..n {
            out = out.try_mul(self).expect("same algebra");
        }
        out
    }

    /// The augmentation A → ℝ evaluated on this element.
    pub fn aug(&self) -> Rat {
        self.coeffs
            .iter()
            .zip(&self.algebra.aug)
            .map(|(c, a)| c * a)
            .sum()
    }
}

impl fmt::Display for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coeffs(&self.algebra.labels, &self.coeffs))
    }
}

impl std::ops::Add for &WeilElement {
    type Output = WeilElement;
    fn add(self, rhs: &WeilElement) -> WeilElement {
        self.try_add(rhs).expect("algebra mismatch in +")
    }
}

impl std::ops::Sub for &WeilElement {
    type Output = WeilElement;
    fn sub(self, rhs: &WeilElement) -> WeilElement {
        self.try_sub(rhs).expect("algebra mismatch in -")
    }
}

impl std::ops::Mul for &WeilElement {
    type Output = WeilElement;
    fn mul(self, rhs: &WeilElement) -> WeilElement {
        self.try_mul(rhs).expect("algebra mismatch in *")
    }
}

impl std::ops::Neg for &WeilElement {
    type Output = WeilElement;
    fn neg(self) -> WeilElement {
        WeilElement::neg(self)
    }
}

/// A homomorphism of Weil algebras, stored as a dim(target) x
/// dim(source) matrix over the bases.
#[derive(Debug, Clone)]
pub struct AlgebraHom {
    source: AlgebraRef,
    target: AlgebraRef,
    matrix: RatMat,
}

impl AlgebraHom {
    /// Builds and validates: unit to unit, multiplicative on all basis
    /// pairs, commutes with the augmentations.
    pub fn new(source: AlgebraRef, target: AlgebraRef, matrix: RatMat) -> Result<Self, Error> {
        let h = Self::new_unchecked(source, target, matrix);
        h.validate()?;
        Ok(h)
    }

    pub fn new_unchecked(source: AlgebraRef, target: AlgebraRef, matrix: RatMat) -> Self {
        AlgebraHom {
            source,
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &AlgebraRef {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef {
        &self.target
    }

    pub fn matrix(&self) -> &RatMat {
        &self.matrix
    }

    pub fn validate(&self) -> Result<(), Error> {
        let (sn, tn) = (self.source.dim(), self.target.dim());
        if self.matrix.rows != tn || self.matrix.cols != sn {
            return Err(HomDefect::Shape {
                rows: self.matrix.rows,
                cols: self.matrix.cols,
                want_rows: tn,
                want_cols: sn,
            }
            .into());
        }
        let image = |i: usize| -> WeilElement {
            let coeffs = (0..tn).map(|r| self.matrix.at(r, i).clone()).collect();
            WeilElement {
                algebra: self.target.clone(),
                coeffs,
            }
        };
        if image(0) != WeilElement::one(&self.target) {
            return Err(HomDefect::UnitNotPreserved.into());
        }
        for i in 0..sn {
            for j in i..sn {
                let prod_src = {
                    let mut v = WeilElement::zero(&self.target);
                    for (k, c) in self.source.product_entries(i, j) {
                        v = v.try_add(&image(*k).scalar_mul(c)).expect("same algebra");
                    }
                    v
                };
                if prod_src != (&image(i) * &image(j)) {
                    return Err(HomDefect::NotMultiplicative { i, j }.into());
                }
            }
        }
        for i in 0..sn {
            if image(i).aug() != self.source.aug[i] {
                return Err(HomDefect::AugmentationNotRespected { i }.into());
            }
        }
        Ok(())
    }

    pub fn apply(&self, a: &WeilElement) -> Result<WeilElement, Error> {
        if !a.algebra.same(&self.source) {
            return Err(Error::AlgebraMismatch {
                left: a.algebra.name().to_string(),
                right: self.source.name().to_string(),
            });
        }
        let tn = self.target.dim();
        let mut coeffs = vec![Rat::zero(); tn];
        for (j, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, co) in coeffs.iter_mut().enumerate() {
                *co = &*co + &(self.matrix.at(r, j) * c);
            }
        }
        Ok(WeilElement {
            algebra: self.target.clone(),
            coeffs,
        })
    }

    pub fn identity(algebra: &AlgebraRef) -> Self {
        AlgebraHom {
            source: algebra.clone(),
            target: algebra.clone(),
            matrix: RatMat::identity(algebra.dim()),
        }
    }

    /// The augmentation A → ℝ viewed as a homomorphism onto the trivial
    /// algebra.
    pub fn augmentation_hom(algebra: &AlgebraRef) -> Self {
        let matrix = RatMat::from_rows(vec![algebra.aug.clone()]);
        AlgebraHom {
            source: algebra.clone(),
            target: WeilAlgebra::real(),
            matrix,
        }
    }

    /// The label-matching projection: each source basis label maps to
    /// the identically labelled target basis element if present, else
    /// to zero. Validated, so it fails unless the target really is a
    /// further quotient (e.g. jet(1,2) → jet(1,1) sends e1^2 to 0).
    pub fn label_truncation(source: &AlgebraRef, target: &AlgebraRef) -> Result<Self, Error> {
        let mut matrix = RatMat::zero(target.dim(), source.dim());
        for (j, l) in source.labels.iter().enumerate() {
            if let Some(r) = target.labels.iter().position(|t| t == l) {
                matrix.set(r, j, Rat::one());
            }
        }
        Self::new(source.clone(), target.clone(), matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn elem(alg: &AlgebraRef, coeffs: &[i64]) -> WeilElement {
        WeilElement::from_coeffs(alg, coeffs.iter().map(|&c| rint(c)).collect()).unwrap()
    }

    /// Independent count of monomials with total degree ≤ k in r
    /// variables, by brute-force iteration over exponent boxes.
    fn count_monomials_oracle(r: usize, k: usize) -> usize {
        fn go(r: usize, k: usize) -> usize {
            if r == 0 {
                return 1;
            }
            (0..=k).map(|e| go(r - 1, k - e)).sum()
        }
        go(r, k)
    }

    fn binomial(n: usize, k: usize) -> usize {
        let mut out = 1usize;
        for i in 0..k {
            out = out * (n - i) / (i + 1);
        }
        out
    }

    #[test]
    fn jet_dimensions_match_binomial_and_enumeration() {
        for r in 0..=4 {
            for k in 0..=4 {
                let a = WeilAlgebra::jet(r, k);
                assert_eq!(a.dim(), count_monomials_oracle(r, k), "jet({r},{k})");
                assert_eq!(a.dim(), binomial(r + k, k), "jet({r},{k})");
            }
        }
    }

    #[test]
    fn jet_basis_labels_in_graded_lex_order() {
        let a = WeilAlgebra::jet(2, 2);
        assert_eq!(
            a.labels(),
            &["1", "e1", "e2", "e1^2", "e1*e2", "e2^2"]
                .map(String::from)
        );
        assert_eq!(a.height(), 2);
        let dual = WeilAlgebra::jet(1, 1);
        assert_eq!(dual.labels(), &["1", "e1"].map(String::from));
        assert_eq!(dual.height(), 1);
    }

    #[test]
    fn dual_number_products() {
        let dual = WeilAlgebra::jet(1, 1);
        let a = elem(&dual, &[2, 3]);
        let b = elem(&dual, &[4, 5]);
        assert_eq!(&a * &b, elem(&dual, &[8, 22]));

        let jet12 = WeilAlgebra::jet(1, 2);
        let one_plus_eps = elem(&jet12, &[1, 1, 0]);
        assert_eq!(one_plus_eps.pow(2), elem(&jet12, &[1, 2, 1]));
        let eps = WeilElement::basis(&jet12, 1);
        let eps2 = WeilElement::basis(&jet12, 2);
        assert!((&eps * &eps2).is_zero());
    }

    #[test]
    fn augmentation_examples_and_multiplicativity() {
        let dual = WeilAlgebra::jet(1, 1);
        assert_eq!(elem(&dual, &[2, 3]).aug(), rint(2));
        assert_eq!(WeilElement::one(&dual).aug(), rint(1));
        let jet12 = WeilAlgebra::jet(1, 2);
        assert_eq!(WeilElement::basis(&jet12, 2).aug(), rint(0));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = WeilAlgebra::jet(2, 2);
        for _ in 0..25 {
            let x = WeilElement::from_coeffs(
                &a,
                (0..a.dim())
                    .map(|_| rat(rng.random_range(-5..=5), rng.random_range(1..=4)))
                    .collect(),
            )
            .unwrap();
            let y = WeilElement::from_coeffs(
                &a,
                (0..a.dim())
                    .map(|_| rat(rng.random_range(-5..=5), rng.random_range(1..=4)))
                    .collect(),
            )
            .unwrap();
            assert_eq!((&x * &y).aug(), x.aug() * y.aug());
        }
    }

    #[test]
    fn heights_by_ideal_powering() {
        assert_eq!(WeilAlgebra::jet(1, 1).height(), 1);
        assert_eq!(WeilAlgebra::jet(1, 3).height(), 3);
        assert_eq!(WeilAlgebra::jet(2, 2).height(), 2);
        assert_eq!(WeilAlgebra::real().height(), 0);
        assert!(WeilAlgebra::real().is_trivial());
    }

    #[test]
    fn ideal_elements_nilpotent_within_height() {
        let a = WeilAlgebra::jet(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut coeffs = vec![Rat::zero(); a.dim()];
            for i in a.ideal_indices() {
                coeffs[*i] = rat(rng.random_range(-3..=3), 1);
            }
            let m = WeilElement::from_coeffs(&a, coeffs).unwrap();
            assert!(m.pow(a.height() as u32 + 1).is_zero());
        }
    }

    #[test]
    fn monomial_quotient_examples() {
        let m = |exps: &[u32]| Monomial::from_exps(exps.to_vec());

        let dual_like = WeilAlgebra::monomial_quotient(&["x"], &[m(&[2])], None).unwrap();
        assert_eq!(dual_like.dim(), 2);
        assert_eq!(dual_like.labels(), &["1", "x"].map(String::from));
        assert_eq!(dual_like.height(), 1);

        let q = WeilAlgebra::monomial_quotient(&["x", "y"], &[m(&[2, 0]), m(&[0, 2])], None)
            .unwrap();
        assert_eq!(q.dim(), 4);
        assert_eq!(q.labels(), &["1", "x", "y", "x*y"].map(String::from));
        assert_eq!(q.height(), 2);

        let q2 = WeilAlgebra::monomial_quotient(
            &["x", "y"],
            &[m(&[3, 0]), m(&[1, 1]), m(&[0, 2])],
            None,
        )
        .unwrap();
        assert_eq!(q2.dim(), 4);
        assert_eq!(q2.labels(), &["1", "x", "y", "x^2"].map(String::from));
        assert_eq!(q2.height(), 2);
    }

    #[test]
    fn monomial_quotient_infinite_dimension_rejected_with_variable() {
        let m = |exps: &[u32]| Monomial::from_exps(exps.to_vec());
        let err = WeilAlgebra::monomial_quotient(&["x", "y"], &[m(&[2, 0])], None).unwrap_err();
        match err {
            Error::Algebra(AlgebraDefect::InfiniteDimensional { var }) => assert_eq!(var, "y"),
            other => panic!("unexpected error {other:?}"),
        }
        // A degree cap makes the same input legal.
        let capped =
            WeilAlgebra::monomial_quotient(&["x", "y"], &[m(&[2, 0])], Some(2)).unwrap();
        // 1, x, y, xy, y^2
        assert_eq!(capped.dim(), 5);
        assert_eq!(capped.height(), 2);
    }

    fn dense_unit_table(dim: usize, fill: impl Fn(usize, usize) -> Vec<Rat>) -> Vec<Vec<Vec<Rat>>> {
        (0..dim)
            .map(|i| (0..dim).map(|j| fill(i, j)).collect())
            .collect()
    }

    fn unit_vec(dim: usize, k: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[k] = Rat::one();
        v
    }

    #[test]
    fn table_dual_numbers_accepted() {
        // 1, e with e^2 = 0.
        let table = dense_unit_table(2, |i, j| {
            if i == 0 {
                unit_vec(2, j)
            } else if j == 0 {
                unit_vec(2, i)
            } else {
                vec![Rat::zero(); 2]
            }
        });
        let a = WeilAlgebra::from_table(
            vec!["1".into(), "e".into()],
            table,
            vec![rint(1), rint(0)],
        )
        .unwrap();
        assert_eq!(a.height(), 1);
        assert_eq!(elem(&a, &[2, 3]).aug(), rint(2));
    }

    #[test]
    fn table_with_idempotent_rejected_by_nilpotency_witness() {
        // R x R in an adapted basis {1, e} with e^2 = e: the ideal
        // candidate span{e} stabilizes under powering.
        let table = dense_unit_table(2, |i, j| {
            if i == 0 {
                unit_vec(2, j)
            } else if j == 0 {
                unit_vec(2, i)
            } else {
                unit_vec(2, 1) // e * e = e
            }
        });
        let err = WeilAlgebra::from_table(
            vec!["1".into(), "e".into()],
            table,
            vec![rint(1), rint(0)],
        )
        .unwrap_err();
        match err {
            Error::Algebra(AlgebraDefect::IdealNotNilpotent {
                witness,
                stable_dim,
            }) => {
                assert_eq!(witness, "e");
                assert_eq!(stable_dim, 1);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn table_of_reals_accepted_height_zero() {
        let a = WeilAlgebra::from_table(
            vec!["1".into()],
            vec![vec![vec![rint(1)]]],
            vec![rint(1)],
        )
        .unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.height(), 0);
        assert!(a.is_trivial());
    }

    #[test]
    fn bad_tables_rejected_with_witnesses() {
        // Non-commutative: e*f = 0 but f*e = something else is not
        // representable in a symmetric fill; build explicitly.
        let mut table = dense_unit_table(3, |i, j| {
            if i == 0 {
                unit_vec(3, j)
            } else if j == 0 {
                unit_vec(3, i)
            } else {
                vec![Rat::zero(); 3]
            }
        });
        table[1][2] = unit_vec(3, 2); // e*f = f, f*e = 0
        let err = WeilAlgebra::from_table(
            vec!["1".into(), "e".into(), "f".into()],
            table,
            vec![rint(1), rint(0), rint(0)],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Algebra(AlgebraDefect::NotCommutative { i: 1, j: 2 })
        ));

        // Non-associative: e*e = f, e*f = f*e = 1 gives (e e)e = 1*e...
        // (e*e)*e = f*e = 1 while e*(e*e) = e*f = 1 — associative; use
        // e*f = e instead: (e*e)*f = f*f = 0 vs e*(e*f) = e*e = f.
        let mut table = dense_unit_table(3, |i, j| {
            if i == 0 {
                unit_vec(3, j)
            } else if j == 0 {
                unit_vec(3, i)
            } else {
                vec![Rat::zero(); 3]
            }
        });
        table[1][1] = unit_vec(3, 2); // e*e = f
        table[1][2] = unit_vec(3, 1); // e*f = e
        table[2][1] = unit_vec(3, 1); // f*e = e
        let err = WeilAlgebra::from_table(
            vec!["1".into(), "e".into(), "f".into()],
            table,
            vec![rint(1), rint(0), rint(0)],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Algebra(AlgebraDefect::NotAssociative { .. })
        ));

        // Augmentation not adapted.
        let table = dense_unit_table(2, |i, j| {
            if i == 0 {
                unit_vec(2, j)
            } else if j == 0 {
                unit_vec(2, i)
            } else {
                vec![Rat::zero(); 2]
            }
        });
        let err = WeilAlgebra::from_table(
            vec!["1".into(), "e".into()],
            table,
            vec![rint(1), rint(1)],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Algebra(AlgebraDefect::AugNotAdapted { i: 1 })
        ));
    }

    #[test]
    fn element_display_round_shape() {
        let jet12 = WeilAlgebra::jet(1, 2);
        assert_eq!(elem(&jet12, &[1, 2, 5]).to_string(), "1+2*e1+5*e1^2");
        assert_eq!(elem(&jet12, &[0, -1, 0]).to_string(), "-e1");
        assert_eq!(elem(&jet12, &[0, 0, 0]).to_string(), "0");
        let half = WeilElement::from_coeffs(&jet12, vec![rat(1, 2), rint(0), rint(-3)]).unwrap();
        assert_eq!(half.to_string(), "1/2-3*e1^2");
    }

    #[test]
    fn algebra_mismatch_detected() {
        let a = WeilAlgebra::jet(1, 1);
        let b = WeilAlgebra::jet(1, 2);
        let x = WeilElement::one(&a);
        let y = WeilElement::one(&b);
        assert!(matches!(x.try_add(&y), Err(Error::AlgebraMismatch { .. })));
        // Structurally equal algebras interoperate even across handles.
        let a2 = WeilAlgebra::jet(1, 1);
        let z = WeilElement::basis(&a2, 1);
        assert_eq!((&x.try_add(&z).unwrap()).to_string(), "1+e1");
    }

    #[test]
    fn hom_truncation_identity_and_augmentation() {
        let jet12 = WeilAlgebra::jet(1, 2);
        let dual = WeilAlgebra::jet(1, 1);
        let trunc = AlgebraHom::label_truncation(&jet12, &dual).unwrap();
        let a = elem(&jet12, &[1, 2, 5]);
        assert_eq!(trunc.apply(&a).unwrap(), elem(&dual, &[1, 2]));

        let id = AlgebraHom::identity(&jet12);
        assert_eq!(id.apply(&a).unwrap(), a);

        let aug = AlgebraHom::augmentation_hom(&jet12);
        aug.validate().unwrap();
        let img = aug.apply(&elem(&jet12, &[3, 1, 0])).unwrap();
        assert_eq!(img.coeffs(), &[rint(3)]);
        assert!(img.algebra().is_trivial());
    }

    #[test]
    fn hom_validation_rejects_non_multiplicative_matrix() {
        let dual = WeilAlgebra::jet(1, 1);
        // Sends e1 to 1 + e1, which squares to 1 + 2 e1 != image of 0.
        let m = RatMat::from_rows(vec![vec![rint(1), rint(1)], vec![rint(0), rint(1)]]);
        let err = AlgebraHom::new(dual.clone(), dual.clone(), m).unwrap_err();
        assert!(matches!(
            err,
            Error::Hom(HomDefect::NotMultiplicative { i: 1, j: 1 })
        ));
        // Validated homs commute with augmentation on everything.
        let jet12 = WeilAlgebra::jet(1, 2);
        let trunc = AlgebraHom::label_truncation(&jet12, &dual).unwrap();
        let a = elem(&jet12, &[7, -2, 9]);
        assert_eq!(trunc.apply(&a).unwrap().aug(), a.aug());
    }
}
