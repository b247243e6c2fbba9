//! Poisson structures on ℝⁿ with polynomial coefficients, and the
//! induced A-valued bracket on the Weil bundle.
//!
//! The structure is the coordinate matrix π with π_ij = {x_i, x_j}, and
//! the bracket is fixed as {f,g} = Σ_ij π_ij ∂_i f ∂_j g. The bundle
//! bracket {φ,ψ}_A is computed as τ̃_φ(ψ) through the vector field
//! τ_φ (components τ_φ(x_j) = Σ_i (π_ij)^A ∂_i φ), with the closed
//! form Σ_ij (π_ij)^A ∂_iφ ∂_jψ kept as an independent cross-check.

use std::fmt;

use crate::error::Error;
use crate::poly::{
    prolong_function, prolong_vector_field, APoly, AVectorField, CoefficientRing, Poly, RatRing,
    VectorField, WeilRing,
};
use crate::rat::Rat;
use crate::weil::AlgebraRef;

/// A counterexample to the Jacobi identity: the 1-indexed coordinate
/// triple and its nonzero residual polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiWitness {
    pub triple: (usize, usize, usize),
    pub residual: Poly,
}

impl fmt::Display for JacobiWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Jacobi identity fails on ({},{},{}) with residual {}",
            self.triple.0, self.triple.1, self.triple.2, self.residual
        )
    }
}

/// Degree pattern of the structure matrix, used to decide which weight
/// grading (if any) the cohomology engine may exploit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiHomogeneity {
    /// Every nonzero entry is homogeneous of the same total degree
    /// (0 = constant structure, 1 = linear, ...).
    Homogeneous(u32),
    /// Entries of mixed degree.
    Mixed,
}

/// A Poisson structure on ℝⁿ: skew matrix of polynomials π_ij = {x_i,x_j}.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonStructure {
    nvars: usize,
    vars: Vec<String>,
    pi: Vec<Vec<Poly>>,
}

impl PoissonStructure {
    /// Builds from the strict upper triangle ((i,j) 0-indexed, i < j)
    /// and validates the Jacobi identity symbolically.
    pub fn new(vars: Vec<String>, upper: Vec<((usize, usize), Poly)>) -> Result<Self, Error> {
        let s = Self::new_unchecked(vars, upper)?;
        if let Err(w) = s.jacobi_check() {
            return Err(Error::JacobiFailed {
                i: w.triple.0,
                j: w.triple.1,
                k: w.triple.2,
                residual: w.residual.format_with(&s.vars),
            });
        }
        Ok(s)
    }

    /// Shape-checked construction without the Jacobi validation (for
    /// negative tests of jacobi_check).
    pub fn new_unchecked(
        vars: Vec<String>,
        upper: Vec<((usize, usize), Poly)>,
    ) -> Result<Self, Error> {
        let n = vars.len();
        let zero = Poly::zero(RatRing, n);
        let mut pi = vec![vec![zero; n]; n];
        let mut seen = std::collections::HashSet::new();
        for ((i, j), p) in upper {
            if i >= j || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: j.max(i),
                    limit: n,
                    context: format!("Poisson entry ({i},{j}) must have i < j < n"),
                });
            }
            if p.nvars() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: p.nvars(),
                    context: format!("Poisson entry ({i},{j})"),
                });
            }
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!("duplicate Poisson entry ({i},{j})")));
            }
            pi[j][i] = p.neg();
            pi[i][j] = p;
        }
        Ok(PoissonStructure { nvars: n, vars, pi })
    }

    /// Constant symplectic structure on ℝ²ᵏ: {x_{2i-1}, x_{2i}} = 1.
    pub fn symplectic(n: usize) -> Result<Self, Error> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::Unsupported(format!(
                "symplectic structure needs even positive dimension, got {n}"
            )));
        }
        let vars = crate::poly::default_var_names(n);
        let upper = (0..n / 2)
            .map(|k| ((2 * k, 2 * k + 1), Poly::one(RatRing, n)))
            .collect();
        Self::new(vars, upper)
    }

    /// The Lie–Poisson structure on so(3)*: {x,y} = z, {y,z} = x,
    /// {z,x} = y.
    pub fn so3() -> Self {
        let vars: Vec<String> = ["x", "y", "z"].map(String::from).to_vec();
        let x = Poly::var(RatRing, 3, 0);
        let y = Poly::var(RatRing, 3, 1);
        let z = Poly::var(RatRing, 3, 2);
        Self::new(vars, vec![((0, 1), z), ((1, 2), x), ((0, 2), y.neg())])
            .expect("so(3)* satisfies Jacobi")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn pi(&self, i: usize, j: usize) -> &Poly {
        &self.pi[i][j]
    }

    /// Degree pattern of the nonzero entries (the zero structure counts
    /// as constant).
    pub fn homogeneity(&self) -> PiHomogeneity {
        let mut degree: Option<u32> = None;
        for row in &self.pi {
            for p in row {
                for (m, _) in p.terms() {
                    match degree {
                        None => degree = Some(m.degree()),
                        Some(d) if d == m.degree() => {}
                        Some(_) => return PiHomogeneity::Mixed,
                    }
                }
            }
        }
        PiHomogeneity::Homogeneous(degree.unwrap_or(0))
    }

    fn check_arity(&self, got: usize, context: &str) -> Result<(), Error> {
        if got != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got,
                context: context.into(),
            });
        }
        Ok(())
    }

    /// {f,g} = Σ_ij π_ij ∂_i f ∂_j g.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, Error> {
        self.check_arity(f.nvars(), "bracket first argument")?;
        self.check_arity(g.nvars(), "bracket second argument")?;
        let mut acc = Poly::zero(RatRing, self.nvars);
        for i in 0..self.nvars {
            let df = f.partial(i);
            if df.is_zero() {
                continue;
            }
            for j in 0..self.nvars {
                if self.pi[i][j].is_zero() {
                    continue;
                }
                let term = self.pi[i][j].try_mul(&df)?.try_mul(&g.partial(j))?;
                acc = acc.try_add(&term)?;
            }
        }
        Ok(acc)
    }

    /// Symbolic Jacobi check: for every i < j < k the residual
    /// Σ_l (π_li ∂_l π_jk + π_lj ∂_l π_ki + π_lk ∂_l π_ij) must vanish
    /// identically; the first failure is returned with its residual.
    pub fn jacobi_check(&self) -> Result<(), JacobiWitness> {
        let n = self.nvars;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let mut residual = Poly::zero(RatRing, n);
                    for l in 0..n {
                        let cyclic = [
                            (&self.pi[l][i], &self.pi[j][k]),
                            (&self.pi[l][j], &self.pi[k][i]),
                            (&self.pi[l][k], &self.pi[i][j]),
                        ];
                        for (a, b) in cyclic {
                            if a.is_zero() {
                                continue;
                            }
                            residual = residual
                                .try_add(&a.try_mul(&b.partial(l)).expect("same arity"))
                                .expect("same arity");
                        }
                    }
                    if !residual.is_zero() {
                        return Err(JacobiWitness {
                            triple: (i + 1, j + 1, k + 1),
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The Hamiltonian field ad(f): components ad(f)_j = {f, x_j}.
    pub fn ad(&self, f: &Poly) -> Result<VectorField, Error> {
        self.check_arity(f.nvars(), "ad argument")?;
        let components = (0..self.nvars)
            .map(|j| {
                let mut c = Poly::zero(RatRing, self.nvars);
                for i in 0..self.nvars {
                    if self.pi[i][j].is_zero() {
                        continue;
                    }
                    c = c.try_add(&self.pi[i][j].try_mul(&f.partial(i))?)?;
                }
                Ok(c)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        VectorField::new(components)
    }

    /// [ad(f)]^A, the prolonged Hamiltonian field, whose tilde action
    /// sends g^A to ({f,g})^A.
    pub fn prolong_ad_tilde(&self, f: &Poly, algebra: &AlgebraRef) -> Result<AVectorField, Error> {
        Ok(prolong_vector_field(&self.ad(f)?, algebra))
    }

    /// The vector field τ_φ with components τ_φ(x_j) = Σ_i (π_ij)^A ∂_iφ
    /// (equivalently f ⟼ −[ad(f)]^A-tilde(φ)).
    pub fn tau(&self, phi: &APoly) -> Result<AVectorField, Error> {
        self.check_arity(phi.nvars(), "tau argument")?;
        let algebra = phi.ring().0.clone();
        let ring = WeilRing(algebra.clone());
        let components = (0..self.nvars)
            .map(|j| {
                let mut c = APoly::zero(ring.clone(), self.nvars);
                for i in 0..self.nvars {
                    if self.pi[i][j].is_zero() {
                        continue;
                    }
                    let pij_a = prolong_function(&self.pi[i][j], &algebra);
                    c = c.try_add(&pij_a.try_mul(&phi.partial(i))?)?;
                }
                Ok(c)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        AVectorField::new(&algebra, components)
    }

    /// The A-valued bracket {φ,ψ}_A = τ̃_φ(ψ).
    pub fn bracket_a(&self, phi: &APoly, psi: &APoly) -> Result<APoly, Error> {
        self.tau(phi)?.tilde_apply(psi)
    }

    /// Closed form Σ_ij (π_ij)^A ∂_iφ ∂_jψ — an independent route to
    /// {φ,ψ}_A used to cross-check bracket_a.
    pub fn bracket_a_direct(&self, phi: &APoly, psi: &APoly) -> Result<APoly, Error> {
        self.check_arity(phi.nvars(), "bracket_A first argument")?;
        self.check_arity(psi.nvars(), "bracket_A second argument")?;
        if !phi.ring().same_ring(psi.ring()) {
            return Err(Error::AlgebraMismatch {
                left: phi.ring().describe(),
                right: psi.ring().describe(),
            });
        }
        let algebra = phi.ring().0.clone();
        let mut acc = APoly::zero(WeilRing(algebra.clone()), self.nvars);
        for i in 0..self.nvars {
            let dphi = phi.partial(i);
            if dphi.is_zero() {
                continue;
            }
            for j in 0..self.nvars {
                if self.pi[i][j].is_zero() {
                    continue;
                }
                let pij_a = prolong_function(&self.pi[i][j], &algebra);
                acc = acc.try_add(&pij_a.try_mul(&dphi)?.try_mul(&psi.partial(j))?)?;
            }
        }
        Ok(acc)
    }

    /// Renders the structure matrix entry {x_i, x_j} with the structure's
    /// variable names (0-indexed arguments).
    pub fn format_entry(&self, i: usize, j: usize) -> String {
        self.pi[i][j].format_with(&self.vars)
    }

    /// One-line description listing the nonzero upper-triangle brackets,
    /// e.g. `{x,y} = z; {y,z} = x; {z,x} = y`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..self.nvars {
            for j in (i + 1)..self.nvars {
                if !self.pi[i][j].is_zero() {
                    parts.push(format!(
                        "{{{},{}}} = {}",
                        self.vars[i],
                        self.vars[j],
                        self.format_entry(i, j)
                    ));
                }
            }
        }
        if parts.is_empty() {
            "zero structure".into()
        } else {
            parts.join("; ")
        }
    }
}

/// Structure with all entries constant rationals (validated skew; such
/// structures always satisfy Jacobi).
pub fn constant_structure(vars: Vec<String>, upper: Vec<((usize, usize), Rat)>) -> Result<PoissonStructure, Error> {
    let n = vars.len();
    let entries = upper
        .into_iter()
        .map(|((i, j), c)| ((i, j), Poly::constant(RatRing, n, c)))
        .collect();
    PoissonStructure::new(vars, entries)
}
