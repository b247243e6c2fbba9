//! JSON file formats.
//!
//! Three input document types — algebra specs, Poisson structure specs
//! and cochain files — plus deterministic serialization for every report
//! the tools emit. All rationals travel as `"p"` / `"p/q"` strings and
//! all polynomial data uses the text grammars of [`crate::textform`], so
//! files are exact and human-writable. Serialization is deterministic:
//! ordered maps only, fixed field order, one trailing newline.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cochain::{
    BaseComplex, Complex, ComplexKind, MixedComplex, MultiVector, WeilComplex,
};
use crate::error::Error;
use crate::poisson::PoissonStructure;
use crate::poly::default_var_names;
use crate::rat::{format_rat, parse_rat, rint, Rat};
use crate::textform::{parse_apoly, parse_monomial, parse_poly};
use crate::weil::{AlgebraRef, WeilAlgebra, WeilElement};

/// Algebra description file.
///
/// ```json
/// {"kind": "jet", "generators": 2, "order": 2}
/// {"kind": "monomial_quotient", "vars": ["a","b"], "relations": ["a^2","b^3","a*b"]}
/// {"kind": "table", "basis": ["1","e"], "table": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]], "aug": ["1","0"]}
/// ```
///
/// Table entries are structure constants: `table[i][j]` is the
/// coefficient vector of `e_i · e_j` over the basis, rationals as
/// strings. `aug` (the augmentation functional) defaults to projection
/// onto the unit coordinate. `monomial_quotient` accepts an optional
/// `degree_cap` that additionally kills all monomials above a total
/// degree, which makes quotients with non-nilpotent generators finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraSpec {
    Jet {
        generators: usize,
        order: usize,
    },
    MonomialQuotient {
        vars: Vec<String>,
        relations: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        degree_cap: Option<usize>,
    },
    Table {
        basis: Vec<String>,
        table: Vec<Vec<Vec<String>>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        aug: Option<Vec<String>>,
    },
}

impl AlgebraSpec {
    /// Validates and constructs the algebra.
    pub fn build(&self) -> Result<AlgebraRef, Error> {
        match self {
            AlgebraSpec::Jet { generators, order } => WeilAlgebra::try_jet(*generators, *order),
            AlgebraSpec::MonomialQuotient {
                vars,
                relations,
                degree_cap,
            } => {
                let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
                let rels = relations
                    .iter()
                    .map(|s| parse_monomial(vars, s))
                    .collect::<Result<Vec<_>, _>>()?;
                WeilAlgebra::monomial_quotient(&var_refs, &rels, *degree_cap)
            }
            AlgebraSpec::Table { basis, table, aug } => {
                let dim = basis.len();
                let parsed_table = table
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|cell| cell.iter().map(|s| parse_rat(s)).collect())
                            .collect::<Result<Vec<Vec<Rat>>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let parsed_aug = match aug {
                    Some(v) => v
                        .iter()
                        .map(|s| parse_rat(s))
                        .collect::<Result<Vec<_>, _>>()?,
                    None => {
                        let mut unit = vec![rint(0); dim];
                        if let Some(first) = unit.first_mut() {
                            *first = rint(1);
                        }
                        unit
                    }
                };
                WeilAlgebra::from_table(basis.clone(), parsed_table, parsed_aug)
            }
        }
    }
}

/// Exports any algebra as an explicit structure-constant table, the
/// universal interchange form.
pub fn algebra_to_table_spec(algebra: &AlgebraRef) -> AlgebraSpec {
    let dim = algebra.dim();
    let mut table = Vec::with_capacity(dim);
    for i in 0..dim {
        let ei = WeilElement::basis(algebra, i);
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let ej = WeilElement::basis(algebra, j);
            let prod = ei.try_mul(&ej).expect("same algebra by construction");
            row.push(prod.coeffs().iter().map(format_rat).collect());
        }
        table.push(row);
    }
    AlgebraSpec::Table {
        basis: algebra.labels().to_vec(),
        table,
        aug: Some(algebra.aug_coeffs().iter().map(format_rat).collect()),
    }
}

/// Poisson structure description file.
///
/// ```json
/// {"kind": "symplectic", "n": 4}
/// {"kind": "so3"}
/// {"kind": "matrix", "n": 3, "vars": ["x","y","z"], "entries": {"1,2": "z", "1,3": "-y", "2,3": "x"}}
/// ```
///
/// Matrix entries are the upper-triangle brackets `{x_i, x_j}` with
/// 1-indexed `"i,j"` keys (i < j) and polynomial values; omitted entries
/// are zero. `vars` is optional and defaults to `x1..xn`. Building a
/// structure performs shape validation only; the Jacobi identity is a
/// separate certified check so that failing structures can be loaded and
/// reported on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PoissonSpec {
    Symplectic {
        n: usize,
    },
    So3,
    Matrix {
        n: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        vars: Option<Vec<String>>,
        entries: BTreeMap<String, String>,
    },
}

impl PoissonSpec {
    /// Validates shapes and constructs the structure (without the Jacobi
    /// check; see [`PoissonStructure::jacobi_check`]).
    pub fn build(&self) -> Result<PoissonStructure, Error> {
        match self {
            PoissonSpec::Symplectic { n } => PoissonStructure::symplectic(*n),
            PoissonSpec::So3 => Ok(PoissonStructure::so3()),
            PoissonSpec::Matrix { n, vars, entries } => {
                let vars = match vars {
                    Some(v) => {
                        if v.len() != *n {
                            return Err(Error::Parse(format!(
                                "matrix structure declares n = {n} but lists {} variables",
                                v.len()
                            )));
                        }
                        v.clone()
                    }
                    None => default_var_names(*n),
                };
                let mut upper = Vec::new();
                for (key, text) in entries {
                    let pair = parse_index_key(key, *n)?;
                    if pair.len() != 2 {
                        return Err(Error::Parse(format!(
                            "matrix entry key `{key}` must name exactly two indices"
                        )));
                    }
                    let value = parse_poly(&vars, text)?;
                    upper.push(((pair[0], pair[1]), value));
                }
                PoissonStructure::new_unchecked(vars, upper)
            }
        }
    }
}

/// Exports a structure as an explicit matrix spec.
pub fn poisson_to_matrix_spec(pi: &PoissonStructure) -> PoissonSpec {
    let n = pi.nvars();
    let mut entries = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !pi.pi(i, j).is_zero() {
                entries.insert(
                    format_index_key(&[i, j]),
                    pi.pi(i, j).format_with(pi.vars()),
                );
            }
        }
    }
    PoissonSpec::Matrix {
        n,
        vars: Some(pi.vars().to_vec()),
        entries,
    }
}

/// Cochain file: a multivector given by its coefficients on strictly
/// increasing index tuples.
///
/// ```json
/// {"complex": "base", "p": 1, "coeffs": {"1": "x2", "2": "-x1"}}
/// {"complex": "weil", "p": 0, "coeffs": {"": "(1+e1)*x1^2"}}
/// ```
///
/// Keys are comma-separated 1-indexed variable indices (the empty key for
/// p = 0); values are polynomials, with element-valued coefficients in
/// parentheses for the mixed and weil complexes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CochainSpec {
    pub complex: ComplexKind,
    pub p: usize,
    pub coeffs: BTreeMap<String, String>,
}

/// Parses a 1-indexed, comma-separated, strictly increasing index key
/// into 0-indexed form. The empty string denotes the empty tuple.
pub fn parse_index_key(key: &str, nvars: usize) -> Result<Vec<usize>, Error> {
    let trimmed = key.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in trimmed.split(',') {
        let idx: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid index `{part}` in key `{key}`")))?;
        if idx == 0 || idx > nvars {
            return Err(Error::IndexOutOfRange {
                index: idx,
                limit: nvars,
                context: "cochain index key (1-indexed)".into(),
            });
        }
        out.push(idx - 1);
    }
    if !out.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Parse(format!(
            "index key `{key}` is not strictly increasing"
        )));
    }
    Ok(out)
}

/// Renders a 0-indexed tuple as a 1-indexed key.
pub fn format_index_key(idx0: &[usize]) -> String {
    idx0.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl CochainSpec {
    fn check_kind(&self, expected: ComplexKind) -> Result<(), Error> {
        if self.complex != expected {
            return Err(Error::ComplexMismatch(format!(
                "cochain file is tagged `{}` but the {} complex was requested",
                self.complex, expected
            )));
        }
        Ok(())
    }

    fn entries<V>(
        &self,
        nvars: usize,
        parse: impl Fn(&str) -> Result<V, Error>,
    ) -> Result<Vec<(Vec<usize>, V)>, Error> {
        self.coeffs
            .iter()
            .map(|(key, text)| {
                let idx = parse_index_key(key, nvars)?;
                if idx.len() != self.p {
                    return Err(Error::ArityMismatch {
                        expected: self.p,
                        got: idx.len(),
                        context: format!("cochain coefficient key `{key}`"),
                    });
                }
                Ok((idx, parse(text)?))
            })
            .collect()
    }

    /// Realizes a base-complex cochain.
    pub fn build_base(&self, cx: &BaseComplex) -> Result<MultiVector<BaseComplex>, Error> {
        self.check_kind(ComplexKind::Base)?;
        let vars = cx.structure().vars().to_vec();
        let entries = self.entries(cx.structure().nvars(), |s| parse_poly(&vars, s))?;
        MultiVector::from_entries(cx, self.p, entries)
    }

    /// Realizes a mixed-complex cochain.
    pub fn build_mixed(&self, cx: &MixedComplex) -> Result<MultiVector<MixedComplex>, Error> {
        self.check_kind(ComplexKind::Mixed)?;
        let vars = cx.structure().vars().to_vec();
        let algebra = cx.algebra().clone();
        let entries = self.entries(cx.structure().nvars(), |s| parse_apoly(&algebra, &vars, s))?;
        MultiVector::from_entries(cx, self.p, entries)
    }

    /// Realizes a weil-complex cochain.
    pub fn build_weil(&self, cx: &WeilComplex) -> Result<MultiVector<WeilComplex>, Error> {
        self.check_kind(ComplexKind::Weil)?;
        let vars = cx.structure().vars().to_vec();
        let algebra = cx.algebra().clone();
        let entries = self.entries(cx.structure().nvars(), |s| parse_apoly(&algebra, &vars, s))?;
        MultiVector::from_entries(cx, self.p, entries)
    }
}

/// Serializes a base multivector back to the file format.
pub fn base_to_spec(cx: &BaseComplex, mv: &MultiVector<BaseComplex>) -> CochainSpec {
    let vars = cx.structure().vars();
    CochainSpec {
        complex: ComplexKind::Base,
        p: mv.degree(),
        coeffs: mv
            .entries()
            .map(|(idx, v)| (format_index_key(idx), v.format_with(vars)))
            .collect(),
    }
}

/// Serializes a mixed multivector back to the file format.
pub fn mixed_to_spec(cx: &MixedComplex, mv: &MultiVector<MixedComplex>) -> CochainSpec {
    let vars = cx.structure().vars();
    CochainSpec {
        complex: ComplexKind::Mixed,
        p: mv.degree(),
        coeffs: mv
            .entries()
            .map(|(idx, v)| (format_index_key(idx), v.format_with(vars)))
            .collect(),
    }
}

/// Serializes a weil multivector back to the file format.
pub fn weil_to_spec(cx: &WeilComplex, mv: &MultiVector<WeilComplex>) -> CochainSpec {
    let vars = cx.structure().vars();
    CochainSpec {
        complex: ComplexKind::Weil,
        p: mv.degree(),
        coeffs: mv
            .entries()
            .map(|(idx, v)| (format_index_key(idx), v.format_with(vars)))
            .collect(),
    }
}

/// Deterministic pretty JSON with a trailing newline: the single
/// serialization path for every document and report.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

/// Parses a JSON document, mapping syntax and schema problems to
/// [`Error::Parse`].
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON document: {e}")))
}
