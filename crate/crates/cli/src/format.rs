//! JSON input and output formats.
//!
//! Coefficients are exact strings `"p"` or `"p/q"` with `q > 0`. Matrices are
//! lists of rows; `J` follows the column convention `J e_j = Σ_i J_ij e_i`, so
//! the adapted structure on `R^4` is
//! `[["0","1","0","0"],["-1","0","0","0"],["0","0","0","1"],["0","0","-1","0"]]`
//! (`J e_1 = −e_2`, `J e_2 = e_1`).

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use abhol_core::catalog::{AssocAlgebra, ComplexMatrixRep};
use abhol_core::{Algebra, Complex, Hermitian, HermitianError, Mode, QMatrix, Q};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// Parses `"p"` or `"p/q"` with integers `p`, `q` and `q > 0`.
pub fn parse_coefficient(s: &str) -> Result<Q, String> {
    let integer = |x: &str| {
        let body = x.strip_prefix('-').unwrap_or(x);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    if !integer(num) || den.is_some_and(|d| d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit())) {
        return Err(format!("`{s}` is not a coefficient of the form p or p/q"));
    }
    if den.is_some_and(|d| d.bytes().all(|b| b == b'0')) {
        return Err(format!("`{s}` has a zero denominator"));
    }
    s.parse::<Q>().map_err(|e| format!("`{s}`: {e}"))
}

/// A file row `[i, j, k, c]`.
pub type Row = (usize, usize, usize, Coeff);

type Entry = ((usize, usize, usize), Q);

/// An exact coefficient as stored in files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeff(pub Q);

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_coefficient(&s).map(Coeff).map_err(serde::de::Error::custom)
    }
}

/// A keyword (`"adapted"`, `"identity"`) or an explicit matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixField {
    Keyword(String),
    Matrix(Vec<Vec<Coeff>>),
}

impl MatrixField {
    fn from_matrix(m: &QMatrix) -> Self {
        MatrixField::Matrix(m.rows().into_iter().map(|r| r.into_iter().map(Coeff).collect()).collect())
    }

    fn resolve(&self, field: &str, keyword: &str, dim: usize) -> Result<Option<QMatrix>, CliError> {
        match self {
            MatrixField::Keyword(k) if k == keyword => Ok(None),
            MatrixField::Keyword(k) => {
                Err(CliError::field(field, format!("expected \"{keyword}\" or a matrix, got \"{k}\"")))
            }
            MatrixField::Matrix(rows) => Ok(Some(to_matrix(field, rows, dim, dim)?)),
        }
    }
}

fn to_matrix(field: &str, rows: &[Vec<Coeff>], nrows: usize, ncols: usize) -> Result<QMatrix, CliError> {
    if rows.len() != nrows {
        return Err(CliError::field(field, format!("expected {nrows} rows, got {}", rows.len())));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(CliError::field(&format!("{field}[{i}]"), format!("expected {ncols} entries, got {}", r.len())));
    }
    Ok(QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect()))
}

fn adapted() -> MatrixField {
    MatrixField::Keyword("adapted".into())
}

fn identity() -> MatrixField {
    MatrixField::Keyword("identity".into())
}

/// A Lie algebra with a Hermitian structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    /// Rows `[i, j, k, c]` meaning `c_{ij}^k = c`, i.e. `de^k ∋ c e^{ij}`.
    pub structure: Vec<Row>,
    #[serde(rename = "J", default = "adapted")]
    pub j: MatrixField,
    #[serde(default = "identity")]
    pub metric: MatrixField,
}

fn structure_rows(dim: usize, rows: &[Row]) -> Result<Vec<Entry>, CliError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for (r, (i, j, k, c)) in rows.iter().enumerate() {
        let field = format!("structure[{r}]");
        if !(1..=dim).contains(i) || !(1..=dim).contains(j) || !(1..=dim).contains(k) {
            return Err(CliError::field(&field, format!("indices ({i}, {j}, {k}) outside 1..={dim}")));
        }
        if i >= j {
            return Err(CliError::field(&field, format!("need i < j, got i = {i}, j = {j}")));
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(CliError::field(&field, format!("duplicate triple ({i}, {j}, {k})")));
        }
        out.push(((*i, *j, *k), c.0.clone()));
    }
    Ok(out)
}

impl AlgebraFile {
    /// Serializes a structure; rows sorted by `(k, i, j)`.
    pub fn from_structure(name: &str, h: &Hermitian) -> Self {
        let alg = h.algebra();
        let mut rows: Vec<_> = alg.structure().into_iter().map(|((i, j, k), c)| (i, j, k, Coeff(c))).collect();
        rows.sort_by_key(|&(i, j, k, _)| (k, i, j));
        let j = if h.complex_structure().is_adapted() {
            adapted()
        } else {
            MatrixField::from_matrix(h.complex_structure().matrix())
        };
        let dim = alg.dim();
        let metric =
            if *h.metric() == QMatrix::identity(dim) { identity() } else { MatrixField::from_matrix(h.metric()) };
        AlgebraFile { name: name.into(), dim, structure: rows, j, metric }
    }

    /// The algebra alone, without the Jacobi check.
    pub fn algebra(&self) -> Result<Algebra, CliError> {
        let rows = structure_rows(self.dim, &self.structure)?;
        Algebra::from_structure(self.dim, rows, Mode::Lax).map_err(|e| CliError::field("structure", e.to_string()))
    }

    /// Algebra, complex structure and metric as given (not yet adapted).
    pub fn hermitian(&self) -> Result<Hermitian, CliError> {
        let alg = self.algebra()?;
        let dim = self.dim;
        let j = match self.j.resolve("J", "adapted", dim)? {
            None => Complex::standard(dim),
            Some(m) => Complex::new(m),
        }
        .map_err(math)?;
        let g = self.metric.resolve("metric", "identity", dim)?.unwrap_or_else(|| QMatrix::identity(dim));
        Hermitian::new(alg, j, g).map_err(math)
    }

    /// Pretty JSON with one structure row per line.
    pub fn to_json(&self) -> String {
        let row = |v: &serde_json::Value| serde_json::to_string(v).expect("serializable");
        let mut s = String::from("{\n");
        s += &format!("  \"name\": {},\n", row(&self.name.clone().into()));
        s += &format!("  \"dim\": {},\n", self.dim);
        let rows: Vec<String> = self
            .structure
            .iter()
            .map(|r| format!("    {}", row(&serde_json::to_value(r).expect("serializable"))))
            .collect();
        if rows.is_empty() {
            s += "  \"structure\": [],\n";
        } else {
            s += &format!("  \"structure\": [\n{}\n  ],\n", rows.join(",\n"));
        }
        let matrix = |f: &MatrixField| match f {
            MatrixField::Keyword(k) => row(&k.clone().into()),
            MatrixField::Matrix(m) => {
                let lines: Vec<String> =
                    m.iter().map(|r| format!("    {}", row(&serde_json::to_value(r).expect("serializable")))).collect();
                format!("[\n{}\n  ]", lines.join(",\n"))
            }
        };
        s += &format!("  \"J\": {},\n", matrix(&self.j));
        s += &format!("  \"metric\": {}\n}}\n", matrix(&self.metric));
        s
    }
}

fn math(e: HermitianError) -> CliError {
    match e {
        HermitianError::Shape { .. } => CliError::Parse(e.to_string()),
        e => CliError::Math(e.to_string()),
    }
}

/// A commutative associative algebra, `{"dim": d, "product": [[i, j, k, "c"], …]}`
/// meaning `e_i e_j = … + c e_k`; the product is completed symmetrically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssocFile {
    pub dim: usize,
    pub product: Vec<Row>,
}

impl AssocFile {
    pub fn algebra(&self) -> Result<AssocAlgebra<Q>, CliError> {
        for (r, (i, j, k, _)) in self.product.iter().enumerate() {
            if ![i, j, k].iter().all(|x| (1..=self.dim).contains(*x)) {
                return Err(CliError::field(&format!("product[{r}]"), format!("indices outside 1..={}", self.dim)));
            }
        }
        AssocAlgebra::new(self.dim, self.product.iter().map(|(i, j, k, c)| ((*i, *j, *k), c.0.clone())))
            .map_err(|e| CliError::field("product", e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexMatrix {
    pub re: Vec<Vec<Coeff>>,
    pub im: Vec<Vec<Coeff>>,
}

/// Commuting traceless complex matrices, `{"m": m, "n": n, "matrices": [{"re": …, "im": …}, …]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub m: usize,
    pub n: usize,
    pub matrices: Vec<ComplexMatrix>,
}

impl RepFile {
    pub fn representation(&self) -> Result<ComplexMatrixRep<Q>, CliError> {
        if self.matrices.len() != self.m {
            return Err(CliError::field(
                "matrices",
                format!("expected m = {} matrices, got {}", self.m, self.matrices.len()),
            ));
        }
        let mut mats = Vec::with_capacity(self.m);
        for (p, c) in self.matrices.iter().enumerate() {
            let re = to_matrix(&format!("matrices[{p}].re"), &c.re, self.n, self.n)?;
            let im = to_matrix(&format!("matrices[{p}].im"), &c.im, self.n, self.n)?;
            mats.push((re, im));
        }
        ComplexMatrixRep::new(self.n, mats).map_err(|e| CliError::Math(e.to_string()))
    }
}

/// Parses JSON text, naming the offending field on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path.is_empty() || path == "." {
            CliError::Parse(format!("{origin}: {inner}"))
        } else {
            CliError::Parse(format!("{origin}: field `{path}`: {inner}"))
        }
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_json(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        assert_eq!(parse_coefficient("-3/4").unwrap(), Q::new((-3).into(), 4.into()));
        assert_eq!(parse_coefficient("7").unwrap(), Q::from_integer(7.into()));
        assert_eq!(parse_coefficient("2/4").unwrap(), Q::new(1.into(), 2.into()));
        for bad in ["", "1/0", "1/-2", "1.5", "a", "1/", "/2", "+1", "1 / 2"] {
            assert!(parse_coefficient(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn defaults_and_errors() {
        let f: AlgebraFile = parse_json(r#"{"name":"h3","dim":4,"structure":[[1,2,3,"-1"]]}"#, "t").unwrap();
        assert_eq!(f.j, adapted());
        assert!(f.hermitian().unwrap().is_adapted());

        let err = parse_json::<AlgebraFile>(r#"{"name":"x","dim":4,"structure":[[1,2,3,"1/0"]]}"#, "t").unwrap_err();
        assert!(err.to_string().contains("structure[0]"), "{err}");
        let dup = r#"{"name":"x","dim":4,"structure":[[1,2,3,"1"],[1,2,3,"2"]]}"#;
        let err = parse_json::<AlgebraFile>(dup, "t").unwrap().hermitian().unwrap_err();
        assert!(err.to_string().contains("structure[1]") && err.exit_code() == 2, "{err}");
        let bad_j = r#"{"name":"x","dim":2,"structure":[],"J":"standard"}"#;
        assert_eq!(parse_json::<AlgebraFile>(bad_j, "t").unwrap().hermitian().unwrap_err().exit_code(), 2);
        let not_j = r#"{"name":"x","dim":2,"structure":[],"J":[["1","0"],["0","1"]]}"#;
        assert_eq!(parse_json::<AlgebraFile>(not_j, "t").unwrap().hermitian().unwrap_err().exit_code(), 1);
    }

    #[test]
    fn explicit_matrices_round_trip() {
        let text = r#"{"name":"x","dim":2,"structure":[],"J":[["0","-1"],["1","0"]],"metric":[["2","0"],["0","2"]]}"#;
        let f: AlgebraFile = parse_json(text, "t").unwrap();
        let h = f.hermitian().unwrap();
        assert!(!h.is_adapted());
        let back = AlgebraFile::from_structure("x", &h);
        assert_eq!(back, f);
        assert_eq!(parse_json::<AlgebraFile>(&back.to_json(), "t").unwrap(), f);
    }
}
