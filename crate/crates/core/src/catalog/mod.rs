//! Constructors for example families and named algebras.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::hermitian::{HermitianError, HermitianStructure};
use crate::liealg::LieError;
use crate::scalar::Scalar;

pub mod assoc;
pub mod family8;
pub mod heisenberg;
pub mod named;
pub mod semidirect;

pub use assoc::{aff, Aff, AssocAlgebra, AssocChecks};
pub use family8::{family8, family8_differentials, jacobi_kernel, Family8, Family8Class, FAMILY8_COEFFICIENTS};
pub use heisenberg::{heisenberg, heisenberg_standard, heisenberg_weights};
pub use semidirect::{multiplication_by_i, semidirect_algebra, semidirect_realification, ComplexMatrixRep};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("no balanced metric exists for this class")]
    NoBalancedMetric,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("entry `{entry}` has no parameter `{param}`")]
    UnknownParam { entry: String, param: String },
    #[error("bad parameter {name}: {reason}")]
    BadParam { name: String, reason: String },
    #[error("conflicting input: {0}")]
    Conflict(String),
    #[error("associative algebra is not associative")]
    NotAssociative,
    #[error("associative algebra is not nilpotent, so aff(A) is not unimodular")]
    NotNilpotent,
    #[error("invalid representation: {0}")]
    BadRepresentation(String),
    #[error("structure constants fail the Jacobi identity")]
    Jacobi,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
}

/// Properties an entry is known to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Claims {
    pub abelian: bool,
    pub balanced: bool,
    pub nilpotent: bool,
}

#[derive(Clone, PartialEq)]
pub struct CatalogEntry<T> {
    pub name: String,
    pub structure: HermitianStructure<T>,
    pub claims: Claims,
    pub notes: Vec<String>,
}

impl<T: Scalar> std::fmt::Debug for CatalogEntry<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("name", &self.name)
            .field("structure", &self.structure)
            .field("claims", &self.claims)
            .field("notes", &self.notes)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamInfo {
    pub name: &'static str,
    pub default: &'static str,
    pub description: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntryInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub params: &'static [ParamInfo],
}

const HEIS_PARAMS: &[ParamInfo] = &[
    ParamInfo { name: "n", default: "2", description: "complex dimension of the f-block, n >= 2" },
    ParamInfo { name: "k", default: "0", description: "extra abelian factor R^(2k+1)" },
    ParamInfo { name: "r", default: "1", description: "class J_r, 1 <= r <= n/2" },
];

const ENTRIES: &[EntryInfo] = &[
    EntryInfo { name: "g1", description: "8-dim, de6 = e12 - e34, de7 = e13 + e24, de8 = e14 - e23", params: &[] },
    EntryInfo { name: "g2", description: "8-dim, de7 = e13 + e24, de8 = e14 - e23", params: &[] },
    EntryInfo { name: "g3", description: "8-dim h5 x R3, de8 = e12 - e34", params: &[] },
    EntryInfo { name: "s6", description: "6-dim unimodular solvable, realification of C x_diag(1,-1) C2", params: &[] },
    EntryInfo { name: "heisenberg", description: "h_(2n+1) x R^(2k+1) with balanced class J_r", params: HEIS_PARAMS },
    EntryInfo { name: "A1", description: "aff(A1), e1^2 = -e3, e2^2 = e3", params: &[] },
    EntryInfo { name: "B1", description: "aff(A1 x R)", params: &[] },
    EntryInfo {
        name: "B2",
        description: "aff(B2), e1^2 = e2^2 = lambda e4, e3^2 = -2 lambda e4",
        params: &[ParamInfo { name: "lambda", default: "1", description: "positive rational" }],
    },
    EntryInfo { name: "B3", description: "aff(B3), A1 plus e1 e2 = e4", params: &[] },
    EntryInfo {
        name: "step3",
        description: "8-dim 3-step nilpotent, realified C x_M C3 with M nilpotent Jordan",
        params: &[],
    },
    EntryInfo {
        name: "M_lambda",
        description: "10-dim solvable, realified C x_M C4 with M = J_2(0) + diag(lambda, -lambda)",
        params: &[
            ParamInfo { name: "a", default: "1", description: "real part of lambda" },
            ParamInfo { name: "b", default: "0", description: "imaginary part of lambda" },
        ],
    },
    EntryInfo {
        name: "complex_heisenberg_realified",
        description: "6-dim realified complex Heisenberg algebra",
        params: &[],
    },
    EntryInfo { name: "h3xR3", description: "h3 x R3 with de6 = e12; standard structure is not balanced", params: &[] },
    EntryInfo {
        name: "abelian",
        description: "abelian algebra R^dim",
        params: &[ParamInfo { name: "dim", default: "8", description: "positive even integer" }],
    },
];

pub fn entries() -> &'static [EntryInfo] {
    ENTRIES
}

fn param<T: Scalar>(info: &EntryInfo, params: &BTreeMap<String, T>, name: &str) -> Result<T, CatalogError> {
    if let Some(v) = params.get(name) {
        return Ok(v.clone());
    }
    let p = info.params.iter().find(|p| p.name == name).expect("declared parameter");
    Ok(T::from_int(p.default.parse().expect("integer default")))
}

fn int_param<T: Scalar>(info: &EntryInfo, params: &BTreeMap<String, T>, name: &str) -> Result<usize, CatalogError> {
    let v = param(info, params, name)?;
    let bad = || CatalogError::BadParam { name: name.into(), reason: format!("{v} is not a non-negative integer") };
    let i = v.to_i64().ok_or_else(bad)?;
    if i < 0 || T::from_int(i) != v {
        return Err(bad());
    }
    Ok(i as usize)
}

const ALL: Claims = Claims { abelian: true, balanced: true, nilpotent: true };
const SOLVABLE: Claims = Claims { abelian: true, balanced: true, nilpotent: false };
const UNLISTED_ZERO: &str = "products not listed are zero";

/// Builds a named entry.
pub fn named<T: Scalar>(name: &str, params: &BTreeMap<String, T>) -> Result<CatalogEntry<T>, CatalogError> {
    let info = ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| CatalogError::UnknownEntry(name.into()))?;
    if let Some(p) = params.keys().find(|k| !info.params.iter().any(|p| p.name == k.as_str())) {
        return Err(CatalogError::UnknownParam { entry: name.into(), param: p.clone() });
    }
    let mut notes = Vec::new();
    let (structure, claims) = match name {
        "g1" => (named::g1()?, ALL),
        "g2" => (named::g2()?, ALL),
        "g3" => (named::g3()?, ALL),
        "s6" => (named::s6()?, SOLVABLE),
        "heisenberg" => {
            let (n, k, r) =
                (int_param(info, params, "n")?, int_param(info, params, "k")?, int_param(info, params, "r")?);
            (heisenberg(n, k, r)?, ALL)
        }
        "A1" => {
            notes.push(UNLISTED_ZERO.into());
            (named::aff_balanced(&named::a1())?, ALL)
        }
        "B1" => {
            notes.push(UNLISTED_ZERO.into());
            (named::aff_balanced(&named::b1())?, ALL)
        }
        "B2" => {
            let lambda = param(info, params, "lambda")?;
            if !lambda.is_positive() {
                return Err(CatalogError::BadParam { name: "lambda".into(), reason: "must be positive".into() });
            }
            notes.push(UNLISTED_ZERO.into());
            notes.push("metric rescaling folded into the constants: {e1, e2, e3, e4/lambda} orthonormal".into());
            (named::aff_balanced(&named::b2(lambda))?, ALL)
        }
        "B3" => {
            notes.push(UNLISTED_ZERO.into());
            (named::aff_balanced(&named::b3())?, ALL)
        }
        "step3" => (named::step3()?, ALL),
        "M_lambda" => {
            let (a, b) = (param(info, params, "a")?, param(info, params, "b")?);
            (named::m_lambda(a, b)?, SOLVABLE)
        }
        "complex_heisenberg_realified" => {
            notes.push(
                "frame from the realification: de5 = -e13 - e24, de6 = -e14 + e23; the presentation \
                 de5 = e13 + e42, de6 = e14 + e23 is a different frame, compared by fingerprint only"
                    .into(),
            );
            (named::complex_heisenberg_realified()?, ALL)
        }
        "h3xR3" => {
            notes.push("no balanced metric exists for this class".into());
            (named::h3xr3()?, Claims { abelian: true, balanced: false, nilpotent: true })
        }
        "abelian" => (named::abelian(int_param(info, params, "dim")?)?, ALL),
        _ => unreachable!("listed entry without constructor"),
    };
    Ok(CatalogEntry { name: name.into(), structure, claims, notes })
}

/// Every entry with default parameters.
pub fn all_default<T: Scalar>() -> Result<Vec<CatalogEntry<T>>, CatalogError> {
    ENTRIES.iter().map(|e| named(e.name, &BTreeMap::new())).collect()
}
