//! The polynomial JSON exchange format:
//! `{"vars":["x","lambda"],"terms":[{"exp":[i,j],"coef":"p/q"}]}`.

use serde::{Deserialize, Serialize};

use super::bipoly::{BiPoly, Var};
use super::rational::{format_rational, parse_rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: [u32; 2],
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl From<&BiPoly> for PolyJson {
    fn from(p: &BiPoly) -> Self {
        PolyJson {
            vars: vec!["x".into(), "lambda".into()],
            terms: p
                .terms()
                .map(|(&(i, j), c)| TermJson {
                    exp: [i, j],
                    coef: format_rational(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for BiPoly {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<BiPoly> {
        if j.vars != ["x", "lambda"] {
            return Err(Error::Parse(format!("unexpected variables {:?}", j.vars)));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            terms.push(((t.exp[0], t.exp[1]), parse_rational(&t.coef)?));
        }
        Ok(BiPoly::from_terms(terms))
    }
}

/// JSON for a univariate polynomial in variable `v`, embedded in the
/// two-variable format.
pub fn unipoly_json(p: &UniPoly, v: Var) -> PolyJson {
    let b = match v {
        Var::X => BiPoly::from_x_poly(p),
        Var::Lambda => BiPoly::from_lambda_poly(p),
    };
    PolyJson::from(&b)
}

pub fn to_json_string(p: &BiPoly) -> String {
    serde_json::to_string(&PolyJson::from(p)).expect("serialisable")
}

pub fn from_json_str(s: &str) -> Result<BiPoly> {
    let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    BiPoly::try_from(&j)
}
