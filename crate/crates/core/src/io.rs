//! JSON file formats for flags.
//!
//! ```json
//! {"q": 2, "n": 4, "modulus": [1, 0, 0, 1, 1],
//!  "subspaces": [{"basis": ["g^0", "g^5"]}]}
//! ```
//!
//! Basis entries are element literals `"0"` or `"g^k"` and need not be
//! canonical. `modulus` lists the coefficients of the field modulus over F_p,
//! constant term first; when omitted the default modulus is used.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldParams};
use crate::flag::Flag;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagFile {
    pub q: u64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    pub subspaces: Vec<SubspaceFile>,
}

impl FlagFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("flag files serialize")
    }

    pub fn field_params(&self) -> Result<FieldParams> {
        let params = FieldParams::for_q(self.q, self.n)?;
        Ok(match &self.modulus {
            Some(m) => params.with_modulus(m.clone()),
            None => params,
        })
    }

    /// Checks that `ctx` is the field this file refers to.
    pub fn check_field(&self, ctx: &FieldCtx) -> Result<()> {
        let same = ctx.q() == self.q
            && ctx.n() == self.n
            && self.modulus.as_deref().is_none_or(|m| m == ctx.modulus());
        if same {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn subspaces<'a>(&self, ctx: &'a FieldCtx) -> Result<Vec<Subspace<'a>>> {
        self.check_field(ctx)?;
        self.subspaces
            .iter()
            .map(|s| {
                let elems = s.basis.iter().map(|lit| ctx.parse_elem(lit)).collect::<Result<Vec<_>>>()?;
                Ok(Subspace::from_generators(ctx, &elems))
            })
            .collect()
    }

    pub fn to_flag<'a>(&self, ctx: &'a FieldCtx) -> Result<Flag<'a>> {
        Flag::new(self.subspaces(ctx)?)
    }

    /// File whose subspaces are spanned by `gamma^k` for the given exponents.
    pub fn from_exponents(ctx: &FieldCtx, exponents: &[Vec<u64>]) -> Self {
        let subspaces = exponents
            .iter()
            .map(|exps| SubspaceFile { basis: exps.iter().map(|k| format!("g^{k}")).collect() })
            .collect();
        Self { q: ctx.q(), n: ctx.n(), modulus: Some(ctx.modulus().to_vec()), subspaces }
    }

    /// File listing the canonical basis of each subspace. Needs log tables.
    pub fn from_flag(flag: &Flag<'_>) -> Result<Self> {
        let ctx = flag.ctx();
        let subspaces = flag
            .subspaces()
            .iter()
            .map(|s| {
                let basis = s
                    .basis()
                    .into_iter()
                    .map(|x| {
                        ctx.format_elem(x)
                            .ok_or_else(|| Error::InvalidParams("field has no log table for element literals".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SubspaceFile { basis })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { q: ctx.q(), n: ctx.n(), modulus: Some(ctx.modulus().to_vec()), subspaces })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let ctx = FieldParams::new(2, 1, 4).build().unwrap();
        let text = r#"{"q":2,"n":4,"modulus":[1,0,0,1,1],"subspaces":[{"basis":["g^0","g^5"]},{"basis":["g^0","g^5","g^1"]}]}"#;
        let file = FlagFile::from_json(text).unwrap();
        let flag = file.to_flag(&ctx).unwrap();
        assert_eq!(flag.type_vector().as_slice(), &[2, 3]);
        let back = FlagFile::from_flag(&flag).unwrap();
        assert_eq!(back.to_flag(&ctx).unwrap(), flag);
        let again = FlagFile::from_json(&back.to_json()).unwrap();
        assert_eq!(again, back);
    }

    #[test]
    fn rejects_bad_input() {
        let ctx = FieldParams::new(2, 1, 4).build().unwrap();
        assert!(FlagFile::from_json("{").is_err());
        let other = r#"{"q":2,"n":5,"subspaces":[]}"#;
        assert_eq!(FlagFile::from_json(other).unwrap().to_flag(&ctx).unwrap_err(), Error::ContextMismatch);
        let empty = r#"{"q":2,"n":4,"subspaces":[]}"#;
        assert_eq!(FlagFile::from_json(empty).unwrap().to_flag(&ctx).unwrap_err(), Error::EmptyFlag);
        let bad = r#"{"q":2,"n":4,"subspaces":[{"basis":["x"]}]}"#;
        assert!(matches!(FlagFile::from_json(bad).unwrap().to_flag(&ctx), Err(Error::Parse(_))));
    }
}
