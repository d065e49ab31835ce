//! Reading variable declarations, expressions and system files.
//!
//! A system file describes a connection matrix:
//!
//! ```json
//! {"vars": ["z1", "z2"], "laurent": [], "B": [["d(z1)", "0"], ["z2*d(z1)", "0"]], "blocks": [1, 1]}
//! ```
//!
//! `laurent` and `blocks` are optional. Entries of `B` use the expression grammar.

use std::path::Path;
use std::sync::Arc;

use clap::Args;
use leafscheme::expr::{parse_one_form, parse_polynomial, parse_vector_field};
use leafscheme::foliation::{FormMatrix, IdealGens, OneForm, PolyContext, VectorField};
use leafscheme::exact::Rationals;
use leafscheme::{Error, Result};
use serde::Deserialize;

#[derive(Debug, Clone, Args)]
pub struct VarArgs {
    /// Variable names, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub vars: Vec<String>,
    /// Variables allowed to carry negative exponents.
    #[arg(long, value_delimiter = ',')]
    pub laurent: Vec<String>,
}

impl VarArgs {
    pub fn context(&self) -> Result<Arc<PolyContext>> {
        context(&self.vars, &self.laurent)
    }
}

fn context(vars: &[String], laurent: &[String]) -> Result<Arc<PolyContext>> {
    if let Some(l) = laurent.iter().find(|l| !vars.contains(l)) {
        return Err(Error::Invalid(format!("Laurent variable {l} is not declared")));
    }
    let flags = vars.iter().map(|v| laurent.contains(v)).collect();
    PolyContext::with_laurent(vars.to_vec(), flags)
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    vars: Vec<String>,
    #[serde(default)]
    laurent: Vec<String>,
    #[serde(rename = "B")]
    b: Vec<Vec<String>>,
    #[serde(default)]
    blocks: Option<Vec<usize>>,
}

pub struct System {
    pub b: FormMatrix,
    pub blocks: Option<Vec<usize>>,
}

pub fn read_system(path: &Path) -> Result<System> {
    let doc: SystemDoc =
        serde_json::from_str(&read_text(path)?).map_err(|e| Error::Invalid(format!("system file: {e}")))?;
    let ctx = context(&doc.vars, &doc.laurent)?;
    let rows = doc
        .b
        .iter()
        .map(|row| row.iter().map(|s| parse_one_form(s, &ctx)).collect::<Result<Vec<OneForm>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(System { b: FormMatrix::new(ctx, Rationals, rows)?, blocks: doc.blocks })
}

pub fn field(text: &str, ctx: &Arc<PolyContext>) -> Result<VectorField> {
    parse_vector_field(text, ctx)
}

pub fn forms(texts: &[String], ctx: &Arc<PolyContext>) -> Result<Vec<OneForm>> {
    texts.iter().map(|s| parse_one_form(s, ctx)).collect()
}

pub fn ideal(texts: &[String], ctx: &Arc<PolyContext>) -> Result<IdealGens> {
    let gens = texts.iter().map(|s| parse_polynomial(s, ctx)).collect::<Result<Vec<_>>>()?;
    IdealGens::new(ctx.clone(), gens)
}
