//! Set-builder strings for `K`, `L`, `E`, `F`.
//!
//! ```text
//! spec  := term ('|' term)*          union
//! term  := units | all
//!        | ball:R                    (Q ∪ G⁰)^R for the declared graphing Q
//!        | power:NAME:N              NAME^N for a bound set (K, L, ...)
//!        | sym:ID,ID,...             listed arrows, their inverses and all units
//!        | NAME                      a bound set
//! ```
//!
//! Every term is `O_c`-normal, so every spec is.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::sets::ArrowSet;

/// Largest exponent accepted by `ball` and `power`.
pub const MAX_EXPONENT: u32 = 1 << 16;

pub struct SetEnv<'g> {
    g: &'g Groupoid,
    graphing: Option<ArrowSet>,
    bound: BTreeMap<String, ArrowSet>,
}

impl<'g> SetEnv<'g> {
    pub fn new(g: &'g Groupoid, graphing: Option<&ArrowSet>) -> Self {
        Self { g, graphing: graphing.cloned(), bound: BTreeMap::new() }
    }

    pub fn bind(&mut self, name: &str, set: ArrowSet) {
        self.bound.insert(name.to_string(), set);
    }

    pub fn get(&self, name: &str) -> Option<&ArrowSet> {
        self.bound.get(name)
    }

    /// Evaluates `spec` and binds the result to `name`.
    pub fn define(&mut self, name: &str, spec: &str) -> Result<ArrowSet> {
        let set = self.eval(spec)?;
        self.bind(name, set.clone());
        Ok(set)
    }

    pub fn eval(&self, spec: &str) -> Result<ArrowSet> {
        let fail = |reason: String| Error::SetSpec { spec: spec.to_string(), reason };
        let mut out = self.g.empty_arrows();
        for term in spec.split('|') {
            out.union_with(&self.term(term.trim()).map_err(fail)?);
        }
        Ok(out)
    }

    fn term(&self, term: &str) -> std::result::Result<ArrowSet, String> {
        let g = self.g;
        let parts: Vec<&str> = term.split(':').collect();
        match parts.as_slice() {
            [""] => Err("empty term".into()),
            ["units"] => Ok(g.unit_arrows()),
            ["all"] => Ok(g.all_arrows()),
            ["ball", r] => {
                let r = exponent(r)?;
                let q = self.graphing.as_ref().ok_or("ball needs a declared graphing")?;
                let base = g.symmetrize(q);
                Ok(g.power(&base, r as usize))
            }
            ["power", name, n] => {
                let n = exponent(n)?;
                let set = self.bound.get(*name).ok_or_else(|| format!("unknown set `{name}`"))?;
                Ok(g.power(set, n as usize))
            }
            ["sym", ids] => {
                let mut set = g.empty_arrows();
                for id in ids.split(',') {
                    let a: u32 = id.trim().parse().map_err(|_| format!("bad arrow id `{id}`"))?;
                    if a as usize >= g.n_arrows() {
                        return Err(format!("arrow {a} out of range"));
                    }
                    set.insert(a);
                }
                Ok(g.symmetrize(&set))
            }
            [name] if self.bound.contains_key(*name) => Ok(self.bound[*name].clone()),
            _ => Err(format!("unknown term `{term}`")),
        }
    }
}

fn exponent(s: &str) -> std::result::Result<u32, String> {
    let n: u32 = s.parse().map_err(|_| format!("bad exponent `{s}`"))?;
    if n > MAX_EXPONENT {
        return Err(format!("exponent {n} above {MAX_EXPONENT}"));
    }
    Ok(n)
}
