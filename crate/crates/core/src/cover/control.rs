use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{ostrand_lift, Cover};
use crate::dad::{kl_dad_check, kl_dad_search, pad};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::search::SearchMode;
use crate::sets::ArrowSet;

pub type Formula = Arc<dyn Fn(&Groupoid, &ArrowSet) -> ArrowSet + Send + Sync>;

/// How `D(K)` is produced for a `K` not yet in the memo.
#[derive(Clone)]
pub enum Rule {
    /// Search `(K, Kᵖ)` for `p = 1, 2, …` and take `K ∪ ⋃ H_i` of the first witness.
    Discovered(SearchMode),
    /// A closed form, checked by exact search at `(K, D(K))`.
    Formula(Formula),
    /// Only seeded values.
    Table,
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rule::Discovered(mode) => write!(f, "Discovered({mode:?})"),
            Rule::Formula(_) => f.write_str("Formula"),
            Rule::Table => f.write_str("Table"),
        }
    }
}

/// A `d`-dimensional control function, memoized, with its Ostrand iterates.
pub struct ControlFunction<'g> {
    g: &'g Groupoid,
    d: usize,
    rule: Rule,
    base: Mutex<HashMap<ArrowSet, (ArrowSet, Cover)>>,
    lifted: Mutex<HashMap<(ArrowSet, usize), ArrowSet>>,
    covers: Mutex<HashMap<(ArrowSet, usize), Cover>>,
}

impl<'g> ControlFunction<'g> {
    pub fn new(g: &'g Groupoid, d: usize, rule: Rule) -> Self {
        Self { g, d, rule, base: Mutex::default(), lifted: Mutex::default(), covers: Mutex::default() }
    }

    pub fn discovered(g: &'g Groupoid, d: usize) -> Self {
        Self::new(g, d, Rule::Discovered(SearchMode::Exact))
    }

    pub fn formula(g: &'g Groupoid, d: usize, f: impl Fn(&Groupoid, &ArrowSet) -> ArrowSet + Send + Sync + 'static) -> Self {
        Self::new(g, d, Rule::Formula(Arc::new(f)))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn groupoid(&self) -> &'g Groupoid {
        self.g
    }

    /// Record `D(K) = value` with its witness cover after checking both.
    pub fn seed(&self, k: &ArrowSet, value: ArrowSet, cover: Cover) -> Result<()> {
        self.check_normal(k)?;
        self.check_value(k, &value)?;
        if cover.len() > self.d + 1 {
            return Err(Error::Precondition(format!("{} classes exceed d + 1 = {}", cover.len(), self.d + 1)));
        }
        let w = kl_dad_check(self.g, k, &value, &cover)?;
        if !w.certified {
            return Err(Error::Certificate("seeded cover does not generate inside D(K)".into()));
        }
        let cover = pad(self.g, cover, self.d + 1);
        self.base.lock().unwrap().insert(k.clone(), (value, cover));
        Ok(())
    }

    fn check_normal(&self, k: &ArrowSet) -> Result<()> {
        self.g.check_arrows(k)?;
        if !self.g.is_oc_normal(k) {
            return Err(Error::Precondition("K is not O_c-normal".into()));
        }
        Ok(())
    }

    fn check_value(&self, k: &ArrowSet, value: &ArrowSet) -> Result<()> {
        self.g.check_arrows(value)?;
        if !self.g.is_oc_normal(value) || !k.is_subset(value) {
            return Err(Error::Precondition("D(K) must be O_c-normal and contain K".into()));
        }
        Ok(())
    }

    fn base_entry(&self, k: &ArrowSet) -> Result<(ArrowSet, Cover)> {
        if let Some(hit) = self.base.lock().unwrap().get(k) {
            return Ok(hit.clone());
        }
        self.check_normal(k)?;
        let g = self.g;
        let entry = match &self.rule {
            Rule::Table => return Err(Error::Precondition("no table entry for this K".into())),
            Rule::Formula(f) => {
                let value = f(g, k);
                self.check_value(k, &value)?;
                let w = kl_dad_search(g, k, &value, self.d, SearchMode::Exact)?
                    .ok_or_else(|| Error::Certificate(format!("formula value admits no {}-dimensional witness", self.d)))?;
                (value, pad(g, w.cover, self.d + 1))
            }
            Rule::Discovered(mode) => {
                let mut p = 1;
                let mut bound = k.clone();
                loop {
                    if let Some(w) = kl_dad_search(g, k, &bound, self.d, *mode)? {
                        let mut value = k.clone();
                        for h in &w.generated {
                            value.union_with(h);
                        }
                        break (g.symmetrize(&value), pad(g, w.cover, self.d + 1));
                    }
                    p += 1;
                    let next = g.power(k, p);
                    if next == bound {
                        return Err(Error::Certificate("no witness even at ⟨K⟩".into()));
                    }
                    bound = next;
                }
            }
        };
        self.base.lock().unwrap().insert(k.clone(), entry.clone());
        Ok(entry)
    }

    /// `D(K)`.
    pub fn value(&self, k: &ArrowSet) -> Result<ArrowSet> {
        Ok(self.base_entry(k)?.0)
    }

    /// The `(d + 1)`-class cover witnessing `D(K)`.
    pub fn witness(&self, k: &ArrowSet) -> Result<Cover> {
        Ok(self.base_entry(k)?.1)
    }

    /// `D^{(k)}(K)`, with `D^{(d)} = D` and `D^{(k+1)}(K) = K·D^{(k)}(K³)·K`.
    pub fn apply(&self, k_set: &ArrowSet, k: usize) -> Result<ArrowSet> {
        if k < self.d {
            return Err(Error::Precondition(format!("level {k} is below d = {}", self.d)));
        }
        if k == self.d {
            return self.value(k_set);
        }
        let key = (k_set.clone(), k);
        if let Some(hit) = self.lifted.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        self.check_normal(k_set)?;
        let inner = self.apply(&self.g.power(k_set, 3), k - 1)?;
        let out = self.g.compose_chain(&[k_set, &inner, k_set])?;
        self.lifted.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// A `(k + 1 − d)`-fold cover with `k + 1` classes generating inside `D^{(k)}(K)`.
    pub fn level_cover(&self, k_set: &ArrowSet, k: usize) -> Result<Cover> {
        if k < self.d {
            return Err(Error::Precondition(format!("level {k} is below d = {}", self.d)));
        }
        if k == self.d {
            return self.witness(k_set);
        }
        let key = (k_set.clone(), k);
        if let Some(hit) = self.covers.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let cover = ostrand_lift(self.g, self, k_set, k - 1)?;
        self.covers.lock().unwrap().insert(key, cover.clone());
        Ok(cover)
    }
}
