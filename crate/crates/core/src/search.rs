//! Backtracking colour search shared by the witness and decomposition searches.
//!
//! Items are coloured one at a time in a fixed order. A colour is admissible
//! for an item when the problem accepts the item joining that colour class.
//! Colours are tried in increasing order, and a fresh colour may only be the
//! least unused one, so the first complete colouring found is the
//! lexicographically least one up to renaming colours. Subtrees below a
//! short prefix are explored in parallel; the result is always the first
//! prefix in order that completes, so scheduling never changes the answer.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Complete backtracking; finds a colouring whenever one exists.
    Exact,
    /// First-fit colouring; sound but may miss colourings.
    Greedy,
}

impl std::str::FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(SearchMode::Exact),
            "greedy" => Ok(SearchMode::Greedy),
            other => Err(format!("unknown search mode `{other}` (expected exact|greedy)")),
        }
    }
}

pub(crate) trait Colouring: Sync {
    /// Items in colouring order.
    fn items(&self) -> &[u32];
    /// Size of the id universe the items live in.
    fn universe(&self) -> usize;
    /// May `item` join the class currently holding `members`?
    fn admits(&self, members: &FixedBitSet, item: u32) -> bool;
}

/// Colour index per item (in `items()` order), or `None`.
pub(crate) fn colour<P: Colouring>(p: &P, colours: usize, mode: SearchMode) -> Option<Vec<u8>> {
    assert!(colours <= u8::MAX as usize);
    if colours == 0 {
        return p.items().is_empty().then(Vec::new);
    }
    match mode {
        SearchMode::Greedy => greedy(p, colours),
        SearchMode::Exact => exact(p, colours),
    }
}

fn greedy<P: Colouring>(p: &P, colours: usize) -> Option<Vec<u8>> {
    let mut state = State::new(p.universe(), colours);
    for &item in p.items() {
        let c = (0..colours).find(|&c| p.admits(&state.classes[c], item))?;
        state.push(item, c as u8);
    }
    Some(state.assignment)
}

#[derive(Clone)]
struct State {
    classes: Vec<FixedBitSet>,
    assignment: Vec<u8>,
    used: usize,
}

impl State {
    fn new(universe: usize, colours: usize) -> Self {
        Self { classes: vec![FixedBitSet::with_capacity(universe); colours], assignment: Vec::new(), used: 0 }
    }

    fn push(&mut self, item: u32, c: u8) {
        self.classes[c as usize].insert(item as usize);
        self.assignment.push(c);
        self.used = self.used.max(c as usize + 1);
    }

    fn pop(&mut self, item: u32, used_before: usize) {
        let c = self.assignment.pop().expect("non-empty");
        self.classes[c as usize].set(item as usize, false);
        self.used = used_before;
    }
}

/// Admissible colours for the next item, in trial order.
fn candidates<P: Colouring>(p: &P, state: &State, colours: usize, item: u32) -> Vec<u8> {
    let limit = (state.used + 1).min(colours);
    (0..limit).filter(|&c| p.admits(&state.classes[c], item)).map(|c| c as u8).collect()
}

fn exact<P: Colouring>(p: &P, colours: usize) -> Option<Vec<u8>> {
    let items = p.items();
    // Expand prefixes breadth-first until there is enough parallel work.
    let target = rayon::current_num_threads() * 8;
    let mut frontier = vec![State::new(p.universe(), colours)];
    let mut depth = 0;
    while depth < items.len() && frontier.len() < target && depth < 24 {
        let mut next = Vec::new();
        for state in &frontier {
            for c in candidates(p, state, colours, items[depth]) {
                let mut child = state.clone();
                child.push(items[depth], c);
                next.push(child);
            }
        }
        frontier = next;
        depth += 1;
        if frontier.is_empty() {
            return None;
        }
    }
    frontier.into_par_iter().find_map_first(|mut state| dfs(p, colours, &mut state, depth).then_some(state.assignment))
}

fn dfs<P: Colouring>(p: &P, colours: usize, state: &mut State, depth: usize) -> bool {
    let items = p.items();
    if depth == items.len() {
        return true;
    }
    let item = items[depth];
    for c in candidates(p, state, colours, item) {
        let used_before = state.used;
        state.push(item, c);
        if dfs(p, colours, state, depth + 1) {
            return true;
        }
        state.pop(item, used_before);
    }
    false
}
