use std::fmt;

use serde::Serialize;

use super::RawGroupoid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// Table lengths or id ranges are inconsistent.
    Shape,
    /// Arrow `u < n_units` is not the identity at unit `u`.
    IdentityArrow,
    /// A composition triple is out of range, duplicated with a different
    /// result, or given for a non-composable pair.
    CompositionTable,
    /// A composable pair has no composition entry.
    MissingComposition,
    /// `src(ab) = src(b)` or `rng(ab) = rng(a)` fails.
    CompositionEndpoints,
    IdentityLaw,
    InverseInvolution,
    InverseLaw,
    Associativity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub arrows: Vec<u32>,
    pub detail: String,
}

/// Every violated axiom of a candidate table set; empty iff the tables form a groupoid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn mentions(&self, axiom: Axiom, arrow: u32) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom && v.arrows.contains(&arrow))
    }

    fn push(&mut self, axiom: Axiom, arrows: Vec<u32>, detail: String) {
        self.violations.push(Violation { axiom, arrows, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{:?} {:?}: {}", v.axiom, v.arrows, v.detail)?;
        }
        Ok(())
    }
}

/// Checks the groupoid axioms on candidate tables. Violations are data, never errors.
pub fn validate(raw: &RawGroupoid) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = raw.n_units;
    let m = raw.src.len();

    if raw.rng.len() != m || raw.inv.len() != m {
        report.push(
            Axiom::Shape,
            vec![],
            format!("src/rng/inv lengths differ: {}/{}/{}", m, raw.rng.len(), raw.inv.len()),
        );
        return report;
    }
    if n > m {
        report.push(Axiom::Shape, vec![], format!("{n} units but only {m} arrows"));
        return report;
    }
    if m > u32::MAX as usize {
        report.push(Axiom::Shape, vec![], "too many arrows".into());
        return report;
    }
    for a in 0..m {
        let id = a as u32;
        if raw.src[a] as usize >= n || raw.rng[a] as usize >= n {
            report.push(Axiom::Shape, vec![id], "src/rng is not a unit id".into());
        }
        if raw.inv[a] as usize >= m {
            report.push(Axiom::Shape, vec![id], "inverse out of range".into());
        }
    }
    if !report.is_clean() {
        return report;
    }

    for u in 0..n {
        if raw.src[u] as usize != u || raw.rng[u] as usize != u {
            report.push(Axiom::IdentityArrow, vec![u as u32], "identity arrow has wrong endpoints".into());
        }
    }

    let mut by_rng: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut by_src: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut range_pos = vec![0usize; m];
    for a in 0..m {
        range_pos[a] = by_rng[raw.rng[a] as usize].len();
        by_rng[raw.rng[a] as usize].push(a as u32);
        by_src[raw.src[a] as usize].push(a as u32);
    }
    let mut offset = Vec::with_capacity(m + 1);
    let mut total = 0usize;
    for a in 0..m {
        offset.push(total);
        total += by_rng[raw.src[a] as usize].len();
    }
    // Dense table over composable pairs; `NONE` marks a missing product.
    const NONE: u32 = u32::MAX;
    let mut table = vec![NONE; total];
    let slot = |a: u32, b: u32| offset[a as usize] + range_pos[b as usize];
    for &[a, b, c] in &raw.comp {
        if a as usize >= m || b as usize >= m || c as usize >= m {
            report.push(Axiom::CompositionTable, vec![a, b, c], "triple id out of range".into());
            continue;
        }
        if raw.src[a as usize] != raw.rng[b as usize] {
            report.push(Axiom::CompositionTable, vec![a, b, c], "composition given for non-composable pair".into());
            continue;
        }
        let entry = &mut table[slot(a, b)];
        if *entry != NONE {
            if *entry != c {
                report.push(Axiom::CompositionTable, vec![a, b, c], format!("conflicting result, earlier {entry}"));
            }
            continue;
        }
        *entry = c;
    }

    for u in 0..n {
        for &a in &by_src[u] {
            for &b in &by_rng[u] {
                if table[slot(a, b)] == NONE {
                    report.push(Axiom::MissingComposition, vec![a, b], "composable pair lacks a product".into());
                }
            }
        }
    }

    let comp = |a: u32, b: u32| -> Option<u32> {
        if raw.src[a as usize] != raw.rng[b as usize] {
            return None;
        }
        Some(table[slot(a, b)]).filter(|&c| c != NONE)
    };
    let src = |a: u32| raw.src[a as usize];
    let rng = |a: u32| raw.rng[a as usize];
    let inv = |a: u32| raw.inv[a as usize];

    let pairs = || (0..m as u32).flat_map(|a| by_rng[src(a) as usize].iter().filter_map(move |&b| comp(a, b).map(|c| (a, b, c))));
    for (a, b, c) in pairs() {
        if src(c) != src(b) || rng(c) != rng(a) {
            report.push(Axiom::CompositionEndpoints, vec![a, b, c], "product has wrong endpoints".into());
        }
    }

    for a in 0..m as u32 {
        if comp(rng(a), a).is_some_and(|c| c != a) || comp(a, src(a)).is_some_and(|c| c != a) {
            report.push(Axiom::IdentityLaw, vec![a], "unit does not act trivially".into());
        }
        if inv(inv(a)) != a {
            report.push(Axiom::InverseInvolution, vec![a], format!("inv(inv(a)) = {}", inv(inv(a))));
        }
        let i = inv(a);
        let endpoints_swapped = src(i) == rng(a) && rng(i) == src(a);
        if !endpoints_swapped || comp(a, i) != Some(rng(a)) || comp(i, a) != Some(src(a)) {
            report.push(Axiom::InverseLaw, vec![a, i], "a·a⁻¹ or a⁻¹·a is not the unit".into());
        }
    }

    // Associativity: (ab)c = a(bc) for every composable triple.
    for (a, b, ab) in pairs() {
        for &c in &by_rng[src(b) as usize] {
            let (Some(bc), Some(ab_c)) = (comp(b, c), comp(ab, c)) else { continue };
            match comp(a, bc) {
                Some(a_bc) if a_bc == ab_c => {}
                _ => report.push(Axiom::Associativity, vec![a, b, c], "(ab)c differs from a(bc)".into()),
            }
        }
    }

    report.violations.sort_by(|x, y| (x.axiom, &x.arrows).cmp(&(y.axiom, &y.arrows)));
    report
}
