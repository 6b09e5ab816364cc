//! Validity checks and brute-force oracles.
//!
//! The checkers never panic on bad input: failures come back as
//! [`VerificationReport`]s listing rule violations with witnesses. The two
//! exhaustive searches ([`max_independent_brute`], [`upper_chromatic_brute`])
//! are exact and deterministic; they refuse orders above a caller-supplied
//! limit since both are exponential.

use std::collections::{BTreeSet, HashMap};

use crate::construct::ConstructionTrace;
use crate::design::{sts_block_count, Block, Coloring, Factor, Factorization, TripleSystem};
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Orders up to this use a dense byte table for pair degrees; larger orders
/// fall back to hashed storage.
pub const DENSE_PAIR_TABLE_MAX_ORDER: usize = 1017;

/// Default order limit for the exact maximum-independent-set search.
pub const DEFAULT_INDEPENDENT_LIMIT: usize = 15;

/// Default order limit for the exhaustive coloring-partition search.
pub const DEFAULT_CHROMATIC_LIMIT: usize = 9;

/// Reported violations are capped at this many per report.
const MAX_REPORTED_VIOLATIONS: usize = 100;

/// One broken rule together with a concrete witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub witness: String,
}

/// Outcome of one checker run. `passed` holds exactly when `violations` is
/// empty; `notes` carries informational lines (class counts and the like).
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub subject: &'static str,
    pub passed: bool,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(subject: &'static str, mut violations: Vec<Violation>, notes: Vec<String>) -> Self {
        let passed = violations.is_empty();
        let mut notes = notes;
        if violations.len() > MAX_REPORTED_VIOLATIONS {
            notes.push(format!(
                "violations truncated to {MAX_REPORTED_VIOLATIONS} of {}",
                violations.len()
            ));
            violations.truncate(MAX_REPORTED_VIOLATIONS);
        }
        VerificationReport {
            subject,
            passed,
            violations,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }
}

/// Degree of every unordered pair of points under a block list.
///
/// Counts saturate at 255 in the dense regime; a saturated count still
/// witnesses a multiply-covered pair.
pub struct PairTable {
    order: usize,
    storage: PairStorage,
}

enum PairStorage {
    Dense(Vec<u8>),
    Sparse(HashMap<(usize, usize), u32>),
}

impl PairTable {
    pub fn new(ts: &TripleSystem) -> Self {
        Self::from_blocks(ts.order(), ts.blocks())
    }

    pub fn from_blocks(order: usize, blocks: &[Block]) -> Self {
        let mut table = if order <= DENSE_PAIR_TABLE_MAX_ORDER {
            PairTable {
                order,
                storage: PairStorage::Dense(vec![0; order * order.saturating_sub(1) / 2]),
            }
        } else {
            PairTable {
                order,
                storage: PairStorage::Sparse(HashMap::new()),
            }
        };
        for block in blocks {
            for (x, y) in block.pairs() {
                table.bump(x, y);
            }
        }
        table
    }

    fn dense_index(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < y && y < self.order);
        x * (2 * self.order - x - 1) / 2 + (y - x - 1)
    }

    fn bump(&mut self, x: usize, y: usize) {
        let (x, y) = (x.min(y), x.max(y));
        match &mut self.storage {
            PairStorage::Dense(counts) => {
                let idx = x * (2 * self.order - x - 1) / 2 + (y - x - 1);
                counts[idx] = counts[idx].saturating_add(1);
            }
            PairStorage::Sparse(map) => {
                *map.entry((x, y)).or_insert(0) += 1;
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self, x: usize, y: usize) -> u32 {
        let (x, y) = (x.min(y), x.max(y));
        match &self.storage {
            PairStorage::Dense(counts) => counts[self.dense_index(x, y)] as u32,
            PairStorage::Sparse(map) => map.get(&(x, y)).copied().unwrap_or(0),
        }
    }

    pub fn pair_count(&self) -> usize {
        self.order * self.order.saturating_sub(1) / 2
    }

    /// Sum of all pair degrees; equals three times the block count.
    pub fn total_degree(&self) -> u64 {
        match &self.storage {
            PairStorage::Dense(counts) => counts.iter().map(|&c| c as u64).sum(),
            PairStorage::Sparse(map) => map.values().map(|&c| c as u64).sum(),
        }
    }
}

fn block_count_violations(ts: &TripleSystem) -> Vec<Violation> {
    let expected = sts_block_count(ts.order());
    if expected != Some(ts.num_blocks()) {
        vec![Violation {
            rule: "block-count",
            witness: format!(
                "order {} has {} blocks, expected {}",
                ts.order(),
                ts.num_blocks(),
                expected.map_or("none admissible".to_string(), |e| e.to_string())
            ),
        }]
    } else {
        Vec::new()
    }
}

fn pair_degree_violation(x: usize, y: usize, degree: u32) -> Violation {
    Violation {
        rule: "pair-degree",
        witness: format!("pair {{{x},{y}}} has degree {degree}"),
    }
}

/// Checks the defining property of a Steiner triple system: every pair of
/// points in exactly one block, and the block count `v(v-1)/6`. Scans the
/// pair table in parallel when the `parallel` feature is on.
pub fn verify_sts(ts: &TripleSystem) -> VerificationReport {
    #[cfg(feature = "parallel")]
    {
        let table = PairTable::new(ts);
        let mut violations = block_count_violations(ts);
        let mut per_row: Vec<Vec<Violation>> = (0..ts.order())
            .into_par_iter()
            .with_min_len(64)
            .map(|x| {
                let mut out = Vec::new();
                for y in x + 1..ts.order() {
                    let d = table.degree(x, y);
                    if d != 1 {
                        out.push(pair_degree_violation(x, y, d));
                    }
                }
                out
            })
            .collect();
        for row in &mut per_row {
            violations.append(row);
        }
        VerificationReport::new("sts", violations, Vec::new())
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify_sts_seq(ts)
    }
}

/// Sequential variant of [`verify_sts`] over the same pair table.
pub fn verify_sts_seq(ts: &TripleSystem) -> VerificationReport {
    let table = PairTable::new(ts);
    let mut violations = block_count_violations(ts);
    for x in 0..ts.order() {
        for y in x + 1..ts.order() {
            let d = table.degree(x, y);
            if d != 1 {
                violations.push(pair_degree_violation(x, y, d));
            }
        }
    }
    VerificationReport::new("sts", violations, Vec::new())
}

/// Independent route to the same verdict as [`verify_sts`]: extracts all
/// pairs from the blocks, sorts them, and walks the sorted list against the
/// full pair enumeration. Shares no code with the pair table.
pub fn verify_sts_merge(ts: &TripleSystem) -> VerificationReport {
    let v = ts.order();
    let mut violations = block_count_violations(ts);
    let mut covered: Vec<(usize, usize)> = Vec::with_capacity(3 * ts.num_blocks());
    for block in ts.blocks() {
        covered.extend_from_slice(&block.pairs());
    }
    covered.sort_unstable();

    let mut idx = 0;
    for x in 0..v {
        for y in x + 1..v {
            let mut degree = 0u32;
            while idx < covered.len() && covered[idx] == (x, y) {
                degree += 1;
                idx += 1;
            }
            if degree != 1 {
                violations.push(pair_degree_violation(x, y, degree));
            }
        }
    }
    VerificationReport::new("sts", violations, Vec::new())
}

fn matching_violations(m: usize, factor: &Factor) -> Vec<Violation> {
    let mut out = Vec::new();
    if factor.m() != m {
        out.push(Violation {
            rule: "factor-order",
            witness: format!("factor {} is on {} vertices, expected {m}", factor.tag(), factor.m()),
        });
        return out;
    }
    let mut seen = vec![false; m];
    for &(x, y) in factor.pairs() {
        if seen[x] || seen[y] {
            out.push(Violation {
                rule: "not-a-matching",
                witness: format!("factor {} repeats a vertex in {{{x},{y}}}", factor.tag()),
            });
        }
        seen[x] = true;
        seen[y] = true;
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        out.push(Violation {
            rule: "not-a-matching",
            witness: format!("factor {} misses vertex {v}", factor.tag()),
        });
    }
    out
}

/// Checks that a family of factors consists of perfect matchings that are
/// pairwise edge-disjoint (with no coverage requirement). This is the
/// correctness contract of a reduced family.
pub fn verify_matching_family(m: usize, factors: &[Factor]) -> VerificationReport {
    let mut violations = Vec::new();
    let mut edge_seen = vec![false; m * m.saturating_sub(1) / 2];
    for factor in factors {
        violations.extend(matching_violations(m, factor));
        if factor.m() != m {
            continue;
        }
        for &(x, y) in factor.pairs() {
            let idx = x * (2 * m - x - 1) / 2 + (y - x - 1);
            if edge_seen[idx] {
                violations.push(Violation {
                    rule: "repeated-edge",
                    witness: format!("edge {{{x},{y}}} appears in {} and an earlier factor", factor.tag()),
                });
            }
            edge_seen[idx] = true;
        }
    }
    VerificationReport::new("matching-family", violations, Vec::new())
}

fn factorization_coverage_violations(f: &Factorization) -> Vec<Violation> {
    let m = f.m();
    let mut violations = Vec::new();
    if f.factors().len() != m - 1 {
        violations.push(Violation {
            rule: "factor-count",
            witness: format!("{} factors, expected {}", f.factors().len(), m - 1),
        });
    }
    let family = verify_matching_family(m, f.factors());
    violations.extend(family.violations);

    // re-walk coverage to report uncovered edges (disjointness is above)
    let mut edge_seen = vec![false; m * m.saturating_sub(1) / 2];
    for factor in f.factors() {
        if factor.m() != m {
            continue;
        }
        for &(x, y) in factor.pairs() {
            edge_seen[x * (2 * m - x - 1) / 2 + (y - x - 1)] = true;
        }
    }
    let mut idx = 0;
    for x in 0..m {
        for y in x + 1..m {
            if !edge_seen[idx] {
                violations.push(Violation {
                    rule: "uncovered-edge",
                    witness: format!("edge {{{x},{y}}} is in no factor"),
                });
            }
            idx += 1;
        }
    }
    violations
}

/// Full 1-factorization check: `m-1` perfect matchings, pairwise
/// edge-disjoint, jointly covering every edge of `K_m`. The per-factor
/// matching checks run in parallel when the `parallel` feature is on.
pub fn verify_factorization(f: &Factorization) -> VerificationReport {
    #[cfg(feature = "parallel")]
    {
        let m = f.m();
        let mut violations = Vec::new();
        if f.factors().len() != m - 1 {
            violations.push(Violation {
                rule: "factor-count",
                witness: format!("{} factors, expected {}", f.factors().len(), m - 1),
            });
        }
        let mut per_factor: Vec<Vec<Violation>> = f
            .factors()
            .par_iter()
            .map(|factor| matching_violations(m, factor))
            .collect();
        for v in &mut per_factor {
            violations.append(v);
        }
        // edge disjointness and coverage share one sequential bitmap pass
        let mut edge_count = vec![0u8; m * m.saturating_sub(1) / 2];
        for factor in f.factors() {
            if factor.m() != m {
                continue;
            }
            for &(x, y) in factor.pairs() {
                let idx = x * (2 * m - x - 1) / 2 + (y - x - 1);
                if edge_count[idx] > 0 {
                    violations.push(Violation {
                        rule: "repeated-edge",
                        witness: format!(
                            "edge {{{x},{y}}} appears in {} and an earlier factor",
                            factor.tag()
                        ),
                    });
                }
                edge_count[idx] = edge_count[idx].saturating_add(1);
            }
        }
        let mut idx = 0;
        for x in 0..m {
            for y in x + 1..m {
                if edge_count[idx] == 0 {
                    violations.push(Violation {
                        rule: "uncovered-edge",
                        witness: format!("edge {{{x},{y}}} is in no factor"),
                    });
                }
                idx += 1;
            }
        }
        VerificationReport::new("factorization", violations, Vec::new())
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify_factorization_seq(f)
    }
}

/// Sequential variant of [`verify_factorization`].
pub fn verify_factorization_seq(f: &Factorization) -> VerificationReport {
    VerificationReport::new("factorization", factorization_coverage_violations(f), Vec::new())
}

fn membership(order: usize, set: &[usize]) -> (Vec<bool>, Vec<Violation>) {
    let mut inside = vec![false; order];
    let mut violations = Vec::new();
    for &p in set {
        if p >= order {
            violations.push(Violation {
                rule: "point-range",
                witness: format!("point {p} outside order {order}"),
            });
        } else {
            inside[p] = true;
        }
    }
    (inside, violations)
}

/// Checks that no block lies entirely inside the set.
pub fn verify_independent(ts: &TripleSystem, set: &[usize]) -> VerificationReport {
    let (inside, mut violations) = membership(ts.order(), set);
    for block in ts.blocks() {
        if block.points().iter().all(|&p| inside[p]) {
            violations.push(Violation {
                rule: "contained-block",
                witness: format!("{block:?} lies inside the set"),
            });
        }
    }
    VerificationReport::new("independent-set", violations, Vec::new())
}

/// Checks maximality of an independent set: every outside point must close a
/// block with two inside points. Errors with [`Error::NotIndependent`] if
/// the set is not independent in the first place.
pub fn verify_maximal_independent(ts: &TripleSystem, set: &[usize]) -> Result<VerificationReport> {
    if let Some(&point) = set.iter().find(|&&p| p >= ts.order()) {
        return Err(Error::OutOfRange {
            point,
            order: ts.order(),
        });
    }
    let (inside, _) = membership(ts.order(), set);
    if let Some(block) = ts
        .blocks()
        .iter()
        .find(|b| b.points().iter().all(|&p| inside[p]))
    {
        return Err(Error::NotIndependent {
            block: block.points(),
        });
    }
    let mut extendable = vec![true; ts.order()];
    for block in ts.blocks() {
        let [a, b, c] = block.points();
        let members = inside[a] as usize + inside[b] as usize + inside[c] as usize;
        if members == 2 {
            for p in [a, b, c] {
                if !inside[p] {
                    extendable[p] = false;
                }
            }
        }
    }
    let violations = (0..ts.order())
        .filter(|&p| !inside[p] && extendable[p])
        .map(|p| Violation {
            rule: "extendable-point",
            witness: format!("point {p} extends the set"),
        })
        .collect();
    Ok(VerificationReport::new(
        "maximal-independent-set",
        violations,
        Vec::new(),
    ))
}

/// Checks that every block sees exactly two distinct colors. The class
/// count is reported in the notes.
pub fn verify_bicoloring(ts: &TripleSystem, coloring: &Coloring) -> VerificationReport {
    let mut violations = Vec::new();
    if coloring.num_points() != ts.order() {
        violations.push(Violation {
            rule: "assignment-size",
            witness: format!(
                "coloring covers {} points, system has {}",
                coloring.num_points(),
                ts.order()
            ),
        });
        return VerificationReport::new("bicoloring", violations, Vec::new());
    }
    for block in ts.blocks() {
        let [a, b, c] = block.points();
        let colors = [
            coloring.color_of(a).unwrap(),
            coloring.color_of(b).unwrap(),
            coloring.color_of(c).unwrap(),
        ];
        let distinct = 1
            + (colors[1] != colors[0]) as usize
            + (colors[2] != colors[0] && colors[2] != colors[1]) as usize;
        if distinct != 2 {
            violations.push(Violation {
                rule: "block-colors",
                witness: format!("{block:?} sees {distinct} colors"),
            });
        }
    }
    let notes = vec![format!("classes={}", coloring.num_classes())];
    VerificationReport::new("bicoloring", violations, notes)
}

/// Checks a doubling step as a whole: the seed embeds, the three block
/// families are disjoint with the right sizes, and every pair of the result
/// is covered exactly once by the family its position and difference demand.
pub fn verify_construction_trace(trace: &ConstructionTrace) -> VerificationReport {
    let mut violations = Vec::new();
    let v = trace.seed.order();
    let m = 1usize << trace.n;
    let order = trace.result.order();
    if order != v + m {
        violations.push(Violation {
            rule: "result-order",
            witness: format!("result order {order}, expected {}", v + m),
        });
        return VerificationReport::new("construction-trace", violations, Vec::new());
    }

    for block in trace.seed.blocks() {
        if !trace.result.contains_block(block) {
            violations.push(Violation {
                rule: "embedding",
                witness: format!("seed block {block:?} missing from the result"),
            });
        }
    }

    if trace.gamma.len() != v * m / 2 {
        violations.push(Violation {
            rule: "gamma-size",
            witness: format!("{} point-factor blocks, expected {}", trace.gamma.len(), v * m / 2),
        });
    }
    if trace.delta.len() != m {
        violations.push(Violation {
            rule: "delta-size",
            witness: format!("{} translate blocks, expected {m}", trace.delta.len()),
        });
    }
    if trace.seed.num_blocks() + trace.gamma.len() + trace.delta.len() != trace.result.num_blocks()
    {
        violations.push(Violation {
            rule: "block-count-identity",
            witness: format!(
                "{} + {} + {} != {}",
                trace.seed.num_blocks(),
                trace.gamma.len(),
                trace.delta.len(),
                trace.result.num_blocks()
            ),
        });
    }

    let seed_table = PairTable::from_blocks(order, trace.seed.blocks());
    let gamma_table = PairTable::from_blocks(order, &trace.gamma);
    let delta_table = PairTable::from_blocks(order, &trace.delta);
    for x in 0..order {
        for y in x + 1..order {
            let expected = if y < v {
                (1, 0, 0)
            } else if x < v {
                (0, 1, 0)
            } else {
                let diff = circular_difference(x - v, y - v, m);
                if trace.triple.contains(diff) {
                    (0, 0, 1)
                } else {
                    (0, 1, 0)
                }
            };
            let actual = (
                seed_table.degree(x, y),
                gamma_table.degree(x, y),
                delta_table.degree(x, y),
            );
            if actual != expected {
                violations.push(Violation {
                    rule: "pair-partition",
                    witness: format!(
                        "pair {{{x},{y}}} covered (seed,point-factor,translate) = {actual:?}, expected {expected:?}"
                    ),
                });
            }
        }
    }
    VerificationReport::new("construction-trace", violations, Vec::new())
}

fn circular_difference(x: usize, y: usize, m: usize) -> usize {
    let d = (x + m - y) % m;
    d.min(m - d)
}

/// The largest size of an independent set when `v ≡ 1, 9 (mod 12)`, per the
/// known bound; `None` otherwise.
pub fn max_independent_upper_bound(order: usize) -> Option<usize> {
    if order % 12 == 1 || order % 12 == 9 {
        Some((order - 1) / 2)
    } else {
        None
    }
}

struct IndependentSearch {
    order: usize,
    blocks_of: Vec<Vec<usize>>,
    in_set: Vec<usize>,
    current: Vec<usize>,
    best_size: usize,
    best: Vec<usize>,
}

impl IndependentSearch {
    fn new(ts: &TripleSystem) -> Self {
        let mut blocks_of = vec![Vec::new(); ts.order()];
        for (i, block) in ts.blocks().iter().enumerate() {
            for p in block.points() {
                blocks_of[p].push(i);
            }
        }
        IndependentSearch {
            order: ts.order(),
            blocks_of,
            in_set: vec![0; ts.blocks().len()],
            current: Vec::new(),
            best_size: 0,
            best: Vec::new(),
        }
    }

    fn can_add(&self, p: usize) -> bool {
        self.blocks_of[p].iter().all(|&b| self.in_set[b] < 2)
    }

    fn add(&mut self, p: usize) {
        for &b in &self.blocks_of[p] {
            self.in_set[b] += 1;
        }
        self.current.push(p);
    }

    fn remove(&mut self, p: usize) {
        for &b in &self.blocks_of[p] {
            self.in_set[b] -= 1;
        }
        self.current.pop();
    }

    fn record(&mut self) {
        if self.current.len() > self.best_size {
            self.best_size = self.current.len();
            self.best = self.current.clone();
        }
    }

    /// Depth-first over "next chosen point", ascending, so candidate sets
    /// appear in lexicographic order and the first maximum recorded is the
    /// lexicographically least one.
    fn search(&mut self, from: usize) {
        self.record();
        for p in from..self.order {
            if self.current.len() + (self.order - p) <= self.best_size {
                break;
            }
            if self.can_add(p) {
                self.add(p);
                self.search(p + 1);
                self.remove(p);
            }
        }
    }
}

/// Exact maximum independent set by backtracking, with the lexicographically
/// least witness. Errors with [`Error::TooLarge`] above `limit`.
pub fn max_independent_brute(ts: &TripleSystem, limit: usize) -> Result<(usize, Vec<usize>)> {
    if ts.order() > limit {
        return Err(Error::TooLarge {
            order: ts.order(),
            limit,
        });
    }
    let mut search = IndependentSearch::new(ts);
    search.search(0);
    Ok((search.best_size, search.best))
}

/// Parallel variant of [`max_independent_brute`]: splits on the first chosen
/// point and merges with a lexicographic tie-break, so the result is
/// identical to the sequential search.
#[cfg(feature = "parallel")]
pub fn max_independent_brute_par(ts: &TripleSystem, limit: usize) -> Result<(usize, Vec<usize>)> {
    if ts.order() > limit {
        return Err(Error::TooLarge {
            order: ts.order(),
            limit,
        });
    }
    let per_first: Vec<(usize, Vec<usize>)> = (0..ts.order())
        .into_par_iter()
        .map(|first| {
            let mut search = IndependentSearch::new(ts);
            if search.can_add(first) {
                search.add(first);
                search.search(first + 1);
            }
            (search.best_size, search.best)
        })
        .collect();
    let mut best: (usize, Vec<usize>) = (0, Vec::new());
    for candidate in per_first {
        if candidate.0 > best.0 {
            best = candidate;
        }
    }
    Ok(best)
}

/// Result of the exhaustive coloring-partition search.
#[derive(Clone, Debug)]
pub struct BicoloringSearch {
    /// Largest class count of any valid coloring; 0 when none exists.
    pub max_classes: usize,
    /// The first valid coloring found with `max_classes` classes, in
    /// restricted-growth enumeration order.
    pub witness: Option<Coloring>,
    /// Every class count that admits a valid coloring.
    pub feasible: BTreeSet<usize>,
}

struct PartitionSearch<'a> {
    order: usize,
    blocks: &'a [Block],
    blocks_ending_at: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    result: BicoloringSearch,
}

impl<'a> PartitionSearch<'a> {
    fn new(ts: &'a TripleSystem) -> Self {
        let mut blocks_ending_at = vec![Vec::new(); ts.order()];
        for (i, block) in ts.blocks().iter().enumerate() {
            blocks_ending_at[block.max_point()].push(i);
        }
        PartitionSearch {
            order: ts.order(),
            blocks: ts.blocks(),
            blocks_ending_at,
            assignment: vec![0; ts.order()],
            result: BicoloringSearch {
                max_classes: 0,
                witness: None,
                feasible: BTreeSet::new(),
            },
        }
    }

    fn completed_blocks_ok(&self, point: usize) -> bool {
        self.blocks_ending_at[point].iter().all(|&i| {
            let [a, b, c] = self.blocks[i].points();
            let ca = self.assignment[a];
            let cb = self.assignment[b];
            let cc = self.assignment[c];
            let distinct =
                1 + (cb != ca) as usize + (cc != ca && cc != cb) as usize;
            distinct == 2
        })
    }

    fn record(&mut self, num_classes: usize) {
        self.result.feasible.insert(num_classes);
        if num_classes > self.result.max_classes {
            self.result.max_classes = num_classes;
            self.result.witness =
                Some(Coloring::new(self.assignment.clone()).expect("growth strings are dense"));
        }
    }

    /// Restricted-growth enumeration: point `i` takes any color used so far
    /// or one new one; a partial assignment is cut as soon as a block whose
    /// last point was just colored fails the two-color rule.
    fn search(&mut self, point: usize, num_classes: usize) {
        if point == self.order {
            self.record(num_classes);
            return;
        }
        for color in 0..=num_classes {
            self.assignment[point] = color;
            if self.completed_blocks_ok(point) {
                self.search(point + 1, num_classes.max(color + 1));
            }
        }
    }
}

/// Exact largest class count of a valid coloring (every block seeing exactly
/// two colors), by exhaustive partition enumeration with pruning. Also
/// reports every feasible class count. Errors with [`Error::TooLarge`] above
/// `limit`.
pub fn upper_chromatic_brute(ts: &TripleSystem, limit: usize) -> Result<BicoloringSearch> {
    if ts.order() > limit {
        return Err(Error::TooLarge {
            order: ts.order(),
            limit,
        });
    }
    let mut search = PartitionSearch::new(ts);
    if ts.order() == 0 {
        return Ok(search.result);
    }
    // the first point always opens class 0
    search.search(1, 1);
    Ok(search.result)
}

/// Parallel variant of [`upper_chromatic_brute`]: splits on the color of the
/// second point (the first branching level) and merges deterministically,
/// preferring the earlier branch on ties.
#[cfg(feature = "parallel")]
pub fn upper_chromatic_brute_par(ts: &TripleSystem, limit: usize) -> Result<BicoloringSearch> {
    if ts.order() > limit {
        return Err(Error::TooLarge {
            order: ts.order(),
            limit,
        });
    }
    if ts.order() < 2 {
        return upper_chromatic_brute(ts, limit);
    }
    let branches: Vec<BicoloringSearch> = [0usize, 1usize]
        .into_par_iter()
        .map(|color| {
            let mut search = PartitionSearch::new(ts);
            search.assignment[1] = color;
            if search.completed_blocks_ok(1) {
                search.search(2, (color + 1).max(1));
            }
            search.result
        })
        .collect();
    let mut merged = BicoloringSearch {
        max_classes: 0,
        witness: None,
        feasible: BTreeSet::new(),
    };
    for branch in branches {
        merged.feasible.extend(branch.feasible.iter().copied());
        if branch.max_classes > merged.max_classes {
            merged.max_classes = branch.max_classes;
            merged.witness = branch.witness;
        }
    }
    Ok(merged)
}
