//! Doubling constructions for triple systems.
//!
//! `double_plus_one` embeds an order-`v` system into one of order `2v+1`
//! using any 1-factorization of `K_{v+1}`. `double_plus_seven` embeds an
//! order-`2^n - 7` system into one of order `2^{n+1} - 7` by joining each
//! old point to one factor of the reduced difference family and closing the
//! excluded differences with the translates of a base block.
//!
//! Iterating the latter from the order-9 seed, with the factor assignment
//! split by difference parity, carries along a maximal independent set of
//! size `(v-1)/2` and a coloring that gains one class per step.

use std::collections::BTreeMap;

use crate::design::{
    relabel_union, Block, Coloring, DifferenceTriple, Factor, FactorTag, Factorization,
    TripleSystem,
};
use crate::error::{Error, Result};
use crate::factorize::{difference_factorization, reduced_family};
use crate::verify;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The order-9 seed: this exact 12-block system admits a maximal independent
/// set `{0,1,3,4}` of size 4 and a 3-class coloring, both of which the
/// doubling chain extends level by level.
pub const SEED_STS9_BLOCKS: [[usize; 3]; 12] = [
    [0, 1, 2],
    [0, 3, 6],
    [0, 4, 8],
    [0, 5, 7],
    [3, 4, 5],
    [1, 4, 7],
    [1, 5, 6],
    [1, 3, 8],
    [6, 7, 8],
    [2, 5, 8],
    [2, 3, 7],
    [2, 4, 6],
];

/// A seed system together with the structure the chain carries.
#[derive(Clone, Debug)]
pub struct SeedSystem {
    pub system: TripleSystem,
    pub independent_set: Vec<usize>,
    pub coloring: Coloring,
}

/// The order-9 seed system, its maximal independent set, and its 3-class
/// coloring.
pub fn seed_sts9() -> SeedSystem {
    let labels: BTreeMap<usize, String> = (0..9).map(|i| (i, format!("x_{}", i + 1))).collect();
    let system = TripleSystem::new(9, SEED_STS9_BLOCKS)
        .and_then(|ts| ts.with_labels(labels))
        .expect("the seed block list is canonicalizable");
    let coloring = Coloring::from_classes(&[vec![0, 1, 3, 4], vec![2, 5, 6, 7], vec![8]], 9)
        .expect("the seed classes partition the points");
    SeedSystem {
        system,
        independent_set: vec![0, 1, 3, 4],
        coloring,
    }
}

/// An assignment of one factor to every point of a seed system, bijective
/// onto the supplied family.
#[derive(Clone, Debug)]
pub struct PhiBijection {
    factors: Vec<Factor>,
}

impl PhiBijection {
    /// Binds an explicit tag-per-point assignment against a factor family.
    /// Every tag must resolve to a distinct factor and the family must be
    /// exhausted.
    pub fn from_tags(tags: &[FactorTag], family: &[Factor]) -> Result<Self> {
        if tags.len() != family.len() {
            return Err(Error::SizeMismatch {
                what: "factor assignment",
                expected: family.len(),
                got: tags.len(),
            });
        }
        let mut used = vec![false; family.len()];
        let mut factors = Vec::with_capacity(tags.len());
        for tag in tags {
            let idx = family
                .iter()
                .position(|f| f.tag() == *tag)
                .ok_or_else(|| Error::InvalidInput(format!("tag {tag} not in the family")))?;
            if used[idx] {
                return Err(Error::InvalidInput(format!("tag {tag} assigned twice")));
            }
            used[idx] = true;
            factors.push(family[idx].clone());
        }
        Ok(PhiBijection { factors })
    }

    /// Point `i` takes the `i`-th factor of the family.
    pub fn index_order(family: &[Factor]) -> Self {
        PhiBijection {
            factors: family.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, point: usize) -> &Factor {
        &self.factors[point]
    }

    pub fn tags(&self) -> Vec<FactorTag> {
        self.factors.iter().map(|f| f.tag()).collect()
    }
}

/// Splits the factor assignment by parity: the independent set takes the
/// odd-difference factors, its complement the even-difference ones
/// (including the half-distance factor), each side in ascending point order
/// against the family order. This is what lets the evens of the new points
/// extend the independent set.
pub fn parity_split_bijection(
    seed: &TripleSystem,
    independent_set: &[usize],
    family: &[Factor],
) -> Result<PhiBijection> {
    let v = seed.order();
    if family.len() != v {
        return Err(Error::SizeMismatch {
            what: "factor family",
            expected: v,
            got: family.len(),
        });
    }
    let mut inside = vec![false; v];
    for &p in independent_set {
        if p >= v {
            return Err(Error::OutOfRange { point: p, order: v });
        }
        inside[p] = true;
    }
    let set_size = inside.iter().filter(|&&b| b).count();

    let mut odd = Vec::new();
    let mut even = Vec::new();
    for factor in family {
        let difference = factor.difference().ok_or_else(|| {
            Error::InvalidInput("parity split needs difference-tagged factors".into())
        })?;
        if difference % 2 == 1 {
            odd.push(factor.clone());
        } else {
            even.push(factor.clone());
        }
    }
    if odd.len() != set_size {
        return Err(Error::CardinalityMismatch {
            detail: format!(
                "independent set has {set_size} points but the family has {} odd-difference factors",
                odd.len()
            ),
        });
    }
    if even.len() != v - set_size {
        return Err(Error::CardinalityMismatch {
            detail: format!(
                "complement has {} points but the family has {} even-difference factors",
                v - set_size,
                even.len()
            ),
        });
    }

    let mut odd_iter = odd.into_iter();
    let mut even_iter = even.into_iter();
    let factors = (0..v)
        .map(|p| {
            if inside[p] {
                odd_iter.next().expect("odd side count checked")
            } else {
                even_iter.next().expect("even side count checked")
            }
        })
        .collect();
    Ok(PhiBijection { factors })
}

/// One doubling step and everything needed to audit it: the three block
/// families by provenance and the structure carried to the next level.
#[derive(Clone, Debug)]
pub struct ConstructionTrace {
    pub seed: TripleSystem,
    pub n: u32,
    pub triple: DifferenceTriple,
    pub phi: PhiBijection,
    pub result: TripleSystem,
    /// Blocks joining one seed point to one pair of its factor.
    pub gamma: Vec<Block>,
    /// Translates of the base block covering the excluded differences.
    pub delta: Vec<Block>,
    pub carried_independent_set: Option<Vec<usize>>,
    pub carried_coloring: Option<Coloring>,
}

/// The translates `{i, i+a, i+a+b}` of the base block `{0, a, a+b}` in
/// `Z_2^n`, relabeled onto the points `{v..v+2^n-1}` with `v = 2^n - 7`.
/// Together they cover every pair of difference `a`, `b`, or `c` exactly
/// once.
pub fn delta_translates(n: u32, triple: DifferenceTriple) -> Result<Vec<Block>> {
    triple.validate_for(n)?;
    let m = 1usize << n;
    let v = m - 7;
    let map = relabel_union(v, m);
    (0..m)
        .map(|i| {
            Block::new([
                map.y_point(i),
                map.y_point((i + triple.a) % m),
                map.y_point((i + triple.a + triple.b) % m),
            ])
        })
        .collect()
}

fn gamma_blocks(v: usize, phi: &PhiBijection) -> Result<Vec<Block>> {
    let point_blocks = |x: usize| -> Result<Vec<Block>> {
        phi.factor(x)
            .pairs()
            .iter()
            .map(|&(y, z)| Block::new([x, v + y, v + z]))
            .collect()
    };
    #[cfg(feature = "parallel")]
    let per_point: Result<Vec<Vec<Block>>> = (0..v)
        .into_par_iter()
        .with_min_len(8)
        .map(point_blocks)
        .collect();
    #[cfg(not(feature = "parallel"))]
    let per_point: Result<Vec<Vec<Block>>> = (0..v).map(point_blocks).collect();
    Ok(per_point?.into_iter().flatten().collect())
}

fn label_union(seed: &TripleSystem, y_size: usize) -> BTreeMap<usize, String> {
    let mut labels = seed.labels().clone();
    for r in 0..y_size {
        labels.insert(seed.order() + r, format!("y={r}"));
    }
    labels
}

/// Doubles an order-`v` system to order `2v+1`: keep the seed blocks and
/// join each seed point to every pair of "its" factor of a 1-factorization
/// of `K_{v+1}` on the fresh points. `phi` maps seed points to factor
/// indices and must be a permutation.
pub fn double_plus_one(
    seed: &TripleSystem,
    factorization: &Factorization,
    phi: &[usize],
) -> Result<TripleSystem> {
    let v = seed.order();
    if factorization.m() != v + 1 {
        return Err(Error::SizeMismatch {
            what: "factorization order",
            expected: v + 1,
            got: factorization.m(),
        });
    }
    if factorization.factors().len() != v {
        return Err(Error::SizeMismatch {
            what: "factor count",
            expected: v,
            got: factorization.factors().len(),
        });
    }
    let mut used = vec![false; v];
    for &f in phi {
        if f >= v || used[f] {
            return Err(Error::InvalidInput(
                "factor assignment is not a permutation".into(),
            ));
        }
        used[f] = true;
    }
    if phi.len() != v {
        return Err(Error::SizeMismatch {
            what: "factor assignment",
            expected: v,
            got: phi.len(),
        });
    }

    let mut raw: Vec<[usize; 3]> = seed.blocks().iter().map(|b| b.points()).collect();
    for (x, &f) in phi.iter().enumerate() {
        for &(y, z) in factorization.factors()[f].pairs() {
            raw.push([x, v + y, v + z]);
        }
    }
    TripleSystem::new(2 * v + 1, raw)?.with_labels(seed.labels().clone())
}

/// Doubles an order-`2^n - 7` system to order `2^{n+1} - 7`. The result is
/// the union of the seed blocks, the point-factor blocks over the reduced
/// difference family, and the base-block translates; the trace records all
/// three families.
pub fn double_plus_seven(
    seed: &TripleSystem,
    n: u32,
    triple: DifferenceTriple,
    phi: &PhiBijection,
) -> Result<ConstructionTrace> {
    let m = 1usize << n;
    let v = seed.order();
    if n < 3 || m - 7 != v {
        return Err(Error::SizeMismatch {
            what: "seed order",
            expected: (1usize << n).saturating_sub(7),
            got: v,
        });
    }
    triple.validate_for(n)?;
    if phi.len() != v {
        return Err(Error::SizeMismatch {
            what: "factor assignment",
            expected: v,
            got: phi.len(),
        });
    }
    for point in 0..v {
        let factor = phi.factor(point);
        if factor.m() != m {
            return Err(Error::SizeMismatch {
                what: "factor vertex count",
                expected: m,
                got: factor.m(),
            });
        }
        match factor.difference() {
            Some(d) if !triple.contains(d) => {}
            _ => {
                return Err(Error::InvalidInput(format!(
                    "factor {} does not belong to the reduced family",
                    factor.tag()
                )))
            }
        }
    }
    let seed_report = verify::verify_sts(seed);
    if !seed_report.passed() {
        return Err(Error::NotAnSts {
            detail: seed_report
                .violations
                .first()
                .map(|w| w.witness.clone())
                .unwrap_or_else(|| "unknown violation".into()),
        });
    }

    let gamma = gamma_blocks(v, phi)?;
    let delta = delta_translates(n, triple)?;
    let mut raw: Vec<[usize; 3]> = seed.blocks().iter().map(|b| b.points()).collect();
    raw.extend(gamma.iter().map(|b| b.points()));
    raw.extend(delta.iter().map(|b| b.points()));
    let result = TripleSystem::new(v + m, raw)?.with_labels(label_union(seed, m))?;

    Ok(ConstructionTrace {
        seed: seed.clone(),
        n,
        triple,
        phi: phi.clone(),
        result,
        gamma,
        delta,
        carried_independent_set: None,
        carried_coloring: None,
    })
}

/// Extends an independent set of an order-`v` system across one doubling
/// step by adding the even residues of the new points: `T ∪ {v + 2i}`.
pub fn extend_independent_set(set: &[usize], n: u32, v: usize) -> Vec<usize> {
    let half = 1usize << (n - 1);
    let mut extended = set.to_vec();
    extended.extend((0..half).map(|i| v + 2 * i));
    extended.sort_unstable();
    extended
}

/// Extends a coloring across one doubling step: the even residues of the
/// new points join the class holding the carried independent set, the odd
/// residues form one fresh class.
pub fn extend_bicoloring(
    coloring: &Coloring,
    class_of_set: usize,
    n: u32,
    v: usize,
) -> Result<Coloring> {
    if coloring.num_points() != v {
        return Err(Error::InvalidInput(format!(
            "coloring covers {} points, expected {v}",
            coloring.num_points()
        )));
    }
    if class_of_set >= coloring.num_classes() {
        return Err(Error::InvalidInput(format!(
            "class {class_of_set} does not exist in a {}-class coloring",
            coloring.num_classes()
        )));
    }
    let m = 1usize << n;
    let new_class = coloring.num_classes();
    let mut assignment = coloring.assignment().to_vec();
    assignment.extend((0..m).map(|r| if r % 2 == 0 { class_of_set } else { new_class }));
    Coloring::new(assignment)
}

/// How the factor assignment of each chain step is chosen.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PhiStrategy {
    /// Parity split against the carried independent set; carries the set and
    /// the coloring to the next level.
    Parity,
    /// Point `i` to factor `i`; carries nothing.
    Index,
}

/// Options for [`build_chain_with`].
#[derive(Clone, Copy, Debug)]
pub struct ChainOptions {
    pub triple: DifferenceTriple,
    pub phi: PhiStrategy,
    /// Re-verify every level (system, step partition, carried structure).
    /// Turning this off is for benchmarking construction alone.
    pub verify: bool,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            triple: DifferenceTriple::new(1, 2, 3),
            phi: PhiStrategy::Parity,
            verify: true,
        }
    }
}

/// Iterates the doubling step from the order-9 seed up to order
/// `2^n_target - 7`, carrying and re-verifying a maximal independent set of
/// size `(v-1)/2` and a coloring with one class per level.
pub fn build_chain(n_target: u32) -> Result<Vec<ConstructionTrace>> {
    build_chain_with(n_target, &ChainOptions::default())
}

/// [`build_chain`] with explicit difference triple, assignment strategy, and
/// verification toggle.
pub fn build_chain_with(n_target: u32, options: &ChainOptions) -> Result<Vec<ConstructionTrace>> {
    if n_target < 4 {
        return Err(Error::InvalidInput(format!(
            "chain target must be at least 4, got {n_target}"
        )));
    }
    let seed = seed_sts9();
    let mut current = seed.system;
    let mut carried: Option<(Vec<usize>, Coloring)> = match options.phi {
        PhiStrategy::Parity => Some((seed.independent_set, seed.coloring)),
        PhiStrategy::Index => None,
    };
    let mut traces = Vec::new();

    for n in 4..n_target {
        let v = current.order();
        let family = reduced_family(&difference_factorization(n), options.triple)?;
        let phi = match (&options.phi, &carried) {
            (PhiStrategy::Parity, Some((set, _))) => {
                parity_split_bijection(&current, set, &family)?
            }
            (PhiStrategy::Index, _) => PhiBijection::index_order(&family),
            (PhiStrategy::Parity, None) => unreachable!("parity chain always carries a set"),
        };
        let mut trace = double_plus_seven(&current, n, options.triple, &phi)?;

        if let Some((set, coloring)) = carried.take() {
            let class_of_set = coloring
                .color_of(set[0])
                .ok_or_else(|| Error::InvalidInput("carried set is uncolored".into()))?;
            let extended_set = extend_independent_set(&set, n, v);
            let extended_coloring = extend_bicoloring(&coloring, class_of_set, n, v)?;
            trace.carried_independent_set = Some(extended_set.clone());
            trace.carried_coloring = Some(extended_coloring.clone());
            carried = Some((extended_set, extended_coloring));
        }

        if options.verify {
            verify_level(&trace, n)?;
        }
        current = trace.result.clone();
        traces.push(trace);
    }
    Ok(traces)
}

fn verify_level(trace: &ConstructionTrace, n: u32) -> Result<()> {
    let fail = |subject: &str, report: &verify::VerificationReport| {
        Err(Error::VerificationFailed {
            subject: subject.to_string(),
            detail: report
                .violations
                .first()
                .map(|v| format!("{}: {}", v.rule, v.witness))
                .unwrap_or_else(|| "unknown violation".into()),
        })
    };
    let order = trace.result.order();

    let sts = verify::verify_sts(&trace.result);
    if !sts.passed() {
        return fail(&format!("order-{order} system"), &sts);
    }
    let step = verify::verify_construction_trace(trace);
    if !step.passed() {
        return fail(&format!("order-{order} step"), &step);
    }

    if let Some(set) = &trace.carried_independent_set {
        if set.len() != (order - 1) / 2 {
            return Err(Error::VerificationFailed {
                subject: format!("order-{order} independent set"),
                detail: format!("size {} instead of {}", set.len(), (order - 1) / 2),
            });
        }
        let maximal = verify::verify_maximal_independent(&trace.result, set)?;
        if !maximal.passed() {
            return fail(&format!("order-{order} independent set"), &maximal);
        }
    }
    if let Some(coloring) = &trace.carried_coloring {
        let bicoloring = verify::verify_bicoloring(&trace.result, coloring);
        if !bicoloring.passed() {
            return fail(&format!("order-{order} coloring"), &bicoloring);
        }
        let expected_classes = n as usize;
        if coloring.num_classes() != expected_classes {
            return Err(Error::VerificationFailed {
                subject: format!("order-{order} coloring"),
                detail: format!(
                    "{} classes instead of {expected_classes}",
                    coloring.num_classes()
                ),
            });
        }
        if let Some(set) = &trace.carried_independent_set {
            let class = coloring.class(coloring.color_of(set[0]).unwrap_or(usize::MAX));
            if &class != set {
                return Err(Error::VerificationFailed {
                    subject: format!("order-{order} coloring"),
                    detail: "the independent set's class does not equal the set".into(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::circle_method_factorization;
    use crate::verify::{
        verify_bicoloring, verify_construction_trace, verify_maximal_independent, verify_sts,
    };

    fn sts3() -> TripleSystem {
        TripleSystem::new(3, vec![[0, 1, 2]]).unwrap()
    }

    #[test]
    fn seed_matches_golden_fixture() {
        let seed = seed_sts9();
        assert_eq!(seed.system.order(), 9);
        assert_eq!(seed.system.num_blocks(), 12);
        assert!(seed.system.contains_block(&Block::new([0, 1, 2]).unwrap()));
        assert!(seed.system.contains_block(&Block::new([2, 4, 6]).unwrap()));
        assert!(verify_sts(&seed.system).passed());
        assert!(
            verify_maximal_independent(&seed.system, &seed.independent_set)
                .unwrap()
                .passed()
        );
        let coloring = verify_bicoloring(&seed.system, &seed.coloring);
        assert!(coloring.passed());
        assert_eq!(seed.coloring.num_classes(), 3);
        assert_eq!(seed.system.labels().get(&0).unwrap(), "x_1");
        assert_eq!(seed.system.labels().get(&8).unwrap(), "x_9");
    }

    #[test]
    fn double_plus_one_small_chain() {
        let sts7 = double_plus_one(
            &sts3(),
            &circle_method_factorization(4).unwrap(),
            &[0, 1, 2],
        )
        .unwrap();
        assert_eq!(sts7.order(), 7);
        assert_eq!(sts7.num_blocks(), 7);
        assert!(verify_sts(&sts7).passed());
        for block in sts3().blocks() {
            assert!(sts7.contains_block(block));
        }

        let sts15 = double_plus_one(
            &sts7,
            &circle_method_factorization(8).unwrap(),
            &[0, 1, 2, 3, 4, 5, 6],
        )
        .unwrap();
        assert_eq!(sts15.order(), 15);
        assert_eq!(sts15.num_blocks(), 35);
        assert!(verify_sts(&sts15).passed());
        for block in sts7.blocks() {
            assert!(sts15.contains_block(block));
        }
    }

    #[test]
    fn double_plus_one_rejects_mismatches() {
        let err = double_plus_one(
            &sts3(),
            &circle_method_factorization(6).unwrap(),
            &[0, 1, 2],
        )
        .unwrap_err();
        assert!(matches!(err, Error::SizeMismatch { .. }));

        let err = double_plus_one(
            &sts3(),
            &circle_method_factorization(4).unwrap(),
            &[0, 0, 2],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn delta_translates_shape() {
        let triple = DifferenceTriple::new(1, 2, 3);
        let delta = delta_translates(4, triple).unwrap();
        assert_eq!(delta.len(), 16);
        // translate i = 0 under the +9 relabeling
        assert_eq!(delta[0], Block::new([9, 10, 12]).unwrap());
        // the wrap-around pair {15,0} of difference 1 lies in exactly one translate
        let relabeled = (9 + 15, 9);
        let covering: Vec<&Block> = delta
            .iter()
            .filter(|b| b.contains(relabeled.0) && b.contains(relabeled.1))
            .collect();
        assert_eq!(covering.len(), 1);

        let small = delta_translates(3, triple).unwrap();
        assert_eq!(small.len(), 8);
        let mut pair_count = 0;
        for x in 0..8usize {
            for y in x + 1..8 {
                let d = ((y - x) % 8).min((x + 8 - y) % 8);
                let n = small
                    .iter()
                    .filter(|b| b.contains(1 + x) && b.contains(1 + y))
                    .count();
                if d <= 3 {
                    assert_eq!(n, 1, "pair {{{x},{y}}} difference {d}");
                    pair_count += 1;
                } else {
                    assert_eq!(n, 0, "pair {{{x},{y}}} difference {d}");
                }
            }
        }
        assert_eq!(pair_count, 24);
    }

    #[test]
    fn delta_translates_rejects_bad_triples() {
        assert!(matches!(
            delta_translates(4, DifferenceTriple::new(4, 8, 12)),
            Err(Error::InvalidTriple { .. })
        ));
    }

    #[test]
    fn parity_split_assignment_order() {
        let family =
            reduced_family(&difference_factorization(4), DifferenceTriple::new(1, 2, 3)).unwrap();
        let seed = seed_sts9();
        let phi = parity_split_bijection(&seed.system, &seed.independent_set, &family).unwrap();
        let tags: Vec<String> = phi.tags().iter().map(|t| t.to_string()).collect();
        // T = {0,1,3,4} takes the odd-difference factors in family order,
        // the complement takes H and the even-difference factors
        assert_eq!(
            tags,
            vec!["F5,1", "F5,2", "H", "F7,1", "F7,2", "G4,1", "G4,2", "G6,1", "G6,2"]
        );
        let odd_points: Vec<usize> = (0..9)
            .filter(|&p| phi.factor(p).difference().unwrap() % 2 == 1)
            .collect();
        assert_eq!(odd_points, seed.independent_set);
    }

    #[test]
    fn parity_split_counts() {
        // with {1,2,3} gone, n=4 leaves odd differences {5,7}: 4 factors = (9-1)/2
        let family =
            reduced_family(&difference_factorization(4), DifferenceTriple::new(1, 2, 3)).unwrap();
        let odd = family
            .iter()
            .filter(|f| f.difference().unwrap() % 2 == 1)
            .count();
        assert_eq!(odd, 4);

        // n=5 leaves {5,7,9,11,13,15}: 12 factors = (25-1)/2
        let family =
            reduced_family(&difference_factorization(5), DifferenceTriple::new(1, 2, 3)).unwrap();
        let odd = family
            .iter()
            .filter(|f| f.difference().unwrap() % 2 == 1)
            .count();
        assert_eq!(odd, 12);
    }

    #[test]
    fn parity_split_rejects_all_even_triples() {
        let family =
            reduced_family(&difference_factorization(4), DifferenceTriple::new(2, 4, 6)).unwrap();
        let seed = seed_sts9();
        let err =
            parity_split_bijection(&seed.system, &seed.independent_set, &family).unwrap_err();
        assert!(matches!(err, Error::CardinalityMismatch { .. }));
    }

    #[test]
    fn double_plus_seven_from_the_trivial_seed() {
        // order 1 -> order 9: the whole system comes from one factor and the translates
        let seed = TripleSystem::new(1, Vec::new()).unwrap();
        let family =
            reduced_family(&difference_factorization(3), DifferenceTriple::new(1, 2, 3)).unwrap();
        assert_eq!(family.len(), 1);
        let phi = PhiBijection::index_order(&family);
        let trace =
            double_plus_seven(&seed, 3, DifferenceTriple::new(1, 2, 3), &phi).unwrap();
        assert_eq!(trace.result.order(), 9);
        assert_eq!(trace.result.num_blocks(), 12);
        assert!(verify_sts(&trace.result).passed());
        assert!(verify_construction_trace(&trace).passed());
    }

    #[test]
    fn double_plus_seven_rejects_wrong_seed_order() {
        let bogus = TripleSystem::new(10, Vec::new()).unwrap();
        let family =
            reduced_family(&difference_factorization(4), DifferenceTriple::new(1, 2, 3)).unwrap();
        let phi = PhiBijection::index_order(&family);
        let err =
            double_plus_seven(&bogus, 4, DifferenceTriple::new(1, 2, 3), &phi).unwrap_err();
        assert_eq!(
            err,
            Error::SizeMismatch {
                what: "seed order",
                expected: 9,
                got: 10
            }
        );
    }

    #[test]
    fn double_plus_seven_rejects_invalid_seed() {
        // right order, but one block short of a triple system
        let blocks: Vec<[usize; 3]> = SEED_STS9_BLOCKS[1..].to_vec();
        let broken = TripleSystem::new(9, blocks).unwrap();
        let family =
            reduced_family(&difference_factorization(4), DifferenceTriple::new(1, 2, 3)).unwrap();
        let phi = PhiBijection::index_order(&family);
        let err =
            double_plus_seven(&broken, 4, DifferenceTriple::new(1, 2, 3), &phi).unwrap_err();
        assert!(matches!(err, Error::NotAnSts { .. }));
    }

    #[test]
    fn extend_independent_set_values() {
        let extended = extend_independent_set(&[0, 1, 3, 4], 4, 9);
        assert_eq!(
            extended,
            vec![0, 1, 3, 4, 9, 11, 13, 15, 17, 19, 21, 23]
        );
        assert_eq!(extended.len(), 12);

        let degenerate = extend_independent_set(&[], 3, 1);
        assert_eq!(degenerate, vec![1, 3, 5, 7]);
    }

    #[test]
    fn extension_size_identity() {
        // (v-1)/2 + 2^{n-1} = (v'-1)/2 along the whole range
        for n in 4..=10u32 {
            let v = (1usize << n) - 7;
            let vp = 2 * v + 7;
            assert_eq!((v - 1) / 2 + (1 << (n - 1)), (vp - 1) / 2);
        }
    }

    #[test]
    fn extend_bicoloring_values() {
        let seed = seed_sts9();
        let extended = extend_bicoloring(&seed.coloring, 0, 4, 9).unwrap();
        assert_eq!(extended.num_classes(), 4);
        let classes = extended.classes();
        assert_eq!(classes[0].len(), 12);
        assert_eq!(classes[1], vec![2, 5, 6, 7]);
        assert_eq!(classes[2], vec![8]);
        assert_eq!(
            classes[3],
            vec![10, 12, 14, 16, 18, 20, 22, 24]
        );

        let uncolored = Coloring::new(Vec::new()).unwrap();
        assert!(matches!(
            extend_bicoloring(&uncolored, 0, 4, 9),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            extend_bicoloring(&seed.coloring, 3, 4, 9),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn chain_to_order_25() {
        let traces = build_chain(5).unwrap();
        assert_eq!(traces.len(), 1);
        let trace = &traces[0];
        assert_eq!(trace.seed.order(), 9);
        assert_eq!(trace.result.order(), 25);
        assert_eq!(trace.result.num_blocks(), 100);
        assert_eq!(
            trace.carried_independent_set.as_ref().unwrap().len(),
            12
        );
        assert_eq!(trace.carried_coloring.as_ref().unwrap().num_classes(), 4);
    }

    #[test]
    fn chain_is_reproducible() {
        let a = build_chain(6).unwrap();
        let b = build_chain(6).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.result, y.result);
            assert_eq!(x.carried_independent_set, y.carried_independent_set);
            assert_eq!(
                x.carried_coloring.as_ref().map(|c| c.assignment().to_vec()),
                y.carried_coloring.as_ref().map(|c| c.assignment().to_vec())
            );
        }
    }

    #[test]
    fn chain_with_index_strategy_carries_nothing() {
        let options = ChainOptions {
            phi: PhiStrategy::Index,
            ..ChainOptions::default()
        };
        let traces = build_chain_with(5, &options).unwrap();
        assert_eq!(traces.len(), 1);
        assert!(traces[0].carried_independent_set.is_none());
        assert!(traces[0].carried_coloring.is_none());
        assert!(verify_sts(&traces[0].result).passed());
    }

    #[test]
    fn chain_rejects_low_target() {
        assert!(build_chain(3).is_err());
        assert_eq!(build_chain(4).unwrap().len(), 0);
    }

    #[test]
    fn phi_from_tags_validates() {
        let family =
            reduced_family(&difference_factorization(4), DifferenceTriple::new(1, 2, 3)).unwrap();
        let tags: Vec<FactorTag> = family.iter().map(|f| f.tag()).collect();
        let phi = PhiBijection::from_tags(&tags, &family).unwrap();
        assert_eq!(phi.len(), 9);

        let mut repeated = tags.clone();
        repeated[1] = repeated[0];
        assert!(PhiBijection::from_tags(&repeated, &family).is_err());
        assert!(PhiBijection::from_tags(&tags[..8], &family).is_err());
        let mut foreign = tags.clone();
        foreign[0] = FactorTag::Odd {
            difference: 1,
            part: crate::design::FactorPart::One,
        };
        assert!(PhiBijection::from_tags(&foreign, &family).is_err());
    }
}
