//! 1-factorizations of complete graphs.
//!
//! The difference method splits the edges of `K_m` on `Z_m`, `m = 2^n`, by
//! circular difference: each odd difference `a` yields two factors `F_{a,1}`,
//! `F_{a,2}` along the single cycle stepping by `a`; each even difference
//! `a != m/2` yields `G_{a,1}`, `G_{a,2}` along `gcd(a,m)` shorter cycles;
//! the difference `m/2` yields the unique factor `H`. Together they form a
//! 1-factorization with `m-1` factors, one pair family per difference.
//!
//! The round-robin ("circle") method covers general even orders and backs
//! the plain doubling construction.

use crate::design::{DifferenceTriple, Factor, FactorPart, FactorTag, Factorization};
use crate::error::{Error, Result};

/// The two disjoint factors carrying all pairs of odd difference `a` in
/// `Z_2^n`: alternate edges of the cycle `(0, a, 2a, ...)`.
pub fn odd_difference_factors(n: u32, a: usize) -> Result<(Factor, Factor)> {
    let m = 1usize << n;
    if a % 2 == 0 || a == 0 || a > m / 2 {
        return Err(Error::BadDifference { a, n });
    }
    let half = m / 2;
    let mut first = Vec::with_capacity(half);
    let mut second = Vec::with_capacity(half);
    for j in 0..half {
        first.push(((2 * j * a) % m, ((2 * j + 1) * a) % m));
        second.push((((2 * j + 1) * a) % m, ((2 * j + 2) * a) % m));
    }
    let tag = |part| FactorTag::Odd {
        difference: a,
        part,
    };
    Ok((
        Factor::new(m, tag(FactorPart::One), first)?,
        Factor::new(m, tag(FactorPart::Two), second)?,
    ))
}

/// The two disjoint factors carrying all pairs of even difference
/// `a != 2^{n-1}`: alternate edges of the `gcd(a, 2^n)` cycles that stepping
/// by `a` decomposes `Z_2^n` into, one start offset per cycle.
pub fn even_difference_factors(n: u32, a: usize) -> Result<(Factor, Factor)> {
    let m = 1usize << n;
    if a % 2 != 0 || a == 0 || a >= m / 2 {
        return Err(Error::BadDifference { a, n });
    }
    let k = gcd(a, m);
    let cycle_len = m / k;
    let pairs_per_cycle = cycle_len / 2;
    let mut first = Vec::with_capacity(m / 2);
    let mut second = Vec::with_capacity(m / 2);
    for i in 0..k {
        for j in 0..pairs_per_cycle {
            first.push(((2 * j * a + i) % m, ((2 * j + 1) * a + i) % m));
            second.push((((2 * j + 1) * a + i) % m, ((2 * j + 2) * a + i) % m));
        }
    }
    let tag = |part| FactorTag::Even {
        difference: a,
        part,
    };
    Ok((
        Factor::new(m, tag(FactorPart::One), first)?,
        Factor::new(m, tag(FactorPart::Two), second)?,
    ))
}

/// The unique factor of difference `2^{n-1}`: `{i, i + 2^{n-1}}`.
pub fn half_factor(n: u32) -> Factor {
    let m = 1usize << n;
    let half = m / 2;
    let pairs = (0..half).map(|i| (i, i + half)).collect();
    Factor::new(m, FactorTag::Half, pairs).expect("half-distance pairs form a matching")
}

/// The full difference factorization of `Z_2^n`: `H` first, then both
/// factors of each difference `1..2^{n-1}-1` in ascending order, part 1
/// before part 2. `2^n - 1` factors in total.
pub fn difference_factorization(n: u32) -> Factorization {
    let m = 1usize << n;
    let mut factors = Vec::with_capacity(m - 1);
    factors.push(half_factor(n));
    for a in 1..m / 2 {
        let (f1, f2) = if a % 2 == 1 {
            odd_difference_factors(n, a).expect("odd difference in range")
        } else {
            even_difference_factors(n, a).expect("even difference in range")
        };
        factors.push(f1);
        factors.push(f2);
    }
    Factorization::new(m, factors).expect("difference factors share the order")
}

/// Drops from a difference factorization the six factors whose differences
/// lie in the given triple, leaving the reduced family of `2^n - 7` factors
/// in the inherited order.
pub fn reduced_family(fact: &Factorization, triple: DifferenceTriple) -> Result<Vec<Factor>> {
    let m = fact.m();
    if !m.is_power_of_two() || m < 4 {
        return Err(Error::InvalidInput(format!(
            "reduced family needs a difference factorization on a power-of-two order, got {m}"
        )));
    }
    let n = m.trailing_zeros();
    triple.validate_for(n)?;
    let mut kept = Vec::with_capacity(m - 7);
    for factor in fact.factors() {
        match factor.difference() {
            Some(d) if triple.contains(d) => {}
            Some(_) => kept.push(factor.clone()),
            None => {
                return Err(Error::InvalidInput(
                    "reduced family needs difference-tagged factors".into(),
                ))
            }
        }
    }
    if kept.len() != m - 7 {
        return Err(Error::SizeMismatch {
            what: "reduced family size",
            expected: m - 7,
            got: kept.len(),
        });
    }
    Ok(kept)
}

/// The classical round-robin 1-factorization of `K_m` for any even `m`:
/// round `r` pairs the fixed vertex `m-1` with `r` and folds the remaining
/// vertices around `r` modulo `m-1`.
pub fn circle_method_factorization(m: usize) -> Result<Factorization> {
    if m == 0 || m % 2 != 0 {
        return Err(Error::OddOrder { m });
    }
    let rounds = m - 1;
    let mut factors = Vec::with_capacity(rounds);
    for r in 0..rounds {
        let mut pairs = Vec::with_capacity(m / 2);
        pairs.push((m - 1, r));
        for j in 1..m / 2 {
            pairs.push(((r + j) % rounds, (r + rounds - j) % rounds));
        }
        factors.push(Factor::new(m, FactorTag::Round { index: r }, pairs)?);
    }
    Factorization::new(m, factors)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(factor: &Factor) -> Vec<(usize, usize)> {
        factor.pairs().to_vec()
    }

    fn canonical(raw: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = raw.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn odd_factors_difference_five() {
        let (f1, f2) = odd_difference_factors(4, 5).unwrap();
        let expected_f1 = [
            (0, 5),
            (10, 15),
            (4, 9),
            (14, 3),
            (8, 13),
            (2, 7),
            (12, 1),
            (6, 11),
        ];
        let expected_f2 = [
            (5, 10),
            (15, 4),
            (9, 14),
            (3, 8),
            (13, 2),
            (7, 12),
            (1, 6),
            (11, 0),
        ];
        assert_eq!(pairs(&f1), canonical(&expected_f1));
        assert_eq!(pairs(&f2), canonical(&expected_f2));
    }

    #[test]
    fn odd_factors_difference_seven() {
        let (f1, f2) = odd_difference_factors(4, 7).unwrap();
        let expected_f1 = [
            (0, 7),
            (14, 5),
            (12, 3),
            (10, 1),
            (8, 15),
            (6, 13),
            (4, 11),
            (2, 9),
        ];
        let expected_f2 = [
            (7, 14),
            (5, 12),
            (3, 10),
            (1, 8),
            (15, 6),
            (13, 4),
            (11, 2),
            (9, 0),
        ];
        assert_eq!(pairs(&f1), canonical(&expected_f1));
        assert_eq!(pairs(&f2), canonical(&expected_f2));
    }

    #[test]
    fn odd_factors_smallest_group() {
        let (f1, f2) = odd_difference_factors(2, 1).unwrap();
        assert_eq!(pairs(&f1), vec![(0, 1), (2, 3)]);
        assert_eq!(pairs(&f2), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn odd_factors_reject_bad_difference() {
        assert!(odd_difference_factors(4, 4).is_err());
        assert!(odd_difference_factors(4, 0).is_err());
        assert!(odd_difference_factors(4, 9).is_err());
    }

    #[test]
    fn even_factors_difference_four() {
        let (g1, g2) = even_difference_factors(4, 4).unwrap();
        let expected_g1 = [
            (0, 4),
            (8, 12),
            (1, 5),
            (9, 13),
            (2, 6),
            (10, 14),
            (3, 7),
            (11, 15),
        ];
        let expected_g2 = [
            (4, 8),
            (12, 0),
            (5, 9),
            (13, 1),
            (6, 10),
            (14, 2),
            (7, 11),
            (15, 3),
        ];
        assert_eq!(pairs(&g1), canonical(&expected_g1));
        assert_eq!(pairs(&g2), canonical(&expected_g2));
    }

    #[test]
    fn even_factors_difference_six() {
        let (g1, g2) = even_difference_factors(4, 6).unwrap();
        let expected_g1 = [
            (0, 6),
            (12, 2),
            (8, 14),
            (4, 10),
            (1, 7),
            (13, 3),
            (9, 15),
            (5, 11),
        ];
        let expected_g2 = [
            (6, 12),
            (2, 8),
            (14, 4),
            (10, 0),
            (7, 13),
            (3, 9),
            (15, 5),
            (11, 1),
        ];
        assert_eq!(pairs(&g1), canonical(&expected_g1));
        assert_eq!(pairs(&g2), canonical(&expected_g2));
    }

    #[test]
    fn even_factors_reject_bad_difference() {
        assert!(even_difference_factors(4, 5).is_err());
        assert!(even_difference_factors(4, 8).is_err(), "half distance is H's");
        assert!(even_difference_factors(4, 0).is_err());
        assert!(even_difference_factors(3, 4).is_err());
    }

    #[test]
    fn half_factor_values() {
        assert_eq!(
            pairs(&half_factor(4)),
            vec![
                (0, 8),
                (1, 9),
                (2, 10),
                (3, 11),
                (4, 12),
                (5, 13),
                (6, 14),
                (7, 15)
            ]
        );
        assert_eq!(pairs(&half_factor(1)), vec![(0, 1)]);
        assert_eq!(pairs(&half_factor(3)), vec![(0, 4), (1, 5), (2, 6), (3, 7)]);
    }

    #[test]
    fn difference_factorization_shape() {
        let f = difference_factorization(4);
        assert_eq!(f.m(), 16);
        assert_eq!(f.factors().len(), 15);
        assert!(f.factors().iter().all(|f| f.pairs().len() == 8));
        assert_eq!(f.factors()[0].tag(), FactorTag::Half);

        let f3 = difference_factorization(3);
        assert_eq!(f3.factors().len(), 7);
    }

    #[test]
    fn difference_factorization_k4_is_the_unique_one() {
        let f = difference_factorization(2);
        let sets: Vec<Vec<(usize, usize)>> = f.factors().iter().map(pairs).collect();
        assert!(sets.contains(&vec![(0, 1), (2, 3)]));
        assert!(sets.contains(&vec![(0, 3), (1, 2)]));
        assert!(sets.contains(&vec![(0, 2), (1, 3)]));
        assert_eq!(sets.len(), 3);
    }

    #[test]
    fn reduced_family_excludes_six_factors() {
        let f = difference_factorization(4);
        let fstar = reduced_family(&f, DifferenceTriple::new(1, 2, 3)).unwrap();
        assert_eq!(fstar.len(), 9);
        let tags: Vec<String> = fstar.iter().map(|f| f.tag().to_string()).collect();
        assert_eq!(
            tags,
            vec!["H", "G4,1", "G4,2", "F5,1", "F5,2", "G6,1", "G6,2", "F7,1", "F7,2"]
        );

        let f5 = difference_factorization(5);
        assert_eq!(
            reduced_family(&f5, DifferenceTriple::new(1, 2, 3))
                .unwrap()
                .len(),
            25
        );
    }

    #[test]
    fn reduced_family_triple_validation() {
        let f = difference_factorization(4);
        // all-even triples are admissible here; only the split refuses them
        assert!(reduced_family(&f, DifferenceTriple::new(2, 4, 6)).is_ok());
        let err = reduced_family(&f, DifferenceTriple::new(4, 8, 12)).unwrap_err();
        assert!(matches!(err, Error::InvalidTriple { .. }));
    }

    #[test]
    fn circle_method_small_orders() {
        let f = circle_method_factorization(4).unwrap();
        let sets: Vec<Vec<(usize, usize)>> = f.factors().iter().map(pairs).collect();
        assert_eq!(
            sets,
            vec![
                vec![(0, 3), (1, 2)],
                vec![(0, 2), (1, 3)],
                vec![(0, 1), (2, 3)]
            ]
        );

        let f2 = circle_method_factorization(2).unwrap();
        assert_eq!(f2.factors().len(), 1);
        assert_eq!(pairs(&f2.factors()[0]), vec![(0, 1)]);

        assert!(matches!(
            circle_method_factorization(5),
            Err(Error::OddOrder { m: 5 })
        ));
    }

    #[test]
    fn parity_law() {
        // odd differences straddle parities, even differences preserve them
        for n in 2..=8 {
            let fact = difference_factorization(n);
            for factor in fact.factors() {
                let d = factor.difference().unwrap();
                for &(x, y) in factor.pairs() {
                    if d % 2 == 1 {
                        assert_ne!(x % 2, y % 2, "n={n} d={d} pair {{{x},{y}}}");
                    } else {
                        assert_eq!(x % 2, y % 2, "n={n} d={d} pair {{{x},{y}}}");
                    }
                }
            }
        }
    }

    #[test]
    fn difference_purity_and_coverage() {
        for n in 2..=8u32 {
            let m = 1usize << n;
            let fact = difference_factorization(n);
            let mut per_difference = vec![0usize; m / 2 + 1];
            for factor in fact.factors() {
                let d = factor.difference().unwrap();
                for &(x, y) in factor.pairs() {
                    let circ = ((y + m - x) % m).min((x + m - y) % m);
                    assert_eq!(circ, d, "n={n} tag={} pair {{{x},{y}}}", factor.tag());
                }
                per_difference[d] += factor.pairs().len();
            }
            for d in 1..m / 2 {
                assert_eq!(per_difference[d], m, "difference {d} at n={n}");
            }
            assert_eq!(per_difference[m / 2], m / 2, "half difference at n={n}");
        }
    }
}
