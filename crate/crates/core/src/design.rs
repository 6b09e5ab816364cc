//! Domain types: triple systems, 1-factors, factorizations, difference
//! triples, and vertex colorings.
//!
//! All points are 0-based integers. Symbolic vertex sets are flattened into
//! one index space: a point `x_i` of a seed system becomes `i-1`, and a
//! residue `r` of the auxiliary cyclic group becomes `v + r` (see
//! [`relabel_union`]). Optional labels keep the original names around for
//! debugging and fixture comparison.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A block: three distinct points stored in strictly increasing order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block([usize; 3]);

impl Block {
    /// Sorts the given points and rejects repeated ones.
    pub fn new(points: [usize; 3]) -> Result<Self> {
        let mut p = points;
        p.sort_unstable();
        if p[0] == p[1] || p[1] == p[2] {
            return Err(Error::InvalidBlock { points });
        }
        Ok(Block(p))
    }

    pub fn points(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.contains(&p)
    }

    /// The three unordered pairs inside the block, each sorted.
    pub fn pairs(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    pub fn max_point(&self) -> usize {
        self.0[2]
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Block count `v(v-1)/6` of a valid triple system of order `v`, or `None`
/// when that is not an integer.
pub fn sts_block_count(order: usize) -> Option<usize> {
    let twice = order * order.saturating_sub(1);
    if twice % 6 == 0 {
        Some(twice / 6)
    } else {
        None
    }
}

/// A triple system on points `{0..order-1}` with a canonical block list:
/// points sorted inside each block, blocks sorted lexicographically, no
/// duplicates. Construction *is* canonicalization; an instance never holds a
/// non-canonical list.
///
/// Whether the system is an actual Steiner triple system (every pair covered
/// exactly once) is a separate property checked by the verification module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    order: usize,
    blocks: Vec<Block>,
    labels: BTreeMap<usize, String>,
}

impl TripleSystem {
    /// Canonicalizes raw triples: sorts points within each triple, sorts the
    /// block list, and rejects out-of-range points and duplicate blocks.
    pub fn new(order: usize, raw: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let mut blocks = Vec::new();
        for triple in raw {
            let block = Block::new(triple)?;
            if block.max_point() >= order {
                return Err(Error::OutOfRange {
                    point: block.max_point(),
                    order,
                });
            }
            blocks.push(block);
        }
        sort_blocks(&mut blocks);
        for w in blocks.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateBlock {
                    block: w[0].points(),
                });
            }
        }
        Ok(TripleSystem {
            order,
            blocks,
            labels: BTreeMap::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn contains_block(&self, block: &Block) -> bool {
        self.blocks.binary_search(block).is_ok()
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    /// Attaches provenance labels ("x_3", "y=7", ...). Keys must be points.
    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some((&point, _)) = labels.iter().find(|(&p, _)| p >= self.order) {
            return Err(Error::OutOfRange {
                point,
                order: self.order,
            });
        }
        self.labels = labels;
        Ok(self)
    }
}

#[cfg(feature = "parallel")]
fn sort_blocks(blocks: &mut [Block]) {
    use rayon::prelude::*;
    blocks.par_sort_unstable();
}

#[cfg(not(feature = "parallel"))]
fn sort_blocks(blocks: &mut [Block]) {
    blocks.sort_unstable();
}

/// Which half of the alternating split along a cycle a factor takes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FactorPart {
    One,
    Two,
}

impl FactorPart {
    fn as_u8(self) -> u8 {
        match self {
            FactorPart::One => 1,
            FactorPart::Two => 2,
        }
    }
}

/// Identity of a 1-factor: the difference family it came from, or its round
/// index for the round-robin construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FactorTag {
    /// One of the two factors carrying all pairs of an odd difference.
    Odd { difference: usize, part: FactorPart },
    /// One of the two factors carrying all pairs of an even difference
    /// (other than half the order).
    Even { difference: usize, part: FactorPart },
    /// The unique factor of difference `m/2`.
    Half,
    /// A round of the round-robin factorization.
    Round { index: usize },
}

impl fmt::Display for FactorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorTag::Odd { difference, part } => write!(f, "F{},{}", difference, part.as_u8()),
            FactorTag::Even { difference, part } => write!(f, "G{},{}", difference, part.as_u8()),
            FactorTag::Half => write!(f, "H"),
            FactorTag::Round { index } => write!(f, "R{index}"),
        }
    }
}

impl FactorTag {
    /// Parses the display form: `H`, `F<a>,<p>`, `G<a>,<p>`, `R<i>`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid factor tag {s:?}"));
        if s == "H" {
            return Ok(FactorTag::Half);
        }
        let (kind, rest) = s.split_at(s.len().min(1));
        match kind {
            "R" => {
                let index = rest.parse().map_err(|_| bad())?;
                Ok(FactorTag::Round { index })
            }
            "F" | "G" => {
                let (a, p) = rest.split_once(',').ok_or_else(bad)?;
                let difference: usize = a.parse().map_err(|_| bad())?;
                let part = match p {
                    "1" => FactorPart::One,
                    "2" => FactorPart::Two,
                    _ => return Err(bad()),
                };
                if kind == "F" {
                    Ok(FactorTag::Odd { difference, part })
                } else {
                    Ok(FactorTag::Even { difference, part })
                }
            }
            _ => Err(bad()),
        }
    }
}

/// A perfect matching on the vertex set `{0..m-1}` of a complete graph,
/// stored as sorted pairs in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    m: usize,
    tag: FactorTag,
    pairs: Vec<(usize, usize)>,
}

impl Factor {
    /// Canonicalizes the pair list and checks that it partitions the vertex
    /// set exactly.
    pub fn new(m: usize, tag: FactorTag, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if m == 0 || m % 2 != 0 {
            return Err(Error::OddOrder { m });
        }
        if pairs.len() != m / 2 {
            return Err(Error::SizeMismatch {
                what: "factor pair count",
                expected: m / 2,
                got: pairs.len(),
            });
        }
        let mut seen = vec![false; m];
        let mut canonical = Vec::with_capacity(pairs.len());
        for (x, y) in pairs {
            if x >= m || y >= m {
                return Err(Error::OutOfRange {
                    point: x.max(y),
                    order: m,
                });
            }
            if x == y || seen[x] || seen[y] {
                return Err(Error::InvalidInput(format!(
                    "pair {{{x},{y}}} does not extend a matching on {m} vertices"
                )));
            }
            seen[x] = true;
            seen[y] = true;
            canonical.push((x.min(y), x.max(y)));
        }
        canonical.sort_unstable();
        Ok(Factor {
            m,
            tag,
            pairs: canonical,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn tag(&self) -> FactorTag {
        self.tag
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The circular difference all pairs of this factor share, if it came
    /// from the difference method.
    pub fn difference(&self) -> Option<usize> {
        match self.tag {
            FactorTag::Odd { difference, .. } | FactorTag::Even { difference, .. } => {
                Some(difference)
            }
            FactorTag::Half => Some(self.m / 2),
            FactorTag::Round { .. } => None,
        }
    }

    /// The vertex matched with `v`.
    pub fn partner_of(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(x, y)| {
            if x == v {
                Some(y)
            } else if y == v {
                Some(x)
            } else {
                None
            }
        })
    }
}

/// An ordered family of factors on a common vertex set. Whether the family
/// is a genuine 1-factorization (pairwise edge-disjoint, covering all of
/// `K_m`) is checked by the verification module, so that broken families can
/// be represented and reported on.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    m: usize,
    factors: Vec<Factor>,
}

impl Factorization {
    pub fn new(m: usize, factors: Vec<Factor>) -> Result<Self> {
        if m == 0 || m % 2 != 0 {
            return Err(Error::OddOrder { m });
        }
        for f in &factors {
            if f.m() != m {
                return Err(Error::SizeMismatch {
                    what: "factor vertex count",
                    expected: m,
                    got: f.m(),
                });
            }
        }
        Ok(Factorization { m, factors })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor_by_tag(&self, tag: FactorTag) -> Option<&Factor> {
        self.factors.iter().find(|f| f.tag() == tag)
    }
}

/// A difference triple `{a,b,c}` over `D_m = {1..m/2}` with either
/// `c = a+b` or `a+b+c = m`, all three distinct and none equal to `m/2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DifferenceTriple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl DifferenceTriple {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        DifferenceTriple { a, b, c }
    }

    pub fn members(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(&self, d: usize) -> bool {
        self.a == d || self.b == d || self.c == d
    }

    /// Checks the triple against the group `Z_2^n`.
    pub fn validate_for(&self, n: u32) -> Result<()> {
        let m = 1usize << n;
        let half = m / 2;
        let [a, b, c] = self.members();
        let err = Err(Error::InvalidTriple { a, b, c, n });
        let in_range = |d: usize| d >= 1 && d <= half;
        if !in_range(a) || !in_range(b) || !in_range(c) {
            return err;
        }
        if a == b || b == c || a == c {
            return err;
        }
        if a == half || b == half || c == half {
            return err;
        }
        if c != a + b && a + b + c != m {
            return err;
        }
        Ok(())
    }
}

impl fmt::Display for DifferenceTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.a, self.b, self.c)
    }
}

/// A total assignment of points to dense 0-based color ids. Every color id
/// below the class count occurs at least once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    assignment: Vec<usize>,
    num_classes: usize,
}

impl Coloring {
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let num_classes = assignment.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut used = vec![false; num_classes];
        for &c in &assignment {
            used[c] = true;
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidInput(format!(
                "color ids are not dense: class {missing} is empty"
            )));
        }
        Ok(Coloring {
            assignment,
            num_classes,
        })
    }

    /// Builds the assignment from explicit classes, which must partition
    /// `{0..order-1}`.
    pub fn from_classes(classes: &[Vec<usize>], order: usize) -> Result<Self> {
        let mut assignment = vec![usize::MAX; order];
        for (id, class) in classes.iter().enumerate() {
            for &p in class {
                if p >= order {
                    return Err(Error::OutOfRange { point: p, order });
                }
                if assignment[p] != usize::MAX {
                    return Err(Error::InvalidInput(format!("point {p} colored twice")));
                }
                assignment[p] = id;
            }
        }
        if let Some(p) = assignment.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidInput(format!("point {p} is uncolored")));
        }
        Coloring::new(assignment)
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn color_of(&self, point: usize) -> Option<usize> {
        self.assignment.get(point).copied()
    }

    pub fn num_points(&self) -> usize {
        self.assignment.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// The color classes, each as a sorted point list.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_classes];
        for (p, &c) in self.assignment.iter().enumerate() {
            classes[c].push(p);
        }
        classes
    }

    pub fn class(&self, id: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == id)
            .map(|(p, _)| p)
            .collect()
    }
}

/// Side of the relabeled union a point belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Original point of `X`, carrying its old index.
    X(usize),
    /// Residue of `Y`.
    Y(usize),
}

/// The flat renaming of a disjoint union `X ∪ Y`: `X` keeps its indices,
/// residue `r` of `Y` becomes `x_size + r`.
#[derive(Clone, Copy, Debug)]
pub struct UnionRelabeling {
    x_size: usize,
    y_size: usize,
}

/// Builds the renaming for `|X| = x_size` and `Y = Z_{y_size}`.
pub fn relabel_union(x_size: usize, y_size: usize) -> UnionRelabeling {
    UnionRelabeling { x_size, y_size }
}

impl UnionRelabeling {
    pub fn x_point(&self, i: usize) -> usize {
        debug_assert!(i < self.x_size);
        i
    }

    pub fn y_point(&self, r: usize) -> usize {
        debug_assert!(r < self.y_size);
        self.x_size + r
    }

    pub fn total(&self) -> usize {
        self.x_size + self.y_size
    }

    pub fn side(&self, point: usize) -> Result<Side> {
        if point < self.x_size {
            Ok(Side::X(point))
        } else if point < self.total() {
            Ok(Side::Y(point - self.x_size))
        } else {
            Err(Error::OutOfRange {
                point,
                order: self.total(),
            })
        }
    }
}
