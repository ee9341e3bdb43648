//! Isomorphism of log-algebras described by passports.
//!
//! A commutative log-algebra is determined up to `*`-isomorphism by the two
//! weight lines of its passport together with the measure sequence up to
//! bounded ratios. Algebras of the form `⊕ L_∞(X_i) ⊗ B(H_{n_i})` are
//! described block by block; two of them are isomorphic when the blocks can
//! be matched with equal matrix sizes and isomorphic centers.

use std::fmt;

use crate::measure::{merge_passports, ratio_bounded, Passport, ValidationReport};
use crate::{Error, Result};

/// Largest number of blocks accepted by [`decide_direct_sum`].
pub const MAX_BLOCKS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Matrix size of the `B(H_n)` factor.
    pub n: usize,
    pub center: Passport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    blocks: Vec<Block>,
}

impl AlgebraDescriptor {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        let descriptor = AlgebraDescriptor { blocks };
        let report = descriptor.validate();
        match report.violations.first() {
            None => Ok(descriptor),
            Some(v) => Err(Error::Input(format!("{}: {}", v.path, v.message))),
        }
    }

    pub fn single(n: usize, center: Passport) -> Result<Self> {
        Self::new(vec![Block { n, center }])
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Violations with paths of the form `/blocks/<i>/...`.
    pub fn validate(&self) -> ValidationReport {
        Self::validate_blocks(&self.blocks)
    }

    /// Checks a block list before a descriptor is built from it.
    pub fn validate_blocks(blocks: &[Block]) -> ValidationReport {
        let mut report = ValidationReport::default();
        if blocks.is_empty() {
            report.push("/blocks", "at least one block is required");
        }
        for (i, block) in blocks.iter().enumerate() {
            if block.n == 0 {
                report.push(format!("/blocks/{i}/n"), "matrix size must be positive");
            }
            let nested = block.center.validate().nest(&format!("/blocks/{i}/center"));
            report.violations.extend(nested.violations);
        }
        report
    }

    fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(|b| b.n).collect();
        sizes.sort_unstable();
        sizes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Line {
    S,
    U,
}

/// Ratio of the two measure sequences that fails to stay bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioDirection {
    /// `μ_n / ν_n`, first passport over second.
    MuOverNu,
    /// `ν_n / μ_n`, second passport over first.
    NuOverMu,
}

impl RatioDirection {
    pub fn as_str(self) -> &'static str {
        match self {
            RatioDirection::MuOverNu => "mu/nu",
            RatioDirection::NuOverMu => "nu/mu",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    LineMismatch {
        line: Line,
    },
    RatioUnbounded {
        direction: RatioDirection,
        witness: Option<u64>,
    },
    NoBlockMatching {
        detail: String,
    },
    SizeMismatch {
        left: Vec<usize>,
        right: Vec<usize>,
    },
}

impl Obstruction {
    pub fn label(&self) -> &'static str {
        match self {
            Obstruction::LineMismatch { .. } => "line mismatch",
            Obstruction::RatioUnbounded { .. } => "ratio unbounded",
            Obstruction::NoBlockMatching { .. } => "no block matching",
            Obstruction::SizeMismatch { .. } => "size mismatch",
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::LineMismatch { line: Line::S } => f.write_str("sLine mismatch"),
            Obstruction::LineMismatch { line: Line::U } => f.write_str("uLine mismatch"),
            Obstruction::RatioUnbounded { direction, witness } => {
                write!(f, "ratio unbounded: {}", direction.as_str())?;
                if let Some(n) = witness {
                    write!(f, " exceeds 1e6 at n = {n}")?;
                }
                Ok(())
            }
            Obstruction::NoBlockMatching { detail } => write!(f, "no block matching: {detail}"),
            Obstruction::SizeMismatch { left, right } => {
                write!(f, "size mismatch: {left:?} vs {right:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// Pairs `(block of a, block of b)`, ordered by the first index.
    pub matching: Option<Vec<(usize, usize)>>,
    pub obstruction: Option<Obstruction>,
    /// The matched pair the obstruction was found on, for block-level
    /// decisions.
    pub failed_pair: Option<(usize, usize)>,
}

impl IsoVerdict {
    fn yes(matching: Vec<(usize, usize)>) -> Self {
        IsoVerdict {
            isomorphic: true,
            matching: Some(matching),
            obstruction: None,
            failed_pair: None,
        }
    }

    fn no(obstruction: Obstruction) -> Self {
        IsoVerdict {
            isomorphic: false,
            matching: None,
            obstruction: Some(obstruction),
            failed_pair: None,
        }
    }
}

fn require_valid(p: &Passport, which: &str) -> Result<()> {
    match p.validate().violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::Input(format!("{which}{}: {}", v.path, v.message))),
    }
}

/// Decides isomorphism of the commutative log-algebras with passports `x`
/// and `y`. The obstruction names the first failing condition, checked in
/// the order sLine, uLine, `μ/ν`, `ν/μ`.
pub fn decide_commutative(x: &Passport, y: &Passport) -> Result<IsoVerdict> {
    require_valid(x, "first passport")?;
    require_valid(y, "second passport")?;
    if !x.s_line.same_sequence(&y.s_line) {
        return Ok(IsoVerdict::no(Obstruction::LineMismatch { line: Line::S }));
    }
    if !x.u_line.same_sequence(&y.u_line) {
        return Ok(IsoVerdict::no(Obstruction::LineMismatch { line: Line::U }));
    }
    for (direction, num, den) in [(RatioDirection::MuOverNu, x, y), (RatioDirection::NuOverMu, y, x)] {
        let decision = ratio_bounded(&num.u_measures, &den.u_measures)?;
        if !decision.bounded {
            return Ok(IsoVerdict::no(Obstruction::RatioUnbounded {
                direction,
                witness: decision.witness_index,
            }));
        }
    }
    Ok(IsoVerdict::yes(vec![(0, 0)]))
}

/// Single-block case: equal matrix sizes and isomorphic centers.
pub fn decide_type_in(a: &AlgebraDescriptor, b: &AlgebraDescriptor) -> Result<IsoVerdict> {
    let (Some(x), Some(y)) = (only_block(a), only_block(b)) else {
        return Err(Error::input(
            "decide_type_in takes single-block descriptors; use decide_direct_sum",
        ));
    };
    if x.n != y.n {
        return Ok(IsoVerdict::no(Obstruction::SizeMismatch {
            left: vec![x.n],
            right: vec![y.n],
        }));
    }
    decide_commutative(&x.center, &y.center)
}

fn only_block(d: &AlgebraDescriptor) -> Option<&Block> {
    match d.blocks.as_slice() {
        [block] => Some(block),
        _ => None,
    }
}

/// Searches for a bijection between blocks of equal size with isomorphic
/// centers and returns the lexicographically first one.
pub fn decide_direct_sum(a: &AlgebraDescriptor, b: &AlgebraDescriptor) -> Result<IsoVerdict> {
    let (ka, kb) = (a.blocks.len(), b.blocks.len());
    if ka > MAX_BLOCKS || kb > MAX_BLOCKS {
        return Err(Error::input(format!(
            "at most {MAX_BLOCKS} blocks are supported, got {ka} and {kb}"
        )));
    }
    if ka != kb {
        return Ok(IsoVerdict::no(Obstruction::NoBlockMatching {
            detail: format!("block counts differ: {ka} vs {kb}"),
        }));
    }
    let (sa, sb) = (a.sizes(), b.sizes());
    if sa != sb {
        return Ok(IsoVerdict::no(Obstruction::SizeMismatch { left: sa, right: sb }));
    }

    let mut pair_verdicts: Vec<Vec<Option<IsoVerdict>>> = vec![vec![None; kb]; ka];
    for (i, x) in a.blocks.iter().enumerate() {
        for (j, y) in b.blocks.iter().enumerate() {
            if x.n == y.n {
                pair_verdicts[i][j] = Some(decide_commutative(&x.center, &y.center)?);
            }
        }
    }
    let compatible: Vec<Vec<bool>> = pair_verdicts
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.as_ref().is_some_and(|v| v.isomorphic))
                .collect()
        })
        .collect();

    if let Some(sigma) = first_matching(&compatible) {
        return Ok(IsoVerdict::yes(sigma.into_iter().enumerate().collect()));
    }

    // With pairwise distinct sizes the matching by size is the only
    // candidate, so its first failing pair explains the verdict.
    let forced = sa.windows(2).all(|w| w[0] != w[1]);
    if forced {
        for (i, row) in pair_verdicts.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if let Some(v) = v.as_ref().filter(|v| !v.isomorphic) {
                    let mut verdict = v.clone();
                    verdict.failed_pair = Some((i, j));
                    return Ok(verdict);
                }
            }
        }
    }
    Ok(IsoVerdict::no(Obstruction::NoBlockMatching {
        detail: "no size-preserving bijection has isomorphic centers on every pair".into(),
    }))
}

fn first_matching(compatible: &[Vec<bool>]) -> Option<Vec<usize>> {
    fn extend(compatible: &[Vec<bool>], used: usize, sigma: &mut Vec<usize>, dead: &mut [bool]) -> bool {
        let i = sigma.len();
        if i == compatible.len() {
            return true;
        }
        if dead[used] {
            return false;
        }
        for j in 0..compatible.len() {
            if used & (1 << j) == 0 && compatible[i][j] {
                sigma.push(j);
                if extend(compatible, used | (1 << j), sigma, dead) {
                    return true;
                }
                sigma.pop();
            }
        }
        dead[used] = true;
        false
    }
    let mut sigma = Vec::with_capacity(compatible.len());
    let mut dead = vec![false; 1 << compatible.len()];
    extend(compatible, 0, &mut sigma, &mut dead).then_some(sigma)
}

/// Compares the centers: all block passports of each side are merged and
/// the merged passports compared as commutative algebras.
pub fn decide_center(a: &AlgebraDescriptor, b: &AlgebraDescriptor) -> Result<IsoVerdict> {
    let centers =
        |d: &AlgebraDescriptor| -> Vec<Passport> { d.blocks.iter().map(|b| b.center.clone()).collect() };
    let x = merge_passports(&centers(a))?;
    let y = merge_passports(&centers(b))?;
    decide_commutative(&x, &y)
}

/// Whether a center-level matching of blocks extends to the whole algebra:
/// every matched pair must have the same matrix size.
pub fn extension_exists(
    matching: &[(usize, usize)],
    a: &AlgebraDescriptor,
    b: &AlgebraDescriptor,
) -> Result<bool> {
    let (ka, kb) = (a.blocks.len(), b.blocks.len());
    let mut seen_a = vec![false; ka];
    let mut seen_b = vec![false; kb];
    for &(i, j) in matching {
        if i >= ka || j >= kb {
            return Err(Error::input(format!("pair ({i}, {j}) is out of range")));
        }
        if std::mem::replace(&mut seen_a[i], true) || std::mem::replace(&mut seen_b[j], true) {
            return Err(Error::input(format!("pair ({i}, {j}) reuses a block")));
        }
    }
    if ka != kb || matching.len() != ka {
        return Err(Error::input("matching must pair every block exactly once"));
    }
    Ok(matching.iter().all(|&(i, j)| a.blocks[i].n == b.blocks[j].n))
}
