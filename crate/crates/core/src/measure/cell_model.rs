use num_rational::BigRational;
use num_traits::Signed;

use super::closed_form::ClosedForm;
use crate::numeric::ln_rational;
use crate::{Error, Result};

/// A cell of positive mass carrying a constant Radon-Nikodym value `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub mass: BigRational,
    pub h: BigRational,
}

/// Closed-form description of the cells after the explicit prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellTail {
    pub mass: ClosedForm,
    pub h: ClosedForm,
}

/// Countable partition of a σ-finite measure space into cells of finite
/// positive mass, together with the density `h = dν/dμ` on each cell.
///
/// Cells are numbered from 1: first the prefix, then tail cell `m` at global
/// index `prefix.len() + m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellModel {
    prefix: Vec<Cell>,
    tail: Option<CellTail>,
}

impl CellModel {
    pub fn new(prefix: Vec<Cell>, tail: Option<CellTail>) -> Result<Self> {
        for (i, cell) in prefix.iter().enumerate() {
            if !cell.mass.is_positive() {
                return Err(Error::input(format!("cell {i}: mass must be positive")));
            }
            if !cell.h.is_positive() {
                return Err(Error::input(format!("cell {i}: h must be positive")));
            }
        }
        Ok(CellModel { prefix, tail })
    }

    pub fn prefix(&self) -> &[Cell] {
        &self.prefix
    }

    pub fn tail(&self) -> Option<&CellTail> {
        self.tail.as_ref()
    }

    pub fn prefix_len(&self) -> u64 {
        self.prefix.len() as u64
    }

    /// Number of cells, `None` when the model has a tail.
    pub fn len(&self) -> Option<usize> {
        match self.tail {
            Some(_) => None,
            None => Some(self.prefix.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// `ln μ(cell)` for a global cell index.
    pub fn ln_mass(&self, index: u64) -> Option<f64> {
        match self.locate(index)? {
            Located::Prefix(cell) => Some(ln_rational(&cell.mass)),
            Located::Tail(t, m) => Some(t.mass.ln_at(m)),
        }
    }

    /// `ln h(cell)` for a global cell index.
    pub fn ln_h(&self, index: u64) -> Option<f64> {
        match self.locate(index)? {
            Located::Prefix(cell) => Some(ln_rational(&cell.h)),
            Located::Tail(t, m) => Some(t.h.ln_at(m)),
        }
    }

    fn locate(&self, index: u64) -> Option<Located<'_>> {
        if index == 0 {
            return None;
        }
        let len = self.prefix_len();
        if index <= len {
            return Some(Located::Prefix(&self.prefix[(index - 1) as usize]));
        }
        self.tail.as_ref().map(|t| Located::Tail(t, index - len))
    }

    /// Same cells with `h` replaced by `1/h`.
    pub fn inverted(&self) -> CellModel {
        CellModel {
            prefix: self
                .prefix
                .iter()
                .map(|c| Cell {
                    mass: c.mass.clone(),
                    h: c.h.recip(),
                })
                .collect(),
            tail: self.tail.as_ref().map(|t| CellTail {
                mass: t.mass.clone(),
                h: t.h.reciprocal(),
            }),
        }
    }
}

enum Located<'a> {
    Prefix(&'a Cell),
    Tail(&'a CellTail, u64),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    #[test]
    fn rejects_non_positive_cells() {
        let bad = Cell {
            mass: ratio(0, 1),
            h: ratio(1, 1),
        };
        assert!(CellModel::new(vec![bad], None).is_err());
        let bad_h = Cell {
            mass: ratio(1, 1),
            h: ratio(-1, 1),
        };
        assert!(CellModel::new(vec![bad_h], None).is_err());
    }

    #[test]
    fn indexes_prefix_then_tail() {
        let model = CellModel::new(
            vec![Cell {
                mass: ratio(1, 2),
                h: ratio(3, 1),
            }],
            Some(CellTail {
                mass: ClosedForm::from_ratios((1, 1), (0, 1), (1, 2)).unwrap(),
                h: ClosedForm::from_ratios((1, 1), (1, 1), (1, 1)).unwrap(),
            }),
        )
        .unwrap();
        assert!((model.ln_h(1).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!((model.ln_h(3).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((model.ln_mass(3).unwrap() + 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!(model.ln_h(0).is_none());
        let inv = model.inverted();
        assert!((inv.ln_h(3).unwrap() + 2f64.ln()).abs() < 1e-15);
    }
}
