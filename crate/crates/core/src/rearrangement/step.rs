use num_complex::Complex64;

use crate::{Error, Result};

/// One piece of a step function: a set of positive measure on which the
/// function is constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepCell {
    pub mass: f64,
    pub value: Complex64,
}

/// Finitely supported simple function, a dense subset of `L_log` in the
/// commutative case.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepFunction {
    cells: Vec<StepCell>,
}

fn check_mass(i: usize, mass: f64) -> Result<()> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::input(format!(
            "cell {i}: mass must be finite and positive, got {mass}"
        )));
    }
    Ok(())
}

impl StepFunction {
    pub fn new(cells: Vec<StepCell>) -> Result<Self> {
        for (i, c) in cells.iter().enumerate() {
            check_mass(i, c.mass)?;
            if !(c.value.re.is_finite() && c.value.im.is_finite()) {
                return Err(Error::input(format!("cell {i}: value must be finite")));
            }
        }
        Ok(StepFunction { cells })
    }

    /// Real-valued cells `(mass, value)`.
    pub fn from_real(cells: &[(f64, f64)]) -> Result<Self> {
        StepFunction::new(
            cells
                .iter()
                .map(|&(mass, v)| StepCell {
                    mass,
                    value: Complex64::new(v, 0.0),
                })
                .collect(),
        )
    }

    pub fn cells(&self) -> &[StepCell] {
        &self.cells
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|c| c.value == Complex64::new(0.0, 0.0))
    }

    pub fn total_mass(&self) -> f64 {
        crate::numeric::fsum(self.cells.iter().map(|c| c.mass))
    }

    /// The zero function on the same partition.
    pub fn zero_like(&self) -> StepFunction {
        self.map_values(|_| Complex64::new(0.0, 0.0))
    }

    pub fn scale(&self, alpha: Complex64) -> StepFunction {
        self.map_values(|v| alpha * v)
    }

    fn map_values(&self, f: impl Fn(Complex64) -> Complex64) -> StepFunction {
        StepFunction {
            cells: self
                .cells
                .iter()
                .map(|c| StepCell {
                    mass: c.mass,
                    value: f(c.value),
                })
                .collect(),
        }
    }

    /// Disjoint union: the cells of both functions side by side.
    pub fn disjoint_union(&self, other: &StepFunction) -> StepFunction {
        StepFunction {
            cells: self.cells.iter().chain(&other.cells).copied().collect(),
        }
    }

    fn zip_with(
        &self,
        other: &StepFunction,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<StepFunction> {
        let same = self.cells.len() == other.cells.len()
            && self.cells.iter().zip(&other.cells).all(|(a, b)| a.mass == b.mass);
        if !same {
            return Err(Error::input("operands are not defined on the same partition"));
        }
        Ok(StepFunction {
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(a, b)| StepCell {
                    mass: a.mass,
                    value: f(a.value, b.value),
                })
                .collect(),
        })
    }
}

/// Cellwise sum of two step functions on a common partition.
pub fn add_same_partition(f: &StepFunction, g: &StepFunction) -> Result<StepFunction> {
    f.zip_with(g, |a, b| a + b)
}

/// Cellwise product of two step functions on a common partition.
pub fn mul_same_partition(f: &StepFunction, g: &StepFunction) -> Result<StepFunction> {
    f.zip_with(g, |a, b| a * b)
}

/// Dense complex `n × n` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl SquareMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("matrix size must be at least 1"));
        }
        if data.len() != n * n {
            return Err(Error::input(format!(
                "expected {} entries for a {n}×{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::input("matrix entries must be finite"));
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = SquareMatrix::zeros(n);
        for (i, &d) in entries.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::input("matrix rows must all have length n"));
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        SquareMatrix::new(n, data)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == Complex64::new(0.0, 0.0)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCell {
    pub mass: f64,
    pub value: SquareMatrix,
}

/// Step function with values in `n × n` complex matrices, an element of
/// `L_log(X, μ) ⊗ B(H_n)` under the trace `μ ⊗ Tr`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixStepFunction {
    n: usize,
    cells: Vec<MatrixCell>,
}

impl MatrixStepFunction {
    pub fn new(n: usize, cells: Vec<MatrixCell>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("matrix size must be at least 1"));
        }
        for (i, c) in cells.iter().enumerate() {
            check_mass(i, c.mass)?;
            if c.value.size() != n {
                return Err(Error::input(format!(
                    "cell {i}: expected a {n}×{n} matrix, got {0}×{0}",
                    c.value.size()
                )));
            }
        }
        Ok(MatrixStepFunction { n, cells })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[MatrixCell] {
        &self.cells
    }
}
