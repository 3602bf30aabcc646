use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridRange {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        let r = GridRange { min, max, count };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::domain("grid bounds must be finite"));
        }
        if self.min >= self.max {
            return Err(Error::domain("grid min must be below max"));
        }
        if self.count < 2 {
            return Err(Error::domain("grid count must be at least 2"));
        }
        Ok(())
    }

    pub fn value(&self, k: usize) -> f64 {
        self.min + (self.max - self.min) * k as f64 / (self.count - 1) as f64
    }
}

/// One range per sampled real coordinate, or a single range applied to all.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub axes: Vec<GridRange>,
}

impl Default for GridSpec {
    /// [−2, 2] with 9 points on every axis.
    fn default() -> Self {
        GridSpec::uniform(GridRange {
            min: -2.0,
            max: 2.0,
            count: 9,
        })
    }
}

impl GridSpec {
    pub fn uniform(range: GridRange) -> Self {
        GridSpec { axes: vec![range] }
    }

    /// Concrete per-axis ranges for a scan over `dims` coordinates.
    pub(crate) fn resolve(&self, dims: usize) -> Result<Vec<GridRange>> {
        for a in &self.axes {
            a.validate()?;
        }
        match self.axes.len() {
            1 => Ok(vec![self.axes[0]; dims]),
            n if n == dims => Ok(self.axes.clone()),
            n => Err(Error::domain(format!(
                "grid has {n} axes but the scan samples {dims} coordinates"
            ))),
        }
    }
}

/// Row-major enumeration: the first axis is the most significant digit, so
/// linear order is lexicographic order of grid indices.
pub(crate) fn point(axes: &[GridRange], mut index: usize) -> Vec<f64> {
    let mut out = vec![0.0; axes.len()];
    for (k, a) in axes.iter().enumerate().rev() {
        out[k] = a.value(index % a.count);
        index /= a.count;
    }
    out
}

pub(crate) fn size(axes: &[GridRange]) -> Result<usize> {
    axes.iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.count))
        .ok_or_else(|| Error::domain("grid too large"))
}
