//! The data `(e, σ, h, n)` fixing one quotient algebra.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residues live in `Z/eZ`; `e` is small so a byte suffices.
pub type Residue = u8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraParams {
    pub e: usize,
    pub sigma: Vec<i64>,
    pub h: Vec<usize>,
    pub n: usize,
}

impl AlgebraParams {
    /// Checked constructor.
    pub fn new(e: usize, sigma: Vec<i64>, h: Vec<usize>, n: usize) -> Result<Self> {
        let p = AlgebraParams { e, sigma, h, n };
        p.validate()?;
        Ok(p)
    }

    /// Level-one shorthand with `σ = (0)`.
    pub fn level_one(e: usize, h: usize, n: usize) -> Result<Self> {
        Self::new(e, vec![0], vec![h], n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.e < 3 {
            return Err(Error::InvalidParams(format!("e = {} must be at least 3", self.e)));
        }
        if self.e > 200 {
            return Err(Error::InvalidParams("e too large".into()));
        }
        if self.sigma.is_empty() {
            return Err(Error::InvalidParams("sigma must be nonempty".into()));
        }
        if self.sigma.len() != self.h.len() {
            return Err(Error::InvalidParams(format!(
                "sigma has {} entries but h has {}",
                self.sigma.len(),
                self.h.len()
            )));
        }
        if self.sigma.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParams("sigma must be weakly increasing".into()));
        }
        if self.h.contains(&0) {
            return Err(Error::InvalidParams("h entries must be positive".into()));
        }
        let l = self.ell();
        for m in 0..l - 1 {
            if self.h[m] as i64 > self.sigma[m + 1] - self.sigma[m] {
                return Err(Error::InvalidParams(format!(
                    "h_{m} = {} exceeds sigma_{} - sigma_{m}",
                    self.h[m],
                    m + 1
                )));
            }
        }
        if self.h[l - 1] as i64 >= self.e as i64 + self.sigma[0] - self.sigma[l - 1] {
            return Err(Error::InvalidParams(format!(
                "h_{} must be below e + sigma_0 - sigma_{}",
                l - 1,
                l - 1
            )));
        }
        Ok(())
    }

    /// The level ℓ.
    pub fn ell(&self) -> usize {
        self.sigma.len()
    }

    /// h = h_0 + … + h_{ℓ-1}.
    pub fn total_h(&self) -> usize {
        self.h.iter().sum()
    }

    pub fn with_n(&self, n: usize) -> Self {
        AlgebraParams { n, ..self.clone() }
    }

    pub fn residue(&self, x: i64) -> Residue {
        x.rem_euclid(self.e as i64) as Residue
    }

    /// Number of charges congruent to `r`, the exponent in the cyclotomic relation.
    pub fn charge_count(&self, r: Residue) -> usize {
        self.sigma.iter().filter(|&&s| self.residue(s) == r).count()
    }

    /// Whether the geometric setup applies (e > h).
    pub fn geometric(&self) -> bool {
        self.e > self.total_h()
    }
}
