//! Zero-density estimates `N(sigma, T) <= C1 T^{8(1-sigma)/3} log^{5-2sigma} T + C2 log^2 T`
//! driven by a table of `(sigma, C1, C2)` values, plus bounds for the sum of
//! reciprocal ordinates of zeros.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::extnum::ExtReal;

/// Height up to which every non-trivial zero is known to lie on the critical line.
pub const RIEMANN_HEIGHT: f64 = 3_000_175_332_800.0;

/// `log H` for the Riemann height.
pub fn log_riemann_height() -> f64 {
    RIEMANN_HEIGHT.ln()
}

const EMBEDDED_TABLE: &str = include_str!("../data/density_table.csv");

/// Grid points are matched exactly up to this tolerance.
const GRID_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub sigma: f64,
    pub d: f64,
    pub alpha: f64,
    pub delta: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
}

#[derive(Clone, Debug)]
pub struct DensityTable {
    rows: Vec<DensityRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityCoeffs {
    pub c1: f64,
    pub c2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct N0Value {
    pub bound: ExtReal,
    /// The height is at or below `H`, where `N(sigma, T) = 0` and the formula
    /// value is only an (unused) overestimate.
    pub below_riemann_height: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RecipSumBounds {
    pub lower: f64,
    pub upper: f64,
}

impl DensityTable {
    /// The table bundled with the crate.
    pub fn embedded() -> Self {
        Self::from_csv_str(EMBEDDED_TABLE).expect("bundled density table is valid")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Table(format!("cannot read {}: {e}", path.display())))?;
        Self::from_csv_str(&text)
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| Error::Table(e.to_string()))?
            .clone();
        let expected = ["sigma", "d", "alpha", "delta", "C1", "C2"];
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(Error::Table(format!(
                "header must be {}, got {}",
                expected.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let rows = reader
            .deserialize()
            .enumerate()
            .map(|(i, r)| r.map_err(|e| Error::Table(format!("row {}: {e}", i + 1))))
            .collect::<Result<Vec<DensityRow>>>()?;
        Self::from_rows(rows)
    }

    /// Validates ordering and the monotonicity the interpolation rule relies on.
    pub fn from_rows(rows: Vec<DensityRow>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Table("need at least two rows".into()));
        }
        for r in &rows {
            if !(r.sigma > 0.5 && r.sigma <= 1.0) {
                return Err(Error::Table(format!("sigma {} outside (1/2, 1]", r.sigma)));
            }
            if !(r.c1 > 0.0 && r.c2 > 0.0) || !r.c1.is_finite() || !r.c2.is_finite() {
                return Err(Error::Table(format!(
                    "row sigma={}: coefficients must be positive",
                    r.sigma
                )));
            }
        }
        for w in rows.windows(2) {
            if !(w[1].sigma > w[0].sigma) {
                return Err(Error::Table(format!(
                    "sigma not strictly ascending at {}",
                    w[1].sigma
                )));
            }
            if w[1].c1 < w[0].c1 {
                return Err(Error::Table(format!("C1 decreases at sigma={}", w[1].sigma)));
            }
            if w[1].c2 > w[0].c2 {
                return Err(Error::Table(format!("C2 increases at sigma={}", w[1].sigma)));
            }
        }
        Ok(DensityTable { rows })
    }

    pub fn rows(&self) -> &[DensityRow] {
        &self.rows
    }

    pub fn sigma_min(&self) -> f64 {
        self.rows[0].sigma
    }

    pub fn sigma_max(&self) -> f64 {
        self.rows[self.rows.len() - 1].sigma
    }

    /// Grid sigmas, ascending.
    pub fn sigmas(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.sigma).collect()
    }

    /// Coefficients valid at `sigma`: a grid row if `sigma` is on the grid,
    /// otherwise `C1` from the next row above and `C2` from the next row below.
    pub fn density_coeffs(&self, sigma: f64) -> Result<DensityCoeffs> {
        if !(sigma >= self.sigma_min() - GRID_TOL && sigma <= self.sigma_max() + GRID_TOL) {
            return Err(domain(format!(
                "sigma {sigma} outside table range [{}, {}]",
                self.sigma_min(),
                self.sigma_max()
            )));
        }
        if let Some(r) = self.rows.iter().find(|r| (r.sigma - sigma).abs() <= GRID_TOL) {
            return Ok(DensityCoeffs { c1: r.c1, c2: r.c2 });
        }
        let above = self.rows.partition_point(|r| r.sigma < sigma);
        Ok(DensityCoeffs {
            c1: self.rows[above].c1,
            c2: self.rows[above - 1].c2,
        })
    }

    /// Zero-density bound at height `exp(log_t)` using this table's coefficients.
    pub fn n0(&self, sigma: f64, log_t: f64) -> Result<N0Value> {
        let c = self.density_coeffs(sigma)?;
        n0_with(c, sigma, log_t)
    }
}

impl Default for DensityTable {
    fn default() -> Self {
        Self::embedded()
    }
}

/// `C1 T^{8(1-sigma)/3} log^{5-2sigma} T + C2 log^2 T` at `T = exp(log_t)`, in log domain.
pub fn n0_with(c: DensityCoeffs, sigma: f64, log_t: f64) -> Result<N0Value> {
    if !(log_t > 0.0) || !log_t.is_finite() {
        return Err(domain(format!("N0 needs log T > 0, got {log_t}")));
    }
    let ll = log_t.ln();
    let first = ExtReal::exp_of(c.c1.ln() + 8.0 * (1.0 - sigma) * log_t / 3.0 + (5.0 - 2.0 * sigma) * ll);
    let second = ExtReal::exp_of(c.c2.ln() + 2.0 * ll);
    Ok(N0Value {
        bound: first + second,
        below_riemann_height: log_t <= log_riemann_height(),
    })
}

/// Bounds for `sum_{0 < gamma <= T} 1/gamma`, valid for `T >= 4 pi e`.
pub fn recip_sum_bounds(log_t: f64) -> Result<RecipSumBounds> {
    let min = (4.0 * PI * std::f64::consts::E).ln();
    if !(log_t >= min - 1e-12) {
        return Err(domain(format!("reciprocal sum bound needs log T >= {min:.6}")));
    }
    let upper = (log_t - (2.0 * PI).ln()).powi(2) / (4.0 * PI);
    Ok(RecipSumBounds {
        lower: upper - 0.9321,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_table_shape() {
        let t = DensityTable::embedded();
        assert_eq!(t.rows().len(), 21);
        assert_eq!(t.sigma_min(), 0.98);
        assert_eq!(t.sigma_max(), 1.0);
    }

    #[test]
    fn coefficient_lookup() {
        let t = DensityTable::embedded();
        assert_eq!(t.density_coeffs(0.990).unwrap(), DensityCoeffs { c1: 16.848, c2: 2.150 });
        assert_eq!(t.density_coeffs(0.9855).unwrap(), DensityCoeffs { c1: 16.621, c2: 2.191 });
        assert_eq!(t.density_coeffs(0.9999932).unwrap(), DensityCoeffs { c1: 17.418, c2: 2.077 });
        assert!(matches!(t.density_coeffs(0.97), Err(Error::Domain(_))));
        assert!(t.density_coeffs(1.0001).is_err());
    }

    #[test]
    fn n0_at_riemann_height() {
        let t = DensityTable::embedded();
        let lh = log_riemann_height();
        let v = t.n0(0.99, lh).unwrap();
        let oracle = 16.848 * (0.01 * 8.0 / 3.0 * lh).exp() * lh.powf(3.02) + 2.150 * lh * lh;
        assert!((v.bound.to_real() - oracle).abs() / oracle < 1e-13);
        assert!(v.below_riemann_height);
        assert!(!t.n0(0.99, lh + 1.0).unwrap().below_riemann_height);
    }

    #[test]
    fn recip_sum() {
        let b = recip_sum_bounds((4.0 * PI * std::f64::consts::E).ln()).unwrap();
        assert!((b.upper - 0.228_128_5).abs() < 1e-6);
        assert!((b.upper - b.lower - 0.9321).abs() < 1e-15);
        let h = recip_sum_bounds(log_riemann_height()).unwrap();
        assert!((h.upper - 57.548).abs() < 0.01);
        assert!(recip_sum_bounds(1.0).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        let bad_header = "s,d,alpha,delta,C1,C2\n0.98,0,0,0,1,2\n0.99,0,0,0,2,1\n";
        assert!(matches!(DensityTable::from_csv_str(bad_header), Err(Error::Table(_))));
        let non_monotone = "sigma,d,alpha,delta,C1,C2\n0.98,0,0,0,2,2\n0.99,0,0,0,1,1\n";
        assert!(matches!(DensityTable::from_csv_str(non_monotone), Err(Error::Table(_))));
        let malformed = "sigma,d,alpha,delta,C1,C2\n0.98,0,0,0,x,2\n";
        assert!(matches!(DensityTable::from_csv_str(malformed), Err(Error::Table(_))));
    }
}
