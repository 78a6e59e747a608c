//! PPT and realignment tests for bipartite states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, singular_values, DensityMatrix};
use crate::relativity::{build_rho1, BoostParams};
use crate::scalar::Real;

/// At or above this the partial transpose counts as positive.
pub const PPT_TOL: f64 = 1e-10;
/// Below this the partial transpose counts as negative.
pub const NPT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PptStatus {
    Ppt,
    /// Minimum eigenvalue between `−NPT_TOL` and `−PPT_TOL`.
    Borderline,
    Npt,
}

impl PptStatus {
    pub fn from_min_eigenvalue(min: f64) -> Self {
        if min >= -PPT_TOL {
            PptStatus::Ppt
        } else if min < -NPT_TOL {
            PptStatus::Npt
        } else {
            PptStatus::Borderline
        }
    }
}

fn require_bipartite<T: Real>(rho: &DensityMatrix<T>) -> Result<()> {
    if rho.dims().len() != 2 {
        return Err(Error::BadSubsystem(format!(
            "bipartite state required, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// Smallest eigenvalue of `ρ^{T_B}`.
pub fn ppt_min_eigenvalue<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    require_bipartite(rho)?;
    let pt = rho.partial_transpose(1)?;
    Ok(hermitian_eigenvalues(&pt)?[0])
}

pub fn ppt_status<T: Real>(rho: &DensityMatrix<T>) -> Result<PptStatus> {
    Ok(PptStatus::from_min_eigenvalue(
        ppt_min_eigenvalue(rho)?.as_f64(),
    ))
}

/// `Σ σ_i(ρ̃)`, the trace norm of the realigned matrix.
pub fn realignment_sum<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    require_bipartite(rho)?;
    Ok(singular_values(&rho.realign()?).into_iter().sum())
}

/// `log₂ Σ σ_i(ρ̃)`; positive values certify entanglement.
pub fn rlgmt<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(realignment_sum(rho)?.log2())
}

/// Spin marginal of `ρ₁(x)` after the boost `b`.
pub fn boosted_rho1_spin<T: Real>(
    x: T,
    b: &BoostParams<T>,
    kinetic_energy: T,
) -> Result<DensityMatrix<T>> {
    Ok(build_rho1(x, kinetic_energy)?.boosted(b)?.spin_marginal())
}

/// `(x, RLGMT)` of the boosted spin marginal of `ρ₁(x)` over a grid.
pub fn realignment_curve<T: Real>(
    xs: &[T],
    b: &BoostParams<T>,
    kinetic_energy: T,
) -> Result<Vec<(T, T)>> {
    xs.iter()
        .map(|&x| Ok((x, rlgmt(&boosted_rho1_spin(x, b, kinetic_energy)?)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis_vector;
    use crate::qudit::{bell_state, rho_b};

    #[test]
    fn maximally_entangled_values() {
        let p00 = DensityMatrix::pure(&bell_state::<f64>(0, 0), vec![3, 3]).unwrap();
        assert!((ppt_min_eigenvalue(&p00).unwrap() + 1.0 / 3.0).abs() < 1e-12);
        assert!((rlgmt(&p00).unwrap() - 3f64.log2()).abs() < 1e-12);
        assert_eq!(ppt_status(&p00).unwrap(), PptStatus::Npt);
    }

    #[test]
    fn product_state_values() {
        let p = DensityMatrix::pure(&basis_vector::<f64>(9, 0), vec![3, 3]).unwrap();
        assert!(rlgmt(&p).unwrap().abs() < 1e-12);
        assert!(ppt_min_eigenvalue(&p).unwrap().abs() < 1e-12);
    }

    #[test]
    fn rho_b_regions() {
        assert!(ppt_min_eigenvalue(&rho_b(2.0f64 / 15.0).unwrap()).unwrap() >= -1e-10);
        assert!(ppt_min_eigenvalue(&rho_b(0.2f64).unwrap()).unwrap() < 0.0);
        assert!(rlgmt(&rho_b(2.0f64 / 15.0).unwrap()).unwrap() > 0.0);
    }

    #[test]
    fn status_thresholds() {
        assert_eq!(PptStatus::from_min_eigenvalue(0.0), PptStatus::Ppt);
        assert_eq!(PptStatus::from_min_eigenvalue(-1e-11), PptStatus::Ppt);
        assert_eq!(PptStatus::from_min_eigenvalue(-1e-9), PptStatus::Borderline);
        assert_eq!(PptStatus::from_min_eigenvalue(-1e-7), PptStatus::Npt);
    }

    #[test]
    fn bipartite_required() {
        let rho = DensityMatrix::<f64>::maximally_mixed(vec![2, 2, 3]);
        assert!(ppt_min_eigenvalue(&rho).is_err());
        assert!(rlgmt(&rho).is_err());
    }

    #[test]
    fn boosted_curve_dips_below_zero_at_small_x() {
        let b = BoostParams::along_z(1.0f64);
        let curve = realignment_curve(&[0.02, 0.3], &b, 1.0).unwrap();
        assert!(curve[0].1 < 0.0);
        assert!(curve[1].1 > 0.0);
    }
}
