use super::HopfError;

/// `ψ(r) = exp(1 − 1/r²)`, `ψ(0) = 0`: increasing, infinitely flat at 0, `ψ(1) = 1`.
pub fn psi(r: f64) -> Result<f64, HopfError> {
    check_radius(r)?;
    Ok(psi_unchecked(r))
}

/// `ψ'(r) = 2 ψ(r) / r³`.
pub fn psi_derivative(r: f64) -> Result<f64, HopfError> {
    check_radius(r)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * psi_unchecked(r) / (r * r * r))
}

/// `ln ψ(r) = 1 − 1/r²`, `−∞` at 0; finite where `ψ` itself underflows.
pub fn ln_psi(r: f64) -> Result<f64, HopfError> {
    check_radius(r)?;
    if r == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(1.0 - 1.0 / (r * r))
}

pub(crate) fn psi_unchecked(r: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else {
        (1.0 - 1.0 / (r * r)).exp()
    }
}

fn check_radius(r: f64) -> Result<(), HopfError> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(HopfError::PsiDomain(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_values() {
        assert_eq!(psi(0.0).unwrap(), 0.0);
        assert_eq!(psi(1.0).unwrap(), 1.0);
        assert!((psi(0.5).unwrap() - (-3.0f64).exp()).abs() < 1e-16);
        assert!((psi(0.5).unwrap() - 0.049787).abs() < 1e-6);
    }

    #[test]
    fn flat_at_zero() {
        let q = (psi(1e-3).unwrap() - psi(0.0).unwrap()) / 1e-3;
        assert!(q < 1e-8);
        for k in 1..=6 {
            let h = 10f64.powi(-k) * 0.3;
            assert!(psi(h).unwrap() / h < 1e-8);
        }
    }

    #[test]
    fn strictly_increasing_and_derivative_matches() {
        let mut prev = 0.0;
        for i in 1..=1000 {
            let r = i as f64 / 1000.0;
            let v = psi(r).unwrap();
            assert!(v > prev || v == 0.0 && r < 0.04);
            prev = v;
        }
        for r in [0.2, 0.5, 0.9] {
            let h = 1e-6;
            let fd = (psi(r + h).unwrap() - psi(r - h).unwrap()) / (2.0 * h);
            assert!((fd - psi_derivative(r).unwrap()).abs() < 1e-6 * fd.abs().max(1.0));
        }
    }

    #[test]
    fn domain_errors() {
        assert_eq!(psi(-0.1), Err(HopfError::PsiDomain(-0.1)));
        assert_eq!(psi(1.5), Err(HopfError::PsiDomain(1.5)));
        assert!(psi(f64::NAN).is_err());
    }
}
