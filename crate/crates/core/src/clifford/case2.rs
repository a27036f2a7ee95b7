use super::{combine, CliffordCoeffs, Variant};
use crate::tensalg::{c64, pauli, ComplexMatrix, C64};

/// Case 2 with `A = Z`, `B = X + iY` (so `B² = 0`).
///
/// Coefficients are `a·e^{iθ_a}, b·e^{iθ_b}, c·e^{iθ_c}, d·e^{iθ_d}` on the
/// words `BBA, BAB, ABB, AAA` (variant `AAA_BBA`) or `AAB, ABA, BAA, BBB`
/// (variant `BBB_AAB`); `d` always multiplies the word without `B` in
/// `AAA_BBA` and `BBB` in `BBB_AAB`.
pub fn case2_tetra(a: f64, b: f64, c: f64, d: f64, phases: [f64; 4], variant: Variant) -> ComplexMatrix {
    let alpha = [
        C64::from_polar(d, phases[3]),
        C64::from_polar(a, phases[0]),
        C64::from_polar(b, phases[1]),
        C64::from_polar(c, phases[2]),
    ];
    let raising = pauli::x() + pauli::y().scale(c64(0., 1.));
    combine(&CliffordCoeffs::new(alpha, variant), &pauli::z(), &raising)
}

/// Smallest `n ≤ 8` with `‖Rⁿ‖ ≤ 1e-12·max(1, ‖R‖)ⁿ`, if any.
pub fn nilpotency_check(r: &ComplexMatrix) -> Option<u32> {
    if !r.is_square() {
        return None;
    }
    let scale = r.frobenius().max(1.0);
    let mut power = r.clone();
    for n in 1..=8u32 {
        if power.frobenius() <= 1e-12 * scale.powi(n as i32) {
            return Some(n);
        }
        power = &power * r;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensalg::pauli::z;
    use crate::unitary::certify;

    #[test]
    fn nilpotent_variant() {
        let r = case2_tetra(0.3, -1.2, 0.7, 2.0, [0.1, 0.2, 0.3, 0.4], Variant::BbbAab);
        assert_eq!(nilpotency_check(&r), Some(4));
        let r = case2_tetra(0.0, -1.2, 0.7, 2.0, [0.1, 0.2, 0.3, 0.4], Variant::BbbAab);
        assert!(nilpotency_check(&r).unwrap() <= 3);
    }

    #[test]
    fn pure_aaa_term_is_unitary() {
        let r = case2_tetra(0., 0., 0., 1., [0.; 4], Variant::AaaBba);
        assert_eq!(r, z().kron(&z()).kron(&z()));
        assert!(certify(&r, 1e-12).unwrap().is_unitary);
        assert_eq!(nilpotency_check(&r), None);
    }

    #[test]
    fn nonzero_nilpotent_part_breaks_unitarity() {
        let r = case2_tetra(0.3, 0., 0., 1., [0.; 4], Variant::AaaBba);
        let rr = &r.dagger() * &r;
        let dev = rr.eigenvalues().unwrap().iter().map(|e| (e - 1.0).norm()).fold(0.0, f64::max);
        assert!(dev > 1e-3);
    }
}
