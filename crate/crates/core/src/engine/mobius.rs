//! Conversions between per-ray Lie coefficients and BPS multiplicities.
//!
//! All slices are indexed by the multiple `m` of the primitive ray vector,
//! with entry `m − 1` holding the value at `mγ₀`.

use crate::arith::{divisors, int, mobius, Field, Rational, VPoly, VRatFunc};

/// `A_m = −(1/m²) Σ_{d|m} d² Ω(dγ₀)`.
pub fn a_from_omega(omega: &[Rational]) -> Vec<Rational> {
    (1..=omega.len() as u64)
        .map(|m| {
            let s: Rational = divisors(m).iter().map(|&d| &omega[d as usize - 1] * int((d * d) as i64)).sum();
            -s / int((m * m) as i64)
        })
        .collect()
}

/// `Ω(mγ₀) = −(1/m²) Σ_{d|m} μ(m/d) d² A_d`, the Möbius inverse of [`a_from_omega`].
pub fn omega_from_a(a: &[Rational]) -> Vec<Rational> {
    (1..=a.len() as u64)
        .map(|m| {
            let s: Rational = divisors(m)
                .iter()
                .map(|&d| &a[d as usize - 1] * int(mobius(m / d) * (d * d) as i64))
                .sum();
            -s / int((m * m) as i64)
        })
        .collect()
}

/// Coefficient of `x^k` in `log 𝐄(x)`: `(−1)^k v^k / (k(1 − v^{2k}))`.
pub fn log_e_coeff(k: u64) -> VRatFunc {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let num = VPoly::monomial(k as i64, Rational::new(sign.into(), (k as i64).into()));
    let den = VPoly::one().sub(&VPoly::monomial(2 * k as i64, int(1)));
    VRatFunc::normalize(num, den).expect("nonzero denominator")
}

/// `a_q(n) = Σ_{m|n} Ω_q(m)·c_{n/m}` with `c_k` from [`log_e_coeff`].
pub fn a_q_from_omega_q(omega: &[VRatFunc]) -> Vec<VRatFunc> {
    (1..=omega.len() as u64)
        .map(|n| {
            let mut s = VRatFunc::zero();
            for m in divisors(n) {
                let w = &omega[m as usize - 1];
                if !w.is_zero() {
                    s = s.add(&w.mul(&log_e_coeff(n / m)));
                }
            }
            s
        })
        .collect()
}

/// Solves `a_q(n) = Σ_{m|n} Ω_q(m)·c_{n/m}` for `Ω_q`, triangularly in `n`.
pub fn omega_q_from_a(a: &[VRatFunc]) -> Vec<VRatFunc> {
    let c1_inv = log_e_coeff(1).finv().expect("c_1 is nonzero");
    let mut omega: Vec<VRatFunc> = Vec::with_capacity(a.len());
    for n in 1..=a.len() as u64 {
        let mut s = a[n as usize - 1].clone();
        for m in divisors(n) {
            if m < n && !omega[m as usize - 1].is_zero() {
                s = s.sub(&omega[m as usize - 1].mul(&log_e_coeff(n / m)));
            }
        }
        omega.push(s.mul(&c1_inv));
    }
    omega
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn single_bps_state() {
        let omega = vec![int(1), int(0), int(0), int(0)];
        let a = a_from_omega(&omega);
        assert_eq!(a, vec![int(-1), rat(-1, 4), rat(-1, 9), rat(-1, 16)]);
        assert_eq!(omega_from_a(&a), omega);
    }

    #[test]
    fn two_states_on_a_ray() {
        let a = a_from_omega(&[int(1), int(-2)]);
        assert_eq!(a, vec![int(-1), rat(7, 4)]);
        assert_eq!(omega_from_a(&a), vec![int(1), int(-2)]);
    }

    #[test]
    fn quantum_round_trip() {
        let omega = vec![VRatFunc::one(), VRatFunc::one(), VRatFunc::zero(), VRatFunc::monomial(1, int(2))];
        let a = a_q_from_omega_q(&omega);
        assert_eq!(omega_q_from_a(&a), omega);
        assert_eq!(omega_q_from_a(&[VRatFunc::zero(), VRatFunc::zero()]), vec![VRatFunc::zero(); 2]);
    }

    #[test]
    fn log_e_first_coefficient() {
        // v/(v² − 1)
        let expect = VRatFunc::normalize(VPoly::v(), VPoly::from_dense(0, vec![int(-1), int(0), int(1)])).unwrap();
        assert_eq!(log_e_coeff(1), expect);
    }
}
