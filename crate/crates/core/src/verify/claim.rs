//! Exact check of the divisibility claim behind the Ree subfield argument:
//! with m = 3^u, d = 3m² ± 3m + 1, s = 2uv + u + v and k = 3^s, d divides one
//! of M1 = 3k²+3k+1, M2 = 3k²+1, M3 = 3k²-3k+1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{Mode, PropositionReport, Recorder, Scalar, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

fn pow3(e: u64) -> BigInt {
    BigInt::from(3u8).pow(e as u32)
}

fn is_multiple(x: &BigInt, d: &BigInt) -> bool {
    (x % d).is_zero()
}

/// One `(u, v, sign)` instance with all derived quantities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimInstance {
    pub u: u64,
    pub v: u64,
    pub sign: Sign,
    pub m: BigInt,
    pub s: u64,
    pub k: BigInt,
    pub d: BigInt,
    pub m1: BigInt,
    pub m2: BigInt,
    pub m3: BigInt,
}

impl ClaimInstance {
    pub fn new(u: u64, v: u64, sign: Sign) -> Self {
        let m = pow3(u);
        let three_m2 = BigInt::from(3u8) * &m * &m;
        let three_m = BigInt::from(3u8) * &m;
        let d = match sign {
            Sign::Plus => &three_m2 + &three_m + 1,
            Sign::Minus => &three_m2 - &three_m + 1,
        };
        let s = 2 * u * v + u + v;
        let k = pow3(s);
        let three_k2 = BigInt::from(3u8) * &k * &k;
        let three_k = BigInt::from(3u8) * &k;
        ClaimInstance {
            u,
            v,
            sign,
            m,
            s,
            m1: &three_k2 + &three_k + 1,
            m2: &three_k2 + 1,
            m3: &three_k2 - &three_k + 1,
            k,
            d,
        }
    }

    /// Which of M1, M2, M3 the divisor divides.
    pub fn divides(&self) -> [bool; 3] {
        [
            is_multiple(&self.m1, &self.d),
            is_multiple(&self.m2, &self.d),
            is_multiple(&self.m3, &self.d),
        ]
    }

    pub fn holds(&self) -> bool {
        self.divides().iter().any(|&b| b)
    }

    fn row(&self) -> BTreeMap<String, Scalar> {
        let [a, b, c] = self.divides();
        BTreeMap::from([
            ("u".to_string(), self.u.into()),
            ("v".to_string(), self.v.into()),
            ("sign".to_string(), self.sign.symbol().into()),
            ("s".to_string(), self.s.into()),
            ("d".to_string(), self.d.clone().into()),
            ("d_divides_m1".to_string(), a.into()),
            ("d_divides_m2".to_string(), b.into()),
            ("d_divides_m3".to_string(), c.into()),
        ])
    }
}

/// The exact identities used in the inductive proof, for one `(u, v)`.
/// Returns the names of those that fail.
pub fn identity_failures(u: u64, v: u64) -> Vec<&'static str> {
    let mut failed = Vec::new();
    let d = ClaimInstance::new(u, 0, Sign::Plus).d;
    let m2_1 = pow3(6 * u + 3) + 1;

    // d^+ = 3^(2u+1) + 3^(u+1) + 1 and the factorisation of 3^(6u+3) + 1
    if d != pow3(2 * u + 1) + pow3(u + 1) + 1 {
        failed.push("d_plus_power_form");
    }
    let cof1 = pow3(4 * u + 2) - pow3(3 * u + 2) + pow3(2 * u + 2) - pow3(2 * u + 1) - pow3(u + 1)
        + 1;
    if &d * cof1 != m2_1 {
        failed.push("m2_1_factorisation");
    }
    if ClaimInstance::new(u, 1, Sign::Plus).m2 != m2_1 {
        failed.push("m2_1_closed_form");
    }
    for sign in Sign::BOTH {
        if !is_multiple(&m2_1, &ClaimInstance::new(u, 0, sign).d) {
            failed.push("d_divides_m2_1");
        }
    }
    // v = 2: the factorisation giving d | M3(2)
    let m3_2 = pow3(10 * u + 5) - pow3(5 * u + 3) + 1;
    let cof2 = pow3(8 * u + 4) - pow3(7 * u + 4) + pow3(6 * u + 4) - pow3(6 * u + 3) - pow3(5 * u + 3);
    if &d * cof2 != &m3_2 - &m2_1 {
        failed.push("m3_2_factorisation");
    }
    if ClaimInstance::new(u, 2, Sign::Plus).m3 != m3_2 {
        failed.push("m3_2_closed_form");
    }

    // the step v -> v + 3
    let a = ClaimInstance::new(u, v, Sign::Plus);
    let b = ClaimInstance::new(u, v + 3, Sign::Plus);
    let diff = &b.m2 - &a.m2;
    let e = 4 * u * v + 2 * u + 2 * v + 1;
    if diff != (pow3(4 * u * v + 14 * u + 2 * v + 7) + 1) - (pow3(e) + 1) {
        failed.push("m2_step_exponents");
    }
    if diff != pow3(e) * (pow3(6 * u + 3) + 1) * (pow3(6 * u + 3) - 1) {
        failed.push("m2_step_factorisation");
    }
    for sign in Sign::BOTH {
        if !is_multiple(&diff, &ClaimInstance::new(u, 0, sign).d) {
            failed.push("d_divides_m2_step");
        }
    }
    let shift = pow3(2 * u * v + u + v + 1) * &m2_1;
    if &b.m1 - &a.m3 != &diff + &shift {
        failed.push("m1_step_identity");
    }
    if &b.m3 - &a.m1 != &diff - &shift {
        failed.push("m3_step_identity");
    }
    failed
}

/// Checks every `(u, v, sign)` with `u <= u_max`, `v <= v_max`, and replays
/// the proof identities for each `(u, v)`.
pub fn verify_vigh_claim(u_max: u64, v_max: u64) -> PropositionReport {
    let mut rec = Recorder::new("claim", None, None, Mode::Exhaustive);
    rec.count("range", format!("u{u_max}_v{v_max}"));
    let mut instances = 0u64;
    let mut replays = 0u64;
    let mut max_digits = 0usize;
    for u in 0..=u_max {
        for v in 0..=v_max {
            for sign in Sign::BOTH {
                let inst = ClaimInstance::new(u, v, sign);
                instances += 1;
                max_digits = max_digits.max(inst.m1.to_string().len());
                rec.check(inst.holds(), || {
                    Witness::new("divisibility", "d divides none of M1, M2, M3")
                        .with("u", u)
                        .with("v", v)
                        .with("sign", sign.symbol())
                        .with("d", inst.d.clone())
                });
                rec.row(inst.row());
            }
            replays += 1;
            for name in identity_failures(u, v) {
                rec.witness(
                    Witness::new("identity", format!("{name} is not an exact equality"))
                        .with("u", u)
                        .with("v", v),
                );
            }
        }
    }
    rec.count("u_max", u_max);
    rec.count("v_max", v_max);
    rec.count("instances", instances);
    rec.count("identity_replays", replays);
    rec.count("largest_m1_digits", max_digits);
    rec.note("u = 0 with the minus sign gives d = 1, which divides everything.");
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_instances() {
        let a = ClaimInstance::new(0, 0, Sign::Plus);
        assert_eq!(a.d, BigInt::from(7));
        assert_eq!(a.m1, BigInt::from(7));
        let b = ClaimInstance::new(0, 1, Sign::Plus);
        assert_eq!((b.s, b.m2.clone()), (1, BigInt::from(28)));
        let c = ClaimInstance::new(1, 1, Sign::Plus);
        assert_eq!(c.d, BigInt::from(37));
        assert_eq!(c.s, 4);
        assert_eq!(c.k, BigInt::from(81));
        assert_eq!(c.m2, BigInt::from(19684));
        assert_eq!(c.divides(), [false, true, false]);
        assert_eq!(ClaimInstance::new(1, 0, Sign::Minus).d, BigInt::from(19));
    }

    #[test]
    fn full_range_passes() {
        let r = verify_vigh_claim(4, 12);
        assert!(r.passed(), "{:?}", r.witnesses());
        assert_eq!(r.count("instances"), Some(5 * 13 * 2));
        assert_eq!(r.file_stem(), "claim_u4_v12");
    }
}
