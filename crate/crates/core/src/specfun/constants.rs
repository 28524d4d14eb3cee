use serde::Serialize;

/// Apery's constant `zeta(3)`.
pub const ZETA3: f64 = 1.202_056_903_159_594_285_399_738_161_511_449_990_8;
/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;
/// Natural logarithm of Glaisher's constant `A = 1.28242712910062...`.
pub const LN_GLAISHER_A: f64 = 0.248_754_477_033_784_262_547_252_993_576;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub zeta3: f64,
    pub glaisher_log_a: f64,
    pub euler_gamma: f64,
}

pub fn constants() -> Constants {
    Constants {
        zeta3: ZETA3,
        glaisher_log_a: LN_GLAISHER_A,
        euler_gamma: EULER_GAMMA,
    }
}
