// SPDX-License-Identifier: MIT OR Apache-2.0

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use libm::erfc;

/// Continuous marginal law of the latent process.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistModel {
    Normal01,
    Uniform01,
}

impl DistModel {
    pub fn cdf(self, x: f64) -> f64 {
        match self {
            DistModel::Normal01 => 0.5 * erfc(-x * FRAC_1_SQRT_2),
            DistModel::Uniform01 => x.clamp(0.0, 1.0),
        }
    }

    pub fn pdf(self, x: f64) -> f64 {
        match self {
            DistModel::Normal01 => (-0.5 * x * x).exp() / (2.0 * PI).sqrt(),
            DistModel::Uniform01 => {
                if (0.0..=1.0).contains(&x) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Inverse distribution function on (0, 1).
    pub fn quantile(self, u: f64) -> f64 {
        match self {
            DistModel::Normal01 => normal_quantile(u),
            DistModel::Uniform01 => u,
        }
    }

    pub fn sup_pdf(self) -> f64 {
        match self {
            DistModel::Normal01 => 1.0 / (2.0 * PI).sqrt(),
            DistModel::Uniform01 => 1.0,
        }
    }

    /// `int f^2`, the leading coefficient of `Theta_Delta / Delta`.
    pub fn density_energy(self) -> f64 {
        match self {
            DistModel::Normal01 => 1.0 / (2.0 * PI.sqrt()),
            DistModel::Uniform01 => 1.0,
        }
    }

    /// Points where `F` is not smooth.
    pub fn kinks(self) -> &'static [f64] {
        match self {
            DistModel::Normal01 => &[],
            DistModel::Uniform01 => &[0.0, 1.0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DistModel::Normal01 => "normal",
            DistModel::Uniform01 => "uniform",
        }
    }
}

fn poly(coeffs: &[f64; 8], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Wichura's AS241 (PPND16) followed by one Newton step on `erfc`.
fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 8] = [
        3.387_132_872_796_366_608,
        1.331_416_678_917_843_774_5e2,
        1.971_590_950_306_551_442_7e3,
        1.373_169_376_550_946_112_5e4,
        4.592_195_393_154_987_145_7e4,
        6.726_577_092_700_870_085_3e4,
        3.343_057_558_358_812_810_5e4,
        2.509_080_928_730_122_672_7e3,
    ];
    const B: [f64; 8] = [
        1.0,
        4.231_333_070_160_091_125_2e1,
        6.871_870_074_920_579_083e2,
        5.394_196_021_424_751_107_7e3,
        2.121_379_430_158_659_586_7e4,
        3.930_789_580_009_271_061e4,
        2.872_908_573_572_194_267_4e4,
        5.226_495_278_852_854_561e3,
    ];
    const C: [f64; 8] = [
        1.423_437_110_749_683_577_34,
        4.630_337_846_156_545_295_9,
        5.769_497_221_460_691_405_5,
        3.647_848_324_763_204_605_04,
        1.270_458_252_452_368_382_58,
        2.417_807_251_774_506_117_7e-1,
        2.272_384_498_926_918_458_33e-2,
        7.745_450_142_783_414_076_4e-4,
    ];
    const D: [f64; 8] = [
        1.0,
        2.053_191_626_637_758_821_87,
        1.676_384_830_183_803_849_4,
        6.897_673_349_851_000_045_5e-1,
        1.481_039_764_274_800_745_9e-1,
        1.519_866_656_361_645_719_66e-2,
        5.475_938_084_995_344_946e-4,
        1.050_750_071_644_416_843_24e-9,
    ];
    const E: [f64; 8] = [
        6.657_904_643_501_103_777_2,
        5.463_784_911_164_114_369_9,
        1.784_826_539_917_291_335_8,
        2.965_605_718_285_048_912_3e-1,
        2.653_218_952_657_612_309_3e-2,
        1.242_660_947_388_078_438_6e-3,
        2.711_555_568_743_487_578_15e-5,
        2.010_334_399_292_288_132_65e-7,
    ];
    const F: [f64; 8] = [
        1.0,
        5.998_322_065_558_879_376_9e-1,
        1.369_298_809_227_358_053_1e-1,
        1.487_536_129_085_061_485_25e-2,
        7.868_691_311_456_132_591e-4,
        1.846_318_317_510_054_681_8e-5,
        1.421_511_758_316_445_888_7e-7,
        2.044_263_103_389_939_785_64e-15,
    ];

    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let q = p - 0.5;
    let mut x = if q.abs() <= 0.425 {
        let r = 0.180_625 - q * q;
        q * poly(&A, r) / poly(&B, r)
    } else {
        let r = (-(p.min(1.0 - p)).ln()).sqrt();
        let z = if r <= 5.0 {
            poly(&C, r - 1.6) / poly(&D, r - 1.6)
        } else {
            poly(&E, r - 5.0) / poly(&F, r - 5.0)
        };
        if q < 0.0 {
            -z
        } else {
            z
        }
    };
    let density = (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
    if density > 0.0 {
        // residual taken on the smaller tail to keep relative precision
        let residual = if x < 0.0 {
            0.5 * erfc(-x * FRAC_1_SQRT_2) - p
        } else {
            (1.0 - p) - 0.5 * erfc(x * FRAC_1_SQRT_2)
        };
        x -= residual / density;
    }
    x
}

impl std::str::FromStr for DistModel {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "normal" | "normal01" => Ok(DistModel::Normal01),
            "uniform" | "uniform01" => Ok(DistModel::Uniform01),
            other => Err(crate::Error::invalid(
                "dist",
                format!("unknown distribution `{other}` (expected `normal` or `uniform`)"),
            )),
        }
    }
}
