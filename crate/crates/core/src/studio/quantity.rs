use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::lumped::DesignInputs;

use super::pipeline::DerivedParameters;

/// Design inputs that sweeps and tuning may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    CS,
    CG,
    CK,
    LJ,
    FrTarget,
}

impl Parameter {
    pub const ALL: [Parameter; 5] = [
        Parameter::CS,
        Parameter::CG,
        Parameter::CK,
        Parameter::LJ,
        Parameter::FrTarget,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::CS => "c_s",
            Parameter::CG => "c_g",
            Parameter::CK => "c_k",
            Parameter::LJ => "l_j",
            Parameter::FrTarget => "f_r_target",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Parameter::CS | Parameter::CG | Parameter::CK => "F",
            Parameter::LJ => "H",
            Parameter::FrTarget => "Hz",
        }
    }

    pub fn get(self, inputs: &DesignInputs) -> f64 {
        match self {
            Parameter::CS => inputs.c_s.0,
            Parameter::CG => inputs.c_g.0,
            Parameter::CK => inputs.c_k.0,
            Parameter::LJ => inputs.l_j.0,
            Parameter::FrTarget => inputs.f_r_target.0,
        }
    }

    /// Copy of `inputs` with this parameter replaced.
    pub fn with(self, inputs: &DesignInputs, value: f64) -> DesignInputs {
        let mut out = inputs.clone();
        match self {
            Parameter::CS => out.c_s.0 = value,
            Parameter::CG => out.c_g.0 = value,
            Parameter::CK => out.c_k.0 = value,
            Parameter::LJ => out.l_j.0 = value,
            Parameter::FrTarget => out.f_r_target.0 = value,
        }
        out
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_lowercase();
        Parameter::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| {
                Error::Contract(format!(
                    "unknown parameter '{s}', expected one of c_s, c_g, c_k, l_j, f_r_target"
                ))
            })
    }
}

/// Derived quantities addressable by name from the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    CriticalCurrent,
    Ej,
    Ec,
    EjOverEc,
    Beta,
    Cr,
    Lr,
    F01,
    F12,
    Anharmonicity,
    F01Exact,
    AnharmonicityExact,
    Detuning,
    Vrms,
    G01,
    G12,
    Chi01,
    Chi12,
    Chi,
    ChiExact,
    QExt,
    Kappa,
    FrLoaded,
    T1,
    ChiToKappa,
}

impl Quantity {
    pub const ALL: [Quantity; 25] = [
        Quantity::CriticalCurrent,
        Quantity::Ej,
        Quantity::Ec,
        Quantity::EjOverEc,
        Quantity::Beta,
        Quantity::Cr,
        Quantity::Lr,
        Quantity::F01,
        Quantity::F12,
        Quantity::Anharmonicity,
        Quantity::F01Exact,
        Quantity::AnharmonicityExact,
        Quantity::Detuning,
        Quantity::Vrms,
        Quantity::G01,
        Quantity::G12,
        Quantity::Chi01,
        Quantity::Chi12,
        Quantity::Chi,
        Quantity::ChiExact,
        Quantity::QExt,
        Quantity::Kappa,
        Quantity::FrLoaded,
        Quantity::T1,
        Quantity::ChiToKappa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::CriticalCurrent => "i_c",
            Quantity::Ej => "e_j",
            Quantity::Ec => "e_c",
            Quantity::EjOverEc => "ej_over_ec",
            Quantity::Beta => "beta",
            Quantity::Cr => "c_r",
            Quantity::Lr => "l_r",
            Quantity::F01 => "f_01",
            Quantity::F12 => "f_12",
            Quantity::Anharmonicity => "anharmonicity",
            Quantity::F01Exact => "f_01_exact",
            Quantity::AnharmonicityExact => "anharmonicity_exact",
            Quantity::Detuning => "detuning",
            Quantity::Vrms => "v_rms",
            Quantity::G01 => "g_01",
            Quantity::G12 => "g_12",
            Quantity::Chi01 => "chi_01",
            Quantity::Chi12 => "chi_12",
            Quantity::Chi => "chi",
            Quantity::ChiExact => "chi_exact",
            Quantity::QExt => "q_ext",
            Quantity::Kappa => "kappa",
            Quantity::FrLoaded => "f_r_loaded",
            Quantity::T1 => "t1",
            Quantity::ChiToKappa => "chi_to_kappa",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Quantity::CriticalCurrent => "A",
            Quantity::EjOverEc | Quantity::Beta | Quantity::QExt | Quantity::ChiToKappa => "1",
            Quantity::Cr => "F",
            Quantity::Lr => "H",
            Quantity::Vrms => "V",
            Quantity::T1 => "s",
            _ => "Hz",
        }
    }

    /// `None` for quantities that are undefined on this design (no oracle
    /// result, unbounded T1).
    pub fn extract(self, d: &DerivedParameters) -> Option<f64> {
        let c = &d.coupling;
        let value = match self {
            Quantity::CriticalCurrent => d.lumped.i_c.0,
            Quantity::Ej => d.lumped.e_j.0,
            Quantity::Ec => d.lumped.e_c.0,
            Quantity::EjOverEc => d.lumped.ej_over_ec,
            Quantity::Beta => d.lumped.beta,
            Quantity::Cr => d.lumped.c_r.0,
            Quantity::Lr => d.lumped.l_r.0,
            Quantity::F01 => d.transmon_perturbative.f_01.0,
            Quantity::F12 => d.transmon_perturbative.f_12.0,
            Quantity::Anharmonicity => d.transmon_perturbative.anharmonicity.0,
            Quantity::F01Exact => d.transmon_exact.f_01_exact.0,
            Quantity::AnharmonicityExact => d.transmon_exact.anharmonicity_exact.0,
            Quantity::Detuning => c.detuning_0.0,
            Quantity::Vrms => c.v_rms.0,
            Quantity::G01 => c.g_01.0,
            Quantity::G12 => c.g_12.0,
            Quantity::Chi01 => c.chi_01.0,
            Quantity::Chi12 => c.chi_12.0,
            Quantity::Chi => c.chi_total.0,
            Quantity::ChiExact => return d.chi_exact.map(|f| f.0),
            Quantity::QExt => c.q_ext,
            Quantity::Kappa => c.kappa.0,
            Quantity::FrLoaded => c.f_r_loaded.0,
            Quantity::T1 => {
                if c.t1_purcell.unbounded {
                    return None;
                }
                c.t1_purcell.seconds
            }
            Quantity::ChiToKappa => c.chi_to_kappa_ratio,
        };
        value.is_finite().then_some(value)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_lowercase();
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == key)
            .ok_or_else(|| {
                let known: Vec<&str> = Quantity::ALL.iter().map(|q| q.name()).collect();
                Error::Contract(format!("unknown quantity '{s}', expected one of {}", known.join(", ")))
            })
    }
}
