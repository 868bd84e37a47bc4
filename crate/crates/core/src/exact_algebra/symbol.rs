use serde::{Deserialize, Serialize};
use std::fmt;

/// The closed alphabet of curvature and torsion symbols.
///
/// `T` is the eigenvalue of `J0 tau` on the chosen unit vector `h`, so that
/// `|tau|^2 = t^2`. `ITau3` stands for the real combination
/// `i(tau^1_{1bar,11} - tau^{1bar}_{1,1bar1bar})`, the only way the third
/// torsion derivatives enter the expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    #[serde(rename = "R")]
    R,
    #[serde(rename = "tau_sq")]
    TauSq,
    #[serde(rename = "t")]
    T,
    #[serde(rename = "A")]
    A,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "a")]
    SmallA,
    #[serde(rename = "b")]
    SmallB,
    #[serde(rename = "R_1")]
    R1,
    #[serde(rename = "R_1bar")]
    R1bar,
    #[serde(rename = "R_11bar")]
    R11bar,
    #[serde(rename = "R_1bar1")]
    R1bar1,
    #[serde(rename = "lap_R")]
    LapR,
    #[serde(rename = "tau_1")]
    Tau1,
    #[serde(rename = "tau_1bar")]
    Tau1bar,
    #[serde(rename = "i_tau3")]
    ITau3,
    #[serde(rename = "nabla_xi_tau")]
    NablaXiTau,
    #[serde(rename = "rem32")]
    Rem32,
    #[serde(rename = "O")]
    Ocal,
}

impl Symbol {
    pub const ALL: [Symbol; 18] = [
        Symbol::R,
        Symbol::TauSq,
        Symbol::T,
        Symbol::A,
        Symbol::B,
        Symbol::SmallA,
        Symbol::SmallB,
        Symbol::R1,
        Symbol::R1bar,
        Symbol::R11bar,
        Symbol::R1bar1,
        Symbol::LapR,
        Symbol::Tau1,
        Symbol::Tau1bar,
        Symbol::ITau3,
        Symbol::NablaXiTau,
        Symbol::Rem32,
        Symbol::Ocal,
    ];

    /// Symbols whose linear occurrences integrate to zero over a closed
    /// pseudo-hermitian 3-manifold.
    pub fn is_divergence(self) -> bool {
        matches!(
            self,
            Symbol::R11bar | Symbol::R1bar1 | Symbol::LapR | Symbol::ITau3 | Symbol::Ocal
        )
    }

    /// Opaque markers that must never survive into a final scalar.
    pub fn is_tagged_remainder(self) -> bool {
        matches!(self, Symbol::NablaXiTau | Symbol::Rem32)
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::R => "R",
            Symbol::TauSq => "tau_sq",
            Symbol::T => "t",
            Symbol::A => "A",
            Symbol::B => "B",
            Symbol::SmallA => "a",
            Symbol::SmallB => "b",
            Symbol::R1 => "R_1",
            Symbol::R1bar => "R_1bar",
            Symbol::R11bar => "R_11bar",
            Symbol::R1bar1 => "R_1bar1",
            Symbol::LapR => "lap_R",
            Symbol::Tau1 => "tau_1",
            Symbol::Tau1bar => "tau_1bar",
            Symbol::ITau3 => "i_tau3",
            Symbol::NablaXiTau => "nabla_xi_tau",
            Symbol::Rem32 => "rem32",
            Symbol::Ocal => "O",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        Symbol::ALL.iter().copied().find(|x| x.name() == s)
    }

    pub fn latex(self) -> &'static str {
        match self {
            Symbol::R => "R",
            Symbol::TauSq => "|\\tau|^{2}",
            Symbol::T => "t",
            Symbol::A => "A",
            Symbol::B => "B",
            Symbol::SmallA => "a",
            Symbol::SmallB => "b",
            Symbol::R1 => "R_{,1}",
            Symbol::R1bar => "R_{,\\bar1}",
            Symbol::R11bar => "R_{,1\\bar1}",
            Symbol::R1bar1 => "R_{,\\bar11}",
            Symbol::LapR => "\\Delta R",
            Symbol::Tau1 => "\\tau^{1}{}_{\\bar1,1}",
            Symbol::Tau1bar => "\\tau^{\\bar1}{}_{1,\\bar1}",
            Symbol::ITau3 => "i(\\tau^{1}{}_{\\bar1,11}-\\tau^{\\bar1}{}_{1,\\bar1\\bar1})",
            Symbol::NablaXiTau => "\\nabla_{\\xi}\\tau",
            Symbol::Rem32 => "\\mathcal{E}_{3/2}",
            Symbol::Ocal => "\\mathcal{O}",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
