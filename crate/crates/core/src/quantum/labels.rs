use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The two communicating parties. Alice holds the first qubit, Bob the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

/// Single-qubit Pauli operations available to the encoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLabel {
    Id,
    X,
    Y,
    Z,
}

impl PauliLabel {
    pub const ALL: [PauliLabel; 4] = [PauliLabel::Id, PauliLabel::X, PauliLabel::Y, PauliLabel::Z];

    /// The Bell state produced by applying this operation to Alice's half of |Φ⁺⟩.
    pub fn encodes(self) -> BellLabel {
        match self {
            PauliLabel::Id => BellLabel::PhiPlus,
            PauliLabel::Z => BellLabel::PhiMinus,
            PauliLabel::X => BellLabel::PsiPlus,
            PauliLabel::Y => BellLabel::PsiMinus,
        }
    }
}

/// Which pair of basis states a Bell state is supported on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// span{|HH⟩, |VV⟩}
    Parallel,
    /// span{|HV⟩, |VH⟩}
    Crossed,
}

/// The four maximally entangled two-qubit states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
    ];

    /// The Pauli operation on Alice's qubit that maps |Φ⁺⟩ onto this state.
    pub fn encoding(self) -> PauliLabel {
        match self {
            BellLabel::PhiPlus => PauliLabel::Id,
            BellLabel::PhiMinus => PauliLabel::Z,
            BellLabel::PsiPlus => PauliLabel::X,
            BellLabel::PsiMinus => PauliLabel::Y,
        }
    }

    pub fn sector(self) -> Sector {
        match self {
            BellLabel::PhiPlus | BellLabel::PhiMinus => Sector::Parallel,
            BellLabel::PsiPlus | BellLabel::PsiMinus => Sector::Crossed,
        }
    }

    /// The other Bell state in the same sector; dephasing mixes a state only with its partner.
    pub fn partner(self) -> BellLabel {
        match self {
            BellLabel::PhiPlus => BellLabel::PhiMinus,
            BellLabel::PhiMinus => BellLabel::PhiPlus,
            BellLabel::PsiPlus => BellLabel::PsiMinus,
            BellLabel::PsiMinus => BellLabel::PsiPlus,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "PHI_PLUS",
            BellLabel::PhiMinus => "PHI_MINUS",
            BellLabel::PsiPlus => "PSI_PLUS",
            BellLabel::PsiMinus => "PSI_MINUS",
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BellLabel::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown Bell label `{s}`")))
    }
}
