//! Typed symbol alphabet.

use std::fmt;
use std::str::FromStr;

/// The families of symbols that can appear in a polynomial.
///
/// The declaration order is the canonical sort order of monomial keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Alphabet {
    /// Residue variables `z_i`.
    Z = 0,
    /// Torus weights `λ_i` (Chern roots of the cotangent space).
    Lambda = 1,
    /// Chern roots `θ_j` of the twisting bundle.
    Theta = 2,
    /// Segre classes `s_i(X)` of the tangent bundle.
    SegreX = 3,
    /// Chern classes `c_j(F)` of the twisting bundle.
    ChernF = 4,
}

impl Alphabet {
    const ALL: [Alphabet; 5] = [
        Alphabet::Z,
        Alphabet::Lambda,
        Alphabet::Theta,
        Alphabet::SegreX,
        Alphabet::ChernF,
    ];

    pub fn prefix(self) -> &'static str {
        match self {
            Alphabet::Z => "z",
            Alphabet::Lambda => "lambda",
            Alphabet::Theta => "theta",
            Alphabet::SegreX => "s",
            Alphabet::ChernF => "cF",
        }
    }
}

/// A symbol: an alphabet together with a positive index.
///
/// Packed into 16 bits (alphabet in the high byte) so that the derived
/// ordering is "alphabet, then index".
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(u16);

impl SymbolId {
    pub const MAX_INDEX: u16 = 255;

    /// Panics if `index` is zero or above [`SymbolId::MAX_INDEX`].
    pub fn new(alphabet: Alphabet, index: usize) -> Self {
        assert!(
            (1..=Self::MAX_INDEX as usize).contains(&index),
            "symbol index {index} out of range"
        );
        SymbolId(((alphabet as u16) << 8) | index as u16)
    }

    pub fn z(i: usize) -> Self {
        Self::new(Alphabet::Z, i)
    }
    pub fn lambda(i: usize) -> Self {
        Self::new(Alphabet::Lambda, i)
    }
    pub fn theta(i: usize) -> Self {
        Self::new(Alphabet::Theta, i)
    }
    pub fn segre(i: usize) -> Self {
        Self::new(Alphabet::SegreX, i)
    }
    pub fn chern_f(i: usize) -> Self {
        Self::new(Alphabet::ChernF, i)
    }

    pub fn alphabet(self) -> Alphabet {
        Alphabet::ALL[(self.0 >> 8) as usize]
    }

    pub fn index(self) -> usize {
        (self.0 & 0xff) as usize
    }

    pub(crate) fn raw(self) -> u16 {
        self.0
    }

    pub(crate) fn from_raw(raw: u16) -> Self {
        SymbolId(raw)
    }

    /// Degree under the grading `deg z = deg λ = deg θ = 1`, `deg s_i = i`,
    /// `deg c_j(F) = j`.
    pub fn degree(self) -> u32 {
        match self.alphabet() {
            Alphabet::Z | Alphabet::Lambda | Alphabet::Theta => 1,
            Alphabet::SegreX | Alphabet::ChernF => self.index() as u32,
        }
    }

    /// Checks the per-job index bounds: `z ≤ k`, `λ ≤ n`, `θ ≤ r`,
    /// `s ≤ n`, `c(F) ≤ r`.
    pub fn within_bounds(self, n: usize, k: usize, r: usize) -> bool {
        let bound = match self.alphabet() {
            Alphabet::Z => k,
            Alphabet::Lambda | Alphabet::SegreX => n,
            Alphabet::Theta | Alphabet::ChernF => r,
        };
        self.index() <= bound
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.alphabet().prefix(), self.index())
    }
}

impl fmt::Debug for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown symbol `{0}`")]
pub struct ParseSymbolError(pub String);

impl FromStr for SymbolId {
    type Err = ParseSymbolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSymbolError(s.to_string());
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(err)?;
        let (prefix, idx) = s.split_at(split);
        let alphabet = Alphabet::ALL
            .into_iter()
            .find(|a| a.prefix() == prefix)
            .ok_or_else(err)?;
        let index: usize = idx.parse().map_err(|_| err())?;
        if index == 0 || index > Self::MAX_INDEX as usize {
            return Err(err());
        }
        Ok(SymbolId::new(alphabet, index))
    }
}
