//! Node meta-types, link families and signed link types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The three node meta-types. Ordering is `event < thing < concept`, which
/// is also the row order of every meta-type indexed matrix in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetaType {
    /// Ephemeral, realized phenomenon.
    Event,
    /// Persistent, realized phenomenon.
    Thing,
    /// Unrealized invariant notion.
    Concept,
}

impl MetaType {
    pub const ALL: [MetaType; 3] = [MetaType::Event, MetaType::Thing, MetaType::Concept];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Single-letter symbol: `e`, `t` or `c`.
    pub fn symbol(self) -> char {
        match self {
            MetaType::Event => 'e',
            MetaType::Thing => 't',
            MetaType::Concept => 'c',
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            MetaType::Event => "event",
            MetaType::Thing => "thing",
            MetaType::Concept => "concept",
        }
    }

    pub fn from_symbol(c: char) -> Option<MetaType> {
        match c {
            'e' => Some(MetaType::Event),
            't' => Some(MetaType::Thing),
            'c' => Some(MetaType::Concept),
            _ => None,
        }
    }
}

impl fmt::Display for MetaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for MetaType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "event" => Ok(MetaType::Event),
            "thing" => Ok(MetaType::Thing),
            "concept" => Ok(MetaType::Concept),
            other => Err(format!("unknown meta-type `{other}` (expected event, thing or concept)")),
        }
    }
}

/// The four link families, ordered by their type number (N = 0 … E = 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LinkFamily {
    /// NEAR: symmetric proximity or similarity.
    #[serde(rename = "N")]
    Near,
    /// LEADS TO: temporal or causal order.
    #[serde(rename = "L")]
    LeadsTo,
    /// CONTAINS: spatial containment or membership.
    #[serde(rename = "C")]
    Contains,
    /// EXPRESSES: attribute or property expression.
    #[serde(rename = "E")]
    Expresses,
}

impl LinkFamily {
    pub const ALL: [LinkFamily; 4] =
        [LinkFamily::Near, LinkFamily::LeadsTo, LinkFamily::Contains, LinkFamily::Expresses];

    /// Families with a direction.
    pub const DIRECTED: [LinkFamily; 3] = [LinkFamily::LeadsTo, LinkFamily::Contains, LinkFamily::Expresses];

    pub fn symbol(self) -> char {
        match self {
            LinkFamily::Near => 'N',
            LinkFamily::LeadsTo => 'L',
            LinkFamily::Contains => 'C',
            LinkFamily::Expresses => 'E',
        }
    }

    pub fn from_symbol(c: char) -> Option<LinkFamily> {
        match c {
            'N' => Some(LinkFamily::Near),
            'L' => Some(LinkFamily::LeadsTo),
            'C' => Some(LinkFamily::Contains),
            'E' => Some(LinkFamily::Expresses),
            _ => None,
        }
    }

    pub fn is_symmetric(self) -> bool {
        self == LinkFamily::Near
    }

    /// The forward (or, for N, the only) signed type of this family.
    pub fn forward(self) -> SignedLinkType {
        if self.is_symmetric() {
            SignedLinkType::NEAR
        } else {
            SignedLinkType { family: self, orientation: Orientation::Forward }
        }
    }
}

impl fmt::Display for LinkFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for LinkFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next().and_then(LinkFamily::from_symbol), chars.next()) {
            (Some(f), None) => Ok(f),
            _ => Err(format!("unknown link family `{s}` (expected N, L, C or E)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Forward,
    Reverse,
    Symmetric,
}

impl Orientation {
    /// `+1`, `-1` or `0`.
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Forward => 1,
            Orientation::Reverse => -1,
            Orientation::Symmetric => 0,
        }
    }
}

/// A link family together with its reading direction. `N` is always
/// symmetric, the other three families are always `+` or `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedLinkType {
    family: LinkFamily,
    orientation: Orientation,
}

impl SignedLinkType {
    pub const NEAR: SignedLinkType = SignedLinkType { family: LinkFamily::Near, orientation: Orientation::Symmetric };
    pub const LEADS_TO: SignedLinkType =
        SignedLinkType { family: LinkFamily::LeadsTo, orientation: Orientation::Forward };
    pub const FOLLOWS: SignedLinkType =
        SignedLinkType { family: LinkFamily::LeadsTo, orientation: Orientation::Reverse };
    pub const CONTAINS: SignedLinkType =
        SignedLinkType { family: LinkFamily::Contains, orientation: Orientation::Forward };
    pub const PART_OF: SignedLinkType =
        SignedLinkType { family: LinkFamily::Contains, orientation: Orientation::Reverse };
    pub const EXPRESSES: SignedLinkType =
        SignedLinkType { family: LinkFamily::Expresses, orientation: Orientation::Forward };
    pub const EXPRESSED_BY: SignedLinkType =
        SignedLinkType { family: LinkFamily::Expresses, orientation: Orientation::Reverse };

    /// All seven signed types: `+L -L +C -C +E -E N`.
    pub const ALL: [SignedLinkType; 7] =
        [Self::LEADS_TO, Self::FOLLOWS, Self::CONTAINS, Self::PART_OF, Self::EXPRESSES, Self::EXPRESSED_BY, Self::NEAR];

    /// Returns `None` when the orientation does not suit the family.
    pub fn new(family: LinkFamily, orientation: Orientation) -> Option<Self> {
        match (family.is_symmetric(), orientation) {
            (true, Orientation::Symmetric) => Some(Self::NEAR),
            (false, Orientation::Forward | Orientation::Reverse) => Some(SignedLinkType { family, orientation }),
            _ => None,
        }
    }

    /// Builds a type from a family and integer sign (`+1`, `-1`, `0`).
    pub fn from_sign(family: LinkFamily, sign: i8) -> Option<Self> {
        let orientation = match sign {
            1 => Orientation::Forward,
            -1 => Orientation::Reverse,
            0 => Orientation::Symmetric,
            _ => return None,
        };
        Self::new(family, orientation)
    }

    pub fn family(self) -> LinkFamily {
        self.family
    }

    pub fn orientation(self) -> Orientation {
        self.orientation
    }

    pub fn negate(self) -> Self {
        let orientation = match self.orientation {
            Orientation::Forward => Orientation::Reverse,
            Orientation::Reverse => Orientation::Forward,
            Orientation::Symmetric => Orientation::Symmetric,
        };
        SignedLinkType { family: self.family, orientation }
    }

    pub fn is_reverse(self) -> bool {
        self.orientation == Orientation::Reverse
    }
}

impl fmt::Display for SignedLinkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation {
            Orientation::Forward => write!(f, "+{}", self.family),
            Orientation::Reverse => write!(f, "-{}", self.family),
            Orientation::Symmetric => write!(f, "{}", self.family),
        }
    }
}

impl FromStr for SignedLinkType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed = match s {
            "+L" => Some(Self::LEADS_TO),
            "-L" => Some(Self::FOLLOWS),
            "+C" => Some(Self::CONTAINS),
            "-C" => Some(Self::PART_OF),
            "+E" => Some(Self::EXPRESSES),
            "-E" => Some(Self::EXPRESSED_BY),
            "N" => Some(Self::NEAR),
            _ => None,
        };
        parsed.ok_or_else(|| format!("unknown link type `{s}` (expected +L, -L, +C, -C, +E, -E or N)"))
    }
}

impl Serialize for SignedLinkType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignedLinkType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
