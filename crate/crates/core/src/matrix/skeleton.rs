//! Meta-type skeleton matrices: the offer/acceptance incidence pair, the
//! set-valued meta-adjacency, its per-family generators and the join
//! matrix. Published values are kept verbatim next to values derived from
//! the transition table, and every disagreement is reported.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::transition::{allowed_transition, allowed_types, format_meta_set, join_types};
use crate::types::{LinkFamily, MetaType, SignedLinkType};

use LinkFamily::*;
use MetaType::*;

/// Column labels of `I⁺` (row labels of `I⁻`).
pub const INCIDENCE_LABELS: [&str; 6] = ["L", "C", "E", "N_e", "N_t", "N_c"];

const I_PLUS: [[u32; 6]; 3] = [[1, 1, 1, 1, 0, 0], [0, 1, 1, 0, 1, 0], [0, 0, 1, 0, 0, 1]];

const I_MINUS: [[u32; 3]; 6] = [[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// One cell of a generator matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeneratorEntry {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "±1")]
    PlusMinus,
    /// Diagonal unit of the `N` generator.
    #[serde(rename = "1")]
    Unit,
}

impl GeneratorEntry {
    fn from_signs(plus: bool, minus: bool) -> Self {
        match (plus, minus) {
            (true, true) => GeneratorEntry::PlusMinus,
            (true, false) => GeneratorEntry::Plus,
            (false, true) => GeneratorEntry::Minus,
            (false, false) => GeneratorEntry::Zero,
        }
    }
}

/// Signed types allowed between two meta-types.
pub type MetaCell = BTreeSet<SignedLinkType>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkeletonMatrices {
    /// Rows e, t, c; columns L, C, E, N_e, N_t, N_c.
    pub i_plus: [[u32; 6]; 3],
    /// Rows L, C, E, N_e, N_t, N_c; columns e, t, c.
    pub i_minus: [[u32; 3]; 6],
    /// Rows and columns e, t, c.
    pub a_meta: [[MetaCell; 3]; 3],
    /// `A_L`, `A_C`, `A_E`, `A_N`, rows and columns e, t, c.
    pub generators: [(LinkFamily, [[GeneratorEntry; 3]; 3]); 4],
}

fn cell(types: &[&str]) -> MetaCell {
    types.iter().map(|t| t.parse().expect("valid type literal")).collect()
}

/// The skeleton matrices exactly as published.
pub fn skeleton() -> SkeletonMatrices {
    use GeneratorEntry::*;
    let a_meta = [
        [cell(&["+L", "-L", "+C", "-C", "+E", "-E", "N"]), cell(&["+C"]), cell(&["+E"])],
        [cell(&["-C"]), cell(&["+C", "-C", "N"]), cell(&["+E"])],
        [cell(&["-E"]), cell(&["-E"]), cell(&["+E", "-E", "N"])],
    ];
    let generators = [
        (LeadsTo, [[PlusMinus, Zero, Zero], [Zero, Zero, Zero], [Zero, Zero, Zero]]),
        (Contains, [[PlusMinus, Plus, Zero], [Minus, PlusMinus, Zero], [Zero, Zero, Zero]]),
        (Expresses, [[PlusMinus, Zero, Minus], [Zero, Zero, Plus], [Minus, Minus, PlusMinus]]),
        (Near, [[Unit, Zero, Zero], [Zero, Unit, Zero], [Zero, Zero, Unit]]),
    ];
    SkeletonMatrices { i_plus: I_PLUS, i_minus: I_MINUS, a_meta, generators }
}

/// The meta-adjacency computed from the transition table.
pub fn derived_meta_adjacency() -> [[MetaCell; 3]; 3] {
    MetaType::ALL.map(|s| MetaType::ALL.map(|d| allowed_types(s, d).into_iter().collect()))
}

/// The generator of one family computed from the transition table.
pub fn derived_generator(family: LinkFamily) -> [[GeneratorEntry; 3]; 3] {
    MetaType::ALL.map(|s| {
        MetaType::ALL.map(|d| {
            if family == Near {
                return if allowed_transition(s, SignedLinkType::NEAR, d) {
                    GeneratorEntry::Unit
                } else {
                    GeneratorEntry::Zero
                };
            }
            let fwd = family.forward();
            GeneratorEntry::from_signs(allowed_transition(s, fwd, d), allowed_transition(s, fwd.negate(), d))
        })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountMismatch {
    pub row: MetaType,
    pub col: MetaType,
    pub product: u32,
    pub derived: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetaCellMismatch {
    pub row: MetaType,
    pub col: MetaType,
    pub published: MetaCell,
    pub derived: MetaCell,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorMismatch {
    pub family: LinkFamily,
    pub row: MetaType,
    pub col: MetaType,
    pub published: GeneratorEntry,
    pub derived: GeneratorEntry,
}

/// Outcome of multiplying the published incidence matrices and comparing
/// the result with the transition table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationReport {
    /// `I⁺·I⁻`, rows and columns e, t, c.
    pub product: [[u32; 3]; 3],
    /// Diagonal of the product, taken as the diagonal part `C`.
    pub cartan_diagonal: [u32; 3],
    pub cartan_proportional_to_identity: bool,
    /// Number of link families legal from row to column, per the table.
    pub derived_family_counts: [[u32; 3]; 3],
    /// Off-diagonal cells where the product and the derived counts differ.
    pub off_diagonal_mismatches: Vec<CountMismatch>,
    /// Cells where the published meta-adjacency differs from the table.
    pub meta_adjacency_mismatches: Vec<MetaCellMismatch>,
    /// Cells where a published generator differs from the table.
    pub generator_mismatches: Vec<GeneratorMismatch>,
}

impl FactorizationReport {
    pub fn is_consistent(&self) -> bool {
        self.off_diagonal_mismatches.is_empty()
            && self.meta_adjacency_mismatches.is_empty()
            && self.generator_mismatches.is_empty()
    }
}

pub fn check_factorization() -> FactorizationReport {
    let sk = skeleton();
    let mut product = [[0u32; 3]; 3];
    for (i, row) in product.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (0..6).map(|k| sk.i_plus[i][k] * sk.i_minus[k][j]).sum();
        }
    }
    let cartan_diagonal = [product[0][0], product[1][1], product[2][2]];

    let derived = derived_meta_adjacency();
    let derived_family_counts =
        derived.clone().map(|row| row.map(|c| c.iter().map(|t| t.family()).collect::<BTreeSet<_>>().len() as u32));

    let mut off_diagonal_mismatches = Vec::new();
    let mut meta_adjacency_mismatches = Vec::new();
    for (i, row) in MetaType::ALL.into_iter().enumerate() {
        for (j, col) in MetaType::ALL.into_iter().enumerate() {
            if i != j && product[i][j] != derived_family_counts[i][j] {
                off_diagonal_mismatches.push(CountMismatch {
                    row,
                    col,
                    product: product[i][j],
                    derived: derived_family_counts[i][j],
                });
            }
            if sk.a_meta[i][j] != derived[i][j] {
                meta_adjacency_mismatches.push(MetaCellMismatch {
                    row,
                    col,
                    published: sk.a_meta[i][j].clone(),
                    derived: derived[i][j].clone(),
                });
            }
        }
    }

    let mut generator_mismatches = Vec::new();
    for (family, published) in sk.generators {
        let ours = derived_generator(family);
        for (i, row) in MetaType::ALL.into_iter().enumerate() {
            for (j, col) in MetaType::ALL.into_iter().enumerate() {
                if published[i][j] != ours[i][j] {
                    generator_mismatches.push(GeneratorMismatch {
                        family,
                        row,
                        col,
                        published: published[i][j],
                        derived: ours[i][j],
                    });
                }
            }
        }
    }

    FactorizationReport {
        product,
        cartan_diagonal,
        cartan_proportional_to_identity: cartan_diagonal.iter().all(|&x| x == cartan_diagonal[0]),
        derived_family_counts,
        off_diagonal_mismatches,
        meta_adjacency_mismatches,
        generator_mismatches,
    }
}

/// Row and column order of the join matrix.
pub const JOIN_ORDER: [LinkFamily; 4] = [LeadsTo, Contains, Expresses, Near];

/// The published join matrix, rows and columns L, C, E, N.
pub fn paper_join_matrix() -> [[BTreeSet<MetaType>; 4]; 4] {
    let s = |ms: &[MetaType]| ms.iter().copied().collect::<BTreeSet<_>>();
    let e = s(&[Event]);
    let et = s(&[Event, Thing]);
    let etc = s(&[Event, Thing, Concept]);
    [
        [e.clone(), e.clone(), e.clone(), e.clone()],
        [e.clone(), et.clone(), et.clone(), et.clone()],
        [e.clone(), et.clone(), etc.clone(), etc.clone()],
        [e, et.clone(), etc.clone(), etc],
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JoinCell {
    pub first: LinkFamily,
    pub second: LinkFamily,
    pub published: BTreeSet<MetaType>,
    pub derived: BTreeSet<MetaType>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JoinDiff {
    /// All sixteen cells in row-major L, C, E, N order.
    pub cells: Vec<JoinCell>,
}

impl JoinDiff {
    pub fn mismatches(&self) -> impl Iterator<Item = &JoinCell> {
        self.cells.iter().filter(|c| !c.matches)
    }

    /// Fixed-layout text table: `published / derived` per cell, with `*`
    /// marking disagreement.
    pub fn to_table(&self) -> String {
        let mut out = String::from("first\\second");
        for f in JOIN_ORDER {
            out.push_str(&format!(" | {:<14}", f.symbol()));
        }
        out.push('\n');
        for row in self.cells.chunks(4) {
            out.push_str(&format!("{:<12}", row[0].first.symbol()));
            for c in row {
                let mark = if c.matches { ' ' } else { '*' };
                let text = format!("{}/{}{}", format_meta_set(&c.published), format_meta_set(&c.derived), mark);
                out.push_str(&format!(" | {text:<14}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Compares [`join_types`] with the published join matrix.
pub fn join_diff() -> JoinDiff {
    let paper = paper_join_matrix();
    let mut cells = Vec::with_capacity(16);
    for (i, first) in JOIN_ORDER.into_iter().enumerate() {
        for (j, second) in JOIN_ORDER.into_iter().enumerate() {
            let derived = join_types(first, second);
            let published = paper[i][j].clone();
            cells.push(JoinCell { first, second, matches: derived == published, published, derived });
        }
    }
    JoinDiff { cells }
}
