//! Link labels and the signed types they stand for.

use std::collections::BTreeMap;

use crate::types::SignedLinkType;

/// Default labels. Forward and reverse readings of each family, plus the
/// family names themselves.
const DEFAULT_ALIASES: &[(&str, &str)] = &[
    // N
    ("near", "N"),
    ("is close to", "N"),
    ("is similar to", "N"),
    ("sounds like", "N"),
    ("is correlated with", "N"),
    // L
    ("leads to", "+L"),
    ("enables", "+L"),
    ("causes", "+L"),
    ("precedes", "+L"),
    ("to the left of", "+L"),
    ("depends on", "-L"),
    ("is caused by", "-L"),
    ("follows", "-L"),
    ("to the right of", "-L"),
    // C
    ("contains", "+C"),
    ("surrounds", "+C"),
    ("generalizes", "+C"),
    ("is a part of", "-C"),
    ("occupies", "-C"),
    ("inside", "-C"),
    ("is an aspect of", "-C"),
    ("exemplifies", "-C"),
    // E
    ("expresses", "+E"),
    ("has name or value", "+E"),
    ("has property", "+E"),
    ("expresses attribute", "+E"),
    ("promises", "+E"),
    ("has approximation", "+E"),
    ("is the value of property", "-E"),
    ("is a property of", "-E"),
    ("is an attribute expressed by", "-E"),
    ("approximates", "-E"),
];

/// Labels of the N family that denote spatial or metric closeness rather
/// than likeness.
pub const PROXIMITY_LABELS: &[&str] = &["near", "is near", "is close to", "is next to"];

/// Trims, collapses internal whitespace runs to one space. Case is kept.
pub fn tidy_label(label: &str) -> String {
    label.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Lookup key: tidied and lower-cased.
pub fn label_key(label: &str) -> String {
    tidy_label(label).to_lowercase()
}

/// Reasons a label cannot be registered.
pub fn check_label(label: &str) -> Result<(), String> {
    let tidy = tidy_label(label);
    if tidy.is_empty() {
        return Err("link label is empty".into());
    }
    if let Some(c) = tidy.chars().find(|c| matches!(c, '(' | ')') || c.is_control()) {
        return Err(format!("link label `{tidy}` contains forbidden character {c:?}"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct AliasEntry {
    label: String,
    typ: SignedLinkType,
}

/// Case-insensitive map from link labels to signed types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AliasTable {
    entries: BTreeMap<String, AliasEntry>,
}

impl Default for AliasTable {
    fn default() -> Self {
        let mut table = AliasTable::empty();
        for (label, typ) in DEFAULT_ALIASES {
            table
                .insert(label, typ.parse().expect("default alias types are valid"))
                .expect("default aliases are valid labels");
        }
        table
    }
}

impl AliasTable {
    pub fn empty() -> Self {
        AliasTable { entries: BTreeMap::new() }
    }

    /// Registers `label`, replacing any previous mapping. Returns the
    /// previous type, if any.
    pub fn insert(&mut self, label: &str, typ: SignedLinkType) -> Result<Option<SignedLinkType>, String> {
        check_label(label)?;
        let previous = self.entries.insert(label_key(label), AliasEntry { label: tidy_label(label), typ });
        Ok(previous.map(|e| e.typ))
    }

    pub fn resolve(&self, label: &str) -> Option<SignedLinkType> {
        self.entries.get(&label_key(label)).map(|e| e.typ)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by lookup key.
    pub fn iter(&self) -> impl Iterator<Item = (&str, SignedLinkType)> {
        self.entries.values().map(|e| (e.label.as_str(), e.typ))
    }

    /// Entries that are absent from, or map differently in, `base`.
    pub fn difference<'a>(&'a self, base: &'a AliasTable) -> impl Iterator<Item = (&'a str, SignedLinkType)> + 'a {
        self.iter().filter(move |(label, typ)| base.resolve(label) != Some(*typ))
    }

    /// Copies every entry of `other` over this table.
    pub fn extend_from(&mut self, other: &AliasTable) {
        for (key, entry) in &other.entries {
            self.entries.insert(key.clone(), entry.clone());
        }
    }

    /// First registered label for `typ`, used when a link is added by type.
    pub fn default_label(&self, typ: SignedLinkType) -> Option<&str> {
        DEFAULT_ALIASES
            .iter()
            .find(|(_, t)| t.parse::<SignedLinkType>().ok() == Some(typ))
            .map(|(label, _)| *label)
            .filter(|label| self.resolve(label) == Some(typ))
            .or_else(|| self.iter().find(|(_, t)| *t == typ).map(|(l, _)| l))
    }
}
