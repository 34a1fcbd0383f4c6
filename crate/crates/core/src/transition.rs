//! The transition algebra: which `(meta, type, meta)` triples form a legal
//! link, which rule a forbidden triple breaks, and which meta-types may join
//! two consecutive arrows on a path.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::types::{LinkFamily, MetaType, Orientation, SignedLinkType};

use LinkFamily::*;
use MetaType::*;

/// Permitted forward readings `(src, family, dst)`. Reverse readings follow
/// by swapping endpoints; `N` needs equal meta-types.
const FORWARD_TRANSITIONS: [(MetaType, LinkFamily, MetaType); 8] = [
    (Event, LeadsTo, Event),
    (Event, Contains, Event),
    (Event, Contains, Thing),
    (Thing, Contains, Thing),
    (Event, Expresses, Concept),
    (Thing, Expresses, Concept),
    (Concept, Expresses, Event),
    (Concept, Expresses, Concept),
];

/// Reason a transition is forbidden.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransitionRule {
    /// Leads-to arrows run between events only.
    OnlyEventsLead,
    /// Concepts neither contain nor are contained.
    ConceptsNotContained,
    /// An event may hold a thing, a thing cannot hold an event.
    EventNotPartOfThing,
    /// A thing is never the expressed attribute.
    ThingsNotExpressed,
    /// Events and things express concepts only.
    ExpressesConceptsOnly,
    /// Nearness relates nodes of one meta-type.
    NearSameMeta,
}

impl TransitionRule {
    pub fn code(self) -> &'static str {
        match self {
            TransitionRule::OnlyEventsLead => "only-events-lead",
            TransitionRule::ConceptsNotContained => "concepts-not-contained",
            TransitionRule::EventNotPartOfThing => "event-not-part-of-thing",
            TransitionRule::ThingsNotExpressed => "things-not-expressed",
            TransitionRule::ExpressesConceptsOnly => "expresses-concepts-only",
            TransitionRule::NearSameMeta => "near-same-meta",
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            TransitionRule::OnlyEventsLead => "a leads-to arrow must run from an event to an event",
            TransitionRule::ConceptsNotContained => "a concept can neither contain anything nor be contained",
            TransitionRule::EventNotPartOfThing => "an event may contain a thing, but a thing cannot contain an event",
            TransitionRule::ThingsNotExpressed => "a thing cannot be expressed as an attribute",
            TransitionRule::ExpressesConceptsOnly => "events and things can only express concepts",
            TransitionRule::NearSameMeta => "a nearness link must join two nodes of the same meta-type",
        }
    }
}

impl fmt::Display for TransitionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

/// Rewrites a triple into its forward reading; N triples are unchanged.
pub fn canonical_triple(src: MetaType, typ: SignedLinkType, dst: MetaType) -> (MetaType, LinkFamily, MetaType) {
    match typ.orientation() {
        Orientation::Reverse => (dst, typ.family(), src),
        Orientation::Forward | Orientation::Symmetric => (src, typ.family(), dst),
    }
}

/// Returns `Ok(())` for a legal triple, or the rule it breaks.
pub fn check_transition(src: MetaType, typ: SignedLinkType, dst: MetaType) -> Result<(), TransitionRule> {
    let (from, family, to) = canonical_triple(src, typ, dst);
    match family {
        Near if from == to => Ok(()),
        Near => Err(TransitionRule::NearSameMeta),
        LeadsTo if from == Event && to == Event => Ok(()),
        LeadsTo => Err(TransitionRule::OnlyEventsLead),
        Contains => match (from, to) {
            (Concept, _) | (_, Concept) => Err(TransitionRule::ConceptsNotContained),
            (Thing, Event) => Err(TransitionRule::EventNotPartOfThing),
            _ => Ok(()),
        },
        Expresses => match (from, to) {
            (_, Thing) => Err(TransitionRule::ThingsNotExpressed),
            (Event | Thing, Event) => Err(TransitionRule::ExpressesConceptsOnly),
            _ => Ok(()),
        },
    }
}

/// Total predicate over every `(meta, signed type, meta)` triple.
pub fn allowed_transition(src: MetaType, typ: SignedLinkType, dst: MetaType) -> bool {
    check_transition(src, typ, dst).is_ok()
}

/// Meta-types that can sit between an arrow of family `first` and a
/// following arrow of family `second`, both read forward.
pub fn join_types(first: LinkFamily, second: LinkFamily) -> BTreeSet<MetaType> {
    MetaType::ALL
        .into_iter()
        .filter(|&m| {
            let arrives = MetaType::ALL.iter().any(|&s| allowed_transition(s, first.forward(), m));
            let departs = MetaType::ALL.iter().any(|&d| allowed_transition(m, second.forward(), d));
            arrives && departs
        })
        .collect()
}

/// Every signed type legal from `src` to `dst`, in `SignedLinkType::ALL` order.
pub fn allowed_types(src: MetaType, dst: MetaType) -> Vec<SignedLinkType> {
    SignedLinkType::ALL.into_iter().filter(|&t| allowed_transition(src, t, dst)).collect()
}

/// The forward readings the table is built from, for reporting.
pub fn forward_transitions() -> Vec<(MetaType, LinkFamily, MetaType)> {
    let mut rows = FORWARD_TRANSITIONS.to_vec();
    rows.extend(MetaType::ALL.iter().map(|&m| (m, Near, m)));
    rows
}

/// Formats a meta-type set as `e,t,c`.
pub fn format_meta_set(set: &BTreeSet<MetaType>) -> String {
    if set.is_empty() {
        return "-".to_string();
    }
    set.iter().map(|m| m.symbol().to_string()).collect::<Vec<_>>().join(",")
}
