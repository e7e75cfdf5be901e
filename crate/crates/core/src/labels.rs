//! Closed label sets: the 15 generic media frames and the 20 human-value
//! categories.
//!
//! Both enumerations serialize as their canonical lowercase names
//! (`"health and safety"`, `"universalism: nature"`). Parsing is lenient about
//! case, punctuation and `&` vs `and`, so upstream files spelling
//! `HEALTH AND SAFETY`, `health_and_safety` or `Universalism -- Nature` all
//! resolve to the same class.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Common surface of [`FrameClass`] and [`ValueClass`].
pub trait Label:
    Copy + Ord + Eq + std::hash::Hash + fmt::Debug + fmt::Display + FromStr<Err = String> + 'static
{
    const KIND: &'static str;
    const ALL: &'static [Self];

    fn name(self) -> &'static str;

    fn index(self) -> usize;
}

/// Key used for lenient matching: lowercase alphanumerics only, `&` read as "and".
fn match_key(raw: &str) -> String {
    raw.replace('&', "and")
        .chars()
        .filter(|c| c.is_alphanumeric())
        .flat_map(char::to_lowercase)
        .collect()
}

macro_rules! closed_label {
    (
        $(#[$meta:meta])*
        $name:ident, $kind:literal, [ $( $variant:ident => $canon:literal $(| $alias:literal)* ),+ $(,)? ]
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl Label for $name {
            const KIND: &'static str = $kind;
            const ALL: &'static [Self] = &[$($name::$variant),+];

            fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $canon),+
                }
            }

            fn index(self) -> usize {
                self as usize
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let key = match_key(s);
                $(
                    if key == match_key($canon) $(|| key == match_key($alias))* {
                        return Ok($name::$variant);
                    }
                )+
                Err(format!("unknown {} class '{}'", $kind, s))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(self.name())
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let raw = String::deserialize(deserializer)?;
                raw.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

closed_label!(
    /// Generic media frame emphasized by an argument.
    FrameClass, "frame", [
        Economic => "economic",
        CapacityAndResources => "capacity and resources",
        Morality => "morality",
        FairnessAndEquality => "fairness and equality",
        Legality => "legality, constitutionality and jurisprudence" | "legality",
        PolicyPrescription => "policy prescription and evaluation" | "policy prescription",
        CrimeAndPunishment => "crime and punishment",
        SecurityAndDefense => "security and defense",
        HealthAndSafety => "health and safety",
        QualityOfLife => "quality of life",
        CulturalIdentity => "cultural identity",
        PublicOpinion => "public opinion",
        Political => "political",
        ExternalRegulation => "external regulation and reputation" | "external regulation",
        Other => "other",
    ]
);

closed_label!(
    /// Human value an argument appeals to.
    ValueClass, "value", [
        SelfDirectionThought => "self-direction: thought",
        SelfDirectionAction => "self-direction: action",
        Stimulation => "stimulation",
        Hedonism => "hedonism",
        Achievement => "achievement",
        PowerDominance => "power: dominance",
        PowerResources => "power: resources",
        Face => "face",
        SecurityPersonal => "security: personal",
        SecuritySocietal => "security: societal",
        Tradition => "tradition",
        ConformityRules => "conformity: rules",
        ConformityInterpersonal => "conformity: interpersonal",
        Humility => "humility",
        BenevolenceCaring => "benevolence: caring",
        BenevolenceDependability => "benevolence: dependability",
        UniversalismConcern => "universalism: concern",
        UniversalismNature => "universalism: nature",
        UniversalismTolerance => "universalism: tolerance",
        UniversalismObjectivity => "universalism: objectivity",
    ]
);

pub const FRAME_COUNT: usize = 15;
pub const VALUE_COUNT: usize = 20;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(FrameClass::ALL.len(), FRAME_COUNT);
        assert_eq!(ValueClass::ALL.len(), VALUE_COUNT);
        for (i, f) in FrameClass::ALL.iter().enumerate() {
            assert_eq!(f.index(), i);
        }
        for (i, v) in ValueClass::ALL.iter().enumerate() {
            assert_eq!(v.index(), i);
        }
    }

    #[test]
    fn lenient_parsing() {
        assert_eq!("HEALTH AND SAFETY".parse(), Ok(FrameClass::HealthAndSafety));
        assert_eq!("health_and_safety".parse(), Ok(FrameClass::HealthAndSafety));
        assert_eq!("capacity & resources".parse(), Ok(FrameClass::CapacityAndResources));
        assert_eq!("legality".parse(), Ok(FrameClass::Legality));
        assert_eq!(
            "LEGALITY, CONSTITUTIONALITY AND JURISPRUDENCE".parse(),
            Ok(FrameClass::Legality)
        );
        assert_eq!("Universalism: nature".parse(), Ok(ValueClass::UniversalismNature));
        assert_eq!("UNIVERSALISM -- NATURE".parse(), Ok(ValueClass::UniversalismNature));
        assert_eq!("self-direction: action".parse(), Ok(ValueClass::SelfDirectionAction));
        assert!("happiness".parse::<FrameClass>().is_err());
        assert!("nature".parse::<ValueClass>().is_err());
    }

    #[test]
    fn names_round_trip() {
        for f in FrameClass::ALL {
            assert_eq!(f.name().parse::<FrameClass>(), Ok(*f));
        }
        for v in ValueClass::ALL {
            assert_eq!(v.name().parse::<ValueClass>(), Ok(*v));
            let json = serde_json::to_string(v).unwrap();
            assert_eq!(serde_json::from_str::<ValueClass>(&json).unwrap(), *v);
        }
    }
}
