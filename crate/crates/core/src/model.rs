//! Domain entities: issues, arguments and author profiles.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::labels::{FrameClass, ValueClass};

macro_rules! opaque_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

opaque_id!(
    /// Identifier of a debated issue. Compared byte-wise.
    IssueId
);
opaque_id!(
    /// Identifier of one opinion post.
    PostId
);
opaque_id!(AuthorId);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stance {
    Pro,
    Con,
}

impl Stance {
    pub fn opposite(self) -> Stance {
        match self {
            Stance::Pro => Stance::Con,
            Stance::Con => Stance::Pro,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Stance::Pro => "pro",
            Stance::Con => "con",
        }
    }

    /// Rendering used by the portal and the conclusion prompt.
    pub fn yes_no(self) -> &'static str {
        match self {
            Stance::Pro => "Yes",
            Stance::Con => "No",
        }
    }
}

impl FromStr for Stance {
    type Err = String;

    /// Accepts `pro`/`con` and the portal's `yes`/`no`, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pro" | "yes" => Ok(Stance::Pro),
            "con" | "no" => Ok(Stance::Con),
            _ => Err("invalid stance".to_owned()),
        }
    }
}

impl fmt::Display for Stance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Issue {
    pub issue_id: IssueId,
    pub question: String,
    pub category: String,
    /// Maintained by the store, in insertion order.
    pub argument_ids: Vec<PostId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Argument {
    pub post_id: PostId,
    pub issue_id: IssueId,
    pub stance: Stance,
    pub header: String,
    pub premise: String,
    pub conclusion: Option<String>,
    pub frames: BTreeSet<FrameClass>,
    pub values: BTreeSet<ValueClass>,
    /// Absent for anonymous posts and deleted profiles.
    pub author_id: Option<AuthorId>,
    /// Set once the argument has been linked to the concept store.
    pub concept_graph_id: Option<PostId>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AuthorProfile {
    pub author_id: AuthorId,
    #[serde(default)]
    pub gender: String,
    #[serde(default)]
    pub ideology: String,
    #[serde(default)]
    pub religion: String,
    #[serde(default)]
    pub income: String,
    #[serde(default)]
    pub education: String,
    #[serde(default)]
    pub ethnicity: String,
    #[serde(default)]
    pub free_text: BTreeMap<String, String>,
    #[serde(default)]
    pub friends: BTreeSet<AuthorId>,
}

impl Default for AuthorId {
    fn default() -> Self {
        AuthorId(String::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stance_normalization() {
        assert_eq!("Yes".parse(), Ok(Stance::Pro));
        assert_eq!("no".parse(), Ok(Stance::Con));
        assert_eq!(" PRO ".parse(), Ok(Stance::Pro));
        assert_eq!("maybe".parse::<Stance>(), Err("invalid stance".to_owned()));
        assert_eq!(Stance::Pro.opposite(), Stance::Con);
    }
}
