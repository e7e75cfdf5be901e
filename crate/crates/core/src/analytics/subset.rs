use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::camps::CampDimension;
use crate::error::{Error, Result};
use crate::labels::{FrameClass, Label, ValueClass};
use crate::model::{Argument, IssueId, PostId, Stance};
use crate::store::GraphStore;

/// Conjunctive argument filter.
///
/// Text form: `;`-separated `field:value` predicates, e.g.
/// `issue:i1;stance:pro;frame:morality;value:tradition;camp.ideology:left;author_known:true`.
/// Fields are `issue`, `category`, `stance`, `frame`, `value`,
/// `camp.<dimension>` and `author_known`. `frame`, `value` and `camp.*` may
/// repeat; the empty selector matches every argument.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selector {
    pub issue: Option<IssueId>,
    pub category: Option<String>,
    pub stance: Option<Stance>,
    pub frames: BTreeSet<FrameClass>,
    pub values: BTreeSet<ValueClass>,
    pub camps: BTreeSet<(CampDimension, String)>,
    pub author_known: Option<bool>,
}

fn selector_err(field: &str, reason: impl Into<String>) -> Error {
    Error::Selector {
        field: field.to_owned(),
        reason: reason.into(),
    }
}

fn set_once<T>(slot: &mut Option<T>, field: &str, value: T) -> Result<()> {
    if slot.is_some() {
        return Err(selector_err(field, "given more than once"));
    }
    *slot = Some(value);
    Ok(())
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Selector> {
        let mut sel = Selector::default();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (field, value) = part
                .split_once(':')
                .ok_or_else(|| selector_err(part, "expected field:value"))?;
            let (field, value) = (field.trim().to_ascii_lowercase(), value.trim());
            if value.is_empty() {
                return Err(selector_err(&field, "empty value"));
            }
            match field.as_str() {
                "issue" => set_once(&mut sel.issue, &field, IssueId::new(value))?,
                "category" => set_once(&mut sel.category, &field, value.to_owned())?,
                "stance" => {
                    let s = value.parse::<Stance>().map_err(|e| selector_err(&field, e))?;
                    set_once(&mut sel.stance, &field, s)?
                }
                "frame" => {
                    sel.frames
                        .insert(value.parse().map_err(|e: String| selector_err(&field, e))?);
                }
                "value" => {
                    sel.values
                        .insert(value.parse().map_err(|e: String| selector_err(&field, e))?);
                }
                "author_known" => {
                    let b = match value.to_ascii_lowercase().as_str() {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        _ => return Err(selector_err(&field, "expected true or false")),
                    };
                    set_once(&mut sel.author_known, &field, b)?
                }
                f => match f.strip_prefix("camp.") {
                    Some(dim) => {
                        let dim: CampDimension = dim.parse().map_err(|e: String| selector_err(&field, e))?;
                        let camp = dim.camp(value).ok_or_else(|| {
                            selector_err(&field, format!("unknown {dim} camp '{value}'"))
                        })?;
                        sel.camps.insert((dim, camp.to_owned()));
                    }
                    None => return Err(selector_err(f, "unknown field")),
                },
            }
        }
        Ok(sel)
    }
}

/// Canonical text form; parses back to an equal selector.
impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(i) = &self.issue {
            parts.push(format!("issue:{i}"));
        }
        if let Some(c) = &self.category {
            parts.push(format!("category:{c}"));
        }
        if let Some(s) = self.stance {
            parts.push(format!("stance:{s}"));
        }
        parts.extend(self.frames.iter().map(|x| format!("frame:{}", x.name())));
        parts.extend(self.values.iter().map(|x| format!("value:{}", x.name())));
        parts.extend(self.camps.iter().map(|(d, c)| format!("camp.{d}:{c}")));
        if let Some(b) = self.author_known {
            parts.push(format!("author_known:{b}"));
        }
        f.write_str(&parts.join(";"))
    }
}

impl Selector {
    pub fn all() -> Selector {
        Selector::default()
    }

    pub fn issue(id: &str) -> Selector {
        Selector {
            issue: Some(IssueId::new(id)),
            ..Selector::default()
        }
    }

    pub fn with_stance(mut self, stance: Stance) -> Selector {
        self.stance = Some(stance);
        self
    }

    /// Whether this selector mentions an issue that does not exist.
    pub fn check(&self, store: &GraphStore) -> Result<()> {
        match &self.issue {
            Some(i) if store.issue(i.as_str()).is_none() => Err(Error::NotFound {
                kind: "issue",
                id: i.to_string(),
            }),
            _ => Ok(()),
        }
    }

    pub fn matches(&self, store: &GraphStore, arg: &Argument) -> bool {
        if self.issue.as_ref().is_some_and(|i| *i != arg.issue_id) {
            return false;
        }
        if let Some(c) = &self.category {
            match store.issue(arg.issue_id.as_str()) {
                Some(issue) if issue.category == *c => {}
                _ => return false,
            }
        }
        if self.stance.is_some_and(|s| s != arg.stance) {
            return false;
        }
        if !self.frames.is_subset(&arg.frames) || !self.values.is_subset(&arg.values) {
            return false;
        }
        if let Some(known) = self.author_known {
            if known != arg.author_id.is_some() {
                return false;
            }
        }
        if !self.camps.is_empty() {
            let Some(camps) = arg.author_id.as_ref().and_then(|a| store.camps(a.as_str())) else {
                return false;
            };
            if !self.camps.iter().all(|(dim, camp)| camps.camp(*dim) == camp) {
                return false;
            }
        }
        true
    }
}

/// Arguments matching a selector, in post-id order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgumentSubset {
    pub selector: String,
    pub members: Vec<PostId>,
    pub n: usize,
}

impl ArgumentSubset {
    pub fn from_members(selector: impl Into<String>, members: impl IntoIterator<Item = PostId>) -> Self {
        let members: BTreeSet<PostId> = members.into_iter().collect();
        let members: Vec<PostId> = members.into_iter().collect();
        ArgumentSubset {
            selector: selector.into(),
            n: members.len(),
            members,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// All other arguments in the store.
    pub fn complement(&self, store: &GraphStore) -> ArgumentSubset {
        ArgumentSubset::from_members(
            format!("not({})", self.selector),
            store
                .arguments()
                .filter(|a| self.members.binary_search(&a.post_id).is_err())
                .map(|a| a.post_id.clone()),
        )
    }

    /// Members of `self` that are not in `other`.
    pub fn minus(&self, other: &ArgumentSubset) -> ArgumentSubset {
        ArgumentSubset::from_members(
            format!("{} minus {}", self.selector, other.selector),
            self.members
                .iter()
                .filter(|p| other.members.binary_search(p).is_err())
                .cloned(),
        )
    }

    pub fn arguments<'a>(&'a self, store: &'a GraphStore) -> impl Iterator<Item = &'a Argument> + 'a {
        self.members
            .iter()
            .map(move |p| store.argument(p.as_str()).expect("subset members exist"))
    }
}

pub fn select(store: &GraphStore, selector: &Selector) -> Result<ArgumentSubset> {
    selector.check(store)?;
    Ok(ArgumentSubset::from_members(
        selector.to_string(),
        store
            .arguments()
            .filter(|a| selector.matches(store, a))
            .map(|a| a.post_id.clone()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let text = "issue:i1;stance:pro;frame:morality;value:tradition;camp.ideology:left;author_known:true";
        let sel: Selector = text.parse().unwrap();
        assert_eq!(sel.stance, Some(Stance::Pro));
        assert_eq!(sel.to_string(), text);
        assert_eq!(sel.to_string().parse::<Selector>().unwrap(), sel);
        assert_eq!("".parse::<Selector>().unwrap(), Selector::all());
    }

    #[test]
    fn errors_name_the_field() {
        for (text, field) in [
            ("stance:maybe", "stance"),
            ("frame:happiness", "frame"),
            ("camp.ideology:centrist", "camp.ideology"),
            ("camp.height:tall", "camp.height"),
            ("color:red", "color"),
            ("issue:a;issue:b", "issue"),
            ("author_known:perhaps", "author_known"),
        ] {
            match text.parse::<Selector>() {
                Err(Error::Selector { field: f, .. }) => assert_eq!(f, field, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
