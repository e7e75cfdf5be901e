//! Coarse stakeholder camps derived from author profile fields.
//!
//! Each trait dimension maps the portal's literal answers onto a small closed
//! set of camps. Anything not listed (empty fields, free-form text, unseen
//! literals) lands in `unknown`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::{AuthorId, AuthorProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CampDimension {
    Ideology,
    Income,
    Ethnicity,
    Gender,
    Faith,
    Education,
}

impl CampDimension {
    pub const ALL: [CampDimension; 6] = [
        CampDimension::Ideology,
        CampDimension::Income,
        CampDimension::Ethnicity,
        CampDimension::Gender,
        CampDimension::Faith,
        CampDimension::Education,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CampDimension::Ideology => "ideology",
            CampDimension::Income => "income",
            CampDimension::Ethnicity => "ethnicity",
            CampDimension::Gender => "gender",
            CampDimension::Faith => "faith",
            CampDimension::Education => "education",
        }
    }

    /// The closed camp set of this dimension; `unknown` is always last.
    pub fn camps(self) -> &'static [&'static str] {
        match self {
            CampDimension::Ideology => &["left", "right", UNKNOWN],
            CampDimension::Income => &["low", "medium", "high", UNKNOWN],
            CampDimension::Ethnicity => &["person_of_color", "white", UNKNOWN],
            CampDimension::Gender => &["female", "male", "diverse", UNKNOWN],
            CampDimension::Faith => &["yes", "no", UNKNOWN],
            CampDimension::Education => &["low", "medium", "high", UNKNOWN],
        }
    }

    /// Validates a camp name against this dimension's closed set.
    pub fn camp(self, name: &str) -> Option<&'static str> {
        let name = name.trim().to_ascii_lowercase();
        self.camps().iter().copied().find(|c| *c == name)
    }

    fn table(self) -> &'static [(&'static str, &'static [&'static str])] {
        match self {
            CampDimension::Ideology => IDEOLOGY,
            CampDimension::Income => INCOME,
            CampDimension::Ethnicity => ETHNICITY,
            CampDimension::Gender => GENDER,
            CampDimension::Faith => FAITH,
            CampDimension::Education => EDUCATION,
        }
    }

    /// Raw profile field feeding this dimension.
    fn field(self, profile: &AuthorProfile) -> &str {
        match self {
            CampDimension::Ideology => &profile.ideology,
            CampDimension::Income => &profile.income,
            CampDimension::Ethnicity => &profile.ethnicity,
            CampDimension::Gender => &profile.gender,
            CampDimension::Faith => &profile.religion,
            CampDimension::Education => &profile.education,
        }
    }

    /// Table lookup of one raw answer. Total: unlisted input yields `unknown`.
    pub fn classify(self, raw: &str) -> &'static str {
        let key = literal_key(raw);
        if key.is_empty() {
            return UNKNOWN;
        }
        for &(camp, literals) in self.table() {
            if literals.iter().any(|lit| literal_key(lit) == key) {
                return camp;
            }
        }
        UNKNOWN
    }
}

impl fmt::Display for CampDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CampDimension {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        CampDimension::ALL
            .into_iter()
            .find(|d| d.as_str() == s || (s == "religion" && *d == CampDimension::Faith))
            .ok_or_else(|| format!("unknown camp dimension '{s}'"))
    }
}

pub const UNKNOWN: &str = "unknown";

/// Case-insensitive, whitespace-collapsed comparison key.
fn literal_key(raw: &str) -> String {
    raw.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

const IDEOLOGY: &[(&str, &[&str])] = &[
    (
        "left",
        &["Anarchist", "Communist", "Green", "Liberal", "Libertarian", "Socialist"],
    ),
    ("right", &["Conservative", "Moderate", "Progressive"]),
    (
        UNKNOWN,
        &["Labor", "Other", "Apathetic", "Not Saying", "Undecided"],
    ),
];

const INCOME: &[(&str, &[&str])] = &[
    ("low", &["Less than $25,000", "$25,000 to $35,000"]),
    (
        "medium",
        &["$35,000 to $50,000", "$50,000 to $75,000", "$75,000 to $100,000"],
    ),
    ("high", &["$100,000 to $150,000", "More than $150,000"]),
    (UNKNOWN, &["Not Saying", "Other"]),
];

const ETHNICITY: &[(&str, &[&str])] = &[
    (
        "person_of_color",
        &[
            "Asian",
            "East Indian",
            "Black",
            "Latino",
            "Other",
            "Middle Eastern",
            "Native American",
            "Pacific Islander",
        ],
    ),
    ("white", &["White"]),
    (UNKNOWN, &["Not Saying"]),
];

const GENDER: &[(&str, &[&str])] = &[
    ("female", &["Female"]),
    ("male", &["Male"]),
    (
        "diverse",
        &[
            "Genderqueer",
            "Agender",
            "Bigender",
            "Transgender Female",
            "Transgender Male",
            "Androgyne",
        ],
    ),
    (UNKNOWN, &["Prefer not to say"]),
];

const FAITH: &[(&str, &[&str])] = &[
    (
        "yes",
        &[
            "Christian",
            "Christian - Methodist",
            "Christian - Protestant",
            "Christian - Lutheran",
            "Christian - Baptist",
            "Christian - Catholic",
            "Christian - Pentecostal",
            "Christian - Latter-Day Saints",
            "Christian - Assemblies of God",
            "Christian - Church of Christ",
            "Christian - Anglican",
            "Christian - Greek Orthodox",
            "Christian - Presbytarian",
            "Christian - Episcopalian",
            "Christian - Seventh-Day Adventist",
            "Christian - Jehovah's Witness",
            "Christian - Amish",
            "Christian - Mennonite",
            "Spiritism",
            "Islamic",
            "Muslim - Sunni",
            "Muslim - Shiite",
            "Muslim - Sufi",
            "Muslim",
            "Yazdânism",
            "Buddhist",
            "Buddhist - Vajrayana",
            "Buddhist - Mahayana",
            "Buddhist - Theravada",
            "Hindu",
            "Hindu - Vaishnavism",
            "Hindu - Saivite",
            "Hindu - Smartha",
            "Hindu - Shakta",
            "Jain",
            "Jewish - Reform",
            "Jewish - Conservative",
            "Jewish - Orthodox",
            "Jewish",
            "Cao Dai",
            "Taoism",
            "Pagan",
            "Neo-Paganism",
            "Mazdakism",
            "Primal-Indigenous",
            "Deism",
            "Unitarian Universalist",
            "Shinto",
            "Scientology",
            "Sikh",
            "Bahá'í",
            "Bábism",
            "Confucian",
            "African Traditional & Diasporic",
            "Wikkan",
            "Rastafarianism",
            "Zoroastrianism",
            "Yarsani",
            "Mandaeism",
            "Manichaeism",
            "Daoist",
            "Zurvanism",
            "Yazidi",
            "Tenrikyo",
            "Pastafarian",
            "Discordian",
        ],
    ),
    ("no", &["Atheist", "Secular", "Juche"]),
    (UNKNOWN, &["Not Saying", "Agnostic", "Other"]),
];

const EDUCATION: &[(&str, &[&str])] = &[
    ("low", &["High School"]),
    ("medium", &["Some College", "Associates Degree"]),
    (
        "high",
        &["Bachelors Degree", "Graduate Degree", "Post Doctoral"],
    ),
    (UNKNOWN, &["Not Saying", "Other"]),
];

/// One camp per dimension for a single author.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampAssignment {
    pub author_id: AuthorId,
    pub ideology: String,
    pub income: String,
    pub ethnicity: String,
    pub gender: String,
    pub faith: String,
    pub education: String,
}

impl CampAssignment {
    pub fn camp(&self, dim: CampDimension) -> &str {
        match dim {
            CampDimension::Ideology => &self.ideology,
            CampDimension::Income => &self.income,
            CampDimension::Ethnicity => &self.ethnicity,
            CampDimension::Gender => &self.gender,
            CampDimension::Faith => &self.faith,
            CampDimension::Education => &self.education,
        }
    }
}

pub fn assign_camps(profile: &AuthorProfile) -> CampAssignment {
    let classify = |dim: CampDimension| dim.classify(dim.field(profile)).to_owned();
    CampAssignment {
        author_id: profile.author_id.clone(),
        ideology: classify(CampDimension::Ideology),
        income: classify(CampDimension::Income),
        ethnicity: classify(CampDimension::Ethnicity),
        gender: classify(CampDimension::Gender),
        faith: classify(CampDimension::Faith),
        education: classify(CampDimension::Education),
    }
}

/// Every (dimension, literal, camp) triple of the clustering tables.
pub fn table_entries() -> Vec<(CampDimension, &'static str, &'static str)> {
    let mut out = Vec::new();
    for dim in CampDimension::ALL {
        for &(camp, literals) in dim.table() {
            for lit in literals {
                out.push((dim, *lit, camp));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile() -> AuthorProfile {
        AuthorProfile {
            author_id: AuthorId::new("u1"),
            ..Default::default()
        }
    }

    #[test]
    fn spot_checks() {
        let mut p = profile();
        p.ideology = "Anarchist".into();
        p.religion = "Atheist".into();
        p.education = "Post Doctoral".into();
        let camps = assign_camps(&p);
        assert_eq!(camps.ideology, "left");
        assert_eq!(camps.faith, "no");
        assert_eq!(camps.education, "high");
        assert_eq!(camps.income, UNKNOWN);
        assert_eq!(camps.gender, UNKNOWN);
    }

    #[test]
    fn free_text_and_case() {
        assert_eq!(CampDimension::Ideology.classify("i like turtles"), UNKNOWN);
        assert_eq!(CampDimension::Ideology.classify("  liberal "), "left");
        assert_eq!(CampDimension::Ethnicity.classify("Other"), "person_of_color");
        assert_eq!(CampDimension::Faith.classify("BAHÁ'Í"), "yes");
        assert_eq!(CampDimension::Income.classify(""), UNKNOWN);
    }

    #[test]
    fn every_table_camp_is_in_closed_set() {
        for (dim, _, camp) in table_entries() {
            assert!(dim.camps().contains(&camp), "{dim}: {camp}");
        }
    }

    #[test]
    fn no_literal_is_listed_twice_within_a_dimension() {
        for dim in CampDimension::ALL {
            let mut keys: Vec<String> = table_entries()
                .into_iter()
                .filter(|(d, _, _)| *d == dim)
                .map(|(_, lit, _)| literal_key(lit))
                .collect();
            let n = keys.len();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), n, "{dim}");
        }
    }
}
