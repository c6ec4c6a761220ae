use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    /// Kleene conjunction.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Holds, Holds) => Holds,
            _ => Inconclusive,
        }
    }

    /// Kleene disjunction.
    pub fn or(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Holds, _) | (_, Holds) => Holds,
            (Fails, Fails) => Fails,
            _ => Inconclusive,
        }
    }

    pub fn is_conclusive(self) -> bool {
        self != Verdict::Inconclusive
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A verdict together with a short free-form explanation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Decision {
    pub fn new(verdict: Verdict) -> Self {
        Decision {
            verdict,
            note: None,
        }
    }

    pub fn holds() -> Self {
        Decision::new(Verdict::Holds)
    }

    pub fn fails() -> Self {
        Decision::new(Verdict::Fails)
    }

    pub fn inconclusive() -> Self {
        Decision::new(Verdict::Inconclusive)
    }

    pub fn from_bool(b: bool) -> Self {
        Decision::new(Verdict::from_bool(b))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    pub fn is_inconclusive(&self) -> bool {
        self.verdict == Verdict::Inconclusive
    }
}

impl From<Verdict> for Decision {
    fn from(v: Verdict) -> Self {
        Decision::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::Verdict::*;

    #[test]
    fn kleene_tables() {
        assert_eq!(Holds.and(Inconclusive), Inconclusive);
        assert_eq!(Fails.and(Inconclusive), Fails);
        assert_eq!(Holds.or(Inconclusive), Holds);
        assert_eq!(Fails.or(Inconclusive), Inconclusive);
        assert_eq!(Fails.or(Fails), Fails);
        assert_eq!(Holds.and(Holds), Holds);
    }
}
