use serde::Serialize;

/// Outcome of a checker. `Indeterminate` means a budget or size guard
/// stopped the check; it never stands for a negative answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Verdict<W> {
    Holds,
    Violated(W),
    Indeterminate(String),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Verdict::Indeterminate(_))
    }

    pub fn violation(&self) -> Option<&W> {
        match self {
            Verdict::Violated(w) => Some(w),
            _ => None,
        }
    }
}
