//! Claim records shared by verification reports.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

impl Claim {
    pub fn new(id: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Claim { id: id.into(), pass, detail: detail.into() }
    }

    /// A claim comparing an observed value with an expected one.
    pub fn eq<T: PartialEq + std::fmt::Debug>(id: impl Into<String>, observed: T, expected: T) -> Self {
        let pass = observed == expected;
        Claim::new(id, pass, format!("observed {:?}, expected {:?}", observed, expected))
    }
}

pub fn all_pass(claims: &[Claim]) -> bool {
    claims.iter().all(|c| c.pass)
}
