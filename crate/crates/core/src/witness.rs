//! Counterexamples produced by the axiom checkers.

use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

/// A failed identity: which condition, at which basis indices, and the two
/// evaluated sides as coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: String,
    pub basis: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

/// `Ok(())` when every instance holds, otherwise the first failure found
/// in basis order.
pub type Verdict = Result<(), Witness>;

impl Witness {
    pub fn new(condition: impl Into<String>, basis: Vec<usize>, lhs: Vec<Scalar>, rhs: Vec<Scalar>) -> Self {
        Witness {
            condition: condition.into(),
            basis,
            lhs,
            rhs,
        }
    }
}

pub(crate) fn fmt_coords(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.basis.iter().map(|i| (i + 1).to_string()).collect();
        write!(
            f,
            "{} fails at basis [{}]: lhs = {}, rhs = {}",
            self.condition,
            idx.join(", "),
            fmt_coords(&self.lhs),
            fmt_coords(&self.rhs)
        )
    }
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let strs = |v: &[Scalar]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("Witness", 4)?;
        st.serialize_field("condition", &self.condition)?;
        st.serialize_field("basis", &self.basis.iter().map(|i| i + 1).collect::<Vec<_>>())?;
        st.serialize_field("lhs", &strs(&self.lhs))?;
        st.serialize_field("rhs", &strs(&self.rhs))?;
        st.end()
    }
}
