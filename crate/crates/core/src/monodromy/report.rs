use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::Rational;

/// One actual pole and the point (if any) whose monodromy witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleVerdict {
    pub pole: Rational,
    pub multiplicity: u32,
    /// Order of `exp(2 pi i pole)`.
    pub order: u64,
    pub witness: Option<String>,
}

impl PoleVerdict {
    pub fn passed(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub prime: u64,
    pub verdicts: Vec<PoleVerdict>,
    pub candidates: BTreeSet<Rational>,
    pub actual: BTreeSet<Rational>,
    /// Eigenvalue orders per declared point.
    pub orders: BTreeMap<String, BTreeSet<u64>>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(PoleVerdict::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PoleVerdict> {
        self.verdicts.iter().filter(|v| !v.passed())
    }

    /// Actual poles that are not candidates; empty for consistent data.
    pub fn unexplained(&self) -> BTreeSet<Rational> {
        self.actual.difference(&self.candidates).cloned().collect()
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(", ")
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}", self.prime)?;
        writeln!(f, "{:<10} {:>4} {:>4}  witness", "pole", "mult", "d")?;
        for v in &self.verdicts {
            let w = match &v.witness {
                Some(p) => p.clone(),
                None => "FAIL (no witness among declared points)".into(),
            };
            writeln!(f, "{:<10} {:>4} {:>4}  {}", v.pole.to_string(), v.multiplicity, v.order, w)?;
        }
        for (point, orders) in &self.orders {
            writeln!(f, "eigenvalue orders at {point}: {}", join(orders))?;
        }
        writeln!(f, "candidate poles: {}", join(&self.candidates))?;
        writeln!(f, "actual poles: {}", join(&self.actual))?;
        let extra = self.unexplained();
        if !extra.is_empty() {
            writeln!(f, "actual poles outside the candidates: {}", join(&extra))?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
