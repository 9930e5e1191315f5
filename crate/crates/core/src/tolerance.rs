use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Tolerance classes shared by scenario files, the CLI and the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TolClass {
    /// Algebraic identities that hold to rounding.
    Identity,
    /// Forward-mode jets against central differences.
    AdFd,
    /// Closed-form deformation tensor against the difference of connections.
    Deformation,
    /// Curvature transfer predictions against direct curvature.
    Transfer,
    /// Identity chain under the flatness premise.
    Theorem,
    /// Normalized curvature bound for "locally flat".
    Flatness,
}

impl TolClass {
    pub const ALL: [TolClass; 6] = [
        TolClass::Identity,
        TolClass::AdFd,
        TolClass::Deformation,
        TolClass::Transfer,
        TolClass::Theorem,
        TolClass::Flatness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TolClass::Identity => "identity",
            TolClass::AdFd => "ad_fd",
            TolClass::Deformation => "deformation",
            TolClass::Transfer => "transfer",
            TolClass::Theorem => "theorem",
            TolClass::Flatness => "flatness",
        }
    }

    pub fn default_value(self) -> f64 {
        match self {
            TolClass::Identity => 1e-10,
            TolClass::AdFd => 1e-5,
            TolClass::Deformation => 1e-8,
            TolClass::Transfer | TolClass::Theorem | TolClass::Flatness => 1e-6,
        }
    }
}

impl fmt::Display for TolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TolClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TolClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = TolClass::ALL.iter().map(|c| c.name()).collect();
                format!("unknown tolerance `{s}` (expected one of {})", known.join(", "))
            })
    }
}

/// Resolved tolerances: defaults, overlaid by scenario values, overlaid by
/// explicit overrides.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances(BTreeMap<TolClass, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances(TolClass::ALL.iter().map(|c| (*c, c.default_value())).collect())
    }
}

impl Tolerances {
    pub fn get(&self, class: TolClass) -> f64 {
        self.0.get(&class).copied().unwrap_or(class.default_value())
    }

    pub fn set(&mut self, class: TolClass, value: f64) {
        self.0.insert(class, value);
    }

    pub fn overlay(&mut self, values: &BTreeMap<TolClass, f64>) {
        for (k, v) in values {
            self.set(*k, *v);
        }
    }
}
