//! Name-keyed registries of verification suites and `hatP` constructions.

use crate::error::{Error, Result};
use crate::exact::{Rational, SizeParam};
use crate::matpoly::MatPoly;
use crate::weight::WeightSpec;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub spec: WeightSpec,
    pub n_max: usize,
}

impl SuiteConfig {
    pub fn new(two_ell: usize, nu: Rational, n_max: usize) -> Result<Self> {
        Ok(SuiteConfig { spec: WeightSpec::new(two_ell, nu)?, n_max })
    }

    pub fn nu(&self) -> &Rational {
        &self.spec.nu
    }

    pub fn size(&self) -> SizeParam {
        self.spec.size
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    /// First failing cell, or the error that stopped the check.
    pub counterexample: Option<String>,
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckOutcome>;
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { suites: Vec::new() }
    }

    pub fn register(&mut self, suite: Box<dyn Suite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    /// `"all"` runs every registered suite in registration order.
    pub fn run(&self, name: &str, cfg: &SuiteConfig) -> Result<Vec<CheckOutcome>> {
        if name == "all" {
            return Ok(self.suites.iter().flat_map(|s| s.run(cfg)).collect());
        }
        self.get(name)
            .map(|s| s.run(cfg))
            .ok_or_else(|| Error::Unsupported(format!("unknown suite '{name}'")))
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut r = SuiteRegistry::empty();
        for s in crate::suites::builtin() {
            r.register(s);
        }
        r
    }
}

pub trait HatPBuilder: Send + Sync {
    fn name(&self) -> &'static str;
    fn build(&self, n: usize, spec: &WeightSpec) -> Result<MatPoly>;
}

struct RecurrenceBuilder;

impl HatPBuilder for RecurrenceBuilder {
    fn name(&self) -> &'static str {
        "recurrence"
    }

    fn build(&self, n: usize, spec: &WeightSpec) -> Result<MatPoly> {
        Ok(crate::mvop::hat_p(n, spec))
    }
}

struct ConnectionBuilder;

impl HatPBuilder for ConnectionBuilder {
    fn name(&self) -> &'static str {
        "connection"
    }

    fn build(&self, n: usize, spec: &WeightSpec) -> Result<MatPoly> {
        crate::connection::synthesize_hat_p(n, &spec.nu, spec.size)
    }
}

pub struct BuilderRegistry {
    builders: Vec<Box<dyn HatPBuilder>>,
}

impl BuilderRegistry {
    pub fn register(&mut self, b: Box<dyn HatPBuilder>) {
        self.builders.retain(|x| x.name() != b.name());
        self.builders.push(b);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.builders.iter().map(|b| b.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn HatPBuilder> {
        self.builders.iter().find(|b| b.name() == name).map(|b| b.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn HatPBuilder> {
        self.builders.iter().map(|b| b.as_ref())
    }
}

impl Default for BuilderRegistry {
    fn default() -> Self {
        BuilderRegistry { builders: vec![Box::new(RecurrenceBuilder), Box::new(ConnectionBuilder)] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn registries_know_their_members() {
        let r = SuiteRegistry::default();
        assert_eq!(r.names(), ["scalar", "weight", "mvop", "connection", "operators", "genfun"]);
        assert!(r.run("nope", &SuiteConfig::new(1, int(1), 2).unwrap()).is_err());
        let b = BuilderRegistry::default();
        let spec = WeightSpec::new(1, int(1)).unwrap();
        let built: Vec<MatPoly> = b.iter().map(|x| x.build(3, &spec).unwrap()).collect();
        assert_eq!(built[0], built[1]);
    }
}
