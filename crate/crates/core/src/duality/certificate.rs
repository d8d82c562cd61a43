use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedLaw {
    pub name: String,
    pub instances: u64,
}

/// Evidence that an explicit canonical map is an isomorphism.
///
/// Only produced when every listed law held on every instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoCertificate {
    /// `"s -> K_s"` or `"g -> F_g"`.
    pub map: String,
    pub source_size: usize,
    pub target_size: usize,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
    pub checked_laws: Vec<CheckedLaw>,
    pub elapsed_ms: f64,
    pub notes: Vec<String>,
}

impl IsoCertificate {
    pub fn law(&self, name: &str) -> Option<&CheckedLaw> {
        self.checked_laws.iter().find(|l| l.name == name)
    }

    pub fn total_instances(&self) -> u64 {
        self.checked_laws.iter().map(|l| l.instances).sum()
    }
}

/// Accumulates laws while a certificate is being built; the first failing
/// instance aborts the build.
pub(crate) struct CertificateBuilder {
    started: Instant,
    laws: Vec<CheckedLaw>,
}

impl CertificateBuilder {
    pub(crate) fn start() -> Self {
        Self {
            started: Instant::now(),
            laws: Vec::new(),
        }
    }

    pub(crate) fn law(
        &mut self,
        name: &str,
        instances: impl IntoIterator<Item = bool>,
        fail: impl Fn(usize) -> String,
    ) -> Result<()> {
        let mut count = 0u64;
        for (i, ok) in instances.into_iter().enumerate() {
            if !ok {
                return Err(Error::Invariant(format!("{name}: {}", fail(i))));
            }
            count += 1;
        }
        self.laws.push(CheckedLaw {
            name: name.to_string(),
            instances: count,
        });
        Ok(())
    }

    pub(crate) fn finish(
        self,
        map: &str,
        forward: Vec<usize>,
        backward: Vec<usize>,
        notes: Vec<String>,
    ) -> IsoCertificate {
        IsoCertificate {
            map: map.to_string(),
            source_size: forward.len(),
            target_size: backward.len(),
            forward,
            backward,
            checked_laws: self.laws,
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1e3,
            notes,
        }
    }
}
