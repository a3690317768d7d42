//! Residual reports for identity checks.
//!
//! A check evaluates every component of an identity and records how many are
//! nonzero, the largest magnitude, and the lexicographically first nonzero entry.

use std::fmt;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// Free indices of the identity (0-based).
    pub indices: Vec<usize>,
    /// Output component of the offending entry.
    pub component: usize,
    /// Rendered value of the entry.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub label: String,
    pub max_norm: f64,
    pub nonzero: usize,
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl Residual {
    pub fn new(label: impl Into<String>) -> Self {
        Residual { label: label.into(), max_norm: 0.0, nonzero: 0, checked: 0, witness: None }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero == 0
    }

    /// Records one component value.
    pub fn record<F: Field>(&mut self, indices: &[usize], component: usize, value: &F) {
        self.checked += 1;
        if value.is_zero() {
            return;
        }
        self.nonzero += 1;
        self.max_norm = self.max_norm.max(value.magnitude());
        let cand = (indices, component);
        let better = match &self.witness {
            None => true,
            Some(w) => cand < (w.indices.as_slice(), w.component),
        };
        if better {
            self.witness = Some(Witness { indices: indices.to_vec(), component, value: value.to_string() });
        }
    }

    /// Records a full output vector for one index tuple.
    pub fn record_vec<F: Field>(&mut self, indices: &[usize], values: &[F]) {
        for (k, v) in values.iter().enumerate() {
            self.record(indices, k, v);
        }
    }

    /// Merges another report, keeping this report's label.
    pub fn absorb(&mut self, other: &Residual) {
        self.checked += other.checked;
        self.nonzero += other.nonzero;
        self.max_norm = self.max_norm.max(other.max_norm);
        if let Some(w) = &other.witness {
            let better = match &self.witness {
                None => true,
                Some(cur) => (&w.indices, w.component) < (&cur.indices, cur.component),
            };
            if better {
                self.witness = Some(w.clone());
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "zero": self.is_zero(),
            "max_norm": self.max_norm,
            "nonzero": self.nonzero,
            "checked": self.checked,
            "witness": self.witness.as_ref().map(|w| serde_json::json!({
                "indices": w.indices,
                "component": w.component,
                "value": w.value,
            })),
        })
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{}: ok ({} components)", self.label, self.checked);
        }
        write!(f, "{}: {} of {} nonzero, max |r| = {:.3e}", self.label, self.nonzero, self.checked, self.max_norm)?;
        if let Some(w) = &self.witness {
            write!(f, ", first at {:?}[{}] = {}", w.indices, w.component, w.value)?;
        }
        Ok(())
    }
}

/// A named collection of residuals.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub items: Vec<Residual>,
}

impl Report {
    pub fn push(&mut self, r: Residual) {
        self.items.push(r);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(Residual::is_zero)
    }

    /// First failing residual.
    pub fn first_failure(&self) -> Option<&Residual> {
        self.items.iter().find(|r| !r.is_zero())
    }

    pub fn get(&self, label: &str) -> Option<&Residual> {
        self.items.iter().find(|r| r.label == label)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "residuals": self.items.iter().map(Residual::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.items {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclotomic;

    #[test]
    fn witness_is_lexicographically_first() {
        let mut r = Residual::new("t");
        r.record(&[1, 0], 0, &Cyclotomic::from_i64(3));
        r.record(&[0, 2], 1, &Cyclotomic::from_i64(-5));
        r.record(&[0, 2], 0, &Cyclotomic::zero());
        assert_eq!(r.nonzero, 2);
        assert_eq!(r.checked, 3);
        assert_eq!(r.max_norm, 5.0);
        assert_eq!(r.witness.unwrap().indices, vec![0, 2]);
    }
}
