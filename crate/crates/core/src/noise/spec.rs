use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a per-pair one-qudit table value maps onto the three Pauli axes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OneQuditReading {
    /// The value is the probability of each of `σˣ, σʸ, σᶻ` on that pair.
    #[default]
    PerAxis,
    /// The value is the total for the pair, split evenly over the three axes.
    Split,
}

/// How the two-qudit probability maps onto the 81 `σ⊗σ` terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoQuditMode {
    /// Every term has probability `p`.
    PerTerm,
    /// `p` is the total error probability, spread evenly.
    #[default]
    Total,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoQuditSpec {
    pub mode: TwoQuditMode,
    pub p: f64,
}

/// Pauli error rates for qutrit gates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliChannelSpec {
    /// Keyed by level pair, `"01"`, `"02"`, `"12"`.
    pub one_qudit: BTreeMap<String, f64>,
    #[serde(default)]
    pub one_qudit_reading: OneQuditReading,
    pub two_qudit: TwoQuditSpec,
    #[serde(default = "default_d")]
    pub d: usize,
}

fn default_d() -> usize {
    3
}

impl Default for PauliChannelSpec {
    fn default() -> Self {
        Self::table(TwoQuditMode::Total)
    }
}

impl PauliChannelSpec {
    /// Measured qutrit error rates with the chosen two-qudit reading.
    pub fn table(mode: TwoQuditMode) -> Self {
        let one_qudit = [("01", 0.00038), ("02", 0.00143), ("12", 0.00068)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        PauliChannelSpec {
            one_qudit,
            one_qudit_reading: OneQuditReading::PerAxis,
            two_qudit: TwoQuditSpec { mode, p: 0.003 },
            d: 3,
        }
    }

    /// Every probability zero.
    pub fn zero() -> Self {
        self::PauliChannelSpec::default().scaled(0.0)
    }

    /// All probabilities multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.one_qudit.values_mut().for_each(|p| *p *= s);
        out.two_qudit.p *= s;
        out
    }

    /// Level pairs with their per-axis probability.
    pub fn pair_probabilities(&self) -> Result<Vec<((usize, usize), f64)>> {
        let mut out = Vec::new();
        for (key, &p) in &self.one_qudit {
            let digits: Vec<usize> = key
                .chars()
                .map(|c| c.to_digit(10).map(|v| v as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidArgument(format!("bad level pair key '{key}'")))?;
            let [a, b] = digits[..] else {
                return Err(Error::InvalidArgument(format!("bad level pair key '{key}'")));
            };
            if a >= b || b >= self.d {
                return Err(Error::InvalidLevelPair { a, b, d: self.d });
            }
            check_probability(p)?;
            let per_axis = match self.one_qudit_reading {
                OneQuditReading::PerAxis => p,
                OneQuditReading::Split => p / 3.0,
            };
            out.push(((a, b), per_axis));
        }
        Ok(out)
    }

    /// Probability of each individual two-qudit Pauli term.
    pub fn two_qudit_term_probability(&self) -> Result<f64> {
        check_probability(self.two_qudit.p)?;
        let pairs = self.d * (self.d - 1) / 2;
        let terms = (3 * pairs * 3 * pairs) as f64;
        Ok(match self.two_qudit.mode {
            TwoQuditMode::PerTerm => self.two_qudit.p,
            TwoQuditMode::Total => self.two_qudit.p / terms,
        })
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(format!("{p} is not in [0, 1]")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_schema() {
        let json = r#"{"one_qudit": {"01": 0.00038, "02": 0.00143, "12": 0.00068}, "two_qudit": {"mode": "total", "p": 0.003}}"#;
        let spec: PauliChannelSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec, PauliChannelSpec::default());
        let back: PauliChannelSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        let per: PauliChannelSpec = serde_json::from_str(&json.replace("total", "per-term")).unwrap();
        assert_eq!(per.two_qudit.mode, TwoQuditMode::PerTerm);
    }

    #[test]
    fn bad_keys_and_probabilities() {
        let mut spec = PauliChannelSpec::default();
        spec.one_qudit.insert("10".into(), 0.1);
        assert!(spec.pair_probabilities().is_err());
        let mut spec = PauliChannelSpec::default();
        spec.one_qudit.insert("01".into(), -0.1);
        assert!(spec.pair_probabilities().is_err());
    }
}
