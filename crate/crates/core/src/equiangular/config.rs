use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::padic::{PadicAbs, Prime, Rational};

/// A finite family `tau_1, ..., tau_n` in `Q_p^d` together with the declared
/// diagonal value `a` and, optionally, a declared angle `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub p: Prime,
    pub d: usize,
    pub vectors: Vec<Vector>,
    pub a: Rational,
    pub declared_gamma: Option<PadicAbs>,
}

impl Configuration {
    /// Builds a configuration with `a = 1`; `d` is taken from the vectors.
    pub fn new(p: Prime, vectors: Vec<Vector>) -> Result<Self> {
        let d = vectors.first().ok_or(Error::NoVectors)?.dim();
        let cfg = Configuration { p, d, vectors, a: Rational::one(), declared_gamma: None };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_a(mut self, a: Rational) -> Result<Self> {
        self.a = a;
        self.validate()?;
        Ok(self)
    }

    pub fn with_gamma(mut self, gamma: PadicAbs) -> Self {
        self.declared_gamma = Some(gamma);
        self
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.vectors.is_empty() {
            return Err(Error::NoVectors);
        }
        if self.d == 0 {
            return Err(Error::field("d", "dimension must be positive"));
        }
        for (j, v) in self.vectors.iter().enumerate() {
            if v.dim() != self.d {
                return Err(Error::field(
                    format!("vectors[{j}]"),
                    format!("has length {}, expected d = {}", v.dim(), self.d),
                ));
            }
        }
        if self.a.is_zero() {
            return Err(Error::ZeroA);
        }
        Ok(())
    }

    /// Parses the JSON form
    /// `{"p":"5","d":2,"a":"1","vectors":[["3/5","4/5"],["1","0"]],"gamma":"5^1"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ConfigurationRepr =
            serde_json::from_str(text).map_err(|e| Error::field("configuration", e))?;
        repr.into_configuration()
    }

    pub fn to_repr(&self) -> ConfigurationRepr {
        ConfigurationRepr {
            p: PrimeText::Text(self.p.to_string()),
            d: self.d,
            a: Some(self.a.to_string()),
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(ToString::to_string).collect())
                .collect(),
            gamma: self.declared_gamma.map(|g| g.render(self.p)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("configuration serializes")
    }
}

/// `p` may be written as a JSON string or number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PrimeText {
    Number(u64),
    Text(String),
}

/// Wire form of [`Configuration`]; every scalar is kept as text until
/// validation so that errors can name the offending field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationRepr {
    pub p: PrimeText,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    pub vectors: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
}

impl ConfigurationRepr {
    pub fn into_configuration(self) -> Result<Configuration> {
        let p = match &self.p {
            PrimeText::Number(n) => Prime::new(*n),
            PrimeText::Text(s) => s.parse(),
        }
        .map_err(|e| Error::field("p", e))?;
        let a = match &self.a {
            None => Rational::one(),
            Some(s) => s.parse().map_err(|e| Error::field("a", e))?,
        };
        let mut vectors = Vec::with_capacity(self.vectors.len());
        for (j, row) in self.vectors.iter().enumerate() {
            let mut entries = Vec::with_capacity(row.len());
            for (i, s) in row.iter().enumerate() {
                entries.push(s.parse().map_err(|e| Error::field(format!("vectors[{j}][{i}]"), e))?);
            }
            vectors.push(Vector::new(entries));
        }
        let declared_gamma = match &self.gamma {
            None => None,
            Some(s) => Some(PadicAbs::parse(s, p).map_err(|e| Error::field("gamma", e))?),
        };
        if vectors.is_empty() {
            return Err(Error::field("vectors", "need at least one vector"));
        }
        let cfg = Configuration { p, d: self.d, vectors, a, declared_gamma };
        cfg.validate().map_err(|e| match e {
            Error::ZeroA => Error::field("a", e),
            Error::Field { .. } => e,
            other => Error::field("configuration", other),
        })?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let cfg = Configuration::from_json(
            r#"{"p":"5","d":2,"a":"1","vectors":[["3/5","4/5"],["1","0"]]}"#,
        )
        .unwrap();
        assert_eq!(cfg.p.get(), 5);
        assert_eq!(cfg.n(), 2);
        assert_eq!(cfg.vectors[0][1], "4/5".parse().unwrap());
        let again = Configuration::from_json(&cfg.to_json()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn numeric_prime_and_gamma() {
        let cfg =
            Configuration::from_json(r#"{"p":5,"d":1,"vectors":[["1"]],"gamma":"5^-1"}"#).unwrap();
        assert_eq!(cfg.declared_gamma, Some(PadicAbs::Pow(-1)));
        assert!(cfg.a.is_one());
    }

    fn field_of(text: &str) -> String {
        match Configuration::from_json(text) {
            Err(Error::Field { field, .. }) => field,
            other => panic!("expected field error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(field_of(r#"{"p":"6","d":1,"vectors":[["1"]]}"#), "p");
        assert_eq!(field_of(r#"{"p":"5","d":2,"vectors":[["1","x"]]}"#), "vectors[0][1]");
        assert_eq!(field_of(r#"{"p":"5","d":2,"vectors":[["1","0"],["1"]]}"#), "vectors[1]");
        assert_eq!(field_of(r#"{"p":"5","d":1,"a":"0","vectors":[["1"]]}"#), "a");
        assert_eq!(field_of(r#"{"p":"5","d":1,"vectors":[["1"]],"gamma":"3^1"}"#), "gamma");
        assert_eq!(field_of(r#"{"p":"5","d":1,"vectors":[]}"#), "vectors");
        assert_eq!(field_of(r#"{"p":"5","d":1,"vectors":[["1"]],"extra":1}"#), "configuration");
    }
}
