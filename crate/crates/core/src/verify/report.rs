use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use num_bigint::BigInt;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::groups::Family;

/// Largest integer magnitude written as a JSON number; anything larger is
/// written as a decimal string.
pub const MAX_EXACT_JSON_INT: u64 = 1 << 53;

/// A report value. Integers stay exact; there is no floating point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Int(i128),
    Big(BigInt),
    Bool(bool),
    Text(String),
    List(Vec<Scalar>),
    Map(BTreeMap<String, Scalar>),
}

impl Scalar {
    pub fn as_int(&self) -> Option<i128> {
        match self {
            Scalar::Int(v) => Some(*v),
            Scalar::Big(b) => b.try_into().ok(),
            _ => None,
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Int(v) => {
                if v.unsigned_abs() <= MAX_EXACT_JSON_INT as u128 {
                    s.serialize_i64(*v as i64)
                } else {
                    s.serialize_str(&v.to_string())
                }
            }
            Scalar::Big(b) => match i128::try_from(b) {
                Ok(v) => Scalar::Int(v).serialize(s),
                Err(_) => s.serialize_str(&b.to_string()),
            },
            Scalar::Bool(b) => s.serialize_bool(*b),
            Scalar::Text(t) => s.serialize_str(t),
            Scalar::List(items) => {
                let mut seq = s.serialize_seq(Some(items.len()))?;
                for it in items {
                    seq.serialize_element(it)?;
                }
                seq.end()
            }
            Scalar::Map(m) => {
                let mut map = s.serialize_map(Some(m.len()))?;
                for (k, v) in m {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
    }
}

macro_rules! scalar_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Scalar {
            fn from(v: $t) -> Self {
                Scalar::Int(v as i128)
            }
        }
    )*};
}
scalar_from_int!(u8, u32, u64, usize, i32, i64);

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::Big(v)
    }
}

impl From<bool> for Scalar {
    fn from(v: bool) -> Self {
        Scalar::Bool(v)
    }
}

impl From<&str> for Scalar {
    fn from(v: &str) -> Self {
        Scalar::Text(v.to_string())
    }
}

impl From<String> for Scalar {
    fn from(v: String) -> Self {
        Scalar::Text(v)
    }
}

impl<T: Into<Scalar>> From<Vec<T>> for Scalar {
    fn from(v: Vec<T>) -> Self {
        Scalar::List(v.into_iter().map(Into::into).collect())
    }
}

impl<T: Into<Scalar>> From<BTreeSet<T>> for Scalar {
    fn from(v: BTreeSet<T>) -> Self {
        Scalar::List(v.into_iter().map(Into::into).collect())
    }
}

impl<K: ToString, V: Into<Scalar>> From<BTreeMap<K, V>> for Scalar {
    fn from(v: BTreeMap<K, V>) -> Self {
        Scalar::Map(v.into_iter().map(|(k, v)| (k.to_string(), v.into())).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    /// Checked on random elements only: "pass" means no counterexample among
    /// the samples.
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A concrete counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which check failed.
    pub check: String,
    pub detail: String,
    /// Element index in the enumeration, or sample number in sampled mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Scalar>,
}

impl Witness {
    pub fn new(check: &str, detail: impl Into<String>) -> Self {
        Witness {
            check: check.to_string(),
            detail: detail.into(),
            element: None,
            data: BTreeMap::new(),
        }
    }

    pub fn element(mut self, i: impl TryInto<u64>) -> Self {
        self.element = i.try_into().ok();
        self
    }

    pub fn with(mut self, key: &str, v: impl Into<Scalar>) -> Self {
        self.data.insert(key.to_string(), v.into());
        self
    }
}

/// Outcome of one checker on one group (or one parameter range).
#[derive(Debug, Clone, Serialize)]
pub struct PropositionReport {
    prop_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    mode: Mode,
    status: Status,
    counts: BTreeMap<String, Scalar>,
    witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    rows: Vec<BTreeMap<String, Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    tool_version: &'static str,
    #[serde(skip)]
    elapsed: Duration,
}

impl PropositionReport {
    pub fn prop_id(&self) -> &str {
        &self.prop_id
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn n(&self) -> Option<u64> {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn counts(&self) -> &BTreeMap<String, Scalar> {
        &self.counts
    }

    pub fn count(&self, key: &str) -> Option<i128> {
        self.counts.get(key).and_then(Scalar::as_int)
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Per-instance rows, e.g. one per Claim parameter triple.
    pub fn rows(&self) -> &[BTreeMap<String, Scalar>] {
        &self.rows
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn elapsed(&self) -> Duration {
        self.elapsed
    }

    /// `<prop>_<family>_<n>`, or `<prop>_<suffix>` for reports not tied to a group.
    pub fn file_stem(&self) -> String {
        match (self.family, self.n) {
            (Some(f), Some(n)) => format!("{}_{}_{}", self.prop_id, f.id(), n),
            _ => match self.counts.get("range") {
                Some(Scalar::Text(r)) => format!("{}_{}", self.prop_id, r),
                _ => self.prop_id.clone(),
            },
        }
    }
}

/// Accumulates counts, witnesses and notes; the status is fixed when the
/// report is finished, as `fail` exactly when a witness was recorded.
#[derive(Debug)]
pub struct Recorder {
    prop_id: String,
    family: Option<Family>,
    n: Option<u64>,
    mode: Mode,
    seed: Option<u64>,
    counts: BTreeMap<String, Scalar>,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
    rows: Vec<BTreeMap<String, Scalar>>,
    start: std::time::Instant,
}

/// Cap on stored witnesses per report; the total is kept in `counts`.
const MAX_WITNESSES: usize = 50;

impl Recorder {
    pub fn new(prop_id: &str, family: Option<Family>, n: Option<u64>, mode: Mode) -> Self {
        Recorder {
            prop_id: prop_id.to_string(),
            family,
            n,
            mode,
            seed: None,
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            rows: Vec::new(),
            start: std::time::Instant::now(),
        }
    }

    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn count(&mut self, key: &str, v: impl Into<Scalar>) {
        self.counts.insert(key.to_string(), v.into());
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn row(&mut self, row: BTreeMap<String, Scalar>) {
        self.rows.push(row);
    }

    pub fn witness(&mut self, w: Witness) {
        let total = self.counts.entry("witnesses_total".to_string()).or_insert(Scalar::Int(0));
        if let Scalar::Int(t) = total {
            *t += 1;
        }
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    /// Records a witness unless `ok`.
    pub fn check(&mut self, ok: bool, w: impl FnOnce() -> Witness) {
        if !ok {
            self.witness(w());
        }
    }

    pub fn has_failed(&self) -> bool {
        !self.witnesses.is_empty()
    }

    pub fn finish(self) -> PropositionReport {
        let status = if self.witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        PropositionReport {
            prop_id: self.prop_id,
            family: self.family,
            n: self.n,
            mode: self.mode,
            status,
            counts: self.counts,
            witnesses: self.witnesses,
            notes: self.notes,
            rows: self.rows,
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            elapsed: self.start.elapsed(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_witnesses() {
        let r = Recorder::new("x", Some(Family::Sz), Some(8), Mode::Exhaustive).finish();
        assert!(r.passed());
        let mut rec = Recorder::new("x", Some(Family::Sz), Some(8), Mode::Exhaustive);
        rec.check(false, || Witness::new("c", "bad").element(3usize));
        let r = rec.finish();
        assert_eq!(r.status(), Status::Fail);
        assert_eq!(r.count("witnesses_total"), Some(1));
        assert_eq!(r.file_stem(), "x_sz_8");
    }

    #[test]
    fn large_integers_become_strings() {
        let edge = MAX_EXACT_JSON_INT as i128;
        let v = Scalar::List(vec![
            Scalar::Int(edge),
            Scalar::Int(edge + 1),
            Scalar::Int(-edge - 1),
            Scalar::Big(BigInt::from(3u8).pow(40)),
            Scalar::Big(BigInt::from(7u8)),
        ]);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"[9007199254740992,"9007199254740993","-9007199254740993","12157665459056928801",7]"#
        );
    }
}
