//! Certified class-field data (ray class numbers, unit residue images,
//! splitting data) with every internally checkable consequence verified at
//! load time, plus the class-field checks that need no certified input.

use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::process::{Command, Stdio};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset;
use crate::factored_real::primes;
use crate::groups::matrix::{closure_within, Closure};
use crate::ramification::{validate_field, FieldDescriptor, FormalIdeal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CftError {
    #[error("{file}: {reason}")]
    Io { file: String, reason: String },
    #[error("{file}: schema violation: {reason}")]
    Schema { file: String, reason: String },
    #[error("{record}: {reason}")]
    CrossCheck { record: String, reason: String },
    #[error("missing record: {0}")]
    Missing(String),
    #[error("oracle: {0}")]
    Oracle(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayClassRecord {
    pub field_id: String,
    /// `(symbol, exponent)`; a symbol declared with `count` conjugates stands
    /// for the product of all of them.
    pub conductor: Vec<(String, i64)>,
    pub ray_class_number: u64,
    /// `None` when the source gives only the ray class number.
    pub class_number: Option<u64>,
    #[serde(default)]
    pub provenance: String,
}

impl RayClassRecord {
    pub fn conductor_ideal(&self, field: &FieldDescriptor) -> Result<FormalIdeal, CftError> {
        let mut out = FormalIdeal::unit();
        for (sym, exp) in &self.conductor {
            let fp = field
                .formal_primes
                .get(sym)
                .ok_or_else(|| CftError::CrossCheck {
                    record: self.id(),
                    reason: format!("symbol `{sym}` is not declared by the field"),
                })?;
            out = out.mul(&FormalIdeal::conjugate_product(sym, fp.count, *exp));
        }
        Ok(out)
    }

    pub fn id(&self) -> String {
        let f: Vec<String> = self
            .conductor
            .iter()
            .map(|(s, e)| format!("{s}^{e}"))
            .collect();
        format!("rayclass[{}, {}]", self.field_id, f.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetGroup {
    pub q: u64,
    pub copies: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitImageRecord {
    pub field_id: String,
    pub modulus: String,
    /// `(𝔽_q^*)^copies`.
    pub target: TargetGroup,
    #[serde(default)]
    pub units: Vec<String>,
    /// One tuple per unit, entries as integers mod `q`.
    pub images: Vec<Vec<i64>>,
    #[serde(default)]
    pub provenance: String,
}

impl UnitImageRecord {
    pub fn id(&self) -> String {
        format!("unit_images[{}, {}]", self.field_id, self.modulus)
    }

    fn reduced(&self) -> Vec<Vec<u64>> {
        let q = self.target.q as i64;
        self.images
            .iter()
            .map(|t| t.iter().map(|x| x.rem_euclid(q) as u64).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingRecord {
    pub field_id: String,
    pub degree: u64,
    pub prime: u64,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    /// Fields whose compositum this field is.
    #[serde(default)]
    pub compositum_of: Vec<String>,
    #[serde(default)]
    pub provenance: String,
}

impl SplittingRecord {
    pub fn id(&self) -> String {
        format!("splitting[{}, p = {}]", self.field_id, self.prime)
    }

    fn consistent(&self) -> bool {
        self.e > 0 && self.f > 0 && self.g > 0 && self.e * self.f * self.g == self.degree
    }
}

/// Raw JSON sources.
#[derive(Clone, Debug)]
pub struct DataSources {
    pub fields: String,
    pub rayclass: String,
    pub unit_images: String,
    pub splitting: String,
}

impl DataSources {
    pub fn shipped() -> Self {
        DataSources {
            fields: dataset::SHIPPED_FIELDS.into(),
            rayclass: dataset::SHIPPED_RAYCLASS.into(),
            unit_images: dataset::SHIPPED_UNIT_IMAGES.into(),
            splitting: dataset::SHIPPED_SPLITTING.into(),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Self, CftError> {
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|e| CftError::Io {
                file: path.display().to_string(),
                reason: e.to_string(),
            })
        };
        Ok(DataSources {
            fields: read(dataset::FIELDS_FILE)?,
            rayclass: read(dataset::RAYCLASS_FILE)?,
            unit_images: read(dataset::UNIT_IMAGES_FILE)?,
            splitting: read(dataset::SPLITTING_FILE)?,
        })
    }
}

/// A validated data set.
#[derive(Clone, Debug)]
pub struct CertifiedData {
    pub fields: Vec<FieldDescriptor>,
    pub rayclass: Vec<RayClassRecord>,
    pub unit_images: Vec<UnitImageRecord>,
    pub splitting: Vec<SplittingRecord>,
}

fn parse<T: serde::de::DeserializeOwned>(file: &str, text: &str) -> Result<Vec<T>, CftError> {
    serde_json::from_str(text).map_err(|e| CftError::Schema {
        file: file.into(),
        reason: e.to_string(),
    })
}

fn cross(record: String, reason: impl Into<String>) -> CftError {
    CftError::CrossCheck {
        record,
        reason: reason.into(),
    }
}

pub fn load_certified_data(sources: &DataSources) -> Result<CertifiedData, CftError> {
    let data = CertifiedData {
        fields: parse(dataset::FIELDS_FILE, &sources.fields)?,
        rayclass: parse(dataset::RAYCLASS_FILE, &sources.rayclass)?,
        unit_images: parse(dataset::UNIT_IMAGES_FILE, &sources.unit_images)?,
        splitting: parse(dataset::SPLITTING_FILE, &sources.splitting)?,
    };
    data.validate()?;
    Ok(data)
}

impl CertifiedData {
    pub fn shipped() -> Self {
        load_certified_data(&DataSources::shipped()).expect("shipped data set is consistent")
    }

    fn validate(&self) -> Result<(), CftError> {
        let mut ids = BTreeSet::new();
        for fd in &self.fields {
            let record = format!("fields[{}]", fd.id);
            if !ids.insert(fd.id.as_str()) {
                return Err(cross(record, "duplicate field id"));
            }
            validate_field(fd).map_err(|e| cross(record.clone(), e.to_string()))?;
            if fd
                .formal_primes
                .values()
                .any(|fp| fp.count == 0 || fp.norm < 2)
            {
                return Err(cross(record, "formal primes need count >= 1 and norm >= 2"));
            }
        }
        for rec in &self.rayclass {
            let field = self
                .field(&rec.field_id)
                .map_err(|_| cross(rec.id(), "unknown field"))?;
            if rec.conductor.iter().any(|(_, e)| *e <= 0) {
                return Err(cross(rec.id(), "conductor exponents must be positive"));
            }
            rec.conductor_ideal(field)?;
            if rec.ray_class_number == 0 {
                return Err(cross(rec.id(), "ray class number must be positive"));
            }
            if let Some(h) = rec.class_number {
                if h == 0 || rec.ray_class_number % h != 0 {
                    return Err(cross(
                        rec.id(),
                        format!(
                            "class number {h} does not divide ray class number {}",
                            rec.ray_class_number
                        ),
                    ));
                }
            }
        }
        for rec in &self.unit_images {
            self.field(&rec.field_id)
                .map_err(|_| cross(rec.id(), "unknown field"))?;
            let TargetGroup { q, copies } = rec.target;
            if !primes::is_prime(q) || copies == 0 {
                return Err(cross(
                    rec.id(),
                    "target must be (F_q^*)^k with q prime and k >= 1",
                ));
            }
            if !rec.units.is_empty() && rec.units.len() != rec.images.len() {
                return Err(cross(rec.id(), "one image per listed unit"));
            }
            for t in rec.reduced() {
                if t.len() != copies {
                    return Err(cross(
                        rec.id(),
                        format!("image tuples must have {copies} entries"),
                    ));
                }
                if t.contains(&0) {
                    return Err(cross(rec.id(), format!("image entry is zero mod {q}")));
                }
            }
        }
        let mut seen = BTreeSet::new();
        for rec in &self.splitting {
            if !seen.insert((rec.field_id.as_str(), rec.prime)) {
                return Err(cross(rec.id(), "duplicate record"));
            }
            if !rec.consistent() {
                return Err(cross(rec.id(), format!("e*f*g != degree {}", rec.degree)));
            }
            if let Ok(fd) = self.field(&rec.field_id) {
                if fd.degree != rec.degree {
                    return Err(cross(rec.id(), "degree differs from the field record"));
                }
                if let Some(l) = fd.local(rec.prime) {
                    if (l.e, l.f, l.g) != (rec.e, rec.f, rec.g) {
                        return Err(cross(
                            rec.id(),
                            "e, f, g differ from the field's local data",
                        ));
                    }
                }
            }
            for c in &rec.compositum_of {
                let comp = self
                    .splitting_record(c, rec.prime)
                    .map_err(|_| cross(rec.id(), format!("component {c} has no record")))?;
                if rec.degree % comp.degree != 0 || rec.e % comp.e != 0 || rec.f % comp.f != 0 {
                    return Err(cross(
                        rec.id(),
                        format!("not compatible with component {c}"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self, id: &str) -> Result<&FieldDescriptor, CftError> {
        self.fields
            .iter()
            .find(|f| f.id == id)
            .ok_or_else(|| CftError::Missing(format!("fields[{id}]")))
    }

    pub fn ray_class(&self, field_id: &str) -> Result<&RayClassRecord, CftError> {
        self.rayclass
            .iter()
            .find(|r| r.field_id == field_id)
            .ok_or_else(|| CftError::Missing(format!("rayclass[{field_id}]")))
    }

    pub fn unit_image(&self, field_id: &str) -> Result<&UnitImageRecord, CftError> {
        self.unit_images
            .iter()
            .find(|r| r.field_id == field_id)
            .ok_or_else(|| CftError::Missing(format!("unit_images[{field_id}]")))
    }

    pub fn splitting_record(&self, field_id: &str, p: u64) -> Result<&SplittingRecord, CftError> {
        self.splitting
            .iter()
            .find(|r| r.field_id == field_id && r.prime == p)
            .ok_or_else(|| CftError::Missing(format!("splitting[{field_id}, p = {p}]")))
    }
}

/// Whether the images generate all of `(𝔽_q^*)^k`.
pub fn residue_generation_check(rec: &UnitImageRecord) -> bool {
    let TargetGroup { q, copies } = rec.target;
    let full = ((q - 1) as usize).pow(copies as u32);
    let gens = rec.reduced();
    if gens.iter().any(|t| t.len() != copies || t.contains(&0)) {
        return false;
    }
    let mul = |a: &Vec<u64>, b: &Vec<u64>| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x * y % q)
            .collect::<Vec<u64>>()
    };
    match closure_within(vec![1u64; copies], &gens, mul, full) {
        Closure::Complete(elems) => elems.len() == full,
        Closure::Exceeded { .. } => false,
    }
}

/// Whether ℚ has a cyclic extension of degree `ℓ` unramified outside `S`:
/// by Kronecker–Weber it lies in some `ℚ(ζ_m)` with `m` supported on `S`, and
/// `(ℤ/m)^*` has an order-`ℓ` quotient iff `ℓ ∈ S` or `ℓ | p - 1` for some
/// `p ∈ S`.
pub fn kronecker_weber_check(ell: u64, s: &[u64]) -> bool {
    s.iter().any(|&p| p == ell || (p > 1 && (p - 1) % ell == 0))
}

/// Whether the primes of `k` above `p` are forced to split into exactly
/// `expected` primes of `h`. The count is pinned between `g_K` (primes of `K`
/// cannot merge) and `[H:ℚ] / (lcm e · lcm f)` over the fields `h` is a
/// compositum of.
pub fn splitting_consistency_check(
    data: &CertifiedData,
    k: &str,
    h: &str,
    p: u64,
    expected: u64,
) -> Result<bool, CftError> {
    let rk = data.splitting_record(k, p)?;
    let rh = data.splitting_record(h, p)?;
    Ok(splitting_consistency(
        rk,
        rh,
        &component_records(data, rh)?,
        expected,
    ))
}

fn component_records<'a>(
    data: &'a CertifiedData,
    rh: &SplittingRecord,
) -> Result<Vec<&'a SplittingRecord>, CftError> {
    rh.compositum_of
        .iter()
        .map(|c| data.splitting_record(c, rh.prime))
        .collect()
}

/// [`splitting_consistency_check`] on explicit records.
pub fn splitting_consistency(
    rk: &SplittingRecord,
    rh: &SplittingRecord,
    components: &[&SplittingRecord],
    expected: u64,
) -> bool {
    use num_integer::Integer;
    if !rk.consistent() || !rh.consistent() || components.iter().any(|c| !c.consistent()) {
        return false;
    }
    if rk.field_id == rh.field_id {
        return rk.g == expected;
    }
    if !rh.degree.is_multiple_of(rk.degree)
        || !rh.e.is_multiple_of(rk.e)
        || !rh.f.is_multiple_of(rk.f)
    {
        return false;
    }
    let lower = rk.g;
    let e = components.iter().fold(rk.e, |acc, c| acc.lcm(&c.e));
    let f = components.iter().fold(rk.f, |acc, c| acc.lcm(&c.f));
    if !rh.degree.is_multiple_of(e * f) {
        return false;
    }
    let upper = rh.degree / (e * f);
    lower == upper && upper == expected && rh.g == expected
}

/// Line-based external oracle: request `rayclassno <field_id> <conductor>`,
/// response an integer. Never used by the shipped scripts.
pub fn oracle_request(rec: &RayClassRecord) -> String {
    let f: Vec<String> = rec
        .conductor
        .iter()
        .map(|(s, e)| format!("{s}^{e}"))
        .collect();
    format!("rayclassno {} {}", rec.field_id, f.join("*"))
}

/// Queries `transport` for every record and returns copies with the ray class
/// numbers replaced by the responses.
pub fn regenerate_rayclass(
    records: &[RayClassRecord],
    mut transport: impl FnMut(&str) -> Result<String, CftError>,
) -> Result<Vec<RayClassRecord>, CftError> {
    records
        .iter()
        .map(|rec| {
            let reply = transport(&oracle_request(rec))?;
            let n: u64 = reply.trim().parse().map_err(|_| {
                CftError::Oracle(format!("bad response `{}` for {}", reply.trim(), rec.id()))
            })?;
            Ok(RayClassRecord {
                ray_class_number: n,
                provenance: "external oracle".into(),
                ..rec.clone()
            })
        })
        .collect()
}

/// Runs `program` once, writes every request on its stdin and reads one
/// response line per request.
pub fn shell_oracle(
    program: &str,
    args: &[&str],
    records: &[RayClassRecord],
) -> Result<Vec<RayClassRecord>, CftError> {
    let oracle = |e: std::io::Error| CftError::Oracle(e.to_string());
    let mut child = Command::new(program)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .map_err(oracle)?;
    {
        let mut stdin = child.stdin.take().expect("piped stdin");
        for rec in records {
            writeln!(stdin, "{}", oracle_request(rec)).map_err(oracle)?;
        }
    }
    let stdout = child.stdout.take().expect("piped stdout");
    let mut lines = BufReader::new(stdout).lines();
    let out = regenerate_rayclass(records, |_| match lines.next() {
        Some(line) => line.map_err(oracle),
        None => Err(CftError::Oracle("oracle closed its output early".into())),
    });
    child.wait().map_err(oracle)?;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(q: u64, copies: usize, images: Vec<Vec<i64>>) -> UnitImageRecord {
        UnitImageRecord {
            field_id: "F".into(),
            modulus: "m".into(),
            target: TargetGroup { q, copies },
            units: vec![],
            images,
            provenance: String::new(),
        }
    }

    #[test]
    fn shipped_data_loads() {
        let data = CertifiedData::shipped();
        let values: Vec<u64> = data.rayclass.iter().map(|r| r.ray_class_number).collect();
        assert_eq!(values, vec![1, 1, 5, 5, 5, 5, 3]);
        assert_eq!(
            data.ray_class("Q(zeta5,6^(1/5))").unwrap().ray_class_number,
            5
        );
    }

    #[test]
    fn conductor_of_tame_row_has_five_conjugates() {
        let data = CertifiedData::shipped();
        let id = "Q(zeta5,24^(1/5))";
        let ideal = data
            .ray_class(id)
            .unwrap()
            .conductor_ideal(data.field(id).unwrap())
            .unwrap();
        assert_eq!(ideal, FormalIdeal::conjugate_product("pi_K", 5, 2));
        assert_eq!(
            data.field(id).unwrap().norm(&ideal).unwrap(),
            "5^10".parse().unwrap()
        );
    }

    #[test]
    fn class_number_must_divide() {
        let mut src = DataSources::shipped();
        src.rayclass = src.rayclass.replacen(
            "\"ray_class_number\": 1, \"class_number\": 1",
            "\"ray_class_number\": 1, \"class_number\": 3",
            1,
        );
        let err = load_certified_data(&src).unwrap_err();
        assert!(
            matches!(err, CftError::CrossCheck { ref record, .. } if record.contains("2^(1/5)")),
            "{err}"
        );
    }

    #[test]
    fn root_disc_cross_check_names_field() {
        let mut src = DataSources::shipped();
        src.fields = src.fields.replacen("5^3/4 * 6^4/5", "5^23/20 * 6^4/5", 1);
        let err = load_certified_data(&src).unwrap_err();
        assert!(err.to_string().contains("24^(1/5)"), "{err}");
    }

    #[test]
    fn schema_and_reference_errors() {
        let mut src = DataSources::shipped();
        src.splitting = "{".into();
        assert!(matches!(
            load_certified_data(&src),
            Err(CftError::Schema { .. })
        ));
        let mut src = DataSources::shipped();
        src.unit_images = src.unit_images.replacen("[[-2]]", "[[5]]", 1);
        assert!(matches!(
            load_certified_data(&src),
            Err(CftError::CrossCheck { .. })
        ));
        let mut src = DataSources::shipped();
        src.rayclass = src
            .rayclass
            .replacen("Q(zeta5,6^(1/5))", "Q(zeta5,7^(1/5))", 1);
        assert!(load_certified_data(&src).is_err());
    }

    #[test]
    fn residue_generation() {
        assert!(residue_generation_check(&record(
            3,
            3,
            vec![vec![-1, -1, -1], vec![1, 1, -1], vec![1, -1, 1]]
        )));
        assert!(!residue_generation_check(&record(
            3,
            3,
            vec![vec![1, 1, 1]]
        )));
        assert!(residue_generation_check(&record(5, 1, vec![vec![-2]])));
        assert!(!residue_generation_check(&record(5, 1, vec![vec![-1]])));
        assert!(!residue_generation_check(&record(
            3,
            3,
            vec![vec![-1, -1, -1], vec![1, 1, -1]]
        )));
    }

    #[test]
    fn kronecker_weber() {
        assert!(!kronecker_weber_check(5, &[2, 3]));
        assert!(!kronecker_weber_check(3, &[2, 5]));
        assert!(kronecker_weber_check(5, &[11]));
        assert!(kronecker_weber_check(3, &[3]));
        assert!(kronecker_weber_check(3, &[7]));
    }

    #[test]
    fn splitting() {
        let data = CertifiedData::shipped();
        let k = "Q(zeta3,2^(1/3),5^(1/3))";
        let h = "HCF(Q(zeta3,2^(1/3),5^(1/3)))";
        for p in [2, 5] {
            assert!(splitting_consistency_check(&data, k, h, p, 3).unwrap());
            assert!(!splitting_consistency_check(&data, k, h, p, 1).unwrap());
            assert!(splitting_consistency_check(&data, k, k, p, 3).unwrap());
        }
        assert!(matches!(
            splitting_consistency_check(&data, k, h, 3, 3),
            Err(CftError::Missing(_))
        ));
        let mut bad = data.splitting_record(k, 2).unwrap().clone();
        bad.f = 9;
        bad.degree = 3;
        assert!(!splitting_consistency(&bad, &bad, &[], 3));
    }

    #[test]
    fn oracle_round_trip() {
        let data = CertifiedData::shipped();
        let out = regenerate_rayclass(&data.rayclass, |req| {
            assert!(req.starts_with("rayclassno "));
            Ok("7".into())
        })
        .unwrap();
        assert!(out.iter().all(|r| r.ray_class_number == 7));
        assert!(regenerate_rayclass(&data.rayclass, |_| Ok("x".into())).is_err());
        assert_eq!(
            oracle_request(&data.rayclass[0]),
            "rayclassno Q(zeta5,2^(1/5)) pi_K^2"
        );
    }
}
