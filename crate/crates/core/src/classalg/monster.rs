//! Exact arithmetic for the involution-class convolution argument in
//! the largest sporadic simple group. The constants are too large for
//! u64 (the involution class has about 9.7e19 elements), so everything
//! runs in arbitrary precision and the inequality check is an exact
//! rational comparison.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MonsterError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("missing key {0}")]
    MissingKey(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Class names for the nontrivial convolution coefficients, in file order.
pub const SLICE_CLASSES: [&str; 8] = ["2A", "2B", "3A", "3C", "4A", "4B", "5A", "6A"];

#[derive(Debug, Clone)]
pub struct MonsterConstants {
    /// Subdegrees i0..i8 of the action on the involution class, i0 = 1.
    pub i: [BigUint; 9],
    /// Size of the involution class itself.
    pub m_1a: BigUint,
    /// Convolution coefficients keyed by class name.
    pub m: BTreeMap<String, BigUint>,
    /// Slice sizes in SLICE_CLASSES order.
    pub x: [BigUint; 8],
    /// Exact rational lower bound on the coset count.
    pub bound: BigRational,
    pub total_x3_to_x6: BigUint,
    pub total_nontrivial_nonfused: BigUint,
}

fn parse_big(value: &str, key: &str) -> Result<BigUint, MonsterError> {
    value
        .parse()
        .map_err(|_| MonsterError::Parse(format!("bad integer for {key}: {value:?}")))
}

pub fn parse_monster_constants(text: &str) -> Result<MonsterConstants, MonsterError> {
    let mut kv: BTreeMap<String, String> = BTreeMap::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| MonsterError::Parse(format!("expected key=value, got {line:?}")))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let take = |key: &str| -> Result<String, MonsterError> {
        kv.get(key).cloned().ok_or_else(|| MonsterError::MissingKey(key.into()))
    };
    let mut i: [BigUint; 9] = Default::default();
    for (j, slot) in i.iter_mut().enumerate() {
        let key = format!("i{j}");
        *slot = parse_big(&take(&key)?, &key)?;
    }
    if i[0] != BigUint::from(1u32) {
        return Err(MonsterError::Parse("i0 must be 1, the identity subdegree".into()));
    }
    let m_1a = parse_big(&take("m_1A")?, "m_1A")?;
    let mut m = BTreeMap::new();
    for name in SLICE_CLASSES {
        let key = format!("m_{name}");
        m.insert(name.to_string(), parse_big(&take(&key)?, &key)?);
    }
    let mut x: [BigUint; 8] = Default::default();
    for (j, name) in SLICE_CLASSES.iter().enumerate() {
        let key = format!("x_{name}");
        x[j] = parse_big(&take(&key)?, &key)?;
    }
    let bound_text = take("bound")?;
    let bound = match bound_text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p
                .parse()
                .map_err(|_| MonsterError::Parse(format!("bad bound numerator {p:?}")))?;
            let q: BigInt = q
                .parse()
                .map_err(|_| MonsterError::Parse(format!("bad bound denominator {q:?}")))?;
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(
            bound_text
                .parse()
                .map_err(|_| MonsterError::Parse(format!("bad bound {bound_text:?}")))?,
        ),
    };
    Ok(MonsterConstants {
        i,
        m_1a,
        m,
        x,
        bound,
        total_x3_to_x6: parse_big(&take("total_x3_to_x6")?, "total_x3_to_x6")?,
        total_nontrivial_nonfused: parse_big(
            &take("total_nontrivial_nonfused")?,
            "total_nontrivial_nonfused",
        )?,
    })
}

pub fn load_monster_constants(path: &Path) -> Result<MonsterConstants, MonsterError> {
    parse_monster_constants(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub detail: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonsterReport {
    pub checks: Vec<Check>,
}

impl MonsterReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the five arithmetic checks behind the connectivity argument.
/// Each is exact; the bound comparison is a strict rational inequality.
pub fn monster_checks(c: &MonsterConstants) -> MonsterReport {
    let mut checks = Vec::new();
    let sum_3_to_8: BigUint = c.i[3..9].iter().sum();
    checks.push(Check {
        name: "subdegree sum for element orders 3 to 6",
        detail: format!("i3+..+i8 = {sum_3_to_8}, recorded total {}", c.total_x3_to_x6),
        pass: sum_3_to_8 == c.total_x3_to_x6,
    });
    let sum_2_to_8: BigUint = c.i[2..9].iter().sum();
    let complement = &c.m_1a - BigUint::from(1u32) - &c.i[1];
    checks.push(Check {
        name: "nontrivial nonfused subdegree sum",
        detail: format!(
            "i2+..+i8 = {sum_2_to_8}, |I|-1-i1 = {complement}, recorded total {}",
            c.total_nontrivial_nonfused
        ),
        pass: sum_2_to_8 == c.total_nontrivial_nonfused
            && complement == c.total_nontrivial_nonfused,
    });
    let cut = BigRational::from_integer(BigInt::from(
        &c.m_1a - BigUint::from(1u32) - &c.i[2],
    ));
    checks.push(Check {
        name: "coset bound exceeds the complement count",
        detail: format!("bound {} vs |I|-1-i2 = {cut}", c.bound),
        pass: c.bound > cut,
    });
    checks.push(Check {
        name: "strict slack between the totals",
        detail: format!("{} < {}", c.total_x3_to_x6, c.total_nontrivial_nonfused),
        pass: c.total_x3_to_x6 < c.total_nontrivial_nonfused,
    });
    let slices_match = c.x.iter().zip(&c.i[1..9]).all(|(a, b)| a == b);
    checks.push(Check {
        name: "slice sizes equal subdegrees",
        detail: SLICE_CLASSES
            .iter()
            .enumerate()
            .map(|(j, n)| format!("x_{n}={} i{}={}", c.x[j], j + 1, c.i[j + 1]))
            .collect::<Vec<_>>()
            .join(", "),
        pass: slices_match,
    });
    MonsterReport { checks }
}

/// Returns a copy with one subdegree disturbed, for demonstrating that
/// the checks are sensitive to the data rather than vacuous.
pub fn perturb_subdegree(c: &MonsterConstants, index: usize, delta: u64) -> MonsterConstants {
    let mut out = c.clone();
    out.i[index] += BigUint::from(delta);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // small self-consistent instance exercising the check logic
    const TOY: &str = "\
# toy data
i0=1
i1=10
i2=20
i3=1
i4=2
i5=3
i6=4
i7=5
i8=6
m_1A=52
m_2A=10
m_2B=20
m_3A=1
m_3C=2
m_4A=3
m_4B=4
m_5A=5
m_6A=6
x_2A=10
x_2B=20
x_3A=1
x_3C=2
x_4A=3
x_4B=4
x_5A=5
x_6A=6
bound=63/2
total_x3_to_x6=21
total_nontrivial_nonfused=41
";

    #[test]
    fn toy_constants_pass_every_check() {
        let c = parse_monster_constants(TOY).unwrap();
        let report = monster_checks(&c);
        assert_eq!(report.checks.len(), 5);
        for check in &report.checks {
            assert!(check.pass, "{}: {}", check.name, check.detail);
        }
        assert!(report.all_pass());
    }

    #[test]
    fn perturbation_breaks_the_sums() {
        let c = parse_monster_constants(TOY).unwrap();
        let report = monster_checks(&perturb_subdegree(&c, 7, 1));
        assert!(!report.checks[0].pass, "order 3..6 sum must notice the change");
        assert!(!report.checks[1].pass, "nonfused sum must notice the change");
        assert!(report.checks[2].pass, "the bound comparison does not involve i7");
        assert!(report.checks[3].pass, "the recorded totals are untouched");
        assert!(!report.checks[4].pass, "x_5A no longer matches the perturbed i7");
        assert!(!report.all_pass());
    }

    #[test]
    fn parser_rejects_malformed_input() {
        assert!(matches!(
            parse_monster_constants("i0=1\nbogus line"),
            Err(MonsterError::Parse(_))
        ));
        let missing = TOY.replace("m_5A=5\n", "");
        assert!(matches!(
            parse_monster_constants(&missing),
            Err(MonsterError::MissingKey(k)) if k == "m_5A"
        ));
        let bad_i0 = TOY.replace("i0=1", "i0=2");
        assert!(parse_monster_constants(&bad_i0).is_err());
        let bad_int = TOY.replace("i3=1", "i3=one");
        assert!(parse_monster_constants(&bad_int).is_err());
    }

    #[test]
    fn bound_accepts_integer_and_fraction_forms() {
        let c = parse_monster_constants(TOY).unwrap();
        assert_eq!(
            c.bound,
            BigRational::new(BigInt::from(63), BigInt::from(2))
        );
        let integral = TOY.replace("bound=63/2", "bound=30");
        let c2 = parse_monster_constants(&integral).unwrap();
        assert_eq!(c2.bound, BigRational::from_integer(BigInt::from(30)));
        // 30 does not exceed |I|-1-i2 = 31, so check (c) fails
        let report = monster_checks(&c2);
        assert!(!report.checks[2].pass);
    }
}
