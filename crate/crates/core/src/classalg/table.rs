//! Character table file format and load-time validation.
//!
//! Format (`#` comments allowed anywhere, blank lines ignored):
//!   classes K
//!   order N
//!   conductor N
//!   class NAME SIZE ELEMENT_ORDER INVERSE_CLASS_INDEX   (K lines)
//!   K rows of K whitespace-separated values
//!
//! Values are sums of terms with no internal spaces: integers, z(n,k)
//! for the root of unity e^(2 pi i k/n), or c*z(n,k) with an integer
//! coefficient, e.g. `1+z(5,1)+z(5,4)` or `-2*z(7,3)`. Every n must
//! divide the declared conductor.

use super::cyclotomic::{Cyc, CycError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("table validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone)]
pub struct ClassInfo {
    pub name: String,
    pub size: u64,
    pub elt_order: u64,
    pub inverse: usize,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub name: String,
    pub order: u64,
    pub conductor: u32,
    pub classes: Vec<ClassInfo>,
    /// chars[row][class]
    pub chars: Vec<Vec<Cyc>>,
}

/// One value in the table syntax: signed terms of integers and roots of
/// unity, evaluated inside Q(zeta_conductor).
pub fn parse_value(s: &str, conductor: u32) -> Result<Cyc, TableError> {
    if s.is_empty() {
        return Err(TableError::Parse("empty value".into()));
    }
    let bytes = s.as_bytes();
    let mut splits = vec![0usize];
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'+' || b == b'-') && i > 0 {
            splits.push(i);
        }
    }
    splits.push(s.len());
    let mut acc = Cyc::zero(conductor);
    for w in splits.windows(2) {
        let term = &s[w[0]..w[1]];
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1i64, b),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return Err(TableError::Parse(format!("dangling sign in {s:?}")));
        }
        let (coeff, zpart) = match body.split_once('*') {
            Some((c, z)) => {
                let c: i64 = c
                    .parse()
                    .map_err(|_| TableError::Parse(format!("bad coefficient in {s:?}")))?;
                (c, Some(z))
            }
            None if body.starts_with('z') => (1, Some(body)),
            None => {
                let v: i64 = body
                    .parse()
                    .map_err(|_| TableError::Parse(format!("bad integer term in {s:?}")))?;
                (v, None)
            }
        };
        let term_value = match zpart {
            None => Cyc::from_int(conductor, 1),
            Some(z) => {
                let inner = z
                    .strip_prefix("z(")
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| TableError::Parse(format!("bad root syntax in {s:?}")))?;
                let (n, k) = inner
                    .split_once(',')
                    .ok_or_else(|| TableError::Parse(format!("bad root syntax in {s:?}")))?;
                let n: u32 = n
                    .parse()
                    .map_err(|_| TableError::Parse(format!("bad root order in {s:?}")))?;
                let k: u32 = k
                    .parse()
                    .map_err(|_| TableError::Parse(format!("bad root exponent in {s:?}")))?;
                Cyc::root_of_unity(conductor, n, k)?
            }
        };
        acc = acc.add(&term_value.scale(&BigRational::from_integer(BigInt::from(sign * coeff))));
    }
    Ok(acc)
}

pub fn parse_character_table(name: &str, text: &str) -> Result<CharacterTable, TableError> {
    let mut k: Option<usize> = None;
    let mut order: Option<u64> = None;
    let mut conductor: Option<u32> = None;
    let mut classes: Vec<ClassInfo> = Vec::new();
    let mut rows: Vec<Vec<Cyc>> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let head = fields.next().unwrap();
        match head {
            "classes" => {
                k = Some(
                    fields
                        .next()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| TableError::Parse("bad classes line".into()))?,
                )
            }
            "order" => {
                order = Some(
                    fields
                        .next()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| TableError::Parse("bad order line".into()))?,
                )
            }
            "conductor" => {
                conductor = Some(
                    fields
                        .next()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| TableError::Parse("bad conductor line".into()))?,
                )
            }
            "class" => {
                let name = fields
                    .next()
                    .ok_or_else(|| TableError::Parse("class line missing name".into()))?
                    .to_string();
                let nums: Vec<&str> = fields.collect();
                if nums.len() != 3 {
                    return Err(TableError::Parse(format!(
                        "class {name} needs size, element order, inverse index"
                    )));
                }
                classes.push(ClassInfo {
                    name,
                    size: nums[0]
                        .parse()
                        .map_err(|_| TableError::Parse("bad class size".into()))?,
                    elt_order: nums[1]
                        .parse()
                        .map_err(|_| TableError::Parse("bad element order".into()))?,
                    inverse: nums[2]
                        .parse()
                        .map_err(|_| TableError::Parse("bad inverse index".into()))?,
                });
            }
            _ => {
                let cond =
                    conductor.ok_or_else(|| TableError::Parse("row before conductor".into()))?;
                let vals: Result<Vec<Cyc>, TableError> = line
                    .split_whitespace()
                    .map(|v| parse_value(v, cond))
                    .collect();
                rows.push(vals?);
            }
        }
    }
    let k = k.ok_or_else(|| TableError::Parse("missing classes line".into()))?;
    let order = order.ok_or_else(|| TableError::Parse("missing order line".into()))?;
    let conductor = conductor.ok_or_else(|| TableError::Parse("missing conductor line".into()))?;
    if classes.len() != k {
        return Err(TableError::Parse(format!(
            "expected {k} class lines, found {}",
            classes.len()
        )));
    }
    if rows.len() != k || rows.iter().any(|r| r.len() != k) {
        return Err(TableError::Parse(format!("expected a {k} x {k} value block")));
    }
    let table = CharacterTable { name: name.to_string(), order, conductor, classes, chars: rows };
    table.validate()?;
    Ok(table)
}

pub fn load_character_table(path: &Path) -> Result<CharacterTable, TableError> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_character_table(&name, &text)
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Degree (value at the identity class) of a row.
    pub fn degree(&self, row: usize) -> Result<BigRational, TableError> {
        self.chars[row][0].as_rational().ok_or_else(|| {
            TableError::Validation(format!("degree of row {row} is irrational"))
        })
    }

    /// Checks the structural relations every character table satisfies;
    /// the error names the first failing relation.
    pub fn validate(&self) -> Result<(), TableError> {
        let k = self.class_count();
        let id = &self.classes[0];
        if id.size != 1 || id.elt_order != 1 || id.inverse != 0 {
            return Err(TableError::Validation(
                "identity class must come first with size 1, order 1, self-inverse".into(),
            ));
        }
        let total: u64 = self.classes.iter().map(|c| c.size).sum();
        if total != self.order {
            return Err(TableError::Validation(format!(
                "class sizes sum to {total}, group order is {}",
                self.order
            )));
        }
        for (i, c) in self.classes.iter().enumerate() {
            if c.inverse >= k {
                return Err(TableError::Validation(format!(
                    "class {} has inverse index out of range",
                    c.name
                )));
            }
            let j = &self.classes[c.inverse];
            if j.inverse != i || j.size != c.size || j.elt_order != c.elt_order {
                return Err(TableError::Validation(format!(
                    "inverse pairing broken between {} and {}",
                    c.name, j.name
                )));
            }
        }
        let mut degree_square_sum = BigRational::zero();
        for r in 0..k {
            let d = self.degree(r)?;
            if !d.is_integer() || d <= BigRational::zero() {
                return Err(TableError::Validation(format!(
                    "degree of row {r} is not a positive integer"
                )));
            }
            degree_square_sum += &d * &d;
        }
        if degree_square_sum != BigRational::from_integer(BigInt::from(self.order)) {
            return Err(TableError::Validation(
                "degrees' squares do not sum to the group order".into(),
            ));
        }
        for r in 0..k {
            for v in 0..k {
                if self.chars[r][self.classes[v].inverse] != self.chars[r][v].conj() {
                    return Err(TableError::Validation(format!(
                        "row {r} breaks conjugate symmetry at class {}",
                        self.classes[v].name
                    )));
                }
            }
        }
        let big_order = BigRational::from_integer(BigInt::from(self.order));
        for a in 0..k {
            for b in 0..k {
                let mut acc = Cyc::zero(self.conductor);
                for v in 0..k {
                    let term = self.chars[a][v].mul(&self.chars[b][self.classes[v].inverse]);
                    acc = acc.add(
                        &term.scale(&BigRational::from_integer(BigInt::from(self.classes[v].size))),
                    );
                }
                let want = if a == b { big_order.clone() } else { BigRational::zero() };
                if acc.as_rational() != Some(want) {
                    return Err(TableError::Validation(format!(
                        "row orthogonality fails for rows {a}, {b}"
                    )));
                }
            }
        }
        for u in 0..k {
            for v in 0..k {
                let mut acc = Cyc::zero(self.conductor);
                for r in 0..k {
                    acc = acc.add(&self.chars[r][u].mul(&self.chars[r][self.classes[v].inverse]));
                }
                let want = if u == v {
                    &big_order / BigRational::from_integer(BigInt::from(self.classes[u].size))
                } else {
                    BigRational::zero()
                };
                if acc.as_rational() != Some(want) {
                    return Err(TableError::Validation(format!(
                        "column orthogonality fails for classes {}, {}",
                        self.classes[u].name, self.classes[v].name
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SYM3: &str = "\
# symmetric group on three letters
classes 3
order 6
conductor 1
class 1A 1 1 0
class 2A 3 2 1
class 3A 2 3 2
1 1 1
1 -1 1
2 0 -1
";

    const C3: &str = "\
classes 3
order 3
conductor 3
class 1A 1 1 0
class 3A 1 3 2
class 3B 1 3 1
1 1 1
1 z(3,1) z(3,2)
1 z(3,2) z(3,1)
";

    #[test]
    fn parses_and_validates_small_tables() {
        let t = parse_character_table("sym3", SYM3).unwrap();
        assert_eq!(t.class_count(), 3);
        assert_eq!(t.order, 6);
        assert_eq!(t.degree(2).unwrap(), BigRational::from_integer(2.into()));
        let c = parse_character_table("c3", C3).unwrap();
        assert_eq!(c.conductor, 3);
    }

    #[test]
    fn value_parser_handles_the_term_grammar() {
        let v = parse_value("1+z(5,1)+z(5,4)", 30).unwrap();
        let w = Cyc::one(30)
            .add(&Cyc::root_of_unity(30, 5, 1).unwrap())
            .add(&Cyc::root_of_unity(30, 5, 4).unwrap());
        assert_eq!(v, w);
        assert_eq!(
            parse_value("-1", 12).unwrap().as_rational(),
            Some(BigRational::from_integer((-1).into()))
        );
        let d = parse_value("2*z(7,3)", 7).unwrap();
        assert_eq!(d, Cyc::zeta_pow(7, 3).scale(&BigRational::from_integer(2.into())));
        let e = parse_value("-2*z(7,3)+1", 7).unwrap();
        assert_eq!(e, Cyc::one(7).sub(&d));
        assert!(parse_value("z(9,1)", 30).is_err()); // 9 does not divide 30
        assert!(parse_value("z(5", 30).is_err());
        assert!(parse_value("1+", 30).is_err());
        assert!(parse_value("", 30).is_err());
    }

    #[test]
    fn validation_names_the_failing_relation() {
        let bad_sum = SYM3.replace("class 2A 3 2 1", "class 2A 4 2 1");
        let err = parse_character_table("x", &bad_sum).unwrap_err();
        assert!(err.to_string().contains("class sizes sum"), "{err}");

        let bad_entry = SYM3.replace("2 0 -1", "2 0 1");
        let err = parse_character_table("x", &bad_entry).unwrap_err();
        assert!(err.to_string().contains("orthogonality"), "{err}");

        let bad_identity = SYM3
            .replace("class 1A 1 1 0", "class 1A 2 1 0")
            .replace("class 2A 3 2 1", "class 2A 2 2 1");
        let err = parse_character_table("x", &bad_identity).unwrap_err();
        assert!(err.to_string().contains("identity class"), "{err}");

        let bad_degree = SYM3.replace("1 -1 1", "-1 1 1");
        let err = parse_character_table("x", &bad_degree).unwrap_err();
        assert!(err.to_string().contains("positive integer"), "{err}");

        let bad_inverse = C3.replace("class 3A 1 3 2", "class 3A 1 3 1");
        assert!(parse_character_table("x", &bad_inverse).is_err());
    }

    #[test]
    fn conjugate_symmetry_is_enforced() {
        // swap the two nontrivial rows' entries so chi(x^-1) != conj
        let broken = C3.replace("1 z(3,1) z(3,2)", "1 z(3,1) z(3,1)");
        let err = parse_character_table("x", &broken).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("conjugate symmetry") || msg.contains("orthogonality"),
            "{msg}"
        );
    }
}
