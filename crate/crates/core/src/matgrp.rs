//! 3x3 matrices over a finite field, projective-plane and vector actions,
//! and permutation realizations of PSL2(q), SL3(q) and PSL3(q), plus the
//! special matrix pair used for the even-characteristic depth-2 arcs.
//!
//! Matrices act on ROW vectors, v -> v*M, so the induced map on point
//! indices composes in the same order as `Perm::compose` and matrix-to-
//! permutation conversion is a homomorphism.

use crate::field::{find_engel_coefficient, parse_prime_power, Field, FieldError};
use crate::group::{Group, GroupError};
use crate::perm::Perm;
use std::collections::HashMap;
use thiserror::Error;

/// Largest group this crate will enumerate element by element.
pub const MAX_EXPLICIT_ORDER: u64 = 20_000_000;

#[derive(Debug, Error)]
pub enum MatError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("action degree {0} exceeds the 16-bit point limit")]
    DegreeTooLarge(u64),
    #[error("group order {0} exceeds the explicit enumeration limit")]
    OrderTooLarge(u64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("construction needs an even prime power q >= 8, got {0}")]
    UnsupportedField(u64),
    #[error("construction self-check failed: {0}")]
    ConstructionCheck(&'static str),
}

/// Row-major 3x3 matrix of field element codes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mat3(pub [u32; 9]);

impl Mat3 {
    pub fn identity() -> Mat3 {
        Mat3([1, 0, 0, 0, 1, 0, 0, 0, 1])
    }

    pub fn diag(a: u32, b: u32, c: u32) -> Mat3 {
        Mat3([a, 0, 0, 0, b, 0, 0, 0, c])
    }

    pub fn from_rows(r0: [u32; 3], r1: [u32; 3], r2: [u32; 3]) -> Mat3 {
        Mat3([r0[0], r0[1], r0[2], r1[0], r1[1], r1[2], r2[0], r2[1], r2[2]])
    }

    pub fn at(&self, r: usize, c: usize) -> u32 {
        self.0[3 * r + c]
    }

    pub fn mul(&self, f: &Field, other: &Mat3) -> Mat3 {
        let mut out = [0u32; 9];
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = 0u32;
                for k in 0..3 {
                    acc = f.add(acc, f.mul(self.at(r, k), other.at(k, c)));
                }
                out[3 * r + c] = acc;
            }
        }
        Mat3(out)
    }

    pub fn det(&self, f: &Field) -> u32 {
        let d2 = |a: u32, b: u32, c: u32, d: u32| f.sub(f.mul(a, d), f.mul(b, c));
        let c0 = f.mul(self.at(0, 0), d2(self.at(1, 1), self.at(1, 2), self.at(2, 1), self.at(2, 2)));
        let c1 = f.mul(self.at(0, 1), d2(self.at(1, 0), self.at(1, 2), self.at(2, 0), self.at(2, 2)));
        let c2 = f.mul(self.at(0, 2), d2(self.at(1, 0), self.at(1, 1), self.at(2, 0), self.at(2, 1)));
        f.add(f.sub(c0, c1), c2)
    }

    /// Inverse via the adjugate; None for singular matrices.
    pub fn inverse(&self, f: &Field) -> Option<Mat3> {
        let det = self.det(f);
        if det == 0 {
            return None;
        }
        let dinv = f.inv(det);
        let m = |r: usize, c: usize| self.at(r, c);
        let d2 = |a: u32, b: u32, c: u32, d: u32| f.sub(f.mul(a, d), f.mul(b, c));
        // cof[r][c] = signed minor; inverse[c][r] = cof[r][c] / det
        let cof = [
            [
                d2(m(1, 1), m(1, 2), m(2, 1), m(2, 2)),
                f.neg(d2(m(1, 0), m(1, 2), m(2, 0), m(2, 2))),
                d2(m(1, 0), m(1, 1), m(2, 0), m(2, 1)),
            ],
            [
                f.neg(d2(m(0, 1), m(0, 2), m(2, 1), m(2, 2))),
                d2(m(0, 0), m(0, 2), m(2, 0), m(2, 2)),
                f.neg(d2(m(0, 0), m(0, 1), m(2, 0), m(2, 1))),
            ],
            [
                d2(m(0, 1), m(0, 2), m(1, 1), m(1, 2)),
                f.neg(d2(m(0, 0), m(0, 2), m(1, 0), m(1, 2))),
                d2(m(0, 0), m(0, 1), m(1, 0), m(1, 1)),
            ],
        ];
        let mut out = [0u32; 9];
        for r in 0..3 {
            for c in 0..3 {
                out[3 * r + c] = f.mul(cof[c][r], dinv);
            }
        }
        Some(Mat3(out))
    }

    pub fn pow(&self, f: &Field, mut k: u64) -> Mat3 {
        let mut base = *self;
        let mut acc = Mat3::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat3::identity()
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.at(0, 0);
        d != 0
            && self.at(1, 1) == d
            && self.at(2, 2) == d
            && [self.at(0, 1), self.at(0, 2), self.at(1, 0), self.at(1, 2), self.at(2, 0), self.at(2, 1)]
                .iter()
                .all(|&x| x == 0)
    }

    /// Least k in 1..=cap with self^k = I.
    pub fn order(&self, f: &Field, cap: u64) -> Option<u64> {
        let mut p = *self;
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(f, self);
        }
        None
    }

    /// Least k in 1..=cap with self^k scalar.
    pub fn projective_order(&self, f: &Field, cap: u64) -> Option<u64> {
        let mut p = *self;
        for k in 1..=cap {
            if p.is_scalar() {
                return Some(k);
            }
            p = p.mul(f, self);
        }
        None
    }

    /// Commutator a^-1 b^-1 a b; None if either matrix is singular.
    pub fn commutator(f: &Field, a: &Mat3, b: &Mat3) -> Option<Mat3> {
        let ai = a.inverse(f)?;
        let bi = b.inverse(f)?;
        Some(ai.mul(f, &bi).mul(f, a).mul(f, b))
    }
}

/// The projective plane PG(2,q): points are nonzero row vectors up to
/// scalars, stored with first nonzero coordinate 1 and listed in
/// lexicographic order of their code triples.
pub struct ProjectivePlane<'f> {
    field: &'f Field,
    points: Vec<[u32; 3]>,
    index: HashMap<[u32; 3], u16>,
}

impl<'f> ProjectivePlane<'f> {
    pub fn new(field: &'f Field) -> Result<ProjectivePlane<'f>, MatError> {
        let q = field.q() as u64;
        let n = q * q + q + 1;
        if n > u16::MAX as u64 {
            return Err(MatError::DegreeTooLarge(n));
        }
        let mut points = Vec::with_capacity(n as usize);
        points.push([0, 0, 1]);
        for z in 0..field.q() {
            points.push([0, 1, z]);
        }
        for y in 0..field.q() {
            for z in 0..field.q() {
                points.push([1, y, z]);
            }
        }
        debug_assert_eq!(points.len() as u64, n);
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        let index = points
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u16))
            .collect();
        Ok(ProjectivePlane { field, points, index })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: u16) -> [u32; 3] {
        self.points[i as usize]
    }

    /// Scales a nonzero vector so its first nonzero coordinate is 1.
    pub fn normalize(&self, v: [u32; 3]) -> [u32; 3] {
        let f = self.field;
        let lead = v.iter().copied().find(|&x| x != 0).expect("zero vector");
        let s = f.inv(lead);
        [f.mul(v[0], s), f.mul(v[1], s), f.mul(v[2], s)]
    }

    pub fn index_of(&self, v: [u32; 3]) -> u16 {
        self.index[&self.normalize(v)]
    }

    fn apply_row(&self, v: [u32; 3], m: &Mat3) -> [u32; 3] {
        let f = self.field;
        let mut out = [0u32; 3];
        for (c, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u32;
            for (k, &vk) in v.iter().enumerate() {
                acc = f.add(acc, f.mul(vk, m.at(k, c)));
            }
            *slot = acc;
        }
        out
    }

    /// The permutation of plane points induced by v -> v*M. Fails for
    /// singular matrices (the image map is then not a bijection).
    pub fn perm_of(&self, m: &Mat3) -> Result<Perm, MatError> {
        if m.det(self.field) == 0 {
            return Err(MatError::SingularMatrix);
        }
        let images: Vec<u16> = self
            .points
            .iter()
            .map(|&p| self.index[&self.normalize(self.apply_row(p, m))])
            .collect();
        Ok(Perm::from_images(images).expect("projective action is a bijection"))
    }
}

fn gcd64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn psl2_order(q: u64) -> u64 {
    q * (q - 1) * (q + 1) / gcd64(2, q - 1)
}

pub fn sl3_order(q: u64) -> u64 {
    q * q * q * (q * q - 1) * (q * q * q - 1)
}

pub fn psl3_order(q: u64) -> u64 {
    sl3_order(q) / gcd64(3, q - 1)
}

fn check_order(g: Group, expected: u64) -> Result<Group, MatError> {
    if g.order() as u64 != expected {
        return Err(MatError::Group(GroupError::WrongOrder {
            expected,
            got: g.order() as u64,
        }));
    }
    Ok(g)
}

/// PSL2(q) acting on the projective line [infinity, 0, 1, ..., q-1]
/// (point 1+t is the field element with code t), generated by the maps
/// z -> z+1, z -> c^2 z and z -> -1/z, c a primitive element.
pub fn psl2(q: u64) -> Result<Group, MatError> {
    let (p, f) = parse_prime_power(&q.to_string())?;
    let fld = Field::new(p, f)?;
    let expected = psl2_order(q);
    if expected > MAX_EXPLICIT_ORDER {
        return Err(MatError::OrderTooLarge(expected));
    }
    let n = fld.q() as usize + 1;
    if n > u16::MAX as usize {
        return Err(MatError::DegreeTooLarge(n as u64));
    }
    let c2 = {
        let c = fld.primitive_element();
        fld.mul(c, c)
    };
    let mut add_one = vec![0u16; n];
    let mut mul_c2 = vec![0u16; n];
    let mut inv_neg = vec![0u16; n];
    // index 0 is the point at infinity
    inv_neg[0] = 1;
    inv_neg[1] = 0;
    for t in 0..fld.q() {
        add_one[1 + t as usize] = 1 + fld.add(t, 1) as u16;
        mul_c2[1 + t as usize] = 1 + fld.mul(c2, t) as u16;
        if t != 0 {
            inv_neg[1 + t as usize] = 1 + fld.neg(fld.inv(t)) as u16;
        }
    }
    let gens = vec![
        Perm::from_images(add_one).expect("translation is a bijection"),
        Perm::from_images(mul_c2).expect("scaling is a bijection"),
        Perm::from_images(inv_neg).expect("inversion is a bijection"),
    ];
    let g = Group::generate(gens, expected as usize + 1)?;
    check_order(g, expected)
}

fn sl3_generator_mats(fld: &Field) -> Vec<Mat3> {
    let c = fld.primitive_element();
    let e12_1 = Mat3::from_rows([1, 1, 0], [0, 1, 0], [0, 0, 1]);
    let e12_c = Mat3::from_rows([1, c, 0], [0, 1, 0], [0, 0, 1]);
    let shift = Mat3::from_rows([0, 1, 0], [0, 0, 1], [1, 0, 0]);
    if fld.q() == 2 {
        vec![e12_1, shift]
    } else {
        vec![e12_1, e12_c, shift]
    }
}

/// SL3(q) acting faithfully on the q^3 - 1 nonzero row vectors, listed in
/// lexicographic order of their code triples.
pub fn sl3(q: u64) -> Result<Group, MatError> {
    let (p, f) = parse_prime_power(&q.to_string())?;
    let fld = Field::new(p, f)?;
    let expected = sl3_order(q);
    if expected > MAX_EXPLICIT_ORDER {
        return Err(MatError::OrderTooLarge(expected));
    }
    let qq = fld.q() as u64;
    let n = qq * qq * qq - 1;
    if n > u16::MAX as u64 {
        return Err(MatError::DegreeTooLarge(n));
    }
    let mut vectors = Vec::with_capacity(n as usize);
    let mut index = HashMap::with_capacity(n as usize);
    for a in 0..fld.q() {
        for b in 0..fld.q() {
            for c in 0..fld.q() {
                if (a, b, c) != (0, 0, 0) {
                    index.insert([a, b, c], vectors.len() as u16);
                    vectors.push([a, b, c]);
                }
            }
        }
    }
    let apply = |v: [u32; 3], m: &Mat3| -> [u32; 3] {
        let mut out = [0u32; 3];
        for (cc, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u32;
            for (k, &vk) in v.iter().enumerate() {
                acc = fld.add(acc, fld.mul(vk, m.at(k, cc)));
            }
            *slot = acc;
        }
        out
    };
    let gens: Vec<Perm> = sl3_generator_mats(&fld)
        .iter()
        .map(|m| {
            let images: Vec<u16> = vectors.iter().map(|&v| index[&apply(v, m)]).collect();
            Perm::from_images(images).expect("linear action is a bijection")
        })
        .collect();
    let g = Group::generate(gens, expected as usize + 1)?;
    check_order(g, expected)
}

/// PSL3(q) acting on the q^2 + q + 1 points of the projective plane.
pub fn psl3(q: u64) -> Result<Group, MatError> {
    let (p, f) = parse_prime_power(&q.to_string())?;
    let fld = Field::new(p, f)?;
    let expected = psl3_order(q);
    if expected > MAX_EXPLICIT_ORDER {
        return Err(MatError::OrderTooLarge(expected));
    }
    let plane = ProjectivePlane::new(&fld)?;
    let gens: Vec<Perm> = sl3_generator_mats(&fld)
        .iter()
        .map(|m| plane.perm_of(m))
        .collect::<Result<_, _>>()?;
    let g = Group::generate(gens, expected as usize + 1)?;
    check_order(g, expected)
}

/// The matrix pair (g, h) over F_q, q = 2^f >= 8, with
///   g the companion-style matrix of T^3 + aT + 1 (a chosen so the cubic
///     is irreducible) and h = diag(c, c, c^-2) for c primitive:
/// then [g,h] = diag(1, c^3, c^-3) and [[g,h],h] = 1, while h is not
/// scalar, so projectively h reaches g in two steps but not one.
pub struct EngelPair {
    pub field: Field,
    pub coeff: u32,
    pub g: Mat3,
    pub h: Mat3,
}

pub fn engel_matrices(q: u64) -> Result<EngelPair, MatError> {
    let Some((p, f)) = crate::field::factor_prime_power(q) else {
        return Err(MatError::UnsupportedField(q));
    };
    if p != 2 || q < 8 {
        return Err(MatError::UnsupportedField(q));
    }
    let field = Field::new(p, f)?;
    let coeff =
        find_engel_coefficient(&field).ok_or(MatError::ConstructionCheck("no irreducible cubic of the required shape"))?;
    let c = field.primitive_element();
    let g = Mat3::from_rows([0, 0, 1], [1, 0, coeff], [0, 1, 0]);
    let c3 = field.pow(c, 3);
    let h = Mat3::diag(c, c, field.inv(field.mul(c, c)));
    if g.det(&field) != 1 || h.det(&field) != 1 {
        return Err(MatError::ConstructionCheck("determinant is not 1"));
    }
    if h.is_scalar() {
        return Err(MatError::ConstructionCheck("h is scalar"));
    }
    let k1 = Mat3::commutator(&field, &g, &h).ok_or(MatError::SingularMatrix)?;
    if k1 != Mat3::diag(1, c3, field.inv(c3)) {
        return Err(MatError::ConstructionCheck("[g,h] is not diag(1, c^3, c^-3)"));
    }
    let k2 = Mat3::commutator(&field, &k1, &h).ok_or(MatError::SingularMatrix)?;
    if !k2.is_identity() {
        return Err(MatError::ConstructionCheck("[[g,h],h] is not the identity"));
    }
    let plane_cap = q * q + q + 1;
    match g.projective_order(&field, plane_cap) {
        Some(k) if plane_cap % k == 0 => {}
        _ => return Err(MatError::ConstructionCheck("projective order of g does not divide q^2+q+1")),
    }
    Ok(EngelPair { field, coeff, g, h })
}

impl EngelPair {
    /// The pair as permutations of the projective plane.
    pub fn plane_perms(&self) -> Result<(Perm, Perm), MatError> {
        let plane = ProjectivePlane::new(&self.field)?;
        Ok((plane.perm_of(&self.g)?, plane.perm_of(&self.h)?))
    }
}
