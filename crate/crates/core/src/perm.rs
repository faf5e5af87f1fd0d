//! Permutations of {0..d-1} stored as image arrays.

use std::fmt;
use thiserror::Error;

/// A permutation of the points 0..degree-1, stored as the image array:
/// `p[i]` is the image of point `i`.
///
/// Composition convention: `a.compose(&b)` applies `a` first, then `b`,
/// so `(a*b)[i] = b[a[i]]`. With this convention conjugation
/// `x^g = g^-1 x g` satisfies `(x^a)^b = x^(a*b)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

#[derive(Debug, Error)]
pub enum PermError {
    #[error("image array is not a bijection: {0:?}")]
    NotBijective(Vec<u16>),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

impl Perm {
    pub fn identity(degree: u16) -> Perm {
        Perm((0..degree).collect())
    }

    pub fn from_images(images: Vec<u16>) -> Result<Perm, PermError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &im in &images {
            if (im as usize) >= d {
                return Err(PermError::PointOutOfRange {
                    point: im as usize,
                    degree: d,
                });
            }
            if seen[im as usize] {
                return Err(PermError::NotBijective(images));
            }
            seen[im as usize] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    pub fn degree(&self) -> u16 {
        self.0.len() as u16
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.0[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &im)| i as u16 == im)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    /// Writes `self` then `other` into `out` without allocating.
    pub fn compose_into(&self, other: &Perm, out: &mut [u16]) {
        for (o, &i) in out.iter_mut().zip(self.0.iter()) {
            *o = other.0[i as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &im) in self.0.iter().enumerate() {
            inv[im as usize] = i as u16;
        }
        Perm(inv.into_boxed_slice())
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let ginv = g.inverse();
        ginv.compose(self).compose(g)
    }

    /// Order as lcm of cycle lengths; never enumerates group elements.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut order: u64 = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Nontrivial cycles, each rotated to start at its least point,
    /// sorted by starting point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cyc.push(j as u16);
                j = self.0[j] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Parses either cycle notation `(0,1,2)(3,4)` (spaces allowed as
    /// separators) or an image list `[1,2,0]` / `1 2 0`. Cycle notation
    /// needs the ambient degree; `()` is the identity.
    pub fn parse(text: &str, degree: u16) -> Result<Perm, PermError> {
        let t = text.trim();
        if t.starts_with('(') {
            let mut images: Vec<u16> = (0..degree).collect();
            for chunk in t.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let body = chunk
                    .strip_prefix('(')
                    .ok_or_else(|| PermError::Parse(text.to_string()))?;
                let pts = parse_points(body, text)?;
                if pts.is_empty() {
                    continue;
                }
                for &p in &pts {
                    if p >= degree {
                        return Err(PermError::PointOutOfRange {
                            point: p as usize,
                            degree: degree as usize,
                        });
                    }
                }
                for k in 0..pts.len() {
                    images[pts[k] as usize] = pts[(k + 1) % pts.len()];
                }
            }
            Perm::from_images(images)
        } else {
            let body = t.trim_start_matches('[').trim_end_matches(']');
            let images = parse_points(body, text)?;
            if images.len() != degree as usize {
                return Err(PermError::DegreeMismatch(images.len(), degree as usize));
            }
            Perm::from_images(images)
        }
    }
}

fn parse_points(body: &str, original: &str) -> Result<Vec<u16>, PermError> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u16>()
                .map_err(|_| PermError::Parse(original.to_string()))
        })
        .collect()
}

impl fmt::Display for Perm {
    /// Cycle notation; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (k, p) in cyc.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{self}]")
    }
}
